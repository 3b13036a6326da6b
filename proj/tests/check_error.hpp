#pragma once

#include <doctest.h>

#include "slt/error.hpp"

// Checks that `expr` throws slt::Error carrying `expected`.
#define CHECK_ERROR_CODE(expr, expected)                        \
  do {                                                          \
    bool thrown_ = false;                                       \
    try {                                                       \
      (void)(expr);                                             \
    } catch (const slt::Error& e_) {                            \
      thrown_ = true;                                           \
      CHECK_MESSAGE(e_.code() == (expected), e_.what());        \
    }                                                           \
    CHECK_MESSAGE(thrown_, "no slt::Error thrown by " #expr);   \
  } while (false)
