#include <iostream>

#include "slt/cli_io.hpp"

int main(int argc, char** argv) { return slt::run_cli(argc, argv, std::cout, std::cerr); }
