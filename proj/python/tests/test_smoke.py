import pytest

import slt


def test_generate_build_verify():
    pts = slt.generate("random", eps=0.04, d=3, n=20, seed=7)
    assert len(pts["points"]) == 20
    out = slt.build(pts, eps=0.04)
    rep = out["report"]
    assert rep["max_stretch"] <= 1.04 + 1e-9
    assert rep["n"] == 20
    again = slt.verify(out["tree"], pts)
    assert again["max_stretch"] == pytest.approx(rep["max_stretch"], rel=1e-9)


def test_build_is_deterministic():
    pts = slt.generate("circle", eps=0.09, d=2, seed=1)
    assert slt.build(pts, eps=0.09) == slt.build(pts, eps=0.09)


def test_bad_eps_raises():
    pts = slt.generate("random", n=5, seed=3)
    with pytest.raises(slt.SltError):
        slt.build(pts, eps=0.5)


def test_duplicate_points_raise():
    with pytest.raises(slt.SltError):
        slt.build({"points": [[0, 0], [1, 1], [1, 1]], "root": 0})


def test_run_exit_codes():
    code, out, _ = slt.run(["gen", "--kind", "random", "--n", "4", "--seed", "2"])
    assert code == 0 and "points" in out
    code, _, _ = slt.run(["nosuch"])
    assert code == 2
