"""Smoke test for the `plstat` extension module.

Build with `cargo build -p plstat-python`, then run from the repository root:

    python3 python/smoke_test.py

The script copies target/debug/libplstat.so to a temporary plstat.so and
imports it, unless `plstat` is already importable.
"""

import importlib
import math
import shutil
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def load():
    try:
        return importlib.import_module("plstat")
    except ImportError:
        pass
    for profile in ("debug", "release"):
        lib = ROOT / "target" / profile / "libplstat.so"
        if lib.exists():
            tmp = Path(tempfile.mkdtemp())
            shutil.copy(lib, tmp / "plstat.so")
            sys.path.insert(0, str(tmp))
            return importlib.import_module("plstat")
    sys.exit("libplstat.so not found; run `cargo build -p plstat-python` first")


def main():
    pl = load()

    square = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]
    d = pl.Diagram.from_points(square, max_scale=5.0)
    loops = [iv for iv in d.intervals() if iv[0] == 1]
    assert loops == [(1, 1.0, math.sqrt(2.0))], loops
    assert d.betti(1.1, 1.2, 1) == 1
    assert len(d) == 5

    ls = pl.Diagram.from_csv("dim,birth,death\n1,0,2\n", 5.0).landscape(levels=1, t_min=0.0, t_max=5.0)
    assert ls.evaluate(1, 1.0) == 1.0
    assert abs(ls.functional(bound=5.0, k=1) - 1.0) < 1e-12

    pts = pl.sample_sphere(60, radius=2.0, seed=3)
    assert all(abs(math.hypot(*p) - 2.0) < 1e-9 for p in pts)
    assert pts == pl.sample_sphere(60, radius=2.0, seed=3)

    diagrams = [pl.Diagram.from_points(pl.sample_torus(40, seed=i), 5.0) for i in range(8)]
    ys = pl.landscape_sample(diagrams)
    assert len(ys) == 8 and all(y > 0 for y in ys)

    ci = pl.confidence_intervals(ys, bootstrap_b=200, seed=1)
    methods = [iv["method"] for iv in ci["intervals"]]
    assert methods[0] == "normal_theory" and len(methods) == 6, methods
    assert len(ci["replicates"]) == 200
    for iv in ci["intervals"]:
        assert iv["lower"] <= iv["upper"]

    h, grid, scores = pl.select_bandwidth(ys, kernel="tricube", h_min=0.01, h_max=0.2, h_step=0.01)
    assert h in grid and len(scores) == len(grid)
    dens = pl.kde(ys, h, [min(ys), max(ys)], kernel="tricube")
    assert all(v >= 0 for v in dens)

    bias, var, total = pl.estimated_risk(100, 0.5, "histogram", int_fprime_sq=2.0)
    assert abs(bias - 0.25 / 12 * 2) < 1e-15 and abs(var - 0.02) < 1e-15 and total == bias + var

    try:
        pl.cv_score([1.0], 0.1)
    except ValueError as e:
        print("expected error:", e)
    else:
        raise AssertionError("cv_score accepted a single point")

    with tempfile.TemporaryDirectory() as tmp:
        out = pl.run_pipeline("n_points = 30\nn_diagrams = 4\nbootstrap_b = 100\n", str(Path(tmp) / "run"))
        assert (Path(out) / "manifest.json").exists()

    print("plstat smoke test passed")


if __name__ == "__main__":
    main()
