"""Time the numba kernels against the pure-numpy fallback.

    python benchmarks/bench_kernels.py [--repeat N] [--field PATH --prime P --wk W]

The kernel section calls both implementations in-process on the Example 2
(12)-frame data (351 points per residue, degree-3 trace polynomial) and on a
larger synthetic grid.  The end-to-end section runs the class-number pipeline
in subprocesses with and without SHINTANI_DISABLE_NUMBA.
"""
import argparse
import os
import subprocess
import sys
import time

import numpy as np

from shintani_cm import _kernels
from shintani_cm.lfun import class_number_cm, integer_set, trace_polynomial
from shintani_cm.exact import lcm_many
from shintani_cm.selftest import load_example


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def kernel_inputs():
    spec, _ = load_example(2)
    rep = class_number_cm(spec, 3, 6, Q1=8, Q2=1, keep_table=False)
    res = rep.result("(12)")
    poly = trace_polynomial(res.frame)
    den = lcm_many(a.denominator for a in poly.values())
    exps = np.asarray(list(poly.keys()), dtype=np.int64)
    coefs = [int(a * den) for a in poly.values()]
    return res.iset, exps, coefs


def bench_kernels(repeat):
    if not _kernels.HAVE_NUMBA:
        print("numba unavailable; kernel comparison skipped")
        return
    iset, exps, coefs = kernel_inputs()
    C, W, D, high = iset.C, iset.W, iset.D, iset.high
    rng = np.random.default_rng(0)
    bigC = rng.integers(0, D + 1, size=(4000, 3)).astype(np.int64)
    bigW = rng.integers(0, D + 1, size=(200, 3)).astype(np.int64)
    # warm up the jit (cache=True keeps compiled code between runs)
    _kernels.oplus_grid(C, W, D, high)
    G = _kernels.oplus_grid(C, W, D, high).reshape(-1, 3)
    _kernels.poly_eval(G, exps, coefs, D, 3)
    dpow = np.asarray([D ** j for j in range(4)], dtype=np.int64)
    c64 = np.asarray(coefs, dtype=np.int64)
    bigG = _kernels.oplus_grid(bigC, bigW, D, high).reshape(-1, 3)
    cases = [
        ("oplus_grid 13x26", lambda: _kernels._oplus_grid_nb(C, W, D, high),
         lambda: _kernels.oplus_grid_np(C, W, D, high)),
        ("oplus_grid 200x4000", lambda: _kernels._oplus_grid_nb(bigC, bigW, D, high),
         lambda: _kernels.oplus_grid_np(bigC, bigW, D, high)),
        ("poly_eval 338 pts", lambda: _kernels._poly_eval_nb(G, exps, c64, dpow),
         lambda: _kernels.poly_eval_np(G, exps, c64, D, 3)),
        ("poly_eval 800k pts", lambda: _kernels._poly_eval_nb(bigG, exps, c64, dpow),
         lambda: _kernels.poly_eval_np(bigG, exps, c64, D, 3)),
        ("residues p=31 n=3", lambda: _kernels._residues_nb(np.array([1, -2, -1]), 31, 31 ** 3 - 1),
         lambda: _kernels.residues_np([1, -2, -1], 31, 31 ** 3 - 1)),
    ]
    print(f"{'kernel':<22}{'numba (s)':>12}{'numpy (s)':>12}{'speedup':>10}")
    for name, fast, slow in cases:
        tf, a = best_of(fast, repeat)
        ts, b = best_of(slow, repeat)
        assert np.array_equal(np.asarray(a), np.asarray(b)), name
        print(f"{name:<22}{tf:>12.5f}{ts:>12.5f}{ts / tf:>9.1f}x")


def bench_pipeline(field, prime, wk, q1):
    code = ("import time; t0 = time.perf_counter();"
            "from shintani_cm import _kernels; from shintani_cm.io import load_field;"
            "from shintani_cm.lfun import class_number_cm;"
            f"r = class_number_cm(load_field({field!r}), {prime}, {wk}, Q1={q1}, keep_table=False);"
            "print(_kernels.backend(), r.h_K, time.perf_counter() - t0)")
    print(f"\nend to end: {field} p = {prime}")
    for flag in ("0", "1"):
        env = dict(os.environ, SHINTANI_DISABLE_NUMBA=flag)
        out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                             text=True, check=True).stdout.split()
        print(f"  {out[0]:<6} h_K = {out[1]:<4} {float(out[2]):.3f} s")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--field", default=None)
    ap.add_argument("--prime", type=int, default=47)
    ap.add_argument("--wk", type=int, default=2)
    ap.add_argument("--q1", type=int, default=8)
    args = ap.parse_args()
    bench_kernels(args.repeat)
    if args.field is None:
        from importlib import resources
        args.field = str(resources.files("shintani_cm").joinpath("data", "example1.json"))
    bench_pipeline(args.field, args.prime, args.wk, args.q1)


if __name__ == "__main__":
    main()
