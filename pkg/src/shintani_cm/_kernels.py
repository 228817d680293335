"""Integer hot loops for Shintani-set assembly and Bernoulli-trace evaluation.

Points are stored as integer numerators over a common denominator D, so the
modified fractional part and the group law are integer operations and the
Bernoulli-trace polynomial is evaluated exactly in int64.

Set SHINTANI_DISABLE_NUMBA=1 to use the pure-numpy versions.
"""
import os

import numpy as np

INT64_SAFE = (1 << 62)

_disabled = os.environ.get("SHINTANI_DISABLE_NUMBA", "").strip() not in ("", "0", "false", "no")
try:
    if _disabled:
        raise ImportError
    from numba import njit
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - depends on the environment
    HAVE_NUMBA = False


def backend():
    return "numba" if HAVE_NUMBA else "numpy"


# numpy versions -------------------------------------------------------------

def residues_np(pc, p, count):
    """Rows x(1..count): B_rho coordinates of rho^{n+m} mod p."""
    n = len(pc)
    out = np.empty((count + 1, n), dtype=np.int64)
    out[0] = [(-c) % p for c in pc]
    for m in range(1, count + 1):
        top = out[m - 1, n - 1]
        out[m, 0] = (-pc[0] * top) % p
        out[m, 1:] = (out[m - 1, :-1] - np.asarray(pc[1:], dtype=np.int64) * top) % p
    return out[1:]


def modfrac_np(num, D, high):
    """Modified fractional part on numerators over D; `high` marks (0,1] coordinates."""
    low = num % D
    hi = (num - 1) % D + 1
    return np.where(high, hi, low)


def oplus_grid_np(C, W, D, high):
    """G[i, m] = C[m] (+) W[i] for kernel rows W and coset rows C."""
    return modfrac_np(C[None, :, :] + W[:, None, :], D, high)


def poly_eval_np(pts, exps, coefs, D, deg):
    """sum_e coefs[e] prod_k pts_k^{e_k} D^{deg-|e|} for each row of pts."""
    dt = pts.dtype
    out = np.zeros(pts.shape[0], dtype=dt)
    for e, a in zip(exps, coefs):
        term = np.full(pts.shape[0], a, dtype=dt)
        tot = 0
        for k, ek in enumerate(e):
            if ek:
                term = term * pts[:, k] ** int(ek)
                tot += int(ek)
        out = out + term * (D ** (deg - tot) if dt == object else dt.type(D ** (deg - tot)))
    return out


# numba versions -------------------------------------------------------------

if HAVE_NUMBA:
    @njit(cache=True)
    def _residues_nb(pc, p, count):
        n = pc.shape[0]
        out = np.empty((count + 1, n), dtype=np.int64)
        for i in range(n):
            out[0, i] = (-pc[i]) % p
        for m in range(1, count + 1):
            top = out[m - 1, n - 1]
            out[m, 0] = (-pc[0] * top) % p
            for i in range(1, n):
                out[m, i] = (out[m - 1, i - 1] - pc[i] * top) % p
        return out[1:]

    @njit(cache=True)
    def _oplus_grid_nb(C, W, D, high):
        k, n = W.shape
        M = C.shape[0]
        G = np.empty((k, M, n), dtype=np.int64)
        for i in range(k):
            for m in range(M):
                for j in range(n):
                    s = C[m, j] + W[i, j]
                    if high[j]:
                        G[i, m, j] = (s - 1) % D + 1
                    else:
                        G[i, m, j] = s % D
        return G

    @njit(cache=True)
    def _poly_eval_nb(pts, exps, coefs, dpow):
        P, n = pts.shape
        E = exps.shape[0]
        deg = dpow.shape[0] - 1
        out = np.zeros(P, dtype=np.int64)
        for r in range(P):
            acc = 0
            for e in range(E):
                term = coefs[e]
                tot = 0
                for k in range(n):
                    for _ in range(exps[e, k]):
                        term *= pts[r, k]
                    tot += exps[e, k]
                acc += term * dpow[deg - tot]
            out[r] = acc
        return out


def residues(pc, p, count):
    if HAVE_NUMBA and p < (1 << 30):
        return _residues_nb(np.asarray(pc, dtype=np.int64), p, count)
    return residues_np(pc, p, count)


def oplus_grid(C, W, D, high):
    high = np.asarray(high, dtype=np.bool_)
    if HAVE_NUMBA and C.dtype == np.int64:
        return _oplus_grid_nb(C, W.astype(np.int64), D, high)
    return oplus_grid_np(C, W, D, high)


def eval_bound(exps, coefs, D, deg):
    """Upper bound on |value| for numerators in [0, D]."""
    return sum(abs(int(a)) for a in coefs) * D ** deg


def poly_eval(pts, exps, coefs, D, deg):
    """Exact integer evaluation; int64 when provably safe, Python ints otherwise."""
    exps = np.asarray(exps, dtype=np.int64)
    if eval_bound(exps, coefs, D, deg) < INT64_SAFE:
        c64 = np.asarray([int(a) for a in coefs], dtype=np.int64)
        pts64 = np.ascontiguousarray(pts, dtype=np.int64)
        if HAVE_NUMBA:
            dpow = np.asarray([D ** j for j in range(deg + 1)], dtype=np.int64)
            return _poly_eval_nb(pts64, exps, c64, dpow)
        return poly_eval_np(pts64, exps, c64, D, deg)
    obj = np.asarray(pts, dtype=object)
    return poly_eval_np(obj, exps, [int(a) for a in coefs], D, deg)
