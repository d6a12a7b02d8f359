"""Pure-Python versions of the modular kernels (same signatures and results)."""

from __future__ import annotations

import numpy as np


def _to_lists(a, p):
    return [[int(x) % p for x in row] for row in np.asarray(a, dtype=np.int64).tolist()]


def _pf_inplace(a: list[list[int]], p: int) -> int:
    n = len(a)
    if n % 2:
        return 0
    pf = 1
    for k in range(0, n, 2):
        piv = next((j for j in range(k + 1, n) if a[k][j]), None)
        if piv is None:
            return 0
        if piv != k + 1:
            a[k + 1], a[piv] = a[piv], a[k + 1]
            for row in a:
                row[k + 1], row[piv] = row[piv], row[k + 1]
            pf = -pf % p
        b = a[k][k + 1]
        pf = pf * b % p
        inv = pow(b, p - 2, p)
        rk, rk1 = a[k], a[k + 1]
        for i in range(k + 2, n):
            x = rk1[i] * inv % p
            y = rk[i] * inv % p
            if not x and not y:
                continue
            ai = a[i]
            for j in range(k + 2, n):
                ai[j] = (ai[j] + x * rk[j] - y * rk1[j]) % p
    return pf


def _rank_inplace(a: list[list[int]], p: int) -> int:
    nr = len(a)
    nc = len(a[0]) if a else 0
    r = 0
    for c in range(nc):
        if r == nr:
            break
        piv = next((i for i in range(r, nr) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], p - 2, p)
        ar = a[r]
        for i in range(r + 1, nr):
            if a[i][c]:
                f = a[i][c] * inv % p
                ai = a[i]
                for j in range(c, nc):
                    if ar[j]:
                        ai[j] = (ai[j] - f * ar[j]) % p
        r += 1
    return r


def pfaffian_mod(a, p: int) -> int:
    return _pf_inplace(_to_lists(a, p), p)


def rank_mod(a, p: int) -> int:
    return _rank_inplace(_to_lists(a, p), p)


def _combine(basis, w, p):
    n = len(basis[0]) if basis else 0
    out = [[0] * n for _ in range(n)]
    for wi, mat in zip(w, basis):
        if wi:
            for r in range(n):
                mr, orow = mat[r], out[r]
                for c in range(n):
                    if mr[c]:
                        orow[c] += wi * mr[c]
    return [[x % p for x in row] for row in out]


def _prepare(basis, coeffs, p):
    b = [[[int(x) % p for x in row] for row in mat] for mat in np.asarray(basis, dtype=np.int64).tolist()]
    w = [[int(x) % p for x in row] for row in np.asarray(coeffs, dtype=np.int64).tolist()]
    return b, w


def sample_pfaffians(basis, coeffs, p: int):
    b, w = _prepare(basis, coeffs, p)
    return np.array([_pf_inplace(_combine(b, row, p), p) for row in w], dtype=np.int64)


def sample_ranks(basis, coeffs, p: int):
    b, w = _prepare(basis, coeffs, p)
    return np.array([_rank_inplace(_combine(b, row, p), p) for row in w], dtype=np.int64)
