# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled modular kernels: Pfaffians and ranks of integer matrices mod p.

All inputs are int64 arrays already reduced into [0, p); p must be below
2**31 so that products fit in a signed 64-bit integer.
"""

import numpy as np

ctypedef long long i64


cdef inline i64 _mulmod(i64 a, i64 b, i64 p) nogil:
    return (a * b) % p


cdef i64 _powmod(i64 b, i64 e, i64 p) nogil:
    cdef i64 r = 1
    b %= p
    while e > 0:
        if e & 1:
            r = (r * b) % p
        b = (b * b) % p
        e >>= 1
    return r


cdef i64 _pf_inplace(i64[:, ::1] a, Py_ssize_t n, i64 p) nogil:
    cdef Py_ssize_t k, i, j, piv
    cdef i64 pf = 1, b, inv, t, x, y
    if n % 2:
        return 0
    k = 0
    while k < n:
        piv = -1
        for j in range(k + 1, n):
            if a[k, j] != 0:
                piv = j
                break
        if piv < 0:
            return 0
        if piv != k + 1:
            # swap index k+1 <-> piv in rows and columns; Pf changes sign
            for i in range(n):
                t = a[k + 1, i]
                a[k + 1, i] = a[piv, i]
                a[piv, i] = t
            for i in range(n):
                t = a[i, k + 1]
                a[i, k + 1] = a[i, piv]
                a[i, piv] = t
            pf = (p - pf) % p
        b = a[k, k + 1]
        pf = _mulmod(pf, b, p)
        inv = _powmod(b, p - 2, p)
        # Schur complement: D_ij += (a[k+1,i] a[k,j] - a[k,i] a[k+1,j]) / b
        for i in range(k + 2, n):
            x = _mulmod(a[k + 1, i], inv, p)
            y = _mulmod(a[k, i], inv, p)
            if x == 0 and y == 0:
                continue
            for j in range(k + 2, n):
                t = (_mulmod(x, a[k, j], p) - _mulmod(y, a[k + 1, j], p)) % p
                if t < 0:
                    t += p
                a[i, j] = (a[i, j] + t) % p
        k += 2
    return pf


cdef Py_ssize_t _rank_inplace(i64[:, ::1] a, Py_ssize_t nr, Py_ssize_t nc, i64 p) nogil:
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef i64 inv, f, t
    for c in range(nc):
        if r == nr:
            break
        piv = -1
        for i in range(r, nr):
            if a[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(nc):
                t = a[r, j]
                a[r, j] = a[piv, j]
                a[piv, j] = t
        inv = _powmod(a[r, c], p - 2, p)
        for i in range(r + 1, nr):
            if a[i, c] != 0:
                f = _mulmod(a[i, c], inv, p)
                for j in range(c, nc):
                    t = (a[i, j] - _mulmod(f, a[r, j], p)) % p
                    if t < 0:
                        t += p
                    a[i, j] = t
        r += 1
    return r


def pfaffian_mod(a, long long p):
    cdef i64[:, ::1] m = np.array(a, dtype=np.int64, copy=True, order="C") % p
    return int(_pf_inplace(m, m.shape[0], p))


def rank_mod(a, long long p):
    cdef i64[:, ::1] m = np.array(a, dtype=np.int64, copy=True, order="C") % p
    return int(_rank_inplace(m, m.shape[0], m.shape[1], p))


cdef void _combine(i64[:, :, ::1] basis, i64[:, ::1] coeffs, Py_ssize_t s,
                   i64[:, ::1] out, i64 p) nogil:
    cdef Py_ssize_t m = basis.shape[0], n = basis.shape[1], i, r, c
    cdef i64 w
    for r in range(n):
        for c in range(n):
            out[r, c] = 0
    for i in range(m):
        w = coeffs[s, i]
        if w == 0:
            continue
        for r in range(n):
            for c in range(n):
                if basis[i, r, c] != 0:
                    out[r, c] = (out[r, c] + _mulmod(w, basis[i, r, c], p)) % p


def sample_pfaffians(basis, coeffs, long long p):
    """Pf(sum_i coeffs[s, i] * basis[i]) mod p for every sample row s."""
    cdef i64[:, :, ::1] b = np.ascontiguousarray(basis, dtype=np.int64) % p
    cdef i64[:, ::1] w = np.ascontiguousarray(coeffs, dtype=np.int64) % p
    cdef Py_ssize_t ns = w.shape[0], n = b.shape[1], s
    out = np.zeros(ns, dtype=np.int64)
    cdef i64[::1] res = out
    cdef i64[:, ::1] work = np.zeros((n, n), dtype=np.int64)
    with nogil:
        for s in range(ns):
            _combine(b, w, s, work, p)
            res[s] = _pf_inplace(work, n, p)
    return out


def sample_ranks(basis, coeffs, long long p):
    """rank(sum_i coeffs[s, i] * basis[i]) mod p for every sample row s."""
    cdef i64[:, :, ::1] b = np.ascontiguousarray(basis, dtype=np.int64) % p
    cdef i64[:, ::1] w = np.ascontiguousarray(coeffs, dtype=np.int64) % p
    cdef Py_ssize_t ns = w.shape[0], n = b.shape[1], s
    out = np.zeros(ns, dtype=np.int64)
    cdef i64[::1] res = out
    cdef i64[:, ::1] work = np.zeros((n, n), dtype=np.int64)
    with nogil:
        for s in range(ns):
            _combine(b, w, s, work, p)
            res[s] = _rank_inplace(work, n, n, p)
    return out
