"""Integer and Z/N linear algebra: Smith normal form, solvers, kernels.

snf_z works over Z with exact integer arithmetic (numpy int64, escalating to
Python ints on overflow risk).  snf_mod works over Z/N: all elementary
operations are integer-unimodular, so the tracked transforms stay invertible
mod N while every entry is kept reduced -- no coefficient explosion.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = [
    "snf_z",
    "snf_z_transforms",
    "snf_mod",
    "solve_mod",
    "kernel_mod",
    "invariant_factor_chain",
    "rref_fp",
    "nullspace_fp",
]

_OVERFLOW_LIMIT = 1 << 56


def _as_int_matrix(a):
    arr = np.array(a, dtype=np.int64)
    if arr.ndim != 2:
        raise ValueError("matrix expected")
    return arr


def _maybe_escalate(a):
    if a.dtype == object:
        return a
    if a.size and np.abs(a).max() > _OVERFLOW_LIMIT:
        return a.astype(object)
    return a


def snf_z(a):
    """Invariant factors (> 0, divisibility chain) of an integer matrix."""
    a = _as_int_matrix(a).copy()
    rows, cols = a.shape
    diag = []
    t = 0
    while t < min(rows, cols):
        sub = a[t:, t:]
        nz = np.nonzero(sub)
        if len(nz[0]) == 0:
            break
        # pick the nonzero entry of least magnitude as pivot
        vals = np.abs(sub[nz]).astype(object) if sub.dtype == object else np.abs(sub[nz])
        k = int(np.argmin(vals))
        pi, pj = int(nz[0][k]) + t, int(nz[1][k]) + t
        a[[t, pi]] = a[[pi, t]]
        a[:, [t, pj]] = a[:, [pj, t]]
        while True:
            col = a[t + 1 :, t]
            if np.any(col != 0):
                q = col // a[t, t]
                a[t + 1 :] -= np.outer(q, a[t])
                col = a[t + 1 :, t]
                if np.any(col != 0):
                    # remainder smaller than pivot: swap it up and continue
                    i = int(np.nonzero(col)[0][0]) + t + 1
                    a[[t, i]] = a[[i, t]]
                    a = _maybe_escalate(a)
                    continue
            row = a[t, t + 1 :]
            if np.any(row != 0):
                q = row // a[t, t]
                a[:, t + 1 :] -= np.outer(a[:, t], q)
                if np.any(a[t, t + 1 :] != 0):
                    j = int(np.nonzero(a[t, t + 1 :])[0][0]) + t + 1
                    a[:, [t, j]] = a[:, [j, t]]
                    a = _maybe_escalate(a)
                    continue
            if np.any(a[t + 1 :, t] != 0):
                continue
            break
        a = _maybe_escalate(a)
        diag.append(abs(int(a[t, t])))
        t += 1
    return invariant_factor_chain(diag)


def invariant_factor_chain(values, modulus=None):
    """Canonical invariant-factor chain from any diagonal form.

    Per prime, the exponent multiset of a diagonalized presentation is an
    invariant, so pairwise gcd/lcm stabilization yields the Smith chain.
    With a modulus, entries are first replaced by gcd(value, modulus).
    """
    vals = [abs(int(v)) for v in values]
    if modulus is not None:
        vals = [math.gcd(v, modulus) for v in vals]
    vals = [v for v in vals if v != 0]
    changed = True
    while changed:
        changed = False
        for i in range(len(vals)):
            for j in range(i + 1, len(vals)):
                g = math.gcd(vals[i], vals[j])
                l = vals[i] // g * vals[j]
                if (vals[i], vals[j]) != (g, l):
                    vals[i], vals[j] = g, l
                    changed = True
    return sorted(vals)


def snf_z_transforms(a):
    """SNF over Z with transforms: returns (diag, u_inv, v) where
    u @ a @ v = diag(diag) and u_inv is the inverse of the row transform.

    Entries are Python ints (object dtype) to avoid overflow; intended for
    small matrices (representative pullback).
    """
    a = np.array(a, dtype=object)
    rows, cols = a.shape
    u_inv = np.eye(rows, dtype=object)
    v = np.eye(cols, dtype=object)
    t = 0
    diag = []
    while t < min(rows, cols):
        sub = a[t:, t:]
        nz = [(i + t, j + t) for i, j in zip(*np.nonzero(sub))]
        if not nz:
            break
        pi, pj = min(nz, key=lambda ij: abs(a[ij]))
        a[[t, pi]] = a[[pi, t]]
        u_inv[:, [t, pi]] = u_inv[:, [pi, t]]
        a[:, [t, pj]] = a[:, [pj, t]]
        v[:, [t, pj]] = v[:, [pj, t]]
        while True:
            done = True
            for i in range(t + 1, rows):
                if a[i, t]:
                    q = a[i, t] // a[t, t]
                    a[i] -= q * a[t]
                    u_inv[:, t] += q * u_inv[:, i]
                    if a[i, t]:
                        a[[t, i]] = a[[i, t]]
                        u_inv[:, [t, i]] = u_inv[:, [i, t]]
                        done = False
            for j in range(t + 1, cols):
                if a[t, j]:
                    q = a[t, j] // a[t, t]
                    a[:, j] -= q * a[:, t]
                    v[:, j] -= q * v[:, t]
                    if a[t, j]:
                        a[:, [t, j]] = a[:, [j, t]]
                        v[:, [t, j]] = v[:, [j, t]]
                        done = False
            if done and not any(a[i, t] for i in range(t + 1, rows)):
                break
        if a[t, t] < 0:
            a[t] = -a[t]
            u_inv[:, t] = -u_inv[:, t]
        diag.append(int(a[t, t]))
        t += 1
    return diag, u_inv, v


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def _unit_for(d, g, n):
    """A unit u mod n with u * g == d (mod n), where g = gcd(d, n)."""
    if g == 0:
        return 1
    base = (d // g) % (n // g)
    for k in range(g + 1):
        u = base + k * (n // g)
        if math.gcd(u, n) == 1:
            return u % n
    raise ArithmeticError("unit search failed")  # unreachable


def _modinv(u, n):
    g, x, _ = _xgcd(u % n, n)
    if g != 1:
        raise ArithmeticError("not a unit")
    return x % n


def snf_mod(a, n, transforms=False):
    """Diagonalize an integer matrix over Z/n.

    Returns (diag, p, q) with p @ a @ q == diag(diag) mod n, p and q
    invertible mod n, and each diagonal entry a divisor of n.  There is no
    global divisibility chain (use invariant_factor_chain for that); the
    diagonal is enough for solving and kernel computations.
    """
    a = (_as_int_matrix(a) % n).astype(np.int64)
    rows, cols = a.shape
    p = np.eye(rows, dtype=np.int64) if transforms else None
    q = np.eye(cols, dtype=np.int64) if transforms else None

    def rowcomb(i1, i2, x, y, z, w):
        # (r_i1, r_i2) <- (x r_i1 + y r_i2, z r_i1 + w r_i2), det = 1
        a[i1], a[i2] = (x * a[i1] + y * a[i2]) % n, (z * a[i1] + w * a[i2]) % n
        if transforms:
            p[i1], p[i2] = (x * p[i1] + y * p[i2]) % n, (z * p[i1] + w * p[i2]) % n

    def colcomb(j1, j2, x, y, z, w):
        a[:, j1], a[:, j2] = (x * a[:, j1] + y * a[:, j2]) % n, (z * a[:, j1] + w * a[:, j2]) % n
        if transforms:
            q[:, j1], q[:, j2] = (x * q[:, j1] + y * q[:, j2]) % n, (z * q[:, j1] + w * q[:, j2]) % n

    diag = []
    t = 0
    while t < min(rows, cols):
        sub = a[t:, t:]
        nz = np.nonzero(sub)
        if len(nz[0]) == 0:
            break
        gcds = np.gcd(sub[nz], n)
        k = int(np.argmin(gcds))
        pi, pj = int(nz[0][k]) + t, int(nz[1][k]) + t
        if pi != t:
            rowcomb(t, pi, 0, 1, -1, 0)
        if pj != t:
            colcomb(t, pj, 0, 1, -1, 0)
        while True:
            changed = False
            for i in range(t + 1, rows):
                b = int(a[i, t])
                if b:
                    pv = int(a[t, t])
                    if b % pv == 0:
                        rowcomb(t, i, 1, 0, -(b // pv), 1)
                    else:
                        g, x, y = _xgcd(pv, b)
                        rowcomb(t, i, x, y, -(b // g), pv // g)
                    changed = True
            for j in range(t + 1, cols):
                b = int(a[t, j])
                if b:
                    pv = int(a[t, t])
                    if b % pv == 0:
                        colcomb(t, j, 1, 0, -(b // pv), 1)
                    else:
                        g, x, y = _xgcd(pv, b)
                        colcomb(t, j, x, y, -(b // g), pv // g)
                    changed = True
            if not changed:
                break
        d = int(a[t, t])
        g = math.gcd(d, n)
        if d != g:
            u = _unit_for(d, g, n)
            ui = _modinv(u, n)
            a[t] = (a[t] * ui) % n
            if transforms:
                p[t] = (p[t] * ui) % n
        diag.append(g)
        t += 1
    return diag, p, q


def solve_mod(a, n, b):
    """One solution x of a @ x == b (mod n), or None."""
    a = _as_int_matrix(a)
    diag, p, q = snf_mod(a, n, transforms=True)
    c = (p @ (np.asarray(b, dtype=np.int64) % n)) % n
    rows, cols = a.shape
    y = np.zeros(cols, dtype=np.int64)
    for i in range(rows):
        d = diag[i] if i < len(diag) else 0
        ci = int(c[i])
        if d == 0:
            if ci % n != 0:
                return None
        else:
            if ci % d != 0:
                return None
            # d * y == ci (mod n) with d | n and d | ci
            y[i] = (ci // d) % (n // d)
    return (q @ y) % n


def kernel_mod(a, n):
    """Generators of {x : a @ x == 0 mod n} as columns, with their orders."""
    a = _as_int_matrix(a)
    diag, _, q = snf_mod(a, n, transforms=True)
    cols = a.shape[1]
    gens = []
    orders = []
    for i in range(cols):
        d = diag[i] if i < len(diag) else 0
        t = n // math.gcd(d, n) if d else 1
        if t != n:  # order n//t > 1
            gens.append((q[:, i] * t) % n)
            orders.append(n // t)
    if gens:
        return np.stack(gens, axis=1), orders
    return np.zeros((cols, 0), dtype=np.int64), []


def rref_fp(a, p):
    """Row-reduced echelon form over F_p; returns (matrix, pivot columns)."""
    a = (np.array(a, dtype=np.int64) % p).copy()
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i, c] % p), None)
        if piv is None:
            continue
        a[[r, piv]] = a[[piv, r]]
        a[r] = (a[r] * _modinv(int(a[r, c]), p)) % p
        for i in range(rows):
            if i != r and a[i, c]:
                a[i] = (a[i] - a[i, c] * a[r]) % p
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a[:r], pivots


def nullspace_fp(a, p):
    """Basis (rows) of the right nullspace of a over F_p."""
    red, pivots = rref_fp(a, p)
    cols = np.asarray(a).shape[1]
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = np.zeros(cols, dtype=np.int64)
        v[f] = 1
        for r, c in enumerate(pivots):
            v[c] = (-red[r, f]) % p
        basis.append(v)
    return np.array(basis, dtype=np.int64).reshape(len(basis), cols)
