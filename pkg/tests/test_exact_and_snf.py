import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gxcat.cyclo import Cyc, cyclotomic_poly
from gxcat.exact import CertReal, QuadReal, scalar_eq
from gxcat.snf import (
    invariant_factor_chain,
    kernel_mod,
    snf_mod,
    snf_z,
    snf_z_transforms,
    solve_mod,
)


class TestQuadReal:
    def test_golden_ratio(self):
        phi = QuadReal.root_of(1, 1)
        assert phi * phi == phi + 1
        assert abs(float(phi) - (1 + math.sqrt(5)) / 2) < 1e-14

    def test_sqrt2(self):
        r = QuadReal.sqrt_int(2)
        assert r * r == QuadReal(2)
        assert QuadReal.sqrt_int(8) == QuadReal(0, 2, 2)

    def test_field_ops(self):
        a = QuadReal(Fraction(1, 2), Fraction(3, 2), 5)
        b = QuadReal(2, -1, 5)
        assert (a + b) - b == a
        assert (a * b) / b == a

    def test_sign(self):
        assert QuadReal(1, -1, 2).sign() < 0  # 1 - sqrt(2) < 0
        assert QuadReal(3, -2, 2).sign() > 0  # 3 - 2 sqrt(2) > 0
        assert QuadReal(0).sign() == 0

    def test_mixed_fields_demote(self):
        c = QuadReal(0, 1, 2) * QuadReal(0, 1, 5)
        assert isinstance(c, CertReal)
        assert scalar_eq(c, CertReal(math.sqrt(10), 1e-9))

    def test_json(self):
        phi = QuadReal.root_of(1, 1)
        assert phi.to_json() == {"a": 1, "b": 1, "m": 5, "den": 2}


class TestCyc:
    def test_fourth_root(self):
        i = Cyc.root(4)
        assert i * i == Cyc.rational(-1)
        assert i * i.conj() == 1

    def test_sixth_root_identity(self):
        z = Cyc.root(6)
        # zeta_6 satisfies z^2 - z + 1 = 0
        assert z * z - z + 1 == 0

    def test_conductor_lift(self):
        assert Cyc.root(2) == Cyc.root(4, 2)
        assert Cyc.root(3) + Cyc.root(3, 2) == Cyc.rational(-1)

    def test_inverse(self):
        z = Cyc.root(5) + Cyc.rational(2)
        assert z * z.inv() == 1

    def test_cyclotomic_poly(self):
        assert list(cyclotomic_poly(1)) == [-1, 1]
        assert list(cyclotomic_poly(2)) == [1, 1]
        assert list(cyclotomic_poly(4)) == [1, 0, 1]
        assert list(cyclotomic_poly(6)) == [1, -1, 1]


def brute_coker_invariants(mat, rows, cols):
    """Order-style oracle: invariant factors via gcds of minors."""
    import itertools

    from math import gcd

    def minors(k):
        best = 0
        for r in itertools.combinations(range(rows), k):
            for c in itertools.combinations(range(cols), k):
                sub = [[mat[i][j] for j in c] for i in r]
                best = gcd(best, round(np.linalg.det(np.array(sub, dtype=float))))
        return abs(best)

    out = []
    prev = 1
    for k in range(1, min(rows, cols) + 1):
        d = minors(k)
        if d == 0:
            break
        out.append(d // prev)
        prev = d
    return [x for x in out if x != 0]


class TestSnf:
    @given(st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3), min_size=3, max_size=3))
    @settings(max_examples=60, deadline=None)
    def test_snf_z_matches_minor_gcds(self, rows):
        mat = [row[:] for row in rows]
        got = snf_z(mat)
        want = brute_coker_invariants(mat, 3, 3)
        assert got == invariant_factor_chain(want)

    def test_snf_z_transforms_consistency(self):
        mat = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
        diag, u_inv, v = snf_z_transforms(mat)
        a = np.array(mat, dtype=object)
        # u a v = d  =>  a v = u_inv d
        av = a @ np.array(v, dtype=object)
        d = np.zeros_like(a)
        for i, val in enumerate(diag):
            d[i, i] = val
        assert np.array_equal(av, np.array(u_inv, dtype=object) @ d)

    @given(
        st.lists(st.lists(st.integers(-6, 6), min_size=4, max_size=4), min_size=3, max_size=3),
        st.sampled_from([2, 3, 4, 6, 12]),
    )
    @settings(max_examples=60, deadline=None)
    def test_snf_mod_transform_identity(self, rows, n):
        mat = np.array(rows, dtype=np.int64)
        diag, p, q = snf_mod(mat, n, transforms=True)
        lhs = (p @ mat @ q) % n
        want = np.zeros_like(lhs)
        for i, v in enumerate(diag):
            want[i, i] = v % n
        assert np.array_equal(lhs, want)
        # transforms invertible mod n
        assert math.gcd(int(round(np.linalg.det(p.astype(float)))) % n, n) == 1
        assert math.gcd(int(round(np.linalg.det(q.astype(float)))) % n, n) == 1

    @given(
        st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3), min_size=3, max_size=3),
        st.sampled_from([2, 4, 6]),
        st.lists(st.integers(0, 5), min_size=3, max_size=3),
    )
    @settings(max_examples=40, deadline=None)
    def test_solve_mod_finds_solutions(self, rows, n, x):
        mat = np.array(rows, dtype=np.int64)
        b = (mat @ np.array(x)) % n
        sol = solve_mod(mat, n, b)
        assert sol is not None
        assert np.array_equal((mat @ sol) % n, b % n)

    def test_kernel_mod(self):
        mat = np.array([[2, 0], [0, 3]], dtype=np.int64)
        gens, orders = kernel_mod(mat, 6)
        # kernel of diag(2,3) mod 6 is 3Z/6 x 2Z/6, order 6
        assert sorted(orders) == [2, 3]
        for col in gens.T:
            assert np.array_equal((mat @ col) % 6, np.zeros(2, dtype=np.int64))
