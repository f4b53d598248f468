import itertools

import pytest

from gxcat.exact import QuadReal, scalar_eq
from gxcat.fusion import (
    FusionError,
    GradedFusionRing,
    RingGAction,
    global_dim,
    invertible_sector_obstruction,
    pf_dims,
    picard,
    pointed_ring,
    sector_dims,
    tensor_power,
    trivial_action,
    validate_action,
    validate_ring,
)
from gxcat.groups import cyclic, product, symmetric

PHI = QuadReal.root_of(1, 1)
SQRT2 = QuadReal.sqrt_int(2)


def graded_ising(ising_coeffs=None):
    from gxcat.corpus_build import ising_ring

    return ising_ring(name="ising_z2", group=cyclic(2), grading={"1": 0, "s": 1, "p": 0})


class TestValidateRing:
    def test_ising_passes(self, ising):
        assert validate_ring(ising).passed

    def test_vect_passes(self, vect):
        assert validate_ring(vect).passed

    def test_corrupted_ising_fails_with_witness(self, ising):
        coeffs = dict(ising.coeffs)
        coeffs[(1, 1, 2)] = 2  # N_{ss}^p = 2
        bad = GradedFusionRing.make("bad", ising.simples, ising.unit, ising.dual, coeffs)
        rep = validate_ring(bad)
        assert not rep.passed
        assert rep.issues[0]["code"] == "associativity"
        assert rep.issues[0]["witness"][:3] == ("s", "s", "p")

    def test_grading_violation_detected(self, ising):
        bad = GradedFusionRing.make(
            "bad_grading", ising.simples, ising.unit, ising.dual, dict(ising.coeffs),
            group=cyclic(2), grading={"1": 0, "s": 0, "p": 1},
        )
        rep = validate_ring(bad)
        assert any(i["code"] == "grading" for i in rep.issues)


class TestPfDims:
    def test_vect(self, vect):
        assert pf_dims(vect) == [QuadReal(1)]

    def test_fibonacci_golden_ratio(self, fibonacci):
        dims = pf_dims(fibonacci)
        assert dims[1] == PHI
        assert dims[1] * dims[1] == QuadReal(1) + dims[1]

    def test_ising_exact(self, ising):
        dims = pf_dims(ising)
        assert dims == [QuadReal(1), SQRT2, QuadReal(1)]
        assert global_dim(ising) == QuadReal(4)

    def test_rep_s3_integer(self, rep_s3):
        assert pf_dims(rep_s3) == [QuadReal(1), QuadReal(1), QuadReal(2)]

    def test_reducible_rejected(self):
        # two disconnected copies of the trivial ring
        ring = GradedFusionRing.make(
            "split", ["1", "x"], "1", {"1": "1", "x": "x"},
            {("1", "1", "1"): 1, ("1", "x", "x"): 1, ("x", "1", "x"): 1, ("x", "x", "x"): 1},
        )
        with pytest.raises(FusionError, match="reducible|strongly connected"):
            pf_dims(ring)

    def test_dims_identity_all_pairs(self, fib2_swap):
        ring, _ = fib2_swap
        dims = pf_dims(ring)
        n = ring.tensor()
        for i, j in itertools.product(range(ring.rank), repeat=2):
            rhs = sum((dims[k] * int(n[i, j, k]) for k in range(ring.rank)), start=QuadReal(0))
            assert dims[i] * dims[j] == rhs

    def test_mixed_field_ring_falls_back_to_certified_floats(self, ising, fibonacci):
        # Ising x Fib has dims {1, phi, sqrt2, phi*sqrt2}: degree four over Q,
        # outside any single quadratic field
        from gxcat.exact import CertReal, scalar_eq

        labels = [f"{a}*{b}" for a in ising.simples for b in fibonacci.simples]
        rf = fibonacci.rank
        coeffs = {}
        for (i1, j1, k1), v1 in ising.coeffs:
            for (i2, j2, k2), v2 in fibonacci.coeffs:
                coeffs[(i1 * rf + i2, j1 * rf + j2, k1 * rf + k2)] = v1 * v2
        dual = [ising.dual[i] * rf + fibonacci.dual[j] for i in range(3) for j in range(2)]
        ring = GradedFusionRing.make("ising*fib", labels, 0, dual, coeffs)
        assert validate_ring(ring).passed
        dims = pf_dims(ring)
        assert any(isinstance(d, CertReal) for d in dims)
        n = ring.tensor()
        for i, j in itertools.product(range(ring.rank), repeat=2):
            rhs = sum((dims[k] * int(n[i, j, k]) for k in range(ring.rank)), start=QuadReal(0))
            assert scalar_eq(dims[i] * dims[j], rhs)  # 1e-9 certified comparison
        assert scalar_eq(global_dim(ring), QuadReal(4) * (QuadReal(1) + PHI * PHI))


class TestSectors:
    def test_trivially_graded_ising(self, ising):
        rep = sector_dims(ising)
        assert rep.sectors == {"e": QuadReal(4)}
        assert rep.full_spectrum and rep.m3_homogeneous

    def test_graded_ising(self):
        rep = sector_dims(graded_ising())
        assert rep.sectors["e"] == QuadReal(2)
        assert rep.sectors["g"] == QuadReal(2)
        assert rep.full_spectrum and rep.m3_homogeneous

    def test_empty_sector_flags(self):
        ring = pointed_ring(cyclic(1), name="v", group=cyclic(2), grading=[0])
        rep = sector_dims(ring)
        assert not rep.full_spectrum
        assert not rep.m3_homogeneous


class TestActions:
    def test_swap_on_fib2_passes(self, fib2_swap):
        ring, action = fib2_swap
        assert validate_action(ring, action).passed

    def test_trivial_action_passes(self, ising):
        assert validate_action(ising, trivial_action(ising, cyclic(2))).passed

    def test_swap_between_different_factors_fails(self, ising, fibonacci):
        # Ising x Fib: slots are not isomorphic, so the swap breaks fusion
        labels = []
        coeffs = {}
        for (a, d1) in enumerate(ising.simples):
            for (b, d2) in enumerate(fibonacci.simples):
                labels.append(f"{d1}*{d2}")
        ni, nf = ising.tensor(), fibonacci.tensor()
        rank_f = fibonacci.rank
        for (i1, j1, k1), v1 in ising.coeffs:
            for (i2, j2, k2), v2 in fibonacci.coeffs:
                coeffs[(i1 * rank_f + i2, j1 * rank_f + j2, k1 * rank_f + k2)] = v1 * v2
        dual = [ising.dual[i] * rank_f + fibonacci.dual[j] for i in range(3) for j in range(2)]
        ring = GradedFusionRing.make("ising*fib", labels, 0, dual, coeffs)
        assert validate_ring(ring).passed
        # "swap" that exchanges the two tensor slots cannot be a bijection of
        # a 3x2 label set; the nearest impostor permutation breaks fusion
        perm = tuple([0, 3, 1, 4, 2, 5])
        action = RingGAction(cyclic(2), (tuple(range(6)), perm))
        rep = validate_action(ring, action)
        assert not rep.passed

    def test_homomorphism_violation(self, ising):
        # order-2 group acting by an order-3-looking assignment
        perm = (0, 2, 1)
        bad = RingGAction(cyclic(2), ((0, 1, 2), perm))
        rep = validate_action(ising, bad)
        assert not rep.passed


class TestTensorPower:
    def test_vect_power(self, vect):
        ring, action = tensor_power(vect, 2, cyclic(2), [(0, 1), (1, 0)])
        assert ring.rank == 1
        assert validate_action(ring, action).passed

    def test_fib2(self, fib2_swap, fibonacci):
        ring, _ = fib2_swap
        assert ring.rank == 4
        dims = pf_dims(ring)
        assert dims[0] == QuadReal(1)
        assert dims[3] == PHI * PHI
        assert global_dim(ring) == global_dim(fibonacci) * global_dim(fibonacci)

    def test_ising2(self, ising2_swap, ising):
        ring, _ = ising2_swap
        assert ring.rank == 9
        assert global_dim(ring) == QuadReal(16)

    def test_non_homomorphic_embedding_rejected(self, fibonacci):
        # injective assignment whose square is not the identity permutation
        with pytest.raises(FusionError, match="homomorphism"):
            tensor_power(fibonacci, 3, cyclic(2), [(0, 1, 2), (1, 2, 0)])

    def test_non_faithful_rejected(self, fibonacci):
        with pytest.raises(FusionError, match="faithful"):
            tensor_power(fibonacci, 2, cyclic(2), [(0, 1), (0, 1)])

    def test_power_cap(self, fibonacci):
        with pytest.raises(FusionError, match="capped"):
            tensor_power(fibonacci, 5, cyclic(1), [tuple(range(5))])


class TestObstruction:
    def test_fib2_swap_witness(self, fib2_swap):
        ring, action = fib2_swap
        assert invertible_sector_obstruction(ring, action, 1) == "(1,t)"

    def test_identity_never_obstructs(self, fib2_swap):
        ring, action = fib2_swap
        assert invertible_sector_obstruction(ring, action, 0) is None

    def test_single_simple_none(self, vect):
        ring, action = tensor_power(vect, 2, cyclic(2), [(0, 1), (1, 0)])
        assert invertible_sector_obstruction(ring, action, 1) is None


class TestPicard:
    def test_ising(self, ising):
        labels, grp = picard(ising)
        assert labels == ["1", "p"]
        assert grp.order == 2

    def test_fibonacci(self, fibonacci):
        labels, _ = picard(fibonacci)
        assert labels == ["1"]

    def test_pointed_z3(self):
        ring = pointed_ring(cyclic(3))
        labels, grp = picard(ring)
        assert len(labels) == 3 and grp.order == 3
        assert grp.mul == cyclic(3).mul

    def test_invertibility_is_integer_decided(self, ising2_swap):
        ring, _ = ising2_swap
        labels, grp = picard(ring)
        assert len(labels) == 4 and grp.is_abelian
