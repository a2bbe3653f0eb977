from fractions import Fraction

import numpy as np
import pytest

from garank.algebra import Multivector, Signature, hermitian_conjugation
from garank.charpoly import determinant
from garank.coeff import EXACT, FLOAT, GaussianRational
from garank.errors import NotInImageError, ValidationError
from garank.matrep import (build_representation, matrix_charpoly, matrix_det, matrix_rank,
                           matrix_svd, represent, svd_ga, trace_identity_holds, unrepresent)
from garank.sampling import all_signatures, random_multivector
from garank import linalg

I2 = np.eye(2)


def dense_generators(p: int, q: int) -> list:
    """Straightforward dense transcription of the recursive construction."""
    gens = [np.diag([1, -1]).astype(complex)]
    n = 1
    while n < p + q:
        if n % 2 == 1:
            half = gens[0].shape[0]
            swap = np.block([[np.zeros((half // 2, half // 2)), np.eye(half // 2)],
                             [np.eye(half // 2), np.zeros((half // 2, half // 2))]])
            gens.append(swap.astype(complex))
        else:
            k = (n - 2) // 2
            prod = np.eye(gens[0].shape[0], dtype=complex)
            for g in gens:
                prod = prod @ g
            gens = [np.block([[g, 0 * g], [0 * g, -g]]) for g in gens]
            top = (1j) ** (k + 1) * prod
            gens.append(np.block([[top, 0 * top], [0 * top, -top]]))
        n += 1
    return [g if a < p else 1j * g for a, g in enumerate(gens)]


class TestGenerators:
    def test_small_cases(self):
        g1 = build_representation(Signature(1, 0)).generators
        assert np.array_equal(g1[0], np.diag([1, -1]))
        g2 = build_representation(Signature(2, 0)).generators
        assert np.array_equal(g2[1], [[0, 1], [1, 0]])
        g3 = build_representation(Signature(3, 0)).generators
        assert np.array_equal(g3[0], np.diag([1, -1, -1, 1]))
        assert np.array_equal(g3[2], [[0, 1j, 0, 0], [-1j, 0, 0, 0], [0, 0, 0, -1j], [0, 0, 1j, 0]])
        assert np.array_equal(build_representation(Signature(0, 1)).generators[0], np.diag([1j, -1j]))

    @pytest.mark.parametrize("sig", all_signatures(7))
    def test_match_dense_construction(self, sig):
        got = build_representation(sig).generators
        for a, b in zip(got, dense_generators(sig.p, sig.q)):
            assert np.array_equal(a, b)

    @pytest.mark.parametrize("sig", all_signatures(8))
    def test_validate(self, sig):
        build_representation(sig).validate()

    @pytest.mark.parametrize("sig", all_signatures(6))
    def test_anticommutation_dense(self, sig):
        gens = build_representation(sig).generators
        N = sig.N
        for a in range(sig.n):
            for b in range(sig.n):
                anti = gens[a] @ gens[b] + gens[b] @ gens[a]
                want = 2 * sig.eta(a + 1) * np.eye(N) if a == b else np.zeros((N, N))
                assert np.array_equal(anti, want)
            assert np.array_equal(gens[a].conj().T, sig.eta(a + 1) * gens[a])

    def test_largest(self):
        rep = build_representation(Signature(6, 6))
        assert rep.N == 64
        assert rep.blade_table[(1 << 12) - 1].shape == (64, 64)

    def test_exact_blade_matrix(self):
        rep = build_representation(Signature(1, 1))
        m = rep.blade_matrix(0b10, EXACT)
        assert m[0, 1] == GaussianRational(0, 1)


class TestRepresent:
    @pytest.mark.parametrize("sig", all_signatures(6))
    def test_multiplicative_and_dagger(self, sig, rng):
        a, b = random_multivector(sig, rng), random_multivector(sig, rng)
        ra, rb = represent(a), represent(b)
        assert np.allclose(represent(a * b), ra @ rb, atol=1e-10 * np.linalg.norm(ra) * np.linalg.norm(rb))
        assert np.allclose(represent(hermitian_conjugation(a)), ra.conj().T)

    @pytest.mark.parametrize("sig", all_signatures(4))
    def test_exact_matches_float(self, sig, rng):
        m = random_multivector(sig, rng, EXACT)
        ex = represent(m)
        assert np.array_equal(np.array(ex, dtype=complex), represent(m.with_mode(FLOAT)))

    @pytest.mark.parametrize("sig", [s for s in all_signatures(5) if s.n % 2])
    def test_odd_block_structure(self, sig, rng):
        m = random_multivector(sig, rng)
        half = sig.N // 2
        even = Multivector(sig, {k: v for k, v in m.terms.items() if k.bit_count() % 2 == 0})
        odd = m - even
        re, ro = represent(even), represent(odd)
        for blk in (re, ro):
            assert np.allclose(blk[:half, half:], 0) and np.allclose(blk[half:, :half], 0)
        assert np.allclose(re[:half, :half], re[half:, half:])
        assert np.allclose(ro[:half, :half], -ro[half:, half:])
        assert matrix_rank(represent(m)) == matrix_rank(represent(m.hat()))

    @pytest.mark.parametrize("sig", all_signatures(6))
    def test_det_bridge(self, sig, rng):
        m = random_multivector(sig, rng)
        a = represent(m)
        assert abs(complex(determinant(m)) - matrix_det(a)) <= 1e-9 * np.linalg.norm(a, 2) ** sig.N
        assert trace_identity_holds(m)

    def test_matrix_charpoly_convention(self):
        assert matrix_charpoly(np.diag([1.0, -1.0])) == [0, 1]
        assert matrix_charpoly(linalg.as_exact(np.diag([2, 3]).astype(object))) == [5, -6]


class TestUnrepresent:
    @pytest.mark.parametrize("sig", all_signatures(6))
    def test_identity(self, sig):
        assert unrepresent(np.eye(sig.N), sig) == Multivector.scalar(sig, 1.0)

    def test_idempotent(self):
        s = Signature(1, 0)
        got = unrepresent(linalg.as_exact(np.diag([1, 0]).astype(object)), s)
        half = GaussianRational(Fraction(1, 2))
        assert got == Multivector(s, {0: half, 1: half}, EXACT)

    def test_off_block_rejected(self):
        s = Signature(3, 0)
        a = np.zeros((4, 4), dtype=complex)
        a[0, 3] = 1
        with pytest.raises(NotInImageError):
            unrepresent(a, s)
        with pytest.raises(NotInImageError):
            unrepresent(linalg.as_exact(a.real.astype(int).astype(object)), s)

    def test_shape(self):
        with pytest.raises(ValidationError):
            unrepresent(np.eye(3), Signature(2, 0))

    @pytest.mark.parametrize("sig", all_signatures(6))
    def test_round_trip(self, sig, rng):
        m = random_multivector(sig, rng)
        back = unrepresent(represent(m), sig)
        assert max(abs(back.coefficient(k) - m.coefficient(k)) for k in range(sig.dim)) < 1e-12

    @pytest.mark.parametrize("sig", all_signatures(3))
    def test_round_trip_exact(self, sig, rng):
        m = random_multivector(sig, rng, EXACT)
        assert unrepresent(represent(m), sig) == m


class TestSVD:
    def test_scalar(self):
        s = Signature(2, 0)
        res = svd_ga(Multivector.scalar(s, 3.0))
        assert res.singular_values == (3.0, 3.0)
        assert np.allclose(represent(res.Sigma), 3 * np.eye(2))
        assert np.allclose(represent(res.U) @ represent(res.V).conj().T, np.eye(2))

    def test_idempotent(self):
        s = Signature(1, 0)
        res = svd_ga((Multivector.scalar(s, 1.0) + Multivector.blade(s, [1])) / 2)
        assert np.allclose(res.singular_values, (1, 0))

    @pytest.mark.parametrize("sig", all_signatures(5))
    def test_factorization(self, sig, rng):
        m = random_multivector(sig, rng)
        res = svd_ga(m)
        e = Multivector.scalar(sig, 1.0)
        scale = m.norm()
        assert (res.reconstruct() - m).norm() <= 1e-9 * scale
        assert (hermitian_conjugation(res.U) * res.U - e).norm() <= 1e-10
        assert (hermitian_conjugation(res.V) * res.V - e).norm() <= 1e-10
        sig_m = represent(res.Sigma)
        assert np.allclose(sig_m, np.diag(np.diag(sig_m).real), atol=1e-12)
        assert sorted(res.singular_values) == pytest.approx(
            sorted(matrix_svd(represent(m))[1]), abs=1e-9)

    def test_rejects_exact(self):
        with pytest.raises(ValidationError):
            svd_ga(Multivector.scalar(Signature(1, 0), 1, EXACT))
