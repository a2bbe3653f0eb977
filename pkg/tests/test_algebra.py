import math
from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import given, strategies as st

from garank.algebra import (Multivector, Signature, add, blade_indices, blade_mask, blade_name,
                            blade_product, complex_conjugation, geometric_product,
                            grade_involution, grade_projection, hermitian_conjugation,
                            is_unitary, norm, norm_squared, pseudoscalar, reversion, scale,
                            scalar_product, triangle_conjugation)
from garank.coeff import EXACT, FLOAT, GaussianRational
from garank.errors import ModeMismatchError, SignatureMismatchError, ValidationError
from garank.matrep import build_representation, represent
from garank.sampling import all_signatures

from conftest import exact_multivector, exact_tuple, gaussian_rationals, signatures

G = GaussianRational


def mv(sig, terms, mode=EXACT):
    return Multivector(sig, {blade_mask(k): v for k, v in terms.items()}, mode)


def word_product(a: tuple, b: tuple, sig: Signature):
    """Blade product by literally sorting the concatenated word."""
    word = list(a) + list(b)
    sign = 1
    changed = True
    while changed:
        changed = False
        for i in range(len(word) - 1):
            if word[i] > word[i + 1]:
                word[i], word[i + 1] = word[i + 1], word[i]
                sign = -sign
                changed = True
            elif word[i] == word[i + 1]:
                sign *= sig.eta(word[i])
                del word[i:i + 2]
                changed = True
                break
    return tuple(word), sign


class TestSignature:
    def test_parse(self):
        assert Signature.parse("2,1") == Signature(2, 1)
        assert Signature(3, 1).N == 4
        assert Signature(3, 0).N == 4
        assert Signature(1, 0).N == 2

    @pytest.mark.parametrize("text", ["", "2", "a,b", "-1,2", "0,0", "7,6"])
    def test_parse_rejects(self, text):
        with pytest.raises(ValidationError):
            Signature.parse(text)


class TestBlades:
    def test_names(self):
        assert blade_name(0) == "e"
        assert blade_name(blade_mask([1, 2])) == "e12"
        assert blade_name(blade_mask([10, 12])) == "e[10,12]"
        assert blade_indices(0b1011) == (1, 2, 4)

    @pytest.mark.parametrize("sig,a,b,expected", [
        (Signature(1, 0), [1], [1], ([], 1)),
        (Signature(0, 1), [1], [1], ([], -1)),
        (Signature(2, 0), [2], [1], ([1, 2], -1)),
    ])
    def test_examples(self, sig, a, b, expected):
        mask, sign = blade_product(blade_mask(a), blade_mask(b), sig)
        assert (blade_indices(mask), sign) == (tuple(expected[0]), expected[1])

    @pytest.mark.parametrize("sig", all_signatures(5))
    def test_against_word_reduction(self, sig):
        for a, b in product(range(sig.dim), repeat=2):
            mask, sign = blade_product(a, b, sig)
            word, wsign = word_product(blade_indices(a), blade_indices(b), sig)
            assert (blade_indices(mask), sign) == (word, wsign)


class TestProductExamples:
    def test_e12_squared(self):
        s = Signature(2, 0)
        e12 = mv(s, {(1, 2): 1})
        assert e12 * e12 == mv(s, {(): -1})

    def test_bilinear(self):
        s = Signature(2, 0)
        left = mv(s, {(1,): G(1, 2)})
        right = mv(s, {(2,): 3})
        assert left * right == mv(s, {(1, 2): G(3, 6)})

    def test_idempotent_pair_annihilates(self):
        s = Signature(1, 0)
        assert (mv(s, {(): 1, (1,): 1}) * mv(s, {(): 1, (1,): -1})).is_zero()

    def test_add_scale(self):
        s = Signature(2, 0)
        e1 = mv(s, {(1,): 1})
        assert add(e1, -e1).is_zero()
        assert scale(0, mv(s, {(): 1, (1,): 3})).is_zero()
        assert scale(2, mv(s, {(): 1, (1,): 1})) == mv(s, {(): 2, (1,): 2})

    def test_grade_projection(self):
        s = Signature(1, 0)
        m = mv(s, {(): 2, (1,): 3})
        assert grade_projection(m, 0) == mv(s, {(): 2})
        assert grade_projection(m, 1) == mv(s, {(1,): 3})
        with pytest.raises(ValidationError):
            grade_projection(m, 2)

    def test_float_and_exact_agree(self):
        s = Signature(2, 1)
        rng = np.random.default_rng(1)
        a = rng.integers(-3, 4, size=(2, s.dim))
        ex = [Multivector(s, {k: G(int(v)) for k, v in enumerate(row)}, EXACT) for row in a]
        fl = [Multivector(s, {k: complex(v) for k, v in enumerate(row)}, FLOAT) for row in a]
        assert (ex[0] * ex[1]).with_mode(FLOAT) == fl[0] * fl[1]

    def test_operand_checks(self):
        a = Multivector.scalar(Signature(1, 0), 1, EXACT)
        with pytest.raises(SignatureMismatchError):
            geometric_product(a, Multivector.scalar(Signature(0, 1), 1, EXACT))
        with pytest.raises(ModeMismatchError):
            geometric_product(a, Multivector.scalar(Signature(1, 0), 1, FLOAT))

    def test_canonical_zero_dropping(self):
        s = Signature(2, 0)
        m = mv(s, {(1,): 1, (2,): 0})
        assert len(m) == 1
        assert mv(s, {(1,): 1}) + mv(s, {(1,): -1}) == Multivector.zero(s, EXACT)


class TestConjugationExamples:
    def test_hat_tilde(self):
        s = Signature(2, 0)
        assert grade_involution(mv(s, {(1,): 1})) == mv(s, {(1,): -1})
        assert grade_involution(mv(s, {(1, 2): 1})) == mv(s, {(1, 2): 1})
        assert reversion(mv(s, {(1, 2): 1})) == mv(s, {(1, 2): -1})

    def test_bar(self):
        s = Signature(1, 0)
        assert complex_conjugation(mv(s, {(): G(0, 1)})) == mv(s, {(): G(0, -1)})
        assert complex_conjugation(mv(s, {(1,): 1})) == mv(s, {(1,): 1})

    def test_dagger(self):
        assert hermitian_conjugation(mv(Signature(1, 0), {(1,): 1})) == mv(Signature(1, 0), {(1,): 1})
        assert hermitian_conjugation(mv(Signature(0, 1), {(1,): 1})) == mv(Signature(0, 1), {(1,): -1})
        s = Signature(2, 0)
        m = mv(s, {(1, 2): G(1, 1)})
        assert hermitian_conjugation(m) == mv(s, {(1, 2): G(-1, 1)})

    def test_dagger_is_conjugate_transpose(self):
        s = Signature(2, 0)
        m = mv(s, {(1, 2): G(1, 1)}, EXACT).with_mode(FLOAT)
        a = represent(m)
        assert np.allclose(represent(hermitian_conjugation(m)), a.conj().T)

    def test_triangle(self):
        s = Signature(4, 0)
        assert triangle_conjugation(mv(s, {(): 1})) == mv(s, {(): 1})
        assert triangle_conjugation(mv(s, {(1, 2, 3, 4): 1})) == mv(s, {(1, 2, 3, 4): -1})
        assert triangle_conjugation(mv(s, {(1, 2, 3): 1})) == mv(s, {(1, 2, 3): 1})

    def test_triangle_signs_by_grade(self):
        s = Signature(6, 0)
        for mask in range(s.dim):
            k = mask.bit_count()
            expected = -1 if math.comb(k, 4) % 2 else 1
            assert triangle_conjugation(Multivector(s, {mask: 1}, EXACT)).terms[mask] == expected

    def test_triangle_is_not_multiplicative(self):
        s = Signature(4, 0)
        m1 = mv(s, {(1, 2): 1})
        m2 = mv(s, {(3, 4): 1})
        assert triangle_conjugation(m1 * m2) != triangle_conjugation(m1) * triangle_conjugation(m2)


class TestNorms:
    def test_identity(self):
        assert norm(Multivector.scalar(Signature(3, 1), 1)) == 1.0

    @pytest.mark.parametrize("sig", all_signatures(4))
    def test_blade_norm_is_modulus(self, sig):
        lam = 3 - 4j
        for mask in range(sig.dim):
            assert norm(Multivector(sig, {mask: lam})) == pytest.approx(5.0)
            assert is_unitary(Multivector(sig, {mask: 1}))

    def test_unitary_examples(self):
        s = Signature(2, 0)
        assert not is_unitary(Multivector.scalar(s, 2))
        assert is_unitary(mv(s, {(): 1, (1, 2): 1}, FLOAT) / math.sqrt(2))
        assert is_unitary(Multivector(s, {0: G(Fraction(3, 5)), 3: G(0, Fraction(4, 5))}, EXACT)) is False
        u = Multivector(s, {0: G(Fraction(3, 5)), 3: G(Fraction(4, 5))}, EXACT)
        assert is_unitary(u)

    def test_unitary_matches_oracle(self):
        s = Signature(2, 0)
        a = represent(mv(s, {(): 1, (1, 2): 1}, FLOAT) / math.sqrt(2))
        assert np.allclose(a.conj().T @ a, np.eye(2))

    def test_norm_rejects_exact(self):
        with pytest.raises(ValidationError):
            norm(Multivector.scalar(Signature(1, 0), 1, EXACT))


# ---------------------------------------------------------------------------
# properties (exact arithmetic, so equality is structural)


@given(exact_tuple(1))
def test_involutions(ms):
    (m,) = ms
    assert m.hat().hat() == m
    assert m.tilde().tilde() == m
    assert m.bar().bar() == m
    assert m.dagger().dagger() == m
    assert m.triangle().triangle() == m


@given(exact_tuple(2))
def test_homomorphisms(ms):
    a, b = ms
    assert (a * b).hat() == a.hat() * b.hat()
    assert (a * b).tilde() == b.tilde() * a.tilde()
    assert (a * b).bar() == a.bar() * b.bar()
    assert (a * b).dagger() == b.dagger() * a.dagger()


@given(exact_tuple(3))
def test_associative_and_distributive(ms):
    a, b, c = ms
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


def _conjugate_by(m, blade, op):
    # blade op(M) blade^-1; blade^-1 = blade^dagger for basis blades
    return blade * op(m) * blade.dagger()


@given(exact_tuple(1))
def test_dagger_via_positive_pseudoscalar(ms):
    (m,) = ms
    sig = m.signature
    if sig.p == 0:
        return
    e_pos = pseudoscalar(sig, 1, sig.p, EXACT)
    op = (lambda x: x.tilde().bar()) if sig.p % 2 == 1 else (lambda x: x.tilde().hat().bar())
    assert m.dagger() == _conjugate_by(m, e_pos, op)


@given(exact_tuple(1))
def test_dagger_via_negative_pseudoscalar(ms):
    (m,) = ms
    sig = m.signature
    if sig.q == 0:
        return
    e_neg = pseudoscalar(sig, sig.p + 1, sig.n, EXACT)
    op = (lambda x: x.tilde().bar()) if sig.q % 2 == 0 else (lambda x: x.tilde().hat().bar())
    assert m.dagger() == _conjugate_by(m, e_neg, op)


@given(exact_tuple(3), gaussian_rationals())
def test_scalar_product_axioms(ms, lam):
    a, b, c = ms
    assert scalar_product(a, b) == scalar_product(b, a).conjugate()
    assert scalar_product(a, b + c) == scalar_product(a, b) + scalar_product(a, c)
    assert scalar_product(a, b * lam) == lam * scalar_product(a, b)
    n2 = norm_squared(a)
    assert n2 >= 0
    assert (n2 == 0) == a.is_zero()


@given(signatures.flatmap(exact_multivector))
def test_norm_squared_is_coefficient_sum(m):
    assert norm_squared(m) == sum((c.abs2() for c in m.terms.values()), Fraction(0))


@pytest.mark.parametrize("sig", all_signatures(6))
def test_blade_products_match_matrices(sig):
    rep = build_representation(sig)
    table = rep.blade_table
    rng = np.random.default_rng(sig.n * 10 + sig.p)
    pairs = [(a, b) for a in range(sig.dim) for b in range(sig.dim)]
    if len(pairs) > 1500:
        pairs = [pairs[i] for i in rng.choice(len(pairs), 1500, replace=False)]
    for a, b in pairs:
        mask, sign = blade_product(a, b, sig)
        assert np.array_equal(table[a] @ table[b], sign * table[mask])


@given(st.sampled_from(all_signatures(4)).flatmap(exact_multivector))
def test_dense_round_trip(m):
    assert Multivector.from_dense(m.signature, list(m.to_dense()), EXACT) == m
