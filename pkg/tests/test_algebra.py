from fractions import Fraction

import pytest
from hypothesis import given, settings

from conftest import expressions
from paraklein.algebra import (
    ONE,
    ZERO,
    Expression,
    Generator,
    K,
    Kind,
    Word,
    anticommutator,
    b,
    bracket,
    commutator,
    dagger,
    f,
    generators,
    klein_transform,
    mul,
    normalize,
    parse,
)


class TestMul:
    def test_klein_squares_to_one(self):
        assert mul(K, K) == ONE

    def test_klein_moves_right_with_sign(self):
        assert mul(K, f(1, 1)) == -mul(f(1, 1), K)
        assert mul(K, f(1, 1)) == Expression({Word((Generator(Kind.FERMION, 1, 1),), 1): -1})

    def test_dressed_product(self):
        lhs = mul(mul(f(1, 1), K), mul(b(1, -1), K))
        assert lhs == -mul(f(1, 1), b(1, -1))

    def test_free_words_stay_free(self):
        c = commutator(f(1, 1), b(1, 1))
        assert len(c) == 2
        assert str(c) == "1 * f+1 b+1 + -1 * b+1 f+1"

    def test_scalars(self):
        assert 2 * f(1, 1) - f(1, 1) == f(1, 1)
        assert f(1, 1) * Fraction(1, 2) + f(1, 1) * Fraction(1, 2) == f(1, 1)


class TestBracket:
    @given(expressions())
    def test_self_commutator_vanishes(self, x):
        assert bracket(x, x, "commutator").is_zero()

    def test_klein_anticommutes(self):
        assert anticommutator(K, f(1, -1)).is_zero()
        for g in generators(2, 2):
            e = Expression({Word((g,)): 1})
            assert (mul(K, e) + mul(e, K)).is_zero()

    def test_unknown_type(self):
        with pytest.raises(ValueError):
            bracket(K, K, "jordan")


class TestDagger:
    def test_swaps_creation_and_annihilation(self):
        assert dagger(f(1, 1)) == f(1, -1)
        assert dagger(b(3, -1)) == b(3, 1)
        assert dagger(K) == K

    def test_reverses_and_repositions_klein(self):
        # K b2+ f1-  ->  K passes two letters, no sign change
        x = mul(mul(f(1, 1), b(2, -1)), K)
        assert dagger(x) == mul(mul(b(2, 1), f(1, -1)), K)

    def test_odd_word_with_klein(self):
        # (f1+ K)^dagger = K f1- = -f1- K
        assert dagger(mul(f(1, 1), K)) == -mul(f(1, -1), K)

    @given(expressions())
    def test_involution(self, x):
        assert dagger(dagger(x)) == x


class TestKleinTransform:
    def test_generators(self):
        assert klein_transform(f(1, 1)) == mul(f(1, 1), K)
        assert klein_transform(f(1, -1)) == -mul(f(1, -1), K)
        assert klein_transform(b(2, 1)) == b(2, 1)
        assert klein_transform(K) == K

    def test_tilde_commutator_identity(self):
        for xi in (-1, 1):
            for eta in (-1, 1):
                lhs = klein_transform(commutator(f(1, xi), f(2, eta)))
                assert lhs == -(xi * eta) * commutator(f(1, xi), f(2, eta))


class TestNormalize:
    def test_zero_removal(self):
        w, w2 = Word((Generator(Kind.FERMION, 1, 1),)), Word((Generator(Kind.BOSON, 1, -1),))
        assert normalize(Expression([(w, 0), (w2, 2)])) == Expression({w2: 2})
        assert len(Expression([(w, 0), (w2, 2)])) == 1

    def test_cancellation(self):
        assert normalize(f(1, 1) + (-1) * f(1, 1)) == ZERO

    @given(expressions())
    def test_idempotent(self, x):
        assert normalize(normalize(x)) == normalize(x)

    def test_term_order(self):
        e = b(1, 1) + f(2, -1) + f(1, 1) + f(1, -1) + mul(f(1, 1), K) + ONE
        assert str(e) == "1 * 1 + 1 * f-1 + 1 * f+1 + 1 * f+1 K + 1 * f-2 + 1 * b+1"

    def test_invalid_generators(self):
        with pytest.raises(ValueError):
            f(0, 1)
        with pytest.raises(ValueError):
            b(1, 2)


def test_serialization_roundtrip():
    e = Fraction(1, 2) * mul(f(1, 1), b(2, -1)) - 3 * mul(b(1, 1), K)
    assert str(e) == "-3 * b+1 K + 1/2 * f+1 b-2"
    assert parse(str(e)) == e
    assert parse("0") == ZERO


def test_parse_bare_terms():
    assert parse("f+1 b-1") == mul(f(1, 1), b(1, -1))
    assert parse("3") == 3 * ONE
    assert parse("f-2 + -1/2") == f(2, -1) - Fraction(1, 2) * ONE
    with pytest.raises(ValueError):
        parse("q+1")


@settings(max_examples=300)
@given(expressions(), expressions(), expressions())
def test_mul_associative(x, y, z):
    assert mul(mul(x, y), z) == mul(x, mul(y, z))


@settings(max_examples=300)
@given(expressions(), expressions())
def test_dagger_antihomomorphism(x, y):
    assert dagger(mul(x, y)) == mul(dagger(y), dagger(x))


@settings(max_examples=300)
@given(expressions(), expressions())
def test_klein_transform_homomorphism(x, y):
    assert klein_transform(mul(x, y)) == mul(klein_transform(x), klein_transform(y))


@given(expressions())
def test_klein_transform_involution(x):
    assert klein_transform(klein_transform(x)) == x
