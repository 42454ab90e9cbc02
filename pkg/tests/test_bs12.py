import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hnn_forge.bs12 import (
    A_GEN,
    B_GEN,
    IDENTITY,
    Dyadic,
    HElement,
    a_exponent,
    b_exponent,
    bit_cap,
    h_eval_word,
    h_inv,
    h_is_identity,
    h_mul,
    h_pow,
    in_A,
    in_B,
)
from hnn_forge.errors import ResourceLimit

from conftest import LETTERS, affine_eval, as_affine, dyadics, h_elements


def H(q, k=0):
    return HElement.of(Fraction(q), k)


class TestDyadic:
    def test_normalizes(self):
        d = Dyadic.make(12, 3)
        assert (d.num, d.exp) == (3, 1)
        assert Dyadic.make(0, 7) == Dyadic(0, 0)
        assert Dyadic.make(5, -2) == Dyadic(20, 0)

    def test_rejects_unnormalized(self):
        with pytest.raises(ValueError):
            Dyadic(4, 2)
        with pytest.raises(ValueError):
            Dyadic(1, -1)

    @given(dyadics)
    def test_normalization_idempotent(self, d):
        assert Dyadic.make(d.num, d.exp) == d
        assert d.exp == 0 or d.num % 2 == 1

    @given(dyadics, dyadics, st.integers(-20, 20))
    def test_arithmetic_matches_fractions(self, x, y, s):
        assert (x + y).to_fraction() == x.to_fraction() + y.to_fraction()
        assert x.scale2(s).to_fraction() == x.to_fraction() * Fraction(2) ** s

    def test_non_dyadic_fraction(self):
        with pytest.raises(ValueError):
            Dyadic.from_fraction(Fraction(1, 3))


class TestExamples:
    def test_mul(self):
        assert h_mul(A_GEN, A_GEN) == H(2)
        assert h_mul(h_mul(H(0, -1), H(1)), H(0, 1)) == H(2)
        assert h_mul(h_mul(H(0, 1), H(1)), H(0, -1)) == H(Fraction(1, 2))

    def test_inv(self):
        assert h_inv(IDENTITY) == IDENTITY
        assert h_inv(A_GEN) == H(-1)
        g = H(Fraction(1, 2), -1)
        assert h_inv(g) == H(Fraction(-1, 4), 1)
        assert h_is_identity(h_mul(g, h_inv(g)))
        assert not h_is_identity(h_mul(g, H(-1, 1)))

    def test_pow(self):
        assert h_pow(A_GEN, 5) == H(5)
        assert h_pow(B_GEN, -3) == H(0, -3)
        assert h_pow(H(1, 1), 2) == H(Fraction(3, 2), 2)
        assert h_pow(H(3, 2), 0) == IDENTITY

    def test_membership(self):
        assert in_A(H(7)) and a_exponent(H(7)) == 7
        assert in_B(H(0, -2)) and b_exponent(H(0, -2)) == -2
        assert not in_A(H(Fraction(1, 2))) and not in_B(H(Fraction(1, 2)))
        with pytest.raises(ValueError):
            a_exponent(B_GEN)

    def test_eval_word(self):
        assert h_eval_word(["B", "a", "b"]) == H(2)
        assert h_eval_word(["b^-1", "a", "b"]) == H(2)
        assert h_eval_word([]) == IDENTITY
        assert h_eval_word("BBabb") == H(4)
        brute = IDENTITY
        for g in (h_inv(B_GEN), h_inv(B_GEN), A_GEN, B_GEN, B_GEN):
            brute = h_mul(brute, g)
        assert brute == H(4)

    def test_identity(self):
        assert h_is_identity(IDENTITY)
        assert not h_is_identity(B_GEN)
        comm = h_eval_word("abAB")
        assert comm == H(Fraction(1, 2))
        assert not h_is_identity(comm)

    def test_serialization(self):
        g = H(Fraction(-3, 8), 5)
        assert str(g) == "-3/2^3|5"
        assert HElement.parse(str(g)) == g
        with pytest.raises(ValueError):
            HElement.parse("nonsense")

    def test_as_word_spells_element(self):
        g = H(Fraction(-3, 8), 5)
        letters = []
        for x, p in g.as_word():
            letters += [x if p > 0 else x.upper()] * abs(p)
        assert h_eval_word(letters) == g


class TestProperties:
    def test_group_axioms_sampled(self):
        rng = random.Random(7)

        def rand():
            return HElement(Dyadic.make(rng.randint(-1000, 1000), rng.randint(0, 10)), rng.randint(-8, 8))

        for _ in range(10_000):
            f, g, h = rand(), rand(), rand()
            assert h_mul(h_mul(f, g), h) == h_mul(f, h_mul(g, h))
            assert h_is_identity(h_mul(f, h_inv(f)))

    def test_defining_relation(self):
        lhs = h_mul(h_mul(h_inv(B_GEN), A_GEN), B_GEN)
        assert lhs == h_pow(A_GEN, 2)

    def test_model_consistency_and_oracle(self):
        rng = random.Random(11)
        cancel = {"a": "A", "A": "a", "b": "B", "B": "b"}
        for _ in range(10_000):
            w = [rng.choice(LETTERS) for _ in range(rng.randint(0, 30))]
            free = []
            for x in w:
                if free and free[-1] == cancel[x]:
                    free.pop()
                else:
                    free.append(x)
            g = h_eval_word(w)
            assert g == h_eval_word(free)
            assert as_affine(g) == affine_eval(w)

    @given(h_elements)
    def test_subgroup_intersection(self, g):
        if in_A(g) and in_B(g):
            assert h_is_identity(g)

    @given(h_elements, st.integers(-40, 40))
    def test_pow_matches_repeated_mul(self, g, m):
        brute = IDENTITY
        step = g if m >= 0 else h_inv(g)
        for _ in range(abs(m)):
            brute = h_mul(brute, step)
        assert h_pow(g, m) == brute


class TestResourceLimit:
    def test_huge_shift_raises(self):
        with bit_cap(64):
            with pytest.raises(ResourceLimit):
                h_mul(H(0, -100), A_GEN)
            with pytest.raises(ResourceLimit):
                h_mul(H(0, 100), A_GEN)

    def test_pow_overflow(self):
        with bit_cap(32):
            with pytest.raises(ResourceLimit):
                h_pow(H(0, -1) * A_GEN, 10**6)

    def test_under_cap_is_fine(self):
        with bit_cap(64):
            assert h_mul(H(0, -60), A_GEN) == H(2**60, -60)
