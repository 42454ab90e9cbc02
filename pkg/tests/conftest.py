import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from hnn_forge.bs12 import Dyadic, HElement

LETTERS = ["a", "A", "b", "B"]
G_LETTERS = ["a", "A", "b", "B", "t", "T"]


def affine_eval(letters):
    """Independent oracle: compose the affine maps x -> x+1 (a), x -> x/2 (b).

    Returns ``(q, scale)`` with the word acting as ``x -> scale*x + q``.
    """
    maps = {
        "a": (Fraction(1), Fraction(1)),
        "A": (Fraction(-1), Fraction(1)),
        "b": (Fraction(0), Fraction(1, 2)),
        "B": (Fraction(0), Fraction(2)),
    }
    q, s = Fraction(0), Fraction(1)
    # a word g1 g2 ... acts as g1(g2(...(x)))
    for x in letters:
        q2, s2 = maps[x]
        q, s = q + s * q2, s * s2
    return q, s


def as_affine(g: HElement):
    return g.q.to_fraction(), Fraction(1, 2**g.k) if g.k >= 0 else Fraction(2 ** -g.k)


def letters_to_terms(letters):
    lower = {"a": ("a", 1), "A": ("a", -1), "b": ("b", 1), "B": ("b", -1), "t": ("t", 1), "T": ("t", -1)}
    return [lower[x] for x in letters]


def random_g_letters(rng: random.Random, max_len: int = 40):
    return [rng.choice(G_LETTERS) for _ in range(rng.randint(0, max_len))]


dyadics = st.builds(Dyadic.make, st.integers(-(2**20), 2**20), st.integers(0, 12))
h_elements = st.builds(HElement, dyadics, st.integers(-6, 6))


@pytest.fixture
def rng():
    return random.Random(20240601)
