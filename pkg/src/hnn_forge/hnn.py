"""Words and the word problem in G = <H, t | t^-1 a t = b>, H = BS(1,2).

A :class:`GWord` stores the syllable product ``h0 t^e1 h1 ... t^en hn`` as two
tuples, ``hs`` (length n+1) and ``es`` (length n, entries +-1).  Equality in G is
decided by Britton reduction to the identity, never by a canonical form.

Pinches:

* ``t^-1 a^m t  ->  b^m``
* ``t b^k t^-1  ->  a^k``
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Iterable, Iterator, overload

from .bs12 import (
    IDENTITY,
    ZERO,
    Dyadic,
    HElement,
    get_bit_cap,
    h_inv,
    h_is_identity,
    h_mul,
    in_A,
    in_B,
)
from .errors import ResourceLimit


@dataclass(frozen=True, slots=True)
class GWord:
    hs: tuple[HElement, ...] = (IDENTITY,)
    es: tuple[int, ...] = ()
    reduced: bool = field(default=False, compare=False)

    def __post_init__(self):
        if len(self.hs) != len(self.es) + 1:
            raise ValueError("a GWord needs exactly one more H-element than t-syllables")

    # -- construction -----------------------------------------------------

    @classmethod
    def identity(cls) -> GWord:
        return _IDENTITY_WORD

    @classmethod
    def from_h(cls, h: HElement) -> GWord:
        return cls((h,), (), True)

    @classmethod
    def t(cls, power: int = 1) -> GWord:
        """``t^power`` as a reduced word."""
        _check_syllables(abs(power))
        e = 1 if power > 0 else -1
        n = abs(power)
        return cls((IDENTITY,) * (n + 1), (e,) * n, True)

    @classmethod
    def from_syllables(
        cls, head: HElement, tail: Iterable[tuple[int, HElement]]
    ) -> GWord:
        hs = [head]
        es = []
        for e, h in tail:
            if e not in (1, -1):
                raise ValueError(f"t-exponents must be +1 or -1, got {e}")
            es.append(e)
            hs.append(h)
        return cls(tuple(hs), tuple(es))

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[str, int]]) -> GWord:
        """Build the syllable product of ``(letter, power)`` terms over ``a, b, t``.

        Adjacent H-letters are multiplied out; no pinches are applied.
        """
        hs = [IDENTITY]
        es: list[int] = []
        for letter, p in terms:
            if letter == "a":
                hs[-1] = h_mul(hs[-1], HElement(Dyadic.make(p), 0))
            elif letter == "b":
                hs[-1] = h_mul(hs[-1], HElement(ZERO, p))
            elif letter == "t":
                _check_syllables(len(es) + abs(p))
                e = 1 if p > 0 else -1
                for _ in range(abs(p)):
                    es.append(e)
                    hs.append(IDENTITY)
            else:
                raise ValueError(f"unknown letter {letter!r}")
        return cls(tuple(hs), tuple(es))

    # -- views -------------------------------------------------------------

    @property
    def head(self) -> HElement:
        return self.hs[0]

    @property
    def tail(self) -> tuple[tuple[int, HElement], ...]:
        return tuple(zip(self.es, self.hs[1:]))

    def __len__(self) -> int:
        return len(self.es)

    def t_exponent_sum(self) -> int:
        return sum(self.es)

    def __mul__(self, other: GWord) -> GWord:
        return g_mul(self, other)

    def __invert__(self) -> GWord:
        return g_inv(self)

    def __str__(self) -> str:
        from .words import format_word

        return format_word(self)


_IDENTITY_WORD = GWord((IDENTITY,), (), True)


def _check_syllables(n: int) -> None:
    if n > get_bit_cap():
        raise ResourceLimit(f"word would have {n} t-syllables, cap is {get_bit_cap()}")


def _pinch(left: int, x: HElement, right: int) -> HElement | None:
    """Image of ``t^left x t^right`` in H if it is a pinch, else ``None``."""
    if left == -1 and right == 1 and in_A(x):
        return HElement(ZERO, x.q.num)
    if left == 1 and right == -1 and in_B(x):
        return HElement(Dyadic.make(x.k), 0)
    return None


def _stack_pass(hs: Sequence[HElement], es: Sequence[int]) -> tuple[list, list]:
    out_h = [hs[0]]
    out_e: list[int] = []
    for e, h in zip(es, hs[1:]):
        if out_e and out_e[-1] == -e:
            y = _pinch(out_e[-1], out_h[-1], e)
            if y is not None:
                out_e.pop()
                out_h.pop()
                out_h[-1] = h_mul(h_mul(out_h[-1], y), h)
                continue
        out_e.append(e)
        out_h.append(h)
    return out_h, out_e


def britton_reduce(w: GWord) -> GWord:
    """Remove pinches until none is left (stack strategy)."""
    if w.reduced:
        return w
    hs, es = list(w.hs), list(w.es)
    while True:
        hs, es = _stack_pass(hs, es)
        if _first_pinch(hs, es) is None:
            return GWord(tuple(hs), tuple(es), True)


def _first_pinch(hs: Sequence[HElement], es: Sequence[int]) -> int | None:
    for i in range(1, len(es)):
        if es[i - 1] == -es[i] and _pinch(es[i - 1], hs[i], es[i]) is not None:
            return i
    return None


def leftmost_reduce(w: GWord) -> GWord:
    """Reference reducer: rewrite the leftmost pinch, rescan from the start.

    Quadratic; kept as an independent check of :func:`britton_reduce`.
    """
    hs, es = list(w.hs), list(w.es)
    while (i := _first_pinch(hs, es)) is not None:
        y = _pinch(es[i - 1], hs[i], es[i])
        merged = h_mul(h_mul(hs[i - 1], y), hs[i + 1])
        hs[i - 1 : i + 2] = [merged]
        del es[i - 1 : i + 1]
    return GWord(tuple(hs), tuple(es), True)


def is_reduced(w: GWord) -> bool:
    return _first_pinch(w.hs, w.es) is None


def is_cyclically_reduced(w: GWord) -> bool:
    if not is_reduced(w):
        return False
    n = len(w.es)
    if n < 2:
        return True
    wrap = h_mul(w.hs[-1], w.hs[0])
    return w.es[-1] != -w.es[0] or _pinch(w.es[-1], wrap, w.es[0]) is None


def t_length(w: GWord) -> int:
    return len(w.es)


def g_mul(w1: GWord, w2: GWord) -> GWord:
    if not (w1.reduced and w2.reduced):
        return britton_reduce(GWord(w1.hs[:-1] + (h_mul(w1.hs[-1], w2.hs[0]),) + w2.hs[1:], w1.es + w2.es))
    # both factors reduced: only the junction can pinch, cascading outwards
    mid = h_mul(w1.hs[-1], w2.hs[0])
    i, j = len(w1.es), 0
    while i and j < len(w2.es) and w1.es[i - 1] == -w2.es[j]:
        y = _pinch(w1.es[i - 1], mid, w2.es[j])
        if y is None:
            break
        mid = h_mul(h_mul(w1.hs[i - 1], y), w2.hs[j + 1])
        i -= 1
        j += 1
    return GWord(w1.hs[:i] + (mid,) + w2.hs[j + 1 :], w1.es[:i] + w2.es[j:], True)


def g_inv(w: GWord) -> GWord:
    inv = GWord(
        tuple(h_inv(h) for h in reversed(w.hs)),
        tuple(-e for e in reversed(w.es)),
        w.reduced,
    )
    return britton_reduce(inv)


def h_word(h: HElement) -> GWord:
    return GWord.from_h(h)


def cyclic_reduce(w: GWord) -> tuple[GWord, GWord]:
    """Return ``(core, c)`` with core cyclically reduced and ``w = c^-1 core c``."""
    core = britton_reduce(w)
    conj = GWord.identity()
    while not is_cyclically_reduced(core):
        # conjugate the head to the back, then peel the pinching end syllable
        g = GWord.from_h(h_inv(core.hs[0]))
        core = g_mul(g_mul(g, core), g_inv(g))
        conj = g_mul(g, conj)
        if is_cyclically_reduced(core):
            break
        g = GWord.t(-core.es[0])
        core = g_mul(g_mul(g, core), g_inv(g))
        conj = g_mul(g, conj)
    return core, conj


class Rotations(Sequence):
    """The cyclic syllable rotations of a cyclically reduced word, built on demand.

    Rotation ``j`` reads the cyclic word ``(hn h0) t^e1 h1 ... h(n-1) t^en``
    starting from its ``j``-th H-element and ends in a trailing identity.  For a
    word whose trailing element is already the identity, rotation 0 is the word
    itself.
    """

    def __init__(self, w: GWord):
        hs = (h_mul(w.hs[-1], w.hs[0]),) + w.hs[1:-1]
        self._hs2 = hs + hs
        self._es2 = w.es + w.es
        self._n = len(w.es)

    def __len__(self) -> int:
        return self._n

    @overload
    def __getitem__(self, j: int) -> GWord: ...
    @overload
    def __getitem__(self, j: slice) -> list[GWord]: ...

    def __getitem__(self, j):
        if isinstance(j, slice):
            return [self[i] for i in range(*j.indices(len(self)))]
        n = len(self)
        if not -n <= j < n:
            raise IndexError(j)
        j %= n
        return GWord(self._hs2[j : j + n] + (IDENTITY,), self._es2[j : j + n], True)

    def __iter__(self) -> Iterator[GWord]:
        return (self[j] for j in range(len(self)))


def cyclic_permutations(w: GWord) -> Rotations:
    if not w.es:
        raise ValueError("cyclic permutations need t-length >= 1")
    if not is_cyclically_reduced(w):
        raise ValueError("word is not cyclically reduced")
    return Rotations(w)


def element_of_H(w: GWord) -> HElement | None:
    r = britton_reduce(w)
    return r.hs[0] if not r.es else None


def is_identity_in_G(w: GWord) -> bool:
    r = britton_reduce(w)
    return not r.es and h_is_identity(r.hs[0])


def equal_in_G(w1: GWord, w2: GWord) -> bool:
    return is_identity_in_G(g_mul(w1, g_inv(w2)))


def star_check(n: int, y: HElement, x: HElement) -> bool:
    """Whether ``t^n y t^-n = x`` holds in G (expected only for ``x = y = 1``)."""
    if n < 2:
        raise ValueError("star_check needs n >= 2")
    w = GWord.t(n) * GWord.from_h(y) * GWord.t(-n) * GWord.from_h(h_inv(x))
    return is_identity_in_G(w)
