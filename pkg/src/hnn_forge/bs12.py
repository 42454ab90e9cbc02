"""Exact arithmetic in BS(1,2) = <a, b | b^-1 a b = a^2>.

Elements are pairs ``(q, k)`` with ``q`` a dyadic rational and ``k`` an
integer, acting on the line by ``x -> 2**-k * x + q``.  This affine action is
faithful, so equality of pairs decides equality in the group.  The product is

    (q1, k1) * (q2, k2) = (q1 + 2**-k1 * q2, k1 + k2)

which makes ``a = (1, 0)``, ``b = (0, 1)`` satisfy ``b^-1 a b = a^2``.
"""

from __future__ import annotations

import contextlib
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from .errors import ResourceLimit

DEFAULT_BIT_CAP = 1_000_000
_ENV_VAR = "HNN_FORGE_BIT_CAP"


def _cap_from_env() -> int:
    raw = os.environ.get(_ENV_VAR)
    if not raw:
        return DEFAULT_BIT_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"{_ENV_VAR} must be an integer, got {raw!r}") from None
    if cap < 1:
        raise ValueError(f"{_ENV_VAR} must be positive")
    return cap


_bit_cap = _cap_from_env()


def get_bit_cap() -> int:
    return _bit_cap


def set_bit_cap(cap: int | None = None) -> int:
    """Set the bit cap (``None`` re-reads the environment); returns the old one."""
    global _bit_cap
    old = _bit_cap
    if cap is None:
        cap = _cap_from_env()
    if cap < 1:
        raise ValueError("bit cap must be positive")
    _bit_cap = cap
    return old


@contextlib.contextmanager
def bit_cap(cap: int) -> Iterator[None]:
    old = set_bit_cap(cap)
    try:
        yield
    finally:
        set_bit_cap(old)


def _check_bits(bits: int, what: str) -> None:
    if bits > _bit_cap:
        raise ResourceLimit(f"{what} needs {bits} bits, cap is {_bit_cap}")


@dataclass(frozen=True, slots=True)
class Dyadic:
    """The rational ``num / 2**exp``, kept normalized (``exp == 0`` or ``num`` odd)."""

    num: int = 0
    exp: int = 0

    def __post_init__(self):
        if self.exp < 0:
            raise ValueError("exp must be non-negative; use Dyadic.make")
        if self.exp and not self.num & 1:
            raise ValueError("Dyadic is not normalized; use Dyadic.make")

    @classmethod
    def make(cls, num: int, exp: int = 0) -> Dyadic:
        """Normalize ``num / 2**exp`` for any integer ``exp``."""
        if num == 0:
            return ZERO
        if exp < 0:
            _check_bits(num.bit_length() - exp, "dyadic numerator")
            return cls(num << -exp, 0)
        tz = (num & -num).bit_length() - 1
        drop = min(tz, exp)
        num >>= drop
        exp -= drop
        _check_bits(max(num.bit_length(), exp), "dyadic value")
        return cls(num, exp)

    @classmethod
    def from_fraction(cls, value: Fraction | int) -> Dyadic:
        value = Fraction(value)
        den = value.denominator
        if den & (den - 1):
            raise ValueError(f"{value} is not a dyadic rational")
        return cls.make(value.numerator, den.bit_length() - 1)

    def to_fraction(self) -> Fraction:
        return Fraction(self.num, 1 << self.exp)

    def is_zero(self) -> bool:
        return self.num == 0

    def is_integer(self) -> bool:
        return self.exp == 0

    def __neg__(self) -> Dyadic:
        return Dyadic(-self.num, self.exp)

    def __add__(self, other: Dyadic) -> Dyadic:
        if other.num == 0:
            return self
        if self.num == 0:
            return other
        e = max(self.exp, other.exp)
        return Dyadic.make(
            (self.num << (e - self.exp)) + (other.num << (e - other.exp)), e
        )

    def __sub__(self, other: Dyadic) -> Dyadic:
        return self + (-other)

    def scale2(self, s: int) -> Dyadic:
        """Return ``self * 2**s``."""
        if self.num == 0 or s == 0:
            return self
        # bound the result size before allocating it
        if s > 0:
            _check_bits(self.num.bit_length() + s - self.exp, "dyadic numerator")
        else:
            _check_bits(self.exp - s, "dyadic denominator")
        return Dyadic.make(self.num, self.exp - s)

    def __str__(self) -> str:
        return f"{self.num}/2^{self.exp}"


ZERO = Dyadic(0, 0)
ONE = Dyadic(1, 0)


@dataclass(frozen=True, slots=True)
class HElement:
    """An element ``(q, k)`` of BS(1,2)."""

    q: Dyadic = ZERO
    k: int = 0

    @classmethod
    def of(cls, q: Fraction | int | Dyadic = 0, k: int = 0) -> HElement:
        if not isinstance(q, Dyadic):
            q = Dyadic.from_fraction(q)
        return cls(q, k)

    def __mul__(self, other: HElement) -> HElement:
        return h_mul(self, other)

    def __invert__(self) -> HElement:
        return h_inv(self)

    def __pow__(self, m: int) -> HElement:
        return h_pow(self, m)

    def __str__(self) -> str:
        return f"{self.q}|{self.k}"

    @classmethod
    def parse(cls, text: str) -> HElement:
        """Inverse of ``str``: ``"num/2^exp|k"``."""
        try:
            qpart, kpart = text.split("|")
            num, exp = qpart.split("/2^")
            return cls(Dyadic.make(int(num), int(exp)), int(kpart))
        except ValueError:
            raise ValueError(f"malformed HElement text {text!r}") from None

    def as_word(self) -> list[tuple[str, int]]:
        """Letter-power terms spelling this element: ``b^e a^m b^(k-e)``."""
        terms = [("b", self.q.exp), ("a", self.q.num), ("b", self.k - self.q.exp)]
        return [(x, p) for x, p in terms if p]


IDENTITY = HElement()
A_GEN = HElement(ONE, 0)
B_GEN = HElement(ZERO, 1)


def h_mul(g: HElement, h: HElement) -> HElement:
    q, k = g.q + h.q.scale2(-g.k), g.k + h.k
    return IDENTITY if k == 0 and q.num == 0 else HElement(q, k)


def h_inv(g: HElement) -> HElement:
    if g.k == 0 and g.q.num == 0:
        return IDENTITY
    return HElement(-g.q.scale2(g.k), -g.k)


def h_pow(g: HElement, m: int) -> HElement:
    if m < 0:
        g, m = h_inv(g), -m
    result = IDENTITY
    while m:
        if m & 1:
            result = h_mul(result, g)
        m >>= 1
        if m:
            g = h_mul(g, g)
    return result


def in_A(g: HElement) -> bool:
    return g.k == 0 and g.q.exp == 0


def in_B(g: HElement) -> bool:
    return g.q.num == 0


def a_exponent(g: HElement) -> int:
    """The ``m`` with ``g = a^m``; ``g`` must lie in A."""
    if not in_A(g):
        raise ValueError(f"{g} is not in <a>")
    return g.q.num


def b_exponent(g: HElement) -> int:
    """The ``k`` with ``g = b^k``; ``g`` must lie in B."""
    if not in_B(g):
        raise ValueError(f"{g} is not in <b>")
    return g.k


def h_is_identity(g: HElement) -> bool:
    return g.q.num == 0 and g.k == 0


_LETTERS = {
    "a": A_GEN,
    "A": h_inv(A_GEN),
    "b": B_GEN,
    "B": h_inv(B_GEN),
}


def h_eval_word(letters: Iterable[str] | str) -> HElement:
    """Evaluate a word over ``a, A, b, B`` (capitals are inverses), left to right.

    Items may also be ``"a^-1"``/``"b^-1"`` style strings.
    """
    result = IDENTITY
    for x in letters:
        if x.endswith("^-1"):
            x = x[0].upper() if x[0] in "ab" else x
        try:
            g = _LETTERS[x]
        except KeyError:
            raise ValueError(f"not a letter of H: {x!r}") from None
        result = h_mul(result, g)
    return result
