"""The relator family ``r = b t^u1 a t^-u2 b t^u3 ... a t^-ul`` and its admissibility tests."""

from __future__ import annotations

import re
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Sequence, Union

from .errors import EmptySequence, InvalidSpec
from .hnn import GWord, britton_reduce

BlockSeq = tuple[tuple[int, str], ...]


@dataclass(frozen=True)
class RelatorSpec:
    """An exponent sequence ``(u1, ..., ul)``; not validated on construction."""

    u: tuple[int, ...]

    def __init__(self, u: Sequence[int]):
        object.__setattr__(self, "u", tuple(int(x) for x in u))

    def __len__(self) -> int:
        return len(self.u)

    def checked(self) -> RelatorSpec:
        report = validate(self)
        if not report.valid:
            raise InvalidSpec(report)
        return self


SpecLike = Union[RelatorSpec, Sequence[int]]


@dataclass(frozen=True)
class ConditionReport:
    u: tuple[int, ...]
    l_even: bool
    distinct: bool
    min_ok: bool
    alt_sum: int
    total: int
    max_window3: int
    sixth_ok: bool
    valid: bool

    def failure_reason(self) -> str | None:
        if not (self.l_even and self.distinct and self.min_ok):
            return "condition1"
        if self.alt_sum != 1:
            return "condition2"
        if not self.sixth_ok:
            return "condition3"
        return None

    def to_dict(self) -> dict:
        d = asdict(self)
        d["u"] = list(self.u)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> ConditionReport:
        return cls(**{**d, "u": tuple(d["u"])})


def _as_tuple(u: SpecLike) -> tuple[int, ...]:
    return u.u if isinstance(u, RelatorSpec) else tuple(int(x) for x in u)


def window3_sums(u: Sequence[int]) -> list[int]:
    """Cyclic sums ``u_i + u_(i+1) + u_(i+2)``, indices mod ``l``."""
    n = len(u)
    return [u[i] + u[(i + 1) % n] + u[(i + 2) % n] for i in range(n)]


def validate(u: SpecLike) -> ConditionReport:
    """Check every admissibility condition and report all of them."""
    u = _as_tuple(u)
    if not u:
        raise EmptySequence("empty exponent sequence")
    l_even = len(u) % 2 == 0
    distinct = len(set(u)) == len(u)
    min_ok = min(u) >= 2
    alt_sum = sum(x if i % 2 == 0 else -x for i, x in enumerate(u))
    total = sum(u)
    max_window3 = max(window3_sums(u))
    sixth_ok = 6 * max_window3 < total
    return ConditionReport(
        u=u,
        l_even=l_even,
        distinct=distinct,
        min_ok=min_ok,
        alt_sum=alt_sum,
        total=total,
        max_window3=max_window3,
        sixth_ok=sixth_ok,
        valid=l_even and distinct and min_ok and alt_sum == 1 and sixth_ok,
    )


def default_spec() -> RelatorSpec:
    """l = 20; u_(2i-1) = 100 + 2i - 1 (i < 10), u_19 = 130, u_(2i) = 100 + 2i."""
    u = [0] * 20
    for i in range(1, 10):
        u[2 * i - 2] = 100 + 2 * i - 1
    u[18] = 130
    for i in range(1, 11):
        u[2 * i - 1] = 100 + 2 * i
    return RelatorSpec(u)


def relator_terms(spec: SpecLike) -> list[tuple[str, int]]:
    u = _as_tuple(spec)
    terms = []
    for j in range(0, len(u), 2):
        terms += [("b", 1), ("t", u[j]), ("a", 1), ("t", -u[j + 1])]
    return terms


def build_relator(spec: SpecLike) -> GWord:
    if not isinstance(spec, RelatorSpec):
        spec = RelatorSpec(spec)
    spec.checked()
    return britton_reduce(GWord.from_terms(relator_terms(spec)))


def exponent_sequence(spec: SpecLike) -> BlockSeq:
    """Cyclic t-block sequence: ``(+u1, 'b'), (-u2, 'a'), (+u3, 'b'), ...``.

    Each letter is the H-letter immediately preceding its block.
    """
    u = _as_tuple(spec)
    return tuple(
        (x, "b") if i % 2 == 0 else (-x, "a") for i, x in enumerate(u)
    )


_SEP = re.compile(r"[,\s]+")


def parse_u_list(text: str) -> RelatorSpec:
    """Parse integers separated by commas/whitespace; ``#`` lines are comments."""
    values: list[int] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if line.lstrip().startswith("#"):
            continue
        for tok in _SEP.split(line.strip()):
            if not tok:
                continue
            try:
                values.append(int(tok))
            except ValueError:
                raise ValueError(f"line {lineno}: not an integer: {tok!r}") from None
    if not values:
        raise EmptySequence("u-list contains no integers")
    return RelatorSpec(values)


def read_u_list(path: str | Path) -> RelatorSpec:
    return parse_u_list(Path(path).read_text())
