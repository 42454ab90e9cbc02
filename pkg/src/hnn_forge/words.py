"""Text syntax for group words.

    word    := term { term }
    term    := letter [ "^" integer ]
    integer := ["-"] digit { digit }

Whitespace between terms is ignored.  The default alphabet is ``a b t``;
``1`` is accepted as an explicit identity term and is what the formatter
prints for the empty word.
"""

from __future__ import annotations

import re
from typing import TYPE_CHECKING, Iterable, Sequence

from .bs12 import HElement
from .errors import WordSyntaxError

if TYPE_CHECKING:
    from .hnn import GWord

HNN_LETTERS = ("a", "b", "t")

_TERM = re.compile(r"\s*(?:([A-Za-z])|(1))(?:\^(-?\d+))?")


def tokenize(text: str, letters: Sequence[str] = HNN_LETTERS) -> list[tuple[str, int]]:
    """Split word text into ``(letter, exponent)`` terms; zero exponents are dropped."""
    terms: list[tuple[str, int]] = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise WordSyntaxError(f"cannot parse {text!r} at position {pos}")
        letter, one, power = m.groups()
        if letter is not None and letter not in letters:
            raise WordSyntaxError(
                f"unknown letter {letter!r} at position {m.start(1)} (allowed: {' '.join(letters)})"
            )
        pos = m.end()
        if one is not None:
            continue
        p = 1 if power is None else int(power)
        if p:
            terms.append((letter, p))
    return terms


def parse_word(text: str) -> GWord:
    """Parse text over ``a, b, t`` into an (unreduced) :class:`GWord`."""
    from .hnn import GWord

    return GWord.from_terms(tokenize(text))


def _power(letter: str, p: int) -> str:
    return letter if p == 1 else f"{letter}^{p}"


def format_terms(terms: Iterable[tuple[str, int]]) -> str:
    out = " ".join(_power(x, p) for x, p in terms if p)
    return out or "1"


def h_terms(h: HElement) -> list[tuple[str, int]]:
    return h.as_word()


def word_terms(w: GWord) -> list[tuple[str, int]]:
    terms = list(h_terms(w.hs[0]))
    run = 0
    for e, h in zip(w.es, w.hs[1:]):
        if run and (run > 0) != (e > 0):
            terms.append(("t", run))
            run = 0
        run += e
        if h.q.num or h.k:
            terms.append(("t", run))
            run = 0
            terms.extend(h_terms(h))
    if run:
        terms.append(("t", run))
    return terms


def format_word(w: GWord) -> str:
    """Render ``w`` in the word grammar; parsing the result gives an equal word."""
    return format_terms(word_terms(w))
