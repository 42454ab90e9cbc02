"""Piece analysis for the symmetrized relator set and the C'(1/6) certificate.

Conjugates of ``r`` by elements of H form an infinite set, so pieces are not
enumerated.  Instead the certificate combines two finite facts:

* no t-block pattern of ``r`` or ``r^-1`` recurs at a different cyclic position
  (``max_common_run == 0``, a consequence of the exponents being distinct), and
* the longest common prefix of two distinct conjugates spans at most three
  t-blocks, whose t-length is at most the largest cyclic 3-window of ``u``.

The second fact is checked over a finite ball of conjugators by
:func:`conjugate_prefix_check`; it is a falsification harness, not a proof.
"""

from __future__ import annotations

import functools
import itertools
import logging
import operator
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Iterable, Sequence

from .bs12 import IDENTITY, Dyadic, HElement, h_inv, h_is_identity
from .hnn import GWord, Rotations, cyclic_permutations, equal_in_G, g_inv, g_mul
from .relator import BlockSeq, RelatorSpec, SpecLike, build_relator, exponent_sequence, validate

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class PieceReport:
    max_run_blocks: int
    max_piece_tlen: int
    total_tlen: int
    sixth_certified: bool

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> PieceReport:
        return cls(**d)


def inverse_block_seq(s: BlockSeq) -> BlockSeq:
    """Block sequence of the inverse word.

    Reverses the cyclic order and negates magnitudes; the letter that followed
    a block now precedes it.  Letters are not marked as inverted.
    """
    n = len(s)
    return tuple((-s[n - 1 - j][0], s[(n - j) % n][1]) for j in range(n))


def max_common_run(s1: BlockSeq, s2: BlockSeq) -> int:
    """Longest run of equal blocks over all cyclic alignments of ``s1`` and ``s2``.

    When ``s1 == s2`` the trivial alignment (shift 0) is skipped.
    """
    n1, n2 = len(s1), len(s2)
    if not n1 or not n2:
        return 0
    same = tuple(s1) == tuple(s2)
    cap = min(n1, n2)
    best = 0
    for i in range(n1):
        for j in range(n2):
            if same and i == j:
                continue
            k = 0
            while k < cap and s1[(i + k) % n1] == s2[(j + k) % n2]:
                k += 1
            best = max(best, k)
    return best


def piece_bound(spec: SpecLike) -> PieceReport:
    report = validate(spec)
    s = exponent_sequence(report.u)
    run = max(max_common_run(s, s), max_common_run(s, inverse_block_seq(s)))
    return PieceReport(
        max_run_blocks=run,
        max_piece_tlen=report.max_window3,
        total_tlen=report.total,
        sixth_certified=6 * report.max_window3 < report.total,
    )


def h_conjugate(w: GWord, h: HElement) -> GWord:
    """Reduced form of ``h^-1 w h``; ``w`` is assumed cyclically reduced."""
    return g_mul(g_mul(GWord.from_h(h_inv(h)), w), GWord.from_h(h))


def collins_verify(w: GWord, w_prime: GWord, h: HElement) -> bool:
    """Whether ``w' = h^-1 w* h`` in G for some cyclic permutation ``w*`` of ``w``."""
    # reduced forms of equal elements share their t-exponent sequence
    for rot in cyclic_permutations(w):
        if rot.es == w_prime.es and equal_in_G(w_prime, h_conjugate(rot, h)):
            return True
    return False


def _block_end(w: GWord, i: int) -> int:
    """End (exclusive) of the t-block starting at syllable ``i``."""
    es, hs = w.es, w.hs
    try:
        stop = es.index(-es[i], i + 1)
    except ValueError:
        stop = len(es)
    # identities are normally the shared IDENTITY object: find the first other
    # object at C speed, then confirm by value
    flags = list(map(operator.is_not, hs[i + 1 : stop], itertools.repeat(IDENTITY)))
    try:
        j = i + 1 + flags.index(True)
    except ValueError:
        return stop
    while j < stop and h_is_identity(hs[j]):
        j += 1
    return j


def first_block(w: GWord) -> int:
    """Signed length of the first t-block (0 for t-length 0)."""
    if not w.es:
        return 0
    return w.es[0] * _block_end(w, 0)


def common_prefix_blocks(w1: GWord, w2: GWord) -> int:
    """Number of whole t-blocks in the longest common left factor of two reduced words."""
    if w1.hs[0] != w2.hs[0]:
        return 0
    n = min(len(w1.es), len(w2.es))
    count = 0
    i = 0
    while i < n:
        if w1.es[i] != w2.es[i]:
            break
        j = _block_end(w1, i)
        if j != _block_end(w2, i):
            break
        count += 1
        if j >= n or w1.hs[j] != w2.hs[j]:
            break
        i = j
    return count


def h_ball(m_max: int, e_max: int, k_max: int) -> list[HElement]:
    """Distinct elements ``(m / 2^e, k)`` with ``|m| <= m_max``, ``0 <= e <= e_max``, ``|k| <= k_max``."""
    seen = {
        HElement(Dyadic.make(m, e), k)
        for m in range(-m_max, m_max + 1)
        for e in range(e_max + 1)
        for k in range(-k_max, k_max + 1)
    }
    return sorted(seen, key=lambda g: (g.q.to_fraction(), g.k))


@dataclass
class PrefixCheckResult:
    shifts: int
    conjugators: int
    conjugates_checked: int
    prefix_comparisons: int
    max_prefix_blocks: int
    counterexamples: list[tuple[int, str, int, int]] = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return not self.counterexamples


def relator_shifts(spec: SpecLike) -> list[Rotations]:
    """Cyclic shifts of ``r`` and of ``r^-1``, as two lazy rotation sequences."""
    r = build_relator(spec)
    return [cyclic_permutations(r), cyclic_permutations(g_inv(r))]


def _shift(rots: Sequence[Rotations], idx: int) -> GWord:
    n0 = len(rots[0])
    return rots[0][idx] if idx < n0 else rots[1][idx - n0]


def _index_by_first_block(rots: Sequence[Rotations]) -> dict:
    index: dict = defaultdict(list)
    total = sum(len(r) for r in rots)
    for idx in range(total):
        w = _shift(rots, idx)
        index[(w.hs[0], first_block(w))].append(idx)
    return index


@functools.lru_cache(maxsize=4)
def _shift_index(u: tuple[int, ...]):
    rots = relator_shifts(RelatorSpec(u))
    return rots, _index_by_first_block(rots)


def _prefix_chunk(args) -> tuple[int, int, int, list]:
    u, ball, lo, hi, bound = args
    rots, index = _shift_index(u)
    checked = comparisons = best = 0
    bad = []
    for i1 in range(lo, hi):
        s1 = _shift(rots, i1)
        for h in ball:
            c = h_conjugate(s1, h)
            checked += 1
            for i2 in index.get((c.hs[0], first_block(c)), ()):
                if i2 == i1 and h_is_identity(h):
                    continue
                comparisons += 1
                k = common_prefix_blocks(c, _shift(rots, i2))
                best = max(best, k)
                if k > bound:
                    bad.append((i1, str(h), i2, k))
    return checked, comparisons, best, bad


def conjugate_prefix_check(
    spec: SpecLike,
    ball: Iterable[HElement] | None = None,
    bound: int = 3,
    workers: int = 1,
    chunks: int = 16,
) -> PrefixCheckResult:
    """Check ``common_prefix_blocks(h^-1 s1 h, s2) <= bound`` for all shifts and ``h`` in the ball.

    ``s1, s2`` range over cyclic shifts of ``r`` and ``r^-1``; the pair
    ``s1 == s2, h == 1`` is skipped.  Pairs whose heads or first blocks differ
    share no whole block, so only index hits are compared.  The result does
    not depend on ``workers``.
    """
    u = RelatorSpec(spec).u if not isinstance(spec, RelatorSpec) else spec.u
    ball = list(h_ball(8, 2, 2) if ball is None else ball)
    total = sum(len(r) for r in _shift_index(u)[0])
    step = -(-total // chunks)
    jobs = [(u, ball, lo, min(lo + step, total), bound) for lo in range(0, total, step)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_prefix_chunk, jobs))
    else:
        parts = []
        for n, job in enumerate(jobs, 1):
            parts.append(_prefix_chunk(job))
            log.info("prefix-sweep chunk %d/%d done", n, len(jobs))
    bad = sorted(itertools.chain.from_iterable(p[3] for p in parts))
    return PrefixCheckResult(
        shifts=total,
        conjugators=len(ball),
        conjugates_checked=sum(p[0] for p in parts),
        prefix_comparisons=sum(p[1] for p in parts),
        max_prefix_blocks=max((p[2] for p in parts), default=0),
        counterexamples=bad,
    )
