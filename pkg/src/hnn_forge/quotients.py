"""Homomorphisms of G and K into symmetric groups, enumerated exhaustively.

Permutations are tuples of images of ``0..n-1``.  Products act on the right,
``(p * q)(i) = q(p(i))``, so a word is evaluated left to right and
``conj(x, y) = y^-1 x y``.

Solutions of a relation set are invariant under simultaneous conjugation, so
the first generator only runs over conjugacy-class representatives; counts are
weighted by class size.
"""

from __future__ import annotations

import itertools
import logging
import math
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterator, Sequence

from .errors import DegreeMismatch, InvalidSpec, NotCertified, ResourceLimit, WordSyntaxError
from .relator import SpecLike, validate
from .words import tokenize

log = logging.getLogger(__name__)

Perm = tuple[int, ...]

DEFAULT_MAX_DEGREE = 7


def identity_perm(n: int) -> Perm:
    return tuple(range(n))


def compose(p: Perm, q: Perm) -> Perm:
    """``p`` then ``q``."""
    return tuple(q[i] for i in p)


def inverse(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i, x in enumerate(p):
        inv[x] = i
    return tuple(inv)


def conj(x: Perm, y: Perm) -> Perm:
    """``y^-1 x y``."""
    return compose(compose(inverse(y), x), y)


def cycles(p: Perm) -> list[tuple[int, ...]]:
    seen = [False] * len(p)
    out = []
    for start in range(len(p)):
        if seen[start]:
            continue
        cyc = []
        i = start
        while not seen[i]:
            seen[i] = True
            cyc.append(i)
            i = p[i]
        out.append(tuple(cyc))
    return out


def power(p: Perm, e: int) -> Perm:
    """``p^e`` with the exponent reduced modulo each cycle length."""
    out = list(range(len(p)))
    for cyc in cycles(p):
        L = len(cyc)
        s = e % L
        for idx, x in enumerate(cyc):
            out[x] = cyc[(idx + s) % L]
    return tuple(out)


def is_perm(p: Sequence[int]) -> bool:
    return sorted(p) == list(range(len(p)))


def _same_degree(*perms: Perm) -> int:
    n = len(perms[0])
    if any(len(p) != n for p in perms):
        raise DegreeMismatch(f"degrees differ: {[len(p) for p in perms]}")
    return n


def partitions(n: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of ``n`` in reverse lexicographic order."""
    if n == 0:
        yield ()
        return
    largest = n if largest is None else largest
    for first in range(min(n, largest), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def class_representatives(n: int) -> list[tuple[Perm, int]]:
    """One permutation per cycle type of S_n, with its class size."""
    out = []
    for shape in partitions(n):
        img = []
        start = 0
        for L in shape:
            img.extend(range(start + 1, start + L))
            img.append(start)
            start += L
        z = 1
        for L, m in Counter(shape).items():
            z *= L**m * math.factorial(m)
        out.append((tuple(img), math.factorial(n) // z))
    return out


def baumslag_relation_holds(alpha: Perm, tau: Perm) -> bool:
    """With ``beta = tau^-1 alpha tau``: ``beta^-1 alpha beta == alpha^2``."""
    _same_degree(alpha, tau)
    beta = conj(alpha, tau)
    return conj(alpha, beta) == compose(alpha, alpha)


def relator_image(alpha: Perm, tau: Perm, spec: SpecLike) -> Perm:
    """Image of ``r = b t^u1 a t^-u2 ...`` under ``a -> alpha, t -> tau``."""
    n = _same_degree(alpha, tau)
    u = validate(spec).u
    beta = conj(alpha, tau)
    out = identity_perm(n)
    for j in range(0, len(u), 2):
        out = compose(out, beta)
        out = compose(out, power(tau, u[j]))
        out = compose(out, alpha)
        out = compose(out, power(tau, -u[j + 1]))
    return out


@dataclass(frozen=True)
class SearchReport:
    degree: int
    pairs_checked: int
    g_hom_count: int
    g_all_alpha_trivial: bool
    k_hom_count: int | None = None
    elapsed: float = field(default=0.0, compare=False)

    def to_dict(self, timing: bool = False) -> dict:
        d = asdict(self)
        if not timing:
            del d["elapsed"]
        return d

    @classmethod
    def from_dict(cls, d: dict) -> SearchReport:
        return cls(**d)


def _check_degree(n: int, max_degree: int, force: bool) -> None:
    if n < 1:
        raise ValueError("degree must be at least 1")
    if n > max_degree and not force:
        raise ResourceLimit(f"degree {n} exceeds the maximum {max_degree}; pass force=True")


def _search_chunk(args) -> tuple[int, int, bool, int]:
    n, reps, u = args
    taus = list(itertools.permutations(range(n)))
    ident = identity_perm(n)
    pairs = g = k = 0
    alpha_trivial = True
    for alpha, size in reps:
        for tau in taus:
            pairs += 1
            if not baumslag_relation_holds(alpha, tau):
                continue
            g += size
            if alpha != ident:
                alpha_trivial = False
            if u is not None and relator_image(alpha, tau, u) == ident:
                k += size
    return pairs, g, alpha_trivial, k


def _search(n, u, max_degree, force, workers) -> SearchReport:
    _check_degree(n, max_degree, force)
    start = time.perf_counter()
    reps = class_representatives(n)
    jobs = [(n, reps[i::workers], u) for i in range(workers)] if workers > 1 else [(n, reps, u)]
    if len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_search_chunk, jobs))
    else:
        parts = [_search_chunk(jobs[0])]
    return SearchReport(
        degree=n,
        pairs_checked=sum(p[0] for p in parts),
        g_hom_count=sum(p[1] for p in parts),
        g_all_alpha_trivial=all(p[2] for p in parts),
        k_hom_count=None if u is None else sum(p[3] for p in parts),
        elapsed=time.perf_counter() - start,
    )


def search_homs_G(
    n: int, max_degree: int = DEFAULT_MAX_DEGREE, force: bool = False, workers: int = 1
) -> SearchReport:
    """Count homomorphisms ``<a, t | a^(a^t) = a^2> -> S_n``."""
    return _search(n, None, max_degree, force, workers)


def search_homs_K(
    n: int,
    spec: SpecLike,
    max_degree: int = DEFAULT_MAX_DEGREE,
    force: bool = False,
    workers: int = 1,
) -> SearchReport:
    """As :func:`search_homs_G`, also counting those that kill the relator."""
    report = validate(spec)
    if not report.valid:
        raise InvalidSpec(report)
    return _search(n, report.u, max_degree, force, workers)


def certified_order_bound(max_degree: int, reports: Sequence[SearchReport]) -> int:
    """Largest order ``N`` such that K has no non-trivial quotient of order <= N.

    A group of order m embeds in S_m, so trivial maps to every S_n with
    ``n <= max_degree`` rule out non-trivial quotients of order ``<= max_degree``.
    """
    by_degree = {r.degree: r for r in reports}
    for n in range(1, max_degree + 1):
        r = by_degree.get(n)
        if r is None:
            raise NotCertified(f"no search report for degree {n}")
        if r.k_hom_count != 1:
            raise NotCertified(f"degree {n}: {r.k_hom_count} homomorphisms, expected 1")
    return max_degree


# -- generic finite presentations -------------------------------------------


@dataclass(frozen=True)
class Presentation:
    gens: tuple[str, ...]
    relators: tuple[tuple[tuple[int, int], ...], ...]


HIGMAN_TEXT = """\
# Higman's group: a^b = a^2, b^c = b^2, c^d = c^2, d^a = d^2
gens: a b c d
rel: b^-1 a b = a^2
rel: c^-1 b c = b^2
rel: d^-1 c d = c^2
rel: a^-1 d a = d^2
"""


def parse_presentation(text: str) -> Presentation:
    """Parse ``gens: ...`` and ``rel: word`` / ``rel: lhs = rhs`` lines."""
    gens: tuple[str, ...] | None = None
    rels: list[tuple[tuple[int, int], ...]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, _, body = line.partition(":")
        key = key.strip()
        if key == "gens":
            gens = tuple(body.split())
            if not gens or any(len(g) != 1 or not g.isalpha() for g in gens):
                raise WordSyntaxError(f"line {lineno}: generators must be single letters")
            if len(set(gens)) != len(gens):
                raise WordSyntaxError(f"line {lineno}: repeated generator")
        elif key == "rel":
            if gens is None:
                raise WordSyntaxError(f"line {lineno}: 'rel' before 'gens'")
            lhs, eq, rhs = body.partition("=")
            terms = tokenize(lhs, gens)
            if eq:
                terms += [(x, -p) for x, p in reversed(tokenize(rhs, gens))]
            rels.append(tuple((gens.index(x), p) for x, p in terms))
        else:
            raise WordSyntaxError(f"line {lineno}: expected 'gens:' or 'rel:'")
    if gens is None:
        raise WordSyntaxError("presentation has no 'gens:' line")
    return Presentation(gens, tuple(rels))


def read_presentation(path: str | Path) -> Presentation:
    return parse_presentation(Path(path).read_text())


@dataclass(frozen=True)
class PresentationReport:
    degree: int
    nodes_checked: int
    hom_count: int
    only_trivial: bool
    elapsed: float = field(default=0.0, compare=False)

    def to_dict(self, timing: bool = False) -> dict:
        d = asdict(self)
        if not timing:
            del d["elapsed"]
        return d


def _eval_relator(rel, images, n) -> Perm:
    out = identity_perm(n)
    for g, p in rel:
        out = compose(out, power(images[g], p))
    return out


def search_homs_presentation(
    pres: Presentation, n: int, max_degree: int = DEFAULT_MAX_DEGREE, force: bool = False
) -> PresentationReport:
    """Count homomorphisms ``pres -> S_n`` by backtracking in generator order.

    Each relator is checked as soon as all its generators have images.
    """
    _check_degree(n, max_degree, force)
    start = time.perf_counter()
    ident = identity_perm(n)
    k = len(pres.gens)
    ready: list[list] = [[] for _ in range(k)]
    for rel in pres.relators:
        last = max((g for g, _ in rel), default=0)
        ready[last].append(rel)
    # relators on no generators only matter if non-trivial, which they cannot be
    all_perms = list(itertools.permutations(range(n)))
    nodes = homs = 0
    only_trivial = True
    images: list[Perm] = []

    def extend(depth: int, weight: int) -> None:
        nonlocal nodes, homs, only_trivial
        if depth == k:
            homs += weight
            if any(p != ident for p in images):
                only_trivial = False
            return
        candidates = class_representatives(n) if depth == 0 else ((p, 1) for p in all_perms)
        for p, size in candidates:
            nodes += 1
            images.append(p)
            if all(_eval_relator(rel, images, n) == ident for rel in ready[depth]):
                extend(depth + 1, weight * size)
            images.pop()

    if k:
        extend(0, 1)
    else:
        homs = 1
    return PresentationReport(n, nodes, homs, only_trivial, time.perf_counter() - start)
