"""End-to-end certification of the construction for one relator sequence."""

from __future__ import annotations

import json
import logging
import random
from dataclasses import asdict, dataclass, field

from .bs12 import IDENTITY, h_is_identity
from .errors import ResourceLimit
from .hnn import GWord, element_of_H, is_cyclically_reduced, star_check, t_length
from .quotients import SearchReport, certified_order_bound, search_homs_K
from .relator import ConditionReport, RelatorSpec, build_relator, validate
from .small_cancellation import PieceReport, h_ball, conjugate_prefix_check, piece_bound

log = logging.getLogger(__name__)

SCHEMA = "hnn-forge/1"

STAR_POWERS = (2, 3, 4)
STAR_BALL = (16, 3, 3)


@dataclass
class CertReport:
    seed: int
    max_degree: int
    spec_report: ConditionReport
    relator_tlength: int | None = None
    cyclically_reduced: bool | None = None
    t_exponent_sum: int | None = None
    piece_report: PieceReport | None = None
    star_samples: int = 0
    star_samples_passed: bool | None = None
    prefix_max_blocks: int | None = None
    quotient_reports: list[SearchReport] = field(default_factory=list)
    certified_order: int = 0
    verdict: str = "failed(incomplete)"
    schema: str = SCHEMA

    @property
    def certified(self) -> bool:
        return self.verdict == "certified"

    def to_dict(self) -> dict:
        d = asdict(self)
        d["spec_report"] = self.spec_report.to_dict()
        d["quotient_reports"] = [r.to_dict() for r in self.quotient_reports]
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> CertReport:
        d = dict(d)
        if d.get("schema") != SCHEMA:
            raise ValueError(f"unsupported report schema {d.get('schema')!r}")
        d["spec_report"] = ConditionReport.from_dict(d["spec_report"])
        if d.get("piece_report") is not None:
            d["piece_report"] = PieceReport.from_dict(d["piece_report"])
        d["quotient_reports"] = [SearchReport.from_dict(r) for r in d["quotient_reports"]]
        return cls(**d)

    @classmethod
    def from_json(cls, text: str) -> CertReport:
        return cls.from_dict(json.loads(text))


def star_sample(seed: int, powers=STAR_POWERS, ball=STAR_BALL) -> tuple[int, bool]:
    """Exhaustive check of ``t^n y t^-n = x  <=>  x = y = 1`` over a ball of ``y``.

    For each ``(n, y)`` the test uses ``x = 1``, ``x = y`` and one ``x`` drawn
    from the ball with the seeded generator.  Returns ``(checks, passed)``.
    """
    rng = random.Random(seed)
    elems = h_ball(*ball)
    checks = 0
    ok = True
    for n in powers:
        for y in elems:
            trivial = h_is_identity(y)
            conj = GWord.t(n) * GWord.from_h(y) * GWord.t(-n)
            in_h = element_of_H(conj) is not None
            checks += 1
            ok &= in_h == trivial
            for x in (IDENTITY, y, rng.choice(elems)):
                checks += 1
                ok &= star_check(n, y, x) == (trivial and h_is_identity(x))
    return checks, ok


def certify(
    spec: RelatorSpec,
    max_degree: int = 6,
    seed: int = 0,
    force: bool = False,
    workers: int = 1,
    prefix_sweep: bool = False,
) -> CertReport:
    """Run every check in order; stops at the first failure with a partial report."""
    report = CertReport(seed=seed, max_degree=max_degree, spec_report=validate(spec))
    report.piece_report = piece_bound(spec)
    reason = report.spec_report.failure_reason()
    if reason:
        report.verdict = f"failed({reason})"
        return report
    try:
        r = build_relator(spec)
        report.relator_tlength = t_length(r)
        report.cyclically_reduced = is_cyclically_reduced(r)
        report.t_exponent_sum = r.t_exponent_sum()
        if not report.cyclically_reduced:
            report.verdict = "failed(cyclically_reduced)"
            return report
        if report.t_exponent_sum != 1:
            report.verdict = "failed(t_exponent_sum)"
            return report
        if not (report.piece_report.sixth_certified and report.piece_report.max_run_blocks == 0):
            report.verdict = "failed(small_cancellation)"
            return report
        if prefix_sweep:
            log.info("checking common prefixes of conjugated shifts")
            res = conjugate_prefix_check(spec, workers=workers)
            report.prefix_max_blocks = res.max_prefix_blocks
            if not res.holds:
                report.verdict = "failed(prefix_sweep)"
                return report
        log.info("checking t^n y t^-n over the H-ball")
        report.star_samples, report.star_samples_passed = star_sample(seed)
        if not report.star_samples_passed:
            report.verdict = "failed(star)"
            return report
        for n in range(1, max_degree + 1):
            log.info("searching homomorphisms to S_%d", n)
            q = search_homs_K(n, spec, force=force, workers=workers)
            report.quotient_reports.append(q)
            if q.k_hom_count != 1 or not q.g_all_alpha_trivial:
                report.verdict = f"failed(quotient_degree_{n})"
                return report
            report.certified_order = n
    except ResourceLimit as exc:
        report.verdict = "failed(resource_limit)"
        exc.report = report
        raise
    report.certified_order = certified_order_bound(max_degree, report.quotient_reports)
    report.verdict = "certified"
    return report
