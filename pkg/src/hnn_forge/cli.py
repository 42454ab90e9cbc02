"""Command-line interface.

Exit codes: 0 success/certified, 1 verification failure, 2 input or usage
error, 3 resource limit.  Reports go to stdout, progress and diagnostics to
stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import bs12
from .certify import SCHEMA, certify
from .errors import EmptySequence, InvalidSpec, ResourceLimit, WordSyntaxError
from .hnn import britton_reduce, t_length
from .quotients import (
    DEFAULT_MAX_DEGREE,
    HIGMAN_TEXT,
    parse_presentation,
    read_presentation,
    search_homs_G,
    search_homs_K,
    search_homs_presentation,
)
from .relator import default_spec, read_u_list, validate
from .small_cancellation import piece_bound
from .words import format_word, parse_word

log = logging.getLogger("hnn_forge")

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3


class InputError(Exception):
    pass


def _emit(obj: dict) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")


def _load_spec(args):
    if getattr(args, "default", False):
        if args.u_list:
            raise InputError("give either --default or a u-list file, not both")
        return default_spec()
    if not args.u_list:
        raise InputError("a u-list file or --default is required")
    try:
        return read_u_list(args.u_list)
    except OSError as exc:
        raise InputError(f"cannot read {args.u_list}: {exc.strerror}") from None
    except ValueError as exc:
        raise InputError(str(exc)) from None


def cmd_reduce(args) -> int:
    try:
        w = parse_word(args.word)
    except WordSyntaxError as exc:
        raise InputError(str(exc)) from None
    r = britton_reduce(w)
    text = format_word(r)
    if args.json:
        _emit({"schema": SCHEMA, "input": args.word, "reduced": text, "t_length": t_length(r)})
    else:
        print(text)
        print(f"t_length: {t_length(r)}")
    return EXIT_OK


def cmd_check_relator(args) -> int:
    spec = _load_spec(args)
    try:
        cond = validate(spec)
    except EmptySequence as exc:
        raise InputError(str(exc)) from None
    pieces = piece_bound(spec)
    ok = cond.valid and pieces.sixth_certified
    if args.json:
        _emit({"schema": SCHEMA, "conditions": cond.to_dict(), "pieces": pieces.to_dict(), "ok": ok})
    else:
        for key, value in cond.to_dict().items():
            if key != "u":
                print(f"{key}: {value}")
        print(f"6*max_window3: {6 * cond.max_window3} vs total {cond.total}")
        for key, value in pieces.to_dict().items():
            print(f"{key}: {value}")
        print("result: " + ("ok" if ok else f"rejected ({cond.failure_reason() or 'pieces'})"))
    return EXIT_OK if ok else EXIT_FAIL


def _warn_cost(n: int) -> None:
    # degree 7 takes about a second; each further degree multiplies by ~n * (classes ratio)
    est = 1.0
    for d in range(8, n + 1):
        est *= d * 1.5
    log.warning("degree %d requested; rough time estimate %.0f s per degree", n, est)


def cmd_search_quotients(args) -> int:
    if args.max_degree < 1:
        raise InputError("--max-degree must be at least 1")
    if args.max_degree > DEFAULT_MAX_DEGREE:
        if not args.force:
            raise ResourceLimit(
                f"--max-degree {args.max_degree} exceeds {DEFAULT_MAX_DEGREE}; pass --force"
            )
        _warn_cost(args.max_degree)
    group = args.group
    ok = True
    if group == "K":
        spec = _load_spec(args)
        report = validate(spec)
        if not report.valid:
            raise InputError(f"relator sequence rejected: {report.failure_reason()}")
    elif group == "G":
        if args.u_list or args.default:
            raise InputError("--group G takes no relator sequence")
    else:
        try:
            pres = parse_presentation(HIGMAN_TEXT) if group == "higman" else read_presentation(group)
        except OSError as exc:
            raise InputError(f"cannot read {group}: {exc.strerror}") from None
        except WordSyntaxError as exc:
            raise InputError(str(exc)) from None
    for n in range(1, args.max_degree + 1):
        log.info("degree %d", n)
        if group == "K":
            r = search_homs_K(n, spec, force=args.force, workers=args.workers)
            good = r.k_hom_count == 1 and r.g_all_alpha_trivial
        elif group == "G":
            r = search_homs_G(n, force=args.force, workers=args.workers)
            good = r.g_all_alpha_trivial
        else:
            r = search_homs_presentation(pres, n, force=args.force)
            good = r.only_trivial
        ok &= good
        d = r.to_dict(timing=args.timing)
        if args.json:
            _emit({"schema": SCHEMA, "group": group, **d, "ok": good})
        else:
            print(f"[{group}] " + " ".join(f"{k}={v}" for k, v in d.items()) + f" ok={good}")
        sys.stdout.flush()
    return EXIT_OK if ok else EXIT_FAIL


def cmd_certify(args) -> int:
    if args.max_degree < 1:
        raise InputError("--max-degree must be at least 1")
    spec = _load_spec(args)
    try:
        validate(spec)
    except EmptySequence as exc:
        raise InputError(str(exc)) from None
    try:
        report = certify(
            spec,
            max_degree=args.max_degree,
            seed=args.seed,
            force=args.force,
            workers=args.workers,
            prefix_sweep=args.prefix_sweep,
        )
        code = EXIT_OK if report.certified else EXIT_FAIL
    except ResourceLimit as exc:
        report = exc.report
        log.error("%s", exc)
        code = EXIT_RESOURCE
    text = report.to_json()
    if args.output:
        Path(args.output).write_text(text)
    sys.stdout.write(text)
    log.info("verdict: %s", report.verdict)
    return code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hnn-forge",
        description="Britton reduction in <a,t | a^(a^t) = a^2> and certification of the relator construction.",
    )
    parser.add_argument("-v", "--verbose", action="count", default=0, help="progress on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reduce", help="Britton-reduce a word over a, b, t")
    p.add_argument("word", help='word text, e.g. "t^-1 a t"')
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_reduce)

    def spec_args(p):
        p.add_argument("u_list", nargs="?", help="file of exponents u1..ul")
        p.add_argument("--default", action="store_true", help="use the built-in l = 20 sequence")

    p = sub.add_parser("check-relator", help="validate an exponent sequence")
    spec_args(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_check_relator)

    p = sub.add_parser("search-quotients", help="enumerate homomorphisms to S_n")
    p.add_argument("--max-degree", type=int, required=True)
    p.add_argument("--group", default="K", help="K, G, higman, or a presentation file")
    spec_args(p)
    p.add_argument("--force", action="store_true", help=f"allow degrees above {DEFAULT_MAX_DEGREE}")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--timing", action="store_true", help="include elapsed seconds")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_search_quotients)

    p = sub.add_parser("certify", help="run the full certification pipeline")
    spec_args(p)
    p.add_argument("--max-degree", type=int, default=6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--force", action="store_true")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--prefix-sweep", action="store_true", help="also run the conjugated-prefix sweep (slow)")
    p.add_argument("-o", "--output", help="also write the JSON report here")
    p.set_defaults(func=cmd_certify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    logging.basicConfig(
        level=logging.WARNING - 10 * min(args.verbose, 2),
        format="%(levelname)s %(message)s",
        stream=sys.stderr,
    )
    try:
        bs12.set_bit_cap(None)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if getattr(args, "workers", 1) < 1:
        print("error: --workers must be at least 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except (InputError, InvalidSpec) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ResourceLimit as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
