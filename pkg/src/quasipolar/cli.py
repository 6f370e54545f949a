"""Command-line front end.

    quasipolar classify --ring "Zmod 4" --element '*'
    quasipolar subsets "Mat 2 (Zmod 2)"
    quasipolar verify default all
    quasipolar dump "Zmod 6" --out z6.ring

Exit codes: 0 ok, 1 check failures, 2 usage or parse error, 3 feasibility.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import classification as cl
from .errors import (AxiomViolation, CharacteristicMismatch, FeasibilityExceeded,
                     ParseError, RingError, SemanticError)
from .expr import evaluate, parse_ring_expr
from .harness import default_corpus, resolve_ids, run_suite
from .ringfile import dumps
from .subsets import SetKind, cache_of

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_FEASIBILITY = 0, 1, 2, 3

SUBSET_ORDER = (SetKind.Q, SetKind.QN, SetKind.J, SetKind.NIL, SetKind.UNITS,
                SetKind.IDEMPOTENTS, SetKind.QNIL, SetKind.JSHARP)


class UsageError(Exception):
    pass


def parse_selector(text: str, order: int) -> list[int]:
    """``*``, an index, a range ``a-b`` (inclusive) or a comma list of those."""
    if text.strip() == "*":
        return list(range(order))
    out = []
    for part in text.split(","):
        part = part.strip()
        try:
            if "-" in part:
                lo, hi = (int(x) for x in part.split("-", 1))
                out.extend(range(lo, hi + 1))
            else:
                out.append(int(part))
        except ValueError:
            raise UsageError(f"bad element selector {text!r}") from None
    bad = [x for x in out if not 0 <= x < order]
    if bad:
        raise UsageError(f"element {bad[0]} out of range for order {order}")
    return out


def load_corpus(spec: str):
    if spec == "default":
        return default_corpus()
    exprs = []
    for line in Path(spec).read_text().splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            exprs.append(parse_ring_expr(line))
    return exprs


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_classify(ring_text: str, selector: str = "*") -> str:
    ring = evaluate(parse_ring_expr(ring_text))
    lines = []
    for a in parse_selector(selector, ring.order):
        for notion in cl.NOTIONS:
            if notion in cl.UNITAL_NOTIONS and not ring.has_unity:
                lines.append(f"{notion} {a} skip reason=no-unity")
                continue
            cert = cl.classify(ring, a, notion)
            if cert is None:
                lines.append(f"{notion} {a} fail")
            else:
                pay = " ".join(f"{k}={v}" for k, v in cert.payload().items())
                lines.append(f"{notion} {a} pass {pay}".rstrip())
    return "\n".join(lines) + "\n"


def cmd_subsets(ring_text: str) -> str:
    ring = evaluate(parse_ring_expr(ring_text))
    cache = cache_of(ring)
    lines = []
    for kind in SUBSET_ORDER:
        if kind.requires_unity and not ring.has_unity:
            lines.append(f"{kind.value}: n/a")
        else:
            idx = np.flatnonzero(cache.mask(kind)).tolist()
            lines.append(f"{kind.value}: [{','.join(map(str, idx))}]")
    return "\n".join(lines) + "\n"


def cmd_verify(corpus: str = "default", theorems: str = "all", jobs: int = 1):
    report = run_suite(load_corpus(corpus), resolve_ids(theorems), jobs=jobs)
    if report.failed:
        code = EXIT_FAIL
    elif report.infeasible:
        code = EXIT_FEASIBILITY
    else:
        code = EXIT_OK
    return report, code


def cmd_dump(ring_text: str) -> str:
    return dumps(evaluate(parse_ring_expr(ring_text)))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="quasipolar",
                                description="Finite general rings: classification and checks")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="classify elements under every notion")
    c.add_argument("ring_pos", nargs="?", metavar="RING")
    c.add_argument("element_pos", nargs="?", metavar="ELEMENT")
    c.add_argument("--ring")
    c.add_argument("--element")
    c.add_argument("--out")

    s = sub.add_parser("subsets", help="print the distinguished subsets")
    s.add_argument("ring_pos", nargs="?", metavar="RING")
    s.add_argument("--ring")
    s.add_argument("--out")

    v = sub.add_parser("verify", help="run the theorem checks over a corpus")
    v.add_argument("corpus_pos", nargs="?", metavar="CORPUS")
    v.add_argument("theorems_pos", nargs="?", metavar="THEOREMS")
    v.add_argument("--corpus")
    v.add_argument("--theorems")
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--out")

    d = sub.add_parser("dump", help="write a ring's Cayley tables")
    d.add_argument("ring_pos", nargs="?", metavar="RING")
    d.add_argument("out_pos", nargs="?", metavar="PATH")
    d.add_argument("--ring")
    d.add_argument("--out")
    return p


def _pick(flag, positional, what: str, default=None):
    value = flag if flag is not None else positional
    if value is None:
        value = default
    if value is None:
        raise UsageError(f"missing {what}")
    return value


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if args.command == "classify":
            text = cmd_classify(_pick(args.ring, args.ring_pos, "--ring"),
                                _pick(args.element, args.element_pos, "--element", "*"))
            _emit(text, args.out)
        elif args.command == "subsets":
            _emit(cmd_subsets(_pick(args.ring, args.ring_pos, "--ring")), args.out)
        elif args.command == "verify":
            report, code = cmd_verify(_pick(args.corpus, args.corpus_pos, "--corpus", "default"),
                                      _pick(args.theorems, args.theorems_pos, "--theorems", "all"),
                                      args.jobs)
            _emit(report.text(), args.out)
            if args.out:
                print(report.summary_line())
            return code
        else:
            _emit(cmd_dump(_pick(args.ring, args.ring_pos, "--ring")),
                  args.out if args.out is not None else args.out_pos)
    except FeasibilityExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FEASIBILITY
    except (ParseError, UsageError, SemanticError, AxiomViolation, CharacteristicMismatch,
            KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except RingError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
