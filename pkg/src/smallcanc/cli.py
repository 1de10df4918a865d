"""Command line front end.

Exit codes: 0 pass or trivial, 1 fail or nontrivial, 2 input or usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .errors import LengthCapExceeded, SmallCancellationError, WordSyntaxError
from .families import DEFAULT_LENGTH_CAP, build_calR_n, family_letters
from .presentation import Presentation, build_group_for_theorem
from .words import Word, format_word, parse

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _emit(payload: dict, out: str | None) -> None:
    text = json.dumps(payload, indent=2)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def _load(path: str) -> Presentation:
    raw = Path(path).read_text()
    if raw.lstrip().startswith("<"):
        return Presentation.from_text(raw)
    return Presentation.from_json(raw)


def cmd_build(args) -> int:
    if args.p < 6:
        print("error: p must be at least 6", file=sys.stderr)
        return EXIT_USAGE
    try:
        P = build_group_for_theorem(args.n, args.p, length_cap=args.length_cap)
    except LengthCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = P.to_json()
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    longest = max((len(r) for r in P.relators), default=0)
    print(f"p'={P.p} relators={len(P.relators)} max_length={longest}", file=sys.stderr)
    return EXIT_OK


def cmd_rn(args) -> int:
    try:
        pairs = build_calR_n(Word("x"), Word("y"), args.n, length_cap=args.length_cap)
    except LengthCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    lines = "".join(json.dumps([format_word(u), format_word(v)]) + "\n" for u, v in pairs)
    if args.out:
        Path(args.out).write_text(lines)
    else:
        sys.stdout.write(lines)
    print(f"pairs={len(pairs)} letters={family_letters(pairs)}", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    from .verify.pieces import verify_Cprime

    P = _load(args.file)
    p = args.p if args.p is not None else P.p
    verdict = verify_Cprime(P, p, uniform=args.uniform, inverses=not args.no_inverses)
    _emit(verdict.to_dict(), args.out)
    return EXIT_OK if verdict.ok else EXIT_FAIL


def cmd_pieces(args) -> int:
    from .verify.pieces import enumerate_pieces

    P = _load(args.file)
    reports = enumerate_pieces(P, inverses=not args.no_inverses, min_length=args.min_length)
    rows = []
    for r in reports[: args.limit]:
        row = r.to_dict()
        row["occurrences"] = [list(o) for o in r.occurrences]
        rows.append(row)
    _emit({"piece_count": len(reports), "pieces": rows}, args.out)
    return EXIT_OK


def cmd_dehn(args) -> int:
    from .verify.dehn import dehn_reduce

    word = parse(args.word)
    P = _load(args.file)
    trace = dehn_reduce(word, P)
    _emit(trace.to_dict(), args.out)
    return EXIT_OK if trace.trivial else EXIT_FAIL


def cmd_certify(args) -> int:
    from .verify.certify import CertificationError, certify_positive_relator

    P = _load(args.file)
    indices = [args.index] if args.index is not None else range(len(P.relators))
    results, ok = [], True
    for i in indices:
        try:
            chain = certify_positive_relator(P, i)
            results.append({"relator": i, "ok": True, "factors": len(chain.witness)})
        except CertificationError as exc:
            ok = False
            results.append({"relator": i, "ok": False, "stage": exc.stage, "error": str(exc)})
    _emit({"certified": ok, "relators": results}, args.out)
    return EXIT_OK if ok else EXIT_FAIL


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="smallcanc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    b = sub.add_parser("build", help="build the presentation for level n")
    b.add_argument("-n", type=_positive, required=True)
    b.add_argument("-p", type=int, default=6)
    b.add_argument("-o", "--out")
    b.add_argument("--length-cap", type=_positive, default=DEFAULT_LENGTH_CAP)
    b.set_defaults(func=cmd_build)

    r = sub.add_parser("rn", help="write the level-n pair family as JSON lines")
    r.add_argument("-n", type=_positive, required=True)
    r.add_argument("-o", "--out")
    r.add_argument("--length-cap", type=_positive, default=DEFAULT_LENGTH_CAP)
    r.set_defaults(func=cmd_rn)

    v = sub.add_parser("verify", help="check C'(1/p) for a presentation file")
    v.add_argument("file")
    v.add_argument("-p", type=Fraction, default=None)
    v.add_argument("--uniform", action="store_true")
    v.add_argument("--no-inverses", action="store_true")
    v.add_argument("-o", "--out")
    v.set_defaults(func=cmd_verify)

    pc = sub.add_parser("pieces", help="list maximal pieces")
    pc.add_argument("file")
    pc.add_argument("--no-inverses", action="store_true")
    pc.add_argument("--min-length", type=_positive, default=1)
    pc.add_argument("--limit", type=_positive, default=50)
    pc.add_argument("-o", "--out")
    pc.set_defaults(func=cmd_pieces)

    d = sub.add_parser("dehn", help="run Dehn's algorithm on a word")
    d.add_argument("file")
    d.add_argument("-w", "--word", required=True)
    d.add_argument("-o", "--out")
    d.set_defaults(func=cmd_dehn)

    c = sub.add_parser("certify", help="re-derive relators from their source pairs")
    c.add_argument("file")
    c.add_argument("-i", "--index", type=int)
    c.add_argument("-o", "--out")
    c.set_defaults(func=cmd_certify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ValueError, KeyError, WordSyntaxError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SmallCancellationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
