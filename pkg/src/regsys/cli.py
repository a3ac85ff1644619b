"""Command-line front end.

Exit codes: 0 success (or "equivalent"), 1 "not equivalent", 2 bad input,
3 modulus not squarefree.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import __version__
from .canonical import canonical_decomposition, single_input_canonical
from .equivalence import feedback_equivalent, reachable_equivalent
from .io import DocumentError, SystemDocument, dumps, load_example, loads, transform_dict
from .matrix import DimensionError, smith_form
from .ring import ContextMismatchError, NotSquarefreeError
from .system import apply_feedback, is_reachable, nk_invariant_factors, random_feedback

EXIT_OK, EXIT_DIFFERENT, EXIT_INPUT, EXIT_MODULUS = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _read(path: str | None) -> SystemDocument:
    if path in (None, "-"):
        text = sys.stdin.read()
    else:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise DocumentError(f"cannot read {path}: {exc.strerror}") from None
    return loads(text)


def _color_enabled() -> bool:
    flag = os.environ.get("REGSYS_COLOR")
    if flag is not None:
        return flag == "1"
    return sys.stdout.isatty()


def _render_rows(rows, width):
    return ["  " + " ".join(str(x).rjust(width) for x in r) for r in rows]


def render_pretty(report) -> str:
    color = _color_enabled()

    def head(text):
        return f"\033[1;36m{text}\033[0m" if color else text

    mod = report["modulus"]
    width = len(str(mod - 1))
    lines = [head(f"Z/{mod}: {len(report['components'])} component(s)")]
    for comp in report["components"]:
        idx = comp["kronecker_indices"]
        lines.append("")
        lines.append(head(f"e = {comp['idempotent']}   indices = {tuple(idx)}"))
        if idx:
            lines.append("  [A_hat | B_hat]")
            a, b = comp["A_hat"], comp["B_hat"]
            off = 0
            for c, k in enumerate(idx):
                if c:
                    lines.append("  " + "-" * ((width + 1) * (len(a) + len(b[0]) + 1)))
                for r in range(off, off + k):
                    left = " ".join(str(x).rjust(width) for x in a[r])
                    right = " ".join(str(x).rjust(width) for x in b[r])
                    lines.append(f"  {left} | {right}")
                off += k
        if comp["C_hat"]:
            lines.append("  C_hat")
            lines.extend(_render_rows(comp["C_hat"], width))
    return "\n".join(lines) + "\n"


def canonical_report(doc: SystemDocument):
    dec = canonical_decomposition(doc.system())
    return {
        "tool": "regsys",
        "version": __version__,
        "input": doc.to_dict(),
        "modulus": doc.modulus,
        "components": [
            {
                "idempotent": c.e.value,
                "kronecker_indices": list(c.kronecker_indices),
                "A_hat": c.A_hat.tolist(),
                "B_hat": c.B_hat.tolist(),
                "C_hat": c.C_hat.tolist(),
            }
            for c in dec.components
        ],
    }


def cmd_canonical(args):
    if args.example:
        if args.path is not None:
            raise UsageError("give either a path or --example, not both")
        doc = load_example(args.example)
    else:
        doc = _read(args.path)
    report = canonical_report(doc)
    sys.stdout.write(render_pretty(report) if args.pretty else dumps(report))
    return EXIT_OK


def cmd_equiv(args):
    d1, d2 = _read(args.first), _read(args.second)
    s1, s2 = d1.system(), d2.system()
    if args.method == "nk":
        if not (is_reachable(s1) and is_reachable(s2)):
            raise UsageError("--method=nk needs two reachable systems")
        if args.witness:
            raise UsageError("--witness is only available with --method=canonical")
        same = reachable_equivalent(s1, s2)
        out = {"equivalent": same, "method": "nk_factors"}
    else:
        out = feedback_equivalent(s1, s2, witness=args.witness).as_dict()
    sys.stdout.write(dumps(out))
    return EXIT_OK if out["equivalent"] else EXIT_DIFFERENT


def cmd_invariants(args):
    doc = _read(args.path)
    s = doc.system()
    out = {
        "modulus": doc.modulus,
        "reachable": is_reachable(s),
        "nk_invariant_factors": [list(f) for f in nk_invariant_factors(s)],
    }
    if doc.m == 1:
        out["single_input_d"] = list(single_input_canonical(s)[2])
    sys.stdout.write(dumps(out))
    return EXIT_OK


def cmd_transform(args):
    doc = _read(args.path)
    s = doc.system()
    t = random_feedback(s.ctx, s.n, s.m, args.seed)
    label = f"{doc.label or 'system'} after feedback seed {args.seed}"
    out = SystemDocument.from_system(apply_feedback(s, t), label).to_dict()
    out["transform"] = transform_dict(t)
    sys.stdout.write(dumps(out))
    return EXIT_OK


def cmd_smith(args):
    doc = _read(args.path)
    sf = smith_form(doc.system().B)
    out = {"d": list(sf.d), "U": sf.U.tolist(), "V": sf.V.tolist(), "D": sf.D.tolist()}
    sys.stdout.write(dumps(out))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="regsys",
        description="Feedback canonical forms of linear systems over Z/n, n squarefree.",
    )
    parser.add_argument("--version", action="version", version=f"regsys {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("canonical", help="canonical decomposition of a system")
    p.add_argument("path", nargs="?", help="system document (default: stdin)")
    p.add_argument("--example", choices=["z210"], help="use a bundled example")
    p.add_argument("--pretty", action="store_true", help="human-readable blocks")
    p.set_defaults(func=cmd_canonical)

    p = sub.add_parser("equiv", help="decide feedback equivalence")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--witness", action="store_true", help="emit P, Q, K")
    p.add_argument("--method", choices=["canonical", "nk"], default="canonical")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("invariants", help="reachability invariant factors")
    p.add_argument("path", nargs="?")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("transform", help="apply a seeded random feedback transform")
    p.add_argument("path", nargs="?")
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("smith", help="idempotent Smith form of B")
    p.add_argument("path", nargs="?")
    p.set_defaults(func=cmd_smith)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except NotSquarefreeError as exc:
        print(f"regsys: {exc}", file=sys.stderr)
        return EXIT_MODULUS
    except (DocumentError, UsageError, DimensionError, ContextMismatchError) as exc:
        print(f"regsys: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
