"""Batch command line: hom tables, diagram algebra, crystals, the action on graded O, verification.

Exit status is 0 on success, 1 when a verification fails and 2 on malformed input.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional

from . import crystals as cr
from . import graded_o as go
from . import linear_category as lc
from . import tl_diagram as tl
from . import verify
from .clebsch_gordan import hom_dimension

MAX_TABLE_BOUND = 16


class InputError(ValueError):
    """Raised for unreadable or malformed input; mapped to exit status 2."""


def _read_json(source: str):
    """``-`` reads stdin, a path reads the file, and text starting with ``{`` is parsed directly."""
    try:
        if source == "-":
            text = sys.stdin.read()
        elif source.lstrip().startswith("{"):
            text = source
        else:
            with open(source, encoding="utf-8") as fh:
                text = fh.read()
        return json.loads(text)
    except OSError as exc:
        raise InputError(f"cannot read {source}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON in {source}: {exc}") from exc


def _load_morphism(source: str):
    """A matching (or zero diagram) or a linear combination of matchings."""
    obj = _read_json(source)
    if not isinstance(obj, dict):
        raise InputError(f"{source}: expected a JSON object")
    try:
        if "terms" in obj:
            return lc.from_json(obj)
        return tl.from_json(obj)
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"{source}: {exc}") from exc


def _dump_morphism(h) -> dict:
    return lc.to_json(h) if isinstance(h, lc.HomElement) else tl.to_json(h)


def _load_crystal(source: str, check: bool = True) -> cr.Crystal:
    if source != "-" and not os.path.exists(source) and not source.lstrip().startswith("{"):
        try:
            return cr.named(source)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
    try:
        B = cr.from_json(_read_json(source))
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"{source}: {exc}") from exc
    if check:
        problems = cr.validate(B)
        if problems:
            raise InputError("invalid crystal:\n" + "\n".join(f"  {v}" for v in problems))
    return B


def cmd_hom_table(args) -> tuple[object, str, int]:
    bound = 6 if args.bound is None else args.bound
    if bound < 0 or bound > MAX_TABLE_BOUND:
        raise InputError(f"--bound must lie in [0, {MAX_TABLE_BOUND}]")
    rows = []
    for m in range(bound + 1):
        for n in range(bound + 1):
            count = tl.count_matchings(m, n)
            oracle = hom_dimension(m, n)
            rows.append({"m": m, "n": n, "dim": count, "oracle": oracle, "match": count == oracle})
    text = "\n".join(f"{r['m']:>3} {r['n']:>3} {r['dim']:>10} {r['oracle']:>10} "
                     f"{'match' if r['match'] else 'MISMATCH'}" for r in rows)
    header = f"{'m':>3} {'n':>3} {'dim':>10} {'oracle':>10}\n"
    status = 0 if all(r["match"] for r in rows) else 1
    return rows, header + text + "\n", status


def cmd_compose(args):
    g, f = _load_morphism(args.second), _load_morphism(args.first)
    if isinstance(g, lc.HomElement) or isinstance(f, lc.HomElement):
        g = g if isinstance(g, lc.HomElement) else lc.HomElement.from_diagram(g)
        f = f if isinstance(f, lc.HomElement) else lc.HomElement.from_diagram(f)
        if f.n != g.m:
            raise InputError(f"cannot compose: {f.m}->{f.n} then {g.m}->{g.n}")
        out = lc.compose_linear(g, f)
    else:
        if f.target != g.source:
            raise InputError(f"cannot compose: {f.source}->{f.target} then {g.source}->{g.target}")
        out = tl.compose(g, f)
    obj = _dump_morphism(out)
    return obj, json.dumps(obj, ensure_ascii=False) + "\n", 0


def cmd_tensor(args):
    a, b = _load_morphism(args.left), _load_morphism(args.right)
    if isinstance(a, lc.HomElement) or isinstance(b, lc.HomElement):
        a = a if isinstance(a, lc.HomElement) else lc.HomElement.from_diagram(a)
        b = b if isinstance(b, lc.HomElement) else lc.HomElement.from_diagram(b)
        out = lc.tensor_linear(a, b)
    else:
        out = tl.tensor(a, b)
    obj = _dump_morphism(out)
    return obj, json.dumps(obj, ensure_ascii=False) + "\n", 0


def cmd_crystal(args):
    if args.op == "tensor":
        if len(args.inputs) < 2:
            raise InputError("crystal tensor needs at least two inputs")
        out = _load_crystal(args.inputs[0])
        for src in args.inputs[1:]:
            out = cr.tensor(out, _load_crystal(src))
        obj = cr.to_json(out)
        return obj, json.dumps(obj, ensure_ascii=False) + "\n", 0
    if len(args.inputs) != 1:
        raise InputError(f"crystal {args.op} takes one input")
    B = _load_crystal(args.inputs[0])
    if args.op == "decompose":
        obj = {str(n): c for n, c in sorted(cr.decompose(B).counts().items())}
        return obj, json.dumps(obj) + "\n", 0
    dot = cr.to_dot(B)
    return {"dot": dot}, dot, 0


def cmd_act(args):
    h = _load_morphism(args.morphism)
    try:
        X = go.object_from_json(_read_json(args.object))
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"{args.object}: {exc}") from exc
    g = go.act(h, X)
    obj = go.morphism_to_json(g)
    return obj, json.dumps(obj) + "\n", 0


def cmd_verify(args):
    names = args.suites or ["all"]
    for n in names:
        if n != "all" and n not in verify.SUITES:
            raise InputError(f"unknown suite {n!r}; choose from {', '.join(verify.SUITES)} or all")
    if "all" in names:
        names = list(verify.SUITES)
    results = verify.run(names, bound=args.bound, seed=args.seed)
    obj = {"ok": all(r.ok for r in results), "seed": args.seed, "suites": [r.to_json() for r in results]}
    text = "\n".join(r.summary() for r in results) + "\n"
    return obj, text, 0 if obj["ok"] else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default=None,
                        help="output format (default depends on the command)")
    common.add_argument("--output", help="write the result to this file instead of stdout")

    p = argparse.ArgumentParser(prog="sl2act", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("hom-table", parents=[common], help="hom dimensions against the Clebsch-Gordan oracle")
    s.add_argument("--bound", type=int, default=None, help=f"largest m and n (at most {MAX_TABLE_BOUND})")
    s.set_defaults(func=cmd_hom_table, default_format="text")

    s = sub.add_parser("compose", parents=[common], help="compose: apply FIRST, then SECOND")
    s.add_argument("first", help="JSON file, inline JSON, or - for stdin")
    s.add_argument("second")
    s.set_defaults(func=cmd_compose, default_format="json")

    s = sub.add_parser("tensor", parents=[common], help="tensor product of two diagrams or hom elements")
    s.add_argument("left")
    s.add_argument("right")
    s.set_defaults(func=cmd_tensor, default_format="json")

    s = sub.add_parser("crystal", parents=[common], help="crystal tensor products, decompositions and DOT")
    s.add_argument("op", choices=("tensor", "decompose", "dot"))
    s.add_argument("inputs", nargs="+", help="crystal JSON, a name like b2 or b1*b1, or -")
    s.set_defaults(func=cmd_crystal, default_format="json")

    s = sub.add_parser("act", parents=[common], help="evaluate a diagram or hom element on a graded O object")
    s.add_argument("morphism")
    s.add_argument("object")
    s.set_defaults(func=cmd_act, default_format="json")

    s = sub.add_parser("verify", parents=[common], help="run verification suites")
    s.add_argument("suites", nargs="*", help=f"suite names ({', '.join(verify.SUITES)}) or all")
    s.add_argument("--bound", type=int, default=None, help="size override for bounded suites")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_verify, default_format="text")
    return p


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        obj, text, status = args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    fmt = args.format or ("text" if getattr(args, "op", None) == "dot" else args.default_format)
    out = json.dumps(obj, ensure_ascii=False) + "\n" if fmt == "json" else text
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return status


if __name__ == "__main__":
    sys.exit(main())
