"""Command-line front end.

Point indices on the command line are 1-based; labels such as Q_{5,2} work
too. A point-set argument is a JSON file, ``-`` for stdin, or the name of a
catalog example.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import corpus
from .depth import compute_depth, is_acm
from .hilbert import (
    BoxInstabilityError,
    delta_table,
    dumps,
    hilbert_table,
    render_csv,
    render_text,
    table_to_json,
)
from .linalg import QQ, field_from_name
from .points import (
    PointSet,
    PointSetError,
    dump_point_set,
    embed_points,
    ferrers_point_set,
    load_point_set,
    point_set_from_json,
    star_witnesses,
    sx_poset,
)
from .separators import separator_report

FIELD_ENV = "ACMPOINTS_FIELD"


class InputError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(a) for a in text.replace(" ", "").split(",") if a]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _field(text: str):
    try:
        f = field_from_name(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    if f.characteristic == 2:
        raise argparse.ArgumentTypeError("the prime must be greater than 2")
    return f


def load_input(arg: str):
    if arg == "-":
        try:
            return point_set_from_json(json.load(sys.stdin))
        except json.JSONDecodeError as exc:
            raise PointSetError(f"malformed JSON: {exc}") from None
    path = Path(arg)
    if path.exists():
        return load_point_set(path)
    name = path.stem if path.suffix == ".json" else arg
    if name in corpus.CATALOG:
        return corpus.build_example(name).point_set
    raise InputError(f"no such file or catalog example: {arg}")


def _point_index(x, key: str) -> int:
    k = None
    if x.labels and key in x.labels:
        k = x.labels.index(key)
    elif key.lstrip("#").isdigit():
        k = int(key.lstrip("#")) - 1
    if k is None or not 0 <= k < len(x):
        raise InputError(f"unknown point {key!r} (use a label or a 1-based index up to {len(x)})")
    return k


def _emit(args, text: str | None = None, doc: dict | None = None, csv_text: str | None = None) -> None:
    if args.format == "json" and doc is not None:
        print(dumps(doc))
    elif args.format == "csv" and csv_text is not None:
        print(csv_text, end="")
    elif text is not None:
        print(text)
    else:
        print(dumps(doc))


def _table_cmd(args, delta: bool) -> int:
    x = load_input(args.file)
    h = hilbert_table(x, box=args.box, field=args.field)
    if args.box is None and not h.is_stabilized:
        print("warning: table did not stabilize", file=sys.stderr)
    t = delta_table(h) if delta else h
    _emit(args, render_text(t), table_to_json(t), render_csv(t))
    return 0


def cmd_hilbert(args) -> int:
    return _table_cmd(args, False)


def cmd_delta(args) -> int:
    return _table_cmd(args, True)


def _form_text(f) -> str:
    return f"factor {f.factor + 1}: ({', '.join(str(c) for c in f.coeffs)})"


def cmd_depth(args) -> int:
    x = load_input(args.file)
    rep = compute_depth(x, args.trials, args.seed, args.field)
    lines = [f"depth {rep.depth} of {rep.r}" + ("" if rep.exact else " (probable)")]
    lines += [f"  L_{k + 1} = {_form_text(f)}" for k, f in enumerate(rep.sequence)]
    for fail in rep.failures:
        degs = ", ".join(f"{d}:{v}" for d, v in sorted(fail.kernel.items()))
        lines.append(f"  stage {fail.stage + 1} zero divisor {_form_text(fail.form)}; kernel dims {degs}")
    lines.append("ACM" if rep.acm else "not ACM")
    _emit(args, "\n".join(lines), rep.to_json())
    return 1 if args.assert_acm and not rep.acm else 0


def cmd_acm(args) -> int:
    x = load_input(args.file)
    v = is_acm(x, args.trials, args.seed, args.field, with_depth=args.full)
    lines = [v.status, f"  reason: {v.reason}"]
    for key, val in v.evidence.items():
        if key == "depth" and v.depth is not None:
            continue
        lines.append(f"  {key}: {val}")
    if v.depth is not None:
        lines.append(f"  depth: {v.depth.depth}")
    _emit(args, "\n".join(lines), v.to_json())
    return 1 if args.assert_acm and not v.acm else 0


def cmd_star(args) -> int:
    x = load_input(args.file)
    pairs = star_witnesses(x)
    doc = {
        "property_star": not pairs,
        "witnesses": [[x.label(a), x.label(b)] for a, b in pairs],
    }
    if pairs:
        a, b = pairs[0]
        text = f"property (*) fails: {x.label(a)} and {x.label(b)} ({len(pairs)} pair(s))"
    else:
        text = "property (*) holds"
    _emit(args, text, doc)
    return 0


def cmd_sx(args) -> int:
    x = load_input(args.file)
    s = sx_poset(x)
    elems = sorted(s.elements, key=lambda e: (sum(e), e))
    doc = {"elements": [list(e) for e in elems], "totally_ordered": s.totally_ordered}
    text = "\n".join(["".join(map(str, e)) for e in elems] + [("chain" if s.totally_ordered else "not a chain")])
    _emit(args, text, doc)
    return 0


def cmd_separators(args) -> int:
    x = load_input(args.file)
    points = None if args.point is None else [_point_index(x, p) for p in args.point]
    doc = separator_report(x, args.field, points, with_forms=args.forms)
    lines = []
    for e in doc["points"]:
        degs = ", ".join(str(tuple(d)) for d in e["degrees"])
        lines.append(f"{e['index'] + 1:>3} {e['label']}: {{{degs}}}")
        for f in e.get("separators", []):
            lines.append(f"      degree {tuple(f['degree'])}: {' '.join(f['coeffs'])}")
    if points is None:
        unique = all(len(e["degrees"]) == 1 for e in doc["points"])
        doc["all_unique"] = unique
        lines.append("all degrees unique" if unique else "some point has several minimal degrees")
    _emit(args, "\n".join(lines), doc)
    return 0


def _moment_point(n: int, t: int) -> tuple[int, ...]:
    return tuple(t**e for e in range(n + 1))


def cmd_ferrers(args) -> int:
    """Rows of the diagram are the points [1:i] of the P^1 factor; columns are
    points on the moment curve [1:t:t^2:...] of the other factor."""
    lam = args.lam
    if not lam or any(a < 1 for a in lam) or any(a < b for a, b in zip(lam, lam[1:])):
        raise InputError(f"{lam} is not a partition")
    if len(args.target) != 2 or 1 not in args.target or min(args.target) < 1:
        raise InputError("target must be 1,n or n,1")
    m, n = args.target
    rows = [_moment_point(1, t) for t in range(1, len(lam) + 1)]
    cols = [_moment_point(n if m == 1 else m, t) for t in range(1, lam[0] + 1)]
    x = ferrers_point_set(lam, rows, cols)
    if m != 1:
        x = PointSet.build((m, 1), [(p[1], p[0]) for p in x.points], x.labels)
    print(dump_point_set(x, indent=1))
    return 0


def cmd_embed(args) -> int:
    x = load_input(args.file)
    slots = tuple(s - 1 for s in args.slots)
    if len(slots) != x.r:
        raise InputError(f"need {x.r} slots, got {len(slots)}")
    y = embed_points(x, args.dims, slots)
    print(dump_point_set(y, indent=1))
    return 0


def cmd_example(args) -> int:
    if args.list or args.name is None:
        for name, entry in corpus.CATALOG.items():
            print(f"{name:26} {entry.description}")
        return 0
    if args.name not in corpus.CATALOG:
        raise InputError(f"unknown example {args.name!r}")
    ex = corpus.build_example(args.name)
    x = ex.point_set
    if args.export:
        print(dump_point_set(x, indent=1))
        return 0
    h = hilbert_table(x, field=args.field, strict=True)
    if not args.verify:
        _emit(args, f"{args.name}: {len(x)} points in dims {x.dims}\n{render_text(h)}", table_to_json(h), render_csv(h))
        return 0
    rep = corpus.verify_example(args.name, trials=args.trials, seed=args.seed, field=args.field)
    text = "\n".join([f"{args.name}: {len(x)} points in dims {x.dims}", render_text(h)] + rep.lines())
    _emit(args, text, rep.to_json())
    return 0 if rep.passed else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", type=_field, default=None, help="QQ (default) or a prime p > 2, e.g. 32003 or GF(32003)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int, default=5, help="random forms tried per depth stage")
    common.add_argument("--box", type=_int_list, default=None, help="explicit table box, e.g. 4,4")
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")

    p = argparse.ArgumentParser(prog="acmpoints", description="Hilbert functions and the ACM property for points in multiprojective space.")
    sub = p.add_subparsers(dest="command", required=True)

    for name, fn, help_ in (
        ("hilbert", cmd_hilbert, "multigraded Hilbert function"),
        ("delta", cmd_delta, "first difference of the Hilbert function"),
        ("star", cmd_star, "property (*) in two factors"),
        ("sx", cmd_sx, "the incidence poset S_X in two factors"),
    ):
        s = sub.add_parser(name, parents=[common], help=help_)
        s.add_argument("file")
        s.set_defaults(func=fn)

    for name, fn, help_ in (("depth", cmd_depth, "depth via random regular sequences"), ("acm", cmd_acm, "decide ACM")):
        s = sub.add_parser(name, parents=[common], help=help_)
        s.add_argument("file")
        s.add_argument("--assert-acm", action="store_true", help="exit 1 unless ACM")
        if name == "acm":
            s.add_argument("--full", action="store_true", help="also run the depth search")
        s.set_defaults(func=fn)

    s = sub.add_parser("separators", parents=[common], help="minimal separator degrees")
    s.add_argument("file")
    s.add_argument("--point", action="append", help="label or 1-based index (repeatable)")
    s.add_argument("--forms", action="store_true", help="also print a minimal separator of each degree")
    s.set_defaults(func=cmd_separators)

    s = sub.add_parser("ferrers", parents=[common], help="point set of a Ferrers diagram")
    s.add_argument("--lambda", dest="lam", type=_int_list, required=True)
    s.add_argument("--target", type=_int_list, default=[1, 1], help="dims such as 1,2")
    s.set_defaults(func=cmd_ferrers)

    s = sub.add_parser("embed", parents=[common], help="place a point set into more factors")
    s.add_argument("file")
    s.add_argument("--dims", type=_int_list, required=True)
    s.add_argument("--slots", type=_int_list, required=True, help="1-based target factor of each source factor")
    s.set_defaults(func=cmd_embed)

    s = sub.add_parser("example", parents=[common], help="catalog examples")
    s.add_argument("name", nargs="?")
    s.add_argument("--verify", action="store_true")
    s.add_argument("--list", action="store_true")
    s.add_argument("--export", action="store_true", help="print the point set as JSON")
    s.set_defaults(func=cmd_example)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.field is None:
        env = os.environ.get(FIELD_ENV)
        try:
            args.field = _field(env) if env else QQ
        except argparse.ArgumentTypeError as exc:
            parser.error(f"{FIELD_ENV}: {exc}")
    if getattr(args, "trials", 1) < 1:
        parser.error("--trials must be >= 1")
    try:
        return args.func(args)
    except PointSetError as exc:
        where = f"point {exc.index + 1}: " if exc.index is not None else ""
        print(f"error: {where}{exc.message}", file=sys.stderr)
    except (InputError, BoxInstabilityError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return 2


if __name__ == "__main__":
    sys.exit(main())
