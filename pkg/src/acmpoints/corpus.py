"""Named example point sets with their expected invariants.

Examples built on "six points in general position in P^2" use the fixed
points [1:i:i^3], i = 1..6, which ``in_general_position`` verifies (no three
collinear, no six on a conic). Any other verified choice can be passed as
``witness``; the invariants that depend only on general position must not
change.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from pathlib import Path
from typing import Callable

from .depth import LinearForm, QuotientRing, compute_depth, is_acm
from .hilbert import CoordinateRing, delta_screen, delta_table, hilbert_table
from .linalg import QQ
from .multidegree import MonomialIdeal, box_degrees, monomial_ideal_hilbert
from .separators import unique_degree_test
from .points import (
    PointSet,
    embed_points,
    ferrers_point_set,
    has_property_star,
    in_general_position,
    dump_point_set,
    star_witness,
    sx_poset,
)

__all__ = [
    "WITNESS_P2",
    "random_general_position",
    "NamedExample",
    "CATALOG",
    "build_example",
    "Check",
    "VerificationReport",
    "verify_example",
    "export_catalog",
    "data_dir",
]

WITNESS_P2 = tuple((1, i, i**3) for i in range(1, 7))


def random_general_position(seed: int, count: int = 6, bound: int = 60) -> tuple:
    """``count`` random integer points [1:a:b] in general position."""
    rng = random.Random(seed)
    while True:
        pts = [(1, rng.randint(-bound, bound), rng.randint(-bound, bound)) for _ in range(count)]
        if len(set(pts)) == count and in_general_position(pts):
            return tuple(pts)


def _check_witness(witness) -> tuple:
    witness = tuple(tuple(p) for p in (witness or WITNESS_P2))
    if len(witness) != 6 or not in_general_position(witness):
        raise ValueError("witness must be six points of P^2 in general position")
    return witness


def _pairs(text: str) -> list[tuple[int, int]]:
    return [(int(s[0]), int(s[1])) for s in text.split()]


def _qij(pairs, left, right, dims) -> PointSet:
    return PointSet.build(
        dims,
        [(left[i - 1], right[j - 1]) for i, j in pairs],
        [f"Q_{{{i},{j}}}" for i, j in pairs],
    )


EX1_PAIRS = _pairs("11 12 13 14 15 16 21 23 24 26 31 32 35 36 41 42 45 46 51 53 56 61 62 63 64 65 66")
EX2_LABELS = (
    "1121 1122 1131 1221 1222 1231 1321 1322 1331 "
    "2111 2112 2113 2121 2122 2131 2211 2212 2213 "
    "2221 2222 2231 3111 3112 3113 3121 3122 3131"
).split()
EX3_PAIRS = _pairs("11 12 21 22 23 24 25 31 32 33 34 35 41 42 44 45 51 52 53 54 56 61 62 63 64 65 66")
EX4_PAIRS = _pairs("11 12 21 22 31 32 41 42 52 53 54 55 56 61 63 64 65 66")


def example1(witness=None) -> PointSet:
    w = _check_witness(witness)
    return _qij(EX1_PAIRS, w, w, (2, 2))


def example2(witness=None) -> PointSet:
    pts = [((1, int(s[0]), int(s[1])), (1, int(s[2]), int(s[3]))) for s in EX2_LABELS]
    return PointSet.build((2, 2), pts, [f"Q_{{{s}}}" for s in EX2_LABELS])


EMBED_DIMS = (1, 2, 2)
EMBED_SLOTS = (1, 2)


def example1_embedded(witness=None) -> PointSet:
    return embed_points(example1(witness), EMBED_DIMS, EMBED_SLOTS)


def example2_embedded(witness=None) -> PointSet:
    return embed_points(example2(), EMBED_DIMS, EMBED_SLOTS)


def three_collinear_diagonal(witness=None) -> PointSet:
    return PointSet.build((1, 1), [((1, i), (1, i)) for i in (1, 2, 3)], [f"P_{{{i},{i}}}" for i in (1, 2, 3)])


P1P2_Q = ((1, 1, 1), (1, 1, 2), (1, 1, 3), (1, 0, 1), (1, 0, 2))
P1P2_PAIRS = _pairs("11 12 13 14 21 22 23 25 31 32 33")


def p1p2_11pts(witness=None) -> PointSet:
    return PointSet.build(
        (1, 2),
        [((1, i), P1P2_Q[j - 1]) for i, j in P1P2_PAIRS],
        [f"P_{i}xQ_{j}" for i, j in P1P2_PAIRS],
    )


def example3(witness=None) -> PointSet:
    w = _check_witness(witness)
    return _qij(EX3_PAIRS, [(1, i) for i in range(1, 7)], w, (1, 2))


def two_noncollinear(witness=None) -> PointSet:
    return PointSet.build((1, 1), [((1, 1), (1, 1)), ((1, 2), (1, 2))], ["P_1xP_1", "P_2xP_2"])


def example4(witness=None) -> PointSet:
    w = _check_witness(witness)
    return _qij(EX4_PAIRS, w, w, (2, 2))


def ferrers_443(witness=None) -> PointSet:
    return ferrers_point_set((4, 4, 3), [(1, i) for i in range(1, 4)], [(1, j, j * j) for j in range(1, 5)])


EX1_H = [[1, 3, 6, 6], [3, 9, 18, 18], [6, 18, 27, 27], [6, 18, 27, 27]]
EX1_DELTA = [[1, 2, 3, 0], [2, 4, 6, 0], [3, 6, 0, 0], [0, 0, 0, 0]]
EX1_ARTINIAN = [[(0, 3)], [(1, 3)], [(0, 2), (1, 2)]]


def _ex4_separators() -> dict:
    out = {}
    for i, j in EX4_PAIRS:
        if (i, j) in ((5, 2), (6, 1)):
            deg = (2, 2)
        elif i <= 4:
            deg = (2, 1)
        else:
            deg = (1, 2)
        out[f"Q_{{{i},{j}}}"] = [deg]
    return out


@dataclass
class NamedExample:
    name: str
    point_set: PointSet
    expected: dict
    description: str = ""


@dataclass(frozen=True)
class _Entry:
    builder: Callable
    expected: dict
    description: str
    uses_witness: bool = False


CATALOG: dict[str, _Entry] = {
    "example1": _Entry(
        example1,
        {
            "npoints": 27,
            "hilbert_block": EX1_H,
            "delta_block": EX1_DELTA,
            "delta_screen": "Passes",
            "artinian_ideal": EX1_ARTINIAN,
            "depth": 1,
            "acm": False,
        },
        "27 points of P^2 x P^2; Delta H is artinian yet the set is not ACM",
        True,
    ),
    "example2": _Entry(
        example2,
        {"npoints": 27, "hilbert_block": EX1_H, "delta_block": EX1_DELTA, "depth": 2, "acm": True},
        "27 ACM points of P^2 x P^2 with the same Hilbert function as example1",
    ),
    "example1-embedded": _Entry(
        example1_embedded,
        {"npoints": 27, "depth": 2, "acm": False, "delta_plane": ("example1", EMBED_SLOTS)},
        "example1 placed in P^1 x P^2 x P^2; depth r - 1",
        True,
    ),
    "example2-embedded": _Entry(
        example2_embedded,
        {"npoints": 27, "depth": 3, "acm": True, "delta_plane": ("example2", EMBED_SLOTS)},
        "example2 placed in P^1 x P^2 x P^2",
    ),
    "three-collinear-diagonal": _Entry(
        three_collinear_diagonal,
        {
            "npoints": 3,
            "hilbert_block": [[1, 2, 3, 3], [2, 3, 3, 3], [3, 3, 3, 3], [3, 3, 3, 3]],
            "quotient_blocks": {
                "x0": [[1, 2, 3, 3], [1, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 0]],
                "x0,y0": [[1, 1, 1, 0], [1, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 0]],
            },
            "delta_screen": "Negative",
            "depth": 1,
            "acm": False,
            "star": False,
        },
        "three points on the diagonal of P^1 x P^1",
    ),
    "p1p2-11pts": _Entry(
        p1p2_11pts,
        {
            "npoints": 11,
            "hilbert_block": [[1, 3, 5, 5], [2, 6, 8, 8], [3, 8, 11, 11], [3, 8, 11, 11]],
            "delta_block": [[1, 2, 2, 0], [1, 2, 0, 0], [1, 1, 1, 0], [0, 0, 0, 0]],
            "delta_screen": "SupportViolation",
            "delta_witness": ((1, 2), (2, 2)),
            "depth": 1,
            "acm": False,
        },
        "11 points of P^1 x P^2 whose Delta H is nonnegative but not artinian",
    ),
    "example3": _Entry(
        example3,
        {"npoints": 27, "depth": 2, "acm": True, "star": False, "star_witness": ("Q_{4,5}", "Q_{5,3}")},
        "27 ACM points of P^1 x P^2 without property (*)",
        True,
    ),
    "two-noncollinear": _Entry(
        two_noncollinear,
        {
            "npoints": 2,
            "depth": 1,
            "acm": False,
            "star": False,
            "sx_totally_ordered": False,
            "sx_elements": [(0, 1), (1, 0)],
            "separator_degrees": {"P_1xP_1": [(0, 1), (1, 0)], "P_2xP_2": [(0, 1), (1, 0)]},
            "unique_degrees": False,
        },
        "two points of P^1 x P^1 differing in both coordinates",
    ),
    "example4": _Entry(
        example4,
        {
            "npoints": 18,
            "hilbert_block": [[1, 3, 6, 6], [3, 8, 14, 14], [6, 14, 18, 18], [6, 14, 18, 18]],
            "removed": "Q_{5,2}",
            "hilbert_y_block": [[1, 3, 6, 6], [3, 8, 14, 14], [6, 14, 17, 17], [6, 14, 17, 17]],
            "separator_degrees": _ex4_separators(),
            "unique_degrees": True,
            "depth": 1,
            "acm": False,
        },
        "18 points of P^2 x P^2, every point with one separator degree, not ACM",
        True,
    ),
    "ferrers-443": _Entry(
        ferrers_443,
        {"npoints": 11, "depth": 2, "acm": True, "star": True, "unique_degrees": True},
        "Ferrers diagram set for the partition (4,4,3) in P^1 x P^2",
    ),
}


def build_example(name: str, witness=None) -> NamedExample:
    try:
        entry = CATALOG[name]
    except KeyError:
        raise KeyError(f"unknown example {name!r}; known: {', '.join(CATALOG)}") from None
    x = entry.builder(witness) if entry.uses_witness else entry.builder()
    return NamedExample(name, x, entry.expected, entry.description)


@dataclass
class Check:
    quantity: str
    expected: object
    actual: object

    @property
    def passed(self) -> bool:
        return self.expected == self.actual


@dataclass
class VerificationReport:
    name: str
    checks: list[Check] = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, quantity: str, expected, actual) -> None:
        self.checks.append(Check(quantity, expected, actual))

    def lines(self) -> list[str]:
        return [
            f"{'PASS' if c.passed else 'FAIL'} {self.name}: {c.quantity}"
            + ("" if c.passed else f" expected {c.expected!r}, got {c.actual!r}")
            for c in self.checks
        ]

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "checks": [
                {"quantity": c.quantity, "passed": c.passed, "expected": _plain(c.expected), "actual": _plain(c.actual)}
                for c in self.checks
            ],
        }


def _plain(v):
    if isinstance(v, (tuple, list)):
        return [_plain(a) for a in v]
    if isinstance(v, dict):
        return {str(k): _plain(a) for k, a in v.items()}
    return v


def _delta_on_plane(name: str, slots, witness, embedded_delta) -> bool:
    base = delta_table(hilbert_table(build_example(name, witness).point_set, strict=True))
    r = embedded_delta.r
    for i in embedded_delta.degrees():
        off = [i[j] for j in range(r) if j not in slots]
        a, b = i[slots[0]], i[slots[1]]
        inside = a <= base.box[0] and b <= base.box[1]
        want = base[(a, b)] if inside and not any(off) else 0
        if embedded_delta[i] != want:
            return False
    return True


def verify_example(name: str, witness=None, trials: int = 5, seed: int | None = 0, field=QQ) -> VerificationReport:
    """Recompute every expected quantity of a catalog entry and diff it."""
    ex = build_example(name, witness)
    x, exp = ex.point_set, ex.expected
    rep = VerificationReport(name)
    ring = CoordinateRing(x, field)
    h = hilbert_table(x, field=field, ring=ring, strict=True)
    d = delta_table(h)
    rep.add("number of points", exp["npoints"], len(x))
    if "hilbert_block" in exp:
        rep.add("H_X block", exp["hilbert_block"], h.block((4, 4)))
    if "delta_block" in exp:
        rep.add("Delta H_X block", exp["delta_block"], d.block((4, 4)))
    if "delta_screen" in exp:
        screen = delta_screen(d)
        rep.add("Delta H screen", exp["delta_screen"], screen.kind)
        if "delta_witness" in exp:
            rep.add("Delta H screen witness", exp["delta_witness"], screen.witness)
    if "artinian_ideal" in exp:
        ideal = MonomialIdeal.from_products(x.dims, exp["artinian_ideal"])
        ok = all(d[i] == monomial_ideal_hilbert(ideal, i) for i in box_degrees(d.box))
        rep.add("Delta H equals artinian monomial quotient", True, ok)
    if "quotient_blocks" in exp:
        J = QuotientRing(ring)
        for key, forms in (("x0", [LinearForm(0, (1, 0), 2)]), ("x0,y0", [LinearForm(0, (1, 0), 2), LinearForm(1, (1, 0), 2)])):
            q = J
            for f in forms:
                q = q.extend(f)
            block = [[q.hilbert((a, b)) for b in range(4)] for a in range(4)]
            rep.add(f"H of R/(I_X,{key}) block", exp["quotient_blocks"][key], block)
    if "delta_plane" in exp:
        base, slots = exp["delta_plane"]
        rep.add(f"Delta H supported on slots {slots} and equal to {base}", True, _delta_on_plane(base, slots, witness, d))
    if "removed" in exp:
        y = x.without(x.find(exp["removed"]))
        hy = hilbert_table(y, box=h.box, field=field)
        rep.add(f"H_Y block (remove {exp['removed']})", exp["hilbert_y_block"], hy.block((4, 4)))
    if "star" in exp:
        rep.add("property (*)", exp["star"], has_property_star(x))
    if "star_witness" in exp:
        w = star_witness(x)
        rep.add("(*) witness", exp["star_witness"], None if w is None else tuple(x.label(k) for k in w))
    if "sx_totally_ordered" in exp:
        s = sx_poset(x)
        rep.add("S_X totally ordered", exp["sx_totally_ordered"], s.totally_ordered)
        if "sx_elements" in exp:
            rep.add("S_X elements", exp["sx_elements"], sorted(s.elements))
    if "separator_degrees" in exp or "unique_degrees" in exp:
        u = unique_degree_test(x, field)
        if "separator_degrees" in exp:
            got = {x.label(s.point): list(s.degrees) for s in u.all_degrees}
            rep.add("separator degrees", exp["separator_degrees"], got)
        if "unique_degrees" in exp:
            rep.add("all separator degrees unique", exp["unique_degrees"], u.all_unique)
    depth = compute_depth(x, trials, seed, field)
    if "depth" in exp:
        rep.add("depth", exp["depth"], depth.depth)
    if "acm" in exp:
        verdict = is_acm(x, trials, seed, field)
        rep.add("ACM verdict", exp["acm"], verdict.acm)
    return rep


def data_dir() -> Path:
    return Path(__file__).resolve().parent / "data"


def export_catalog(directory=None) -> list[Path]:
    """Write every catalog point set as ``<name>.json``."""
    directory = Path(directory) if directory is not None else data_dir()
    directory.mkdir(parents=True, exist_ok=True)
    out = []
    for name in CATALOG:
        path = directory / f"{name}.json"
        dump_point_set(build_example(name).point_set, path, indent=1)
        out.append(path)
    return out
