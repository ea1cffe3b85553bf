"""Finite point sets in P^{n_1} x ... x P^{n_r}.

Coordinates are exact rationals. Every factor vector is normalized so its
first nonzero entry is 1, which makes equality of points a tuple
comparison. Factor indices are 0-based throughout the library.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd, lcm
from typing import Iterable, Sequence

__all__ = [
    "Point",
    "PointSet",
    "PointSetError",
    "normalize_vector",
    "projection",
    "star_witnesses",
    "star_witness",
    "has_property_star",
    "SXPoset",
    "sx_poset",
    "ferrers_point_set",
    "embed_points",
    "collinear",
    "in_general_position",
    "load_point_set",
    "dump_point_set",
    "point_set_from_json",
    "point_set_to_json",
]


class PointSetError(ValueError):
    """Malformed point data; ``index`` names the offending point if known."""

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message if index is None else f"point {index}: {message}")
        self.message = message
        self.index = index


def _to_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(c, (int, str)):
        return Fraction(c.strip() if isinstance(c, str) else c)
    raise TypeError(f"unsupported coordinate {c!r}")


def normalize_vector(vec: Iterable) -> tuple[Fraction, ...]:
    """Scale a nonzero homogeneous vector so its first nonzero entry is 1."""
    v = tuple(_to_fraction(c) for c in vec)
    lead = next((c for c in v if c != 0), None)
    if lead is None:
        raise ValueError("zero vector is not a projective point")
    return tuple(c / lead for c in v)


@dataclass(frozen=True)
class Point:
    """A point of a multiprojective space, one normalized vector per factor."""

    coords: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def of(cls, *factors: Iterable) -> "Point":
        return cls(tuple(normalize_vector(f) for f in factors))

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(len(f) - 1 for f in self.coords)

    def __getitem__(self, j: int) -> tuple[Fraction, ...]:
        return self.coords[j]

    def integer_coords(self) -> tuple[tuple[int, ...], ...]:
        """A primitive integer representative of each factor."""
        out = []
        for f in self.coords:
            m = lcm(*(c.denominator for c in f))
            ints = [int(c * m) for c in f]
            g = 0
            for a in ints:
                g = gcd(g, a)
            out.append(tuple(a // g for a in ints))
        return tuple(out)

    def __str__(self) -> str:
        return " x ".join("[" + ":".join(str(c) for c in f) + "]" for f in self.coords)


@dataclass(frozen=True)
class PointSet:
    """An ordered set of distinct points sharing ``dims``.

    ``labels`` are optional display names (e.g. ``"Q_{5,2}"``).
    """

    dims: tuple[int, ...]
    points: tuple[Point, ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        dims = tuple(int(n) for n in self.dims)
        object.__setattr__(self, "dims", dims)
        if not dims or any(n < 1 for n in dims):
            raise PointSetError(f"invalid dims {dims}")
        seen: dict[Point, int] = {}
        for k, p in enumerate(self.points):
            if p.dims != dims:
                raise PointSetError(f"dims {p.dims} differ from {dims}", k)
            if p in seen:
                raise PointSetError(f"duplicate of point {seen[p]}", k)
            seen[p] = k
        if self.labels is not None and len(self.labels) != len(self.points):
            raise PointSetError("labels and points differ in length")

    @classmethod
    def build(cls, dims: Sequence[int], points: Iterable, labels: Iterable[str] | None = None) -> "PointSet":
        """Build from raw coordinate lists, normalizing each factor."""
        pts = []
        for k, raw in enumerate(points):
            if isinstance(raw, Point):
                pts.append(raw)
                continue
            try:
                pts.append(Point.of(*raw))
            except (ValueError, TypeError, ZeroDivisionError) as exc:
                raise PointSetError(str(exc), k) from None
        return cls(tuple(dims), tuple(pts), None if labels is None else tuple(labels))

    @property
    def r(self) -> int:
        return len(self.dims)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, k: int) -> Point:
        return self.points[k]

    def __contains__(self, p: Point) -> bool:
        return p in self._index

    @property
    def _index(self) -> dict[Point, int]:
        cache = self.__dict__.get("_index_cache")
        if cache is None:
            cache = {p: k for k, p in enumerate(self.points)}
            object.__setattr__(self, "_index_cache", cache)
        return cache

    def index(self, p: Point) -> int:
        return self._index[p]

    def label(self, k: int) -> str:
        """Display name; unlabeled points are numbered from 1."""
        return self.labels[k] if self.labels else f"#{k + 1}"

    def find(self, key: str) -> int:
        """Resolve a point by index or by label."""
        if self.labels and key in self.labels:
            return self.labels.index(key)
        try:
            k = int(key)
        except ValueError:
            raise KeyError(f"no point named {key!r}") from None
        if not 0 <= k < len(self):
            raise KeyError(f"point index {k} out of range")
        return k

    def subset(self, indices: Iterable[int]) -> "PointSet":
        idx = list(indices)
        labels = tuple(self.labels[k] for k in idx) if self.labels else None
        return PointSet(self.dims, tuple(self.points[k] for k in idx), labels)

    def without(self, k: int) -> "PointSet":
        return self.subset(m for m in range(len(self)) if m != k)

    def projection(self, j: int) -> list[tuple[Fraction, ...]]:
        return projection(self, j)

    def __repr__(self) -> str:
        return f"PointSet(dims={self.dims}, npoints={len(self)})"


def projection(x: PointSet, j: int) -> list[tuple[Fraction, ...]]:
    """Distinct ``j``-th coordinates in first-appearance order."""
    if not 0 <= j < x.r:
        raise IndexError(f"factor {j} out of range for r={x.r}")
    return list(dict.fromkeys(p[j] for p in x.points))


def _require_two_factors(x: PointSet) -> None:
    if x.r != 2:
        raise ValueError(f"property (*) is defined on two factors, got r={x.r}")


def star_witnesses(x: PointSet) -> list[tuple[int, int]]:
    """All index pairs ``(a, b)``, ``a < b``, violating property (★).

    Ordered by the later index first, so the head of the list is the
    violation created earliest when the points are inserted in order.
    """
    _require_two_factors(x)
    pts = x.points
    out = []
    for b in range(len(pts)):
        p2, q2 = pts[b].coords
        for a in range(b):
            p1, q1 = pts[a].coords
            if p1 == p2 or q1 == q2:
                continue
            if Point((p1, q2)) not in x and Point((p2, q1)) not in x:
                out.append((a, b))
    return out


def star_witness(x: PointSet) -> tuple[int, int] | None:
    w = star_witnesses(x)
    return w[0] if w else None


def has_property_star(x: PointSet) -> bool:
    return star_witness(x) is None


@dataclass(frozen=True)
class SXPoset:
    """Incidence rows ``p_ij = [P_i x Q_j in X]`` over π_1(X) x π_2(X)."""

    rows: tuple[tuple[int, ...], ...]

    @property
    def totally_ordered(self) -> bool:
        rows = sorted(set(self.rows), key=sum)
        return all(
            all(a >= b for a, b in zip(hi, lo))
            for lo, hi in zip(rows, rows[1:])
        )

    @property
    def elements(self) -> set[tuple[int, ...]]:
        return set(self.rows)


def sx_poset(x: PointSet) -> SXPoset:
    _require_two_factors(x)
    ps, qs = projection(x, 0), projection(x, 1)
    rows = tuple(
        tuple(1 if Point((p, q)) in x else 0 for q in qs)
        for p in ps
    )
    return SXPoset(rows)


def ferrers_point_set(lam: Sequence[int], ps: Sequence, qs: Sequence) -> PointSet:
    """The Ferrers-diagram set {P_i x Q_j : j <= λ_i} in P^1 x P^n.

    ``ps`` holds ``len(lam)`` distinct points of P^1 and ``qs`` holds
    ``lam[0]`` distinct points of a common P^n.
    """
    lam = list(lam)
    if not lam or any(a <= 0 for a in lam) or any(a < b for a, b in zip(lam, lam[1:])):
        raise ValueError(f"{lam} is not a partition")
    if len(ps) < len(lam) or len(qs) < lam[0]:
        raise ValueError("not enough points for the partition")
    pn = [normalize_vector(p) for p in ps[: len(lam)]]
    qn = [normalize_vector(q) for q in qs[: lam[0]]]
    if len(set(pn)) != len(pn) or len(set(qn)) != len(qn):
        raise ValueError("supplied points are not distinct")
    if any(len(p) != 2 for p in pn):
        raise ValueError("first-factor points must lie in P^1")
    n = len(qn[0]) - 1
    pts, labels = [], []
    for i, row in enumerate(lam):
        for j in range(row):
            pts.append(Point((pn[i], qn[j])))
            labels.append(f"P_{i + 1}xQ_{j + 1}")
    return PointSet((1, n), tuple(pts), tuple(labels))


def embed_points(x: PointSet, target_dims: Sequence[int], slots: tuple[int, int]) -> PointSet:
    """Place a two-factor set into a larger multiprojective space.

    Factor 0 of ``x`` goes to factor ``slots[0]`` and factor 1 to
    ``slots[1]``, padded with zeros; every other factor gets [1:0:...:0].
    """
    _require_two_factors(x)
    target = tuple(int(n) for n in target_dims)
    i, j = slots
    if i == j or not (0 <= i < len(target) and 0 <= j < len(target)):
        raise ValueError(f"invalid slots {slots} for r={len(target)}")
    if target[i] < x.dims[0] or target[j] < x.dims[1]:
        raise ValueError(f"target dims {target} too small for {x.dims} in slots {slots}")
    one = Fraction(1)
    zero = Fraction(0)
    fixed = {k: (one,) + (zero,) * target[k] for k in range(len(target))}
    pts = []
    for p in x.points:
        coords = dict(fixed)
        coords[i] = p[0] + (zero,) * (target[i] - x.dims[0])
        coords[j] = p[1] + (zero,) * (target[j] - x.dims[1])
        pts.append(Point(tuple(coords[k] for k in range(len(target)))))
    return PointSet(target, tuple(pts), x.labels)


def _det(m: list[list[Fraction]]) -> Fraction:
    n = len(m)
    a = [list(map(Fraction, r)) for r in m]
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if a[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for i in range(c + 1, n):
            f = a[i][c] / a[c][c]
            for k in range(c, n):
                a[i][k] -= f * a[c][k]
    return det


def collinear(p, q, s) -> bool:
    return _det([list(normalize_vector(v)) for v in (p, q, s)]) == 0


def in_general_position(points: Sequence) -> bool:
    """Plane points with no three on a line and no six on a conic."""
    pts = [normalize_vector(p) for p in points]
    if any(len(p) != 3 for p in pts) or len(set(pts)) != len(pts):
        return False
    if any(collinear(*t) for t in combinations(pts, 3)):
        return False

    def conic_row(v):
        a, b, c = v
        return [a * a, a * b, a * c, b * b, b * c, c * c]

    return all(_det([conic_row(v) for v in six]) != 0 for six in combinations(pts, 6))


def _coord_out(c: Fraction):
    return c.numerator if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def point_set_to_json(x: PointSet) -> dict:
    doc = {
        "dims": list(x.dims),
        "points": [[[_coord_out(c) for c in f] for f in p.coords] for p in x.points],
    }
    if x.labels:
        doc["labels"] = list(x.labels)
    return doc


def point_set_from_json(doc: dict) -> PointSet:
    if not isinstance(doc, dict) or "dims" not in doc or "points" not in doc:
        raise PointSetError("expected an object with 'dims' and 'points'")
    dims = doc["dims"]
    if not isinstance(dims, list) or not all(isinstance(n, int) and n >= 1 for n in dims):
        raise PointSetError(f"invalid dims {dims!r}")
    raw = doc["points"]
    if not isinstance(raw, list):
        raise PointSetError("'points' must be a list")
    for k, p in enumerate(raw):
        if not isinstance(p, list) or len(p) != len(dims):
            raise PointSetError(f"expected {len(dims)} factor vectors", k)
        for f, n in zip(p, dims):
            if not isinstance(f, list) or len(f) != n + 1:
                raise PointSetError(f"factor vector {f!r} should have {n + 1} entries", k)
    return PointSet.build(dims, raw, doc.get("labels"))


def load_point_set(path) -> PointSet:
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise PointSetError(f"malformed JSON: {exc}") from None
    return point_set_from_json(doc)


def dump_point_set(x: PointSet, path=None, indent: int | None = None) -> str:
    """JSON text of ``x``; with ``indent`` each point goes on its own line."""
    doc = point_set_to_json(x)
    if indent is None:
        text = json.dumps(doc)
    else:
        pad = " " * indent
        body = [f'{pad}"dims": {json.dumps(doc["dims"])}']
        pts = (",\n").join(f"{pad * 2}{json.dumps(p)}" for p in doc["points"])
        body.append(f'{pad}"points": [\n{pts}\n{pad}]')
        if "labels" in doc:
            body.append(f'{pad}"labels": {json.dumps(doc["labels"])}')
        text = "{\n" + ",\n".join(body) + "\n}"
    if path is not None:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    return text
