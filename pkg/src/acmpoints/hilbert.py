"""Multigraded Hilbert functions of point sets and their first differences.

Two routes compute H_X(i):

* ``hilbert_value`` takes the rank of the evaluation matrix (points x
  monomials of degree i), which is the definition.
* ``CoordinateRing`` keeps the image V_i of R_i in F^|X| under evaluation
  and builds it recursively as V_i = sum_t x_{j,t} V_{i-e_j}, so every
  computation stays inside a space of dimension |X|. Tables use this route.
"""

from __future__ import annotations

import csv
import io
import json
import warnings
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

import numpy as np

from .linalg import QQ, Subspace, rank
from .multidegree import (
    MonomialIdeal,
    box_degrees,
    dominates,
    meet,
    minimal_elements,
    monomial_ideal_hilbert,
    monomials_of_degree,
)
from .points import PointSet, projection

__all__ = [
    "EvaluationMatrix",
    "evaluation_matrix",
    "hilbert_value",
    "CoordinateRing",
    "HilbertTable",
    "DeltaTable",
    "BoxInstabilityError",
    "hilbert_table",
    "delta_table",
    "delta_value",
    "ScreenResult",
    "quick_non_acm_test",
    "delta_screen",
    "verify_delta_against_monomial_ideal",
    "render_text",
    "render_csv",
    "table_to_json",
]


class BoxInstabilityError(RuntimeError):
    """The adaptive box hit its growth cap before the table stabilized."""


def _point_values(coords: Sequence[Sequence], monomials) -> list:
    row = []
    for m in monomials:
        v = 1
        for exps, f in zip(m, coords):
            for e, c in zip(exps, f):
                if e:
                    v *= c**e
        row.append(v)
    return row


@dataclass(frozen=True)
class EvaluationMatrix:
    degree: tuple[int, ...]
    monomials: list
    rows: list[list]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.monomials)


def evaluation_matrix(x: PointSet, i: Sequence[int], field=QQ) -> EvaluationMatrix:
    """Values of every monomial of degree ``i`` at the normalized points."""
    i = tuple(i)
    mons = monomials_of_degree(i, x.dims)
    rows = []
    for p in x.points:
        coords = [[field(c) for c in f] for f in p.coords]
        row = _point_values(coords, mons)
        if field.characteristic:
            row = [v % field.p for v in row]
        rows.append(row)
    return EvaluationMatrix(i, mons, rows)


def hilbert_value(x: PointSet, i: Sequence[int], field=QQ) -> int:
    """H_X(i) as the rank of the evaluation matrix."""
    if len(x) == 0:
        return 0
    return rank(evaluation_matrix(x, i, field).rows, field)


class CoordinateRing:
    """Graded pieces of R/I_X realized inside F^|X|.

    ``piece(i)`` is the span of the value vectors of all degree-``i``
    monomials. Points are represented by primitive integer vectors over QQ
    (any fixed scaling gives the same dimensions), and by their normalized
    coordinates reduced mod p over a prime field.
    """

    def __init__(self, x: PointSet, field=QQ):
        self.x = x
        self.field = field
        self.s = len(x)
        if field.characteristic == 0:
            self.reps = [p.integer_coords() for p in x.points]
        else:
            self.reps = [tuple(tuple(field(c) for c in f) for f in p.coords) for p in x.points]
            if len(set(self.reps)) != len(self.reps):
                raise ValueError(f"points collide modulo {field.p}")
        # coordinate value vectors: _coord[j][t][k] = x_{j,t}(P_k)
        self._coord = [
            [[rep[j][t] for rep in self.reps] for t in range(n + 1)]
            for j, n in enumerate(x.dims)
        ]
        self._pieces: dict[tuple[int, ...], Subspace] = {}

    @property
    def r(self) -> int:
        return self.x.r

    def coordinate_values(self, j: int, t: int) -> list:
        return self._coord[j][t]

    def piece(self, i: Sequence[int]) -> Subspace:
        i = tuple(i)
        cached = self._pieces.get(i)
        if cached is not None:
            return cached
        if not any(i):
            sub = Subspace(self.s, self.field, [[1] * self.s] if self.s else [])
        else:
            j = next(k for k, a in enumerate(i) if a)
            prev = self.piece(tuple(a - (k == j) for k, a in enumerate(i)))
            if prev.is_full:
                sub = prev
            else:
                sub = Subspace(self.s, self.field)
                for col in self._coord[j]:
                    sub.extend(prev.scaled(col))
                    if sub.is_full:
                        break
        self._pieces[i] = sub
        return sub

    def hilbert(self, i: Sequence[int]) -> int:
        if any(a < 0 for a in i):
            return 0
        return self.piece(i).dim

    def evaluation_rows(self, i: Sequence[int]) -> tuple[list, list[list]]:
        """Monomials of degree ``i`` and their values at this ring's point representatives."""
        mons = monomials_of_degree(tuple(i), self.x.dims)
        rows = [_point_values(rep, mons) for rep in self.reps]
        if self.field.characteristic:
            rows = [[v % self.field.p for v in row] for row in rows]
        return mons, rows


@dataclass
class HilbertTable:
    """H on the box {0..box_1} x ... x {0..box_r}.

    ``values[i]`` is H(i); ``stabilized[j]`` records that the last two
    slices in direction j agree.
    """

    box: tuple[int, ...]
    values: np.ndarray
    stabilized: tuple[bool, ...]
    npoints: int

    def __getitem__(self, i) -> int:
        return int(self.values[tuple(i)])

    @property
    def r(self) -> int:
        return len(self.box)

    @property
    def is_stabilized(self) -> bool:
        return all(self.stabilized) and self.values[self.box] == self.npoints

    def degrees(self):
        return box_degrees(self.box)

    def block(self, shape: Sequence[int]) -> list:
        """Leading sub-block as nested lists, e.g. ``block((4, 4))``."""
        return self.values[tuple(slice(0, k) for k in shape)].tolist()

    def stable_extent(self) -> tuple[int, ...]:
        """Per axis, the first index from which the table is constant."""
        out = []
        for j, b in enumerate(self.box):
            e = b
            while e > 0 and np.array_equal(
                np.take(self.values, e - 1, axis=j), np.take(self.values, b, axis=j)
            ):
                e -= 1
            out.append(e)
        return tuple(out)


@dataclass
class DeltaTable:
    box: tuple[int, ...]
    values: np.ndarray
    npoints: int

    def __getitem__(self, i) -> int:
        return int(self.values[tuple(i)])

    @property
    def r(self) -> int:
        return len(self.box)

    def degrees(self):
        return box_degrees(self.box)

    def block(self, shape: Sequence[int]) -> list:
        return self.values[tuple(slice(0, k) for k in shape)].tolist()

    def support_extent(self) -> tuple[int, ...]:
        """Per axis, the last index carrying a nonzero entry."""
        out = []
        for j in range(self.r):
            other = tuple(k for k in range(self.r) if k != j)
            nz = np.nonzero(np.any(self.values != 0, axis=other) if other else self.values != 0)[0]
            out.append(int(nz[-1]) if len(nz) else 0)
        return tuple(out)


def _fill(ring: CoordinateRing, box: tuple[int, ...]) -> np.ndarray:
    vals = np.zeros(tuple(b + 1 for b in box), dtype=np.int64)
    for i in box_degrees(box):
        vals[i] = ring.hilbert(i)
    return vals


def _slice_stable(vals: np.ndarray, j: int) -> bool:
    b = vals.shape[j] - 1
    if b == 0:
        return False
    return np.array_equal(np.take(vals, b, axis=j), np.take(vals, b - 1, axis=j))


def hilbert_table(
    x: PointSet,
    box: Sequence[int] | None = None,
    field=QQ,
    cap: Sequence[int] | None = None,
    ring: CoordinateRing | None = None,
    strict: bool = False,
) -> HilbertTable:
    """Hilbert function of ``x`` on an explicit or adaptive box.

    Without ``box`` the box starts at ``t_j + 1`` (``t_j = |π_j(X)|``) and
    grows in every direction whose last two slices still differ, up to
    ``cap`` (default ``|X| + 1`` per direction). An unstabilized result is
    flagged, warned about, and raised on when ``strict``.
    """
    ring = ring or CoordinateRing(x, field)
    n = len(x)
    if box is not None:
        box = tuple(int(b) for b in box)
        vals = _fill(ring, box)
        flags = tuple(_slice_stable(vals, j) for j in range(len(box)))
        return HilbertTable(box, vals, flags, n)

    r = x.r
    cap = tuple(cap) if cap is not None else (n + 1,) * r
    cur = [min(len(projection(x, j)) + 1, cap[j]) if n else 1 for j in range(r)]
    while True:
        vals = _fill(ring, tuple(cur))
        flags = [_slice_stable(vals, j) for j in range(r)]
        corner_ok = vals[tuple(cur)] == n
        if all(flags) and corner_ok:
            break
        grow = [j for j in range(r) if not flags[j]] or list(range(r))
        grow = [j for j in grow if cur[j] < cap[j]]
        if not grow:
            break
        for j in grow:
            cur[j] += 1
    table = HilbertTable(tuple(cur), vals, tuple(flags), n)
    if not table.is_stabilized:
        msg = f"Hilbert table of {x!r} did not stabilize within cap {cap}"
        if strict:
            raise BoxInstabilityError(msg)
        warnings.warn(msg, RuntimeWarning, stacklevel=2)
    return table


def delta_value(h, i: Sequence[int]) -> int:
    """ΔH(i) by the alternating sum over the unit cube below ``i``.

    ``h`` is any callable or table indexed by multidegrees; entries with a
    negative coordinate count as 0.
    """
    get = h if callable(h) else (lambda j: h[j])
    total = 0
    for l in product((0, 1), repeat=len(i)):
        j = tuple(a - b for a, b in zip(i, l))
        if min(j) < 0:
            continue
        total += (-1) ** sum(l) * get(j)
    return total


def delta_table(h: HilbertTable) -> DeltaTable:
    vals = h.values
    for axis in range(vals.ndim):
        vals = np.diff(vals, axis=axis, prepend=0)
    return DeltaTable(h.box, vals, h.npoints)


@dataclass(frozen=True)
class ScreenResult:
    """Outcome of a Hilbert-function screen.

    ``kind`` is one of ``"NotACM"``, ``"Inconclusive"`` (meet test) or
    ``"Negative"``, ``"SupportViolation"``, ``"Passes"`` (ΔH screen).
    """

    kind: str
    witness: tuple | None = None

    @property
    def rules_out_acm(self) -> bool:
        return self.kind in ("NotACM", "Negative", "SupportViolation")


def quick_non_acm_test(h: HilbertTable) -> ScreenResult:
    """Look for i, j with H(i) = H(j) = |X| but H(min(i, j)) != |X|.

    The set {H = |X|} is an up-set, so such a pair exists exactly when it
    has two or more minimal elements. The reported pair is the one whose
    meet has the smallest total degree, larger degree first.
    """
    full = [i for i in h.degrees() if h[i] == h.npoints]
    mins = minimal_elements(full)
    best = None
    for a_idx, a in enumerate(mins):
        for b in mins[a_idx + 1:]:
            k = meet(a, b)
            if h[k] == h.npoints:
                continue
            key = (sum(k), k, a, b)
            if best is None or key < best[0]:
                best = (key, (b, a))
    if best is None:
        return ScreenResult("Inconclusive")
    return ScreenResult("NotACM", best[1])


def delta_screen(d: DeltaTable) -> ScreenResult:
    """Necessary conditions for ΔH to be an artinian Hilbert function.

    Negative entries fail outright; otherwise a zero entry must have only
    zeros above it. ``Passes`` is not an ACM certificate.
    """
    degs = list(d.degrees())
    for i in degs:
        if d[i] < 0:
            return ScreenResult("Negative", i)
    for i in degs:
        if d[i] != 0:
            continue
        for j in degs:
            if j != i and d[j] != 0 and dominates(j, i):
                return ScreenResult("SupportViolation", (i, j))
    return ScreenResult("Passes")


def verify_delta_against_monomial_ideal(d: DeltaTable, ideal: MonomialIdeal) -> bool:
    return all(d[i] == monomial_ideal_hilbert(ideal, i) for i in d.degrees())


def _render_matrix(mat: np.ndarray, more_rows: bool, more_cols: bool) -> list[str]:
    cells = [[str(int(v)) for v in row] for row in mat]
    if more_cols:
        cells = [row + ["⋯"] for row in cells]
    if more_rows:
        cells.append(["⋮"] * mat.shape[1] + (["⋱"] if more_cols else []))
    width = max(len(c) for row in cells for c in row)
    return [" ".join(c.rjust(width) for c in row).rstrip() for row in cells]


def render_text(table: HilbertTable | DeltaTable, extent: Sequence[int] | None = None) -> str:
    """Text matrix: entry (i, j) in row i, column j, from (0, 0).

    Shows indices ``0..extent_j`` with a trailing ⋯/⋮ when more of the
    (constant) table follows. The default extent is one guard index past
    the point where a Hilbert table becomes constant, or past the last
    nonzero entry of a ΔH table.
    """
    if extent is None:
        if isinstance(table, HilbertTable):
            extent = tuple(e + 1 for e in table.stable_extent())
        else:
            extent = tuple(e + 1 for e in table.support_extent())
    extent = tuple(min(e, b) for e, b in zip(extent, table.box))
    vals = table.values[tuple(slice(0, e + 1) for e in extent)]
    r = table.r
    if r == 1:
        return _render_matrix(vals.reshape(1, -1), False, True)[0] + "\n"
    if r == 2:
        return "\n".join(_render_matrix(vals, True, True)) + "\n"
    blocks = []
    for lead in product(*(range(e + 1) for e in extent[:-2])):
        head = ", ".join(f"i{k + 1}={v}" for k, v in enumerate(lead))
        blocks.append(f"[{head}]")
        blocks.extend(_render_matrix(vals[lead], True, True))
    return "\n".join(blocks) + "\n"


def render_csv(table: HilbertTable | DeltaTable) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([f"i{k + 1}" for k in range(table.r)] + ["value"])
    for i in table.degrees():
        w.writerow(list(i) + [table[i]])
    return buf.getvalue()


def table_to_json(table: HilbertTable | DeltaTable) -> dict:
    doc = {"box": list(table.box), "values": table.values.tolist(), "npoints": table.npoints}
    if isinstance(table, HilbertTable):
        doc["stabilized"] = list(table.stabilized)
        doc["kind"] = "hilbert"
    else:
        doc["kind"] = "delta"
    return doc


def dumps(doc: dict) -> str:
    def default(o):
        if isinstance(o, Fraction):
            return str(o)
        if isinstance(o, np.integer):
            return int(o)
        raise TypeError(type(o))

    return json.dumps(doc, default=default)
