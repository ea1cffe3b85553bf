"""Separators: where H drops when one point is removed, and explicit forms.

Removing P from X lowers H by exactly 0 or 1 in every degree and the
degrees where it drops form an up-set D_S. Its minimal elements S are the
minimal degrees of separators of P, so deg_X(P) is read off from two
Hilbert functions rather than by searching for forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .depth import Form, QuotientRing, ideal_slice
from .hilbert import BoxInstabilityError, CoordinateRing, HilbertTable, _fill, _slice_stable, hilbert_table
from .linalg import QQ, in_span, kernel_basis
from .multidegree import UpSet, box_degrees, dominates, minimal_elements
from .points import PointSet

__all__ = [
    "DropLocus",
    "drop_locus",
    "SeparatorDegreeSet",
    "separator_degrees",
    "SeparatorForm",
    "minimal_separator",
    "same_modulo_ideal",
    "check_colon_property",
    "UniqueDegreeResult",
    "unique_degree_test",
    "separator_report",
]


class DichotomyError(RuntimeError):
    """H_X - H_Y left {0, 1} somewhere: the rank computations are inconsistent."""


@dataclass
class DropLocus:
    """The up-set where H_Y = H_X - 1, with both tables on the shared box."""

    point: int
    upset: UpSet
    box: tuple[int, ...]
    hx: np.ndarray
    hy: np.ndarray

    @property
    def generators(self) -> tuple[tuple[int, ...], ...]:
        return self.upset.generators


def _field_coords(p, field) -> list:
    return [[field(c) for c in f] for f in p.coords]


def _check_index(x: PointSet, k: int) -> None:
    if not 0 <= k < len(x):
        raise IndexError(f"point index {k} out of range for {len(x)} points")


def drop_locus(
    x: PointSet,
    k: int,
    field=QQ,
    box: Sequence[int] | None = None,
    hx: HilbertTable | None = None,
    max_growth: int = 8,
) -> DropLocus:
    """Compare H_X with H_Y, Y = X minus point ``k``.

    The box is X's stabilized box unless given. It is enlarged along any
    direction where Y's table is still changing or where a generator sits
    on the outer layer.
    """
    if len(x) < 1:
        raise ValueError("empty point set")
    _check_index(x, k)
    rx = CoordinateRing(x, field)
    ry = CoordinateRing(x.without(k), field)
    if box is None:
        hx = hx or hilbert_table(x, field=field, ring=rx, strict=True)
        box = hx.box
    box = list(box)
    for _ in range(max_growth + 1):
        vx, vy = _fill(rx, tuple(box)), _fill(ry, tuple(box))
        diff = vx - vy
        bad = np.argwhere((diff != 0) & (diff != 1))
        if len(bad):
            i = tuple(int(a) for a in bad[0])
            raise DichotomyError(f"H_X - H_Y = {diff[i]} at {i} for point {k}")
        gens = minimal_elements(tuple(int(a) for a in i) for i in np.argwhere(diff == 1))
        up = UpSet(gens)
        for i in box_degrees(tuple(box)):
            if (diff[i] == 1) != (i in up):
                raise DichotomyError(f"drop region is not an up-set at {i} for point {k}")
        grow = {j for g in gens for j in range(x.r) if g[j] == box[j]}
        grow |= {j for j in range(x.r) if not (_slice_stable(vy, j) and _slice_stable(vx, j))}
        if not grow:
            return DropLocus(k, up, tuple(box), vx, vy)
        for j in grow:
            box[j] += 1
    raise BoxInstabilityError(f"drop locus of point {k} did not settle within box {tuple(box)}")


@dataclass(frozen=True)
class SeparatorDegreeSet:
    """deg_X(P): the minimal degrees of separators of point ``point``."""

    point: int
    degrees: tuple[tuple[int, ...], ...]

    @property
    def is_unique(self) -> bool:
        return len(self.degrees) == 1

    def __contains__(self, alpha) -> bool:
        return tuple(alpha) in self.degrees


def separator_degrees(x: PointSet, k: int, field=QQ, hx: HilbertTable | None = None) -> SeparatorDegreeSet:
    loc = drop_locus(x, k, field, hx=hx)
    return SeparatorDegreeSet(k, loc.generators)


@dataclass(frozen=True)
class SeparatorForm:
    """A form vanishing on X minus P, scaled to take the value 1 at P.

    The value at P is taken at P's normalized coordinates (first nonzero
    entry of each factor equal to 1).
    """

    point: int
    form: Form

    @property
    def degree(self) -> tuple[int, ...]:
        return self.form.degree

    @property
    def coeffs(self) -> tuple:
        return self.form.coeffs

    def values(self, reps, field=QQ) -> list:
        return self.form.values(reps, field)

    def evaluate(self, x: PointSet, field=QQ) -> list:
        """Values at every point of ``x`` in normalized coordinates."""
        return self.form.values([_field_coords(p, field) for p in x.points], field)

    def to_json(self) -> dict:
        return {
            "point": self.point,
            "degree": list(self.degree),
            "coeffs": [str(c) for c in self.coeffs],
        }


def minimal_separator(x: PointSet, k: int, alpha: Sequence[int], field=QQ, reverse: bool = False) -> SeparatorForm:
    """A separator of point ``k`` of degree ``alpha`` in deg_X(P).

    It is taken from (I_Y)_alpha outside (I_X)_alpha. With ``reverse`` the
    kernel is computed with the monomial columns in reverse order, which
    gives an independently eliminated representative.
    """
    alpha = tuple(alpha)
    _check_index(x, k)
    degs = separator_degrees(x, k, field)
    if alpha not in degs:
        raise ValueError(f"{alpha} is not a minimal separator degree of point {k}; those are {list(degs.degrees)}")
    ring = CoordinateRing(x, field)
    mons, rows = ring.evaluation_rows(alpha)
    n = len(mons)
    perm = list(range(n))[::-1] if reverse else list(range(n))
    other = [[row[c] for c in perm] for t, row in enumerate(rows) if t != k]
    target = [rows[k][c] for c in perm]
    basis = kernel_basis(other, field, ncols=n) if other else [
        [1 if a == b else 0 for b in range(n)] for a in range(n)
    ]
    chosen = None
    for v in (reversed(basis) if reverse else basis):
        if sum(field(a) * b for a, b in zip(v, target)) != 0:
            chosen = v
            break
    if chosen is None:
        raise RuntimeError(f"no separator of degree {alpha} found for point {k}")
    coeffs = [0] * n
    for pos, c in enumerate(perm):
        coeffs[c] = field(chosen[pos])
    form = Form(alpha, coeffs, x.dims)
    at_p = form.values([_field_coords(x.points[k], field)], field)[0]
    inv = 1 / at_p if field.characteristic == 0 else pow(int(at_p), -1, field.p)
    scaled = [c * inv if field.characteristic == 0 else c * inv % field.p for c in coeffs]
    return SeparatorForm(k, Form(alpha, scaled, x.dims))


def same_modulo_ideal(f: SeparatorForm, g: SeparatorForm, x: PointSet, field=QQ) -> bool:
    """True when f - c g lies in (I_X)_alpha for some nonzero c.

    Both are normalized at the same point, so c = 1.
    """
    if f.degree != g.degree:
        return False
    diff = [field(a) - field(b) for a, b in zip(f.coeffs, g.coeffs)]
    if not any(diff):
        return True
    return in_span(diff, ideal_slice(x, f.degree, field).basis, field)


def check_colon_property(x: PointSet, k: int, f: SeparatorForm | Form, field=QQ, box: Sequence[int] | None = None) -> bool:
    """dim (I_X, F)_i = dim (I_X)_i + 1 for every box degree i ⪰ deg F.

    (I_X, F)_i / (I_X)_i is F * R_{i - deg F} evaluated on X, so the test is
    that this image is one-dimensional.
    """
    form = f.form if isinstance(f, SeparatorForm) else f
    ring = CoordinateRing(x, field)
    if box is None:
        box = tuple(b + 1 for b in hilbert_table(x, field=field, ring=ring, strict=True).box)
    quotient = QuotientRing(ring, [form])
    for i in box_degrees(tuple(box)):
        if dominates(i, form.degree) and quotient.image(i).dim != 1:
            return False
    return True


@dataclass(frozen=True)
class UniqueDegreeResult:
    """``kind`` is ``"AllUnique"`` or ``"Violation"``; a violation names the
    first point (by index) with more than one minimal separator degree."""

    kind: str
    point: int | None
    degrees: tuple | None
    all_degrees: tuple[SeparatorDegreeSet, ...]

    @property
    def all_unique(self) -> bool:
        return self.kind == "AllUnique"


def unique_degree_test(x: PointSet, field=QQ) -> UniqueDegreeResult:
    """AllUnique is necessary for ACM, not sufficient."""
    if len(x) < 1:
        raise ValueError("empty point set")
    hx = hilbert_table(x, field=field, strict=True)
    sets = tuple(separator_degrees(x, k, field, hx=hx) for k in range(len(x)))
    for s in sets:
        if not s.is_unique:
            return UniqueDegreeResult("Violation", s.point, s.degrees, sets)
    return UniqueDegreeResult("AllUnique", None, None, sets)


def separator_report(x: PointSet, field=QQ, points: Sequence[int] | None = None, with_forms: bool = False) -> dict:
    hx = hilbert_table(x, field=field, strict=True)
    out = []
    for k in (range(len(x)) if points is None else points):
        degs = separator_degrees(x, k, field, hx=hx)
        entry = {"index": k, "label": x.label(k), "degrees": [list(d) for d in degs.degrees]}
        if with_forms:
            entry["separators"] = [minimal_separator(x, k, a, field).to_json() for a in degs.degrees]
        out.append(entry)
    return {"npoints": len(x), "dims": list(x.dims), "points": out}
