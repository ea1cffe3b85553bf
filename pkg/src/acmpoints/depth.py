"""Depth of R/I_X by regular-sequence search, and the ACM decision.

For J = I_X + (F_1, ..., F_k) the image of J_i in evaluation space is
W_i = sum_m F_m * V_{i - deg F_m}, so dim (R/J)_i = dim V_i - dim W_i with
everything living in F^|X|. Multiplication by a form F of degree d maps
(R/J)_i -> (R/J)_{i+d}; its kernel is measured both from the exact
sequence (alternating sum of Hilbert functions) and directly.

If X is ACM then R/J_k stays Cohen-Macaulay and its associated primes
contain no full R_{e_{k+1}}, so *every* sequence of linear forms that is
nonvanishing on the matching projections is regular. A nonzero kernel at
any stage therefore certifies that X is not ACM.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence

from .hilbert import (
    CoordinateRing,
    _point_values,
    delta_screen,
    delta_table,
    hilbert_table,
    quick_non_acm_test,
)
from .linalg import QQ, Subspace, kernel_basis
from .multidegree import box_degrees, dim_R, monomials_of_degree, unit
from .points import PointSet, projection, star_witness

__all__ = [
    "LinearForm",
    "Form",
    "QuotientRing",
    "DegreeSlice",
    "ideal_slice",
    "extended_slice",
    "multiplication_kernel_dim",
    "kernel_dim_direct",
    "random_linear_form",
    "StageFailure",
    "DepthReport",
    "compute_depth",
    "AcmVerdict",
    "is_acm",
    "COEFF_BOUND",
]

COEFF_BOUND = 10**6


def _coeffs(coeffs, field) -> list:
    # keep integer coefficients as ints over QQ so evaluation stays fraction-free
    if field.characteristic == 0:
        return [a if type(a) is int else Fraction(a) for a in coeffs]
    return [field(a) for a in coeffs]


@dataclass(frozen=True)
class LinearForm:
    """sum_t coeffs[t] * x_{factor,t}, of degree e_factor in N^r."""

    factor: int
    coeffs: tuple
    r: int

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if not any(self.coeffs):
            raise ValueError("linear form must be nonzero")
        if not 0 <= self.factor < self.r:
            raise ValueError(f"factor {self.factor} out of range for r={self.r}")

    @property
    def degree(self) -> tuple[int, ...]:
        return unit(self.r, self.factor)

    def values(self, reps: Sequence, field=QQ) -> list:
        j = self.factor
        c = _coeffs(self.coeffs, field)
        vals = [sum(a * b for a, b in zip(c, rep[j])) for rep in reps]
        if field.characteristic:
            vals = [v % field.p for v in vals]
        return vals

    def at(self, point, field=QQ):
        return self.values([[[field(c) for c in f] for f in point.coords]], field)[0]

    def to_json(self) -> dict:
        return {"factor": self.factor, "coeffs": [str(Fraction(c)) if isinstance(c, Fraction) else c for c in self.coeffs]}


@dataclass(frozen=True)
class Form:
    """A multihomogeneous form: coefficients over ``monomials_of_degree(degree, dims)``."""

    degree: tuple[int, ...]
    coeffs: tuple
    dims: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        object.__setattr__(self, "degree", tuple(self.degree))
        if len(self.coeffs) != dim_R(self.degree, self.dims):
            raise ValueError("coefficient vector does not match the degree")

    def values(self, reps: Sequence, field=QQ) -> list:
        mons = monomials_of_degree(self.degree, self.dims)
        c = _coeffs(self.coeffs, field)
        out = []
        for rep in reps:
            v = sum(a * b for a, b in zip(c, _point_values(rep, mons)) if a)
            out.append(v % field.p if field.characteristic else v)
        return out

    def at(self, point, field=QQ):
        return self.values([[[field(c) for c in f] for f in point.coords]], field)[0]


class QuotientRing:
    """R/J for J = I_X + (forms), graded pieces computed in evaluation space."""

    def __init__(self, ring: CoordinateRing, forms: Sequence = (), _parent: "QuotientRing | None" = None):
        self.ring = ring
        self.forms = tuple(forms)
        self._parent = _parent
        self._diag = [ring_values(ring, f) for f in self.forms]
        self._images: dict[tuple[int, ...], Subspace] = {}

    @property
    def x(self) -> PointSet:
        return self.ring.x

    def extend(self, form) -> "QuotientRing":
        return QuotientRing(self.ring, self.forms + (form,), _parent=self)

    def image(self, i: Sequence[int]) -> Subspace:
        """W_i, the image of J_i in F^|X| (contains (I_X)_i as zero)."""
        i = tuple(i)
        cached = self._images.get(i)
        if cached is not None:
            return cached
        field = self.ring.field
        if not self.forms:
            sub = Subspace(self.ring.s, field)
        else:
            if self._parent is not None:
                sub = self._parent.image(i).copy()
                todo = [(self.forms[-1], self._diag[-1])]
            else:
                sub = Subspace(self.ring.s, field)
                todo = list(zip(self.forms, self._diag))
            for f, diag in todo:
                if sub.is_full:
                    break
                lower = tuple(a - b for a, b in zip(i, f.degree))
                if min(lower) < 0:
                    continue
                sub.extend(self.ring.piece(lower).scaled(diag))
        self._images[i] = sub
        return sub

    def hilbert(self, i: Sequence[int]) -> int:
        if min(i) < 0:
            return 0
        return self.ring.hilbert(i) - self.image(i).dim

    def ideal_dim(self, i: Sequence[int]) -> int:
        return dim_R(i, self.x.dims) - self.hilbert(i)


def ring_values(ring: CoordinateRing, form) -> list:
    return form.values(ring.reps, ring.field)


@dataclass
class DegreeSlice:
    """Basis of the degree-``degree`` piece of an ideal, in monomial coordinates."""

    degree: tuple[int, ...]
    monomials: list
    basis: list[list]

    @property
    def dim(self) -> int:
        return len(self.basis)


def ideal_slice(x: PointSet, i: Sequence[int], field=QQ) -> DegreeSlice:
    """(I_X)_i as the kernel of the evaluation matrix."""
    ring = CoordinateRing(x, field)
    mons, rows = ring.evaluation_rows(i)
    return DegreeSlice(tuple(i), mons, kernel_basis(rows, field, ncols=len(mons)))


def extended_slice(x: PointSet, forms: Sequence, i: Sequence[int], field=QQ) -> DegreeSlice:
    """(J)_i for J = I_X + (forms): all c with E c in W_i."""
    i = tuple(i)
    ring = CoordinateRing(x, field)
    mons, rows = ring.evaluation_rows(i)
    if not forms:
        return DegreeSlice(i, mons, kernel_basis(rows, field, ncols=len(mons)))
    w = QuotientRing(ring, forms).image(i)
    # functionals vanishing on W cut out J_i inside R_i
    annihilators = kernel_basis(w.basis, field, ncols=ring.s) if w.dim else [
        [1 if a == b else 0 for b in range(ring.s)] for a in range(ring.s)
    ]
    constraint = []
    for a in annihilators:
        constraint.append([
            sum(ak * rows[k][col] for k, ak in enumerate(a) if ak) for col in range(len(mons))
        ])
    if not constraint:
        basis = [[1 if a == b else 0 for b in range(len(mons))] for a in range(len(mons))]
    else:
        basis = kernel_basis(constraint, field, ncols=len(mons))
    return DegreeSlice(i, mons, basis)


def multiplication_kernel_dim(J: QuotientRing, form, i: Sequence[int], extended: QuotientRing | None = None) -> int:
    """dim ker(x F : (R/J)_i -> (R/J)_{i+d}) from the exact sequence

    0 -> ker -> (R/J)_i -> (R/J)_{i+d} -> (R/(J,F))_{i+d} -> 0.
    """
    JF = extended if extended is not None else J.extend(form)
    up = tuple(a + b for a, b in zip(i, form.degree))
    k = J.hilbert(i) - J.hilbert(up) + JF.hilbert(up)
    if k < 0:
        raise RuntimeError(f"negative kernel dimension {k} at {tuple(i)}: rank inconsistency")
    return k


def kernel_dim_direct(J: QuotientRing, form, i: Sequence[int]) -> int:
    """Same kernel, computed as (V_i ∩ F^{-1} W_{i+d}) / W_i. Requires F nonvanishing on X."""
    up = tuple(a + b for a, b in zip(i, form.degree))
    diag = ring_values(J.ring, form)
    if any(v == 0 for v in diag):
        raise ValueError("direct kernel needs a form that vanishes at no point")
    pre = J.image(up).preimage_under_diagonal(diag)
    return J.ring.piece(i).intersection_dim(pre) - J.image(i).dim


def random_linear_form(x: PointSet, factor: int, rng: random.Random, field=QQ, bound: int = COEFF_BOUND) -> LinearForm:
    """Uniform integer coefficients in [-bound, bound], resampled until the
    form vanishes at no coordinate of π_factor(X)."""
    n = x.dims[factor]
    targets = projection(x, factor)
    while True:
        coeffs = tuple(rng.randint(-bound, bound) for _ in range(n + 1))
        if not any(coeffs):
            continue
        form = LinearForm(factor, coeffs, x.r)
        vals = form.values([[None] * factor + [[field(c) for c in q]] for q in targets], field)
        if all(v != 0 for v in vals):
            return form


@dataclass
class StageFailure:
    stage: int
    form: LinearForm
    kernel: dict[tuple[int, ...], int]

    def to_json(self) -> dict:
        return {
            "stage": self.stage + 1,
            "form": self.form.to_json(),
            "kernel_dims": [{"degree": list(i), "dim": k} for i, k in sorted(self.kernel.items())],
        }


@dataclass
class DepthReport:
    """Depth found by the stage-by-stage search.

    ``exact`` is False only when the search stopped before stage r - 1,
    where a lower depth is likely but not proven.
    """

    depth: int
    r: int
    sequence: list[LinearForm]
    trials: int
    failures: list[StageFailure]
    box: tuple[int, ...]
    seed: int | None
    field: str
    exact: bool
    quotients: list[QuotientRing] = dc_field(default_factory=list, repr=False)

    @property
    def acm(self) -> bool:
        return self.depth == self.r

    @property
    def projective_dimension(self) -> int:
        """pd R/I_X = (number of variables) - depth."""
        return sum(n + 1 for n in self.quotients[0].x.dims) - self.depth if self.quotients else -1

    def to_json(self) -> dict:
        return {
            "depth": self.depth,
            "r": self.r,
            "acm": self.acm,
            "exact": self.exact,
            "sequence": [f.to_json() for f in self.sequence],
            "trials": self.trials,
            "failures": [f.to_json() for f in self.failures],
            "box": list(self.box),
            "seed": self.seed,
            "field": self.field,
        }


def _stage_kernel(J: QuotientRing, JL: QuotientRing, form, box) -> dict:
    bad = {}
    for i in box_degrees(box):
        k = multiplication_kernel_dim(J, form, i, extended=JL)
        if k:
            bad[i] = k
    return bad


def compute_depth(x: PointSet, trials: int = 5, seed: int | None = 0, field=QQ, box: Sequence[int] | None = None) -> DepthReport:
    """Search for a regular sequence L_1, ..., L_r with deg L_k = e_k.

    Stage k draws random forms in factor k that vanish at no point and
    accepts the first whose multiplication map has zero kernel at every
    degree of the box; ``trials`` draws are allowed per stage.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if len(x) == 0:
        raise ValueError("empty point set")
    ring = CoordinateRing(x, field)
    if box is None:
        box = hilbert_table(x, field=field, ring=ring, strict=True).box
    box = tuple(box)
    rng = random.Random(seed)
    J = QuotientRing(ring)
    quotients = [J]
    sequence: list[LinearForm] = []
    failures: list[StageFailure] = []
    for k in range(x.r):
        for _ in range(trials):
            L = random_linear_form(x, k, rng, field)
            JL = J.extend(L)
            bad = _stage_kernel(J, JL, L, box)
            if not bad:
                sequence.append(L)
                J = JL
                quotients.append(J)
                break
            failures.append(StageFailure(k, L, bad))
        else:
            break
    depth = len(sequence)
    exact = depth >= x.r - 1
    return DepthReport(depth, x.r, sequence, trials, failures, box, seed, repr(field), exact, quotients)


@dataclass
class AcmVerdict:
    """``status`` is ``"ACM"``, ``"NotACM"`` or ``"ProbablyNotACM"``.

    ``reason`` names the criterion that decided it; ``evidence`` carries the
    witness data for that criterion.
    """

    status: str
    reason: str
    evidence: dict
    depth: DepthReport | None = None

    @property
    def acm(self) -> bool:
        return self.status == "ACM"

    def to_json(self) -> dict:
        doc = {"status": self.status, "reason": self.reason, "evidence": self.evidence}
        if self.depth is not None:
            doc["depth"] = self.depth.to_json()
        return doc


STAR_REASON = "property (*) in P^1 x P^n (or P^n x P^1) implies ACM"
MEET_REASON = "H_X reaches |X| at i and j but not at min(i, j)"
DELTA_REASON = "first difference of H_X is not the Hilbert function of an artinian quotient"
DEPTH_ACM_REASON = "regular sequence of linear forms of length r found"
DEPTH_NOT_REASON = "a linear form nonvanishing on X is a zero divisor modulo the earlier forms"


def is_acm(x: PointSet, trials: int = 5, seed: int | None = 0, field=QQ, shortcuts: bool = True, with_depth: bool = False) -> AcmVerdict:
    """Decide ACM: geometric shortcut, Hilbert-function screens, then depth.

    With ``with_depth`` the depth search runs even when an earlier step
    already decided, and its report is attached.
    """
    depth = compute_depth(x, trials, seed, field) if with_depth else None
    verdict = None
    star = None
    if x.r == 2 and 1 in x.dims:
        star = star_evidence(x)
        if shortcuts and star["property_star"]:
            verdict = AcmVerdict("ACM", STAR_REASON, dict(star), depth)
    if verdict is None and shortcuts:
        h = hilbert_table(x, field=field, strict=True)
        quick = quick_non_acm_test(h)
        if quick.rules_out_acm:
            verdict = AcmVerdict("NotACM", MEET_REASON, {"degrees": [list(d) for d in quick.witness]}, depth)
        else:
            screen = delta_screen(delta_table(h))
            if screen.rules_out_acm:
                w = screen.witness
                ev = {"kind": screen.kind}
                ev["degrees"] = [list(w)] if screen.kind == "Negative" else [list(d) for d in w]
                verdict = AcmVerdict("NotACM", DELTA_REASON, ev, depth)
    if verdict is None:
        if depth is None:
            depth = compute_depth(x, trials, seed, field)
        if depth.acm:
            verdict = AcmVerdict("ACM", DEPTH_ACM_REASON, {"depth": depth.depth}, depth)
        else:
            status = "NotACM" if field.characteristic == 0 else "ProbablyNotACM"
            verdict = AcmVerdict(status, DEPTH_NOT_REASON, {"depth": depth.depth, "stage": depth.depth + 1}, depth)
    if star is not None and not star["property_star"]:
        # informational in P^1 x P^n; decisive only in P^1 x P^1
        verdict.evidence.setdefault("star_witness", star["witness"])
    if depth is not None and depth.acm != verdict.acm and field.characteristic == 0:
        raise RuntimeError(f"depth {depth.depth} contradicts verdict {verdict.status}")
    return verdict


def star_evidence(x: PointSet) -> dict:
    w = star_witness(x)
    return {"property_star": w is None, "witness": None if w is None else [x.label(k) for k in w]}
