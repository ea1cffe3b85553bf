"""Combinatorics of N^r: the product order, up-sets, monomial bases.

A multidegree is a plain tuple of nonnegative ints. A monomial is a tuple
of per-factor exponent tuples; in the full ring factor ``j`` has
``n_j + 1`` variables ``x_{j,0..n_j}``, in the reduced (artinian) ring it
has the ``n_j`` variables ``x_{j,1..n_j}``.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product
from math import comb, prod
from typing import Iterable, Iterator, Sequence

MultiDegree = tuple[int, ...]
Monomial = tuple[tuple[int, ...], ...]

__all__ = [
    "MultiDegree",
    "Monomial",
    "dominates",
    "meet",
    "join",
    "unit",
    "minimal_elements",
    "is_antichain",
    "UpSet",
    "dim_R",
    "exponent_vectors",
    "monomials_of_degree",
    "monomial_multidegree",
    "box_degrees",
    "MonomialIdeal",
    "monomial_ideal_hilbert",
]


def _check_same_length(a: Sequence[int], b: Sequence[int]) -> None:
    if len(a) != len(b):
        raise ValueError(f"multidegrees {tuple(a)} and {tuple(b)} have different lengths")


def dominates(a: Sequence[int], b: Sequence[int]) -> bool:
    """``a ⪰ b`` in the componentwise order."""
    _check_same_length(a, b)
    return all(x >= y for x, y in zip(a, b))


def meet(a: Sequence[int], b: Sequence[int]) -> MultiDegree:
    _check_same_length(a, b)
    return tuple(min(x, y) for x, y in zip(a, b))


def join(a: Sequence[int], b: Sequence[int]) -> MultiDegree:
    _check_same_length(a, b)
    return tuple(max(x, y) for x, y in zip(a, b))


def unit(r: int, j: int) -> MultiDegree:
    """The standard basis vector e_j of N^r (0-based ``j``)."""
    return tuple(1 if k == j else 0 for k in range(r))


def minimal_elements(s: Iterable[Sequence[int]]) -> list[MultiDegree]:
    """Minimal elements of a finite set, sorted lexicographically."""
    items = sorted({tuple(x) for x in s})
    out: list[MultiDegree] = []
    for a in items:
        # lex order: anything below a was already seen
        if not any(dominates(a, b) for b in out):
            out.append(a)
    return out


def is_antichain(s: Iterable[Sequence[int]]) -> bool:
    items = [tuple(x) for x in s]
    return all(
        not dominates(a, b)
        for k, a in enumerate(items)
        for m, b in enumerate(items)
        if k != m
    )


class UpSet:
    """The up-set D_S generated by an antichain S."""

    def __init__(self, generators: Iterable[Sequence[int]]):
        gens = sorted({tuple(g) for g in generators})
        if not is_antichain(gens):
            raise ValueError(f"generators {gens} are not an antichain")
        self.generators: tuple[MultiDegree, ...] = tuple(gens)

    def __contains__(self, i: Sequence[int]) -> bool:
        return any(dominates(i, g) for g in self.generators)

    def __eq__(self, other) -> bool:
        return isinstance(other, UpSet) and other.generators == self.generators

    def __hash__(self) -> int:
        return hash(self.generators)

    def __repr__(self) -> str:
        return f"UpSet({list(self.generators)})"


def dim_R(i: Sequence[int], dims: Sequence[int]) -> int:
    """dim_k R_i = prod_j C(i_j + n_j, n_j)."""
    _check_same_length(i, dims)
    return prod(comb(a + n, n) for a, n in zip(i, dims))


@lru_cache(maxsize=None)
def exponent_vectors(d: int, nvars: int) -> tuple[tuple[int, ...], ...]:
    """Exponent vectors of total degree ``d`` in ``nvars`` variables, lex descending."""
    if nvars == 0:
        return ((),) if d == 0 else ()
    if nvars == 1:
        return ((d,),)
    out = []
    for first in range(d, -1, -1):
        for rest in exponent_vectors(d - first, nvars - 1):
            out.append((first,) + rest)
    return tuple(out)


def monomials_of_degree(i: Sequence[int], dims: Sequence[int], reduced: bool = False) -> list[Monomial]:
    """All monomials of multidegree ``i``.

    Each factor is enumerated in lex order (``x_{j,0}`` largest) and factors
    are combined with the first factor varying slowest. With ``reduced`` the
    variables ``x_{j,0}`` are omitted.
    """
    _check_same_length(i, dims)
    per_factor = [exponent_vectors(a, n if reduced else n + 1) for a, n in zip(i, dims)]
    return [tuple(m) for m in product(*per_factor)]


def monomial_multidegree(m: Monomial) -> MultiDegree:
    return tuple(sum(e) for e in m)


def box_degrees(box: Sequence[int]) -> Iterator[MultiDegree]:
    """All multidegrees ``0 ⪯ i ⪯ box`` in lex order."""
    return product(*(range(b + 1) for b in box))


def _divides(g: Monomial, m: Monomial) -> bool:
    return all(a <= b for ga, ma in zip(g, m) for a, b in zip(ga, ma))


class MonomialIdeal:
    """A monomial ideal of the reduced ring k[x_{j,t} : 1 <= t <= n_j].

    Generators are stored as explicit monomials (per-factor exponent tuples
    of length ``n_j``).
    """

    def __init__(self, dims: Sequence[int], generators: Iterable[Monomial] = ()):
        self.dims = tuple(dims)
        gens = []
        for g in generators:
            g = tuple(tuple(e) for e in g)
            if len(g) != len(self.dims) or any(len(e) != n for e, n in zip(g, self.dims)):
                raise ValueError(f"generator {g} does not match dims {self.dims}")
            gens.append(g)
        self.generators = self._minimalize(gens)

    @staticmethod
    def _minimalize(gens: list[Monomial]) -> tuple[Monomial, ...]:
        out: list[Monomial] = []
        for g in sorted(set(gens), key=lambda m: (sum(map(sum, m)), m)):
            if not any(_divides(h, g) for h in out):
                out.append(g)
        return tuple(out)

    @classmethod
    def from_products(cls, dims: Sequence[int], terms: Iterable[Iterable[tuple]]) -> "MonomialIdeal":
        """Sum of products of power ideals.

        Each term is a list of ``(factor, power)`` or
        ``(factor, power, variables)`` entries meaning
        ``(x_{factor,v} : v in variables)^power``, with ``variables`` given
        as indices in ``1..n_factor`` (all of them by default). For example
        ``[[(0, 3)], [(1, 3)], [(0, 2), (1, 2)]]`` in dims ``(2, 2)`` is
        ``(x1,x2)^3 + (y1,y2)^3 + (x1,x2)^2 (y1,y2)^2``.
        """
        dims = tuple(dims)
        gens: list[Monomial] = []
        for term in terms:
            partial: list[list[list[int]]] = [[[0] * n for n in dims]]
            for entry in term:
                factor, power = entry[0], entry[1]
                variables = entry[2] if len(entry) > 2 else range(1, dims[factor] + 1)
                variables = list(variables)
                if any(not 1 <= v <= dims[factor] for v in variables):
                    raise ValueError(f"variable index out of range in {entry}")
                new = []
                for base in partial:
                    for ev in exponent_vectors(power, len(variables)):
                        m = [list(e) for e in base]
                        for v, a in zip(variables, ev):
                            m[factor][v - 1] += a
                        new.append(m)
                partial = new
            gens.extend(tuple(tuple(e) for e in m) for m in partial)
        return cls(dims, gens)

    def contains(self, m: Monomial) -> bool:
        return any(_divides(g, m) for g in self.generators)

    def hilbert(self, i: Sequence[int]) -> int:
        return monomial_ideal_hilbert(self, i)

    def __repr__(self) -> str:
        return f"MonomialIdeal(dims={self.dims}, ngens={len(self.generators)})"


def monomial_ideal_hilbert(ideal: MonomialIdeal, i: Sequence[int]) -> int:
    """dim_k (S/I)_i: monomials of degree ``i`` in the reduced ring outside ``I``."""
    return sum(
        1
        for m in monomials_of_degree(i, ideal.dims, reduced=True)
        if not ideal.contains(m)
    )
