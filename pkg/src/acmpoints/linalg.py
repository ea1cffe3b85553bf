"""Exact dense linear algebra over the rationals and prime fields.

Matrices are plain lists of rows. Over ``QQ`` entries are ``Fraction``
(integers are accepted and promoted); over ``GF(p)`` entries are ints
reduced into ``[0, p)``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

__all__ = [
    "QQ",
    "GF",
    "RationalField",
    "PrimeField",
    "field_from_name",
    "is_prime",
    "rank",
    "rref",
    "kernel_basis",
    "in_span",
    "mat_vec",
    "transpose",
    "Subspace",
]


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class RationalField:
    """The field of rational numbers, elements are ``Fraction``."""

    characteristic = 0
    name = "QQ"

    def __call__(self, x) -> Fraction:
        if isinstance(x, str):
            x = x.strip()
        return Fraction(x)

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def __repr__(self) -> str:
        return "QQ"

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("QQ")


class PrimeField:
    """The prime field F_p, elements are ints in ``[0, p)``."""

    def __init__(self, p: int):
        p = int(p)
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.name = f"GF({p})"

    def __call__(self, x) -> int:
        if isinstance(x, int):
            return x % self.p
        q = Fraction(x.strip() if isinstance(x, str) else x)
        den = q.denominator % self.p
        if den == 0:
            raise ZeroDivisionError(f"denominator of {q} vanishes mod {self.p}")
        return q.numerator * pow(den, -1, self.p) % self.p

    def zero(self):
        return 0

    def one(self):
        return 1

    def __repr__(self) -> str:
        return self.name

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("GF", self.p))


QQ = RationalField()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_name(name: str):
    """Parse ``"QQ"``, ``"Q"``, ``"rational"``, ``"65521"`` or ``"GF(65521)"``."""
    s = name.strip().lower()
    if s in ("qq", "q", "rational", "rationals"):
        return QQ
    if s.startswith("gf(") and s.endswith(")"):
        s = s[3:-1]
    elif s.startswith("f") and s[1:].isdigit():
        s = s[1:]
    if not s.isdigit():
        raise ValueError(f"unknown field {name!r}")
    return PrimeField(int(s))


def _is_qq(field) -> bool:
    return field.characteristic == 0


def _integer_row(row: Sequence) -> list[int]:
    """Scale a rational row to an integer row with the same span."""
    dens = [Fraction(a).denominator for a in row]
    m = lcm(*dens) if dens else 1
    return [int(Fraction(a) * m) for a in row]


def transpose(m: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*m)]


def mat_vec(m: Sequence[Sequence], v: Sequence, field=QQ) -> list:
    if _is_qq(field):
        return [sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in m]
    p = field.p
    return [sum(a * b for a, b in zip(row, v)) % p for row in m]


def _bareiss_rank(rows: list[list[int]]) -> int:
    """Fraction-free elimination; every division is exact."""
    a = [r[:] for r in rows]
    nrows = len(a)
    if nrows == 0:
        return 0
    ncols = len(a[0])
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        pr = a[r]
        pv = pr[c]
        for i in range(r + 1, nrows):
            ri = a[i]
            f = ri[c]
            if f == 0:
                for j in range(c + 1, ncols):
                    ri[j] = pv * ri[j] // prev
            else:
                for j in range(c + 1, ncols):
                    ri[j] = (pv * ri[j] - f * pr[j]) // prev
            ri[c] = 0
        prev = pv
        r += 1
    return r


def _modp_rank(rows: list[list[int]], p: int) -> int:
    a = [[x % p for x in r] for r in rows]
    nrows = len(a)
    if nrows == 0:
        return 0
    ncols = len(a[0])
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = pow(a[r][c], -1, p)
        pr = [x * inv % p for x in a[r]]
        a[r] = pr
        for i in range(r + 1, nrows):
            f = a[i][c]
            if f:
                ri = a[i]
                for j in range(c, ncols):
                    ri[j] = (ri[j] - f * pr[j]) % p
        r += 1
    return r


def rank(m: Sequence[Sequence], field=QQ) -> int:
    """Rank of ``m`` over ``field``. The input is not modified."""
    rows = [list(r) for r in m]
    if not rows or not rows[0]:
        return 0
    if _is_qq(field):
        return _bareiss_rank([_integer_row(r) for r in rows])
    return _modp_rank([[field(x) for x in r] for r in rows], field.p)


def rref(m: Sequence[Sequence], field=QQ) -> tuple[list[list], list[int]]:
    """Reduced row echelon form and pivot columns.

    Pivots are chosen as the first nonzero entry in column order. Zero rows
    are dropped from the returned matrix.
    """
    qq = _is_qq(field)
    a = [[field(x) for x in r] for r in m]
    if not a:
        return [], []
    ncols = len(a[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(a):
            break
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        if qq:
            inv = 1 / a[r][c]
            pr = [x * inv for x in a[r]]
        else:
            p = field.p
            inv = pow(a[r][c], -1, p)
            pr = [x * inv % p for x in a[r]]
        a[r] = pr
        for i in range(len(a)):
            if i == r:
                continue
            f = a[i][c]
            if f != 0:
                ri = a[i]
                if qq:
                    for j in range(c, ncols):
                        if pr[j] != 0:
                            ri[j] -= f * pr[j]
                else:
                    for j in range(c, ncols):
                        if pr[j]:
                            ri[j] = (ri[j] - f * pr[j]) % p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def kernel_basis(m: Sequence[Sequence], field=QQ, ncols: int | None = None) -> list[list]:
    """Basis of the right null space ``{v : m v = 0}``.

    One vector per free column of the reduced echelon form, with a 1 in that
    column. ``ncols`` is needed only when ``m`` has no rows.
    """
    rows = [list(r) for r in m]
    if ncols is None:
        if not rows:
            raise ValueError("ncols required for a matrix with no rows")
        ncols = len(rows[0])
    red, pivots = rref(rows, field)
    zero, one = field.zero(), field.one()
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        v = [zero] * ncols
        v[f] = one
        for row, pc in zip(red, pivots):
            if row[f] != 0:
                v[pc] = -row[f] if _is_qq(field) else (-row[f]) % field.p
        basis.append(v)
    return basis


def in_span(v: Sequence, basis: Sequence[Sequence], field=QQ) -> bool:
    """True iff ``v`` lies in the span of ``basis``."""
    if all(field(x) == 0 for x in v):
        return True
    if not basis:
        return False
    sub = Subspace(len(v), field, basis)
    return sub.contains(v)


class Subspace:
    """A subspace of F^n kept as a row-echelon basis.

    Over QQ the rows are primitive integer vectors with positive pivot and
    reduction is fraction-free; over GF(p) the pivots are normalized to 1.
    """

    __slots__ = ("n", "field", "_rows", "_order")

    def __init__(self, n: int, field=QQ, vectors: Iterable[Sequence] = ()):
        self.n = n
        self.field = field
        self._rows: dict[int, list[int]] = {}
        self._order: list[int] = []
        for v in vectors:
            self.add(v)

    @classmethod
    def full(cls, n: int, field=QQ) -> "Subspace":
        sub = cls(n, field)
        for k in range(n):
            row = [0] * n
            row[k] = 1
            sub._rows[k] = row
        sub._order = list(range(n))
        return sub

    def copy(self) -> "Subspace":
        out = Subspace(self.n, self.field)
        out._rows = dict(self._rows)
        out._order = list(self._order)
        return out

    @property
    def dim(self) -> int:
        return len(self._rows)

    def __len__(self) -> int:
        return len(self._rows)

    @property
    def is_full(self) -> bool:
        return len(self._rows) == self.n

    @property
    def basis(self) -> list[list[int]]:
        return [self._rows[p] for p in self._order]

    def _coerce(self, v: Sequence) -> list[int]:
        if _is_qq(self.field):
            if all(type(a) is int for a in v):
                return list(v)
            return _integer_row(v)
        p = self.field.p
        return [self.field(a) if type(a) is not int else a % p for a in v]

    def _reduce(self, w: list[int]) -> list[int]:
        if _is_qq(self.field):
            for piv in self._order:
                c = w[piv]
                if c:
                    row = self._rows[piv]
                    pv = row[piv]
                    w = [pv * a - c * b for a, b in zip(w, row)]
                    g = 0
                    for a in w:
                        if a:
                            g = gcd(g, a)
                            if g == 1:
                                break
                    if g > 1:
                        w = [a // g for a in w]
            return w
        p = self.field.p
        for piv in self._order:
            c = w[piv]
            if c:
                row = self._rows[piv]
                w = [(a - c * b) % p for a, b in zip(w, row)]
        return w

    def add(self, v: Sequence) -> bool:
        """Insert ``v``; return True if it enlarged the subspace."""
        if len(self._rows) == self.n:
            return False
        w = self._reduce(self._coerce(v))
        lead = next((k for k, a in enumerate(w) if a), None)
        if lead is None:
            return False
        if _is_qq(self.field):
            g = 0
            for a in w:
                g = gcd(g, a)
            if w[lead] < 0:
                g = -g
            w = [a // g for a in w]
        else:
            p = self.field.p
            inv = pow(w[lead], -1, p)
            w = [a * inv % p for a in w]
        self._rows[lead] = w
        # keep pivot order sorted so reduction sweeps left to right
        lo, hi = 0, len(self._order)
        while lo < hi:
            mid = (lo + hi) // 2
            if self._order[mid] < lead:
                lo = mid + 1
            else:
                hi = mid
        self._order.insert(lo, lead)
        return True

    def extend(self, vectors: Iterable[Sequence]) -> "Subspace":
        for v in vectors:
            if self.is_full:
                break
            self.add(v)
        return self

    def contains(self, v: Sequence) -> bool:
        if self.is_full:
            return True
        w = self._reduce(self._coerce(v))
        return not any(w)

    def __add__(self, other: "Subspace") -> "Subspace":
        out = self.copy()
        return out.extend(other.basis)

    def scaled(self, diag: Sequence) -> list[list]:
        """Images of the basis vectors under the diagonal map ``diag``."""
        if _is_qq(self.field):
            return [[a * d for a, d in zip(row, diag)] for row in self.basis]
        p = self.field.p
        return [[a * d % p for a, d in zip(row, diag)] for row in self.basis]

    def preimage_under_diagonal(self, diag: Sequence) -> "Subspace":
        """``{v : diag * v in self}`` for an invertible diagonal map."""
        if _is_qq(self.field):
            inv = [1 / Fraction(d) for d in diag]
        else:
            p = self.field.p
            inv = [pow(d, -1, p) for d in diag]
        return Subspace(self.n, self.field, self.scaled(inv))

    def intersection_dim(self, other: "Subspace") -> int:
        return self.dim + other.dim - (self + other).dim

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, n={self.n}, field={self.field!r})"
