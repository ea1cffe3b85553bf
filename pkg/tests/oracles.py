"""Slow, independent reference computations used only by the tests.

Nothing here imports the package's linear algebra or monomial code.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement, product
from math import prod


def naive_rank(rows, p=None):
    """Gauss-Jordan over QQ (Fractions) or GF(p), pivot = largest |entry| row."""
    m = [[Fraction(a) if p is None else int(a) % p for a in r] for r in rows]
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    rk = 0
    for c in range(ncols):
        cand = [r for r in range(rk, nrows) if m[r][c] != 0]
        if not cand:
            continue
        piv = max(cand, key=lambda r: abs(m[r][c]))
        m[rk], m[piv] = m[piv], m[rk]
        if p is None:
            inv = 1 / m[rk][c]
            m[rk] = [a * inv for a in m[rk]]
        else:
            inv = pow(m[rk][c], -1, p)
            m[rk] = [a * inv % p for a in m[rk]]
        for r in range(nrows):
            if r != rk and m[r][c] != 0:
                f = m[r][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[rk])]
                if p is not None:
                    m[r] = [a % p for a in m[r]]
        rk += 1
        if rk == nrows:
            break
    return rk


def mat_vec(rows, v, p=None):
    out = [sum(Fraction(a) * Fraction(b) for a, b in zip(r, v)) for r in rows]
    return [int(a) % p for a in out] if p is not None else out


def monomials(i, dims):
    """Monomials of multidegree i as tuples of variable-index multisets."""
    per = [list(combinations_with_replacement(range(n + 1), a)) for a, n in zip(i, dims)]
    return list(product(*per))


def evaluate(mon, coords):
    return prod(Fraction(coords[j][v]) for j, part in enumerate(mon) for v in part)


def eval_matrix(points, i, dims):
    mons = monomials(i, dims)
    return [[evaluate(m, p) for m in mons] for p in points], mons


def naive_hilbert(points, i, dims):
    if min(i) < 0:
        return 0
    rows, _ = eval_matrix(points, i, dims)
    return naive_rank(rows)


def naive_delta(hfun, i):
    total = 0
    for l in product((0, 1), repeat=len(i)):
        j = tuple(a - b for a, b in zip(i, l))
        if min(j) >= 0:
            total += (-1) ** sum(l) * hfun(j)
    return total


def nullspace(rows, ncols):
    """Kernel basis over QQ by plain RREF."""
    m = [[Fraction(a) for a in r] for r in rows]
    piv_cols = []
    rk = 0
    for c in range(ncols):
        r = next((r for r in range(rk, len(m)) if m[r][c] != 0), None)
        if r is None:
            continue
        m[rk], m[r] = m[r], m[rk]
        inv = 1 / m[rk][c]
        m[rk] = [a * inv for a in m[rk]]
        for r2 in range(len(m)):
            if r2 != rk and m[r2][c] != 0:
                f = m[r2][c]
                m[r2] = [a - f * b for a, b in zip(m[r2], m[rk])]
        piv_cols.append(c)
        rk += 1
    free = [c for c in range(ncols) if c not in piv_cols]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for k, c in enumerate(piv_cols):
            v[c] = -m[k][f]
        basis.append(v)
    return basis


def _key(mon):
    return tuple(tuple(sorted(part)) for part in mon)


def multiply_linear(factor, coeffs, mon):
    """(sum_t c_t x_{factor,t}) * mon as {monomial: coefficient}."""
    out = {}
    for t, c in enumerate(coeffs):
        if c == 0:
            continue
        parts = [list(p) for p in mon]
        parts[factor].append(t)
        k = _key(parts)
        out[k] = out.get(k, 0) + Fraction(c)
    return out


def quotient_hilbert(points, dims, linear_forms, i):
    """dim (R/J)_i for J = I_X + (linear forms), built from generators:
    a basis of (I_X)_i plus L * m for every monomial m of degree i - deg L."""
    if min(i) < 0:
        return 0
    rows, mons = eval_matrix(points, i, dims)
    index = {_key(m): k for k, m in enumerate(mons)}
    gens = nullspace(rows, len(mons)) if points else [
        [Fraction(int(a == b)) for b in range(len(mons))] for a in range(len(mons))
    ]
    for factor, coeffs in linear_forms:
        lower = list(i)
        lower[factor] -= 1
        if lower[factor] < 0:
            continue
        for m in monomials(lower, dims):
            v = [Fraction(0)] * len(mons)
            for k, c in multiply_linear(factor, coeffs, m).items():
                v[index[k]] += c
            gens.append(v)
    return len(mons) - naive_rank(gens) if gens else len(mons)
