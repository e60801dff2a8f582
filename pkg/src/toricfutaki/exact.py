"""Exact rational scalars, vectors and dense linear algebra.

Rational scalars are `fractions.Fraction` (always reduced, positive
denominator); vectors are plain tuples of Fraction/int. Nothing in this
module touches floating point.
"""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import combinations
from math import gcd

Vec = tuple  # tuple of Fraction/int entries


class NoSolutionError(ValueError):
    """The linear system is inconsistent."""


class UnderdeterminedError(ValueError):
    """The linear system is consistent but has a positive-dimensional
    solution space."""


_RAT_RE = re.compile(r"^[+-]?\d+(/[1-9]\d*)?$")


def parse_rat(text: str) -> Fraction:
    """Parse "p/q" (q > 0) or a plain integer literal. Rejects floats."""
    text = text.strip()
    if not _RAT_RE.match(text):
        raise ValueError(f"not a rational literal: {text!r}")
    return Fraction(text)


def format_rat(q) -> str:
    """Serialize as "p/q", or "p" when the denominator is 1."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def dot(u: Vec, v: Vec):
    if len(u) != len(v):
        raise ValueError("dimension mismatch")
    return sum(a * b for a, b in zip(u, v))


def vadd(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def vneg(u: Vec) -> Vec:
    return tuple(-a for a in u)


def vscale(c, u: Vec) -> Vec:
    return tuple(c * a for a in u)


def as_fractions(u) -> Vec:
    return tuple(Fraction(a) for a in u)


def as_integers(u) -> tuple[int, ...]:
    """Convert to an int tuple; error on non-integer entries."""
    out = []
    for a in u:
        f = Fraction(a)
        if f.denominator != 1:
            raise ValueError(f"non-integer entry {a}")
        out.append(f.numerator)
    return tuple(out)


def primitive(v) -> tuple[int, ...]:
    """Divide an integer vector by the gcd of its entries (same direction)."""
    iv = as_integers(v)
    g = 0
    for a in iv:
        g = gcd(g, abs(a))
    if g == 0:
        raise ValueError("zero vector has no primitive representative")
    return tuple(a // g for a in iv)


def det(rows) -> Fraction:
    """Exact determinant by fraction-free (Bareiss) elimination.

    Rational input is scaled row-wise to integers first, so all intermediate
    values stay integral and division-free growth is bounded.
    """
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant needs a square matrix")
    scale = 1
    m = []
    for row in rows:
        frow = [Fraction(x) for x in row]
        d = 1
        for x in frow:
            d = d * x.denominator // gcd(d, x.denominator)
        scale *= d
        m.append([int(x * d) for x in frow])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return Fraction(sign * m[n - 1][n - 1], scale)


def _rref(rows, ncols):
    """Reduced row echelon form over Q. Pivots only in the first `ncols`
    columns; any trailing columns are carried along (augmented systems).
    Returns (matrix, pivot columns)."""
    m = [[Fraction(x) for x in row] for row in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = m[r][c]
        m[r] = [x / inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(rows, ncols=None) -> int:
    rows = list(rows)
    if not rows:
        return 0
    if ncols is None:
        ncols = len(rows[0])
    return len(_rref(rows, ncols)[1])


def solve(rows, rhs) -> Vec:
    """Solve the (possibly overdetermined) exact linear system rows·x = rhs.

    Returns the unique solution. Raises NoSolutionError when inconsistent
    and UnderdeterminedError when the solution space is positive-dimensional.
    """
    rows = list(rows)
    if not rows:
        raise ValueError("empty system")
    n = len(rows[0])
    if len(rhs) != len(rows):
        raise ValueError("right-hand side length mismatch")
    aug = [list(row) + [b] for row, b in zip(rows, rhs)]
    m, pivots = _rref(aug, n)
    for i in range(len(pivots), len(m)):
        if m[i][n] != 0:
            raise NoSolutionError("inconsistent linear system")
    if len(pivots) < n:
        raise UnderdeterminedError("solution space is positive-dimensional")
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = m[i][n]
    return tuple(x)


def kernel_basis(rows, ncols) -> list[tuple[int, ...]]:
    """Primitive integer basis of the null space of the given row matrix."""
    m, pivots = _rref(list(rows), ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for c in free:
        v = [Fraction(0)] * ncols
        v[c] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][c]
        d = 1
        for x in v:
            d = d * x.denominator // gcd(d, x.denominator)
        basis.append(primitive([int(x * d) for x in v]))
    return basis


def kernel_vector(rows, ncols):
    """The primitive spanning vector of a one-dimensional null space, or
    None when the null space does not have dimension exactly 1."""
    basis = kernel_basis(rows, ncols)
    if len(basis) != 1:
        return None
    return basis[0]


def in_convex_hull(point, points) -> bool:
    """Exact membership of `point` in the convex hull of `points`.

    Caratheodory enumeration: some affinely independent subset of at most
    dim+1 points must carry a nonnegative barycentric representation.
    """
    pts = [as_fractions(p) for p in points]
    p = as_fractions(point)
    if not pts:
        return False
    n = len(p)
    if p in pts:
        return True
    for k in range(2, n + 2):
        for sub in combinations(pts, k):
            rows = [[s[d] for s in sub] for d in range(n)]
            rows.append([Fraction(1)] * k)
            try:
                lam = solve(rows, list(p) + [Fraction(1)])
            except (NoSolutionError, UnderdeterminedError):
                continue
            if all(x >= 0 for x in lam):
                return True
    return False


def in_cone(point, generators) -> bool:
    """Exact membership of `point` in the cone spanned by `generators`."""
    gens = [as_fractions(g) for g in generators]
    p = as_fractions(point)
    n = len(p)
    if all(x == 0 for x in p):
        return True
    for k in range(1, n + 1):
        for sub in combinations(gens, k):
            rows = [[s[d] for s in sub] for d in range(n)]
            try:
                lam = solve(rows, p)
            except (NoSolutionError, UnderdeterminedError):
                continue
            if all(x >= 0 for x in lam):
                return True
    return False
