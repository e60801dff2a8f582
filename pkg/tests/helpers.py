"""Shared test utilities: independent oracles and random generators."""

import random
from fractions import Fraction


def cofactor_det(m):
    """Textbook cofactor expansion; independent oracle for det()."""
    n = len(m)
    if n == 1:
        return Fraction(m[0][0])
    total = Fraction(0)
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = Fraction(m[0][j]) * cofactor_det(minor)
        total += term if j % 2 == 0 else -term
    return total


def random_int_matrix(rng, n, lo=-5, hi=5):
    return [[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)]


def random_unimodular(rng, n, steps=12):
    """Random integer matrix with determinant +-1, built from row operations."""
    m = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        c = rng.randint(-2, 2)
        m[i] = [a + c * b for a, b in zip(m[i], m[j])]
    if rng.random() < 0.5:
        i, j = rng.sample(range(n), 2)
        m[i], m[j] = m[j], m[i]
    return [tuple(int(x) for x in row) for row in m]


def apply_affine(points, mat, shift):
    n = len(shift)
    out = []
    for p in points:
        out.append(tuple(
            sum(mat[r][c] * p[c] for c in range(n)) + shift[r]
            for r in range(n)))
    return out


def random_full_dim_points(rng, n, count, lo=-4, hi=4):
    """Random integer point set guaranteed to span affinely."""
    while True:
        pts = {tuple(rng.randint(lo, hi) for _ in range(n))
               for _ in range(count)}
        pts = sorted(pts)
        if len(pts) < n + 1:
            continue
        base = pts[0]
        edges = [[p[i] - base[i] for i in range(n)] for p in pts[1:]]
        from toricfutaki.exact import rank
        if rank(edges, n) == n:
            return pts
