"""Exact convex hulls, triangulations and moment integration for rational
V-polytopes.

Everything here is exact (Fraction arithmetic). The Monte-Carlo cross-check
`mc_moments` lives in :mod:`toricfutaki.montecarlo`; it is re-exported here
because it checks the same quantities.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .exact import (
    as_fractions,
    det,
    dot,
    kernel_vector,
    primitive,
    rank,
    vsub,
)


class DegenerateGeometryError(ValueError):
    """Input points do not span the full ambient dimension."""


@dataclass(frozen=True)
class Facet:
    """Inequality <normal, x> + offset >= 0, tight on the facet.

    The normal is a primitive integer vector pointing into the polytope.
    """

    normal: tuple[int, ...]
    offset: Fraction

    def eval(self, point):
        return dot(self.normal, point) + self.offset


@dataclass(frozen=True)
class VPolytope:
    rank: int
    points: tuple  # deduplicated input points, as given
    vertices: tuple  # extremal subset, lexicographically sorted
    facets: tuple  # Facet list, canonically sorted

    def contains(self, point) -> bool:
        return all(f.eval(point) >= 0 for f in self.facets)


@dataclass(frozen=True)
class Simplex:
    vertices: tuple  # n+1 affinely independent points

    def volume(self) -> Fraction:
        base = self.vertices[0]
        edges = [vsub(v, base) for v in self.vertices[1:]]
        n = len(base)
        return abs(det(edges)) / math.factorial(n)


@dataclass(frozen=True)
class MomentData:
    """Exact volume, first moments and barycentre of a polytope.

    `barycentre` is the mass centroid first_moments/volume. Callers that
    compare against degree-normalized published values want
    first_moments / (n! * volume) instead; see
    :func:`degree_normalized_barycentre`.
    """

    volume: Fraction
    first_moments: tuple
    barycentre: tuple


def degree(md: MomentData) -> Fraction:
    """n!-scaled volume (the anticanonical degree when the polytope is an
    anticanonical polytope)."""
    return math.factorial(len(md.first_moments)) * md.volume


def degree_normalized_barycentre(md: MomentData) -> tuple:
    """First moments divided by the n!-scaled volume (= centroid / n!)."""
    d = degree(md)
    return tuple(m / d for m in md.first_moments)


def convex_hull(points) -> VPolytope:
    """Exact hull of a full-dimensional rational point set.

    Facets are found by brute force over n-subsets: every hyperplane spanned
    by n affinely independent input points is kept when all points lie on
    one side. A point is a vertex iff its tight facet normals span the
    ambient space.
    """
    pts = sorted({as_fractions(p) for p in points})
    if not pts:
        raise ValueError("no points")
    n = len(pts[0])
    if any(len(p) != n for p in pts):
        raise ValueError("points of mixed dimension")
    if len(pts) < n + 1:
        raise DegenerateGeometryError(
            f"need at least {n + 1} distinct points in rank {n}, got {len(pts)}"
        )
    base = pts[0]
    if rank([vsub(p, base) for p in pts[1:]], n) != n:
        raise DegenerateGeometryError("points are not full-dimensional")

    facets = set()
    for sub in combinations(pts, n):
        edges = [vsub(p, sub[0]) for p in sub[1:]]
        normal = kernel_vector(edges, n)
        if normal is None:
            continue  # affinely dependent subset
        offset = -dot(normal, sub[0])
        vals = [dot(normal, p) + offset for p in pts]
        if all(v >= 0 for v in vals):
            facets.add(Facet(normal, Fraction(offset)))
        elif all(v <= 0 for v in vals):
            facets.add(Facet(tuple(-c for c in normal), Fraction(-offset)))
    facets = tuple(sorted(facets, key=lambda f: (f.normal, f.offset)))

    vertices = []
    for p in pts:
        tight = [f.normal for f in facets if f.eval(p) == 0]
        if len(tight) >= n and rank(tight, n) == n:
            vertices.append(p)
    return VPolytope(rank=n, points=tuple(pts), vertices=tuple(vertices), facets=facets)


def _facet_vertices(poly: VPolytope, facet: Facet):
    return [v for v in poly.vertices if facet.eval(v) == 0]


def _triangulate_recursive(vertices, facets, n):
    """Star triangulation from the lexicographically least vertex; facets are
    themselves triangulated recursively the same way (fan at rank 2)."""
    verts = sorted(vertices)
    if n == 1:
        return [(verts[0], verts[-1])]
    apex = verts[0]
    cells = []
    for facet in facets:
        tight = sorted(v for v in verts if facet.eval(v) == 0)
        if apex in tight:
            continue
        j = next(i for i, c in enumerate(facet.normal) if c != 0)
        proj = {v[:j] + v[j + 1:]: v for v in tight}
        if len(tight) == n:  # facet already a simplex
            subcells = [tuple(sorted(proj))]
        else:
            sub = convex_hull(list(proj))
            subcells = _triangulate_recursive(sub.vertices, sub.facets, n - 1)
        for cell in subcells:
            cells.append((apex,) + tuple(proj[q] for q in cell))
    return cells


def triangulate(poly: VPolytope) -> list[Simplex]:
    """Decompose into simplices with disjoint interiors covering the hull."""
    cells = _triangulate_recursive(poly.vertices, poly.facets, poly.rank)
    simplices = [Simplex(tuple(c)) for c in cells]
    for s in simplices:
        if s.volume() == 0:
            raise AssertionError("degenerate triangulation cell")
    return simplices


def moments(poly: VPolytope) -> MomentData:
    """Exact Euclidean volume and first moments by summing over the
    triangulation; per cell vol = |det(edges)|/n! and the first moment is
    vol times the vertex mean."""
    n = poly.rank
    vol = Fraction(0)
    mom = [Fraction(0)] * n
    for cell in triangulate(poly):
        v = cell.volume()
        vol += v
        for s in range(n):
            mom[s] += v * Fraction(sum(w[s] for w in cell.vertices), n + 1)
    bary = tuple(m / vol for m in mom)
    return MomentData(volume=vol, first_moments=tuple(mom), barycentre=bary)


def moments_of(points) -> MomentData:
    return moments(convex_hull(points))


def negate_points(points):
    return [tuple(-c for c in p) for p in points]


def negate_moment_data(md: MomentData) -> MomentData:
    """Moment data of the point-reflected polytope: volume is preserved,
    first moments and barycentre flip sign."""
    return MomentData(
        volume=md.volume,
        first_moments=tuple(-m for m in md.first_moments),
        barycentre=tuple(-b for b in md.barycentre),
    )


def scale_points(points, k):
    return [tuple(k * c for c in p) for p in points]


def bounding_box(poly: VPolytope):
    """Exact per-coordinate (min, max) over the vertices."""
    lo = [min(v[s] for v in poly.vertices) for s in range(poly.rank)]
    hi = [max(v[s] for v in poly.vertices) for s in range(poly.rank)]
    return tuple(lo), tuple(hi)


def to_off(poly: VPolytope) -> str:
    """OFF export of a rank-3 hull for external viewers."""
    if poly.rank != 3:
        raise ValueError("OFF export is for rank-3 polytopes")
    verts = list(poly.vertices)
    index = {v: i for i, v in enumerate(verts)}
    lines = ["OFF", f"{len(verts)} {len(poly.facets)} 0"]
    for v in verts:
        lines.append(" ".join(str(float(c)) for c in v))
    for f in poly.facets:
        ring = _facet_ring(poly, f)
        lines.append(" ".join([str(len(ring))] + [str(index[v]) for v in ring]))
    return "\n".join(lines) + "\n"


def _facet_ring(poly: VPolytope, facet: Facet):
    """Vertices of a rank-3 facet in cyclic (angular) order, exactly:
    sort around the facet centroid by half-plane then by cross product."""
    verts = _facet_vertices(poly, facet)
    j = next(i for i, c in enumerate(facet.normal) if c != 0)
    proj = {v[:j] + v[j + 1:]: v for v in verts}
    keys = list(proj)
    c0 = tuple(sum(k[i] for k in keys) / len(keys) for i in range(2))

    def half(q):
        d = vsub(q, c0)
        return 0 if (d[1] > 0 or (d[1] == 0 and d[0] > 0)) else 1

    def cross_cmp(a, b):
        ha, hb = half(a), half(b)
        if ha != hb:
            return -1 if ha < hb else 1
        da, db = vsub(a, c0), vsub(b, c0)
        cr = da[0] * db[1] - da[1] * db[0]
        return -1 if cr > 0 else (1 if cr < 0 else 0)

    ordered = sorted(keys, key=functools.cmp_to_key(cross_cmp))
    return [proj[k] for k in ordered]


# Monte-Carlo oracle over the same data; defined in its own module because
# the sampling kernel may be compiled.
from .montecarlo import MCMomentData, mc_moments  # noqa: E402,F401
