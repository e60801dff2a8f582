"""Q-Gorenstein data, almost-Fano testing, divisor polytopes and lattice
points.

Orientation convention used throughout the package: the anticanonical
polytope is the convex hull of the NEGATED per-cone covectors (equivalently
{u : <u, ray_i> >= -1}). Published vertex lists for the catalog
degenerations describe the negated polytope; they are stored with an
explicit flag and never silently reoriented.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .exact import (
    NoSolutionError,
    UnderdeterminedError,
    as_fractions,
    dot,
    format_rat,
    kernel_basis,
    kernel_vector,
    solve,
    vneg,
)
from .fans import Fan, FanDataError
from .geometry import VPolytope, convex_hull


class NotQGorensteinError(ValueError):
    def __init__(self, cone_index, message=None):
        self.cone_index = cone_index
        super().__init__(
            message or f"cone {cone_index} admits no covector pairing to 1 "
                       f"with all its generators")


class NotAlmostFanoError(ValueError):
    pass


class UnboundedPolytopeError(ValueError):
    pass


class FanReconstructionError(ValueError):
    """Vertex data does not describe a level-1 (anticanonical-type) polytope."""


@dataclass(frozen=True)
class TCartierDivisor:
    """Torus-invariant divisor: one integer coefficient per fan ray."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))


@dataclass(frozen=True)
class GorensteinData:
    """Per-maximal-cone covector pairing to 1 with every primitive
    generator of that cone, plus the global index (lcm of denominators;
    index 1 means Gorenstein)."""

    covectors: tuple  # one rational covector per maximal cone
    index: int


@dataclass(frozen=True)
class HPolytope:
    """Intersection of half-spaces <normal, u> + offset >= 0."""

    rank: int
    inequalities: tuple  # of (normal tuple[int], offset Fraction)


def gorenstein_data(fan: Fan) -> GorensteinData:
    """Solve <generator, covector> = 1 on every maximal cone.

    Non-simplicial cones give overdetermined systems; inconsistency means
    the fan is not Q-Gorenstein. Expects a complete fan (maximal cones
    full-dimensional).
    """
    covs = []
    index = 1
    for j, cone in enumerate(fan.max_cones):
        gens = fan.generators(cone)
        try:
            k = solve(gens, [Fraction(1)] * len(gens))
        except NoSolutionError:
            raise NotQGorensteinError(j) from None
        except UnderdeterminedError:
            raise ValueError(
                f"maximal cone {j} is not full-dimensional; "
                f"Gorenstein data needs a complete fan") from None
        for g in gens:
            assert dot(g, k) == 1
        covs.append(k)
        for x in k:
            d = Fraction(x).denominator
            index = index * d // math.gcd(index, d)
    return GorensteinData(covectors=tuple(covs), index=index)


def anticanonical_polytope(fan: Fan, gor: GorensteinData) -> VPolytope:
    """Convex hull of the negated covectors (duplicates merged)."""
    return convex_hull([vneg(k) for k in gor.covectors])


def is_almost_fano(fan: Fan, gor: GorensteinData):
    """True iff the hull of the negated covectors is full-dimensional with
    every negated covector an extremal vertex. Returns (flag, diagnostics);
    diagnostics list the cones whose points fail."""
    points = [vneg(as_fractions(k)) for k in gor.covectors]
    diagnostics = []
    seen = {}
    for j, p in enumerate(points):
        if p in seen:
            diagnostics.append(
                f"cones {seen[p]} and {j} share the covector "
                f"{tuple(format_rat(c) for c in p)}")
        else:
            seen[p] = j
    try:
        hull = convex_hull(points)
    except ValueError as e:
        diagnostics.append(f"hull of the negated covectors is degenerate: {e}")
        return False, diagnostics
    vertex_set = set(hull.vertices)
    for j, p in enumerate(points):
        if p not in vertex_set:
            diagnostics.append(f"covector of cone {j} is not extremal")
    return not diagnostics, diagnostics


def divisor_polytope(fan: Fan, divisor: TCartierDivisor) -> HPolytope:
    """One inequality <u, ray_i> >= -a_i per ray; no redundancy removal."""
    if len(divisor.coeffs) != len(fan.rays):
        raise ValueError("divisor needs one coefficient per ray")
    ineqs = tuple((ray, Fraction(a)) for ray, a in zip(fan.rays, divisor.coeffs))
    return HPolytope(rank=fan.rank, inequalities=ineqs)


def _recession_direction(hp: HPolytope):
    """A nonzero direction in which the polyhedron is unbounded, or None."""
    n = hp.rank
    normals = [ineq[0] for ineq in hp.inequalities]
    ker = kernel_basis(normals, n)
    if ker:
        return ker[0]  # all inequalities are blind to this direction
    for sub in combinations(normals, n - 1):
        d = kernel_vector(list(sub), n)
        if d is None:
            continue
        for cand in (d, vneg(d)):
            if all(dot(nrm, cand) >= 0 for nrm in normals):
                return cand
    return None


def hrep_vertices(hp: HPolytope):
    """Vertex enumeration of a bounded H-polytope by brute force over
    n-subsets of inequalities. Raises on unbounded input."""
    n = hp.rank
    if len(hp.inequalities) < n + 1:
        raise UnboundedPolytopeError("fewer than rank+1 inequalities")
    direction = _recession_direction(hp)
    if direction is not None:
        raise UnboundedPolytopeError(
            f"polyhedron is unbounded in direction {direction}")
    verts = set()
    for sub in combinations(hp.inequalities, n):
        rows = [ineq[0] for ineq in sub]
        rhs = [-ineq[1] for ineq in sub]
        try:
            u = solve(rows, rhs)
        except (NoSolutionError, UnderdeterminedError):
            continue
        if all(dot(nrm, u) + off >= 0 for nrm, off in hp.inequalities):
            verts.add(tuple(Fraction(x) for x in u))
    if not verts:
        raise ValueError("empty polytope")
    return sorted(verts)


def lattice_points(hp: HPolytope):
    """All integer points of a bounded H-polytope, lexicographically sorted.

    The bounding box comes from the exact vertex coordinates (floor/ceil of
    the rationals), then each grid point is tested against the inequalities.
    """
    verts = hrep_vertices(hp)
    n = hp.rank
    lo = [math.floor(min(v[s] for v in verts)) for s in range(n)]
    hi = [math.ceil(max(v[s] for v in verts)) for s in range(n)]

    points = []

    def scan(prefix):
        s = len(prefix)
        if s == n:
            points.append(tuple(prefix))
            return
        for c in range(lo[s], hi[s] + 1):
            scan(prefix + [c])

    scan([])
    return [p for p in points
            if all(dot(nrm, p) + off >= 0 for nrm, off in hp.inequalities)]


def anticanonical_hrep(fan: Fan, k: int = 1) -> HPolytope:
    """H-representation of k times the anticanonical polytope."""
    return divisor_polytope(fan, TCartierDivisor((k,) * len(fan.rays)))


def fan_from_polar_vertices(points, name=None) -> Fan:
    """Reconstruct a fan from the vertex list of the NEGATED anticanonical
    polytope (the published orientation): facet outer normals must be
    primitive integer vectors at level exactly 1; they become the rays, and
    each vertex spans the maximal cone of its incident facet normals.
    """
    hull = convex_hull(points)
    rays = []
    bad = []
    for f in hull.facets:
        # internal form <n, x> + off >= 0 means outer normal -n at level off
        if f.offset != 1:
            bad.append((vneg(f.normal), f.offset))
            continue
        rays.append(vneg(f.normal))
    if bad:
        raise FanReconstructionError(
            "not a level-1 polytope; offending facets: "
            + ", ".join(f"<x,{list(v)}> = {format_rat(c)}" for v, c in bad))
    rays = sorted(rays)
    ray_index = {r: i for i, r in enumerate(rays)}
    cones = []
    for v in hull.vertices:
        tight = tuple(sorted(ray_index[vneg(f.normal)]
                             for f in hull.facets if f.eval(v) == 0))
        cones.append(tight)
    return Fan(rank=hull.rank, rays=tuple(rays),
               max_cones=tuple(cones), name=name)


@dataclass(frozen=True)
class BijectionReport:
    """Comparison of the per-cone covectors of a fan against a published
    vertex list (of the negated anticanonical polytope, so covectors are
    compared directly against the listed points)."""

    matched: tuple
    duplicate_cones: tuple  # (first index, repeat index) pairs
    covectors_not_listed: tuple  # covectors with no matching published point
    points_without_cone: tuple  # published points not achieved by any cone
    ok: bool


def bijection_report(fan: Fan, listed_points, gor: GorensteinData | None = None
                     ) -> BijectionReport:
    if gor is None:
        gor = gorenstein_data(fan)
    listed = [as_fractions(p) for p in listed_points]
    covs = [as_fractions(k) for k in gor.covectors]
    dup = []
    seen = {}
    for j, k in enumerate(covs):
        if k in seen:
            dup.append((seen[k], j))
        else:
            seen[k] = j
    # multiset comparison: a duplicated covector consumes a listed point
    # only once; its second copy shows up under covectors_not_listed
    remaining = list(listed)
    matched = []
    extra = []
    for k in covs:
        if k in remaining:
            remaining.remove(k)
            matched.append(k)
        else:
            extra.append(k)
    ok = not dup and not extra and not remaining
    return BijectionReport(
        matched=tuple(matched),
        duplicate_cones=tuple(dup),
        covectors_not_listed=tuple(extra),
        points_without_cone=tuple(remaining),
        ok=ok,
    )
