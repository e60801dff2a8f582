"""Cones and complete fans over a lattice Z^n, with structural validation.

A fan is given by its ray table (primitive integer vectors) and its maximal
cones (index sets into the table). Validation checks the fan axioms
pairwise and exactly, completeness by facet pairing, and smoothness by
determinants; nothing is trusted from the input.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .exact import (
    dot,
    in_cone,
    in_convex_hull,
    det,
    kernel_basis,
    kernel_vector,
    primitive,
    rank as mat_rank,
    solve,
)


class FanDataError(ValueError):
    """Structurally invalid fan input (bad indices, non-primitive rays...)."""


@dataclass(frozen=True)
class Cone:
    """Maximal cone as a sorted tuple of ray indices."""

    rays: tuple

    def __post_init__(self):
        object.__setattr__(self, "rays", tuple(sorted(set(self.rays))))


@dataclass(frozen=True)
class Fan:
    rank: int
    rays: tuple
    max_cones: tuple
    name: str | None = None

    def __post_init__(self):
        if self.rank < 1:
            raise FanDataError("rank must be positive")
        rays = []
        for i, r in enumerate(self.rays):
            r = tuple(r)
            if len(r) != self.rank:
                raise FanDataError(f"ray {i} has wrong dimension")
            if any(not isinstance(c, int) or isinstance(c, bool) for c in r):
                raise FanDataError(f"ray {i} has non-integer entries")
            if all(c == 0 for c in r):
                raise FanDataError(f"ray {i} is zero")
            if primitive(r) != r:
                raise FanDataError(f"ray {i} = {r} is not primitive")
            rays.append(r)
        object.__setattr__(self, "rays", tuple(rays))
        cones = []
        used = set()
        for j, c in enumerate(self.max_cones):
            cone = c if isinstance(c, Cone) else Cone(tuple(c))
            if not cone.rays:
                raise FanDataError(f"cone {j} is empty")
            for i in cone.rays:
                if not 0 <= i < len(rays):
                    raise FanDataError(f"cone {j} refers to unknown ray {i}")
            used.update(cone.rays)
            cones.append(cone)
        if not cones:
            raise FanDataError("fan has no maximal cones")
        if used != set(range(len(rays))):
            missing = sorted(set(range(len(rays))) - used)
            raise FanDataError(f"rays {missing} appear in no maximal cone")
        object.__setattr__(self, "max_cones", tuple(cones))

    def generators(self, cone: Cone):
        return [self.rays[i] for i in cone.rays]

    def cone_dim(self, cone: Cone) -> int:
        return mat_rank(self.generators(cone), self.rank)


@dataclass(frozen=True)
class Finding:
    kind: str
    message: str
    cones: tuple = ()
    rays: tuple = ()

    def to_dict(self):
        return {"kind": self.kind, "message": self.message,
                "cones": list(self.cones), "rays": list(self.rays)}


@dataclass(frozen=True)
class ValidationReport:
    axioms_ok: bool
    complete: bool
    simplicial: bool
    smooth: bool
    violations: tuple = field(default_factory=tuple)

    def to_dict(self):
        return {
            "axioms_ok": self.axioms_ok,
            "complete": self.complete,
            "simplicial": self.simplicial,
            "smooth": self.smooth,
            "violations": [v.to_dict() for v in self.violations],
        }


def cone_hrep(fan: Fan, cone: Cone):
    """Minimal primitive integer inequalities <u, .> >= 0 cutting out the
    cone, by brute force over generator subsets.

    For a cone of dimension d < rank the list also carries the +-pairs of a
    basis of the orthogonal complement of its span (equality constraints).
    A zero-dimensional cone yields an empty list; a cone containing a line
    is rejected.
    """
    gens = fan.generators(cone)
    n = fan.rank
    if in_convex_hull((0,) * n, gens):
        raise FanDataError(
            f"cone over rays {cone.rays} is not strongly convex")
    d = mat_rank(gens, n)
    if d == 0:
        return []
    normals = set()
    # equality part: orthogonal complement of the span
    for b in kernel_basis(gens, n):
        normals.add(b)
        normals.add(tuple(-c for c in b))
    if d == n:
        for sub in combinations(gens, n - 1):
            u = kernel_vector(list(sub), n)
            if u is None:
                continue
            vals = [dot(u, g) for g in gens]
            if all(v >= 0 for v in vals):
                normals.add(u)
            elif all(v <= 0 for v in vals):
                normals.add(tuple(-c for c in u))
    else:
        normals.update(_relative_facets(gens, n, d))
    return sorted(normals)


def _relative_facets(gens, n, d):
    """Facet normals of a d-dimensional cone inside its span, lifted back to
    primitive integer covectors on the ambient space."""
    basis = []
    for g in gens:
        if mat_rank(basis + [g], n) > len(basis):
            basis.append(g)
    # coordinates of the generators with respect to the span basis
    gram = [[dot(a, b) for b in basis] for a in basis]
    coords = [solve(gram, [dot(b, g) for b in basis]) for g in gens]
    out = []
    for sub in combinations(coords, d - 1):
        w = kernel_vector(list(sub), d)
        if w is None:
            continue
        vals = [dot(w, c) for c in coords]
        if all(v >= 0 for v in vals):
            pass
        elif all(v <= 0 for v in vals):
            w = tuple(-c for c in w)
        else:
            continue
        # lift: u = B^T (B B^T)^-1 w has <u, g_i> = <w, coords_i>
        lam = solve(gram, list(w))
        u = tuple(sum(lam[j] * basis[j][t] for j in range(d)) for t in range(n))
        den = 1
        for x in u:
            den = den * Fraction(x).denominator // _gcd(den, Fraction(x).denominator)
        out.append(primitive([int(Fraction(x) * den) for x in u]))
    return out


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _facet_ray_sets(fan: Fan, cone: Cone, hrep):
    """Ray-index set of each facet (tight set of one hrep inequality that is
    not an equality on the whole cone)."""
    gens = fan.generators(cone)
    facets = []
    for u in hrep:
        tight = tuple(i for i, g in zip(cone.rays, gens) if dot(u, g) == 0)
        if len(tight) < len(cone.rays):
            facets.append(frozenset(tight))
    return set(facets)


def _smallest_face(fan: Fan, cone: Cone, ray_subset, hrep):
    """Rays of the smallest face of `cone` containing the given rays: the
    common tight set of all valid inequalities vanishing on the subset."""
    gens = {i: fan.rays[i] for i in cone.rays}
    active = [u for u in hrep
              if all(dot(u, gens[i]) == 0 for i in ray_subset)]
    return frozenset(i for i in cone.rays
                     if all(dot(u, gens[i]) == 0 for u in active))


def is_smooth_cone(fan: Fan, cone: Cone) -> bool:
    """Generators extend to a lattice basis: full-dimensional simplicial
    cones need |det| = 1, lower-dimensional ones gcd of maximal minors = 1;
    non-simplicial cones are singular."""
    gens = fan.generators(cone)
    d = fan.cone_dim(cone)
    if len(gens) != d:
        return False
    if d == fan.rank:
        return abs(det(gens)) == 1
    g = 0
    for cols in combinations(range(fan.rank), d):
        minor = det([[row[c] for c in cols] for row in gens])
        g = _gcd(g, abs(minor.numerator))
    return g == 1


def cone_index(fan: Fan, cone: Cone):
    """|det| of a full-dimensional simplicial cone (its multiplicity), or
    None when that does not apply."""
    gens = fan.generators(cone)
    if len(gens) == fan.rank and fan.cone_dim(cone) == fan.rank:
        return abs(det(gens))
    return None


def validate_fan(fan: Fan) -> ValidationReport:
    """Check the fan axioms pairwise, completeness by facet pairing, and
    per-cone simpliciality/smoothness. Violations carry the offending
    cone/ray indices."""
    findings = []
    axioms_ok = True

    # structural checks per cone
    hreps = {}
    for j, cone in enumerate(fan.max_cones):
        try:
            hreps[j] = cone_hrep(fan, cone)
        except FanDataError as e:
            hreps[j] = None
            axioms_ok = False
            findings.append(Finding(
                kind="not-strongly-convex",
                message=str(e), cones=(j,)))
            continue
        gens = fan.generators(cone)
        for i, g in zip(cone.rays, gens):
            others = [h for k, h in zip(cone.rays, gens) if k != i]
            if others and in_cone(g, others):
                axioms_ok = False
                findings.append(Finding(
                    kind="non-extremal-generator",
                    message=f"ray {i} is a nonnegative combination of the "
                            f"other generators of cone {j}",
                    cones=(j,), rays=(i,)))

    # duplicate listings
    seen = {}
    distinct = []
    for j, cone in enumerate(fan.max_cones):
        if cone.rays in seen:
            findings.append(Finding(
                kind="duplicate-cone",
                message=f"maximal cone {j} repeats cone {seen[cone.rays]} "
                        f"(rays {list(cone.rays)})",
                cones=(seen[cone.rays], j)))
        else:
            seen[cone.rays] = j
            distinct.append(j)

    # pairwise face condition on distinct cones
    for a, b in combinations(distinct, 2):
        if hreps[a] is None or hreps[b] is None:
            continue
        ca, cb = fan.max_cones[a], fan.max_cones[b]
        if set(ca.rays) <= set(cb.rays) or set(cb.rays) <= set(ca.rays):
            axioms_ok = False
            findings.append(Finding(
                kind="nested-maximal-cones",
                message=f"maximal cone {a} and {b} are nested",
                cones=(a, b)))
            continue
        common = frozenset(ca.rays) & frozenset(cb.rays)
        ok = (_smallest_face(fan, ca, common, hreps[a]) == common
              and _smallest_face(fan, cb, common, hreps[b]) == common)
        if ok:
            # no generator may lie in the other cone beyond the common face
            for cone, other in ((ca, hreps[b]), (cb, hreps[a])):
                for i in cone.rays:
                    if i in common:
                        continue
                    if all(dot(u, fan.rays[i]) >= 0 for u in other):
                        ok = False
        if not ok:
            axioms_ok = False
            findings.append(Finding(
                kind="intersection-not-common-face",
                message=f"cones {a} and {b} do not intersect in a common "
                        f"face (common rays {sorted(common)})",
                cones=(a, b)))

    # completeness: full-dimensional cones + every facet shared exactly twice
    complete = True
    facet_owners = {}
    for j in distinct:
        if hreps[j] is None:
            complete = False
            continue
        cone = fan.max_cones[j]
        if fan.cone_dim(cone) != fan.rank:
            complete = False
            findings.append(Finding(
                kind="low-dimensional-maximal-cone",
                message=f"maximal cone {j} has dimension "
                        f"{fan.cone_dim(cone)} < {fan.rank}",
                cones=(j,)))
            continue
        for fs in _facet_ray_sets(fan, cone, hreps[j]):
            facet_owners.setdefault(fs, []).append(j)
    for fs, owners in sorted(facet_owners.items(), key=lambda kv: sorted(kv[0])):
        if len(owners) != 2:
            complete = False
            findings.append(Finding(
                kind="unpaired-facet",
                message=f"facet with rays {sorted(fs)} belongs to "
                        f"{len(owners)} maximal cone(s) instead of 2",
                cones=tuple(owners), rays=tuple(sorted(fs))))

    simplicial = True
    smooth = True
    for j in distinct:
        if hreps[j] is None:
            simplicial = smooth = False
            continue
        cone = fan.max_cones[j]
        d = fan.cone_dim(cone)
        if len(cone.rays) != d:
            simplicial = False
        if not is_smooth_cone(fan, cone):
            smooth = False
            idx = cone_index(fan, cone)
            detail = f" (index {idx})" if idx is not None else ""
            findings.append(Finding(
                kind="singular-cone",
                message=f"cone {j} is singular{detail}",
                cones=(j,)))

    return ValidationReport(
        axioms_ok=axioms_ok,
        complete=complete,
        simplicial=simplicial,
        smooth=smooth,
        violations=tuple(findings),
    )


def is_complete(fan: Fan) -> bool:
    """Facet-pairing completeness test (exact for fans whose axioms hold)."""
    return validate_fan(fan).complete


def fan_to_json(fan: Fan) -> str:
    doc = {
        "rank": fan.rank,
        "rays": [list(r) for r in fan.rays],
        "max_cones": [list(c.rays) for c in fan.max_cones],
    }
    if fan.name:
        doc["name"] = fan.name
    return json.dumps(doc, indent=2) + "\n"


def fan_from_json(text: str) -> Fan:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise FanDataError(f"invalid JSON: {e}") from e
    if not isinstance(doc, dict):
        raise FanDataError("fan document must be a JSON object")
    for key in ("rank", "rays", "max_cones"):
        if key not in doc:
            raise FanDataError(f"missing field {key!r}")
    rank_ = doc["rank"]
    if not isinstance(rank_, int) or isinstance(rank_, bool):
        raise FanDataError("rank must be an integer")
    rays = doc["rays"]
    if not isinstance(rays, list):
        raise FanDataError("rays must be a list")
    for i, r in enumerate(rays):
        if (not isinstance(r, list)
                or any(not isinstance(c, int) or isinstance(c, bool) for c in r)):
            raise FanDataError(f"ray {i} must be a list of integers")
    cones = doc["max_cones"]
    if not isinstance(cones, list):
        raise FanDataError("max_cones must be a list")
    for j, c in enumerate(cones):
        if (not isinstance(c, list)
                or any(not isinstance(i, int) or isinstance(i, bool) for i in c)):
            raise FanDataError(f"cone {j} must be a list of ray indices")
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise FanDataError("name must be a string")
    return Fan(rank=rank_, rays=tuple(tuple(r) for r in rays),
               max_cones=tuple(Cone(tuple(c)) for c in cones), name=name)
