"""Built-in catalog: classical smooth controls and the three published
toric degenerations of the degree-38 Fano threefold (the blowup of P^3
along a twisted cubic), with their published polytope data.

Every published list is stored verbatim. Where the published data is
internally inconsistent, the catalog additionally carries a derived
correction with its justification in the notes; nothing is patched
silently. Expected values are tagged 'published' or 'derived'.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction

from .fano import fan_from_polar_vertices
from .fans import Cone, Fan
from .geometry import (
    MomentData,
    convex_hull,
    degree,
    degree_normalized_barycentre,
    moments,
    negate_points,
)
from .montecarlo import DEFAULT_SEED, MCMomentData, mc_moments

SEED_ENV_VAR = "FUTAKI_MC_SEED"


def mc_seed() -> int:
    """Oracle seed: FUTAKI_MC_SEED env var, default 42."""
    raw = os.environ.get(SEED_ENV_VAR)
    return int(raw) if raw else DEFAULT_SEED


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    description: str
    kind: str  # 'fan' (fan route) or 'vertices' (vertex-list route)
    fan: Fan | None = None
    fan_provenance: str | None = None  # 'standard' | 'published'
    published_vertices: tuple | None = None
    derived_vertices: tuple | None = None  # correction of an inconsistent list
    vertices_negated: bool = True  # listed vertices describe the NEGATED polytope
    expected_normalized_barycentre: tuple | None = None
    expected_source: str | None = None  # 'published' | 'derived'
    expected_degree: Fraction | None = None
    notes: tuple = field(default_factory=tuple)

    def vertex_list(self, reconciled: bool = False):
        if reconciled and self.derived_vertices is not None:
            return self.derived_vertices
        return self.published_vertices

    def reconciled_fan(self) -> Fan:
        """Fan derived from the (corrected) vertex list by the
        covector-vertex bijection; provenance 'derived'."""
        pts = self.vertex_list(reconciled=True)
        if pts is None:
            raise ValueError(f"entry {self.name} has no vertex list")
        if not self.vertices_negated:
            pts = negate_points(pts)
        return fan_from_polar_vertices(pts, name=f"{self.name}-reconciled")


_E0 = (-1, -1, -1)

_P3_FAN = Fan(
    rank=3,
    rays=(_E0, (1, 0, 0), (0, 1, 0), (0, 0, 1)),
    max_cones=(Cone((0, 1, 2)), Cone((0, 1, 3)), Cone((0, 2, 3)),
               Cone((1, 2, 3))),
    name="p3",
)

# first degeneration, fan exactly as published (note the repeated cone 4/5)
# rays: 0 e0, 1 e1, 2 e2, 3 e3, 4 e0+e1, 5 e0+e3, 6 e2+e3
_DELTA1_PRINTED = Fan(
    rank=3,
    rays=(_E0, (1, 0, 0), (0, 1, 0), (0, 0, 1),
          (0, -1, -1), (-1, -1, 0), (0, 1, 1)),
    max_cones=(
        Cone((1, 2, 6)), Cone((1, 3, 6)), Cone((3, 5, 6)),
        Cone((0, 2, 4)), Cone((0, 2, 4)), Cone((0, 4, 5)),
        Cone((0, 2, 5, 6)), Cone((1, 3, 4, 5)),
    ),
    name="delta1-printed",
)

# second degeneration as published (8 cones against 9 polytope vertices)
# rays: 0 e0, 1 e1, 2 e2, 3 e3, 4 e1+e2, 5 e2+e3, 6 e1+e3, 7 e1+e2+e3
_DELTA2_PRINTED = Fan(
    rank=3,
    rays=(_E0, (1, 0, 0), (0, 1, 0), (0, 0, 1),
          (1, 1, 0), (0, 1, 1), (1, 0, 1), (1, 1, 1)),
    max_cones=(
        Cone((0, 1, 4)), Cone((0, 2, 4)), Cone((0, 2, 5)),
        Cone((0, 3, 5)), Cone((0, 3, 6)), Cone((0, 1, 6)),
        Cone((1, 4, 6, 7)), Cone((2, 4, 5, 7)),
    ),
    name="delta2-printed",
)

# third degeneration as published (self-consistent)
# rays: 0 e0, 1 e1, 2 e2, 3 e3, 4 e2+e3, 5 2e1+e2, 6 -e0
_DELTA3_PRINTED = Fan(
    rank=3,
    rays=(_E0, (1, 0, 0), (0, 1, 0), (0, 0, 1),
          (0, 1, 1), (2, 1, 0), (1, 1, 1)),
    max_cones=(
        Cone((0, 1, 3)), Cone((0, 2, 4)), Cone((0, 3, 4)),
        Cone((0, 1, 5)), Cone((0, 2, 5)), Cone((3, 4, 6)),
        Cone((1, 3, 5, 6)), Cone((2, 4, 5, 6)),
    ),
    name="delta3-printed",
)

_X1_PUBLISHED = ((1, 1, 0), (1, 0, 1), (-1, 0, 1), (0, 1, -2),
                 (1, 1, -2), (0, -1, 0), (-2, 0, 1), (1, -2, 1))
# correction: the published (-2, 0, 1) conflicts with every cross-check;
# the cone <e0, e2, e0+e3, e2+e3> forces (-2, 1, 0), which also restores
# degree 38 and the published barycentre
_X1_DERIVED = ((1, 1, 0), (1, 0, 1), (-1, 0, 1), (0, 1, -2),
               (1, 1, -2), (0, -1, 0), (-2, 1, 0), (1, -2, 1))

_X2_PUBLISHED = ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 0, -2), (0, 1, -2),
                 (1, -2, 0), (-2, 1, 0), (-2, 0, 1), (0, -2, 1))

_X3_PUBLISHED = ((1, -3, 1), (-2, 1, 0), (-2, 0, 1), (1, -1, -1),
                 (0, 1, -2), (0, 0, 1), (1, -1, 1), (0, 1, 0))

_F = Fraction

_ENTRIES = (
    CatalogEntry(
        name="p1",
        description="projective line",
        kind="fan",
        fan=Fan(rank=1, rays=((1,), (-1,)), max_cones=(Cone((0,)), Cone((1,))),
                name="p1"),
        fan_provenance="standard",
        expected_normalized_barycentre=(_F(0),),
        expected_source="derived",
        expected_degree=_F(2),
        notes=("smooth vanishing control",),
    ),
    CatalogEntry(
        name="p2",
        description="projective plane",
        kind="fan",
        fan=Fan(rank=2, rays=((-1, -1), (1, 0), (0, 1)),
                max_cones=(Cone((0, 1)), Cone((0, 2)), Cone((1, 2))),
                name="p2"),
        fan_provenance="standard",
        expected_normalized_barycentre=(_F(0), _F(0)),
        expected_source="derived",
        expected_degree=_F(9),
        notes=("smooth vanishing control",),
    ),
    CatalogEntry(
        name="p3",
        description="projective space of dimension 3",
        kind="fan",
        fan=_P3_FAN,
        fan_provenance="standard",
        expected_normalized_barycentre=(_F(0), _F(0), _F(0)),
        expected_source="derived",
        expected_degree=_F(64),
        notes=("smooth vanishing control",),
    ),
    CatalogEntry(
        name="p1xp1",
        description="product of two projective lines",
        kind="fan",
        fan=Fan(rank=2, rays=((-1, 0), (0, -1), (0, 1), (1, 0)),
                max_cones=(Cone((0, 1)), Cone((0, 2)), Cone((1, 3)),
                           Cone((2, 3))),
                name="p1xp1"),
        fan_provenance="standard",
        expected_normalized_barycentre=(_F(0), _F(0)),
        expected_source="derived",
        expected_degree=_F(8),
        notes=("smooth vanishing control with centrally symmetric polytope",),
    ),
    CatalogEntry(
        name="bl1p2",
        description="projective plane blown up in one torus-fixed point",
        kind="fan",
        fan=Fan(rank=2, rays=((-1, -1), (0, 1), (1, 0), (1, 1)),
                max_cones=(Cone((0, 1)), Cone((0, 2)), Cone((1, 3)),
                           Cone((2, 3))),
                name="bl1p2"),
        fan_provenance="standard",
        expected_normalized_barycentre=(_F(1, 24), _F(1, 24)),
        expected_source="derived",
        expected_degree=_F(8),
        notes=("derived control: smooth with nonzero barycentre "
               "(no Einstein-Kaehler metric)",),
    ),
    CatalogEntry(
        name="x1",
        description="degeneration of the degree-38 threefold over a chain "
                    "of three lines",
        kind="vertices",
        fan=_DELTA1_PRINTED,
        fan_provenance="published",
        published_vertices=_X1_PUBLISHED,
        derived_vertices=_X1_DERIVED,
        vertices_negated=True,
        expected_normalized_barycentre=(_F(1, 57), _F(1, 57), _F(-1, 57)),
        expected_source="published",
        expected_degree=_F(38),
        notes=(
            "published vertex list is inconsistent: its hull has degree 36, "
            "drops one point into the interior and misses the published "
            "barycentre; the derived list replaces (-2, 0, 1) by (-2, 1, 0)",
            "published fan lists the cone <e0, e2, e0+e1> twice (7 distinct "
            "cones for 8 vertices); the missing cone is <e1, e2, e0+e1>",
        ),
    ),
    CatalogEntry(
        name="x2",
        description="degeneration of the degree-38 threefold over three "
                    "concurrent lines",
        kind="vertices",
        fan=_DELTA2_PRINTED,
        fan_provenance="published",
        published_vertices=_X2_PUBLISHED,
        vertices_negated=True,
        expected_normalized_barycentre=(_F(-1, 57), _F(-1, 57), _F(-1, 57)),
        expected_source="published",
        expected_degree=_F(38),
        notes=(
            "9 vertices; the published fan lists 8 maximal cones - the cone "
            "<e3, e2+e3, e1+e3, e1+e2+e3> is missing",
            "vertex list is invariant under all coordinate permutations",
        ),
    ),
    CatalogEntry(
        name="x3",
        description="degeneration of the degree-38 threefold over a line "
                    "and a double line",
        kind="vertices",
        fan=_DELTA3_PRINTED,
        fan_provenance="published",
        published_vertices=_X3_PUBLISHED,
        vertices_negated=True,
        expected_normalized_barycentre=(_F(-1, 57), _F(-1, 19), _F(1, 57)),
        expected_source="published",
        expected_degree=_F(38),
        notes=("published fan and vertex list are mutually consistent "
               "(8 cones, 8 vertices)",),
    ),
    CatalogEntry(
        name="delta1-printed",
        description="fan of x1 exactly as published",
        kind="fan",
        fan=_DELTA1_PRINTED,
        fan_provenance="published",
        notes=("lists one cone twice; incomplete as printed",),
    ),
    CatalogEntry(
        name="delta2-printed",
        description="fan of x2 exactly as published",
        kind="fan",
        fan=_DELTA2_PRINTED,
        fan_provenance="published",
        notes=("incomplete as printed: uncovered sector around the ray e3",),
    ),
    CatalogEntry(
        name="delta3-printed",
        description="fan of x3 exactly as published",
        kind="fan",
        fan=_DELTA3_PRINTED,
        fan_provenance="published",
        notes=("passes validation: complete, with singular cones",),
    ),
)

_BY_NAME = {e.name: e for e in _ENTRIES}


def names():
    return [e.name for e in _ENTRIES]


def entries():
    return list(_ENTRIES)


def get(name: str) -> CatalogEntry:
    try:
        return _BY_NAME[name]
    except KeyError:
        raise KeyError(f"unknown catalog entry {name!r}; "
                       f"known: {', '.join(names())}") from None


@dataclass(frozen=True)
class ExpectedComparison:
    """Exact comparison of computed against expected values, with seeded
    Monte-Carlo arbitration when they disagree."""

    expected_normalized_barycentre: tuple | None
    computed_normalized_barycentre: tuple
    expected_degree: Fraction | None
    computed_degree: Fraction
    matches: bool | None  # None when nothing was expected
    mc: MCMomentData | None
    mc_supports: str | None  # 'computed' | 'published' | 'inconclusive'


def compare_with_expected(entry: CatalogEntry, md: MomentData, poly,
                          mc_samples: int = 1_000_000,
                          seed: int | None = None,
                          sigmas: float = 3.0) -> ExpectedComparison:
    """Compare exact moment data of the listed polytope against the entry's
    expectations (exact rational equality). On mismatch the Monte-Carlo
    oracle arbitrates: whichever candidate moment vector it confirms within
    `sigmas` standard errors wins."""
    nb = degree_normalized_barycentre(md)
    deg = degree(md)
    expected = entry.expected_normalized_barycentre
    if expected is None:
        return ExpectedComparison(None, nb, entry.expected_degree, deg,
                                  None, None, None)
    matches = (tuple(expected) == tuple(nb)
               and (entry.expected_degree is None
                    or entry.expected_degree == deg))
    mc = mc_supports = None
    if not matches:
        mc = mc_moments(poly, seed=mc_seed() if seed is None else seed,
                        samples=mc_samples)

        def confirmed(moments_q):
            return all(
                abs(est - float(m)) <= sigmas * se
                for est, se, m in zip(mc.first_moments,
                                      mc.first_moment_stderrs, moments_q))

        computed_ok = confirmed(md.first_moments)
        published_moments = [c * (entry.expected_degree or deg)
                             for c in expected]
        published_ok = confirmed(published_moments)
        if computed_ok and not published_ok:
            mc_supports = "computed"
        elif published_ok and not computed_ok:
            mc_supports = "published"
        else:
            mc_supports = "inconclusive"
    return ExpectedComparison(
        expected_normalized_barycentre=tuple(expected),
        computed_normalized_barycentre=tuple(nb),
        expected_degree=entry.expected_degree,
        computed_degree=deg,
        matches=matches,
        mc=mc,
        mc_supports=mc_supports,
    )


def entry_polytope(entry: CatalogEntry, reconciled: bool = False):
    """Hull of the entry's vertex list in its published orientation."""
    pts = entry.vertex_list(reconciled=reconciled)
    if pts is None:
        raise ValueError(f"entry {entry.name} has no vertex list")
    return convex_hull(pts)


def entry_moments(entry: CatalogEntry, reconciled: bool = False) -> MomentData:
    return moments(entry_polytope(entry, reconciled=reconciled))
