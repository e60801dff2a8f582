import math
import random
from fractions import Fraction

import pytest

from helpers import apply_affine, random_full_dim_points, random_unimodular
from toricfutaki.geometry import (
    DegenerateGeometryError,
    convex_hull,
    degree,
    degree_normalized_barycentre,
    moments,
    moments_of,
    negate_moment_data,
    negate_points,
    to_off,
    triangulate,
)

# published vertex lists of the three degenerations (negated anticanonical
# polytopes); expected values below were frozen from an independent
# Delaunay-based integrator over exact integer determinants and are
# cross-checked against the Monte-Carlo oracle in test_montecarlo.py
X1_PUBLISHED = [(1, 1, 0), (1, 0, 1), (-1, 0, 1), (0, 1, -2),
                (1, 1, -2), (0, -1, 0), (-2, 0, 1), (1, -2, 1)]
X1_DERIVED = [(1, 1, 0), (1, 0, 1), (-1, 0, 1), (0, 1, -2),
              (1, 1, -2), (0, -1, 0), (-2, 1, 0), (1, -2, 1)]
X2_PUBLISHED = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 0, -2), (0, 1, -2),
                (1, -2, 0), (-2, 1, 0), (-2, 0, 1), (0, -2, 1)]
X3_PUBLISHED = [(1, -3, 1), (-2, 1, 0), (-2, 0, 1), (1, -1, -1),
                (0, 1, -2), (0, 0, 1), (1, -1, 1), (0, 1, 0)]

P3_ANTICANONICAL = [(-1, -1, -1), (3, -1, -1), (-1, 3, -1), (-1, -1, 3)]


def test_hull_simplex_with_centroid():
    pts = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1),
           (Fraction(1, 4), Fraction(1, 4), Fraction(1, 4))]
    hull = convex_hull(pts)
    assert len(hull.vertices) == 4
    assert len(hull.facets) == 4
    assert (Fraction(1, 4),) * 3 not in hull.vertices


def test_hull_cube():
    pts = [(a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)]
    hull = convex_hull(pts)
    assert len(hull.vertices) == 8
    assert len(hull.facets) == 6


def test_hull_x2_all_extremal():
    hull = convex_hull(X2_PUBLISHED)
    assert sorted(hull.vertices) == sorted(
        tuple(map(Fraction, p)) for p in X2_PUBLISHED)
    assert len(hull.facets) == 8


def test_hull_x2_matches_scipy():
    scipy_spatial = pytest.importorskip("scipy.spatial")
    sp = scipy_spatial.ConvexHull([list(map(float, p)) for p in X2_PUBLISHED])
    assert len(sp.vertices) == 9


def test_hull_duplicates_merged():
    hull = convex_hull([(0, 0), (1, 0), (0, 1), (1, 0)])
    assert len(hull.points) == 3


def test_hull_degenerate_inputs():
    with pytest.raises(DegenerateGeometryError):
        convex_hull([(0, 0, 0), (1, 0, 0), (2, 0, 0), (3, 0, 0)])
    with pytest.raises(DegenerateGeometryError):
        convex_hull([(0, 0), (1, 1)])


def test_hull_rank_one():
    hull = convex_hull([(-1,), (0,), (1,)])
    assert hull.vertices == ((-1,), (1,))
    md = moments(hull)
    assert md.volume == 2
    assert md.first_moments == (0,)


def test_facets_contain_enough_vertices():
    for pts in (X1_PUBLISHED, X2_PUBLISHED, X3_PUBLISHED, P3_ANTICANONICAL):
        hull = convex_hull(pts)
        for f in hull.facets:
            tight = [v for v in hull.vertices if f.eval(v) == 0]
            assert len(tight) >= hull.rank


def test_triangulate_simplex_is_itself():
    hull = convex_hull([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)])
    cells = triangulate(hull)
    assert len(cells) == 1
    assert cells[0].volume() == Fraction(1, 6)


def test_triangulate_cube():
    pts = [(a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)]
    cells = triangulate(convex_hull(pts))
    assert len(cells) in (5, 6)
    assert sum(c.volume() for c in cells) == 1


def test_triangulate_x1_additivity():
    hull = convex_hull(X1_PUBLISHED)
    cells = triangulate(hull)
    assert sum(c.volume() for c in cells) == moments(hull).volume


def test_moments_p3_anticanonical():
    md = moments_of(P3_ANTICANONICAL)
    assert md.barycentre == (0, 0, 0)
    assert md.volume == Fraction(32, 3)
    assert degree(md) == 64


def test_moments_unit_cube():
    pts = [(a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)]
    md = moments_of(pts)
    assert md.volume == 1
    assert md.barycentre == (Fraction(1, 2),) * 3


def test_moments_x2_published():
    md = moments_of(X2_PUBLISHED)
    assert md.volume == Fraction(19, 3)
    assert md.first_moments == (Fraction(-2, 3),) * 3
    assert md.barycentre == (Fraction(-2, 19),) * 3
    assert degree(md) == 38
    assert degree_normalized_barycentre(md) == (Fraction(-1, 57),) * 3


def test_moments_x3_published():
    md = moments_of(X3_PUBLISHED)
    assert md.volume == Fraction(19, 3)
    assert md.first_moments == (Fraction(-2, 3), Fraction(-2), Fraction(2, 3))
    assert degree_normalized_barycentre(md) == (
        Fraction(-1, 57), Fraction(-1, 19), Fraction(1, 57))


def test_moments_x1_published_vs_derived():
    # the verbatim list integrates to degree 36 with a lopsided barycentre;
    # the corrected list restores degree 38 and the published value
    md_pub = moments_of(X1_PUBLISHED)
    assert md_pub.volume == 6
    assert md_pub.first_moments == (Fraction(5, 6), Fraction(-1, 3), 0)
    md_fix = moments_of(X1_DERIVED)
    assert md_fix.volume == Fraction(19, 3)
    assert md_fix.first_moments == (
        Fraction(2, 3), Fraction(2, 3), Fraction(-2, 3))
    assert degree_normalized_barycentre(md_fix) == (
        Fraction(1, 57), Fraction(1, 57), Fraction(-1, 57))


def test_barycentre_times_volume_is_moments():
    rng = random.Random(7)
    for _ in range(25):
        pts = random_full_dim_points(rng, 3, rng.randint(4, 8))
        md = moments_of(pts)
        assert tuple(b * md.volume for b in md.barycentre) == md.first_moments


def test_barycentre_strictly_inside():
    for pts in (X1_PUBLISHED, X2_PUBLISHED, X3_PUBLISHED, P3_ANTICANONICAL):
        hull = convex_hull(pts)
        md = moments(hull)
        for f in hull.facets:
            assert f.eval(md.barycentre) > 0


def test_additivity_random():
    rng = random.Random(11)
    for _ in range(40):
        n = rng.randint(2, 3)
        pts = random_full_dim_points(rng, n, rng.randint(n + 1, n + 4))
        hull = convex_hull(pts)
        cells = triangulate(hull)
        assert sum(c.volume() for c in cells) == moments(hull).volume


def test_moments_input_permutation_invariance():
    rng = random.Random(13)
    base = moments_of(X2_PUBLISHED)
    for _ in range(30):
        shuffled = list(X2_PUBLISHED)
        rng.shuffle(shuffled)
        assert moments_of(shuffled) == base


def test_affine_equivariance():
    rng = random.Random(17)
    for _ in range(30):
        pts = random_full_dim_points(rng, 3, rng.randint(4, 7))
        mat = random_unimodular(rng, 3)
        shift = tuple(rng.randint(-3, 3) for _ in range(3))
        md = moments_of(pts)
        md_t = moments_of(apply_affine(pts, mat, shift))
        assert md_t.volume == md.volume
        expected = tuple(
            sum(mat[r][c] * md.barycentre[c] for c in range(3)) + shift[r]
            for r in range(3))
        assert md_t.barycentre == expected


def test_negation_antisymmetry():
    rng = random.Random(19)
    for pts in (X1_PUBLISHED, X2_PUBLISHED, X3_PUBLISHED):
        md = moments_of(pts)
        md_neg = moments_of(negate_points(pts))
        assert md_neg.volume == md.volume
        assert md_neg.first_moments == tuple(-m for m in md.first_moments)
        assert negate_moment_data(md) == md_neg
    for _ in range(20):
        pts = random_full_dim_points(rng, 3, rng.randint(4, 7))
        md = moments_of(pts)
        assert moments_of(negate_points(pts)) == negate_moment_data(md)


def test_x2_symmetry_equal_coordinates():
    # the list is closed under coordinate permutations, so the barycentre
    # must have equal coordinates independently of any published number
    perms = {tuple(p[i] for i in order)
             for p in X2_PUBLISHED
             for order in ((0, 1, 2), (0, 2, 1), (1, 0, 2),
                           (1, 2, 0), (2, 0, 1), (2, 1, 0))}
    assert perms == {tuple(p) for p in X2_PUBLISHED}
    md = moments_of(X2_PUBLISHED)
    assert len(set(md.barycentre)) == 1


def test_off_export():
    off = to_off(convex_hull(P3_ANTICANONICAL))
    lines = off.strip().splitlines()
    assert lines[0] == "OFF"
    nv, nf, ne = map(int, lines[1].split())
    assert (nv, nf) == (4, 4)
    assert len(lines) == 2 + nv + nf
    # faces index valid vertices
    for face in lines[2 + nv:]:
        k, *idx = map(int, face.split())
        assert k == len(idx) >= 3
        assert all(0 <= i < nv for i in idx)
