import json
import math
import random
from fractions import Fraction
from itertools import product

import pytest

from toricfutaki import catalog
from toricfutaki.exact import dot
from toricfutaki.fano import NotAlmostFanoError
from toricfutaki.fans import Cone, Fan
from toricfutaki.futaki import (
    EmbeddingData,
    InvalidFanError,
    TorusField,
    analyze_fan,
    build_embedding,
    f_eval,
    futaki_real,
    futaki_report,
    futaki_value,
    gradient_selftest,
    moment_map,
    re_futaki_basis,
)
from toricfutaki.geometry import convex_hull

P3 = catalog.get("p3").fan
TWO_PI = 2.0 * math.pi


def test_futaki_p3_vanishes():
    rng = random.Random(1)
    for _ in range(10):
        coeffs = tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 5))
                       for _ in range(3))
        fv = futaki_real(P3, coeffs)
        assert fv.exact_factor == 0
        assert fv.value == 0.0


def test_futaki_x2_basis_field():
    fan = catalog.get("x2").reconciled_fan()
    fv = futaki_real(fan, (1, 0, 0))
    # the anticanonical polytope is the negation of the published list, so
    # its first moment is +2/3 and Re F is negative
    assert fv.exact_factor == Fraction(2, 3)
    assert fv.value == -(TWO_PI ** 3) * float(Fraction(2, 3))
    assert fv.value < 0
    assert fv.sign == -1


def test_futaki_imaginary_field_vanishes():
    fan = catalog.get("x2").reconciled_fan()
    fv = futaki_real(fan, (1j, 1j, 1j))
    assert fv.value == 0.0
    assert fv.imag == 0.0


def test_futaki_rank_mismatch():
    with pytest.raises(ValueError):
        futaki_real(P3, (1, 1))


def test_futaki_requires_valid_fan():
    incomplete = catalog.get("delta2-printed").fan
    with pytest.raises(InvalidFanError):
        futaki_real(incomplete, (1, 1, 1))
    hirzebruch = Fan(rank=2, rays=((1, 0), (0, 1), (-1, 2), (0, -1)),
                     max_cones=(Cone((0, 1)), Cone((1, 2)), Cone((2, 3)),
                                Cone((0, 3))))
    with pytest.raises(NotAlmostFanoError):
        futaki_real(hirzebruch, (1, 1))


def test_futaki_linearity_exact():
    md = analyze_fan(catalog.get("x3").reconciled_fan()).moment_data
    rng = random.Random(5)
    for _ in range(50):
        a = tuple(Fraction(rng.randint(-6, 6), rng.randint(1, 4))
                  for _ in range(3))
        b = tuple(Fraction(rng.randint(-6, 6), rng.randint(1, 4))
                  for _ in range(3))
        alpha = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
        beta = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
        combo = tuple(alpha * x + beta * y for x, y in zip(a, b))
        lhs = futaki_value(md, combo).exact_factor
        rhs = (alpha * futaki_value(md, a).exact_factor
               + beta * futaki_value(md, b).exact_factor)
        assert lhs == rhs


def test_futaki_basis_consistency():
    md = analyze_fan(catalog.get("x1").reconciled_fan()).moment_data
    basis = re_futaki_basis(md)
    rng = random.Random(6)
    for _ in range(20):
        coeffs = [rng.uniform(-2, 2) for _ in range(3)]
        direct = futaki_value(md, tuple(coeffs)).value
        combined = sum(c * b for c, b in zip(coeffs, basis))
        assert abs(direct - combined) <= 1e-9 * max(1.0, abs(direct))


def test_vanishing_for_symmetric_polytopes():
    # central symmetry for the segment and the square; for p3 the simplex
    # is merely permutation-symmetric but still has barycentre zero
    for name in ("p1", "p1xp1"):
        analysis = analyze_fan(catalog.get(name).fan)
        pts = set(analysis.polytope.vertices)
        assert {tuple(-c for c in p) for p in pts} == pts
    for name in ("p1", "p1xp1", "p3"):
        analysis = analyze_fan(catalog.get(name).fan)
        assert all(b == 0.0 for b in re_futaki_basis(analysis.moment_data))


def test_sign_law_all_catalog_entries():
    fans = [catalog.get(n).fan for n in ("p1", "p2", "p3", "p1xp1", "bl1p2")]
    fans += [catalog.get(n).reconciled_fan() for n in ("x1", "x2", "x3")]
    for fan in fans:
        analysis = analyze_fan(fan)
        a = analysis.moment_data.barycentre
        for s in range(fan.rank):
            unit = tuple(int(i == s) for i in range(fan.rank))
            fv = futaki_value(analysis.moment_data, unit)
            expected = 0 if a[s] == 0 else (-1 if a[s] > 0 else 1)
            assert fv.sign == expected


def test_nonzero_control_bl1p2():
    analysis = analyze_fan(catalog.get("bl1p2").fan)
    fv = futaki_value(analysis.moment_data, (1, 0))
    assert fv.exact_factor == Fraction(1, 3)
    assert fv.value < 0


def test_futaki_report_json():
    md = analyze_fan(catalog.get("x2").reconciled_fan()).moment_data
    rep = futaki_report(md, fields=[(1, 0, 0), (Fraction(1, 2), 1, 0)])
    doc = rep.to_dict()
    text = json.dumps(doc)
    parsed = json.loads(text)
    assert parsed["volume"] == "19/3"
    assert parsed["degree"] == "38"
    assert parsed["normalized_barycentre"] == ["1/57", "1/57", "1/57"]
    assert parsed["fields"][0]["exact_factor"] == "2/3"
    assert "convention" in parsed


def test_build_embedding_p1():
    emb = build_embedding(catalog.get("p1").fan)
    assert emb.k == 1
    assert emb.exponents == ((0,), (-1,), (1,))
    assert emb.ambient_dim == 2
    assert f_eval(emb, (0.0,)) == pytest.approx(math.log(3.0), abs=1e-12)
    assert moment_map(emb, (0.0,)) == (0.0,)


def test_build_embedding_p3():
    emb = build_embedding(P3)
    assert emb.k == 1
    assert emb.ambient_dim == 34  # 35 anticanonical lattice points
    assert f_eval(emb, (0.0, 0.0, 0.0)) == pytest.approx(math.log(35.0))


def test_build_embedding_x2():
    fan = catalog.get("x2").reconciled_fan()
    emb = build_embedding(fan)
    # independent enumeration straight from the ray pairings
    rays = fan.rays
    brute = [u for u in product(range(-2, 3), repeat=3)
             if all(dot(u, r) >= -1 for r in rays)]
    assert len(brute) == len(emb.exponents) == 22
    assert emb.ambient_dim == 21
    assert set(emb.exponents) == set(brute)


def test_moment_map_uniform_is_exponent_mean():
    fan = catalog.get("x2").reconciled_fan()
    emb = build_embedding(fan)
    mu = moment_map(emb, (0.0, 0.0, 0.0))
    n = len(emb.exponents)
    for s in range(3):
        mean = sum(u[s] for u in emb.exponents) / n
        assert mu[s] == pytest.approx(mean, abs=1e-12)


def test_moment_map_image_in_polytope():
    rng = random.Random(9)
    for name in ("p1", "p3", "x2"):
        entry = catalog.get(name)
        fan = entry.fan if entry.kind == "fan" else entry.reconciled_fan()
        emb = build_embedding(fan)
        hull = convex_hull(emb.exponents)
        for _ in range(100):
            x = [rng.uniform(-3, 3) for _ in range(fan.rank)]
            mu = moment_map(emb, x)
            for facet in hull.facets:
                val = sum(float(c) * m for c, m in zip(facet.normal, mu)) \
                    + float(facet.offset)
                assert val >= -1e-9


def test_f_eval_asymptotic_slope():
    emb = build_embedding(P3)
    direction = (1.0, 0.5, -0.25)
    slope_target = 2.0 * max(sum(d * u for d, u in zip(direction, exp))
                             for exp in emb.exponents)
    t = 60.0
    x1 = [t * d for d in direction]
    x2 = [(t + 1) * d for d in direction]
    slope = f_eval(emb, x2) - f_eval(emb, x1)
    assert slope == pytest.approx(slope_target, abs=1e-8)


def test_gradient_selftest_thresholds():
    for name in ("p1", "p3", "x2"):
        entry = catalog.get(name)
        fan = entry.fan if entry.kind == "fan" else entry.reconciled_fan()
        emb = build_embedding(fan)
        assert gradient_selftest(emb, trials=100, seed=0) <= 1e-6


def test_gradient_selftest_degenerate_single_exponent():
    emb = EmbeddingData(k=1, exponents=((0, 0),), ambient_dim=0)
    assert gradient_selftest(emb, trials=10, seed=3) == 0.0
    assert moment_map(emb, (1.3, -0.7)) == (0.0, 0.0)


def test_gradient_selftest_deterministic():
    emb = build_embedding(P3)
    a = gradient_selftest(emb, trials=25, seed=11)
    b = gradient_selftest(emb, trials=25, seed=11)
    assert a == b


def test_torus_field_exactness():
    assert TorusField((1, Fraction(1, 2))).exact
    assert not TorusField((1.5, 2)).exact
    assert not TorusField((1 + 0j, 1)).exact
    assert TorusField((1j, 2j)).real_parts() == [0.0, 0.0]
