"""Real part of the generalized Futaki invariant on the torus, and the
numeric moment-map layer of the anticanonical embedding.

For a torus field with coefficients (c_1, ..., c_n) in the basis
t_s d/dt_s, the real part is

    Re F = -(2*pi)^n * sum_s Re(c_s) * I_s,

where I_s is the exact first moment of the anticanonical polytope in
coordinate s. The rational factor sum_s Re(c_s) * I_s is returned alongside
the float so sign decisions stay exact. The imaginary part on the torus is
0 for the compact-torus-invariant metric choice and is reported as such.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exact import format_rat
from .fano import (
    GorensteinData,
    NotAlmostFanoError,
    anticanonical_hrep,
    anticanonical_polytope,
    gorenstein_data,
    is_almost_fano,
    lattice_points,
)
from .fans import Fan, ValidationReport, validate_fan
from .geometry import (
    MomentData,
    VPolytope,
    degree,
    degree_normalized_barycentre,
    moments,
)


class InvalidFanError(ValueError):
    """Fan fails validation (axioms or completeness)."""

    def __init__(self, message, report: ValidationReport):
        self.report = report
        super().__init__(message)


@dataclass(frozen=True)
class TorusField:
    """Holomorphic torus field sum_s coeffs[s] * t_s d/dt_s; only the real
    parts of the coefficients enter the invariant."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))

    def real_parts(self):
        return [c.real if isinstance(c, complex) else c for c in self.coeffs]

    @property
    def exact(self) -> bool:
        return all(isinstance(r, (int, Fraction)) for r in self.real_parts())


@dataclass(frozen=True)
class FanAnalysis:
    """Validated fan together with its anticanonical data."""

    fan: Fan
    validation: ValidationReport
    gorenstein: GorensteinData
    polytope: VPolytope  # the anticanonical polytope conv(-covectors)
    moment_data: MomentData
    degree: Fraction  # n! * volume
    normalized_barycentre: tuple  # first moments / degree (published style)


@dataclass(frozen=True)
class FutakiValue:
    value: float  # Re F
    exact_factor: Fraction | None  # sum_s Re(c_s) * I_s, when rational
    imag: float = 0.0

    @property
    def sign(self):
        if self.exact_factor is not None:
            f = self.exact_factor
            return 0 if f == 0 else (-1 if f > 0 else 1)
        v = self.value
        return 0 if v == 0 else (1 if v > 0 else -1)


@lru_cache(maxsize=None)
def analyze_fan(fan: Fan) -> FanAnalysis:
    """Validate, solve the Gorenstein systems, build the anticanonical
    polytope and integrate it. Raises InvalidFanError / NotAlmostFanoError."""
    report = validate_fan(fan)
    if not report.axioms_ok:
        raise InvalidFanError("fan axioms are violated", report)
    if not report.complete:
        raise InvalidFanError("fan is not complete", report)
    gor = gorenstein_data(fan)
    ok, diagnostics = is_almost_fano(fan, gor)
    if not ok:
        raise NotAlmostFanoError("; ".join(diagnostics))
    poly = anticanonical_polytope(fan, gor)
    md = moments(poly)
    return FanAnalysis(
        fan=fan,
        validation=report,
        gorenstein=gor,
        polytope=poly,
        moment_data=md,
        degree=degree(md),
        normalized_barycentre=degree_normalized_barycentre(md),
    )


def futaki_value(md: MomentData, field) -> FutakiValue:
    """Evaluate on the moment data of the anticanonical polytope."""
    field = field if isinstance(field, TorusField) else TorusField(tuple(field))
    n = len(md.first_moments)
    if len(field.coeffs) != n:
        raise ValueError(f"field has {len(field.coeffs)} coefficients, "
                         f"polytope rank is {n}")
    reals = field.real_parts()
    if field.exact:
        factor = sum((Fraction(r) * m for r, m in zip(reals, md.first_moments)),
                     Fraction(0))
        value = -((2.0 * math.pi) ** n) * float(factor)
        return FutakiValue(value=value, exact_factor=factor)
    factor_f = sum(float(r) * float(m) for r, m in zip(reals, md.first_moments))
    return FutakiValue(value=-((2.0 * math.pi) ** n) * factor_f,
                       exact_factor=None)


def futaki_real(fan: Fan, field) -> FutakiValue:
    """Re F of a torus field on the almost Fano variety of the fan."""
    return futaki_value(analyze_fan(fan).moment_data, field)


def re_futaki_basis(md: MomentData):
    """Re F on the basis fields t_s d/dt_s: -(2*pi)^n times each moment."""
    n = len(md.first_moments)
    scale = (2.0 * math.pi) ** n
    return tuple(-scale * float(m) for m in md.first_moments)


CONVENTIONS = {
    "anticanonical_polytope":
        "convex hull of the negated per-cone covectors; equivalently "
        "{u : <u, ray> >= -1 for every ray}",
    "re_futaki":
        "-(2*pi)^n * sum_s Re(c_s) * integral of y_s over the "
        "anticanonical polytope",
    "normalized_barycentre":
        "first moments divided by the degree n!*volume (the normalization "
        "of the published catalog values); the centroid is moments/volume",
    "imag_futaki":
        "0 on torus fields for the invariant metric choice",
}


@dataclass(frozen=True)
class FutakiReport:
    rank: int
    volume: Fraction
    degree: Fraction
    first_moments: tuple
    barycentre: tuple  # centroid of the anticanonical polytope
    normalized_barycentre: tuple
    re_basis: tuple  # floats, one per coordinate field
    fields: tuple  # (coeffs, FutakiValue) pairs

    def to_dict(self):
        return {
            "rank": self.rank,
            "volume": format_rat(self.volume),
            "degree": format_rat(self.degree),
            "first_moments": [format_rat(m) for m in self.first_moments],
            "barycentre": [format_rat(b) for b in self.barycentre],
            "normalized_barycentre":
                [format_rat(b) for b in self.normalized_barycentre],
            "re_futaki_basis": list(self.re_basis),
            "fields": [
                {
                    "coeffs": [str(c) for c in coeffs],
                    "re_futaki": fv.value,
                    "im_futaki": fv.imag,
                    "exact_factor": (format_rat(fv.exact_factor)
                                     if fv.exact_factor is not None else None),
                    "sign": fv.sign,
                }
                for coeffs, fv in self.fields
            ],
            "convention": CONVENTIONS,
        }


def futaki_report(md: MomentData, fields=()) -> FutakiReport:
    evaluated = tuple(
        (tuple(f.coeffs if isinstance(f, TorusField) else f),
         futaki_value(md, f))
        for f in fields)
    return FutakiReport(
        rank=len(md.first_moments),
        volume=md.volume,
        degree=degree(md),
        first_moments=md.first_moments,
        barycentre=md.barycentre,
        normalized_barycentre=degree_normalized_barycentre(md),
        re_basis=re_futaki_basis(md),
        fields=evaluated,
    )


# ---------------------------------------------------------------------------
# anticanonical embedding and moment map


@dataclass(frozen=True)
class EmbeddingData:
    """Lattice exponents of the projective embedding by the sections of the
    index-scaled anticanonical bundle; the zero exponent comes first."""

    k: int  # Gorenstein index
    exponents: tuple
    ambient_dim: int  # N: the embedding target is P^N

    def __post_init__(self):
        assert self.exponents[0] == (0,) * len(self.exponents[0])
        assert len(set(self.exponents)) == len(self.exponents)


def build_embedding(fan: Fan) -> EmbeddingData:
    analysis = analyze_fan(fan)
    k = analysis.gorenstein.index
    pts = lattice_points(anticanonical_hrep(fan, k))
    zero = (0,) * fan.rank
    if zero not in pts:
        raise AssertionError("origin missing from the anticanonical polytope")
    exponents = (zero,) + tuple(p for p in pts if p != zero)
    return EmbeddingData(k=k, exponents=exponents,
                         ambient_dim=len(exponents) - 1)


def _log_terms(emb: EmbeddingData, x):
    return [2.0 * sum(xi * ui for xi, ui in zip(x, u)) for u in emb.exponents]


def f_eval(emb: EmbeddingData, x) -> float:
    """log of the squared-norm sum of the embedding monomials at
    t = exp(x + i*theta); max-shifted for overflow safety."""
    terms = _log_terms(emb, x)
    mx = max(terms)
    return mx + math.log(sum(math.exp(t - mx) for t in terms))


def moment_map(emb: EmbeddingData, x):
    """Softmax-weighted average of the exponents; equals half the gradient
    of f_eval and lands inside the exponent polytope."""
    terms = _log_terms(emb, x)
    mx = max(terms)
    weights = [math.exp(t - mx) for t in terms]
    total = sum(weights)
    n = len(x)
    return tuple(
        sum(w * u[s] for w, u in zip(weights, emb.exponents)) / total
        for s in range(n))


def gradient_selftest(emb: EmbeddingData, trials: int = 100,
                      seed: int = 0, step: float = 1e-5) -> float:
    """Max deviation between central finite differences of f_eval and twice
    the moment map, over seeded random points in [-3, 3]^n."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    n = len(emb.exponents[0])
    rng = random.Random(seed)
    worst = 0.0
    for _ in range(trials):
        x = [rng.uniform(-3.0, 3.0) for _ in range(n)]
        mu = moment_map(emb, x)
        for k in range(n):
            xp = list(x)
            xm = list(x)
            xp[k] += step
            xm[k] -= step
            fd = (f_eval(emb, xp) - f_eval(emb, xm)) / (2.0 * step)
            worst = max(worst, abs(fd - 2.0 * mu[k]))
    return worst
