"""Seeded Monte-Carlo moment estimation by rejection sampling.

Independent cross-check for :func:`toricfutaki.geometry.moments`: samples
uniformly in the exact bounding box and tests the facet inequalities. The
generator is counter-based (each sample is a pure function of seed and
sample index), and the kernels accumulate exact integer sums of the 53-bit
uniforms, so a fixed (seed, samples) pair gives a bitwise identical
estimate no matter how the sample range is partitioned and no matter which
kernel (compiled or pure) runs it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import mckernel

_TWO_NEG53 = 2.0 ** -53
_TWO_NEG106 = 2.0 ** -106

DEFAULT_SEED = 42


class ZeroAcceptanceError(RuntimeError):
    """No sample was accepted within the budget."""


@dataclass(frozen=True)
class MCMomentData:
    seed: int
    samples: int
    accepted: int
    volume: float
    volume_stderr: float
    first_moments: tuple
    first_moment_stderrs: tuple
    barycentre: tuple


def _float_down(q: Fraction) -> float:
    f = float(q)
    return math.nextafter(f, -math.inf) if f > q else f


def _float_up(q: Fraction) -> float:
    f = float(q)
    return math.nextafter(f, math.inf) if f < q else f


def mc_moments(poly, seed: int = DEFAULT_SEED, samples: int = 100_000,
               kernel=None) -> MCMomentData:
    """Estimate volume and first moments of a full-dimensional VPolytope.

    The bounding box is the exact vertex box rounded outward, so it always
    contains the polytope. Estimates carry one standard error each.
    """
    if samples <= 0:
        raise ValueError("samples must be positive")
    n = poly.rank
    lo_q = [min(v[s] for v in poly.vertices) for s in range(n)]
    hi_q = [max(v[s] for v in poly.vertices) for s in range(n)]
    lo = [_float_down(Fraction(q)) for q in lo_q]
    hi = [_float_up(Fraction(q)) for q in hi_q]
    span = [h - l for h, l in zip(hi, lo)]
    if any(s <= 0 for s in span):
        raise ZeroAcceptanceError("degenerate bounding box")
    normals = [[float(c) for c in f.normal] for f in poly.facets]
    offsets = [float(f.offset) for f in poly.facets]

    run = kernel if kernel is not None else mckernel.sample_counts
    accepted, msum, m2sum = run(seed, 0, samples, lo, span, normals, offsets)
    if accepted == 0:
        raise ZeroAcceptanceError(
            f"no accepted samples out of {samples} (degenerate box?)")

    boxvol = 1.0
    for s in span:
        boxvol *= s
    p = accepted / samples
    volume = boxvol * p
    volume_stderr = boxvol * math.sqrt(p * (1.0 - p) / samples)

    moments = []
    stderrs = []
    for c in range(n):
        # exact integer accumulators -> one float rounding at the end
        sum_y = accepted * lo[c] + span[c] * (msum[c] * _TWO_NEG53)
        sum_y2 = (accepted * lo[c] * lo[c]
                  + 2.0 * lo[c] * span[c] * (msum[c] * _TWO_NEG53)
                  + span[c] * span[c] * (m2sum[c] * _TWO_NEG106))
        ey = sum_y / samples
        ey2 = sum_y2 / samples
        moments.append(boxvol * ey)
        var = max(ey2 - ey * ey, 0.0)
        stderrs.append(boxvol * math.sqrt(var / samples))
    bary = tuple(m / volume for m in moments)
    return MCMomentData(
        seed=seed,
        samples=samples,
        accepted=accepted,
        volume=volume,
        volume_stderr=volume_stderr,
        first_moments=tuple(moments),
        first_moment_stderrs=tuple(stderrs),
        barycentre=bary,
    )
