"""Pure-Python rejection-sampling kernel.

Mirrors the compiled kernel in toricfutaki._mc_cy instruction for
instruction: the two must produce bitwise identical results. Keep the
floating-point operation order in sync when editing either one.
"""

_MASK = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_TWO_NEG53 = 2.0 ** -53


def _mix(z):
    # splitmix64 finalizer
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


def sample_counts(seed, start, count, lo, span, normals, offsets):
    """Rejection-sample box points against facet inequalities.

    Sample i, coordinate c draws the 53-bit integer
    m = mix(seed + (i*rank + c + 1) * GOLDEN) >> 11 and the point coordinate
    lo[c] + span[c] * (m * 2^-53). Returns (accepted, sum of m per
    coordinate over accepted samples, sum of m^2 likewise) with exact
    integer sums, so any partition of [start, start+count) recombines to
    identical totals.
    """
    seed = seed & _MASK
    n = len(lo)
    nf = len(offsets)
    accepted = 0
    msum = [0] * n
    m2sum = [0] * n
    mbuf = [0] * n
    y = [0.0] * n
    for i in range(start, start + count):
        pos = i * n
        for c in range(n):
            m = _mix((seed + ((pos + c + 1) * _GOLDEN & _MASK)) & _MASK) >> 11
            mbuf[c] = m
            y[c] = lo[c] + span[c] * (m * _TWO_NEG53)
        ok = True
        for f in range(nf):
            s = offsets[f]
            row = normals[f]
            for c in range(n):
                s += row[c] * y[c]
            if not s >= 0.0:
                ok = False
                break
        if ok:
            accepted += 1
            for c in range(n):
                m = mbuf[c]
                msum[c] += m
                m2sum[c] += m * m
    return accepted, msum, m2sum
