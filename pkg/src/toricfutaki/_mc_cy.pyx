# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled rejection-sampling kernel; see _mc_py.py for the contract.

Must stay bitwise compatible with the pure kernel: same counter-based
generator, same floating-point operation order (built with
-ffp-contract=off so no FMA contraction sneaks in).
"""

from libc.stdlib cimport free, malloc

cdef extern from *:
    ctypedef unsigned long long u128 "unsigned __int128"

ctypedef unsigned long long u64

# drain 128-bit accumulators every 2**20 samples (keeps them far from overflow)
cdef Py_ssize_t CHUNK = 1048576
cdef double TWO_NEG53 = 2.0 ** -53

cdef inline u64 _mix(u64 z) noexcept nogil:
    z = (z ^ (z >> 30)) * <u64>0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * <u64>0x94D049BB133111EB
    return z ^ (z >> 31)


cdef object _u128_to_pyint(u128 v):
    return (int(<u64>(v >> 64)) << 64) | int(<u64>v)


def sample_counts(seed, start, count, lo, span, normals, offsets):
    cdef Py_ssize_t n = len(lo)
    cdef Py_ssize_t nf = len(offsets)
    cdef Py_ssize_t i, c, f, done, todo
    cdef u64 useed = <u64>(seed & ((1 << 64) - 1))
    cdef u64 golden = <u64>0x9E3779B97F4A7C15
    cdef u64 cstart = <u64>start
    cdef u64 pos, m
    cdef u64 total_accepted = 0
    cdef double s
    cdef bint ok

    cdef double *clo = <double *>malloc(n * sizeof(double))
    cdef double *cspan = <double *>malloc(n * sizeof(double))
    cdef double *cy = <double *>malloc(n * sizeof(double))
    cdef u64 *mbuf = <u64 *>malloc(n * sizeof(u64))
    cdef double *cnorm = <double *>malloc(max(nf * n, 1) * sizeof(double))
    cdef double *coff = <double *>malloc(max(nf, 1) * sizeof(double))
    cdef u128 *msum = <u128 *>malloc(n * sizeof(u128))
    cdef u128 *m2sum = <u128 *>malloc(n * sizeof(u128))
    if (clo == NULL or cspan == NULL or cy == NULL or mbuf == NULL
            or cnorm == NULL or coff == NULL or msum == NULL or m2sum == NULL):
        raise MemoryError()

    py_msum = [0] * n
    py_m2sum = [0] * n
    try:
        for c in range(n):
            clo[c] = lo[c]
            cspan[c] = span[c]
        for f in range(nf):
            coff[f] = offsets[f]
            row = normals[f]
            for c in range(n):
                cnorm[f * n + c] = row[c]

        done = 0
        while done < count:
            todo = count - done
            if todo > CHUNK:
                todo = CHUNK
            for c in range(n):
                msum[c] = 0
                m2sum[c] = 0
            with nogil:
                for i in range(todo):
                    pos = (cstart + <u64>done + <u64>i) * <u64>n
                    for c in range(n):
                        m = _mix(useed + (pos + <u64>c + 1) * golden) >> 11
                        mbuf[c] = m
                        cy[c] = clo[c] + cspan[c] * (<double>m * TWO_NEG53)
                    ok = True
                    for f in range(nf):
                        s = coff[f]
                        for c in range(n):
                            s += cnorm[f * n + c] * cy[c]
                        if not s >= 0.0:
                            ok = False
                            break
                    if ok:
                        total_accepted += 1
                        for c in range(n):
                            m = mbuf[c]
                            msum[c] += m
                            m2sum[c] += <u128>m * m
            for c in range(n):
                py_msum[c] += _u128_to_pyint(msum[c])
                py_m2sum[c] += _u128_to_pyint(m2sum[c])
            done += todo
        return int(total_accepted), py_msum, py_m2sum
    finally:
        free(clo)
        free(cspan)
        free(cy)
        free(mbuf)
        free(cnorm)
        free(coff)
        free(msum)
        free(m2sum)
