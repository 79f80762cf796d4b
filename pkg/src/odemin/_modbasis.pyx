# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Mod-p kernel for the iterative shifted order-basis computation.

Rows of the work basis are dense coefficient arrays over GF(p) with p below
2^31 so products fit in 64 bits.  This mirrors modbasis_py.order_basis_modp
exactly; the pure-Python module is the fallback when this extension is not
built.
"""

from libc.stdlib cimport calloc, free, malloc


def order_basis_modp(object series, object shifts, long order, long prime):
    """Iterative order basis over GF(prime).

    series: list of k int lists (coefficients 0..order-1 of each series)
    shifts: list of k nonnegative degree bounds s_i (shift vector is -s)
    Returns (rows, deltas): rows as list of k lists of k int lists.
    """
    cdef long k = len(series)
    cdef long p = order
    cdef unsigned long long P = <unsigned long long> prime
    cdef long cap = p + 2
    cdef long i, j, t, sigma, piv, d, lim, n
    cdef unsigned long long acc, c, cinv, r

    # flat arrays: F[i*p + t]; B[(i*k + j)*cap + t]; deg[i*k + j]
    cdef unsigned long long *F = <unsigned long long *> calloc(k * p, sizeof(unsigned long long))
    cdef unsigned long long *B = <unsigned long long *> calloc(k * k * cap, sizeof(unsigned long long))
    cdef long *deg = <long *> malloc(k * k * sizeof(long))
    cdef long *delta = <long *> malloc(k * sizeof(long))
    cdef unsigned long long *res = <unsigned long long *> malloc(k * sizeof(unsigned long long))
    if F == NULL or B == NULL or deg == NULL or delta == NULL or res == NULL:
        raise MemoryError()
    try:
        for i in range(k):
            row = series[i]
            n = len(row)
            for t in range(p if p < n else n):
                F[i * p + t] = <unsigned long long> (row[t] % prime)
        for i in range(k):
            for j in range(k):
                deg[i * k + j] = -1
            B[(i * k + i) * cap] = 1
            deg[i * k + i] = 0
            delta[i] = -<long> shifts[i]

        for sigma in range(p):
            # residues: coefficient of z^sigma in row_i . F
            for i in range(k):
                acc = 0
                for j in range(k):
                    d = deg[i * k + j]
                    if d < 0:
                        continue
                    lim = d if d < sigma else sigma
                    for t in range(lim + 1):
                        c = B[(i * k + j) * cap + t]
                        if c:
                            acc = (acc + c * F[j * p + sigma - t]) % P
                res[i] = acc
            piv = -1
            for i in range(k):
                if res[i] and (piv < 0 or delta[i] < delta[piv]):
                    piv = i
            if piv < 0:
                continue
            cinv = _inv(res[piv], P)
            for i in range(k):
                if i == piv or not res[i]:
                    continue
                r = (res[i] * cinv) % P
                # row_i -= r * row_piv
                for j in range(k):
                    d = deg[piv * k + j]
                    if d < 0:
                        continue
                    for t in range(d + 1):
                        c = B[(piv * k + j) * cap + t]
                        if c:
                            B[(i * k + j) * cap + t] = \
                                (B[(i * k + j) * cap + t] + (P - r) * c) % P
                    if deg[i * k + j] < d:
                        deg[i * k + j] = d
                    while deg[i * k + j] >= 0 and B[(i * k + j) * cap + deg[i * k + j]] == 0:
                        deg[i * k + j] -= 1
            # row_piv *= z
            for j in range(k):
                d = deg[piv * k + j]
                if d < 0:
                    continue
                for t in range(d, -1, -1):
                    B[(piv * k + j) * cap + t + 1] = B[(piv * k + j) * cap + t]
                B[(piv * k + j) * cap] = 0
                deg[piv * k + j] = d + 1
            delta[piv] += 1

        rows = []
        for i in range(k):
            row_out = []
            for j in range(k):
                d = deg[i * k + j]
                row_out.append([int(B[(i * k + j) * cap + t]) for t in range(d + 1)])
            rows.append(row_out)
        deltas = [int(delta[i]) for i in range(k)]
        return rows, deltas
    finally:
        free(F)
        free(B)
        free(deg)
        free(delta)
        free(res)


cdef unsigned long long _inv(unsigned long long a, unsigned long long p):
    cdef long long t = 0, newt = 1, q, tmp
    cdef long long r = <long long> p, newr = <long long> (a % p)
    while newr != 0:
        q = r / newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += <long long> p
    return <unsigned long long> t
