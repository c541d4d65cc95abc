# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels.

Drop-in replacements for the functions of ``paucity._pykernels`` (same
arguments, same results in the same order).  Inputs must fit in signed
64-bit integers; internal arithmetic is signed 128-bit with every
operation checked through the compiler's overflow builtins.
"""

from libc.stdlib cimport malloc, free

from .errors import Overflow, WorkBudgetExceeded

cdef extern from *:
    """
    typedef __int128 paucity_i128;
    static inline int paucity_mul(paucity_i128 a, paucity_i128 b, paucity_i128 *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int paucity_add(paucity_i128 a, paucity_i128 b, paucity_i128 *r) {
        return __builtin_add_overflow(a, b, r);
    }
    static inline int paucity_sub(paucity_i128 a, paucity_i128 b, paucity_i128 *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    """
    ctypedef long long i128 "paucity_i128"
    int paucity_mul(i128 a, i128 b, i128 *r) nogil
    int paucity_add(i128 a, i128 b, i128 *r) nogil
    int paucity_sub(i128 a, i128 b, i128 *r) nogil

cdef enum:
    MAXK = 16


cdef inline i128 _abs(i128 a) noexcept nogil:
    return -a if a < 0 else a


cdef class _Search:
    """State for one factor-and-recover pass; reused across (h, v)."""

    cdef int k, X, nR, v, nonlinear, ovf
    cdef i128 A, lo, hi
    cdef i128 psi[MAXK + 1]
    cdef i128 d[MAXK + 1]
    cdef i128 mpow[MAXK + 1]
    cdef i128 prod[MAXK + 2]
    cdef i128 p[MAXK + 2]
    cdef i128 b[MAXK + 2]
    cdef i128 hchk[MAXK + 1]
    cdef i128 gchk[MAXK + 1]
    cdef int Rl[MAXK + 1]
    cdef int xs[MAXK + 1]
    cdef int ys[MAXK + 1]
    cdef list out

    cdef inline i128 mul(self, i128 a, i128 b) noexcept:
        cdef i128 r
        if paucity_mul(a, b, &r):
            self.ovf = 1
        return r

    cdef inline i128 add(self, i128 a, i128 b) noexcept:
        cdef i128 r
        if paucity_add(a, b, &r):
            self.ovf = 1
        return r

    cdef inline i128 sub(self, i128 a, i128 b) noexcept:
        cdef i128 r
        if paucity_sub(a, b, &r):
            self.ovf = 1
        return r

    cdef void set_v(self, int v):
        cdef int e
        cdef i128 M
        self.v = v
        self.lo = 1 - v
        self.hi = self.X - v
        M = self.hi if self.hi > v - 1 else v - 1
        self.mpow[0] = 1
        for e in range(1, self.k + 1):
            self.mpow[e] = self.mul(self.mpow[e - 1], M)

    cdef void factor(self, int pos, i128 rem, i128 mind):
        cdef int left = self.k - pos
        cdef i128 dd, q
        if self.ovf:
            return
        if left == 1:
            if rem >= mind and rem >= self.lo and rem <= self.hi and rem != 0:
                self.d[pos] = rem
                self.finish()
            return
        dd = mind if mind > self.lo else self.lo
        while dd <= self.hi:
            if dd != 0 and rem % dd == 0:
                q = rem / dd
                if _abs(q) <= self.mpow[left - 1]:
                    self.d[pos] = dd
                    self.factor(pos + 1, q, dd)
            dd += 1

    cdef void finish(self):
        cdef int k = self.k
        cdef int i, j, m, deg, y, nys, hit
        cdef i128 xi, q, r
        for i in range(k + 1):
            self.prod[i] = 0
        self.prod[0] = 1
        for i in range(k):
            xi = self.v + self.d[i]
            self.xs[i] = <int>xi
            for j in range(i + 1, 0, -1):
                self.prod[j] = self.add(self.prod[j - 1], self.mul(xi, self.prod[j]))
            self.prod[0] = self.mul(xi, self.prod[0])
        if self.nonlinear:
            for m in range(self.nR):
                if self.prod[k - self.Rl[m]] != self.hchk[m]:
                    return
        for i in range(k + 1):
            q = self.mul(self.A, self.prod[i])
            if i < k:
                q = self.sub(q, self.psi[i])
            if q % self.A != 0:
                return
            self.p[i] = q / self.A
        deg = k
        nys = 0
        for y in range(1, self.X + 1):
            while deg > 0:
                self.b[deg - 1] = self.p[deg]
                for i in range(deg - 1, 0, -1):
                    self.b[i - 1] = self.sub(self.p[i], self.mul(y, self.b[i]))
                r = self.sub(self.p[0], self.mul(y, self.b[0]))
                if r != 0:
                    break
                for i in range(deg):
                    self.p[i] = self.b[i]
                deg -= 1
                self.ys[nys] = y
                nys += 1
            if deg == 0:
                break
        if deg != 0 or self.ovf:
            return
        # the smallest y-value missing from x must be v, so each pair is emitted once
        for i in range(k):
            hit = 0
            for j in range(k):
                if self.xs[j] == self.ys[i]:
                    hit = 1
                    break
            if not hit:
                if self.ys[i] != self.v:
                    return
                break
        else:
            return
        if self.nonlinear:
            for i in range(k + 1):
                self.prod[i] = 0
            self.prod[0] = 1
            for i in range(k):
                xi = self.ys[i]
                for j in range(i + 1, 0, -1):
                    self.prod[j] = self.add(self.prod[j - 1], self.mul(xi, self.prod[j]))
                self.prod[0] = self.mul(xi, self.prod[0])
            for m in range(self.nR):
                if self.prod[k - self.Rl[m]] != self.gchk[m]:
                    return
        self.out.append((tuple([self.xs[i] for i in range(k)]),
                         tuple([self.ys[i] for i in range(k)])))

    cdef void run_theta(self, i128 theta, int v):
        cdef i128 n
        if theta == 0 or theta % self.A != 0:
            return
        n = theta / self.A
        self.set_v(v)
        if self.mpow[1] == 0 or _abs(n) > self.mpow[self.k]:
            return
        self.factor(0, n, self.lo)


cdef _Search _new_search(int k, int X, object A):
    if k < 1 or k > MAXK:
        raise ValueError(f"k must lie in [1, {MAXK}]")
    cdef _Search s = _Search.__new__(_Search)
    cdef long long a = A
    s.k = k
    s.X = X
    s.A = a
    s.ovf = 0
    s.nonlinear = 0
    s.nR = 0
    s.out = []
    return s


cdef i128 _eval_at(_Search s, i128* coeffs, int n, i128 t):
    cdef i128 acc = 0
    cdef int i
    for i in range(n - 1, -1, -1):
        acc = s.add(s.mul(acc, t), coeffs[i])
    return acc


def brute_scan(int k, int X, int r, keys, xs, long long budget):
    cdef long long n = 1
    cdef int i
    for i in range(k):
        n *= X
    cdef long long total = n * r
    cdef long long* K = <long long*>malloc(max(total, 1) * sizeof(long long))
    if K == NULL:
        raise MemoryError()
    cdef long long xi, yi, t, tested = 0
    cdef long long* kx
    cdef long long* ky
    cdef int j, eq
    matches = []
    try:
        for t in range(total):
            K[t] = keys[t]
        for x in xs:
            xi = x
            kx = K + xi * r
            for yi in range(n):
                ky = K + yi * r
                eq = 1
                for j in range(r):
                    if kx[j] != ky[j]:
                        eq = 0
                        break
                if eq:
                    matches.append((xi, yi))
                tested += 1
                if (tested & 0xFFFF) == 0 and tested > budget:
                    raise WorkBudgetExceeded(f"pair tests exceed the budget of {budget}")
        if tested > budget:
            raise WorkBudgetExceeded(f"pair tests exceed the budget of {budget}")
    finally:
        free(K)
    return matches, tested


def divsearch_linear(int k, int X, A, psi_rows, bounds, long long first_lo, long long first_hi):
    cdef _Search s = _new_search(k, X, A)
    cdef int nR = len(bounds)
    cdef long long visited = 0
    if nR == 0:
        return [], X
    if first_lo >= first_hi:
        return [], 0
    cdef i128* rows = <i128*>malloc(nR * k * sizeof(i128))
    cdef i128* pv = <i128*>malloc((X + 1) * nR * sizeof(i128))
    cdef long long* lo = <long long*>malloc(nR * sizeof(long long))
    cdef long long* hi = <long long*>malloc(nR * sizeof(long long))
    cdef long long* h = <long long*>malloc(nR * sizeof(long long))
    cdef int m, i, v, nonzero
    cdef long long tmp
    cdef i128 acc
    if rows == NULL or pv == NULL or lo == NULL or hi == NULL or h == NULL:
        free(rows); free(pv); free(lo); free(hi); free(h)
        raise MemoryError()
    try:
        for m in range(nR):
            for i in range(k):
                tmp = psi_rows[m][i]
                rows[m * k + i] = tmp
            tmp = bounds[m]
            lo[m] = -tmp
            hi[m] = tmp
        lo[0] = first_lo
        hi[0] = first_hi - 1
        for v in range(X + 1):
            for m in range(nR):
                pv[v * nR + m] = _eval_at(s, rows + m * k, k, -v)
        for m in range(nR):
            h[m] = lo[m]
        while True:
            visited += X
            nonzero = 0
            for i in range(k):
                acc = 0
                for m in range(nR):
                    acc = s.add(acc, s.mul(h[m], rows[m * k + i]))
                s.psi[i] = acc
                if acc != 0:
                    nonzero = 1
            if nonzero:
                for v in range(1, X + 1):
                    acc = 0
                    for m in range(nR):
                        acc = s.add(acc, s.mul(h[m], pv[v * nR + m]))
                    s.run_theta(acc, v)
            if s.ovf:
                raise Overflow("kernel intermediate exceeds 127 bits")
            m = nR - 1
            while m >= 0:
                if h[m] < hi[m]:
                    h[m] += 1
                    break
                h[m] = lo[m]
                m -= 1
            if m < 0:
                break
    finally:
        free(rows); free(pv); free(lo); free(hi); free(h)
    return s.out, visited


def divsearch_nonlinear(int k, int X, A, R, box_e, box_psi, long long first_lo, long long first_hi):
    cdef _Search s = _new_search(k, X, A)
    cdef int nR = len(R)
    cdef long long B = len(box_e)
    cdef long long visited = 0
    cdef long long hidx, gidx
    cdef int m, i, v, nonzero
    cdef long long tmp
    cdef i128 acc
    if nR > MAXK:
        raise ValueError("too many exponents")
    s.nonlinear = 1
    s.nR = nR
    for m in range(nR):
        s.Rl[m] = R[m]
    cdef i128* E = <i128*>malloc(max(B * nR, 1) * sizeof(i128))
    cdef i128* P = <i128*>malloc(max(B * k, 1) * sizeof(i128))
    cdef i128* pv = <i128*>malloc(max(B * (X + 1), 1) * sizeof(i128))
    if E == NULL or P == NULL or pv == NULL:
        free(E); free(P); free(pv)
        raise MemoryError()
    try:
        for hidx in range(B):
            for m in range(nR):
                tmp = box_e[hidx][m]
                E[hidx * nR + m] = tmp
            for i in range(k):
                tmp = box_psi[hidx][i]
                P[hidx * k + i] = tmp
            for v in range(X + 1):
                pv[hidx * (X + 1) + v] = _eval_at(s, P + hidx * k, k, -v)
        for hidx in range(first_lo, first_hi):
            for m in range(nR):
                s.hchk[m] = E[hidx * nR + m]
            for gidx in range(B):
                visited += X
                nonzero = 0
                for i in range(k):
                    acc = s.sub(P[hidx * k + i], P[gidx * k + i])
                    s.psi[i] = acc
                    if acc != 0:
                        nonzero = 1
                if not nonzero:
                    continue
                for m in range(nR):
                    s.gchk[m] = E[gidx * nR + m]
                for v in range(1, X + 1):
                    acc = s.sub(pv[hidx * (X + 1) + v], pv[gidx * (X + 1) + v])
                    s.run_theta(acc, v)
                if s.ovf:
                    raise Overflow("kernel intermediate exceeds 127 bits")
    finally:
        free(E); free(P); free(pv)
    return s.out, visited
