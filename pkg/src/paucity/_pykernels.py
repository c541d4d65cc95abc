"""Pure-Python kernels.

Same signatures and results as the compiled ``_ckernels`` module; used
when the extension is not built or ``PAUCITY_PURE_PYTHON`` is set.
Arguments are plain ints and lists so either backend can be driven by
the same caller, including from worker processes.
"""

from __future__ import annotations

import itertools

from .errors import Overflow, WorkBudgetExceeded
from .symcore import INT_LIMIT


def _chk(v: int) -> int:
    if -INT_LIMIT < v < INT_LIMIT:
        return v
    raise Overflow(f"kernel intermediate exceeds 127 bits: {v}")


def brute_scan(k, X, r, keys, xs, budget):
    """Match every x in ``xs`` against every y in ``[1, X]^k``.

    ``keys`` holds the ``r`` equation values of each k-tuple, flattened in
    lexicographic tuple order; ``xs`` lists tuple indices.  Returns the
    matching ``(x_index, y_index)`` pairs in (x, y) order and the number of
    pair tests performed.
    """
    n = X ** k
    index: dict[tuple, list[int]] = {}
    for yi in range(n):
        index.setdefault(tuple(keys[yi * r:(yi + 1) * r]), []).append(yi)
    matches = []
    tested = 0
    for xi in xs:
        tested += n
        if tested > budget:
            raise WorkBudgetExceeded(f"pair tests exceed the budget of {budget}")
        for yi in index[tuple(keys[xi * r:(xi + 1) * r])]:
            matches.append((xi, yi))
    return matches, tested


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def sorted_factor_tuples(n, k, lo, hi):
    """Non-decreasing k-tuples in ``[lo, hi] minus {0}`` with product ``n``."""
    bound = max(abs(lo), abs(hi))
    out = []

    def rec(prefix, rem, mind):
        left = k - len(prefix)
        if left == 1:
            if rem >= mind and lo <= rem <= hi and rem != 0:
                out.append(tuple(prefix) + (rem,))
            return
        cands = []
        for d in _divisors(rem):
            cands.append(-d)
            cands.append(d)
        cands.sort()
        cap = bound ** (left - 1)
        for d in cands:
            if d < mind or d < lo or d > hi:
                continue
            q = rem // d
            if abs(q) > cap:
                continue
            prefix.append(d)
            rec(prefix, q, d)
            prefix.pop()

    rec([], n, lo)
    return out


def _poly_from_roots(x):
    c = [1]
    for xi in x:
        nxt = [0] * (len(c) + 1)
        for j, cj in enumerate(c):
            nxt[j] += xi * cj
            nxt[j + 1] += cj
        c = nxt
    return c


def _recover(k, X, A, psi, x, v, h_check, g_check, R):
    """Roots y of ``A prod(t + x_i) - psi(t) = A prod(t + y_i)`` or None."""
    prod = _poly_from_roots(x)
    if h_check is not None:
        for m, l in enumerate(R):
            if prod[k - l] != h_check[m]:
                return None
    p = []
    for i in range(k + 1):
        q = _chk(A * prod[i] - (psi[i] if i < k else 0))
        if q % A:
            return None
        p.append(q // A)
    ys = []
    deg = k
    for y in range(1, X + 1):
        while deg > 0:
            # synthetic division by (t + y)
            b = [0] * deg
            b[deg - 1] = p[deg]
            for i in range(deg - 1, 0, -1):
                b[i - 1] = _chk(p[i] - y * b[i])
            if _chk(p[0] - y * b[0]) != 0:
                break
            p = b
            deg -= 1
            ys.append(y)
        if deg == 0:
            break
    if deg != 0:
        return None
    xs = set(x)
    absent = [yv for yv in ys if yv not in xs]
    if not absent or absent[0] != v:
        return None
    if g_check is not None:
        py = _poly_from_roots(ys)
        for m, l in enumerate(R):
            if py[k - l] != g_check[m]:
                return None
    return tuple(ys)


def _search_theta(k, X, A, psi, theta, v, R, h_check, g_check, found):
    if theta == 0 or theta % A:
        return
    n = theta // A
    M = max(v - 1, X - v)
    if M == 0 or abs(n) > M ** k:
        return
    for d in sorted_factor_tuples(n, k, 1 - v, X - v):
        x = tuple(v + di for di in d)
        ys = _recover(k, X, A, psi, x, v, h_check, g_check, R)
        if ys is not None:
            found.append((x, ys))


def divsearch_linear(k, X, A, psi_rows, bounds, first_lo, first_hi):
    """Scan the h-box with its first coordinate restricted to ``[first_lo, first_hi)``.

    ``psi_rows[m]`` is the coefficient list of ``psi_{l_m}``.  Returns
    canonical ``(sorted x, sorted y)`` pairs in which ``y`` has a value
    missing from ``x`` and the number of ``(h, v)`` pairs visited.
    """
    nR = len(bounds)
    pv = [[sum(c * (-v) ** i for i, c in enumerate(row)) for row in psi_rows] for v in range(X + 1)]
    if nR:
        ranges = [range(first_lo, first_hi)] + [range(-b, b + 1) for b in bounds[1:]]
    else:
        ranges = []
    found = []
    visited = 0
    for h in itertools.product(*ranges):
        visited += X
        psi = [_chk(sum(hm * row[i] for hm, row in zip(h, psi_rows))) for i in range(k)]
        if not any(psi):
            continue
        for v in range(1, X + 1):
            theta = _chk(sum(hm * p for hm, p in zip(h, pv[v])))
            _search_theta(k, X, A, psi, theta, v, (), None, None, found)
    return found, visited


def divsearch_nonlinear(k, X, A, R, box_e, box_psi, first_lo, first_hi):
    """Scan pairs ``(h, g)`` of box points, ``h`` index in ``[first_lo, first_hi)``.

    ``box_e`` lists the box points and ``box_psi`` the coefficients of
    ``Psi(t; e)`` for each.  Candidates must satisfy ``sigma_R(x) == h`` and
    ``sigma_R(y) == g``.
    """
    B = len(box_e)
    pv = [[sum(c * (-v) ** i for i, c in enumerate(row)) for v in range(X + 1)] for row in box_psi]
    found = []
    visited = 0
    for hi in range(first_lo, first_hi):
        ph = box_psi[hi]
        for gi in range(B):
            visited += X
            pg = box_psi[gi]
            psi = [_chk(a - b) for a, b in zip(ph, pg)]
            if not any(psi):
                continue
            for v in range(1, X + 1):
                theta = _chk(pv[hi][v] - pv[gi][v])
                _search_theta(k, X, A, psi, theta, v, R, box_e[hi], box_e[gi], found)
    return found, visited
