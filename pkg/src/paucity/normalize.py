"""Symmetric systems, their triangular normal form, and system generators.

A linear system is stored as an ``r x k`` matrix whose row ``j`` holds the
coefficients of ``sigma_1 .. sigma_k`` in ``phi_j``.  :func:`normalize`
reduces it to rows of the form ``a_j * sigma_{k_j} - sum_l b_jl * sigma_l``
with ``l`` restricted to the complementary exponent set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import reduce
from typing import Mapping, Sequence

from . import symcore
from .errors import CapacityExceeded, DegenerateSystem, InvalidMinpoly

CAPACITY_LIMIT = 1 << 120


@dataclass(frozen=True)
class SymmetricSystem:
    """Raw system ``phi_j = sum_l rows[j][l-1] * sigma_l``."""

    k: int
    rows: tuple[tuple[int, ...], ...]

    def __init__(self, k: int, rows: Sequence[Sequence[int]]):
        if not 1 <= k <= symcore.MAX_K:
            raise ValueError(f"k must lie in [1, {symcore.MAX_K}], got {k}")
        clean = []
        for row in rows:
            if len(row) != k:
                raise ValueError(f"row {list(row)} does not have length k={k}")
            row = tuple(symcore.check_int(int(v)) for v in row)
            if any(row):
                clean.append(row)
        if len(clean) > k:
            raise ValueError(f"{len(clean)} nonzero rows exceed k={k}")
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "rows", tuple(clean))

    @property
    def r(self) -> int:
        return len(self.rows)

    def values(self, z: Sequence[int]) -> tuple[int, ...]:
        sig = symcore.elementary_symmetric(z)
        return tuple(
            sum(symcore.mul(a, sig[l + 1]) for l, a in enumerate(row) if a)
            for row in self.rows
        )


@dataclass(frozen=True)
class NormalizedSystem:
    """Triangular form: ``phi_j = a_j sigma_{k_j} - sum_{l in R, l < k_j} b_jl sigma_l``."""

    k: int
    degrees: tuple[int, ...]
    leading: tuple[int, ...]
    offdiag: Mapping[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        if not self.degrees:
            raise DegenerateSystem("a normalized system needs at least one row")
        if len(self.degrees) != len(self.leading):
            raise ValueError("degrees and leading coefficients differ in length")
        if any(b <= a for a, b in zip(self.degrees, self.degrees[1:])):
            raise ValueError(f"degrees must be strictly increasing: {self.degrees}")
        if self.degrees[0] < 1 or self.degrees[-1] > self.k:
            raise ValueError(f"degrees must lie in [1, {self.k}]")
        if any(a == 0 for a in self.leading):
            raise ValueError("leading coefficients must be nonzero")
        R = set(self.R)
        clean = {}
        for (j, l), b in dict(self.offdiag).items():
            if l not in R or l >= self.degrees[j]:
                raise ValueError(f"b[{j},{l}] is not attached to an exponent of R below k_j")
            if b:
                clean[(j, l)] = b
        object.__setattr__(self, "offdiag", clean)

    @property
    def r(self) -> int:
        return len(self.degrees)

    @property
    def R(self) -> tuple[int, ...]:
        """Complementary exponent set ``{1..k} minus the degrees``."""
        deg = set(self.degrees)
        return tuple(l for l in range(1, self.k + 1) if l not in deg)

    @property
    def w(self) -> int:
        return self.k * (self.k + 1) // 2 - sum(self.degrees)

    @property
    def A(self) -> int:
        return math.prod(self.leading)

    @property
    def cofactors(self) -> tuple[int, ...]:
        A = self.A
        return tuple(A // a for a in self.leading)

    def b(self, j: int, l: int) -> int:
        return self.offdiag.get((j, l), 0)

    def rows(self) -> tuple[tuple[int, ...], ...]:
        """Coefficient rows in the raw ``sigma_1 .. sigma_k`` layout."""
        out = []
        for j, (d, a) in enumerate(zip(self.degrees, self.leading)):
            row = [0] * self.k
            row[d - 1] = a
            for l in self.R:
                if l < d:
                    row[l - 1] = -self.b(j, l)
            out.append(tuple(row))
        return tuple(out)

    def to_symmetric(self) -> SymmetricSystem:
        return SymmetricSystem(self.k, self.rows())

    def values(self, z: Sequence[int]) -> tuple[int, ...]:
        sig = symcore.elementary_symmetric(z)
        out = []
        for j, (d, a) in enumerate(zip(self.degrees, self.leading)):
            v = symcore.mul(a, sig[d])
            for l in self.R:
                if l < d and (j, l) in self.offdiag:
                    v = symcore.sub(v, symcore.mul(self.offdiag[(j, l)], sig[l]))
            out.append(v)
        return tuple(out)

    def summary(self) -> str:
        return (
            f"k={self.k} degrees={_fmt_list(self.degrees)} R={_fmt_list(self.R)} "
            f"w={self.w} A={self.A}"
        )


Term = tuple[int, tuple[int, ...]]


@dataclass(frozen=True)
class NonlinearSystem:
    """Rows ``phi_j = a_j sigma_{k_j} - Upsilon_j(sigma_{l_1}, ..., sigma_{l_R})``.

    Each ``Upsilon_j`` is a tuple of ``(coeff, exponents)`` terms, where
    ``exponents`` has one entry per element of ``R`` in increasing order.
    """

    k: int
    degrees: tuple[int, ...]
    leading: tuple[int, ...]
    upsilons: tuple[tuple[Term, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(self.degrees))
        object.__setattr__(self, "leading", tuple(self.leading))
        if not 1 <= self.k <= symcore.MAX_K:
            raise ValueError(f"k must lie in [1, {symcore.MAX_K}]")
        if not self.degrees:
            raise DegenerateSystem("a non-linear system needs at least one row")
        if len(self.degrees) != len(self.leading) or len(self.upsilons) != len(self.degrees):
            raise ValueError("degrees, leading and upsilons must have equal length")
        if any(b <= a for a, b in zip(self.degrees, self.degrees[1:])):
            raise ValueError(f"degrees must be strictly increasing: {self.degrees}")
        if self.degrees[0] < 1 or self.degrees[-1] > self.k:
            raise ValueError(f"degrees must lie in [1, {self.k}]")
        if any(a == 0 for a in self.leading):
            raise ValueError("leading coefficients must be nonzero")
        nR = len(self.R)
        ups = []
        for terms in self.upsilons:
            clean = []
            for coeff, exps in terms:
                exps = tuple(int(e) for e in exps)
                if len(exps) != nR or any(e < 0 for e in exps):
                    raise ValueError(f"exponent vector {exps} must have {nR} non-negative entries")
                if coeff:
                    clean.append((symcore.check_int(int(coeff)), exps))
            ups.append(tuple(clean))
        object.__setattr__(self, "upsilons", tuple(ups))

    @property
    def r(self) -> int:
        return len(self.degrees)

    @property
    def R(self) -> tuple[int, ...]:
        deg = set(self.degrees)
        return tuple(l for l in range(1, self.k + 1) if l not in deg)

    @property
    def w(self) -> int:
        return self.k * (self.k + 1) // 2 - sum(self.degrees)

    @property
    def A(self) -> int:
        return math.prod(self.leading)

    @property
    def cofactors(self) -> tuple[int, ...]:
        A = self.A
        return tuple(A // a for a in self.leading)

    def upsilon(self, j: int, s: Sequence[int]) -> int:
        """Evaluate ``Upsilon_j`` term by term at the point ``s``."""
        total = 0
        for coeff, exps in self.upsilons[j]:
            term = coeff
            for base, e in zip(s, exps):
                if e:
                    term = symcore.mul(term, symcore.check_int(base ** e))
            total = symcore.add(total, term)
        return total

    def values(self, z: Sequence[int]) -> tuple[int, ...]:
        sig = symcore.elementary_symmetric(z)
        s = [sig[l] for l in self.R]
        return tuple(
            symcore.sub(symcore.mul(a, sig[d]), self.upsilon(j, s))
            for j, (d, a) in enumerate(zip(self.degrees, self.leading))
        )

    def summary(self) -> str:
        return (
            f"k={self.k} degrees={_fmt_list(self.degrees)} R={_fmt_list(self.R)} "
            f"w={self.w} A={self.A} nonlinear"
        )


AnySystem = NormalizedSystem | NonlinearSystem


def _fmt_list(xs: Sequence[int]) -> str:
    return "[" + ",".join(str(x) for x in xs) + "]"


def _primitive(row: list[int]) -> list[int]:
    g = reduce(math.gcd, row, 0)
    return [v // g for v in row] if g > 1 else row


def normalize(sys: SymmetricSystem) -> NormalizedSystem:
    """Reduce ``sys`` to triangular shape by fraction-free row operations.

    Pivots are taken from the highest-degree column down, each time using
    the row with the smallest nonzero pivot magnitude.  After the forward
    pass every pivot column is cleared from the other rows, rows are made
    primitive with a positive pivot, and zero rows are dropped.  The
    rational row space, and so the solution set in every box, is unchanged.
    """
    k = sys.k
    rows = [list(r) for r in sys.rows if any(r)]
    if not rows:
        raise DegenerateSystem("every row of the system is zero")

    pivots: list[tuple[int, list[int]]] = []  # (column index l-1, row)
    pending = rows
    for col in range(k - 1, -1, -1):
        live = [r for r in pending if r[col]]
        if not live:
            continue
        piv = min(live, key=lambda r: abs(r[col]))
        rest = []
        for r in pending:
            if r is piv:
                continue
            if r[col]:
                p, e = piv[col], r[col]
                r = _primitive([symcore.sub(symcore.mul(p, a), symcore.mul(e, b)) for a, b in zip(r, piv)])
            if any(r):
                rest.append(r)
        pivots.append((col, piv))
        pending = rest

    # clear each pivot column from every other pivot row
    for i, (ci, ri) in enumerate(pivots):
        for j, (cj, rj) in enumerate(pivots):
            if i == j or rj[ci] == 0:
                continue
            p, e = ri[ci], rj[ci]
            pivots[j] = (cj, _primitive([symcore.sub(symcore.mul(p, a), symcore.mul(e, b)) for a, b in zip(rj, ri)]))

    final = []
    for col, row in pivots:
        row = _primitive(row)
        if row[col] < 0:
            row = [-v for v in row]
        final.append((col + 1, row))
    final.sort()

    degrees = tuple(d for d, _ in final)
    leading = tuple(row[d - 1] for d, row in final)
    R = [l for l in range(1, k + 1) if l not in set(degrees)]
    offdiag = {}
    for j, (d, row) in enumerate(final):
        for l in R:
            if l < d and row[l - 1]:
                offdiag[(j, l)] = -row[l - 1]
    return NormalizedSystem(k, degrees, leading, offdiag)


def _upsilon_max(nsys: NonlinearSystem, j: int, box: Sequence[int]) -> int:
    total = 0
    for coeff, exps in nsys.upsilons[j]:
        term = abs(coeff)
        for b, e in zip(box, exps):
            term *= b ** e
        total += term
    return total


def h_box(system: AnySystem, X: int) -> tuple[int, ...]:
    """Half-widths ``2^k X^l`` of the h-box, one per exponent ``l`` in ``R``."""
    return tuple((1 << system.k) * X ** l for l in system.R)


def capacity_bound(system: AnySystem, X: int) -> int:
    """Upper bound on every intermediate formed at scale ``X`` (unchecked)."""
    if X < 1:
        raise ValueError("X must be positive")
    k = system.k
    A = abs(system.A)
    if isinstance(system, NonlinearSystem):
        box = h_box(system, X)
        ups = sum(_upsilon_max(system, j, box) for j in range(system.r))
        return 2 * (k + 1) * A * ((2 * X) ** k + X ** k * ups)
    bsum = sum(abs(b) for b in system.offdiag.values())
    return A * (2 * X) ** k * (k + 1) * (1 + bsum)


def capacity_check(system: AnySystem, X: int) -> int:
    """Return :func:`capacity_bound`, or raise if it reaches ``2**120``."""
    bound = capacity_bound(system, X)
    if bound >= CAPACITY_LIMIT:
        raise CapacityExceeded(
            f"worst-case intermediate {bound} at X={X}, k={system.k} reaches 2^120"
        )
    return bound


def gen_corollary_system(k: int, r: int, a: Sequence[Sequence[int]] | int = 0) -> SymmetricSystem:
    """Rows ``sigma_j + sum_{l <= k-r} a[j][l] sigma_l`` for ``j = k-r+1 .. k``.

    ``a`` is an ``r x (k-r)`` matrix; a plain integer fills every entry.
    """
    if not 1 <= r <= k:
        raise ValueError(f"need 1 <= r <= k, got r={r}, k={k}")
    m = k - r
    if isinstance(a, int):
        a = [[a] * m for _ in range(r)]
    if len(a) != r or any(len(row) != m for row in a):
        raise ValueError(f"coefficient matrix must be {r} x {m}")
    rows = []
    for idx, j in enumerate(range(m + 1, k + 1)):
        row = [0] * k
        row[j - 1] = 1
        for l in range(1, m + 1):
            row[l - 1] = a[idx][l - 1]
        rows.append(row)
    return SymmetricSystem(k, rows)


def _reduce_powers(minpoly: Sequence[int], top: int) -> list[list[int]]:
    """``theta**p`` in the basis ``1, theta, .., theta^(d-1)`` for ``p <= top``."""
    d = len(minpoly) - 1
    # theta^d = -(c_{d-1} theta^{d-1} + ... + c_0), minpoly highest-first
    low = [-c for c in reversed(minpoly[1:])]
    powers = []
    cur = [1] + [0] * (d - 1)
    for _ in range(top + 1):
        powers.append(cur)
        carry = cur[-1]
        cur = [0] + cur[:-1]
        cur = [c + carry * t for c, t in zip(cur, low)]
    return powers


def gen_theta_system(minpoly: Sequence[int], k: int) -> SymmetricSystem:
    """Equations from ``prod(x_i + theta) = prod(y_i + theta)``.

    ``minpoly`` lists the coefficients of the monic minimal polynomial of
    ``theta`` from the highest degree down, e.g. ``(1, 0, 1)`` for
    ``t^2 + 1``.  Row ``i`` matches the coefficient of ``theta^i``.
    """
    minpoly = [int(c) for c in minpoly]
    d = len(minpoly) - 1
    if d < 1 or minpoly[0] != 1:
        raise InvalidMinpoly(f"minimal polynomial {minpoly} is not monic of positive degree")
    if d > k:
        raise ValueError(f"degree {d} of theta exceeds k={k}")
    powers = _reduce_powers(minpoly, k)
    rows = [[powers[k - l][i] for l in range(1, k + 1)] for i in range(d)]
    return SymmetricSystem(k, rows)
