"""Divisor-guided search for non-diagonal solutions.

Independent of the brute-force census.  For a solution with a value ``v``
among the ``y``'s but not among the ``x``'s,

    A * prod(x_i - v) = Theta,   Theta = Psi(-v; h),

so once ``h`` and ``v`` are fixed the differences ``x_i - v`` run over the
ordered factorizations of ``Theta / A``.  With ``x`` fixed, the ``y``'s are
the roots of ``A prod(t + x_i) - Psi(t; h)``.  Scanning the whole h-box
and every ``v`` in ``[1, X]`` therefore finds every non-diagonal solution
in which ``y`` has a value missing from ``x``; swapping the two sides
covers the rest.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

from . import kernels, symcore
from .census import DEFAULT_BUDGET, SolutionClass, SolutionPair
from .errors import WorkBudgetExceeded, ZeroProduct
from .normalize import (
    NonlinearSystem,
    NormalizedSystem,
    SymmetricSystem,
    capacity_check,
    h_box,
    normalize,
)
from .parallel import run_chunks, split_range
from .psi import (
    build_psi_linear,
    build_psi_nonlinear,
    psi_basis,
    verify_master_identity,
    verify_master_identity_nonlinear,
)
from .symcore import IntPolynomial


@dataclass(frozen=True)
class FactorTuple:
    divisors: tuple[int, ...]
    product: int

    def __post_init__(self):
        if any(d == 0 for d in self.divisors):
            raise ValueError("divisors must be nonzero")
        if math.prod(self.divisors) != self.product:
            raise ValueError(f"{self.divisors} does not multiply to {self.product}")


@dataclass(frozen=True)
class Theta:
    value: int
    bound: int

    def __post_init__(self):
        if abs(self.value) > self.bound:
            raise AssertionError(f"|Theta| = {abs(self.value)} exceeds its bound {self.bound}")


def positive_divisors(n: int) -> list[int]:
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


def ordered_factorizations(n: int, k: int) -> list[FactorTuple]:
    """All ordered k-tuples of nonzero integers with product ``n``.

    Positive tuples come from the divisor lattice of ``|n|``; each is then
    given every sign pattern whose sign product matches ``n``.
    """
    if n == 0:
        raise ZeroProduct("zero has infinitely many factorizations")
    if k < 1:
        raise ValueError("k must be positive")

    positive: list[tuple[int, ...]] = []

    def rec(prefix: list[int], m: int) -> None:
        if len(prefix) == k - 1:
            positive.append(tuple(prefix) + (m,))
            return
        for d in positive_divisors(m):
            prefix.append(d)
            rec(prefix, m // d)
            prefix.pop()

    rec([], abs(n))
    want = 1 if n > 0 else -1
    out = []
    for signs in itertools.product((1, -1), repeat=k):
        if math.prod(signs) != want:
            continue
        for t in positive:
            out.append(FactorTuple(tuple(s * d for s, d in zip(signs, t)), n))
    return out


def integer_roots_in_range(p: IntPolynomial, lo: int, hi: int) -> list[int]:
    """Integer roots of ``p`` in ``[lo, hi]``, repeated by multiplicity."""
    if p.is_zero():
        raise ValueError("the zero polynomial has every integer as a root")
    coeffs = list(p.coeffs)
    roots = []
    # strip the root t = 0 first so the constant term is nonzero
    while len(coeffs) > 1 and coeffs[0] == 0:
        coeffs.pop(0)
        if lo <= 0 <= hi:
            roots.append(0)
    # an integer root divides the constant term
    cands = sorted(c for d in positive_divisors(coeffs[0]) for c in (d, -d) if lo <= c <= hi)
    for t0 in cands:
        while len(coeffs) > 1:
            quot = [0] * (len(coeffs) - 1)
            acc = 0
            for i in range(len(coeffs) - 1, 0, -1):
                acc = symcore.add(coeffs[i], symcore.mul(acc, t0))
                quot[i - 1] = acc
            if symcore.add(coeffs[0], symcore.mul(acc, t0)) != 0:
                break
            coeffs = quot
            roots.append(t0)
    return sorted(roots)


@dataclass
class SearchResult:
    pairs: list[SolutionPair]
    canonical: list[tuple[tuple[int, ...], tuple[int, ...]]]
    visited: int
    backend: str
    rejected: list[tuple[tuple[int, ...], tuple[int, ...]]] = field(default_factory=list)


def _linear_chunk(backend, k, X, A, rows, bounds, lo, hi):
    return kernels.get(backend).divsearch_linear(k, X, A, rows, bounds, lo, hi)


def _nonlinear_chunk(backend, k, X, A, R, box_e, box_psi, lo, hi):
    return kernels.get(backend).divsearch_nonlinear(k, X, A, R, box_e, box_psi, lo, hi)


def _expand(canonical) -> list[SolutionPair]:
    out = set()
    for xs, ys in canonical:
        for a, b in ((xs, ys), (ys, xs)):
            for xp in symcore.distinct_permutations(a):
                for yp in symcore.distinct_permutations(b):
                    out.add((xp, yp))
    return [SolutionPair(x, y, SolutionClass.NON_DIAGONAL) for x, y in sorted(out)]


def _chunks(workers: int) -> int:
    return 1 if workers <= 1 else workers * 4


def divisor_guided_search(
    system,
    X: int,
    *,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
    backend: str | None = None,
) -> SearchResult:
    """Run the divisor-guided search for a linear system; see the module docstring."""
    norm = normalize(system) if isinstance(system, SymmetricSystem) else system
    if not isinstance(norm, NormalizedSystem):
        raise TypeError("use divisor_guided_search_nonlinear for non-linear systems")
    k = norm.k
    capacity_check(norm, X)
    bounds = list(h_box(norm, X))
    visits = math.prod(2 * b + 1 for b in bounds) * X
    if visits > budget:
        raise WorkBudgetExceeded(f"{visits} (h, v) visits exceed the budget of {budget}")
    basis = psi_basis(norm)
    rows = [[p.coeff(i) for i in range(k)] for p in (basis[l] for l in norm.R)]
    name = kernels.choose(backend, rows, norm.A)

    if bounds:
        pieces = split_range(-bounds[0], bounds[0] + 1, _chunks(workers))
    else:
        pieces = [(0, 1)]
    results = run_chunks(
        _linear_chunk, [(name, k, X, norm.A, rows, bounds, lo, hi) for lo, hi in pieces], workers
    )
    found = set()
    visited = 0
    for part, n in results:
        found.update(part)
        visited += n

    accepted, rejected = [], []
    for xs, ys in sorted(found):
        if verify_master_identity(xs, ys, norm) and norm.values(xs) == norm.values(ys):
            accepted.append((xs, ys))
        else:
            rejected.append((xs, ys))
    return SearchResult(_expand(accepted), accepted, visited, name, rejected)


def divisor_guided_enumerate(system, X: int, **kwargs) -> list[SolutionPair]:
    """All non-diagonal solutions in ``[1, X]^(2k)``, sorted by ``(x, y)``."""
    return divisor_guided_search(system, X, **kwargs).pairs


def nonlinear_box(nsys: NonlinearSystem, X: int) -> list[tuple[int, ...]]:
    return list(itertools.product(*(range(-b, b + 1) for b in h_box(nsys, X))))


def divisor_guided_search_nonlinear(
    nsys: NonlinearSystem,
    X: int,
    *,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
    backend: str | None = None,
) -> SearchResult:
    """Divisor-guided search over pairs ``(h, g)`` of box points.

    ``Theta = Psi(-v; h) - Psi(-v; g)`` and the recovery polynomial is
    ``A prod(t + x_i) - Psi(t; h) + Psi(t; g)``.  Candidates must also
    satisfy ``sigma_R(x) == h`` and ``sigma_R(y) == g``.
    """
    k = nsys.k
    capacity_check(nsys, X)
    bounds = h_box(nsys, X)
    B = math.prod(2 * b + 1 for b in bounds)
    visits = B * B * X
    if visits > budget:
        raise WorkBudgetExceeded(f"{visits} (h, g, v) visits exceed the budget of {budget}")
    box_e = nonlinear_box(nsys, X)
    box_psi = []
    for e in box_e:
        poly = build_psi_nonlinear(nsys, e).poly
        box_psi.append([poly.coeff(i) for i in range(k)])
    R = list(nsys.R)
    name = kernels.choose(backend, box_e, box_psi, nsys.A)

    pieces = split_range(0, B, _chunks(workers))
    results = run_chunks(
        _nonlinear_chunk, [(name, k, X, nsys.A, R, box_e, box_psi, lo, hi) for lo, hi in pieces], workers
    )
    found = set()
    visited = 0
    for part, n in results:
        found.update(part)
        visited += n

    accepted, rejected = [], []
    for xs, ys in sorted(found):
        if verify_master_identity_nonlinear(xs, ys, nsys) and nsys.values(xs) == nsys.values(ys):
            accepted.append((xs, ys))
        else:
            rejected.append((xs, ys))
    return SearchResult(_expand(accepted), accepted, visited, name, rejected)


def divisor_guided_enumerate_nonlinear(nsys: NonlinearSystem, X: int, **kwargs) -> list[SolutionPair]:
    return divisor_guided_search_nonlinear(nsys, X, **kwargs).pairs


def theta_bound(norm: NormalizedSystem, X: int) -> int:
    """``|A| (2X)^k (k+1) (1 + sum |b|)``, the bound every Theta must respect."""
    bsum = sum(abs(b) for b in norm.offdiag.values())
    return abs(norm.A) * (2 * X) ** norm.k * (norm.k + 1) * (1 + bsum)


def theta_at(norm: NormalizedSystem, h: dict[int, int], v: int, X: int) -> Theta:
    return Theta(build_psi_linear(norm, h)(-v), theta_bound(norm, X))
