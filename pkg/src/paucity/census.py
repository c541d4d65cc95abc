"""Exhaustive solution counts in the box [1, X]^(2k) and their classification.

Every solution ``(x, y)`` falls in exactly one class:

* trivial: ``y`` is a permutation of ``x``;
* potentially diagonal (non-trivial): same set of values, different multisets;
* non-diagonal: some value occurs on one side only.
"""

from __future__ import annotations

import enum
import itertools
import math
import statistics
from dataclasses import dataclass, field
from typing import Sequence

from . import kernels, symcore
from .errors import InsufficientData, WorkBudgetExceeded
from .normalize import AnySystem, NonlinearSystem, SymmetricSystem, capacity_check, normalize
from .parallel import split_range, run_chunks

DEFAULT_BUDGET = 10 ** 10


class SolutionClass(str, enum.Enum):
    TRIVIAL = "Trivial"
    POTENTIALLY_DIAGONAL = "PotentiallyDiagonalNontrivial"
    NON_DIAGONAL = "NonDiagonal"


def classify(x: Sequence[int], y: Sequence[int]) -> SolutionClass:
    if sorted(x) == sorted(y):
        return SolutionClass.TRIVIAL
    if set(x) == set(y):
        return SolutionClass.POTENTIALLY_DIAGONAL
    return SolutionClass.NON_DIAGONAL


@dataclass(frozen=True, order=True)
class SolutionPair:
    x: tuple[int, ...]
    y: tuple[int, ...]
    cls: SolutionClass = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(self.x))
        object.__setattr__(self, "y", tuple(self.y))
        if self.cls is None:
            object.__setattr__(self, "cls", classify(self.x, self.y))

    def __str__(self) -> str:
        return f"x=({','.join(map(str, self.x))}) y=({','.join(map(str, self.y))})"


@dataclass
class CensusReport:
    X: int
    N: int
    T: int
    Tstar: int
    Tdagger: int
    solutions: list[SolutionPair] | None = None
    work: int = 0

    def __post_init__(self):
        if self.N != self.T + self.Tstar + self.Tdagger:
            raise ValueError(f"N={self.N} differs from T + T* + T-dagger")

    def row(self) -> tuple[int, int, int, int, int]:
        return (self.X, self.N, self.T, self.Tstar, self.Tdagger)

    def nondiagonal(self) -> list[SolutionPair]:
        return [s for s in self.solutions or () if s.cls is SolutionClass.NON_DIAGONAL]


def _as_system(system) -> AnySystem:
    return normalize(system) if isinstance(system, SymmetricSystem) else system


def tuple_index(z: Sequence[int], X: int) -> int:
    idx = 0
    for v in z:
        idx = idx * X + (v - 1)
    return idx


def index_tuple(idx: int, X: int, k: int) -> tuple[int, ...]:
    out = [0] * k
    for i in range(k - 1, -1, -1):
        idx, rem = divmod(idx, X)
        out[i] = rem + 1
    return tuple(out)


def _key_table(system: AnySystem, X: int) -> list[int]:
    """Equation values of every tuple in ``[1, X]^k``, flattened lexicographically."""
    k = system.k
    by_multiset = {
        s: system.values(s) for s in itertools.combinations_with_replacement(range(1, X + 1), k)
    }
    flat: list[int] = []
    for z in itertools.product(range(1, X + 1), repeat=k):
        flat.extend(by_multiset[tuple(sorted(z))])
    return flat


def _scan_chunk(backend, k, X, r, keys, xs, budget):
    return kernels.get(backend).brute_scan(k, X, r, keys, xs, budget)


def brute_census(
    system,
    X: int,
    *,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
    backend: str | None = None,
    keep_solutions: bool = True,
) -> CensusReport:
    """Count and classify every solution in ``[1, X]^(2k)``.

    Only non-decreasing ``x`` are scanned, each against every ``y``, and
    each match is weighted by the number of distinct orderings of ``x``;
    the totals equal those of the unrestricted double loop.
    """
    system = _as_system(system)
    k = system.k
    capacity_check(system, X)
    if X ** (2 * k) > budget:
        raise WorkBudgetExceeded(f"X^(2k) = {X ** (2 * k)} pair tests exceed the budget of {budget}")

    keys = _key_table(system, X)
    r = system.r
    xs = [tuple_index(s, X) for s in itertools.combinations_with_replacement(range(1, X + 1), k)]
    name = kernels.choose(backend, keys)

    pieces = split_range(0, len(xs), max(1, workers) * 4 if workers > 1 else 1)
    results = run_chunks(
        _scan_chunk, [(name, k, X, r, keys, xs[a:b], budget) for a, b in pieces], workers
    )

    counts = {c: 0 for c in SolutionClass}
    solutions: list[SolutionPair] = []
    work = 0
    for matches, tested in results:
        work += tested
        for xi, yi in matches:
            x = index_tuple(xi, X, k)
            y = index_tuple(yi, X, k)
            cls = classify(x, y)
            counts[cls] += symcore.multiset_permutations(x)
            if keep_solutions and cls is not SolutionClass.TRIVIAL:
                solutions.extend(SolutionPair(xp, y, cls) for xp in symcore.distinct_permutations(x))
    if work > budget:
        raise WorkBudgetExceeded(f"{work} pair tests exceed the budget of {budget}")
    solutions.sort()
    T = counts[SolutionClass.TRIVIAL]
    Ts = counts[SolutionClass.POTENTIALLY_DIAGONAL]
    Td = counts[SolutionClass.NON_DIAGONAL]
    return CensusReport(X, T + Ts + Td, T, Ts, Td, solutions if keep_solutions else None, work)


def naive_census(system, X: int) -> CensusReport:
    """Unoptimized double loop over ``[1, X]^(2k)``; a reference for small X."""
    system = _as_system(system)
    tuples = list(itertools.product(range(1, X + 1), repeat=system.k))
    vals = [system.values(z) for z in tuples]
    counts = {c: 0 for c in SolutionClass}
    solutions = []
    for x, vx in zip(tuples, vals):
        for y, vy in zip(tuples, vals):
            if vx == vy:
                cls = classify(x, y)
                counts[cls] += 1
                if cls is not SolutionClass.TRIVIAL:
                    solutions.append(SolutionPair(x, y, cls))
    T = counts[SolutionClass.TRIVIAL]
    Ts = counts[SolutionClass.POTENTIALLY_DIAGONAL]
    Td = counts[SolutionClass.NON_DIAGONAL]
    return CensusReport(X, T + Ts + Td, T, Ts, Td, sorted(solutions), len(tuples) ** 2)


def _compositions(k: int, s: int):
    """Ordered tuples of ``s`` positive integers summing to ``k``."""
    for cuts in itertools.combinations(range(1, k), s - 1):
        bounds = (0,) + cuts + (k,)
        yield tuple(bounds[i + 1] - bounds[i] for i in range(s))


def count_trivial_exact(k: int, X: int) -> int:
    """Number of pairs in ``[1, X]^(2k)`` whose multisets coincide.

    Sums, over supports of size ``s``, ``C(X, s)`` times the squared
    multinomial coefficients of every multiplicity pattern.
    """
    if not 1 <= k <= symcore.MAX_K:
        raise ValueError(f"k must lie in [1, {symcore.MAX_K}]")
    fk = math.factorial(k)
    total = 0
    for s in range(1, k + 1):
        inner = 0
        for m in _compositions(k, s):
            inner += (fk // math.prod(math.factorial(mi) for mi in m)) ** 2
        total = symcore.add(total, symcore.mul(math.comb(X, s), inner))
    return total


def potentially_diagonal_sweep(system, X: int, keep_solutions: bool = True) -> tuple[int, list[SolutionPair]]:
    """Count non-trivial solutions whose two sides use the same set of values.

    Enumerates each support set ``S`` with ``|S| < k`` and every multiset
    with support exactly ``S``; no x/y scan over the whole box is needed.
    """
    system = _as_system(system)
    k = system.k
    capacity_check(system, X)
    count = 0
    solutions: list[SolutionPair] = []
    for s in range(1, k):
        patterns = list(_compositions(k, s))
        for S in itertools.combinations(range(1, X + 1), s):
            multisets = [
                tuple(sorted(itertools.chain.from_iterable([v] * m for v, m in zip(S, pat))))
                for pat in patterns
            ]
            vals = [system.values(ms) for ms in multisets]
            for a, va in zip(multisets, vals):
                for b, vb in zip(multisets, vals):
                    if a != b and va == vb:
                        count += symcore.multiset_permutations(a) * symcore.multiset_permutations(b)
                        if keep_solutions:
                            solutions.extend(
                                SolutionPair(xp, yp, SolutionClass.POTENTIALLY_DIAGONAL)
                                for xp in symcore.distinct_permutations(a)
                                for yp in symcore.distinct_permutations(b)
                            )
    solutions.sort()
    return count, solutions


def product_parametrized_solution(M: Sequence[Sequence[int]]) -> SolutionPair:
    """Row products give ``x``, column products give ``y``; ``prod x == prod y``."""
    k = len(M)
    if k == 0 or any(len(row) != k for row in M):
        raise ValueError("M must be a non-empty square matrix")
    if any(v < 1 for row in M for v in row):
        raise ValueError("entries of M must be positive integers")
    x = tuple(symcore.check_int(math.prod(row)) for row in M)
    y = tuple(symcore.check_int(math.prod(M[i][j] for i in range(k))) for j in range(k))
    return SolutionPair(x, y)


@dataclass(frozen=True)
class FitResult:
    slope: float
    intercept: float
    used: tuple[tuple[int, int], ...]
    dropped: tuple[tuple[int, int], ...]


def exponent_fit(points: Sequence[tuple[int, int]]) -> FitResult:
    """Least-squares slope of ``log(count)`` against ``log(X)``.

    Points with a zero count are dropped (and reported) since their
    logarithm is undefined.
    """
    xs = [p[0] for p in points]
    if any(b <= a for a, b in zip(xs, xs[1:])):
        raise ValueError("X values must be strictly increasing")
    if any(c < 0 for _, c in points):
        raise ValueError("counts must be non-negative")
    used = tuple((X, c) for X, c in points if c > 0)
    dropped = tuple((X, c) for X, c in points if c == 0)
    if len(used) < 2:
        raise InsufficientData(f"need at least two points with positive counts, got {len(used)}")
    fit = statistics.linear_regression([math.log(X) for X, _ in used], [math.log(c) for _, c in used])
    return FitResult(fit.slope, fit.intercept, used, dropped)
