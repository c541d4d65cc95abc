"""Seeded property suites for the algebra layer and the Psi identities.

Random inputs come from SplitMix64, a 64-bit generator simple enough to
reimplement anywhere, so a seed names the same witnesses in every
implementation.  Whether a property holds does not depend on the seed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable

from . import symcore
from .normalize import NonlinearSystem, NormalizedSystem, SymmetricSystem, normalize
from .psi import (
    build_psi_linear,
    h_vector,
    psi_basis,
    psi_difference,
    substitution_value,
    verify_master_identity,
)
from .symcore import IntPolynomial

MASK64 = (1 << 64) - 1


class SplitMix64:
    """SplitMix64 (Steele, Lea and Flood); one 64-bit word per step."""

    def __init__(self, seed: int):
        if not 0 <= seed <= MASK64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        self.state = seed

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in ``[lo, hi]`` by rejection (no modulo bias)."""
        n = hi - lo + 1
        if n <= 0:
            raise ValueError("empty range")
        limit = (1 << 64) - (1 << 64) % n
        while True:
            v = self.next_u64()
            if v < limit:
                return lo + v % n

    def tuple(self, k: int, lo: int, hi: int) -> tuple[int, ...]:
        return tuple(self.randint(lo, hi) for _ in range(k))

    def shuffled(self, seq) -> tuple:
        out = list(seq)
        for i in range(len(out) - 1, 0, -1):
            j = self.randint(0, i)
            out[i], out[j] = out[j], out[i]
        return tuple(out)


@dataclass
class PropertyResult:
    name: str
    passed: bool
    cases: int
    witness: str = ""
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{status} {self.name} cases={self.cases}"
        if self.witness:
            text += f" witness={self.witness}"
        if self.detail:
            text += f" detail={self.detail}"
        return text


@dataclass
class VerifyReport:
    seed: int
    results: list[PropertyResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results)

    def lines(self) -> list[str]:
        return [f"seed={self.seed}"] + [r.line() for r in self.results]


@dataclass
class SuiteSizes:
    sigma_cases: int = 1000
    max_k: int = 8
    systems: int = 20
    system_max_k: int = 4
    system_X: int = 8
    pair_cases: int = 2000


def random_linear_system(rng: SplitMix64, k: int, coeff: int = 3) -> NormalizedSystem:
    """Random ``r x k`` system with ``1 <= r <= k`` and entries in ``[-coeff, coeff]``."""
    r = rng.randint(1, k)
    while True:
        rows = [rng.tuple(k, -coeff, coeff) for _ in range(r)]
        if any(any(row) for row in rows):
            return normalize(SymmetricSystem(k, rows))


def solution_multisets(system, X: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Every solution in ``[1, X]^(2k)`` up to reordering each side.

    Solutions are closed under permuting ``x`` and ``y`` separately and
    both identities only see the multisets, so one representative per
    (multiset, multiset) pair covers every ordered solution.
    """
    groups: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    for z in itertools.combinations_with_replacement(range(1, X + 1), system.k):
        groups.setdefault(system.values(z), []).append(z)
    return [(a, b) for g in groups.values() for a in g for b in g]


def _mutated(poly: IntPolynomial) -> IntPolynomial:
    c = list(poly.coeffs) or [0]
    c[0] += 1
    return IntPolynomial(c)


def _run(name: str, cases: list, check: Callable[[object], str | None], fmt=str) -> PropertyResult:
    """Apply ``check`` to each case; it returns None or a failure message."""
    for case in cases:
        msg = check(case)
        if msg is not None:
            return PropertyResult(name, False, len(cases), fmt(case), msg)
    return PropertyResult(name, True, len(cases), fmt(cases[len(cases) // 2]) if cases else "")


def _fmt_pair(case) -> str:
    x, y = case[-2], case[-1]
    return f"x={x} y={y}"


def run_suites(seed: int = 0, sizes: SuiteSizes | None = None, mutate: bool = False) -> VerifyReport:
    """Run every property suite; ``mutate`` perturbs Psi to prove the harness can fail."""
    sizes = sizes or SuiteSizes()
    rng = SplitMix64(seed)
    report = VerifyReport(seed)
    add = report.results.append

    zs = [rng.tuple(rng.randint(1, sizes.max_k), -50, 50) for _ in range(sizes.sigma_cases)]

    def gen_identity(z):
        sig = symcore.elementary_symmetric(z)
        if symcore.poly_from_roots(z).coeffs != tuple(reversed(sig)):
            return "coefficients differ from reversed sigma vector"
        return None

    add(_run("symcore.generating_identity", zs, gen_identity))

    def perm_invariance(z):
        sig = symcore.elementary_symmetric(z)
        perms = itertools.permutations(z) if len(z) <= 5 else (rng.shuffled(z) for _ in range(20))
        for p in perms:
            if symcore.elementary_symmetric(p) != sig:
                return f"permutation {p} changes sigma"
        return None

    add(_run("symcore.permutation_invariance", zs[:200], perm_invariance))

    def roots_vanish(z):
        p = symcore.poly_from_roots(z)
        for zi in z:
            if symcore.poly_eval(p, -zi) != 0:
                return f"value at {-zi} is nonzero"
        return None

    add(_run("symcore.roots_vanish", zs, roots_vanish))

    # solutions of random linear systems
    systems = []
    for _ in range(sizes.systems):
        k = rng.randint(2, sizes.system_max_k)
        norm = random_linear_system(rng, k)
        systems.append((norm, solution_multisets(norm, sizes.system_X)))
    sol_cases = [(norm, x, y) for norm, sols in systems for x, y in sols]

    def master(case):
        norm, x, y = case
        if mutate:
            lhs = (symcore.poly_from_roots(x) - symcore.poly_from_roots(y)) * norm.A
            rhs = _mutated(build_psi_linear(norm, h_vector(x, y, norm)).poly)
            return None if lhs == rhs else "coefficients differ"
        chk = verify_master_identity(x, y, norm)
        return None if chk else f"first differing coefficient t^{chk.witness}"

    add(_run("psi.master_identity", sol_cases, master, _fmt_pair))

    def substitution(case):
        norm, x, y = case
        psi = build_psi_linear(norm, h_vector(x, y, norm))
        if mutate:
            psi = _mutated(psi.poly)
        for v in y:
            lhs, rhs = substitution_value(x, v, norm, psi)
            if lhs != rhs:
                return f"t=-{v}: {lhs} != {rhs}"
        return None

    add(_run("psi.substitution", sol_cases, substitution, _fmt_pair))

    def zero_iff_permutation(case):
        norm, x, y = case
        zero = build_psi_linear(norm, h_vector(x, y, norm)).is_zero()
        if zero != (x == y):
            return f"Psi zero={zero} but multisets equal={x == y}"
        return None

    add(_run("psi.zero_iff_permutation", sol_cases, zero_iff_permutation, _fmt_pair))

    pair_cases = []
    for _ in range(sizes.pair_cases):
        norm = systems[rng.randint(0, len(systems) - 1)][0]
        x = rng.tuple(norm.k, 1, 8)
        # half the pairs are permutations, so both outcomes are well represented
        if rng.randint(0, 1):
            y = rng.shuffled(x)
        else:
            y = rng.tuple(norm.k, 1, 8)
        pair_cases.append((norm, x, y))
    for norm, sols in systems:
        nontrivial = [s for s in sols if s[0] != s[1]]
        if nontrivial:
            x, y = nontrivial[rng.randint(0, len(nontrivial) - 1)]
            pair_cases.append((norm, rng.shuffled(x), rng.shuffled(y)))

    def solution_test(case):
        norm, x, y = case
        direct = norm.values(x) == norm.values(y)
        if bool(verify_master_identity(x, y, norm)) != direct:
            return f"identity check disagrees with direct equation test ({direct})"
        return None

    add(_run("psi.solution_test_equivalence", pair_cases, solution_test, _fmt_pair))

    lin_cases = []
    for norm, _ in systems:
        for _ in range(5):
            h1 = {l: rng.randint(-1000, 1000) for l in norm.R}
            h2 = {l: rng.randint(-1000, 1000) for l in norm.R}
            lin_cases.append((norm, h1, h2))

    def linearity(case):
        norm, h1, h2 = case
        total = build_psi_linear(norm, {l: h1[l] + h2[l] for l in norm.R}).poly
        if total != build_psi_linear(norm, h1).poly + build_psi_linear(norm, h2).poly:
            return "Psi(h1 + h2) != Psi(h1) + Psi(h2)"
        return None

    add(_run("psi.linearity", lin_cases, linearity, lambda c: f"h1={c[1]} h2={c[2]}"))

    def degree_bound(case):
        norm, h1, _ = case
        deg = build_psi_linear(norm, h1).poly.degree
        if deg > norm.k - 1:
            return f"degree {deg} > {norm.k - 1}"
        for l, p in psi_basis(norm).items():
            if p.degree > norm.k - 1:
                return f"psi_{l} has degree {p.degree}"
        return None

    add(_run("psi.degree_bound", lin_cases, degree_bound, lambda c: f"h={c[1]}"))

    nl_cases = []
    for _ in range(5):
        c2, c1 = rng.randint(-2, 2), rng.randint(-2, 2)
        nsys = NonlinearSystem(3, (2, 3), (1, 1), (((c2, (2,)), (c1, (1,))), ()))
        for x, y in solution_multisets(nsys, 6):
            nl_cases.append((nsys, x, y))

    def master_nonlinear(case):
        nsys, x, y = case
        lhs = (symcore.poly_from_roots(x) - symcore.poly_from_roots(y)) * nsys.A
        rhs = psi_difference(nsys, x, y)
        if mutate:
            rhs = _mutated(rhs)
        return None if lhs == rhs else "coefficients differ"

    add(_run("psi.master_identity_nonlinear", nl_cases, master_nonlinear, _fmt_pair))
    return report
