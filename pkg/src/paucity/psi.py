"""The polynomial Psi(t; h) and instance checks of the identities built on it.

For a linear system in normal form and a solution ``(x, y)`` with
``h_l = sigma_l(x) - sigma_l(y)`` (``l`` in ``R``)::

    A * (prod(t + x_i) - prod(t + y_i)) == Psi(t; h)

and setting ``t = -y_j`` gives ``A * prod(x_i - y_j) == Psi(-y_j; h)``.
The non-linear variant replaces ``Psi(t; h)`` by ``Psi(t; h) - Psi(t; g)``
with ``h = sigma_R(x)`` and ``g = sigma_R(y)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from . import symcore
from .normalize import NonlinearSystem, NormalizedSystem
from .symcore import IntPolynomial


@dataclass(frozen=True)
class HVector:
    entries: Mapping[int, int]
    X: int | None = None

    def __getitem__(self, l: int) -> int:
        return self.entries[l]

    def as_tuple(self, R: Sequence[int]) -> tuple[int, ...]:
        return tuple(self.entries[l] for l in R)

    def within_box(self, k: int) -> bool:
        if self.X is None:
            return True
        return all(abs(v) <= (1 << k) * self.X ** l for l, v in self.entries.items())


@dataclass(frozen=True)
class PsiPolynomial:
    poly: IntPolynomial
    source: str  # "linear" or "nonlinear"

    def __call__(self, t0: int) -> int:
        return symcore.poly_eval(self.poly, t0)

    def is_zero(self) -> bool:
        return self.poly.is_zero()


@dataclass(frozen=True)
class IdentityCheck:
    """Outcome of an identity check; falsy on failure.

    ``witness`` is the index of the first coefficient where the two sides
    differ, or ``None`` when the identity holds.
    """

    holds: bool
    witness: int | None = None
    lhs: IntPolynomial | None = None
    rhs: IntPolynomial | None = None

    def __bool__(self) -> bool:
        return self.holds


def h_vector(x: Sequence[int], y: Sequence[int], norm: NormalizedSystem, X: int | None = None) -> HVector:
    sx = symcore.elementary_symmetric(x)
    sy = symcore.elementary_symmetric(y)
    return HVector({l: symcore.sub(sx[l], sy[l]) for l in norm.R}, X)


def sigma_on_R(z: Sequence[int], R: Sequence[int]) -> tuple[int, ...]:
    sig = symcore.elementary_symmetric(z)
    return tuple(sig[l] for l in R)


def psi_basis(norm: NormalizedSystem) -> dict[int, IntPolynomial]:
    """``psi_l(t) = A t^(k-l) + sum_{k_j > l} c_j b_jl t^(k-k_j)`` for ``l`` in ``R``."""
    k, A, c = norm.k, norm.A, norm.cofactors
    basis = {}
    for l in norm.R:
        coeffs = [0] * k
        coeffs[k - l] = A
        for j, kj in enumerate(norm.degrees):
            if kj > l:
                coeffs[k - kj] = symcore.add(coeffs[k - kj], symcore.mul(c[j], norm.b(j, l)))
        basis[l] = IntPolynomial(coeffs)
    return basis


def _checked_degree(poly: IntPolynomial, k: int) -> IntPolynomial:
    if poly.degree > k - 1:
        raise AssertionError(f"Psi has degree {poly.degree} > k-1 = {k - 1}")
    return poly


def build_psi_linear(norm: NormalizedSystem, h: HVector | Mapping[int, int]) -> PsiPolynomial:
    entries = h.entries if isinstance(h, HVector) else h
    if set(entries) != set(norm.R):
        raise ValueError(f"h must be indexed exactly by R={norm.R}, got {sorted(entries)}")
    total = IntPolynomial()
    for l, p in psi_basis(norm).items():
        if entries[l]:
            total = total + p * entries[l]
    return PsiPolynomial(_checked_degree(total, norm.k), "linear")


def build_psi_nonlinear(nsys: NonlinearSystem, e: Sequence[int] | HVector) -> PsiPolynomial:
    """``Psi(t; e) = A sum_m e_m t^(k-m) + sum_j c_j t^(k-k_j) Upsilon_j(e)``."""
    R = nsys.R
    if isinstance(e, HVector):
        e = e.as_tuple(R)
    e = tuple(e)
    if len(e) != len(R):
        raise ValueError(f"e must have one entry per element of R={R}")
    k, A, c = nsys.k, nsys.A, nsys.cofactors
    coeffs = [0] * k
    for m, em in zip(R, e):
        coeffs[k - m] = symcore.add(coeffs[k - m], symcore.mul(A, em))
    for j, kj in enumerate(nsys.degrees):
        ups = nsys.upsilon(j, e)
        if ups:
            coeffs[k - kj] = symcore.add(coeffs[k - kj], symcore.mul(c[j], ups))
    return PsiPolynomial(_checked_degree(IntPolynomial(coeffs), k), "nonlinear")


def _compare(lhs: IntPolynomial, rhs: IntPolynomial) -> IdentityCheck:
    n = max(len(lhs.coeffs), len(rhs.coeffs))
    for i in range(n):
        if lhs.coeff(i) != rhs.coeff(i):
            return IdentityCheck(False, i, lhs, rhs)
    return IdentityCheck(True, None, lhs, rhs)


def _difference(x: Sequence[int], y: Sequence[int], A: int) -> IntPolynomial:
    return (symcore.poly_from_roots(x) - symcore.poly_from_roots(y)) * A


def verify_master_identity(x: Sequence[int], y: Sequence[int], norm: NormalizedSystem) -> IdentityCheck:
    """Compare ``A(prod(t+x_i) - prod(t+y_i))`` with ``Psi(t; h(x, y))``.

    Holds exactly when ``(x, y)`` solves the system, so this doubles as a
    solution test.
    """
    if len(x) != norm.k or len(y) != norm.k:
        raise ValueError(f"x and y must have length k={norm.k}")
    psi = build_psi_linear(norm, h_vector(x, y, norm))
    return _compare(_difference(x, y, norm.A), psi.poly)


def verify_master_identity_nonlinear(x: Sequence[int], y: Sequence[int], nsys: NonlinearSystem) -> IdentityCheck:
    """Compare ``A(prod(t+x_i) - prod(t+y_i))`` with ``Psi(t; h) - Psi(t; g)``."""
    if len(x) != nsys.k or len(y) != nsys.k:
        raise ValueError(f"x and y must have length k={nsys.k}")
    h = sigma_on_R(x, nsys.R)
    g = sigma_on_R(y, nsys.R)
    rhs = build_psi_nonlinear(nsys, h).poly - build_psi_nonlinear(nsys, g).poly
    return _compare(_difference(x, y, nsys.A), rhs)


def substitution_value(
    x: Sequence[int], v: int, system: NormalizedSystem | NonlinearSystem, psi: PsiPolynomial | IntPolynomial
) -> tuple[int, int]:
    """``(A * prod(x_i - v), Psi(-v))``; equal whenever ``v`` is a y-entry of a solution."""
    lhs = system.A
    for xi in x:
        lhs = symcore.mul(lhs, xi - v)
    poly = psi.poly if isinstance(psi, PsiPolynomial) else psi
    return lhs, symcore.poly_eval(poly, -v)


def psi_difference(nsys: NonlinearSystem, x: Sequence[int], y: Sequence[int]) -> IntPolynomial:
    h = sigma_on_R(x, nsys.R)
    g = sigma_on_R(y, nsys.R)
    return build_psi_nonlinear(nsys, h).poly - build_psi_nonlinear(nsys, g).poly
