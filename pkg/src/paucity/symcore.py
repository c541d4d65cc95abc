"""Exact integer arithmetic, dense integer polynomials and elementary
symmetric polynomials.

Python integers are unbounded, so the fixed 128-bit signed capacity is
enforced explicitly: every arithmetic helper here checks its result and
raises :class:`~paucity.errors.Overflow` instead of returning a value whose
magnitude needs more than 127 bits.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

from .errors import Overflow

INT_BITS = 127
INT_LIMIT = 1 << INT_BITS  # |value| < INT_LIMIT
MAX_K = 16

#: degree reported for the zero polynomial
ZERO_DEGREE = -math.inf


def check_int(value: int) -> int:
    """Return ``value`` unchanged if it fits in a signed 128-bit integer."""
    if -INT_LIMIT < value < INT_LIMIT:
        return value
    raise Overflow(f"integer needs more than {INT_BITS} bits of magnitude: {value}")


def add(a: int, b: int) -> int:
    return check_int(a + b)


def sub(a: int, b: int) -> int:
    return check_int(a - b)


def mul(a: int, b: int) -> int:
    return check_int(a * b)


class IntPolynomial:
    """Immutable dense polynomial in one variable with integer coefficients.

    ``coeffs[i]`` is the coefficient of ``t**i``.  Trailing zeros are never
    stored, so the zero polynomial has ``coeffs == ()``.
    """

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [check_int(int(v)) for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self._coeffs = tuple(c)

    @classmethod
    def constant(cls, value: int) -> "IntPolynomial":
        return cls((value,))

    @classmethod
    def monomial(cls, coeff: int, power: int) -> "IntPolynomial":
        if power < 0:
            raise ValueError("negative power")
        return cls((0,) * power + (coeff,))

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self._coeffs

    @property
    def degree(self) -> float | int:
        """Index of the last nonzero coefficient; ``-inf`` for zero."""
        return len(self._coeffs) - 1 if self._coeffs else ZERO_DEGREE

    def is_zero(self) -> bool:
        return not self._coeffs

    def coeff(self, i: int) -> int:
        return self._coeffs[i] if 0 <= i < len(self._coeffs) else 0

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        n = max(len(self._coeffs), len(other._coeffs))
        return IntPolynomial(add(self.coeff(i), other.coeff(i)) for i in range(n))

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        n = max(len(self._coeffs), len(other._coeffs))
        return IntPolynomial(sub(self.coeff(i), other.coeff(i)) for i in range(n))

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(-c for c in self._coeffs)

    def __mul__(self, other: "IntPolynomial | int") -> "IntPolynomial":
        if isinstance(other, int):
            return IntPolynomial(mul(c, other) for c in self._coeffs)
        if not self._coeffs or not other._coeffs:
            return IntPolynomial()
        out = [0] * (len(self._coeffs) + len(other._coeffs) - 1)
        for i, a in enumerate(self._coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other._coeffs):
                out[i + j] = add(out[i + j], mul(a, b))
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __call__(self, t0: int) -> int:
        return poly_eval(self, t0)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, IntPolynomial):
            return self._coeffs == other._coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self._coeffs)})"

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        terms = []
        for i in range(len(self._coeffs) - 1, -1, -1):
            c = self._coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                var = "t" if i == 1 else f"t^{i}"
                body = var if mag == 1 else f"{mag}*{var}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def _check_k(k: int) -> None:
    if k > MAX_K:
        raise ValueError(f"at most {MAX_K} variables are supported, got {k}")


def elementary_symmetric(z: Sequence[int]) -> tuple[int, ...]:
    """Return ``(sigma_0(z), ..., sigma_k(z))``.

    Built by multiplying out ``(t + z_1)...(t + z_k)`` one factor at a time,
    so ``prod(t + z_i) == sum(sigma_j * t**(k - j))``.

    >>> elementary_symmetric((1, 2, 3))
    (1, 6, 11, 6)
    """
    k = len(z)
    if k < 1:
        raise ValueError("need at least one variable")
    _check_k(k)
    sig = [1] + [0] * k
    for i, zi in enumerate(z):
        for j in range(i + 1, 0, -1):
            sig[j] = add(sig[j], mul(zi, sig[j - 1]))
    return tuple(sig)


def poly_from_roots(negated_roots: Sequence[int]) -> IntPolynomial:
    """``prod(t + z_i)`` as an :class:`IntPolynomial` of degree ``len(z)``."""
    _check_k(len(negated_roots))
    c = [1]
    for zi in negated_roots:
        # multiply by (t + zi): new[j] = c[j-1] + zi * c[j]
        nxt = [0] * (len(c) + 1)
        for j, cj in enumerate(c):
            nxt[j] = add(nxt[j], mul(zi, cj))
            nxt[j + 1] = add(nxt[j + 1], cj)
        c = nxt
    return IntPolynomial(c)


def poly_eval(p: IntPolynomial, t0: int) -> int:
    """Exact value ``p(t0)`` by Horner's rule."""
    acc = 0
    for c in reversed(p.coeffs):
        acc = add(mul(acc, t0), c)
    return acc


def multiset_permutations(z: Sequence[int]) -> int:
    """Number of distinct orderings of the multiset ``z``."""
    n = math.factorial(len(z))
    counts: dict[int, int] = {}
    for v in z:
        counts[v] = counts.get(v, 0) + 1
    for m in counts.values():
        n //= math.factorial(m)
    return n


def distinct_permutations(z: Sequence[int]) -> list[tuple[int, ...]]:
    """All distinct orderings of ``z`` in lexicographic order."""
    items = sorted(z)
    out = [tuple(items)]
    # next-permutation walk; yields each distinct arrangement exactly once
    while True:
        i = len(items) - 2
        while i >= 0 and items[i] >= items[i + 1]:
            i -= 1
        if i < 0:
            return out
        j = len(items) - 1
        while items[j] <= items[i]:
            j -= 1
        items[i], items[j] = items[j], items[i]
        items[i + 1:] = reversed(items[i + 1:])
        out.append(tuple(items))
