"""Exact polynomials and truncated power series over arbitrary-precision integers."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import DomainError


def _trim(coeffs: tuple[int, ...]) -> tuple[int, ...]:
    n = len(coeffs)
    while n > 0 and coeffs[n - 1] == 0:
        n -= 1
    return coeffs[:n]


@dataclass(frozen=True)
class IntPolynomial:
    """Integer-coefficient polynomial; coeffs[k] is the degree-k coefficient.

    The stored tuple never carries trailing zeros, so equality of values is
    equality of representations.
    """

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(tuple(self.coeffs)))

    @classmethod
    def geometric(cls, top: int) -> "IntPolynomial":
        """1 + q + ... + q^top."""
        if top < 0:
            raise DomainError("geometric block needs top >= 0")
        return cls((1,) * (top + 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPolynomial(tuple(out))

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPolynomial(())
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return IntPolynomial(tuple(out))

    def __call__(self, x: int) -> int:
        value = 0
        for c in reversed(self.coeffs):
            value = value * x + c
        return value

    def is_palindromic(self) -> bool:
        return self.coeffs == tuple(reversed(self.coeffs))


@dataclass(frozen=True)
class IntSeries:
    """Truncated integer power series with an explicit truncation order.

    Exactly order+1 coefficients are stored; arithmetic never extends the
    truncation order silently.
    """

    coeffs: tuple[int, ...]
    order: int

    def __post_init__(self):
        if self.order < 0:
            raise DomainError("series order must be >= 0")
        coeffs = tuple(self.coeffs)
        if len(coeffs) < self.order + 1:
            coeffs = coeffs + (0,) * (self.order + 1 - len(coeffs))
        else:
            coeffs = coeffs[: self.order + 1]
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def from_polynomial(cls, poly: IntPolynomial, order: int) -> "IntSeries":
        return cls(poly.coeffs, order)

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k]


def series_mul(a: IntSeries, b: IntSeries) -> IntSeries:
    """Product truncated at min(a.order, b.order)."""
    order = min(a.order, b.order)
    out = [0] * (order + 1)
    for i in range(order + 1):
        ca = a.coeffs[i]
        if ca:
            for j in range(order + 1 - i):
                out[i + j] += ca * b.coeffs[j]
    return IntSeries(tuple(out), order)


def series_inverse_one_minus(powers: Iterable[int], order: int) -> IntSeries:
    """Expansion of prod_m 1/(1 - q^m) up to the given order.

    The degree-l coefficient counts the multisets of the given powers that
    sum to l; the empty product is the constant series 1.
    """
    if order < 0:
        raise DomainError("series order must be >= 0")
    out = [0] * (order + 1)
    out[0] = 1
    for m in powers:
        if m < 1:
            raise DomainError("powers must be >= 1")
        for l in range(m, order + 1):
            out[l] += out[l - m]
    return IntSeries(tuple(out), order)
