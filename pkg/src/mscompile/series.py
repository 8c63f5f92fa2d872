"""Finite cosine/sine series in one angle variable, and their Laurent form.

A ``TrigSeries`` holds real coefficients k = 0..degree for either

    even:  f(theta) = sum_k coeffs[k] * cos(k*theta)
    odd:   f(theta) = sum_k coeffs[k] * sin(k*theta)

Both are 2*pi periodic by construction.  The Laurent form substitutes
z = exp(i*theta), so cos(k*theta) <-> (z^k + z^-k)/2 and
sin(k*theta) <-> (z^k - z^-k)/(2i).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

EVEN = "even"
ODD = "odd"


class ParityError(ValueError):
    """Coefficients are inconsistent with the requested parity."""


@dataclass(frozen=True)
class TrigSeries:
    """A finite cosine (even) or sine (odd) series with real coefficients."""

    parity: str
    coeffs: tuple[float, ...]

    def __post_init__(self):
        if self.parity not in (EVEN, ODD):
            raise ParityError(f"parity must be {EVEN!r} or {ODD!r}, got {self.parity!r}")
        coeffs = tuple(float(c) for c in self.coeffs)
        if not coeffs:
            raise ValueError("coeffs must have at least one entry (k = 0)")
        if self.parity == ODD and coeffs[0] != 0.0:
            raise ParityError("odd series must have coeffs[0] == 0 (sin(0) carries no weight)")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def even(cls, coeffs) -> TrigSeries:
        return cls(EVEN, tuple(coeffs))

    @classmethod
    def odd(cls, coeffs) -> TrigSeries:
        return cls(ODD, tuple(coeffs))

    @classmethod
    def zero(cls, parity: str, degree: int = 0) -> TrigSeries:
        return cls(parity, (0.0,) * (degree + 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def evaluate(self, theta):
        """Value of the series at theta (scalar or ndarray)."""
        theta = np.asarray(theta, dtype=float)
        k = np.arange(len(self.coeffs))
        kt = np.multiply.outer(theta, k)
        basis = np.cos(kt) if self.parity == EVEN else np.sin(kt)
        out = basis @ np.asarray(self.coeffs)
        return out if out.ndim else float(out)

    def derivative(self, theta):
        """Exact termwise derivative at theta (scalar or ndarray)."""
        theta = np.asarray(theta, dtype=float)
        k = np.arange(len(self.coeffs))
        kt = np.multiply.outer(theta, k)
        basis = -np.sin(kt) * k if self.parity == EVEN else np.cos(kt) * k
        out = basis @ np.asarray(self.coeffs)
        return out if out.ndim else float(out)

    def padded(self, degree: int) -> TrigSeries:
        """Same series with trailing zeros up to the requested degree."""
        if degree < self.degree:
            raise ValueError(f"cannot pad degree {self.degree} down to {degree}")
        return TrigSeries(self.parity, self.coeffs + (0.0,) * (degree - self.degree))

    def __call__(self, theta):
        return self.evaluate(theta)


@dataclass(frozen=True)
class LaurentPoly:
    """Complex Laurent polynomial sum_{k=-M..M} coeffs[k] z^k.

    Stored dense; ``coeffs`` runs from exponent -M up to +M.
    """

    coeffs: np.ndarray = field()

    def __post_init__(self):
        arr = np.asarray(self.coeffs, dtype=complex)
        if arr.ndim != 1 or arr.size % 2 == 0:
            raise ValueError("coeffs must be a 1-d array of odd length (-M..M)")
        object.__setattr__(self, "coeffs", arr)

    @property
    def degree(self) -> int:
        return (self.coeffs.size - 1) // 2

    def coeff(self, k: int) -> complex:
        m = self.degree
        if abs(k) > m:
            return 0.0 + 0.0j
        return complex(self.coeffs[k + m])

    def is_real_on_circle(self, tol: float = 1e-12) -> bool:
        """True iff coeffs[k] == conj(coeffs[-k]) for all k (up to tol)."""
        return bool(np.max(np.abs(self.coeffs - np.conj(self.coeffs[::-1]))) <= tol)

    def reciprocal_conj(self) -> LaurentPoly:
        """p*(1/conj(z)): coefficientwise conj(coeffs[-k])."""
        return LaurentPoly(np.conj(self.coeffs[::-1]))

    def __mul__(self, other: LaurentPoly) -> LaurentPoly:
        return LaurentPoly(np.convolve(self.coeffs, other.coeffs))

    def __add__(self, other: LaurentPoly) -> LaurentPoly:
        m = max(self.degree, other.degree)
        out = np.zeros(2 * m + 1, dtype=complex)
        out[m - self.degree : m + self.degree + 1] += self.coeffs
        out[m - other.degree : m + other.degree + 1] += other.coeffs
        return LaurentPoly(out)

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly(-self.coeffs)

    def __sub__(self, other: LaurentPoly) -> LaurentPoly:
        return self + (-other)

    def evaluate(self, z):
        z = np.asarray(z, dtype=complex)
        m = self.degree
        powers = np.power.outer(z, np.arange(-m, m + 1))
        out = powers @ self.coeffs
        return out if out.ndim else complex(out)


def to_laurent(s: TrigSeries) -> LaurentPoly:
    """Laurent form of a trig series on the unit circle."""
    m = s.degree
    out = np.zeros(2 * m + 1, dtype=complex)
    for k, c in enumerate(s.coeffs):
        if k == 0:
            out[m] += c
        elif s.parity == EVEN:
            out[m + k] += c / 2.0
            out[m - k] += c / 2.0
        else:
            out[m + k] += c / 2.0j
            out[m - k] -= c / 2.0j
    return LaurentPoly(out)


def from_laurent(p: LaurentPoly, parity: str, tol: float = 1e-12) -> TrigSeries:
    """Recover the trig series of the given parity from its Laurent form.

    Raises ParityError if p is not real on the circle with that parity.
    """
    if parity not in (EVEN, ODD):
        raise ParityError(f"parity must be {EVEN!r} or {ODD!r}, got {parity!r}")
    scale = max(1.0, float(np.max(np.abs(p.coeffs))))
    if not p.is_real_on_circle(tol * scale):
        raise ParityError("Laurent polynomial is not real on the unit circle")
    m = p.degree
    sym = p.coeffs - p.coeffs[::-1]  # vanishes for even symmetry
    if parity == EVEN:
        if np.max(np.abs(sym)) > tol * scale:
            raise ParityError("Laurent coefficients are not symmetric (even parity)")
        coeffs = [float(np.real(p.coeff(0)))] + [2.0 * float(np.real(p.coeff(k))) for k in range(1, m + 1)]
    else:
        if np.max(np.abs(p.coeffs + p.coeffs[::-1])) > tol * scale:
            raise ParityError("Laurent coefficients are not antisymmetric (odd parity)")
        if abs(p.coeff(0)) > tol * scale:
            raise ParityError("odd series cannot carry a constant term")
        coeffs = [0.0] + [2.0 * float(np.imag(p.coeff(k))) * -1.0 for k in range(1, m + 1)]
    return TrigSeries(parity, tuple(coeffs))
