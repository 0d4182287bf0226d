"""Closed-form spectra and polynomials for two superpower-graph families.

Families: ``D_p x D_p`` and ``D_{p^k}``, ``p`` an odd prime.  Every claim
is encoded exactly as published, including the non-monic cubic for
``D_{p^k}``, so that the verifier can audit it rather than trust it.
Quotient matrices use the published class order: ``(1, 2, 2p, p)`` for
``D_p x D_p`` and ``(identity, rotations, reflections)`` for ``D_{p^k}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import BadK, NotOddPrime
from .spectra import RationalMatrix, Spectrum

CLAIM_IDS = ("thm31", "cor32", "cor33", "cor34", "thm41", "thm41cubic")


@dataclass(frozen=True)
class PredictedSpectrum:
    claim_id: str
    closed_part: tuple[tuple[Fraction, int], ...]
    residual_quotient: RationalMatrix

    @property
    def dimension(self) -> int:
        return sum(m for _, m in self.closed_part) + self.residual_quotient.size

    def values(self) -> list[float]:
        """Closed values plus numeric quotient roots, ascending."""
        out = [float(v) for v, m in self.closed_part for _ in range(m)]
        roots = np.linalg.eigvals(self.residual_quotient.to_array())
        out.extend(np.real(roots).tolist())
        return sorted(out)


@dataclass(frozen=True)
class CoefficientClaim:
    claim_id: str
    coefficients: tuple[Fraction, ...]  # highest degree first

    @property
    def monic(self) -> bool:
        return self.coefficients[0] == 1

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _check_p(p):
    if not isinstance(p, int) or p == 2 or not is_prime(p):
        raise NotOddPrime(f"p must be an odd prime, got {p!r}")


def _check_k(k):
    if not isinstance(k, int) or k < 1:
        raise BadK(f"k must be a positive integer, got {k!r}")


def _alpha(alpha) -> Fraction:
    a = Fraction(alpha)
    if not 0 <= a <= 1:
        raise ValueError(f"alpha must lie in [0, 1], got {a}")
    return a


def thm31_quotient(p: int, alpha) -> RationalMatrix:
    a = _alpha(alpha)
    b = 1 - a
    p2 = p * p
    return RationalMatrix((
        ((4 * p2 - 1) * a, (p2 + 2 * p) * b, (2 * p2 - 2 * p) * b, (p2 - 1) * b),
        (b, (p2 + 2 * p - 1) * b + 3 * p2 * a, (2 * p2 - 2 * p) * b, 0),
        (b, (p2 + 2 * p) * b, (2 * p2 - 2 * p - 1) * b + (4 * p2 - 1) * a, (p2 - 1) * b),
        (b, 0, (2 * p2 - 2 * p) * b, (p2 - 2) + (2 * p2 - 2 * p + 1) * a),
    ))


def thm31_prediction(p: int, alpha) -> PredictedSpectrum:
    _check_p(p)
    a = _alpha(alpha)
    p2 = p * p
    closed = (
        ((3 * p2 - 2 * p) * a - 1, p2 - 2),
        (4 * p2 * a - 1, 2 * p2 - 2 * p - 1),
        ((3 * p2 + 1) * a - 1, p2 + 2 * p - 1),
    )
    return PredictedSpectrum("thm31", closed, thm31_quotient(p, a))


def cor32_quartic(p: int) -> CoefficientClaim:
    _check_p(p)
    coeffs = (
        1,
        4 - 4 * p**2,
        p**4 + 2 * p**3 - 13 * p**2 - 2 * p + 6,
        2 * p**6 + 2 * p**5 - 3 * p**4 + 4 * p**3 - 11 * p**2 - 6 * p + 4,
        2 * p**6 + 2 * p**5 - 4 * p**4 + 2 * p**3 - 2 * p**2 - 4 * p + 1,
    )
    return CoefficientClaim("cor32", tuple(Fraction(c) for c in coeffs))


def cor32_quotient(p: int) -> RationalMatrix:
    """The adjacency determinant matrix as printed (lambda terms removed)."""
    _check_p(p)
    p2 = p * p
    return RationalMatrix((
        (0, p2 + 2 * p, 2 * p2 - 2 * p, p2 - 1),
        (1, p2 + 2 * p - 1, 2 * p2 - 2 * p, 0),
        (1, p2 + 2 * p, 2 * p2 - 2 * p - 1, p2 - 1),
        (1, 0, 2 * p2 - 2 * p, p2 - 2),
    ))


def cor33_laplacian(p: int) -> Spectrum:
    _check_p(p)
    p2 = p * p
    return Spectrum.from_counts((
        (Fraction(3 * p2 - 2 * p), p2 - 2),
        (Fraction(4 * p2), 2 * p2 - 2 * p + 1),
        (Fraction(3 * p2 + 1), p2 + 2 * p - 1),
        (Fraction(2 * p2 - 2 * p + 1), 1),
        (Fraction(0), 1),
    ))


def cor34_signless(p: int) -> PredictedSpectrum:
    _check_p(p)
    p2 = p * p
    closed = (
        (Fraction(3 * p2 - 2 * p - 2), p2 - 2),
        (Fraction(4 * p2 - 2), 2 * p2 - 2 * p - 1),
        (Fraction(3 * p2 - 1), p2 + 2 * p - 1),
    )
    # roots of the alpha = 1/2 determinant, each doubled
    return PredictedSpectrum("cor34", closed, thm31_quotient(p, Fraction(1, 2)).scaled(2))


def thm41_quotient(p: int, k: int, alpha) -> RationalMatrix:
    a = _alpha(alpha)
    b = 1 - a
    q = p**k
    return RationalMatrix((
        ((2 * q - 1) * a, (q - 1) * b, q * b),
        (b, q + a - 2, 0),
        (b, 0, q + a - 1),
    ))


def thm41_prediction(p: int, k: int, alpha) -> PredictedSpectrum:
    _check_p(p)
    _check_k(k)
    a = _alpha(alpha)
    q = p**k
    closed = (((q + 1) * a - 1, q - 1), (q * a - 1, q - 2))
    return PredictedSpectrum("thm41", closed, thm41_quotient(p, k, a))


def thm41_cubic(p: int, k: int, alpha) -> CoefficientClaim:
    _check_p(p)
    _check_k(k)
    a = Fraction(alpha)
    q = p**k
    coeffs = (
        -2 * q + 1,
        4 * q**2 - 8 * q + 3 + (4 * q - 1) * a,
        -2 * q**3 + 11 * q**2 - 11 * q + 3 + (4 * q**2 - 6 * q) * a**2 + (-12 * q**2 + 14 * q - 2) * a,
        -4 * q**3 + 10 * q**2 - 6 * q
        + (4 * q - 4 * q**2) * a**3
        + (-4 * q**3 + 18 * q**2 - 12 * q) * a**2
        + (8 * q**3 - 23 * q**2 + 13 * q - 1) * a
        + 1,
    )
    return CoefficientClaim("thm41cubic", tuple(Fraction(c) for c in coeffs))
