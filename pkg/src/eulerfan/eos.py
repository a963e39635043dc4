"""Polytropic equation of state p(rho) = rho**gamma and derived quantities.

All functions accept scalars or numpy arrays for the density arguments and
are safe to call concurrently (pure functions of their inputs).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError


@dataclass(frozen=True)
class Eos:
    """Polytropic pressure law with adiabatic exponent gamma >= 1.

    The internal energy is tied to the pressure by p(r) = r**2 * e'(r),
    which fixes e(rho) = rho**(gamma-1)/(gamma-1) for gamma > 1 and
    e(rho) = log(rho) for gamma = 1 (integration constant 0; any affine
    shift c*rho cancels across the interface balances, so the choice is
    free).
    """

    gamma: float

    def __post_init__(self):
        g = self.gamma
        if not np.isfinite(g) or g < 1.0:
            raise DomainError(f"adiabatic exponent must be a finite number >= 1, got {g}")


def _check_positive(rho, name="rho"):
    arr = np.asarray(rho)
    if not np.all(np.isfinite(arr)) or np.any(arr <= 0.0):
        raise DomainError(f"{name} must be positive and finite, got {rho}")


def pressure(eos: Eos, rho):
    """
    Pressure p(rho) = rho**gamma.

    Parameters
    ----------
    eos : Eos
        The pressure law.
    rho : float or ndarray
        Density, > 0.

    Returns
    -------
    out : float or ndarray
        The pressure; strictly increasing in rho.
    """
    _check_positive(rho)
    return rho ** eos.gamma


def internal_energy(eos: Eos, rho):
    """
    Specific internal energy e(rho) satisfying p(r) = r**2 * e'(r).

    Returns rho**(gamma-1)/(gamma-1) for gamma > 1 and log(rho) for
    gamma = 1.
    """
    _check_positive(rho)
    g = eos.gamma
    if g == 1.0:
        return np.log(rho)
    return rho ** (g - 1.0) / (g - 1.0)


def p_dissipation(eos: Eos, r, s):
    """
    Interface dissipation functional

        P(r, s) = p(r) + p(s) - 2*r*s*(e(r) - e(s))/(r - s).

    Symmetric in (r, s) and strictly positive for 0 < r != s when
    gamma >= 1.  The diagonal r = s is a removable singularity that we
    do not evaluate.

    Parameters
    ----------
    eos : Eos
    r, s : float or ndarray
        Densities, > 0, r != s elementwise.

    Returns
    -------
    out : float or ndarray
    """
    _check_positive(r, "r")
    _check_positive(s, "s")
    if np.any(np.asarray(r) == np.asarray(s)):
        raise DomainError("p_dissipation requires r != s (diagonal not evaluated)")
    num = internal_energy(eos, r) - internal_energy(eos, s)
    return pressure(eos, r) + pressure(eos, s) - 2.0 * r * s * num / (r - s)


def sound_speed(eos: Eos, rho):
    """Sound speed c(rho) = sqrt(p'(rho)) = sqrt(gamma) * rho**((gamma-1)/2)."""
    _check_positive(rho)
    g = eos.gamma
    return np.sqrt(g) * rho ** (0.5 * (g - 1.0))


def rarefaction_integral(eos: Eos, rho):
    """
    Antiderivative of c(s)/s, used by the rarefaction branches of the
    wave curves.

    For gamma > 1 this is (2*sqrt(gamma)/(gamma-1)) * rho**((gamma-1)/2),
    normalized to vanish as rho -> 0.  For gamma = 1 it is log(rho)
    (no finite normalization at 0 exists; the vacuum test accounts for
    the divergence).

    For differences of two of these values use rarefaction_difference:
    the 2/(gamma-1) prefactor grows without bound as gamma -> 1+, and
    subtracting two near-equal huge values wipes out the significand.
    """
    _check_positive(rho)
    g = eos.gamma
    if g == 1.0:
        return np.log(rho)
    return 2.0 * np.sqrt(g) / (g - 1.0) * rho ** (0.5 * (g - 1.0))


def rarefaction_difference(eos: Eos, rho_a, rho_b):
    """
    rarefaction_integral(rho_a) - rarefaction_integral(rho_b), computed
    without the large-constant cancellation.

    Writing rho**m = 1 + expm1(m*log(rho)) with m = (gamma-1)/2 lets
    the two leading 1s cancel exactly, so the result stays accurate
    arbitrarily close to gamma = 1 (where the naive difference is
    quantized at the ulp of 2/(gamma-1)).
    """
    _check_positive(rho_a, "rho_a")
    _check_positive(rho_b, "rho_b")
    g = eos.gamma
    if g == 1.0:
        return np.log(rho_a) - np.log(rho_b)
    m = 0.5 * (g - 1.0)
    return (2.0 * np.sqrt(g) / (g - 1.0)
            * (np.expm1(m * np.log(rho_a)) - np.expm1(m * np.log(rho_b))))
