"""Middle-wedge analysis: closed-form interface kinematics, the
admissibility window for the second slack variable, reconstruction of a
full piecewise-constant subsolution, and an independent verifier that
re-evaluates the complete interface system from scratch.

The kinematics are parameterized by the probed middle density rho_1,
which must lie strictly between the two initial densities.  Everything
here is pure and accepts vectorized rho_1 grids internally; the public
operations take scalars.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .eos import internal_energy, p_dissipation, pressure
from .errors import (
    ConstraintError,
    DegenerateDensityError,
    DomainError,
    NumericalError,
    VelocityGapError,
)
from .functionals import RiemannData, data_functionals

# Cross-check and self-check tolerances (relative, scale max(1, |value|)).
CROSS_CHECK_TOL = 1e-9
CONTINUITY_TOL = 1e-10


@dataclass(frozen=True)
class FanSubsolution:
    """Parameters of a piecewise-constant three-wedge subsolution.

    The middle wedge carries density rho_1, velocity (alpha, beta), a
    traceless symmetric matrix with diagonal (gamma_1, -gamma_1) and
    off-diagonal gamma_2, and the kinetic-energy bound C.  eps_1 and
    eps_2 are the two derived slack variables:

        eps_1 = C/2 - gamma_1 - beta**2
        eps_2 = C - alpha**2 - beta**2 - eps_1
    """

    nu_minus: float
    nu_plus: float
    rho_1: float
    alpha: float
    beta: float
    gamma_1: float
    gamma_2: float
    C: float
    eps_1: float
    eps_2: float


@dataclass(frozen=True)
class FeasibilityRecord:
    """Diagnostics for one probed middle density.

    eps2_lower / eps2_upper bound the half-line intersection for the
    second slack variable (infinities allowed); feasible means eps_1 > 0
    and the window meets (0, inf) with room strictly inside.
    """

    rho_1: float
    nu_minus: float
    nu_plus: float
    beta: float
    eps_1: float
    sign_beta_minus: int
    sign_plus_beta: int
    eps2_lower: float
    eps2_upper: float
    feasible: bool


@dataclass(frozen=True)
class VerificationReport:
    """Residuals of the six interface balances and the margins of the
    five inequalities, evaluated directly from a FanSubsolution."""

    equality_residuals: dict
    inequality_margins: dict
    equality_tol: float
    passed: bool

    @property
    def max_equality_residual(self) -> float:
        return max(self.equality_residuals.values())

    @property
    def min_inequality_margin(self) -> float:
        return min(self.inequality_margins.values())


@dataclass(frozen=True)
class _GridWindow:
    """Vectorized kinematics + window over a rho_1 grid (internal)."""

    rho_1: np.ndarray
    nu_minus: np.ndarray
    nu_plus: np.ndarray
    beta: np.ndarray
    eps_1: np.ndarray
    a_left: np.ndarray
    b_left: np.ndarray
    a_right: np.ndarray
    b_right: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    parity_ok: np.ndarray
    feasible: np.ndarray


def _require_subsolution_data(data: RiemannData):
    """Common preconditions of the middle-wedge analysis."""
    if data.rho_minus == data.rho_plus:
        raise DegenerateDensityError(
            "equal initial densities: no middle density interval to probe")
    if data.v_minus[0] != data.v_plus[0]:
        raise DomainError(
            "the analysis assumes equal first velocity components, got "
            f"{data.v_minus[0]} and {data.v_plus[0]}")
    f = data_functionals(data)
    if f.B >= 0.0:
        raise VelocityGapError(
            f"B = {f.B} >= 0: the velocity gap is at or beyond the "
            "two-shock bound, interface speeds are not both real")
    return f


def _check_rho1(data: RiemannData, rho_1: np.ndarray):
    lo = min(data.rho_minus, data.rho_plus)
    hi = max(data.rho_minus, data.rho_plus)
    if np.any(rho_1 <= lo) or np.any(rho_1 >= hi):
        raise DomainError(
            f"rho_1 must lie strictly inside ({lo}, {hi})")


def _kinematics_arrays(data: RiemannData, rho_1: np.ndarray):
    """Interface speeds, middle velocity and first slack on a rho_1 grid.

    The first slack is evaluated in its K/L square-root form and
    cross-checked against the independent interface-speed form; the two
    continuity balances are re-evaluated as self-checks.  Disagreement
    beyond the pinned tolerances aborts with diagnostics.
    """
    f = _require_subsolution_data(data)
    _check_rho1(data, rho_1)
    rm, rp = data.rho_minus, data.rho_plus
    vm2, vp2 = data.v_minus[1], data.v_plus[1]
    pm, pp = pressure(data.eos, rm), pressure(data.eos, rp)
    p1 = pressure(data.eos, rho_1)
    R, A = f.R, f.A
    sqrt_nB = math.sqrt(-f.B)

    if R < 0.0:
        nu_minus = A / R + (sqrt_nB / R) * np.sqrt((rp - rho_1) / (rho_1 - rm))
        nu_plus = A / R - (sqrt_nB / R) * np.sqrt((rho_1 - rm) / (rp - rho_1))
        beta = (rp * vp2 / rho_1 - (rp - rho_1) * A / (R * rho_1)
                + (sqrt_nB / (R * rho_1)) * np.sqrt((rho_1 - rm) * (rp - rho_1)))
        eps_1 = ((pp - p1) / rho_1
                 - (rp / rho_1) * (f.L * np.sqrt(1.0 - rm / rho_1)
                                   - f.K * np.sqrt(rp / rho_1 - 1.0)) ** 2)
        eps_1_alt = ((pp - p1) / rho_1
                     - rp * (rp - rho_1) / rho_1 ** 2 * (nu_plus - vp2) ** 2)
    else:
        nu_minus = A / R - (sqrt_nB / R) * np.sqrt((rho_1 - rp) / (rm - rho_1))
        nu_plus = A / R + (sqrt_nB / R) * np.sqrt((rm - rho_1) / (rho_1 - rp))
        beta = (rm * vm2 / rho_1 - (rm - rho_1) * A / (R * rho_1)
                + (sqrt_nB / (R * rho_1)) * np.sqrt((rm - rho_1) * (rho_1 - rp)))
        eps_1 = ((pm - p1) / rho_1
                 - (rm / rho_1) * (f.L * np.sqrt(1.0 - rp / rho_1)
                                   - f.K * np.sqrt(rm / rho_1 - 1.0)) ** 2)
        eps_1_alt = ((pm - p1) / rho_1
                     - rm * (rm - rho_1) / rho_1 ** 2 * (nu_minus - vm2) ** 2)

    scale = np.maximum(1.0, np.abs(eps_1))
    worst = np.max(np.abs(eps_1 - eps_1_alt) / scale)
    if not worst <= CROSS_CHECK_TOL:
        i = int(np.argmax(np.abs(eps_1 - eps_1_alt) / scale))
        raise NumericalError(
            "first-slack cross-check failed: square-root form and "
            f"interface-speed form disagree by {worst:.3e} (relative) at "
            f"rho_1 = {np.atleast_1d(rho_1)[i]}")

    for name, nu, lhs_rho, lhs_mom in (
            ("left", nu_minus, rm - rho_1, rm * vm2 - rho_1 * beta),
            ("right", nu_plus, rho_1 - rp, rho_1 * beta - rp * vp2)):
        lhs = nu * lhs_rho
        denom = np.maximum(1.0, np.maximum(np.abs(lhs), np.abs(lhs_mom)))
        res = np.max(np.abs(lhs - lhs_mom) / denom)
        if not res <= CONTINUITY_TOL:
            raise NumericalError(
                f"{name} continuity self-check failed: residual {res:.3e}")

    if np.any(nu_minus >= nu_plus):
        raise NumericalError("interface speed ordering violated on the grid")
    return nu_minus, nu_plus, beta, eps_1


def _window_arrays(data: RiemannData, rho_1: np.ndarray) -> _GridWindow:
    """Treat both interface energy inequalities as affine constraints
    a*eps_2 <= b and intersect the resulting half-lines with (0, inf).

    The direction of each bound follows the sign of its coefficient, so
    no sign regime is assumed for beta - v_minus2 or v_plus2 - beta; a
    vanishing coefficient degenerates the constraint to the sign test
    b >= 0.
    """
    nu_minus, nu_plus, beta, eps_1 = _kinematics_arrays(data, rho_1)
    rm, rp = data.rho_minus, data.rho_plus
    vm2, vp2 = data.v_minus[1], data.v_plus[1]
    eos = data.eos

    P_left = p_dissipation(eos, rm, rho_1)
    P_right = p_dissipation(eos, rho_1, rp)
    bmv = beta - vm2
    vpb = vp2 - beta

    a_left = rm * rho_1 * bmv / (rm - rho_1)
    b_left = eps_1 * rho_1 * (vm2 + beta) - eps_1 * a_left - bmv * P_left
    a_right = -rho_1 * rp * vpb / (rho_1 - rp)
    b_right = (-eps_1 * rho_1 * (vp2 + beta)
               + eps_1 * rho_1 * rp * vpb / (rho_1 - rp) - vpb * P_right)

    lower = np.full_like(np.asarray(rho_1, dtype=float), -np.inf)
    upper = np.full_like(lower, np.inf)
    parity_ok = np.ones_like(lower, dtype=bool)
    with np.errstate(divide="ignore", invalid="ignore"):
        for a, b in ((a_left, b_left), (a_right, b_right)):
            q = np.where(a != 0.0, b / np.where(a != 0.0, a, 1.0), 0.0)
            upper = np.where(a > 0.0, np.minimum(upper, q), upper)
            lower = np.where(a < 0.0, np.maximum(lower, q), lower)
            parity_ok &= np.where(a == 0.0, b >= 0.0, True)

    feasible = parity_ok & (eps_1 > 0.0) & (np.maximum(lower, 0.0) < upper)
    return _GridWindow(rho_1=np.asarray(rho_1, dtype=float),
                       nu_minus=nu_minus, nu_plus=nu_plus, beta=beta,
                       eps_1=eps_1, a_left=a_left, b_left=b_left,
                       a_right=a_right, b_right=b_right,
                       lower=lower, upper=upper,
                       parity_ok=parity_ok, feasible=feasible)


def kinematics(data: RiemannData, rho_1: float):
    """
    Closed-form interface speeds, middle velocity and first slack at a
    probed middle density.

    Parameters
    ----------
    data : RiemannData
        Initial data with distinct densities, equal first velocity
        components and a velocity gap strictly below the two-shock
        bound.
    rho_1 : float
        Probed middle density, strictly between the initial densities.

    Returns
    -------
    (nu_minus, nu_plus, beta, eps_1) : tuple of float
        nu_minus < nu_plus always.
    """
    arr = np.asarray([float(rho_1)])
    nu_minus, nu_plus, beta, eps_1 = _kinematics_arrays(data, arr)
    return float(nu_minus[0]), float(nu_plus[0]), float(beta[0]), float(eps_1[0])


def eps2_window(data: RiemannData, rho_1: float) -> FeasibilityRecord:
    """
    Admissible range for the second slack variable at one middle density.

    Returns a FeasibilityRecord whose bounds may be infinite; feasible
    is True when eps_1 > 0 and the window intersected with (0, inf) has
    nonempty interior.
    """
    w = _window_arrays(data, np.asarray([float(rho_1)]))
    vm2, vp2 = data.v_minus[1], data.v_plus[1]
    beta = float(w.beta[0])
    return FeasibilityRecord(
        rho_1=float(rho_1),
        nu_minus=float(w.nu_minus[0]),
        nu_plus=float(w.nu_plus[0]),
        beta=beta,
        eps_1=float(w.eps_1[0]),
        sign_beta_minus=int(np.sign(beta - vm2)),
        sign_plus_beta=int(np.sign(vp2 - beta)),
        eps2_lower=float(w.lower[0]),
        eps2_upper=float(w.upper[0]),
        feasible=bool(w.feasible[0]),
    )


def reconstruct(data: RiemannData, rho_1: float, eps_2: float, alpha: float,
                check: bool = True) -> FanSubsolution:
    """
    Assemble the full subsolution from a feasible (rho_1, eps_2, alpha).

    alpha must equal the common first velocity component of the data.
    With check=True (default) the slack positivity and both interface
    energy constraints are enforced, naming the violated condition;
    check=False skips that and is meant for deliberately building
    invalid inputs to feed the verifier.
    """
    if alpha != data.v_minus[0]:
        raise DomainError(
            f"alpha = {alpha} must equal the common first velocity "
            f"component {data.v_minus[0]}")
    w = _window_arrays(data, np.asarray([float(rho_1)]))
    eps_1 = float(w.eps_1[0])
    if check:
        if not eps_1 > 0.0:
            raise ConstraintError(
                f"first slack condition violated: eps_1 = {eps_1} <= 0")
        if not eps_2 > 0.0:
            raise ConstraintError(
                f"second slack condition violated: eps_2 = {eps_2} <= 0")
        margin_left = float(w.b_left[0] - w.a_left[0] * eps_2)
        if not margin_left > 0.0:
            raise ConstraintError(
                "left interface energy inequality violated: "
                f"margin = {margin_left}")
        margin_right = float(w.b_right[0] - w.a_right[0] * eps_2)
        if not margin_right > 0.0:
            raise ConstraintError(
                "right interface energy inequality violated: "
                f"margin = {margin_right}")
    beta = float(w.beta[0])
    C = alpha ** 2 + beta ** 2 + eps_1 + eps_2
    gamma_1 = C / 2.0 - beta ** 2 - eps_1
    return FanSubsolution(
        nu_minus=float(w.nu_minus[0]), nu_plus=float(w.nu_plus[0]),
        rho_1=float(rho_1), alpha=float(alpha), beta=beta,
        gamma_1=gamma_1, gamma_2=float(alpha) * beta, C=C,
        eps_1=eps_1, eps_2=float(eps_2))


def _relative_residual(lhs: float, rhs: float) -> float:
    return abs(lhs - rhs) / max(1.0, abs(lhs), abs(rhs))


def verify_subsolution(data: RiemannData, sub: FanSubsolution,
                       equality_tol: float = 1e-9) -> VerificationReport:
    """
    Re-evaluate the complete interface system directly from the
    subsolution parameters.

    All six balance identities (mass and both momentum components on
    each interface) and all five inequalities (speed ordering, trace
    bound, determinant condition with its full mixed term, and the two
    interface energy inequalities) are computed from scratch; nothing is
    shared with the closed-form kinematics or window code, so this is an
    independent oracle for them.  Always returns a report; passed is
    True iff every equality residual is <= equality_tol (relative) and
    every inequality margin is strictly positive.
    """
    rm, rp = data.rho_minus, data.rho_plus
    vm1, vm2 = data.v_minus
    vp1, vp2 = data.v_plus
    eos = data.eos
    pm, pp, p1 = pressure(eos, rm), pressure(eos, rp), pressure(eos, sub.rho_1)
    em, ep, e1 = (internal_energy(eos, rm), internal_energy(eos, rp),
                  internal_energy(eos, sub.rho_1))
    nm, np_, r1 = sub.nu_minus, sub.nu_plus, sub.rho_1
    al, be, g1, g2, C = sub.alpha, sub.beta, sub.gamma_1, sub.gamma_2, sub.C

    residuals = {
        "cont_left": _relative_residual(
            nm * (rm - r1), rm * vm2 - r1 * be),
        "mom1_left": _relative_residual(
            nm * (rm * vm1 - r1 * al), rm * vm1 * vm2 - r1 * g2),
        "mom2_left": _relative_residual(
            nm * (rm * vm2 - r1 * be),
            rm * vm2 ** 2 + r1 * g1 + pm - p1 - r1 * C / 2.0),
        "cont_right": _relative_residual(
            np_ * (r1 - rp), r1 * be - rp * vp2),
        "mom1_right": _relative_residual(
            np_ * (r1 * al - rp * vp1), r1 * g2 - rp * vp1 * vp2),
        "mom2_right": _relative_residual(
            np_ * (r1 * be - rp * vp2),
            -r1 * g1 - rp * vp2 ** 2 + p1 - pp + r1 * C / 2.0),
    }

    vm_sq = vm1 ** 2 + vm2 ** 2
    vp_sq = vp1 ** 2 + vp2 ** 2
    energy_left_lhs = (nm * (rm * em - r1 * e1)
                       + nm * (rm * vm_sq / 2.0 - r1 * C / 2.0))
    energy_left_rhs = ((rm * em + pm) * vm2 - (r1 * e1 + p1) * be
                       + rm * vm2 * vm_sq / 2.0 - r1 * be * C / 2.0)
    energy_right_lhs = (np_ * (r1 * e1 - rp * ep)
                        + np_ * (r1 * C / 2.0 - rp * vp_sq / 2.0))
    energy_right_rhs = ((r1 * e1 + p1) * be - (rp * ep + pp) * vp2
                        + r1 * be * C / 2.0 - rp * vp2 * vp_sq / 2.0)

    margins = {
        "speed_order": np_ - nm,
        "trace": C - al ** 2 - be ** 2,
        "determinant": ((C / 2.0 - al ** 2 + g1) * (C / 2.0 - be ** 2 - g1)
                        - (g2 - al * be) ** 2),
        "energy_left": energy_left_rhs - energy_left_lhs,
        "energy_right": energy_right_rhs - energy_right_lhs,
    }

    passed = (max(residuals.values()) <= equality_tol
              and min(margins.values()) > 0.0)
    return VerificationReport(equality_residuals=residuals,
                              inequality_margins=margins,
                              equality_tol=equality_tol, passed=passed)


def epsilon1_sign_change(data: RiemannData) -> float:
    """
    The unique density at which the first slack changes sign from + to -
    while moving from the near-side initial density to the far side.

    Located by a bracketed root find between the square-root-expression
    zero (where the slack is provably positive) and the far endpoint
    (where it is negative), to 1e-10 relative tolerance.
    """
    f = _require_subsolution_data(data)
    if not f.u < 0.0:
        raise DomainError(
            "sign-change analysis requires v_plus2 < v_minus2 "
            f"(u = {f.u} >= 0)")

    far = data.rho_plus if f.R < 0.0 else data.rho_minus
    near = data.rho_minus if f.R < 0.0 else data.rho_plus
    span = abs(far - near)

    def slack(x):
        return float(_kinematics_arrays(data, np.asarray([x]))[3][0])

    lo = f.rho_tilde
    hi = far - 1e-12 * span if far > near else far + 1e-12 * span
    s_lo, s_hi = slack(lo), slack(hi)
    if not (s_lo > 0.0 and s_hi < 0.0):
        raise NumericalError(
            "sign-change bracketing failed: slack at the square-root zero "
            f"is {s_lo}, near the far endpoint {s_hi}")
    return float(brentq(slack, lo, hi, xtol=1e-300, rtol=1e-10))


def limit_quantities(rho_minus: float, rho_plus: float, v_plus2: float,
                     eos, rho_1: float):
    """
    Closed-form limits of the middle velocity, the first slack and the
    two window bounds as the velocity gap approaches the two-shock bound
    from below.

    Returns
    -------
    (beta_bar, eps1_bar, M1_bar, M2_bar) : tuple of float
        M1_bar is the limiting upper window bound, M2_bar the limiting
        lower bound, on either density ordering (the interface each one
        comes from swaps with the ordering).

    Notes
    -----
    The closed density interval is accepted: every quantity has a
    finite one-sided limit at rho_1 = rho_minus and rho_1 = rho_plus
    (the dissipation factor P(r, r) tends to 0 there, cancelling the
    vanishing density gap), and eps1_bar vanishes at both endpoints.
    """
    if rho_minus <= 0.0 or rho_plus <= 0.0:
        raise DomainError("densities must be positive")
    if rho_minus == rho_plus:
        raise DegenerateDensityError("equal initial densities")
    lo, hi = min(rho_minus, rho_plus), max(rho_minus, rho_plus)
    if not lo <= rho_1 <= hi:
        raise DomainError(f"rho_1 must lie in [{lo}, {hi}]")

    rm, rp, r1 = rho_minus, rho_plus, rho_1
    pm, pp, p1 = pressure(eos, rm), pressure(eos, rp), pressure(eos, r1)
    R = rm - rp
    T = (rp - rm) * (pp - pm) / (rp * rm)
    sqrt_T = math.sqrt(T)

    beta_bar = v_plus2 + rm * (r1 - rp) * sqrt_T / (R * r1)
    if R < 0.0:
        eps1_bar = (pp - p1) / r1 - rp * rm ** 2 * (rp - r1) * T / (r1 ** 2 * R ** 2)
    else:
        eps1_bar = (pm - p1) / r1 - rm * rp ** 2 * (rm - r1) * T / (r1 ** 2 * R ** 2)

    shared = eps1_bar * r1 / (rm * rp)
    # P(r, r) -> 0, so each dissipation term has removable limit 0 at
    # its own endpoint.
    left_P_term = (0.0 if r1 == rm else
                   (r1 - rm) / (r1 * rm) * p_dissipation(eos, rm, r1))
    right_P_term = (0.0 if r1 == rp else
                    -(rp - r1) / (rp * r1) * p_dissipation(eos, r1, rp))
    left_expr = left_P_term - shared * (2.0 * rm - rp + 2.0 * R * v_plus2 / sqrt_T)
    right_expr = right_P_term - shared * (rm + 2.0 * R * v_plus2 / sqrt_T)
    if R < 0.0:
        return beta_bar, eps1_bar, left_expr, right_expr
    return beta_bar, eps1_bar, right_expr, left_expr
