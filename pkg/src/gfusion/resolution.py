"""Pair frame operators, resolutions of the identity, and the associated
bound and perturbation checks.

The pair operator for two controlled Bessel families (L under (t,t), G under
(u,u)) is

    S_pair = sum_j v_j w_j  t* P_j L_j* G_j Q_j u

with P_j, Q_j the projectors of the two subspace families.  Its adjoint is
the swapped construction; coercivity (S_swapped >= m I with m > 0) or
proximity to the identity force frame properties on the inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import tolerances as tol
from .errors import (
    CodomainMismatch,
    HypothesisFailed,
    InvalidParameters,
    ItemCountMismatch,
    NotAFrame,
    NotBessel,
    NotPositive,
    ResolutionFailed,
)
from .frames import ControlPair, FrameFamily, controlled_frame_bounds, frame_operator
from .linalg import as_operator, opnorm, projector, require_invertible


@dataclass(frozen=True)
class PairOperator:
    matrix: np.ndarray
    left_family: FrameFamily
    right_family: FrameFamily
    left_control: np.ndarray
    right_control: np.ndarray


@dataclass(frozen=True)
class ResolutionReport:
    residual: float
    term_count: int
    converged: bool


def pair_frame_operator(
    famL: FrameFamily, t, famG: FrameFamily, u
) -> PairOperator:
    """Mixed frame operator for a pair of controlled Bessel families."""
    if len(famL) != len(famG):
        raise ItemCountMismatch(f"{len(famL)} vs {len(famG)} items")
    if famL.ambient_dim != famG.ambient_dim:
        raise ItemCountMismatch("families live on different ambient spaces")
    t = require_invertible(as_operator(t), "left control")
    u = require_invertible(as_operator(u), "right control")
    n = famL.ambient_dim
    s = np.zeros((n, n), dtype=complex)
    for j, ((subL, lamL, wL), (subG, lamG, wG)) in enumerate(
        zip(famL.items, famG.items)
    ):
        if lamL.shape[0] != lamG.shape[0]:
            raise CodomainMismatch(
                f"item {j}: codomain dims {lamL.shape[0]} != {lamG.shape[0]}"
            )
        term = (
            t.conj().T
            @ projector(subL)
            @ lamL.conj().T
            @ lamG
            @ projector(subG)
            @ u
        )
        s += wL * wG * term
    return PairOperator(s, famL, famG, t, u)


def swapped(pair: PairOperator) -> PairOperator:
    """The pair operator with the two families (and controls) exchanged."""
    return pair_frame_operator(
        pair.right_family, pair.right_control, pair.left_family, pair.left_control
    )


def _resolution_report(terms, n: int) -> ResolutionReport:
    total = np.zeros((n, n), dtype=complex)
    for term in terms:
        total += term
    residual = opnorm(total - np.eye(n)) / math.sqrt(n)
    return ResolutionReport(residual, len(terms), residual <= tol.TOL_RESOLUTION)


def canonical_resolutions(fam: FrameFamily, cp: ControlPair):
    """The two canonical identity resolutions of a controlled frame.

    Term families {v_j^2 G_j S^{-1}} and {v_j^2 S^{-1} G_j} with G_j the
    per-item cross operators; both must sum to the identity.
    """
    report = controlled_frame_bounds(fam, cp)
    if not report.is_frame:
        raise NotAFrame("frame operator is not invertible at threshold")
    s_inv = np.linalg.inv(report.s_c)
    right_terms = []
    left_terms = []
    for sub, lam, w in fam.items:
        lp = lam @ projector(sub)
        g = (w * w) * (cp.t.conj().T @ lp.conj().T @ lp @ cp.u)
        right_terms.append(g @ s_inv)
        left_terms.append(s_inv @ g)
    n = fam.ambient_dim
    return (
        right_terms,
        left_terms,
        _resolution_report(right_terms, n),
        _resolution_report(left_terms, n),
    )


@dataclass(frozen=True)
class ResolutionBoundsReport:
    resolution: ResolutionReport
    lower: float
    upper: float
    predicted_lower: float
    predicted_upper: float
    certified: bool
    commutation_residual: float


def inverse_commutation_check(fam: FrameFamily, cp: ControlPair) -> ResolutionBoundsReport:
    """Resolution built from the inverse frame operator, with its sandwich.

    Requires S^{-1} to commute with both controls; the modified frame sum
    sum_j v_j^2 <L_j P_j S^{-1} u f, L_j P_j S^{-1} t f> then has spectral
    extremes inside [A/B^2, B/A^2] for measured frame bounds (A, B).
    """
    report = controlled_frame_bounds(fam, cp)
    if not report.is_frame:
        raise NotAFrame("input is not a controlled frame")
    s_inv = np.linalg.inv(report.s_c)
    scale = max(opnorm(s_inv), 1e-300)
    comm = max(
        opnorm(s_inv @ cp.t - cp.t @ s_inv) / (scale * max(opnorm(cp.t), 1e-300)),
        opnorm(s_inv @ cp.u - cp.u @ s_inv) / (scale * max(opnorm(cp.u), 1e-300)),
    )
    if comm > tol.TOL_FACTOR:
        raise HypothesisFailed(
            f"inverse frame operator does not commute with controls "
            f"(residual {comm:.3e})",
            name="inverse_commutes_with_controls",
        )
    n = fam.ambient_dim
    m = np.zeros((n, n), dtype=complex)
    res_terms = []
    for sub, lam, w in fam.items:
        lp = lam @ projector(sub) @ s_inv
        m += (w * w) * (cp.t.conj().T @ lp.conj().T @ lp @ cp.u)
        res_terms.append(
            (w * w)
            * (cp.t.conj().T @ projector(sub) @ lam.conj().T @ lam
               @ projector(sub) @ s_inv @ cp.u)
        )
    resolution = _resolution_report(res_terms, n)
    a, b = report.bounds.lambda_min, report.bounds.lambda_max
    h = 0.5 * (m + m.conj().T)
    vals = np.linalg.eigvalsh(h)
    lower, upper = float(vals[0]), float(vals[-1])
    predicted_lower = a / (b * b)
    predicted_upper = b / (a * a)
    certified = (
        resolution.converged
        and lower >= predicted_lower - tol.TOL_FACTOR
        and upper <= predicted_upper + tol.TOL_FACTOR
    )
    return ResolutionBoundsReport(
        resolution, lower, upper, predicted_lower, predicted_upper, certified, comm
    )


@dataclass(frozen=True)
class BesselResolutionReport:
    lower: float
    upper: float
    is_frame: bool
    predicted_lower: float
    predicted_upper: float
    resolution_residual: float


def bessel_resolution_frame_check(fam: FrameFamily, t, u) -> BesselResolutionReport:
    """A (t,t)-controlled Bessel family whose mixed terms resolve the identity
    is a (u,u)-controlled frame with lower bound at least 1/B."""
    t = require_invertible(as_operator(t), "t")
    u = require_invertible(as_operator(u), "u")
    bessel = controlled_frame_bounds(fam, ControlPair(t, t))
    if not bessel.is_bessel:
        raise NotBessel("family is not a controlled Bessel sequence under (t, t)")
    b = bessel.bounds.lambda_max
    n = fam.ambient_dim
    terms = []
    for sub, lam, w in fam.items:
        lp = lam @ projector(sub)
        terms.append((w * w) * (t.conj().T @ lp.conj().T @ lp @ u))
    resolution = _resolution_report(terms, n)
    if not resolution.converged:
        raise ResolutionFailed(
            f"terms do not sum to the identity (residual {resolution.residual:.3e})"
        )
    out = controlled_frame_bounds(fam, ControlPair(u, u))
    lower, upper = out.bounds.lambda_min, out.bounds.lambda_max
    predicted_lower = 1.0 / b
    predicted_upper = b * opnorm(np.linalg.inv(t)) ** 2 * opnorm(u) ** 2
    ok = (
        out.is_frame
        and lower >= predicted_lower - tol.TOL_FACTOR
        and upper <= predicted_upper + tol.TOL_FACTOR
    )
    return BesselResolutionReport(
        lower, upper, ok, predicted_lower, predicted_upper, resolution.residual
    )


@dataclass(frozen=True)
class CoercivityReport:
    m: float
    predicted_lower: float
    measured_lower: float
    is_frame: bool


def coercive_pair_check(pair: PairOperator, gamma_bessel_bound: float) -> CoercivityReport:
    """If the swapped pair operator is coercive (>= m I, m > 0), the left
    family is a frame under its own control with lower bound >= m^2 / D,
    where D is the Bessel bound of the right family."""
    sw = swapped(pair).matrix
    h = 0.5 * (sw + sw.conj().T)
    m = float(np.linalg.eigvalsh(h)[0])
    if m <= 0:
        raise NotPositive(f"swapped pair operator is not coercive (m = {m:.3e})")
    predicted_lower = m * m / gamma_bessel_bound
    left = controlled_frame_bounds(
        pair.left_family, ControlPair(pair.left_control, pair.left_control)
    )
    measured_lower = left.bounds.lambda_min
    ok = left.is_frame and measured_lower >= predicted_lower - tol.TOL_FACTOR
    return CoercivityReport(m, predicted_lower, measured_lower, ok)


@dataclass(frozen=True)
class PerturbationReport:
    hyp_certified: bool
    lower_gamma: float
    lower_gamma_predicted: float
    lower_lambda: float | None
    lower_lambda_predicted: float | None
    worst_sample_slack: float


def perturbation_check(
    pair: PairOperator,
    lambda1: float,
    lambda2: float,
    d1: float,
    d2: float,
    trials: int = 200,
    seed: int = 0,
) -> PerturbationReport:
    """Near-identity perturbation criterion for the pair operator.

    Certifies ||f - S f|| <= lambda1 ||f|| + lambda2 ||S f|| via the
    sufficient spectral bound sigma_max(I - S) <= lambda1 + lambda2 *
    sigma_min(S), plus sampled verification on random unit vectors.  When
    certified, the right family is a frame under (u, u) with lower bound at
    least ((1 - lambda1) / (1 + lambda2))^2 / d1; with lambda2 == 0 the left
    family additionally gets lower bound (1 - lambda1)^2 / d2.
    """
    if not (lambda1 < 1):
        raise InvalidParameters(f"lambda1 must be < 1, got {lambda1}")
    if not (lambda2 > -1):
        raise InvalidParameters(f"lambda2 must be > -1, got {lambda2}")
    s = pair.matrix
    n = s.shape[0]
    eye = np.eye(n)
    sv = np.linalg.svd(s, compute_uv=False)
    sigma_min = float(sv[-1]) if sv.size else 0.0
    gap = float(np.linalg.norm(eye - s, 2))
    spectral_ok = gap <= lambda1 + lambda2 * sigma_min + 1e-12

    rng = np.random.default_rng(seed)
    worst = math.inf
    for _ in range(trials):
        f = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        f /= np.linalg.norm(f)
        sf = s @ f
        slack = (
            lambda1 * 1.0
            + lambda2 * float(np.linalg.norm(sf))
            - float(np.linalg.norm(f - sf))
        )
        worst = min(worst, slack)
    sampled_ok = worst >= -1e-12
    if not sampled_ok:
        raise HypothesisFailed(
            f"a sampled vector violates the perturbation inequality "
            f"(slack {worst:.3e})",
            name="perturbation_inequality",
        )
    certified = spectral_ok

    gamma_bounds = controlled_frame_bounds(
        pair.right_family, ControlPair(pair.right_control, pair.right_control)
    )
    lower_gamma = gamma_bounds.bounds.lambda_min
    lower_gamma_predicted = ((1.0 - lambda1) / (1.0 + lambda2)) ** 2 / d1

    lower_lambda = None
    lower_lambda_predicted = None
    if lambda2 == 0:
        if not (0 <= lambda1 < 1):
            raise InvalidParameters(
                f"one-parameter path requires lambda1 in [0, 1), got {lambda1}"
            )
        lam_bounds = controlled_frame_bounds(
            pair.left_family, ControlPair(pair.left_control, pair.left_control)
        )
        lower_lambda = lam_bounds.bounds.lambda_min
        lower_lambda_predicted = (1.0 - lambda1) ** 2 / d2

    return PerturbationReport(
        certified,
        lower_gamma,
        lower_gamma_predicted,
        lower_lambda,
        lower_lambda_predicted,
        worst,
    )
