"""Closed-form and approximate risk differences between the identity estimator
and the shrinkage family, plus the |X|^2 mean identity.

The exact risk improvement of shrinking by c/|X|^2 is

    Delta = 2 * E[1/|X|^2] * (c(p-2) - c^2/2),

positive for every theta exactly when 0 < c < 2(p-2).  The cheap approximation
replaces E[1/|X|^2] by 1/(|theta|^2 + p).
"""

from __future__ import annotations

from dataclasses import dataclass

from .estimators import EstimatorSpec, Kind
from .special import SeriesControl, inv_noncentral_chisq_mean

__all__ = [
    "RiskDelta",
    "risk_delta_exact",
    "risk_delta_approx",
    "risk_exact",
    "norm_sq_mean",
    "dominance_quadratic",
]


@dataclass(frozen=True)
class RiskDelta:
    exact: float
    approx: float
    p: int
    theta_norm: float
    c: float


def dominance_quadratic(p, c) -> float:
    """The c-quadratic c(p-2) - c^2/2 shared by the exact and approximate routes."""
    return c * (p - 2) - c * c / 2.0


def risk_delta_exact(
    p: int, theta_norm: float, c: float, ctl: SeriesControl = SeriesControl()
) -> float:
    """Exact risk improvement of the c-shrinkage estimator over the identity."""
    if p <= 2:
        raise ValueError(f"exact risk difference requires p >= 3, got p={p}")
    inv_mom = inv_noncentral_chisq_mean(p, theta_norm * theta_norm, ctl)
    return 2.0 * inv_mom * dominance_quadratic(p, c)


def risk_delta_approx(p: int, theta_norm: float, c: float) -> float:
    """Approximate risk improvement 2/(|theta|^2 + p) * (c(p-2) - c^2/2)."""
    if p < 1:
        raise ValueError(f"dimension must be >= 1, got p={p}")
    return 2.0 / (theta_norm * theta_norm + p) * dominance_quadratic(p, c)


def risk_delta(
    p: int, theta_norm: float, c: float, ctl: SeriesControl = SeriesControl()
) -> RiskDelta:
    return RiskDelta(
        exact=risk_delta_exact(p, theta_norm, c, ctl),
        approx=risk_delta_approx(p, theta_norm, c),
        p=p,
        theta_norm=theta_norm,
        c=c,
    )


def risk_exact(
    p: int,
    theta_norm: float,
    spec: EstimatorSpec,
    ctl: SeriesControl = SeriesControl(),
) -> float:
    """Closed-form risk: p for the identity, p - Delta for the c-shrinkage family.

    Only Identity and ShrinkC have closed forms here; ShrinkCa and the NGO tag
    are rejected (the NGO estimator itself is reachable as ShrinkC with
    c = p - 1; ShrinkCa risk is available only by Monte Carlo).
    """
    if spec.kind is Kind.IDENTITY:
        return float(p)
    if spec.kind is Kind.SHRINK_C:
        return p - risk_delta_exact(p, theta_norm, spec.c, ctl)
    raise ValueError(
        f"no closed-form risk for kind {spec.kind.value}; use Monte Carlo "
        "(NGO is ShrinkC with c = p - 1)"
    )


def norm_sq_mean(p: int, theta_norm: float) -> float:
    """E|X|^2 = |theta|^2 + p."""
    if p < 1:
        raise ValueError(f"dimension must be >= 1, got p={p}")
    return theta_norm * theta_norm + p
