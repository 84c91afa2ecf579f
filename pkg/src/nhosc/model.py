"""General non-Hermitian quadratic oscillator: builder, variational frequency,
regime classification and the analytic reference spectrum."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .basis import (
    BasisSpec,
    OperatorMatrix,
    TransformParams,
    transformed_momentum,
    transformed_position,
)

__all__ = [
    "HamiltonianSpec",
    "VariationalResult",
    "Regime",
    "RegimeReport",
    "build_hamiltonian",
    "diagonal_expectation",
    "variational_frequency",
    "analytic_level",
    "classify_regime",
]


@dataclass(frozen=True)
class HamiltonianSpec:
    """Parameter bundle for the quadratic family C [A^2 y^2 + B^2 z^2]."""

    params: TransformParams
    basis: BasisSpec
    norm_c: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "norm_c", self.params.norm_c)


@dataclass(frozen=True)
class VariationalResult:
    """Oscillation frequency minimizing the diagonal expectation.

    w_v is None when the ratio (B^2 - L^2 A^2) / (A^2 - R^2 B^2) is not
    positive (no stationary positive frequency exists).
    """

    w_v: float | None
    numerator: float
    denominator: float


class Regime(Enum):
    REAL_SPECTRUM = "RealSpectrum"
    BROKEN = "Broken"


@dataclass(frozen=True)
class RegimeReport:
    """Expansion coefficients of the quadratic family and the reality regime.

    The Hamiltonian expands to a p^2 + b x^2 + i c (xp + px) with
    a = C(A^2 - R^2 B^2), b = C(B^2 - L^2 A^2), c = C(L A^2 + R B^2);
    the spectrum is guaranteed real when both a and b are positive.
    ab_plus_csq records the invariant combination a*b + c^2 = (A*B)^2.
    """

    coef_p2: float
    coef_x2: float
    coef_cross: float
    regime: Regime
    ab_plus_csq: float


def build_hamiltonian(spec: HamiltonianSpec) -> OperatorMatrix:
    """Assemble H = C (A^2 y^2 + B^2 z^2) in the truncated basis.

    y is purely imaginary and z purely real for real parameters, so the
    result is exactly real (realness_flag set) despite the complex
    intermediates.
    """
    params = spec.params
    y = transformed_momentum(spec.basis, params).entries
    z = transformed_position(spec.basis, params).entries
    h = spec.norm_c * (params.a_coef**2 * (y @ y) + params.b_coef**2 * (z @ z))
    return OperatorMatrix(h)


def diagonal_expectation(spec: HamiltonianSpec, level: int, trial_freq: float) -> float:
    """Diagonal entry (level, level) of the Hamiltonian built at basis frequency trial_freq.

    For interior levels this equals C[(A^2-R^2B^2)(n+1/2)w + (B^2-L^2A^2)(n+1/2)/w];
    the cross term contributes nothing on the diagonal.
    """
    if not 0 <= level < spec.basis.n_dim:
        raise IndexError(f"level {level} outside basis of dimension {spec.basis.n_dim}")
    basis = BasisSpec(n_dim=spec.basis.n_dim, freq=trial_freq, scale=spec.basis.scale)
    h = build_hamiltonian(HamiltonianSpec(params=spec.params, basis=basis))
    return float(h.entries[level, level].real)


def variational_frequency(params: TransformParams) -> VariationalResult:
    """Stationary basis frequency sqrt((B^2 - L^2 A^2) / (A^2 - R^2 B^2))."""
    num = params.b_coef**2 - params.l_coef**2 * params.a_coef**2
    den = params.a_coef**2 - params.r_coef**2 * params.b_coef**2
    if den == 0.0 or num / den <= 0.0:
        return VariationalResult(w_v=None, numerator=num, denominator=den)
    return VariationalResult(w_v=math.sqrt(num / den), numerator=num, denominator=den)


def classify_regime(params: TransformParams) -> RegimeReport:
    """Expand the quadratic family and classify reality of its spectrum."""
    c_norm = params.norm_c
    a2 = params.a_coef**2
    b2 = params.b_coef**2
    coef_p2 = c_norm * (a2 - params.r_coef**2 * b2)
    coef_x2 = c_norm * (b2 - params.l_coef**2 * a2)
    coef_cross = c_norm * (params.l_coef * a2 + params.r_coef * b2)
    regime = Regime.REAL_SPECTRUM if coef_p2 > 0.0 and coef_x2 > 0.0 else Regime.BROKEN
    return RegimeReport(
        coef_p2=coef_p2,
        coef_x2=coef_x2,
        coef_cross=coef_cross,
        regime=regime,
        ab_plus_csq=coef_p2 * coef_x2 + coef_cross**2,
    )


def analytic_level(params: TransformParams, level: int) -> float:
    """Reference eigenvalue (2n+1) A B of the equivalent Hermitian oscillator.

    Only defined in the real-spectrum regime; raises otherwise.
    """
    if level < 0:
        raise ValueError(f"level must be nonnegative, got {level}")
    report = classify_regime(params)
    if report.regime is not Regime.REAL_SPECTRUM:
        raise ValueError("no real analytic spectrum in the broken regime")
    return (2 * level + 1) * params.a_coef * params.b_coef
