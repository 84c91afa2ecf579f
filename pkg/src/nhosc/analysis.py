"""Isospectrality reports against the analytic reference, duality checks
and parameter sweeps over basis frequency and truncation size."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .basis import BasisSpec, TransformParams
from .eig import (
    EigensolverError,
    SortOrder,
    classify,
    eigenvalues,
    real_mask,
    sort_spectrum,
)
from .model import HamiltonianSpec, Regime, build_hamiltonian, classify_regime

__all__ = [
    "Remark",
    "ReportRow",
    "IsospectralReport",
    "Axis",
    "SweepPoint",
    "SweepResult",
    "isospectral_report",
    "duality_check",
    "dual_params",
    "sweep_frequency",
    "sweep_truncation",
]

DEFAULT_REPORT_TOL = 1e-3


class Remark(Enum):
    ISO = "Iso"
    NO_ISO = "NoIso"


@dataclass(frozen=True)
class ReportRow:
    level: int
    epsilon: float
    computed: complex
    abs_dev: float
    remark: Remark


@dataclass(frozen=True)
class IsospectralReport:
    """Level-by-level comparison of the computed spectrum with (2n+1)AB.

    Rows are aligned by sorted index (real part, then imaginary part),
    so a conjugate pair occupies two consecutive levels.  A row is Iso
    only if the value classifies as real and sits within report_tol of
    the reference.
    """

    rows: list[ReportRow]
    first_deviation_index: int | None
    n_complex_pairs: int
    params: TransformParams
    basis: BasisSpec
    report_tol: float


class Axis(Enum):
    BASIS_FREQUENCY = "BasisFrequency"
    TRUNCATION_SIZE = "TruncationSize"


@dataclass(frozen=True)
class SweepPoint:
    axis_value: float
    n_real: int
    n_complex_pairs: int
    first_deviation_index: int | None
    max_abs_dev_below_first_deviation: float


@dataclass(frozen=True)
class SweepResult:
    axis: Axis
    points: list[SweepPoint]
    failures: list[tuple[float, str]]


def isospectral_report(
    params: TransformParams,
    basis: BasisSpec,
    report_tol: float = DEFAULT_REPORT_TOL,
) -> IsospectralReport:
    """Build, solve and compare against the analytic reference levels."""
    regime = classify_regime(params)
    if regime.regime is not Regime.REAL_SPECTRUM:
        raise ValueError("isospectral report undefined in the broken regime")
    h = build_hamiltonian(HamiltonianSpec(params=params, basis=basis))
    spec = sort_spectrum(eigenvalues(h), SortOrder.RE_THEN_IM)
    classified = classify(spec)
    is_real = real_mask(spec.values, spec.classify_tol, 1e-10)
    ab = params.a_coef * params.b_coef
    rows = []
    first_dev = None
    for n, v in enumerate(spec.values):
        eps_n = (2 * n + 1) * ab
        dev = abs(v - eps_n)
        remark = Remark.ISO if dev <= report_tol and is_real[n] else Remark.NO_ISO
        if remark is Remark.NO_ISO and first_dev is None:
            first_dev = n
        rows.append(
            ReportRow(level=n, epsilon=eps_n, computed=complex(v), abs_dev=float(dev), remark=remark)
        )
    return IsospectralReport(
        rows=rows,
        first_deviation_index=first_dev,
        n_complex_pairs=classified.n_complex,
        params=params,
        basis=basis,
        report_tol=report_tol,
    )


def dual_params(params: TransformParams) -> TransformParams:
    """Swap (L,R) and (A,B); together with w -> 1/w this transposes the Hamiltonian."""
    return TransformParams(
        l_coef=params.r_coef,
        r_coef=params.l_coef,
        a_coef=params.b_coef,
        b_coef=params.a_coef,
    )


def duality_check(params: TransformParams, basis: BasisSpec) -> float:
    """Max eigenvalue distance between a configuration and its swapped dual.

    The dual runs at basis frequency 1/w; both spectra are sorted by
    (Re, Im) and compared pairwise, giving a Hausdorff-style bound on
    the multiset distance.  The dual matrix is a transpose up to a
    diagonal unitary, so the distance is solver noise times the
    eigenvalue conditioning.
    """
    h_a = build_hamiltonian(HamiltonianSpec(params=params, basis=basis))
    dual_basis = BasisSpec(n_dim=basis.n_dim, freq=1.0 / basis.freq, scale=basis.scale)
    h_b = build_hamiltonian(HamiltonianSpec(params=dual_params(params), basis=dual_basis))
    ev_a = sort_spectrum(eigenvalues(h_a), SortOrder.RE_THEN_IM).values
    ev_b = sort_spectrum(eigenvalues(h_b), SortOrder.RE_THEN_IM).values
    return float(np.abs(ev_a - ev_b).max())


def _summary_point(report: IsospectralReport, axis_value: float) -> SweepPoint:
    cutoff = report.first_deviation_index
    below = report.rows if cutoff is None else report.rows[:cutoff]
    max_dev = max((r.abs_dev for r in below), default=0.0)
    n_pairs = report.n_complex_pairs
    return SweepPoint(
        axis_value=axis_value,
        n_real=len(report.rows) - 2 * n_pairs,
        n_complex_pairs=n_pairs,
        first_deviation_index=cutoff,
        max_abs_dev_below_first_deviation=max_dev,
    )


def sweep_frequency(
    params: TransformParams,
    n_dim: int,
    w_values: list[float],
    report_tol: float = DEFAULT_REPORT_TOL,
    scale: float = 1.0,
) -> SweepResult:
    """One isospectral summary per basis frequency; per-point failures are recorded."""
    if any(w <= 0.0 for w in w_values):
        raise ValueError("basis frequencies must be positive")
    points: list[SweepPoint] = []
    failures: list[tuple[float, str]] = []
    for w in sorted(w_values):
        try:
            report = isospectral_report(
                params, BasisSpec(n_dim=n_dim, freq=w, scale=scale), report_tol
            )
            points.append(_summary_point(report, w))
        except (EigensolverError, ValueError) as exc:
            failures.append((w, str(exc)))
    return SweepResult(axis=Axis.BASIS_FREQUENCY, points=points, failures=failures)


def sweep_truncation(
    params: TransformParams,
    w: float,
    n_values: list[int],
    report_tol: float = DEFAULT_REPORT_TOL,
    scale: float = 1.0,
) -> SweepResult:
    """One isospectral summary per truncation size N."""
    if any(n < 2 for n in n_values):
        raise ValueError("truncation sizes must be >= 2")
    points: list[SweepPoint] = []
    failures: list[tuple[float, str]] = []
    for n in sorted(n_values):
        try:
            report = isospectral_report(
                params, BasisSpec(n_dim=n, freq=w, scale=scale), report_tol
            )
            points.append(_summary_point(report, float(n)))
        except (EigensolverError, ValueError) as exc:
            failures.append((float(n), str(exc)))
    return SweepResult(axis=Axis.TRUNCATION_SIZE, points=points, failures=failures)
