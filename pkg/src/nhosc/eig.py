"""Dense real nonsymmetric eigenvalue solver.

Pipeline: diagonal balancing (Parlett-Reinsch, radix 2), Householder
reduction to upper Hessenberg form, then Francis implicit double-shift QR
with 2x2 real-block deflation, so complex eigenvalues emerge in exact
conjugate pairs.  Eigenvalues only; Schur vectors are never formed and
transformations stay inside the active window.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .basis import OperatorMatrix

__all__ = [
    "EigensolverError",
    "ConvergenceError",
    "SortOrder",
    "Spectrum",
    "ClassifiedSpectrum",
    "balance",
    "hessenberg_reduce",
    "eigenvalues",
    "sort_spectrum",
    "classify",
    "real_mask",
]

_EPS = float(np.finfo(np.float64).eps)


class EigensolverError(RuntimeError):
    """Raised when the solve cannot be completed or fails self-consistency."""


class ConvergenceError(EigensolverError):
    """QR iteration exceeded its sweep budget; carries the stuck subdiagonal index."""

    def __init__(self, index: int, sweeps: int):
        self.subdiagonal_index = index
        super().__init__(
            f"QR iteration did not converge within {sweeps} sweeps; "
            f"stuck at subdiagonal index {index}"
        )


class SortOrder(Enum):
    RE_THEN_IM = "ReThenIm"
    MODULUS_THEN_PHASE = "ModulusThenPhase"


@dataclass(frozen=True)
class Spectrum:
    """Full eigenvalue multiset of one solve.

    classify_tol is the absolute realness threshold recorded at solve
    time (1e-8 times the Frobenius norm of the input); sort_order is
    None until sort_spectrum is applied.
    """

    values: np.ndarray
    sort_order: SortOrder | None
    classify_tol: float

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.complex128)
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def __len__(self) -> int:
        return self.values.shape[0]


@dataclass(frozen=True)
class ClassifiedSpectrum:
    """Spectrum split into real values and conjugate pairs.

    complex_pairs holds (real part, |imaginary part|) per pair; the
    counts always satisfy n_real + 2*n_complex = matrix dimension.
    """

    real_values: np.ndarray
    complex_pairs: list[tuple[float, float]]
    n_real: int
    n_complex: int


def _as_real_array(m) -> np.ndarray:
    """Real float64 view of an OperatorMatrix or array-like; rejects complex input."""
    if isinstance(m, OperatorMatrix):
        return m.real_entries().astype(np.float64, copy=False)
    a = np.asarray(m)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if np.iscomplexobj(a):
        if np.any(a.imag != 0.0):
            raise ValueError("complex matrices are not supported by this solver")
        a = a.real
    return a.astype(np.float64, copy=False)


def balance(m) -> tuple[np.ndarray, np.ndarray]:
    """Diagonal similarity scaling that approximately equalizes row/column norms.

    Returns (balanced, d) with balanced = D^-1 m D for D = diag(d); the
    scale factors are powers of two, so the similarity is exact in
    floating point and eigenvalues are unchanged.
    """
    a = _as_real_array(m).copy()
    n = a.shape[0]
    d = np.ones(n)
    radix = 2.0
    b2 = radix * radix
    noconv = True
    while noconv:
        noconv = False
        for i in range(n):
            c = np.abs(a[:, i]).sum() - abs(a[i, i])
            r = np.abs(a[i, :]).sum() - abs(a[i, i])
            if c == 0.0 or r == 0.0:
                continue
            g = r / radix
            f = 1.0
            s = c + r
            while c < g:
                f *= radix
                c *= b2
            g = r * radix
            while c >= g:
                f /= radix
                c /= b2
            if (c + r) / f < 0.95 * s:
                d[i] *= f
                a[i, :] *= 1.0 / f
                a[:, i] *= f
                noconv = True
    return a, d


def hessenberg_reduce(m) -> np.ndarray:
    """Orthogonal (Householder) similarity reduction to upper Hessenberg form."""
    h = _as_real_array(m).copy()
    n = h.shape[0]
    for k in range(n - 2):
        x = h[k + 1 :, k]
        norm_x = np.linalg.norm(x)
        if norm_x == 0.0:
            continue
        v = x.copy()
        v[0] += math.copysign(norm_x, x[0]) if x[0] != 0.0 else norm_x
        v /= np.linalg.norm(v)
        # two-sided reflector application keeps the similarity orthogonal
        h[k + 1 :, k:] -= 2.0 * np.outer(v, v @ h[k + 1 :, k:])
        h[:, k + 1 :] -= 2.0 * np.outer(h[:, k + 1 :] @ v, v)
        h[k + 2 :, k] = 0.0
    return h


def _francis_qr(h: np.ndarray, max_sweeps: int) -> np.ndarray:
    """Implicit double-shift QR on an upper Hessenberg matrix (eigenvalues only).

    Follows the classic EISPACK hqr scheme: deflate converged 1x1/2x2
    trailing blocks, form the Francis double shift from the trailing
    2x2, chase the bulge with 3x3 reflectors.  Exceptional shifts kick
    in every 10 stalled sweeps on the same block; exceeding max_sweeps
    raises ConvergenceError naming the stuck subdiagonal.
    """
    a = h.copy()
    n = a.shape[0]
    wr = np.zeros(n)
    wi = np.zeros(n)
    anorm = np.abs(np.triu(a, -1)).sum()
    if anorm == 0.0:
        return wr + 1j * wi
    total = 0
    t = 0.0
    nn = n - 1
    while nn >= 0:
        its = 0
        while True:
            # find the highest l with a negligible subdiagonal below it
            l = nn
            while l >= 1:
                s = abs(a[l - 1, l - 1]) + abs(a[l, l])
                if s == 0.0:
                    s = anorm
                if abs(a[l, l - 1]) <= _EPS * s:
                    a[l, l - 1] = 0.0
                    break
                l -= 1
            x = a[nn, nn]
            if l == nn:  # 1x1 block deflated: one real eigenvalue
                wr[nn] = x + t
                nn -= 1
                break
            y = a[nn - 1, nn - 1]
            w = a[nn, nn - 1] * a[nn - 1, nn]
            if l == nn - 1:  # 2x2 block deflated: real pair or conjugate pair
                p = 0.5 * (y - x)
                q = p * p + w
                z = math.sqrt(abs(q))
                x += t
                if q >= 0.0:
                    z = p + math.copysign(z, p)
                    wr[nn - 1] = wr[nn] = x + z
                    if z != 0.0:
                        wr[nn] = x - w / z
                else:
                    wr[nn - 1] = wr[nn] = x + p
                    wi[nn - 1] = -z
                    wi[nn] = z
                nn -= 2
                break
            if total >= max_sweeps:
                raise ConvergenceError(index=nn, sweeps=total)
            if its != 0 and its % 10 == 0:
                # exceptional shift against cycling
                t += x
                for i in range(nn + 1):
                    a[i, i] -= x
                s = abs(a[nn, nn - 1]) + abs(a[nn - 1, nn - 2])
                y = x = 0.75 * s
                w = -0.4375 * s * s
            its += 1
            total += 1
            # start the bulge as high as two consecutive small subdiagonals allow
            m = nn - 2
            while m >= l:
                z = a[m, m]
                r = x - z
                s = y - z
                p = (r * s - w) / a[m + 1, m] + a[m, m + 1]
                q = a[m + 1, m + 1] - z - r - s
                r = a[m + 2, m + 1]
                s = abs(p) + abs(q) + abs(r)
                p /= s
                q /= s
                r /= s
                if m == l:
                    break
                u = abs(a[m, m - 1]) * (abs(q) + abs(r))
                v = abs(p) * (abs(a[m - 1, m - 1]) + abs(z) + abs(a[m + 1, m + 1]))
                if u <= _EPS * v:
                    break
                m -= 1
            for i in range(m + 2, nn + 1):
                a[i, i - 2] = 0.0
                if i > m + 2:
                    a[i, i - 3] = 0.0
            # chase the bulge: double QR step on rows l..nn, columns m..nn
            for k in range(m, nn):
                if k != m:
                    p = a[k, k - 1]
                    q = a[k + 1, k - 1]
                    r = a[k + 2, k - 1] if k != nn - 1 else 0.0
                    x = abs(p) + abs(q) + abs(r)
                    if x == 0.0:
                        continue
                    p /= x
                    q /= x
                    r /= x
                s = math.copysign(math.sqrt(p * p + q * q + r * r), p)
                if s == 0.0:
                    continue
                if k == m:
                    if l != m:
                        a[k, k - 1] = -a[k, k - 1]
                else:
                    a[k, k - 1] = -s * x
                p += s
                x = p / s
                y = q / s
                z = r / s
                q /= p
                r /= p
                hi = min(nn, k + 3) + 1
                if k == nn - 1:
                    row = a[k, k : nn + 1] + q * a[k + 1, k : nn + 1]
                    a[k, k : nn + 1] -= row * x
                    a[k + 1, k : nn + 1] -= row * y
                    col = x * a[l:hi, k] + y * a[l:hi, k + 1]
                    a[l:hi, k] -= col
                    a[l:hi, k + 1] -= col * q
                else:
                    row = (
                        a[k, k : nn + 1]
                        + q * a[k + 1, k : nn + 1]
                        + r * a[k + 2, k : nn + 1]
                    )
                    a[k, k : nn + 1] -= row * x
                    a[k + 1, k : nn + 1] -= row * y
                    a[k + 2, k : nn + 1] -= row * z
                    col = x * a[l:hi, k] + y * a[l:hi, k + 1] + z * a[l:hi, k + 2]
                    a[l:hi, k] -= col
                    a[l:hi, k + 1] -= col * q
                    a[l:hi, k + 2] -= col * r
    return wr + 1j * wi


def eigenvalues(m, max_sweeps: int | None = None) -> Spectrum:
    """All eigenvalues of a square real matrix via balance -> Hessenberg -> QR.

    The sweep budget defaults to 30 per matrix dimension.  Every solve is
    checked against the trace identity (sum of eigenvalues == trace) at
    1e-9 * Frobenius norm; violation raises EigensolverError.
    """
    a = _as_real_array(m)
    n = a.shape[0]
    if n < 1:
        raise ValueError("matrix dimension must be >= 1")
    if max_sweeps is None:
        max_sweeps = 30 * n
    balanced, _ = balance(a)
    h = hessenberg_reduce(balanced)
    vals = _francis_qr(h, max_sweeps)
    norm = float(np.linalg.norm(a))
    tol = 1e-9 * norm if norm > 0.0 else 1e-12
    drift = abs(vals.sum() - np.trace(a))
    if drift > tol:
        raise EigensolverError(
            f"trace identity violated: |sum(eig) - trace| = {drift:.3e} > {tol:.3e}"
        )
    return Spectrum(values=vals, sort_order=None, classify_tol=1e-8 * norm)


def sort_spectrum(s: Spectrum, order: SortOrder) -> Spectrum:
    """Stable reordering of the spectrum.

    RE_THEN_IM: ascending real part, ties by imaginary part (canonical
    for level-indexed reports).  MODULUS_THEN_PHASE: ascending modulus,
    ties by phase angle, reproducing the reference listing convention.
    """
    v = s.values
    if order is SortOrder.RE_THEN_IM:
        idx = np.lexsort((v.imag, v.real))
    elif order is SortOrder.MODULUS_THEN_PHASE:
        idx = np.lexsort((np.angle(v), np.abs(v)))
    else:
        raise ValueError(f"unknown sort order {order!r}")
    return Spectrum(values=v[idx], sort_order=order, classify_tol=s.classify_tol)


def real_mask(values: np.ndarray, tol_abs: float, tol_rel: float) -> np.ndarray:
    """Boolean mask of values counted as real: |Im v| <= max(tol_abs, tol_rel*|v|)."""
    v = np.asarray(values)
    return np.abs(v.imag) <= np.maximum(tol_abs, tol_rel * np.abs(v))


def classify(
    s: Spectrum, tol_abs: float | None = None, tol_rel: float = 1e-10
) -> ClassifiedSpectrum:
    """Split a real-matrix spectrum into real values and conjugate pairs.

    tol_abs defaults to the threshold recorded at solve time.  Non-real
    values are greedily matched to the nearest conjugate partner; an
    unpairable value means the input matrix was not real or the
    tolerances are misconfigured, and raises ValueError.
    """
    if tol_abs is None:
        tol_abs = s.classify_tol
    v = s.values
    mask = real_mask(v, tol_abs, tol_rel)
    reals = np.sort(v[mask].real)
    rest = v[~mask]
    pos = sorted(rest[rest.imag > 0.0], key=lambda z: (z.real, z.imag))
    neg = list(rest[rest.imag < 0.0])
    if len(pos) != len(neg):
        raise ValueError(
            f"unpairable complex values: {len(pos)} with Im>0 vs {len(neg)} with Im<0"
        )
    pairs: list[tuple[float, float]] = []
    for p in pos:
        dists = [abs(u - p.conjugate()) for u in neg]
        j = int(np.argmin(dists))
        pair_tol = 10.0 * max(tol_abs, tol_rel * abs(p))
        if dists[j] > pair_tol:
            raise ValueError(
                f"no conjugate partner for {p} within {pair_tol:.3e} (best {dists[j]:.3e})"
            )
        partner = neg.pop(j)
        pairs.append((0.5 * (p.real + partner.real), 0.5 * (p.imag - partner.imag)))
    reals.setflags(write=False)
    return ClassifiedSpectrum(
        real_values=reals,
        complex_pairs=pairs,
        n_real=int(reals.shape[0]),
        n_complex=len(pairs),
    )
