"""CCDF estimation and PAPR read-out at a target exceedance level."""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import InsufficientDataError, InvalidParameterError

GRID_STEP_DB = 0.05


@dataclass(frozen=True)
class CcdfCurve:
    thresholds_db: np.ndarray
    probabilities: np.ndarray

    def __len__(self):
        return self.thresholds_db.shape[0]


@dataclass(frozen=True)
class ReductionRow:
    label: str
    uncoded_papr_db: float
    coded_papr_db: float
    reduction_db: float
    code_rate: float


def _samples(values) -> np.ndarray:
    values = np.asarray(values, dtype=np.float64).ravel()
    if values.size == 0:
        raise InvalidParameterError("need at least one PAPR sample")
    return values


def theoretical_ccdf(N: int, xi_linear):
    """Pr(PAPR > xi) = 1 - (1 - exp(-xi))^N for N independent subcarrier samples."""
    xi = np.asarray(xi_linear, dtype=np.float64)
    if np.any(xi < 0):
        raise InvalidParameterError("threshold must be non-negative (linear power ratio)")
    if N < 1:
        raise InvalidParameterError(f"N must be >= 1, got {N}")
    # 1 - (1-e)^N via log1p/expm1 keeps precision in the far tail
    with np.errstate(divide="ignore"):
        out = -np.expm1(N * np.log1p(-np.exp(-xi)))
    return float(out) if out.ndim == 0 else out


def theoretical_papr_db(N: int, level: float) -> float:
    """Threshold (dB) at which :func:`theoretical_ccdf` equals ``level``."""
    if not 0 < level < 1:
        raise InvalidParameterError(f"level must lie in (0, 1), got {level}")
    xi = -math.log(-math.expm1(math.log1p(-level) / N))
    return 10.0 * math.log10(xi)


def default_thresholds(samples) -> np.ndarray:
    """0.05 dB grid starting at the smallest sample and covering the largest."""
    s = _samples(samples)
    lo, hi = s.min(), s.max()
    count = int(math.ceil((hi - lo) / GRID_STEP_DB)) + 1
    return lo + GRID_STEP_DB * np.arange(count)


def empirical_ccdf(samples, thresholds=None) -> CcdfCurve:
    """Fraction of samples strictly above each threshold."""
    s = np.sort(_samples(samples))
    thr = default_thresholds(s) if thresholds is None else np.asarray(thresholds, dtype=np.float64)
    if thr.ndim != 1 or thr.size == 0 or np.any(np.diff(thr) <= 0):
        raise InvalidParameterError("thresholds must be a non-empty strictly increasing sequence")
    above = s.size - np.searchsorted(s, thr, side="right")
    return CcdfCurve(thr, above / s.size)


def papr_at_ccdf(curve_or_samples, level: float = 1e-2) -> float:
    """Smallest threshold whose exceedance is <= ``level``.

    The crossing is refined by linear interpolation in (dB, log10 p)
    between the two bracketing grid points. Raw samples are first turned
    into a curve on :func:`default_thresholds`.
    """
    if not 0 < level < 1:
        raise InvalidParameterError(f"level must lie in (0, 1), got {level}")
    if isinstance(curve_or_samples, CcdfCurve):
        curve = curve_or_samples
    else:
        s = _samples(curve_or_samples)
        if s.size < math.ceil(2 / level):
            warnings.warn(f"{s.size} samples is too few for a stable read-out at level {level}", stacklevel=2)
        curve = empirical_ccdf(s)
    x, p = curve.thresholds_db, curve.probabilities
    hit = np.nonzero(p <= level)[0]
    if hit.size == 0:
        raise InsufficientDataError(f"CCDF never drops to {level} (minimum {p.min():.3g})")
    i = hit[0]
    if i == 0 or p[i] == level:
        return float(x[i])
    p0, p1 = p[i - 1], p[i]
    if p1 > 0:
        frac = (math.log10(level) - math.log10(p0)) / (math.log10(p1) - math.log10(p0))
    else:
        # log scale is undefined at p = 0; fall back to linear in p
        frac = (p0 - level) / p0
    return float(x[i - 1] + frac * (x[i] - x[i - 1]))


def reduction_row(label: str, uncoded, coded, level: float, rate: float) -> ReductionRow:
    u = papr_at_ccdf(uncoded, level)
    c = papr_at_ccdf(coded, level)
    return ReductionRow(label=label, uncoded_papr_db=u, coded_papr_db=c, reduction_db=u - c, code_rate=rate)
