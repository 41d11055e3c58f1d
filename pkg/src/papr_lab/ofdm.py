"""Constellation mapping, multicarrier synthesis and PAPR measurement.

Frames are complex arrays whose last axis holds the N subcarrier symbols;
every function here also accepts a stack of frames (shape ``(F, N)``) so the
Monte-Carlo loop can stay vectorized.

The BPSK-only helpers at the bottom express the power envelope through the
aperiodic autocorrelation of the symbol sequence:

    N |s(t)|^2 = N + 2 P0(t),   P0(t) = sum_k C_k cos(2 pi k t)

which makes the PAPR a function of the C_k alone.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import InvalidParameterError, UndefinedPaprError
from .gf2core import as_bits

MODULATIONS = {"bpsk": 1, "qam16": 4}

# Gray order of the 2-bit level index: 00 -> -3, 01 -> -1, 11 -> +1, 10 -> +3
_QAM16_LEVELS = np.array([-3.0, -1.0, 3.0, 1.0]) / np.sqrt(10.0)


@dataclass(frozen=True)
class OfdmConfig:
    N: int = 64
    L: int = 4
    modulation: str = "qam16"

    def __post_init__(self):
        if self.N < 2:
            raise InvalidParameterError(f"need N >= 2 subcarriers, got {self.N}")
        if self.L < 1:
            raise InvalidParameterError(f"oversampling factor must be >= 1, got {self.L}")
        if self.modulation not in MODULATIONS:
            raise InvalidParameterError(f"modulation must be one of {sorted(MODULATIONS)}, got {self.modulation!r}")

    @property
    def bits_per_symbol(self) -> int:
        return MODULATIONS[self.modulation]

    @property
    def bits_per_frame(self) -> int:
        return self.N * self.bits_per_symbol


def _bit_array(bits) -> np.ndarray:
    return bits if isinstance(bits, np.ndarray) and bits.dtype == np.uint8 else as_bits(bits)


def map_bpsk(bits, N: int | None = None) -> np.ndarray:
    """0 -> +1, 1 -> -1, one symbol per bit along the last axis."""
    bits = _bit_array(bits)
    if N is not None and bits.shape[-1] != N:
        raise InvalidParameterError(f"BPSK frame needs {N} bits, got {bits.shape[-1]}")
    return (1.0 - 2.0 * bits).astype(np.complex128)


def map_qam16(bits, N: int | None = None) -> np.ndarray:
    """Gray-coded 16-QAM with unit average energy.

    Each 4-bit group b3 b2 b1 b0 (stream order) sets I from b3 b2 and Q
    from b1 b0.
    """
    bits = _bit_array(bits)
    if bits.shape[-1] % 4 or (N is not None and bits.shape[-1] != 4 * N):
        want = f"{4 * N}" if N is not None else "a multiple of 4"
        raise InvalidParameterError(f"16-QAM frame needs {want} bits, got {bits.shape[-1]}")
    g = bits.reshape(bits.shape[:-1] + (-1, 4)).astype(np.intp)
    i_idx = 2 * g[..., 0] + g[..., 1]
    q_idx = 2 * g[..., 2] + g[..., 3]
    return _QAM16_LEVELS[i_idx] + 1j * _QAM16_LEVELS[q_idx]


def map_bits(bits, modulation: str, N: int | None = None) -> np.ndarray:
    if modulation == "bpsk":
        return map_bpsk(bits, N)
    if modulation == "qam16":
        return map_qam16(bits, N)
    raise InvalidParameterError(f"unknown modulation {modulation!r}")


def synthesize(frame, L: int = 4) -> np.ndarray:
    """Sample s(t) = N^-1/2 sum_k c_k exp(i 2 pi k t) at t = j / (N L).

    Implemented as a zero-padded inverse FFT of length N L.
    """
    if L < 1:
        raise InvalidParameterError(f"oversampling factor must be >= 1, got {L}")
    frame = np.asarray(frame, dtype=np.complex128)
    N = frame.shape[-1]
    M = N * L
    return np.fft.ifft(frame, n=M, axis=-1) * (M / np.sqrt(N))


def papr_db(signal) -> np.ndarray | float:
    """10 log10(peak power / time-averaged power), per frame."""
    signal = np.asarray(signal)
    if signal.shape[-1] == 0:
        raise InvalidParameterError("empty signal")
    power = np.ascontiguousarray((signal.real ** 2 + signal.imag ** 2).reshape(-1, signal.shape[-1]))
    if not power.sum(axis=1).all():
        raise UndefinedPaprError("PAPR is undefined for an all-zero signal")
    out = kernels.papr_rows(power)
    return float(out[0]) if signal.ndim == 1 else out.reshape(signal.shape[:-1])


# --------------------------------------------------------------------------
# BPSK autocorrelation analysis

def _real_frame(frame) -> np.ndarray:
    frame = np.asarray(frame)
    if np.iscomplexobj(frame):
        if np.any(frame.imag != 0):
            raise InvalidParameterError("autocorrelation analysis needs a real (BPSK) frame")
        frame = frame.real
    return frame.astype(np.float64)


def aperiodic_autocorrelation(frame) -> np.ndarray:
    """C_k = sum_i c_i c_(i+k) for k = 1..N-1."""
    c = _real_frame(frame)
    N = c.shape[0]
    return np.correlate(c, c, mode="full")[N:]


def power_envelope_ac(frame, t):
    """P0(t) = sum_{k=1}^{N-1} C_k cos(2 pi k t); ``t`` may be an array."""
    C = aperiodic_autocorrelation(frame)
    k = np.arange(1, C.shape[0] + 1)
    t = np.asarray(t, dtype=np.float64)
    return np.cos(2 * np.pi * np.multiply.outer(t, k)) @ C


def papr_via_autocorrelation(frame, grid_points: int) -> float:
    """PAPR of a BPSK frame from its autocorrelations.

    The average power is exactly 1 and |s(t)|^2 is symmetric about
    t = 1/2, so only [0, 0.5] is searched.
    """
    if grid_points < 2:
        raise InvalidParameterError(f"need at least 2 grid points, got {grid_points}")
    c = _real_frame(frame)
    t = np.linspace(0.0, 0.5, grid_points)
    inst = 1.0 + 2.0 / c.shape[0] * power_envelope_ac(c, t)
    return float(10.0 * np.log10(inst.max()))
