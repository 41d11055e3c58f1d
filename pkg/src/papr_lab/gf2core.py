"""GF(2) vectors, matrices and polynomials, plus the Paley/Jacobsthal
sign matrices the Golay construction is built from.

Bit vectors and binary matrices are plain ``numpy.uint8`` arrays; sign
matrices are ``numpy.int8`` arrays with entries in {-1, 0, +1}.
Polynomials use :class:`Gf2Poly`, an immutable wrapper around a Python
int whose bit ``i`` is the coefficient of ``X^i``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from . import kernels
from .errors import CapacityError, InvalidParameterError

MAX_ENUM_K = 20


def as_bits(x) -> np.ndarray:
    """Coerce a sequence or a ``"0101"`` string to a uint8 bit array."""
    if isinstance(x, str):
        x = [int(ch) for ch in x if ch in "01"]
    arr = np.asarray(x, dtype=np.uint8)
    if arr.size and arr.max() > 1:
        raise InvalidParameterError("bit vector entries must be 0 or 1")
    return arr


def bits_to_str(bits) -> str:
    return "".join(str(int(b)) for b in bits)


# --------------------------------------------------------------------------
# polynomials

@dataclass(frozen=True)
class Gf2Poly:
    """Binary polynomial; ``mask`` bit i is the coefficient of X^i."""

    mask: int = 0

    def __post_init__(self):
        if self.mask < 0:
            raise InvalidParameterError("polynomial mask must be non-negative")

    @classmethod
    def from_bits(cls, coeffs: Iterable[int]) -> "Gf2Poly":
        """Build from ascending coefficients ``[c0, c1, ...]``."""
        mask = 0
        for i, c in enumerate(as_bits(list(coeffs))):
            if c:
                mask |= 1 << i
        return cls(mask)

    @classmethod
    def from_exponents(cls, *exps: int) -> "Gf2Poly":
        mask = 0
        for e in exps:
            mask ^= 1 << e
        return cls(mask)

    @property
    def degree(self) -> Optional[int]:
        """Degree, or ``None`` for the zero polynomial."""
        return self.mask.bit_length() - 1 if self.mask else None

    def is_zero(self) -> bool:
        return self.mask == 0

    def bits(self, length: Optional[int] = None) -> np.ndarray:
        if length is None:
            length = max(self.mask.bit_length(), 1)
        if self.mask.bit_length() > length:
            raise InvalidParameterError(f"polynomial of degree {self.degree} does not fit in {length} bits")
        return np.array([(self.mask >> i) & 1 for i in range(length)], dtype=np.uint8)

    def __add__(self, other: "Gf2Poly") -> "Gf2Poly":
        return Gf2Poly(self.mask ^ other.mask)

    __sub__ = __add__

    def __mul__(self, other: "Gf2Poly") -> "Gf2Poly":
        return poly_mul(self, other)

    def __divmod__(self, other: "Gf2Poly"):
        return poly_divmod(self, other)

    def __floordiv__(self, other: "Gf2Poly") -> "Gf2Poly":
        return poly_divmod(self, other)[0]

    def __mod__(self, other: "Gf2Poly") -> "Gf2Poly":
        return poly_divmod(self, other)[1]

    def __str__(self) -> str:
        if not self.mask:
            return "0"
        terms = []
        for i in range(self.mask.bit_length() - 1, -1, -1):
            if (self.mask >> i) & 1:
                terms.append("1" if i == 0 else "X" if i == 1 else f"X^{i}")
        return " + ".join(terms)


def poly_mul(a: Gf2Poly, b: Gf2Poly) -> Gf2Poly:
    x, y, acc = a.mask, b.mask, 0
    while y:
        if y & 1:
            acc ^= x
        x <<= 1
        y >>= 1
    return Gf2Poly(acc)


def poly_divmod(dividend: Gf2Poly, divisor: Gf2Poly) -> tuple[Gf2Poly, Gf2Poly]:
    """Long division over GF(2); returns ``(quotient, remainder)``."""
    if divisor.is_zero():
        raise ZeroDivisionError("GF(2) polynomial division by zero")
    d = divisor.mask.bit_length()
    rem, quo = dividend.mask, 0
    while rem.bit_length() >= d:
        shift = rem.bit_length() - d
        quo |= 1 << shift
        rem ^= divisor.mask << shift
    return Gf2Poly(quo), Gf2Poly(rem)


# --------------------------------------------------------------------------
# number theory / sign matrices

def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    f = 2
    while f * f <= p:
        if p % f == 0:
            return False
        f += 1
    return True


def _check_odd_prime(p) -> int:
    if not isinstance(p, (int, np.integer)) or p < 3 or not _is_prime(int(p)):
        raise InvalidParameterError(f"p must be an odd prime, got {p!r}")
    return int(p)


def legendre_symbol(i: int, p: int) -> int:
    p = _check_odd_prime(p)
    r = int(i) % p
    if r == 0:
        return 0
    # Euler's criterion
    return 1 if pow(r, (p - 1) // 2, p) == 1 else -1


def jacobsthal_matrix(p: int) -> np.ndarray:
    """p x p matrix with entry (i, j) = legendre_symbol(j - i, p)."""
    p = _check_odd_prime(p)
    row0 = np.array([legendre_symbol(j, p) for j in range(p)], dtype=np.int8)
    idx = (np.arange(p)[None, :] - np.arange(p)[:, None]) % p
    return row0[idx]


def paley_hadamard(p: int) -> np.ndarray:
    """Normalized Paley Hadamard matrix of order p + 1 (p = 3 mod 4).

    Border row and column are all +1; the interior block is Q - I with Q
    the Jacobsthal matrix.
    """
    p = _check_odd_prime(p)
    if p % 4 != 3:
        raise InvalidParameterError(f"Paley construction needs p = 3 (mod 4), got {p}")
    H = np.ones((p + 1, p + 1), dtype=np.int8)
    H[1:, 1:] = jacobsthal_matrix(p) - np.eye(p, dtype=np.int8)
    return H


# --------------------------------------------------------------------------
# matrices

def mat_vec_mul(M, x) -> np.ndarray:
    """Row-vector product ``x . M`` over GF(2)."""
    M = np.asarray(M, dtype=np.uint8)
    x = as_bits(x)
    if M.ndim != 2 or x.shape != (M.shape[0],):
        raise InvalidParameterError(f"cannot multiply length-{x.shape[0]} vector by {M.shape} matrix")
    return ((x.astype(np.int64) @ M.astype(np.int64)) & 1).astype(np.uint8)


def mat_mul(A, B) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    return ((A @ B) & 1).astype(np.uint8)


def gf2_rank(M) -> int:
    """Rank over GF(2) by Gaussian elimination."""
    work = np.array(M, dtype=np.uint8) & 1
    rows, cols = work.shape
    rank = 0
    for c in range(cols):
        if rank == rows:
            break
        pivots = np.nonzero(work[rank:, c])[0]
        if pivots.size == 0:
            continue
        p = rank + pivots[0]
        work[[rank, p]] = work[[p, rank]]
        hit = work[:, c].astype(bool)
        hit[rank] = False
        work[hit] ^= work[rank]
        rank += 1
    return rank


def _generator_of(code_or_G) -> np.ndarray:
    G = getattr(code_or_G, "G", code_or_G)
    return np.asarray(G, dtype=np.uint8)


def weight_distribution(code_or_G) -> np.ndarray:
    """Counts ``A_w`` of codewords of each weight, by full enumeration."""
    G = _generator_of(code_or_G)
    k, n = G.shape
    if k > MAX_ENUM_K:
        raise CapacityError(f"exhaustive enumeration limited to k <= {MAX_ENUM_K}, got k = {k}")
    if n <= 64:
        masks = np.zeros(k, dtype=np.uint64)
        weights = np.uint64(1) << np.arange(n, dtype=np.uint64)
        for i in range(k):
            masks[i] = np.bitwise_or.reduce(weights[G[i].astype(bool)], initial=np.uint64(0))
        return np.asarray(kernels.weight_distribution(masks, n), dtype=np.int64)
    counts = np.zeros(n + 1, dtype=np.int64)
    shifts = np.arange(k)
    for start in range(0, 1 << k, 1 << 14):
        idx = np.arange(start, min(start + (1 << 14), 1 << k))
        msgs = (idx[:, None] >> shifts) & 1
        counts += np.bincount(mat_mul(msgs, G).sum(axis=1), minlength=n + 1)
    return counts


def min_distance_exhaustive(code_or_G) -> int:
    """Minimum nonzero codeword weight (= minimum distance for linear codes)."""
    counts = weight_distribution(code_or_G)
    nz = np.nonzero(counts[1:])[0]
    if nz.size == 0:
        raise InvalidParameterError("code has no nonzero codeword")
    return int(nz[0] + 1)
