"""Encoders for the five binary code families used in the PAPR study.

Block codes (Hamming, cyclic, Golay, Reed-Muller) are all reduced to a
:class:`LinearBlockCode` holding a generator matrix; convolutional codes
are feed-forward shift registers described by octal tap masks.
:func:`parse_code_spec` turns the compact text syntax used by the CLI
(``hamming:m=6``, ``conv:rate=1/2,K=6``, ...) into a :class:`CodeSpec`.
"""
from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Optional, Union

import numpy as np

from . import kernels
from .errors import ConstructionError, InvalidGeneratorError, InvalidParameterError
from .gf2core import (
    Gf2Poly,
    as_bits,
    min_distance_exhaustive,
    paley_hadamard,
    poly_divmod,
)


def _frozen(a, dtype=np.uint8) -> np.ndarray:
    a = np.array(a, dtype=dtype)
    a.flags.writeable = False
    return a


def _gf2_matmul(A, B) -> np.ndarray:
    # float32 BLAS is exact while row sums stay below 2**24
    prod = np.asarray(A, dtype=np.float32) @ np.asarray(B, dtype=np.float32)
    return (prod.astype(np.int64) & 1).astype(np.uint8)


@dataclass(frozen=True, eq=False)
class LinearBlockCode:
    """An [n, k] binary code given by its k x n generator matrix."""

    G: np.ndarray
    name: str
    H: Optional[np.ndarray] = None
    n: int = field(init=False)
    k: int = field(init=False)

    def __post_init__(self):
        G = _frozen(self.G)
        if G.ndim != 2 or G.shape[0] == 0 or G.shape[0] > G.shape[1]:
            raise InvalidParameterError(f"generator matrix must be k x n with 0 < k <= n, got {G.shape}")
        object.__setattr__(self, "G", G)
        object.__setattr__(self, "k", G.shape[0])
        object.__setattr__(self, "n", G.shape[1])
        if self.H is not None:
            H = _frozen(self.H)
            if H.shape[1] != self.n:
                raise InvalidParameterError("parity-check matrix width must equal n")
            if _gf2_matmul(G, H.T).any():
                raise ConstructionError(f"{self.name}: G . H^T != 0")
            object.__setattr__(self, "H", H)

    @property
    def rate(self) -> float:
        return self.k / self.n

    def encode(self, u) -> np.ndarray:
        u = as_bits(u)
        if u.shape != (self.k,):
            raise InvalidParameterError(f"{self.name}: message must have {self.k} bits, got {u.shape[0]}")
        return self.encode_blocks(u[None, :])[0]

    def encode_blocks(self, messages) -> np.ndarray:
        """Encode a (B, k) array of messages into a (B, n) array."""
        return _gf2_matmul(messages, self.G)

    def __repr__(self):
        return f"LinearBlockCode({self.name!r}, n={self.n}, k={self.k})"


def systematic_parity_check(P) -> np.ndarray:
    """H = [P^T | I] for a generator in the form [I | P]."""
    P = np.asarray(P, dtype=np.uint8)
    return np.hstack([P.T, np.eye(P.shape[1], dtype=np.uint8)])


# --------------------------------------------------------------------------
# Hamming

def hamming_code(m: int) -> LinearBlockCode:
    """Systematic Hamming code: H = [I_m | Q], G = [Q^T | I_k].

    Q holds every m-tuple of weight >= 2, ordered by the tuple's integer
    value read with row 0 as the most significant bit.
    """
    if not isinstance(m, (int, np.integer)) or not 3 <= m <= 12:
        raise InvalidParameterError(f"Hamming parameter m must be in 3..12, got {m!r}")
    values = [v for v in range(1, 1 << m) if bin(v).count("1") >= 2]
    rows = np.arange(m)[:, None]
    Q = ((np.array(values)[None, :] >> (m - 1 - rows)) & 1).astype(np.uint8)
    k = Q.shape[1]
    H = np.hstack([np.eye(m, dtype=np.uint8), Q])
    G = np.hstack([Q.T, np.eye(k, dtype=np.uint8)])
    return LinearBlockCode(G=G, H=H, name=f"Hamming({(1 << m) - 1},{k})")


# --------------------------------------------------------------------------
# cyclic

CYCLIC_GENERATORS = {
    3: Gf2Poly.from_exponents(3, 1, 0),
    4: Gf2Poly.from_exponents(4, 1, 0),
    5: Gf2Poly.from_exponents(5, 2, 0),
    6: Gf2Poly.from_exponents(6, 1, 0),
    7: Gf2Poly.from_exponents(7, 3, 0),
    8: Gf2Poly.from_exponents(8, 4, 3, 2, 0),
}


def _check_cyclic_generator(g: Gf2Poly, n: int) -> int:
    if g.is_zero() or g.degree is None or g.degree < 1 or g.degree >= n:
        raise InvalidGeneratorError(f"generator {g} has invalid degree for n = {n}")
    if not (g.mask & 1):
        raise InvalidGeneratorError(f"generator {g} must have a constant term")
    if not poly_divmod(Gf2Poly.from_exponents(n, 0), g)[1].is_zero():
        raise InvalidGeneratorError(f"{g} does not divide X^{n} + 1")
    return n - g.degree


def cyclic_encode(u, g: Gf2Poly, n: int) -> np.ndarray:
    """Systematic cyclic encoding by polynomial division.

    I(X) = X^(n-k) u(X), r(X) = I(X) mod g(X), v(X) = I(X) + r(X).
    Parity occupies positions 0..n-k-1, the message positions n-k..n-1.
    """
    k = _check_cyclic_generator(g, n)
    u = as_bits(u)
    if u.shape != (k,):
        raise InvalidParameterError(f"message must have {k} bits for ({n},{k}) code, got {u.shape[0]}")
    shifted = Gf2Poly(Gf2Poly.from_bits(u).mask << (n - k))
    _, r = poly_divmod(shifted, g)
    return (shifted + r).bits(n)


def cyclic_default_generator(m: int) -> tuple[Gf2Poly, int]:
    """Primitive degree-m polynomial and n = 2^m - 1 (cyclic Hamming code)."""
    if m not in CYCLIC_GENERATORS:
        raise InvalidParameterError(f"cyclic parameter m must be in 3..8, got {m!r}")
    return CYCLIC_GENERATORS[m], (1 << m) - 1


@dataclass(frozen=True, eq=False)
class CyclicCode(LinearBlockCode):
    g: Gf2Poly = Gf2Poly(0)

    def encode_blocks(self, messages) -> np.ndarray:
        messages = np.ascontiguousarray(messages, dtype=np.uint8)
        parity = kernels.cyclic_parity(messages, self.g.bits(self.n - self.k + 1))
        return np.hstack([parity, messages])


def cyclic_code(g: Gf2Poly, n: int, name: Optional[str] = None) -> CyclicCode:
    k = _check_cyclic_generator(g, n)
    P = kernels.cyclic_parity_matrix(g.bits(n - k + 1), k)
    G = np.hstack([P, np.eye(k, dtype=np.uint8)])
    H = np.hstack([np.eye(n - k, dtype=np.uint8), P.T])
    return CyclicCode(G=G, H=H, name=name or f"Cyclic({n},{k})", g=g)


# --------------------------------------------------------------------------
# convolutional

# Best known feed-forward codes (Odenwalder), generators in octal.
CONV_GENERATORS = {
    2: {3: ("5", "7"), 4: ("15", "17"), 5: ("23", "35"), 6: ("53", "75"),
        7: ("133", "171"), 8: ("247", "371"), 9: ("561", "753"),
        10: ("1167", "1545"), 11: ("2335", "3661"), 12: ("4335", "5723"),
        13: ("10533", "17661"), 14: ("21675", "27123")},
    3: {3: ("5", "7", "7"), 4: ("13", "15", "17"), 5: ("25", "33", "37"),
        6: ("47", "53", "75"), 7: ("133", "145", "175"), 8: ("225", "331", "367"),
        9: ("557", "663", "711"), 10: ("1117", "1365", "1633"),
        11: ("2353", "2671", "3175"), 12: ("4767", "5723", "6265"),
        13: ("10533", "10675", "17661"), 14: ("21645", "35661", "37133")},
}


@dataclass(frozen=True)
class ConvolutionalCode:
    """Rate 1/n_out feed-forward encoder; tap bit 0 multiplies the newest input."""

    K: int
    taps: tuple
    name: str = ""

    def __post_init__(self):
        if self.K < 2:
            raise InvalidParameterError(f"constraint length must be >= 2, got {self.K}")
        if len(self.taps) not in (2, 3):
            raise InvalidParameterError(f"need 2 or 3 generators, got {len(self.taps)}")
        for t in self.taps:
            if not 0 < t < (1 << self.K):
                raise InvalidParameterError(f"tap mask {t:o} (octal) does not fit K = {self.K}")
        if not self.name:
            object.__setattr__(self, "name", f"Conv(1/{len(self.taps)},K={self.K})")

    @classmethod
    def from_octal(cls, K: int, generators, name: str = "") -> "ConvolutionalCode":
        taps = tuple(int(str(g).replace(",", ""), 8) for g in generators)
        return cls(K=K, taps=taps, name=name)

    @property
    def n_out(self) -> int:
        return len(self.taps)

    @property
    def rate(self) -> float:
        return 1.0 / self.n_out

    def encode(self, u) -> np.ndarray:
        """Zero-start, zero-flushed encoding; output length (len(u)+K-1)*n_out."""
        u = np.ascontiguousarray(as_bits(u))
        if u.shape[0] == 0:
            raise InvalidParameterError("cannot encode an empty input")
        return kernels.conv_encode(u, np.array(self.taps, dtype=np.int64), self.K)


def convolutional_code(rate_den: int, K: int) -> ConvolutionalCode:
    try:
        gens = CONV_GENERATORS[rate_den][K]
    except KeyError:
        raise InvalidParameterError(f"no tabulated rate 1/{rate_den} code with K = {K}") from None
    return ConvolutionalCode.from_octal(K, gens)


def convolutional_encode(code: ConvolutionalCode, u) -> np.ndarray:
    return code.encode(u)


def free_distance(code: ConvolutionalCode, max_depth: int = 200) -> int:
    """Free distance by a shortest-path search over the state trellis.

    Paths leave the zero state with an input 1 and are costed by output
    weight until they first return to zero.
    """
    mask = (1 << code.K) - 1
    smask = (1 << (code.K - 1)) - 1

    def step(state, b):
        reg = ((state << 1) | b) & mask
        w = sum(bin(reg & t).count("1") & 1 for t in code.taps)
        return reg & smask, w

    start, w0 = step(0, 1)
    heap = [(w0, 1, start)]
    best = {}
    while heap:
        w, depth, s = heapq.heappop(heap)
        if s == 0:
            return w
        if depth > max_depth or best.get(s, 1 << 30) <= w:
            continue
        best[s] = w
        for b in (0, 1):
            ns, dw = step(s, b)
            heapq.heappush(heap, (w + dw, depth + 1, ns))
    raise ConstructionError(f"{code.name}: no remerging path within depth {max_depth}")


# --------------------------------------------------------------------------
# Golay

GOLAY_P1 = Gf2Poly.from_exponents(11, 10, 6, 5, 4, 2, 0)
GOLAY_P2 = Gf2Poly.from_exponents(11, 9, 7, 6, 5, 1, 0)


def _golay_candidates():
    """Bordered 12x12 Hadamard block under each sign-to-bit rule, in trial order."""
    H = paley_hadamard(11).astype(np.int16)
    yield "+1->1", (H == 1)
    yield "-1->1", (H == -1)
    # sign-equivalent Hadamard matrix D H D with D = diag(-1, 1, ..., 1)
    D = np.diag([-1] + [1] * 11).astype(np.int16)
    yield "border-negated, -1->1", (D @ H @ D == -1)


@lru_cache(maxsize=None)
def _golay24() -> tuple[LinearBlockCode, str]:
    I12 = np.eye(12, dtype=np.uint8)
    for rule, B in _golay_candidates():
        B = B.astype(np.uint8)
        G = np.hstack([I12, B])
        if min_distance_exhaustive(G) == 8:
            code = LinearBlockCode(G=G, H=systematic_parity_check(B), name="Golay[24,12,8]")
            return code, rule
    raise ConstructionError("no sign-to-bit mapping of the Paley block gives d_min = 8")


def golay_mapping_rule() -> str:
    """Sign-to-bit rule that passed the d_min = 8 self-check."""
    return _golay24()[1]


@lru_cache(maxsize=None)
def golay_code(extended: bool = False) -> LinearBlockCode:
    """Extended [24,12,8] Golay code or the [23,12,7] code punctured from it."""
    g24, _ = _golay24()
    if extended:
        return g24
    G = np.asarray(g24.G[:, :-1])
    code = LinearBlockCode(G=G, H=systematic_parity_check(G[:, 12:]), name="Golay[23,12,7]")
    if min_distance_exhaustive(code) != 7:
        raise ConstructionError("punctured Golay code does not have d_min = 7")
    return code


def golay_polynomial_code() -> CyclicCode:
    return cyclic_code(GOLAY_P1, 23, name="Golay(23,12) via P1")


def golay_polynomial_encode(u) -> np.ndarray:
    u = as_bits(u)
    if u.shape != (12,):
        raise InvalidParameterError(f"Golay message must have 12 bits, got {u.shape[0]}")
    return cyclic_encode(u, GOLAY_P1, 23)


# --------------------------------------------------------------------------
# Reed-Muller

def rm_monomials(r: int, m: int) -> list[tuple[int, ...]]:
    """Square-free monomials of degree <= r, by degree then lexicographically."""
    return [c for d in range(r + 1) for c in itertools.combinations(range(m), d)]


def psi(monomial: tuple[int, ...], m: int) -> np.ndarray:
    """Evaluation vector of a monomial over the 2^m points.

    x_i is 1 on the first 2^(m-1-i) points, 0 on the next 2^(m-1-i), and
    so on; the empty monomial evaluates to all ones.
    """
    j = np.arange(1 << m)
    v = np.ones(1 << m, dtype=np.uint8)
    for i in monomial:
        v &= (1 - ((j >> (m - 1 - i)) & 1)).astype(np.uint8)
    return v


def _rm_generator(r: int, m: int) -> np.ndarray:
    return np.array([psi(mono, m) for mono in rm_monomials(r, m)], dtype=np.uint8)


def reed_muller_code(r: int, m: int) -> LinearBlockCode:
    if not (isinstance(r, (int, np.integer)) and isinstance(m, (int, np.integer)) and 0 < r < m <= 5):
        raise InvalidParameterError(f"Reed-Muller parameters need 0 < r < m <= 5, got r={r!r}, m={m!r}")
    G = _rm_generator(r, m)
    assert G.shape[0] == sum(comb(m, i) for i in range(r + 1))
    # the dual of RM(r, m) is RM(m - r - 1, m)
    return LinearBlockCode(G=G, H=_rm_generator(m - r - 1, m), name=f"RM({r},{m})")


# --------------------------------------------------------------------------
# spec strings

Code = Union[LinearBlockCode, ConvolutionalCode, None]


@dataclass(frozen=True)
class CodeSpec:
    family: str
    params: tuple = ()

    @property
    def label(self) -> str:
        if self.family == "none":
            return "none"
        p = dict(self.params)
        if self.family == "golay":
            return f"golay:{p['n']}"
        if self.family == "conv":
            return f"conv:rate=1/{p['rate_den']},K={p['K']}"
        return self.family + ":" + ",".join(f"{k}={v}" for k, v in self.params)

    def build(self) -> Code:
        return _build(self)

    @property
    def rate(self) -> float:
        code = self.build()
        return 1.0 if code is None else code.rate


@lru_cache(maxsize=None)
def _build(spec: CodeSpec) -> Code:
    p = dict(spec.params)
    if spec.family == "none":
        return None
    if spec.family == "hamming":
        return hamming_code(p["m"])
    if spec.family == "cyclic":
        g, n = cyclic_default_generator(p["m"])
        return cyclic_code(g, n)
    if spec.family == "conv":
        return convolutional_code(p["rate_den"], p["K"])
    if spec.family == "golay":
        return golay_code(extended=p["n"] == 24)
    if spec.family == "rm":
        return reed_muller_code(p["r"], p["m"])
    raise InvalidParameterError(f"unknown code family {spec.family!r}")


def _parse_kv(body: str) -> dict[str, str]:
    out = {}
    for item in filter(None, body.split(",")):
        if "=" not in item:
            raise InvalidParameterError(f"expected key=value, got {item!r}")
        k, v = item.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def _int(d, key, text):
    try:
        return int(d[key])
    except (KeyError, ValueError):
        raise InvalidParameterError(f"{text!r}: missing or non-integer {key!r}") from None


def parse_code_spec(text: str) -> CodeSpec:
    """Parse ``none``, ``hamming:m=6``, ``cyclic:m=4``, ``conv:rate=1/2,K=6``,
    ``golay:23``, ``golay:24`` or ``rm:r=1,m=4``."""
    text = text.strip()
    family, _, body = text.partition(":")
    family = family.lower()
    if family == "none" and not body:
        return CodeSpec("none")
    if family in ("hamming", "cyclic"):
        kv = _parse_kv(body)
        m = _int(kv, "m", text)
        if not 3 <= m <= 8:
            raise InvalidParameterError(f"{text!r}: m must be in 3..8")
        return CodeSpec(family, (("m", m),))
    if family == "conv":
        kv = _parse_kv(body)
        try:
            rate = Fraction(kv["rate"])
        except (KeyError, ValueError, ZeroDivisionError):
            raise InvalidParameterError(f"{text!r}: missing or malformed rate") from None
        if rate not in (Fraction(1, 2), Fraction(1, 3)):
            raise InvalidParameterError(f"{text!r}: rate must be 1/2 or 1/3")
        K = _int(kv, "K", text)
        if not 3 <= K <= 14:
            raise InvalidParameterError(f"{text!r}: K must be in 3..14")
        return CodeSpec("conv", (("rate_den", rate.denominator), ("K", K)))
    if family == "golay":
        if body not in ("23", "24"):
            raise InvalidParameterError(f"{text!r}: Golay length must be 23 or 24")
        return CodeSpec("golay", (("n", int(body)),))
    if family == "rm":
        kv = _parse_kv(body)
        r, m = _int(kv, "r", text), _int(kv, "m", text)
        if not 0 < r < m <= 5:
            raise InvalidParameterError(f"{text!r}: need 0 < r < m <= 5")
        return CodeSpec("rm", (("r", r), ("m", m)))
    raise InvalidParameterError(f"unrecognised code spec {text!r}")


def encode_stream(spec: CodeSpec, bits) -> np.ndarray:
    """Encode a whole bit stream.

    Block codes cut the stream into k-bit messages, zero-padding the last
    one; convolutional codes encode the stream in one pass with a single
    termination.
    """
    bits = np.ascontiguousarray(as_bits(bits))
    code = spec.build()
    if code is None:
        return bits.copy()
    if isinstance(code, ConvolutionalCode):
        return code.encode(bits) if bits.size else bits.copy()
    n_blocks = -(-bits.shape[0] // code.k)
    padded = np.zeros(n_blocks * code.k, dtype=np.uint8)
    padded[: bits.shape[0]] = bits
    return code.encode_blocks(padded.reshape(n_blocks, code.k)).reshape(-1)
