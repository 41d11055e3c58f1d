"""Inner loops of the simulator, each in a numba and a numpy flavour.

Every kernel ``foo`` has ``foo_numba`` (explicit loops, compiled with
``@njit`` when available) and ``foo_numpy`` (vectorized). The public
name ``foo`` points at whichever backend :mod:`papr_lab._accel` selected.
The bit-level kernels agree exactly across flavours and the float kernel
agrees to rounding; the test suite checks both.
"""
import numpy as np

from ._accel import USE_NUMBA, optional_njit


# -- convolutional encoding ------------------------------------------------

@optional_njit(cache=True)
def conv_encode_numba(bits, taps, K):
    n_in = bits.shape[0]
    n_out = taps.shape[0]
    steps = n_in + K - 1
    out = np.zeros(steps * n_out, dtype=np.uint8)
    mask = (1 << K) - 1
    state = 0
    for t in range(steps):
        b = bits[t] if t < n_in else 0
        # bit 0 holds the newest input
        state = ((state << 1) | b) & mask
        for j in range(n_out):
            v = state & taps[j]
            parity = 0
            while v:
                parity ^= 1
                v &= v - 1
            out[t * n_out + j] = parity
    return out


def conv_encode_numpy(bits, taps, K):
    bits = np.asarray(bits, dtype=np.int32)
    n_out = len(taps)
    steps = bits.shape[0] + K - 1
    out = np.empty((steps, n_out), dtype=np.uint8)
    for j, g in enumerate(taps):
        # impulse response index = delay, so tap bit d multiplies input d steps old
        h = np.array([(int(g) >> d) & 1 for d in range(K)], dtype=np.int32)
        out[:, j] = np.convolve(bits, h) & 1
    return out.reshape(-1)


# -- systematic cyclic parity (remainder of X^(n-k) u(X) mod g(X)) ---------

@optional_njit(cache=True)
def cyclic_parity_numba(messages, g):
    """``g`` holds ascending coefficients, length n-k+1, leading term set."""
    n_blocks, k = messages.shape
    r = g.shape[0] - 1
    out = np.zeros((n_blocks, r), dtype=np.uint8)
    reg = np.zeros(r, dtype=np.uint8)
    for b in range(n_blocks):
        for i in range(r):
            reg[i] = 0
        # feed message from highest power down (LFSR division)
        for i in range(k - 1, -1, -1):
            fb = messages[b, i] ^ reg[r - 1]
            for j in range(r - 1, 0, -1):
                reg[j] = reg[j - 1] ^ (fb & g[j])
            reg[0] = fb & g[0]
        for i in range(r):
            out[b, i] = reg[i]
    return out


def cyclic_parity_matrix(g, k):
    """Row i = coefficients of X^(n-k+i) mod g(X)."""
    g = np.asarray(g, dtype=np.uint8)
    r = g.shape[0] - 1
    P = np.zeros((k, r), dtype=np.uint8)
    rem = np.zeros(r + 1, dtype=np.uint8)
    rem[r] = 1  # X^r, reduced below
    for i in range(k):
        if rem[r]:
            rem ^= g
        P[i] = rem[:r]
        rem = np.roll(rem, 1)
        rem[0] = 0
    return P


def cyclic_parity_numpy(messages, g):
    messages = np.asarray(messages, dtype=np.uint8)
    P = cyclic_parity_matrix(g, messages.shape[1])
    return (messages.astype(np.int64) @ P.astype(np.int64) & 1).astype(np.uint8)


# -- weight enumeration ----------------------------------------------------

@optional_njit(cache=True)
def _popcount64(x):
    c = 0
    one = np.uint64(1)
    while x:
        x &= x - one
        c += 1
    return c


@optional_njit(cache=True)
def weight_distribution_numba(rows, n):
    """Gray-code walk over all 2^k messages; ``rows`` are uint64 bitmasks."""
    k = rows.shape[0]
    counts = np.zeros(n + 1, dtype=np.int64)
    cw = np.uint64(0)
    counts[0] += 1
    for i in range(1, 1 << k):
        # bit that flips between gray(i-1) and gray(i)
        j = 0
        t = i
        while (t & 1) == 0:
            t >>= 1
            j += 1
        cw ^= rows[j]
        counts[_popcount64(cw)] += 1
    return counts


def weight_distribution_numpy(rows, n, chunk=1 << 16):
    rows = np.asarray(rows, dtype=np.uint64)
    k = rows.shape[0]
    counts = np.zeros(n + 1, dtype=np.int64)
    total = 1 << k
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.uint64)
        cw = np.zeros(idx.shape[0], dtype=np.uint64)
        for i in range(k):
            sel = ((idx >> np.uint64(i)) & np.uint64(1)).astype(bool)
            cw[sel] ^= rows[i]
        w = np.unpackbits(cw.view(np.uint8).reshape(-1, 8), axis=1).sum(axis=1)
        counts += np.bincount(w, minlength=n + 1)[: n + 1]
    return counts


# -- per-frame peak-to-mean ------------------------------------------------

@optional_njit(cache=True)
def papr_rows_numba(power):
    F, M = power.shape
    out = np.empty(F, dtype=np.float64)
    for f in range(F):
        peak = 0.0
        acc = 0.0
        for j in range(M):
            v = power[f, j]
            acc += v
            if v > peak:
                peak = v
        out[f] = 10.0 * np.log10(peak * M / acc)
    return out


def papr_rows_numpy(power):
    power = np.asarray(power, dtype=np.float64)
    return 10.0 * np.log10(power.max(axis=1) / power.mean(axis=1))


if USE_NUMBA:
    conv_encode = conv_encode_numba
    cyclic_parity = cyclic_parity_numba
    weight_distribution = weight_distribution_numba
    papr_rows = papr_rows_numba
else:
    conv_encode = conv_encode_numpy
    cyclic_parity = cyclic_parity_numpy
    weight_distribution = weight_distribution_numpy
    papr_rows = papr_rows_numpy
