"""Time the numba kernels against their numpy fallbacks.

    python benchmarks/bench_kernels.py [--repeat 5]

Both variants are called directly, so the PAPR_LAB_NO_NUMBA flag does not
matter here. The first numba call (JIT compile) is excluded from timing.
"""
import argparse
import timeit

import numpy as np

from papr_lab import kernels
from papr_lab._accel import HAVE_NUMBA
from papr_lab.codes import convolutional_code, cyclic_default_generator, golay_code, reed_muller_code


def cases(rng):
    conv = convolutional_code(2, 9)
    taps = np.array(conv.taps, dtype=np.int64)
    bits = rng.integers(0, 2, 2_000_000).astype(np.uint8)
    yield "conv_encode 1/2 K=9, 2e6 bits", (bits, taps, conv.K), kernels.conv_encode_numba, kernels.conv_encode_numpy

    g, n = cyclic_default_generator(8)
    msgs = rng.integers(0, 2, (20_000, n - 8)).astype(np.uint8)
    gb = g.bits(9)
    yield f"cyclic_parity ({n},{n - 8}) x 2e4", (msgs, gb), kernels.cyclic_parity_numba, kernels.cyclic_parity_numpy

    for code in (golay_code(True), reed_muller_code(2, 5)):
        masks = np.array([sum(int(b) << j for j, b in enumerate(row)) for row in code.G], dtype=np.uint64)
        yield (f"weight_distribution {code.name} (2^{code.k} words)", (masks, code.n),
               kernels.weight_distribution_numba, kernels.weight_distribution_numpy)

    power = rng.exponential(size=(20_000, 256))
    yield "papr_rows 2e4 x 256", (power,), kernels.papr_rows_numba, kernels.papr_rows_numpy


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not HAVE_NUMBA:
        print("numba is not installed; the numba column runs the plain-Python loops")

    print(f"{'kernel':<52}{'numba ms':>10}{'numpy ms':>10}{'speedup':>9}")
    for name, call_args, fast, slow in cases(np.random.default_rng(0)):
        fast(*call_args)  # compile
        t_fast = min(timeit.repeat(lambda: fast(*call_args), number=1, repeat=args.repeat))
        t_slow = min(timeit.repeat(lambda: slow(*call_args), number=1, repeat=args.repeat))
        print(f"{name:<52}{t_fast * 1e3:>10.2f}{t_slow * 1e3:>10.2f}{t_slow / t_fast:>8.1f}x")


if __name__ == "__main__":
    main()
