"""``papr-lab`` command line."""
from __future__ import annotations

import argparse
import logging
import sys

import numpy as np

from .codes import ConvolutionalCode, free_distance, parse_code_spec
from .errors import PaprLabError
from .gf2core import MAX_ENUM_K, min_distance_exhaustive
from .harness import ExperimentConfig, bundled_text_path, emit_report, format_table, run_experiment


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="papr-lab", description="PAPR of coded OFDM signals")
    sub = p.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a Monte-Carlo PAPR experiment")
    run.add_argument("--subcarriers", type=int, default=64)
    run.add_argument("--mod", choices=["bpsk", "qam16"], default="qam16")
    run.add_argument("--oversample", type=int, default=4)
    run.add_argument("--frames", type=int, default=20000)
    run.add_argument("--seed", type=int, default=1)
    run.add_argument("--input", default="random",
                     help="'random', 'bundled' (packaged public-domain text) or a file path")
    run.add_argument("--bit-order", choices=["msb", "lsb"], default="msb",
                     help="bit order used to expand input file bytes")
    run.add_argument("--code", action="append", dest="codes", metavar="SPEC",
                     help="code spec, repeatable (e.g. hamming:m=6, conv:rate=1/2,K=6, rm:r=1,m=4)")
    run.add_argument("--ccdf-level", type=float, default=0.01)
    run.add_argument("--out-dir", default=None)
    run.add_argument("--format", default="csv,json")
    run.add_argument("--workers", type=int, default=1)
    run.add_argument("-v", "--verbose", action="store_true")

    codes = sub.add_parser("codes", help="inspect code constructions")
    csub = codes.add_subparsers(dest="codes_command", required=True)
    show = csub.add_parser("show", help="print parameters and generator of a code spec")
    show.add_argument("spec")
    return p


def _cmd_run(args) -> int:
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    source = str(bundled_text_path()) if args.input == "bundled" else args.input
    config = ExperimentConfig(
        subcarriers=args.subcarriers,
        modulation=args.mod,
        oversample=args.oversample,
        frames=args.frames,
        seed=args.seed,
        input=source,
        codes=tuple(args.codes or ["none"]),
        ccdf_level=args.ccdf_level,
        workers=args.workers,
        bit_order=args.bit_order,
    )
    report = run_experiment(config)
    print(format_table(report))
    if args.out_dir:
        formats = [f.strip() for f in args.format.split(",") if f.strip()]
        for path in emit_report(report, args.out_dir, formats):
            print(f"wrote {path}")
    return 0


def _cmd_codes_show(args) -> int:
    spec = parse_code_spec(args.spec)
    code = spec.build()
    if code is None:
        print("none: uncoded (rate 1)")
        return 0
    if isinstance(code, ConvolutionalCode):
        print(code.name)
        print(f"K = {code.K}, rate = 1/{code.n_out}")
        print("generators (octal): " + " ".join(f"{t:o}" for t in code.taps))
        print(f"free distance = {free_distance(code)}")
        return 0
    print(code.name)
    print(f"n = {code.n}, k = {code.k}, rate = {code.rate:.6f}")
    if code.k <= MAX_ENUM_K:
        print(f"d_min = {min_distance_exhaustive(code)}")
    else:
        print("d_min = (not enumerable)")
    print("G =")
    for row in np.asarray(code.G):
        print("  " + "".join(map(str, row)))
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "run":
            return _cmd_run(args)
        return _cmd_codes_show(args)
    except (PaprLabError, OSError) as exc:
        print(f"papr-lab: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
