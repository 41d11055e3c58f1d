"""Monte-Carlo experiment runner: source bits -> encoder -> mapper ->
multicarrier synthesis -> per-frame PAPR -> CCDF read-out and reports."""
from __future__ import annotations

import csv
import json
import logging
import re
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from importlib import resources
from pathlib import Path
from typing import Sequence

import numpy as np

from . import _accel
from .codes import CodeSpec, ConvolutionalCode, encode_stream, parse_code_spec
from .errors import InvalidParameterError
from .ofdm import OfdmConfig, map_bits, papr_db, synthesize
from .stats import (
    CcdfCurve,
    ReductionRow,
    default_thresholds,
    empirical_ccdf,
    papr_at_ccdf,
    theoretical_ccdf,
    theoretical_papr_db,
)

log = logging.getLogger(__name__)

PRNG_NAME = "numpy.random.PCG64 via default_rng(seed)"
CHUNK_FRAMES = 4096
UNCODED = CodeSpec("none")


def bundled_text_path() -> Path:
    return Path(str(resources.files("papr_lab") / "data" / "corpus.txt"))


@dataclass(frozen=True)
class ExperimentConfig:
    subcarriers: int = 64
    modulation: str = "qam16"
    oversample: int = 4
    frames: int = 20000
    seed: int = 1
    input: str = "random"
    codes: tuple = (UNCODED,)
    ccdf_level: float = 0.01
    workers: int = 1
    bit_order: str = "msb"

    def __post_init__(self):
        if self.frames < 1:
            raise InvalidParameterError(f"frames must be >= 1, got {self.frames}")
        if not 0 < self.ccdf_level < 1:
            raise InvalidParameterError(f"ccdf level must lie in (0, 1), got {self.ccdf_level}")
        if not self.codes:
            raise InvalidParameterError("at least one code spec is required")
        codes = tuple(parse_code_spec(c) if isinstance(c, str) else c for c in self.codes)
        object.__setattr__(self, "codes", codes)
        self.ofdm  # validates N, L and modulation

    @property
    def ofdm(self) -> OfdmConfig:
        return OfdmConfig(N=self.subcarriers, L=self.oversample, modulation=self.modulation)

    def echo(self) -> dict:
        d = asdict(self)
        d["codes"] = [c.label for c in self.codes]
        d.pop("workers")
        return d


@dataclass
class ExperimentReport:
    config: ExperimentConfig
    rows: list
    curves: dict
    theoretical: np.ndarray
    samples: dict = field(repr=False, default_factory=dict)
    meta: dict = field(default_factory=dict)


def ingest_bits(source, needed: int, seed: int = 0, bit_order: str = "msb") -> np.ndarray:
    """Exactly ``needed`` source bits.

    ``"random"`` draws from a seeded PCG64 generator; anything else is a
    file path whose bytes are expanded (MSB first unless ``bit_order`` is
    ``"lsb"``) and cycled from the start as needed.
    """
    if needed < 0:
        raise InvalidParameterError(f"cannot ingest {needed} bits")
    if bit_order not in ("msb", "lsb"):
        raise InvalidParameterError(f"bit order must be 'msb' or 'lsb', got {bit_order!r}")
    if str(source) == "random":
        return np.random.default_rng(seed).integers(0, 2, needed, dtype=np.uint8)
    data = Path(source).read_bytes()
    if not data:
        raise InvalidParameterError(f"input file {source} is empty")
    bits = np.unpackbits(np.frombuffer(data, dtype=np.uint8), bitorder="big" if bit_order == "msb" else "little")
    return np.resize(bits, needed).astype(np.uint8)


def source_bits_needed(spec: CodeSpec, coded_bits: int) -> int:
    code = spec.build()
    if code is None:
        return coded_bits
    if isinstance(code, ConvolutionalCode):
        return -(-coded_bits // code.n_out)
    return -(-coded_bits // code.n) * code.k


def _frame_paprs(frames_bits: np.ndarray, ofdm: OfdmConfig) -> np.ndarray:
    symbols = map_bits(frames_bits, ofdm.modulation, ofdm.N)
    return papr_db(synthesize(symbols, ofdm.L))


def run_pipeline(config: ExperimentConfig, spec: CodeSpec):
    """PAPR samples (one per frame) for a single code spec, plus metadata."""
    ofdm = config.ofdm
    per_frame = ofdm.bits_per_frame
    needed = config.frames * per_frame
    n_src = source_bits_needed(spec, needed)
    src = ingest_bits(config.input, n_src, config.seed, config.bit_order)
    coded = encode_stream(spec, src)
    if coded.shape[0] < needed:
        coded = np.concatenate([coded, np.zeros(needed - coded.shape[0], dtype=np.uint8)])
    frames = coded[:needed].reshape(config.frames, per_frame)

    chunks = [frames[i:i + CHUNK_FRAMES] for i in range(0, config.frames, CHUNK_FRAMES)]
    if config.workers > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            parts = list(pool.map(lambda c: _frame_paprs(c, ofdm), chunks))
    else:
        parts = [_frame_paprs(c, ofdm) for c in chunks]
    samples = np.concatenate(parts)
    meta = {
        "label": spec.label,
        "code_rate": spec.rate,
        "source_bits": int(n_src),
        "coded_bits": int(coded.shape[0]),
        "frames": config.frames,
    }
    return samples, meta


def run_experiment(config: ExperimentConfig) -> ExperimentReport:
    t0 = time.perf_counter()
    specs = [UNCODED] + [s for s in config.codes if s != UNCODED]
    samples, metas = {}, {}
    for spec in specs:
        t = time.perf_counter()
        samples[spec.label], metas[spec.label] = run_pipeline(config, spec)
        log.info("%s: %d frames in %.2fs", spec.label, config.frames, time.perf_counter() - t)

    level = config.ccdf_level
    base = samples[UNCODED.label]
    base_db = papr_at_ccdf(base, level)
    rows = []
    for spec in specs:
        coded_db = base_db if spec == UNCODED else papr_at_ccdf(samples[spec.label], level)
        rows.append(ReductionRow(spec.label, base_db, coded_db, base_db - coded_db, metas[spec.label]["code_rate"]))

    grid = default_thresholds(np.concatenate(list(samples.values())))
    curves = {label: empirical_ccdf(s, grid) for label, s in samples.items()}
    theory = theoretical_ccdf(config.subcarriers, 10.0 ** (grid / 10.0))
    meta = {
        "prng": PRNG_NAME,
        "theoretical_papr_db": theoretical_papr_db(config.subcarriers, level),
        "wall_time_s": time.perf_counter() - t0,
        "backend": _accel.backend_name(),
    }
    return ExperimentReport(config, rows, curves, np.asarray(theory), samples, meta)


def _slug(label: str) -> str:
    return re.sub(r"[^A-Za-z0-9]+", "_", label).strip("_")


def _num(x: float) -> str:
    return format(float(x), ".10g")


def write_ccdf_csv(path: Path, curve: CcdfCurve, theoretical=None) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["threshold_db", "ccdf_empirical", "ccdf_theoretical"])
        for i, (x, p) in enumerate(zip(curve.thresholds_db, curve.probabilities)):
            w.writerow([_num(x), _num(p), "" if theoretical is None else _num(theoretical[i])])


def summary_rows(report: ExperimentReport) -> list[dict]:
    return [
        {
            "label": r.label,
            "code_rate": r.code_rate,
            "uncoded_papr_db": r.uncoded_papr_db,
            "coded_papr_db": r.coded_papr_db,
            "reduction_db": r.reduction_db,
            "frames": report.config.frames,
            "seed": report.config.seed,
        }
        for r in report.rows
    ]


def emit_report(report: ExperimentReport, out_dir, formats: Sequence[str] = ("csv", "json")) -> list[Path]:
    """Write CCDF curves and the summary table; returns the files written.

    Wall-clock and backend details go to ``run_meta.json`` so every other
    file is a pure function of the seed and configuration.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    unknown = set(formats) - {"csv", "json"}
    if unknown:
        raise InvalidParameterError(f"unknown output format(s): {sorted(unknown)}")
    written = []
    rows = summary_rows(report)
    if "csv" in formats:
        for label, curve in report.curves.items():
            path = out / f"ccdf_{_slug(label)}.csv"
            write_ccdf_csv(path, curve, report.theoretical if label == UNCODED.label else None)
            written.append(path)
        path = out / "summary.csv"
        with open(path, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=list(rows[0]), lineterminator="\n")
            w.writeheader()
            for r in rows:
                w.writerow({k: _num(v) if isinstance(v, float) else v for k, v in r.items()})
        written.append(path)
    if "json" in formats:
        path = out / "summary.json"
        doc = {
            "prng": report.meta["prng"],
            "config": report.config.echo(),
            "theoretical_papr_db": report.meta["theoretical_papr_db"],
            "rows": rows,
        }
        path.write_text(json.dumps(doc, indent=2) + "\n")
        written.append(path)
    meta_path = out / "run_meta.json"
    meta_path.write_text(json.dumps(report.meta, indent=2) + "\n")
    written.append(meta_path)
    return written


def format_table(report: ExperimentReport) -> str:
    lines = [f"{'code':<24}{'uncoded dB':>12}{'coded dB':>12}{'reduction':>12}{'rate':>9}"]
    for r in report.rows:
        lines.append(
            f"{r.label:<24}{r.uncoded_papr_db:>12.4f}{r.coded_papr_db:>12.4f}{r.reduction_db:>12.4f}{r.code_rate:>9.4f}"
        )
    return "\n".join(lines)
