"""Coded-OFDM PAPR simulation: GF(2) algebra, five binary code families,
multicarrier synthesis and Monte-Carlo CCDF statistics."""
from .codes import (
    CodeSpec,
    ConvolutionalCode,
    LinearBlockCode,
    cyclic_encode,
    encode_stream,
    golay_code,
    hamming_code,
    parse_code_spec,
    reed_muller_code,
)
from .harness import ExperimentConfig, emit_report, run_experiment, run_pipeline
from .ofdm import OfdmConfig, map_bpsk, map_qam16, papr_db, synthesize
from .stats import empirical_ccdf, papr_at_ccdf, theoretical_ccdf

__version__ = "0.1.0"
