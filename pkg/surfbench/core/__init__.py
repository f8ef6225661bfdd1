"""
Core scoring modules: schemes, metrics, guessing order and the ensemble.
"""

from surfbench.core.config import SurfBenchConfig
from surfbench.core.ensemble import group_weights, score_record, score_sequences
from surfbench.core.scheme import Scheme, decode, encode, load_scheme, load_schemes

__all__ = [
    "SurfBenchConfig",
    "Scheme",
    "decode",
    "encode",
    "load_scheme",
    "load_schemes",
    "group_weights",
    "score_record",
    "score_sequences",
]
