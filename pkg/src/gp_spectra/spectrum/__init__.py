from .asymptotics import (
    AsymptoticPrediction,
    AsymptoticsReport,
    Formula,
    predict,
    verify_asymptotics,
)
from .census import IntervalCensus, interval_census
from .cutoff import KvCutoff, exact_min_n, kv_nonreal_cutoff, nonreal_modes, real_map
from .realzeros import RealZero, real_zero_scan
from .slice import Method, SliceStatus, SpectrumSlice, compute_slice

__all__ = [
    "AsymptoticPrediction",
    "AsymptoticsReport",
    "Formula",
    "IntervalCensus",
    "KvCutoff",
    "Method",
    "RealZero",
    "SliceStatus",
    "SpectrumSlice",
    "compute_slice",
    "exact_min_n",
    "interval_census",
    "kv_nonreal_cutoff",
    "nonreal_modes",
    "predict",
    "real_map",
    "real_zero_scan",
    "verify_asymptotics",
]
