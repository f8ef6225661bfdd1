"""Offline scoring benchmarks for SurfBench."""
