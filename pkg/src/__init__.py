"""PD-PIAG Bench: delayed primal-dual incremental gradient solver and benchmarks."""
