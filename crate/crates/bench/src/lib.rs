//! Criterion benchmarks for `pqcol`; see `benches/`.
