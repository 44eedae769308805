//! Criterion benchmarks for `sgweil-core`; see `benches/`.
