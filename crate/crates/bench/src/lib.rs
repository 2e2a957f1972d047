//! Criterion benchmarks for the field and matrix kernels live in `benches/`.
