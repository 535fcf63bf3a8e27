//! Criterion benchmarks for the deciders and solvers; see `benches/`.
