//! Criterion benchmarks for the Bernoulli methods live in `benches/`.
