//! Criterion benchmarks for `qmwall`; see `benches/invariants.rs`.
