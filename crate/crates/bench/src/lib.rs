//! Criterion benchmarks for `rmt-tw`; see `benches/numerics.rs`.
