//! Criterion benchmarks for `qtradeoff`; run with `cargo bench -p qtradeoff-bench`.
