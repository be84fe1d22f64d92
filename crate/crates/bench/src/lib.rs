//! Criterion benchmarks for the PHY kernels and the Monte Carlo engine.
//! Run with `cargo bench -p coexsim-bench`.
