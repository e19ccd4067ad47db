//! Benchmark harness: atomic field operations over vectors and dot-product
//! throughput sweeps across prime sizes. Every timed result is checked
//! against the exact oracle, so a run doubles as a soak test.

pub mod atomic;
pub mod dotprod;
pub mod report;
pub mod spec;
pub mod timing;

pub use report::Record;
pub use spec::{BenchSpec, Experiment};

/// Runs the experiment described by `spec`.
pub fn run(spec: &BenchSpec) -> Vec<Record> {
    match spec.experiment {
        Experiment::Atomic => atomic::run_atomic(spec),
        Experiment::Dotprod => dotprod::run_dotprod(spec),
    }
}

/// Whether every executed cell matched the oracle.
pub fn all_verified(records: &[Record]) -> bool {
    records.iter().all(|r| r.status != report::STATUS_MISMATCH)
}
