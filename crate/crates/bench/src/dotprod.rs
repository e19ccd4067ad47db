use std::hint::black_box;

use ffdot::kernels::{
    dot_blocked, dot_blocked_centered, dot_blocked_float, dot_delayed_float, dot_delayed_wide, dot_hybrid,
    dot_montgomery_blocked, dot_naive, dot_overflow, dot_overflow_centered,
};
use ffdot::oracle::oracle_dot;
use ffdot::{
    CenteredField, DotResult, FiniteField, FloatField, KernelConfig, KernelKind, MontgomeryContext, Storage, Width,
    ZechTables, Zpz, ZpzField,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::{Record, STATUS_MISMATCH, STATUS_OK};
use crate::spec::BenchSpec;
use crate::timing::measure;

/// Every kernel the dot-product experiment knows, `<method>-<representation>`.
pub const KERNELS: &[&str] = &[
    "naive-zpz32",
    "naive-zpz64",
    "naive-float",
    "naive-mont32",
    "naive-zech",
    "delayed-int64",
    "delayed-double",
    "block-zpz32",
    "block-zpz64",
    "block-centered32",
    "block-centered64",
    "block-double",
    "block-montgomery32",
    "block-montgomery64",
    "overflow-zpz32",
    "overflow-zpz64",
    "overflow-centered32",
    "overflow-centered64",
    "hybrid-zpz32",
    "hybrid-zpz64",
];

/// Decoded result of one dot product with its instrumented counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Outcome {
    pub value: u64,
    pub reductions: u64,
    pub corrections: u64,
}

pub type Runner = Box<dyn FnMut() -> ffdot::Result<Outcome>>;

type ZpzKernel = fn(&KernelConfig, &[Zpz], &[Zpz]) -> ffdot::Result<DotResult<Zpz>>;

fn outcome<E>(r: DotResult<E>, decode: impl Fn(E) -> u64) -> Outcome {
    Outcome {
        reductions: r.reductions,
        corrections: r.corrections(),
        value: decode(r.value),
    }
}

fn width_of(suffix: &str) -> Width {
    if suffix.ends_with("64") {
        Width::Bits64
    } else {
        Width::Bits32
    }
}

/// Representation column for a kernel name.
pub fn representation_of(kernel: &str) -> &str {
    match kernel.rsplit_once('-').map(|(_, r)| r) {
        Some("double") => "float",
        Some("int64") => "zpz64",
        Some("montgomery32") => "mont32",
        Some("montgomery64") => "mont64",
        Some(r) => r,
        None => kernel,
    }
}

/// Encodes `x` and `y` for `kernel` at `p` and returns a closure running one
/// dot product. Fails with a reason when the prime is not admissible.
pub fn prepare(kernel: &str, p: u64, x: &[u64], y: &[u64]) -> Result<Runner, String> {
    let err = |e: ffdot::Error| e.to_string();
    let (method, repr) = kernel.split_once('-').ok_or_else(|| format!("unknown kernel {kernel:?}"))?;
    let w = width_of(repr);
    let cfg = |kind, width| KernelConfig::new(kind, p, width).map_err(err);
    let zpz = |width| -> Result<(ZpzField, Vec<Zpz>, Vec<Zpz>), String> {
        let f = ZpzField::new(p, width, Storage::Unsigned).map_err(err)?;
        let (a, b) = (x.iter().map(|&v| f.elem(v)).collect(), y.iter().map(|&v| f.elem(v)).collect());
        Ok((f, a, b))
    };
    fn encode_all<F: FiniteField>(f: &F, v: &[u64]) -> Vec<F::Elem> {
        v.iter().map(|&e| f.encode(e)).collect()
    }
    let runner: Runner = match (method, repr) {
        ("naive", "zpz32" | "zpz64") => {
            let (f, a, b) = zpz(w)?;
            Box::new(move || Ok(outcome(dot_naive(&f, black_box(&a), &b)?, |e| e.value())))
        }
        ("naive", "float") => {
            let f = FloatField::new(p).map_err(err)?;
            let (a, b) = (encode_all(&f, x), encode_all(&f, y));
            Box::new(move || Ok(outcome(dot_naive(&f, black_box(&a), &b)?, |e| f.decode(e))))
        }
        ("naive", "mont32") => {
            let f = MontgomeryContext::new(p, Width::Bits32).map_err(err)?;
            let (a, b) = (encode_all(&f, x), encode_all(&f, y));
            Box::new(move || Ok(outcome(dot_naive(&f, black_box(&a), &b)?, |e| f.decode(e))))
        }
        ("naive", "zech") => {
            let f = ZechTables::prime(p).map_err(err)?;
            let (a, b) = (encode_all(&f, x), encode_all(&f, y));
            Box::new(move || Ok(outcome(dot_naive(&f, black_box(&a), &b)?, |e| f.decode(e))))
        }
        ("delayed", "int64") => {
            let c = cfg(KernelKind::DelayedWide, Width::Bits64)?;
            let (_, a, b) = zpz(Width::Bits64)?;
            Box::new(move || Ok(outcome(dot_delayed_wide(&c, black_box(&a), &b)?, |e| e.value())))
        }
        ("delayed" | "block", "double") => {
            let kind = if method == "delayed" { KernelKind::DelayedWide } else { KernelKind::Blocked };
            let c = cfg(kind, Width::Bits53)?;
            let f = FloatField::new(p).map_err(err)?;
            let (a, b) = (encode_all(&f, x), encode_all(&f, y));
            let run = if method == "delayed" { dot_delayed_float } else { dot_blocked_float };
            Box::new(move || Ok(outcome(run(&c, &f, black_box(&a), &b)?, |e| f.decode(e))))
        }
        ("block" | "overflow" | "hybrid", "zpz32" | "zpz64") => {
            let (kind, run): (_, ZpzKernel) = match method {
                "block" => (KernelKind::Blocked, dot_blocked),
                "overflow" => (KernelKind::Overflow, dot_overflow),
                _ => (KernelKind::Hybrid, dot_hybrid),
            };
            let c = cfg(kind, w)?;
            let (_, a, b) = zpz(w)?;
            Box::new(move || Ok(outcome(run(&c, black_box(&a), &b)?, |e| e.value())))
        }
        ("block" | "overflow", "centered32" | "centered64") => {
            let kind = if method == "block" { KernelKind::BlockedCentered } else { KernelKind::OverflowCentered };
            let c = cfg(kind, w)?;
            let f = CenteredField::new(p, w).map_err(err)?;
            let a: Vec<_> = x.iter().map(|&v| f.encode(v)).collect();
            let b: Vec<_> = y.iter().map(|&v| f.encode(v)).collect();
            let run = if method == "block" { dot_blocked_centered } else { dot_overflow_centered };
            Box::new(move || Ok(outcome(run(&c, black_box(&a), &b)?, |e| f.decode(e))))
        }
        ("block", "montgomery32" | "montgomery64") => {
            let c = cfg(KernelKind::MontgomeryBlocked, w)?;
            let f = MontgomeryContext::new(p, w).map_err(err)?;
            let (a, b) = (encode_all(&f, x), encode_all(&f, y));
            Box::new(move || Ok(outcome(dot_montgomery_blocked(&c, &f, black_box(&a), &b)?, |e| f.decode(e))))
        }
        _ => return Err(format!("unknown kernel {kernel:?}")),
    };
    Ok(runner)
}

/// Deterministic input vectors for one prime.
pub fn inputs(seed: u64, p: u64, dim: usize) -> (Vec<u64>, Vec<u64>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ p.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let x = (0..dim).map(|_| rng.gen_range(0..p)).collect();
    let y = (0..dim).map(|_| rng.gen_range(0..p)).collect();
    (x, y)
}

/// One row per (kernel, prime). Inputs are generated outside the timed
/// region and every repetition is compared with the oracle.
pub fn run_dotprod(spec: &BenchSpec) -> Vec<Record> {
    let mut out = Vec::new();
    for &p in &spec.primes {
        let (x, y) = inputs(spec.seed, p, spec.dim);
        let expect = oracle_dot(&x, &y, p).expect("equal lengths");
        for kernel in &spec.kernels {
            out.push(cell(spec, kernel, p, &x, &y, expect));
        }
    }
    out
}

fn cell(spec: &BenchSpec, kernel: &str, p: u64, x: &[u64], y: &[u64], expect: u64) -> Record {
    let repr = representation_of(kernel);
    let skipped = |why: &str| Record::skipped("dotprod", repr, kernel, p, spec.dim, why);
    let mut run = match prepare(kernel, p, x, y) {
        Ok(r) => r,
        Err(why) => return skipped(&why),
    };
    let first = match run() {
        Ok(o) => o,
        Err(e) => return skipped(&e.to_string()),
    };
    let m = measure(|| run().is_ok_and(|o| o.value == expect), spec.reps, spec.min_cell, spec.cells);
    let verified = m.verified && first.value == expect;
    Record {
        experiment: "dotprod".into(),
        representation: repr.into(),
        kernel: kernel.into(),
        prime: p,
        dim: spec.dim,
        reps: m.reps,
        seconds: m.seconds,
        mops: 2.0 * spec.dim as f64 * m.reps as f64 / (m.seconds.max(1e-12) * 1e6),
        reductions: first.reductions,
        corrections: first.corrections,
        status: if verified { STATUS_OK } else { STATUS_MISMATCH }.into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::time::Duration;

    fn quick(kernels: &[&str], primes: &[u64]) -> BenchSpec {
        let mut s = BenchSpec::new(crate::Experiment::Dotprod);
        s.kernels = kernels.iter().map(|k| k.to_string()).collect();
        s.primes = primes.to_vec();
        s.min_cell = Duration::ZERO;
        s.cells = 1;
        s
    }

    #[test]
    fn every_kernel_runs_and_verifies() {
        let rows = run_dotprod(&quick(KERNELS, &[101, 32749]));
        assert_eq!(rows.len(), 2 * KERNELS.len());
        for r in &rows {
            assert_eq!(r.status, STATUS_OK, "{r:?}");
        }
    }

    #[test]
    fn inadmissible_pairs_are_skipped() {
        let rows = run_dotprod(&quick(&["block-montgomery32", "overflow-zpz32", "bogus-kernel"], &[65537]));
        assert!(rows.iter().all(|r| r.is_skipped()), "{rows:?}");
    }

    #[test]
    fn hybrid_steps_where_its_bound_is_crossed() {
        let rows = run_dotprod(&quick(&["block-zpz32", "hybrid-zpz32"], &[2887, 2897, 2903]));
        let red: Vec<(u64, &str, u64)> = rows.iter().map(|r| (r.prime, r.kernel.as_str(), r.reductions)).collect();
        assert_eq!(
            red,
            vec![
                (2887, "block-zpz32", 1),
                (2887, "hybrid-zpz32", 1),
                (2897, "block-zpz32", 1),
                (2897, "hybrid-zpz32", 1),
                (2903, "block-zpz32", 2),
                (2903, "hybrid-zpz32", 1),
            ]
        );
    }

    #[test]
    fn non_timing_columns_are_deterministic() {
        let strip = |v: Vec<Record>| -> Vec<(String, u64, u64, u64, String)> {
            v.into_iter().map(|r| (r.kernel, r.prime, r.reductions, r.corrections, r.status)).collect()
        };
        let s = quick(&["overflow-zpz32", "hybrid-zpz32"], &[40009, 65521]);
        assert_eq!(strip(run_dotprod(&s)), strip(run_dotprod(&s)));
        assert_eq!(representation_of("delayed-double"), "float");
        assert_eq!(representation_of("block-montgomery32"), "mont32");
    }
}
