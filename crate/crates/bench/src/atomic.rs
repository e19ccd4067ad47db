use std::hint::black_box;

use ffdot::{
    FiniteField, FloatField, FullTables, MontgomeryContext, RemainderField, Storage, Width, ZechTables, ZpzField,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::{Record, STATUS_MISMATCH, STATUS_OK};
use crate::spec::BenchSpec;
use crate::timing::measure;

pub const REPRESENTATIONS: &[&str] = &["rem", "zpz32", "zpz64", "float", "zech", "zech-full", "mont32", "mont64"];

pub const OPS: [&str; 7] = ["add", "sub", "neg", "mul", "div", "axpy", "axpyin"];

/// One row per (representation, operation, prime).
pub fn run_atomic(spec: &BenchSpec) -> Vec<Record> {
    let mut out = Vec::new();
    for &p in &spec.primes {
        for repr in &spec.representations {
            out.extend(rows_for(spec, repr, p));
        }
    }
    out
}

fn rows_for(spec: &BenchSpec, repr: &str, p: u64) -> Vec<Record> {
    let skipped = |why: String| -> Vec<Record> {
        OPS.iter().map(|op| Record::skipped("atomic", repr, op, p, spec.dim, &why)).collect()
    };
    let r = match repr {
        "rem" => RemainderField::new(p).map(|f| time_ops(spec, repr, p, &f)),
        "zpz32" => ZpzField::new(p, Width::Bits32, Storage::Unsigned).map(|f| time_ops(spec, repr, p, &f)),
        "zpz64" => ZpzField::new(p, Width::Bits64, Storage::Unsigned).map(|f| time_ops(spec, repr, p, &f)),
        "float" => FloatField::new(p).map(|f| time_ops(spec, repr, p, &f)),
        "zech" => ZechTables::prime(p).map(|f| time_ops(spec, repr, p, &f)),
        "zech-full" => ZechTables::prime(p)
            .and_then(|t| FullTables::new(&t))
            .map(|f| time_ops(spec, repr, p, &f)),
        "mont32" => MontgomeryContext::new(p, Width::Bits32).map(|f| time_ops(spec, repr, p, &f)),
        "mont64" => MontgomeryContext::new(p, Width::Bits64).map(|f| time_ops(spec, repr, p, &f)),
        _ => return skipped(format!("unknown representation {repr:?}")),
    };
    r.unwrap_or_else(|e| skipped(e.to_string()))
}

/// Exact expected value of `op` on canonical residues.
fn expected(op: &str, p: u64, x: u64, y: u64, z: u64) -> u64 {
    let (p, x, y, z) = (p as u128, x as u128, y as u128, z as u128);
    (match op {
        "add" => (x + y) % p,
        "sub" => (x + p - y) % p,
        "neg" => (p - x) % p,
        "mul" => x * y % p,
        "axpy" | "axpyin" => (x * y + z) % p,
        _ => unreachable!("division is checked by multiplying back"),
    }) as u64
}

fn check(op: &str, p: u64, x: u64, y: u64, z: u64, got: u64) -> bool {
    if op == "div" {
        return got < p && (got as u128 * y as u128) % p as u128 == x as u128;
    }
    got == expected(op, p, x, y, z)
}

fn time_ops<F: FiniteField>(spec: &BenchSpec, repr: &str, p: u64, f: &F) -> Vec<Record> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed ^ p);
    let dim = spec.dim;
    let x: Vec<u64> = (0..dim).map(|_| rng.gen_range(0..p)).collect();
    // nonzero so that division is defined
    let y: Vec<u64> = (0..dim).map(|_| rng.gen_range(1..p.max(2))).collect();
    let z: Vec<u64> = (0..dim).map(|_| rng.gen_range(0..p)).collect();
    let enc = |v: &[u64]| -> Vec<F::Elem> { v.iter().map(|&e| f.encode(e)).collect() };
    let (ex, ey, ez) = (enc(&x), enc(&y), enc(&z));
    let mut out = vec![f.zero(); dim];

    OPS.iter()
        .map(|&op| {
            let apply = |out: &mut [F::Elem]| {
                let (ex, ey, ez) = (black_box(&ex), black_box(&ey), black_box(&ez));
                for i in 0..dim {
                    out[i] = match op {
                        "add" => f.add(ex[i], ey[i]),
                        "sub" => f.sub(ex[i], ey[i]),
                        "neg" => f.neg(ex[i]),
                        "mul" => f.mul(ex[i], ey[i]),
                        "div" => f.div(ex[i], ey[i]).unwrap_or(ex[i]),
                        "axpy" => f.axpy(ex[i], ey[i], ez[i]),
                        _ => f.axpyin(ez[i], ex[i], ey[i]),
                    };
                }
            };
            apply(&mut out);
            let full = (0..dim).all(|i| check(op, p, x[i], y[i], z[i], f.decode(out[i])));
            let mut spot = 0usize;
            let m = measure(
                || {
                    apply(&mut out);
                    if dim == 0 {
                        return true;
                    }
                    spot = (spot + 7919) % dim;
                    check(op, p, x[spot], y[spot], z[spot], f.decode(out[spot]))
                },
                spec.reps,
                spec.min_cell,
                spec.cells,
            );
            Record {
                experiment: "atomic".into(),
                representation: repr.into(),
                kernel: op.into(),
                prime: p,
                dim,
                reps: m.reps,
                seconds: m.seconds,
                mops: dim as f64 * m.reps as f64 / (m.seconds.max(1e-12) * 1e6),
                reductions: 0,
                corrections: 0,
                status: if full && m.verified { STATUS_OK } else { STATUS_MISMATCH }.into(),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::time::Duration;

    #[test]
    fn one_row_per_representation_and_operation() {
        let mut s = BenchSpec::new(crate::Experiment::Atomic);
        s.primes = vec![32749];
        s.min_cell = Duration::ZERO;
        s.cells = 1;
        let rows = run_atomic(&s);
        assert_eq!(rows.len(), REPRESENTATIONS.len() * OPS.len());
        assert!(rows.iter().all(|r| r.status == STATUS_OK), "{rows:?}");
        s.representations.clear();
        assert!(run_atomic(&s).is_empty());
    }

    #[test]
    fn inadmissible_representation_is_skipped() {
        let mut s = BenchSpec::new(crate::Experiment::Atomic);
        s.primes = vec![65521];
        s.representations = vec!["mont32".into(), "nope".into()];
        s.min_cell = Duration::ZERO;
        s.cells = 1;
        let rows = run_atomic(&s);
        assert_eq!(rows.len(), 2 * OPS.len());
        assert!(rows.iter().all(Record::is_skipped));
    }
}
