use std::time::Duration;

use ffdot::numtheory::{is_prime, next_prime, prev_prime};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Experiment {
    Atomic,
    Dotprod,
}

impl Experiment {
    pub fn name(self) -> &'static str {
        match self {
            Experiment::Atomic => "atomic",
            Experiment::Dotprod => "dotprod",
        }
    }

    pub fn default_dim(self) -> usize {
        match self {
            Experiment::Atomic => 256,
            Experiment::Dotprod => 512,
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchSpec {
    pub experiment: Experiment,
    /// Representations for the atomic experiment.
    pub representations: Vec<String>,
    /// Kernels for the dot-product experiment.
    pub kernels: Vec<String>,
    pub primes: Vec<u64>,
    pub dim: usize,
    /// Starting repetition count of a timed cell, scaled up to `min_cell`.
    pub reps: u64,
    pub seed: u64,
    pub min_cell: Duration,
    /// Timed cells per measurement; the median is reported.
    pub cells: usize,
}

impl BenchSpec {
    /// Defaults for `experiment`: every representation or kernel, 50 ms
    /// cells, median of 5; the prime sweep for dot products and 32749 for
    /// atomic operations.
    pub fn new(experiment: Experiment) -> Self {
        Self {
            experiment,
            representations: crate::atomic::REPRESENTATIONS.iter().map(|s| s.to_string()).collect(),
            kernels: crate::dotprod::KERNELS.iter().map(|s| s.to_string()).collect(),
            primes: match experiment {
                Experiment::Atomic => vec![32749],
                Experiment::Dotprod => default_sweep(),
            },
            dim: experiment.default_dim(),
            reps: 1,
            seed: 2003,
            min_cell: Duration::from_millis(50),
            cells: 5,
        }
    }
}

/// Landmark primes always included in the default sweep.
pub const LANDMARK_PRIMES: [u64; 6] = [2897, 32749, 40009, 40499, 46337, 65521];

/// 64 primes spread logarithmically over `[3, 65521]`, plus the landmarks.
pub fn default_sweep() -> Vec<u64> {
    let mut v = log_sweep(3, 65521, 64);
    v.extend(LANDMARK_PRIMES);
    v.sort_unstable();
    v.dedup();
    v
}

/// `points` log-spaced targets in `[min, max]`, each snapped to the nearest
/// prime not below `min`; duplicates are dropped.
pub fn log_sweep(min: u64, max: u64, points: usize) -> Vec<u64> {
    let (lo, hi) = (min.max(2) as f64, max.max(min).max(2) as f64);
    let mut v: Vec<u64> = (0..points)
        .filter_map(|i| {
            let t = if points > 1 { i as f64 / (points - 1) as f64 } else { 0.0 };
            let x = (lo.ln() + t * (hi.ln() - lo.ln())).exp().round() as u64;
            let x = x.clamp(min, max);
            prev_prime(x)
                .filter(|&p| p >= min)
                .or_else(|| next_prime(x.saturating_sub(1)).filter(|&p| p <= max))
        })
        .collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// Parses `p1,p2,...` or `min:max:points`.
pub fn parse_primes(s: &str) -> Result<Vec<u64>, String> {
    let s = s.trim();
    if s.contains(':') {
        let parts: Vec<&str> = s.split(':').collect();
        let [min, max, points] = parts[..] else {
            return Err(format!("expected min:max:points, got {s:?}"));
        };
        let num = |x: &str| x.trim().parse::<u64>().map_err(|e| format!("{x:?}: {e}"));
        let (min, max, points) = (num(min)?, num(max)?, num(points)?);
        if min > max || points == 0 {
            return Err(format!("empty range {s:?}"));
        }
        return Ok(log_sweep(min, max, points as usize));
    }
    s.split(',')
        .filter(|x| !x.trim().is_empty())
        .map(|x| {
            let p = x.trim().parse::<u64>().map_err(|e| format!("{x:?}: {e}"))?;
            if is_prime(p) {
                Ok(p)
            } else {
                Err(format!("{p} is not prime"))
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_sweep_contents() {
        let v = default_sweep();
        assert!(v.iter().all(|&p| is_prime(p) && (3..=65521).contains(&p)));
        assert!(v.len() >= 60);
        for p in LANDMARK_PRIMES {
            assert!(v.contains(&p));
        }
        assert_eq!(v.first(), Some(&3));
        assert!(v.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn prime_lists_and_ranges() {
        assert_eq!(parse_primes("7, 101,32749").unwrap(), vec![7, 101, 32749]);
        assert!(parse_primes("7,9").is_err());
        assert_eq!(parse_primes("").unwrap(), Vec::<u64>::new());
        let r = parse_primes("2800:3000:5").unwrap();
        assert!(r.iter().all(|&p| is_prime(p) && (2800..=3000).contains(&p)));
        assert!(parse_primes("5:3:2").is_err());
        assert!(parse_primes("1:2").is_err());
        assert_eq!(parse_primes("101:101:3").unwrap(), vec![101]);
    }
}
