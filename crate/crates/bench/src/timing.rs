use std::time::{Duration, Instant};

/// A timed measurement: repetitions per cell and the median cell time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Measurement {
    pub reps: u64,
    pub seconds: f64,
    /// Whether every repetition passed its check.
    pub verified: bool,
}

/// Times `step`, which performs one repetition and reports whether its
/// result checked out. The repetition count starts at `start_reps` and
/// doubles until a cell takes at least `min_cell`; then `cells` cells are
/// timed and the median is reported.
pub fn measure(mut step: impl FnMut() -> bool, start_reps: u64, min_cell: Duration, cells: usize) -> Measurement {
    let mut verified = true;
    let mut cell = |reps: u64, verified: &mut bool| {
        let t = Instant::now();
        let mut ok = true;
        for _ in 0..reps {
            ok &= step();
        }
        let e = t.elapsed();
        *verified &= ok;
        e
    };
    let mut reps = start_reps.max(1);
    loop {
        let e = cell(reps, &mut verified);
        if e >= min_cell || reps >= 1 << 40 {
            break;
        }
        // jump close to the target, at least doubling
        let scale = (min_cell.as_secs_f64() / e.as_secs_f64().max(1e-9)).ceil() as u64;
        reps = reps.saturating_mul(scale.clamp(2, 1 << 20));
    }
    let mut times: Vec<f64> = (0..cells.max(1)).map(|_| cell(reps, &mut verified).as_secs_f64()).collect();
    times.sort_by(f64::total_cmp);
    Measurement {
        reps,
        seconds: times[times.len() / 2],
        verified,
    }
}
