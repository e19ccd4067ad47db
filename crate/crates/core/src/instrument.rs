//! Operation counters compiled only into test builds, so the hot paths stay
//! untouched in normal builds.

#[cfg(test)]
use std::cell::Cell;

#[cfg(test)]
thread_local! {
    static REMAINDERS: Cell<u64> = const { Cell::new(0) };
    static REDCS: Cell<u64> = const { Cell::new(0) };
}

/// Machine remainder `a % p`.
#[inline(always)]
pub(crate) fn rem(a: u64, p: u64) -> u64 {
    #[cfg(test)]
    REMAINDERS.with(|c| c.set(c.get() + 1));
    a % p
}

#[inline(always)]
pub(crate) fn note_redc() {
    #[cfg(test)]
    REDCS.with(|c| c.set(c.get() + 1));
}

/// Remainders and Montgomery reductions executed on this thread since the
/// last reset.
#[cfg(test)]
pub(crate) fn take() -> (u64, u64) {
    (REMAINDERS.with(|c| c.replace(0)), REDCS.with(|c| c.replace(0)))
}
