//! Exact dot products over word-size prime fields.
//!
//! All kernels return the canonical residue of `sum a[i]*b[i] mod p` and
//! differ only in how often they reduce:
//!
//! * naive: one AXPYIN, hence one reduction, per element;
//! * delayed: a single reduction for vectors short enough that the wide
//!   accumulator cannot overflow (`DIM*(p-1)^2 < 2^m`);
//! * blocked: one reduction per block of `K = max{λ : λ(p-1)^2 < 2^m}`
//!   products, doubled roughly fourfold by centered storage;
//! * overflow: let the unsigned accumulator wrap and add `CORR = 2^m mod p`
//!   each time it does (`sum < product` after the add);
//! * hybrid: test for the wrap once per block of
//!   `K = max{λ : λp(p-1) < 2^m}` products, so the correction itself can
//!   never wrap, and reduce once at the end;
//! * Montgomery blocked: accumulate raw products of `aB` forms, which carry
//!   `B^2`, and strip one `B` at the very end.
//!
//! Overflow kernels rely on explicitly wrapping adds. Reduction counts are
//! tallied by each kernel and returned with the value.

use num_traits::{PrimInt, WrappingAdd, WrappingMul, WrappingSub};

use crate::classical::{Centered, CenteredField, Zpz};
use crate::error::{Error, Result};
use crate::field::FiniteField;
use crate::floatrep::{float_max_prime, FloatElem, FloatField};
use crate::montgomery::{Mont, MontgomeryContext};
use crate::numtheory::{is_prime, prev_prime, Width};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KernelKind {
    Naive,
    DelayedWide,
    Blocked,
    BlockedCentered,
    Overflow,
    OverflowCentered,
    Hybrid,
    MontgomeryBlocked,
}

/// Element representation a kernel consumes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Repr {
    /// Any [`FiniteField`]; used by the naive kernel.
    Generic,
    Zpz,
    Centered,
    Float,
    Montgomery,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DotResult<E> {
    pub value: E,
    /// Machine remainders and Montgomery reductions performed.
    pub reductions: u64,
    /// Wraps of the accumulator past the top, each repaired by `+CORR`.
    pub overflows: u64,
    /// Wraps past the bottom (signed kernels), each repaired by `-CORR`.
    pub underflows: u64,
    /// Block-end overflow tests of the hybrid kernel.
    pub checkpoints: u64,
}

impl<E> DotResult<E> {
    fn new(value: E, reductions: u64) -> Self {
        Self {
            value,
            reductions,
            overflows: 0,
            underflows: 0,
            checkpoints: 0,
        }
    }

    pub fn corrections(&self) -> u64 {
        self.overflows + self.underflows
    }
}

/// Largest `λ >= 1` with `λ * w < 2^bits`; `w = 0` has no limit.
fn largest_multiple_below(w: u128, bits: u32) -> u64 {
    if w == 0 {
        return u64::MAX;
    }
    let lim = 1u128 << bits;
    (((lim - 1) / w).clamp(1, u64::MAX as u128)) as u64
}

/// Plain block length: largest `λ` with `λ(p-1)^2 < 2^m`, at least 1.
pub fn lambda_eq1(p: u64, bits: u32) -> u64 {
    let w = (p as u128 - 1).pow(2);
    largest_multiple_below(w, bits)
}

/// Centered block length: largest `λ` with `λ((p-1)/2)^2 < 2^(m-1)`.
pub fn lambda_centered(p: u64, bits: u32) -> u64 {
    let w = ((p as u128 - 1) / 2).pow(2);
    largest_multiple_below(w, bits - 1)
}

/// Hybrid block length: largest `λ` with `λp(p-1) < 2^m`.
pub fn lambda_hybrid(p: u64, bits: u32) -> u64 {
    let w = p as u128 * (p as u128 - 1);
    largest_multiple_below(w, bits)
}

/// `2^m mod p`.
pub fn corr(p: u64, bits: u32) -> u64 {
    ((1u128 << bits) % p as u128) as u64
}

/// Largest prime `p` with `pred(p)`, for a predicate monotone in `p`.
fn largest_prime_where(hi: u64, pred: impl Fn(u64) -> bool) -> u64 {
    let (mut lo, mut hi) = (2u64, hi);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if pred(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    prev_prime(lo).expect("lo >= 2")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KernelConfig {
    p: u64,
    width: Width,
    block: u64,
    corr: u64,
    kind: KernelKind,
    repr: Repr,
}

impl KernelConfig {
    /// Checks that `p` is admissible for the kernel and word, and derives the
    /// block length and correction. `Width::Bits53` selects the
    /// floating-point delayed or blocked kernel.
    pub fn new(kind: KernelKind, p: u64, width: Width) -> Result<Self> {
        use KernelKind::*;
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let m = width.bits();
        let int_word = |repr| match width {
            Width::Bits53 => Err(Error::Unsupported("kernel needs a 32- or 64-bit integer word")),
            _ => Ok(repr),
        };
        let repr = match (kind, width) {
            (Naive, _) => Repr::Generic,
            (DelayedWide, Width::Bits32) => {
                return Err(Error::Unsupported("delayed kernel needs a 53- or 64-bit accumulator"))
            }
            (DelayedWide | Blocked, Width::Bits53) => Repr::Float,
            (DelayedWide | Blocked | Overflow | Hybrid, _) => int_word(Repr::Zpz)?,
            (BlockedCentered | OverflowCentered, _) => int_word(Repr::Centered)?,
            (MontgomeryBlocked, _) => int_word(Repr::Montgomery)?,
        };
        let out_of_range = |max: u64, repr| Error::PrimeOutOfRange { p, max, repr };
        match repr {
            Repr::Generic => {}
            Repr::Float => {
                let max = float_max_prime();
                if p > max {
                    return Err(out_of_range(max, "floating point kernel"));
                }
            }
            Repr::Zpz => {
                // one product must fit, or p(p-1) for the hybrid bound
                let fits = |q: u64| match kind {
                    Hybrid => (q as u128) * (q as u128 - 1) < 1u128 << m,
                    _ => (q as u128 - 1).pow(2) < 1u128 << m,
                };
                if !fits(p) {
                    let hi = 1u64 << (m / 2 + 1).min(63);
                    return Err(out_of_range(largest_prime_where(hi, fits), "integer kernel"));
                }
            }
            Repr::Centered => {
                CenteredField::new(p, width)?;
            }
            Repr::Montgomery => {
                MontgomeryContext::new(p, width)?;
            }
        }
        let block = match kind {
            Naive => 1,
            DelayedWide | Blocked | Overflow | MontgomeryBlocked => lambda_eq1(p, m),
            BlockedCentered | OverflowCentered => lambda_centered(p, m),
            Hybrid => lambda_hybrid(p, m),
        };
        Ok(Self {
            p,
            width,
            block,
            corr: corr(p, m),
            kind,
            repr,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn width(&self) -> Width {
        self.width
    }

    /// Block length `K`; for the delayed kernel, the longest admissible
    /// vector.
    pub fn block(&self) -> u64 {
        self.block
    }

    pub fn corr(&self) -> u64 {
        self.corr
    }

    pub fn kind(&self) -> KernelKind {
        self.kind
    }

    pub fn repr(&self) -> Repr {
        self.repr
    }

    fn expect(&self, kind: KernelKind, repr: Repr) -> Result<()> {
        if self.kind != kind || self.repr != repr {
            return Err(Error::ConfigMismatch("kernel called with a config built for another kernel"));
        }
        Ok(())
    }

    /// Remainders performed by the blocked listing on `dim` elements: one per
    /// full block when `K < DIM`, plus the final one.
    pub fn listing_reductions(&self, dim: usize) -> u64 {
        let (k, d) = (self.block, dim as u64);
        if k < d {
            d / k + 1
        } else {
            1
        }
    }
}

fn check_lengths(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::LengthMismatch { left: a, right: b });
    }
    Ok(())
}

/// Unsigned accumulator word.
trait UWord: PrimInt + WrappingAdd + WrappingMul {
    fn of(v: u64) -> Self;
    fn widen(self) -> u64;
}

/// Signed accumulator word.
trait SWord: PrimInt + WrappingAdd + WrappingSub + WrappingMul {
    fn of(v: i64) -> Self;
    fn widen(self) -> i64;
}

macro_rules! word {
    ($tr:ident, $base:ty: $($t:ty),*) => {$(
        impl $tr for $t {
            #[inline(always)]
            fn of(v: $base) -> Self {
                v as $t
            }
            #[inline(always)]
            fn widen(self) -> $base {
                self as $base
            }
        }
    )*};
}
word!(UWord, u64: u32, u64);
word!(SWord, i64: i32, i64);

/// One AXPYIN per element, in any representation.
pub fn dot_naive<F: FiniteField>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Result<DotResult<F::Elem>> {
    check_lengths(a.len(), b.len())?;
    let mut r = f.zero();
    for (&x, &y) in a.iter().zip(b) {
        r = f.axpyin(r, x, y);
    }
    Ok(DotResult::new(r, a.len() as u64))
}

/// Whole dot product in a 64-bit accumulator, one final remainder.
pub fn dot_delayed_wide(cfg: &KernelConfig, a: &[Zpz], b: &[Zpz]) -> Result<DotResult<Zpz>> {
    cfg.expect(KernelKind::DelayedWide, Repr::Zpz)?;
    check_lengths(a.len(), b.len())?;
    if a.len() as u64 > cfg.block {
        return Err(Error::DimensionTooLarge { dim: a.len(), bound: cfg.block });
    }
    let mut acc = 0u64;
    for (x, y) in a.iter().zip(b) {
        acc += x.0 * y.0;
    }
    Ok(DotResult::new(Zpz(acc % cfg.p), 1))
}

/// Whole dot product in a double, one final reduction by the precomputed
/// inverse.
pub fn dot_delayed_float(
    cfg: &KernelConfig,
    f: &FloatField,
    a: &[FloatElem],
    b: &[FloatElem],
) -> Result<DotResult<FloatElem>> {
    cfg.expect(KernelKind::DelayedWide, Repr::Float)?;
    check_same_prime(cfg, f.p())?;
    check_lengths(a.len(), b.len())?;
    if a.len() as u64 > cfg.block {
        return Err(Error::DimensionTooLarge { dim: a.len(), bound: cfg.block });
    }
    let mut acc = 0.0f64;
    for (x, y) in a.iter().zip(b) {
        acc += x.0 * y.0;
    }
    Ok(DotResult::new(FloatElem(f.float_reduce(acc)), 1))
}

fn check_same_prime(cfg: &KernelConfig, p: u64) -> Result<()> {
    if cfg.p != p {
        return Err(Error::ConfigMismatch("config and field use different primes"));
    }
    Ok(())
}

/// Runs `block(start, end)` over the block structure of the listing: full
/// blocks of `K` when `K < DIM`, then the tail, which is visited even when
/// empty.
fn for_each_listing_block(k: u64, dim: usize, mut block: impl FnMut(usize, usize)) {
    let k = k.min(usize::MAX as u64) as usize;
    let mut i = 0;
    if k < dim {
        while i < (dim / k) * k {
            block(i, i + k);
            i += k;
        }
    }
    block(i, dim);
}

/// Blocked dot product with one remainder per block.
///
/// Each block starts from a fresh accumulator, so at most `K(p-1)^2 < 2^m`
/// is ever held; the block residue is folded into the result with a modular
/// add.
pub fn dot_blocked(cfg: &KernelConfig, a: &[Zpz], b: &[Zpz]) -> Result<DotResult<Zpz>> {
    cfg.expect(KernelKind::Blocked, Repr::Zpz)?;
    check_lengths(a.len(), b.len())?;
    Ok(match cfg.width {
        Width::Bits32 => blocked_unsigned::<u32, _>(cfg, a, b),
        _ => blocked_unsigned::<u64, _>(cfg, a, b),
    })
}

/// Residue stored as a plain integer below `p`.
trait Raw: Copy {
    fn raw(self) -> u64;
}

impl Raw for Zpz {
    fn raw(self) -> u64 {
        self.0
    }
}

impl Raw for Mont {
    fn raw(self) -> u64 {
        self.0
    }
}

fn blocked_unsigned<W: UWord, E: Raw>(cfg: &KernelConfig, a: &[E], b: &[E]) -> DotResult<Zpz> {
    let p = cfg.p;
    let mut res = 0u64;
    let mut reductions = 0;
    for_each_listing_block(cfg.block, a.len(), |s, e| {
        let mut acc = W::zero();
        for (x, y) in a[s..e].iter().zip(&b[s..e]) {
            acc = acc + W::of(x.raw()) * W::of(y.raw());
        }
        reductions += 1;
        res += acc.widen() % p;
        if res >= p {
            res -= p;
        }
    });
    DotResult::new(Zpz(res), reductions)
}

/// Blocked dot product over doubles (`m = 53`).
pub fn dot_blocked_float(
    cfg: &KernelConfig,
    f: &FloatField,
    a: &[FloatElem],
    b: &[FloatElem],
) -> Result<DotResult<FloatElem>> {
    cfg.expect(KernelKind::Blocked, Repr::Float)?;
    check_same_prime(cfg, f.p())?;
    check_lengths(a.len(), b.len())?;
    let p = f.p_f64();
    let mut res = 0.0;
    let mut reductions = 0;
    for_each_listing_block(cfg.block, a.len(), |s, e| {
        let mut acc = 0.0f64;
        for (x, y) in a[s..e].iter().zip(&b[s..e]) {
            acc += x.0 * y.0;
        }
        reductions += 1;
        res += f.float_reduce(acc);
        if res >= p {
            res -= p;
        }
    });
    Ok(DotResult::new(FloatElem(res), reductions))
}

/// Blocked dot product on centered residues, blocks of
/// `max{λ : λ((p-1)/2)^2 < 2^(m-1)}`.
pub fn dot_blocked_centered(cfg: &KernelConfig, a: &[Centered], b: &[Centered]) -> Result<DotResult<Centered>> {
    cfg.expect(KernelKind::BlockedCentered, Repr::Centered)?;
    check_lengths(a.len(), b.len())?;
    Ok(match cfg.width {
        Width::Bits32 => blocked_signed::<i32>(cfg, a, b),
        _ => blocked_signed::<i64>(cfg, a, b),
    })
}

fn blocked_signed<W: SWord>(cfg: &KernelConfig, a: &[Centered], b: &[Centered]) -> DotResult<Centered> {
    let f = CenteredField::new(cfg.p, cfg.width).expect("validated by the config");
    let p = cfg.p as i64;
    let mut res = 0i64;
    let mut reductions = 0;
    for_each_listing_block(cfg.block, a.len(), |s, e| {
        let mut acc = W::zero();
        for (x, y) in a[s..e].iter().zip(&b[s..e]) {
            acc = acc + W::of(x.0) * W::of(y.0);
        }
        reductions += 1;
        // both terms lie in (-p, p)
        res += acc.widen() % p;
        if res > f.half() {
            res -= p;
        } else if res < -f.half() {
            res += p;
        }
    });
    DotResult::new(f.reduce(res), reductions)
}

/// Unsigned wrapping accumulation with `+CORR` on every wrap.
pub fn dot_overflow(cfg: &KernelConfig, a: &[Zpz], b: &[Zpz]) -> Result<DotResult<Zpz>> {
    cfg.expect(KernelKind::Overflow, Repr::Zpz)?;
    check_lengths(a.len(), b.len())?;
    Ok(match cfg.width {
        Width::Bits32 => overflow_unsigned::<u32>(cfg, a, b),
        _ => overflow_unsigned::<u64>(cfg, a, b),
    })
}

fn overflow_unsigned<W: UWord>(cfg: &KernelConfig, a: &[Zpz], b: &[Zpz]) -> DotResult<Zpz> {
    let corr = W::of(cfg.corr);
    let mut sum = W::zero();
    let mut overflows = 0;
    for (x, y) in a.iter().zip(b) {
        let product = W::of(x.0) * W::of(y.0);
        sum = sum.wrapping_add(&product);
        if sum < product {
            // p(p-1) < 2^m, so this add cannot wrap again
            sum = sum + corr;
            overflows += 1;
        }
    }
    let mut r = DotResult::new(Zpz(sum.widen() % cfg.p), 1);
    r.overflows = overflows;
    r
}

/// Signed wrapping accumulation on centered residues, correcting both
/// overflow (`+CORR`) and underflow (`-CORR`).
///
/// A wrap is recognised by the pair of tests of the signed listing; the sign
/// of the sum before the add stands in for its `product - sum`, which equals
/// the negated previous sum but itself wraps when that sum is the most
/// negative word.
pub fn dot_overflow_centered(cfg: &KernelConfig, a: &[Centered], b: &[Centered]) -> Result<DotResult<Centered>> {
    cfg.expect(KernelKind::OverflowCentered, Repr::Centered)?;
    check_lengths(a.len(), b.len())?;
    Ok(match cfg.width {
        Width::Bits32 => overflow_signed::<i32>(cfg, a, b),
        _ => overflow_signed::<i64>(cfg, a, b),
    })
}

fn overflow_signed<W: SWord>(cfg: &KernelConfig, a: &[Centered], b: &[Centered]) -> DotResult<Centered> {
    let corr = W::of(cfg.corr as i64);
    let zero = W::zero();
    let (mut sum, mut over, mut under) = (zero, 0, 0);
    for (x, y) in a.iter().zip(b) {
        let product = W::of(x.0) * W::of(y.0);
        let before = sum;
        sum = sum.wrapping_add(&product);
        if sum < product && before > zero {
            sum = sum + corr;
            over += 1;
        } else if product < sum && before < zero {
            sum = sum - corr;
            under += 1;
        }
    }
    let f = CenteredField::new(cfg.p, cfg.width).expect("validated by the config");
    let mut r = DotResult::new(f.reduce(sum.widen() % cfg.p as i64), 1);
    r.overflows = over;
    r.underflows = under;
    r
}

/// Overflow detection delayed to block ends, blocks of
/// `max{λ : λp(p-1) < 2^m}`: a block adds less than `2^m`, so it wraps at
/// most once, and `+CORR` after a wrap cannot wrap again. One remainder at
/// the end.
pub fn dot_hybrid(cfg: &KernelConfig, a: &[Zpz], b: &[Zpz]) -> Result<DotResult<Zpz>> {
    cfg.expect(KernelKind::Hybrid, Repr::Zpz)?;
    check_lengths(a.len(), b.len())?;
    Ok(match cfg.width {
        Width::Bits32 => hybrid_unsigned::<u32>(cfg, a, b),
        _ => hybrid_unsigned::<u64>(cfg, a, b),
    })
}

fn hybrid_unsigned<W: UWord>(cfg: &KernelConfig, a: &[Zpz], b: &[Zpz]) -> DotResult<Zpz> {
    let corr = W::of(cfg.corr);
    let k = cfg.block.min(usize::MAX as u64) as usize;
    let mut sum = W::zero();
    let (mut overflows, mut checkpoints) = (0, 0);
    for (xs, ys) in a.chunks(k).zip(b.chunks(k)) {
        let start = sum;
        for (x, y) in xs.iter().zip(ys) {
            sum = sum.wrapping_add(&(W::of(x.0) * W::of(y.0)));
        }
        checkpoints += 1;
        if sum < start {
            sum = sum + corr;
            overflows += 1;
        }
    }
    let mut r = DotResult::new(Zpz(sum.widen() % cfg.p), 1);
    r.overflows = overflows;
    r.checkpoints = checkpoints;
    r
}

/// Blocked dot product on `aB` forms. Raw products `x B * y B` carry `B^2`,
/// so blocks accumulate unreduced; each block is brought below `p` by one
/// remainder (keeping the `B^2` factor), and a final REDC strips one `B` to
/// land back in `aB` form.
pub fn dot_montgomery_blocked(
    cfg: &KernelConfig,
    ctx: &MontgomeryContext,
    a: &[Mont],
    b: &[Mont],
) -> Result<DotResult<Mont>> {
    cfg.expect(KernelKind::MontgomeryBlocked, Repr::Montgomery)?;
    check_same_prime(cfg, ctx.p())?;
    if ctx.width() != cfg.width {
        return Err(Error::ConfigMismatch("config and context use different words"));
    }
    check_lengths(a.len(), b.len())?;
    let r = match cfg.width {
        Width::Bits32 => blocked_unsigned::<u32, _>(cfg, a, b),
        _ => blocked_unsigned::<u64, _>(cfg, a, b),
    };
    Ok(DotResult::new(Mont(ctx.redc(r.value.0)), r.reductions + 1))
}
