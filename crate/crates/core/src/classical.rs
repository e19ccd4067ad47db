//! Classical `Z/pZ` representation: residues in `[0, p)`, additions fixed up
//! by one test and one subtraction, products reduced by a machine remainder.
//!
//! AXPY multiplies and adds before its single remainder, so the prime has to
//! satisfy `(p-1)^2 + (p-1) < 2^(m-1)` with signed words and `< 2^m` with
//! unsigned words.

use crate::error::{Error, Result};
use crate::field::FiniteField;
use crate::instrument::rem;
use crate::numtheory::{inv_mod, is_prime, max_with_pronic_below, prev_prime, FieldParams, Storage, Width};

/// A canonical residue in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
#[repr(transparent)]
pub struct Zpz(pub(crate) u64);

impl Zpz {
    pub fn value(self) -> u64 {
        self.0
    }
}

/// A residue stored in `[-(p-1)/2, (p-1)/2]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
#[repr(transparent)]
pub struct Centered(pub(crate) i64);

impl Centered {
    pub fn value(self) -> i64 {
        self.0
    }
}

/// Largest prime for which the classical AXPY cannot overflow.
pub fn zpz_max_prime(width: Width, storage: Storage) -> u64 {
    let bits = match (width, storage) {
        (Width::Bits53, _) => 53,
        (w, Storage::Signed) => w.bits() - 1,
        (w, Storage::Unsigned) => w.bits(),
    };
    let x = max_with_pronic_below(1u128 << bits);
    prev_prime(x).expect("bound is at least 2")
}

#[derive(Debug, Clone)]
pub struct ZpzField {
    params: FieldParams,
    max_prime: u64,
}

impl ZpzField {
    pub fn new(p: u64, width: Width, storage: Storage) -> Result<Self> {
        Self::from_params(FieldParams::new(p, width, storage)?)
    }

    pub fn from_params(params: FieldParams) -> Result<Self> {
        if params.width() == Width::Bits53 {
            return Err(Error::Unsupported(
                "the integer representation uses 32- or 64-bit words",
            ));
        }
        let max_prime = zpz_max_prime(params.width(), params.storage());
        if params.p() > max_prime {
            return Err(Error::PrimeOutOfRange {
                p: params.p(),
                max: max_prime,
                repr: "classical Z/pZ",
            });
        }
        Ok(Self { params, max_prime })
    }

    pub fn p(&self) -> u64 {
        self.params.p()
    }

    pub fn params(&self) -> FieldParams {
        self.params
    }

    pub fn width(&self) -> Width {
        self.params.width()
    }

    pub fn max_prime(&self) -> u64 {
        self.max_prime
    }

    /// Wraps an already reduced residue.
    pub fn elem(&self, v: u64) -> Zpz {
        debug_assert!(v < self.p());
        Zpz(v)
    }
}

impl FiniteField for ZpzField {
    type Elem = Zpz;

    fn order(&self) -> u64 {
        self.p()
    }

    fn characteristic(&self) -> u64 {
        self.p()
    }

    fn encode(&self, value: u64) -> Zpz {
        Zpz(value % self.p())
    }

    fn decode(&self, elem: Zpz) -> u64 {
        elem.0
    }

    #[inline]
    fn add(&self, a: Zpz, b: Zpz) -> Zpz {
        let p = self.p();
        match self.params.storage() {
            Storage::Signed => {
                let r = a.0 as i64 + b.0 as i64;
                Zpz(if r >= p as i64 { r - p as i64 } else { r } as u64)
            }
            Storage::Unsigned => {
                let r = a.0 + b.0;
                Zpz(if r >= p { r - p } else { r })
            }
        }
    }

    #[inline]
    fn sub(&self, a: Zpz, b: Zpz) -> Zpz {
        let p = self.p();
        match self.params.storage() {
            Storage::Signed => {
                let r = a.0 as i64 - b.0 as i64;
                Zpz(if r < 0 { r + p as i64 } else { r } as u64)
            }
            // a - b would wrap below zero, so add p first
            Storage::Unsigned => Zpz(if a.0 < b.0 { a.0 + (p - b.0) } else { a.0 - b.0 }),
        }
    }

    #[inline]
    fn neg(&self, a: Zpz) -> Zpz {
        Zpz(if a.0 == 0 { 0 } else { self.p() - a.0 })
    }

    #[inline]
    fn mul(&self, a: Zpz, b: Zpz) -> Zpz {
        Zpz(rem(a.0 * b.0, self.p()))
    }

    fn div(&self, a: Zpz, b: Zpz) -> Result<Zpz> {
        let inv = inv_mod(b.0, self.p())?;
        Ok(self.mul(a, Zpz(inv)))
    }

    #[inline]
    fn axpy(&self, a: Zpz, x: Zpz, y: Zpz) -> Zpz {
        let p = self.p();
        match self.params.storage() {
            Storage::Signed => {
                let t = a.0 as i64 * x.0 as i64 + y.0 as i64;
                Zpz(rem(t as u64, p))
            }
            Storage::Unsigned => Zpz(rem(a.0 * x.0 + y.0, p)),
        }
    }
}

/// Largest odd prime whose centered AXPY fits a signed `m`-bit word.
pub fn centered_max_prime(width: Width) -> u64 {
    // half^2 + half < 2^(m-1) with half = (p-1)/2
    let half = max_with_pronic_below(1u128 << (width.bits() - 1)) - 1;
    prev_prime(2 * half + 1).expect("bound is at least 3")
}

/// Centered variant of `Z/pZ`: residues in `[-(p-1)/2, (p-1)/2]`.
#[derive(Debug, Clone)]
pub struct CenteredField {
    p: u64,
    half: i64,
    width: Width,
}

impl CenteredField {
    pub fn new(p: u64, width: Width) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p == 2 {
            return Err(Error::Unsupported(
                "the centered representation needs an odd prime",
            ));
        }
        if width == Width::Bits53 {
            return Err(Error::Unsupported(
                "the centered representation uses 32- or 64-bit words",
            ));
        }
        let max = centered_max_prime(width);
        if p > max {
            return Err(Error::PrimeOutOfRange {
                p,
                max,
                repr: "centered Z/pZ",
            });
        }
        Ok(Self {
            p,
            half: ((p - 1) / 2) as i64,
            width,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn width(&self) -> Width {
        self.width
    }

    /// `(p-1)/2`, the largest magnitude a centered residue can take.
    pub fn half(&self) -> i64 {
        self.half
    }

    pub fn to_centered(&self, a: Zpz) -> Centered {
        debug_assert!(a.0 < self.p);
        let v = a.0 as i64;
        Centered(if v > self.half { v - self.p as i64 } else { v })
    }

    pub fn from_centered(&self, c: Centered) -> Zpz {
        debug_assert!(c.0.abs() <= self.half);
        Zpz(if c.0 < 0 { (c.0 + self.p as i64) as u64 } else { c.0 as u64 })
    }

    /// Recentres an arbitrary signed value.
    pub fn reduce(&self, v: i64) -> Centered {
        let r = v.rem_euclid(self.p as i64);
        Centered(if r > self.half { r - self.p as i64 } else { r })
    }

    pub fn encode(&self, value: u64) -> Centered {
        self.to_centered(Zpz(value % self.p))
    }

    pub fn decode(&self, c: Centered) -> u64 {
        self.from_centered(c).0
    }
}

/// The comparison baseline: every operation goes through a machine remainder.
#[derive(Debug, Clone)]
pub struct RemainderField {
    p: u64,
}

impl RemainderField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let max = zpz_max_prime(Width::Bits64, Storage::Unsigned);
        if p > max {
            return Err(Error::PrimeOutOfRange {
                p,
                max,
                repr: "remainder baseline",
            });
        }
        Ok(Self { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }
}

impl FiniteField for RemainderField {
    type Elem = Zpz;

    fn order(&self) -> u64 {
        self.p
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn encode(&self, value: u64) -> Zpz {
        Zpz(value % self.p)
    }

    fn decode(&self, elem: Zpz) -> u64 {
        elem.0
    }

    fn add(&self, a: Zpz, b: Zpz) -> Zpz {
        Zpz(rem(a.0 + b.0, self.p))
    }

    fn sub(&self, a: Zpz, b: Zpz) -> Zpz {
        Zpz(rem(a.0 + self.p - b.0, self.p))
    }

    fn neg(&self, a: Zpz) -> Zpz {
        Zpz(rem(self.p - a.0, self.p))
    }

    fn mul(&self, a: Zpz, b: Zpz) -> Zpz {
        Zpz(rem(a.0 * b.0, self.p))
    }

    fn div(&self, a: Zpz, b: Zpz) -> Result<Zpz> {
        Ok(self.mul(a, Zpz(inv_mod(b.0, self.p)?)))
    }

    fn axpy(&self, a: Zpz, x: Zpz, y: Zpz) -> Zpz {
        Zpz(rem(a.0 * x.0 + y.0, self.p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instrument;

    fn fields(p: u64) -> Vec<ZpzField> {
        let mut out = Vec::new();
        for w in [Width::Bits32, Width::Bits64] {
            for s in [Storage::Signed, Storage::Unsigned] {
                if let Ok(f) = ZpzField::new(p, w, s) {
                    out.push(f);
                }
            }
        }
        out
    }

    #[test]
    fn documented_bounds() {
        assert_eq!(zpz_max_prime(Width::Bits32, Storage::Signed), 46337);
        assert_eq!(zpz_max_prime(Width::Bits64, Storage::Signed), 3037000493);
        assert_eq!(zpz_max_prime(Width::Bits32, Storage::Unsigned), 65521);
        assert_eq!(zpz_max_prime(Width::Bits64, Storage::Unsigned), 4294967291);
        assert!(ZpzField::new(46337, Width::Bits32, Storage::Signed).is_ok());
        assert!(matches!(
            ZpzField::new(46349, Width::Bits32, Storage::Signed),
            Err(Error::PrimeOutOfRange { max: 46337, .. })
        ));
        assert!(matches!(
            ZpzField::new(46339, Width::Bits32, Storage::Signed),
            Err(Error::NotPrime(46339))
        ));
        assert!(ZpzField::new(101, Width::Bits53, Storage::Signed).is_err());
    }

    #[test]
    fn small_examples() {
        let f = ZpzField::new(7, Width::Bits32, Storage::Unsigned).unwrap();
        let e = |v| f.elem(v);
        assert_eq!(f.add(e(0), e(4)), e(4));
        assert_eq!(f.add(e(3), e(5)), e(1));
        assert_eq!(f.add(e(6), e(6)), e(5));
        assert_eq!(f.neg(e(0)), e(0));
        assert_eq!(f.mul(e(3), e(5)), e(1));
        assert_eq!(f.div(e(1), e(3)).unwrap(), e(5));
        assert_eq!(f.div(e(1), e(0)), Err(Error::DivisionByZero));
        assert_eq!(f.axpy(e(0), e(4), e(2)), e(2));
        assert_eq!(f.axpy(e(3), e(5), e(6)), e(0));
    }

    #[test]
    fn exhaustive_against_direct_arithmetic() {
        for p in [2u64, 3, 5, 7, 11, 13, 101] {
            for f in fields(p) {
                for a in 0..p {
                    for b in 0..p {
                        let (x, y) = (f.elem(a), f.elem(b));
                        assert_eq!(f.add(x, y).0, (a + b) % p);
                        assert_eq!(f.sub(x, y).0, (a + p - b) % p);
                        assert_eq!(f.mul(x, y).0, a * b % p);
                        assert_eq!(f.axpy(x, y, x).0, (a * b + a) % p);
                        assert_eq!(f.axpyin(y, x, y).0, (b + a * b) % p);
                        if b != 0 {
                            assert_eq!(f.div(x, y).unwrap().0 * b % p, a);
                        }
                    }
                    assert_eq!(f.neg(f.elem(a)).0, (p - a) % p);
                }
            }
        }
    }

    #[test]
    fn worst_case_axpy_at_every_bound() {
        for (w, s) in [
            (Width::Bits32, Storage::Signed),
            (Width::Bits32, Storage::Unsigned),
            (Width::Bits64, Storage::Signed),
            (Width::Bits64, Storage::Unsigned),
        ] {
            let p = zpz_max_prime(w, s);
            let f = ZpzField::new(p, w, s).unwrap();
            let m = f.elem(p - 1);
            let expect = ((p as u128 - 1) * (p as u128 - 1) + (p as u128 - 1)) % p as u128;
            assert_eq!(f.axpy(m, m, m).0 as u128, expect);
            assert_eq!(f.add(m, m).0, p - 2);
        }
    }

    #[test]
    fn only_mul_and_axpy_use_the_remainder() {
        let f = ZpzField::new(65521, Width::Bits32, Storage::Unsigned).unwrap();
        let (a, b) = (f.elem(65000), f.elem(1234));
        instrument::take();
        f.add(a, b);
        f.sub(a, b);
        f.sub(b, a);
        f.neg(a);
        assert_eq!(instrument::take(), (0, 0));
        f.mul(a, b);
        assert_eq!(instrument::take(), (1, 0));
        f.axpy(a, b, a);
        assert_eq!(instrument::take(), (1, 0));
        f.axpyin(a, b, a);
        assert_eq!(instrument::take(), (1, 0));
    }

    #[test]
    fn centered_round_trip() {
        assert!(matches!(CenteredField::new(2, Width::Bits32), Err(Error::Unsupported(_))));
        for p in [3u64, 5, 7, 101, 1009] {
            let c = CenteredField::new(p, Width::Bits32).unwrap();
            let h = (p - 1) / 2;
            assert_eq!(c.to_centered(Zpz(0)).0, 0);
            assert_eq!(c.to_centered(Zpz(p - 1)).0, -1);
            assert_eq!(c.to_centered(Zpz(h)).0, h as i64);
            for v in 0..p {
                assert_eq!(c.from_centered(c.to_centered(Zpz(v))).0, v);
            }
            for v in -(h as i64)..=h as i64 {
                assert_eq!(c.to_centered(c.from_centered(Centered(v))).0, v);
            }
        }
    }

    #[test]
    fn remainder_baseline_agrees() {
        let p = 32749;
        let r = RemainderField::new(p).unwrap();
        let z = ZpzField::new(p, Width::Bits32, Storage::Signed).unwrap();
        for a in (0..p).step_by(97) {
            for b in (0..p).step_by(89) {
                let (x, y) = (Zpz(a), Zpz(b));
                assert_eq!(r.add(x, y), z.add(x, y));
                assert_eq!(r.sub(x, y), z.sub(x, y));
                assert_eq!(r.neg(x), z.neg(x));
                assert_eq!(r.axpy(x, y, x), z.axpy(x, y, x));
            }
        }
    }
}
