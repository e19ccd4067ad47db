//! Montgomery representation. An element `a` is stored as `a*B mod p` with
//! `B` half the accumulator word (`2^16` for 32-bit words, `2^32` for 64-bit
//! words), so division by `B` is a shift and reduction modulo `B` a mask.
//!
//! AXPY cannot add `a*x*B^2` to `y*B` directly: the product is reduced
//! first, then `y` is added. Keeping the reduction input below `B^2` for
//! the worst product bounds the prime by `(p-1)^2 + p*(B-1) < B^2`.

use crate::error::{Error, Result};
use crate::field::FiniteField;
use crate::instrument::{note_redc, rem};
use crate::numtheory::{inv_mod, is_prime, prev_prime, Width};

/// An element in `a*B mod p` form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
#[repr(transparent)]
pub struct Mont(pub(crate) u64);

impl Mont {
    pub fn value(self) -> u64 {
        self.0
    }
}

fn radix_shift(width: Width) -> Result<u32> {
    match width {
        Width::Bits32 => Ok(16),
        Width::Bits64 => Ok(32),
        Width::Bits53 => Err(Error::Unsupported(
            "Montgomery reduction uses 32- or 64-bit words",
        )),
    }
}

fn admissible(p: u64, shift: u32) -> bool {
    let b = 1u128 << shift;
    let p = p as u128;
    (p - 1) * (p - 1) + p * (b - 1) < b * b
}

/// Largest prime satisfying `(p-1)^2 + p*(B-1) < B^2` for the given word.
pub fn montgomery_max_prime(width: Width) -> Result<u64> {
    let shift = radix_shift(width)?;
    // (p-1)^2 + p(B-1) is increasing in p; bisect on it.
    let (mut lo, mut hi) = (1u64, 1u64 << shift);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if admissible(mid, shift) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(prev_prime(lo).expect("bound is at least 2"))
}

#[derive(Debug, Clone)]
pub struct MontgomeryContext {
    p: u64,
    width: Width,
    shift: u32,
    mask: u64,
    n_im: u64,
}

impl MontgomeryContext {
    pub fn new(p: u64, width: Width) -> Result<Self> {
        let shift = radix_shift(width)?;
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p == 2 {
            return Err(Error::Unsupported("Montgomery reduction needs an odd modulus"));
        }
        if !admissible(p, shift) {
            return Err(Error::PrimeOutOfRange {
                p,
                max: montgomery_max_prime(width)?,
                repr: "Montgomery",
            });
        }
        let b = 1u64 << shift;
        let mask = b - 1;
        let n_im = (b - inv_mod(p, b)?) & mask;
        assert_eq!(n_im.wrapping_mul(p) & mask, mask, "n_im * p must be -1 mod B");
        Ok(Self {
            p,
            width,
            shift,
            mask,
            n_im,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn width(&self) -> Width {
        self.width
    }

    /// The radix `B`.
    pub fn radix(&self) -> u64 {
        1 << self.shift
    }

    pub fn shift(&self) -> u32 {
        self.shift
    }

    /// `-p^{-1} mod B`.
    pub fn n_im(&self) -> u64 {
        self.n_im
    }

    /// Returns `t * B^{-1} mod p` in `[0, p)` for `0 <= t <= p*B`.
    #[inline]
    pub fn redc(&self, t: u64) -> u64 {
        debug_assert!(t as u128 <= self.p as u128 * self.radix() as u128);
        note_redc();
        let u = t.wrapping_mul(self.n_im) & self.mask;
        // t + u*p can reach 2pB, one bit past the word when B = 2^32
        let (s, carry) = t.overflowing_add(u * self.p);
        let r = (s >> self.shift) | ((carry as u64) << (64 - self.shift));
        if r >= self.p {
            r - self.p
        } else {
            r
        }
    }

    pub fn to_mont(&self, a: u64) -> Mont {
        debug_assert!(a < self.p);
        Mont(rem(a << self.shift, self.p))
    }

    pub fn from_mont(&self, x: Mont) -> u64 {
        self.redc(x.0)
    }

    #[inline]
    pub fn mont_mul(&self, a: Mont, b: Mont) -> Mont {
        Mont(self.redc(a.0 * b.0))
    }

    #[inline]
    pub fn mont_axpy(&self, a: Mont, x: Mont, y: Mont) -> Mont {
        let r = self.redc(a.0 * x.0) + y.0;
        Mont(if r >= self.p { r - self.p } else { r })
    }
}

impl FiniteField for MontgomeryContext {
    type Elem = Mont;

    fn order(&self) -> u64 {
        self.p
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn encode(&self, value: u64) -> Mont {
        self.to_mont(value % self.p)
    }

    fn decode(&self, elem: Mont) -> u64 {
        self.from_mont(elem)
    }

    #[inline]
    fn add(&self, a: Mont, b: Mont) -> Mont {
        let r = a.0 + b.0;
        Mont(if r >= self.p { r - self.p } else { r })
    }

    #[inline]
    fn sub(&self, a: Mont, b: Mont) -> Mont {
        Mont(if a.0 < b.0 { a.0 + (self.p - b.0) } else { a.0 - b.0 })
    }

    #[inline]
    fn neg(&self, a: Mont) -> Mont {
        Mont(if a.0 == 0 { 0 } else { self.p - a.0 })
    }

    #[inline]
    fn mul(&self, a: Mont, b: Mont) -> Mont {
        self.mont_mul(a, b)
    }

    fn div(&self, a: Mont, b: Mont) -> Result<Mont> {
        let inv = inv_mod(self.from_mont(b), self.p)?;
        Ok(self.mont_mul(a, self.to_mont(inv)))
    }

    #[inline]
    fn axpy(&self, a: Mont, x: Mont, y: Mont) -> Mont {
        self.mont_axpy(a, x, y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::ZpzField;
    use crate::instrument;
    use crate::numtheory::{next_prime, Storage};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn documented_bounds() {
        assert_eq!(montgomery_max_prime(Width::Bits32).unwrap(), 40499);
        assert_eq!(montgomery_max_prime(Width::Bits64).unwrap(), 2654435761);
        assert!(MontgomeryContext::new(40499, Width::Bits32).is_ok());
        assert!(matches!(
            MontgomeryContext::new(next_prime(40499).unwrap(), Width::Bits32),
            Err(Error::PrimeOutOfRange { max: 40499, .. })
        ));
        assert!(MontgomeryContext::new(2, Width::Bits32).is_err());
        assert!(MontgomeryContext::new(9, Width::Bits32).is_err());
    }

    #[test]
    fn n_im_invariant_for_many_primes() {
        for p in [3u64, 5, 7, 101, 1009, 32749, 40009, 40499] {
            let c = MontgomeryContext::new(p, Width::Bits32).unwrap();
            assert_eq!((c.n_im() as u128 * p as u128) % 65536, 65535);
        }
        let c = MontgomeryContext::new(2654435761, Width::Bits64).unwrap();
        assert_eq!((c.n_im() as u128 * 2654435761u128) % (1 << 32), (1 << 32) - 1);
    }

    #[test]
    fn seven_example() {
        let c = MontgomeryContext::new(7, Width::Bits32).unwrap();
        assert_eq!(c.n_im(), 37449);
        assert_eq!(c.to_mont(3), Mont(6));
        assert_eq!(c.redc(6), 3);
        assert_eq!(c.redc(0), 0);
        assert_eq!(c.redc(7 * 65536), 0);
        assert_eq!(c.mont_mul(c.to_mont(3), c.to_mont(5)), Mont(2));
        assert_eq!(c.mont_axpy(c.to_mont(3), c.to_mont(5), c.to_mont(6)), Mont(0));
        assert_eq!(c.mont_axpy(c.to_mont(0), Mont(4), Mont(5)), Mont(5));
    }

    #[test]
    fn redc_matches_modular_inverse_of_radix() {
        for (p, w) in [(7u64, Width::Bits32), (40499, Width::Bits32), (2654435761, Width::Bits64)] {
            let c = MontgomeryContext::new(p, w).unwrap();
            let b = c.radix() as u128;
            let binv = inv_mod((b % p as u128) as u64, p).unwrap() as u128;
            let pb = p as u128 * b;
            let check = |t: u128| {
                assert_eq!(c.redc(t as u64) as u128, t % p as u128 * binv % p as u128, "t={t}");
            };
            for t in [0, p as u128, b, pb, pb - 1, 1] {
                check(t);
            }
            let step = (pb / 4099).max(1);
            let mut t = 0u128;
            while t <= pb {
                check(t);
                t += step;
            }
        }
    }

    #[test]
    fn agrees_with_classical_exhaustively_at_101() {
        let c = MontgomeryContext::new(101, Width::Bits32).unwrap();
        let z = ZpzField::new(101, Width::Bits32, Storage::Unsigned).unwrap();
        for a in 0..101 {
            for b in 0..101 {
                let (ma, mb) = (c.to_mont(a), c.to_mont(b));
                let (za, zb) = (z.elem(a), z.elem(b));
                assert_eq!(c.from_mont(c.mul(ma, mb)), z.mul(za, zb).value());
                assert_eq!(c.add(ma, mb), c.to_mont((a + b) % 101));
                assert_eq!(c.from_mont(c.sub(ma, mb)), z.sub(za, zb).value());
                assert_eq!(c.from_mont(c.axpy(ma, mb, ma)), z.axpy(za, zb, za).value());
                if b != 0 {
                    assert_eq!(c.from_mont(c.div(ma, mb).unwrap()), z.div(za, zb).unwrap().value());
                }
            }
        }
        let x = c.to_mont(42);
        assert_eq!(c.sub(x, x), Mont(0));
        assert_eq!(c.neg(Mont(0)), Mont(0));
        assert_eq!(c.div(x, Mont(0)), Err(Error::DivisionByZero));
    }

    #[test]
    fn random_sweeps() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let c = MontgomeryContext::new(40009, Width::Bits32).unwrap();
        for _ in 0..10_000 {
            let x = rng.gen_range(0..40009);
            assert_eq!(c.from_mont(c.to_mont(x)), x);
        }
        let p = 40499;
        let c = MontgomeryContext::new(p, Width::Bits32).unwrap();
        let z = ZpzField::new(p, Width::Bits32, Storage::Unsigned).unwrap();
        for _ in 0..10_000 {
            let (a, x, y) = (rng.gen_range(0..p), rng.gen_range(0..p), rng.gen_range(0..p));
            let got = c.from_mont(c.mont_axpy(c.to_mont(a), c.to_mont(x), c.to_mont(y)));
            assert_eq!(got, z.axpy(z.elem(a), z.elem(x), z.elem(y)).value());
        }
        let m = c.to_mont(p - 1);
        assert_eq!(c.from_mont(c.axpy(m, m, m)), ((p - 1) * (p - 1) + p - 1) % p);
    }

    #[test]
    fn one_reduction_per_mul_and_axpy() {
        let c = MontgomeryContext::new(32749, Width::Bits32).unwrap();
        let (a, b) = (c.to_mont(123), c.to_mont(4567));
        instrument::take();
        c.mul(a, b);
        assert_eq!(instrument::take(), (0, 1));
        c.axpy(a, b, a);
        assert_eq!(instrument::take(), (0, 1));
        c.add(a, b);
        c.sub(a, b);
        c.neg(a);
        assert_eq!(instrument::take(), (0, 0));
    }
}
