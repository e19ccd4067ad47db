//! Residues held in `f64`. Reduction subtracts `floor(T * (1/p)) * p` and
//! then fixes the possible off-by-one of the rounded quotient with a single
//! `+p` or `-p`, the way NTL does it.

use crate::error::{Error, Result};
use crate::field::FiniteField;
use crate::numtheory::{inv_mod, is_prime, max_with_pronic_below, prev_prime};

/// `2^53`: every integer of smaller magnitude is exact in a double.
pub const MANTISSA_LIMIT: f64 = 9007199254740992.0;

/// A residue in `[0, p)` held as an integral double.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
#[repr(transparent)]
pub struct FloatElem(pub(crate) f64);

impl FloatElem {
    pub fn value(self) -> f64 {
        self.0
    }
}

/// Which correction the final test of a reduction applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Adjustment {
    None,
    SubtractedP,
    AddedP,
}

/// Largest prime with `p*(p-1) < 2^53`, i.e. an exact double AXPY.
pub fn float_max_prime() -> u64 {
    prev_prime(max_with_pronic_below(1u128 << 53)).expect("bound is at least 2")
}

#[derive(Debug, Clone)]
pub struct FloatField {
    p: f64,
    inv_p: f64,
    // above this the product floor(T/p)*p may exceed 2^53 and round
    exact_limit: f64,
}

impl FloatField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let max = float_max_prime();
        if p > max {
            return Err(Error::PrimeOutOfRange {
                p,
                max,
                repr: "floating point",
            });
        }
        let pf = p as f64;
        Ok(Self {
            p: pf,
            inv_p: 1.0 / pf,
            exact_limit: MANTISSA_LIMIT - 2.0 * pf,
        })
    }

    pub fn p(&self) -> u64 {
        self.p as u64
    }

    pub fn p_f64(&self) -> f64 {
        self.p
    }

    pub fn inv_p(&self) -> f64 {
        self.inv_p
    }

    /// `t mod p` for an integral `t` with `-p <= t < 2^53`.
    #[inline]
    pub fn float_reduce(&self, t: f64) -> f64 {
        self.float_reduce_traced(t).0
    }

    #[inline]
    pub fn float_reduce_traced(&self, t: f64) -> (f64, Adjustment) {
        debug_assert!(t.fract() == 0.0 && t >= -self.p && t < MANTISSA_LIMIT);
        let q = (t * self.inv_p).floor();
        let mut r = if t < self.exact_limit {
            t - q * self.p
        } else {
            // q*p may land past 2^53; fuse so it is never rounded
            (-q).mul_add(self.p, t)
        };
        let adj = if r >= self.p {
            r -= self.p;
            Adjustment::SubtractedP
        } else if r < 0.0 {
            r += self.p;
            Adjustment::AddedP
        } else {
            Adjustment::None
        };
        (r, adj)
    }

    #[inline]
    pub fn float_axpy(&self, a: FloatElem, x: FloatElem, y: FloatElem) -> FloatElem {
        FloatElem(self.float_reduce(a.0 * x.0 + y.0))
    }

    pub fn elem(&self, v: u64) -> FloatElem {
        debug_assert!((v as f64) < self.p);
        FloatElem(v as f64)
    }
}

impl FiniteField for FloatField {
    type Elem = FloatElem;

    fn order(&self) -> u64 {
        self.p()
    }

    fn characteristic(&self) -> u64 {
        self.p()
    }

    fn encode(&self, value: u64) -> FloatElem {
        FloatElem((value % self.p()) as f64)
    }

    fn decode(&self, elem: FloatElem) -> u64 {
        elem.0 as u64
    }

    #[inline]
    fn add(&self, a: FloatElem, b: FloatElem) -> FloatElem {
        let r = a.0 + b.0;
        FloatElem(if r >= self.p { r - self.p } else { r })
    }

    #[inline]
    fn sub(&self, a: FloatElem, b: FloatElem) -> FloatElem {
        let r = a.0 - b.0;
        FloatElem(if r < 0.0 { r + self.p } else { r })
    }

    #[inline]
    fn neg(&self, a: FloatElem) -> FloatElem {
        FloatElem(if a.0 == 0.0 { 0.0 } else { self.p - a.0 })
    }

    #[inline]
    fn mul(&self, a: FloatElem, b: FloatElem) -> FloatElem {
        FloatElem(self.float_reduce(a.0 * b.0))
    }

    fn div(&self, a: FloatElem, b: FloatElem) -> Result<FloatElem> {
        let inv = inv_mod(b.0 as u64, self.p())?;
        Ok(self.mul(a, FloatElem(inv as f64)))
    }

    #[inline]
    fn axpy(&self, a: FloatElem, x: FloatElem, y: FloatElem) -> FloatElem {
        self.float_axpy(a, x, y)
    }
}
