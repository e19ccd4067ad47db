//! Reference arithmetic used to check every representation and kernel.
//! Deliberately naive: 128-bit accumulation for dot products and schoolbook
//! polynomials for extension fields. Nothing here is shared with the code
//! under test.

use crate::error::{Error, Result};

fn check_lengths(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::LengthMismatch { left: a, right: b });
    }
    Ok(())
}

/// `sum x[i]*y[i] mod p` with exact 128-bit accumulation.
pub fn oracle_dot(x: &[u64], y: &[u64], p: u64) -> Result<u64> {
    check_lengths(x.len(), y.len())?;
    if p == 0 {
        return Err(Error::Domain("modulus must be nonzero"));
    }
    let p = p as u128;
    let mut acc = 0u128;
    for (&a, &b) in x.iter().zip(y) {
        acc += a as u128 * b as u128;
        // keep headroom for the next 2^128 / 2^64-sized product
        if acc >= 1 << 127 {
            acc %= p;
        }
    }
    Ok((acc % p) as u64)
}

/// Signed variant; the result is canonical in `[0, p)`.
pub fn oracle_dot_signed(x: &[i64], y: &[i64], p: u64) -> Result<u64> {
    check_lengths(x.len(), y.len())?;
    if p == 0 {
        return Err(Error::Domain("modulus must be nonzero"));
    }
    let p = p as i128;
    let mut acc = 0i128;
    for (&a, &b) in x.iter().zip(y) {
        acc += a as i128 * b as i128;
        if acc.unsigned_abs() >= 1 << 126 {
            acc %= p;
        }
    }
    Ok(acc.rem_euclid(p) as u64)
}

/// `GF(p^d)` as `GF(p)[x] / (f)` for a monic `f`, elements encoded as the
/// integer with base-`p` digits equal to the coefficients.
#[derive(Debug, Clone)]
pub struct PolyOracle {
    p: u64,
    modulus: Vec<u64>,
}

impl PolyOracle {
    /// `modulus` is monic, constant term first; `None` means the prime field.
    pub fn new(p: u64, modulus: Option<&[u64]>) -> Self {
        let modulus = modulus.map_or_else(|| vec![0, 1], <[u64]>::to_vec);
        assert_eq!(*modulus.last().expect("nonempty"), 1, "modulus must be monic");
        Self { p, modulus }
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.degree() as u32)
    }

    fn unpack(&self, mut v: u64) -> Vec<u64> {
        (0..self.degree())
            .map(|_| {
                let c = v % self.p;
                v /= self.p;
                c
            })
            .collect()
    }

    fn pack(&self, c: &[u64]) -> u64 {
        c.iter().rev().fold(0, |acc, &x| acc * self.p + x)
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let (a, b) = (self.unpack(a), self.unpack(b));
        let s: Vec<u64> = a.iter().zip(&b).map(|(x, y)| (x + y) % self.p).collect();
        self.pack(&s)
    }

    pub fn neg(&self, a: u64) -> u64 {
        let n: Vec<u64> = self.unpack(a).iter().map(|x| (self.p - x) % self.p).collect();
        self.pack(&n)
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        let (a, b) = (self.unpack(a), self.unpack(b));
        let d = self.degree();
        let p = self.p as u128;
        let mut prod = vec![0u128; 2 * d - 1];
        for i in 0..d {
            for j in 0..d {
                prod[i + j] = (prod[i + j] + a[i] as u128 * b[j] as u128) % p;
            }
        }
        // x^d = -(f_0 + ... + f_{d-1} x^{d-1})
        for top in (d..2 * d - 1).rev() {
            let c = prod[top];
            prod[top] = 0;
            for (k, &f) in self.modulus[..d].iter().enumerate() {
                let idx = top - d + k;
                prod[idx] = (prod[idx] + c * (p - f as u128)) % p;
            }
        }
        let low: Vec<u64> = prod[..d].iter().map(|&c| c as u64).collect();
        self.pack(&low)
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        let mut acc = 1;
        for _ in 0..e {
            acc = self.mul(acc, a);
        }
        acc
    }

    /// Inverse by exhaustive search.
    pub fn inv(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        (1..self.order())
            .find(|&b| self.mul(a, b) == 1)
            .ok_or(Error::Domain("modulus is not irreducible"))
    }
}

/// Exhaustive operation tables of `GF(q)`, row-major `q x q`.
#[derive(Debug, Clone)]
pub struct GfOps {
    pub q: u64,
    pub add: Vec<u64>,
    pub mul: Vec<u64>,
    pub neg: Vec<u64>,
    /// `inv[0]` is unused and holds 0.
    pub inv: Vec<u64>,
}

impl GfOps {
    pub fn add(&self, a: u64, b: u64) -> u64 {
        self.add[(a * self.q + b) as usize]
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.mul[(a * self.q + b) as usize]
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg[b as usize])
    }

    pub fn div(&self, a: u64, b: u64) -> Option<u64> {
        (b != 0).then(|| self.mul(a, self.inv[b as usize]))
    }
}

/// Operation tables of `GF(p)[x] / (modulus)` (the prime field for `None`)
/// by schoolbook polynomial arithmetic.
pub fn oracle_gf_ops(p: u64, modulus: Option<&[u64]>) -> GfOps {
    let f = PolyOracle::new(p, modulus);
    let q = f.order();
    let mut add = Vec::with_capacity((q * q) as usize);
    let mut mul = Vec::with_capacity((q * q) as usize);
    for a in 0..q {
        for b in 0..q {
            add.push(f.add(a, b));
            mul.push(f.mul(a, b));
        }
    }
    let neg = (0..q).map(|a| f.neg(a)).collect();
    let mut inv = vec![0; q as usize];
    for a in 1..q {
        let row = &mul[(a * q) as usize..((a + 1) * q) as usize];
        inv[a as usize] = row.iter().position(|&v| v == 1).expect("field has inverses") as u64;
    }
    GfOps { q, add, mul, neg, inv }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dot_examples() {
        assert_eq!(oracle_dot(&[1, 2, 3], &[4, 5, 6], 7).unwrap(), 32 % 7);
        assert_eq!(oracle_dot(&[], &[], 7).unwrap(), 0);
        assert!(matches!(oracle_dot(&[1], &[], 7), Err(Error::LengthMismatch { .. })));
        let m = u64::MAX;
        let big = vec![m; 10];
        let expect = (m as u128 * m as u128 % 65521 * 10 % 65521) as u64;
        assert_eq!(oracle_dot(&big, &big, 65521).unwrap(), expect);
        assert_eq!(oracle_dot_signed(&[-1, 3], &[5, 1], 7).unwrap(), 5);
        assert_eq!(oracle_dot_signed(&[i64::MIN; 4], &[i64::MAX; 4], 101).unwrap(), {
            let v = (i64::MIN as i128 * i64::MAX as i128).rem_euclid(101);
            (v * 4 % 101) as u64
        });
    }

    #[test]
    fn gf9_arithmetic() {
        // x^2 + 1 over GF(3): x*x = -1 = 2
        let f = PolyOracle::new(3, Some(&[1, 0, 1]));
        assert_eq!(f.order(), 9);
        let x = 3;
        assert_eq!(f.mul(x, x), 2);
        assert_eq!(f.add(x, x), 6);
        assert_eq!(f.sub(1, x), 7);
        // x+1 generates all eight units
        let mut seen: Vec<u64> = (1..=8).map(|e| f.pow(4, e)).collect();
        seen.sort();
        assert_eq!(seen, (1..=8).collect::<Vec<_>>());
        for a in 1..9 {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
    }

    #[test]
    fn gf4_addition_is_xor_and_gf9_tables_are_sane() {
        let g4 = oracle_gf_ops(2, Some(&[1, 1, 1]));
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(g4.add(a, b), a ^ b);
            }
        }
        let g9 = oracle_gf_ops(3, Some(&[1, 0, 1]));
        for a in 0..9 {
            assert_eq!(g9.mul(1, a), a);
            for b in 0..9 {
                assert_eq!(g9.mul(a, b), g9.mul(b, a));
            }
        }
        assert_eq!(g9.div(5, 0), None);
    }

    #[test]
    fn prime_field_mode() {
        let f = PolyOracle::new(7, None);
        assert_eq!(f.mul(3, 5), 1);
        assert_eq!(f.neg(0), 0);
        assert_eq!(f.inv(3).unwrap(), 5);
    }
}
