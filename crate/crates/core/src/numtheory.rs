//! Number-theoretic helpers shared by every representation: extended gcd,
//! modular inverse and exponentiation, primality, factorization and
//! primitive roots. Everything here works on word-size integers.

use crate::error::{Error, Result};

/// Accumulator width `m` in bits. `Bits53` is the mantissa of an IEEE double.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Width {
    Bits32,
    Bits53,
    Bits64,
}

impl Width {
    pub const fn bits(self) -> u32 {
        match self {
            Width::Bits32 => 32,
            Width::Bits53 => 53,
            Width::Bits64 => 64,
        }
    }

    /// `2^m` as a wide integer.
    pub const fn modulus(self) -> u128 {
        1u128 << self.bits()
    }
}

/// Storage convention for the classical representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Storage {
    Signed,
    Unsigned,
}

/// A prime modulus together with the machine word it is meant to live in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldParams {
    p: u64,
    width: Width,
    storage: Storage,
}

impl FieldParams {
    pub fn new(p: u64, width: Width, storage: Storage) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self { p, width, storage })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn width(&self) -> Width {
        self.width
    }

    pub fn storage(&self) -> Storage {
        self.storage
    }
}

/// Extended Euclid: returns `(g, u, v)` with `g = gcd(a, b) = u*a + v*b`.
pub fn egcd(a: u64, b: u64) -> Result<(u64, i128, i128)> {
    if a == 0 && b == 0 {
        return Err(Error::Domain("gcd(0, 0) is undefined"));
    }
    let (mut r0, mut r1) = (a as i128, b as i128);
    let (mut u0, mut u1) = (1i128, 0i128);
    let (mut v0, mut v1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (u0, u1) = (u1, u0 - q * u1);
        (v0, v1) = (v1, v0 - q * v1);
    }
    debug_assert_eq!(u0 * a as i128 + v0 * b as i128, r0, "Bezout identity");
    Ok((r0 as u64, u0, v0))
}

/// Inverse of `a` modulo `p`, in `[1, p)`.
pub fn inv_mod(a: u64, p: u64) -> Result<u64> {
    if p < 2 {
        return Err(Error::Domain("modulus must be at least 2"));
    }
    let a = a % p;
    if a == 0 {
        return Err(Error::DivisionByZero);
    }
    let (g, u, _) = egcd(a, p)?;
    if g != 1 {
        return Err(Error::Domain("element is not invertible"));
    }
    Ok(u.rem_euclid(p as i128) as u64)
}

#[inline]
pub fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

/// Square-and-multiply `a^e mod n`.
pub fn pow_mod(a: u64, mut e: u64, n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::Domain("modulus must be nonzero"));
    }
    let mut base = a % n;
    let mut acc = 1 % n;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, n);
        }
        base = mul_mod(base, base, n);
        e >>= 1;
    }
    Ok(acc)
}

// The first twelve primes are a deterministic witness set for every n < 2^64.
const MR_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &w in &MR_WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &w in &MR_WITNESSES {
        let mut x = pow_mod(w, d, n).expect("n >= 2");
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Largest prime `<= n`, if any.
pub fn prev_prime(n: u64) -> Option<u64> {
    (2..=n).rev().find(|&k| is_prime(k))
}

/// Smallest prime `> n`, if it fits in a `u64`.
pub fn next_prime(n: u64) -> Option<u64> {
    let mut k = n.checked_add(1)?;
    while !is_prime(k) {
        k = k.checked_add(1)?;
    }
    Some(k)
}

/// Prime factors of `n` with multiplicity, in nondecreasing order.
pub fn factorize(mut n: u64) -> Result<Vec<u64>> {
    if n < 2 {
        return Err(Error::Domain("factorize needs n >= 2"));
    }
    let mut factors = Vec::new();
    while n.is_multiple_of(2) {
        factors.push(2);
        n /= 2;
    }
    let mut d = 3u64;
    while d <= n / d {
        while n.is_multiple_of(d) {
            factors.push(d);
            n /= d;
        }
        d += 2;
    }
    if n > 1 {
        factors.push(n);
    }
    Ok(factors)
}

/// Distinct prime factors of `n`.
pub fn prime_divisors(n: u64) -> Result<Vec<u64>> {
    let mut f = factorize(n)?;
    f.dedup();
    Ok(f)
}

/// Smallest generator of `(Z/pZ)*`.
///
/// For `p = 2` the group is trivial and the generator is `1`.
pub fn primitive_root(p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Ok(1);
    }
    let divisors = prime_divisors(p - 1)?;
    (2..p)
        .find(|&g| {
            divisors
                .iter()
                .all(|&r| pow_mod(g, (p - 1) / r, p).expect("p > 0") != 1)
        })
        .ok_or(Error::Construction("no primitive root found"))
}

/// Largest `x` with `x * (x - 1) < limit`, for `limit >= 1`.
pub(crate) fn max_with_pronic_below(limit: u128) -> u64 {
    let mut x = ((limit as f64).sqrt() as u128).max(1) + 2;
    while x * (x - 1) >= limit {
        x -= 1;
    }
    x as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_order(g: u64, p: u64) -> u64 {
        let mut x = g % p;
        let mut k = 1;
        while x != 1 {
            x = x * g % p;
            k += 1;
        }
        k
    }

    #[test]
    fn egcd_examples() {
        assert_eq!(egcd(0, 7).unwrap(), (7, 0, 1));
        let (g, u, v) = egcd(3, 7).unwrap();
        assert_eq!(g, 1);
        assert_eq!(3 * u + 7 * v, 1);
        let (g, u, v) = egcd(12, 18).unwrap();
        assert_eq!(g, 6);
        assert_eq!(12 * u + 18 * v, 6);
        assert!(matches!(egcd(0, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(inv_mod(1, 65521).unwrap(), 1);
        assert_eq!(inv_mod(3, 7).unwrap(), 5);
        assert_eq!(inv_mod(0, 7), Err(Error::DivisionByZero));
    }

    #[test]
    fn inverse_exhaustive_small_primes() {
        for p in (2..=1009).filter(|&p| is_prime(p)) {
            for a in 1..p {
                assert_eq!(inv_mod(a, p).unwrap() * a % p, 1, "a={a} p={p}");
            }
        }
    }

    #[test]
    fn pow_examples() {
        assert_eq!(pow_mod(5, 0, 11).unwrap(), 1);
        assert_eq!(pow_mod(3, 6, 7).unwrap(), 1);
        assert_eq!(pow_mod(2, 10, 1000).unwrap(), 24);
        assert!(pow_mod(2, 3, 0).is_err());
    }

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(2).unwrap(), vec![2]);
        assert_eq!(factorize(100).unwrap(), vec![2, 2, 5, 5]);
        assert_eq!(factorize(40008).unwrap(), vec![2, 2, 2, 3, 1667]);
        assert!(factorize(1).is_err());
    }

    #[test]
    fn primality_matches_trial_division() {
        for n in 0..5000u64 {
            let trial = n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
            assert_eq!(is_prime(n), trial, "n={n}");
        }
        assert!(is_prime(4294967291));
        assert!(is_prime(18446744073709551557));
        // strong pseudoprime to bases 2..=11
        assert!(!is_prime(3825123056546413051));
    }

    #[test]
    fn primitive_root_examples() {
        assert_eq!(primitive_root(3).unwrap(), 2);
        assert_eq!(primitive_root(7).unwrap(), 3);
        assert_eq!(primitive_root(101).unwrap(), 2);
        assert!(matches!(primitive_root(9), Err(Error::NotPrime(9))));
    }

    #[test]
    fn primitive_root_order_is_brute_force_maximal() {
        for p in (3..=1009).filter(|&p| is_prime(p)) {
            let g = primitive_root(p).unwrap();
            assert_eq!(brute_order(g, p), p - 1, "p={p}");
            // smallest: every smaller candidate has a shorter order
            for h in 2..g {
                assert!(brute_order(h, p) < p - 1);
            }
        }
    }

    #[test]
    fn neighbouring_primes() {
        assert_eq!(next_prime(46337), Some(46349));
        assert_eq!(prev_prime(46340), Some(46337));
        assert_eq!(prev_prime(1), None);
    }

    #[test]
    fn pronic_bound() {
        assert_eq!(max_with_pronic_below(1u128 << 31), 46341);
        for limit in 1..2000u128 {
            let x = max_with_pronic_below(limit) as u128;
            assert!(x * (x - 1) < limit && (x + 1) * x >= limit);
        }
    }
}
