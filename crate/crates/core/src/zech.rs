//! Discrete-logarithm (Zech) representation of `GF(q)`, `q = p^d`.
//!
//! A nonzero element `g^i` is coded by its exponent `i`, with `1 = g^0` coded
//! as `q-1` and zero coded as `0`. Multiplication, division and negation are
//! then one signed index addition or subtraction followed by one conditional
//! correction by `q-1`. Addition uses `g^i + g^j = g^i (1 + g^(j-i))` and a
//! single "plus one" table mapping `k` to the code of `1 + g^k`.
//!
//! Extension fields are handled identically once the tables are built: all
//! polynomial arithmetic happens at construction time.
//!
//! [`FullTables`] is the fully tabulated variant in which zero is coded as
//! `2(q-1)` and every operation becomes index arithmetic plus lookups into
//! tables totalling about `15q` entries.

use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::field::FiniteField;
use crate::numtheory::{is_prime, pow_mod, prime_divisors, primitive_root};

/// Default limit on the memory the tables of one field may use.
pub const DEFAULT_TABLE_BUDGET: u64 = 64 << 20;

/// Largest `q` whose index arithmetic stays inside a signed 32-bit word
/// (`i + j <= 2(q-1) < 2^31`).
pub const MAX_ORDER: u64 = 1 << 30;

const ZERO: i32 = 0;

/// A Zech code: `0` for zero, `q-1` for one, `i` for `g^i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
#[repr(transparent)]
pub struct ZechCode(pub(crate) u32);

impl ZechCode {
    pub fn value(self) -> u32 {
        self.0
    }
}

/// Counts of the elementary steps of one operation: index additions or
/// subtractions, comparisons, and table lookups. Zero-operand and zero-result
/// guards are not counted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct OpCounters {
    pub adds: u64,
    pub tests: u64,
    pub accesses: u64,
}

impl std::ops::AddAssign for OpCounters {
    fn add_assign(&mut self, o: Self) {
        self.adds += o.adds;
        self.tests += o.tests;
        self.accesses += o.accesses;
    }
}

/// Sink for operation counts; [`Silent`] compiles away.
pub trait Tally {
    fn add(&mut self);
    fn test(&mut self);
    fn access(&mut self);
}

pub struct Silent;

impl Tally for Silent {
    #[inline(always)]
    fn add(&mut self) {}
    #[inline(always)]
    fn test(&mut self) {}
    #[inline(always)]
    fn access(&mut self) {}
}

impl Tally for OpCounters {
    fn add(&mut self) {
        self.adds += 1;
    }
    fn test(&mut self) {
        self.tests += 1;
    }
    fn access(&mut self) {
        self.accesses += 1;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZechOp {
    Add,
    Sub,
    Neg,
    Mul,
    Div,
}

/// Polynomial arithmetic over `GF(p)` for table construction. Polynomials are
/// coefficient vectors, constant term first.
mod poly {
    pub fn digits(mut v: u64, p: u64, d: usize) -> Vec<u64> {
        let mut out = vec![0; d];
        for c in out.iter_mut() {
            *c = v % p;
            v /= p;
        }
        out
    }

    pub fn undigits(c: &[u64], p: u64) -> u64 {
        c.iter().rev().fold(0, |acc, &x| acc * p + x)
    }

    /// Remainder of `a` by the monic polynomial `m`.
    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let dm = m.len() - 1;
        let mut r = a.to_vec();
        while r.len() > dm {
            let top = r.pop().expect("nonempty") % p;
            if top != 0 {
                let off = r.len() - dm;
                for (i, &mc) in m[..dm].iter().enumerate() {
                    r[off + i] = (r[off + i] + (p - top) * mc % p) % p;
                }
            }
        }
        r.resize(dm, 0);
        r
    }

    pub fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y % p) % p;
            }
        }
        rem(&prod, m, p)
    }

    pub fn powmod(a: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
        let d = m.len() - 1;
        let mut acc = vec![0; d];
        acc[0] = 1;
        let mut base = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(&acc, &base, m, p);
            }
            base = mulmod(&base, &base, m, p);
            e >>= 1;
        }
        acc
    }

    /// Trial division by every monic polynomial of degree `1..=deg/2`.
    pub fn is_irreducible(f: &[u64], p: u64) -> bool {
        let d = f.len() - 1;
        for k in 1..=d / 2 {
            let count = p.pow(k as u32);
            for low in 0..count {
                let mut g = digits(low, p, k);
                g.push(1);
                if rem(f, &g, p).iter().all(|&c| c == 0) {
                    return false;
                }
            }
        }
        true
    }
}

/// Tables of the Zech representation over `GF(p^d)`.
#[derive(Debug, Clone)]
pub struct ZechTables {
    p: u64,
    degree: u32,
    q: u64,
    qbar: i32,
    /// Code of `-1`, `(q-1)/2` in odd characteristic.
    i_neg1: Option<i32>,
    generator: Vec<u64>,
    /// Monic defining polynomial for `d >= 2`.
    modulus: Option<Vec<u64>>,
    /// `t_plus1[k]` is the code of `1 + g^k` for `k` in `1..=q-1`; the slot
    /// where `1 + g^k = 0` holds the zero code.
    t_plus1: Vec<u32>,
    to_code: Vec<u32>,
    from_code: Vec<u32>,
}

fn order_of(p: u64, degree: u32) -> Result<u64> {
    p.checked_pow(degree)
        .filter(|&q| q <= MAX_ORDER)
        .ok_or(Error::Unsupported("field order exceeds the 32-bit index range"))
}

fn check_budget(needed: u64, budget: u64) -> Result<()> {
    if needed > budget {
        Err(Error::TableBudget { needed, budget })
    } else {
        Ok(())
    }
}

impl ZechTables {
    /// Tables for the prime field `GF(p)` with the default memory budget.
    pub fn prime(p: u64) -> Result<Self> {
        Self::with_budget(p, 1, DEFAULT_TABLE_BUDGET)
    }

    /// Tables for `GF(p^d)` with the default memory budget.
    pub fn extension(p: u64, degree: u32) -> Result<Self> {
        Self::with_budget(p, degree, DEFAULT_TABLE_BUDGET)
    }

    pub fn with_budget(p: u64, degree: u32, budget: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if degree == 0 {
            return Err(Error::Domain("extension degree must be at least 1"));
        }
        let q = order_of(p, degree)?;
        check_budget(3 * 4 * q, budget)?;

        let d = degree as usize;
        let (generator, modulus) = if d == 1 {
            (vec![primitive_root(p)?], None)
        } else {
            let m = smallest_irreducible(p, d)?;
            let g = smallest_primitive(p, &m, q)?;
            (g, Some(m))
        };
        let (to_code, from_code) = enumerate_powers(p, q, &generator, modulus.as_deref());
        let t_plus1 = plus_one_table(p, q, &to_code, &from_code);
        Ok(Self::assemble(p, degree, q, generator, modulus, t_plus1, to_code, from_code))
    }

    #[allow(clippy::too_many_arguments)]
    fn assemble(
        p: u64,
        degree: u32,
        q: u64,
        generator: Vec<u64>,
        modulus: Option<Vec<u64>>,
        t_plus1: Vec<u32>,
        to_code: Vec<u32>,
        from_code: Vec<u32>,
    ) -> Self {
        let qbar = (q - 1) as i32;
        let i_neg1 = (p != 2).then(|| to_code[(p - 1) as usize] as i32);
        if let Some(h) = i_neg1 {
            debug_assert_eq!(h, qbar / 2);
        }
        Self {
            p,
            degree,
            q,
            qbar,
            i_neg1,
            generator,
            modulus,
            t_plus1,
            to_code,
            from_code,
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// `q - 1`, the order of the multiplicative group.
    pub fn qbar(&self) -> u32 {
        self.qbar as u32
    }

    pub fn i_neg1(&self) -> Option<u32> {
        self.i_neg1.map(|h| h as u32)
    }

    /// Coefficients of the primitive element, constant term first.
    pub fn generator(&self) -> &[u64] {
        &self.generator
    }

    /// Monic defining polynomial of an extension field, constant term first.
    pub fn modulus(&self) -> Option<&[u64]> {
        self.modulus.as_deref()
    }

    pub fn t_plus1(&self) -> &[u32] {
        &self.t_plus1
    }

    pub fn zero_code(&self) -> ZechCode {
        ZechCode(0)
    }

    pub fn one_code(&self) -> ZechCode {
        ZechCode(self.qbar as u32)
    }

    /// Validates a raw code.
    pub fn code(&self, raw: u32) -> Option<ZechCode> {
        (raw <= self.qbar as u32).then_some(ZechCode(raw))
    }

    /// Entries held across all tables.
    pub fn table_entries(&self) -> usize {
        self.t_plus1.len() + self.to_code.len() + self.from_code.len()
    }

    pub fn mul_with<T: Tally>(&self, a: ZechCode, b: ZechCode, t: &mut T) -> ZechCode {
        if a.0 == 0 || b.0 == 0 {
            return ZechCode(0);
        }
        let mut r = a.0 as i32 + b.0 as i32;
        t.add();
        t.test();
        if r > self.qbar {
            r -= self.qbar;
            t.add();
        }
        ZechCode(r as u32)
    }

    pub fn div_with<T: Tally>(&self, a: ZechCode, b: ZechCode, t: &mut T) -> Result<ZechCode> {
        if b.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        if a.0 == 0 {
            return Ok(ZechCode(0));
        }
        let mut r = a.0 as i32 - b.0 as i32;
        t.add();
        t.test();
        if r <= 0 {
            r += self.qbar;
            t.add();
        }
        Ok(ZechCode(r as u32))
    }

    pub fn neg_with<T: Tally>(&self, a: ZechCode, t: &mut T) -> ZechCode {
        let Some(h) = self.i_neg1 else {
            return a;
        };
        if a.0 == 0 {
            return a;
        }
        let mut r = a.0 as i32 - h;
        t.add();
        t.test();
        if r <= 0 {
            r += self.qbar;
            t.add();
        }
        ZechCode(r as u32)
    }

    /// `g^i + g^j = g^i (1 + g^(j-i))`.
    pub fn add_with<T: Tally>(&self, a: ZechCode, b: ZechCode, t: &mut T) -> ZechCode {
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        let mut k = b.0 as i32 - a.0 as i32;
        t.add();
        t.test();
        if k <= 0 {
            k += self.qbar;
            t.add();
        }
        self.finish_with_plus1(a, k, t)
    }

    /// `g^i - g^j = g^i (1 + g^(j-i+i_neg1))`.
    pub fn sub_with<T: Tally>(&self, a: ZechCode, b: ZechCode, t: &mut T) -> ZechCode {
        let Some(h) = self.i_neg1 else {
            return self.add_with(a, b, t);
        };
        if b.0 == 0 {
            return a;
        }
        if a.0 == 0 {
            return self.neg_with(b, t);
        }
        let mut k = b.0 as i32 - a.0 as i32 + h;
        t.add();
        t.add();
        t.test();
        if k <= 0 {
            k += self.qbar;
            t.add();
        } else {
            t.test();
            if k > self.qbar {
                k -= self.qbar;
                t.add();
            }
        }
        self.finish_with_plus1(a, k, t)
    }

    #[inline]
    fn finish_with_plus1<T: Tally>(&self, a: ZechCode, k: i32, t: &mut T) -> ZechCode {
        let h = self.t_plus1[k as usize] as i32;
        t.access();
        let mut r = a.0 as i32 + h;
        t.add();
        t.test();
        if r > self.qbar {
            r -= self.qbar;
            t.add();
        }
        // the sentinel slot: 1 + g^k = 0
        if h == ZERO {
            return ZechCode(0);
        }
        ZechCode(r as u32)
    }

    /// Runs one operation with every elementary step counted.
    pub fn counted_op(&self, op: ZechOp, a: ZechCode, b: ZechCode) -> Result<(ZechCode, OpCounters)> {
        let mut c = OpCounters::default();
        let r = match op {
            ZechOp::Add => self.add_with(a, b, &mut c),
            ZechOp::Sub => self.sub_with(a, b, &mut c),
            ZechOp::Neg => self.neg_with(a, &mut c),
            ZechOp::Mul => self.mul_with(a, b, &mut c),
            ZechOp::Div => self.div_with(a, b, &mut c)?,
        };
        Ok((r, c))
    }

    /// Mean `(adds, tests, accesses)` of `op` over all pairs of nonzero
    /// operands (all nonzero operands for negation).
    pub fn mean_counts(&self, op: ZechOp) -> Result<[f64; 3]> {
        let n = self.qbar as u32;
        let mut total = OpCounters::default();
        let mut cases = 0u64;
        let rhs: Vec<u32> = if op == ZechOp::Neg { vec![n] } else { (1..=n).collect() };
        for i in 1..=n {
            for &j in &rhs {
                total += self.counted_op(op, ZechCode(i), ZechCode(j))?.1;
                cases += 1;
            }
        }
        let c = cases as f64;
        Ok([total.adds as f64 / c, total.tests as f64 / c, total.accesses as f64 / c])
    }

    /// Writes the versioned binary fixture: magic, version, `p`, `d`, `q`,
    /// the generator and defining polynomial, then `t_plus1` as
    /// little-endian `u32` words. All integers are little-endian.
    pub fn write_to<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        w.write_all(FILE_MAGIC)?;
        w.write_all(&FILE_VERSION.to_le_bytes())?;
        w.write_all(&self.p.to_le_bytes())?;
        w.write_all(&self.degree.to_le_bytes())?;
        w.write_all(&self.q.to_le_bytes())?;
        for &c in &self.generator {
            w.write_all(&c.to_le_bytes())?;
        }
        let modulus = self.modulus.as_deref().unwrap_or(&[]);
        w.write_all(&(modulus.len() as u32).to_le_bytes())?;
        for &c in modulus {
            w.write_all(&c.to_le_bytes())?;
        }
        for &e in &self.t_plus1 {
            w.write_all(&e.to_le_bytes())?;
        }
        Ok(())
    }

    /// Reads a fixture written by [`ZechTables::write_to`], rebuilding the
    /// conversion tables and checking the stored plus-one table against them.
    pub fn read_from<R: Read>(mut r: R) -> Result<Self> {
        let io = |e: std::io::Error| Error::Format(e.to_string());
        let mut magic = [0u8; 4];
        r.read_exact(&mut magic).map_err(io)?;
        if &magic != FILE_MAGIC {
            return Err(Error::Format("bad magic".into()));
        }
        let version = u16::from_le_bytes(read_array(&mut r)?);
        if version != FILE_VERSION {
            return Err(Error::Format(format!("unsupported version {version}")));
        }
        let p = u64::from_le_bytes(read_array(&mut r)?);
        let degree = u32::from_le_bytes(read_array(&mut r)?);
        let q = u64::from_le_bytes(read_array(&mut r)?);
        if !is_prime(p) || degree == 0 || order_of(p, degree).ok() != Some(q) {
            return Err(Error::Format("inconsistent field parameters".into()));
        }
        check_budget(3 * 4 * q, DEFAULT_TABLE_BUDGET)?;
        let generator = (0..degree)
            .map(|_| read_array(&mut r).map(u64::from_le_bytes))
            .collect::<Result<Vec<_>>>()?;
        let mlen = u32::from_le_bytes(read_array(&mut r)?) as usize;
        if (degree == 1 && mlen != 0) || (degree > 1 && mlen != degree as usize + 1) {
            return Err(Error::Format("defining polynomial has the wrong length".into()));
        }
        let modulus: Vec<u64> = (0..mlen)
            .map(|_| read_array(&mut r).map(u64::from_le_bytes))
            .collect::<Result<_>>()?;
        let modulus = (degree > 1).then_some(modulus);
        if generator.iter().chain(modulus.iter().flatten()).any(|&c| c >= p) {
            return Err(Error::Format("coefficient out of range".into()));
        }
        if let Some(m) = &modulus {
            if m[degree as usize] != 1 || !poly::is_irreducible(m, p) {
                return Err(Error::Format("defining polynomial is not monic irreducible".into()));
            }
        }
        if !is_generator(p, q, &generator, modulus.as_deref()) {
            return Err(Error::Format("stored element is not primitive".into()));
        }
        let t_plus1 = (0..q)
            .map(|_| read_array(&mut r).map(u32::from_le_bytes))
            .collect::<Result<Vec<_>>>()?;
        let (to_code, from_code) = enumerate_powers(p, q, &generator, modulus.as_deref());
        if t_plus1 != plus_one_table(p, q, &to_code, &from_code) {
            return Err(Error::Format("plus-one table does not match the generator".into()));
        }
        Ok(Self::assemble(p, degree, q, generator, modulus, t_plus1, to_code, from_code))
    }
}

const FILE_MAGIC: &[u8; 4] = b"ZECH";
const FILE_VERSION: u16 = 1;

fn read_array<R: Read, const N: usize>(r: &mut R) -> Result<[u8; N]> {
    let mut buf = [0u8; N];
    r.read_exact(&mut buf).map_err(|e| Error::Format(e.to_string()))?;
    Ok(buf)
}

/// Smallest monic irreducible polynomial of degree `d`, comparing the
/// non-leading coefficients as a base-`p` number (highest degree first).
fn smallest_irreducible(p: u64, d: usize) -> Result<Vec<u64>> {
    let count = p.pow(d as u32);
    (0..count)
        .map(|low| {
            let mut f = poly::digits(low, p, d);
            f.push(1);
            f
        })
        .find(|f| poly::is_irreducible(f, p))
        .ok_or(Error::Construction("no irreducible polynomial found"))
}

fn is_generator(p: u64, q: u64, g: &[u64], modulus: Option<&[u64]>) -> bool {
    let divisors = if q > 2 { prime_divisors(q - 1).expect("q - 1 >= 2") } else { vec![] };
    match modulus {
        None => {
            let g = g[0];
            g != 0 && divisors.iter().all(|&r| pow_mod(g, (q - 1) / r, p).is_ok_and(|x| x != 1))
        }
        Some(m) => {
            let mut one = vec![0; m.len() - 1];
            one[0] = 1;
            g.iter().any(|&c| c != 0)
                && divisors.iter().all(|&r| poly::powmod(g, (q - 1) / r, m, p) != one)
        }
    }
}

/// First primitive element, scanning `x, x+1, ..., x+(p-1), 2x, ...`.
fn smallest_primitive(p: u64, modulus: &[u64], q: u64) -> Result<Vec<u64>> {
    let d = modulus.len() - 1;
    (p..q)
        .map(|v| poly::digits(v, p, d))
        .find(|g| is_generator(p, q, g, Some(modulus)))
        .ok_or(Error::Construction("no primitive element found"))
}

/// Conversion tables between element integers and codes.
fn enumerate_powers(p: u64, q: u64, g: &[u64], modulus: Option<&[u64]>) -> (Vec<u32>, Vec<u32>) {
    let qbar = q - 1;
    let mut to_code = vec![0u32; q as usize];
    let mut from_code = vec![0u32; q as usize];
    from_code[qbar as usize] = 1;
    to_code[1] = qbar as u32;
    match modulus {
        None => {
            let mut cur = 1u64;
            for i in 1..qbar {
                cur = cur * g[0] % p;
                to_code[cur as usize] = i as u32;
                from_code[i as usize] = cur as u32;
            }
        }
        Some(m) => {
            let mut cur = vec![0u64; m.len() - 1];
            cur[0] = 1;
            for i in 1..qbar {
                cur = poly::mulmod(&cur, g, m, p);
                let v = poly::undigits(&cur, p);
                to_code[v as usize] = i as u32;
                from_code[i as usize] = v as u32;
            }
        }
    }
    (to_code, from_code)
}

/// `t[k]` = code of `1 + g^k` for `k` in `1..=q-1`; `t[0]` mirrors `t[q-1]`.
fn plus_one_table(p: u64, q: u64, to_code: &[u32], from_code: &[u32]) -> Vec<u32> {
    let plus_one = |v: u64| v - v % p + (v % p + 1) % p;
    let mut t = vec![0u32; q as usize];
    for k in 1..q as usize {
        t[k] = to_code[plus_one(from_code[k] as u64) as usize];
    }
    t[0] = t[q as usize - 1];
    t
}

impl FiniteField for ZechTables {
    type Elem = ZechCode;

    fn order(&self) -> u64 {
        self.q
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn encode(&self, value: u64) -> ZechCode {
        ZechCode(self.to_code[(value % self.q) as usize])
    }

    fn decode(&self, elem: ZechCode) -> u64 {
        self.from_code[elem.0 as usize] as u64
    }

    fn zero(&self) -> ZechCode {
        ZechCode(0)
    }

    fn one(&self) -> ZechCode {
        self.one_code()
    }

    #[inline]
    fn add(&self, a: ZechCode, b: ZechCode) -> ZechCode {
        self.add_with(a, b, &mut Silent)
    }

    #[inline]
    fn sub(&self, a: ZechCode, b: ZechCode) -> ZechCode {
        self.sub_with(a, b, &mut Silent)
    }

    #[inline]
    fn neg(&self, a: ZechCode) -> ZechCode {
        self.neg_with(a, &mut Silent)
    }

    #[inline]
    fn mul(&self, a: ZechCode, b: ZechCode) -> ZechCode {
        self.mul_with(a, b, &mut Silent)
    }

    fn div(&self, a: ZechCode, b: ZechCode) -> Result<ZechCode> {
        self.div_with(a, b, &mut Silent)
    }

    #[inline]
    fn axpy(&self, a: ZechCode, x: ZechCode, y: ZechCode) -> ZechCode {
        self.add(self.mul(a, x), y)
    }
}

/// A code of the fully tabulated variant: `i` in `[0, q-1)` for `g^i`,
/// `2(q-1)` for zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
#[repr(transparent)]
pub struct FullCode(pub(crate) u32);

impl FullCode {
    pub fn value(self) -> u32 {
        self.0
    }
}

/// Fully tabulated Zech arithmetic.
///
/// Layout, with `n = q-1` and zero coded as `2n`:
/// * `t_mul` covers indices `[-n, 4n]`: `k` below `n` maps to `k mod n`,
///   `[n, 2n)` to `k - n`, `[2n, 4n]` to zero. Products index it at `i + j`;
///   quotients at `i - j + n`, so a zero dividend lands in the zero range and
///   only a zero divisor reaches the negative slots, which are never read.
/// * `t_plus1` and `t_sub` cover `[-2n, 2n]` and are indexed at `j - i`.
///   Inside `(-n, n)` they hold the code of `1 + g^k` and `1 - g^k`. Below
///   `-n` (left operand zero) they hold `k`, resp. `k + i_neg1`, so that
///   `t_mul[2n + t[k]]` is `j`, resp. `-j`. Above `n` (right operand zero)
///   they hold `0`, giving back `i`.
#[derive(Debug, Clone)]
pub struct FullTables {
    p: u64,
    q: u64,
    qbar: i64,
    t_mul: Vec<i32>,
    t_plus1: Vec<i32>,
    t_sub: Vec<i32>,
    to_code: Vec<u32>,
    from_code: Vec<u32>,
}

const POISON: i32 = i32::MIN;

impl FullTables {
    pub fn new(tables: &ZechTables) -> Result<Self> {
        Self::with_budget(tables, DEFAULT_TABLE_BUDGET)
    }

    pub fn with_budget(tables: &ZechTables, budget: u64) -> Result<Self> {
        let q = tables.q;
        check_budget(15 * 4 * q, budget)?;
        let n = q as i64 - 1;
        let zero = 2 * n;
        let recode = |c: u32| -> i32 {
            if c == 0 {
                zero as i32
            } else {
                (c as i64 % n) as i32
            }
        };
        let t_mul: Vec<i32> = (-n..=4 * n)
            .map(|k| match k {
                k if k < 0 => POISON,
                k if k < n => k as i32,
                k if k < 2 * n => (k - n) as i32,
                _ => zero as i32,
            })
            .collect();
        let ineg = tables.i_neg1.map_or(0, |h| h as i64);
        let one = tables.one_code();
        let plus = |k: i64| -> i32 {
            let c = ZechCode(k.rem_euclid(n) as u32);
            let c = if c.0 == 0 { one } else { c };
            recode(tables.add(one, c).0)
        };
        let minus = |k: i64| -> i32 {
            let c = ZechCode(k.rem_euclid(n) as u32);
            let c = if c.0 == 0 { one } else { c };
            recode(tables.sub(one, c).0)
        };
        let t_plus1 = (-2 * n..=2 * n)
            .map(|k| match k {
                k if k < -n => k as i32,
                k if k < n => plus(k),
                _ => 0,
            })
            .collect();
        let t_sub = (-2 * n..=2 * n)
            .map(|k| match k {
                k if k < -n => (k + ineg) as i32,
                k if k < n => minus(k),
                _ => 0,
            })
            .collect();
        let to_code = (0..q).map(|v| recode(tables.encode(v).0) as u32).collect();
        // slot n of from_code stands for the zero code 2n
        let from_code = (0..q)
            .map(|c| {
                if c as i64 == n {
                    0
                } else {
                    tables.decode(if c == 0 { one } else { ZechCode(c as u32) }) as u32
                }
            })
            .collect();
        Ok(Self {
            p: tables.p,
            q,
            qbar: n,
            t_mul,
            t_plus1,
            t_sub,
            to_code,
            from_code,
        })
    }

    pub fn zero_code(&self) -> FullCode {
        FullCode((2 * self.qbar) as u32)
    }

    /// Converts a plain Zech code.
    pub fn from_plain(&self, c: ZechCode) -> FullCode {
        if c.0 == 0 {
            self.zero_code()
        } else {
            FullCode((c.0 as i64 % self.qbar) as u32)
        }
    }

    pub fn to_plain(&self, c: FullCode) -> ZechCode {
        match c.0 as i64 {
            z if z == 2 * self.qbar => ZechCode(0),
            0 => ZechCode(self.qbar as u32),
            i => ZechCode(i as u32),
        }
    }

    /// Entry counts of `(t_mul, t_plus1, t_sub, to_code, from_code)`.
    pub fn table_sizes(&self) -> [usize; 5] {
        [
            self.t_mul.len(),
            self.t_plus1.len(),
            self.t_sub.len(),
            self.to_code.len(),
            self.from_code.len(),
        ]
    }

    pub fn table_entries(&self) -> usize {
        self.table_sizes().iter().sum()
    }

    #[inline(always)]
    fn mul_at(&self, k: i64) -> FullCode {
        FullCode(self.t_mul[(k + self.qbar) as usize] as u32)
    }

    #[inline(always)]
    fn side(&self, t: &[i32], i: FullCode, j: FullCode) -> i64 {
        t[(j.0 as i64 - i.0 as i64 + 2 * self.qbar) as usize] as i64
    }

    #[inline]
    pub fn full_mul(&self, a: FullCode, b: FullCode) -> FullCode {
        self.mul_at(a.0 as i64 + b.0 as i64)
    }

    #[inline]
    pub fn full_div(&self, a: FullCode, b: FullCode) -> Result<FullCode> {
        if b == self.zero_code() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.mul_at(a.0 as i64 - b.0 as i64 + self.qbar))
    }

    #[inline]
    pub fn full_add(&self, a: FullCode, b: FullCode) -> FullCode {
        self.mul_at(a.0 as i64 + self.side(&self.t_plus1, a, b))
    }

    #[inline]
    pub fn full_sub(&self, a: FullCode, b: FullCode) -> FullCode {
        self.mul_at(a.0 as i64 + self.side(&self.t_sub, a, b))
    }

    #[inline]
    pub fn full_neg(&self, a: FullCode) -> FullCode {
        self.full_sub(self.zero_code(), a)
    }
}

impl FiniteField for FullTables {
    type Elem = FullCode;

    fn order(&self) -> u64 {
        self.q
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn encode(&self, value: u64) -> FullCode {
        FullCode(self.to_code[(value % self.q) as usize])
    }

    fn decode(&self, elem: FullCode) -> u64 {
        let slot = (elem.0 as i64).min(self.qbar);
        self.from_code[slot as usize] as u64
    }

    fn add(&self, a: FullCode, b: FullCode) -> FullCode {
        self.full_add(a, b)
    }

    fn sub(&self, a: FullCode, b: FullCode) -> FullCode {
        self.full_sub(a, b)
    }

    fn neg(&self, a: FullCode) -> FullCode {
        self.full_neg(a)
    }

    fn mul(&self, a: FullCode, b: FullCode) -> FullCode {
        self.full_mul(a, b)
    }

    fn div(&self, a: FullCode, b: FullCode) -> Result<FullCode> {
        self.full_div(a, b)
    }

    fn axpy(&self, a: FullCode, x: FullCode, y: FullCode) -> FullCode {
        self.full_add(self.full_mul(a, x), y)
    }
}
