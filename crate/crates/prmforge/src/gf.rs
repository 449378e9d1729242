//! Exact arithmetic in GF(p^e).
//!
//! Elements are encoded as integers in `[0, q)`: the base-p digits of the
//! encoding, little-endian, are the coefficients of the residue polynomial.
//! So `0` is the additive identity and `1` the multiplicative identity.
//!
//! For q <= 1024 a `FieldSpec` carries log/antilog and addition tables, so
//! the inner-loop operations are single lookups. Larger fields (custom
//! modulus, up to 2^20) fall back to direct polynomial arithmetic.

use crate::error::{Error, Result};

/// An encoded field element: an integer in `[0, q)`.
pub type Elem = u32;

const TABLE_LIMIT: u64 = 1 << 10;
const FIELD_LIMIT: u64 = 1 << 20;

/// Built-in irreducible moduli for all prime powers <= 1024 with e >= 2.
const MODULI_TABLE: &str = include_str!("../data/moduli.txt");

/// A finite field GF(p^e) together with its arithmetic tables.
///
/// Immutable after construction; share freely across threads.
#[derive(Debug, Clone)]
pub struct FieldSpec {
    pub p: u32,
    pub e: u32,
    pub q: u32,
    /// Monic degree-e modulus, little-endian coefficients in `[0, p)`.
    /// For e = 1 this is the placeholder `x` and arithmetic is mod p.
    pub modulus: Vec<u32>,
    exp: Vec<Elem>,
    log: Vec<u32>,
    add_table: Vec<Elem>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.modulus == other.modulus
    }
}
impl Eq for FieldSpec {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn digits(mut a: u32, p: u32, e: u32) -> Vec<u32> {
    let mut out = vec![0u32; e as usize];
    for d in out.iter_mut() {
        *d = a % p;
        a /= p;
    }
    out
}

fn undigits(ds: &[u32], p: u32) -> u32 {
    ds.iter().rev().fold(0u32, |acc, &d| acc * p + d)
}

/// Remainder of `f` modulo monic `g`, both little-endian over GF(p).
fn poly_rem(f: &[u32], g: &[u32], p: u64) -> Vec<u32> {
    let mut r: Vec<u64> = f.iter().map(|&c| c as u64).collect();
    let dg = g.len() - 1;
    while r.len() > dg {
        let c = *r.last().unwrap();
        let shift = r.len() - 1 - dg;
        if c != 0 {
            for i in 0..dg {
                let sub = (c * g[i] as u64) % p;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
        }
        r.pop();
    }
    while r.last() == Some(&0) {
        r.pop();
    }
    r.iter().map(|&c| c as u32).collect()
}

/// Trial division against every monic polynomial of degree <= e/2.
fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let e = modulus.len() - 1;
    for deg in 1..=e / 2 {
        let count = (p as u64).pow(deg as u32);
        for enc in 0..count {
            let mut g = digits_u64(enc, p as u64, deg);
            g.push(1);
            if poly_rem(modulus, &g, p as u64).is_empty() {
                return false;
            }
        }
    }
    true
}

fn digits_u64(mut a: u64, p: u64, len: usize) -> Vec<u32> {
    let mut out = vec![0u32; len];
    for d in out.iter_mut() {
        *d = (a % p) as u32;
        a /= p;
    }
    out
}

fn builtin_modulus(p: u32, e: u32) -> Option<Vec<u32>> {
    for line in MODULI_TABLE.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut it = line.split_whitespace().map(|t| t.parse::<u32>().unwrap());
        let (tp, te) = (it.next().unwrap(), it.next().unwrap());
        if tp == p && te == e {
            return Some(it.collect());
        }
    }
    None
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Construct GF(p^e). With `modulus: None` the built-in table entry is used.
pub fn make_field(p: u32, e: u32, modulus: Option<Vec<u32>>) -> Result<FieldSpec> {
    FieldSpec::new(p, e, modulus)
}

impl FieldSpec {
    pub fn new(p: u32, e: u32, modulus: Option<Vec<u32>>) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        assert!(e >= 1, "field exponent must be positive");
        let q128 = (p as u128).pow(e);
        if q128 > FIELD_LIMIT as u128 {
            return Err(Error::UnsupportedFieldSize {
                q: q128.min(u64::MAX as u128) as u64,
            });
        }
        let q = q128 as u64;
        let modulus = match modulus {
            Some(m) => {
                if m.len() != e as usize + 1 || m[e as usize] != 1 || m.iter().any(|&c| c >= p) {
                    return Err(Error::ReducibleModulus { p: p as u64, deg: 0 });
                }
                m
            }
            None => {
                if e == 1 {
                    vec![0, 1]
                } else if q <= TABLE_LIMIT {
                    builtin_modulus(p, e).ok_or(Error::UnsupportedFieldSize { q })?
                } else {
                    return Err(Error::UnsupportedFieldSize { q });
                }
            }
        };
        if e >= 2 && !is_irreducible(&modulus, p) {
            return Err(Error::ReducibleModulus {
                p: p as u64,
                deg: (e / 2) as usize,
            });
        }
        let mut field = FieldSpec {
            p,
            e,
            q: q as u32,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
            add_table: Vec::new(),
        };
        if q <= TABLE_LIMIT {
            field.build_tables();
        }
        Ok(field)
    }

    fn raw_add(&self, a: Elem, b: Elem) -> Elem {
        if self.e == 1 {
            return ((a as u64 + b as u64) % self.p as u64) as Elem;
        }
        if self.p == 2 {
            return a ^ b;
        }
        let (da, db) = (digits(a, self.p, self.e), digits(b, self.p, self.e));
        let sum: Vec<u32> = da.iter().zip(&db).map(|(&x, &y)| (x + y) % self.p).collect();
        undigits(&sum, self.p)
    }

    fn raw_neg(&self, a: Elem) -> Elem {
        if self.e == 1 {
            return if a == 0 { 0 } else { self.p - a };
        }
        let da = digits(a, self.p, self.e);
        let neg: Vec<u32> = da.iter().map(|&x| if x == 0 { 0 } else { self.p - x }).collect();
        undigits(&neg, self.p)
    }

    fn raw_mul(&self, a: Elem, b: Elem) -> Elem {
        if self.e == 1 {
            return ((a as u64 * b as u64) % self.p as u64) as Elem;
        }
        let (da, db) = (digits(a, self.p, self.e), digits(b, self.p, self.e));
        let p = self.p as u64;
        let mut prod = vec![0u64; 2 * self.e as usize - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        let prod: Vec<u32> = prod.iter().map(|&c| c as u32).collect();
        let mut rem = poly_rem(&prod, &self.modulus, p);
        rem.resize(self.e as usize, 0);
        undigits(&rem, self.p)
    }

    fn raw_pow(&self, mut a: Elem, mut n: u64) -> Elem {
        let mut acc: Elem = 1;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.raw_mul(acc, a);
            }
            a = self.raw_mul(a, a);
            n >>= 1;
        }
        acc
    }

    fn build_tables(&mut self) {
        let q = self.q as u64;
        let order = q - 1;
        let factors = prime_factors(order);
        let mut gen: Elem = 1;
        for g in 1..self.q {
            if factors.iter().all(|&l| self.raw_pow(g, order / l) != 1) {
                gen = g;
                break;
            }
        }
        let mut exp = vec![0 as Elem; (2 * order) as usize];
        let mut log = vec![0u32; self.q as usize];
        let mut cur: Elem = 1;
        for i in 0..order as usize {
            exp[i] = cur;
            exp[i + order as usize] = cur;
            log[cur as usize] = i as u32;
            cur = self.raw_mul(cur, gen);
        }
        debug_assert_eq!(cur, 1, "generator order mismatch");
        let mut add_table = vec![0 as Elem; (q * q) as usize];
        for a in 0..self.q {
            for b in 0..=a {
                let s = self.raw_add(a, b);
                add_table[(a * self.q + b) as usize] = s;
                add_table[(b * self.q + a) as usize] = s;
            }
        }
        self.exp = exp;
        self.log = log;
        self.add_table = add_table;
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if !self.add_table.is_empty() {
            self.add_table[(a * self.q + b) as usize]
        } else {
            self.raw_add(a, b)
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.raw_neg(a)
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.raw_neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        if !self.exp.is_empty() {
            self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
        } else {
            self.raw_mul(a, b)
        }
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        if !self.exp.is_empty() {
            let order = self.q - 1;
            Ok(self.exp[(order - self.log[a as usize]) as usize % order.max(1) as usize])
        } else {
            Ok(self.raw_pow(a, self.q as u64 - 2))
        }
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// a^n with the convention a^0 = 1 (including 0^0 = 1, as needed for
    /// monomial evaluation).
    pub fn pow(&self, a: Elem, n: u64) -> Elem {
        if n == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        if !self.exp.is_empty() {
            let order = (self.q - 1) as u64;
            let idx = (self.log[a as usize] as u64 * (n % order.max(1))) % order.max(1);
            self.exp[idx as usize]
        } else {
            self.raw_pow(a, n)
        }
    }

    /// All q elements in ascending encoded order, starting 0, 1.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.q
    }
}

/// Ordered list of all field elements; see [`FieldSpec::elements`].
pub fn enumerate_elements(field: &FieldSpec) -> Vec<Elem> {
    field.elements().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf2_and_gf4_construction() {
        let f2 = make_field(2, 1, None).unwrap();
        assert_eq!(f2.q, 2);
        let f4 = make_field(2, 2, Some(vec![1, 1, 1])).unwrap();
        assert_eq!(f4.q, 4);
        // x^2 + 1 = (x+1)^2 over GF(2)
        assert!(matches!(
            make_field(2, 2, Some(vec![1, 0, 1])),
            Err(Error::ReducibleModulus { .. })
        ));
        assert!(matches!(make_field(6, 1, None), Err(Error::NotPrime(6))));
    }

    #[test]
    fn gf4_multiplication() {
        // with modulus x^2 + x + 1: element 2 = x, and x * x = x + 1 = 3
        let f4 = make_field(2, 2, None).unwrap();
        assert_eq!(f4.modulus, vec![1, 1, 1]);
        assert_eq!(f4.mul(2, 2), 3);
        assert_eq!(f4.mul(2, 3), 1);
    }

    #[test]
    fn gf5_inverse() {
        let f5 = make_field(5, 1, None).unwrap();
        assert_eq!(f5.inv(2).unwrap(), 3);
        assert!(f5.inv(0).is_err());
    }

    #[test]
    fn enumerate_starts_zero_one() {
        for (p, e, n) in [(2, 1, 2), (2, 2, 4), (3, 2, 9)] {
            let f = make_field(p, e, None).unwrap();
            let els = enumerate_elements(&f);
            assert_eq!(els.len(), n);
            assert_eq!(&els[..2], &[0, 1]);
        }
    }

    #[test]
    fn field_axioms_small_fields() {
        for (p, e) in [(2u32, 1u32), (3, 1), (2, 2), (2, 3), (3, 2), (2, 4)] {
            let f = make_field(p, e, None).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                    assert_eq!(f.pow(a, f.q as u64 - 1), 1);
                }
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements() {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.add(a, f.add(b, c)), f.add(f.add(a, b), c));
                        assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                    }
                }
            }
        }
    }

    #[test]
    fn characteristic_sums_to_zero() {
        for (p, e) in [(2u32, 3u32), (3, 2), (5, 2), (7, 1)] {
            let f = make_field(p, e, None).unwrap();
            let mut s = 0;
            for _ in 0..p {
                s = f.add(s, 1);
            }
            assert_eq!(s, 0);
        }
    }

    #[test]
    fn tables_agree_with_raw_arithmetic() {
        let f = make_field(3, 3, None).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(f.mul(a, b), f.raw_mul(a, b));
                assert_eq!(f.add(a, b), f.raw_add(a, b));
            }
        }
    }

    #[test]
    fn builtin_table_covers_all_prime_powers() {
        for p in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
            let mut e = 2u32;
            while (p as u64).pow(e) <= 1024 {
                let f = make_field(p, e, None).unwrap();
                assert_eq!(f.q as u64, (p as u64).pow(e));
                e += 1;
            }
        }
    }

    #[test]
    fn fermat_exhaustive_up_to_64() {
        for (p, e) in [(2u32, 6u32), (3, 3), (5, 2), (7, 2), (61, 1)] {
            let f = make_field(p, e, None).unwrap();
            if f.q > 64 {
                continue;
            }
            for a in 1..f.q {
                assert_eq!(f.pow(a, f.q as u64 - 1), 1);
            }
        }
    }

    #[test]
    fn large_prime_field_without_tables() {
        let f = make_field(1031, 1, None).unwrap();
        assert!(f.exp.is_empty());
        assert_eq!(f.mul(1030, 1030), 1); // (-1)^2
        assert_eq!(f.mul(f.inv(577).unwrap(), 577), 1);
    }
}
