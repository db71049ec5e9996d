//! Finite field arithmetic in GF(p^e).
//!
//! Elements are encoded as integers in `[0, q)` whose base-p digits are the
//! coefficients of the representing polynomial, constant term least
//! significant. The modulus is the lexicographically least monic
//! irreducible polynomial of degree `e`, comparing the lower coefficients as
//! a base-p number. For `e = 1` that polynomial is `x` itself, so the same
//! construction yields plain arithmetic mod p.
//!
//! Small fields (q <= 256) get full q x q addition and multiplication tables;
//! larger ones fall back to polynomial arithmetic.

use std::fmt;
use std::sync::Arc;

use crate::{Error, Result};

const TABLE_LIMIT: u32 = 256;
const MAX_ORDER: u64 = 1 << 16;

/// Shared handle to a field description.
pub type Field = Arc<FieldSpec>;

pub struct FieldSpec {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    add_table: Vec<u32>,
    mul_table: Vec<u32>,
    neg_table: Vec<u32>,
    inv_table: Vec<u32>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod {:?}", self.p, self.e, self.modulus)
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

pub fn is_prime(n: u64) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

/// Builds GF(p^e) with the canonical modulus.
pub fn field_new(p: u64, e: u32) -> Result<Field> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if e == 0 {
        return Err(Error::InvalidArgument(
            "extension degree must be at least 1".into(),
        ));
    }
    let q = (p as u128)
        .checked_pow(e)
        .filter(|&q| q <= MAX_ORDER as u128);
    let Some(q) = q else {
        return Err(Error::TooLarge(format!(
            "GF({p}^{e}) exceeds 2^16 elements"
        )));
    };
    let p = p as u32;
    let q = q as u32;
    let modulus = least_irreducible(p, e as usize);
    let mut spec = FieldSpec {
        p,
        e,
        q,
        modulus,
        add_table: Vec::new(),
        mul_table: Vec::new(),
        neg_table: Vec::new(),
        inv_table: Vec::new(),
    };
    spec.neg_table = (0..q).map(|a| spec.neg_slow(a)).collect();
    if q <= TABLE_LIMIT {
        let n = q as usize;
        spec.add_table = vec![0; n * n];
        spec.mul_table = vec![0; n * n];
        for a in 0..q {
            for b in 0..q {
                spec.add_table[a as usize * n + b as usize] = spec.add_slow(a, b);
                spec.mul_table[a as usize * n + b as usize] = spec.mul_slow(a, b);
            }
        }
    }
    let inv = (0..q)
        .map(|a| if a == 0 { 0 } else { spec.pow(a, q - 2) })
        .collect();
    spec.inv_table = inv;
    Ok(Arc::new(spec))
}

impl FieldSpec {
    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn is_prime_field(&self) -> bool {
        self.e == 1
    }

    /// Modulus coefficients, constant term first, leading 1 last.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.add_table.is_empty() {
            self.add_slow(a, b)
        } else {
            self.add_table[(a * self.q + b) as usize]
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if self.mul_table.is_empty() {
            self.mul_slow(a, b)
        } else {
            self.mul_table[(a * self.q + b) as usize]
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg_table[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse, `None` for zero.
    #[inline]
    pub fn inv(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.inv_table[a as usize])
    }

    pub fn pow(&self, a: u32, mut exp: u32) -> u32 {
        let mut base = a;
        let mut acc = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative order of a nonzero element.
    pub fn order_of(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
        }
        Some(k)
    }

    /// Smallest-encoded generator of the multiplicative group.
    pub fn generator(&self) -> Option<u32> {
        (1..self.q).find(|&a| self.order_of(a) == Some(self.q - 1))
    }

    fn digits(&self, mut a: u32) -> Vec<u32> {
        let mut d = vec![0; self.e as usize];
        for slot in d.iter_mut() {
            *slot = a % self.p;
            a /= self.p;
        }
        d
    }

    fn undigits(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn add_slow(&self, a: u32, b: u32) -> u32 {
        let (da, db) = (self.digits(a), self.digits(b));
        let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.undigits(&sum)
    }

    fn neg_slow(&self, a: u32) -> u32 {
        let d: Vec<u32> = self
            .digits(a)
            .iter()
            .map(|&x| (self.p - x) % self.p)
            .collect();
        self.undigits(&d)
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let prod = poly_mul(&self.digits(a), &self.digits(b), self.p);
        let mut rem = poly_rem(&prod, &self.modulus, self.p);
        rem.resize(self.e as usize, 0);
        self.undigits(&rem)
    }
}

/// An element tied to its field, with checked operations.
#[derive(Clone)]
pub struct FieldElement {
    field: Field,
    value: u32,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && *self.field == *other.field
    }
}

impl Eq for FieldElement {}

impl FieldElement {
    pub fn new(field: &Field, value: u32) -> Result<Self> {
        if value >= field.q {
            return Err(Error::FieldMismatch {
                value: value as u64,
                q: field.q as u64,
            });
        }
        Ok(FieldElement {
            field: field.clone(),
            value,
        })
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn check(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field {
            Ok(())
        } else {
            Err(Error::SpecMismatch)
        }
    }

    fn with(&self, value: u32) -> Self {
        FieldElement {
            field: self.field.clone(),
            value,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with(self.field.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with(self.field.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with(self.field.mul(self.value, other.value)))
    }

    pub fn neg(&self) -> Self {
        self.with(self.field.neg(self.value))
    }

    pub fn inv(&self) -> Result<Self> {
        self.field
            .inv(self.value)
            .map(|v| self.with(v))
            .ok_or(Error::DivisionByZero)
    }
}

/// All q elements in increasing encoding order, zero first.
pub fn field_elements(field: &Field) -> Vec<FieldElement> {
    (0..field.q)
        .map(|v| FieldElement {
            field: field.clone(),
            value: v,
        })
        .collect()
}

fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    trim(out.into_iter().map(|v| v as u32).collect())
}

/// Remainder of `a` modulo the monic polynomial `m`.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        for (i, &c) in m.iter().enumerate() {
            let sub = (lead as u64 * c as u64 % p as u64) as u32;
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
        r = trim(r);
    }
    r
}

fn monic_from_index(idx: u64, deg: usize, p: u32) -> Vec<u32> {
    let mut c = Vec::with_capacity(deg + 1);
    let mut v = idx;
    for _ in 0..deg {
        c.push((v % p as u64) as u32);
        v /= p as u64;
    }
    c.push(1);
    c
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        for idx in 0..(p as u64).pow(d as u32) {
            let g = monic_from_index(idx, d, p);
            if poly_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn least_irreducible(p: u32, deg: usize) -> Vec<u32> {
    (0..(p as u64).pow(deg as u32))
        .map(|idx| monic_from_index(idx, deg, p))
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}
