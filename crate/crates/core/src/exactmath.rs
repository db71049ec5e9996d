//! Exact integer and rational arithmetic plus dense exact linear solving.
//!
//! Integers and rationals come from `num-bigint` / `num-rational`; the
//! elimination routines on [`RatMatrix`] are local. Rationals are always kept
//! in lowest terms with a positive denominator, so `==` is canonical, and
//! they render as `p/q` (just `p` when the denominator is one).

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

pub use num_bigint::BigInt;

/// Exact rational number, normalized on every operation.
pub type Rational = num_rational::BigRational;

pub fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(v: impl Into<BigInt>) -> Rational {
    Rational::from_integer(v.into())
}

/// Returns the integer value of `r` when its denominator is one.
pub fn to_integer(r: &Rational) -> Option<BigInt> {
    if r.is_integer() {
        Some(r.to_integer())
    } else {
        None
    }
}

/// `base^exp` for a possibly negative exponent, as a rational.
pub fn pow_rat(base: u64, exp: i64) -> Rational {
    let p = num_traits::pow(BigInt::from(base), exp.unsigned_abs() as usize);
    if exp >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

/// Ordinary binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Combinatorial binomial on signed arguments: zero unless `0 <= k <= n`.
pub fn binomial_signed(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        BigInt::zero()
    } else {
        binomial(n as u64, k as u64)
    }
}

/// Generalized binomial `x (x-1) ... (x-m+1) / m!` for rational `x`.
pub fn binomial_rat(x: &Rational, m: u32) -> Rational {
    let mut acc = Rational::one();
    for i in 0..m {
        acc *= x - rat_int(i as i64);
        acc /= rat_int((i + 1) as i64);
    }
    acc
}

/// Rising factorial `(a)_i = a (a+1) ... (a+i-1)`.
pub fn pochhammer(a: &Rational, i: usize) -> Rational {
    let mut acc = Rational::one();
    for j in 0..i {
        acc *= a + rat_int(j as i64);
    }
    acc
}

/// Dense rectangular matrix of rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(RatMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix times vector of length {}",
                self.rows,
                self.cols,
                x.len()
            )));
        }
        Ok((0..self.rows)
            .map(|r| self.row(r).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..self.cols {
            if lead == self.rows {
                break;
            }
            let Some(p) = (lead..self.rows).find(|&r| !self.get(r, c).is_zero()) else {
                continue;
            };
            self.swap_rows(p, lead);
            let inv = self.get(lead, c).recip();
            for j in 0..self.cols {
                let v = self.get(lead, j) * &inv;
                self.set(lead, j, v);
            }
            for r in 0..self.rows {
                if r != lead && !self.get(r, c).is_zero() {
                    let f = self.get(r, c).clone();
                    for j in 0..self.cols {
                        let v = self.get(r, j) - &f * self.get(lead, j);
                        self.set(r, j, v);
                    }
                }
            }
            pivots.push(c);
            lead += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right null space, one vector per free column, in
    /// increasing free-column order.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -m.get(r, f).clone();
                }
                v
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Solves the square nonsingular system `a * x = b` exactly.
pub fn rat_solve(a: &RatMatrix, b: &[Rational]) -> Result<Vec<Rational>> {
    if a.rows() != a.cols() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} is not square",
            a.rows(),
            a.cols()
        )));
    }
    solve_full_column_rank(a, b)
}

/// Solves `a * x = b` for a matrix with at least as many rows as columns.
///
/// The solution must be unique (rank equal to the column count) and must
/// satisfy every row, including the redundant ones.
pub fn solve_full_column_rank(a: &RatMatrix, b: &[Rational]) -> Result<Vec<Rational>> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "{} rows but right-hand side of length {}",
            a.rows(),
            b.len()
        )));
    }
    let n = a.cols();
    let mut aug = RatMatrix::zeros(a.rows(), n + 1);
    for (r, rhs) in b.iter().enumerate() {
        for c in 0..n {
            aug.set(r, c, a.get(r, c).clone());
        }
        aug.set(r, n, rhs.clone());
    }
    let pivots = aug.rref();
    if pivots.iter().filter(|&&p| p < n).count() < n {
        return Err(Error::SingularMatrix);
    }
    if pivots.contains(&n) {
        return Err(Error::InconsistentSystem);
    }
    Ok((0..n).map(|r| aug.get(r, n).clone()).collect())
}

/// True when `v` is a nonnegative integer; used by integrality assertions.
pub fn is_nonnegative_integer(v: &Rational) -> bool {
    v.is_integer() && !v.is_negative()
}

/// `a / b` for integers when `b` divides `a`.
pub fn exact_div(a: &BigInt, b: &BigInt) -> Option<BigInt> {
    let (q, r) = a.div_rem(b);
    r.is_zero().then_some(q)
}
