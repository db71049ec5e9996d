//! Bihomogeneous polynomials in two variable pairs.
//!
//! A [`BiHomPoly`] of bidegree `(a, b)` is a combination of the monomials
//! `w^(a-j) z^j x^(b-i) y^i`, stored as a dense `(a+1) x (b+1)` grid of
//! rationals indexed by `(j, i)`. Every enumerator in the crate is one of
//! these; a plain enumerator in `(x, y)` has `a = 0`.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::exactmath::{binomial, rat_int, BigInt, Rational};
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BiHomPoly {
    deg_wz: usize,
    deg_xy: usize,
    coeff: Vec<Rational>,
}

/// A linear change of variables applied to both pairs independently:
/// `w -> wz[0] w + wz[1] z`, `z -> wz[2] w + wz[3] z`, and likewise for
/// `(x, y)` with `xy`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PairSubstitution {
    pub wz: [Rational; 4],
    pub xy: [Rational; 4],
}

impl PairSubstitution {
    pub fn identity() -> Self {
        let id = [
            Rational::one(),
            Rational::zero(),
            Rational::zero(),
            Rational::one(),
        ];
        PairSubstitution {
            wz: id.clone(),
            xy: id,
        }
    }

    /// `(w, z) -> (w + (Q-1) z, w - z)` on both pairs.
    pub fn macwilliams(order: &BigInt) -> Self {
        let m = [
            Rational::one(),
            Rational::from_integer(order - 1),
            Rational::one(),
            -Rational::one(),
        ];
        PairSubstitution {
            wz: m.clone(),
            xy: m,
        }
    }

    /// Substitution equal to applying `self` first and then `next`.
    pub fn then(&self, next: &Self) -> Self {
        fn compose(a: &[Rational; 4], b: &[Rational; 4]) -> [Rational; 4] {
            [
                &a[0] * &b[0] + &a[1] * &b[2],
                &a[0] * &b[1] + &a[1] * &b[3],
                &a[2] * &b[0] + &a[3] * &b[2],
                &a[2] * &b[1] + &a[3] * &b[3],
            ]
        }
        PairSubstitution {
            wz: compose(&self.wz, &next.wz),
            xy: compose(&self.xy, &next.xy),
        }
    }
}

/// `out[j][j']`: coefficient of `v0^(deg-j') v1^j'` in `u^(deg-j) v^j` where
/// `u = m[0] v0 + m[1] v1` and `v = m[2] v0 + m[3] v1`.
fn pair_matrix(m: &[Rational; 4], deg: usize) -> Vec<Vec<Rational>> {
    let expand = |c0: &Rational, c1: &Rational, e: usize| -> Vec<Rational> {
        (0..=e)
            .map(|s| {
                rat_int(binomial(e as u64, s as u64))
                    * num_traits::pow(c0.clone(), e - s)
                    * num_traits::pow(c1.clone(), s)
            })
            .collect()
    };
    (0..=deg)
        .map(|j| {
            let left = expand(&m[0], &m[1], deg - j);
            let right = expand(&m[2], &m[3], j);
            let mut row = vec![Rational::zero(); deg + 1];
            for (s, a) in left.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (t, b) in right.iter().enumerate() {
                    row[s + t] += a * b;
                }
            }
            row
        })
        .collect()
}

impl BiHomPoly {
    pub fn zero(deg_wz: usize, deg_xy: usize) -> Self {
        BiHomPoly {
            deg_wz,
            deg_xy,
            coeff: vec![Rational::zero(); (deg_wz + 1) * (deg_xy + 1)],
        }
    }

    pub fn monomial(deg_wz: usize, deg_xy: usize, j: usize, i: usize, c: Rational) -> Self {
        let mut p = Self::zero(deg_wz, deg_xy);
        p.set(j, i, c);
        p
    }

    /// Builds a polynomial from `grid[j][i]`.
    pub fn from_grid(grid: Vec<Vec<Rational>>) -> Result<Self> {
        let deg_wz = grid
            .len()
            .checked_sub(1)
            .ok_or_else(|| Error::Parse("empty grid".into()))?;
        let deg_xy = grid[0]
            .len()
            .checked_sub(1)
            .ok_or_else(|| Error::Parse("empty grid row".into()))?;
        if grid.iter().any(|r| r.len() != deg_xy + 1) {
            return Err(Error::Parse("ragged coefficient grid".into()));
        }
        Ok(BiHomPoly {
            deg_wz,
            deg_xy,
            coeff: grid.into_iter().flatten().collect(),
        })
    }

    /// Plain enumerator `sum_i a[i] x^(n-i) y^i`.
    pub fn from_xy_coeffs(a: &[Rational]) -> Self {
        BiHomPoly {
            deg_wz: 0,
            deg_xy: a.len() - 1,
            coeff: a.to_vec(),
        }
    }

    pub fn deg_wz(&self) -> usize {
        self.deg_wz
    }

    pub fn deg_xy(&self) -> usize {
        self.deg_xy
    }

    /// Coefficient of `w^(a-j) z^j x^(b-i) y^i`.
    pub fn get(&self, j: usize, i: usize) -> &Rational {
        &self.coeff[j * (self.deg_xy + 1) + i]
    }

    pub fn set(&mut self, j: usize, i: usize, c: Rational) {
        let w = self.deg_xy + 1;
        self.coeff[j * w + i] = c;
    }

    pub fn add_to(&mut self, j: usize, i: usize, c: &Rational) {
        let w = self.deg_xy + 1;
        self.coeff[j * w + i] += c;
    }

    pub fn grid(&self) -> Vec<Vec<Rational>> {
        self.coeff
            .chunks(self.deg_xy + 1)
            .map(<[Rational]>::to_vec)
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if (self.deg_wz, self.deg_xy) != (other.deg_wz, other.deg_xy) {
            return Err(Error::DegreeMismatch(
                self.deg_wz,
                self.deg_xy,
                other.deg_wz,
                other.deg_xy,
            ));
        }
        Ok(BiHomPoly {
            deg_wz: self.deg_wz,
            deg_xy: self.deg_xy,
            coeff: self
                .coeff
                .iter()
                .zip(&other.coeff)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        BiHomPoly {
            deg_wz: self.deg_wz,
            deg_xy: self.deg_xy,
            coeff: self.coeff.iter().map(|a| a * c).collect(),
        }
    }

    /// Replaces both variable pairs by their images and re-expands.
    pub fn substitute(&self, s: &PairSubstitution) -> Self {
        let mwz = pair_matrix(&s.wz, self.deg_wz);
        let mxy = pair_matrix(&s.xy, self.deg_xy);
        // first transform along i, then along j
        let mut half = BiHomPoly::zero(self.deg_wz, self.deg_xy);
        for j in 0..=self.deg_wz {
            for (i, images) in mxy.iter().enumerate() {
                let c = self.get(j, i);
                if c.is_zero() {
                    continue;
                }
                for (i2, m) in images.iter().enumerate() {
                    if !m.is_zero() {
                        half.add_to(j, i2, &(c * m));
                    }
                }
            }
        }
        let mut out = BiHomPoly::zero(self.deg_wz, self.deg_xy);
        for (j, images) in mwz.iter().enumerate() {
            for (j2, m) in images.iter().enumerate() {
                if m.is_zero() {
                    continue;
                }
                for i in 0..=self.deg_xy {
                    let c = half.get(j, i);
                    if !c.is_zero() {
                        out.add_to(j2, i, &(c * m));
                    }
                }
            }
        }
        out
    }

    /// Aronhold polarization `w d/dx + z d/dy`; moves one degree from the
    /// `(x, y)` pair to the `(w, z)` pair.
    pub fn polarize(&self) -> Result<Self> {
        if self.deg_xy == 0 {
            return Err(Error::DegreeUnderflow);
        }
        let (a, b) = (self.deg_wz, self.deg_xy);
        let mut out = BiHomPoly::zero(a + 1, b - 1);
        for j in 0..=a {
            for i in 0..=b {
                let c = self.get(j, i);
                if c.is_zero() {
                    continue;
                }
                if i < b {
                    out.add_to(j, i, &(c * rat_int((b - i) as i64)));
                }
                if i > 0 {
                    out.add_to(j + 1, i - 1, &(c * rat_int(i as i64)));
                }
            }
        }
        Ok(out)
    }

    pub fn eval(&self, w: &Rational, z: &Rational, x: &Rational, y: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for j in 0..=self.deg_wz {
            for i in 0..=self.deg_xy {
                let c = self.get(j, i);
                if c.is_zero() {
                    continue;
                }
                acc += c
                    * num_traits::pow(w.clone(), self.deg_wz - j)
                    * num_traits::pow(z.clone(), j)
                    * num_traits::pow(x.clone(), self.deg_xy - i)
                    * num_traits::pow(y.clone(), i);
            }
        }
        acc
    }

    /// Integer coefficient grid `[j][i]`, or `NonIntegerResult`.
    pub fn integer_grid(&self) -> Result<Vec<Vec<BigInt>>> {
        self.grid()
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|c| {
                        if c.is_integer() {
                            Ok(c.to_integer())
                        } else {
                            Err(Error::NonIntegerResult(format!("coefficient {c}")))
                        }
                    })
                    .collect()
            })
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(PolyJson {
            deg_wz: self.deg_wz,
            deg_xy: self.deg_xy,
            coeff: self
                .grid()
                .iter()
                .map(|r| r.iter().map(ToString::to_string).collect())
                .collect(),
        })
        .expect("plain data serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let pj: PolyJson =
            serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let grid = pj
            .coeff
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| {
                        s.parse::<Rational>()
                            .map_err(|e| Error::Parse(format!("{s}: {e}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let p = Self::from_grid(grid)?;
        if (p.deg_wz, p.deg_xy) != (pj.deg_wz, pj.deg_xy) {
            return Err(Error::Parse("declared bidegree does not match grid".into()));
        }
        Ok(p)
    }
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    deg_wz: usize,
    deg_xy: usize,
    coeff: Vec<Vec<String>>,
}

impl fmt::Display for BiHomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for j in 0..=self.deg_wz {
            for i in 0..=self.deg_xy {
                let c = self.get(j, i);
                if c.is_zero() {
                    continue;
                }
                let vars: Vec<String> = [
                    ("w", self.deg_wz - j),
                    ("z", j),
                    ("x", self.deg_xy - i),
                    ("y", i),
                ]
                .iter()
                .filter(|(_, e)| *e > 0)
                .map(|(v, e)| {
                    if *e == 1 {
                        v.to_string()
                    } else {
                        format!("{v}^{e}")
                    }
                })
                .collect();
                let mag = c.abs();
                let body = match (mag.is_one(), vars.is_empty()) {
                    (_, true) => mag.to_string(),
                    (true, false) => vars.join("*"),
                    (false, false) => format!("{mag}*{}", vars.join("*")),
                };
                let neg = c.is_negative();
                match (first, neg) {
                    (true, false) => write!(f, "{body}")?,
                    (true, true) => write!(f, "-{body}")?,
                    (false, false) => write!(f, " + {body}")?,
                    (false, true) => write!(f, " - {body}")?,
                }
                first = false;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
