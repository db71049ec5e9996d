//! Harmonic functions on subsets, Hahn polynomials, and recovery of higher
//! Jacobi coefficients from harmonic higher weight enumerators.
//!
//! A degree-`d` subset function assigns a rational to each `d`-subset of
//! `{0..n}`. Its extension `f~(X)` sums `f` over the `d`-subsets of `X`. The
//! function is harmonic when `gamma f = 0`, where
//! `(gamma f)(Y) = sum_{Z > Y} f(Z)` over `(d-1)`-subsets `Y`.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::bipoly::BiHomPoly;
use crate::code::{subsets_of_size, LinearCode, Mask, RefSet};
use crate::designs::BlockMultiset;
use crate::enumerators::{Enumerator, JacobiTable, TableKind};
use crate::exactmath::{
    binomial_rat, binomial_signed, pochhammer, rat_int, solve_full_column_rank, RatMatrix, Rational,
};
use crate::{Error, Result};

/// A rational function on the `d`-subsets of `{0..n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetFn {
    n: usize,
    d: usize,
    /// Domain in increasing mask order.
    domain: Vec<Mask>,
    values: Vec<Rational>,
}

impl SubsetFn {
    /// `values[k]` belongs to the `k`-th `d`-subset in increasing mask order.
    pub fn new(n: usize, d: usize, values: Vec<Rational>) -> Result<Self> {
        let domain = subsets_of_size(n, d);
        if d > n || values.len() != domain.len() {
            return Err(Error::DimensionMismatch(format!(
                "a degree-{d} function on {n} points needs {} values",
                domain.len()
            )));
        }
        Ok(SubsetFn {
            n,
            d,
            domain,
            values,
        })
    }

    pub fn from_fn(n: usize, d: usize, f: impl Fn(Mask) -> Rational) -> Result<Self> {
        if d > n {
            return Err(Error::InvalidArgument(format!(
                "degree {d} exceeds n = {n}"
            )));
        }
        let domain = subsets_of_size(n, d);
        let values = domain.iter().map(|&z| f(z)).collect();
        Ok(SubsetFn {
            n,
            d,
            domain,
            values,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn domain(&self) -> &[Mask] {
        &self.domain
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// `f(Z)`; zero off the domain.
    pub fn value(&self, z: Mask) -> Rational {
        match self.domain.binary_search(&z) {
            Ok(k) => self.values[k].clone(),
            Err(_) => Rational::zero(),
        }
    }

    /// `(gamma f)(Y) = sum_{Z > Y, |Z| = d} f(Z)`.
    pub fn gamma(&self) -> Result<SubsetFn> {
        if self.d == 0 {
            return Err(Error::DegreeUnderflow);
        }
        let mut acc: HashMap<Mask, Rational> = HashMap::new();
        for (&z, v) in self.domain.iter().zip(&self.values) {
            let mut rest = z;
            while rest != 0 {
                let bit = rest & rest.wrapping_neg();
                *acc.entry(z & !bit).or_insert_with(Rational::zero) += v;
                rest &= rest - 1;
            }
        }
        SubsetFn::from_fn(self.n, self.d - 1, |y| {
            acc.get(&y).cloned().unwrap_or_else(Rational::zero)
        })
    }

    pub fn is_harmonic(&self) -> bool {
        self.d == 0
            || self
                .gamma()
                .map(|g| g.values.iter().all(Zero::is_zero))
                .unwrap_or(false)
    }

    /// `f~(X) = sum_{Z <= X, |Z| = d} f(Z)`.
    pub fn f_tilde(&self, x: Mask) -> Rational {
        let members = crate::code::mask_members(x);
        if members.len() < self.d {
            return Rational::zero();
        }
        subsets_of_size(members.len(), self.d)
            .into_iter()
            .map(|pick| self.value(deposit(pick, &members)))
            .sum()
    }
}

/// Maps bit `k` of `pick` to coordinate `members[k]`.
fn deposit(mut pick: Mask, members: &[usize]) -> Mask {
    let mut out = 0;
    while pick != 0 {
        out |= 1 << members[pick.trailing_zeros() as usize];
        pick &= pick - 1;
    }
    out
}

/// A subset function with `gamma f = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HarmonicFn(SubsetFn);

impl HarmonicFn {
    pub fn new(f: SubsetFn) -> Result<Self> {
        if !f.is_harmonic() {
            return Err(Error::InvalidArgument(format!(
                "degree-{} function is not harmonic",
                f.d
            )));
        }
        Ok(HarmonicFn(f))
    }

    pub fn as_fn(&self) -> &SubsetFn {
        &self.0
    }

    pub fn f_tilde(&self, x: Mask) -> Rational {
        self.0.f_tilde(x)
    }
}

/// `gamma f` for a function given by its values, as a free function.
pub fn gamma(f: &SubsetFn) -> Result<SubsetFn> {
    f.gamma()
}

/// A basis of `Harm_d(n)`: the kernel of the inclusion matrix from
/// `d`-subsets to `(d-1)`-subsets, one vector per free column.
pub fn harm_basis(n: usize, d: usize) -> Result<Vec<HarmonicFn>> {
    if d > n {
        return Err(Error::InvalidArgument(format!(
            "degree {d} exceeds n = {n}"
        )));
    }
    let cols = subsets_of_size(n, d);
    if d == 0 {
        return Ok(vec![HarmonicFn(SubsetFn::new(
            n,
            0,
            vec![Rational::one()],
        )?)]);
    }
    let rows = subsets_of_size(n, d - 1);
    let mut m = RatMatrix::zeros(rows.len(), cols.len());
    for (a, &y) in rows.iter().enumerate() {
        for (b, &z) in cols.iter().enumerate() {
            if z & y == y {
                m.set(a, b, Rational::one());
            }
        }
    }
    m.nullspace()
        .into_iter()
        .map(|v| Ok(HarmonicFn(SubsetFn::new(n, d, v)?)))
        .collect()
}

/// `sum_{D, wt(D) = i} f~(Supp D)` as the coefficient of `x^{n-i} y^i`.
pub fn harmonic_higher_wenum(c: &LinearCode, f: &HarmonicFn, r: usize) -> Result<BiHomPoly> {
    harmonic_wenum_with(&Enumerator::new(c), f, r)
}

pub fn harmonic_wenum_with(e: &Enumerator, f: &HarmonicFn, r: usize) -> Result<BiHomPoly> {
    let n = e.code().n();
    if f.0.n != n {
        return Err(Error::DimensionMismatch(format!(
            "function on {} points, code of length {n}",
            f.0.n
        )));
    }
    let profile = e.subcode_profile(r)?;
    let entries: Vec<(Mask, u64)> = profile.iter().collect();
    let coeffs = entries
        .par_iter()
        .fold(
            || vec![Rational::zero(); n + 1],
            |mut acc, &(m, cnt)| {
                acc[m.count_ones() as usize] += f.f_tilde(m) * rat_int(cnt);
                acc
            },
        )
        .reduce(
            || vec![Rational::zero(); n + 1],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    Ok(BiHomPoly::from_xy_coeffs(&coeffs))
}

/// True iff `sum_B f~(B) = 0` for every basis function of `Harm_d(n)`,
/// `1 <= d <= t`. A strength above the block size is vacuous, as in the
/// literal definition.
pub fn delsarte_design_check(b: &BlockMultiset, t: usize) -> Result<bool> {
    if b.is_empty() || t > b.block_size() {
        return Ok(true);
    }
    for d in 1..=t {
        for f in harm_basis(b.n(), d)? {
            let s: Rational = b.iter().map(|(blk, m)| f.f_tilde(blk) * rat_int(m)).sum();
            if !s.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Parameters of `Q_m(x; alpha, beta, N)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HahnParams {
    pub alpha: Rational,
    pub beta: Rational,
    pub n: u64,
    pub m: usize,
}

impl HahnParams {
    /// `Q_d^t = Q_d(x; t-n-1, -t-1, t+1)`.
    pub fn kernel(n: usize, t: usize, d: usize) -> Self {
        HahnParams {
            alpha: rat_int(t as i64 - n as i64 - 1),
            beta: rat_int(-(t as i64) - 1),
            n: t as u64 + 1,
            m: d,
        }
    }
}

/// The terminating sum
/// `sum_{i<=m} (-m)_i (-x)_i (m+alpha+beta+1)_i / ((alpha+1)_i (1-N)_i i!)`.
pub fn hahn_eval(p: &HahnParams, x: i64) -> Result<Rational> {
    if p.n == 0 || p.m as u64 >= p.n {
        return Err(Error::InvalidArgument(format!(
            "degree m = {} needs m < N = {}",
            p.m, p.n
        )));
    }
    let one = Rational::one();
    let a1 = rat_int(-(p.m as i64));
    let a2 = rat_int(-x);
    let a3 = rat_int(p.m as i64) + &p.alpha + &p.beta + &one;
    let b1 = &p.alpha + &one;
    let b2 = rat_int(1 - p.n as i64);
    let mut sum = Rational::zero();
    let mut fact = Rational::one();
    for i in 0..=p.m {
        if i > 0 {
            fact *= rat_int(i as i64);
        }
        let den = pochhammer(&b1, i) * pochhammer(&b2, i);
        if den.is_zero() {
            return Err(Error::PochhammerZeroDenominator(i));
        }
        sum += pochhammer(&a1, i) * pochhammer(&a2, i) * pochhammer(&a3, i) / (den * &fact);
    }
    Ok(sum)
}

/// Both sides of `Q_m(N-1) = (-1)^m C(m+beta, m) / C(m+alpha, m)`.
pub fn hahn_endpoint(p: &HahnParams) -> Result<(Rational, Rational)> {
    let lhs = hahn_eval(p, p.n as i64 - 1)?;
    let m = p.m as u32;
    let num = binomial_rat(&(rat_int(p.m as i64) + &p.beta), m);
    let den = binomial_rat(&(rat_int(p.m as i64) + &p.alpha), m);
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let mut rhs = num / den;
    if p.m % 2 == 1 {
        rhs = -rhs;
    }
    Ok((lhs, rhs))
}

fn check_kernel_range(n: usize, t: usize, d: usize) -> Result<()> {
    if d < 1 || d > t || 2 * t > n {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= d <= t <= n/2, got n={n} t={t} d={d}"
        )));
    }
    Ok(())
}

/// `h_{d,t}(l, i)`: the extension of the Hahn kernel to a set of size `l`
/// meeting the reference `t`-set in `i` points.
pub fn h_dt(n: usize, t: usize, d: usize, l: usize, i: usize) -> Result<Rational> {
    check_kernel_range(n, t, d)?;
    if l > n || i > l.min(t) {
        return Err(Error::InvalidArgument(format!(
            "need l <= n and i <= min(l, t), got l={l} i={i}"
        )));
    }
    let params = HahnParams::kernel(n, t, d);
    let (n, t, d, l, i) = (n as i64, t as i64, d as i64, l as i64, i as i64);
    let mut q_cache: BTreeMap<i64, Rational> = BTreeMap::new();
    let mut sum = Rational::zero();
    for i1 in 0..=i {
        for i2 in 0..=t - i {
            for i3 in 0..=l - i {
                if i1 + i2 + i3 > t || i1 + i3 < d {
                    continue;
                }
                let v = binomial_signed(i, i1)
                    * binomial_signed(t - i, i2)
                    * binomial_signed(l - i, i3)
                    * binomial_signed(n - l - t + i, t - i1 - i2 - i3)
                    * binomial_signed(i1 + i3, d);
                if v.is_zero() {
                    continue;
                }
                let x = t - i1 - i2;
                let q = match q_cache.get(&x) {
                    Some(q) => q.clone(),
                    None => {
                        let q = hahn_eval(&params, x)?;
                        q_cache.insert(x, q.clone());
                        q
                    }
                };
                sum += rat_int(v) * q;
            }
        }
    }
    Ok(sum / rat_int(binomial_signed(n - 2 * d, t - d)))
}

/// The degree-`d` harmonic function `Z -> h_{d,t}(d, |Z n T|)`; its
/// extension to any `X` is `h_{d,t}(|X|, |X n T|)` and its values on
/// `t`-sets are `Q_d^t(t - |X n T|)`.
pub fn kernel_fn(t: &RefSet, d: usize) -> Result<HarmonicFn> {
    let (n, tl) = (t.n(), t.len());
    check_kernel_range(n, tl, d)?;
    let vals: Vec<Rational> = (0..=d.min(tl))
        .map(|i| h_dt(n, tl, d, d, i))
        .collect::<Result<_>>()?;
    let f = SubsetFn::from_fn(n, d, |z| vals[(z & t.mask()).count_ones() as usize].clone())?;
    HarmonicFn::new(f)
}

/// The per-weight linear system for `n_{l,i}`: rows `d = 0..=t`, columns
/// the feasible `i` (returned alongside).
pub struct RecoverySystem {
    pub l: usize,
    pub unknowns: Vec<usize>,
    pub matrix: RatMatrix,
    pub rhs: Vec<Rational>,
}

/// Builds the systems for every weight `l = 0..=n`.
pub fn recovery_systems(e: &Enumerator, r: usize, t: &RefSet) -> Result<Vec<RecoverySystem>> {
    let n = e.code().n();
    let tl = t.len();
    if t.n() != n {
        return Err(Error::DimensionMismatch(format!(
            "T lives in length {}, code has length {n}",
            t.n()
        )));
    }
    if 2 * tl > n {
        return Err(Error::InvalidArgument(format!("|T| = {tl} exceeds n/2")));
    }
    let a: Vec<Rational> = e
        .subcode_profile(r)?
        .weight_distribution()
        .iter()
        .map(|&c| rat_int(c))
        .collect();
    let harmonic: Vec<BiHomPoly> = (1..=tl)
        .map(|d| harmonic_wenum_with(e, &kernel_fn(t, d)?, r))
        .collect::<Result<_>>()?;
    (0..=n)
        .map(|l| {
            let unknowns: Vec<usize> = (l.saturating_sub(n - tl)..=l.min(tl)).collect();
            let mut rows = vec![vec![Rational::one(); unknowns.len()]];
            let mut rhs = vec![a[l].clone()];
            for d in 1..=tl {
                rows.push(
                    unknowns
                        .iter()
                        .map(|&i| h_dt(n, tl, d, l, i))
                        .collect::<Result<_>>()?,
                );
                rhs.push(harmonic[d - 1].get(0, l).clone());
            }
            Ok(RecoverySystem {
                l,
                unknowns,
                matrix: RatMatrix::from_rows(rows)?,
                rhs,
            })
        })
        .collect()
}

/// Recovers `J^{(r)}_{C,T}` from the higher weight enumerator and the
/// harmonic enumerators of the kernels `H_{d,T}`, `d = 1..=|T|`.
pub fn recover_jacobi(c: &LinearCode, r: usize, t: &RefSet) -> Result<JacobiTable> {
    recover_with(&Enumerator::new(c), r, t)
}

pub fn recover_with(e: &Enumerator, r: usize, t: &RefSet) -> Result<JacobiTable> {
    let mut tab = JacobiTable::zero(*t, TableKind::Higher(r));
    let mut grid = tab.grid().to_vec();
    for sys in recovery_systems(e, r, t)? {
        let sol = solve_full_column_rank(&sys.matrix, &sys.rhs)?;
        for (&i, v) in sys.unknowns.iter().zip(&sol) {
            let v = crate::exactmath::to_integer(v)
                .ok_or_else(|| Error::NonIntegerResult(format!("n_{{{},{i}}} = {v}", sys.l)))?;
            grid[sys.l - i][i] = v;
        }
    }
    tab = JacobiTable::new(*t, TableKind::Higher(r), grid)?;
    Ok(tab)
}
