//! Weight enumerators and Jacobi polynomials of a code, ordinary, higher
//! (over r-dimensional subcodes) and extended (over GF(q^m)).
//!
//! Every table has a second computation route so the identities relating
//! them can be checked against each other:
//!
//! | table            | direct                     | alternative                    |
//! |------------------|----------------------------|--------------------------------|
//! | higher Jacobi    | subcode supports           | shortened dimensions (`Q`)     |
//! |                  |                            | alternating sum of extended    |
//! | extended Jacobi  | extension codewords        | sum of higher tables           |
//! |                  |                            | shortened dimensions (`Q`)     |

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};
use rand::Rng;
use serde_json::json;

use crate::bipoly::BiHomPoly;
use crate::code::{support, wt_on, Limits, LinearCode, Mask, RefSet, SupportProfile};
use crate::exactmath::{binomial, rat_int, BigInt, Rational};
use crate::gf::field_new;
use crate::qcomb::{choose2, gauss_binom, qbracket, qfact};
use crate::{Error, Result};

/// What a [`JacobiTable`] counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TableKind {
    /// Codewords.
    Plain,
    /// r-dimensional subcodes.
    Higher(usize),
    /// Codewords of the extension code over GF(q^m).
    Extended(u32),
}

impl fmt::Display for TableKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableKind::Plain => write!(f, "plain"),
            TableKind::Higher(r) => write!(f, "higher r={r}"),
            TableKind::Extended(m) => write!(f, "extended m={m}"),
        }
    }
}

/// `A[i][j]`: how many members have weight `i` outside `T` and `j` on `T`.
///
/// Equality compares `n`, `T` and the grid, not the kind, so a table
/// computed for `m = 1` equals the plain one.
#[derive(Clone, Debug)]
pub struct JacobiTable {
    n: usize,
    t: RefSet,
    kind: TableKind,
    grid: Vec<Vec<BigInt>>,
}

impl PartialEq for JacobiTable {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.t == other.t && self.grid == other.grid
    }
}

impl Eq for JacobiTable {}

impl JacobiTable {
    pub fn zero(t: RefSet, kind: TableKind) -> Self {
        let n = t.n();
        let grid = vec![vec![BigInt::zero(); t.len() + 1]; n - t.len() + 1];
        JacobiTable { n, t, kind, grid }
    }

    /// The table whose only member is the zero word.
    pub fn trivial(t: RefSet, kind: TableKind) -> Self {
        let mut tab = Self::zero(t, kind);
        tab.grid[0][0] = BigInt::one();
        tab
    }

    pub fn new(t: RefSet, kind: TableKind, grid: Vec<Vec<BigInt>>) -> Result<Self> {
        let (rows, cols) = (t.n() - t.len() + 1, t.len() + 1);
        if grid.len() != rows || grid.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!(
                "table must be {rows} x {cols}"
            )));
        }
        Ok(JacobiTable {
            n: t.n(),
            t,
            kind,
            grid,
        })
    }

    /// Tallies a support multiset against `T`.
    pub fn from_profile(t: RefSet, kind: TableKind, profile: &SupportProfile) -> Self {
        let mut tab = Self::zero(t, kind);
        for (m, c) in profile.iter() {
            let (on, off) = wt_on(m, &t);
            tab.grid[off][on] += c;
        }
        tab
    }

    /// Reads a table back from its polynomial form; coefficients must be
    /// integers.
    pub fn from_poly(t: RefSet, kind: TableKind, poly: &BiHomPoly) -> Result<Self> {
        if poly.deg_wz() != t.len() || poly.deg_xy() != t.n() - t.len() {
            return Err(Error::DegreeMismatch(
                poly.deg_wz(),
                poly.deg_xy(),
                t.len(),
                t.n() - t.len(),
            ));
        }
        let g = poly.integer_grid()?;
        let grid = (0..=poly.deg_xy())
            .map(|i| (0..=poly.deg_wz()).map(|j| g[j][i].clone()).collect())
            .collect();
        Self::new(t, kind, grid)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ref_set(&self) -> &RefSet {
        &self.t
    }

    pub fn kind(&self) -> TableKind {
        self.kind
    }

    pub fn with_kind(mut self, kind: TableKind) -> Self {
        self.kind = kind;
        self
    }

    /// `A[i][j]`, `i` outside `T`, `j` on `T`.
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.grid[i][j]
    }

    pub fn grid(&self) -> &[Vec<BigInt>] {
        &self.grid
    }

    pub fn total(&self) -> BigInt {
        self.grid.iter().flatten().sum()
    }

    /// Coefficients of the weight enumerator obtained by forgetting `T`.
    pub fn marginal(&self) -> Vec<BigInt> {
        let mut a = vec![BigInt::zero(); self.n + 1];
        for (i, row) in self.grid.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                a[i + j] += v;
            }
        }
        a
    }

    /// `sum_{i,j} A[i][j] w^{|T|-j} z^j x^{n-|T|-i} y^i`.
    pub fn to_poly(&self) -> BiHomPoly {
        let mut p = BiHomPoly::zero(self.t.len(), self.n - self.t.len());
        for (i, row) in self.grid.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    p.set(j, i, rat_int(v.clone()));
                }
            }
        }
        p
    }

    /// Entrywise linear combination `sum c_k T_k`, checked to be integral.
    pub fn combine(t: RefSet, kind: TableKind, terms: &[(Rational, &JacobiTable)]) -> Result<Self> {
        let mut acc = vec![vec![Rational::zero(); t.len() + 1]; t.n() - t.len() + 1];
        for (c, tab) in terms {
            if tab.t != t {
                return Err(Error::SpecMismatch);
            }
            for (i, row) in tab.grid.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    acc[i][j] += c * rat_int(v.clone());
                }
            }
        }
        let grid = acc
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, v)| {
                        crate::exactmath::to_integer(v).ok_or_else(|| {
                            Error::NonIntegerResult(format!("entry ({i},{j}) = {v}"))
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(t, kind, grid)
    }

    /// First `(i, j)` where the grids disagree.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        if self.grid.len() != other.grid.len() {
            return Some((0, 0));
        }
        for (i, (a, b)) in self.grid.iter().zip(&other.grid).enumerate() {
            if a.len() != b.len() {
                return Some((i, 0));
            }
            if let Some(j) = a.iter().zip(b).position(|(x, y)| x != y) {
                return Some((i, j));
            }
        }
        None
    }

    pub fn to_json(&self) -> serde_json::Value {
        let members: Vec<usize> = self.t.members().iter().map(|c| c + 1).collect();
        let grid: Vec<Vec<String>> = self
            .grid
            .iter()
            .map(|r| r.iter().map(BigInt::to_string).collect())
            .collect();
        let mut v = json!({ "n": self.n, "T": members, "kind": "plain", "grid": grid });
        match self.kind {
            TableKind::Plain => {}
            TableKind::Higher(r) => {
                v["kind"] = json!("higher");
                v["r"] = json!(r);
            }
            TableKind::Extended(m) => {
                v["kind"] = json!("extended");
                v["m"] = json!(m);
            }
        }
        v
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("table JSON: {what}"));
        let n = v["n"].as_u64().ok_or_else(|| bad("missing n"))? as usize;
        let members: Vec<usize> = v["T"]
            .as_array()
            .ok_or_else(|| bad("missing T"))?
            .iter()
            .map(|c| c.as_u64().map(|c| c as usize).ok_or_else(|| bad("T entry")))
            .collect::<Result<_>>()?;
        let t = RefSet::from_one_based(n, &members)?;
        let kind = match v["kind"].as_str() {
            Some("plain") => TableKind::Plain,
            Some("higher") => {
                TableKind::Higher(v["r"].as_u64().ok_or_else(|| bad("missing r"))? as usize)
            }
            Some("extended") => {
                TableKind::Extended(v["m"].as_u64().ok_or_else(|| bad("missing m"))? as u32)
            }
            _ => return Err(bad("kind")),
        };
        let grid = v["grid"]
            .as_array()
            .ok_or_else(|| bad("missing grid"))?
            .iter()
            .map(|row| {
                row.as_array()
                    .ok_or_else(|| bad("grid row"))?
                    .iter()
                    .map(|c| match c {
                        serde_json::Value::String(s) => {
                            s.parse::<BigInt>().map_err(|_| bad("grid entry"))
                        }
                        serde_json::Value::Number(x) => x
                            .as_i64()
                            .map(BigInt::from)
                            .ok_or_else(|| bad("grid entry")),
                        _ => Err(bad("grid entry")),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(t, kind, grid)
    }
}

/// Enumerations of one code, memoised so that sweeps over many reference
/// sets pay for each subcode or extension enumeration once.
pub struct Enumerator<'a> {
    code: &'a LinearCode,
    limits: Limits,
    codewords: OnceLock<Arc<SupportProfile>>,
    subcodes: Mutex<HashMap<usize, Arc<SupportProfile>>>,
    extensions: Mutex<HashMap<u32, Arc<SupportProfile>>>,
    vanishing: OnceLock<Arc<Vec<u8>>>,
}

impl<'a> Enumerator<'a> {
    pub fn new(code: &'a LinearCode) -> Self {
        Self::with_limits(code, Limits::default())
    }

    pub fn with_limits(code: &'a LinearCode, limits: Limits) -> Self {
        Enumerator {
            code,
            limits,
            codewords: OnceLock::new(),
            subcodes: Mutex::new(HashMap::new()),
            extensions: Mutex::new(HashMap::new()),
            vanishing: OnceLock::new(),
        }
    }

    pub fn code(&self) -> &LinearCode {
        self.code
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    fn check_t(&self, t: &RefSet) -> Result<()> {
        if t.n() != self.code.n() {
            return Err(Error::DimensionMismatch(format!(
                "T lives in length {}, code has length {}",
                t.n(),
                self.code.n()
            )));
        }
        Ok(())
    }

    pub fn codeword_profile(&self) -> Result<Arc<SupportProfile>> {
        if let Some(p) = self.codewords.get() {
            return Ok(p.clone());
        }
        let p = Arc::new(self.code.codeword_profile(&self.limits)?);
        Ok(self.codewords.get_or_init(|| p).clone())
    }

    pub fn subcode_profile(&self, r: usize) -> Result<Arc<SupportProfile>> {
        if let Some(p) = self.subcodes.lock().unwrap().get(&r) {
            return Ok(p.clone());
        }
        let p = Arc::new(self.code.subcode_profile(r, &self.limits)?);
        Ok(self.subcodes.lock().unwrap().entry(r).or_insert(p).clone())
    }

    pub fn extension_profile(&self, m: u32) -> Result<Arc<SupportProfile>> {
        if let Some(p) = self.extensions.lock().unwrap().get(&m) {
            return Ok(p.clone());
        }
        let p = Arc::new(self.code.extension_profile(m, &self.limits)?);
        Ok(self
            .extensions
            .lock()
            .unwrap()
            .entry(m)
            .or_insert(p)
            .clone())
    }

    /// `k - rank` of the columns in each coordinate subset, indexed by mask.
    pub fn vanishing_dims(&self) -> Result<Arc<Vec<u8>>> {
        if let Some(v) = self.vanishing.get() {
            return Ok(v.clone());
        }
        let v = Arc::new(self.code.vanishing_dims(&self.limits)?);
        Ok(self.vanishing.get_or_init(|| v).clone())
    }

    /// Coefficients of x^{n-i} y^i.
    pub fn weight_enum(&self) -> Result<BiHomPoly> {
        Ok(distribution_poly(
            &self.codeword_profile()?.weight_distribution(),
        ))
    }

    pub fn higher_weight_enum(&self, r: usize) -> Result<BiHomPoly> {
        Ok(distribution_poly(
            &self.subcode_profile(r)?.weight_distribution(),
        ))
    }

    pub fn jacobi(&self, t: &RefSet) -> Result<JacobiTable> {
        self.check_t(t)?;
        Ok(JacobiTable::from_profile(
            *t,
            TableKind::Plain,
            &*self.codeword_profile()?,
        ))
    }

    pub fn higher_jacobi(&self, t: &RefSet, r: usize) -> Result<JacobiTable> {
        self.check_t(t)?;
        Ok(JacobiTable::from_profile(
            *t,
            TableKind::Higher(r),
            &*self.subcode_profile(r)?,
        ))
    }

    /// Extension codewords counted directly; prime base fields only.
    pub fn extended_jacobi_direct(&self, t: &RefSet, m: u32) -> Result<JacobiTable> {
        self.check_t(t)?;
        Ok(JacobiTable::from_profile(
            *t,
            TableKind::Extended(m),
            &*self.extension_profile(m)?,
        ))
    }

    /// `A^{q^m} = sum_r [m,r]_q A^{(r)}`.
    pub fn extended_jacobi(&self, t: &RefSet, m: u32) -> Result<JacobiTable> {
        self.check_t(t)?;
        if m == 0 {
            return Err(Error::InvalidArgument(
                "extension degree m must be at least 1".into(),
            ));
        }
        let q = self.code.q();
        let top = self.code.k().min(m as usize);
        let tables = (0..=top)
            .map(|r| self.higher_jacobi(t, r))
            .collect::<Result<Vec<_>>>()?;
        let terms: Vec<(Rational, &JacobiTable)> = tables
            .iter()
            .enumerate()
            .map(|(r, tab)| (rat_int(qfact(m as u64, r as u64, q)), tab))
            .collect();
        JacobiTable::combine(*t, TableKind::Extended(m), &terms)
    }

    /// Histogram `h[s][t][l]`: coordinate sets with `s` points outside `T`,
    /// `t` inside, on which the subcode vanishing has dimension `l`.
    fn shortened_histogram(&self, t: &RefSet) -> Result<Vec<Vec<Vec<u64>>>> {
        self.check_t(t)?;
        let dims = self.vanishing_dims()?;
        let k = self.code.k();
        let mut h = vec![vec![vec![0u64; k + 1]; t.len() + 1]; t.n() - t.len() + 1];
        for (mask, &l) in dims.iter().enumerate() {
            let (on, off) = wt_on(mask as Mask, t);
            h[off][on][l as usize] += 1;
        }
        Ok(h)
    }

    /// `Q_{s,t}^{(r)} = sum_{X,Y} gauss(l_T(X,Y), r)` over `X` an `s`-subset
    /// of the complement and `Y` a `t`-subset of `T`.
    pub fn q_st(&self, t: &RefSet, r: usize, s: usize, tt: usize) -> Result<BigInt> {
        let grid = self.q_grid(t, |l| gauss_binom(l as u64, r as u64, self.code.q()))?;
        grid.get(s)
            .and_then(|row| row.get(tt))
            .cloned()
            .ok_or_else(|| Error::InvalidArgument(format!("s={s}, t={tt} out of range")))
    }

    /// `Q_{s,t}^{q^m} = sum_{X,Y} (q^m)^{l_T(X,Y)}`.
    pub fn q_st_ext(&self, t: &RefSet, m: u32, s: usize, tt: usize) -> Result<BigInt> {
        let qm = BigInt::from(self.code.q()).pow(m);
        let grid = self.q_grid(t, |l| qm.pow(l as u32))?;
        grid.get(s)
            .and_then(|row| row.get(tt))
            .cloned()
            .ok_or_else(|| Error::InvalidArgument(format!("s={s}, t={tt} out of range")))
    }

    fn q_grid(&self, t: &RefSet, weight: impl Fn(usize) -> BigInt) -> Result<Vec<Vec<BigInt>>> {
        let h = self.shortened_histogram(t)?;
        let w: Vec<BigInt> = (0..=self.code.k()).map(weight).collect();
        Ok(h.iter()
            .map(|row| {
                row.iter()
                    .map(|cell| cell.iter().zip(&w).map(|(&c, v)| v * c).sum())
                    .collect()
            })
            .collect())
    }

    /// `J = sum Q_{s,t} (w-z)^t z^{|T|-t} (x-y)^s y^{n-|T|-s}` from the
    /// shortened dimensions alone.
    pub fn higher_jacobi_via_q(&self, t: &RefSet, r: usize) -> Result<JacobiTable> {
        if r > self.code.k() {
            return Err(Error::InvalidArgument(format!(
                "r = {r} exceeds dimension k = {}",
                self.code.k()
            )));
        }
        let q = self.code.q();
        let grid = self.q_grid(t, |l| gauss_binom(l as u64, r as u64, q))?;
        JacobiTable::from_poly(*t, TableKind::Higher(r), &expand_q(t, &grid))
    }

    /// The extended table from the shortened dimensions; works for every
    /// base field.
    pub fn extended_jacobi_via_q(&self, t: &RefSet, m: u32) -> Result<JacobiTable> {
        let qm = BigInt::from(self.code.q()).pow(m);
        let grid = self.q_grid(t, |l| qm.pow(l as u32))?;
        JacobiTable::from_poly(*t, TableKind::Extended(m), &expand_q(t, &grid))
    }

    /// The extended table by whichever non-subcode route applies: direct
    /// extension enumeration for prime base fields within the guard, the
    /// shortened-dimension route otherwise.
    fn extended_independent(&self, t: &RefSet, m: u32) -> Result<JacobiTable> {
        if m == 0 {
            return Ok(JacobiTable::trivial(*t, TableKind::Extended(0)));
        }
        match self.extended_jacobi_direct(t, m) {
            Ok(tab) => Ok(tab),
            Err(Error::UnsupportedBaseField { .. } | Error::TooLarge(_)) => {
                self.extended_jacobi_via_q(t, m)
            }
            Err(e) => Err(e),
        }
    }

    /// `(1/[r]_q) sum_j gauss(r,j) (-1)^{r-j} q^{C(r-j,2)} J(q^j)`, with the
    /// `j = 0` table taken to be the zero word alone.
    pub fn higher_from_extended(&self, t: &RefSet, r: usize) -> Result<JacobiTable> {
        self.check_t(t)?;
        if r == 0 {
            return Ok(JacobiTable::trivial(*t, TableKind::Higher(0)));
        }
        let q = self.code.q();
        let tables = (0..=r)
            .map(|j| self.extended_independent(t, j as u32))
            .collect::<Result<Vec<_>>>()?;
        let norm = rat_int(qbracket(r as u64, q));
        let terms: Vec<(Rational, &JacobiTable)> = tables
            .iter()
            .enumerate()
            .map(|(j, tab)| {
                let mut c = rat_int(
                    gauss_binom(r as u64, j as u64, q)
                        * BigInt::from(q).pow(choose2((r - j) as u64) as u32),
                );
                if (r - j) % 2 == 1 {
                    c = -c;
                }
                (c / &norm, tab)
            })
            .collect();
        JacobiTable::combine(*t, TableKind::Higher(r), &terms)
    }
}

fn distribution_poly(a: &[u64]) -> BiHomPoly {
    let coeffs: Vec<Rational> = a.iter().map(|&c| rat_int(c)).collect();
    BiHomPoly::from_xy_coeffs(&coeffs)
}

/// Expands `sum Q[s][t] (w-z)^t z^{|T|-t} (x-y)^s y^{n-|T|-s}`.
fn expand_q(t: &RefSet, q: &[Vec<BigInt>]) -> BiHomPoly {
    let tl = t.len();
    let nt = t.n() - tl;
    let mut p = BiHomPoly::zero(tl, nt);
    for (s, row) in q.iter().enumerate() {
        for (tt, v) in row.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            // (w-z)^tt z^{tl-tt}: z-degree j = a + tl - tt
            for a in 0..=tt {
                let cw = signed_binom(tt, a);
                for b in 0..=s {
                    let cx = signed_binom(s, b);
                    let c = v * &cw * &cx;
                    p.add_to(a + tl - tt, b + nt - s, &rat_int(c));
                }
            }
        }
    }
    p
}

fn signed_binom(n: usize, a: usize) -> BigInt {
    let c = binomial(n as u64, a as u64);
    if a % 2 == 1 {
        -c
    } else {
        c
    }
}

pub fn weight_enum(c: &LinearCode) -> Result<BiHomPoly> {
    Enumerator::new(c).weight_enum()
}

pub fn higher_weight_enum(c: &LinearCode, r: usize) -> Result<BiHomPoly> {
    Enumerator::new(c).higher_weight_enum(r)
}

pub fn jacobi(c: &LinearCode, t: &RefSet) -> Result<JacobiTable> {
    Enumerator::new(c).jacobi(t)
}

pub fn higher_jacobi(c: &LinearCode, t: &RefSet, r: usize) -> Result<JacobiTable> {
    Enumerator::new(c).higher_jacobi(t, r)
}

pub fn higher_jacobi_via_q(c: &LinearCode, t: &RefSet, r: usize) -> Result<JacobiTable> {
    Enumerator::new(c).higher_jacobi_via_q(t, r)
}

pub fn extended_jacobi(c: &LinearCode, t: &RefSet, m: u32) -> Result<JacobiTable> {
    Enumerator::new(c).extended_jacobi(t, m)
}

pub fn extended_jacobi_direct(c: &LinearCode, t: &RefSet, m: u32) -> Result<JacobiTable> {
    Enumerator::new(c).extended_jacobi_direct(t, m)
}

pub fn higher_from_extended(c: &LinearCode, t: &RefSet, r: usize) -> Result<JacobiTable> {
    Enumerator::new(c).higher_from_extended(t, r)
}

pub fn q_st(c: &LinearCode, t: &RefSet, r: usize, s: usize, tt: usize) -> Result<BigInt> {
    Enumerator::new(c).q_st(t, r, s, tt)
}

pub fn q_st_ext(c: &LinearCode, t: &RefSet, m: u32, s: usize, tt: usize) -> Result<BigInt> {
    Enumerator::new(c).q_st_ext(t, m, s, tt)
}

/// Samples extension codewords `u = sum a_i g_i` over GF(p^m) and checks
/// that `u` has the same support as the subcode spanned by the rows of
/// `M G`, where `M` holds the base-p digits of the coefficients `a_i`.
/// Returns the number of samples checked.
pub fn extension_support_check<R: Rng>(
    c: &LinearCode,
    m: u32,
    samples: usize,
    rng: &mut R,
) -> Result<usize> {
    let base = c.field();
    if !base.is_prime_field() {
        return Err(Error::UnsupportedBaseField {
            p: base.p() as u64,
            e: base.e(),
        });
    }
    let ext = field_new(base.p() as u64, m)?;
    let p = base.p();
    for _ in 0..samples {
        let a: Vec<u32> = (0..c.k()).map(|_| rng.gen_range(0..ext.q())).collect();
        let mut u = vec![0u32; c.n()];
        for (&ai, row) in a.iter().zip(c.generator()) {
            for (x, &g) in u.iter_mut().zip(row) {
                *x = ext.add(*x, ext.mul(ai, g));
            }
        }
        let rows: Vec<Vec<u32>> = (0..m)
            .map(|b| {
                let digits: Vec<u32> = a.iter().map(|&ai| ai / p.pow(b) % p).collect();
                c.combine(&digits)
            })
            .collect();
        let sub = crate::code::Subcode::from_basis(base, rows);
        if support(&u) != sub.support() {
            return Err(Error::InvalidArgument(format!(
                "support mismatch for coefficients {a:?}"
            )));
        }
    }
    Ok(samples)
}

/// Both sides of `sum_r [m,r]_q gauss(k,r) = q^{mk}`.
pub fn extension_mass(k: usize, m: u32, q: u64) -> (BigInt, BigInt) {
    let lhs: BigInt = (0..=k)
        .map(|r| qfact(m as u64, r as u64, q) * gauss_binom(k as u64, r as u64, q))
        .sum();
    (lhs, BigInt::from(q).pow(m * k as u32))
}

/// Total number of members a table of this kind must count.
pub fn expected_mass(c: &LinearCode, kind: TableKind) -> BigInt {
    let q = c.q();
    let k = c.k() as u32;
    match kind {
        TableKind::Plain => BigInt::from(q).pow(k),
        TableKind::Higher(r) => gauss_binom(k as u64, r as u64, q),
        TableKind::Extended(m) => BigInt::from(q).pow(m * k),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{random_code, rank_gf};
    use crate::exactmath::int;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ex44() -> LinearCode {
        LinearCode::parse("q=2 n=6\n110000\n001100\n000011").unwrap()
    }

    fn hamming74() -> LinearCode {
        LinearCode::parse("q=2 n=7\n1000110\n0100101\n0010011\n0001111").unwrap()
    }

    fn table(t: RefSet, kind: TableKind, entries: &[(usize, usize, i64)]) -> JacobiTable {
        let mut tab = JacobiTable::zero(t, kind);
        for &(i, j, v) in entries {
            tab.grid[i][j] = int(v);
        }
        tab
    }

    /// Counts ordered independent r-tuples of codewords by the support of
    /// their span and divides by the number of ordered bases of one space.
    fn brute_higher(c: &LinearCode, t: &RefSet, r: usize) -> JacobiTable {
        let words = c.codewords(&Limits::default()).unwrap();
        let mut tab = JacobiTable::zero(*t, TableKind::Higher(r));
        let mut idx = vec![0usize; r];
        let total = words.len().pow(r as u32);
        for code in 0..total {
            let mut rest = code;
            for x in idx.iter_mut() {
                *x = rest % words.len();
                rest /= words.len();
            }
            let rows: Vec<Vec<u32>> = idx.iter().map(|&x| words[x].clone()).collect();
            if r > 0 && rank_gf(c.field(), &rows) < r {
                continue;
            }
            let supp = rows.iter().fold(0, |m, w| m | support(w));
            let (on, off) = wt_on(supp, t);
            tab.grid[off][on] += 1;
        }
        let bases = qbracket(r as u64, c.q());
        for row in tab.grid.iter_mut() {
            for v in row.iter_mut() {
                *v = exact_div_checked(v, &bases);
            }
        }
        tab
    }

    fn exact_div_checked(a: &BigInt, b: &BigInt) -> BigInt {
        crate::exactmath::exact_div(a, b).expect("ordered bases come in full orbits")
    }

    #[test]
    fn weight_enumerators() {
        let f2 = field_new(2, 1).unwrap();
        assert_eq!(
            weight_enum(&LinearCode::zero(f2, 3).unwrap())
                .unwrap()
                .to_string(),
            "x^3"
        );
        assert_eq!(
            weight_enum(&ex44()).unwrap().to_string(),
            "x^6 + 3*x^4*y^2 + 3*x^2*y^4 + y^6"
        );
        assert_eq!(
            weight_enum(&hamming74()).unwrap().to_string(),
            "x^7 + 7*x^4*y^3 + 7*x^3*y^4 + y^7"
        );
        assert_eq!(higher_weight_enum(&ex44(), 0).unwrap().to_string(), "x^6");
        assert_eq!(
            higher_weight_enum(&ex44(), 1).unwrap().to_string(),
            "3*x^4*y^2 + 3*x^2*y^4 + y^6"
        );
        assert_eq!(
            higher_weight_enum(&ex44(), 2).unwrap().to_string(),
            "3*x^2*y^4 + 4*y^6"
        );
    }

    #[test]
    fn jacobi_examples() {
        let c = ex44();
        let t = RefSet::new(6, &[0]).unwrap();
        let expect = table(
            t,
            TableKind::Plain,
            &[
                (0, 0, 1),
                (1, 1, 1),
                (2, 0, 2),
                (3, 1, 2),
                (4, 0, 1),
                (5, 1, 1),
            ],
        );
        assert_eq!(jacobi(&c, &t).unwrap(), expect);
        let empty = RefSet::empty(6);
        assert_eq!(
            jacobi(&c, &empty).unwrap().to_poly(),
            weight_enum(&c).unwrap()
        );
        let zero = LinearCode::zero(field_new(3, 1).unwrap(), 5).unwrap();
        let t2 = RefSet::new(5, &[1, 3]).unwrap();
        assert_eq!(jacobi(&zero, &t2).unwrap().to_poly().to_string(), "w^2*x^3");
    }

    #[test]
    fn higher_jacobi_examples() {
        let c = ex44();
        for i in 0..6 {
            let t = RefSet::new(6, &[i]).unwrap();
            let j0 = higher_jacobi(&c, &t, 0).unwrap();
            assert_eq!(j0.to_poly().to_string(), "w*x^5");
            let j1 = higher_jacobi(&c, &t, 1).unwrap();
            let e1 = table(
                t,
                TableKind::Higher(1),
                &[(1, 1, 1), (2, 0, 2), (3, 1, 2), (4, 0, 1), (5, 1, 1)],
            );
            assert_eq!(j1, e1);
            let j2 = higher_jacobi(&c, &t, 2).unwrap();
            let e2 = table(t, TableKind::Higher(2), &[(4, 0, 1), (3, 1, 2), (5, 1, 4)]);
            assert_eq!(j2, e2);
            assert_eq!(*j0.get(0, 0), int(1));
            assert_eq!(*j1.get(0, 0), int(0));
        }
    }

    #[test]
    fn q_quantities() {
        let c = ex44();
        let t = RefSet::new(6, &[0]).unwrap();
        assert_eq!(q_st(&c, &t, 1, 0, 0).unwrap(), int(7));
        assert_eq!(q_st(&c, &t, 1, 0, 1).unwrap(), int(3));
        for s in 0..=5 {
            for tt in 0..=1 {
                assert_eq!(
                    q_st(&c, &t, 0, s, tt).unwrap(),
                    binomial(5, s as u64) * binomial(1, tt as u64)
                );
            }
        }
        assert_eq!(q_st_ext(&c, &t, 1, 0, 0).unwrap(), int(8));
        assert!(q_st(&c, &t, 1, 6, 0).is_err());
    }

    #[test]
    fn routes_agree_with_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for (p, n, k) in [(2, 6, 3), (3, 5, 2), (2, 7, 4), (3, 6, 3)] {
            let f = field_new(p, 1).unwrap();
            let c = random_code(&f, n, k, &mut rng).unwrap();
            let e = Enumerator::new(&c);
            for tset in [vec![], vec![0], vec![1, 4], vec![0, 2, 3]] {
                let t = RefSet::new(n, &tset).unwrap();
                for r in 0..=k.min(2) {
                    let direct = e.higher_jacobi(&t, r).unwrap();
                    assert_eq!(direct, brute_higher(&c, &t, r), "p={p} T={t} r={r}");
                    assert_eq!(direct, e.higher_jacobi_via_q(&t, r).unwrap());
                    assert_eq!(direct, e.higher_from_extended(&t, r).unwrap());
                    assert_eq!(direct.total(), expected_mass(&c, TableKind::Higher(r)));
                }
            }
        }
    }

    #[test]
    fn extended_routes() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let c = ex44();
        let empty = RefSet::empty(6);
        let t1 = RefSet::new(6, &[0]).unwrap();
        assert_eq!(
            extended_jacobi(&c, &t1, 1).unwrap(),
            jacobi(&c, &t1).unwrap()
        );
        assert_eq!(extended_jacobi(&c, &empty, 2).unwrap().total(), int(64));
        for (p, n, k) in [(2, 6, 3), (3, 5, 2)] {
            let f = field_new(p, 1).unwrap();
            let c = random_code(&f, n, k, &mut rng).unwrap();
            let e = Enumerator::new(&c);
            let t = RefSet::new(n, &[0, 2]).unwrap();
            for m in 1..=2 {
                let conv = e.extended_jacobi(&t, m).unwrap();
                assert_eq!(conv, e.extended_jacobi_direct(&t, m).unwrap());
                assert_eq!(conv, e.extended_jacobi_via_q(&t, m).unwrap());
                assert_eq!(conv.total(), expected_mass(&c, TableKind::Extended(m)));
            }
        }
        let f4 = field_new(2, 2).unwrap();
        let c4 = random_code(&f4, 5, 2, &mut rng).unwrap();
        let e4 = Enumerator::new(&c4);
        let t = RefSet::new(5, &[1]).unwrap();
        assert_eq!(
            e4.extended_jacobi(&t, 2).unwrap(),
            e4.extended_jacobi_via_q(&t, 2).unwrap()
        );
        assert!(matches!(
            e4.extended_jacobi_direct(&t, 2),
            Err(Error::UnsupportedBaseField { .. })
        ));
        assert_eq!(
            e4.higher_from_extended(&t, 2).unwrap(),
            e4.higher_jacobi(&t, 2).unwrap()
        );
        let zero = LinearCode::zero(field_new(3, 1).unwrap(), 4).unwrap();
        let t = RefSet::new(4, &[3]).unwrap();
        assert_eq!(
            extended_jacobi(&zero, &t, 2).unwrap().to_poly().to_string(),
            "w*x^3"
        );
        assert_eq!(
            higher_from_extended(&zero, &t, 1).unwrap(),
            JacobiTable::zero(t, TableKind::Higher(1))
        );
    }

    #[test]
    fn first_two_layers_give_the_codewords() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for p in [2u64, 3, 5] {
            let f = field_new(p, 1).unwrap();
            let c = random_code(&f, 5, 3, &mut rng).unwrap();
            let t = RefSet::new(5, &[0, 1]).unwrap();
            let plain = jacobi(&c, &t).unwrap();
            let j0 = higher_jacobi(&c, &t, 0).unwrap();
            let j1 = higher_jacobi(&c, &t, 1).unwrap();
            let sum = JacobiTable::combine(
                t,
                TableKind::Plain,
                &[(rat_int(1), &j0), (rat_int(p - 1), &j1)],
            )
            .unwrap();
            assert_eq!(sum, plain);
        }
    }

    #[test]
    fn marginals_and_covariance() {
        let c = hamming74();
        let e = Enumerator::new(&c);
        let t = RefSet::new(7, &[0, 5]).unwrap();
        for r in 0..=4 {
            let tab = e.higher_jacobi(&t, r).unwrap();
            let a = e.subcode_profile(r).unwrap().weight_distribution();
            assert_eq!(
                tab.marginal(),
                a.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>()
            );
        }
        let perm = [3, 0, 6, 1, 5, 2, 4];
        let pc = c.permute(&perm).unwrap();
        let pt = RefSet::new(7, &[perm[0], perm[5]]).unwrap();
        for r in 0..=2 {
            let a = higher_jacobi(&c, &t, r).unwrap();
            let b = higher_jacobi(&pc, &pt, r).unwrap();
            assert_eq!(a.grid(), b.grid());
        }
    }

    #[test]
    fn extension_supports_follow_subcodes() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let c = hamming74();
        assert_eq!(extension_support_check(&c, 3, 200, &mut rng).unwrap(), 200);
        let c3 = random_code(&field_new(3, 1).unwrap(), 6, 3, &mut rng).unwrap();
        assert_eq!(extension_support_check(&c3, 2, 200, &mut rng).unwrap(), 200);
        for m in 0..4 {
            for q in [2, 3] {
                let (a, b) = extension_mass(3, m, q);
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let c = hamming74();
        let t = RefSet::new(7, &[2, 6]).unwrap();
        for tab in [
            jacobi(&c, &t).unwrap(),
            higher_jacobi(&c, &t, 2).unwrap(),
            extended_jacobi(&c, &t, 2).unwrap(),
        ] {
            let back = JacobiTable::from_json(&tab.to_json()).unwrap();
            assert_eq!(back, tab);
            assert_eq!(back.kind(), tab.kind());
        }
        assert!(JacobiTable::from_json(&json!({"n": 3})).is_err());
    }
}
