//! Linear codes over GF(q) and everything that enumerates them.
//!
//! A [`LinearCode`] keeps its generator matrix in reduced row echelon form,
//! which makes it a canonical representative: two codes are equal iff their
//! generators are. Supports are `u64` bitmasks (bit `c` is coordinate `c`,
//! 0-based), which caps the length at 64; every enumeration in the crate
//! is far below that anyway.
//!
//! Enumerations come in two shapes. [`LinearCode::codewords`] and
//! [`LinearCode::subcodes`] return the objects themselves. The `*_profile`
//! methods return only the multiset of supports, which is all that the
//! enumerators need; they split the work into independent ranges (message
//! prefixes or RREF pivot patterns) that run on the current rayon pool and
//! merge by addition, so their result does not depend on the thread count.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_traits::ToPrimitive;
use rand::Rng;
use rayon::prelude::*;

use crate::gf::{field_new, is_prime, Field};
use crate::qcomb::gauss_binom;
use crate::{Error, Result};

/// Support bitmask; bit `c` set iff coordinate `c` is nonzero.
pub type Mask = u64;

pub const MAX_LENGTH: usize = 64;

/// Enumeration guards.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Upper bound on codewords (or extension codewords, or subsets of the
    /// coordinates) visited by a single enumeration.
    pub max_codewords: u64,
    /// Upper bound on the number of subcodes of one dimension.
    pub max_subcodes: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_codewords: 1 << 24,
            max_subcodes: 10_000_000,
        }
    }
}

/// A reference set `T` of coordinates.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RefSet {
    n: usize,
    mask: Mask,
}

impl RefSet {
    /// Builds `T` from 0-based coordinates.
    pub fn new(n: usize, members: &[usize]) -> Result<Self> {
        if n > MAX_LENGTH {
            return Err(Error::TooLarge(format!("length {n} exceeds {MAX_LENGTH}")));
        }
        let mut mask = 0;
        for &c in members {
            if c >= n {
                return Err(Error::InvalidArgument(format!(
                    "coordinate {} outside 1..={n}",
                    c + 1
                )));
            }
            mask |= 1 << c;
        }
        Ok(RefSet { n, mask })
    }

    /// Builds `T` from 1-based coordinates, as written on the command line.
    pub fn from_one_based(n: usize, members: &[usize]) -> Result<Self> {
        if members.contains(&0) {
            return Err(Error::InvalidArgument(
                "coordinates are numbered from 1".into(),
            ));
        }
        let zero_based: Vec<usize> = members.iter().map(|c| c - 1).collect();
        Self::new(n, &zero_based)
    }

    pub fn from_mask(n: usize, mask: Mask) -> Self {
        debug_assert!(n == MAX_LENGTH || mask >> n == 0);
        RefSet { n, mask }
    }

    pub fn empty(n: usize) -> Self {
        RefSet { n, mask: 0 }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mask(&self) -> Mask {
        self.mask
    }

    pub fn complement_mask(&self) -> Mask {
        full_mask(self.n) & !self.mask
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    /// 0-based members in increasing order.
    pub fn members(&self) -> Vec<usize> {
        mask_members(self.mask)
    }
}

impl fmt::Debug for RefSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RefSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m: Vec<String> = self.members().iter().map(|c| (c + 1).to_string()).collect();
        write!(f, "{{{}}}", m.join(","))
    }
}

pub fn full_mask(n: usize) -> Mask {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub fn mask_members(mut mask: Mask) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    while mask != 0 {
        out.push(mask.trailing_zeros() as usize);
        mask &= mask - 1;
    }
    out
}

/// All `t`-subsets of `{0..n}` as masks, in increasing numeric order.
pub fn subsets_of_size(n: usize, t: usize) -> Vec<Mask> {
    if t > n {
        return Vec::new();
    }
    if t == 0 {
        return vec![0];
    }
    let mut out = Vec::new();
    // Gosper's hack
    let mut m: Mask = full_mask(t);
    let limit = full_mask(n);
    loop {
        out.push(m);
        let c = m & m.wrapping_neg();
        let Some(r) = m.checked_add(c) else { break };
        let next = (((r ^ m) >> 2) / c) | r;
        if next > limit {
            break;
        }
        m = next;
    }
    out
}

pub fn support(v: &[u32]) -> Mask {
    v.iter()
        .enumerate()
        .filter(|(_, &x)| x != 0)
        .fold(0, |m, (c, _)| m | (1 << c))
}

/// `(wt_T, wt_complement)` of a support.
pub fn wt_on(mask: Mask, t: &RefSet) -> (usize, usize) {
    (
        (mask & t.mask).count_ones() as usize,
        (mask & t.complement_mask()).count_ones() as usize,
    )
}

/// Reduces `rows` to RREF over the field, drops zero rows, returns pivots.
pub fn rref_gf(field: &Field, rows: &mut Vec<Vec<u32>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut lead = 0;
    for c in 0..ncols {
        if lead == rows.len() {
            break;
        }
        let Some(p) = (lead..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(p, lead);
        let inv = field.inv(rows[lead][c]).expect("pivot is nonzero");
        for x in rows[lead].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let lead_row = rows[lead].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            let f = row[c];
            if r != lead && f != 0 {
                for (x, &l) in row.iter_mut().zip(&lead_row) {
                    *x = field.sub(*x, field.mul(f, l));
                }
            }
        }
        pivots.push(c);
        lead += 1;
    }
    rows.truncate(lead);
    pivots
}

pub fn rank_gf(field: &Field, rows: &[Vec<u32>]) -> usize {
    let mut m = rows.to_vec();
    rref_gf(field, &mut m).len()
}

/// A linear [n, k] code over GF(q) with its generator in RREF.
#[derive(Clone)]
pub struct LinearCode {
    field: Field,
    n: usize,
    gen: Vec<Vec<u32>>,
    pivots: Vec<usize>,
    packed: Vec<Mask>,
}

impl PartialEq for LinearCode {
    fn eq(&self, other: &Self) -> bool {
        *self.field == *other.field && self.n == other.n && self.gen == other.gen
    }
}

impl Eq for LinearCode {}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}] code over GF({})", self.n, self.k(), self.q())
    }
}

impl LinearCode {
    /// Builds the code spanned by `rows`; dependent rows are dropped.
    pub fn new(field: Field, n: usize, rows: Vec<Vec<u32>>) -> Result<Self> {
        if n > MAX_LENGTH {
            return Err(Error::TooLarge(format!("length {n} exceeds {MAX_LENGTH}")));
        }
        for row in &rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "row of length {} in a length-{n} code",
                    row.len()
                )));
            }
            if let Some(&v) = row.iter().find(|&&v| v >= field.q()) {
                return Err(Error::FieldMismatch {
                    value: v as u64,
                    q: field.q() as u64,
                });
            }
        }
        let mut gen = rows;
        let pivots = if gen.is_empty() {
            Vec::new()
        } else {
            rref_gf(&field, &mut gen)
        };
        let packed = if field.q() == 2 {
            gen.iter().map(|r| support(r)).collect()
        } else {
            Vec::new()
        };
        Ok(LinearCode {
            field,
            n,
            gen,
            pivots,
            packed,
        })
    }

    pub fn zero(field: Field, n: usize) -> Result<Self> {
        Self::new(field, n, Vec::new())
    }

    /// The whole space GF(q)^n.
    pub fn full(field: Field, n: usize) -> Result<Self> {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| u32::from(i == j)).collect())
            .collect();
        Self::new(field, n, rows)
    }

    /// Parses the matrix file format:
    ///
    /// ```text
    /// q=2 n=6
    /// 110000
    /// 001100
    /// 000011
    /// ```
    ///
    /// The header may also carry `p=<int> e=<int>`. Rows are digits without
    /// separators when q <= 10, otherwise space-separated integer encodings.
    /// Blank lines and lines starting with `#` are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty input".into()))?;
        let mut fields: HashMap<&str, u64> = HashMap::new();
        for tok in header.split_whitespace() {
            let (key, val) = tok
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("bad header token `{tok}`")))?;
            let val: u64 = val
                .parse()
                .map_err(|_| Error::Parse(format!("bad header value `{tok}`")))?;
            if !matches!(key, "q" | "n" | "p" | "e") {
                return Err(Error::Parse(format!("unknown header key `{key}`")));
            }
            fields.insert(key, val);
        }
        let q = *fields
            .get("q")
            .ok_or_else(|| Error::Parse("header lacks q=".into()))?;
        let n = *fields
            .get("n")
            .ok_or_else(|| Error::Parse("header lacks n=".into()))? as usize;
        let (p, e) = match (fields.get("p"), fields.get("e")) {
            (Some(&p), Some(&e)) => (p, e as u32),
            (None, None) => {
                prime_power(q).ok_or_else(|| Error::Parse(format!("q={q} is not a prime power")))?
            }
            _ => return Err(Error::Parse("p= and e= must be given together".into())),
        };
        if (p as u128).pow(e) != q as u128 {
            return Err(Error::Parse(format!("q={q} does not equal p^e = {p}^{e}")));
        }
        let field = field_new(p, e)?;
        let mut rows = Vec::new();
        for line in lines {
            let row: Vec<u64> = if q <= 10 && !line.contains(char::is_whitespace) {
                line.chars()
                    .map(|ch| {
                        ch.to_digit(10)
                            .map(u64::from)
                            .ok_or_else(|| Error::Parse(format!("bad digit `{ch}`")))
                    })
                    .collect::<Result<_>>()?
            } else {
                line.split_whitespace()
                    .map(|t| {
                        t.parse::<u64>()
                            .map_err(|_| Error::Parse(format!("bad entry `{t}`")))
                    })
                    .collect::<Result<_>>()?
            };
            if row.len() != n {
                return Err(Error::Parse(format!(
                    "row `{line}` has {} entries, expected {n}",
                    row.len()
                )));
            }
            if let Some(&v) = row.iter().find(|&&v| v >= q) {
                return Err(Error::FieldMismatch { value: v, q });
            }
            rows.push(row.into_iter().map(|v| v as u32).collect());
        }
        Self::new(field, n, rows)
    }

    /// Renders the code in the matrix file format.
    pub fn to_text(&self) -> String {
        let q = self.q();
        let mut s = format!("q={q} n={}", self.n);
        if self.field.e() > 1 {
            s.push_str(&format!(" p={} e={}", self.field.p(), self.field.e()));
        }
        s.push('\n');
        for row in &self.gen {
            let cells: Vec<String> = row.iter().map(u32::to_string).collect();
            s.push_str(&cells.join(if q <= 10 { "" } else { " " }));
            s.push('\n');
        }
        s
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn q(&self) -> u64 {
        self.field.q() as u64
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.gen.len()
    }

    /// RREF generator rows.
    pub fn generator(&self) -> &[Vec<u32>] {
        &self.gen
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn dual(&self) -> LinearCode {
        let f = &self.field;
        let free: Vec<usize> = (0..self.n).filter(|c| !self.pivots.contains(c)).collect();
        let rows = free
            .iter()
            .map(|&fc| {
                let mut h = vec![0u32; self.n];
                h[fc] = 1;
                for (i, &p) in self.pivots.iter().enumerate() {
                    h[p] = f.neg(self.gen[i][fc]);
                }
                h
            })
            .collect();
        LinearCode::new(f.clone(), self.n, rows).expect("dual rows are well formed")
    }

    pub fn dot(&self, u: &[u32], v: &[u32]) -> u32 {
        u.iter()
            .zip(v)
            .fold(0, |acc, (&a, &b)| self.field.add(acc, self.field.mul(a, b)))
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut rows = self.gen.clone();
        rows.push(v.to_vec());
        rank_gf(&self.field, &rows) == self.k()
    }

    /// Relabels coordinates: coordinate `c` of every word moves to `perm[c]`.
    pub fn permute(&self, perm: &[usize]) -> Result<LinearCode> {
        let mut seen = vec![false; self.n];
        if perm.len() != self.n
            || perm
                .iter()
                .any(|&p| p >= self.n || std::mem::replace(&mut seen[p], true))
        {
            return Err(Error::InvalidArgument(
                "not a permutation of the coordinates".into(),
            ));
        }
        let rows = self
            .gen
            .iter()
            .map(|row| {
                let mut out = vec![0; self.n];
                for (c, &v) in row.iter().enumerate() {
                    out[perm[c]] = v;
                }
                out
            })
            .collect();
        LinearCode::new(self.field.clone(), self.n, rows)
    }

    fn codeword_count(&self, limits: &Limits) -> Result<u64> {
        checked_power(self.q(), self.k() as u64)
            .filter(|&c| c <= limits.max_codewords)
            .ok_or_else(|| {
                Error::TooLarge(format!(
                    "{}^{} codewords exceed the guard",
                    self.q(),
                    self.k()
                ))
            })
    }

    /// All `q^k` codewords, as the images `m G` in message order (the first
    /// message coordinate varies fastest).
    pub fn codewords(&self, limits: &Limits) -> Result<Vec<Vec<u32>>> {
        let total = self.codeword_count(limits)?;
        let q = self.q();
        Ok((0..total)
            .map(|idx| {
                let mut w = vec![0u32; self.n];
                let mut rest = idx;
                for row in &self.gen {
                    let a = (rest % q) as u32;
                    rest /= q;
                    if a != 0 {
                        for (x, &g) in w.iter_mut().zip(row) {
                            *x = self.field.add(*x, self.field.mul(a, g));
                        }
                    }
                }
                w
            })
            .collect())
    }

    /// Multiset of codeword supports.
    pub fn codeword_profile(&self, limits: &Limits) -> Result<SupportProfile> {
        self.codeword_count(limits)?;
        Ok(span_profile(&self.field, &self.gen, self.n, &self.packed))
    }

    fn check_subcodes(&self, r: usize, limits: &Limits) -> Result<()> {
        if r > self.k() {
            return Err(Error::InvalidArgument(format!(
                "r = {r} exceeds dimension k = {}",
                self.k()
            )));
        }
        let count = gauss_binom(self.k() as u64, r as u64, self.q());
        if count.to_u64().is_none_or(|c| c > limits.max_subcodes) {
            return Err(Error::TooLarge(format!(
                "{count} subcodes of dimension {r} exceed the guard"
            )));
        }
        Ok(())
    }

    /// Every r-dimensional subcode exactly once, each with an RREF basis.
    pub fn subcodes(&self, r: usize, limits: &Limits) -> Result<Vec<Subcode>> {
        self.check_subcodes(r, limits)?;
        let mut out = Vec::new();
        for pattern in pivot_patterns(self.k(), r) {
            for_each_message_rref(&self.field, self.k(), &pattern, |msg| {
                let mut basis: Vec<Vec<u32>> = msg.iter().map(|m| self.combine(m)).collect();
                rref_gf(&self.field, &mut basis);
                let supp = basis.iter().fold(0, |acc, b| acc | support(b));
                out.push(Subcode {
                    basis,
                    support: supp,
                });
            });
        }
        Ok(out)
    }

    /// Multiset of `Supp(D)` over all r-dimensional subcodes `D`.
    pub fn subcode_profile(&self, r: usize, limits: &Limits) -> Result<SupportProfile> {
        self.check_subcodes(r, limits)?;
        let patterns = pivot_patterns(self.k(), r);
        let parts: Vec<SupportProfile> = patterns
            .par_iter()
            .map(|pattern| {
                let mut prof = SupportProfile::new(self.n);
                for_each_message_rref(&self.field, self.k(), pattern, |msg| {
                    let supp = msg.iter().fold(0, |acc, m| acc | self.combine_support(m));
                    prof.add(supp, 1);
                });
                prof
            })
            .collect();
        Ok(SupportProfile::merge_all(self.n, parts))
    }

    /// `sum_i m[i] * row_i`.
    pub fn combine(&self, m: &[u32]) -> Vec<u32> {
        let mut w = vec![0u32; self.n];
        for (&a, row) in m.iter().zip(&self.gen) {
            if a != 0 {
                for (x, &g) in w.iter_mut().zip(row) {
                    *x = self.field.add(*x, self.field.mul(a, g));
                }
            }
        }
        w
    }

    fn combine_support(&self, m: &[u32]) -> Mask {
        if !self.packed.is_empty() {
            m.iter()
                .zip(&self.packed)
                .filter(|(&a, _)| a != 0)
                .fold(0, |acc, (_, &p)| acc ^ p)
        } else {
            support(&self.combine(m))
        }
    }

    /// Dimension of the subcode vanishing on every coordinate of `mask`.
    pub fn vanishing_dim(&self, mask: Mask) -> usize {
        let cols: Vec<Vec<u32>> = mask_members(mask)
            .iter()
            .map(|&c| self.gen.iter().map(|row| row[c]).collect())
            .collect();
        self.k()
            - if cols.is_empty() {
                0
            } else {
                rank_gf(&self.field, &cols)
            }
    }

    /// `dim { u in C : u_i = 0 for i in X u Y }` with `X` outside `T` and `Y`
    /// inside `T`.
    pub fn shortened_dim(&self, t: &RefSet, x: Mask, y: Mask) -> Result<usize> {
        if x & t.mask() != 0 || y & !t.mask() != 0 {
            return Err(Error::InvalidArgument(
                "X must avoid T and Y must lie in T".into(),
            ));
        }
        Ok(self.vanishing_dim(x | y))
    }

    /// `vanishing_dim` for every subset of the coordinates, indexed by mask.
    pub fn vanishing_dims(&self, limits: &Limits) -> Result<Vec<u8>> {
        if self.n >= 63 || (1u64 << self.n) > limits.max_codewords {
            return Err(Error::TooLarge(format!(
                "2^{} coordinate subsets exceed the guard",
                self.n
            )));
        }
        Ok((0..1u64 << self.n)
            .into_par_iter()
            .map(|m| self.vanishing_dim(m) as u8)
            .collect())
    }

    fn extension_field(&self, m: u32, limits: &Limits) -> Result<Field> {
        if !self.field.is_prime_field() {
            return Err(Error::UnsupportedBaseField {
                p: self.field.p() as u64,
                e: self.field.e(),
            });
        }
        if m == 0 {
            return Err(Error::InvalidArgument(
                "extension degree m must be at least 1".into(),
            ));
        }
        checked_power(self.q(), m as u64 * self.k() as u64)
            .filter(|&c| c <= limits.max_codewords)
            .ok_or_else(|| {
                Error::TooLarge(format!(
                    "{}^({m}*{}) extension codewords exceed the guard",
                    self.q(),
                    self.k()
                ))
            })?;
        field_new(self.field.p() as u64, m)
    }

    /// The GF(q^m)-span of the generator rows, with GF(p) embedded in
    /// GF(p^m) as the constant polynomials (same integer encodings).
    pub fn extension_codewords(&self, m: u32, limits: &Limits) -> Result<(Field, Vec<Vec<u32>>)> {
        let ext = self.extension_field(m, limits)?;
        let qm = ext.q() as u64;
        let total = checked_power(qm, self.k() as u64).expect("checked above");
        let words = (0..total)
            .map(|idx| {
                let mut w = vec![0u32; self.n];
                let mut rest = idx;
                for row in &self.gen {
                    let a = (rest % qm) as u32;
                    rest /= qm;
                    for (x, &g) in w.iter_mut().zip(row) {
                        *x = ext.add(*x, ext.mul(a, g));
                    }
                }
                w
            })
            .collect();
        Ok((ext, words))
    }

    /// Multiset of supports of the extension code over GF(q^m).
    pub fn extension_profile(&self, m: u32, limits: &Limits) -> Result<SupportProfile> {
        let ext = self.extension_field(m, limits)?;
        let packed = if ext.q() == 2 {
            self.packed.clone()
        } else {
            Vec::new()
        };
        Ok(span_profile(&ext, &self.gen, self.n, &packed))
    }
}

/// `q^k` as a u64 if it fits.
pub fn checked_power(q: u64, k: u64) -> Option<u64> {
    q.checked_pow(u32::try_from(k).ok()?)
}

fn prime_power(q: u64) -> Option<(u64, u32)> {
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    if !is_prime(p) {
        return None;
    }
    let mut e = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        e += 1;
    }
    (r == 1).then_some((p, e))
}

/// Supports of every `sum_i a_i row_i` with `a_i` ranging over `coeffs`;
/// the rows hold encodings that are valid in `coeffs` as well.
fn span_profile(coeffs: &Field, rows: &[Vec<u32>], n: usize, packed: &[Mask]) -> SupportProfile {
    let q = coeffs.q() as u64;
    let k = rows.len();
    if k == 0 {
        let mut p = SupportProfile::new(n);
        p.add(0, 1);
        return p;
    }
    // Split on the last `split` coefficients; each chunk walks the rest with
    // an odometer, updating the word incrementally.
    let mut split = 0;
    while split < k && q.pow(split as u32) < 64 {
        split += 1;
    }
    let split = split.min(k);
    let inner = k - split;
    let chunks = q.pow(split as u32);
    let parts: Vec<SupportProfile> = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut prof = SupportProfile::new(n);
            let mut digits = vec![0u32; k];
            let mut rest = chunk;
            for d in digits.iter_mut().skip(inner) {
                *d = (rest % q) as u32;
                rest /= q;
            }
            if !packed.is_empty() {
                let mut word: Mask = digits
                    .iter()
                    .zip(packed)
                    .filter(|(&a, _)| a != 0)
                    .fold(0, |m, (_, &p)| m ^ p);
                loop {
                    prof.add(word, 1);
                    let mut pos = 0;
                    loop {
                        if pos == inner {
                            return prof;
                        }
                        word ^= packed[pos];
                        digits[pos] ^= 1;
                        if digits[pos] == 1 {
                            break;
                        }
                        pos += 1;
                    }
                }
            }
            let mut word = vec![0u32; n];
            for (&a, row) in digits.iter().zip(rows) {
                if a != 0 {
                    for (x, &g) in word.iter_mut().zip(row) {
                        *x = coeffs.add(*x, coeffs.mul(a, g));
                    }
                }
            }
            loop {
                prof.add(support(&word), 1);
                let mut pos = 0;
                loop {
                    if pos == inner {
                        return prof;
                    }
                    let old = digits[pos];
                    let new = if old as u64 + 1 == q { 0 } else { old + 1 };
                    digits[pos] = new;
                    let delta = coeffs.sub(new, old);
                    for (x, &g) in word.iter_mut().zip(&rows[pos]) {
                        *x = coeffs.add(*x, coeffs.mul(delta, g));
                    }
                    if new != 0 {
                        break;
                    }
                    pos += 1;
                }
            }
        })
        .collect();
    SupportProfile::merge_all(n, parts)
}

/// Increasing `r`-subsets of `{0..k}` used as pivot columns.
fn pivot_patterns(k: usize, r: usize) -> Vec<Vec<usize>> {
    subsets_of_size(k, r)
        .into_iter()
        .map(mask_members)
        .collect()
}

/// Calls `f` on every r x k RREF matrix over the field with the given
/// pivot columns.
fn for_each_message_rref(
    field: &Field,
    k: usize,
    pivots: &[usize],
    mut f: impl FnMut(&[Vec<u32>]),
) {
    let r = pivots.len();
    let mut rows = vec![vec![0u32; k]; r];
    let mut free = Vec::new();
    for (i, &p) in pivots.iter().enumerate() {
        rows[i][p] = 1;
        for c in p + 1..k {
            if !pivots.contains(&c) {
                free.push((i, c));
            }
        }
    }
    let q = field.q();
    loop {
        f(&rows);
        let mut pos = 0;
        loop {
            if pos == free.len() {
                return;
            }
            let (i, c) = free[pos];
            rows[i][c] += 1;
            if rows[i][c] < q {
                break;
            }
            rows[i][c] = 0;
            pos += 1;
        }
    }
}

/// An r-dimensional subcode with an RREF basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subcode {
    basis: Vec<Vec<u32>>,
    support: Mask,
}

impl Subcode {
    pub fn from_basis(field: &Field, rows: Vec<Vec<u32>>) -> Self {
        let mut basis = rows;
        rref_gf(field, &mut basis);
        let support = basis.iter().fold(0, |acc, b| acc | support(b));
        Subcode { basis, support }
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn r(&self) -> usize {
        self.basis.len()
    }

    pub fn support(&self) -> Mask {
        self.support
    }

    pub fn weight(&self) -> usize {
        self.support.count_ones() as usize
    }
}

/// A multiset of supports (codewords, subcodes or extension codewords).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportProfile {
    n: usize,
    counts: BTreeMap<Mask, u64>,
}

impl SupportProfile {
    pub fn new(n: usize) -> Self {
        SupportProfile {
            n,
            counts: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add(&mut self, mask: Mask, count: u64) {
        *self.counts.entry(mask).or_insert(0) += count;
    }

    pub fn merge(&mut self, other: &SupportProfile) {
        for (&m, &c) in &other.counts {
            self.add(m, c);
        }
    }

    fn merge_all(n: usize, parts: Vec<SupportProfile>) -> SupportProfile {
        let mut out = SupportProfile::new(n);
        for p in &parts {
            out.merge(p);
        }
        out
    }

    /// `(support, multiplicity)` pairs in increasing mask order.
    pub fn iter(&self) -> impl Iterator<Item = (Mask, u64)> + '_ {
        self.counts.iter().map(|(&m, &c)| (m, c))
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// `A_i`: number of members of weight `i`, for `i = 0..=n`.
    pub fn weight_distribution(&self) -> Vec<u64> {
        let mut a = vec![0u64; self.n + 1];
        for (m, c) in self.iter() {
            a[m.count_ones() as usize] += c;
        }
        a
    }

    /// Members of weight `i`, with multiplicity.
    pub fn blocks_of_weight(&self, i: usize) -> Vec<Mask> {
        self.iter()
            .filter(|(m, _)| m.count_ones() as usize == i)
            .flat_map(|(m, c)| std::iter::repeat_n(m, c as usize))
            .collect()
    }
}

/// A uniformly random code of exact dimension `k`.
pub fn random_code<R: Rng>(field: &Field, n: usize, k: usize, rng: &mut R) -> Result<LinearCode> {
    if k > n {
        return Err(Error::InvalidArgument(format!("k = {k} exceeds n = {n}")));
    }
    loop {
        let rows = (0..k)
            .map(|_| (0..n).map(|_| rng.gen_range(0..field.q())).collect())
            .collect();
        let c = LinearCode::new(Arc::clone(field), n, rows)?;
        if c.k() == k {
            return Ok(c);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn ex44() -> LinearCode {
        LinearCode::parse("q=2 n=6\n110000\n001100\n000011").unwrap()
    }

    fn hamming74() -> LinearCode {
        LinearCode::parse("q=2 n=7\n1000110\n0100101\n0010011\n0001111").unwrap()
    }

    fn one_based(mask: Mask) -> Vec<usize> {
        mask_members(mask).iter().map(|c| c + 1).collect()
    }

    #[test]
    fn parsing() {
        let c = ex44();
        assert_eq!((c.n(), c.k(), c.q()), (6, 3, 2));
        let c = LinearCode::parse("q=2 n=2\n11\n11").unwrap();
        assert_eq!(c.k(), 1);
        let c = LinearCode::parse("q=3 n=2\n12").unwrap();
        assert_eq!((c.k(), c.q()), (1, 3));
        assert!(matches!(
            LinearCode::parse("q=2 n=2\n12"),
            Err(Error::FieldMismatch { value: 2, q: 2 })
        ));
        assert!(matches!(
            LinearCode::parse("q=2 n=3\n11"),
            Err(Error::Parse(_))
        ));
        assert!(matches!(
            LinearCode::parse("q=6 n=3\n111"),
            Err(Error::Parse(_))
        ));
        assert!(matches!(LinearCode::parse(""), Err(Error::Parse(_))));
        let c = LinearCode::parse("q=16 n=2\n15 1\n").unwrap();
        assert_eq!((c.field().p(), c.field().e()), (2, 4));
        let again = LinearCode::parse(&c.to_text()).unwrap();
        assert_eq!(again, c);
    }

    #[test]
    fn duals() {
        let c = ex44();
        assert_eq!(c.dual(), c);
        let full = LinearCode::full(field_new(2, 1).unwrap(), 3).unwrap();
        assert_eq!(full.dual().k(), 0);
        let simplex = hamming74().dual();
        assert_eq!(simplex.k(), 3);
        let weights: Vec<u32> = simplex
            .codewords(&Limits::default())
            .unwrap()
            .iter()
            .map(|w| support(w).count_ones())
            .collect();
        assert_eq!(weights.iter().filter(|&&w| w == 4).count(), 7);
        assert_eq!(weights.iter().filter(|&&w| w == 0).count(), 1);
    }

    #[test]
    fn codeword_listing() {
        let f2 = field_new(2, 1).unwrap();
        let z = LinearCode::zero(f2, 4).unwrap();
        assert_eq!(z.codewords(&Limits::default()).unwrap(), vec![vec![0; 4]]);
        let mut w: Vec<u32> = ex44()
            .codewords(&Limits::default())
            .unwrap()
            .iter()
            .map(|v| support(v).count_ones())
            .collect();
        w.sort();
        assert_eq!(w, vec![0, 2, 2, 2, 4, 4, 4, 6]);
        let c = LinearCode::parse("q=3 n=2\n12").unwrap();
        let mut words = c.codewords(&Limits::default()).unwrap();
        words.sort();
        assert_eq!(words, vec![vec![0, 0], vec![1, 2], vec![2, 1]]);
        let tight = Limits {
            max_codewords: 4,
            ..Limits::default()
        };
        assert!(matches!(ex44().codewords(&tight), Err(Error::TooLarge(_))));
    }

    #[test]
    fn profile_matches_listing() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for (p, e) in [(2, 1), (3, 1), (2, 2), (5, 1)] {
            let f = field_new(p, e).unwrap();
            let c = random_code(&f, 6, 3, &mut rng).unwrap();
            let mut direct = SupportProfile::new(6);
            for w in c.codewords(&Limits::default()).unwrap() {
                direct.add(support(&w), 1);
            }
            assert_eq!(c.codeword_profile(&Limits::default()).unwrap(), direct);
        }
    }

    #[test]
    fn subcode_enumeration_example() {
        let c = ex44();
        let lim = Limits::default();
        assert_eq!(c.subcodes(0, &lim).unwrap().len(), 1);
        let w1 = c.subcode_profile(1, &lim).unwrap().weight_distribution();
        assert_eq!(w1, vec![0, 0, 3, 0, 3, 0, 1]);
        let w2 = c.subcode_profile(2, &lim).unwrap().weight_distribution();
        assert_eq!(w2, vec![0, 0, 0, 0, 3, 0, 4]);
        let s12: Vec<Vec<usize>> = c
            .subcode_profile(1, &lim)
            .unwrap()
            .blocks_of_weight(2)
            .into_iter()
            .map(one_based)
            .collect();
        assert_eq!(s12, vec![vec![1, 2], vec![3, 4], vec![5, 6]]);
        let mut s24: Vec<Vec<usize>> = c
            .subcode_profile(2, &lim)
            .unwrap()
            .blocks_of_weight(4)
            .into_iter()
            .map(one_based)
            .collect();
        s24.sort();
        assert_eq!(
            s24,
            vec![vec![1, 2, 3, 4], vec![1, 2, 5, 6], vec![3, 4, 5, 6]]
        );
        assert!(c.subcodes(4, &lim).is_err());
    }

    #[test]
    fn subcodes_are_distinct_and_inside() {
        let c = hamming74();
        let dual = c.dual();
        for r in 0..=c.k() {
            let subs = c.subcodes(r, &Limits::default()).unwrap();
            assert_eq!(
                subs.len() as u64,
                gauss_binom(4, r as u64, 2).to_u64().unwrap()
            );
            let mut bases: Vec<_> = subs.iter().map(|s| s.basis().to_vec()).collect();
            bases.sort();
            bases.dedup();
            assert_eq!(bases.len(), subs.len());
            for s in &subs {
                assert_eq!(s.r(), r);
                for row in s.basis() {
                    assert!(c.contains(row));
                    for h in dual.generator() {
                        assert_eq!(c.dot(row, h), 0);
                    }
                }
            }
        }
    }

    #[test]
    fn support_is_basis_independent() {
        let f = field_new(3, 1).unwrap();
        let c = LinearCode::parse("q=3 n=5\n10120\n01112").unwrap();
        let rows = c.generator().to_vec();
        let other = vec![c.combine(&[1, 1]), c.combine(&[1, 2])];
        let a = Subcode::from_basis(&f, rows.clone());
        let b = Subcode::from_basis(&f, other.clone());
        let raw_a = rows.iter().fold(0, |m, r| m | support(r));
        let raw_b = other.iter().fold(0, |m, r| m | support(r));
        assert_eq!(raw_a, raw_b);
        assert_eq!(a, b);
    }

    #[test]
    fn shortened_dimensions() {
        let c = ex44();
        let t = RefSet::new(6, &[0]).unwrap();
        assert_eq!(c.shortened_dim(&t, 0, 0).unwrap(), 3);
        assert_eq!(c.shortened_dim(&t, 0, 1).unwrap(), 2);
        assert!(c.shortened_dim(&t, 1, 0).is_err());
        let full = LinearCode::full(field_new(2, 1).unwrap(), 3).unwrap();
        for m in 0..8u64 {
            assert_eq!(full.vanishing_dim(m), 3 - m.count_ones() as usize);
        }
    }

    #[test]
    fn shortened_dim_counts_vanishing_words() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let f = field_new(3, 1).unwrap();
        let c = random_code(&f, 6, 3, &mut rng).unwrap();
        let words = c.codewords(&Limits::default()).unwrap();
        for s in 0..=3 {
            for m in subsets_of_size(6, s) {
                let count = words.iter().filter(|w| support(w) & m == 0).count() as u64;
                assert_eq!(3u64.pow(c.vanishing_dim(m) as u32), count);
            }
        }
    }

    #[test]
    fn extension_words() {
        let lim = Limits::default();
        let c = ex44();
        let (_, words) = c.extension_codewords(1, &lim).unwrap();
        let mut a: Vec<_> = words;
        let mut b = c.codewords(&lim).unwrap();
        a.sort();
        b.sort();
        assert_eq!(a, b);
        assert_eq!(c.extension_codewords(2, &lim).unwrap().1.len(), 64);
        let rep = LinearCode::parse("q=2 n=2\n11").unwrap();
        let (_, words) = rep.extension_codewords(2, &lim).unwrap();
        let mut w: Vec<_> = words.iter().map(|v| (v[0], v[1])).collect();
        w.sort();
        assert_eq!(w, vec![(0, 0), (1, 1), (2, 2), (3, 3)]);
        let over4 = LinearCode::parse("q=4 n=2\n12").unwrap();
        assert!(matches!(
            over4.extension_codewords(2, &lim),
            Err(Error::UnsupportedBaseField { p: 2, e: 2 })
        ));
        for m in 1..=3 {
            let (_, words) = c.extension_codewords(m, &lim).unwrap();
            let mut prof = SupportProfile::new(6);
            for w in &words {
                prof.add(support(w), 1);
            }
            assert_eq!(c.extension_profile(m, &lim).unwrap(), prof);
        }
    }

    #[test]
    fn ref_sets() {
        let t = RefSet::from_one_based(6, &[1, 3]).unwrap();
        assert_eq!(t.members(), vec![0, 2]);
        assert_eq!(t.to_string(), "{1,3}");
        assert_eq!(t.complement_mask(), 0b111010);
        assert_eq!(wt_on(0b000111, &t), (2, 1));
        assert!(RefSet::from_one_based(6, &[7]).is_err());
        assert!(RefSet::from_one_based(6, &[0]).is_err());
        assert_eq!(subsets_of_size(4, 2).len(), 6);
        assert_eq!(subsets_of_size(64, 1).len(), 64);
        assert_eq!(subsets_of_size(3, 0), vec![0]);
        assert_eq!(support(&[0, 0, 0]), 0);
    }
}
