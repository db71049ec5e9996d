//! Designs formed by subcode supports, independence of higher Jacobi
//! polynomials from the reference set, and the polarization shortcut.
//!
//! For blocks of size `i` and reference sets of size `t`, the table counts
//! `#{B : |B n T| = j}` do not depend on `T` exactly when the blocks form an
//! `s`-design with `s = min(t, n - t, i)`. For `i >= t <= n - t` this is the
//! plain `t`-design condition; the smaller strength covers blocks shorter
//! than `t` (where a `t`-design is vacuous) and reference sets larger than
//! half the length (where `T` and its complement carry the same
//! information). [`subcode_support_designs`] reports verdicts at this
//! effective strength.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::bipoly::BiHomPoly;
use crate::code::{mask_members, subsets_of_size, LinearCode, Mask, RefSet};
use crate::enumerators::{Enumerator, JacobiTable};
use crate::exactmath::{binomial, rat_int, BigInt, Rational};
use crate::{Error, Result};

/// A multiset of equal-size blocks on the points `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockMultiset {
    n: usize,
    size: usize,
    blocks: BTreeMap<Mask, u64>,
}

impl BlockMultiset {
    pub fn new(n: usize, blocks: &[Mask]) -> Result<Self> {
        let mut set = BlockMultiset {
            n,
            size: 0,
            blocks: BTreeMap::new(),
        };
        for (idx, &b) in blocks.iter().enumerate() {
            let s = b.count_ones() as usize;
            if idx == 0 {
                set.size = s;
            } else if s != set.size {
                return Err(Error::InvalidArgument(format!(
                    "blocks of sizes {} and {s}",
                    set.size
                )));
            }
            if n < 64 && b >> n != 0 {
                return Err(Error::InvalidArgument(format!("block outside 1..={n}")));
            }
            *set.blocks.entry(b).or_insert(0) += 1;
        }
        Ok(set)
    }

    /// Blocks given as 1-based point lists.
    pub fn from_one_based(n: usize, blocks: &[&[usize]]) -> Result<Self> {
        let masks = blocks
            .iter()
            .map(|b| RefSet::from_one_based(n, b).map(|r| r.mask()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, &masks)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn block_size(&self) -> usize {
        self.size
    }

    /// Number of blocks counted with multiplicity.
    pub fn len(&self) -> u64 {
        self.blocks.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// `(block, multiplicity)` pairs.
    pub fn iter(&self) -> impl Iterator<Item = (Mask, u64)> + '_ {
        self.blocks.iter().map(|(&b, &m)| (b, m))
    }

    /// Blocks as sorted 1-based point lists, repeated by multiplicity.
    pub fn to_one_based(&self) -> Vec<Vec<usize>> {
        self.iter()
            .flat_map(|(b, m)| {
                std::iter::repeat_n(mask_members(b).iter().map(|c| c + 1).collect(), m as usize)
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DesignVerdict {
    pub is_design: bool,
    /// Strength that was checked.
    pub t: usize,
    /// Blocks through every `t`-subset, when constant.
    pub lambda: Option<Rational>,
}

/// Counts, for every `t`-subset, the blocks containing it (with
/// multiplicity).
pub fn is_t_design(b: &BlockMultiset, t: usize) -> DesignVerdict {
    let mut value: Option<u64> = None;
    let mut is_design = true;
    for s in subsets_of_size(b.n, t) {
        let cover: u64 = b
            .iter()
            .filter(|(blk, _)| blk & s == s)
            .map(|(_, m)| m)
            .sum();
        match value {
            None => value = Some(cover),
            Some(v) if v != cover => {
                is_design = false;
                break;
            }
            _ => {}
        }
    }
    DesignVerdict {
        is_design,
        t,
        lambda: value.filter(|_| is_design).map(rat_int),
    }
}

/// Strength at which blocks of size `i` must be a design for the split
/// counts to be independent of the `t`-set.
pub fn effective_strength(n: usize, t: usize, i: usize) -> usize {
    t.min(n - t).min(i)
}

/// `S_{r,i}(C)` for every `i` with at least one block.
pub fn subcode_support_blocks(e: &Enumerator, r: usize) -> Result<BTreeMap<usize, BlockMultiset>> {
    let n = e.code().n();
    let profile = e.subcode_profile(r)?;
    let mut by_weight: BTreeMap<usize, Vec<Mask>> = BTreeMap::new();
    for (m, c) in profile.iter() {
        by_weight
            .entry(m.count_ones() as usize)
            .or_default()
            .extend(std::iter::repeat_n(m, c as usize));
    }
    by_weight
        .into_iter()
        .map(|(i, blocks)| Ok((i, BlockMultiset::new(n, &blocks)?)))
        .collect()
}

/// Verdict for each nonempty `S_{r,i}(C)` at the effective strength.
pub fn subcode_support_designs(
    c: &LinearCode,
    r: usize,
    t: usize,
) -> Result<BTreeMap<usize, DesignVerdict>> {
    support_designs_with(&Enumerator::new(c), r, t)
}

pub fn support_designs_with(
    e: &Enumerator,
    r: usize,
    t: usize,
) -> Result<BTreeMap<usize, DesignVerdict>> {
    let n = e.code().n();
    if t > n {
        return Err(Error::InvalidArgument(format!("t = {t} exceeds n = {n}")));
    }
    Ok(subcode_support_blocks(e, r)?
        .into_iter()
        .map(|(i, b)| (i, is_t_design(&b, effective_strength(n, t, i))))
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Independence {
    pub independent: bool,
    /// The common table when independent.
    pub table: Option<JacobiTable>,
    /// Two reference sets with different tables otherwise.
    pub witness: Option<(RefSet, RefSet)>,
}

/// Compares `J^{(r)}_{C,T}` over every `t`-subset `T`.
pub fn t_independence_check(c: &LinearCode, r: usize, t: usize) -> Result<Independence> {
    independence_with(&Enumerator::new(c), r, t)
}

pub fn independence_with(e: &Enumerator, r: usize, t: usize) -> Result<Independence> {
    let n = e.code().n();
    if t > n {
        return Err(Error::InvalidArgument(format!("t = {t} exceeds n = {n}")));
    }
    let sets = subsets_of_size(n, t);
    let limit = e.limits().max_subcodes;
    if sets.len() as u64 > limit {
        return Err(Error::TooLarge(format!(
            "{} reference sets exceed the guard",
            sets.len()
        )));
    }
    let first = RefSet::from_mask(n, sets[0]);
    let base = e.higher_jacobi(&first, r)?;
    for &s in &sets[1..] {
        let other = RefSet::from_mask(n, s);
        if e.higher_jacobi(&other, r)?.grid() != base.grid() {
            return Ok(Independence {
                independent: false,
                table: None,
                witness: Some((first, other)),
            });
        }
    }
    Ok(Independence {
        independent: true,
        table: Some(base),
        witness: None,
    })
}

/// `A^t W^{(r)}_C / (n (n-1) ... (n-t+1))`, refused unless every
/// `S_{r,i}(C)` passes the design check at every level `1..=t`.
pub fn jacobi_by_polarization(c: &LinearCode, r: usize, t: usize) -> Result<BiHomPoly> {
    polarization_with(&Enumerator::new(c), r, t)
}

pub fn polarization_with(e: &Enumerator, r: usize, t: usize) -> Result<BiHomPoly> {
    let n = e.code().n();
    if t > n {
        return Err(Error::InvalidArgument(format!("t = {t} exceeds n = {n}")));
    }
    for level in 1..=t {
        for (i, v) in support_designs_with(e, r, level)? {
            if !v.is_design {
                return Err(Error::DesignHypothesisFails(format!(
                    "S_{{{r},{i}}} is not a {}-design (needed for |T| = {level})",
                    v.t
                )));
            }
        }
    }
    let mut p = e.higher_weight_enum(r)?;
    let mut falling = BigInt::from(1);
    for step in 0..t {
        p = p.polarize()?;
        falling *= n - step;
    }
    Ok(p.scale(&(Rational::from_integer(BigInt::from(1)) / rat_int(falling))))
}

/// Weights of the punctured support vectors of `S_r(C)` at coordinate
/// `i` (0-based): those vanishing at `i`, and those not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PuncturedSplit {
    pub n: usize,
    pub zero_side: Vec<usize>,
    pub one_side: Vec<usize>,
}

pub fn punctured_split(c: &LinearCode, r: usize, i: usize) -> Result<PuncturedSplit> {
    split_with(&Enumerator::new(c), r, i)
}

pub fn split_with(e: &Enumerator, r: usize, i: usize) -> Result<PuncturedSplit> {
    let n = e.code().n();
    if i >= n {
        return Err(Error::InvalidArgument(format!(
            "coordinate {} outside 1..={n}",
            i + 1
        )));
    }
    let mut zero_side = Vec::new();
    let mut one_side = Vec::new();
    for (m, cnt) in e.subcode_profile(r)?.iter() {
        let w = m.count_ones() as usize;
        for _ in 0..cnt {
            if m >> i & 1 == 1 {
                one_side.push(w - 1);
            } else {
                zero_side.push(w);
            }
        }
    }
    zero_side.sort_unstable();
    one_side.sort_unstable();
    Ok(PuncturedSplit {
        n,
        zero_side,
        one_side,
    })
}

impl PuncturedSplit {
    /// `w sum_{zero side} x^{n-1-wt} y^wt + z sum_{one side} x^{n-1-wt} y^wt`.
    pub fn reassemble(&self) -> BiHomPoly {
        let mut p = BiHomPoly::zero(1, self.n - 1);
        let one = Rational::from_integer(BigInt::from(1));
        for &w in &self.zero_side {
            p.add_to(0, w, &one);
        }
        for &w in &self.one_side {
            p.add_to(1, w, &one);
        }
        p
    }
}

/// Equivalence check used by the tests and the verifier: the design verdicts
/// at every weight agree with reference-set independence.
pub fn equivalence_holds(e: &Enumerator, r: usize, t: usize) -> Result<bool> {
    let designs = support_designs_with(e, r, t)?.values().all(|v| v.is_design);
    Ok(designs == independence_with(e, r, t)?.independent)
}

/// `sum_i |S_{r,i}| C(i,t) / C(n,t)` for a design's `lambda`.
pub fn expected_lambda(n: usize, i: usize, t: usize, blocks: u64) -> Rational {
    let den = binomial(n as u64, t as u64);
    if den.is_zero() {
        return Rational::zero();
    }
    rat_int(BigInt::from(blocks) * binomial(i as u64, t as u64)) / rat_int(den)
}
