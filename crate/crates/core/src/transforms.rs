//! MacWilliams-type identities: the dual code's higher weight enumerator,
//! higher Jacobi polynomial and extended Jacobi polynomial from the primal
//! ones.
//!
//! Coefficients are accumulated as rationals (individual terms are not
//! integral) and converted back at the end; a non-integral result is
//! reported as [`Error::NonIntegerResult`].

use num_traits::Zero;

use crate::bipoly::{BiHomPoly, PairSubstitution};
use crate::code::{LinearCode, RefSet};
use crate::enumerators::{JacobiTable, TableKind};
use crate::exactmath::{pow_rat, rat_int, BigInt, Rational};
use crate::qcomb::{choose2, gauss_binom, qbracket, qfact};
use crate::{Error, Result};

/// Parameters of the primal code that the transforms depend on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MWContext {
    pub q: u64,
    pub n: usize,
    /// Dimension of the primal code.
    pub k: usize,
    pub t_size: usize,
}

impl MWContext {
    pub fn new(q: u64, n: usize, k: usize, t_size: usize) -> Result<Self> {
        if k > n || t_size > n {
            return Err(Error::InvalidArgument(format!(
                "need k <= n and |T| <= n, got n={n} k={k} |T|={t_size}"
            )));
        }
        Ok(MWContext { q, n, k, t_size })
    }

    pub fn for_code(c: &LinearCode, t: &RefSet) -> Self {
        MWContext {
            q: c.q(),
            n: c.n(),
            k: c.k(),
            t_size: t.len(),
        }
    }

    /// `(-1)^{r-j} q^{C(r-j,2) - j(r-j) - l(j-l) - jk} / ([r-j]_q [j-l]_q)`.
    pub fn coefficient(&self, r: usize, j: usize, l: usize) -> Rational {
        let (r, j, l, k) = (r as i64, j as i64, l as i64, self.k as i64);
        let e = choose2((r - j) as u64) as i64 - j * (r - j) - l * (j - l) - j * k;
        let den = qbracket((r - j) as u64, self.q) * qbracket((j - l) as u64, self.q);
        let c = pow_rat(self.q, e) / rat_int(den);
        if (r - j) % 2 == 1 {
            -c
        } else {
            c
        }
    }

    fn substitution(&self, j: usize) -> PairSubstitution {
        PairSubstitution::macwilliams(&BigInt::from(self.q).pow(j as u32))
    }
}

/// Sum of `coefficient(r,j,l) * P[l](substitution at q^j)` over
/// `0 <= l <= j <= r`.
fn double_sum(parts: &[BiHomPoly], ctx: &MWContext) -> Result<BiHomPoly> {
    let r = parts.len() - 1;
    let mut acc = BiHomPoly::zero(parts[0].deg_wz(), parts[0].deg_xy());
    for j in 0..=r {
        let sub = ctx.substitution(j);
        for (l, p) in parts.iter().enumerate().take(j + 1) {
            let c = ctx.coefficient(r, j, l);
            if c.is_zero() {
                continue;
            }
            acc = acc.add(&p.substitute(&sub).scale(&c))?;
        }
    }
    Ok(acc)
}

/// `W^{(r)}` of the dual code from `W^{(0)}, ..., W^{(r)}` of the primal.
pub fn mw_higher_weight(w: &[BiHomPoly], ctx: &MWContext) -> Result<BiHomPoly> {
    if w.is_empty() {
        return Err(Error::InvalidArgument("need W^(0) .. W^(r)".into()));
    }
    for p in w {
        if p.deg_wz() != 0 || p.deg_xy() != ctx.n {
            return Err(Error::DegreeMismatch(p.deg_wz(), p.deg_xy(), 0, ctx.n));
        }
    }
    let out = double_sum(w, ctx)?;
    out.integer_grid()?;
    Ok(out)
}

/// Higher Jacobi table of the dual code from the primal tables for
/// `l = 0..=r`.
pub fn mw_higher_jacobi(j: &[JacobiTable], ctx: &MWContext) -> Result<JacobiTable> {
    let first = j
        .first()
        .ok_or_else(|| Error::InvalidArgument("need J^(0) .. J^(r)".into()))?;
    let t = *first.ref_set();
    for (l, tab) in j.iter().enumerate() {
        if tab.ref_set() != &t || tab.n() != ctx.n || t.len() != ctx.t_size {
            return Err(Error::SpecMismatch);
        }
        if tab.kind() != TableKind::Higher(l) {
            return Err(Error::InvalidArgument(format!(
                "entry {l} is a {} table, expected r={l}",
                tab.kind()
            )));
        }
    }
    let polys: Vec<BiHomPoly> = j.iter().map(JacobiTable::to_poly).collect();
    JacobiTable::from_poly(t, TableKind::Higher(j.len() - 1), &double_sum(&polys, ctx)?)
}

/// Extended Jacobi table of the dual code:
/// `q^{-km} J(w+(q^m-1)z, w-z, x+(q^m-1)y, x-y; q^m)`.
pub fn mw_extended_jacobi(j: &JacobiTable, ctx: &MWContext) -> Result<JacobiTable> {
    let m = match j.kind() {
        TableKind::Extended(m) => m,
        TableKind::Plain => 1,
        other => {
            return Err(Error::InvalidArgument(format!(
                "expected an extended table, got {other}"
            )))
        }
    };
    if j.n() != ctx.n || j.ref_set().len() != ctx.t_size {
        return Err(Error::SpecMismatch);
    }
    let qm = BigInt::from(ctx.q).pow(m);
    let scale = pow_rat(ctx.q, -((ctx.k as i64) * m as i64));
    let p = j
        .to_poly()
        .substitute(&PairSubstitution::macwilliams(&qm))
        .scale(&scale);
    JacobiTable::from_poly(*j.ref_set(), j.kind(), &p)
}

/// Checks `(1/[r]_q) gauss(r,j) [j,l]_q = 1 / (q^{j(r-j)} [r-j]_q q^{l(j-l)} [j-l]_q)`.
pub fn bracket_identity_check(r: u64, j: u64, l: u64, q: u64) -> bool {
    let lhs = rat_int(gauss_binom(r, j, q) * qfact(j, l, q)) / rat_int(qbracket(r, q));
    let den = BigInt::from(q).pow((j * (r - j) + l * (j - l)) as u32)
        * qbracket(r - j, q)
        * qbracket(j - l, q);
    lhs == Rational::new(BigInt::from(1), den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::random_code;
    use crate::enumerators::{
        extended_jacobi, higher_jacobi, higher_weight_enum, jacobi, Enumerator,
    };
    use crate::gf::field_new;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ex44() -> LinearCode {
        LinearCode::parse("q=2 n=6\n110000\n001100\n000011").unwrap()
    }

    fn hamming74() -> LinearCode {
        LinearCode::parse("q=2 n=7\n1000110\n0100101\n0010011\n0001111").unwrap()
    }

    fn dual_weight(c: &LinearCode, r: usize) -> BiHomPoly {
        let ctx = MWContext::for_code(c, &RefSet::empty(c.n()));
        let w: Vec<BiHomPoly> = (0..=r).map(|l| higher_weight_enum(c, l).unwrap()).collect();
        mw_higher_weight(&w, &ctx).unwrap()
    }

    fn dual_jacobi(c: &LinearCode, t: &RefSet, r: usize) -> JacobiTable {
        let ctx = MWContext::for_code(c, t);
        let j: Vec<JacobiTable> = (0..=r).map(|l| higher_jacobi(c, t, l).unwrap()).collect();
        mw_higher_jacobi(&j, &ctx).unwrap()
    }

    #[test]
    fn higher_weight_examples() {
        assert_eq!(dual_weight(&ex44(), 0).to_string(), "x^6");
        assert_eq!(
            dual_weight(&ex44(), 1).to_string(),
            "3*x^4*y^2 + 3*x^2*y^4 + y^6"
        );
        assert_eq!(dual_weight(&hamming74(), 1).to_string(), "7*x^3*y^4");
    }

    #[test]
    fn higher_jacobi_examples() {
        let c = ex44();
        let t = RefSet::new(6, &[2]).unwrap();
        assert_eq!(
            dual_jacobi(&c, &t, 2).to_poly().to_string(),
            "w*x*y^4 + 2*z*x^2*y^3 + 4*z*y^5"
        );
        assert_eq!(dual_jacobi(&c, &t, 0).to_poly().to_string(), "w*x^5");
        let h = hamming74();
        let t = RefSet::new(7, &[0]).unwrap();
        assert_eq!(
            dual_jacobi(&h, &t, 1),
            higher_jacobi(&h.dual(), &t, 1).unwrap()
        );
    }

    #[test]
    fn extended_examples() {
        let f3 = field_new(3, 1).unwrap();
        let full = LinearCode::full(f3, 4).unwrap();
        let t = RefSet::new(4, &[0, 3]).unwrap();
        for m in 1..=2 {
            let e = extended_jacobi(&full, &t, m).unwrap();
            let d = mw_extended_jacobi(&e, &MWContext::for_code(&full, &t)).unwrap();
            assert_eq!(d.to_poly().to_string(), "w^2*x^2");
        }
        let c = ex44();
        let t = RefSet::new(6, &[0]).unwrap();
        let e = extended_jacobi(&c, &t, 2).unwrap();
        assert_eq!(
            mw_extended_jacobi(&e, &MWContext::for_code(&c, &t)).unwrap(),
            e
        );
        let h = hamming74();
        let t = RefSet::new(7, &[1, 2]).unwrap();
        let plain = jacobi(&h, &t).unwrap();
        let d = mw_extended_jacobi(&plain, &MWContext::for_code(&h, &t)).unwrap();
        assert_eq!(d, jacobi(&h.dual(), &t).unwrap());
    }

    #[test]
    fn randomized_against_dual_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for (p, n, k) in [(2, 6, 3), (3, 5, 2), (2, 7, 3), (3, 6, 2)] {
            let c = random_code(&field_new(p, 1).unwrap(), n, k, &mut rng).unwrap();
            let d = c.dual();
            let (ec, ed) = (Enumerator::new(&c), Enumerator::new(&d));
            for tset in [vec![], vec![1], vec![0, 4]] {
                let t = RefSet::new(n, &tset).unwrap();
                let ctx = MWContext::for_code(&c, &t);
                for r in 0..=k.min(n - k) {
                    let j: Vec<_> = (0..=r).map(|l| ec.higher_jacobi(&t, l).unwrap()).collect();
                    assert_eq!(
                        mw_higher_jacobi(&j, &ctx).unwrap(),
                        ed.higher_jacobi(&t, r).unwrap()
                    );
                }
                for m in 1..=2 {
                    let e = ec.extended_jacobi(&t, m).unwrap();
                    let back = mw_extended_jacobi(&e, &ctx).unwrap();
                    assert_eq!(back, ed.extended_jacobi(&t, m).unwrap());
                    let dctx = MWContext::for_code(&d, &t);
                    assert_eq!(mw_extended_jacobi(&back, &dctx).unwrap(), e);
                }
            }
        }
    }

    #[test]
    fn bracket_identity() {
        for q in [2, 3, 4] {
            for r in 0..=5 {
                for j in 0..=r {
                    for l in 0..=j {
                        assert!(
                            bracket_identity_check(r, j, l, q),
                            "r={r} j={j} l={l} q={q}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_mismatched_inputs() {
        let c = ex44();
        let t = RefSet::new(6, &[0]).unwrap();
        let ctx = MWContext::for_code(&c, &t);
        let j1 = higher_jacobi(&c, &t, 1).unwrap();
        assert!(mw_higher_jacobi(std::slice::from_ref(&j1), &ctx).is_err());
        assert!(mw_extended_jacobi(&j1, &ctx).is_err());
        assert!(mw_higher_weight(&[], &ctx).is_err());
        assert!(MWContext::new(2, 3, 4, 0).is_err());
    }
}
