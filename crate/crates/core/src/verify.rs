//! Batch verification: every identity the crate implements, checked on one
//! code by comparing independent computation routes.
//!
//! The report is a list of `PASS`/`FAIL`/`SKIP` lines in a fixed order. All
//! randomness (reference-set sampling, extension-codeword sampling) comes
//! from the recorded seed, and no line depends on timing or thread count,
//! so reruns with any `--jobs` produce identical text.

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::code::{subsets_of_size, Limits, LinearCode, RefSet};
use crate::designs::{
    independence_with, is_t_design, polarization_with, subcode_support_blocks, support_designs_with,
};
use crate::enumerators::{
    expected_mass, extension_support_check, Enumerator, JacobiTable, TableKind,
};
use crate::exactmath::{rat_int, BigInt};
use crate::harmonic::{delsarte_design_check, recover_with};
use crate::qcomb::gauss_binom;
use crate::transforms::{mw_extended_jacobi, mw_higher_jacobi, mw_higher_weight, MWContext};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    /// Largest subcode dimension checked (capped at k).
    pub max_r: usize,
    /// Largest reference-set size.
    pub max_t: usize,
    /// Largest extension degree.
    pub max_m: u32,
    /// Reference sets per size; larger families are sampled.
    pub t_samples: usize,
    /// Extension codewords sampled for the support check.
    pub support_samples: usize,
    pub seed: u64,
    pub limits: Limits,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_r: 2,
            max_t: 2,
            max_m: 2,
            t_samples: 120,
            support_samples: 64,
            seed: 1,
            limits: Limits::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckLine {
    pub status: Status,
    pub name: String,
    pub detail: String,
}

impl fmt::Display for CheckLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        };
        write!(f, "{tag} {}", self.name)?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub header: String,
    pub lines: Vec<CheckLine>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| l.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckLine> {
        self.lines.iter().filter(|l| l.status == Status::Fail)
    }

    pub fn render(&self) -> String {
        let mut s = self.header.clone();
        s.push('\n');
        for l in &self.lines {
            s.push_str(&l.to_string());
            s.push('\n');
        }
        let fails = self.failures().count();
        let passes = self
            .lines
            .iter()
            .filter(|l| l.status == Status::Pass)
            .count();
        s.push_str(&format!("{passes} passed, {fails} failed\n"));
        s
    }
}

struct Suite {
    lines: Vec<CheckLine>,
}

impl Suite {
    /// Records the outcome of one check; `Ok(None)` passes, `Ok(Some(why))`
    /// fails, guard errors skip, other errors fail.
    fn record(&mut self, name: String, count: usize, outcome: Result<Option<String>>) {
        let (status, detail) = match outcome {
            Ok(None) => (
                Status::Pass,
                if count > 0 {
                    format!("{count} checked")
                } else {
                    String::new()
                },
            ),
            Ok(Some(why)) => (Status::Fail, why),
            Err(Error::TooLarge(why)) => (Status::Skip, why),
            Err(e) => (Status::Fail, e.to_string()),
        };
        self.lines.push(CheckLine {
            status,
            name,
            detail,
        });
    }
}

fn compare(what: &JacobiTable, expected: &JacobiTable) -> Option<String> {
    what.first_difference(expected).map(|(i, j)| {
        format!(
            "T={} differs at (i={i}, j={j}): {} vs {}",
            expected.ref_set(),
            what.grid()
                .get(i)
                .and_then(|r| r.get(j))
                .map_or("-".into(), |v| v.to_string()),
            expected
                .grid()
                .get(i)
                .and_then(|r| r.get(j))
                .map_or("-".into(), |v| v.to_string()),
        )
    })
}

/// Reference sets of each size `0..=max_t`, sampled down to
/// `t_samples` per size with the seeded generator.
pub fn reference_sets(
    n: usize,
    max_t: usize,
    t_samples: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<Vec<RefSet>> {
    (0..=max_t.min(n))
        .map(|s| {
            let mut all: Vec<RefSet> = subsets_of_size(n, s)
                .into_iter()
                .map(|m| RefSet::from_mask(n, m))
                .collect();
            if all.len() > t_samples {
                all.shuffle(rng);
                all.truncate(t_samples);
                all.sort();
            }
            all
        })
        .collect()
}

/// Runs the whole suite on `c`.
pub fn verify_all(c: &LinearCode, cfg: &VerifyConfig) -> Result<Report> {
    let (n, k, q) = (c.n(), c.k(), c.q());
    let dual = c.dual();
    let e = Enumerator::with_limits(c, cfg.limits);
    let ed = Enumerator::with_limits(&dual, cfg.limits);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let sets = reference_sets(n, cfg.max_t, cfg.t_samples, &mut rng);
    let max_r = cfg.max_r.min(k);
    let header = format!(
        "code: [{n}, {k}] over GF({q}); seed={}; r<={max_r} |T|<={} m<={} samples/size={}",
        cfg.seed,
        cfg.max_t.min(n),
        cfg.max_m,
        cfg.t_samples
    );
    let mut s = Suite { lines: Vec::new() };

    for r in 0..=max_r {
        let outcome = c.subcodes(r, &cfg.limits).map(|subs| {
            let expect = gauss_binom(k as u64, r as u64, q);
            (BigInt::from(subs.len()) != expect)
                .then(|| format!("{} subcodes, expected {expect}", subs.len()))
        });
        s.record(format!("subcode-count r={r}"), 0, outcome);
    }

    for r in 0..=max_r {
        for (size, group) in sets.iter().enumerate() {
            let outcome = (|| {
                for t in group {
                    let direct = e.higher_jacobi(t, r)?;
                    if direct.total() != expected_mass(c, TableKind::Higher(r)) {
                        return Ok(Some(format!("T={t}: mass {}", direct.total())));
                    }
                    if let Some(d) = compare(&e.higher_jacobi_via_q(t, r)?, &direct) {
                        return Ok(Some(d));
                    }
                }
                Ok(None)
            })();
            s.record(
                format!("higher-jacobi-via-q r={r} |T|={size}"),
                group.len(),
                outcome,
            );
        }
    }

    for r in 1..=max_r {
        for (size, group) in sets.iter().enumerate() {
            let outcome = (|| {
                for t in group {
                    if let Some(d) =
                        compare(&e.higher_from_extended(t, r)?, &e.higher_jacobi(t, r)?)
                    {
                        return Ok(Some(d));
                    }
                }
                Ok(None)
            })();
            s.record(
                format!("higher-from-extended r={r} |T|={size}"),
                group.len(),
                outcome,
            );
        }
    }

    for m in 1..=cfg.max_m {
        for (size, group) in sets.iter().enumerate() {
            let outcome = (|| {
                for t in group {
                    let conv = e.extended_jacobi(t, m)?;
                    if let Some(d) = compare(&e.extended_jacobi_via_q(t, m)?, &conv) {
                        return Ok(Some(format!("via-q: {d}")));
                    }
                    if c.field().is_prime_field() {
                        if let Some(d) = compare(&e.extended_jacobi_direct(t, m)?, &conv) {
                            return Ok(Some(format!("direct: {d}")));
                        }
                    }
                }
                Ok(None)
            })();
            s.record(
                format!("extended-routes m={m} |T|={size}"),
                group.len(),
                outcome,
            );
        }
    }

    if c.field().is_prime_field() {
        for m in 1..=cfg.max_m {
            let outcome =
                extension_support_check(c, m, cfg.support_samples, &mut rng).map(|_| None);
            s.record(
                format!("extension-support m={m}"),
                cfg.support_samples,
                outcome,
            );
        }
    }

    for (size, group) in sets.iter().enumerate().skip(1) {
        let outcome = (|| {
            for t in group {
                let sum = JacobiTable::combine(
                    *t,
                    TableKind::Plain,
                    &[
                        (rat_int(1), &e.higher_jacobi(t, 0)?),
                        (rat_int(q - 1), &e.higher_jacobi(t, 1.min(k))?),
                    ],
                )?;
                if k >= 1 {
                    if let Some(d) = compare(&sum, &e.jacobi(t)?) {
                        return Ok(Some(d));
                    }
                }
            }
            Ok(None)
        })();
        s.record(
            format!("codewords-from-layers |T|={size}"),
            group.len(),
            outcome,
        );
    }

    let mw_r = max_r.min(n - k);
    for r in 0..=mw_r {
        let outcome = (|| {
            let ctx = MWContext::new(q, n, k, 0)?;
            let w = (0..=r)
                .map(|l| e.higher_weight_enum(l))
                .collect::<Result<Vec<_>>>()?;
            let lhs = mw_higher_weight(&w, &ctx)?;
            let rhs = ed.higher_weight_enum(r)?;
            Ok((lhs != rhs).then(|| format!("{lhs} vs {rhs}")))
        })();
        s.record(format!("macwilliams-higher-weight r={r}"), 0, outcome);
        for (size, group) in sets.iter().enumerate() {
            let outcome = (|| {
                for t in group {
                    let ctx = MWContext::for_code(c, t);
                    let j = (0..=r)
                        .map(|l| e.higher_jacobi(t, l))
                        .collect::<Result<Vec<_>>>()?;
                    if let Some(d) = compare(&mw_higher_jacobi(&j, &ctx)?, &ed.higher_jacobi(t, r)?)
                    {
                        return Ok(Some(d));
                    }
                }
                Ok(None)
            })();
            s.record(
                format!("macwilliams-higher-jacobi r={r} |T|={size}"),
                group.len(),
                outcome,
            );
        }
    }
    for m in 1..=cfg.max_m {
        for (size, group) in sets.iter().enumerate() {
            let outcome = (|| {
                for t in group {
                    let ctx = MWContext::for_code(c, t);
                    let primal = e.extended_jacobi(t, m)?;
                    let image = mw_extended_jacobi(&primal, &ctx)?;
                    if let Some(d) = compare(&image, &ed.extended_jacobi(t, m)?) {
                        return Ok(Some(d));
                    }
                    let back = mw_extended_jacobi(&image, &MWContext::for_code(&dual, t))?;
                    if let Some(d) = compare(&back, &primal) {
                        return Ok(Some(format!("involution: {d}")));
                    }
                }
                Ok(None)
            })();
            s.record(
                format!("macwilliams-extended m={m} |T|={size}"),
                group.len(),
                outcome,
            );
        }
    }

    let max_t = cfg.max_t.min(n);
    for r in 0..=max_r {
        for t in 0..=max_t {
            let outcome = (|| {
                let designs = support_designs_with(&e, r, t)?
                    .values()
                    .all(|v| v.is_design);
                let ind = independence_with(&e, r, t)?;
                Ok((designs != ind.independent).then(|| {
                    format!(
                        "designs at every weight: {designs}, reference-set independence: {}",
                        ind.independent
                    )
                }))
            })();
            s.record(format!("design-independence r={r} t={t}"), 0, outcome);
        }
    }

    for r in 0..=max_r {
        for t in 1..=max_t {
            let mut detail = None;
            let outcome = (|| match polarization_with(&e, r, t) {
                Ok(p) => {
                    for m in subsets_of_size(n, t) {
                        let ts = RefSet::from_mask(n, m);
                        let tab = JacobiTable::from_poly(ts, TableKind::Higher(r), &p)?;
                        if let Some(d) = compare(&tab, &e.higher_jacobi(&ts, r)?) {
                            return Ok(Some(d));
                        }
                    }
                    Ok(None)
                }
                Err(Error::DesignHypothesisFails(_)) => {
                    detail = Some("hypothesis fails, refusal confirmed".to_string());
                    let independent_everywhere = (1..=t)
                        .map(|l| independence_with(&e, r, l).map(|i| i.independent))
                        .collect::<Result<Vec<_>>>()?;
                    Ok(independent_everywhere
                        .iter()
                        .all(|&b| b)
                        .then(|| "refused although every level is independent".to_string()))
                }
                Err(e) => Err(e),
            })();
            s.record(format!("polarization r={r} t={t}"), 0, outcome);
            if let (Some(d), Some(last)) = (detail, s.lines.last_mut()) {
                if last.status == Status::Pass {
                    last.detail = d;
                }
            }
        }
    }

    for r in 0..=max_r {
        let outcome = (|| {
            let blocks = subcode_support_blocks(&e, r)?;
            for (i, b) in &blocks {
                for t in 1..=max_t {
                    if delsarte_design_check(b, t)? != is_t_design(b, t).is_design {
                        return Ok(Some(format!("weight {i}, t={t}")));
                    }
                }
            }
            Ok(None)
        })();
        s.record(format!("delsarte-vs-brute-force r={r}"), 0, outcome);
    }

    for r in 0..=max_r {
        for (size, group) in sets.iter().enumerate() {
            if 2 * size > n {
                continue;
            }
            let outcome = (|| {
                for t in group {
                    if let Some(d) = compare(&recover_with(&e, r, t)?, &e.higher_jacobi(t, r)?) {
                        return Ok(Some(d));
                    }
                }
                Ok(None)
            })();
            s.record(
                format!("harmonic-recovery r={r} |T|={size}"),
                group.len(),
                outcome,
            );
        }
    }

    Ok(Report {
        header,
        lines: s.lines,
    })
}

/// Runs [`verify_all`] inside a dedicated pool with `jobs` threads.
pub fn verify_with_jobs(c: &LinearCode, cfg: &VerifyConfig, jobs: usize) -> Result<Report> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    pool.install(|| verify_all(c, cfg))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::random_code;
    use crate::gf::field_new;

    #[test]
    fn golden_codes_pass() {
        let ex44 = LinearCode::parse("q=2 n=6\n110000\n001100\n000011").unwrap();
        let ham = LinearCode::parse("q=2 n=7\n1000110\n0100101\n0010011\n0001111").unwrap();
        for c in [ex44, ham] {
            let cfg = VerifyConfig {
                max_r: c.k(),
                ..VerifyConfig::default()
            };
            let report = verify_all(&c, &cfg).unwrap();
            assert!(report.passed(), "{}", report.render());
            assert!(report.lines.iter().all(|l| l.status == Status::Pass));
        }
    }

    #[test]
    fn ternary_code_passes_and_is_thread_independent() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let c = random_code(&field_new(3, 1).unwrap(), 6, 3, &mut rng).unwrap();
        let cfg = VerifyConfig {
            t_samples: 8,
            ..VerifyConfig::default()
        };
        let one = verify_with_jobs(&c, &cfg, 1).unwrap();
        let four = verify_with_jobs(&c, &cfg, 4).unwrap();
        assert!(one.passed(), "{}", one.render());
        assert_eq!(one.render(), four.render());
    }

    #[test]
    fn sampling_is_seeded() {
        let mut a = ChaCha8Rng::seed_from_u64(3);
        let mut b = ChaCha8Rng::seed_from_u64(3);
        assert_eq!(
            reference_sets(10, 3, 5, &mut a),
            reference_sets(10, 3, 5, &mut b)
        );
        let mut c = ChaCha8Rng::seed_from_u64(3);
        let sets = reference_sets(10, 3, 5, &mut c);
        assert_eq!(
            sets.iter().map(Vec::len).collect::<Vec<_>>(),
            vec![1, 5, 5, 5]
        );
    }
}
