//! Acceptance criteria 1 to 8, one `PASS`/`FAIL` line each. All comparisons
//! are exact.
//!
//! Criterion 1 demands the golden higher Jacobi polynomial
//! `wxy^4 + 2zx^2y^3 + 6zy^5`, whose coefficients sum to 9 although the
//! [6,3] binary code has only 7 two-dimensional subcodes; the correct
//! coefficient of `zy^5` is 4. The line therefore reads FAIL. The target
//! exits with failure only if something other than that one coefficient
//! differs, or if any other criterion fails.

use std::time::{Duration, Instant};

use jacobiforge::bipoly::BiHomPoly;
use jacobiforge::code::{random_code, subsets_of_size, Limits, LinearCode, RefSet};
use jacobiforge::designs::{
    equivalence_holds, is_t_design, polarization_with, subcode_support_blocks, BlockMultiset,
};
use jacobiforge::enumerators::{Enumerator, JacobiTable, TableKind};
use jacobiforge::exactmath::{binomial, rat, BigInt};
use jacobiforge::gf::field_new;
use jacobiforge::harmonic::{
    delsarte_design_check, hahn_endpoint, hahn_eval, harm_basis, recover_with, HahnParams,
};
use jacobiforge::qcomb::{gauss_binom, qbinom_expansion_check};
use jacobiforge::transforms::{
    bracket_identity_check, mw_extended_jacobi, mw_higher_jacobi, mw_higher_weight, MWContext,
};
use jacobiforge::verify::{verify_with_jobs, VerifyConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<(), String>;

const SWEEP_SEED: u64 = 2024;
const SWEEP_CODES: usize = 50;

fn ex44() -> LinearCode {
    LinearCode::parse(include_str!("../examples/data/ex44.txt")).unwrap()
}

fn hamming74() -> LinearCode {
    LinearCode::parse(include_str!("../examples/data/hamming74.txt")).unwrap()
}

fn fail(what: impl std::fmt::Display) -> String {
    what.to_string()
}

fn same(label: &str, got: &JacobiTable, want: &JacobiTable) -> Check {
    match got.first_difference(want) {
        None => Ok(()),
        Some((i, j)) => Err(format!(
            "{label}: T={} differs at (i={i}, j={j})",
            want.ref_set()
        )),
    }
}

/// `sum c * w^{1-j} z^j x^{5-i} y^i` over `(c, j, i)`.
fn single_point_poly(terms: &[(i64, usize, usize)]) -> BiHomPoly {
    let mut p = BiHomPoly::zero(1, 5);
    for &(c, j, i) in terms {
        p.set(j, i, rat(c, 1));
    }
    p
}

fn block_list(b: &BlockMultiset) -> Vec<Vec<usize>> {
    b.to_one_based()
}

/// Returns the list of coefficient discrepancies against the printed golden
/// values, and an error for anything else that goes wrong.
fn criterion1() -> Result<Vec<String>, String> {
    let c = ex44();
    let e = Enumerator::new(&c);
    let golden = [
        single_point_poly(&[(1, 0, 0)]),
        single_point_poly(&[(1, 1, 1), (2, 0, 2), (2, 1, 3), (1, 0, 4), (1, 1, 5)]),
        single_point_poly(&[(1, 0, 4), (2, 1, 3), (6, 1, 5)]),
    ];
    let mut discrepancies = Vec::new();
    for i in 0..6 {
        let t = RefSet::new(6, &[i]).map_err(fail)?;
        for (r, want) in golden.iter().enumerate() {
            let got = e.higher_jacobi(&t, r).map_err(fail)?.to_poly();
            for j in 0..=1 {
                for w in 0..=5 {
                    if got.get(j, w) != want.get(j, w) {
                        discrepancies.push(format!(
                            "T={t} r={r} coefficient of w^{}z^{j}x^{}y^{w}: computed {}, printed {}",
                            1 - j,
                            5 - w,
                            got.get(j, w),
                            want.get(j, w)
                        ));
                    }
                }
            }
        }
        let j: Vec<JacobiTable> = (0..=2)
            .map(|r| e.higher_jacobi(&t, r))
            .collect::<Result<_, _>>()
            .map_err(fail)?;
        let image = mw_higher_jacobi(&j, &MWContext::for_code(&c, &t)).map_err(fail)?;
        same("dual J^(2) of a self-dual code", &image, &j[2])?;
    }
    let blocks = |r| subcode_support_blocks(&e, r).map_err(fail);
    let (b1, b2) = (blocks(1)?, blocks(2)?);
    let pairs = vec![vec![1, 2], vec![3, 4], vec![5, 6]];
    let quads = vec![vec![1, 2, 3, 4], vec![1, 2, 5, 6], vec![3, 4, 5, 6]];
    for (label, got, want) in [
        ("S_{1,2}", &b1[&2], &pairs),
        ("S_{1,4}", &b1[&4], &quads),
        ("S_{2,4}", &b2[&4], &quads),
    ] {
        if block_list(got) != *want {
            return Err(format!("{label} = {:?}", block_list(got)));
        }
    }
    if c.dual().generator() != c.generator() {
        return Err("code is not self-dual".into());
    }
    Ok(discrepancies)
}

/// The seeded sweep shared by criteria 2 to 4.
fn sweep() -> Vec<LinearCode> {
    let mut rng = ChaCha8Rng::seed_from_u64(SWEEP_SEED);
    (0..SWEEP_CODES)
        .map(|s| {
            let p = if s % 2 == 0 { 2 } else { 3 };
            let n = rng.gen_range(4..=8);
            let k = rng.gen_range(1..=4.min(n - 1));
            random_code(&field_new(p, 1).unwrap(), n, k, &mut rng).unwrap()
        })
        .collect()
}

fn sets_up_to(n: usize, size: usize) -> Vec<RefSet> {
    (0..=size.min(n))
        .flat_map(|s| subsets_of_size(n, s))
        .map(|m| RefSet::from_mask(n, m))
        .collect()
}

fn criterion2(codes: &[LinearCode]) -> Check {
    for (idx, c) in codes.iter().enumerate() {
        let d = c.dual();
        let (e, ed) = (Enumerator::new(c), Enumerator::new(&d));
        let tag = |s: String| format!("code #{idx} [{}, {}]_{}: {s}", c.n(), c.k(), c.q());
        let rmax = c.k().min(d.k());
        for r in 0..=rmax {
            let ctx = MWContext::new(c.q(), c.n(), c.k(), 0).map_err(fail)?;
            let w: Vec<_> = (0..=r)
                .map(|l| e.higher_weight_enum(l))
                .collect::<Result<_, _>>()
                .map_err(fail)?;
            if mw_higher_weight(&w, &ctx).map_err(fail)?
                != ed.higher_weight_enum(r).map_err(fail)?
            {
                return Err(tag(format!("higher weight transform differs at r={r}")));
            }
        }
        for t in sets_up_to(c.n(), 3) {
            let ctx = MWContext::for_code(c, &t);
            let j: Vec<_> = (0..=rmax)
                .map(|l| e.higher_jacobi(&t, l))
                .collect::<Result<_, _>>()
                .map_err(fail)?;
            for r in 0..=rmax {
                let image = mw_higher_jacobi(&j[..=r], &ctx).map_err(fail)?;
                same(
                    &tag(format!("higher Jacobi transform r={r}")),
                    &image,
                    &ed.higher_jacobi(&t, r).map_err(fail)?,
                )?;
            }
            for m in 1..=2 {
                let image = mw_extended_jacobi(&e.extended_jacobi(&t, m).map_err(fail)?, &ctx)
                    .map_err(fail)?;
                same(
                    &tag(format!("extended transform m={m}")),
                    &image,
                    &ed.extended_jacobi(&t, m).map_err(fail)?,
                )?;
            }
        }
    }
    Ok(())
}

fn criterion3(codes: &[LinearCode]) -> Check {
    for (idx, c) in codes.iter().enumerate() {
        let e = Enumerator::new(c);
        let tag = |s: String| format!("code #{idx}: {s}");
        for t in sets_up_to(c.n(), 3) {
            for r in 0..=c.k() {
                let back = e
                    .higher_from_extended(&t, r)
                    .map_err(|err| tag(err.to_string()))?;
                same(
                    &tag(format!("r={r} from extended")),
                    &back,
                    &e.higher_jacobi(&t, r).map_err(fail)?,
                )?;
            }
            for m in 1..=2 {
                let conv = e
                    .extended_jacobi(&t, m)
                    .map_err(|err| tag(err.to_string()))?;
                same(
                    &tag(format!("m={m} conversion")),
                    &conv,
                    &e.extended_jacobi_direct(&t, m).map_err(fail)?,
                )?;
            }
        }
    }
    Ok(())
}

fn criterion4(codes: &[LinearCode]) -> Check {
    for (idx, c) in codes.iter().enumerate() {
        let e = Enumerator::new(c);
        let tag = |s: String| format!("code #{idx}: {s}");
        for t in sets_up_to(c.n(), 3) {
            for r in 0..=c.k() {
                let via = e.higher_jacobi_via_q(&t, r).map_err(fail)?;
                same(
                    &tag(format!("r={r} via Q")),
                    &via,
                    &e.higher_jacobi(&t, r).map_err(fail)?,
                )?;
            }
            for m in 1..=2 {
                let via = e.extended_jacobi_via_q(&t, m).map_err(fail)?;
                same(
                    &tag(format!("m={m} via Q")),
                    &via,
                    &e.extended_jacobi(&t, m).map_err(fail)?,
                )?;
            }
        }
    }
    Ok(())
}

fn criterion5() -> Check {
    for (name, c) in [("[6,3]", ex44()), ("Hamming", hamming74())] {
        let e = Enumerator::new(&c);
        for r in 0..=c.k() {
            for t in 0..=c.n() {
                if !equivalence_holds(&e, r, t).map_err(fail)? {
                    return Err(format!(
                        "{name}: designs and independence disagree at r={r} t={t}"
                    ));
                }
            }
        }
    }
    for (name, c, r, t) in [
        ("[6,3]", ex44(), 1, 1),
        ("[6,3]", ex44(), 2, 1),
        ("Hamming", hamming74(), 1, 2),
    ] {
        let e = Enumerator::new(&c);
        let p = polarization_with(&e, r, t).map_err(|err| format!("{name} r={r} t={t}: {err}"))?;
        for m in subsets_of_size(c.n(), t) {
            let ts = RefSet::from_mask(c.n(), m);
            let tab = JacobiTable::from_poly(ts, TableKind::Higher(r), &p).map_err(fail)?;
            same(
                &format!("{name} polarization r={r}"),
                &tab,
                &e.higher_jacobi(&ts, r).map_err(fail)?,
            )?;
        }
    }
    Ok(())
}

fn criterion6() -> Check {
    for n in 1..=8usize {
        for d in 0..=4.min(n / 2) {
            let dim = harm_basis(n, d).map_err(fail)?.len();
            let want = binomial(n as u64, d as u64)
                - if d > 0 {
                    binomial(n as u64, d as u64 - 1)
                } else {
                    BigInt::from(0)
                };
            if BigInt::from(dim) != want {
                return Err(format!("dim Harm_{d}({n}) = {dim}, expected {want}"));
            }
        }
    }
    for n in 2..=8usize {
        for t in 1..=n / 2 {
            for m in 0..=3.min(t) {
                let p = HahnParams::kernel(n, t, m);
                let one = rat(1, 1);
                if hahn_eval(&p, 0).map_err(fail)? != one {
                    return Err(format!("Q_{m}(0) != 1 for n={n} t={t}"));
                }
                if m == 0 && (0..=t as i64).any(|x| hahn_eval(&p, x).ok() != Some(one.clone())) {
                    return Err(format!("Q_0 is not constant for n={n} t={t}"));
                }
                let (lhs, rhs) = hahn_endpoint(&p).map_err(fail)?;
                if lhs != rhs {
                    return Err(format!(
                        "endpoint value for n={n} t={t} m={m}: {lhs} vs {rhs}"
                    ));
                }
            }
        }
    }
    let mut codes = vec![ex44(), hamming74()];
    let mut rng = ChaCha8Rng::seed_from_u64(SWEEP_SEED + 6);
    codes.push(random_code(&field_new(3, 1).unwrap(), 6, 3, &mut rng).unwrap());
    codes.push(random_code(&field_new(2, 1).unwrap(), 8, 4, &mut rng).unwrap());
    for c in &codes {
        let e = Enumerator::new(c);
        for r in 0..=c.k() {
            for (i, b) in subcode_support_blocks(&e, r).map_err(fail)? {
                for t in 0..=3 {
                    if delsarte_design_check(&b, t).map_err(fail)? != is_t_design(&b, t).is_design {
                        return Err(format!("Delsarte test differs on S_({r},{i}) at t={t}"));
                    }
                }
            }
        }
    }
    for c in &codes[..2] {
        let e = Enumerator::new(c);
        for t in sets_up_to(c.n(), 2) {
            for r in 0..=c.k() {
                let rec = recover_with(&e, r, &t).map_err(fail)?;
                same(
                    &format!("recovery r={r}"),
                    &rec,
                    &e.higher_jacobi(&t, r).map_err(fail)?,
                )?;
            }
        }
    }
    Ok(())
}

fn criterion7() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SWEEP_SEED + 7);
    for p in [2, 3] {
        for k in 0..=5 {
            let c = random_code(&field_new(p, 1).unwrap(), k + 2, k, &mut rng).unwrap();
            for r in 0..=k {
                let found = c.subcodes(r, &Limits::default()).map_err(fail)?.len();
                if BigInt::from(found) != gauss_binom(k as u64, r as u64, p) {
                    return Err(format!("q={p} k={k} r={r}: {found} subcodes"));
                }
            }
        }
    }
    for q in [2, 3, 4] {
        for a in 0..=6 {
            for b in 0..=6 {
                if !qbinom_expansion_check(a, b, q) {
                    return Err(format!("q-binomial expansion fails at a={a} b={b} q={q}"));
                }
            }
        }
        for r in 0..=5 {
            for j in 0..=r {
                for l in 0..=j {
                    if !bracket_identity_check(r, j, l, q) {
                        return Err(format!("bracket identity fails at r={r} j={j} l={l} q={q}"));
                    }
                }
            }
        }
    }
    Ok(())
}

fn criterion8() -> Result<Duration, String> {
    let c = random_code(
        &field_new(2, 1).unwrap(),
        12,
        6,
        &mut ChaCha8Rng::seed_from_u64(12),
    )
    .unwrap();
    let cfg = VerifyConfig {
        max_r: 2,
        max_t: 2,
        ..VerifyConfig::default()
    };
    let start = Instant::now();
    let single = verify_with_jobs(&c, &cfg, 1).map_err(fail)?;
    let elapsed = start.elapsed();
    let threads = std::thread::available_parallelism()
        .map_or(4, |n| n.get())
        .max(2);
    let parallel = verify_with_jobs(&c, &cfg, threads).map_err(fail)?;
    if !single.passed() {
        return Err(format!("suite reports failures:\n{}", single.render()));
    }
    if single.render() != parallel.render() {
        return Err("parallel report differs from the single-threaded one".into());
    }
    if elapsed >= Duration::from_secs(60) {
        return Err(format!("single-threaded run took {elapsed:?}"));
    }
    Ok(elapsed)
}

fn main() {
    let mut unexpected = Vec::new();
    match criterion1() {
        Ok(d) if d.is_empty() => println!("PASS criterion 1: golden [6,3] code"),
        Ok(d) => {
            let only_known = d.len() == 6
                && d.iter()
                    .all(|s| s.contains("r=2 coefficient of w^0z^1x^0y^5: computed 4, printed 6"));
            println!("FAIL criterion 1: golden [6,3] code: {} coefficient(s) differ from the printed values", d.len());
            for s in &d {
                println!("    {s}");
            }
            if only_known {
                println!("    every other part of this criterion holds; the computed 4 is forced by the subcode count (3 + 4 = 7)");
            } else {
                unexpected.push(1);
            }
        }
        Err(why) => {
            println!("FAIL criterion 1: golden [6,3] code: {why}");
            unexpected.push(1);
        }
    }

    let mut report = |n: usize, title: &str, outcome: Check| match outcome {
        Ok(()) => println!("PASS criterion {n}: {title}"),
        Err(why) => {
            println!("FAIL criterion {n}: {title}: {why}");
            unexpected.push(n);
        }
    };

    let codes = sweep();
    report(
        2,
        &format!(
            "MacWilliams sweep over {} seeded codes (seed {SWEEP_SEED})",
            codes.len()
        ),
        criterion2(&codes),
    );
    report(
        3,
        "higher and extended table conversions on the sweep",
        criterion3(&codes),
    );
    report(
        4,
        "shortened-dimension routes on the sweep",
        criterion4(&codes),
    );
    report(5, "designs, independence and polarization", criterion5());
    report(
        6,
        "harmonic spaces, Hahn values, Delsarte test and recovery",
        criterion6(),
    );
    report(7, "subcode counts and q-analog identities", criterion7());
    match criterion8() {
        Ok(t) => report(
            8,
            &format!(
                "[12,6] suite single-threaded in {:.1}s, parallel output identical",
                t.as_secs_f64()
            ),
            Ok(()),
        ),
        Err(why) => report(8, "[12,6] suite performance and determinism", Err(why)),
    }

    if !unexpected.is_empty() {
        eprintln!("unexpected failures in criteria {unexpected:?}");
        std::process::exit(1);
    }
}
