//! Command-line front end.
//!
//! Exit codes: 0 on success and `EQUAL` verdicts, 1 on `DIFFER` verdicts
//! or when a requested result does not exist for the code (for example a
//! failed design hypothesis), 2 on usage, parse and guard errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::bipoly::BiHomPoly;
use crate::code::{random_code, Limits, LinearCode, RefSet};
use crate::designs::{independence_with, polarization_with, support_designs_with};
use crate::enumerators::{Enumerator, JacobiTable};
use crate::exactmath::Rational;
use crate::gf::field_new;
use crate::harmonic::{
    hahn_eval, harm_basis, harmonic_wenum_with, kernel_fn, recover_with, HahnParams,
};
use crate::transforms::{mw_extended_jacobi, mw_higher_jacobi, mw_higher_weight, MWContext};
use crate::verify::{verify_all, VerifyConfig};
use crate::Error;

#[derive(Parser, Debug)]
#[command(
    name = "jacobiforge",
    version,
    about = "Exact Jacobi-type polynomials of linear codes"
)]
struct Cli {
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Largest number of subcodes of one dimension to enumerate.
    #[arg(long, global = true, default_value_t = Limits::default().max_subcodes)]
    max_subcodes: u64,
    /// Largest number of codewords visited by one enumeration.
    #[arg(long, global = true, default_value_t = Limits::default().max_codewords)]
    max_codewords: u64,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct CodeArg {
    /// Generator-matrix file (`q=.. n=..` header, one row per line).
    #[arg(long)]
    code: PathBuf,
}

#[derive(Args, Debug)]
struct RefArg {
    /// Reference set as 1-based coordinates, e.g. `-T 1,3`. Empty if omitted.
    #[arg(short = 'T', value_delimiter = ',')]
    t_set: Vec<usize>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum HigherRoute {
    Direct,
    ViaQ,
    FromExtended,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ExtendedRoute {
    Conversion,
    Direct,
    ViaQ,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MwKind {
    Hw,
    Hjac,
    Ejac,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Weight enumerator.
    Wenum {
        #[command(flatten)]
        code: CodeArg,
    },
    /// r-th higher weight enumerator.
    Hwenum {
        #[command(flatten)]
        code: CodeArg,
        #[arg(short)]
        r: usize,
    },
    /// Jacobi polynomial with respect to T.
    Jacobi {
        #[command(flatten)]
        code: CodeArg,
        #[command(flatten)]
        t: RefArg,
    },
    /// r-th higher Jacobi polynomial with respect to T.
    Hjacobi {
        #[command(flatten)]
        code: CodeArg,
        #[arg(short)]
        r: usize,
        #[command(flatten)]
        t: RefArg,
        #[arg(long, value_enum, default_value = "direct")]
        route: HigherRoute,
    },
    /// m-th extended Jacobi polynomial with respect to T.
    Ejacobi {
        #[command(flatten)]
        code: CodeArg,
        #[arg(short)]
        m: u32,
        #[command(flatten)]
        t: RefArg,
        #[arg(long, value_enum, default_value = "conversion")]
        route: ExtendedRoute,
    },
    /// Compares a MacWilliams transform with direct dual enumeration.
    MwCheck {
        #[command(flatten)]
        code: CodeArg,
        #[arg(long, value_enum)]
        kind: MwKind,
        #[arg(short, default_value_t = 1)]
        r: usize,
        #[arg(short, default_value_t = 1)]
        m: u32,
        #[command(flatten)]
        t: RefArg,
    },
    /// Design verdicts of subcode supports and the T-independence check.
    DesignCheck {
        #[command(flatten)]
        code: CodeArg,
        #[arg(short)]
        r: usize,
        #[arg(short)]
        t: usize,
    },
    /// Higher Jacobi polynomial from the weight enumerator by polarization.
    Polarize {
        #[command(flatten)]
        code: CodeArg,
        #[arg(short)]
        r: usize,
        #[arg(short)]
        t: usize,
    },
    /// Harmonic higher weight enumerator.
    HarmWenum {
        #[command(flatten)]
        code: CodeArg,
        #[arg(short)]
        r: usize,
        /// Degree of the harmonic function.
        #[arg(short)]
        d: usize,
        /// Index into the harmonic basis (ignored when -T is given).
        #[arg(long, default_value_t = 0)]
        basis: usize,
        /// Use the kernel function of this reference set instead.
        #[command(flatten)]
        t: RefArg,
    },
    /// Evaluates the Hahn polynomial Q_m(x; alpha, beta, N).
    Hahn {
        #[arg(short)]
        m: usize,
        #[arg(short, allow_negative_numbers = true)]
        x: i64,
        #[arg(long, allow_negative_numbers = true)]
        alpha: Rational,
        #[arg(long, allow_negative_numbers = true)]
        beta: Rational,
        #[arg(short = 'N')]
        big_n: u64,
    },
    /// Recovers the higher Jacobi polynomial from harmonic data and
    /// compares it with direct enumeration.
    Recover {
        #[command(flatten)]
        code: CodeArg,
        #[arg(short)]
        r: usize,
        #[command(flatten)]
        t: RefArg,
    },
    /// Runs the identity suite on one code.
    Verify {
        /// Generator-matrix file; alternatively use --random.
        #[arg(long, conflicts_with = "random")]
        code: Option<PathBuf>,
        /// Seeded random code `q,n,k` over a prime field.
        #[arg(long, value_delimiter = ',', value_name = "Q,N,K")]
        random: Option<Vec<usize>>,
        /// Check every subcode dimension instead of r <= 2.
        #[arg(long)]
        all: bool,
        #[arg(short)]
        r: Option<usize>,
        /// Largest reference-set size.
        #[arg(short, default_value_t = 2)]
        t: usize,
        /// Largest extension degree.
        #[arg(short, default_value_t = 2)]
        m: u32,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Reference sets per size; larger families are sampled.
        #[arg(long, default_value_t = 120)]
        samples: usize,
    },
}

/// Failure that terminates a command with an exit code.
struct Exit(i32, String);

impl From<Error> for Exit {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_)
            | Error::InvalidArgument(_)
            | Error::TooLarge(_)
            | Error::NotPrime(_)
            | Error::FieldMismatch { .. }
            | Error::DimensionMismatch(_)
            | Error::UnsupportedBaseField { .. } => 2,
            _ => 1,
        };
        Exit(code, e.to_string())
    }
}

fn usage(msg: impl Into<String>) -> Exit {
    Exit(2, msg.into())
}

type CmdResult = std::result::Result<i32, Exit>;

fn load(path: &PathBuf) -> std::result::Result<LinearCode, Exit> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(LinearCode::parse(&text)?)
}

fn check_r(c: &LinearCode, r: usize) -> std::result::Result<(), Exit> {
    if r > c.k() {
        return Err(usage(format!("r exceeds dimension k={}", c.k())));
    }
    Ok(())
}

fn check_m(m: u32) -> std::result::Result<(), Exit> {
    if m == 0 {
        return Err(usage("m must be at least 1"));
    }
    Ok(())
}

fn ref_set(c: &LinearCode, t: &RefArg) -> std::result::Result<RefSet, Exit> {
    let mut seen = t.t_set.clone();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != t.t_set.len() {
        return Err(usage("T lists a coordinate twice"));
    }
    RefSet::from_one_based(c.n(), &t.t_set).map_err(|e| usage(format!("T: {e}")))
}

struct Ctx {
    json: bool,
    limits: Limits,
    out: Vec<u8>,
}

impl Ctx {
    fn line(&mut self, s: impl std::fmt::Display) {
        let _ = writeln!(self.out, "{s}");
    }

    fn table(&mut self, t: &JacobiTable) {
        if self.json {
            self.line(t.to_json());
        } else {
            self.line(t.to_poly());
        }
    }

    fn poly(&mut self, p: &BiHomPoly) {
        if self.json {
            self.line(p.to_json());
        } else {
            self.line(p);
        }
    }

    fn verdict(&mut self, lhs: String, rhs: String, equal: bool) -> i32 {
        let word = if equal { "EQUAL" } else { "DIFFER" };
        if self.json {
            self.line(json!({ "transform": lhs, "direct": rhs, "verdict": word }));
        } else {
            self.line(format!("transform: {lhs}\ndirect:    {rhs}\n{word}"));
        }
        i32::from(!equal)
    }
}

fn dispatch(cmd: Command, cx: &mut Ctx) -> CmdResult {
    match cmd {
        Command::Wenum { code } => {
            let c = load(&code.code)?;
            let w = Enumerator::with_limits(&c, cx.limits).weight_enum()?;
            cx.poly(&w);
        }
        Command::Hwenum { code, r } => {
            let c = load(&code.code)?;
            check_r(&c, r)?;
            let w = Enumerator::with_limits(&c, cx.limits).higher_weight_enum(r)?;
            cx.poly(&w);
        }
        Command::Jacobi { code, t } => {
            let c = load(&code.code)?;
            let t = ref_set(&c, &t)?;
            let j = Enumerator::with_limits(&c, cx.limits).jacobi(&t)?;
            cx.table(&j);
        }
        Command::Hjacobi { code, r, t, route } => {
            let c = load(&code.code)?;
            check_r(&c, r)?;
            let t = ref_set(&c, &t)?;
            let e = Enumerator::with_limits(&c, cx.limits);
            let j = match route {
                HigherRoute::Direct => e.higher_jacobi(&t, r)?,
                HigherRoute::ViaQ => e.higher_jacobi_via_q(&t, r)?,
                HigherRoute::FromExtended => e.higher_from_extended(&t, r)?,
            };
            cx.table(&j);
        }
        Command::Ejacobi { code, m, t, route } => {
            let c = load(&code.code)?;
            check_m(m)?;
            let t = ref_set(&c, &t)?;
            let e = Enumerator::with_limits(&c, cx.limits);
            let j = match route {
                ExtendedRoute::Conversion => e.extended_jacobi(&t, m)?,
                ExtendedRoute::Direct => e.extended_jacobi_direct(&t, m)?,
                ExtendedRoute::ViaQ => e.extended_jacobi_via_q(&t, m)?,
            };
            cx.table(&j);
        }
        Command::MwCheck {
            code,
            kind,
            r,
            m,
            t,
        } => {
            let c = load(&code.code)?;
            let t = ref_set(&c, &t)?;
            let dual = c.dual();
            let (e, ed) = (
                Enumerator::with_limits(&c, cx.limits),
                Enumerator::with_limits(&dual, cx.limits),
            );
            let ctx = MWContext::for_code(&c, &t);
            let code = match kind {
                MwKind::Hw | MwKind::Hjac => {
                    check_r(&c, r)?;
                    if r > dual.k() {
                        return Err(usage(format!("r exceeds dual dimension n-k={}", dual.k())));
                    }
                    if matches!(kind, MwKind::Hw) {
                        let w = (0..=r)
                            .map(|l| e.higher_weight_enum(l))
                            .collect::<crate::Result<Vec<_>>>()?;
                        let lhs = mw_higher_weight(&w, &ctx)?;
                        let rhs = ed.higher_weight_enum(r)?;
                        cx.verdict(lhs.to_string(), rhs.to_string(), lhs == rhs)
                    } else {
                        let j = (0..=r)
                            .map(|l| e.higher_jacobi(&t, l))
                            .collect::<crate::Result<Vec<_>>>()?;
                        let lhs = mw_higher_jacobi(&j, &ctx)?;
                        let rhs = ed.higher_jacobi(&t, r)?;
                        cx.verdict(
                            lhs.to_poly().to_string(),
                            rhs.to_poly().to_string(),
                            lhs == rhs,
                        )
                    }
                }
                MwKind::Ejac => {
                    check_m(m)?;
                    let lhs = mw_extended_jacobi(&e.extended_jacobi(&t, m)?, &ctx)?;
                    let rhs = ed.extended_jacobi(&t, m)?;
                    cx.verdict(
                        lhs.to_poly().to_string(),
                        rhs.to_poly().to_string(),
                        lhs == rhs,
                    )
                }
            };
            return Ok(code);
        }
        Command::DesignCheck { code, r, t } => {
            let c = load(&code.code)?;
            check_r(&c, r)?;
            if t > c.n() {
                return Err(usage(format!("t exceeds length n={}", c.n())));
            }
            let e = Enumerator::with_limits(&c, cx.limits);
            let verdicts = support_designs_with(&e, r, t)?;
            let ind = independence_with(&e, r, t)?;
            let designs = verdicts.values().all(|v| v.is_design);
            let equal = designs == ind.independent;
            if cx.json {
                let per_weight: Vec<_> = verdicts
                    .iter()
                    .map(|(i, v)| {
                        json!({
                            "weight": i,
                            "strength": v.t,
                            "design": v.is_design,
                            "lambda": v.lambda.as_ref().map(|l| l.to_string()),
                        })
                    })
                    .collect();
                cx.line(json!({
                    "r": r,
                    "t": t,
                    "weights": per_weight,
                    "independent": ind.independent,
                    "verdict": if equal { "EQUAL" } else { "DIFFER" },
                }));
            } else {
                for (i, v) in &verdicts {
                    match (&v.lambda, v.is_design) {
                        (Some(l), true) => {
                            cx.line(format!("weight {i}: {}-design, lambda = {l}", v.t))
                        }
                        _ => cx.line(format!("weight {i}: not a {}-design", v.t)),
                    }
                }
                cx.line(format!(
                    "designs at every weight: {}",
                    if designs { "yes" } else { "no" }
                ));
                cx.line(format!(
                    "independent of the {t}-set: {}",
                    if ind.independent { "yes" } else { "no" }
                ));
                if let Some((a, b)) = &ind.witness {
                    cx.line(format!("witness: T={a} and T={b} give different tables"));
                }
                cx.line(if equal { "EQUAL" } else { "DIFFER" });
            }
            return Ok(i32::from(!equal));
        }
        Command::Polarize { code, r, t } => {
            let c = load(&code.code)?;
            check_r(&c, r)?;
            if t > c.n() {
                return Err(usage(format!("t exceeds length n={}", c.n())));
            }
            let p = polarization_with(&Enumerator::with_limits(&c, cx.limits), r, t)?;
            cx.poly(&p);
        }
        Command::HarmWenum {
            code,
            r,
            d,
            basis,
            t,
        } => {
            let c = load(&code.code)?;
            check_r(&c, r)?;
            if 2 * d > c.n() {
                return Err(usage(format!(
                    "harmonic degree d={d} needs 2d <= n={}",
                    c.n()
                )));
            }
            let f = if t.t_set.is_empty() {
                let mut b = harm_basis(c.n(), d)?;
                if basis >= b.len() {
                    return Err(usage(format!(
                        "basis index {basis} out of range 0..{}",
                        b.len()
                    )));
                }
                b.swap_remove(basis)
            } else {
                kernel_fn(&ref_set(&c, &t)?, d)?
            };
            let w = harmonic_wenum_with(&Enumerator::with_limits(&c, cx.limits), &f, r)?;
            cx.poly(&w);
        }
        Command::Hahn {
            m,
            x,
            alpha,
            beta,
            big_n,
        } => {
            let v = hahn_eval(
                &HahnParams {
                    alpha,
                    beta,
                    n: big_n,
                    m,
                },
                x,
            )?;
            if cx.json {
                cx.line(json!({ "value": v.to_string() }));
            } else {
                cx.line(v);
            }
        }
        Command::Recover { code, r, t } => {
            let c = load(&code.code)?;
            check_r(&c, r)?;
            let t = ref_set(&c, &t)?;
            let e = Enumerator::with_limits(&c, cx.limits);
            let rec = recover_with(&e, r, &t)?;
            let direct = e.higher_jacobi(&t, r)?;
            return Ok(cx.verdict(
                rec.to_poly().to_string(),
                direct.to_poly().to_string(),
                rec == direct,
            ));
        }
        Command::Verify {
            code,
            random,
            all,
            r,
            t,
            m,
            seed,
            samples,
        } => {
            let c = match (code, random) {
                (Some(path), _) => load(&path)?,
                (None, Some(v)) => {
                    let [q, n, k] = v[..] else {
                        return Err(usage("--random expects q,n,k"));
                    };
                    let field = field_new(q as u64, 1)?;
                    random_code(&field, n, k, &mut ChaCha8Rng::seed_from_u64(seed))?
                }
                (None, None) => return Err(usage("verify needs --code or --random")),
            };
            let max_r = match (r, all) {
                (Some(r), _) => {
                    check_r(&c, r)?;
                    r
                }
                (None, true) => c.k(),
                (None, false) => 2,
            };
            let cfg = VerifyConfig {
                max_r,
                max_t: t,
                max_m: m,
                t_samples: samples,
                seed,
                limits: cx.limits,
                ..VerifyConfig::default()
            };
            let report = verify_all(&c, &cfg)?;
            if cx.json {
                let lines: Vec<_> = report.lines.iter().map(|l| l.to_string()).collect();
                cx.line(
                    json!({ "header": report.header, "lines": lines, "passed": report.passed() }),
                );
            } else {
                let _ = write!(cx.out, "{}", report.render());
            }
            return Ok(i32::from(!report.passed()));
        }
    }
    Ok(0)
}

/// Runs the command line `args` (including the program name), writing
/// results to `out` and diagnostics to `err`; returns the exit code.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    let limits = Limits {
        max_codewords: cli.max_codewords,
        max_subcodes: cli.max_subcodes,
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cli.jobs {
        if j == 0 {
            let _ = writeln!(err, "error: --jobs must be at least 1");
            return 2;
        }
        builder = builder.num_threads(j);
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start worker threads: {e}");
            return 2;
        }
    };
    let mut cx = Ctx {
        json: cli.json,
        limits,
        out: Vec::new(),
    };
    let result = pool.install(|| dispatch(cli.command, &mut cx));
    let _ = out.write_all(&cx.out);
    match result {
        Ok(code) => code,
        Err(Exit(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

/// Runs against the process's standard streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let (stdout, stderr) = (std::io::stdout(), std::io::stderr());
    let (mut out, mut err) = (stdout.lock(), stderr.lock());
    run_with(args, &mut out, &mut err)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn data_file(name: &str, body: &str) -> PathBuf {
        let dir = std::env::temp_dir().join(format!("jacobiforge-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let p = dir.join(name);
        std::fs::write(&p, body).unwrap();
        p
    }

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut argv = vec!["jacobiforge"];
        argv.extend_from_slice(args);
        let code = run_with(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn hjacobi_and_validation() {
        let p = data_file("ex44.txt", "q=2 n=6\n110000\n001100\n000011\n");
        let p = p.to_str().unwrap();
        let (code, out, _) = call(&["hjacobi", "--code", p, "-r", "2", "-T", "1"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "w*x*y^4 + 2*z*x^2*y^3 + 4*z*y^5");
        let (code, _, err) = call(&["hjacobi", "--code", p, "-r", "5", "-T", "1"]);
        assert_eq!(code, 2);
        assert!(err.contains("r exceeds dimension k=3"), "{err}");
        let (code, _, err) = call(&["jacobi", "--code", p, "-T", "7"]);
        assert_eq!(code, 2, "{err}");
        let (code, _, _) = call(&["frobnicate"]);
        assert_eq!(code, 2);
        let (code, out, _) = call(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("hjacobi"));
    }

    #[test]
    fn verdict_commands() {
        let p = data_file("ham.txt", "q=2 n=7\n1000110\n0100101\n0010011\n0001111\n");
        let p = p.to_str().unwrap();
        for kind in ["hw", "hjac", "ejac"] {
            let (code, out, err) = call(&[
                "mw-check", "--code", p, "--kind", kind, "-r", "2", "-m", "2", "-T", "1,2",
            ]);
            assert_eq!(code, 0, "{out}{err}");
            assert!(out.ends_with("EQUAL\n"));
        }
        let (code, out, _) = call(&["design-check", "--code", p, "-r", "1", "-t", "2"]);
        assert_eq!(code, 0);
        assert!(out.contains("weight 3: 2-design, lambda = 1"), "{out}");
        let (code, out, _) = call(&["recover", "--code", p, "-r", "1", "-T", "3"]);
        assert_eq!(code, 0, "{out}");
        let (code, out, _) = call(&["verify", "--code", p, "--all", "--jobs", "2"]);
        assert_eq!(code, 0, "{out}");
        assert!(!out.contains("FAIL"));
    }

    #[test]
    fn hahn_and_json() {
        let (code, out, _) = call(&[
            "hahn", "-m", "1", "-x", "0", "--alpha", "-6", "--beta", "-2", "-N", "2",
        ]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "1");
        let p = data_file("ex44j.txt", "q=2 n=6\n110000\n001100\n000011\n");
        let (code, out, _) = call(&[
            "--json",
            "jacobi",
            "--code",
            p.to_str().unwrap(),
            "-T",
            "1,2",
        ]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        let t = JacobiTable::from_json(&v).unwrap();
        let c = LinearCode::parse("q=2 n=6\n110000\n001100\n000011").unwrap();
        assert_eq!(
            t,
            crate::enumerators::jacobi(&c, &RefSet::new(6, &[0, 1]).unwrap()).unwrap()
        );
    }
}
