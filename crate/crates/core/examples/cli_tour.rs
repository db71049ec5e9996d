//! Drives the command-line interface in-process.
use jacobiforge::cli::run_with;

fn main() {
    let code = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/ex44.txt");
    let commands: &[&[&str]] = &[
        &["wenum", "--code", code],
        &["hjacobi", "--code", code, "-r", "2", "-T", "1"],
        &["--json", "hjacobi", "--code", code, "-r", "1", "-T", "1,3"],
        &[
            "mw-check", "--code", code, "--kind", "hjac", "-r", "2", "-T", "2",
        ],
        &["design-check", "--code", code, "-r", "1", "-t", "1"],
        &["polarize", "--code", code, "-r", "2", "-t", "1"],
        &[
            "hahn", "-m", "2", "-x", "1", "--alpha", "-7", "--beta", "-3", "-N", "3",
        ],
        &["hjacobi", "--code", code, "-r", "5", "-T", "1"],
    ];
    for args in commands {
        let argv = std::iter::once("jacobiforge").chain(args.iter().copied());
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let status = run_with(argv, &mut out, &mut err);
        println!("$ jacobiforge {}", args.join(" ").replace(code, "ex44.txt"));
        print!(
            "{}{}",
            String::from_utf8_lossy(&out),
            String::from_utf8_lossy(&err)
        );
        println!("[exit {status}]");
    }
}
