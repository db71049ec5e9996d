//! The full identity suite on a seeded random [8,4] ternary code.
use jacobiforge::code::random_code;
use jacobiforge::gf::field_new;
use jacobiforge::verify::{verify_all, VerifyConfig};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let seed = 2024;
    let c = random_code(
        &field_new(3, 1)?,
        8,
        4,
        &mut ChaCha8Rng::seed_from_u64(seed),
    )?;
    print!("{}", c.to_text());
    let cfg = VerifyConfig {
        seed,
        t_samples: 12,
        ..VerifyConfig::default()
    };
    let report = verify_all(&c, &cfg)?;
    print!("{}", report.render());
    std::process::exit(i32::from(!report.passed()));
}
