//! Gaussian binomials count subspaces; checked against subcode enumeration.
use jacobiforge::code::{random_code, Limits};
use jacobiforge::gf::field_new;
use jacobiforge::qcomb::{gauss_binom, qbinom_expansion_check, qbracket};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for q in [2, 3, 4] {
        let row: Vec<String> = (0..=5).map(|b| gauss_binom(5, b, q).to_string()).collect();
        println!(
            "q={q}: gauss(5, b) for b=0..5 = {}; [5]_q = {}",
            row.join(", "),
            qbracket(5, q)
        );
    }
    let all = (2..=4).all(|q| (0..=6).all(|a| (0..=6).all(|b| qbinom_expansion_check(a, b, q))));
    println!("q-binomial expansion identity for a, b <= 6: {all}");

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let f3 = field_new(3, 1)?;
    let c = random_code(&f3, 7, 4, &mut rng)?;
    for r in 0..=c.k() {
        let found = c.subcodes(r, &Limits::default())?.len();
        println!(
            "[7,4] ternary code: {found} subcodes of dimension {r} (gauss = {})",
            gauss_binom(4, r as u64, 3)
        );
    }
    Ok(())
}
