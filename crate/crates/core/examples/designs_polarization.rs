//! Designs held by subcode supports, independence of the reference set, and
//! the higher Jacobi polynomial obtained by polarizing the weight enumerator.
use jacobiforge::code::{LinearCode, RefSet};
use jacobiforge::designs::{
    jacobi_by_polarization, punctured_split, subcode_support_designs, t_independence_check,
};
use jacobiforge::enumerators::higher_jacobi;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let h = LinearCode::parse(include_str!("data/hamming74.txt"))?;
    for r in 0..=2 {
        for (i, v) in subcode_support_designs(&h, r, 2)? {
            let lambda = v.lambda.map_or("-".to_string(), |l| l.to_string());
            println!(
                "Hamming r={r} weight {i}: {}-design {} (lambda {lambda})",
                v.t, v.is_design
            );
        }
        println!(
            "  J^({r}) independent of the 2-set: {}",
            t_independence_check(&h, r, 2)?.independent
        );
    }
    let p = jacobi_by_polarization(&h, 1, 2)?;
    let direct = higher_jacobi(&h, &RefSet::from_one_based(7, &[1, 2])?, 1)?;
    println!(
        "polarized J^(1) = {p}   [matches T={{1,2}}: {}]",
        p == direct.to_poly()
    );

    let c = LinearCode::parse(include_str!("data/ex44.txt"))?;
    for r in 1..=2 {
        println!(
            "[6,3] code, r={r}, |T|=1: {}",
            jacobi_by_polarization(&c, r, 1)?
        );
    }
    match jacobi_by_polarization(&c, 1, 2) {
        Ok(p) => println!("unexpected: {p}"),
        Err(e) => println!("[6,3] code, r=1, |T|=2 refused: {e}"),
    }
    let split = punctured_split(&c, 2, 0)?;
    println!(
        "punctured at coordinate 1: zero side {:?}, one side {:?}",
        split.zero_side, split.one_side
    );
    println!("  reassembled: {}", split.reassemble());
    Ok(())
}
