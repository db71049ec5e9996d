//! Weight, higher weight, Jacobi and higher Jacobi polynomials of a [6,3]
//! binary code, computed directly and through shortened-code dimensions.
use jacobiforge::code::{LinearCode, RefSet};
use jacobiforge::enumerators::Enumerator;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let c = LinearCode::parse(include_str!("data/ex44.txt"))?;
    let e = Enumerator::new(&c);
    println!("W      = {}", e.weight_enum()?);
    for r in 0..=c.k() {
        println!("W^({r})  = {}", e.higher_weight_enum(r)?);
    }
    let t = RefSet::from_one_based(6, &[1])?;
    println!("J_T    = {}   (T = {t})", e.jacobi(&t)?.to_poly());
    for r in 0..=c.k() {
        let direct = e.higher_jacobi(&t, r)?;
        let via_q = e.higher_jacobi_via_q(&t, r)?;
        println!(
            "J^({r})_T = {}   [via shortened dimensions: {}]",
            direct.to_poly(),
            direct == via_q
        );
    }
    let t2 = RefSet::from_one_based(6, &[1, 3])?;
    println!(
        "J^(1) with T = {t2}: {}",
        e.higher_jacobi(&t2, 1)?.to_poly()
    );
    println!("as JSON: {}", e.higher_jacobi(&t2, 1)?.to_json());
    Ok(())
}
