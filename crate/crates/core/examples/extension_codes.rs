//! Extended Jacobi polynomials (codes over GF(q^m) spanned by C) by three
//! routes, and higher Jacobi polynomials recovered from them.
use jacobiforge::code::{LinearCode, RefSet};
use jacobiforge::enumerators::{extension_mass, Enumerator};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let c = LinearCode::parse(include_str!("data/hamming74.txt"))?;
    let e = Enumerator::new(&c);
    let t = RefSet::from_one_based(7, &[1, 2])?;
    for m in 1..=3 {
        let conv = e.extended_jacobi(&t, m)?;
        let direct = e.extended_jacobi_direct(&t, m)?;
        let via_q = e.extended_jacobi_via_q(&t, m)?;
        let (lhs, rhs) = extension_mass(c.k(), m, c.q());
        println!("m={m}: {}", conv.to_poly());
        println!(
            "     routes agree: {}; mass {lhs} = {rhs}",
            conv == direct && conv == via_q
        );
    }
    for r in 1..=c.k() {
        let back = e.higher_from_extended(&t, r)?;
        println!(
            "J^({r}) from extended tables matches direct: {}",
            back == e.higher_jacobi(&t, r)?
        );
    }

    let gf4 = LinearCode::parse(include_str!("data/gf4_code.txt"))?;
    let e4 = Enumerator::new(&gf4);
    let t = RefSet::from_one_based(4, &[1])?;
    println!("GF(4) code, m=2: {}", e4.extended_jacobi(&t, 2)?.to_poly());
    println!(
        "  agrees with the shortened-dimension route: {}",
        e4.extended_jacobi(&t, 2)? == e4.extended_jacobi_via_q(&t, 2)?
    );
    Ok(())
}
