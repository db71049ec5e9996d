//! The three MacWilliams-type identities, checked against direct
//! enumeration of the dual code.
use jacobiforge::code::{LinearCode, RefSet};
use jacobiforge::enumerators::Enumerator;
use jacobiforge::transforms::{mw_extended_jacobi, mw_higher_jacobi, mw_higher_weight, MWContext};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let c = LinearCode::parse(include_str!("data/hamming74.txt"))?;
    let dual = c.dual();
    let (e, ed) = (Enumerator::new(&c), Enumerator::new(&dual));
    let t = RefSet::from_one_based(7, &[3, 5])?;
    let ctx = MWContext::for_code(&c, &t);
    for r in 0..=c.k().min(dual.k()) {
        let w = (0..=r)
            .map(|l| e.higher_weight_enum(l))
            .collect::<Result<Vec<_>, _>>()?;
        let image = mw_higher_weight(&w, &ctx)?;
        println!(
            "dual W^({r}) = {image}   [direct: {}]",
            image == ed.higher_weight_enum(r)?
        );
        let j = (0..=r)
            .map(|l| e.higher_jacobi(&t, l))
            .collect::<Result<Vec<_>, _>>()?;
        let image = mw_higher_jacobi(&j, &ctx)?;
        println!(
            "dual J^({r}) = {}   [direct: {}]",
            image.to_poly(),
            image == ed.higher_jacobi(&t, r)?
        );
    }
    for m in 1..=2 {
        let image = mw_extended_jacobi(&e.extended_jacobi(&t, m)?, &ctx)?;
        println!(
            "dual extended m={m}: {}   [direct: {}]",
            image.to_poly(),
            image == ed.extended_jacobi(&t, m)?
        );
    }
    Ok(())
}
