//! Harmonic functions, harmonic higher weight enumerators, and recovery of
//! the higher Jacobi coefficients from them.
use jacobiforge::code::{LinearCode, RefSet};
use jacobiforge::designs::BlockMultiset;
use jacobiforge::enumerators::higher_jacobi;
use jacobiforge::enumerators::Enumerator;
use jacobiforge::harmonic::{
    delsarte_design_check, harm_basis, harmonic_higher_wenum, kernel_fn, recover_jacobi,
    recovery_systems,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for d in 0..=3 {
        println!("dim Harm_{d}(6) = {}", harm_basis(6, d)?.len());
    }
    let fano = BlockMultiset::from_one_based(
        7,
        &[
            &[1, 2, 4],
            &[2, 3, 5],
            &[3, 4, 6],
            &[4, 5, 7],
            &[5, 6, 1],
            &[6, 7, 2],
            &[7, 1, 3],
        ],
    )?;
    println!(
        "Fano plane: harmonic 2-design test {}, 3-design test {}",
        delsarte_design_check(&fano, 2)?,
        delsarte_design_check(&fano, 3)?
    );

    let c = LinearCode::parse(include_str!("data/ex44.txt"))?;
    let t = RefSet::from_one_based(6, &[1])?;
    let h = kernel_fn(&t, 1)?;
    println!(
        "harmonic W^(1) for the kernel of T={t}: {}",
        harmonic_higher_wenum(&c, &h, 1)?
    );
    for sys in recovery_systems(&Enumerator::new(&c), 1, &t)?
        .iter()
        .filter(|s| s.l == 2)
    {
        println!(
            "weight {} system, unknowns n_(2,i) for i in {:?}, right-hand side {:?}",
            sys.l,
            sys.unknowns,
            sys.rhs.iter().map(|v| v.to_string()).collect::<Vec<_>>()
        );
    }
    for r in 0..=c.k() {
        let rec = recover_jacobi(&c, r, &t)?;
        println!(
            "recovered J^({r}) = {}   [direct: {}]",
            rec.to_poly(),
            rec == higher_jacobi(&c, &t, r)?
        );
    }
    Ok(())
}
