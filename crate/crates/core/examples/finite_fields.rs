//! Arithmetic in GF(4) and GF(9): tables, inverses and a primitive element.
use jacobiforge::gf::{field_elements, field_new};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (p, e) in [(2, 2), (3, 2)] {
        let f = field_new(p, e)?;
        println!(
            "GF({}) with modulus coefficients {:?} (constant term first)",
            f.q(),
            f.modulus()
        );
        for a in 0..f.q() {
            let row: Vec<String> = (0..f.q()).map(|b| f.mul(a, b).to_string()).collect();
            println!("  {a} * _ = [{}]", row.join(" "));
        }
        let g = f.generator().expect("multiplicative group is cyclic");
        println!("  primitive element {g}, order {:?}", f.order_of(g));
        let elems = field_elements(&f);
        let inverses: Vec<String> = elems[1..]
            .iter()
            .map(|x| format!("{:?}^-1={:?}", x, x.inv().expect("nonzero")))
            .collect();
        println!("  {}", inverses.join(", "));
    }
    Ok(())
}
