//! Hahn polynomials: special values and the kernel h_{d,t}(l, i).
use jacobiforge::exactmath::rat;
use jacobiforge::harmonic::{h_dt, hahn_endpoint, hahn_eval, HahnParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = HahnParams {
        alpha: rat(1, 2),
        beta: rat(3, 1),
        n: 6,
        m: 2,
    };
    let values: Vec<String> = (0..6)
        .map(|x| hahn_eval(&p, x).map(|v| v.to_string()))
        .collect::<Result<_, _>>()?;
    println!("Q_2(x; 1/2, 3, 6) for x = 0..5: {}", values.join(", "));
    let (lhs, rhs) = hahn_endpoint(&p)?;
    println!("endpoint value {lhs} = {rhs}");
    for (n, t, d) in [(6, 1, 1), (8, 2, 1), (8, 2, 2)] {
        let k = HahnParams::kernel(n, t, d);
        let q: Vec<String> = (0..=t as i64)
            .map(|x| hahn_eval(&k, x).map(|v| v.to_string()))
            .collect::<Result<_, _>>()?;
        println!("Q_{d}^{t} on n={n}: [{}]", q.join(", "));
        for l in 0..=n {
            let row: Vec<String> = (l.saturating_sub(n - t)..=l.min(t))
                .map(|i| h_dt(n, t, d, l, i).map(|v| v.to_string()))
                .collect::<Result<_, _>>()?;
            println!("  h(l={l}, i) = [{}]", row.join(", "));
        }
    }
    Ok(())
}
