//! Exact rational linear algebra: rank, nullspace and a full-column-rank
//! solve.
use jacobiforge::exactmath::{rat, solve_full_column_rank, RatMatrix};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a = RatMatrix::from_rows(vec![
        vec![rat(1, 1), rat(1, 1)],
        vec![rat(-2, 5), rat(4, 5)],
        vec![rat(1, 3), rat(1, 3)],
    ])?;
    println!("rank {}", a.rank());
    let x = solve_full_column_rank(&a, &[rat(3, 1), rat(0, 1), rat(1, 1)])?;
    println!("solution [{}, {}]", x[0], x[1]);
    let inclusion = RatMatrix::from_rows(vec![
        vec![rat(1, 1), rat(1, 1), rat(0, 1)],
        vec![rat(1, 1), rat(0, 1), rat(1, 1)],
    ])?;
    for v in inclusion.nullspace() {
        println!(
            "nullspace vector {:?}",
            v.iter().map(|c| c.to_string()).collect::<Vec<_>>()
        );
    }
    Ok(())
}
