//! Subcode supports S_{r,i} and generalized Hamming weights of a [6,3] code.
use jacobiforge::code::{mask_members, Limits, LinearCode};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let c = LinearCode::parse(include_str!("data/ex44.txt"))?;
    let limits = Limits::default();
    for r in 1..=c.k() {
        let profile = c.subcode_profile(r, &limits)?;
        let dist = profile.weight_distribution();
        let min_weight = dist.iter().position(|&a| a > 0).unwrap_or(0);
        println!("r={r}: support weight distribution {dist:?}, generalized Hamming weight d_{r} = {min_weight}");
        for (i, &count) in dist.iter().enumerate().filter(|(_, &a)| a > 0) {
            let blocks: Vec<String> = profile
                .blocks_of_weight(i)
                .into_iter()
                .map(|m| {
                    let pts: Vec<String> = mask_members(m)
                        .iter()
                        .map(|c| (c + 1).to_string())
                        .collect();
                    format!("{{{}}}", pts.join(","))
                })
                .collect();
            println!("  S_({r},{i}) [{count}]: {}", blocks.join(" "));
        }
    }
    Ok(())
}
