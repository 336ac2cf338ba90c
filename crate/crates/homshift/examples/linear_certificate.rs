//! The cover-geodesic / spine-power pairs behind the Θ(n) lower bound on FIG_A.

use homshift::classify::{certificate_distance, linear_certificate};
use homshift::cli::corpus::builtin;
use homshift::covers::{build_square_cover, CoverBudget};

fn main() -> homshift::error::Result<()> {
    let g = builtin("fig_a")?;
    let atlas = build_square_cover(&g, CoverBudget::default());
    for n in 2..=4 {
        let Some(c) = linear_certificate(&atlas, n) else {
            println!("n={n}: no class at distance {}", 2 * n);
            continue;
        };
        let d = certificate_distance(&g, &c, 2_000_000)?;
        println!(
            "n={n}: u={} v={} certified={} d={:?}",
            c.u.display(&g),
            c.v.display(&g),
            c.certified,
            d
        );
    }
    Ok(())
}
