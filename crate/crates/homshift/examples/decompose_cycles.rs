//! Square decompositions, λ_G and a cactus decomposition on FIG_B.

use homshift::cli::corpus::builtin;
use homshift::cycles::{cactus_decompose, is_square_decomposable, lambda_bound, DecompBudget};

fn main() -> homshift::error::Result<()> {
    let g = builtin("fig_b")?;
    let r = is_square_decomposable(&g, DecompBudget::default())?;
    println!("verdict {:?}", r.verdict);
    for (c, o) in &r.per_cycle {
        println!("  {:<24} {:?}", c.display(&g), o);
    }
    let lam = lambda_bound(&g, DecompBudget::default())?;
    println!("lambda {}", lam.lambda);

    let c = r.per_cycle[0].0.clone();
    let twice = c.compose(&c)?;
    let forest = cactus_decompose(&twice)?;
    println!(
        "cactus of {}: {} trees, depth {}",
        twice.display(&g),
        forest.trees.len(),
        forest.depth()
    );
    Ok(())
}
