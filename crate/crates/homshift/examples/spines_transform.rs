//! Verified Δ-paths from powers of a cycle to a spine power.

use homshift::cli::corpus::builtin;
use homshift::graph_core::power;
use homshift::transform::{cycle_to_spines, Context};

fn main() -> homshift::error::Result<()> {
    let g = builtin("c4")?;
    let ctx = Context::new(&g)?;
    let c = g.parse_walk("a,b,c,d,a")?;
    for m in [1, 2, 4, 8] {
        let out = cycle_to_spines(&ctx, &power(&c, m)?)?;
        println!(
            "c^{m}: length {} (bound {:.0}) within={}",
            out.manifest.actual_length,
            out.manifest.bound_value,
            out.within_bound()
        );
    }
    Ok(())
}
