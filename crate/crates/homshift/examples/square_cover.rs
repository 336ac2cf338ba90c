use homshift::cli::corpus::builtin;
use homshift::covers::{build_square_cover, CoverBudget};

fn main() -> homshift::error::Result<()> {
    for name in ["c4", "fig_a", "fig_b", "fig_c", "fig_d"] {
        let g = builtin(name)?;
        let atlas = build_square_cover(&g, CoverBudget::default());
        println!(
            "{name:<6} {:?} classes={} max_distance={}",
            atlas.status,
            atlas.class_count(),
            atlas.max_distance()
        );
    }
    Ok(())
}
