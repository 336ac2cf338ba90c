//! Gap classification of the small built-ins.

use homshift::classify::{classify, ClassifyBudget};
use homshift::cli::corpus::builtin;

fn main() -> homshift::error::Result<()> {
    let budget = ClassifyBudget {
        n_max: 4,
        ..ClassifyBudget::default()
    };
    for name in ["k2", "p3", "k3", "c4", "fig_a", "fig_b", "fig_c", "fig_d"] {
        let r = classify(&builtin(name)?, name, budget)?;
        let profile: Vec<usize> = r.profile.iter().map(|p| p.value).collect();
        println!(
            "{name:<6} {:<24} phase {} profile {:?}",
            r.verdict.to_string(),
            r.phase,
            profile
        );
    }
    Ok(())
}
