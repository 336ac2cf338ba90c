use homshift::classify::{check_mu_claim, mu_c};
use homshift::cli::corpus::{builtin, ken_exterior};
use homshift::graph_core::power;

fn main() -> homshift::error::Result<()> {
    let g = builtin("ken")?;
    let hex = ken_exterior(&g)?;
    println!("exterior {}", hex.display(&g));
    println!("mu_c(c^3) = {}", mu_c(&power(&hex, 3)?.seq, &hex.seq));
    for n in [4, 5] {
        let c = check_mu_claim(n)?;
        println!(
            "n={n}: holds={} neighbours={} forms={:?}",
            c.holds, c.neighbors, c.forms
        );
    }
    Ok(())
}
