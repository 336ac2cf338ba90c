use homshift::cli::corpus::builtin;
use homshift::gluing::{glue, is_locally_admissible, random_block};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> homshift::error::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for name in ["k3", "c4", "fig_b"] {
        let g = builtin(name)?;
        let a = random_block(&g, 3, (0, 0), &mut rng)?;
        let b = random_block(&g, 3, (0, 0), &mut rng)?;
        let r = glue(&g, &a, &b, (0, 0), (6, 0), 1_000_000)?;
        println!(
            "{name}: admissible={} shift={:?} phase={}",
            is_locally_admissible(&g, &r.window),
            r.shift,
            r.phase
        );
        print!("{}", r.window.to_text(&g));
    }
    Ok(())
}
