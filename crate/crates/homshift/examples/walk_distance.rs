//! Δ distance between two walks on C4, with the witness path.

use homshift::cli::corpus::builtin;
use homshift::walkspace::{delta_diameter, delta_search};

fn main() -> homshift::error::Result<()> {
    let g = builtin("c4")?;
    let p = g.parse_walk("a,b,c,d,a")?;
    let q = g.parse_walk("a,b,a,b,a")?;
    let (d, path) = delta_search(&g, &p, &q, 100_000)?;
    println!("d({}, {}) = {:?}", p.display(&g), q.display(&g), d);
    if let Some(path) = path {
        print!("{}", path.to_text(&g));
    }
    for n in 1..=4 {
        let r = delta_diameter(&g, n, 100_000);
        println!("diam(Δ^{n}) = {} ({:?})", r.value, r.exactness);
    }
    Ok(())
}
