//! Reduced homology of the link of the origin of a fan.
//!
//! `cargo run --example link_of_fan -- path/to/fan.json` or, with no
//! argument, the fan of the projective plane.

use troplink::cli::{poset_betti, LinkMethod};
use troplink::fan::standard::projective_space;
use troplink::fan::Fan;

fn main() -> anyhow::Result<()> {
    let fan = match std::env::args().nth(1) {
        Some(path) => Fan::from_json_str(&std::fs::read_to_string(path)?)?.fan,
        None => projective_space(2),
    };
    let link = fan.link_poset()?;
    let (betti, checks, _) = poset_betti(&link, LinkMethod::Auto)?;
    println!("{} rays, {} cones, link has {} cells", fan.rays().len(), fan.cones().len(), link.len());
    println!("reduced Betti numbers {:?}, top concentrated: {}", betti.betti, betti.top_concentrated());
    for (name, expected, got, pass) in checks {
        println!("{name}: {expected} vs {got} ({})", if pass { "ok" } else { "MISMATCH" });
    }
    Ok(())
}
