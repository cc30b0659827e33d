//! The link of the space of phylogenetic trees: `cargo run --example
//! tree_space -- 6`.

use troplink::complex::reduced_betti;
use troplink::generators::{all_splits, tree_space_link};

fn main() -> troplink::Result<()> {
    let n: usize = std::env::args().nth(1).map_or(5, |s| s.parse().expect("leaf count"));
    let splits = all_splits(n)?;
    let link = tree_space_link(n)?;
    println!("{} splits, e.g. {}", splits.len(), splits[0]);
    println!("face counts {:?}", link.f_vector());
    let betti = reduced_betti(&link)?;
    println!("reduced Betti numbers {:?}", betti.betti);
    println!(
        "Euler characteristic: {} from faces, {} from homology",
        link.reduced_euler_characteristic(),
        betti.euler_characteristic()
    );
    Ok(())
}
