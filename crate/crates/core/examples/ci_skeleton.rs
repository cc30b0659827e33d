//! Links of skeletons of complete fans: the tropicalization of a general
//! complete intersection of codimension c in a smooth projective toric
//! variety.

use troplink::complex::{order_complex, reduced_betti};
use troplink::fan::standard::{product_of_projective_spaces, projective_space};
use troplink::generators::ci_skeleton_link;

fn main() -> troplink::Result<()> {
    let fans = [
        ("P2", projective_space(2)),
        ("P3", projective_space(3)),
        ("P4", projective_space(4)),
        ("P1xP1", product_of_projective_spaces(1, 1)),
        ("P1xP2", product_of_projective_spaces(1, 2)),
    ];
    for (name, fan) in &fans {
        let r = fan.ambient_rank();
        for c in 1..r {
            let betti = reduced_betti(&order_complex(&ci_skeleton_link(fan, c)?))?;
            println!("{name:<6} c = {c}: reduced Betti {:?}", betti.betti);
        }
    }
    Ok(())
}
