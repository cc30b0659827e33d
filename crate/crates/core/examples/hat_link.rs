//! Duplicating top cells of a link: each extra copy of a top cell adds one
//! to the top Betti number and leaves the rest alone.

use std::collections::BTreeMap;

use troplink::complex::{order_complex, reduced_betti};
use troplink::fan::standard::projective_space;
use troplink::strata::{hat_link, hat_link_of_subdivision, CellMultiplicity};

fn main() -> troplink::Result<()> {
    let link = projective_space(3).link_poset()?;
    println!("link of P3: reduced Betti {:?}", reduced_betti(&order_complex(&link))?.betti);
    let top = link.maximal_elements();
    let mult = CellMultiplicity::new(BTreeMap::from([(top[0], 3), (top[2], 2)]))?;
    let hat = hat_link(&link, &mult)?;
    let sub = hat_link_of_subdivision(&link, &mult)?;
    println!("{} extra top cells", mult.extra_copies());
    println!("hat link: reduced Betti {:?}", reduced_betti(&order_complex(&hat))?.betti);
    println!("via the subdivision: reduced Betti {:?}", reduced_betti(&sub)?.betti);
    Ok(())
}
