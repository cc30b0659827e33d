//! Bergman links of small matroids against the Möbius number of their
//! lattice of flats.

use troplink::cli::matroid_fixtures;
use troplink::complex::{order_complex, reduced_betti};
use troplink::matroid::{bergman_fan, flats_lattice, mobius_top};

fn main() -> troplink::Result<()> {
    println!("{:<8} {:>3} {:>3} {:>6} {:>6}  reduced Betti", "matroid", "n", "r", "flats", "|mu|");
    for (name, m) in matroid_fixtures() {
        let lattice = flats_lattice(&m);
        let mu = mobius_top(&lattice).unsigned_abs();
        let link = bergman_fan(&m)?.link_poset()?;
        let betti = reduced_betti(&order_complex(&link))?;
        println!(
            "{name:<8} {:>3} {:>3} {:>6} {mu:>6}  {:?}",
            m.ground_size(),
            m.rank(),
            lattice.len(),
            betti.betti
        );
        assert_eq!(betti.top() as u64, mu);
    }
    Ok(())
}
