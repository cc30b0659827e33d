//! Boundary stratifications: the weight row of the spectral sequence next
//! to the dual complex.

use troplink::complex::reduced_betti;
use troplink::strata::{dual_complex, random_incidence, weight_row_against_dual, StratificationIncidence};

fn main() -> troplink::Result<()> {
    let mut cases: Vec<(String, StratificationIncidence)> = StratificationIncidence::fixtures()
        .into_iter()
        .map(|(n, s)| (n.to_string(), s))
        .collect();
    cases.extend((0..5).map(|seed| (format!("random seed {seed}"), random_incidence(seed, 3))));
    for (name, s) in cases {
        let dual = dual_complex(&s)?;
        let (row, shifted) = weight_row_against_dual(&s)?;
        println!(
            "{name:<16} cells {:?}  dual b̃ {:?}  weight row H {:?}  {}",
            dual.cell_counts(),
            reduced_betti(&dual)?.betti,
            row,
            if row == shifted { "agree" } else { "DIFFER" }
        );
    }
    Ok(())
}
