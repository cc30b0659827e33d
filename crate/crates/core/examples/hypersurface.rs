//! Tropical hypersurfaces: the fan from the Newton polytope, membership by
//! initial forms, and the link.
//!
//! `cargo run --example hypersurface -- "x1*x2 + x1 + x2 + 1"`

use troplink::cli::{membership_mismatches, parse_polynomial};
use troplink::complex::{order_complex, reduced_betti};
use troplink::generators::{initial_form, tropical_hypersurface_fan};
use troplink::linalg::IntVector;

fn main() -> anyhow::Result<()> {
    let text = std::env::args().nth(1).unwrap_or_else(|| "x1 + x2 + 1".into());
    let f = parse_polynomial(&text, None)?;
    let fan = tropical_hypersurface_fan(&f)?;
    println!("f = {f}");
    println!("rays:");
    for r in fan.rays() {
        println!("  {:?}", r.entries().iter().map(ToString::to_string).collect::<Vec<_>>());
    }
    for w in [vec![0i64; f.nvars()], vec![1; f.nvars()], vec![-1; f.nvars()]] {
        let w = IntVector::from_i64(&w);
        println!("in_w f at {:?} = {}", w.entries(), initial_form(&f, &w)?);
    }
    let bad = membership_mismatches(&f, &fan, 3)?;
    println!("grid points where the two membership tests disagree: {}", bad.len());
    println!("link reduced Betti {:?}", reduced_betti(&order_complex(&fan.link_poset()?))?.betti);
    Ok(())
}
