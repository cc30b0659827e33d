//! What validation catches: a fan whose cones overlap, and one that
//! declares a face that is not a face.

use troplink::fan::{validate_fan, Fan, ValidationLevel};
use troplink::linalg::IntVector;

fn show(name: &str, fan: &Fan) {
    for level in [ValidationLevel::Combinatorial, ValidationLevel::Geometric] {
        let report = validate_fan(fan, level);
        println!("{name}, {level:?}: {} violations", report.violations.len());
        for v in &report.violations {
            println!("  {:?}: {}", v.kind, v.message);
        }
    }
}

fn main() -> troplink::Result<()> {
    let v = |x: &[i64]| IntVector::from_i64(x);
    // two quadrant-like cones sharing interior points
    let overlap = Fan::new(
        2,
        vec![],
        vec![v(&[1, 0]), v(&[0, 1]), v(&[1, 1]), v(&[-1, 2])],
        vec![vec![0], vec![1], vec![2], vec![3], vec![0, 1], vec![2, 3]],
        vec![(0, 4), (1, 4), (2, 5), (3, 5)],
    )?;
    show("overlapping cones", &overlap);
    // the diagonal ray is declared a face of the quadrant
    let bogus = Fan::new(
        2,
        vec![],
        vec![v(&[1, 0]), v(&[0, 1]), v(&[1, 1])],
        vec![vec![0], vec![1], vec![2], vec![0, 1, 2]],
        vec![(0, 3), (1, 3), (2, 3)],
    )?;
    show("bogus face", &bogus);
    Ok(())
}
