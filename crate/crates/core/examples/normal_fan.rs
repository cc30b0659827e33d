//! Normal fans of lattice polytopes (inner normals, so the fan of a face
//! is where that face minimizes).

use troplink::complex::{order_complex, reduced_betti};
use troplink::linalg::IntVector;
use troplink::polytope::{normal_fan, LatticePolytope};

fn main() -> troplink::Result<()> {
    let shapes: [(&str, Vec<Vec<i64>>); 3] = [
        ("triangle", vec![vec![0, 0], vec![1, 0], vec![0, 1]]),
        ("square with centre", vec![vec![0, 0], vec![2, 0], vec![0, 2], vec![2, 2], vec![1, 1]]),
        ("octahedron", vec![
            vec![1, 0, 0], vec![-1, 0, 0], vec![0, 1, 0], vec![0, -1, 0], vec![0, 0, 1], vec![0, 0, -1],
        ]),
    ];
    for (name, pts) in shapes {
        let p = LatticePolytope::new(pts.iter().map(|x| IntVector::from_i64(x)).collect())?;
        let fan = normal_fan(&p);
        let link = reduced_betti(&order_complex(&fan.link_poset()?))?;
        println!(
            "{name}: {} vertices, {} rays, {} maximal cones, link b̃ {:?}",
            p.vertices().len(),
            fan.rays().len(),
            fan.maximal_cones().len(),
            link.betti
        );
    }
    Ok(())
}
