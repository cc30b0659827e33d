use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};

use crate::fan::standard::{product_of_projective_spaces, projective_space};
use crate::fan::Fan;
use crate::generators::{tree_space_fan, tropical_hypersurface_fan};
use crate::linalg::RationalMatrix;
use crate::matroid::{bergman_fan, matroid_from_graph, matroid_from_matrix, Matroid};
use crate::polytope::{normal_fan, LatticePolytope};
use crate::strata::StratificationIncidence;

use super::parse::parse_polynomial;

/// Constant-coefficient polynomials in two and three variables.
pub const FIXTURE_POLYNOMIALS: &[&str] = &[
    "x1 + x2 + 1",
    "x1 + x2",
    "x1*x2 + x1 + x2 + 1",
    "x1^2*x2^-1 + x2 + 1",
    "x1^3 + x2^3 + x1*x2 + 1",
    "x1 + x2 + x3 + 1",
    "x1*x2*x3 + x1 + x2 + x3",
    "x1^2 + x2^2 + x3^2 - 2*x1*x2 + 1",
];

pub fn matroid_fixtures() -> Vec<(&'static str, Matroid)> {
    let k4 = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let c5 = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)];
    // columns e1, e2, e3, e1+e2, e1+e3: rank 3, not uniform
    let matrix = RationalMatrix::from_i64_rows(&[vec![1, 0, 0, 1, 1], vec![0, 1, 0, 1, 0], vec![0, 0, 1, 0, 1]]);
    let mut out: Vec<(&'static str, Matroid)> = Vec::new();
    for (name, r, n) in [
        ("u22", 2, 2),
        ("u23", 2, 3),
        ("u24", 2, 4),
        ("u25", 2, 5),
        ("u26", 2, 6),
        ("u35", 3, 5),
        ("u36", 3, 6),
    ] {
        out.push((name, Matroid::uniform(r, n).expect("uniform matroid")));
    }
    out.push(("k4", matroid_from_graph(&k4).expect("K4")));
    out.push(("c5", matroid_from_graph(&c5).expect("C5")));
    out.push(("linear5", matroid_from_matrix(&matrix).expect("matrix matroid")));
    out
}

pub fn fan_fixtures() -> Vec<(&'static str, Fan)> {
    let octahedron = LatticePolytope::new(
        [[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1], [0, 0, -1]]
            .iter()
            .map(|p| crate::linalg::IntVector::from_i64(p))
            .collect(),
    )
    .expect("octahedron");
    let line = parse_polynomial("x1 + x2 + 1", None).expect("fixture polynomial");
    let plane = parse_polynomial("x1 + x2 + x3 + 1", None).expect("fixture polynomial");
    vec![
        ("p2", projective_space(2)),
        ("p3", projective_space(3)),
        ("p4", projective_space(4)),
        ("p1xp1", product_of_projective_spaces(1, 1)),
        ("octahedron-normal-fan", normal_fan(&octahedron)),
        ("tropical-line", tropical_hypersurface_fan(&line).expect("line")),
        ("tropical-plane", tropical_hypersurface_fan(&plane).expect("plane")),
        ("trees5", tree_space_fan(5).expect("tree space")),
        ("bergman-u23", bergman_fan(&Matroid::uniform(2, 3).expect("U23")).expect("Bergman fan")),
        ("bergman-k4", bergman_fan(&matroid_fixtures()[7].1).expect("Bergman fan")),
    ]
}

fn write(path: PathBuf, contents: &str, out: &mut Vec<PathBuf>) -> Result<()> {
    fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))?;
    out.push(path);
    Ok(())
}

/// Writes every built-in input under `outdir`: `fans/`, `matroids/`,
/// `strata/` and `polynomials.txt`. Returns the files written, in order.
pub fn fixtures(outdir: &Path) -> Result<Vec<PathBuf>> {
    let mut out = Vec::new();
    for sub in ["fans", "matroids", "strata"] {
        fs::create_dir_all(outdir.join(sub)).with_context(|| format!("creating {}", outdir.join(sub).display()))?;
    }
    for (name, fan) in fan_fixtures() {
        write(outdir.join("fans").join(format!("{name}.json")), &(fan.to_json_string() + "\n"), &mut out)?;
    }
    for (name, m) in matroid_fixtures() {
        let text = serde_json::to_string_pretty(&m.to_json()).expect("matroid serializes");
        write(outdir.join("matroids").join(format!("{name}.json")), &(text + "\n"), &mut out)?;
    }
    for (name, s) in StratificationIncidence::fixtures() {
        write(outdir.join("strata").join(format!("{name}.json")), &(s.to_json_string() + "\n"), &mut out)?;
    }
    let polys = FIXTURE_POLYNOMIALS.join("\n") + "\n";
    write(outdir.join("polynomials.txt"), &polys, &mut out)?;
    Ok(out)
}
