use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use troplink::cli::{fan_fixtures, poset_betti, LinkMethod, FIXTURE_POLYNOMIALS};
use troplink::complex::{order_complex, reduced_betti};
use troplink::fan::{support_contained_in, validate_fan, Fan, ValidationLevel};
use troplink::generators::{ci_skeleton_link, tropical_hypersurface_fan};
use troplink::linalg::{Rational, RationalMatrix};
use troplink::matroid::{bergman_fan, flats_lattice, matroid_from_graph, matroid_from_matrix, mobius_top, Matroid};
use troplink::polytope::{normal_fan, LatticePolytope};
use troplink::strata::{hat_link, hat_link_of_subdivision, CellMultiplicity};

fn all_fans() -> Vec<(String, Fan)> {
    let mut fans: Vec<(String, Fan)> = fan_fixtures().into_iter().map(|(n, f)| (n.to_string(), f)).collect();
    for p in FIXTURE_POLYNOMIALS {
        let f = troplink::cli::parse_polynomial(p, None).unwrap();
        fans.push((p.to_string(), tropical_hypersurface_fan(&f).unwrap()));
    }
    fans
}

/// A random point in the relative interior of cone `i`.
fn sample(f: &Fan, i: usize, rng: &mut ChaCha8Rng) -> Vec<Rational> {
    let mut w = vec![Rational::from_integer(BigInt::from(0)); f.ambient_rank()];
    let cone = f.cone(i);
    let mut terms: Vec<_> = cone.rays().iter().map(|&r| (&f.rays()[r], rng.gen_range(1..20i64))).collect();
    terms.extend(f.lineality().iter().map(|v| (v, rng.gen_range(-20..20i64))));
    for (v, c) in terms {
        let d = rng.gen_range(1..5i64);
        for (x, e) in w.iter_mut().zip(v.entries()) {
            *x += Rational::new(BigInt::from(c) * e, BigInt::from(d));
        }
    }
    w
}

#[test]
fn support_membership_monte_carlo() {
    let mut rng = ChaCha8Rng::seed_from_u64(217);
    for (name, f) in all_fans() {
        for i in 0..f.cones().len() {
            for _ in 0..3 {
                let w = sample(&f, i, &mut rng);
                assert!(f.support_contains(&w), "{name}: sample of cone {i}");
            }
        }
        // a generic point misses a fan of lower dimension
        if f.max_dim() < f.ambient_rank() {
            let w: Vec<Rational> = (0..f.ambient_rank())
                .map(|_| Rational::new(BigInt::from(rng.gen_range(-1000..1000i64)), BigInt::from(997)))
                .collect();
            assert!(!f.support_contains(&w), "{name}: generic point");
        }
    }
}

#[test]
fn hypersurface_fans_sit_inside_their_normal_fans() {
    for p in FIXTURE_POLYNOMIALS {
        let f = troplink::cli::parse_polynomial(p, None).unwrap();
        let t = tropical_hypersurface_fan(&f).unwrap();
        let n = normal_fan(&troplink::polytope::newton_polytope(&f));
        assert!(support_contained_in(&t, &n).unwrap(), "{p}");
        assert!(!support_contained_in(&n, &t).unwrap(), "{p}");
    }
}

#[test]
fn skeleton_of_a_non_simplicial_complete_fan() {
    let octahedron = LatticePolytope::new(
        [[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1], [0, 0, -1]]
            .iter()
            .map(|p| troplink::linalg::IntVector::from_i64(p))
            .collect(),
    )
    .unwrap();
    let f = normal_fan(&octahedron);
    assert!(f.maximal_cones().iter().all(|&c| f.cone(c).rays().len() == 4));
    let b1 = reduced_betti(&order_complex(&ci_skeleton_link(&f, 1).unwrap())).unwrap().betti;
    // the edge graph of the cube: 8 vertices, 12 edges
    assert_eq!(b1, vec![0, 5]);
    let b2 = reduced_betti(&order_complex(&ci_skeleton_link(&f, 2).unwrap())).unwrap().betti;
    assert_eq!(b2, vec![7]);
}

fn bergman_law(name: &str, m: &Matroid) {
    let mu = mobius_top(&flats_lattice(m)).unsigned_abs();
    let link = bergman_fan(m).unwrap().link_poset().unwrap();
    let (b, checks, _) = poset_betti(&link, LinkMethod::Auto).unwrap();
    assert!(checks.iter().all(|c| c.3), "{name}: {checks:?}");
    if b.empty {
        assert_eq!(mu, 1, "{name}");
        return;
    }
    assert!(b.top_concentrated(), "{name}: {:?}", b.betti);
    assert_eq!(b.top() as u64, mu, "{name}");
    assert_eq!(b.top_dimension(), Some(m.rank() - 2), "{name}");
}

#[test]
fn uniform_matroids_up_to_seven() {
    for n in 1..=7 {
        for r in 1..=n {
            bergman_law(&format!("U({r},{n})"), &Matroid::uniform(r, n).unwrap());
        }
    }
}

#[test]
fn graphic_matroids_on_five_vertices() {
    let k5: Vec<(usize, usize)> = (0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j))).collect();
    let graphs: Vec<(&str, Vec<(usize, usize)>)> = vec![
        ("K5", k5),
        ("C5", vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]),
        ("K23", vec![(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]),
        ("house", vec![(0, 1), (1, 2), (2, 3), (3, 0), (2, 4), (3, 4)]),
        ("two triangles", vec![(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)]),
        ("parallel pair", vec![(0, 1), (0, 1), (1, 2)]),
    ];
    for (name, g) in graphs {
        bergman_law(name, &matroid_from_graph(&g).unwrap());
    }
}

#[test]
fn non_uniform_linear_matroid() {
    let m = matroid_from_matrix(&RationalMatrix::from_i64_rows(&[
        vec![1, 0, 0, 1, 1, 0],
        vec![0, 1, 0, 1, 0, 1],
        vec![0, 0, 1, 0, 1, 1],
    ]))
    .unwrap();
    bergman_law("linear6", &m);
}

#[test]
fn small_bergman_fans_are_geometrically_valid() {
    for m in [
        Matroid::uniform(3, 5).unwrap(),
        Matroid::uniform(2, 6).unwrap(),
        matroid_from_graph(&[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap(),
    ] {
        let report = validate_fan(&bergman_fan(&m).unwrap(), ValidationLevel::Geometric);
        assert!(report.is_valid(), "{:?}", report.violations);
    }
}

#[test]
fn hat_link_routes_agree_on_fixture_links() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for (name, f) in fan_fixtures() {
        let p = f.link_poset().unwrap();
        let top = p.max_dim().unwrap();
        let mut mult = BTreeMap::new();
        for c in p.maximal_elements() {
            if p.dim(c) == top && rng.gen_bool(0.3) {
                mult.insert(c, rng.gen_range(2..=4));
            }
        }
        let mult = CellMultiplicity::new(mult).unwrap();
        let a = reduced_betti(&order_complex(&hat_link(&p, &mult).unwrap())).unwrap();
        let b = reduced_betti(&hat_link_of_subdivision(&p, &mult).unwrap()).unwrap();
        assert_eq!(a, b, "{name}");
        let base = reduced_betti(&order_complex(&p)).unwrap();
        assert_eq!(a.top(), base.top() + mult.extra_copies(), "{name}");
    }
}
