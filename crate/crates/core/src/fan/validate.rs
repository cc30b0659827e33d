use std::collections::BTreeSet;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::geometry::{self, dot, is_geometric_face, relative_interiors_meet, Halfspaces};
use super::{any_combination, is_subset, Fan};
use crate::linalg::IntVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ValidationLevel {
    Combinatorial,
    Geometric,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    ZeroRay,
    NonPrimitiveRay,
    DuplicateRay,
    RayInLineality,
    DegenerateCone,
    FaceNotSubset,
    DimensionNotIncreasing,
    DimensionGap,
    MissingFace,
    RedundantRay,
    NotAGeometricFace,
    MissingGeometricFace,
    InteriorOverlap,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}: {}", self.kind, self.message)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub level: ValidationLevel,
    pub violations: Vec<Violation>,
    /// Common dimension of the maximal cones, if they agree.
    pub pure_dimension: Option<usize>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }
}

/// Checks a fan and lists every violation found. The geometric level runs
/// exact feasibility tests (exponential in the worst case).
pub fn validate_fan(f: &Fan, level: ValidationLevel) -> ValidationReport {
    let mut out = Vec::new();
    let mut push = |kind, message: String| out.push(Violation { kind, message });

    check_rays(f, &mut push);
    let below = descendants(f);
    check_faces(f, &below, &mut push);
    if level == ValidationLevel::Geometric {
        check_geometry(f, &below, &mut push);
    }
    ValidationReport {
        level,
        violations: out,
        pure_dimension: f.pure_dimension(),
    }
}

fn check_rays(f: &Fan, push: &mut impl FnMut(ViolationKind, String)) {
    let lin: Vec<&IntVector> = f.lineality().iter().collect();
    for (i, r) in f.rays().iter().enumerate() {
        if r.is_zero() {
            push(ViolationKind::ZeroRay, format!("ray {i} is zero"));
            continue;
        }
        if !r.is_primitive() {
            push(ViolationKind::NonPrimitiveRay, format!("ray {i} = {r} is not primitive"));
        }
        let mut with = lin.clone();
        with.push(r);
        if geometry::rank(&with, f.ambient_rank()) == f.lineality_dim() {
            push(ViolationKind::RayInLineality, format!("ray {i} = {r} lies in the lineality space"));
        }
        for (j, s) in f.rays().iter().enumerate().skip(i + 1) {
            if r.is_proportional(s) && r.first_nonzero_sign() == s.first_nonzero_sign() {
                push(ViolationKind::DuplicateRay, format!("rays {i} = {r} and {j} = {s} point the same way"));
            }
        }
    }
}

/// `below[i]` = all declared faces of cone `i`, transitively.
fn descendants(f: &Fan) -> Vec<BTreeSet<usize>> {
    let n = f.cones().len();
    let mut children = vec![Vec::new(); n];
    for &(a, b) in f.face_relation() {
        children[b].push(a);
    }
    let mut below: Vec<Option<BTreeSet<usize>>> = vec![None; n];
    fn visit(i: usize, children: &[Vec<usize>], below: &mut Vec<Option<BTreeSet<usize>>>, depth: usize) {
        if below[i].is_some() || depth > children.len() {
            return;
        }
        let mut set = BTreeSet::new();
        for &c in &children[i] {
            visit(c, children, below, depth + 1);
            set.insert(c);
            if let Some(s) = &below[c] {
                set.extend(s.iter().copied());
            }
        }
        below[i] = Some(set);
    }
    for i in 0..n {
        visit(i, &children, &mut below, 0);
    }
    below.into_iter().map(Option::unwrap_or_default).collect()
}

fn check_faces(f: &Fan, below: &[BTreeSet<usize>], push: &mut impl FnMut(ViolationKind, String)) {
    let lin = f.lineality_dim();
    for &(a, b) in f.face_relation() {
        let (ca, cb) = (f.cone(a), f.cone(b));
        if !is_subset(ca.rays(), cb.rays()) {
            push(
                ViolationKind::FaceNotSubset,
                format!("cone {a} {:?} is declared a face of cone {b} {:?}", ca.rays(), cb.rays()),
            );
        }
        if ca.dim() >= cb.dim() {
            push(
                ViolationKind::DimensionNotIncreasing,
                format!("face {a} has dimension {} but cone {b} has {}", ca.dim(), cb.dim()),
            );
        }
    }
    if let Ok(poset) = f.link_poset() {
        for &(a, b) in poset.covers() {
            if poset.dim(b) != poset.dim(a) + 1 {
                push(
                    ViolationKind::DimensionGap,
                    format!("cone {} covers cone {} across a dimension gap", b + 1, a + 1),
                );
            }
        }
    }
    for (i, c) in f.cones().iter().enumerate().skip(1) {
        if c.dim() <= lin {
            push(
                ViolationKind::DegenerateCone,
                format!("cone {i} has no dimension above the lineality space"),
            );
            continue;
        }
        if !below[i].contains(&0) {
            push(ViolationKind::MissingFace, format!("cone {i} does not reach the minimal cone"));
        }
        if c.dim() >= lin + 2 {
            let covered: BTreeSet<usize> = below[i]
                .iter()
                .flat_map(|&j| f.cone(j).rays().iter().copied())
                .collect();
            for r in c.rays() {
                if !covered.contains(r) {
                    push(
                        ViolationKind::MissingFace,
                        format!("ray {r} of cone {i} lies on no declared face"),
                    );
                }
            }
        }
        if c.rays().len() + lin == c.dim() && c.rays().len() >= 2 {
            for k in 0..c.rays().len() {
                let mut sub = c.rays().to_vec();
                sub.remove(k);
                match f.find_cone(&sub) {
                    Some(j) if below[i].contains(&j) => {}
                    Some(j) => push(
                        ViolationKind::MissingFace,
                        format!("cone {j} {sub:?} is not declared a face of simplicial cone {i}"),
                    ),
                    None => push(
                        ViolationKind::MissingFace,
                        format!("facet {sub:?} of simplicial cone {i} is not in the fan"),
                    ),
                }
            }
        }
    }
}

fn check_geometry(f: &Fan, below: &[BTreeSet<usize>], push: &mut impl FnMut(ViolationKind, String)) {
    let n = f.cones().len();
    let mut clean = vec![true; n];
    for (i, c) in f.cones().iter().enumerate() {
        let g = f.cone_geometry(i);
        let redundant = g.redundant_rays();
        if !redundant.is_empty() {
            clean[i] = false;
            let globals: Vec<usize> = redundant.iter().map(|&k| c.rays()[k]).collect();
            push(
                ViolationKind::RedundantRay,
                format!("rays {globals:?} of cone {i} are not extreme"),
            );
        }
    }
    for &(a, b) in f.face_relation() {
        let (ca, cb) = (f.cone(a), f.cone(b));
        if !clean[b] || !is_subset(ca.rays(), cb.rays()) {
            continue;
        }
        let local: Vec<usize> = ca
            .rays()
            .iter()
            .map(|r| cb.rays().binary_search(r).expect("subset"))
            .collect();
        if !is_geometric_face(&f.cone_geometry(b), &local) {
            push(
                ViolationKind::NotAGeometricFace,
                format!("cone {a} is declared a face of cone {b} but is not one"),
            );
        }
    }
    for i in 0..n {
        if !clean[i] {
            continue;
        }
        let c = f.cone(i);
        for face in f.cone_geometry(i).faces() {
            let global: Vec<usize> = face.iter().map(|&k| c.rays()[k]).collect();
            if global.len() == c.rays().len() {
                continue;
            }
            match f.find_cone(&global) {
                Some(j) if below[i].contains(&j) => {}
                Some(j) => push(
                    ViolationKind::MissingGeometricFace,
                    format!("cone {j} is a face of cone {i} but not declared as one"),
                ),
                None => push(
                    ViolationKind::MissingGeometricFace,
                    format!("face {global:?} of cone {i} is not in the fan"),
                ),
            }
        }
    }
    let halfspaces: Vec<Halfspaces> = (0..n).map(|i| f.cone_geometry(i).halfspaces()).collect();
    any_combination(n, 2, |pair| {
        let (i, j) = (pair[0], pair[1]);
        if below[j].contains(&i) || below[i].contains(&j) {
            return false;
        }
        if separated(f, &halfspaces[i], j) || separated(f, &halfspaces[j], i) {
            return false;
        }
        if relative_interiors_meet(&f.cone_geometry(i), &f.cone_geometry(j)) {
            push(
                ViolationKind::InteriorOverlap,
                format!("relative interiors of cones {i} and {j} intersect"),
            );
        }
        false
    });
}

/// A facet inequality or equation of one cone that keeps the relative
/// interior of cone `other` strictly on the far side.
fn separated(f: &Fan, hs: &Halfspaces, other: usize) -> bool {
    let rays: Vec<Vec<_>> = f.cone(other).rays().iter().map(|&r| f.rays()[r].to_rational()).collect();
    if rays.is_empty() {
        return false;
    }
    let lin: Vec<Vec<_>> = f.lineality().iter().map(IntVector::to_rational).collect();
    for facet in &hs.facets {
        let vals: Vec<_> = rays.iter().map(|r| dot(&facet.normal, r)).collect();
        if vals.iter().all(|v| !v.is_positive()) && lin.iter().all(|l| dot(&facet.normal, l).is_zero()) {
            return true;
        }
    }
    for e in &hs.equations {
        let vals: Vec<_> = rays.iter().map(|r| dot(e, r)).collect();
        let same_sign = vals.iter().all(|v| !v.is_negative()) || vals.iter().all(|v| !v.is_positive());
        if same_sign && vals.iter().any(|v| !v.is_zero()) {
            return true;
        }
    }
    false
}
