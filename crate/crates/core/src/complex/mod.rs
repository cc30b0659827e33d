//! Face posets, simplicial and Δ-complexes, chain complexes and reduced
//! rational homology.

mod chain;
mod delta;
mod poset;
mod simplicial;

pub use chain::{homology_of_chain_complex, ChainComplex, ReducedBetti};
pub use delta::DeltaComplex;
pub use poset::{order_complex, FacePoset};
pub use simplicial::{barycentric_subdivision, SimplicialComplex};

use crate::error::Result;

/// Anything with an augmented cellular chain complex.
pub trait CellComplex {
    fn augmented_chain_complex(&self) -> Result<ChainComplex>;
}

impl CellComplex for SimplicialComplex {
    fn augmented_chain_complex(&self) -> Result<ChainComplex> {
        Ok(self.chain_complex())
    }
}

impl CellComplex for DeltaComplex {
    fn augmented_chain_complex(&self) -> Result<ChainComplex> {
        self.chain_complex()
    }
}

/// Reduced rational Betti numbers `b̃_0..b̃_dim`.
pub fn reduced_betti<C: CellComplex + ?Sized>(c: &C) -> Result<ReducedBetti> {
    ReducedBetti::from_augmented(&c.augmented_chain_complex()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn random_complex() -> impl Strategy<Value = SimplicialComplex> {
        (1usize..=7).prop_flat_map(|n| {
            proptest::collection::vec(
                proptest::collection::btree_set(0..n, 1..=3.min(n)),
                1..=5,
            )
            .prop_map(move |fs| {
                SimplicialComplex::new(n, fs.into_iter().map(|s| s.into_iter().collect()).collect())
                    .unwrap()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn euler_characteristic_matches_face_counts(c in random_complex()) {
            let b = reduced_betti(&c).unwrap();
            prop_assert_eq!(b.euler_characteristic(), c.reduced_euler_characteristic());
        }

        #[test]
        fn subdivision_preserves_betti(c in random_complex()) {
            let b = reduced_betti(&c).unwrap();
            let sd = reduced_betti(&barycentric_subdivision(&c)).unwrap();
            prop_assert_eq!(b, sd);
        }

        #[test]
        fn cleared_ranks_match_plain_ranks(c in random_complex()) {
            let cc = c.chain_complex();
            let plain: Vec<usize> = cc.boundaries().iter().map(|d| d.rank()).collect();
            let h = cc.homology().unwrap();
            for k in 0..h.len() {
                let out = if k == 0 { 0 } else { plain[k - 1] };
                let inc = plain.get(k).copied().unwrap_or(0);
                prop_assert_eq!(h[k], cc.ranks()[k] - out - inc);
            }
        }

        #[test]
        fn cones_are_acyclic(c in random_complex()) {
            let b = reduced_betti(&c.cone()).unwrap();
            prop_assert!(b.betti.iter().all(|&x| x == 0));
        }

        #[test]
        fn cellular_homology_of_face_poset(c in random_complex()) {
            let (p, _) = c.face_poset();
            let cell = ReducedBetti::from_augmented(&p.cellular_chain_complex().unwrap()).unwrap();
            prop_assert_eq!(cell, reduced_betti(&c).unwrap());
        }
    }
}
