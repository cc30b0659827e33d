use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::StratificationIncidence;
use crate::fan::any_combination;

/// A random valid incidence structure on `m` components, reproducible from
/// `seed`.
///
/// A handful of points ("atoms") each lie on a random nonempty set of
/// components. The pieces of `B_I` partition the atoms lying on all of
/// `I`; that partition refines the ones chosen at every `I \ i`, with
/// extra random splitting, so containments commute automatically.
pub fn random_incidence(seed: u64, m: usize) -> StratificationIncidence {
    assert!(m >= 1, "need at least one component");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let atom_count = rng.gen_range(1..=6);
    let mut supports: Vec<u32> = (0..atom_count).map(|_| rng.gen_range(1..1u32 << m)).collect();
    for i in 0..m {
        if supports.iter().all(|s| s >> i & 1 == 0) {
            supports.push(1 << i);
        }
    }
    // block label of each atom at each index set; atoms off B_I are absent
    let mut labels: BTreeMap<Vec<usize>, BTreeMap<usize, usize>> = BTreeMap::new();
    labels.insert(Vec::new(), (0..supports.len()).map(|a| (a, 0)).collect());
    let mut pieces = BTreeMap::new();
    let mut containment = BTreeMap::new();
    for level in 1..=m {
        any_combination(m, level, |set| {
            let on: Vec<usize> = (0..supports.len())
                .filter(|&a| set.iter().all(|&i| supports[a] >> i & 1 == 1))
                .collect();
            if on.is_empty() {
                return false;
            }
            // common refinement of the partitions one level down
            let mut keyed: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
            for &a in &on {
                let key = (0..set.len())
                    .map(|t| {
                        let mut smaller = set.to_vec();
                        smaller.remove(t);
                        labels[&smaller][&a]
                    })
                    .collect();
                keyed.entry(key).or_default().push(a);
            }
            let mut blocks: Vec<Vec<usize>> = Vec::new();
            for (_, mut atoms) in keyed {
                atoms.shuffle(&mut rng);
                let parts = rng.gen_range(1..=atoms.len().min(2));
                let cut = if parts == 2 { rng.gen_range(1..atoms.len()) } else { atoms.len() };
                blocks.push(atoms[..cut].to_vec());
                if cut < atoms.len() {
                    blocks.push(atoms[cut..].to_vec());
                }
            }
            let mut map = BTreeMap::new();
            for (z, block) in blocks.iter().enumerate() {
                for &a in block {
                    map.insert(a, z);
                }
                for (t, &i) in set.iter().enumerate() {
                    let mut smaller = set.to_vec();
                    smaller.remove(t);
                    containment.insert((set.to_vec(), z, i), labels[&smaller][&block[0]]);
                }
            }
            pieces.insert(set.to_vec(), blocks.len());
            labels.insert(set.to_vec(), map);
            false
        });
    }
    StratificationIncidence::new(m, pieces, containment).expect("generated incidence is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strata::weight_row_against_dual;

    #[test]
    fn reproducible() {
        assert_eq!(random_incidence(5, 3), random_incidence(5, 3));
    }

    #[test]
    fn weight_row_matches_dual_on_random_data() {
        for seed in 0..40 {
            for m in 1..=4 {
                let s = random_incidence(seed, m);
                let (row, dual) = weight_row_against_dual(&s).unwrap();
                assert_eq!(row, dual, "seed {seed}, m {m}");
            }
        }
    }
}
