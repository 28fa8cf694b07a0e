use std::collections::HashSet;

use proptest::prelude::*;
use rowlab_core::{build_poset, Ideal, Poset, RowmotionMethod};

/// A random poset on `n <= 7` elements: a random strict order on indices,
/// closed transitively, then reduced to its covers.
fn poset_strategy() -> impl Strategy<Value = Poset> {
    (1usize..=7).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
            let mut lt = vec![vec![false; n]; n];
            for i in 0..n {
                for j in i + 1..n {
                    lt[i][j] = bits[i * n + j];
                }
            }
            for k in 0..n {
                for i in 0..n {
                    for j in 0..n {
                        if lt[i][k] && lt[k][j] {
                            lt[i][j] = true;
                        }
                    }
                }
            }
            let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
            let mut covers = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    if lt[i][j] && !(0..n).any(|k| lt[i][k] && lt[k][j]) {
                        covers.push((names[i].clone(), names[j].clone()));
                    }
                }
            }
            build_poset(&names, &covers).expect("reduced covers of a strict order")
        })
    })
}

fn with_ideal() -> impl Strategy<Value = (Poset, Ideal)> {
    poset_strategy().prop_flat_map(|p| {
        let ideals = p.enumerate_ideals(1 << 12).unwrap();
        (0..ideals.len()).prop_map(move |k| (p.clone(), ideals[k].clone()))
    })
}

/// Brute-force ideal test straight from the definition.
fn is_down_closed(p: &Poset, members: &[usize]) -> bool {
    members.iter().all(|&i| (0..p.len()).all(|j| !p.leq(j, i) || members.contains(&j)))
}

proptest! {
    #[test]
    fn ideal_enumeration_matches_brute_force(p in poset_strategy()) {
        let n = p.len();
        let brute: usize = (0u32..1 << n)
            .filter(|mask| is_down_closed(&p, &(0..n).filter(|i| mask >> i & 1 == 1).collect::<Vec<_>>()))
            .count();
        let ideals = p.enumerate_ideals(1 << 12).unwrap();
        prop_assert_eq!(ideals.len(), brute);
        let distinct: HashSet<_> = ideals.iter().collect();
        prop_assert_eq!(distinct.len(), brute);
    }

    #[test]
    fn rowmotion_methods_agree((p, i) in with_ideal()) {
        prop_assert_eq!(p.rowmotion(&i, RowmotionMethod::Generators), p.rowmotion(&i, RowmotionMethod::Toggles));
    }

    #[test]
    fn rowmotion_by_definition((p, i) in with_ideal()) {
        // Ideal generated by the minimal elements of the complement.
        let n = p.len();
        let minima: Vec<usize> = (0..n)
            .filter(|&x| !i.contains(x) && (0..n).all(|y| y == x || !p.leq(y, x) || i.contains(y)))
            .collect();
        let expected: Vec<usize> = (0..n).filter(|&y| minima.iter().any(|&m| p.leq(y, m))).collect();
        let got: Vec<usize> = p.row(&i).members().collect();
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn inverse_rowmotion_undoes_rowmotion((p, i) in with_ideal()) {
        prop_assert_eq!(p.rowmotion_inverse(&p.row(&i)), i.clone());
        prop_assert_eq!(p.row(&p.rowmotion_inverse(&i)), i);
    }

    #[test]
    fn toggles_are_involutions((p, i) in with_ideal(), k in 0usize..7) {
        let x = k % p.len();
        let once = p.toggle(&i, x);
        prop_assert!(p.is_downset(&once.0));
        prop_assert_eq!(p.toggle(&once, x), i);
    }

    #[test]
    fn orbits_partition_the_ideals(p in poset_strategy()) {
        let d = p.orbit_decomposition(1 << 12).unwrap();
        let total = p.enumerate_ideals(1 << 12).unwrap().len();
        prop_assert_eq!(d.total(), total);
        for orbit in &d.orbits {
            for (k, i) in orbit.iter().enumerate() {
                prop_assert_eq!(&p.row(i), &orbit[(k + 1) % orbit.len()]);
            }
        }
    }

    #[test]
    fn rowmotion_along_any_linear_extension((p, i) in with_ideal(), seed in any::<u64>()) {
        // A second extension: Kahn with a seeded choice among available elements.
        let n = p.len();
        let mut placed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut s = seed;
        while order.len() < n {
            let ready: Vec<usize> = (0..n)
                .filter(|&x| !placed[x] && p.lower_covers(x).iter().all(|&y| placed[y]))
                .collect();
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let x = ready[(s >> 33) as usize % ready.len()];
            placed[x] = true;
            order.push(x);
        }
        prop_assert!(p.is_linear_extension(&order));
        prop_assert_eq!(p.rowmotion_along(&i, &order), p.row(&i));
    }
}
