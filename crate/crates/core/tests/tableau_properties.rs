use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rowlab_core::audit::random_slide;
use rowlab_core::knuth::{hecke_permutation, tableau_hecke_permutation};
use rowlab_core::phi::{phi, phi_on_ideals};
use rowlab_core::shapes::{connected_shapes, rectangle, trapezoid, Kind, ShapePoset};
use rowlab_core::tableau::{
    ideal_to_tableau, k_promotion, k_promotion_via_kbk, kbk, random_tableau, rank_toggle_product, reading_word,
    tableau_to_ideal,
};
use rowlab_core::Ideal;

/// Rectangle sides with `a <= b` and `a + b <= 7`.
fn sides() -> impl Strategy<Value = (usize, usize)> {
    (1usize..=3).prop_flat_map(|a| (Just(a), a..=7 - a))
}

fn rect_with_ideal() -> impl Strategy<Value = (usize, usize, ShapePoset, Ideal)> {
    sides().prop_flat_map(|(a, b)| {
        let r = rectangle(a, b).unwrap();
        let ideals = r.poset.enumerate_ideals(1 << 16).unwrap();
        (0..ideals.len()).prop_map(move |k| (a, b, r.clone(), ideals[k].clone()))
    })
}

fn shape_poset_with_ideal(kind: Kind, graded_only: bool) -> impl Strategy<Value = (ShapePoset, Ideal)> {
    let posets: Vec<ShapePoset> = connected_shapes(kind, 7)
        .into_iter()
        .map(|s| ShapePoset::new(s).unwrap())
        .filter(|sp| !graded_only || sp.poset.is_graded())
        .collect();
    (0..posets.len()).prop_flat_map(move |k| {
        let sp = posets[k].clone();
        let ideals = sp.poset.enumerate_ideals(1 << 16).unwrap();
        (0..ideals.len()).prop_map(move |j| (sp.clone(), ideals[j].clone()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn phi_intertwines_rowmotion((a, b, r, i) in rect_with_ideal()) {
        let t = trapezoid(a, b).unwrap();
        let left = phi_on_ideals(&r, &t, &r.poset.row(&i)).unwrap();
        let right = t.poset.row(&phi_on_ideals(&r, &t, &i).unwrap());
        prop_assert_eq!(left, right);
    }

    #[test]
    fn phi_preserves_size_and_entries((_a, _b, r, i) in rect_with_ideal()) {
        let tab = ideal_to_tableau(&r, &i).unwrap();
        let image = phi(&tab).unwrap();
        prop_assert_eq!(image.shape().kind, Kind::Shifted);
        prop_assert_eq!(image.len(), tab.len());
        prop_assert!(image.max_value() <= tab.ell());
    }

    #[test]
    fn tableau_ideal_round_trip((sp, i) in shape_poset_with_ideal(Kind::Ordinary, false)) {
        let t = ideal_to_tableau(&sp, &i).unwrap();
        prop_assert_eq!(tableau_to_ideal(&sp, &t).unwrap(), i);
    }

    #[test]
    fn promotion_is_inverse_rowmotion_ordinary((sp, i) in shape_poset_with_ideal(Kind::Ordinary, true)) {
        let t = ideal_to_tableau(&sp, &i).unwrap();
        let expected = ideal_to_tableau(&sp, &sp.poset.rowmotion_inverse(&i)).unwrap();
        prop_assert_eq!(k_promotion(&t).unwrap(), expected);
    }

    #[test]
    fn promotion_is_inverse_rowmotion_shifted((sp, i) in shape_poset_with_ideal(Kind::Shifted, true)) {
        let t = ideal_to_tableau(&sp, &i).unwrap();
        let expected = ideal_to_tableau(&sp, &sp.poset.rowmotion_inverse(&i)).unwrap();
        prop_assert_eq!(k_promotion(&t).unwrap(), expected);
    }

    #[test]
    fn bender_knuth_is_a_rank_toggle((sp, i) in shape_poset_with_ideal(Kind::Ordinary, true), r in 1u32..8) {
        let r = 1 + (r - 1) % sp.max_rank() as u32;
        let t = ideal_to_tableau(&sp, &i).unwrap();
        let toggled = rank_toggle_product(&sp.poset, &i, r).unwrap();
        prop_assert_eq!(ideal_to_tableau(&sp, &toggled).unwrap(), kbk(&t, r));
    }

    #[test]
    fn two_routes_to_promotion(k in 0usize..10_000, seed in any::<u64>(), shifted in any::<bool>()) {
        let kind = if shifted { Kind::Shifted } else { Kind::Ordinary };
        let shapes = connected_shapes(kind, 6);
        let shape = &shapes[k % shapes.len()];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ell = shape.size() as u32 + 1;
        if let Some(t) = random_tableau(shape, ell, &mut rng) {
            prop_assert_eq!(k_promotion(&t).unwrap(), k_promotion_via_kbk(&t));
        }
    }

    #[test]
    fn slides_preserve_the_hecke_permutation(k in 0usize..10_000, seed in any::<u64>(), steps in 1usize..6) {
        let shapes = connected_shapes(Kind::Ordinary, 7);
        let shape = &shapes[k % shapes.len()];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let Some(mut t) = random_tableau(shape, shape.size() as u32, &mut rng) else { return Ok(()) };
        let w = tableau_hecke_permutation(&t);
        prop_assert_eq!(&w, &hecke_permutation(&reading_word(&t)));
        for _ in 0..steps {
            t = random_slide(&t, &mut rng).unwrap();
            prop_assert_eq!(&tableau_hecke_permutation(&t), &w);
        }
    }
}
