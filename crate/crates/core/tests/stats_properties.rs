use num_rational::BigRational;
use proptest::prelude::*;
use rowlab_core::shapes::{rectangle, trapezoid, ShapePoset};
use rowlab_core::stats::{
    down_degree, expectation, frac, is_antichain_symmetric, is_toggle_symmetric, orbit_uniform, pl_rowmotion,
    pl_rowmotion_lattice, pl_toggle, rat, rook_statistic, rotate_right, stanley_thomas, PolytopePoint, Trapezoid,
};
use rowlab_core::{Ideal, Poset};

fn sides() -> impl Strategy<Value = (usize, usize)> {
    (1usize..=3).prop_flat_map(|a| (Just(a), a..=7 - a))
}

fn pick(sp: ShapePoset) -> impl Strategy<Value = (ShapePoset, Ideal)> {
    let ideals = sp.poset.enumerate_ideals(1 << 16).unwrap();
    (0..ideals.len()).prop_map(move |k| (sp.clone(), ideals[k].clone()))
}

/// A monotone lattice point of the order polytope, scaled by `m`.
fn lattice_point(poset: &Poset, raw: &[u32], m: u32) -> Vec<u32> {
    let mut v: Vec<u32> = raw.iter().map(|x| x % (m + 1)).collect();
    for &p in poset.linear_extension() {
        let floor = poset.lower_covers(p).iter().map(|&q| v[q]).max().unwrap_or(0);
        v[p] = v[p].max(floor);
    }
    v
}

fn scaled(v: &[u32], m: u32) -> Vec<BigRational> {
    v.iter().map(|&x| frac(x as i64, m as i64)).collect()
}

fn ddeg(poset: &Poset) -> impl Fn(&Ideal) -> BigRational + '_ {
    move |i| rat(down_degree(poset, i) as i64)
}

proptest! {
    #[test]
    fn stanley_thomas_word_rotates(sp_i in sides().prop_flat_map(|(a, b)| pick(rectangle(a, b).unwrap()))) {
        let (r, i) = sp_i;
        let w = stanley_thomas(&r, &i).unwrap();
        prop_assert_eq!(w.len(), r.shape.rows() + r.shape.outer[0]);
        prop_assert_eq!(stanley_thomas(&r, &r.poset.row(&i)).unwrap(), rotate_right(&w));
    }

    #[test]
    fn pl_toggle_is_an_involution(
        (a, b) in sides(),
        raw in proptest::collection::vec(0u32..100, 24),
        m in 1u32..6,
        k in 0usize..24,
    ) {
        let t = trapezoid(a, b).unwrap();
        let n = t.poset.len();
        let v = lattice_point(&t.poset, &raw[..n], m);
        let point = PolytopePoint::new(&t.poset, scaled(&v, m)).unwrap();
        let once = pl_toggle(&t.poset, &point, k % n).unwrap();
        prop_assert_eq!(pl_toggle(&t.poset, &once, k % n).unwrap(), point);
    }

    #[test]
    fn pl_rowmotion_on_lattice_matches_rational(
        (a, b) in sides(),
        raw in proptest::collection::vec(0u32..100, 24),
        m in 1u32..6,
    ) {
        let r = rectangle(a, b).unwrap();
        let v = lattice_point(&r.poset, &raw[..r.poset.len()], m);
        let rational = pl_rowmotion(&r.poset, &PolytopePoint::new(&r.poset, scaled(&v, m)).unwrap()).unwrap();
        prop_assert_eq!(rational.values, scaled(&pl_rowmotion_lattice(&r.poset, &v, m), m));
    }

    #[test]
    fn pl_rowmotion_restricts_to_rowmotion(sp_i in sides().prop_flat_map(|(a, b)| pick(trapezoid(a, b).unwrap()))) {
        let (t, i) = sp_i;
        let image = pl_rowmotion(&t.poset, &PolytopePoint::from_ideal(&i)).unwrap();
        prop_assert_eq!(image.to_ideal(), Some(t.poset.row(&i)));
    }

    #[test]
    fn orbit_uniform_distributions_are_symmetric(sp_i in sides().prop_flat_map(|(a, b)| pick(trapezoid(a, b).unwrap()))) {
        let (t, i) = sp_i;
        let d = orbit_uniform(&t.poset, &i);
        prop_assert!(d.is_normalized());
        prop_assert!(is_toggle_symmetric(&t.poset, &d).unwrap());
        prop_assert!(is_antichain_symmetric(&t.poset, &d, 1 << 16).unwrap());
    }

    #[test]
    fn rowmotion_orbits_average_the_down_degree(sp_i in sides().prop_flat_map(|(a, b)| pick(rectangle(a, b).unwrap()))) {
        let (r, i) = sp_i;
        let (a, b) = (r.shape.rows() as i64, r.shape.outer[0] as i64);
        let d = orbit_uniform(&r.poset, &i);
        prop_assert_eq!(expectation(&d, ddeg(&r.poset)).unwrap(), frac(a * b, a + b));
        let t = trapezoid(a as usize, b as usize).unwrap();
        let j = t.poset.enumerate_ideals(1 << 16).unwrap()[0].clone();
        let dt = orbit_uniform(&t.poset, &j);
        prop_assert_eq!(expectation(&dt, ddeg(&t.poset)).unwrap(), frac(a * b, a + b));
    }

    #[test]
    fn rook_statistics_are_one(
        (a, b) in (1usize..=3).prop_flat_map(|a| (Just(a), a..=6 - a)),
        k in any::<prop::sample::Index>(),
    ) {
        let t = Trapezoid::new(a, b).unwrap();
        let ideals = t.sp.poset.enumerate_ideals(1 << 16).unwrap();
        let i = k.get(&ideals);
        for &c in t.sp.cells() {
            prop_assert_eq!(rook_statistic(&t, c.row() as usize, c.col() as usize, i).unwrap(), rat(1));
        }
    }
}
