mod common;

use common::brute::{key, Brute, Model};
use common::*;
use geodesic_core::group::*;
use geodesic_core::Error;
use proptest::prelude::*;

fn check_ball(model: Model, pres: &Presentation, gens: &GeneratingSet, radius: u32) {
    let brute = Brute::new(model, gens, radius);
    let table = ball(pres, gens, radius).unwrap();
    assert_eq!(table.sphere_sizes(), brute.sphere_sizes());
    for (g, l) in table.iter() {
        assert_eq!(brute.length(&key(g)), Some(l), "{g:?}");
    }
}

#[test]
fn ball_matches_enumeration() {
    let (p, g) = zn(1);
    check_ball(Model::free_abelian(), &p, &g, 9);
    let (p, g) = zn(2);
    check_ball(Model::free_abelian(), &p, &g, 7);
    let (p, g) = psl2z();
    check_ball(Model::Psl, &p, &g, 9);
    let (p, g) = cannon();
    check_ball(Model::swap(), &p, &g, 5);
    let (p, g) = z1_skew();
    check_ball(Model::free_abelian(), &p, &g, 12);
    let (p, g) = z1_weighted();
    check_ball(Model::free_abelian(), &p, &g, 10);
    let (p, g) = one_letter();
    check_ball(Model::free_abelian(), &p, &g, 6);
}

#[test]
fn sphere_sizes_of_small_groups() {
    let (p, g) = zn(2);
    assert_eq!(ball(&p, &g, 5).unwrap().sphere_sizes(), vec![1, 4, 8, 12, 16, 20]);
    let (p, g) = zn(1);
    assert_eq!(ball(&p, &g, 3).unwrap().sphere_sizes(), vec![1, 2, 2, 2]);
    let (p, g) = psl2z();
    assert_eq!(ball(&p, &g, 10).unwrap().sphere_sizes(), vec![1, 3, 6, 10, 16, 26, 42, 68, 110, 178, 288]);
}

#[test]
fn cannon_words() {
    let (p, g) = cannon();
    let w = g.parse_word("t c c t c c").unwrap();
    assert_eq!(eval(&w, &g, &p).unwrap(), GroupElement::va(vec![4, 4], 0));
    let d4 = g.parse_word("d^4").unwrap();
    assert_eq!(eval(&d4, &g, &p).unwrap(), GroupElement::va(vec![4, 4], 0));
    let h = eval(&g.parse_word("t c^3 t c^3").unwrap(), &g, &p).unwrap();
    assert_eq!(directed_distance(&p, &g, &p.identity(), &h, 8).unwrap(), Some(6));
    assert_eq!(asym_constant(&p, &g, 8).unwrap(), 1);
    assert!(!is_geodesic(&w, &g, &p, 1 << 20).unwrap());
    assert!(is_geodesic(&d4, &g, &p, 1 << 20).unwrap());
}

#[test]
fn asymmetric_generating_sets() {
    let (p, g) = z1_skew();
    assert_eq!(asym_constant(&p, &g, 8).unwrap(), 2);
    let o = Oracle::new(&p, &g, 6).unwrap();
    let x = GroupElement::va(vec![1], 0);
    assert_eq!(o.distance(&p.identity(), &x).unwrap(), Some(1));
    assert_eq!(o.distance(&x, &p.identity()).unwrap(), Some(2));

    let (p, g) = one_letter();
    let t = ball(&p, &g, 4).unwrap();
    assert_eq!(t.sphere_sizes(), vec![1, 1, 1, 1, 1]);
    assert!(t.length(&GroupElement::va(vec![-1], 0)).is_none());
    assert!(matches!(asym_constant(&p, &g, 4), Err(Error::AbsentInverse { .. })));
}

#[test]
fn geodesic_verdicts_match_enumeration() {
    for (model, (p, g), r) in [
        (Model::free_abelian(), zn(2), 5),
        (Model::Psl, psl2z(), 6),
        (Model::swap(), cannon(), 4),
        (Model::free_abelian(), z1_skew(), 7),
    ] {
        let brute = Brute::new(model, &g, r);
        let o = Oracle::new(&p, &g, r).unwrap();
        for (w, _, _) in &brute.words {
            assert_eq!(o.is_geodesic(w).unwrap(), brute.is_geodesic(w), "{}", g.format_word(w));
        }
    }
}

#[test]
fn ball_cap_is_enforced() {
    let (p, g) = zn(2);
    assert!(matches!(ball_with_cap(&p, &g, 10, 50), Err(Error::ResourceCap { .. })));
}

#[test]
fn words_parse_and_format() {
    let (_, g) = cannon();
    let w = g.parse_word("a c^2 T").unwrap();
    assert_eq!(g.format_word(&w), "a c c T");
    assert_eq!(g.format_word(&Word::empty()), "ε");
    assert!(matches!(g.parse_word("a x"), Err(Error::UnknownLetter(_))));
}

fn cannon_word() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0usize..8, 0..7)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eval_is_a_homomorphism(u in cannon_word(), w in cannon_word()) {
        let (p, g) = cannon();
        let (u, w) = (Word::new(u), Word::new(w));
        let lhs = eval(&u.concat(&w), &g, &p).unwrap();
        let rhs = p.multiply(&eval(&u, &g, &p).unwrap(), &eval(&w, &g, &p).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn prefixes_of_geodesics_are_geodesic(w in cannon_word()) {
        let (p, g) = cannon();
        let w = Word::new(w);
        let o = Oracle::new(&p, &g, 6).unwrap();
        if o.is_geodesic(&w).unwrap() {
            for i in 0..w.num_letters() {
                prop_assert!(o.is_geodesic(&w.prefix(i)).unwrap());
            }
        }
    }

    #[test]
    fn distance_asymmetry_is_bounded(x in prop::collection::vec(0usize..2, 0..6), y in prop::collection::vec(0usize..2, 0..6)) {
        let (p, g) = z1_skew();
        let o = Oracle::new(&p, &g, 24).unwrap();
        let k = asym_constant(&p, &g, 8).unwrap();
        let a = o.eval(&Word::new(x)).unwrap();
        let b = o.eval(&Word::new(y)).unwrap();
        let d1 = o.distance(&a, &b).unwrap().unwrap();
        let d2 = o.distance(&b, &a).unwrap().unwrap();
        prop_assert!(d1 <= k * d2 && d2 <= k * d1);
    }

    #[test]
    fn smaller_balls_are_restrictions(r in 0u32..6) {
        let (p, g) = psl2z();
        let big = ball(&p, &g, 6).unwrap();
        let small = ball(&p, &g, r).unwrap();
        prop_assert_eq!(small.len(), big.count_within(r));
        for (x, l) in small.iter() {
            prop_assert_eq!(big.length(x), Some(l));
        }
    }
}
