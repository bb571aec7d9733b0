mod common;

use common::brute::{Brute, Key, Model};
use common::*;
use geodesic_core::automaton::*;
use geodesic_core::group::*;
use geodesic_core::growth::*;
use geodesic_core::Error;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

fn q(x: u64) -> BigRational {
    BigRational::from_integer(x.into())
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn parents_by_enumeration(brute: &Brute, gens: &GeneratingSet, g: &Key, l: u32) -> u32 {
    let letters: Vec<Key> = (0..gens.len()).map(|a| brute.value(&Word::new(vec![a]))).collect();
    (0..gens.len())
        .filter(|&a| {
            let w = gens.weight(a);
            w <= l && brute.length(&brute.mul(g, &brute.inv(&letters[a]))) == Some(l - w)
        })
        .count() as u32
}

fn check_parents(model: Model, pres: &Presentation, gens: &GeneratingSet, delta: u32, radius: u32) {
    let aut = build(pres, gens, delta).unwrap();
    let parents = parent_counts(&aut, pres, gens).unwrap();
    let brute = Brute::new(model, gens, radius);
    for (w, g, l) in &brute.words {
        if *l == 0 || !brute.is_geodesic(w) {
            continue;
        }
        let s = aut.run(w) as usize;
        assert_eq!(parents[s], parents_by_enumeration(&brute, gens, g, *l), "{}", gens.format_word(w));
    }
    assert_eq!(parents[aut.start() as usize], 1);
}

#[test]
fn parent_counts_match_enumeration() {
    let (p, g) = zn(1);
    check_parents(Model::free_abelian(), &p, &g, 1, 6);
    let (p, g) = zn(2);
    check_parents(Model::free_abelian(), &p, &g, 2, 6);
    let (p, g) = psl2z();
    check_parents(Model::Psl, &p, &g, 2, 7);
    let (p, g) = cannon_enlarged();
    check_parents(Model::swap(), &p, &g, 1, 4);
}

#[test]
fn parent_count_examples() {
    let (p, g) = zn(1);
    let aut = build(&p, &g, 1).unwrap();
    let parents = parent_counts(&aut, &p, &g).unwrap();
    assert_eq!(parents[aut.run(&g.parse_word("a").unwrap()) as usize], 1);
    let (p, g) = zn(2);
    let aut = build(&p, &g, 2).unwrap();
    let parents = parent_counts(&aut, &p, &g).unwrap();
    assert_eq!(parents[aut.run(&g.parse_word("a b").unwrap()) as usize], 2);
    assert!(parents.iter().all(|&x| x >= 1));
}

fn series_checks(model: Model, pres: &Presentation, gens: &GeneratingSet, delta: u32, terms: usize) {
    let aut = build(pres, gens, delta).unwrap();
    let brute = Brute::new(model, gens, terms as u32 - 1);
    let spheres: Vec<BigRational> = brute.sphere_sizes().into_iter().map(q).collect();
    let geodesics: Vec<BigRational> = brute.geodesic_counts().into_iter().map(q).collect();

    let corrected = group_growth_matrix(&aut, pres, gens).unwrap();
    let s = series(&corrected, terms);
    assert_eq!(s.0, spheres);
    assert!(s.integers().is_some());

    let parents = parent_counts(&aut, pres, gens).unwrap();
    let direct = corrected_matrix(&transition_matrix(&aut), &parents).unwrap();
    assert_eq!(series(&direct, terms).0, spheres);

    assert_eq!(series(&transition_matrix(&aut), terms).0, geodesics);

    let table = ball(pres, gens, terms as u32 - 1).unwrap();
    assert!(validate_growth(&s, &table).unwrap());
    assert_eq!(sphere_series(&table).0, spheres);

    let closed = rational_form(&corrected, 2 * corrected.size()).unwrap();
    assert_eq!(closed.taylor(terms), spheres);
    if corrected.size() <= DETERMINANT_LIMIT {
        assert_eq!(determinant_form(&corrected).unwrap(), closed);
    }
}

#[test]
fn growth_series_match_enumeration() {
    let (p, g) = zn(1);
    series_checks(Model::free_abelian(), &p, &g, 1, 13);
    let (p, g) = zn(2);
    series_checks(Model::free_abelian(), &p, &g, 2, 9);
    let (p, g) = psl2z();
    series_checks(Model::Psl, &p, &g, 2, 11);
    let (p, g) = cannon_enlarged();
    series_checks(Model::swap(), &p, &g, 1, 6);
}

#[test]
fn corrected_identity_to_twelve() {
    for (p, g, delta) in [
        {
            let (p, g) = zn(1);
            (p, g, 1)
        },
        {
            let (p, g) = zn(2);
            (p, g, 2)
        },
        {
            let (p, g) = psl2z();
            (p, g, 2)
        },
        {
            let (p, g) = cannon_enlarged();
            (p, g, 1)
        },
    ] {
        let aut = build(&p, &g, delta).unwrap();
        let m = group_growth_matrix(&aut, &p, &g).unwrap();
        let table = ball(&p, &g, 12).unwrap();
        assert!(validate_growth(&series(&m, 13), &table).unwrap());
    }
}

#[test]
fn closed_forms() {
    let form = |p: &Presentation, g: &GeneratingSet, delta: u32| {
        let aut = build(p, g, delta).unwrap();
        let m = group_growth_matrix(&aut, p, g).unwrap();
        rational_form(&m, 2 * m.size()).unwrap().to_string()
    };
    let (p, g) = zn(1);
    assert_eq!(form(&p, &g, 1), "(1 + t) / (1 - t)");
    let (p, g) = zn(2);
    assert_eq!(form(&p, &g, 2), "(1 + 2t + t^2) / (1 - 2t + t^2)");
    let (p, g) = zn(3);
    assert_eq!(form(&p, &g, 2), "(1 + 3t + 3t^2 + t^3) / (1 - 3t + 3t^2 - t^3)");
    let (p, g) = psl2z();
    assert_eq!(form(&p, &g, 2), "(1 + 2t + 2t^2 + t^3) / (1 - t - t^2)");
    let (p, g) = cannon_enlarged();
    assert_eq!(form(&p, &g, 1), "(1 + 9t + 15t^2 + 7t^3) / (1 - 2t + t^2)");

    let gf = RationalGF::from_integers(&ints(&[1]), &ints(&[1, -1])).unwrap();
    assert_eq!(gf.to_string(), "1 / (1 - t)");
}

#[test]
fn one_letter_monoid() {
    let (p, g) = one_letter();
    let aut = GeodesicAutomaton::from_parts(1, 1, vec!["a".to_string()], vec![1], vec![0], 0).unwrap();
    let m = transition_matrix(&aut);
    assert_eq!(series(&m, 5).0, vec![q(1); 5]);
    assert_eq!(rational_form(&m, 2).unwrap().to_string(), "1 / (1 - t)");
    let table = ball(&p, &g, 4).unwrap();
    assert!(validate_growth(&series(&m, 5), &table).unwrap());
}

#[test]
fn uncorrected_plane_series_is_not_the_growth() {
    let (p, g) = zn(2);
    let aut = build(&p, &g, 2).unwrap();
    let s = series(&transition_matrix(&aut), 8);
    let expected: Vec<BigRational> = [1u64, 4, 12, 28, 60, 124, 252, 508].into_iter().map(q).collect();
    assert_eq!(s.0, expected);
    assert!(!validate_growth(&s, &ball(&p, &g, 7).unwrap()).unwrap());
}

#[test]
fn preconditions() {
    let (p, g) = z1_skew();
    let aut = build(&p, &g, 1).unwrap();
    assert_eq!(aut.k(), 2);
    assert!(matches!(parent_counts(&aut, &p, &g), Err(Error::Precondition(_))));
    let (p, g) = zn(1);
    let min = minimize(&build(&p, &g, 1).unwrap());
    assert!(matches!(parent_counts(&min, &p, &g), Err(Error::Precondition(_))));
    let m = transition_matrix(&min);
    assert!(matches!(corrected_matrix(&m, &[1, 0, 1]), Err(Error::Precondition(_))));
    assert!(matches!(validate_growth(&series(&m, 6), &ball(&p, &g, 3).unwrap()), Err(Error::BeyondOracle { .. })));
}

proptest! {
    #[test]
    fn recurrence_detection(num in prop::collection::vec(-5i64..6, 1..4), den in prop::collection::vec(-3i64..4, 0..3)) {
        let mut d = vec![1i64];
        d.extend(den);
        let gf = RationalGF::from_integers(&ints(&num), &ints(&d)).unwrap();
        let s = gf.taylor(16);
        let (c, l) = berlekamp_massey(&s);
        prop_assert!(l <= 3);
        for n in l..s.len() {
            let mut acc = BigRational::zero();
            for (i, ci) in c.iter().enumerate() {
                if i <= n {
                    acc += ci * &s[n - i];
                }
            }
            prop_assert!(acc.is_zero());
        }
    }
}
