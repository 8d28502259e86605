mod common;

use std::collections::HashSet;

use arrcheck::catalog;
use arrcheck::cone::verify_answer;
use arrcheck::cordovil::{cordovil_summary_in, is_cordovil_quadratic};
use arrcheck::formality::is_formal;
use arrcheck::input::{parse_text, to_text};
use arrcheck::matroid::is_chordal;
use arrcheck::signgeo::{
    enumerate_chambers, sigma_chain, sigma_set, yoshinaga, SearchLimits, DEFAULT_CHAMBER_CAP,
};
use arrcheck::vg::{dim_vg_k_in, is_vg_quadratic};
use arrcheck::{Arrangement, FieldKind};
use common::*;
use proptest::prelude::*;

/// Small integer arrangements, deduplicated up to proportionality.
fn arrangements(max_n: usize, max_d: usize) -> impl Strategy<Value = Normals> {
    (2..=max_d).prop_flat_map(move |d| {
        prop::collection::vec(prop::collection::vec(-2i64..=2, d), 1..=max_n).prop_map(|vs| {
            let mut seen = HashSet::new();
            vs.into_iter()
                .filter(|v| v.iter().any(|&x| x != 0))
                .filter(|v| {
                    let g = v.iter().fold(0i64, |g, &x| num_integer::gcd(g, x));
                    let s = if v.iter().find(|&&x| x != 0).unwrap() < &0 {
                        -g
                    } else {
                        g
                    };
                    seen.insert(v.iter().map(|x| x / s).collect::<Vec<_>>())
                })
                .collect()
        })
    })
}

fn graphs(max_vertices: usize) -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (3..=max_vertices).prop_flat_map(|v| {
        let pairs: Vec<(usize, usize)> = (0..v)
            .flat_map(|a| (a + 1..v).map(move |b| (a, b)))
            .collect();
        let m = pairs.len();
        (Just(v), prop::sample::subsequence(pairs, 1..=m))
    })
}

fn limits() -> SearchLimits {
    SearchLimits::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sigma_sets_are_nested(normals in arrangements(9, 4)) {
        prop_assume!(!normals.is_empty());
        let a = arrangement(&normals);
        let sets: Vec<HashSet<u64>> = (1..=a.rank())
            .map(|k| sigma_set(&a, k, &limits()).unwrap().iter().map(|v| v.plus_mask()).collect())
            .collect();
        for w in sets.windows(2) {
            prop_assert!(w[1].is_subset(&w[0]));
        }
        let chain = sigma_chain(&a, &limits()).unwrap().sigma;
        prop_assert_eq!(chain[0], 1u128 << a.len());
        prop_assert!(chain.windows(2).all(|w| w[0] >= w[1]));
        prop_assert_eq!(*chain.last().unwrap(), zaslavsky(&normals));
    }

    #[test]
    fn sigma_sets_are_closed_under_negation(normals in arrangements(9, 4), k in 1usize..4) {
        prop_assume!(!normals.is_empty());
        let a = arrangement(&normals);
        let full = a.full_mask();
        let set: HashSet<u64> = sigma_set(&a, k, &limits()).unwrap().iter().map(|v| v.plus_mask()).collect();
        for &v in &set {
            prop_assert!(set.contains(&(full & !v)));
        }
    }

    #[test]
    fn chamber_witnesses_certify_their_signs(normals in arrangements(9, 4)) {
        prop_assume!(!normals.is_empty());
        let a = arrangement(&normals);
        let chambers = enumerate_chambers(&a, DEFAULT_CHAMBER_CAP).unwrap();
        let masks: HashSet<u64> = chambers.chambers.iter().map(|c| c.signs.plus_mask()).collect();
        prop_assert_eq!(masks.len(), chambers.len());
        for c in &chambers.chambers {
            let answer = arrcheck::cone::FeasibilityAnswer::Nonempty { witness: c.witness.clone() };
            prop_assert!(verify_answer(a.normals(), &c.signs.signs(), &answer));
        }
    }

    #[test]
    fn vg_dims_do_not_depend_on_the_field(normals in arrangements(9, 4)) {
        prop_assume!(!normals.is_empty());
        let a = arrangement(&normals);
        for k in 1..=a.rank() {
            let q = dim_vg_k_in(&a, k, FieldKind::Rationals, &limits()).unwrap();
            for p in [2, 3, 5] {
                prop_assert_eq!(dim_vg_k_in(&a, k, FieldKind::Prime(p), &limits()).unwrap(), q);
            }
        }
    }

    #[test]
    fn cordovil_hilbert_series_is_whitney(normals in arrangements(8, 4)) {
        prop_assume!(!normals.is_empty());
        let a = arrangement(&normals);
        let s = cordovil_summary_in(&a, FieldKind::Rationals).unwrap();
        let w: Vec<usize> = whitney_numbers(&normals).iter().map(|x| x.unsigned_abs() as usize).collect();
        prop_assert_eq!(&s.hilbert, &w);
        for (d, h) in s.hilbert.iter().enumerate() {
            prop_assert_eq!(h + s.jr_dims[d], binomial(a.len(), d));
        }
    }

    #[test]
    fn verdict_implications(normals in arrangements(9, 4)) {
        prop_assume!(!normals.is_empty());
        let a = arrangement(&normals);
        let yoshi = yoshinaga(&a, &limits()).unwrap();
        prop_assert_eq!(is_vg_quadratic(&a, FieldKind::Rationals, &limits()).unwrap(), yoshi);
        if is_cordovil_quadratic(&a, FieldKind::Rationals).unwrap().0 {
            prop_assert!(yoshi);
        }
        if yoshi {
            prop_assert!(is_formal(&a).0);
        }
        if is_chordal(&a).verdict {
            prop_assert!(yoshi);
        }
    }

    #[test]
    fn text_format_round_trips(normals in arrangements(10, 5)) {
        prop_assume!(!normals.is_empty());
        let a = arrangement(&normals);
        let b: Arrangement = parse_text(&to_text(&a)).unwrap();
        prop_assert_eq!(a.normals(), b.normals());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn graphic_chordal_equals_yoshinaga((v, edges) in graphs(7)) {
        let a = catalog::graphic(v, &edges).unwrap();
        prop_assert_eq!(is_chordal(&a).verdict, yoshinaga(&a, &limits()).unwrap(), "{:?}", edges);
    }

    /// Chordal, Yoshinaga and formal verdicts for graphic arrangements.
    #[test]
    fn graphic_chordal_yoshinaga_formal_agree((v, edges) in graphs(7)) {
        let a = catalog::graphic(v, &edges).unwrap();
        let chordal = is_chordal(&a).verdict;
        let yoshi = yoshinaga(&a, &limits()).unwrap();
        let formal = is_formal(&a).0;
        prop_assert_eq!(chordal, yoshi, "chordal vs yoshinaga on {:?}", edges);
        prop_assert_eq!(yoshi, formal, "yoshinaga vs formal on {:?}", edges);
    }
}
