use proptest::prelude::*;

use cubical::check::{check_presentation, CheckConfig, Report};
use cubical::constructions::closed::GsyScales;
use cubical::constructions::gsy;
use cubical::constructions::stair::{compositional_schema, stair_schema};
use cubical::gen::random_map;
use cubical::hypercube::{count_kcubes, kcubes, IndexSet};
use cubical::laws::{check_homogeneity, check_symmetry, compare_laws, derive_law_sym, derive_law_sym_closed};
use cubical::nfold::Sampler;
use cubical::scalars::{Scalar, Q};
use cubical::slope::{slope, sym_slope_closed, sym_slope_iterated};

fn cfg() -> ProptestConfig {
    ProptestConfig { cases: 48, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(cfg())]

    #[test]
    fn closed_formula_matches_iterated_slopes(seed in any::<u64>(), nin in 1usize..=3, n in 1u8..=3) {
        let mut s = Sampler::new(seed);
        let f = random_map(&mut s, nin, 2, 3);
        let it = sym_slope_iterated(&f, n).unwrap();
        for _ in 0..5 {
            let t: Vec<Q> = (0..n).map(|_| s.unit()).collect();
            let v: Vec<Vec<Q>> = (0..1usize << n).map(|_| s.values(nin)).collect();
            let ts: Vec<Scalar> = t.iter().cloned().map(Scalar::Rat).collect();
            let vs: Vec<Vec<Scalar>> = v.iter().map(|x| x.iter().cloned().map(Scalar::Rat).collect()).collect();
            let closed: Vec<Q> = sym_slope_closed(&f, &ts, &vs)
                .unwrap()
                .into_iter()
                .map(|x| x.as_rational().unwrap().clone())
                .collect();
            let mut point = v.concat();
            point.extend(t);
            prop_assert_eq!(closed, it.eval_q(&point));
        }
    }

    #[test]
    fn first_slope_is_additive_in_the_increment(seed in any::<u64>(), nin in 1usize..=3) {
        // g(x, w + w', t) = g(x + t w', w, t) + g(x, w', t)
        let mut s = Sampler::new(seed);
        let f = random_map(&mut s, nin, 2, 3);
        let g = slope(&f).unwrap();
        let (x, w, w2, t) = (s.values(nin), s.values(nin), s.values(nin), s.scalar());
        let at = |x: &[Q], w: &[Q]| {
            let mut p = x.to_vec();
            p.extend_from_slice(w);
            p.push(t.clone());
            g.eval_q(&p)
        };
        let sum: Vec<Q> = w.iter().zip(&w2).map(|(a, b)| a + b).collect();
        let shifted: Vec<Q> = x.iter().zip(&w2).map(|(a, b)| a + &t * b).collect();
        let lhs = at(&x, &sum);
        let rhs: Vec<Q> = at(&shifted, &w).into_iter().zip(at(&x, &w2)).map(|(a, b)| a + b).collect();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn stair_and_compositional_schemas_agree(elems in proptest::sample::subsequence((1u8..=7).collect::<Vec<_>>(), 0..=5), pick in any::<u32>()) {
        let alpha = elems.iter().enumerate().filter(|(k, _)| pick >> k & 1 == 1).fold(0u32, |a, (_, e)| a | 1 << (e - 1));
        let order = IndexSet::new(elems.clone()).unwrap();
        prop_assert_eq!(stair_schema(&order, alpha).unwrap(), compositional_schema(&elems, alpha).unwrap());
    }

    #[test]
    fn rule_and_closed_symmetric_laws_agree(seed in any::<u64>(), n in 1u8..=2) {
        let mut s = Sampler::new(seed);
        let f = random_map(&mut s, 2, 1, 3);
        let t: Vec<Q> = (0..n).map(|_| s.scalar()).collect();
        let rule = derive_law_sym(&f, &t).unwrap();
        let closed = derive_law_sym_closed(&f, &GsyScales::Const(t)).unwrap();
        prop_assert_eq!(compare_laws(&rule, &closed), None);
    }

    #[test]
    fn symmetric_laws_are_equivariant(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let f = random_map(&mut s, 2, 2, 3);
        let law = derive_law_sym_closed(&f, &GsyScales::Symbolic(2)).unwrap();
        prop_assert_eq!(check_homogeneity(&law, None).unwrap(), None);
        let u = [s.unit(), s.scalar()];
        prop_assert_eq!(check_homogeneity(&law, Some(&u)).unwrap(), None);
        prop_assert_eq!(check_symmetry(&law, &[2, 1]).unwrap(), None);
    }

    #[test]
    fn kcube_count_matches_enumeration(n in 0u8..=7, k in 0u8..=7) {
        prop_assume!(k <= n);
        prop_assert_eq!(kcubes(n, k).len() as u64, count_kcubes(n, k).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 8, ..ProptestConfig::default() })]

    #[test]
    fn reports_round_trip_through_json(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let t = vec![s.scalar(), s.scalar()];
        let p = gsy(&t, 1, None).unwrap();
        let reports = check_presentation(&p, CheckConfig { samples: 5, seed });
        let text = serde_json::to_string(&reports).unwrap();
        let back: Vec<Report> = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, reports);
    }
}
