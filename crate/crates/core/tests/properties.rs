#![allow(clippy::needless_range_loop)]

use proptest::prelude::*;

use superspace_core::exact::Rational;
use superspace_core::homology::{betti_table, koszul_tor_auto, minimal_free_resolution, numerator_map, PresentedModule};
use superspace_core::multiplets::{conf_module, hdim, hdim_koszul, one_forms_comparison};
use superspace_core::susy::{derivations_deg0, SupertranslationAlgebra};
use superspace_core::twist::twist;

/// Sparse symmetric gamma with small integer entries, k <= 4 and d <= 4.
fn algebra() -> impl Strategy<Value = SupertranslationAlgebra> {
    (1usize..=4, 1usize..=4)
        .prop_flat_map(|(k, d)| {
            let entry = prop_oneof![3 => Just(0i64), 1 => -2i64..=2];
            (Just(k), Just(d), prop::collection::vec(entry, k * (k + 1) / 2 * d))
        })
        .prop_map(|(k, d, vals)| {
            let mut gamma = vec![vec![vec![Rational::ZERO; d]; k]; k];
            let mut it = vals.into_iter();
            for a in 0..k {
                for b in a..k {
                    for mu in 0..d {
                        let v = Rational::from(it.next().unwrap());
                        gamma[a][b][mu] = v.clone();
                        gamma[b][a][mu] = v;
                    }
                }
            }
            SupertranslationAlgebra::new("random", k, d, gamma).unwrap()
        })
}

fn modules(alg: &SupertranslationAlgebra) -> Vec<PresentedModule> {
    vec![PresentedModule::quotient_ring(alg.ring(), &alg.ideal()).unwrap(), conf_module(alg).unwrap().module]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(25))]

    #[test]
    fn resolution_betti_matches_koszul(alg in algebra()) {
        for m in modules(&alg) {
            let res = minimal_free_resolution(&m, m.ring.nvars() + 1, None).unwrap();
            let kz = koszul_tor_auto(&m, 16).unwrap();
            prop_assert!(res.betti.complete && kz.complete);
            prop_assert_eq!(res.betti.triples(), kz.triples());
            prop_assert_eq!(betti_table(&m, None).unwrap().triples(), kz.triples());
        }
    }

    #[test]
    fn euler_characteristic_is_hilbert_numerator(alg in algebra()) {
        for m in modules(&alg) {
            let hs = m.hilbert_series(None).unwrap();
            prop_assert_eq!(betti_table(&m, None).unwrap().euler_polynomial(), numerator_map(&hs));
        }
    }

    #[test]
    fn defect_plus_syzygies_is_first_koszul_homology(alg in algebra()) {
        for row in one_forms_comparison(&alg, 0, 8, None).unwrap() {
            prop_assert!(row.syzygy_identity(), "{:?}", row);
        }
    }

    #[test]
    fn hdim_formula_matches_top_cohomology(alg in algebra()) {
        prop_assert_eq!(Some(hdim(&alg, None).unwrap()), hdim_koszul(&alg).unwrap());
    }

    #[test]
    fn twisting_preserves_hdim(alg in algebra(), seed in prop::collection::vec(-1i64..=1, 4)) {
        let q: Vec<Rational> = seed.iter().take(alg.k).map(|&v| Rational::from(v)).collect();
        prop_assume!(q.iter().any(|v| !v.is_zero()));
        prop_assume!(alg.is_square_zero(&q).unwrap());
        let r = twist(&alg, &derivations_deg0(&alg).unwrap(), &q).unwrap();
        prop_assert_eq!(hdim(&alg, None).unwrap(), hdim(&r.twisted, None).unwrap());
    }
}
