use knotcover::algebra::ring::rat;
use knotcover::algebra::{cyclotomic_norm, LaurentPoly};
use knotcover::branched::*;
use knotcover::graphs::*;
use knotcover::lambda::*;
use knotcover::seifert::*;
use knotcover::theta::*;
use num_traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_laurent(rng: &mut ChaCha8Rng, span: i64) -> LaurentPoly {
    let mut f = LaurentPoly::zero();
    for e in -span..=span {
        if rng.gen_bool(0.5) {
            f.add_term(e, &rat(rng.gen_range(-3..=3)));
        }
    }
    f
}

fn random_hermitian(rng: &mut ChaCha8Rng, n: usize) -> LambdaMatrix {
    let mut w = LambdaMatrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            let f = random_laurent(rng, 2);
            let f = if i == j { &f + &f.bar() } else { f };
            w.set(j, i, f.bar());
            w.set(i, j, f);
        }
    }
    w
}

fn clover(seed: u64, gmax: usize) -> (SeifertMatrix, LambdaMatrix) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = rng.gen_range(1..=gmax);
    let a = random_seifert(g, 3, &mut rng);
    let w = clover_matrix(&a).unwrap();
    (a, w)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn two_routes_for_varsigma(seed in any::<u64>(), p in 1u64..=8) {
        let (_, w) = clover(seed, 2);
        match varsigma_p(&w, p) {
            Ok(exact) => {
                let numeric: i64 = (0..p as i64).map(|k| varsigma_at(&w, k, p, 1e-9).unwrap()).sum();
                prop_assert_eq!(exact, numeric);
            }
            Err(e) => {
                let singular = matches!(e, knotcover::Error::SingularEvaluation { .. });
                prop_assert!(singular);
            }
        }
    }

    #[test]
    fn arc_route_matches_direct(seed in any::<u64>(), p in 2u64..=24) {
        let (_, w) = clover(seed, 2);
        let delta = normalized_determinant(&w).unwrap();
        prop_assume!(!cyclotomic_norm(&delta, p).is_zero());
        let at_one = signature_exact(&SymRatMatrix::new(w.eval_one()).unwrap()).signature();
        if let Some(s) = root_signature_sum_by_arcs(&w, &delta, p) {
            prop_assert_eq!(s + at_one, subst_signature_direct(&w, p).unwrap());
        }
        prop_assert_eq!(cyclotomic_signature(&w, p).unwrap(), subst_signature_direct(&w, p).unwrap());
    }

    #[test]
    fn substituted_determinant_is_the_norm(seed in any::<u64>(), p in 1u64..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=3);
        let w = random_hermitian(&mut rng, n);
        let s = subst_cycle(&w, p).unwrap();
        prop_assert_eq!(s.determinant(), cyclotomic_norm(&w.determinant(), p));
    }

    #[test]
    fn mu_is_multiplicative(seed in any::<u64>(), p in 1u64..=6) {
        let (_, w) = clover(seed, 2);
        prop_assume!(check_p_regular(&w, p).is_ok());
        let big = signature_exact(&subst_cycle(&w, p).unwrap());
        let small = signature_exact(&SymRatMatrix::new(w.eval_one()).unwrap());
        prop_assert_eq!(big.mu(), p as usize * small.mu());
    }

    #[test]
    fn twisted_substitution_keeps_hermitian(seed in any::<u64>(), p in 1u64..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=3);
        let w = random_hermitian(&mut rng, n);
        let tw = subst_twisted(&w, p).unwrap();
        prop_assert!(tw.is_hermitian());
        let direct = subst_cycle(&w, p).unwrap();
        prop_assert_eq!(&tw.eval_one(), direct.matrix());
    }

    #[test]
    fn seifert_identities(seed in any::<u64>()) {
        let (a, _) = clover(seed, 3);
        prop_assert_eq!(congruence_identity_mismatch(&a), None);
        let d = alexander(&a);
        prop_assert!(d.is_bar_symmetric());
        prop_assert_eq!(d.eval_one(), rat(1));
    }

    #[test]
    fn signature_is_constant_on_arcs(seed in any::<u64>()) {
        let (a, _) = clover(seed, 2);
        for (lo, hi, s) in signature_arcs(&a, 1e-9).unwrap() {
            for frac in [0.2, 0.5, 0.8] {
                let w = num_complex::Complex64::from_polar(1.0, lo + frac * (hi - lo));
                if let Ok(v) = signature_at(&a, w, 1e-9) {
                    prop_assert_eq!(v, s);
                }
            }
        }
    }

    #[test]
    fn torsion_oracle_and_total_signature(seed in any::<u64>(), p in 1u64..=8) {
        let (a, _) = clover(seed, 2);
        if is_p_regular(&a, p) {
            let beta = torsion_order(&a, p).unwrap();
            prop_assert!(beta >= 1.into());
            prop_assert_eq!(&beta, &torsion_order_oracle(&a, p).unwrap());
            prop_assert_eq!(total_sigma_p(&a, p).unwrap(), sigma_p_from_roots(&a, p, 1e-9).unwrap());
        } else {
            prop_assert_eq!(torsion_order(&a, p), Err(knotcover::Error::NotPRegular { p }));
        }
        prop_assert_eq!(torsion_order(&a, 1).unwrap(), 1.into());
    }

    #[test]
    fn residue_relations(seed in any::<u64>(), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = random_monomial_class(3, 4, &mut rng);
        let r = res_p_theta(&q, p).unwrap();
        prop_assert_eq!(&res_p_theta(&q.push(), p).unwrap(), &r);
        for aut in theta_automorphisms() {
            prop_assert_eq!(&res_p_theta(&q.apply(aut), p).unwrap(), &r);
        }
        prop_assert_eq!(&res_p_theta(&q.symmetrize(), p).unwrap(), &r);
        prop_assert!((res_p_theta_numeric(&q, p).unwrap() - knotcover::algebra::ring::rational_to_f64(&r)).abs() < 1e-8);
    }

    #[test]
    fn graph_count_invariants(seed in any::<u64>(), p in 1u64..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b: Vec<i64> = (0..3).map(|_| rng.gen_range(-4..=4)).collect();
        let theta = BeadedGraph::theta([b[0], b[1], b[2]]);
        let eyes = BeadedGraph::eyes([b[2], b[0], b[1]]);
        for g in [&theta, &eyes] {
            let c = count_admissible(g, p).unwrap();
            prop_assert_eq!(c, count_admissible_brute(g, p));
            prop_assert_eq!(count_admissible(&g.push(rng.gen_range(0..2)), p).unwrap(), c);
            prop_assert_eq!(count_admissible(g, 1).unwrap(), 1);
        }
        let u = theta.disjoint_union(&eyes);
        prop_assert_eq!(
            count_admissible(&u, p).unwrap(),
            count_admissible(&theta, p).unwrap() * count_admissible(&eyes, p).unwrap()
        );
        prop_assert!(liftres_check(&u, p).unwrap());
    }
}

#[test]
fn residue_over_p_approaches_torus_average() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let f = knotcover::algebra::RatFun::new(
        LaurentPoly::one(),
        LaurentPoly::from_int_terms(&[(0, 3), (1, -1)]),
    )
    .unwrap();
    let g = knotcover::algebra::RatFun::new(
        LaurentPoly::from_int_terms(&[(0, 1), (2, 1)]),
        LaurentPoly::from_int_terms(&[(0, -4), (1, 1)]),
    )
    .unwrap();
    let mut q = random_monomial_class(2, 3, &mut rng);
    q.terms.push(ThetaTerm::new(
        f,
        g,
        knotcover::algebra::RatFun::one(),
        rat(1),
    ));
    let avg = torus_average(&q, 1e-13).unwrap().to_f64();
    let mut last = f64::INFINITY;
    for p in [10u64, 20, 50, 100, 200] {
        let err = (knotcover::algebra::ring::rational_to_f64(&res_p_theta(&q, p).unwrap())
            / p as f64
            - avg)
            .abs();
        assert!(err <= last + 1e-12, "p = {p}: {err} > {last}");
        last = err;
    }
    assert!(last < 1e-9);
}

#[test]
fn casson_rate_approaches_growth() {
    let q = ThetaClass::from_terms(vec![
        ThetaTerm::monomial(1, 1, 1, rat(2)),
        ThetaTerm::monomial(0, 1, 0, rat(-1)),
    ]);
    for a in [trefoil(), figure_eight()] {
        let limit = casson_growth(&a, &q, 1e-9).unwrap();
        let p = 199;
        let rate = knotcover::algebra::ring::rational_to_f64(&casson_walker(&a, &q, p).unwrap())
            / p as f64;
        assert!((rate - limit).abs() < 0.02);
    }
}

#[test]
fn forest_independence_on_union() {
    let g = BeadedGraph::theta([1, 2, 0]).disjoint_union(&BeadedGraph::eyes([0, 0, 0]));
    let base = res_p_graph(&phi_r(&g).unwrap(), &g, 3).unwrap();
    let forests = g.all_maximal_forests();
    assert_eq!(forests.len(), 3);
    for f in forests {
        assert_eq!(
            res_p_graph(&phi_r_with_forest(&g, &f).unwrap(), &g, 3).unwrap(),
            base
        );
    }
}
