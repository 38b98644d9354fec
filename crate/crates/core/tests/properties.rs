use num_traits::Zero;
use proptest::prelude::*;

use supamp_core::affine_hecke::{affine_length, double_coset_count};
use supamp_core::amplifier::{choose_places, exponent_budget};
use supamp_core::linalg::{mat_mul, q};
use supamp_core::rootdata::{norm_star, norm_star_adjoint, norm_star_weyl_max, weyl_group};
use supamp_core::sympair::{catalog, classify, is_h_large, SymmetricPair};
use supamp_core::{build_root_datum, Coweight, RootDatum, Q};

const DATA: &[&str] = &["A1", "A2", "B2", "C3", "G2", "A3", "GL3", "A1xA1", "SO5", "D4", "PGL2"];

fn datum(i: usize) -> RootDatum {
    build_root_datum(DATA[i % DATA.len()]).unwrap()
}

fn coweight(rd: &RootDatum, raw: &[i64]) -> Coweight {
    Coweight::from_ints(&raw[..rd.lattice_rank()])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn norm_is_symmetric(i in 0usize..64, raw in prop::collection::vec(-5i64..=5, 4)) {
        let rd = datum(i);
        let mu = coweight(&rd, &raw);
        prop_assert_eq!(norm_star(&rd, &mu), norm_star(&rd, &mu.neg()));
    }

    #[test]
    fn norm_is_weyl_invariant(i in 0usize..64, k in 0usize..1000, raw in prop::collection::vec(-5i64..=5, 4)) {
        let rd = datum(i);
        let w = weyl_group(&rd).unwrap();
        let e = &w.elements[k % w.order()];
        let mu = coweight(&rd, &raw);
        let wmu = Coweight::from_ints(&e.act(&mu.to_ints().unwrap()));
        prop_assert_eq!(norm_star(&rd, &mu), norm_star(&rd, &wmu));
    }

    #[test]
    fn norm_routes_agree(i in 0usize..64, raw in prop::collection::vec(-5i64..=5, 4)) {
        let rd = datum(i);
        let mu = coweight(&rd, &raw);
        let n = norm_star(&rd, &mu);
        prop_assert_eq!(n, norm_star_adjoint(&rd, &mu));
        prop_assert_eq!(n, norm_star_weyl_max(&rd, &mu).unwrap());
        prop_assert!(n >= Q::zero());
    }

    #[test]
    fn triangle_inequality(i in 0usize..64, a in prop::collection::vec(-5i64..=5, 4), b in prop::collection::vec(-5i64..=5, 4)) {
        let rd = datum(i);
        let (x, y) = (coweight(&rd, &a), coweight(&rd, &b));
        prop_assert!(norm_star(&rd, &x.add(&y)) <= norm_star(&rd, &x) + norm_star(&rd, &y));
    }

    #[test]
    fn central_directions_are_invisible(n in 2usize..5, c in -4i64..=4, raw in prop::collection::vec(-5i64..=5, 4)) {
        let rd = build_root_datum(&format!("GL{n}")).unwrap();
        let mu = Coweight::from_ints(&raw[..n]);
        let shifted = mu.add(&Coweight::from_ints(&vec![c; n]));
        prop_assert_eq!(norm_star(&rd, &mu), norm_star(&rd, &shifted));
    }

    #[test]
    fn count_at_one_is_orbit_size(i in 0usize..64, raw in prop::collection::vec(-3i64..=3, 4)) {
        let rd = datum(i);
        let mu = coweight(&rd, &raw);
        let w = weyl_group(&rd).unwrap();
        let ints = mu.to_ints().unwrap();
        let mut orbit: Vec<Vec<i64>> = w.elements.iter().map(|e| e.act(&ints)).collect();
        orbit.sort();
        orbit.dedup();
        let c = double_coset_count(&rd, &mu).unwrap();
        prop_assert_eq!(c.eval(1), (orbit.len() as u64).into());
    }

    #[test]
    fn affine_length_of_inverse(i in 0usize..64, k in 0usize..1000, raw in prop::collection::vec(-4i64..=4, 4)) {
        let rd = datum(i);
        let w = weyl_group(&rd).unwrap();
        let e = &w.elements[k % w.order()];
        let inv = w.elements.iter().find(|f| w.compose(e, f).is_identity()).unwrap();
        let lam = coweight(&rd, &raw);
        // (λ, w)⁻¹ = (−w⁻¹λ, w⁻¹)
        let back = Coweight::from_ints(&inv.act(&lam.neg().to_ints().unwrap()));
        prop_assert_eq!(affine_length(&rd, &lam, e).unwrap(), affine_length(&rd, &back, inv).unwrap());
    }

    #[test]
    fn margin_is_symmetric(i in 0usize..13, raw in prop::collection::vec(-4i64..=4, 6)) {
        let pairs = catalog().unwrap();
        let p = &pairs[i % pairs.len()];
        let mu = Coweight::from_ints(&raw[..p.h.lattice_rank()]);
        prop_assert_eq!(p.margin(&mu), p.margin(&mu.neg()));
    }

    #[test]
    fn budget_is_monotone(a in 1i64..50, d0 in 1i64..20, e in 1i64..=8) {
        let eps = Q::new(e, 32);
        let b = |a: i64, d: i64, eps: Q| exponent_budget(q(a), q(1), Q::new(d, 4), q(0), eps).unwrap();
        let base = b(a, d0, eps);
        prop_assert!(b(a + 1, d0, eps).delta < base.delta);
        prop_assert!(b(a, d0 + 1, eps).delta > base.delta);
        if e < 8 {
            prop_assert!(b(a, d0, Q::new(e + 1, 32)).delta < base.delta);
        }
        prop_assert!(base.delta < base.delta_limit);
    }

    #[test]
    fn places_match_trial_division(p in 3u64..100_000) {
        let is_prime = |n: u64| n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0);
        let want: Vec<u64> = (p.div_ceil(2)..p).filter(|&x| is_prime(x)).collect();
        let got: Vec<u64> = choose_places(p, None).unwrap().places.iter().map(|x| x.q).collect();
        prop_assert_eq!(got, want);
    }
}

/// w·θ·w⁻¹ with the torus of H moved along.
fn conjugate(p: &SymmetricPair, k: usize) -> SymmetricPair {
    let w = weyl_group(&p.g).unwrap();
    let e = &w.elements[k % w.order()];
    let inv = w.elements.iter().find(|f| w.compose(e, f).is_identity()).unwrap();
    let theta = p.theta.as_ref().map(|t| mat_mul(&mat_mul(&e.matrix, t), &inv.matrix));
    let embed = mat_mul(&e.matrix, &p.embed);
    SymmetricPair::new(p.label.clone(), p.g.clone(), p.h.clone(), embed, theta).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn classification_survives_weyl_conjugation(i in 0usize..13, k in 0usize..10_000) {
        let pairs = catalog().unwrap();
        let p = &pairs[i % pairs.len()];
        // the SU(5,1) brute force is the slow one; its conjugates add nothing new
        prop_assume!(p.label != "su51");
        let c = conjugate(p, k);
        prop_assert_eq!(classify(p).unwrap().tag, classify(&c).unwrap().tag);
        prop_assert_eq!(is_h_large(p).unwrap().is_some(), is_h_large(&c).unwrap().is_some());
    }
}
