use gonchar_core::complex_roots::{conjugation_closure_check, gonchar_zeros, SolveOptions};
use gonchar_core::equilibrium::{c_d_closed, c_d_surface, density, density_profile, total_mass};
use gonchar_core::factor::{
    factor_degrees_mod_p, factor_mod_p, irreducibility_certificate, known_divisibility,
    reduced_polynomial, IrredStatus,
};
use gonchar_core::geometry::{classify_zeros, expected_on_circle, Region};
use gonchar_core::gf::GfPoly;
use gonchar_core::mp::horner_complex;
use gonchar_core::poly::{
    gonchar_poly, gonchar_poly_q, shift_at_one, simplicity_polynomial, IntPoly, RatQ,
};
use gonchar_core::real_roots::{critical_distance, isolate_real_roots, refine_root, sturm_count};
use proptest::prelude::*;
use rug::{Float, Integer, Rational};

fn rat(num: i64, den: i64) -> RatQ {
    RatQ::new(num, den).unwrap()
}

fn z_pow(k: u32) -> IntPoly {
    IntPoly::monomial(1, k as usize)
}

fn tol() -> Float {
    Float::with_val(64, Float::i_exp(1, -90))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn monic_of_degree_2d_minus_1(d in 1u32..=300) {
        let g = gonchar_poly(d).unwrap();
        prop_assert_eq!(g.degree(), Some(2 * d as usize - 1));
        prop_assert!(g.is_monic());
    }

    #[test]
    fn reciprocal_symmetry(d in 1u32..=300) {
        let g = gonchar_poly(d).unwrap();
        let r = g.reciprocal().unwrap();
        if d % 2 == 0 {
            prop_assert_eq!(r, g);
        } else {
            let inner = &(&z_pow(d) + &z_pow(d - 1)) * &IntPoly::constant(-2);
            prop_assert_eq!(&g + &r, inner);
        }
    }

    #[test]
    fn derivative_identity_at_rationals(d in 1u32..=50, num in -400i64..400, den in 1i64..97) {
        let g = gonchar_poly(d).unwrap();
        let z = Rational::from((num, den));
        let zr = RatQ::from(z.clone());
        let lhs = (&z * (&z - Rational::from(1))) * g.derivative().eval_exact(&zr).into_rational();
        let zd: Rational = rug::ops::Pow::pow(z.clone(), d);
        let zm1: Rational = rug::ops::Pow::pow(Rational::from(&z - 1), d);
        let p = Rational::from(d as i64 - 1) * zm1 * Rational::from(&zd + 1) + zd * 2;
        let p_eval = simplicity_polynomial(d).unwrap().eval_exact(&zr).into_rational();
        prop_assert_eq!(&p, &p_eval);
        let cofactor = Rational::from(&z * d) - Rational::from(d as i64 - 1);
        prop_assert_eq!(lhs, p + cofactor * g.eval_exact(&zr).into_rational());
    }

    #[test]
    fn derivative_identity_on_zero_set(d in 1u32..=60) {
        let g = gonchar_poly(d).unwrap();
        let z_zm1 = IntPoly::from_i64s(&[0, -1, 1]);
        let defect = &(&z_zm1 * &g.derivative()) - &simplicity_polynomial(d).unwrap();
        prop_assert!(defect.is_divisible_by(&g));
    }

    #[test]
    fn evaluation_anchors(d in 2u32..=300) {
        let g = gonchar_poly(d).unwrap();
        let at = |x: i64| g.eval_integer(&Integer::from(x));
        let pm1 = if d % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(at(1), -2);
        prop_assert_eq!(at(0), pm1);
        prop_assert_eq!(at(2), Integer::from(1) - (Integer::from(1) << d));
        let minus_two_d: Integer = rug::ops::Pow::pow(Integer::from(-2), d);
        prop_assert_eq!(at(-1), minus_two_d * (1 - pm1));
    }

    #[test]
    fn one_sign_change_after_shift(d in 1u32..=120, num in 1i64..50, den in 1i64..50) {
        let inst = gonchar_poly_q(d, &rat(num, den)).unwrap();
        prop_assert_eq!(shift_at_one(&inst).sign_variations(), 1);
    }

    #[test]
    fn divisibility_laws(d in 1u32..=300) {
        let k = known_divisibility(d).unwrap();
        prop_assert_eq!(k.z_plus_one, d % 2 == 0);
        prop_assert_eq!(k.cyclotomic, d % 6 == 0);
    }

    #[test]
    fn modular_factors_multiply_back(d in 2u32..=40, pi in 0usize..12) {
        let p = [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37][pi];
        let g = gonchar_poly(d).unwrap();
        if let (Ok(factors), Ok(pattern)) = (factor_mod_p(&g, p), factor_degrees_mod_p(&g, p)) {
            let product = factors.iter().fold(GfPoly::one(p), |acc, f| acc.mul(f));
            prop_assert_eq!(product, GfPoly::reduce(&g, p).monic());
            let mut degs: Vec<usize> = factors.iter().map(|f| f.degree().unwrap()).collect();
            degs.sort_unstable();
            prop_assert_eq!(&degs, &pattern.degrees);
            let sums = pattern.subset_sums();
            prop_assert!(degs.iter().all(|&k| sums[k]));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, ..ProptestConfig::default() })]

    #[test]
    fn unique_root_beyond_one(d in 1u32..=40, qi in 0usize..4) {
        let q = [rat(1, 2), rat(1, 1), rat(2, 1), rat(5, 1)][qi].clone();
        let inst = gonchar_poly_q(d, &q).unwrap();
        let mut b = 4 + q.ceil();
        while inst.poly.sign_at(&Rational::from(&b)) != std::cmp::Ordering::Greater {
            b *= 2;
        }
        prop_assert_eq!(sturm_count(&inst.poly, &rat(1, 1), &RatQ::from_int(b)).unwrap(), 1);
    }

    #[test]
    fn real_root_layout(d in 1u32..=60) {
        let g = gonchar_poly(d).unwrap();
        let roots = isolate_real_roots(&g).unwrap();
        let third = Rational::from((1, 3));
        let half = Rational::from((1, 2));
        let r1 = critical_distance(d, &rat(1, 1), &tol()).unwrap();
        prop_assert!(r1.lower() > 2 && r1.upper() <= 3);
        if d % 2 == 1 {
            prop_assert_eq!(roots.count(), 1);
        } else {
            prop_assert_eq!(roots.count(), 3);
            let refined: Vec<_> = roots.intervals.iter().map(|i| refine_root(&g, i, &tol()).unwrap()).collect();
            let small = refined.iter().find(|r| r.lower() > third && r.upper() < half);
            prop_assert!(small.is_some());
            let s = small.unwrap();
            prop_assert!(roots.exact.iter().any(|r| *r.as_rational() == -1));
            // self-reciprocal: the small root is the inverse of the large one
            let prod = Float::with_val(256, &s.value * &r1.value);
            let slack = Float::with_val(64, &s.radius * 3u32) + Float::with_val(64, &r1.radius);
            prop_assert!((prod - 1u32).abs() <= slack * 2u32);
        }
    }

    #[test]
    fn zero_sets_are_complete_and_conjugate_closed(d in 1u32..=30) {
        let zs = gonchar_zeros(d, &SolveOptions::default()).unwrap();
        prop_assert_eq!(zs.zeros.len(), 2 * d as usize - 1);
        prop_assert!(conjugation_closure_check(&zs));
        let g = gonchar_poly(d).unwrap();
        for z in &zs.zeros {
            // |G(ζ)| <= |G'(ζ)| r + the Horner rounding term
            let (v, dv, scale) = horner_complex(&g, &z.value);
            let prec = z.value.prec();
            let noise = scale * Float::with_val(prec, Float::i_exp(1, 16 - prec as i32)) * (4 * d);
            prop_assert!(v.abs() <= dv.abs() * &z.radius * 2u32 + noise);
        }
        let real = isolate_real_roots(&g).unwrap();
        prop_assert_eq!(zs.real_zeros().count(), real.count());
        for iso in &real.intervals {
            let r = refine_root(&g, iso, &tol()).unwrap();
            let hits = zs.real_zeros().filter(|z| {
                Float::with_val(256, &z.value.re - &r.value).abs() <= Float::with_val(64, &z.radius + &r.radius)
            }).count();
            prop_assert_eq!(hits, 1);
        }
    }

    #[test]
    fn census_laws(d in 1u32..=40) {
        let c = classify_zeros(d, &SolveOptions::default()).unwrap();
        let n = c.census();
        let delta = usize::from(d % 6 == 0);
        prop_assert_eq!(n.n1 + n.n2 + n.n3 + 2 * delta, 2 * d as usize - 1);
        prop_assert_eq!(n.on_circle, expected_on_circle(d));
        prop_assert_eq!(n.has_intersection_pair, d % 6 == 0);
        prop_assert!(c.theta_disk_agreement());
        if d % 2 == 0 {
            prop_assert_eq!(n.on_circle, n.n1 + 2 * delta);
        }
        for (z, r) in c.zeros.zeros.iter().zip(&c.regions) {
            if matches!(r, Region::OnC0 | Region::IntersectionPoint) {
                prop_assert!(z.value.re.to_f64() <= 0.5 + 1e-20);
            }
        }
    }

    #[test]
    fn no_unexpected_reducible(d in 1u32..=60) {
        let f = reduced_polynomial(d).unwrap();
        let v = irreducibility_certificate(&f, 25).unwrap();
        match &v.status {
            IrredStatus::Reducible(ws) => {
                prop_assert!([4, 8, 12].contains(&d), "d={} reducible", d);
                let product = ws.iter().fold(IntPoly::constant(1), |acc, w| &acc * w);
                prop_assert_eq!(&product, &f);
            }
            _ => prop_assert!(![4, 8, 12].contains(&d)),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn mass_is_one(d in 2u32..=8, r in 1.05f64..6.0, q in 0.25f64..4.0) {
        let m = total_mass(r, q, d, 1e-12).unwrap();
        prop_assert!((m - 1.0).abs() < 1e-10, "mass {}", m);
    }

    #[test]
    fn density_nondecreasing(d in 1u32..=10, r in 1.01f64..10.0, q in 0.1f64..5.0) {
        let prof = density_profile(r, q, d, 1000).unwrap();
        prop_assert!(prof.samples.windows(2).all(|w| w[1].1 >= w[0].1 - 1e-12 * w[0].1.abs().max(1.0)));
    }

    #[test]
    fn sign_law(d in 1u32..=12, qi in 0usize..3, factor in 0.5f64..2.0) {
        let q = [rat(1, 2), rat(1, 1), rat(3, 1)][qi].clone();
        let rq = critical_distance(d, &q, &tol()).unwrap().value.to_f64();
        let r = 1.0 + (rq - 1.0) * factor;
        prop_assume!((r - rq).abs() > 1e-9);
        let eta0 = density(0.0, r, q.to_f64(), d).unwrap();
        prop_assert_eq!(eta0 >= 0.0, r >= rq);
    }

    #[test]
    fn c_d_forms_agree(d in 2u32..=20) {
        let a = c_d_closed(d).unwrap();
        let b = c_d_surface(d).unwrap();
        prop_assert!(((a - b) / a).abs() < 1e-12);
    }
}

#[test]
fn critical_distance_zeroes_the_pole_density() {
    for d in 1..=20u32 {
        for q in [rat(1, 2), rat(1, 1), rat(3, 1)] {
            let rq = critical_distance(d, &q, &tol()).unwrap().value.to_f64();
            let eta0 = density(0.0, rq, q.to_f64(), d).unwrap();
            assert!(eta0.abs() < 1e-10, "d={d} q={q}: {eta0}");
        }
    }
}

#[test]
fn census_sum_law_to_100() {
    let opts = SolveOptions::default();
    for d in (41..=100u32).step_by(7) {
        let c = classify_zeros(d, &opts).unwrap().census();
        assert_eq!(
            c.n1 + c.n2 + c.n3 + 2 * usize::from(d % 6 == 0),
            2 * d as usize - 1,
            "d={d}"
        );
    }
}

#[test]
fn exceptional_degrees_are_reducible() {
    for d in [4u32, 8, 12] {
        let g = gonchar_poly(d).unwrap();
        assert!(
            matches!(
                irreducibility_certificate(&g, 25).unwrap().status,
                IrredStatus::Reducible(_)
            ),
            "d={d}"
        );
    }
}

#[test]
fn q_zero_is_rejected() {
    assert!(gonchar_poly_q(3, &RatQ::zero()).is_err());
}
