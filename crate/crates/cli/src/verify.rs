//! Invariant suites behind `gonchar verify`, sized to finish in seconds.

use std::f64::consts::PI;

use gonchar_core::complex_roots::{conjugation_closure_check, gonchar_zeros, SolveOptions};
use gonchar_core::equilibrium::{c_d, density, total_mass, weighted_potential_residual};
use gonchar_core::factor::{
    exceptional_factorizations, irreducibility_certificate, known_divisibility, reduced_polynomial,
    IrredStatus,
};
use gonchar_core::geometry::{census, expected_on_circle, q_structure_check, REFERENCE_CENSUS};
use gonchar_core::poly::{shift_at_one, simplicity_polynomial};
use gonchar_core::real_roots::{critical_distance, isolate_real_roots, rho};
use gonchar_core::{gonchar_poly, gonchar_poly_q, IntPoly, RatQ, Result};
use rug::{Float, Integer};
use serde::Serialize;

use crate::args::Suite;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(
    suite: &'static str,
    name: &'static str,
    f: impl FnOnce() -> Result<(bool, String)>,
) -> Check {
    let (passed, detail) = match f() {
        Ok(r) => r,
        Err(e) => (false, format!("error: {e}")),
    };
    Check {
        suite,
        name,
        passed,
        detail,
    }
}

/// First `d` in the range where `bad` holds, reported as a failure.
fn all_d(
    range: impl IntoIterator<Item = u32>,
    mut bad: impl FnMut(u32) -> Result<bool>,
) -> Result<(bool, String)> {
    let mut n = 0;
    for d in range {
        if bad(d)? {
            return Ok((false, format!("fails at d={d}")));
        }
        n += 1;
    }
    Ok((true, format!("{n} cases")))
}

pub fn run_suite(s: Suite) -> Vec<Check> {
    match s {
        Suite::All => [
            Suite::Poly,
            Suite::Roots,
            Suite::Factors,
            Suite::Geometry,
            Suite::Equilibrium,
        ]
        .into_iter()
        .flat_map(run_suite)
        .collect(),
        Suite::Poly => poly_suite(),
        Suite::Roots => roots_suite(),
        Suite::Factors => factors_suite(),
        Suite::Geometry => geometry_suite(),
        Suite::Equilibrium => equilibrium_suite(),
    }
}

fn poly_suite() -> Vec<Check> {
    const S: &str = "poly";
    vec![
        check(S, "monic of degree 2d-1", || {
            all_d(1..=120, |d| {
                let g = gonchar_poly(d)?;
                Ok(!(g.is_monic() && g.degree() == Some(2 * d as usize - 1)))
            })
        }),
        check(S, "reciprocal symmetry", || {
            all_d(1..=120, |d| {
                let g = gonchar_poly(d)?;
                let r = g.reciprocal()?;
                Ok(if d % 2 == 0 {
                    r != g
                } else {
                    let inner = &(&IntPoly::monomial(1, d as usize)
                        + &IntPoly::monomial(1, d as usize - 1))
                        * &IntPoly::constant(-2);
                    &g + &r != inner
                })
            })
        }),
        check(S, "evaluation anchors", || {
            all_d(2..=120, |d| {
                let g = gonchar_poly(d)?;
                let at = |x: i64| g.eval_integer(&Integer::from(x));
                let sign = if d % 2 == 0 { 1 } else { -1 };
                let m2: Integer = rug::ops::Pow::pow(Integer::from(-2), d);
                Ok(at(1) != -2
                    || at(0) != sign
                    || at(2) != Integer::from(1) - (Integer::from(1) << d)
                    || at(-1) != m2 * (1 - sign))
            })
        }),
        check(S, "z(z-1)G' = P + (dz-d+1)G", || {
            all_d(1..=50, |d| {
                let g = gonchar_poly(d)?;
                let lhs = &IntPoly::from_i64s(&[0, -1, 1]) * &g.derivative();
                let cof = IntPoly::from_i64s(&[1 - d as i64, d as i64]);
                Ok(lhs != &simplicity_polynomial(d)? + &(&cof * &g))
            })
        }),
        check(S, "one sign change after the shift z = 1 + w", || {
            let qs = [
                RatQ::new(1, 2)?,
                RatQ::from_int(1),
                RatQ::from_int(2),
                RatQ::from_int(5),
            ];
            all_d(1..=60, |d| {
                for q in &qs {
                    if shift_at_one(&gonchar_poly_q(d, q)?).sign_variations() != 1 {
                        return Ok(true);
                    }
                }
                Ok(false)
            })
        }),
    ]
}

fn tol() -> Float {
    Float::with_val(64, Float::i_exp(1, -100))
}

fn roots_suite() -> Vec<Check> {
    const S: &str = "roots";
    vec![
        check(S, "rho(2) is the golden ratio", || {
            let r = rho(2, &tol())?;
            let phi = (Float::with_val(256, 5).sqrt() + 1u32) / 2u32;
            let err = Float::with_val(256, &r.value - &phi).abs().to_f64();
            Ok((err < 1e-12, format!("error {err:e}")))
        }),
        check(S, "rho(4) is the plastic number", || {
            let r = rho(4, &tol())?;
            let s69 = Float::with_val(256, 69).sqrt();
            let a = Float::with_val(256, 9 - s69.clone()).cbrt();
            let b = Float::with_val(256, 9 + s69).cbrt();
            let den = Float::with_val(256, 2).cbrt() * Float::with_val(256, 9).cbrt();
            let plastic = (a + b) / den;
            let err = Float::with_val(256, &r.value - &plastic).abs().to_f64();
            Ok((err < 1e-12, format!("error {err:e}")))
        }),
        check(S, "R_1(1) = 3 exactly", || {
            let r = critical_distance(1, &RatQ::from_int(1), &tol())?;
            let ok = r.exact.as_ref().is_some_and(|e| *e.as_rational() == 3);
            Ok((ok, format!("exact = {:?}", r.exact.map(|e| e.to_string()))))
        }),
        check(S, "R_1(d) in (2, 3] and decreasing", || {
            let mut prev: Option<Float> = None;
            all_d(1..=40, |d| {
                let r = critical_distance(d, &RatQ::from_int(1), &tol())?;
                let bad = !(r.lower() > 2 && r.upper() <= 3)
                    || prev.as_ref().is_some_and(|p| r.upper() >= *p);
                prev = Some(r.lower());
                Ok(bad)
            })
        }),
        check(S, "real zeros: one for odd d, three for even d", || {
            all_d(1..=60, |d| {
                Ok(
                    isolate_real_roots(&gonchar_poly(d)?)?.count()
                        != if d % 2 == 1 { 1 } else { 3 },
                )
            })
        }),
        check(S, "2d-1 disjoint disks, closed under conjugation", || {
            let opts = SolveOptions::default();
            all_d(1..=20, |d| {
                let zs = gonchar_zeros(d, &opts)?;
                Ok(zs.zeros.len() != 2 * d as usize - 1 || !conjugation_closure_check(&zs))
            })
        }),
    ]
}

fn factors_suite() -> Vec<Check> {
    const S: &str = "factors";
    vec![
        check(
            S,
            "z+1 divides iff d even; z^2-z+1 divides iff 6 | d",
            || {
                all_d(1..=150, |d| {
                    let k = known_divisibility(d)?;
                    Ok(k.z_plus_one != (d % 2 == 0) || k.cyclotomic != (d % 6 == 0))
                })
            },
        ),
        check(S, "exceptional factorizations multiply back", || {
            let t = exceptional_factorizations()?;
            Ok((t.len() == 3, format!("{} entries", t.len())))
        }),
        check(S, "reducible only for d in {4, 8, 12}", || {
            all_d(1..=30, |d| {
                let v = irreducibility_certificate(&reduced_polynomial(d)?, 25)?;
                let reducible = matches!(v.status, IrredStatus::Reducible(_));
                Ok(reducible != [4, 8, 12].contains(&d))
            })
        }),
    ]
}

fn geometry_suite() -> Vec<Check> {
    const S: &str = "geometry";
    vec![
        check(S, "census matches the reference table", || {
            let opts = SolveOptions::default();
            for &(d, n1, n2, n3, pair) in &REFERENCE_CENSUS {
                let c = census(d, &opts)?;
                if (c.n1, c.n2, c.n3, c.has_intersection_pair) != (n1, n2, n3, pair) {
                    return Ok((
                        false,
                        format!(
                            "d={d}: got ({}, {}, {}, {})",
                            c.n1, c.n2, c.n3, c.has_intersection_pair
                        ),
                    ));
                }
            }
            Ok((true, format!("{} rows", REFERENCE_CENSUS.len())))
        }),
        check(S, "on-circle count law", || {
            let opts = SolveOptions::default();
            all_d(1..=30, |d| {
                Ok(census(d, &opts)?.on_circle != expected_on_circle(d))
            })
        }),
        check(S, "auxiliary polynomial zero structure", || {
            all_d(3..=30, |d| Ok(!q_structure_check(d)?.passed()))
        }),
    ]
}

fn equilibrium_suite() -> Vec<Check> {
    const S: &str = "equilibrium";
    vec![
        check(S, "total mass is one", || {
            let mut worst: f64 = 0.0;
            for d in [2, 3, 4, 8] {
                for r in [1.05, 1.5, 2.0, 5.0] {
                    for q in [0.5, 1.0, 3.0] {
                        worst = worst.max((total_mass(r, q, d, 1e-12)? - 1.0).abs());
                    }
                }
            }
            Ok((worst < 1e-10, format!("max deviation {worst:e}")))
        }),
        check(S, "density vanishes at the pole at R = R_q", || {
            let mut worst: f64 = 0.0;
            for d in 1..=20 {
                for q in [RatQ::new(1, 2)?, RatQ::from_int(1), RatQ::from_int(3)] {
                    let rq = critical_distance(d, &q, &Float::with_val(64, Float::i_exp(1, -80)))?
                        .value
                        .to_f64();
                    worst = worst.max(density(0.0, rq, q.to_f64(), d)?.abs());
                }
            }
            Ok((worst < 1e-10, format!("max |density| {worst:e}")))
        }),
        check(S, "weighted potential is constant on S^2", || {
            let pts = [PI / 4.0, PI / 2.0, 3.0 * PI / 4.0];
            let mut worst: f64 = 0.0;
            for r in [1.5, 2.0, 3.0] {
                worst = worst.max(weighted_potential_residual(r, 1.0, &pts, 1e-10)?);
            }
            Ok((worst < 1e-6, format!("max residual {worst:e}")))
        }),
        check(S, "C_d closed forms agree", || {
            for d in 2..=20 {
                c_d(d)?;
            }
            Ok((true, "d = 2..20".to_string()))
        }),
    ]
}
