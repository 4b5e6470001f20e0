//! Signed equilibrium on `S^d` in the field of a point charge `q` placed at
//! `a = R p` above the North Pole `p`.
//!
//! Everything axially symmetric is reduced to an integral over the polar
//! angle `t` against the normalised weight `w_d(t)`.

use std::collections::BinaryHeap;
use std::f64::consts::PI;

use libm::{lgamma, tgamma as gamma};
use rayon::prelude::*;

use crate::error::{GoncharError, Result};

/// A point of `S^d` at polar angle `t` from the North Pole.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AxialPoint {
    pub t: f64,
    pub d: u32,
}

impl AxialPoint {
    pub fn new(t: f64, d: u32) -> Result<Self> {
        if !(0.0..=PI).contains(&t) || d == 0 {
            return Err(GoncharError::Domain(format!(
                "axial point needs t in [0, pi] and d >= 1, got t={t}, d={d}"
            )));
        }
        Ok(AxialPoint { t, d })
    }

    /// `|x - R p|^2`
    pub fn dist_sq_to_charge(&self, r: f64) -> f64 {
        1.0 - 2.0 * r * self.t.cos() + r * r
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DensityProfile {
    pub d: u32,
    pub r: f64,
    pub q: f64,
    pub samples: Vec<(f64, f64)>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CapReport {
    /// polar angle where the density changes sign; 0 when it never does
    pub t0: f64,
    pub positive_mass: f64,
}

/// Potential of the normalised surface measure of `S^d` at distance `r`
/// from the centre.
pub fn uniform_potential(r: f64, d: u32) -> Result<f64> {
    if r.is_nan() || r < 0.0 || d == 0 {
        return Err(GoncharError::Domain(format!(
            "uniform potential needs r >= 0 and d >= 1, got r={r}, d={d}"
        )));
    }
    Ok(if r <= 1.0 { 1.0 } else { r.powi(1 - d as i32) })
}

fn check_field(r: f64, q: f64, d: u32) -> Result<()> {
    if r.is_nan() || r <= 1.0 {
        return Err(GoncharError::Domain(format!(
            "charge must sit outside the sphere, got R={r}"
        )));
    }
    if q.is_nan() || q <= 0.0 {
        return Err(GoncharError::Domain(format!(
            "charge must be positive, got q={q}"
        )));
    }
    if d == 0 {
        return Err(GoncharError::Domain("sphere dimension must be >= 1".into()));
    }
    Ok(())
}

/// `1 + q/R^(d-1)`, the constant value of the weighted potential.
pub fn f_q(r: f64, q: f64, d: u32) -> f64 {
    1.0 + q / r.powi(d as i32 - 1)
}

fn density_unchecked(t: f64, r: f64, q: f64, d: u32) -> f64 {
    let dist2 = 1.0 - 2.0 * r * t.cos() + r * r;
    f_q(r, q, d) - q * (r * r - 1.0) / dist2.powf((d as f64 + 1.0) / 2.0)
}

/// Density of the signed equilibrium with respect to the normalised surface
/// measure.
pub fn density(t: f64, r: f64, q: f64, d: u32) -> Result<f64> {
    check_field(r, q, d)?;
    Ok(density_unchecked(t, r, q, d))
}

/// `Γ((d+1)/2) / (√π Γ(d/2))`
fn weight_constant(d: u32) -> f64 {
    let d = d as f64;
    (lgamma((d + 1.0) / 2.0) - lgamma(d / 2.0)).exp() / PI.sqrt()
}

/// Normalised weight `w_d(t)` of the polar-angle projection of `σ_d`.
pub fn polar_weight(t: f64, d: u32) -> f64 {
    weight_constant(d) * t.sin().powi(d as i32 - 1)
}

pub fn density_profile(r: f64, q: f64, d: u32, n: usize) -> Result<DensityProfile> {
    check_field(r, q, d)?;
    let n = n.max(2);
    let samples = (0..n)
        .map(|i| {
            let t = PI * i as f64 / (n - 1) as f64;
            (t, density_unchecked(t, r, q, d))
        })
        .collect();
    Ok(DensityProfile { d, r, q, samples })
}

// Gauss–Kronrod 10/21 nodes and weights on [-1, 1], digits as tabulated.
#[allow(clippy::excessive_precision)]
const GK_X: [f64; 11] = [
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.000000000000000000000000000000000,
];
#[allow(clippy::excessive_precision)]
const GK_WK: [f64; 11] = [
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077746521700838,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
];
#[allow(clippy::excessive_precision)]
const GK_WG: [f64; 5] = [
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
];

fn gk21(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = GK_WK[10] * fc;
    let mut gauss = 0.0;
    for i in 0..10 {
        let dx = h * GK_X[i];
        let s = f(c - dx) + f(c + dx);
        kron += GK_WK[i] * s;
        if i % 2 == 1 {
            gauss += GK_WG[i / 2] * s;
        }
    }
    (kron * h, ((kron - gauss) * h).abs())
}

struct Piece {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Piece {
    fn eq(&self, o: &Self) -> bool {
        self.err == o.err
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Piece {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        self.err.total_cmp(&o.err)
    }
}

/// Globally adaptive Gauss–Kronrod quadrature to an absolute tolerance.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<f64> {
    const MAX_PIECES: usize = 20_000;
    if a == b {
        return Ok(0.0);
    }
    let (value, err) = gk21(&f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Piece { a, b, value, err });
    let (mut total, mut total_err) = (value, err);
    while total_err > tol {
        if heap.len() >= MAX_PIECES {
            return Err(GoncharError::NumericFailure(format!(
                "quadrature on [{a}, {b}] stalled at error {total_err:e} (target {tol:e})"
            )));
        }
        let worst = heap.pop().unwrap();
        let m = 0.5 * (worst.a + worst.b);
        let (v1, e1) = gk21(&f, worst.a, m);
        let (v2, e2) = gk21(&f, m, worst.b);
        total += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.err;
        heap.push(Piece {
            a: worst.a,
            b: m,
            value: v1,
            err: e1,
        });
        heap.push(Piece {
            a: m,
            b: worst.b,
            value: v2,
            err: e2,
        });
        if !total.is_finite() {
            return Err(GoncharError::NumericFailure(
                "quadrature produced a non-finite value".into(),
            ));
        }
    }
    // resum to shed the drift of the running total
    Ok(heap.iter().map(|p| p.value).sum())
}

/// Total mass of the signed equilibrium; equals 1.
pub fn total_mass(r: f64, q: f64, d: u32, quad_tol: f64) -> Result<f64> {
    check_field(r, q, d)?;
    mass_on(0.0, r, q, d, quad_tol)
}

fn mass_on(t0: f64, r: f64, q: f64, d: u32, quad_tol: f64) -> Result<f64> {
    let c = weight_constant(d);
    let f = |t: f64| density_unchecked(t, r, q, d) * c * t.sin().powi(d as i32 - 1);
    // the bump sits within about R - 1 of the pole
    let split = (4.0 * (r - 1.0)).clamp(t0, PI);
    if split > t0 && split < PI {
        Ok(integrate(f, t0, split, quad_tol / 2.0)? + integrate(f, split, PI, quad_tol / 2.0)?)
    } else {
        integrate(f, t0, PI, quad_tol)
    }
}

/// Closed-form boundary of the positive cap for `d = 2`:
/// `s^3 = q(R^2 - 1)/(1 + q/R)`, `cos t0 = (1 + R^2 - s^2)/(2R)`.
pub fn cap_boundary_d2(r: f64, q: f64) -> Result<f64> {
    check_field(r, q, 2)?;
    let s = (q * (r * r - 1.0) / (1.0 + q / r)).cbrt();
    let c = (1.0 + r * r - s * s) / (2.0 * r);
    Ok(if c >= 1.0 { 0.0 } else { c.max(-1.0).acos() })
}

/// Support boundary and mass of the positive part of the signed equilibrium.
pub fn positive_cap(r: f64, q: f64, d: u32, tol: f64) -> Result<CapReport> {
    check_field(r, q, d)?;
    if density_unchecked(0.0, r, q, d) >= 0.0 {
        return Ok(CapReport {
            t0: 0.0,
            positive_mass: mass_on(0.0, r, q, d, tol)?,
        });
    }
    // the density increases with t and is positive at the South Pole
    let (mut lo, mut hi) = (0.0f64, PI);
    while hi - lo > 4.0 * f64::EPSILON * hi.max(1.0) {
        let m = 0.5 * (lo + hi);
        if m == lo || m == hi {
            break;
        }
        if density_unchecked(m, r, q, d) < 0.0 {
            lo = m;
        } else {
            hi = m;
        }
    }
    let t0 = 0.5 * (lo + hi);
    Ok(CapReport {
        t0,
        positive_mass: mass_on(t0, r, q, d, tol)?,
    })
}

/// Positive cap as `R` varies, in parallel.
pub fn cap_scan(rs: &[f64], q: f64, d: u32, tol: f64) -> Result<Vec<(f64, CapReport)>> {
    rs.par_iter()
        .map(|&r| Ok((r, positive_cap(r, q, d, tol)?)))
        .collect()
}

/// Largest deviation of the weighted potential `V^η + Q` from `1 + q/R` on
/// `S^2` at the given polar angles.
///
/// `V^η(x)` is integrated in geodesic polar coordinates `(α, β)` centred at
/// `x`; there `|x - y|^-1 dσ = cos(α/2) dα dβ / 4π`, so the kernel singularity
/// disappears from the integrand.
pub fn weighted_potential_residual(r: f64, q: f64, points: &[f64], quad_tol: f64) -> Result<f64> {
    check_field(r, q, 2)?;
    let fq = f_q(r, q, 2);
    let residuals: Vec<f64> = points
        .par_iter()
        .map(|&t| -> Result<f64> {
            if !(0.0..=PI).contains(&t) {
                return Err(GoncharError::Domain(format!(
                    "polar angle {t} outside [0, pi]"
                )));
            }
            let v = potential_s2(t, r, q, quad_tol)?;
            let field = q / (1.0 - 2.0 * r * t.cos() + r * r).sqrt();
            Ok((v + field - fq).abs())
        })
        .collect::<Result<_>>()?;
    Ok(residuals.into_iter().fold(0.0, f64::max))
}

fn potential_s2(t: f64, r: f64, q: f64, quad_tol: f64) -> Result<f64> {
    let (st, ct) = t.sin_cos();
    let fq = f_q(r, q, 2);
    let k = q * (r * r - 1.0);
    let inner_tol = quad_tol / 8.0;
    let failed = std::cell::Cell::new(None);
    let outer = |alpha: f64| -> f64 {
        let (sa, ca) = alpha.sin_cos();
        // height of y above the equator; symmetric in β ↦ -β
        let ring = |beta: f64| {
            let z = ca * ct - sa * beta.cos() * st;
            k / (1.0 - 2.0 * r * z + r * r).powf(1.5)
        };
        match integrate(ring, 0.0, PI, inner_tol) {
            Ok(v) => (fq * PI - v) * (alpha / 2.0).cos(),
            Err(e) => {
                failed.set(Some(e));
                0.0
            }
        }
    };
    // 2 ∫_0^π dβ over 4π
    let v = integrate(outer, 0.0, PI, quad_tol * 2.0 * PI)? / (2.0 * PI);
    if let Some(e) = failed.into_inner() {
        return Err(e);
    }
    Ok(v)
}

/// `C_d` in the closed form `π^((d+3)/2) Γ((d-1)/2) / Γ(d/2)^2`.
pub fn c_d_closed(d: u32) -> Result<f64> {
    check_cd(d)?;
    let df = d as f64;
    Ok(PI.powf((df + 3.0) / 2.0) * gamma((df - 1.0) / 2.0) / gamma(df / 2.0).powi(2))
}

/// `C_d` as `ω_d π/(d-1) [Γ((d+1)/2)/Γ(d/2)]^2` with `ω_d = 2π^((d+1)/2)/Γ((d+1)/2)`.
pub fn c_d_surface(d: u32) -> Result<f64> {
    check_cd(d)?;
    let df = d as f64;
    let omega = 2.0 * PI.powf((df + 1.0) / 2.0) / gamma((df + 1.0) / 2.0);
    let ratio = gamma((df + 1.0) / 2.0) / gamma(df / 2.0);
    Ok(omega * PI / (df - 1.0) * ratio * ratio)
}

/// `C_d`, with both printed forms evaluated and required to agree.
pub fn c_d(d: u32) -> Result<f64> {
    let a = c_d_closed(d)?;
    let b = c_d_surface(d)?;
    if ((a - b) / a).abs() > 1e-12 {
        return Err(GoncharError::Consistency(format!(
            "C_{d}: closed form {a} and surface form {b} disagree"
        )));
    }
    Ok(a)
}

fn check_cd(d: u32) -> Result<()> {
    if d < 2 {
        return Err(GoncharError::Domain(format!("C_d needs d >= 2, got {d}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_potential_values() {
        assert_eq!(uniform_potential(0.5, 7).unwrap(), 1.0);
        assert_eq!(uniform_potential(2.0, 2).unwrap(), 0.5);
        assert_eq!(uniform_potential(1.0, 3).unwrap(), 1.0);
        assert!(uniform_potential(-1.0, 3).is_err());
    }

    #[test]
    fn density_values() {
        assert_eq!(density(0.0, 2.0, 1.0, 2).unwrap(), -1.5);
        assert!((density(1.0, 1e6, 1.0, 2).unwrap() - 1.0).abs() < 1e-5);
        assert!(density(0.0, 1.0, 1.0, 2).is_err());
    }

    #[test]
    fn masses() {
        for (r, q, d) in [(2.0, 1.0, 2), (1.01, 1.0, 4), (10.0, 0.5, 3)] {
            let m = total_mass(r, q, d, 1e-12).unwrap();
            assert!((m - 1.0).abs() < 1e-10, "R={r} q={q} d={d}: {m}");
        }
        // weight integrates to one
        let w = integrate(|t| polar_weight(t, 5), 0.0, PI, 1e-14).unwrap();
        assert!((w - 1.0).abs() < 1e-13);
    }

    #[test]
    fn cap_d2_closed_form() {
        let cap = positive_cap(2.0, 1.0, 2, 1e-12).unwrap();
        let expect = ((5.0 - 2f64.powf(2.0 / 3.0)) / 4.0).acos();
        assert!((cap.t0 - expect).abs() < 1e-12);
        assert!((cap_boundary_d2(2.0, 1.0).unwrap() - expect).abs() < 1e-14);
        assert!(cap.positive_mass > 1.0);
        let far = positive_cap(10.0, 1.0, 2, 1e-12).unwrap();
        assert_eq!(far.t0, 0.0);
        assert!((far.positive_mass - 1.0).abs() < 1e-10);
    }

    #[test]
    fn potential_constant_on_sphere() {
        let pts = [PI / 4.0, PI / 2.0, 3.0 * PI / 4.0];
        for r in [2.0, 3.0] {
            assert!(weighted_potential_residual(r, 1.0, &pts, 1e-10).unwrap() < 1e-6);
        }
        assert!(weighted_potential_residual(2.0, 1e-8, &pts, 1e-10).unwrap() < 1e-6);
    }

    #[test]
    fn c_d_values() {
        assert!((c_d(2).unwrap() / PI.powi(3) - 1.0).abs() < 1e-12);
        assert!((c_d(3).unwrap() / (4.0 * PI * PI) - 1.0).abs() < 1e-12);
        for d in 2..=20 {
            c_d(d).unwrap();
        }
        assert!(c_d(1).is_err());
    }
}
