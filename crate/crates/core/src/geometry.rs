//! Where the zeros of `G(d;z)` sit: the regions `A1`, `A2`, `A3`, the exact
//! unit-circle zeros for even `d`, the limit set `Γ`, and the auxiliary
//! polynomial from the simplicity argument.

use std::fmt;

use rayon::prelude::*;
use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

use crate::complex_roots::{gonchar_zeros, CertifiedZero, SolveOptions, ZeroSet};
use crate::error::{GoncharError, Result};
use crate::mp::ComplexMP;
use crate::poly::IntPoly;
use crate::real_roots::isolate_real_roots;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Region {
    /// `Re z < 1/2`, `|z - 1| > 1`
    A1,
    /// `|z| < 1`, `|z - 1| < 1`
    A2,
    /// `Re z > 1/2`, `|z| > 1`
    A3,
    /// exactly on the unit circle (even `d`)
    OnC0,
    /// `(1 ± i√3)/2`
    IntersectionPoint,
}

impl Region {
    pub fn as_str(self) -> &'static str {
        match self {
            Region::A1 => "A1",
            Region::A2 => "A2",
            Region::A3 => "A3",
            Region::OnC0 => "OnC0",
            Region::IntersectionPoint => "IntersectionPoint",
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Region {
    type Err = GoncharError;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "A1" => Region::A1,
            "A2" => Region::A2,
            "A3" => Region::A3,
            "OnC0" => Region::OnC0,
            "IntersectionPoint" => Region::IntersectionPoint,
            _ => return Err(GoncharError::Domain(format!("unknown region {s:?}"))),
        })
    }
}

/// Zero counts per region; on-circle zeros are tallied into `n1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub d: u32,
    pub n: usize,
    pub n1: usize,
    pub n2: usize,
    pub n3: usize,
    pub on_circle: usize,
    pub has_intersection_pair: bool,
}

/// Published region counts `(d, N1, N2, N3, intersection pair)`.
pub const REFERENCE_CENSUS: [(u32, usize, usize, usize, bool); 13] = [
    (1, 0, 0, 1, false),
    (2, 1, 1, 1, false),
    (3, 2, 2, 1, false),
    (4, 1, 3, 3, false),
    (5, 2, 4, 3, false),
    (6, 3, 3, 3, true),
    (7, 4, 4, 5, false),
    (8, 5, 5, 5, false),
    (9, 6, 6, 5, false),
    (10, 5, 7, 7, false),
    (11, 6, 8, 7, false),
    (12, 7, 7, 7, true),
    (42, 27, 27, 27, true),
];

/// `4(floor((d-1)/6) + [6 | d]) + 1` for even `d`, 0 for odd `d`.
pub fn expected_on_circle(d: u32) -> usize {
    if d % 2 == 1 {
        0
    } else {
        4 * ((d as usize - 1) / 6 + usize::from(d.is_multiple_of(6))) + 1
    }
}

fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

fn sqrt3_half(prec: u32) -> Float {
    Float::with_val(prec, 3).sqrt() / 2u32
}

/// `(1 ± i√3)/2`
fn intersection_points(prec: u32) -> [ComplexMP; 2] {
    let h = sqrt3_half(prec);
    let half = Float::with_val(prec, 0.5);
    [
        ComplexMP::new(half.clone(), h.clone()),
        ComplexMP::new(half, -h),
    ]
}

/// One certified solution of the theta equation.
#[derive(Clone, Debug, PartialEq)]
pub struct ThetaSolution {
    pub theta: Float,
    pub radius: Float,
}

impl ThetaSolution {
    pub fn point(&self) -> ComplexMP {
        let (s, c) = self.theta.clone().sin_cos(Float::new(self.theta.prec()));
        ComplexMP::new(c, s)
    }
}

/// Solutions in `(0, π]` of `(-1)^(d/2) cos((d-1)θ/2) = cos(θ/2) / (2 sin(θ/2))^d`.
#[derive(Clone, Debug, PartialEq)]
pub struct ThetaSolutionSet {
    pub d: u32,
    pub thetas: Vec<ThetaSolution>,
    pub precision: u32,
}

impl ThetaSolutionSet {
    /// Zeros on `C0`: each solution below `π` together with its conjugate, plus `-1`.
    pub fn on_circle_count(&self) -> usize {
        2 * self.thetas.len() - 1
    }
}

/// `f - g` and its derivative.
fn theta_h(d: u32, t: &Float) -> (Float, Float) {
    let prec = t.prec();
    let half = Float::with_val(prec, t / 2u32);
    let (s, c) = half.sin_cos(Float::new(prec));
    let big_s = Float::with_val(prec, &s * 2u32);
    let s_pow = Float::with_val(prec, Pow::pow(&big_s, -(d as i32)));
    let f = Float::with_val(prec, &c * &s_pow);
    let arg = Float::with_val(prec, t * (d - 1)) / 2u32;
    let (sg, cg) = arg.sin_cos(Float::new(prec));
    let sign: i32 = if (d / 2).is_multiple_of(2) { 1 } else { -1 };
    let g = cg * sign;
    // f' = -(s/2) S^-d - d c^2 S^(-d-1)
    let fp = -(Float::with_val(prec, &s * &s_pow) / 2u32)
        - Float::with_val(prec, &c * &c) * d * Float::with_val(prec, &s_pow / &big_s);
    let gp = sg * (-sign) * Float::with_val(prec, (d - 1) as f64 / 2.0);
    (f - g, fp - gp)
}

/// Sign of `f - g` with a rounding margin; `None` when too close to call.
fn theta_sign(d: u32, t: &Float) -> Option<bool> {
    let prec = t.prec();
    let (h, _) = theta_h(d, t);
    let margin = Float::with_val(prec, Float::i_exp(1, 12 - prec as i32)) * d;
    if h > margin {
        Some(true)
    } else if h < -margin {
        Some(false)
    } else {
        None
    }
}

/// Working precision for the theta equation: `f` decays like `2^-d` near `π`.
fn theta_precision(d: u32, tol: &Float) -> u32 {
    let tol_bits = (-tol.get_exp().unwrap_or(0)).max(0) as u32;
    ((d + tol_bits + 96).div_ceil(64) * 64).max(128)
}

/// Certified refinement of a root of `f - g` bracketed by `[lo, hi]`
/// (opposite certified signs at the ends).
fn refine_theta(d: u32, lo: Float, hi: Float, tol: &Float, prec: u32) -> Result<ThetaSolution> {
    let (mut lo, mut hi) = (lo, hi);
    let s_lo =
        theta_sign(d, &lo).ok_or_else(|| numeric("theta bracket end too close to a root"))?;
    // exact bisection to a narrow bracket
    for _ in 0..48 {
        let m = Float::with_val(prec, &lo + &hi) / 2u32;
        match theta_sign(d, &m) {
            Some(s) if s == s_lo => lo = m,
            Some(_) => hi = m,
            None => {
                lo = m.clone();
                hi = m;
                break;
            }
        }
    }
    let mut t = Float::with_val(prec, &lo + &hi) / 2u32;
    for _ in 0..(prec.ilog2() + 8) {
        let (h, hp) = theta_h(d, &t);
        if hp.is_zero() {
            break;
        }
        let step = Float::with_val(prec, &h / &hp);
        t -= &step;
        if step.is_zero()
            || Float::with_val(prec, step.abs_ref())
                < Float::with_val(prec, Float::i_exp(1, 4 - prec as i32))
        {
            break;
        }
    }
    let (_, hp) = theta_h(d, &t);
    let base = Float::with_val(prec, Float::i_exp(1, 16 - prec as i32)) * d;
    let mut rho = (base / hp.abs()).max(&Float::with_val(prec, Float::i_exp(1, 8 - prec as i32)));
    while rho <= *tol {
        let a = Float::with_val(prec, &t - &rho);
        let b = Float::with_val(prec, &t + &rho);
        if let (Some(sa), Some(sb)) = (theta_sign(d, &a), theta_sign(d, &b)) {
            if sa != sb {
                return Ok(ThetaSolution {
                    theta: t,
                    radius: rho,
                });
            }
        }
        rho *= 4u32;
    }
    Err(numeric(&format!(
        "theta root for d={d} not certified at {prec} bits"
    )))
}

fn numeric(msg: &str) -> GoncharError {
    GoncharError::NumericFailure(msg.to_string())
}

/// Golden-section minimiser of a convex function on `[a, b]`.
fn golden_min(d: u32, a: &Float, b: &Float) -> Float {
    let prec = a.prec();
    let ratio = Float::with_val(prec, 5).sqrt() - 1u32;
    let ratio = Float::with_val(prec, ratio / 2u32);
    let (mut a, mut b) = (a.clone(), b.clone());
    for _ in 0..120 {
        let w = Float::with_val(prec, &b - &a);
        let x1 = Float::with_val(prec, &b - Float::with_val(prec, &w * &ratio));
        let x2 = Float::with_val(prec, &a + Float::with_val(prec, &w * &ratio));
        if theta_h(d, &x1).0 < theta_h(d, &x2).0 {
            b = x2;
        } else {
            a = x1;
        }
    }
    Float::with_val(prec, &a + &b) / 2u32
}

/// All solutions of the theta equation in `(0, π]` for even `d`.
///
/// Below the point where `f = 1` there are none. Above it the interval is cut
/// at the zeros `(2k+1)π/(d-1)` of `g`; only pieces where `g > 0` can hold
/// solutions besides `θ = π`, and there `f - g` is convex, so its minimum
/// decides between zero and two roots.
pub fn theta_solutions(d: u32, tol: &Float) -> Result<ThetaSolutionSet> {
    if d < 2 || d % 2 == 1 {
        return Err(GoncharError::Domain(format!(
            "theta equation needs even d >= 2, got {d}"
        )));
    }
    let prec = theta_precision(d, tol);
    let pi = pi(prec);
    let start = f_equals_one(d, prec);
    let mut cuts = vec![start.clone()];
    for k in 0..d {
        let t = Float::with_val(prec, &pi * (2 * k + 1)) / (d - 1);
        if t > start && t < pi {
            cuts.push(t);
        }
    }
    cuts.push(pi.clone());
    let sign: i32 = if (d / 2).is_multiple_of(2) { 1 } else { -1 };
    let pieces: Vec<(Float, Float)> = cuts
        .windows(2)
        .map(|w| (w[0].clone(), w[1].clone()))
        .collect();
    let found: Vec<Vec<ThetaSolution>> = pieces
        .par_iter()
        .map(|(a, b)| -> Result<Vec<ThetaSolution>> {
            let mid = Float::with_val(prec, a + b) / 2u32;
            let g_mid = Float::with_val(prec, &mid * (d - 1)) / 2u32;
            if g_mid.cos() * sign <= 0 {
                return Ok(Vec::new());
            }
            let m = golden_min(d, a, b);
            match theta_sign(d, &m) {
                Some(true) => Ok(Vec::new()),
                None => Err(GoncharError::UnresolvedClassification(format!(
                    "theta equation for d={d} has a near-tangency"
                ))),
                Some(false) => Ok(vec![
                    refine_theta(d, a.clone(), m.clone(), tol, prec)?,
                    refine_theta(d, m, b.clone(), tol, prec)?,
                ]),
            }
        })
        .collect::<Result<_>>()?;
    let mut thetas: Vec<ThetaSolution> = found.into_iter().flatten().collect();
    thetas.push(ThetaSolution {
        theta: pi,
        radius: Float::new(prec),
    });
    thetas.sort_by(|a, b| a.theta.partial_cmp(&b.theta).unwrap());
    let expected = 2 * ((d as usize - 1) / 6 + usize::from(d.is_multiple_of(6))) + 1;
    if thetas.len() != expected {
        return Err(GoncharError::Consistency(format!(
            "theta equation for d={d}: found {} solutions in (0, pi], expected {expected}",
            thetas.len()
        )));
    }
    Ok(ThetaSolutionSet {
        d,
        thetas,
        precision: prec,
    })
}

/// A point just below the solution of `f(θ) = 1`; `f > 1 >= |g|` to its left.
fn f_equals_one(d: u32, prec: u32) -> Float {
    let f = |t: f64| (t / 2.0).cos() / (2.0 * (t / 2.0).sin()).powi(d as i32);
    let (mut lo, mut hi) = (1e-6f64, std::f64::consts::FRAC_PI_3);
    for _ in 0..100 {
        let m = 0.5 * (lo + hi);
        if f(m) > 1.0 {
            lo = m;
        } else {
            hi = m;
        }
    }
    Float::with_val(prec, lo - 1e-9)
}

/// Classify one certified zero of `G(d;z)`.
///
/// Intersection points and exact unit-circle zeros are recognised through
/// their known exact positions; every other zero must have its whole disk
/// inside one of the open regions.
pub fn classify(z: &CertifiedZero, d: u32, theta_ref: Option<&ThetaSolutionSet>) -> Result<Region> {
    let prec = z.value.prec();
    if d.is_multiple_of(6) && intersection_points(prec).iter().any(|w| z.contains(w)) {
        return Ok(Region::IntersectionPoint);
    }
    if let Some(ts) = theta_ref {
        let hit = ts.thetas.iter().any(|t| {
            let w = t.point();
            let bound = Float::with_val(prec, &z.radius + &t.radius)
                + Float::with_val(prec, Float::i_exp(1, 8 - ts.precision.min(prec) as i32));
            w.dist(&z.value) <= bound || w.conj().dist(&z.value) <= bound
        });
        if hit {
            return Ok(Region::OnC0);
        }
    }
    let eps = Float::with_val(prec, Float::i_exp(1, 8 - prec as i32));
    let r = Float::with_val(prec, &z.radius + &eps);
    let one = Float::with_val(prec, 1);
    let half = Float::with_val(prec, 0.5);
    let re = &z.value.re;
    let m0 = z.value.abs();
    let m1 = z.value.add_real(&Float::with_val(prec, -1)).abs();
    let lt = |x: &Float, bound: &Float| Float::with_val(prec, x + &r) < *bound;
    let gt = |x: &Float, bound: &Float| Float::with_val(prec, x - &r) > *bound;
    if lt(re, &half) && gt(&m1, &one) {
        Ok(Region::A1)
    } else if lt(&m0, &one) && lt(&m1, &one) {
        Ok(Region::A2)
    } else if gt(re, &half) && gt(&m0, &one) {
        Ok(Region::A3)
    } else {
        Err(GoncharError::UnresolvedClassification(format!(
            "zero {} (radius {:e}) of G({d};z) straddles a region boundary",
            z.value,
            z.radius.to_f64()
        )))
    }
}

/// A zero set with a region for each zero.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassifiedZeros {
    pub d: u32,
    pub zeros: ZeroSet,
    pub regions: Vec<Region>,
    pub theta: Option<ThetaSolutionSet>,
}

impl ClassifiedZeros {
    pub fn census(&self) -> Census {
        let count = |r: Region| self.regions.iter().filter(|&&x| x == r).count();
        let on_c0 = count(Region::OnC0);
        let inter = count(Region::IntersectionPoint);
        Census {
            d: self.d,
            n: self.zeros.zeros.len(),
            n1: count(Region::A1) + on_c0,
            n2: count(Region::A2),
            n3: count(Region::A3),
            on_circle: on_c0 + inter,
            has_intersection_pair: inter == 2,
        }
    }

    /// Every theta solution `e^{±iθ}` lies in exactly one certified disk.
    pub fn theta_disk_agreement(&self) -> bool {
        let Some(ts) = &self.theta else {
            return true;
        };
        ts.thetas.iter().all(|t| {
            let w = t.point();
            [w.clone(), w.conj()].iter().all(|p| {
                let hits = self
                    .zeros
                    .zeros
                    .iter()
                    .filter(|z| {
                        let prec = z.value.prec();
                        let bound = Float::with_val(prec, &z.radius + &t.radius)
                            + Float::with_val(
                                prec,
                                Float::i_exp(1, 8 - ts.precision.min(prec) as i32),
                            );
                        p.dist(&z.value) <= bound
                    })
                    .count();
                hits == 1
            })
        })
    }
}

/// Solve, then classify every zero, tightening the solve when a disk
/// straddles a boundary.
pub fn classify_zeros(d: u32, opts: &SolveOptions) -> Result<ClassifiedZeros> {
    let theta = if d.is_multiple_of(2) {
        Some(theta_solutions(d, &opts.tol)?)
    } else {
        None
    };
    let mut opts = opts.clone();
    let mut last_err = None;
    for _ in 0..3 {
        let zeros = gonchar_zeros(d, &opts)?;
        let regions: Result<Vec<Region>> = zeros
            .zeros
            .iter()
            .map(|z| classify(z, d, theta.as_ref()))
            .collect();
        match regions {
            Ok(regions) => {
                return Ok(ClassifiedZeros {
                    d,
                    zeros,
                    regions,
                    theta,
                })
            }
            Err(e @ GoncharError::UnresolvedClassification(_)) => {
                last_err = Some(e);
                let p = opts.start_precision.max(zeros.working_precision) * 2;
                if p > opts.max_precision {
                    break;
                }
                opts.start_precision = p;
                opts.tol =
                    Float::with_val(64, &opts.tol * Float::with_val(64, Float::i_exp(1, -64)));
            }
            Err(e) => return Err(e),
        }
    }
    Err(last_err.unwrap())
}

pub fn census(d: u32, opts: &SolveOptions) -> Result<Census> {
    Ok(classify_zeros(d, opts)?.census())
}

/// Distance from `z` to `Γ`: the arc of `C0` with `Re <= 1/2`, the arc of
/// `C1` with `Re >= 1/2`, and the segment `Re = 1/2`, `|Im| <= √3/2`.
pub fn gamma_distance(z: &ComplexMP) -> Float {
    let prec = z.prec();
    let pi = pi(prec);
    let h = sqrt3_half(prec);
    let ends = intersection_points(prec);
    let end_dist = || z.dist(&ends[0]).min(&z.dist(&ends[1]));
    // arc of C0: arguments in [π/3, 5π/3]
    let arg0 = {
        let a = Float::with_val(prec, z.im.atan2_ref(&z.re));
        if a < 0 {
            a + Float::with_val(prec, &pi * 2u32)
        } else {
            a
        }
    };
    let third = Float::with_val(prec, &pi / 3u32);
    let d0 = if z.re.is_zero() && z.im.is_zero() {
        Float::with_val(prec, 1)
    } else if arg0 >= third && arg0 <= Float::with_val(prec, &third * 5u32) {
        (z.abs() - 1u32).abs()
    } else {
        end_dist()
    };
    // arc of C1: arguments of z - 1 in [-2π/3, 2π/3]
    let w = z.add_real(&Float::with_val(prec, -1));
    let arg1 = Float::with_val(prec, w.im.atan2_ref(&w.re));
    let two_thirds = Float::with_val(prec, &third * 2u32);
    let d1 = if arg1.clone().abs() <= two_thirds {
        (w.abs() - 1u32).abs()
    } else {
        end_dist()
    };
    let ds = if Float::with_val(prec, z.im.abs_ref()) <= h {
        (Float::with_val(prec, &z.re - 0.5f64)).abs()
    } else {
        end_dist()
    };
    d0.min(&d1).min(&ds)
}

/// Largest distance from a zero of `G(d;z)` to `Γ`, padded by its radius.
pub fn max_gamma_distance(d: u32, opts: &SolveOptions) -> Result<Float> {
    let zs = gonchar_zeros(d, opts)?;
    Ok(max_gamma_distance_of(&zs))
}

pub fn max_gamma_distance_of(zs: &ZeroSet) -> Float {
    zs.zeros
        .iter()
        .map(|z| gamma_distance(&z.value) + &z.radius)
        .fold(Float::new(zs.working_precision), |a, b| a.max(&b))
}

/// Findings about the conjectured zero patterns; never asserted as facts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeReport {
    pub d: u32,
    /// every zero falls strictly in a region or is a recognised exact zero
    pub all_classified: bool,
    pub census: Option<Census>,
    /// odd d: upper-half A1 zeros sorted by argument alternate inside/outside `C0`
    pub a1_alternates: Option<bool>,
    /// even d: every A1 zero is one of the exact unit-circle zeros
    pub a1_on_circle: Option<bool>,
    /// A3 zeros lie outside `C1`
    pub a3_outside_c1: Option<bool>,
    /// A2 zeros sorted by imaginary part turn consistently in one direction
    pub a2_convex: Option<bool>,
}

/// Side of the unit circle `|z - c| = 1` a disk lies on: `Some(true)` outside.
fn outside_circle(z: &CertifiedZero, c: f64) -> Option<bool> {
    let prec = z.value.prec();
    let m = z.value.add_real(&Float::with_val(prec, -c)).abs();
    if Float::with_val(prec, &m - &z.radius) > 1 {
        Some(true)
    } else if Float::with_val(prec, &m + &z.radius) < 1 {
        Some(false)
    } else {
        None
    }
}

pub fn conjecture_probes(d: u32, opts: &SolveOptions) -> Result<ProbeReport> {
    let classified = match classify_zeros(d, opts) {
        Ok(c) => c,
        Err(GoncharError::UnresolvedClassification(_)) => {
            return Ok(ProbeReport {
                d,
                all_classified: false,
                census: None,
                a1_alternates: None,
                a1_on_circle: None,
                a3_outside_c1: None,
                a2_convex: None,
            })
        }
        Err(e) => return Err(e),
    };
    let zs = &classified.zeros.zeros;
    let of = |r: Region| -> Vec<&CertifiedZero> {
        zs.iter()
            .zip(&classified.regions)
            .filter(|&(_, &x)| x == r)
            .map(|(z, _)| z)
            .collect()
    };
    let a1 = of(Region::A1);
    let a1_alternates = (d % 2 == 1).then(|| {
        // conjugate pairs share a side of C0, so the order is read along the
        // upper half-plane; the lower half mirrors it
        let mut sorted: Vec<(f64, Option<bool>)> = a1
            .iter()
            .filter(|z| z.value.im > 0)
            .map(|z| (z.to_c64().arg(), outside_circle(z, 0.0)))
            .collect();
        sorted.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        sorted.iter().all(|(_, s)| s.is_some()) && sorted.windows(2).all(|w| w[0].1 != w[1].1)
    });
    let a1_on_circle = d.is_multiple_of(2).then_some(a1.is_empty());
    let a3_outside_c1 = Some(
        of(Region::A3)
            .iter()
            .all(|z| outside_circle(z, 1.0) == Some(true)),
    );
    let mut a2: Vec<(f64, f64)> = of(Region::A2)
        .iter()
        .map(|z| {
            let c = z.to_c64();
            (c.re, c.im)
        })
        .collect();
    a2.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
    let turns: Vec<f64> = a2
        .windows(3)
        .map(|w| {
            let (ux, uy) = (w[1].0 - w[0].0, w[1].1 - w[0].1);
            let (vx, vy) = (w[2].0 - w[1].0, w[2].1 - w[1].1);
            ux * vy - uy * vx
        })
        .collect();
    let a2_convex = Some(turns.iter().all(|&t| t > 0.0) || turns.iter().all(|&t| t < 0.0));
    Ok(ProbeReport {
        d,
        all_classified: true,
        census: Some(classified.census()),
        a1_alternates,
        a1_on_circle,
        a3_outside_c1,
        a2_convex,
    })
}

/// `(d-1) z^(d+1) + c z^d + c z + (d-1)`.
fn palindromic_quad(d: u32, c: i64) -> IntPoly {
    let n = d as usize + 1;
    let mut v = vec![0i64; n + 1];
    v[0] = d as i64 - 1;
    v[n] = d as i64 - 1;
    v[1] += c;
    v[n - 1] += c;
    IntPoly::from_i64s(&v)
}

/// Sign changes on `(0, 2π)` of `T(φ) = Σ a_k cos((k - m/2) φ)`, the real
/// form of a palindromic polynomial of degree `m` on the unit circle.
fn circle_sign_changes(p: &IntPoly, samples: usize) -> usize {
    let a: Vec<f64> = p.coeffs().iter().map(|c| c.to_f64()).collect();
    let m = (a.len() - 1) as f64;
    let scale: f64 = a.iter().map(|x| x.abs()).sum();
    let t = |phi: f64| -> f64 {
        a.iter()
            .enumerate()
            .map(|(k, &c)| c * ((k as f64 - m / 2.0) * phi).cos())
            .sum()
    };
    count_sign_changes(
        (1..samples).map(|i| t(std::f64::consts::TAU * (i as f64 + 0.5) / samples as f64)),
        1e-9 * scale,
    )
}

fn count_sign_changes(values: impl Iterator<Item = f64>, margin: f64) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for v in values {
        let s = if v > margin {
            1
        } else if v < -margin {
            -1
        } else {
            continue;
        };
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Solutions of `tan(φ/2) tan(dφ/2) = -d` on `(0, 2π) \ {π}`, counted as sign
/// changes of `d cos(φ/2) cos(dφ/2) + sin(φ/2) sin(dφ/2)` on each side of `π`.
pub fn tan_equation_count(d: u32) -> usize {
    let df = d as f64;
    let k = |phi: f64| {
        df * (phi / 2.0).cos() * (df * phi / 2.0).cos() + (phi / 2.0).sin() * (df * phi / 2.0).sin()
    };
    let n = 256 * d as usize;
    let pi = std::f64::consts::PI;
    let eps = 1e-9;
    let side = |a: f64, b: f64| {
        count_sign_changes((0..=n).map(|i| k(a + (b - a) * i as f64 / n as f64)), 1e-12)
    };
    side(eps, pi - eps) + side(pi + eps, 2.0 * pi - eps)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QStructureReport {
    pub d: u32,
    /// even d: `-1` is a root of multiplicity exactly 3; odd d: exactly two
    /// negative roots
    pub real_roots_ok: bool,
    pub circle_roots: usize,
    pub expected_circle_roots: usize,
    pub tan_solutions: usize,
    pub expected_tan_solutions: usize,
    /// all zeros of the `(d-3)/(d-1)` variant on the unit circle
    pub variant_on_circle: bool,
}

impl QStructureReport {
    pub fn passed(&self) -> bool {
        self.real_roots_ok
            && self.circle_roots == self.expected_circle_roots
            && self.tan_solutions == self.expected_tan_solutions
            && self.variant_on_circle
    }
}

/// Zero structure of `(d-1) Q(d;z) = (d-1) z^(d+1) + (d+1) z^d + (d+1) z + (d-1)`.
pub fn q_structure_check(d: u32) -> Result<QStructureReport> {
    if d < 3 {
        return Err(GoncharError::Domain(format!(
            "auxiliary polynomial check needs d >= 3, got {d}"
        )));
    }
    let q = palindromic_quad(d, d as i64 + 1);
    let samples = 64 * (d as usize + 2);
    let (real_roots_ok, circle_part, expected) = if d.is_multiple_of(2) {
        let z1 = IntPoly::from_i64s(&[1, 1]);
        let triple = z1.pow(3);
        match q.divide_exact(&triple) {
            Ok(rest) => (!rest.is_divisible_by(&z1), rest, d as usize - 2),
            Err(_) => (false, q.clone(), d as usize - 2),
        }
    } else {
        let roots = isolate_real_roots(&q)?;
        let negatives = roots
            .exact
            .iter()
            .filter(|r| r.as_rational().is_negative())
            .count()
            + roots
                .intervals
                .iter()
                .filter(|i| !i.hi.as_rational().is_positive())
                .count();
        (
            negatives == 2 && roots.count() == 2,
            q.clone(),
            d as usize - 1,
        )
    };
    let circle_roots = if d.is_multiple_of(2) {
        circle_sign_changes(&circle_part, samples)
    } else {
        // two real roots off the circle, the rest on it
        circle_sign_changes(&q, samples)
    };
    let variant = palindromic_quad(d, d as i64 - 3);
    let variant_on_circle = circle_sign_changes(&variant, samples) == d as usize + 1;
    Ok(QStructureReport {
        d,
        real_roots_ok,
        circle_roots,
        expected_circle_roots: expected,
        tan_solutions: tan_equation_count(d),
        expected_tan_solutions: expected,
        variant_on_circle,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zero_at(re: f64, im: f64, r: f64) -> CertifiedZero {
        CertifiedZero {
            value: ComplexMP::from_f64(128, re, im),
            radius: Float::with_val(128, r),
            index: 0,
            is_real: im == 0.0,
        }
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            classify(&zero_at(0.4, 0.0, 1e-20), 3, None).unwrap(),
            Region::A2
        );
        let golden_sq = (3.0 + 5f64.sqrt()) / 2.0;
        assert_eq!(
            classify(&zero_at(golden_sq, 0.0, 1e-20), 3, None).unwrap(),
            Region::A3
        );
        let ts = theta_solutions(2, &Float::with_val(64, 1e-30)).unwrap();
        assert_eq!(
            classify(&zero_at(-1.0, 0.0, 1e-20), 2, Some(&ts)).unwrap(),
            Region::OnC0
        );
        assert!(matches!(
            classify(&zero_at(0.5, 1.2, 1e-20), 3, None),
            Err(GoncharError::UnresolvedClassification(_))
        ));
        assert_eq!(
            classify(&zero_at(0.5, 3f64.sqrt() / 2.0, 1e-12), 6, None).unwrap(),
            Region::IntersectionPoint
        );
    }

    #[test]
    fn theta_counts() {
        let tol = Float::with_val(64, 1e-30);
        let t2 = theta_solutions(2, &tol).unwrap();
        assert_eq!(t2.thetas.len(), 1);
        assert_eq!(t2.on_circle_count(), 1);
        assert_eq!(theta_solutions(6, &tol).unwrap().thetas.len(), 3);
        assert_eq!(theta_solutions(6, &tol).unwrap().on_circle_count(), 5);
        assert_eq!(theta_solutions(12, &tol).unwrap().on_circle_count(), 9);
        assert!(theta_solutions(5, &tol).is_err());
        // the d=6 set holds θ = π/3
        let t6 = theta_solutions(6, &tol).unwrap();
        let third = std::f64::consts::FRAC_PI_3;
        assert!(t6
            .thetas
            .iter()
            .any(|t| (t.theta.to_f64() - third).abs() < 1e-15));
    }

    #[test]
    fn census_rows() {
        let opts = SolveOptions::default();
        let c = census(9, &opts).unwrap();
        assert_eq!((c.n1, c.n2, c.n3), (6, 6, 5));
        let c = census(12, &opts).unwrap();
        assert_eq!((c.n1, c.n2, c.n3, c.has_intersection_pair), (7, 7, 7, true));
        let c = census(6, &opts).unwrap();
        assert_eq!((c.n1, c.n2, c.n3, c.on_circle), (3, 3, 3, 5));
        let c = census(1, &opts).unwrap();
        assert_eq!((c.n1, c.n2, c.n3), (0, 0, 1));
    }

    #[test]
    fn gamma_examples() {
        let h = 3f64.sqrt() / 2.0;
        let at = |re, im| gamma_distance(&ComplexMP::from_f64(128, re, im)).to_f64();
        assert!(at(0.5, h).abs() < 1e-15);
        assert_eq!(at(-1.0, 0.0), 0.0);
        assert_eq!(at(0.5, 0.0), 0.0);
        assert!((at(3.0, 0.0) - 1.0).abs() < 1e-15);
        assert!((at(0.0, 0.0) - 0.5).abs() < 1e-15);
        let opts = SolveOptions::default();
        assert!((max_gamma_distance(1, &opts).unwrap().to_f64() - 1.0).abs() < 1e-15);
        let m2 = max_gamma_distance(2, &opts).unwrap().to_f64();
        assert!((m2 - ((3.0 + 5f64.sqrt()) / 2.0 - 2.0)).abs() < 1e-15);
    }

    #[test]
    fn probes() {
        let opts = SolveOptions::default();
        let p = conjecture_probes(4, &opts).unwrap();
        assert!(p.all_classified);
        let c = p.census.unwrap();
        assert_eq!((c.n1, c.n2, c.n3), (1, 3, 3));
        assert_eq!(
            conjecture_probes(7, &opts).unwrap().a1_alternates,
            Some(true)
        );
        assert_eq!(conjecture_probes(2, &opts).unwrap().a2_convex, Some(true));
    }

    #[test]
    fn q_structure() {
        let r = q_structure_check(3).unwrap();
        assert!(r.real_roots_ok);
        assert_eq!(r.circle_roots, 2);
        assert!(r.passed());
        assert_eq!(q_structure_check(4).unwrap().tan_solutions, 2);
        assert_eq!(q_structure_check(5).unwrap().tan_solutions, 4);
        for d in 3..30 {
            assert!(q_structure_check(d).unwrap().passed(), "d={d}");
        }
        assert!(q_structure_check(2).is_err());
    }

    #[test]
    fn expected_on_circle_values() {
        assert_eq!(expected_on_circle(2), 1);
        assert_eq!(expected_on_circle(6), 5);
        assert_eq!(expected_on_circle(12), 9);
        assert_eq!(expected_on_circle(42), 29);
        assert_eq!(expected_on_circle(7), 0);
    }
}
