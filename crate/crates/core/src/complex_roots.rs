//! Certified complex zeros by simultaneous (Aberth–Ehrlich) iteration.
//!
//! A double-precision stage finds all zeros at once from a jittered circle;
//! a multiprecision stage polishes them with Aberth-corrected Newton steps.
//! Each zero then receives an inclusion disk `D(z, n |p(z)| / |p'(z)|)`
//! computed with rigorous Horner rounding bounds. Once the `n` disks are
//! pairwise disjoint, each holds exactly one zero.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rug::{Assign, Float};

use crate::error::{GoncharError, Result};
use crate::factor::modp_squarefree_witness;
use crate::mp::ComplexMP;
use crate::poly::{exact_gcd, gonchar_poly, IntPoly};

/// One zero with its inclusion disk.
#[derive(Clone, Debug, PartialEq)]
pub struct CertifiedZero {
    pub value: ComplexMP,
    pub radius: Float,
    pub index: usize,
    /// Set when the disk is proven to hold a real zero; `value.im` is then 0.
    pub is_real: bool,
}

impl CertifiedZero {
    pub fn to_c64(&self) -> Complex64 {
        let (re, im) = self.value.to_f64();
        Complex64::new(re, im)
    }

    pub fn contains(&self, w: &ComplexMP) -> bool {
        self.value.dist(w) <= self.radius
    }
}

/// All zeros of a squarefree polynomial, sorted by real part then imaginary part.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroSet {
    /// Sphere dimension when the polynomial is `G(d;z)`.
    pub d: Option<u32>,
    pub degree: usize,
    pub zeros: Vec<CertifiedZero>,
    pub working_precision: u32,
}

impl ZeroSet {
    pub fn real_zeros(&self) -> impl Iterator<Item = &CertifiedZero> {
        self.zeros.iter().filter(|z| z.is_real)
    }

    pub fn max_radius(&self) -> Float {
        self.zeros
            .iter()
            .map(|z| z.radius.clone())
            .fold(Float::new(self.working_precision), |a, b| a.max(&b))
    }
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    /// Largest accepted inclusion radius.
    pub tol: Float,
    pub start_precision: u32,
    pub max_precision: u32,
    pub seed: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            tol: Float::with_val(64, Float::i_exp(1, -100)),
            start_precision: 128,
            max_precision: 16384,
            seed: 0x5EED_6014,
        }
    }
}

impl SolveOptions {
    pub fn with_tol(tol: f64) -> Self {
        SolveOptions {
            tol: Float::with_val(64, tol),
            ..Default::default()
        }
    }
}

/// `gcd(p, p') = 1`, decided by exact integer arithmetic.
pub fn certify_all_simple(p: &IntPoly) -> bool {
    if p.is_zero() {
        return false;
    }
    matches!(exact_gcd(p, &p.derivative()), Ok(g) if g.degree() == Some(0))
}

/// Zeros of `p` to the default tolerance (about 1e-30).
pub fn all_zeros(p: &IntPoly, tol: f64) -> Result<ZeroSet> {
    all_zeros_with(p, &SolveOptions::with_tol(tol))
}

pub fn all_zeros_with(p: &IntPoly, opts: &SolveOptions) -> Result<ZeroSet> {
    check_input(p)?;
    let coeffs: Vec<f64> = p.coeffs().iter().map(|c| c.to_f64()).collect();
    let eval = |z: Complex64| horner_f64(&coeffs, z);
    let seeds = aberth_f64(p, &eval, opts.seed);
    solve_from_seeds(p, seeds, None, opts)
}

/// Zeros of `G(d;z)`, seeded with the factored form of the polynomial, which
/// evaluates far more accurately in double precision than the expanded one.
pub fn gonchar_zeros(d: u32, opts: &SolveOptions) -> Result<ZeroSet> {
    let p = gonchar_poly(d)?;
    check_input(&p)?;
    let seeds = if d >= 2 {
        aberth_f64(&p, &|z| gonchar_f64(d, z), opts.seed)
    } else {
        vec![Complex64::new(3.0, 0.0)]
    };
    solve_from_seeds(&p, seeds, Some(d), opts)
}

fn check_input(p: &IntPoly) -> Result<()> {
    match p.degree() {
        None | Some(0) => Err(GoncharError::Precondition(
            "zero finding needs degree >= 1".into(),
        )),
        _ if modp_squarefree_witness(p).is_none() && !certify_all_simple(p) => Err(
            GoncharError::Precondition("polynomial has a repeated factor".into()),
        ),
        _ => Ok(()),
    }
}

fn horner_f64(c: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut v = Complex64::new(0.0, 0.0);
    let mut dv = Complex64::new(0.0, 0.0);
    for &a in c.iter().rev() {
        dv = dv * z + v;
        v = v * z + a;
    }
    (v, dv)
}

/// `G(d;z)` and its derivative from `((z-1)^d - z - 1) z^(d-1) + (z-1)^d`.
fn gonchar_f64(d: u32, z: Complex64) -> (Complex64, Complex64) {
    let n = d as i32;
    let u = z - 1.0;
    let ud1 = u.powi(n - 1);
    let ud = ud1 * u;
    let zd2 = z.powi(n - 2);
    let zd1 = zd2 * z;
    let bracket = ud - z - 1.0;
    let v = bracket * zd1 + ud;
    let dv = (ud1 * d as f64 - 1.0) * zd1 + bracket * zd2 * (d - 1) as f64 + ud1 * d as f64;
    (v, dv)
}

/// Double-precision Aberth iteration from a jittered circle of radius
/// `|c_0 / c_n|^(1/n)`.
fn aberth_f64(
    p: &IntPoly,
    eval: &dyn Fn(Complex64) -> (Complex64, Complex64),
    seed: u64,
) -> Vec<Complex64> {
    let n = p.degree().unwrap();
    let c0 = p
        .coeffs()
        .iter()
        .find(|c| !c.is_zero())
        .unwrap()
        .to_f64()
        .abs();
    let cn = p.leading().unwrap().to_f64().abs();
    let lead_zeros = p.coeffs().iter().take_while(|c| c.is_zero()).count();
    let rad = if lead_zeros == 0 {
        (c0 / cn).powf(1.0 / n as f64)
    } else {
        1.0
    };
    let rad = if rad.is_finite() && rad > 0.0 {
        rad
    } else {
        1.0
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta =
                (k as f64 + 0.25 + 0.5 * rng.gen::<f64>()) * std::f64::consts::TAU / n as f64 + 0.4;
            Complex64::from_polar(rad * (1.0 + 0.05 * (rng.gen::<f64>() - 0.5)), theta)
        })
        .collect();
    let mut z = start.clone();
    let mut done = vec![false; n];
    for _ in 0..2000 {
        let mut moved = false;
        for k in 0..n {
            if done[k] {
                continue;
            }
            let (v, dv) = eval(z[k]);
            if v == Complex64::new(0.0, 0.0) {
                done[k] = true;
                continue;
            }
            let ratio = v / dv;
            let s: Complex64 = (0..n)
                .filter(|&j| j != k && z[j] != z[k])
                .map(|j| 1.0 / (z[k] - z[j]))
                .sum();
            let w = ratio / (1.0 - ratio * s);
            if !w.re.is_finite() || !w.im.is_finite() {
                z[k] = start[k] * (1.0 + 0.01 * rng.gen::<f64>());
                moved = true;
                continue;
            }
            z[k] -= w;
            if w.norm() <= 1e-15 * z[k].norm().max(1e-300) {
                done[k] = true;
            } else {
                moved = true;
            }
        }
        if !moved {
            break;
        }
    }
    z
}

/// Horner values with the scales needed for rounding-error bounds.
struct Eval {
    v: ComplexMP,
    dv: ComplexMP,
    /// `sum |a_k| |z|^k`, accumulated in double precision
    scale: f64,
    /// `sum k |a_k| |z|^(k-1)`
    dscale: f64,
}

fn eval_mp(p: &IntPoly, z: &ComplexMP) -> Eval {
    let prec = z.prec();
    let (zr, zi) = (&z.re, &z.im);
    let [mut vr, mut vi, mut dr, mut di, mut t1, mut t2, mut t3] =
        std::array::from_fn(|_| Float::new(prec));
    let r = z.abs().to_f64();
    let (mut scale, mut dscale) = (0f64, 0f64);
    for c in p.coeffs().iter().rev() {
        t1.assign(&dr * zr);
        t2.assign(&di * zi);
        t1 -= &t2;
        t1 += &vr;
        t2.assign(&dr * zi);
        t3.assign(&di * zr);
        t2 += &t3;
        t2 += &vi;
        std::mem::swap(&mut dr, &mut t1);
        std::mem::swap(&mut di, &mut t2);
        t1.assign(&vr * zr);
        t2.assign(&vi * zi);
        t1 -= &t2;
        t1 += c;
        t2.assign(&vr * zi);
        t3.assign(&vi * zr);
        t2 += &t3;
        std::mem::swap(&mut vr, &mut t1);
        std::mem::swap(&mut vi, &mut t2);
        dscale = dscale * r + scale;
        scale = scale * r + c.to_f64().abs();
    }
    Eval {
        v: ComplexMP::new(vr, vi),
        dv: ComplexMP::new(dr, di),
        scale,
        dscale,
    }
}

/// Aberth-corrected Newton in multiprecision. The repulsion sum is formed
/// in double precision: it only perturbs the step at second order.
fn polish_mp(p: &IntPoly, zs: &mut [ComplexMP], max_iter: usize) {
    let prec = zs[0].prec();
    let n = p.degree().unwrap() as f64;
    let tiny = Float::with_val(prec, Float::i_exp(1, 8 - prec as i32));
    let unit = 2f64.powi(-(prec as i32).min(1000));
    let mut frozen = vec![false; zs.len()];
    for _ in 0..max_iter {
        let approx: Vec<Complex64> = zs.iter().map(to_c64).collect();
        let steps: Vec<Option<(ComplexMP, f64)>> = zs
            .par_iter()
            .enumerate()
            .map(|(k, z)| {
                if frozen[k] {
                    return None;
                }
                let e = eval_mp(p, z);
                let ratio = e.v.div(&e.dv)?;
                let s: Complex64 = approx
                    .iter()
                    .enumerate()
                    .filter(|&(j, w)| j != k && *w != approx[k])
                    .map(|(_, w)| 1.0 / (approx[k] - w))
                    .sum();
                let f = 1.0 / (1.0 - to_c64(&ratio) * s);
                let factor = if f.re.is_finite() && f.im.is_finite() {
                    f
                } else {
                    Complex64::new(1.0, 0.0)
                };
                // step size attributable to rounding in the Horner evaluation
                let noise = 8.0 * (n + 2.0) * unit * e.scale / e.dv.abs().to_f64();
                Some((
                    ratio.mul(&ComplexMP::from_f64(prec, factor.re, factor.im)),
                    noise,
                ))
            })
            .collect();
        for (k, step) in steps.into_iter().enumerate() {
            if frozen[k] {
                continue;
            }
            let Some((step, noise)) = step else {
                frozen[k] = true;
                continue;
            };
            zs[k] = zs[k].sub(&step);
            let size = step.abs();
            let mag = zs[k].abs().max(&tiny);
            if size <= Float::with_val(prec, &tiny * &mag) || size.to_f64() <= 1e3 * noise {
                frozen[k] = true;
            }
        }
        if frozen.iter().all(|&f| f) {
            break;
        }
    }
}

fn to_c64(z: &ComplexMP) -> Complex64 {
    let (re, im) = z.to_f64();
    Complex64::new(re, im)
}

/// Inclusion radius `n (|p(z)| + err) / (|p'(z)| - err')`, or `None` when
/// the derivative cannot be bounded away from zero.
fn inclusion_radius(p: &IntPoly, z: &ComplexMP) -> Option<Float> {
    let prec = z.prec();
    let n = p.degree().unwrap() as u32;
    let e = eval_mp(p, z);
    // Horner in complex arithmetic: each step costs at most ~sqrt(5)+1 units
    // of roundoff, accumulated over n+1 steps.
    let u = Float::with_val(prec, Float::i_exp(1, -(prec as i32)));
    let slack = Float::with_val(prec, 1.0 + 1e-9);
    let gamma = Float::with_val(prec, &u * (8 * (n + 2)));
    if !e.scale.is_finite() || !e.dscale.is_finite() {
        return None;
    }
    let err_v = Float::with_val(prec, &gamma * e.scale) * &slack;
    let err_d = Float::with_val(prec, &gamma * (n + 2)) * e.dscale.max(e.scale) * &slack;
    let num = (e.v.abs() * &slack + err_v) * n;
    let den = Float::with_val(prec, e.dv.abs() / &slack) - err_d;
    if den <= 0 {
        return None;
    }
    Some(Float::with_val(prec, num / den) * &slack)
}

/// Bits needed so that Horner rounding alone leaves radii below `tol`,
/// judged at the seeds.
fn precision_estimate(p: &IntPoly, seeds: &[Complex64], tol: &Float, start: u32) -> u32 {
    let n = p.degree().unwrap() as f64;
    let mut prec = start;
    // A derivative evaluated below the needed precision is itself noise, so
    // repeat at the estimated precision until the estimate stabilises.
    for _ in 0..4 {
        let worst = seeds
            .par_iter()
            .map(|s| {
                let e = eval_mp(p, &ComplexMP::from_f64(prec, s.re, s.im));
                let dv = e.dv.abs().to_f64();
                let scale = e.scale.max(e.dscale);
                if dv > 0.0 && scale.is_finite() {
                    (n * 8.0 * (n + 2.0) * (n + 2.0) * scale / dv).log2()
                } else {
                    f64::INFINITY
                }
            })
            .reduce(|| 0.0, f64::max);
        let bits = worst - tol.to_f64().log2() + 16.0;
        let next = if bits.is_finite() {
            ((bits.max(0.0) as u32).div_ceil(32) * 32).max(start)
        } else {
            prec * 2
        };
        if next <= prec {
            return prec;
        }
        prec = next.min(1 << 16);
    }
    prec
}

/// Disks pairwise disjoint: a double-precision screen with an exact-enough
/// multiprecision fallback for close pairs.
fn disjoint(zs: &[ComplexMP], radii: &[Float]) -> bool {
    let n = zs.len();
    (0..n)
        .into_par_iter()
        .all(|i| (i + 1..n).all(|j| apart(&zs[i], &radii[i], &zs[j], &radii[j], zs[i].prec())))
}

fn solve_from_seeds(
    p: &IntPoly,
    seeds: Vec<Complex64>,
    d: Option<u32>,
    opts: &SolveOptions,
) -> Result<ZeroSet> {
    let n = p.degree().unwrap();
    let mut prec = precision_estimate(p, &seeds, &opts.tol, opts.start_precision.max(64))
        .min(opts.max_precision);
    let mut zs: Vec<ComplexMP> = seeds
        .iter()
        .map(|s| ComplexMP::from_f64(prec, s.re, s.im))
        .collect();
    loop {
        polish_mp(p, &mut zs, 60);
        let radii: Vec<Option<Float>> = zs.par_iter().map(|z| inclusion_radius(p, z)).collect();
        if radii.iter().all(|r| matches!(r, Some(r) if *r <= opts.tol)) {
            let radii: Vec<Float> = radii.into_iter().map(Option::unwrap).collect();
            if disjoint(&zs, &radii) {
                return Ok(finish(zs, radii, d, n, prec));
            }
        }
        if prec >= opts.max_precision {
            return Err(GoncharError::NumericFailure(format!(
                "zeros of a degree-{n} polynomial not certified at {prec} bits"
            )));
        }
        prec = (prec * 2).min(opts.max_precision);
        zs = zs.iter().map(|z| z.with_prec(prec)).collect();
    }
}

/// Snap disks that provably hold a real zero onto the axis, then sort.
fn finish(zs: Vec<ComplexMP>, radii: Vec<Float>, d: Option<u32>, n: usize, prec: u32) -> ZeroSet {
    let three_r: Vec<Float> = radii
        .iter()
        .map(|r| Float::with_val(prec, r * 3u32))
        .collect();
    let mut zeros: Vec<CertifiedZero> = Vec::with_capacity(n);
    for (k, (z, r)) in zs.iter().zip(&radii).enumerate() {
        let mut is_real = false;
        if Float::with_val(prec, z.im.abs_ref()) <= *r {
            // The conjugate of the zero in D(z, r) lies in D(z, 3r); if no
            // other disk meets D(z, 3r) it must be the same zero.
            let isolated =
                zs.iter().zip(&radii).enumerate().all(|(j, (w, rw))| {
                    j == k || z.dist(w) > Float::with_val(prec, &three_r[k] + rw)
                });
            is_real = isolated;
        }
        let mut value = z.clone();
        if is_real {
            value.im = Float::new(prec);
        }
        zeros.push(CertifiedZero {
            value,
            radius: r.clone(),
            index: 0,
            is_real,
        });
    }
    mirror_conjugates(&mut zeros, prec);
    zeros.sort_by(|a, b| {
        a.value
            .re
            .partial_cmp(&b.value.re)
            .unwrap()
            .then(a.value.im.partial_cmp(&b.value.im).unwrap())
    });
    for (i, z) in zeros.iter_mut().enumerate() {
        z.index = i;
    }
    ZeroSet {
        d,
        degree: n,
        zeros,
        working_precision: prec,
    }
}

/// Replace each lower-half disk by the mirror image of its upper-half
/// partner when the mirror meets no other disk. The mirror holds the
/// conjugate zero, so the set stays certified and becomes exactly
/// symmetric.
fn mirror_conjugates(zeros: &mut [CertifiedZero], prec: u32) {
    let n = zeros.len();
    for k in 0..n {
        if zeros[k].is_real || zeros[k].value.im.is_sign_negative() {
            continue;
        }
        let mirror = zeros[k].value.conj();
        let r = zeros[k].radius.clone();
        let target = zeros[k].to_c64().conj();
        let partner = (0..n)
            .filter(|&j| !zeros[j].is_real && zeros[j].value.im.is_sign_negative())
            .min_by(|&a, &b| {
                let da = (zeros[a].to_c64() - target).norm();
                let db = (zeros[b].to_c64() - target).norm();
                da.partial_cmp(&db).unwrap()
            });
        let Some(j) = partner else {
            continue;
        };
        let clear =
            (0..n).all(|m| m == j || apart(&mirror, &r, &zeros[m].value, &zeros[m].radius, prec));
        if clear {
            zeros[j].value = mirror;
            zeros[j].radius = r;
        }
    }
}

/// `D(a, ra)` and `D(b, rb)` are disjoint.
fn apart(a: &ComplexMP, ra: &Float, b: &ComplexMP, rb: &Float, prec: u32) -> bool {
    let (ca, cb) = (to_c64(a), to_c64(b));
    let dist = (ca - cb).norm();
    let margin = 1e-12 * (1.0 + ca.norm() + cb.norm());
    if dist > (ra.to_f64() + rb.to_f64()) * (1.0 + 1e-9) + margin {
        return true;
    }
    let shrink = Float::with_val(prec, 1) - Float::with_val(prec, Float::i_exp(1, 8 - prec as i32));
    a.dist(b) * shrink > Float::with_val(prec, ra + rb)
}

/// Every non-real zero has a partner inside the mirrored disk.
pub fn conjugation_closure_check(zs: &ZeroSet) -> bool {
    zs.zeros.iter().all(|z| {
        z.is_real
            || zs.zeros.iter().any(|w| {
                let slack = Float::with_val(
                    zs.working_precision,
                    Float::i_exp(1, 8 - zs.working_precision as i32),
                );
                z.value.conj().dist(&w.value)
                    <= Float::with_val(zs.working_precision, &z.radius + &w.radius) + slack
            })
    })
}

/// For even `d` the zero set is closed under `z -> 1/z`. The image of
/// `D(z, r)` lies in `D(1/z, r / (|z| (|z| - r)))`; each image must meet a
/// distinct disk of the set.
pub fn inversion_closure_check(zs: &ZeroSet) -> Result<bool> {
    match zs.d {
        Some(d) if d % 2 == 0 => {}
        _ => {
            return Err(GoncharError::Precondition(
                "inversion symmetry needs even d".into(),
            ))
        }
    }
    let prec = zs.working_precision;
    let slack = Float::with_val(prec, Float::i_exp(1, 16 - prec as i32));
    let approx: Vec<Complex64> = zs.zeros.iter().map(|z| z.to_c64()).collect();
    let mut used = vec![false; zs.zeros.len()];
    for z in &zs.zeros {
        let m = z.value.abs();
        if m <= z.radius {
            return Ok(false);
        }
        let Some(inv) = z.value.recip() else {
            return Ok(false);
        };
        let rho = Float::with_val(
            prec,
            &z.radius / Float::with_val(prec, &m * Float::with_val(prec, &m - &z.radius)),
        );
        let target = to_c64(&inv);
        let j = (0..approx.len())
            .min_by(|&a, &b| {
                (approx[a] - target)
                    .norm()
                    .partial_cmp(&(approx[b] - target).norm())
                    .unwrap()
            })
            .unwrap();
        let bound = Float::with_val(prec, &rho + &zs.zeros[j].radius)
            + &slack * (Float::with_val(prec, 1) + inv.abs());
        if used[j] || inv.dist(&zs.zeros[j].value) > bound {
            return Ok(false);
        }
        used[j] = true;
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn near(z: &CertifiedZero, re: f64, im: f64) -> bool {
        (z.to_c64() - Complex64::new(re, im)).norm() < 1e-14
    }

    #[test]
    fn small_gonchar_sets() {
        let zs = gonchar_zeros(2, &SolveOptions::default()).unwrap();
        assert_eq!(zs.zeros.len(), 3);
        let s5 = 5f64.sqrt();
        assert!(near(&zs.zeros[0], -1.0, 0.0));
        assert!(near(&zs.zeros[1], (3.0 - s5) / 2.0, 0.0));
        assert!(near(&zs.zeros[2], (3.0 + s5) / 2.0, 0.0));
        assert!(zs.zeros.iter().all(|z| z.is_real && z.radius <= 1e-30));

        let zs = gonchar_zeros(1, &SolveOptions::default()).unwrap();
        assert_eq!(zs.zeros.len(), 1);
        assert!(near(&zs.zeros[0], 3.0, 0.0));

        let zs = gonchar_zeros(6, &SolveOptions::default()).unwrap();
        let h = 3f64.sqrt() / 2.0;
        assert!(zs.zeros.iter().any(|z| near(z, 0.5, h)));
        assert!(zs.zeros.iter().any(|z| near(z, 0.5, -h)));
    }

    #[test]
    fn generic_polynomial() {
        // (z^2 + 1)(z - 2)(3z + 1)
        let p = &(&IntPoly::from_i64s(&[1, 0, 1]) * &IntPoly::from_i64s(&[-2, 1]))
            * &IntPoly::from_i64s(&[1, 3]);
        let zs = all_zeros(&p, 1e-25).unwrap();
        assert_eq!(zs.zeros.len(), 4);
        assert!(near(&zs.zeros[0], -1.0 / 3.0, 0.0));
        assert!(near(&zs.zeros[1], 0.0, -1.0));
        assert!(near(&zs.zeros[2], 0.0, 1.0));
        assert!(near(&zs.zeros[3], 2.0, 0.0));
        assert_eq!(zs.real_zeros().count(), 2);
        assert!(conjugation_closure_check(&zs));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(all_zeros(&IntPoly::from_i64s(&[1, 2, 1]), 1e-20).is_err());
        assert!(all_zeros(&IntPoly::from_i64s(&[5]), 1e-20).is_err());
    }

    #[test]
    fn simplicity() {
        assert!(!certify_all_simple(&IntPoly::from_i64s(&[1, 2, 1])));
        assert!(certify_all_simple(&gonchar_poly(4).unwrap()));
        assert!(!certify_all_simple(&IntPoly::zero()));
    }

    #[test]
    fn inversion() {
        let zs = gonchar_zeros(2, &SolveOptions::default()).unwrap();
        assert!(inversion_closure_check(&zs).unwrap());
        let zs = gonchar_zeros(10, &SolveOptions::default()).unwrap();
        assert!(inversion_closure_check(&zs).unwrap());
        assert!(conjugation_closure_check(&zs));
        let odd = gonchar_zeros(3, &SolveOptions::default()).unwrap();
        assert!(inversion_closure_check(&odd).is_err());

        let prec = 64;
        let artificial = ZeroSet {
            d: Some(2),
            degree: 2,
            zeros: [2.0, 3.0]
                .iter()
                .enumerate()
                .map(|(i, &x)| CertifiedZero {
                    value: ComplexMP::from_f64(prec, x, 0.0),
                    radius: Float::with_val(prec, 1e-20),
                    index: i,
                    is_real: true,
                })
                .collect(),
            working_precision: prec,
        };
        assert!(!inversion_closure_check(&artificial).unwrap());
    }
}
