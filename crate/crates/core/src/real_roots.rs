//! Exact real-root counting and isolation, certified refinement, and the
//! critical distance `R_q` with its asymptotics.

use std::cmp::Ordering;

use rayon::prelude::*;
use rug::{Complete, Float, Integer, Rational};

use crate::error::{GoncharError, Result};
use crate::mp::horner_real;
use crate::poly::{
    gonchar_poly_q, shift_at_one, squarefree_part, subresultant_chain, IntPoly, RatQ,
};

pub const DEFAULT_START_PRECISION: u32 = 128;
pub const DEFAULT_MAX_PRECISION: u32 = 16384;

/// Open interval with exact rational endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: RatQ,
    pub hi: RatQ,
}

impl Interval {
    pub fn new(lo: RatQ, hi: RatQ) -> Result<Self> {
        if lo.as_rational() >= hi.as_rational() {
            return Err(GoncharError::Domain(format!("empty interval ({lo}, {hi})")));
        }
        Ok(Interval { lo, hi })
    }

    fn from_rationals(lo: Rational, hi: Rational) -> Self {
        Interval {
            lo: lo.into(),
            hi: hi.into(),
        }
    }

    pub fn width(&self) -> Rational {
        (self.hi.as_rational() - self.lo.as_rational()).complete()
    }

    pub fn midpoint(&self) -> Rational {
        (self.hi.as_rational() + self.lo.as_rational()).complete() / 2u32
    }

    /// Whether `self` lies inside the closed interval `[lo, hi]`.
    pub fn within(&self, lo: &Rational, hi: &Rational) -> bool {
        self.lo.as_rational() >= lo && self.hi.as_rational() <= hi
    }

    /// Halve an isolating interval of a simple root by exact signs until its
    /// width is at most `w`. Returns the exact root if a midpoint hits it.
    pub fn bisect_to_width(
        &self,
        p: &IntPoly,
        w: &Rational,
    ) -> std::result::Result<Interval, RatQ> {
        let (mut lo, mut hi) = (self.lo.as_rational().clone(), self.hi.as_rational().clone());
        let s_hi = p.sign_at(&hi);
        while (&hi - &lo).complete() > *w {
            let m = (&lo + &hi).complete() / 2u32;
            match p.sign_at(&m) {
                Ordering::Equal => return Err(m.into()),
                s if s == s_hi => hi = m,
                _ => lo = m,
            }
        }
        Ok(Interval::from_rationals(lo, hi))
    }
}

impl std::fmt::Display for Interval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}

/// A certified real root: the true root lies in `[value - radius, value + radius]`.
#[derive(Clone, Debug, PartialEq)]
pub struct RootApprox {
    pub value: Float,
    pub radius: Float,
    pub working_precision: u32,
    /// Set when the root is a known rational; `radius` is then zero.
    pub exact: Option<RatQ>,
}

impl RootApprox {
    pub fn exact(r: RatQ, prec: u32) -> Self {
        RootApprox {
            value: Float::with_val(prec, r.as_rational()),
            radius: Float::new(prec),
            working_precision: prec,
            exact: Some(r),
        }
    }

    pub fn lower(&self) -> Float {
        Float::with_val(self.value.prec() + 8, &self.value - &self.radius)
    }

    pub fn upper(&self) -> Float {
        Float::with_val(self.value.prec() + 8, &self.value + &self.radius)
    }

    /// Shift by an integer, exactly.
    pub fn offset(&self, k: i64) -> RootApprox {
        let prec = self.value.prec() + 64;
        RootApprox {
            value: Float::with_val(prec, &self.value + k),
            radius: self.radius.clone(),
            working_precision: self.working_precision,
            exact: self.exact.as_ref().map(|e| e + &RatQ::from(k)),
        }
    }
}

/// Sign of the `i`-th element of the classical Sturm sequence at `x`.
fn chain_variations(chain: &[IntPoly], signs: &[i8], x: &Rational) -> usize {
    let mut last = 0i8;
    let mut v = 0;
    for (f, &c) in chain.iter().zip(signs) {
        let s = match f.sign_at(x) {
            Ordering::Less => -c,
            Ordering::Equal => continue,
            Ordering::Greater => c,
        };
        if last != 0 && s != last {
            v += 1;
        }
        last = s;
    }
    v
}

/// Number of distinct real roots of `p` in `(a, b]`.
///
/// Works on the squarefree part, whose Sturm variation count is
/// right-continuous in `x`, so roots sitting exactly on `a` or `b` are
/// attributed correctly without moving the endpoints.
pub fn sturm_count(p: &IntPoly, a: &RatQ, b: &RatQ) -> Result<usize> {
    if p.is_zero() {
        return Err(GoncharError::Domain(
            "Sturm count of the zero polynomial".into(),
        ));
    }
    if a.as_rational() >= b.as_rational() {
        return Ok(0);
    }
    let s = squarefree_part(p)?;
    if s.degree() == Some(0) {
        return Ok(0);
    }
    let chain = subresultant_chain(&s, &s.derivative());
    let va = chain_variations(&chain.elems, &chain.signs, a.as_rational());
    let vb = chain_variations(&chain.elems, &chain.signs, b.as_rational());
    Ok(va - vb)
}

/// Coefficients `c_k * m^k`: the polynomial `p(m t)`.
fn scale_var(p: &IntPoly, m: &Integer) -> IntPoly {
    let mut pw = Integer::from(1);
    let mut c = Vec::with_capacity(p.coeffs().len());
    for a in p.coeffs() {
        c.push((a * &pw).complete());
        pw *= m;
    }
    IntPoly::new(c)
}

/// `2^n p(t/2)` for `n = deg p`.
fn halve_var(p: &IntPoly) -> IntPoly {
    let n = p.coeffs().len();
    IntPoly::new(
        p.coeffs()
            .iter()
            .enumerate()
            .map(|(k, a)| a.clone() << (n - 1 - k) as u32)
            .collect(),
    )
}

/// Descartes' bound for roots in `(0, 1)`.
fn descartes01(p: &IntPoly) -> usize {
    let mut rev: Vec<Integer> = p.coeffs().to_vec();
    rev.reverse();
    IntPoly::new(rev)
        .taylor_shift(&Integer::from(1))
        .sign_variations()
}

/// `den^n p(lo + (hi - lo) t)` as an integer polynomial in `t`.
fn interval_transform(p: &IntPoly, lo: &Rational, hi: &Rational) -> IntPoly {
    let w = (hi - lo).complete();
    let den = Integer::from(lo.denom().lcm_ref(w.denom()));
    let l = (lo * Rational::from(&den)).into_numer_denom().0;
    let wn = (&w * Rational::from(&den)).into_numer_denom().0;
    let n = p.coeffs().len();
    // r(y) = den^n p(y / den)
    let mut pw = Integer::from(1);
    let mut c = vec![Integer::new(); n];
    for k in (0..n).rev() {
        c[k] = (&p.coeffs()[k] * &pw).complete();
        pw *= &den;
    }
    scale_var(&IntPoly::new(c).taylor_shift(&l), &wn)
}

/// Descartes' rule-of-signs bound on the number of roots of `p` in the open
/// interval `(lo, hi)`. Exact when it returns 0 or 1.
pub fn descartes_count(p: &IntPoly, lo: &RatQ, hi: &RatQ) -> Result<usize> {
    if p.is_zero() {
        return Err(GoncharError::Domain(
            "Descartes count of the zero polynomial".into(),
        ));
    }
    if lo.as_rational() >= hi.as_rational() {
        return Ok(0);
    }
    Ok(descartes01(&interval_transform(
        p,
        lo.as_rational(),
        hi.as_rational(),
    )))
}

/// Power of two strictly above the modulus of every root of `p`
/// (Fujiwara-type bound read off the coefficient bit lengths).
pub fn root_bound_pow2(p: &IntPoly) -> Integer {
    let n = p.degree().unwrap_or(0);
    let lc_bits = p
        .leading()
        .map(|c| c.significant_bits() as i64)
        .unwrap_or(1);
    let mut e: i64 = 0;
    for i in 1..=n {
        let c = &p.coeffs()[n - i];
        if c.cmp0() == Ordering::Equal {
            continue;
        }
        let num = c.significant_bits() as i64 - lc_bits + 1;
        let q = (num + i as i64 - 1).div_euclid(i as i64);
        e = e.max(q);
    }
    Integer::from(1) << (1 + e) as u32
}

/// Real roots of a polynomial: exact rationals plus isolating intervals
/// for the irrational ones, each list in increasing order.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct RealRoots {
    pub exact: Vec<RatQ>,
    pub intervals: Vec<Interval>,
}

impl RealRoots {
    pub fn count(&self) -> usize {
        self.exact.len() + self.intervals.len()
    }
}

struct Collector {
    exact: Vec<Rational>,
    iso: Vec<(Rational, Rational)>,
}

/// Vincent–Collins–Akritas bisection for roots of `p(a + w t)` in `t ∈ (0,1)`.
fn vca(p: IntPoly, a: Rational, w: Rational, out: &mut Collector) {
    match descartes01(&p) {
        0 => {}
        1 => {
            let hi = (&a + &w).complete();
            out.iso.push((a, hi));
        }
        _ => {
            let left = halve_var(&p).primitive_part();
            let half = w / 2u32;
            let mid = (&a + &half).complete();
            let at_mid: Integer = left.coeffs().iter().sum();
            if at_mid.cmp0() == Ordering::Equal {
                out.exact.push(mid.clone());
            }
            let right = left.taylor_shift(&Integer::from(1)).primitive_part();
            vca(left, a, half.clone(), out);
            vca(right, mid, half, out);
        }
    }
}

/// Positive roots of a squarefree polynomial with `p(0) != 0`.
fn positive_roots(p: &IntPoly, out: &mut Collector) {
    let b = root_bound_pow2(p);
    let scaled = scale_var(p, &b).primitive_part();
    vca(scaled, Rational::new(), Rational::from(b), out);
}

/// Shrink an isolating interval so that `p` is nonzero at both ends.
/// Returns the exact root if it turns up at a split point.
fn tighten(
    p: &IntPoly,
    lo: Rational,
    hi: Rational,
) -> Result<std::result::Result<Interval, Rational>> {
    let (mut lo, mut hi) = (lo, hi);
    loop {
        let (sl, sh) = (p.sign_at(&lo), p.sign_at(&hi));
        if sl != Ordering::Equal && sh != Ordering::Equal {
            return Ok(Ok(Interval::from_rationals(lo, hi)));
        }
        let m = (&lo + &hi).complete() / 2u32;
        let sm = p.sign_at(&m);
        if sm == Ordering::Equal {
            return Ok(Err(m));
        }
        let root_left = match (sl, sh) {
            (Ordering::Equal, Ordering::Equal) => {
                descartes_count(p, &lo.clone().into(), &m.clone().into())? == 1
            }
            (Ordering::Equal, _) => sm == sh,
            _ => sm != sl,
        };
        if root_left {
            hi = m;
        } else {
            lo = m;
        }
    }
}

fn small_divisors(n: &Integer) -> Option<Vec<Integer>> {
    let n = n.clone().abs();
    if n > 1_000_000u32 {
        return None;
    }
    let n = n.to_u32().unwrap();
    Some(
        (1..=n)
            .filter(|v| n.is_multiple_of(*v))
            .map(Integer::from)
            .collect(),
    )
}

/// Look for a rational root `k/v` with `v | lc(p)` inside an isolating
/// interval of a primitive squarefree polynomial.
fn rational_root_in(p: &IntPoly, iso: &Interval) -> Option<Rational> {
    let divs = small_divisors(p.leading()?)?;
    let lc = p.leading()?.clone().abs();
    let w = Rational::from((Integer::from(1), lc));
    let iso = match iso.bisect_to_width(p, &w) {
        Ok(i) => i,
        Err(r) => return Some(r.into_rational()),
    };
    for v in divs {
        let k = (iso.lo.as_rational() * Rational::from(&v))
            .ceil()
            .into_numer_denom()
            .0;
        let cand = Rational::from((k, v));
        if cand > *iso.lo.as_rational()
            && cand < *iso.hi.as_rational()
            && p.sign_at(&cand) == Ordering::Equal
        {
            return Some(cand);
        }
    }
    None
}

/// All distinct real roots of `p`: rational roots exactly, every other root
/// in its own interval with `p` nonzero at both ends.
pub fn isolate_real_roots(p: &IntPoly) -> Result<RealRoots> {
    if p.is_zero() {
        return Err(GoncharError::Domain(
            "root isolation of the zero polynomial".into(),
        ));
    }
    let full = squarefree_part(p)?;
    let mut s = full.clone();
    let mut col = Collector {
        exact: Vec::new(),
        iso: Vec::new(),
    };
    if s.degree() == Some(0) {
        return Ok(RealRoots::default());
    }
    if s.coeff(0).cmp0() == Ordering::Equal {
        col.exact.push(Rational::new());
        s = IntPoly::new(s.coeffs()[1..].to_vec());
    }
    if s.degree() != Some(0) {
        positive_roots(&s, &mut col);
        let mut neg = Collector {
            exact: Vec::new(),
            iso: Vec::new(),
        };
        positive_roots(&s.reflect(), &mut neg);
        col.exact.extend(neg.exact.into_iter().map(|r| -r));
        col.iso.extend(neg.iso.into_iter().map(|(a, b)| (-b, -a)));
    }
    let mut out = RealRoots::default();
    for (lo, hi) in col.iso {
        match tighten(&full, lo, hi)? {
            Err(r) => col.exact.push(r),
            Ok(iso) => match rational_root_in(&full, &iso) {
                Some(r) => col.exact.push(r),
                None => out.intervals.push(iso),
            },
        }
    }
    col.exact.sort();
    col.exact.dedup();
    out.exact = col.exact.into_iter().map(RatQ::from).collect();
    out.intervals
        .sort_by(|a, b| a.lo.as_rational().cmp(b.lo.as_rational()));
    Ok(out)
}

/// Precision ladder for refinement.
#[derive(Clone, Copy, Debug)]
pub struct RefineOptions {
    pub start_precision: u32,
    pub max_precision: u32,
}

impl Default for RefineOptions {
    fn default() -> Self {
        RefineOptions {
            start_precision: DEFAULT_START_PRECISION,
            max_precision: DEFAULT_MAX_PRECISION,
        }
    }
}

/// Certified refinement of the single simple root inside `iso`.
pub fn refine_root(p: &IntPoly, iso: &Interval, tol: &Float) -> Result<RootApprox> {
    refine_root_with(p, iso, tol, RefineOptions::default())
}

pub fn refine_root_with(
    p: &IntPoly,
    iso: &Interval,
    tol: &Float,
    opts: RefineOptions,
) -> Result<RootApprox> {
    if *tol <= 0 {
        return Err(GoncharError::Domain("tolerance must be positive".into()));
    }
    let (lo, hi) = (iso.lo.as_rational(), iso.hi.as_rational());
    let (sl, sh) = (p.sign_at(lo), p.sign_at(hi));
    if sl == Ordering::Equal || sh == Ordering::Equal || sl == sh {
        return Err(GoncharError::Precondition(format!(
            "interval {iso} does not bracket a simple root by sign change"
        )));
    }
    let tol_bits = (-tol.get_exp().unwrap_or(0)).max(0) as u32;
    let mut prec = opts.start_precision.max(tol_bits + 32);
    // Exact bisection into a narrow bracket first.
    let scale = lo
        .clone()
        .abs()
        .max(hi.clone().abs())
        .max(Rational::from(1));
    let basin = scale / Rational::from(Integer::from(1) << 48u32);
    let mut bracket = match iso.bisect_to_width(p, &basin) {
        Ok(b) => b,
        Err(r) => return Ok(RootApprox::exact(r, prec)),
    };
    loop {
        if let Some(r) = newton_certify(p, &bracket, tol, prec)? {
            return Ok(r);
        }
        if prec >= opts.max_precision {
            return Err(GoncharError::NumericFailure(format!(
                "root in {iso} not certified to {} at {prec} bits",
                tol.to_f64()
            )));
        }
        prec = (prec * 2).min(opts.max_precision);
        let w = (bracket.width() / 1024u32).max(Rational::from((1, Integer::from(1) << prec)));
        bracket = match bracket.bisect_to_width(p, &w) {
            Ok(b) => b,
            Err(r) => return Ok(RootApprox::exact(r, prec)),
        };
    }
}

/// Newton from the bracket midpoint at a fixed precision, followed by an
/// exact sign-change check on `[x - r, x + r]` clipped to the bracket.
fn newton_certify(
    p: &IntPoly,
    bracket: &Interval,
    tol: &Float,
    prec: u32,
) -> Result<Option<RootApprox>> {
    let (blo, bhi) = (bracket.lo.as_rational(), bracket.hi.as_rational());
    let mut x = Float::with_val(prec, &bracket.midpoint());
    let ulp = Float::with_val(
        prec,
        Float::i_exp(1, x.get_exp().unwrap_or(0) - prec as i32 + 4),
    );
    let mut step = Float::with_val(prec, bracket.width());
    let mut prev = Float::with_val(prec, f64::INFINITY);
    for _ in 0..(2 * prec.ilog2() + 20) {
        let (v, dv) = horner_real(p, &x);
        if v.is_zero() {
            step = Float::new(prec);
            break;
        }
        if dv.is_zero() {
            return Ok(None);
        }
        step = Float::with_val(prec, &v / &dv);
        x -= &step;
        let xr = x.to_rational().unwrap();
        if xr <= *blo || xr >= *bhi {
            return Ok(None);
        }
        let a = Float::with_val(prec, step.abs_ref());
        if a <= ulp
            || (a >= Float::with_val(prec, &prev / 2u32) && a < Float::with_val(prec, tol / 16u32))
        {
            break;
        }
        prev = a;
    }
    let xq = x.to_rational().unwrap();
    if step.is_zero() && p.sign_at(&xq) == Ordering::Equal {
        return Ok(Some(RootApprox::exact(xq.into(), prec)));
    }
    let r = Float::with_val(64, step.abs() * 4u32).max(&Float::with_val(64, &ulp));
    let r = crate::mp::round_up_bits(&r, 8);
    if r > *tol {
        return Ok(None);
    }
    // Test signs at dyadics just outside [x - r, x + r], with denominators
    // sized to r rather than to the working precision; exact evaluation
    // cost grows with the denominator.
    let grid = Integer::from(1) << (4 - r.get_exp().unwrap_or(0)).max(1) as u32;
    let rq = r.to_rational().unwrap();
    let snap = |v: Rational, up: bool| {
        let scaled = v * Rational::from(&grid);
        let k = if up { scaled.ceil() } else { scaled.floor() };
        Rational::from((k.into_numer_denom().0, grid.clone()))
    };
    let a = snap((&xq - &rq).complete(), false).max(blo.clone());
    let b = snap((&xq + &rq).complete(), true).min(bhi.clone());
    let (sa, sb) = (p.sign_at(&a), p.sign_at(&b));
    let certified = match (sa, sb) {
        (Ordering::Equal, _) | (_, Ordering::Equal) => false,
        (u, v) => u != v,
    };
    if !certified {
        return Ok(None);
    }
    // the root lies in [a, b]; report a radius about x that covers it
    let reach = (&xq - &a).complete().max((&b - &xq).complete());
    let radius = crate::mp::round_up_bits(
        &Float::with_val_round(64, &reach, rug::float::Round::Up).0,
        8,
    );
    if radius > *tol {
        return Ok(None);
    }
    Ok(Some(RootApprox {
        value: x,
        radius: Float::with_val(prec, &radius),
        working_precision: prec,
        exact: None,
    }))
}

/// Critical distance `R_q`: the unique root of `G(d,q;z)` in `(1, inf)`.
///
/// Uniqueness is certified by a single sign change in the coefficients of
/// `G(d,q;1+w)`; the bracket `(1, B)` starts at `B = 3 + ceil(q)` and `B`
/// doubles until `G(d,q;B) > 0`.
pub fn critical_distance(d: u32, q: &RatQ, tol: &Float) -> Result<RootApprox> {
    let inst = gonchar_poly_q(d, q)?;
    let shifted = shift_at_one(&inst);
    if shifted.sign_variations() != 1 {
        return Err(GoncharError::Consistency(format!(
            "G({d},{q};1+w) has {} coefficient sign changes, expected 1",
            shifted.sign_variations()
        )));
    }
    let p = &inst.poly;
    let one = Rational::from(1);
    let mut b = Rational::from(q.ceil() + 3u32);
    loop {
        match p.sign_at(&b) {
            Ordering::Equal => return Ok(RootApprox::exact(b.into(), DEFAULT_START_PRECISION)),
            Ordering::Greater => break,
            Ordering::Less => b *= 2u32,
        }
    }
    if p.degree() == Some(1) {
        let r = Rational::from((-p.coeff(0), p.coeff(1)));
        return Ok(RootApprox::exact(r.into(), DEFAULT_START_PRECISION));
    }
    let iso = Interval::from_rationals(one, b);
    if let Some(r) = rational_root_in(&p.primitive_part(), &iso) {
        return Ok(RootApprox::exact(r.into(), DEFAULT_START_PRECISION));
    }
    refine_root(p, &iso, tol)
}

/// `rho(d) = R_1 - 1`.
pub fn rho(d: u32, tol: &Float) -> Result<RootApprox> {
    Ok(critical_distance(d, &RatQ::from_int(1), tol)?.offset(-1))
}

/// `2 + ln(3q)/d`.
pub fn asymptotic_estimate(d: u32, q: &RatQ, prec: u32) -> Result<Float> {
    if d == 0 || q.signum() != Ordering::Greater {
        return Err(GoncharError::Domain(
            "asymptotic estimate needs d >= 1 and q > 0".into(),
        ));
    }
    let three_q = Float::with_val(prec, q.as_rational() * Rational::from(3));
    Ok(three_q.ln() / d + 2u32)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ResidualRow {
    pub d: u32,
    pub r: RootApprox,
    /// `R_q - (2 + ln(3q)/d)`
    pub residual: Float,
    /// `residual * d^2`
    pub scaled: Float,
}

/// `R_q` against its first-order asymptotics for each `d`.
pub fn residual_scan(q: &RatQ, d_list: &[u32], tol: &Float) -> Result<Vec<ResidualRow>> {
    if let Some(&d) = d_list.iter().find(|&&d| d < 2) {
        return Err(GoncharError::Domain(format!(
            "residual scan needs d >= 2, got {d}"
        )));
    }
    d_list
        .par_iter()
        .map(|&d| {
            let r = critical_distance(d, q, tol)?;
            let prec = r.value.prec().max(DEFAULT_START_PRECISION);
            let est = asymptotic_estimate(d, q, prec)?;
            let residual = Float::with_val(prec, &r.value - &est);
            let scaled = Float::with_val(prec, &residual * (d as u64 * d as u64));
            Ok(ResidualRow {
                d,
                r,
                residual,
                scaled,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct MonotoneReport {
    pub holds: bool,
    pub rows: Vec<(u32, RootApprox)>,
}

/// Checks, with certified radii, that `R_1(d)` strictly decreases along
/// `d_list` and that its last value exceeds 2.
pub fn xi_monotone_check(d_list: &[u32], tol: &Float) -> Result<MonotoneReport> {
    if d_list.is_empty() || d_list[0] == 0 || d_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(GoncharError::Domain(
            "d_list must be nonempty, positive and strictly increasing".into(),
        ));
    }
    let one = RatQ::from_int(1);
    let rows: Vec<(u32, RootApprox)> = d_list
        .par_iter()
        .map(|&d| Ok((d, critical_distance(d, &one, tol)?)))
        .collect::<Result<_>>()?;
    let decreasing = rows.windows(2).all(|w| w[1].1.upper() < w[0].1.lower());
    let above_two = rows.last().map(|(_, r)| r.lower() > 2).unwrap_or(false);
    Ok(MonotoneReport {
        holds: decreasing && above_two,
        rows,
    })
}
