//! Dense integer polynomials and the Gonchar family.
//!
//! Everything here is exact: coefficients are GMP integers and the only
//! rational values are [`RatQ`]. Nothing in this module touches floating point.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use rug::ops::Pow;
use rug::{Complete, Integer, Rational};

use crate::error::{GoncharError, Result};

/// Exact rational number with positive denominator in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RatQ(Rational);

impl RatQ {
    pub fn new(num: impl Into<Integer>, den: impl Into<Integer>) -> Result<Self> {
        let den = den.into();
        if den.cmp0() == Ordering::Equal {
            return Err(GoncharError::Domain("zero denominator".into()));
        }
        Ok(RatQ(Rational::from((num.into(), den))))
    }

    pub fn from_int(n: impl Into<Integer>) -> Self {
        RatQ(Rational::from(n.into()))
    }

    pub fn zero() -> Self {
        RatQ(Rational::new())
    }

    pub fn numer(&self) -> &Integer {
        self.0.numer()
    }

    pub fn denom(&self) -> &Integer {
        self.0.denom()
    }

    pub fn as_rational(&self) -> &Rational {
        &self.0
    }

    pub fn into_rational(self) -> Rational {
        self.0
    }

    pub fn signum(&self) -> Ordering {
        self.0.cmp0()
    }

    pub fn is_integer(&self) -> bool {
        *self.0.denom() == 1
    }

    /// Smallest integer not below the value.
    pub fn ceil(&self) -> Integer {
        self.0.clone().ceil().into_numer_denom().0
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }
}

impl From<Rational> for RatQ {
    fn from(r: Rational) -> Self {
        RatQ(r)
    }
}

impl From<i64> for RatQ {
    fn from(n: i64) -> Self {
        RatQ(Rational::from(n))
    }
}

impl fmt::Display for RatQ {
    /// Always `num/den`, also for integers.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl FromStr for RatQ {
    type Err = GoncharError;

    /// Accepts `a/b` or a plain integer `a`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || GoncharError::Domain(format!("not a rational number: {s:?}"));
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num = Integer::from_str(num).map_err(|_| bad())?;
        let den = Integer::from_str(den).map_err(|_| bad())?;
        RatQ::new(num, den)
    }
}

impl Add for &RatQ {
    type Output = RatQ;
    fn add(self, rhs: &RatQ) -> RatQ {
        RatQ((&self.0 + &rhs.0).complete())
    }
}

impl Sub for &RatQ {
    type Output = RatQ;
    fn sub(self, rhs: &RatQ) -> RatQ {
        RatQ((&self.0 - &rhs.0).complete())
    }
}

impl Mul for &RatQ {
    type Output = RatQ;
    fn mul(self, rhs: &RatQ) -> RatQ {
        RatQ((&self.0 * &rhs.0).complete())
    }
}

/// Dense polynomial with arbitrary-precision integer coefficients.
///
/// `coeffs[k]` is the coefficient of `z^k`. Trailing zeros are always trimmed,
/// so the zero polynomial is the empty coefficient vector and two equal
/// polynomials have identical representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<Integer>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<Integer>) -> Self {
        while coeffs.last().is_some_and(|c| c.cmp0() == Ordering::Equal) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Integer::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: impl Into<Integer>) -> Self {
        Self::new(vec![c.into()])
    }

    /// `c * z^k`
    pub fn monomial(c: impl Into<Integer>, k: usize) -> Self {
        let mut coeffs = vec![Integer::new(); k + 1];
        coeffs[k] = c.into();
        Self::new(coeffs)
    }

    /// `(z + a)^n` by the binomial theorem.
    pub fn binomial_power(a: i64, n: u32) -> Self {
        let a = Integer::from(a);
        let coeffs = (0..=n)
            .map(|k| {
                let binom = Integer::from(Integer::binomial_u(n, k));
                binom * Integer::from(Pow::pow(&a, n - k))
            })
            .collect();
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Integer> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0; only for callers that
    /// already excluded it.
    fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Option<&Integer> {
        self.coeffs.last()
    }

    pub fn coeff(&self, k: usize) -> Integer {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| *c == 1)
    }

    /// Nonnegative gcd of the coefficients (0 for the zero polynomial).
    pub fn content(&self) -> Integer {
        let mut g = Integer::new();
        for c in &self.coeffs {
            g.gcd_mut(c);
            if g == 1 {
                break;
            }
        }
        g
    }

    /// Content-free multiple with positive leading coefficient.
    pub fn primitive_part(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut g = self.content();
        if self.leading().unwrap().cmp0() == Ordering::Less {
            g = -g;
        }
        self.div_scalar_exact(&g)
    }

    pub fn div_scalar_exact(&self, s: &Integer) -> IntPoly {
        if *s == 1 {
            return self.clone();
        }
        IntPoly::new(
            self.coeffs
                .iter()
                .map(|c| c.div_exact_ref(s).complete())
                .collect(),
        )
    }

    pub fn mul_scalar(&self, s: &Integer) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| (c * s).complete()).collect())
    }

    /// Formal derivative.
    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| (c * k as u64).complete())
                .collect(),
        )
    }

    /// `z^{deg p} p(1/z)`: the coefficient sequence reversed and re-trimmed.
    pub fn reciprocal(&self) -> Result<IntPoly> {
        if self.is_zero() {
            return Err(GoncharError::Domain(
                "reciprocal of the zero polynomial".into(),
            ));
        }
        let mut c = self.coeffs.clone();
        c.reverse();
        Ok(IntPoly::new(c))
    }

    /// `p(-z)`
    pub fn reflect(&self) -> IntPoly {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| {
                    if k % 2 == 1 {
                        (-c).complete()
                    } else {
                        c.clone()
                    }
                })
                .collect(),
        )
    }

    /// `p(z + a)` by the in-place Horner scheme, O(n^2) integer additions.
    pub fn taylor_shift(&self, a: &Integer) -> IntPoly {
        let mut c = self.coeffs.clone();
        let n = c.len();
        if n < 2 || a.cmp0() == Ordering::Equal {
            return self.clone();
        }
        let unit = *a == 1;
        for i in 0..n - 1 {
            for j in (i..n - 1).rev() {
                let (lo, hi) = c.split_at_mut(j + 1);
                if unit {
                    lo[j] += &hi[0];
                } else {
                    lo[j] += (a * &hi[0]).complete();
                }
            }
        }
        IntPoly::new(c)
    }

    /// `den^n p(num/den)` with `n = deg p`; an integer with the sign of
    /// `p(num/den)` whenever `den > 0`.
    pub fn eval_homogeneous(&self, num: &Integer, den: &Integer) -> Integer {
        let Some(n) = self.degree() else {
            return Integer::new();
        };
        let mut acc = self.coeffs[n].clone();
        if *den == 1 {
            for c in self.coeffs[..n].iter().rev() {
                acc *= num;
                acc += c;
            }
            return acc;
        }
        let mut den_pow = Integer::from(1);
        for c in self.coeffs[..n].iter().rev() {
            den_pow *= den;
            acc *= num;
            acc += (c * &den_pow).complete();
        }
        acc
    }

    /// Exact value at a rational point.
    pub fn eval_exact(&self, x: &RatQ) -> RatQ {
        let Some(n) = self.degree() else {
            return RatQ::zero();
        };
        let top = self.eval_homogeneous(x.numer(), x.denom());
        let den = Integer::from(Pow::pow(x.denom(), n as u32));
        RatQ(Rational::from((top, den)))
    }

    /// Sign of `p(x)` at a rational point.
    pub fn sign_at(&self, x: &Rational) -> Ordering {
        self.eval_homogeneous(x.numer(), x.denom()).cmp0()
    }

    pub fn eval_integer(&self, x: &Integer) -> Integer {
        self.eval_homogeneous(x, &Integer::from(1))
    }

    /// Number of sign changes in the coefficient sequence, zeros skipped.
    pub fn sign_variations(&self) -> usize {
        let mut last = Ordering::Equal;
        let mut count = 0;
        for c in &self.coeffs {
            let s = c.cmp0();
            if s == Ordering::Equal {
                continue;
            }
            if last != Ordering::Equal && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    pub fn pow(&self, k: u32) -> IntPoly {
        let mut result = IntPoly::constant(1);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// `lc(b)^(deg a - deg b + 1) * a mod b`, computed without division.
    pub fn pseudo_rem(&self, divisor: &IntPoly) -> IntPoly {
        let db = divisor
            .degree()
            .expect("pseudo-remainder by the zero polynomial");
        let Some(da) = self.degree() else {
            return IntPoly::zero();
        };
        if da < db {
            return self.clone();
        }
        let lc = divisor.leading().unwrap();
        let mut r = self.coeffs.clone();
        for k in (0..=da - db).rev() {
            let top = std::mem::take(&mut r[db + k]);
            for c in r.iter_mut() {
                *c *= lc;
            }
            if top.cmp0() != Ordering::Equal {
                for (j, bc) in divisor.coeffs[..db].iter().enumerate() {
                    r[k + j] -= (&top * bc).complete();
                }
            }
            r.truncate(db + k);
        }
        IntPoly::new(r)
    }

    /// Quotient of an exact division in `Z[z]`.
    ///
    /// Fails with [`GoncharError::InexactDivision`] carrying the
    /// pseudo-remainder when the divisor does not divide `self` with an
    /// integral quotient.
    pub fn divide_exact(&self, divisor: &IntPoly) -> Result<IntPoly> {
        let Some(db) = divisor.degree() else {
            return Err(GoncharError::Domain(
                "division by the zero polynomial".into(),
            ));
        };
        let Some(da) = self.degree() else {
            return Ok(IntPoly::zero());
        };
        if da < db {
            return Err(GoncharError::InexactDivision {
                remainder: self.clone(),
            });
        }
        let lc = divisor.leading().unwrap();
        let mut r = self.coeffs.clone();
        let mut q = vec![Integer::new(); da - db + 1];
        for k in (0..=da - db).rev() {
            let top = &r[db + k];
            if top.cmp0() == Ordering::Equal {
                continue;
            }
            if !top.is_divisible(lc) {
                return Err(GoncharError::InexactDivision {
                    remainder: self.pseudo_rem(divisor),
                });
            }
            let t = top.div_exact_ref(lc).complete();
            for (j, bc) in divisor.coeffs.iter().enumerate() {
                r[k + j] -= (&t * bc).complete();
            }
            q[k] = t;
        }
        if r.iter().any(|c| c.cmp0() != Ordering::Equal) {
            return Err(GoncharError::InexactDivision {
                remainder: IntPoly::new(r),
            });
        }
        Ok(IntPoly::new(q))
    }

    /// Whether `divisor` divides `self` in `Z[z]`.
    pub fn is_divisible_by(&self, divisor: &IntPoly) -> bool {
        self.divide_exact(divisor).is_ok()
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.cmp0() == Ordering::Equal {
                continue;
            }
            let neg = c.cmp0() == Ordering::Less;
            let mag = c.clone().abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_mag = k == 0 || mag != 1;
            if show_mag {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "z")?,
                _ => write!(f, "z^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut c = Vec::with_capacity(n);
        for k in 0..n {
            let mut v = self.coeffs.get(k).cloned().unwrap_or_default();
            if let Some(r) = rhs.coeffs.get(k) {
                v += r;
            }
            c.push(v);
        }
        IntPoly::new(c)
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        self + &(-rhs)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| (-c).complete()).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut c = vec![Integer::new(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.cmp0() == Ordering::Equal {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += (a * b).complete();
            }
        }
        IntPoly::new(c)
    }
}

/// One subresultant polynomial remainder sequence step record.
pub(crate) struct PrsChain {
    /// `p, p', R_2, ..., R_k`; the last entry is the gcd up to a constant.
    pub elems: Vec<IntPoly>,
    /// `signs[i]` is the sign of the constant `c_i` with
    /// `elems[i] = c_i * T_i`, `T` the classical signed remainder sequence
    /// `T_{i+1} = -rem(T_{i-1}, T_i)`.
    pub signs: Vec<i8>,
}

/// Subresultant PRS of `a` and `b` (requires `deg a >= deg b`, `b != 0`),
/// tracking how each element relates in sign to the Euclidean Sturm chain.
pub(crate) fn subresultant_chain(a: &IntPoly, b: &IntPoly) -> PrsChain {
    let mut elems = vec![a.clone(), b.clone()];
    let mut signs: Vec<i8> = vec![1, 1];
    let mut g = Integer::from(1);
    let mut h = Integer::from(1);
    loop {
        let n = elems.len();
        let (prev, cur) = (&elems[n - 2], &elems[n - 1]);
        let delta = (prev.deg() - cur.deg()) as u32;
        let r = prev.pseudo_rem(cur);
        if r.is_zero() {
            break;
        }
        let beta = &g * Integer::from(Pow::pow(&h, delta));
        let next = r.div_scalar_exact(&beta);
        // c_{i+1} = -lc(R_i)^{delta+1} c_{i-1} / beta
        let lc_sign: i8 = if cur.leading().unwrap().cmp0() == Ordering::Less && (delta + 1) % 2 == 1
        {
            -1
        } else {
            1
        };
        let beta_sign: i8 = if beta.cmp0() == Ordering::Less { -1 } else { 1 };
        let sign = -lc_sign * signs[n - 2] * beta_sign;

        g = cur.leading().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            let num = Integer::from(Pow::pow(&g, delta));
            let den = Integer::from(Pow::pow(&h, delta - 1));
            num.div_exact(&den)
        };
        let done = next.deg() == 0;
        elems.push(next);
        signs.push(sign);
        if done {
            break;
        }
    }
    PrsChain { elems, signs }
}

/// Primitive gcd with positive leading coefficient, via the subresultant PRS.
pub fn exact_gcd(p: &IntPoly, r: &IntPoly) -> Result<IntPoly> {
    match (p.is_zero(), r.is_zero()) {
        (true, true) => return Err(GoncharError::Domain("gcd of two zero polynomials".into())),
        (true, false) => return Ok(r.primitive_part()),
        (false, true) => return Ok(p.primitive_part()),
        _ => {}
    }
    let (a, b) = if p.deg() >= r.deg() { (p, r) } else { (r, p) };
    let (a, b) = (a.primitive_part(), b.primitive_part());
    if b.deg() == 0 {
        return Ok(IntPoly::constant(1));
    }
    let chain = subresultant_chain(&a, &b);
    let last = chain.elems.last().unwrap();
    if last.deg() == 0 {
        Ok(IntPoly::constant(1))
    } else {
        Ok(last.primitive_part())
    }
}

/// `(z-1)^d`
fn z_minus_one_pow(d: u32) -> IntPoly {
    IntPoly::binomial_power(-1, d)
}

/// `G(d;z) = [(z-1)^d - z - 1] z^{d-1} + (z-1)^d`.
pub fn gonchar_poly(d: u32) -> Result<IntPoly> {
    Ok(gonchar_poly_q(d, &RatQ::from_int(1))?.poly)
}

/// The Gonchar polynomial for charge `q`, scaled by the numerator of `q`
/// so that all coefficients are integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoncharInstance {
    pub d: u32,
    pub q: RatQ,
    /// `clearing_factor * G(d,q;z)`
    pub poly: IntPoly,
    pub clearing_factor: Integer,
}

/// `q_num * G(d,q;z) = [q_den (z-1)^d - q_num (z+1)] z^{d-1} + q_num (z-1)^d`.
pub fn gonchar_poly_q(d: u32, q: &RatQ) -> Result<GoncharInstance> {
    if d == 0 {
        return Err(GoncharError::Domain(
            "sphere dimension d must be at least 1".into(),
        ));
    }
    if q.signum() != Ordering::Greater {
        return Err(GoncharError::Domain(format!(
            "charge q must be positive, got {q}"
        )));
    }
    let a = q.numer().clone();
    let b = q.denom().clone();
    let w = z_minus_one_pow(d);
    let z_plus_one = IntPoly::from_i64s(&[1, 1]);
    let bracket = &w.mul_scalar(&b) - &z_plus_one.mul_scalar(&a);
    let shifted = &bracket * &IntPoly::monomial(1, (d - 1) as usize);
    let poly = &shifted + &w.mul_scalar(&a);
    Ok(GoncharInstance {
        d,
        q: q.clone(),
        poly,
        clearing_factor: a,
    })
}

/// `P(d;z) = (d-1)(z-1)^d (z^d+1) + 2z^d`.
///
/// It agrees with `z(z-1)G'(d;z)` on the zeros of `G`; as polynomials
/// `z(z-1)G'(d;z) = P(d;z) + (dz - d + 1) G(d;z)`.
pub fn simplicity_polynomial(d: u32) -> Result<IntPoly> {
    if d == 0 {
        return Err(GoncharError::Domain(
            "sphere dimension d must be at least 1".into(),
        ));
    }
    let w = z_minus_one_pow(d);
    let zd_plus_one = &IntPoly::monomial(1, d as usize) + &IntPoly::constant(1);
    let head = (&w * &zd_plus_one).mul_scalar(&Integer::from(d - 1));
    Ok(&head + &IntPoly::monomial(2, d as usize))
}

/// Cleared `G(d,q;1+w)` as a polynomial in `w`.
pub fn shift_at_one(inst: &GoncharInstance) -> IntPoly {
    inst.poly.taylor_shift(&Integer::from(1))
}

/// `p / gcd(p, p')`, primitive with positive leading coefficient.
pub fn squarefree_part(p: &IntPoly) -> Result<IntPoly> {
    if p.is_zero() {
        return Err(GoncharError::Domain(
            "squarefree part of the zero polynomial".into(),
        ));
    }
    let pp = p.primitive_part();
    if pp.deg() == 0 {
        return Ok(pp);
    }
    if crate::factor::modp_squarefree_witness(&pp).is_some() {
        return Ok(pp);
    }
    let g = exact_gcd(&pp, &pp.derivative())?;
    if g.deg() == 0 {
        return Ok(pp);
    }
    Ok(pp.divide_exact(&g)?.primitive_part())
}
