//! Multiprecision helpers: complex values, Horner evaluation, decimal text.

use std::cmp::Ordering;
use std::fmt;

use rug::float::Round;
use rug::{Float, Integer};

use crate::error::{GoncharError, Result};
use crate::poly::IntPoly;

/// Complex number with both parts at a common working precision.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMP {
    pub re: Float,
    pub im: Float,
}

impl ComplexMP {
    pub fn new(re: Float, im: Float) -> Self {
        ComplexMP { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        ComplexMP {
            re: Float::new(prec),
            im: Float::new(prec),
        }
    }

    pub fn from_f64(prec: u32, re: f64, im: f64) -> Self {
        ComplexMP {
            re: Float::with_val(prec, re),
            im: Float::with_val(prec, im),
        }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        ComplexMP {
            re: Float::with_val(prec, &self.re),
            im: Float::with_val(prec, &self.im),
        }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    pub fn conj(&self) -> Self {
        ComplexMP {
            re: self.re.clone(),
            im: Float::with_val(self.prec(), -&self.im),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let p = self.prec();
        ComplexMP {
            re: Float::with_val(p, &self.re + &o.re),
            im: Float::with_val(p, &self.im + &o.im),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let p = self.prec();
        ComplexMP {
            re: Float::with_val(p, &self.re - &o.re),
            im: Float::with_val(p, &self.im - &o.im),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let p = self.prec();
        let re = Float::with_val(p, &self.re * &o.re) - Float::with_val(p, &self.im * &o.im);
        let im = Float::with_val(p, &self.re * &o.im) + Float::with_val(p, &self.im * &o.re);
        ComplexMP { re, im }
    }

    pub fn norm_sqr(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, self.re.square_ref()) + Float::with_val(p, self.im.square_ref())
    }

    pub fn abs(&self) -> Float {
        self.norm_sqr().sqrt()
    }

    /// `None` when dividing by an exact zero.
    pub fn div(&self, o: &Self) -> Option<Self> {
        let n = o.norm_sqr();
        if n.is_zero() {
            return None;
        }
        let p = self.prec();
        let num = self.mul(&o.conj());
        Some(ComplexMP {
            re: Float::with_val(p, &num.re / &n),
            im: Float::with_val(p, &num.im / &n),
        })
    }

    pub fn recip(&self) -> Option<Self> {
        let one = ComplexMP {
            re: Float::with_val(self.prec(), 1),
            im: Float::new(self.prec()),
        };
        one.div(self)
    }

    pub fn dist(&self, o: &Self) -> Float {
        self.sub(o).abs()
    }

    pub fn add_real(&self, x: &Float) -> Self {
        ComplexMP {
            re: Float::with_val(self.prec(), &self.re + x),
            im: self.im.clone(),
        }
    }

    pub fn scale(&self, x: &Float) -> Self {
        let p = self.prec();
        ComplexMP {
            re: Float::with_val(p, &self.re * x),
            im: Float::with_val(p, &self.im * x),
        }
    }
}

impl fmt::Display for ComplexMP {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = decimal_digits(self.prec());
        let im = format_positional(&self.im, n);
        match im.strip_prefix('-') {
            Some(mag) => write!(f, "{} - {}i", format_positional(&self.re, n), mag),
            None => write!(f, "{} + {}i", format_positional(&self.re, n), im),
        }
    }
}

/// Significant decimal digits supported by a binary precision.
pub fn decimal_digits(prec: u32) -> usize {
    (((prec.max(2) - 1) as f64) * std::f64::consts::LOG10_2)
        .floor()
        .max(1.0) as usize
}

/// Positional decimal with `digits` significant digits: no exponent, `.` as
/// separator, leading `-` for negatives, trailing zeros kept.
pub fn format_positional(x: &Float, digits: usize) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let digits = digits.max(1);
    if x.is_zero() {
        return format!("0.{}", "0".repeat(digits.saturating_sub(1).max(1)));
    }
    let (neg, mant, exp) = x.to_sign_string_exp(10, Some(digits));
    // value = 0.mant * 10^exp
    let exp = exp.unwrap_or(0) as i64;
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    if exp <= 0 {
        out.push_str("0.");
        out.push_str(&"0".repeat((-exp) as usize));
        out.push_str(&mant);
    } else if (exp as usize) >= mant.len() {
        out.push_str(&mant);
        out.push_str(&"0".repeat(exp as usize - mant.len()));
    } else {
        out.push_str(&mant[..exp as usize]);
        out.push('.');
        out.push_str(&mant[exp as usize..]);
    }
    out
}

/// Parse a decimal string into a float at the given precision.
pub fn parse_float(s: &str, prec: u32) -> Result<Float> {
    Float::parse(s)
        .map(|p| Float::with_val(prec, p))
        .map_err(|e| GoncharError::Domain(format!("bad decimal {s:?}: {e}")))
}

/// `p(x)` and `p'(x)` at a real point by Horner.
pub fn horner_real(p: &IntPoly, x: &Float) -> (Float, Float) {
    let prec = x.prec();
    let mut v = Float::new(prec);
    let mut dv = Float::new(prec);
    for c in p.coeffs().iter().rev() {
        dv *= x;
        dv += &v;
        v *= x;
        v += c;
    }
    (v, dv)
}

/// `p(z)`, `p'(z)` and the Horner error scale `sum |a_k| |z|^k` at a
/// complex point.
pub fn horner_complex(p: &IntPoly, z: &ComplexMP) -> (ComplexMP, ComplexMP, Float) {
    let prec = z.prec();
    let mut v = ComplexMP::zero(prec);
    let mut dv = ComplexMP::zero(prec);
    let r = z.abs();
    let mut scale = Float::new(prec);
    for c in p.coeffs().iter().rev() {
        dv = dv.mul(z).add(&v);
        v = v.mul(z);
        v.re += c;
        scale *= &r;
        scale += Float::with_val(prec, c).abs();
    }
    (v, dv, scale)
}

/// Smallest power of two `2^e` with `2^e >= x > 0`, as an exponent.
pub fn ceil_log2(x: &Float) -> i64 {
    debug_assert!(*x > 0);
    let e = x.get_exp().unwrap_or(0) as i64;
    // x in [2^(e-1), 2^e)
    let low = Float::with_val(x.prec(), Float::i_exp(1, (e - 1) as i32));
    if *x == low {
        e - 1
    } else {
        e
    }
}

/// Round a float up to a dyadic rational with at most `bits` significant bits.
pub fn round_up_bits(x: &Float, bits: u32) -> Float {
    Float::with_val_round(bits.max(2), x, Round::Up).0
}

pub fn cmp_abs(a: &Float, b: &Float) -> Ordering {
    a.cmp_abs(b).unwrap_or(Ordering::Equal)
}

pub fn int_to_float(prec: u32, n: &Integer) -> Float {
    Float::with_val(prec, n)
}
