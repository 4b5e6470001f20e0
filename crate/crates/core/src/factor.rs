//! Divisibility laws, the recorded exceptional factorizations, and
//! irreducibility certification from factor-degree patterns modulo primes.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{GoncharError, Result};
use crate::gf::GfPoly;
use crate::poly::{gonchar_poly, IntPoly};

/// Default number of usable primes tried by [`irreducibility_certificate`].
pub const DEFAULT_PRIME_BUDGET: usize = 25;

const PRIME_LIMIT: u64 = 10_000;

/// Primes below 10^4 in increasing order.
pub fn small_primes() -> Vec<u64> {
    let n = PRIME_LIMIT as usize;
    let mut sieve = vec![true; n];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i < n {
        if sieve[i] {
            for j in (i * i..n).step_by(i) {
                sieve[j] = false;
            }
        }
        i += 1;
    }
    (0..n).filter(|&k| sieve[k]).map(|k| k as u64).collect()
}

/// `z + 1`
fn z_plus_one() -> IntPoly {
    IntPoly::from_i64s(&[1, 1])
}

/// `z^2 - z + 1`
fn sixth_cyclotomic() -> IntPoly {
    IntPoly::from_i64s(&[1, -1, 1])
}

/// The trivial factor `l(d;z)`: 1 for odd d, `z+1` for even d not divisible
/// by 6, `(z+1)(z^2-z+1) = z^3+1` when 6 divides d.
pub fn ell_factor(d: u32) -> IntPoly {
    if d % 2 == 1 {
        IntPoly::constant(1)
    } else if !d.is_multiple_of(6) {
        z_plus_one()
    } else {
        &z_plus_one() * &sixth_cyclotomic()
    }
}

/// Divisibility flags decided by exact division.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Divisibility {
    pub z_plus_one: bool,
    pub cyclotomic: bool,
}

pub fn known_divisibility(d: u32) -> Result<Divisibility> {
    let g = gonchar_poly(d)?;
    Ok(Divisibility {
        z_plus_one: g.is_divisible_by(&z_plus_one()),
        cyclotomic: g.is_divisible_by(&sixth_cyclotomic()),
    })
}

/// `G(d;z) / l(d;z)`.
pub fn reduced_polynomial(d: u32) -> Result<IntPoly> {
    let g = gonchar_poly(d)?;
    g.divide_exact(&ell_factor(d))
        .map_err(|e| GoncharError::Consistency(format!("l({d};z) does not divide G({d};z): {e}")))
}

/// A recorded factorization `G(d;z) = l(d;z) * prod(factors)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionalFactorization {
    pub d: u32,
    /// Every irreducible factor including those of `l(d;z)`, in the order
    /// they are usually written.
    pub factors: Vec<IntPoly>,
}

const EXCEPTIONAL_TABLE: &[(u32, &[&[i64]])] = &[
    (4, &[&[1, 1], &[-1, 2, -3, 1], &[-1, 3, -2, 1]]),
    (
        8,
        &[
            &[1, 1],
            &[1, -3, 3, -3, 1],
            &[1, -6, 16, -24, 24, -21, 24, -24, 16, -6, 1],
        ],
    ),
    (
        12,
        &[
            &[1, 1],
            &[1, -1, 1],
            &[1, -4, 5, -3, 5, -4, 1],
            &[
                1, -8, 29, -62, 85, -77, 48, -33, 48, -77, 85, -62, 29, -8, 1,
            ],
        ],
    ),
];

/// The factorizations for d = 4, 8, 12, each checked against `G(d;z)` by
/// exact multiplication before being returned.
pub fn exceptional_factorizations() -> Result<Vec<ExceptionalFactorization>> {
    EXCEPTIONAL_TABLE
        .iter()
        .map(|(d, rows)| {
            let factors: Vec<IntPoly> = rows.iter().map(|c| IntPoly::from_i64s(c)).collect();
            let product = factors.iter().fold(IntPoly::constant(1), |acc, f| &acc * f);
            if product != gonchar_poly(*d)? {
                return Err(GoncharError::Consistency(format!(
                    "stored factorization of G({d};z) does not multiply back"
                )));
            }
            Ok(ExceptionalFactorization { d: *d, factors })
        })
        .collect()
}

/// Degrees of the irreducible factors of a polynomial modulo a prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorPattern {
    pub prime: u64,
    /// Sorted ascending; sums to the degree of the reduction.
    pub degrees: Vec<usize>,
}

/// Why a prime was not usable for a given polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrimeSkip {
    DividesLeadingCoefficient,
    NotSquarefree,
}

impl FactorPattern {
    pub fn total_degree(&self) -> usize {
        self.degrees.iter().sum()
    }

    /// `out[s]` is true iff some sub-multiset of the degrees sums to `s`.
    pub fn subset_sums(&self) -> Vec<bool> {
        let n = self.total_degree();
        let mut reach = vec![false; n + 1];
        reach[0] = true;
        for &k in &self.degrees {
            for s in (k..=n).rev() {
                if reach[s - k] {
                    reach[s] = true;
                }
            }
        }
        reach
    }

    /// Achievable degrees of a proper factor: subset sums other than 0 and
    /// the full degree.
    pub fn proper_degrees(&self) -> Vec<usize> {
        let n = self.total_degree();
        self.subset_sums()
            .into_iter()
            .enumerate()
            .filter(|&(s, ok)| ok && s != 0 && s != n)
            .map(|(s, _)| s)
            .collect()
    }
}

fn usable_reduction(f: &IntPoly, p: u64) -> std::result::Result<GfPoly, PrimeSkip> {
    let lc = f.leading().expect("nonzero polynomial");
    if lc.is_divisible_u(p as u32) {
        return Err(PrimeSkip::DividesLeadingCoefficient);
    }
    let r = GfPoly::reduce(f, p);
    if !r.is_squarefree() {
        return Err(PrimeSkip::NotSquarefree);
    }
    Ok(r.monic())
}

/// Multiset of irreducible factor degrees of `f mod p`.
pub fn factor_degrees_mod_p(f: &IntPoly, p: u64) -> std::result::Result<FactorPattern, PrimeSkip> {
    let r = usable_reduction(f, p)?;
    let mut degrees = Vec::new();
    for (i, g) in r.distinct_degree() {
        let count = g.degree().unwrap() / i;
        degrees.extend(std::iter::repeat_n(i, count));
    }
    degrees.sort_unstable();
    Ok(FactorPattern { prime: p, degrees })
}

/// Full factorization of `f mod p` into monic irreducibles (up to the
/// leading coefficient), by distinct-degree then equal-degree splitting.
pub fn factor_mod_p(f: &IntPoly, p: u64) -> std::result::Result<Vec<GfPoly>, PrimeSkip> {
    let r = usable_reduction(f, p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(p);
    let mut out = Vec::new();
    for (i, g) in r.distinct_degree() {
        out.extend(g.equal_degree(i, &mut rng));
    }
    out.sort_by(|a, b| {
        a.degree()
            .cmp(&b.degree())
            .then_with(|| a.coeffs().cmp(b.coeffs()))
    });
    Ok(out)
}

/// A prime modulo which `f` stays squarefree of full degree; its existence
/// proves `gcd(f, f') = 1` over the rationals.
pub(crate) fn modp_squarefree_witness(f: &IntPoly) -> Option<u64> {
    small_primes()
        .into_iter()
        .skip(1)
        .take(8)
        .find(|&p| usable_reduction(f, p).is_ok())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IrredStatus {
    Certified,
    /// Exact factors whose product is the input.
    Reducible(Vec<IntPoly>),
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrredVerdict {
    pub status: IrredStatus,
    pub primes_used: Vec<u64>,
    /// Achievable proper-factor degrees for each usable prime.
    pub evidence: Vec<(u64, Vec<usize>)>,
    /// Proper degrees not yet excluded after all primes.
    pub surviving_degrees: Vec<usize>,
}

/// Degree-pattern irreducibility test over `Q`.
///
/// Walks primes from 2 upwards, skipping those dividing the leading
/// coefficient or giving a non-squarefree reduction, for at most
/// `prime_budget` usable primes. A proper factor of degree `s` over `Q`
/// would reduce to a product of modular factors of total degree `s`, so once
/// no `s` is achievable at every prime the polynomial is certified. Otherwise
/// the recorded exceptional factors are tried as exact divisors.
pub fn irreducibility_certificate(f: &IntPoly, prime_budget: usize) -> Result<IrredVerdict> {
    let n = match f.degree() {
        Some(n) if n >= 1 => n,
        _ => {
            return Err(GoncharError::Precondition(
                "irreducibility test needs degree >= 1".into(),
            ))
        }
    };
    if f.content() != 1 {
        return Err(GoncharError::Precondition(
            "irreducibility test needs a primitive polynomial".into(),
        ));
    }
    let mut surviving: Vec<bool> = (0..=n).map(|s| s != 0 && s != n).collect();
    let mut primes_used = Vec::new();
    let mut evidence = Vec::new();
    let mut certified = n == 1;
    for p in small_primes() {
        if certified || primes_used.len() >= prime_budget {
            break;
        }
        let Ok(pattern) = factor_degrees_mod_p(f, p) else {
            continue;
        };
        let sums = pattern.subset_sums();
        for (s, alive) in surviving.iter_mut().enumerate() {
            *alive &= sums[s];
        }
        primes_used.push(p);
        evidence.push((p, pattern.proper_degrees()));
        certified = !surviving.iter().any(|&a| a);
    }
    let surviving_degrees: Vec<usize> = surviving
        .iter()
        .enumerate()
        .filter(|&(_, &a)| a)
        .map(|(s, _)| s)
        .collect();
    let status = if certified {
        IrredStatus::Certified
    } else {
        match recombine_known_factors(f)? {
            Some(w) => IrredStatus::Reducible(w),
            None => IrredStatus::Inconclusive,
        }
    };
    Ok(IrredVerdict {
        status,
        primes_used,
        evidence,
        surviving_degrees,
    })
}

/// Strip exceptional-table factors off `f` by exact division.
fn recombine_known_factors(f: &IntPoly) -> Result<Option<Vec<IntPoly>>> {
    let mut rest = f.clone();
    let mut witnesses = Vec::new();
    for fac in exceptional_factorizations()?
        .into_iter()
        .flat_map(|e| e.factors)
    {
        if fac.degree() == Some(0) || witnesses.contains(&fac) {
            continue;
        }
        while rest.degree().unwrap_or(0) >= fac.degree().unwrap() {
            match rest.divide_exact(&fac) {
                Ok(q) => {
                    witnesses.push(fac.clone());
                    rest = q;
                }
                Err(_) => break,
            }
        }
    }
    if witnesses.is_empty() || (witnesses.len() == 1 && rest.degree() == Some(0)) {
        return Ok(None);
    }
    if rest.degree() != Some(0) {
        witnesses.push(rest);
    } else if rest != IntPoly::constant(1) {
        // unit cofactor folded into the first witness
        let unit = rest.coeff(0);
        witnesses[0] = witnesses[0].mul_scalar(&unit);
    }
    Ok(Some(witnesses))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> IntPoly {
        IntPoly::from_i64s(v)
    }

    #[test]
    fn ell_factor_cases() {
        assert_eq!(ell_factor(3), ints(&[1]));
        assert_eq!(ell_factor(2), ints(&[1, 1]));
        assert_eq!(ell_factor(12), ints(&[1, 0, 0, 1]));
    }

    #[test]
    fn divisibility_cases() {
        let flags = |d| {
            let k = known_divisibility(d).unwrap();
            (k.z_plus_one, k.cyclotomic)
        };
        assert_eq!(flags(2), (true, false));
        assert_eq!(flags(3), (false, false));
        assert_eq!(flags(6), (true, true));
    }

    #[test]
    fn reduced_polynomial_cases() {
        assert_eq!(reduced_polynomial(2).unwrap(), ints(&[1, -3, 1]));
        assert_eq!(
            reduced_polynomial(6).unwrap(),
            ints(&[1, -6, 15, -21, 21, -21, 15, -6, 1])
        );
        assert_eq!(reduced_polynomial(3).unwrap(), gonchar_poly(3).unwrap());
    }

    #[test]
    fn patterns() {
        // z^2 - 3z + 1 = z^2 + 1 mod 3, irreducible (no roots among 0, 1, 2)
        let f = ints(&[1, -3, 1]);
        let roots_mod3 = (0..3).filter(|&x| (x * x + 1) % 3 == 0).count();
        assert_eq!(roots_mod3, 0);
        assert_eq!(factor_degrees_mod_p(&f, 3).unwrap().degrees, vec![2]);
        // z^3 + 1 = (z+1)(z^2+z+1) mod 2
        assert_eq!(
            factor_degrees_mod_p(&ints(&[1, 0, 0, 1]), 2)
                .unwrap()
                .degrees,
            vec![1, 2]
        );
        assert_eq!(
            factor_degrees_mod_p(&ints(&[-1, 0, 1]), 3).unwrap().degrees,
            vec![1, 1]
        );
        // z^2 - 1 = (z+1)^2 mod 2
        assert_eq!(
            factor_degrees_mod_p(&ints(&[-1, 0, 1]), 2),
            Err(PrimeSkip::NotSquarefree)
        );
        assert_eq!(
            factor_degrees_mod_p(&ints(&[1, 3]), 3),
            Err(PrimeSkip::DividesLeadingCoefficient)
        );
    }

    #[test]
    fn subset_sums() {
        let pat = FactorPattern {
            prime: 5,
            degrees: vec![1, 2, 4],
        };
        assert_eq!(pat.proper_degrees(), vec![1, 2, 3, 4, 5, 6]);
        let pat = FactorPattern {
            prime: 5,
            degrees: vec![2, 2],
        };
        assert_eq!(pat.proper_degrees(), vec![2]);
    }

    #[test]
    fn certificate_small() {
        let v = irreducibility_certificate(&ints(&[1, -3, 1]), 5).unwrap();
        assert_eq!(v.status, IrredStatus::Certified);
        let v = irreducibility_certificate(&reduced_polynomial(4).unwrap(), DEFAULT_PRIME_BUDGET)
            .unwrap();
        assert_eq!(
            v.status,
            IrredStatus::Reducible(vec![ints(&[-1, 2, -3, 1]), ints(&[-1, 3, -2, 1])])
        );
        let v = irreducibility_certificate(&reduced_polynomial(8).unwrap(), DEFAULT_PRIME_BUDGET)
            .unwrap();
        assert_eq!(
            v.status,
            IrredStatus::Reducible(vec![
                ints(&[1, -3, 3, -3, 1]),
                ints(&[1, -6, 16, -24, 24, -21, 24, -24, 16, -6, 1]),
            ])
        );
        assert!(irreducibility_certificate(&ints(&[3]), 5).is_err());
        assert!(irreducibility_certificate(&ints(&[2, 4]), 5).is_err());
    }

    #[test]
    fn exceptional_table_self_checks() {
        let t = exceptional_factorizations().unwrap();
        assert_eq!(t.iter().map(|e| e.d).collect::<Vec<_>>(), vec![4, 8, 12]);
        assert_eq!(t[2].factors[3].degree(), Some(14));
    }

    #[test]
    fn primes() {
        let p = small_primes();
        assert_eq!(&p[..6], &[2, 3, 5, 7, 11, 13]);
        assert_eq!(*p.last().unwrap(), 9973);
    }
}
