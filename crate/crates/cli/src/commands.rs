//! One function per subcommand. Each returns a structured payload plus the
//! optional table and text renderings; printing happens in `lib.rs`.

use std::fmt::Write;
use std::path::PathBuf;

use gonchar_core::complex_roots::SolveOptions;
use gonchar_core::equilibrium::{density, density_profile, f_q, positive_cap, total_mass};
use gonchar_core::factor::{
    ell_factor, irreducibility_certificate, reduced_polynomial, IrredStatus,
};
use gonchar_core::geometry::classify_zeros;
use gonchar_core::mp::{decimal_digits, format_positional, parse_float};
use gonchar_core::real_roots::critical_distance;
use gonchar_core::{gonchar_poly_q, GoncharError, IntPoly, RatQ};
use rayon::prelude::*;
use rug::Float;
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::{DRange, NumericArgs};
use crate::cache::Cache;
use crate::tables::{radius_text, write_csv, CensusRow, DensityRow, ZeroRow, ZeroTable};
use crate::CliError;

pub struct Outcome {
    pub payload: Value,
    /// false when a verification found a violated property
    pub passed: bool,
    pub csv: Option<String>,
    pub text: String,
    pub files: Vec<(PathBuf, String)>,
}

impl Outcome {
    fn new(payload: Value, text: String) -> Self {
        Outcome {
            payload,
            passed: true,
            csv: None,
            text,
            files: Vec::new(),
        }
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("payload types serialize")
}

fn coeff_strings(p: &IntPoly) -> Vec<String> {
    p.coeffs().iter().map(|c| c.to_string()).collect()
}

fn csv_text<T: Serialize>(rows: &[T]) -> Result<String, CliError> {
    write_csv(rows).map_err(|e| CliError::io(format!("csv: {e}")))
}

pub fn poly(d: u32, q: &RatQ) -> Result<Outcome, CliError> {
    let inst = gonchar_poly_q(d, q)?;
    let coefficients = coeff_strings(&inst.poly);
    let text = format!(
        "G({d},{q};z) * {} = [{}]\n",
        inst.clearing_factor,
        coefficients.join(", ")
    );
    let payload = json!({
        "d": d,
        "q": q.to_string(),
        "clearing_factor": inst.clearing_factor.to_string(),
        "degree": inst.poly.degree(),
        "coefficients": coefficients,
    });
    Ok(Outcome::new(payload, text))
}

fn tolerance(num: &NumericArgs, default_bits: i32) -> Result<Float, CliError> {
    match (&num.tol, num.prec) {
        (Some(t), _) => Ok(parse_float(t, 64)?),
        (None, Some(p)) => Ok(Float::with_val(64, Float::i_exp(1, 16 - p as i32))),
        (None, None) => Ok(Float::with_val(64, Float::i_exp(1, default_bits))),
    }
}

pub fn rho(d: u32, q: &RatQ, num: &NumericArgs) -> Result<Outcome, CliError> {
    let tol = tolerance(num, -100)?;
    let r = critical_distance(d, q, &tol)?;
    let digits = decimal_digits(r.working_precision);
    let rho = r.offset(-1);
    let payload = json!({
        "d": d,
        "q": q.to_string(),
        "R": format_positional(&r.value, digits),
        "rho": format_positional(&rho.value, digits),
        "radius": radius_text(&r.radius),
        "precision_bits": r.working_precision,
        "exact": r.exact.is_some(),
        "exact_value": r.exact.as_ref().map(|e| e.to_string()),
    });
    let text = format!(
        "R = {}\nrho = {}\nradius = {}\nprecision = {} bits{}\n",
        format_positional(&r.value, digits),
        format_positional(&rho.value, digits),
        radius_text(&r.radius),
        r.working_precision,
        if r.exact.is_some() { " (exact)" } else { "" }
    );
    Ok(Outcome::new(payload, text))
}

fn solve_options(num: &NumericArgs) -> Result<SolveOptions, CliError> {
    let mut opts = SolveOptions::default();
    if let Some(p) = num.prec {
        opts.start_precision = p;
    }
    opts.tol = tolerance(num, -100)?;
    Ok(opts)
}

/// Classified zero set for one `d`, through the cache.
pub fn zero_table(d: u32, opts: &SolveOptions, cache: &Cache) -> Result<ZeroTable, CliError> {
    let tol_text = format!("{:e}", opts.tol.to_f64());
    let key = Cache::key(d, "1/1", opts.start_precision, &tol_text);
    if let Some(t) = cache.load(&key) {
        if t.d == d && t.rows.len() == 2 * d as usize - 1 {
            return Ok(t);
        }
    }
    let table = ZeroTable::from_classified(&classify_zeros(d, opts)?);
    if let Err(e) = cache.store(&key, &table) {
        eprintln!(
            "gonchar: cache write to {} failed: {e}",
            cache.dir().display()
        );
    }
    Ok(table)
}

fn tables_for(
    range: &DRange,
    num: &NumericArgs,
    cache: &Cache,
) -> Result<Vec<ZeroTable>, CliError> {
    let degrees = range
        .degrees()
        .ok_or_else(|| CliError::usage("--d-min must not exceed --d-max"))?;
    let opts = solve_options(num)?;
    degrees
        .par_iter()
        .map(|&d| zero_table(d, &opts, cache))
        .collect()
}

pub fn zeros(
    range: &DRange,
    num: &NumericArgs,
    svg: Option<&PathBuf>,
    cache: &Cache,
) -> Result<Outcome, CliError> {
    let tables = tables_for(range, num, cache)?;
    let rows: Vec<ZeroRow> = tables.iter().flat_map(|t| t.rows.iter().cloned()).collect();
    let mut text = String::new();
    for r in &rows {
        let _ = writeln!(
            text,
            "{:>4} {:>4}  {} {}  r={}  {}",
            r.d, r.index, r.re, r.im, r.radius, r.region
        );
    }
    let sets: Vec<Value> = tables
        .iter()
        .map(|t| json!({ "d": t.d, "precision_bits": t.precision_bits, "zeros": to_value(&t.rows), "census": to_value(&t.census()) }))
        .collect();
    let mut out = Outcome::new(json!({ "sets": sets }), text);
    out.csv = Some(csv_text(&rows)?);
    if let Some(path) = svg {
        out.files
            .push((path.clone(), crate::svg::zero_plot(&tables)));
    }
    Ok(out)
}

pub fn census(range: &DRange, num: &NumericArgs, cache: &Cache) -> Result<Outcome, CliError> {
    let tables = tables_for(range, num, cache)?;
    let rows: Vec<CensusRow> = tables.iter().map(|t| t.census()).collect();
    let mut text = String::from("   d    n   N1   N2   N3  on_C0  pair\n");
    for r in &rows {
        let _ = writeln!(
            text,
            "{:>4} {:>4} {:>4} {:>4} {:>4} {:>6}  {}",
            r.d, r.n, r.n1, r.n2, r.n3, r.on_circle, r.intersection_pair
        );
    }
    let mut out = Outcome::new(json!({ "rows": to_value(&rows) }), text);
    out.csv = Some(csv_text(&rows)?);
    Ok(out)
}

pub fn factors(d: u32, primes: usize) -> Result<Outcome, CliError> {
    let f = reduced_polynomial(d)?;
    let v = irreducibility_certificate(&f, primes)?;
    let (status, witnesses) = match &v.status {
        IrredStatus::Certified => ("Certified", Vec::new()),
        IrredStatus::Reducible(ws) => ("Reducible", ws.iter().map(coeff_strings).collect()),
        IrredStatus::Inconclusive => ("Inconclusive", Vec::new()),
    };
    let evidence: Vec<Value> = v
        .evidence
        .iter()
        .map(|(p, degs)| json!({ "prime": p, "proper_degrees": degs }))
        .collect();
    let payload = json!({
        "d": d,
        "ell": coeff_strings(&ell_factor(d)),
        "degree": f.degree(),
        "status": status,
        "primes_used": v.primes_used,
        "evidence": evidence,
        "surviving_degrees": v.surviving_degrees,
        "witnesses": witnesses,
    });
    let mut text = format!(
        "G({d};z)/l({d};z): degree {}, {status}\nprimes: {:?}\n",
        f.degree().unwrap_or(0),
        v.primes_used
    );
    for w in &witnesses {
        let _ = writeln!(text, "factor [{}]", w.join(", "));
    }
    Ok(Outcome::new(payload, text))
}

fn shortest(x: f64) -> String {
    format!("{x:?}")
}

pub fn density_cmd(d: u32, r: f64, q: &RatQ, samples: u32) -> Result<Outcome, CliError> {
    let qf = q.to_f64();
    let profile = density_profile(r, qf, d, samples as usize)?;
    let cap = positive_cap(r, qf, d, 1e-12)?;
    let mass = total_mass(r, qf, d, 1e-12)?;
    let pole = density(0.0, r, qf, d)?;
    let rq = critical_distance(d, q, &Float::with_val(64, Float::i_exp(1, -80)))?
        .value
        .to_f64();
    let rows: Vec<DensityRow> = profile
        .samples
        .iter()
        .map(|&(t, eta)| DensityRow {
            t: shortest(t),
            eta: shortest(eta),
        })
        .collect();
    let payload = json!({
        "d": d,
        "R": shortest(r),
        "q": q.to_string(),
        "F_Q": shortest(f_q(r, qf, d)),
        "min_density": shortest(pole),
        "argmin_t": "0.0",
        "t0": shortest(cap.t0),
        "cos_t0": shortest(cap.t0.cos()),
        "positive_mass": shortest(cap.positive_mass),
        "total_mass": shortest(mass),
        "critical_distance": shortest(rq),
        "nonnegative": pole >= 0.0,
        "samples": to_value(&rows),
    });
    let text = format!(
        "min density {} at t = 0\nF_Q = {}\nt0 = {}  positive mass = {}\ntotal mass = {}\nR_q = {}\n",
        shortest(pole),
        shortest(f_q(r, qf, d)),
        shortest(cap.t0),
        shortest(cap.positive_mass),
        shortest(mass),
        shortest(rq)
    );
    let mut out = Outcome::new(payload, text);
    out.csv = Some(csv_text(&rows)?);
    Ok(out)
}

impl From<GoncharError> for CliError {
    fn from(e: GoncharError) -> Self {
        let code = match e {
            GoncharError::Domain(_) | GoncharError::Precondition(_) => 2,
            GoncharError::NumericFailure(_) | GoncharError::UnresolvedClassification(_) => 3,
            GoncharError::Consistency(_) | GoncharError::InexactDivision { .. } => 1,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}
