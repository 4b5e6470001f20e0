//! Row types behind the CSV files and their text form.

use gonchar_core::geometry::{ClassifiedZeros, Region};
use gonchar_core::mp::{decimal_digits, format_positional};
use rug::Float;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroRow {
    pub d: u32,
    pub index: usize,
    pub re: String,
    pub im: String,
    pub radius: String,
    pub region: String,
    pub on_c0: bool,
}

/// One classified zero set in printable form; also the cache record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroTable {
    pub d: u32,
    pub precision_bits: u32,
    pub rows: Vec<ZeroRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRow {
    pub d: u32,
    pub n: usize,
    #[serde(rename = "N1")]
    pub n1: usize,
    #[serde(rename = "N2")]
    pub n2: usize,
    #[serde(rename = "N3")]
    pub n3: usize,
    pub on_circle: usize,
    pub intersection_pair: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityRow {
    pub t: String,
    pub eta: String,
}

/// Radius printed with six digits after inflating it past any decimal
/// rounding, so the printed value still encloses the zero.
pub fn radius_text(r: &Float) -> String {
    if r.is_zero() {
        return "0.0".to_string();
    }
    let up = Float::with_val(64, r * 1.0001f64);
    format_positional(&up, 6)
}

impl ZeroTable {
    pub fn from_classified(c: &ClassifiedZeros) -> Self {
        let prec = c.zeros.working_precision;
        let digits = decimal_digits(prec);
        let rows = c
            .zeros
            .zeros
            .iter()
            .zip(&c.regions)
            .enumerate()
            .map(|(index, (z, region))| ZeroRow {
                d: c.d,
                index,
                re: format_positional(&z.value.re, digits),
                im: format_positional(&z.value.im, digits),
                radius: radius_text(&z.radius),
                region: region.as_str().to_string(),
                on_c0: matches!(region, Region::OnC0 | Region::IntersectionPoint),
            })
            .collect();
        ZeroTable {
            d: c.d,
            precision_bits: prec,
            rows,
        }
    }

    pub fn census(&self) -> CensusRow {
        let count = |name: &str| self.rows.iter().filter(|r| r.region == name).count();
        let on_c0 = count(Region::OnC0.as_str());
        let inter = count(Region::IntersectionPoint.as_str());
        CensusRow {
            d: self.d,
            n: self.rows.len(),
            n1: count(Region::A1.as_str()) + on_c0,
            n2: count(Region::A2.as_str()),
            n3: count(Region::A3.as_str()),
            on_circle: on_c0 + inter,
            intersection_pair: inter == 2,
        }
    }
}

pub fn write_csv<T: Serialize>(rows: &[T]) -> csv::Result<String> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    let bytes = w
        .into_inner()
        .map_err(|e| csv::Error::from(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn read_csv<T: DeserializeOwned>(text: &str) -> csv::Result<Vec<T>> {
    csv::ReaderBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_reader(text.as_bytes())
        .deserialize()
        .collect()
}
