//! Scatter plot of zero sets against the circles `|z| = 1`, `|z - 1| = 1`,
//! the line `Re z = 1/2` and the limit set `Γ`.

use std::fmt::Write;

use crate::tables::ZeroTable;

const SIZE: f64 = 800.0;
const RE_MIN: f64 = -1.6;
const RE_MAX: f64 = 2.6;
const IM_MIN: f64 = -2.1;
const IM_MAX: f64 = 2.1;

fn px(re: f64, im: f64) -> (f64, f64) {
    (
        (re - RE_MIN) / (RE_MAX - RE_MIN) * SIZE,
        (IM_MAX - im) / (IM_MAX - IM_MIN) * SIZE,
    )
}

fn scale() -> f64 {
    SIZE / (RE_MAX - RE_MIN)
}

fn marker(out: &mut String, region: &str, x: f64, y: f64) {
    let s = 4.0;
    let _ = match region {
        "A1" => writeln!(
            out,
            r##"<path d="M{:.2} {:.2}L{:.2} {:.2}M{:.2} {:.2}L{:.2} {:.2}" stroke="#1f5fa8" stroke-width="1.2"/>"##,
            x - s,
            y - s,
            x + s,
            y + s,
            x - s,
            y + s,
            x + s,
            y - s
        ),
        "A2" => writeln!(
            out,
            r##"<polygon points="{:.2},{:.2} {:.2},{:.2} {:.2},{:.2} {:.2},{:.2}" fill="#b8461b"/>"##,
            x,
            y - s,
            x + s,
            y,
            x,
            y + s,
            x - s,
            y
        ),
        "A3" => writeln!(
            out,
            r##"<path d="M{:.2} {:.2}L{:.2} {:.2}M{:.2} {:.2}L{:.2} {:.2}" stroke="#2c7a2c" stroke-width="1.2"/>"##,
            x - s,
            y,
            x + s,
            y,
            x,
            y - s,
            x,
            y + s
        ),
        "OnC0" => writeln!(
            out,
            r##"<circle cx="{x:.2}" cy="{y:.2}" r="3.50" fill="none" stroke="#6a1b9a" stroke-width="1.2"/>"##
        ),
        _ => {
            let pts: Vec<String> = (0..10)
                .map(|k| {
                    let a = std::f64::consts::PI * k as f64 / 5.0 - std::f64::consts::FRAC_PI_2;
                    let r = if k % 2 == 0 { 6.0 } else { 2.5 };
                    format!("{:.2},{:.2}", x + r * a.cos(), y + r * a.sin())
                })
                .collect();
            writeln!(
                out,
                r##"<polygon points="{}" fill="#d4a017"/>"##,
                pts.join(" ")
            )
        }
    };
}

/// Byte-for-byte reproducible SVG for the given zero sets.
pub fn zero_plot(tables: &[ZeroTable]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="800" height="800" viewBox="0 0 800 800">"#
    );
    out.push_str("<rect width=\"800\" height=\"800\" fill=\"white\"/>\n");
    let r = scale();
    let (c0x, c0y) = px(0.0, 0.0);
    let (c1x, c1y) = px(1.0, 0.0);
    let _ = writeln!(
        out,
        r##"<circle cx="{c0x:.2}" cy="{c0y:.2}" r="{r:.2}" fill="none" stroke="#999999" stroke-width="0.8"/>"##
    );
    let _ = writeln!(
        out,
        r##"<circle cx="{c1x:.2}" cy="{c1y:.2}" r="{r:.2}" fill="none" stroke="#999999" stroke-width="0.8"/>"##
    );
    let (lx, _) = px(0.5, 0.0);
    let _ = writeln!(
        out,
        r##"<line x1="{lx:.2}" y1="0.00" x2="{lx:.2}" y2="800.00" stroke="#999999" stroke-width="0.8" stroke-dasharray="4 4"/>"##
    );
    let h = 3f64.sqrt() / 2.0;
    let (tx, ty) = px(0.5, h);
    let (bx, by) = px(0.5, -h);
    let _ = writeln!(
        out,
        r##"<path d="M{tx:.2} {ty:.2}A{r:.2} {r:.2} 0 1 0 {bx:.2} {by:.2}M{tx:.2} {ty:.2}A{r:.2} {r:.2} 0 1 1 {bx:.2} {by:.2}M{tx:.2} {ty:.2}L{bx:.2} {by:.2}" fill="none" stroke="#444444" stroke-width="1.6"/>"##
    );
    for t in tables {
        for row in &t.rows {
            let re: f64 = row.re.parse().unwrap_or(f64::NAN);
            let im: f64 = row.im.parse().unwrap_or(f64::NAN);
            if !(re.is_finite() && im.is_finite()) {
                continue;
            }
            let (x, y) = px(re, im);
            marker(&mut out, &row.region, x, y);
        }
    }
    out.push_str("</svg>\n");
    out
}
