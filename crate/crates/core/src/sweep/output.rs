//! CSV, JSON and SVG output of sweep rows.
//!
//! Floats are written as the shortest decimal that parses back to the same
//! value. JSON has no literal for non-finite numbers, so those are written as
//! the strings "NaN", "inf" and "-inf".

use std::fmt::Write as _;
use std::io::Write;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::SweepRow;
use crate::error::{Error, Result};

pub const CSV_HEADER: [&str; 9] = ["x_or_epsilon", "alpha", "delta0", "delta", "difference", "F", "err", "method", "flags"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
    Svg,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            "svg" => Ok(Self::Svg),
            other => Err(Error::Config(format!("unknown format '{other}' (csv, json, svg)"))),
        }
    }
}

/// Which column the chart shows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum YColumn {
    Delta0,
    Delta,
    Difference,
    F,
}

impl YColumn {
    fn get(self, r: &SweepRow) -> f64 {
        match self {
            YColumn::Delta0 => r.delta0,
            YColumn::Delta => r.delta,
            YColumn::Difference => r.difference,
            YColumn::F => r.f,
        }
    }

    fn label(self) -> &'static str {
        match self {
            YColumn::Delta0 => "Delta0 / (g^2 omega0)",
            YColumn::Delta => "Delta / (g^2 omega0)",
            YColumn::Difference => "(Delta - Delta0) / (g^2 omega0)",
            YColumn::F => "F",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlotOptions {
    pub y: YColumn,
    /// Plot log10 |y|.
    pub log_y: bool,
    /// Vertical markers, in the units of the first column.
    pub markers: Vec<f64>,
}

impl Default for PlotOptions {
    fn default() -> Self {
        Self { y: YColumn::Delta, log_y: false, markers: Vec::new() }
    }
}

fn fmt_float(v: f64) -> String {
    if v.is_nan() {
        "NaN".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        ryu::Buffer::new().format_finite(v).into()
    }
}

fn parse_float(s: &str) -> Result<f64> {
    s.trim().parse().map_err(|_| Error::Config(format!("not a number: '{s}'")))
}

/// Writes `rows` in the given format.
pub fn emit_output(rows: &[SweepRow], format: OutputFormat, plot: &PlotOptions, out: &mut impl Write) -> Result<()> {
    if rows.is_empty() {
        return Err(Error::Domain("no rows to write".into()));
    }
    match format {
        OutputFormat::Csv => write_csv(rows, out),
        OutputFormat::Json => {
            let json: Vec<JsonRow> = rows.iter().map(JsonRow).collect();
            serde_json::to_writer_pretty(&mut *out, &json).map_err(|e| Error::Io(e.to_string()))?;
            writeln!(out)?;
            Ok(())
        }
        OutputFormat::Svg => {
            out.write_all(render_svg(rows, plot).as_bytes())?;
            Ok(())
        }
    }
}

fn write_csv(rows: &[SweepRow], out: &mut impl Write) -> Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(out);
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(CSV_HEADER).map_err(io)?;
    for r in rows {
        let nums = [r.x_or_epsilon, r.alpha, r.delta0, r.delta, r.difference, r.f, r.err].map(fmt_float);
        let mut rec: Vec<&str> = nums.iter().map(String::as_str).collect();
        rec.push(&r.method);
        rec.push(&r.flags);
        w.write_record(&rec).map_err(io)?;
    }
    w.flush()?;
    Ok(())
}

/// Reads rows back from CSV text written by `emit_output`.
pub fn parse_csv(text: &str) -> Result<Vec<SweepRow>> {
    let mut rd = csv::ReaderBuilder::new().from_reader(text.as_bytes());
    let header = rd.headers().map_err(|e| Error::Config(e.to_string()))?;
    if header.iter().ne(CSV_HEADER) {
        return Err(Error::Config(format!("unexpected header {header:?}")));
    }
    let mut rows = Vec::new();
    for rec in rd.records() {
        let rec = rec.map_err(|e| Error::Config(e.to_string()))?;
        if rec.len() != CSV_HEADER.len() {
            return Err(Error::Config(format!("row with {} fields", rec.len())));
        }
        let n = |i: usize| parse_float(&rec[i]);
        rows.push(SweepRow {
            x_or_epsilon: n(0)?,
            alpha: n(1)?,
            delta0: n(2)?,
            delta: n(3)?,
            difference: n(4)?,
            f: n(5)?,
            err: n(6)?,
            method: rec[7].to_string(),
            flags: rec[8].to_string(),
        });
    }
    Ok(rows)
}

/// Reads rows back from JSON text written by `emit_output`.
pub fn parse_json(text: &str) -> Result<Vec<SweepRow>> {
    let rows: Vec<JsonRowOwned> = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
    Ok(rows.into_iter().map(|r| r.0).collect())
}

struct JsonRow<'a>(&'a SweepRow);

#[derive(Serialize)]
struct JsonRowRef<'a> {
    x_or_epsilon: JsonFloat,
    alpha: JsonFloat,
    delta0: JsonFloat,
    delta: JsonFloat,
    difference: JsonFloat,
    #[serde(rename = "F")]
    f: JsonFloat,
    err: JsonFloat,
    method: &'a str,
    flags: &'a str,
}

impl Serialize for JsonRow<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let r = self.0;
        JsonRowRef {
            x_or_epsilon: JsonFloat(r.x_or_epsilon),
            alpha: JsonFloat(r.alpha),
            delta0: JsonFloat(r.delta0),
            delta: JsonFloat(r.delta),
            difference: JsonFloat(r.difference),
            f: JsonFloat(r.f),
            err: JsonFloat(r.err),
            method: &r.method,
            flags: &r.flags,
        }
        .serialize(s)
    }
}

struct JsonRowOwned(SweepRow);

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonRowFields {
    x_or_epsilon: JsonFloat,
    alpha: JsonFloat,
    delta0: JsonFloat,
    delta: JsonFloat,
    difference: JsonFloat,
    #[serde(rename = "F")]
    f: JsonFloat,
    err: JsonFloat,
    method: String,
    flags: String,
}

impl<'de> Deserialize<'de> for JsonRowOwned {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = JsonRowFields::deserialize(d)?;
        Ok(JsonRowOwned(SweepRow {
            x_or_epsilon: r.x_or_epsilon.0,
            alpha: r.alpha.0,
            delta0: r.delta0.0,
            delta: r.delta.0,
            difference: r.difference.0,
            f: r.f.0,
            err: r.err.0,
            method: r.method,
            flags: r.flags,
        }))
    }
}

/// A float that writes non-finite values as strings.
struct JsonFloat(f64);

impl Serialize for JsonFloat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            s.serialize_f64(self.0)
        } else {
            s.serialize_str(&fmt_float(self.0))
        }
    }
}

impl<'de> Deserialize<'de> for JsonFloat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(JsonFloat(v)),
            Raw::Text(t) => match t.as_str() {
                "NaN" => Ok(JsonFloat(f64::NAN)),
                "inf" => Ok(JsonFloat(f64::INFINITY)),
                "-inf" => Ok(JsonFloat(f64::NEG_INFINITY)),
                _ => Err(serde::de::Error::custom(format!("not a number: '{t}'"))),
            },
        }
    }
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

/// One line chart, a polyline per alpha series, dashed verticals at the
/// markers. Points that failed or are non-finite break the line.
fn render_svg(rows: &[SweepRow], plot: &PlotOptions) -> String {
    let (w, h) = (800.0, 500.0);
    let (ml, mr, mt, mb) = (80.0, 150.0, 30.0, 50.0);
    let y_of = |r: &SweepRow| {
        let v = plot.y.get(r);
        if plot.log_y {
            v.abs().log10()
        } else {
            v
        }
    };
    let pts: Vec<(f64, f64)> =
        rows.iter().map(|r| (r.x_or_epsilon, y_of(r))).filter(|(x, y)| x.is_finite() && y.is_finite()).collect();
    let range = |it: &mut dyn Iterator<Item = f64>| {
        let (lo, hi) = it.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
        if !(lo < hi) {
            let c = if lo.is_finite() { lo } else { 0.0 };
            (c - 1.0, c + 1.0)
        } else {
            (lo, hi)
        }
    };
    let (x0, x1) = range(&mut pts.iter().map(|p| p.0));
    let (y0, y1) = range(&mut pts.iter().map(|p| p.1));
    let px = |x: f64| ml + (x - x0) / (x1 - x0) * (w - ml - mr);
    let py = |y: f64| h - mb - (y - y0) / (y1 - y0) * (h - mt - mb);

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#);
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{w}" height="{h}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r##"<rect x="{ml}" y="{mt}" width="{}" height="{}" fill="none" stroke="#444"/>"##,
        w - ml - mr,
        h - mt - mb
    );
    for m in plot.markers.iter().filter(|m| **m >= x0 && **m <= x1) {
        let x = px(*m);
        let _ = writeln!(
            s,
            r##"<line x1="{x:.2}" y1="{mt}" x2="{x:.2}" y2="{}" stroke="#888" stroke-dasharray="4 3"/>"##,
            h - mb
        );
        let _ = writeln!(s, r##"<circle cx="{x:.2}" cy="{}" r="3" fill="red"/>"##, h - mb);
    }
    let mut series: Vec<f64> = Vec::new();
    for r in rows {
        if !series.iter().any(|a| a.to_bits() == r.alpha.to_bits()) {
            series.push(r.alpha);
        }
    }
    for (k, alpha) in series.iter().enumerate() {
        let color = COLORS[k % COLORS.len()];
        let mut run: Vec<String> = Vec::new();
        let flush = |run: &mut Vec<String>, s: &mut String| {
            if run.len() > 1 {
                let _ = writeln!(s, r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#, run.join(" "));
            }
            run.clear();
        };
        for r in rows.iter().filter(|r| r.alpha.to_bits() == alpha.to_bits()) {
            let (x, y) = (r.x_or_epsilon, y_of(r));
            if x.is_finite() && y.is_finite() {
                run.push(format!("{:.2},{:.2}", px(x), py(y)));
            } else {
                flush(&mut run, &mut s);
            }
        }
        flush(&mut run, &mut s);
        let ly = mt + 20.0 * (k as f64 + 1.0);
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{ly}" font-family="sans-serif" font-size="12" fill="{color}">alpha = {}</text>"#,
            w - mr + 10.0,
            xml_escape(&fmt_float(*alpha))
        );
    }
    let ylabel = if plot.log_y { format!("log10 |{}|", plot.y.label()) } else { plot.y.label().to_string() };
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12" text-anchor="middle">x_or_epsilon [{} .. {}]</text>"#,
        ml + (w - ml - mr) / 2.0,
        h - 15.0,
        xml_escape(&fmt_float(x0)),
        xml_escape(&fmt_float(x1))
    );
    let _ = writeln!(
        s,
        r#"<text x="15" y="{}" font-family="sans-serif" font-size="12" text-anchor="middle" transform="rotate(-90 15 {})">{} [{} .. {}]</text>"#,
        mt + (h - mt - mb) / 2.0,
        mt + (h - mt - mb) / 2.0,
        xml_escape(&ylabel),
        xml_escape(&fmt_float(y0)),
        xml_escape(&fmt_float(y1))
    );
    s.push_str("</svg>\n");
    s
}
