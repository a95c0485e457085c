//! Text, JSON and CSV renderings of solver output.

use serde::{Deserialize, Serialize};

use crate::diagnostics::{format_sci3, ResidualReport};
use crate::error::Result;
use crate::exactmath::rational::format_rational;
use crate::exactmath::{parse_rational, Polynomial};
use crate::ham::{Method, SolutionSeries};

/// Width cap for polynomial cells in text tables.
pub const ELISION_WIDTH: usize = 120;

/// JSON form of a [`SolutionSeries`]. Coefficients are exact rational
/// strings, so parsing and re-emitting a document reproduces it byte for
/// byte.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolutionDoc {
    pub method: Method,
    pub c0: Option<String>,
    pub t0: String,
    pub x0: String,
    pub terms: Vec<Polynomial>,
    pub partial_sums: Vec<Polynomial>,
}

impl SolutionDoc {
    pub fn from_series(series: &SolutionSeries) -> Self {
        SolutionDoc {
            method: series.method(),
            c0: series.c0().map(format_rational),
            t0: format_rational(series.ivp().t0()),
            x0: format_rational(series.ivp().x0()),
            terms: series.terms().to_vec(),
            partial_sums: series.partial_sums().to_vec(),
        }
    }

    /// Parses a document, normalizing every rational to canonical form.
    pub fn parse(text: &str) -> Result<Self> {
        let mut doc: SolutionDoc = serde_json::from_str(text)?;
        doc.c0 = doc.c0.map(|c| parse_rational(&c).map(|r| format_rational(&r))).transpose()?;
        doc.t0 = format_rational(&parse_rational(&doc.t0)?);
        doc.x0 = format_rational(&parse_rational(&doc.x0)?);
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("solution document serializes");
        s.push('\n');
        s
    }
}

fn signed_terms(p: &Polynomial) -> Vec<String> {
    if p.is_zero() {
        return vec!["0".to_string()];
    }
    p.terms()
        .map(|(exp, c)| Polynomial::monomial(c.clone(), exp).to_string())
        .collect()
}

/// Polynomial text capped at `width` characters; the middle terms are
/// replaced by `...` when it does not fit.
pub fn elide(p: &Polynomial, width: usize) -> String {
    let full = p.to_string();
    if full.chars().count() <= width {
        return full;
    }
    let terms = signed_terms(p);
    let join = |parts: &[String]| -> String {
        let mut out = String::new();
        for (i, t) in parts.iter().enumerate() {
            if i == 0 {
                out.push_str(t);
            } else if let Some(rest) = t.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(rest);
            } else {
                out.push_str(" + ");
                out.push_str(t);
            }
        }
        out
    };
    let (mut head, mut tail) = (1usize, 1usize);
    let render = |h: usize, t: usize| -> String {
        let front = join(&terms[..h]);
        let back = join(&terms[terms.len() - t..]);
        let back = match back.strip_prefix('-') {
            Some(rest) => format!("- {rest}"),
            None => format!("+ {back}"),
        };
        format!("{front} + ... {back}")
    };
    loop {
        let mut grew = false;
        if head + tail < terms.len() && render(head + 1, tail).chars().count() <= width {
            head += 1;
            grew = true;
        }
        if head + tail < terms.len() && render(head, tail + 1).chars().count() <= width {
            tail += 1;
            grew = true;
        }
        if !grew {
            break;
        }
    }
    render(head, tail)
}

pub fn solution_text(series: &SolutionSeries) -> String {
    let mut out = String::new();
    out.push_str(&format!("method: {}", series.method()));
    if let Some(c0) = series.c0() {
        out.push_str(&format!("  c0: {}", format_rational(c0)));
    }
    out.push('\n');
    out.push_str("k\tu_k\n");
    for (k, u) in series.terms().iter().enumerate() {
        out.push_str(&format!("{k}\t{u}\n"));
    }
    out.push_str("m\tsum_{k<=m} u_k\n");
    for (m, x) in series.partial_sums().iter().enumerate() {
        out.push_str(&format!("{m}\t{x}\n"));
    }
    out
}

pub fn solution_csv(series: &SolutionSeries) -> String {
    let mut out = String::from("series,index,exp,coeff\n");
    let blocks = [("term", series.terms()), ("sum", series.partial_sums())];
    for (label, polys) in blocks {
        for (i, p) in polys.iter().enumerate() {
            for (exp, c) in p.terms() {
                out.push_str(&format!("{label},{i},{exp},{}\n", format_rational(c)));
            }
        }
    }
    out
}

pub fn residuals_text(series: &SolutionSeries, reports: &[ResidualReport]) -> String {
    let sums: Vec<String> = series
        .partial_sums()
        .iter()
        .map(|x| elide(x, ELISION_WIDTH))
        .collect();
    let width = sums.iter().map(|s| s.chars().count()).max().unwrap_or(0).max(14);
    let mut out = format!("{:<3} {:<width$}  {:<9}  {}\n", "m", "sum_{k<=m} u_k", "E_m", "CPU time [s]");
    for (r, s) in reports.iter().zip(&sums) {
        out.push_str(&format!(
            "{:<3} {:<width$}  {:<9}  {:.3}\n",
            r.order,
            s,
            r.rendered(),
            r.cpu_seconds
        ));
    }
    out
}

#[derive(Serialize)]
struct ResidualRecord<'a> {
    order: usize,
    #[serde(rename = "E")]
    exact: String,
    #[serde(rename = "E_float")]
    value: f64,
    rendered: String,
    cpu_seconds: f64,
    partial_sum: &'a Polynomial,
}

pub fn residuals_json(series: &SolutionSeries, reports: &[ResidualReport]) -> String {
    let records: Vec<ResidualRecord> = reports
        .iter()
        .zip(series.partial_sums())
        .map(|(r, x)| ResidualRecord {
            order: r.order,
            exact: format_rational(&r.exact),
            value: r.value,
            rendered: r.rendered(),
            cpu_seconds: r.cpu_seconds,
            partial_sum: x,
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&records).expect("residual records serialize");
    s.push('\n');
    s
}

pub fn residuals_csv(reports: &[ResidualReport]) -> String {
    let mut out = String::from("order,E_exact,E,cpu_seconds\n");
    for r in reports {
        out.push_str(&format!(
            "{},{},{:.16e},{:.3}\n",
            r.order,
            format_rational(&r.exact),
            r.value,
            r.cpu_seconds
        ));
    }
    out
}

/// `E` column only, e.g. for quick checks: `4.00e-01 1.28e-01 ...`.
pub fn residual_column(reports: &[ResidualReport]) -> Vec<String> {
    reports.iter().map(|r| format_sci3(r.value)).collect()
}
