//! JSON reports. Rationals are written as `"num/den"` strings.

use anyhow::{bail, Result};
use qbl_core::quasimodular::{ce_symbol_weight, fit_ce, fit_ce_homogeneous, fit_qm, FIT_MARGIN};
use qbl_core::{Error, QSeries, Rational};
use serde::Serialize;

use crate::eval::{eval, Ctx, Value};
use crate::expr::parse;

pub const SCHEMA_VERSION: u32 = 1;

pub fn rational_string(c: &Rational) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum FitKind {
    Qm,
    Ce,
    None,
}

#[derive(Debug, Serialize)]
pub struct Fit {
    pub kind: &'static str,
    pub value: String,
    pub weight: u32,
    pub homogeneous: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depth: Option<u32>,
}

#[derive(Debug, Serialize)]
pub struct QBracketReport {
    pub schema_version: u32,
    pub expr: String,
    pub order: usize,
    pub series: Vec<String>,
    pub fit: Option<Fit>,
    pub verified_order: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<u32>>,
}

/// Weight bounds to try: the known top weight, or every weight the order
/// can support.
fn candidate_weights(value: &Value, order: usize) -> Vec<u32> {
    match value.weights() {
        Some(w) => vec![w.into_iter().max().unwrap_or(0)],
        None => (0..=(order.saturating_sub(FIT_MARGIN) as u32)).collect(),
    }
}

fn ce_fit(e: qbl_core::CEExpr) -> Fit {
    let mut ws: Vec<u32> = e.terms().map(|(m, _)| m.iter().map(ce_symbol_weight).sum()).collect();
    ws.sort_unstable();
    ws.dedup();
    Fit { kind: "ce", value: e.to_string(), weight: e.max_weight(), homogeneous: ws.len() <= 1, depth: None }
}

fn fit(kind: FitKind, value: &Value, s: &QSeries) -> Result<Option<Fit>> {
    if kind == FitKind::None {
        return Ok(None);
    }
    // a homogeneous bracket is looked for among monomials of its own weight,
    // which keeps the combinatorial Eisenstein system small
    if let (FitKind::Ce, Some([w])) = (kind, value.weights().as_deref()) {
        return match fit_ce_homogeneous(s, *w) {
            Ok(e) => Ok(Some(ce_fit(e))),
            Err(e) => bail!("fit failed: {e}"),
        };
    }
    let mut last = None;
    for w in candidate_weights(value, s.order()) {
        let attempt = match kind {
            FitKind::Qm => fit_qm(s, w).map(|p| Fit {
                kind: "qm",
                value: p.to_string(),
                weight: p.max_weight(),
                homogeneous: p.is_homogeneous(),
                depth: Some(p.depth()),
            }),
            FitKind::Ce => fit_ce(s, w).map(ce_fit),
            FitKind::None => unreachable!(),
        };
        match attempt {
            Ok(f) => return Ok(Some(f)),
            Err(Error::OrderTooLow { .. }) if last.is_some() => break,
            Err(e) => last = Some(e),
        }
    }
    match last {
        Some(e) => bail!("fit failed: {e}"),
        None => bail!("fit failed: no admissible weight at order {}", s.order()),
    }
}

pub fn qbracket(src: &str, order: usize, kind: FitKind, ctx: &Ctx) -> Result<QBracketReport> {
    let expr = parse(src)?;
    let value = eval(&expr, ctx)?;
    let series = value.q_bracket(order)?;
    let fit = fit(kind, &value, &series)?;
    Ok(QBracketReport {
        schema_version: SCHEMA_VERSION,
        expr: expr.to_string(),
        order,
        series: series.coeffs().iter().map(rational_string).collect(),
        fit,
        verified_order: order,
        weights: value.weights(),
    })
}
