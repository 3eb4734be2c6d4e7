//! Text input: comma-separated reals, edge sextuples, reports.

use crate::error::{Error, Result};
use crate::regge::ReggeReport;
use crate::tetra::EdgeLengths;

/// Comma-separated finite reals; surrounding whitespace is ignored.
pub fn parse_reals(s: &str) -> Result<Vec<f64>> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty list".into()));
    }
    s.split(',')
        .map(|tok| {
            let tok = tok.trim();
            let v: f64 = tok.parse().map_err(|_| Error::Parse(format!("not a number: {tok:?}")))?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(Error::Parse(format!("not finite: {tok:?}")))
            }
        })
        .collect()
}

/// Exactly `n` comma-separated finite reals.
pub fn parse_reals_exact(s: &str, n: usize) -> Result<Vec<f64>> {
    let v = parse_reals(s)?;
    if v.len() != n {
        return Err(Error::Parse(format!("expected {n} values, got {}", v.len())));
    }
    Ok(v)
}

/// Six positive lengths in the order `x,y,a,b,c,d`.
pub fn parse_edges(s: &str) -> Result<EdgeLengths> {
    let v = parse_reals_exact(s, 6)?;
    if let Some(bad) = v.iter().find(|l| **l <= 0.0) {
        return Err(Error::Parse(format!("edge lengths must be positive, got {bad}")));
    }
    Ok(EdgeLengths::from_array([v[0], v[1], v[2], v[3], v[4], v[5]]))
}

pub fn parse_report(s: &str) -> Result<ReggeReport> {
    serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
}
