//! JSON literals accepted on the command line.

use std::path::Path;

use hsig_core::blaschke::{BlaschkeProduct, Envelope, EnvelopeSpec, Spectrum};
use hsig_core::{Grid, MultiplierOp, C64};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// `{"dim": d, "quadrant_values": [[re, im], …]}`, quadrant `k` having
/// `ν_j = −1` exactly where bit `j` of `k` is set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorLiteral {
    pub dim: usize,
    pub quadrant_values: Vec<[f64; 2]>,
}

impl OperatorLiteral {
    pub fn of(op: &MultiplierOp) -> Self {
        OperatorLiteral { dim: op.dim(), quadrant_values: op.quadrant_values().iter().map(|v| [v.re, v.im]).collect() }
    }

    pub fn to_operator(&self) -> Result<MultiplierOp, CliError> {
        let values = self.quadrant_values.iter().map(|&[re, im]| C64::new(re, im)).collect();
        Ok(MultiplierOp::from_quadrant_values_dim(self.dim, values)?)
    }
}

pub fn parse_operator(text: &str) -> Result<MultiplierOp, CliError> {
    let lit: OperatorLiteral = serde_json::from_str(text).map_err(|e| CliError::literal("operator", e))?;
    lit.to_operator()
}

/// `[[re, im], …]`.
pub fn parse_zeros(text: &str) -> Result<BlaschkeProduct, CliError> {
    let pairs: Vec<[f64; 2]> = serde_json::from_str(text).map_err(|e| CliError::literal("zeros", e))?;
    Ok(BlaschkeProduct::new(pairs.into_iter().map(|[re, im]| C64::new(re, im)).collect())?)
}

/// `N,L` with `L` a number, optionally suffixed by `pi` (`32pi`).
pub fn parse_line_grid(text: &str) -> Result<Grid, CliError> {
    let bad = |m: &str| CliError::literal("grid", format!("{m} in {text:?}; expected N,L"));
    let (n, l) = text.split_once(',').ok_or_else(|| bad("missing comma"))?;
    let n: usize = n.trim().parse().map_err(|_| bad("bad sample count"))?;
    let l = l.trim();
    let half_extent = match l.strip_suffix("pi") {
        Some("") => std::f64::consts::PI,
        Some(k) => k.trim().parse::<f64>().map_err(|_| bad("bad half extent"))? * std::f64::consts::PI,
        None => l.parse().map_err(|_| bad("bad half extent"))?,
    };
    Ok(Grid::line(n, half_extent)?)
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum SpectrumLiteral {
    Named(String),
    Sampled { xi: Vec<f64>, values: Vec<[f64; 2]> },
}

impl SpectrumLiteral {
    fn build(self) -> Result<Spectrum, CliError> {
        match self {
            SpectrumLiteral::Named(name) => {
                Spectrum::named(&name).ok_or_else(|| CliError::literal("envelope", format!("unknown spectrum {name:?}")))
            }
            SpectrumLiteral::Sampled { xi, values } => {
                Ok(Spectrum::sampled(xi, values.into_iter().map(|[re, im]| C64::new(re, im)).collect())?)
            }
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct EnvelopeLiteral {
    spectrum: SpectrumLiteral,
    #[serde(default = "unit_weight")]
    weight: [f64; 2],
}

fn unit_weight() -> [f64; 2] {
    [1.0, 0.0]
}

/// Envelope file: `{"spectrum": S}` for every coefficient, or
/// `{"terms": [[{"spectrum": S, "weight": [re, im]}, …], …]}` indexed by
/// distinct zero and multiplicity. `S` is a name or `{"xi": […], "values": [[re, im], …]}`.
#[derive(Debug, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
enum EnvelopeFile {
    Uniform { spectrum: SpectrumLiteral },
    Terms { terms: Vec<Vec<EnvelopeLiteral>> },
}

pub fn parse_envelope_json(text: &str, bp: &BlaschkeProduct) -> Result<EnvelopeSpec, CliError> {
    let file: EnvelopeFile = serde_json::from_str(text).map_err(|e| CliError::literal("envelope", e))?;
    match file {
        EnvelopeFile::Uniform { spectrum } => Ok(EnvelopeSpec::uniform(bp, spectrum.build()?)),
        EnvelopeFile::Terms { terms } => {
            let terms = terms
                .into_iter()
                .map(|group| {
                    group
                        .into_iter()
                        .map(|e| Ok(Envelope::new(e.spectrum.build()?, C64::new(e.weight[0], e.weight[1]))))
                        .collect::<Result<Vec<_>, CliError>>()
                })
                .collect::<Result<Vec<_>, CliError>>()?;
            Ok(EnvelopeSpec::new(terms))
        }
    }
}

/// A spectrum name, or the path of an envelope file.
pub fn resolve_envelope(arg: &str, bp: &BlaschkeProduct) -> Result<EnvelopeSpec, CliError> {
    if let Some(s) = Spectrum::named(arg) {
        return Ok(EnvelopeSpec::uniform(bp, s));
    }
    let path = Path::new(arg);
    if !path.exists() {
        return Err(CliError::literal("envelope", format!("{arg:?} is neither a spectrum name nor a file")));
    }
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_envelope_json(&text, bp)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn operator_literal() {
        let op = parse_operator(r#"{"dim":1,"quadrant_values":[[0,-1],[0,1]]}"#).unwrap();
        assert_eq!(op.quadrant_values(), &[C64::new(0.0, -1.0), C64::new(0.0, 1.0)]);
        assert_eq!(OperatorLiteral::of(&op).quadrant_values, vec![[0.0, -1.0], [0.0, 1.0]]);
        assert!(parse_operator(r#"{"dim":2,"quadrant_values":[[0,-1],[0,1]]}"#).is_err());
        assert!(parse_operator(r#"{"dim":1}"#).is_err());
        assert!(parse_operator(r#"{"dim":1,"quadrant_values":[[1,0],[1,0]],"x":1}"#).is_err());
    }

    #[test]
    fn zeros_and_grids() {
        assert_eq!(parse_zeros("[[0,0],[0.5,0.1]]").unwrap().degree(), 2);
        assert!(parse_zeros("[[1.5,0]]").is_err());
        assert!(parse_zeros("[0,0]").is_err());
        let g = parse_line_grid("64, 8pi").unwrap();
        assert_eq!(g.samples_per_axis(), &[64]);
        assert!((g.half_extent()[0] - 8.0 * std::f64::consts::PI).abs() < 1e-12);
        assert_eq!(parse_line_grid("16,2.5").unwrap().half_extent(), &[2.5]);
        assert_eq!(parse_line_grid("16,pi").unwrap().half_extent(), &[std::f64::consts::PI]);
        assert!(parse_line_grid("16").is_err());
        assert!(parse_line_grid("15,1").is_err());
    }

    #[test]
    fn envelope_files() {
        let bp = parse_zeros("[[0,0],[0,0],[0.3,0]]").unwrap();
        let uniform = parse_envelope_json(r#"{"spectrum":"raised-cosine"}"#, &bp).unwrap();
        assert_eq!(uniform.terms.len(), 2);
        assert_eq!(uniform.terms[0].len(), 2);
        let terms = parse_envelope_json(
            r#"{"terms":[[{"spectrum":"flat"},{"spectrum":{"xi":[-1,0],"values":[[1,0],[0,0]]},"weight":[0,2]}],
                          [{"spectrum":"half-gaussian"}]]}"#,
            &bp,
        )
        .unwrap();
        assert_eq!(terms.terms[0][1].weight, C64::new(0.0, 2.0));
        assert!(parse_envelope_json(r#"{"spectrum":"nope"}"#, &bp).is_err());
        assert!(resolve_envelope("flat", &bp).is_ok());
        assert!(resolve_envelope("/no/such/file", &bp).is_err());
    }
}
