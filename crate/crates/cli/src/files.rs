//! JSON input files. Every number is a string `p/q+r/s*i` (or a shorter
//! form accepted by the scalar parser) so that nothing passes through floats.

use std::collections::BTreeMap;

use sasaki_bundle::FlatBundleDatum;
use sasaki_core::{GaussianRational as Q, Matrix};
use sasaki_germ::{GroupPresentation, Matching, Representation};
use sasaki_model::{Bracket, SasakianLieDatum};
use serde::{Deserialize, Serialize};

use crate::CliError;

fn scalar(s: &str, field: &str) -> Result<Q, CliError> {
    s.parse().map_err(|e| CliError::Input(format!("{field}: {e}")))
}

fn vector(v: &[String], field: &str) -> Result<Vec<Q>, CliError> {
    v.iter().enumerate().map(|(i, s)| scalar(s, &format!("{field}[{i}]"))).collect()
}

fn matrix(rows: &[Vec<String>], field: &str) -> Result<Matrix, CliError> {
    let parsed: Vec<Vec<Q>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| vector(r, &format!("{field}[{i}]")))
        .collect::<Result<_, _>>()?;
    if let Some(first) = parsed.first() {
        if parsed.iter().any(|r| r.len() != first.len()) {
            return Err(CliError::Input(format!("{field}: rows have different lengths")));
        }
    }
    Ok(Matrix::from_rows(parsed))
}

fn vector_strings(v: &[Q]) -> Vec<String> {
    v.iter().map(Q::to_canonical_string).collect()
}

fn matrix_strings(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| vector_strings(m.row(i))).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub coeff: String,
}

/// `[e_i, e_j] = Σ coeff e_k`, with `η`, `ξ` and `I` (column `j` is `I e_j`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub name: String,
    pub dimension: usize,
    pub brackets: Vec<BracketEntry>,
    pub eta: Vec<String>,
    pub xi: Vec<String>,
    #[serde(rename = "I")]
    pub complex_structure: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orientation: Option<i8>,
}

impl ModelFile {
    pub fn to_datum(&self) -> Result<SasakianLieDatum, CliError> {
        let brackets = self
            .brackets
            .iter()
            .enumerate()
            .map(|(n, b)| {
                Ok(Bracket {
                    i: b.i,
                    j: b.j,
                    k: b.k,
                    coeff: scalar(&b.coeff, &format!("brackets[{n}].coeff"))?,
                })
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        let cplx = matrix(&self.complex_structure, "I")?;
        SasakianLieDatum::new(
            self.name.clone(),
            self.dimension,
            brackets,
            vector(&self.eta, "eta")?,
            vector(&self.xi, "xi")?,
            cplx,
            self.orientation.unwrap_or(1),
        )
        .map_err(|e| CliError::Input(e.to_string()))
    }

    pub fn from_datum(d: &SasakianLieDatum) -> Self {
        ModelFile {
            name: d.name().to_string(),
            dimension: d.dim(),
            brackets: d
                .brackets()
                .iter()
                .map(|b| BracketEntry { i: b.i, j: b.j, k: b.k, coeff: b.coeff.to_canonical_string() })
                .collect(),
            eta: vector_strings(d.eta()),
            xi: vector_strings(d.xi()),
            complex_structure: matrix_strings(d.cplx()),
            orientation: Some(d.orientation()),
        }
    }
}

/// Diagonal flat bundle: one closed one-form per line, optional Hermitian metric.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BundleFile {
    pub rank: usize,
    pub diagonal: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<Vec<Vec<String>>>,
}

impl BundleFile {
    pub fn to_datum(&self) -> Result<FlatBundleDatum, CliError> {
        if self.diagonal.len() != self.rank {
            return Err(CliError::Input(format!(
                "diagonal: {} forms for rank {}",
                self.diagonal.len(),
                self.rank
            )));
        }
        let forms: Vec<Vec<Q>> = self
            .diagonal
            .iter()
            .enumerate()
            .map(|(i, f)| vector(f, &format!("diagonal[{i}]")))
            .collect::<Result<_, _>>()?;
        let metric = self.metric.as_ref().map(|m| matrix(m, "metric")).transpose()?;
        FlatBundleDatum::diagonal(&forms, metric).map_err(|e| CliError::Input(e.to_string()))
    }

    pub fn diagonal(forms: &[Vec<Q>]) -> Self {
        BundleFile {
            rank: forms.len(),
            diagonal: forms.iter().map(|f| vector_strings(f)).collect(),
            metric: None,
        }
    }
}

/// Generators are single lowercase letters; uppercase in a relator is the inverse.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    pub generators: Vec<String>,
    pub relators: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub representation: Option<BTreeMap<String, Vec<Vec<String>>>>,
    /// Lie algebra vector paired with each generator.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matching: Option<BTreeMap<String, Vec<String>>>,
}

impl GroupFile {
    pub fn presentation(&self) -> Result<GroupPresentation, CliError> {
        GroupPresentation::new(&self.generators, &self.relators).map_err(|e| CliError::Input(e.to_string()))
    }

    fn per_generator<'a, T>(
        &self,
        map: &'a BTreeMap<String, T>,
        field: &str,
    ) -> Result<Vec<&'a T>, CliError> {
        if let Some(extra) = map.keys().find(|k| !self.generators.contains(k)) {
            return Err(CliError::Input(format!("{field}: {extra:?} is not a generator")));
        }
        self.generators
            .iter()
            .map(|g| map.get(g).ok_or_else(|| CliError::Input(format!("{field}: missing generator {g:?}"))))
            .collect()
    }

    /// The declared representation, or the trivial one of rank one.
    pub fn representation(&self, gp: &GroupPresentation) -> Result<Representation, CliError> {
        let Some(rep) = &self.representation else {
            return Ok(Representation::trivial(gp, 1));
        };
        let images = self
            .per_generator(rep, "representation")?
            .into_iter()
            .zip(&self.generators)
            .map(|(m, g)| matrix(m, &format!("representation.{g}")))
            .collect::<Result<Vec<_>, _>>()?;
        Representation::new(gp, images).map_err(|e| CliError::Input(e.to_string()))
    }

    pub fn matching(&self) -> Result<Option<Matching>, CliError> {
        let Some(m) = &self.matching else { return Ok(None) };
        let vectors = self
            .per_generator(m, "matching")?
            .into_iter()
            .zip(&self.generators)
            .map(|(v, g)| vector(v, &format!("matching.{g}")))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Some(Matching { vectors }))
    }

    pub fn new(gp: &GroupPresentation, rho: &Representation, matching: Option<&Matching>) -> Self {
        let generators: Vec<String> = gp.generators().iter().map(char::to_string).collect();
        let representation =
            generators.iter().zip(rho.images()).map(|(g, m)| (g.clone(), matrix_strings(m))).collect();
        let matching = matching.map(|m| {
            generators.iter().zip(&m.vectors).map(|(g, v)| (g.clone(), vector_strings(v))).collect()
        });
        GroupFile {
            generators,
            relators: gp.relator_strings(),
            representation: Some(representation),
            matching,
        }
    }
}

/// Parses any of the three file kinds from JSON text.
pub fn parse_json<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> Result<T, CliError> {
    serde_json::from_str(text)
        .map_err(|e| CliError::Input(format!("{what}: line {}, column {}: {e}", e.line(), e.column())))
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serialisable");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn model_round_trip() {
        let d = SasakianLieDatum::heisenberg(2);
        let f = ModelFile::from_datum(&d);
        let text = to_json(&f);
        let back: ModelFile = parse_json(&text, "model").unwrap();
        assert_eq!(back, f);
        assert_eq!(back.to_datum().unwrap(), d);
    }

    #[test]
    fn scalars_parse_exactly() {
        assert_eq!(scalar("1/2+0/1*i", "x").unwrap(), Q::from_ratio(1, 2));
        assert_eq!(scalar("0/1+-1/1*i", "x").unwrap(), -Q::i());
        assert!(scalar("0.5", "x").is_err());
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let e = parse_json::<BundleFile>(r#"{"rank": 1, "diagonal": [], "extra": 0}"#, "bundle");
        assert!(matches!(e, Err(CliError::Input(_))));
    }

    #[test]
    fn bundle_rank_must_match() {
        let f = BundleFile { rank: 2, diagonal: vec![vec!["0".into(); 3]], metric: None };
        assert!(f.to_datum().is_err());
    }

    #[test]
    fn group_round_trip() {
        let gp = GroupPresentation::heisenberg5();
        let rho = Representation::trivial(&gp, 2);
        let m = Matching::heisenberg(2);
        let f = GroupFile::new(&gp, &rho, Some(&m));
        let back: GroupFile = parse_json(&to_json(&f), "group").unwrap();
        assert_eq!(back, f);
        let gp2 = back.presentation().unwrap();
        assert_eq!(gp2, gp);
        assert_eq!(back.representation(&gp2).unwrap(), rho);
        assert_eq!(back.matching().unwrap().unwrap(), m);
    }

    #[test]
    fn bad_representation_is_an_input_error() {
        let gp = GroupPresentation::heisenberg3();
        let mut f = GroupFile::new(&gp, &Representation::trivial(&gp, 1), None);
        f.representation.as_mut().unwrap().insert("c".into(), vec![vec!["2".into()]]);
        assert!(f.representation(&gp).is_err());
    }
}
