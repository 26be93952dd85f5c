//! The bundled corpus: Heisenberg models, rank-one and rank-two diagonal
//! bundles over them, and presentations of their lattices.

use std::fs;
use std::path::{Path, PathBuf};

use sasaki_core::GaussianRational as Q;
use sasaki_germ::{GroupPresentation, Matching, Representation};
use sasaki_model::SasakianLieDatum;

use crate::files::{to_json, BundleFile, GroupFile, ModelFile};
use crate::CliError;

/// Line bundles emitted over every model, as `bundles/h{dim}-{kind}.json`.
pub const LINE_BUNDLES: [&str; 3] = ["trivial", "unitary", "real"];

fn one_form(dim: usize, i: usize, c: Q) -> Vec<Q> {
    let mut v = vec![Q::from(0); dim];
    v[i] = c;
    v
}

/// Relative path and contents of every corpus file, in a fixed order.
pub fn corpus_files() -> Vec<(String, String)> {
    let mut out = Vec::new();
    for n in 1..=3 {
        let d = SasakianLieDatum::heisenberg(n);
        let dim = d.dim();
        out.push((format!("models/h{dim}.json"), to_json(&ModelFile::from_datum(&d))));
        let line = |c: Q| BundleFile::diagonal(&[one_form(dim, 1, c)]);
        out.push((format!("bundles/h{dim}-trivial.json"), to_json(&line(Q::from(0)))));
        out.push((format!("bundles/h{dim}-unitary.json"), to_json(&line(Q::i()))));
        out.push((format!("bundles/h{dim}-real.json"), to_json(&line(Q::from(1)))));
    }
    let rank2 = BundleFile::diagonal(&[one_form(5, 1, Q::from(1)), one_form(5, 3, Q::i())]);
    out.push(("bundles/h5-rank2.json".into(), to_json(&rank2)));
    let groups = [
        ("gamma3", GroupPresentation::heisenberg3(), 1, Matching::heisenberg(1)),
        ("gamma5", GroupPresentation::heisenberg5(), 1, Matching::heisenberg(2)),
        ("gamma5-rank2", GroupPresentation::heisenberg5(), 2, Matching::heisenberg(2)),
    ];
    for (name, gp, rank, matching) in groups {
        let rho = Representation::trivial(&gp, rank);
        out.push((format!("groups/{name}.json"), to_json(&GroupFile::new(&gp, &rho, Some(&matching)))));
    }
    out
}

/// Writes the corpus under `dir`, returning the written paths.
pub fn emit_corpus(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let mut written = Vec::new();
    for (rel, text) in corpus_files() {
        let path = dir.join(&rel);
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent).map_err(|e| CliError::Io(format!("{}: {e}", parent.display())))?;
        }
        fs::write(&path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        written.push(path);
    }
    Ok(written)
}
