//! One function per subcommand, each producing a [`Report`].

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde_json::{json, Value};

use sasaki_bundle::formality::ker_dxi_splitting;
use sasaki_bundle::{
    attach_bundle, basic_harmonic_projector, build_dprime_dsecond, check_harmonicity, formality_chain,
    theta_split_and_conditions, verify_ddc_lemma, verify_twisted_kahler_both, FlatBundleDatum,
    TwistedComplex,
};
use sasaki_core::complex::CochainComplex;
use sasaki_germ::cup::{cup_vanishing_check, in_vanishing_range, ConeModel};
use sasaki_germ::{
    build_germ_model, compare_cone_with_variety, fox_tangent, linear_kernel_check, normalized_quadrics,
    quadraticity_check, relator_order2, Verdict,
};
use sasaki_model::datum::validate_sasakian;
use sasaki_model::kahler::{delta_relation_check, lefschetz_map, operator_suite, verify_kahler_identities};
use sasaki_model::{BigradingConvention, CeAlgebra, SasakianLieDatum};

use crate::corpus::{corpus_files, emit_corpus};
use crate::files::{parse_json, BundleFile, GroupFile, ModelFile};
use crate::report::{CheckRecord, InputRecord, Report};
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CohomologyMode {
    Basic,
    Full,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Validate {
        model: Option<PathBuf>,
        bundles: Vec<PathBuf>,
        groups: Vec<PathBuf>,
    },
    Cohomology {
        model: PathBuf,
        mode: CohomologyMode,
        bundle: Option<PathBuf>,
    },
    KahlerCheck {
        model: PathBuf,
        bundle: Option<PathBuf>,
    },
    DdcCheck {
        model: PathBuf,
        bundle: Option<PathBuf>,
    },
    FormalityCheck {
        model: PathBuf,
        bundle: Option<PathBuf>,
    },
    Quadraticity {
        model: PathBuf,
        bundle: Option<PathBuf>,
        rank: Option<usize>,
    },
    CupVanishing {
        model: PathBuf,
        bundle1: Option<PathBuf>,
        bundle2: Option<PathBuf>,
        degrees: (usize, usize),
    },
    Repvar {
        group: PathBuf,
        compare_model: Option<PathBuf>,
    },
    EmitCorpus {
        dir: PathBuf,
    },
}

fn path_str(p: &Path) -> String {
    p.display().to_string()
}

fn push_opt(argv: &mut Vec<String>, flag: &str, p: &Option<PathBuf>) {
    if let Some(p) = p {
        argv.push(flag.into());
        argv.push(path_str(p));
    }
}

impl Command {
    /// The command line this command corresponds to.
    pub fn argv(&self) -> Vec<String> {
        let mut a = Vec::new();
        match self {
            Command::Validate { model, bundles, groups } => {
                a.push("validate".into());
                a.extend(model.iter().map(|m| path_str(m)));
                for b in bundles {
                    a.extend(["--bundle".into(), path_str(b)]);
                }
                for g in groups {
                    a.extend(["--group".into(), path_str(g)]);
                }
            }
            Command::Cohomology { model, mode, bundle } => {
                a.extend(["cohomology".into(), path_str(model)]);
                a.push(match mode {
                    CohomologyMode::Basic => "--basic".into(),
                    CohomologyMode::Full => "--full".into(),
                });
                push_opt(&mut a, "--bundle", bundle);
            }
            Command::KahlerCheck { model, bundle } => {
                a.extend(["kahler-check".into(), path_str(model)]);
                push_opt(&mut a, "--bundle", bundle);
            }
            Command::DdcCheck { model, bundle } => {
                a.extend(["ddc-check".into(), path_str(model)]);
                push_opt(&mut a, "--bundle", bundle);
            }
            Command::FormalityCheck { model, bundle } => {
                a.extend(["formality-check".into(), path_str(model)]);
                push_opt(&mut a, "--bundle", bundle);
            }
            Command::Quadraticity { model, bundle, rank } => {
                a.extend(["quadraticity".into(), path_str(model)]);
                push_opt(&mut a, "--bundle", bundle);
                if let Some(r) = rank {
                    a.extend(["--rank".into(), r.to_string()]);
                }
            }
            Command::CupVanishing { model, bundle1, bundle2, degrees } => {
                a.extend(["cup-vanishing".into(), path_str(model)]);
                push_opt(&mut a, "--bundle1", bundle1);
                push_opt(&mut a, "--bundle2", bundle2);
                a.extend(["--degrees".into(), format!("{},{}", degrees.0, degrees.1)]);
            }
            Command::Repvar { group, compare_model } => {
                a.extend(["repvar".into(), "--group".into(), path_str(group)]);
                push_opt(&mut a, "--compare-model", compare_model);
            }
            Command::EmitCorpus { dir } => a.extend(["emit-corpus".into(), path_str(dir)]),
        }
        a
    }
}

/// Reads input files and records their hashes.
#[derive(Default)]
struct Inputs {
    records: Vec<InputRecord>,
}

impl Inputs {
    fn read(&mut self, role: &str, path: &Path) -> Result<String, CliError> {
        let bytes = fs::read(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        self.records.push(InputRecord::new(role, &path_str(path), &bytes));
        String::from_utf8(bytes).map_err(|_| CliError::Input(format!("{}: not UTF-8", path.display())))
    }

    fn model_unchecked(&mut self, path: &Path) -> Result<SasakianLieDatum, CliError> {
        let text = self.read("model", path)?;
        parse_json::<ModelFile>(&text, &path_str(path))?.to_datum()
    }

    /// A model that passes every Sasakian axiom.
    fn model(&mut self, path: &Path) -> Result<SasakianLieDatum, CliError> {
        let d = self.model_unchecked(path)?;
        if let Some(f) = validate_sasakian(&d).first_failure() {
            return Err(CliError::Input(format!(
                "{}: not Sasakian ({}{})",
                path.display(),
                f.name,
                f.witness.as_deref().map(|w| format!(": {w}")).unwrap_or_default()
            )));
        }
        Ok(d)
    }

    fn bundle(&mut self, role: &str, path: &Path) -> Result<FlatBundleDatum, CliError> {
        let text = self.read(role, path)?;
        parse_json::<BundleFile>(&text, &path_str(path))?.to_datum()
    }

    fn bundle_or_trivial(
        &mut self,
        role: &str,
        path: Option<&PathBuf>,
        d: &SasakianLieDatum,
    ) -> Result<FlatBundleDatum, CliError> {
        match path {
            Some(p) => self.bundle(role, p),
            None => Ok(FlatBundleDatum::trivial(d.dim(), 1)),
        }
    }

    fn group(&mut self, path: &Path) -> Result<GroupFile, CliError> {
        let text = self.read("group", path)?;
        parse_json(&text, &path_str(path))
    }
}

fn attach(d: &SasakianLieDatum, b: &FlatBundleDatum) -> Result<TwistedComplex, CliError> {
    Ok(attach_bundle(d, b)?)
}

fn betti(c: &CochainComplex) -> Vec<usize> {
    c.degrees().iter().map(|&k| c.cohomology(k).dim()).collect()
}

fn conv_name(c: BigradingConvention) -> &'static str {
    c.name()
}

pub fn run(cmd: &Command) -> Result<Report, CliError> {
    let mut inputs = Inputs::default();
    let (checks, outcome) = match cmd {
        Command::Validate { model, bundles, groups } => {
            (validate(&mut inputs, model.as_deref(), bundles, groups)?, None)
        }
        Command::Cohomology { model, mode, bundle } => {
            let d = inputs.model(model)?;
            let b = inputs.bundle_or_trivial("bundle", bundle.as_ref(), &d)?;
            (cohomology(&attach(&d, &b)?, *mode)?, None)
        }
        Command::KahlerCheck { model, bundle } => {
            let d = inputs.model(model)?;
            let b = inputs.bundle_or_trivial("bundle", bundle.as_ref(), &d)?;
            (kahler_check(&d, &attach(&d, &b)?)?, None)
        }
        Command::DdcCheck { model, bundle } => {
            let d = inputs.model(model)?;
            let b = inputs.bundle_or_trivial("bundle", bundle.as_ref(), &d)?;
            (ddc_check(&attach(&d, &b)?)?, None)
        }
        Command::FormalityCheck { model, bundle } => {
            let d = inputs.model(model)?;
            let b = inputs.bundle_or_trivial("bundle", bundle.as_ref(), &d)?;
            (formality_check(&attach(&d, &b)?)?, None)
        }
        Command::Quadraticity { model, bundle, rank } => {
            let d = inputs.model(model)?;
            let b = match (bundle, rank) {
                (Some(_), Some(_)) => {
                    return Err(CliError::Input("give either --bundle or --rank, not both".into()))
                }
                (Some(p), None) => inputs.bundle("bundle", p)?,
                (None, r) => FlatBundleDatum::trivial(d.dim(), r.unwrap_or(1)),
            };
            let (checks, verdict) = quadraticity(&d, &b)?;
            (checks, Some(verdict.as_str().to_string()))
        }
        Command::CupVanishing { model, bundle1, bundle2, degrees } => {
            let d = inputs.model(model)?;
            let (s, t) = *degrees;
            if !in_vanishing_range(d.n(), s, t) {
                return Err(CliError::Input(format!(
                    "degrees ({s}, {t}) are outside the range s, t < n = {} < s + t",
                    d.n()
                )));
            }
            let b1 = inputs.bundle_or_trivial("bundle1", bundle1.as_ref(), &d)?;
            let b2 = inputs.bundle_or_trivial("bundle2", bundle2.as_ref(), &d)?;
            (cup_vanishing(&attach(&d, &b1)?, &attach(&d, &b2)?, s, t)?, None)
        }
        Command::Repvar { group, compare_model } => {
            let gf = inputs.group(group)?;
            let model = compare_model.as_ref().map(|m| inputs.model(m)).transpose()?;
            repvar(&gf, model.as_ref())?
        }
        Command::EmitCorpus { dir } => {
            emit_corpus(dir)?;
            let checks = corpus_files()
                .iter()
                .map(|(rel, text)| {
                    let rec = InputRecord::new("corpus", rel, text.as_bytes());
                    CheckRecord::new(
                        format!("corpus.{rel}"),
                        "corpus file written",
                        true,
                        json!({"sha256": rec.sha256}),
                    )
                })
                .collect();
            (checks, None)
        }
    };
    let report = Report::new(cmd.argv(), inputs.records, checks);
    Ok(match outcome {
        Some(o) => report.with_outcome(o),
        None => report,
    })
}

fn validate(
    inputs: &mut Inputs,
    model: Option<&Path>,
    bundles: &[PathBuf],
    groups: &[PathBuf],
) -> Result<Vec<CheckRecord>, CliError> {
    let mut checks = Vec::new();
    let datum = model.map(|p| inputs.model_unchecked(p)).transpose()?;
    if let Some(d) = &datum {
        let rep = validate_sasakian(d);
        for c in &rep.checks {
            checks.push(CheckRecord::new(
                format!("model.{}", c.name),
                format!("Sasakian axiom: {}", c.name),
                c.passed,
                c.witness.as_ref().map_or(Value::Null, |w| json!(w)),
            ));
        }
        let ce = CeAlgebra::new(d);
        let sq = ce.square_zero_violation();
        checks.push(CheckRecord::new("model.d-squared-zero", "d² = 0", sq.is_none(), json!({"degree": sq})));
        let cartan = ce.cartan_violation();
        checks.push(CheckRecord::new(
            "model.cartan-formula",
            "L_X = d i_X + i_X d",
            cartan.is_none(),
            json!({"generator_degree": cartan}),
        ));
    }
    if !bundles.is_empty() {
        let Some(d) = &datum else {
            return Err(CliError::Input("validating a bundle needs a model".into()));
        };
        for (i, p) in bundles.iter().enumerate() {
            let b = inputs.bundle("bundle", p)?;
            let id = format!("bundle.{i}");
            match attach_bundle(d, &b) {
                Ok(tc) => {
                    checks.push(CheckRecord::new(
                        format!("{id}.flat"),
                        "flat with φ(ξ) = 0",
                        true,
                        Value::Null,
                    ));
                    let h = check_harmonicity(&tc)?;
                    checks.push(CheckRecord::new(
                        format!("{id}.harmonic"),
                        "metric is harmonic: ∇*φ = 0",
                        h.harmonic,
                        Value::Null,
                    ));
                }
                Err(e) => checks.push(CheckRecord::new(
                    format!("{id}.flat"),
                    "flat with φ(ξ) = 0",
                    false,
                    json!(e.to_string()),
                )),
            }
        }
    }
    for (i, p) in groups.iter().enumerate() {
        let gf = inputs.group(p)?;
        let id = format!("group.{i}");
        match gf.presentation() {
            Ok(gp) => {
                checks.push(CheckRecord::new(
                    format!("{id}.presentation"),
                    "relators are freely reduced words in the generators",
                    true,
                    json!({"generators": gf.generators.len(), "relators": gf.relators.len()}),
                ));
                let rep = gf.representation(&gp);
                checks.push(CheckRecord::new(
                    format!("{id}.representation"),
                    "every relator evaluates to the identity",
                    rep.is_ok(),
                    rep.err().map_or(Value::Null, |e| json!(e.to_string())),
                ));
                let m = gf.matching();
                checks.push(CheckRecord::new(
                    format!("{id}.matching"),
                    "matching names every generator",
                    m.is_ok(),
                    m.err().map_or(Value::Null, |e| json!(e.to_string())),
                ));
            }
            Err(e) => checks.push(CheckRecord::new(
                format!("{id}.presentation"),
                "relators are freely reduced words in the generators",
                false,
                json!(e.to_string()),
            )),
        }
    }
    if checks.is_empty() {
        return Err(CliError::Input("nothing to validate".into()));
    }
    Ok(checks)
}

fn cohomology(tc: &TwistedComplex, mode: CohomologyMode) -> Result<Vec<CheckRecord>, CliError> {
    Ok(match mode {
        CohomologyMode::Basic => {
            let dims = betti(&tc.basic_complex());
            let mut out = vec![CheckRecord::new(
                "cohomology.basic",
                "basic cohomology H_B",
                true,
                json!({"dims": dims}),
            )];
            let bc = tc.basic();
            for r in 0..=bc.top().saturating_sub(2) {
                let (_, rec) = lefschetz_map(bc, r)?;
                out.push(CheckRecord::new(
                    format!("cohomology.lefschetz.{r:02}"),
                    "[dη] ∧ · : H^r_B → H^{r+2}_B is injective for r ≤ n − 1, surjective for r ≥ n − 1",
                    rec.prediction_holds(),
                    json!({
                        "source": rec.source_dim,
                        "target": rec.target_dim,
                        "rank": rec.rank,
                        "injective": rec.injective,
                        "surjective": rec.surjective,
                    }),
                ));
            }
            out
        }
        CohomologyMode::Full => {
            let full = betti(&tc.full_complex());
            let eta = betti(&ConeModel::new(tc)?.complex);
            vec![
                CheckRecord::new(
                    "cohomology.full",
                    "cohomology of the twisted complex",
                    true,
                    json!({"dims": full}),
                ),
                CheckRecord::new(
                    "cohomology.eta-model-agrees",
                    "H(A_B ⊕ A_B∧η) = H(A)",
                    eta == full,
                    json!({"eta_model": eta, "full": full}),
                ),
            ]
        }
    })
}

type CheckGroup<'a> = Box<dyn Fn() -> Result<Vec<CheckRecord>, CliError> + Send + Sync + 'a>;

fn run_groups(groups: Vec<CheckGroup<'_>>) -> Result<Vec<CheckRecord>, CliError> {
    let parts: Vec<Result<Vec<CheckRecord>, CliError>> = groups.par_iter().map(|g| g()).collect();
    let mut out = Vec::new();
    for p in parts {
        out.extend(p?);
    }
    Ok(out)
}

/// Which commutator identities should hold under each bigrading convention.
fn kahler_sign_check(
    prefix: &str,
    conv: BigradingConvention,
    minus_i_first: bool,
    plus_i_first: bool,
) -> CheckRecord {
    let (ok, anchor) = match conv {
        BigradingConvention::MetricDual => (minus_i_first, "[Λ, D′] = −i (D″)*, [Λ, D″] = i (D′)*"),
        BigradingConvention::Annihilator => (plus_i_first, "[Λ, D′] = i (D″)*, [Λ, D″] = −i (D′)*"),
    };
    CheckRecord::new(
        format!("{prefix}.{}.kahler-identities", conv_name(conv)),
        anchor,
        ok,
        json!({"minus_i_first": minus_i_first, "plus_i_first": plus_i_first}),
    )
}

fn kahler_check(d: &SasakianLieDatum, tc: &TwistedComplex) -> Result<Vec<CheckRecord>, CliError> {
    let untwisted = || -> Result<Vec<CheckRecord>, CliError> {
        let mut out = Vec::new();
        let ce = CeAlgebra::new(d);
        out.push(CheckRecord::new(
            "untwisted.d-squared-zero",
            "d² = 0",
            ce.square_zero_violation().is_none(),
            Value::Null,
        ));
        out.push(CheckRecord::new(
            "untwisted.cartan-formula",
            "L_X = d i_X + i_X d",
            ce.cartan_violation().is_none(),
            Value::Null,
        ));
        let trivial = attach(d, &FlatBundleDatum::trivial(d.dim(), 1))?;
        for conv in [BigradingConvention::Annihilator, BigradingConvention::MetricDual] {
            let t = trivial.with_convention(conv)?;
            let bc = t.basic();
            let ops = operator_suite(bc)?;
            let rep = verify_kahler_identities(bc, &ops);
            out.push(kahler_sign_check(
                "untwisted",
                conv,
                rep.minus_i_first_holds(),
                rep.plus_i_first_holds(),
            ));
            let holds = |id: &str| rep.get(id).is_some_and(|c| c.holds);
            let name = conv_name(conv);
            out.push(CheckRecord::new(
                format!("untwisted.{name}.laplacians"),
                "Δ = 2Δ′ = 2Δ″ on basic forms",
                holds("laplacian-del") && holds("laplacian-delbar"),
                Value::Null,
            ));
            out.push(CheckRecord::new(
                format!("untwisted.{name}.lefschetz-sl2"),
                "[L, Λ] = (k − n) on basic k-forms",
                holds("lefschetz-sl2"),
                Value::Null,
            ));
            let dolbeault = ops.del.compose(&ops.del).is_zero()
                && ops.delbar.compose(&ops.delbar).is_zero()
                && ops.del.supercommutator(&ops.delbar).is_zero();
            out.push(CheckRecord::new(
                format!("untwisted.{name}.dolbeault"),
                "∂² = ∂̄² = ∂∂̄ + ∂̄∂ = 0 on basic forms",
                dolbeault,
                Value::Null,
            ));
            if conv == BigradingConvention::MetricDual {
                let delta = delta_relation_check(bc, &ops);
                out.push(CheckRecord::new(
                    "untwisted.delta-relation",
                    "δω = δ_ξω + ∗(dη ∧ ⋆_ξω) on basic forms",
                    delta.passed(),
                    json!({
                        "failing_degrees": delta.relation.iter().filter(|(_, ok)| !ok).map(|(k, _)| k).collect::<Vec<_>>(),
                        "one_forms_agree": delta.one_forms_agree,
                        "functions_agree": delta.functions_agree,
                    }),
                ));
            }
        }
        Ok(out)
    };
    let twisted = || -> Result<Vec<CheckRecord>, CliError> {
        let mut out = Vec::new();
        let (_, dec) = build_dprime_dsecond(tc)?;
        for (id, anchor, ok) in [
            ("sum-is-d", "D = D′ + D″", dec.sum_is_d),
            ("d-prime-squared-zero", "D′² = 0", dec.d_prime_squared_zero),
            ("d-second-squared-zero", "D″² = 0", dec.d_second_squared_zero),
            ("anticommute", "D′D″ + D″D′ = 0", dec.anticommute),
            ("dc-squared-zero", "(Dᶜ)² = 0", dec.d_c_squared_zero),
            ("d-dc-anticommute", "DDᶜ + DᶜD = 0", dec.d_d_c_anticommute),
        ] {
            out.push(CheckRecord::new(format!("twisted.{id}"), anchor, ok, Value::Null));
        }
        for rep in verify_twisted_kahler_both(tc)? {
            out.push(kahler_sign_check(
                "twisted",
                rep.convention,
                rep.minus_i_first_holds(),
                rep.plus_i_first_holds(),
            ));
            out.push(CheckRecord::new(
                format!("twisted.{}.laplacians", conv_name(rep.convention)),
                "Δ_D = 2Δ_{D′} = 2Δ_{D″} on basic forms",
                rep.laplacians_hold(),
                Value::Null,
            ));
        }
        let (split, conds) = theta_split_and_conditions(tc)?;
        out.push(CheckRecord::new("twisted.harmonic-metric", "∇*φ = 0", conds.harmonic, Value::Null));
        out.push(CheckRecord::new(
            "twisted.higgs-conditions",
            "∂̄_h² = 0, θ∧θ = 0, ∂̄_hθ = 0 exactly when the metric is harmonic",
            conds.equivalence_holds(),
            json!({
                "delbar_squared_zero": conds.delbar_squared_zero,
                "theta_wedge_theta_zero": conds.theta_wedge_theta_zero,
                "delbar_theta_zero": conds.delbar_theta_zero,
            }),
        ));
        out.push(CheckRecord::new(
            "twisted.theta-bar-adjoint",
            "θ̄ = θ^{*h}",
            split.theta_bar_is_adjoint(tc),
            Value::Null,
        ));
        let mut hodge_ok = true;
        let mut harmonic_dims = Vec::new();
        for k in 0..=tc.basic().top() {
            let h = basic_harmonic_projector(tc, k)?;
            hodge_ok &= h.report.passed();
            harmonic_dims.push(h.report.harmonic_dim);
        }
        out.push(CheckRecord::new(
            "twisted.hodge-decomposition",
            "1 = H + DD*G + D*DG with H the harmonic projector",
            hodge_ok,
            json!({"harmonic_dims": harmonic_dims}),
        ));
        Ok(out)
    };
    run_groups(vec![Box::new(untwisted), Box::new(twisted)])
}

fn ddc_check(tc: &TwistedComplex) -> Result<Vec<CheckRecord>, CliError> {
    let rep = verify_ddc_lemma(tc)?;
    Ok(rep
        .degrees
        .iter()
        .map(|d| {
            CheckRecord::new(
                format!("ddc.degree-{:02}", d.degree),
                "ker D ∩ ker Dᶜ ∩ im D = ker D ∩ ker Dᶜ ∩ im Dᶜ = im DDᶜ",
                d.equal,
                json!({"dims": d.dims}),
            )
        })
        .collect())
}

fn formality_check(tc: &TwistedComplex) -> Result<Vec<CheckRecord>, CliError> {
    let fc = formality_chain(tc)?;
    let mut out: Vec<CheckRecord> = fc
        .arrows
        .iter()
        .map(|a| {
            let degrees: Vec<Value> = a
                .report
                .degrees
                .iter()
                .map(|r| json!([r.degree, r.source_dim, r.target_dim, r.rank]))
                .collect();
            CheckRecord::new(
                format!("formality.arrow.{}", a.name),
                format!("{} is a quasi-isomorphism", a.name),
                a.report.is_quasi_isomorphism,
                json!({"degree_source_target_rank": degrees}),
            )
        })
        .collect();
    out.push(CheckRecord::new(
        "formality.induced-differential-zero",
        "D induces zero on H_{Dᶜ}",
        fc.induced_differential_zero,
        Value::Null,
    ));
    let eta = betti(&fc.basic_eta);
    let full = betti(&fc.full);
    out.push(CheckRecord::new(
        "formality.eta-model-equals-full",
        "H(A_B ⊕ A_B∧η) = H(A)",
        eta == full,
        json!({"eta_model": eta, "full": full}),
    ));
    let split = ker_dxi_splitting(tc)?;
    out.push(CheckRecord::new(
        "formality.ker-dxi-direct-sum",
        "ker D_ξ = A_B ⊕ A_B∧η",
        split.direct_sum_holds(),
        json!({"kernel_dims": split.degrees.iter().map(|d| d.ker_dim).collect::<Vec<_>>()}),
    ));
    out.push(CheckRecord::new(
        "formality.ker-dxi-decomposition",
        "ω − η∧i_ξω is basic for ω ∈ ker D_ξ",
        split.left_eta_holds(),
        json!({"degrees_where_right_eta_form_fails": split.right_eta_failures()}),
    ));
    Ok(out)
}

fn quadraticity(d: &SasakianLieDatum, b: &FlatBundleDatum) -> Result<(Vec<CheckRecord>, Verdict), CliError> {
    let tc = attach(d, &b.endomorphisms())?;
    let g = build_germ_model(&tc)?;
    let r = quadraticity_check(&g, d.n());
    let cone = &r.cone;
    let rows = |label: &str| cone.block(label).map_or(0, |b| b.rows.len());
    let out = vec![
        CheckRecord::new(
            "quadraticity.dgla-axioms",
            "the model is a DGLA",
            g.dgla_report.passed(),
            Value::Null,
        ),
        CheckRecord::new(
            "quadraticity.lefschetz-compatible",
            "L[α, β] = [α, Lβ] for α ∈ H¹_B, β ∈ H⁰_B",
            r.lefschetz_compatible,
            Value::Null,
        ),
        CheckRecord::new(
            "quadraticity.cubic-jacobi",
            "[α, [α, α]] = 0 on H¹_B, polarised",
            r.cubic_jacobi,
            Value::Null,
        ),
        CheckRecord::new(
            "quadraticity.lefschetz-injective",
            "[dη] ∧ · : H¹_B(End E) → H³_B(End E) is injective",
            r.lefschetz_injective,
            json!({"rank": r.lefschetz_rank, "h1": r.h1_dim}),
        ),
        CheckRecord::new(
            "quadraticity.verdict",
            "the Maurer–Cartan cone is cut out by quadrics",
            r.verdict == Verdict::QuadraticCertified,
            json!({
                "verdict": r.verdict.as_str(),
                "n": r.n,
                "variables": cone.variables.len(),
                "quadratic_block_rows": rows("quadratic-block"),
                "bracket_block_rows": rows("bracket-block"),
                "witness": r.witness,
            }),
        ),
    ];
    Ok((out, r.verdict))
}

fn cup_vanishing(
    tc1: &TwistedComplex,
    tc2: &TwistedComplex,
    s: usize,
    t: usize,
) -> Result<Vec<CheckRecord>, CliError> {
    let r = cup_vanishing_check(tc1, tc2, s, t)?;
    Ok(vec![
        CheckRecord::new(
            "cup.product-zero",
            "H^s ⊗ H^t → H^{s+t} vanishes for s, t < n < s + t",
            r.product_zero,
            json!({"s": s, "t": t, "dims": r.dims, "rank": r.product.rank()}),
        ),
        CheckRecord::new(
            "cup.basic-representatives",
            "classes of degree ≤ n have representatives in A_B",
            r.basic_representatives,
            Value::Null,
        ),
        CheckRecord::new(
            "cup.top-classes-exact",
            "basic cocycles of degree s + t are exact",
            r.top_classes_exact,
            Value::Null,
        ),
    ])
}

fn repvar(
    gf: &GroupFile,
    model: Option<&SasakianLieDatum>,
) -> Result<(Vec<CheckRecord>, Option<String>), CliError> {
    let gp = gf.presentation()?;
    let rho = gf.representation(&gp)?;
    let tangent = fox_tangent(&gp, &rho)?;
    let lin = linear_kernel_check(&gp, &rho);
    let sys = relator_order2(&gp, &rho);
    let nq = normalized_quadrics(&sys);
    let mut out = vec![CheckRecord::new(
        "repvar.linear-kernel",
        "Z¹ from the Fox Jacobian equals the kernel of the order-one expansion",
        lin.jacobians_agree && lin.kernels_agree,
        json!({
            "z1": tangent.z1_dim(),
            "b1": tangent.b1_dim(),
            "h1": tangent.h1_dim(),
            "equations": sys.equations.len(),
            "normalised_quadrics": nq.count(),
        }),
    )];
    let mut outcome = None;
    if let Some(d) = model {
        let matching = gf
            .matching()?
            .ok_or_else(|| CliError::Input("comparison needs a matching in the group file".into()))?;
        let end = FlatBundleDatum::trivial(d.dim(), rho.rank()).endomorphisms();
        let tc = attach(d, &end)?;
        let g = build_germ_model(&tc)?;
        let c = compare_cone_with_variety(&tc, &g, &gp, &rho, &matching)?;
        out.push(CheckRecord::new(
            "compare.h1-dims",
            "dim H¹ from Fox calculus equals dim H¹ of the model",
            c.dims_agree(),
            json!({"fox": c.fox_h1_dim, "model": c.model_h1_dim}),
        ));
        out.push(CheckRecord::new(
            "compare.augmentation",
            "ε(L⁰) = End(E_x)",
            c.quotient_trivial(),
            json!({"rank": c.augmentation_rank, "fiber": c.fiber_dim}),
        ));
        out.push(CheckRecord::new(
            "compare.matching-isomorphism",
            "the matching maps model Z¹ onto group Z¹",
            c.matching_isomorphism,
            json!({"lands_in_cocycles": c.lands_in_cocycles}),
        ));
        out.push(CheckRecord::new(
            "compare.quadrics",
            "normalised order-two relator quadrics equal the Maurer–Cartan quadrics",
            c.quadrics_agree,
            json!({"model": c.model_quadrics, "group": c.group_quadrics}),
        ));
        if d.n() < 2 {
            outcome = Some("quadraticity not claimed: n < 2".into());
        }
    }
    Ok((out, outcome))
}
