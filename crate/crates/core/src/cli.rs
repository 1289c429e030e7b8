//! Command-line front end. [`run`] is the whole program except for the
//! process exit, so tests can drive it in-process.

use std::fs::File;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::eigenstructure::{
    component_reports, component_zero_eigenvectors, count_minimal_h, expected_n_pairs,
    realize_complex, structure_counts, EigenstructureError,
};
use crate::generate::random_hypergraph;
use crate::hypergraph::{connected_components, degrees, load_hypergraph, Hypergraph};
use crate::partitions::{
    discrepancy_scan, enumerate_bipartitions, enumerate_multipartitions, find_global_hm_heads,
    find_hm_bipartition, validate_bipartition, validate_multipartition, Flavor,
    MultipartitionKind, PartitionError, Predicate, WitnessExport,
};
use crate::tensor_ops::{
    diag_similarity, hm_spectral_reflection, materialize_dense, nqz_spectral_radius,
    DiagonalSignMatrix, Operator, PowerIterationOptions, TensorError, DEFAULT_DENSE_BUDGET,
};
use crate::zk_solver::{ZeroOperator, DEFAULT_BRUTE_FORCE_BUDGET, NO_SIGNLESS_ZERO_NOTE};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub mod exit {
    pub const OK: i32 = 0;
    pub const PARSE: i32 = 2;
    pub const VERIFICATION: i32 = 3;
    pub const BUDGET: i32 = 4;
    pub const MISMATCH: i32 = 5;
    pub const STRUCTURAL: i32 = 6;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OperatorSelection {
    Laplacian,
    Signless,
    Both,
}

impl OperatorSelection {
    pub fn operators(self) -> Vec<ZeroOperator> {
        match self {
            OperatorSelection::Laplacian => vec![ZeroOperator::Laplacian],
            OperatorSelection::Signless => vec![ZeroOperator::Signless],
            OperatorSelection::Both => vec![ZeroOperator::Laplacian, ZeroOperator::Signless],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum PredicateSelection {
    Literal,
    Residue,
}

impl From<PredicateSelection> for Predicate {
    fn from(p: PredicateSelection) -> Self {
        match p {
            PredicateSelection::Literal => Predicate::Literal,
            PredicateSelection::Residue => Predicate::Residue,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum PartitionKind {
    Hm,
    Odd,
    Even,
    Tri,
    Lquad,
    Slquad,
    Penta,
}

enum KindTarget {
    Bi(Flavor),
    Multi(MultipartitionKind),
}

impl PartitionKind {
    fn target(self) -> KindTarget {
        match self {
            PartitionKind::Hm => KindTarget::Bi(Flavor::Hm),
            PartitionKind::Odd => KindTarget::Bi(Flavor::Odd),
            PartitionKind::Even => KindTarget::Bi(Flavor::Even),
            PartitionKind::Tri => KindTarget::Multi(MultipartitionKind::Tripartite),
            PartitionKind::Lquad => KindTarget::Multi(MultipartitionKind::LQuad),
            PartitionKind::Slquad => KindTarget::Multi(MultipartitionKind::SlQuad),
            PartitionKind::Penta => KindTarget::Multi(MultipartitionKind::Penta),
        }
    }

    /// Every kind defined for uniformity `k`.
    fn applicable(k: usize) -> Vec<PartitionKind> {
        use PartitionKind::*;
        [Hm, Odd, Even, Tri, Lquad, Slquad, Penta]
            .into_iter()
            .filter(|kind| match kind.target() {
                KindTarget::Bi(Flavor::Hm) => true,
                KindTarget::Bi(_) => k.is_multiple_of(2),
                KindTarget::Multi(m) => m.uniformity() == k,
            })
            .collect()
    }
}

#[derive(Debug, Parser)]
#[command(name = "hyperzero", version, about = "Zero-eigenvalue structure of uniform hypergraph Laplacian tensors")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Connected components and degrees
    Components,
    /// Zero-eigenvalue classes, counts and realized eigenvectors
    ZeroEigenvectors,
    /// Bipartition and multipartition inventories
    Partitions,
    /// Algebraic counts against combinatorial counts
    Crosscheck,
    /// Power iteration, root-of-unity reflections and the L/Q similarity
    SpectralTransforms,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Components => "components",
            Command::ZeroEigenvectors => "zero-eigenvectors",
            Command::Partitions => "partitions",
            Command::Crosscheck => "crosscheck",
            Command::SpectralTransforms => "spectral-transforms",
        }
    }
}

#[derive(Debug, Default, Args)]
pub struct Flags {
    /// Hypergraph file (JSON or "k n" text)
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub operator: Option<OperatorSelection>,
    #[arg(long, global = true, value_enum)]
    pub predicate: Option<PredicateSelection>,
    #[arg(long, global = true, value_enum)]
    pub kind: Option<PartitionKind>,
    /// Numeric residual tolerance
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
    /// Cap on brute-force assignments per component
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Cap on dense tensor entries
    #[arg(long, global = true)]
    pub dense_budget: Option<usize>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Number of seeded random instances for crosscheck
    #[arg(long, global = true)]
    pub batch: Option<usize>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true)]
    pub pretty: bool,
    /// JSON config file; flags take precedence
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    input: Option<PathBuf>,
    operator: Option<OperatorSelection>,
    predicate: Option<PredicateSelection>,
    kind: Option<PartitionKind>,
    tolerance: Option<f64>,
    budget: Option<u64>,
    dense_budget: Option<usize>,
    seed: Option<u64>,
    batch: Option<usize>,
    out: Option<PathBuf>,
    pretty: Option<bool>,
}

/// Resolved settings, echoed into every report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisConfig {
    pub input: Option<PathBuf>,
    pub operator: OperatorSelection,
    pub predicate: PredicateSelection,
    pub kind: Option<PartitionKind>,
    pub tolerance: f64,
    pub budget: u64,
    pub dense_budget: usize,
    pub seed: u64,
    pub batch: usize,
    pub out: Option<PathBuf>,
    pub pretty: bool,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        Self {
            input: None,
            operator: OperatorSelection::Both,
            predicate: PredicateSelection::Residue,
            kind: None,
            tolerance: 1e-9,
            budget: DEFAULT_BRUTE_FORCE_BUDGET,
            dense_budget: DEFAULT_DENSE_BUDGET,
            seed: 0,
            batch: 0,
            out: None,
            pretty: false,
        }
    }
}

impl AnalysisConfig {
    /// Flags over config file over defaults.
    pub fn resolve(flags: &Flags) -> Result<Self, CliError> {
        let file = match &flags.config {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
                serde_json::from_str::<ConfigFile>(&text)
                    .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?
            }
            None => ConfigFile::default(),
        };
        let d = Self::default();
        let cfg = Self {
            input: flags.input.clone().or(file.input),
            operator: flags.operator.or(file.operator).unwrap_or(d.operator),
            predicate: flags.predicate.or(file.predicate).unwrap_or(d.predicate),
            kind: flags.kind.or(file.kind),
            tolerance: flags.tolerance.or(file.tolerance).unwrap_or(d.tolerance),
            budget: flags.budget.or(file.budget).unwrap_or(d.budget),
            dense_budget: flags.dense_budget.or(file.dense_budget).unwrap_or(d.dense_budget),
            seed: flags.seed.or(file.seed).unwrap_or(d.seed),
            batch: flags.batch.or(file.batch).unwrap_or(d.batch),
            out: flags.out.clone().or(file.out),
            pretty: flags.pretty || file.pretty.unwrap_or(false),
        };
        if !(cfg.tolerance > 0.0 && cfg.tolerance.is_finite()) {
            return Err(CliError::Usage(format!("tolerance must be positive, got {}", cfg.tolerance)));
        }
        if cfg.budget == 0 || cfg.dense_budget == 0 {
            return Err(CliError::Usage("budgets must be positive".into()));
        }
        Ok(cfg)
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Input(_) => exit::PARSE,
            CliError::Verification(_) => exit::VERIFICATION,
            CliError::Budget(_) => exit::BUDGET,
        }
    }
}

impl From<EigenstructureError> for CliError {
    fn from(e: EigenstructureError) -> Self {
        match e {
            EigenstructureError::BudgetExceeded { .. }
            | EigenstructureError::Partition(PartitionError::BudgetExceeded { .. }) => {
                CliError::Budget(e.to_string())
            }
            other => CliError::Verification(other.to_string()),
        }
    }
}

impl From<TensorError> for CliError {
    fn from(e: TensorError) -> Self {
        match e {
            TensorError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            other => CliError::Verification(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn one_based(set: &[usize]) -> Vec<usize> {
    set.iter().map(|v| v + 1).collect()
}

fn count_value(c: &BigUint) -> Value {
    match c.to_u64() {
        Some(v) => json!(v),
        None => json!(c.to_string()),
    }
}

pub fn load_input(path: &Path) -> Result<Hypergraph, CliError> {
    let file = File::open(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    load_hypergraph(file).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn require_input(cfg: &AnalysisConfig) -> Result<Hypergraph, CliError> {
    match &cfg.input {
        Some(p) => load_input(p),
        None => Err(CliError::Usage("--input is required".into())),
    }
}

pub fn instance_summary(h: &Hypergraph) -> Value {
    let comps = connected_components(h);
    json!({
        "k": h.k(),
        "n": h.n(),
        "edges": h.edge_count(),
        "components": comps.len(),
        "singletons": comps.singleton_count(),
    })
}

pub fn cmd_components(h: &Hypergraph) -> Value {
    let comps = connected_components(h);
    json!({
        "instance": instance_summary(h),
        "degrees": degrees(h).0,
        "components": comps.iter().map(|c| json!({
            "vertices": one_based(&c.vertices),
            "edges": c.edges.iter().map(|&e| one_based(&h.edges()[e])).collect::<Vec<_>>(),
            "singleton": c.is_singleton(),
        })).collect::<Vec<_>>(),
    })
}

pub fn cmd_zero_eigenvectors(h: &Hypergraph, cfg: &AnalysisConfig) -> Result<Value, CliError> {
    let comps = connected_components(h).components;
    let mut sections = Vec::new();
    for op in cfg.operator.operators() {
        let counts = structure_counts(h, op);
        let mut classes = Vec::new();
        let mut skipped = Vec::new();
        for (id, comp) in comps.iter().enumerate() {
            if counts.components[id].solution_count > BigUint::from(cfg.budget) {
                skipped.push(id);
                continue;
            }
            for class in component_zero_eigenvectors(h, comp, id, op, cfg.budget)? {
                let pair = realize_complex(h, &class, cfg.tolerance)?;
                classes.push(json!({
                    "component": id,
                    "alpha": class.representative.alpha,
                    "kind": class.kind,
                    "conjugate_partner": class.conjugate_partner,
                    "residual": pair.residual,
                }));
            }
        }
        let note = counts
            .components
            .iter()
            .any(|c| c.no_zero_eigenvalue)
            .then_some(NO_SIGNLESS_ZERO_NOTE);
        sections.push(json!({
            "operator": op,
            "components": component_reports(h, op, cfg.budget),
            "counts": counts,
            "H_count": count_value(&counts.h_total),
            "N_pair_count": count_value(&counts.n_pair_total),
            "classes": classes,
            "enumeration_skipped": skipped,
            "note": note,
        }));
    }
    Ok(json!({ "instance": instance_summary(h), "operators": sections }))
}

/// Returns the report and whether some enumeration ran out of budget.
pub fn cmd_partitions(h: &Hypergraph, cfg: &AnalysisConfig) -> (Value, bool) {
    let comps = connected_components(h).components;
    let kinds = match cfg.kind {
        Some(k) => vec![k],
        None => PartitionKind::applicable(h.k()),
    };
    let predicate = Predicate::from(cfg.predicate);
    let mut over_budget = false;
    let mut sections = Vec::new();
    for kind in kinds {
        let mut rows = Vec::new();
        let mut total = 0usize;
        let mut section = json!({ "kind": kind });
        let applicable = match kind.target() {
            KindTarget::Bi(f) => f == Flavor::Hm || h.k().is_multiple_of(2),
            KindTarget::Multi(m) => m.uniformity() == h.k(),
        };
        if !applicable {
            section["applicable"] = json!(false);
            sections.push(section);
            continue;
        }
        for (id, comp) in comps.iter().enumerate() {
            let listed: Result<Vec<WitnessExport>, PartitionError> = match kind.target() {
                KindTarget::Bi(flavor) => enumerate_bipartitions(h, comp, id, flavor, cfg.budget)
                    .map(|ws| {
                        ws.iter()
                            .map(|w| {
                                let valid = validate_bipartition(h, comp, w).unwrap_or(false);
                                WitnessExport::bipartition(w, valid)
                            })
                            .collect()
                    }),
                KindTarget::Multi(m) => {
                    enumerate_multipartitions(h, comp, id, m, predicate, cfg.budget).map(|ws| {
                        ws.iter()
                            .map(|w| {
                                let valid =
                                    validate_multipartition(h, comp, w, predicate).unwrap_or(false);
                                WitnessExport::multipartition(w, predicate, valid)
                            })
                            .collect()
                    })
                }
            };
            let mut row = json!({ "component": id, "vertices": one_based(&comp.vertices) });
            match listed {
                Ok(ws) => {
                    total += ws.len();
                    row["count"] = json!(ws.len());
                    row["witnesses"] = json!(ws);
                }
                Err(e) => {
                    over_budget = true;
                    row["count"] = Value::Null;
                    row["error"] = json!(e.to_string());
                }
            }
            if kind == PartitionKind::Hm {
                row["search"] = json!(find_hm_bipartition(h, comp, id).map(|w| {
                    let valid = validate_bipartition(h, comp, &w).unwrap_or(false);
                    WitnessExport::bipartition(&w, valid)
                }));
            }
            rows.push(row);
        }
        section["applicable"] = json!(true);
        section["components"] = json!(rows);
        section["total"] = json!(total);
        if let KindTarget::Multi(m) = kind.target() {
            section["predicate"] = json!(predicate);
            section["pattern_disagreements"] = json!(discrepancy_scan(m).patterns);
        }
        sections.push(section);
    }
    let body = json!({
        "instance": instance_summary(h),
        "kinds": sections,
        "partial": over_budget,
    });
    (body, over_budget)
}

#[derive(Debug, Default)]
struct CheckTally {
    mismatch: bool,
    over_budget: bool,
}

fn crosscheck_instance(
    h: &Hypergraph,
    cfg: &AnalysisConfig,
    tally: &mut CheckTally,
) -> Result<Vec<Value>, CliError> {
    let comps = connected_components(h).components;
    let mut checks = Vec::new();
    for op in cfg.operator.operators() {
        match count_minimal_h(h, op, cfg.budget) {
            Ok(r) => checks.push(json!({
                "check": "H_count",
                "operator": op,
                "algebraic": count_value(&r.count),
                "combinatorial": count_value(&r.expected),
                "matched": true,
            })),
            Err(EigenstructureError::HCrosscheckMismatch(r)) => {
                tally.mismatch = true;
                checks.push(json!({
                    "check": "H_count",
                    "operator": op,
                    "algebraic": count_value(&r.count),
                    "combinatorial": count_value(&r.expected),
                    "matched": false,
                    "discrepancies": r.discrepancies,
                }));
            }
            Err(e) => {
                let e = CliError::from(e);
                if e.code() != exit::BUDGET {
                    return Err(e);
                }
                tally.over_budget = true;
                checks.push(json!({ "check": "H_count", "operator": op, "error": e.to_string() }));
            }
        }

        let counts = structure_counts(h, op);
        for (id, comp) in comps.iter().enumerate() {
            let algebraic = &counts.components[id].n_pair_count;
            match expected_n_pairs(h, comp, id, op, cfg.budget) {
                Ok(Some(expected)) => {
                    let matched = *algebraic == BigUint::from(expected);
                    tally.mismatch |= !matched;
                    checks.push(json!({
                        "check": "N_pair_count",
                        "operator": op,
                        "component": id,
                        "algebraic": count_value(algebraic),
                        "combinatorial": expected,
                        "matched": matched,
                    }));
                }
                Ok(None) => {}
                Err(e) => {
                    tally.over_budget = true;
                    checks.push(json!({
                        "check": "N_pair_count",
                        "operator": op,
                        "component": id,
                        "error": e.to_string(),
                    }));
                }
            }
        }

        // informational: the literal clause lists against the residue rule
        if let Some(kind) = MultipartitionKind::for_operator(h.k(), op) {
            for (id, comp) in comps.iter().enumerate() {
                let lit = enumerate_multipartitions(h, comp, id, kind, Predicate::Literal, cfg.budget);
                let res = enumerate_multipartitions(h, comp, id, kind, Predicate::Residue, cfg.budget);
                if let (Ok(lit), Ok(res)) = (lit, res) {
                    checks.push(json!({
                        "check": "literal_vs_residue",
                        "kind": kind,
                        "component": id,
                        "literal": lit.len(),
                        "residue": res.len(),
                        "agree": lit.len() == res.len(),
                    }));
                }
            }
        }
    }
    Ok(checks)
}

/// Seeded random instances with `k^n` small enough for brute force.
pub fn random_batch(seed: u64, count: usize) -> Vec<Hypergraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let k = rng.gen_range(3..=5);
            let n_max = match k {
                3 => 9,
                4 => 8,
                _ => 7,
            };
            let n = rng.gen_range(k..=n_max);
            let edges = rng.gen_range(0..=n);
            random_hypergraph(&mut rng, k, n, edges)
        })
        .collect()
}

/// Returns the report and its exit code.
pub fn cmd_crosscheck(cfg: &AnalysisConfig) -> Result<(Value, i32), CliError> {
    let mut instances: Vec<(String, Hypergraph)> = Vec::new();
    if let Some(path) = &cfg.input {
        instances.push((path.display().to_string(), load_input(path)?));
    }
    for (i, h) in random_batch(cfg.seed, cfg.batch).into_iter().enumerate() {
        instances.push((format!("random-{i}"), h));
    }
    if instances.is_empty() {
        return Err(CliError::Usage("crosscheck needs --input or --batch".into()));
    }
    let mut tally = CheckTally::default();
    let mut rows = Vec::new();
    for (label, h) in &instances {
        let checks = crosscheck_instance(h, cfg, &mut tally)?;
        rows.push(json!({
            "label": label,
            "hypergraph": h.to_file(),
            "instance": instance_summary(h),
            "checks": checks,
        }));
    }
    let code = if tally.mismatch {
        exit::MISMATCH
    } else if tally.over_budget {
        exit::BUDGET
    } else {
        exit::OK
    };
    let body = json!({
        "instances": rows,
        "all_matched": !tally.mismatch,
        "partial": tally.over_budget,
    });
    Ok((body, code))
}

/// Returns the report and its exit code.
pub fn cmd_spectral_transforms(h: &Hypergraph, cfg: &AnalysisConfig) -> Result<(Value, i32), CliError> {
    let comps = connected_components(h).components;
    let Some(heads) = find_global_hm_heads(h, &comps) else {
        let body = json!({ "instance": instance_summary(h), "hm_bipartite": false });
        return Ok((body, exit::STRUCTURAL));
    };
    let mut body = json!({
        "instance": instance_summary(h),
        "hm_bipartite": true,
        "heads": one_based(&heads),
    });
    let pi = match nqz_spectral_radius::<f64>(h, PowerIterationOptions::default()) {
        Ok(pi) => pi,
        Err(TensorError::NotConnected) => {
            body["error"] = json!(TensorError::NotConnected.to_string());
            return Ok((body, exit::STRUCTURAL));
        }
        Err(e) => return Err(e.into()),
    };
    body["power_iteration"] = json!({
        "lambda": pi.pair.lambda.re,
        "lower": pi.lower,
        "upper": pi.upper,
        "iterations": pi.iterations,
        "converged": pi.converged,
        "residual": pi.pair.residual,
    });
    let mut reflections = Vec::new();
    for r in 0..h.k() {
        let out = hm_spectral_reflection(h, &heads, &pi.pair, r, cfg.tolerance)?;
        reflections.push(json!({
            "r": r,
            "lambda": [out.lambda.re, out.lambda.im],
            "residual": out.residual,
        }));
    }
    body["reflections"] = json!(reflections);
    if h.k() % 2 == 1 {
        body["similarity"] = Value::Null;
        return Ok((body, exit::OK));
    }
    let dense = materialize_dense::<num_rational::Rational64>(h, Operator::Laplacian, cfg.dense_budget)
        .and_then(|l| {
            let q = materialize_dense(h, Operator::Signless, cfg.dense_budget)?;
            let p = DiagonalSignMatrix::from_heads(h.n(), &heads);
            Ok(diag_similarity(&l, &p)? == q)
        });
    match dense {
        Ok(exact) => {
            body["similarity"] = json!({ "checked": true, "exact": exact });
            let code = if exact { exit::OK } else { exit::VERIFICATION };
            Ok((body, code))
        }
        Err(e @ TensorError::BudgetExceeded { .. }) => {
            body["similarity"] = json!({ "checked": false, "error": e.to_string() });
            Ok((body, exit::BUDGET))
        }
        Err(e) => Err(e.into()),
    }
}

fn render_pretty(v: &Value, path: &str, out: &mut String) {
    let scalar_array = |a: &[Value]| a.iter().all(|x| !x.is_object() && !x.is_array());
    match v {
        Value::Object(map) => {
            for (key, val) in map {
                let p = if path.is_empty() { key.clone() } else { format!("{path}.{key}") };
                render_pretty(val, &p, out);
            }
        }
        Value::Array(items) if !scalar_array(items) => {
            for (i, val) in items.iter().enumerate() {
                render_pretty(val, &format!("{path}[{i}]"), out);
            }
        }
        other => out.push_str(&format!("{path:<48} {other}\n")),
    }
}

pub fn render(report: &Value, pretty: bool) -> String {
    if pretty {
        let mut s = String::new();
        render_pretty(report, "", &mut s);
        s
    } else {
        let mut s = serde_json::to_string_pretty(report).expect("report serializes");
        s.push('\n');
        s
    }
}

fn dispatch(command: Command, cfg: &AnalysisConfig) -> Result<(Value, i32), CliError> {
    match command {
        Command::Components => Ok((cmd_components(&require_input(cfg)?), exit::OK)),
        Command::ZeroEigenvectors => Ok((cmd_zero_eigenvectors(&require_input(cfg)?, cfg)?, exit::OK)),
        Command::Partitions => {
            let (body, partial) = cmd_partitions(&require_input(cfg)?, cfg);
            Ok((body, if partial { exit::BUDGET } else { exit::OK }))
        }
        Command::Crosscheck => cmd_crosscheck(cfg),
        Command::SpectralTransforms => cmd_spectral_transforms(&require_input(cfg)?, cfg),
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let fail = |code: i32, msg: String| Outcome {
        code,
        stdout: String::new(),
        stderr: msg,
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            return Outcome {
                code: exit::OK,
                stdout: e.to_string(),
                stderr: String::new(),
            }
        }
        Err(e) => return fail(exit::PARSE, e.render().to_string()),
    };
    let cfg = match AnalysisConfig::resolve(&cli.flags) {
        Ok(cfg) => cfg,
        Err(e) => return fail(e.code(), format!("error: {e}\n")),
    };
    let (body, code) = match dispatch(cli.command, &cfg) {
        Ok(r) => r,
        Err(e) => return fail(e.code(), format!("error: {e}\n")),
    };
    let report = json!({
        "tool": "hyperzero",
        "version": VERSION,
        "command": cli.command.name(),
        "config": cfg,
        "result": body,
    });
    let text = render(&report, cfg.pretty);
    match &cfg.out {
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => Outcome {
                code,
                stdout: String::new(),
                stderr: String::new(),
            },
            Err(e) => fail(exit::PARSE, format!("error: {}: {e}\n", path.display())),
        },
        None => Outcome {
            code,
            stdout: text,
            stderr: String::new(),
        },
    }
}
