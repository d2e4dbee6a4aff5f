//! Command-line front end: manifold-expression parsing, command dispatch and
//! rendering (human-readable or JSON).

pub mod expr;
pub mod io;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use cobord::homology::{ChainComplex, ComplexError};
use cobord::kink::{kink_of, spin_parity_check, KinkError, KinkFormula};
use cobord::manifold::{Catalog, CoefficientField, ManifoldDescriptor, ManifoldError};
use cobord::metric::{
    extract_timelike_line, lorentz_from_riemannian, LineField, MetricError, SymmetricForm,
};
use cobord::rules::{
    classify, decide_lorentzian, decide_spin_lorentzian, decide_weak, Answer, GroupClassification,
    Obstruction, RulesError, Verdict,
};
use cobord::witness::{menu_for_dimension, solve_counts, SummandMenu, WitnessError, WitnessRecipe};
use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;

const AFTER_HELP: &str = "\
Manifold expressions: catalog atoms (S3, T2, CP2, HP1, RP3, K3, point, or \
names registered via the COBORD_CATALOG file), products with 'x', connected \
sums with '#'. 'x' binds tighter than '#', so 'HP1 x S2 # T6' is \
'(HP1 x S2) # T6'; parentheses override.

Exit codes: 0 = computed (including No verdicts), 1 = usage or input error, \
2 = Unknown verdict.";

#[derive(Parser, Debug)]
#[command(name = "cobord", version, about = "Topology-change toolkit for Lorentzian cobordisms", after_help = AFTER_HELP)]
pub struct Cli {
    /// Emit machine-readable JSON instead of text
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Betti tables, Euler characteristic, semi-characteristics and flags
    Invariants {
        /// Manifold expression (may be given as multiple words)
        #[arg(required = true)]
        expr: Vec<String>,
    },
    /// Decide existence of a Lorentzian cobordism between two manifolds
    Decide {
        /// Decide the weak (partly timelike boundary) variant instead
        #[arg(long)]
        weak: bool,
        /// Require a spin structure on the cobordism
        #[arg(long)]
        spin: bool,
        /// Spin-cobordance of the pair, when known externally (only
        /// consulted in dimensions the tool does not resolve internally)
        #[arg(long)]
        spin_cobordant: Option<bool>,
        expr1: String,
        expr2: String,
    },
    /// Decide existence of a weak Lorentzian cobordism
    Weak {
        /// Require a spin structure on the cobordism
        #[arg(long)]
        spin: bool,
        expr1: String,
        expr2: String,
    },
    /// Solve for connected-sum counts reaching a target Euler characteristic
    Witness {
        /// Boundary dimension (odd)
        #[arg(long)]
        n: usize,
        /// Euler characteristic of the base cobordism
        #[arg(long)]
        chi: i64,
        /// Target Euler characteristic (default 0, the Lorentzian condition)
        #[arg(long, default_value_t = 0)]
        target: i64,
    },
    /// Gravitational kink number of a cobordism descriptor file
    Kink {
        /// JSON cobordism descriptor (see docs/schemas/v1/cobordism.schema.json)
        #[arg(long)]
        cobordism: PathBuf,
        /// Also check this claimed kink value against the spin parity rule
        #[arg(long)]
        claim: Option<i64>,
    },
    /// Class of a spin manifold in its Spin(1,n)0-Lorentzian cobordism group
    Classify {
        #[arg(required = true)]
        expr: Vec<String>,
    },
    /// Build a Lorentzian form from a Riemannian one and a line field, or
    /// decompose a given Lorentzian form
    Metric {
        /// Riemannian (positive definite) form, JSON row arrays
        #[arg(long)]
        gr: PathBuf,
        /// Line field vector, JSON array: construct the Lorentzian form
        #[arg(long)]
        v: Option<PathBuf>,
        /// Lorentzian form, JSON row arrays: extract its timelike line
        #[arg(long)]
        g: Option<PathBuf>,
    },
    /// Exact homology of a chain-complex file
    Homology {
        /// JSON chain complex (see docs/schemas/v1/chain-complex.schema.json)
        file: PathBuf,
    },
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(#[from] expr::ParseError),
    #[error("{0}")]
    Manifold(#[from] ManifoldError),
    #[error("{0}")]
    Rules(#[from] RulesError),
    #[error("{0}")]
    Witness(#[from] WitnessError),
    #[error("{0}")]
    Kink(#[from] KinkError),
    #[error("{0}")]
    Metric(#[from] MetricError),
    #[error("{0}")]
    Complex(#[from] ComplexError),
    #[error("cannot read '{path}': {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("invalid JSON in '{path}': {detail}")]
    Json { path: String, detail: String },
    #[error("{0}")]
    Usage(String),
}

/// Result of running a command: text for stdout plus the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: u8,
}

impl Outcome {
    fn computed(stdout: String) -> Self {
        Self { stdout, code: 0 }
    }
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let catalog = io::load_catalog()?;
    match &cli.command {
        Command::Invariants { expr } => run_invariants(&expr.join(" "), &catalog, cli.json),
        Command::Decide {
            weak,
            spin,
            spin_cobordant,
            expr1,
            expr2,
        } => run_decide(expr1, expr2, *weak, *spin, *spin_cobordant, &catalog, cli.json),
        Command::Weak { spin, expr1, expr2 } => {
            run_decide(expr1, expr2, true, *spin, None, &catalog, cli.json)
        }
        Command::Witness { n, chi, target } => run_witness(*n, *chi, *target, cli.json),
        Command::Kink { cobordism, claim } => run_kink(cobordism, *claim, &catalog, cli.json),
        Command::Classify { expr } => run_classify(&expr.join(" "), &catalog, cli.json),
        Command::Metric { gr, v, g } => run_metric(gr, v.as_deref(), g.as_deref(), cli.json),
        Command::Homology { file } => run_homology(file, cli.json),
    }
}

fn envelope(command: &str, mut payload: Value) -> String {
    let obj = payload.as_object_mut().expect("payload is an object");
    obj.insert("schema_version".into(), json!(SCHEMA_VERSION));
    obj.insert("command".into(), json!(command));
    let mut s = serde_json::to_string_pretty(&Value::Object(obj.clone())).unwrap();
    s.push('\n');
    s
}

// --- invariants ---------------------------------------------------------------

fn run_invariants(text: &str, catalog: &Catalog, as_json: bool) -> Result<Outcome, CliError> {
    let parsed = expr::parse(text, catalog)?;
    let m = parsed.eval(catalog)?;
    let canonical = parsed.print();
    let chi_hat = |field| m.semi_characteristic(field).ok();

    if as_json {
        let payload = json!({
            "expr": canonical,
            "descriptor": m,
            "euler": m.euler_characteristic(),
            "semi_characteristic_q": chi_hat(CoefficientField::Q),
            "semi_characteristic_z2": chi_hat(CoefficientField::Z2),
        });
        return Ok(Outcome::computed(envelope("invariants", payload)));
    }

    let mut out = format!("{canonical}\n");
    out += &format!("  dim:         {}\n", m.dim);
    out += &format!("  betti_q:     {:?}\n", m.betti_q);
    out += &format!("  betti_z2:    {:?}\n", m.betti_z2);
    out += &format!("  \u{3c7}:           {}\n", m.euler_characteristic());
    if let Some(q) = chi_hat(CoefficientField::Q) {
        out += &format!("  \u{3c7}\u{302}_Q:         {q}\n");
    }
    if let Some(z) = chi_hat(CoefficientField::Z2) {
        out += &format!("  \u{3c7}\u{302}_Z/2:       {z}\n");
    }
    if let Some(s) = m.signature {
        out += &format!("  \u{3c3}:           {s}\n");
    }
    out += &format!(
        "  orientable:  {}   spin: {}   stably parallelizable: {}\n",
        yesno(m.orientable),
        yesno(m.spin),
        tristate(&m)
    );
    out += &format!(
        "  connected:   {} ({} component{})\n",
        yesno(m.connected),
        m.components,
        if m.components == 1 { "" } else { "s" }
    );
    Ok(Outcome::computed(out))
}

fn yesno(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn tristate(m: &ManifoldDescriptor) -> &'static str {
    use cobord::manifold::TriState;
    match m.stably_parallelizable {
        TriState::Yes => "yes",
        TriState::No => "no",
        TriState::Unknown => "unknown",
    }
}

// --- decide -------------------------------------------------------------------

#[allow(clippy::too_many_arguments)]
fn run_decide(
    expr1: &str,
    expr2: &str,
    weak: bool,
    spin: bool,
    spin_cobordant: Option<bool>,
    catalog: &Catalog,
    as_json: bool,
) -> Result<Outcome, CliError> {
    let e1 = expr::parse(expr1, catalog)?;
    let e2 = expr::parse(expr2, catalog)?;
    let m1 = e1.eval(catalog)?;
    let m2 = e2.eval(catalog)?;

    let (kind, verdict) = match (weak, spin) {
        (true, s) => (
            if s { "spin_weak" } else { "weak" },
            decide_weak(&m1, &m2, s)?,
        ),
        (false, true) => (
            "spin_lorentzian",
            decide_spin_lorentzian(&m1, &m2, spin_cobordant)?,
        ),
        (false, false) => ("lorentzian", decide_lorentzian(&m1, &m2)?),
    };

    let code = if verdict.answer == Answer::Unknown { 2 } else { 0 };
    if as_json {
        let payload = json!({
            "kind": kind,
            "expr1": e1.print(),
            "expr2": e2.print(),
            "verdict": verdict,
        });
        return Ok(Outcome {
            stdout: envelope("decide", payload),
            code,
        });
    }
    Ok(Outcome {
        stdout: render_verdict(&verdict),
        code,
    })
}

fn render_verdict(v: &Verdict) -> String {
    let mut out = match v.answer {
        Answer::Yes => format!("Yes \u{2014} rule {}", v.rule),
        Answer::No => {
            let obstruction = match v.obstruction.as_ref().expect("No carries an obstruction") {
                Obstruction::Invariant(c) => {
                    format!("obstruction {}: {} \u{2260} {}", c.kind, c.left, c.right)
                }
                Obstruction::NoSpinCobordism { reason } => {
                    format!("no spin cobordism ({reason})")
                }
            };
            format!("No \u{2014} {obstruction} \u{2014} rule {}", v.rule)
        }
        Answer::Unknown => format!("Unknown \u{2014} rule {}", v.rule),
    };
    if let Some(detail) = &v.detail {
        out += &format!("\n  {detail}");
    }
    if !v.checks.is_empty() {
        let checks: Vec<String> = v
            .checks
            .iter()
            .map(|c| format!("{}: {} = {}", c.kind, c.left, c.right))
            .collect();
        out += &format!("\n  verified: {}", checks.join(", "));
    }
    if let Some(w) = &v.witness {
        out += &format!("\n  witness template: {}", render_counts(w));
    }
    out.push('\n');
    out
}

fn render_counts(w: &WitnessRecipe) -> String {
    let counts: Vec<String> = w
        .counts
        .iter()
        .map(|c| format!("{}: {}", c.summand, c.k))
        .collect();
    format!(
        "base \u{3c7} {} \u{2192} counts {{{}}}, resulting \u{3c7} {}",
        w.base_chi,
        counts.join(", "),
        w.resulting_euler
    )
}

// --- witness ------------------------------------------------------------------

fn run_witness(n: usize, chi: i64, target: i64, as_json: bool) -> Result<Outcome, CliError> {
    let menu = menu_for_dimension(n)?;
    let menu_json: Vec<Value> = menu
        .entries
        .iter()
        .map(|e| json!({"summand": e.name, "delta": e.delta}))
        .collect();
    match solve_counts(chi, &menu, target) {
        Ok(recipe) => {
            if as_json {
                let payload = json!({
                    "n": n,
                    "solvable": true,
                    "menu": menu_json,
                    "recipe": recipe,
                });
                return Ok(Outcome::computed(envelope("witness", payload)));
            }
            Ok(Outcome::computed(format!(
                "{}\n{}\n",
                render_menu(&menu, n),
                render_counts(&recipe)
            )))
        }
        Err(WitnessError::NoSolution {
            offset,
            residue,
            modulus,
        }) => {
            if as_json {
                let payload = json!({
                    "n": n,
                    "solvable": false,
                    "menu": menu_json,
                    "base_chi": chi,
                    "target": target,
                    "obstruction": {"offset": offset, "residue": residue, "modulus": modulus},
                });
                return Ok(Outcome::computed(envelope("witness", payload)));
            }
            Ok(Outcome::computed(format!(
                "{}\nno nonnegative counts: offset {} \u{2261} {} (mod {}) \u{2014} parity obstruction\n",
                render_menu(&menu, n),
                offset,
                residue,
                modulus
            )))
        }
        Err(e) => Err(e.into()),
    }
}

fn render_menu(menu: &SummandMenu, n: usize) -> String {
    let entries: Vec<String> = menu
        .entries
        .iter()
        .map(|e| format!("{} (\u{3b4} {:+})", e.name, e.delta))
        .collect();
    format!(
        "menu for n = {n} (cobordism dim {}): {}",
        menu.dim,
        entries.join(", ")
    )
}

// --- kink ---------------------------------------------------------------------

fn run_kink(
    path: &std::path::Path,
    claim: Option<i64>,
    catalog: &Catalog,
    as_json: bool,
) -> Result<Outcome, CliError> {
    let cob = io::load_cobordism(path, catalog)?;
    let report = kink_of(&cob)?;
    let claim_result = claim
        .map(|k| Ok::<_, CliError>((k, spin_parity_check(&cob, k)?)))
        .transpose()?;

    if as_json {
        let payload = json!({
            "report": report,
            "claim": claim_result.map(|(k, ok)| json!({"value": k, "parity_ok": ok})),
        });
        return Ok(Outcome::computed(envelope("kink", payload)));
    }

    let formula = match report.formula_used {
        KinkFormula::EvenDimChi => "\u{3c7}(M), even-dimensional cobordism",
        KinkFormula::OddDimHalfDifference => {
            "(\u{3c7}(N2) - \u{3c7}(N1)) / 2, odd-dimensional cobordism"
        }
    };
    let mut out = format!("kink: {}  (formula: {formula})\n", report.kink);
    if let Some(ok) = report.parity_ok {
        out += &format!(
            "spin parity (\u{3c7}\u{302}_Z/2(\u{2202}M) \u{2261} kink mod 2): {}\n",
            if ok { "satisfied" } else { "violated" }
        );
    }
    if let Some((k, ok)) = claim_result {
        out += &format!(
            "claimed kink {k}: {} the spin parity constraint\n",
            if ok { "satisfies" } else { "violates" }
        );
    }
    Ok(Outcome::computed(out))
}

// --- classify -----------------------------------------------------------------

fn run_classify(text: &str, catalog: &Catalog, as_json: bool) -> Result<Outcome, CliError> {
    let parsed = expr::parse(text, catalog)?;
    let m = parsed.eval(catalog)?;
    let c = classify(&m)?;
    if as_json {
        let payload = json!({
            "expr": parsed.print(),
            "classification": c,
        });
        return Ok(Outcome::computed(envelope("classify", payload)));
    }
    Ok(Outcome::computed(format!(
        "{}\n",
        render_classification(&c)
    )))
}

fn render_classification(c: &GroupClassification) -> String {
    let tuple: Vec<String> = c.invariant_tuple.iter().map(i64::to_string).collect();
    format!(
        "\u{3a9}^{{Spin\u{2080}}}_{{1,{}}} \u{2245} {}, class ({})",
        c.n,
        c.group,
        tuple.join(", ")
    )
}

// --- metric -------------------------------------------------------------------

fn run_metric(
    gr_path: &std::path::Path,
    v_path: Option<&std::path::Path>,
    g_path: Option<&std::path::Path>,
    as_json: bool,
) -> Result<Outcome, CliError> {
    let g_r = SymmetricForm::from_rows(&io::load_matrix(gr_path)?)?;
    match (v_path, g_path) {
        (Some(vp), None) => {
            let v = LineField::from_slice(&io::load_vector(vp)?)?;
            let g = lorentz_from_riemannian(&g_r, &v)?;
            let line = extract_timelike_line(&g, &g_r)?;
            let (neg, pos) = g.signature()?;
            let timelike_norm = g.apply(v.vector(), v.vector());
            let round_trip = {
                let norm = g_r.apply(v.vector(), v.vector()).sqrt();
                let unit = v.vector() / norm;
                (line.vector() - &unit)
                    .norm()
                    .min((line.vector() + &unit).norm())
            };
            if as_json {
                let payload = json!({
                    "mode": "construct",
                    "dim": g.dim(),
                    "lorentzian": g.to_rows(),
                    "eigenvalues": g.eigenvalues(),
                    "signature": {"negative": neg, "positive": pos},
                    "timelike_norm": timelike_norm,
                    "line_field": line.to_vec(),
                    "round_trip_deviation": round_trip,
                });
                return Ok(Outcome::computed(envelope("metric", payload)));
            }
            let mut out = format!("Lorentzian form (dim {}):\n", g.dim());
            for row in g.to_rows() {
                out += &format!("  {row:?}\n");
            }
            out += &format!("eigenvalues: {:?}\n", g.eigenvalues());
            out += &format!("signature: ({neg}, {pos})\n");
            out += &format!("g(V, V) = {timelike_norm} (timelike)\n");
            out += &format!("extracted line field: {:?}\n", line.to_vec());
            out += &format!("round-trip deviation: {round_trip:e}\n");
            Ok(Outcome::computed(out))
        }
        (None, Some(gp)) => {
            let g = SymmetricForm::from_rows(&io::load_matrix(gp)?)?;
            let line = extract_timelike_line(&g, &g_r)?;
            let (neg, pos) = g.signature()?;
            if as_json {
                let payload = json!({
                    "mode": "decompose",
                    "dim": g.dim(),
                    "eigenvalues": g.eigenvalues(),
                    "signature": {"negative": neg, "positive": pos},
                    "line_field": line.to_vec(),
                });
                return Ok(Outcome::computed(envelope("metric", payload)));
            }
            let mut out = format!("eigenvalues: {:?}\n", g.eigenvalues());
            out += &format!("signature: ({neg}, {pos})\n");
            out += &format!("timelike line field: {:?}\n", line.to_vec());
            Ok(Outcome::computed(out))
        }
        _ => Err(CliError::Usage(
            "metric needs exactly one of --v FILE (construct) or --g FILE (decompose)".into(),
        )),
    }
}

// --- homology -----------------------------------------------------------------

fn run_homology(path: &std::path::Path, as_json: bool) -> Result<Outcome, CliError> {
    let text = io::read_to_string(path)?;
    let complex: ChainComplex = serde_json::from_str(&text).map_err(|e| CliError::Json {
        path: path.display().to_string(),
        detail: e.to_string(),
    })?;
    let h = complex.homology();
    let torsion: Vec<Vec<String>> = h
        .torsion
        .iter()
        .map(|t| t.iter().map(|f| f.to_string()).collect())
        .collect();
    if as_json {
        let payload = json!({
            "dim": complex.dim(),
            "ranks": complex.ranks(),
            "betti_q": h.betti_q,
            "betti_z2": h.betti_z2,
            "torsion": torsion,
            "euler": complex.euler_characteristic(),
        });
        return Ok(Outcome::computed(envelope("homology", payload)));
    }
    let mut out = format!(
        "dim {}, chain ranks {:?}\n",
        complex.dim(),
        complex.ranks()
    );
    for k in 0..=complex.dim() {
        out += &format!(
            "  H_{k}: betti_q {}, betti_z2 {}",
            h.betti_q[k], h.betti_z2[k]
        );
        if !h.torsion[k].is_empty() {
            out += &format!(", torsion {:?}", torsion[k]);
        }
        out.push('\n');
    }
    out += &format!("\u{3c7} = {}\n", complex.euler_characteristic());
    Ok(Outcome::computed(out))
}
