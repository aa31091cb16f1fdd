//! Command-line front end.
//!
//! [`run`] parses arguments, dispatches to a subcommand and returns the exit
//! code together with what should go to stdout and stderr, so the whole
//! interface can be driven in-process from tests. Exit codes: `0` success,
//! `1` invalid input, `2` a hypothesis of an estimate fails (not Fano, not
//! monotone, `Θ < p`, strict inequality violated).

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use serde_json::{json, Value};

use crate::bounds::{self, cases, BoundError, BoundInputs};
use crate::ls::{ComplexError, FilteredComplex};
use crate::novikov::NovikovElement;
use crate::quantum::{GradedClass, NilpotencyVerdict, QuantumRing, RingError};
use crate::rat::{fmt_q, parse_q, q, Q};
use crate::roots::{format_vector, OrbitInput, OrbitSpec, RootError};
use crate::toric::{ToricError, ToricSpec};

#[derive(Debug, Parser)]
#[command(name = "hamfix", version, about = "Exact fixed-point lower bounds for Hamiltonian diffeomorphisms")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Truncate printed Novikov elements at this exponent.
    #[arg(long, global = true)]
    pub cutoff: Option<String>,
    /// Cap on orthogonal decompositions / product search depth.
    #[arg(long, global = true)]
    pub search_limit: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct Source {
    #[arg(long, conflicts_with = "input")]
    pub preset: Option<String>,
    #[arg(long)]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coadjoint orbit pipeline. Presets: projective, grassmannian, flag-1-n1,
    /// equal-blocks, complete-flag.
    Orbit {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
    },
    /// Toric pipeline. Presets: cp2, cpn, cp1xcp1, hirzebruch.
    Toric {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
        #[arg(long)]
        allow_nonfree: bool,
    },
    /// Quantum homology rings. Presets: projective, grassmannian, cp1xcp1.
    Ring {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        /// Symplectic period of the preset ring.
        #[arg(long, default_value = "1")]
        period: String,
        /// Product of basis labels, e.g. `u1*u2`.
        #[arg(long)]
        product: Vec<String>,
        /// Quantum cuplength lower bound at this period value.
        #[arg(long)]
        qcl: Vec<String>,
        #[arg(long)]
        pfqf: bool,
        /// Basis label to test for nonnilpotence.
        #[arg(long)]
        nonnilpotent: Option<String>,
        /// Maximal product length for the searches.
        #[arg(long)]
        max_len: Option<usize>,
        /// Print the full ring document.
        #[arg(long)]
        dump: bool,
    },
    /// Closed-form bound evaluators.
    Bound {
        /// Defaults read from a JSON document with the fields of the inputs.
        #[arg(long, global = true)]
        input: Option<PathBuf>,
        #[command(subcommand)]
        which: BoundCommand,
    },
    /// Minmax selector on filtered complexes. Presets: circle, sphere, torus,
    /// sphere-cancel, rp2.
    Ls {
        #[command(flatten)]
        source: Source,
        /// Generator label whose class to evaluate (default: a homology basis).
        #[arg(long)]
        class: Vec<String>,
    },
    /// Runs the regression table and every refusal path.
    Selfcheck,
}

#[derive(Debug, Subcommand)]
pub enum BoundCommand {
    /// ⌈p·cuplength/Θ⌉
    Main {
        #[arg(long)]
        p: Option<String>,
        #[arg(long)]
        theta: Option<String>,
        #[arg(long)]
        cuplength: Option<u64>,
    },
    /// cuplength if the norm is strictly below p
    Arnold {
        #[arg(long)]
        p: Option<String>,
        #[arg(long)]
        norm: Option<String>,
        #[arg(long)]
        cuplength: Option<u64>,
    },
    /// max over a table of ⌈p·qcl(g)/(p+g+‖φ‖)⌉; table entries `g:qcl`
    Bcl {
        #[arg(long)]
        p: Option<String>,
        #[arg(long, value_delimiter = ',')]
        table: Vec<String>,
        #[arg(long)]
        hofer: Option<String>,
    },
    /// 2N/(2n − deg a)
    Schtype {
        #[arg(long)]
        chern_n: Option<u64>,
        #[arg(long)]
        dim2n: Option<u64>,
        #[arg(long)]
        deg_a: Option<u64>,
    },
    /// one-point-insertion bounds
    Onept {
        #[arg(long)]
        p: Option<String>,
        #[arg(long)]
        l: u64,
        #[arg(long)]
        area: String,
        #[arg(long)]
        c1a: Option<i64>,
        #[arg(long, value_delimiter = ',')]
        codims: Vec<u64>,
    },
    /// ⌈l/g⌉
    Pfqf {
        #[arg(long)]
        l: u64,
        #[arg(long)]
        g: u64,
    },
    /// blow-up bound with gcd(m, k_1, …)
    Blowup {
        #[arg(long)]
        p: Option<String>,
        #[arg(long)]
        theta: Option<String>,
        #[arg(long)]
        m: u64,
        #[arg(long, value_delimiter = ',')]
        ks: Vec<u64>,
        #[arg(long)]
        cuplength: Option<u64>,
    },
    /// flag-manifold closed forms, cases 1 to 5
    Case {
        #[arg(long)]
        case: u8,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        k: Option<u64>,
        #[arg(long)]
        m: Option<u64>,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Clone)]
struct Failure {
    code: i32,
    kind: &'static str,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure { code: 1, kind: "InvalidInput", message: message.into() }
    }

    fn hypothesis(kind: &'static str, message: impl Into<String>) -> Self {
        Failure { code: 2, kind, message: message.into() }
    }
}

impl From<RootError> for Failure {
    fn from(e: RootError) -> Self {
        match e {
            RootError::NotMonotone => Failure::hypothesis("NotMonotone", e.to_string()),
            _ => Failure { code: 1, kind: "RootSystem", message: e.to_string() },
        }
    }
}

impl From<ToricError> for Failure {
    fn from(e: ToricError) -> Self {
        match e {
            ToricError::NotFano { .. } => Failure::hypothesis("NotFano", e.to_string()),
            ToricError::NonFree(_) => Failure { code: 1, kind: "NonFree", message: e.to_string() },
            ToricError::NotRegularValue(_) => Failure { code: 1, kind: "NotRegularValue", message: e.to_string() },
            ToricError::WeightsDontSpan => Failure { code: 1, kind: "WeightsDontSpan", message: e.to_string() },
            ToricError::UnsupportedFamily(_) => Failure { code: 1, kind: "UnsupportedFamily", message: e.to_string() },
            _ => Failure { code: 1, kind: "Toric", message: e.to_string() },
        }
    }
}

impl From<RingError> for Failure {
    fn from(e: RingError) -> Self {
        Failure { code: 1, kind: "Ring", message: e.to_string() }
    }
}

impl From<BoundError> for Failure {
    fn from(e: BoundError) -> Self {
        match e {
            BoundError::ThetaBelowPeriod { .. } => Failure::hypothesis("ThetaBelowPeriod", e.to_string()),
            BoundError::InvalidInput(_) => Failure { code: 1, kind: "InvalidInput", message: e.to_string() },
        }
    }
}

impl From<ComplexError> for Failure {
    fn from(e: ComplexError) -> Self {
        let kind = match e {
            ComplexError::NullClass => "NullClass",
            ComplexError::NotACycle => "NotACycle",
            _ => "Complex",
        };
        Failure { code: 1, kind, message: e.to_string() }
    }
}

type CliResult = Result<Value, Failure>;

const DEFAULT_SEARCH_LIMIT: usize = 64;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: error_json("Usage", &text) }
            };
        }
    };
    let format = cli.format;
    match dispatch(&cli) {
        Ok((value, code)) => Outcome { code, stdout: render(&value, format), stderr: String::new() },
        Err(f) => Outcome { code: f.code, stdout: String::new(), stderr: error_json(f.kind, &f.message) },
    }
}

fn error_json(kind: &str, message: &str) -> String {
    format!("{}\n", json!({ "error": kind, "message": message.trim_end() }))
}

fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(v).expect("values serialize")),
        Format::Text => {
            let mut out = String::new();
            if let Some(lines) = v.get("lines").and_then(Value::as_array) {
                for l in lines {
                    out.push_str(l.as_str().unwrap_or_default());
                    out.push('\n');
                }
                return out;
            }
            match v {
                Value::Object(m) => {
                    for (k, x) in m {
                        out.push_str(&format!("{k}: {}\n", scalar(x)));
                    }
                }
                other => out.push_str(&format!("{}\n", scalar(other))),
            }
            out
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn read_json(path: &PathBuf) -> Result<Value, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure { code: 1, kind: "Parse", message: format!("{}: {e}", path.display()) })
}

fn rational(s: &str) -> Result<Q, Failure> {
    parse_q(s).map_err(|e| Failure::input(e.to_string()))
}

fn need<T>(x: Option<T>, name: &str) -> Result<T, Failure> {
    x.ok_or_else(|| Failure::input(format!("--{name} is required")))
}

fn dispatch(cli: &Cli) -> Result<(Value, i32), Failure> {
    let limit = cli.search_limit.unwrap_or(DEFAULT_SEARCH_LIMIT);
    let cutoff = cli.cutoff.as_deref().map(rational).transpose()?;
    match &cli.command {
        Command::Orbit { source, n, k, m } => orbit(source, *n, *k, *m, limit).map(|v| (v, 0)),
        Command::Toric { source, n, a, b, allow_nonfree } => {
            toric(source, *n, a.as_deref(), b.as_deref(), *allow_nonfree).map(|v| (v, 0))
        }
        Command::Ring { source, n, k, period, product, qcl, pfqf, nonnilpotent, max_len, dump } => {
            let ring = ring_from(source, *n, *k, period)?;
            ring_report(&ring, product, qcl, *pfqf, nonnilpotent.as_deref(), max_len.unwrap_or(limit.min(2 * ring.dim())), *dump, cutoff.as_ref())
                .map(|v| (v, 0))
        }
        Command::Bound { input, which } => {
            let defaults = match input {
                Some(p) => serde_json::from_value(read_json(p)?).map_err(|e| Failure { code: 1, kind: "Parse", message: e.to_string() })?,
                None => BoundInputs::default(),
            };
            bound(which, &defaults)
        }
        Command::Ls { source, class } => ls(source, class).map(|v| (v, 0)),
        Command::Selfcheck => {
            let (v, ok) = selfcheck();
            Ok((v, if ok { 0 } else { 1 }))
        }
    }
}

fn orbit_from(source: &Source, n: Option<usize>, k: Option<usize>, m: Option<usize>) -> Result<OrbitSpec, Failure> {
    if let Some(path) = &source.input {
        let input: OrbitInput = serde_json::from_value(read_json(path)?)
            .map_err(|e| Failure { code: 1, kind: "Parse", message: e.to_string() })?;
        return Ok(OrbitSpec::from_input(&input)?);
    }
    let preset = need(source.preset.as_deref(), "preset or --input")?;
    Ok(match preset {
        "projective" => OrbitSpec::projective(need(n, "n")?)?,
        "grassmannian" => OrbitSpec::grassmannian(need(k, "k")?, need(n, "n")?)?,
        "flag-1-n1" => OrbitSpec::flag_1_n1(need(n, "n")?)?,
        "equal-blocks" => OrbitSpec::equal_blocks(need(k, "k")?, need(m, "m")?)?,
        "complete-flag" => OrbitSpec::complete_flag(need(n, "n")?)?,
        other => return Err(Failure::input(format!("unknown orbit preset {other}"))),
    })
}

fn orbit(source: &Source, n: Option<usize>, k: Option<usize>, m: Option<usize>, limit: usize) -> CliResult {
    let spec = orbit_from(source, n, k, m)?;
    let bound = spec.orbit_fixed_point_bound(limit)?;
    let rep = spec.report(limit)?;
    let input = spec.to_input();
    let best_theta = rep.decompositions.iter().map(|d| d.theta.clone()).min();
    Ok(json!({
        "type": format!("{}{}", input.lie_type, input.rank),
        "lambda": format_vector(&input.lambda),
        "period": fmt_q(&rep.period),
        "period_single_root": fmt_q(&rep.period_single_root),
        "period_conflict": rep.period_conflict(),
        "cuplength": rep.cuplength,
        "kappa": rep.kappa.as_ref().map(fmt_q),
        "decompositions": rep.decompositions.len(),
        "best_theta": best_theta.as_ref().map(fmt_q),
        "bound": bound,
    }))
}

fn toric_from(source: &Source, n: Option<usize>, a: Option<&str>, b: Option<&str>) -> Result<ToricSpec, Failure> {
    if let Some(path) = &source.input {
        return Ok(ToricSpec::from_json(&read_json(path)?)?);
    }
    let preset = need(source.preset.as_deref(), "preset or --input")?;
    let a_q = a.map(rational).transpose()?;
    let b_q = b.map(rational).transpose()?;
    Ok(match preset {
        "cp2" => ToricSpec::cp(2, a_q.unwrap_or_else(|| q(1)))?,
        "cpn" => ToricSpec::cp(need(n, "n")?, a_q.unwrap_or_else(|| q(1)))?,
        "cp1xcp1" => ToricSpec::cp1xcp1(a_q.unwrap_or_else(|| q(1)), b_q.unwrap_or_else(|| q(1)))?,
        "hirzebruch" => {
            let a = need(a, "a")?.parse::<i64>().map_err(|e| Failure::input(e.to_string()))?;
            ToricSpec::hirzebruch(a)?
        }
        other => return Err(Failure::input(format!("unknown toric preset {other}"))),
    })
}

fn toric(source: &Source, n: Option<usize>, a: Option<&str>, b: Option<&str>, allow_nonfree: bool) -> CliResult {
    let spec = toric_from(source, n, a, b)?;
    let data = spec.analyze(allow_nonfree)?;
    // refuse before reporting when Givental's hypothesis fails
    spec.givental_bound(&data)?;
    let rep = spec.report(allow_nonfree)?;
    let mut v = serde_json::to_value(&rep).expect("report serializes");
    if !data.nonfree_bases.is_empty() {
        v["nonfree_bases"] = json!(data.nonfree_bases);
    }
    Ok(v)
}

fn ring_from(source: &Source, n: Option<usize>, k: Option<usize>, period: &str) -> Result<QuantumRing, Failure> {
    if let Some(path) = &source.input {
        return Ok(QuantumRing::from_json(&read_json(path)?)?);
    }
    let p = rational(period)?;
    let preset = need(source.preset.as_deref(), "preset or --input")?;
    Ok(match preset {
        "projective" => QuantumRing::qh_projective(need(n, "n")?, p)?,
        "grassmannian" => QuantumRing::qh_grassmannian(need(k, "k")?, need(n, "n")?, p)?,
        "cp1xcp1" => {
            let f = QuantumRing::qh_projective(1, p)?;
            QuantumRing::tensor(&f, &f)?
        }
        other => return Err(Failure::input(format!("unknown ring preset {other}"))),
    })
}

fn truncated(ring: &QuantumRing, a: &GradedClass, cutoff: Option<&Q>) -> String {
    match cutoff {
        None => ring.format_class(a),
        Some(c) => {
            let terms: Vec<(&str, NovikovElement)> = (0..ring.dim())
                .map(|i| (ring.label(i), a.coords()[i].clone().with_cutoff(c.clone())))
                .filter(|(_, x)| !x.is_exact_zero())
                .collect();
            match ring.class_from(&terms) {
                Ok(t) => ring.format_class(&t),
                Err(_) => ring.format_class(a),
            }
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn ring_report(
    ring: &QuantumRing,
    products: &[String],
    qcl: &[String],
    pfqf: bool,
    nonnilpotent: Option<&str>,
    max_len: usize,
    dump: bool,
    cutoff: Option<&Q>,
) -> CliResult {
    let mut v = json!({
        "name": ring.name(),
        "dim": ring.dim(),
        "period": fmt_q(ring.period()),
        "basis": ring.basis().iter().map(|b| format!("{}[{}]", b.label, b.degree)).collect::<Vec<_>>().join(" "),
        "unity": ring.check_unity(),
        "commutative": ring.check_commutative(),
        "associative": ring.associativity_violation().is_none(),
    });
    for expr in products {
        let mut acc = ring.fundamental();
        for label in expr.split('*').map(str::trim) {
            acc = ring.product(&acc, &ring.class(label)?)?;
        }
        v[format!("product {expr}")] = json!(truncated(ring, &acc, cutoff));
    }
    for g in qcl {
        let rep = ring.quantum_cuplength(&rational(g)?, max_len);
        v[format!("qcl({})", fmt_q(&rep.g))] = json!(rep.lower_bound);
        v[format!("qcl({}) witness", fmt_q(&rep.g))] = json!(rep.witness.join("*"));
    }
    if pfqf {
        v["pfqf"] = match ring.pfqf_search(max_len) {
            Some(f) => json!({
                "length": f.length,
                "order": fmt_q(&f.order),
                "factors": f.factors.join("*"),
                "z": fmt_q(&f.z),
                "bound": f.bound().to_string(),
            }),
            None => Value::Null,
        };
    }
    if let Some(label) = nonnilpotent {
        let verdict = ring.nonnilpotent_test(&ring.class(label)?, max_len)?;
        v["nonnilpotent"] = json!(match verdict {
            NilpotencyVerdict::ProvenPeriodic { k, m, z, c } =>
                format!("proven: a^{} = ({})*T^({})*a^{k}", k + m, fmt_q(&z), fmt_q(&c)),
            NilpotencyVerdict::ProvenCharPoly { coefficient_index } =>
                format!("proven: characteristic polynomial coefficient {coefficient_index} is nonzero"),
            NilpotencyVerdict::NonzeroUpTo(l) => format!("undecided: nonzero up to power {l}"),
            NilpotencyVerdict::NilpotentAt(l) => format!("nilpotent: a^{l} = 0"),
        });
    }
    if dump {
        v["ring"] = ring.to_json();
    }
    Ok(v)
}

fn pick_q(flag: &Option<String>, fallback: &Option<Q>, name: &str) -> Result<Q, Failure> {
    match flag {
        Some(s) => rational(s),
        None => fallback.clone().ok_or_else(|| Failure::input(format!("--{name} is required"))),
    }
}

fn bound(which: &BoundCommand, d: &BoundInputs) -> Result<(Value, i32), Failure> {
    let ok = |v: Value| Ok((v, 0));
    match which {
        BoundCommand::Main { p, theta, cuplength } => {
            let p = pick_q(p, &d.p, "p")?;
            let theta = pick_q(theta, &d.theta, "theta")?;
            let c = need(cuplength.or(d.cuplength), "cuplength")?;
            ok(json!({ "bound": bounds::thm_main_bound(&p, &theta, c)? }))
        }
        BoundCommand::Arnold { p, norm, cuplength } => {
            let p = pick_q(p, &d.p, "p")?;
            let norm = pick_q(norm, &d.hofer_norm, "norm")?;
            let c = need(cuplength.or(d.cuplength), "cuplength")?;
            match bounds::arnold_predicate(&p, &norm, c)? {
                Some(b) => ok(json!({ "bound": b })),
                None => Err(Failure::hypothesis(
                    "StrictInequality",
                    format!("norm {} is not strictly below p = {}", fmt_q(&norm), fmt_q(&p)),
                )),
            }
        }
        BoundCommand::Bcl { p, table, hofer } => {
            let p = pick_q(p, &d.p, "p")?;
            let t: BTreeMap<Q, u64> = if table.is_empty() {
                d.qcl()?
            } else {
                table
                    .iter()
                    .map(|e| {
                        let (g, l) = e.split_once(':').ok_or_else(|| Failure::input(format!("table entry {e} is not g:qcl")))?;
                        Ok((rational(g)?, l.trim().parse::<u64>().map_err(|x| Failure::input(x.to_string()))?))
                    })
                    .collect::<Result<_, Failure>>()?
            };
            let h = match hofer {
                Some(s) => rational(s)?,
                None => d.hofer_or_zero(),
            };
            ok(json!({ "bound": bounds::thm_bcl_bound(&p, &t, &h)? }))
        }
        BoundCommand::Schtype { chern_n, dim2n, deg_a } => {
            let (raw, c) = bounds::thm_schtype_bound(
                need(chern_n.or(d.chern_n), "chern-n")?,
                need(dim2n.or(d.dim2n), "dim2n")?,
                need(deg_a.or(d.deg_a), "deg-a")?,
            )?;
            ok(json!({ "raw": fmt_q(&raw), "bound": c }))
        }
        BoundCommand::Onept { p, l, area, c1a, codims } => {
            let p = pick_q(p, &d.p, "p")?;
            let cs = (!codims.is_empty()).then_some(codims.as_slice());
            let (b1, b2) = bounds::thm_onept_bounds(&p, *l, &rational(area)?, *c1a, cs)?;
            ok(json!({ "bound": b1, "bound_c1": b2 }))
        }
        BoundCommand::Pfqf { l, g } => ok(json!({ "bound": bounds::pfqf_bound(*l, *g)? })),
        BoundCommand::Blowup { p, theta, m, ks, cuplength } => {
            let p = pick_q(p, &d.p, "p")?;
            let theta = pick_q(theta, &d.theta, "theta")?;
            let c = need(cuplength.or(d.cuplength), "cuplength")?;
            ok(json!({ "bound": bounds::blowup_bound(&p, &theta, *m, ks, c)? }))
        }
        BoundCommand::Case { case, n, k, m } => {
            let v = match case {
                1 => cases::case1(need(*n, "n")?),
                2 => cases::case2(need(*k, "k")?, need(*n, "n")?),
                3 => cases::case3(need(*n, "n")?),
                4 => cases::case4(need(*k, "k")?, need(*m, "m")?),
                5 => cases::case5(need(*n, "n")?),
                other => return Err(Failure::input(format!("case must be 1..5, got {other}"))),
            };
            ok(json!({ "bound": v }))
        }
    }
}

fn ls(source: &Source, labels: &[String]) -> CliResult {
    let c = match (&source.input, source.preset.as_deref()) {
        (Some(path), _) => FilteredComplex::from_json(&read_json(path)?)?,
        (None, Some(name)) => FilteredComplex::preset(name)?,
        (None, None) => return Err(Failure::input("--preset or --input is required")),
    };
    let mut classes = Vec::new();
    if labels.is_empty() {
        for d in c.bottom_degree()..=c.top_degree() {
            for a in c.homology_basis(d) {
                let cycle: Vec<String> = a.cycle().iter().map(fmt_q).collect();
                classes.push(json!({ "degree": d, "cycle": cycle, "c_ls": fmt_q(&c.c_ls(&a)?) }));
            }
        }
    } else {
        for l in labels {
            let a = c.class_of(l)?;
            classes.push(json!({ "class": l, "degree": a.degree(), "c_ls": fmt_q(&c.c_ls(&a)?) }));
        }
    }
    let mut v = json!({ "generators": c.generators().len(), "classes": classes });
    if let Ok(pt) = c.point_class() {
        v["point"] = json!(fmt_q(&c.c_ls(&pt)?));
    }
    if let Ok(fc) = c.fundamental_class() {
        v["fundamental"] = json!(fmt_q(&c.c_ls(&fc)?));
    }
    Ok(v)
}

/// One regression or refusal line.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub got: String,
    pub pass: bool,
}

fn check(name: impl Into<String>, expected: impl ToString, got: Result<impl ToString, String>) -> Check {
    let expected = expected.to_string();
    let got = match got {
        Ok(v) => v.to_string(),
        Err(e) => format!("error: {e}"),
    };
    Check { name: name.into(), pass: got == expected, expected, got }
}

fn refusal<T: std::fmt::Debug, E: std::fmt::Display>(name: &str, r: Result<T, E>, want: &str) -> Check {
    let got = match r {
        Ok(v) => format!("accepted {v:?}"),
        Err(e) => {
            let f = e.to_string();
            if f.contains(want) || want.is_empty() {
                "refused".to_string()
            } else {
                format!("refused with {f}")
            }
        }
    };
    Check { name: name.into(), pass: got == "refused", expected: "refused".into(), got }
}

fn s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Known values and hypothesis refusals.
pub fn selfcheck_table() -> Vec<Check> {
    let mut out = Vec::new();
    let orbit_bound = |spec: Result<OrbitSpec, RootError>| spec.and_then(|o| o.orbit_fixed_point_bound(DEFAULT_SEARCH_LIMIT)).map_err(s);
    for n in 2..=6 {
        out.push(check(format!("case 1 CP^{} orbit bound", n - 1), n, orbit_bound(OrbitSpec::projective(n))));
        out.push(check(format!("case 1 CP^{} closed form", n - 1), n, Ok::<_, String>(cases::case1(n as u64))));
    }
    for (k, n) in [(2usize, 4usize), (2, 5), (3, 7)] {
        let want = k.max(n - k) + 1;
        out.push(check(format!("case 2 Gr({k},{n}) orbit bound"), want, orbit_bound(OrbitSpec::grassmannian(k, n))));
        out.push(check(format!("case 2 Gr({k},{n}) closed form"), want, Ok::<_, String>(cases::case2(k as u64, n as u64))));
    }
    for n in 3..=6u64 {
        out.push(check(format!("case 3 F(1,{},{n}) closed form", n - 1), n - 2, Ok::<_, String>(cases::case3(n))));
    }
    out.push(check("case 4 U(4)/U(2)^2 closed form", 5, Ok::<_, String>(cases::case4(2, 2))));
    out.push(check("case 4 U(4)/U(2)^2 ceiling form", 5, Ok::<_, String>(cases::case4_ceiling(2, 2))));
    for n in 3..=5usize {
        out.push(check(format!("case 5 F_{n} orbit bound"), 2, orbit_bound(OrbitSpec::complete_flag(n))));
        out.push(check(format!("case 5 F_{n} closed form"), 2, Ok::<_, String>(cases::case5(n as u64))));
    }
    for n in 2..=5u64 {
        let p = q(n as i64 + 1);
        out.push(check(
            format!("blow-up of CP^{n}, k=1, m=2"),
            (n + 1).div_ceil(2),
            bounds::blowup_bound(&p, &p, 2, &[1], n + 1).map_err(s),
        ));
    }
    for n in 1..=4usize {
        let r = ToricSpec::cp(n, q(1)).and_then(|t| {
            let d = t.analyze(false)?;
            t.givental_bound(&d)
        });
        out.push(check(format!("toric CP^{n} Givental bound"), n + 1, r.map_err(s)));
    }
    let r = ToricSpec::cp1xcp1(q(2), q(2)).and_then(|t| {
        let d = t.analyze(false)?;
        Ok((t.givental_bound(&d)?, t.minimal_chern_number(&d)))
    });
    out.push(check("toric CP1xCP1 monotone bound", 2, r.clone().map(|x| x.0).map_err(s)));
    out.push(check("toric CP1xCP1 bound = N", 2, r.map(|x| x.1).map_err(s)));
    for (k, n) in [(2u64, 4u64), (2, 5), (3, 6)] {
        let dim = 2 * k * (n - k);
        out.push(check(
            format!("Gr({k},{n}) nonnilpotent c1 estimate"),
            n,
            bounds::thm_schtype_bound(n, dim, dim - 2).map(|x| x.1).map_err(s),
        ));
    }
    for n in 3..=5u64 {
        let dim = n * (n - 1);
        out.push(check(format!("F_{n} nonnilpotent estimate"), 2, bounds::thm_schtype_bound(2, dim, dim - 2).map(|x| x.1).map_err(s)));
    }
    for name in ["circle", "sphere", "torus"] {
        let c = FilteredComplex::preset(name).expect("preset");
        let levels: Vec<Q> = c.levels();
        let (lo, hi) = (levels.iter().min().unwrap().clone(), levels.iter().max().unwrap().clone());
        out.push(check(format!("{name}: c_LS([pt]) = min f"), fmt_q(&lo), c.point_class().and_then(|a| c.c_ls(&a)).map(|x| fmt_q(&x)).map_err(s)));
        out.push(check(format!("{name}: c_LS([X]) = max f"), fmt_q(&hi), c.fundamental_class().and_then(|a| c.c_ls(&a)).map(|x| fmt_q(&x)).map_err(s)));
    }
    for n in 1..=3usize {
        let p = q(n as i64 + 1);
        let ring = QuantumRing::qh_projective(n, p.clone()).expect("preset");
        let qcl = ring.quantum_cuplength(&p, 2 * n + 2).lower_bound as u64;
        let table = BTreeMap::from([(p.clone(), qcl)]);
        out.push(check(format!("CP^{n} quantum cuplength bound"), n + 1, bounds::thm_bcl_bound(&p, &table, &Q::zero()).map_err(s)));
        let f = ring.pfqf_search(n + 1);
        out.push(check(format!("CP^{n} factorization bound"), n + 1, f.map(|f| f.bound()).ok_or_else(|| "none".to_string())));
    }
    // refusal paths
    out.push(refusal(
        "Hirzebruch F_2 is not Fano",
        ToricSpec::hirzebruch(2).and_then(|t| {
            let d = t.analyze(false)?;
            t.givental_bound(&d)
        }),
        "not Fano",
    ));
    out.push(refusal(
        "non-monotone orbit (3,0,-1)",
        OrbitSpec::unitary(vec![q(3), q(0), q(-1)]).and_then(|o| o.orbit_fixed_point_bound(DEFAULT_SEARCH_LIMIT)),
        "not monotone",
    ));
    out.push(refusal("theta below period", bounds::thm_main_bound(&q(4), &q(3), 5), "below the period"));
    out.push(refusal(
        "norm equal to p",
        bounds::arnold_predicate(&q(2), &q(2), 3).and_then(|r| r.ok_or(BoundError::InvalidInput("strict".into()))),
        "strict",
    ));
    out.push(refusal(
        "weighted projective line without allow_nonfree",
        ToricSpec::new(vec![vec![1], vec![2]], vec![q(1)]).and_then(|t| t.analyze(false)),
        "not free",
    ));
    out.push(refusal("tau on a wall", ToricSpec::cp1xcp1(q(1), q(0)).and_then(|t| t.analyze(false)), "regular"));
    out.push(refusal(
        "weights not spanning",
        ToricSpec::new(vec![vec![1, 0], vec![2, 0]], vec![q(1), q(1)]).and_then(|t| t.analyze(false)),
        "span",
    ));
    out.push(refusal(
        "Hirzebruch ring outside the product family",
        ToricSpec::hirzebruch(1).and_then(|t| {
            let d = t.analyze(false)?;
            t.toric_quantum_ring(&d)
        }),
        "unsupported",
    ));
    out.push(refusal("boundary class in RP2", FilteredComplex::preset("rp2").and_then(|c| c.class_of("e1")), "zero in homology"));
    out
}

fn selfcheck() -> (Value, bool) {
    let table = selfcheck_table();
    let all = table.iter().all(|c| c.pass);
    let lines: Vec<String> = table
        .iter()
        .map(|c| format!("{} {} (expected {}, got {})", if c.pass { "PASS" } else { "FAIL" }, c.name, c.expected, c.got))
        .chain(std::iter::once(format!("{} checks, {}", table.len(), if all { "all passed" } else { "FAILURES" })))
        .collect();
    let checks: Vec<Value> = table
        .iter()
        .map(|c| json!({ "name": c.name, "expected": c.expected, "got": c.got, "pass": c.pass }))
        .collect();
    (json!({ "lines": lines, "checks": checks, "all_pass": all }), all)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> Outcome {
        run(std::iter::once("hamfix").chain(args.iter().copied()))
    }

    #[test]
    fn orbit_grassmannian() {
        let o = go(&["--format", "json", "orbit", "--preset", "grassmannian", "--k", "2", "--n", "4"]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        let v: Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["bound"], 3);
    }

    #[test]
    fn toric_cp2() {
        let o = go(&["--format", "json", "toric", "--preset", "cp2"]);
        assert_eq!(o.code, 0, "{}", o.stderr);
        let v: Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["fano"], true);
        assert_eq!(v["bound"], 3);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(go(&["toric", "--preset", "hirzebruch", "--a", "2"]).code, 2);
        assert_eq!(go(&["bound", "main", "--p", "4", "--theta", "3", "--cuplength", "5"]).code, 2);
        assert_eq!(go(&["bound", "arnold", "--p", "2", "--norm", "2", "--cuplength", "3"]).code, 2);
        assert_eq!(go(&["orbit", "--preset", "nope", "--n", "3"]).code, 1);
        let o = go(&["toric"]);
        assert_eq!(o.code, 1);
        assert!(o.stderr.contains("\"error\""));
    }

    #[test]
    fn selfcheck_passes() {
        let o = go(&["selfcheck"]);
        assert_eq!(o.code, 0, "{}", o.stdout);
    }
}
