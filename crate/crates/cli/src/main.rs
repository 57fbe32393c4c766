use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use knotslice::exact::{SignatureConfig, DEFAULT_PRECISION_CAP};
use knotslice::fourmanifold::{CasePair, HomologyClass};
use knotslice::knotdb::{self, KnotDbError, KnotRecord, SearchPredicate};
use knotslice::knots::{parse_expression, KnotError};
use knotslice::obstructions::exotic_precondition_check;
use knotslice::solver::{
    build_table, check_certificate, check_table_symmetries, eliminate_case_with, verify_proof_with, Assumptions,
    ProofCertificate, ProofVerdict, SolverError, TableCellRecord,
};
use knotslice::{ExactError, RootOfUnity};
use serde_json::json;

const EXIT_GAP: u8 = 3;
const EXIT_INPUT: u8 = 2;
const EXIT_PRECISION: u8 = 4;
const EXIT_OTHER: u8 = 1;

#[derive(Parser)]
#[command(name = "knotslice", version, about = "Sliceness obstructions for two-component links in S2 x S2")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full case analysis and write a proof certificate.
    VerifyProof {
        #[command(flatten)]
        assumptions: AssumptionArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Levine-Tristram signatures of a knot expression at sampled roots of unity.
    Signature {
        /// e.g. `cable(mirror(atom(7_2)),2,-9)`
        expression: String,
        /// Sample every ζ_m^r with 1 <= r < m for each listed m.
        #[arg(long = "m", value_delimiter = ',')]
        orders: Vec<u32>,
        /// Explicit points as `m:r`.
        #[arg(long = "root", value_delimiter = ',')]
        roots: Vec<RootArg>,
        #[arg(long)]
        knot_table: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Search the knot table for knots with prescribed invariants.
    SearchKnots {
        #[arg(long, default_value_t = 1)]
        g4: u32,
        #[arg(long, default_value_t = 1)]
        arf: u8,
        /// Required `m:r:value`; defaults to σ = 2 at ζ₂, ζ₄ and ζ₈.
        #[arg(long, value_delimiter = ',')]
        sigma: Vec<SigmaArg>,
        #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
        allow_mirror: bool,
        #[arg(long)]
        knot_table: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Print the table of intersection numbers and its symmetry reductions.
    Table {
        #[command(flatten)]
        assumptions: AssumptionArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the obstructions on a single pair of classes.
    Obstruct {
        #[arg(long, allow_hyphen_values = true)]
        alpha: ClassArg,
        #[arg(long, allow_hyphen_values = true)]
        beta: ClassArg,
        #[command(flatten)]
        assumptions: AssumptionArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Independently re-check a certificate written by `verify-proof`.
    CheckCertificate {
        certificate: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Matrix conditions on the linking form [[f_A, lk], [lk, f_B]].
    ExoticCheck {
        #[arg(long = "f-a", allow_hyphen_values = true)]
        f_a: i64,
        #[arg(long = "f-b", allow_hyphen_values = true)]
        f_b: i64,
        #[arg(long, allow_hyphen_values = true)]
        lk: i64,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args, Clone)]
struct OutputArgs {
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long, default_value_t = DEFAULT_PRECISION_CAP)]
    precision_bits: u32,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args, Clone, Default)]
struct AssumptionArgs {
    #[arg(long, allow_hyphen_values = true)]
    lk: Option<i64>,
    /// Sets both g4(A) and g4(B).
    #[arg(long)]
    g4: Option<u64>,
    #[arg(long)]
    g4_a: Option<u64>,
    #[arg(long)]
    g4_b: Option<u64>,
    /// Sets both Arf(A) and Arf(B).
    #[arg(long)]
    arf: Option<u8>,
    #[arg(long)]
    arf_a: Option<u8>,
    #[arg(long)]
    arf_b: Option<u8>,
    /// `m:r:value` for both components.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    sigma: Vec<SigmaArg>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    sigma_a: Vec<SigmaArg>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    sigma_b: Vec<SigmaArg>,
}

impl AssumptionArgs {
    fn build(&self) -> Assumptions {
        let mut a = Assumptions::standard();
        if let Some(lk) = self.lk {
            a.lk = lk;
        }
        a.g4_a = self.g4_a.or(self.g4).unwrap_or(a.g4_a);
        a.g4_b = self.g4_b.or(self.g4).unwrap_or(a.g4_b);
        a.arf_a = self.arf_a.or(self.arf).unwrap_or(a.arf_a);
        a.arf_b = self.arf_b.or(self.arf).unwrap_or(a.arf_b);
        for s in &self.sigma {
            a.set_sigma(s.root, s.value);
        }
        for s in &self.sigma_a {
            a.sigma_a.insert(s.root, s.value);
        }
        for s in &self.sigma_b {
            a.sigma_b.insert(s.root, s.value);
        }
        a.symmetric_link = a.components_equal();
        a
    }
}

#[derive(Clone, Copy)]
struct RootArg(RootOfUnity);

impl FromStr for RootArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let (m, r) = s.split_once(':').ok_or_else(|| format!("expected m:r, got {s:?}"))?;
        let m: u32 = m.trim().parse().map_err(|e| format!("{m:?}: {e}"))?;
        let r: i64 = r.trim().parse().map_err(|e| format!("{r:?}: {e}"))?;
        RootOfUnity::new(m, r).map(RootArg).ok_or_else(|| "m must be positive".into())
    }
}

#[derive(Clone, Copy)]
struct SigmaArg {
    root: RootOfUnity,
    value: i64,
}

impl FromStr for SigmaArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let (root, value) = s.rsplit_once(':').ok_or_else(|| format!("expected m:r:value, got {s:?}"))?;
        let RootArg(root) = root.parse()?;
        let value = value.trim().parse().map_err(|e| format!("{value:?}: {e}"))?;
        Ok(SigmaArg { root: root.normalized(), value })
    }
}

#[derive(Clone, Copy)]
struct ClassArg(HomologyClass);

impl FromStr for ClassArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let (a, b) = inner.split_once(',').ok_or_else(|| format!("expected a1,a2, got {s:?}"))?;
        let parse = |t: &str| t.trim().parse::<i64>().map_err(|e| format!("{t:?}: {e}"));
        Ok(ClassArg(HomologyClass::new(parse(a)?, parse(b)?)))
    }
}

/// An error together with its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self { code: EXIT_INPUT, message: message.into() }
    }
}

fn exact_code(e: &ExactError) -> u8 {
    match e {
        ExactError::PrecisionExhausted { .. } => EXIT_PRECISION,
        _ => EXIT_OTHER,
    }
}

fn knot_code(e: &KnotError) -> u8 {
    match e {
        KnotError::Exact(e) => exact_code(e),
        KnotError::InvalidSeifertMatrix(_)
        | KnotError::UnsupportedTorusParameters { .. }
        | KnotError::InvalidCableParameters { .. }
        | KnotError::UnknownAtom(_)
        | KnotError::Parse { .. } => EXIT_INPUT,
        _ => EXIT_OTHER,
    }
}

impl From<SolverError> for Failure {
    fn from(e: SolverError) -> Self {
        let code = match &e {
            SolverError::InvalidAssumptions(_)
            | SolverError::UnsupportedGenusBound { .. }
            | SolverError::AsymmetricLink => EXIT_INPUT,
            SolverError::Knot(k) => knot_code(k),
            _ => EXIT_OTHER,
        };
        Self { code, message: e.to_string() }
    }
}

impl From<KnotError> for Failure {
    fn from(e: KnotError) -> Self {
        Self { code: knot_code(&e), message: e.to_string() }
    }
}

impl From<KnotDbError> for Failure {
    fn from(e: KnotDbError) -> Self {
        let code = match &e {
            KnotDbError::Exact(x) => exact_code(x),
            _ => EXIT_INPUT,
        };
        Self { code, message: e.to_string() }
    }
}

impl From<ExactError> for Failure {
    fn from(e: ExactError) -> Self {
        Self { code: exact_code(&e), message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Self { code: EXIT_OTHER, message: e.to_string() }
    }
}

fn config(output: &OutputArgs) -> SignatureConfig {
    SignatureConfig { precision_cap: output.precision_bits, ..SignatureConfig::default() }
}

fn emit(output: &OutputArgs, text: &str) -> Result<(), Failure> {
    debug_assert!(text.is_empty() || text.ends_with('\n'));
    match &output.out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::input(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json_text(value: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable output");
    s.push('\n');
    s
}

fn load_records(path: Option<&Path>) -> Result<Vec<KnotRecord>, Failure> {
    match path {
        None => Ok(knotdb::fixture_table()),
        Some(p) => {
            let file = fs::File::open(p).map_err(|e| Failure::input(format!("{}: {e}", p.display())))?;
            Ok(knotdb::load_table(file)?)
        }
    }
}

fn verdict_summary(cert: &ProofCertificate) -> String {
    let eliminated = cert.cases.iter().filter(|c| c.outcome.eliminated).count();
    match &cert.verdict {
        ProofVerdict::Proven => {
            format!("verdict: proven ({} cases, all eliminated)\n", cert.cases.len())
        }
        ProofVerdict::Gap { surviving, unresolved } => {
            let mut s = format!("verdict: gap ({eliminated} of {} cases eliminated)\n", cert.cases.len());
            for case in surviving {
                let _ = writeln!(s, "surviving: {case}");
            }
            for u in unresolved {
                let _ = writeln!(s, "unresolved: {u}");
            }
            s
        }
    }
}

fn verify_proof(args: &AssumptionArgs, output: &OutputArgs) -> Result<u8, Failure> {
    let cert = verify_proof_with(&args.build(), config(output))?;
    let code = if cert.verdict.is_proven() { 0 } else { EXIT_GAP };
    match (&output.out, output.format) {
        (Some(path), _) => {
            fs::write(path, cert.to_json())?;
            print!("{}", verdict_summary(&cert));
        }
        (None, Some(Format::Text)) => print!("{}", verdict_summary(&cert)),
        (None, _) => print!("{}", cert.to_json()),
    }
    Ok(code)
}

fn signature(
    expression: &str,
    orders: &[u32],
    roots: &[RootArg],
    table: Option<&Path>,
    output: &OutputArgs,
) -> Result<u8, Failure> {
    let records = load_records(table)?;
    let expr = parse_expression(expression)?
        .resolve(&|name| records.iter().find(|r| r.name == name).map(|r| r.seifert.clone()))?;
    let mut points: Vec<RootOfUnity> = roots.iter().map(|r| r.0).collect();
    for &m in orders {
        if m == 0 {
            return Err(Failure::input("order must be positive"));
        }
        points.extend((1..m as i64).filter_map(|r| RootOfUnity::new(m, r)));
    }
    if points.is_empty() {
        points = [(2, 1), (4, 1), (8, 1)].iter().filter_map(|&(m, r)| RootOfUnity::new(m, r)).collect();
    }
    let cfg = config(output);
    let mut rows = Vec::new();
    let mut code = 0;
    for w in points {
        let (value, note) = match knotslice::knots::lt_signature_with(&expr, w, &Default::default(), cfg) {
            Ok(v) => (Some(v), ""),
            Err(KnotError::SignatureAtAlexanderRoot { .. }) => (None, "alexander-root"),
            Err(KnotError::Exact(ExactError::PrecisionExhausted { .. })) => {
                code = EXIT_PRECISION;
                (None, "precision-exhausted")
            }
            Err(e) => return Err(e.into()),
        };
        rows.push((w, value, note));
    }
    let text = match output.format.unwrap_or(Format::Csv) {
        Format::Json => json_text(
            &rows
                .iter()
                .map(|(w, v, note)| json!({"m": w.order(), "r": w.numerator(), "sigma": v, "note": note}))
                .collect::<Vec<_>>(),
        ),
        Format::Csv | Format::Text => {
            let mut s = String::from("m,r,sigma,note\n");
            for (w, v, note) in &rows {
                let v = v.map(|v| v.to_string()).unwrap_or_default();
                let _ = writeln!(s, "{},{},{v},{note}", w.order(), w.numerator());
            }
            s
        }
    };
    emit(output, &text)?;
    Ok(code)
}

fn search_knots(
    predicate: &SearchPredicate,
    table: Option<&Path>,
    output: &OutputArgs,
) -> Result<u8, Failure> {
    let records = load_records(table)?;
    let cfg = config(output);
    let hits = knotdb::search(&records, predicate, cfg)?;
    let text = match output.format.unwrap_or(Format::Text) {
        Format::Json => {
            let mut items = Vec::new();
            for h in &hits {
                let mut sigma = Vec::new();
                for &(w, _) in &predicate.sigma {
                    sigma.push(json!({"m": w.order(), "r": w.numerator(), "value": h.signature(w, cfg)?}));
                }
                items.push(json!({
                    "name": h.display_name(),
                    "knot": h.record.name,
                    "mirrored": h.mirrored,
                    "g4": h.record.g4,
                    "arf": h.record.arf(),
                    "determinant": h.record.determinant().to_string(),
                    "sigma": sigma,
                }));
            }
            json_text(&items)
        }
        Format::Text | Format::Csv => hits.iter().map(|h| format!("{}\n", h.display_name())).collect(),
    };
    emit(output, &text)?;
    Ok(0)
}

fn table(args: &AssumptionArgs, output: &OutputArgs) -> Result<u8, Failure> {
    let table = build_table(&args.build())?;
    let checks = check_table_symmetries(&table)?;
    let records: Vec<TableCellRecord> = table.iter().map(TableCellRecord::from).collect();
    let text = match output.format.unwrap_or(Format::Text) {
        Format::Json => json_text(&json!({"cells": records, "symmetry_checks": checks})),
        Format::Csv => {
            let mut s = String::from("row,col,alpha,beta,value,highlighted\n");
            for c in &records {
                let _ = writeln!(s, "{},{},{},{},\"{}\",{}", c.row, c.col, c.alpha, c.beta, c.value, c.highlighted);
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for c in &records {
                let mark = if c.highlighted { " *" } else { "" };
                let _ = writeln!(s, "({},{}) {} . {} = {}{mark}", c.row, c.col, c.alpha, c.beta, c.value);
            }
            for k in &checks {
                let s2 = if k.with_s2 { " (with s2)" } else { "" };
                let _ = writeln!(
                    s,
                    "({},{}) ~ ({},{}) via {}{s2}",
                    k.cell.0, k.cell.1, k.equivalent.0, k.equivalent.1, k.element
                );
            }
            s
        }
    };
    emit(output, &text)?;
    Ok(0)
}

fn obstruct(alpha: HomologyClass, beta: HomologyClass, args: &AssumptionArgs, output: &OutputArgs) -> Result<u8, Failure> {
    let assumptions = args.build();
    assumptions.validate()?;
    let target = knotslice::obstructions::required_intersection(assumptions.lk);
    if alpha.dot(beta) != target {
        return Err(Failure::input(format!(
            "alpha.beta = {} but the linking number requires {target}",
            alpha.dot(beta)
        )));
    }
    let outcome = eliminate_case_with(&CasePair::concrete(alpha, beta), &assumptions, config(output))?;
    let text = match output.format.unwrap_or(Format::Text) {
        Format::Json => json_text(&outcome),
        _ => {
            let mut s = String::new();
            for a in &outcome.attempts {
                let _ = write!(s, "{:?} on {} in {}: {:?}", a.rule, a.knot, a.class_text, a.outcome.verdict);
                if let Some(ev) = &a.evaluation {
                    let _ = write!(s, "; {ev}");
                }
                let _ = writeln!(s, "; {}", a.outcome.witness);
            }
            let _ = writeln!(s, "{}", if outcome.eliminated { "eliminated" } else { "survives" });
            s
        }
    };
    emit(output, &text)?;
    Ok(if outcome.eliminated { 0 } else { EXIT_GAP })
}

fn check(path: &Path, output: &OutputArgs) -> Result<u8, Failure> {
    let raw = fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    let cert: ProofCertificate =
        serde_json::from_str(&raw).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    let report = check_certificate(&cert);
    let text = match output.format.unwrap_or(Format::Text) {
        Format::Json => json_text(&json!({"valid": report.is_valid(), "report": report})),
        _ => {
            let mut s = format!(
                "checked {} attempts, {} prunes, {} absorptions\n",
                report.attempts, report.prunes, report.absorptions
            );
            for f in &report.failures {
                let _ = writeln!(s, "failure: {f}");
            }
            let status = match (report.is_valid(), cert.verdict.is_proven()) {
                (false, _) => "invalid",
                (true, true) => "valid (proven)",
                (true, false) => "valid (gap)",
            };
            let _ = writeln!(s, "certificate: {status}");
            s
        }
    };
    emit(output, &text)?;
    Ok(match (report.is_valid(), cert.verdict.is_proven()) {
        (false, _) => EXIT_OTHER,
        (true, true) => 0,
        (true, false) => EXIT_GAP,
    })
}

fn exotic(f_a: i64, f_b: i64, lk: i64, output: &OutputArgs) -> Result<u8, Failure> {
    let r = exotic_precondition_check(f_a, f_b, lk);
    let text = match output.format.unwrap_or(Format::Text) {
        Format::Json => json_text(&r),
        _ => format!(
            "framings even: {}\ndeterminant: {}\nrank two: {}\nindefinite: {}\n|det| even: {}\nlk even: {}\n{}\n",
            r.framings_even,
            r.determinant,
            r.rank_two,
            r.indefinite,
            r.determinant_even,
            r.linking_even,
            if r.pass { "pass" } else { "fail" }
        ),
    };
    emit(output, &text)?;
    Ok(if r.pass { 0 } else { EXIT_GAP })
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::VerifyProof { assumptions, output } => verify_proof(&assumptions, &output),
        Command::Signature { expression, orders, roots, knot_table, output } => {
            signature(&expression, &orders, &roots, knot_table.as_deref(), &output)
        }
        Command::SearchKnots { g4, arf, sigma, allow_mirror, knot_table, output } => {
            let mut predicate = SearchPredicate { g4: Some(g4), arf: Some(arf), allow_mirror, ..SearchPredicate::standard() };
            if !sigma.is_empty() {
                predicate.sigma = sigma.iter().map(|s| (s.root, s.value)).collect();
            }
            search_knots(&predicate, knot_table.as_deref(), &output)
        }
        Command::Table { assumptions, output } => table(&assumptions, &output),
        Command::Obstruct { alpha, beta, assumptions, output } => obstruct(alpha.0, beta.0, &assumptions, &output),
        Command::CheckCertificate { certificate, output } => check(&certificate, &output),
        Command::ExoticCheck { f_a, f_b, lk, output } => exotic(f_a, f_b, lk, &output),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
