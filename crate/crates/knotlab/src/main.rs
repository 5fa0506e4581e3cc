//! Command-line front end: catalog management, invariant computation,
//! twist-spin verification reports, and branched-cover sweeps.
//!
//! Exit codes are a stable contract: 0 success, 1 verification failure,
//! 2 catalog parse error, 3 catalog validation error, 4 unknown knot,
//! 5 usage error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use knotlab::blanchfield::BlanchfieldForm;
use knotlab::branched::{branched_summary, BranchedCoverSummary};
use knotlab::seifert::{Catalog, CatalogError, SeifertKnot};
use knotlab::twistspin::TwistSpinScenario;

const EXIT_VERIFY: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_VALIDATION: u8 = 3;
const EXIT_LOOKUP: u8 = 4;
const EXIT_USAGE: u8 = 5;

#[derive(Parser)]
#[command(
    name = "knotlab",
    about = "Exact invariants of Seifert-presented knots: Alexander modules, linking pairings, twist-spin metabolizers, branched covers",
    version
)]
struct Cli {
    /// Catalog file (JSON array of {name, epsilon, matrix}); overrides the
    /// KNOTLAB_CATALOG environment variable and the built-in catalog.
    #[arg(long, global = true, value_name = "PATH")]
    catalog: Option<PathBuf>,

    /// Emit machine-readable JSON instead of human-readable text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the catalog: name, size, sign, Alexander polynomial.
    Catalog,
    /// Alexander polynomial, module presentation, linking pairing, and
    /// pairing sanity verdicts for one knot.
    Invariants { name: String },
    /// Build and verify the twist-spin metabolizer families on the block
    /// form of the knot.
    Verify {
        name: String,
        /// Twist parameter.
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        /// Sign choice for odd k: +1 or -1. Required iff k is odd.
        #[arg(long, allow_hyphen_values = true)]
        eps: Option<String>,
    },
    /// Branched cyclic cover homology over an inclusive range of k.
    Branched {
        name: String,
        /// Range lo..hi (inclusive); k = 0 is skipped with a note.
        #[arg(long, allow_hyphen_values = true, value_name = "LO..HI")]
        k: String,
    },
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let kind = e.kind();
            let _ = e.print();
            return match kind {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let catalog = load_catalog(cli)?;
    match &cli.command {
        Command::Catalog => cmd_catalog(&catalog, cli.json),
        Command::Invariants { name } => cmd_invariants(&catalog, name, cli.json),
        Command::Verify { name, k, eps } => cmd_verify(&catalog, name, *k, eps.as_deref(), cli.json),
        Command::Branched { name, k } => cmd_branched(&catalog, name, k, cli.json),
    }
}

fn load_catalog(cli: &Cli) -> Result<Catalog, Failure> {
    let path = cli
        .catalog
        .clone()
        .or_else(|| std::env::var_os("KNOTLAB_CATALOG").map(PathBuf::from));
    let Some(path) = path else {
        return Ok(Catalog::builtin());
    };
    let text = std::fs::read_to_string(&path)
        .map_err(|e| fail(EXIT_PARSE, format!("cannot read {}: {e}", path.display())))?;
    Catalog::from_json_str(&text).map_err(|e| match e {
        CatalogError::Parse(_) | CatalogError::Entry { .. } => fail(EXIT_PARSE, e.to_string()),
        CatalogError::Invalid { .. } => fail(EXIT_VALIDATION, e.to_string()),
    })
}

fn lookup<'a>(catalog: &'a Catalog, name: &str) -> Result<&'a SeifertKnot, Failure> {
    catalog
        .get(name)
        .map(|e| &e.seifert)
        .ok_or_else(|| fail(EXIT_LOOKUP, format!("unknown knot {name:?}")))
}

fn cmd_catalog(catalog: &Catalog, json: bool) -> Result<(), Failure> {
    let mut rows = Vec::new();
    for entry in catalog.entries() {
        let delta = entry
            .seifert
            .alexander_polynomial()
            .map_err(|e| fail(EXIT_VALIDATION, format!("entry {:?}: {e}", entry.name)))?;
        rows.push((entry.name.clone(), entry.seifert.size(), entry.seifert.epsilon(), delta));
    }
    if json {
        let entries: Vec<_> = rows
            .iter()
            .map(|(name, size, eps, delta)| {
                json!({"name": name, "size": size, "epsilon": eps, "alexander": delta})
            })
            .collect();
        println!("{}", serde_json::to_string_pretty(&json!({ "entries": entries })).unwrap());
    } else {
        println!("{:<14} {:>4} {:>4}  ALEXANDER", "NAME", "SIZE", "EPS");
        for (name, size, eps, delta) in rows {
            println!("{name:<14} {size:>4} {eps:>+4}  {delta}");
        }
    }
    Ok(())
}

fn cmd_invariants(catalog: &Catalog, name: &str, json: bool) -> Result<(), Failure> {
    let knot = lookup(catalog, name)?;
    let form = BlanchfieldForm::build(knot)
        .map_err(|e| fail(EXIT_VALIDATION, format!("knot {name:?}: {e}")))?;
    let hermitian = form.hermitian_check();
    let nonsingular = form
        .is_nonsingular()
        .map_err(|e| fail(EXIT_VALIDATION, e.to_string()))?;
    if json {
        let pairing: Vec<Vec<_>> = form
            .pairing()
            .iter()
            .map(|row| row.iter().map(|c| json!(c)).collect())
            .collect();
        let report = json!({
            "knot": name,
            "epsilon": form.sign(),
            "alexander": form.delta(),
            "presentation": form.presentation(),
            "pairing": pairing,
            "hermitian": hermitian,
            "nonsingular": nonsingular,
        });
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else {
        println!("knot: {name} (eps {:+})", form.sign());
        println!("alexander: {}", form.delta());
        println!("presentation ({0}x{0}):", form.rank());
        print!("{}", matrix_text(form.presentation()));
        println!("pairing (values in Q(t)/Z[t^+-1]):");
        for row in form.pairing() {
            let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
            println!("[{}]", cells.join(", "));
        }
        println!("hermitian: {}", pass(hermitian));
        println!("nonsingular: {}", pass(nonsingular));
    }
    if hermitian && nonsingular {
        Ok(())
    } else {
        Err(fail(EXIT_VERIFY, format!("pairing sanity failed for {name:?}")))
    }
}

fn matrix_text(m: &knotlab::polymatrix::PolyMatrix) -> String {
    if m.rows() == 0 {
        return "(empty)\n".into();
    }
    format!("{m}")
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn parse_eps(k: i64, eps: Option<&str>) -> Result<Option<i64>, Failure> {
    let odd = k.rem_euclid(2) == 1;
    match (odd, eps) {
        (true, None) => Err(fail(
            EXIT_USAGE,
            format!("k = {k} is odd: --eps <+1|-1> is required"),
        )),
        (false, Some(_)) => Err(fail(
            EXIT_USAGE,
            format!("k = {k} is even: --eps must not be given"),
        )),
        (false, None) => Ok(None),
        (true, Some(s)) => match s.trim() {
            "+1" | "1" => Ok(Some(1)),
            "-1" => Ok(Some(-1)),
            other => Err(fail(EXIT_USAGE, format!("bad --eps {other:?}: expected +1 or -1"))),
        },
    }
}

fn cmd_verify(
    catalog: &Catalog,
    name: &str,
    k: i64,
    eps: Option<&str>,
    json: bool,
) -> Result<(), Failure> {
    let knot = lookup(catalog, name)?;
    let eps = parse_eps(k, eps)?;
    let scenario = TwistSpinScenario::new(knot.clone(), k, eps)
        .map_err(|e| fail(EXIT_USAGE, e.to_string()))?;
    let report = scenario
        .twist_spin_report()
        .map_err(|e| fail(EXIT_VALIDATION, format!("knot {name:?}: {e}")))?;
    if json {
        println!("{}", serde_json::to_string_pretty(&report).unwrap());
    } else {
        print!("{}", report_text(&report));
    }
    if report.all_pass() {
        Ok(())
    } else {
        Err(fail(
            EXIT_VERIFY,
            format!("verification failed for {name:?}, k = {k}; see witnesses above"),
        ))
    }
}

fn report_text(report: &knotlab::twistspin::TwistSpinReport) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    let eps_note = report.eps.map(|e| format!(", eps = {e:+}")).unwrap_or_default();
    let _ = writeln!(
        out,
        "twist-spin verification: {}, k = {}{}",
        report.knot, report.k, eps_note
    );
    for c in &report.candidates {
        let _ = writeln!(
            out,
            "  [{}] {} ({:?})",
            c.verdict.label(),
            c.provenance,
            c.tag
        );
        if let Some(w) = c.verdict.witness_json() {
            let _ = writeln!(out, "    witness: {w}");
        }
    }
    if let Some(c) = report.consistency {
        let _ = writeln!(out, "  consistency (even k): {}", pass(c));
    }
    for oc in &report.order_checks {
        let _ = writeln!(
            out,
            "  order oracle [{}] {}: o(P) = {}",
            pass(oc.holds),
            oc.candidate,
            oc.order
        );
    }
    let _ = writeln!(
        out,
        "result: {}",
        if report.all_pass() { "PASS" } else { "FAIL" }
    );
    out
}

fn parse_range(range: &str) -> Result<(i64, i64), Failure> {
    let usage = || {
        fail(
            EXIT_USAGE,
            format!("bad range {range:?}: expected LO..HI with LO <= HI"),
        )
    };
    let (lo, hi) = range.split_once("..").ok_or_else(usage)?;
    let lo: i64 = lo.trim().parse().map_err(|_| usage())?;
    let hi: i64 = hi.trim().parse().map_err(|_| usage())?;
    if lo > hi {
        return Err(usage());
    }
    if hi - lo > 64 {
        return Err(fail(
            EXIT_USAGE,
            format!("range {range:?} spans more than 64 values"),
        ));
    }
    Ok((lo, hi))
}

fn cmd_branched(catalog: &Catalog, name: &str, range: &str, json: bool) -> Result<(), Failure> {
    let knot = lookup(catalog, name)?;
    let (lo, hi) = parse_range(range)?;
    let mut rows: Vec<BranchedCoverSummary> = Vec::new();
    let mut skipped_zero = false;
    for k in lo..=hi {
        if k == 0 {
            skipped_zero = true;
            continue;
        }
        // branched_summary cross-checks the determinant and resultant
        // oracles internally and fails on disagreement.
        let summary = branched_summary(knot, k)
            .map_err(|e| fail(EXIT_VERIFY, format!("knot {name:?}, k = {k}: {e}")))?;
        rows.push(summary);
    }
    if json {
        let rows: Vec<_> = rows
            .iter()
            .map(|s| {
                let mut v = serde_json::to_value(s).unwrap();
                v.as_object_mut()
                    .unwrap()
                    .insert("knot".into(), json!(name));
                v
            })
            .collect();
        println!("{}", serde_json::to_string_pretty(&rows).unwrap());
    } else {
        println!("branched cyclic covers of {name}");
        println!("{:>4}  {:>10}  invariant factors", "k", "order");
        if skipped_zero {
            println!("  (k = 0 skipped: branched covers require k != 0)");
        }
        for s in rows {
            let order = if s.is_finite() {
                s.order.to_string()
            } else {
                "infinite".into()
            };
            let factors = if s.invariant_factors.is_empty() {
                "-".into()
            } else {
                s.invariant_factors
                    .iter()
                    .map(|f| f.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            println!("{:>4}  {:>10}  {}", s.k, order, factors);
        }
    }
    Ok(())
}
