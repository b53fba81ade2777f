//! Command-line interface.
//!
//! Exit codes: 0 success, 1 input error, 2 identity violation or internal
//! inconsistency. JSON documents have sorted keys.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::arch::{self, MahlerReport, RealInterval};
use crate::branched::{self, GrowthReport, Periodicity, DEFAULT_RMAX};
use crate::error::{Error, Result};
use crate::json::to_sorted_string;
use crate::knotdata::{self, KnotRecord};
use crate::padic::{self, EntropySpectrum, LeadingCertificate, Obstruction};
use crate::poly::{validate_alexander, IntPoly, ValidationReport};
use crate::DEFAULT_PRECISION;

/// Agreement tolerance between independently computed entropies.
pub const RECONCILE_TOL: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(name = "knot-entropy", version, about = "Entropy invariants of Alexander polynomials")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Validation, entropy spectrum, Mahler measure and identity checks.
    Analyze(AnalyzeArgs),
    /// Homology orders of branched cyclic covers, r = 1..rmax.
    Sequence(SequenceArgs),
    /// Growth rate of the homology orders against the Mahler measure.
    Growth(GrowthArgs),
    /// Identity checks over a whole knot table.
    TableCheck(TableArgs),
}

#[derive(Debug, Args)]
pub struct TargetArgs {
    /// Knot name from the built-in table, e.g. 5_2.
    #[arg(required_unless_present = "coeffs", conflicts_with = "coeffs")]
    pub target: Option<String>,
    /// Coefficients in ascending degree, e.g. 2,-3,2.
    #[arg(long, allow_hyphen_values = true)]
    pub coeffs: Option<String>,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, conflicts_with = "csv")]
    pub json: bool,
    #[arg(long)]
    pub csv: bool,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub target: TargetArgs,
    #[arg(long, default_value_t = DEFAULT_PRECISION)]
    pub precision: u32,
}

#[derive(Debug, Args)]
pub struct SequenceArgs {
    #[command(flatten)]
    pub target: TargetArgs,
    #[arg(long, default_value_t = DEFAULT_RMAX)]
    pub rmax: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct GrowthArgs {
    #[command(flatten)]
    pub target: TargetArgs,
    #[arg(long, default_value_t = DEFAULT_RMAX)]
    pub rmax: usize,
    /// Window `lo:hi` (default rmax/2:rmax).
    #[arg(long, value_parser = parse_window)]
    pub window: Option<(usize, usize)>,
    /// Writes `r,log_order_over_r,mahler_midpoint` rows to this file.
    #[arg(long)]
    pub plot_data: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_PRECISION)]
    pub precision: u32,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    /// CSV file, or `builtin` for the built-in table.
    #[arg(default_value = "builtin")]
    pub table: String,
    #[arg(long, default_value_t = DEFAULT_PRECISION)]
    pub precision: u32,
    #[command(flatten)]
    pub output: OutputArgs,
}

fn parse_window(s: &str) -> std::result::Result<(usize, usize), String> {
    let (lo, hi) = s.split_once(':').ok_or("expected lo:hi")?;
    let lo = lo.trim().parse().map_err(|e| format!("bad lower bound: {e}"))?;
    let hi = hi.trim().parse().map_err(|e| format!("bad upper bound: {e}"))?;
    Ok((lo, hi))
}

/// A resolved analysis target.
#[derive(Debug, Clone, Serialize)]
pub struct Target {
    pub name: Option<String>,
    pub poly: IntPoly,
}

impl TargetArgs {
    pub fn resolve(&self) -> Result<Target> {
        match (&self.target, &self.coeffs) {
            (_, Some(c)) => Ok(Target { name: None, poly: IntPoly::parse_coeffs(c)? }),
            (Some(name), None) => knotdata::lookup(name)
                .map(|k| Target { name: Some(k.name), poly: k.poly })
                .ok_or_else(|| Error::Io(format!("unknown knot {name:?}; use --coeffs for other polynomials"))),
            (None, None) => Err(Error::Io("no target given".into())),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisDocument {
    pub target: Option<String>,
    pub polynomial: String,
    pub coeffs: IntPoly,
    pub validation: ValidationReport,
    pub spectrum: EntropySpectrum,
    pub mahler: MahlerReport,
    /// `None` for polynomials with content above 1.
    pub leading_decomposition: Option<LeadingCertificate>,
    pub obstruction: Obstruction,
    pub all_roots_of_unity: bool,
    pub reconciled: bool,
}

/// Whether two enclosures of the same quantity agree to `tol`.
pub fn agrees(a: &RealInterval, b: &RealInterval, tol: f64) -> bool {
    a.distance(b) <= tol && (a.midpoint() - b.midpoint()).abs() < tol
}

pub fn analyze(name: Option<String>, f: &IntPoly, precision: u32) -> Result<AnalysisDocument> {
    let validation = validate_alexander(f);
    let spectrum = padic::entropy_spectrum(f, precision)?;
    let mahler = arch::mahler_measure_report(f, precision)?;
    let leading_decomposition = match padic::leading_decomposition(f) {
        Ok(c) => Some(c),
        Err(Error::NotPrimitive(_)) => None,
        Err(e) => return Err(e),
    };
    let reconciled = agrees(&spectrum.grand_total, &mahler.enclosure, RECONCILE_TOL)
        && agrees(&mahler.by_roots, &mahler.by_graeffe, RECONCILE_TOL);
    Ok(AnalysisDocument {
        target: name,
        polynomial: f.to_string(),
        coeffs: f.clone(),
        validation,
        spectrum,
        mahler,
        leading_decomposition,
        obstruction: padic::finitely_generated_obstruction(f)?,
        all_roots_of_unity: arch::all_roots_of_unity(f),
        reconciled,
    })
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum GrowthOutcome {
    Periodic { target: Option<String>, periodicity: Periodicity },
    Growth { target: Option<String>, report: GrowthReport },
}

#[derive(Debug, Clone, Serialize)]
pub struct TableRow {
    pub name: String,
    pub polynomial: String,
    pub leading_identity: bool,
    pub reconciled: bool,
    pub grand_total: Option<RealInterval>,
    pub mahler: Option<RealInterval>,
    pub error: Option<String>,
}

impl TableRow {
    pub fn passed(&self) -> bool {
        self.leading_identity && self.reconciled && self.error.is_none()
    }
}

pub fn check_record(k: &KnotRecord, precision: u32) -> TableRow {
    let mut row = TableRow {
        name: k.name.clone(),
        polynomial: k.poly.to_string(),
        leading_identity: false,
        reconciled: false,
        grand_total: None,
        mahler: None,
        error: None,
    };
    match analyze(Some(k.name.clone()), &k.poly, precision) {
        Ok(doc) => {
            row.leading_identity = doc.leading_decomposition.is_some_and(|c| c.holds);
            row.reconciled = doc.reconciled;
            row.grand_total = Some(doc.spectrum.grand_total);
            row.mahler = Some(doc.mahler.enclosure);
        }
        Err(e) => row.error = Some(e.to_string()),
    }
    row
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::IdentityViolation(_) | Error::MethodDisagreement { .. } => 2,
        _ => 1,
    }
}

fn json_line<T: Serialize>(out: &mut dyn Write, v: &T) -> Result<()> {
    let s = to_sorted_string(v).map_err(|e| Error::Io(e.to_string()))?;
    writeln!(out, "{s}")?;
    Ok(())
}

fn cmd_analyze(a: &AnalyzeArgs, out: &mut dyn Write) -> Result<i32> {
    let t = a.target.resolve()?;
    let doc = analyze(t.name, &t.poly, a.precision)?;
    json_line(out, &doc)?;
    let holds = doc.leading_decomposition.as_ref().is_none_or(|c| c.holds);
    Ok(if holds && doc.reconciled { 0 } else { 2 })
}

fn cmd_sequence(a: &SequenceArgs, out: &mut dyn Write) -> Result<i32> {
    let t = a.target.resolve()?;
    let seq = branched::homology_sequence(&t.poly, a.rmax)?;
    if a.output.json {
        json_line(out, &seq)?;
    } else {
        writeln!(out, "r,order")?;
        for (i, o) in seq.orders.iter().enumerate() {
            writeln!(out, "{},{}", i + 1, o)?;
        }
    }
    Ok(0)
}

fn cmd_growth(a: &GrowthArgs, out: &mut dyn Write) -> Result<i32> {
    let t = a.target.resolve()?;
    if arch::all_roots_of_unity(&t.poly) {
        let periodicity = branched::periodicity_check(&t.poly, a.rmax)?;
        json_line(out, &GrowthOutcome::Periodic { target: t.name, periodicity })?;
        return Ok(0);
    }
    let seq = branched::homology_sequence(&t.poly, a.rmax)?;
    let window = a.window.unwrap_or_else(|| branched::default_window(a.rmax));
    let report = branched::growth_estimate(&seq, window)?;
    if let Some(path) = &a.plot_data {
        write_plot_data(path, &report)?;
    }
    json_line(out, &GrowthOutcome::Growth { target: t.name, report })?;
    Ok(0)
}

fn write_plot_data(path: &std::path::Path, report: &GrowthReport) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(["r", "log_order_over_r", "mahler_midpoint"]).map_err(io)?;
    let mid = report.mahler_reference.midpoint();
    for (r, v) in &report.per_r {
        w.write_record([r.to_string(), format!("{v:.15e}"), format!("{mid:.15e}")]).map_err(io)?;
    }
    w.flush()?;
    Ok(())
}

fn cmd_table_check(a: &TableArgs, out: &mut dyn Write) -> Result<i32> {
    let table = if a.table == "builtin" { knotdata::builtin_table() } else { knotdata::load_csv(&a.table)? };
    if table.is_empty() {
        return Err(Error::Io("no records".into()));
    }
    let rows: Vec<TableRow> = table.iter().map(|k| check_record(k, a.precision)).collect();
    if a.output.json {
        json_line(out, &rows)?;
    } else {
        writeln!(out, "{:<10} {:<28} {:>8} {:>10} {:>20}", "knot", "polynomial", "leading", "reconcile", "mahler")?;
        for r in &rows {
            let m = r.mahler.map_or_else(|| r.error.clone().unwrap_or_default(), |m| format!("{:.15}", m.midpoint()));
            let mark = |b: bool| if b { "ok" } else { "FAIL" };
            writeln!(
                out,
                "{:<10} {:<28} {:>8} {:>10} {:>20}",
                r.name,
                r.polynomial,
                mark(r.leading_identity),
                mark(r.reconciled),
                m
            )?;
        }
        let passed = rows.iter().filter(|r| r.passed()).count();
        writeln!(out, "{passed}/{} passed", rows.len())?;
    }
    Ok(if rows.iter().all(TableRow::passed) { 0 } else { 2 })
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    let result = match &cli.command {
        Command::Analyze(a) => cmd_analyze(a, out),
        Command::Sequence(a) => cmd_sequence(a, out),
        Command::Growth(a) => {
            if a.rmax > 1000 {
                let _ = writeln!(err, "warning: rmax {} makes homology orders very large", a.rmax);
            }
            cmd_growth(a, out)
        }
        Command::TableCheck(a) => cmd_table_check(a, out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("knot-entropy").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn windows_parse() {
        assert_eq!(parse_window("50:100"), Ok((50, 100)));
        assert!(parse_window("50").is_err());
        assert!(parse_window("a:3").is_err());
    }

    #[test]
    fn sequence_csv() {
        let (code, out, _) = run_str(&["sequence", "3_1", "--rmax", "6"]);
        assert_eq!(code, 0);
        assert_eq!(out, "r,order\n1,1\n2,3\n3,4\n4,3\n5,1\n6,0\n");
    }

    #[test]
    fn unknown_knot_is_input_error() {
        let (code, _, err) = run_str(&["analyze", "12n_999"]);
        assert_eq!(code, 1);
        assert!(err.contains("unknown knot"));
    }

    #[test]
    fn coefficient_target() {
        let (code, out, _) = run_str(&["analyze", "--coeffs", "2,-5,2"]);
        assert_eq!(code, 0, "{out}");
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        let total = v["spectrum"]["grand_total"]["lo"].as_f64().unwrap();
        assert!((total - 4f64.ln()).abs() < 1e-9);
    }
}
