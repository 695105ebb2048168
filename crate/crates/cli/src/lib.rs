//! The `mlq` command line.
//!
//! [`run`] takes the argument list and output streams so the whole tool can
//! be driven in-process. Exit codes: 0 success, 1 domain or validation
//! error, 2 usage error.

use anyhow::{anyhow, bail, Context, Result};
use chrono::NaiveDate;
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use mlq_core::assessment::{gaps_to_csv, parse_assessment, parse_gaps_csv, AssessmentError, AssessmentHeader};
use mlq_core::fleet::{
    compliance_by_subcharacteristic, compliance_csv, distribution_csv, latest_per_system,
    render_compliance_chart, render_trend_chart, score_distribution, COMPLIANCE_CHART_FILE,
    COMPLIANCE_FILE, DISTRIBUTION_FILE, TREND_FILE,
};
use mlq_core::model::{load_quality_model, QualityModel};
use mlq_core::questionnaire::{parse_form, render_form};
use mlq_core::registry::{fleet_percentiles, infer_gaps, parse_overrides, parse_registry_snapshot};
use mlq_core::scoring::criticality::{determine_criticality, SystemUsage};
use mlq_core::scoring::{evaluate, AssessmentResult, BusinessCriticality, CriticalityLevel};
use mlq_core::store::{self, history, load_assessment, persist_assessment, StoredAssessment};
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "mlq", version, about = "Quality and maturity assessments for ML systems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Score a gaps CSV, store the result and write its report.
    Assess(AssessArgs),
    /// Infer gaps for every system in a registry snapshot.
    Infer(InferArgs),
    /// Re-render a stored report from its snapshot.
    Report(ReportArgs),
    /// List stored scores and maturity levels.
    History(HistoryArgs),
    /// Write fleet tables and charts.
    Fleet(FleetArgs),
    /// Check a model config, gaps CSV or registry snapshot.
    Validate(ValidateArgs),
    /// Emit a blank questionnaire, or convert a filled one to CSV.
    Form(FormArgs),
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("criticality_source").required(true).args(["criticality", "usage"])))]
pub struct AssessArgs {
    #[arg(long)]
    pub gaps: PathBuf,
    #[arg(long)]
    pub team: String,
    #[arg(long)]
    pub system: String,
    #[arg(long)]
    pub date: NaiveDate,
    /// Other members of the system family, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub family: Vec<String>,
    #[arg(long, value_parser = ["1", "3", "5"])]
    pub criticality: Option<String>,
    /// JSON usage facts; criticality is derived against `--fleet`.
    #[arg(long, requires = "fleet")]
    pub usage: Option<PathBuf>,
    /// Registry snapshot providing the fleet percentiles.
    #[arg(long, requires = "usage")]
    pub fleet: Option<PathBuf>,
    #[arg(long, env = "MLQ_STORE")]
    pub store: PathBuf,
    #[arg(long)]
    pub model: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct InferArgs {
    #[arg(long)]
    pub registry: PathBuf,
    #[arg(long)]
    pub overrides: Option<PathBuf>,
    #[arg(long, env = "MLQ_STORE")]
    pub store: PathBuf,
    #[arg(long)]
    pub model: Option<PathBuf>,
    /// Assessment date; defaults to the snapshot's `snapshot_date`.
    #[arg(long)]
    pub date: Option<NaiveDate>,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[arg(long, env = "MLQ_STORE")]
    pub store: PathBuf,
    #[arg(long)]
    pub team: String,
    #[arg(long)]
    pub system: String,
    /// Defaults to the latest stored date.
    #[arg(long)]
    pub date: Option<NaiveDate>,
    /// Write here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Warn when the stored model differs from this config.
    #[arg(long)]
    pub model: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum HistoryFormat {
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct HistoryArgs {
    #[arg(long, env = "MLQ_STORE")]
    pub store: PathBuf,
    #[arg(long)]
    pub team: Option<String>,
    #[arg(long)]
    pub system: Option<String>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: HistoryFormat,
}

#[derive(Debug, Args)]
pub struct FleetArgs {
    #[arg(long, env = "MLQ_STORE")]
    pub store: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    /// Before cohort: latest assessment per system on or before this date.
    #[arg(long, requires = "after")]
    pub before: Option<NaiveDate>,
    /// After cohort: latest assessment per system on or after this date.
    #[arg(long, requires = "before")]
    pub after: Option<NaiveDate>,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[arg(long)]
    pub model: Option<PathBuf>,
    #[arg(long)]
    pub gaps: Option<PathBuf>,
    #[arg(long)]
    pub registry: Option<PathBuf>,
    #[arg(long)]
    pub overrides: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FormArgs {
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Convert this filled form to a gaps CSV instead.
    #[arg(long)]
    pub from: Option<PathBuf>,
    #[arg(long)]
    pub model: Option<PathBuf>,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_DOMAIN
        }
    }
}

pub fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    match command {
        Command::Assess(a) => cmd_assess(&a, out),
        Command::Infer(a) => cmd_infer(&a, out, err),
        Command::Report(a) => cmd_report(&a, out, err),
        Command::History(a) => cmd_history(&a, out, err),
        Command::Fleet(a) => cmd_fleet(&a, out, err),
        Command::Validate(a) => cmd_validate(&a, out),
        Command::Form(a) => cmd_form(&a, out),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).with_context(|| format!("cannot create {}", parent.display()))?;
    }
    fs::write(path, contents).with_context(|| format!("cannot write {}", path.display()))
}

fn load_model(path: Option<&Path>) -> Result<QualityModel> {
    let text = path.map(read).transpose()?;
    Ok(load_quality_model(text.as_deref())?)
}

fn issues_error(context: &str, e: &AssessmentError) -> anyhow::Error {
    let lines: Vec<String> = e.issues().iter().map(|i| format!("  {i}")).collect();
    anyhow!("{context}:\n{}", lines.join("\n"))
}

fn summary(result: &AssessmentResult) -> String {
    format!(
        "score={} maturity={} required={}",
        result.quality_score, result.maturity, result.required_maturity
    )
}

fn cmd_assess(args: &AssessArgs, out: &mut dyn Write) -> Result<()> {
    let model = load_model(args.model.as_deref())?;
    let criticality = match (&args.criticality, &args.usage, &args.fleet) {
        (Some(level), _, _) => {
            let level = CriticalityLevel::from_value(level.parse()?)
                .ok_or_else(|| anyhow!("criticality must be 1, 3 or 5"))?;
            BusinessCriticality::manual(level)
        }
        (None, Some(usage), Some(fleet)) => {
            let usage: SystemUsage = serde_json::from_str(&read(usage)?)
                .with_context(|| format!("invalid usage file {}", usage.display()))?;
            usage.validate().map_err(|e| anyhow!(e))?;
            let snapshot = parse_registry_snapshot(&read(fleet)?)?;
            determine_criticality(&usage, &fleet_percentiles(&snapshot.systems)?)
        }
        _ => bail!("criticality requires --criticality or --usage with --fleet"),
    };
    let header = AssessmentHeader {
        team: args.team.clone(),
        system_id: args.system.clone(),
        family_members: family(&args.system, &args.family),
        date: args.date,
        criticality,
    };
    let csv = read(&args.gaps)?;
    let assessment = parse_assessment(&csv, &model, header)
        .map_err(|e| issues_error(&format!("invalid gaps file {}", args.gaps.display()), &e))?;
    let result = evaluate(assessment, &model);
    let stored = persist_assessment(&args.store, &result, &model)?;
    writeln!(out, "{}", summary(&result))?;
    writeln!(out, "report={}", stored.report_path().display())?;
    Ok(())
}

fn family(system: &str, extra: &[String]) -> Vec<String> {
    let mut members = vec![system.to_string()];
    for m in extra {
        let m = m.trim();
        if !m.is_empty() && !members.iter().any(|x| x == m) {
            members.push(m.to_string());
        }
    }
    members
}

/// Result of one inferred system, for callers driving `infer` in-process.
pub struct InferredSystem {
    pub result: AssessmentResult,
    pub stored: StoredAssessment,
}

pub fn infer_all(args: &InferArgs, err: &mut dyn Write) -> Result<Vec<InferredSystem>> {
    let model = load_model(args.model.as_deref())?;
    let snapshot = parse_registry_snapshot(&read(&args.registry)?)?;
    for w in &snapshot.warnings {
        writeln!(err, "warning: {w}")?;
    }
    let date = args
        .date
        .or(snapshot.snapshot_date)
        .ok_or_else(|| anyhow!("no assessment date: pass --date or set snapshot_date"))?;
    let overrides = match &args.overrides {
        Some(p) => parse_overrides(&read(p)?)?,
        None => Default::default(),
    };
    for id in overrides.keys() {
        if !snapshot.systems.iter().any(|s| &s.system_id == id) {
            writeln!(err, "warning: overrides for unknown system `{id}` ignored")?;
        }
    }
    let fleet = fleet_percentiles(&snapshot.systems)?;
    let none = Default::default();
    let mut done = Vec::with_capacity(snapshot.systems.len());
    for record in &snapshot.systems {
        let o = overrides.get(&record.system_id).unwrap_or(&none);
        let assessment = infer_gaps(record, o, &fleet, &model, date)
            .with_context(|| format!("system {}", record.system_id))?;
        let result = evaluate(assessment, &model);
        let stored = persist_assessment(&args.store, &result, &model)?;
        done.push(InferredSystem { result, stored });
    }
    Ok(done)
}

fn cmd_infer(args: &InferArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    for s in infer_all(args, err)? {
        let a = &s.result.assessment;
        writeln!(
            out,
            "{}/{} {} report={}",
            a.team,
            a.system_id,
            summary(&s.result),
            s.stored.report_path().display()
        )?;
    }
    Ok(())
}

fn cmd_report(args: &ReportArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let expected = args.model.as_deref().map(|p| load_model(Some(p))).transpose()?;
    let loaded = load_assessment(&args.store, &args.team, &args.system, args.date, expected.as_ref())?;
    for w in &loaded.warnings {
        writeln!(err, "warning: {w}")?;
    }
    let doc = loaded.rerender()?;
    match &args.out {
        Some(p) => write_file(p, &doc.html)?,
        None => out.write_all(doc.html.as_bytes())?,
    }
    Ok(())
}

fn cmd_history(args: &HistoryArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let h = history(&args.store, args.team.as_deref(), args.system.as_deref())?;
    for w in &h.warnings {
        writeln!(err, "warning: {w}")?;
    }
    match args.format {
        HistoryFormat::Csv => {
            writeln!(out, "team,system,date,quality_score,maturity")?;
            for r in &h.rows {
                writeln!(out, "{},{},{},{},{}", csv_field(&r.team), csv_field(&r.system), r.date, r.quality_score, r.maturity)?;
            }
        }
        HistoryFormat::Json => {
            writeln!(out, "{}", serde_json::to_string_pretty(&h.rows)?)?;
        }
    }
    Ok(())
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn cmd_fleet(args: &FleetArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    let (loaded, warnings) = store::scan(&args.store, None, None)?;
    for w in &warnings {
        writeln!(err, "warning: {w}")?;
    }
    if loaded.is_empty() {
        bail!("store {} contains no assessments", args.store.display());
    }
    let rows: Vec<_> = loaded.iter().map(store::HistoryRow::from).collect();
    let mut written = Vec::new();

    let dist = score_distribution(&rows)?;
    let path = args.out.join(DISTRIBUTION_FILE);
    write_file(&path, &distribution_csv(&dist))?;
    written.push(path);
    let path = args.out.join(TREND_FILE);
    write_file(&path, &render_trend_chart(&rows))?;
    written.push(path);

    if let (Some(before), Some(after)) = (args.before, args.after) {
        let results = loaded.iter().map(|l| l.result());
        let before_cohort = latest_per_system(results.clone(), |d| d <= before);
        let after_cohort = latest_per_system(results, |d| d >= after);
        let rows = compliance_by_subcharacteristic(&before_cohort, &after_cohort)?;
        let path = args.out.join(COMPLIANCE_FILE);
        write_file(&path, &compliance_csv(&rows))?;
        written.push(path);
        let path = args.out.join(COMPLIANCE_CHART_FILE);
        write_file(&path, &render_compliance_chart(&rows))?;
        written.push(path);
    }
    for p in written {
        writeln!(out, "wrote {}", p.display())?;
    }
    Ok(())
}

fn cmd_validate(args: &ValidateArgs, out: &mut dyn Write) -> Result<()> {
    let model = load_model(args.model.as_deref())?;
    writeln!(out, "model ok: {} rows, fingerprint {}", model.len(), model.fingerprint())?;
    if let Some(p) = &args.gaps {
        parse_gaps_csv(&read(p)?, &model)
            .map_err(|e| issues_error(&format!("invalid gaps file {}", p.display()), &e))?;
        writeln!(out, "gaps ok: {}", p.display())?;
    }
    if let Some(p) = &args.registry {
        let snapshot = parse_registry_snapshot(&read(p)?)?;
        for w in &snapshot.warnings {
            writeln!(out, "warning: {w}")?;
        }
        writeln!(out, "registry ok: {} systems", snapshot.systems.len())?;
    }
    if let Some(p) = &args.overrides {
        let o = parse_overrides(&read(p)?)?;
        writeln!(out, "overrides ok: {} systems", o.len())?;
    }
    Ok(())
}

fn cmd_form(args: &FormArgs, out: &mut dyn Write) -> Result<()> {
    let model = load_model(args.model.as_deref())?;
    let text = match &args.from {
        None => render_form(&model),
        Some(p) => {
            let gaps = parse_form(&read(p)?, &model).map_err(|errs| {
                let lines: Vec<String> = errs.iter().map(|e| format!("  {e}")).collect();
                anyhow!("invalid form {}:\n{}", p.display(), lines.join("\n"))
            })?;
            gaps_to_csv(&gaps)
        }
    };
    match &args.out {
        Some(p) => write_file(p, &text),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}
