use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};

use rbpair_core::group::{check_map, FiniteGroup};
use rbpair_core::io::{
    file_kind, parse_group, parse_lie, relabel_map, parse_group_file, parse_group_map, parse_matched_pair_lie, parse_quadratic,
    parse_rb_lie, to_json, LieAlgebraFile, MatchedPairGroupFile, MatchedPairLieFile, RbCensusFile,
};
use rbpair_core::linalg::int;
use rbpair_core::matched_group::{bicrossed_group, census_decompositions, group_decomposition, matched_pair_from_rb_group};
use rbpair_core::matched_lie::{bbw_identity, bicrossed_product, full_decomposition, matched_pair_from_rb};
use rbpair_core::quadratic::{check_compatibility, quadratic_decompose, validate_quadratic};
use rbpair_core::rb_group::{
    enumerate_rb_operators_bounded, is_rb_group, lemma_suite_group, RotaBaxterGroup, SearchMode, DEFAULT_MAX_ORDER,
};
use rbpair_core::rb_lie::{check_rota_baxter, descendent_algebra, lemma_suite_lie, RotaBaxterLie};
use rbpair_core::report::prefixed;
use rbpair_core::{Check, Error, Report};

const BOUND_VAR: &str = "RBPAIR_MAX_GROUP_ORDER";

#[derive(Parser)]
#[command(name = "rbpair", version, about = "Exact Rota-Baxter operators, matched pairs and bicrossed products")]
struct Cli {
    /// Output format for the report on stdout.
    #[arg(long, value_enum, default_value_t = ReportFormat::Json, global = true)]
    report: ReportFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Validate an input file.
    Check {
        #[arg(value_enum)]
        kind: CheckKind,
        /// Input file; `rb-group` takes a group file followed by a group map file.
        #[arg(required = true, num_args = 1..=2)]
        files: Vec<PathBuf>,
    },
    /// Build a derived object and write it in its file format.
    Construct {
        #[arg(value_enum)]
        kind: ConstructKind,
        /// Input file; `group-matched-pair` takes a group file followed by a group map file.
        #[arg(required = true, num_args = 1..=2)]
        files: Vec<PathBuf>,
        /// Where to write the constructed object; it is also embedded in the report.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the projection decomposition with all certificates (weight -1).
    Decompose {
        #[arg(value_enum)]
        kind: DecomposeKind,
        /// `lie` takes an rb_lie file; `group` takes a group file and a group map file.
        #[arg(required = true, num_args = 1..=2)]
        files: Vec<PathBuf>,
    },
    /// Enumerate every weight -1 Rota-Baxter operator on a finite group.
    Search {
        group: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::Pruned)]
        mode: ModeArg,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Census file; without it the census is embedded in the report.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Run the full group certificate suite on every operator found.
        #[arg(long)]
        verify_all: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckKind {
    Lie,
    RbLie,
    Quadratic,
    Group,
    RbGroup,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstructKind {
    Descend,
    MatchedPair,
    Bicrossed,
    Manin,
    GroupMatchedPair,
}

#[derive(Clone, Copy, ValueEnum)]
enum DecomposeKind {
    Lie,
    Group,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Naive,
    Pruned,
}

impl From<ModeArg> for SearchMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Naive => SearchMode::Naive,
            ModeArg::Pruned => SearchMode::Pruned,
        }
    }
}

/// Command failures; each maps to one exit code.
enum Failure {
    Malformed(String),
    Refuted(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::Malformed(_) | Error::DimensionMismatch(_) => Failure::Malformed(e.to_string()),
            _ => Failure::Refuted(e.to_string()),
        }
    }
}

struct Inputs {
    texts: Vec<String>,
    subject: String,
}

fn read_inputs(files: &[PathBuf]) -> Result<Inputs, Failure> {
    let mut hasher = Sha256::new();
    let mut texts = Vec::new();
    for f in files {
        let bytes = std::fs::read(f).map_err(|e| Failure::Malformed(format!("{}: {e}", f.display())))?;
        hasher.update((bytes.len() as u64).to_le_bytes());
        hasher.update(&bytes);
        let text = String::from_utf8(bytes).map_err(|e| Failure::Malformed(format!("{}: {e}", f.display())))?;
        texts.push(text);
    }
    Ok(Inputs { texts, subject: format!("sha256:{}", hex::encode(hasher.finalize())) })
}

fn expect_files(files: &[PathBuf], n: usize, what: &str) -> Result<(), Failure> {
    if files.len() == n {
        Ok(())
    } else {
        Err(Failure::Malformed(format!("{what} expects {n} input file(s), got {}", files.len())))
    }
}

fn with_path<T>(path: &Path, r: rbpair_core::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| match Failure::from(e) {
        Failure::Malformed(m) => Failure::Malformed(format!("{}: {m}", path.display())),
        Failure::Refuted(m) => Failure::Refuted(format!("{}: {m}", path.display())),
    })
}

fn artifact<T: serde::Serialize>(value: &T) -> serde_json::Value {
    serde_json::to_value(value).expect("serializable")
}

fn write_out(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Refuted(format!("cannot write {}: {e}", path.display())))
}

/// Reports a nontrivial identity relabeling as an artifact.
fn note_relabeling(report: &mut Report, perm: &[usize]) {
    if perm.iter().enumerate().any(|(i, &p)| i != p) {
        report.artifacts.push(serde_json::json!({"kind": "relabeling", "new_to_old": perm}));
    }
}

fn group_input(path: &Path, text: &str, report: &mut Report) -> Result<(FiniteGroup, Vec<usize>), Failure> {
    let (g, perm) = with_path(path, parse_group(text))?;
    note_relabeling(report, &perm);
    Ok((g, perm))
}

fn rb_group_input(files: &[PathBuf], inputs: &Inputs, report: &mut Report) -> Result<RotaBaxterGroup, Failure> {
    expect_files(files, 2, "a group operator")?;
    let (g, perm) = group_input(&files[0], &inputs.texts[0], report)?;
    let values = with_path(&files[1], parse_group_map(&inputs.texts[1]))?;
    let values = with_path(&files[1], relabel_map(&values, &perm))?;
    with_path(&files[1], RotaBaxterGroup::new(g, values))
}

/// Algebra axioms, then the operator identity, then the lemma suite once the
/// operator is known to be Rota-Baxter.
fn rb_lie_checks(rb: &RotaBaxterLie) -> rbpair_core::Result<Vec<Check>> {
    let mut checks = rb.algebra.validate();
    if !checks.iter().all(|c| c.holds) {
        return Ok(checks);
    }
    let rbl = check_rota_baxter(&rb.algebra, &rb.operator, &rb.weight)?;
    let holds = rbl.holds;
    checks.push(rbl);
    if holds {
        let bbw: &dyn Fn(&RotaBaxterLie) -> Check = &bbw_identity;
        let callback = (rb.weight != int(0)).then_some(bbw);
        checks.extend(lemma_suite_lie(rb, callback));
    }
    Ok(checks)
}

fn cmd_check(kind: CheckKind, files: &[PathBuf]) -> Result<Report, Failure> {
    let inputs = read_inputs(files)?;
    let mut report = Report::new(inputs.subject.clone());
    let first = &files[0];
    match kind {
        CheckKind::Lie => {
            expect_files(files, 1, "check lie")?;
            let g = with_path(first, parse_lie(&inputs.texts[0]))?;
            report.extend(g.validate());
        }
        CheckKind::RbLie => {
            expect_files(files, 1, "check rb-lie")?;
            let rb = with_path(first, parse_rb_lie(&inputs.texts[0]))?;
            report.extend(rb_lie_checks(&rb)?);
        }
        CheckKind::Quadratic => {
            expect_files(files, 1, "check quadratic")?;
            let q = with_path(first, parse_quadratic(&inputs.texts[0]))?;
            report.extend(validate_quadratic(&q.rb.algebra, &q.form)?);
            report.extend(rb_lie_checks(&q.rb)?);
            if report.all_hold() {
                report.extend(check_compatibility(&q));
            }
        }
        CheckKind::Group => {
            expect_files(files, 1, "check group")?;
            let f = with_path(first, parse_group_file(&inputs.texts[0]))?;
            let (checks, perm) = with_path(first, f.validate())?;
            report.extend(checks);
            note_relabeling(&mut report, &perm);
        }
        CheckKind::RbGroup => {
            let rbg = rb_group_input(files, &inputs, &mut report)?;
            let suite = lemma_suite_group(&rbg);
            report.extend(suite.checks);
            report.findings = suite.findings;
        }
    }
    Ok(report)
}

fn cmd_construct(kind: ConstructKind, files: &[PathBuf], out: Option<&Path>) -> Result<Report, Failure> {
    let inputs = read_inputs(files)?;
    let mut report = Report::new(inputs.subject.clone());
    let first = &files[0];
    let text = &inputs.texts[0];
    let rb_input = |report: &mut Report| -> Result<RotaBaxterLie, Failure> {
        let rb = with_path(first, parse_rb_lie(text))?;
        report.extend(rb_lie_checks(&rb)?);
        Ok(rb)
    };
    let output: serde_json::Value = match kind {
        ConstructKind::Descend => {
            expect_files(files, 1, "construct descend")?;
            let rb = rb_input(&mut report)?;
            let desc = descendent_algebra(&rb);
            report.extend(prefixed("descendent", desc.validate()));
            artifact(&LieAlgebraFile::from_algebra(&desc))
        }
        ConstructKind::MatchedPair => {
            expect_files(files, 1, "construct matched-pair")?;
            let rb = rb_input(&mut report)?;
            require_all(&report)?;
            let rmp = matched_pair_from_rb(&rb)?;
            report.extend(rmp.checks.iter().cloned());
            artifact(&MatchedPairLieFile::from_pair(&rmp.pair))
        }
        ConstructKind::Bicrossed => {
            expect_files(files, 1, "construct bicrossed")?;
            let pair = match with_path(first, file_kind(text))?.as_str() {
                "rb_lie" => {
                    let rb = rb_input(&mut report)?;
                    require_all(&report)?;
                    let rmp = matched_pair_from_rb(&rb)?;
                    report.extend(rmp.checks.iter().cloned());
                    rmp.pair
                }
                _ => with_path(first, parse_matched_pair_lie(text))?,
            };
            let bc = bicrossed_product(&pair)?;
            report.extend(bc.checks.iter().cloned());
            artifact(&LieAlgebraFile::from_algebra(&bc.total))
        }
        ConstructKind::Manin => {
            expect_files(files, 1, "construct manin")?;
            let q = with_path(first, parse_quadratic(text))?;
            report.extend(validate_quadratic(&q.rb.algebra, &q.form)?);
            report.extend(rb_lie_checks(&q.rb)?);
            report.extend(check_compatibility(&q));
            require_all(&report)?;
            let manin = quadratic_decompose(&q)?;
            report.extend(manin.decomposition.certificates.iter().cloned());
            artifact(&manin)
        }
        ConstructKind::GroupMatchedPair => {
            let rbg = rb_group_input(files, &inputs, &mut report)?;
            let suite = lemma_suite_group(&rbg);
            report.extend(suite.checks);
            require_all(&report)?;
            let rmp = matched_pair_from_rb_group(&rbg)?;
            report.extend(rmp.checks.iter().cloned());
            let bc = bicrossed_group(&rmp.pair)?;
            report.extend(bc.checks);
            artifact(&MatchedPairGroupFile::from_pair(&rmp.pair))
        }
    };
    if let Some(path) = out {
        write_out(path, &to_json(&output))?;
    }
    report.artifacts.push(output);
    Ok(report)
}

/// Constructions need a valid input; a failed check ends the command with
/// the report so far.
fn require_all(report: &Report) -> Result<(), Failure> {
    match report.checks.iter().find(|c| !c.holds) {
        None => Ok(()),
        Some(c) => Err(Failure::Refuted(format!("input fails {}: {}", c.name, c.witness.clone().unwrap_or_default()))),
    }
}

fn cmd_decompose(kind: DecomposeKind, files: &[PathBuf]) -> Result<Report, Failure> {
    let inputs = read_inputs(files)?;
    let mut report = Report::new(inputs.subject.clone());
    match kind {
        DecomposeKind::Lie => {
            expect_files(files, 1, "decompose lie")?;
            let rb = with_path(&files[0], parse_rb_lie(&inputs.texts[0]))?;
            report.extend(rb_lie_checks(&rb)?);
            require_all(&report)?;
            let d = full_decomposition(&rb)?;
            report.extend(d.certificates.iter().cloned());
            report.artifacts.push(artifact(&d));
        }
        DecomposeKind::Group => {
            let rbg = rb_group_input(files, &inputs, &mut report)?;
            let d = group_decomposition(&rbg)?;
            report.extend(d.certificates.iter().cloned());
            report.findings = d.findings.clone();
            report.artifacts.push(artifact(&d));
        }
    }
    Ok(report)
}

fn search_bound() -> Result<usize, Failure> {
    match std::env::var(BOUND_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Malformed(format!("{BOUND_VAR} must be a positive integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_MAX_ORDER),
    }
}

fn cmd_search(
    group: &Path,
    mode: SearchMode,
    jobs: usize,
    out: Option<&Path>,
    verify_all: bool,
) -> Result<Report, Failure> {
    let files = [group.to_path_buf()];
    let inputs = read_inputs(&files)?;
    let mut report = Report::new(inputs.subject.clone());
    let (g, _) = group_input(group, &inputs.texts[0], &mut report)?;
    let bound = search_bound()?;
    let ops = enumerate_rb_operators_bounded(&g, mode, jobs.max(1), bound)?;
    let unverified = ops.iter().position(|v| check_map(&g, &g, v).is_err() || !is_rb_group(&g, v));
    report.checks.push(Check::from_witness(
        "census-operators-rota-baxter",
        "group-rota-baxter-census",
        unverified.map(|i| format!("operator {i}")),
    ));
    if verify_all {
        for (i, d) in census_decompositions(&g, &ops, jobs.max(1))?.into_iter().enumerate() {
            report.extend(prefixed(&format!("operator-{i}"), d.certificates));
            report.findings.extend(prefixed(&format!("operator-{i}"), d.findings));
        }
    }
    let census = RbCensusFile::new(&g, &ops, mode);
    match out {
        Some(path) => write_out(path, &to_json(&census))?,
        None => report.artifacts.push(artifact(&census)),
    }
    Ok(report)
}

fn emit(report: &Report, format: ReportFormat) {
    match format {
        ReportFormat::Json => print!("{}", to_json(report)),
        ReportFormat::Text => print!("{}", report.to_text()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Check { kind, files } => cmd_check(*kind, files),
        Command::Construct { kind, files, out } => cmd_construct(*kind, files, out.as_deref()),
        Command::Decompose { kind, files } => cmd_decompose(*kind, files),
        Command::Search { group, mode, jobs, out, verify_all } => {
            cmd_search(group, (*mode).into(), *jobs, out.as_deref(), *verify_all)
        }
    };
    match result {
        Ok(report) => {
            emit(&report, cli.report);
            if report.all_hold() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Refuted(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Malformed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
