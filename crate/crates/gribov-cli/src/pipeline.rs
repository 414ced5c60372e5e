//! Command orchestration: parse, validate, solve, report.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use gribov_core::bargmann::build_g;
use gribov_core::block::{assemble, assemble_off_part, split, BlockSpec};
use gribov_core::eigen::{counting, eigenvalues, flag_stabilized, SpectrumResult};
use gribov_core::spectral::{
    counting_asymptotics, eigenbasis_condition, gribov_region_with, riesz_constant,
    cluster_parentheses, SectorExponents,
};
use gribov_core::subordination::{
    closedness_margin, decay_example, entry_certificate, gribov_certificate,
    selfadjointness_check, verify_subordination, SubordinationCertificate,
};
use gribov_core::{BandedComplexMatrix, Error};

use crate::report::{
    eigenvalue_rows, eigenvalues_csv, key_value_csv, to_json, EigenvalueRow, Header, RegionReport,
};
use crate::schema::{load_spec, spec_schema};
use crate::CliError;

/// Seed for the verification trial vectors; fixed so reports are
/// byte-identical across runs.
const TRIAL_SEED: u64 = 0x4752_4942;

#[derive(Debug, Parser)]
#[command(
    name = "gribov",
    version,
    about = "Finite-section spectral toolkit for Gribov operator matrices on truncated Bargmann spaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output file (stdout when omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Report format
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    /// Block spec file (JSON)
    #[arg(long)]
    pub spec: PathBuf,
    /// Truncation size per block (at least 3)
    #[arg(long)]
    pub trunc: usize,
    /// Growth factor for the stabilization truncation
    #[arg(long, default_value_t = 2.0)]
    pub growth: f64,
    /// Relative tolerance for eigenvalue stabilization
    #[arg(long = "rel-tol", default_value_t = 1e-6)]
    pub rel_tol: f64,
    /// Margin by which the sector coefficient exceeds the bound sum
    #[arg(long = "alpha-margin", default_value_t = 0.1)]
    pub alpha_margin: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SubordinationArgs {
    /// Block spec file (JSON)
    #[arg(long)]
    pub spec: PathBuf,
    /// Truncation size per block (at least 3)
    #[arg(long)]
    pub trunc: usize,
    /// Number of random trial vectors added to the basis sweep
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ConditionsArgs {
    /// Block spec file (JSON)
    #[arg(long)]
    pub spec: PathBuf,
    /// Truncation size for the assembled-symmetry probe
    #[arg(long, default_value_t = 12)]
    pub trunc: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct CountingArgs {
    /// Block spec file (JSON)
    #[arg(long)]
    pub spec: PathBuf,
    /// Table upper end: rows cover k = 3 .. trunc-1, cross-checked
    /// against the diagonal spectrum truncated at trunc
    #[arg(long, default_value_t = 200)]
    pub trunc: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct RieszArgs {
    /// Block spec file (JSON)
    #[arg(long)]
    pub spec: PathBuf,
    /// Truncation size per block (at least 3)
    #[arg(long)]
    pub trunc: usize,
    /// Growth factor for the stabilization truncation
    #[arg(long, default_value_t = 2.0)]
    pub growth: f64,
    /// Relative tolerance for eigenvalue stabilization
    #[arg(long = "rel-tol", default_value_t = 1e-6)]
    pub rel_tol: f64,
    /// Modulus-gap factor for the parenthesis clustering
    #[arg(long = "gap-factor", default_value_t = 0.5)]
    pub gap_factor: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ExampleArgs {
    /// Number of blocks
    #[arg(long)]
    pub n: usize,
    /// Decay base of the coupling family (hypotheses want a >= 7/5)
    #[arg(long)]
    pub a: f64,
    /// Magic coupling shared by the diagonal blocks
    #[arg(long)]
    pub lambda2: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SchemaArgs {
    /// Output file (stdout when omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Stabilized spectrum of the assembled block matrix
    Spectrum(SolveArgs),
    /// Spectrum plus enclosure regions under both exponent conventions
    Enclosure(SolveArgs),
    /// Numerical verification of the subordination certificates
    Subordination(SubordinationArgs),
    /// Closedness and self-adjointness margin conditions
    Conditions(ConditionsArgs),
    /// Counting-function asymptotics along the diagonal spectrum
    Counting(CountingArgs),
    /// Riesz-basis surrogate diagnostics
    Riesz(RieszArgs),
    /// Orthonormal-basis condition for the geometric-decay coupling family
    #[command(name = "example-p6")]
    ExampleP6(ExampleArgs),
    /// Print the JSON schema for spec files
    Schema(SchemaArgs),
}

pub fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Spectrum(args) => spectrum_command(args, false),
        Command::Enclosure(args) => spectrum_command(args, true),
        Command::Subordination(args) => subordination_command(args),
        Command::Conditions(args) => conditions_command(args),
        Command::Counting(args) => counting_command(args),
        Command::Riesz(args) => riesz_command(args),
        Command::ExampleP6(args) => example_command(args),
        Command::Schema(args) => {
            let mut text = serde_json::to_string_pretty(&spec_schema()).expect("schema");
            text.push('\n');
            write_output(args.out.as_deref(), &text)
        }
    }
}

fn write_output(path: Option<&std::path::Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| {
            CliError::Validation(format!("cannot write report to '{}': {e}", p.display()))
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn check_positive(value: f64, what: &str) -> Result<(), CliError> {
    if !(value.is_finite() && value > 0.0) {
        return Err(CliError::Validation(format!("{what} must be positive, got {value}")));
    }
    Ok(())
}

fn check_solve_args(trunc: usize, growth: f64, rel_tol: f64) -> Result<(), CliError> {
    if trunc < 3 {
        return Err(CliError::Validation(format!("trunc must be at least 3, got {trunc}")));
    }
    if !(growth.is_finite() && growth > 1.0) {
        return Err(CliError::Validation(format!("growth must exceed 1, got {growth}")));
    }
    check_positive(rel_tol, "rel-tol")
}

/// Internal parallelism cap: GRIBOV_THREADS when set, otherwise the
/// machine's available parallelism. The pipeline has exactly one parallel
/// site, the pair of truncation solves, so any value above 2 behaves
/// like 2.
fn thread_budget() -> Result<usize, CliError> {
    match std::env::var("GRIBOV_THREADS") {
        Ok(raw) => raw.trim().parse::<usize>().ok().filter(|&t| t >= 1).ok_or_else(|| {
            CliError::Validation(format!("GRIBOV_THREADS must be a positive integer, got '{raw}'"))
        }),
        Err(_) => Ok(std::thread::available_parallelism().map(|p| p.get()).unwrap_or(1)),
    }
}

/// Solves the assembled spec at `trunc` and `ceil(growth * trunc)` (on two
/// threads when the budget allows) and flags stabilized eigenvalues.
fn solve_pair(
    spec: &BlockSpec,
    trunc: usize,
    growth: f64,
    rel_tol: f64,
) -> Result<(SpectrumResult, usize), CliError> {
    let n_big = ((growth * trunc as f64).ceil() as usize).max(trunc + 1);
    let solve = |n: usize| -> Result<SpectrumResult, Error> { eigenvalues(&assemble(spec, n)?) };
    let (small, large) = if thread_budget()? >= 2 {
        std::thread::scope(|s| {
            let big = s.spawn(|| solve(n_big));
            let small = solve(trunc);
            (small, big.join().expect("solver thread panicked"))
        })
    } else {
        (solve(trunc), solve(n_big))
    };
    let mut small = small?;
    flag_stabilized(&mut small, &large?, rel_tol);
    Ok((small, n_big))
}

#[derive(Debug, Serialize)]
struct SpectrumReport {
    #[serde(flatten)]
    header: Header,
    stabilized_count: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    regions: Vec<RegionReport>,
    eigenvalues: Vec<EigenvalueRow>,
}

fn spectrum_command(args: SolveArgs, with_enclosure: bool) -> Result<(), CliError> {
    check_solve_args(args.trunc, args.growth, args.rel_tol)?;
    check_positive(args.alpha_margin, "alpha-margin")?;
    let (doc, spec) = load_spec(&args.spec)?;
    let (spectrum, n_big) = solve_pair(&spec, args.trunc, args.growth, args.rel_tol)?;

    let literal =
        match gribov_region_with(&spec, args.alpha_margin, &spectrum, SectorExponents::TheoremLiteral) {
            Ok(r) => Some(r),
            // mixed-sign couplings: the spectrum itself is still meaningful
            Err(Error::UnsupportedConfiguration(_)) if !with_enclosure => None,
            Err(e) => return Err(e.into()),
        };
    let mut regions = Vec::new();
    if let Some(r) = &literal {
        regions.push(RegionReport::new("theorem-literal", r, &spectrum));
    }
    if with_enclosure {
        let scaled = gribov_region_with(
            &spec,
            args.alpha_margin,
            &spectrum,
            SectorExponents::CertificateScaled,
        )?;
        regions.push(RegionReport::new("certificate-scaled", &scaled, &spectrum));
    }

    let command = if with_enclosure { "enclosure" } else { "spectrum" };
    let rows = eigenvalue_rows(&spectrum, literal.as_ref());
    let report = SpectrumReport {
        header: Header::new(command, vec![args.trunc, n_big], Some(doc)),
        stabilized_count: spectrum.stabilized.iter().filter(|&&s| s).count(),
        regions,
        eigenvalues: rows,
    };
    match args.output.format {
        Format::Json => write_output(args.output.out.as_deref(), &to_json(&report)),
        Format::Csv => {
            write_output(args.output.out.as_deref(), &eigenvalues_csv(&report.eigenvalues))
        }
    }
}

#[derive(Debug, Serialize)]
struct TermOut {
    exponent: f64,
    bound: f64,
}

fn terms_out(cert: &SubordinationCertificate) -> Vec<TermOut> {
    cert.terms().iter().map(|t| TermOut { exponent: t.exponent, bound: t.bound }).collect()
}

#[derive(Debug, Serialize)]
struct EntryVerification {
    i: usize,
    j: usize,
    terms: Vec<TermOut>,
    min_slack: f64,
    argmin_index: usize,
    pass: bool,
    vectors_checked: usize,
}

#[derive(Debug, Serialize)]
struct BlockVerification {
    term_count: usize,
    bound_sum: f64,
    min_slack: f64,
    argmin_index: usize,
    pass: bool,
    vectors_checked: usize,
}

#[derive(Debug, Serialize)]
struct SubordinationReport {
    #[serde(flatten)]
    header: Header,
    entries: Vec<EntryVerification>,
    block: BlockVerification,
    all_pass: bool,
}

fn trial_vectors(dim: usize, random_count: usize) -> Vec<Vec<Complex64>> {
    let mut trials: Vec<Vec<Complex64>> = (0..dim)
        .map(|k| {
            let mut v = vec![Complex64::ZERO; dim];
            v[k] = Complex64::ONE;
            v
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(TRIAL_SEED);
    trials.extend((0..random_count).map(|_| {
        (0..dim)
            .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
            .collect::<Vec<_>>()
    }));
    trials
}

fn scaled_g(n: usize, factor: f64) -> Result<BandedComplexMatrix, Error> {
    let g = build_g(n)?;
    let mut out = BandedComplexMatrix::zeros(n, n, 0, 0)?;
    out.add_scaled_assign(&g, Complex64::new(factor, 0.0))?;
    Ok(out)
}

fn subordination_command(args: SubordinationArgs) -> Result<(), CliError> {
    if args.trunc < 3 {
        return Err(CliError::Validation(format!("trunc must be at least 3, got {}", args.trunc)));
    }
    let (doc, spec) = load_spec(&args.spec)?;

    // per-entry inequalities in exact-image form
    let trials = trial_vectors(args.trunc, args.trials);
    let mut entries = Vec::new();
    let mut all_pass = true;
    for (i, j) in spec.omega() {
        let cert = entry_certificate(&spec, i, j, true)?;
        let params = spec.entry(i, j);
        let pomeron = gribov_core::bargmann::PomeronParams {
            lambda2: 0.0,
            lambda1: params.lambda1,
            mu: params.mu,
            lambda: params.lambda,
            beta: params.beta,
        };
        let t = gribov_core::bargmann::build_scalar_gribov(args.trunc, &pomeron, true)?;
        let s = scaled_g(args.trunc, spec.diag_coupling(j))?;
        let rep = verify_subordination(&t, &s, &cert, &trials)?;
        all_pass &= rep.pass;
        entries.push(EntryVerification {
            i,
            j,
            terms: terms_out(&cert),
            min_slack: rep.min_slack,
            argmin_index: rep.argmin_index,
            pass: rep.pass,
            vectors_checked: rep.vectors_checked,
        });
    }

    // merged certificate against the block diagonal
    let cert = gribov_certificate(&spec, true)?;
    let d = split(&spec, args.trunc)?.0;
    let r = assemble_off_part(&spec, args.trunc)?;
    let block_trials = trial_vectors(spec.n * args.trunc, args.trials);
    let rep = verify_subordination(&r, &d, &cert, &block_trials)?;
    all_pass &= rep.pass;
    let block = BlockVerification {
        term_count: cert.len(),
        bound_sum: cert.bound_sum(),
        min_slack: rep.min_slack,
        argmin_index: rep.argmin_index,
        pass: rep.pass,
        vectors_checked: rep.vectors_checked,
    };

    let report = SubordinationReport {
        header: Header::new("subordination", vec![args.trunc], Some(doc)),
        entries,
        block,
        all_pass,
    };
    match args.output.format {
        Format::Json => write_output(args.output.out.as_deref(), &to_json(&report)),
        Format::Csv => {
            let mut pairs = Vec::new();
            for e in &report.entries {
                let key = format!("entry_{}_{}", e.i, e.j);
                pairs.push((format!("{key}_min_slack"), format!("{}", e.min_slack)));
                pairs.push((format!("{key}_pass"), format!("{}", e.pass)));
            }
            pairs.push(("block_min_slack".into(), format!("{}", report.block.min_slack)));
            pairs.push(("block_pass".into(), format!("{}", report.block.pass)));
            pairs.push(("all_pass".into(), format!("{}", report.all_pass)));
            write_output(args.output.out.as_deref(), &key_value_csv(&pairs))
        }
    }
}

#[derive(Debug, Serialize)]
struct MarginOut {
    value: f64,
    satisfied: bool,
}

#[derive(Debug, Serialize)]
struct SelfAdjointOut {
    applicable: bool,
    value: f64,
    satisfied: bool,
}

#[derive(Debug, Serialize)]
struct ConditionsReport {
    #[serde(flatten)]
    header: Header,
    closedness: MarginOut,
    selfadjoint: SelfAdjointOut,
    /// Paired entries match (with opposite triple couplings), so the
    /// assembled matrix is Hermitian at any truncation.
    spec_symmetric: bool,
    assembled_hermitian_defect: f64,
    assembled_hermitian: bool,
}

fn conditions_command(args: ConditionsArgs) -> Result<(), CliError> {
    if args.trunc < 3 {
        return Err(CliError::Validation(format!("trunc must be at least 3, got {}", args.trunc)));
    }
    let (doc, spec) = load_spec(&args.spec)?;
    let (value, satisfied) = closedness_margin(&spec);
    let sa = selfadjointness_check(&spec);
    let m = assemble(&spec, args.trunc)?;
    let defect = m.hermitian_defect()?;
    let report = ConditionsReport {
        header: Header::new("conditions", vec![args.trunc], Some(doc)),
        closedness: MarginOut { value, satisfied },
        selfadjoint: SelfAdjointOut { applicable: sa.applicable, value: sa.value, satisfied: sa.satisfied },
        spec_symmetric: spec.is_hermitian_spec(),
        assembled_hermitian_defect: defect,
        assembled_hermitian: m.is_hermitian(1e-13),
    };
    match args.output.format {
        Format::Json => write_output(args.output.out.as_deref(), &to_json(&report)),
        Format::Csv => {
            let pairs = vec![
                ("closedness_value".to_string(), format!("{}", report.closedness.value)),
                ("closedness_satisfied".to_string(), format!("{}", report.closedness.satisfied)),
                ("selfadjoint_applicable".to_string(), format!("{}", report.selfadjoint.applicable)),
                ("selfadjoint_value".to_string(), format!("{}", report.selfadjoint.value)),
                ("selfadjoint_satisfied".to_string(), format!("{}", report.selfadjoint.satisfied)),
                ("spec_symmetric".to_string(), format!("{}", report.spec_symmetric)),
                ("assembled_hermitian".to_string(), format!("{}", report.assembled_hermitian)),
            ];
            write_output(args.output.out.as_deref(), &key_value_csv(&pairs))
        }
    }
}

#[derive(Debug, Serialize)]
struct CountingRowOut {
    k: usize,
    radius: f64,
    ratio: f64,
    /// Eigensolver cross-check: exactly `k` eigenvalues within `radius`.
    count_check: bool,
}

#[derive(Debug, Serialize)]
struct CountingReport {
    #[serde(flatten)]
    header: Header,
    lambda2: f64,
    limit: f64,
    rows: Vec<CountingRowOut>,
}

fn counting_command(args: CountingArgs) -> Result<(), CliError> {
    if args.trunc < 4 {
        return Err(CliError::Validation(format!(
            "counting needs trunc at least 4, got {}",
            args.trunc
        )));
    }
    let (doc, spec) = load_spec(&args.spec)?;
    let lambda2 = spec.diag_coupling(1);
    if lambda2 <= 0.0 {
        return Err(CliError::Validation(format!(
            "counting asymptotics need a positive first diagonal coupling, got {lambda2}"
        )));
    }
    let rows = counting_asymptotics(lambda2, args.trunc - 1).map_err(CliError::from)?;
    let spectrum = eigenvalues(&scaled_g(args.trunc, lambda2).map_err(CliError::from)?)
        .map_err(CliError::from)?;
    let rows: Vec<CountingRowOut> = rows
        .into_iter()
        .map(|r| CountingRowOut {
            k: r.k,
            radius: r.radius,
            ratio: r.ratio,
            count_check: counting(&spectrum, r.radius) == r.k,
        })
        .collect();
    let report = CountingReport {
        header: Header::new("counting", vec![args.trunc], Some(doc)),
        lambda2,
        limit: lambda2.powf(-1.0 / 3.0),
        rows,
    };
    match args.output.format {
        Format::Json => write_output(args.output.out.as_deref(), &to_json(&report)),
        Format::Csv => {
            let mut out = String::from("k,radius,ratio,count_check\n");
            for r in &report.rows {
                out.push_str(&format!("{},{},{},{}\n", r.k, r.radius, r.ratio, r.count_check));
            }
            write_output(args.output.out.as_deref(), &out)
        }
    }
}

#[derive(Debug, Serialize)]
struct RieszReport {
    #[serde(flatten)]
    header: Header,
    stabilized_count: usize,
    /// Condition number of the eigenvector matrix; absent when a cluster
    /// is defective at working precision (infinite conditioning).
    eigvec_condition: Option<f64>,
    projector_condition: f64,
    gap_factor: f64,
    max_certificate_exponent: f64,
    /// One-based eigenvalue indices, grouped into parentheses.
    clusters: Vec<Vec<usize>>,
}

fn riesz_command(args: RieszArgs) -> Result<(), CliError> {
    check_solve_args(args.trunc, args.growth, args.rel_tol)?;
    check_positive(args.gap_factor, "gap-factor")?;
    let (doc, spec) = load_spec(&args.spec)?;
    let (spectrum, n_big) = solve_pair(&spec, args.trunc, args.growth, args.rel_tol)?;
    let m = assemble(&spec, args.trunc).map_err(CliError::from)?;

    let max_exponent = gribov_certificate(&spec, false).map_err(CliError::from)?.max_exponent();
    let clusters =
        cluster_parentheses(&spectrum, args.gap_factor, max_exponent).map_err(CliError::from)?;
    let kappa_v = eigenbasis_condition(&m).map_err(CliError::from)?;
    let kappa_w = riesz_constant(&m, &spectrum, &clusters).map_err(CliError::from)?;

    let report = RieszReport {
        header: Header::new("riesz", vec![args.trunc, n_big], Some(doc)),
        stabilized_count: spectrum.stabilized.iter().filter(|&&s| s).count(),
        eigvec_condition: kappa_v.is_finite().then_some(kappa_v),
        projector_condition: kappa_w,
        gap_factor: args.gap_factor,
        max_certificate_exponent: max_exponent,
        clusters: clusters.iter().map(|c| c.iter().map(|i| i + 1).collect()).collect(),
    };
    match args.output.format {
        Format::Json => write_output(args.output.out.as_deref(), &to_json(&report)),
        Format::Csv => {
            let pairs = vec![
                (
                    "eigvec_condition".to_string(),
                    report.eigvec_condition.map_or("inf".to_string(), |v| format!("{v}")),
                ),
                ("projector_condition".to_string(), format!("{}", report.projector_condition)),
                ("cluster_count".to_string(), format!("{}", report.clusters.len())),
                ("stabilized_count".to_string(), format!("{}", report.stabilized_count)),
            ];
            write_output(args.output.out.as_deref(), &key_value_csv(&pairs))
        }
    }
}

#[derive(Debug, Serialize)]
struct ExampleReport {
    #[serde(flatten)]
    header: Header,
    n: usize,
    a: f64,
    lambda2: f64,
    gamma: f64,
    condition_sum: f64,
    condition_satisfied: bool,
    tail_sum: f64,
    /// The tail stays below 7/18 whenever the hypotheses hold.
    tail_bound: f64,
    tail_within_bound: bool,
    hypothesis_met: bool,
}

fn example_command(args: ExampleArgs) -> Result<(), CliError> {
    let result = decay_example(args.n, args.a, args.lambda2).map_err(CliError::from)?;
    let tail_bound = 7.0 / 18.0;
    let report = ExampleReport {
        header: Header::new("example-p6", vec![], None),
        n: args.n,
        a: args.a,
        lambda2: args.lambda2,
        gamma: result.gamma,
        condition_sum: result.condition_sum,
        condition_satisfied: result.satisfied,
        tail_sum: result.tail_sum,
        tail_bound,
        tail_within_bound: result.tail_sum < tail_bound,
        hypothesis_met: result.hypothesis_met,
    };
    match args.output.format {
        Format::Json => write_output(args.output.out.as_deref(), &to_json(&report)),
        Format::Csv => {
            let pairs = vec![
                ("gamma".to_string(), format!("{}", report.gamma)),
                ("condition_sum".to_string(), format!("{}", report.condition_sum)),
                ("condition_satisfied".to_string(), format!("{}", report.condition_satisfied)),
                ("tail_sum".to_string(), format!("{}", report.tail_sum)),
                ("tail_within_bound".to_string(), format!("{}", report.tail_within_bound)),
                ("hypothesis_met".to_string(), format!("{}", report.hypothesis_met)),
            ];
            write_output(args.output.out.as_deref(), &key_value_csv(&pairs))
        }
    }
}
