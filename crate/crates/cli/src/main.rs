use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use osserman_core::cliffrep::{psi_reconstruct, rho7, OperatorFamily};
use osserman_core::cliffstruct::build_cliff;
use osserman_core::curvature::{jacobi_spectrum, osserman_test, AlgebraicCurvatureTensor};
use osserman_core::io;
use osserman_core::numkit::{random_orthogonal, rng_from_seed, unit_vector, vecops, ClusteredSpectrum, DenseMatrix};
use osserman_core::suite::{
    gen_corpus, merge_reports, run_suite, stream_seed, CheckRecord, CorpusKind, Status, SuiteConfig, SuiteReport,
    EXIT_FAIL, EXIT_PASS, EXIT_USAGE, SCHEMA_VERSION, SUITE_NAMES,
};
use osserman_core::{Error, Result};

#[derive(Parser)]
#[command(name = "osserman", version, about = "Verification suites for Clifford-structure curvature tensors")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Run seed; every check derives its own stream from it
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Samples per check
    #[arg(long, default_value_t = 100)]
    samples: usize,

    /// Floating-point tolerance
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,

    /// Print the JSON report on stdout instead of the text summary
    #[arg(long)]
    json: bool,

    /// Also write the JSON report to this file
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct TensorSource {
    /// Tensor JSON file
    #[arg(long, conflicts_with = "structure")]
    tensor: Option<PathBuf>,

    /// Clifford structure JSON file
    #[arg(long)]
    structure: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites
    Verify {
        #[command(flatten)]
        common: Common,

        /// Suites to run (repeatable or comma separated); all when omitted
        #[arg(long, value_delimiter = ',')]
        suite: Vec<String>,

        /// Record wall-clock time per check (makes reports non-reproducible)
        #[arg(long)]
        timings: bool,
    },
    /// Test a tensor for the Osserman property
    Osserman {
        #[command(flatten)]
        source: TensorSource,

        #[command(flatten)]
        common: Common,
    },
    /// Reconstruct the octonion identification of a seven-operator family
    Psi {
        /// Family JSON file; a seeded conjugate of the standard family when omitted
        #[arg(long)]
        family: Option<PathBuf>,

        #[command(flatten)]
        common: Common,
    },
    /// Jacobi spectrum on the orthogonal complement of a unit vector
    Spectrum {
        #[command(flatten)]
        source: TensorSource,

        /// Comma separated direction, normalized before use; seeded when omitted
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        vector: Vec<f64>,

        #[command(flatten)]
        common: Common,
    },
    /// Write reproducible JSON fixtures
    GenCorpus {
        /// cliff, tensor or connection
        #[arg(long)]
        kind: String,

        #[arg(long, default_value_t = 0)]
        seed: u64,

        /// Output directory
        #[arg(long)]
        out: PathBuf,
    },
    /// Merge JSON reports
    ReportMerge {
        /// Reports to merge
        #[arg(required = true)]
        reports: Vec<PathBuf>,

        /// Write the merged report here instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_USAGE as u8);
    }
    match run(cli.command) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE as u8)
        }
    }
}

fn configure_threads() -> Result<()> {
    let Ok(v) = std::env::var("OSSERMAN_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .map_err(|_| Error::validation(format!("OSSERMAN_THREADS must be a positive integer, got {v:?}")))?;
    if n == 0 {
        return Err(Error::validation("OSSERMAN_THREADS must be at least 1"));
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| Error::validation(e.to_string()))
}

fn config(common: &Common, suites: Vec<String>) -> SuiteConfig {
    SuiteConfig { seed: common.seed, samples: common.samples, tol: common.tol, suites, timings: false }
}

fn emit_report(report: &SuiteReport, common: &Common) -> Result<i32> {
    if let Some(path) = &common.output {
        io::write_json(path, report)?;
    }
    if common.json {
        println!("{}", report.to_json()?);
    } else {
        print!("{}", report.to_text());
    }
    Ok(report.exit_code())
}

fn load_tensor(source: &TensorSource) -> Result<AlgebraicCurvatureTensor> {
    match (&source.tensor, &source.structure) {
        (Some(p), _) => io::read_tensor(p),
        (None, Some(p)) => build_cliff(&io::read_structure(p)?),
        (None, None) => Err(Error::validation("pass --tensor or --structure")),
    }
}

fn run(command: Command) -> Result<i32> {
    match command {
        Command::Verify { common, suite, timings } => {
            let suites = if suite.is_empty() { SUITE_NAMES.iter().map(|s| s.to_string()).collect() } else { suite };
            let cfg = SuiteConfig { timings, ..config(&common, suites) };
            emit_report(&run_suite(&cfg)?, &common)
        }
        Command::Osserman { source, common } => {
            let cfg = config(&common, Vec::new());
            cfg.validate()?;
            let r = load_tensor(&source)?;
            let v = osserman_test(&r, common.samples, stream_seed(common.seed, "osserman"), common.tol)?;
            let record = CheckRecord {
                name: "osserman".into(),
                status: if v.is_osserman { Status::Pass } else { Status::Fail },
                max_residual: v.max_deviation,
                witness: v.witness.clone(),
                detail: Some(format!(
                    "reference spectrum {:?} over {} directions",
                    v.reference_spectrum.pattern(),
                    v.vectors_tested
                )),
                elapsed_ms: None,
            };
            emit_report(&SuiteReport::new(cfg, vec![record]), &common)
        }
        Command::Psi { family, common } => psi(family.as_deref(), &common),
        Command::Spectrum { source, vector, common } => spectrum(&source, &vector, &common),
        Command::GenCorpus { kind, seed, out } => {
            let kind: CorpusKind = kind.parse()?;
            for p in gen_corpus(kind, seed, &out)? {
                println!("{}", p.display());
            }
            Ok(EXIT_PASS)
        }
        Command::ReportMerge { reports, output } => {
            let loaded = reports.iter().map(|p| io::read_json(p)).collect::<Result<Vec<SuiteReport>>>()?;
            let merged = merge_reports(&loaded)?;
            match output {
                Some(p) => io::write_json(&p, &merged)?,
                None => println!("{}", merged.to_json()?),
            }
            Ok(merged.exit_code())
        }
    }
}

#[derive(Serialize)]
struct PsiOutput {
    schema_version: u32,
    status: Status,
    intertwining_residual: f64,
    base: Vec<f64>,
    psi: DenseMatrix,
}

fn psi(family: Option<&Path>, common: &Common) -> Result<i32> {
    let f: OperatorFamily = match family {
        Some(p) => io::read_family(p)?,
        None => {
            let mut rng = rng_from_seed(stream_seed(common.seed, "psi"));
            rho7(1).conjugate(&random_orthogonal(8, &mut rng))
        }
    };
    let rec = psi_reconstruct(&f)?;
    let pass = rec.intertwining_residual < common.tol;
    let out = PsiOutput {
        schema_version: SCHEMA_VERSION,
        status: if pass { Status::Pass } else { Status::Fail },
        intertwining_residual: rec.intertwining_residual,
        base: rec.base,
        psi: rec.psi,
    };
    let text = io::to_json_string(&out)?;
    if let Some(p) = &common.output {
        std::fs::write(p, format!("{text}\n"))?;
    }
    if common.json {
        println!("{text}");
    } else {
        println!("intertwining residual {:.3e}", out.intertwining_residual);
        for row in out.psi.to_rows() {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>9.5}")).collect();
            println!("{}", cells.join(" "));
        }
    }
    Ok(if pass { EXIT_PASS } else { EXIT_FAIL })
}

#[derive(Serialize)]
struct SpectrumOutput {
    schema_version: u32,
    direction: Vec<f64>,
    spectrum: ClusteredSpectrum,
}

fn spectrum(source: &TensorSource, vector: &[f64], common: &Common) -> Result<i32> {
    let r = load_tensor(source)?;
    let x = if vector.is_empty() {
        unit_vector(r.dim(), &mut rng_from_seed(stream_seed(common.seed, "spectrum")))
    } else {
        if vector.len() != r.dim() {
            return Err(Error::validation(format!("--vector needs {} entries", r.dim())));
        }
        vecops::normalized(vector).ok_or_else(|| Error::validation("--vector must be nonzero"))?
    };
    let s = jacobi_spectrum(&r, &x, 1e-8)?;
    let out = SpectrumOutput { schema_version: SCHEMA_VERSION, direction: x, spectrum: s };
    let text = io::to_json_string(&out)?;
    if let Some(p) = &common.output {
        std::fs::write(p, format!("{text}\n"))?;
    }
    if common.json {
        println!("{text}");
    } else {
        for (value, mult) in out.spectrum.pattern() {
            println!("{value:>14.9}  x{mult}");
        }
    }
    Ok(EXIT_PASS)
}
