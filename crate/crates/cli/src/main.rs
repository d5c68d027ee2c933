use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{json, Value};

use topolab_core::checkers::{
    composition_check_with, is_admissible, refute_splitting_with, theorem_suite_with, SplitOptions,
    SuiteOptions,
};
use topolab_core::duality::{t_of_tau, tau_of_t};
use topolab_core::explorer::{question_search_with, Conclusion, QuestionId};
use topolab_core::finspace::{
    enumerate_topologies_with, isomorphism_classes, local_profile, separation_profile,
};
use topolab_core::fntop::{named_function_topology, FnKind};
use topolab_core::hypertop::{
    compact_subbasis_topology, scott, strong_scott, strong_z_scott, z_scott,
};
use topolab_core::json::{DualFile, FnTopologyFile, HyperFile, SpaceFile};
use topolab_core::mapspace::enumerate_continuous;
use topolab_core::par::Execution;
use topolab_core::report::VerdictReport;
use topolab_core::{Budget, FinSpace, TopoError};

#[derive(Parser)]
#[command(name = "topolab")]
#[command(
    about = "Finite topology laboratory: function-space topologies, admissibility and splitting"
)]
#[command(version)]
struct Cli {
    /// Run every search on one thread
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Finite spaces
    #[command(subcommand)]
    Space(SpaceCmd),
    /// Continuous maps between finite spaces
    #[command(subcommand)]
    Maps(MapsCmd),
    /// Topologies on C(Y,Z) and on the open-set lattice of Y
    #[command(subcommand)]
    Topo(TopoCmd),
    /// Admissibility, splitting, composition and theorem suites
    #[command(subcommand)]
    Check(CheckCmd),
    /// Dual topologies between C(Y,Z) and O_Z(Y)
    #[command(subcommand)]
    Dual(DualCmd),
    /// Bounded searches for the open questions
    #[command(subcommand)]
    Search(SearchCmd),
}

#[derive(Args)]
struct Output {
    /// Write JSON here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum SpaceCmd {
    /// Check the topology axioms and echo the canonical form
    Validate {
        file: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Enumerate all topologies on N labeled points
    Enum {
        #[arg(long)]
        points: usize,
        /// Keep one representative per homeomorphism class
        #[arg(long)]
        classes: bool,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Subcommand)]
enum MapsCmd {
    /// List C(Y,Z) in canonical order
    Enum {
        #[arg(long)]
        y: PathBuf,
        #[arg(long)]
        z: PathBuf,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Subcommand)]
enum TopoCmd {
    /// Build a named topology
    Build {
        /// co|coZ|isbell|sisbell|t1z|t1sz|scott|sscott|zscott|zsscott|ksubbasis
        #[arg(long)]
        kind: String,
        #[arg(long)]
        y: PathBuf,
        #[arg(long)]
        z: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Subcommand)]
enum CheckCmd {
    /// Continuity of evaluation for a topology on C(Y,Z)
    Admissible {
        #[arg(long)]
        topology: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Search for a space X refuting splitting
    Splitting {
        #[arg(long)]
        topology: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_x: usize,
        /// Try every labeled X instead of one per homeomorphism class
        #[arg(long)]
        no_reduce: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Continuity of composition C(X,Y) x C(Y,Z) -> C(X,Z)
    Compose {
        #[arg(long)]
        x: PathBuf,
        #[arg(long)]
        y: PathBuf,
        #[arg(long)]
        z: PathBuf,
        /// Three named kinds, comma separated
        #[arg(long, default_value = "coZ,coZ,coZ")]
        kinds: String,
        #[command(flatten)]
        output: Output,
    },
    /// Run the exhaustive theorem suites
    Theorems {
        #[arg(long, default_value_t = 3)]
        max_y: usize,
        #[arg(long, default_value_t = 2)]
        max_z: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Subcommand)]
enum DualCmd {
    /// The dual topology on O_Z(Y) of a topology on C(Y,Z)
    TauOfT {
        #[arg(long)]
        topology: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// The topology on C(Y,Z) induced by a topology on O_Z(Y)
    TOfTau {
        #[arg(long)]
        dual: PathBuf,
        #[arg(long)]
        y: PathBuf,
        #[arg(long)]
        z: PathBuf,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Subcommand)]
enum SearchCmd {
    /// Run the probe for one question
    Question {
        #[arg(long)]
        id: String,
        #[arg(long, default_value_t = 3)]
        max_y: usize,
        #[arg(long, default_value_t = 2)]
        max_z: usize,
        #[command(flatten)]
        output: Output,
    },
    /// List every registered question
    List {
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Debug)]
enum CliError {
    Topo(TopoError),
    Io(PathBuf, std::io::Error),
    Parse(PathBuf, serde_json::Error),
    Usage(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Topo(e) => write!(f, "{e}"),
            CliError::Io(p, e) => write!(f, "{}: {e}", p.display()),
            CliError::Parse(p, e) => write!(f, "{}: {e}", p.display()),
            CliError::Usage(m) => f.write_str(m),
        }
    }
}

impl From<TopoError> for CliError {
    fn from(e: TopoError) -> Self {
        CliError::Topo(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn read_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(path.to_owned(), e))?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse(path.to_owned(), e))
}

fn read_space(path: &Path) -> CliResult<FinSpace> {
    Ok(read_json::<SpaceFile>(path)?.to_space()?)
}

fn emit<T: Serialize>(value: &T, output: &Output) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value).expect("outputs serialize");
    text.push('\n');
    match &output.out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Io(path.clone(), e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_report(report: &VerdictReport, output: &Output) -> CliResult<u8> {
    emit(report, output)?;
    Ok(report.exit_code() as u8)
}

fn parse_kind(s: &str) -> CliResult<FnKind> {
    s.trim()
        .parse::<FnKind>()
        .map_err(|_| CliError::Usage(format!("unknown topology kind `{s}`")))
}

fn need_z(z: &Option<PathBuf>, kind: &str) -> CliResult<FinSpace> {
    match z {
        Some(p) => read_space(p),
        None => Err(CliError::Usage(format!(
            "--z is required for kind `{kind}`"
        ))),
    }
}

fn run(cli: Cli) -> CliResult<u8> {
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    match cli.command {
        Command::Space(SpaceCmd::Validate { file, output }) => {
            let parsed: SpaceFile = read_json(&file)?;
            let x = parsed.to_space()?;
            let mut canonical = SpaceFile::from_space(&x);
            canonical.name = parsed.name;
            emit(
                &json!({
                    "valid": true,
                    "space": canonical,
                    "separation": separation_profile(&x),
                    "local": local_profile(&x),
                }),
                &output,
            )?;
        }
        Command::Space(SpaceCmd::Enum {
            points,
            classes,
            output,
        }) => {
            let mut spaces = enumerate_topologies_with(points, exec)?;
            if classes {
                spaces = isomorphism_classes(&spaces);
            }
            let files: Vec<SpaceFile> = spaces.iter().map(SpaceFile::from_space).collect();
            emit(
                &json!({"points": points, "count": files.len(), "spaces": files}),
                &output,
            )?;
        }
        Command::Maps(MapsCmd::Enum { y, z, output }) => {
            let (y, z) = (read_space(&y)?, read_space(&z)?);
            let maps = enumerate_continuous(&y, &z)?;
            emit(
                &json!({
                    "y": SpaceFile::from_space(&y),
                    "z": SpaceFile::from_space(&z),
                    "count": maps.len(),
                    "maps": maps.tables(),
                }),
                &output,
            )?;
        }
        Command::Topo(TopoCmd::Build { kind, y, z, output }) => {
            let y = read_space(&y)?;
            let hyper = match kind.as_str() {
                "scott" => Some(scott(&y)?),
                "sscott" => Some(strong_scott(&y)?),
                "ksubbasis" => Some(compact_subbasis_topology(&y)?),
                "zscott" => Some(z_scott(&y, &need_z(&z, &kind)?)?),
                "zsscott" => Some(strong_z_scott(&y, &need_z(&z, &kind)?)?),
                _ => None,
            };
            match hyper {
                Some(h) => emit(&HyperFile::from_hyperspace(&h), &output)?,
                None => {
                    let k = parse_kind(&kind)?;
                    if k == FnKind::Custom {
                        return Err(CliError::Usage("`custom` is not a buildable kind".into()));
                    }
                    let t = named_function_topology(k, &y, &need_z(&z, &kind)?)?;
                    emit(&FnTopologyFile::from_topology(&t), &output)?;
                }
            }
        }
        Command::Check(CheckCmd::Admissible { topology, output }) => {
            let t = read_json::<FnTopologyFile>(&topology)?.to_topology()?;
            return emit_report(&is_admissible(&t), &output);
        }
        Command::Check(CheckCmd::Splitting {
            topology,
            max_x,
            no_reduce,
            output,
        }) => {
            let t = read_json::<FnTopologyFile>(&topology)?.to_topology()?;
            let opts = SplitOptions {
                max_x,
                reduce: !no_reduce,
                exec,
            };
            return emit_report(&refute_splitting_with(&t, opts)?, &output);
        }
        Command::Check(CheckCmd::Compose {
            x,
            y,
            z,
            kinds,
            output,
        }) => {
            let parsed = kinds
                .split(',')
                .map(parse_kind)
                .collect::<CliResult<Vec<_>>>()?;
            let kinds: [FnKind; 3] = parsed
                .try_into()
                .map_err(|_| CliError::Usage("--kinds takes exactly three kinds".into()))?;
            let (x, y, z) = (read_space(&x)?, read_space(&y)?, read_space(&z)?);
            let report = composition_check_with(&x, &y, &z, kinds, &Budget::default(), exec)?;
            return emit_report(&report, &output);
        }
        Command::Check(CheckCmd::Theorems {
            max_y,
            max_z,
            seed,
            output,
        }) => {
            let mut opts = SuiteOptions::new(max_y, max_z);
            opts.exec = exec;
            if let Some(seed) = seed {
                opts.seed = seed;
            }
            let reports = theorem_suite_with(&opts)?;
            emit(&reports, &output)?;
            return Ok(u8::from(reports.iter().any(VerdictReport::fails)));
        }
        Command::Dual(DualCmd::TauOfT { topology, output }) => {
            let t = read_json::<FnTopologyFile>(&topology)?.to_topology()?;
            emit(&DualFile::from_dual(&tau_of_t(&t)?), &output)?;
        }
        Command::Dual(DualCmd::TOfTau { dual, y, z, output }) => {
            let tau = read_json::<DualFile>(&dual)?.to_dual()?;
            let (y, z) = (read_space(&y)?, read_space(&z)?);
            let maps = Arc::new(enumerate_continuous(&y, &z)?);
            let t = t_of_tau(&tau, &maps)?;
            emit(&FnTopologyFile::from_topology(&t), &output)?;
        }
        Command::Search(SearchCmd::Question {
            id,
            max_y,
            max_z,
            output,
        }) => {
            let id: QuestionId = id.parse()?;
            let probe = question_search_with(id, max_y, max_z, exec)?;
            emit(&probe, &output)?;
            return Ok(u8::from(probe.conclusion == Conclusion::WitnessFound));
        }
        Command::Search(SearchCmd::List { output }) => {
            let list: Vec<Value> = QuestionId::ALL
                .iter()
                .map(|q| {
                    json!({
                        "id": q,
                        "question": q.summary(),
                        "scope": if q.out_of_scope().is_some() { "out of scope" } else { "probe" },
                        "reason": q.out_of_scope(),
                    })
                })
                .collect();
            emit(&list, &output)?;
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
