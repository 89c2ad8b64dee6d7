use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use tpfactor::bruhat::{double_cell_of, BruhatError};
use tpfactor::identities::fuzz_parallel;
use tpfactor::linalg::{parse_scalar, ExactScalar, LinalgError};
use tpfactor::positivity::{
    chamber_criterion_witness, chamber_set_criterion_witness, family_witness, fekete_families, gl3_label, tnn_witness,
    tp_witness, PositivityError, Witness,
};
use tpfactor::product::{product, ProductError};
use tpfactor::schemes::{enumerate_isotopy_types, render_ascii, render_svg};
use tpfactor::solver::{solve, SolverError};
use tpfactor::twist::{twist, TwistError};
use tpfactor::{FactorizationScheme, Matrix, Permutation};

#[derive(Parser)]
#[command(name = "tpfactor", version, about = "Exact factorization and total positivity tests for GL_n")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Factorization parameters of a matrix along a scheme.
    Factor {
        #[arg(long)]
        scheme: String,
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Product of elementary matrices along a scheme.
    Product {
        #[arg(long)]
        scheme: String,
        #[arg(long)]
        params: PathBuf,
    },
    /// Twist of a matrix in G^{u,v}.
    Twist {
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Double Bruhat cell of a matrix.
    Cell {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Positivity test with a failing minor as witness.
    Check {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        scheme: Option<String>,
        #[arg(long, value_enum, default_value_t = Mode::All)]
        mode: Mode,
    },
    /// Isotopy types of schemes of a given type.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Draw the pseudoline arrangement of a scheme.
    Render {
        #[arg(long)]
        scheme: String,
        #[arg(long, value_enum)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Random checks of the three-term identities.
    Fuzz {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    /// all minors positive
    All,
    /// all minors nonnegative
    Tnn,
    Chamber,
    Chamberset,
    Fekete1,
    Fekete2,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Ascii,
    Svg,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Math(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Math(_) => 3,
            CliError::Io(_) => 4,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Invalid(_) => "validation",
            CliError::Math(_) => "precondition",
            CliError::Io(_) => "io",
        }
    }
}

fn invalid(e: impl ToString) -> CliError {
    CliError::Invalid(e.to_string())
}

fn math(e: impl ToString) -> CliError {
    CliError::Math(e.to_string())
}

impl From<LinalgError> for CliError {
    fn from(e: LinalgError) -> Self {
        match e {
            LinalgError::Singular | LinalgError::NotInG0 { .. } => math(e),
            _ => invalid(e),
        }
    }
}

impl From<BruhatError> for CliError {
    fn from(e: BruhatError) -> Self {
        match e {
            BruhatError::Singular => math(e),
            _ => invalid(e),
        }
    }
}

impl From<TwistError> for CliError {
    fn from(e: TwistError) -> Self {
        match e {
            TwistError::Bruhat(b) => b.into(),
            _ => math(e),
        }
    }
}

impl From<SolverError> for CliError {
    fn from(e: SolverError) -> Self {
        match e {
            SolverError::Twist(t) => t.into(),
            SolverError::ArityMismatch { .. } => invalid(e),
            _ => math(e),
        }
    }
}

impl From<ProductError> for CliError {
    fn from(e: ProductError) -> Self {
        match e {
            ProductError::ArityMismatch { .. } => invalid(e),
            _ => math(e),
        }
    }
}

impl From<PositivityError> for CliError {
    fn from(e: PositivityError) -> Self {
        match e {
            PositivityError::Bruhat(b) => b.into(),
            PositivityError::WrongCell { .. } => math(e),
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    serde_json::from_str(&read(path)?).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn read_matrix(path: &Path) -> Result<Matrix, CliError> {
    Ok(Matrix::from_json(&read_json(path)?)?)
}

/// A scheme given inline, or the path of a file holding one.
fn read_scheme(arg: &str) -> Result<FactorizationScheme, CliError> {
    let path = Path::new(arg);
    let text = if path.is_file() { read(path)? } else { arg.to_string() };
    FactorizationScheme::parse(text.trim()).map_err(invalid)
}

fn read_params(path: &Path) -> Result<Vec<ExactScalar>, CliError> {
    let value = read_json(path)?;
    let items = value
        .get("t")
        .and_then(Value::as_array)
        .ok_or_else(|| invalid("parameter file needs a \"t\" array"))?;
    items
        .iter()
        .map(|item| match item {
            Value::String(s) => parse_scalar(s),
            Value::Number(n) => parse_scalar(&n.to_string()),
            other => Err(LinalgError::BadScalar(other.to_string())),
        })
        .collect::<Result<_, _>>()
        .map_err(invalid)
}

fn read_perm(text: &str) -> Result<Permutation, CliError> {
    text.parse().map_err(invalid)
}

fn same_size(x: &Matrix, n: usize) -> Result<(), CliError> {
    if x.n() != n {
        return Err(invalid(format!("matrix is {0}x{0} but the scheme is for n = {n}", x.n())));
    }
    Ok(())
}

fn verdict(witness: Option<Witness>) -> Value {
    json!({
        "verdict": witness.is_none(),
        "witness": witness.map_or(Value::Null, |w| w.to_json()),
    })
}

fn minor_json(m: &(tpfactor::IndexSet, tpfactor::IndexSet)) -> Value {
    json!([m.0.as_slice(), m.1.as_slice()])
}

enum Output {
    Json(Value),
    Text(String),
}

fn run(command: Command) -> Result<Output, CliError> {
    let out = match command {
        Command::Factor { scheme, matrix } => {
            let s = read_scheme(&scheme)?;
            let x = read_matrix(&matrix)?;
            same_size(&x, s.n())?;
            let t = solve(&s, &x)?;
            Output::Json(json!({
                "t": t.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                "scheme": s.to_string(),
                "cell": { "u": s.u().to_string(), "v": s.v().to_string() },
            }))
        }
        Command::Product { scheme, params } => {
            let s = read_scheme(&scheme)?;
            let t = read_params(&params)?;
            Output::Json(product(&s, &t)?.to_json())
        }
        Command::Twist { u, v, matrix } => {
            let (u, v) = (read_perm(&u)?, read_perm(&v)?);
            let x = read_matrix(&matrix)?;
            same_size(&x, u.n())?;
            same_size(&x, v.n())?;
            Output::Json(twist(&x, &u, &v)?.to_json())
        }
        Command::Cell { matrix } => {
            let (u, v) = double_cell_of(&read_matrix(&matrix)?)?;
            Output::Json(json!({ "u": u.to_string(), "v": v.to_string() }))
        }
        Command::Check { matrix, scheme, mode } => {
            let x = read_matrix(&matrix)?;
            let scheme = scheme.as_deref().map(read_scheme).transpose()?;
            if let Some(s) = &scheme {
                same_size(&x, s.n())?;
            }
            let witness = match mode {
                Mode::All => tp_witness(&x),
                Mode::Tnn => tnn_witness(&x),
                Mode::Chamber => {
                    let s = scheme.ok_or_else(|| invalid("--mode chamber needs --scheme"))?;
                    chamber_criterion_witness(&s, &x)?
                }
                Mode::Chamberset => {
                    let (u, v) = match &scheme {
                        Some(s) => (s.u().clone(), s.v().clone()),
                        None => double_cell_of(&x)?,
                    };
                    chamber_set_criterion_witness(&u, &v, &x)?
                }
                Mode::Fekete1 => family_witness(&x, &fekete_families(x.n()).0),
                Mode::Fekete2 => family_witness(&x, &fekete_families(x.n()).1),
            };
            Output::Json(verdict(witness))
        }
        Command::Enumerate { n, u, v, dot } => {
            let (u, v) = (read_perm(&u)?, read_perm(&v)?);
            if u.n() != n || v.n() != n {
                return Err(invalid(format!("--u and --v must be permutations of 1..{n}")));
            }
            let graph = enumerate_isotopy_types(&u, &v);
            let gl3 = n == 3 && u == Permutation::longest_element(3) && v == u;
            if let Some(path) = dot {
                let text = if gl3 {
                    graph.to_dot_with(|node| gl3_label(&node.family))
                } else {
                    graph.to_dot()
                };
                fs::write(&path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            }
            let nodes: Vec<Value> = graph
                .nodes
                .iter()
                .map(|node| {
                    let mut entry = json!({
                        "scheme": node.representative.to_string(),
                        "family": node.family.iter().map(minor_json).collect::<Vec<_>>(),
                    });
                    if gl3 {
                        entry["label"] = json!(gl3_label(&node.family));
                    }
                    entry
                })
                .collect();
            Output::Json(json!({
                "node_count": graph.node_count(),
                "edge_count": graph.edge_count(),
                "connected": graph.is_connected(),
                "common": graph.common_minors().iter().map(minor_json).collect::<Vec<_>>(),
                "nodes": nodes,
                "edges": graph.edges,
            }))
        }
        Command::Render { scheme, format, out } => {
            let s = read_scheme(&scheme)?;
            let text = match format {
                Format::Ascii => render_ascii(&s),
                Format::Svg => render_svg(&s),
            };
            match out {
                Some(path) => {
                    fs::write(&path, &text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
                    Output::Json(json!({ "written": path.display().to_string() }))
                }
                None => Output::Text(text),
            }
        }
        Command::Fuzz { n, trials, seed } => {
            if !(1..=6).contains(&n) {
                return Err(invalid("--n must lie in 1..=6"));
            }
            Output::Json(fuzz_parallel(n, trials, seed).to_json())
        }
    };
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Output::Json(v)) => {
            println!("{v}");
            ExitCode::SUCCESS
        }
        Ok(Output::Text(t)) => {
            print!("{t}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            println!("{}", json!({ "error": { "kind": e.kind(), "message": e.to_string() } }));
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
