//! Command implementations behind the `cusp` binary: document loading,
//! dispatch, and report formatting.

pub mod docs;
pub mod emit;

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::Serialize;
use thiserror::Error as ThisError;

use cusp_core::{embedding, moduli, CuspAlgebra, Error, Tolerance};

use docs::{
    CanonicalDocument, ConnectionDocument, DecompositionDocument, JetDocument, ModuliDocument,
};
use emit::Axis;

#[derive(Parser, Debug)]
#[command(name = "cusp", version, about = "Cusp algebra toolkit")]
pub struct Cli {
    /// Comparison tolerance applied to coefficients, pivots, and memberships.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tolerance: f64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the invariants of the algebra cut out by a connection document.
    Invariants { connection: PathBuf },
    /// Emit the moduli parameters and orbit representative of a simple cusp algebra.
    Canonical { connection: PathBuf },
    /// Decide unimodular equivalence of two moduli documents.
    Equiv { first: PathBuf, second: PathBuf },
    /// Transport a connection document along a coordinate change jet.
    Pushforward { connection: PathBuf, psi: PathBuf },
    /// Compute the embedding pair of a connection or moduli document.
    Embed {
        input: PathBuf,
        /// Number of radial rings in the rendered grid.
        #[arg(long, default_value_t = 64)]
        radial_steps: usize,
        /// Number of angle samples per ring.
        #[arg(long, default_value_t = 256)]
        angular_steps: usize,
        /// Write the rendered samples to an SVG figure.
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Write the rendered samples to a CSV table.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Coordinates plotted in the SVG, one of re/im per axis.
        #[arg(long, default_value = "re,re")]
        axes: String,
    },
    /// Split a member jet over the primitive of the algebra.
    Decompose { connection: PathBuf, member: PathBuf },
}

/// What a command wants printed on stdout, plus its exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    fn success(stdout: String) -> Self {
        Outcome { stdout, code: 0 }
    }
}

#[derive(Debug, ThisError)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Parse(String),
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(Error::NotAlgebraic) => 2,
            CliError::Core(
                Error::ConstantsNotAnnihilated | Error::NotCusp | Error::NotSimple { .. },
            ) => 3,
            _ => 1,
        }
    }
}

fn load<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("document serializes");
    text.push('\n');
    text
}

fn fmt_complex(c: Complex64) -> String {
    format!("[{:.11e}, {:.11e}]", c.re, c.im)
}

fn fmt_vector(v: &[Complex64]) -> String {
    let parts: Vec<String> = v.iter().map(|c| fmt_complex(*c)).collect();
    format!("[{}]", parts.join(", "))
}

fn algebra_from_connection_doc(
    doc: &ConnectionDocument,
    tol: Tolerance,
) -> Result<CuspAlgebra, CliError> {
    let gamma = doc.to_connection(tol).map_err(CliError::Parse)?;
    Ok(CuspAlgebra::from_connection(gamma)?)
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let tol = Tolerance {
        coeff: cli.tolerance,
        pivot_rel: cli.tolerance,
        member_rel: cli.tolerance,
    };
    match &cli.command {
        Command::Invariants { connection } => cmd_invariants(connection, tol),
        Command::Canonical { connection } => cmd_canonical(connection, tol),
        Command::Equiv { first, second } => cmd_equiv(first, second),
        Command::Pushforward { connection, psi } => cmd_pushforward(connection, psi, tol),
        Command::Embed {
            input,
            radial_steps,
            angular_steps,
            svg,
            csv,
            axes,
        } => cmd_embed(
            input,
            *radial_steps,
            *angular_steps,
            svg.as_deref(),
            csv.as_deref(),
            axes,
            tol,
        ),
        Command::Decompose { connection, member } => cmd_decompose(connection, member, tol),
    }
}

fn cmd_invariants(connection: &Path, tol: Tolerance) -> Result<Outcome, CliError> {
    let doc: ConnectionDocument = load(connection)?;
    let gamma = doc.to_connection(tol).map_err(CliError::Parse)?;
    match CuspAlgebra::from_connection(gamma) {
        Ok(a) => Ok(Outcome::success(format!(
            "cod={} ord={} con={} simple={}\nalgebraic=true\n",
            a.codimension(),
            a.order(),
            a.contact(),
            a.is_simple()
        ))),
        Err(Error::NotAlgebraic) => Ok(Outcome {
            stdout: "not algebraic\n".into(),
            code: 2,
        }),
        Err(Error::ConstantsNotAnnihilated | Error::NotCusp) => Ok(Outcome {
            stdout: "not a cusp algebra\n".into(),
            code: 3,
        }),
        Err(e) => Err(CliError::Core(e)),
    }
}

fn cmd_canonical(connection: &Path, tol: Tolerance) -> Result<Outcome, CliError> {
    let doc: ConnectionDocument = load(connection)?;
    let algebra = algebra_from_connection_doc(&doc, tol)?;
    let form = moduli::canonical_form(&algebra)?;
    let representative = moduli::moduli_coordinates(&form);
    Ok(Outcome::success(to_json(&CanonicalDocument::new(
        &form,
        &representative,
    ))))
}

fn cmd_equiv(first: &Path, second: &Path) -> Result<Outcome, CliError> {
    let a: ModuliDocument = load(first)?;
    let b: ModuliDocument = load(second)?;
    let pa = a.to_point().map_err(CliError::Parse)?;
    let pb = b.to_point().map_err(CliError::Parse)?;
    match moduli::equivalent_cusps(&pa, &pb)? {
        Some(tau) => Ok(Outcome::success(format!("tau={}\n", fmt_complex(tau)))),
        None => Ok(Outcome {
            stdout: "inequivalent\n".into(),
            code: 4,
        }),
    }
}

fn cmd_pushforward(connection: &Path, psi: &Path, tol: Tolerance) -> Result<Outcome, CliError> {
    let doc: ConnectionDocument = load(connection)?;
    let gamma = doc.to_connection(tol).map_err(CliError::Parse)?;
    let psi_doc: JetDocument = load(psi)?;
    let psi = psi_doc.to_jet().map_err(CliError::Parse)?;
    let moved = gamma.pushforward(&psi)?;
    Ok(Outcome::success(to_json(&ConnectionDocument::from_connection(&moved))))
}

#[allow(clippy::too_many_arguments)]
fn cmd_embed(
    input: &Path,
    radial_steps: usize,
    angular_steps: usize,
    svg: Option<&Path>,
    csv: Option<&Path>,
    axes: &str,
    tol: Tolerance,
) -> Result<Outcome, CliError> {
    let axes = Axis::parse_pair(axes).map_err(CliError::Parse)?;
    if radial_steps == 0 || angular_steps == 0 {
        return Err(CliError::Parse("render step counts must be positive".into()));
    }
    let text = std::fs::read_to_string(input).map_err(|source| CliError::Io {
        path: input.display().to_string(),
        source,
    })?;
    let algebra = if let Ok(doc) = serde_json::from_str::<ConnectionDocument>(&text) {
        algebra_from_connection_doc(&doc, tol)?
    } else if let Ok(doc) = serde_json::from_str::<ModuliDocument>(&text) {
        let m = doc.to_point().map_err(CliError::Parse)?;
        CuspAlgebra::from_moduli(&m, 2 * m.n() + 5, tol)?
    } else {
        return Err(CliError::Parse(format!(
            "{}: neither a connection nor a moduli document",
            input.display()
        )));
    };
    let pair = embedding::embedding_pair(&algebra)?;
    let mut report = String::new();
    report.push_str(&format!("h1.p={}\n", fmt_vector(pair.first.polynomial())));
    report.push_str(&format!("h1.q={}\n", fmt_vector(pair.first.exponent())));
    report.push_str(&format!("h2.p={}\n", fmt_vector(pair.second.polynomial())));
    report.push_str(&format!("h2.q={}\n", fmt_vector(pair.second.exponent())));
    if svg.is_some() || csv.is_some() {
        let samples = embedding::render_cusp(&pair, radial_steps, angular_steps);
        if let Some(path) = csv {
            write_file(path, &emit::csv_table(&samples))?;
        }
        if let Some(path) = svg {
            write_file(path, &emit::svg_figure(&samples, angular_steps, axes))?;
        }
    }
    Ok(Outcome::success(report))
}

fn cmd_decompose(connection: &Path, member: &Path, tol: Tolerance) -> Result<Outcome, CliError> {
    let doc: ConnectionDocument = load(connection)?;
    let algebra = algebra_from_connection_doc(&doc, tol)?;
    let member_doc: JetDocument = load(member)?;
    let f = member_doc.to_jet().map_err(CliError::Parse)?;
    let pi = algebra.find_primitive()?;
    let parts = algebra.decompose(&f, &pi)?;
    Ok(Outcome::success(to_json(&DecompositionDocument::new(
        &parts.poly,
        &parts.remainder,
    ))))
}
