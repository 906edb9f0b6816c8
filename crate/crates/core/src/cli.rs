//! Argument parsing and dispatch for the `cyclic-quiver` binary.
//!
//! Exit codes: 0 success, 1 verification failure or internal error, 2 usage
//! error, 3 enumeration guard exceeded.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::affine_flag::{embed_fixed_point, sato_weyl};
use crate::error::{Error, Result};
use crate::flatness;
use crate::juggling::{enumerate_length_tuples, enumerate_length_tuples_par, lengths_to_jug, LengthTuple};
use crate::moment_graph::build_graph;
use crate::order::{format_polynomial, poincare_polynomial};
use crate::params::{Guard, Params, DEFAULT_MAX_SIZE};
use crate::perm::{lengths_to_perm, perm_length};
use crate::verify::{self, Suite};

pub const ENUMERATION_SCHEMA: &str = "cyclic-quiver/enumeration/v1";
pub const POINCARE_SCHEMA: &str = "cyclic-quiver/poincare/v1";
pub const EMBED_SCHEMA: &str = "cyclic-quiver/embedding/v1";
pub const FLATNESS_SCHEMA: &str = "cyclic-quiver/flatness/v1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_GUARD: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "cyclic-quiver",
    version,
    about = "Fixed points, orders and cohomology of cyclic quiver Grassmannians"
)]
pub struct Cli {
    /// Largest n*omega accepted by enumerating commands.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_SIZE)]
    pub max_size: usize,
    /// Lift the enumeration guard entirely, or allow --max-size above the default.
    #[arg(long, global = true)]
    pub allow_large: bool,
    /// Enumerate on all cores. Output is identical either way.
    #[arg(long, global = true)]
    pub parallel: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct ParamArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub omega: usize,
}

impl ParamArgs {
    fn params(&self) -> Result<Params> {
        Params::new(self.k, self.n, self.omega)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Tuples,
    Patterns,
    Permutations,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Dot,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the torus fixed points as length tuples, juggling patterns or
    /// bounded affine permutations.
    Enumerate {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value_t = Kind::Tuples)]
        kind: Kind,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Print the Poincare polynomial in q.
    Poincare {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Export the moment graph.
    MomentGraph {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
    },
    /// Run verification suites; exits 1 if any check fails.
    Verify {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Embed fixed points into the affine flag variety and report their
    /// Weyl group elements.
    Embed {
        #[command(flatten)]
        params: ParamArgs,
        /// A single length tuple such as "(3,1)"; all fixed points if absent.
        #[arg(long)]
        tuple: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Degree (1,1,1) evaluation table and rank for X(1,3).
    Flatness {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

/// Parses `argv` (program name first) and runs the command, writing data to
/// `out` and diagnostics to `err`. Returns the process exit code.
pub fn dispatch<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match run(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::TooLarge { .. } => EXIT_GUARD,
                Error::InvalidParams(_) | Error::InvalidTuple(_) | Error::Parse(_) => EXIT_USAGE,
                _ => EXIT_FAILURE,
            }
        }
    }
}

fn guard(cli: &Cli) -> Result<Guard> {
    if cli.allow_large {
        let max = if cli.max_size == DEFAULT_MAX_SIZE { usize::MAX } else { cli.max_size };
        return Ok(Guard::new(max));
    }
    if cli.max_size > DEFAULT_MAX_SIZE {
        return Err(Error::InvalidParams(format!(
            "--max-size {} is above {DEFAULT_MAX_SIZE}; pass --allow-large to confirm",
            cli.max_size
        )));
    }
    Ok(Guard::new(cli.max_size))
}

fn unsupported(format: Format, command: &str) -> Error {
    Error::Parse(format!("{command} does not support --format {format:?}").to_lowercase())
}

fn run(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let guard = guard(cli)?;
    let threads = if cli.parallel { 0 } else { 1 };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidParams(e.to_string()))?;
    let (code, text) = pool.install(|| render(cli, &guard))?;
    out.write_all(text.as_bytes()).map_err(|e| Error::Parse(e.to_string()))?;
    Ok(code)
}

fn render(cli: &Cli, guard: &Guard) -> Result<(i32, String)> {
    let json = |v: serde_json::Value| serde_json::to_string_pretty(&v).expect("serializable") + "\n";
    match &cli.command {
        Command::Enumerate { params, kind, format } => {
            let p = params.params()?;
            guard.check(&p)?;
            let tuples = if cli.parallel { enumerate_length_tuples_par(&p) } else { enumerate_length_tuples(&p) };
            let text = match format {
                Format::Json => json(enumeration_json(&p, *kind, &tuples)),
                Format::Csv => enumeration_csv(&p, *kind, &tuples),
                other => return Err(unsupported(*other, "enumerate")),
            };
            Ok((EXIT_OK, text))
        }
        Command::Poincare { params, format } => {
            let p = params.params()?;
            let coeffs = poincare_polynomial(&p, guard)?;
            let text = match format {
                Format::Text => format_polynomial(&coeffs) + "\n",
                Format::Json => json(serde_json::json!({
                    "schema": POINCARE_SCHEMA,
                    "params": p,
                    "coefficients": coeffs,
                    "polynomial": format_polynomial(&coeffs),
                })),
                other => return Err(unsupported(*other, "poincare")),
            };
            Ok((EXIT_OK, text))
        }
        Command::MomentGraph { params, format } => {
            let g = build_graph(&params.params()?, guard)?;
            let text = match format {
                Format::Dot => g.to_dot(),
                Format::Json => json(g.to_json()),
                other => return Err(unsupported(*other, "moment-graph")),
            };
            Ok((EXIT_OK, text))
        }
        Command::Verify { params, suite, seed, format } => {
            let suite: Suite = suite.parse()?;
            let report = verify::run(suite, &params.params()?, *seed, guard)?;
            let code = if report.passed() { EXIT_OK } else { EXIT_FAILURE };
            let text = match format {
                Format::Text => format!("{report}\n"),
                Format::Json => json(serde_json::to_value(&report).expect("serializable")),
                other => return Err(unsupported(*other, "verify")),
            };
            Ok((code, text))
        }
        Command::Embed { params, tuple, format } => {
            let p = params.params()?;
            let tuples = match tuple {
                Some(s) => vec![LengthTuple::parse(s, &p)?],
                None => {
                    guard.check(&p)?;
                    enumerate_length_tuples(&p)
                }
            };
            embed(&p, &tuples, *format)
        }
        Command::Flatness { format } => {
            let text = match format {
                Format::Text => flatness_text(),
                Format::Csv => flatness::evaluation_csv(),
                Format::Json => json(serde_json::json!({
                    "schema": FLATNESS_SCHEMA,
                    "rank": flatness::degree111_rank(),
                    "basis": flatness::basis_monomials().iter().map(ToString::to_string).collect::<Vec<_>>(),
                    "values": flatness::TriDegMonomial::all().iter().map(|m| {
                        (m.to_string(), flatness::format_triple(&flatness::eval_monomial(m)))
                    }).collect::<std::collections::BTreeMap<_, _>>(),
                })),
                other => return Err(unsupported(*other, "flatness")),
            };
            Ok((EXIT_OK, text))
        }
    }
}

fn enumeration_json(p: &Params, kind: Kind, tuples: &[LengthTuple]) -> serde_json::Value {
    let items: Vec<serde_json::Value> = tuples
        .iter()
        .map(|t| match kind {
            Kind::Tuples => serde_json::json!(t.as_slice()),
            Kind::Patterns => serde_json::json!(lengths_to_jug(t, p).sets()),
            Kind::Permutations => serde_json::json!(lengths_to_perm(t, p).window()),
        })
        .collect();
    let kind = format!("{kind:?}").to_lowercase();
    serde_json::json!({ "schema": ENUMERATION_SCHEMA, "params": p, "kind": kind, "count": items.len(), "items": items })
}

fn enumeration_csv(p: &Params, kind: Kind, tuples: &[LengthTuple]) -> String {
    let prefix = match kind {
        Kind::Tuples => "l",
        Kind::Patterns => "J",
        Kind::Permutations => "f",
    };
    let header: Vec<String> = (1..=p.n).map(|i| format!("{prefix}{i}")).collect();
    let mut out = header.join(",") + "\n";
    for t in tuples {
        let row: Vec<String> = match kind {
            Kind::Tuples => t.as_slice().iter().map(ToString::to_string).collect(),
            Kind::Patterns => lengths_to_jug(t, p)
                .sets()
                .iter()
                .map(|s| s.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))
                .collect(),
            Kind::Permutations => lengths_to_perm(t, p).window().iter().map(ToString::to_string).collect(),
        };
        out += &(row.join(",") + "\n");
    }
    out
}

fn embed(p: &Params, tuples: &[LengthTuple], format: Format) -> Result<(i32, String)> {
    let mut rows = Vec::new();
    let mut text = String::new();
    for t in tuples {
        let jug = lengths_to_jug(t, p);
        let fp = embed_fixed_point(&jug, p)?;
        let w = sato_weyl(&fp)?;
        match format {
            Format::Json => {
                let mut doc = fp.to_json(Some(&w));
                doc["tuple"] = serde_json::json!(t.as_slice());
                doc["pattern"] = serde_json::json!(jug.sets());
                doc["length"] = serde_json::json!(perm_length(&w));
                rows.push(doc);
            }
            Format::Text => {
                text += &format!("{t} {jug} w = {w} length {}\n", perm_length(&w));
                for (i, s) in fp.points.iter().enumerate() {
                    text += &format!("  S_{i} = {s}\n");
                }
            }
            other => return Err(unsupported(other, "embed")),
        }
    }
    if format == Format::Json {
        let doc = serde_json::json!({ "schema": EMBED_SCHEMA, "params": p, "points": rows });
        text = serde_json::to_string_pretty(&doc).expect("serializable") + "\n";
    }
    Ok((EXIT_OK, text))
}

fn flatness_text() -> String {
    let basis: Vec<String> = flatness::basis_monomials().iter().map(ToString::to_string).collect();
    format!("rank = {}\nbasis = {}\n\n{}", flatness::degree111_rank(), basis.join(" "), flatness::evaluation_csv())
}
