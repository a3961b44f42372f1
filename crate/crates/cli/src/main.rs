use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use toric_kato::degen::{self, DEFAULT_U_BOUND, DEFAULT_WINDOW};
use toric_kato::fan::Fan;
use toric_kato::invariants::{curve_census, invariant_report, DEFAULT_DEPTH};
use toric_kato::io::report::{self, to_json};
use toric_kato::io::{self, fan_document, parse_document, render_svg, to_toml, Document};
use toric_kato::iso::{find_equivariant_iso, IsoAnswer, IsoOptions, DEFAULT_COEFF_BOUND, DEFAULT_TOLERANCE};
use toric_kato::kato::KatoData;
use toric_kato::linalg::LatticeVector;
use toric_kato::{fixtures, Error};

/// Combinatorial invariants of toric Kato manifolds.
///
/// INPUT is a path to a TOML document or the name of a built-in fixture
/// (for example `fixture_fig2`; `toric-kato list` shows them all).
#[derive(Parser)]
#[command(name = "toric-kato", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Write the result to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Emit JSON instead of plain text.
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Nakamura,
    Isotrivial,
}

#[derive(Clone, Copy, ValueEnum)]
enum Central {
    Nakamura,
}

#[derive(Subcommand)]
enum Command {
    /// List the built-in fixtures.
    List,
    /// Parse and validate a document.
    Validate {
        input: String,
        #[command(flatten)]
        output: Output,
    },
    /// Betti and Hodge numbers, divisors, curves, connectivity and metrics.
    Invariants {
        input: String,
        /// Number of fundamental domains explored by the curve census.
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Type, germ normal form and Perron data.
    Classify {
        input: String,
        #[command(flatten)]
        output: Output,
    },
    /// Count elliptic and rational curves.
    Census {
        input: String,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Decide whether two data give equivariantly isomorphic manifolds.
    ///
    /// Exit status 2 when the bounded search is inconclusive.
    Iso {
        first: String,
        second: String,
        #[arg(long, default_value_t = DEFAULT_COEFF_BOUND)]
        coeff_bound: i64,
        /// Defaults to 2 ord(s) + 4 for the first input.
        #[arg(long)]
        shift_bound: Option<i64>,
        /// Used only for approximate log-parameters.
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tolerance: f64,
        #[command(flatten)]
        output: Output,
    },
    /// Build a degeneration fan and check its properties.
    Degenerate {
        input: String,
        #[arg(long, value_enum, default_value = "nakamura")]
        kind: Kind,
        /// Comma-separated u for the isotrivial family; chosen automatically if absent.
        #[arg(long)]
        u: Option<String>,
        #[arg(long, default_value_t = DEFAULT_WINDOW)]
        window: i64,
        #[command(flatten)]
        output: Output,
    },
    /// Export the finite fan obtained from translates l <= k < m.
    Collapse {
        input: String,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        lo: i64,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        hi: i64,
        #[command(flatten)]
        output: Output,
    },
    /// Export the data of the k-th iterate of the germ.
    Power {
        input: String,
        #[arg(long, default_value_t = 2)]
        k: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Draw the fan as SVG (dimensions 2 and 3).
    Render {
        input: String,
        /// Draw a central fiber instead of the fan itself.
        #[arg(long, value_enum)]
        central: Option<Central>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the canonical document: sorted rays, maximal cones, matrix.
    Export {
        input: String,
        #[command(flatten)]
        output: Output,
    },
}

enum Failure {
    Invalid(String),
    Inconclusive(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

fn load_document(input: &str) -> Result<Document, Failure> {
    let path = Path::new(input);
    let text = if path.exists() {
        std::fs::read_to_string(path).map_err(|e| Failure::Invalid(format!("{input}: {e}")))?
    } else if let Some(t) = fixtures::text(input) {
        t.to_string()
    } else {
        return Err(Failure::Invalid(format!("'{input}' is neither a file nor a fixture name")));
    };
    parse_document(&text).map_err(|e| Failure::Invalid(format!("{input}: {e}")))
}

fn load(input: &str) -> Result<KatoData, Failure> {
    load_document(input)?.to_kato_data().map_err(|e| Failure::Invalid(format!("{input}: {e}")))
}

fn load_fan(input: &str) -> Result<Fan, Failure> {
    load_document(input)?.to_fan().map_err(|e| Failure::Invalid(format!("{input}: {e}")))
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn parse_vector(s: &str) -> Result<LatticeVector, Failure> {
    let entries: Result<Vec<i64>, _> = s.split(',').map(|x| x.trim().parse::<i64>()).collect();
    entries.map(|e| LatticeVector::from_i64(&e)).map_err(|_| Failure::Invalid(format!("'{s}' is not a comma-separated integer vector")))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::List => {
            let mut s = String::new();
            for name in fixtures::names() {
                s.push_str(&format!("fixture_{name}\n"));
            }
            emit(&None, &s)
        }
        Command::Validate { input, output } => {
            let doc = load_document(&input)?;
            let text = if doc.kato.is_some() {
                let d = doc.to_kato_data()?;
                let summary = serde_json::json!({
                    "valid": true,
                    "dim": d.dim(),
                    "type": d.kind().to_string(),
                    "rays": d.fan().rays().len(),
                    "max_cones": d.fan().max_cone_count(),
                    "matrix": d.matrix(),
                });
                if output.json {
                    format!("{}\n", to_json(&summary))
                } else {
                    format!(
                        "valid Kato data\ndimension: {}\ntype: {}\nrays: {}\nmaximal cones: {}\nmatrix: {}\n",
                        d.dim(),
                        d.kind(),
                        d.fan().rays().len(),
                        d.fan().max_cone_count(),
                        d.matrix()
                    )
                }
            } else {
                let f = doc.to_fan()?;
                let summary = serde_json::json!({
                    "valid": true,
                    "dim": f.dim(),
                    "rays": f.rays().len(),
                    "max_cones": f.max_cone_count(),
                    "complete": f.is_complete(),
                    "regular": f.is_regular(),
                });
                if output.json {
                    format!("{}\n", to_json(&summary))
                } else {
                    format!(
                        "valid fan\ndimension: {}\nrays: {}\nmaximal cones: {}\ncomplete: {}\nregular: {}\n",
                        f.dim(),
                        f.rays().len(),
                        f.max_cone_count(),
                        f.is_complete(),
                        f.is_regular()
                    )
                }
            };
            emit(&output.out, &text)
        }
        Command::Invariants { input, depth, output } => {
            let r = invariant_report(&load(&input)?, depth);
            let text = if output.json { format!("{}\n", to_json(&r)) } else { report::invariants_text(&r) };
            emit(&output.out, &text)
        }
        Command::Classify { input, output } => {
            let c = report::classification(&load(&input)?);
            let text = if output.json { format!("{}\n", to_json(&c)) } else { report::classify_text(&c) };
            emit(&output.out, &text)
        }
        Command::Census { input, depth, output } => {
            let c = curve_census(&load(&input)?, depth);
            let text = if output.json { format!("{}\n", to_json(&c)) } else { report::census_text(&c) };
            emit(&output.out, &text)
        }
        Command::Iso { first, second, coeff_bound, shift_bound, tolerance, output } => {
            let (x, y) = (load(&first)?, load(&second)?);
            let v = find_equivariant_iso(&x, &y, &IsoOptions { coeff_bound, shift_bound, tolerance });
            let text = if output.json { format!("{}\n", to_json(&v)) } else { report::iso_text(&v) };
            emit(&output.out, &text)?;
            if v.answer == IsoAnswer::Unknown {
                return Err(Failure::Inconclusive("no decision within the search bounds".into()));
            }
            Ok(())
        }
        Command::Degenerate { input, kind, u, window, output } => {
            let d = load(&input)?;
            let (df, choice) = match kind {
                Kind::Nakamura => (degen::nakamura_fan(&d, window)?, None),
                Kind::Isotrivial => {
                    let (u, c) = match &u {
                        Some(s) => (parse_vector(s)?, None),
                        None => {
                            let c = degen::isotrivial_u(&d, DEFAULT_U_BOUND);
                            match c.u.clone() {
                                Some(u) => (u, Some(c)),
                                None => {
                                    let text = if output.json { format!("{}\n", to_json(&c)) } else { report::absent_u_text(&c) };
                                    return emit(&output.out, &text);
                                }
                            }
                        }
                    };
                    (degen::isotrivial_fan(&d, &u, window)?, c)
                }
            };
            let text = if output.json {
                format!("{}\n", to_json(&serde_json::json!({ "degeneration": df, "central_fiber": io::fan_section(&df.central_fiber) })))
            } else {
                report::degeneration_text(&df, choice.as_ref())
            };
            emit(&output.out, &text)
        }
        Command::Collapse { input, lo, hi, output } => {
            let f = load(&input)?.collapsed_fan(lo, hi)?;
            let doc = fan_document(&f, None);
            let text = if output.json { format!("{}\n", to_json(&doc)) } else { to_toml(&doc) };
            emit(&output.out, &text)
        }
        Command::Power { input, k, output } => {
            let p = load(&input)?.power_data(k)?;
            let doc = io::document_of(&p, None);
            let text = if output.json { format!("{}\n", to_json(&doc)) } else { to_toml(&doc) };
            emit(&output.out, &text)
        }
        Command::Render { input, central, out } => {
            let f = match central {
                None => load_fan(&input)?,
                Some(Central::Nakamura) => degen::nakamura_central_fiber(&load(&input)?)?,
            };
            emit(&out, &render_svg(&f)?)
        }
        Command::Export { input, output } => {
            let doc = load_document(&input)?;
            let canonical = if doc.kato.is_some() {
                io::document_of(&doc.to_kato_data()?, doc.name.as_deref())
            } else {
                fan_document(&doc.to_fan()?, doc.name.as_deref())
            };
            let text = if output.json { format!("{}\n", to_json(&canonical)) } else { to_toml(&canonical) };
            emit(&output.out, &text)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Inconclusive(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(2)
        }
    }
}
