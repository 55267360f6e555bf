//! The `mfound` command-line front end.
//!
//! Every subcommand prints one JSON document on standard output. Exit codes:
//! `0` on success, `2` when the large-uniform-minor guard refuses the input,
//! and `1` for any other error. Errors are printed as JSON objects with an
//! `error` field.

use std::collections::BTreeMap;
use std::path::Path;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::bits;
use crate::crossratio::{build_hexagons, ChirotopeJson, CrossRatioError, GpFunction, Slot};
use crate::foundation::{self, FoundationError};
use crate::matroid::{catalog, MatrixJson, Matroid, MatroidError, MatroidJson};
use crate::oracle::{self, OracleError};
use crate::pasture::{self, Elem, FinitePasture, PastureError, Target};
use crate::smallfield::make_field;

/// Foundations and representation classes of matroids without large uniform minors.
#[derive(Debug, Parser)]
#[command(name = "mfound", version)]
pub struct Cli {
    /// Seed for the relation-edge shuffle used by `foundation`.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

/// A matroid is given as a path to a JSON file (bases, matrix or chirotope
/// format) or as a catalog name such as `F7` or `U(2,4)`.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decomposition of the foundation.
    Foundation { input: String },
    /// Representation class.
    Classify { input: String },
    /// Representability over a comma-separated list of targets.
    Representable {
        input: String,
        #[arg(long, value_delimiter = ',', required = true)]
        over: Vec<String>,
    },
    /// Number of rescaling classes over a finite pasture.
    HomCount {
        input: String,
        #[arg(long)]
        over: String,
    },
    /// Hexagons and, for matrix or chirotope input, their cross ratios.
    CrossRatios { input: String },
    /// Large-uniform-minor and Fano-minor findings.
    Guard { input: String },
    /// Dyadic lift of a chirotope.
    Lift { input: String },
    /// Checks the all-positive orientation of a matroid.
    Positive { input: String },
    /// Brute-force representation and rescaling-class counts.
    Oracle {
        input: String,
        #[arg(long)]
        over: String,
        /// Search-node budget.
        #[arg(long, default_value_t = oracle::DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
    /// Constructions on catalog pastures.
    Pasture {
        #[command(subcommand)]
        op: PastureOp,
    },
}

#[derive(Debug, Subcommand)]
pub enum PastureOp {
    /// The table of a catalog pasture.
    Show { name: String },
    /// Product of two pastures.
    Product { a: String, b: String },
    /// Tensor product of two pastures.
    Tensor { a: String, b: String },
    /// Quotient by relations written `a,b,c;a,b,c` over element indices.
    Quotient {
        name: String,
        #[arg(long, default_value = "")]
        rel: String,
    },
    /// Whether two pastures are isomorphic.
    Iso { a: String, b: String },
}

/// A failure with its exit code and JSON body.
#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub code: i32,
    pub body: Value,
}

impl CliError {
    fn input(kind: &str, message: impl ToString) -> CliError {
        CliError {
            code: 1,
            body: json!({"error": kind, "message": message.to_string()}),
        }
    }
}

impl From<MatroidError> for CliError {
    fn from(e: MatroidError) -> Self {
        let kind = match e {
            MatroidError::UnknownName(_) => "unknown_name",
            _ => "invalid_matroid",
        };
        CliError::input(kind, e)
    }
}

impl From<PastureError> for CliError {
    fn from(e: PastureError) -> Self {
        let kind = match e {
            PastureError::UnknownName(_) => "unknown_name",
            PastureError::TooLarge(_) => "size_cap",
            _ => "invalid_pasture",
        };
        CliError::input(kind, e)
    }
}

impl From<CrossRatioError> for CliError {
    fn from(e: CrossRatioError) -> Self {
        match e {
            CrossRatioError::Matroid(m) => m.into(),
            CrossRatioError::Pasture(p) => p.into(),
            other => CliError::input("invalid_input", other),
        }
    }
}

impl From<FoundationError> for CliError {
    fn from(e: FoundationError) -> Self {
        match e {
            FoundationError::LargeUniformMinor => CliError {
                code: 2,
                body: json!({"error": "large_uniform_minor"}),
            },
            FoundationError::Matroid(m) => m.into(),
            FoundationError::CrossRatio(c) => c.into(),
            FoundationError::InvalidChirotope(v) => CliError {
                code: 1,
                body: json!({"error": "invalid_chirotope", "j": v.j, "quad": v.quad}),
            },
            FoundationError::Integrity { .. } | FoundationError::BadSubgroupOrder(_) => {
                CliError::input("integrity", e)
            }
            other => CliError::input("invalid_input", other),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        CliError::input("oracle_limit", e)
    }
}

/// A parsed matroid input with its optional concrete representation.
pub struct Loaded {
    pub matroid: Matroid,
    pub representation: Option<GpFunction>,
}

/// Loads a matroid from a catalog name or a JSON file in bases, matrix or
/// chirotope format.
pub fn load(input: &str) -> Result<Loaded, CliError> {
    if !Path::new(input).exists() {
        let matroid = catalog(input)?;
        return Ok(Loaded {
            matroid,
            representation: None,
        });
    }
    let text = std::fs::read_to_string(input).map_err(|e| CliError::input("io", e))?;
    let value: Value =
        serde_json::from_str(&text).map_err(|e| CliError::input("malformed_json", e))?;
    let parse_err = |e: serde_json::Error| CliError::input("malformed_json", e);
    if value.get("signs").is_some() {
        let json: ChirotopeJson = serde_json::from_value(value).map_err(parse_err)?;
        let (matroid, gp) = GpFunction::chirotope_from_json(&json)?;
        Ok(Loaded {
            matroid,
            representation: Some(gp),
        })
    } else if value.get("rows").is_some() {
        let json: MatrixJson = serde_json::from_value(value).map_err(parse_err)?;
        let matroid = Matroid::from_matrix_json(&json)?;
        let field = make_field(json.field).map_err(MatroidError::from)?;
        let gp = GpFunction::from_matrix(&matroid, &field, &json.rows)?;
        Ok(Loaded {
            matroid,
            representation: Some(gp),
        })
    } else {
        let json: MatroidJson = serde_json::from_value(value).map_err(parse_err)?;
        Ok(Loaded {
            matroid: Matroid::from_json(&json)?,
            representation: None,
        })
    }
}

fn finite(name: &str) -> Result<FinitePasture, CliError> {
    match pasture::target_by_name(name)? {
        Target::Finite(p) => Ok(*p),
        Target::Infinite(_) => Err(CliError::input(
            "not_finite",
            format!("`{name}` is not a finite pasture"),
        )),
    }
}

fn parse_relations(text: &str) -> Result<Vec<[Elem; 3]>, CliError> {
    let mut out = Vec::new();
    for part in text.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        let nums: Result<Vec<Elem>, _> =
            part.split(',').map(|t| t.trim().parse::<Elem>()).collect();
        match nums.ok().as_deref() {
            Some(&[a, b, c]) => out.push([a, b, c]),
            _ => return Err(CliError::input("malformed_relation", part)),
        }
    }
    Ok(out)
}

fn pasture_json(p: &FinitePasture) -> Value {
    serde_json::to_value(p.to_json()).unwrap_or(Value::Null)
}

fn run_pasture(op: &PastureOp) -> Result<Value, CliError> {
    Ok(match op {
        PastureOp::Show { name } => pasture_json(&finite(name)?),
        PastureOp::Product { a, b } => pasture_json(&pasture::product(&finite(a)?, &finite(b)?)?),
        PastureOp::Tensor { a, b } => pasture_json(&pasture::tensor(&finite(a)?, &finite(b)?)?),
        PastureOp::Quotient { name, rel } => {
            let report = pasture::quotient_report(&finite(name)?, &parse_relations(rel)?)?;
            json!({
                "pasture": pasture_json(&report.pasture),
                "collapse_passes": report.collapse_passes,
                "needed_iteration": report.needed_iteration(),
            })
        }
        PastureOp::Iso { a, b } => {
            json!({"isomorphic": pasture::is_isomorphic(&finite(a)?, &finite(b)?)?})
        }
    })
}

fn cross_ratios(loaded: &Loaded) -> Result<Value, CliError> {
    let m = &loaded.matroid;
    foundation::guard(m)?;
    let mut hexagons = Vec::new();
    for hex in build_hexagons(m) {
        let mut entry = json!({
            "contracted": bits::elems(hex.contracted()),
            "residual": hex.residual,
        });
        if let Some(gp) = &loaded.representation {
            let mut values = BTreeMap::new();
            for s in Slot::ALL {
                values.insert(
                    s.name().to_string(),
                    gp.cross_ratio(m, hex.contracted(), hex.quad_of(s))?,
                );
            }
            entry["values"] = json!(values);
        }
        hexagons.push(entry);
    }
    Ok(json!({"hexagons": hexagons}))
}

/// Runs one parsed command.
pub fn execute(cli: &Cli) -> Result<Value, CliError> {
    Ok(match &cli.command {
        Command::Foundation { input } => {
            foundation::foundation_with_seed(&load(input)?.matroid, cli.seed)?.to_json()
        }
        Command::Classify { input } => {
            let class = foundation::classify(&load(input)?.matroid)?;
            json!({"class": class.name(), "field_representable": class.field_representable()})
        }
        Command::Representable { input, over } => {
            let m = load(input)?.matroid;
            let mut out = serde_json::Map::new();
            for name in over {
                let target = pasture::target_by_name(name)?;
                out.insert(
                    name.clone(),
                    json!(foundation::representable_over(&m, &target)?),
                );
            }
            json!({"representable": out})
        }
        Command::HomCount { input, over } => {
            json!({"count": foundation::hom_count(&load(input)?.matroid, &finite(over)?)?})
        }
        Command::CrossRatios { input } => cross_ratios(&load(input)?)?,
        Command::Guard { input } => {
            let m = load(input)?.matroid;
            json!({
                "large_uniform_minor": m.has_large_uniform_minor(),
                "fano": m.fano_minor_presence()?,
                "u24_sites": m.embedded_u24_sites().len(),
            })
        }
        Command::Lift { input } => {
            let loaded = load(input)?;
            let chirotope = match loaded.representation {
                Some(gp) if gp.pasture().units() == 2 && gp.pasture().is_null(1, 1, 2) => gp,
                _ => {
                    return Err(CliError::input(
                        "invalid_input",
                        "lift expects a chirotope file",
                    ))
                }
            };
            serde_json::to_value(foundation::lift_orientation(&loaded.matroid, &chirotope)?)
                .unwrap_or(Value::Null)
        }
        Command::Positive { input } => {
            let m = load(input)?.matroid;
            let chirotope = GpFunction::all_positive(&m);
            serde_json::to_value(foundation::check_positive_orientation(&m, &chirotope)?)
                .unwrap_or(Value::Null)
        }
        Command::Oracle {
            input,
            over,
            budget,
        } => {
            let m = load(input)?.matroid;
            let p = finite(over)?;
            let en = oracle::enumerate_with_budget(&m, &p, *budget)?;
            let classes = oracle::orbit_count(&m, &p, &en)?;
            json!({"assignments": en.count, "classes": classes, "nodes": en.nodes})
        }
        Command::Pasture { op } => run_pasture(op)?,
    })
}

/// Parses arguments, runs the command, and returns the exit code together
/// with the JSON text to print.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            if code == 0 {
                return (0, e.to_string());
            }
            return (
                1,
                json!({"error": "usage", "message": e.to_string()}).to_string(),
            );
        }
    };
    match execute(&cli) {
        Ok(v) => (0, v.to_string()),
        Err(e) => (e.code, e.body.to_string()),
    }
}
