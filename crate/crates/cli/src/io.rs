//! File formats consumed by the CLI: user catalogs, cobordism descriptors,
//! and numeric matrices/vectors.

use std::path::Path;

use cobord::manifold::{Catalog, CobordismDescriptor, ManifoldDescriptor, TriState};
use serde::Deserialize;

use crate::expr;
use crate::CliError;

/// Environment variable pointing at a user catalog JSON file.
pub const CATALOG_ENV: &str = "COBORD_CATALOG";

pub fn read_to_string(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn parse_json<'a, T: Deserialize<'a>>(text: &'a str, path: &Path) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Json {
        path: path.display().to_string(),
        detail: e.to_string(),
    })
}

/// Loads the catalog, extending the built-ins with descriptors from the
/// `COBORD_CATALOG` file when the variable is set. The file holds either a
/// single descriptor object or an array of them.
pub fn load_catalog() -> Result<Catalog, CliError> {
    let mut catalog = Catalog::new();
    if let Ok(path) = std::env::var(CATALOG_ENV) {
        let path = Path::new(&path);
        let text = read_to_string(path)?;
        let descriptors: Vec<ManifoldDescriptor> = if text.trim_start().starts_with('[') {
            parse_json(&text, path)?
        } else {
            vec![parse_json(&text, path)?]
        };
        for d in descriptors {
            catalog.register(d)?;
        }
    }
    Ok(catalog)
}

/// Boundary components in a cobordism file: either manifold expressions in
/// the DSL or inline descriptor objects.
#[derive(Deserialize)]
#[serde(untagged)]
enum BoundarySpec {
    Expr(String),
    Descriptor(ManifoldDescriptor),
}

/// Wire format of a cobordism descriptor file:
///
/// ```json
/// {
///   "dim": 4, "euler": 0,
///   "boundary_in": ["S3"], "boundary_out": ["T3"],
///   "spin": true, "stably_parallelizable": null
/// }
/// ```
///
/// `boundary_in` is N1 and `boundary_out` is N2; the order matters for the
/// odd-dimensional kink formula (outgoing minus incoming).
#[derive(Deserialize)]
struct CobordismWire {
    dim: usize,
    euler: i64,
    #[serde(default)]
    boundary_in: Vec<BoundarySpec>,
    #[serde(default)]
    boundary_out: Vec<BoundarySpec>,
    #[serde(default)]
    spin: bool,
    #[serde(default)]
    stably_parallelizable: TriState,
}

pub fn load_cobordism(path: &Path, catalog: &Catalog) -> Result<CobordismDescriptor, CliError> {
    let text = read_to_string(path)?;
    let wire: CobordismWire = parse_json(&text, path)?;
    let resolve = |specs: Vec<BoundarySpec>| -> Result<Vec<ManifoldDescriptor>, CliError> {
        specs
            .into_iter()
            .map(|s| match s {
                BoundarySpec::Expr(text) => Ok(expr::parse(&text, catalog)?.eval(catalog)?),
                BoundarySpec::Descriptor(d) => {
                    d.validate()?;
                    Ok(d)
                }
            })
            .collect()
    };
    Ok(CobordismDescriptor::new(
        wire.dim,
        wire.euler,
        resolve(wire.boundary_in)?,
        resolve(wire.boundary_out)?,
        wire.spin,
        wire.stably_parallelizable,
    )?)
}

/// Reads a JSON matrix file: nested row arrays `[[...], ...]`.
pub fn load_matrix(path: &Path) -> Result<Vec<Vec<f64>>, CliError> {
    let text = read_to_string(path)?;
    parse_json(&text, path)
}

/// Reads a JSON vector file: a flat array `[...]` (a nested single-column
/// or single-row matrix is also accepted).
pub fn load_vector(path: &Path) -> Result<Vec<f64>, CliError> {
    let text = read_to_string(path)?;
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum VectorWire {
        Flat(Vec<f64>),
        Nested(Vec<Vec<f64>>),
    }
    match parse_json::<VectorWire>(&text, path)? {
        VectorWire::Flat(v) => Ok(v),
        VectorWire::Nested(rows) => {
            if rows.len() == 1 {
                Ok(rows.into_iter().next().unwrap())
            } else if rows.iter().all(|r| r.len() == 1) {
                Ok(rows.into_iter().map(|r| r[0]).collect())
            } else {
                Err(CliError::Json {
                    path: path.display().to_string(),
                    detail: "expected a flat array, a single row, or a single column".into(),
                })
            }
        }
    }
}
