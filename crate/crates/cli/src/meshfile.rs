//! JSON mesh files. Rationals are strings (`"3/4"`, `"-2"`) so that no
//! binary floating point ever enters the format. Output is canonical: keys
//! sorted, cells sorted, rationals in lowest terms.

use std::path::Path;

use hsl_core::splinebasis::GridAxis;
use hsl_core::{Domain2D, Grid2, HierarchicalMesh, Level, Rational};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MeshFileError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed mesh file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad rational '{0}'")]
    Rational(String),
    #[error("invalid mesh: {0}")]
    Mesh(#[from] hsl_core::Error),
}

/// One level as stored on disk. Field order is alphabetical so that
/// serialization emits sorted keys.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevelRecord {
    pub cells: Vec<[i64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x_extension: Option<String>,
    pub x_lines: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y_extension: Option<String>,
    pub y_lines: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeshFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degrees: Option<[u32; 2]>,
    pub levels: Vec<LevelRecord>,
}

pub fn parse_rational(s: &str) -> Result<Rational, MeshFileError> {
    s.trim()
        .parse::<Rational>()
        .map_err(|_| MeshFileError::Rational(s.to_string()))
}

fn axis(lines: &[String], ext: Option<&String>) -> Result<GridAxis, MeshFileError> {
    let lines = lines
        .iter()
        .map(|s| parse_rational(s))
        .collect::<Result<Vec<_>, _>>()?;
    let step = ext.map(|s| parse_rational(s)).transpose()?;
    Ok(GridAxis::new(lines, step)?)
}

fn record(level: &Level) -> LevelRecord {
    let strings = |g: &GridAxis| g.lines().iter().map(ToString::to_string).collect();
    LevelRecord {
        cells: level.domain.cells().iter().map(|&(i, j)| [i, j]).collect(),
        x_extension: level.grid.x.step().map(ToString::to_string),
        x_lines: strings(&level.grid.x),
        y_extension: level.grid.y.step().map(ToString::to_string),
        y_lines: strings(&level.grid.y),
    }
}

impl MeshFile {
    pub fn from_mesh(mesh: &HierarchicalMesh, degrees: Option<(u32, u32)>) -> Self {
        MeshFile {
            degrees: degrees.map(|(m, n)| [m, n]),
            levels: mesh.levels().iter().map(record).collect(),
        }
    }

    pub fn to_mesh(&self) -> Result<HierarchicalMesh, MeshFileError> {
        let levels = self
            .levels
            .iter()
            .map(|rec| {
                let grid = Grid2::new(
                    axis(&rec.x_lines, rec.x_extension.as_ref())?,
                    axis(&rec.y_lines, rec.y_extension.as_ref())?,
                );
                let domain = Domain2D::new((0, 0), rec.cells.iter().map(|&[i, j]| (i, j)));
                Ok(Level { grid, domain })
            })
            .collect::<Result<Vec<_>, MeshFileError>>()?;
        Ok(HierarchicalMesh::new(levels)?)
    }

    pub fn degrees(&self) -> Option<(u32, u32)> {
        self.degrees.map(|[m, n]| (m, n))
    }

    pub fn parse(text: &str) -> Result<Self, MeshFileError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Canonical text: re-derived from the mesh so that rationals are
    /// reduced and cells sorted.
    pub fn to_canonical_string(&self) -> Result<String, MeshFileError> {
        let canonical = MeshFile::from_mesh(&self.to_mesh()?, self.degrees());
        let mut text = String::new();
        write_compact_pretty(&serde_json::to_value(&canonical)?, 0, &mut text);
        text.push('\n');
        Ok(text)
    }

    pub fn load(path: &Path) -> Result<Self, MeshFileError> {
        let text = std::fs::read_to_string(path).map_err(|source| MeshFileError::Read {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn save(&self, path: &Path) -> Result<(), MeshFileError> {
        let text = self.to_canonical_string()?;
        std::fs::write(path, text).map_err(|source| MeshFileError::Write {
            path: path.display().to_string(),
            source,
        })
    }
}

/// Pretty-print with one line per array element, but arrays holding only
/// scalars (cell coordinates, degree pairs, line lists) kept on one line.
fn write_compact_pretty(value: &Value, indent: usize, out: &mut String) {
    let pad = |n: usize| "  ".repeat(n);
    match value {
        Value::Array(items) if items.iter().all(|v| !v.is_array() && !v.is_object()) => {
            let inline: Vec<String> = items.iter().map(Value::to_string).collect();
            out.push('[');
            out.push_str(&inline.join(", "));
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_compact_pretty(item, indent + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        Value::Object(fields) => {
            out.push_str("{\n");
            for (i, (key, item)) in fields.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&Value::String(key.clone()).to_string());
                out.push_str(": ");
                write_compact_pretty(item, indent + 1, out);
                out.push_str(if i + 1 < fields.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}
