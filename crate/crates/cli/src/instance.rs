//! Instance files: TOML, or JSON when the path ends in `.json`.

use std::path::Path;
use std::sync::Arc;

use reesdual_core::matrix::PolyMatrix;
use reesdual_core::poly::{parse_poly, print_poly, Field, Poly, Ring};
use reesdual_core::rees::{InstanceIdeal, InstanceModule, Presentation};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Ideal,
    Module,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub kind: Kind,
    pub d: usize,
    pub m: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<usize>,
    pub field: String,
    pub f: String,
    pub psi: Vec<Vec<String>>,
}

#[derive(Clone, Debug)]
pub enum Loaded {
    Ideal(InstanceIdeal),
    Module(InstanceModule),
}

impl Loaded {
    pub fn presentation(&self) -> &Presentation {
        match self {
            Loaded::Ideal(i) => i.presentation(),
            Loaded::Module(m) => m.presentation(),
        }
    }

    pub fn e(&self) -> usize {
        match self {
            Loaded::Ideal(_) => 1,
            Loaded::Module(m) => m.e(),
        }
    }
}

pub fn parse_field(s: &str) -> Result<Field, CliError> {
    let s = s.trim();
    if s == "Q" {
        return Ok(Field::Rational);
    }
    let p = s
        .strip_prefix("Fp:")
        .and_then(|p| p.trim().parse::<u64>().ok())
        .ok_or_else(|| CliError::Parse(format!("field must be \"Q\" or \"Fp:<p>\", got {s:?}")))?;
    Field::prime(p).map_err(|e| CliError::Parse(e.to_string()))
}

pub fn field_name(field: Field) -> String {
    match field {
        Field::Rational => "Q".into(),
        Field::Prime(p) => format!("Fp:{p}"),
    }
}

pub fn read(path: &Path) -> Result<(InstanceFile, Loaded), CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    let is_json = path.extension().is_some_and(|x| x.eq_ignore_ascii_case("json"));
    let file: InstanceFile = if is_json {
        serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?
    } else {
        toml::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?
    };
    let loaded = build(&file, &text)?;
    Ok((file, loaded))
}

/// 1-based line of the first occurrence of `needle` quoted, if any.
fn line_of(text: &str, needle: &str) -> Option<usize> {
    let quoted = format!("\"{needle}\"");
    text.lines().position(|l| l.contains(&quoted)).map(|i| i + 1)
}

fn parse_at(s: &str, ring: &Arc<Ring>, what: &str, text: &str) -> Result<Poly, CliError> {
    parse_poly(s, ring).map_err(|e| {
        let at = line_of(text, s).map(|l| format!(" (line {l})")).unwrap_or_default();
        CliError::Parse(format!("{what}{at}: {e}"))
    })
}

/// Validates shape and linearity and builds the instance. `text` is only used to
/// locate parse errors.
pub fn build(file: &InstanceFile, text: &str) -> Result<Loaded, CliError> {
    let field = parse_field(&file.field)?;
    let rows = file.psi.len();
    let cols = file.psi.first().map_or(0, Vec::len);
    if rows == 0 || cols == 0 {
        return Err(CliError::Parse("psi must be a nonempty matrix".into()));
    }
    if let Some(r) = file.psi.iter().position(|row| row.len() != cols) {
        return Err(CliError::Parse(format!("psi row {} has {} entries, expected {cols}", r + 1, file.psi[r].len())));
    }
    let ring = Ring::standard(field, file.d + 1, rows).map_err(|e| CliError::Parse(e.to_string()))?;
    let mut entries = Vec::with_capacity(rows);
    for (r, row) in file.psi.iter().enumerate() {
        let mut out = Vec::with_capacity(cols);
        for (c, s) in row.iter().enumerate() {
            out.push(parse_at(s, &ring, &format!("psi[{}][{}]", r + 1, c + 1), text)?);
        }
        entries.push(out);
    }
    let psi = PolyMatrix::from_rows(&ring, entries).map_err(|e| CliError::Parse(e.to_string()))?;
    let f = parse_at(&file.f, &ring, "f", text)?;
    if f.total_degree() != Some(file.m) {
        return Err(CliError::Parse(format!(
            "f has degree {}, but m = {}",
            f.total_degree().map_or("-".into(), |d| d.to_string()),
            file.m
        )));
    }
    let shape = |e: reesdual_core::rees::ReesError| CliError::Parse(e.to_string());
    match file.kind {
        Kind::Ideal => {
            if file.e.is_some_and(|e| e != 1) {
                return Err(CliError::Parse("an ideal file has e = 1".into()));
            }
            Ok(Loaded::Ideal(InstanceIdeal::new(f, psi).map_err(shape)?))
        }
        Kind::Module => {
            let e = file.e.ok_or_else(|| CliError::Parse("a module file needs e".into()))?;
            Ok(Loaded::Module(InstanceModule::new(e, f, psi).map_err(shape)?))
        }
    }
}

/// The file describing an already built instance.
pub fn describe(p: &Presentation, kind: Kind, e: Option<usize>) -> InstanceFile {
    let psi = p.psi();
    InstanceFile {
        kind,
        d: p.d(),
        m: p.m(),
        e,
        field: field_name(p.ring().field()),
        f: print_poly(p.f()),
        psi: (0..psi.rows()).map(|r| psi.row(r).iter().map(print_poly).collect()).collect(),
    }
}
