//! Text file format for partitions.
//!
//! A file is one JSON object:
//!
//! ```text
//! {
//!   "format": "vspart-partition",
//!   "version": 1,
//!   "p": 2,
//!   "e": 1,
//!   "modulus": [0,1],
//!   "n": 4,
//!   "header": {...},
//!   "components": [
//!     [[0,0,1,0],[0,0,0,1]],
//!     ...
//!   ]
//! }
//! ```
//!
//! Components are lists of basis rows of element codes. The writer emits
//! canonical bases in canonical order, one component per line, so equal
//! partitions produce identical bytes. `header` is optional free-form
//! metadata.

use std::fmt::Write as _;

use serde::Deserialize;
use serde_json::Value;

use super::Partition;
use crate::error::FormatError;
use crate::gf::{make_field, Ambient, Subspace};

pub const FORMAT_NAME: &str = "vspart-partition";
const VERSION: u32 = 1;

fn row_json(row: &[u32]) -> String {
    let items: Vec<String> = row.iter().map(u32::to_string).collect();
    format!("[{}]", items.join(","))
}

/// Serializes a partition in canonical form.
pub fn write_partition(p: &Partition, header: Option<&Value>) -> String {
    let f = p.ambient().field();
    let mut out = String::new();
    out.push_str("{\n");
    let _ = writeln!(out, "  \"format\": \"{FORMAT_NAME}\",");
    let _ = writeln!(out, "  \"version\": {VERSION},");
    let _ = writeln!(out, "  \"p\": {},", f.p());
    let _ = writeln!(out, "  \"e\": {},", f.e());
    let _ = writeln!(out, "  \"modulus\": {},", row_json(f.modulus()));
    let _ = writeln!(out, "  \"n\": {},", p.n());
    if let Some(h) = header {
        let _ = writeln!(out, "  \"header\": {},", serde_json::to_string(h).expect("json value"));
    }
    out.push_str("  \"components\": [\n");
    let comps = p.components();
    for (i, c) in comps.iter().enumerate() {
        let rows: Vec<String> = c.rows().iter().map(|r| row_json(r)).collect();
        let sep = if i + 1 < comps.len() { "," } else { "" };
        let _ = writeln!(out, "    [{}]{sep}", rows.join(","));
    }
    out.push_str("  ]\n}\n");
    out
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    format: Option<String>,
    version: Option<u32>,
    p: u64,
    e: u32,
    modulus: Vec<u32>,
    n: usize,
    header: Option<Value>,
    components: Vec<Vec<Vec<u32>>>,
}

#[derive(Debug, Clone)]
pub struct ReadOutcome {
    pub partition: Partition,
    pub header: Option<Value>,
    /// Non-canonical features that were accepted because `force` was set.
    pub warnings: Vec<String>,
}

/// Parses a partition file. Input that is not already canonical is rejected
/// unless `force` is set, in which case it is canonicalized and the problems
/// are returned as warnings.
pub fn read_partition(text: &str, force: bool) -> Result<ReadOutcome, FormatError> {
    let raw: RawFile = serde_json::from_str(text).map_err(|e| FormatError::Malformed(e.to_string()))?;
    if let Some(fmt) = &raw.format {
        if fmt != FORMAT_NAME {
            return Err(FormatError::Malformed(format!("unknown format {fmt:?}")));
        }
    }
    if let Some(v) = raw.version {
        if v != VERSION {
            return Err(FormatError::Malformed(format!("unsupported version {v}")));
        }
    }
    let field = make_field(raw.p, raw.e)?;
    if raw.modulus != field.modulus() {
        return Err(FormatError::ModulusMismatch {
            expected: field.modulus().to_vec(),
            found: raw.modulus,
        });
    }
    let ambient = Ambient::new(field, raw.n);
    let mut warnings = Vec::new();
    let mut comps = Vec::with_capacity(raw.components.len());
    for (i, rows) in raw.components.iter().enumerate() {
        let s = Subspace::span(&ambient, rows)?;
        if s.rows() != rows.as_slice() {
            warnings.push(format!("component {i} basis is not in reduced echelon form"));
        }
        comps.push(s);
    }
    if comps.windows(2).any(|w| w[0] >= w[1]) {
        warnings.push("components are not in strictly increasing canonical order".into());
    }
    if !warnings.is_empty() && !force {
        return Err(FormatError::NonCanonical(warnings.join("; ")));
    }
    let partition = Partition::new(ambient, comps).expect("components built in this ambient");
    Ok(ReadOutcome {
        partition,
        header: raw.header,
        warnings,
    })
}
