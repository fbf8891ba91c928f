//! Generator data files.
//!
//! ```text
//! # free-form comment lines (provenance)
//! coxeter = b1 b2 b3
//! order = 336
//! b1; 3; x^6+x^5+x^4+x^3+x^2+x+1; e11, e12, e13 | e21, ... | ...
//! ```
//!
//! Each record is `name; degree; ring modulus; matrix rows`, rows separated
//! by `|`, entries by `,`, every entry a polynomial with rational
//! coefficients reduced modulo the ring modulus.

use num_rational::Rational64;

use crate::cyclo::CycloRing;
use crate::error::{Error, Result};
use crate::group::{Backend, GroupElement};

#[derive(Clone, Debug)]
pub struct DataFile {
    pub ring: CycloRing,
    pub dim: usize,
    pub names: Vec<String>,
    pub matrices: Vec<GroupElement>,
    pub coxeter: Option<Vec<String>>,
    pub order: Option<usize>,
    pub comments: Vec<String>,
}

impl DataFile {
    pub fn backend(&self) -> Backend {
        Backend::Matrix { dim: self.dim, ring: self.ring.clone() }
    }
}

pub fn parse_data_file(text: &str) -> Result<DataFile> {
    let mut ring: Option<CycloRing> = None;
    let mut dim: Option<usize> = None;
    let mut names = Vec::new();
    let mut matrices = Vec::new();
    let mut coxeter = None;
    let mut order = None;
    let mut comments = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let err = |msg: &str| Error::Parse(format!("line {}: {msg}", lineno + 1));
        if line.is_empty() {
            continue;
        }
        if let Some(c) = line.strip_prefix('#') {
            comments.push(c.trim().to_string());
            continue;
        }
        if !line.contains(';') {
            let (key, value) = line.split_once('=').ok_or_else(|| err("expected `key = value` or a record"))?;
            match key.trim() {
                "coxeter" => coxeter = Some(value.split_whitespace().map(str::to_string).collect()),
                "order" => order = Some(value.trim().parse().map_err(|_| err("bad order"))?),
                other => return Err(err(&format!("unknown directive `{other}`"))),
            }
            continue;
        }
        let fields: Vec<&str> = line.split(';').map(str::trim).collect();
        if fields.len() != 4 {
            return Err(err("record needs 4 `;`-separated fields"));
        }
        let name = fields[0].to_string();
        if name.is_empty() || name.contains(char::is_whitespace) {
            return Err(err("bad generator name"));
        }
        let d: usize = fields[1].parse().map_err(|_| err("bad degree"))?;
        let r = CycloRing::parse(fields[2]).map_err(|e| err(&e.to_string()))?;
        match (&ring, dim) {
            (None, None) => {
                ring = Some(r.clone());
                dim = Some(d);
            }
            (Some(r0), Some(d0)) if *r0 == r && d0 == d => {}
            _ => return Err(err("all records must share degree and ring")),
        }
        let rows: Vec<&str> = fields[3].split('|').collect();
        if rows.len() != d {
            return Err(err("row count differs from degree"));
        }
        let mut data: Vec<Rational64> = Vec::with_capacity(d * d * r.degree());
        for row in rows {
            let entries: Vec<&str> = row.split(',').collect();
            if entries.len() != d {
                return Err(err("column count differs from degree"));
            }
            for e in entries {
                data.extend(r.parse_elem(e).map_err(|e| err(&e.to_string()))?);
            }
        }
        names.push(name);
        matrices.push(GroupElement::Matrix(data));
    }
    let ring = ring.ok_or_else(|| Error::Parse("data file has no records".into()))?;
    Ok(DataFile { ring, dim: dim.unwrap(), names, matrices, coxeter, order, comments })
}
