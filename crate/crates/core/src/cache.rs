//! On-disk snapshot of a built structure: the recipe, the enumerated tables
//! and verification stamps, as canonical JSON (sorted keys).
//!
//! Loading always rebuilds from the recipe and compares; the stored tables
//! are a checksum, never trusted on their own.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::catalog::{build_spec, CatalogEntry, StructureSpec};
use crate::error::{Error, Result};
use crate::group::{Family, GroupElement};
use crate::parabolic::{CheckMode, SampleParams};
use crate::structure::GarsideStructure;

/// Environment variable naming the directory searched for cache files.
pub const CACHE_DIR_VAR: &str = "GARSIDE_CACHE_DIR";

pub const FORMAT: &str = "garside-structure/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupTable {
    pub family: Family,
    pub order: usize,
    pub generators: Vec<String>,
    pub generator_encodings: Vec<GroupElement>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Member {
    /// Index of the element in the enumerated group.
    pub group_index: u32,
    pub length: u32,
    /// Shortlex-least reduced word in atom names, space separated.
    pub word: String,
    pub encoding: GroupElement,
}

/// Everything that must come out the same when the recipe is rebuilt.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tables {
    pub group: GroupTable,
    pub atoms: Vec<String>,
    pub members: Vec<Member>,
    pub apex: u32,
    /// `tau[s]` = index of `Δ^-1 s Δ`.
    pub tau: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stamp {
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<CheckMode>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub len: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
}

impl Stamp {
    fn plain(passed: bool) -> Self {
        Stamp { passed, mode: None, seed: None, len: None, samples: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureCache {
    pub format: String,
    pub name: String,
    pub spec: StructureSpec,
    pub tables: Tables,
    /// Keyed by check name: `balanced`, `lattice`, `lcm-garside`,
    /// `support-preserving`.
    pub stamps: BTreeMap<String, Stamp>,
}

pub fn tables_of(s: &GarsideStructure) -> Tables {
    let g = s.group();
    let names = g.generator_names().to_vec();
    let members = (0..s.num_simples() as u32)
        .map(|k| Member {
            group_index: s.image(k),
            length: s.simple_len(k),
            word: s.simple_word(k).iter().map(|&a| s.atom_name(a)).collect::<Vec<_>>().join(" "),
            encoding: g.element(s.image(k)).clone(),
        })
        .collect();
    Tables {
        group: GroupTable {
            family: g.family().clone(),
            order: g.order(),
            generator_encodings: g.generators().iter().map(|&i| g.element(i).clone()).collect(),
            generators: names,
        },
        atoms: s.atom_names().to_vec(),
        members,
        apex: s.delta(),
        tau: (0..s.num_simples() as u32).map(|k| s.tau(k)).collect(),
    }
}

impl StructureCache {
    pub fn new(entry: &CatalogEntry) -> Self {
        StructureCache {
            format: FORMAT.to_string(),
            name: entry.name.clone(),
            spec: entry.spec.clone(),
            tables: tables_of(&entry.structure),
            stamps: BTreeMap::new(),
        }
    }

    /// Run the structural checks and record them.
    pub fn stamp(&mut self, s: &GarsideStructure, params: SampleParams) {
        let iv = s.interval();
        self.stamps.insert("balanced".into(), Stamp::plain(iv.is_balanced()));
        self.stamps.insert("lattice".into(), Stamp::plain(iv.lattice_check()));
        self.stamps.insert("lcm-garside".into(), Stamp::plain(s.check_lcm_garside().passed));
        let r = s.check_support_preserving(CheckMode::Sampled, params);
        self.stamps.insert(
            "support-preserving".into(),
            Stamp {
                passed: r.passed,
                mode: Some(CheckMode::Sampled),
                seed: Some(params.seed),
                len: Some(params.len),
                samples: Some(params.samples),
            },
        );
    }

    /// Canonical text: pretty JSON with keys sorted at every level.
    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self).expect("cache serializes");
        let mut s = serde_json::to_string_pretty(&v).expect("value prints");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let c: StructureCache = serde_json::from_str(text).map_err(|e| Error::Parse(format!("cache: {e}")))?;
        if c.format != FORMAT {
            return Err(Error::Parse(format!("cache format `{}`, expected `{FORMAT}`", c.format)));
        }
        Ok(c)
    }

    /// Rebuild from the recipe and insist the tables agree.
    pub fn rebuild(&self) -> Result<CatalogEntry> {
        let entry = build_spec(&self.spec)?;
        if tables_of(&entry.structure) != self.tables {
            return Err(Error::Spec("cached tables differ from the rebuilt structure".into()));
        }
        Ok(entry)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<(Self, CatalogEntry)> {
        let c = Self::from_json(&std::fs::read_to_string(path)?)?;
        let e = c.rebuild()?;
        Ok((c, e))
    }
}

/// `$GARSIDE_CACHE_DIR`, if set and non-empty.
pub fn cache_dir() -> Option<PathBuf> {
    std::env::var_os(CACHE_DIR_VAR).filter(|v| !v.is_empty()).map(PathBuf::from)
}

/// File name used for a structure inside the cache directory.
pub fn cache_file_name(name: &str) -> String {
    let clean: String =
        name.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' }).collect();
    format!("{clean}.json")
}
