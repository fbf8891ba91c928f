//! Parabolic handles on the command line: `{"X": [atoms], "g": "word"}`.

use serde::Deserialize;
use serde_json::{json, Value};

use garside::{Error, GarsideStructure, ParabolicHandle, Result};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct HandleText {
    #[serde(rename = "X")]
    atoms: Vec<String>,
    #[serde(default)]
    g: String,
}

pub fn handle_json(s: &GarsideStructure, p: &ParabolicHandle) -> Value {
    json!({"X": s.atom_set_names(p.atoms), "g": s.format_word(&p.conjugator)})
}

pub fn parse_handle(s: &GarsideStructure, text: &str) -> Result<ParabolicHandle> {
    let h: HandleText = serde_json::from_str(text).map_err(|e| Error::Parse(format!("handle: {e}")))?;
    let atoms = s.parse_atom_set(&h.atoms)?;
    if !s.is_saturated(atoms) {
        return Err(Error::Parse(format!("atom set {:?} is not saturated", h.atoms)));
    }
    Ok(ParabolicHandle { atoms, conjugator: s.parse_element(&h.g)? })
}

/// A JSON handle, or a bare atom set such as `b1 b2`, `b1,b2` or `{b1,b2}`.
pub fn parse_target(s: &GarsideStructure, text: &str) -> Result<ParabolicHandle> {
    let t = text.trim();
    if t.starts_with('{') && t.contains(':') {
        return parse_handle(s, t);
    }
    let names: Vec<&str> =
        t.split(|c: char| c.is_whitespace() || c == ',' || c == '{' || c == '}').filter(|p| !p.is_empty()).collect();
    let atoms = s.parse_atom_set(&names)?;
    if !s.is_saturated(atoms) {
        return Err(Error::Parse(format!("atom set {{{}}} is not saturated", names.join(","))));
    }
    Ok(ParabolicHandle::standard(atoms))
}
