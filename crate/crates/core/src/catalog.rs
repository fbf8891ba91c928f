//! Named structures: classical braid groups, finite-type Artin groups,
//! Corran-Picantin monoids for `G(e,e,n)`, dual braid monoids, and the
//! rank-2 exceptional models.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::datafile::{parse_data_file, DataFile};
use crate::error::{Error, Result};
use crate::group::{monomial, transposition, Backend, Family, FiniteGroup, GroupElement, GroupSpec};
use crate::interval::length_and_interval;
use crate::structure::GarsideStructure;

pub const G24_DATA: &str = include_str!("../data/g24.txt");
pub const G12_DATA: &str = include_str!("../data/g12.txt");
pub const G22_DATA: &str = include_str!("../data/g22.txt");

/// Largest `n` accepted by [`dual_sym`] unless the caller raises it.
pub const DUAL_SYM_CAP: usize = 7;

/// A recipe that rebuilds a structure deterministically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StructureSpec {
    /// Braid group on `n` strands, classical structure.
    Braid { n: usize },
    /// Finite-type Artin group: `A<n>`, `B<n>`, `D<n>` or `I2(<m>)`.
    Artin { coxeter: String },
    CorranPicantin { e: u32, n: usize },
    DualSym { n: usize },
    /// One of the shipped data files (`G24`, `G12`, `G22`).
    Exceptional { name: String },
    /// Generator data file given inline; letters are the records, apex is
    /// the `coxeter` directive (default: all records in file order).
    DataFile { name: String, text: String, dual: bool },
    /// Monomial generators given explicitly.
    Monomial {
        name: String,
        n: usize,
        m: u32,
        perms: Vec<Vec<usize>>,
        phases: Vec<Vec<i64>>,
        names: Vec<String>,
        apex: Vec<String>,
    },
}

/// Facts asserted about a catalog entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    pub order_two_atoms: bool,
    pub distinct_hyperplanes: bool,
    pub homogeneous: bool,
    pub square_free: bool,
    pub dual: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    pub balanced: bool,
    pub lattice: bool,
    pub lcm_garside: bool,
    pub support_preserving: bool,
    pub hypdual: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub spec: StructureSpec,
    pub group_spec: GroupSpec,
    pub atom_names: Vec<String>,
    pub apex_word: Vec<String>,
    pub flags: Flags,
    pub expected: Expected,
    pub structure: Arc<GarsideStructure>,
}

/// Names accepted by [`lookup`], for listings.
pub const CATALOG_NAMES: &[&str] = &[
    "braid3", "braid4", "braid5", "A2", "A3", "A4", "B2", "B3", "B4", "D4", "I2(5)", "I2(6)", "cp(3,3)", "cp(4,3)",
    "cp(3,4)", "dual-sym3", "dual-sym4", "dual-sym5", "G24", "G12", "G13", "G22",
];

/// Shephard groups sharing their parabolic lattice with an Artin group.
pub fn shephard_alias(name: &str) -> Result<StructureSpec> {
    let coxeter = match name.trim() {
        "G25" => "A3".to_string(),
        "G26" => "B3".to_string(),
        "G32" => "A4".to_string(),
        other => match parse_call(other, "G").as_deref() {
            Some([_, one, n]) if *one == 1 => format!("B{n}"),
            _ => return Err(Error::UnknownName(name.to_string())),
        },
    };
    Ok(StructureSpec::Artin { coxeter })
}

/// Parse `prefix(a,b,c)` into integers.
fn parse_call(text: &str, prefix: &str) -> Option<Vec<u64>> {
    let inner = text.strip_prefix(prefix)?.strip_prefix('(')?.strip_suffix(')')?;
    inner.split(',').map(|p| p.trim().parse().ok()).collect()
}

fn parse_suffix_num(text: &str, prefix: &str) -> Option<usize> {
    text.strip_prefix(prefix)?.parse().ok()
}

/// Resolve a catalog name to a recipe. Accepts the short names listed in
/// [`CATALOG_NAMES`] and the constructor spellings
/// `classical_braid(3)`, `artin(B3)`, `corran_picantin(3,3)`,
/// `dual_sym(4)`, `dual_exceptional(G24)`, `rank2(G12)`, plus the Shephard
/// aliases.
pub fn lookup(name: &str) -> Result<StructureSpec> {
    let t = name.trim();
    if let Some(n) = parse_suffix_num(t, "braid").or_else(|| parse_call(t, "classical_braid").and_then(single)) {
        return Ok(StructureSpec::Braid { n });
    }
    if let Some(inner) = t.strip_prefix("artin(").and_then(|s| s.strip_suffix(')')) {
        return Ok(StructureSpec::Artin { coxeter: inner.trim().to_string() });
    }
    if is_coxeter_name(t) {
        return Ok(StructureSpec::Artin { coxeter: t.to_string() });
    }
    if let Some(v) = parse_call(t, "cp").or_else(|| parse_call(t, "corran_picantin")) {
        if let [e, n] = v[..] {
            return Ok(StructureSpec::CorranPicantin { e: e as u32, n: n as usize });
        }
    }
    if let Some(v) = parse_call(t, "G") {
        if let [de, e, n] = v[..] {
            if de == e {
                return Ok(StructureSpec::CorranPicantin { e: e as u32, n: n as usize });
            }
        }
    }
    if let Some(n) = parse_suffix_num(t, "dual-sym").or_else(|| parse_call(t, "dual_sym").and_then(single)) {
        return Ok(StructureSpec::DualSym { n });
    }
    let inner = t
        .strip_prefix("dual_exceptional(")
        .or_else(|| t.strip_prefix("rank2("))
        .and_then(|s| s.strip_suffix(')'))
        .unwrap_or(t);
    match inner {
        "G24" | "G12" | "G22" => return Ok(StructureSpec::Exceptional { name: inner.to_string() }),
        "G13" => return Ok(StructureSpec::Artin { coxeter: "I2(6)".into() }),
        "G27" | "G29" | "G33" | "G34" => {
            return Err(Error::UnknownName(format!("{inner} (no generator data shipped; pass a data file)")))
        }
        _ => {}
    }
    shephard_alias(t)
}

fn single(v: Vec<u64>) -> Option<usize> {
    match v[..] {
        [n] => Some(n as usize),
        _ => None,
    }
}

fn is_coxeter_name(t: &str) -> bool {
    let num = |p: &str| t.strip_prefix(p).map(|r| !r.is_empty() && r.bytes().all(|b| b.is_ascii_digit())).unwrap_or(false);
    num("A") || num("B") || num("D") || parse_call(t, "I2").is_some()
}

/// Build the structure for a catalog name.
pub fn build(name: &str) -> Result<CatalogEntry> {
    build_spec(&lookup(name)?)
}

/// Build a structure from a recipe.
pub fn build_spec(spec: &StructureSpec) -> Result<CatalogEntry> {
    match spec {
        StructureSpec::Braid { n } => classical_braid(*n),
        StructureSpec::Artin { coxeter } => artin(coxeter),
        StructureSpec::CorranPicantin { e, n } => corran_picantin(*e, *n),
        StructureSpec::DualSym { n } => dual_sym_capped(*n, usize::MAX),
        StructureSpec::Exceptional { name } => match name.as_str() {
            "G24" => dual_exceptional("G24"),
            "G12" | "G22" => rank2(name),
            other => Err(Error::UnknownName(other.to_string())),
        },
        StructureSpec::DataFile { name, text, dual } => {
            let data = parse_data_file(text)?;
            from_data_file(name, &data, *dual, spec.clone())
        }
        StructureSpec::Monomial { name, n, m, perms, phases, names, apex } => {
            if perms.len() != phases.len() || perms.len() != names.len() {
                return Err(Error::Spec("perms, phases and names must have equal length".into()));
            }
            let gens: Vec<GroupElement> = perms.iter().zip(phases).map(|(p, f)| monomial(p, f, *m)).collect();
            let gspec = GroupSpec::new(
                Family::Imprimitive { de: *m, e: *m, n: *n },
                Backend::Monomial { n: *n, m: *m },
                gens,
                names.clone(),
            );
            let apex = apex.iter().map(String::as_str).collect::<Vec<_>>();
            finish(name, spec.clone(), gspec, Apex::Word(&apex), false)
        }
    }
}

enum Apex<'a> {
    Word(&'a [&'a str]),
    Longest,
}

fn finish(name: &str, spec: StructureSpec, gspec: GroupSpec, apex: Apex, dual: bool) -> Result<CatalogEntry> {
    let group = Arc::new(FiniteGroup::build(&gspec)?);
    let mut letters: Vec<u32> = group.generators().to_vec();
    let mut letter_names = gspec.names.clone();
    let mut sorted = letters.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != letters.len() || sorted.contains(&0) {
        return Err(Error::Spec("generators must be distinct and nontrivial".into()));
    }
    let (c, apex_word) = match apex {
        Apex::Word(w) => {
            let mut c = 0;
            for name in w {
                let pos = gspec
                    .names
                    .iter()
                    .position(|n| n == name)
                    .ok_or_else(|| Error::Spec(format!("apex uses unknown generator `{name}`")))?;
                c = group.mul(c, letters[pos]);
            }
            (c, w.iter().map(|s| s.to_string()).collect::<Vec<_>>())
        }
        Apex::Longest => {
            let len = group.lengths(&letters);
            let max = *len.iter().max().unwrap();
            let tops: Vec<usize> = (0..len.len()).filter(|&i| len[i] == max).collect();
            if tops.len() != 1 {
                return Err(Error::Spec("no unique longest element".into()));
            }
            let c = tops[0] as u32;
            let w = group.gen_word(c).iter().map(|&g| gspec.names[g as usize].clone()).collect();
            (c, w)
        }
    };
    if dual {
        // every reflection is a letter; only those below the apex become atoms
        let closure = group.conjugation_closure(&letters);
        for (k, &r) in closure.iter().enumerate().skip(letters.len()) {
            letters.push(r);
            letter_names.push(format!("r{}", k + 1));
        }
        if !letters.iter().all(|&s| group.element_order(s) == 2) {
            return Err(Error::Spec("dual letters must be reflections of order 2".into()));
        }
    }
    let interval = length_and_interval(&group, &letters, &letter_names, c);
    if dual {
        let len = group.lengths(&letters);
        let rank = apex_word.len() as u32;
        if len[c as usize] != rank {
            return Err(Error::Spec(format!("apex has reflection length {}, expected {rank}", len[c as usize])));
        }
    }
    let structure = GarsideStructure::build(name, group.clone(), interval)?;
    let iv = structure.interval();
    let order_two_atoms = iv.atoms.iter().all(|&a| group.element_order(iv.members[a]) == 2);
    let square_free = iv.words.iter().all(|w| w.windows(2).all(|p| p[0] != p[1]));
    let flags = Flags {
        order_two_atoms,
        distinct_hyperplanes: order_two_atoms,
        homogeneous: true,
        square_free,
        dual,
    };
    let expected = Expected {
        balanced: true,
        lattice: true,
        lcm_garside: true,
        support_preserving: true,
        hypdual: if dual { Some(true) } else { None },
    };
    Ok(CatalogEntry {
        name: name.to_string(),
        spec,
        atom_names: structure.atom_names().to_vec(),
        apex_word,
        group_spec: gspec,
        flags,
        expected,
        structure: Arc::new(structure),
    })
}

fn sym_spec(n: usize, names: Vec<String>) -> GroupSpec {
    let gens = (0..n - 1).map(|i| transposition(n, i, i + 1, 1)).collect();
    GroupSpec::new(Family::Symmetric { n }, Backend::Monomial { n, m: 1 }, gens, names)
}

/// Braid group on `n` strands with its classical structure: atoms
/// `s1..s(n-1)`, `Δ` the half twist.
pub fn classical_braid(n: usize) -> Result<CatalogEntry> {
    if n < 2 {
        return Err(Error::Spec("classical_braid needs n >= 2".into()));
    }
    let names = (1..n).map(|i| format!("s{i}")).collect();
    finish(&format!("braid{n}"), StructureSpec::Braid { n }, sym_spec(n, names), Apex::Longest, false)
}

/// Artin group of finite Coxeter type with its classical structure.
///
/// `A<n>`: atoms `s1..sn`. `B<n>`: atoms `t s1 .. s(n-1)` with `t` the sign
/// change. `D<n>`: atoms `t0 t1 s3 .. sn` as in `G(2,2,n)`. `I2(m)`: atoms
/// `a b`.
pub fn artin(coxeter: &str) -> Result<CatalogEntry> {
    let spec = StructureSpec::Artin { coxeter: coxeter.to_string() };
    let bad = || Error::Spec(format!("unsupported Coxeter type `{coxeter}`"));
    if let Some(m) = parse_call(coxeter, "I2").and_then(single) {
        if m < 2 {
            return Err(bad());
        }
        let m = m as u32;
        let gens = vec![monomial(&[1, 0], &[0, 0], m), monomial(&[1, 0], &[-1, 1], m)];
        let gspec = GroupSpec::new(
            Family::Coxeter { kind: coxeter.to_string() },
            Backend::Monomial { n: 2, m },
            gens,
            vec!["a".into(), "b".into()],
        );
        return finish(coxeter, spec, gspec, Apex::Longest, false);
    }
    let (kind, rank) = coxeter.split_at(1);
    let n: usize = rank.parse().map_err(|_| bad())?;
    match kind {
        "A" if n >= 1 => {
            let names = (1..=n).map(|i| format!("s{i}")).collect();
            let mut gspec = sym_spec(n + 1, names);
            gspec.family = Family::Coxeter { kind: coxeter.to_string() };
            finish(coxeter, spec, gspec, Apex::Longest, false)
        }
        "B" if n >= 2 => {
            let mut phase = vec![0i64; n];
            phase[0] = 1;
            let mut gens = vec![monomial(&(0..n).collect::<Vec<_>>(), &phase, 2)];
            gens.extend((0..n - 1).map(|i| transposition(n, i, i + 1, 2)));
            let mut names = vec!["t".to_string()];
            names.extend((1..n).map(|i| format!("s{i}")));
            let gspec = GroupSpec::new(
                Family::Coxeter { kind: coxeter.to_string() },
                Backend::Monomial { n, m: 2 },
                gens,
                names,
            );
            finish(coxeter, spec, gspec, Apex::Longest, false)
        }
        "D" if n >= 2 => {
            let mut entry = corran_picantin(2, n)?;
            entry.name = coxeter.to_string();
            entry.spec = spec;
            Ok(entry)
        }
        _ => Err(bad()),
    }
}

/// Corran-Picantin monoid for `G(e,e,n)`: atoms `t0..t(e-1)` then
/// `s3..sn`, with `t_i` exchanging the first two coordinates with phases
/// `(-i, i)` and `s_k` the transposition of coordinates `k-1, k`. The
/// products `t_i t_(i+1)` all coincide; `Δ = (t0 t1 s3 ⋯ sn)^(n-1)`.
pub fn corran_picantin(e: u32, n: usize) -> Result<CatalogEntry> {
    if e < 1 || n < 2 {
        return Err(Error::Spec("corran_picantin needs e >= 1, n >= 2".into()));
    }
    let swap01: Vec<usize> = {
        let mut p: Vec<usize> = (0..n).collect();
        p.swap(0, 1);
        p
    };
    let mut gens = Vec::new();
    let mut names = Vec::new();
    for i in 0..e as i64 {
        let mut phase = vec![0i64; n];
        phase[0] = -i;
        phase[1] = i;
        gens.push(monomial(&swap01, &phase, e));
        names.push(format!("t{i}"));
    }
    for k in 3..=n {
        gens.push(transposition(n, k - 2, k - 1, e));
        names.push(format!("s{k}"));
    }
    let gspec = GroupSpec::new(Family::Imprimitive { de: e, e, n }, Backend::Monomial { n, m: e }, gens, names);
    let spec = StructureSpec::CorranPicantin { e, n };
    let name = format!("cp({e},{n})");
    if e == 1 {
        return finish(&name, spec, gspec, Apex::Longest, false);
    }
    let mut unit = vec!["t0", "t1"];
    let s_names: Vec<String> = (3..=n).map(|k| format!("s{k}")).collect();
    unit.extend(s_names.iter().map(String::as_str));
    let word: Vec<&str> = (0..n - 1).flat_map(|_| unit.iter().copied()).collect();
    finish(&name, spec, gspec, Apex::Word(&word), false)
}

/// Dual braid monoid of `S_n`: atoms are all transpositions `t<i><j>`
/// (`i < j`, lexicographic), apex the product of adjacent transpositions.
pub fn dual_sym(n: usize) -> Result<CatalogEntry> {
    dual_sym_capped(n, DUAL_SYM_CAP)
}

pub fn dual_sym_capped(n: usize, cap: usize) -> Result<CatalogEntry> {
    if !(2..=9).contains(&n) || n > cap {
        return Err(Error::Spec(format!("dual_sym supports 2 <= n <= {}", cap.min(9))));
    }
    let mut gens = Vec::new();
    let mut names = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            gens.push(transposition(n, i, j, 1));
            names.push(format!("t{}{}", i + 1, j + 1));
        }
    }
    let word: Vec<String> = (1..n).map(|i| format!("t{}{}", i, i + 1)).collect();
    let word: Vec<&str> = word.iter().map(String::as_str).collect();
    let gspec = GroupSpec::new(Family::Symmetric { n }, Backend::Monomial { n, m: 1 }, gens, names);
    finish(&format!("dual-sym{n}"), StructureSpec::DualSym { n }, gspec, Apex::Word(&word), true)
}

fn from_data_file(name: &str, data: &DataFile, dual: bool, spec: StructureSpec) -> Result<CatalogEntry> {
    let family = Family::Exceptional { name: name.to_string() };
    let gspec = GroupSpec::new(family, data.backend(), data.matrices.clone(), data.names.clone());
    let word: Vec<&str> = match &data.coxeter {
        Some(w) => w.iter().map(String::as_str).collect(),
        None => data.names.iter().map(String::as_str).collect(),
    };
    let entry = finish(name, spec, gspec, Apex::Word(&word), dual)?;
    if let Some(order) = data.order {
        let got = entry.structure.group().order();
        if got != order {
            return Err(Error::Spec(format!("data file declares order {order}, generators give {got}")));
        }
    }
    Ok(entry)
}

/// Dual braid monoid of an exceptional group from shipped data.
pub fn dual_exceptional(name: &str) -> Result<CatalogEntry> {
    let text = match name {
        "G24" => G24_DATA,
        "G27" | "G29" | "G33" | "G34" => {
            return Err(Error::UnknownName(format!("{name}: no generator data shipped")));
        }
        _ => return Err(Error::UnknownName(name.to_string())),
    };
    from_data_file(name, &parse_data_file(text)?, true, StructureSpec::Exceptional { name: name.to_string() })
}

/// Rank-2 models: `G12` (`Δ = stus`), `G22` (`Δ = stust`) from shipped data,
/// `G13` as the Artin group of type `I2(6)`.
pub fn rank2(name: &str) -> Result<CatalogEntry> {
    let text = match name {
        "G12" => G12_DATA,
        "G22" => G22_DATA,
        "G13" => {
            let mut e = artin("I2(6)")?;
            e.name = "G13".into();
            return Ok(e);
        }
        _ => return Err(Error::UnknownName(name.to_string())),
    };
    from_data_file(name, &parse_data_file(text)?, false, StructureSpec::Exceptional { name: name.to_string() })
}

/// Generating parabolic representatives of a rank-2 model, as words.
pub fn rank2_representatives(name: &str) -> Result<Vec<&'static str>> {
    match name {
        "G12" | "G22" => Ok(vec!["s"]),
        "G13" => Ok(vec!["b^-1", "D a^-1 a^-1"]),
        _ => Err(Error::UnknownName(name.to_string())),
    }
}

/// JSON listing of the catalog.
pub fn listing() -> serde_json::Value {
    let aliases = serde_json::json!({"G25": "A3", "G26": "B3", "G32": "A4", "G(de,1,n)": "B<n>", "G13": "I2(6)"});
    serde_json::json!({
        "names": CATALOG_NAMES,
        "constructors": ["classical_braid(n)", "artin(A<n>|B<n>|D<n>|I2(m))", "corran_picantin(e,n)", "dual_sym(n)", "dual_exceptional(G24)", "rank2(G12|G13|G22)"],
        "aliases": aliases,
    })
}
