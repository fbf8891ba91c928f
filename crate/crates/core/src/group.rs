//! Exact finite complex reflection groups: a monomial backend for the
//! groups `G(de,e,n)` and Coxeter types A/B/D/I2, and a matrix backend over
//! a cyclotomic ring for exceptional groups.

use std::collections::{HashMap, VecDeque};

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclo::CycloRing;
use crate::error::{Error, Result};

pub const DEFAULT_ELEMENT_CAP: usize = 1_000_000;

/// A group element in one of the two exact encodings.
///
/// Monomial: column `j` has its nonzero entry `zeta_m^phase[j]` in row
/// `perm[j]`. Matrix: row-major entries, each a reduced polynomial of
/// `deg f` coefficients, flattened.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub enum GroupElement {
    Monomial { perm: Vec<u8>, phase: Vec<u32> },
    Matrix(Vec<Rational64>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Backend {
    /// `n x n` monomial matrices with entries in `mu_m`.
    Monomial { n: usize, m: u32 },
    /// `dim x dim` matrices over `Q[x]/(f)`.
    Matrix { dim: usize, ring: CycloRing },
}

impl Backend {
    pub fn identity(&self) -> GroupElement {
        match self {
            Backend::Monomial { n, .. } => GroupElement::Monomial {
                perm: (0..*n as u8).collect(),
                phase: vec![0; *n],
            },
            Backend::Matrix { dim, ring } => {
                let d = ring.degree();
                let mut data = vec![Rational64::zero(); dim * dim * d];
                for i in 0..*dim {
                    data[(i * dim + i) * d] = Rational64::one();
                }
                GroupElement::Matrix(data)
            }
        }
    }

    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        match (self, a, b) {
            (
                Backend::Monomial { n, m },
                GroupElement::Monomial { perm: pa, phase: fa },
                GroupElement::Monomial { perm: pb, phase: fb },
            ) => {
                let mut perm = vec![0u8; *n];
                let mut phase = vec![0u32; *n];
                for j in 0..*n {
                    let k = pb[j] as usize;
                    perm[j] = pa[k];
                    phase[j] = (fb[j] + fa[k]) % m;
                }
                GroupElement::Monomial { perm, phase }
            }
            (Backend::Matrix { dim, ring }, GroupElement::Matrix(x), GroupElement::Matrix(y)) => {
                let d = ring.degree();
                let n = *dim;
                let mut out = Vec::with_capacity(n * n * d);
                for i in 0..n {
                    for j in 0..n {
                        let mut acc = ring.zero();
                        for k in 0..n {
                            let p = &x[(i * n + k) * d..(i * n + k + 1) * d];
                            let q = &y[(k * n + j) * d..(k * n + j + 1) * d];
                            if ring.is_zero(p) || ring.is_zero(q) {
                                continue;
                            }
                            acc = ring.add(&acc, &ring.mul(p, q));
                        }
                        out.extend(acc);
                    }
                }
                GroupElement::Matrix(out)
            }
            _ => panic!("group element does not match its backend"),
        }
    }

    /// Inverse. Monomial inverses are explicit; matrix inverses are found
    /// as the last power before the identity (elements have finite order).
    pub fn inv(&self, a: &GroupElement) -> Result<GroupElement> {
        match (self, a) {
            (Backend::Monomial { n, m }, GroupElement::Monomial { perm, phase }) => {
                let mut p = vec![0u8; *n];
                let mut f = vec![0u32; *n];
                for j in 0..*n {
                    let k = perm[j] as usize;
                    p[k] = j as u8;
                    f[k] = (m - phase[j] % m) % m;
                }
                Ok(GroupElement::Monomial { perm: p, phase: f })
            }
            (Backend::Matrix { .. }, GroupElement::Matrix(_)) => {
                let id = self.identity();
                let mut prev = id.clone();
                let mut cur = a.clone();
                for _ in 0..10_000 {
                    if cur == id {
                        return Ok(prev);
                    }
                    prev = cur.clone();
                    cur = self.mul(&cur, a);
                }
                Err(Error::Spec("matrix generator has no finite order below 10000".into()))
            }
            _ => Err(Error::Spec("group element does not match its backend".into())),
        }
    }

    pub fn validate(&self, a: &GroupElement) -> Result<()> {
        match (self, a) {
            (Backend::Monomial { n, m }, GroupElement::Monomial { perm, phase }) => {
                let mut seen = vec![false; *n];
                if perm.len() != *n || phase.len() != *n {
                    return Err(Error::Spec("monomial element has wrong size".into()));
                }
                for &p in perm {
                    let p = p as usize;
                    if p >= *n || seen[p] {
                        return Err(Error::Spec("monomial element is not a permutation".into()));
                    }
                    seen[p] = true;
                }
                if phase.iter().any(|f| f >= m) {
                    return Err(Error::Spec("monomial phase out of range".into()));
                }
                Ok(())
            }
            (Backend::Matrix { dim, ring }, GroupElement::Matrix(x)) => {
                if x.len() != dim * dim * ring.degree() {
                    return Err(Error::Spec("matrix element has wrong size".into()));
                }
                Ok(())
            }
            _ => Err(Error::Spec("group element does not match its backend".into())),
        }
    }
}

/// Monomial helpers.
pub fn monomial(perm: &[usize], phase: &[i64], m: u32) -> GroupElement {
    GroupElement::Monomial {
        perm: perm.iter().map(|&p| p as u8).collect(),
        phase: phase.iter().map(|&f| f.rem_euclid(m as i64) as u32).collect(),
    }
}

/// Transposition of coordinates `i` and `j` (zero-based) in `G(m,?,n)`.
pub fn transposition(n: usize, i: usize, j: usize, m: u32) -> GroupElement {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.swap(i, j);
    monomial(&perm, &vec![0; n], m)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    Symmetric { n: usize },
    Imprimitive { de: u32, e: u32, n: usize },
    Coxeter { kind: String },
    Exceptional { name: String },
}

/// Data describing a finite group by generators.
#[derive(Clone, Debug)]
pub struct GroupSpec {
    pub family: Family,
    pub backend: Backend,
    pub generators: Vec<GroupElement>,
    pub names: Vec<String>,
    pub element_cap: usize,
}

impl GroupSpec {
    pub fn new(family: Family, backend: Backend, generators: Vec<GroupElement>, names: Vec<String>) -> Self {
        GroupSpec { family, backend, generators, names, element_cap: DEFAULT_ELEMENT_CAP }
    }
}

/// A finite group enumerated by breadth-first search from the identity.
/// Element `0` is the identity; element indices are BFS order over the
/// generators.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    backend: Backend,
    elements: Vec<GroupElement>,
    index: HashMap<GroupElement, u32>,
    gens: Vec<u32>,
    gen_names: Vec<String>,
    right: Vec<u32>,
    parent: Vec<(u32, u16)>,
    inverse: Vec<u32>,
    family: Family,
}

pub fn build_group(spec: &GroupSpec) -> Result<FiniteGroup> {
    FiniteGroup::build(spec)
}

impl FiniteGroup {
    pub fn build(spec: &GroupSpec) -> Result<Self> {
        if spec.generators.is_empty() {
            return Err(Error::Spec("no generators".into()));
        }
        if let Family::Imprimitive { de, e, .. } = spec.family {
            if e == 0 || de % e != 0 {
                return Err(Error::Spec(format!("e={e} must divide de={de}")));
            }
        }
        for g in &spec.generators {
            spec.backend.validate(g)?;
        }
        let backend = spec.backend.clone();
        let ng = spec.generators.len();
        let id = backend.identity();
        let mut elements = vec![id.clone()];
        let mut index = HashMap::new();
        index.insert(id, 0u32);
        let mut parent = vec![(0u32, u16::MAX)];
        let mut right: Vec<u32> = Vec::new();
        let mut i = 0;
        while i < elements.len() {
            for (g, gen) in spec.generators.iter().enumerate() {
                let p = backend.mul(&elements[i], gen);
                let j = match index.get(&p) {
                    Some(&j) => j,
                    None => {
                        let j = elements.len() as u32;
                        if elements.len() >= spec.element_cap {
                            return Err(Error::GroupTooLarge(spec.element_cap));
                        }
                        index.insert(p.clone(), j);
                        elements.push(p);
                        parent.push((i as u32, g as u16));
                        j
                    }
                };
                right.push(j);
            }
            i += 1;
        }
        let gens: Vec<u32> = spec.generators.iter().map(|g| index[g]).collect();
        let mut group = FiniteGroup {
            backend,
            elements,
            index,
            gens,
            gen_names: spec.names.clone(),
            right,
            parent,
            inverse: Vec::new(),
            family: spec.family.clone(),
        };
        let gen_inv: Vec<u32> = spec
            .generators
            .iter()
            .map(|g| {
                let gi = group.backend.inv(g)?;
                group
                    .index
                    .get(&gi)
                    .copied()
                    .ok_or_else(|| Error::Spec("generator inverse outside the group".into()))
            })
            .collect::<Result<_>>()?;
        let n = group.elements.len();
        let mut inverse = vec![0u32; n];
        for i in 1..n {
            let (p, g) = group.parent[i];
            inverse[i] = group.mul(gen_inv[g as usize], inverse[p as usize]);
        }
        group.inverse = inverse;
        debug_assert!(ng == group.gens.len());
        Ok(group)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn backend(&self) -> &Backend {
        &self.backend
    }

    pub fn identity(&self) -> u32 {
        0
    }

    pub fn generators(&self) -> &[u32] {
        &self.gens
    }

    pub fn generator_names(&self) -> &[String] {
        &self.gen_names
    }

    pub fn element(&self, i: u32) -> &GroupElement {
        &self.elements[i as usize]
    }

    pub fn index_of(&self, g: &GroupElement) -> Option<u32> {
        self.index.get(g).copied()
    }

    pub fn inv(&self, i: u32) -> u32 {
        self.inverse[i as usize]
    }

    /// Word of `i` in the generators (generator positions).
    pub fn gen_word(&self, mut i: u32) -> Vec<u16> {
        let mut w = Vec::new();
        while i != 0 {
            let (p, g) = self.parent[i as usize];
            w.push(g);
            i = p;
        }
        w.reverse();
        w
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let ng = self.gens.len();
        let mut cur = a;
        for g in self.gen_word(b) {
            cur = self.right[cur as usize * ng + g as usize];
        }
        cur
    }

    pub fn mul_word(&self, word: &[u32]) -> u32 {
        word.iter().fold(0, |acc, &x| self.mul(acc, x))
    }

    pub fn conj(&self, x: u32, by: u32) -> u32 {
        self.mul(self.mul(self.inv(by), x), by)
    }

    pub fn commute(&self, a: u32, b: u32) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn element_order(&self, a: u32) -> usize {
        let mut k = 1;
        let mut cur = a;
        while cur != 0 {
            cur = self.mul(cur, a);
            k += 1;
        }
        k
    }

    /// Word length with respect to an arbitrary generating set, by BFS over
    /// right multiplication. Unreachable elements get `u32::MAX`.
    pub fn lengths(&self, set: &[u32]) -> Vec<u32> {
        let n = self.order();
        let mut len = vec![u32::MAX; n];
        len[0] = 0;
        let mut queue = VecDeque::from([0u32]);
        while let Some(u) = queue.pop_front() {
            for &s in set {
                let v = self.mul(u, s);
                if len[v as usize] == u32::MAX {
                    len[v as usize] = len[u as usize] + 1;
                    queue.push_back(v);
                }
            }
        }
        len
    }

    /// Elements of the subgroup generated by `gens`, identity first.
    pub fn subgroup(&self, gens: &[u32]) -> Vec<u32> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut out = vec![0u32];
        let mut i = 0;
        while i < out.len() {
            let u = out[i];
            for &s in gens {
                let v = self.mul(u, s);
                if !seen[v as usize] {
                    seen[v as usize] = true;
                    out.push(v);
                }
            }
            i += 1;
        }
        out
    }

    /// Order of the center of the subgroup generated by `gens`.
    pub fn group_center(&self, gens: &[u32]) -> usize {
        self.subgroup(gens)
            .into_iter()
            .filter(|&h| gens.iter().all(|&g| self.commute(h, g)))
            .count()
    }

    /// Closure of a set under conjugation by the whole group, keeping the
    /// input order first and appending new elements in discovery order.
    pub fn conjugation_closure(&self, set: &[u32]) -> Vec<u32> {
        let mut out: Vec<u32> = Vec::new();
        let mut seen = vec![false; self.order()];
        for &s in set {
            if !seen[s as usize] {
                seen[s as usize] = true;
                out.push(s);
            }
        }
        let mut i = 0;
        while i < out.len() {
            let s = out[i];
            for &g in &self.gens {
                let t = self.conj(s, g);
                if !seen[t as usize] {
                    seen[t as usize] = true;
                    out.push(t);
                }
            }
            i += 1;
        }
        out
    }
}
