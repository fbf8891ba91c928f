//! Swap conjugation, recurrent elements, transport, minimal positive
//! conjugators and the graph of positive conjugates.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::structure::GarsideStructure;

/// Default vertex cap for [`GarsideStructure::positive_conjugates_graph`].
pub const DEFAULT_GRAPH_CAP: usize = 100_000;

/// One application of swap: `result = conjugator · previous · conjugator^-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwapStep {
    pub conjugator: Element,
    pub result: Element,
}

/// The orbit `x, φ(x), φ²(x), …` up to the first repetition
/// `φ^m(x) = φ^n(x)`, `m < n`.
#[derive(Clone, Debug)]
pub struct SwapTrace {
    pub start: Element,
    pub steps: Vec<SwapStep>,
    pub preperiod: usize,
    pub period: usize,
}

impl SwapTrace {
    /// `φ^i(x)`.
    pub fn element(&self, i: usize) -> &Element {
        if i == 0 {
            &self.start
        } else {
            &self.steps[i - 1].result
        }
    }

    /// The first recurrent element `φ^m(x)`.
    pub fn recurrent(&self) -> &Element {
        self.element(self.preperiod)
    }

    /// Elements on the cycle.
    pub fn cycle(&self) -> impl Iterator<Item = &Element> {
        (self.preperiod..self.preperiod + self.period).map(move |i| self.element(i))
    }
}

/// Directed graph of positive conjugates with minimal positive conjugators
/// as arrows.
#[derive(Clone, Debug, Serialize)]
pub struct ConjGraph {
    pub vertices: Vec<Element>,
    /// `(source, target, conjugator)` with `vertices[source]^conjugator =
    /// vertices[target]`.
    pub arrows: Vec<(usize, usize, Element)>,
    /// BFS tree: `(parent vertex, arrow index)` for every vertex but the root.
    pub parent: Vec<Option<(usize, usize)>>,
}

impl ConjGraph {
    pub fn index_of(&self, x: &Element) -> Option<usize> {
        self.vertices.iter().position(|v| v == x)
    }
}

impl GarsideStructure {
    /// `x = a^-1 b` reduced; returns `(a, b a^-1)`.
    pub fn swap(&self, x: &Element) -> (Element, Element) {
        if x.is_positive() {
            return (Element::identity(), x.clone());
        }
        let f = self.left_fraction(x);
        let y = self.mul(&f.numerator, &self.inv(&f.denominator));
        (f.denominator, y)
    }

    pub fn swap_orbit(&self, x: &Element) -> SwapTrace {
        let mut seen: HashMap<Element, usize> = HashMap::from([(x.clone(), 0)]);
        let mut steps = Vec::new();
        let mut cur = x.clone();
        loop {
            let (a, y) = self.swap(&cur);
            steps.push(SwapStep { conjugator: a, result: y.clone() });
            let n = steps.len();
            if let Some(&m) = seen.get(&y) {
                return SwapTrace { start: x.clone(), steps, preperiod: m, period: n - m };
            }
            seen.insert(y.clone(), n);
            cur = y;
        }
    }

    /// Product of the swap conjugators for the first `k` steps:
    /// `c = a_k ⋯ a_1`, so that `c x c^-1 = φ^k(x)`.
    pub fn swap_conjugator(&self, trace: &SwapTrace, k: usize) -> Element {
        trace.steps[..k].iter().fold(Element::identity(), |acc, s| self.mul(&s.conjugator, &acc))
    }

    /// `y` lies on its own swap cycle.
    pub fn is_recurrent(&self, y: &Element) -> bool {
        self.swap_orbit(y).preperiod == 0
    }

    /// Transport of `u` at `y`: `au ∧ bu` where `y = a^-1 b` is reduced.
    pub fn transport(&self, y: &Element, u: &Element) -> Element {
        let f = self.left_fraction(y);
        self.meet_pos(&self.mul(&f.denominator, u), &self.mul(&f.numerator, u))
    }

    /// Smallest positive `ρ` with `a ≼ ρ` and `x^ρ` positive, together with
    /// the chain of converging prefixes `c_0 = a`, `c_(j+1) = c_j ∨ x\c_j`.
    pub fn rho_chain(&self, atom: u32, x: &Element) -> (Element, Vec<Element>) {
        debug_assert!(x.is_positive());
        let mut c = self.atom_elem(atom);
        let mut chain = vec![c.clone()];
        loop {
            let d = self.complement_pos(x, &c);
            let next = self.join_pos(&c, &d);
            if next == c {
                return (c, chain);
            }
            chain.push(next.clone());
            c = next;
        }
    }

    pub fn rho(&self, atom: u32, x: &Element) -> Element {
        self.rho_chain(atom, x).0
    }

    /// The `≼`-minimal elements among `ρ_a(x)`, `a` an atom, in atom order
    /// of first appearance.
    pub fn minimal_positive_conjugators(&self, x: &Element) -> Vec<Element> {
        let mut rhos: Vec<Element> = Vec::new();
        for a in 0..self.num_atoms() as u32 {
            let r = self.rho(a, x);
            if !rhos.contains(&r) {
                rhos.push(r);
            }
        }
        rhos.iter()
            .filter(|r| !rhos.iter().any(|s| s != *r && self.left_divides(s, r)))
            .cloned()
            .collect()
    }

    pub fn positive_conjugates_graph(&self, x: &Element) -> Result<ConjGraph> {
        self.positive_conjugates_graph_capped(x, DEFAULT_GRAPH_CAP)
    }

    /// Closure of `{x}` under minimal positive conjugators, the frontier
    /// processed in parallel.
    pub fn positive_conjugates_graph_capped(&self, x: &Element, cap: usize) -> Result<ConjGraph> {
        if !x.is_positive() {
            return Err(Error::Precondition("positive_conjugates_graph needs a positive element".into()));
        }
        let mut vertices = vec![x.clone()];
        let mut index: HashMap<Element, usize> = HashMap::from([(x.clone(), 0)]);
        let mut arrows = Vec::new();
        let mut parent = vec![None];
        let mut frontier = vec![0usize];
        while !frontier.is_empty() {
            let expanded: Vec<(usize, Vec<(Element, Element)>)> = frontier
                .par_iter()
                .map(|&v| {
                    let y = &vertices[v];
                    let outs = self
                        .minimal_positive_conjugators(y)
                        .into_iter()
                        .map(|u| {
                            let z = self.conj(y, &u);
                            (u, z)
                        })
                        .collect();
                    (v, outs)
                })
                .collect();
            let mut next = Vec::new();
            for (v, outs) in expanded {
                for (u, z) in outs {
                    let t = match index.get(&z) {
                        Some(&t) => t,
                        None => {
                            if vertices.len() >= cap {
                                return Err(Error::Limit(format!("more than {cap} positive conjugates")));
                            }
                            let t = vertices.len();
                            index.insert(z.clone(), t);
                            vertices.push(z);
                            parent.push(Some((v, arrows.len())));
                            next.push(t);
                            t
                        }
                    };
                    arrows.push((v, t, u));
                }
            }
            frontier = next;
        }
        Ok(ConjGraph { vertices, arrows, parent })
    }

    /// Positive conjugator along the BFS tree from the root to vertex `t`.
    pub fn graph_path(&self, g: &ConjGraph, t: usize) -> Element {
        let mut arrows = Vec::new();
        let mut v = t;
        while let Some((p, a)) = g.parent[v] {
            arrows.push(a);
            v = p;
        }
        arrows.iter().rev().fold(Element::identity(), |acc, &a| self.mul(&acc, &g.arrows[a].2))
    }

    /// If `x` has a positive conjugate: `(c, y)` with `c` positive,
    /// `c x c^-1 = y` positive, `c` the product of swap conjugators.
    /// `None` when the swap orbit closes without a positive member.
    pub fn conjugate_to_positive(&self, x: &Element) -> Option<(Element, Element)> {
        let trace = self.swap_orbit(x);
        let total = trace.preperiod + trace.period;
        (0..=total)
            .find(|&i| trace.element(i).is_positive())
            .map(|i| (self.swap_conjugator(&trace, i), trace.element(i).clone()))
    }

    fn within_bound(&self, y: &Element, m: i64) -> bool {
        let f = self.left_fraction(y);
        f.numerator.sup() <= m && f.denominator.sup() <= m
    }

    /// Recurrent conjugates `y` of `x` with `sup(N_L(y)) ≤ m` and
    /// `sup(D_L(y)) ≤ m`, closed under conjugation by simples. Seeded by the
    /// swap cycle of `x`; empty if no cycle member meets the bound.
    pub fn r_m_set(&self, x: &Element, m: i64) -> Result<Vec<Element>> {
        self.r_m_set_capped(x, m, DEFAULT_GRAPH_CAP)
    }

    pub fn r_m_set_capped(&self, x: &Element, m: i64, cap: usize) -> Result<Vec<Element>> {
        let trace = self.swap_orbit(x);
        let Some(seed) = trace.cycle().find(|y| self.within_bound(y, m)).cloned() else {
            return Ok(Vec::new());
        };
        let mut out = vec![seed.clone()];
        let mut seen: HashSet<Element> = HashSet::from([seed]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let y = out[i].clone();
            for s in 1..self.num_simples() as u32 {
                let z = self.conj(&y, &self.simple_elem(s));
                if seen.contains(&z) || !self.within_bound(&z, m) || !self.is_recurrent(&z) {
                    continue;
                }
                if out.len() >= cap {
                    return Err(Error::Limit(format!("more than {cap} recurrent conjugates")));
                }
                seen.insert(z.clone());
                queue.push_back(out.len());
                out.push(z);
            }
        }
        Ok(out)
    }

    /// DOT digraph; vertex labels are atom words, edge labels conjugators.
    pub fn conj_graph_dot(&self, g: &ConjGraph) -> String {
        let mut s = String::from("digraph conjugates {\n");
        for (i, v) in g.vertices.iter().enumerate() {
            let _ = writeln!(s, "  v{i} [label=\"{}\"];", self.format_positive(v));
        }
        for (a, b, u) in &g.arrows {
            let _ = writeln!(s, "  v{a} -> v{b} [label=\"{}\"];", self.format_positive(u));
        }
        s.push_str("}\n");
        s
    }

    pub fn conj_graph_json(&self, g: &ConjGraph) -> serde_json::Value {
        serde_json::json!({
            "vertices": g.vertices.iter().map(|v| self.format_positive(v)).collect::<Vec<_>>(),
            "arrows": g.arrows.iter().map(|(a, b, u)| serde_json::json!({
                "from": a, "to": b, "conjugator": self.format_positive(u)
            })).collect::<Vec<_>>(),
        })
    }
}
