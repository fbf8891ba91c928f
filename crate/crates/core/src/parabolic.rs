//! Standard and general parabolic subgroups: closures of atom sets,
//! supports, structure verification, parabolic closures, z-elements,
//! intersections, adjacency and the curve graph.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::element::Element;
use crate::error::{Error, Result};
use crate::structure::GarsideStructure;

/// A set of atoms, at most 128.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct AtomSet(pub u128);

impl AtomSet {
    pub const EMPTY: AtomSet = AtomSet(0);

    pub fn full(k: usize) -> AtomSet {
        if k >= 128 {
            AtomSet(u128::MAX)
        } else {
            AtomSet((1u128 << k) - 1)
        }
    }

    pub fn single(a: u32) -> AtomSet {
        AtomSet(1u128 << a)
    }

    pub fn from_atoms(atoms: impl IntoIterator<Item = u32>) -> AtomSet {
        AtomSet(atoms.into_iter().fold(0, |acc, a| acc | (1u128 << a)))
    }

    pub fn contains(self, a: u32) -> bool {
        self.0 >> a & 1 == 1
    }

    pub fn insert(&mut self, a: u32) {
        self.0 |= 1u128 << a;
    }

    pub fn remove(&mut self, a: u32) {
        self.0 &= !(1u128 << a);
    }

    pub fn union(self, o: AtomSet) -> AtomSet {
        AtomSet(self.0 | o.0)
    }

    pub fn inter(self, o: AtomSet) -> AtomSet {
        AtomSet(self.0 & o.0)
    }

    pub fn minus(self, o: AtomSet) -> AtomSet {
        AtomSet(self.0 & !o.0)
    }

    pub fn is_subset(self, o: AtomSet) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = u32> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let a = bits.trailing_zeros();
            bits &= bits - 1;
            Some(a)
        })
    }
}

/// Outcome of the LCM-Garside verification.
#[derive(Clone, Debug, Serialize)]
pub struct LcmReport {
    pub passed: bool,
    pub delta_is_join_of_atoms: bool,
    pub saturated_sets: usize,
    /// Saturated sets whose `Δ_X` is not balanced.
    pub unbalanced: Vec<Vec<String>>,
    /// Saturated sets failing Godelle's criterion.
    pub godelle_failures: Vec<Vec<String>>,
}

/// Result of the chain-of-subsets certificate for a saturated set.
#[derive(Clone, Debug)]
pub struct ChainCertificate {
    pub passed: bool,
    /// `A_0 ⊂ A_1 ⊂ …` as accumulated by the algorithm.
    pub chain: Vec<AtomSet>,
    /// Triples `(a, b, V)` left when the loop stopped.
    pub remaining: Vec<(u32, u32, AtomSet)>,
    /// Pairs `(a, b)` where `b\a` is not `Δ_V` for a saturated `V`; they are
    /// kept with `V` the atoms dividing `b\a`.
    pub irregular: Vec<(u32, u32)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckMode {
    Sampled,
    Certificate,
}

/// Parameters of the sampled support-preservation check.
#[derive(Clone, Copy, Debug)]
pub struct SampleParams {
    pub seed: u64,
    pub len: usize,
    pub samples: usize,
}

impl Default for SampleParams {
    fn default() -> Self {
        SampleParams { seed: 0, len: 8, samples: 2000 }
    }
}

#[derive(Clone, Debug)]
pub struct SupportCounterexample {
    pub x: Element,
    pub conjugator: Element,
    pub support_before: AtomSet,
    pub support_after: AtomSet,
}

#[derive(Clone, Debug)]
pub struct SupportReport {
    pub passed: bool,
    pub mode: CheckMode,
    pub params: Option<SampleParams>,
    pub checked: usize,
    pub counterexample: Option<SupportCounterexample>,
    /// Certificate mode: saturated sets whose certificate failed.
    pub failed_sets: Vec<AtomSet>,
}

/// `(G_X)^g = g^-1 G_X g` with `X` saturated.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ParabolicHandle {
    pub atoms: AtomSet,
    pub conjugator: Element,
}

impl ParabolicHandle {
    pub fn standard(atoms: AtomSet) -> Self {
        ParabolicHandle { atoms, conjugator: Element::identity() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Exactness {
    Exact,
    LowerBound,
}

#[derive(Clone, Debug)]
pub struct Intersection {
    pub handle: ParabolicHandle,
    pub exactness: Exactness,
    /// How the answer was reached.
    pub method: &'static str,
}

/// Irreducible parabolic subgroups with commuting z-elements joined.
#[derive(Clone, Debug)]
pub struct CurveGraph {
    pub vertices: Vec<ParabolicHandle>,
    pub z: Vec<Element>,
    pub edges: Vec<(usize, usize)>,
}

/// Parabolic closure in a rank-2 model: `g^-1 ⟨generator⟩ g`, the trivial
/// group or the whole group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rank2Closure {
    Trivial,
    Whole,
    Cyclic { generator: Element, conjugator: Element },
}

/// Data of a parabolic subgroup of the `G(de,e,n)` braid group obtained from
/// one of `G(de,1,n)` by intersecting with the kernel of `φ: B̂ → Z/e`.
#[derive(Clone, Debug)]
pub struct WrappedHandle {
    pub handle: ParabolicHandle,
    pub de: u32,
    pub e: u32,
    pub n: usize,
    /// `|Z(Ŵ_0)| / |Z(W_0)|`.
    pub exponent: u64,
    /// `z_(B_0) = z_(B̂_0)^exponent`.
    pub z: Element,
}

impl GarsideStructure {
    // ---- atom sets ----

    pub fn all_atoms(&self) -> AtomSet {
        AtomSet::full(self.num_atoms())
    }

    pub fn atom_set_names(&self, x: AtomSet) -> Vec<String> {
        x.iter().map(|a| self.atom_name(a).to_string()).collect()
    }

    pub fn parse_atom_set<S: AsRef<str>>(&self, names: &[S]) -> Result<AtomSet> {
        let mut x = AtomSet::EMPTY;
        for n in names {
            let a = self.atom_by_name(n.as_ref()).ok_or_else(|| Error::Parse(format!("unknown atom `{}`", n.as_ref())))?;
            x.insert(a);
        }
        Ok(x)
    }

    /// `Δ_X`, the join of the atoms of `X` (a simple).
    pub fn delta_of(&self, x: AtomSet) -> u32 {
        x.iter().fold(0, |acc, a| self.join(acc, self.atom_simple(a)))
    }

    /// Atoms dividing a simple.
    pub fn atom_set_below(&self, s: u32) -> AtomSet {
        AtomSet::from_atoms(self.atoms_below(s))
    }

    /// `X̄ = Div(Δ_X) ∩ 𝒜`.
    pub fn closure(&self, x: AtomSet) -> AtomSet {
        self.atom_set_below(self.delta_of(x))
    }

    pub fn is_saturated(&self, x: AtomSet) -> bool {
        self.closure(x) == x
    }

    /// All saturated sets, by closing `X ∪ {a}` from `∅`; sorted by size then
    /// bit pattern.
    pub fn saturated_sets(&self) -> Vec<AtomSet> {
        let mut seen = HashSet::from([AtomSet::EMPTY]);
        let mut queue = VecDeque::from([AtomSet::EMPTY]);
        while let Some(x) = queue.pop_front() {
            for a in 0..self.num_atoms() as u32 {
                if !x.contains(a) {
                    let mut y = x;
                    y.insert(a);
                    let y = self.closure(y);
                    if seen.insert(y) {
                        queue.push_back(y);
                    }
                }
            }
        }
        let mut out: Vec<AtomSet> = seen.into_iter().collect();
        out.sort_by_key(|x| (x.len(), x.0));
        out
    }

    /// Atoms occurring in the stored words of a positive element.
    pub fn letters_of(&self, x: &Element) -> AtomSet {
        let mut s = AtomSet::EMPTY;
        if x.inf > 0 {
            s = AtomSet::from_atoms(self.simple_word(self.delta()).iter().copied());
        }
        for &f in &x.factors {
            s = s.union(AtomSet::from_atoms(self.simple_word(f).iter().copied()));
        }
        s
    }

    /// Closure of the atoms in the reduced left fraction of `x`.
    pub fn support(&self, x: &Element) -> AtomSet {
        let f = self.left_fraction(x);
        self.closure(self.letters_of(&f.denominator).union(self.letters_of(&f.numerator)))
    }

    /// `x ∈ G_X` for saturated `X`: both fraction parts are words in `X`.
    pub fn in_standard(&self, x: &Element, set: AtomSet) -> bool {
        let f = self.left_fraction(x);
        self.letters_of(&f.denominator).union(self.letters_of(&f.numerator)).is_subset(set)
    }

    /// `r_(X,u) = Δ_X^-1 Δ_(X ∪ {u})`.
    pub fn ribbon(&self, x: AtomSet, u: u32) -> u32 {
        let mut y = x;
        y.insert(u);
        self.ldiv(self.delta_of(x), self.delta_of(y)).expect("Δ_X divides Δ_(X ∪ u)")
    }

    // ---- structure verification ----

    /// For all `x, y ∈ Div(δ)`: `xy ∧ Δ` and `xy ∧̃ Δ` lie in `Div(δ)`.
    /// Errors if `δ` is not balanced.
    pub fn godelle_check(&self, delta: u32) -> Result<bool> {
        if !self.is_balanced_simple(delta) {
            return Err(Error::Precondition(format!("`{}` is not balanced", self.simple_name(delta))));
        }
        let divs: Vec<u32> = self.prefixes(delta).iter().map(|v| v as u32).collect();
        let inside = |s: u32| self.is_prefix(s, delta);
        Ok(divs.iter().all(|&x| divs.iter().all(|&y| inside(self.simple_head(x, y)) && inside(self.tail_simple(x, y)))))
    }

    pub fn check_lcm_garside(&self) -> LcmReport {
        let delta_is_join = self.delta_of(self.all_atoms()) == self.delta();
        let sets = self.saturated_sets();
        let results: Vec<(AtomSet, bool, bool)> = sets
            .par_iter()
            .map(|&x| {
                let d = self.delta_of(x);
                match self.godelle_check(d) {
                    Ok(ok) => (x, true, ok),
                    Err(_) => (x, false, false),
                }
            })
            .collect();
        let unbalanced: Vec<Vec<String>> =
            results.iter().filter(|r| !r.1).map(|r| self.atom_set_names(r.0)).collect();
        let godelle_failures: Vec<Vec<String>> =
            results.iter().filter(|r| r.1 && !r.2).map(|r| self.atom_set_names(r.0)).collect();
        LcmReport {
            passed: delta_is_join && unbalanced.is_empty() && godelle_failures.is_empty(),
            delta_is_join_of_atoms: delta_is_join,
            saturated_sets: sets.len(),
            unbalanced,
            godelle_failures,
        }
    }

    /// `{a : Δ_X a ≼ Δ}`.
    pub fn first_layer(&self, x: AtomSet) -> AtomSet {
        self.atom_set_below(self.rcomp(self.delta_of(x)))
    }

    /// The chain-of-subsets algorithm for a saturated proper subset `X`.
    pub fn chain_certificate(&self, x: AtomSet) -> ChainCertificate {
        let all = self.all_atoms();
        let mut ax = self.first_layer(x);
        let b_set = all.minus(x.union(ax));
        let mut irregular = Vec::new();
        let mut triples: Vec<(u32, u32, AtomSet)> = Vec::new();
        for a in b_set.iter() {
            for b in x.iter() {
                let q = self.complement(self.atom_simple(b), self.atom_simple(a));
                let v = self.atom_set_below(q);
                if self.delta_of(v) != q || !self.is_saturated(v) {
                    irregular.push((a, b));
                }
                triples.push((a, b, v));
            }
        }
        let mut chain = Vec::new();
        let mut new = AtomSet::EMPTY;
        loop {
            ax = ax.union(new);
            chain.push(ax);
            triples.retain(|t| t.2.inter(ax).is_empty());
            for a in 0..self.num_atoms() as u32 {
                let mine: Vec<&(u32, u32, AtomSet)> = triples.iter().filter(|t| t.0 == a).collect();
                if mine.is_empty() {
                    continue;
                }
                let all_self = mine.iter().all(|t| t.2.contains(a));
                let bs = AtomSet::from_atoms(mine.iter().map(|t| t.1));
                let xp = self.closure(bs);
                if all_self && xp != x && xp.is_subset(x) {
                    triples.retain(|t| t.0 != a);
                }
            }
            let firsts = AtomSet::from_atoms(triples.iter().map(|t| t.0));
            new = b_set.minus(ax).minus(firsts);
            if new.is_empty() {
                break;
            }
        }
        ChainCertificate { passed: triples.is_empty(), chain, remaining: triples, irregular }
    }

    /// Random positive word of length `len`, uniform over atoms.
    pub fn random_positive(&self, rng: &mut impl Rng, len: usize) -> Element {
        let k = self.num_atoms() as u32;
        let word: Vec<u32> = (0..len).map(|_| rng.random_range(0..k)).collect();
        self.from_atoms(&word)
    }

    /// `(G_X)^ρ = G_Y` for standard `X`, `Y`, tested on generators both ways.
    pub fn maps_standard_onto(&self, x: AtomSet, rho: &Element, y: AtomSet) -> bool {
        let rinv = self.inv(rho);
        x.iter().all(|a| self.in_standard(&self.conj(&self.atom_elem(a), rho), y))
            && y.iter().all(|b| self.in_standard(&self.conj(&self.atom_elem(b), &rinv), x))
    }

    pub fn check_support_preserving(&self, mode: CheckMode, params: SampleParams) -> SupportReport {
        match mode {
            CheckMode::Sampled => {
                let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
                let xs: Vec<Element> = (0..params.samples).map(|_| self.random_positive(&mut rng, params.len)).collect();
                let counterexample = xs.par_iter().find_map_first(|x| {
                    let sx = self.support(x);
                    self.minimal_positive_conjugators(x).into_iter().find_map(|rho| {
                        let sy = self.support(&self.conj(x, &rho));
                        (!self.maps_standard_onto(sx, &rho, sy)).then(|| SupportCounterexample {
                            x: x.clone(),
                            conjugator: rho,
                            support_before: sx,
                            support_after: sy,
                        })
                    })
                });
                SupportReport {
                    passed: counterexample.is_none(),
                    mode,
                    params: Some(params),
                    checked: xs.len(),
                    counterexample,
                    failed_sets: Vec::new(),
                }
            }
            CheckMode::Certificate => {
                let all = self.all_atoms();
                let sets: Vec<AtomSet> = self.saturated_sets().into_iter().filter(|&x| x != all).collect();
                let failed_sets: Vec<AtomSet> =
                    sets.par_iter().filter(|&&x| !self.chain_certificate(x).passed).copied().collect();
                SupportReport {
                    passed: failed_sets.is_empty(),
                    mode,
                    params: None,
                    checked: sets.len(),
                    counterexample: None,
                    failed_sets,
                }
            }
        }
    }

    // ---- parabolic closures and z-elements ----

    /// `PC(x)`: swap `x` to a recurrent `y = c x c^-1`; then
    /// `PC(x) = (G_Supp(y))^c`.
    pub fn parabolic_closure(&self, x: &Element) -> ParabolicHandle {
        let trace = self.swap_orbit(x);
        let c = self.swap_conjugator(&trace, trace.preperiod);
        ParabolicHandle { atoms: self.support(trace.recurrent()), conjugator: c }
    }

    /// `|Δ_U|` with `U` the support of a recurrent conjugate.
    pub fn varphi(&self, x: &Element) -> u32 {
        self.simple_len(self.delta_of(self.parabolic_closure(x).atoms))
    }

    /// Order of the permutation of `X` induced by conjugation by `Δ_X`.
    pub fn z_exponent(&self, x: AtomSet) -> Result<u32> {
        if x.is_empty() {
            return Err(Error::Precondition("z-element of the trivial subgroup".into()));
        }
        let dx = self.simple_elem(self.delta_of(x));
        let mut perm: HashMap<u32, u32> = HashMap::new();
        for a in x.iter() {
            let img = self.conj(&self.atom_elem(a), &dx);
            let b = (img.inf == 0 && img.factors.len() == 1)
                .then(|| self.simple_atom(img.factors[0]))
                .flatten()
                .filter(|&b| x.contains(b))
                .ok_or_else(|| Error::Precondition("Δ_X does not permute the atoms of X".into()))?;
            perm.insert(a, b);
        }
        let mut order = 1u32;
        for a in x.iter() {
            let mut len = 1u32;
            let mut b = perm[&a];
            while b != a {
                b = perm[&b];
                len += 1;
            }
            order = lcm(order, len);
        }
        Ok(order)
    }

    /// Exponent `e` with `z_P = (Δ_X^e)^g`.
    pub fn exponent(&self, p: &ParabolicHandle) -> Result<u32> {
        self.z_exponent(p.atoms)
    }

    pub fn z_standard(&self, x: AtomSet) -> Result<Element> {
        let e = self.z_exponent(x)?;
        Ok(self.pow(&self.simple_elem(self.delta_of(x)), e as i64))
    }

    /// `z_P = g^-1 Δ_X^e g`.
    pub fn z_element(&self, p: &ParabolicHandle) -> Result<Element> {
        Ok(self.conj(&self.z_standard(p.atoms)?, &p.conjugator))
    }

    pub fn same_parabolic(&self, p: &ParabolicHandle, q: &ParabolicHandle) -> Result<bool> {
        if p.atoms.is_empty() || q.atoms.is_empty() {
            return Ok(p.atoms.is_empty() && q.atoms.is_empty());
        }
        Ok(self.z_element(p)? == self.z_element(q)?)
    }

    /// `(c, X')` with `P^c = G_X'`, found by swapping `z_P` to a positive
    /// element.
    pub fn standardize(&self, p: &ParabolicHandle) -> Result<(Element, AtomSet)> {
        if p.atoms.is_empty() {
            return Ok((Element::identity(), AtomSet::EMPTY));
        }
        let z = self.z_element(p)?;
        let (c, y) = self
            .conjugate_to_positive(&z)
            .ok_or_else(|| Error::Precondition("z-element has no positive conjugate".into()))?;
        Ok((self.inv(&c), self.support(&y)))
    }

    /// Canonical handle: standardized, with the conjugator taken as
    /// `c^-1` from [`Self::standardize`].
    pub fn canonical_handle(&self, p: &ParabolicHandle) -> Result<ParabolicHandle> {
        let (c, x) = self.standardize(p)?;
        Ok(ParabolicHandle { atoms: x, conjugator: self.inv(&c) })
    }

    /// `w ∈ P` iff `g w g^-1 ∈ G_X`.
    pub fn membership(&self, w: &Element, p: &ParabolicHandle) -> bool {
        let g = &p.conjugator;
        let v = self.mul(&self.mul(g, w), &self.inv(g));
        self.in_standard(&v, p.atoms)
    }

    /// `P ⊆ Q`, via `z_P ∈ Q` (then `P = PC(z_P) ⊆ Q`).
    pub fn contains_parabolic(&self, q: &ParabolicHandle, p: &ParabolicHandle) -> Result<bool> {
        if p.atoms.is_empty() {
            return Ok(true);
        }
        Ok(self.membership(&self.z_element(p)?, q))
    }

    /// Elements of `G_X` with a signed word over `X` of length `<= bound`.
    pub fn standard_ball(&self, x: AtomSet, bound: usize) -> Vec<Element> {
        let gens: Vec<(Element, Element)> = x
            .iter()
            .map(|a| {
                let e = self.atom_elem(a);
                let i = self.inv(&e);
                (e, i)
            })
            .collect();
        let mut seen = HashSet::from([Element::identity()]);
        let mut layer = vec![Element::identity()];
        let mut out = vec![Element::identity()];
        for _ in 0..bound {
            let mut next = Vec::new();
            for u in &layer {
                for (e, i) in &gens {
                    for v in [self.mul(u, e), self.mul(u, i)] {
                        if seen.insert(v.clone()) {
                            next.push(v.clone());
                            out.push(v);
                        }
                    }
                }
            }
            layer = next;
        }
        out
    }

    /// `P1 ∩ P2`. Exact for simultaneously standardizable pairs and
    /// inclusions; otherwise the largest closure of a common element found
    /// among conjugates of words of length `<= bound` in `P1`, tagged as a
    /// lower bound.
    pub fn intersect(&self, p1: &ParabolicHandle, p2: &ParabolicHandle, bound: usize) -> Result<Intersection> {
        // conjugate both by g1^-1 so that P1 becomes G_X
        let g1 = &p1.conjugator;
        let g1i = self.inv(g1);
        let q2 = ParabolicHandle { atoms: p2.atoms, conjugator: self.mul(&p2.conjugator, &g1i) };
        if q2.atoms.is_empty() || p1.atoms.is_empty() {
            return Ok(Intersection {
                handle: ParabolicHandle::standard(AtomSet::EMPTY),
                exactness: Exactness::Exact,
                method: "trivial",
            });
        }
        let z2 = self.z_element(&q2)?;
        if z2.is_positive() || q2.conjugator.is_identity() {
            let y = if q2.conjugator.is_identity() { q2.atoms } else { self.support(&z2) };
            let set = p1.atoms.inter(y);
            return Ok(Intersection {
                handle: ParabolicHandle { atoms: set, conjugator: g1.clone() },
                exactness: Exactness::Exact,
                method: "standard",
            });
        }
        if self.contains_parabolic(p1, p2)? {
            return Ok(Intersection { handle: p2.clone(), exactness: Exactness::Exact, method: "inclusion" });
        }
        if self.contains_parabolic(p2, p1)? {
            return Ok(Intersection { handle: p1.clone(), exactness: Exactness::Exact, method: "inclusion" });
        }
        let common: Vec<Element> = self
            .standard_ball(p1.atoms, bound)
            .into_par_iter()
            .filter(|w| !w.is_identity() && self.membership(w, &q2))
            .collect();
        let best = common
            .iter()
            .map(|w| (self.varphi(w), w))
            .max_by(|a, b| a.0.cmp(&b.0).then_with(|| b.1.cmp(a.1)));
        let handle = match best {
            Some((_, w)) => {
                let pc = self.parabolic_closure(w);
                ParabolicHandle { atoms: pc.atoms, conjugator: self.mul(&pc.conjugator, g1) }
            }
            None => ParabolicHandle::standard(AtomSet::EMPTY),
        };
        Ok(Intersection { handle, exactness: Exactness::LowerBound, method: "bounded-search" })
    }

    /// Atom images are order-2 reflections with distinct images.
    pub fn reflection_atoms(&self) -> bool {
        let g = self.group();
        let imgs: Vec<u32> = (0..self.num_atoms() as u32).map(|a| self.image(self.atom_simple(a))).collect();
        let distinct: HashSet<u32> = imgs.iter().copied().collect();
        distinct.len() == imgs.len() && imgs.iter().all(|&r| g.element_order(r) == 2)
    }

    /// `W_X` irreducible: the non-commutation graph on the images of `X` is
    /// connected.
    pub fn is_irreducible(&self, p: &ParabolicHandle) -> Result<bool> {
        if !self.reflection_atoms() {
            return Err(Error::Precondition("atom images are not distinct order-2 reflections".into()));
        }
        let atoms: Vec<u32> = p.atoms.iter().collect();
        if atoms.is_empty() {
            return Ok(false);
        }
        let g = self.group();
        let img = |a: u32| self.image(self.atom_simple(a));
        let mut reached = AtomSet::single(atoms[0]);
        let mut stack = vec![atoms[0]];
        while let Some(a) = stack.pop() {
            for &b in &atoms {
                if !reached.contains(b) && !g.commute(img(a), img(b)) {
                    reached.insert(b);
                    stack.push(b);
                }
            }
        }
        Ok(reached == p.atoms)
    }

    /// Irreducible `P1 ≠ P2` are adjacent iff their z-elements commute.
    pub fn adjacency(&self, p1: &ParabolicHandle, p2: &ParabolicHandle) -> Result<bool> {
        if !self.is_irreducible(p1)? || !self.is_irreducible(p2)? {
            return Err(Error::Precondition("adjacency needs irreducible parabolic subgroups".into()));
        }
        let z1 = self.z_element(p1)?;
        let z2 = self.z_element(p2)?;
        Ok(z1 != z2 && self.mul(&z1, &z2) == self.mul(&z2, &z1))
    }

    /// `P1^g = P2` iff `z1^g = z2`.
    pub fn conjugating_test(&self, p1: &ParabolicHandle, p2: &ParabolicHandle, g: &Element) -> Result<bool> {
        Ok(self.conj(&self.z_element(p1)?, g) == self.z_element(p2)?)
    }

    /// Signed atom words of length `<= bound`, as distinct elements.
    pub fn ball(&self, bound: usize) -> Vec<Element> {
        self.standard_ball(self.all_atoms(), bound)
    }

    /// Irreducible parabolics `(G_X)^g` with `X` standard irreducible and
    /// `g` in the ball of radius `bound`, deduplicated by z-element.
    pub fn curve_graph(&self, bound: usize) -> Result<CurveGraph> {
        let mut bases = Vec::new();
        for x in self.saturated_sets() {
            let p = ParabolicHandle::standard(x);
            if !x.is_empty() && self.is_irreducible(&p)? {
                bases.push((x, self.z_standard(x)?));
            }
        }
        let ball = self.ball(bound);
        let candidates: Vec<(ParabolicHandle, Element)> = ball
            .par_iter()
            .flat_map_iter(|g| {
                bases.iter().map(move |(x, z)| (ParabolicHandle { atoms: *x, conjugator: g.clone() }, self.conj(z, g)))
            })
            .collect();
        let mut seen: HashMap<Element, usize> = HashMap::new();
        let mut vertices = Vec::new();
        let mut zs = Vec::new();
        for (p, z) in candidates {
            if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(z.clone()) {
                e.insert(vertices.len());
                vertices.push(p);
                zs.push(z);
            }
        }
        let n = vertices.len();
        let edges: Vec<(usize, usize)> = (0..n)
            .into_par_iter()
            .flat_map_iter(|i| {
                let zs = &zs;
                (i + 1..n).filter_map(move |j| {
                    (self.mul(&zs[i], &zs[j]) == self.mul(&zs[j], &zs[i])).then_some((i, j))
                })
            })
            .collect();
        Ok(CurveGraph { vertices, z: zs, edges })
    }

    pub fn handle_label(&self, p: &ParabolicHandle) -> String {
        let atoms = self.atom_set_names(p.atoms).join(",");
        if p.conjugator.is_identity() {
            format!("G{{{atoms}}}")
        } else {
            format!("G{{{atoms}}}^({})", self.format_word(&p.conjugator))
        }
    }

    pub fn curve_graph_dot(&self, g: &CurveGraph) -> String {
        let mut s = String::from("graph curves {\n");
        for (i, p) in g.vertices.iter().enumerate() {
            let _ = writeln!(
                s,
                "  v{i} [label=\"{}\", z=\"{}\", rank={}];",
                self.handle_label(p),
                self.format(&g.z[i]),
                p.atoms.len()
            );
        }
        for (a, b) in &g.edges {
            let _ = writeln!(s, "  v{a} -- v{b};");
        }
        s.push_str("}\n");
        s
    }

    pub fn curve_graph_json(&self, g: &CurveGraph) -> serde_json::Value {
        serde_json::json!({
            "vertices": g.vertices.iter().enumerate().map(|(i, p)| serde_json::json!({
                "X": self.atom_set_names(p.atoms),
                "g": self.format(&p.conjugator),
                "z": self.format(&g.z[i]),
                "rank": p.atoms.len(),
                "irreducible": true,
            })).collect::<Vec<_>>(),
            "edges": g.edges,
        })
    }

    // ---- rank 2 ----

    /// Exponent sum of each atom; well defined when every relation preserves
    /// letter counts (as in Artin groups).
    pub fn abelianization(&self, x: &Element) -> Vec<i64> {
        let k = self.num_atoms();
        let mut v = vec![0i64; k];
        let dw = self.simple_word(self.delta());
        for &a in dw {
            v[a as usize] += x.inf;
        }
        for &f in &x.factors {
            for &a in self.simple_word(f) {
                v[a as usize] += 1;
            }
        }
        v
    }

    /// `Some((g, a))` with `g^-1 a^k g = x` for an atom `a` and `k > 0`.
    pub fn conjugate_atom_power(&self, x: &Element) -> Result<Option<(Element, u32)>> {
        let Some((c, y)) = self.conjugate_to_positive(x) else {
            return Ok(None);
        };
        let graph = self.positive_conjugates_graph(&y)?;
        for (i, v) in graph.vertices.iter().enumerate() {
            let atoms = self.letters_of(v);
            if atoms.len() == 1 && v.inf == 0 {
                let a = atoms.iter().next().unwrap();
                // c x c^-1 = y and y^u = v, so x^h = v with h = c^-1 u
                let u = self.graph_path(&graph, i);
                let h = self.mul(&self.inv(&c), &u);
                return Ok(Some((self.inv(&h), a)));
            }
        }
        Ok(None)
    }

    /// Parabolic closure in the rank-2 models `G12`, `G22` (every proper
    /// parabolic is conjugate to `⟨s⟩`) and `G13` as `I2(6)` (conjugates of
    /// `⟨b^-1⟩` or `⟨Δ a^-2⟩`).
    pub fn pc_rank2(&self, x: &Element, tag: &str) -> Result<Rank2Closure> {
        if x.is_identity() {
            return Ok(Rank2Closure::Trivial);
        }
        let expect_atoms: &[&str] = match tag {
            "G12" | "G22" => &["s", "t", "u"],
            "G13" => &["a", "b"],
            _ => return Err(Error::UnknownName(tag.to_string())),
        };
        if self.atom_names().iter().map(String::as_str).ne(expect_atoms.iter().copied()) {
            return Err(Error::Precondition(format!("structure is not the {tag} model")));
        }
        let cyclic = |x: &Element| -> Result<Option<Rank2Closure>> {
            // positive power first, then the inverse
            for (sign, y) in [(1, x.clone()), (-1, self.inv(x))] {
                if self.exponent_sum(&y) <= 0 {
                    continue;
                }
                if let Some((g, a)) = self.conjugate_atom_power(&y)? {
                    let gen = self.atom_elem(a);
                    let gen = if sign == 1 { gen } else { self.inv(&gen) };
                    return Ok(Some(Rank2Closure::Cyclic { generator: gen, conjugator: g }));
                }
            }
            Ok(None)
        };
        if tag != "G13" {
            return Ok(cyclic(x)?.unwrap_or(Rank2Closure::Whole));
        }
        let ab = self.abelianization(x);
        if ab[0] == 0 && ab[1] != 0 {
            // ⟨b⟩ type
            let r = cyclic(x)?;
            return Ok(match r {
                Some(Rank2Closure::Cyclic { conjugator, .. }) => {
                    Rank2Closure::Cyclic { generator: self.inv(&self.atom_elem(1)), conjugator }
                }
                _ => Rank2Closure::Whole,
            });
        }
        if ab[0] != 0 && ab[1] == 3 * ab[0] {
            // ⟨Δ a^-2⟩ type: x = Δ^k a^-2k up to conjugacy, Δ central
            let k = ab[0];
            let y = self.inv(&self.mul(&self.delta_pow(-k), x));
            let found = if k > 0 {
                self.conjugate_atom_power(&y)?
            } else {
                self.conjugate_atom_power(&self.inv(&y))?
            };
            if let Some((g, a)) = found {
                if a == 0 {
                    let gen = self.mul(&self.delta_pow(1), &self.pow(&self.atom_elem(0), -2));
                    return Ok(Rank2Closure::Cyclic { generator: gen, conjugator: g });
                }
            }
        }
        Ok(Rank2Closure::Whole)
    }

    /// Elements `g^-1 t^k g` of a cyclic closure contain `x`: check.
    pub fn rank2_contains(&self, c: &Rank2Closure, x: &Element) -> bool {
        match c {
            Rank2Closure::Trivial => x.is_identity(),
            Rank2Closure::Whole => true,
            Rank2Closure::Cyclic { generator, conjugator } => {
                let y = self.mul(&self.mul(conjugator, x), &self.inv(conjugator));
                let gs = self.exponent_sum(generator);
                let ys = self.exponent_sum(&y);
                gs != 0 && ys % gs == 0 && self.pow(generator, ys / gs) == y
            }
        }
    }

    /// For atoms `r`, `n <= max_n` and positive `x` of length `<= max_len`:
    /// whenever `x^-1 r^n x` is positive it equals `t^n` with `r x = x t`.
    /// Returns the first failure `(r, n, x)`.
    pub fn check_dmm(&self, max_len: usize, max_n: u32) -> Option<(u32, u32, Element)> {
        let positives = self.positive_ball(max_len);
        positives.par_iter().find_map_first(|x| {
            let xi = self.inv(x);
            for r in 0..self.num_atoms() as u32 {
                let re = self.atom_elem(r);
                let y1 = self.mul(&self.mul(&xi, &re), x);
                let single = (y1.inf == 0 && y1.factors.len() == 1)
                    .then(|| self.simple_atom(y1.factors[0]))
                    .flatten();
                for n in 1..=max_n {
                    let y = self.mul(&self.mul(&xi, &self.pow(&re, n as i64)), x);
                    if !y.is_positive() {
                        continue;
                    }
                    let ok = match single {
                        Some(t) => y == self.pow(&self.atom_elem(t), n as i64),
                        None => false,
                    };
                    if !ok {
                        return Some((r, n, x.clone()));
                    }
                }
            }
            None
        })
    }

    /// Distinct positive elements of length `<= len`.
    pub fn positive_ball(&self, len: usize) -> Vec<Element> {
        let mut seen = HashSet::from([Element::identity()]);
        let mut layer = vec![Element::identity()];
        let mut out = vec![Element::identity()];
        for _ in 0..len {
            let mut next = Vec::new();
            for u in &layer {
                for a in 0..self.num_atoms() as u32 {
                    let mut v = u.clone();
                    self.push_simple(&mut v, self.atom_simple(a));
                    if seen.insert(v.clone()) {
                        next.push(v.clone());
                        out.push(v);
                    }
                }
            }
            layer = next;
        }
        out
    }
}

impl GarsideStructure {
    /// Group-theoretic `φ̄: Ŵ → Z/e` for the `B_n` structure seen as the
    /// braid group of `G(de,1,n)`: exponent of the product of the monomial
    /// entries, modulo `e`. The sign-change atom `t` maps to
    /// `diag(ζ_de, 1, …)`, the `s_i` to transpositions.
    pub fn gdeen_phi(&self, x: &Element, e: u32) -> Result<u32> {
        let t = self.atom_by_name("t").ok_or_else(|| Error::Precondition("not a B_n structure".into()))?;
        let ab = self.abelianization(x);
        Ok(ab[t as usize].rem_euclid(e as i64) as u32)
    }

    /// `B_0 = B̂_0 ∩ ker φ` for a parabolic `B̂_0` of the `G(de,1,n)` braid
    /// group, with `z_(B_0) = z_(B̂_0)^(m_0)`, `m_0 = |Z(Ŵ_0)| / |Z(W_0)|`.
    pub fn gdeen_wrap(&self, p: &ParabolicHandle, de: u32, e: u32, n: usize) -> Result<WrappedHandle> {
        use crate::group::{monomial, transposition, Backend, Family, FiniteGroup, GroupSpec};
        if e <= 1 || de % e != 0 || de / e <= 1 {
            return Err(Error::Precondition("gdeen_wrap needs e > 1 and d = de/e > 1".into()));
        }
        let t = self.atom_by_name("t").ok_or_else(|| Error::Precondition("not a B_n structure".into()))?;
        if self.num_atoms() != n {
            return Err(Error::Precondition(format!("structure has rank {}, expected {n}", self.num_atoms())));
        }
        let mut phase = vec![0i64; n];
        phase[0] = 1;
        let mut gens = vec![monomial(&(0..n).collect::<Vec<_>>(), &phase, de)];
        let mut names = vec!["t".to_string()];
        for i in 1..n {
            gens.push(transposition(n, i - 1, i, de));
            names.push(format!("s{i}"));
        }
        let spec = GroupSpec::new(Family::Imprimitive { de, e: 1, n }, Backend::Monomial { n, m: de }, gens, names);
        let what = FiniteGroup::build(&spec)?;
        // image of each atom of the structure in Ŵ
        let atom_img: Vec<u32> = (0..self.num_atoms() as u32)
            .map(|a| {
                let name = self.atom_name(a);
                let pos = if a == t { 0 } else { name.trim_start_matches('s').parse::<usize>().unwrap_or(0) };
                what.generators()[pos]
            })
            .collect();
        let gens0: Vec<u32> = p.atoms.iter().map(|a| atom_img[a as usize]).collect();
        let w0hat = what.subgroup(&gens0);
        let phase_sum = |g: u32| -> u32 {
            match what.element(g) {
                crate::group::GroupElement::Monomial { phase, .. } => phase.iter().sum::<u32>() % de,
                _ => 0,
            }
        };
        let w0: Vec<u32> = w0hat.iter().copied().filter(|&g| phase_sum(g) % e == 0).collect();
        let center = |set: &[u32]| set.iter().filter(|&&h| set.iter().all(|&g| what.commute(h, g))).count();
        let zh = center(&w0hat);
        let z0 = center(&w0);
        if z0 == 0 || zh % z0 != 0 {
            return Err(Error::Precondition(format!("|Z(Ŵ_0)|/|Z(W_0)| = {zh}/{z0} is not an integer")));
        }
        let exponent = (zh / z0) as u64;
        let zhat = self.z_element(p)?;
        Ok(WrappedHandle { handle: p.clone(), de, e, n, exponent, z: self.pow(&zhat, exponent as i64) })
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u32, b: u32) -> u32 {
    a / gcd(a, b) * b
}
