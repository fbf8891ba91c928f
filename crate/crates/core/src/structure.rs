//! Garside structure tables built from a balanced lattice interval.

use std::collections::HashMap;
use std::sync::Arc;

use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::interval::Interval;

/// Marker for "no such simple".
pub const NONE: u32 = u32::MAX;

/// Above this many simples the binary tables are not materialized and
/// lattice operations are answered from the bitsets directly.
pub const DEFAULT_TABLE_THRESHOLD: usize = 1024;

#[derive(Clone, Debug)]
struct Tables {
    meet: Vec<u32>,
    join: Vec<u32>,
    rmeet: Vec<u32>,
    rjoin: Vec<u32>,
    prod: Vec<u32>,
    ldiv: Vec<u32>,
}

/// Immutable simple-element tables of an interval Garside structure.
///
/// Simple `0` is the identity; simples are indexed like the interval
/// members. Atoms are numbered `0..k` in declared order.
#[derive(Clone, Debug)]
pub struct GarsideStructure {
    pub name: String,
    atom_names: Vec<String>,
    atom_lookup: HashMap<String, u32>,
    n: usize,
    lens: Vec<u32>,
    words: Vec<Vec<u32>>,
    atom_simple: Vec<u32>,
    simple_atom: Vec<u32>,
    delta: u32,
    right_atom: Vec<u32>,
    left_atom: Vec<u32>,
    prefix: Vec<Bits>,
    suffix: Vec<Bits>,
    up: Vec<Bits>,
    rup: Vec<Bits>,
    rcomp: Vec<u32>,
    lcomp: Vec<u32>,
    tau: Vec<Vec<u32>>,
    tables: Option<Tables>,
    group: Arc<FiniteGroup>,
    interval: Arc<Interval>,
}

/// Tables for the interval `[1,c]`; the structure is named after the group
/// family.
pub fn build_structure(group: Arc<FiniteGroup>, interval: Interval) -> Result<GarsideStructure> {
    let name = format!("{:?}", group.family());
    GarsideStructure::build(&name, group, interval)
}

impl GarsideStructure {
    /// Build the tables, refusing intervals that are not balanced lattices.
    pub fn build(name: &str, group: Arc<FiniteGroup>, interval: Interval) -> Result<Self> {
        Self::build_with_threshold(name, group, interval, DEFAULT_TABLE_THRESHOLD)
    }

    pub fn build_with_threshold(
        name: &str,
        group: Arc<FiniteGroup>,
        interval: Interval,
        threshold: usize,
    ) -> Result<Self> {
        if !interval.is_balanced() {
            return Err(Error::Refused("interval is not balanced".into()));
        }
        if !interval.lattice_check() {
            return Err(Error::Refused("interval is not a lattice".into()));
        }
        let n = interval.len();
        let k = interval.atoms.len();
        if k > 128 {
            return Err(Error::Refused(format!("{k} atoms exceeds the supported 128")));
        }
        let mut simple_atom = vec![NONE; n];
        let mut atom_names = Vec::with_capacity(k);
        let mut letter_atom = vec![NONE; interval.letters.len()];
        for (a, &m) in interval.atoms.iter().enumerate() {
            simple_atom[m] = a as u32;
            let letter = interval.words[m][0] as usize;
            letter_atom[letter] = a as u32;
            atom_names.push(interval.letter_names[letter].clone());
        }
        let words: Vec<Vec<u32>> = interval
            .words
            .iter()
            .map(|w| w.iter().map(|&l| letter_atom[l as usize]).collect::<Vec<u32>>())
            .collect();
        if words.iter().flatten().any(|&a| a == NONE) {
            return Err(Error::Refused("a reduced word uses a non-atom letter".into()));
        }
        let atom_simple: Vec<u32> = interval.atoms.iter().map(|&m| m as u32).collect();
        let lens = interval.lengths.clone();
        let delta = interval.apex as u32;
        let img = &interval.members;
        let lookup = |g: u32| interval.member_index(g).map(|x| x as u32).unwrap_or(NONE);

        let mut right_atom = vec![NONE; n * k];
        let mut left_atom = vec![NONE; n * k];
        for s in 0..n {
            for a in 0..k {
                let am = atom_simple[a] as usize;
                let r = lookup(group.mul(img[s], img[am]));
                if r != NONE && lens[r as usize] == lens[s] + 1 {
                    right_atom[s * k + a] = r;
                }
                let l = lookup(group.mul(img[am], img[s]));
                if l != NONE && lens[l as usize] == lens[s] + 1 {
                    left_atom[s * k + a] = l;
                }
            }
        }
        let dg = img[delta as usize];
        let rcomp: Vec<u32> = (0..n).map(|s| lookup(group.mul(group.inv(img[s]), dg))).collect();
        let lcomp: Vec<u32> = (0..n).map(|s| lookup(group.mul(dg, group.inv(img[s])))).collect();
        let tau1: Vec<u32> = (0..n).map(|s| lookup(group.conj(img[s], dg))).collect();
        if rcomp.contains(&NONE) || lcomp.contains(&NONE) || tau1.contains(&NONE) {
            return Err(Error::Refused("complements or Delta-conjugates leave the interval".into()));
        }
        let mut tau = vec![(0..n as u32).collect::<Vec<u32>>()];
        loop {
            let last = tau.last().unwrap();
            let next: Vec<u32> = last.iter().map(|&s| tau1[s as usize]).collect();
            if next == tau[0] {
                break;
            }
            tau.push(next);
        }

        let prefix = interval.prefix.clone();
        let suffix = interval.suffix.clone();
        let transpose = |down: &[Bits]| -> Vec<Bits> {
            let mut up = vec![Bits::new(n); n];
            for v in 0..n {
                for u in down[v].iter() {
                    up[u].set(v);
                }
            }
            up
        };
        let up = transpose(&prefix);
        let rup = transpose(&suffix);

        let mut st = GarsideStructure {
            name: name.to_string(),
            atom_lookup: atom_names.iter().enumerate().map(|(i, s)| (s.clone(), i as u32)).collect(),
            atom_names,
            n,
            lens,
            words,
            atom_simple,
            simple_atom,
            delta,
            right_atom,
            left_atom,
            prefix,
            suffix,
            up,
            rup,
            rcomp,
            lcomp,
            tau,
            tables: None,
            group,
            interval: Arc::new(interval),
        };
        if n <= threshold {
            st.tables = Some(st.tabulate());
        }
        Ok(st)
    }

    fn tabulate(&self) -> Tables {
        let n = self.n;
        let mut t = Tables {
            meet: vec![NONE; n * n],
            join: vec![NONE; n * n],
            rmeet: vec![NONE; n * n],
            rjoin: vec![NONE; n * n],
            prod: vec![NONE; n * n],
            ldiv: vec![NONE; n * n],
        };
        for a in 0..n as u32 {
            for b in 0..n as u32 {
                let i = a as usize * n + b as usize;
                t.meet[i] = self.meet_from_bits(a, b);
                t.join[i] = self.join_from_bits(a, b);
                t.rmeet[i] = self.rmeet_from_bits(a, b);
                t.rjoin[i] = self.rjoin_from_bits(a, b);
                t.prod[i] = self.prod_by_walk(a, b);
                t.ldiv[i] = self.ldiv_by_group(a, b);
            }
        }
        t
    }

    // ---- basic accessors ----

    pub fn num_simples(&self) -> usize {
        self.n
    }

    pub fn num_atoms(&self) -> usize {
        self.atom_simple.len()
    }

    pub fn delta(&self) -> u32 {
        self.delta
    }

    pub fn delta_len(&self) -> u32 {
        self.lens[self.delta as usize]
    }

    pub fn simple_len(&self, s: u32) -> u32 {
        self.lens[s as usize]
    }

    pub fn simple_word(&self, s: u32) -> &[u32] {
        &self.words[s as usize]
    }

    pub fn atom_simple(&self, a: u32) -> u32 {
        self.atom_simple[a as usize]
    }

    /// Atom id of a length-one simple.
    pub fn simple_atom(&self, s: u32) -> Option<u32> {
        let a = self.simple_atom[s as usize];
        (a != NONE).then_some(a)
    }

    pub fn atom_names(&self) -> &[String] {
        &self.atom_names
    }

    pub fn atom_name(&self, a: u32) -> &str {
        &self.atom_names[a as usize]
    }

    pub fn atom_by_name(&self, name: &str) -> Option<u32> {
        self.atom_lookup.get(name).copied()
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn group_arc(&self) -> Arc<FiniteGroup> {
        self.group.clone()
    }

    pub fn interval(&self) -> &Interval {
        &self.interval
    }

    /// Group element of a simple.
    pub fn image(&self, s: u32) -> u32 {
        self.interval.members[s as usize]
    }

    pub fn simple_of_image(&self, g: u32) -> Option<u32> {
        self.interval.member_index(g).map(|x| x as u32)
    }

    pub fn has_tables(&self) -> bool {
        self.tables.is_some()
    }

    // ---- orders and lattice operations on simples ----

    pub fn is_prefix(&self, a: u32, b: u32) -> bool {
        self.prefix[b as usize].get(a as usize)
    }

    pub fn is_suffix(&self, a: u32, b: u32) -> bool {
        self.suffix[b as usize].get(a as usize)
    }

    pub fn prefixes(&self, s: u32) -> &Bits {
        &self.prefix[s as usize]
    }

    pub fn suffixes(&self, s: u32) -> &Bits {
        &self.suffix[s as usize]
    }

    fn extremum(&self, set: &Bits, longest: bool) -> u32 {
        let mut best = NONE;
        for x in set.iter() {
            let better = best == NONE
                || (longest && self.lens[x] > self.lens[best as usize])
                || (!longest && self.lens[x] < self.lens[best as usize]);
            if better {
                best = x as u32;
            }
        }
        best
    }

    fn meet_from_bits(&self, a: u32, b: u32) -> u32 {
        self.extremum(&self.prefix[a as usize].and(&self.prefix[b as usize]), true)
    }

    fn join_from_bits(&self, a: u32, b: u32) -> u32 {
        self.extremum(&self.up[a as usize].and(&self.up[b as usize]), false)
    }

    fn rmeet_from_bits(&self, a: u32, b: u32) -> u32 {
        self.extremum(&self.suffix[a as usize].and(&self.suffix[b as usize]), true)
    }

    fn rjoin_from_bits(&self, a: u32, b: u32) -> u32 {
        self.extremum(&self.rup[a as usize].and(&self.rup[b as usize]), false)
    }

    fn prod_by_walk(&self, a: u32, b: u32) -> u32 {
        let k = self.num_atoms();
        let mut cur = a;
        for &x in &self.words[b as usize] {
            cur = self.right_atom[cur as usize * k + x as usize];
            if cur == NONE {
                return NONE;
            }
        }
        cur
    }

    fn ldiv_by_group(&self, a: u32, b: u32) -> u32 {
        if !self.is_prefix(a, b) {
            return NONE;
        }
        let g = self.group.mul(self.group.inv(self.image(a)), self.image(b));
        self.simple_of_image(g).unwrap_or(NONE)
    }

    #[inline]
    fn tab(&self, pick: impl Fn(&Tables) -> &Vec<u32>, a: u32, b: u32) -> Option<u32> {
        self.tables.as_ref().map(|t| pick(t)[a as usize * self.n + b as usize])
    }

    /// Left gcd `a ∧ b` (greatest common prefix).
    pub fn meet(&self, a: u32, b: u32) -> u32 {
        self.tab(|t| &t.meet, a, b).unwrap_or_else(|| self.meet_from_bits(a, b))
    }

    /// Left lcm `a ∨ b` (least common right multiple).
    pub fn join(&self, a: u32, b: u32) -> u32 {
        self.tab(|t| &t.join, a, b).unwrap_or_else(|| self.join_from_bits(a, b))
    }

    /// Right gcd (greatest common suffix).
    pub fn rmeet(&self, a: u32, b: u32) -> u32 {
        self.tab(|t| &t.rmeet, a, b).unwrap_or_else(|| self.rmeet_from_bits(a, b))
    }

    /// Right lcm (least common left multiple).
    pub fn rjoin(&self, a: u32, b: u32) -> u32 {
        self.tab(|t| &t.rjoin, a, b).unwrap_or_else(|| self.rjoin_from_bits(a, b))
    }

    /// `a b` when it is simple.
    pub fn prod(&self, a: u32, b: u32) -> Option<u32> {
        let r = self.tab(|t| &t.prod, a, b).unwrap_or_else(|| self.prod_by_walk(a, b));
        (r != NONE).then_some(r)
    }

    /// `a^-1 b` when `a` is a prefix of `b`.
    pub fn ldiv(&self, a: u32, b: u32) -> Option<u32> {
        let r = self.tab(|t| &t.ldiv, a, b).unwrap_or_else(|| self.ldiv_by_group(a, b));
        (r != NONE).then_some(r)
    }

    /// `b a^-1` when `a` is a suffix of `b`.
    pub fn rdiv(&self, b: u32, a: u32) -> Option<u32> {
        if !self.is_suffix(a, b) {
            return None;
        }
        // b = q a and lcomp(b) b = Δ give lcomp(a) = lcomp(b) q.
        self.ldiv(self.lcomp(b), self.lcomp(a))
    }

    /// Right complement `∂s` with `s ∂s = Δ`.
    pub fn rcomp(&self, s: u32) -> u32 {
        self.rcomp[s as usize]
    }

    /// Left complement with `lcomp(s) s = Δ`.
    pub fn lcomp(&self, s: u32) -> u32 {
        self.lcomp[s as usize]
    }

    /// Smallest `E >= 1` with `τ^E = id` on simples.
    pub fn tau_order(&self) -> usize {
        self.tau.len()
    }

    /// `τ^k(s)` where `τ(s) = Δ^-1 s Δ`.
    pub fn tau_pow(&self, s: u32, k: i64) -> u32 {
        let e = self.tau.len() as i64;
        self.tau[k.rem_euclid(e) as usize][s as usize]
    }

    pub fn tau(&self, s: u32) -> u32 {
        self.tau_pow(s, 1)
    }

    /// `a \ b`: the simple `c` with `a c = a ∨ b`.
    pub fn complement(&self, a: u32, b: u32) -> u32 {
        self.ldiv(a, self.join(a, b)).expect("a divides a ∨ b")
    }

    /// `a (∂a ∧ b)`, the largest simple prefix of `a b`.
    pub fn simple_head(&self, a: u32, b: u32) -> u32 {
        let m = self.meet(self.rcomp(a), b);
        self.prod(a, m).expect("a (∂a ∧ b) is simple")
    }

    /// Left-weighting of the pair `(a, b)`: returns `(h, t)` with `a b = h t`
    /// and `h = a b ∧ Δ`.
    pub fn left_weight(&self, a: u32, b: u32) -> (u32, u32) {
        let m = self.meet(self.rcomp(a), b);
        if m == 0 {
            return (a, b);
        }
        let h = self.prod(a, m).expect("a (∂a ∧ b) is simple");
        let t = self.ldiv(m, b).expect("m divides b");
        (h, t)
    }

    /// Largest simple suffix of `a b`: `(a ∧̃ lcomp(b)) b`.
    pub fn tail_simple(&self, a: u32, b: u32) -> u32 {
        let m = self.rmeet(a, self.lcomp(b));
        self.prod(m, b).expect("suffix product is simple")
    }

    pub fn is_balanced_simple(&self, s: u32) -> bool {
        self.prefix[s as usize] == self.suffix[s as usize]
    }

    /// `a s` for an atom `a`, if simple.
    pub fn left_atom_mul(&self, a: u32, s: u32) -> Option<u32> {
        let r = self.left_atom[s as usize * self.num_atoms() + a as usize];
        (r != NONE).then_some(r)
    }

    /// `s a` for an atom `a`, if simple.
    pub fn right_atom_mul(&self, s: u32, a: u32) -> Option<u32> {
        let r = self.right_atom[s as usize * self.num_atoms() + a as usize];
        (r != NONE).then_some(r)
    }

    /// Atoms dividing `s` on the left.
    pub fn atoms_below(&self, s: u32) -> Vec<u32> {
        (0..self.num_atoms() as u32)
            .filter(|&a| self.is_prefix(self.atom_simple(a), s))
            .collect()
    }

    pub fn simple_name(&self, s: u32) -> String {
        if s == 0 {
            return "1".into();
        }
        self.words[s as usize]
            .iter()
            .map(|&a| self.atom_names[a as usize].as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Simple with the given atom word, if the word is a reduced word of a
    /// simple.
    pub fn simple_from_atoms(&self, word: &[u32]) -> Option<u32> {
        let mut cur = 0u32;
        for &a in word {
            cur = self.right_atom_mul(cur, a)?;
        }
        Some(cur)
    }
}
