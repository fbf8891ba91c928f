//! Oracles built from the finite group and the interval alone, never from
//! the structure tables under test.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::{Arc, Mutex, OnceLock};

use garside::catalog;
use garside::{Element, GarsideStructure, Letter};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Catalog structure, built once per test binary.
pub fn structure(name: &str) -> Arc<GarsideStructure> {
    static BUILT: OnceLock<Mutex<HashMap<String, Arc<GarsideStructure>>>> = OnceLock::new();
    let map = BUILT.get_or_init(Default::default);
    if let Some(s) = map.lock().unwrap().get(name) {
        return s.clone();
    }
    let s = catalog::build(name).unwrap_or_else(|e| panic!("{name}: {e}")).structure;
    map.lock().unwrap().insert(name.to_string(), s.clone());
    s
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Group image of an atom.
pub fn atom_image(s: &GarsideStructure, a: u32) -> u32 {
    s.interval().members[s.interval().atoms[a as usize]]
}

/// Group image of a signed word, multiplying letter images.
pub fn word_image(s: &GarsideStructure, w: &[Letter]) -> u32 {
    let g = s.group();
    let delta = s.interval().members[s.interval().apex];
    let mut x = 0u32;
    for &l in w {
        let y = match l {
            Letter::Atom(a) => atom_image(s, a),
            Letter::Inverse(a) => g.inv(atom_image(s, a)),
            Letter::Delta(k) => {
                let base = if k >= 0 { delta } else { g.inv(delta) };
                (0..k.unsigned_abs()).fold(0, |acc, _| g.mul(acc, base))
            }
        };
        x = g.mul(x, y);
    }
    x
}

pub fn random_signed(s: &GarsideStructure, rng: &mut impl Rng, len: usize) -> Vec<Letter> {
    let k = s.num_atoms() as u32;
    (0..len)
        .map(|_| {
            let a = rng.random_range(0..k);
            if rng.random_bool(0.5) {
                Letter::Atom(a)
            } else {
                Letter::Inverse(a)
            }
        })
        .collect()
}

pub fn random_positive_word(s: &GarsideStructure, rng: &mut impl Rng, len: usize) -> Vec<u32> {
    let k = s.num_atoms() as u32;
    (0..len).map(|_| rng.random_range(0..k)).collect()
}

/// Every reduced atom word of every interval member, from group data.
pub struct WordOracle {
    /// member (group index) -> all reduced words in atom indices
    words: HashMap<u32, Vec<Vec<u32>>>,
    /// group index -> interval length, for members only
    length: HashMap<u32, u32>,
    atoms: Vec<u32>,
    mul: Box<dyn Fn(u32, u32) -> u32 + Sync + Send>,
}

impl WordOracle {
    pub fn new(s: &Arc<GarsideStructure>) -> Self {
        let iv = s.interval();
        let atoms: Vec<u32> = (0..s.num_atoms() as u32).map(|a| atom_image(s, a)).collect();
        let length: HashMap<u32, u32> = iv.members.iter().zip(&iv.lengths).map(|(&m, &l)| (m, l)).collect();
        let group = s.group_arc();
        let mut words: HashMap<u32, Vec<Vec<u32>>> = HashMap::from([(0, vec![Vec::new()])]);
        let mut layer: Vec<(u32, Vec<u32>)> = vec![(0, Vec::new())];
        while !layer.is_empty() {
            let mut next = Vec::new();
            for (g, w) in &layer {
                for (a, &img) in atoms.iter().enumerate() {
                    let h = group.mul(*g, img);
                    if length.get(&h) == Some(&(w.len() as u32 + 1)) {
                        let mut v = w.clone();
                        v.push(a as u32);
                        words.entry(h).or_default().push(v.clone());
                        next.push((h, v));
                    }
                }
            }
            layer = next;
        }
        let g2 = group.clone();
        WordOracle { words, length, atoms, mul: Box::new(move |a, b| g2.mul(a, b)) }
    }

    fn image(&self, w: &[u32]) -> u32 {
        w.iter().fold(0, |acc, &a| (self.mul)(acc, self.atoms[a as usize]))
    }

    /// `w` is a reduced word of an interval member.
    pub fn is_simple_word(&self, w: &[u32]) -> Option<u32> {
        let g = self.image(w);
        (self.length.get(&g) == Some(&(w.len() as u32))).then_some(g)
    }

    /// All positive words equal in the monoid to `w`: close under replacing
    /// any factor that spells a simple by another word of that simple.
    pub fn class(&self, w: &[u32]) -> HashSet<Vec<u32>> {
        let mut seen = HashSet::from([w.to_vec()]);
        let mut queue = VecDeque::from([w.to_vec()]);
        while let Some(v) = queue.pop_front() {
            for i in 0..v.len() {
                for j in i + 2..=v.len() {
                    let Some(g) = self.is_simple_word(&v[i..j]) else { break };
                    for alt in &self.words[&g] {
                        let mut u = v[..i].to_vec();
                        u.extend_from_slice(alt);
                        u.extend_from_slice(&v[j..]);
                        if seen.insert(u.clone()) {
                            queue.push_back(u);
                        }
                    }
                }
            }
        }
        seen
    }

    /// `p ≼ w` in the monoid.
    pub fn left_divides(&self, p: &[u32], w: &[u32]) -> bool {
        if p.len() > w.len() {
            return false;
        }
        let cp = self.class(p);
        self.class(w).iter().any(|v| cp.contains(&v[..p.len()]))
    }

    /// Group elements of the simples dividing `w` on the left.
    pub fn simple_prefixes(&self, w: &[u32]) -> HashSet<u32> {
        let mut out = HashSet::new();
        for v in self.class(w) {
            for k in 0..=v.len() {
                match self.is_simple_word(&v[..k]) {
                    Some(g) => {
                        out.insert(g);
                    }
                    None => break,
                }
            }
        }
        out
    }

    pub fn member_len(&self, g: u32) -> u32 {
        self.length[&g]
    }
}

/// Positive elements spelled by words of length `<= len`, with one word each.
pub fn positive_words(s: &GarsideStructure, len: usize) -> Vec<(Element, Vec<u32>)> {
    let mut seen = HashSet::from([Element::identity()]);
    let mut out = vec![(Element::identity(), Vec::new())];
    let mut layer = out.clone();
    for _ in 0..len {
        let mut next = Vec::new();
        for (x, w) in &layer {
            for a in 0..s.num_atoms() as u32 {
                let y = s.mul(x, &s.atom_elem(a));
                if seen.insert(y.clone()) {
                    let mut v = w.clone();
                    v.push(a);
                    next.push((y.clone(), v.clone()));
                    out.push((y, v));
                }
            }
        }
        layer = next;
    }
    out
}
