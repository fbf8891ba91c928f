//! The interval `[1,c]` of a finite group with respect to a generating set.

use std::collections::{HashMap, VecDeque};

use crate::bits::Bits;
use crate::group::FiniteGroup;

/// The poset `[1,c] = { u : l(u) + l(u^-1 c) = l(c) }` with its prefix and
/// suffix orders. Members are listed in BFS order from the identity, with
/// letters of the generating set tried in declared order, so the stored
/// word of each member is its lexicographically smallest reduced word.
#[derive(Clone, Debug)]
pub struct Interval {
    /// Generating set, as group element indices, in declared order.
    pub letters: Vec<u32>,
    pub letter_names: Vec<String>,
    /// Group index of each member.
    pub members: Vec<u32>,
    pub lengths: Vec<u32>,
    /// Lexicographically smallest reduced word (letter positions).
    pub words: Vec<Vec<u16>>,
    pub apex: usize,
    /// Members of length one, in letter order.
    pub atoms: Vec<usize>,
    /// `prefix[v]` = members `u` with `u` a prefix of `v`.
    pub prefix: Vec<Bits>,
    /// `suffix[v]` = members `u` with `u` a suffix of `v`.
    pub suffix: Vec<Bits>,
    /// Group elements that are suffixes of the apex.
    pub apex_suffixes: Vec<u32>,
    member_of: HashMap<u32, usize>,
}

/// Build `[1,c]` for the generating set `letters` (group indices).
pub fn length_and_interval(group: &FiniteGroup, letters: &[u32], names: &[String], c: u32) -> Interval {
    let len = group.lengths(letters);
    let lc = len[c as usize];
    assert!(lc != u32::MAX, "apex not reachable from the generating set");
    let in_interval = |u: u32| -> bool {
        let lu = len[u as usize];
        lu != u32::MAX && lu + len[group.mul(group.inv(u), c) as usize] == lc
    };

    // BFS restricted to the interval gives shortlex-minimal words.
    let mut members = vec![0u32];
    let mut words: Vec<Vec<u16>> = vec![Vec::new()];
    let mut member_of = HashMap::from([(0u32, 0usize)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(k) = queue.pop_front() {
        let u = members[k];
        for (li, &s) in letters.iter().enumerate() {
            let v = group.mul(u, s);
            if member_of.contains_key(&v) || len[v as usize] != len[u as usize] + 1 || !in_interval(v) {
                continue;
            }
            let mut w = words[k].clone();
            w.push(li as u16);
            member_of.insert(v, members.len());
            queue.push_back(members.len());
            members.push(v);
            words.push(w);
        }
    }
    let n = members.len();
    let lengths: Vec<u32> = members.iter().map(|&u| len[u as usize]).collect();
    let apex = member_of[&c];
    let atoms: Vec<usize> = (0..n).filter(|&k| lengths[k] == 1).collect();

    // prefix order: u <= v iff a reduced word of v extends one of u, so the
    // down-sets follow the covering edges v = w s.
    let mut prefix = vec![Bits::new(n); n];
    for v in 0..n {
        prefix[v].set(v);
        for &s in letters {
            let w = group.mul(members[v], group.inv(s));
            if let Some(&wk) = member_of.get(&w) {
                if lengths[wk] + 1 == lengths[v] {
                    let (a, b) = if wk < v { prefix.split_at_mut(v) } else { unreachable!() };
                    b[0].union_with(&a[wk]);
                }
            }
        }
    }
    let mut suffix = vec![Bits::new(n); n];
    for v in 0..n {
        for u in 0..n {
            if lengths[u] <= lengths[v] {
                let q = group.mul(members[v], group.inv(members[u]));
                if len[q as usize] + lengths[u] == lengths[v] {
                    suffix[v].set(u);
                }
            }
        }
    }
    let apex_suffixes: Vec<u32> = (0..group.order() as u32)
        .filter(|&u| {
            let lu = len[u as usize];
            lu != u32::MAX && len[group.mul(c, group.inv(u)) as usize] + lu == lc
        })
        .collect();

    Interval {
        letters: letters.to_vec(),
        letter_names: names.to_vec(),
        members,
        lengths,
        words,
        apex,
        atoms,
        prefix,
        suffix,
        apex_suffixes,
        member_of,
    }
}

impl Interval {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn member_index(&self, g: u32) -> Option<usize> {
        self.member_of.get(&g).copied()
    }

    pub fn is_prefix(&self, u: usize, v: usize) -> bool {
        self.prefix[v].get(u)
    }

    pub fn is_suffix(&self, u: usize, v: usize) -> bool {
        self.suffix[v].get(u)
    }

    pub fn word_names(&self, k: usize) -> Vec<&str> {
        self.words[k].iter().map(|&l| self.letter_names[l as usize].as_str()).collect()
    }

    /// Prefix and suffix sets of the apex coincide.
    pub fn is_balanced(&self) -> bool {
        let mut pre: Vec<u32> = self.members.clone();
        pre.sort_unstable();
        pre == self.apex_suffixes
    }

    /// Every pair has a unique join and meet inside the interval, for the
    /// prefix order and for the suffix order.
    pub fn lattice_check(&self) -> bool {
        poset_is_lattice(&self.prefix) && poset_is_lattice(&self.suffix)
    }

    /// A copy with member `k` deleted (used to exercise the lattice check).
    pub fn without_member(&self, k: usize) -> Interval {
        let keep: Vec<usize> = (0..self.len()).filter(|&i| i != k).collect();
        let n = keep.len();
        let restrict = |sets: &[Bits]| -> Vec<Bits> {
            keep.iter()
                .map(|&v| {
                    let mut b = Bits::new(n);
                    for (ni, &u) in keep.iter().enumerate() {
                        if sets[v].get(u) {
                            b.set(ni);
                        }
                    }
                    b
                })
                .collect()
        };
        let members: Vec<u32> = keep.iter().map(|&i| self.members[i]).collect();
        Interval {
            letters: self.letters.clone(),
            letter_names: self.letter_names.clone(),
            member_of: members.iter().enumerate().map(|(i, &g)| (g, i)).collect(),
            members,
            lengths: keep.iter().map(|&i| self.lengths[i]).collect(),
            words: keep.iter().map(|&i| self.words[i].clone()).collect(),
            apex: keep.iter().position(|&i| i == self.apex).unwrap_or(0),
            atoms: keep.iter().enumerate().filter(|(_, &i)| self.lengths[i] == 1).map(|(ni, _)| ni).collect(),
            prefix: restrict(&self.prefix),
            suffix: restrict(&self.suffix),
            apex_suffixes: self.apex_suffixes.clone(),
        }
    }

    /// For every `c0` in the interval, the subgroup `W0` generated by the
    /// letters below `c0` meets the interval exactly in `[1,c0]`.
    pub fn check_hypdual(&self, group: &FiniteGroup) -> bool {
        self.hypdual_failures(group).is_empty()
    }

    pub fn hypdual_failures(&self, group: &FiniteGroup) -> Vec<usize> {
        let mut bad = Vec::new();
        for c0 in 0..self.len() {
            let gens: Vec<u32> = self
                .atoms
                .iter()
                .filter(|&&a| self.is_prefix(a, c0))
                .map(|&a| self.members[a])
                .collect();
            let sub = group.subgroup(&gens);
            let mut inside: Vec<usize> = sub.iter().filter_map(|&g| self.member_index(g)).collect();
            inside.sort_unstable();
            let below: Vec<usize> = self.prefix[c0].iter().collect();
            if inside != below {
                bad.push(c0);
            }
        }
        bad
    }
}

/// `down[v]` lists the elements below `v` (reflexive). The poset is a
/// lattice iff every pair has a least upper bound and a greatest lower bound.
pub fn poset_is_lattice(down: &[Bits]) -> bool {
    let n = down.len();
    let mut up = vec![Bits::new(n); n];
    for v in 0..n {
        for u in down[v].iter() {
            up[u].set(v);
        }
    }
    let has_extremum = |common: &Bits, sets: &[Bits]| -> bool {
        common.iter().any(|m| common.is_subset(&sets[m]))
    };
    for u in 0..n {
        for v in (u + 1)..n {
            let ub = up[u].and(&up[v]);
            if !has_extremum(&ub, &up) {
                return false;
            }
            let lb = down[u].and(&down[v]);
            if !has_extremum(&lb, &down) {
                return false;
            }
        }
    }
    true
}
