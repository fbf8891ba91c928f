//! Elements of the Garside group in left normal form, and the lattice
//! operations on positive elements.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::structure::GarsideStructure;

/// `Δ^inf · x1 ⋯ xr` with every `xi` a proper simple and each pair
/// `(xi, xi+1)` left-weighted. The representation is unique.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Element {
    pub inf: i64,
    pub factors: Vec<u32>,
}

/// One letter of a signed word: an atom or its inverse, or a power of Δ.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Letter {
    Atom(u32),
    Inverse(u32),
    Delta(i64),
}

/// Reduced left fraction `a^-1 b` (or right fraction `u v^-1`), both parts
/// positive.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FractionPair {
    pub denominator: Element,
    pub numerator: Element,
}

impl Element {
    pub fn identity() -> Self {
        Element::default()
    }

    pub fn sup(&self) -> i64 {
        self.inf + self.factors.len() as i64
    }

    pub fn canonical_length(&self) -> usize {
        self.factors.len()
    }

    pub fn is_identity(&self) -> bool {
        self.inf == 0 && self.factors.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.inf >= 0
    }
}

impl GarsideStructure {
    pub fn delta_pow(&self, k: i64) -> Element {
        Element { inf: k, factors: Vec::new() }
    }

    pub fn simple_elem(&self, s: u32) -> Element {
        let mut x = Element::identity();
        self.push_simple(&mut x, s);
        x
    }

    pub fn atom_elem(&self, a: u32) -> Element {
        self.simple_elem(self.atom_simple(a))
    }

    /// Right-multiply a normal form by a simple, restoring normality with a
    /// single right-to-left sweep.
    pub fn push_simple(&self, x: &mut Element, s: u32) {
        if s == 0 {
            return;
        }
        if s == self.delta() {
            for f in x.factors.iter_mut() {
                *f = self.tau(*f);
            }
            x.inf += 1;
            return;
        }
        x.factors.push(s);
        let mut i = x.factors.len() - 1;
        while i > 0 {
            let (a, b) = (x.factors[i - 1], x.factors[i]);
            let (h, t) = self.left_weight(a, b);
            if h == a {
                break;
            }
            x.factors[i - 1] = h;
            x.factors[i] = t;
            i -= 1;
        }
        self.tidy(x);
    }

    /// Move leading Δ factors into the infimum and drop trailing identities.
    fn tidy(&self, x: &mut Element) {
        let d = self.delta();
        let lead = x.factors.iter().take_while(|&&f| f == d).count();
        if lead > 0 {
            x.factors.drain(..lead);
            x.inf += lead as i64;
        }
        while x.factors.last() == Some(&0) {
            x.factors.pop();
        }
    }

    /// `x Δ^k`.
    pub fn mul_delta(&self, x: &Element, k: i64) -> Element {
        Element {
            inf: x.inf + k,
            factors: x.factors.iter().map(|&f| self.tau_pow(f, k)).collect(),
        }
    }

    /// `Δ^-k x Δ^k`.
    pub fn tau_elem(&self, x: &Element, k: i64) -> Element {
        Element { inf: x.inf, factors: x.factors.iter().map(|&f| self.tau_pow(f, k)).collect() }
    }

    pub fn mul(&self, x: &Element, y: &Element) -> Element {
        let mut r = self.mul_delta(x, y.inf);
        for &f in &y.factors {
            self.push_simple(&mut r, f);
        }
        r
    }

    pub fn inv(&self, x: &Element) -> Element {
        // x^-1 = Δ^-(p+r) τ^-(p+r)(∂xr) ⋯ τ^-(p+1)(∂x1)
        let r = x.factors.len() as i64;
        let mut out = self.delta_pow(-(x.inf + r));
        for (i, &f) in x.factors.iter().enumerate().rev() {
            let shift = x.inf + i as i64 + 1;
            self.push_simple(&mut out, self.tau_pow(self.rcomp(f), -shift));
        }
        out
    }

    /// `x s^-1` for a simple `s`.
    pub fn mul_simple_inv(&self, x: &Element, s: u32) -> Element {
        // s^-1 = ∂s Δ^-1
        let mut r = x.clone();
        self.push_simple(&mut r, self.rcomp(s));
        self.mul_delta(&r, -1)
    }

    /// `s^-1 x` for a simple `s`.
    pub fn simple_inv_mul(&self, s: u32, x: &Element) -> Element {
        // s^-1 = Δ^-1 τ^-1(∂s)
        let mut left = self.delta_pow(-1);
        self.push_simple(&mut left, self.tau_pow(self.rcomp(s), -1));
        self.mul(&left, x)
    }

    /// `u^-1 x u`.
    pub fn conj(&self, x: &Element, u: &Element) -> Element {
        self.mul(&self.mul(&self.inv(u), x), u)
    }

    pub fn pow(&self, x: &Element, k: i64) -> Element {
        let base = if k < 0 { self.inv(x) } else { x.clone() };
        let mut out = Element::identity();
        for _ in 0..k.unsigned_abs() {
            out = self.mul(&out, &base);
        }
        out
    }

    pub fn from_letters(&self, word: &[Letter]) -> Element {
        let mut x = Element::identity();
        for &l in word {
            match l {
                Letter::Atom(a) => self.push_simple(&mut x, self.atom_simple(a)),
                Letter::Inverse(a) => x = self.mul_simple_inv(&x, self.atom_simple(a)),
                Letter::Delta(k) => x = self.mul_delta(&x, k),
            }
        }
        x
    }

    /// Normal form of a signed atom word.
    pub fn normal_form(&self, word: &[Letter]) -> Element {
        self.from_letters(word)
    }

    /// Positive word in atoms.
    pub fn from_atoms(&self, atoms: &[u32]) -> Element {
        let mut x = Element::identity();
        for &a in atoms {
            self.push_simple(&mut x, self.atom_simple(a));
        }
        x
    }

    /// Parse a whitespace-separated word of atom names, each optionally
    /// followed by `^-1`; `D`, `D^k` stand for powers of Δ and `.` is
    /// ignored, so printed normal forms parse back.
    pub fn parse_word(&self, text: &str) -> Result<Vec<Letter>> {
        let mut out = Vec::new();
        for tok in text.split_whitespace() {
            if tok == "." || tok == "1" {
                continue;
            }
            let (base, exp) = match tok.split_once('^') {
                Some((b, e)) => {
                    let e: i64 = e.parse().map_err(|_| Error::Parse(format!("bad exponent in `{tok}`")))?;
                    (b, e)
                }
                None => (tok, 1),
            };
            if let Some(a) = self.atom_by_name(base) {
                match exp {
                    1 => out.push(Letter::Atom(a)),
                    -1 => out.push(Letter::Inverse(a)),
                    k if k > 0 => out.extend(std::iter::repeat_n(Letter::Atom(a), k as usize)),
                    k => out.extend(std::iter::repeat_n(Letter::Inverse(a), (-k) as usize)),
                }
            } else if base == "D" || base == "Δ" {
                out.push(Letter::Delta(exp));
            } else {
                return Err(Error::Parse(format!("unknown atom `{base}`")));
            }
        }
        Ok(out)
    }

    pub fn parse_element(&self, text: &str) -> Result<Element> {
        Ok(self.normal_form(&self.parse_word(text)?))
    }

    pub fn parse_positive(&self, text: &str) -> Result<Element> {
        let x = self.parse_element(text)?;
        if !x.is_positive() {
            return Err(Error::Parse(format!("`{text}` is not a positive element")));
        }
        Ok(x)
    }

    /// `D^p . x1 . x2 ...` with simples printed as atom words.
    pub fn format(&self, x: &Element) -> String {
        let mut s = format!("D^{}", x.inf);
        for &f in &x.factors {
            let _ = write!(s, " . {}", self.simple_name(f));
        }
        s
    }

    /// Signed atom word `a_k^-1 ⋯ a_1^-1 b_1 ⋯ b_m` read off the reduced left
    /// fraction; empty for the identity.
    pub fn format_word(&self, x: &Element) -> String {
        let f = self.left_fraction(x);
        let mut parts: Vec<String> =
            self.atom_word(&f.denominator).iter().rev().map(|&a| format!("{}^-1", self.atom_name(a))).collect();
        parts.extend(self.atom_word(&f.numerator).iter().map(|&a| self.atom_name(a).to_string()));
        parts.join(" ")
    }

    /// Atom word of a positive element (Δ written out).
    pub fn atom_word(&self, x: &Element) -> Vec<u32> {
        assert!(x.is_positive(), "atom_word of a non-positive element");
        let mut w = Vec::new();
        for _ in 0..x.inf {
            w.extend_from_slice(self.simple_word(self.delta()));
        }
        for &f in &x.factors {
            w.extend_from_slice(self.simple_word(f));
        }
        w
    }

    pub fn format_positive(&self, x: &Element) -> String {
        let w = self.atom_word(x);
        if w.is_empty() {
            return "1".into();
        }
        w.iter().map(|&a| self.atom_name(a)).collect::<Vec<_>>().join(" ")
    }

    /// Length in atoms of a positive element (relations are homogeneous).
    pub fn positive_len(&self, x: &Element) -> u64 {
        debug_assert!(x.is_positive());
        x.inf as u64 * self.delta_len() as u64
            + x.factors.iter().map(|&f| self.simple_len(f) as u64).sum::<u64>()
    }

    /// Exponent sum of any signed atom word for `x`.
    pub fn exponent_sum(&self, x: &Element) -> i64 {
        x.inf * self.delta_len() as i64 + x.factors.iter().map(|&f| self.simple_len(f) as i64).sum::<i64>()
    }

    /// Checks the normal-form invariants.
    pub fn is_normal(&self, x: &Element) -> bool {
        let d = self.delta();
        if x.factors.iter().any(|&f| f == 0 || f == d) {
            return false;
        }
        x.factors.windows(2).all(|w| self.simple_head(w[0], w[1]) == w[0])
    }

    /// Group image of an element.
    pub fn project(&self, x: &Element) -> u32 {
        let g = self.group();
        let dg = self.image(self.delta());
        let dk = if x.inf >= 0 {
            (0..x.inf).fold(0, |acc, _| g.mul(acc, dg))
        } else {
            let di = g.inv(dg);
            (0..-x.inf).fold(0, |acc, _| g.mul(acc, di))
        };
        x.factors.iter().fold(dk, |acc, &f| g.mul(acc, self.image(f)))
    }

    // ---- divisibility and lattice operations on positive elements ----

    /// First simple factor of a positive element (`x ∧ Δ`).
    pub fn head_of(&self, x: &Element) -> u32 {
        if x.inf > 0 {
            self.delta()
        } else {
            x.factors.first().copied().unwrap_or(0)
        }
    }

    /// `x ≼ y`, i.e. `x^-1 y` is positive.
    pub fn left_divides(&self, x: &Element, y: &Element) -> bool {
        self.mul(&self.inv(x), y).is_positive()
    }

    /// `x ≼̃ y`, i.e. `y x^-1` is positive.
    pub fn right_divides(&self, x: &Element, y: &Element) -> bool {
        self.mul(y, &self.inv(x)).is_positive()
    }

    /// Greatest common prefix of two positive elements.
    pub fn meet_pos(&self, a: &Element, b: &Element) -> Element {
        let mut out = Element::identity();
        let (mut a, mut b) = (a.clone(), b.clone());
        loop {
            let s = self.meet(self.head_of(&a), self.head_of(&b));
            if s == 0 {
                return out;
            }
            self.push_simple(&mut out, s);
            a = self.simple_inv_mul(s, &a);
            b = self.simple_inv_mul(s, &b);
        }
    }

    /// Factor list of a positive element with Δ written as factors.
    pub fn simple_factors(&self, x: &Element) -> Vec<u32> {
        debug_assert!(x.is_positive());
        let mut v = vec![self.delta(); x.inf.max(0) as usize];
        v.extend_from_slice(&x.factors);
        v
    }

    /// Fill the lcm diagram of two simple-factor lists; returns
    /// `(a \ b, b \ a)` as factor lists.
    pub fn fill_lcm(&self, a: &[u32], b: &[u32]) -> (Vec<u32>, Vec<u32>) {
        let mut cur: Vec<u32> = b.to_vec();
        let mut b_under_a = Vec::new();
        for &ai in a {
            let mut x = ai;
            let mut next = Vec::with_capacity(cur.len());
            for &bj in &cur {
                let y = self.complement(x, bj);
                let x2 = self.complement(bj, x);
                if y != 0 {
                    next.push(y);
                }
                x = x2;
            }
            if x != 0 {
                b_under_a.push(x);
            }
            cur = next;
        }
        (cur, b_under_a)
    }

    fn from_simples(&self, list: &[u32]) -> Element {
        let mut x = Element::identity();
        for &s in list {
            self.push_simple(&mut x, s);
        }
        x
    }

    /// `a \ b`: the smallest positive `c` with `b ≼ a c`.
    pub fn complement_pos(&self, a: &Element, b: &Element) -> Element {
        let (ab, _) = self.fill_lcm(&self.simple_factors(a), &self.simple_factors(b));
        self.from_simples(&ab)
    }

    /// Least common right multiple of two positive elements.
    pub fn join_pos(&self, a: &Element, b: &Element) -> Element {
        self.mul(a, &self.complement_pos(a, b))
    }

    /// Greatest common suffix, via `d = (a* ∨ b*)^-1 Δ^k` with
    /// `a* = Δ^k a^-1`.
    pub fn rmeet_pos(&self, a: &Element, b: &Element) -> Element {
        let k = a.sup().max(b.sup()).max(0);
        let dk = self.delta_pow(k);
        let astar = self.mul(&dk, &self.inv(a));
        let bstar = self.mul(&dk, &self.inv(b));
        let m = self.join_pos(&astar, &bstar);
        self.mul(&self.inv(&m), &dk)
    }

    /// Least common left multiple, via `(Δ^k a^-1 ∧ Δ^k b^-1)^-1 Δ^k`.
    pub fn rjoin_pos(&self, a: &Element, b: &Element) -> Element {
        let k = a.sup().max(b.sup()).max(0);
        let dk = self.delta_pow(k);
        let ao = self.mul(&dk, &self.inv(a));
        let bo = self.mul(&dk, &self.inv(b));
        let u = self.meet_pos(&ao, &bo);
        self.mul(&self.inv(&u), &dk)
    }

    /// Reduced left fraction `x = a^-1 b` with `a ∧ b = 1`.
    pub fn left_fraction(&self, x: &Element) -> FractionPair {
        if x.inf >= 0 {
            return FractionPair { denominator: Element::identity(), numerator: x.clone() };
        }
        let a = self.delta_pow(-x.inf);
        let b = Element { inf: 0, factors: x.factors.clone() };
        let g = self.meet_pos(&a, &b);
        let gi = self.inv(&g);
        FractionPair { denominator: self.mul(&gi, &a), numerator: self.mul(&gi, &b) }
    }

    /// Reduced right fraction `x = u v^-1` with `u ∧̃ v = 1`; returned as
    /// `numerator = u`, `denominator = v`.
    pub fn right_fraction(&self, x: &Element) -> FractionPair {
        if x.inf >= 0 {
            return FractionPair { denominator: Element::identity(), numerator: x.clone() };
        }
        // Δ^p X = τ^-p(X) Δ^p
        let u = Element { inf: 0, factors: x.factors.iter().map(|&f| self.tau_pow(f, -x.inf)).collect() };
        let v = self.delta_pow(-x.inf);
        let g = self.rmeet_pos(&u, &v);
        let gi = self.inv(&g);
        FractionPair { denominator: self.mul(&v, &gi), numerator: self.mul(&u, &gi) }
    }
}

/// The same positive monoid with Garside element `Δ^N`. Simples are the
/// positive `x` with `sup(x) <= N`; nothing is tabulated.
#[derive(Clone, Copy, Debug)]
pub struct Rescaled<'a> {
    pub base: &'a GarsideStructure,
    pub power: u32,
}

impl GarsideStructure {
    pub fn rescale(&self, power: u32) -> Result<Rescaled<'_>> {
        if power == 0 {
            return Err(Error::Precondition("rescale needs N >= 1".into()));
        }
        Ok(Rescaled { base: self, power })
    }
}

impl Rescaled<'_> {
    pub fn delta(&self) -> Element {
        self.base.delta_pow(self.power as i64)
    }

    /// `1 ≼ x ≼ Δ^N`.
    pub fn is_simple(&self, x: &Element) -> bool {
        x.is_positive() && x.sup() <= self.power as i64
    }

    /// Left normal form for `Δ^N`: `(Δ^N)^p y1 ⋯ yr` with each `yi` a proper
    /// simple, obtained by grouping base factors `N` at a time.
    pub fn normal_form(&self, x: &Element) -> (i64, Vec<Element>) {
        let n = self.power as i64;
        let p = x.inf.div_euclid(n);
        let rest = x.inf.rem_euclid(n);
        // Δ^(Np) Δ^rest x1 ⋯ xr, then chunks of N base factors
        let mut flat: Vec<u32> = vec![self.base.delta(); rest as usize];
        flat.extend_from_slice(&x.factors);
        let mut chunks = Vec::new();
        for c in flat.chunks(n as usize) {
            let mut y = Element::identity();
            for &s in c {
                self.base.push_simple(&mut y, s);
            }
            chunks.push(y);
        }
        (p, chunks)
    }

    pub fn inf(&self, x: &Element) -> i64 {
        x.inf.div_euclid(self.power as i64)
    }

    pub fn sup(&self, x: &Element) -> i64 {
        let n = self.power as i64;
        (x.sup() + n - 1).div_euclid(n)
    }
}
