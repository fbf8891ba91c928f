//! Exact arithmetic in `Q[x]/(f)` for a monic integer polynomial `f`
//! (in practice a cyclotomic polynomial).

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A quotient ring `Q[x]/(f)`. Elements are coefficient vectors of
/// length `deg f`, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloRing {
    /// Coefficients of `f`, lowest degree first, leading coefficient 1.
    modulus: Vec<i64>,
}

pub type Poly = Vec<Rational64>;

impl CycloRing {
    pub fn new(modulus: Vec<i64>) -> Result<Self> {
        match modulus.last() {
            Some(1) if modulus.len() >= 2 => Ok(CycloRing { modulus }),
            _ => Err(Error::Parse(format!(
                "ring modulus must be monic of degree >= 1, got {modulus:?}"
            ))),
        }
    }

    /// Parse a modulus such as `x^6+x^5+x^4+x^3+x^2+x+1`.
    pub fn parse(text: &str) -> Result<Self> {
        let p = parse_poly(text)?;
        let mut ints = Vec::with_capacity(p.len());
        for c in &p {
            if !c.is_integer() {
                return Err(Error::Parse(format!("modulus has non-integer coefficient {c}")));
            }
            ints.push(c.to_integer());
        }
        while ints.last() == Some(&0) {
            ints.pop();
        }
        Self::new(ints)
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[i64] {
        &self.modulus
    }

    pub fn zero(&self) -> Poly {
        vec![Rational64::zero(); self.degree()]
    }

    pub fn one(&self) -> Poly {
        let mut p = self.zero();
        p[0] = Rational64::one();
        p
    }

    /// Reduce an arbitrary coefficient vector modulo `f`.
    pub fn reduce(&self, mut p: Vec<Rational64>) -> Poly {
        let d = self.degree();
        while p.len() > d {
            let top = p.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let shift = p.len() - d;
            for (i, &m) in self.modulus[..d].iter().enumerate() {
                if m != 0 {
                    p[shift + i] -= top * Rational64::from_integer(m);
                }
            }
        }
        p.resize(d, Rational64::zero());
        p
    }

    pub fn add(&self, a: &[Rational64], b: &[Rational64]) -> Poly {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn mul(&self, a: &[Rational64], b: &[Rational64]) -> Poly {
        let d = self.degree();
        let mut out = vec![Rational64::zero(); 2 * d - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        self.reduce(out)
    }

    pub fn is_zero(&self, a: &[Rational64]) -> bool {
        a.iter().all(|c| c.is_zero())
    }

    /// Parse an element written as a polynomial in `x`.
    pub fn parse_elem(&self, text: &str) -> Result<Poly> {
        Ok(self.reduce(parse_poly(text)?))
    }

    pub fn format_elem(&self, a: &[Rational64]) -> String {
        format_poly(a)
    }
}

/// Parse `c0 + c1*x + ... ` with rational coefficients, e.g.
/// `1/2-1/2*x^3+x^7`. Returns coefficients lowest degree first.
pub fn parse_poly(text: &str) -> Result<Vec<Rational64>> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let bad = || Error::Parse(format!("malformed polynomial `{text}`"));
    let mut coeffs: Vec<Rational64> = Vec::new();
    let bytes = s.as_bytes();
    let mut pos = 0;
    while pos < bytes.len() {
        let mut sign = 1i64;
        while pos < bytes.len() && (bytes[pos] == b'+' || bytes[pos] == b'-') {
            if bytes[pos] == b'-' {
                sign = -sign;
            }
            pos += 1;
        }
        let start = pos;
        while pos < bytes.len() && bytes[pos] != b'+' && bytes[pos] != b'-' {
            pos += 1;
        }
        let term = &s[start..pos];
        if term.is_empty() {
            return Err(bad());
        }
        let (coef_text, mono) = match term.find('x') {
            None => (term, None),
            Some(i) => {
                let c = term[..i].trim_end_matches('*');
                (c, Some(&term[i + 1..]))
            }
        };
        let coef = if coef_text.is_empty() {
            Rational64::one()
        } else {
            parse_rational(coef_text).ok_or_else(bad)?
        };
        let deg = match mono {
            None => 0,
            Some("") => 1,
            Some(rest) => rest
                .strip_prefix('^')
                .and_then(|e| e.parse::<usize>().ok())
                .ok_or_else(bad)?,
        };
        if coeffs.len() <= deg {
            coeffs.resize(deg + 1, Rational64::zero());
        }
        coeffs[deg] += coef * Rational64::from_integer(sign);
    }
    Ok(coeffs)
}

fn parse_rational(t: &str) -> Option<Rational64> {
    match t.split_once('/') {
        Some((n, d)) => {
            let d: i64 = d.parse().ok()?;
            if d == 0 {
                return None;
            }
            Some(Rational64::new(n.parse().ok()?, d))
        }
        None => Some(Rational64::from_integer(t.parse().ok()?)),
    }
}

pub fn format_poly(a: &[Rational64]) -> String {
    let mut out = String::new();
    for (k, c) in a.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = *c < Rational64::zero();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push(if neg { '-' } else { '+' });
        }
        let mono = match k {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{k}"),
        };
        if mono.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{mag}*{mono}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
