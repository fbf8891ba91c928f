mod common;

use std::collections::HashSet;
use std::sync::Arc;

use common::{positive_words, random_positive_word, random_signed, rng, structure};
use garside::{Element, GarsideStructure};
use proptest::prelude::*;

fn el(s: &GarsideStructure, w: &str) -> Element {
    s.parse_element(w).unwrap_or_else(|e| panic!("{w}: {e}"))
}

fn set(s: &GarsideStructure, ws: &[&str]) -> HashSet<Element> {
    ws.iter().map(|w| el(s, w)).collect()
}

fn atom(s: &GarsideStructure, name: &str) -> u32 {
    s.atom_by_name(name).unwrap()
}

#[test]
fn swap_examples() {
    let s = structure("braid3");
    assert_eq!(s.swap(&el(&s, "s1 s2")), (Element::identity(), el(&s, "s1 s2")));
    assert_eq!(s.swap(&el(&s, "s1^-1 s2")), (el(&s, "s1"), el(&s, "s2 s1^-1")));
    assert_eq!(s.swap(&el(&s, "s2 s1 s2^-1")), (el(&s, "s1"), el(&s, "s2")));
}

#[test]
fn swap_orbit_examples() {
    let s = structure("braid3");
    let t = s.swap_orbit(&el(&s, "s1 s1 s2"));
    assert_eq!((t.preperiod, t.period), (0, 1));
    let t = s.swap_orbit(&el(&s, "s2 s1 s2^-1"));
    assert_eq!(t.preperiod, 1);
    assert_eq!(t.recurrent(), &el(&s, "s2"));
    let x = el(&s, "D^-1 s1 s1 s2");
    let t = s.swap_orbit(&x);
    let n = t.preperiod + t.period;
    assert_eq!(s.swap(t.element(n - 1)).1, *t.recurrent());
    for i in 0..=n {
        assert_eq!(s.conj(t.element(i), &s.swap_conjugator(&t, i)), x, "step {i}");
    }
}

#[test]
fn transport_examples() {
    let s = structure("braid3");
    let y = el(&s, "s1^-1 s2 s2");
    for m in 0..3 {
        assert_eq!(s.transport(&y, &s.delta_pow(m)), s.delta_pow(m));
    }
    // positive y with y^u positive: u is its own transport
    let p = el(&s, "s1 s2 s2");
    let u = el(&s, "s1");
    assert!(s.conj(&p, &u).is_positive());
    assert_eq!(s.transport(&p, &u), u);
    // y^u not positive: u⁽¹⁾ = u ∧ yu is a proper prefix
    let u = el(&s, "s2 s1");
    assert!(!s.conj(&p, &u).is_positive());
    assert!(s.transport(&p, &u).is_identity());
}

#[test]
fn rho_examples() {
    let g = structure("G24");
    let x = el(&g, "b1 b1 b1 b1");
    let r = g.rho(atom(&g, "b2"), &x);
    assert_eq!(r, el(&g, "b2"));
    assert_eq!(g.conj(&x, &r), el(&g, "b4 b4 b4 b4"));

    let b = structure("braid3");
    let x = el(&b, "s1 s1");
    assert_eq!(b.rho(atom(&b, "s2"), &x), el(&b, "s2 s1"));
    let d2 = b.delta_pow(2);
    for a in 0..2 {
        assert_eq!(b.rho(a, &d2), b.atom_elem(a));
    }
}

#[test]
fn minimal_conjugator_examples() {
    let g = structure("G24");
    let x = el(&g, "b1 b1 b1 b1");
    let got: HashSet<Element> = g.minimal_positive_conjugators(&x).into_iter().collect();
    assert_eq!(got, set(&g, &["b1", "b2", "b3", "b6", "b7"]));
    // ρ_b4 is a proper multiple of ρ_b1 or another minimal one
    let r4 = g.rho(atom(&g, "b4"), &x);
    assert!(!got.contains(&r4));
    assert!(got.iter().any(|m| g.left_divides(m, &r4)));

    let b = structure("braid3");
    let got: HashSet<Element> = b.minimal_positive_conjugators(&el(&b, "s1 s1")).into_iter().collect();
    assert_eq!(got, set(&b, &["s1", "s2 s1"]));
    let d = b.delta_pow(2);
    assert_eq!(b.minimal_positive_conjugators(&d).len(), 2);
}

#[test]
fn conjugate_graph_examples() {
    let b = structure("braid3");
    // Δ is not central in B_3: Δ^(s1) = s2 s1 s1
    let g = b.positive_conjugates_graph(&b.delta_pow(1)).unwrap();
    let v: HashSet<Element> = g.vertices.iter().cloned().collect();
    assert_eq!(v, set(&b, &["D", "s2 s1 s1", "s1 s2 s2", "s1 s1 s2", "s2 s2 s1"]));
    // Δ² is central: one vertex with a loop for every atom
    let g = b.positive_conjugates_graph(&b.delta_pow(2)).unwrap();
    assert_eq!(g.vertices.len(), 1);
    assert_eq!(g.arrows.len(), 2);
    assert!(g.arrows.iter().all(|(a, t, u)| *a == 0 && *t == 0 && b.simple_len(u.factors[0]) == 1));

    let g = b.positive_conjugates_graph(&el(&b, "s1 s1")).unwrap();
    let v: HashSet<Element> = g.vertices.iter().cloned().collect();
    assert_eq!(v, set(&b, &["s1 s1", "s2 s2"]));
    for (i, _) in g.vertices.iter().enumerate() {
        assert_eq!(b.conj(&g.vertices[0], &b.graph_path(&g, i)), g.vertices[i]);
    }

    let h = structure("G24");
    let g = h.positive_conjugates_graph(&el(&h, "b1 b1 b1 b1")).unwrap();
    let t = g.index_of(&el(&h, "b4 b4 b4 b4")).unwrap();
    assert!(g.arrows.iter().any(|(a, b, u)| *a == 0 && *b == t && *u == el(&h, "b2")));

    let dot = b.conj_graph_dot(&b.positive_conjugates_graph(&el(&b, "s1 s1")).unwrap());
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("->"));
    assert!(b.positive_conjugates_graph(&el(&b, "s1^-1")).is_err());
    assert!(b.positive_conjugates_graph_capped(&el(&b, "s1 s2 s2 s2"), 2).is_err());
}

#[test]
fn conjugate_to_positive_examples() {
    let s = structure("braid3");
    let x = el(&s, "s1 s2");
    assert_eq!(s.conjugate_to_positive(&x), Some((Element::identity(), x)));
    assert_eq!(s.conjugate_to_positive(&el(&s, "s2 s1 s2^-1")), Some((el(&s, "s1"), el(&s, "s2"))));
    assert_eq!(s.conjugate_to_positive(&el(&s, "s1^-1 s2")), None);
}

#[test]
fn r_m_set_examples() {
    let s = structure("braid3");
    let got: HashSet<Element> = s.r_m_set(&el(&s, "s1"), 1).unwrap().into_iter().collect();
    assert_eq!(got, set(&s, &["s1", "s2"]));
    let conj_delta = set(&s, &["D", "s2 s1 s1", "s1 s2 s2", "s1 s1 s2", "s2 s2 s1"]);
    // the other conjugates of Δ have sup 2
    assert_eq!(s.r_m_set(&s.delta_pow(1), 1).unwrap(), vec![s.delta_pow(1)]);
    for m in 1..4 {
        let got: HashSet<Element> = s.r_m_set(&s.delta_pow(1), m + 1).unwrap().into_iter().collect();
        assert_eq!(got, conj_delta);
        assert_eq!(s.r_m_set(&s.delta_pow(2), m + 1).unwrap(), vec![s.delta_pow(2)]);
    }
    assert!(s.r_m_set(&el(&s, "s1 s1 s2 s2"), 1).unwrap().is_empty());
}

const SMALL: [&str; 6] = ["braid3", "braid4", "cp(3,3)", "dual-sym4", "G24", "I2(6)"];

fn pick(which: usize) -> Arc<GarsideStructure> {
    structure(SMALL[which % SMALL.len()])
}

fn signed(s: &GarsideStructure, seed: u64, len: usize) -> Element {
    s.normal_form(&random_signed(s, &mut rng(seed), len))
}

fn positive(s: &GarsideStructure, seed: u64, len: usize) -> Element {
    s.from_atoms(&random_positive_word(s, &mut rng(seed), len))
}

/// `ρ_a(x)` against the least element of `{c : a ≼ c, x^c positive}` among
/// positive words of length `<= 4`.
#[test]
fn rho_matches_bounded_search() {
    for name in ["braid3", "braid4", "cp(3,3)", "dual-sym4", "G24"] {
        let s = structure(name);
        let conjugators = positive_words(&s, 4);
        let mut r = rng(3);
        for _ in 0..12 {
            let x = positive(&s, r.random(), r.random_range(1..6));
            for a in 0..s.num_atoms() as u32 {
                let ae = s.atom_elem(a);
                let found: Vec<&Element> = conjugators
                    .iter()
                    .map(|(c, _)| c)
                    .filter(|c| s.left_divides(&ae, c) && s.conj(&x, c).is_positive())
                    .collect();
                let rho = s.rho(a, &x);
                assert!(s.conj(&x, &rho).is_positive());
                if s.positive_len(&rho) <= 4 {
                    let least = found.iter().min_by_key(|c| s.positive_len(c)).unwrap();
                    assert_eq!(**least, rho, "{name}: ρ_{a}({})", s.format(&x));
                    assert!(found.iter().all(|c| s.left_divides(&rho, c)));
                } else {
                    assert!(found.is_empty(), "{name}: ρ_{a}({}) too long", s.format(&x));
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn swap_is_conjugation(which in 0usize..6, seed in any::<u64>(), len in 0usize..10) {
        let s = pick(which);
        let x = signed(&s, seed, len);
        let (a, y) = s.swap(&x);
        prop_assert!(a.is_positive());
        prop_assert_eq!(&y, &s.mul(&s.mul(&a, &x), &s.inv(&a)));
        // swap commutes with inversion
        let (_, yi) = s.swap(&s.inv(&x));
        prop_assert_eq!(yi, s.inv(&y));
    }

    #[test]
    fn orbit_closes(which in 0usize..6, seed in any::<u64>(), len in 0usize..10) {
        let s = pick(which);
        let x = signed(&s, seed, len);
        let t = s.swap_orbit(&x);
        prop_assert!(t.period >= 1);
        let n = t.preperiod + t.period;
        prop_assert_eq!(t.element(n), t.recurrent());
        for y in t.cycle() {
            prop_assert!(s.is_recurrent(y));
            // Δ-conjugates of recurrent elements are recurrent
            prop_assert!(s.is_recurrent(&s.tau_elem(y, 1)));
        }
        for i in 0..t.preperiod {
            prop_assert!(!s.is_recurrent(t.element(i)));
        }
    }

    #[test]
    fn transport_laws(which in 0usize..6, seed in any::<u64>(), u in any::<u64>(), v in any::<u64>(), m in 0i64..3) {
        let s = pick(which);
        let y = signed(&s, seed, 7);
        let u = positive(&s, u, 4);
        let v = positive(&s, v, 4);
        prop_assert_eq!(s.transport(&y, &s.delta_pow(m)), s.delta_pow(m));
        let (tu, tv) = (s.transport(&y, &u), s.transport(&y, &v));
        prop_assert_eq!(s.transport(&y, &s.meet_pos(&u, &v)), s.meet_pos(&tu, &tv));
        // φ(y)^(u⁽¹⁾) = φ(y^u)
        let (_, py) = s.swap(&y);
        let (_, pz) = s.swap(&s.conj(&y, &u));
        prop_assert_eq!(s.conj(&py, &tu), pz);
        if s.left_divides(&u, &v) {
            prop_assert!(s.left_divides(&tu, &tv));
        }
    }

    #[test]
    fn transport_returns_on_recurrent_pairs(which in 0usize..6, seed in any::<u64>(), u in any::<u64>()) {
        let s = pick(which);
        let y = s.swap_orbit(&signed(&s, seed, 6)).recurrent().clone();
        let u = positive(&s, u, 3);
        let z = s.conj(&y, &u);
        if !s.is_recurrent(&z) {
            return Ok(());
        }
        let mut cur = (y.clone(), u.clone());
        let mut returned = false;
        for _ in 0..200 {
            let t = s.transport(&cur.0, &cur.1);
            cur = (s.swap(&cur.0).1, t);
            if cur.0 == y && cur.1 == u {
                returned = true;
                break;
            }
        }
        prop_assert!(returned);
    }

    #[test]
    fn convexity(which in 0usize..6, seed in any::<u64>(), u in any::<u64>(), v in any::<u64>()) {
        let s = pick(which);
        let x = positive(&s, seed, 5);
        let cs = s.minimal_positive_conjugators(&x);
        let mut r = rng(u ^ v);
        // products of arrows are positive conjugators
        let a = cs[r.random_range(0..cs.len())].clone();
        let b = s.mul(&a, &positive(&s, u, 2));
        let c = cs[r.random_range(0..cs.len())].clone();
        for (p, q) in [(&a, &c), (&b, &c), (&a, &b)] {
            if s.conj(&x, p).is_positive() && s.conj(&x, q).is_positive() {
                prop_assert!(s.conj(&x, &s.meet_pos(p, q)).is_positive());
            }
        }
        // convexity of recurrent conjugates under simple conjugators
        let y = s.swap_orbit(&signed(&s, v, 6)).recurrent().clone();
        let n = s.num_simples() as u32;
        let (p, q) = (s.simple_elem(r.random_range(0..n)), s.simple_elem(r.random_range(0..n)));
        if s.is_recurrent(&s.conj(&y, &p)) && s.is_recurrent(&s.conj(&y, &q)) {
            prop_assert!(s.is_recurrent(&s.conj(&y, &s.meet_pos(&p, &q))));
        }
    }

    #[test]
    fn graph_arrows_are_minimal(which in 0usize..6, seed in any::<u64>(), len in 1usize..5) {
        let s = pick(which);
        let x = positive(&s, seed, len);
        let g = s.positive_conjugates_graph(&x).unwrap();
        for (a, b, u) in &g.arrows {
            prop_assert_eq!(&s.conj(&g.vertices[*a], u), &g.vertices[*b]);
            // no proper nonempty prefix of u conjugates to a positive element
            for h in 1..s.num_simples() as u32 {
                let he = s.simple_elem(h);
                if he != *u && s.left_divides(&he, u) {
                    prop_assert!(!s.conj(&g.vertices[*a], &he).is_positive());
                }
            }
        }
        // every positive conjugate of length-preserving form appears: R^m = C⁺
        let m = g.vertices.iter().map(|v| v.sup()).max().unwrap();
        let r: HashSet<Element> = s.r_m_set(&x, m).unwrap().into_iter().collect();
        let c: HashSet<Element> = g.vertices.iter().cloned().collect();
        prop_assert_eq!(r, c);
    }

    #[test]
    fn conjugate_to_positive_is_sound(which in 0usize..6, seed in any::<u64>(), len in 0usize..8, u in any::<u64>()) {
        let s = pick(which);
        let x = signed(&s, seed, len);
        if let Some((c, y)) = s.conjugate_to_positive(&x) {
            prop_assert!(c.is_positive() && y.is_positive());
            prop_assert_eq!(s.mul(&s.mul(&c, &x), &s.inv(&c)), y);
        }
        // a conjugated positive element is always recovered
        let p = positive(&s, u, 3);
        let w = signed(&s, u ^ 1, 3);
        let q = s.conj(&p, &w);
        prop_assert!(s.conjugate_to_positive(&q).is_some());
    }
}

use rand::Rng;
