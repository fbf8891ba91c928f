mod common;

use std::sync::Arc;

use common::{random_positive_word, random_signed, rng, structure};
use garside::{AtomSet, CheckMode, Element, Exactness, GarsideStructure, ParabolicHandle, Rank2Closure, SampleParams};
use proptest::prelude::*;
use rand::Rng;

fn el(s: &GarsideStructure, w: &str) -> Element {
    s.parse_element(w).unwrap_or_else(|e| panic!("{w}: {e}"))
}

fn atoms(s: &GarsideStructure, names: &[&str]) -> AtomSet {
    s.parse_atom_set(names).unwrap()
}

fn handle(s: &GarsideStructure, names: &[&str], g: &str) -> ParabolicHandle {
    ParabolicHandle { atoms: atoms(s, names), conjugator: el(s, g) }
}

#[test]
fn closures() {
    let cp = structure("cp(3,3)");
    assert_eq!(cp.closure(AtomSet::EMPTY), AtomSet::EMPTY);
    assert_eq!(cp.closure(atoms(&cp, &["t0", "t1"])), atoms(&cp, &["t0", "t1", "t2"]));
    let g = structure("G24");
    let x = g.closure(atoms(&g, &["b6", "b10"]));
    assert_eq!(x, atoms(&g, &["b1", "b6", "b10", "b13"]));
    assert_eq!(g.closure(x), x);
    // saturated sets of cp(3,3) meet {t0,t1,t2} in 0, 1 or 3 atoms
    let t = atoms(&cp, &["t0", "t1", "t2"]);
    for x in cp.saturated_sets() {
        assert!([0, 1, 3].contains(&x.inter(t).len()), "{:?}", cp.atom_set_names(x));
    }
}

#[test]
fn godelle_examples() {
    let b = structure("braid3");
    assert!(b.godelle_check(b.delta()).unwrap());
    assert!(b.godelle_check(b.atom_simple(0)).unwrap());
    let cp = structure("cp(3,3)");
    let tau_hat = el(&cp, "t0 t1").factors[0];
    assert!(cp.godelle_check(tau_hat).unwrap());
    // s1 s2 is not balanced in B_3
    let s12 = el(&b, "s1 s2").factors[0];
    assert!(b.godelle_check(s12).is_err());
}

#[test]
fn lcm_garside_reports() {
    for name in ["braid3", "braid4", "B3", "cp(3,3)", "G24"] {
        let r = structure(name).check_lcm_garside();
        assert!(r.passed, "{name}: {r:?}");
        assert!(r.delta_is_join_of_atoms);
    }
}

#[test]
fn supports() {
    let b = structure("braid3");
    assert_eq!(b.support(&el(&b, "s1 s1")), atoms(&b, &["s1"]));
    assert_eq!(b.support(&el(&b, "D^-1 s1 s1 s2")), b.all_atoms());
    assert_eq!(b.support(&Element::identity()), AtomSet::EMPTY);
    let g = structure("G24");
    assert_eq!(g.support(&el(&g, "b1 b1 b6 b10")), atoms(&g, &["b1", "b6", "b10", "b13"]));
}

#[test]
fn ribbons() {
    let b = structure("braid3");
    let x = atoms(&b, &["s1"]);
    assert_eq!(b.ribbon(x, 0), 0);
    assert_eq!(b.simple_elem(b.ribbon(x, 1)), el(&b, "s2 s1"));
    let cp = structure("cp(3,3)");
    // r_(t0, t1) = t1 in G(e,e,n)
    let t0 = atoms(&cp, &["t0"]);
    assert_eq!(cp.simple_elem(cp.ribbon(t0, cp.atom_by_name("t1").unwrap())), el(&cp, "t1"));
    for name in ["braid4", "cp(3,3)", "G24"] {
        let s = structure(name);
        for x in s.saturated_sets() {
            for u in 0..s.num_atoms() as u32 {
                let r = s.ribbon(x, u);
                assert_eq!(r == 0, s.closure(x).contains(u), "{name}");
            }
        }
    }
}

#[test]
fn chain_certificates() {
    let g = structure("G24");
    let x = atoms(&g, &["b1"]);
    assert_eq!(g.first_layer(x), atoms(&g, &["b2", "b3", "b6", "b7"]));
    let c = g.chain_certificate(x);
    assert!(c.passed);
    assert_eq!(c.chain[0], atoms(&g, &["b2", "b3", "b6", "b7"]));
    let x = atoms(&g, &["b1", "b6", "b10", "b13"]);
    assert_eq!(g.first_layer(x), atoms(&g, &["b2"]));
    assert!(g.chain_certificate(x).passed);
    let all = g.all_atoms();
    for x in g.saturated_sets() {
        if x != all {
            let c = g.chain_certificate(x);
            assert!(c.passed, "{:?}", g.atom_set_names(x));
            assert!(c.irregular.is_empty());
        }
    }
}

#[test]
fn support_preservation() {
    let p = SampleParams { seed: 1, len: 6, samples: 300 };
    for name in ["braid4", "cp(3,3)", "G24"] {
        let r = structure(name).check_support_preserving(CheckMode::Sampled, p);
        assert!(r.passed, "{name}");
        assert_eq!(r.checked, 300);
    }
    let r = structure("G24").check_support_preserving(CheckMode::Certificate, p);
    assert!(r.passed && r.failed_sets.is_empty());
}

#[test]
fn worked_g24_example() {
    let g = structure("G24");
    let x = el(&g, "b1 b1 b6 b10");
    let sx = g.support(&x);
    let b3 = g.atom_by_name("b3").unwrap();
    let b2 = g.atom_by_name("b2").unwrap();
    let r = g.rho(b2, &x);
    let y = g.conj(&x, &r);
    assert_eq!(y, el(&g, "b4 b4 b3 b11"));
    assert_eq!(g.support(&y), atoms(&g, &["b4", "b3", "b11", "b8"]));
    assert!(g.maps_standard_onto(sx, &r, g.support(&y)));
    // ρ_b3 is not minimal: another ρ divides it
    let r3 = g.rho(b3, &x);
    let mins = g.minimal_positive_conjugators(&x);
    assert!(!mins.contains(&r3));
    assert!(mins.contains(&r));
    // Δ_X = b6 ∨ b10 = b6 b13
    assert_eq!(g.simple_elem(g.delta_of(sx)), el(&g, "b6 b13"));
    assert_eq!(g.varphi(&x), 2);
}

#[test]
fn parabolic_closure_examples() {
    let b = structure("braid3");
    for k in [-2, 1, 3] {
        assert_eq!(b.parabolic_closure(&b.delta_pow(k)).atoms, b.all_atoms());
    }
    let pc = b.parabolic_closure(&el(&b, "s2 s1 s2^-1"));
    assert_eq!(pc, handle(&b, &["s2"], "s1"));
    assert!(b.membership(&el(&b, "s2 s1 s2^-1"), &pc));
    assert_eq!(b.varphi(&b.delta_pow(1)), 3);
    assert_eq!(b.varphi(&el(&b, "s2 s1 s2^-1")), 1);
    let g = structure("G24");
    assert_eq!(g.parabolic_closure(&el(&g, "b1 b1 b1 b1")), ParabolicHandle::standard(atoms(&g, &["b1"])));
}

#[test]
fn z_elements() {
    let b = structure("braid3");
    let p = ParabolicHandle::standard(atoms(&b, &["s1"]));
    assert_eq!((b.z_element(&p).unwrap(), b.exponent(&p).unwrap()), (el(&b, "s1"), 1));
    let p = ParabolicHandle::standard(b.all_atoms());
    assert_eq!((b.z_element(&p).unwrap(), b.exponent(&p).unwrap()), (b.delta_pow(2), 2));
    assert!(b.z_element(&ParabolicHandle::standard(AtomSet::EMPTY)).is_err());
    let b5 = structure("braid5");
    let z = b5.z_standard(atoms(&b5, &["s1", "s3", "s4"])).unwrap();
    assert_eq!(z, el(&b5, "s1 s1 s3 s4 s3 s3 s4 s3"));
    // z positive iff standard
    let q = handle(&b, &["s2"], "s1");
    assert!(!b.z_element(&q).unwrap().is_positive());
}

#[test]
fn standardization() {
    let b = structure("braid3");
    let x = atoms(&b, &["s1"]);
    assert_eq!(b.standardize(&ParabolicHandle::standard(x)).unwrap(), (Element::identity(), x));
    let p = handle(&b, &["s2"], "s1");
    let (c, y) = b.standardize(&p).unwrap();
    assert_eq!(y, atoms(&b, &["s2"]));
    assert_eq!(b.conj(&b.z_element(&p).unwrap(), &c), el(&b, "s2"));
    let g = structure("G24");
    let (_, y) = g.standardize(&handle(&g, &["b1"], "b2")).unwrap();
    assert_eq!(y, atoms(&g, &["b4"]));
}

#[test]
fn memberships() {
    let b = structure("braid4");
    let p = ParabolicHandle::standard(atoms(&b, &["s1", "s2"]));
    assert!(b.membership(&el(&b, "s2"), &p));
    assert!(!b.membership(&el(&b, "s3"), &p));
    assert!(b.membership(&el(&b, "s2 s1 s2^-1"), &p));
    assert!(!b.membership(&el(&b, "s2 s3 s2^-1"), &p));
}

#[test]
fn intersections() {
    let b = structure("braid4");
    let p = ParabolicHandle::standard(atoms(&b, &["s1", "s2"]));
    let q = ParabolicHandle::standard(atoms(&b, &["s2", "s3"]));
    let r = b.intersect(&p, &q, 4).unwrap();
    assert_eq!(r.handle, ParabolicHandle::standard(atoms(&b, &["s2"])));
    assert_eq!(r.exactness, Exactness::Exact);
    let r = b.intersect(&p, &p, 4).unwrap();
    assert!(b.same_parabolic(&r.handle, &p).unwrap());

    let b3 = structure("braid3");
    let small = handle(&b3, &["s2"], "s1");
    let whole = ParabolicHandle::standard(b3.all_atoms());
    let r = b3.intersect(&small, &whole, 4).unwrap();
    assert!(b3.same_parabolic(&r.handle, &small).unwrap());
    assert_eq!(r.exactness, Exactness::Exact);
    // ⟨s1⟩ ∩ ⟨s2⟩^(s1) is trivial
    let r = b3.intersect(&ParabolicHandle::standard(atoms(&b3, &["s1"])), &small, 3).unwrap();
    assert!(r.handle.atoms.is_empty());
}

#[test]
fn adjacency_examples() {
    let b = structure("braid4");
    let one = |n: &str| ParabolicHandle::standard(atoms(&b, &[n]));
    assert!(b.adjacency(&one("s1"), &one("s3")).unwrap());
    assert!(!b.adjacency(&one("s1"), &one("s2")).unwrap());
    assert!(!b.adjacency(&one("s1"), &one("s1")).unwrap());
    let b3 = structure("braid3");
    let s1 = ParabolicHandle::standard(atoms(&b3, &["s1"]));
    assert!(b3.adjacency(&s1, &ParabolicHandle::standard(b3.all_atoms())).unwrap());
    assert!(b.adjacency(&one("s1"), &ParabolicHandle::standard(atoms(&b, &["s1", "s3"]))).is_err());
    // ⟨s1⟩^(s2) = ⟨s2⟩^(s1^-1)
    let p = handle(&b, &["s1"], "s2");
    let q = handle(&b, &["s2"], "s1^-1");
    assert!(b.conjugating_test(&one("s1"), &p, &el(&b, "s2")).unwrap());
    assert!(b.same_parabolic(&p, &q).unwrap());
}

#[test]
fn irreducibility() {
    let b = structure("braid4");
    assert!(!b.is_irreducible(&ParabolicHandle::standard(atoms(&b, &["s1", "s3"]))).unwrap());
    assert!(b.is_irreducible(&ParabolicHandle::standard(atoms(&b, &["s1", "s2"]))).unwrap());
    let cp = structure("cp(3,3)");
    assert!(cp.is_irreducible(&ParabolicHandle::standard(cp.all_atoms())).unwrap());
}

#[test]
fn curve_graphs() {
    let b = structure("braid3");
    let g = b.curve_graph(0).unwrap();
    assert_eq!(g.vertices.len(), 3);
    assert_eq!(g.edges.len(), 2);
    let whole = g.vertices.iter().position(|p| p.atoms == b.all_atoms()).unwrap();
    assert!(g.edges.iter().all(|&(i, j)| i == whole || j == whole));

    let b4 = structure("braid4");
    let g = b4.curve_graph(0).unwrap();
    let v = |n: &[&str]| g.vertices.iter().position(|p| p.atoms == atoms(&b4, n)).unwrap();
    let (i, j) = (v(&["s1"]), v(&["s3"]));
    assert!(g.edges.contains(&(i.min(j), i.max(j))));

    let g24 = structure("G24");
    let g = g24.curve_graph(0).unwrap();
    let rank = |r: usize| g.vertices.iter().filter(|p| p.atoms.len() == r).count();
    assert_eq!(rank(1), 14);
    assert_eq!(g.vertices.len(), 29);
    assert_eq!(rank(1) + 1 + (g.vertices.len() - rank(1) - 1), 29);

    let dot = b.curve_graph_dot(&b.curve_graph(1).unwrap());
    assert!(dot.starts_with("graph") && dot.contains("--"));
    let json = b.curve_graph_json(&b.curve_graph(1).unwrap());
    assert!(json["vertices"].as_array().unwrap().len() > 3);
}

#[test]
fn rank_two() {
    for tag in ["G12", "G22"] {
        let s = structure(tag);
        let x = el(&s, "s s s");
        let pc = s.pc_rank2(&x, tag).unwrap();
        let Rank2Closure::Cyclic { generator, .. } = &pc else { panic!("{tag}: {pc:?}") };
        assert_eq!(generator, &el(&s, "s"));
        assert!(s.rank2_contains(&pc, &x));
        assert_eq!(s.pc_rank2(&Element::identity(), tag).unwrap(), Rank2Closure::Trivial);
        assert_eq!(s.pc_rank2(&s.delta_pow(2), tag).unwrap(), Rank2Closure::Whole);
        // conjugated powers
        let w = el(&s, "t u^-1");
        let y = s.conj(&el(&s, "u u"), &w);
        let pc = s.pc_rank2(&y, tag).unwrap();
        assert!(matches!(pc, Rank2Closure::Cyclic { .. }));
        assert!(s.rank2_contains(&pc, &y));
        assert!(s.pc_rank2(&x, "G13").is_err());
    }
    let s = structure("G13");
    let gen = el(&s, "D a^-1 a^-1");
    for k in 1..3 {
        let x = s.pow(&gen, k);
        let pc = s.pc_rank2(&x, "G13").unwrap();
        assert_eq!(pc, Rank2Closure::Cyclic { generator: gen.clone(), conjugator: Element::identity() });
        assert_eq!(s.abelianization(&x), vec![k, 3 * k]);
    }
    let x = el(&s, "b^-1 b^-1");
    assert_eq!(s.abelianization(&x), vec![0, -2]);
    let pc = s.pc_rank2(&x, "G13").unwrap();
    assert!(matches!(&pc, Rank2Closure::Cyclic { generator, .. } if *generator == el(&s, "b^-1")));
    assert!(s.rank2_contains(&pc, &x));
    assert_eq!(s.pc_rank2(&s.delta_pow(1), "G13").unwrap(), Rank2Closure::Whole);
}

#[test]
fn dmm_property() {
    for name in ["braid3", "braid4", "cp(3,3)", "G24", "G12", "G13", "G22", "I2(6)", "dual-sym4"] {
        assert_eq!(structure(name).check_dmm(4, 3), None, "{name}");
    }
}

#[test]
fn gdeen_wrapper() {
    let b = structure("B2");
    let whole = ParabolicHandle::standard(b.all_atoms());
    let w = b.gdeen_wrap(&whole, 4, 2, 2).unwrap();
    assert_eq!(w.exponent, 1);
    assert_eq!(w.z, b.z_element(&whole).unwrap());
    let s1 = ParabolicHandle::standard(atoms(&b, &["s1"]));
    assert_eq!(b.gdeen_wrap(&s1, 4, 2, 2).unwrap().exponent, 1);
    assert_eq!(b.gdeen_phi(&el(&b, "s1"), 2).unwrap(), 0);
    assert_eq!(b.gdeen_phi(&el(&b, "t t"), 2).unwrap(), 0);
    assert_eq!(b.gdeen_phi(&el(&b, "t"), 2).unwrap(), 1);
    assert!(b.gdeen_wrap(&whole, 4, 1, 2).is_err());
}

#[test]
fn classical_rho_is_ribbon() {
    for name in ["braid4", "braid5"] {
        let s = structure(name);
        let mut r = rng(5);
        for _ in 0..100 {
            let len = r.random_range(1..7);
            let x = s.random_positive(&mut r, len);
            let sx = s.support(&x);
            for a in 0..s.num_atoms() as u32 {
                if !sx.contains(a) {
                    assert_eq!(s.rho(a, &x), s.simple_elem(s.ribbon(sx, a)), "{name}: {}", s.format(&x));
                }
            }
        }
    }
}

#[test]
fn dual_lcm_shape() {
    for name in ["dual-sym4", "G24"] {
        let s = structure(name);
        let k = s.num_atoms() as u32;
        for a in 0..k {
            for b in 0..k {
                let ba = s.mul(&s.atom_elem(b), &s.atom_elem(a));
                if a != b && ba.inf == 0 && ba.factors.len() == 1 {
                    assert_eq!(s.join_pos(&s.atom_elem(a), &s.atom_elem(b)), ba, "{name}");
                }
            }
        }
    }
}

#[test]
fn saturated_sets_meet_to_saturated() {
    for name in ["braid4", "cp(3,3)", "G24", "dual-sym5"] {
        let s = structure(name);
        let sets = s.saturated_sets();
        for &x in &sets {
            for &y in &sets {
                assert!(s.is_saturated(x.inter(y)), "{name}");
            }
        }
    }
}

const NAMES: [&str; 5] = ["braid3", "braid4", "cp(3,3)", "G24", "dual-sym4"];

fn pick(which: usize) -> Arc<GarsideStructure> {
    structure(NAMES[which % NAMES.len()])
}

fn signed(s: &GarsideStructure, seed: u64, len: usize) -> Element {
    s.normal_form(&random_signed(s, &mut rng(seed), len))
}

/// A random handle: saturated set and conjugator from the seed.
fn random_handle(s: &GarsideStructure, seed: u64) -> ParabolicHandle {
    let sets: Vec<AtomSet> = s.saturated_sets().into_iter().filter(|x| !x.is_empty()).collect();
    let mut r = rng(seed);
    let x = sets[r.random_range(0..sets.len())];
    ParabolicHandle { atoms: x, conjugator: signed(s, seed ^ 0xabc, 4) }
}

/// Element of the handle: conjugate of a random word in `X`.
fn element_of(s: &GarsideStructure, p: &ParabolicHandle, seed: u64) -> Element {
    let xs: Vec<u32> = p.atoms.iter().collect();
    let mut r = rng(seed);
    let mut y = Element::identity();
    for _ in 0..r.random_range(1..6) {
        let a = s.atom_elem(xs[r.random_range(0..xs.len())]);
        y = if r.random_bool(0.5) { s.mul(&y, &a) } else { s.mul(&y, &s.inv(&a)) };
    }
    s.conj(&y, &p.conjugator)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(80))]

    #[test]
    fn closure_of_powers(which in 0usize..5, seed in any::<u64>(), len in 1usize..8) {
        let s = pick(which);
        let x = signed(&s, seed, len);
        if x.is_identity() {
            return Ok(());
        }
        let p = s.parabolic_closure(&x);
        prop_assert!(s.membership(&x, &p));
        for m in [-1i64, 2, 3] {
            let q = s.parabolic_closure(&s.pow(&x, m));
            prop_assert!(s.same_parabolic(&p, &q).unwrap(), "m = {}", m);
        }
    }

    #[test]
    fn closure_of_z_element(which in 0usize..5, seed in any::<u64>()) {
        let s = pick(which);
        let p = random_handle(&s, seed);
        let z = s.z_element(&p).unwrap();
        let q = s.parabolic_closure(&z);
        prop_assert!(s.same_parabolic(&p, &q).unwrap());
        prop_assert!(s.membership(&z, &p));
        // z is central in P
        let w = element_of(&s, &p, seed ^ 7);
        prop_assert_eq!(s.mul(&z, &w), s.mul(&w, &z));
        // canonical handle is standard up to its conjugator
        let c = s.canonical_handle(&p).unwrap();
        prop_assert!(s.same_parabolic(&c, &p).unwrap());
    }

    #[test]
    fn roots_stay_inside(which in 0usize..5, seed in any::<u64>(), m in 2i64..4) {
        let s = pick(which);
        let p = random_handle(&s, seed);
        let x = element_of(&s, &p, seed ^ 3);
        prop_assert!(s.membership(&x, &p));
        let xm = s.pow(&x, m);
        if xm.is_identity() {
            return Ok(());
        }
        let q = s.parabolic_closure(&xm);
        prop_assert!(s.membership(&x, &q));
        prop_assert!(s.contains_parabolic(&p, &q).unwrap());
    }

    #[test]
    fn closure_commutes_with_conjugation(which in 0usize..5, seed in any::<u64>(), c in any::<u64>()) {
        let s = pick(which);
        let x = signed(&s, seed, 6);
        if x.is_identity() {
            return Ok(());
        }
        let g = signed(&s, c, 4);
        let p = s.parabolic_closure(&x);
        let pg = ParabolicHandle { atoms: p.atoms, conjugator: s.mul(&p.conjugator, &g) };
        prop_assert!(s.same_parabolic(&s.parabolic_closure(&s.conj(&x, &g)), &pg).unwrap());
    }

    #[test]
    fn support_size_under_outside_conjugators(which in 0usize..5, seed in any::<u64>(), len in 1usize..7) {
        let s = pick(which);
        let x = s.from_atoms(&random_positive_word(&s, &mut rng(seed), len));
        let sx = s.support(&x);
        let mins = s.minimal_positive_conjugators(&x);
        for a in 0..s.num_atoms() as u32 {
            let r = s.rho(a, &x);
            let sy = s.support(&s.conj(&x, &r));
            if sx.contains(a) {
                prop_assert_eq!(sy, sx);
            } else if mins.contains(&r) {
                prop_assert!(sy.len() <= sx.len());
            }
        }
    }
}
