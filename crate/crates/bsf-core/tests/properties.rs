//! Seeded randomized checks of algebraic laws. Each property runs `CASES` cases.

use bsf_core::blowup::blowup_rees;
use bsf_core::family::{constfy, fills_fibres_over, iso_locus, Fibre};
use bsf_core::groebner::{groebner, is_reduced, satisfies_buchberger_criterion};
use bsf_core::ideal::{intersect_all, is_principal_cartier, saturate, saturate_iterated, Ideal, Principality};
use bsf_core::poly::{Poly, Ring};
use bsf_core::scheme::{AffineChart, ClosedSub, SchemeMap};
use bsf_core::weil::{FiniteAlgebra, OverAlgebra};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CASES: usize = 200;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Sparse polynomial with up to `terms` terms of total degree at most `deg` in `vars`.
fn random_poly(r: &mut ChaCha8Rng, ring: &Ring, vars: &[&str], terms: usize, deg: u32) -> Poly {
    let mut text = Vec::new();
    for _ in 0..r.gen_range(1..=terms) {
        let mut c: i64 = r.gen_range(-3..=3);
        if c == 0 {
            c = 1;
        }
        let mut mono = vec![c.to_string()];
        let mut left = r.gen_range(0..=deg);
        for v in vars {
            if left == 0 {
                break;
            }
            let e = r.gen_range(0..=left);
            left -= e;
            if e > 0 {
                mono.push(format!("{v}^{e}"));
            }
        }
        text.push(format!("({})", mono.join("*")));
    }
    ring.p(&text.join(" + "))
}

fn nonzero_poly(r: &mut ChaCha8Rng, ring: &Ring, vars: &[&str], terms: usize, deg: u32) -> Poly {
    loop {
        let p = random_poly(r, ring, vars, terms, deg);
        if !p.is_zero() {
            return p;
        }
    }
}

#[test]
pub fn buchberger_criterion_on_every_basis() {
    let mut r = rng(11);
    for order in [Ring::grevlex(&["x", "y", "z"]), Ring::lex(&["x", "y", "z"])] {
        for _ in 0..CASES / 2 {
            let gens: Vec<Poly> = (0..r.gen_range(1..=3)).map(|_| random_poly(&mut r, &order, &["x", "y", "z"], 3, 2)).collect();
            let gb = groebner(&gens).unwrap();
            assert!(satisfies_buchberger_criterion(&gb), "{gens:?}");
            assert!(is_reduced(&gb));
            let i = Ideal::new(&order, gb.clone()).unwrap();
            for g in &gens {
                assert!(i.contains(g).unwrap());
            }
        }
    }
}

#[test]
pub fn saturation_stabilizes() {
    let mut r = rng(12);
    let ring = Ring::grevlex(&["x", "y"]);
    for _ in 0..CASES {
        let gens: Vec<Poly> = (0..r.gen_range(1..=2)).map(|_| random_poly(&mut r, &ring, &["x", "y"], 3, 3)).collect();
        let i = Ideal::new(&ring, gens).unwrap();
        let f = nonzero_poly(&mut r, &ring, &["x", "y"], 2, 1);
        let s = saturate(&i, &f).unwrap();
        assert!(s.contains_ideal(&i).unwrap());
        assert!(saturate(&s, &f).unwrap().equals(&s).unwrap());
        assert!(saturate_iterated(&i, &f).unwrap().equals(&s).unwrap());
    }
}

#[test]
pub fn extension_commutes_with_finite_intersections() {
    let mut r = rng(13);
    let small = Ring::grevlex(&["x", "y"]);
    let big = Ring::grevlex(&["x", "y", "t"]);
    for _ in 0..CASES {
        let family: Vec<Ideal> = (0..r.gen_range(2..=3))
            .map(|_| {
                let gens = (0..r.gen_range(1..=2)).map(|_| random_poly(&mut r, &small, &["x", "y"], 2, 2)).collect();
                Ideal::new(&small, gens).unwrap()
            })
            .collect();
        let meet = intersect_all(&family).unwrap().extend_to(&big).unwrap();
        let extended: Vec<Ideal> = family.iter().map(|a| a.extend_to(&big).unwrap()).collect();
        assert!(meet.equals(&intersect_all(&extended).unwrap()).unwrap());
    }
}

/// `b * (random poly in the total space)` for a random base polynomial `b`: keeps loci nonempty.
fn family_gen(r: &mut ChaCha8Rng, ring: &Ring) -> Poly {
    let b = nonzero_poly(r, ring, &["c", "d"], 2, 1);
    b.mul(&random_poly(r, ring, &["c", "d", "a"], 3, 2))
}

#[test]
pub fn iso_locus_is_maximal() {
    let mut r = rng(14);
    let ring = Ring::grevlex(&["c", "d", "a"]);
    let x = AffineChart::affine_space("X", &ring);
    let fib = Fibre::Free(vec!["a".into()]);
    let mut filled = 0;
    for _ in 0..CASES {
        let z = ClosedSub::new(&x, vec![family_gen(&mut r, &ring), family_gen(&mut r, &ring)]).unwrap();
        let iso = iso_locus(&z, &fib).unwrap();
        let base = iso.base.ring().clone();
        let locus = &iso.locus.ideal;
        assert!(fills_fibres_over(&z, locus).unwrap());
        let mut omega = Vec::new();
        for _ in 0..3 {
            let extra = random_poly(&mut r, &base, &["c", "d"], 2, 2);
            omega.push(locus.with(&[extra]).unwrap());
            let gens: Vec<Poly> = locus.gens().iter().map(|g| g.mul(&random_poly(&mut r, &base, &["c", "d"], 2, 1))).collect();
            omega.push(Ideal::new(&base, gens).unwrap());
            omega.push(Ideal::new(&base, vec![random_poly(&mut r, &base, &["c", "d"], 2, 2)]).unwrap());
        }
        let mut fillers = Vec::new();
        for w in omega {
            let fills = fills_fibres_over(&z, &w).unwrap();
            assert_eq!(fills, w.contains_ideal(locus).unwrap(), "W = {:?}", w.gens());
            if fills {
                fillers.push(w);
            }
        }
        filled += fillers.len();
        assert!(intersect_all(&fillers).unwrap().contains_ideal(locus).unwrap());
    }
    assert!(filled >= CASES);
}

#[test]
pub fn iso_and_constfy_commute() {
    let mut r = rng(15);
    let ring = Ring::grevlex(&["c", "d", "a"]);
    let line = AffineChart::affine_space("L", &Ring::grevlex(&["w"]));
    let fib = Fibre::Free(vec!["a".into()]);
    for _ in 0..CASES {
        let x = AffineChart::affine_space("X", &ring);
        let zg = vec![family_gen(&mut r, &ring)];
        let fg = family_gen(&mut r, &ring).add(&random_poly(&mut r, &ring, &["c", "d"], 2, 2));

        // Iso first, then constfy over it.
        let iso = iso_locus(&ClosedSub::new(&x, zg.clone()).unwrap(), &fib).unwrap();
        let x1 = AffineChart::new("X1", iso.locus.ideal.extend_to(&ring).unwrap());
        let f1 = SchemeMap::new(&x1, &line, vec![fg.clone()]).unwrap();
        let first = constfy(&f1, &fib).unwrap().locus.ideal;

        // Constfy first, then iso over it.
        let c = constfy(&SchemeMap::new(&x, &line, vec![fg.clone()]).unwrap(), &fib).unwrap();
        let x2 = AffineChart::new("X2", c.locus.ideal.extend_to(&ring).unwrap());
        let second = iso_locus(&ClosedSub::new(&x2, zg).unwrap(), &fib).unwrap().locus.ideal;

        let second = Ideal::new(first.ring(), second.gens().iter().map(|g| g.to_ring(first.ring()).unwrap()).collect()).unwrap();
        assert!(first.equals(&second).unwrap());
    }
}

#[test]
pub fn rees_charts_carry_cartier_exceptional_divisors() {
    let mut r = rng(16);
    let ring = Ring::grevlex(&["x", "y"]);
    let x = AffineChart::affine_space("X", &ring);
    let mut certified = 0;
    for _ in 0..CASES {
        let gens: Vec<Poly> = (0..2).map(|_| nonzero_poly(&mut r, &ring, &["x", "y"], 2, 2)).collect();
        let center = Ideal::new(&ring, gens.clone()).unwrap();
        let bl = blowup_rees(&x, &center).unwrap();
        for c in &bl.charts {
            // Independent certificate: pull the whole center back and search again.
            let pulled = Ideal::new(c.chart.ring(), gens.iter().map(|g| c.map.pull(g)).collect()).unwrap();
            let p = is_principal_cartier(&pulled, &c.chart.coords).unwrap();
            assert!(matches!(p, Principality::Cartier(_) | Principality::Full), "{:?} on chart {}", p, c.index);
            assert!(matches!(c.certificate, Principality::Cartier(_) | Principality::Full));
            certified += 1;
        }
    }
    assert!(certified >= CASES);
}

#[test]
pub fn algebra_coordinates_are_multiplicative() {
    let mut r = rng(17);
    for alg in [FiniteAlgebra::dual_numbers(), FiniteAlgebra::split_pair(), FiniteAlgebra::quadratic("i", bsf_core::poly::rat(-1))] {
        let base = Ring::grevlex(&["x", "y"]);
        let over = OverAlgebra::extend(&base, &alg).unwrap();
        let vars = ["x", "y", "e2"];
        for _ in 0..CASES / 3 + 1 {
            let f = random_poly(&mut r, &over.ring, &vars, 3, 3);
            let g = random_poly(&mut r, &over.ring, &vars, 3, 3);
            let lhs = over.coordinates(&f.mul(&g));
            let rhs = alg.mul(&over.coordinates(&f), &over.coordinates(&g));
            assert_eq!(lhs, rhs);
            let sum = over.coordinates(&f.add(&g));
            let parts: Vec<Poly> = over.coordinates(&f).iter().zip(over.coordinates(&g)).map(|(a, b)| a.add(&b)).collect();
            assert_eq!(sum, parts);
        }
    }
}
