//! Multivariate division and Buchberger's algorithm with the Gebauer-Moeller pair criteria.

use std::cmp::Ordering;

use num_traits::One;

use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly, Rational, Ring};

pub const STEP_LIMIT_VAR: &str = "BSFKIT_GB_STEP_LIMIT";
pub const DEFAULT_STEP_LIMIT: u64 = 1_000_000;

/// Pair budget per Groebner computation, read from the environment on each call.
pub fn step_limit() -> u64 {
    std::env::var(STEP_LIMIT_VAR)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_STEP_LIMIT)
}

fn check_ring(f: &Poly, g: &[Poly]) -> Result<()> {
    g.iter().try_for_each(|p| f.same_ring(p))
}

/// Remainder of full multivariate division of `f` by `g`.
pub fn normal_form(f: &Poly, g: &[Poly]) -> Result<Poly> {
    check_ring(f, g)?;
    if g.iter().any(Poly::is_zero) {
        return Err(Error::invalid("normal_form divisor list contains zero"));
    }
    Ok(reduce(f, g))
}

pub(crate) fn reduce(f: &Poly, g: &[Poly]) -> Poly {
    reduce_with_quotients(f, g, false).0
}

/// Division returning `(remainder, quotients)` with `f = sum q_i g_i + r`.
pub fn divide(f: &Poly, g: &[Poly]) -> Result<(Poly, Vec<Poly>)> {
    check_ring(f, g)?;
    if g.iter().any(Poly::is_zero) {
        return Err(Error::invalid("divisor list contains zero"));
    }
    Ok(reduce_with_quotients(f, g, true))
}

fn reduce_with_quotients(f: &Poly, g: &[Poly], track: bool) -> (Poly, Vec<Poly>) {
    let ring = f.ring().clone();
    let mut p = f.clone();
    let mut rem: Vec<(Monomial, Rational)> = Vec::new();
    let mut quots: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); if track { g.len() } else { 0 }];
    while let Some((m, c)) = p.terms().first().cloned() {
        match g.iter().position(|d| d.lm().is_some_and(|l| l.divides(&m))) {
            Some(k) => {
                let d = &g[k];
                let qm = m.div(d.lm().unwrap());
                let qc = &c / d.lc().unwrap();
                p = p.sub_mul_term(&qc, &qm, d);
                if track {
                    quots[k].push((qm, qc));
                }
            }
            None => {
                p.pop_lead();
                rem.push((m, c));
            }
        }
    }
    let quots = quots.into_iter().map(|q| Poly::from_terms(&ring, q)).collect();
    (Poly::from_terms(&ring, rem), quots)
}

pub fn s_poly(f: &Poly, g: &Poly) -> Poly {
    let (fm, gm) = (f.lm().unwrap(), g.lm().unwrap());
    let l = fm.lcm(gm);
    let a = f.mul_term(&f.lc().unwrap().recip(), &l.div(fm));
    let b = g.mul_term(&g.lc().unwrap().recip(), &l.div(gm));
    a.sub(&b)
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct Builder {
    ring: Ring,
    polys: Vec<Poly>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
}

impl Builder {
    fn lm(&self, k: usize) -> &Monomial {
        self.polys[k].lm().unwrap()
    }

    fn active_polys(&self) -> Vec<Poly> {
        self.active.iter().map(|&k| self.polys[k].clone()).collect()
    }

    /// Insert a new monic element, pruning pairs with the product and chain criteria.
    fn update(&mut self, h: Poly) {
        let hk = self.polys.len();
        self.polys.push(h);
        let hlm = self.lm(hk).clone();

        let mut c: Vec<Pair> = self
            .active
            .iter()
            .map(|&g| Pair { i: g, j: hk, lcm: hlm.lcm(self.lm(g)) })
            .collect();
        let mut d: Vec<Pair> = Vec::new();
        while !c.is_empty() {
            let p = c.remove(0);
            let disjoint = hlm.coprime(self.lm(p.i));
            let dominated = c.iter().chain(d.iter()).any(|q| q.lcm.divides(&p.lcm));
            if disjoint || !dominated {
                d.push(p);
            }
        }
        let e: Vec<Pair> = d.into_iter().filter(|p| !hlm.coprime(self.lm(p.i))).collect();

        let keep: Vec<Pair> = std::mem::take(&mut self.pairs)
            .into_iter()
            .filter(|p| {
                !hlm.divides(&p.lcm)
                    || self.lm(p.i).lcm(&hlm) == p.lcm
                    || self.lm(p.j).lcm(&hlm) == p.lcm
            })
            .collect();
        self.pairs = keep;
        self.pairs.extend(e);
        let polys = &self.polys;
        self.active.retain(|&g| !hlm.divides(polys[g].lm().unwrap()));
        self.active.push(hk);
    }

    fn take_min_pair(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let ring = &self.ring;
        let mut best = 0;
        for k in 1..self.pairs.len() {
            let (a, b) = (&self.pairs[k], &self.pairs[best]);
            let ord = ring.cmp(&a.lcm, &b.lcm).then((a.j, a.i).cmp(&(b.j, b.i)));
            if ord == Ordering::Less {
                best = k;
            }
        }
        Some(self.pairs.swap_remove(best))
    }
}

/// Reduced Groebner basis, monic, sorted by leading monomial (largest first).
pub fn groebner(gens: &[Poly]) -> Result<Vec<Poly>> {
    groebner_with_limit(gens, step_limit())
}

pub fn groebner_with_limit(gens: &[Poly], limit: u64) -> Result<Vec<Poly>> {
    let Some(first) = gens.first() else {
        return Ok(Vec::new());
    };
    check_ring(first, gens)?;
    let ring = first.ring().clone();
    let mut input: Vec<Poly> = gens.iter().filter(|p| !p.is_zero()).map(Poly::monic).collect();
    if input.is_empty() {
        return Ok(Vec::new());
    }
    if input.iter().any(Poly::is_constant) {
        return Ok(vec![ring.one()]);
    }
    input.sort_by(|a, b| ring.cmp(a.lm().unwrap(), b.lm().unwrap()).then_with(|| a.len().cmp(&b.len())));
    input.dedup();

    let mut b = Builder { ring: ring.clone(), polys: Vec::new(), active: Vec::new(), pairs: Vec::new() };
    for f in input {
        let h = reduce(&f, &b.active_polys());
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return Ok(vec![ring.one()]);
        }
        b.update(h.monic());
    }

    let mut steps: u64 = 0;
    while let Some(p) = b.take_min_pair() {
        steps += 1;
        if steps > limit {
            return Err(Error::Budget(limit));
        }
        let s = s_poly(&b.polys[p.i], &b.polys[p.j]);
        let h = reduce(&s, &b.active_polys());
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return Ok(vec![ring.one()]);
        }
        b.update(h.monic());
    }
    Ok(interreduce(b.active_polys()))
}

/// Minimalize, tail-reduce and sort a Groebner basis.
pub fn interreduce(mut g: Vec<Poly>) -> Vec<Poly> {
    if g.is_empty() {
        return g;
    }
    let ring = g[0].ring().clone();
    g.sort_by(|a, b| ring.cmp(a.lm().unwrap(), b.lm().unwrap()));
    let mut minimal: Vec<Poly> = Vec::new();
    for p in g {
        let lm = p.lm().unwrap();
        if minimal.iter().any(|q| q.lm().unwrap().divides(lm)) {
            continue;
        }
        minimal.push(p);
    }
    let mut out: Vec<Poly> = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<Poly> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != k)
            .map(|(_, p)| p.clone())
            .collect();
        let p = &minimal[k];
        let lead = ring.term(p.lc().unwrap().clone(), p.lm().unwrap().clone());
        let tail = reduce(&p.sub(&lead), &others);
        out.push(lead.add(&tail).monic());
    }
    out.sort_by(|a, b| ring.cmp(b.lm().unwrap(), a.lm().unwrap()));
    out
}

/// True when every S-polynomial of `g` reduces to zero modulo `g`.
pub fn satisfies_buchberger_criterion(g: &[Poly]) -> bool {
    for i in 0..g.len() {
        for j in (i + 1)..g.len() {
            if !reduce(&s_poly(&g[i], &g[j]), g).is_zero() {
                return false;
            }
        }
    }
    true
}

/// True when `g` is a reduced Groebner basis (monic, no term divisible by another leading monomial).
pub fn is_reduced(g: &[Poly]) -> bool {
    g.iter().enumerate().all(|(i, p)| {
        p.lc().is_some_and(|c| c.is_one())
            && p.terms().iter().all(|(m, _)| {
                g.iter().enumerate().all(|(j, q)| j == i || !q.lm().unwrap().divides(m))
            })
    })
}

pub fn is_unit_basis(g: &[Poly]) -> bool {
    g.len() == 1 && g[0].is_constant() && !g[0].is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_form_examples() {
        let r = Ring::lex(&["x", "y"]);
        let g = [r.p("x^2 - y")];
        assert_eq!(normal_form(&r.p("x^2*y"), &g).unwrap(), r.p("y^2"));
        assert!(normal_form(&g[0], &g).unwrap().is_zero());
        assert_eq!(normal_form(&r.one(), &[r.p("x")]).unwrap(), r.one());
    }

    #[test]
    fn division_records_quotients() {
        let r = Ring::grevlex(&["x", "y", "z"]);
        let g = [r.p("x*y - z"), r.p("y^2 - x")];
        let f = r.p("x^2*y^2 + 3*z*y - 1");
        let (rem, q) = divide(&f, &g).unwrap();
        let recombined = q[0].mul(&g[0]).add(&q[1].mul(&g[1])).add(&rem);
        assert_eq!(recombined, f);
    }

    #[test]
    fn twisted_cubic_lex_basis() {
        let r = Ring::lex(&["x", "y", "z"]);
        let g = groebner(&[r.p("x^2 - y"), r.p("x^3 - z")]).unwrap();
        let expected = vec![r.p("x^2 - y"), r.p("x*y - z"), r.p("x*z - y^2"), r.p("y^3 - z^2")];
        assert_eq!(g, expected);
        assert!(satisfies_buchberger_criterion(&g));
        assert!(is_reduced(&g));
    }

    #[test]
    fn trivial_bases() {
        let r = Ring::grevlex(&["x", "y"]);
        assert_eq!(groebner(&[r.p("x"), r.p("x^2")]).unwrap(), vec![r.p("x")]);
        assert_eq!(groebner(&[r.p("2*x + 2*y")]).unwrap(), vec![r.p("x + y")]);
        assert!(groebner(&[]).unwrap().is_empty());
        assert!(groebner(&[r.zero()]).unwrap().is_empty());
        assert_eq!(groebner(&[r.p("x"), r.p("x - 1")]).unwrap(), vec![r.one()]);
    }

    #[test]
    fn budget_is_enforced() {
        let r = Ring::lex(&["x", "y", "z"]);
        let gens = [r.p("x^2 - y"), r.p("x^3 - z")];
        assert_eq!(groebner_with_limit(&gens, 1), Err(Error::Budget(1)));
        assert!(groebner_with_limit(&gens, 10_000).is_ok());
    }
}
