//! Ideals with cached Groebner bases, quotient rings and the ideal-level algorithms
//! (elimination, intersection, colon, saturation, kernels, coefficient ideals).

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::groebner::{self, groebner, interreduce, is_unit_basis};
use crate::poly::{Poly, Ring, TermOrder};

/// Generators in a ring plus a lazily computed reduced Groebner basis.
pub struct Ideal {
    ring: Ring,
    gens: Vec<Poly>,
    gb: OnceLock<Vec<Poly>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let gb = OnceLock::new();
        if let Some(g) = self.gb.get() {
            let _ = gb.set(g.clone());
        }
        Ideal { ring: self.ring.clone(), gens: self.gens.clone(), gb }
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal({})", self)
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = self.gens.iter().map(|p| p.to_string()).collect();
        write!(f, "<{}>", g.join(", "))
    }
}

impl Ideal {
    pub fn new(ring: &Ring, gens: Vec<Poly>) -> Result<Ideal> {
        for g in &gens {
            if g.ring() != ring {
                return Err(Error::RingMismatch(format!("generator {g} not in {ring}")));
            }
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal { ring: ring.clone(), gens, gb: OnceLock::new() })
    }

    /// Ideal whose generators already form a reduced Groebner basis.
    pub(crate) fn from_reduced_basis(ring: &Ring, gb: Vec<Poly>) -> Ideal {
        let cell = OnceLock::new();
        let _ = cell.set(gb.clone());
        Ideal { ring: ring.clone(), gens: gb, gb: cell }
    }

    pub fn parse(ring: &Ring, gens: &[&str]) -> Result<Ideal> {
        let polys = gens.iter().map(|g| ring.parse(g)).collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, polys)
    }

    /// Literal ideal for code and tests; panics on bad input.
    pub fn of(ring: &Ring, gens: &[&str]) -> Ideal {
        Ideal::parse(ring, gens).expect("valid ideal literal")
    }

    pub fn zero(ring: &Ring) -> Ideal {
        Ideal::from_reduced_basis(ring, Vec::new())
    }

    pub fn unit(ring: &Ring) -> Ideal {
        Ideal::from_reduced_basis(ring, vec![ring.one()])
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    pub fn gb(&self) -> Result<&[Poly]> {
        if let Some(g) = self.gb.get() {
            return Ok(g);
        }
        let g = groebner(&self.gens)?;
        let _ = self.gb.set(g);
        Ok(self.gb.get().unwrap())
    }

    /// Ideal generated by the reduced Groebner basis (a canonical presentation).
    pub fn canonical(&self) -> Result<Ideal> {
        Ok(Ideal::from_reduced_basis(&self.ring, self.gb()?.to_vec()))
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(is_unit_basis(self.gb()?))
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn reduce(&self, f: &Poly) -> Result<Poly> {
        f.same_ring(&self.ring.zero())?;
        Ok(groebner::reduce(f, self.gb()?))
    }

    pub fn contains(&self, f: &Poly) -> Result<bool> {
        Ok(self.reduce(f)?.is_zero())
    }

    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        self.same_ring(other)?;
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        self.same_ring(other)?;
        Ok(self.gb()? == other.gb()?)
    }

    pub fn same_ring(&self, other: &Ideal) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!("{} vs {}", self.ring, other.ring)))
        }
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.same_ring(other)?;
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, g)
    }

    pub fn with(&self, extra: &[Poly]) -> Result<Ideal> {
        let mut g = self.gens.clone();
        g.extend(extra.iter().cloned());
        Ideal::new(&self.ring, g)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.same_ring(other)?;
        let mut g = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                g.push(a.mul(b));
            }
        }
        Ideal::new(&self.ring, g)
    }

    /// Same generators read in a ring containing all their variables (matched by name).
    pub fn extend_to(&self, ring: &Ring) -> Result<Ideal> {
        let g = self.gens.iter().map(|p| p.to_ring(ring)).collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, g)
    }

    /// Image under a ring substitution (one image per variable of this ring).
    pub fn map(&self, target: &Ring, images: &[Poly]) -> Result<Ideal> {
        let g = self.gens.iter().map(|p| p.substitute(target, images)).collect();
        Ideal::new(target, g)
    }

    pub fn gb_strings(&self) -> Result<Vec<String>> {
        Ok(self.gb()?.iter().map(|p| p.to_string()).collect())
    }
}

pub fn member(f: &Poly, i: &Ideal) -> Result<bool> {
    i.contains(f)
}

pub fn ideal_equal(i: &Ideal, j: &Ideal) -> Result<bool> {
    i.equals(j)
}

/// Presented ring `ring / modulus`.
#[derive(Clone, Debug)]
pub struct QuotientRing {
    pub ring: Ring,
    pub modulus: Ideal,
}

impl QuotientRing {
    pub fn new(modulus: Ideal) -> QuotientRing {
        QuotientRing { ring: modulus.ring().clone(), modulus }
    }

    pub fn free(ring: &Ring) -> QuotientRing {
        QuotientRing::new(Ideal::zero(ring))
    }

    pub fn reduce(&self, f: &Poly) -> Result<Poly> {
        self.modulus.reduce(f)
    }

    pub fn is_zero(&self, f: &Poly) -> Result<bool> {
        self.modulus.contains(f)
    }

    pub fn elements_equal(&self, a: &Poly, b: &Poly) -> Result<bool> {
        self.modulus.contains(&a.sub(b))
    }

    /// Upstairs presentation of the ideal generated by `gens` in this quotient.
    pub fn ideal(&self, gens: Vec<Poly>) -> Result<Ideal> {
        self.modulus.with(&gens)
    }

    pub fn is_zero_ring(&self) -> Result<bool> {
        self.modulus.is_unit()
    }
}

/// Variables named in `names`, as indices; errors on unknown names.
pub fn indices_of(ring: &Ring, names: &[String]) -> Result<Vec<usize>> {
    names
        .iter()
        .map(|n| ring.index_of(n).ok_or_else(|| Error::invalid(format!("unknown variable `{n}` in {ring}"))))
        .collect()
}

pub(crate) fn restricted_order(order: TermOrder) -> TermOrder {
    match order {
        TermOrder::Lex => TermOrder::Lex,
        _ => TermOrder::Grevlex,
    }
}

/// Compute `gens ∩ Q[last vars]` where `ext` has block order eliminating the first `k`
/// variables; return the surviving basis elements moved to `target` via `map`.
fn eliminate_block(ext: &Ring, gens: &[Poly], k: usize, target: &Ring, map: &[usize]) -> Result<Ideal> {
    debug_assert_eq!(ext.order(), TermOrder::Block(k));
    let gb = groebner(gens)?;
    let kept: Vec<Poly> = gb
        .into_iter()
        .filter(|p| (0..k).all(|i| !p.involves(i)))
        .map(|p| p.map_vars(target, map))
        .collect();
    if target.order() == TermOrder::Grevlex {
        // Survivors already form the reduced basis for grevlex on the kept block.
        Ok(Ideal::from_reduced_basis(target, interreduce(kept)))
    } else {
        Ideal::new(target, kept)
    }
}

/// `I ∩ Q[keep]`, presented in the ring of the kept variables (original relative order).
pub fn eliminate(i: &Ideal, keep: &[String]) -> Result<Ideal> {
    let ring = i.ring();
    let keep_idx = indices_of(ring, keep)?;
    let elim: Vec<usize> = (0..ring.nvars()).filter(|v| !keep_idx.contains(v)).collect();
    let kept: Vec<usize> = (0..ring.nvars()).filter(|v| keep_idx.contains(v)).collect();
    let target = Ring::new(kept.iter().map(|&v| ring.vars()[v].clone()), restricted_order(ring.order()))?;
    if elim.is_empty() {
        return i.extend_to(&target);
    }
    let order: Vec<usize> = elim.iter().chain(kept.iter()).copied().collect();
    let ext = Ring::new(order.iter().map(|&v| ring.vars()[v].clone()), TermOrder::Block(elim.len()))?;
    let mut to_ext = vec![0; ring.nvars()];
    for (pos, &v) in order.iter().enumerate() {
        to_ext[v] = pos;
    }
    let gens: Vec<Poly> = i.gens().iter().map(|p| p.map_vars(&ext, &to_ext)).collect();
    let back: Vec<usize> = (0..ext.nvars()).map(|p| p.saturating_sub(elim.len())).collect();
    eliminate_block(&ext, &gens, elim.len(), &target, &back)
}

/// Ring with one fresh variable prepended, ordered to eliminate it.
fn with_tag(ring: &Ring, base: &str) -> Result<(Ring, Vec<usize>)> {
    let t = ring.fresh_name(base);
    let vars = std::iter::once(t).chain(ring.vars().iter().cloned());
    let ext = Ring::new(vars, TermOrder::Block(1))?;
    let shift: Vec<usize> = (1..=ring.nvars()).collect();
    Ok((ext, shift))
}

fn untag_map(ring: &Ring) -> Vec<usize> {
    (0..=ring.nvars()).map(|p| p.saturating_sub(1)).collect()
}

/// `I ∩ J` by eliminating a tag variable from `t I + (1 - t) J`.
pub fn intersect(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    i.same_ring(j)?;
    let ring = i.ring();
    if i.is_unit()? {
        return Ok(j.clone());
    }
    if j.is_unit()? {
        return Ok(i.clone());
    }
    if i.is_zero() || j.is_zero() {
        return Ok(Ideal::zero(ring));
    }
    let (ext, shift) = with_tag(ring, "t")?;
    let t = ext.var(0);
    let one_minus_t = ext.one().sub(&t);
    let mut gens = Vec::new();
    for g in i.gb()? {
        gens.push(t.mul(&g.map_vars(&ext, &shift)));
    }
    for g in j.gb()? {
        gens.push(one_minus_t.mul(&g.map_vars(&ext, &shift)));
    }
    let target = ring.clone();
    let res = eliminate_block(&ext, &gens, 1, &target, &untag_map(ring))?;
    if ring.order() == TermOrder::Grevlex {
        Ok(res)
    } else {
        Ideal::new(ring, res.gens().to_vec())
    }
}

pub fn intersect_all(ideals: &[Ideal]) -> Result<Ideal> {
    let (first, rest) = ideals
        .split_first()
        .ok_or_else(|| Error::invalid("intersection of an empty family"))?;
    rest.iter().try_fold(first.clone(), |acc, j| intersect(&acc, j))
}

/// Colon ideal `(I : f)`.
pub fn quotient(i: &Ideal, f: &Poly) -> Result<Ideal> {
    if f.is_zero() {
        return Err(Error::invalid("quotient by the zero polynomial"));
    }
    f.same_ring(&i.ring().zero())?;
    if f.is_constant() {
        return Ok(i.clone());
    }
    let fi = Ideal::new(i.ring(), vec![f.clone()])?;
    let meet = intersect(i, &fi)?;
    let gens = meet
        .gens()
        .iter()
        .map(|g| g.div_exact(f).ok_or_else(|| Error::invalid("colon: inexact division")))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(i.ring(), gens)
}

/// `(I : f^∞)` via one extra variable `t` and the relation `t f - 1`.
pub fn saturate(i: &Ideal, f: &Poly) -> Result<Ideal> {
    if f.is_zero() {
        return Err(Error::invalid("saturation by the zero polynomial"));
    }
    f.same_ring(&i.ring().zero())?;
    if f.is_constant() || i.is_unit()? {
        return Ok(i.clone());
    }
    let ring = i.ring();
    let (ext, shift) = with_tag(ring, "t")?;
    let mut gens: Vec<Poly> = i.gens().iter().map(|g| g.map_vars(&ext, &shift)).collect();
    gens.push(ext.var(0).mul(&f.map_vars(&ext, &shift)).sub(&ext.one()));
    let res = eliminate_block(&ext, &gens, 1, ring, &untag_map(ring))?;
    if ring.order() == TermOrder::Grevlex {
        Ok(res)
    } else {
        Ideal::new(ring, res.gens().to_vec())
    }
}

/// Saturation by repeated colons until the chain stabilizes; a cross-check for [`saturate`].
pub fn saturate_iterated(i: &Ideal, f: &Poly) -> Result<Ideal> {
    let mut cur = i.clone();
    loop {
        let next = quotient(&cur, f)?;
        if next.equals(&cur)? {
            return Ok(cur);
        }
        cur = next;
    }
}

/// `f` lies in the radical of `I`.
pub fn radical_contains(i: &Ideal, f: &Poly) -> Result<bool> {
    if f.is_zero() {
        return Ok(true);
    }
    saturate(i, f)?.is_unit()
}

/// Ring homomorphism `source -> target` given by the image of each source variable.
#[derive(Clone, Debug)]
pub struct RingMap {
    pub source: Ring,
    pub target: QuotientRing,
    pub images: Vec<Poly>,
}

impl RingMap {
    pub fn new(source: &Ring, target: QuotientRing, images: Vec<Poly>) -> Result<RingMap> {
        if images.len() != source.nvars() {
            return Err(Error::invalid(format!(
                "map needs {} images, got {}",
                source.nvars(),
                images.len()
            )));
        }
        for p in &images {
            if p.ring() != &target.ring {
                return Err(Error::invalid(format!("image {p} not in target ring {}", target.ring)));
            }
        }
        Ok(RingMap { source: source.clone(), target, images })
    }

    pub fn apply(&self, f: &Poly) -> Poly {
        f.substitute(&self.target.ring, &self.images)
    }
}

/// Kernel of a ring map: graph ideal plus target modulus, target variables eliminated.
pub fn ring_map_kernel(phi: &RingMap) -> Result<Ideal> {
    let tr = &phi.target.ring;
    let sr = &phi.source;
    let mut names: Vec<String> = tr.vars().to_vec();
    for v in sr.vars() {
        let n = if names.contains(v) { crate::poly::fresh_name(&names, &format!("{v}_s")) } else { v.clone() };
        names.push(n);
    }
    let k = tr.nvars();
    let ext = Ring::new(names, TermOrder::Block(k))?;
    let t_shift: Vec<usize> = (0..k).collect();
    let mut gens: Vec<Poly> = phi.target.modulus.gens().iter().map(|g| g.map_vars(&ext, &t_shift)).collect();
    for (i, img) in phi.images.iter().enumerate() {
        gens.push(ext.var(k + i).sub(&img.map_vars(&ext, &t_shift)));
    }
    let back: Vec<usize> = (0..ext.nvars()).map(|p| p.saturating_sub(k)).collect();
    let res = eliminate_block(&ext, &gens, k, &sr.with_order(TermOrder::Grevlex), &back)?;
    if sr.order() == TermOrder::Grevlex {
        Ok(Ideal::from_reduced_basis(sr, res.gens().to_vec()))
    } else {
        Ideal::new(sr, res.gens().iter().map(|p| p.to_ring(sr)).collect::<Result<Vec<_>>>()?)
    }
}

/// Base-ring ideal generated by the coefficients of the Groebner basis of `I` viewed as
/// polynomials in `fiber_vars`. Fiber terms are first reduced modulo `fiber_relations`
/// (relations among the fiber variables whose standard monomials form a free basis).
pub fn coefficient_ideal_with(i: &Ideal, fiber_vars: &[String], fiber_relations: &[Poly]) -> Result<Ideal> {
    let ring = i.ring();
    let fiber = indices_of(ring, fiber_vars)?;
    for r in fiber_relations {
        r.same_ring(&ring.zero())?;
        if (0..ring.nvars()).any(|v| !fiber.contains(&v) && r.involves(v)) {
            return Err(Error::math("split violated", format!("relation {r} involves base variables")));
        }
    }
    let base_names: Vec<String> = (0..ring.nvars())
        .filter(|v| !fiber.contains(v))
        .map(|v| ring.vars()[v].clone())
        .collect();
    let base = Ring::new(base_names, restricted_order(ring.order()))?;
    let rel_gb = groebner(fiber_relations)?;
    let mut coeffs = Vec::new();
    for g in i.gb()? {
        let g = if rel_gb.is_empty() { g.clone() } else { groebner::reduce(g, &rel_gb) };
        for (_, c) in g.coefficients_in(&fiber) {
            coeffs.push(c.to_ring(&base)?);
        }
    }
    Ideal::new(&base, coeffs)
}

pub fn coefficient_ideal(i: &Ideal, fiber_vars: &[String]) -> Result<Ideal> {
    coefficient_ideal_with(i, fiber_vars, &[])
}

/// `(0 :_A f) = 0`. A zero element is reported as an error distinct from `false`.
pub fn is_regular(f: &Poly, a: &QuotientRing) -> Result<bool> {
    if a.is_zero(f)? {
        return Err(Error::math("zero element", format!("{f} is zero in the quotient ring")));
    }
    let q = quotient(&a.modulus, f)?;
    q.equals(&a.modulus)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Principality {
    /// Generated by a nonzerodivisor.
    Cartier(Poly),
    PrincipalNotCartier(Poly),
    /// The unit ideal.
    Full,
    /// No single basis element generates; the search is incomplete by design.
    Unknown,
}

impl Principality {
    pub fn tag(&self) -> &'static str {
        match self {
            Principality::Cartier(_) => "cartier",
            Principality::PrincipalNotCartier(_) => "principal_not_cartier",
            Principality::Full => "full",
            Principality::Unknown => "unknown",
        }
    }

    pub fn generator(&self) -> Option<&Poly> {
        match self {
            Principality::Cartier(g) | Principality::PrincipalNotCartier(g) => Some(g),
            _ => None,
        }
    }
}

/// Look for a single generator of `I` (given upstairs) among its basis elements and
/// supplied generators, then classify it by regularity.
pub fn is_principal_cartier(i: &Ideal, a: &QuotientRing) -> Result<Principality> {
    let full = i.sum(&a.modulus)?;
    if full.is_unit()? {
        return Ok(Principality::Full);
    }
    if full.equals(&a.modulus)? {
        let zero = a.ring.zero();
        return Ok(if a.is_zero_ring()? {
            Principality::Cartier(zero)
        } else {
            Principality::PrincipalNotCartier(zero)
        });
    }
    let mut candidates: Vec<Poly> = Vec::new();
    for g in full.gb()?.iter().rev().chain(i.gens().iter()) {
        let g = a.reduce(g)?;
        if !g.is_zero() && !candidates.contains(&g) {
            candidates.push(g);
        }
    }
    for g in candidates {
        if a.modulus.with(std::slice::from_ref(&g))?.equals(&full)? {
            return Ok(if is_regular(&g, a)? {
                Principality::Cartier(g)
            } else {
                Principality::PrincipalNotCartier(g)
            });
        }
    }
    Ok(Principality::Unknown)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[&str]) -> Vec<String> {
        v.iter().map(|x| x.to_string()).collect()
    }

    #[test]
    fn membership_and_equality() {
        let r = Ring::grevlex(&["x", "y", "z"]);
        let i = Ideal::of(&r, &["x^2 - y", "x^3 - z"]);
        assert!(member(&r.p("y^3 - z^2"), &i).unwrap());
        assert!(!member(&r.one(), &Ideal::of(&r, &["x"])).unwrap());
        assert!(member(&r.zero(), &i).unwrap());
        let r2 = Ring::grevlex(&["x", "y"]);
        assert!(ideal_equal(&Ideal::of(&r2, &["x", "y"]), &Ideal::of(&r2, &["x + y", "y"])).unwrap());
        assert!(!ideal_equal(&Ideal::of(&r2, &["x^2"]), &Ideal::of(&r2, &["x"])).unwrap());
        let prod = Ideal::of(&r2, &["y"]).product(&Ideal::of(&r2, &["x", "y"])).unwrap();
        assert!(ideal_equal(&Ideal::of(&r2, &["x*y", "y^2"]), &prod).unwrap());
    }

    #[test]
    fn elimination_examples() {
        let r = Ring::grevlex(&["x", "y", "z"]);
        let e = eliminate(&Ideal::of(&r, &["y - x^2", "z - x^3"]), &s(&["y", "z"])).unwrap();
        assert_eq!(e.ring().vars(), &s(&["y", "z"])[..]);
        assert!(e.equals(&Ideal::of(e.ring(), &["y^3 - z^2"])).unwrap());
        let r2 = Ring::grevlex(&["x", "y"]);
        assert!(eliminate(&Ideal::of(&r2, &["x"]), &s(&["y"])).unwrap().is_zero());
        let r1 = Ring::grevlex(&["x"]);
        let e0 = eliminate(&Ideal::of(&r1, &["x - 1"]), &[]).unwrap();
        assert_eq!(e0.ring().nvars(), 0);
        assert!(e0.is_zero());
    }

    #[test]
    fn colon_and_saturation_examples() {
        let r = Ring::grevlex(&["x", "y"]);
        let x = r.p("x");
        assert!(quotient(&Ideal::of(&r, &["x*y"]), &x).unwrap().equals(&Ideal::of(&r, &["y"])).unwrap());
        assert!(quotient(&Ideal::of(&r, &["x^2", "x*y"]), &x)
            .unwrap()
            .equals(&Ideal::of(&r, &["x", "y"]))
            .unwrap());
        let i = Ideal::of(&r, &["x^3 - y", "y^2"]);
        assert!(quotient(&i, &r.one()).unwrap().equals(&i).unwrap());
        assert!(quotient(&i, &r.zero()).is_err());
        assert!(saturate(&Ideal::of(&r, &["x*y"]), &x).unwrap().equals(&Ideal::of(&r, &["y"])).unwrap());
        assert!(saturate(&Ideal::of(&r, &["y^2", "x*y"]), &x)
            .unwrap()
            .equals(&Ideal::of(&r, &["y"]))
            .unwrap());
        let j = Ideal::of(&r, &["y^2 - x^3"]);
        assert!(saturate(&j, &x).unwrap().equals(&j).unwrap());
        let it = saturate_iterated(&Ideal::of(&r, &["x^3*y", "x*y^2"]), &x).unwrap();
        assert!(it.equals(&saturate(&Ideal::of(&r, &["x^3*y", "x*y^2"]), &x).unwrap()).unwrap());
    }

    #[test]
    fn intersection_examples() {
        let r = Ring::grevlex(&["x", "y"]);
        let i = intersect(&Ideal::of(&r, &["x"]), &Ideal::of(&r, &["y"])).unwrap();
        assert!(i.equals(&Ideal::of(&r, &["x*y"])).unwrap());
        let u = intersect(&Ideal::of(&r, &["y", "y^2", "x*y"]), &Ideal::of(&r, &["x", "y^2", "x*y"])).unwrap();
        assert!(u.equals(&Ideal::of(&r, &["y^2", "x*y"])).unwrap());
        let j = Ideal::of(&r, &["x^2 + y", "y^3"]);
        assert!(intersect(&j, &Ideal::unit(&r)).unwrap().equals(&j).unwrap());
    }

    #[test]
    fn kernel_examples() {
        let src = Ring::grevlex(&["x", "y"]);
        let t = Ring::grevlex(&["t"]);
        let phi = RingMap::new(&src, QuotientRing::free(&t), vec![t.p("t^2"), t.p("t^3")]).unwrap();
        assert!(ring_map_kernel(&phi).unwrap().equals(&Ideal::of(&src, &["y^2 - x^3"])).unwrap());
        let id = RingMap::new(&src, QuotientRing::free(&src), vec![src.p("x"), src.p("y")]).unwrap();
        assert!(ring_map_kernel(&id).unwrap().is_zero());
        let s1 = Ring::grevlex(&["x"]);
        let dual = QuotientRing::new(Ideal::of(&t, &["t^2"]));
        let psi = RingMap::new(&s1, dual, vec![t.p("t")]).unwrap();
        assert!(ring_map_kernel(&psi).unwrap().equals(&Ideal::of(&s1, &["x^2"])).unwrap());
    }

    #[test]
    fn coefficient_ideal_examples() {
        let r = Ring::grevlex(&["c", "a", "a2"]);
        let ci = coefficient_ideal(&Ideal::of(&r, &["c*(a - a2)"]), &s(&["a", "a2"])).unwrap();
        assert!(ci.equals(&Ideal::of(ci.ring(), &["c"])).unwrap());
        let r2 = Ring::grevlex(&["c", "a"]);
        let ci = coefficient_ideal(&Ideal::of(&r2, &["c"]), &s(&["a"])).unwrap();
        assert!(ci.equals(&Ideal::of(ci.ring(), &["c"])).unwrap());
        let ci = coefficient_ideal(&Ideal::of(&r2, &["c*a", "c^2"]), &s(&["a"])).unwrap();
        assert!(ci.equals(&Ideal::of(ci.ring(), &["c"])).unwrap());
    }

    #[test]
    fn regularity_examples() {
        let r = Ring::grevlex(&["x", "y"]);
        let a = QuotientRing::new(Ideal::of(&r, &["x*y"]));
        assert!(!is_regular(&r.p("x"), &a).unwrap());
        assert!(is_regular(&r.p("x"), &QuotientRing::free(&r)).unwrap());
        assert!(is_regular(&r.p("x + y"), &a).unwrap());
        assert!(matches!(is_regular(&r.p("x*y"), &a), Err(Error::Math { tag: "zero element", .. })));
    }

    #[test]
    fn principality_examples() {
        let r = Ring::grevlex(&["x", "y"]);
        let free = QuotientRing::free(&r);
        assert_eq!(is_principal_cartier(&Ideal::of(&r, &["x"]), &free).unwrap(), Principality::Cartier(r.p("x")));
        let a = QuotientRing::new(Ideal::of(&r, &["x*y"]));
        assert_eq!(
            is_principal_cartier(&Ideal::of(&r, &["x"]), &a).unwrap(),
            Principality::PrincipalNotCartier(r.p("x"))
        );
        assert_eq!(is_principal_cartier(&Ideal::of(&r, &["1"]), &free).unwrap(), Principality::Full);
        assert_eq!(is_principal_cartier(&Ideal::of(&r, &["x", "y"]), &free).unwrap(), Principality::Unknown);
    }
}
