//! Rings, term orders, monomials and sparse polynomials over the rationals.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Monomial orders. `Block(b)` compares the first `b` variables by grevlex and
/// breaks ties with grevlex on the remaining ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TermOrder {
    Lex,
    Grevlex,
    Block(usize),
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

impl TermOrder {
    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match *self {
            TermOrder::Lex => a.cmp(b),
            TermOrder::Grevlex => grevlex(a, b),
            TermOrder::Block(k) => {
                let k = k.min(a.len());
                grevlex(&a[..k], &b[..k]).then_with(|| grevlex(&a[k..], &b[k..]))
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            TermOrder::Lex => "lex".into(),
            TermOrder::Grevlex => "grevlex".into(),
            TermOrder::Block(k) => format!("block({k})"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, assuming `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

#[derive(Debug, PartialEq, Eq)]
struct RingData {
    vars: Vec<String>,
    order: TermOrder,
}

/// Ordered variable names plus a term order. Cheap to clone.
#[derive(Clone, Debug)]
pub struct Ring(Arc<RingData>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}
impl Eq for Ring {}

pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Ring {
    pub fn new<S: Into<String>>(vars: impl IntoIterator<Item = S>, order: TermOrder) -> Result<Ring> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        for (i, v) in vars.iter().enumerate() {
            if !is_identifier(v) {
                return Err(Error::invalid(format!("bad variable name `{v}`")));
            }
            if vars[..i].contains(v) {
                return Err(Error::invalid(format!("duplicate variable `{v}`")));
            }
        }
        if let TermOrder::Block(k) = order {
            if k > vars.len() {
                return Err(Error::invalid(format!("block split {k} exceeds {} variables", vars.len())));
            }
        }
        Ok(Ring(Arc::new(RingData { vars, order })))
    }

    /// Grevlex ring; panics on invalid names (intended for literals in code).
    pub fn grevlex(vars: &[&str]) -> Ring {
        Ring::new(vars.iter().copied(), TermOrder::Grevlex).expect("valid ring literal")
    }

    pub fn lex(vars: &[&str]) -> Ring {
        Ring::new(vars.iter().copied(), TermOrder::Lex).expect("valid ring literal")
    }

    pub fn nvars(&self) -> usize {
        self.0.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.0.vars
    }

    pub fn order(&self) -> TermOrder {
        self.0.order
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.vars.iter().position(|v| v == name)
    }

    pub fn with_order(&self, order: TermOrder) -> Ring {
        Ring::new(self.0.vars.clone(), order).expect("same variables")
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.0.order.cmp(&a.0, &b.0)
    }

    pub fn zero(&self) -> Poly {
        Poly { ring: self.clone(), terms: Vec::new() }
    }

    pub fn one(&self) -> Poly {
        self.constant(Rational::one())
    }

    pub fn constant(&self, c: Rational) -> Poly {
        if c.is_zero() {
            return self.zero();
        }
        Poly { ring: self.clone(), terms: vec![(Monomial::one(self.nvars()), c)] }
    }

    pub fn int(&self, n: i64) -> Poly {
        self.constant(rat(n))
    }

    pub fn var(&self, i: usize) -> Poly {
        Poly { ring: self.clone(), terms: vec![(Monomial::var(self.nvars(), i), Rational::one())] }
    }

    pub fn var_named(&self, name: &str) -> Result<Poly> {
        self.index_of(name)
            .map(|i| self.var(i))
            .ok_or_else(|| Error::invalid(format!("no variable `{name}` in ring")))
    }

    pub fn term(&self, c: Rational, m: Monomial) -> Poly {
        if c.is_zero() {
            return self.zero();
        }
        Poly { ring: self.clone(), terms: vec![(m, c)] }
    }

    /// Parse a polynomial in this ring.
    pub fn parse(&self, text: &str) -> Result<Poly> {
        crate::syntax::parse_poly(self, text)
    }

    /// Parse, panicking on error; for literals in code and tests.
    pub fn p(&self, text: &str) -> Poly {
        self.parse(text).unwrap_or_else(|e| panic!("bad polynomial literal `{text}`: {e}"))
    }

    /// A name not among the variables, derived from `base`.
    pub fn fresh_name(&self, base: &str) -> String {
        fresh_name(self.vars(), base)
    }
}

pub fn fresh_name(taken: &[String], base: &str) -> String {
    if !taken.iter().any(|v| v == base) {
        return base.to_string();
    }
    (1..)
        .map(|k| format!("{base}{k}"))
        .find(|c| !taken.iter().any(|v| v == c))
        .unwrap()
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QQ[{}] {}", self.0.vars.join(","), self.0.order.name())
    }
}

/// Sparse polynomial; terms are kept sorted by the ring order, largest first.
#[derive(Clone, Debug)]
pub struct Poly {
    ring: Ring,
    terms: Vec<(Monomial, Rational)>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.terms == other.terms
    }
}
impl Eq for Poly {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Checked binary arithmetic.
pub fn poly_arith(a: &Poly, b: &Poly, op: ArithOp) -> Result<Poly> {
    a.same_ring(b)?;
    Ok(match op {
        ArithOp::Add => a.add(b),
        ArithOp::Sub => a.sub(b),
        ArithOp::Mul => a.mul(b),
    })
}

impl Poly {
    /// Build from arbitrary (monomial, coefficient) pairs; combines and sorts.
    pub fn from_terms(ring: &Ring, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Poly {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.0.len(), ring.nvars());
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| ring.cmp(&b.0, &a.0));
        Poly { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn same_ring(&self, other: &Poly) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch(format!("{} vs {}", self.ring, other.ring)))
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn pop_lead(&mut self) -> Option<(Monomial, Rational)> {
        if self.terms.is_empty() {
            None
        } else {
            Some(self.terms.remove(0))
        }
    }

    pub fn lm(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn lc(&self) -> Option<&Rational> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.0[var]).max().unwrap_or(0)
    }

    /// Which variables occur.
    pub fn support(&self) -> Vec<bool> {
        let mut used = vec![false; self.ring.nvars()];
        for (m, _) in &self.terms {
            for (u, &e) in used.iter_mut().zip(&m.0) {
                *u |= e > 0;
            }
        }
        used
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.0[var] > 0)
    }

    pub fn neg(&self) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return self.ring.zero();
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn monic(&self) -> Poly {
        match self.lc() {
            None => self.clone(),
            Some(c) if c.is_one() => self.clone(),
            Some(c) => self.scale(&c.recip()),
        }
    }

    fn merge(&self, other: &Poly, sign: bool) -> Poly {
        debug_assert!(self.ring == other.ring);
        let ring = &self.ring;
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match ring.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if sign { b[j].1.clone() } else { -&b[j].1 };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if sign { &a[i].1 + &b[j].1 } else { &a[i].1 - &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if sign { t.1.clone() } else { -&t.1 };
            out.push((t.0.clone(), c));
        }
        Poly { ring: ring.clone(), terms: out }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.merge(other, true)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.merge(other, false)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        debug_assert!(self.ring == other.ring);
        if self.is_zero() || other.is_zero() {
            return self.ring.zero();
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(c, m);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term(c, m);
        }
        let mut acc: HashMap<Monomial, Rational> = HashMap::with_capacity(self.len() * other.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                *acc.entry(ma.mul(mb)).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        let ring = &self.ring;
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| ring.cmp(&b.0, &a.0));
        Poly { ring: ring.clone(), terms }
    }

    /// Multiply by `c * m`; order is preserved because term orders are multiplicative.
    pub fn mul_term(&self, c: &Rational, m: &Monomial) -> Poly {
        if c.is_zero() {
            return self.ring.zero();
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(tm, tc)| (tm.mul(m), tc * c)).collect(),
        }
    }

    /// `self - c * m * g`.
    pub fn sub_mul_term(&self, c: &Rational, m: &Monomial, g: &Poly) -> Poly {
        self.sub(&g.mul_term(c, m))
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut result = self.ring.one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Substitute `images[i]` for variable `i`; all images live in `target`.
    pub fn substitute(&self, target: &Ring, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.ring.nvars(), "one image per variable");
        let mut cache: HashMap<(usize, u32), Poly> = HashMap::new();
        let mut acc = target.zero();
        for (m, c) in &self.terms {
            let mut t = target.constant(c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = cache.entry((i, e)).or_insert_with(|| images[i].pow(e)).clone();
                t = t.mul(&p);
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Move into `target`, sending variable `i` to variable `index_map[i]`.
    pub fn map_vars(&self, target: &Ring, index_map: &[usize]) -> Poly {
        let n = target.nvars();
        Poly::from_terms(
            target,
            self.terms.iter().map(|(m, c)| {
                let mut e = vec![0u32; n];
                for (i, &k) in m.0.iter().enumerate() {
                    if k > 0 {
                        e[index_map[i]] += k;
                    }
                }
                (Monomial(e), c.clone())
            }),
        )
    }

    /// Move into a ring that contains every variable this polynomial uses (matched by name).
    pub fn to_ring(&self, target: &Ring) -> Result<Poly> {
        if self.ring == *target {
            return Ok(self.clone());
        }
        let used = self.support();
        let mut map = Vec::with_capacity(self.ring.nvars());
        for (i, v) in self.ring.vars().iter().enumerate() {
            match target.index_of(v) {
                Some(j) => map.push(j),
                None if !used[i] => map.push(usize::MAX),
                None => {
                    return Err(Error::RingMismatch(format!("variable `{v}` missing from {target}")))
                }
            }
        }
        let n = target.nvars();
        Ok(Poly::from_terms(
            target,
            self.terms.iter().map(|(m, c)| {
                let mut e = vec![0u32; n];
                for (i, &k) in m.0.iter().enumerate() {
                    if k > 0 {
                        e[map[i]] += k;
                    }
                }
                (Monomial(e), c.clone())
            }),
        ))
    }

    /// Evaluate the variables listed in `values` (index, value), keeping the rest.
    pub fn specialize(&self, values: &[(usize, Rational)]) -> Poly {
        let mut assign: Vec<Option<&Rational>> = vec![None; self.ring.nvars()];
        for (i, v) in values {
            assign[*i] = Some(v);
        }
        Poly::from_terms(
            &self.ring,
            self.terms.iter().map(|(m, c)| {
                let mut c = c.clone();
                let mut e = m.0.clone();
                for (i, a) in assign.iter().enumerate() {
                    if let Some(v) = a {
                        if e[i] > 0 {
                            c *= num_traits::pow::pow((*v).clone(), e[i] as usize);
                            e[i] = 0;
                        }
                    }
                }
                (Monomial(e), c)
            }),
        )
    }

    /// Split as a polynomial in `fiber` variables: fiber exponent pattern -> coefficient
    /// (a polynomial in the same ring not involving the fiber variables). Sorted by pattern.
    pub fn coefficients_in(&self, fiber: &[usize]) -> Vec<(Vec<u32>, Poly)> {
        let mut groups: HashMap<Vec<u32>, Vec<(Monomial, Rational)>> = HashMap::new();
        for (m, c) in &self.terms {
            let key: Vec<u32> = fiber.iter().map(|&i| m.0[i]).collect();
            let mut rest = m.0.clone();
            for &i in fiber {
                rest[i] = 0;
            }
            groups.entry(key).or_default().push((Monomial(rest), c.clone()));
        }
        let mut out: Vec<_> = groups
            .into_iter()
            .map(|(k, ts)| (k, Poly::from_terms(&self.ring, ts)))
            .collect();
        out.sort_by(|a, b| b.0.cmp(&a.0));
        out
    }

    /// Exact division; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let dl = d.lm()?;
        let dc = d.lc()?.clone();
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.terms.first().cloned() {
            if !dl.divides(&m) {
                return None;
            }
            let qm = m.div(dl);
            let qc = &c / &dc;
            rem = rem.sub_mul_term(&qc, &qm, d);
            quot.push((qm, qc));
        }
        Some(Poly::from_terms(&self.ring, quot))
    }
}

fn fmt_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let vars = self.ring.vars();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut parts: Vec<String> = Vec::new();
            if !a.is_one() || m.is_one() {
                parts.push(fmt_rational(&a));
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => parts.push(vars[i].clone()),
                    _ => parts.push(format!("{}^{}", vars[i], e)),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl std::ops::Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        Poly::add(self, rhs)
    }
}

impl std::ops::Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        Poly::sub(self, rhs)
    }
}

impl std::ops::Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        Poly::mul(self, rhs)
    }
}

impl std::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_breaks_degree_ties_on_last_variable() {
        let o = TermOrder::Grevlex;
        // x*z < y^2 in grevlex with x > y > z
        assert_eq!(o.cmp(&[1, 0, 1], &[0, 2, 0]), Ordering::Less);
        assert_eq!(TermOrder::Lex.cmp(&[1, 0, 1], &[0, 2, 0]), Ordering::Greater);
        assert_eq!(o.cmp(&[0, 0, 2], &[1, 0, 0]), Ordering::Greater);
    }

    #[test]
    fn block_order_eliminates_first_block() {
        let o = TermOrder::Block(1);
        assert_eq!(o.cmp(&[1, 0, 0], &[0, 5, 5]), Ordering::Greater);
        assert_eq!(o.cmp(&[0, 1, 1], &[0, 2, 0]), Ordering::Less);
    }

    #[test]
    fn arithmetic_examples() {
        let r = Ring::grevlex(&["x", "y"]);
        let a = r.p("x + y");
        let b = r.p("x - y");
        assert_eq!(poly_arith(&a, &b, ArithOp::Add).unwrap(), r.p("2*x"));
        assert_eq!(poly_arith(&a, &b, ArithOp::Mul).unwrap(), r.p("x^2 - y^2"));
        assert!(poly_arith(&a, &r.zero(), ArithOp::Mul).unwrap().is_zero());
        let other = Ring::grevlex(&["x", "z"]);
        assert!(poly_arith(&a, &other.p("x"), ArithOp::Add).is_err());
    }

    #[test]
    fn display_round_trips() {
        let r = Ring::grevlex(&["x", "y", "z"]);
        let p = r.p("3/2*x^2*y - z + 1");
        assert_eq!(p.to_string(), "3/2*x^2*y - z + 1");
        assert_eq!(r.p(&p.to_string()), p);
        assert_eq!(r.p("-x").to_string(), "-x");
        assert_eq!(r.zero().to_string(), "0");
        assert_eq!(r.p("-1/3").to_string(), "-1/3");
    }

    #[test]
    fn exact_division() {
        let r = Ring::grevlex(&["x", "y"]);
        let f = r.p("x^2 - y^2");
        assert_eq!(f.div_exact(&r.p("x - y")).unwrap(), r.p("x + y"));
        assert!(f.div_exact(&r.p("x")).is_none());
    }

    #[test]
    fn substitution_and_coefficients() {
        let r = Ring::grevlex(&["x", "y"]);
        let t = Ring::grevlex(&["t"]);
        let img = [t.p("t^2"), t.p("t^3")];
        assert!(r.p("y^2 - x^3").substitute(&t, &img).is_zero());
        let f = r.p("x*y^2 + 3*y^2 - x");
        let cs = f.coefficients_in(&[1]);
        assert_eq!(cs, vec![(vec![2], r.p("x + 3")), (vec![0], r.p("-x"))]);
    }
}
