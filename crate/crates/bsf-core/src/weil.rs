//! Finite free algebras over the rationals and Weil restriction along them.
//!
//! A scheme over `B` is presented by polynomials in a ring holding its own variables
//! plus one variable per non-unit basis element `e2..en`; products of those variables
//! are evaluated through the multiplication table.

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::poly::{fresh_name, rat, Monomial, Poly, Rational, Ring};
use crate::scheme::{AffineChart, SchemeMap};

/// Commutative associative unital algebra with basis `e1 = 1, e2, .., en`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteAlgebra {
    pub name: String,
    pub dim: usize,
    /// `table[i][j]` are the coordinates of `e_{i+1} e_{j+1}`.
    #[serde(skip)]
    table: Vec<Vec<Vec<Rational>>>,
}

fn unit_vec(n: usize, k: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[k] = Rational::one();
    v
}

impl FiniteAlgebra {
    /// Build from the products of non-unit basis elements, 1-based indices `(i, j)`
    /// with `i, j >= 2`. Missing products are zero; `e1` acts as the identity.
    pub fn new(name: impl Into<String>, dim: usize, products: &[(usize, usize, Vec<Rational>)]) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("algebra dimension must be positive"));
        }
        let mut table = vec![vec![vec![Rational::zero(); dim]; dim]; dim];
        for (j, row) in table[0].iter_mut().enumerate() {
            *row = unit_vec(dim, j);
        }
        for i in 1..dim {
            table[i][0] = unit_vec(dim, i);
        }
        let mut given: HashMap<(usize, usize), Vec<Rational>> = HashMap::new();
        for (i, j, v) in products {
            let (i, j) = (*i, *j);
            if i < 2 || j < 2 || i > dim || j > dim {
                return Err(Error::invalid(format!("product e{i}*e{j} outside basis e2..e{dim}")));
            }
            if v.len() != dim {
                return Err(Error::invalid(format!("product e{i}*e{j} needs {dim} coordinates")));
            }
            for key in [(i, j), (j, i)] {
                if let Some(prev) = given.get(&key) {
                    if prev != v {
                        return Err(Error::invalid(format!("inconsistent algebra table: e{i}*e{j} given twice")));
                    }
                }
            }
            given.insert((i, j), v.clone());
            table[i - 1][j - 1] = v.clone();
            table[j - 1][i - 1] = v.clone();
        }
        FiniteAlgebra::from_table(name, table)
    }

    pub fn from_table(name: impl Into<String>, table: Vec<Vec<Vec<Rational>>>) -> Result<Self> {
        let a = FiniteAlgebra { name: name.into(), dim: table.len(), table };
        a.validate()?;
        Ok(a)
    }

    fn validate(&self) -> Result<()> {
        let n = self.dim;
        if self.table.iter().any(|r| r.len() != n || r.iter().any(|v| v.len() != n)) {
            return Err(Error::invalid("algebra table has wrong shape"));
        }
        for j in 0..n {
            if self.table[0][j] != unit_vec(n, j) || self.table[j][0] != unit_vec(n, j) {
                return Err(Error::invalid("inconsistent algebra table: e1 is not the identity"));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if self.table[i][j] != self.table[j][i] {
                    return Err(Error::invalid(format!("inconsistent algebra table: e{}*e{} not commutative", i + 1, j + 1)));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let left = self.mul_q(&self.table[i][j], &unit_vec(n, k));
                    let right = self.mul_q(&unit_vec(n, i), &self.table[j][k]);
                    if left != right {
                        return Err(Error::invalid(format!(
                            "inconsistent algebra table: (e{0}*e{1})*e{2} != e{0}*(e{1}*e{2})",
                            i + 1,
                            j + 1,
                            k + 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn rationals() -> Self {
        FiniteAlgebra::new("QQ", 1, &[]).unwrap()
    }

    /// `Q[e]/(e^2)`.
    pub fn dual_numbers() -> Self {
        FiniteAlgebra::new("QQ_eps", 2, &[]).unwrap()
    }

    /// `Q × Q` with `e2` the idempotent `(0, 1)`.
    pub fn split_pair() -> Self {
        FiniteAlgebra::new("QQxQQ", 2, &[(2, 2, vec![rat(0), rat(1)])]).unwrap()
    }

    /// `Q[u]/(u^2 - c)` with basis `1, u`.
    pub fn quadratic(name: &str, c: Rational) -> Self {
        FiniteAlgebra::new(name, 2, &[(2, 2, vec![c, rat(0)])]).unwrap()
    }

    pub fn table(&self) -> &[Vec<Vec<Rational>>] {
        &self.table
    }

    /// `e1 .. en`.
    pub fn basis_names(&self) -> Vec<String> {
        (1..=self.dim).map(|i| format!("e{i}")).collect()
    }

    /// Default variable names for the non-unit basis elements.
    pub fn default_vars(&self) -> Vec<String> {
        (2..=self.dim).map(|i| format!("e{i}")).collect()
    }

    /// Explicit nonzero products `(i, j, coords)` with `2 <= i <= j`, for printing.
    pub fn products(&self) -> Vec<(usize, usize, Vec<Rational>)> {
        let mut out = Vec::new();
        for i in 1..self.dim {
            for j in i..self.dim {
                if self.table[i][j].iter().any(|c| !c.is_zero()) {
                    out.push((i + 1, j + 1, self.table[i][j].clone()));
                }
            }
        }
        out
    }

    pub fn mul_q(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let n = self.dim;
        let mut out = vec![Rational::zero(); n];
        for i in 0..n {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if b[j].is_zero() {
                    continue;
                }
                let ab = &a[i] * &b[j];
                for (k, o) in out.iter_mut().enumerate() {
                    let t = &self.table[i][j][k];
                    if !t.is_zero() {
                        *o += &ab * t;
                    }
                }
            }
        }
        out
    }

    /// Product of elements with polynomial coordinates.
    pub fn mul(&self, a: &[Poly], b: &[Poly]) -> Vec<Poly> {
        let n = self.dim;
        let ring = a[0].ring().clone();
        let mut out = vec![ring.zero(); n];
        for i in 0..n {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if b[j].is_zero() {
                    continue;
                }
                let ab = a[i].mul(&b[j]);
                for (k, o) in out.iter_mut().enumerate() {
                    let t = &self.table[i][j][k];
                    if !t.is_zero() {
                        *o = o.add(&ab.scale(t));
                    }
                }
            }
        }
        out
    }

    fn e_power_vector(&self, exps: &[u32]) -> Vec<Rational> {
        let mut v = unit_vec(self.dim, 0);
        for (k, &e) in exps.iter().enumerate() {
            for _ in 0..e {
                v = self.mul_q(&v, &unit_vec(self.dim, k + 1));
            }
        }
        v
    }

    /// Coordinates of `f` (a polynomial whose `e` variables sit at `e_idx`, one per
    /// `e2..en`); each coordinate is returned in the same ring, free of `e` variables.
    pub fn coordinates(&self, f: &Poly, e_idx: &[usize]) -> Vec<Poly> {
        assert_eq!(e_idx.len(), self.dim - 1);
        let ring = f.ring();
        let mut parts: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); self.dim];
        let mut cache: HashMap<Vec<u32>, Vec<Rational>> = HashMap::new();
        for (m, c) in f.terms() {
            let key: Vec<u32> = e_idx.iter().map(|&i| m.0[i]).collect();
            let vec = cache.entry(key.clone()).or_insert_with(|| self.e_power_vector(&key)).clone();
            let mut rest = m.0.clone();
            for &i in e_idx {
                rest[i] = 0;
            }
            for (k, coef) in vec.iter().enumerate() {
                if !coef.is_zero() {
                    parts[k].push((Monomial(rest.clone()), c * coef));
                }
            }
        }
        parts.into_iter().map(|t| Poly::from_terms(ring, t)).collect()
    }

    /// Table relations `e_i e_j - sum c_k e_k` in a ring whose `e` variables sit at `e_idx`.
    pub fn relations(&self, ring: &Ring, e_idx: &[usize]) -> Vec<Poly> {
        let basis = |k: usize| if k == 0 { ring.one() } else { ring.var(e_idx[k - 1]) };
        let mut out = Vec::new();
        for i in 1..self.dim {
            for j in i..self.dim {
                let mut rhs = ring.zero();
                for (k, c) in self.table[i][j].iter().enumerate() {
                    rhs = rhs.add(&basis(k).scale(c));
                }
                out.push(basis(i).mul(&basis(j)).sub(&rhs));
            }
        }
        out
    }

    /// `self ⊗ other` with basis `e_i ⊗ f_j` in row-major order.
    pub fn tensor(&self, other: &FiniteAlgebra) -> FiniteAlgebra {
        let (n, m) = (self.dim, other.dim);
        let mut table = vec![vec![vec![Rational::zero(); n * m]; n * m]; n * m];
        for a in 0..n * m {
            for b in 0..n * m {
                let (i1, j1, i2, j2) = (a / m, a % m, b / m, b % m);
                for k in 0..n {
                    for l in 0..m {
                        table[a][b][k * m + l] = &self.table[i1][i2][k] * &other.table[j1][j2][l];
                    }
                }
            }
        }
        FiniteAlgebra { name: format!("{}_t_{}", self.name, other.name), dim: n * m, table }
    }
}

/// Equations over `B`: a ring holding the scheme variables and the algebra variables.
#[derive(Clone, Debug)]
pub struct OverAlgebra {
    pub ring: Ring,
    /// Positions of `e2..en` in `ring`.
    pub e_idx: Vec<usize>,
    pub algebra: FiniteAlgebra,
}

impl OverAlgebra {
    /// Append the algebra variables (renamed if they clash) to `base`.
    pub fn extend(base: &Ring, algebra: &FiniteAlgebra) -> Result<OverAlgebra> {
        let mut names = base.vars().to_vec();
        let mut e_idx = Vec::new();
        for e in algebra.default_vars() {
            let n = fresh_name(&names, &e);
            e_idx.push(names.len());
            names.push(n);
        }
        let ring = Ring::new(names, base.order())?;
        Ok(OverAlgebra { ring, e_idx, algebra: algebra.clone() })
    }

    /// Use an existing ring whose variables include the named algebra variables.
    pub fn within(ring: &Ring, e_names: &[String], algebra: &FiniteAlgebra) -> Result<OverAlgebra> {
        if e_names.len() + 1 != algebra.dim {
            return Err(Error::invalid("wrong number of algebra variables"));
        }
        let e_idx = crate::ideal::indices_of(ring, e_names)?;
        Ok(OverAlgebra { ring: ring.clone(), e_idx, algebra: algebra.clone() })
    }

    pub fn scheme_vars(&self) -> Vec<usize> {
        (0..self.ring.nvars()).filter(|i| !self.e_idx.contains(i)).collect()
    }

    pub fn e_names(&self) -> Vec<String> {
        self.e_idx.iter().map(|&i| self.ring.vars()[i].clone()).collect()
    }

    pub fn relations(&self) -> Vec<Poly> {
        self.algebra.relations(&self.ring, &self.e_idx)
    }

    pub fn coordinates(&self, f: &Poly) -> Vec<Poly> {
        self.algebra.coordinates(f, &self.e_idx)
    }

    /// Basis element `e_{k+1}` as a polynomial.
    pub fn basis(&self, k: usize) -> Poly {
        if k == 0 {
            self.ring.one()
        } else {
            self.ring.var(self.e_idx[k - 1])
        }
    }
}

/// Weil restriction of a scheme over `B`.
#[derive(Clone, Debug)]
pub struct Restriction {
    pub original: OverAlgebra,
    pub equations: Vec<Poly>,
    pub restricted: AffineChart,
    /// For each scheme variable of the original (in ring order), the indices of its
    /// coordinates in the restricted ring.
    pub coordinate_vars: Vec<(String, Vec<usize>)>,
}

impl Restriction {
    /// Counit data: each original scheme variable as `sum_k x_k e_k`, written in the ring
    /// of the restricted variables plus the algebra variables.
    pub fn counit(&self) -> Result<(OverAlgebra, Vec<Poly>)> {
        let over = OverAlgebra::extend(self.restricted.ring(), &self.original.algebra)?;
        let images = self
            .coordinate_vars
            .iter()
            .map(|(_, idx)| {
                idx.iter().enumerate().fold(over.ring.zero(), |acc, (k, &i)| acc.add(&over.ring.var(i).mul(&over.basis(k))))
            })
            .collect();
        Ok((over, images))
    }

    pub fn coordinate_names(&self, var: &str) -> Option<Vec<String>> {
        self.coordinate_vars
            .iter()
            .find(|(v, _)| v == var)
            .map(|(_, idx)| idx.iter().map(|&i| self.restricted.ring().vars()[i].clone()).collect())
    }
}

/// Expand `f` over `B` after substituting each scheme variable by its coordinate sum.
fn expand(over: &OverAlgebra, f: &Poly, target: &Ring, coords: &[Vec<Poly>]) -> Vec<Poly> {
    let alg = &over.algebra;
    let n = alg.dim;
    let svars = over.scheme_vars();
    let mut pow_cache: HashMap<(usize, u32), Vec<Poly>> = HashMap::new();
    let mut acc = vec![target.zero(); n];
    for (m, c) in f.terms() {
        let e_exps: Vec<u32> = over.e_idx.iter().map(|&i| m.0[i]).collect();
        let ev = alg.e_power_vector(&e_exps);
        let mut term: Vec<Poly> = ev.iter().map(|q| target.constant(q * c)).collect();
        for (slot, &v) in svars.iter().enumerate() {
            let e = m.0[v];
            if e == 0 {
                continue;
            }
            let p = pow_cache
                .entry((slot, e))
                .or_insert_with(|| {
                    let mut r: Vec<Poly> = (0..n).map(|k| if k == 0 { target.one() } else { target.zero() }).collect();
                    for _ in 0..e {
                        r = alg.mul(&r, &coords[slot]);
                    }
                    r
                })
                .clone();
            term = alg.mul(&term, &p);
        }
        for k in 0..n {
            acc[k] = acc[k].add(&term[k]);
        }
    }
    acc
}

fn restricted_names(over: &OverAlgebra) -> Vec<Vec<String>> {
    let n = over.algebra.dim;
    let mut taken: Vec<String> = Vec::new();
    over.scheme_vars()
        .iter()
        .map(|&v| {
            let base = &over.ring.vars()[v];
            (0..n)
                .map(|k| {
                    let want = if n == 1 { base.clone() } else { format!("{base}_{k}") };
                    let name = fresh_name(&taken, &want);
                    taken.push(name.clone());
                    name
                })
                .collect()
        })
        .collect()
}

/// Weil restriction: basis coordinates of the equations after `x = sum_k x_k e_k`.
pub fn restrict_scheme(over: &OverAlgebra, equations: &[Poly], name: &str) -> Result<Restriction> {
    for f in equations {
        f.same_ring(&over.ring.zero())?;
    }
    let names = restricted_names(over);
    let ring = Ring::new(names.iter().flatten().cloned(), over.ring.order())?;
    let n = over.algebra.dim;
    let coords: Vec<Vec<Poly>> = (0..names.len())
        .map(|s| (0..n).map(|k| ring.var(s * n + k)).collect())
        .collect();
    let mut gens = Vec::new();
    for f in equations {
        gens.extend(expand(over, f, &ring, &coords));
    }
    let restricted = AffineChart::new(name, Ideal::new(&ring, gens)?);
    let coordinate_vars = over
        .scheme_vars()
        .iter()
        .enumerate()
        .map(|(s, &v)| (over.ring.vars()[v].clone(), (s * n..(s + 1) * n).collect()))
        .collect();
    Ok(Restriction { original: over.clone(), equations: equations.to_vec(), restricted, coordinate_vars })
}

/// Restriction of a map over `B`: `images` give each target scheme variable as a
/// polynomial over `B` in the source scheme variables.
pub fn restrict_map(source: &Restriction, target: &Restriction, images: &[Poly]) -> Result<SchemeMap> {
    let sr = source.restricted.ring();
    let n = source.original.algebra.dim;
    if target.original.algebra != source.original.algebra {
        return Err(Error::invalid("maps must be over the same algebra"));
    }
    if images.len() != target.coordinate_vars.len() {
        return Err(Error::invalid("one image per target variable required"));
    }
    let coords: Vec<Vec<Poly>> = source
        .coordinate_vars
        .iter()
        .map(|(_, idx)| idx.iter().map(|&i| sr.var(i)).collect())
        .collect();
    let mut out = vec![sr.zero(); target.restricted.ring().nvars()];
    for ((_, idx), img) in target.coordinate_vars.iter().zip(images) {
        let e = expand(&source.original, img, sr, &coords);
        for k in 0..n {
            out[idx[k]] = e[k].clone();
        }
    }
    SchemeMap::new(&source.restricted, &target.restricted, out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AdjunctionVerdict {
    Bijection,
    Mismatch,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct AdjunctionReport {
    pub verdict: AdjunctionVerdict,
    pub candidates: u64,
    pub restricted_points: usize,
    pub algebra_points: usize,
}

/// Compare `T`-points of the restriction with `B`-maps `T × B -> X` over a grid of
/// candidate coordinates (`T` must be finite over Q). Exceeding `budget` candidates is
/// inconclusive.
pub fn adjunction_check(res: &Restriction, t: &AffineChart, grid: &[Rational], budget: u64) -> Result<AdjunctionReport> {
    let tr = t.ring();
    let basis = standard_basis(t)?;
    let over = &res.original;
    let n = over.algebra.dim;
    let m = res.coordinate_vars.len();
    let slots = (n * m * basis.len()) as u32;
    let total = (grid.len() as u64).checked_pow(slots).unwrap_or(u64::MAX);
    if total > budget {
        return Ok(AdjunctionReport { verdict: AdjunctionVerdict::Inconclusive, candidates: total, restricted_points: 0, algebra_points: 0 });
    }
    let mut digits = vec![0usize; slots as usize];
    let (mut rp, mut ap) = (0usize, 0usize);
    let mut mismatch = false;
    let mut svars_order = vec![0usize; n * m];
    for (s, (_, idx)) in res.coordinate_vars.iter().enumerate() {
        for k in 0..n {
            svars_order[s * n + k] = idx[k];
        }
    }
    for _ in 0..total {
        // Element of A_T for each restricted coordinate.
        let mut vals: Vec<Poly> = Vec::with_capacity(n * m);
        for c in 0..n * m {
            let mut v = tr.zero();
            for (b, mono) in basis.iter().enumerate() {
                v = v.add(&mono.scale(&grid[digits[c * basis.len() + b]]));
            }
            vals.push(v);
        }
        let mut images = vec![tr.zero(); res.restricted.ring().nvars()];
        for (c, &i) in svars_order.iter().enumerate() {
            images[i] = vals[c].clone();
        }
        let mut on_restricted = true;
        for g in res.restricted.modulus().gens() {
            if !t.modulus().contains(&g.substitute(tr, &images))? {
                on_restricted = false;
                break;
            }
        }
        let mut on_original = true;
        let coords: Vec<Vec<Poly>> = (0..m).map(|s| vals[s * n..(s + 1) * n].to_vec()).collect();
        for f in &res.equations {
            let e = expand(over, f, tr, &coords);
            for c in &e {
                if !t.modulus().contains(c)? {
                    on_original = false;
                    break;
                }
            }
            if !on_original {
                break;
            }
        }
        rp += on_restricted as usize;
        ap += on_original as usize;
        mismatch |= on_restricted != on_original;
        for d in digits.iter_mut() {
            *d += 1;
            if *d < grid.len() {
                break;
            }
            *d = 0;
        }
    }
    let verdict = if mismatch { AdjunctionVerdict::Mismatch } else { AdjunctionVerdict::Bijection };
    Ok(AdjunctionReport { verdict, candidates: total, restricted_points: rp, algebra_points: ap })
}

/// Standard monomials of a zero-dimensional quotient (empty for the zero ring).
pub fn standard_basis(t: &AffineChart) -> Result<Vec<Poly>> {
    let ring = t.ring();
    let gb = t.modulus().gb()?;
    if crate::groebner::is_unit_basis(gb) {
        return Ok(Vec::new());
    }
    let n = ring.nvars();
    let lms: Vec<&Monomial> = gb.iter().map(|g| g.lm().unwrap()).collect();
    for i in 0..n {
        if !lms.iter().any(|m| m.0.iter().enumerate().all(|(j, &e)| (j == i) == (e > 0))) {
            return Err(Error::math("not finite", format!("{} is not finite over Q", t.name)));
        }
    }
    let mut out = Vec::new();
    let mut frontier = vec![Monomial::one(n)];
    while let Some(m) = frontier.pop() {
        if lms.iter().any(|l| l.divides(&m)) || out.iter().any(|p: &Poly| p.lm() == Some(&m)) {
            continue;
        }
        out.push(ring.term(Rational::one(), m.clone()));
        for i in 0..n {
            frontier.push(m.mul(&Monomial::var(n, i)));
        }
    }
    out.sort_by(|a, b| ring.cmp(b.lm().unwrap(), a.lm().unwrap()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_validation() {
        assert!(FiniteAlgebra::dual_numbers().dim == 2);
        // e2*e2 = e3, e3*e3 = 1 forces e2^4 = 1 but e2*e3 = 0 breaks associativity.
        let bad = FiniteAlgebra::new("bad", 3, &[(2, 2, vec![rat(0), rat(0), rat(1)]), (3, 3, vec![rat(1), rat(0), rat(0)])]);
        assert!(bad.is_err());
        let bad = FiniteAlgebra::new("bad", 2, &[(2, 2, vec![rat(1)])]);
        assert!(bad.is_err());
    }

    #[test]
    fn dual_number_square_root() {
        let base = Ring::grevlex(&["x"]);
        let over = OverAlgebra::extend(&base, &FiniteAlgebra::dual_numbers()).unwrap();
        let f = over.ring.p("x^2 - 3 - 5*e2");
        let res = restrict_scheme(&over, &[f], "W").unwrap();
        let r = res.restricted.ring().clone();
        assert_eq!(r.vars(), &["x_0".to_string(), "x_1".to_string()][..]);
        let expect = Ideal::of(&r, &["x_0^2 - 3", "2*x_0*x_1 - 5"]);
        assert!(res.restricted.modulus().equals(&expect).unwrap());
        assert_eq!(r.nvars(), 2 * base.nvars());
    }

    #[test]
    fn rationals_restrict_to_identity() {
        let base = Ring::grevlex(&["x", "y"]);
        let over = OverAlgebra::extend(&base, &FiniteAlgebra::rationals()).unwrap();
        let f = over.ring.p("x*y - 1");
        let res = restrict_scheme(&over, std::slice::from_ref(&f), "W").unwrap();
        assert_eq!(res.restricted.ring().vars(), base.vars());
        assert!(res.restricted.modulus().equals(&Ideal::new(&base, vec![f.to_ring(&base).unwrap()]).unwrap()).unwrap());
    }

    #[test]
    fn split_algebra_gives_two_copies() {
        let base = Ring::grevlex(&["x"]);
        let over = OverAlgebra::extend(&base, &FiniteAlgebra::split_pair()).unwrap();
        let res = restrict_scheme(&over, &[over.ring.p("x^2 - 2")], "W").unwrap();
        let r = res.restricted.ring().clone();
        // Idempotent coordinates: first copy x_0, second copy x_0 + x_1.
        let expect = Ideal::of(&r, &["x_0^2 - 2", "(x_0 + x_1)^2 - 2"]);
        assert!(res.restricted.modulus().equals(&expect).unwrap());
    }

    #[test]
    fn map_restriction() {
        let base = Ring::grevlex(&["x"]);
        let b = FiniteAlgebra::dual_numbers();
        let over = OverAlgebra::extend(&base, &b).unwrap();
        let line = restrict_scheme(&over, &[], "L").unwrap();
        let sq = restrict_map(&line, &line, &[over.ring.p("x^2")]).unwrap();
        let r = line.restricted.ring().clone();
        assert_eq!(sq.images, vec![r.p("x_0^2"), r.p("2*x_0*x_1")]);
        let id = restrict_map(&line, &line, &[over.ring.p("x")]).unwrap();
        assert_eq!(id.images, vec![r.p("x_0"), r.p("x_1")]);
        let c = restrict_map(&line, &line, &[over.ring.p("7")]).unwrap();
        assert_eq!(c.images, vec![r.p("7"), r.zero()]);
        // Functoriality on a composite: (x^2) after (x + e2) equals (x + e2)^2.
        let shift = restrict_map(&line, &line, &[over.ring.p("x + e2")]).unwrap();
        let comp = shift.then(&sq).unwrap();
        let direct = restrict_map(&line, &line, &[over.ring.p("(x + e2)^2")]).unwrap();
        assert_eq!(comp.images, direct.images);
    }

    #[test]
    fn adjunction_examples() {
        let base = Ring::grevlex(&["x"]);
        let over = OverAlgebra::extend(&base, &FiniteAlgebra::dual_numbers()).unwrap();
        let res = restrict_scheme(&over, &[over.ring.p("x^2 - 1")], "W").unwrap();
        let point = AffineChart::affine_space("pt", &Ring::new(Vec::<String>::new(), crate::TermOrder::Grevlex).unwrap());
        let grid: Vec<Rational> = (-2..=2).map(rat).collect();
        let rep = adjunction_check(&res, &point, &grid, 10_000).unwrap();
        assert_eq!(rep.verdict, AdjunctionVerdict::Bijection);
        assert_eq!(rep.restricted_points, 2);

        let empty = AffineChart::new("empty", Ideal::unit(point.ring()));
        let rep = adjunction_check(&res, &empty, &grid, 10_000).unwrap();
        assert_eq!(rep.verdict, AdjunctionVerdict::Bijection);

        let zero = restrict_scheme(&over, &[over.ring.p("x")], "Z").unwrap();
        let rep = adjunction_check(&zero, &point, &grid, 10_000).unwrap();
        assert_eq!((rep.restricted_points, rep.algebra_points), (1, 1));

        let tiny = adjunction_check(&res, &point, &grid, 3).unwrap();
        assert_eq!(tiny.verdict, AdjunctionVerdict::Inconclusive);
    }
}
