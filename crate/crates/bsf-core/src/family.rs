//! Loci over a base: where a closed subscheme fills the fibres, where a map is constant
//! along them, and the stratification of the base by the length of finite fibres over a
//! line or the projective line.

use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{groebner, is_unit_basis};
use crate::ideal::{
    coefficient_ideal_with, eliminate, is_principal_cartier, radical_contains, restricted_order, Ideal, Principality,
};
use crate::poly::{fresh_name, Poly, Rational, Ring, TermOrder};
use crate::scheme::{AffineChart, ClosedSub, SchemeMap};
use crate::weil::{FiniteAlgebra, OverAlgebra};

/// How the ambient splits as base × fibre.
#[derive(Clone, Debug)]
pub enum Fibre {
    /// Free polynomial fibre variables.
    Free(Vec<String>),
    /// Coordinates of a finite free algebra, presented by its table relations.
    Algebra { vars: Vec<String>, algebra: FiniteAlgebra },
}

impl Fibre {
    pub fn vars(&self) -> &[String] {
        match self {
            Fibre::Free(v) | Fibre::Algebra { vars: v, .. } => v,
        }
    }

    pub fn relations(&self, ring: &Ring) -> Result<Vec<Poly>> {
        match self {
            Fibre::Free(_) => Ok(Vec::new()),
            Fibre::Algebra { vars, algebra } => Ok(OverAlgebra::within(ring, vars, algebra)?.relations()),
        }
    }
}

/// Base chart of a split ambient; errors unless the ambient modulus is the extension of
/// its contraction plus the fibre relations.
pub fn split_base(ambient: &AffineChart, fibre_vars: &[String], relations: &[Poly]) -> Result<AffineChart> {
    let ring = ambient.ring();
    crate::ideal::indices_of(ring, fibre_vars)?;
    let base_vars: Vec<String> = ring.vars().iter().filter(|v| !fibre_vars.contains(v)).cloned().collect();
    let base_ring = Ring::new(base_vars.clone(), restricted_order(ring.order()))?;
    let contracted = eliminate(ambient.modulus(), &base_vars)?;
    let base_mod = Ideal::new(&base_ring, contracted.gens().iter().map(|g| g.to_ring(&base_ring)).collect::<Result<_>>()?)?;
    let rebuilt = base_mod.extend_to(ring)?.with(relations)?;
    if !rebuilt.equals(ambient.modulus())? {
        return Err(Error::math(
            "split violated",
            format!("modulus of {} is not base relations plus fibre relations", ambient.name),
        ));
    }
    Ok(AffineChart::new(format!("{}_base", ambient.name), base_mod))
}

#[derive(Clone, Debug)]
pub struct IsoLocus {
    pub base: AffineChart,
    pub locus: ClosedSub,
    /// Coefficient ideal before adding the base modulus.
    pub certificate: Ideal,
}

fn iso_locus_with(z: &ClosedSub, fibre_vars: &[String], relations: &[Poly]) -> Result<IsoLocus> {
    let base = split_base(&z.ambient, fibre_vars, relations)?;
    let cert = coefficient_ideal_with(&z.ideal, fibre_vars, relations)?;
    let cert = Ideal::new(base.ring(), cert.gens().iter().map(|g| g.to_ring(base.ring())).collect::<Result<_>>()?)?;
    let locus = ClosedSub::new(&base, cert.gens().to_vec())?;
    Ok(IsoLocus { base, locus, certificate: cert })
}

/// Largest closed subscheme of the base over which `z` is the whole ambient.
pub fn iso_locus(z: &ClosedSub, fibre: &Fibre) -> Result<IsoLocus> {
    let rel = fibre.relations(z.ambient.ring())?;
    iso_locus_with(z, fibre.vars(), &rel)
}

/// `z` restricted over the base ideal `w` equals the ambient restricted over `w`.
pub fn fills_fibres_over(z: &ClosedSub, w: &Ideal) -> Result<bool> {
    let ring = z.ambient.ring();
    let ext = w.extend_to(ring)?;
    z.ideal.sum(&ext)?.equals(&z.ambient.modulus().sum(&ext)?)
}

#[derive(Clone, Debug)]
pub struct ConstfyLocus {
    pub base: AffineChart,
    pub locus: ClosedSub,
    /// Equalizer of the two pullbacks inside the doubled ambient.
    pub equalizer: ClosedSub,
    /// The map on the locus through which `f` factors; absent when the locus is empty.
    pub descended_map: Option<SchemeMap>,
}

/// Ambient `X ×_base X` with the fibre variables doubled (second copy appended, `_q`).
pub fn doubled_ambient(x: &AffineChart, fibre: &Fibre) -> Result<(AffineChart, Vec<String>, Vec<Poly>)> {
    let ring = x.ring();
    let mut names = ring.vars().to_vec();
    let mut primed = Vec::new();
    for v in fibre.vars() {
        let n = fresh_name(&names, &format!("{v}_q"));
        names.push(n.clone());
        primed.push(n);
    }
    let ring2 = Ring::new(names, ring.order())?;
    let n = ring.nvars();
    let first: Vec<Poly> = (0..n).map(|i| ring2.var(i)).collect();
    let fidx = crate::ideal::indices_of(ring, fibre.vars())?;
    let mut second = first.clone();
    for (k, &i) in fidx.iter().enumerate() {
        second[i] = ring2.var(n + k);
    }
    let mut gens = Vec::new();
    for g in x.modulus().gens() {
        gens.push(g.substitute(&ring2, &first));
        gens.push(g.substitute(&ring2, &second));
    }
    let doubled = AffineChart::new(format!("{}_x_{}", x.name, x.name), Ideal::new(&ring2, gens)?);
    Ok((doubled, primed, second))
}

/// Largest closed subscheme of the base over which `f` is constant along the fibres.
pub fn constfy(f: &SchemeMap, fibre: &Fibre) -> Result<ConstfyLocus> {
    let x = &f.source;
    let (doubled, primed, second) = doubled_ambient(x, fibre)?;
    let ring2 = doubled.ring().clone();
    let first: Vec<Poly> = (0..x.ring().nvars()).map(|i| ring2.var(i)).collect();
    let eq: Vec<Poly> = f
        .images
        .iter()
        .map(|g| g.substitute(&ring2, &first).sub(&g.substitute(&ring2, &second)))
        .collect();
    let equalizer = ClosedSub::new(&doubled, eq)?;
    let mut fvars: Vec<String> = fibre.vars().to_vec();
    fvars.extend(primed.iter().cloned());
    let mut rel = fibre.relations(x.ring())?.iter().map(|r| r.substitute(&ring2, &first)).collect::<Vec<_>>();
    rel.extend(fibre.relations(x.ring())?.iter().map(|r| r.substitute(&ring2, &second)));
    let iso = iso_locus_with(&equalizer, &fvars, &rel)?;
    let descended_map = if iso.locus.is_empty()? {
        None
    } else {
        let chart = iso.locus.as_chart(format!("{}_const", x.name));
        let images = f
            .images
            .iter()
            .map(|g| fibre_constant_part(g, fibre)?.to_ring(chart.ring()))
            .collect::<Result<Vec<_>>>()?;
        Some(SchemeMap::new(&chart, &f.target, images)?)
    };
    Ok(ConstfyLocus { base: iso.base, locus: iso.locus, equalizer, descended_map })
}

/// Coefficient of the unit fibre monomial (after reduction by the fibre relations).
pub fn fibre_constant_part(g: &Poly, fibre: &Fibre) -> Result<Poly> {
    let ring = g.ring();
    match fibre {
        Fibre::Free(vars) => {
            let idx = crate::ideal::indices_of(ring, vars)?;
            let zeros: Vec<(usize, Rational)> = idx.iter().map(|&i| (i, Rational::zero())).collect();
            Ok(g.specialize(&zeros))
        }
        Fibre::Algebra { vars, algebra } => Ok(OverAlgebra::within(ring, vars, algebra)?.coordinates(g).remove(0)),
    }
}

/// The fibre direction of a stratification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FibreLine {
    /// `A^1` in the named variable.
    Affine(String),
    /// `P^1` with homogeneous coordinates `(u : v)`; generators must be homogeneous in them.
    Projective(String, String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StratumLabel {
    Empty,
    Length(u32),
    Full,
}

impl StratumLabel {
    fn from_len(d: u32) -> StratumLabel {
        if d == 0 {
            StratumLabel::Empty
        } else {
            StratumLabel::Length(d)
        }
    }

    fn plus(self, other: StratumLabel) -> Option<StratumLabel> {
        let len = |l: StratumLabel| match l {
            StratumLabel::Empty => Some(0),
            StratumLabel::Length(d) => Some(d),
            StratumLabel::Full => None,
        };
        Some(StratumLabel::from_len(len(self)? + len(other)?))
    }
}

impl fmt::Display for StratumLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StratumLabel::Empty => write!(f, "empty"),
            StratumLabel::Length(d) => write!(f, "{d}"),
            StratumLabel::Full => write!(f, "full"),
        }
    }
}

/// Locally closed piece `V(closed) \ V(frontier)` of the base.
#[derive(Clone, Debug)]
pub struct Stratum {
    pub label: StratumLabel,
    pub closed: Ideal,
    pub frontier: Ideal,
    /// The fibre ideal is an effective Cartier divisor over the whole piece.
    pub cartier: bool,
    /// Local generators found, one per fibre chart and open cover member.
    pub generators: Vec<String>,
}

impl Stratum {
    pub fn contains_point(&self, point: &[Rational]) -> bool {
        let at = |p: &Poly| eval(p, point).is_zero();
        self.closed.gens().iter().all(at) && !self.frontier.gens().iter().all(at)
    }

    /// The open part is `V(closed) \ V(other)`, comparing frontiers up to radical.
    pub fn frontier_matches(&self, other: &Ideal) -> Result<bool> {
        let covers = |a: &Ideal, b: &Ideal| -> Result<bool> {
            let a = a.sum(&self.closed)?;
            for g in b.gens() {
                if !radical_contains(&a, g)? {
                    return Ok(false);
                }
            }
            Ok(true)
        };
        Ok(covers(&self.frontier, other)? && covers(other, &self.frontier)?)
    }
}

#[derive(Clone, Debug)]
pub struct StratumReport {
    pub base: AffineChart,
    pub fibre: FibreLine,
    pub strata: Vec<Stratum>,
    pub core: ClosedSub,
    /// A monic generator was supplied and checked.
    pub finite_certified: bool,
    pub notes: Vec<String>,
    charts: Vec<FibreChart>,
}

/// One affine chart of the fibre line: ideal in base vars + one fibre var (first).
#[derive(Clone, Debug)]
struct FibreChart {
    ring: Ring,
    gens: Vec<Poly>,
    /// Extra generator bounding the chart to a neighbourhood of the fibre origin.
    truncation: Option<Poly>,
}

const MAX_STRATA_NODES: usize = 4096;

fn eval(p: &Poly, point: &[Rational]) -> Rational {
    let vals: Vec<(usize, Rational)> = point.iter().cloned().enumerate().collect();
    p.specialize(&vals).constant_value().unwrap_or_else(Rational::zero)
}

impl FibreChart {
    fn base_map(&self, base: &Ring) -> Vec<usize> {
        // Chart variable k+1 is base variable k.
        (0..self.ring.nvars()).map(|p| p.saturating_sub(1)).collect::<Vec<_>>().into_iter().map(|p| p.min(base.nvars())).collect()
    }

    fn lift(&self, p: &Poly) -> Poly {
        let map: Vec<usize> = (1..self.ring.nvars()).collect();
        p.map_vars(&self.ring, &map)
    }

    fn lower(&self, p: &Poly, base: &Ring) -> Poly {
        p.map_vars(base, &self.base_map(base))
    }

    fn all_gens(&self) -> Vec<Poly> {
        self.gens.iter().cloned().chain(self.truncation.clone()).collect()
    }

    /// Stratify `V(start)` by the length of this chart's fibre (truncated if bounded).
    /// Pieces are `V(closed) \ V(frontier)`; each node of the search carries an open
    /// condition `D(f)` and branches on the leading coefficients of the fibre-variable
    /// basis elements, which specialize to a Groebner basis wherever none of them vanish.
    fn strata(&self, base: &Ring, start: &Ideal) -> Result<Vec<(StratumLabel, Ideal, Ideal)>> {
        let mut out = Vec::new();
        let mut stack = vec![(start.clone(), base.one())];
        let mut nodes = 0;
        while let Some((mut q, f)) = stack.pop() {
            nodes += 1;
            if nodes > MAX_STRATA_NODES {
                return Err(Error::math("not fiber-finite", "stratification did not terminate".to_string()));
            }
            if q.is_unit()? || radical_contains(&q, &f)? {
                continue;
            }
            let mut gens = self.all_gens();
            gens.extend(q.gens().iter().map(|g| self.lift(g)));
            let gb = groebner(&gens)?;
            if is_unit_basis(&gb) {
                out.push((StratumLabel::Empty, q.clone(), q.with(&[f])?));
                continue;
            }
            let (g1, g0): (Vec<Poly>, Vec<Poly>) = gb.into_iter().partition(|g| g.involves(0));
            let q1 = Ideal::new(base, g0.iter().map(|g| self.lower(g, base)).collect())?;
            if !q1.equals(&q)? {
                let frontier = q.sum(&q1.product(&Ideal::new(base, vec![f.clone()])?)?)?;
                if !frontier.gens().iter().all(|g| radical_contains(&q, g).unwrap_or(false)) {
                    out.push((StratumLabel::Empty, q.clone(), frontier));
                }
                q = q1;
                if q.is_unit()? || radical_contains(&q, &f)? {
                    continue;
                }
            }
            if g1.is_empty() {
                out.push((StratumLabel::Full, q.clone(), q.with(&[f])?));
                continue;
            }
            let mut lcs: Vec<Poly> = Vec::new();
            let mut d = u32::MAX;
            for g in &g1 {
                let lc = self.lower(&g.coefficients_in(&[0]).remove(0).1, base);
                if !lcs.contains(&lc) {
                    lcs.push(lc);
                }
                d = d.min(g.degree_in(0));
            }
            let fh = lcs.iter().fold(f.clone(), |acc, l| acc.mul(l));
            if !radical_contains(&q, &fh)? {
                out.push((StratumLabel::from_len(d), q.clone(), q.with(&[fh])?));
            }
            let mut prefix = f;
            for lc in lcs.into_iter().filter(|l| !l.is_constant()) {
                stack.push((q.with(std::slice::from_ref(&lc))?, prefix.clone()));
                prefix = prefix.mul(&lc);
            }
        }
        Ok(out)
    }

    /// Fibre length at a base point, by specializing and taking the univariate gcd.
    fn length_at(&self, point: &[Rational], at_origin_only: bool) -> Result<StratumLabel> {
        let vals: Vec<(usize, Rational)> = point.iter().cloned().enumerate().map(|(i, c)| (i + 1, c)).collect();
        let spec: Vec<Poly> = self.gens.iter().map(|g| g.specialize(&vals)).collect();
        let gb = groebner(&spec)?;
        if gb.is_empty() {
            return Ok(StratumLabel::Full);
        }
        if is_unit_basis(&gb) {
            return Ok(StratumLabel::Empty);
        }
        let g = &gb[0];
        let d = if at_origin_only {
            g.terms().iter().map(|(m, _)| m.0[0]).min().unwrap_or(0)
        } else {
            g.degree_in(0)
        };
        Ok(StratumLabel::from_len(d))
    }

    /// Pulled-back fibre ideal is Cartier over `V(closed) ∩ D(h)`.
    /// Returns the local generator when it is, `"1"` when the piece misses the fibre ideal.
    fn cartier_over(&self, closed: &Ideal, h: Option<&Poly>) -> Result<Option<String>> {
        let mut names = self.ring.vars().to_vec();
        let inv = fresh_name(&names, "s");
        names.push(inv);
        let ring = Ring::new(names, self.ring.order())?;
        let up: Vec<usize> = (0..self.ring.nvars()).collect();
        let mut modulus: Vec<Poly> = closed.gens().iter().map(|g| self.lift(g).map_vars(&ring, &up)).collect();
        if let Some(h) = h {
            let s = ring.var(self.ring.nvars());
            modulus.push(s.mul(&self.lift(h).map_vars(&ring, &up)).sub(&ring.one()));
        }
        let chart = AffineChart::new("piece", Ideal::new(&ring, modulus)?);
        if chart.is_empty()? {
            return Ok(Some("1".to_string()));
        }
        let fibre = Ideal::new(&ring, self.gens.iter().map(|g| g.map_vars(&ring, &up)).collect())?;
        Ok(match is_principal_cartier(&fibre, &chart.coords)? {
            Principality::Cartier(g) => Some(g.to_string()),
            Principality::Full => Some("1".to_string()),
            _ => None,
        })
    }
}

fn chart_ring(base: &Ring, fibre_var: &str) -> Result<Ring> {
    let name = if base.index_of(fibre_var).is_some() { fresh_name(base.vars(), fibre_var) } else { fibre_var.to_string() };
    Ring::new(std::iter::once(name).chain(base.vars().iter().cloned()), TermOrder::Block(1))
}

fn is_homogeneous_in(p: &Poly, a: usize, b: usize) -> Option<u32> {
    let mut deg = None;
    for (m, _) in p.terms() {
        let d = m.0[a] + m.0[b];
        if deg.is_some_and(|e| e != d) {
            return None;
        }
        deg = Some(d);
    }
    Some(deg.unwrap_or(0))
}

fn determinant(m: &[Vec<Poly>]) -> Poly {
    if m.len() == 1 {
        return m[0][0].clone();
    }
    let mut acc = m[0][0].ring().zero();
    for j in 0..m.len() {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> =
            m[1..].iter().map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, p)| p.clone()).collect()).collect();
        let t = m[0][j].mul(&determinant(&minor));
        acc = if j % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
    }
    acc
}

fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < r - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    go(0, n, r, &mut cur, &mut out);
    out
}

const MAX_MINORS: usize = 200_000;

/// Fitting ideals `Fitt_0 ..= Fitt_rows` of the cokernel of a matrix given by columns.
fn fitting_ideals(base: &AffineChart, rows: usize, cols: &[Vec<Poly>]) -> Result<Vec<Ideal>> {
    let mut out = Vec::new();
    for j in 0..=rows {
        let r = rows - j;
        if r == 0 {
            out.push(Ideal::unit(base.ring()));
            continue;
        }
        if r > cols.len() {
            out.push(base.modulus().clone());
            continue;
        }
        let row_sets = subsets(rows, r);
        let col_sets = subsets(cols.len(), r);
        if row_sets.len().saturating_mul(col_sets.len()) > MAX_MINORS {
            return Err(Error::math("not fiber-finite", format!("too many {r}-minors in the fibre presentation")));
        }
        let mut minors = Vec::new();
        for rs in &row_sets {
            for cs in &col_sets {
                let m: Vec<Vec<Poly>> = rs.iter().map(|&i| cs.iter().map(|&c| cols[c][i].clone()).collect()).collect();
                let d = base.coords.reduce(&determinant(&m))?;
                if !d.is_zero() && !minors.contains(&d) {
                    minors.push(d);
                }
            }
        }
        out.push(base.modulus().with(&minors)?);
    }
    Ok(out)
}

/// Presentation of the degree-`k` part of the fibre ring as a module over the base:
/// rows are the monomials `u^i v^(k-i)`, columns the degree-`k` multiples of generators.
fn graded_presentation(z: &ClosedSub, uv: (usize, usize), base: &AffineChart, k: u32) -> Result<Vec<Vec<Poly>>> {
    let br = base.ring();
    let ring = z.ambient.ring();
    let mut cols: Vec<Vec<Poly>> = Vec::new();
    for g in z.ideal.gens() {
        let Some(d) = is_homogeneous_in(g, uv.0, uv.1) else { continue };
        if d > k {
            continue;
        }
        for j in 0..=(k - d) {
            let shift = ring.var(uv.0).pow(j).mul(&ring.var(uv.1).pow(k - d - j));
            let prod = g.mul(&shift);
            let mut col = vec![br.zero(); k as usize + 1];
            for (pat, c) in prod.coefficients_in(&[uv.0, uv.1]) {
                col[pat[0] as usize] = base.coords.reduce(&c.to_ring(br)?)?;
            }
            if col.iter().any(|p| !p.is_zero()) && !cols.contains(&col) {
                cols.push(col);
            }
        }
    }
    Ok(cols)
}

/// Strata of a family in `X × P^1` cut out by Fitting ideals of two consecutive graded
/// pieces of the fibre ring, in a degree where every non-full fibre has reached its length.
fn fitting_strata(z: &ClosedSub, uv: (usize, usize), base: &AffineChart, top: u32) -> Result<Vec<(StratumLabel, Ideal, Ideal)>> {
    let m = (2 * top).saturating_sub(1).max(top).max(1);
    let fit_m = fitting_ideals(base, m as usize + 1, &graded_presentation(z, uv, base, m)?)?;
    let fit_n = fitting_ideals(base, m as usize + 2, &graded_presentation(z, uv, base, m + 1)?)?;
    let mut out = Vec::new();
    for l in 0..=m as usize {
        let closed = if l == 0 { base.modulus().clone() } else { fit_m[l - 1].sum(&fit_n[l - 1])? };
        if closed.is_unit()? {
            continue;
        }
        let frontier = closed.sum(&fit_m[l].product(&fit_n[l])?)?;
        if frontier.gens().iter().all(|g| radical_contains(&closed, g).unwrap_or(false)) {
            continue;
        }
        out.push((StratumLabel::from_len(l as u32), closed, frontier));
    }
    Ok(out)
}

/// Stratify the base by the length of the fibres of `z` over a line or projective line.
pub fn flattening_strata(z: &ClosedSub, fibre: &FibreLine, monic_witness: Option<&Poly>) -> Result<StratumReport> {
    let ring = z.ambient.ring();
    let fvars: Vec<String> = match fibre {
        FibreLine::Affine(a) => vec![a.clone()],
        FibreLine::Projective(u, v) => vec![u.clone(), v.clone()],
    };
    let fidx = crate::ideal::indices_of(ring, &fvars)?;
    let base = split_base(&z.ambient, &fvars, &[])?;
    let br = base.ring().clone();
    let base_pos: Vec<usize> = (0..ring.nvars()).filter(|i| !fidx.contains(i)).collect();

    // Move an ambient polynomial into a chart ring, sending fibre variables to `fib`.
    let to_chart = |p: &Poly, cr: &Ring, fib: &[Poly]| -> Poly {
        let mut images = vec![cr.zero(); ring.nvars()];
        for (k, &i) in base_pos.iter().enumerate() {
            images[i] = cr.var(k + 1);
        }
        for (k, &i) in fidx.iter().enumerate() {
            images[i] = fib[k].clone();
        }
        p.substitute(cr, &images)
    };

    let mut finite_certified = false;
    if let Some(w) = monic_witness {
        w.same_ring(&ring.zero())?;
        if !z.ideal.contains(w)? {
            return Err(Error::invalid(format!("monic witness {w} is not in the ideal")));
        }
        let idx = fidx[0];
        let top = w.coefficients_in(&[idx]).first().map(|(_, c)| c.clone());
        if !top.is_some_and(|c| c.is_constant() && !c.is_zero()) || w.degree_in(idx) == 0 {
            return Err(Error::math("not fiber-finite", format!("witness {w} is not monic in {}", fvars[0])));
        }
        finite_certified = true;
    }

    let mut charts = Vec::new();
    match fibre {
        FibreLine::Affine(a) => {
            let cr = chart_ring(&br, a)?;
            let gens = z.ideal.gens().iter().map(|g| to_chart(g, &cr, &[cr.var(0)])).collect();
            charts.push(FibreChart { ring: cr, gens, truncation: None });
        }
        FibreLine::Projective(u, v) => {
            let mut top = 0;
            for g in z.ideal.gens() {
                let d = is_homogeneous_in(g, fidx[0], fidx[1])
                    .ok_or_else(|| Error::invalid(format!("{g} is not homogeneous in {u}, {v}")))?;
                top = top.max(d);
            }
            let c0 = chart_ring(&br, v)?;
            let gens0 = z.ideal.gens().iter().map(|g| to_chart(g, &c0, &[c0.one(), c0.var(0)])).collect();
            charts.push(FibreChart { ring: c0.clone(), gens: gens0, truncation: None });
            let c1 = chart_ring(&br, u)?;
            let gens1 = z.ideal.gens().iter().map(|g| to_chart(g, &c1, &[c1.var(0), c1.one()])).collect();
            charts.push(FibreChart { ring: c1.clone(), gens: gens1, truncation: Some(c1.var(0).pow(top + 1)) });
        }
    }

    // Core: every chart's fibre ideal vanishes identically.
    let mut core_gens: Vec<Poly> = Vec::new();
    for c in &charts {
        let fv = vec![c.ring.vars()[0].clone()];
        let ideal = Ideal::new(&c.ring, c.gens.clone())?;
        let coeff = crate::ideal::coefficient_ideal(&ideal, &fv)?;
        core_gens.extend(coeff.gens().iter().map(|g| g.to_ring(&br)).collect::<Result<Vec<_>>>()?);
    }
    let core = ClosedSub::new(&base, core_gens)?;

    let pieces = match fibre {
        FibreLine::Affine(_) => charts[0].strata(&br, base.modulus())?,
        FibreLine::Projective(..) => {
            let top = z.ideal.gens().iter().filter_map(|g| is_homogeneous_in(g, fidx[0], fidx[1])).max().unwrap_or(0);
            fitting_strata(z, (fidx[0], fidx[1]), &base, top)?
        }
    };

    let mut strata = Vec::new();
    let mut notes = Vec::new();
    for (label, closed, frontier) in pieces {
        if label == StratumLabel::Full {
            // Set-level check that the piece lies in the core.
            for g in core.ideal.gens() {
                for fr in frontier.gens() {
                    if !radical_contains(&closed, &g.mul(fr))? {
                        return Err(Error::math("inconsistent fibres", format!("full fibres over {closed} outside the core")));
                    }
                }
            }
            continue;
        }
        let mut cartier = true;
        let mut generators = Vec::new();
        let opens: Vec<Option<Poly>> = if frontier.is_unit()? {
            vec![None]
        } else {
            frontier.gb()?.iter().filter(|g| !closed.contains(g).unwrap_or(true)).cloned().map(Some).collect()
        };
        for c in &charts {
            for h in &opens {
                match c.cartier_over(&closed, h.as_ref())? {
                    Some(g) => generators.push(g),
                    None => cartier = false,
                }
            }
        }
        if !cartier {
            notes.push(format!(
                "stratum {label} over {closed}: fibre ideal not Cartier on the whole piece; its Cartier locus is not computed"
            ));
        }
        strata.push(Stratum { label, closed: closed.canonical()?, frontier: frontier.canonical()?, cartier, generators });
    }
    if !core.is_empty()? {
        strata.push(Stratum { label: StratumLabel::Full, closed: core.ideal.canonical()?, frontier: Ideal::unit(&br), cartier: false, generators: Vec::new() });
    }
    strata.sort_by_key(|s| s.label);
    if !core.is_empty()? {
        notes.push("core nonempty: the full-fibre locus carries no finite label".to_string());
    }
    Ok(StratumReport { base, fibre: fibre.clone(), strata, core, finite_certified, notes, charts })
}

/// Rational points of `chart` with coordinates from `grid`, at most `limit` of them.
pub fn rational_points(chart: &AffineChart, grid: &[Rational], limit: usize) -> Vec<Vec<Rational>> {
    let n = chart.ring().nvars();
    let mut out = Vec::new();
    let total = (grid.len() as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
    let mut digits = vec![0usize; n];
    for _ in 0..total {
        let point: Vec<Rational> = digits.iter().map(|&d| grid[d].clone()).collect();
        if chart.modulus().gens().iter().all(|g| eval(g, &point).is_zero()) {
            out.push(point);
            if out.len() >= limit {
                break;
            }
        }
        for d in digits.iter_mut() {
            *d += 1;
            if *d < grid.len() {
                break;
            }
            *d = 0;
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct SpotCheck {
    pub points: usize,
    pub failures: Vec<String>,
}

impl StratumReport {
    /// Fibre label at a base point computed directly from the specialized equations.
    pub fn label_at(&self, point: &[Rational]) -> Result<StratumLabel> {
        let first = self.charts[0].length_at(point, false)?;
        match self.charts.get(1) {
            None => Ok(first),
            Some(inf) => {
                if first == StratumLabel::Full {
                    return Ok(StratumLabel::Full);
                }
                let at_inf = inf.length_at(point, true)?;
                Ok(first.plus(at_inf).unwrap_or(StratumLabel::Full))
            }
        }
    }

    /// Each sample point lies in exactly one stratum, whose label matches the fibre there.
    pub fn spot_check(&self, points: &[Vec<Rational>]) -> Result<SpotCheck> {
        let mut failures = Vec::new();
        for p in points {
            let hits: Vec<&Stratum> = self.strata.iter().filter(|s| s.contains_point(p)).collect();
            let shown: Vec<String> = p.iter().map(|c| c.to_string()).collect();
            if hits.len() != 1 {
                failures.push(format!("point ({}) lies in {} strata", shown.join(","), hits.len()));
                continue;
            }
            let direct = self.label_at(p)?;
            if hits[0].label != direct {
                failures.push(format!("point ({}): stratum says {}, fibre has {}", shown.join(","), hits[0].label, direct));
            }
        }
        Ok(SpotCheck { points: points.len(), failures })
    }

    /// Merge pieces with the same label, in label order.
    pub fn by_label(&self) -> Vec<(StratumLabel, Vec<&Stratum>)> {
        let mut out: Vec<(StratumLabel, Vec<&Stratum>)> = Vec::new();
        for s in &self.strata {
            match out.iter_mut().find(|(l, _)| *l == s.label) {
                Some((_, v)) => v.push(s),
                None => out.push((s.label, vec![s])),
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn s(v: &[&str]) -> Vec<String> {
        v.iter().map(|x| x.to_string()).collect()
    }

    fn sub(vars: &[&str], modulus: &[&str], gens: &[&str]) -> ClosedSub {
        let r = Ring::grevlex(vars);
        let x = AffineChart::new("X", Ideal::of(&r, modulus));
        ClosedSub::new(&x, gens.iter().map(|g| r.p(g)).collect()).unwrap()
    }

    #[test]
    fn iso_locus_examples() {
        let fib = Fibre::Free(s(&["a"]));
        let z = sub(&["c", "a"], &[], &["c"]);
        let l = iso_locus(&z, &fib).unwrap();
        assert!(l.locus.ideal.equals(&Ideal::of(l.base.ring(), &["c"])).unwrap());

        let z = sub(&["c", "a"], &[], &["c*a", "c^2"]);
        let l = iso_locus(&z, &fib).unwrap();
        assert!(l.locus.ideal.equals(&Ideal::of(l.base.ring(), &["c"])).unwrap());
        assert!(fills_fibres_over(&z, &l.locus.ideal).unwrap());

        let z = sub(&["c", "a"], &[], &["a", "c"]);
        let l = iso_locus(&z, &fib).unwrap();
        assert!(l.locus.is_empty().unwrap());
    }

    #[test]
    fn split_must_hold() {
        let z = sub(&["c", "a"], &["a^2 - c"], &["c"]);
        let err = iso_locus(&z, &Fibre::Free(s(&["a"]))).unwrap_err();
        assert!(matches!(err, Error::Math { tag: "split violated", .. }));
    }

    #[test]
    fn constfy_examples() {
        let r = Ring::grevlex(&["c", "a"]);
        let x = AffineChart::affine_space("X", &r);
        let line = AffineChart::affine_space("L", &Ring::grevlex(&["w"]));
        let fib = Fibre::Free(s(&["a"]));

        let f = SchemeMap::new(&x, &line, vec![r.p("c*a")]).unwrap();
        let c = constfy(&f, &fib).unwrap();
        assert!(c.locus.ideal.equals(&Ideal::of(c.base.ring(), &["c"])).unwrap());
        assert!(c.descended_map.unwrap().images[0].is_zero());

        let f = SchemeMap::new(&x, &line, vec![r.p("c")]).unwrap();
        let c = constfy(&f, &fib).unwrap();
        assert!(c.locus.ideal.is_zero());
        assert_eq!(c.descended_map.unwrap().images[0].to_string(), "c");

        let f = SchemeMap::new(&x, &line, vec![r.p("a")]).unwrap();
        let c = constfy(&f, &fib).unwrap();
        assert!(c.locus.is_empty().unwrap());
        assert!(c.descended_map.is_none());
    }

    #[test]
    fn constfy_over_dual_numbers() {
        let b = FiniteAlgebra::dual_numbers();
        let base = Ring::grevlex(&["c"]);
        let over = OverAlgebra::extend(&base, &b).unwrap();
        let x = AffineChart::new("X", Ideal::new(&over.ring, over.relations()).unwrap());
        let line = AffineChart::affine_space("L", &Ring::grevlex(&["w"]));
        let fib = Fibre::Algebra { vars: over.e_names(), algebra: b };
        let f = SchemeMap::new(&x, &line, vec![over.ring.p("c + c^2*e2")]).unwrap();
        let c = constfy(&f, &fib).unwrap();
        assert!(c.locus.ideal.equals(&Ideal::of(c.base.ring(), &["c^2"])).unwrap());
        assert_eq!(c.descended_map.unwrap().images[0].to_string(), "c");
    }

    fn grid(k: usize) -> Vec<Vec<Rational>> {
        let vals: Vec<Rational> = (-1..=2).map(rat).collect();
        let r = Ring::grevlex(&(0..k).map(|i| ["p", "q", "r", "s"][i]).collect::<Vec<_>>());
        rational_points(&AffineChart::affine_space("G", &r), &vals, 1000)
    }

    #[test]
    fn constant_section_single_stratum() {
        let z = sub(&["c", "a"], &[], &["a"]);
        let rep = flattening_strata(&z, &FibreLine::Affine("a".into()), Some(&z.ambient.ring().p("a"))).unwrap();
        assert!(rep.finite_certified);
        assert_eq!(rep.strata.len(), 1);
        assert_eq!(rep.strata[0].label, StratumLabel::Length(1));
        assert!(rep.strata[0].cartier);
        assert!(rep.core.is_empty().unwrap());
        assert!(rep.spot_check(&grid(1)).unwrap().failures.is_empty());
    }

    #[test]
    fn affine_fibre_with_jumps() {
        // Roots of c*a^2 - a: two over c != 0, one over c = 0.
        let z = sub(&["c", "a"], &[], &["c*a^2 - a"]);
        let rep = flattening_strata(&z, &FibreLine::Affine("a".into()), None).unwrap();
        let labels: Vec<StratumLabel> = rep.strata.iter().map(|s| s.label).collect();
        assert_eq!(labels, vec![StratumLabel::Length(1), StratumLabel::Length(2)]);
        assert!(rep.spot_check(&grid(1)).unwrap().failures.is_empty());
        // c*a over c: full at c = 0, one point elsewhere.
        let z = sub(&["c", "a"], &[], &["c*a"]);
        let rep = flattening_strata(&z, &FibreLine::Affine("a".into()), None).unwrap();
        let labels: Vec<StratumLabel> = rep.strata.iter().map(|s| s.label).collect();
        assert_eq!(labels, vec![StratumLabel::Length(1), StratumLabel::Full]);
        assert!(rep.core.ideal.equals(&Ideal::of(rep.base.ring(), &["c"])).unwrap());
        assert!(rep.spot_check(&grid(1)).unwrap().failures.is_empty());
    }

    #[test]
    fn projective_fibre_counts_infinity() {
        // c*v - u on P^1: the point (1 : c) for c != 0 is finite; c = 0 puts it at infinity.
        let z = sub(&["c", "u", "v"], &[], &["c*v - u"]);
        let rep = flattening_strata(&z, &FibreLine::Projective("u".into(), "v".into()), None).unwrap();
        assert_eq!(rep.strata.iter().map(|s| s.label).collect::<Vec<_>>(), vec![StratumLabel::Length(1); rep.strata.len()]);
        assert!(rep.spot_check(&grid(1)).unwrap().failures.is_empty());
        assert!(rep.strata.iter().all(|s| s.cartier));
    }

    #[test]
    fn plane_chart_of_graph_example() {
        // Chart x = 1 of P^2 with Z = V(z, v - u*y).
        let z = sub(&["y", "z", "u", "v"], &[], &["z", "v - u*y"]);
        let rep = flattening_strata(&z, &FibreLine::Projective("u".into(), "v".into()), None).unwrap();
        let labels: Vec<StratumLabel> = rep.strata.iter().map(|s| s.label).collect();
        assert_eq!(labels, vec![StratumLabel::Empty, StratumLabel::Length(1)]);
        let br = rep.base.ring();
        assert!(rep.strata[0].frontier_matches(&Ideal::of(br, &["z"])).unwrap());
        assert!(rep.strata[1].closed.equals(&Ideal::of(br, &["z"])).unwrap());
        assert!(rep.core.is_empty().unwrap());
        assert!(rep.spot_check(&grid(2)).unwrap().failures.is_empty());
    }

    #[test]
    fn determinantal_incidence() {
        let z = sub(&["x", "y", "z", "w", "a", "b"], &["x*w - y*z"], &["x*a + y*b", "z*a + w*b"]);
        let rep = flattening_strata(&z, &FibreLine::Projective("a".into(), "b".into()), None).unwrap();
        assert!(rep.core.ideal.equals(&Ideal::of(rep.base.ring(), &["x", "y", "z", "w"])).unwrap());
        for s in &rep.strata {
            assert!(matches!(s.label, StratumLabel::Length(1) | StratumLabel::Full), "{}", s.label);
        }
        let pts = rational_points(&rep.base, &(-1..=2).map(rat).collect::<Vec<_>>(), 1000);
        assert!(pts.len() > 10);
        let check = rep.spot_check(&pts).unwrap();
        assert!(check.failures.is_empty(), "{:?}", check.failures);
    }
}
