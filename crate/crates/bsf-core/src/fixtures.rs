//! Worked examples shared by the tests, the acceptance suite and the CLI corpus, with
//! banks of test maps and an independent Cartier-pullback oracle.

use crate::bsf::AtlasChart;
use crate::error::Result;
use crate::family::{split_base, FibreLine};
use crate::ideal::{is_principal_cartier, Ideal, Principality, QuotientRing};
use crate::poly::{Poly, Ring};
use crate::scheme::{AffineChart, ClosedSub, SchemeMap};
use crate::weil::{FiniteAlgebra, OverAlgebra};

fn chart(name: &str, vars: &[&str], modulus: &[&str], center: &[&str]) -> AtlasChart {
    let r = Ring::grevlex(vars);
    let x = AffineChart::new(name, Ideal::of(&r, modulus));
    let center = ClosedSub::new(&x, center.iter().map(|g| r.p(g)).collect()).expect("fixture center");
    AtlasChart { name: name.to_string(), center }
}

pub fn projective_line() -> FibreLine {
    FibreLine::Projective("u".into(), "v".into())
}

/// `V(z, v*x - u*y)` in `P^1 × P^2`, on the three standard charts of the plane.
pub fn graph_atlas() -> Vec<AtlasChart> {
    vec![
        chart("P2_x", &["y", "z", "u", "v"], &[], &["z", "v - u*y"]),
        chart("P2_y", &["x", "z", "u", "v"], &[], &["z", "v*x - u"]),
        chart("P2_z", &["x", "y", "u", "v"], &[], &["1"]),
    ]
}

/// Incidence `{M (a, b)^t = 0}` over the determinantal quadric `x*w = y*z`.
pub fn determinantal_atlas() -> (Vec<AtlasChart>, FibreLine) {
    (
        vec![chart("D", &["x", "y", "z", "w", "a", "b"], &["x*w - y*z"], &["x*a + y*b", "z*a + w*b"])],
        FibreLine::Projective("a".into(), "b".into()),
    )
}

/// Zero section of the line over the line.
pub fn constant_section_atlas() -> (Vec<AtlasChart>, FibreLine) {
    (vec![chart("L", &["c", "a"], &[], &["a"])], FibreLine::Affine("a".into()))
}

pub fn fibre_vars(fibre: &FibreLine) -> Vec<String> {
    match fibre {
        FibreLine::Affine(a) => vec![a.clone()],
        FibreLine::Projective(u, v) => vec![u.clone(), v.clone()],
    }
}

/// The base chart an atlas chart lives over, named like the chart.
pub fn base_chart(c: &AtlasChart, fibre: &FibreLine) -> Result<AffineChart> {
    let mut b = split_base(&c.center.ambient, &fibre_vars(fibre), &[])?;
    b.name = c.name.clone();
    Ok(b)
}

/// The affine plane with the origin as product center.
pub fn plane_at_origin(b: &FiniteAlgebra) -> Result<(AffineChart, Vec<Poly>)> {
    let x = AffineChart::affine_space("A2", &Ring::grevlex(&["x", "y"]));
    let over = OverAlgebra::extend(x.ring(), b)?;
    Ok((x, vec![over.ring.p("x"), over.ring.p("y")]))
}

#[derive(Clone, Debug)]
pub struct TestMap {
    pub name: String,
    pub map: SchemeMap,
}

fn t_line() -> AffineChart {
    AffineChart::affine_space("T", &Ring::grevlex(&["s"]))
}

fn t_fat() -> AffineChart {
    AffineChart::new("T_fat", Ideal::of(&Ring::grevlex(&["s"]), &["s^2"]))
}

fn t_point() -> AffineChart {
    AffineChart::new("T_pt", Ideal::of(&Ring::grevlex(&["s"]), &["s"]))
}

fn t_plane() -> AffineChart {
    AffineChart::affine_space("T_plane", &Ring::grevlex(&["p", "q"]))
}

fn test_map(t: &AffineChart, target: &AffineChart, images: &[&str]) -> TestMap {
    let map = SchemeMap::new(t, target, images.iter().map(|g| t.ring().p(g)).collect()).expect("fixture test map");
    TestMap { name: format!("{}->{}({})", t.name, target.name, images.join(", ")), map }
}

/// Maps into the affine plane.
pub fn plane_bank(x: &AffineChart) -> Vec<TestMap> {
    let (l, f, pt, pl) = (t_line(), t_fat(), t_point(), t_plane());
    vec![
        test_map(&l, x, &["s", "2*s"]),
        test_map(&l, x, &["s^2", "s^3"]),
        test_map(&l, x, &["1", "0"]),
        test_map(&l, x, &["0", "0"]),
        test_map(&l, x, &["s", "0"]),
        test_map(&l, x, &["0", "s"]),
        test_map(&l, x, &["s + 1", "s"]),
        test_map(&l, x, &["s^2", "s^2"]),
        test_map(&f, x, &["s", "0"]),
        test_map(&pt, x, &["0", "0"]),
        test_map(&pt, x, &["3", "-1"]),
        test_map(&pl, x, &["p", "q"]),
        test_map(&pl, x, &["p", "p*q"]),
        test_map(&pl, x, &["p", "q^2"]),
    ]
}

/// Maps into the three charts of the plane.
pub fn graph_bank() -> Result<Vec<TestMap>> {
    let atlas = graph_atlas();
    let fibre = projective_line();
    let cx = base_chart(&atlas[0], &fibre)?;
    let cy = base_chart(&atlas[1], &fibre)?;
    let cz = base_chart(&atlas[2], &fibre)?;
    let (l, f, pt, pl) = (t_line(), t_fat(), t_point(), t_plane());
    Ok(vec![
        test_map(&pt, &cx, &["1", "1"]),
        test_map(&pt, &cx, &["2", "0"]),
        test_map(&l, &cx, &["s", "s"]),
        test_map(&l, &cx, &["s", "0"]),
        test_map(&f, &cx, &["s", "0"]),
        test_map(&f, &cx, &["0", "s"]),
        test_map(&f, &cx, &["s", "s^2"]),
        test_map(&l, &cx, &["s", "s^2 + 1"]),
        test_map(&l, &cx, &["s", "s + 1"]),
        test_map(&pl, &cx, &["p", "q"]),
        test_map(&l, &cy, &["s", "0"]),
        test_map(&l, &cy, &["s", "s^3"]),
        test_map(&l, &cz, &["s", "s^2"]),
        test_map(&pl, &cz, &["p", "q"]),
    ])
}

/// Maps into the determinantal quadric avoiding the singular point, plus the point itself.
pub fn determinantal_bank() -> Result<Vec<TestMap>> {
    let (atlas, fibre) = determinantal_atlas();
    let d = base_chart(&atlas[0], &fibre)?;
    let (l, f, pt, pl) = (t_line(), t_fat(), t_point(), t_plane());
    Ok(vec![
        test_map(&pt, &d, &["1", "0", "0", "0"]),
        test_map(&pt, &d, &["1", "2", "3", "6"]),
        test_map(&pt, &d, &["0", "0", "0", "0"]),
        test_map(&l, &d, &["1", "s", "0", "0"]),
        test_map(&l, &d, &["1", "s", "s", "s^2"]),
        test_map(&l, &d, &["s", "1", "s^2", "s"]),
        test_map(&f, &d, &["1", "s", "s", "0"]),
        test_map(&f, &d, &["s", "0", "0", "0"]),
        test_map(&pl, &d, &["1", "q", "p", "p*q"]),
        test_map(&pl, &d, &["p", "1", "p*q", "q"]),
    ])
}

/// Maps into the base line of the constant-section fixture.
pub fn constant_section_bank() -> Result<Vec<TestMap>> {
    let (atlas, fibre) = constant_section_atlas();
    let c = base_chart(&atlas[0], &fibre)?;
    let (l, f, pt, pl) = (t_line(), t_fat(), t_point(), t_plane());
    Ok(vec![
        test_map(&l, &c, &["s"]),
        test_map(&l, &c, &["s^2"]),
        test_map(&l, &c, &["0"]),
        test_map(&l, &c, &["1"]),
        test_map(&f, &c, &["s"]),
        test_map(&f, &c, &["0"]),
        test_map(&pt, &c, &["0"]),
        test_map(&pt, &c, &["5"]),
        test_map(&pl, &c, &["p*q"]),
        test_map(&pl, &c, &["p + q^2"]),
    ])
}

fn cartier_or_empty(p: &Principality) -> bool {
    matches!(p, Principality::Cartier(_) | Principality::Full)
}

/// Is the pullback of the center to `T × B` an effective Cartier divisor?
pub fn pipeline_pullback_is_cartier(g: &SchemeMap, b: &FiniteAlgebra, center: &[Poly]) -> Result<bool> {
    let t = &g.source;
    let over_t = OverAlgebra::extend(t.ring(), b)?;
    let tb = t.modulus().extend_to(&over_t.ring)?.with(&over_t.relations())?;
    let nx = g.target.ring().nvars();
    let mut images: Vec<Poly> = g.images.iter().map(|p| p.to_ring(&over_t.ring)).collect::<Result<_>>()?;
    for e in over_t.e_names() {
        images.push(over_t.ring.var_named(&e)?);
    }
    debug_assert_eq!(images.len(), nx + b.dim - 1);
    let pulled: Vec<Poly> = center.iter().map(|c| c.substitute(&over_t.ring, &images)).collect();
    let i = Ideal::new(&over_t.ring, pulled)?;
    Ok(cartier_or_empty(&is_principal_cartier(&i, &QuotientRing::new(tb))?))
}

/// Is the pullback of the center to `T × fibre` an effective Cartier divisor? Projective
/// fibres are checked on both standard charts.
pub fn structure_pullback_is_cartier(g: &SchemeMap, c: &AtlasChart, fibre: &FibreLine) -> Result<bool> {
    let t = &g.source;
    let amb = c.center.ambient.ring();
    let fv = fibre_vars(fibre);
    let dehomogenize: Vec<Option<usize>> = match fibre {
        FibreLine::Affine(_) => vec![None],
        FibreLine::Projective(..) => vec![Some(0), Some(1)],
    };
    for fixed in dehomogenize {
        let free: Vec<&String> = fv.iter().enumerate().filter(|(k, _)| Some(*k) != fixed).map(|(_, v)| v).collect();
        let mut vars: Vec<String> = t.ring().vars().to_vec();
        vars.extend(free.iter().map(|v| v.to_string()));
        let r = Ring::new(vars, t.ring().order())?;
        let mut images = Vec::new();
        let mut base_k = 0;
        for v in amb.vars() {
            if let Some(k) = fv.iter().position(|f| f == v) {
                images.push(if Some(k) == fixed { r.one() } else { r.var_named(v)? });
            } else {
                images.push(g.images[base_k].to_ring(&r)?);
                base_k += 1;
            }
        }
        let pulled: Vec<Poly> = c.center.ideal.gens().iter().map(|p| p.substitute(&r, &images)).collect();
        let tm = t.modulus().extend_to(&r)?;
        let i = Ideal::new(&r, pulled)?;
        if !cartier_or_empty(&is_principal_cartier(&i, &QuotientRing::new(tm))?) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct BankOutcome {
    pub map: String,
    pub cartier: bool,
    pub components: Vec<String>,
    pub correct: bool,
}

fn outcome(m: &TestMap, cartier: bool, components: Vec<String>) -> BankOutcome {
    let correct = if cartier { components.len() == 1 } else { components.is_empty() };
    BankOutcome { map: m.name.clone(), cartier, components, correct }
}

/// Classify the plane bank against the pipeline result for `b`.
pub fn run_pipeline_bank(b: &FiniteAlgebra) -> Result<Vec<BankOutcome>> {
    let (x, center) = plane_at_origin(b)?;
    let res = crate::bsf::bsf_pipeline(&x, b, &center)?;
    plane_bank(&x)
        .iter()
        .map(|m| {
            let cartier = pipeline_pullback_is_cartier(&m.map, b, &center)?;
            Ok(outcome(m, cartier, crate::bsf::factorizations(&m.map, &res)?))
        })
        .collect()
}

/// Classify a bank against the structure route on an atlas.
pub fn run_structure_bank(atlas: &[AtlasChart], fibre: &FibreLine, bank: &[TestMap]) -> Result<Vec<BankOutcome>> {
    let res = crate::bsf::bsf_structure(atlas, fibre)?;
    bank.iter()
        .map(|m| {
            let c = atlas
                .iter()
                .find(|c| c.name == m.map.target.name)
                .ok_or_else(|| crate::error::Error::invalid(format!("no atlas chart {}", m.map.target.name)))?;
            let cartier = structure_pullback_is_cartier(&m.map, c, fibre)?;
            Ok(outcome(m, cartier, crate::bsf::factorizations(&m.map, &res)?))
        })
        .collect()
}
