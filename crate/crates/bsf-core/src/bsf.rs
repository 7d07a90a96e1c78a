//! Blow-up split section families: the staged pipeline over a finite free algebra, the
//! stratification route over line and projective-line fibres, the factorization test for
//! maps into the base, and the small-resolution fixture.

use serde::Serialize;

use crate::blowup::{
    blowup_locally_principal, blowup_rees, certify_exceptional, product_form_blowup, product_with_factor, Factor,
    ProductFormBlowup, ReesBlowup,
};
use crate::error::{Error, Result};
use crate::family::{constfy, flattening_strata, iso_locus, Fibre, FibreLine, StratumLabel, StratumReport};
use crate::groebner::groebner;
use crate::ideal::{eliminate, intersect_all, quotient, ring_map_kernel, saturate, Ideal, Principality, QuotientRing, RingMap};
use crate::poly::{Poly, Ring, TermOrder};
use crate::scheme::{descend_functions, product, AffineChart, ClosedSub, SchemeMap};
use crate::weil::{restrict_scheme, FiniteAlgebra, OverAlgebra, Restriction};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    Pipeline,
    Structure,
}

/// One affine piece of a component, mapping to a chart of the base.
#[derive(Clone, Debug)]
pub struct ComponentChart {
    pub name: String,
    pub chart: AffineChart,
    pub map: SchemeMap,
    /// Stratification pieces are `V(chart) \ V(open)`.
    pub open: Option<Ideal>,
    /// Local equation of the pulled-back center (pipeline: in `chart × B`).
    pub exceptional: Option<Poly>,
    /// Pipeline only: which center generator cuts out the exceptional divisor here.
    pub center_index: Option<usize>,
    pub certificate: String,
    pub generator: String,
}

#[derive(Clone, Debug)]
pub struct Component {
    pub name: String,
    pub label: Option<StratumLabel>,
    pub charts: Vec<ComponentChart>,
    /// Pipeline only: the algebra the exceptional generator is written over.
    algebra: Option<FiniteAlgebra>,
    /// Pipeline only: center generators in the ring of `X × B`.
    center: Option<Vec<Poly>>,
}

/// Intermediate objects of the pipeline, one entry per Rees chart.
#[derive(Clone, Debug)]
pub struct PipelineStage {
    pub rees_index: usize,
    pub restriction: Restriction,
    pub constfy_locus: ClosedSub,
    pub product_form: ProductFormBlowup,
    pub center_generator: Poly,
}

#[derive(Clone, Debug)]
pub struct BsfResult {
    pub route: Route,
    pub components: Vec<Component>,
    pub core: Vec<ClosedSub>,
    /// Structure route with nonempty core: only the part off the core is described.
    pub partial: bool,
    pub notes: Vec<String>,
    pub rees: Option<ReesBlowup>,
    pub stages: Vec<PipelineStage>,
    pub strata: Vec<StratumReport>,
}

/// Ring of `X ⊗ B`: the variables of `x` followed by the algebra variables.
pub fn pipeline_ring(x: &AffineChart, b: &FiniteAlgebra) -> Result<OverAlgebra> {
    OverAlgebra::extend(x.ring(), b)
}

fn stage_error(stage: &str, e: Error) -> Error {
    match e {
        Error::Math { tag, detail } => Error::math(
            tag,
            format!("{stage}: {detail} (hypothesis: the fibre algebra is finite locally free and the center closed)"),
        ),
        other => other,
    }
}

/// The pipeline for `Y = Spec B` finite free over Q and a center `Z ⊆ X × Y` given by
/// generators in [`pipeline_ring`].
pub fn bsf_pipeline(x: &AffineChart, b: &FiniteAlgebra, center: &[Poly]) -> Result<BsfResult> {
    let over = pipeline_ring(x, b)?;
    let xy = AffineChart::new(format!("{}_x_{}", x.name, b.name), x.modulus().extend_to(&over.ring)?.with(&over.relations())?);
    for g in center {
        g.same_ring(&over.ring.zero()).map_err(|_| Error::invalid(format!("center generator {g} must live in {}", over.ring)))?;
    }
    let z = ClosedSub::new(&xy, center.to_vec())?;
    let fibre = Fibre::Algebra { vars: over.e_names(), algebra: b.clone() };
    let core_locus = iso_locus(&z, &fibre).map_err(|e| stage_error("core", e))?;
    let core = ClosedSub::new(x, core_locus.locus.ideal.gens().iter().map(|g| g.to_ring(x.ring())).collect::<Result<_>>()?)?;
    let mut result = BsfResult {
        route: Route::Pipeline,
        components: Vec::new(),
        core: vec![core],
        partial: false,
        notes: vec!["fpqc hypothesis on the projection is assumed, not certified".to_string()],
        rees: None,
        stages: Vec::new(),
        strata: Vec::new(),
    };

    if z.is_empty()? {
        result.notes.push("empty center: the family is the identity of X".to_string());
        let one = over.ring.one();
        result.components.push(Component {
            name: format!("{}_bsf", x.name),
            label: None,
            algebra: Some(b.clone()),
            center: None,
            charts: vec![ComponentChart {
                name: x.name.clone(),
                chart: x.clone(),
                map: x.identity(),
                open: None,
                exceptional: Some(one),
                center_index: None,
                certificate: "cartier".into(),
                generator: "1".into(),
            }],
        });
        return Ok(result);
    }
    let live: Vec<Poly> = center.iter().filter(|g| !xy.coords.is_zero(g).unwrap_or(true)).cloned().collect();
    if live.is_empty() {
        result.notes.push("center is the whole of X × Y: nothing to blow up, the family is empty".to_string());
        return Ok(result);
    }

    let rees = blowup_rees(&xy, &Ideal::new(&over.ring, live.clone())?).map_err(|e| stage_error("rees", e))?;
    let mut charts = Vec::new();
    for rc in &rees.charts {
        let stage_name = format!("chart {}", rc.index);
        let cover = OverAlgebra::within(rc.chart.ring(), &over.e_names(), b)?;
        let res = restrict_scheme(&cover, rc.chart.modulus().gens(), &format!("{}_w{}", x.name, rc.index))
            .map_err(|e| stage_error(&format!("{stage_name}: restriction"), e))?;

        // α ∘ bl ∘ ψ on the restriction times B, constant along B.
        let (over2, counit) = res.counit()?;
        let source = AffineChart::new(
            format!("{}_xB", res.restricted.name),
            res.restricted.modulus().extend_to(&over2.ring)?.with(&over2.relations())?,
        );
        let x_idx: Vec<usize> = (0..x.ring().nvars()).collect();
        let images: Vec<Poly> = x_idx.iter().map(|&i| counit[i].clone()).collect();
        let alpha = SchemeMap::new(&source, x, images)?;
        let cf = constfy(&alpha, &Fibre::Algebra { vars: over2.e_names(), algebra: b.clone() })
            .map_err(|e| stage_error(&format!("{stage_name}: constfy"), e))?;
        let locus_ideal = Ideal::new(
            res.restricted.ring(),
            cf.locus.ideal.gens().iter().map(|g| g.to_ring(res.restricted.ring())).collect::<Result<_>>()?,
        )?;
        let zeta = AffineChart::new(format!("{}_c", res.restricted.name), locus_ideal);
        if zeta.is_empty()? {
            result.notes.push(format!("{stage_name}: constant sections locus is empty"));
            continue;
        }

        // Pull the chart generator back along x_v -> x_{v,0}.
        let (prod, prod_e) = product_with_factor(&zeta, &Factor::Algebra(b.clone()))?;
        let pr = prod.ring().clone();
        let zr = zeta.ring().clone();
        let descend = |p: &Poly| -> Result<Poly> {
            let mut imgs = vec![pr.zero(); rc.chart.ring().nvars()];
            for (v, idx) in &res.coordinate_vars {
                let i = rc.chart.ring().index_of(v).unwrap();
                imgs[i] = if i < x.ring().nvars() {
                    pr.var(idx[0])
                } else {
                    idx.iter().enumerate().fold(pr.zero(), |acc, (k, &j)| {
                        let e = if k == 0 { pr.one() } else { pr.var_named(&prod_e[k - 1]).unwrap() };
                        acc.add(&pr.var(j).mul(&e))
                    })
                };
            }
            for (k, e) in cover.e_names().iter().enumerate() {
                imgs[rc.chart.ring().index_of(e).unwrap()] = pr.var_named(&prod_e[k])?;
            }
            Ok(p.substitute(&pr, &imgs))
        };
        let zgen = descend(&rc.exceptional)?;
        let pf = product_form_blowup(&zeta, &Factor::Algebra(b.clone()), &zgen)
            .map_err(|e| stage_error(&format!("{stage_name}: product-form blow-up"), e))?;
        if pf.w.is_empty()? {
            result.notes.push(format!("{stage_name}: blow-up along the pulled-back center is empty"));
            continue;
        }

        let comp_chart = pf.w.as_chart(format!("{}_b{}", x.name, rc.index));
        let b_images: Vec<Poly> = (0..x.ring().nvars())
            .map(|i| {
                let v = &x.ring().vars()[i];
                let idx = &res.coordinate_vars.iter().find(|(n, _)| n == v).unwrap().1;
                zr.var(idx[0])
            })
            .collect();
        let bmap = SchemeMap::new(&comp_chart, x, b_images)?;
        let (wb, _) = product_with_factor(&comp_chart, &Factor::Algebra(b.clone()))?;
        let pulled: Vec<Poly> = live
            .iter()
            .map(|g| descend(&rc.map.pull(g)).map(|p| p.map_vars(wb.ring(), &(0..pr.nvars()).collect::<Vec<_>>())))
            .collect::<Result<_>>()?;
        let zgen_w = zgen.map_vars(wb.ring(), &(0..pr.nvars()).collect::<Vec<_>>());
        let cert = certify_exceptional(&pulled, &wb, &zgen_w)?;
        if !matches!(cert, Principality::Cartier(_)) {
            return Err(Error::math(
                "not cartier",
                format!("{stage_name}: pulled-back center on the component is {}", cert.tag()),
            ));
        }
        charts.push(ComponentChart {
            name: comp_chart.name.clone(),
            chart: comp_chart,
            map: bmap,
            open: None,
            exceptional: Some(zgen_w.clone()),
            center_index: Some(rc.index),
            certificate: cert.tag().into(),
            generator: zgen_w.to_string(),
        });
        result.stages.push(PipelineStage {
            rees_index: rc.index,
            restriction: res.clone(),
            constfy_locus: ClosedSub { ambient: res.restricted.clone(), ideal: zeta.modulus().clone() },
            product_form: pf,
            center_generator: zgen,
        });
    }
    if !charts.is_empty() {
        result.components.push(Component { name: format!("{}_bsf", x.name), label: None, charts, algebra: Some(b.clone()), center: Some(live.clone()) });
    }
    result.notes.push("sections crossing between Rees charts are not represented; each chart is restricted separately".into());
    result.rees = Some(rees);
    Ok(result)
}

/// One chart of a base atlas with the center over it; the ambient ring holds the base
/// variables and the fibre variables.
#[derive(Clone, Debug)]
pub struct AtlasChart {
    pub name: String,
    pub center: ClosedSub,
}

pub fn bsf_structure(atlas: &[AtlasChart], fibre: &FibreLine) -> Result<BsfResult> {
    let mut reports = Vec::new();
    for c in atlas {
        let mut rep = flattening_strata(&c.center, fibre, None).map_err(|e| stage_error(&format!("strata on {}", c.name), e))?;
        rep.base.name = c.name.clone();
        reports.push(rep);
    }
    let mut labels: Vec<StratumLabel> = reports
        .iter()
        .flat_map(|r| r.strata.iter().map(|s| s.label))
        .filter(|l| *l != StratumLabel::Full)
        .collect();
    labels.sort();
    labels.dedup();
    let mut notes = vec![
        "structure-theorem hypotheses (connected base, integral projective flat fibre) are assumed, not certified"
            .to_string(),
    ];
    let mut components = Vec::new();
    for label in labels {
        let mut charts = Vec::new();
        for rep in &reports {
            for (k, s) in rep.strata.iter().enumerate().filter(|(_, s)| s.label == label) {
                if !s.cartier {
                    notes.push(format!("{}: stratum {label} piece {k} is not Cartier throughout and is omitted", rep.base.name));
                    continue;
                }
                let chart = AffineChart::new(format!("{}_s{k}", rep.base.name), s.closed.clone());
                let ids = (0..chart.ring().nvars()).map(|i| chart.ring().var(i)).collect();
                let map = SchemeMap::new(&chart, &rep.base, ids)?;
                charts.push(ComponentChart {
                    name: chart.name.clone(),
                    chart,
                    map,
                    open: Some(s.frontier.clone()),
                    exceptional: None,
                    center_index: None,
                    certificate: "cartier".into(),
                    generator: s.generators.join("; "),
                });
            }
        }
        if !charts.is_empty() {
            components.push(Component { name: format!("U_{label}"), label: Some(label), charts, algebra: None, center: None });
        }
    }
    let core: Vec<ClosedSub> = reports.iter().map(|r| r.core.clone()).collect();
    let mut partial = false;
    for c in &core {
        if !c.is_empty()? {
            partial = true;
        }
    }
    if partial {
        notes.push("core is nonempty: only the part of the family away from the core is described".into());
    }
    for r in &reports {
        notes.extend(r.notes.iter().map(|n| format!("{}: {n}", r.base.name)));
    }
    Ok(BsfResult { route: Route::Structure, components, core, partial, notes, rees: None, stages: Vec::new(), strata: reports })
}

/// `pieces` mapping to `target` are isomorphic to it: the projection is injective on
/// functions and every coordinate of the source is a function on the target.
fn projection_is_iso(p: &AffineChart, t: &AffineChart) -> Result<bool> {
    if p.is_empty()? {
        return t.is_empty();
    }
    let tvars = t.ring().vars().to_vec();
    let contracted = eliminate(p.modulus(), &tvars)?;
    let contracted = Ideal::new(t.ring(), contracted.gens().iter().map(|g| g.to_ring(t.ring())).collect::<Result<_>>()?)?;
    if !contracted.equals(t.modulus())? {
        return Ok(false);
    }
    let proj = SchemeMap::unchecked(p, t, tvars.iter().map(|v| p.ring().var_named(v)).collect::<Result<_>>()?)?;
    let vars: Vec<Poly> = (0..p.ring().nvars()).map(|i| p.ring().var(i)).collect();
    Ok(descend_functions(&vars, &proj)?.iter().all(Option::is_some))
}

/// Does `g: T -> X` factor through this component chart?
pub fn factors_through_chart(g: &SchemeMap, chart: &ComponentChart, algebra: Option<&FiniteAlgebra>) -> Result<bool> {
    let t = &g.source;
    if chart.map.target.ring() != g.target.ring() || chart.map.target.name != g.target.name {
        return Ok(false);
    }
    if let Some(open) = &chart.open {
        let closed_ok = t.modulus().contains_ideal(&g.pull_ideal(chart.chart.modulus())?)?;
        let open_ok = g.pull_ideal(open)?.is_unit()?;
        return Ok(closed_ok && open_ok);
    }
    // Strict transform of T ×_X chart along the pulled-back exceptional generator.
    let p = product(t, &chart.chart, Some((g, &chart.map)))?;
    let b = algebra.cloned().unwrap_or_else(FiniteAlgebra::rationals);
    let (pb, pe) = product_with_factor(&p.chart, &Factor::Algebra(b.clone()))?;
    let exc = chart.exceptional.clone().unwrap_or_else(|| chart.chart.ring().one());
    let er = exc.ring().clone();
    let nt = t.ring().nvars();
    let nw = chart.chart.ring().nvars();
    let mut images = vec![pb.ring().zero(); er.nvars()];
    for i in 0..nw {
        images[i] = pb.ring().var(nt + i);
    }
    for (k, e) in pe.iter().enumerate() {
        images[nw + k] = pb.ring().var_named(e)?;
    }
    let gen = exc.substitute(pb.ring(), &images);
    if pb.coords.is_zero(&gen)? {
        return t.is_empty();
    }
    let sat = saturate(pb.modulus(), &gen)?;
    let keep: Vec<String> = p.chart.ring().vars().to_vec();
    let strict = eliminate(&sat, &keep)?;
    let strict = Ideal::new(p.chart.ring(), strict.gens().iter().map(|g| g.to_ring(p.chart.ring())).collect::<Result<_>>()?)?;
    projection_is_iso(&AffineChart::new("strict", strict), t)
}

/// `(M : I)` for `M ⊆ I` presented upstairs.
fn colon(m: &Ideal, i: &Ideal) -> Result<Ideal> {
    let mut parts = Vec::new();
    for h in i.gens() {
        if !m.contains(h)? {
            parts.push(quotient(m, h)?);
        }
    }
    if parts.is_empty() {
        return Ok(Ideal::unit(m.ring()));
    }
    intersect_all(&parts)
}

/// `T_c` with its map to `T`.
fn localize(t: &AffineChart, c: &Poly) -> Result<SchemeMap> {
    let mut name = "loc".to_string();
    while t.ring().index_of(&name).is_some() {
        name.push('_');
    }
    let lt = t.extend_free(&[name.clone()])?;
    let r = lt.ring().clone();
    let inv = r.var_named(&name)?.mul(&c.to_ring(&r)?).sub(&r.one());
    let lt = AffineChart::new(format!("{}_{}", t.name, "loc"), lt.modulus().with(&[inv])?);
    let images = (0..t.ring().nvars()).map(|i| r.var(i)).collect();
    SchemeMap::unchecked(&lt, t, images)
}

/// Open cover of `T` by the loci where the pulled-back center is generated by a single
/// chart generator, contracted from `T × B`.
fn lift_loci(g: &SchemeMap, b: &FiniteAlgebra, center: &[Poly]) -> Result<Vec<Ideal>> {
    let t = &g.source;
    let over_t = OverAlgebra::extend(t.ring(), b)?;
    let tb = t.modulus().extend_to(&over_t.ring)?.with(&over_t.relations())?;
    let mut images: Vec<Poly> = g.images.iter().map(|p| p.to_ring(&over_t.ring)).collect::<Result<_>>()?;
    for e in over_t.e_names() {
        images.push(over_t.ring.var_named(&e)?);
    }
    let pulled: Vec<Poly> = center.iter().map(|c| c.substitute(&over_t.ring, &images)).collect();
    let full = tb.with(&pulled)?;
    let tvars = t.ring().vars().to_vec();
    pulled
        .iter()
        .map(|zi| {
            let c = colon(&tb.with(std::slice::from_ref(zi))?, &full)?;
            let c = eliminate(&c, &tvars)?;
            Ideal::new(t.ring(), c.gens().iter().map(|g| g.to_ring(t.ring())).collect::<Result<_>>()?)
        })
        .collect()
}

pub fn factors_through_component(g: &SchemeMap, c: &Component) -> Result<bool> {
    let t = &g.source;
    let charts: Vec<&ComponentChart> = c.charts.iter().filter(|k| k.map.target.name == g.target.name).collect();
    if charts.is_empty() {
        return Ok(false);
    }
    if c.label.is_some() {
        // Union of locally closed pieces: g lands in a piece near a point iff the pulled-back
        // frontier is invertible there and the pulled-back closed ideal vanishes locally.
        let mut cover = t.modulus().clone();
        for k in charts {
            let open = k.open.clone().unwrap_or_else(|| Ideal::unit(k.chart.ring()));
            let ann = colon(t.modulus(), &g.pull_ideal(k.chart.modulus())?)?;
            cover = cover.sum(&g.pull_ideal(&open)?.product(&ann)?)?;
        }
        return cover.is_unit();
    }
    let b = c.algebra.clone().unwrap_or_else(FiniteAlgebra::rationals);
    let Some(center) = &c.center else {
        for k in charts {
            if factors_through_chart(g, k, Some(&b))? {
                return Ok(true);
            }
        }
        return Ok(false);
    };
    let loci = lift_loci(g, &b, center)?;
    let mut cover = t.modulus().clone();
    for k in &charts {
        let Some(i) = k.center_index else { continue };
        cover = cover.sum(&loci[i])?;
    }
    if !cover.is_unit()? {
        return Ok(false);
    }
    for k in &charts {
        let Some(i) = k.center_index else { continue };
        for h in loci[i].gb()? {
            if t.modulus().contains(h)? {
                continue;
            }
            let loc = localize(t, h)?;
            if !factors_through_chart(&loc.then(g)?, k, Some(&b))? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Components of `res` through which `g` factors.
pub fn factorizations(g: &SchemeMap, res: &BsfResult) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for c in &res.components {
        if factors_through_component(g, c)? {
            out.push(c.name.clone());
        }
    }
    Ok(out)
}

/// Compare each pipeline chart with the matching chart of the classical blow-up of `X`
/// along `w`: the map `x -> x_0, t -> t_0` must present the component as that chart.
pub fn matches_classical(res: &BsfResult, classical: &ReesBlowup) -> Result<Vec<(usize, bool)>> {
    let rees = res.rees.as_ref().ok_or_else(|| Error::invalid("not a pipeline result"))?;
    let comp = res.components.first().ok_or_else(|| Error::invalid("pipeline result has no component"))?;
    let mut out = Vec::new();
    for (stage, chart) in res.stages.iter().zip(&comp.charts) {
        let Some(cl) = classical.charts.iter().find(|c| c.index == stage.rees_index) else {
            out.push((stage.rees_index, false));
            continue;
        };
        let rc = rees.charts.iter().find(|c| c.index == stage.rees_index).unwrap();
        let wr = chart.chart.ring();
        let coord0 = |name: &str| -> Result<Poly> {
            let names = stage.restriction.coordinate_names(name).ok_or_else(|| Error::invalid(format!("no coordinates for {name}")))?;
            wr.var_named(&names[0])
        };
        let mut images = Vec::new();
        let nx = classical.ambient.ring().nvars();
        for v in &classical.ambient.ring().vars().to_vec() {
            images.push(coord0(v)?);
        }
        for (j, _) in &cl.slopes {
            let (_, name) = rc.slopes.iter().find(|(k, _)| k == j).unwrap();
            images.push(coord0(name)?);
        }
        debug_assert_eq!(images.len(), nx + cl.slopes.len());
        let phi = RingMap::new(cl.chart.ring(), QuotientRing::new(chart.chart.modulus().clone()), images.clone())?;
        let kernel = ring_map_kernel(&phi)?;
        let same = kernel.extend_to(cl.chart.ring())?.equals(cl.chart.modulus())?;
        let onto = {
            let p = SchemeMap::unchecked(&chart.chart, &cl.chart, images)?;
            let vars: Vec<Poly> = (0..wr.nvars()).map(|i| wr.var(i)).collect();
            descend_functions(&vars, &p)?.iter().all(Option::is_some)
        };
        out.push((stage.rees_index, same && onto));
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct FixtureCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &str, passed: bool, detail: String) -> FixtureCheck {
    FixtureCheck { name: name.to_string(), passed, detail }
}

fn determinant(m: &[Vec<Poly>]) -> Poly {
    if m.len() == 1 {
        return m[0][0].clone();
    }
    let mut acc = m[0][0].ring().zero();
    for j in 0..m.len() {
        let minor: Vec<Vec<Poly>> =
            m[1..].iter().map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, p)| p.clone()).collect()).collect();
        let t = m[0][j].mul(&determinant(&minor));
        acc = if j % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
    }
    acc
}

/// Sylvester resultant of two binary forms of degree `n` given by coefficient lists.
pub fn sylvester_resultant(a: &[Poly], b: &[Poly]) -> Poly {
    let n = a.len() - 1;
    let ring = a[0].ring();
    let mut m = vec![vec![ring.zero(); 2 * n]; 2 * n];
    for i in 0..n {
        m[i][i..=i + n].clone_from_slice(a);
        m[n + i][i..=i + n].clone_from_slice(b);
    }
    determinant(&m)
}

fn gb_text(i: &Ideal) -> String {
    i.gb_strings().map(|g| g.join(", ")).unwrap_or_else(|e| e.to_string())
}

/// The determinantal small-resolution example, checked chart by chart.
pub fn verify_small_resolution_fixture() -> Result<Vec<FixtureCheck>> {
    let mut out = Vec::new();
    let det = "x*w - y*z";

    // (i) The n = 0 component against the incidence variety, identified through
    // M -> M^t and (a : b) -> (a : -b).
    for (chart, fixed, free) in [("a=1", "a", "b"), ("b=1", "b", "a")] {
        let r = Ring::grevlex(&["x", "y", "z", "w", free]);
        let one = |s: &str| s.replace(fixed, "1");
        let component = Ideal::of(&r, &[&one("x*a - z*b"), &one("y*a - w*b"), det]);
        // Incidence M λ^t = 0 with λ = (u, v), transported: (x,y,z,w) -> (x,z,y,w), u -> a, v -> -b.
        let incidence = ["x*u + y*v", "z*u + w*v"]
            .iter()
            .map(|g| {
                let s = g.replace('y', "Y").replace('z', "y").replace('Y', "z");
                one(&s.replace('u', "a").replace('v', "(-b)"))
            })
            .collect::<Vec<_>>();
        let inc = Ideal::new(&r, incidence.iter().map(|g| r.p(g)).chain([r.p(det)]).collect())?;
        let eq = component.equals(&inc)?;
        out.push(check(
            &format!("component X0 equals incidence variety on chart {chart}"),
            eq,
            format!("X0: [{}]; incidence: [{}]", gb_text(&component), gb_text(&inc)),
        ));
    }

    // Blow-up of P^1 × D along the incidence variety, chart u = 1: global equations.
    let d = AffineChart::new("S_u", Ideal::of(&Ring::grevlex(&["x", "y", "z", "w", "v"]), &[det]));
    let bl = blowup_rees(&d, &Ideal::of(d.ring(), &["x + y*v", "z + w*v"]))?;
    let c0 = &bl.charts[0];
    let expect = Ideal::of(c0.chart.ring(), &["x*t1 - z", "y*t1 - w", det]);
    out.push(check(
        "blow-up of the incidence center has equations x*a - z*b, y*a - w*b",
        c0.chart.modulus().equals(&expect)? && matches!(c0.certificate, Principality::Cartier(_)),
        format!("chart: [{}]", gb_text(c0.chart.modulus())),
    ));

    // (ii) Degree-n coefficient systems with coprime forms force M = 0.
    for n in 1..=2usize {
        let mut vars: Vec<String> = ["x", "y", "z", "w"].iter().map(|s| s.to_string()).collect();
        vars.extend((0..=n).map(|k| format!("a{k}")));
        vars.extend((0..=n).map(|k| format!("b{k}")));
        vars.push("s".into());
        let r = Ring::new(vars, TermOrder::Grevlex)?;
        let a: Vec<Poly> = (0..=n).map(|k| r.var(4 + k)).collect();
        let b: Vec<Poly> = (0..=n).map(|k| r.var(5 + n + k)).collect();
        let res = sylvester_resultant(&a, &b);
        let mut gens = vec![r.p(det)];
        for k in 0..=n {
            gens.push(r.p("x").mul(&a[k]).sub(&r.p("z").mul(&b[k])));
            gens.push(r.p("y").mul(&a[k]).sub(&r.p("w").mul(&b[k])));
        }
        gens.push(r.var(r.nvars() - 1).mul(&res).sub(&r.one()));
        let gb = groebner(&gens)?;
        let has = ["x", "y", "z", "w"].iter().all(|v| gb.contains(&r.p(v)));
        let shown: Vec<String> = gb.iter().map(|g| g.to_string()).collect();
        out.push(check(&format!("degree {n} coefficient system forces x, y, z, w = 0"), has, shown.join(", ")));
    }

    // (iii) Blow up P^1 × X_n along the pulled-back incidence center, chart u = 1.
    let r = Ring::grevlex(&["z", "w", "b", "v"]);
    let x0 = AffineChart::affine_space("P1xX0", &r);
    // x = z*b, y = w*b on X0 (chart a = 1); the center x*u + y*v, z*u + w*v at u = 1.
    let pulled = Ideal::of(&r, &["z*b + w*b*v", "z + w*v"]);
    let principal = pulled.equals(&Ideal::of(&r, &["z + w*v"]))?;
    let bl0 = blowup_locally_principal(&x0, &r.p("z + w*v"))?;
    let unchanged = bl0.result.equals(&ClosedSub::whole(&x0))?;
    out.push(check(
        "n = 0: pulled-back center is Cartier and the blow-up leaves X0 unchanged",
        principal && unchanged,
        format!("center: [{}]", gb_text(&pulled)),
    ));
    for n in 1..=2usize {
        let mut vars: Vec<String> = ["x", "y", "z", "w"].iter().map(|s| s.to_string()).collect();
        vars.extend((0..=n).map(|k| format!("a{k}")));
        vars.extend((0..=n).map(|k| format!("b{k}")));
        vars.push("s".into());
        vars.push("v".into());
        let r = Ring::new(vars, TermOrder::Grevlex)?;
        let a: Vec<Poly> = (0..=n).map(|k| r.var(4 + k)).collect();
        let b: Vec<Poly> = (0..=n).map(|k| r.var(5 + n + k)).collect();
        let res = sylvester_resultant(&a, &b);
        let s = r.var_named("s")?;
        let xn = AffineChart::new(
            format!("P1xX{n}"),
            Ideal::new(&r, vec![r.p("x"), r.p("y"), r.p("z"), r.p("w"), s.mul(&res).sub(&r.one())])?,
        );
        let center = Ideal::of(&r, &["x + y*v", "z + w*v"]);
        let gen = xn.coords.reduce(&center.gens()[1])?;
        let killed = gen.is_zero()
            && xn.modulus().contains_ideal(&center)?
            && blowup_locally_principal(&xn, &center.gens()[1])?.is_empty()?;
        out.push(check(
            &format!("n = {n}: pulled-back center is everything and the blow-up is empty"),
            killed,
            format!("reduced generator: {gen}"),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plane() -> AffineChart {
        AffineChart::affine_space("X", &Ring::grevlex(&["x", "y"]))
    }

    #[test]
    fn pipeline_product_center_matches_classical() {
        let x = plane();
        let classical = blowup_rees(&x, &Ideal::of(x.ring(), &["x", "y"])).unwrap();
        for b in [FiniteAlgebra::rationals(), FiniteAlgebra::dual_numbers(), FiniteAlgebra::split_pair()] {
            let over = pipeline_ring(&x, &b).unwrap();
            let res = bsf_pipeline(&x, &b, &[over.ring.p("x"), over.ring.p("y")]).unwrap();
            assert_eq!(res.components.len(), 1);
            assert_eq!(res.components[0].charts.len(), 2);
            let m = matches_classical(&res, &classical).unwrap();
            assert_eq!(m, vec![(0, true), (1, true)], "algebra {}", b.name);
            // The center fills the fibre exactly over the origin.
            assert!(res.core[0].ideal.equals(&Ideal::of(x.ring(), &["x", "y"])).unwrap());
        }
    }

    #[test]
    fn pipeline_trivial_centers() {
        let x = plane();
        let b = FiniteAlgebra::dual_numbers();
        let over = pipeline_ring(&x, &b).unwrap();
        let res = bsf_pipeline(&x, &b, &[over.ring.p("1")]).unwrap();
        assert_eq!(res.components.len(), 1);
        assert_eq!(res.components[0].charts[0].chart.modulus().gens().len(), 0);
        let res = bsf_pipeline(&x, &b, &[over.ring.zero()]).unwrap();
        assert!(res.components.is_empty());
        assert!(res.core[0].ideal.is_zero());
    }

    #[test]
    fn pipeline_factorization() {
        let x = plane();
        let b = FiniteAlgebra::dual_numbers();
        let over = pipeline_ring(&x, &b).unwrap();
        let res = bsf_pipeline(&x, &b, &[over.ring.p("x"), over.ring.p("y")]).unwrap();
        let line = AffineChart::affine_space("T", &Ring::grevlex(&["s"]));
        let cases = [("s", "2*s", true), ("s^2", "s^3", true), ("1", "0", true), ("0", "0", false), ("s", "0", true)];
        for (a, c, expect) in cases {
            let g = SchemeMap::new(&line, &x, vec![line.ring().p(a), line.ring().p(c)]).unwrap();
            assert_eq!(factorizations(&g, &res).unwrap().len() == 1, expect, "({a}, {c})");
        }
        let fat = AffineChart::new("T2", Ideal::of(&Ring::grevlex(&["s"]), &["s^2"]));
        let g = SchemeMap::new(&fat, &x, vec![fat.ring().p("s"), fat.ring().zero()]).unwrap();
        assert!(factorizations(&g, &res).unwrap().is_empty());
        let g = x.identity();
        assert!(factorizations(&g, &res).unwrap().is_empty());
    }

    #[test]
    fn small_resolution_checks_pass() {
        for c in verify_small_resolution_fixture().unwrap() {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
    }

    #[test]
    fn structure_route_constant_section() {
        let r = Ring::grevlex(&["c", "a"]);
        let x = AffineChart::affine_space("X", &r);
        let z = ClosedSub::new(&x, vec![r.p("a")]).unwrap();
        let res = bsf_structure(&[AtlasChart { name: "X".into(), center: z }], &FibreLine::Affine("a".into())).unwrap();
        assert_eq!(res.components.len(), 1);
        assert_eq!(res.components[0].label, Some(StratumLabel::Length(1)));
        assert!(res.components[0].charts[0].chart.modulus().is_zero());
        assert!(!res.partial);
    }

    fn assert_bank(out: &[crate::fixtures::BankOutcome]) {
        assert!(out.len() >= 10);
        for o in out {
            assert!(o.correct, "{o:?}");
        }
    }

    #[test]
    fn graph_example_two_components() {
        let atlas = crate::fixtures::graph_atlas();
        let res = bsf_structure(&atlas, &crate::fixtures::projective_line()).unwrap();
        assert!(!res.partial);
        for c in &res.core {
            assert!(c.is_empty().unwrap());
        }
        let labels: Vec<_> = res.components.iter().map(|c| c.label).collect();
        assert_eq!(labels, vec![Some(StratumLabel::Empty), Some(StratumLabel::Length(1))]);
        let r = Ring::grevlex(&["y", "z"]);
        let line = res.components[1].charts.iter().find(|c| c.map.target.name == "P2_x").unwrap();
        assert!(line.chart.modulus().equals(&Ideal::of(&r, &["z"])).unwrap());
        assert!(line.open.as_ref().unwrap().is_unit().unwrap());
        assert!(!res.components[1].charts.iter().any(|c| c.map.target.name == "P2_z"));
    }

    #[test]
    fn determinantal_structure_is_partial() {
        let (atlas, fibre) = crate::fixtures::determinantal_atlas();
        let res = bsf_structure(&atlas, &fibre).unwrap();
        assert!(res.partial);
        assert!(res.core[0].ideal.equals(&Ideal::of(res.core[0].ideal.ring(), &["x", "y", "z", "w"])).unwrap());
        assert_eq!(res.components.len(), 1);
        assert_eq!(res.components[0].label, Some(StratumLabel::Length(1)));
    }

    #[test]
    fn test_map_banks() {
        for b in [FiniteAlgebra::rationals(), FiniteAlgebra::dual_numbers(), FiniteAlgebra::split_pair()] {
            assert_bank(&crate::fixtures::run_pipeline_bank(&b).unwrap());
        }
        let fib = crate::fixtures::projective_line();
        assert_bank(&crate::fixtures::run_structure_bank(&crate::fixtures::graph_atlas(), &fib, &crate::fixtures::graph_bank().unwrap()).unwrap());
        let (atlas, fib) = crate::fixtures::determinantal_atlas();
        assert_bank(&crate::fixtures::run_structure_bank(&atlas, &fib, &crate::fixtures::determinantal_bank().unwrap()).unwrap());
        let (atlas, fib) = crate::fixtures::constant_section_atlas();
        assert_bank(&crate::fixtures::run_structure_bank(&atlas, &fib, &crate::fixtures::constant_section_bank().unwrap()).unwrap());
    }
}
