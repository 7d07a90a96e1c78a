//! Resolving a parsed job against the engine and running its command.

use std::collections::BTreeMap;

use bsf_core::blowup::{blowup_locally_principal, blowup_rees, product_form_blowup, product_with_factor, Factor};
use bsf_core::bsf::{bsf_pipeline, bsf_structure, verify_small_resolution_fixture, AtlasChart, BsfResult};
use bsf_core::family::{constfy, flattening_strata, iso_locus, Fibre, FibreLine, StratumReport};
use bsf_core::groebner::normal_form;
use bsf_core::ideal::{
    coefficient_ideal, eliminate, intersect_all, is_principal_cartier, is_regular, quotient, ring_map_kernel, saturate,
};
use bsf_core::poly::{rat, Rational};
use bsf_core::scheme::{constant_along_fibres, flat_base_change_image_check, product, schematic_image, Descent};
use bsf_core::syntax::{lex, PolyErrorKind, PolyParser};
use bsf_core::weil::{adjunction_check, restrict_map, restrict_scheme, FiniteAlgebra, OverAlgebra, Restriction};
use bsf_core::scheme::{AffineChart, ClosedSub, SchemeMap};
use bsf_core::{Error, Ideal, Poly, Ring, TermOrder};
use serde_json::{json, Value};

use crate::job::{line_col, parse_syntax, Arg, Code, Decl, Diagnostic, Expr, Ident, JobFile, OrderSpec};

#[derive(Clone, Debug)]
struct IdealEntry {
    ring: String,
    ideal: Ideal,
    gens: Vec<Poly>,
}

#[derive(Clone, Debug)]
struct MapEntry {
    /// Ring map `source -> target`, stored as the morphism `Spec target -> Spec source`.
    scheme: SchemeMap,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Ring,
    Ideal,
    Algebra,
    Map,
}

impl Kind {
    fn word(self) -> &'static str {
        match self {
            Kind::Ring => "a ring",
            Kind::Ideal => "an ideal",
            Kind::Algebra => "an algebra",
            Kind::Map => "a map",
        }
    }
}

#[derive(Default)]
struct Env<'a> {
    text: &'a str,
    rings: BTreeMap<String, AffineChart>,
    ideals: BTreeMap<String, IdealEntry>,
    algebras: BTreeMap<String, FiniteAlgebra>,
    maps: BTreeMap<String, MapEntry>,
}

type DResult<T> = Result<T, Diagnostic>;

impl<'a> Env<'a> {
    fn diag(&self, code: Code, pos: usize, msg: impl Into<String>) -> Diagnostic {
        let (line, col) = line_col(self.text, pos);
        Diagnostic { code, line, col, message: msg.into() }
    }

    fn kind_of(&self, name: &str) -> Option<Kind> {
        if self.rings.contains_key(name) {
            Some(Kind::Ring)
        } else if self.ideals.contains_key(name) {
            Some(Kind::Ideal)
        } else if self.algebras.contains_key(name) {
            Some(Kind::Algebra)
        } else if self.maps.contains_key(name) {
            Some(Kind::Map)
        } else {
            None
        }
    }

    fn expect(&self, id: &Ident, kind: Kind) -> DResult<()> {
        match self.kind_of(&id.name) {
            None => Err(self.diag(Code::Undeclared, id.pos, format!("`{}` is not declared", id.name))),
            Some(k) if k != kind => {
                Err(self.diag(Code::Kind, id.pos, format!("`{}` is {}, expected {}", id.name, k.word(), kind.word())))
            }
            Some(_) => Ok(()),
        }
    }

    fn ring(&self, id: &Ident) -> DResult<&AffineChart> {
        self.expect(id, Kind::Ring)?;
        Ok(&self.rings[&id.name])
    }

    fn ideal(&self, id: &Ident) -> DResult<&IdealEntry> {
        self.expect(id, Kind::Ideal)?;
        Ok(&self.ideals[&id.name])
    }

    fn algebra(&self, id: &Ident) -> DResult<&FiniteAlgebra> {
        self.expect(id, Kind::Algebra)?;
        Ok(&self.algebras[&id.name])
    }

    fn map(&self, id: &Ident) -> DResult<&MapEntry> {
        self.expect(id, Kind::Map)?;
        Ok(&self.maps[&id.name])
    }

    fn fresh(&self, id: &Ident) -> DResult<()> {
        if self.kind_of(&id.name).is_some() {
            return Err(self.diag(Code::Invalid, id.pos, format!("`{}` is already declared", id.name)));
        }
        Ok(())
    }

    fn poly(&self, e: &Expr, ring: &Ring) -> DResult<Poly> {
        let toks = lex(&e.text).map_err(|(_, m)| self.diag(Code::Syntax, e.pos, m))?;
        let mut p = PolyParser::new(&toks, ring, e.text.len());
        let poly = p.expr().map_err(|err| {
            let code = match err.kind {
                PolyErrorKind::UnknownVariable => Code::Undeclared,
                PolyErrorKind::Syntax => Code::Syntax,
            };
            self.diag(code, e.pos, format!("in `{}`: {}", e.text, err.msg))
        })?;
        if p.pos != toks.len() {
            return Err(self.diag(Code::Syntax, e.pos, format!("trailing input in `{}`", e.text)));
        }
        Ok(poly)
    }

    fn polys(&self, es: &[Expr], ring: &Ring) -> DResult<Vec<Poly>> {
        es.iter().map(|e| self.poly(e, ring)).collect()
    }

    fn vars_in(&self, vs: &[Ident], ring: &Ring) -> DResult<Vec<String>> {
        for v in vs {
            if ring.index_of(&v.name).is_none() {
                return Err(self.diag(Code::Undeclared, v.pos, format!("`{}` is not a variable of {ring}", v.name)));
            }
        }
        Ok(vs.iter().map(|v| v.name.clone()).collect())
    }

    fn invalid(&self, pos: usize, e: Error) -> Diagnostic {
        self.diag(Code::Invalid, pos, e.to_string())
    }

    fn declare(&mut self, d: &Decl) -> DResult<()> {
        self.fresh(d.name())?;
        match d {
            Decl::Ring { name, vars, order } => {
                let order = match order {
                    OrderSpec::Lex => TermOrder::Lex,
                    OrderSpec::Grevlex => TermOrder::Grevlex,
                    OrderSpec::Block(k) => TermOrder::Block(*k),
                };
                let ring = Ring::new(vars.iter().map(|v| v.name.clone()), order).map_err(|e| self.invalid(name.pos, e))?;
                self.rings.insert(name.name.clone(), AffineChart::affine_space(name.name.clone(), &ring));
            }
            Decl::Quotient { name, base, gens } => {
                let b = self.ring(base)?.clone();
                let gens = self.polys(gens, b.ring())?;
                let m = b.modulus().with(&gens).map_err(|e| self.invalid(name.pos, e))?;
                self.rings.insert(name.name.clone(), AffineChart::new(name.name.clone(), m));
            }
            Decl::Ideal { name, gens, ring } => {
                let chart = self.ring(ring)?.clone();
                let gens = self.polys(gens, chart.ring())?;
                let ideal = chart.modulus().with(&gens).map_err(|e| self.invalid(name.pos, e))?;
                self.ideals.insert(name.name.clone(), IdealEntry { ring: ring.name.clone(), ideal, gens });
            }
            Decl::Algebra { name, dim, products } => {
                if *dim == 0 {
                    return Err(self.diag(Code::Invalid, name.pos, "an algebra needs dimension at least 1"));
                }
                let names: Vec<String> = (1..=*dim).map(|k| format!("e{k}")).collect();
                let er = Ring::new(names, TermOrder::Grevlex).map_err(|e| self.invalid(name.pos, e))?;
                let mut table = Vec::new();
                for (i, j, e) in products {
                    if *i < 2 || *j < 2 || *i > *dim || *j > *dim {
                        return Err(self.diag(Code::Arity, e.pos, format!("e{i}*e{j} is outside e2..e{dim}")));
                    }
                    let p = self.poly(e, &er)?;
                    if p.total_degree() > 1 {
                        return Err(self.diag(Code::Invalid, e.pos, format!("product `{}` is not linear in the basis", e.text)));
                    }
                    let mut coeffs = vec![Rational::from_integer(0.into()); *dim];
                    for (m, c) in p.terms() {
                        let k = m.exps().iter().position(|&x| x == 1).unwrap_or(0);
                        coeffs[k] += c;
                    }
                    table.push((*i, *j, coeffs));
                }
                let alg = FiniteAlgebra::new(name.name.clone(), *dim, &table).map_err(|e| self.invalid(name.pos, e))?;
                self.algebras.insert(name.name.clone(), alg);
            }
            Decl::Map { name, source, target, images } => {
                let s = self.ring(source)?.clone();
                let t = self.ring(target)?.clone();
                if images.len() != s.ring().nvars() {
                    return Err(self.diag(
                        Code::Arity,
                        name.pos,
                        format!("map from {} needs {} images, got {}", source.name, s.ring().nvars(), images.len()),
                    ));
                }
                let imgs = self.polys(images, t.ring())?;
                let scheme = SchemeMap::new(&t, &s, imgs).map_err(|e| self.invalid(name.pos, e))?;
                self.maps.insert(name.name.clone(), MapEntry { scheme });
            }
        }
        Ok(())
    }
}

/// A command with its arguments resolved against the declarations.
enum Op {
    Expand(Poly, AffineChart),
    NormalForm(Poly, Vec<Poly>),
    Groebner(Ideal),
    Member(Poly, Ideal),
    Equal(Ideal, Ideal),
    Multiply(Ideal, Ideal),
    Eliminate(Ideal, Vec<String>),
    Quotient(Ideal, Poly),
    Saturate(Ideal, Poly),
    Intersect(Vec<Ideal>),
    Kernel(SchemeMap),
    CoefficientIdeal(Ideal, Vec<String>),
    Regular(Poly, AffineChart),
    Principal(Ideal, AffineChart),
    Product(AffineChart, AffineChart),
    FibreProduct(SchemeMap, SchemeMap),
    Image(SchemeMap),
    ImageExtension(SchemeMap, Vec<String>),
    Constant(SchemeMap, SchemeMap),
    BlowupPrincipal(AffineChart, Poly),
    Blowup(AffineChart, Ideal),
    ProductForm(AffineChart, Factor, Poly),
    Restrict(OverAlgebra, AffineChart),
    RestrictMap(OverAlgebra, SchemeMap),
    Adjunction(OverAlgebra, AffineChart, AffineChart),
    IsoLocus(ClosedSub, Vec<String>),
    Constfy(SchemeMap, Vec<String>),
    Strata(ClosedSub, FibreLine),
    Bsf(AffineChart, FiniteAlgebra, Vec<Poly>),
    BsfStructure(Vec<AtlasChart>, FibreLine),
    SmallResolution,
}

fn name_arg(a: &Arg) -> &Ident {
    match a {
        Arg::Name(n) => n,
        _ => unreachable!("shape checked by the parser"),
    }
}

fn expr_arg(a: &Arg) -> &Expr {
    match a {
        Arg::Expr(e) => e,
        _ => unreachable!("shape checked by the parser"),
    }
}

fn vars_arg(a: &Arg) -> &[Ident] {
    match a {
        Arg::Vars(v) => v,
        _ => unreachable!("shape checked by the parser"),
    }
}

fn names_arg(a: &Arg) -> &[Ident] {
    match a {
        Arg::Names(v) => v,
        _ => unreachable!("shape checked by the parser"),
    }
}

/// Algebra coordinates inside `ring`: the default `e2..en` names when present, otherwise
/// fresh ones appended.
fn over_algebra(ring: &Ring, b: &FiniteAlgebra) -> bsf_core::Result<OverAlgebra> {
    let names = b.default_vars();
    if !names.is_empty() && names.iter().all(|n| ring.index_of(n).is_some()) {
        OverAlgebra::within(ring, &names, b)
    } else {
        OverAlgebra::extend(ring, b)
    }
}

fn fibre_line(env: &Env, vars: &[Ident], ring: &Ring) -> DResult<FibreLine> {
    let v = env.vars_in(vars, ring)?;
    match v.as_slice() {
        [a] => Ok(FibreLine::Affine(a.clone())),
        [u, w] => Ok(FibreLine::Projective(u.clone(), w.clone())),
        _ => Err(env.diag(
            Code::Arity,
            vars.first().map(|v| v.pos).unwrap_or(0),
            "a fibre line is one affine or two homogeneous variables",
        )),
    }
}

fn resolve(env: &Env, job: &JobFile) -> DResult<Op> {
    let a = &job.command.args;
    let cmd = job.command.name.name.as_str();
    let ideal_chart = |id: &Ident| -> DResult<(IdealEntry, AffineChart)> {
        let e = env.ideal(id)?.clone();
        let chart = env.rings[&e.ring].clone();
        Ok((e, chart))
    };
    Ok(match cmd {
        "expand" => {
            let chart = env.ring(name_arg(&a[2]))?.clone();
            Op::Expand(env.poly(expr_arg(&a[0]), chart.ring())?, chart)
        }
        "normal_form" => {
            let (e, _) = ideal_chart(name_arg(&a[2]))?;
            Op::NormalForm(env.poly(expr_arg(&a[0]), e.ideal.ring())?, e.gens)
        }
        "groebner" => Op::Groebner(env.ideal(name_arg(&a[0]))?.ideal.clone()),
        "member" => {
            let e = env.ideal(name_arg(&a[2]))?;
            Op::Member(env.poly(expr_arg(&a[0]), e.ideal.ring())?, e.ideal.clone())
        }
        "equal" | "multiply" => {
            let i = env.ideal(name_arg(&a[0]))?.ideal.clone();
            let j = env.ideal(name_arg(&a[1]))?.ideal.clone();
            if cmd == "equal" {
                Op::Equal(i, j)
            } else {
                Op::Multiply(i, j)
            }
        }
        "eliminate" => {
            let e = env.ideal(name_arg(&a[0]))?;
            Op::Eliminate(e.ideal.clone(), env.vars_in(vars_arg(&a[2]), e.ideal.ring())?)
        }
        "quotient" | "saturate" => {
            let e = env.ideal(name_arg(&a[0]))?;
            let f = env.poly(expr_arg(&a[2]), e.ideal.ring())?;
            if f.is_zero() {
                return Err(env.diag(Code::Invalid, expr_arg(&a[2]).pos, "the divisor must be nonzero"));
            }
            if cmd == "quotient" {
                Op::Quotient(e.ideal.clone(), f)
            } else {
                Op::Saturate(e.ideal.clone(), f)
            }
        }
        "intersect" => Op::Intersect(
            names_arg(&a[0]).iter().map(|n| env.ideal(n).map(|e| e.ideal.clone())).collect::<DResult<_>>()?,
        ),
        "kernel" => Op::Kernel(env.map(name_arg(&a[0]))?.scheme.clone()),
        "coefficient_ideal" => {
            let e = env.ideal(name_arg(&a[0]))?;
            Op::CoefficientIdeal(e.ideal.clone(), env.vars_in(vars_arg(&a[2]), e.ideal.ring())?)
        }
        "regular" => {
            let chart = env.ring(name_arg(&a[2]))?.clone();
            Op::Regular(env.poly(expr_arg(&a[0]), chart.ring())?, chart)
        }
        "principal" => {
            let (e, chart) = ideal_chart(name_arg(&a[0]))?;
            let i = Ideal::new(chart.ring(), e.gens).map_err(|err| env.invalid(job.command.name.pos, err))?;
            Op::Principal(i, chart)
        }
        "product" => Op::Product(env.ring(name_arg(&a[0]))?.clone(), env.ring(name_arg(&a[1]))?.clone()),
        "fibre_product" => {
            let f = env.map(name_arg(&a[0]))?.scheme.clone();
            let g = env.map(name_arg(&a[1]))?.scheme.clone();
            if f.target.name != g.target.name {
                return Err(env.diag(Code::Kind, name_arg(&a[1]).pos, "both maps must start from the same ring"));
            }
            Op::FibreProduct(f, g)
        }
        "image" => Op::Image(env.map(name_arg(&a[0]))?.scheme.clone()),
        "image_extension" => {
            let f = env.map(name_arg(&a[0]))?.scheme.clone();
            Op::ImageExtension(f, vars_arg(&a[2]).iter().map(|v| v.name.clone()).collect())
        }
        "constant" => Op::Constant(env.map(name_arg(&a[0]))?.scheme.clone(), env.map(name_arg(&a[2]))?.scheme.clone()),
        "blowup_principal" => {
            let chart = env.ring(name_arg(&a[0]))?.clone();
            Op::BlowupPrincipal(chart.clone(), env.poly(expr_arg(&a[2]), chart.ring())?)
        }
        "blowup" => {
            let (e, chart) = ideal_chart(name_arg(&a[0]))?;
            Op::Blowup(chart, e.ideal)
        }
        "product_form" | "product_form_over" => {
            let chart = env.ring(name_arg(&a[0]))?.clone();
            let factor = if cmd == "product_form" {
                Factor::Free(vars_arg(&a[2]).iter().map(|v| v.name.clone()).collect())
            } else {
                Factor::Algebra(env.algebra(name_arg(&a[2]))?.clone())
            };
            let (prod, _) = product_with_factor(&chart, &factor).map_err(|e| env.invalid(job.command.name.pos, e))?;
            Op::ProductForm(chart, factor, env.poly(expr_arg(&a[4]), prod.ring())?)
        }
        "restrict" => {
            let chart = env.ring(name_arg(&a[0]))?.clone();
            let b = env.algebra(name_arg(&a[2]))?;
            let over = over_algebra(chart.ring(), b).map_err(|e| env.invalid(name_arg(&a[0]).pos, e))?;
            Op::Restrict(over, chart)
        }
        "restrict_map" => {
            let f = env.map(name_arg(&a[0]))?.scheme.clone();
            let b = env.algebra(name_arg(&a[2]))?;
            let over = over_algebra(f.target.ring(), b).map_err(|e| env.invalid(name_arg(&a[0]).pos, e))?;
            Op::RestrictMap(over, f)
        }
        "adjunction" => {
            let chart = env.ring(name_arg(&a[0]))?.clone();
            let b = env.algebra(name_arg(&a[2]))?;
            let over = over_algebra(chart.ring(), b).map_err(|e| env.invalid(name_arg(&a[0]).pos, e))?;
            Op::Adjunction(over, chart, env.ring(name_arg(&a[4]))?.clone())
        }
        "iso_locus" | "strata" => {
            let (e, chart) = ideal_chart(name_arg(&a[0]))?;
            let z = ClosedSub { ambient: chart.clone(), ideal: e.ideal };
            if cmd == "iso_locus" {
                Op::IsoLocus(z, env.vars_in(vars_arg(&a[2]), chart.ring())?)
            } else {
                Op::Strata(z, fibre_line(env, vars_arg(&a[2]), chart.ring())?)
            }
        }
        "constfy" => {
            let f = env.map(name_arg(&a[0]))?.scheme.clone();
            let vars = env.vars_in(vars_arg(&a[2]), f.source.ring())?;
            Op::Constfy(f, vars)
        }
        "bsf" => {
            let x = env.ring(name_arg(&a[0]))?.clone();
            let b = env.algebra(name_arg(&a[2]))?.clone();
            let zid = name_arg(&a[4]);
            let (e, _) = ideal_chart(zid)?;
            let over = OverAlgebra::extend(x.ring(), &b).map_err(|err| env.invalid(zid.pos, err))?;
            if e.ideal.ring().vars() != over.ring.vars() {
                return Err(env.diag(
                    Code::Kind,
                    zid.pos,
                    format!("the center must live in {}, found {}", over.ring, e.ideal.ring()),
                ));
            }
            let gens = e.gens.iter().map(|g| g.to_ring(&over.ring)).collect::<bsf_core::Result<_>>().map_err(|err| env.invalid(zid.pos, err))?;
            Op::Bsf(x, b, gens)
        }
        "bsf_structure" => {
            let ids = names_arg(&a[0]);
            let mut atlas = Vec::new();
            let mut fibre = None;
            for id in ids {
                let (e, chart) = ideal_chart(id)?;
                let f = fibre_line(env, vars_arg(&a[2]), chart.ring())?;
                fibre = Some(f);
                atlas.push(AtlasChart { name: id.name.clone(), center: ClosedSub { ambient: chart, ideal: e.ideal } });
            }
            Op::BsfStructure(atlas, fibre.expect("at least one chart"))
        }
        "small_resolution" => Op::SmallResolution,
        other => unreachable!("command `{other}` accepted by the parser"),
    })
}

/// Parse and resolve a job file without running it.
pub fn parse_job(text: &str) -> DResult<JobFile> {
    let job = parse_syntax(text)?;
    let mut env = Env { text, ..Default::default() };
    for d in &job.decls {
        env.declare(d)?;
    }
    resolve(&env, &job)?;
    Ok(job)
}

fn strs<T: ToString>(items: &[T]) -> Vec<String> {
    items.iter().map(|p| p.to_string()).collect()
}

fn order_name(o: TermOrder) -> String {
    match o {
        TermOrder::Lex => "lex".into(),
        TermOrder::Grevlex => "grevlex".into(),
        TermOrder::Block(k) => format!("block({k})"),
    }
}

pub(crate) fn ideal_json(i: &Ideal) -> bsf_core::Result<Value> {
    Ok(json!({
        "vars": i.ring().vars(),
        "order": order_name(i.ring().order()),
        "gb": i.gb_strings()?,
        "unit": i.is_unit()?,
    }))
}

fn chart_json(c: &AffineChart) -> bsf_core::Result<Value> {
    Ok(json!({ "name": c.name, "vars": c.ring().vars(), "relations": c.modulus().gb_strings()? }))
}

fn map_json(m: &SchemeMap) -> Value {
    json!({ "source": m.source.name, "target": m.target.name, "images": strs(&m.images) })
}

fn restriction_json(r: &Restriction) -> bsf_core::Result<Value> {
    let coords: BTreeMap<String, Vec<String>> =
        r.coordinate_vars.iter().map(|(v, _)| (v.clone(), r.coordinate_names(v).unwrap_or_default())).collect();
    Ok(json!({ "restricted": chart_json(&r.restricted)?, "coordinates": coords, "equations": strs(r.restricted.modulus().gens()) }))
}

fn strata_json(r: &StratumReport) -> bsf_core::Result<Value> {
    let strata = r
        .strata
        .iter()
        .map(|s| {
            Ok(json!({
                "label": s.label.to_string(),
                "closed": s.closed.gb_strings()?,
                "frontier": s.frontier.gb_strings()?,
                "cartier": s.cartier,
                "generators": s.generators,
            }))
        })
        .collect::<bsf_core::Result<Vec<_>>>()?;
    Ok(json!({
        "base": chart_json(&r.base)?,
        "strata": strata,
        "core": r.core.ideal.gb_strings()?,
        "core_empty": r.core.is_empty()?,
        "notes": r.notes,
    }))
}

fn bsf_json(r: &BsfResult) -> bsf_core::Result<Value> {
    let comps = r
        .components
        .iter()
        .map(|c| {
            let charts = c
                .charts
                .iter()
                .map(|k| {
                    Ok(json!({
                        "chart": chart_json(&k.chart)?,
                        "open": match &k.open { Some(o) => json!(o.gb_strings()?), None => Value::Null },
                        "map": map_json(&k.map),
                        "exceptional": k.exceptional.as_ref().map(|e| e.to_string()),
                        "certificate": k.certificate,
                        "generator": k.generator,
                    }))
                })
                .collect::<bsf_core::Result<Vec<_>>>()?;
            Ok(json!({ "name": c.name, "label": c.label.map(|l| l.to_string()), "charts": charts }))
        })
        .collect::<bsf_core::Result<Vec<_>>>()?;
    let core = r.core.iter().map(|c| Ok(json!({ "chart": c.ambient.name, "gb": c.ideal.gb_strings()?, "empty": c.is_empty()? }))).collect::<bsf_core::Result<Vec<_>>>()?;
    Ok(json!({ "route": r.route, "components": comps, "core": core, "partial": r.partial, "notes": r.notes }))
}

fn restrict_chart(over: &OverAlgebra, chart: &AffineChart) -> bsf_core::Result<Restriction> {
    let eqs: Vec<Poly> = chart.modulus().gens().iter().map(|g| g.to_ring(&over.ring)).collect::<bsf_core::Result<_>>()?;
    restrict_scheme(over, &eqs, &format!("R_{}", chart.name))
}

fn execute(op: Op) -> bsf_core::Result<Value> {
    Ok(match op {
        Op::Expand(p, chart) => json!({ "poly": chart.coords.reduce(&p)?.to_string() }),
        Op::NormalForm(p, g) => json!({ "poly": normal_form(&p, &g)?.to_string() }),
        Op::Groebner(i) => ideal_json(&i)?,
        Op::Member(p, i) => json!({ "value": i.contains(&p)? }),
        Op::Equal(i, j) => json!({ "value": i.equals(&j)? }),
        Op::Multiply(i, j) => ideal_json(&i.product(&j)?)?,
        Op::Eliminate(i, keep) => ideal_json(&eliminate(&i, &keep)?)?,
        Op::Quotient(i, f) => ideal_json(&quotient(&i, &f)?)?,
        Op::Saturate(i, f) => ideal_json(&saturate(&i, &f)?)?,
        Op::Intersect(is) => ideal_json(&intersect_all(&is)?)?,
        Op::Kernel(m) => ideal_json(&ring_map_kernel(&m.ring_map()?)?)?,
        Op::CoefficientIdeal(i, vars) => ideal_json(&coefficient_ideal(&i, &vars)?)?,
        Op::Regular(p, chart) => json!({ "value": is_regular(&p, &chart.coords)? }),
        Op::Principal(i, chart) => {
            let p = is_principal_cartier(&i, &chart.coords)?;
            json!({ "status": p.tag(), "generator": p.generator().map(|g| g.to_string()) })
        }
        Op::Product(x, y) => {
            let p = product(&x, &y, None)?;
            json!({ "product": chart_json(&p.chart)?, "first": map_json(&p.first), "second": map_json(&p.second) })
        }
        Op::FibreProduct(f, g) => {
            let p = product(&f.source, &g.source, Some((&f, &g)))?;
            json!({ "product": chart_json(&p.chart)?, "first": map_json(&p.first), "second": map_json(&p.second) })
        }
        Op::Image(m) => ideal_json(&schematic_image(&m)?.ideal)?,
        Op::ImageExtension(m, vars) => {
            json!({ "value": flat_base_change_image_check(&m, &vars)?, "image": ideal_json(&schematic_image(&m)?.ideal)? })
        }
        Op::Constant(f, p) => {
            let c = constant_along_fibres(&f, &p)?;
            let descent = match &c.descent {
                Some(Descent::Found(g)) => json!(strs(g)),
                Some(Descent::NotDescendable { coordinate }) => json!({ "not_descendable": coordinate }),
                None => Value::Null,
            };
            json!({ "value": c.constant, "descent": descent, "notes": c.notes })
        }
        Op::BlowupPrincipal(x, f) => {
            let b = blowup_locally_principal(&x, &f)?;
            json!({
                "result": ideal_json(&b.result.ideal)?,
                "shaved": b.shaved_ideal.gb_strings()?,
                "empty": b.is_empty()?,
                "warnings": b.warnings,
            })
        }
        Op::Blowup(x, center) => {
            let b = blowup_rees(&x, &center)?;
            let charts = b
                .charts
                .iter()
                .map(|c| {
                    Ok(json!({
                        "index": c.index,
                        "chart": chart_json(&c.chart)?,
                        "map": map_json(&c.map),
                        "exceptional": c.exceptional.to_string(),
                        "certificate": c.certificate.tag(),
                        "slopes": c.slopes.iter().map(|(j, n)| json!({ "generator": j, "name": n })).collect::<Vec<_>>(),
                    }))
                })
                .collect::<bsf_core::Result<Vec<_>>>()?;
            let transitions: Vec<Value> = (0..b.charts.len())
                .flat_map(|i| (i + 1..b.charts.len()).map(move |j| (i, j)))
                .map(|(i, j)| json!({ "from": b.charts[i].index, "to": b.charts[j].index, "rules": b.transition(i, j) }))
                .collect();
            json!({ "charts": charts, "empty_charts": b.empty_charts, "transitions": transitions })
        }
        Op::ProductForm(x, factor, g) => {
            let p = product_form_blowup(&x, &factor, &g)?;
            json!({
                "product": chart_json(&p.product)?,
                "saturation": p.saturation.gb_strings()?,
                "w": ideal_json(&p.w.ideal)?,
            })
        }
        Op::Restrict(over, chart) => {
            let r = restrict_chart(&over, &chart)?;
            restriction_json(&r)?
        }
        Op::RestrictMap(over, f) => {
            let src_over = over_algebra(f.source.ring(), &over.algebra)?;
            let src = restrict_chart(&src_over, &f.source)?;
            let tgt = restrict_chart(&over, &f.target)?;
            let images: Vec<Poly> = f.images.iter().map(|p| p.to_ring(&src_over.ring)).collect::<bsf_core::Result<_>>()?;
            let m = restrict_map(&src, &tgt, &images)?;
            json!({ "source": restriction_json(&src)?, "target": restriction_json(&tgt)?, "map": map_json(&m) })
        }
        Op::Adjunction(over, chart, t) => {
            let r = restrict_chart(&over, &chart)?;
            let grid: Vec<Rational> = (-3..=3).map(rat).collect();
            let rep = adjunction_check(&r, &t, &grid, 200_000)?;
            json!({ "restriction": restriction_json(&r)?, "report": rep })
        }
        Op::IsoLocus(z, vars) => {
            let l = iso_locus(&z, &Fibre::Free(vars))?;
            json!({ "base": chart_json(&l.base)?, "locus": ideal_json(&l.locus.ideal)?, "empty": l.locus.is_empty()? })
        }
        Op::Constfy(f, vars) => {
            let c = constfy(&f, &Fibre::Free(vars))?;
            json!({
                "base": chart_json(&c.base)?,
                "locus": ideal_json(&c.locus.ideal)?,
                "empty": c.locus.is_empty()?,
                "descended": c.descended_map.as_ref().map(map_json),
            })
        }
        Op::Strata(z, fibre) => strata_json(&flattening_strata(&z, &fibre, None)?)?,
        Op::Bsf(x, b, gens) => {
            let r = bsf_pipeline(&x, &b, &gens)?;
            let mut v = bsf_json(&r)?;
            let stages = r
                .stages
                .iter()
                .map(|s| {
                    Ok(json!({
                        "rees_chart": s.rees_index,
                        "restriction": s.restriction.restricted.name,
                        "constant_sections": s.constfy_locus.ideal.gb_strings()?,
                        "center_generator": s.center_generator.to_string(),
                    }))
                })
                .collect::<bsf_core::Result<Vec<_>>>()?;
            v["stages"] = json!(stages);
            v
        }
        Op::BsfStructure(atlas, fibre) => bsf_json(&bsf_structure(&atlas, &fibre)?)?,
        Op::SmallResolution => {
            let checks = verify_small_resolution_fixture()?;
            json!({ "passed": checks.iter().all(|c| c.passed), "checks": checks })
        }
    })
}

/// Outcome of a job: the output document and the process exit code.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub doc: Value,
    pub exit: i32,
}

pub fn diagnostic_doc(d: &Diagnostic) -> Value {
    json!({
        "schema": 1,
        "status": "error",
        "error": { "code": d.code.as_str(), "kind": d.code.label(), "line": d.line, "col": d.col, "message": d.message },
    })
}

pub fn error_doc(command: &str, e: &Error) -> (Value, i32) {
    let (code, tag, exit) = match e {
        Error::Math { tag, .. } => ("math", Some(*tag), 2),
        Error::Budget(_) => ("budget", Some("budget"), 3),
        Error::Invalid(_) | Error::Parse { .. } | Error::RingMismatch(_) => ("usage", None, 1),
    };
    (
        json!({ "schema": 1, "status": "error", "command": command, "error": { "code": code, "tag": tag, "message": e.to_string() } }),
        exit,
    )
}

/// Parse, resolve and run a job file.
pub fn run_text(text: &str) -> Outcome {
    let job = match parse_syntax(text) {
        Ok(j) => j,
        Err(d) => return Outcome { doc: diagnostic_doc(&d), exit: 1 },
    };
    let mut env = Env { text, ..Default::default() };
    for d in &job.decls {
        if let Err(diag) = env.declare(d) {
            return Outcome { doc: diagnostic_doc(&diag), exit: 1 };
        }
    }
    let op = match resolve(&env, &job) {
        Ok(op) => op,
        Err(d) => return Outcome { doc: diagnostic_doc(&d), exit: 1 },
    };
    let command = job.command.name.name.clone();
    match execute(op) {
        Ok(result) => Outcome { doc: json!({ "schema": 1, "status": "ok", "command": command, "result": result }), exit: 0 },
        Err(e) => {
            let (doc, exit) = error_doc(&command, &e);
            Outcome { doc, exit }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn saturate_job_prints_y() {
        let out = run_text("ring R = QQ[x, y] grevlex;\nideal I = (x*y) in R;\nrun saturate I by x;");
        assert_eq!(out.exit, 0);
        assert_eq!(out.doc["result"]["gb"], json!(["y"]));
    }

    #[test]
    fn undeclared_names_are_reported_with_position() {
        let out = run_text("ring R = QQ[x];\nrun groebner J;");
        assert_eq!(out.exit, 1);
        assert_eq!(out.doc["error"]["code"], "E002");
        assert_eq!(out.doc["error"]["line"], 2);
        assert_eq!(out.doc["error"]["col"], 14);
        let err = parse_job("ring R = QQ[x];\nideal I = (x + q) in R;\nrun groebner I;").unwrap_err();
        assert_eq!(err.code, Code::Undeclared);
    }

    #[test]
    fn map_arity_and_kind_errors() {
        let err = parse_job("ring R = QQ[x, y];\nring S = QQ[t];\nmap f : R -> S = (t);\nrun kernel f;").unwrap_err();
        assert_eq!(err.code, Code::Arity);
        let err = parse_job("ring R = QQ[x];\nrun groebner R;").unwrap_err();
        assert_eq!(err.code, Code::Kind);
    }

    #[test]
    fn math_failures_exit_with_two() {
        let text = "algebra B dim 2;\ne2*e2 = 1;\nring X = QQ[x];\nrun product_form_over X over B center (e2 - 1)*x;";
        let out = run_text(text);
        assert_eq!(out.exit, 2, "{}", out.doc);
        assert_eq!(out.doc["error"]["tag"], "product form violated");
    }
}
