//! Blow-ups: along a locally principal center by saturation, along a finitely generated
//! center by affine Rees charts, and the product-form descent of a saturation.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::{eliminate, is_principal_cartier, is_regular, saturate, Ideal, Principality};
use crate::poly::{fresh_name, Poly, Ring};
use crate::scheme::{AffineChart, ClosedSub, SchemeMap};
use crate::weil::{FiniteAlgebra, OverAlgebra};

#[derive(Clone, Debug)]
pub struct LocallyPrincipalBlowup {
    pub ambient: AffineChart,
    pub center_generator: Poly,
    pub result: ClosedSub,
    /// The saturation `(modulus : f^∞)`.
    pub shaved_ideal: Ideal,
    pub warnings: Vec<String>,
}

impl LocallyPrincipalBlowup {
    pub fn is_empty(&self) -> Result<bool> {
        self.result.is_empty()
    }
}

pub fn blowup_locally_principal(x: &AffineChart, f: &Poly) -> Result<LocallyPrincipalBlowup> {
    f.same_ring(&x.ring().zero())?;
    let mut warnings = Vec::new();
    let shaved = if x.coords.is_zero(f)? {
        warnings.push(format!("center {f} vanishes on {}: the blow-up is empty", x.name));
        Ideal::unit(x.ring())
    } else {
        saturate(x.modulus(), f)?
    };
    let result = ClosedSub { ambient: x.clone(), ideal: shaved.clone() };
    if !shaved.is_unit()? && !is_regular(f, &result.as_chart("r").coords)? {
        return Err(Error::math("not regular", format!("{f} is a zero divisor after saturation")));
    }
    Ok(LocallyPrincipalBlowup { ambient: x.clone(), center_generator: f.clone(), result, shaved_ideal: shaved, warnings })
}

/// `h: T -> X` factors through the closed subscheme `w` of `X`.
pub fn factors_through(h: &SchemeMap, w: &ClosedSub) -> Result<bool> {
    let pulled = h.pull_ideal(&w.ideal)?;
    h.source.modulus().contains_ideal(&pulled)
}

#[derive(Clone, Debug)]
pub struct ReesChart {
    /// Index of the center generator that becomes the local equation here.
    pub index: usize,
    pub chart: AffineChart,
    /// `chart -> ambient`, forgetting the slope variables.
    pub map: SchemeMap,
    pub exceptional: Poly,
    pub certificate: Principality,
    /// `(j, name)` of the slope variable standing for `g_j / g_index`.
    pub slopes: Vec<(usize, String)>,
}

#[derive(Clone, Debug)]
pub struct ReesBlowup {
    pub ambient: AffineChart,
    pub center: Ideal,
    pub charts: Vec<ReesChart>,
    /// Indices whose chart came out empty (the generator vanishes on the blow-up).
    pub empty_charts: Vec<usize>,
}

/// Certificate that the pulled-back center is generated by `candidate` and regular.
pub fn certify_exceptional(center: &[Poly], chart: &AffineChart, candidate: &Poly) -> Result<Principality> {
    let full = chart.modulus().with(center)?;
    let principal = chart.modulus().with(std::slice::from_ref(candidate))?;
    if full.equals(&principal)? && !chart.coords.is_zero(candidate)? && is_regular(candidate, &chart.coords)? {
        return Ok(Principality::Cartier(candidate.clone()));
    }
    let ideal = Ideal::new(chart.ring(), center.to_vec())?;
    is_principal_cartier(&ideal, &chart.coords)
}

pub fn blowup_rees(x: &AffineChart, center: &Ideal) -> Result<ReesBlowup> {
    center.same_ring(x.modulus())?;
    let gens: Vec<Poly> = center.gens().to_vec();
    if gens.is_empty() || gens.iter().all(|g| x.coords.is_zero(g).unwrap_or(false)) {
        return Err(Error::invalid("blow-up along the zero ideal"));
    }
    let nx = x.ring().nvars();
    let mut taken: Vec<String> = x.ring().vars().to_vec();
    let slope_names: Vec<String> = (0..gens.len())
        .map(|j| {
            let n = fresh_name(&taken, &format!("t{j}"));
            taken.push(n.clone());
            n
        })
        .collect();
    let mut charts = Vec::new();
    let mut empty_charts = Vec::new();
    for (i, gi) in gens.iter().enumerate() {
        if x.coords.is_zero(gi)? {
            empty_charts.push(i);
            continue;
        }
        let slopes: Vec<(usize, String)> =
            (0..gens.len()).filter(|&j| j != i).map(|j| (j, slope_names[j].clone())).collect();
        let names = x.ring().vars().iter().cloned().chain(slopes.iter().map(|(_, n)| n.clone()));
        let ring = Ring::new(names, x.ring().order())?;
        let lift = |p: &Poly| p.map_vars(&ring, &(0..nx).collect::<Vec<_>>());
        let gi_up = lift(gi);
        let mut rel: Vec<Poly> = x.modulus().gens().iter().map(lift).collect();
        for (k, (j, _)) in slopes.iter().enumerate() {
            rel.push(ring.var(nx + k).mul(&gi_up).sub(&lift(&gens[*j])));
        }
        let ideal = saturate(&Ideal::new(&ring, rel)?, &gi_up)?;
        if ideal.is_unit()? {
            empty_charts.push(i);
            continue;
        }
        let chart = AffineChart::new(format!("{}_bl{i}", x.name), ideal);
        let map = SchemeMap::new(&chart, x, (0..nx).map(|v| ring.var(v)).collect())?;
        let pulled: Vec<Poly> = gens.iter().map(lift).collect();
        let certificate = certify_exceptional(&pulled, &chart, &gi_up)?;
        charts.push(ReesChart { index: i, chart, map, exceptional: gi_up, certificate, slopes });
    }
    Ok(ReesBlowup { ambient: x.clone(), center: center.clone(), charts, empty_charts })
}

impl ReesBlowup {
    /// Formal transition `t_k -> t_k / t_j` (and `t_i -> 1 / t_j`) between charts `i` and `j`.
    pub fn transition(&self, a: usize, b: usize) -> Vec<String> {
        let (ca, cb) = (&self.charts[a], &self.charts[b]);
        let name_in_a = |k: usize| ca.slopes.iter().find(|(j, _)| *j == k).map(|(_, n)| n.clone());
        let denom = name_in_a(cb.index).unwrap_or_default();
        cb.slopes
            .iter()
            .map(|(k, n)| match name_in_a(*k) {
                Some(num) => format!("{n} = {num}/{denom}"),
                None => format!("{n} = 1/{denom}"),
            })
            .collect()
    }

    /// Chart `b`'s ideal pulls into chart `a` localized at the slope of `b`'s generator.
    pub fn overlap_consistent(&self, a: usize, b: usize) -> Result<bool> {
        let (ca, cb) = (&self.charts[a], &self.charts[b]);
        let ra = ca.chart.ring();
        let Some(pos) = ca.slopes.iter().position(|(j, _)| *j == cb.index) else {
            return Err(Error::invalid("charts do not overlap"));
        };
        let nx = self.ambient.ring().nvars();
        let mut names = ra.vars().to_vec();
        let inv = fresh_name(&names, "s");
        names.push(inv);
        let ring = Ring::new(names, ra.order())?;
        let up = |p: &Poly| p.map_vars(&ring, &(0..ra.nvars()).collect::<Vec<_>>());
        let s = ring.var(ra.nvars());
        let tb = ring.var(nx + pos);
        let mut gens: Vec<Poly> = ca.chart.modulus().gens().iter().map(up).collect();
        gens.push(s.mul(&tb).sub(&ring.one()));
        let localized = Ideal::new(&ring, gens)?;
        let mut images: Vec<Poly> = (0..nx).map(|v| ring.var(v)).collect();
        for (k, _) in &cb.slopes {
            let img = if *k == ca.index {
                s.clone()
            } else {
                let p = ca.slopes.iter().position(|(j, _)| j == k).unwrap();
                ring.var(nx + p).mul(&s)
            };
            images.push(img);
        }
        for g in cb.chart.modulus().gens() {
            if !localized.contains(&g.substitute(&ring, &images))? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Second factor of a product-form blow-up.
#[derive(Clone, Debug)]
pub enum Factor {
    /// Free polynomial variables (fresh names, appended).
    Free(Vec<String>),
    /// A finite free algebra, presented by its table relations.
    Algebra(FiniteAlgebra),
}

#[derive(Clone, Debug)]
pub struct ProductFormBlowup {
    pub product: AffineChart,
    pub factor_vars: Vec<String>,
    pub saturation: Ideal,
    pub w: ClosedSub,
}

/// `X × factor` with the factor variables appended.
pub fn product_with_factor(x: &AffineChart, factor: &Factor) -> Result<(AffineChart, Vec<String>)> {
    match factor {
        Factor::Free(vars) => {
            for v in vars {
                if x.ring().index_of(v).is_some() {
                    return Err(Error::invalid(format!("factor variable {v} clashes with the ambient")));
                }
            }
            Ok((x.extend_free(vars)?, vars.clone()))
        }
        Factor::Algebra(b) => {
            let over = OverAlgebra::extend(x.ring(), b)?;
            let modulus = x.modulus().extend_to(&over.ring)?.with(&over.relations())?;
            Ok((AffineChart::new(format!("{}_x_{}", x.name, b.name), modulus), over.e_names()))
        }
    }
}

/// Saturate `X × factor` along `z_gen`, contract to `X` and check the saturation is
/// extended from that contraction.
pub fn product_form_blowup(x: &AffineChart, factor: &Factor, z_gen: &Poly) -> Result<ProductFormBlowup> {
    let (product, factor_vars) = product_with_factor(x, factor)?;
    z_gen
        .same_ring(&product.ring().zero())
        .map_err(|_| Error::invalid(format!("center generator {z_gen} must live in {}", product.ring())))?;
    let sat = if product.coords.is_zero(z_gen)? { Ideal::unit(product.ring()) } else { saturate(product.modulus(), z_gen)? };
    let contracted = eliminate(&sat, x.ring().vars())?;
    let contracted = Ideal::new(x.ring(), contracted.gens().iter().map(|g| g.to_ring(x.ring())).collect::<Result<_>>()?)?;
    let extended = contracted.extend_to(product.ring())?.sum(product.modulus())?;
    if !extended.equals(&sat)? {
        return Err(Error::math(
            "product form violated",
            format!(
                "saturation {:?} is not extended from {:?}",
                sat.gb_strings()?,
                contracted.gb_strings()?
            ),
        ));
    }
    let w = ClosedSub { ambient: x.clone(), ideal: contracted.sum(x.modulus())? };
    Ok(ProductFormBlowup { product, factor_vars, saturation: sat, w })
}

/// Exceptional-divisor summary shared by reports.
#[derive(Clone, Debug, Serialize)]
pub struct CartierCertificate {
    pub generator: String,
    pub status: String,
}

impl CartierCertificate {
    pub fn from(p: &Principality) -> CartierCertificate {
        CartierCertificate {
            generator: p.generator().map(|g| g.to_string()).unwrap_or_default(),
            status: p.tag().to_string(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::intersect_all;

    fn chart(vars: &[&str], gens: &[&str]) -> AffineChart {
        let r = Ring::grevlex(vars);
        AffineChart::new("X", Ideal::of(&r, gens))
    }

    #[test]
    fn saturation_blowups() {
        let x = chart(&["x", "y"], &["x*y"]);
        let b = blowup_locally_principal(&x, &x.ring().p("x")).unwrap();
        assert!(b.shaved_ideal.equals(&Ideal::of(x.ring(), &["y"])).unwrap());

        let x = chart(&["x", "y"], &["y^2", "x*y"]);
        let b = blowup_locally_principal(&x, &x.ring().p("x")).unwrap();
        assert!(b.result.ideal.equals(&Ideal::of(x.ring(), &["y"])).unwrap());

        let x = chart(&["x", "y"], &[]);
        let b = blowup_locally_principal(&x, &x.ring().p("x")).unwrap();
        assert!(b.result.equals(&ClosedSub::whole(&x)).unwrap());

        let x = chart(&["x", "y"], &["y^2", "x*y"]);
        let b = blowup_locally_principal(&x, &x.ring().p("y")).unwrap();
        assert!(b.is_empty().unwrap());
        assert_eq!(b.warnings.len(), 0);
        let b = blowup_locally_principal(&x, &x.ring().p("x*y")).unwrap();
        assert!(b.is_empty().unwrap());
        assert_eq!(b.warnings.len(), 1);
    }

    #[test]
    fn saturation_matches_associated_primes() {
        // (y^2, xy) = (y) ∩ (x, y^2); only the embedded prime (x, y) contains x.
        let x = chart(&["x", "y"], &["y^2", "x*y"]);
        let r = x.ring().clone();
        let comps = [(Ideal::of(&r, &["y"]), Ideal::of(&r, &["y"])), (Ideal::of(&r, &["x", "y^2"]), Ideal::of(&r, &["x", "y"]))];
        assert!(intersect_all(&comps.iter().map(|c| c.0.clone()).collect::<Vec<_>>()).unwrap().equals(x.modulus()).unwrap());
        for f in ["x", "y", "x + y", "x - 1"] {
            let f = r.p(f);
            let kept: Vec<Ideal> = comps.iter().filter(|(_, p)| !p.contains(&f).unwrap()).map(|c| c.0.clone()).collect();
            let expect = if kept.is_empty() { Ideal::unit(&r) } else { intersect_all(&kept).unwrap() };
            let b = blowup_locally_principal(&x, &f).unwrap();
            assert!(b.result.ideal.equals(&expect).unwrap(), "center {f}");
        }
    }

    #[test]
    fn universal_property_and_idempotence() {
        let x = chart(&["x", "y"], &["x*y"]);
        let f = x.ring().p("x");
        let b = blowup_locally_principal(&x, &f).unwrap();
        let t = AffineChart::affine_space("T", &Ring::grevlex(&["s"]));
        // s -> (s, 0): x pulls back to s, regular on T, so it factors.
        let h = SchemeMap::new(&t, &x, vec![t.ring().p("s"), t.ring().zero()]).unwrap();
        assert!(factors_through(&h, &b.result).unwrap());
        // s -> (0, s): x pulls back to zero, and the map does not factor.
        let h = SchemeMap::new(&t, &x, vec![t.ring().zero(), t.ring().p("s")]).unwrap();
        assert!(!factors_through(&h, &b.result).unwrap());

        let once = b.result.as_chart("W");
        let twice = blowup_locally_principal(&once, &f).unwrap();
        assert!(twice.result.equals(&ClosedSub::whole(&once)).unwrap());
    }

    #[test]
    fn rees_origin_of_plane() {
        let x = chart(&["x", "y"], &[]);
        let bl = blowup_rees(&x, &Ideal::of(x.ring(), &["x", "y"])).unwrap();
        assert_eq!(bl.charts.len(), 2);
        for c in &bl.charts {
            assert!(matches!(c.certificate, Principality::Cartier(_)));
        }
        // Oracle: kernel of Q[x,y,t1] -> Q[x,t1], y -> t1 x.
        let c0 = &bl.charts[0];
        let r = c0.chart.ring().clone();
        assert!(c0.chart.modulus().equals(&Ideal::of(&r, &["y - t1*x"])).unwrap());
        assert_eq!(c0.exceptional, r.p("x"));
        let c1 = &bl.charts[1];
        assert!(c1.chart.modulus().equals(&Ideal::of(c1.chart.ring(), &["x - t0*y"])).unwrap());
        assert!(bl.overlap_consistent(0, 1).unwrap());
        assert!(bl.overlap_consistent(1, 0).unwrap());
        assert_eq!(bl.transition(0, 1), vec!["t0 = 1/t1".to_string()]);
    }

    #[test]
    fn rees_principal_and_zero_centers() {
        let x = chart(&["x", "y"], &[]);
        let bl = blowup_rees(&x, &Ideal::of(x.ring(), &["x*y"])).unwrap();
        assert_eq!(bl.charts.len(), 1);
        assert!(bl.charts[0].chart.modulus().is_zero());
        assert!(blowup_rees(&x, &Ideal::zero(x.ring())).is_err());
    }

    #[test]
    fn rees_graph_center_on_chart() {
        // Chart u = 1 of P^1 × A^3: center (z, v*x - y).
        let x = chart(&["v", "x", "y", "z"], &[]);
        let bl = blowup_rees(&x, &Ideal::of(x.ring(), &["z", "v*x - y"])).unwrap();
        assert_eq!(bl.charts.len(), 2);
        let c0 = &bl.charts[0];
        assert!(c0.chart.modulus().equals(&Ideal::of(c0.chart.ring(), &["v*x - y - t1*z"])).unwrap());
        assert_eq!(c0.exceptional, c0.chart.ring().p("z"));
        let c1 = &bl.charts[1];
        assert!(c1.chart.modulus().equals(&Ideal::of(c1.chart.ring(), &["z - t0*(v*x - y)"])).unwrap());
        assert!(bl.overlap_consistent(0, 1).unwrap());
    }

    #[test]
    fn product_form_examples() {
        let x = chart(&["x", "y"], &["x*y"]);
        let (p, _) = product_with_factor(&x, &Factor::Free(vec!["t".into()])).unwrap();
        let pf = product_form_blowup(&x, &Factor::Free(vec!["t".into()]), &p.ring().p("x")).unwrap();
        assert!(pf.w.ideal.equals(&Ideal::of(x.ring(), &["y"])).unwrap());
        assert!(pf.saturation.equals(&saturate(p.modulus(), &p.ring().p("x")).unwrap()).unwrap());

        let line = chart(&["x"], &[]);
        let (p, _) = product_with_factor(&line, &Factor::Free(vec!["t".into()])).unwrap();
        let pf = product_form_blowup(&line, &Factor::Free(vec!["t".into()]), &p.ring().p("x")).unwrap();
        assert!(pf.w.equals(&ClosedSub::whole(&line)).unwrap());

        let b = FiniteAlgebra::quadratic("B", crate::poly::rat(1));
        let (p, _) = product_with_factor(&line, &Factor::Algebra(b.clone())).unwrap();
        let err = product_form_blowup(&line, &Factor::Algebra(b), &p.ring().p("(e2 - 1)*x")).unwrap_err();
        assert!(matches!(err, Error::Math { tag, .. } if tag == "product form violated"));
    }
}
