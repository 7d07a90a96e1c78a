//! Affine charts, morphisms, closed subschemes, (fibre) products, schematic images and
//! the constant-along-the-fibres test with its descent witness.

use crate::error::{Error, Result};
use crate::groebner::{self, groebner};
use crate::ideal::{ring_map_kernel, Ideal, QuotientRing, RingMap};
use crate::poly::{fresh_name, Poly, Ring, TermOrder};

#[derive(Clone, Debug)]
pub struct AffineChart {
    pub name: String,
    pub coords: QuotientRing,
}

impl AffineChart {
    pub fn new(name: impl Into<String>, modulus: Ideal) -> AffineChart {
        AffineChart { name: name.into(), coords: QuotientRing::new(modulus) }
    }

    pub fn affine_space(name: impl Into<String>, ring: &Ring) -> AffineChart {
        AffineChart::new(name, Ideal::zero(ring))
    }

    pub fn ring(&self) -> &Ring {
        &self.coords.ring
    }

    pub fn modulus(&self) -> &Ideal {
        &self.coords.modulus
    }

    pub fn is_empty(&self) -> Result<bool> {
        self.coords.modulus.is_unit()
    }

    /// `self × A^k` in the given fresh variable names (appended).
    pub fn extend_free(&self, vars: &[String]) -> Result<AffineChart> {
        let names: Vec<String> = self.ring().vars().iter().chain(vars.iter()).cloned().collect();
        let ring = Ring::new(names, self.ring().order())?;
        Ok(AffineChart::new(self.name.clone(), self.modulus().extend_to(&ring)?))
    }

    pub fn identity(&self) -> SchemeMap {
        let images = (0..self.ring().nvars()).map(|i| self.ring().var(i)).collect();
        SchemeMap { source: self.clone(), target: self.clone(), images }
    }
}

/// Morphism `source -> target`, stored as the images of the target coordinates in the
/// source ring.
#[derive(Clone, Debug)]
pub struct SchemeMap {
    pub source: AffineChart,
    pub target: AffineChart,
    pub images: Vec<Poly>,
}

impl SchemeMap {
    pub fn new(source: &AffineChart, target: &AffineChart, images: Vec<Poly>) -> Result<SchemeMap> {
        let map = SchemeMap::unchecked(source, target, images)?;
        for g in target.modulus().gens() {
            let pulled = map.pull(g);
            if !source.modulus().contains(&pulled)? {
                return Err(Error::invalid(format!(
                    "map {} -> {} does not respect relation {g}",
                    source.name, target.name
                )));
            }
        }
        Ok(map)
    }

    /// Construct without checking that target relations pull back into the source modulus.
    pub fn unchecked(source: &AffineChart, target: &AffineChart, images: Vec<Poly>) -> Result<SchemeMap> {
        if images.len() != target.ring().nvars() {
            return Err(Error::invalid(format!(
                "map to {} needs {} coordinate images, got {}",
                target.name,
                target.ring().nvars(),
                images.len()
            )));
        }
        for p in &images {
            p.same_ring(&source.ring().zero())
                .map_err(|_| Error::invalid(format!("image {p} does not live in {}", source.ring())))?;
        }
        Ok(SchemeMap { source: source.clone(), target: target.clone(), images })
    }

    pub fn pull(&self, f: &Poly) -> Poly {
        f.substitute(self.source.ring(), &self.images)
    }

    pub fn pull_ideal(&self, i: &Ideal) -> Result<Ideal> {
        let gens: Vec<Poly> = i.gens().iter().map(|g| self.pull(g)).collect();
        self.source.modulus().with(&gens)
    }

    pub fn ring_map(&self) -> Result<RingMap> {
        RingMap::new(self.target.ring(), self.source.coords.clone(), self.images.clone())
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SchemeMap) -> Result<SchemeMap> {
        if self.target.ring() != other.source.ring() {
            return Err(Error::RingMismatch("composition of incompatible maps".into()));
        }
        let images = other.images.iter().map(|g| self.pull(g)).collect();
        SchemeMap::unchecked(&self.source, &other.target, images)
    }
}

/// Closed subscheme, its ideal presented upstairs (ambient modulus included).
#[derive(Clone, Debug)]
pub struct ClosedSub {
    pub ambient: AffineChart,
    pub ideal: Ideal,
}

impl ClosedSub {
    pub fn new(ambient: &AffineChart, gens: Vec<Poly>) -> Result<ClosedSub> {
        let ideal = ambient.modulus().with(&gens)?;
        Ok(ClosedSub { ambient: ambient.clone(), ideal })
    }

    pub fn whole(ambient: &AffineChart) -> ClosedSub {
        ClosedSub { ambient: ambient.clone(), ideal: ambient.modulus().clone() }
    }

    pub fn as_chart(&self, name: impl Into<String>) -> AffineChart {
        AffineChart::new(name, self.ideal.clone())
    }

    pub fn is_empty(&self) -> Result<bool> {
        self.ideal.is_unit()
    }

    pub fn equals(&self, other: &ClosedSub) -> Result<bool> {
        self.ideal.equals(&other.ideal)
    }

    /// Preimage along a map into the ambient.
    pub fn pullback(&self, f: &SchemeMap) -> Result<ClosedSub> {
        Ok(ClosedSub { ambient: f.source.clone(), ideal: f.pull_ideal(&self.ideal)? })
    }
}

#[derive(Clone, Debug)]
pub struct Product {
    pub chart: AffineChart,
    pub first: SchemeMap,
    pub second: SchemeMap,
    /// Variables of the second factor that were renamed: (old, new).
    pub renamed: Vec<(String, String)>,
}

/// `x × y`, or `x ×_s y` when both structure maps are given. Variables of `y` that clash
/// are renamed by appending `_p` (then a counter).
pub fn product(x: &AffineChart, y: &AffineChart, over: Option<(&SchemeMap, &SchemeMap)>) -> Result<Product> {
    let mut names: Vec<String> = x.ring().vars().to_vec();
    let mut renamed = Vec::new();
    for v in y.ring().vars() {
        if names.contains(v) {
            let n = fresh_name(&names, &format!("{v}_p"));
            renamed.push((v.clone(), n.clone()));
            names.push(n);
        } else {
            names.push(v.clone());
        }
    }
    let nx = x.ring().nvars();
    let ring = Ring::new(names, x.ring().order())?;
    let from_x: Vec<usize> = (0..nx).collect();
    let from_y: Vec<usize> = (nx..ring.nvars()).collect();
    let mut gens: Vec<Poly> = x.modulus().gens().iter().map(|g| g.map_vars(&ring, &from_x)).collect();
    gens.extend(y.modulus().gens().iter().map(|g| g.map_vars(&ring, &from_y)));
    if let Some((p, q)) = over {
        if p.source.ring() != x.ring() || q.source.ring() != y.ring() || p.target.ring() != q.target.ring() {
            return Err(Error::invalid("fibre product needs maps x -> s and y -> s"));
        }
        for (a, b) in p.images.iter().zip(&q.images) {
            gens.push(a.map_vars(&ring, &from_x).sub(&b.map_vars(&ring, &from_y)));
        }
    }
    let name = match over {
        Some((p, _)) => format!("{}_x_{}_{}", x.name, p.target.name, y.name),
        None => format!("{}_x_{}", x.name, y.name),
    };
    let chart = AffineChart::new(name, Ideal::new(&ring, gens)?);
    let first = SchemeMap::unchecked(&chart, x, from_x.iter().map(|&i| ring.var(i)).collect())?;
    let second = SchemeMap::unchecked(&chart, y, from_y.iter().map(|&i| ring.var(i)).collect())?;
    Ok(Product { chart, first, second, renamed })
}

/// Smallest closed subscheme of the target through which `f` factors: the kernel of `f♯`.
pub fn schematic_image(f: &SchemeMap) -> Result<ClosedSub> {
    let kernel = ring_map_kernel(&f.ring_map()?)?;
    let ideal = f.target.modulus().sum(&kernel.extend_to(f.target.ring())?)?;
    let image = ClosedSub { ambient: f.target.clone(), ideal };
    debug_assert!(f.pull_ideal(&image.ideal).and_then(|i| i.equals(f.source.modulus())).unwrap_or(true));
    Ok(image)
}

/// Compare the image of `f × id` over `A^k` with the extension of the image of `f`.
pub fn flat_base_change_image_check(f: &SchemeMap, free_vars: &[String]) -> Result<bool> {
    let mut taken: Vec<String> = f.source.ring().vars().to_vec();
    taken.extend(f.target.ring().vars().iter().cloned());
    let mut fresh = Vec::new();
    for v in free_vars {
        let n = fresh_name(&taken, v);
        taken.push(n.clone());
        fresh.push(n);
    }
    let src = f.source.extend_free(&fresh)?;
    let tgt = f.target.extend_free(&fresh)?;
    let mut images: Vec<Poly> = f.images.iter().map(|p| p.to_ring(src.ring())).collect::<Result<_>>()?;
    let n = f.source.ring().nvars();
    for k in 0..fresh.len() {
        images.push(src.ring().var(n + k));
    }
    let fx = SchemeMap::unchecked(&src, &tgt, images)?;
    let lifted = schematic_image(&fx)?;
    let extended = schematic_image(f)?.ideal.extend_to(tgt.ring())?;
    lifted.ideal.equals(&extended)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Descent {
    /// Images of the target coordinates as functions on the base.
    Found(Vec<Poly>),
    /// A coordinate has no normal form in the base variables alone.
    NotDescendable { coordinate: String },
}

#[derive(Clone, Debug)]
pub struct Constancy {
    pub constant: bool,
    /// Present when `constant` holds.
    pub descent: Option<Descent>,
    pub notes: Vec<String>,
}

/// Express `f` (a function on `p.source`) as `g ∘ p` modulo the source modulus, using a
/// block order that eliminates the source variables.
pub fn descend_function(f: &Poly, p: &SchemeMap) -> Result<Option<Poly>> {
    Ok(descend_functions(std::slice::from_ref(f), p)?.remove(0))
}

/// [`descend_function`] for several functions, sharing one Groebner basis.
pub fn descend_functions(fs: &[Poly], p: &SchemeMap) -> Result<Vec<Option<Poly>>> {
    let xs = p.source.ring();
    let ys = p.target.ring();
    let mut names: Vec<String> = xs.vars().to_vec();
    for v in ys.vars() {
        let n = if names.contains(v) { fresh_name(&names, &format!("{v}_b")) } else { v.clone() };
        names.push(n);
    }
    let k = xs.nvars();
    let ext = Ring::new(names, TermOrder::Block(k))?;
    let from_x: Vec<usize> = (0..k).collect();
    let mut gens: Vec<Poly> = p.source.modulus().gens().iter().map(|g| g.map_vars(&ext, &from_x)).collect();
    for (j, img) in p.images.iter().enumerate() {
        gens.push(ext.var(k + j).sub(&img.map_vars(&ext, &from_x)));
    }
    let gb = groebner(&gens)?;
    let back: Vec<usize> = (0..ext.nvars()).map(|i| i.saturating_sub(k)).collect();
    fs.iter()
        .map(|f| {
            let nf = groebner::reduce(&f.map_vars(&ext, &from_x), &gb);
            if (0..k).any(|i| nf.involves(i)) {
                return Ok(None);
            }
            Ok(Some(p.target.coords.reduce(&nf.map_vars(ys, &back))?))
        })
        .collect()
}

/// Does `f` take equal values on the two factors of `X ×_Y X`? If so, try to descend it
/// along `p`.
pub fn constant_along_fibres(f: &SchemeMap, p: &SchemeMap) -> Result<Constancy> {
    if f.source.ring() != p.source.ring() {
        return Err(Error::invalid("f and p must share their source"));
    }
    let x = &f.source;
    let prod = product(x, x, Some((p, p)))?;
    let mut constant = true;
    for img in &f.images {
        let a = prod.first.pull(img);
        let b = prod.second.pull(img);
        if !prod.chart.modulus().contains(&a.sub(&b))? {
            constant = false;
            break;
        }
    }
    let mut notes = vec!["fpqc hypothesis on the projection is assumed, not certified".to_string()];
    if !constant {
        return Ok(Constancy { constant, descent: None, notes });
    }
    let mut images = Vec::new();
    for (w, img) in f.target.ring().vars().iter().zip(&f.images) {
        match descend_function(img, p)? {
            Some(g) => images.push(g),
            None => {
                notes.push(format!("coordinate {w} is not descendable in presentation"));
                return Ok(Constancy {
                    constant,
                    descent: Some(Descent::NotDescendable { coordinate: w.clone() }),
                    notes,
                });
            }
        }
    }
    Ok(Constancy { constant, descent: Some(Descent::Found(images)), notes })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn products() {
        let a = AffineChart::affine_space("A", &Ring::grevlex(&["a"]));
        let c = AffineChart::affine_space("C", &Ring::grevlex(&["c"]));
        let p = product(&a, &c, None).unwrap();
        assert_eq!(p.chart.ring().vars(), &names(&["a", "c"])[..]);
        assert!(p.chart.modulus().is_zero());

        let r = Ring::grevlex(&["x", "y"]);
        let x = AffineChart::new("X", Ideal::of(&r, &["x*y"]));
        let t = AffineChart::affine_space("T", &Ring::grevlex(&["t"]));
        let p = product(&x, &t, None).unwrap();
        let expect = Ideal::of(p.chart.ring(), &["x*y"]);
        assert!(p.chart.modulus().equals(&expect).unwrap());

        let d = AffineChart::new("D", Ideal::of(&r, &["x - y"]));
        let s = Ring::grevlex(&["s"]);
        let line = AffineChart::affine_space("L", &s);
        let to_line = SchemeMap::new(&d, &line, vec![r.p("x")]).unwrap();
        let fp = product(&d, &d, Some((&to_line, &to_line))).unwrap();
        let fr = fp.chart.ring().clone();
        assert_eq!(fr.vars(), &names(&["x", "y", "x_p", "y_p"])[..]);
        let expect = Ideal::of(&fr, &["x - y", "x - y_p", "x - x_p"]);
        assert!(fp.chart.modulus().equals(&expect).unwrap());
    }

    #[test]
    fn images() {
        let t = AffineChart::affine_space("T", &Ring::grevlex(&["t"]));
        let r = Ring::grevlex(&["x", "y"]);
        let plane = AffineChart::affine_space("P", &r);
        let tr = t.ring().clone();
        let cusp = SchemeMap::new(&t, &plane, vec![tr.p("t^2"), tr.p("t^3")]).unwrap();
        let im = schematic_image(&cusp).unwrap();
        assert!(im.ideal.equals(&Ideal::of(&r, &["y^2 - x^3"])).unwrap());
        assert!(flat_base_change_image_check(&cusp, &names(&["u"])).unwrap());

        let line = AffineChart::new("V", Ideal::of(&r, &["y"]));
        let emb = SchemeMap::new(&line, &plane, vec![r.p("x"), r.p("y")]).unwrap();
        assert!(schematic_image(&emb).unwrap().ideal.equals(&Ideal::of(&r, &["y"])).unwrap());
        assert!(flat_base_change_image_check(&plane.identity(), &names(&["u", "v"])).unwrap());

        let dual = AffineChart::new("E", Ideal::of(&tr, &["t^2"]));
        let a1 = AffineChart::affine_space("A", &Ring::grevlex(&["x"]));
        let f = SchemeMap::new(&dual, &a1, vec![tr.p("t")]).unwrap();
        let im = schematic_image(&f).unwrap();
        assert!(im.ideal.equals(&Ideal::of(a1.ring(), &["x^2"])).unwrap());
    }

    #[test]
    fn open_piece_image_commutes_with_free_extension() {
        // D(x) inside Spec Q[x,y]/(xy), presented with an inverse s of x.
        let r = Ring::grevlex(&["x", "y", "s"]);
        let dx = AffineChart::new("Dx", Ideal::of(&r, &["x*y", "s*x - 1"]));
        let base = Ring::grevlex(&["x", "y"]);
        let w = AffineChart::new("W", Ideal::of(&base, &["x*y"]));
        let inc = SchemeMap::new(&dx, &w, vec![r.p("x"), r.p("y")]).unwrap();
        let im = schematic_image(&inc).unwrap();
        assert!(im.ideal.equals(&Ideal::of(&base, &["y"])).unwrap());
        assert!(flat_base_change_image_check(&inc, &names(&["t"])).unwrap());
    }

    #[test]
    fn constancy_examples() {
        let r = Ring::grevlex(&["c", "a"]);
        let x = AffineChart::affine_space("X", &r);
        let y = AffineChart::affine_space("Y", &Ring::grevlex(&["c"]));
        let w = AffineChart::affine_space("W", &Ring::grevlex(&["w"]));
        let p = SchemeMap::new(&x, &y, vec![r.p("c")]).unwrap();

        let f = SchemeMap::new(&x, &w, vec![r.p("c")]).unwrap();
        let res = constant_along_fibres(&f, &p).unwrap();
        assert!(res.constant);
        assert_eq!(res.descent, Some(Descent::Found(vec![y.ring().p("c")])));

        let f = SchemeMap::new(&x, &w, vec![r.p("c*a")]).unwrap();
        assert!(!constant_along_fibres(&f, &p).unwrap().constant);

        let xc = AffineChart::new("Xc", Ideal::of(&r, &["c"]));
        let yc = AffineChart::new("Yc", Ideal::of(y.ring(), &["c"]));
        let p = SchemeMap::new(&xc, &yc, vec![r.p("c")]).unwrap();
        let f = SchemeMap::new(&xc, &w, vec![r.p("c*a")]).unwrap();
        let res = constant_along_fibres(&f, &p).unwrap();
        assert!(res.constant);
        assert_eq!(res.descent, Some(Descent::Found(vec![y.ring().zero()])));
    }

    #[test]
    fn not_descendable_is_distinct_from_false() {
        // D(c) -> A^1: the inverse u of c is constant on fibres but is not a polynomial in c.
        let r = Ring::grevlex(&["c", "u"]);
        let x = AffineChart::new("Dc", Ideal::of(&r, &["u*c - 1"]));
        let y = AffineChart::affine_space("Y", &Ring::grevlex(&["c"]));
        let w = AffineChart::affine_space("W", &Ring::grevlex(&["w"]));
        let p = SchemeMap::new(&x, &y, vec![r.p("c")]).unwrap();
        let f = SchemeMap::new(&x, &w, vec![r.p("u")]).unwrap();
        let res = constant_along_fibres(&f, &p).unwrap();
        assert!(res.constant);
        assert_eq!(res.descent, Some(Descent::NotDescendable { coordinate: "w".into() }));
        let f = SchemeMap::new(&x, &w, vec![r.p("c^3 + u*c")]).unwrap();
        let res = constant_along_fibres(&f, &p).unwrap();
        assert_eq!(res.descent, Some(Descent::Found(vec![y.ring().p("c^3 + 1")])));
    }
}
