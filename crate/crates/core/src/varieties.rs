//! Multi-projective varieties: invariants, describe reports, singular loci,
//! point sampling over finite fields, and point/ideal conversions.

use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::Rng;

use crate::error::{Error, Result};
use crate::fields::{univariate_roots, FieldElem, FieldKind, FieldSpec};
use crate::hilbert::{krull_dim, multidegree, segre_convert, MultidegreePoly};
use crate::idealcalc::MHIdeal;
use crate::polyring::{MPoly, MultiGradedRing};
use crate::ratmaps::RepSet;

const SAMPLE_RETRIES: usize = 100;

/// Closed subscheme of a product of projective spaces, carried by its
/// multi-saturated ideal. Cheap to clone; invariants cache on first use.
/// The empty variety is a first-class value with dim -1.
#[derive(Debug, Clone)]
pub struct MultiProjVariety(Arc<VarInner>);

#[derive(Debug)]
struct VarInner {
    ideal: MHIdeal,
    dim: OnceLock<i64>,
    md: OnceLock<MultidegreePoly>,
    sdeg: OnceLock<i128>,
    sing: OnceLock<MultiProjVariety>,
    param: OnceLock<Parameterization>,
}

/// How to produce points of a variety that was built as an image or a graph:
/// sample the source, push coordinates through the map's representatives.
#[derive(Debug)]
pub(crate) struct Parameterization {
    pub source: MultiProjVariety,
    /// one representative set per target factor, shared with the map
    pub comps: Vec<Arc<RepSet>>,
    /// graphs prepend the source coordinates to the pushed-forward ones
    pub include_source: bool,
}

impl MultiProjVariety {
    /// V(gens), multi-saturated; the empty variety is allowed.
    pub fn make_variety(ring: &MultiGradedRing, gens: Vec<MPoly>) -> Result<Self> {
        let a = MHIdeal::new(ring, gens)?;
        Ok(Self::from_saturated(a.multi_saturate()?))
    }

    /// Wraps an ideal that is multi-saturated by construction.
    pub(crate) fn from_saturated(ideal: MHIdeal) -> Self {
        debug_assert!(ideal.known_multi_saturated());
        MultiProjVariety(Arc::new(VarInner {
            ideal,
            dim: OnceLock::new(),
            md: OnceLock::new(),
            sdeg: OnceLock::new(),
            sing: OnceLock::new(),
            param: OnceLock::new(),
        }))
    }

    pub fn ambient(ring: &MultiGradedRing) -> Self {
        Self::from_saturated(MHIdeal::zero(ring))
    }

    pub fn empty(ring: &MultiGradedRing) -> Self {
        Self::from_saturated(MHIdeal::unit(ring))
    }

    pub fn ring(&self) -> &MultiGradedRing {
        self.0.ideal.ring()
    }

    pub fn ideal(&self) -> &MHIdeal {
        &self.0.ideal
    }

    pub fn is_empty(&self) -> Result<bool> {
        self.0.ideal.is_unit()
    }

    pub fn is_ambient(&self) -> bool {
        self.0.ideal.is_zero_ideal()
    }

    pub(crate) fn set_parameterization(&self, p: Parameterization) {
        let _ = self.0.param.set(p);
    }

    pub(crate) fn parameterization(&self) -> Option<&Parameterization> {
        self.0.param.get()
    }

    /// Scheme equality: same saturated ideal.
    pub fn equals(&self, other: &MultiProjVariety) -> Result<bool> {
        if self.ring() != other.ring() {
            return Ok(false);
        }
        self.0.ideal.scheme_equal(&other.0.ideal)
    }

    /// Scheme containment: self a subscheme of other.
    pub fn is_subvariety_of(&self, other: &MultiProjVariety) -> Result<bool> {
        if self.ring() != other.ring() {
            return Ok(false);
        }
        for g in other.0.ideal.gens() {
            if !self.0.ideal.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn dim(&self) -> Result<i64> {
        if let Some(d) = self.0.dim.get() {
            return Ok(*d);
        }
        let d = if self.is_empty()? {
            -1
        } else {
            let r = self.ring().num_factors() as i64;
            krull_dim(&self.0.ideal)? as i64 - r
        };
        let _ = self.0.dim.set(d);
        Ok(d)
    }

    pub fn codim(&self) -> Result<usize> {
        if self.is_empty()? {
            return Err(Error::EmptyVariety);
        }
        let ring = self.ring();
        let ambient: i64 = (ring.nvars() - ring.num_factors()) as i64;
        Ok((ambient - self.dim()?) as usize)
    }

    pub fn multidegree(&self) -> Result<&MultidegreePoly> {
        if self.0.md.get().is_none() {
            if self.is_empty()? {
                return Err(Error::EmptyVariety);
            }
            let md = multidegree(&self.0.ideal)?;
            let _ = self.0.md.set(md);
        }
        Ok(self.0.md.get().unwrap())
    }

    pub fn segre_degree(&self) -> Result<i128> {
        if let Some(d) = self.0.sdeg.get() {
            return Ok(*d);
        }
        let md = self.multidegree()?;
        let k = md.dim();
        let d = segre_convert(md, k, md.factor_dims().len())?[k];
        let _ = self.0.sdeg.set(d);
        Ok(d)
    }

    pub fn invariants(&self) -> Result<(i64, usize, MultidegreePoly, i128)> {
        if self.is_empty()? {
            return Err(Error::EmptyVariety);
        }
        Ok((
            self.dim()?,
            self.codim()?,
            self.multidegree()?.clone(),
            self.segre_degree()?,
        ))
    }

    /// Zero locus of the codim x codim Jacobian minors together with the
    /// defining ideal; empty exactly when the multi-cone is smooth away
    /// from the irrelevant loci.
    pub fn singular_locus(&self) -> Result<MultiProjVariety> {
        if let Some(s) = self.0.sing.get() {
            return Ok(s.clone());
        }
        if self.is_empty()? {
            return Err(Error::EmptyVariety);
        }
        let ring = self.ring();
        let c = self.codim()?;
        let sing = if c == 0 {
            Self::empty(ring)
        } else {
            let gens = self.0.ideal.gens();
            let jac: Vec<Vec<MPoly>> = gens
                .iter()
                .map(|g| (0..ring.nvars()).map(|v| g.partial_derivative(v)).collect())
                .collect();
            let mut minor_gens = self.0.ideal.gens().to_vec();
            for rows in combinations(gens.len(), c) {
                for cols in combinations(ring.nvars(), c) {
                    let sub: Vec<Vec<MPoly>> = rows
                        .iter()
                        .map(|&i| cols.iter().map(|&j| jac[i][j].clone()).collect())
                        .collect();
                    let d = MPoly::det(ring, &sub)?;
                    if !d.is_zero() {
                        minor_gens.push(d);
                    }
                }
            }
            Self::make_variety(ring, minor_gens)?
        };
        let _ = self.0.sing.set(sing.clone());
        Ok(sing)
    }

    pub fn dim_singular_locus(&self) -> Result<i64> {
        self.singular_locus()?.dim()
    }

    /// Random point over GF(p). Strategies: ambient products, hypersurfaces
    /// via a random line, and varieties carrying a parameterization.
    pub fn sample_point<R: Rng>(&self, rng: &mut R) -> Result<RationalPoint> {
        let ring = self.ring();
        let field = ring.field();
        if field.kind() != FieldKind::PrimeField {
            return Err(Error::NeedsFiniteField);
        }
        if self.is_empty()? {
            return Err(Error::EmptyVariety);
        }
        enum Strategy {
            Ambient,
            Hypersurface,
            Pushforward,
        }
        let strategy = if self.0.param.get().is_some() {
            Strategy::Pushforward
        } else if self.0.ideal.is_zero_ideal() {
            Strategy::Ambient
        } else if self.0.ideal.gens().len() == 1 {
            Strategy::Hypersurface
        } else {
            return Err(Error::UnsupportedClass(
                "not an ambient space, hypersurface, or parameterized variety".into(),
            ));
        };
        for _ in 0..SAMPLE_RETRIES {
            let coords = match strategy {
                Strategy::Ambient => Some(random_coords(ring, rng)),
                Strategy::Hypersurface => self.hypersurface_candidate(rng)?,
                Strategy::Pushforward => self.pushforward_candidate(rng)?,
            };
            let Some(coords) = coords else { continue };
            let Some(pt) = RationalPoint::try_new(ring, coords)? else {
                continue;
            };
            if self.contains_point(&pt)? {
                return Ok(pt);
            }
        }
        Err(Error::SamplingFailed { tries: SAMPLE_RETRIES })
    }

    /// Restrict the single generator to a random line a + s*b and solve for s.
    fn hypersurface_candidate<R: Rng>(&self, rng: &mut R) -> Result<Option<Vec<FieldElem>>> {
        let ring = self.ring();
        let field = ring.field();
        let n = ring.nvars();
        let f = &self.0.ideal.gens()[0];
        let a: Vec<FieldElem> = (0..n).map(|_| field.random_elem(rng)).collect();
        let b: Vec<FieldElem> = (0..n).map(|_| field.random_elem(rng)).collect();
        let names = vec!["s_".to_string(), "w_".to_string()];
        let aux = MultiGradedRing::make_ring(field.clone(), &[1], &names)?;
        let s = aux.var(0);
        let w = aux.var(1);
        let images: Vec<MPoly> = a
            .iter()
            .zip(&b)
            .map(|(ai, bi)| {
                let c = aux.constant(ai.clone()).mul(&w)?;
                c.add(&aux.constant(bi.clone()).mul(&s)?)
            })
            .collect::<Result<Vec<_>>>()?;
        let g = f.substitute(&aux, &images)?;
        if g.is_zero() {
            // the whole line lies on the hypersurface
            return Ok(Some(a));
        }
        let d = g.multidegree()?.unwrap().total();
        let mut coeffs = vec![field.zero(); d as usize + 1];
        for (m, c) in g.terms() {
            coeffs[m.exps()[0] as usize] = c.clone();
        }
        let line_point = |s0: &FieldElem| -> Result<Vec<FieldElem>> {
            a.iter()
                .zip(&b)
                .map(|(ai, bi)| field.add(ai, &field.mul(s0, bi)?))
                .collect()
        };
        for s0 in univariate_roots(field, &coeffs)? {
            let p = line_point(&s0)?;
            if tuples_all_nonzero(ring, &p) {
                return Ok(Some(p));
            }
        }
        // root at infinity: the direction vector itself
        if field.is_zero(&coeffs[d as usize]) && tuples_all_nonzero(ring, &b) {
            return Ok(Some(b));
        }
        Ok(None)
    }

    fn pushforward_candidate<R: Rng>(&self, rng: &mut R) -> Result<Option<Vec<FieldElem>>> {
        let par = self.0.param.get().unwrap();
        let src = par.source.sample_point(rng)?;
        let flat: Vec<FieldElem> = src.coords().iter().flatten().cloned().collect();
        let mut coords = if par.include_source { flat.clone() } else { Vec::new() };
        for rs in &par.comps {
            match rs.values_at(&flat)? {
                Some(vals) => coords.extend(vals),
                None => return Ok(None),
            }
        }
        Ok(Some(coords))
    }

    pub fn contains_point(&self, p: &RationalPoint) -> Result<bool> {
        let flat: Vec<FieldElem> = p.coords().iter().flatten().cloned().collect();
        for g in self.0.ideal.gens() {
            if !self.ring().field().is_zero(&g.evaluate(&flat)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// "PP^2 x PP^2"
    pub fn ambient_string(&self) -> String {
        let ring = self.ring();
        (0..ring.num_factors())
            .map(|j| format!("PP^{}", ring.factor_vars(j).len() - 1))
            .collect::<Vec<_>>()
            .join(" x ")
    }

    /// One-line classification in the ambient product.
    pub fn summary(&self) -> Result<String> {
        let amb = self.ambient_string();
        if self.is_empty()? {
            return Ok(format!("empty subvariety of {}", amb));
        }
        if self.is_ambient() {
            return Ok(amb);
        }
        let dim = self.dim()?;
        let codim = self.codim()?;
        if dim == 0 {
            if self.segre_degree()? == 1 {
                return Ok(format!("a point in {}", amb));
            }
            return Ok(format!("0-dimensional subvariety of {}", amb));
        }
        if codim == 1 {
            return Ok(format!("hypersurface in {}", amb));
        }
        Ok(match dim {
            1 => format!("curve in {}", amb),
            2 => format!("surface in {}", amb),
            3 => format!("threefold in {}", amb),
            d => format!("{}-dimensional subvariety of {}", d, amb),
        })
    }

    /// Field-by-field report; the empty variety reports only ambient and dim.
    pub fn describe(&self) -> Result<String> {
        let line = |label: &str, value: String| format!("{:.<22} {}", label, value);
        let mut out = vec![line("ambient:", self.ambient_string())];
        if self.is_empty()? {
            out.push(line("dim:", "-1".into()));
            return Ok(out.join("\n"));
        }
        out.push(line("dim:", self.dim()?.to_string()));
        out.push(line("codim:", self.codim()?.to_string()));
        out.push(line("degree:", self.segre_degree()?.to_string()));
        out.push(line("multidegree:", self.multidegree()?.render()));
        out.push(line("generators:", self.generator_tally()?));
        out.push(line("purity:", "not computed".into()));
        out.push(line("dim sing. l.:", self.dim_singular_locus()?.to_string()));
        Ok(out.join("\n"))
    }

    /// "(2,1)^1 (1,2)^1": minimal generators grouped by multidegree.
    pub fn generator_tally(&self) -> Result<String> {
        let mins = self.0.ideal.minimal_gens()?;
        if mins.is_empty() {
            return Ok("none".into());
        }
        let mut groups: Vec<(String, usize)> = Vec::new();
        for g in &mins {
            let d = g.multidegree()?.unwrap().to_string();
            match groups.last_mut() {
                Some((last, count)) if *last == d => *count += 1,
                _ => groups.push((d, 1)),
            }
        }
        Ok(groups
            .iter()
            .map(|(d, c)| format!("{}^{}", d, c))
            .collect::<Vec<_>>()
            .join(" "))
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // advance the rightmost index that can still move
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

fn random_coords<R: Rng>(ring: &MultiGradedRing, rng: &mut R) -> Vec<FieldElem> {
    let field = ring.field();
    loop {
        let coords: Vec<FieldElem> = (0..ring.nvars()).map(|_| field.random_elem(rng)).collect();
        if tuples_all_nonzero(ring, &coords) {
            return coords;
        }
    }
}

fn tuples_all_nonzero(ring: &MultiGradedRing, coords: &[FieldElem]) -> bool {
    let field = ring.field();
    (0..ring.num_factors())
        .all(|j| ring.factor_vars(j).any(|i| !field.is_zero(&coords[i])))
}

/// Point of a product of projective spaces; within each factor the first
/// nonzero coordinate is scaled to 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPoint {
    ring: MultiGradedRing,
    coords: Vec<Vec<FieldElem>>,
}

impl RationalPoint {
    /// Splits flat coordinates by factor and normalizes; None if some factor
    /// tuple is identically zero.
    pub fn try_new(ring: &MultiGradedRing, flat: Vec<FieldElem>) -> Result<Option<Self>> {
        if flat.len() != ring.nvars() {
            return Err(Error::BadArity { expected: ring.nvars(), got: flat.len() });
        }
        let field = ring.field();
        let mut coords = Vec::with_capacity(ring.num_factors());
        for j in 0..ring.num_factors() {
            let tuple: Vec<FieldElem> = ring.factor_vars(j).map(|i| flat[i].clone()).collect();
            match normalize_tuple(field, tuple)? {
                Some(t) => coords.push(t),
                None => return Ok(None),
            }
        }
        Ok(Some(RationalPoint { ring: ring.clone(), coords }))
    }

    pub fn new(ring: &MultiGradedRing, flat: Vec<FieldElem>) -> Result<Self> {
        Self::try_new(ring, flat)?.ok_or(Error::ZeroVector)
    }

    pub fn ring(&self) -> &MultiGradedRing {
        &self.ring
    }

    pub fn coords(&self) -> &[Vec<FieldElem>] {
        &self.coords
    }

    /// Ideal of the point: 2x2 minors of (variables | coordinates), factor
    /// by factor. Linear, prime, multi-saturated.
    pub fn to_variety(&self) -> Result<MultiProjVariety> {
        let ring = &self.ring;
        let mut gens = Vec::new();
        for j in 0..ring.num_factors() {
            let vars: Vec<usize> = ring.factor_vars(j).collect();
            let a = &self.coords[j];
            for i in 0..vars.len() {
                for k in i + 1..vars.len() {
                    let m = ring
                        .var(vars[i])
                        .scale(&a[k])?
                        .sub(&ring.var(vars[k]).scale(&a[i])?)?;
                    if !m.is_zero() {
                        gens.push(m);
                    }
                }
            }
        }
        Ok(MultiProjVariety::from_saturated(MHIdeal::new_saturated(
            ring, gens,
        )?))
    }

    pub fn render(&self) -> String {
        let field = self.ring.field();
        let tuples: Vec<String> = self
            .coords
            .iter()
            .map(|t| {
                let cs: Vec<String> = t.iter().map(|c| field.render(c)).collect();
                format!("({})", cs.join(", "))
            })
            .collect();
        format!("({})", tuples.join(", "))
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn normalize_tuple(field: &FieldSpec, tuple: Vec<FieldElem>) -> Result<Option<Vec<FieldElem>>> {
    let Some(first) = tuple.iter().position(|c| !field.is_zero(c)) else {
        return Ok(None);
    };
    let inv = field.inv(&tuple[first])?;
    let scaled = tuple
        .iter()
        .map(|c| field.mul(c, &inv))
        .collect::<Result<Vec<_>>>()?;
    Ok(Some(scaled))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::seeded_rng;
    use crate::polyring::parse_poly;

    fn ring(field: FieldSpec, dims: &[usize], names: &[&str]) -> MultiGradedRing {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        MultiGradedRing::make_ring(field, dims, &names).unwrap()
    }

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::prime_field(p).unwrap()
    }

    fn variety(r: &MultiGradedRing, srcs: &[&str]) -> MultiProjVariety {
        let gens = srcs.iter().map(|s| parse_poly(r, s).unwrap()).collect();
        MultiProjVariety::make_variety(r, gens).unwrap()
    }

    #[test]
    fn cubic_hypersurface_invariants() {
        let r = ring(
            gf(65537),
            &[5],
            &["x0", "x1", "x2", "x3", "x4", "x5"],
        );
        let mut rng = seeded_rng(5);
        let f = r.random_form(&crate::polyring::MultiDeg(vec![3]), &mut rng);
        let x = MultiProjVariety::make_variety(&r, vec![f]).unwrap();
        assert_eq!(x.dim().unwrap(), 4);
        assert_eq!(x.codim().unwrap(), 1);
        assert_eq!(x.segre_degree().unwrap(), 3);
        assert_eq!(x.summary().unwrap(), "hypersurface in PP^5");
    }

    #[test]
    fn saturation_to_unit_gives_the_empty_variety() {
        let r = ring(FieldSpec::rationals(), &[1], &["x0", "x1"]);
        let x = variety(&r, &["x0", "x1"]);
        assert!(x.is_empty().unwrap());
        assert_eq!(x.dim().unwrap(), -1);
        assert_eq!(x.summary().unwrap(), "empty subvariety of PP^1");
        assert_eq!(
            x.describe().unwrap(),
            "ambient:.............. PP^1\ndim:.................. -1"
        );
        assert!(matches!(x.invariants(), Err(Error::EmptyVariety)));
    }

    #[test]
    fn ruling_survives_saturation() {
        let r = ring(FieldSpec::rationals(), &[1, 1], &["x0", "x1", "y0", "y1"]);
        let x = variety(&r, &["x0*y0", "x0*y1"]);
        let ruling = variety(&r, &["x0"]);
        assert!(x.equals(&ruling).unwrap());
        assert_eq!(x.summary().unwrap(), "hypersurface in PP^1 x PP^1");
        assert_eq!(x.multidegree().unwrap().render(), "T_0");
    }

    #[test]
    fn ambient_product_invariants_and_describe() {
        let r = ring(
            FieldSpec::rationals(),
            &[2, 2],
            &["x0", "x1", "x2", "y0", "y1", "y2"],
        );
        let p = MultiProjVariety::ambient(&r);
        let (dim, codim, md, sdeg) = p.invariants().unwrap();
        assert_eq!((dim, codim, sdeg), (4, 0, 6));
        assert_eq!(md.render(), "1");
        assert_eq!(p.summary().unwrap(), "PP^2 x PP^2");
        let expected = "\
ambient:.............. PP^2 x PP^2
dim:.................. 4
codim:................ 0
degree:............... 6
multidegree:.......... 1
generators:........... none
purity:............... not computed
dim sing. l.:......... -1";
        assert_eq!(p.describe().unwrap(), expected);
    }

    #[test]
    fn point_describe_matches_the_field_layout() {
        let r = ring(FieldSpec::rationals(), &[1, 1], &["x0", "x1", "y0", "y1"]);
        let x = variety(&r, &["x0", "y0"]);
        let expected = "\
ambient:.............. PP^1 x PP^1
dim:.................. 0
codim:................ 2
degree:............... 1
multidegree:.......... T_0 T_1
generators:........... (1,0)^1 (0,1)^1
purity:............... not computed
dim sing. l.:......... -1";
        assert_eq!(x.describe().unwrap(), expected);
        assert_eq!(x.summary().unwrap(), "a point in PP^1 x PP^1");
    }

    #[test]
    fn nodal_cubic_has_one_singular_point() {
        let r = ring(FieldSpec::rationals(), &[2], &["x", "y", "z"]);
        let x = variety(&r, &["y^2*z - x^2*z - x^3"]);
        let sing = x.singular_locus().unwrap();
        assert_eq!(sing.dim().unwrap(), 0);
        let node = variety(&r, &["x", "y"]);
        assert!(sing.equals(&node).unwrap());
    }

    #[test]
    fn smooth_quadric_surface_is_smooth() {
        let r = ring(gf(65537), &[3], &["x0", "x1", "x2", "x3"]);
        let x = variety(&r, &["x0*x3 - x1*x2"]);
        assert_eq!(x.dim_singular_locus().unwrap(), -1);
        assert_eq!(x.summary().unwrap(), "hypersurface in PP^3");
    }

    #[test]
    fn ambient_sampling_is_normalized_and_deterministic() {
        let r = ring(gf(7), &[2, 2], &["x0", "x1", "x2", "y0", "y1", "y2"]);
        let p = MultiProjVariety::ambient(&r);
        let mut rng = seeded_rng(42);
        for _ in 0..20 {
            let pt = p.sample_point(&mut rng).unwrap();
            for tuple in pt.coords() {
                let first = tuple
                    .iter()
                    .find(|c| !r.field().is_zero(c))
                    .expect("nonzero tuple");
                assert!(r.field().is_one(first));
            }
        }
        let a = p.sample_point(&mut seeded_rng(9)).unwrap();
        let b = p.sample_point(&mut seeded_rng(9)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn hypersurface_samples_lie_on_the_quadric() {
        let r = ring(gf(65537), &[3], &["x0", "x1", "x2", "x3"]);
        let x = variety(&r, &["x0*x3 - x1*x2"]);
        let mut rng = seeded_rng(3);
        for _ in 0..10 {
            let pt = x.sample_point(&mut rng).unwrap();
            assert!(x.contains_point(&pt).unwrap());
        }
        let a = x.sample_point(&mut seeded_rng(11)).unwrap();
        let b = x.sample_point(&mut seeded_rng(11)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn sampling_rejects_unsupported_classes() {
        let r = ring(gf(7), &[3], &["x0", "x1", "x2", "x3"]);
        let x = variety(&r, &["x0*x3 - x1*x2", "x0^2 - x1*x3"]);
        let mut rng = seeded_rng(1);
        assert!(matches!(
            x.sample_point(&mut rng),
            Err(Error::UnsupportedClass(_))
        ));
        let q = ring(FieldSpec::rationals(), &[1], &["x0", "x1"]);
        assert!(matches!(
            MultiProjVariety::ambient(&q).sample_point(&mut rng),
            Err(Error::NeedsFiniteField)
        ));
    }

    #[test]
    fn point_ideals_from_coordinates() {
        let r = ring(FieldSpec::rationals(), &[1], &["x0", "x1"]);
        let f = r.field().clone();
        let pt = RationalPoint::new(&r, vec![f.from_i64(1), f.from_i64(0)]).unwrap();
        let v = pt.to_variety().unwrap();
        assert!(v.equals(&variety(&r, &["x1"])).unwrap());

        let r2 = ring(FieldSpec::rationals(), &[1, 1], &["x0", "x1", "y0", "y1"]);
        let f = r2.field().clone();
        let pt = RationalPoint::new(
            &r2,
            vec![f.from_i64(1), f.from_i64(2), f.from_i64(1), f.from_i64(3)],
        )
        .unwrap();
        let v = pt.to_variety().unwrap();
        assert!(v
            .equals(&variety(&r2, &["x1 - 2*x0", "y1 - 3*y0"]))
            .unwrap());
        assert_eq!(v.multidegree().unwrap().render(), "T_0 T_1");
        assert_eq!(v.summary().unwrap(), "a point in PP^1 x PP^1");
    }

    #[test]
    fn sampled_points_become_contained_subvarieties() {
        let r = ring(gf(65537), &[3], &["x0", "x1", "x2", "x3"]);
        let x = variety(&r, &["x0*x3 - x1*x2"]);
        let mut rng = seeded_rng(8);
        let pt = x.sample_point(&mut rng).unwrap();
        let v = pt.to_variety().unwrap();
        assert!(v.is_subvariety_of(&x).unwrap());
        assert_eq!(v.dim().unwrap(), 0);
    }
}
