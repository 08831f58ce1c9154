//! Rational and multi-rational maps between multi-projective varieties:
//! saturated representative lists, base loci, restriction, composition,
//! images, graphs, projective degrees and inversion.
//!
//! A map to PP^{m_1} x ... x PP^{m_s} is one component per target factor.
//! Each component stores the forms it was built from; the full minimal
//! representative list, read off from the kernel of the transposed syzygy
//! matrix, is completed the first time a base locus, preimage or evaluation
//! fallback needs it. The given forms drive graphs and composition.

use std::sync::{Arc, OnceLock};

use rand::Rng;

use crate::error::{Error, Result};
use crate::fields::{FieldElem, FieldKind, FieldSpec};
use crate::groebner::{self, kernel_transpose, syzygies, FreeModuleVector};
use crate::hilbert::segre_convert;
use crate::idealcalc::{ring_map_kernel, MHIdeal};
use crate::polyring::{MPoly, Monomial, MultiDeg, MultiGradedRing};
use crate::varieties::{MultiProjVariety, Parameterization, RationalPoint};

/// The forms of one coordinate group together with the lazily completed
/// minimal representative list over the same source.
#[derive(Debug)]
pub(crate) struct RepSet {
    source: MultiProjVariety,
    given: FreeModuleVector,
    all: OnceLock<Vec<FreeModuleVector>>,
}

impl RepSet {
    /// Minimal representatives, ascending total degree; completed from the
    /// syzygy kernel on first use.
    fn all(&self) -> Result<&[FreeModuleVector]> {
        if let Some(v) = self.all.get() {
            return Ok(v);
        }
        let v = complete_reps(&self.source, self.given.components())?;
        let _ = self.all.set(v);
        Ok(self.all.get().unwrap())
    }

    /// Entry values of the first representative alive at the flattened
    /// point; the list is completed only when the given forms all vanish
    /// there.
    pub(crate) fn values_at(&self, flat: &[FieldElem]) -> Result<Option<Vec<FieldElem>>> {
        let field = self.source.ring().field();
        let given = self
            .given
            .components()
            .iter()
            .map(|e| e.evaluate(flat))
            .collect::<Result<Vec<_>>>()?;
        if given.iter().any(|v| !field.is_zero(v)) {
            return Ok(Some(given));
        }
        for rep in self.all()? {
            let vals = rep
                .components()
                .iter()
                .map(|e| e.evaluate(flat))
                .collect::<Result<Vec<_>>>()?;
            if vals.iter().any(|v| !field.is_zero(v)) {
                return Ok(Some(vals));
            }
        }
        Ok(None)
    }
}

/// One coordinate group of a multi-rational map: the induced map to a
/// single projective factor.
#[derive(Debug, Clone)]
pub struct RationalMapComponent {
    target_dim: usize,
    reps: Arc<RepSet>,
}

impl RationalMapComponent {
    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    /// Every minimal representative, ascending total degree.
    pub fn reps(&self) -> Result<&[FreeModuleVector]> {
        self.reps.all()
    }

    /// The forms the component was built from.
    pub fn first_rep(&self) -> &FreeModuleVector {
        &self.reps.given
    }

    /// Multidegrees of the minimal representatives, in storage order.
    pub fn rep_degrees(&self) -> Result<Vec<MultiDeg>> {
        let mut out = Vec::new();
        for rep in self.reps()? {
            match rep.multidegree()? {
                Some(d) => out.push(d),
                None => return Err(Error::NotHomogeneous(rep.render())),
            }
        }
        Ok(out)
    }
}

#[derive(Debug)]
struct MapInner {
    source: MultiProjVariety,
    target: MultiProjVariety,
    components: Vec<RationalMapComponent>,
    base: OnceLock<MultiProjVariety>,
    graph: OnceLock<GraphVariety>,
    image: OnceLock<MultiProjVariety>,
    degrees: OnceLock<Vec<i128>>,
    degree: OnceLock<i128>,
    dominant: OnceLock<bool>,
    birational: OnceLock<bool>,
    inverse: OnceLock<MultiRationalMap>,
}

/// Rational map between multi-projective varieties, cheap to clone.
/// Derived data (base locus, graph, image, degrees) is computed once and
/// shared between clones.
#[derive(Debug, Clone)]
pub struct MultiRationalMap(Arc<MapInner>);

/// Closure of the graph inside source ambient x target ambient, together
/// with the two coordinate projections.
#[derive(Debug, Clone)]
pub struct GraphVariety {
    variety: MultiProjVariety,
    proj1: MultiRationalMap,
    proj2: MultiRationalMap,
}

impl GraphVariety {
    pub fn variety(&self) -> &MultiProjVariety {
        &self.variety
    }

    /// Projection onto the source; birational by construction.
    pub fn proj1(&self) -> &MultiRationalMap {
        &self.proj1
    }

    /// Projection onto the target.
    pub fn proj2(&self) -> &MultiRationalMap {
        &self.proj2
    }
}

/// Build a map given one forms vector per target factor. Every nonzero
/// entry of a group must be multihomogeneous of the group's shared
/// multidegree, no group may vanish identically on the source, and the
/// forms must map the source into the target subvariety.
pub fn make_map(
    source: &MultiProjVariety,
    target: &MultiProjVariety,
    forms: &[Vec<MPoly>],
) -> Result<MultiRationalMap> {
    let rring = source.ring().clone();
    let tring = target.ring().clone();
    if rring.field() != tring.field() {
        return Err(Error::MixedFields);
    }
    let s = tring.num_factors();
    if forms.len() != s {
        return Err(Error::ShapeMismatch(format!(
            "expected {} coordinate groups, got {}",
            s,
            forms.len()
        )));
    }
    let mut components = Vec::with_capacity(s);
    for (i, group) in forms.iter().enumerate() {
        let want = tring.factor_vars(i).len();
        if group.len() != want {
            return Err(Error::BadArity { expected: want, got: group.len() });
        }
        let mut shared: Option<MultiDeg> = None;
        for f in group {
            if f.ring() != &rring {
                return Err(Error::MixedRings);
            }
            if f.is_zero() {
                continue;
            }
            match f.multidegree()? {
                None => return Err(Error::InhomogeneousImages),
                Some(d) => match &shared {
                    None => shared = Some(d),
                    Some(prev) if *prev != d => return Err(Error::InhomogeneousImages),
                    _ => {}
                },
            }
        }
        if shared.is_none() {
            return Err(Error::ZeroRepresentative);
        }
        let mut all_in_ideal = true;
        for f in group {
            if !source.ideal().normal_form(f)?.is_zero() {
                all_in_ideal = false;
                break;
            }
        }
        if all_in_ideal {
            return Err(Error::ZeroRepresentative);
        }
        components.push(RationalMapComponent {
            target_dim: want - 1,
            reps: Arc::new(RepSet {
                source: source.clone(),
                given: FreeModuleVector::new(&rring, group.to_vec())?.normalized()?,
                all: OnceLock::new(),
            }),
        });
    }
    let map = MultiRationalMap(Arc::new(MapInner {
        source: source.clone(),
        target: target.clone(),
        components,
        base: OnceLock::new(),
        graph: OnceLock::new(),
        image: OnceLock::new(),
        degrees: OnceLock::new(),
        degree: OnceLock::new(),
        dominant: OnceLock::new(),
        birational: OnceLock::new(),
        inverse: OnceLock::new(),
    }));
    // the source maps into the target subvariety iff every defining
    // equation of the target pulls back into the source ideal
    let flat = map.flat_first_entries();
    for g in target.ideal().gens() {
        let pulled = g.substitute(&rring, &flat)?;
        if !source.ideal().contains(&pulled)? {
            return Err(Error::TargetMismatch(g.render()));
        }
    }
    Ok(map)
}

/// All minimal representatives of the map given by `group` on `source`:
/// the kernel of the transposed syzygy matrix of the forms modulo the
/// source ideal.
fn complete_reps(source: &MultiProjVariety, group: &[MPoly]) -> Result<Vec<FreeModuleVector>> {
    let ring = source.ring();
    let modulo = source.ideal().gens();
    let syz = syzygies(group, modulo)?;
    let reps = if syz.is_empty() {
        vec![FreeModuleVector::new(ring, group.to_vec())?.normalized()?]
    } else {
        kernel_transpose(&syz, modulo)?
    };
    if reps.is_empty() {
        return Err(Error::ZeroRepresentative);
    }
    Ok(reps)
}

/// Component handles for a parameterization that replays this map.
fn rep_handles(map: &MultiRationalMap) -> Vec<Arc<RepSet>> {
    map.0.components.iter().map(|c| c.reps.clone()).collect()
}

/// The identity of `x`, with coordinate forms in every factor.
pub fn identity(x: &MultiProjVariety) -> Result<MultiRationalMap> {
    let ring = x.ring();
    let forms: Vec<Vec<MPoly>> = (0..ring.num_factors())
        .map(|j| ring.factor_vars(j).map(|i| ring.var(i)).collect())
        .collect();
    let m = make_map(x, x, &forms)?;
    let _ = m.0.dominant.set(true);
    let _ = m.0.birational.set(true);
    let _ = m.0.degree.set(1);
    Ok(m)
}

impl MultiRationalMap {
    pub fn source(&self) -> &MultiProjVariety {
        &self.0.source
    }

    pub fn target(&self) -> &MultiProjVariety {
        &self.0.target
    }

    pub fn components(&self) -> &[RationalMapComponent] {
        &self.0.components
    }

    pub fn num_components(&self) -> usize {
        self.0.components.len()
    }

    /// Representative multidegrees per component, in storage order.
    pub fn degree_sequences(&self) -> Result<Vec<Vec<MultiDeg>>> {
        self.0.components.iter().map(|c| c.rep_degrees()).collect()
    }

    /// First-representative entries of every component, concatenated in
    /// target variable order.
    fn flat_first_entries(&self) -> Vec<MPoly> {
        let mut out = Vec::new();
        for comp in &self.0.components {
            out.extend_from_slice(comp.first_rep().components());
        }
        out
    }

    pub fn summary(&self) -> Result<String> {
        let (kind, word) = self.summary_words();
        Ok(format!(
            "{} ({} from {} to {})",
            kind,
            word,
            self.0.source.summary()?,
            self.0.target.summary()?
        ))
    }

    /// Known classification words for display: (kind, map word).
    pub fn summary_words(&self) -> (&'static str, &'static str) {
        let kind =
            if self.0.components.len() == 1 { "RationalMap" } else { "MultirationalMap" };
        let word = if self.0.birational.get().copied() == Some(true) {
            "birational map"
        } else if self.0.dominant.get().copied() == Some(true) {
            "dominant rational map"
        } else {
            "rational map"
        };
        (kind, word)
    }

    /// Equality as rational maps: same source and target subvarieties and
    /// proportional first representatives modulo the source ideal.
    pub fn maps_equal(&self, other: &MultiRationalMap) -> Result<bool> {
        if self.source().ring() != other.source().ring()
            || self.target().ring() != other.target().ring()
        {
            return Err(Error::ShapeMismatch("maps live on different rings".into()));
        }
        if !self.source().ideal().scheme_equal(other.source().ideal())?
            || !self.target().ideal().scheme_equal(other.target().ideal())?
        {
            return Err(Error::ShapeMismatch(
                "maps have different source or target subvarieties".into(),
            ));
        }
        let ideal = self.source().ideal();
        for (a, b) in self.0.components.iter().zip(&other.0.components) {
            let f = a.first_rep().components();
            let g = b.first_rep().components();
            for p in 0..f.len() {
                for q in (p + 1)..f.len() {
                    let minor = f[p].mul(&g[q])?.sub(&f[q].mul(&g[p])?)?;
                    if !ideal.contains(&minor)? {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Image of a rational point the map is defined at.
    pub fn evaluate(&self, p: &RationalPoint) -> Result<RationalPoint> {
        if p.ring() != self.source().ring() {
            return Err(Error::MixedRings);
        }
        let flat: Vec<_> = p.coords().iter().flatten().cloned().collect();
        let mut out = Vec::new();
        for comp in &self.0.components {
            let good = comp.reps.values_at(&flat)?;
            out.extend(good.ok_or(Error::RestrictionUndefined)?);
        }
        RationalPoint::new(self.target().ring(), out)
    }

    /// Locus where no representative of some component survives: the
    /// saturated intersection of the per-component entry ideals.
    pub fn base_locus(&self) -> Result<MultiProjVariety> {
        if let Some(b) = self.0.base.get() {
            return Ok(b.clone());
        }
        let ring = self.source().ring();
        let mut pieces = Vec::with_capacity(self.0.components.len());
        for comp in &self.0.components {
            let mut gens = self.source().ideal().gens().to_vec();
            for rep in comp.reps()? {
                gens.extend(rep.components().iter().filter(|e| !e.is_zero()).cloned());
            }
            pieces.push(MHIdeal::new(ring, gens)?);
        }
        let b = MHIdeal::intersect_many(&pieces)?.multi_saturate()?;
        let v = MultiProjVariety::from_saturated(b);
        let _ = self.0.base.set(v.clone());
        Ok(v)
    }

    /// Defined everywhere iff the base locus is empty.
    pub fn is_morphism(&self) -> Result<bool> {
        self.base_locus()?.is_empty()
    }

    /// The same map on a subvariety of the source, keeping per component
    /// the first representative that survives there.
    pub fn restrict(&self, z: &MultiProjVariety) -> Result<MultiRationalMap> {
        if z.ring() != self.source().ring() {
            return Err(Error::MixedRings);
        }
        if !z.is_subvariety_of(self.source())? {
            return Err(Error::ShapeMismatch(
                "can only restrict to a subvariety of the source".into(),
            ));
        }
        let survives = |rep: &FreeModuleVector| -> Result<bool> {
            for e in rep.components() {
                if !z.ideal().normal_form(e)?.is_zero() {
                    return Ok(true);
                }
            }
            Ok(false)
        };
        let mut forms = Vec::with_capacity(self.0.components.len());
        for comp in &self.0.components {
            let mut chosen = None;
            if survives(comp.first_rep())? {
                chosen = Some(comp.first_rep().components().to_vec());
            } else {
                for rep in comp.reps()? {
                    if survives(rep)? {
                        chosen = Some(rep.components().to_vec());
                        break;
                    }
                }
            }
            forms.push(chosen.ok_or(Error::RestrictionUndefined)?);
        }
        make_map(z, self.target(), &forms)
    }

    /// First this map, then `next`.
    pub fn compose(&self, next: &MultiRationalMap) -> Result<MultiRationalMap> {
        let rring = self.source().ring();
        if next.source().ring() != self.target().ring() {
            return Err(Error::NotComposable(
                "the target ring of the first map is not the source ring of the second".into(),
            ));
        }
        let flat = self.flat_first_entries();
        for g in next.source().ideal().gens() {
            let pulled = g.substitute(rring, &flat)?;
            if !self.source().ideal().contains(&pulled)? {
                return Err(Error::NotComposable(
                    "the image is not contained in the source of the second map".into(),
                ));
            }
        }
        let pull = |rep: &FreeModuleVector| -> Result<Option<Vec<MPoly>>> {
            let entries = rep
                .components()
                .iter()
                .map(|e| e.substitute(rring, &flat))
                .collect::<Result<Vec<_>>>()?;
            for e in &entries {
                if !self.source().ideal().normal_form(e)?.is_zero() {
                    return Ok(Some(entries));
                }
            }
            Ok(None)
        };
        let mut forms = Vec::with_capacity(next.0.components.len());
        for comp in next.components() {
            let mut chosen = pull(comp.first_rep())?;
            if chosen.is_none() {
                for rep in comp.reps()? {
                    chosen = pull(rep)?;
                    if chosen.is_some() {
                        break;
                    }
                }
            }
            match chosen {
                Some(c) => forms.push(c),
                None => {
                    return Err(Error::NotComposable(
                        "every composed representative vanishes on the source".into(),
                    ))
                }
            }
        }
        make_map(self.source(), next.target(), &forms)
    }

    /// Closure of the image inside the target subvariety.
    pub fn image(&self) -> Result<MultiProjVariety> {
        if let Some(v) = self.0.image.get() {
            return Ok(v.clone());
        }
        let flat = self.flat_first_entries();
        let ideal = match ring_map_kernel(&flat, self.source().ideal(), self.target().ideal()) {
            Ok(k) => k,
            // dependent target factor degrees: project the graph instead
            Err(Error::UnsupportedClass(_)) => self.image_from_graph()?,
            Err(e) => return Err(e),
        };
        let v = MultiProjVariety::from_saturated(ideal);
        v.set_parameterization(Parameterization {
            source: self.source().clone(),
            comps: rep_handles(self),
            include_source: false,
        });
        let _ = self.0.image.set(v.clone());
        Ok(v)
    }

    /// Image ideal through the graph: drop the source block from the graph
    /// ideal and read the remainder in the target ring. Elimination of a
    /// full grading block keeps multihomogeneity, so the parts split below
    /// is a no-op safeguard.
    fn image_from_graph(&self) -> Result<MHIdeal> {
        let g = self.graph()?;
        let tring = self.target().ring();
        let nx = self.source().ring().nvars();
        let drop: Vec<usize> = (0..nx).collect();
        let elim = groebner::eliminate(g.variety().ideal().gens(), &drop)?;
        let joint_nvars = g.variety().ring().nvars();
        let mut back = vec![0usize; joint_nvars];
        for k in 0..tring.nvars() {
            back[nx + k] = k;
        }
        let mut gens = self.target().ideal().gens().to_vec();
        for e in &elim {
            let moved = e.embed(tring, &back)?;
            gens.extend(moved.homogeneous_parts());
        }
        MHIdeal::new(tring, gens)?.multi_saturate()
    }

    pub fn is_dominant(&self) -> Result<bool> {
        if let Some(b) = self.0.dominant.get() {
            return Ok(*b);
        }
        let img = self.image()?;
        let b = img.ideal().scheme_equal(self.target().ideal())?;
        let _ = self.0.dominant.set(b);
        Ok(b)
    }

    /// Image of a subvariety of the source.
    pub fn direct_image(&self, z: &MultiProjVariety) -> Result<MultiProjVariety> {
        self.restrict(z)?.image()
    }

    /// Preimage of a subvariety of the target: for every choice of one
    /// representative per component, pull back the defining equations and
    /// saturate away the loci where the chosen forms vanish, then
    /// intersect over all choices.
    pub fn inverse_image(&self, w: &MultiProjVariety) -> Result<MultiProjVariety> {
        if w.ring() != self.target().ring() {
            return Err(Error::MixedRings);
        }
        let rring = self.source().ring();
        let reps: Vec<&[FreeModuleVector]> =
            self.0.components.iter().map(|c| c.reps()).collect::<Result<Vec<_>>>()?;
        let counts: Vec<usize> = reps.iter().map(|r| r.len()).collect();
        let mut idx = vec![0usize; counts.len()];
        let mut pieces = Vec::new();
        loop {
            let mut flat = Vec::new();
            for (i, r) in reps.iter().enumerate() {
                flat.extend_from_slice(r[idx[i]].components());
            }
            let mut gens = self.source().ideal().gens().to_vec();
            for g in w.ideal().gens() {
                gens.push(g.substitute(rring, &flat)?);
            }
            let mut a = MHIdeal::new(rring, gens)?;
            for (i, r) in reps.iter().enumerate() {
                let entries: Vec<MPoly> = r[idx[i]]
                    .components()
                    .iter()
                    .filter(|e| !e.is_zero())
                    .cloned()
                    .collect();
                let e = MHIdeal::new(rring, entries)?;
                a = a.saturate(&e)?;
            }
            pieces.push(a);
            // odometer over representative choices
            let mut pos = 0;
            loop {
                if pos == idx.len() {
                    break;
                }
                idx[pos] += 1;
                if idx[pos] < counts[pos] {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos == idx.len() {
                break;
            }
        }
        let total = MHIdeal::intersect_many(&pieces)?.multi_saturate()?;
        Ok(MultiProjVariety::from_saturated(total))
    }

    /// Graph closure with its two projections. The ideal is the source
    /// ideal plus the 2x2 minors tying each target block to its forms,
    /// saturated by each component's entry ideal in turn; that chain is a
    /// multi-saturation by construction.
    pub fn graph(&self) -> Result<GraphVariety> {
        if let Some(g) = self.0.graph.get() {
            return Ok(g.clone());
        }
        let rring = self.source().ring();
        let tring = self.target().ring();
        let joint = MultiGradedRing::product(rring, tring)?;
        let nx = rring.nvars();
        let r = rring.num_factors();
        let x_map: Vec<usize> = (0..nx).collect();
        let mut gens = Vec::new();
        for g in self.source().ideal().gens() {
            gens.push(g.embed(&joint, &x_map)?);
        }
        let mut entry_blocks = Vec::with_capacity(self.0.components.len());
        for (i, comp) in self.0.components.iter().enumerate() {
            let f: Vec<MPoly> = comp
                .first_rep()
                .components()
                .iter()
                .map(|e| e.embed(&joint, &x_map))
                .collect::<Result<Vec<_>>>()?;
            let y: Vec<MPoly> = joint.factor_vars(r + i).map(|k| joint.var(k)).collect();
            for a in 0..f.len() {
                for b in (a + 1)..f.len() {
                    gens.push(y[a].mul(&f[b])?.sub(&y[b].mul(&f[a])?)?);
                }
            }
            entry_blocks.push(f);
        }
        let mut acc = MHIdeal::new(&joint, gens)?;
        for block in &entry_blocks {
            let nz: Vec<MPoly> = block.iter().filter(|e| !e.is_zero()).cloned().collect();
            acc = acc.saturate(&MHIdeal::new(&joint, nz)?)?;
        }
        let gvar = MultiProjVariety::from_saturated(acc.assume_saturated());
        gvar.set_parameterization(Parameterization {
            source: self.source().clone(),
            comps: rep_handles(self),
            include_source: true,
        });
        let p1_forms: Vec<Vec<MPoly>> =
            (0..r).map(|j| joint.factor_vars(j).map(|k| joint.var(k)).collect()).collect();
        let p1 = make_map(&gvar, self.source(), &p1_forms)?;
        // one-to-one over the locus where the map is defined
        let _ = p1.0.birational.set(true);
        let _ = p1.0.dominant.set(true);
        let _ = p1.0.degree.set(1);
        let s = tring.num_factors();
        let p2_forms: Vec<Vec<MPoly>> = (0..s)
            .map(|i| joint.factor_vars(r + i).map(|k| joint.var(k)).collect())
            .collect();
        let p2 = make_map(&gvar, self.target(), &p2_forms)?;
        let g = GraphVariety { variety: gvar, proj1: p1, proj2: p2 };
        let _ = self.0.graph.set(g.clone());
        Ok(g)
    }

    /// The graph ideal a second way: contract the ideal generated by the
    /// source ideal and `y - t f(x)` for auxiliary scalars t, one per
    /// component, from the ungraded extension ring. Cross-checks `graph`.
    pub fn graph_ideal_by_elimination(&self) -> Result<MHIdeal> {
        let rring = self.source().ring();
        let tring = self.target().ring();
        let joint = MultiGradedRing::product(rring, tring)?;
        let s = tring.num_factors();
        let nx = rring.nvars();
        let total = s + joint.nvars();
        // scratch names: auxiliary scalars first, then the joint variables
        let mut names: Vec<String> = Vec::with_capacity(total);
        for i in 0..s {
            let mut cand = format!("aux{i}");
            while joint.names().contains(&cand) || names.contains(&cand) {
                cand.push('_');
            }
            names.push(cand);
        }
        names.extend(joint.names().iter().cloned());
        let scratch = MultiGradedRing::make_ring(*rring.field(), &[total - 1], &names)?;
        let x_map: Vec<usize> = (0..nx).map(|i| s + i).collect();
        let mut gens = Vec::new();
        for g in self.source().ideal().gens() {
            gens.push(g.embed(&scratch, &x_map)?);
        }
        for (i, comp) in self.0.components.iter().enumerate() {
            let t = scratch.var(i);
            for (l, f) in comp.first_rep().components().iter().enumerate() {
                let y = scratch.var(s + nx + tring.factor_vars(i).start + l);
                let tf = t.mul(&f.embed(&scratch, &x_map)?)?;
                gens.push(y.sub(&tf)?);
            }
        }
        let drop: Vec<usize> = (0..s).collect();
        let elim = groebner::eliminate(&gens, &drop)?;
        let mut back = vec![0usize; total];
        for k in 0..joint.nvars() {
            back[s + k] = k;
        }
        let mut out = Vec::new();
        for g in &elim {
            let moved = g.embed(&joint, &back)?;
            out.extend(moved.homogeneous_parts());
        }
        Ok(MHIdeal::new(&joint, out)?.assume_saturated())
    }

    /// d_i = degree of the preimage of a general codim (dim source - i)
    /// linear section of the target, read deterministically from the
    /// multidegree of the graph.
    pub fn projective_degrees(&self) -> Result<Vec<i128>> {
        if let Some(d) = self.0.degrees.get() {
            return Ok(d.clone());
        }
        let k = self.source().dim()?;
        if k < 0 {
            return Err(Error::EmptyVariety);
        }
        let g = self.graph()?;
        let md = g.variety().multidegree()?;
        let r = self.source().ring().num_factors();
        let degs = segre_convert(&md, k as usize, r)?;
        let _ = self.0.degrees.set(degs.clone());
        Ok(degs)
    }

    /// Same degrees by cutting with random (1,...,1) divisors and taking
    /// preimages; requires a finite coefficient field.
    pub fn probabilistic_degrees<R: Rng>(&self, rng: &mut R) -> Result<Vec<i128>> {
        if self.source().ring().field().kind() != FieldKind::PrimeField {
            return Err(Error::NeedsFiniteField);
        }
        let k = self.source().dim()?;
        if k < 0 {
            return Err(Error::EmptyVariety);
        }
        let k = k as usize;
        let tring = self.target().ring();
        let ones = MultiDeg(vec![1; tring.num_factors()]);
        let mut out = Vec::with_capacity(k + 1);
        for i in 0..=k {
            let mut wgens = self.target().ideal().gens().to_vec();
            for _ in 0..(k - i) {
                wgens.push(tring.random_form(&ones, rng));
            }
            let w = MultiProjVariety::make_variety(tring, wgens)?;
            let z = self.inverse_image(&w)?;
            let d = if z.is_empty()? || z.dim()? != i as i64 { 0 } else { z.segre_degree()? };
            out.push(d);
        }
        Ok(out)
    }

    /// Number of points in a general fiber over the image: d_0 divided by
    /// the Segre degree of the image.
    pub fn map_degree(&self) -> Result<i128> {
        if let Some(d) = self.0.degree.get() {
            return Ok(*d);
        }
        let d0 = self.projective_degrees()?[0];
        let den = self.image()?.segre_degree()?;
        if den == 0 || d0 % den != 0 {
            return Err(Error::NonIntegralDegree { num: d0, den });
        }
        let d = d0 / den;
        let _ = self.0.degree.set(d);
        Ok(d)
    }

    /// Dominant with a single point in the general fiber.
    pub fn is_birational(&self) -> Result<bool> {
        if let Some(b) = self.0.birational.get() {
            return Ok(*b);
        }
        let b = self.is_dominant()? && self.map_degree()? == 1;
        let _ = self.0.birational.set(b);
        Ok(b)
    }

    /// Inverse of a birational map, read off the graph ideal: generators
    /// linear in one source block have coefficient vectors over the target
    /// ring, and the signed maximal minors of any full-rank row subset
    /// give that block of the inverse. Both composites are verified.
    pub fn inverse(&self) -> Result<MultiRationalMap> {
        if let Some(m) = self.0.inverse.get() {
            return Ok(m.clone());
        }
        if !self.is_birational()? {
            return Err(Error::NotBirational(
                "the map is not birational onto its target".into(),
            ));
        }
        let g = self.graph()?;
        let mins = g.variety().ideal().minimal_gens()?;
        let rring = self.source().ring();
        let tring = self.target().ring();
        let r = rring.num_factors();
        let nx = rring.nvars();
        let mut forms = Vec::with_capacity(r);
        for j in 0..r {
            let block: Vec<usize> = rring.factor_vars(j).collect();
            let nj = block.len() - 1;
            let mut rows: Vec<Vec<MPoly>> = Vec::new();
            for h in &mins {
                let Some(md) = h.multidegree()? else { continue };
                let src = &md.0[..r];
                let linear_here =
                    src.iter().enumerate().all(|(l, &e)| if l == j { e == 1 } else { e == 0 });
                if !linear_here {
                    continue;
                }
                let mut coeffs: Vec<Vec<(Monomial, crate::fields::FieldElem)>> =
                    vec![Vec::new(); block.len()];
                for (m, c) in h.terms() {
                    let e = m.exps();
                    let pos = block.iter().position(|&v| e[v] == 1).unwrap();
                    coeffs[pos].push((Monomial::new(&e[nx..]), c.clone()));
                }
                rows.push(coeffs.into_iter().map(|ts| tring.from_terms(ts)).collect());
            }
            if rows.len() < nj {
                return Err(Error::NotBirational(format!(
                    "only {} graph generators are linear in source factor {}",
                    rows.len(),
                    j
                )));
            }
            let mut chosen: Option<Vec<MPoly>> = None;
            'subsets: for sel in combinations(rows.len(), nj) {
                let mut minors = Vec::with_capacity(nj + 1);
                let mut rank_ok = false;
                for dropped in 0..=nj {
                    let sub: Vec<Vec<MPoly>> = sel
                        .iter()
                        .map(|&ri| {
                            let row = &rows[ri];
                            (0..row.len())
                                .filter(|&c| c != dropped)
                                .map(|c| row[c].clone())
                                .collect()
                        })
                        .collect();
                    let det = MPoly::det(tring, &sub)?;
                    let red = self.target().ideal().normal_form(&det)?;
                    if !red.is_zero() {
                        rank_ok = true;
                    }
                    minors.push(if dropped % 2 == 1 { tring.zero().sub(&red)? } else { red });
                }
                if rank_ok {
                    chosen = Some(minors);
                    break 'subsets;
                }
            }
            forms.push(chosen.ok_or_else(|| {
                Error::NotBirational(format!(
                    "the coefficient matrix for source factor {j} is rank deficient"
                ))
            })?);
        }
        let psi = make_map(self.target(), self.source(), &forms)?;
        let idx = identity(self.source())?;
        let idy = identity(self.target())?;
        if !self.compose(&psi)?.maps_equal(&idx)? {
            return Err(Error::NotBirational(
                "the candidate inverse does not compose to the identity on the source".into(),
            ));
        }
        if !psi.compose(self)?.maps_equal(&idy)? {
            return Err(Error::NotBirational(
                "the candidate inverse does not compose to the identity on the target".into(),
            ));
        }
        let _ = psi.0.birational.set(true);
        let _ = psi.0.dominant.set(true);
        let _ = psi.0.degree.set(1);
        let _ = self.0.inverse.set(psi.clone());
        Ok(psi)
    }

    /// Birational with both the map and its inverse defined everywhere.
    pub fn is_isomorphism(&self) -> Result<bool> {
        match self.is_birational() {
            Ok(false) => return Ok(false),
            Ok(true) => {}
            Err(e) => return Err(e),
        }
        if !self.is_morphism()? {
            return Ok(false);
        }
        let inv = match self.inverse() {
            Ok(v) => v,
            Err(Error::NotBirational(_)) => return Ok(false),
            Err(e) => return Err(e),
        };
        inv.is_morphism()
    }

    /// Compose with the Segre embedding of the target ambient product:
    /// one component whose forms are all products of one entry per
    /// component, last component fastest.
    pub fn to_segre_map(&self) -> Result<MultiRationalMap> {
        let rring = self.source().ring();
        let mut prods = vec![rring.one()];
        for comp in &self.0.components {
            let mut next = Vec::with_capacity(prods.len() * (comp.target_dim + 1));
            for p in &prods {
                for e in comp.first_rep().components() {
                    next.push(p.mul(e)?);
                }
            }
            prods = next;
        }
        let dims = self.target().ring().factor_dims().to_vec();
        let target = segre_ambient(*rring.field(), &dims)?;
        make_map(self.source(), &target, &[prods])
    }

    /// Reduce everything coefficientwise into GF(p). Derived caches are
    /// dropped; the structure is trusted to survive, and collapsing
    /// generators or representatives surface as BadReduction.
    pub fn base_change(&self, p: u64) -> Result<MultiRationalMap> {
        if self.source().ring().field().kind() != FieldKind::Rationals {
            return Err(Error::BadReduction {
                p,
                reason: "the coefficient field is already finite".into(),
            });
        }
        let field = FieldSpec::prime_field(p)?;
        let mut red = Reducer { field, p, rings: Vec::new() };
        let source = red.variety(self.source())?;
        let target = red.variety(self.target())?;
        let rring = source.ring().clone();
        let mut components = Vec::with_capacity(self.0.components.len());
        for comp in &self.0.components {
            let entries = comp
                .first_rep()
                .components()
                .iter()
                .map(|e| e.reduce_coeffs_mod_p(&rring))
                .collect::<Result<Vec<_>>>()?;
            if entries.iter().all(|e| e.is_zero()) {
                return Err(Error::BadReduction {
                    p,
                    reason: "a representative vanishes modulo p".into(),
                });
            }
            components.push(RationalMapComponent {
                target_dim: comp.target_dim,
                reps: Arc::new(RepSet {
                    source: source.clone(),
                    given: FreeModuleVector::new(&rring, entries)?.normalized()?,
                    all: OnceLock::new(),
                }),
            });
        }
        Ok(MultiRationalMap(Arc::new(MapInner {
            source,
            target,
            components,
            base: OnceLock::new(),
            graph: OnceLock::new(),
            image: OnceLock::new(),
            degrees: OnceLock::new(),
            degree: OnceLock::new(),
            dominant: OnceLock::new(),
            birational: OnceLock::new(),
            inverse: OnceLock::new(),
        })))
    }
}

/// Ambient projective space of the Segre embedding of a product with the
/// given factor dimensions, coordinates z indexed by one digit group per
/// factor, last factor fastest.
fn segre_ambient(field: FieldSpec, dims: &[usize]) -> Result<MultiProjVariety> {
    let mut tuples: Vec<Vec<usize>> = vec![vec![]];
    for &n in dims {
        let mut next = Vec::with_capacity(tuples.len() * (n + 1));
        for t in &tuples {
            for i in 0..=n {
                let mut u = t.clone();
                u.push(i);
                next.push(u);
            }
        }
        tuples = next;
    }
    let sep = if dims.iter().all(|&n| n <= 9) { "" } else { "_" };
    let names: Vec<String> = tuples
        .iter()
        .map(|t| {
            let digits: Vec<String> = t.iter().map(|i| i.to_string()).collect();
            format!("z{}", digits.join(sep))
        })
        .collect();
    let ring = MultiGradedRing::make_ring(field, &[tuples.len() - 1], &names)?;
    Ok(MultiProjVariety::ambient(&ring))
}

/// Segre embedding of a multi-projective variety into projective space,
/// coordinate products in lexicographic index order.
pub fn segre_map(x: &MultiProjVariety) -> Result<MultiRationalMap> {
    identity(x)?.to_segre_map()
}

/// Coefficientwise reduction into GF(p), memoizing rebuilt rings so that
/// shared ring objects stay shared.
struct Reducer {
    field: FieldSpec,
    p: u64,
    rings: Vec<(MultiGradedRing, MultiGradedRing)>,
}

impl Reducer {
    fn ring(&mut self, r: &MultiGradedRing) -> Result<MultiGradedRing> {
        if let Some((_, m)) = self.rings.iter().find(|(o, _)| o == r) {
            return Ok(m.clone());
        }
        let m = MultiGradedRing::make_ring(self.field, r.factor_dims(), r.names())?;
        self.rings.push((r.clone(), m.clone()));
        Ok(m)
    }

    fn ideal(&mut self, a: &MHIdeal) -> Result<MHIdeal> {
        let m = self.ring(a.ring())?;
        let mut gens = Vec::with_capacity(a.gens().len());
        for g in a.gens() {
            let h = g.reduce_coeffs_mod_p(&m)?;
            if h.is_zero() {
                return Err(Error::BadReduction {
                    p: self.p,
                    reason: "a generator vanishes modulo p".into(),
                });
            }
            gens.push(h);
        }
        let out = MHIdeal::new(&m, gens)?;
        if out.is_unit()? {
            return Err(Error::BadReduction {
                p: self.p,
                reason: "the reduced ideal is the unit ideal".into(),
            });
        }
        Ok(if a.known_multi_saturated() { out.assume_saturated() } else { out })
    }

    fn variety(&mut self, x: &MultiProjVariety) -> Result<MultiProjVariety> {
        let id = self.ideal(x.ideal())?;
        let v = MultiProjVariety::from_saturated(id);
        if let Some(par) = x.parameterization() {
            let src = self.variety(&par.source)?;
            let rring = src.ring().clone();
            let mut comps = Vec::with_capacity(par.comps.len());
            for rs in &par.comps {
                let entries = rs
                    .given
                    .components()
                    .iter()
                    .map(|e| e.reduce_coeffs_mod_p(&rring))
                    .collect::<Result<Vec<_>>>()?;
                if entries.iter().all(|e| e.is_zero()) {
                    return Err(Error::BadReduction {
                        p: self.p,
                        reason: "a representative vanishes modulo p".into(),
                    });
                }
                comps.push(Arc::new(RepSet {
                    source: src.clone(),
                    given: FreeModuleVector::new(&rring, entries)?.normalized()?,
                    all: OnceLock::new(),
                }));
            }
            v.set_parameterization(Parameterization {
                source: src,
                comps,
                include_source: par.include_source,
            });
        }
        Ok(v)
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::seeded_rng;
    use crate::polyring::parse_poly;

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::prime_field(p).unwrap()
    }

    fn ring(field: FieldSpec, dims: &[usize], names: &[&str]) -> MultiGradedRing {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        MultiGradedRing::make_ring(field, dims, &names).unwrap()
    }

    fn pp(ring: &MultiGradedRing) -> MultiProjVariety {
        MultiProjVariety::ambient(ring)
    }

    #[test]
    fn coordinate_swap_is_birational_with_inverse() {
        let r = ring(gf(65537), &[1], &["x0", "x1"]);
        let p1 = pp(&r);
        let m = make_map(&p1, &p1, &[vec![r.var(1), r.var(0)]]).unwrap();
        assert!(m.is_dominant().unwrap());
        assert_eq!(m.projective_degrees().unwrap(), vec![1, 1]);
        assert_eq!(m.map_degree().unwrap(), 1);
        assert!(m.is_birational().unwrap());
        let inv = m.inverse().unwrap();
        assert!(inv.maps_equal(&m).unwrap());
        assert!(m.is_morphism().unwrap());
        assert!(m.is_isomorphism().unwrap());
    }

    #[test]
    fn segre_image_of_the_product_of_lines_is_the_quadric() {
        let r = ring(gf(65537), &[1, 1], &["x0", "x1", "y0", "y1"]);
        let amb = pp(&r);
        let s = segre_map(&amb).unwrap();
        let img = s.image().unwrap();
        let t = img.ring();
        let quad = parse_poly(t, "z00*z11 - z01*z10").unwrap();
        let hand = MultiProjVariety::make_variety(t, vec![quad]).unwrap();
        assert!(img.equals(&hand).unwrap());
        assert_eq!(img.dim().unwrap(), 2);
        assert_eq!(img.segre_degree().unwrap(), 2);
    }

    #[test]
    fn segre_image_of_p2_x_p2_has_degree_six() {
        let r = ring(gf(65537), &[2, 2], &["a0", "a1", "a2", "b0", "b1", "b2"]);
        let s = segre_map(&pp(&r)).unwrap();
        let img = s.image().unwrap();
        assert_eq!(img.dim().unwrap(), 4);
        assert_eq!(img.codim().unwrap(), 4);
        assert_eq!(img.segre_degree().unwrap(), 6);
    }

    #[test]
    fn inverse_of_the_segre_embedding_onto_the_quadric() {
        let r = ring(gf(65537), &[1, 1], &["x0", "x1", "y0", "y1"]);
        let amb = pp(&r);
        let s0 = segre_map(&amb).unwrap();
        let img = s0.image().unwrap();
        // the same forms, now onto the exact image
        let forms: Vec<Vec<MPoly>> =
            s0.components().iter().map(|c| c.first_rep().components().to_vec()).collect();
        let s = make_map(&amb, &img, &forms).unwrap();
        assert!(s.is_dominant().unwrap());
        assert_eq!(s.map_degree().unwrap(), 1);
        let inv = s.inverse().unwrap();
        let t = img.ring();
        let hand = make_map(
            &img,
            &amb,
            &[
                vec![parse_poly(t, "z00").unwrap(), parse_poly(t, "z10").unwrap()],
                vec![parse_poly(t, "z00").unwrap(), parse_poly(t, "z01").unwrap()],
            ],
        )
        .unwrap();
        assert!(inv.maps_equal(&hand).unwrap());
        // both rulings appear among the completed representatives
        let rendered: Vec<Vec<String>> = inv
            .components()
            .iter()
            .map(|c| c.reps().unwrap().iter().map(|v| v.render()).collect())
            .collect();
        assert_eq!(rendered[0].len(), 2, "x-block representatives: {rendered:?}");
        assert_eq!(rendered[1].len(), 2, "y-block representatives: {rendered:?}");
    }

    #[test]
    fn quadratic_involution_has_degrees_one_two_one() {
        let r = ring(gf(65537), &[2], &["x", "y", "z"]);
        let p2 = pp(&r);
        let forms = vec![vec![
            parse_poly(&r, "y*z").unwrap(),
            parse_poly(&r, "x*z").unwrap(),
            parse_poly(&r, "x*y").unwrap(),
        ]];
        let m = make_map(&p2, &p2, &forms).unwrap();
        assert_eq!(m.projective_degrees().unwrap(), vec![1, 2, 1]);
        assert_eq!(m.map_degree().unwrap(), 1);
        let inv = m.inverse().unwrap();
        assert!(inv.maps_equal(&m).unwrap());
        let b = m.base_locus().unwrap();
        assert_eq!(b.dim().unwrap(), 0);
        assert_eq!(b.segre_degree().unwrap(), 3);
        assert!(!m.is_morphism().unwrap());
        assert!(!m.is_isomorphism().unwrap());
    }

    #[test]
    fn squaring_the_plane_has_degree_four() {
        let r = ring(gf(65537), &[2], &["x", "y", "z"]);
        let p2 = pp(&r);
        let forms = vec![vec![
            parse_poly(&r, "x^2").unwrap(),
            parse_poly(&r, "y^2").unwrap(),
            parse_poly(&r, "z^2").unwrap(),
        ]];
        let m = make_map(&p2, &p2, &forms).unwrap();
        assert_eq!(m.projective_degrees().unwrap(), vec![4, 2, 1]);
        assert_eq!(m.map_degree().unwrap(), 4);
        assert!(!m.is_birational().unwrap());
        match m.inverse() {
            Err(Error::NotBirational(_)) => {}
            other => panic!("expected NotBirational, got {other:?}"),
        }
    }

    #[test]
    fn composing_the_involution_with_itself_is_the_identity() {
        let r = ring(gf(65537), &[2], &["x", "y", "z"]);
        let p2 = pp(&r);
        let forms = vec![vec![
            parse_poly(&r, "y*z").unwrap(),
            parse_poly(&r, "x*z").unwrap(),
            parse_poly(&r, "x*y").unwrap(),
        ]];
        let m = make_map(&p2, &p2, &forms).unwrap();
        let twice = m.compose(&m).unwrap();
        let id = identity(&p2).unwrap();
        assert!(twice.maps_equal(&id).unwrap());
        // composition collapses the common factor: the first representative
        // of the composite is linear
        let d = &twice.degree_sequences().unwrap()[0][0];
        assert_eq!(d.0, vec![1]);
    }

    #[test]
    fn graph_of_the_identity_is_the_diagonal() {
        let r = ring(gf(65537), &[1], &["x0", "x1"]);
        let p1 = pp(&r);
        let id = identity(&p1).unwrap();
        let g = id.graph().unwrap();
        let joint = g.variety().ring();
        let diag = parse_poly(joint, "x0*x1_ - x1*x0_").unwrap();
        let hand = MHIdeal::new(joint, vec![diag]).unwrap();
        assert!(g.variety().ideal().scheme_equal(&hand).unwrap());
        assert!(g.proj1().is_birational().unwrap());
        assert!(g.proj1().is_morphism().unwrap());
        assert!(g.proj2().is_morphism().unwrap());
    }

    #[test]
    fn graphs_do_not_depend_on_the_presented_representative() {
        let r = ring(gf(65537), &[1], &["x0", "x1"]);
        let p1 = pp(&r);
        let a = make_map(
            &p1,
            &p1,
            &[vec![parse_poly(&r, "x0^2").unwrap(), parse_poly(&r, "x0*x1").unwrap()]],
        )
        .unwrap();
        let b = make_map(
            &p1,
            &p1,
            &[vec![parse_poly(&r, "x0*x1").unwrap(), parse_poly(&r, "x1^2").unwrap()]],
        )
        .unwrap();
        assert!(a.maps_equal(&b).unwrap());
        let ga = a.graph().unwrap();
        let gb = b.graph().unwrap();
        assert!(ga.variety().ideal().scheme_equal(gb.variety().ideal()).unwrap());
        // completion reduces both to the coordinate representative
        assert_eq!(a.degree_sequences().unwrap()[0][0].0, vec![1]);
    }

    #[test]
    fn elimination_route_reproduces_the_graph_ideal() {
        let r = ring(gf(65537), &[2], &["x", "y", "z"]);
        let p2 = pp(&r);
        let forms = vec![vec![
            parse_poly(&r, "y*z").unwrap(),
            parse_poly(&r, "x*z").unwrap(),
            parse_poly(&r, "x*y").unwrap(),
        ]];
        let m = make_map(&p2, &p2, &forms).unwrap();
        let g = m.graph().unwrap();
        let other = m.graph_ideal_by_elimination().unwrap();
        assert!(g.variety().ideal().scheme_equal(&other).unwrap());
    }

    #[test]
    fn image_falls_back_to_the_graph_when_degrees_collide() {
        let r = ring(gf(65537), &[1], &["x0", "x1"]);
        let t = ring(gf(65537), &[1, 1], &["a0", "a1", "b0", "b1"]);
        let p1 = pp(&r);
        let tgt = pp(&t);
        let coords = vec![r.var(0), r.var(1)];
        let m = make_map(&p1, &tgt, &[coords.clone(), coords]).unwrap();
        let img = m.image().unwrap();
        let diag = parse_poly(&t, "a0*b1 - a1*b0").unwrap();
        let hand = MultiProjVariety::make_variety(&t, vec![diag]).unwrap();
        assert!(img.equals(&hand).unwrap());
        assert!(!m.is_dominant().unwrap());
    }

    #[test]
    fn preimages_under_the_involution_saturate_correctly() {
        let r = ring(gf(65537), &[2], &["x", "y", "z"]);
        let p2 = pp(&r);
        let forms = vec![vec![
            parse_poly(&r, "y*z").unwrap(),
            parse_poly(&r, "x*z").unwrap(),
            parse_poly(&r, "x*y").unwrap(),
        ]];
        let m = make_map(&p2, &p2, &forms).unwrap();
        let field = r.field();
        // the fixed point (1:1:1) pulls back to itself
        let one = field.one();
        let p = RationalPoint::new(&r, vec![one.clone(), one.clone(), one]).unwrap();
        let fixed = m.inverse_image(&p.to_variety().unwrap()).unwrap();
        assert!(fixed.equals(&p.to_variety().unwrap()).unwrap());
        // the whole line x = 0 contracts to the coordinate point (1:0:0)
        let q = RationalPoint::new(&r, vec![field.one(), field.zero(), field.zero()]).unwrap();
        let line = m.inverse_image(&q.to_variety().unwrap()).unwrap();
        let hand =
            MultiProjVariety::make_variety(&r, vec![parse_poly(&r, "x").unwrap()]).unwrap();
        assert!(line.equals(&hand).unwrap());
    }

    #[test]
    fn restriction_pushes_a_line_to_a_line() {
        let r = ring(gf(65537), &[2], &["x", "y", "z"]);
        let p2 = pp(&r);
        let forms = vec![vec![
            parse_poly(&r, "y*z").unwrap(),
            parse_poly(&r, "x*z").unwrap(),
            parse_poly(&r, "x*y").unwrap(),
        ]];
        let m = make_map(&p2, &p2, &forms).unwrap();
        let l = MultiProjVariety::make_variety(&r, vec![parse_poly(&r, "x - y").unwrap()])
            .unwrap();
        let img = m.direct_image(&l).unwrap();
        let hand = MultiProjVariety::make_variety(&r, vec![parse_poly(&r, "x - y").unwrap()])
            .unwrap();
        assert!(img.equals(&hand).unwrap());
    }

    #[test]
    fn restricting_to_the_base_point_is_undefined() {
        let r = ring(gf(65537), &[2], &["x", "y", "z"]);
        let t = ring(gf(65537), &[1], &["u", "v"]);
        let m = make_map(&pp(&r), &pp(&t), &[vec![r.var(0), r.var(1)]]).unwrap();
        let pt = MultiProjVariety::make_variety(
            &r,
            vec![r.var(0), r.var(1)],
        )
        .unwrap();
        match m.restrict(&pt) {
            Err(Error::RestrictionUndefined) => {}
            other => panic!("expected RestrictionUndefined, got {other:?}"),
        }
    }

    #[test]
    fn probabilistic_degrees_match_the_deterministic_ones() {
        let r = ring(gf(65537), &[2], &["x", "y", "z"]);
        let p2 = pp(&r);
        for forms in [
            vec![vec![
                parse_poly(&r, "y*z").unwrap(),
                parse_poly(&r, "x*z").unwrap(),
                parse_poly(&r, "x*y").unwrap(),
            ]],
            vec![vec![
                parse_poly(&r, "x^2").unwrap(),
                parse_poly(&r, "y^2").unwrap(),
                parse_poly(&r, "z^2").unwrap(),
            ]],
        ] {
            let m = make_map(&p2, &p2, &forms).unwrap();
            let det = m.projective_degrees().unwrap();
            let mut rng = seeded_rng(42);
            assert_eq!(m.probabilistic_degrees(&mut rng).unwrap(), det);
        }
    }

    #[test]
    fn probabilistic_degrees_refuse_the_rationals() {
        let r = ring(FieldSpec::rationals(), &[1], &["x0", "x1"]);
        let p1 = pp(&r);
        let m = identity(&p1).unwrap();
        let mut rng = seeded_rng(1);
        match m.probabilistic_degrees(&mut rng) {
            Err(Error::NeedsFiniteField) => {}
            other => panic!("expected NeedsFiniteField, got {other:?}"),
        }
    }

    #[test]
    fn evaluation_and_fibers_agree_on_the_quadric() {
        let r = ring(gf(65537), &[1, 1], &["x0", "x1", "y0", "y1"]);
        let amb = pp(&r);
        let s0 = segre_map(&amb).unwrap();
        let img = s0.image().unwrap();
        let forms: Vec<Vec<MPoly>> =
            s0.components().iter().map(|c| c.first_rep().components().to_vec()).collect();
        let s = make_map(&amb, &img, &forms).unwrap();
        let field = r.field();
        let p = RationalPoint::new(
            &r,
            vec![field.one(), field.from_i64(2), field.one(), field.from_i64(3)],
        )
        .unwrap();
        let q = s.evaluate(&p).unwrap();
        assert_eq!(q.render(), "((1, 3, 2, 6))");
        let fiber = s.inverse_image(&q.to_variety().unwrap()).unwrap();
        assert!(fiber.equals(&p.to_variety().unwrap()).unwrap());
    }

    #[test]
    fn base_change_reduces_and_refuses_bad_input() {
        let r = ring(FieldSpec::rationals(), &[1], &["x0", "x1"]);
        let t = ring(FieldSpec::rationals(), &[2], &["u", "v", "w"]);
        let forms = vec![vec![
            parse_poly(&r, "x0^2").unwrap(),
            parse_poly(&r, "x0*x1").unwrap(),
            parse_poly(&r, "x1^2").unwrap(),
        ]];
        let m = make_map(&pp(&r), &pp(&t), &forms).unwrap();
        let m7 = m.base_change(7).unwrap();
        assert_eq!(m7.source().ring().field().kind(), FieldKind::PrimeField);
        let img = m7.image().unwrap();
        assert_eq!(img.dim().unwrap(), 1);
        assert_eq!(img.segre_degree().unwrap(), 2);
        match m7.base_change(11) {
            Err(Error::BadReduction { .. }) => {}
            other => panic!("expected BadReduction, got {other:?}"),
        }
        match m.base_change(2) {
            Err(Error::BadCharacteristic(_)) => {}
            other => panic!("expected BadCharacteristic, got {other:?}"),
        }
        // a coefficient with denominator 7 blocks the reduction
        let inv7 = r.field().inv(&r.field().from_i64(7)).unwrap();
        let bad = make_map(
            &pp(&r),
            &pp(&t),
            &[vec![
                parse_poly(&r, "x0^2").unwrap(),
                parse_poly(&r, "x0*x1").unwrap().scale(&inv7).unwrap(),
                parse_poly(&r, "x1^2").unwrap(),
            ]],
        )
        .unwrap();
        match bad.base_change(7) {
            Err(Error::BadReduction { .. }) => {}
            other => panic!("expected BadReduction, got {other:?}"),
        }
    }

    #[test]
    fn to_segre_map_of_the_identity_is_the_segre_map() {
        let r = ring(gf(65537), &[1, 1], &["x0", "x1", "y0", "y1"]);
        let amb = pp(&r);
        let a = identity(&amb).unwrap().to_segre_map().unwrap();
        let b = segre_map(&amb).unwrap();
        assert!(a.maps_equal(&b).unwrap());
        assert_eq!(a.num_components(), 1);
        assert_eq!(a.components()[0].target_dim(), 3);
    }

    #[test]
    fn conic_parameterization_is_birational_onto_its_image() {
        let r = ring(gf(65537), &[1], &["s", "t"]);
        let tr = ring(gf(65537), &[2], &["u", "v", "w"]);
        let forms = vec![vec![
            parse_poly(&r, "s^2").unwrap(),
            parse_poly(&r, "s*t").unwrap(),
            parse_poly(&r, "t^2").unwrap(),
        ]];
        let onto_plane = make_map(&pp(&r), &pp(&tr), &forms).unwrap();
        // not dominant to the plane, so not birational there
        assert!(!onto_plane.is_dominant().unwrap());
        assert!(!onto_plane.is_birational().unwrap());
        let conic = onto_plane.image().unwrap();
        assert_eq!(conic.segre_degree().unwrap(), 2);
        let onto_conic = make_map(&pp(&r), &conic, &forms).unwrap();
        assert_eq!(onto_conic.map_degree().unwrap(), 1);
        let inv = onto_conic.inverse().unwrap();
        assert!(inv.is_birational().unwrap());
        assert!(onto_conic.is_morphism().unwrap());
    }
}
