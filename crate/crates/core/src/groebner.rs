//! Buchberger engine for ideals and submodules of free modules.
//!
//! One engine serves both cases: a module term is (component, monomial) and
//! ideals are the one-component case. Syzygies, kernels and colon ideals are
//! all read off from Groebner bases of augmented modules whose trailing
//! components record combination coefficients. Module orders are
//! position-over-term, so the leading block of components is eliminated
//! first; that is exactly what the trailing-component trick needs.
//!
//! Determinism: input generators are canonically sorted where the caller's
//! order carries no meaning, pair selection is by (degree, component, lcm,
//! index), and reducer selection is by basis index. Same input, same output.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::fields::{FieldElem, FieldKind, FieldSpec};
use crate::polyring::{MPoly, Monomial, MonomialOrder, MultiDeg, MultiGradedRing};

/// Element of a free module R^q, kept as one polynomial per component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeModuleVector {
    ring: MultiGradedRing,
    components: Vec<MPoly>,
}

impl FreeModuleVector {
    pub fn new(ring: &MultiGradedRing, components: Vec<MPoly>) -> Result<Self> {
        for c in &components {
            if c.ring() != ring {
                return Err(Error::MixedRings);
            }
        }
        Ok(FreeModuleVector { ring: ring.clone(), components })
    }

    pub fn zero(ring: &MultiGradedRing, len: usize) -> Self {
        FreeModuleVector { ring: ring.clone(), components: vec![ring.zero(); len] }
    }

    pub fn ring(&self) -> &MultiGradedRing {
        &self.ring
    }

    pub fn components(&self) -> &[MPoly] {
        &self.components
    }

    pub fn into_components(self) -> Vec<MPoly> {
        self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }

    /// Multidegree shared by every nonzero component; None when mixed.
    pub fn multidegree(&self) -> Result<Option<MultiDeg>> {
        let mut d: Option<MultiDeg> = None;
        for c in &self.components {
            if c.is_zero() {
                continue;
            }
            match c.multidegree()? {
                None => return Ok(None),
                Some(dc) => match &d {
                    None => d = Some(dc),
                    Some(prev) if *prev != dc => return Ok(None),
                    _ => {}
                },
            }
        }
        if d.is_none() {
            return Err(Error::ZeroVector);
        }
        Ok(d)
    }

    /// Scale so the first nonzero component is monic; canonical up to nothing.
    pub fn normalized(&self) -> Result<FreeModuleVector> {
        let f = self.ring.field();
        let Some(first) = self.components.iter().find(|c| !c.is_zero()) else {
            return Err(Error::ZeroVector);
        };
        let (_, lc) = first.leading_term(MonomialOrder::Grevlex).unwrap();
        let inv = f.inv(lc)?;
        let components = self
            .components
            .iter()
            .map(|c| c.scale(&inv))
            .collect::<Result<Vec<_>>>()?;
        Ok(FreeModuleVector { ring: self.ring.clone(), components })
    }

    pub fn render(&self) -> String {
        let parts: Vec<String> = self.components.iter().map(|c| c.render()).collect();
        format!("({})", parts.join(", "))
    }
}

/// Reduced Groebner basis of an ideal under a fixed order. Generators are
/// monic, pairwise reduced and sorted ascending by leading monomial, so two
/// ideals are equal iff their bases under one order are equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: MultiGradedRing,
    order: MonomialOrder,
    gens: Vec<MPoly>,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &MultiGradedRing {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn gens(&self) -> &[MPoly] {
        &self.gens
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.gens.first().is_some_and(|g| g.num_terms() == 1 && g.terms()[0].0.is_one())
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.gens
            .iter()
            .map(|g| g.leading_term(self.order).unwrap().0.clone())
            .collect()
    }
}

type MTerm = (u32, Monomial, FieldElem);

/// Free-module element flattened to terms sorted descending by
/// position-over-term: smaller component first, then the monomial order.
#[derive(Debug, Clone)]
struct MVec {
    terms: Vec<MTerm>,
}

#[inline]
fn mt_cmp(order: MonomialOrder, ca: u32, ma: &Monomial, cb: u32, mb: &Monomial) -> Ordering {
    match cb.cmp(&ca) {
        Ordering::Equal => order.cmp(ma, mb),
        ord => ord,
    }
}

impl MVec {
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lead(&self) -> &MTerm {
        &self.terms[0]
    }
}

struct GbEngine {
    field: FieldSpec,
    order: MonomialOrder,
    /// Product criterion is only sound when everything lives in one
    /// component, i.e. a plain ideal computation.
    ideal_mode: bool,
    basis: Vec<MVec>,
    /// Variable-presence signature of each basis lead, kept in step with
    /// `basis`; a reducer can only divide a term whose mask covers its own.
    lead_masks: Vec<u64>,
    pairs: BTreeSet<Pair>,
    done_unit: bool,
}

/// Bit i % 64 set when x_i occurs. `a.divides(&b)` forces
/// `divmask(a) & !divmask(b) == 0`, and the mask test is one AND.
fn divmask(m: &Monomial) -> u64 {
    let mut bits = 0u64;
    for (i, &e) in m.exps().iter().enumerate() {
        if e > 0 {
            bits |= 1 << (i & 63);
        }
    }
    bits
}

/// Accumulator for long reduction chains: sorted-descending term runs of
/// geometrically growing capacity. Tail merges touch one run instead of
/// rebuilding the whole pending sum, and heads are recombined on extraction.
struct TermBuckets {
    /// (terms descending, consumed prefix length)
    runs: Vec<(Vec<MTerm>, usize)>,
}

impl TermBuckets {
    fn new() -> Self {
        TermBuckets { runs: Vec::new() }
    }
}

fn bucket_cap(i: usize) -> usize {
    4usize << (2 * i.min(14))
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Pair {
    deg: u32,
    comp: u32,
    lcm: Monomial,
    i: u32,
    j: u32,
}

impl PartialOrd for Pair {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Pair {
    fn cmp(&self, other: &Self) -> Ordering {
        // normal strategy: lowest lcm degree first; remaining keys only for
        // determinism (canonical grevlex on the lcm, then indices)
        self.deg
            .cmp(&other.deg)
            .then_with(|| self.comp.cmp(&other.comp))
            .then_with(|| self.lcm.cmp(&other.lcm))
            .then_with(|| (self.i, self.j).cmp(&(other.i, other.j)))
    }
}

impl GbEngine {
    fn new(ring: &MultiGradedRing, order: MonomialOrder, ideal_mode: bool) -> Self {
        GbEngine {
            field: *ring.field(),
            order,
            ideal_mode,
            basis: Vec::new(),
            lead_masks: Vec::new(),
            pairs: BTreeSet::new(),
            done_unit: false,
        }
    }

    fn neg(&self, c: &FieldElem) -> FieldElem {
        self.field.neg(c).expect("same field")
    }

    fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        self.field.mul(a, b).expect("same field")
    }

    fn set_basis(&mut self, basis: Vec<MVec>) {
        self.lead_masks =
            basis.iter().map(|v| if v.is_zero() { 0 } else { divmask(&v.lead().1) }).collect();
        self.basis = basis;
    }

    fn push_basis(&mut self, v: MVec) {
        self.lead_masks.push(divmask(&v.lead().1));
        self.basis.push(v);
    }

    /// Merge two descending term lists, combining equal monomials and
    /// dropping cancellations.
    fn merge_terms(&self, a: &[MTerm], b: &[MTerm]) -> Vec<MTerm> {
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0usize, 0usize);
        while i < a.len() && j < b.len() {
            match mt_cmp(self.order, a[i].0, &a[i].1, b[j].0, &b[j].1) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let s = self.field.add(&a[i].2, &b[j].2).expect("same field");
                    if !self.field.is_zero(&s) {
                        out.push((a[i].0, a[i].1.clone(), s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        out
    }

    fn bucket_add(&self, b: &mut TermBuckets, terms: Vec<MTerm>) {
        if terms.is_empty() {
            return;
        }
        let mut i = 0;
        while bucket_cap(i) < terms.len() {
            i += 1;
        }
        let mut carry = terms;
        loop {
            while b.runs.len() <= i {
                b.runs.push((Vec::new(), 0));
            }
            let (run, start) = &mut b.runs[i];
            if *start < run.len() {
                carry = self.merge_terms(&run[*start..], &carry);
            }
            b.runs[i] = (carry, 0);
            if b.runs[i].0.len() <= bucket_cap(i) {
                return;
            }
            carry = std::mem::take(&mut b.runs[i].0);
            i += 1;
        }
    }

    /// Largest pending term, with equal heads across runs combined; None
    /// once everything cancels or is consumed.
    fn bucket_pop(&self, b: &mut TermBuckets) -> Option<MTerm> {
        loop {
            let mut best: Option<usize> = None;
            for idx in 0..b.runs.len() {
                let (run, start) = &b.runs[idx];
                if *start >= run.len() {
                    continue;
                }
                best = match best {
                    None => Some(idx),
                    Some(bi) => {
                        let (ca, ma, _) = &run[*start];
                        let (bt, bs) = &b.runs[bi];
                        let (cb, mb, _) = &bt[*bs];
                        if mt_cmp(self.order, *ca, ma, *cb, mb) == Ordering::Greater {
                            Some(idx)
                        } else {
                            Some(bi)
                        }
                    }
                };
            }
            let bi = best?;
            let (c, m, mut a) = {
                let (run, start) = &mut b.runs[bi];
                let t = run[*start].clone();
                *start += 1;
                t
            };
            for idx in 0..b.runs.len() {
                if idx == bi {
                    continue;
                }
                let (run, start) = &mut b.runs[idx];
                if *start < run.len() && run[*start].0 == c && run[*start].1 == m {
                    a = self.field.add(&a, &run[*start].2).expect("same field");
                    *start += 1;
                }
            }
            if !self.field.is_zero(&a) {
                return Some((c, m, a));
            }
        }
    }

    /// Drain the buckets to a full normal form against the current basis.
    /// Reducers are scanned in basis order; `skip` excludes one index
    /// during inter-reduction.
    fn reduce_buckets(&self, mut b: TermBuckets, skip: Option<usize>) -> MVec {
        let mut done: Vec<MTerm> = Vec::new();
        'outer: while let Some((c, m, a)) = self.bucket_pop(&mut b) {
            let mask = divmask(&m);
            for (gi, g) in self.basis.iter().enumerate() {
                if Some(gi) == skip || g.is_zero() || self.lead_masks[gi] & !mask != 0 {
                    continue;
                }
                let (gc, gm, ga) = g.lead();
                if *gc != c || !gm.divides(&m) {
                    continue;
                }
                let q = m.div(gm).unwrap();
                let factor = self.field.div(&a, ga).expect("lead is nonzero");
                // the lead cancels exactly; only the scaled tail goes back
                let tail: Vec<MTerm> = g.terms[1..]
                    .iter()
                    .map(|(tc, tm, ta)| (*tc, tm.mul(&q), self.neg(&self.mul(ta, &factor))))
                    .collect();
                self.bucket_add(&mut b, tail);
                continue 'outer;
            }
            done.push((c, m, a));
        }
        MVec { terms: done }
    }

    fn reduce_full(&self, v: MVec, skip: Option<usize>) -> MVec {
        let mut b = TermBuckets::new();
        self.bucket_add(&mut b, v.terms);
        self.reduce_buckets(b, skip)
    }

    /// Monic over GF(p); primitive integer vector with positive leading
    /// coefficient over QQ (fractions cleared, content removed).
    fn normalize(&self, v: MVec) -> MVec {
        if v.is_zero() {
            return v;
        }
        match self.field.kind() {
            FieldKind::PrimeField => {
                let lc = v.lead().2.clone();
                if self.field.is_one(&lc) {
                    return v;
                }
                let inv = self.field.inv(&lc).expect("nonzero");
                MVec {
                    terms: v
                        .terms
                        .into_iter()
                        .map(|(c, m, a)| {
                            let s = self.mul(&a, &inv);
                            (c, m, s)
                        })
                        .collect(),
                }
            }
            FieldKind::Rationals => {
                let mut den = BigInt::one();
                for (_, _, a) in &v.terms {
                    let r = a.as_rational().unwrap();
                    den = den.lcm(r.denom());
                }
                let mut nums: Vec<BigInt> = v
                    .terms
                    .iter()
                    .map(|(_, _, a)| {
                        let r = a.as_rational().unwrap();
                        r.numer() * (&den / r.denom())
                    })
                    .collect();
                let mut content = BigInt::zero();
                for n in &nums {
                    content = content.gcd(n);
                }
                if nums[0].is_negative() {
                    content = -content;
                }
                for n in &mut nums {
                    *n = &*n / &content;
                }
                MVec {
                    terms: v
                        .terms
                        .into_iter()
                        .zip(nums)
                        .map(|((c, m, _), n)| {
                            (c, m, FieldElem::from_rational(BigRational::from_integer(n)))
                        })
                        .collect(),
                }
            }
        }
    }

    /// Gebauer-Moeller pair update for a freshly appended basis element.
    fn add_with_pairs(&mut self, v: MVec) {
        let t = self.basis.len() as u32;
        let (ct, mt, _) = v.lead().clone();
        if self.ideal_mode && mt.is_one() {
            // unit ideal: everything collapses
            self.basis.clear();
            self.lead_masks.clear();
            self.push_basis(v);
            self.pairs.clear();
            self.done_unit = true;
            return;
        }

        // candidate new pairs, with the multiple-lcm rule applied
        let mut cands: Vec<(u32, Monomial)> = Vec::new();
        for (i, g) in self.basis.iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            let (ci, mi, _) = g.lead();
            if *ci == ct {
                cands.push((i as u32, mi.lcm(&mt)));
            }
        }
        cands.sort_by(|(ia, la), (ib, lb)| {
            la.total_degree()
                .cmp(&lb.total_degree())
                .then_with(|| la.cmp(lb))
                .then_with(|| ia.cmp(ib))
        });
        let mut kept: Vec<(u32, Monomial)> = Vec::new();
        'cand: for (i, l) in cands {
            for (_, kl) in &kept {
                if kl.divides(&l) {
                    continue 'cand;
                }
            }
            kept.push((i, l));
        }
        if self.ideal_mode {
            kept.retain(|(i, _)| {
                let (_, mi, _) = self.basis[*i as usize].lead();
                !mi.is_coprime_with(&mt)
            });
        }

        // prune old pairs strictly covered by the new leading term
        let old: Vec<Pair> = self
            .pairs
            .iter()
            .filter(|p| {
                if p.comp != ct || !mt.divides(&p.lcm) {
                    return false;
                }
                let (_, mi, _) = self.basis[p.i as usize].lead();
                let (_, mj, _) = self.basis[p.j as usize].lead();
                mi.lcm(&mt) != p.lcm && mj.lcm(&mt) != p.lcm
            })
            .cloned()
            .collect();
        for p in old {
            self.pairs.remove(&p);
        }

        for (i, l) in kept {
            self.pairs.insert(Pair {
                deg: l.total_degree(),
                comp: ct,
                lcm: l,
                i,
                j: t,
            });
        }
        self.push_basis(v);
    }

    fn run(&mut self, inputs: Vec<MVec>, assume_gb: usize) {
        for (k, v) in inputs.into_iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            if k < assume_gb {
                let v = self.normalize(v);
                self.push_basis(v);
                continue;
            }
            let nf = self.reduce_full(v, None);
            if !nf.is_zero() {
                let nf = self.normalize(nf);
                self.add_with_pairs(nf);
                if self.done_unit {
                    return;
                }
            }
        }
        while let Some(pair) = self.pairs.pop_first() {
            let fi = &self.basis[pair.i as usize];
            let fj = &self.basis[pair.j as usize];
            let (_, mi, ai) = fi.lead();
            let (_, mj, aj) = fj.lead();
            let ui = pair.lcm.div(mi).unwrap();
            let uj = pair.lcm.div(mj).unwrap();
            // s = (1/ai) ui fi - (1/aj) uj fj; the leads cancel by
            // construction, so only the two scaled tails enter
            let inv_ai = self.field.inv(ai).expect("nonzero");
            let inv_aj = self.field.inv(aj).expect("nonzero");
            let tail_i: Vec<MTerm> = fi.terms[1..]
                .iter()
                .map(|(c, m, a)| (*c, m.mul(&ui), self.mul(a, &inv_ai)))
                .collect();
            let tail_j: Vec<MTerm> = fj.terms[1..]
                .iter()
                .map(|(c, m, a)| (*c, m.mul(&uj), self.neg(&self.mul(a, &inv_aj))))
                .collect();
            let mut b = TermBuckets::new();
            self.bucket_add(&mut b, tail_i);
            self.bucket_add(&mut b, tail_j);
            let nf = self.reduce_buckets(b, None);
            if !nf.is_zero() {
                let nf = self.normalize(nf);
                self.add_with_pairs(nf);
                if self.done_unit {
                    return;
                }
            }
        }
    }

    /// Minimalize leads, tail-reduce, make monic, sort ascending.
    fn finish(mut self) -> Vec<MVec> {
        let n = self.basis.len();
        let mut alive = vec![true; n];
        for i in 0..n {
            if self.basis[i].is_zero() {
                alive[i] = false;
                continue;
            }
            let (ci, mi, _) = self.basis[i].lead().clone();
            for j in 0..n {
                if i == j || !alive[j] || self.basis[j].is_zero() {
                    continue;
                }
                let (cj, mj, _) = self.basis[j].lead();
                if *cj == ci && mj.divides(&mi) && (mj != &mi || j < i) {
                    alive[i] = false;
                    break;
                }
            }
        }
        let survivors: Vec<MVec> = self
            .basis
            .iter()
            .zip(&alive)
            .filter(|(_, a)| **a)
            .map(|(v, _)| v.clone())
            .collect();
        self.set_basis(survivors);
        let mut out: Vec<MVec> = Vec::with_capacity(self.basis.len());
        for i in 0..self.basis.len() {
            let v = self.basis[i].clone();
            let red = self.reduce_full(v, Some(i));
            debug_assert!(!red.is_zero(), "minimal basis element survives reduction");
            // monic, also over QQ: the reduced basis is the canonical one
            let lc = red.lead().2.clone();
            let inv = self.field.inv(&lc).expect("nonzero");
            let terms: Vec<MTerm> = red
                .terms
                .into_iter()
                .map(|(c, m, a)| {
                    let s = self.mul(&a, &inv);
                    (c, m, s)
                })
                .collect();
            out.push(MVec { terms });
        }
        let order = self.order;
        out.sort_by(|a, b| {
            let (ca, ma, _) = a.lead();
            let (cb, mb, _) = b.lead();
            mt_cmp(order, *ca, ma, *cb, mb)
        });
        out
    }
}

fn poly_to_mvec(f: &MPoly, comp: u32, order: MonomialOrder) -> Vec<MTerm> {
    let mut terms: Vec<MTerm> = f
        .terms()
        .iter()
        .map(|(m, c)| (comp, m.clone(), c.clone()))
        .collect();
    if order != MonomialOrder::Grevlex {
        terms.sort_by(|(_, a, _), (_, b, _)| order.cmp(b, a));
    }
    terms
}

fn vec_to_mvec(v: &FreeModuleVector, order: MonomialOrder) -> MVec {
    let mut terms: Vec<MTerm> = Vec::new();
    for (k, c) in v.components().iter().enumerate() {
        terms.extend(poly_to_mvec(c, k as u32, order));
    }
    terms.sort_by(|(ca, ma, _), (cb, mb, _)| mt_cmp(order, *cb, mb, *ca, ma));
    MVec { terms }
}

fn mvec_to_vec(ring: &MultiGradedRing, v: &MVec, ncomp: usize) -> FreeModuleVector {
    let mut per: Vec<Vec<(Monomial, FieldElem)>> = vec![Vec::new(); ncomp];
    for (c, m, a) in &v.terms {
        per[*c as usize].push((m.clone(), a.clone()));
    }
    let components = per.into_iter().map(|t| ring.from_terms(t)).collect();
    FreeModuleVector { ring: ring.clone(), components }
}

fn mvec_to_poly(ring: &MultiGradedRing, v: &MVec) -> MPoly {
    let terms: Vec<(Monomial, FieldElem)> = v
        .terms
        .iter()
        .map(|(c, m, a)| {
            debug_assert_eq!(*c, 0);
            (m.clone(), a.clone())
        })
        .collect();
    ring.from_terms(terms)
}

/// Canonical comparison of polynomials used to sort generator lists where
/// the caller's order carries no meaning.
pub(crate) fn cmp_poly_canonical(a: &MPoly, b: &MPoly) -> Ordering {
    let ta = a.terms();
    let tb = b.terms();
    for ((ma, ca), (mb, cb)) in ta.iter().zip(tb.iter()) {
        match ma.cmp(mb) {
            Ordering::Equal => {}
            ord => return ord,
        }
        match cmp_coeff(ca, cb) {
            Ordering::Equal => {}
            ord => return ord,
        }
    }
    ta.len().cmp(&tb.len())
}

fn cmp_coeff(a: &FieldElem, b: &FieldElem) -> Ordering {
    match (a, b) {
        (FieldElem::Fp(x), FieldElem::Fp(y)) => x.cmp(y),
        (FieldElem::Rat(x), FieldElem::Rat(y)) => x.cmp(y),
        (FieldElem::Fp(_), FieldElem::Rat(_)) => Ordering::Less,
        (FieldElem::Rat(_), FieldElem::Fp(_)) => Ordering::Greater,
    }
}

fn check_same_ring<'a, I: IntoIterator<Item = &'a MPoly>>(
    ring: &MultiGradedRing,
    gens: I,
) -> Result<()> {
    for g in gens {
        if g.ring() != ring {
            return Err(Error::MixedRings);
        }
    }
    Ok(())
}

/// Reduced Groebner basis of the ideal generated by `gens`.
pub fn buchberger(
    ring: &MultiGradedRing,
    gens: &[MPoly],
    order: MonomialOrder,
) -> Result<GroebnerBasis> {
    check_same_ring(ring, gens)?;
    let mut inputs: Vec<MPoly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    inputs.sort_by(|a, b| {
        a.terms()[0]
            .0
            .total_degree()
            .cmp(&b.terms()[0].0.total_degree())
            .then_with(|| cmp_poly_canonical(a, b))
    });
    inputs.dedup();
    let mut engine = GbEngine::new(ring, order, true);
    let mvecs = inputs.iter().map(|g| MVec { terms: poly_to_mvec(g, 0, order) }).collect();
    engine.run(mvecs, 0);
    let out = engine.finish();
    Ok(GroebnerBasis {
        ring: ring.clone(),
        order,
        gens: out.iter().map(|v| mvec_to_poly(ring, v)).collect(),
    })
}

/// Extend a reduced basis with new generators; pairs inside the old basis
/// are skipped because they already reduce to zero.
pub fn buchberger_extend(gb: &GroebnerBasis, extra: &[MPoly]) -> Result<GroebnerBasis> {
    check_same_ring(&gb.ring, extra)?;
    if extra.iter().all(|g| g.is_zero()) {
        return Ok(gb.clone());
    }
    let mut engine = GbEngine::new(&gb.ring, gb.order, true);
    let mut mvecs: Vec<MVec> = gb
        .gens
        .iter()
        .map(|g| MVec { terms: poly_to_mvec(g, 0, gb.order) })
        .collect();
    let prefix = mvecs.len();
    // seed pairs between prefix elements are not needed, but pairs between
    // prefix and new elements are; add_with_pairs handles that as extras
    // arrive
    let mut extras: Vec<MPoly> = extra.iter().filter(|g| !g.is_zero()).cloned().collect();
    extras.sort_by(cmp_poly_canonical);
    extras.dedup();
    mvecs.extend(extras.iter().map(|g| MVec { terms: poly_to_mvec(g, 0, gb.order) }));
    engine.run(mvecs, prefix);
    let out = engine.finish();
    Ok(GroebnerBasis {
        ring: gb.ring.clone(),
        order: gb.order,
        gens: out.iter().map(|v| mvec_to_poly(&gb.ring, v)).collect(),
    })
}

/// Normal form of f against a reduced basis: the unique representative of
/// f + I with no term divisible by a leading monomial.
pub fn normal_form(f: &MPoly, gb: &GroebnerBasis) -> Result<MPoly> {
    if f.ring() != &gb.ring {
        return Err(Error::MixedRings);
    }
    let mut engine = GbEngine::new(&gb.ring, gb.order, true);
    engine.set_basis(
        gb.gens.iter().map(|g| MVec { terms: poly_to_mvec(g, 0, gb.order) }).collect(),
    );
    let v = MVec { terms: poly_to_mvec(f, 0, gb.order) };
    let nf = engine.reduce_full(v, None);
    Ok(mvec_to_poly(&gb.ring, &nf))
}

pub fn ideal_membership(f: &MPoly, gb: &GroebnerBasis) -> Result<bool> {
    Ok(normal_form(f, gb)?.is_zero())
}

/// Reduced Groebner basis of the submodule of R^q generated by `gens`,
/// position over term with the given base order. Input order is preserved
/// (trailing-component layouts depend on it).
pub fn module_buchberger(
    ring: &MultiGradedRing,
    gens: &[FreeModuleVector],
    order: MonomialOrder,
) -> Result<Vec<FreeModuleVector>> {
    if gens.is_empty() {
        return Ok(vec![]);
    }
    let ncomp = gens[0].len();
    for g in gens {
        if g.ring() != ring {
            return Err(Error::MixedRings);
        }
        if g.len() != ncomp {
            return Err(Error::ShapeMismatch(format!(
                "module vectors of lengths {} and {}",
                ncomp,
                g.len()
            )));
        }
    }
    let mut engine = GbEngine::new(ring, order, false);
    let mvecs = gens.iter().map(|g| vec_to_mvec(g, order)).collect();
    engine.run(mvecs, 0);
    let out = engine.finish();
    Ok(out.iter().map(|v| mvec_to_vec(ring, v, ncomp)).collect())
}

/// Extend a module basis from `module_buchberger` with new vectors; pairs
/// inside the old basis are skipped because they already reduce to zero.
pub fn module_buchberger_extend(
    ring: &MultiGradedRing,
    gb: &[FreeModuleVector],
    extra: &[FreeModuleVector],
    order: MonomialOrder,
) -> Result<Vec<FreeModuleVector>> {
    if gb.is_empty() {
        return module_buchberger(ring, extra, order);
    }
    let ncomp = gb[0].len();
    for g in gb.iter().chain(extra) {
        if g.ring() != ring {
            return Err(Error::MixedRings);
        }
        if g.len() != ncomp {
            return Err(Error::ShapeMismatch(format!(
                "module vectors of lengths {} and {}",
                ncomp,
                g.len()
            )));
        }
    }
    let mut engine = GbEngine::new(ring, order, false);
    let mut mvecs: Vec<MVec> = gb.iter().map(|g| vec_to_mvec(g, order)).collect();
    let prefix = mvecs.len();
    mvecs.extend(extra.iter().map(|g| vec_to_mvec(g, order)));
    engine.run(mvecs, prefix);
    let out = engine.finish();
    Ok(out.iter().map(|v| mvec_to_vec(ring, v, ncomp)).collect())
}

/// Normal form of a vector against a module basis from `module_buchberger`.
pub fn module_normal_form(
    v: &FreeModuleVector,
    gb: &[FreeModuleVector],
    order: MonomialOrder,
) -> Result<FreeModuleVector> {
    let ring = v.ring().clone();
    let mut engine = GbEngine::new(&ring, order, false);
    engine.set_basis(gb.iter().map(|g| vec_to_mvec(g, order)).collect());
    let nf = engine.reduce_full(vec_to_mvec(v, order), None);
    Ok(mvec_to_vec(&ring, &nf, v.len()))
}

/// Generators of the syzygy module of `forms` modulo the ideal generated by
/// `modulo`: all (h_0, ..., h_{n-1}) with sum h_i forms_i in (modulo).
pub fn syzygies(forms: &[MPoly], modulo: &[MPoly]) -> Result<Vec<FreeModuleVector>> {
    let Some(first) = forms.first() else {
        return Err(Error::BadArity { expected: 1, got: 0 });
    };
    let ring = first.ring().clone();
    check_same_ring(&ring, forms.iter().chain(modulo))?;
    let n = forms.len();
    let order = MonomialOrder::Grevlex;
    // vectors (forms_i | e_i) and (g | 0) in R^(1+n)
    let mut gens: Vec<MVec> = Vec::with_capacity(n + modulo.len());
    for (i, f) in forms.iter().enumerate() {
        let mut terms = poly_to_mvec(f, 0, order);
        terms.push((1 + i as u32, Monomial::one(ring.nvars()), ring.field().one()));
        gens.push(MVec { terms });
    }
    for g in modulo {
        if g.is_zero() {
            continue;
        }
        gens.push(MVec { terms: poly_to_mvec(g, 0, order) });
    }
    let mut engine = GbEngine::new(&ring, order, false);
    engine.run(gens, 0);
    let out = engine.finish();
    let mut syz = Vec::new();
    for v in &out {
        if v.is_zero() {
            continue;
        }
        if v.lead().0 >= 1 {
            // primary part vanished: trailing components are a syzygy
            let full = mvec_to_vec(&ring, v, 1 + n);
            let comps = full.into_components();
            syz.push(FreeModuleVector {
                ring: ring.clone(),
                components: comps[1..].to_vec(),
            });
        }
    }
    Ok(syz)
}

/// Kernel of the map R^n -> (R/I)^q sending e_j to `cols[j]`.
pub fn kernel_of_map(cols: &[FreeModuleVector], modulo: &[MPoly]) -> Result<Vec<FreeModuleVector>> {
    let Some(first) = cols.first() else {
        return Err(Error::BadArity { expected: 1, got: 0 });
    };
    let ring = first.ring().clone();
    let q = first.len();
    let n = cols.len();
    let order = MonomialOrder::Grevlex;
    let mut gens: Vec<MVec> = Vec::new();
    for (j, col) in cols.iter().enumerate() {
        if col.ring() != &ring || col.len() != q {
            return Err(Error::ShapeMismatch("matrix columns disagree".into()));
        }
        let mut v = vec_to_mvec(col, order);
        v.terms.push((q as u32 + j as u32, Monomial::one(ring.nvars()), ring.field().one()));
        gens.push(v);
    }
    for g in modulo {
        if g.is_zero() {
            continue;
        }
        check_same_ring(&ring, [g])?;
        for l in 0..q {
            gens.push(MVec { terms: poly_to_mvec(g, l as u32, order) });
        }
    }
    let mut engine = GbEngine::new(&ring, order, false);
    engine.run(gens, 0);
    let out = engine.finish();
    let mut ker = Vec::new();
    for v in &out {
        if v.is_zero() {
            continue;
        }
        if v.lead().0 >= q as u32 {
            let full = mvec_to_vec(&ring, v, q + n);
            let comps = full.into_components();
            ker.push(FreeModuleVector {
                ring: ring.clone(),
                components: comps[q..].to_vec(),
            });
        }
    }
    Ok(ker)
}

/// Kernel of the transpose of the matrix whose columns are `syz`, as a map
/// (R/I)^m -> (R/I)^p with m the vector length and p the column count.
/// Returns minimal homogeneous generators.
pub fn kernel_transpose(
    syz: &[FreeModuleVector],
    modulo: &[MPoly],
) -> Result<Vec<FreeModuleVector>> {
    let Some(first) = syz.first() else {
        return Err(Error::BadArity { expected: 1, got: 0 });
    };
    let ring = first.ring().clone();
    let m = first.len();
    // columns of the transpose are the rows of the original matrix
    let mut cols = Vec::with_capacity(m);
    for j in 0..m {
        let comps: Vec<MPoly> = syz.iter().map(|s| s.components()[j].clone()).collect();
        cols.push(FreeModuleVector { ring: ring.clone(), components: comps });
    }
    let ker = kernel_of_map(&cols, modulo)?;
    minimal_module_generators(&ker, modulo)
}

/// Minimal homogeneous generating set of the ideal generated by `gens`.
/// Greedy in ascending total degree: a generator is kept iff it is not in
/// the ideal of the generators kept so far, which for multihomogeneous
/// input yields a minimal set by the graded Nakayama argument.
pub fn minimal_generators(gens: &[MPoly]) -> Result<Vec<MPoly>> {
    let nonzero: Vec<&MPoly> = gens.iter().filter(|g| !g.is_zero()).collect();
    let Some(first) = nonzero.first() else {
        return Ok(vec![]);
    };
    let ring = first.ring().clone();
    for g in &nonzero {
        if g.multidegree()?.is_none() {
            return Err(Error::NotHomogeneous(g.render()));
        }
    }
    let mut sorted: Vec<MPoly> = nonzero.into_iter().cloned().collect();
    // ascending degree is what makes the greedy pass minimal; inside one
    // degree, scan bigger leads first so x is preferred over y
    sorted.sort_by(|a, b| {
        a.terms()[0]
            .0
            .total_degree()
            .cmp(&b.terms()[0].0.total_degree())
            .then_with(|| cmp_poly_canonical(b, a))
    });
    sorted.dedup();
    let mut kept: Vec<MPoly> = Vec::new();
    let mut gb = buchberger(&ring, &[], MonomialOrder::Grevlex)?;
    for g in sorted {
        if !normal_form(&g, &gb)?.is_zero() {
            gb = buchberger_extend(&gb, std::slice::from_ref(&g))?;
            kept.push(g);
        }
    }
    Ok(kept)
}

/// Module analogue of `minimal_generators`, over R/I.
pub fn minimal_module_generators(
    gens: &[FreeModuleVector],
    modulo: &[MPoly],
) -> Result<Vec<FreeModuleVector>> {
    let nonzero: Vec<&FreeModuleVector> = gens.iter().filter(|g| !g.is_zero()).collect();
    let Some(first) = nonzero.first() else {
        return Ok(vec![]);
    };
    let ring = first.ring().clone();
    let q = first.len();
    for g in &nonzero {
        if g.multidegree()?.is_none() {
            return Err(Error::NotHomogeneous(g.render()));
        }
    }
    let mut sorted: Vec<FreeModuleVector> = nonzero.into_iter().cloned().collect();
    sorted.sort_by(|a, b| {
        let da = a.multidegree().unwrap().unwrap();
        let db = b.multidegree().unwrap().unwrap();
        da.total().cmp(&db.total()).then_with(|| {
            for (x, y) in a.components().iter().zip(b.components()) {
                match cmp_poly_canonical(y, x) {
                    Ordering::Equal => {}
                    ord => return ord,
                }
            }
            Ordering::Equal
        })
    });
    sorted.dedup();
    let order = MonomialOrder::Grevlex;
    // base module: I spread across all components
    let mut base: Vec<FreeModuleVector> = Vec::new();
    for g in modulo {
        if g.is_zero() {
            continue;
        }
        for l in 0..q {
            let mut comps = vec![ring.zero(); q];
            comps[l] = g.clone();
            base.push(FreeModuleVector { ring: ring.clone(), components: comps });
        }
    }
    let mut gb = module_buchberger(&ring, &base, order)?;
    let mut kept: Vec<FreeModuleVector> = Vec::new();
    for g in sorted {
        if !module_normal_form(&g, &gb, order)?.is_zero() {
            gb = module_buchberger_extend(&ring, &gb, std::slice::from_ref(&g), order)?;
            kept.push(g.normalized()?);
        }
    }
    Ok(kept)
}

/// Generators (inside the original ring) of the elimination ideal
/// I cap K[remaining variables], where `drop` lists the variables to remove.
pub fn eliminate(gens: &[MPoly], drop: &[usize]) -> Result<Vec<MPoly>> {
    let Some(first) = gens.iter().find(|g| !g.is_zero()) else {
        return Ok(vec![]);
    };
    let ring = first.ring().clone();
    check_same_ring(&ring, gens)?;
    let n = ring.nvars();
    let mut is_dropped = vec![false; n];
    for &d in drop {
        is_dropped[d] = true;
    }
    let k = drop.len();
    // scratch ring: dropped variables first, grading forgotten
    let mut perm: Vec<usize> = Vec::with_capacity(n);
    perm.extend(drop.iter().copied());
    perm.extend((0..n).filter(|i| !is_dropped[*i]));
    let names: Vec<String> = perm.iter().map(|&i| ring.var_name(i).to_string()).collect();
    let scratch = MultiGradedRing::make_ring(*ring.field(), &[n - 1], &names)?;
    let mut var_map = vec![0usize; n];
    for (pos, &orig) in perm.iter().enumerate() {
        var_map[orig] = pos;
    }
    let moved: Vec<MPoly> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| g.embed(&scratch, &var_map))
        .collect::<Result<Vec<_>>>()?;
    let gb = buchberger(&scratch, &moved, MonomialOrder::Block(k))?;
    let mut back_map = vec![0usize; n];
    for (pos, &orig) in perm.iter().enumerate() {
        back_map[pos] = orig;
    }
    let mut out = Vec::new();
    for g in gb.gens() {
        let (lm, _) = g.leading_term(MonomialOrder::Block(k)).unwrap();
        if lm.exps()[..k].iter().all(|&e| e == 0) {
            debug_assert!(
                g.terms().iter().all(|(m, _)| m.exps()[..k].iter().all(|&e| e == 0)),
                "tail of an elimination-ideal element stays in the subring"
            );
            out.push(g.embed(&ring, &back_map)?);
        }
    }
    Ok(out)
}

/// Saturation of a homogeneous ideal by one variable, through a single
/// Groebner basis: under grevlex with v last, dividing every basis element
/// by its v-power generates (and is a basis of) I : v^infinity.
pub(crate) fn saturate_by_variable(
    ring: &MultiGradedRing,
    gens: &[MPoly],
    v: usize,
) -> Result<Vec<MPoly>> {
    let order = MonomialOrder::GrevlexVarLast(v);
    let gb = buchberger(ring, gens, order)?;
    let mut out = Vec::with_capacity(gb.gens().len());
    for g in gb.gens() {
        let shift = g.terms().iter().map(|(m, _)| m.exps()[v]).min().unwrap_or(0);
        if shift == 0 {
            out.push(g.clone());
        } else {
            let terms: Vec<(Monomial, FieldElem)> = g
                .terms()
                .iter()
                .map(|(m, c)| {
                    let mut e = m.exps().to_vec();
                    e[v] -= shift;
                    (Monomial::new(&e), c.clone())
                })
                .collect();
            out.push(ring.from_terms(terms));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::seeded_rng;
    use crate::polyring::parse_poly;
    use rand::Rng;

    fn ring_qq(names: &[&str]) -> MultiGradedRing {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        MultiGradedRing::make_ring(FieldSpec::rationals(), &[names.len() - 1], &names).unwrap()
    }

    fn ring_gf(p: u64, names: &[&str]) -> MultiGradedRing {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        MultiGradedRing::make_ring(FieldSpec::prime_field(p).unwrap(), &[names.len() - 1], &names)
            .unwrap()
    }

    fn polys(r: &MultiGradedRing, srcs: &[&str]) -> Vec<MPoly> {
        srcs.iter().map(|s| parse_poly(r, s).unwrap()).collect()
    }

    #[test]
    fn basis_of_a_principal_ideal_is_monic_generator() {
        let r = ring_qq(&["x", "y"]);
        let gb = buchberger(&r, &polys(&r, &["2*x^2 - 2*y^2"]), MonomialOrder::Grevlex).unwrap();
        assert_eq!(gb.gens(), &polys(&r, &["x^2 - y^2"]));
    }

    #[test]
    fn unit_ideal_detected() {
        let r = ring_qq(&["x", "y"]);
        let gb = buchberger(&r, &polys(&r, &["x", "x + 1"]), MonomialOrder::Grevlex).unwrap();
        assert!(gb.is_unit_ideal());
        assert_eq!(gb.gens().len(), 1);
    }

    #[test]
    fn twisted_cubic_elimination() {
        // x - t, y - t^2: eliminating t leaves y - x^2
        let r = ring_qq(&["t", "x", "y"]);
        let out = eliminate(&polys(&r, &["x - t", "y - t^2"]), &[0]).unwrap();
        assert_eq!(out, polys(&r, &["x^2 - y"]));
    }

    #[test]
    fn spairs_of_output_reduce_to_zero() {
        let mut rng = seeded_rng(20);
        let rq = ring_qq(&["x", "y", "z"]);
        let rp = ring_gf(101, &["x", "y", "z"]);
        for ring in [&rq, &rp] {
            for trial in 0..15 {
                let gens: Vec<MPoly> = (0..3)
                    .map(|_| {
                        let d = MultiDeg(vec![rng.random_range(1..=3u32)]);
                        ring.random_form(&d, &mut rng)
                    })
                    .collect();
                let gb = buchberger(ring, &gens, MonomialOrder::Grevlex).unwrap();
                for g in &gens {
                    assert!(
                        normal_form(g, &gb).unwrap().is_zero(),
                        "generator reduces, trial {}",
                        trial
                    );
                }
                for (i, a) in gb.gens().iter().enumerate() {
                    for b in gb.gens().iter().skip(i + 1) {
                        let (ma, ca) = a.leading_term(MonomialOrder::Grevlex).unwrap();
                        let (mb, cb) = b.leading_term(MonomialOrder::Grevlex).unwrap();
                        let l = ma.lcm(mb);
                        let f = ring.field();
                        let s = a
                            .mul_term(&l.div(ma).unwrap(), &f.inv(ca).unwrap())
                            .unwrap()
                            .sub(&b.mul_term(&l.div(mb).unwrap(), &f.inv(cb).unwrap()).unwrap())
                            .unwrap();
                        assert!(normal_form(&s, &gb).unwrap().is_zero());
                    }
                }
                // idempotence and determinism
                let gb2 = buchberger(ring, gb.gens(), MonomialOrder::Grevlex).unwrap();
                assert_eq!(gb.gens(), gb2.gens());
                let mut shuffled = gens.clone();
                shuffled.reverse();
                let gb3 = buchberger(ring, &shuffled, MonomialOrder::Grevlex).unwrap();
                assert_eq!(gb.gens(), gb3.gens());
            }
        }
    }

    #[test]
    fn normal_form_is_linear_and_stable() {
        let r = ring_gf(65537, &["x", "y", "z"]);
        let gens = polys(&r, &["x^2 + y*z", "y^3 - z^3"]);
        let gb = buchberger(&r, &gens, MonomialOrder::Grevlex).unwrap();
        let mut rng = seeded_rng(8);
        for _ in 0..40 {
            let f = r.random_form(&MultiDeg(vec![3]), &mut rng);
            let g = r.random_form(&MultiDeg(vec![3]), &mut rng);
            let nf_sum = normal_form(&f.add(&g).unwrap(), &gb).unwrap();
            let sum_nf = normal_form(&f, &gb)
                .unwrap()
                .add(&normal_form(&g, &gb).unwrap())
                .unwrap();
            assert_eq!(nf_sum, sum_nf);
            let nf = normal_form(&f, &gb).unwrap();
            assert_eq!(normal_form(&nf, &gb).unwrap(), nf);
        }
    }

    #[test]
    fn syzygies_of_two_monomials() {
        let r = ring_qq(&["x", "y"]);
        let forms = polys(&r, &["x^2", "x*y"]);
        let syz = syzygies(&forms, &[]).unwrap();
        assert_eq!(syz.len(), 1);
        let v = syz[0].normalized().unwrap();
        assert_eq!(v.components(), &polys(&r, &["y", "-x"]));
    }

    #[test]
    fn syzygies_vanish_against_their_forms() {
        let mut rng = seeded_rng(31);
        let r = ring_gf(101, &["x", "y", "z"]);
        for _ in 0..10 {
            let forms: Vec<MPoly> = (0..3)
                .map(|_| r.random_form(&MultiDeg(vec![2]), &mut rng))
                .collect();
            let modulo = polys(&r, &["x^3 + y^3 + z^3"]);
            let syz = syzygies(&forms, &modulo).unwrap();
            assert!(!syz.is_empty());
            let gb = buchberger(&r, &modulo, MonomialOrder::Grevlex).unwrap();
            for s in &syz {
                let mut acc = r.zero();
                for (h, f) in s.components().iter().zip(&forms) {
                    acc = acc.add(&h.mul(f).unwrap()).unwrap();
                }
                assert!(normal_form(&acc, &gb).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn kernel_transpose_recovers_coordinates_on_a_line() {
        // syzygies of (x, y) on P^1 are generated by (y, -x); the kernel of
        // the transpose is generated by (x, y) again
        let r = ring_qq(&["x", "y"]);
        let forms = polys(&r, &["x", "y"]);
        let syz = syzygies(&forms, &[]).unwrap();
        assert_eq!(syz.len(), 1);
        let ker = kernel_transpose(&syz, &[]).unwrap();
        assert_eq!(ker.len(), 1);
        assert_eq!(ker[0].components(), &polys(&r, &["x", "y"]));
    }

    #[test]
    fn kernel_transpose_finds_the_second_representative_on_a_quadric() {
        // on V(x*w - y*z), the map (x, y) extends with the representative
        // (z, w); the kernel of the transposed syzygy matrix sees both
        let r = ring_qq(&["x", "y", "z", "w"]);
        let modulo = polys(&r, &["x*w - y*z"]);
        let forms = polys(&r, &["x", "y"]);
        let syz = syzygies(&forms, &modulo).unwrap();
        let ker = kernel_transpose(&syz, &modulo).unwrap();
        assert_eq!(ker.len(), 2);
        let rendered: Vec<String> = ker.iter().map(|v| v.render()).collect();
        assert!(rendered.contains(&"(x, y)".to_string()), "{:?}", rendered);
        assert!(rendered.contains(&"(z, w)".to_string()), "{:?}", rendered);
    }

    #[test]
    fn minimal_generators_drop_redundancies() {
        let r = ring_qq(&["x", "y"]);
        let out = minimal_generators(&polys(&r, &["x^2", "x", "y", "x*y"])).unwrap();
        assert_eq!(out, polys(&r, &["x", "y"]));
        let out = minimal_generators(&polys(&r, &["x + y", "x - y", "x^2"])).unwrap();
        assert_eq!(out.len(), 2);
        let bad = minimal_generators(&polys(&r, &["x + y^2"]));
        assert!(matches!(bad, Err(Error::NotHomogeneous(_))));
    }

    #[test]
    fn block_order_basis_contains_elimination_ideal() {
        let r = ring_qq(&["t", "x", "y", "z"]);
        // rational normal curve: x - t, y - t^2, z - t^3
        let out = eliminate(&polys(&r, &["x - t", "y - t^2", "z - t^3"]), &[0]).unwrap();
        let gb = buchberger(&r, &out, MonomialOrder::Grevlex).unwrap();
        for g in polys(&r, &["x^2 - y", "x*y - z", "y^2 - x*z"]) {
            assert!(normal_form(&g, &gb).unwrap().is_zero());
        }
        assert!(!gb.is_unit_ideal());
        assert_eq!(gb.gens().len(), 3);
    }

    #[test]
    fn saturate_by_variable_strips_powers() {
        let r = ring_qq(&["x", "y", "z"]);
        // (x^2*y, x^2*z) : x^infinity = (y, z)
        let out = saturate_by_variable(&r, &polys(&r, &["x^2*y", "x^2*z"]), 0).unwrap();
        let gb = buchberger(&r, &out, MonomialOrder::Grevlex).unwrap();
        assert_eq!(gb.gens(), &polys(&r, &["z", "y"]));
    }

    #[test]
    fn module_basis_reduces_membership() {
        let r = ring_qq(&["x", "y"]);
        let v1 = FreeModuleVector::new(&r, polys(&r, &["x", "y"])).unwrap();
        let v2 = FreeModuleVector::new(&r, polys(&r, &["y", "x"])).unwrap();
        let gb = module_buchberger(&r, &[v1.clone(), v2.clone()], MonomialOrder::Grevlex).unwrap();
        // x*v1 + y*v2 is inside
        let probe = FreeModuleVector::new(
            &r,
            vec![
                parse_poly(&r, "x^2 + y^2").unwrap(),
                parse_poly(&r, "2*x*y").unwrap(),
            ],
        )
        .unwrap();
        let nf = module_normal_form(&probe, &gb, MonomialOrder::Grevlex).unwrap();
        assert!(nf.is_zero());
        let outside = FreeModuleVector::new(&r, polys(&r, &["x", "x"])).unwrap();
        let nf = module_normal_form(&outside, &gb, MonomialOrder::Grevlex).unwrap();
        assert!(!nf.is_zero());
    }

    #[test]
    fn qq_and_gf_bases_agree_on_good_reduction() {
        let rq = ring_qq(&["x", "y", "z"]);
        let rp = ring_gf(65537, &["x", "y", "z"]);
        let gens_q = polys(&rq, &["x^2 - y*z", "x*y - z^2"]);
        let gens_p = polys(&rp, &["x^2 - y*z", "x*y - z^2"]);
        let gb_q = buchberger(&rq, &gens_q, MonomialOrder::Grevlex).unwrap();
        let gb_p = buchberger(&rp, &gens_p, MonomialOrder::Grevlex).unwrap();
        let reduced: Vec<MPoly> = gb_q
            .gens()
            .iter()
            .map(|g| g.reduce_coeffs_mod_p(&rp).unwrap())
            .collect();
        assert_eq!(reduced, gb_p.gens());
    }
}
