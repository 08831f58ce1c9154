//! Multigraded Hilbert-series numerators, Krull dimension, multidegrees
//! and Segre-degree conversion.
//!
//! Everything runs through the initial ideal: the Z^r-graded Hilbert
//! series is constant along the Groebner degeneration, so the multidegree
//! is the lowest homogeneous part of the numerator after t_j -> 1 - T_j,
//! and the dimension is the largest independent set of variables.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::idealcalc::MHIdeal;
use crate::polyring::{Monomial, MultiDeg, MultiGradedRing};

/// Integer polynomial in the grading variables t_1..t_r.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KPoly {
    nfactors: usize,
    terms: BTreeMap<Vec<u32>, i128>,
}

impl KPoly {
    pub fn zero(nfactors: usize) -> Self {
        KPoly { nfactors, terms: BTreeMap::new() }
    }

    pub fn one(nfactors: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![0; nfactors], 1);
        KPoly { nfactors, terms }
    }

    pub fn nfactors(&self) -> usize {
        self.nfactors
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, i128> {
        &self.terms
    }

    pub fn coeff(&self, e: &[u32]) -> i128 {
        self.terms.get(e).copied().unwrap_or(0)
    }

    fn insert(&mut self, e: Vec<u32>, c: i128) {
        if c == 0 {
            return;
        }
        let slot = self.terms.entry(e).or_insert(0);
        *slot += c;
        if *slot == 0 {
            let key: Vec<u32> = self
                .terms
                .iter()
                .find(|(_, v)| **v == 0)
                .map(|(k, _)| k.clone())
                .unwrap();
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, rhs: &KPoly) -> KPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert(e.clone(), *c);
        }
        out
    }

    pub fn mul(&self, rhs: &KPoly) -> KPoly {
        let mut out = KPoly::zero(self.nfactors);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.insert(e, ca * cb);
            }
        }
        out
    }

    /// Multiply by t^d.
    pub fn shift(&self, d: &MultiDeg) -> KPoly {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let e: Vec<u32> = e.iter().zip(&d.0).map(|(a, b)| a + b).collect();
                (e, *c)
            })
            .collect();
        KPoly { nfactors: self.nfactors, terms }
    }

    /// 1 - t^d.
    pub fn one_minus(d: &MultiDeg) -> KPoly {
        let nfactors = d.0.len();
        let mut terms = BTreeMap::new();
        terms.insert(vec![0; nfactors], 1);
        if d.total() == 0 {
            terms.clear();
        } else {
            terms.insert(d.0.clone(), -1);
        }
        KPoly { nfactors, terms }
    }
}

/// Numerator of the Z^r-graded Hilbert series of R/m for a monomial ideal.
pub fn k_polynomial(m: &MHIdeal) -> Result<KPoly> {
    let ring = m.ring();
    let mut monos = Vec::with_capacity(m.gens().len());
    for g in m.gens() {
        if g.num_terms() != 1 {
            return Err(Error::NotMonomial(g.render()));
        }
        monos.push(g.terms()[0].0.clone());
    }
    let mut memo = HashMap::new();
    Ok(k_polynomial_of_monomials(ring, monos, &mut memo))
}

fn minimalize(mut monos: Vec<Monomial>) -> Vec<Monomial> {
    monos.sort();
    monos.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(monos.len());
    // ascending order lets earlier (smaller) monomials absorb later ones
    for m in monos {
        if !kept.iter().any(|k| k.divides(&m)) {
            kept.push(m);
        }
    }
    kept
}

fn k_polynomial_of_monomials(
    ring: &MultiGradedRing,
    monos: Vec<Monomial>,
    memo: &mut HashMap<Vec<Vec<u16>>, KPoly>,
) -> KPoly {
    let r = ring.num_factors();
    let monos = minimalize(monos);
    if monos.is_empty() {
        return KPoly::one(r);
    }
    if monos.iter().any(|m| m.is_one()) {
        return KPoly::zero(r);
    }
    let key: Vec<Vec<u16>> = monos.iter().map(|m| m.exps().to_vec()).collect();
    if let Some(hit) = memo.get(&key) {
        return hit.clone();
    }
    let n = ring.nvars();
    let mut occurrence = vec![0usize; n];
    for m in &monos {
        for (i, &e) in m.exps().iter().enumerate() {
            if e > 0 {
                occurrence[i] += 1;
            }
        }
    }
    let (pivot, hits) = occurrence
        .iter()
        .enumerate()
        .max_by_key(|(i, c)| (**c, n - i))
        .map(|(i, c)| (i, *c))
        .unwrap();
    let out = if hits <= 1 {
        // pairwise coprime generators: Koszul product
        let mut acc = KPoly::one(r);
        for m in &monos {
            acc = acc.mul(&KPoly::one_minus(&ring.multidegree_of_monomial(m)));
        }
        acc
    } else {
        let colon: Vec<Monomial> = monos
            .iter()
            .map(|m| {
                if m.exps()[pivot] > 0 {
                    let mut e = m.exps().to_vec();
                    e[pivot] -= 1;
                    Monomial::new(&e)
                } else {
                    m.clone()
                }
            })
            .collect();
        let mut plus: Vec<Monomial> = monos
            .iter()
            .filter(|m| m.exps()[pivot] == 0)
            .cloned()
            .collect();
        plus.push(Monomial::var(n, pivot));
        let shift = MultiDeg::unit(r, ring.factor_of_var(pivot));
        let n_plus = k_polynomial_of_monomials(ring, plus, memo);
        let n_colon = k_polynomial_of_monomials(ring, colon, memo);
        n_plus.add(&n_colon.shift(&shift))
    };
    memo.insert(key, out.clone());
    out
}

/// Krull dimension of R/a: the largest set of variables meeting no leading
/// monomial of a.
pub fn krull_dim(a: &MHIdeal) -> Result<usize> {
    let gb = a.gb()?;
    if gb.is_unit_ideal() {
        return Err(Error::UnitIdeal);
    }
    let n = a.ring().nvars();
    assert!(n <= 60, "independent-set search is exponential in variables");
    let mut masks: Vec<u64> = gb
        .leading_monomials()
        .iter()
        .map(|m| {
            m.exps()
                .iter()
                .enumerate()
                .fold(0u64, |acc, (i, &e)| if e > 0 { acc | (1 << i) } else { acc })
        })
        .collect();
    masks.sort();
    masks.dedup();
    let mut best = 0usize;
    for subset in 0..(1u64 << n) {
        let pc = subset.count_ones() as usize;
        if pc <= best {
            continue;
        }
        if masks.iter().all(|&g| g & !subset != 0) {
            best = pc;
        }
    }
    Ok(best)
}

/// Class of a subscheme in the Chow ring of the ambient product:
/// homogeneous of degree codim in T_0..T_{r-1} with exponents capped by
/// the factor dimensions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultidegreePoly {
    factor_dims: Vec<usize>,
    dim: usize,
    codim: usize,
    terms: BTreeMap<Vec<u32>, i128>,
}

impl MultidegreePoly {
    pub fn factor_dims(&self) -> &[usize] {
        &self.factor_dims
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn codim(&self) -> usize {
        self.codim
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, i128> {
        &self.terms
    }

    pub fn coeff(&self, e: &[u32]) -> i128 {
        self.terms.get(e).copied().unwrap_or(0)
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut parts: Vec<String> = Vec::new();
        for (e, c) in self.terms.iter().rev() {
            let mut factors: Vec<String> = Vec::new();
            for (j, &a) in e.iter().enumerate() {
                if a == 1 {
                    factors.push(format!("T_{}", j));
                } else if a > 1 {
                    factors.push(format!("T_{}^{}", j, a));
                }
            }
            let vars = factors.join(" ");
            let part = if vars.is_empty() {
                format!("{}", c)
            } else if *c == 1 {
                vars
            } else {
                format!("{} {}", c, vars)
            };
            parts.push(part);
        }
        parts.join(" + ")
    }
}

impl fmt::Display for MultidegreePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Multidegree of a proper ideal: lowest homogeneous part of the numerator
/// K(1 - T), which sits in degree codim.
pub fn multidegree(a: &MHIdeal) -> Result<MultidegreePoly> {
    let gb = a.gb()?;
    if gb.is_unit_ideal() {
        return Err(Error::UnitIdeal);
    }
    multidegree_from_initial(a.ring(), &gb.leading_monomials(), krull_dim(a)?)
}

pub(crate) fn multidegree_from_initial(
    ring: &MultiGradedRing,
    init: &[Monomial],
    krull: usize,
) -> Result<MultidegreePoly> {
    let r = ring.num_factors();
    if krull < r {
        return Err(Error::EmptyVariety);
    }
    let dim = krull - r;
    let codim = ring.nvars() - krull;
    let mut memo = HashMap::new();
    let k = k_polynomial_of_monomials(ring, init.to_vec(), &mut memo);

    // expand K(1 - T) truncated past total degree codim
    let mut acc: BTreeMap<Vec<u32>, i128> = BTreeMap::new();
    for (alpha, c) in k.terms() {
        let mut partial: BTreeMap<Vec<u32>, i128> = BTreeMap::new();
        partial.insert(vec![0; r], *c);
        for (j, &aj) in alpha.iter().enumerate() {
            if aj == 0 {
                continue;
            }
            let mut next: BTreeMap<Vec<u32>, i128> = BTreeMap::new();
            for (e, v) in &partial {
                let used: u32 = e.iter().sum();
                for k2 in 0..=(codim as u32 - used) {
                    let b = binomial(aj as u64, k2 as u64);
                    if b == 0 {
                        continue;
                    }
                    let sign = if k2 % 2 == 0 { 1 } else { -1 };
                    let mut e2 = e.clone();
                    e2[j] += k2;
                    let slot = next.entry(e2).or_insert(0);
                    *slot += v * b * sign;
                }
            }
            next.retain(|_, v| *v != 0);
            partial = next;
        }
        for (e, v) in partial {
            let slot = acc.entry(e).or_insert(0);
            *slot += v;
        }
    }
    acc.retain(|_, v| *v != 0);
    for (e, _) in &acc {
        let total: u32 = e.iter().sum();
        if (total as usize) < codim {
            return Err(Error::DegreeMismatch(format!(
                "numerator has unexpected low-degree part at {:?}",
                e
            )));
        }
    }
    let terms: BTreeMap<Vec<u32>, i128> = acc
        .into_iter()
        .filter(|(e, _)| e.iter().sum::<u32>() as usize == codim)
        .collect();
    Ok(MultidegreePoly {
        factor_dims: (0..r).map(|j| ring.factor_vars(j).len() - 1).collect(),
        dim,
        codim,
        terms,
    })
}

fn binomial(n: u64, k: u64) -> i128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc
}

/// i! / prod(parts!) when parts sum to i, else 0.
fn multinomial(total: u32, parts: &[u32]) -> i128 {
    if parts.iter().sum::<u32>() != total {
        return 0;
    }
    let mut acc: i128 = 1;
    let mut rem = total;
    for &p in parts {
        acc *= binomial(rem as u64, p as u64);
        rem -= p;
    }
    acc
}

/// Degrees of a k-dimensional class pushed to the product of the Segre
/// images of the first `split_at` factors and of the rest:
/// d_i = coefficient of the top monomial in (sum a)^i (sum b)^(k-i) P,
/// listed for i = 0..=k with zeros where a cut is infeasible.
pub fn segre_convert(p: &MultidegreePoly, k: usize, split_at: usize) -> Result<Vec<i128>> {
    let r = p.factor_dims.len();
    if split_at > r {
        return Err(Error::ShapeMismatch(format!(
            "split at {} of {} factors",
            split_at, r
        )));
    }
    let ambient: usize = p.factor_dims.iter().sum();
    if k + p.codim != ambient || k != p.dim {
        return Err(Error::DegreeMismatch(format!(
            "class of dimension {} used as dimension {}",
            p.dim, k
        )));
    }
    let mut out = Vec::with_capacity(k + 1);
    for i in 0..=k {
        let mut d: i128 = 0;
        for (e, c) in &p.terms {
            // complementary exponents to reach the top class
            let mut ok = true;
            let mut parts_a: Vec<u32> = Vec::with_capacity(split_at);
            let mut parts_b: Vec<u32> = Vec::with_capacity(r - split_at);
            for (j, (&nj, &ej)) in p.factor_dims.iter().zip(e.iter()).enumerate() {
                let nj = nj as u32;
                if ej > nj {
                    ok = false;
                    break;
                }
                if j < split_at {
                    parts_a.push(nj - ej);
                } else {
                    parts_b.push(nj - ej);
                }
            }
            if !ok {
                continue;
            }
            d += c * multinomial(i as u32, &parts_a) * multinomial((k - i) as u32, &parts_b);
        }
        out.push(d);
    }
    Ok(out)
}

/// Degree of the subscheme under the Segre embedding of the full product.
pub fn segre_degree(a: &MHIdeal) -> Result<i128> {
    let md = multidegree(a)?;
    let k = md.dim();
    let r = md.factor_dims.len();
    Ok(segre_convert(&md, k, r)?[k])
}
