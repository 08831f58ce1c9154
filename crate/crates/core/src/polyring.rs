//! Multigraded polynomial rings and sparse multivariate polynomials.
//!
//! A ring K[x^(1), ..., x^(r)] has r variable groups; group j holds n_j + 1
//! variables, each of multidegree e_j in Z^r. Polynomials store their terms
//! as a vector sorted descending by graded reverse lexicographic order, so
//! equality, hashing and leading-term access are all canonical.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::fields::{FieldElem, FieldSpec};

type Exps = SmallVec<[u16; 18]>;

/// Exponent vector with cached total degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    total: u32,
    e: Exps,
}

impl Monomial {
    pub fn new(exps: &[u16]) -> Self {
        let total = exps.iter().map(|&x| x as u32).sum();
        Monomial { total, e: SmallVec::from_slice(exps) }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial { total: 0, e: smallvec::smallvec![0; nvars] }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e: Exps = smallvec::smallvec![0; nvars];
        e[i] = 1;
        Monomial { total: 1, e }
    }

    pub fn exps(&self) -> &[u16] {
        &self.e
    }

    pub fn total_degree(&self) -> u32 {
        self.total
    }

    pub fn nvars(&self) -> usize {
        self.e.len()
    }

    pub fn is_one(&self) -> bool {
        self.total == 0
    }

    pub fn mul(&self, rhs: &Monomial) -> Monomial {
        debug_assert_eq!(self.e.len(), rhs.e.len());
        let e: Exps = self
            .e
            .iter()
            .zip(&rhs.e)
            .map(|(&a, &b)| a.checked_add(b).expect("exponent overflow"))
            .collect();
        Monomial { total: self.total + rhs.total, e }
    }

    /// Componentwise quotient, None unless rhs divides self.
    pub fn div(&self, rhs: &Monomial) -> Option<Monomial> {
        if self.total < rhs.total {
            return None;
        }
        let mut e = Exps::with_capacity(self.e.len());
        for (&a, &b) in self.e.iter().zip(&rhs.e) {
            if a < b {
                return None;
            }
            e.push(a - b);
        }
        Some(Monomial { total: self.total - rhs.total, e })
    }

    pub fn divides(&self, rhs: &Monomial) -> bool {
        self.total <= rhs.total && self.e.iter().zip(&rhs.e).all(|(&a, &b)| a <= b)
    }

    pub fn lcm(&self, rhs: &Monomial) -> Monomial {
        let e: Exps = self.e.iter().zip(&rhs.e).map(|(&a, &b)| a.max(b)).collect();
        let total = e.iter().map(|&x| x as u32).sum();
        Monomial { total, e }
    }

    pub fn gcd(&self, rhs: &Monomial) -> Monomial {
        let e: Exps = self.e.iter().zip(&rhs.e).map(|(&a, &b)| a.min(b)).collect();
        let total = e.iter().map(|&x| x as u32).sum();
        Monomial { total, e }
    }

    pub fn is_coprime_with(&self, rhs: &Monomial) -> bool {
        self.e.iter().zip(&rhs.e).all(|(&a, &b)| a == 0 || b == 0)
    }

    fn cmp_grevlex(&self, rhs: &Monomial) -> Ordering {
        match self.total.cmp(&rhs.total) {
            Ordering::Equal => {}
            ord => return ord,
        }
        // equal degree: rightmost difference, smaller exponent wins
        for i in (0..self.e.len()).rev() {
            match self.e[i].cmp(&rhs.e[i]) {
                Ordering::Equal => {}
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The canonical order on monomials is graded reverse lexicographic.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_grevlex(other)
    }
}

/// Term orders used by the Groebner engine. `Block(k)` eliminates the first
/// k variables: it compares grevlex on them before grevlex on the rest.
/// `GrevlexVarLast(v)` is grevlex with variable v moved to the last position,
/// which turns colon-by-v saturation into a division of basis elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonomialOrder {
    Grevlex,
    Block(usize),
    GrevlexVarLast(usize),
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::Grevlex => a.cmp_grevlex(b),
            MonomialOrder::Block(k) => {
                let da: u32 = a.e[..k].iter().map(|&x| x as u32).sum();
                let db: u32 = b.e[..k].iter().map(|&x| x as u32).sum();
                match da.cmp(&db) {
                    Ordering::Equal => {}
                    ord => return ord,
                }
                for i in (0..k).rev() {
                    match a.e[i].cmp(&b.e[i]) {
                        Ordering::Equal => {}
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                    }
                }
                match (a.total - da).cmp(&(b.total - db)) {
                    Ordering::Equal => {}
                    ord => return ord,
                }
                for i in (k..a.e.len()).rev() {
                    match a.e[i].cmp(&b.e[i]) {
                        Ordering::Equal => {}
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::GrevlexVarLast(v) => {
                match a.total.cmp(&b.total) {
                    Ordering::Equal => {}
                    ord => return ord,
                }
                match a.e[v].cmp(&b.e[v]) {
                    Ordering::Equal => {}
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                }
                for i in (0..a.e.len()).rev() {
                    if i == v {
                        continue;
                    }
                    match a.e[i].cmp(&b.e[i]) {
                        Ordering::Equal => {}
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                    }
                }
                Ordering::Equal
            }
        }
    }
}

/// Multidegree in Z^r (componentwise nonnegative here).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiDeg(pub Vec<u32>);

impl MultiDeg {
    pub fn zero(r: usize) -> Self {
        MultiDeg(vec![0; r])
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn le(&self, rhs: &MultiDeg) -> bool {
        self.0.iter().zip(&rhs.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, rhs: &MultiDeg) -> MultiDeg {
        MultiDeg(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }

    /// e_j, the degree of the variables in factor j.
    pub fn unit(r: usize, j: usize) -> Self {
        let mut v = vec![0; r];
        v[j] = 1;
        MultiDeg(v)
    }
}

impl fmt::Display for MultiDeg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", d)?;
        }
        write!(f, ")")
    }
}

#[derive(Debug)]
struct RingInner {
    field: FieldSpec,
    /// Projective dimension n_j of each factor; factor j owns n_j + 1 variables.
    factor_dims: Vec<usize>,
    names: Vec<String>,
    /// Variable index -> factor index.
    var_factor: Vec<usize>,
    /// First variable index of each factor.
    offsets: Vec<usize>,
}

/// Shared handle to a multigraded polynomial ring.
#[derive(Debug, Clone)]
pub struct MultiGradedRing(Arc<RingInner>);

impl PartialEq for MultiGradedRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.field == other.0.field
                && self.0.factor_dims == other.0.factor_dims
                && self.0.names == other.0.names)
    }
}

impl Eq for MultiGradedRing {}

impl MultiGradedRing {
    /// Build K[x^(1),...,x^(r)]. `names` empty means default names `x{j}_{i}`
    /// with j the 1-based factor and i the 0-based coordinate.
    pub fn make_ring(field: FieldSpec, factor_dims: &[usize], names: &[String]) -> Result<Self> {
        if factor_dims.is_empty() {
            return Err(Error::ShapeMismatch("a ring needs at least one factor".into()));
        }
        let nvars: usize = factor_dims.iter().map(|&n| n + 1).sum();
        let names: Vec<String> = if names.is_empty() {
            let mut out = Vec::with_capacity(nvars);
            for (j, &n) in factor_dims.iter().enumerate() {
                for i in 0..=n {
                    out.push(format!("x{}_{}", j + 1, i));
                }
            }
            out
        } else {
            if names.len() != nvars {
                return Err(Error::BadArity { expected: nvars, got: names.len() });
            }
            names.to_vec()
        };
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::DuplicateName(n.clone()));
            }
        }
        let mut var_factor = Vec::with_capacity(nvars);
        let mut offsets = Vec::with_capacity(factor_dims.len());
        let mut off = 0;
        for (j, &n) in factor_dims.iter().enumerate() {
            offsets.push(off);
            for _ in 0..=n {
                var_factor.push(j);
            }
            off += n + 1;
        }
        Ok(MultiGradedRing(Arc::new(RingInner {
            field,
            factor_dims: factor_dims.to_vec(),
            names,
            var_factor,
            offsets,
        })))
    }

    /// Ring of the product: the factors of `a` followed by the factors of
    /// `b`. Variable names from `b` that are already taken get underscores
    /// appended until free, so the construction never fails on a clash.
    pub fn product(a: &MultiGradedRing, b: &MultiGradedRing) -> Result<Self> {
        if a.field() != b.field() {
            return Err(Error::MixedFields);
        }
        let mut dims: Vec<usize> = a.factor_dims().to_vec();
        dims.extend_from_slice(b.factor_dims());
        let mut names: Vec<String> = a.names().to_vec();
        for n in b.names() {
            let mut cand = n.clone();
            while names.contains(&cand) {
                cand.push('_');
            }
            names.push(cand);
        }
        Self::make_ring(*a.field(), &dims, &names)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.0.field
    }

    pub fn factor_dims(&self) -> &[usize] {
        &self.0.factor_dims
    }

    pub fn num_factors(&self) -> usize {
        self.0.factor_dims.len()
    }

    pub fn nvars(&self) -> usize {
        self.0.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn var_name(&self, i: usize) -> &str {
        &self.0.names[i]
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.names.iter().position(|n| n == name)
    }

    pub fn factor_of_var(&self, i: usize) -> usize {
        self.0.var_factor[i]
    }

    pub fn factor_offset(&self, j: usize) -> usize {
        self.0.offsets[j]
    }

    /// Variable indices of factor j.
    pub fn factor_vars(&self, j: usize) -> std::ops::Range<usize> {
        let start = self.0.offsets[j];
        start..start + self.0.factor_dims[j] + 1
    }

    pub fn multidegree_of_monomial(&self, m: &Monomial) -> MultiDeg {
        let mut d = vec![0u32; self.num_factors()];
        for (i, &e) in m.exps().iter().enumerate() {
            d[self.0.var_factor[i]] += e as u32;
        }
        MultiDeg(d)
    }

    pub fn zero(&self) -> MPoly {
        MPoly { ring: self.clone(), terms: vec![] }
    }

    pub fn one(&self) -> MPoly {
        self.constant(self.0.field.one())
    }

    pub fn constant(&self, c: FieldElem) -> MPoly {
        if self.0.field.is_zero(&c) {
            return self.zero();
        }
        MPoly { ring: self.clone(), terms: vec![(Monomial::one(self.nvars()), c)] }
    }

    pub fn var(&self, i: usize) -> MPoly {
        MPoly {
            ring: self.clone(),
            terms: vec![(Monomial::var(self.nvars(), i), self.0.field.one())],
        }
    }

    pub fn monomial(&self, m: Monomial, c: FieldElem) -> MPoly {
        if self.0.field.is_zero(&c) {
            return self.zero();
        }
        MPoly { ring: self.clone(), terms: vec![(m, c)] }
    }

    pub fn from_terms(&self, terms: Vec<(Monomial, FieldElem)>) -> MPoly {
        let mut map: BTreeMap<Monomial, FieldElem> = BTreeMap::new();
        let f = &self.0.field;
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), self.nvars());
            if f.is_zero(&c) {
                continue;
            }
            match map.entry(m) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let s = f.add(e.get(), &c).expect("same field");
                    if f.is_zero(&s) {
                        e.remove();
                    } else {
                        *e.get_mut() = s;
                    }
                }
            }
        }
        let mut terms: Vec<(Monomial, FieldElem)> = map.into_iter().collect();
        terms.reverse();
        MPoly { ring: self.clone(), terms }
    }

    /// All monomials of the given multidegree, ascending in the last factor
    /// fastest. For multidegree (1,...,1) this is the Segre coordinate order.
    pub fn monomials_of_multidegree(&self, d: &MultiDeg) -> Vec<Monomial> {
        assert_eq!(d.0.len(), self.num_factors());
        let mut parts: Vec<Vec<Vec<u16>>> = Vec::new();
        for (j, &dj) in d.0.iter().enumerate() {
            let k = self.0.factor_dims[j] + 1;
            let mut acc = Vec::new();
            let mut cur = vec![0u16; k];
            enum_exps(dj as u16, 0, &mut cur, &mut acc);
            parts.push(acc);
            let _ = j;
        }
        let mut out = Vec::new();
        let mut idx = vec![0usize; parts.len()];
        'outer: loop {
            let mut e: Vec<u16> = Vec::with_capacity(self.nvars());
            for (j, part) in parts.iter().enumerate() {
                e.extend_from_slice(&part[idx[j]]);
            }
            out.push(Monomial::new(&e));
            let mut j = parts.len();
            loop {
                if j == 0 {
                    break 'outer;
                }
                j -= 1;
                idx[j] += 1;
                if idx[j] < parts[j].len() {
                    break;
                }
                idx[j] = 0;
            }
        }
        out
    }

    /// Random form of multidegree d: all monomial coefficients sampled
    /// uniformly, resampled if everything cancels.
    pub fn random_form<R: rand::Rng>(&self, d: &MultiDeg, rng: &mut R) -> MPoly {
        let monos = self.monomials_of_multidegree(d);
        loop {
            let terms: Vec<(Monomial, FieldElem)> = monos
                .iter()
                .map(|m| (m.clone(), self.0.field.random_elem(rng)))
                .collect();
            let f = self.from_terms(terms);
            if !f.is_zero() {
                return f;
            }
        }
    }
}

/// Enumerate exponent vectors of total degree d, lexicographically
/// descending, so for degree 1 the variables come out in index order.
fn enum_exps(d: u16, pos: usize, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
    if pos + 1 == cur.len() {
        cur[pos] = d;
        out.push(cur.clone());
        cur[pos] = 0;
        return;
    }
    for v in (0..=d).rev() {
        cur[pos] = v;
        enum_exps(d - v, pos + 1, cur, out);
        cur[pos] = 0;
    }
}

/// Sparse multivariate polynomial; terms sorted descending by grevlex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MPoly {
    ring: MultiGradedRing,
    terms: Vec<(Monomial, FieldElem)>,
}

impl MPoly {
    pub fn ring(&self) -> &MultiGradedRing {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, FieldElem)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, FieldElem)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() || self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn check_ring(&self, rhs: &MPoly) -> Result<()> {
        if self.ring == rhs.ring {
            Ok(())
        } else {
            Err(Error::MixedRings)
        }
    }

    pub fn add(&self, rhs: &MPoly) -> Result<MPoly> {
        self.check_ring(rhs)?;
        let f = self.ring.field();
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < rhs.terms.len() {
            match self.terms[i].0.cmp(&rhs.terms[j].0) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(rhs.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = f.add(&self.terms[i].1, &rhs.terms[j].1)?;
                    if !f.is_zero(&c) {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&rhs.terms[j..]);
        Ok(MPoly { ring: self.ring.clone(), terms: out })
    }

    pub fn neg(&self) -> MPoly {
        let f = self.ring.field();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), f.neg(c).expect("same field")))
            .collect();
        MPoly { ring: self.ring.clone(), terms }
    }

    pub fn sub(&self, rhs: &MPoly) -> Result<MPoly> {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &MPoly) -> Result<MPoly> {
        self.check_ring(rhs)?;
        if self.is_zero() || rhs.is_zero() {
            return Ok(self.ring.zero());
        }
        let f = self.ring.field();
        let (small, big) =
            if self.terms.len() <= rhs.terms.len() { (self, rhs) } else { (rhs, self) };
        let mut map: BTreeMap<Monomial, FieldElem> = BTreeMap::new();
        for (ms, cs) in &small.terms {
            for (mb, cb) in &big.terms {
                let m = ms.mul(mb);
                let c = f.mul(cs, cb)?;
                match map.entry(m) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let s = f.add(e.get(), &c)?;
                        if f.is_zero(&s) {
                            e.remove();
                        } else {
                            *e.get_mut() = s;
                        }
                    }
                }
            }
        }
        let mut terms: Vec<(Monomial, FieldElem)> = map.into_iter().collect();
        terms.reverse();
        Ok(MPoly { ring: self.ring.clone(), terms })
    }

    pub fn scale(&self, c: &FieldElem) -> Result<MPoly> {
        let f = self.ring.field();
        if f.is_zero(c) {
            return Ok(self.ring.zero());
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, a)| Ok((m.clone(), f.mul(a, c)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(MPoly { ring: self.ring.clone(), terms })
    }

    pub fn mul_term(&self, m: &Monomial, c: &FieldElem) -> Result<MPoly> {
        let f = self.ring.field();
        if f.is_zero(c) {
            return Ok(self.ring.zero());
        }
        let terms = self
            .terms
            .iter()
            .map(|(mm, a)| Ok((mm.mul(m), f.mul(a, c)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(MPoly { ring: self.ring.clone(), terms })
    }

    pub fn pow(&self, e: u32) -> Result<MPoly> {
        let mut acc = self.ring.one();
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Leading term under the given order.
    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Monomial, &FieldElem)> {
        if order == MonomialOrder::Grevlex {
            return self.terms.first().map(|(m, c)| (m, c));
        }
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| order.cmp(a, b))
            .map(|(m, c)| (m, c))
    }

    /// Multidegree of a nonzero multihomogeneous polynomial; None when the
    /// terms span several multidegrees.
    pub fn multidegree(&self) -> Result<Option<MultiDeg>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let d = self.ring.multidegree_of_monomial(&self.terms[0].0);
        for (m, _) in &self.terms[1..] {
            if self.ring.multidegree_of_monomial(m) != d {
                return Ok(None);
            }
        }
        Ok(Some(d))
    }

    pub fn is_multihomogeneous(&self) -> bool {
        self.is_zero() || matches!(self.multidegree(), Ok(Some(_)))
    }

    /// Splits into multihomogeneous parts, descending leading order.
    pub fn homogeneous_parts(&self) -> Vec<MPoly> {
        let mut map: BTreeMap<MultiDeg, Vec<(Monomial, FieldElem)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            map.entry(self.ring.multidegree_of_monomial(m))
                .or_default()
                .push((m.clone(), c.clone()));
        }
        map.into_values()
            .map(|mut terms| {
                terms.sort_by(|(a, _), (b, _)| b.cmp(a));
                MPoly { ring: self.ring.clone(), terms }
            })
            .collect()
    }

    /// Monic under grevlex (or unchanged when zero).
    pub fn monic(&self) -> MPoly {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => {
                let f = self.ring.field();
                if f.is_one(c) {
                    self.clone()
                } else {
                    let inv = f.inv(c).expect("leading coefficient is nonzero");
                    self.scale(&inv).expect("same field")
                }
            }
        }
    }

    pub fn evaluate(&self, point: &[FieldElem]) -> Result<FieldElem> {
        let f = self.ring.field();
        if point.len() != self.ring.nvars() {
            return Err(Error::BadArity { expected: self.ring.nvars(), got: point.len() });
        }
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t = f.mul(&t, &f.pow(&point[i], e as u64)?)?;
                }
            }
            acc = f.add(&acc, &t)?;
        }
        Ok(acc)
    }

    /// Rename-style map into another ring: variable i of self becomes
    /// variable var_map[i] of `target`. Coefficients are reused as is, so
    /// both rings must share the field.
    pub fn embed(&self, target: &MultiGradedRing, var_map: &[usize]) -> Result<MPoly> {
        if self.ring.field() != target.field() {
            return Err(Error::MixedFields);
        }
        if var_map.len() != self.ring.nvars() {
            return Err(Error::BadArity { expected: self.ring.nvars(), got: var_map.len() });
        }
        let n = target.nvars();
        let terms: Vec<(Monomial, FieldElem)> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0u16; n];
                for (i, &x) in m.exps().iter().enumerate() {
                    e[var_map[i]] += x;
                }
                (Monomial::new(&e), c.clone())
            })
            .collect();
        Ok(target.from_terms(terms))
    }

    /// Full substitution x_i -> images[i].
    pub fn substitute(&self, target: &MultiGradedRing, images: &[MPoly]) -> Result<MPoly> {
        if images.len() != self.ring.nvars() {
            return Err(Error::BadArity { expected: self.ring.nvars(), got: images.len() });
        }
        for g in images {
            if g.ring() != target {
                return Err(Error::MixedRings);
            }
        }
        let f = self.ring.field();
        if f != target.field() {
            return Err(Error::MixedFields);
        }
        // per-variable power cache
        let mut powers: Vec<Vec<MPoly>> = images.iter().map(|g| vec![target.one(), g.clone()]).collect();
        let mut acc = target.zero();
        for (m, c) in &self.terms {
            let mut t = target.constant(c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[i];
                while cache.len() <= e as usize {
                    let next = cache.last().unwrap().mul(&images[i])?;
                    cache.push(next);
                }
                t = t.mul(&cache[e as usize])?;
            }
            acc = acc.add(&t)?;
        }
        Ok(acc)
    }

    /// Coefficientwise reduction QQ -> GF(p); errors if a generator would
    /// collapse badly (a denominator divisible by p).
    pub fn reduce_coeffs_mod_p(&self, target: &MultiGradedRing) -> Result<MPoly> {
        let from = self.ring.field();
        let to = target.field();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| Ok((m.clone(), from.reduce_mod_p(c, to)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(target.from_terms(terms))
    }

    /// Laplace expansion along the first column; rows must share the ring.
    pub(crate) fn det(ring: &MultiGradedRing, m: &[Vec<MPoly>]) -> Result<MPoly> {
        let n = m.len();
        if n == 0 {
            return Ok(ring.one());
        }
        for row in m {
            if row.len() != n {
                return Err(Error::ShapeMismatch(format!(
                    "determinant of a {}x{} matrix",
                    n,
                    row.len()
                )));
            }
        }
        if n == 1 {
            return Ok(m[0][0].clone());
        }
        let mut acc = ring.zero();
        for i in 0..n {
            if m[i][0].is_zero() {
                continue;
            }
            let minor: Vec<Vec<MPoly>> = (0..n)
                .filter(|&k| k != i)
                .map(|k| m[k][1..].to_vec())
                .collect();
            let cofactor = m[i][0].mul(&MPoly::det(ring, &minor)?)?;
            acc = if i % 2 == 0 { acc.add(&cofactor)? } else { acc.sub(&cofactor)? };
        }
        Ok(acc)
    }

    pub fn partial_derivative(&self, i: usize) -> MPoly {
        let f = self.ring.field();
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exps()[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.exps().to_vec();
            exps[i] -= 1;
            let coeff = f.mul(c, &f.from_i64(e as i64)).expect("same field");
            if !f.is_zero(&coeff) {
                terms.push((Monomial::new(&exps), coeff));
            }
        }
        self.ring.from_terms(terms)
    }

    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let f = self.ring.field();
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let cs = f.render(c);
            let (sign, mag) = match cs.strip_prefix('-') {
                Some(rest) => ("-", rest.to_string()),
                None => ("+", cs),
            };
            if k == 0 {
                if sign == "-" {
                    s.push('-');
                }
            } else {
                s.push_str(if sign == "-" { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if mag != "1" || m.is_one() {
                factors.push(mag);
            }
            for (i, &e) in m.exps().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ring.var_name(i).to_string()),
                    _ => factors.push(format!("{}^{}", self.ring.var_name(i), e)),
                }
            }
            s.push_str(&factors.join("*"));
        }
        s
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// Recursive-descent parser for polynomial expressions over a ring.
/// Grammar: sums of products of powers; atoms are integers, rationals
/// written n/m, variables, and parenthesized expressions.
pub fn parse_poly(ring: &MultiGradedRing, src: &str) -> Result<MPoly> {
    let mut p = PolyParser { ring, src: src.as_bytes(), pos: 0 };
    p.skip_ws();
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

struct PolyParser<'a> {
    ring: &'a MultiGradedRing,
    src: &'a [u8],
    pos: usize,
}

impl<'a> PolyParser<'a> {
    fn err(&self, msg: &str) -> Error {
        let line = 1 + self.src[..self.pos].iter().filter(|&&b| b == b'\n').count();
        let col = self.pos - self.src[..self.pos].iter().rposition(|&b| b == b'\n').map_or(0, |i| i + 1) + 1;
        Error::Parse { line, col, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && (self.src[self.pos] as char).is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<MPoly> {
        let mut neg = false;
        self.skip_ws();
        while let Some(c) = self.peek() {
            if c == b'-' {
                neg = !neg;
                self.pos += 1;
                self.skip_ws();
            } else if c == b'+' {
                self.pos += 1;
                self.skip_ws();
            } else {
                break;
            }
        }
        let mut acc = self.term()?;
        if neg {
            acc = acc.neg();
        }
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.signed_term()?;
                    acc = acc.add(&t)?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.signed_term()?;
                    acc = acc.sub(&t)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn signed_term(&mut self) -> Result<MPoly> {
        self.skip_ws();
        let mut neg = false;
        while let Some(c) = self.peek() {
            if c == b'-' {
                neg = !neg;
                self.pos += 1;
                self.skip_ws();
            } else if c == b'+' {
                self.pos += 1;
                self.skip_ws();
            } else {
                break;
            }
        }
        let t = self.term()?;
        Ok(if neg { t.neg() } else { t })
    }

    fn term(&mut self) -> Result<MPoly> {
        let mut acc = self.power()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    self.skip_ws();
                    let rhs = self.power()?;
                    acc = acc.mul(&rhs)?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    self.skip_ws();
                    let rhs = self.power()?;
                    let Some((m, c)) = rhs.terms().first() else {
                        return Err(Error::DivisionByZero);
                    };
                    if rhs.num_terms() != 1 || !m.is_one() {
                        return Err(self.err("division only by constants"));
                    }
                    let inv = self.ring.field().inv(c)?;
                    acc = acc.scale(&inv)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<MPoly> {
        let base = self.atom()?;
        self.skip_ws();
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(self.err("expected an exponent"));
            }
            let e: u32 = std::str::from_utf8(&self.src[start..self.pos])
                .unwrap()
                .parse()
                .map_err(|_| self.err("exponent out of range"))?;
            return base.pow(e);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MPoly> {
        self.skip_ws();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let n: i64 = std::str::from_utf8(&self.src[start..self.pos])
                    .unwrap()
                    .parse()
                    .map_err(|_| self.err("integer out of range"))?;
                Ok(self.ring.constant(self.ring.field().from_i64(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self
                    .peek()
                    .is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match self.ring.var_index(name) {
                    Some(i) => Ok(self.ring.var(i)),
                    None => Err(self.err(&format!("unknown variable `{}`", name))),
                }
            }
            _ => Err(self.err("expected a term")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::seeded_rng;

    fn qq_ring(dims: &[usize]) -> MultiGradedRing {
        MultiGradedRing::make_ring(FieldSpec::rationals(), dims, &[]).unwrap()
    }

    fn named(dims: &[usize], names: &[&str]) -> MultiGradedRing {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        MultiGradedRing::make_ring(FieldSpec::rationals(), dims, &names).unwrap()
    }

    #[test]
    fn ring_construction_checks_names() {
        let names: Vec<String> = ["x", "y", "x"].iter().map(|s| s.to_string()).collect();
        assert_eq!(
            MultiGradedRing::make_ring(FieldSpec::rationals(), &[2], &names),
            Err(Error::DuplicateName("x".into()))
        );
        let names: Vec<String> = ["x", "y"].iter().map(|s| s.to_string()).collect();
        assert_eq!(
            MultiGradedRing::make_ring(FieldSpec::rationals(), &[2], &names),
            Err(Error::BadArity { expected: 3, got: 2 })
        );
        let r = qq_ring(&[1, 2]);
        assert_eq!(r.names(), &["x1_0", "x1_1", "x2_0", "x2_1", "x2_2"]);
        assert_eq!(r.factor_of_var(3), 1);
    }

    #[test]
    fn grevlex_orders_standard_examples() {
        // x^2 > xy > y^2 > xz > yz > z^2 in grevlex on 3 vars
        let seq = [[2, 0, 0], [1, 1, 0], [0, 2, 0], [1, 0, 1], [0, 1, 1], [0, 0, 2]];
        for w in seq.windows(2) {
            let a = Monomial::new(&w[0].map(|x| x as u16));
            let b = Monomial::new(&w[1].map(|x| x as u16));
            assert_eq!(a.cmp(&b), Ordering::Greater, "{:?} > {:?}", w[0], w[1]);
        }
    }

    #[test]
    fn block_order_eliminates_first_block() {
        // any monomial with a block-1 variable beats any without
        let ord = MonomialOrder::Block(1);
        let t = Monomial::new(&[1, 0, 0]);
        let xy = Monomial::new(&[0, 5, 7]);
        assert_eq!(ord.cmp(&t, &xy), Ordering::Greater);
    }

    #[test]
    fn var_last_order_pushes_variable_down() {
        let ord = MonomialOrder::GrevlexVarLast(0);
        let x = Monomial::new(&[1, 0]);
        let y = Monomial::new(&[0, 1]);
        assert_eq!(ord.cmp(&y, &x), Ordering::Greater);
    }

    #[test]
    fn arithmetic_matches_hand_expansion() {
        let r = named(&[2], &["x", "y", "z"]);
        let f = parse_poly(&r, "x + y").unwrap();
        let g = parse_poly(&r, "x - y").unwrap();
        let prod = f.mul(&g).unwrap();
        assert_eq!(prod, parse_poly(&r, "x^2 - y^2").unwrap());
        let sq = f.pow(2).unwrap();
        assert_eq!(sq, parse_poly(&r, "x^2 + 2*x*y + y^2").unwrap());
        assert!(f.sub(&f).unwrap().is_zero());
    }

    #[test]
    fn mul_agrees_with_naive_on_random_inputs() {
        let r = qq_ring(&[3]);
        let mut rng = seeded_rng(11);
        let f7 = FieldSpec::prime_field(7).unwrap();
        let rp = MultiGradedRing::make_ring(f7, &[3], &[]).unwrap();
        for ring in [&r, &rp] {
            for _ in 0..60 {
                let f = ring.random_form(&MultiDeg(vec![2]), &mut rng);
                let g = ring.random_form(&MultiDeg(vec![3]), &mut rng);
                let prod = f.mul(&g).unwrap();
                // naive accumulation through from_terms
                let mut terms = Vec::new();
                for (m1, c1) in f.terms() {
                    for (m2, c2) in g.terms() {
                        terms.push((m1.mul(m2), ring.field().mul(c1, c2).unwrap()));
                    }
                }
                assert_eq!(prod, ring.from_terms(terms));
                // product of forms is a form
                assert_eq!(prod.multidegree().unwrap(), Some(MultiDeg(vec![5])));
            }
        }
    }

    #[test]
    fn multidegree_and_homogeneous_parts() {
        let r = qq_ring(&[1, 1]);
        // x1_0 * x2_0 has multidegree (1,1)
        let f = parse_poly(&r, "x1_0 * x2_0").unwrap();
        assert_eq!(f.multidegree().unwrap(), Some(MultiDeg(vec![1, 1])));
        let g = parse_poly(&r, "x1_0 * x2_0 + x1_1^2").unwrap();
        assert_eq!(g.multidegree().unwrap(), None);
        assert!(!g.is_multihomogeneous());
        let parts = g.homogeneous_parts();
        assert_eq!(parts.len(), 2);
        for p in &parts {
            assert!(p.is_multihomogeneous());
        }
        let back = parts.iter().fold(r.zero(), |a, b| a.add(b).unwrap());
        assert_eq!(back, g);
        assert_eq!(r.zero().multidegree(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn mixed_rings_are_rejected() {
        let r1 = qq_ring(&[1]);
        let r2 = qq_ring(&[2]);
        let a = r1.var(0);
        let b = r2.var(0);
        assert_eq!(a.add(&b), Err(Error::MixedRings));
    }

    #[test]
    fn parse_render_roundtrip() {
        let r = named(&[5], &["t", "u", "v", "x", "y", "z"]);
        let src = "t*u*x - u^2*x + u*v*x - v^2*x + t*x^2 - u*x^2 + t^2*y";
        let f = parse_poly(&r, src).unwrap();
        let g = parse_poly(&r, &f.render()).unwrap();
        assert_eq!(f, g);
        assert_eq!(parse_poly(&r, "2/3 * x^2").unwrap().render(), "2/3*x^2");
        assert!(matches!(
            parse_poly(&r, "t + q"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn evaluation_and_derivative() {
        let r = named(&[2], &["x", "y", "z"]);
        let f = parse_poly(&r, "x^2*y - 3*z^3").unwrap();
        let q = FieldSpec::rationals();
        let pt = [q.from_i64(2), q.from_i64(5), q.from_i64(1)];
        assert_eq!(f.evaluate(&pt).unwrap(), q.from_i64(17));
        let fx = f.partial_derivative(0);
        assert_eq!(fx, parse_poly(&r, "2*x*y").unwrap());
        let fz = f.partial_derivative(2);
        assert_eq!(fz, parse_poly(&r, "-9*z^2").unwrap());
    }

    #[test]
    fn embed_and_substitute() {
        let r = named(&[1], &["s", "t"]);
        let big = named(&[1, 1], &["s", "t", "a", "b"]);
        let f = parse_poly(&r, "s^2 + s*t").unwrap();
        let emb = f.embed(&big, &[0, 1]).unwrap();
        assert_eq!(emb, parse_poly(&big, "s^2 + s*t").unwrap());
        // substitute s -> a^2, t -> b^2
        let images = [parse_poly(&big, "a^2").unwrap(), parse_poly(&big, "b^2").unwrap()];
        let sub = f.substitute(&big, &images).unwrap();
        assert_eq!(sub, parse_poly(&big, "a^4 + a^2*b^2").unwrap());
    }

    #[test]
    fn segre_monomials_are_lexicographic_in_indices() {
        let r = qq_ring(&[1, 1]);
        let ms = r.monomials_of_multidegree(&MultiDeg(vec![1, 1]));
        let rendered: Vec<String> = ms
            .iter()
            .map(|m| r.monomial(m.clone(), r.field().one()).render())
            .collect();
        assert_eq!(rendered, vec!["x1_0*x2_0", "x1_0*x2_1", "x1_1*x2_0", "x1_1*x2_1"]);
    }

    #[test]
    fn random_forms_are_homogeneous() {
        let r = qq_ring(&[2, 1]);
        let mut rng = seeded_rng(3);
        for _ in 0..20 {
            let f = r.random_form(&MultiDeg(vec![1, 1]), &mut rng);
            assert_eq!(f.multidegree().unwrap(), Some(MultiDeg(vec![1, 1])));
        }
    }
}
