//! Exact coefficient fields: arbitrary-precision rationals and prime fields GF(p).
//!
//! Prime-field elements are canonical residues in [0, p) with p an odd prime
//! below 2^62, so products fit in 128 bits. Rationals are kept in lowest terms
//! with positive denominator. No floating point anywhere.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
pub use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub const MAX_PRIME: u64 = 1 << 62;

/// Height bound for random rational sampling.
pub const DEFAULT_RATIONAL_HEIGHT: i64 = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rationals,
    PrimeField,
}

/// A coefficient field: QQ or GF(p).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    kind: FieldKind,
    /// 0 for the rationals, the prime otherwise.
    p: u64,
}

/// A scalar. Prime-field residues do not carry their modulus; the ambient
/// `FieldSpec` owns all arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldElem {
    Rat(Box<BigRational>),
    Fp(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl FieldSpec {
    pub fn rationals() -> Self {
        FieldSpec { kind: FieldKind::Rationals, p: 0 }
    }

    /// GF(p) for an odd prime p < 2^62.
    pub fn prime_field(p: u64) -> Result<Self> {
        if p < 3 || p >= MAX_PRIME || !is_prime_u64(p) {
            return Err(Error::BadCharacteristic(p));
        }
        Ok(FieldSpec { kind: FieldKind::PrimeField, p })
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn is_finite(&self) -> bool {
        self.kind == FieldKind::PrimeField
    }

    fn check(&self, a: &FieldElem) -> Result<()> {
        let ok = matches!(
            (self.kind, a),
            (FieldKind::Rationals, FieldElem::Rat(_)) | (FieldKind::PrimeField, FieldElem::Fp(_))
        );
        if ok {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    pub fn zero(&self) -> FieldElem {
        match self.kind {
            FieldKind::Rationals => FieldElem::Rat(Box::new(BigRational::zero())),
            FieldKind::PrimeField => FieldElem::Fp(0),
        }
    }

    pub fn one(&self) -> FieldElem {
        match self.kind {
            FieldKind::Rationals => FieldElem::Rat(Box::new(BigRational::one())),
            FieldKind::PrimeField => FieldElem::Fp(1),
        }
    }

    pub fn from_i64(&self, n: i64) -> FieldElem {
        match self.kind {
            FieldKind::Rationals => FieldElem::Rat(Box::new(BigRational::from_integer(n.into()))),
            FieldKind::PrimeField => {
                let r = n.rem_euclid(self.p as i64);
                FieldElem::Fp(r as u64)
            }
        }
    }

    pub fn from_ratio(&self, num: i64, den: i64) -> Result<FieldElem> {
        let d = self.from_i64(den);
        if self.is_zero(&d) {
            return Err(Error::DivisionByZero);
        }
        self.div(&self.from_i64(num), &d)
    }

    pub fn is_zero(&self, a: &FieldElem) -> bool {
        match a {
            FieldElem::Rat(r) => r.is_zero(),
            FieldElem::Fp(v) => *v == 0,
        }
    }

    pub fn is_one(&self, a: &FieldElem) -> bool {
        match a {
            FieldElem::Rat(r) => r.is_one(),
            FieldElem::Fp(v) => *v == 1,
        }
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
        self.check(a)?;
        self.check(b)?;
        Ok(match (a, b) {
            (FieldElem::Rat(x), FieldElem::Rat(y)) => FieldElem::Rat(Box::new(&**x + &**y)),
            (FieldElem::Fp(x), FieldElem::Fp(y)) => FieldElem::Fp(add_mod(*x, *y, self.p)),
            _ => unreachable!(),
        })
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
        self.check(a)?;
        self.check(b)?;
        Ok(match (a, b) {
            (FieldElem::Rat(x), FieldElem::Rat(y)) => FieldElem::Rat(Box::new(&**x - &**y)),
            (FieldElem::Fp(x), FieldElem::Fp(y)) => FieldElem::Fp(sub_mod(*x, *y, self.p)),
            _ => unreachable!(),
        })
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
        self.check(a)?;
        self.check(b)?;
        Ok(match (a, b) {
            (FieldElem::Rat(x), FieldElem::Rat(y)) => FieldElem::Rat(Box::new(&**x * &**y)),
            (FieldElem::Fp(x), FieldElem::Fp(y)) => FieldElem::Fp(mul_mod(*x, *y, self.p)),
            _ => unreachable!(),
        })
    }

    pub fn div(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem> {
        let inv = self.inv(b)?;
        self.mul(a, &inv)
    }

    pub fn neg(&self, a: &FieldElem) -> Result<FieldElem> {
        self.check(a)?;
        Ok(match a {
            FieldElem::Rat(x) => FieldElem::Rat(Box::new(-&**x)),
            FieldElem::Fp(x) => FieldElem::Fp(if *x == 0 { 0 } else { self.p - *x }),
        })
    }

    pub fn inv(&self, a: &FieldElem) -> Result<FieldElem> {
        self.check(a)?;
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(match a {
            FieldElem::Rat(x) => FieldElem::Rat(Box::new(x.recip())),
            FieldElem::Fp(x) => FieldElem::Fp(inv_mod(*x, self.p)),
        })
    }

    pub fn arith(&self, a: &FieldElem, b: &FieldElem, op: ArithOp) -> Result<FieldElem> {
        match op {
            ArithOp::Add => self.add(a, b),
            ArithOp::Sub => self.sub(a, b),
            ArithOp::Mul => self.mul(a, b),
            ArithOp::Div => self.div(a, b),
        }
    }

    pub fn pow(&self, a: &FieldElem, mut e: u64) -> Result<FieldElem> {
        self.check(a)?;
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base)?;
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base)?;
            }
        }
        Ok(acc)
    }

    /// Uniform sample: a residue over GF(p), an integer in [-H, H] over QQ.
    pub fn random_elem<R: Rng>(&self, rng: &mut R) -> FieldElem {
        match self.kind {
            FieldKind::Rationals => {
                let h = DEFAULT_RATIONAL_HEIGHT;
                self.from_i64(rng.random_range(-h..=h))
            }
            FieldKind::PrimeField => FieldElem::Fp(rng.random_range(0..self.p)),
        }
    }

    /// Nonzero uniform sample.
    pub fn random_nonzero<R: Rng>(&self, rng: &mut R) -> FieldElem {
        loop {
            let e = self.random_elem(rng);
            if !self.is_zero(&e) {
                return e;
            }
        }
    }

    /// The ring map QQ -> GF(p) on elements with p-free denominator.
    pub fn reduce_mod_p(&self, a: &FieldElem, target: &FieldSpec) -> Result<FieldElem> {
        self.check(a)?;
        if self.kind != FieldKind::Rationals || target.kind != FieldKind::PrimeField {
            return Err(Error::BadReduction {
                p: target.p,
                reason: "reduction goes from QQ to GF(p)".into(),
            });
        }
        let FieldElem::Rat(r) = a else { unreachable!() };
        let p = target.p;
        let den = bigint_mod_u64(r.denom(), p);
        if den == 0 {
            return Err(Error::BadReduction { p, reason: format!("denominator of {} vanishes", r) });
        }
        let num = bigint_mod_u64(r.numer(), p);
        Ok(FieldElem::Fp(mul_mod(num, inv_mod(den, p), p)))
    }

    pub fn render(&self, a: &FieldElem) -> String {
        match a {
            FieldElem::Rat(r) => {
                if r.denom().is_one() {
                    format!("{}", r.numer())
                } else {
                    format!("{}", r)
                }
            }
            FieldElem::Fp(v) => format!("{}", v),
        }
    }
}

impl FieldElem {
    pub fn from_rational(r: BigRational) -> Self {
        FieldElem::Rat(Box::new(r))
    }

    pub fn as_fp(&self) -> Option<u64> {
        match self {
            FieldElem::Fp(v) => Some(*v),
            _ => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldElem::Rat(r) => Some(r),
            _ => None,
        }
    }
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn bigint_mod_u64(n: &BigInt, p: u64) -> u64 {
    let m = BigInt::from(p);
    let mut r = n % &m;
    if r.is_negative() {
        r += &m;
    }
    let digits = r.to_u64_digits().1;
    digits.first().copied().unwrap_or(0)
}

#[inline]
pub(crate) fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub(crate) fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// Inverse mod p by extended Euclid. Caller guarantees a != 0 mod p.
pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1, "inverse of a unit");
    s0.rem_euclid(p as i128) as u64
}

fn pow_mod_u64(mut base: u64, mut e: u64, p: u64) -> u64 {
    base %= p;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, exact for all u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Dense univariate polynomial over GF(p), little-endian coefficients,
/// no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
struct UPoly {
    p: u64,
    c: Vec<u64>,
}

impl UPoly {
    fn new(p: u64, mut c: Vec<u64>) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        UPoly { p, c }
    }

    fn zero(p: u64) -> Self {
        UPoly { p, c: vec![] }
    }

    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn deg(&self) -> usize {
        debug_assert!(!self.is_zero());
        self.c.len() - 1
    }

    fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lead = *self.c.last().unwrap();
        if lead == 1 {
            return self.clone();
        }
        let inv = inv_mod(lead, self.p);
        UPoly::new(self.p, self.c.iter().map(|&a| mul_mod(a, inv, self.p)).collect())
    }

    fn sub(&self, rhs: &Self) -> Self {
        let p = self.p;
        let n = self.c.len().max(rhs.c.len());
        let mut c = vec![0u64; n];
        for i in 0..n {
            let a = self.c.get(i).copied().unwrap_or(0);
            let b = rhs.c.get(i).copied().unwrap_or(0);
            c[i] = sub_mod(a, b, p);
        }
        UPoly::new(p, c)
    }

    fn mul(&self, rhs: &Self) -> Self {
        let p = self.p;
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero(p);
        }
        let mut c = vec![0u64; self.c.len() + rhs.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.c.iter().enumerate() {
                c[i + j] = add_mod(c[i + j], mul_mod(a, b, p), p);
            }
        }
        UPoly::new(p, c)
    }

    /// Remainder of self by a monic divisor.
    fn rem(&self, m: &Self) -> Self {
        debug_assert_eq!(*m.c.last().unwrap(), 1);
        let p = self.p;
        let dm = m.deg();
        let mut r = self.c.clone();
        while r.len() > dm {
            let lead = *r.last().unwrap();
            let k = r.len() - 1 - dm;
            if lead != 0 {
                for (i, &mc) in m.c.iter().enumerate() {
                    r[k + i] = sub_mod(r[k + i], mul_mod(lead, mc, p), p);
                }
            }
            r.pop();
        }
        UPoly::new(p, r)
    }

    fn gcd(&self, rhs: &Self) -> Self {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let bm = b.monic();
            let r = a.rem(&bm);
            a = bm;
            b = r;
        }
        a.monic()
    }

    /// self^e mod m, m monic.
    fn pow_mod(&self, mut e: u64, m: &Self) -> Self {
        let p = self.p;
        let mut base = self.rem(m);
        let mut acc = UPoly::new(p, vec![1]);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(m);
            }
        }
        acc
    }

    /// Exact quotient by a monic divisor that divides self.
    fn div_exact(&self, m: &Self) -> Self {
        let p = self.p;
        if self.is_zero() {
            return UPoly::zero(p);
        }
        let dm = m.deg();
        let mut r = self.c.clone();
        let mut q = vec![0u64; r.len() - dm];
        while r.len() > dm {
            let lead = *r.last().unwrap();
            let k = r.len() - 1 - dm;
            q[k] = lead;
            if lead != 0 {
                for (i, &mc) in m.c.iter().enumerate() {
                    r[k + i] = sub_mod(r[k + i], mul_mod(lead, mc, p), p);
                }
            }
            r.pop();
        }
        debug_assert!(UPoly::new(p, r).is_zero(), "exact division");
        UPoly::new(p, q)
    }
}

/// All roots in GF(p) of a nonzero univariate polynomial, ascending.
///
/// Strategy: strip roots at 0, intersect with x^p - x by modular
/// exponentiation, then split the product of linear factors with random
/// shifts. Deterministic: the splitting stream is seeded from the input.
pub fn univariate_roots(field: &FieldSpec, coeffs: &[FieldElem]) -> Result<Vec<FieldElem>> {
    if field.kind != FieldKind::PrimeField {
        return Err(Error::NeedsFiniteField);
    }
    let p = field.p;
    let mut c = Vec::with_capacity(coeffs.len());
    for e in coeffs {
        field.check(e)?;
        c.push(e.as_fp().unwrap());
    }
    let mut f = UPoly::new(p, c);
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut roots: Vec<u64> = Vec::new();
    while !f.c.is_empty() && f.c[0] == 0 {
        if roots.is_empty() {
            roots.push(0);
        }
        f.c.remove(0);
    }
    f = UPoly::new(p, f.c).monic();
    if !f.is_zero() && f.deg() >= 1 {
        let g = if f.deg() == 1 {
            f.clone()
        } else {
            // gcd(f, x^p - x)
            let x = UPoly::new(p, vec![0, 1]);
            let xp = x.pow_mod(p, &f);
            f.gcd(&xp.sub(&x))
        };
        if !g.is_zero() && g.deg() >= 1 {
            let mut seed = 0x9e3779b97f4a7c15u64 ^ p;
            for &a in &f.c {
                seed = seed.rotate_left(7) ^ a;
            }
            let mut rng = seeded_rng(seed);
            split_linear_product(&g, &mut rng, &mut roots);
        }
    }
    roots.sort_unstable();
    roots.dedup();
    Ok(roots.into_iter().map(FieldElem::Fp).collect())
}

/// g is monic, squarefree-ish and splits into distinct linear factors.
fn split_linear_product(g: &UPoly, rng: &mut ChaCha8Rng, roots: &mut Vec<u64>) {
    let p = g.p;
    if g.deg() == 0 {
        return;
    }
    if g.deg() == 1 {
        // x + c -> root -c
        roots.push(sub_mod(0, g.c[0], p));
        return;
    }
    // random shift a: gcd(g, (x+a)^((p-1)/2) - 1) cuts out the shifted
    // quadratic residues, which splits g with probability about 1/2
    loop {
        let a = rng.random_range(0..p);
        let shifted = UPoly::new(p, vec![a, 1]);
        let h = shifted.pow_mod((p - 1) / 2, g);
        let h1 = h.sub(&UPoly::new(p, vec![1]));
        let d = g.gcd(&h1);
        if !d.is_zero() && d.deg() > 0 && d.deg() < g.deg() {
            let rest = g.div_exact(&d);
            split_linear_product(&d, rng, roots);
            split_linear_product(&rest, rng, roots);
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::prime_field(p).unwrap()
    }

    #[test]
    fn prime_field_rejects_bad_characteristic() {
        assert_eq!(FieldSpec::prime_field(2), Err(Error::BadCharacteristic(2)));
        assert_eq!(FieldSpec::prime_field(9), Err(Error::BadCharacteristic(9)));
        assert_eq!(FieldSpec::prime_field(1), Err(Error::BadCharacteristic(1)));
        assert!(FieldSpec::prime_field(65537).is_ok());
        assert!(FieldSpec::prime_field(1000003).is_ok());
    }

    #[test]
    fn inverse_of_ten_mod_1000003() {
        // 10 * 300001 = 3000010 = 3 * 1000003 + 1
        let f = gf(1000003);
        let inv = f.inv(&FieldElem::Fp(10)).unwrap();
        assert_eq!(inv, FieldElem::Fp(300001));
        assert!(f.is_one(&f.mul(&FieldElem::Fp(10), &inv).unwrap()));
    }

    #[test]
    fn division_five_thirds_mod_seven() {
        let f = gf(7);
        let q = f.div(&f.from_i64(5), &f.from_i64(3)).unwrap();
        assert_eq!(q, FieldElem::Fp(4));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let f = gf(7);
        assert_eq!(f.div(&f.one(), &f.zero()), Err(Error::DivisionByZero));
        let q = FieldSpec::rationals();
        assert_eq!(q.inv(&q.zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn mixed_fields_detected() {
        let f = gf(7);
        let q = FieldSpec::rationals();
        assert_eq!(f.add(&f.one(), &q.one()), Err(Error::MixedFields));
        assert_eq!(q.mul(&f.one(), &q.one()), Err(Error::MixedFields));
    }

    #[test]
    fn rationals_stay_reduced() {
        let q = FieldSpec::rationals();
        let a = q.from_ratio(6, -4).unwrap();
        let r = a.as_rational().unwrap();
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
    }

    #[test]
    fn field_axioms_random_triples() {
        // associativity, commutativity, distributivity, inverses
        let fields = [FieldSpec::rationals(), gf(3), gf(65537), gf(1000003)];
        let mut rng = seeded_rng(42);
        for f in &fields {
            for _ in 0..1000 {
                let a = f.random_elem(&mut rng);
                let b = f.random_elem(&mut rng);
                let c = f.random_elem(&mut rng);
                let ab_c = f.add(&f.add(&a, &b).unwrap(), &c).unwrap();
                let a_bc = f.add(&a, &f.add(&b, &c).unwrap()).unwrap();
                assert_eq!(ab_c, a_bc);
                assert_eq!(f.mul(&a, &b).unwrap(), f.mul(&b, &a).unwrap());
                let left = f.mul(&a, &f.add(&b, &c).unwrap()).unwrap();
                let right = f.add(&f.mul(&a, &b).unwrap(), &f.mul(&a, &c).unwrap()).unwrap();
                assert_eq!(left, right);
                let am = f.sub(&a, &a).unwrap();
                assert!(f.is_zero(&am));
                if !f.is_zero(&b) {
                    let q1 = f.div(&a, &b).unwrap();
                    assert_eq!(f.mul(&q1, &b).unwrap(), a);
                }
            }
        }
    }

    #[test]
    fn reduce_mod_p_is_a_ring_map() {
        let q = FieldSpec::rationals();
        let f = gf(65537);
        let mut rng = seeded_rng(7);
        for _ in 0..500 {
            let a = q.random_elem(&mut rng);
            let b = q.random_elem(&mut rng);
            let ra = q.reduce_mod_p(&a, &f).unwrap();
            let rb = q.reduce_mod_p(&b, &f).unwrap();
            let sum = q.reduce_mod_p(&q.add(&a, &b).unwrap(), &f).unwrap();
            let prod = q.reduce_mod_p(&q.mul(&a, &b).unwrap(), &f).unwrap();
            assert_eq!(sum, f.add(&ra, &rb).unwrap());
            assert_eq!(prod, f.mul(&ra, &rb).unwrap());
        }
    }

    #[test]
    fn reduce_mod_p_rejects_vanishing_denominator() {
        let q = FieldSpec::rationals();
        let f = gf(7);
        let bad = q.from_ratio(1, 7).unwrap();
        assert!(matches!(q.reduce_mod_p(&bad, &f), Err(Error::BadReduction { p: 7, .. })));
        let ok = q.from_ratio(7, 2).unwrap();
        assert_eq!(q.reduce_mod_p(&ok, &f).unwrap(), FieldElem::Fp(0));
    }

    fn fp_vec(f: &FieldSpec, v: &[i64]) -> Vec<FieldElem> {
        v.iter().map(|&n| f.from_i64(n)).collect()
    }

    #[test]
    fn roots_of_small_quadratics() {
        let f = gf(7);
        // x^2 - 2 = (x-3)(x-4) mod 7
        let r = univariate_roots(&f, &fp_vec(&f, &[-2, 0, 1])).unwrap();
        assert_eq!(r, vec![FieldElem::Fp(3), FieldElem::Fp(4)]);
        // x^2 + 1 has no roots mod 7
        let r = univariate_roots(&f, &fp_vec(&f, &[1, 0, 1])).unwrap();
        assert!(r.is_empty());
    }

    #[test]
    fn roots_match_brute_force_for_small_primes() {
        let primes = [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101];
        let mut rng = seeded_rng(123);
        for &p in &primes {
            let f = gf(p);
            for _ in 0..20 {
                let deg = rng.random_range(1..=6usize);
                let mut coeffs: Vec<FieldElem> = (0..=deg).map(|_| f.random_elem(&mut rng)).collect();
                if f.is_zero(&coeffs[deg]) {
                    coeffs[deg] = f.one();
                }
                let got = univariate_roots(&f, &coeffs).unwrap();
                let mut want = Vec::new();
                for x in 0..p {
                    let mut acc = 0u64;
                    for c in coeffs.iter().rev() {
                        acc = add_mod(mul_mod(acc, x, p), c.as_fp().unwrap(), p);
                    }
                    if acc == 0 {
                        want.push(FieldElem::Fp(x));
                    }
                }
                assert_eq!(got, want, "p={} coeffs={:?}", p, coeffs);
            }
        }
    }

    #[test]
    fn roots_over_large_prime() {
        let f = gf(1000003);
        // (x - 5)(x - 700000)(x^2 + 1)... build (x-5)(x-700000) explicitly
        let a = 5u64;
        let b = 700000u64;
        let c0 = mul_mod(a, b, 1000003);
        let c1 = sub_mod(0, add_mod(a, b, 1000003), 1000003);
        let coeffs = vec![FieldElem::Fp(c0), FieldElem::Fp(c1), FieldElem::Fp(1)];
        let r = univariate_roots(&f, &coeffs).unwrap();
        assert_eq!(r, vec![FieldElem::Fp(5), FieldElem::Fp(700000)]);
    }

    #[test]
    fn roots_reject_zero_polynomial_and_rationals() {
        let f = gf(7);
        assert_eq!(univariate_roots(&f, &[f.zero(), f.zero()]), Err(Error::ZeroPolynomial));
        let q = FieldSpec::rationals();
        assert_eq!(univariate_roots(&q, &[q.one()]), Err(Error::NeedsFiniteField));
    }

    #[test]
    fn random_elements_are_deterministic_per_seed() {
        let f = gf(65537);
        let a: Vec<FieldElem> = {
            let mut rng = seeded_rng(9);
            (0..32).map(|_| f.random_elem(&mut rng)).collect()
        };
        let b: Vec<FieldElem> = {
            let mut rng = seeded_rng(9);
            (0..32).map(|_| f.random_elem(&mut rng)).collect()
        };
        assert_eq!(a, b);
    }
}
