//! Finite fields GF(p^m) in discrete-log form.
//!
//! Every nonzero element is stored as its exponent with respect to the
//! residue class of `x`, which the constructor checks to be primitive.
//! Multiplication adds exponents and addition goes through a Zech table,
//! `zech[t] = log(1 + x^t)`. Elements also have a coefficient encoding
//! ("code"): the integer `c_0 + c_1 p + ... + c_{m-1} p^{m-1}` of the
//! reduced polynomial in `x`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest field order for which full log/Zech tables are built.
pub const MAX_FIELD_ORDER: u64 = 1 << 24;

const ZERO_LOG: u32 = u32::MAX;

/// A field element in logarithmic form. Zero is a sentinel, not log 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(ZERO_LOG);
    pub const ONE: FieldElement = FieldElement(0);

    /// The element `x^log`. The caller is responsible for `log < order - 1`;
    /// use [`GaloisField::element`] to reduce arbitrary exponents.
    pub const fn from_log(log: u32) -> Self {
        FieldElement(log)
    }

    pub fn log(self) -> Option<u32> {
        (self.0 != ZERO_LOG).then_some(self.0)
    }

    pub fn is_zero(self) -> bool {
        self.0 == ZERO_LOG
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q = p^e` into `(p, e)`.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut r, mut e) = (q, 0);
    while r % p == 0 {
        r /= p;
        e += 1;
    }
    (r == 1).then_some((p, e))
}

/// Polynomials fixed by the published point labelings; coefficients low-degree first.
pub fn reference_polynomial(p: u32, m: u32) -> Option<Vec<u32>> {
    match (p, m) {
        // x^4 + x + 1
        (2, 4) => Some(vec![1, 1, 0, 0, 1]),
        // x^8 + x^6 + x^3 + x^2 + 1
        (2, 8) => Some(vec![1, 0, 1, 1, 0, 0, 1, 0, 1]),
        // x^12 + x^10 + x^2 + x + 1
        (2, 12) => Some(vec![1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 1]),
        // x^4 + x + 2
        (3, 4) => Some(vec![2, 1, 0, 0, 1]),
        _ => None,
    }
}

/// Serializable description `{p, m, poly}` with `poly` low-degree first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescription {
    pub p: u32,
    pub m: u32,
    pub poly: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct GaloisField {
    p: u32,
    m: u32,
    poly: Vec<u32>,
    order: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
}

impl GaloisField {
    /// Builds GF(p^m). Without `poly`, the reference polynomial is used when
    /// one is pinned for `(p, m)`, otherwise the least primitive polynomial
    /// (ordering by the integer `c_0 + c_1 p + ...` of the non-leading
    /// coefficients).
    pub fn new(p: u32, m: u32, poly: Option<Vec<u32>>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 {
            return Err(Error::InvalidParameters("extension degree must be at least 1".into()));
        }
        let order = (p as u64)
            .checked_pow(m)
            .filter(|&o| o <= MAX_FIELD_ORDER)
            .ok_or(Error::FieldTooLarge((p as f64).powi(m as i32) as u64))?
            as u32;
        let poly = match poly {
            Some(poly) => {
                check_polynomial_shape(p, m, &poly)?;
                poly
            }
            None => match reference_polynomial(p, m) {
                Some(poly) => poly,
                None => least_primitive_polynomial(p, m),
            },
        };
        let Some(exp) = power_table(p, m, &poly) else {
            return Err(if is_irreducible(p, &poly) {
                Error::NonPrimitivePolynomial(poly)
            } else {
                Error::ReduciblePolynomial(poly, p)
            });
        };
        let mut log = vec![ZERO_LOG; order as usize];
        for (k, &code) in exp.iter().enumerate() {
            log[code as usize] = k as u32;
        }
        let mut field = GaloisField { p, m, poly, order, exp, log, zech: Vec::new() };
        field.zech = (0..field.exp.len())
            .map(|t| field.log[field.add_codes(1, field.exp[t]) as usize])
            .collect();
        Ok(field)
    }

    /// GF(q) with its default polynomial.
    pub fn with_order(q: u32) -> Result<Self> {
        let (p, e) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        GaloisField::new(p, e, None)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Order of the multiplicative group.
    pub fn mult_order(&self) -> u32 {
        self.order - 1
    }

    pub fn poly(&self) -> &[u32] {
        &self.poly
    }

    pub fn description(&self) -> FieldDescription {
        FieldDescription { p: self.p, m: self.m, poly: self.poly.clone() }
    }

    /// `x^log` for an arbitrary exponent.
    pub fn element(&self, log: u64) -> FieldElement {
        FieldElement((log % self.mult_order() as u64) as u32)
    }

    /// The fixed primitive element (the residue of `x`).
    pub fn primitive(&self) -> FieldElement {
        self.element(1)
    }

    pub fn contains(&self, a: FieldElement) -> bool {
        a.is_zero() || a.0 < self.mult_order()
    }

    /// Zech logarithm: `log(1 + x^t)`, or `None` when `1 + x^t = 0`.
    pub fn zech(&self, t: u32) -> Option<u32> {
        let z = self.zech[(t % self.mult_order()) as usize];
        (z != ZERO_LOG).then_some(z)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        let n = self.mult_order();
        let d = (b.0 + n - a.0) % n;
        match self.zech[d as usize] {
            ZERO_LOG => FieldElement::ZERO,
            z => FieldElement(((a.0 as u64 + z as u64) % n as u64) as u32),
        }
    }

    pub fn checked_add(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        if !self.contains(a) || !self.contains(b) {
            return Err(Error::ForeignElement);
        }
        Ok(self.add(a, b))
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if a.is_zero() || self.p == 2 {
            return a;
        }
        self.element(a.0 as u64 + self.mult_order() as u64 / 2)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.is_zero() || b.is_zero() {
            return FieldElement::ZERO;
        }
        self.element(a.0 as u64 + b.0 as u64)
    }

    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        let l = a.log()?;
        Some(self.element((self.mult_order() - l) as u64))
    }

    pub fn pow(&self, a: FieldElement, k: u64) -> FieldElement {
        match a.log() {
            None if k == 0 => FieldElement::ONE,
            None => FieldElement::ZERO,
            Some(l) => self.element((l as u64 % self.mult_order() as u64) * (k % self.mult_order() as u64)),
        }
    }

    /// The Frobenius map `a -> a^p`.
    pub fn frobenius(&self, a: FieldElement) -> FieldElement {
        self.pow(a, self.p as u64)
    }

    /// Coefficient encoding of `a`.
    pub fn to_code(&self, a: FieldElement) -> u32 {
        match a.log() {
            None => 0,
            Some(l) => self.exp[l as usize],
        }
    }

    pub fn from_code(&self, code: u32) -> FieldElement {
        FieldElement(self.log[code as usize])
    }

    /// Coefficient-wise sum of two encoded elements.
    pub fn add_codes(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let (mut a, mut b, mut out, mut w) = (a, b, 0, 1);
        while a > 0 || b > 0 {
            out += ((a % self.p + b % self.p) % self.p) * w;
            a /= self.p;
            b /= self.p;
            w *= self.p;
        }
        out
    }

    /// Evaluates a polynomial with GF(p) coefficients (low-degree first) at `x`.
    pub fn eval_prime_poly(&self, coeffs: &[u32], x: FieldElement) -> FieldElement {
        coeffs
            .iter()
            .rev()
            .fold(FieldElement::ZERO, |acc, &c| self.add(self.mul(acc, x), self.from_code(c % self.p)))
    }

    /// Embeds GF(p^d), built with its default polynomial, for `d | m`.
    pub fn subfield_embedding(&self, d: u32) -> Result<SubfieldEmbedding> {
        if d == 0 || !self.m.is_multiple_of(d) {
            return Err(Error::NotADivisor(d, self.m));
        }
        let sub = GaloisField::new(self.p, d, None)?;
        self.embed(Arc::new(sub))
    }

    /// Embeds a given subfield. Its generator is sent to `x^(t*s)` with
    /// `t = (p^m - 1)/(p^d - 1)` and the least `s` coprime to `p^d - 1` for
    /// which `x^(t*s)` is a root of the subfield's polynomial (`s = 1`
    /// whenever the minimal polynomials agree).
    pub fn embed(&self, sub: Arc<GaloisField>) -> Result<SubfieldEmbedding> {
        if sub.p != self.p || !self.m.is_multiple_of(sub.m) {
            return Err(Error::NotADivisor(sub.m, self.m));
        }
        let sub_n = sub.mult_order() as u64;
        let t = self.mult_order() as u64 / sub_n;
        for s in 1..=sub_n {
            if gcd(s, sub_n) != 1 {
                continue;
            }
            let g = self.element(t * s);
            if self.eval_prime_poly(&sub.poly, g).is_zero() {
                return Ok(SubfieldEmbedding { sub, generator: g });
            }
        }
        Err(Error::InvalidParameters("no root of the subfield polynomial found".into()))
    }
}

/// The field homomorphism GF(p^d) -> GF(p^m) fixed by the image of the
/// subfield's generator.
#[derive(Clone, Debug)]
pub struct SubfieldEmbedding {
    sub: Arc<GaloisField>,
    generator: FieldElement,
}

impl SubfieldEmbedding {
    pub fn sub(&self) -> &Arc<GaloisField> {
        &self.sub
    }

    /// Image of the subfield's primitive element.
    pub fn generator(&self) -> FieldElement {
        self.generator
    }

    pub fn map(&self, big: &GaloisField, a: FieldElement) -> FieldElement {
        match a.log() {
            None => FieldElement::ZERO,
            Some(l) => big.pow(self.generator, l as u64),
        }
    }
}

/// Coordinates of GF(q^k) as a k-dimensional vector space over GF(q), in
/// the basis `1, x, ..., x^(k-1)`. Vectors are packed base q, digit `i`
/// holding the GF(q)-code of the `x^i` coordinate.
#[derive(Clone, Debug)]
pub struct SubfieldCoordinates {
    big: Arc<GaloisField>,
    embedding: SubfieldEmbedding,
    degree: u32,
    to_vec: Vec<u32>,
    from_vec: Vec<u32>,
}

impl SubfieldCoordinates {
    pub fn new(big: Arc<GaloisField>, sub: Arc<GaloisField>) -> Result<Self> {
        let embedding = big.embed(sub.clone())?;
        let q = sub.order();
        let degree = big.m() / sub.m();
        let size = big.order() as usize;
        let image: Vec<u32> = (0..q)
            .map(|c| big.to_code(embedding.map(&big, sub.from_code(c))))
            .collect();
        let basis: Vec<FieldElement> = (0..degree).map(|i| big.element(i as u64)).collect();
        let mut from_vec = vec![0u32; size];
        let mut to_vec = vec![u32::MAX; size];
        for w in 0..size as u32 {
            let mut acc = FieldElement::ZERO;
            let mut r = w;
            for b in &basis {
                let c = big.from_code(image[(r % q) as usize]);
                acc = big.add(acc, big.mul(c, *b));
                r /= q;
            }
            let code = big.to_code(acc);
            if to_vec[code as usize] != u32::MAX {
                return Err(Error::DependentBasis);
            }
            to_vec[code as usize] = w;
            from_vec[w as usize] = code;
        }
        Ok(SubfieldCoordinates { big, embedding, degree, to_vec, from_vec })
    }

    /// GF(q^k) over GF(q), both with default polynomials.
    pub fn with_orders(q: u32, k: u32) -> Result<Self> {
        let (p, e) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        let big = GaloisField::new(p, e * k, None)?;
        let sub = GaloisField::new(p, e, None)?;
        SubfieldCoordinates::new(Arc::new(big), Arc::new(sub))
    }

    pub fn big(&self) -> &GaloisField {
        &self.big
    }

    pub fn sub(&self) -> &GaloisField {
        self.embedding.sub()
    }

    pub fn embedding(&self) -> &SubfieldEmbedding {
        &self.embedding
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn to_vector(&self, a: FieldElement) -> u32 {
        self.to_vec[self.big.to_code(a) as usize]
    }

    pub fn from_vector(&self, w: u32) -> FieldElement {
        self.big.from_code(self.from_vec[w as usize])
    }

    /// Multiplication by the primitive element `x`, as a GF(q)-linear map on
    /// packed vectors. It has no eigenvalue in GF(q) once `k >= 2`.
    pub fn generator_table(&self) -> Vec<u32> {
        let x = self.big.primitive();
        (0..self.from_vec.len() as u32)
            .map(|w| self.to_vector(self.big.mul(x, self.from_vector(w))))
            .collect()
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn check_polynomial_shape(p: u32, m: u32, poly: &[u32]) -> Result<()> {
    if poly.len() != m as usize + 1 {
        return Err(Error::InvalidPolynomial(format!("expected degree {m}, got {} coefficients", poly.len())));
    }
    if poly[m as usize] != 1 {
        return Err(Error::InvalidPolynomial("polynomial must be monic".into()));
    }
    if poly.iter().any(|&c| c >= p) {
        return Err(Error::InvalidPolynomial(format!("coefficients must lie in 0..{p}")));
    }
    Ok(())
}

/// Successive powers of `x` modulo `poly` as codes, if `x` has order `p^m - 1`.
fn power_table(p: u32, m: u32, poly: &[u32]) -> Option<Vec<u32>> {
    if poly[0] == 0 {
        return None;
    }
    let order = p.pow(m);
    let n = order - 1;
    let top_weight = p.pow(m - 1);
    // reduction[t] encodes -t * (c_0 + ... + c_{m-1} x^{m-1})
    let reduction: Vec<u32> = (0..p)
        .map(|t| {
            poly[..m as usize]
                .iter()
                .enumerate()
                .map(|(i, &c)| ((p - (t * c) % p) % p) * p.pow(i as u32))
                .sum()
        })
        .collect();
    let field_add = |a: u32, b: u32| -> u32 {
        if p == 2 {
            return a ^ b;
        }
        let (mut a, mut b, mut out, mut w) = (a, b, 0, 1);
        while a > 0 || b > 0 {
            out += ((a % p + b % p) % p) * w;
            a /= p;
            b /= p;
            w *= p;
        }
        out
    };
    let mut exp = Vec::with_capacity(n as usize);
    let mut cur = 1u32;
    for k in 0..n {
        if k > 0 && cur == 1 {
            return None;
        }
        exp.push(cur);
        let top = cur / top_weight;
        cur = field_add((cur % top_weight) * p, reduction[top as usize]);
    }
    (cur == 1).then_some(exp)
}

fn least_primitive_polynomial(p: u32, m: u32) -> Vec<u32> {
    let lower = p.pow(m);
    for c in 0..lower {
        if c % p == 0 {
            continue;
        }
        let mut poly: Vec<u32> = (0..m).map(|i| (c / p.pow(i)) % p).collect();
        poly.push(1);
        if power_table(p, m, &poly).is_some() {
            return poly;
        }
    }
    unreachable!("every finite field has a primitive polynomial")
}

/// Trial division by every monic polynomial of degree at most `deg / 2`.
fn is_irreducible(p: u32, poly: &[u32]) -> bool {
    let m = poly.len() - 1;
    for d in 1..=m / 2 {
        for c in 0..p.pow(d as u32) {
            let mut g: Vec<u32> = (0..d).map(|i| (c / p.pow(i as u32)) % p).collect();
            g.push(1);
            if poly_rem(p, poly, &g).iter().all(|&x| x == 0) {
                return false;
            }
        }
    }
    true
}

fn poly_rem(p: u32, f: &[u32], g: &[u32]) -> Vec<u32> {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    while r.len() > dg {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dg;
        for (i, &gc) in g.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - (lead * gc) % p) % p;
        }
        r.pop();
    }
    r
}
