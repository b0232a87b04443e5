//! Vectors of GF(q)^d packed into integers.
//!
//! Coordinate `i` is base-q digit `i` of the packed value and holds the
//! GF(q)-code of the entry, so the zero vector is `0` and the vectors of
//! a d-dimensional space are exactly `0..q^d`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::GaloisField;

#[derive(Clone, Debug)]
pub struct VecSpace {
    field: Arc<GaloisField>,
    q: u32,
    dim: u32,
    /// `Some(bits)` when q is a power of two.
    bits: Option<u32>,
    add: Vec<u8>,
    mul: Vec<u8>,
    inv: Vec<u8>,
}

impl VecSpace {
    pub fn new(field: Arc<GaloisField>, dim: u32) -> Result<Self> {
        let q = field.order();
        if q > 256 {
            return Err(Error::InvalidParameters(format!("coordinate field too large: {q}")));
        }
        if (q as u64).checked_pow(dim).is_none_or(|s| s > crate::field::MAX_FIELD_ORDER) {
            return Err(Error::InvalidParameters(format!("GF({q})^{dim} is too large")));
        }
        let bits = q.is_power_of_two().then(|| q.trailing_zeros());
        let mut add = vec![0u8; (q * q) as usize];
        let mut mul = vec![0u8; (q * q) as usize];
        for a in 0..q {
            for b in 0..q {
                let (ea, eb) = (field.from_code(a), field.from_code(b));
                add[(a * q + b) as usize] = field.to_code(field.add(ea, eb)) as u8;
                mul[(a * q + b) as usize] = field.to_code(field.mul(ea, eb)) as u8;
            }
        }
        let inv = (0..q)
            .map(|a| field.inv(field.from_code(a)).map_or(0, |i| field.to_code(i)) as u8)
            .collect();
        Ok(VecSpace { field, q, dim, bits, add, mul, inv })
    }

    pub fn field(&self) -> &Arc<GaloisField> {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    /// Number of vectors, `q^dim`.
    pub fn size(&self) -> u32 {
        self.q.pow(self.dim)
    }

    pub fn weight(&self, i: u32) -> u32 {
        self.q.pow(i)
    }

    #[inline]
    pub fn digit(&self, w: u32, i: u32) -> u32 {
        match self.bits {
            Some(b) => (w >> (b * i)) & (self.q - 1),
            None => (w / self.q.pow(i)) % self.q,
        }
    }

    pub fn digits(&self, w: u32) -> Vec<u32> {
        (0..self.dim).map(|i| self.digit(w, i)).collect()
    }

    pub fn from_digits(&self, digits: &[u32]) -> u32 {
        digits.iter().rev().fold(0, |acc, &d| acc * self.q + d)
    }

    #[inline]
    pub fn add_scalars(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.q + b) as usize] as u32
    }

    #[inline]
    pub fn mul_scalars(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.q + b) as usize] as u32
    }

    pub fn inv_scalar(&self, a: u32) -> u32 {
        self.inv[a as usize] as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.field.p() == 2 {
            return a ^ b;
        }
        let (mut a, mut b, mut out, mut w) = (a, b, 0, 1);
        while a > 0 || b > 0 {
            out += self.add_scalars(a % self.q, b % self.q) * w;
            a /= self.q;
            b /= self.q;
            w *= self.q;
        }
        out
    }

    /// `lambda * w` for a scalar code `lambda`.
    #[inline]
    pub fn scale(&self, lambda: u32, w: u32) -> u32 {
        match lambda {
            0 => 0,
            1 => w,
            _ => {
                let (mut w, mut out, mut weight) = (w, 0, 1);
                while w > 0 {
                    out += self.mul_scalars(lambda, w % self.q) * weight;
                    w /= self.q;
                    weight *= self.q;
                }
                out
            }
        }
    }

    /// `a + lambda * b`.
    #[inline]
    pub fn axpy(&self, a: u32, lambda: u32, b: u32) -> u32 {
        self.add(a, self.scale(lambda, b))
    }

    /// Scales `w` so that its first nonzero coordinate is 1. Returns the
    /// normalized vector and the scalar that was applied.
    pub fn normalize(&self, w: u32) -> (u32, u32) {
        if w == 0 {
            return (0, 0);
        }
        let lead = (0..self.dim).map(|i| self.digit(w, i)).find(|&d| d != 0).unwrap();
        let s = self.inv_scalar(lead);
        (self.scale(s, w), s)
    }

    /// All vectors of the span of `gens`, as a membership table over `0..q^dim`.
    pub fn span_table(&self, gens: &[u32]) -> Vec<bool> {
        let mut member = vec![false; self.size() as usize];
        member[0] = true;
        let mut elems = vec![0u32];
        for &g in gens {
            if member[g as usize] {
                continue;
            }
            let mut next = Vec::with_capacity(elems.len() * self.q as usize);
            for lambda in 1..self.q {
                let lg = self.scale(lambda, g);
                for &e in &elems {
                    next.push(self.add(e, lg));
                }
            }
            for &w in &next {
                member[w as usize] = true;
            }
            elems.extend(next);
        }
        member
    }

    /// A maximal independent subsequence of `vectors`, in order.
    pub fn independent_subset(&self, vectors: &[u32]) -> Vec<u32> {
        let mut basis = Vec::new();
        let mut rows: Vec<(u32, u32)> = Vec::new(); // (pivot coordinate, reduced row)
        for &v in vectors {
            let mut r = v;
            for &(pivot, row) in &rows {
                let c = self.digit(r, pivot);
                if c != 0 {
                    // r - c * row, with row normalized at its pivot
                    r = self.add(r, self.scale(self.neg_scalar(c), row));
                }
            }
            if r != 0 {
                let (row, _) = self.normalize(r);
                let pivot = (0..self.dim).find(|&i| self.digit(row, i) != 0).unwrap();
                // keep earlier rows reduced at the new pivot
                for entry in rows.iter_mut() {
                    let c = self.digit(entry.1, pivot);
                    if c != 0 {
                        entry.1 = self.add(entry.1, self.scale(self.neg_scalar(c), row));
                    }
                }
                rows.push((pivot, row));
                basis.push(v);
            }
        }
        basis
    }

    pub fn rank(&self, vectors: &[u32]) -> u32 {
        self.independent_subset(vectors).len() as u32
    }

    pub fn neg_scalar(&self, a: u32) -> u32 {
        let f = &self.field;
        f.to_code(f.neg(f.from_code(a)))
    }

    /// Extends an independent list to a basis using unit vectors.
    pub fn extend_to_basis(&self, vectors: &[u32]) -> Vec<u32> {
        let mut all = vectors.to_vec();
        all.extend((0..self.dim).map(|i| self.weight(i)));
        self.independent_subset(&all)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(q: u32, d: u32) -> VecSpace {
        VecSpace::new(Arc::new(GaloisField::with_order(q).unwrap()), d).unwrap()
    }

    #[test]
    fn normalize_sets_leading_coordinate_to_one() {
        let vs = space(3, 3);
        for w in 1..vs.size() {
            let (n, s) = vs.normalize(w);
            assert_eq!((0..3).map(|i| vs.digit(n, i)).find(|&d| d != 0), Some(1));
            assert_eq!(vs.scale(vs.inv_scalar(s), n), w);
        }
    }

    #[test]
    fn span_and_rank_agree() {
        let vs = space(4, 4);
        let gens = [1, 4, 5, 16];
        let member = vs.span_table(&gens);
        let count = member.iter().filter(|&&m| m).count() as u32;
        assert_eq!(count, 4u32.pow(vs.rank(&gens)));
        assert_eq!(vs.rank(&gens), 3);
        assert_eq!(vs.extend_to_basis(&[5]).len(), 4);
    }
}
