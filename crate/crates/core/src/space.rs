//! PG(n,q) with explicit point and line tables.
//!
//! Two point labelings are supported. In the Singer model the field
//! GF(q^(n+1)) is viewed as the vector space, and point `i` is the class of
//! `beta^i`. In the product model the vector space is GF(q^2) x GF(q^2) x
//! GF(q^(n-3)) written in GF(q)-coordinates, points are vectors whose first
//! nonzero coordinate is 1, and they are numbered in increasing packed
//! order. Both models share the same coordinate machinery, so every point
//! also has a representative vector in GF(q)^(n+1).

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{prime_power, GaloisField, SubfieldCoordinates};
use crate::vector::VecSpace;

pub type PointId = u32;
pub type LineId = u32;

const NO_POINT: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Singer,
    Product,
}

impl std::fmt::Display for Model {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Model::Singer => "singer",
            Model::Product => "product",
        })
    }
}

impl std::str::FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "singer" => Ok(Model::Singer),
            "product" => Ok(Model::Product),
            other => Err(Error::UnsupportedModel(other.to_string())),
        }
    }
}

/// JSON descriptor `{n, q, model, poly, singerPoly?}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SpaceDescriptor {
    pub n: u32,
    pub q: u32,
    pub model: Model,
    /// Polynomial of GF(q) over its prime field.
    pub poly: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub singer_poly: Option<Vec<u32>>,
}

/// A point label as written in certificate files: the Singer exponent, or
/// the coordinate tuple of GF(q)-logs with -1 standing for zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointLabel {
    Index(u32),
    Coords(Vec<i64>),
}

#[derive(Clone, Debug)]
struct SingerData {
    coords: SubfieldCoordinates,
    v: u32,
}

#[derive(Debug)]
pub struct Space {
    n: u32,
    q: u32,
    model: Model,
    vs: VecSpace,
    rep: Vec<u32>,
    point_of: Vec<u32>,
    singer: Option<SingerData>,
    line_points: Vec<PointId>,
    line_key: HashMap<u64, LineId>,
    incidence_offsets: Vec<u32>,
    incidence: Vec<LineId>,
}

impl Space {
    pub fn new(n: u32, q: u32, model: Model) -> Result<Self> {
        Space::with_polynomial(n, q, model, None)
    }

    /// Builds PG(n,q); `singer_poly` overrides the polynomial of GF(q^(n+1))
    /// in the Singer model.
    pub fn with_polynomial(n: u32, q: u32, model: Model, singer_poly: Option<Vec<u32>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameters("dimension must be at least 1".into()));
        }
        let (p, e) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        let field = Arc::new(GaloisField::new(p, e, None)?);
        let vs = VecSpace::new(field.clone(), n + 1)?;
        let size = vs.size() as usize;
        let mut point_of = vec![NO_POINT; size];
        let (rep, singer) = match model {
            Model::Singer => {
                let big = Arc::new(GaloisField::new(p, e * (n + 1), singer_poly)?);
                let coords = SubfieldCoordinates::new(big.clone(), field)?;
                let v = big.mult_order() / (q - 1);
                let rep: Vec<u32> = (0..v).map(|i| coords.to_vector(big.element(i as u64))).collect();
                for (w, slot) in point_of.iter_mut().enumerate().skip(1) {
                    let log = coords.from_vector(w as u32).log().expect("nonzero vector");
                    *slot = log % v;
                }
                (rep, Some(SingerData { coords, v }))
            }
            Model::Product => {
                if n < 3 {
                    return Err(Error::UnsupportedModel(format!("product model needs n >= 3, got n = {n}")));
                }
                if singer_poly.is_some() {
                    return Err(Error::UnsupportedModel("the product model has no Singer polynomial".into()));
                }
                let mut rep = Vec::new();
                let mut index = vec![NO_POINT; size];
                for w in 1..size as u32 {
                    if vs.normalize(w).0 == w {
                        index[w as usize] = rep.len() as u32;
                        rep.push(w);
                    }
                }
                for w in 1..size as u32 {
                    point_of[w as usize] = index[vs.normalize(w).0 as usize];
                }
                (rep, None)
            }
        };
        let mut space = Space {
            n,
            q,
            model,
            vs,
            rep,
            point_of,
            singer,
            line_points: Vec::new(),
            line_key: HashMap::new(),
            incidence_offsets: Vec::new(),
            incidence: Vec::new(),
        };
        space.enumerate_lines();
        Ok(space)
    }

    pub fn from_descriptor(d: &SpaceDescriptor) -> Result<Self> {
        let space = Space::with_polynomial(d.n, d.q, d.model, d.singer_poly.clone())?;
        if space.vs.field().poly() != d.poly.as_slice() {
            return Err(Error::UnsupportedModel(format!(
                "coordinate polynomial {:?} differs from the default {:?}",
                d.poly,
                space.vs.field().poly()
            )));
        }
        Ok(space)
    }

    pub fn descriptor(&self) -> SpaceDescriptor {
        SpaceDescriptor {
            n: self.n,
            q: self.q,
            model: self.model,
            poly: self.vs.field().poly().to_vec(),
            singer_poly: self.singer.as_ref().map(|s| s.coords.big().poly().to_vec()),
        }
    }

    fn enumerate_lines(&mut self) {
        let v = self.num_points();
        let k = self.q as usize + 1;
        let mut stamp = vec![u32::MAX; v as usize];
        let mut buf = Vec::with_capacity(k);
        for x in 0..v {
            for y in x + 1..v {
                if stamp[y as usize] == x {
                    continue;
                }
                self.span_into(x, y, &mut buf);
                for &p in &buf {
                    stamp[p as usize] = x;
                }
                if buf[0] == x {
                    let id = (self.line_points.len() / k) as LineId;
                    self.line_key.insert(self.key(buf[0], buf[1]), id);
                    self.line_points.extend_from_slice(&buf);
                }
            }
        }
        let mut degree = vec![0u32; v as usize + 1];
        for &p in &self.line_points {
            degree[p as usize + 1] += 1;
        }
        for i in 0..v as usize {
            degree[i + 1] += degree[i];
        }
        let mut fill = degree.clone();
        let mut incidence = vec![0; self.line_points.len()];
        for (i, chunk) in self.line_points.chunks(k).enumerate() {
            for &p in chunk {
                incidence[fill[p as usize] as usize] = i as LineId;
                fill[p as usize] += 1;
            }
        }
        self.incidence_offsets = degree;
        self.incidence = incidence;
    }

    #[inline]
    fn key(&self, a: PointId, b: PointId) -> u64 {
        a as u64 * self.num_points() as u64 + b as u64
    }

    /// Sorted points of the line through two distinct points, computed
    /// without the line table.
    fn span_into(&self, x: PointId, y: PointId, out: &mut Vec<PointId>) {
        out.clear();
        out.push(x);
        out.push(y);
        match &self.singer {
            Some(s) => {
                // x + alpha^k y with alpha = beta^v, via Zech logarithms
                let big = s.coords.big();
                let n = big.mult_order() as u64;
                for k in 0..self.q as u64 - 1 {
                    let t = (y as u64 + k * s.v as u64 + n - x as u64) % n;
                    let z = big.zech(t as u32).expect("distinct points are independent") as u64;
                    out.push(((x as u64 + z) % n % s.v as u64) as u32);
                }
            }
            None => {
                let (a, b) = (self.rep[x as usize], self.rep[y as usize]);
                for lambda in 1..self.q {
                    out.push(self.point_of[self.vs.axpy(a, lambda, b) as usize]);
                }
            }
        }
        out.sort_unstable();
    }

    /// The points of the line through `x` and `y`, from vector arithmetic in
    /// the coordinate representation regardless of the model.
    pub fn span_by_coordinates(&self, x: PointId, y: PointId) -> Result<Vec<PointId>> {
        self.check_point(x)?;
        self.check_point(y)?;
        if x == y {
            return Err(Error::DegeneratePoints);
        }
        let (a, b) = (self.rep[x as usize], self.rep[y as usize]);
        let mut pts: Vec<PointId> = vec![x, y];
        pts.extend((1..self.q).map(|l| self.point_of[self.vs.axpy(a, l, b) as usize]));
        pts.sort_unstable();
        Ok(pts)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn vector_space(&self) -> &VecSpace {
        &self.vs
    }

    pub fn num_points(&self) -> u32 {
        self.rep.len() as u32
    }

    pub fn num_lines(&self) -> u32 {
        (self.line_points.len() / (self.q as usize + 1)) as u32
    }

    pub fn line_size(&self) -> usize {
        self.q as usize + 1
    }

    /// Sorted points of a line.
    pub fn line(&self, id: LineId) -> &[PointId] {
        let k = self.line_size();
        &self.line_points[id as usize * k..(id as usize + 1) * k]
    }

    pub fn lines(&self) -> impl Iterator<Item = &[PointId]> {
        self.line_points.chunks(self.line_size())
    }

    pub fn lines_through(&self, p: PointId) -> &[LineId] {
        let (a, b) = (self.incidence_offsets[p as usize], self.incidence_offsets[p as usize + 1]);
        &self.incidence[a as usize..b as usize]
    }

    pub fn check_point(&self, p: PointId) -> Result<()> {
        if p < self.num_points() {
            Ok(())
        } else {
            Err(Error::UnknownPoint(p))
        }
    }

    pub fn check_line(&self, l: LineId) -> Result<()> {
        if l < self.num_lines() {
            Ok(())
        } else {
            Err(Error::UnknownLine(l))
        }
    }

    pub fn line_through(&self, x: PointId, y: PointId) -> Result<LineId> {
        self.check_point(x)?;
        self.check_point(y)?;
        if x == y {
            return Err(Error::DegeneratePoints);
        }
        let (a, b) = if x < y { (x, y) } else { (y, x) };
        let mut buf = Vec::new();
        self.span_into(a, b, &mut buf);
        Ok(self.line_key[&self.key(buf[0], buf[1])])
    }

    /// LineId of a line given by (at least two of) its points, if any.
    pub fn find_line(&self, points: &[PointId]) -> Option<LineId> {
        if points.len() < 2 {
            return None;
        }
        let mut sorted = points.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != points.len() || sorted.iter().any(|&p| p >= self.num_points()) {
            return None;
        }
        let id = self.line_through(sorted[0], sorted[1]).ok()?;
        let line = self.line(id);
        sorted.iter().all(|p| line.binary_search(p).is_ok()).then_some(id)
    }

    pub fn lines_meet(&self, a: LineId, b: LineId) -> bool {
        let (la, lb) = (self.line(a), self.line(b));
        la.iter().any(|p| lb.binary_search(p).is_ok())
    }

    /// Canonical representative vector of a point.
    pub fn rep(&self, p: PointId) -> u32 {
        self.rep[p as usize]
    }

    pub fn point_of_vector(&self, w: u32) -> Option<PointId> {
        match self.point_of.get(w as usize) {
            Some(&p) if p != NO_POINT => Some(p),
            _ => None,
        }
    }

    /// All points of the span of `generators`, sorted.
    pub fn subspace_points(&self, generators: &[PointId]) -> Result<Vec<PointId>> {
        for &g in generators {
            self.check_point(g)?;
        }
        let gens: Vec<u32> = generators.iter().map(|&g| self.rep(g)).collect();
        Ok(self.points_of_span(&gens))
    }

    /// Points of the span of arbitrary vectors.
    pub fn points_of_span(&self, vectors: &[u32]) -> Vec<PointId> {
        let member = self.vs.span_table(vectors);
        let mut pts: Vec<PointId> = (0..self.num_points()).filter(|&p| member[self.rep(p) as usize]).collect();
        pts.sort_unstable();
        pts
    }

    /// Projective dimension of the flat spanned by `points`, or an error if
    /// the set is not closed under spans.
    pub fn flat_dimension(&self, points: &[PointId]) -> Result<u32> {
        if points.is_empty() {
            return Err(Error::NotAFlat);
        }
        let span = self.subspace_points(points)?;
        let mut sorted = points.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if span != sorted {
            return Err(Error::NotAFlat);
        }
        let vecs: Vec<u32> = points.iter().map(|&p| self.rep(p)).collect();
        Ok(self.vs.rank(&vecs) - 1)
    }

    /// A basis (as vectors) of the linear span of `points`.
    pub fn basis_of(&self, points: &[PointId]) -> Vec<u32> {
        let vecs: Vec<u32> = points.iter().map(|&p| self.rep(p)).collect();
        self.vs.independent_subset(&vecs)
    }

    /// Lines whose points all lie in `points` (which must be sorted).
    pub fn lines_within(&self, points: &[PointId]) -> Vec<LineId> {
        let mut inside = vec![false; self.num_points() as usize];
        for &p in points {
            inside[p as usize] = true;
        }
        (0..self.num_lines()).filter(|&l| self.line(l).iter().all(|&p| inside[p as usize])).collect()
    }

    /// Singer exponent modulus `v`, for Singer-model spaces.
    pub fn singer_modulus(&self) -> Option<u32> {
        self.singer.as_ref().map(|s| s.v)
    }

    /// The field GF(q^(n+1)) of a Singer-model space.
    pub fn singer_field(&self) -> Option<&GaloisField> {
        self.singer.as_ref().map(|s| s.coords.big())
    }

    pub fn point_label(&self, p: PointId) -> PointLabel {
        match self.model {
            Model::Singer => PointLabel::Index(p),
            Model::Product => {
                let f = self.vs.field();
                PointLabel::Coords(
                    self.vs
                        .digits(self.rep(p))
                        .into_iter()
                        .map(|c| f.from_code(c).log().map_or(-1, |l| l as i64))
                        .collect(),
                )
            }
        }
    }

    pub fn point_from_label(&self, label: &PointLabel) -> Result<PointId> {
        match (self.model, label) {
            (Model::Singer, PointLabel::Index(i)) => {
                self.check_point(*i)?;
                Ok(*i)
            }
            (Model::Product, PointLabel::Coords(c)) => {
                let f = self.vs.field();
                if c.len() != self.vs.dim() as usize {
                    return Err(Error::Certificate(format!("coordinate tuple of length {}", c.len())));
                }
                let mut digits = Vec::with_capacity(c.len());
                for &l in c {
                    let d = match l {
                        -1 => 0,
                        l if l >= 0 && (l as u32) < f.mult_order() => f.to_code(f.element(l as u64)),
                        _ => return Err(Error::Certificate(format!("bad coordinate log {l}"))),
                    };
                    digits.push(d);
                }
                let w = self.vs.from_digits(&digits);
                match self.point_of_vector(w) {
                    Some(p) if self.rep(p) == w => Ok(p),
                    _ => Err(Error::Certificate(format!("{c:?} is not a normalized point"))),
                }
            }
            _ => Err(Error::Certificate("point label does not match the model".into())),
        }
    }
}

/// Gaussian binomial coefficient: the number of b-dimensional subspaces of GF(q)^a.
pub fn gaussian_binomial(a: u32, b: u32, q: u32) -> Result<BigUint> {
    if b > a {
        return Err(Error::InvalidParameters(format!("b = {b} exceeds a = {a}")));
    }
    let qb = BigUint::from(q);
    let one = BigUint::from(1u32);
    let mut out = one.clone();
    for i in 1..=b {
        // partial products are themselves Gaussian binomials, so each division is exact
        out *= qb.pow(a - b + i) - &one;
        out /= qb.pow(i) - &one;
    }
    Ok(out)
}

/// [`gaussian_binomial`] for values that fit in a `u64`.
pub fn gaussian(a: u32, b: u32, q: u32) -> u64 {
    u64::try_from(gaussian_binomial(a, b, q).expect("b <= a")).expect("Gaussian binomial exceeds u64")
}

/// A point map between two spaces induced by a linear map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointMap {
    map: Vec<PointId>,
}

impl PointMap {
    pub fn apply(&self, p: PointId) -> PointId {
        self.map[p as usize]
    }

    pub fn as_slice(&self) -> &[PointId] {
        &self.map
    }

    /// Image of a line of `src` as a line of `dst`.
    pub fn map_line(&self, src: &Space, dst: &Space, l: LineId) -> Option<LineId> {
        let pts: Vec<PointId> = src.line(l).iter().map(|&p| self.apply(p)).collect();
        dst.find_line(&pts)
    }

    /// Checks that every line of `src` lands on a line of `dst`.
    pub fn preserves_lines(&self, src: &Space, dst: &Space) -> bool {
        (0..src.num_lines()).all(|l| self.map_line(src, dst, l).is_some())
    }
}

/// The point map of the linear map sending the coordinate basis of `src`
/// (for the Singer model: `1, beta, ..., beta^n`) to `basis_images` in `dst`.
pub fn linear_isomorphism(src: &Space, dst: &Space, basis_images: &[u32]) -> Result<PointMap> {
    if src.n != dst.n || src.q != dst.q {
        return Err(Error::DimensionMismatch(format!(
            "PG({},{}) vs PG({},{})",
            src.n, src.q, dst.n, dst.q
        )));
    }
    let basis: Vec<u32> = (0..=src.n).map(|i| src.vs.weight(i)).collect();
    linear_embedding(src, dst, &basis, basis_images)
}

/// Point map of the injective linear map with `src_basis[i] -> images[i]`.
/// `src_basis` must be a basis of the vector space of `src`; `dst` may be
/// larger.
pub fn linear_embedding(src: &Space, dst: &Space, src_basis: &[u32], images: &[u32]) -> Result<PointMap> {
    let d = src.n as usize + 1;
    if src.q != dst.q {
        return Err(Error::DimensionMismatch(format!("q = {} vs q = {}", src.q, dst.q)));
    }
    if src_basis.len() != d || images.len() != d || dst.n < src.n {
        return Err(Error::DimensionMismatch(format!(
            "{} basis vectors and {} images for a {d}-dimensional space",
            src_basis.len(),
            images.len()
        )));
    }
    if images.iter().any(|&w| w >= dst.vs.size()) {
        return Err(Error::InvalidParameters("image vector out of range".into()));
    }
    if src.vs.rank(src_basis) as usize != d || dst.vs.rank(images) as usize != d {
        return Err(Error::DependentBasis);
    }
    let q = src.q;
    let mut map = vec![NO_POINT; src.num_points() as usize];
    for c in 1..src.vs.size() {
        let (mut s, mut t, mut r) = (0u32, 0u32, c);
        for i in 0..d {
            let coef = r % q;
            r /= q;
            if coef != 0 {
                s = src.vs.axpy(s, coef, src_basis[i]);
                t = dst.vs.axpy(t, coef, images[i]);
            }
        }
        let sp = src.point_of_vector(s).ok_or(Error::DependentBasis)?;
        let tp = dst.point_of_vector(t).ok_or(Error::DependentBasis)?;
        map[sp as usize] = tp;
    }
    Ok(PointMap { map })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singer_pg32_labels() {
        let s = Space::new(3, 2, Model::Singer).unwrap();
        assert_eq!(s.num_points(), 15);
        assert_eq!(s.num_lines(), 35);
        assert_eq!(s.line(s.line_through(0, 5).unwrap()), &[0, 5, 10]);
        assert_eq!(s.line(s.line_through(12, 1).unwrap()), &[1, 12, 13]);
        assert_eq!(s.line_through(3, 3), Err(Error::DegeneratePoints));
    }

    #[test]
    fn singer_and_coordinate_lines_agree() {
        for (n, q) in [(3, 2), (3, 3), (3, 4), (2, 5), (4, 2)] {
            let s = Space::new(n, q, Model::Singer).unwrap();
            for l in 0..s.num_lines() {
                let pts = s.line(l);
                assert_eq!(s.span_by_coordinates(pts[0], pts[1]).unwrap(), pts);
            }
        }
    }

    #[test]
    fn point_counts() {
        assert_eq!(Space::new(3, 8, Model::Singer).unwrap().num_points(), 585);
        let line = Space::new(1, 5, Model::Singer).unwrap();
        assert_eq!((line.num_points(), line.num_lines()), (6, 1));
        assert!(Space::new(2, 3, Model::Product).is_err());
        assert_eq!(Space::new(3, 6, Model::Singer).unwrap_err(), Error::NotPrimePower(6));
    }

    #[test]
    fn gaussian_values() {
        assert_eq!(gaussian(4, 1, 2), 15);
        assert_eq!(gaussian(7, 0, 5), 1);
        assert_eq!(gaussian(6, 2, 3), 11011);
        assert_eq!(gaussian(4, 2, 2), 35);
        assert!(gaussian_binomial(2, 3, 2).is_err());
    }

    #[test]
    fn subspace_points_sizes() {
        let s = Space::new(3, 2, Model::Product).unwrap();
        assert_eq!(s.subspace_points(&[4]).unwrap(), vec![4]);
        let line = s.line(7).to_vec();
        assert_eq!(s.subspace_points(&line[..2]).unwrap(), line);
        // e1, e2, e3 span a plane of 7 points
        let gens: Vec<PointId> = [1, 2, 4].iter().map(|&w| s.point_of_vector(w).unwrap()).collect();
        assert_eq!(s.subspace_points(&gens).unwrap().len(), 7);
    }

    #[test]
    fn identity_and_swap_maps() {
        let s = Space::new(3, 3, Model::Product).unwrap();
        let id = linear_isomorphism(&s, &s, &[1, 3, 9, 27]).unwrap();
        assert!((0..s.num_points()).all(|p| id.apply(p) == p));
        let swap = linear_isomorphism(&s, &s, &[3, 1, 9, 27]).unwrap();
        assert!((0..s.num_points()).all(|p| swap.apply(swap.apply(p)) == p));
        assert!(swap.preserves_lines(&s, &s));
        assert_eq!(linear_isomorphism(&s, &s, &[1, 3, 4, 27]).unwrap_err(), Error::DependentBasis);
    }

    #[test]
    fn singer_to_product_transport() {
        let a = Space::new(3, 4, Model::Singer).unwrap();
        let b = Space::new(3, 4, Model::Product).unwrap();
        let map = linear_isomorphism(&a, &b, &[1, 4, 16, 64]).unwrap();
        assert!(map.preserves_lines(&a, &b));
        let mut seen = map.as_slice().to_vec();
        seen.sort_unstable();
        seen.dedup();
        assert_eq!(seen.len(), 85);
    }

    #[test]
    fn labels_round_trip() {
        for model in [Model::Singer, Model::Product] {
            let s = Space::new(3, 3, model).unwrap();
            for p in 0..s.num_points() {
                assert_eq!(s.point_from_label(&s.point_label(p)).unwrap(), p);
            }
        }
    }
}
