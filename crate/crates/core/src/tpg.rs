//! The resolvable transversal design TPG(n,q) = TD(q+1, q^(n-1)).
//!
//! Groups are indexed by the points of PG(1,q) on GF(q)^2: group 0 is
//! `x = (1,0)`, group 1 is `y = (0,1)` and group `2 + k` is `x + alpha^k y`.
//! Group elements are vectors of GF(q)^(n-1) packed as in [`VecSpace`].
//! The block with parameters `(u, u')` is
//! `{(x,u), (y,u'), (x + alpha^k y, u + alpha^k u') : k}`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{GaloisField, SubfieldCoordinates};
use crate::space::{LineId, PointId, Space};
use crate::vector::VecSpace;

/// A TD point: (group, element).
pub type TdPoint = (u32, u32);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TransversalDesign {
    pub n: u32,
    pub q: u32,
    pub groups: u32,
    pub group_size: u32,
    /// Block `u * group_size + u'` for parameters `(u, u')`.
    pub blocks: Vec<Vec<TdPoint>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Resolution {
    /// Block indices per parallel class.
    pub classes: Vec<Vec<usize>>,
}

fn coordinates(q: u32, dim: u32) -> Result<VecSpace> {
    VecSpace::new(Arc::new(GaloisField::with_order(q)?), dim)
}

/// Multiplication by a primitive element of GF(q^d), as a table on GF(q)^d.
/// It has no eigenvalue in GF(q) when d >= 2.
pub fn resolution_map(q: u32, d: u32) -> Result<Vec<u32>> {
    if d < 2 {
        return Err(Error::InvalidParameters("the resolution needs dimension at least 2".into()));
    }
    Ok(SubfieldCoordinates::with_orders(q, d)?.generator_table())
}

/// Nonzero scalars in the order `1, alpha, alpha^2, ...` as codes.
fn scalar_powers(vs: &VecSpace) -> Vec<u32> {
    let f = vs.field();
    (0..f.mult_order()).map(|k| f.to_code(f.element(k as u64))).collect()
}

pub fn build_tpg(n: u32, q: u32) -> Result<TransversalDesign> {
    if n < 3 {
        return Err(Error::InvalidParameters(format!("TPG needs n >= 3, got {n}")));
    }
    let vs = coordinates(q, n - 1)?;
    let m = vs.size();
    let alphas = scalar_powers(&vs);
    let mut blocks = Vec::with_capacity((m as usize).pow(2));
    for u in 0..m {
        for w in 0..m {
            let mut b = Vec::with_capacity(q as usize + 1);
            b.push((0, u));
            b.push((1, w));
            for (k, &a) in alphas.iter().enumerate() {
                b.push((2 + k as u32, vs.axpy(u, a, w)));
            }
            blocks.push(b);
        }
    }
    Ok(TransversalDesign { n, q, groups: q + 1, group_size: m, blocks })
}

/// Checks the TD axioms: every block meets every group once and every pair
/// of points from distinct groups lies in exactly one block.
pub fn verify_td(td: &TransversalDesign) -> Result<()> {
    let (g, m) = (td.groups as usize, td.group_size as usize);
    let npts = g * m;
    let id = |(gr, e): TdPoint| gr as usize * m + e as usize;
    let mut pair = vec![0u8; npts * npts];
    for (bi, b) in td.blocks.iter().enumerate() {
        if b.len() != g {
            return Err(Error::Verification(format!("block {bi} has {} points", b.len())));
        }
        let mut seen = vec![false; g];
        for &(gr, e) in b {
            if gr as usize >= g || e as usize >= m || seen[gr as usize] {
                return Err(Error::Verification(format!("block {bi} does not meet every group once")));
            }
            seen[gr as usize] = true;
        }
        for (i, &a) in b.iter().enumerate() {
            for &c in &b[i + 1..] {
                let (x, y) = (id(a), id(c));
                let slot = &mut pair[x * npts + y];
                if *slot > 0 {
                    return Err(Error::Verification(format!("pair {a:?} {c:?} lies in two blocks")));
                }
                *slot = 1;
                pair[y * npts + x] = 1;
            }
        }
    }
    for x in 0..npts {
        for y in 0..npts {
            if x / m != y / m && pair[x * npts + y] == 0 {
                return Err(Error::Verification(format!("pair {x} {y} is in no block")));
            }
        }
    }
    Ok(())
}

/// Class of the block `(u, u')` is `u + gamma(u')`.
pub fn resolve_tpg(td: &TransversalDesign) -> Result<Resolution> {
    let vs = coordinates(td.q, td.n - 1)?;
    let gamma = resolution_map(td.q, td.n - 1)?;
    let m = td.group_size as usize;
    let mut classes = vec![Vec::new(); m];
    for (bi, _) in td.blocks.iter().enumerate() {
        let (u, w) = ((bi / m) as u32, (bi % m) as u32);
        classes[vs.add(u, gamma[w as usize]) as usize].push(bi);
    }
    Ok(Resolution { classes })
}

/// Every class partitions the TD points and every block is in exactly one class.
pub fn verify_resolution(td: &TransversalDesign, res: &Resolution) -> Result<()> {
    let m = td.group_size as usize;
    let npts = td.groups as usize * m;
    let mut used = vec![false; td.blocks.len()];
    for (c, class) in res.classes.iter().enumerate() {
        let mut hit = vec![false; npts];
        for &b in class {
            if b >= td.blocks.len() || used[b] {
                return Err(Error::Verification(format!("block {b} repeated or unknown")));
            }
            used[b] = true;
            for &(g, e) in &td.blocks[b] {
                let i = g as usize * m + e as usize;
                if hit[i] {
                    return Err(Error::Verification(format!("class {c} covers ({g},{e}) twice")));
                }
                hit[i] = true;
            }
        }
        if hit.iter().any(|&h| !h) {
            return Err(Error::Verification(format!("class {c} misses a point")));
        }
    }
    if used.iter().any(|&u| !u) {
        return Err(Error::Verification("a block is in no class".into()));
    }
    Ok(())
}

/// The vector of PG(n,q) representing a TD point, with GF(q)^2 in the first
/// two coordinates and the group element in the remaining n-1.
pub fn td_point_vector(space: &Space, (g, e): TdPoint) -> u32 {
    let vs = space.vector_space();
    let q = vs.q();
    let head = match g {
        0 => 1,
        1 => q,
        k => {
            let f = vs.field();
            1 + q * f.to_code(f.element((k - 2) as u64))
        }
    };
    head + q * q * e
}

/// Lines of PG(n,q) carrying the TD blocks.
pub fn tpg_lines(space: &Space, td: &TransversalDesign) -> Result<Vec<LineId>> {
    if space.n() != td.n || space.q() != td.q {
        return Err(Error::DimensionMismatch("TD and space differ".into()));
    }
    td.blocks
        .iter()
        .map(|b| {
            let pts: Vec<PointId> = b
                .iter()
                .map(|&p| space.point_of_vector(td_point_vector(space, p)).expect("nonzero vector"))
                .collect();
            space.find_line(&pts).ok_or_else(|| Error::Verification("block is not a line".into()))
        })
        .collect()
}

/// The flat `{(0,0,u)}` removed to obtain TPG(n,q) inside PG(n,q).
pub fn removal_flat(space: &Space) -> Vec<PointId> {
    let q = space.q();
    let gens: Vec<u32> = (2..=space.n()).map(|i| q.pow(i)).collect();
    space.points_of_span(&gens)
}

/// Lines disjoint from the (n-2)-flat `sub`.
pub fn tpg_by_removal(space: &Space, sub: &[PointId]) -> Result<Vec<LineId>> {
    if space.n() < 2 || space.flat_dimension(sub)? != space.n() - 2 {
        return Err(Error::NotAFlat);
    }
    let mut inside = vec![false; space.num_points() as usize];
    for &p in sub {
        inside[p as usize] = true;
    }
    Ok((0..space.num_lines()).filter(|&l| space.line(l).iter().all(|&p| !inside[p as usize])).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pencil {
    pub hyperplanes: Vec<Vec<PointId>>,
    pub shared: Vec<PointId>,
}

/// The q+1 hyperplanes through the (n-2)-flat `sub`.
pub fn hyperplane_pencil_decomposition(space: &Space, sub: &[PointId]) -> Result<Pencil> {
    if space.n() < 2 || space.flat_dimension(sub)? != space.n() - 2 {
        return Err(Error::NotAFlat);
    }
    let mut shared = sub.to_vec();
    shared.sort_unstable();
    let mut inside = vec![false; space.num_points() as usize];
    for &p in &shared {
        inside[p as usize] = true;
    }
    let mut hyperplanes = Vec::new();
    let mut claimed = inside.clone();
    for p in 0..space.num_points() {
        if claimed[p as usize] {
            continue;
        }
        let mut gens = shared.clone();
        gens.push(p);
        let h = space.subspace_points(&gens)?;
        for &x in &h {
            claimed[x as usize] = true;
        }
        hyperplanes.push(h);
    }
    Ok(Pencil { hyperplanes, shared })
}

/// Number of lines meeting `hyperplane`.
pub fn incidence_count_hyperplane(space: &Space, hyperplane: &[PointId]) -> Result<u64> {
    if space.flat_dimension(hyperplane)? != space.n() - 1 {
        return Err(Error::NotAFlat);
    }
    let mut inside = vec![false; space.num_points() as usize];
    for &p in hyperplane {
        inside[p as usize] = true;
    }
    Ok((0..space.num_lines()).filter(|&l| space.line(l).iter().any(|&p| inside[p as usize])).count() as u64)
}
