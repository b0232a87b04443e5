//! The recursive construction of PG(n,q) from PG(3,q) and PG(n-2,q), and
//! the three-step coloring that lifts a c(n-2,q)-coloring with property R
//! to a c(n,q)-coloring with property R.
//!
//! Coordinates: PG(n,q) is the product model on GF(q)^4 x GF(q)^(n-3), so
//! the ambient PG(3,q) sits in the first four coordinates and the flat Y is
//! spanned by the last n-3.

use std::ops::Range;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::coloring::{
    color_ipg3, coloring_is_parallelism, search_pg4_coloring, search_property_r, target_chromatic_index, verify_coloring, verify_property_r, Coloring,
    PropertyRCertificate, UNCOLORED,
};
use crate::error::{Error, Result};
use crate::property_e::{verify_property_e, PropertyECertificate};
use crate::space::{linear_embedding, linear_isomorphism, LineId, Model, PointId, PointMap, Space};
use crate::spreads::{
    search_parallelism, verify_parallelism, verify_spread, ParallelismMode, ParallelismOptions, SearchOutcome,
};
use crate::tpg::resolution_map;

/// The color-set layout of one recursion level: `C_1..C_{q^2+1}` of size
/// `c1 = q^(n-4)(q+1)` each, then `C*` of size `c2 = c(n-2,q) - c1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ColorBudget {
    pub n: u32,
    pub q: u32,
    pub c1: u32,
    pub c2: u32,
    pub groups: Vec<Range<u32>>,
    pub shared: Range<u32>,
    /// `splits[i][j]` is `C_{i+1}^{j+1}`, of size `q^(n-4)`.
    pub splits: Vec<Vec<Range<u32>>>,
}

impl ColorBudget {
    pub fn new(n: u32, q: u32) -> Result<Self> {
        if n < 5 {
            return Err(Error::InvalidParameters(format!("the recursion starts at n = 5, got {n}")));
        }
        let part = q.checked_pow(n - 4).ok_or(Error::Overflow)?;
        let c1 = part * (q + 1);
        let c2 = u32::try_from(target_chromatic_index(n - 2, q)?).map_err(|_| Error::Overflow)? - c1;
        let k = q * q + 1;
        let groups: Vec<Range<u32>> = (0..k).map(|i| i * c1..(i + 1) * c1).collect();
        let splits = groups.iter().map(|g| (0..=q).map(|j| g.start + j * part..g.start + (j + 1) * part).collect()).collect();
        Ok(ColorBudget { n, q, c1, c2, shared: k * c1..k * c1 + c2, groups, splits })
    }

    pub fn total(&self) -> u32 {
        self.shared.end
    }

    /// `(q^2+1) c1 + c2 = c(n,q)` and the listed sets are disjoint.
    pub fn audit(&self) -> Result<bool> {
        let lhs = (self.q as u64 * self.q as u64 + 1) * self.c1 as u64 + self.c2 as u64;
        let mut seen = vec![false; self.total() as usize];
        let mut disjoint = true;
        for r in self.groups.iter().chain(std::iter::once(&self.shared)) {
            for c in r.clone() {
                disjoint &= !std::mem::replace(&mut seen[c as usize], true);
            }
        }
        let splits_ok = self.splits.iter().zip(&self.groups).all(|(s, g)| {
            let mut cs: Vec<u32> = s.iter().flat_map(|r| r.clone()).collect();
            cs.sort_unstable();
            cs == g.clone().collect::<Vec<_>>()
        });
        Ok(lhs == target_chromatic_index(self.n, self.q)? && disjoint && seen.iter().all(|&s| s) && splits_ok)
    }
}

/// PG(n,q) assembled from PG(3,q), a spread G_1..G_{q^2+1} and the flat Y.
#[derive(Debug)]
pub struct CompositeSpace {
    pub n: u32,
    pub q: u32,
    pub space: Arc<Space>,
    pub base: Arc<Space>,
    /// Spread lines of `base`, in the given order.
    pub groups: Vec<LineId>,
    /// The other lines of `base`.
    pub a0: Vec<LineId>,
    pub y_points: Vec<PointId>,
    /// Points of `span(G_i, Y)` outside Y.
    pub g_prime: Vec<Vec<PointId>>,
    /// Per line of `a0`, the TD blocks as lines; block `(u,u')` at `u*m+u'`.
    pub a1: Vec<Vec<LineId>>,
    /// Lines of `span(G_i, Y)` not inside Y.
    pub b: Vec<Vec<LineId>>,
    /// Lines inside Y.
    pub c: Vec<LineId>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CompositeAudit {
    pub points: u32,
    pub lines: u32,
    pub a1_lines: u64,
    pub b_lines: u64,
    pub c_lines: u64,
    /// Every line of the space is in exactly one family.
    pub partition_ok: bool,
    /// Every point pair lies in exactly one listed line; `None` when skipped.
    pub pairs_ok: Option<bool>,
    pub flats_ok: bool,
}

const PAIR_CHECK_LIMIT: u32 = 1500;

fn embed_base(base_vec: u32) -> u32 {
    // GF(q)^4 occupies the low four digits in both spaces
    base_vec
}

pub fn assemble_composite_space(n: u32, q: u32, base: Arc<Space>, spread: &[LineId]) -> Result<CompositeSpace> {
    if n < 5 {
        return Err(Error::InvalidParameters(format!("composite construction needs n >= 5, got {n}")));
    }
    if base.n() != 3 || base.q() != q || base.model() != Model::Product {
        return Err(Error::InvalidParameters("base must be product-model PG(3,q)".into()));
    }
    if !verify_spread(&base, spread)?.is_valid() {
        return Err(Error::Verification("the base spread is not a spread".into()));
    }
    let space = Arc::new(Space::new(n, q, Model::Product)?);
    let y_basis: Vec<u32> = (4..=n).map(|i| q.pow(i)).collect();
    let y_points = space.points_of_span(&y_basis);
    let mut in_spread = vec![false; base.num_lines() as usize];
    for &l in spread {
        in_spread[l as usize] = true;
    }
    let a0: Vec<LineId> = (0..base.num_lines()).filter(|&l| !in_spread[l as usize]).collect();
    let mut in_y = vec![false; space.num_points() as usize];
    for &p in &y_points {
        in_y[p as usize] = true;
    }
    let c: Vec<LineId> = space.lines_within(&y_points);
    let mut g_prime = Vec::with_capacity(spread.len());
    let mut b = Vec::with_capacity(spread.len());
    for &g in spread {
        let mut gens: Vec<u32> = base.line(g)[..2].iter().map(|&p| embed_base(base.rep(p))).collect();
        gens.extend(&y_basis);
        let flat = space.points_of_span(&gens);
        g_prime.push(flat.iter().copied().filter(|&p| !in_y[p as usize]).collect::<Vec<_>>());
        let lines = space.lines_within(&flat);
        b.push(lines.into_iter().filter(|&l| !space.line(l).iter().all(|&p| in_y[p as usize])).collect::<Vec<_>>());
    }
    let m = q.pow(n - 3);
    let shift = q.pow(4);
    let mut a1 = Vec::with_capacity(a0.len());
    for &l in &a0 {
        let pts = base.line(l);
        let (va, vb) = (embed_base(base.rep(pts[0])), embed_base(base.rep(pts[1])));
        let mut blocks = Vec::with_capacity((m as usize).pow(2));
        for u in 0..m {
            let x = space.point_of_vector(va + shift * u).expect("nonzero");
            for w in 0..m {
                let y = space.point_of_vector(vb + shift * w).expect("nonzero");
                blocks.push(space.line_through(x, y)?);
            }
        }
        a1.push(blocks);
    }
    Ok(CompositeSpace { n, q, space, base, groups: spread.to_vec(), a0, y_points, g_prime, a1, b, c })
}

impl CompositeSpace {
    pub fn audit(&self) -> Result<CompositeAudit> {
        let s = &self.space;
        let mut count = vec![0u32; s.num_lines() as usize];
        for &l in self.a1.iter().flatten().chain(self.b.iter().flatten()).chain(&self.c) {
            count[l as usize] += 1;
        }
        let mut audit = CompositeAudit {
            points: s.num_points(),
            lines: s.num_lines(),
            a1_lines: self.a1.iter().map(|x| x.len() as u64).sum(),
            b_lines: self.b.iter().map(|x| x.len() as u64).sum(),
            c_lines: self.c.len() as u64,
            partition_ok: count.iter().all(|&c| c == 1),
            ..Default::default()
        };
        if s.num_points() <= PAIR_CHECK_LIMIT {
            let v = s.num_points() as usize;
            let mut hit = vec![0u8; v * v];
            let mut ok = true;
            for &l in self.a1.iter().flatten().chain(self.b.iter().flatten()).chain(&self.c) {
                let pts = s.line(l);
                for (i, &a) in pts.iter().enumerate() {
                    for &bp in &pts[i + 1..] {
                        let slot = &mut hit[a as usize * v + bp as usize];
                        ok &= *slot == 0;
                        *slot = 1;
                    }
                }
            }
            for a in 0..v {
                for bp in a + 1..v {
                    ok &= hit[a * v + bp] == 1;
                }
            }
            audit.pairs_ok = Some(ok);
        }
        let y_dim = s.flat_dimension(&self.y_points)?;
        let expect_g = (self.q as usize).pow(self.n - 3) * (self.q as usize + 1);
        audit.flats_ok = y_dim == self.n - 4 && self.g_prime.iter().all(|g| g.len() == expect_g);
        Ok(audit)
    }
}

/// A coloring of PG(m,q) together with a property-R coloring of IPG(m,q;m-2).
#[derive(Clone, Debug)]
pub struct Template {
    pub full_space: Arc<Space>,
    pub full: Coloring,
    pub ipg_space: Arc<Space>,
    pub ipg: PropertyRCertificate,
}

impl Template {
    pub fn m(&self) -> u32 {
        self.full_space.n()
    }

    /// Both colorings use c(m,q) colors and pass their verifiers.
    pub fn verify(&self) -> Result<()> {
        let (m, q) = (self.full_space.n(), self.full_space.q());
        if self.ipg_space.n() != m || self.ipg_space.q() != q {
            return Err(Error::DimensionMismatch("template spaces differ".into()));
        }
        let c = target_chromatic_index(m, q)?;
        if self.full.palette as u64 != c {
            return Err(Error::Verification(format!("template palette {} is not c({m},{q}) = {c}", self.full.palette)));
        }
        if let Some(clash) = verify_coloring(&self.full_space, &self.full)? {
            return Err(Error::Verification(format!("template coloring clash {clash:?}")));
        }
        let r = verify_property_r(&self.ipg_space, &self.ipg)?;
        if !r.valid {
            return Err(Error::Verification(format!("template property R fails: {r:?}")));
        }
        Ok(())
    }

    /// PG(3,q) from a parallelism, with line 0 as the distinguished line.
    pub fn from_parallelism(space: Arc<Space>, spreads: &[Vec<LineId>]) -> Result<Self> {
        if space.n() != 3 {
            return Err(Error::InvalidParameters("the odd base case is PG(3,q)".into()));
        }
        let ipg = color_ipg3(&space, spreads, 0)?;
        Ok(Template { full: Coloring::from_parallelism(&space, spreads), full_space: space.clone(), ipg_space: space, ipg })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct LevelAudit {
    pub n: u32,
    pub q: u32,
    pub palette: u32,
    pub budget_ok: bool,
    pub composite: CompositeAudit,
    /// Lines colored exactly once across the three steps.
    pub lines_once: bool,
    /// Each line of the ambient PG(3,q) outside P gets q^(n-3) colors,
    /// matching the number of parallel classes of TPG(n-2,q).
    pub capacity_ok: bool,
    /// Intersecting ambient lines get disjoint color pools.
    pub pools_disjoint: bool,
    pub proper: bool,
    /// For odd n: every color class is a spread.
    pub classes_are_spreads: Option<bool>,
    pub property_r_ok: bool,
}

impl LevelAudit {
    pub fn passed(&self) -> bool {
        self.budget_ok
            && self.composite.partition_ok
            && self.composite.pairs_ok != Some(false)
            && self.composite.flats_ok
            && self.lines_once
            && self.capacity_ok
            && self.pools_disjoint
            && self.proper
            && self.classes_are_spreads != Some(false)
            && self.property_r_ok
    }
}

#[derive(Clone, Debug)]
pub struct LevelResult {
    pub space: Arc<Space>,
    pub coloring: Coloring,
    pub property_r: PropertyRCertificate,
    pub budget: ColorBudget,
    pub audit: LevelAudit,
}

impl LevelResult {
    pub fn template(&self) -> Template {
        Template {
            full_space: self.space.clone(),
            full: self.coloring.clone(),
            ipg_space: self.space.clone(),
            ipg: self.property_r.clone(),
        }
    }
}

/// Property-E data moved into the product model of PG(3,q).
#[derive(Clone, Debug)]
pub struct ProductPropertyE {
    pub base: Arc<Space>,
    pub cert: PropertyECertificate,
}

impl ProductPropertyE {
    /// Transports a Singer-model certificate with `beta^i -> e_i`.
    pub fn transport(singer: &Space, cert: &PropertyECertificate) -> Result<Self> {
        let report = verify_property_e(singer, cert)?;
        if !report.valid {
            return Err(Error::Verification(format!("property E fails: {}", report.summary())));
        }
        let q = singer.q();
        let base = Arc::new(Space::new(3, q, Model::Product)?);
        let map = linear_isomorphism(singer, &base, &[1, q, q * q, q * q * q])?;
        let line = |l: LineId| map.map_line(singer, &base, l).ok_or(Error::Verification("map does not preserve lines".into()));
        let special = cert.special.iter().map(|&l| line(l)).collect::<Result<Vec<_>>>()?;
        let family = cert
            .family
            .iter()
            .map(|s| s.iter().map(|&l| line(l)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let cert = PropertyECertificate { q, special, family };
        if !verify_property_e(&base, &cert)?.valid {
            return Err(Error::Verification("property E lost in transport".into()));
        }
        Ok(ProductPropertyE { base, cert })
    }
}

/// Maps the template colors onto `C_i` (the listed colors, in order) and
/// `C*` (the rest, in order).
fn color_map(palette: u32, to_group: &[u32], group: &Range<u32>, shared: &Range<u32>) -> Result<Vec<u32>> {
    let mut map = vec![UNCOLORED; palette as usize];
    let mut g = group.clone();
    for &c in to_group {
        map[c as usize] = g.next().ok_or(Error::Verification("group colors overflow".into()))?;
    }
    let mut s = shared.clone();
    for slot in map.iter_mut().filter(|m| **m == UNCOLORED) {
        *slot = s.next().ok_or(Error::Verification("shared colors overflow".into()))?;
    }
    Ok(map)
}

/// The point map of `template` onto `span(G_i, Y)` sending `flat_basis`
/// (m-1 vectors) to the basis of Y and two completing vectors to G_i.
fn place(template: &Space, big: &Space, flat_basis: &[u32], g_gens: [u32; 2]) -> Result<PointMap> {
    let vs = template.vector_space();
    let src = vs.extend_to_basis(flat_basis);
    if src.len() != template.n() as usize + 1 || vs.rank(flat_basis) as usize != flat_basis.len() {
        return Err(Error::DependentBasis);
    }
    // extend_to_basis keeps the flat basis first
    let q = big.q();
    let mut images: Vec<u32> = (4..=big.n()).map(|i| q.pow(i)).collect();
    images.extend(g_gens);
    linear_embedding(template, big, &src, &images)
}

/// One step of the recursion: a template for PG(n-2,q) gives PG(n,q).
pub fn color_step(template: &Template, pe: &ProductPropertyE) -> Result<LevelResult> {
    template.verify()?;
    let q = template.full_space.q();
    let n = template.m() + 2;
    let budget = ColorBudget::new(n, q)?;
    let budget_ok = budget.audit()?;
    let cert = &pe.cert;
    let comp = assemble_composite_space(n, q, pe.base.clone(), &cert.special)?;
    let composite = comp.audit()?;
    let space = comp.space.clone();
    let palette = budget.total();
    let mut coloring = Coloring::new(space.num_lines(), palette);
    let mut times = vec![0u32; space.num_lines() as usize];
    let mut assign = |l: LineId, c: u32, coloring: &mut Coloring| {
        times[l as usize] += 1;
        coloring.colors[l as usize] = c;
    };

    let g_gens = |i: usize| -> [u32; 2] {
        let pts = pe.base.line(comp.groups[i]);
        [embed_base(pe.base.rep(pts[0])), embed_base(pe.base.rep(pts[1]))]
    };

    // Step 1: the whole of span(G_1, Y) from the full template.
    let full_sub_basis = {
        let fs = &template.full_space;
        let flat: Vec<u32> = (0..template.m() - 1).map(|i| fs.vector_space().weight(i)).collect();
        flat
    };
    let map1 = place(&template.full_space, &space, &full_sub_basis, g_gens(0))?;
    let first: Vec<u32> = (0..budget.c1).collect();
    let cmap1 = color_map(template.full.palette, &first, &budget.groups[0], &budget.shared)?;
    for t in 0..template.full_space.num_lines() {
        let l = map1.map_line(&template.full_space, &space, t).ok_or(Error::Verification("template line lost".into()))?;
        let c = template.full.colors[t as usize];
        if c == UNCOLORED {
            return Err(Error::UncoloredLine(t));
        }
        assign(l, cmap1[c as usize], &mut coloring);
    }

    // Step 2: span(G_i, Y) for i >= 2 from the property-R template.
    let ipg = &template.ipg;
    let ipg_space = &template.ipg_space;
    let sub_basis = ipg_space.basis_of(&ipg.sub_points);
    let mut incident = ipg.incident_colors.clone();
    incident.sort_unstable();
    for i in 1..comp.groups.len() {
        let map = place(ipg_space, &space, &sub_basis, g_gens(i))?;
        let cmap = color_map(ipg.coloring.palette, &incident, &budget.groups[i], &budget.shared)?;
        for t in 0..ipg_space.num_lines() {
            let c = ipg.coloring.colors[t as usize];
            if c == UNCOLORED {
                continue;
            }
            let l = map.map_line(ipg_space, &space, t).ok_or(Error::Verification("template line lost".into()))?;
            assign(l, cmap[c as usize], &mut coloring);
        }
    }

    // Step 3: the TD over each line of PG(3,q) outside P.
    let mut p_index = vec![usize::MAX; pe.base.num_lines() as usize];
    for (i, &g) in comp.groups.iter().enumerate() {
        p_index[g as usize] = i;
    }
    let mut split_of = vec![(usize::MAX, usize::MAX); cert.family.len()];
    let mut seen_per_group = vec![0usize; comp.groups.len()];
    for (k, s) in cert.family.iter().enumerate() {
        let hits: Vec<usize> = s.iter().map(|&l| p_index[l as usize]).filter(|&i| i != usize::MAX).collect();
        if hits.len() != 1 {
            return Err(Error::Verification(format!("member {k} holds {} lines of P", hits.len())));
        }
        let i = hits[0];
        split_of[k] = (i, seen_per_group[i]);
        seen_per_group[i] += 1;
    }
    if seen_per_group.iter().any(|&c| c != q as usize + 1) {
        return Err(Error::Verification("a line of P is not in q+1 members".into()));
    }
    let m = q.pow(n - 3);
    let gamma = resolution_map(q, n - 3)?;
    let td_vs = crate::vector::VecSpace::new(space.vector_space().field().clone(), n - 3)?;
    let mut pools: Vec<Vec<u32>> = Vec::with_capacity(comp.a0.len());
    let mut capacity_ok = true;
    for (idx, &l) in comp.a0.iter().enumerate() {
        let mut pool = Vec::new();
        for k in cert.members_containing(l) {
            let (i, j) = split_of[k];
            pool.extend(budget.splits[i][j].clone());
        }
        capacity_ok &= pool.len() == m as usize;
        if pool.len() != m as usize {
            return Err(Error::Verification(format!("line {l} gets {} colors, needs {m}", pool.len())));
        }
        for (bi, &block) in comp.a1[idx].iter().enumerate() {
            let (u, w) = ((bi as u32) / m, (bi as u32) % m);
            let class = td_vs.add(u, gamma[w as usize]);
            assign(block, pool[class as usize], &mut coloring);
        }
        pools.push(pool);
    }

    let pools_disjoint = pools_disjoint(&pe.base, &comp.a0, &pools);
    let lines_once = times.iter().all(|&t| t == 1);
    let proper = lines_once && verify_coloring(&space, &coloring)?.is_none();
    let classes_are_spreads = if n % 2 == 1 && proper { Some(coloring_is_parallelism(&space, &coloring)?) } else { None };

    let mut sub_points: Vec<PointId> = comp.g_prime[0].iter().chain(&comp.y_points).copied().collect();
    sub_points.sort_unstable();
    let mut ipg_coloring = coloring.clone();
    for &l in comp.b[0].iter().chain(&comp.c) {
        ipg_coloring.colors[l as usize] = UNCOLORED;
    }
    let incident_colors: Vec<u32> = budget.groups[1..].iter().flat_map(|r| r.clone()).collect();
    let property_r = PropertyRCertificate { n, q, sub_points, coloring: ipg_coloring, incident_colors };
    let property_r_ok = proper && verify_property_r(&space, &property_r)?.valid;
    let audit = LevelAudit {
        n,
        q,
        palette,
        budget_ok,
        composite,
        lines_once,
        capacity_ok,
        pools_disjoint,
        proper,
        classes_are_spreads,
        property_r_ok,
    };
    if !audit.passed() {
        return Err(Error::Verification(format!("level {n} audit failed: {audit:?}")));
    }
    Ok(LevelResult { space, coloring, property_r, budget, audit })
}

fn pools_disjoint(base: &Space, a0: &[LineId], pools: &[Vec<u32>]) -> bool {
    for i in 0..a0.len() {
        for j in i + 1..a0.len() {
            if base.lines_meet(a0[i], a0[j]) && pools[i].iter().any(|c| pools[j].contains(c)) {
                return false;
            }
        }
    }
    true
}

/// Search settings known to find a parallelism of Singer PG(3,q) quickly.
pub fn base_parallelism_options(q: u32) -> Result<ParallelismOptions> {
    let (mode, budget, restarts) = match q {
        2 => (ParallelismMode::Plain, 1_000_000, 1),
        3 => (ParallelismMode::Plain, 1_000_000, 10),
        4 => (ParallelismMode::PrescribedCyclic(5), 2_000_000, 20),
        _ => return Err(Error::InvalidParameters(format!("no tuned base search for q = {q}"))),
    };
    Ok(ParallelismOptions { mode, budget, seed: Some(1), restarts })
}

/// A parallelism of Singer PG(3,q), found by search.
pub fn base_parallelism(q: u32) -> Result<(Arc<Space>, Vec<Vec<LineId>>)> {
    let space = Arc::new(Space::new(3, q, Model::Singer)?);
    match search_parallelism(&space, base_parallelism_options(q)?)? {
        SearchOutcome::Found(p) => Ok((space, p)),
        other => Err(Error::Verification(format!("base parallelism search failed: {other:?}"))),
    }
}

/// PG(4,q) and IPG(4,q;2) colorings found by tabu search, or `None` when
/// either search runs out of budget.
pub fn pg4_template_by_search(q: u32, budget: u64, seed: u64) -> Result<Option<Template>> {
    let palette = u32::try_from(target_chromatic_index(4, q)?).map_err(|_| Error::Overflow)?;
    let (space, full) = search_pg4_coloring(q, palette, budget, seed)?;
    if !full.complete {
        return Ok(None);
    }
    let space = Arc::new(space);
    let q2 = q * q;
    let plane = space.points_of_span(&[1, q, q2]);
    let Some(ipg) = search_property_r(&space, &plane, budget, seed)? else {
        return Ok(None);
    };
    let t = Template { full_space: space.clone(), full: full.best, ipg_space: space, ipg };
    t.verify()?;
    Ok(Some(t))
}

/// Inputs of the recursion.
pub struct RecursionInputs {
    /// Singer PG(3,q) and a property-E certificate on it.
    pub property_e: (Space, PropertyECertificate),
    /// PG(3,q) with its parallelism for odd n, PG(4,q) data for even n.
    pub base: BaseCase,
}

pub enum BaseCase {
    Parallelism { space: Arc<Space>, spreads: Vec<Vec<LineId>> },
    Pg4(Template),
}

/// Colors PG(n,q) with c(n,q) colors, n >= 5, returning every level.
pub fn recursive_color(n: u32, q: u32, inputs: &RecursionInputs) -> Result<Vec<LevelResult>> {
    if n < 5 {
        return Err(Error::InvalidParameters(format!("the recursion produces n >= 5, got {n}")));
    }
    let mut template = match &inputs.base {
        BaseCase::Parallelism { space, spreads } => {
            if n.is_multiple_of(2) {
                return Err(Error::MissingInput("even n needs PG(4,q) and IPG(4,q;2) certificates".into()));
            }
            if !verify_parallelism(space, spreads)?.valid {
                return Err(Error::Verification("base parallelism is invalid".into()));
            }
            Template::from_parallelism(space.clone(), spreads)?
        }
        BaseCase::Pg4(t) => {
            if n % 2 == 1 {
                return Err(Error::InvalidParameters("odd n needs a PG(3,q) parallelism".into()));
            }
            t.clone()
        }
    };
    if template.full_space.q() != q {
        return Err(Error::DimensionMismatch(format!("base data is over GF({})", template.full_space.q())));
    }
    let (singer, cert) = &inputs.property_e;
    if singer.q() != q {
        return Err(Error::DimensionMismatch(format!("property E is for q = {}", singer.q())));
    }
    let pe = ProductPropertyE::transport(singer, cert)?;
    let mut levels = Vec::new();
    while template.m() + 2 <= n {
        let level = color_step(&template, &pe)?;
        template = level.template();
        levels.push(level);
    }
    Ok(levels)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budget_layout() {
        let b = ColorBudget::new(5, 2).unwrap();
        assert_eq!((b.c1, b.c2, b.total()), (6, 1, 31));
        assert!(b.audit().unwrap());
        assert_eq!(b.splits[1][2], 10..12);
        let b = ColorBudget::new(6, 3).unwrap();
        assert_eq!((b.c1, b.c2), (36, 8));
        assert!(b.audit().unwrap());
        assert!(ColorBudget::new(4, 2).is_err());
    }

    #[test]
    fn color_map_fills_shared_in_order() {
        let m = color_map(5, &[1, 3], &(10..12), &(20..23)).unwrap();
        assert_eq!(m, vec![20, 10, 21, 11, 22]);
        assert!(color_map(5, &[1, 3, 4], &(10..12), &(20..23)).is_err());
    }
}
