//! Spreads, partial spreads and parallelisms: verifiers and searches.

use std::cell::Cell;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_cover::{ExactCover, Flow};
use crate::orbits::{orbit_partition, translate_line_id};
use crate::space::{gaussian, LineId, PointId, Space};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conflict {
    pub lines: (LineId, LineId),
    pub point: PointId,
}

/// Checks pairwise disjointness; returns the first intersecting pair.
pub fn verify_partial_spread(space: &Space, lines: &[LineId]) -> Result<Option<Conflict>> {
    let mut owner = vec![u32::MAX; space.num_points() as usize];
    for &l in lines {
        space.check_line(l)?;
        for &p in space.line(l) {
            let o = owner[p as usize];
            if o != u32::MAX {
                return Ok(Some(Conflict { lines: (o, l), point: p }));
            }
            owner[p as usize] = l;
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SpreadCheck {
    Valid,
    Conflict(Conflict),
    Uncovered(PointId),
}

impl SpreadCheck {
    pub fn is_valid(&self) -> bool {
        matches!(self, SpreadCheck::Valid)
    }
}

pub fn verify_spread(space: &Space, lines: &[LineId]) -> Result<SpreadCheck> {
    if let Some(c) = verify_partial_spread(space, lines)? {
        return Ok(SpreadCheck::Conflict(c));
    }
    let mut covered = vec![false; space.num_points() as usize];
    for &l in lines {
        for &p in space.line(l) {
            covered[p as usize] = true;
        }
    }
    Ok(match covered.iter().position(|&c| !c) {
        Some(p) => SpreadCheck::Uncovered(p as PointId),
        None => SpreadCheck::Valid,
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParallelismReport {
    pub valid: bool,
    /// (index of the member, its defect)
    pub bad_spreads: Vec<(usize, SpreadCheck)>,
    pub missing: Vec<LineId>,
    pub duplicated: Vec<LineId>,
}

pub fn verify_parallelism(space: &Space, spreads: &[Vec<LineId>]) -> Result<ParallelismReport> {
    let mut report = ParallelismReport::default();
    let mut count = vec![0u32; space.num_lines() as usize];
    for (i, s) in spreads.iter().enumerate() {
        let check = verify_spread(space, s)?;
        if !check.is_valid() {
            report.bad_spreads.push((i, check));
        }
        for &l in s {
            count[l as usize] += 1;
        }
    }
    for (l, &c) in count.iter().enumerate() {
        match c {
            0 => report.missing.push(l as LineId),
            1 => {}
            _ => report.duplicated.push(l as LineId),
        }
    }
    report.valid = report.bad_spreads.is_empty() && report.missing.is_empty() && report.duplicated.is_empty();
    Ok(report)
}

/// Maximum size of a partial spread of PG(n,q), n >= 2.
pub fn max_partial_spread_size(n: u32, q: u32) -> Result<u64> {
    if n < 2 {
        return Err(Error::InvalidParameters(format!("n = {n} must be at least 2")));
    }
    let q64 = q as u64;
    let v = gaussian(n + 1, 1, q);
    if n % 2 == 1 {
        Ok(v / (q64 + 1))
    } else {
        let num = q64
            .checked_pow(n + 1)
            .ok_or(Error::Overflow)?
            .checked_sub(q64.pow(3))
            .and_then(|x| x.checked_add(q64 * q64 - 1))
            .ok_or(Error::Overflow)?;
        Ok(num / (q64 * q64 - 1))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SearchOutcome<T> {
    Found(T),
    /// The whole search tree was explored without a solution.
    Exhausted { nodes: u64 },
    BudgetExceeded { nodes: u64 },
}

impl<T> SearchOutcome<T> {
    pub fn found(self) -> Option<T> {
        match self {
            SearchOutcome::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }
}

// ---------------------------------------------------------------------------
// Block-cover engine shared by all spread searches.

#[derive(Clone, Debug)]
struct Block {
    lines: Vec<LineId>,
    mask: Vec<u64>,
    group: Option<usize>,
}

/// Exact point cover by blocks (unions of disjoint lines), with at most
/// `quota[g]` blocks from group `g` and up to `holes` uncovered points.
struct Cover {
    words: usize,
    points: usize,
    blocks: Vec<Block>,
    through: Vec<Vec<usize>>,
    quota: Vec<u32>,
    holes: u32,
}

struct CoverState {
    covered: Vec<u64>,
    used: Vec<u32>,
    chosen: Vec<usize>,
    holes_left: u32,
}

#[inline]
fn bit(words: &[u64], i: usize) -> bool {
    words[i / 64] >> (i % 64) & 1 == 1
}

impl Cover {
    fn new(space: &Space, blocks: Vec<(Vec<LineId>, Option<usize>)>, quota: Vec<u32>, holes: u32, rng: Option<&mut ChaCha8Rng>) -> Self {
        let points = space.num_points() as usize;
        let words = points.div_ceil(64);
        let mut out = Vec::with_capacity(blocks.len());
        let mut through = vec![Vec::new(); points];
        for (lines, group) in blocks {
            let mut mask = vec![0u64; words];
            for &l in &lines {
                for &p in space.line(l) {
                    mask[p as usize / 64] |= 1 << (p % 64);
                }
            }
            for (p, t) in through.iter_mut().enumerate().take(points) {
                if bit(&mask, p) {
                    t.push(out.len());
                }
            }
            out.push(Block { lines, mask, group });
        }
        if let Some(rng) = rng {
            for t in &mut through {
                t.shuffle(rng);
            }
        }
        Cover { words, points, blocks: out, through, quota, holes }
    }

    fn state(&self) -> CoverState {
        CoverState {
            covered: vec![0; self.words],
            used: vec![0; self.quota.len()],
            chosen: Vec::new(),
            holes_left: self.holes,
        }
    }

    fn fits(&self, st: &CoverState, b: usize) -> bool {
        let blk = &self.blocks[b];
        if let Some(g) = blk.group {
            if st.used[g] >= self.quota[g] {
                return false;
            }
        }
        blk.mask.iter().zip(&st.covered).all(|(m, c)| m & c == 0)
    }

    fn apply(&self, st: &mut CoverState, b: usize) {
        let blk = &self.blocks[b];
        for (c, m) in st.covered.iter_mut().zip(&blk.mask) {
            *c |= m;
        }
        if let Some(g) = blk.group {
            st.used[g] += 1;
        }
        st.chosen.push(b);
    }

    fn undo(&self, st: &mut CoverState, b: usize) {
        let blk = &self.blocks[b];
        for (c, m) in st.covered.iter_mut().zip(&blk.mask) {
            *c &= !m;
        }
        if let Some(g) = blk.group {
            st.used[g] -= 1;
        }
        st.chosen.pop();
    }

    /// Uncovered point with the fewest fitting blocks, or `None` when all
    /// points are covered.
    fn pick(&self, st: &CoverState) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for p in 0..self.points {
            if bit(&st.covered, p) {
                continue;
            }
            let count = self.through[p].iter().filter(|&&b| self.fits(st, b)).count();
            if best.is_none_or(|(_, c)| count < c) {
                best = Some((p, count));
                if count == 0 {
                    break;
                }
            }
        }
        best
    }

    /// Depth-first enumeration. `visit` gets the chosen block indices.
    fn run(&self, st: &mut CoverState, nodes: &Cell<u64>, budget: u64, visit: &mut dyn FnMut(&CoverState) -> Flow) -> Step {
        let Some((p, count)) = self.pick(st) else {
            return match visit(st) {
                Flow::Continue => Step::Continue,
                Flow::Stop => Step::Stop,
            };
        };
        if nodes.get() >= budget {
            return Step::Budget;
        }
        nodes.set(nodes.get() + 1);
        if count > 0 {
            for &b in &self.through[p] {
                if !self.fits(st, b) {
                    continue;
                }
                self.apply(st, b);
                let step = self.run(st, nodes, budget, visit);
                self.undo(st, b);
                if step != Step::Continue {
                    return step;
                }
            }
        }
        if st.holes_left > 0 {
            st.holes_left -= 1;
            st.covered[p / 64] |= 1 << (p % 64);
            let step = self.run(st, nodes, budget, visit);
            st.covered[p / 64] &= !(1 << (p % 64));
            st.holes_left += 1;
            return step;
        }
        Step::Continue
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Step {
    Continue,
    Stop,
    Budget,
}

fn rng_for(seed: Option<u64>) -> Option<ChaCha8Rng> {
    seed.map(ChaCha8Rng::seed_from_u64)
}

// ---------------------------------------------------------------------------

/// Orbit profile for spreads of Singer PG(3,q): the short-orbit line `L_0`
/// and exactly `q` lines from every full orbit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum OrbitProfile {
    WithE,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SpreadConstraints {
    pub contains: Vec<LineId>,
    /// Lines that may not be used.
    pub excluded: Vec<LineId>,
    pub profile: Option<OrbitProfile>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    /// Maximum number of search nodes.
    pub budget: u64,
    /// `None` keeps the canonical candidate order.
    pub seed: Option<u64>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { budget: 10_000_000, seed: None }
    }
}

pub fn search_spread(space: &Space, constraints: &SpreadConstraints, opts: SearchOptions) -> Result<SearchOutcome<Vec<LineId>>> {
    let mut found = None;
    let (nodes, step) = enumerate_spreads(space, constraints, opts, |s| {
        found = Some(s.to_vec());
        Flow::Stop
    })?;
    Ok(match (found, step) {
        (Some(s), _) => SearchOutcome::Found(s),
        (None, Step::Budget) => SearchOutcome::BudgetExceeded { nodes },
        (None, _) => SearchOutcome::Exhausted { nodes },
    })
}

/// Counts spreads satisfying `constraints`; `None` if the budget ran out.
pub fn count_spreads(space: &Space, constraints: &SpreadConstraints, budget: u64) -> Result<Option<u64>> {
    let mut count = 0;
    let (_, step) = enumerate_spreads(space, constraints, SearchOptions { budget, seed: None }, |_| {
        count += 1;
        Flow::Continue
    })?;
    Ok((step != Step::Budget).then_some(count))
}

fn enumerate_spreads(
    space: &Space,
    constraints: &SpreadConstraints,
    opts: SearchOptions,
    mut visit: impl FnMut(&[LineId]) -> Flow,
) -> Result<(u64, Step)> {
    let q = space.q();
    if !space.num_points().is_multiple_of(q + 1) {
        return Err(Error::InvalidParameters(format!("PG({},{q}) has no spreads", space.n())));
    }
    let mut forced = constraints.contains.clone();
    let mut excluded = vec![false; space.num_lines() as usize];
    for &l in constraints.contains.iter().chain(&constraints.excluded) {
        space.check_line(l)?;
    }
    for &l in &constraints.excluded {
        excluded[l as usize] = true;
    }
    let (groups, quota) = match constraints.profile {
        None => (None, Vec::new()),
        Some(OrbitProfile::WithE) => {
            if space.n() != 3 {
                return Err(Error::InvalidParameters("the withE profile is defined for PG(3,q)".into()));
            }
            let orbits = orbit_partition(space)?;
            forced.push(orbits.short[0][0]);
            let quota = (0..orbits.num_orbits()).map(|o| if orbits.is_short(o) { 1 } else { q }).collect();
            let groups: Vec<usize> = (0..space.num_lines()).map(|l| orbits.orbit_of(l)).collect();
            (Some(groups), quota)
        }
    };
    forced.sort_unstable();
    forced.dedup();
    if forced.iter().any(|&l| excluded[l as usize]) {
        return Ok((0, Step::Continue));
    }
    let blocks = (0..space.num_lines())
        .filter(|&l| !excluded[l as usize])
        .map(|l| (vec![l], groups.as_ref().map(|g| g[l as usize])))
        .collect();
    let mut rng = rng_for(opts.seed);
    let cover = Cover::new(space, blocks, quota, 0, rng.as_mut());
    let mut st = cover.state();
    // forced lines are blocks indexed by position among non-excluded lines
    let index: Vec<usize> = {
        let mut idx = vec![usize::MAX; space.num_lines() as usize];
        for (i, b) in cover.blocks.iter().enumerate() {
            idx[b.lines[0] as usize] = i;
        }
        idx
    };
    for &l in &forced {
        let b = index[l as usize];
        if !cover.fits(&st, b) {
            return Ok((0, Step::Continue));
        }
        cover.apply(&mut st, b);
    }
    let nodes = Cell::new(0);
    let step = cover.run(&mut st, &nodes, opts.budget, &mut |st| {
        let mut lines: Vec<LineId> = st.chosen.iter().map(|&b| cover.blocks[b].lines[0]).collect();
        lines.sort_unstable();
        visit(&lines)
    });
    Ok((nodes.get(), step))
}

/// Spreads through `line` counted with the dancing-links formulation.
pub fn count_spreads_exact_cover(space: &Space, line: LineId) -> Result<u64> {
    space.check_line(line)?;
    let rows: Vec<Vec<usize>> = (0..space.num_lines())
        .filter(|&l| l == line || !space.lines_meet(l, line))
        .map(|l| space.line(l).iter().map(|&p| p as usize).collect())
        .collect();
    let mut x = ExactCover::new(space.num_points() as usize, 0, &rows);
    let stats = x.solve(u64::MAX, |_| Flow::Continue);
    Ok(stats.solutions)
}

/// Largest partial spread found by exhaustive search, trying sizes from
/// `floor(v/(q+1))` downwards. Each smaller size is only tried after the
/// larger one is proven impossible.
pub fn max_partial_spread_search(space: &Space, budget: u64) -> Result<SearchOutcome<Vec<LineId>>> {
    let v = space.num_points();
    let k = space.line_size() as u32;
    let nodes = Cell::new(0);
    let blocks: Vec<(Vec<LineId>, Option<usize>)> = (0..space.num_lines()).map(|l| (vec![l], None)).collect();
    for size in (1..=v / k).rev() {
        let cover = Cover::new(space, blocks.clone(), Vec::new(), v - size * k, None);
        let mut st = cover.state();
        let mut found = None;
        let step = cover.run(&mut st, &nodes, budget, &mut |st| {
            found = Some(st.chosen.iter().map(|&b| cover.blocks[b].lines[0]).collect::<Vec<_>>());
            Flow::Stop
        });
        if let Some(mut lines) = found {
            lines.sort_unstable();
            return Ok(SearchOutcome::Found(lines));
        }
        if step == Step::Budget {
            return Ok(SearchOutcome::BudgetExceeded { nodes: nodes.get() });
        }
    }
    Ok(SearchOutcome::Exhausted { nodes: nodes.get() })
}

// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum ParallelismMode {
    Plain,
    /// Invariance under the translations `{0, v/h, 2v/h, ...}` of order `h`.
    PrescribedCyclic(u32),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParallelismOptions {
    pub mode: ParallelismMode,
    pub budget: u64,
    pub seed: Option<u64>,
    /// The budget is split evenly over this many restarts with derived seeds.
    pub restarts: u32,
}

impl Default for ParallelismOptions {
    fn default() -> Self {
        ParallelismOptions { mode: ParallelismMode::Plain, budget: 10_000_000, seed: None, restarts: 1 }
    }
}

pub fn search_parallelism(space: &Space, opts: ParallelismOptions) -> Result<SearchOutcome<Vec<Vec<LineId>>>> {
    if space.n().is_multiple_of(2) {
        return Err(Error::InvalidParameters(format!("PG({},{}) has no spreads for even n", space.n(), space.q())));
    }
    let translations: Vec<u32> = match opts.mode {
        ParallelismMode::Plain => vec![0],
        ParallelismMode::PrescribedCyclic(h) => {
            let v = space
                .singer_modulus()
                .ok_or_else(|| Error::UnsupportedModel("prescribed translations need the Singer model".into()))?;
            if h == 0 || v % h != 0 {
                return Err(Error::NotADivisor(h, v));
            }
            (0..h).map(|i| i * (v / h)).collect()
        }
    };
    let ctx = ParallelismSearch::new(space, &translations)?;
    let restarts = opts.restarts.max(1);
    let per = (opts.budget / restarts as u64).max(1);
    let mut total = 0;
    let mut exhausted = false;
    for r in 0..restarts {
        let seed = match (opts.seed, r) {
            (s, 0) => s,
            (s, r) => Some(s.unwrap_or(0).wrapping_add(0x9e37_79b9_7f4a_7c15u64.wrapping_mul(r as u64))),
        };
        let nodes = Cell::new(0);
        let mut rng = rng_for(seed);
        let mut residual = vec![true; space.num_lines() as usize];
        let mut out = Vec::new();
        let step = ctx.dfs(&mut residual, &mut out, &nodes, per, rng.as_mut());
        total += nodes.get();
        match step {
            Step::Stop => {
                let mut spreads: Vec<Vec<LineId>> = out;
                for s in &mut spreads {
                    s.sort_unstable();
                }
                spreads.sort();
                return Ok(SearchOutcome::Found(spreads));
            }
            Step::Continue => {
                exhausted = true;
                break;
            }
            Step::Budget => {}
        }
    }
    Ok(if exhausted { SearchOutcome::Exhausted { nodes: total } } else { SearchOutcome::BudgetExceeded { nodes: total } })
}

struct ParallelismSearch<'a> {
    space: &'a Space,
    /// `translate[t][l]`: line `l` shifted by the `t`-th group element.
    translate: Vec<Vec<LineId>>,
    /// Subgroups of the translation group, as index lists, smallest first.
    subgroups: Vec<Vec<usize>>,
}

impl<'a> ParallelismSearch<'a> {
    fn new(space: &'a Space, translations: &[u32]) -> Result<Self> {
        let lines = space.num_lines();
        let mut translate = Vec::with_capacity(translations.len());
        for &t in translations {
            if t == 0 {
                translate.push((0..lines).collect());
            } else {
                translate.push((0..lines).map(|l| translate_line_id(space, l, t)).collect::<Result<Vec<_>>>()?);
            }
        }
        let h = translations.len();
        let subgroups = (1..=h)
            .filter(|d| h.is_multiple_of(*d))
            .map(|d| (0..d).map(|i| i * (h / d)).collect())
            .collect();
        Ok(ParallelismSearch { space, translate, subgroups })
    }

    fn dfs(&self, residual: &mut [bool], out: &mut Vec<Vec<LineId>>, nodes: &Cell<u64>, budget: u64, mut rng: Option<&mut ChaCha8Rng>) -> Step {
        let Some(first) = residual.iter().position(|&r| r) else {
            return Step::Stop;
        };
        let first = first as LineId;
        let h = self.translate.len();
        let mut subgroups = self.subgroups.clone();
        if let Some(r) = rng.as_deref_mut() {
            subgroups.shuffle(r);
        }
        for k in &subgroups {
            // blocks are K-orbits of residual lines with pairwise disjoint members;
            // groups are the orbits under the full translation group
            let mut block_of = vec![usize::MAX; residual.len()];
            let mut group_of = vec![usize::MAX; residual.len()];
            let mut blocks = Vec::new();
            let mut groups = 0;
            for l in 0..residual.len() {
                if !residual[l] || group_of[l] != usize::MAX {
                    continue;
                }
                for t in 0..h {
                    group_of[self.translate[t][l] as usize] = groups;
                }
                groups += 1;
            }
            for l in 0..residual.len() {
                if !residual[l] || block_of[l] != usize::MAX {
                    continue;
                }
                let mut orbit: Vec<LineId> = k.iter().map(|&t| self.translate[t][l]).collect();
                orbit.sort_unstable();
                orbit.dedup();
                for &m in &orbit {
                    block_of[m as usize] = blocks.len();
                }
                let disjoint = verify_partial_spread(self.space, &orbit).map(|c| c.is_none()).unwrap_or(false);
                blocks.push((orbit, disjoint));
            }
            let first_block = block_of[first as usize];
            if !blocks[first_block].1 {
                continue;
            }
            let mut index = vec![usize::MAX; blocks.len()];
            let mut usable = Vec::new();
            for (i, (lines, ok)) in blocks.iter().enumerate() {
                if *ok {
                    index[i] = usable.len();
                    usable.push((lines.clone(), Some(group_of[lines[0] as usize])));
                }
            }
            let cover = Cover::new(self.space, usable, vec![1; groups], 0, rng.as_deref_mut());
            let mut st = cover.state();
            cover.apply(&mut st, index[first_block]);
            let mut next_seed = rng.as_deref_mut().map(rand::Rng::gen::<u64>);
            let step = cover.run(&mut st, nodes, budget, &mut |st| {
                let spread: Vec<LineId> = st.chosen.iter().flat_map(|&b| cover.blocks[b].lines.iter().copied()).collect();
                // the orbit of the spread under the group, one copy per coset of K
                let mut members: Vec<Vec<LineId>> = Vec::new();
                for t in 0..h {
                    let mut s: Vec<LineId> = spread.iter().map(|&l| self.translate[t][l as usize]).collect();
                    s.sort_unstable();
                    if !members.contains(&s) {
                        members.push(s);
                    }
                }
                for s in &members {
                    for &l in s {
                        residual[l as usize] = false;
                    }
                }
                let before = out.len();
                out.extend(members.iter().cloned());
                let mut child = next_seed.map(ChaCha8Rng::seed_from_u64);
                let step = self.dfs(residual, out, nodes, budget, child.as_mut());
                if let Some(r) = child.as_mut() {
                    next_seed = Some(rand::Rng::gen::<u64>(r));
                }
                if step == Step::Stop {
                    return Flow::Stop;
                }
                out.truncate(before);
                for s in &members {
                    for &l in s {
                        residual[l as usize] = true;
                    }
                }
                if step == Step::Budget {
                    return Flow::Stop;
                }
                Flow::Continue
            });
            match step {
                Step::Stop if residual.iter().all(|&r| !r) => return Step::Stop,
                Step::Stop | Step::Budget => return Step::Budget,
                Step::Continue => {}
            }
        }
        Step::Continue
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::Model;

    #[test]
    fn formula_values() {
        assert_eq!(max_partial_spread_size(3, 2).unwrap(), 5);
        assert_eq!(max_partial_spread_size(4, 2).unwrap(), 9);
        assert_eq!(max_partial_spread_size(2, 7).unwrap(), 1);
        assert!(max_partial_spread_size(1, 2).is_err());
    }

    #[test]
    fn intersecting_forced_lines_are_impossible() {
        let s = Space::new(3, 2, Model::Singer).unwrap();
        let a = s.line_through(0, 5).unwrap();
        let b = s.line_through(0, 11).unwrap();
        let c = SpreadConstraints { contains: vec![a, b], ..Default::default() };
        assert_eq!(search_spread(&s, &c, SearchOptions::default()).unwrap(), SearchOutcome::Exhausted { nodes: 0 });
    }

    #[test]
    fn spread_of_pg32() {
        let s = Space::new(3, 2, Model::Product).unwrap();
        let spread = search_spread(&s, &SpreadConstraints::default(), SearchOptions::default()).unwrap().found().unwrap();
        assert_eq!(spread.len(), 5);
        assert!(verify_spread(&s, &spread).unwrap().is_valid());
    }
}
