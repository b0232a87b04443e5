//! Line colorings, chromatic-index targets and property-R certificates.

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::space::{gaussian, gaussian_binomial, LineId, PointId, Space};
use crate::spreads::{max_partial_spread_size, verify_parallelism};

pub const UNCOLORED: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    pub palette: u32,
    /// Color per LineId, or [`UNCOLORED`].
    pub colors: Vec<u32>,
}

impl Coloring {
    pub fn new(num_lines: u32, palette: u32) -> Self {
        Coloring { palette, colors: vec![UNCOLORED; num_lines as usize] }
    }

    /// Spread `i` of a parallelism becomes color `i`.
    pub fn from_parallelism(space: &Space, spreads: &[Vec<LineId>]) -> Self {
        let mut c = Coloring::new(space.num_lines(), spreads.len() as u32);
        for (i, s) in spreads.iter().enumerate() {
            for &l in s {
                c.colors[l as usize] = i as u32;
            }
        }
        c
    }

    pub fn get(&self, l: LineId) -> Option<u32> {
        match self.colors[l as usize] {
            UNCOLORED => None,
            c => Some(c),
        }
    }

    /// Lines per color.
    pub fn classes(&self) -> Vec<Vec<LineId>> {
        let mut out = vec![Vec::new(); self.palette as usize];
        for (l, &c) in self.colors.iter().enumerate() {
            if c != UNCOLORED && (c as usize) < out.len() {
                out[c as usize].push(l as LineId);
            }
        }
        out
    }

    pub fn colored(&self) -> usize {
        self.colors.iter().filter(|&&c| c != UNCOLORED).count()
    }
}

/// c(n,q): `[n 1]_q` for odd n, `[n 1]_q + q + 1` for even n >= 4.
pub fn target_chromatic_index(n: u32, q: u32) -> Result<u64> {
    match n {
        0 => Err(Error::InvalidParameters("n must be positive".into())),
        1 => Ok(1),
        2 => Ok((q as u64).pow(2) + q as u64 + 1),
        _ if n % 2 == 1 => Ok(gaussian(n, 1, q)),
        _ => Ok(gaussian(n, 1, q) + q as u64 + 1),
    }
}

/// ceil(#lines / max partial spread size), for n >= 3.
pub fn lower_bound(n: u32, q: u32) -> Result<u64> {
    if n < 3 {
        return Err(Error::InvalidParameters(format!("n = {n} must be at least 3")));
    }
    let lines = gaussian_binomial(n + 1, 2, q)?;
    let mu = BigUint::from(max_partial_spread_size(n, q)?);
    let bound = (&lines + &mu - 1u32) / &mu;
    u64::try_from(bound).map_err(|_| Error::Overflow)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Clash {
    pub lines: (LineId, LineId),
    pub point: PointId,
    pub color: u32,
}

/// Properness on the colored lines; lines in `skip` may stay uncolored, any
/// other uncolored line is an error.
pub fn verify_coloring_except(space: &Space, coloring: &Coloring, skip: &[bool]) -> Result<Option<Clash>> {
    if coloring.colors.len() != space.num_lines() as usize {
        return Err(Error::DimensionMismatch(format!(
            "{} colors for {} lines",
            coloring.colors.len(),
            space.num_lines()
        )));
    }
    for (l, &c) in coloring.colors.iter().enumerate() {
        let skipped = skip.get(l).copied().unwrap_or(false);
        if c == UNCOLORED && !skipped {
            return Err(Error::UncoloredLine(l as LineId));
        }
        if c != UNCOLORED && c >= coloring.palette {
            return Err(Error::Verification(format!("line {l} has color {c} outside the palette {}", coloring.palette)));
        }
    }
    let mut seen: Vec<(u32, LineId)> = Vec::new();
    for p in 0..space.num_points() {
        seen.clear();
        for &l in space.lines_through(p) {
            let c = coloring.colors[l as usize];
            if c == UNCOLORED {
                continue;
            }
            if let Some(&(_, other)) = seen.iter().find(|(sc, _)| *sc == c) {
                return Ok(Some(Clash { lines: (other, l), point: p, color: c }));
            }
            seen.push((c, l));
        }
    }
    Ok(None)
}

/// `None` when the coloring is proper; every line must be colored.
pub fn verify_coloring(space: &Space, coloring: &Coloring) -> Result<Option<Clash>> {
    verify_coloring_except(space, coloring, &[])
}

/// Color classes that are spreads, as a parallelism check.
pub fn coloring_is_parallelism(space: &Space, coloring: &Coloring) -> Result<bool> {
    Ok(verify_coloring(space, coloring)?.is_none() && verify_parallelism(space, &coloring.classes())?.valid)
}

/// A coloring of PG(n,q) minus the lines of a distinguished (n-2)-flat in
/// which only `incident_colors` appear on lines meeting the flat.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PropertyRCertificate {
    pub n: u32,
    pub q: u32,
    pub sub_points: Vec<PointId>,
    pub coloring: Coloring,
    pub incident_colors: Vec<u32>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PropertyRReport {
    pub valid: bool,
    pub flat_ok: bool,
    pub palette_ok: bool,
    pub clash: Option<Clash>,
    /// Lines of the flat that carry a color.
    pub colored_sub_lines: Vec<LineId>,
    /// Lines meeting the flat whose color is not declared incident.
    pub stray_lines: Vec<LineId>,
    pub incident_count: usize,
    pub incident_count_ok: bool,
}

pub fn verify_property_r(space: &Space, cert: &PropertyRCertificate) -> Result<PropertyRReport> {
    let (n, q) = (space.n(), space.q());
    if cert.n != n || cert.q != q {
        return Err(Error::DimensionMismatch(format!("certificate for PG({},{})", cert.n, cert.q)));
    }
    let mut r = PropertyRReport {
        flat_ok: n >= 2 && space.flat_dimension(&cert.sub_points).ok() == Some(n - 2),
        palette_ok: cert.coloring.palette as u64 == target_chromatic_index(n, q)?,
        ..Default::default()
    };
    let mut inside = vec![false; space.num_points() as usize];
    for &p in &cert.sub_points {
        space.check_point(p)?;
        inside[p as usize] = true;
    }
    let sub_line: Vec<bool> = (0..space.num_lines()).map(|l| space.line(l).iter().all(|&p| inside[p as usize])).collect();
    for (l, &s) in sub_line.iter().enumerate() {
        if s && cert.coloring.colors[l] != UNCOLORED {
            r.colored_sub_lines.push(l as LineId);
        }
    }
    r.clash = verify_coloring_except(space, &cert.coloring, &sub_line)?;
    let mut declared = vec![false; cert.coloring.palette as usize];
    for &c in &cert.incident_colors {
        if c as usize >= declared.len() {
            return Err(Error::Verification(format!("incident color {c} outside the palette")));
        }
        declared[c as usize] = true;
    }
    for l in 0..space.num_lines() {
        if sub_line[l as usize] || !space.line(l).iter().any(|&p| inside[p as usize]) {
            continue;
        }
        let c = cert.coloring.colors[l as usize];
        if c == UNCOLORED || !declared[c as usize] {
            r.stray_lines.push(l);
        }
    }
    r.incident_count = declared.iter().filter(|&&d| d).count();
    let expected = (q as u64).pow(n - 2) * (q as u64 + 1);
    r.incident_count_ok = r.incident_count as u64 == expected && cert.incident_colors.len() == r.incident_count;
    r.valid = r.flat_ok
        && r.palette_ok
        && r.clash.is_none()
        && r.colored_sub_lines.is_empty()
        && r.stray_lines.is_empty()
        && r.incident_count_ok;
    Ok(r)
}

/// IPG(3,q;1) from a parallelism: the distinguished line is left uncolored
/// and the colors on lines meeting it are recorded.
pub fn color_ipg3(space: &Space, parallelism: &[Vec<LineId>], distinguished: LineId) -> Result<PropertyRCertificate> {
    if space.n() != 3 {
        return Err(Error::InvalidParameters("color_ipg3 works on PG(3,q)".into()));
    }
    space.check_line(distinguished)?;
    let report = verify_parallelism(space, parallelism)?;
    if !report.valid {
        return Err(Error::Verification("input is not a parallelism".into()));
    }
    let mut coloring = Coloring::from_parallelism(space, parallelism);
    coloring.colors[distinguished as usize] = UNCOLORED;
    let sub_points = space.line(distinguished).to_vec();
    let mut incident = Vec::new();
    for l in 0..space.num_lines() {
        if l != distinguished && space.lines_meet(l, distinguished) {
            incident.push(coloring.colors[l as usize]);
        }
    }
    incident.sort_unstable();
    incident.dedup();
    Ok(PropertyRCertificate { n: 3, q: space.q(), sub_points, coloring, incident_colors: incident })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Pg4SearchResult {
    /// Proper partial coloring with the most lines colored.
    pub best: Coloring,
    pub complete: bool,
    pub iterations: u64,
    /// Set when the palette is below the counting bound and no search ran.
    pub below_bound: bool,
}

/// Tabu search for a proper line coloring of PG(n,q) with `palette`
/// colors, keeping a proper partial coloring and pushing uncolored lines in.
pub fn search_coloring(space: &Space, palette: u32, budget: u64, seed: u64) -> Result<Pg4SearchResult> {
    let lines = space.num_lines();
    let mu = max_partial_spread_size(space.n(), space.q())?;
    if palette == 0 || (palette as u64) * mu < lines as u64 {
        return Ok(Pg4SearchResult { best: Coloring::new(lines, palette), complete: false, iterations: 0, below_bound: true });
    }
    let limits = vec![palette; lines as usize];
    Ok(tabu_coloring(space, palette, &limits, budget, seed))
}

/// Lines `l` may use colors `0..limit[l]`; a zero limit leaves `l` out.
fn tabu_coloring(space: &Space, palette: u32, limit: &[u32], budget: u64, seed: u64) -> Pg4SearchResult {
    let lines = space.num_lines();
    let mut best = Coloring::new(lines, palette);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = best.clone();
    let mut best_count = 0;
    // occupant[p * palette + c]: line of color c through point p
    let pal = palette as usize;
    let mut occupant = vec![UNCOLORED; space.num_points() as usize * pal];
    let mut tabu = vec![0u64; lines as usize * pal];
    let mut uncolored: Vec<LineId> = (0..lines).filter(|&l| limit[l as usize] > 0).collect();
    let target = uncolored.len();
    uncolored.shuffle(&mut rng);
    let mut conflicts: Vec<LineId> = Vec::new();
    let mut iterations = 0;
    while iterations < budget && !uncolored.is_empty() {
        iterations += 1;
        let pick = rng.gen_range(0..uncolored.len());
        let l = uncolored[pick];
        // color with the fewest displaced lines, ignoring tabu moves unless they free everything
        let mut best_c = None;
        let mut best_cost = usize::MAX;
        for c in 0..limit[l as usize] {
            conflicts.clear();
            for &p in space.line(l) {
                let o = occupant[p as usize * pal + c as usize];
                if o != UNCOLORED && !conflicts.contains(&o) {
                    conflicts.push(o);
                }
            }
            let cost = conflicts.len();
            if tabu[l as usize * pal + c as usize] > iterations && cost > 0 {
                continue;
            }
            let noisy = cost * 4 + rng.gen_range(0..4);
            if noisy < best_cost {
                best_cost = noisy;
                best_c = Some(c);
            }
        }
        let Some(c) = best_c else { continue };
        uncolored.swap_remove(pick);
        conflicts.clear();
        for &p in space.line(l) {
            let o = occupant[p as usize * pal + c as usize];
            if o != UNCOLORED && !conflicts.contains(&o) {
                conflicts.push(o);
            }
        }
        for &o in &conflicts {
            for &p in space.line(o) {
                occupant[p as usize * pal + c as usize] = UNCOLORED;
            }
            cur.colors[o as usize] = UNCOLORED;
            tabu[o as usize * pal + c as usize] = iterations + 10 + rng.gen_range(0..10);
            uncolored.push(o);
        }
        for &p in space.line(l) {
            occupant[p as usize * pal + c as usize] = l;
        }
        cur.colors[l as usize] = c;
        if target - uncolored.len() > best_count {
            best_count = target - uncolored.len();
            best = cur.clone();
        }
    }
    Pg4SearchResult { best, complete: best_count == target, iterations, below_bound: false }
}

/// Tabu search for a property-R coloring of PG(n,q) minus the (n-2)-flat
/// `sub`: lines meeting `sub` get the first `q^(n-2)(q+1)` colors.
pub fn search_property_r(space: &Space, sub: &[PointId], budget: u64, seed: u64) -> Result<Option<PropertyRCertificate>> {
    let (n, q) = (space.n(), space.q());
    if n < 3 || space.flat_dimension(sub)? != n - 2 {
        return Err(Error::NotAFlat);
    }
    let palette = u32::try_from(target_chromatic_index(n, q)?).map_err(|_| Error::Overflow)?;
    let incident = q.pow(n - 2) * (q + 1);
    let mut inside = vec![false; space.num_points() as usize];
    for &p in sub {
        inside[p as usize] = true;
    }
    let limits: Vec<u32> = space
        .lines()
        .map(|l| match l.iter().filter(|&&p| inside[p as usize]).count() {
            0 => palette,
            1 => incident,
            _ => 0,
        })
        .collect();
    let r = tabu_coloring(space, palette, &limits, budget, seed);
    if !r.complete {
        return Ok(None);
    }
    let mut sub_points = sub.to_vec();
    sub_points.sort_unstable();
    Ok(Some(PropertyRCertificate { n, q, sub_points, coloring: r.best, incident_colors: (0..incident).collect() }))
}

/// [`search_coloring`] on PG(4,q).
pub fn search_pg4_coloring(q: u32, palette: u32, budget: u64, seed: u64) -> Result<(Space, Pg4SearchResult)> {
    let space = Space::new(4, q, crate::space::Model::Singer)?;
    let r = search_coloring(&space, palette, budget, seed)?;
    Ok((space, r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::Model;

    #[test]
    fn targets() {
        assert_eq!(target_chromatic_index(4, 2).unwrap(), 18);
        assert_eq!(target_chromatic_index(4, 3).unwrap(), 44);
        assert_eq!(target_chromatic_index(5, 2).unwrap(), 31);
        assert_eq!(target_chromatic_index(1, 7).unwrap(), 1);
        assert_eq!(target_chromatic_index(2, 3).unwrap(), 13);
    }

    #[test]
    fn single_line_space() {
        let s = Space::new(1, 4, Model::Singer).unwrap();
        let mut c = Coloring::new(1, 1);
        c.colors[0] = 0;
        assert_eq!(verify_coloring(&s, &c).unwrap(), None);
    }

    #[test]
    fn uncolored_line_is_an_error() {
        let s = Space::new(2, 2, Model::Singer).unwrap();
        let c = Coloring::new(s.num_lines(), 7);
        assert_eq!(verify_coloring(&s, &c), Err(Error::UncoloredLine(0)));
    }

    #[test]
    fn plane_needs_all_colors() {
        let s = Space::new(2, 2, Model::Singer).unwrap();
        let r = search_coloring(&s, 7, 10_000, 1).unwrap();
        assert!(r.complete);
        assert_eq!(verify_coloring(&s, &r.best).unwrap(), None);
        assert!(search_coloring(&s, 6, 10_000, 1).unwrap().below_bound);
    }
}
