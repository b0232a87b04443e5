//! Line orbits under the Singer cycle `i -> i + 1 (mod v)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::space::{LineId, PointId, Space};

/// Translates point labels by `t` modulo `v` and returns the sorted result.
pub fn translate_points(points: &[PointId], t: u32, v: u32) -> Vec<PointId> {
    let t = t % v;
    let mut out: Vec<PointId> = points.iter().map(|&p| ((p as u64 + t as u64) % v as u64) as u32).collect();
    out.sort_unstable();
    out
}

fn modulus(space: &Space) -> Result<u32> {
    space
        .singer_modulus()
        .ok_or_else(|| Error::UnsupportedModel("translations need the Singer model".into()))
}

/// `line + t` as a point set.
pub fn translate_line(space: &Space, line: &[PointId], t: u32) -> Result<Vec<PointId>> {
    let v = modulus(space)?;
    if line.len() != space.line_size() {
        return Err(Error::InvalidParameters(format!("a line has {} points", space.line_size())));
    }
    let out = translate_points(line, t, v);
    space.find_line(&out).ok_or(Error::Verification("translate is not a line".into()))?;
    Ok(out)
}

/// `line + t` as a LineId.
pub fn translate_line_id(space: &Space, l: LineId, t: u32) -> Result<LineId> {
    let v = modulus(space)?;
    space.check_line(l)?;
    let pts = space.line(l);
    let a = ((pts[0] as u64 + t as u64) % v as u64) as u32;
    let b = ((pts[1] as u64 + t as u64) % v as u64) as u32;
    space.line_through(a, b)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitPartition {
    /// Each orbit starts with its least line and continues `rep + 1, rep + 2, ...`.
    pub short: Vec<Vec<LineId>>,
    pub full: Vec<Vec<LineId>>,
    #[serde(skip)]
    orbit_of: Vec<u32>,
    #[serde(skip)]
    shift_of: Vec<u32>,
}

impl OrbitPartition {
    pub fn representatives(&self) -> Vec<LineId> {
        self.orbits().map(|o| o[0]).collect()
    }

    /// Short orbits first, then full orbits, both by representative.
    pub fn orbits(&self) -> impl Iterator<Item = &Vec<LineId>> {
        self.short.iter().chain(self.full.iter())
    }

    pub fn num_orbits(&self) -> usize {
        self.short.len() + self.full.len()
    }

    /// Index of the orbit containing `l`, in [`orbits`](Self::orbits) order.
    pub fn orbit_of(&self, l: LineId) -> usize {
        self.orbit_of[l as usize] as usize
    }

    /// `t` with `l = representative + t`.
    pub fn shift_of(&self, l: LineId) -> u32 {
        self.shift_of[l as usize]
    }

    pub fn is_short(&self, orbit: usize) -> bool {
        orbit < self.short.len()
    }
}

pub fn orbit_partition(space: &Space) -> Result<OrbitPartition> {
    let v = modulus(space)?;
    let lines = space.num_lines();
    let mut seen = fixedbitset::FixedBitSet::with_capacity(lines as usize);
    let mut orbits: Vec<Vec<LineId>> = Vec::new();
    // line ids are in lexicographic order, so the first unseen line is the least of its orbit
    for l in 0..lines {
        if seen.contains(l as usize) {
            continue;
        }
        let mut orbit = vec![l];
        seen.insert(l as usize);
        let mut cur = l;
        loop {
            cur = translate_line_id(space, cur, 1)?;
            if cur == l {
                break;
            }
            seen.insert(cur as usize);
            orbit.push(cur);
        }
        orbits.push(orbit);
    }
    let (short, full): (Vec<_>, Vec<_>) = orbits.into_iter().partition(|o| (o.len() as u32) < v);
    let mut orbit_of = vec![0; lines as usize];
    let mut shift_of = vec![0; lines as usize];
    for (i, o) in short.iter().chain(full.iter()).enumerate() {
        for (t, &l) in o.iter().enumerate() {
            orbit_of[l as usize] = i as u32;
            shift_of[l as usize] = t as u32;
        }
    }
    Ok(OrbitPartition { short, full, orbit_of, shift_of })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::Model;

    #[test]
    fn translations_compose() {
        let s = Space::new(3, 3, Model::Singer).unwrap();
        for l in (0..s.num_lines()).step_by(7) {
            for (a, b) in [(3, 5), (39, 1), (0, 17)] {
                let once = translate_line_id(&s, l, a + b).unwrap();
                let twice = translate_line_id(&s, translate_line_id(&s, l, a).unwrap(), b).unwrap();
                assert_eq!(once, twice);
            }
            assert_eq!(translate_line_id(&s, l, 0).unwrap(), l);
        }
    }

    #[test]
    fn product_model_has_no_translations() {
        let s = Space::new(3, 2, Model::Product).unwrap();
        assert!(orbit_partition(&s).is_err());
        assert!(translate_line(&s, &[0, 1, 2], 1).is_err());
    }
}
