//! Property-E families of PG(3,q): a special spread P and a multiset S of
//! (q^4-1)/(q-1) spreads covering lines of P q+1 times, other lines q times,
//! with no member holding two lines of P.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::orbits::{orbit_partition, translate_line_id, translate_points};
use crate::space::{gaussian, LineId, Model, PointId, Space};
use crate::spreads::{verify_spread, SpreadCheck};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyECertificate {
    pub q: u32,
    pub special: Vec<LineId>,
    /// Members in canonical order; repeats are allowed.
    pub family: Vec<Vec<LineId>>,
}

impl PropertyECertificate {
    /// Indices of the members containing `line`, in family order.
    pub fn members_containing(&self, line: LineId) -> Vec<usize> {
        self.family.iter().enumerate().filter(|(_, s)| s.contains(&line)).map(|(i, _)| i).collect()
    }

    pub fn expected_size(q: u32) -> usize {
        ((q as u64).pow(4) - 1) as usize / (q as usize - 1)
    }
}

/// Translates `base` by `j(q^2+1) + i` for `0 <= i <= q^2`, `0 <= j <= q`
/// (i outer, j inner). Line order inside each member follows `base`.
pub fn expand_base_spread(space: &Space, base: &[LineId]) -> Result<PropertyECertificate> {
    let q = space.q();
    if space.n() != 3 || space.model() != Model::Singer {
        return Err(Error::InvalidParameters("expansion needs Singer PG(3,q)".into()));
    }
    if !verify_spread(space, base)?.is_valid() {
        return Err(Error::Verification("base is not a spread".into()));
    }
    let orbits = orbit_partition(space)?;
    let l0 = orbits.short[0][0];
    if !base.contains(&l0) {
        return Err(Error::Verification("base does not contain the short-orbit line through 0".into()));
    }
    let mut per_orbit = vec![0u32; orbits.num_orbits()];
    for &l in base {
        per_orbit[orbits.orbit_of(l)] += 1;
    }
    for (o, &c) in per_orbit.iter().enumerate() {
        let want = if orbits.is_short(o) { 1 } else { q };
        if c != want {
            return Err(Error::Verification(format!("base has {c} lines from orbit {o}, expected {want}")));
        }
    }
    let step = q * q + 1;
    let mut family = Vec::with_capacity(PropertyECertificate::expected_size(q));
    for i in 0..step {
        for j in 0..=q {
            let t = j * step + i;
            family.push(base.iter().map(|&l| translate_line_id(space, l, t)).collect::<Result<Vec<_>>>()?);
        }
    }
    Ok(PropertyECertificate { q, special: orbits.short[0].clone(), family })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PropertyEReport {
    pub valid: bool,
    pub size_ok: bool,
    pub special_is_spread: bool,
    pub not_spreads: Vec<(usize, SpreadCheck)>,
    /// Lines of P with their multiplicity when it is not q+1.
    pub condition1: Vec<(LineId, u32)>,
    /// Other lines with their multiplicity when it is not q.
    pub condition2: Vec<(LineId, u32)>,
    /// Members holding two or more lines of P.
    pub condition3: Vec<usize>,
    pub double_count_ok: bool,
}

impl PropertyEReport {
    pub fn summary(&self) -> String {
        if self.valid {
            return "conditions (1)(2)(3) hold".into();
        }
        let mut parts = Vec::new();
        if !self.size_ok {
            parts.push("wrong family size".to_string());
        }
        if !self.special_is_spread {
            parts.push("P is not a spread".to_string());
        }
        if !self.not_spreads.is_empty() {
            parts.push(format!("{} members are not spreads", self.not_spreads.len()));
        }
        for (i, bad) in [(1, self.condition1.len()), (2, self.condition2.len()), (3, self.condition3.len())] {
            if bad > 0 {
                parts.push(format!("condition ({i}) fails {bad} times"));
            }
        }
        if !self.double_count_ok {
            parts.push("line count identity fails".to_string());
        }
        parts.join(", ")
    }
}

pub fn verify_property_e(space: &Space, cert: &PropertyECertificate) -> Result<PropertyEReport> {
    let q = cert.q;
    if space.n() != 3 || space.q() != q {
        return Err(Error::DimensionMismatch(format!("certificate for q = {q} on PG({},{})", space.n(), space.q())));
    }
    let mut r = PropertyEReport {
        size_ok: cert.family.len() == PropertyECertificate::expected_size(q),
        special_is_spread: verify_spread(space, &cert.special)?.is_valid(),
        ..Default::default()
    };
    let mut in_p = vec![false; space.num_lines() as usize];
    for &l in &cert.special {
        in_p[l as usize] = true;
    }
    let mut count = vec![0u32; space.num_lines() as usize];
    let mut total = 0u64;
    for (k, s) in cert.family.iter().enumerate() {
        let check = verify_spread(space, s)?;
        if !check.is_valid() {
            r.not_spreads.push((k, check));
        }
        for &l in s {
            count[l as usize] += 1;
        }
        total += s.len() as u64;
        if s.iter().filter(|&&l| in_p[l as usize]).count() > 1 {
            r.condition3.push(k);
        }
    }
    for (l, &c) in count.iter().enumerate() {
        if in_p[l] && c != q + 1 {
            r.condition1.push((l as LineId, c));
        } else if !in_p[l] && c != q {
            r.condition2.push((l as LineId, c));
        }
    }
    let q64 = q as u64;
    let spread_size = q64 * q64 + 1;
    let identity = spread_size * (q64 + 1) + (gaussian(4, 2, q) - spread_size) * q64;
    r.double_count_ok = total == identity && total == spread_size * PropertyECertificate::expected_size(q) as u64;
    r.valid = r.size_ok
        && r.special_is_spread
        && r.not_spreads.is_empty()
        && r.condition1.is_empty()
        && r.condition2.is_empty()
        && r.condition3.is_empty()
        && r.double_count_ok;
    Ok(r)
}

// ---------------------------------------------------------------------------
// Built-in datasets.

pub const DATASET_QS: [u32; 4] = [2, 3, 4, 8];

pub fn dataset_source(q: u32) -> Result<&'static str> {
    Ok(match q {
        2 => include_str!("../data/pe_q2.txt"),
        3 => include_str!("../data/pe_q3.txt"),
        4 => include_str!("../data/pe_q4.txt"),
        8 => include_str!("../data/pe_q8.txt"),
        _ => return Err(Error::UnsupportedDataset(q)),
    })
}

/// The fifteen printed members for q = 2, one per line.
pub fn q2_table_source() -> &'static str {
    include_str!("../data/pe_q2_table.txt")
}

/// `{{a,b,c},{d,e,f},...}` with points in line order.
pub fn format_spread(space: &Space, lines: &[LineId]) -> String {
    let parts: Vec<String> = lines
        .iter()
        .map(|&l| {
            let pts: Vec<String> = space.line(l).iter().map(|p| p.to_string()).collect();
            format!("{{{}}}", pts.join(","))
        })
        .collect();
    format!("{{{}}}", parts.join(","))
}

/// Renders an expanded q = 2 family in the layout of the printed table.
pub fn format_q2_table(space: &Space, cert: &PropertyECertificate) -> String {
    let mut out = String::new();
    for (k, s) in cert.family.iter().enumerate() {
        let (i, j) = (k / (cert.q as usize + 1), k % (cert.q as usize + 1));
        out.push_str(&format!("P_{i}^{j}={}\n", format_spread(space, s)));
    }
    out
}

fn numbers(words: &[&str]) -> Result<Vec<u32>> {
    words
        .iter()
        .map(|w| w.parse::<u32>().map_err(|_| Error::MalformedDataset(format!("not a number: {w}"))))
        .collect()
}

/// Parses a dataset and returns its Singer space and certificate.
pub fn parse_dataset(text: &str) -> Result<(Space, PropertyECertificate)> {
    let mut q = None;
    let mut poly = None;
    let mut short = None;
    let mut orbits: Vec<(Vec<u32>, Vec<u32>)> = Vec::new();
    let mut families: Vec<(u32, Vec<u32>, u32)> = Vec::new();
    let mut special = None;
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for raw in text.lines() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let words: Vec<&str> = line.split_whitespace().collect();
        match words[0] {
            "q" => q = Some(numbers(&words[1..])?.first().copied().ok_or(Error::MalformedDataset("empty q".into()))?),
            "poly" => poly = Some(numbers(&words[1..])?),
            "short" => short = Some(numbers(&words[1..])?),
            "orbit" => {
                let bar = words.iter().position(|&w| w == "|").ok_or(Error::MalformedDataset(line.into()))?;
                orbits.push((numbers(&words[1..bar])?, numbers(&words[bar + 1..])?));
            }
            "family" => {
                let nums = numbers(&words[1..])?;
                if nums.len() < 3 {
                    return Err(Error::MalformedDataset(line.into()));
                }
                families.push((nums[0], nums[1..nums.len() - 1].to_vec(), nums[nums.len() - 1]));
            }
            "special" => special = Some(numbers(&words[1..])?),
            "spread" => rows.push(numbers(&words[1..])?),
            other => return Err(Error::MalformedDataset(format!("unknown record {other}"))),
        }
    }
    let q = q.ok_or(Error::MalformedDataset("missing q".into()))?;
    let poly = poly.ok_or(Error::MalformedDataset("missing poly".into()))?;
    let space = Space::new(3, q, Model::Singer)?;
    let big = space.singer_field().expect("Singer model");
    if big.poly() != poly.as_slice() {
        return Err(Error::MalformedDataset(format!("polynomial {poly:?} differs from the field's {:?}", big.poly())));
    }
    let v = space.num_points();
    let line_of = |pts: &[PointId]| -> Result<LineId> {
        space.find_line(pts).ok_or_else(|| Error::MalformedDataset(format!("{pts:?} is not a line")))
    };
    if let Some(short) = short {
        // base spread: the short line, then the shifted orbit lines in printed order
        let mut base = vec![line_of(&short)?];
        for (pts, shifts) in &orbits {
            for &t in shifts {
                base.push(line_of(&translate_points(pts, t, v))?);
            }
        }
        let cert = expand_base_spread(&space, &base)?;
        return Ok((space, cert));
    }
    let mut named: Vec<Option<LineId>> = Vec::new();
    for (start, pts, count) in &families {
        for i in 0..*count {
            let idx = (*start + i) as usize;
            if named.len() <= idx {
                named.resize(idx + 1, None);
            }
            named[idx] = Some(line_of(&translate_points(pts, i, v))?);
        }
    }
    let resolve = |k: &u32| -> Result<LineId> {
        named
            .get(*k as usize)
            .copied()
            .flatten()
            .ok_or_else(|| Error::MalformedDataset(format!("unnamed line {k}")))
    };
    let special = special.ok_or(Error::MalformedDataset("missing special spread".into()))?;
    let special = special.iter().map(resolve).collect::<Result<Vec<_>>>()?;
    let family = rows.iter().map(|r| r.iter().map(resolve).collect::<Result<Vec<_>>>()).collect::<Result<Vec<_>>>()?;
    Ok((space, PropertyECertificate { q, special, family }))
}

pub fn load_paper_dataset(q: u32) -> Result<(Space, PropertyECertificate)> {
    parse_dataset(dataset_source(q)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unsupported_q() {
        assert_eq!(load_paper_dataset(5).unwrap_err(), Error::UnsupportedDataset(5));
    }

    #[test]
    fn malformed_records() {
        assert!(matches!(parse_dataset("q 2\nbogus 1"), Err(Error::MalformedDataset(_))));
        assert!(matches!(parse_dataset("q 2\npoly 1 1 0 0 1\nshort 0 5 11\n"), Err(Error::MalformedDataset(_))));
        assert!(matches!(parse_dataset("q 2\npoly 1 0 0 1 1\nshort 0 5 10\n"), Err(Error::MalformedDataset(_))));
    }

    #[test]
    fn base_profile_is_checked() {
        let (space, cert) = load_paper_dataset(2).unwrap();
        // a spread from the family that omits L_0 is rejected
        assert!(expand_base_spread(&space, &cert.family[3]).is_err());
        assert!(expand_base_spread(&space, &cert.family[0]).is_ok());
    }
}
