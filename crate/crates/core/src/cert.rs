//! JSON certificate files.
//!
//! A file is an envelope `{format, schemaVersion, kind, space, payload,
//! toolVersion, contentHash}` where `contentHash` is the SHA-256 of the
//! payload serialized with sorted keys and no whitespace. Points are written
//! with [`Space::point_label`]; lines are sorted label tuples.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::coloring::{coloring_is_parallelism, verify_coloring, verify_property_r, Coloring, PropertyRCertificate, UNCOLORED};
use crate::construction::ColorBudget;
use crate::error::{Error, Result};
use crate::property_e::{verify_property_e, PropertyECertificate};
use crate::space::{LineId, PointId, PointLabel, Space, SpaceDescriptor};
use crate::spreads::{verify_parallelism, verify_spread, SpreadCheck};

pub const FORMAT: &str = "pgcolor-certificate";
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum CertificateKind {
    Spread,
    Parallelism,
    PropertyE,
    Coloring,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct CertificateEnvelope {
    pub format: String,
    pub schema_version: u32,
    pub kind: CertificateKind,
    pub space: SpaceDescriptor,
    pub payload: Value,
    pub tool_version: String,
    pub content_hash: String,
}

/// The flat and incident colors of a property-R coloring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidentData {
    pub sub_points: Vec<PointId>,
    pub incident_colors: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoringCertificate {
    pub coloring: Coloring,
    pub budget: Option<ColorBudget>,
    pub property_r: Option<IncidentData>,
}

impl ColoringCertificate {
    pub fn from_property_r(cert: &PropertyRCertificate, budget: Option<ColorBudget>) -> Self {
        ColoringCertificate {
            coloring: cert.coloring.clone(),
            budget,
            property_r: Some(IncidentData { sub_points: cert.sub_points.clone(), incident_colors: cert.incident_colors.clone() }),
        }
    }

    pub fn property_r_certificate(&self, space: &Space) -> Option<PropertyRCertificate> {
        self.property_r.as_ref().map(|r| PropertyRCertificate {
            n: space.n(),
            q: space.q(),
            sub_points: r.sub_points.clone(),
            coloring: self.coloring.clone(),
            incident_colors: r.incident_colors.clone(),
        })
    }
}

/// Spreads and parallelisms are kept sorted by LineId.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Spread(Vec<LineId>),
    Parallelism(Vec<Vec<LineId>>),
    PropertyE(PropertyECertificate),
    Coloring(ColoringCertificate),
}

impl Certificate {
    pub fn kind(&self) -> CertificateKind {
        match self {
            Certificate::Spread(_) => CertificateKind::Spread,
            Certificate::Parallelism(_) => CertificateKind::Parallelism,
            Certificate::PropertyE(_) => CertificateKind::PropertyE,
            Certificate::Coloring(_) => CertificateKind::Coloring,
        }
    }

    /// Sorts line sets into the stored order.
    pub fn canonical(mut self) -> Self {
        match &mut self {
            Certificate::Spread(s) => s.sort_unstable(),
            Certificate::Parallelism(p) => {
                for s in p.iter_mut() {
                    s.sort_unstable();
                }
                p.sort();
            }
            Certificate::Coloring(c) => {
                if let Some(r) = &mut c.property_r {
                    r.sub_points.sort_unstable();
                    r.incident_colors.sort_unstable();
                }
            }
            Certificate::PropertyE(_) => {}
        }
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub valid: bool,
    pub summary: String,
}

type LineLabels = Vec<PointLabel>;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpreadPayload {
    lines: Vec<LineLabels>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ParallelismPayload {
    spreads: Vec<Vec<LineLabels>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PropertyEPayload {
    q: u32,
    #[serde(rename = "P")]
    special: Vec<LineLabels>,
    #[serde(rename = "S")]
    family: Vec<Vec<LineLabels>>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct PropertyRPayload {
    subgeometry: Vec<PointLabel>,
    incident_colors: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
struct ColoringPayload {
    palette: u32,
    classes: Vec<Vec<LineLabels>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    budget: Option<ColorBudget>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    property_r: Option<PropertyRPayload>,
}

fn line_labels(space: &Space, l: LineId) -> LineLabels {
    let mut v: Vec<PointLabel> = space.line(l).iter().map(|&p| space.point_label(p)).collect();
    v.sort();
    v
}

fn sorted_lines(space: &Space, lines: &[LineId]) -> Vec<LineLabels> {
    let mut v: Vec<LineLabels> = lines.iter().map(|&l| line_labels(space, l)).collect();
    v.sort();
    v
}

fn decode_line(space: &Space, labels: &[PointLabel]) -> Result<LineId> {
    let pts = labels.iter().map(|x| space.point_from_label(x)).collect::<Result<Vec<_>>>()?;
    if pts.len() != space.line_size() {
        return Err(Error::Certificate(format!("line with {} points", pts.len())));
    }
    space.find_line(&pts).ok_or_else(|| Error::Certificate(format!("{labels:?} is not a line")))
}

fn decode_lines(space: &Space, lines: &[LineLabels]) -> Result<Vec<LineId>> {
    lines.iter().map(|l| decode_line(space, l)).collect()
}

/// SHA-256 (hex) of the compact serialization of `payload`.
pub fn content_hash(payload: &Value) -> String {
    let bytes = serde_json::to_vec(payload).expect("values serialize");
    hex::encode(Sha256::digest(&bytes))
}

fn payload_of(space: &Space, cert: &Certificate) -> Result<Value> {
    let v = match cert {
        Certificate::Spread(s) => serde_json::to_value(SpreadPayload { lines: sorted_lines(space, s) }),
        Certificate::Parallelism(p) => {
            let mut spreads: Vec<Vec<LineLabels>> = p.iter().map(|s| sorted_lines(space, s)).collect();
            spreads.sort();
            serde_json::to_value(ParallelismPayload { spreads })
        }
        Certificate::PropertyE(c) => serde_json::to_value(PropertyEPayload {
            q: c.q,
            special: c.special.iter().map(|&l| line_labels(space, l)).collect(),
            family: c.family.iter().map(|s| s.iter().map(|&l| line_labels(space, l)).collect()).collect(),
        }),
        Certificate::Coloring(c) => {
            let classes = c.coloring.classes().iter().map(|cl| sorted_lines(space, cl)).collect();
            let property_r = c.property_r.as_ref().map(|r| {
                let mut subgeometry: Vec<PointLabel> = r.sub_points.iter().map(|&p| space.point_label(p)).collect();
                subgeometry.sort();
                let mut incident_colors = r.incident_colors.clone();
                incident_colors.sort_unstable();
                PropertyRPayload { subgeometry, incident_colors }
            });
            serde_json::to_value(ColoringPayload { palette: c.coloring.palette, classes, budget: c.budget.clone(), property_r })
        }
    };
    v.map_err(|e| Error::Certificate(e.to_string()))
}

fn from_payload<T: DeserializeOwned>(payload: &Value) -> Result<T> {
    T::deserialize(payload).map_err(|e| Error::MalformedDataset(format!("payload: {e}")))
}

fn decode(space: &Space, kind: CertificateKind, payload: &Value) -> Result<Certificate> {
    let cert = match kind {
        CertificateKind::Spread => {
            let p: SpreadPayload = from_payload(payload)?;
            Certificate::Spread(decode_lines(space, &p.lines)?)
        }
        CertificateKind::Parallelism => {
            let p: ParallelismPayload = from_payload(payload)?;
            Certificate::Parallelism(p.spreads.iter().map(|s| decode_lines(space, s)).collect::<Result<_>>()?)
        }
        CertificateKind::PropertyE => {
            let p: PropertyEPayload = from_payload(payload)?;
            if p.q != space.q() {
                return Err(Error::Certificate(format!("payload q = {} in a space over GF({})", p.q, space.q())));
            }
            Certificate::PropertyE(PropertyECertificate {
                q: p.q,
                special: decode_lines(space, &p.special)?,
                family: p.family.iter().map(|s| decode_lines(space, s)).collect::<Result<_>>()?,
            })
        }
        CertificateKind::Coloring => {
            let p: ColoringPayload = from_payload(payload)?;
            if p.classes.len() != p.palette as usize {
                return Err(Error::Certificate(format!("{} classes for palette {}", p.classes.len(), p.palette)));
            }
            let mut coloring = Coloring::new(space.num_lines(), p.palette);
            for (c, class) in p.classes.iter().enumerate() {
                for l in decode_lines(space, class)? {
                    if coloring.colors[l as usize] != UNCOLORED {
                        return Err(Error::Certificate(format!("line {l} listed twice")));
                    }
                    coloring.colors[l as usize] = c as u32;
                }
            }
            let property_r = match p.property_r {
                None => None,
                Some(r) => {
                    let mut sub_points =
                        r.subgeometry.iter().map(|x| space.point_from_label(x)).collect::<Result<Vec<_>>>()?;
                    sub_points.sort_unstable();
                    Some(IncidentData { sub_points, incident_colors: r.incident_colors })
                }
            };
            Certificate::Coloring(ColoringCertificate { coloring, budget: p.budget, property_r })
        }
    };
    Ok(cert.canonical())
}

/// Runs the verifier matching the certificate kind.
pub fn verify_certificate(space: &Space, cert: &Certificate) -> Result<Verdict> {
    let verdict = match cert {
        Certificate::Spread(s) => match verify_spread(space, s)? {
            SpreadCheck::Valid => Verdict { valid: true, summary: format!("spread of {} lines", s.len()) },
            bad => Verdict { valid: false, summary: format!("not a spread: {bad:?}") },
        },
        Certificate::Parallelism(p) => {
            let r = verify_parallelism(space, p)?;
            let lines = p.first().map_or(0, |s| s.len());
            if r.valid {
                Verdict { valid: true, summary: format!("{} spreads × {lines} lines", p.len()) }
            } else {
                Verdict { valid: false, summary: format!("not a parallelism: {r:?}") }
            }
        }
        Certificate::PropertyE(c) => {
            let r = verify_property_e(space, c)?;
            Verdict { valid: r.valid, summary: format!("{} spreads, {}", c.family.len(), r.summary()) }
        }
        Certificate::Coloring(c) => verify_coloring_certificate(space, c)?,
    };
    Ok(verdict)
}

fn verify_coloring_certificate(space: &Space, c: &ColoringCertificate) -> Result<Verdict> {
    if c.coloring.colors.len() != space.num_lines() as usize {
        return Err(Error::Certificate("coloring length differs from the line count".into()));
    }
    if let Some(b) = &c.budget {
        if b.n != space.n() || b.q != space.q() || b.total() != c.coloring.palette || !b.audit()? {
            return Ok(Verdict { valid: false, summary: "color budget audit fails".into() });
        }
    }
    if let Some(r) = c.property_r_certificate(space) {
        let report = verify_property_r(space, &r)?;
        let summary = if report.valid {
            format!(
                "{} colors, property R with {} incident colors, {} lines uncolored",
                c.coloring.palette,
                report.incident_count,
                c.coloring.colors.len() - c.coloring.colored()
            )
        } else {
            format!("property R fails: {report:?}")
        };
        return Ok(Verdict { valid: report.valid, summary });
    }
    if let Some(l) = c.coloring.colors.iter().position(|&x| x == UNCOLORED) {
        return Ok(Verdict { valid: false, summary: format!("line {l} is uncolored") });
    }
    if let Some(clash) = verify_coloring(space, &c.coloring)? {
        return Ok(Verdict { valid: false, summary: format!("clash: {clash:?}") });
    }
    let classes = c.coloring.classes();
    if coloring_is_parallelism(space, &c.coloring)? {
        return Ok(Verdict { valid: true, summary: format!("{} spreads × {} lines", classes.len(), classes[0].len()) });
    }
    Ok(Verdict { valid: true, summary: format!("proper coloring with {} colors", c.coloring.palette) })
}

/// Verifies `cert` and wraps it in an envelope.
pub fn export_certificate(space: &Space, cert: &Certificate) -> Result<CertificateEnvelope> {
    let verdict = verify_certificate(space, cert)?;
    if !verdict.valid {
        return Err(Error::Verification(verdict.summary));
    }
    let payload = payload_of(space, cert)?;
    Ok(CertificateEnvelope {
        format: FORMAT.to_string(),
        schema_version: SCHEMA_VERSION,
        kind: cert.kind(),
        space: space.descriptor(),
        content_hash: content_hash(&payload),
        payload,
        tool_version: concat!("pgcolor ", env!("CARGO_PKG_VERSION")).to_string(),
    })
}

impl CertificateEnvelope {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("envelopes serialize");
        s.push('\n');
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let env: CertificateEnvelope =
            serde_json::from_str(text).map_err(|e| Error::MalformedDataset(format!("certificate: {e}")))?;
        if env.format != FORMAT {
            return Err(Error::Certificate(format!("unknown format {:?}", env.format)));
        }
        if env.schema_version != SCHEMA_VERSION {
            return Err(Error::Certificate(format!("schema version {} (expected {SCHEMA_VERSION})", env.schema_version)));
        }
        if content_hash(&env.payload) != env.content_hash {
            return Err(Error::Certificate("content hash mismatch".into()));
        }
        Ok(env)
    }

    /// Rebuilds the space and certificate without verifying the structure.
    pub fn decode(&self) -> Result<(Space, Certificate)> {
        let space = Space::from_descriptor(&self.space)?;
        let cert = decode(&space, self.kind, &self.payload)?;
        Ok((space, cert))
    }
}

#[derive(Debug)]
pub struct Imported {
    pub envelope: CertificateEnvelope,
    pub space: Space,
    pub certificate: Certificate,
    pub verdict: Verdict,
}

/// Parses, decodes and re-verifies; never returns an unverified object.
pub fn import_certificate(text: &str) -> Result<Imported> {
    let envelope = CertificateEnvelope::parse(text)?;
    let (space, certificate) = envelope.decode()?;
    let verdict = verify_certificate(&space, &certificate)?;
    if !verdict.valid {
        return Err(Error::Verification(verdict.summary));
    }
    Ok(Imported { envelope, space, certificate, verdict })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::property_e::load_paper_dataset;

    #[test]
    fn property_e_round_trip() {
        let (space, pe) = load_paper_dataset(2).unwrap();
        let cert = Certificate::PropertyE(pe);
        let env = export_certificate(&space, &cert).unwrap();
        let text = env.to_json();
        let back = import_certificate(&text).unwrap();
        assert_eq!(back.certificate, cert);
        assert_eq!(back.envelope.to_json(), text);
        assert!(back.verdict.summary.starts_with("15 spreads"));
    }

    #[test]
    fn tampering_is_detected() {
        let (space, pe) = load_paper_dataset(2).unwrap();
        let text = export_certificate(&space, &Certificate::PropertyE(pe)).unwrap().to_json();
        assert!(import_certificate(&text[..text.len() / 2]).is_err());
        let swapped = text.replacen("[\n          0,", "[\n          1,", 1);
        assert_ne!(swapped, text);
        assert!(matches!(import_certificate(&swapped), Err(Error::Certificate(_))));
        let unknown = text.replace("\"propertyE\"", "\"hyperoval\"");
        assert!(import_certificate(&unknown).is_err());
        let version = text.replace("\"schemaVersion\": 1", "\"schemaVersion\": 2");
        assert!(matches!(import_certificate(&version), Err(Error::Certificate(_))));
    }

    #[test]
    fn invalid_objects_are_not_exported() {
        let space = Space::new(3, 2, crate::space::Model::Singer).unwrap();
        assert!(matches!(export_certificate(&space, &Certificate::Spread(vec![0, 1])), Err(Error::Verification(_))));
    }
}
