//! Spreads, parallelisms and optimal line colorings of finite projective
//! spaces PG(n,q).
//!
//! [`space::Space`] holds the incidence structure; the other modules search
//! for and verify structures on it, and [`cert`] moves them through JSON.

pub mod cert;
pub mod coloring;
pub mod construction;
pub mod error;
pub mod exact_cover;
pub mod field;
pub mod orbits;
pub mod property_e;
pub mod space;
pub mod spreads;
pub mod tpg;
pub mod vector;

pub use cert::{Certificate, CertificateEnvelope, CertificateKind};
pub use coloring::{Coloring, PropertyRCertificate};
pub use construction::{recursive_color, ColorBudget, LevelResult, RecursionInputs};
pub use error::{Error, Result};
pub use field::{FieldElement, GaloisField};
pub use property_e::PropertyECertificate;
pub use space::{LineId, Model, PointId, PointLabel, Space, SpaceDescriptor};
pub use tpg::{Resolution, TransversalDesign};
