//! The five case constructions: dual-variety equations, bundle data, fiber
//! samplers, linear sections and the singular-locus probes.
//!
//! Coordinate orders are fixed per case:
//!
//! | case | coordinates |
//! |------|-------------|
//! | G4   | `p1..p3, q1..q3, d11, d12, ..., d33` (15) |
//! | G5   | `d11, d12, d13, ..., d43, p1..p4` (16) |
//! | G6C  | `p1..p3, r1..r5, q1..q5` (13) |

mod bundles;
mod fibers;
mod ideals;
mod sections;
mod singular;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

use crate::groebner::GbError;
use crate::lindual::LinError;
use crate::polycore::{PolyError, PolyRing, Polynomial};

pub use bundles::{bundle_chern_data, CaseBundles};
pub use fibers::{
    containment_check, fiber_dims, fiber_sample, g4_fiber, g5_fiber, jacobian_rank_samples, FiberPoint, RankSite,
};
pub use ideals::build_dual_ideal;
pub use sections::{
    cor46_random_input, cor46_section, cor63_probe, cor63_probe_with, dual_dim, lemma42_probe,
    linear_section_invariants, segre_point, segre_source_ring, segre_span_intersection, Cor46Section, Cor63,
    Lemma42Kind, SectionInvariants,
};
pub use singular::{
    cubic_identity_check, generic_gradient_nonzero, incidence_cubic, sing_gradient_check, twisted_cubic_cone_check,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseId {
    G4,
    G5,
    G6Q,
    G6C,
    G8,
}

impl CaseId {
    pub const ALL: [CaseId; 5] = [CaseId::G4, CaseId::G5, CaseId::G6Q, CaseId::G6C, CaseId::G8];

    pub fn as_str(self) -> &'static str {
        match self {
            CaseId::G4 => "G4",
            CaseId::G5 => "G5",
            CaseId::G6Q => "G6Q",
            CaseId::G6C => "G6C",
            CaseId::G8 => "G8",
        }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CaseId {
    type Err = VarError;
    fn from_str(s: &str) -> Result<Self, VarError> {
        CaseId::ALL.into_iter().find(|c| c.as_str() == s).ok_or_else(|| VarError::UnknownCase(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VarError {
    #[error("unknown case `{0}`")]
    UnknownCase(String),
    #[error("case {0} is not supported here: {1}")]
    Unsupported(CaseId, &'static str),
    #[error("unknown component `{0}`")]
    UnknownComponent(String),
    #[error("degenerate random draw after {0} attempts")]
    Degenerate(usize),
    #[error("section not a curve: projective dimension {0}")]
    NotACurve(i64),
    #[error("line inside Segre")]
    LineInsideSegre,
    #[error("plane meets Segre in a positive-dimensional set")]
    PlaneMeetsInCurve,
    #[error("singular scheme is not finite (dimension {0}); the section is special")]
    NonFiniteSingular(i64),
    #[error("invalid parameter: {0}")]
    Param(String),
    #[error(transparent)]
    Groebner(#[from] GbError),
    #[error(transparent)]
    Linear(#[from] LinError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Equations of a dual variety in a fixed coordinate ring.
#[derive(Clone, Debug)]
pub struct DualModel {
    pub case: CaseId,
    pub ring: Arc<PolyRing>,
    pub gens: Vec<Polynomial>,
    pub notes: String,
}
