//! Intersection rings given by explicit multiplication tables, with Chern and
//! Segre calculus for the bundles whose projectivizations resolve the dual
//! varieties.
//!
//! | ring     | basis by codim                                      |
//! |----------|-----------------------------------------------------|
//! | `P^n`    | `h, h^2, ..., h^n`                                  |
//! | `B5`     | `H; l; pt`, `H^2 = 5l`, `Hl = pt`                   |
//! | `Q3`     | `h; l; pt`, `h^2 = 2l`, `hl = pt`                   |
//! | `B6`     | `h1, h2; h1h2, h1^2; pt`, `h1^2 + h2^2 = h1h2`      |
//! | `AC_hat` | `c_A, F_a; c_A^2, c_A*F_a, F_a^2; L, N; pt`         |
//!
//! On `AC_hat`, `L` is `c_A^3 / 5` and `N` is `c_A^2 F_a`; the degree-4
//! monomials are `c_A^4 = 5`, `c_A^3 F_a = 0`, `c_A^2 F_a^2 = -1`,
//! `c_A F_a^3 = 0`, `F_a^4 = 2`.

mod class;
mod ring;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

pub use class::{chern_dual, chern_twist, chern_whitney, segre_series, ChernPoly, ChowClass};
pub use ring::{ChowRing, RingBuilder};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChowError {
    #[error("invalid ring {0}: {1}")]
    InvalidRing(String, String),
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("expected a class of codimension {expected}, got {got}")]
    Codim { expected: usize, got: usize },
    #[error("codim {0} does not have {1} basis classes")]
    Shape(usize, usize),
    #[error("unknown basis label {0}")]
    UnknownLabel(String),
    #[error("total Chern class must start with 1")]
    NotUnipotent,
    #[error("class is not invertible")]
    NotInvertible,
    #[error("bundle rank must be at least 1, got {0}")]
    Rank(i64),
    #[error("unknown ring {0}")]
    UnknownRing(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RingKind {
    Pn(usize),
    B5,
    B6,
    Q3,
    AcHat,
}

impl fmt::Display for RingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingKind::Pn(n) => write!(f, "P{n}"),
            RingKind::B5 => write!(f, "B5"),
            RingKind::B6 => write!(f, "B6"),
            RingKind::Q3 => write!(f, "Q3"),
            RingKind::AcHat => write!(f, "AC_hat"),
        }
    }
}

impl FromStr for RingKind {
    type Err = ChowError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "B5" => Ok(RingKind::B5),
            "B6" => Ok(RingKind::B6),
            "Q3" => Ok(RingKind::Q3),
            "AC_hat" | "AcHat" => Ok(RingKind::AcHat),
            _ => s
                .strip_prefix('P')
                .and_then(|n| n.parse().ok())
                .map(RingKind::Pn)
                .ok_or_else(|| ChowError::UnknownRing(s.to_string())),
        }
    }
}

fn projective_space(n: usize) -> Arc<ChowRing> {
    let names: Vec<String> = (1..=n).map(|k| if k == 1 { "h".into() } else { format!("h^{k}") }).collect();
    let labels: Vec<Vec<&str>> = names.iter().map(|s| vec![s.as_str()]).collect();
    let refs: Vec<&[&str]> = labels.iter().map(|v| v.as_slice()).collect();
    let mut b = RingBuilder::new(&format!("P{n}"), &refs);
    for a in 1..=n {
        for c in a..=n - a {
            b = b.set(&names[a - 1], &names[c - 1], &[1]);
        }
    }
    b.integral(&[1]).build().expect("projective space table")
}

/// Builds one of the fixed intersection rings; tables are validated for
/// associativity on construction.
pub fn make_ring(which: RingKind) -> Arc<ChowRing> {
    let built = match which {
        RingKind::Pn(n) => return projective_space(n),
        RingKind::B5 => RingBuilder::new("B5", &[&["H"], &["l"], &["pt"]])
            .set("H", "H", &[5])
            .set("H", "l", &[1])
            .integral(&[1])
            .build(),
        RingKind::Q3 => RingBuilder::new("Q3", &[&["h"], &["l"], &["pt"]])
            .set("h", "h", &[2])
            .set("h", "l", &[1])
            .integral(&[1])
            .build(),
        RingKind::B6 => RingBuilder::new("B6", &[&["h1", "h2"], &["h1h2", "h1^2"], &["pt"]])
            .set("h1", "h1", &[0, 1])
            .set("h1", "h2", &[1, 0])
            .set("h2", "h2", &[1, -1])
            .set("h1", "h1h2", &[1])
            .set("h1", "h1^2", &[0])
            .set("h2", "h1h2", &[1])
            .set("h2", "h1^2", &[1])
            .integral(&[1])
            .build(),
        RingKind::AcHat => {
            RingBuilder::new("AC_hat", &[&["c_A", "F_a"], &["c_A^2", "c_A*F_a", "F_a^2"], &["L", "N"], &["pt"]])
                .set("c_A", "c_A", &[1, 0, 0])
                .set("c_A", "F_a", &[0, 1, 0])
                .set("F_a", "F_a", &[0, 0, 1])
                .set("c_A", "c_A^2", &[5, 0])
                .set("c_A", "c_A*F_a", &[0, 1])
                .set("c_A", "F_a^2", &[-1, 0])
                .set("F_a", "c_A^2", &[0, 1])
                .set("F_a", "c_A*F_a", &[-1, 0])
                .set("F_a", "F_a^2", &[0, -2])
                .set("c_A", "L", &[1])
                .set("c_A", "N", &[0])
                .set("F_a", "L", &[0])
                .set("F_a", "N", &[-1])
                .set("c_A^2", "c_A^2", &[5])
                .set("c_A^2", "c_A*F_a", &[0])
                .set("c_A^2", "F_a^2", &[-1])
                .set("c_A*F_a", "c_A*F_a", &[-1])
                .set("c_A*F_a", "F_a^2", &[0])
                .set("F_a^2", "F_a^2", &[2])
                .integral(&[1])
                .build()
        }
    };
    built.expect("built-in ring table")
}

/// Parses a linear combination of basis labels such as `2H + 13l` or `3c_A - F_a`.
pub fn parse_class(ring: &Arc<ChowRing>, src: &str) -> Result<ChowClass, ChowError> {
    let mut total = ChowClass::zero(ring);
    let s: String = src.split_whitespace().collect();
    if s == "0" {
        return Ok(total);
    }
    let mut chunks = Vec::new();
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        if (ch == '+' || ch == '-') && i > 0 && !s[..i].ends_with('^') {
            chunks.push(&s[start..i]);
            start = i;
        }
    }
    chunks.push(&s[start..]);
    for chunk in chunks {
        let (sign, body) = match chunk.as_bytes().first() {
            Some(b'-') => (-1, &chunk[1..]),
            Some(b'+') => (1, &chunk[1..]),
            _ => (1, chunk),
        };
        let split = body.find(|c: char| !c.is_ascii_digit()).unwrap_or(body.len());
        let coeff: i64 =
            if split == 0 { 1 } else { body[..split].parse().map_err(|_| ChowError::UnknownLabel(chunk.into()))? };
        let label = body[split..].trim_start_matches('*');
        let term = if label.is_empty() { ChowClass::one(ring) } else { ChowClass::basis(ring, label)? };
        total = &total + &term.scale(sign * coeff);
    }
    Ok(total)
}

/// A vector bundle over a base, recorded through the Chern class of its dual.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundleSpec {
    pub label: String,
    pub rank: i64,
    pub dual_chern: ChernPoly,
    /// Dimension of the space of global sections `V_E`.
    pub sections: usize,
}

impl BundleSpec {
    pub fn new(label: &str, dual_chern: ChernPoly, sections: usize) -> Result<Self, ChowError> {
        if dual_chern.rank < 1 {
            return Err(ChowError::Rank(dual_chern.rank));
        }
        Ok(BundleSpec { label: label.to_string(), rank: dual_chern.rank, dual_chern, sections })
    }

    pub fn base(&self) -> &Arc<ChowRing> {
        self.dual_chern.ring()
    }

    pub fn projective_dim(&self) -> i64 {
        self.base().dim() as i64 + self.rank - 1
    }
}

/// Degree of the tautological image: the top Segre class of the bundle.
pub fn pushforward_degree(b: &BundleSpec) -> i64 {
    let s = segre_series(&chern_dual(&b.dual_chern));
    s.part(b.base().dim()).integrate()
}

/// `-K` of the projectivization as `rank * H + pi^*(c1(E) - K_S)`.
pub fn canonical_class(b: &BundleSpec, minus_ks: &ChowClass) -> Result<(i64, ChowClass), ChowError> {
    if let Some(k) = minus_ks.codim().filter(|&k| k != 1) {
        return Err(ChowError::Codim { expected: 1, got: k });
    }
    let c1 = b.dual_chern.c1().scale(-1);
    Ok((b.rank, c1.try_add(minus_ks)?))
}

/// Intersection numbers on `AC_hat` in terms of `c_B = c_A - F_a` and
/// `F_b = c_A - 2F_a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AcHatNumbers {
    pub ca3_cb: i64,
    pub ca_cb3: i64,
    pub cb4: i64,
    pub cb3_fb: i64,
    pub cb2_fb2: i64,
    pub fb3_cb: i64,
}

pub fn ac_hat_numbers() -> AcHatNumbers {
    let r = make_ring(RingKind::AcHat);
    let ca = ChowClass::basis(&r, "c_A").unwrap();
    let fa = ChowClass::basis(&r, "F_a").unwrap();
    let cb = &ca - &fa;
    let fb = &ca - &fa.scale(2);
    let int = |a: &ChowClass, b: &ChowClass| (a * b).integrate();
    AcHatNumbers {
        ca3_cb: int(&ca.pow(3), &cb),
        ca_cb3: int(&ca, &cb.pow(3)),
        cb4: cb.pow(4).integrate(),
        cb3_fb: int(&cb.pow(3), &fb),
        cb2_fb2: int(&cb.pow(2), &fb.pow(2)),
        fb3_cb: int(&fb.pow(3), &cb),
    }
}
