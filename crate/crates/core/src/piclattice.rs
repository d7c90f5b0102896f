//! Picard lattices of blow-ups of the plane at `k` points, with basis
//! `m, e_1, ..., e_k` and the diagonal form `(1, -1, ..., -1)`.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("class has {got} exceptional coefficients, lattice has {expected}")]
    Size { expected: usize, got: usize },
    #[error("C^2 + C.K = {0} is odd")]
    Parity(i64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SurfaceLattice {
    pub k: usize,
}

/// `c_m * m - sum c_i e_i`, stored as `(c_m, c_1, ..., c_k)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisorClass(pub Vec<i64>);

impl DivisorClass {
    /// `a m - b (e_1 + ... + e_k)`.
    pub fn uniform(k: usize, a: i64, b: i64) -> Self {
        let mut v = vec![b; k + 1];
        v[0] = a;
        DivisorClass(v)
    }

    pub fn line(k: usize) -> Self {
        Self::uniform(k, 1, 0)
    }

    pub fn exceptional(k: usize, i: usize) -> Self {
        let mut v = vec![0; k + 1];
        v[i] = -1;
        DivisorClass(v)
    }

    pub fn add(&self, other: &DivisorClass) -> DivisorClass {
        DivisorClass(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, c: i64) -> DivisorClass {
        DivisorClass(self.0.iter().map(|a| a * c).collect())
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}m", self.0[0])?;
        for (i, c) in self.0[1..].iter().enumerate() {
            match c {
                0 => {}
                c if *c > 0 => write!(f, " - {c}e{}", i + 1)?,
                c => write!(f, " + {}e{}", -c, i + 1)?,
            }
        }
        Ok(())
    }
}

impl SurfaceLattice {
    pub fn new(k: usize) -> Self {
        SurfaceLattice { k }
    }

    pub fn rank(&self) -> usize {
        self.k + 1
    }

    pub fn canonical(&self) -> DivisorClass {
        DivisorClass::uniform(self.k, -3, -1)
    }

    fn check(&self, c: &DivisorClass) -> Result<(), LatticeError> {
        if c.0.len() != self.rank() {
            return Err(LatticeError::Size { expected: self.k, got: c.0.len().saturating_sub(1) });
        }
        Ok(())
    }

    /// With `a = a_m m - sum a_i e_i`, `a.b = a_m b_m - sum a_i b_i`.
    pub fn pairing(&self, a: &DivisorClass, b: &DivisorClass) -> Result<i64, LatticeError> {
        self.check(a)?;
        self.check(b)?;
        Ok(a.0[0] * b.0[0] - a.0[1..].iter().zip(&b.0[1..]).map(|(x, y)| x * y).sum::<i64>())
    }

    /// Arithmetic genus by adjunction.
    pub fn genus_of_class(&self, c: &DivisorClass) -> Result<i64, LatticeError> {
        let s = self.pairing(c, c)? + self.pairing(c, &self.canonical())?;
        if s % 2 != 0 {
            return Err(LatticeError::Parity(s));
        }
        Ok(s / 2 + 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Prop73Report {
    pub c_squared: i64,
    pub c_dot_k: i64,
    pub genus: i64,
    pub anticanonical_degree_on_c: i64,
    pub anticanonical_squared: i64,
}

impl Prop73Report {
    pub fn passes(&self) -> bool {
        (self.c_squared, self.c_dot_k, self.genus, self.anticanonical_degree_on_c, self.anticanonical_squared)
            == (9, -7, 2, 7, 5)
    }
}

/// Quintic with four nodes on the quintic del Pezzo surface.
pub fn prop73_suite() -> Prop73Report {
    let l = SurfaceLattice::new(4);
    let c = DivisorClass::uniform(4, 5, 2);
    let mk = l.canonical().scale(-1);
    Prop73Report {
        c_squared: l.pairing(&c, &c).unwrap(),
        c_dot_k: l.pairing(&c, &l.canonical()).unwrap(),
        genus: l.genus_of_class(&c).unwrap(),
        anticanonical_degree_on_c: l.pairing(&mk, &c).unwrap(),
        anticanonical_squared: l.pairing(&mk, &mk).unwrap(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rem45Report {
    pub genus: i64,
    pub curve_dot_conic: i64,
    pub cubic_degree: i64,
    pub space_curve_degree: i64,
}

impl Rem45Report {
    pub fn passes(&self) -> bool {
        (self.genus, self.curve_dot_conic, self.cubic_degree, self.space_curve_degree) == (9, 2, 3, 9)
    }
}

/// Septic with six nodes on a conic, on the cubic weak del Pezzo surface.
pub fn rem45_suite() -> Rem45Report {
    let l = SurfaceLattice::new(6);
    let c = DivisorClass::uniform(6, 7, 2);
    let q = DivisorClass::uniform(6, 2, 1);
    let h = DivisorClass::uniform(6, 3, 1);
    Rem45Report {
        genus: l.genus_of_class(&c).unwrap(),
        curve_dot_conic: l.pairing(&c, &q).unwrap(),
        cubic_degree: l.pairing(&h, &h).unwrap(),
        space_curve_degree: l.pairing(&h, &c).unwrap(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairing_examples() {
        let l6 = SurfaceLattice::new(6);
        let e = DivisorClass::exceptional(6, 2);
        assert_eq!(l6.pairing(&e, &e), Ok(-1));
        assert_eq!(l6.pairing(&DivisorClass::uniform(6, 7, 2), &DivisorClass::uniform(6, 2, 1)), Ok(2));
        let l4 = SurfaceLattice::new(4);
        assert_eq!(l4.pairing(&DivisorClass::uniform(4, 3, 1), &DivisorClass::uniform(4, 5, 2)), Ok(7));
        assert!(l4.pairing(&e, &e).is_err());
    }

    #[test]
    fn genus_examples() {
        assert_eq!(SurfaceLattice::new(4).genus_of_class(&DivisorClass::uniform(4, 5, 2)), Ok(2));
        assert_eq!(SurfaceLattice::new(6).genus_of_class(&DivisorClass::uniform(6, 7, 2)), Ok(9));
        assert_eq!(SurfaceLattice::new(3).genus_of_class(&DivisorClass::line(3)), Ok(0));
        let l5 = SurfaceLattice::new(5);
        let line_through_two = DivisorClass(vec![1, 1, 1, 0, 0, 0]);
        assert_eq!(l5.pairing(&line_through_two, &line_through_two), Ok(-1));
        assert_eq!(l5.genus_of_class(&line_through_two), Ok(0));
        assert_eq!(l5.genus_of_class(&DivisorClass::exceptional(5, 4)), Ok(0));
        assert_eq!(l5.genus_of_class(&l5.canonical().scale(-1)), Ok(1));
    }

    #[test]
    fn suites() {
        assert!(prop73_suite().passes());
        assert!(rem45_suite().passes());
    }

    #[test]
    fn display() {
        assert_eq!(DivisorClass::uniform(2, 5, 2).to_string(), "5m - 2e1 - 2e2");
    }
}
