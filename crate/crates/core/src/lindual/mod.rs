//! Exact subspace calculus over `Q` or `F_p`.
//!
//! A [`Subspace`] of `k^n` is stored by its reduced row echelon basis, so
//! equality of subspaces is equality of structs. Subspaces of the dual space
//! use the same representation with the standard pairing `<v, w> = sum v_i w_i`.

mod matrix;

use std::collections::BTreeMap;

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::polycore::{Field, Scalar};
use crate::rng;

pub use matrix::{dot, Matrix};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinError {
    #[error("ambient dimension mismatch: {0} vs {1}")]
    Ambient(usize, usize),
    #[error("row has {got} entries, expected {expected}")]
    Shape { expected: usize, got: usize },
    #[error("field mismatch: {0} vs {1}")]
    Field(Field, Field),
    #[error("sampler failed: {0}")]
    Sampler(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    basis: Vec<Vec<Scalar>>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Self {
        Subspace { field, ambient, basis: Vec::new() }
    }

    pub fn full(field: Field, ambient: usize) -> Self {
        let basis = (0..ambient).map(|i| unit(field, ambient, i)).collect();
        Subspace { field, ambient, basis }
    }

    /// Span of arbitrary (possibly dependent) vectors.
    pub fn span(field: Field, ambient: usize, vectors: Vec<Vec<Scalar>>) -> Result<Self, LinError> {
        let mut m = Matrix::from_rows(field, ambient, vectors)?;
        m.rref();
        Ok(Subspace { field, ambient, basis: m.into_rows() })
    }

    pub fn coordinate(field: Field, ambient: usize, indices: &[usize]) -> Self {
        let v = indices.iter().map(|&i| unit(field, ambient, i)).collect();
        Self::span(field, ambient, v).expect("unit vectors")
    }

    pub fn random<R: Rng>(field: Field, ambient: usize, dim: usize, rng: &mut R) -> Self {
        assert!(dim <= ambient);
        loop {
            let v = (0..dim).map(|_| rng::vector(field, ambient, rng)).collect();
            let s = Self::span(field, ambient, v).expect("shape");
            if s.dim() == dim {
                return s;
            }
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    fn check(&self, other: &Subspace) -> Result<(), LinError> {
        if self.ambient != other.ambient {
            return Err(LinError::Ambient(self.ambient, other.ambient));
        }
        if self.field != other.field {
            return Err(LinError::Field(self.field, other.field));
        }
        Ok(())
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        Matrix::from_rows(self.field, self.ambient, rows).map(|m| m.rank() == self.dim()).unwrap_or(false)
    }

    /// The subspace of the dual pairing to zero with `self`.
    pub fn annihilator(&self) -> Subspace {
        let m = Matrix::from_rows(self.field, self.ambient, self.basis.clone()).expect("valid basis");
        Subspace::span(self.field, self.ambient, m.kernel()).expect("kernel shape")
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinError> {
        self.check(other)?;
        let mut v = self.basis.clone();
        v.extend(other.basis.iter().cloned());
        Subspace::span(self.field, self.ambient, v)
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinError> {
        self.check(other)?;
        let a = self.annihilator().sum(&other.annihilator())?;
        Ok(a.annihilator())
    }

    /// `dim(a) + dim(b) - dim(a + b)`.
    pub fn intersect_dim(&self, other: &Subspace) -> Result<usize, LinError> {
        Ok(self.dim() + other.dim() - self.sum(other)?.dim())
    }

    /// True when every basis pair of `self` and `dual` pairs to zero.
    pub fn pairs_to_zero(&self, dual: &Subspace) -> bool {
        self.basis.iter().all(|v| dual.basis.iter().all(|w| dot(self.field, v, w).is_zero()))
    }
}

fn unit(field: Field, n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![field.zero(); n];
    v[i] = field.one();
    v
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma22 {
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
}

/// `dim(E ∩ ann Λ)` against `dim(ann E ∩ Λ) + dim E - dim Λ`.
pub fn lemma22_verify(e: &Subspace, lambda: &Subspace) -> Result<Lemma22, LinError> {
    e.check(lambda)?;
    let lhs = e.intersect_dim(&lambda.annihilator())? as i64;
    let rhs = e.annihilator().intersect_dim(lambda)? as i64 + e.dim() as i64 - lambda.dim() as i64;
    Ok(Lemma22 { lhs, rhs, holds: lhs == rhs })
}

/// Histogram of `dim(E_s ∩ ann Λ)` over `n` fibers drawn from `sampler`,
/// which receives a per-sample seed derived from `seed`.
pub fn jump_histogram<F>(sampler: F, lambda: &Subspace, n: usize, seed: u64) -> Result<BTreeMap<usize, usize>, LinError>
where
    F: Fn(u64) -> Result<Subspace, LinError>,
{
    let perp = lambda.annihilator();
    let mut hist = BTreeMap::new();
    for i in 0..n {
        let e = sampler(rng::sub_seed(seed, i as u64))?;
        *hist.entry(e.intersect_dim(&perp)?).or_insert(0) += 1;
    }
    Ok(hist)
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: Field = Field::Prime(32003);

    #[test]
    fn coordinate_annihilator() {
        let s = Subspace::coordinate(P, 4, &[0, 1]);
        assert_eq!(s.annihilator(), Subspace::coordinate(P, 4, &[2, 3]));
        assert_eq!(Subspace::zero(P, 4).annihilator(), Subspace::full(P, 4));
    }

    #[test]
    fn random_annihilator_dims() {
        let mut r = rng::from_seed(3);
        let s = Subspace::random(P, 12, 5, &mut r);
        let a = s.annihilator();
        assert_eq!(a.dim(), 7);
        assert!(s.pairs_to_zero(&a));
        assert_eq!(a.annihilator(), s);
    }

    #[test]
    fn intersections() {
        let a = Subspace::coordinate(P, 4, &[0, 1]);
        let b = Subspace::coordinate(P, 4, &[1, 2]);
        assert_eq!(a.intersect_dim(&b).unwrap(), 1);
        assert_eq!(a.intersect(&b).unwrap(), Subspace::coordinate(P, 4, &[1]));
        assert_eq!(a.intersect_dim(&a).unwrap(), 2);
        assert!(a.intersect_dim(&Subspace::zero(P, 5)).is_err());
    }

    #[test]
    fn generic_intersection_dimension() {
        let mut r = rng::from_seed(11);
        for k in 0..=12 {
            let a = Subspace::random(P, 12, 5, &mut r);
            let b = Subspace::random(P, 12, k, &mut r);
            assert_eq!(a.intersect_dim(&b).unwrap(), (5 + k).saturating_sub(12));
        }
    }

    #[test]
    fn annihilator_identity_small_cases() {
        let e = Subspace::coordinate(P, 4, &[0, 1]);
        let l = Subspace::coordinate(P, 4, &[0]);
        assert_eq!(lemma22_verify(&e, &l).unwrap(), Lemma22 { lhs: 1, rhs: 1, holds: true });
        let z = lemma22_verify(&e, &Subspace::zero(P, 4)).unwrap();
        assert_eq!((z.lhs, z.rhs), (2, 2));
    }

    #[test]
    fn annihilator_identity_over_rationals() {
        let q = Field::Rational;
        let mut r = rng::from_seed(5);
        for _ in 0..20 {
            let e = Subspace::random(q, 6, 3, &mut r);
            let l = Subspace::random(q, 6, 2, &mut r);
            assert!(lemma22_verify(&e, &l).unwrap().holds);
        }
    }

    #[test]
    fn histogram_trivial_lambda() {
        let h = jump_histogram(|s| Ok(Subspace::random(P, 8, 3, &mut rng::from_seed(s))), &Subspace::zero(P, 8), 10, 1)
            .unwrap();
        assert_eq!(h.into_iter().collect::<Vec<_>>(), vec![(3, 10)]);
    }
}
