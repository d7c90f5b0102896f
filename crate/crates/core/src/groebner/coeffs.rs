use std::fmt::Debug;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::polycore::{inv_mod, Fp, Scalar};

/// Coefficient arithmetic used inside the engine, without the per-operation
/// field checks of [`Scalar`].
pub(crate) trait Coeffs: Sync {
    type E: Clone + PartialEq + Debug + Send + Sync;

    fn lift(&self, s: &Scalar) -> Self::E;
    fn to_scalar(&self, e: &Self::E) -> Scalar;
    fn is_zero(&self, e: &Self::E) -> bool;
    fn one(&self) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
}

pub(crate) struct PrimeCoeffs {
    pub p: u32,
}

impl Coeffs for PrimeCoeffs {
    type E = u32;

    fn lift(&self, s: &Scalar) -> u32 {
        match s {
            Scalar::Prime(x) => x.value(),
            Scalar::Rational(_) => unreachable!("field checked at entry"),
        }
    }

    fn to_scalar(&self, e: &u32) -> Scalar {
        Scalar::Prime(Fp::new(*e, self.p))
    }

    fn is_zero(&self, e: &u32) -> bool {
        *e == 0
    }

    fn one(&self) -> u32 {
        1
    }

    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + *b as u64;
        (s % self.p as u64) as u32
    }

    fn mul(&self, a: &u32, b: &u32) -> u32 {
        ((*a as u64 * *b as u64) % self.p as u64) as u32
    }

    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn inv(&self, a: &u32) -> u32 {
        inv_mod(*a, self.p)
    }
}

pub(crate) struct RationalCoeffs;

impl Coeffs for RationalCoeffs {
    type E = BigRational;

    fn lift(&self, s: &Scalar) -> BigRational {
        match s {
            Scalar::Rational(r) => r.clone(),
            Scalar::Prime(_) => unreachable!("field checked at entry"),
        }
    }

    fn to_scalar(&self, e: &BigRational) -> Scalar {
        Scalar::Rational(e.clone())
    }

    fn is_zero(&self, e: &BigRational) -> bool {
        e.is_zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
}
