use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::{ChowError, ChowRing};

/// Element of a [`ChowRing`], stored per codimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChowClass {
    ring: Arc<ChowRing>,
    parts: Vec<Vec<i64>>,
}

impl ChowClass {
    pub fn zero(ring: &Arc<ChowRing>) -> Self {
        let parts = (0..=ring.dim()).map(|c| vec![0; ring.rank_in(c)]).collect();
        ChowClass { ring: ring.clone(), parts }
    }

    pub fn one(ring: &Arc<ChowRing>) -> Self {
        let mut z = Self::zero(ring);
        z.parts[0][0] = 1;
        z
    }

    /// The basis class with the given label.
    pub fn basis(ring: &Arc<ChowRing>, label: &str) -> Result<Self, ChowError> {
        for c in 0..=ring.dim() {
            if let Some(i) = ring.labels(c).iter().position(|l| l == label) {
                let mut z = Self::zero(ring);
                z.parts[c][i] = 1;
                return Ok(z);
            }
        }
        Err(ChowError::UnknownLabel(label.to_string()))
    }

    /// Homogeneous class of codimension `codim` with the given coordinates.
    pub fn from_coords(ring: &Arc<ChowRing>, codim: usize, coords: &[i64]) -> Result<Self, ChowError> {
        if codim > ring.dim() || coords.len() != ring.rank_in(codim) {
            return Err(ChowError::Shape(codim, coords.len()));
        }
        let mut z = Self::zero(ring);
        z.parts[codim] = coords.to_vec();
        Ok(z)
    }

    pub fn ring(&self) -> &Arc<ChowRing> {
        &self.ring
    }

    pub fn coords(&self, codim: usize) -> &[i64] {
        &self.parts[codim]
    }

    pub fn part(&self, codim: usize) -> ChowClass {
        let mut z = Self::zero(&self.ring);
        if codim <= self.ring.dim() {
            z.parts[codim] = self.parts[codim].clone();
        }
        z
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(|p| p.iter().all(|&v| v == 0))
    }

    /// Codimension when the class is nonzero and homogeneous.
    pub fn codim(&self) -> Option<usize> {
        let nz: Vec<usize> = (0..self.parts.len()).filter(|&c| self.parts[c].iter().any(|&v| v != 0)).collect();
        match nz.as_slice() {
            [c] => Some(*c),
            _ => None,
        }
    }

    fn check(&self, other: &ChowClass) -> Result<(), ChowError> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(ChowError::RingMismatch(self.ring.name().to_string(), other.ring.name().to_string()))
        }
    }

    pub fn try_add(&self, other: &ChowClass) -> Result<ChowClass, ChowError> {
        self.check(other)?;
        let parts =
            self.parts.iter().zip(&other.parts).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect()).collect();
        Ok(ChowClass { ring: self.ring.clone(), parts })
    }

    pub fn scale(&self, k: i64) -> ChowClass {
        let parts = self.parts.iter().map(|p| p.iter().map(|x| x * k).collect()).collect();
        ChowClass { ring: self.ring.clone(), parts }
    }

    pub fn try_mul(&self, other: &ChowClass) -> Result<ChowClass, ChowError> {
        self.check(other)?;
        let r = &self.ring;
        let mut out = Self::zero(r);
        for (c1, a) in self.parts.iter().enumerate() {
            for (c2, b) in other.parts.iter().enumerate() {
                if c1 + c2 > r.dim() {
                    continue;
                }
                for (i, &x) in a.iter().enumerate() {
                    if x == 0 {
                        continue;
                    }
                    for (j, &y) in b.iter().enumerate() {
                        if y == 0 {
                            continue;
                        }
                        for (k, &z) in r.product(c1, i, c2, j).iter().enumerate() {
                            out.parts[c1 + c2][k] += x * y * z;
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> ChowClass {
        (0..e).fold(Self::one(&self.ring), |acc, _| &acc * self)
    }

    /// Degree of the top-codimension part.
    pub fn integrate(&self) -> i64 {
        let d = self.ring.dim();
        self.parts[d].iter().zip(self.ring.integral()).map(|(a, b)| a * b).sum()
    }

    /// Multiplicative inverse; exists when the codim-0 part is `±1`.
    pub fn inverse(&self) -> Result<ChowClass, ChowError> {
        let a0 = self.parts[0][0];
        if a0 != 1 && a0 != -1 {
            return Err(ChowError::NotInvertible);
        }
        // u = a0 (1 + n) with n nilpotent: u^{-1} = a0 * sum (-n)^k
        let n = (&self.scale(a0) - &Self::one(&self.ring)).scale(-1);
        let mut acc = Self::one(&self.ring);
        let mut term = Self::one(&self.ring);
        for _ in 0..self.ring.dim() {
            term = &term * &n;
            acc = &acc + &term;
        }
        Ok(acc.scale(a0))
    }

    /// `(-1)^k` on the codim-`k` part.
    pub fn dual_sign(&self) -> ChowClass {
        let parts = self
            .parts
            .iter()
            .enumerate()
            .map(|(c, p)| p.iter().map(|x| if c % 2 == 1 { -x } else { *x }).collect())
            .collect();
        ChowClass { ring: self.ring.clone(), parts }
    }
}

impl fmt::Display for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, p) in self.parts.iter().enumerate() {
            for (i, &x) in p.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let label = &self.ring.labels(c)[i];
                let sign = if x < 0 { "-" } else { "+" };
                if first {
                    if x < 0 {
                        write!(f, "-")?;
                    }
                } else {
                    write!(f, " {sign} ")?;
                }
                first = false;
                let a = x.abs();
                match (a, c) {
                    (_, 0) => write!(f, "{a}")?,
                    (1, _) => write!(f, "{label}")?,
                    _ => write!(f, "{a}{label}")?,
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

macro_rules! class_op {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&ChowClass> for &ChowClass {
            type Output = ChowClass;
            fn $m(self, rhs: &ChowClass) -> ChowClass {
                let f: fn(&ChowClass, &ChowClass) -> Result<ChowClass, ChowError> = $body;
                f(self, rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

class_op!(Add, add, |a, b| a.try_add(b));
class_op!(Sub, sub, |a, b| a.try_add(&b.scale(-1)));
class_op!(Mul, mul, |a, b| a.try_mul(b));

impl Neg for &ChowClass {
    type Output = ChowClass;
    fn neg(self) -> ChowClass {
        self.scale(-1)
    }
}

/// Total Chern class of a bundle of the given rank, truncated at the base
/// dimension; `c_i` is the codim-`i` part of `total`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChernPoly {
    pub rank: i64,
    total: ChowClass,
}

impl ChernPoly {
    pub fn new(rank: i64, total: ChowClass) -> Result<Self, ChowError> {
        if total.coords(0) != [1] {
            return Err(ChowError::NotUnipotent);
        }
        Ok(ChernPoly { rank, total })
    }

    pub fn trivial(ring: &Arc<ChowRing>, rank: i64) -> Self {
        ChernPoly { rank, total: ChowClass::one(ring) }
    }

    /// Line bundle with first Chern class `c1`.
    pub fn line(c1: &ChowClass) -> Result<Self, ChowError> {
        if c1.codim().is_some_and(|c| c != 1) {
            return Err(ChowError::Codim { expected: 1, got: c1.codim().unwrap() });
        }
        Ok(ChernPoly { rank: 1, total: &ChowClass::one(c1.ring()) + c1 })
    }

    pub fn ring(&self) -> &Arc<ChowRing> {
        self.total.ring()
    }

    pub fn total(&self) -> &ChowClass {
        &self.total
    }

    pub fn c(&self, i: usize) -> ChowClass {
        self.total.part(i)
    }

    pub fn c1(&self) -> ChowClass {
        self.c(1)
    }
}

/// Direct sum: ranks add, total classes multiply.
pub fn chern_whitney(a: &ChernPoly, b: &ChernPoly) -> Result<ChernPoly, ChowError> {
    Ok(ChernPoly { rank: a.rank + b.rank, total: a.total.try_mul(&b.total)? })
}

pub fn chern_dual(c: &ChernPoly) -> ChernPoly {
    ChernPoly { rank: c.rank, total: c.total.dual_sign() }
}

fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < k || n < 0 {
        return 0;
    }
    (0..k).fold(1i64, |acc, i| acc * (n - i) / (i + 1))
}

/// Tensor with a line bundle: `c_k(E⊗L) = sum_i C(r-i, k-i) c_i(E) c1(L)^(k-i)`.
pub fn chern_twist(c: &ChernPoly, line_c1: &ChowClass) -> Result<ChernPoly, ChowError> {
    c.total.check(line_c1)?;
    if let Some(k) = line_c1.codim().filter(|&k| k != 1) {
        return Err(ChowError::Codim { expected: 1, got: k });
    }
    let ring = c.ring();
    let mut total = ChowClass::zero(ring);
    for k in 0..=ring.dim() {
        for i in 0..=k {
            let coeff = binomial(c.rank - i as i64, (k - i) as i64);
            if coeff == 0 {
                continue;
            }
            let term = &c.c(i) * &line_c1.pow((k - i) as u32);
            total = &total + &term.scale(coeff);
        }
    }
    Ok(ChernPoly { rank: c.rank, total })
}

/// Inverse of the total class: the Segre series, truncated.
pub fn segre_series(c: &ChernPoly) -> ChowClass {
    c.total.inverse().expect("unipotent total class")
}
