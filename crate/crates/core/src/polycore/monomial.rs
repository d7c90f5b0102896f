use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use super::PolyError;

/// Exponent vector with 16-bit entries. Overflow is reported, never wrapped.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: SmallVec<[u16; 16]>,
    degree: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { exps: SmallVec::from_elem(0, nvars), degree: 0 }
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[index] = 1;
        m.degree = 1;
        m
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        let degree = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps: SmallVec::from_slice(exps), degree }
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn exponent(&self, i: usize) -> u16 {
        self.exps[i]
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Bidegree under a split of the variable list at `split`.
    pub fn bidegree(&self, split: usize) -> (u32, u32) {
        let a: u32 = self.exps[..split].iter().map(|&e| e as u32).sum();
        (a, self.degree - a)
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial, PolyError> {
        let mut exps = SmallVec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            exps.push(a.checked_add(*b).ok_or(PolyError::ExponentOverflow)?);
        }
        Ok(Monomial { exps, degree: self.degree + other.degree })
    }

    pub fn checked_pow(&self, e: u32) -> Result<Monomial, PolyError> {
        let mut exps = SmallVec::with_capacity(self.exps.len());
        for &a in &self.exps {
            let v = (a as u32).checked_mul(e).filter(|v| *v <= u16::MAX as u32);
            exps.push(v.ok_or(PolyError::ExponentOverflow)? as u16);
        }
        Ok(Monomial { exps, degree: self.degree * e })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| b - a).collect();
        Monomial { exps, degree: other.degree - self.degree }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: SmallVec<[u16; 16]> = self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect();
        let degree = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, degree }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Bit `i mod 64` set when variable `i` occurs; a cheap divisibility filter.
    pub fn support_mask(&self) -> u64 {
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).fold(0u64, |m, (i, _)| m | (1u64 << (i % 64)))
    }

    /// Lowers exponent `i` by one; `None` when it is already zero.
    pub fn diff(&self, i: usize) -> Option<(u16, Monomial)> {
        let e = self.exps[i];
        if e == 0 {
            return None;
        }
        let mut m = self.clone();
        m.exps[i] -= 1;
        m.degree -= 1;
        Some((e, m))
    }
}

/// Kind of monomial order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrderKind {
    /// Graded reverse lexicographic.
    Degrevlex,
    /// Two blocks split after `split` variables (in permuted order); the first
    /// block dominates; degrevlex inside each block.
    Block { split: usize },
}

/// A total monomial order compatible with multiplication. Variables are
/// compared in the sequence given by `perm` (`perm[0]` is the largest).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    perm: Vec<usize>,
}

impl MonomialOrder {
    pub fn degrevlex(nvars: usize) -> Self {
        MonomialOrder { kind: OrderKind::Degrevlex, perm: (0..nvars).collect() }
    }

    pub fn block(nvars: usize, split: usize) -> Self {
        assert!(split <= nvars, "block split beyond variable count");
        MonomialOrder { kind: OrderKind::Block { split }, perm: (0..nvars).collect() }
    }

    /// Replaces the variable sequence; `perm` must be a permutation of `0..n`.
    pub fn with_permutation(mut self, perm: Vec<usize>) -> Result<Self, PolyError> {
        let mut seen = vec![false; perm.len()];
        if perm.len() != self.perm.len() {
            return Err(PolyError::BadPermutation);
        }
        for &p in &perm {
            if p >= seen.len() || seen[p] {
                return Err(PolyError::BadPermutation);
            }
            seen[p] = true;
        }
        self.perm = perm;
        Ok(self)
    }

    pub fn nvars(&self) -> usize {
        self.perm.len()
    }

    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.kind {
            OrderKind::Degrevlex => a.degree.cmp(&b.degree).then_with(|| revlex(&self.perm, a, b)),
            OrderKind::Block { split } => {
                let (hi, lo) = self.perm.split_at(split);
                let da: u32 = hi.iter().map(|&i| a.exps[i] as u32).sum();
                let db: u32 = hi.iter().map(|&i| b.exps[i] as u32).sum();
                da.cmp(&db)
                    .then_with(|| revlex(hi, a, b))
                    .then_with(|| a.degree.cmp(&b.degree))
                    .then_with(|| revlex(lo, a, b))
            }
        }
    }
}

// Equal-degree tie break: the monomial with the smaller exponent in the
// last differing variable is larger.
fn revlex(vars: &[usize], a: &Monomial, b: &Monomial) -> Ordering {
    for &i in vars.iter().rev() {
        match a.exps[i].cmp(&b.exps[i]) {
            Ordering::Equal => continue,
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn degrevlex_basics() {
        let o = MonomialOrder::degrevlex(3);
        // x^2 > xy > y^2 > xz > yz > z^2
        let seq = [m(&[2, 0, 0]), m(&[1, 1, 0]), m(&[0, 2, 0]), m(&[1, 0, 1]), m(&[0, 1, 1]), m(&[0, 0, 2])];
        for w in seq.windows(2) {
            assert_eq!(o.cmp(&w[0], &w[1]), Ordering::Greater);
        }
        assert_eq!(o.cmp(&m(&[0, 0, 1]), &m(&[2, 0, 0])), Ordering::Less);
    }

    #[test]
    fn block_order_eliminates_first_block() {
        let o = MonomialOrder::block(3, 1);
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 5, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 1, 0]), &m(&[1, 0, 1])), Ordering::Greater);
    }

    #[test]
    fn permutation_changes_tie_break() {
        let o = MonomialOrder::degrevlex(2).with_permutation(vec![1, 0]).unwrap();
        assert_eq!(o.cmp(&m(&[0, 1]), &m(&[1, 0])), Ordering::Greater);
        assert!(MonomialOrder::degrevlex(2).with_permutation(vec![0, 0]).is_err());
    }

    #[test]
    fn overflow_is_an_error() {
        let a = m(&[u16::MAX, 0]);
        assert!(a.checked_mul(&m(&[1, 0])).is_err());
        assert!(m(&[300, 1]).checked_pow(300).is_err());
    }

    #[test]
    fn division_and_lcm() {
        let a = m(&[1, 2, 0]);
        let b = m(&[2, 1, 1]);
        let l = a.lcm(&b);
        assert_eq!(l, m(&[2, 2, 1]));
        assert!(a.divides(&l));
        assert_eq!(a.quotient_of(&l), m(&[1, 0, 1]));
        assert!(m(&[1, 0, 0]).is_coprime(&m(&[0, 3, 1])));
    }
}
