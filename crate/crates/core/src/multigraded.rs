//! Bigraded Hilbert functions of complete intersections in `P^m x P^n`.

use std::sync::Arc;

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::polycore::{Monomial, PolyRing, Polynomial};
use crate::rng;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MultigradedError {
    #[error("invalid complete intersection: {0}")]
    InvalidSpec(String),
    #[error("expected a curve, got dimension {0}")]
    NotACurve(i64),
    #[error("no affine fit on the window at ({0}, {1})")]
    NoAffineFit(i64, i64),
    #[error("Riemann-Roch needs d > 2g - 2 and g >= 0 (d = {0}, g = {1})")]
    SpecialDegree(i64, i64),
    #[error("quadric count needs g >= 5, got {0}")]
    GenusTooSmall(i64),
}

/// Divisors of bidegrees `(a_i, b_i)` in `P^m x P^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CISpec {
    pub m: usize,
    pub n: usize,
    pub degrees: Vec<(u32, u32)>,
}

impl CISpec {
    pub fn new(m: usize, n: usize, degrees: &[(u32, u32)]) -> Result<Self, MultigradedError> {
        if degrees.contains(&(0, 0)) {
            return Err(MultigradedError::InvalidSpec("bidegree (0, 0)".into()));
        }
        if degrees.len() > m + n {
            return Err(MultigradedError::InvalidSpec(format!("{} divisors in dimension {}", degrees.len(), m + n)));
        }
        Ok(CISpec { m, n, degrees: degrees.to_vec() })
    }

    pub fn dim(&self) -> i64 {
        (self.m + self.n) as i64 - self.degrees.len() as i64
    }
}

fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    (0..k).fold(1i64, |acc, i| acc * (n - i) / (i + 1))
}

/// Number of monomials of bidegree `(a, b)` on `P^m x P^n`.
fn ambient_value(m: usize, n: usize, a: i64, b: i64) -> i64 {
    if a < 0 || b < 0 {
        return 0;
    }
    binom(a + m as i64, m as i64) * binom(b + n as i64, n as i64)
}

/// Coefficient of `u^a v^b` in `prod(1 - u^a_i v^b_i) / ((1-u)^(m+1) (1-v)^(n+1))`,
/// by inclusion-exclusion over subsets of the divisors.
pub fn ci_hilbert_value(spec: &CISpec, a: i64, b: i64) -> i64 {
    let k = spec.degrees.len();
    let mut total = 0;
    for mask in 0u32..(1 << k) {
        let (mut da, mut db) = (0i64, 0i64);
        for (i, &(x, y)) in spec.degrees.iter().enumerate() {
            if mask & (1 << i) != 0 {
                da += x as i64;
                db += y as i64;
            }
        }
        let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
        total += sign * ambient_value(spec.m, spec.n, a - da, b - db);
    }
    total
}

/// Truncated expansion of the bigraded series, `table[a][b]` for
/// `a <= amax`, `b <= bmax`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BigradedSeries {
    pub spec: CISpec,
    pub table: Vec<Vec<i64>>,
}

impl BigradedSeries {
    /// Expands numerator times both geometric factors by truncated
    /// polynomial multiplication.
    pub fn expand(spec: &CISpec, amax: usize, bmax: usize) -> Self {
        let mut t = vec![vec![0i64; bmax + 1]; amax + 1];
        t[0][0] = 1;
        for &(x, y) in &spec.degrees {
            let (x, y) = (x as usize, y as usize);
            let mut next = t.clone();
            for a in x..=amax {
                for b in y..=bmax {
                    next[a][b] -= t[a - x][b - y];
                }
            }
            t = next;
        }
        // 1/(1-u) is a running sum along a
        for _ in 0..=spec.m {
            for a in 1..=amax {
                let (done, rest) = t.split_at_mut(a);
                for (x, y) in rest[0].iter_mut().zip(&done[a - 1]) {
                    *x += y;
                }
            }
        }
        for _ in 0..=spec.n {
            for row in t.iter_mut() {
                for b in 1..=bmax {
                    row[b] += row[b - 1];
                }
            }
        }
        BigradedSeries { spec: spec.clone(), table: t }
    }

    pub fn get(&self, a: usize, b: usize) -> Option<i64> {
        self.table.get(a).and_then(|r| r.get(b)).copied()
    }
}

/// Bidegrees and genus of a complete-intersection curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CurveInvariants {
    pub d1: i64,
    pub d2: i64,
    pub genus: i64,
}

pub const FIT_WINDOW: std::ops::RangeInclusive<i64> = 3..=6;

/// Fits `h(a, b) = d1 a + d2 b + 1 - g` on the window and checks every point.
pub fn ci_curve_invariants(spec: &CISpec) -> Result<CurveInvariants, MultigradedError> {
    if spec.dim() != 1 {
        return Err(MultigradedError::NotACurve(spec.dim()));
    }
    let lo = *FIT_WINDOW.start();
    let h = |a, b| ci_hilbert_value(spec, a, b);
    let d1 = h(lo + 1, lo) - h(lo, lo);
    let d2 = h(lo, lo + 1) - h(lo, lo);
    let genus = 1 - (h(lo, lo) - d1 * lo - d2 * lo);
    for a in FIT_WINDOW {
        for b in FIT_WINDOW {
            if h(a, b) != d1 * a + d2 * b + 1 - genus {
                return Err(MultigradedError::NoAffineFit(a, b));
            }
        }
    }
    Ok(CurveInvariants { d1, d2, genus })
}

/// `h^0` of a nonspecial line bundle of degree `d` on a genus-`g` curve.
pub fn rr_h0(d: i64, g: i64) -> Result<i64, MultigradedError> {
    if g < 0 || d <= 2 * g - 2 {
        return Err(MultigradedError::SpecialDegree(d, g));
    }
    Ok(d - g + 1)
}

/// Quadrics containing a canonical curve of genus `g`.
pub fn canonical_quadric_count(g: i64) -> Result<i64, MultigradedError> {
    if g < 5 {
        return Err(MultigradedError::GenusTooSmall(g));
    }
    Ok(g * (g + 1) / 2 - 3 * g + 3)
}

/// Monomials of bidegree `(a, b)` in a ring whose first `split` variables
/// have degree `(1, 0)` and the rest `(0, 1)`.
pub fn bihomogeneous_monomials(nvars: usize, split: usize, a: u32, b: u32) -> Vec<Monomial> {
    fn fill(out: &mut Vec<Vec<u16>>, cur: &mut Vec<u16>, range: std::ops::Range<usize>, left: u32) {
        let Some(i) = range.clone().next() else {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        };
        if range.len() == 1 {
            cur[i] = left as u16;
            out.push(cur.clone());
            cur[i] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e as u16;
            fill(out, cur, i + 1..range.end, left - e);
        }
        cur[i] = 0;
    }
    let mut firsts = Vec::new();
    fill(&mut firsts, &mut vec![0; nvars], 0..split, a);
    let mut out = Vec::new();
    for f in firsts {
        let mut seconds = Vec::new();
        let mut cur = f.clone();
        fill(&mut seconds, &mut cur, split..nvars, b);
        out.extend(seconds.iter().map(|e| Monomial::from_exponents(e)));
    }
    out
}

/// Random bihomogeneous form with every coefficient drawn from the field.
pub fn random_form<R: Rng>(ring: &Arc<PolyRing>, split: usize, bidegree: (u32, u32), rng: &mut R) -> Polynomial {
    let terms = bihomogeneous_monomials(ring.nvars(), split, bidegree.0, bidegree.1)
        .into_iter()
        .map(|m| (m, rng::scalar(ring.field(), rng)))
        .collect();
    Polynomial::from_terms(ring, terms)
}
