use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::polycore::Monomial;

use super::GroebnerBasis;

/// Hilbert series of `S/I` and the invariants read off from it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertData {
    pub nvars: usize,
    /// Numerator over `(1-t)^nvars`, coefficient of `t^i` at index `i`.
    pub numerator: Vec<i64>,
    /// Numerator after cancelling every `(1-t)` factor.
    pub reduced_numerator: Vec<i64>,
    /// Pole order at `t = 1`: the Krull dimension of `S/I`.
    pub pole_order: usize,
    pub projective_dim: i64,
    pub degree: i64,
    /// Hilbert polynomial in `t`, lowest coefficient first.
    pub hilbert_poly: Vec<BigRational>,
    /// Number of independent linear forms in the ideal.
    pub span_defect: usize,
}

impl HilbertData {
    /// Value of the Hilbert function in degree `s`.
    pub fn hilbert_function(&self, s: i64) -> i64 {
        series_coefficient(&self.numerator, self.nvars, s)
    }

    pub fn hilbert_poly_eval(&self, s: i64) -> BigRational {
        let x = BigRational::from_integer(BigInt::from(s));
        self.hilbert_poly.iter().rev().fold(BigRational::zero(), |acc, c| acc * &x + c)
    }

    /// Arithmetic genus `1 - P(0)` when the scheme is a curve.
    pub fn genus(&self) -> Option<i64> {
        if self.projective_dim != 1 {
            return None;
        }
        let c0 = self.hilbert_poly.first().cloned().unwrap_or_else(BigRational::zero);
        c0.is_integer().then(|| 1 - i64::try_from(c0.to_integer()).expect("small genus"))
    }

    /// Human-readable Hilbert polynomial, e.g. `16t - 8`.
    pub fn hilbert_poly_string(&self) -> String {
        format_poly(&self.hilbert_poly, "t")
    }
}

pub(crate) fn format_poly(coeffs: &[BigRational], var: &str) -> String {
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let show_coeff = k == 0 || !a.is_one();
        if show_coeff {
            let _ = write!(out, "{a}");
        }
        match k {
            0 => {}
            1 => out.push_str(var),
            _ => {
                let _ = write!(out, "{var}^{k}");
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn binomial(n: i64, k: i64) -> i128 {
    if k < 0 || n < k {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: i128 = 1;
    for i in 0..k {
        r = r * (n - i) as i128 / (i + 1) as i128;
    }
    r
}

fn series_coefficient(num: &[i64], n: usize, s: i64) -> i64 {
    if n == 0 {
        return num.get(s as usize).copied().unwrap_or(0) * (s >= 0) as i64;
    }
    let total: i128 =
        num.iter().enumerate().map(|(i, &a)| a as i128 * binomial(s - i as i64 + n as i64 - 1, n as i64 - 1)).sum();
    i64::try_from(total).expect("Hilbert function overflow")
}

type Exps = Vec<u16>;

fn minimalize(mut gens: Vec<Exps>) -> Vec<Exps> {
    gens.sort_by_key(|g| g.iter().map(|&e| e as u32).sum::<u32>());
    let mut out: Vec<Exps> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|h| h.iter().zip(&g).all(|(a, b)| a <= b)) {
            out.push(g);
        }
    }
    out
}

fn poly_sub_shift(a: &mut Vec<i64>, b: &[i64], shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (i, &x) in b.iter().enumerate() {
        a[i + shift] -= x;
    }
}

// Numerator N(I) with HS(S/I) = N(I)/(1-t)^n, by pivoting on a variable x:
// N(I) = N(I + (x)) + t * N(I : x).
fn numerator_rec(gens: Vec<Exps>) -> Vec<i64> {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|g| g.iter().all(|&e| e == 0)) {
        return vec![0];
    }
    let nv = gens[0].len();
    let mut counts = vec![0usize; nv];
    for g in &gens {
        for (i, &e) in g.iter().enumerate() {
            if e > 0 {
                counts[i] += 1;
            }
        }
    }
    let (pivot, &most) = counts.iter().enumerate().max_by_key(|(i, c)| (**c, std::cmp::Reverse(*i))).unwrap();
    if most <= 1 {
        // pairwise coprime: product of (1 - t^deg)
        let mut acc = vec![1i64];
        for g in &gens {
            let d: usize = g.iter().map(|&e| e as usize).sum();
            let mut next = acc.clone();
            poly_sub_shift(&mut next, &acc, d);
            acc = next;
        }
        return acc;
    }
    let mut x = vec![0u16; nv];
    x[pivot] = 1;
    let mut plus: Vec<Exps> = gens.iter().filter(|g| g[pivot] == 0).cloned().collect();
    plus.push(x);
    let colon: Vec<Exps> = gens
        .iter()
        .map(|g| {
            let mut h = g.clone();
            h[pivot] = h[pivot].saturating_sub(1);
            h
        })
        .collect();
    let mut a = numerator_rec(minimalize(plus));
    let b = numerator_rec(minimalize(colon));
    let neg: Vec<i64> = b.iter().map(|v| -v).collect();
    poly_sub_shift(&mut a, &neg, 1);
    a
}

/// Hilbert series numerator of `S/(leads)` over `(1-t)^nvars`.
pub fn hilbert_numerator(leads: &[Monomial]) -> Vec<i64> {
    let gens: Vec<Exps> = leads.iter().map(|m| m.exponents().to_vec()).collect();
    let mut n = if gens.is_empty() { vec![1] } else { numerator_rec(minimalize(gens)) };
    while n.len() > 1 && *n.last().unwrap() == 0 {
        n.pop();
    }
    n
}

fn divide_one_minus_t(a: &[i64]) -> Vec<i64> {
    // a = (1 - t) q  =>  q_i = sum_{j <= i} a_j
    let mut q = Vec::with_capacity(a.len().saturating_sub(1));
    let mut acc = 0;
    for &x in &a[..a.len() - 1] {
        acc += x;
        q.push(acc);
    }
    q
}

pub fn hilbert_data(gb: &GroebnerBasis) -> HilbertData {
    let n = gb.ring().nvars();
    from_numerator(hilbert_numerator(&gb.leading_monomials()), n)
}

pub(crate) fn from_numerator(numerator: Vec<i64>, n: usize) -> HilbertData {
    let mut reduced = numerator.clone();
    let mut pole = n;
    while pole > 0 && reduced.iter().sum::<i64>() == 0 && reduced.iter().any(|&v| v != 0) {
        reduced = divide_one_minus_t(&reduced);
        pole -= 1;
    }
    if reduced.iter().all(|&v| v == 0) {
        // S/I = 0
        pole = 0;
    }
    let degree: i64 = reduced.iter().sum();
    let hilbert_poly = hilbert_polynomial(&reduced, pole);
    let h1 = series_coefficient(&numerator, n, 1);
    HilbertData {
        nvars: n,
        span_defect: (n as i64 - h1).max(0) as usize,
        numerator,
        reduced_numerator: reduced,
        pole_order: pole,
        projective_dim: pole as i64 - 1,
        degree,
        hilbert_poly,
    }
}

// sum_i a_i * C(t - i + d - 1, d - 1) as a polynomial in t.
fn hilbert_polynomial(a: &[i64], d: usize) -> Vec<BigRational> {
    if d == 0 {
        return Vec::new();
    }
    let mut fact = BigInt::one();
    for k in 1..d {
        fact *= BigInt::from(k);
    }
    let mut total = vec![BigRational::zero(); d];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        // prod_{k=1}^{d-1} (t - i + k)
        let mut p = vec![BigRational::one()];
        for k in 1..d {
            let c = BigRational::from_integer(BigInt::from(k as i64 - i as i64));
            let mut next = vec![BigRational::zero(); p.len() + 1];
            for (j, pj) in p.iter().enumerate() {
                next[j] += pj * &c;
                next[j + 1] += pj;
            }
            p = next;
        }
        let scale = BigRational::new(BigInt::from(ai), fact.clone());
        for (j, pj) in p.iter().enumerate() {
            total[j] += pj * &scale;
        }
    }
    while total.last().is_some_and(|c| c.is_zero()) {
        total.pop();
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e)
    }

    // Oracle: count standard monomials of degree s by brute force.
    fn count_standard(leads: &[Monomial], n: usize, s: u32) -> i64 {
        fn rec(n: usize, i: usize, left: u32, cur: &mut Vec<u16>, leads: &[Monomial], acc: &mut i64) {
            if i == n - 1 {
                cur.push(left as u16);
                let mono = Monomial::from_exponents(cur);
                if !leads.iter().any(|l| l.divides(&mono)) {
                    *acc += 1;
                }
                cur.pop();
                return;
            }
            for e in 0..=left {
                cur.push(e as u16);
                rec(n, i + 1, left - e, cur, leads, acc);
                cur.pop();
            }
        }
        let mut acc = 0;
        rec(n, 0, s, &mut Vec::new(), leads, &mut acc);
        acc
    }

    #[test]
    fn twisted_cubic_leading_ideal() {
        // degrevlex initial ideal of the twisted cubic
        let leads = vec![m(&[0, 2, 0, 0]), m(&[0, 1, 1, 0]), m(&[0, 0, 2, 0])];
        let h = from_numerator(hilbert_numerator(&leads), 4);
        assert_eq!((h.projective_dim, h.degree), (1, 3));
        assert_eq!(h.hilbert_poly_string(), "3t + 1");
        for s in 0..8 {
            assert_eq!(h.hilbert_function(s), count_standard(&leads, 4, s as u32));
        }
    }

    #[test]
    fn random_monomial_ideals_match_counting() {
        let mut r = crate::rng::from_seed(9);
        use rand::Rng;
        for _ in 0..30 {
            let k = r.gen_range(1..6);
            let leads: Vec<Monomial> = (0..k)
                .map(|_| Monomial::from_exponents(&(0..4).map(|_| r.gen_range(0..3)).collect::<Vec<u16>>()))
                .filter(|m| !m.is_one())
                .collect();
            let h = from_numerator(hilbert_numerator(&leads), 4);
            for s in 0..7 {
                assert_eq!(h.hilbert_function(s), count_standard(&leads, 4, s as u32));
            }
            let top = h.numerator.len() as i64 + 1;
            if h.pole_order > 0 {
                assert_eq!(h.hilbert_poly_eval(top), BigRational::from_integer(h.hilbert_function(top).into()));
            }
        }
    }

    #[test]
    fn whole_ring_and_unit_ideal() {
        let h = from_numerator(hilbert_numerator(&[]), 3);
        assert_eq!((h.projective_dim, h.degree, h.span_defect), (2, 1, 0));
        let u = from_numerator(hilbert_numerator(&[m(&[0, 0, 0])]), 3);
        assert_eq!((u.projective_dim, u.degree), (-1, 0));
    }

    #[test]
    fn span_defect_counts_linear_forms() {
        let h = from_numerator(hilbert_numerator(&[m(&[1, 0, 0]), m(&[0, 1, 0])]), 3);
        assert_eq!((h.projective_dim, h.degree, h.span_defect), (0, 1, 2));
    }

    #[test]
    fn polynomial_formatting() {
        let c = |v: i64| BigRational::from_integer(v.into());
        assert_eq!(format_poly(&[c(-8), c(16)], "t"), "16t - 8");
        assert_eq!(format_poly(&[c(1), c(0), c(-1)], "t"), "-t^2 + 1");
        assert_eq!(format_poly(&[], "t"), "0");
    }
}
