use crate::lindual::Matrix;
use crate::polycore::{Monomial, Polynomial, Scalar};

use super::{hilbert_data, normal_form, GbError, GroebnerBasis};

fn check_point(gens: &[Polynomial], point: &[Scalar]) -> Result<(), GbError> {
    if point.iter().all(|s| s.is_zero()) {
        return Err(GbError::ZeroPoint);
    }
    for (i, g) in gens.iter().enumerate() {
        if !g.eval(point)?.is_zero() {
            return Err(GbError::NotOnVariety(i));
        }
    }
    Ok(())
}

/// Rank of `(dg_i/dx_j)(point)`. The point must be nonzero and lie on every
/// generator.
pub fn jacobian_rank_at(gens: &[Polynomial], point: &[Scalar]) -> Result<usize, GbError> {
    check_point(gens, point)?;
    let Some(first) = gens.first() else {
        return Ok(0);
    };
    let n = first.ring().nvars();
    let field = first.field();
    let mut rows = Vec::with_capacity(gens.len());
    for g in gens {
        let row = (0..n).map(|j| g.diff(j)?.eval(point)).collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    Ok(Matrix::from_rows(field, n, rows).expect("square shape").rank())
}

/// Rank of the Hessian of `f` at `point`; no vanishing condition is imposed.
pub fn hessian_rank_at(f: &Polynomial, point: &[Scalar]) -> Result<usize, GbError> {
    let n = f.ring().nvars();
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        let fi = f.diff(i)?;
        let row = (0..n).map(|j| fi.diff(j)?.eval(point)).collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    Ok(Matrix::from_rows(f.field(), n, rows).expect("square shape").rank())
}

/// Coordinates of the unique point of a zero-dimensional degree-one scheme,
/// normalized so that the last nonzero coordinate is 1.
///
/// In a degree `d` where the Hilbert function is 1, `I_d` is exactly the set
/// of forms vanishing at the point, so `x_i x_k^(d-1) = (p_i/p_k) x_k^d`
/// modulo the basis.
pub fn point_of_degree_one_scheme(gb: &GroebnerBasis) -> Result<Vec<Scalar>, GbError> {
    let h = hilbert_data(gb);
    if h.projective_dim != 0 || h.degree != 1 {
        return Err(GbError::NotAPoint(format!("dim {}, degree {}", h.projective_dim, h.degree)));
    }
    let ring = gb.ring();
    let n = ring.nvars();
    let field = ring.field();
    let start = gb.polys().iter().filter_map(|p| p.total_degree()).max().unwrap_or(1).max(1);
    let d = (start..start + n as u32 + 32)
        .find(|&d| h.hilbert_function(d as i64) == 1)
        .ok_or_else(|| GbError::NotAPoint("Hilbert function never reaches 1".into()))?;
    let power = |i: usize, e: u32| {
        let mut ex = vec![0u16; n];
        ex[i] = e as u16;
        ex
    };
    for k in (0..n).rev() {
        let base = normal_form(&Polynomial::monomial(ring, Monomial::from_exponents(&power(k, d)), field.one()), gb)?;
        let Some((m0, c0)) = base.leading_term().cloned() else {
            continue;
        };
        let c0_inv = c0.inv()?;
        let mut point = Vec::with_capacity(n);
        for i in 0..n {
            let mut ex = power(k, d - 1);
            ex[i] += 1;
            let r = normal_form(&Polynomial::monomial(ring, Monomial::from_exponents(&ex), field.one()), gb)?;
            let c = match r.terms() {
                [] => field.zero(),
                [(m, c)] if *m == m0 => c.clone(),
                _ => return Err(GbError::NotAPoint("normal forms are not proportional".into())),
            };
            point.push(&c * &c0_inv);
        }
        return Ok(point);
    }
    Err(GbError::NotAPoint("no coordinate power survives".into()))
}
