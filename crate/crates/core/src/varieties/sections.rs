//! Linear sections of the dual varieties and the probes built on them.

use std::sync::Arc;

use serde::Serialize;

use crate::groebner::{
    groebner, hessian_rank_at, hilbert_data, point_of_degree_one_scheme, GroebnerBasis, HilbertData, Limits,
};
use crate::lindual::Matrix;
use crate::polycore::{Field, Monomial, PolyRing, Polynomial, Scalar};
use crate::rng;

use super::ideals::{g5_names, g6c_names, G6C_CUBIC};
use super::{build_dual_ideal, CaseId, DualModel, VarError};

/// Numerical invariants of a projective scheme read off its Hilbert series.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SectionInvariants {
    pub dim: i64,
    pub degree: i64,
    pub hilbert_poly: String,
    pub genus: Option<i64>,
    /// Independent linear forms in the ideal.
    pub span_defect: usize,
    pub basis_size: usize,
}

impl SectionInvariants {
    fn from_gb(gb: &GroebnerBasis) -> (Self, HilbertData) {
        let h = hilbert_data(gb);
        let inv = SectionInvariants {
            dim: h.projective_dim,
            degree: h.degree,
            hilbert_poly: h.hilbert_poly_string(),
            genus: (h.projective_dim == 1).then(|| h.genus()).flatten(),
            span_defect: h.span_defect,
            basis_size: gb.len(),
        };
        (inv, h)
    }
}

/// Dimension of the dual variety of a case (`dim S + rank E⊥ - 1`).
pub fn dual_dim(case: CaseId) -> Option<i64> {
    match case {
        CaseId::G4 => Some(7),
        CaseId::G5 => Some(8),
        CaseId::G6C => Some(11),
        _ => None,
    }
}

/// Adjoins `codim` random linear forms to the dual ideal; `codim = 0` gives
/// the invariants of the dual variety itself.
pub fn linear_section_invariants(
    case: CaseId,
    codim: usize,
    field: Field,
    seed: u64,
    limits: &Limits,
) -> Result<SectionInvariants, VarError> {
    let model = build_dual_ideal(case, field)?;
    let top = dual_dim(case).expect("case with equations");
    if codim as i64 > top {
        return Err(VarError::Param(format!("codim {codim} exceeds dimension {top}")));
    }
    let mut r = rng::stream(seed, &format!("section:{case}:{codim}"));
    let mut gens = model.gens.clone();
    for _ in 0..codim {
        gens.push(Polynomial::linear(&model.ring, &rng::vector(field, model.ring.nvars(), &mut r)));
    }
    let gb = groebner(&gens, limits)?;
    Ok(SectionInvariants::from_gb(&gb).0)
}

/// Curve section of the genus-5 dual variety attached to three `(1,1)`
/// forms `eta` and a `(1,2)` form `xi` on `P^2 x P^3`.
#[derive(Clone, Debug)]
pub struct Cor46Section {
    pub model: DualModel,
    /// `xi = sum l_j y_j`, one `(1,1)` form per `y_j`.
    pub l_forms: Vec<Polynomial>,
    pub invariants: SectionInvariants,
}

/// Ring `x1..x3, y1..y4` bigraded as `P^2 x P^3`.
pub fn segre_source_ring(field: Field) -> Arc<PolyRing> {
    PolyRing::new(&["x1", "x2", "x3", "y1", "y2", "y3", "y4"], field).expect("distinct names").with_split(3)
}

/// Splits `xi` as `sum l_j y_j`, charging each term to its first `y`.
fn decompose_xi(xi: &Polynomial) -> Result<Vec<Polynomial>, VarError> {
    let ring = xi.ring();
    let mut parts: Vec<Vec<(Monomial, Scalar)>> = vec![Vec::new(); 4];
    for (m, c) in xi.terms() {
        let j =
            (0..4).find(|&j| m.exponent(3 + j) > 0).ok_or_else(|| VarError::Param("xi has a term without y".into()))?;
        let mut e = m.exponents().to_vec();
        e[3 + j] -= 1;
        parts[j].push((Monomial::from_exponents(&e), c.clone()));
    }
    Ok(parts.into_iter().map(|t| Polynomial::from_terms(ring, t)).collect())
}

/// Linear form in the `d` coordinates of the genus-5 model for a `(1,1)`
/// form, under `x_i y_j <-> d_ji`.
fn to_linear(l: &Polynomial, target: &Arc<PolyRing>) -> Result<Polynomial, VarError> {
    if !l.is_zero() && l.bidegree() != Some((1, 1)) {
        return Err(VarError::Param(format!("{l} is not of bidegree (1,1)")));
    }
    let mut coeffs = vec![target.field().zero(); target.nvars()];
    for (m, c) in l.terms() {
        let i = (0..3).find(|&i| m.exponent(i) == 1).expect("bidegree (1,1)");
        let j = (0..4).find(|&j| m.exponent(3 + j) == 1).expect("bidegree (1,1)");
        let idx = target.index_of(&format!("d{}{}", j + 1, i + 1)).expect("d coordinate");
        coeffs[idx] = &coeffs[idx] + c;
    }
    Ok(Polynomial::linear(target, &coeffs))
}

pub fn cor46_section(eta: &[Polynomial], xi: &Polynomial, limits: &Limits) -> Result<Cor46Section, VarError> {
    if eta.len() != 3 {
        return Err(VarError::Param(format!("need 3 eta forms, got {}", eta.len())));
    }
    if xi.bidegree() != Some((1, 2)) {
        return Err(VarError::Param("xi must have bidegree (1,2)".into()));
    }
    let field = xi.field();
    let mut model = build_dual_ideal(CaseId::G5, field)?;
    let l_forms = decompose_xi(xi)?;
    for (j, l) in l_forms.iter().enumerate() {
        let p = model.ring.var_by_name(&format!("p{}", j + 1))?;
        model.gens.push(p.checked_sub(&to_linear(l, &model.ring)?)?);
    }
    for e in eta {
        model.gens.push(to_linear(e, &model.ring)?);
    }
    model.notes = "genus-5 dual section p_j = L_j, eta_k = 0".into();
    let gb = groebner(&model.gens, limits)?;
    let (invariants, _) = SectionInvariants::from_gb(&gb);
    if invariants.dim != 1 {
        return Err(VarError::NotACurve(invariants.dim));
    }
    debug_assert_eq!(g5_names().len(), model.ring.nvars());
    Ok(Cor46Section { model, l_forms, invariants })
}

/// Random `eta` and `xi` from a seed.
pub fn cor46_random_input(field: Field, seed: u64) -> (Vec<Polynomial>, Polynomial) {
    let ring = segre_source_ring(field);
    let mut r = rng::stream(seed, "cor46");
    let eta = (0..3).map(|_| crate::multigraded::random_form(&ring, 3, (1, 1), &mut r)).collect();
    let xi = crate::multigraded::random_form(&ring, 3, (1, 2), &mut r);
    (eta, xi)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cor63 {
    /// Degree of the zero-dimensional singular scheme.
    pub sing_count: i64,
    /// Whether the singular point has all `q` coordinates zero.
    pub on_q0_component: bool,
    /// Rank of the quadratic part of the cubic at the singular point.
    pub affine_hessian_rank: usize,
}

/// Restricts the cubic to `P(Λ)`, `Λ` the column span of the `13 x 6`
/// matrix `m`, and analyzes the singular scheme.
pub fn cor63_probe_with(m: &Matrix, limits: &Limits) -> Result<Cor63, VarError> {
    let field = m.field();
    if m.nrows() != 13 || m.ncols() != 6 {
        return Err(VarError::Param("need a 13 x 6 matrix".into()));
    }
    let big = PolyRing::new(&g6c_names(), field)?;
    let f = crate::polycore::parse_poly(G6C_CUBIC, &big)?;
    let small = PolyRing::new(&["z1", "z2", "z3", "z4", "z5", "z6"], field)?;
    let images: Vec<Polynomial> = m.rows().iter().map(|row| Polynomial::linear(&small, row)).collect();
    let g = f.compose(&small, &images)?;
    let mut gens = vec![g.clone()];
    for i in 0..6 {
        gens.push(g.diff(i)?);
    }
    let gb = groebner(&gens, limits)?;
    let h = hilbert_data(&gb);
    if h.projective_dim != 0 {
        return Err(VarError::NonFiniteSingular(h.projective_dim));
    }
    if h.degree != 1 {
        return Ok(Cor63 { sing_count: h.degree, on_q0_component: false, affine_hessian_rank: 0 });
    }
    let z = point_of_degree_one_scheme(&gb)?;
    let v = m.mul_vec(&z);
    let on_q0 = v[8..13].iter().all(|x| x.is_zero());
    // Euler's relation puts z in the kernel of the projective Hessian, whose
    // rank then equals that of the affine quadratic part.
    let rank = hessian_rank_at(&g, &z)?;
    Ok(Cor63 { sing_count: 1, on_q0_component: on_q0, affine_hessian_rank: rank })
}

pub fn cor63_probe(field: Field, seed: u64, limits: &Limits) -> Result<Cor63, VarError> {
    let mut r = rng::stream(seed, "cor63");
    let rows: Vec<Vec<Scalar>> = (0..13).map(|_| rng::vector(field, 6, &mut r)).collect();
    cor63_probe_with(&Matrix::from_rows(field, 6, rows)?, limits)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Lemma42Kind {
    Line2,
    Plane3,
}

impl std::str::FromStr for Lemma42Kind {
    type Err = VarError;
    fn from_str(s: &str) -> Result<Self, VarError> {
        match s {
            "line2" => Ok(Lemma42Kind::Line2),
            "plane3" => Ok(Lemma42Kind::Plane3),
            _ => Err(VarError::Param(format!("unknown lemma42 kind `{s}`"))),
        }
    }
}

fn segre_ring(field: Field) -> Arc<PolyRing> {
    let names: Vec<String> = (1..=3).flat_map(|i| (1..=4).map(move |j| format!("z{i}{j}"))).collect();
    PolyRing::new(&names, field).expect("distinct names")
}

fn segre_minors(ring: &Arc<PolyRing>) -> Vec<Polynomial> {
    let z = |i: usize, j: usize| ring.var(4 * i + j);
    let mut out = Vec::new();
    for i in 0..3 {
        for k in i + 1..3 {
            for j in 0..4 {
                for l in j + 1..4 {
                    out.push(&(&z(i, j) * &z(k, l)) - &(&z(i, l) * &z(k, j)));
                }
            }
        }
    }
    out
}

/// Segre image of `(a, b)` in `P^11`.
pub fn segre_point(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect()
}

/// Degree of the intersection of the Segre `P^2 x P^3` with the span of
/// the given points, which must be linearly independent.
pub fn segre_span_intersection(points: &[Vec<Scalar>], limits: &Limits) -> Result<i64, VarError> {
    let field = points[0][0].field();
    let k = points.len();
    if Matrix::from_rows(field, 12, points.to_vec())?.rank() != k {
        return Err(VarError::Degenerate(1));
    }
    let params: Vec<String> = (0..k).map(|i| format!("s{i}")).collect();
    let small = PolyRing::new(&params, field)?;
    let images: Vec<Polynomial> =
        (0..12).map(|c| Polynomial::linear(&small, &points.iter().map(|p| p[c].clone()).collect::<Vec<_>>())).collect();
    let ring = segre_ring(field);
    let restricted: Vec<Polynomial> = segre_minors(&ring)
        .iter()
        .map(|m| m.compose(&small, &images))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .filter(|p| !p.is_zero())
        .collect();
    if restricted.is_empty() {
        return Err(if k == 2 { VarError::LineInsideSegre } else { VarError::PlaneMeetsInCurve });
    }
    let gb = groebner(&restricted, limits)?;
    let h = hilbert_data(&gb);
    match h.projective_dim {
        0 => Ok(h.degree),
        d if d > 0 && k == 2 => Err(VarError::LineInsideSegre),
        d if d > 0 => Err(VarError::PlaneMeetsInCurve),
        _ => Ok(0),
    }
}

pub fn lemma42_probe(kind: Lemma42Kind, field: Field, seed: u64, limits: &Limits) -> Result<i64, VarError> {
    let k = match kind {
        Lemma42Kind::Line2 => 2,
        Lemma42Kind::Plane3 => 3,
    };
    let mut r = rng::stream(seed, "lemma42");
    for _ in 0..16 {
        let pts: Vec<Vec<Scalar>> =
            (0..k).map(|_| segre_point(&rng::vector(field, 3, &mut r), &rng::vector(field, 4, &mut r))).collect();
        match segre_span_intersection(&pts, limits) {
            Err(VarError::Degenerate(_)) => continue,
            other => return other,
        }
    }
    Err(VarError::Degenerate(16))
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: Field = Field::Prime(32003);

    #[test]
    fn random_section_is_genus_nine_curve() {
        let (eta, xi) = cor46_random_input(P, 3);
        let s = cor46_section(&eta, &xi, &Limits::default()).unwrap();
        assert_eq!((s.invariants.dim, s.invariants.degree), (1, 16));
        assert_eq!(s.invariants.hilbert_poly, "16t - 8");
        assert_eq!(s.invariants.genus, Some(9));
        // the decomposition recombines to xi
        let ring = xi.ring();
        let mut back = Polynomial::zero(ring);
        for (j, l) in s.l_forms.iter().enumerate() {
            back = &back + &(l * &ring.var(3 + j));
        }
        assert_eq!(back, xi);
    }

    #[test]
    fn repeated_eta_is_not_a_curve() {
        let (mut eta, xi) = cor46_random_input(P, 4);
        eta[2] = eta[1].clone();
        assert!(matches!(cor46_section(&eta, &xi, &Limits::default()), Err(VarError::NotACurve(2))));
    }

    #[test]
    fn secant_span_degrees() {
        let l = Limits::default();
        assert_eq!(lemma42_probe(Lemma42Kind::Line2, P, 1, &l).unwrap(), 2);
        assert_eq!(lemma42_probe(Lemma42Kind::Plane3, P, 1, &l).unwrap(), 3);
    }

    #[test]
    fn line_in_fiber_lies_on_segre() {
        let v = |xs: &[i64]| xs.iter().map(|&x| P.from_i64(x)).collect::<Vec<_>>();
        let a = v(&[1, 2, 3]);
        let p1 = segre_point(&a, &v(&[1, 0, 0, 0]));
        let p2 = segre_point(&a, &v(&[0, 1, 5, 0]));
        assert!(matches!(segre_span_intersection(&[p1, p2], &Limits::default()), Err(VarError::LineInsideSegre)));
    }

    #[test]
    fn special_lambda_is_degenerate() {
        let mut r = rng::from_seed(2);
        let mut rows: Vec<Vec<Scalar>> = (0..13).map(|_| rng::vector(P, 6, &mut r)).collect();
        rows[12] = vec![P.zero(); 6];
        let m = Matrix::from_rows(P, 6, rows).unwrap();
        let res = cor63_probe_with(&m, &Limits::default());
        match res {
            Err(VarError::NonFiniteSingular(d)) => assert!(d > 0),
            Ok(c) => assert!(c.sing_count > 1),
            Err(e) => panic!("{e}"),
        }
    }
}
