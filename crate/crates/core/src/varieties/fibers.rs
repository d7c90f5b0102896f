//! Fibers of `sigma` over sampled base points: the pair `(E_s, E⊥_s)` of
//! orthogonal subspaces and one point of `P(E⊥_s)` mapped into the dual
//! variety's coordinates.

use rand::Rng;

use crate::groebner::jacobian_rank_at;
use crate::lindual::{dot, Matrix, Subspace};
use crate::par::{self, ExecMode};
use crate::polycore::{Field, Scalar};
use crate::rng;

use super::{build_dual_ideal, CaseId, VarError};

const MAX_ATTEMPTS: usize = 64;

#[derive(Clone, Debug)]
pub struct FiberPoint {
    pub case: CaseId,
    /// Named vectors describing the base point.
    pub datum: Vec<(String, Vec<Scalar>)>,
    pub e: Subspace,
    pub e_perp: Subspace,
    /// A point of `P(E⊥_s)` in the coordinates of `V_E^*` (for G4 the
    /// traceless ones, without `d33`).
    pub point: Vec<Scalar>,
}

/// Block direct sum of subspaces of consecutive coordinate ranges.
fn direct_sum(field: Field, blocks: &[&Subspace]) -> Subspace {
    let n: usize = blocks.iter().map(|b| b.ambient()).sum();
    let mut vecs = Vec::new();
    let mut offset = 0;
    for b in blocks {
        for v in b.basis() {
            let mut w = vec![field.zero(); n];
            w[offset..offset + v.len()].clone_from_slice(v);
            vecs.push(w);
        }
        offset += b.ambient();
    }
    Subspace::span(field, n, vecs).expect("block shapes")
}

fn line(field: Field, v: &[Scalar]) -> Subspace {
    Subspace::span(field, v.len(), vec![v.to_vec()]).expect("shape")
}

fn is_zero(v: &[Scalar]) -> bool {
    v.iter().all(|x| x.is_zero())
}

fn random_combination<R: Rng>(s: &Subspace, rng: &mut R) -> Vec<Scalar> {
    let f = s.field();
    let mut out = vec![f.zero(); s.ambient()];
    for b in s.basis() {
        let c = rng::nonzero_scalar(f, rng);
        for (o, x) in out.iter_mut().zip(b) {
            *o = &*o + &(&c * x);
        }
    }
    out
}

fn random_nonzero_in<R: Rng>(s: &Subspace, rng: &mut R) -> Option<Vec<Scalar>> {
    (0..MAX_ATTEMPTS).map(|_| random_combination(s, rng)).find(|v| !is_zero(v))
}

/// G4 fiber over `[y ⊗ x]` with `y^t x = 0`: `E⊥_s = y^⊥ ⊕ x^⊥ ⊕ <y x^t>`
/// in the traceless coordinates `p, q, d11..d32`.
pub fn g4_fiber(field: Field, y: &[Scalar], x: &[Scalar], p: &[Scalar], q: &[Scalar]) -> Result<FiberPoint, VarError> {
    if is_zero(y) || is_zero(x) || !dot(field, y, x).is_zero() {
        return Err(VarError::Param("need nonzero y, x with y^t x = 0".into()));
    }
    let d: Vec<Scalar> = (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).map(|(i, j)| &y[i] * &x[j]).collect();
    let d_traceless = &d[..8];
    let e_perp =
        direct_sum(field, &[&line(field, y).annihilator(), &line(field, x).annihilator(), &line(field, d_traceless)]);
    let e = direct_sum(field, &[&line(field, y), &line(field, x), &line(field, d_traceless).annihilator()]);
    let mut point: Vec<Scalar> = p.iter().chain(q).cloned().collect();
    point.extend(d_traceless.iter().cloned());
    let fp = FiberPoint {
        case: CaseId::G4,
        datum: vec![("y".into(), y.to_vec()), ("x".into(), x.to_vec())],
        e,
        e_perp,
        point,
    };
    Ok(fp)
}

fn g4_sample(field: Field, seed: u64) -> Result<FiberPoint, VarError> {
    let mut r = rng::stream(seed, "fiber:G4");
    for _ in 0..MAX_ATTEMPTS {
        let y = rng::vector(field, 3, &mut r);
        if is_zero(&y) {
            continue;
        }
        let yperp = line(field, &y).annihilator();
        let Some(x) = random_nonzero_in(&yperp, &mut r) else { continue };
        let Some(p) = random_nonzero_in(&yperp, &mut r) else { continue };
        let Some(q) = random_nonzero_in(&line(field, &x).annihilator(), &mut r) else { continue };
        let s = rng::nonzero_scalar(field, &mut r);
        let x: Vec<Scalar> = x.iter().map(|v| v * &s).collect();
        return g4_fiber(field, &y, &x, &p, &q);
    }
    Err(VarError::Degenerate(MAX_ATTEMPTS))
}

/// G5 fiber over `[u]`: `E⊥_s = u ⊗ (F^3)^* ⊕ u^⊥` in coordinates `d, p`.
pub fn g5_fiber(field: Field, u: &[Scalar], w: &[Scalar], p: &[Scalar]) -> Result<FiberPoint, VarError> {
    if is_zero(u) || !dot(field, u, p).is_zero() {
        return Err(VarError::Param("need nonzero u with <p, u> = 0".into()));
    }
    let outer = |w: &[Scalar]| -> Vec<Scalar> { u.iter().flat_map(|ui| w.iter().map(move |wj| ui * wj)).collect() };
    let unit = |j: usize| -> Vec<Scalar> { (0..3).map(|k| if k == j { field.one() } else { field.zero() }).collect() };
    let d_space = Subspace::span(field, 12, (0..3).map(|j| outer(&unit(j))).collect())?;
    let e_perp = direct_sum(field, &[&d_space, &line(field, u).annihilator()]);
    let e = direct_sum(field, &[&d_space.annihilator(), &line(field, u)]);
    let mut point = outer(w);
    point.extend(p.iter().cloned());
    Ok(FiberPoint {
        case: CaseId::G5,
        datum: vec![("u".into(), u.to_vec()), ("w".into(), w.to_vec())],
        e,
        e_perp,
        point,
    })
}

fn g5_sample(field: Field, seed: u64) -> Result<FiberPoint, VarError> {
    let mut r = rng::stream(seed, "fiber:G5");
    for _ in 0..MAX_ATTEMPTS {
        let u = rng::vector(field, 4, &mut r);
        let w = rng::vector(field, 3, &mut r);
        if is_zero(&u) || is_zero(&w) {
            continue;
        }
        let Some(p) = random_nonzero_in(&line(field, &u).annihilator(), &mut r) else { continue };
        return g5_fiber(field, &u, &w, &p);
    }
    Err(VarError::Degenerate(MAX_ATTEMPTS))
}

/// Index pairs `(i, j)`, `i < j`, of Plücker coordinates on `∧^2 F^5`.
pub(crate) fn plucker_pairs() -> Vec<(usize, usize)> {
    (0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j))).collect()
}

fn plucker(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    plucker_pairs().into_iter().map(|(i, j)| &(&a[i] * &b[j]) - &(&a[j] * &b[i])).collect()
}

/// The three linear forms on `∧^2 F^5` cutting out `B5` from `G(2, 5)`.
/// They are fixed once per field so every sample lies on the same `B5`.
pub(crate) fn b5_forms(field: Field) -> Vec<Vec<Scalar>> {
    let mut r = rng::stream(0, "B5:forms");
    (0..3).map(|_| rng::vector(field, 10, &mut r)).collect()
}

fn g8_sample(field: Field, seed: u64) -> Result<FiberPoint, VarError> {
    let forms = b5_forms(field);
    let forms_m = Matrix::from_rows(field, 10, forms.clone())?;
    let mut reduced = forms_m.clone();
    let pivots = reduced.rref();
    let free: Vec<usize> = (0..10).filter(|c| !pivots.contains(c)).collect();
    let u7 = Subspace::span(field, 10, forms_m.kernel())?;
    let mut r = rng::stream(seed, "fiber:G8");
    for _ in 0..MAX_ATTEMPTS {
        let w1 = rng::vector(field, 5, &mut r);
        if is_zero(&w1) {
            continue;
        }
        // phi_k(w1 ∧ w2) is linear in w2
        let rows: Vec<Vec<Scalar>> = forms
            .iter()
            .map(|phi| {
                let mut row = vec![field.zero(); 5];
                for (k, (i, j)) in plucker_pairs().into_iter().enumerate() {
                    row[j] = &row[j] + &(&phi[k] * &w1[i]);
                    row[i] = &row[i] - &(&phi[k] * &w1[j]);
                }
                row
            })
            .collect();
        let sols = Subspace::span(field, 5, Matrix::from_rows(field, 5, rows)?.kernel())?;
        let Some(w2) = random_nonzero_in(&sols, &mut r) else { continue };
        let pl = plucker(&w1, &w2);
        if is_zero(&pl) {
            continue;
        }
        debug_assert!(u7.contains(&pl));
        // coordinates in the kernel basis are the values at the free columns
        let pl7: Vec<Scalar> = free.iter().map(|&c| pl[c].clone()).collect();
        let w = Subspace::span(field, 5, vec![w1.clone(), w2.clone()])?;
        let e = direct_sum(field, &[&w, &line(field, &pl7)]);
        let e_perp = direct_sum(field, &[&w.annihilator(), &line(field, &pl7).annihilator()]);
        let point = random_combination(&e_perp, &mut r);
        return Ok(FiberPoint {
            case: CaseId::G8,
            datum: vec![("w1".into(), w1), ("w2".into(), w2), ("plucker".into(), pl)],
            e,
            e_perp,
            point,
        });
    }
    Err(VarError::Degenerate(MAX_ATTEMPTS))
}

/// Deterministic fiber sample over `F_p` (or `Q`) for G4, G5 and G8.
pub fn fiber_sample(case: CaseId, field: Field, seed: u64) -> Result<FiberPoint, VarError> {
    match case {
        CaseId::G4 => g4_sample(field, seed),
        CaseId::G5 => g5_sample(field, seed),
        CaseId::G8 => g8_sample(field, seed),
        CaseId::G6Q | CaseId::G6C => Err(VarError::Unsupported(case, "no fiber sampler")),
    }
}

/// Expected `(dim E_s, dim E⊥_s)` for the sampled cases.
pub fn fiber_dims(case: CaseId) -> Option<(usize, usize)> {
    match case {
        CaseId::G4 => Some((9, 5)),
        CaseId::G5 => Some((10, 6)),
        CaseId::G8 => Some((3, 9)),
        _ => None,
    }
}

impl FiberPoint {
    /// The sampled point in the dual model's ring coordinates.
    pub fn model_point(&self) -> Vec<Scalar> {
        let mut pt = self.point.clone();
        if self.case == CaseId::G4 {
            let d33 = -&(&pt[6] + &pt[10]);
            pt.push(d33);
        }
        pt
    }
}

/// Number of fiber samples whose point fails a generator, whose subspaces
/// are not orthogonal, or whose dimensions are wrong.
pub fn containment_check(case: CaseId, field: Field, n: usize, seed: u64, mode: ExecMode) -> Result<usize, VarError> {
    if !matches!(case, CaseId::G4 | CaseId::G5) {
        return Err(VarError::Unsupported(case, "containment needs an ideal"));
    }
    let model = build_dual_ideal(case, field)?;
    let dims = fiber_dims(case).expect("sampled case");
    let results = par::map_range(n, mode, |i| -> Result<bool, VarError> {
        let fp = fiber_sample(case, field, rng::sub_seed(seed, i as u64))?;
        let pt = fp.model_point();
        let on = model.gens.iter().map(|g| g.eval(&pt)).collect::<Result<Vec<_>, _>>()?.iter().all(|v| v.is_zero());
        Ok(on && fp.e.pairs_to_zero(&fp.e_perp) && (fp.e.dim(), fp.e_perp.dim()) == dims)
    });
    let mut failures = 0;
    for r in results {
        if !r? {
            failures += 1;
        }
    }
    Ok(failures)
}

/// Where [`jacobian_rank_samples`] draws its points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankSite {
    /// A fiber sample, generically a smooth point.
    Generic,
    /// `D = 0` with random `p`, inside the singular locus of the G5 model.
    ZeroD,
}

fn zero_d_point(field: Field, seed: u64) -> Vec<Scalar> {
    let mut r = rng::stream(seed, "rank:G5:D=0");
    let mut pt = vec![field.zero(); 12];
    loop {
        let p = rng::vector(field, 4, &mut r);
        if !is_zero(&p) {
            pt.extend(p);
            return pt;
        }
    }
}

/// Jacobian ranks of the dual ideal at `n` sampled points, in sample order.
pub fn jacobian_rank_samples(
    case: CaseId,
    site: RankSite,
    field: Field,
    n: usize,
    seed: u64,
    mode: ExecMode,
) -> Result<Vec<usize>, VarError> {
    if site == RankSite::ZeroD && case != CaseId::G5 {
        return Err(VarError::Unsupported(case, "D = 0 sites are defined for G5"));
    }
    let model = build_dual_ideal(case, field)?;
    par::map_range(n, mode, |i| {
        let s = rng::sub_seed(seed, i as u64);
        let pt = match site {
            RankSite::Generic => fiber_sample(case, field, s)?.model_point(),
            RankSite::ZeroD => zero_d_point(field, s),
        };
        Ok(jacobian_rank_at(&model.gens, &pt)?)
    })
    .into_iter()
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: Field = Field::Prime(32003);

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| P.from_i64(x)).collect()
    }

    #[test]
    fn g4_hand_point_satisfies_ideal() {
        let fp = g4_fiber(P, &v(&[1, 0, 0]), &v(&[0, 1, 0]), &v(&[0, 1, 1]), &v(&[1, 0, 1])).unwrap();
        let m = build_dual_ideal(CaseId::G4, P).unwrap();
        for g in &m.gens {
            assert!(g.eval(&fp.model_point()).unwrap().is_zero(), "{g}");
        }
        assert_eq!((fp.e.dim(), fp.e_perp.dim()), (9, 5));
        assert!(fp.e.pairs_to_zero(&fp.e_perp));
    }

    #[test]
    fn g5_hand_point_satisfies_ideal() {
        let fp = g5_fiber(P, &v(&[1, 0, 0, 0]), &v(&[1, 1, 1]), &v(&[0, 1, 0, 0])).unwrap();
        let m = build_dual_ideal(CaseId::G5, P).unwrap();
        assert!(m.gens.iter().all(|g| g.eval(&fp.model_point()).unwrap().is_zero()));
        assert_eq!((fp.e.dim(), fp.e_perp.dim()), (10, 6));
    }

    #[test]
    fn bad_parameters_are_rejected() {
        assert!(g4_fiber(P, &v(&[1, 0, 0]), &v(&[1, 0, 0]), &v(&[0, 1, 0]), &v(&[0, 1, 0])).is_err());
        assert!(g5_fiber(P, &v(&[1, 0, 0, 0]), &v(&[1, 1, 1]), &v(&[1, 0, 0, 0])).is_err());
    }

    #[test]
    fn samples_are_deterministic_and_orthogonal() {
        for case in [CaseId::G4, CaseId::G5, CaseId::G8] {
            let a = fiber_sample(case, P, 11).unwrap();
            let b = fiber_sample(case, P, 11).unwrap();
            assert_eq!(a.point, b.point);
            assert!(a.e.pairs_to_zero(&a.e_perp), "{case}");
            assert_eq!(Some((a.e.dim(), a.e_perp.dim())), fiber_dims(case), "{case}");
            assert!(a.e_perp.contains(&a.point));
        }
    }

    #[test]
    fn g8_plane_lies_on_b5() {
        let fp = fiber_sample(CaseId::G8, P, 5).unwrap();
        let pl = &fp.datum[2].1;
        for phi in b5_forms(P) {
            assert!(dot(P, &phi, pl).is_zero());
        }
    }

    #[test]
    fn containment_counts() {
        assert_eq!(containment_check(CaseId::G4, P, 20, 1, ExecMode::Sequential).unwrap(), 0);
        assert_eq!(containment_check(CaseId::G5, P, 20, 1, ExecMode::Parallel).unwrap(), 0);
        assert_eq!(containment_check(CaseId::G5, P, 0, 1, ExecMode::Parallel).unwrap(), 0);
        assert!(containment_check(CaseId::G8, P, 1, 1, ExecMode::Parallel).is_err());
    }

    #[test]
    fn rank_probes() {
        let g5 = |site| jacobian_rank_samples(CaseId::G5, site, P, 5, 4, ExecMode::Sequential).unwrap();
        assert_eq!(g5(RankSite::ZeroD), vec![3; 5]);
        assert_eq!(g5(RankSite::Generic), vec![7; 5]);
        let g4 = jacobian_rank_samples(CaseId::G4, RankSite::Generic, P, 5, 4, ExecMode::Parallel).unwrap();
        assert_eq!(g4, vec![7; 5]);
        assert!(jacobian_rank_samples(CaseId::G4, RankSite::ZeroD, P, 1, 0, ExecMode::Sequential).is_err());
    }
}
