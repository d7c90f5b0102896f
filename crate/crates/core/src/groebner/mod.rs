//! Buchberger engine for homogeneous ideals over `F_p` or `Q`, with Hilbert
//! series extraction and Jacobian rank probes.

mod coeffs;
mod engine;
mod hilbert;
mod jacobian;

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::polycore::{Field, Monomial, MonomialOrder, PolyError, PolyRing, Polynomial};
use crate::rng::fnv1a;

use coeffs::{Coeffs, PrimeCoeffs, RationalCoeffs};
use engine::{Engine, Terms};

pub use hilbert::{hilbert_data, hilbert_numerator, HilbertData};
pub use jacobian::{hessian_rank_at, jacobian_rank_at, point_of_degree_one_scheme};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GbError {
    #[error("limit exceeded: {reason} (degree {degree}, basis {basis}, pairs reduced {pairs})")]
    Limit { reason: String, degree: u32, basis: usize, pairs: usize },
    #[error("generator {0} is not homogeneous")]
    Inhomogeneous(usize),
    #[error("generators live in different rings")]
    RingMismatch,
    #[error("the zero vector is not a projective point")]
    ZeroPoint,
    #[error("generator {0} does not vanish at the point")]
    NotOnVariety(usize),
    #[error("scheme is not a single reduced point: {0}")]
    NotAPoint(String),
    #[error("empty generator list; the ring is unknown")]
    NoGenerators,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Resource caps for one Buchberger run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_degree: u32,
    pub max_basis: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_degree: 30, max_basis: 20_000 }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Stats {
    pub pairs_reduced: usize,
    pub zero_reductions: usize,
    pub max_degree: u32,
    pub basis_size: usize,
}

/// Reduced, monic Gröbner basis, sorted by ascending leading monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Arc<PolyRing>,
    polys: Vec<Polynomial>,
    fingerprint: u64,
    stats: Stats,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        self.ring.order()
    }

    pub fn field(&self) -> Field {
        self.ring.field()
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// Hash of the normalized input generators.
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn stats(&self) -> Stats {
        self.stats
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys.iter().map(|p| p.leading_term().unwrap().0.clone()).collect()
    }

    /// Re-reduces every S-polynomial; `true` when all vanish.
    pub fn certify(&self) -> bool {
        match self.field() {
            Field::Prime(p) => certify_with(&PrimeCoeffs { p }, self),
            Field::Rational => certify_with(&RationalCoeffs, self),
        }
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool, GbError> {
        Ok(normal_form(f, self)?.is_zero())
    }
}

fn certify_with<C: Coeffs>(c: &C, gb: &GroebnerBasis) -> bool {
    let e = Engine { c, order: gb.order() };
    let b: Vec<_> = gb.polys.iter().map(|p| to_terms(c, p)).collect();
    e.certify(&b).is_none()
}

fn to_terms<C: Coeffs>(c: &C, p: &Polynomial) -> Terms<C::E> {
    p.terms().iter().map(|(m, s)| (m.clone(), c.lift(s))).collect()
}

fn from_terms<C: Coeffs>(c: &C, ring: &Arc<PolyRing>, t: Terms<C::E>) -> Polynomial {
    let terms = t.into_iter().map(|(m, e)| (m, c.to_scalar(&e))).collect();
    Polynomial::from_terms(ring, terms)
}

/// Reduced Gröbner basis of the ideal generated by `gens` under `order`.
/// Zero generators are ignored.
pub fn buchberger(gens: &[Polynomial], order: &MonomialOrder, limits: &Limits) -> Result<GroebnerBasis, GbError> {
    let first = gens.first().ok_or(GbError::NoGenerators)?;
    let ring = first.ring().with_order(order.clone());
    buchberger_in(&ring, gens, limits)
}

/// Same as [`buchberger`] with the ring (and its order) given explicitly, so
/// the generator list may be empty.
pub fn buchberger_in(ring: &Arc<PolyRing>, gens: &[Polynomial], limits: &Limits) -> Result<GroebnerBasis, GbError> {
    let mut inputs = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        if !g.ring().same_space(ring) {
            return Err(if g.field() != ring.field() {
                GbError::Poly(PolyError::FieldMismatch(ring.field(), g.field()))
            } else {
                GbError::RingMismatch
            });
        }
        if g.is_zero() {
            continue;
        }
        if !g.is_homogeneous() {
            return Err(GbError::Inhomogeneous(i));
        }
        inputs.push(g.reorder(ring));
    }
    let fingerprint = fingerprint_of(ring, &inputs);
    let (polys, stats) = match ring.field() {
        Field::Prime(p) => run(&PrimeCoeffs { p }, ring, &inputs, limits)?,
        Field::Rational => run(&RationalCoeffs, ring, &inputs, limits)?,
    };
    Ok(GroebnerBasis { ring: ring.clone(), polys, fingerprint, stats })
}

fn run<C: Coeffs>(
    c: &C,
    ring: &Arc<PolyRing>,
    inputs: &[Polynomial],
    limits: &Limits,
) -> Result<(Vec<Polynomial>, Stats), GbError> {
    let e = Engine { c, order: ring.order() };
    let gens: Vec<_> = inputs.iter().map(|p| to_terms(c, p)).collect();
    let (basis, stats) = e.groebner(gens, limits)?;
    Ok((basis.into_iter().map(|t| from_terms(c, ring, t)).collect(), stats))
}

/// Basis in the order of the generators' own ring.
pub fn groebner(gens: &[Polynomial], limits: &Limits) -> Result<GroebnerBasis, GbError> {
    let ring = gens.first().ok_or(GbError::NoGenerators)?.ring().clone();
    buchberger_in(&ring, gens, limits)
}

fn fingerprint_of(ring: &PolyRing, gens: &[Polynomial]) -> u64 {
    let mut s = format!("{}|{}|", ring.field(), ring.names().join(","));
    let mut normalized: Vec<String> = gens.iter().map(|g| g.normalized().to_string()).collect();
    normalized.sort();
    s.push_str(&normalized.join(";"));
    fnv1a(s.as_bytes())
}

/// The unique remainder of `f` modulo `gb`.
pub fn normal_form(f: &Polynomial, gb: &GroebnerBasis) -> Result<Polynomial, GbError> {
    if !f.ring().same_space(gb.ring()) {
        return Err(if f.field() != gb.field() {
            GbError::Poly(PolyError::FieldMismatch(gb.field(), f.field()))
        } else {
            GbError::RingMismatch
        });
    }
    let f = f.reorder(gb.ring());
    Ok(match gb.field() {
        Field::Prime(p) => nf(&PrimeCoeffs { p }, &f, gb),
        Field::Rational => nf(&RationalCoeffs, &f, gb),
    })
}

fn nf<C: Coeffs>(c: &C, f: &Polynomial, gb: &GroebnerBasis) -> Polynomial {
    let e = Engine { c, order: gb.order() };
    let basis: Vec<_> = gb.polys.iter().map(|p| to_terms(c, p)).collect();
    from_terms(c, gb.ring(), e.normal_form(to_terms(c, f), &basis))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::parse_poly;

    fn ring(names: &[&str], field: Field) -> Arc<PolyRing> {
        PolyRing::new(names, field).unwrap()
    }

    fn polys(r: &Arc<PolyRing>, src: &[&str]) -> Vec<Polynomial> {
        src.iter().map(|s| parse_poly(s, r).unwrap()).collect()
    }

    #[test]
    fn hand_traced_basis() {
        for field in [Field::Rational, Field::Prime(32003)] {
            let r = ring(&["x", "y"], field);
            let gb = groebner(&polys(&r, &["x^2 - y^2", "x*y"]), &Limits::default()).unwrap();
            assert_eq!(gb.polys(), polys(&r, &["x*y", "x^2 - y^2", "y^3"]).as_slice());
            assert!(gb.certify());
        }
    }

    #[test]
    fn twisted_cubic_is_its_own_basis() {
        let r = ring(&["y1", "y2", "y3", "y4"], Field::Rational);
        let g = polys(&r, &["y2^2 - y1*y3", "y2*y3 - y1*y4", "y3^2 - y2*y4"]);
        let gb = groebner(&g, &Limits::default()).unwrap();
        assert_eq!(gb.len(), 3);
        for f in &g {
            assert!(gb.polys().contains(f));
        }
        let h = hilbert_data(&gb);
        assert_eq!((h.projective_dim, h.degree), (1, 3));
        assert_eq!(h.hilbert_poly_string(), "3t + 1");
        assert!(normal_form(&parse_poly("y1*y4 - y2*y3", &r).unwrap(), &gb).unwrap().is_zero());
        let one = parse_poly("1", &r).unwrap();
        assert_eq!(normal_form(&one, &gb).unwrap(), one);
    }

    #[test]
    fn single_generator() {
        let r = ring(&["x", "y"], Field::default());
        let gb = groebner(&polys(&r, &["x"]), &Limits::default()).unwrap();
        assert_eq!(gb.polys(), polys(&r, &["x"]).as_slice());
    }

    #[test]
    fn rejects_inhomogeneous_and_enforces_caps() {
        let r = ring(&["x", "y"], Field::default());
        assert_eq!(groebner(&polys(&r, &["x^2 + y"]), &Limits::default()).unwrap_err(), GbError::Inhomogeneous(0));
        let tight = Limits { max_degree: 2, max_basis: 100 };
        assert!(matches!(groebner(&polys(&r, &["x^2 - y^2", "x*y"]), &tight), Err(GbError::Limit { degree: 3, .. })));
        let tiny = Limits { max_degree: 30, max_basis: 1 };
        assert!(matches!(groebner(&polys(&r, &["x", "y"]), &tiny), Err(GbError::Limit { .. })));
    }

    #[test]
    fn block_order_eliminates() {
        // x = t, y*z = t^2 eliminates to the conic x^2 = y*z
        let r = ring(&["t", "x", "y", "z"], Field::default());
        let order = MonomialOrder::block(4, 1);
        let g = polys(&r, &["x - t", "y*z - t^2"]);
        let gb = buchberger(&g, &order, &Limits::default()).unwrap();
        let elim: Vec<_> = gb.polys().iter().filter(|p| p.terms().iter().all(|(m, _)| m.exponent(0) == 0)).collect();
        assert_eq!(elim.len(), 1);
        assert_eq!(*elim[0], parse_poly("x^2 - y*z", gb.ring()).unwrap());
    }

    #[test]
    fn fingerprint_ignores_scaling_and_order() {
        let r = ring(&["x", "y"], Field::default());
        let a = groebner(&polys(&r, &["x^2 - y^2", "x*y"]), &Limits::default()).unwrap();
        let b = groebner(&polys(&r, &["3*x*y", "2*x^2 - 2*y^2"]), &Limits::default()).unwrap();
        assert_eq!(a.fingerprint(), b.fingerprint());
    }

    #[test]
    fn jacobian_probe_on_cone() {
        let f = Field::Rational;
        let r = ring(&["x", "y", "z"], f);
        let g = polys(&r, &["x*y - z^2"]);
        let pt = |v: [i64; 3]| v.iter().map(|&a| f.from_i64(a)).collect::<Vec<_>>();
        assert_eq!(jacobian_rank_at(&g, &pt([1, 1, 1])).unwrap(), 1);
        assert_eq!(jacobian_rank_at(&g, &pt([1, 0, 0])).unwrap(), 1);
        assert_eq!(jacobian_rank_at(&g, &pt([0, 0, 0])), Err(GbError::ZeroPoint));
        assert_eq!(jacobian_rank_at(&g, &pt([1, 2, 0])), Err(GbError::NotOnVariety(0)));
        assert_eq!(hessian_rank_at(&g[0], &pt([0, 0, 1])).unwrap(), 3);
    }

    #[test]
    fn recovers_a_point() {
        let f = Field::default();
        let r = ring(&["x", "y", "z"], f);
        // the point (2 : 3 : 1) as a non-saturated ideal of quadrics
        let g = polys(&r, &["x^2 - 4*z^2", "x*y - 6*z^2", "y^2 - 9*z^2", "x*z - 2*z^2", "y*z - 3*z^2"]);
        let gb = groebner(&g, &Limits::default()).unwrap();
        let p = point_of_degree_one_scheme(&gb).unwrap();
        assert_eq!(p, vec![f.from_i64(2), f.from_i64(3), f.one()]);
    }
}
