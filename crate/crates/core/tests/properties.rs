//! Property tests for the algebraic identities every engine must satisfy.

use std::sync::Arc;

use proptest::prelude::*;

use keyvar::chow::{
    chern_dual, chern_twist, chern_whitney, make_ring, segre_series, ChernPoly, ChowClass, ChowRing, RingKind,
};
use keyvar::groebner::{groebner, normal_form, Limits};
use keyvar::lindual::{lemma22_verify, Subspace};
use keyvar::multigraded::{ci_hilbert_value, BigradedSeries, CISpec};
use keyvar::piclattice::{DivisorClass, SurfaceLattice};
use keyvar::polycore::{parse_poly, Field, PolyRing, Polynomial, Scalar};
use keyvar::rng;

const RINGS: [RingKind; 5] = [RingKind::Pn(3), RingKind::B5, RingKind::B6, RingKind::Q3, RingKind::AcHat];

/// `1 + ...` with small parts in codimension `1..=top`, drawn from `coeffs`
/// cyclically.
fn class_from(ring: &Arc<ChowRing>, top: usize, coeffs: &[i64]) -> ChowClass {
    let mut it = coeffs.iter().cycle();
    let mut total = ChowClass::one(ring);
    for k in 1..=top.min(ring.dim()) {
        let v: Vec<i64> = (0..ring.rank_in(k)).map(|_| *it.next().unwrap()).collect();
        total = &total + &ChowClass::from_coords(ring, k, &v).unwrap();
    }
    total
}

/// Chern classes vanish above the rank, as for an actual bundle.
fn chern(ring: &Arc<ChowRing>, rank: i64, coeffs: &[i64]) -> ChernPoly {
    ChernPoly::new(rank, class_from(ring, rank as usize, coeffs)).unwrap()
}

fn divisor(ring: &Arc<ChowRing>, coeffs: &[i64]) -> ChowClass {
    let v: Vec<i64> = (0..ring.rank_in(1)).map(|i| coeffs[i % coeffs.len()]).collect();
    ChowClass::from_coords(ring, 1, &v).unwrap()
}

fn small() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=3, 1..12)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn whitney_is_commutative_and_associative(r in 0..5usize, a in small(), b in small(), c in small()) {
        let ring = make_ring(RINGS[r]);
        let (a, b, c) = (chern(&ring, 2, &a), chern(&ring, 3, &b), chern(&ring, 1, &c));
        let ab = chern_whitney(&a, &b).unwrap();
        prop_assert_eq!(&ab, &chern_whitney(&b, &a).unwrap());
        prop_assert_eq!(ab.rank, 5);
        let left = chern_whitney(&ab, &c).unwrap();
        let right = chern_whitney(&a, &chern_whitney(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn dual_is_an_involution_compatible_with_sums(r in 0..5usize, a in small(), b in small()) {
        let ring = make_ring(RINGS[r]);
        let (a, b) = (chern(&ring, 2, &a), chern(&ring, 2, &b));
        prop_assert_eq!(&chern_dual(&chern_dual(&a)), &a);
        let lhs = chern_dual(&chern_whitney(&a, &b).unwrap());
        prop_assert_eq!(lhs, chern_whitney(&chern_dual(&a), &chern_dual(&b)).unwrap());
    }

    #[test]
    fn segre_is_inverse_and_multiplicative(r in 0..5usize, a in small(), b in small()) {
        let ring = make_ring(RINGS[r]);
        let (a, b) = (chern(&ring, 3, &a), chern(&ring, 2, &b));
        let sa = segre_series(&a);
        prop_assert_eq!(a.total() * &sa, ChowClass::one(&ring));
        let sab = segre_series(&chern_whitney(&a, &b).unwrap());
        prop_assert_eq!(sab, &sa * &segre_series(&b));
    }

    #[test]
    fn twists_compose(r in 0..5usize, a in small(), d1 in small(), d2 in small()) {
        let ring = make_ring(RINGS[r]);
        let c = chern(&ring, 3, &a);
        let (x, y) = (divisor(&ring, &d1), divisor(&ring, &d2));
        prop_assert_eq!(&chern_twist(&c, &ChowClass::zero(&ring)).unwrap(), &c);
        let twice = chern_twist(&chern_twist(&c, &x).unwrap(), &y).unwrap();
        prop_assert_eq!(twice, chern_twist(&c, &(&x + &y)).unwrap());
        // a line bundle twisted by M is L + M
        let l = ChernPoly::line(&x).unwrap();
        prop_assert_eq!(chern_twist(&l, &y).unwrap(), ChernPoly::line(&(&x + &y)).unwrap());
    }
}

proptest! {
    #[test]
    fn lattice_pairing_is_symmetric_and_bilinear(
        k in 0usize..9,
        a in prop::collection::vec(-6i64..=6, 10),
        b in prop::collection::vec(-6i64..=6, 10),
        c in prop::collection::vec(-6i64..=6, 10),
        s in -4i64..=4,
    ) {
        let l = SurfaceLattice::new(k);
        let cls = |v: &[i64]| DivisorClass(v[..=k].to_vec());
        let (a, b, c) = (cls(&a), cls(&b), cls(&c));
        prop_assert_eq!(l.pairing(&a, &b).unwrap(), l.pairing(&b, &a).unwrap());
        let lhs = l.pairing(&a.scale(s).add(&b), &c).unwrap();
        prop_assert_eq!(lhs, s * l.pairing(&a, &c).unwrap() + l.pairing(&b, &c).unwrap());
        // K is characteristic, so adjunction never hits an odd number
        prop_assert!(l.genus_of_class(&a).is_ok());
    }

    #[test]
    fn lattice_special_classes(k in 2usize..9, i in 1usize..9, j in 1usize..9) {
        prop_assume!(i <= k && j <= k && i != j);
        let l = SurfaceLattice::new(k);
        let kk = l.canonical();
        prop_assert_eq!(l.pairing(&kk, &kk).unwrap(), 9 - k as i64);
        let e = DivisorClass::exceptional(k, i);
        prop_assert_eq!(l.genus_of_class(&e).unwrap(), 0);
        prop_assert_eq!(l.pairing(&e, &kk).unwrap(), -1);
        let line = DivisorClass::line(k).add(&DivisorClass::exceptional(k, i).scale(-1)).add(&DivisorClass::exceptional(k, j).scale(-1));
        prop_assert_eq!(l.pairing(&line, &line).unwrap(), -1);
        prop_assert_eq!(l.genus_of_class(&line).unwrap(), 0);
    }

    #[test]
    fn bigraded_series_matches_inclusion_exclusion(
        m in 1usize..4,
        n in 1usize..4,
        degs in prop::collection::vec((0u32..3, 0u32..3), 0..4),
    ) {
        let degs: Vec<(u32, u32)> = degs.into_iter().filter(|&d| d != (0, 0)).take(m + n).collect();
        let spec = CISpec::new(m, n, &degs).unwrap();
        let series = BigradedSeries::expand(&spec, 7, 7);
        for a in 0..=7 {
            for b in 0..=7 {
                prop_assert_eq!(series.get(a, b).unwrap(), ci_hilbert_value(&spec, a as i64, b as i64));
            }
        }
    }

    #[test]
    fn lemma22_holds_on_random_pairs(n in 1usize..10, a in 0usize..10, b in 0usize..10, seed in any::<u64>()) {
        let f = Field::Prime(101);
        let mut r = rng::from_seed(seed);
        let e = Subspace::random(f, n, a.min(n), &mut r);
        let l = Subspace::random(f, n, b.min(n), &mut r);
        prop_assert!(lemma22_verify(&e, &l).unwrap().holds);
        prop_assert_eq!(&e.annihilator().annihilator(), &e);
        let sum = e.sum(&l).unwrap().dim();
        prop_assert_eq!(e.intersect_dim(&l).unwrap() + sum, e.dim() + l.dim());
    }
}

fn quad_ring(field: Field) -> Arc<PolyRing> {
    PolyRing::new(&["x", "y", "z", "w"], field).unwrap()
}

fn random_form(ring: &Arc<PolyRing>, deg: u32, coeffs: &[i64]) -> Polynomial {
    let vars = ring.vars();
    let mut monos = vec![Polynomial::one(ring)];
    for _ in 0..deg {
        let mut next = Vec::new();
        for m in &monos {
            for v in &vars {
                let p = m * v;
                if !next.contains(&p) {
                    next.push(p);
                }
            }
        }
        monos = next;
    }
    let f = ring.field();
    let mut out = Polynomial::zero(ring);
    for (m, c) in monos.iter().zip(coeffs.iter().cycle()) {
        out = &out + &m.scale(&f.from_i64(*c));
    }
    out
}

fn point(f: Field, v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| f.from_i64(x)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn eval_and_diff_are_ring_maps(
        a in prop::collection::vec(-9i64..=9, 1..20),
        b in prop::collection::vec(-9i64..=9, 1..20),
        pt in prop::collection::vec(-50i64..=50, 4),
    ) {
        let ring = quad_ring(Field::Rational);
        let (f, g) = (random_form(&ring, 2, &a), random_form(&ring, 3, &b));
        let p = point(Field::Rational, &pt);
        prop_assert_eq!((&f * &g).eval(&p).unwrap(), &f.eval(&p).unwrap() * &g.eval(&p).unwrap());
        prop_assert_eq!((&f + &g).eval(&p).unwrap(), &f.eval(&p).unwrap() + &g.eval(&p).unwrap());
        for i in 0..4 {
            let lhs = (&f * &g).diff(i).unwrap();
            let rhs = &(&f.diff(i).unwrap() * &g) + &(&f * &g.diff(i).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
        prop_assert_eq!(parse_poly(&g.to_string(), &ring).unwrap(), g);
    }

    #[test]
    fn groebner_basis_reduces_its_ideal(
        a in prop::collection::vec(-20i64..=20, 1..12),
        b in prop::collection::vec(-20i64..=20, 1..12),
        c in prop::collection::vec(-20i64..=20, 1..12),
    ) {
        let ring = quad_ring(Field::Prime(101));
        let gens = vec![random_form(&ring, 2, &a), random_form(&ring, 2, &b), random_form(&ring, 3, &c)];
        prop_assume!(gens.iter().all(|g| !g.is_zero()));
        let gb = groebner(&gens, &Limits::default()).unwrap();
        prop_assert!(gb.certify());
        for g in &gens {
            prop_assert!(normal_form(g, &gb).unwrap().is_zero());
        }
        let combo = &(&gens[0] * &ring.var(3)) + &(&gens[1] * &ring.var(0));
        prop_assert!(gb.contains(&combo).unwrap());
    }

    #[test]
    fn streams_are_deterministic(seed in any::<u64>(), label in "[a-z:]{1,12}") {
        use rand::Rng;
        let x: [u64; 4] = rng::stream(seed, &label).gen();
        let y: [u64; 4] = rng::stream(seed, &label).gen();
        prop_assert_eq!(x, y);
        prop_assert_eq!(rng::derive(seed, &label), rng::derive(seed, &label));
    }
}
