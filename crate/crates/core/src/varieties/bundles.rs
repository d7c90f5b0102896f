//! Chern data of the bundles `E` and `E⊥` over each base, assembled from
//! Euler-sequence pieces. Every bundle is stored through its dual.

use std::sync::Arc;

use crate::chow::{
    chern_dual, chern_twist, chern_whitney, make_ring, parse_class, BundleSpec, ChernPoly, ChowClass, ChowError,
    ChowRing, RingKind,
};

use super::CaseId;

/// The pair of bundles for one case plus the anticanonical class of the base.
#[derive(Clone, Debug)]
pub struct CaseBundles {
    pub case: CaseId,
    pub base: Arc<ChowRing>,
    pub e: BundleSpec,
    pub e_perp: BundleSpec,
    pub minus_ks: ChowClass,
}

fn cls(r: &Arc<ChowRing>, s: &str) -> ChowClass {
    parse_class(r, s).expect("built-in class")
}

fn line(c1: &ChowClass) -> ChernPoly {
    ChernPoly::line(c1).expect("codim-1 class")
}

fn sum(parts: &[ChernPoly]) -> ChernPoly {
    parts[1..].iter().fold(parts[0].clone(), |acc, p| chern_whitney(&acc, p).expect("same base"))
}

/// `T(-1)` pulled back along a map to `P^n` with hyperplane class `h`:
/// `Omega` has total class `(1 - h)^(n+1)`, so `T(-1) = (Omega(1))^*`.
fn tangent_minus_one(h: &ChowClass, n: i64) -> ChernPoly {
    let one = ChowClass::one(h.ring());
    let omega = ChernPoly::new(n, (&one - h).pow(n as u32 + 1)).expect("unipotent");
    chern_dual(&chern_twist(&omega, h).expect("codim-1 twist"))
}

/// Quotient of a trivial bundle of rank `n + 1` by a line subbundle with
/// first Chern class `-h`.
fn tautological_quotient(h: &ChowClass, n: i64) -> ChernPoly {
    let sub = line(&h.scale(-1));
    ChernPoly::new(n, sub.total().inverse().expect("unipotent")).expect("unipotent")
}

fn spec(label: &str, dual: ChernPoly, sections: usize) -> BundleSpec {
    BundleSpec::new(label, dual, sections).expect("positive rank")
}

/// The `E`-side and `E⊥`-side bundle data of a case.
pub fn bundle_chern_data(case: CaseId) -> Result<CaseBundles, ChowError> {
    let out = match case {
        CaseId::G4 => {
            let r = make_ring(RingKind::B6);
            let (h1, h2) = (cls(&r, "h1"), cls(&r, "h2"));
            let h12 = &h1 + &h2;
            // E⊥* = pi1^* T(-1) + pi2^* T(-1) + O(1,1)
            let perp = sum(&[tangent_minus_one(&h1, 2), tangent_minus_one(&h2, 2), line(&h12)]);
            // E* = O(1,0) + O(0,1) + (traceless matrices)/O(-1,-1)
            let e = sum(&[line(&h1), line(&h2), tautological_quotient(&h12, 7)]);
            CaseBundles {
                case,
                minus_ks: h12.scale(2),
                e: spec("G4:E", e, 14),
                e_perp: spec("G4:E_perp", perp, 14),
                base: r,
            }
        }
        CaseId::G5 => {
            let r = make_ring(RingKind::Pn(3));
            let h = cls(&r, "h");
            let t = tangent_minus_one(&h, 3);
            let o1 = line(&h);
            let perp = sum(&[o1.clone(), o1.clone(), o1.clone(), t.clone()]);
            let e = sum(&[t.clone(), t.clone(), t, o1]);
            CaseBundles {
                case,
                minus_ks: h.scale(4),
                e: spec("G5:E", e, 16),
                e_perp: spec("G5:E_perp", perp, 16),
                base: r,
            }
        }
        CaseId::G6Q => {
            let r = make_ring(RingKind::Q3);
            let h = cls(&r, "h");
            // universal quotient of G(2,4) restricted to the quadric: c = 1 + h + l
            let q = ChernPoly::new(2, cls(&r, "1 + h + l"))?;
            let u_dual = q.clone();
            // Q3 spans P4
            let t = tangent_minus_one(&h, 4);
            let perp = sum(&[q, t.clone(), line(&h)]);
            let e = sum(&[u_dual, t, line(&h)]);
            CaseBundles {
                case,
                minus_ks: h.scale(3),
                e: spec("G6Q:E", e, 14),
                e_perp: spec("G6Q:E_perp", perp, 14),
                base: r,
            }
        }
        CaseId::G6C => {
            let r = make_ring(RingKind::AcHat);
            let ca = cls(&r, "c_A");
            let cb = &ca - &cls(&r, "F_a");
            let perp = ChernPoly::new(
                8,
                &(&(&(&ChowClass::one(&r) + &(&ca + &cb)) + &(&(&ca * &cb) + &ca.pow(2)))
                    + &(&(&ca.pow(2) * &cb) + &cls(&r, "5L")))
                    + &(&(&cb * &cls(&r, "5L")) + &cls(&r, "5pt")),
            )?;
            let e = chern_whitney(&line(&ca), &tautological_quotient(&cb, 4))?;
            CaseBundles {
                case,
                minus_ks: cls(&r, "3c_A - F_a"),
                e: spec("G6C:E", e, 13),
                e_perp: spec("G6C:E_perp", perp, 13),
                base: r,
            }
        }
        CaseId::G8 => {
            let r = make_ring(RingKind::B5);
            let h = cls(&r, "H");
            let u = ChernPoly::new(2, cls(&r, "1 - H + 2l"))?;
            // 0 -> U -> V' -> Q -> 0 with dim V' = 5
            let q = ChernPoly::new(3, u.total().inverse()?)?;
            let perp = chern_whitney(&q, &tangent_minus_one(&h, 6))?;
            let e = chern_whitney(&chern_dual(&u), &line(&h))?;
            CaseBundles {
                case,
                minus_ks: h.scale(2),
                e: spec("G8:E", e, 12),
                e_perp: spec("G8:E_perp", perp, 12),
                base: r,
            }
        }
    };
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chow::{canonical_class, pushforward_degree};

    fn data(c: CaseId) -> CaseBundles {
        bundle_chern_data(c).unwrap()
    }

    #[test]
    fn stored_classes() {
        let g8 = data(CaseId::G8);
        assert_eq!(g8.e_perp.dual_chern.total(), &cls(&g8.base, "1 + 2H + 13l + 14pt"));
        let g5 = data(CaseId::G5);
        assert_eq!(g5.e_perp.dual_chern.total(), &cls(&g5.base, "1 + 4h + 7h^2 + 8h^3"));
        let q = data(CaseId::G6Q);
        assert_eq!(q.e.dual_chern, q.e_perp.dual_chern);
    }

    #[test]
    fn ranks_add_up_to_sections() {
        for c in CaseId::ALL {
            let d = data(c);
            assert_eq!((d.e.rank + d.e_perp.rank) as usize, d.e.sections, "{c}");
        }
    }

    #[test]
    fn degrees_and_canonical_classes() {
        let expect =
            [(CaseId::G4, 14, 5, "0"), (CaseId::G5, 16, 6, "0"), (CaseId::G6C, 3, 8, "c_A"), (CaseId::G8, 2, 9, "0")];
        for (c, deg, k, base) in expect {
            let d = data(c);
            assert_eq!(pushforward_degree(&d.e_perp), deg, "{c}");
            let (kk, cc) = canonical_class(&d.e_perp, &d.minus_ks).unwrap();
            assert_eq!((kk, cc), (k, cls(&d.base, base)), "{c}");
        }
    }

    #[test]
    fn q_type_self_dual_degree() {
        let d = data(CaseId::G6Q);
        assert_eq!(pushforward_degree(&d.e), pushforward_degree(&d.e_perp));
    }
}
