use std::collections::HashMap;
use std::sync::Arc;

use crate::polycore::{parse_poly, Field, PolyRing, Polynomial, Scalar};
use crate::rng;

use super::ideals::{g6c_names, G6C_CUBIC};
use super::VarError;

fn g6c_ring(field: Field) -> Arc<PolyRing> {
    PolyRing::new(&g6c_names(), field).expect("distinct names")
}

/// The cubic as the incidence pairing `<x(q), (p, r)>`, with `x` the vector
/// of quadrics in `q` paired against `p1..p3, r1..r5`.
pub fn incidence_cubic(ring: &Arc<PolyRing>) -> Result<Polynomial, VarError> {
    let x = ["q2^2 - q1*q3", "q1*q4 - q2*q3", "q3^2 - q2*q4", "q5*q1", "q5*q2", "q5*q3", "q5*q4", "q5^2"];
    let y = ["p1", "p2", "p3", "r1", "r2", "r3", "r4", "r5"];
    let mut total = Polynomial::zero(ring);
    for (xi, yi) in x.iter().zip(y) {
        let term = parse_poly(xi, ring)?.checked_mul(&ring.var_by_name(yi)?)?;
        total = total.checked_add(&term)?;
    }
    Ok(total)
}

/// True when the incidence pairing expands to the stored cubic.
pub fn cubic_identity_check() -> Result<bool, VarError> {
    let ring = g6c_ring(Field::Rational);
    let diff = incidence_cubic(&ring)?.checked_sub(&parse_poly(G6C_CUBIC, &ring)?)?;
    Ok(diff.is_zero())
}

/// Parameter ring and substitution for a component of the singular locus.
fn component(id: &str, field: Field) -> Result<(Arc<PolyRing>, HashMap<String, Polynomial>), VarError> {
    let names = g6c_names();
    let (params, rules): (Vec<&str>, Vec<(&str, &str)>) = match id {
        "G6C:q0" => (
            vec!["p1", "p2", "p3", "r1", "r2", "r3", "r4", "r5"],
            vec![("q1", "0"), ("q2", "0"), ("q3", "0"), ("q4", "0"), ("q5", "0")],
        ),
        "G6C:SF" => (
            vec!["q2", "p3", "r2", "r3", "r4", "r5"],
            vec![
                ("q1", "1"),
                ("q3", "q2^2"),
                ("q4", "q2^3"),
                ("q5", "0"),
                ("p1", "q2^2*p3"),
                ("p2", "q2*p3"),
                ("r1", "-q2*r2 - q2^2*r3 - q2^3*r4"),
            ],
        ),
        _ => return Err(VarError::UnknownComponent(id.to_string())),
    };
    let target = PolyRing::new(&params, field)?;
    let mut map = HashMap::new();
    for n in &names {
        let img = match rules.iter().find(|(k, _)| k == n) {
            Some((_, v)) => parse_poly(v, &target)?,
            None => target.var_by_name(n)?,
        };
        map.insert(n.clone(), img);
    }
    Ok((target, map))
}

/// Every partial derivative of the cubic vanishes identically on the
/// parametrized component (`"G6C:q0"` or `"G6C:SF"`).
pub fn sing_gradient_check(id: &str) -> Result<bool, VarError> {
    let field = Field::Rational;
    let (target, map) = component(id, field)?;
    let ring = g6c_ring(field);
    let f = parse_poly(G6C_CUBIC, &ring)?;
    for i in 0..ring.nvars() {
        if !f.diff(i)?.subst(&target, &map)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A random point of the cubic with `q5 != 0` (solving for `r5`) and
/// whether the gradient there is nonzero.
pub fn generic_gradient_nonzero(field: Field, seed: u64) -> Result<bool, VarError> {
    let ring = g6c_ring(field);
    let f = parse_poly(G6C_CUBIC, &ring)?;
    let mut r = rng::stream(seed, "g6c:generic");
    let mut pt = rng::vector(field, 13, &mut r);
    let q5 = rng::nonzero_scalar(field, &mut r);
    pt[12] = q5.clone();
    pt[7] = field.zero();
    // f = f|_{r5=0} + r5 * q5^2
    let rest = f.eval(&pt)?;
    pt[7] = (-&rest).try_div(&(&q5 * &q5))?;
    debug_assert!(f.eval(&pt)?.is_zero());
    let grad: Vec<Scalar> = (0..13).map(|i| f.diff(i)?.eval(&pt)).collect::<Result<_, _>>()?;
    Ok(grad.iter().any(|g| !g.is_zero()))
}

/// The four equations of the cone over the twisted cubic, `q5 = 0`, vanish
/// on the `S_F` parametrization.
pub fn twisted_cubic_cone_check() -> Result<bool, VarError> {
    let field = Field::Rational;
    let (target, map) = component("G6C:SF", field)?;
    let ring = g6c_ring(field);
    for src in ["q2^2 - q1*q3", "q1*q4 - q2*q3", "q3^2 - q2*q4", "q5"] {
        if !parse_poly(src, &ring)?.subst(&target, &map)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: Field = Field::Prime(32003);

    #[test]
    fn identity_holds() {
        assert!(cubic_identity_check().unwrap());
    }

    #[test]
    fn identity_numeric_spot_check() {
        let ring = g6c_ring(P);
        let a = incidence_cubic(&ring).unwrap();
        let b = parse_poly(G6C_CUBIC, &ring).unwrap();
        let mut r = rng::from_seed(9);
        for _ in 0..10 {
            let pt = rng::vector(P, 13, &mut r);
            assert_eq!(a.eval(&pt).unwrap(), b.eval(&pt).unwrap());
        }
        let mut pt = rng::vector(P, 13, &mut r);
        for x in &mut pt[8..] {
            *x = P.zero();
        }
        assert!(a.eval(&pt).unwrap().is_zero());
    }

    #[test]
    fn both_components_are_singular() {
        assert!(sing_gradient_check("G6C:q0").unwrap());
        assert!(sing_gradient_check("G6C:SF").unwrap());
        assert!(matches!(sing_gradient_check("G6C:x"), Err(VarError::UnknownComponent(_))));
    }

    #[test]
    fn generic_point_is_smooth() {
        for seed in 0..5 {
            assert!(generic_gradient_nonzero(P, seed).unwrap());
        }
    }

    #[test]
    fn sf_lies_on_twisted_cubic_cone() {
        assert!(twisted_cubic_cone_check().unwrap());
    }
}
