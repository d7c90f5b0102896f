use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Field, Monomial, PolyError, PolyRing, Scalar};

/// Multivariate polynomial in canonical form.
#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: Vec<(Monomial, Scalar)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn constant(ring: &Arc<PolyRing>, c: Scalar) -> Self {
        assert!(ring.field().owns(&c), "constant from a different field");
        let terms = if c.is_zero() { vec![] } else { vec![(Monomial::one(ring.nvars()), c)] };
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Self {
        assert!(i < ring.nvars(), "variable index out of range");
        Polynomial { ring: ring.clone(), terms: vec![(Monomial::var(ring.nvars(), i), ring.field().one())] }
    }

    pub fn monomial(ring: &Arc<PolyRing>, m: Monomial, c: Scalar) -> Self {
        Self::from_terms(ring, vec![(m, c)])
    }

    /// Collects arbitrary terms: merges duplicates, drops zeros, sorts.
    pub fn from_terms(ring: &Arc<PolyRing>, terms: Vec<(Monomial, Scalar)>) -> Self {
        let mut acc: HashMap<Monomial, Scalar> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            assert_eq!(m.nvars(), ring.nvars(), "monomial arity mismatch");
            assert!(ring.field().owns(&c), "coefficient from a different field");
            match acc.get_mut(&m) {
                Some(v) => *v = &*v + &c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let order = ring.order();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Polynomial { ring: ring.clone(), terms }
    }

    /// Linear form `sum coeffs[i] * x_i`.
    pub fn linear(ring: &Arc<PolyRing>, coeffs: &[Scalar]) -> Self {
        assert_eq!(coeffs.len(), ring.nvars());
        let terms = coeffs.iter().enumerate().map(|(i, c)| (Monomial::var(ring.nvars(), i), c.clone())).collect();
        Self::from_terms(ring, terms)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn field(&self) -> Field {
        self.ring.field()
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn leading_term(&self) -> Option<&(Monomial, Scalar)> {
        self.terms.first()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Common total degree of all terms; `None` for zero or mixed degrees.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.terms.first()?.0.degree();
        self.terms.iter().all(|(m, _)| m.degree() == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    /// Common bidegree under the ring's grading split.
    pub fn bidegree(&self) -> Option<(u32, u32)> {
        let split = self.ring.split()?;
        let b = self.terms.first()?.0.bidegree(split);
        self.terms.iter().all(|(m, _)| m.bidegree(split) == b).then_some(b)
    }

    fn check_ring(&self, other: &Polynomial) -> Result<(), PolyError> {
        if Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring {
            Ok(())
        } else if self.ring.field() != other.ring.field() {
            Err(PolyError::FieldMismatch(self.ring.field(), other.ring.field()))
        } else {
            Err(PolyError::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let order = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let sign = |c: &Scalar| if negate { -c } else { c.clone() };
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match order.cmp(ma, mb) {
                Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((mb.clone(), sign(cb)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = ca + &sign(cb);
                    if !c.is_zero() {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(|(m, c)| (m.clone(), sign(c))));
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        let mut acc: HashMap<Monomial, Scalar> = HashMap::with_capacity(self.num_terms() * other.num_terms());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.checked_mul(mb)?;
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(v) => *v = &*v + &c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let order = self.ring.order();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Ok(Polynomial { ring: self.ring.clone(), terms })
    }

    pub fn checked_pow(&self, e: u32) -> Result<Polynomial, PolyError> {
        let mut acc = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.checked_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    /// Multiplies by a single term `c * m`.
    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Result<Polynomial, PolyError> {
        if c.is_zero() {
            return Ok(Polynomial::zero(&self.ring));
        }
        let terms =
            self.terms.iter().map(|(a, b)| Ok((a.checked_mul(m)?, b * c))).collect::<Result<Vec<_>, PolyError>>()?;
        Ok(Polynomial { ring: self.ring.clone(), terms })
    }

    /// Exact value at a point.
    pub fn eval(&self, point: &[Scalar]) -> Result<Scalar, PolyError> {
        if point.len() != self.ring.nvars() {
            return Err(PolyError::PointLength { expected: self.ring.nvars(), got: point.len() });
        }
        let field = self.ring.field();
        if let Some(bad) = point.iter().find(|s| !field.owns(s)) {
            return Err(PolyError::FieldMismatch(field, bad.field()));
        }
        let mut acc = field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = &t * &point[i].pow(e as u64);
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Formal partial derivative in variable `var`.
    pub fn diff(&self, var: usize) -> Result<Polynomial, PolyError> {
        if var >= self.ring.nvars() {
            return Err(PolyError::IndexOutOfRange(var));
        }
        let field = self.ring.field();
        let terms = self
            .terms
            .iter()
            .filter_map(|(m, c)| m.diff(var).map(|(e, m2)| (m2, c * &field.from_i64(e as i64))))
            .collect();
        // Derivative of a sorted sequence stays sorted except where factors
        // vanish in characteristic p, which from_terms handles.
        Ok(Polynomial::from_terms(&self.ring, terms))
    }

    /// Composes with `assignment`: variable `i` of this ring is replaced by
    /// `assignment[i]` when present, otherwise by the variable of the same
    /// name in `target`.
    pub fn subst(
        &self,
        target: &Arc<PolyRing>,
        assignment: &HashMap<String, Polynomial>,
    ) -> Result<Polynomial, PolyError> {
        if target.field() != self.ring.field() {
            return Err(PolyError::FieldMismatch(self.ring.field(), target.field()));
        }
        let mut images = Vec::with_capacity(self.ring.nvars());
        for name in self.ring.names() {
            let img = match assignment.get(name) {
                Some(p) => {
                    if p.ring.field() != target.field() {
                        return Err(PolyError::FieldMismatch(target.field(), p.ring.field()));
                    }
                    if !p.ring.same_space(target) {
                        return Err(PolyError::RingMismatch);
                    }
                    p.reorder(target)
                }
                None => target.var_by_name(name).map_err(|_| PolyError::Unmapped(name.clone()))?,
            };
            images.push(img);
        }
        self.compose(target, &images)
    }

    /// Composes with images given positionally.
    pub fn compose(&self, target: &Arc<PolyRing>, images: &[Polynomial]) -> Result<Polynomial, PolyError> {
        assert_eq!(images.len(), self.ring.nvars());
        let mut power_cache: Vec<Vec<Polynomial>> = vec![vec![Polynomial::one(target)]; images.len()];
        let mut acc = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while power_cache[i].len() <= e as usize {
                    let next = power_cache[i].last().unwrap().checked_mul(&images[i])?;
                    power_cache[i].push(next);
                }
                t = t.checked_mul(&power_cache[i][e as usize])?;
            }
            acc = acc.checked_add(&t)?;
        }
        Ok(acc)
    }

    /// Same polynomial viewed in a ring with identical variables and field
    /// (the order or grading may differ).
    pub fn reorder(&self, target: &Arc<PolyRing>) -> Polynomial {
        assert!(self.ring.same_space(target), "reorder into a different space");
        if Arc::ptr_eq(&self.ring, target) || self.ring.order() == target.order() {
            return Polynomial { ring: target.clone(), terms: self.terms.clone() };
        }
        let mut terms = self.terms.clone();
        let order = target.order();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Polynomial { ring: target.clone(), terms }
    }

    /// Canonical scaling: monic over `F_p`; primitive integer form with
    /// positive leading coefficient over `Q`.
    pub fn normalized(&self) -> Polynomial {
        let Some((_, lc)) = self.terms.first() else {
            return self.clone();
        };
        match self.ring.field() {
            Field::Prime(_) => self.scale(&lc.inv().expect("nonzero leading coefficient")),
            Field::Rational => {
                let mut den = BigInt::one();
                let mut num = BigInt::zero();
                for (_, c) in &self.terms {
                    if let Scalar::Rational(r) = c {
                        den = den.lcm(r.denom());
                        num = num.gcd(r.numer());
                    }
                }
                let mut factor = BigRational::new(den, num);
                if lc.is_negative_rational() {
                    factor = -factor;
                }
                self.scale(&Scalar::Rational(factor))
            }
        }
    }

    pub fn make_monic(&self) -> Polynomial {
        match self.terms.first() {
            Some((_, lc)) => self.scale(&lc.inv().expect("nonzero leading coefficient")),
            None => self.clone(),
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = self.ring.names();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative_rational();
            let abs = if neg { -c } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(abs.to_string());
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[i].clone()),
                    _ => factors.push(format!("{}^{}", names[i], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

macro_rules! poly_op {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                self.$checked(&rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

poly_op!(Add, add, checked_add);
poly_op!(Sub, sub, checked_sub);
poly_op!(Mul, mul, checked_mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::parse_poly;

    fn qring(names: &[&str]) -> Arc<PolyRing> {
        PolyRing::new(names, Field::Rational).unwrap()
    }

    #[test]
    fn eval_on_twisted_cubic() {
        let r = qring(&["y1", "y2", "y3", "y4"]);
        let f = parse_poly("y2^2 - y1*y3", &r).unwrap();
        let q = Field::Rational;
        let pt: Vec<_> = [1, 2, 4, 8].iter().map(|&v| q.from_i64(v)).collect();
        assert!(f.eval(&pt).unwrap().is_zero());
        assert!(f.eval(&pt[..3]).is_err());
    }

    #[test]
    fn eval_over_f7() {
        let f7 = Field::Prime(7);
        let r = PolyRing::new(&["x", "y"], f7).unwrap();
        let f = parse_poly("x*y", &r).unwrap();
        assert_eq!(f.eval(&[f7.from_i64(3), f7.from_i64(5)]).unwrap(), f7.from_i64(1));
        assert!(f.eval(&[Field::Rational.one(), Field::Rational.one()]).is_err());
    }

    #[test]
    fn derivatives() {
        let r = qring(&["y1", "y2", "y3", "y4"]);
        let f = parse_poly("y2^2 - y1*y3", &r).unwrap();
        assert_eq!(f.diff(1).unwrap(), parse_poly("2*y2", &r).unwrap());
        assert!(parse_poly("7", &r).unwrap().diff(3).unwrap().is_zero());
        assert!(f.diff(4).is_err());
    }

    #[test]
    fn derivative_vanishing_mod_p() {
        let r = PolyRing::new(&["x"], Field::Prime(5)).unwrap();
        let f = parse_poly("x^5 + x^2", &r).unwrap();
        assert_eq!(f.diff(0).unwrap(), parse_poly("2*x", &r).unwrap());
    }

    #[test]
    fn substitution_onto_twisted_cubic_cone() {
        let r = qring(&["q1", "q2", "q3", "q4", "q5"]);
        let f = parse_poly("q2^2 - q1*q3", &r).unwrap();
        let t = qring(&["q2"]);
        let mut a = HashMap::new();
        a.insert("q1".to_string(), parse_poly("1", &t).unwrap());
        a.insert("q3".to_string(), parse_poly("q2^2", &t).unwrap());
        a.insert("q4".to_string(), parse_poly("q2^3", &t).unwrap());
        a.insert("q5".to_string(), parse_poly("0", &t).unwrap());
        assert!(f.subst(&t, &a).unwrap().is_zero());
        assert_eq!(f.subst(&r, &HashMap::new()).unwrap(), f);
    }

    #[test]
    fn rank_one_trace_becomes_incidence_form() {
        let names: Vec<String> = (1..=3).flat_map(|i| (1..=3).map(move |j| format!("d{i}{j}"))).collect();
        let r = qring(&names.iter().map(|s| s.as_str()).collect::<Vec<_>>());
        let tr = parse_poly("d11 + d22 + d33", &r).unwrap();
        let t = qring(&["y1", "y2", "y3", "x1", "x2", "x3"]);
        let mut a = HashMap::new();
        for i in 1..=3 {
            for j in 1..=3 {
                a.insert(format!("d{i}{j}"), parse_poly(&format!("y{i}*x{j}"), &t).unwrap());
            }
        }
        assert_eq!(tr.subst(&t, &a).unwrap(), parse_poly("y1*x1 + y2*x2 + y3*x3", &t).unwrap());
    }

    #[test]
    fn normalization() {
        let r = qring(&["x", "y"]);
        let f = parse_poly("-3*x^2 + 6*x*y", &r).unwrap();
        assert_eq!(f.normalized(), parse_poly("x^2 - 2*x*y", &r).unwrap());
        let g = parse_poly("1/2*x + 1/3*y", &r).unwrap();
        assert_eq!(g.normalized(), parse_poly("3*x + 2*y", &r).unwrap());
        let rp = PolyRing::new(&["x", "y"], Field::Prime(7)).unwrap();
        let h = parse_poly("3*x + y", &rp).unwrap();
        assert_eq!(h.normalized(), parse_poly("x + 5*y", &rp).unwrap());
    }

    #[test]
    fn bidegree_under_split() {
        let r = qring(&["x1", "x2", "y1", "y2"]).with_split(2);
        let f = parse_poly("x1*y1^2 + x2*y1*y2", &r).unwrap();
        assert_eq!(f.bidegree(), Some((1, 2)));
        assert_eq!(parse_poly("x1*y1 + y1^2", &r).unwrap().bidegree(), None);
    }

    #[test]
    fn mismatched_rings_error() {
        let a = parse_poly("x", &qring(&["x"])).unwrap();
        let b = parse_poly("x", &PolyRing::new(&["x"], Field::Prime(7)).unwrap()).unwrap();
        assert!(matches!(a.checked_add(&b), Err(PolyError::FieldMismatch(..))));
        let c = parse_poly("x", &qring(&["x", "y"])).unwrap();
        assert!(matches!(a.checked_mul(&c), Err(PolyError::RingMismatch)));
    }
}
