use std::cmp::Ordering;

use crate::polycore::{Monomial, MonomialOrder};

use super::coeffs::Coeffs;
use super::{GbError, Limits, Stats};

pub(crate) type Terms<E> = Vec<(Monomial, E)>;

struct Element<E> {
    terms: Terms<E>,
    mask: u64,
}

impl<E> Element<E> {
    fn lead(&self) -> &Monomial {
        &self.terms[0].0
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

pub(crate) type GbOutput<E> = Result<(Vec<Terms<E>>, Stats), GbError>;

pub(crate) struct Engine<'a, C: Coeffs> {
    pub c: &'a C,
    pub order: &'a MonomialOrder,
}

impl<C: Coeffs> Engine<'_, C> {
    fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b)
    }

    pub fn make_monic(&self, terms: &mut Terms<C::E>) {
        if let Some((_, lc)) = terms.first() {
            let inv = self.c.inv(lc);
            for (_, x) in terms.iter_mut() {
                *x = self.c.mul(x, &inv);
            }
        }
    }

    /// `a + c * t * b`, both inputs sorted descending.
    fn axpy(&self, a: &[(Monomial, C::E)], c: &C::E, t: &Monomial, b: &[(Monomial, C::E)]) -> Terms<C::E> {
        let mut out = Vec::with_capacity(a.len() + b.len());
        let mut i = 0;
        let mut bi = b.iter().map(|(m, x)| (t.checked_mul(m).expect("exponent overflow"), self.c.mul(c, x)));
        let mut next_b = bi.next();
        while let Some((mb, xb)) = next_b.take() {
            while i < a.len() && self.cmp(&a[i].0, &mb) == Ordering::Greater {
                out.push(a[i].clone());
                i += 1;
            }
            if i < a.len() && a[i].0 == mb {
                let s = self.c.add(&a[i].1, &xb);
                if !self.c.is_zero(&s) {
                    out.push((mb, s));
                }
                i += 1;
            } else {
                out.push((mb, xb));
            }
            next_b = bi.next();
        }
        out.extend_from_slice(&a[i..]);
        out
    }

    fn find_divisor(&self, m: &Monomial, basis: &[Element<C::E>], active: &[usize]) -> Option<usize> {
        let mask = m.support_mask();
        active.iter().copied().find(|&k| {
            let e = &basis[k];
            e.mask & !mask == 0 && e.lead().divides(m)
        })
    }

    /// Full reduction of `f` by the active, monic elements of `basis`.
    fn reduce(&self, f: Terms<C::E>, basis: &[Element<C::E>], active: &[usize]) -> Terms<C::E> {
        let mut p = f;
        let mut pos = 0;
        let mut out = Vec::new();
        while pos < p.len() {
            let (m, c) = &p[pos];
            match self.find_divisor(m, basis, active) {
                Some(k) => {
                    let g = &basis[k].terms;
                    let t = g[0].0.quotient_of(m);
                    let neg = self.c.neg(c);
                    p = self.axpy(&p[pos + 1..], &neg, &t, &g[1..]);
                    pos = 0;
                }
                None => {
                    out.push(p[pos].clone());
                    pos += 1;
                }
            }
        }
        out
    }

    fn spoly(&self, a: &Element<C::E>, b: &Element<C::E>, lcm: &Monomial) -> Terms<C::E> {
        let ta = a.lead().quotient_of(lcm);
        let tb = b.lead().quotient_of(lcm);
        let one = self.c.one();
        let ma: Terms<C::E> =
            a.terms[1..].iter().map(|(m, x)| (ta.checked_mul(m).expect("exponent overflow"), x.clone())).collect();
        self.axpy(&ma, &self.c.neg(&one), &tb, &b.terms[1..])
    }

    /// Buchberger with normal selection and Gebauer–Möller pruning. Inputs
    /// must be homogeneous, nonzero and sorted.
    pub fn groebner(&self, mut gens: Vec<Terms<C::E>>, limits: &Limits) -> GbOutput<C::E> {
        gens.sort_by_key(|g| g[0].0.degree());
        let mut gens = gens.into_iter().peekable();
        let mut basis: Vec<Element<C::E>> = Vec::new();
        let mut active: Vec<usize> = Vec::new();
        let mut pairs: Vec<Pair> = Vec::new();
        let mut stats = Stats::default();

        loop {
            let pair_pos = pairs
                .iter()
                .enumerate()
                .min_by(|(_, a), (_, b)| (a.lcm.degree(), a.j, a.i).cmp(&(b.lcm.degree(), b.j, b.i)))
                .map(|(k, _)| k);
            let pair_deg = pair_pos.map(|k| pairs[k].lcm.degree());
            let gen_deg = gens.peek().map(|g| g[0].0.degree());
            let take_gen = match (gen_deg, pair_deg) {
                (None, None) => break,
                (Some(g), Some(p)) => g <= p,
                (Some(_), None) => true,
                (None, Some(_)) => false,
            };
            let deg = if take_gen { gen_deg.unwrap() } else { pair_deg.unwrap() };
            if deg > limits.max_degree {
                return Err(GbError::Limit {
                    reason: format!("S-pair degree {deg} exceeds cap {}", limits.max_degree),
                    degree: deg,
                    basis: active.len(),
                    pairs: stats.pairs_reduced,
                });
            }
            stats.max_degree = stats.max_degree.max(deg);
            let candidate = if take_gen {
                gens.next().unwrap()
            } else {
                let pair = pairs.swap_remove(pair_pos.unwrap());
                stats.pairs_reduced += 1;
                self.spoly(&basis[pair.i], &basis[pair.j], &pair.lcm)
            };
            let mut h = self.reduce(candidate, &basis, &active);
            if h.is_empty() {
                stats.zero_reductions += 1;
                continue;
            }
            self.make_monic(&mut h);
            let mask = h[0].0.support_mask();
            basis.push(Element { terms: h, mask });
            let hi = basis.len() - 1;
            self.update(hi, &basis, &mut active, &mut pairs);
            if active.len() > limits.max_basis {
                return Err(GbError::Limit {
                    reason: format!("basis size exceeds cap {}", limits.max_basis),
                    degree: deg,
                    basis: active.len(),
                    pairs: stats.pairs_reduced,
                });
            }
        }

        // interreduce: drop redundant leads, then tail-reduce each element
        let leads: Vec<usize> = active
            .iter()
            .copied()
            .filter(|&k| !active.iter().any(|&o| o != k && basis[o].lead().divides(basis[k].lead())))
            .collect();
        let mut out = Vec::with_capacity(leads.len());
        for &k in &leads {
            let others: Vec<usize> = leads.iter().copied().filter(|&o| o != k).collect();
            let e = &basis[k];
            let mut tail = self.reduce(e.terms[1..].to_vec(), &basis, &others);
            tail.insert(0, e.terms[0].clone());
            out.push(tail);
        }
        out.sort_by(|a, b| self.cmp(&a[0].0, &b[0].0));
        stats.basis_size = out.len();
        Ok((out, stats))
    }

    fn update(&self, h: usize, basis: &[Element<C::E>], active: &mut Vec<usize>, pairs: &mut Vec<Pair>) {
        let lt_h = basis[h].lead().clone();
        let cands: Vec<(usize, Monomial, bool)> = active
            .iter()
            .map(|&g| {
                let lg = basis[g].lead();
                (g, lg.lcm(&lt_h), lg.is_coprime(&lt_h))
            })
            .collect();
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        for (idx, (g, l, coprime)) in cands.iter().enumerate() {
            let dominated =
                cands[idx + 1..].iter().any(|(_, l2, _)| l2.divides(l)) || kept.iter().any(|(_, l2, _)| l2.divides(l));
            if *coprime || !dominated {
                kept.push((*g, l.clone(), *coprime));
            }
        }
        pairs.retain(|p| {
            !(lt_h.divides(&p.lcm) && basis[p.i].lead().lcm(&lt_h) != p.lcm && lt_h.lcm(basis[p.j].lead()) != p.lcm)
        });
        for (g, l, coprime) in kept {
            if !coprime {
                pairs.push(Pair { i: g, j: h, lcm: l });
            }
        }
        active.retain(|&g| !lt_h.divides(basis[g].lead()));
        active.push(h);
    }

    /// Remainder of `f` modulo a reduced basis.
    pub fn normal_form(&self, f: Terms<C::E>, basis: &[Terms<C::E>]) -> Terms<C::E> {
        let elems: Vec<Element<C::E>> =
            basis.iter().map(|t| Element { mask: t[0].0.support_mask(), terms: t.clone() }).collect();
        let active: Vec<usize> = (0..elems.len()).collect();
        self.reduce(f, &elems, &active)
    }

    /// Reduces every S-polynomial of `basis` and reports the first pair with
    /// a nonzero remainder.
    pub fn certify(&self, basis: &[Terms<C::E>]) -> Option<(usize, usize)> {
        let elems: Vec<Element<C::E>> =
            basis.iter().map(|t| Element { mask: t[0].0.support_mask(), terms: t.clone() }).collect();
        let active: Vec<usize> = (0..elems.len()).collect();
        for j in 0..elems.len() {
            for i in 0..j {
                let l = elems[i].lead().lcm(elems[j].lead());
                if !self.reduce(self.spoly(&elems[i], &elems[j], &l), &elems, &active).is_empty() {
                    return Some((i, j));
                }
            }
        }
        None
    }
}
