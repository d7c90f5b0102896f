use std::fmt;
use std::sync::Arc;

use super::ChowError;

/// Finitely presented commutative graded ring with integer structure
/// constants and an integration functional on the top codimension.
#[derive(Debug, PartialEq, Eq)]
pub struct ChowRing {
    name: String,
    labels: Vec<Vec<String>>,
    // mult[c1][c2][i][j]: product of basis i in codim c1 with basis j in codim c2
    mult: Vec<Vec<Vec<Vec<Vec<i64>>>>>,
    integral: Vec<i64>,
}

impl ChowRing {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len() - 1
    }

    pub fn rank_in(&self, codim: usize) -> usize {
        self.labels.get(codim).map_or(0, |l| l.len())
    }

    pub fn labels(&self, codim: usize) -> &[String] {
        &self.labels[codim]
    }

    pub(crate) fn product(&self, c1: usize, i: usize, c2: usize, j: usize) -> &[i64] {
        &self.mult[c1][c2][i][j]
    }

    pub(crate) fn integral(&self) -> &[i64] {
        &self.integral
    }
}

impl fmt::Display for ChowRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (dim {})", self.name, self.dim())
    }
}

/// Products indexed by `[codim a][index][codim b][index]`, `None` until set.
type PendingTable = Vec<Vec<Vec<Vec<Option<Vec<i64>>>>>>;

/// Incremental construction of a [`ChowRing`]. Products involving the unit
/// are implicit; every other unordered pair of basis classes whose codims
/// sum to at most the dimension must be given exactly once.
pub struct RingBuilder {
    name: String,
    labels: Vec<Vec<String>>,
    mult: PendingTable,
    integral: Vec<i64>,
}

impl RingBuilder {
    /// `labels[k]` names the basis of codimension `k >= 1`.
    pub fn new(name: &str, labels: &[&[&str]]) -> Self {
        let mut all = vec![vec!["1".to_string()]];
        all.extend(labels.iter().map(|l| l.iter().map(|s| s.to_string()).collect::<Vec<_>>()));
        let d = all.len();
        let mut mult = vec![vec![Vec::new(); d]; d];
        for c1 in 0..d {
            for c2 in 0..d {
                let mut m = vec![vec![None; all[c2].len()]; all[c1].len()];
                if c1 + c2 < d {
                    for (i, row) in m.iter_mut().enumerate() {
                        for (j, cell) in row.iter_mut().enumerate() {
                            if c1 == 0 || c2 == 0 {
                                let mut v = vec![0; all[c1 + c2].len()];
                                v[if c1 == 0 { j } else { i }] = 1;
                                *cell = Some(v);
                            }
                        }
                    }
                } else {
                    for row in m.iter_mut() {
                        for cell in row.iter_mut() {
                            *cell = Some(Vec::new());
                        }
                    }
                }
                mult[c1][c2] = m;
            }
        }
        RingBuilder { name: name.to_string(), labels: all, mult, integral: Vec::new() }
    }

    fn index(&self, label: &str) -> (usize, usize) {
        for (c, ls) in self.labels.iter().enumerate() {
            if let Some(i) = ls.iter().position(|l| l == label) {
                return (c, i);
            }
        }
        panic!("unknown basis label {label}");
    }

    /// Sets `a * b = sum coeffs[k] * basis_k` in codimension `codim(a) + codim(b)`.
    pub fn set(mut self, a: &str, b: &str, coeffs: &[i64]) -> Self {
        let (c1, i) = self.index(a);
        let (c2, j) = self.index(b);
        assert_eq!(coeffs.len(), self.labels[c1 + c2].len(), "product {a}*{b} has the wrong length");
        self.mult[c1][c2][i][j] = Some(coeffs.to_vec());
        self.mult[c2][c1][j][i] = Some(coeffs.to_vec());
        self
    }

    pub fn integral(mut self, values: &[i64]) -> Self {
        self.integral = values.to_vec();
        self
    }

    pub fn build(self) -> Result<Arc<ChowRing>, ChowError> {
        let name = self.name.clone();
        let d = self.labels.len() - 1;
        if self.labels[d].len() != self.integral.len() || self.integral.iter().all(|&v| v == 0) {
            return Err(ChowError::InvalidRing(name, "integration must be nonzero on the top codimension".into()));
        }
        let mut mult = Vec::with_capacity(d + 1);
        for (c1, per) in self.mult.into_iter().enumerate() {
            let mut a = Vec::with_capacity(d + 1);
            for (c2, m) in per.into_iter().enumerate() {
                let mut rows = Vec::new();
                for (i, row) in m.into_iter().enumerate() {
                    let mut r = Vec::new();
                    for (j, cell) in row.into_iter().enumerate() {
                        match cell {
                            Some(v) => r.push(v),
                            None => {
                                return Err(ChowError::InvalidRing(
                                    name,
                                    format!("missing product {} * {}", self.labels[c1][i], self.labels[c2][j]),
                                ))
                            }
                        }
                    }
                    rows.push(r);
                }
                a.push(rows);
            }
            mult.push(a);
        }
        let ring = ChowRing { name, labels: self.labels, mult, integral: self.integral };
        ring.check_associative()?;
        Ok(Arc::new(ring))
    }
}

impl ChowRing {
    fn mul_vec(&self, c1: usize, a: &[i64], c2: usize, b: &[i64]) -> Vec<i64> {
        let c = c1 + c2;
        if c > self.dim() {
            return Vec::new();
        }
        let mut out = vec![0; self.rank_in(c)];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y == 0 {
                    continue;
                }
                for (k, &z) in self.mult[c1][c2][i][j].iter().enumerate() {
                    out[k] += x * y * z;
                }
            }
        }
        out
    }

    fn check_associative(&self) -> Result<(), ChowError> {
        let d = self.dim();
        let unit = |c: usize, i: usize| {
            let mut v = vec![0; self.rank_in(c)];
            v[i] = 1;
            v
        };
        for c1 in 1..=d {
            for c2 in c1..=d {
                for c3 in c2..=d {
                    if c1 + c2 + c3 > d {
                        continue;
                    }
                    for i in 0..self.rank_in(c1) {
                        for j in 0..self.rank_in(c2) {
                            for k in 0..self.rank_in(c3) {
                                let (a, b, c) = (unit(c1, i), unit(c2, j), unit(c3, k));
                                let left = self.mul_vec(c1 + c2, &self.mul_vec(c1, &a, c2, &b), c3, &c);
                                let right = self.mul_vec(c1, &a, c2 + c3, &self.mul_vec(c2, &b, c3, &c));
                                let swapped = self.mul_vec(c1 + c3, &self.mul_vec(c1, &a, c3, &c), c2, &b);
                                if left != right || left != swapped {
                                    return Err(ChowError::InvalidRing(
                                        self.name.clone(),
                                        format!(
                                            "not associative on ({}, {}, {})",
                                            self.labels[c1][i], self.labels[c2][j], self.labels[c3][k]
                                        ),
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}
