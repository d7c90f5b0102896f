use std::sync::Arc;

use crate::polycore::{parse_poly, Field, PolyRing, Polynomial};

use super::{CaseId, DualModel, VarError};

pub(crate) fn g4_names() -> Vec<String> {
    let mut v: Vec<String> = (1..=3).map(|i| format!("p{i}")).collect();
    v.extend((1..=3).map(|i| format!("q{i}")));
    for i in 1..=3 {
        for j in 1..=3 {
            v.push(format!("d{i}{j}"));
        }
    }
    v
}

pub(crate) fn g5_names() -> Vec<String> {
    let mut v = Vec::new();
    for i in 1..=4 {
        for j in 1..=3 {
            v.push(format!("d{i}{j}"));
        }
    }
    v.extend((1..=4).map(|i| format!("p{i}")));
    v
}

pub(crate) fn g6c_names() -> Vec<String> {
    let mut v: Vec<String> = (1..=3).map(|i| format!("p{i}")).collect();
    v.extend((1..=5).map(|i| format!("r{i}")));
    v.extend((1..=5).map(|i| format!("q{i}")));
    v
}

fn p(src: &str, ring: &Arc<PolyRing>) -> Polynomial {
    parse_poly(src, ring).expect("built-in equation parses")
}

/// Entries of the adjugate of the 3x3 matrix `d`, row-major: entry `(i, j)`
/// is the signed minor of `d` with row `j` and column `i` deleted.
pub(crate) fn adjugate_entries() -> Vec<String> {
    let mut out = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            let rows: Vec<usize> = (0..3).filter(|&r| r != j).collect();
            let cols: Vec<usize> = (0..3).filter(|&c| c != i).collect();
            let e = |r: usize, c: usize| format!("d{}{}", r + 1, c + 1);
            let minor = format!(
                "{}*{} - {}*{}",
                e(rows[0], cols[0]),
                e(rows[1], cols[1]),
                e(rows[0], cols[1]),
                e(rows[1], cols[0])
            );
            out.push(if (i + j) % 2 == 0 { minor } else { format!("-({minor})") });
        }
    }
    out
}

fn g4(field: Field) -> DualModel {
    let ring = PolyRing::new(&g4_names(), field).unwrap();
    let mut gens = Vec::new();
    for j in 1..=3 {
        gens.push(p(&format!("p1*d1{j} + p2*d2{j} + p3*d3{j}"), &ring));
    }
    for i in 1..=3 {
        gens.push(p(&format!("d{i}1*q1 + d{i}2*q2 + d{i}3*q3"), &ring));
    }
    gens.extend(adjugate_entries().iter().map(|s| p(s, &ring)));
    gens.push(p("d11 + d22 + d33", &ring));
    DualModel { case: CaseId::G4, ring, gens, notes: "tpD = 0, Dq = 0, adj(D) = 0, tr D = 0".into() }
}

pub(crate) fn g5_minors() -> Vec<String> {
    let mut out = Vec::new();
    for i in 1..=4 {
        for k in i + 1..=4 {
            for j in 1..=3 {
                for l in j + 1..=3 {
                    out.push(format!("d{i}{j}*d{k}{l} - d{i}{l}*d{k}{j}"));
                }
            }
        }
    }
    out
}

fn g5(field: Field) -> DualModel {
    let ring = PolyRing::new(&g5_names(), field).unwrap();
    let mut gens: Vec<Polynomial> = g5_minors().iter().map(|s| p(s, &ring)).collect();
    for j in 1..=3 {
        gens.push(p(&format!("p1*d1{j} + p2*d2{j} + p3*d3{j} + p4*d4{j}"), &ring));
    }
    DualModel { case: CaseId::G5, ring, gens, notes: "rank D <= 1, tpD = 0".into() }
}

pub(crate) const G6C_CUBIC: &str = "p1*(q2^2 - q1*q3) + p2*(q1*q4 - q2*q3) + p3*(q3^2 - q2*q4) \
     + q5*(r1*q1 + r2*q2 + r3*q3 + r4*q4 + r5*q5)";

fn g6c(field: Field) -> DualModel {
    let ring = PolyRing::new(&g6c_names(), field).unwrap();
    let gens = vec![p(G6C_CUBIC, &ring)];
    DualModel { case: CaseId::G6C, ring, gens, notes: "single cubic".into() }
}

/// Equations of the dual variety in its natural coordinates.
pub fn build_dual_ideal(case: CaseId, field: Field) -> Result<DualModel, VarError> {
    match case {
        CaseId::G4 => Ok(g4(field)),
        CaseId::G5 => Ok(g5(field)),
        CaseId::G6C => Ok(g6c(field)),
        CaseId::G6Q | CaseId::G8 => Err(VarError::Unsupported(case, "no equations")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_counts() {
        let f = Field::default();
        let m4 = build_dual_ideal(CaseId::G4, f).unwrap();
        assert_eq!((m4.ring.nvars(), m4.gens.len()), (15, 16));
        let m5 = build_dual_ideal(CaseId::G5, f).unwrap();
        assert_eq!((m5.ring.nvars(), m5.gens.len()), (16, 21));
        assert_eq!(g5_minors().len(), 18);
        let m6 = build_dual_ideal(CaseId::G6C, f).unwrap();
        assert_eq!(m6.ring.nvars(), 13);
        assert_eq!(m6.gens.len(), 1);
        assert_eq!(m6.gens[0].homogeneous_degree(), Some(3));
        assert!(build_dual_ideal(CaseId::G8, f).is_err());
    }

    #[test]
    fn adjugate_first_entry() {
        let m = build_dual_ideal(CaseId::G4, Field::Rational).unwrap();
        assert_eq!(m.gens[6], p("d22*d33 - d23*d32", &m.ring));
        assert_eq!(adjugate_entries()[1], "-(d12*d33 - d13*d32)");
    }

    #[test]
    fn adjugate_times_matrix_is_determinant() {
        // oracle: D * adj(D) = det(D) * I at a random integer matrix
        let q = Field::Rational;
        let m = build_dual_ideal(CaseId::G4, q).unwrap();
        let vals = [2i64, -1, 3, 0, 5, 4, 7, 1, -2];
        let mut pt = vec![q.zero(); 6];
        pt.extend(vals.iter().map(|&v| q.from_i64(v)));
        let adj: Vec<i64> =
            m.gens[6..15].iter().map(|g| i64::try_from(g.eval(&pt).unwrap().to_bigint().unwrap()).unwrap()).collect();
        let v = |i: usize, j: usize| vals[3 * i + j];
        let det = v(0, 0) * (v(1, 1) * v(2, 2) - v(1, 2) * v(2, 1)) - v(0, 1) * (v(1, 0) * v(2, 2) - v(1, 2) * v(2, 0))
            + v(0, 2) * (v(1, 0) * v(2, 1) - v(1, 1) * v(2, 0));
        for i in 0..3 {
            for j in 0..3 {
                let s: i64 = (0..3).map(|k| vals[3 * i + k] * adj[3 * k + j]).sum();
                assert_eq!(s, if i == j { det } else { 0 });
            }
        }
    }
}
