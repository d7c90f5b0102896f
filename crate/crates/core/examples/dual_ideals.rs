use std::time::Instant;

use keyvar::groebner::{groebner, hilbert_data, Limits};
use keyvar::polycore::Field;
use keyvar::varieties::{build_dual_ideal, CaseId};

fn main() {
    for case in [CaseId::G4, CaseId::G5, CaseId::G6C] {
        let m = build_dual_ideal(case, Field::default()).unwrap();
        let t = Instant::now();
        let gb = groebner(&m.gens, &Limits::default()).unwrap();
        let h = hilbert_data(&gb);
        println!(
            "{case}: basis {} dim {} degree {} span defect {} numerator {:?} ({:?}, {:?})",
            gb.len(),
            h.projective_dim,
            h.degree,
            h.span_defect,
            h.reduced_numerator,
            gb.stats(),
            t.elapsed()
        );
    }
}
