//! Runs the section probes once and prints their results with timings.

use std::time::Instant;

use keyvar::groebner::Limits;
use keyvar::polycore::Field;
use keyvar::varieties::{cor46_random_input, cor46_section, cor63_probe, linear_section_invariants, CaseId};

fn main() {
    let f = Field::default();
    let limits = Limits::default();
    for (case, codim) in
        [(CaseId::G4, 0), (CaseId::G5, 0), (CaseId::G6C, 0), (CaseId::G4, 6), (CaseId::G5, 7), (CaseId::G6C, 8)]
    {
        let t = Instant::now();
        let inv = linear_section_invariants(case, codim, f, 1, &limits);
        println!("{case} codim {codim}: {inv:?} ({:.2?})", t.elapsed());
    }
    let t = Instant::now();
    let (eta, xi) = cor46_random_input(f, 1);
    let s = cor46_section(&eta, &xi, &limits).map(|s| s.invariants);
    println!("cor46: {s:?} ({:.2?})", t.elapsed());
    for seed in 0..3 {
        let t = Instant::now();
        println!("cor63 seed {seed}: {:?} ({:.2?})", cor63_probe(f, seed, &limits), t.elapsed());
    }
}
