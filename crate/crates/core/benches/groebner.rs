use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use keyvar::groebner::Limits;
use keyvar::par::{self, ExecMode};
use keyvar::polycore::Field;
use keyvar::varieties::{cor63_probe, linear_section_invariants, CaseId};

fn dual_ideals(c: &mut Criterion) {
    let mut g = c.benchmark_group("dual_ideal");
    for case in [CaseId::G4, CaseId::G5, CaseId::G6C] {
        g.bench_with_input(BenchmarkId::from_parameter(case), &case, |b, &case| {
            b.iter(|| linear_section_invariants(case, 0, Field::default(), 1, &Limits::default()).unwrap())
        });
    }
    g.finish();
}

/// Independent sections over several seeds, one Gröbner run each.
fn section_seeds(c: &mut Criterion) {
    let mut g = c.benchmark_group("sections_4_seeds");
    g.sample_size(10);
    for (case, codim) in [(CaseId::G4, 6), (CaseId::G5, 7)] {
        for (name, mode) in [("sequential", ExecMode::Sequential), ("parallel", ExecMode::Parallel)] {
            g.bench_with_input(BenchmarkId::new(name, case), &(case, codim), |b, &(case, codim)| {
                b.iter(|| {
                    par::map_range(4, mode, |s| {
                        linear_section_invariants(case, codim, Field::default(), s as u64, &Limits::default()).unwrap()
                    })
                })
            });
        }
    }
    g.finish();
}

fn singular_points(c: &mut Criterion) {
    let mut g = c.benchmark_group("cor63_4_seeds");
    g.sample_size(10);
    for (name, mode) in [("sequential", ExecMode::Sequential), ("parallel", ExecMode::Parallel)] {
        g.bench_function(name, |b| {
            b.iter(|| par::map_range(4, mode, |s| cor63_probe(Field::default(), s as u64, &Limits::default()).unwrap()))
        });
    }
    g.finish();
}

criterion_group!(benches, dual_ideals, section_seeds, singular_points);
criterion_main!(benches);
