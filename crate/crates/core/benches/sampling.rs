use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use keyvar::par::ExecMode;
use keyvar::polycore::Field;
use keyvar::varieties::{containment_check, jacobian_rank_samples, CaseId, RankSite};

const MODES: [(&str, ExecMode); 2] = [("sequential", ExecMode::Sequential), ("parallel", ExecMode::Parallel)];

fn containment(c: &mut Criterion) {
    let mut g = c.benchmark_group("containment_200");
    g.sample_size(20);
    for case in [CaseId::G4, CaseId::G5] {
        for (name, mode) in MODES {
            g.bench_with_input(BenchmarkId::new(name, case), &case, |b, &case| {
                b.iter(|| assert_eq!(containment_check(case, Field::default(), 200, 1, mode).unwrap(), 0))
            });
        }
    }
    g.finish();
}

fn ranks(c: &mut Criterion) {
    let mut g = c.benchmark_group("jacobian_rank_50");
    g.sample_size(20);
    for (name, mode) in MODES {
        g.bench_function(name, |b| {
            b.iter(|| jacobian_rank_samples(CaseId::G5, RankSite::Generic, Field::default(), 50, 1, mode).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, containment, ranks);
criterion_main!(benches);
