use cli::{run, Golden, RunOptions, Section};
use criterion::{criterion_group, criterion_main, Criterion};

fn bench(c: &mut Criterion) {
    let golden = Golden::bundled();
    let mut group = c.benchmark_group("reproduce");
    group.sample_size(10);
    for section in [Section::Stability, Section::Equivpic, Section::All] {
        for parallel in [false, true] {
            let opts = RunOptions { parallel, ..RunOptions::default() };
            let name = format!("{section}/{}", if parallel { "parallel" } else { "sequential" });
            group.bench_function(name, |b| b.iter(|| run(section, &golden, &opts).unwrap()));
        }
    }
    group.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
