use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use turaev_core::bracket::kauffman_bracket;
use turaev_core::corpus::{nine_42, trefoil};
use turaev_core::enumerate::{census, enumerate_adgs, CensusFilter};
use turaev_core::PlanarDiagram;

/// Runs `f` on the default rayon pool and on a single worker, or
/// plainly when built without `parallel`.
fn modes(c: &mut Criterion, group: &str, input: &str, f: impl Fn() + Sync) {
    let mut g = c.benchmark_group(group);
    g.sample_size(10);
    #[cfg(feature = "parallel")]
    {
        g.bench_function(BenchmarkId::new("parallel", input), |b| b.iter(&f));
        let one = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .expect("thread pool");
        g.bench_function(BenchmarkId::new("one-thread", input), |b| b.iter(|| one.install(&f)));
    }
    #[cfg(not(feature = "parallel"))]
    g.bench_function(BenchmarkId::new("sequential", input), |b| b.iter(&f));
    g.finish();
}

fn enumeration(c: &mut Criterion) {
    modes(c, "enumerate", "12 edges", || {
        enumerate_adgs(&CensusFilter::new(12)).unwrap();
    });
    modes(c, "census", "genus 2, 16 edges", || {
        census(2, &CensusFilter::new(16).reduced()).unwrap();
    });
}

fn state_sums(c: &mut Criterion) {
    let d: PlanarDiagram = nine_42().connected_sum(1, &trefoil(), 1).unwrap();
    let label = format!("{} crossings", d.crossing_count());
    modes(c, "bracket", &label, || {
        kauffman_bracket(&d).unwrap();
    });
}

criterion_group!(benches, enumeration, state_sums);
criterion_main!(benches);
