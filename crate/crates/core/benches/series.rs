//! Parallel against single-threaded runs of the heavier kernels.
//!
//! With the default `parallel` feature both variants use rayon, the
//! sequential one inside a one-thread pool. `--no-default-features` builds
//! the plain-iterator fallback and runs only the `seq` variant.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use minw_core::aplus::check_inequalities;
use minw_core::charser::{denominator_check, Bounds};
use minw_core::rootsys::AlgebraSpec;
use minw_core::vacuum::{kw_vacuum_character, length_two_test};
use minw_core::weights::qi;

type Kernel = (&'static str, Box<dyn Fn() + Send + Sync>);

fn kernels() -> Vec<Kernel> {
    let a2 = AlgebraSpec::from_id("lie:A2").unwrap();
    let psl = AlgebraSpec::from_id("psl:2|2").unwrap();
    let g3 = AlgebraSpec::from_id("g3").unwrap();
    let sl23 = AlgebraSpec::from_id("sl:2|3").unwrap();
    vec![
        ("jantzen_sl3_k1", Box::new(move || {
            length_two_test(&a2, &qi(1), Bounds::new(9, 10)).unwrap();
        })),
        ("kw_psl22_k1", Box::new({
            let psl = psl.clone();
            move || {
                kw_vacuum_character(&psl, &qi(1), Bounds::new(3, 8)).unwrap();
            }
        })),
        ("jantzen_psl22_k3", Box::new(move || {
            length_two_test(&psl, &qi(3), Bounds::new(5, 8)).unwrap();
        })),
        ("aplus_g3_k6", Box::new(move || {
            check_inequalities(&g3, &qi(6), 8).unwrap();
        })),
        ("denom_sl23", Box::new(move || {
            denominator_check(&sl23, Bounds::finite(10)).unwrap();
        })),
    ]
}

fn bench(c: &mut Criterion) {
    let mut group = c.benchmark_group("kernels");
    group.sample_size(10);
    #[cfg(feature = "parallel")]
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    for (name, f) in kernels() {
        #[cfg(feature = "parallel")]
        group.bench_function(BenchmarkId::new("par", name), |b| b.iter(&f));
        #[cfg(feature = "parallel")]
        group.bench_function(BenchmarkId::new("seq", name), |b| b.iter(|| single.install(&f)));
        #[cfg(not(feature = "parallel"))]
        group.bench_function(BenchmarkId::new("seq", name), |b| b.iter(&f));
    }
    group.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
