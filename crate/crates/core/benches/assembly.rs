use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use catcohom::andre::{e2_page, random_instance, E2Options};
use catcohom::exactalg::Ring;
use catcohom::fibcl::{grothendieck, is_local, StrictAction};
use catcohom::fincat::{arrow, chain_poset, cyclic_group};
use catcohom::homcalc::{bw_cohomology_range, Degrees};
use catcohom::natsys::{zc_bimodule, NaturalSystem};
use catcohom::par;

const PATHS: [(&str, bool); 2] = [("parallel", false), ("sequential", true)];

fn bw_assembly(c: &mut Criterion) {
    let mut group = c.benchmark_group("bw_cohomology");
    group.sample_size(10);
    let cases = [
        ("bz3-trivial-n4", NaturalSystem::trivial(Arc::new(cyclic_group(3).unwrap()), Ring::ModP(3), 1).unwrap(), 4),
        (
            "chain3-zc-n3",
            NaturalSystem::from_bimodule(&zc_bimodule(Arc::new(chain_poset(3).unwrap()), Ring::Int).unwrap()).unwrap(),
            3,
        ),
    ];
    for (name, d, n) in &cases {
        for (path, sequential) in PATHS {
            par::set_sequential(sequential);
            group.bench_with_input(BenchmarkId::new(path, name), d, |b, d| {
                b.iter(|| bw_cohomology_range(d, Degrees::exact(*n)).unwrap())
            });
        }
    }
    par::set_sequential(false);
    group.finish();
}

fn e2_assembly(c: &mut Criterion) {
    let mut group = c.benchmark_group("e2_page");
    group.sample_size(10);
    for seed in [3u64, 11] {
        let (u, d) = random_instance(seed, 12).unwrap();
        for (path, sequential) in PATHS {
            par::set_sequential(sequential);
            group.bench_function(BenchmarkId::new(path, format!("random-{seed}")), |b| {
                b.iter(|| e2_page(&u, &d, 2, &E2Options::default()).unwrap())
            });
        }
    }
    par::set_sequential(false);
    group.finish();
}

fn locality(c: &mut Criterion) {
    let mut group = c.benchmark_group("locality");
    group.sample_size(10);
    let action = StrictAction::constant(Arc::new(chain_poset(2).unwrap()), Arc::new(arrow()));
    let fib = grothendieck(&action).unwrap();
    let d = NaturalSystem::trivial(fib.total.clone(), Ring::ModP(2), 1).unwrap();
    for (path, sequential) in PATHS {
        par::set_sequential(sequential);
        group.bench_function(BenchmarkId::new(path, "chain2-x-arrow"), |b| b.iter(|| is_local(&fib, &d, 2).unwrap()));
    }
    par::set_sequential(false);
    group.finish();
}

criterion_group!(benches, bw_assembly, e2_assembly, locality);
criterion_main!(benches);
