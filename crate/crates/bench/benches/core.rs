use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use supamp_core::affine_hecke::double_coset_count;
use supamp_core::amplifier::exponent_budget;
use supamp_core::archgeom::{kxi_h3, tube_radius_bisect, Model};
use supamp_core::rootdata::weyl_group;
use supamp_core::sympair::{find_pair, is_h_large};
use supamp_core::{build_root_datum, Coweight, Q};

fn weyl(c: &mut Criterion) {
    let mut g = c.benchmark_group("weyl_group");
    for name in ["A3", "B4", "D4", "A5"] {
        // the group is cached on the datum, so rebuild it each time
        g.bench_with_input(BenchmarkId::from_parameter(name), name, |b, n| {
            b.iter(|| weyl_group(&build_root_datum(n).unwrap()).unwrap().order())
        });
    }
    g.finish();
}

fn coset_counts(c: &mut Criterion) {
    let mut g = c.benchmark_group("double_coset_count");
    for (name, lam) in [("A2", vec![2, 1]), ("B2", vec![2, 2]), ("G2", vec![1, 1]), ("A3", vec![1, 2, 1])] {
        let rd = build_root_datum(name).unwrap();
        weyl_group(&rd).unwrap();
        let mu = Coweight::from_ints(&lam);
        g.bench_function(name, |b| b.iter(|| double_coset_count(&rd, black_box(&mu)).unwrap()));
    }
    g.finish();
}

fn largeness(c: &mut Criterion) {
    let mut g = c.benchmark_group("is_h_large");
    g.sample_size(10);
    for name in ["maclachlan-reid", "su31", "so51", "sl3xsl3-diag"] {
        let pair = find_pair(name).unwrap();
        g.bench_function(name, |b| b.iter(|| is_h_large(&pair).unwrap()));
    }
    g.finish();
}

fn archimedean(c: &mut Criterion) {
    let mut g = c.benchmark_group("archgeom");
    g.sample_size(20);
    g.bench_function("kxi_h3/xi=50", |b| b.iter(|| kxi_h3(black_box(0.3), 50.0, 0.5).unwrap()));
    g.bench_function("tube_radius_bisect", |b| b.iter(|| tube_radius_bisect(Model::H3, black_box(0.4), 0.1)));
    g.bench_function("exponent_budget", |b| {
        b.iter(|| {
            exponent_budget(Q::from_integer(10), Q::from_integer(1), Q::from_integer(1), Q::from_integer(0), Q::new(1, 8))
                .unwrap()
        })
    });
    g.finish();
}

criterion_group!(benches, weyl, coset_counts, largeness, archimedean);
criterion_main!(benches);
