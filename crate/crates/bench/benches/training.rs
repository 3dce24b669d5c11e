use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use leanml::{
    fit_multiple, kmeans_fit, logistic_fit, nb_fit, pca_fit, svm_fit, KnnModel, OptimizerConfig, Rng, SvmConfig,
};
use leanml_bench::{classification, regression};

// Row counts follow the regression and classification dataset shapes used by
// the CLI protocol runs.
const REGRESSION_SHAPES: [(usize, usize); 3] = [(1_000, 7), (10_000, 20), (100_000, 20)];
const CLASSIFICATION_SHAPES: [(usize, usize); 3] = [(5_000, 13), (20_000, 15), (100_000, 15)];

fn multiple_regression(c: &mut Criterion) {
    let mut group = c.benchmark_group("fit_multiple");
    for (rows, cols) in REGRESSION_SHAPES {
        let data = regression(rows, cols, 1);
        group.throughput(Throughput::Elements((rows * cols) as u64));
        group.bench_with_input(BenchmarkId::from_parameter(format!("{rows}x{cols}")), &data, |b, d| {
            b.iter(|| fit_multiple(&d.x, &d.y).unwrap())
        });
    }
    group.finish();
}

fn gradient_models(c: &mut Criterion) {
    let mut group = c.benchmark_group("gradient");
    group.sample_size(10);
    for (rows, cols) in CLASSIFICATION_SHAPES {
        let data = classification(rows, cols, 4.0, 2);
        let signed = data.signed_labels();
        let id = format!("{rows}x{cols}");
        let logistic_cfg = OptimizerConfig { max_epochs: 100, ..OptimizerConfig::default() };
        group.bench_with_input(BenchmarkId::new("logistic_100_epochs", &id), &data, |b, d| {
            b.iter(|| logistic_fit(&d.x, &d.y, &logistic_cfg, &mut Rng::new(1)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("svm_early_stop", &id), &data, |b, d| {
            b.iter(|| svm_fit(&d.x, &signed, &SvmConfig::default(), &mut Rng::new(1)).unwrap())
        });
    }
    group.finish();
}

fn instance_models(c: &mut Criterion) {
    let mut group = c.benchmark_group("instance");
    let data = classification(5_000, 13, 4.0, 3);
    group.bench_function("nb_fit/5000x13", |b| b.iter(|| nb_fit(&data.x, &data.y).unwrap()));
    let model = KnnModel::fit(data.x.clone(), data.y.clone(), 5).unwrap();
    let query = data.x.row(0).to_vec();
    group.bench_function("knn_neighbours/5000x13", |b| b.iter(|| model.neighbours(&query)));
    group.finish();
}

fn unsupervised(c: &mut Criterion) {
    let mut group = c.benchmark_group("unsupervised");
    group.sample_size(20);
    let data = regression(10_000, 20, 4);
    group.bench_function("pca_fit/10000x20", |b| b.iter(|| pca_fit(&data.x).unwrap()));
    group.bench_function("kmeans_fit_k4/10000x20", |b| {
        b.iter(|| kmeans_fit(&data.x, 4, 300, 1e-6, &mut Rng::new(1)).unwrap())
    });
    group.finish();
}

criterion_group!(benches, multiple_regression, gradient_models, instance_models, unsupervised);
criterion_main!(benches);
