//! Benchmark harness for `leanml`: loads CSV or synthetic datasets, times
//! model training, and writes JSON, CSV or fixed-width reports.

pub mod compare;
pub mod dataset;
pub mod report;
pub mod runner;

pub use compare::{compare_reports, render_comparison, CompareError, Comparison, ComparisonRow, Tolerances};
pub use dataset::{
    generate_synthetic, load_csv, write_csv, Dataset, DatasetError, DatasetSpec, Source, SyntheticData,
    SyntheticRecipe, Task,
};
pub use report::{emit_report, parse_csv, parse_json, read_reports, render, BenchReport, Format, ReportError};
pub use runner::{effective_repeats, parse_model_list, run_benchmark, ModelKind, RunConfig, RunError, Scaling};
