//! Runs a configuration on a thread pool and merges reports in config order.

use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;

use crate::config::ExperimentSpec;
use crate::report::SuiteReport;
use crate::verify::run_experiment;

/// Ring and certificate files are resolved relative to `base`.
pub fn run_suite(specs: &[ExperimentSpec], base: &Path, jobs: usize) -> SuiteReport {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool");
    let results: Vec<_> = pool.install(|| {
        specs
            .par_iter()
            .enumerate()
            .map(|(i, spec)| {
                let start = Instant::now();
                let report = run_experiment(spec, i, base);
                (report, start.elapsed().as_secs_f64())
            })
            .collect()
    });
    let (experiments, timings) = results.into_iter().unzip();
    SuiteReport::new(experiments, timings)
}
