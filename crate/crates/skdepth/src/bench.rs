//! Wall-clock comparison of the engines on uniform random data.

use std::io::Write;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use skdepth_core::{beta_depth_brute, beta_depth_fast, spherical_depth_fast, Beta, Dataset};

use crate::error::{Error, Result};
use crate::experiment::{uniform_square, DEFAULT_HALF_WIDTH};
use crate::io::csv_io;

pub const SIZES: [usize; 3] = [1_000, 10_000, 100_000];
/// Brute force is skipped above this size.
pub const BRUTE_MAX_N: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BenchConfig {
    pub max_n: usize,
    pub seed: u64,
    /// Timed runs per fast measurement; brute force above 10³ runs once.
    pub repeats: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            max_n: 100_000,
            seed: 1,
            repeats: 5,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BenchEngine {
    #[serde(rename = "spherical_fast")]
    SphericalFast,
    #[serde(rename = "beta_fast")]
    BetaFast,
    #[serde(rename = "brute")]
    Brute,
}

impl BenchEngine {
    pub fn as_str(self) -> &'static str {
        match self {
            BenchEngine::SphericalFast => "spherical_fast",
            BenchEngine::BetaFast => "beta_fast",
            BenchEngine::Brute => "brute",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub n: usize,
    pub engine: BenchEngine,
    pub beta: f64,
    pub median_seconds: f64,
    pub raw_count: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
}

/// Median wall time of `repeats` runs and the value of the last run.
pub fn time_median<T>(repeats: usize, mut f: impl FnMut() -> T) -> (Duration, T) {
    let mut times = Vec::with_capacity(repeats.max(1));
    let mut last = None;
    for _ in 0..repeats.max(1) {
        let start = Instant::now();
        let v = std::hint::black_box(f());
        times.push(start.elapsed());
        last = Some(v);
    }
    times.sort();
    (times[times.len() / 2], last.expect("at least one run"))
}

fn measure(engine: BenchEngine, beta: Beta, data: &Dataset, q: &[f64], repeats: usize) -> Result<BenchRow> {
    let planar = skdepth_core::PlanarPoint { x: q[0], y: q[1] };
    let (t, r) = time_median(repeats, || match engine {
        BenchEngine::SphericalFast => spherical_depth_fast(planar, data),
        BenchEngine::BetaFast => beta_depth_fast(planar, data, beta),
        BenchEngine::Brute => beta_depth_brute(q, data, beta),
    });
    Ok(BenchRow {
        n: data.len(),
        engine,
        beta: beta.value(),
        median_seconds: t.as_secs_f64(),
        raw_count: r?.raw_count,
    })
}

pub fn run_bench(config: &BenchConfig) -> Result<BenchReport> {
    let sizes: Vec<usize> = SIZES.into_iter().filter(|&n| n <= config.max_n).collect();
    if sizes.is_empty() {
        return Err(Error::Config(format!(
            "--max-n {} leaves no benchmark sizes; the smallest is {}",
            config.max_n, SIZES[0]
        )));
    }
    let mut rows = Vec::new();
    for n in sizes {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ n as u64);
        let data = Dataset::from_planar(&uniform_square(&mut rng, n, DEFAULT_HALF_WIDTH))?;
        let q = uniform_square(&mut rng, 1, DEFAULT_HALF_WIDTH)[0];
        let q = [q.x, q.y];
        let reps = config.repeats;
        rows.push(measure(BenchEngine::SphericalFast, Beta::SPHERICAL, &data, &q, reps)?);
        rows.push(measure(BenchEngine::BetaFast, Beta::SPHERICAL, &data, &q, reps)?);
        rows.push(measure(BenchEngine::BetaFast, Beta::LENS, &data, &q, reps)?);
        if n <= BRUTE_MAX_N {
            let reps = if n <= 1_000 { reps } else { 1 };
            rows.push(measure(BenchEngine::Brute, Beta::SPHERICAL, &data, &q, reps)?);
            rows.push(measure(BenchEngine::Brute, Beta::LENS, &data, &q, reps)?);
        }
    }
    Ok(BenchReport { rows })
}

impl BenchReport {
    pub fn row(&self, n: usize, engine: BenchEngine, beta: f64) -> Option<&BenchRow> {
        self.rows
            .iter()
            .find(|r| r.n == n && r.engine == engine && r.beta == beta)
    }

    /// Rows whose count differs from brute force at the same `n` and β.
    pub fn disagreements(&self) -> Vec<BenchRow> {
        self.rows
            .iter()
            .filter(|r| r.engine != BenchEngine::Brute)
            .filter(|r| {
                self.row(r.n, BenchEngine::Brute, r.beta)
                    .is_some_and(|b| b.raw_count != r.raw_count)
            })
            .copied()
            .collect()
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["n", "engine", "beta", "median_seconds", "raw_count"])
            .map_err(csv_io)?;
        for r in &self.rows {
            w.write_record([
                r.n.to_string(),
                r.engine.as_str().to_string(),
                r.beta.to_string(),
                format!("{:.6}", r.median_seconds),
                r.raw_count.to_string(),
            ])
            .map_err(csv_io)?;
        }
        w.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_bench_agrees() {
        let report = run_bench(&BenchConfig {
            max_n: 1_000,
            seed: 9,
            repeats: 1,
        })
        .unwrap();
        assert_eq!(report.rows.len(), 5);
        assert!(report.disagreements().is_empty());
        let mut buf = Vec::new();
        report.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("n,engine,beta,median_seconds,raw_count\n1000,spherical_fast,1,"));
    }

    #[test]
    fn no_sizes_is_an_error() {
        let c = BenchConfig {
            max_n: 999,
            ..BenchConfig::default()
        };
        assert!(matches!(run_bench(&c), Err(Error::Config(_))));
    }
}
