//! Random-instance comparison of simplicial, spherical and lens depth.
//!
//! Data and queries are drawn uniformly from the square `[-w, w]²` with a
//! ChaCha8 stream seeded from the configured seed, data first and then
//! queries, `x` before `y`. The same seed gives the same report on every
//! platform.

use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use skdepth_core::{
    beta_depth_fast, pair_count, simplicial_depth_brute, spherical_depth_fast, triple_count, Beta,
    Dataset, PlanarPoint,
};

use crate::error::{Error, Result};
use crate::io::{csv_io, OutputFormat};

pub const DEFAULT_HALF_WIDTH: f64 = 10.0;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub n_data: usize,
    pub n_query: usize,
    pub seed: u64,
    pub half_width: f64,
}

impl ExperimentConfig {
    pub fn new(n_data: usize, n_query: usize, seed: u64) -> Self {
        ExperimentConfig {
            n_data,
            n_query,
            seed,
            half_width: DEFAULT_HALF_WIDTH,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.n_data < 3 {
            return Err(Error::Config(format!(
                "experiment needs at least 3 data points, got {}",
                self.n_data
            )));
        }
        if self.n_query == 0 {
            return Err(Error::Config("experiment needs at least one query".into()));
        }
        if !(self.half_width.is_finite() && self.half_width > 0.0) {
            return Err(Error::Config(format!(
                "half width must be positive, got {}",
                self.half_width
            )));
        }
        Ok(())
    }
}

/// `n` points uniform in `[-w, w]²`.
pub fn uniform_square(rng: &mut ChaCha8Rng, n: usize, w: f64) -> Vec<PlanarPoint> {
    (0..n)
        .map(|_| PlanarPoint {
            x: rng.gen_range(-w..=w),
            y: rng.gen_range(-w..=w),
        })
        .collect()
}

/// Serializes infinite ratios as `"inf"`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Ratio(pub f64);

impl Ratio {
    /// `None` for `0/0`.
    pub fn of(num: f64, den: f64) -> Option<Ratio> {
        match (num == 0.0, den == 0.0) {
            (true, true) => None,
            (false, true) => Some(Ratio(f64::INFINITY)),
            _ => Some(Ratio(num / den)),
        }
    }
}

impl std::fmt::Display for Ratio {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_infinite() {
            f.write_str("inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl Serialize for Ratio {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        if self.0.is_finite() {
            s.serialize_f64(self.0)
        } else {
            s.serialize_str("inf")
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct QueryRow {
    pub query_index: usize,
    pub x: f64,
    pub y: f64,
    pub sd_raw: u64,
    pub sphd_raw: u64,
    pub ld_raw: u64,
    pub sd: f64,
    pub sphd: f64,
    pub ld: f64,
    pub sphd_over_sd: Option<Ratio>,
    pub ld_over_sd: Option<Ratio>,
    pub ld_over_sphd: Option<Ratio>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Range<T> {
    pub min: T,
    pub max: T,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub sd: Range<f64>,
    pub sphd: Range<f64>,
    pub ld: Range<f64>,
    /// `None` when every query has `0/0`.
    pub sphd_over_sd: Option<Range<Ratio>>,
    pub ld_over_sd: Option<Range<Ratio>>,
    pub ld_over_sphd: Option<Range<Ratio>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub rows: Vec<QueryRow>,
    pub summary: Summary,
}

fn range_of(values: impl Iterator<Item = f64>) -> Option<Range<f64>> {
    values.fold(None, |acc, v| match acc {
        None => Some(Range { min: v, max: v }),
        Some(r) => Some(Range {
            min: r.min.min(v),
            max: r.max.max(v),
        }),
    })
}

fn ratio_range(values: impl Iterator<Item = Option<Ratio>>) -> Option<Range<Ratio>> {
    range_of(values.flatten().map(|r| r.0)).map(|r| Range {
        min: Ratio(r.min),
        max: Ratio(r.max),
    })
}

pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentReport> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let data = Dataset::from_planar(&uniform_square(&mut rng, config.n_data, config.half_width))?;
    let queries = uniform_square(&mut rng, config.n_query, config.half_width);
    let rows = queries
        .par_iter()
        .enumerate()
        .map(|(query_index, &q)| {
            let sd = simplicial_depth_brute(q, &data)?;
            let sphd = spherical_depth_fast(q, &data)?;
            let ld = beta_depth_fast(q, &data, Beta::LENS)?;
            Ok(QueryRow {
                query_index,
                x: q.x,
                y: q.y,
                sd_raw: sd.raw_count,
                sphd_raw: sphd.raw_count,
                ld_raw: ld.raw_count,
                sd: sd.normalized,
                sphd: sphd.normalized,
                ld: ld.normalized,
                sphd_over_sd: Ratio::of(sphd.normalized, sd.normalized),
                ld_over_sd: Ratio::of(ld.normalized, sd.normalized),
                ld_over_sphd: Ratio::of(ld.normalized, sphd.normalized),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let present = "at least one query";
    let summary = Summary {
        sd: range_of(rows.iter().map(|r| r.sd)).expect(present),
        sphd: range_of(rows.iter().map(|r| r.sphd)).expect(present),
        ld: range_of(rows.iter().map(|r| r.ld)).expect(present),
        sphd_over_sd: ratio_range(rows.iter().map(|r| r.sphd_over_sd)),
        ld_over_sd: ratio_range(rows.iter().map(|r| r.ld_over_sd)),
        ld_over_sphd: ratio_range(rows.iter().map(|r| r.ld_over_sphd)),
    };
    Ok(ExperimentReport {
        config: *config,
        rows,
        summary,
    })
}

/// A query whose counts break `LD >= SphD` or `SphD >= (2/3) SD`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InequalityViolation {
    pub query_index: usize,
    pub lens_below_spherical: bool,
    pub spherical_below_two_thirds_simplicial: bool,
}

impl ExperimentReport {
    /// Checks both inequalities on the integer counts, without division.
    pub fn violations(&self) -> Vec<InequalityViolation> {
        let n = self.config.n_data;
        let (pairs, triples) = (pair_count(n) as u128, triple_count(n) as u128);
        self.rows
            .iter()
            .filter_map(|r| {
                let v = InequalityViolation {
                    query_index: r.query_index,
                    lens_below_spherical: r.ld_raw < r.sphd_raw,
                    spherical_below_two_thirds_simplicial: 3 * r.sphd_raw as u128 * triples
                        < 2 * r.sd_raw as u128 * pairs,
                };
                (v.lens_below_spherical || v.spherical_below_two_thirds_simplicial).then_some(v)
            })
            .collect()
    }

    pub fn write<W: Write>(&self, out: W, format: OutputFormat) -> Result<()> {
        match format {
            OutputFormat::Json => {
                let mut out = out;
                serde_json::to_writer_pretty(&mut out, self).map_err(std::io::Error::from)?;
                writeln!(out)?;
            }
            OutputFormat::Csv => self.write_csv(out)?,
        }
        Ok(())
    }

    fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        let opt = |r: Option<Ratio>| r.map_or_else(String::new, |r| r.to_string());
        {
            let mut w = csv::Writer::from_writer(&mut out);
            w.write_record([
                "query_index", "x", "y", "sd_raw", "sphd_raw", "ld_raw", "sd", "sphd", "ld",
                "sphd_over_sd", "ld_over_sd", "ld_over_sphd",
            ])
            .map_err(csv_io)?;
            for r in &self.rows {
                w.write_record([
                    r.query_index.to_string(),
                    r.x.to_string(),
                    r.y.to_string(),
                    r.sd_raw.to_string(),
                    r.sphd_raw.to_string(),
                    r.ld_raw.to_string(),
                    r.sd.to_string(),
                    r.sphd.to_string(),
                    r.ld.to_string(),
                    opt(r.sphd_over_sd),
                    opt(r.ld_over_sd),
                    opt(r.ld_over_sphd),
                ])
                .map_err(csv_io)?;
            }
            w.flush()?;
        }
        writeln!(out)?;
        let c = &self.config;
        writeln!(
            out,
            "# summary: n_data={} n_query={} seed={} half_width={}",
            c.n_data, c.n_query, c.seed, c.half_width
        )?;
        let mut w = csv::Writer::from_writer(&mut out);
        w.write_record(["statistic", "min", "max"]).map_err(csv_io)?;
        let s = &self.summary;
        for (name, r) in [("sd", s.sd), ("sphd", s.sphd), ("ld", s.ld)] {
            w.write_record([name.to_string(), r.min.to_string(), r.max.to_string()])
                .map_err(csv_io)?;
        }
        for (name, r) in [
            ("sphd_over_sd", s.sphd_over_sd),
            ("ld_over_sd", s.ld_over_sd),
            ("ld_over_sphd", s.ld_over_sphd),
        ] {
            let (min, max) = r.map_or((String::new(), String::new()), |r| (r.min.to_string(), r.max.to_string()));
            w.write_record([name.to_string(), min, max]).map_err(csv_io)?;
        }
        w.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratios() {
        assert_eq!(Ratio::of(0.0, 0.0), None);
        assert_eq!(Ratio::of(0.5, 0.0).unwrap().to_string(), "inf");
        assert_eq!(Ratio::of(0.5, 0.25), Some(Ratio(2.0)));
        assert_eq!(serde_json::to_string(&Ratio(f64::INFINITY)).unwrap(), "\"inf\"");
    }

    #[test]
    fn smoke_scale() {
        let report = run_experiment(&ExperimentConfig::new(20, 5, 7)).unwrap();
        assert_eq!(report.rows.len(), 5);
        assert!(report.violations().is_empty());
        let s = &report.summary;
        assert!(s.sd.min <= s.sd.max && s.ld.min >= s.sphd.min);
        if let Some(r) = s.ld_over_sphd {
            assert!(r.min.0 >= 1.0);
        }
    }

    #[test]
    fn same_seed_same_bytes() {
        let render = |seed| {
            let mut buf = Vec::new();
            let r = run_experiment(&ExperimentConfig::new(30, 8, seed)).unwrap();
            r.write(&mut buf, OutputFormat::Csv).unwrap();
            r.write(&mut buf, OutputFormat::Json).unwrap();
            buf
        };
        assert_eq!(render(3), render(3));
        assert_ne!(render(3), render(4));
    }

    #[test]
    fn rejects_bad_config() {
        assert!(run_experiment(&ExperimentConfig::new(2, 5, 0)).is_err());
        assert!(run_experiment(&ExperimentConfig::new(10, 0, 0)).is_err());
        let mut c = ExperimentConfig::new(10, 1, 0);
        c.half_width = 0.0;
        assert!(run_experiment(&c).is_err());
    }
}
