//! Depth of many queries against one data set.

use rayon::prelude::*;
use skdepth_core::{
    beta_depth_brute, beta_depth_fast, spherical_depth_fast, Beta, Dataset, DepthResult, Method,
    PlanarPoint,
};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Engine {
    /// Fast for planar data, brute force otherwise.
    #[default]
    Auto,
    Brute,
    /// Planar only.
    Fast,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum AuditMode {
    /// Audit when the data has at most [`AUTO_AUDIT_MAX_N`] points.
    #[default]
    Auto,
    On,
    Off,
}

pub const AUTO_AUDIT_MAX_N: usize = 500;
/// Queries rechecked by an audit; larger query sets are sampled evenly.
pub const AUDIT_SAMPLE: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RunConfig {
    pub beta: Beta,
    pub engine: Engine,
    pub audit: AuditMode,
}

impl RunConfig {
    pub fn new(beta: Beta) -> Self {
        RunConfig {
            beta,
            engine: Engine::Auto,
            audit: AuditMode::Auto,
        }
    }
}

/// Resolves the engine for data of dimension `dim`.
pub fn select_method(engine: Engine, dim: usize, beta: Beta) -> Result<Method> {
    let fast = if beta.is_spherical() {
        Method::SphericalFast
    } else {
        Method::BetaFast
    };
    match engine {
        Engine::Brute => Ok(Method::Brute),
        Engine::Auto if dim == 2 => Ok(fast),
        Engine::Auto => Ok(Method::Brute),
        Engine::Fast if dim == 2 => Ok(fast),
        Engine::Fast => Err(Error::Config(format!(
            "the fast engine needs planar data, got dimension {dim}"
        ))),
    }
}

/// Depth of a single query with a chosen method.
pub fn depth_with(method: Method, q: &[f64], data: &Dataset, beta: Beta) -> Result<DepthResult> {
    let planar = || PlanarPoint::new(q[0], q[1]);
    let r = match method {
        Method::Brute => beta_depth_brute(q, data, beta)?,
        Method::SphericalFast => spherical_depth_fast(planar()?, data)?,
        Method::BetaFast => beta_depth_fast(planar()?, data, beta)?,
    };
    Ok(r)
}

/// Computes the depth of every query, in query order.
pub fn compute(data: &Dataset, queries: &Dataset, config: &RunConfig) -> Result<Vec<DepthResult>> {
    if queries.dim() != data.dim() {
        return Err(Error::Config(format!(
            "query dimension {} does not match data dimension {}",
            queries.dim(),
            data.dim()
        )));
    }
    let method = select_method(config.engine, data.dim(), config.beta)?;
    let results = (0..queries.len())
        .into_par_iter()
        .map(|i| depth_with(method, queries.point(i), data, config.beta))
        .collect::<Result<Vec<_>>>()?;
    let audit = match config.audit {
        AuditMode::On => true,
        AuditMode::Off => false,
        AuditMode::Auto => data.len() <= AUTO_AUDIT_MAX_N,
    };
    if audit && method != Method::Brute {
        audit_results(&results, data, queries, config.beta)?;
    }
    Ok(results)
}

/// Indices of up to [`AUDIT_SAMPLE`] evenly spaced queries.
pub fn audit_sample(len: usize) -> Vec<usize> {
    if len <= AUDIT_SAMPLE {
        return (0..len).collect();
    }
    (0..AUDIT_SAMPLE).map(|k| k * (len - 1) / (AUDIT_SAMPLE - 1)).collect()
}

/// Rechecks a sample of results against brute force.
pub fn audit_results(results: &[DepthResult], data: &Dataset, queries: &Dataset, beta: Beta) -> Result<()> {
    audit_sample(results.len()).into_par_iter().try_for_each(|i| {
        let brute = beta_depth_brute(queries.point(i), data, beta)?.raw_count;
        if brute != results[i].raw_count {
            return Err(Error::AuditMismatch {
                query_index: i,
                method: results[i].method.as_str(),
                fast: results[i].raw_count,
                brute,
            });
        }
        Ok(())
    })
}
