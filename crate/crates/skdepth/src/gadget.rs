use std::io::Write;

use serde::Serialize;
use skdepth_core::{Beta, GadgetKind, GadgetSpec, UniquenessDecision};

use crate::error::{Error, Result};
use crate::io::{csv_io, OutputFormat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum KindArg {
    Spherical,
    Lens,
    Beta,
}

/// Resolves the gadget kind; `beta` is required for `Beta` and must match
/// the fixed value of the other two kinds when given.
pub fn gadget_kind(kind: KindArg, beta: Option<f64>) -> Result<GadgetKind> {
    let fixed = |k: GadgetKind| match beta {
        Some(b) if b != k.beta().value() => Err(Error::Config(format!(
            "the {kind:?} gadget uses beta = {}, got {b}",
            k.beta().value()
        ))),
        _ => Ok(k),
    };
    match kind {
        KindArg::Spherical => fixed(GadgetKind::Spherical),
        KindArg::Lens => fixed(GadgetKind::Lens),
        KindArg::Beta => {
            let b = beta.ok_or_else(|| Error::Config("--kind beta needs --beta".into()))?;
            let beta = Beta::new(b)?;
            if b <= 1.0 {
                return Err(Error::Config(format!("--kind beta needs beta > 1, got {b}")));
            }
            Ok(GadgetKind::GeneralBeta(beta))
        }
    }
}

#[derive(Serialize)]
pub struct GadgetOutput {
    pub kind: &'static str,
    pub beta: f64,
    pub n: usize,
    pub raw_count: u64,
    pub expected: u64,
    pub unique: bool,
    pub duplicate_pairs: Option<u64>,
}

pub fn run_gadget(values: &[f64], kind: GadgetKind) -> Result<GadgetOutput> {
    let spec = GadgetSpec::new(values, kind)?;
    let UniquenessDecision {
        unique,
        raw_count,
        expected,
        duplicate_pairs,
    } = spec.decide()?;
    Ok(GadgetOutput {
        kind: match kind {
            GadgetKind::Spherical => "spherical",
            GadgetKind::Lens => "lens",
            GadgetKind::GeneralBeta(_) => "beta",
        },
        beta: kind.beta().value(),
        n: values.len(),
        raw_count,
        expected,
        unique,
        duplicate_pairs,
    })
}

impl GadgetOutput {
    pub fn write<W: Write>(&self, mut out: W, format: OutputFormat) -> Result<()> {
        match format {
            OutputFormat::Json => {
                serde_json::to_writer_pretty(&mut out, self).map_err(std::io::Error::from)?;
                writeln!(out)?;
            }
            OutputFormat::Csv => {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(["kind", "beta", "n", "raw_count", "expected", "unique", "duplicate_pairs"])
                    .map_err(csv_io)?;
                w.write_record([
                    self.kind.to_string(),
                    self.beta.to_string(),
                    self.n.to_string(),
                    self.raw_count.to_string(),
                    self.expected.to_string(),
                    self.unique.to_string(),
                    self.duplicate_pairs.map_or_else(String::new, |c| c.to_string()),
                ])
                .map_err(csv_io)?;
                w.flush()?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kinds() {
        assert_eq!(gadget_kind(KindArg::Lens, None).unwrap(), GadgetKind::Lens);
        assert_eq!(gadget_kind(KindArg::Lens, Some(2.0)).unwrap(), GadgetKind::Lens);
        assert!(gadget_kind(KindArg::Lens, Some(3.0)).is_err());
        assert!(gadget_kind(KindArg::Beta, None).is_err());
        assert!(gadget_kind(KindArg::Beta, Some(1.0)).is_err());
        assert!(matches!(gadget_kind(KindArg::Beta, Some(3.0)).unwrap(), GadgetKind::GeneralBeta(_)));
    }

    #[test]
    fn lens_run() {
        let out = run_gadget(&[1.0, 2.0, 2.0], GadgetKind::Lens).unwrap();
        assert_eq!((out.raw_count, out.unique, out.duplicate_pairs), (5, false, Some(1)));
    }
}
