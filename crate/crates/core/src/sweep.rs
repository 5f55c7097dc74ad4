//! Deterministic experiment sweeps: a named generator family crossed with
//! a probe or deficit computation, emitting one flat record per trial in
//! grid order.

use crate::error::Result;
use crate::gen::{derive_seed, gap_family, gen_random_set, GenConfig};
use crate::report::{Record, ToRecord};
use crate::riesz::{rs_deficit, stability_probe};
use crate::scalar::{fmt_scalar, Scalar};

/// Which generator family a sweep runs over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SweepFamily {
    /// Gap-family probes over an explicit grid of gap widths.
    Gap { grid: Vec<Scalar> },
    /// Deficits of seeded random triples `(A, B, C)`.
    Random { trials: u64 },
}

/// Full sweep description. `seed`, `n_components`, `scale`, and
/// `denominator_bound` configure the random family; `eps_prime` is the
/// window margin recorded by the probes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepSpec {
    pub family: SweepFamily,
    pub seed: u64,
    pub eps_prime: Scalar,
    pub n_components: usize,
    pub scale: Scalar,
    pub denominator_bound: u64,
}

/// Runs the sweep and returns one record per trial, in grid order.
/// Identical specs produce identical rows.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<Record>> {
    match &spec.family {
        SweepFamily::Gap { grid } => grid
            .iter()
            .enumerate()
            .map(|(trial, s)| {
                let fam = gap_family(s)?;
                let probe = stability_probe(&fam.a, &fam.b, &fam.e, &fam.f, &spec.eps_prime)?;
                let mut row = Record::new();
                row.push_uint("trial", trial as u64)
                    .push_text("family", "gap")
                    .push_rat("s", s)
                    .extend(probe.to_record());
                Ok(row)
            })
            .collect(),
        SweepFamily::Random { trials } => (0..*trials)
            .map(|trial| {
                let sets: Vec<_> = (0..3)
                    .map(|slot| {
                        let cfg = GenConfig::new(
                            derive_seed(spec.seed, 3 * trial + slot),
                            spec.n_components,
                            spec.scale.clone(),
                            spec.denominator_bound,
                        );
                        gen_random_set(&cfg)
                    })
                    .collect::<Result<_>>()?;
                let report = rs_deficit(&sets[0], &sets[1], &sets[2])?;
                let mut row = Record::new();
                row.push_uint("trial", trial)
                    .push_text("family", "random")
                    .push_uint("seed", spec.seed)
                    .extend(report.to_record());
                Ok(row)
            })
            .collect(),
    }
}

/// Parses a comma-separated grid of rationals, e.g. `0,1/20,1/10`.
pub fn parse_grid(text: &str) -> Result<Vec<Scalar>> {
    text.split(',')
        .map(crate::scalar::parse_scalar)
        .collect()
}

/// Canonical rendering of a grid, the inverse of [`parse_grid`].
pub fn format_grid(grid: &[Scalar]) -> String {
    grid.iter().map(fmt_scalar).collect::<Vec<_>>().join(",")
}
