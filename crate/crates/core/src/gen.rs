//! Seeded generators: random interval sets, the lattice construction with
//! unbounded superlevel ratio, and the gap family used for stability
//! sweeps. Every generator is deterministic for a fixed seed.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::interval::IntervalSet;
use crate::intset::IntegerSet;
use crate::pl::convolve_indicators;
use crate::scalar::{fmt_scalar, int, rat, Scalar};

/// Configuration for the random interval-set generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenConfig {
    pub seed: u64,
    pub n_components: usize,
    /// Components are placed inside `[-scale, scale]`.
    pub scale: Scalar,
    /// Endpoints are integer multiples of `1/denominator_bound`, so every
    /// reduced denominator stays at most this bound.
    pub denominator_bound: u64,
}

impl GenConfig {
    pub fn new(seed: u64, n_components: usize, scale: Scalar, denominator_bound: u64) -> Self {
        GenConfig { seed, n_components, scale, denominator_bound }
    }
}

/// Stable per-trial seed derivation (splitmix64 finalizer), so sweep rows
/// are independent of execution order.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    let mut z = master.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Draws `n_components` disjoint components with rational endpoints on the
/// grid `Z / denominator_bound` inside `[-scale, scale]`: `2n` distinct
/// grid points are sampled and paired off in order, so gaps are strictly
/// positive and the output is already canonical.
pub fn gen_random_set(cfg: &GenConfig) -> Result<IntervalSet> {
    if cfg.n_components == 0 {
        return Err(Error::UnsatisfiableConfig("n_components must be >= 1".into()));
    }
    if cfg.denominator_bound == 0 {
        return Err(Error::UnsatisfiableConfig("denominator_bound must be >= 1".into()));
    }
    if !cfg.scale.is_positive() {
        return Err(Error::UnsatisfiableConfig(format!(
            "scale must be positive, got {}",
            fmt_scalar(&cfg.scale)
        )));
    }
    let denom = BigInt::from(cfg.denominator_bound);
    let grid_radius = (&cfg.scale * Scalar::from_integer(denom.clone()))
        .floor()
        .to_integer()
        .to_i64()
        .ok_or_else(|| Error::UnsatisfiableConfig("scale too large for the grid".into()))?;
    let needed = 2 * cfg.n_components;
    let available = grid_radius
        .checked_mul(2)
        .and_then(|w| w.checked_add(1))
        .unwrap_or(i64::MAX);
    if (needed as i64) > available {
        return Err(Error::UnsatisfiableConfig(format!(
            "{} components need {} grid points but only {} fit in [-{s}, {s}]",
            cfg.n_components,
            needed,
            available,
            s = fmt_scalar(&cfg.scale)
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut picks = std::collections::BTreeSet::new();
    while picks.len() < needed {
        picks.insert(rng.random_range(-grid_radius..=grid_radius));
    }
    let points: Vec<i64> = picks.into_iter().collect();
    let denom_scalar = Scalar::from_integer(denom);
    let pairs = points
        .chunks(2)
        .map(|pair| {
            let lo = int(pair[0]) / &denom_scalar;
            let hi = int(pair[1]) / &denom_scalar;
            (lo, hi)
        })
        .collect();
    IntervalSet::from_endpoints(pairs)
}

/// The integer base sets behind the lattice construction: `{0, ..., λ-1}`
/// and `{0, λ, ..., (λ-1)·λ}`, chosen so all `λ²` pairwise sums are
/// distinct.
pub fn lattice_integer_sets(lambda: u64) -> Result<(IntegerSet, IntegerSet)> {
    if lambda < 2 {
        return Err(Error::LambdaTooSmall(lambda));
    }
    let l = i64::try_from(lambda).map_err(|_| Error::IndexOverflow(lambda.to_string()))?;
    let a: Vec<i64> = (0..l).collect();
    let b: Vec<i64> = (0..l).map(|k| k * l).collect();
    Ok((IntegerSet::new(a), IntegerSet::new(b)))
}

/// Thickens the lattice base sets by `[-1/(2λ), 1/(2λ))`, producing a pair
/// of unit-measure sets whose convolution is a row of `λ²` disjoint
/// triangular bumps of height `1/λ`.
pub fn lattice_counterexample(lambda: u64) -> Result<(IntervalSet, IntervalSet)> {
    let (ia, ib) = lattice_integer_sets(lambda)?;
    let half_width = rat(1, 2 * i64::try_from(lambda).expect("validated above"));
    let thicken = |cells: &IntegerSet| {
        IntervalSet::from_endpoints(
            cells
                .elements()
                .iter()
                .map(|&n| (int(n) - &half_width, int(n) + &half_width))
                .collect(),
        )
    };
    Ok((thicken(&ia)?, thicken(&ib)?))
}

/// Exact reproduction of the lattice construction's distribution function,
/// compared against the two-interval distribution of the same measures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CounterexampleReport {
    pub lambda: u64,
    pub a_measure: Scalar,
    pub b_measure: Scalar,
    /// Peak of the convolution, `1/λ`.
    pub max_value: Scalar,
    /// `|S_t| = 2λ(1 - λt)` verified at `t = 1/(4λ), 1/(2λ), 3/(4λ)`.
    pub formula_ok: bool,
    /// `|S_t| = 0` at and above `t = 1/λ`.
    pub vanishes_ok: bool,
    /// Measure of the open support, `2λ`.
    pub support_measure: Scalar,
    /// Open support of the convolution of two unit intervals, `2`.
    pub interval_support_measure: Scalar,
    /// Ratio of the two as `t -> 0+`: exactly `λ`.
    pub support_ratio: Scalar,
}

pub fn counterexample_report(lambda: u64) -> Result<CounterexampleReport> {
    let (a, b) = lattice_counterexample(lambda)?;
    let a_measure = a.measure();
    let b_measure = b.measure();
    assert!(a_measure == int(1) && b_measure == int(1));
    let l = i64::try_from(lambda).expect("validated above");
    let f = convolve_indicators(&a, &b)?;
    let max_value = f.max_value();
    assert_eq!(max_value, rat(1, l));

    let predicted = |t: &Scalar| rat(2 * l, 1) * (int(1) - int(l) * t);
    let mut formula_ok = true;
    for numer in [1i64, 2, 3] {
        let t = rat(numer, 4 * l);
        let measured = f.superlevel(&t)?.measure();
        formula_ok &= measured == predicted(&t);
    }
    assert!(formula_ok, "superlevel measures must follow 2λ(1-λt)");

    let vanishes_ok = f.superlevel(&rat(1, l))?.is_empty()
        && f.superlevel(&rat(2, l))?.is_empty();
    assert!(vanishes_ok, "superlevel sets must vanish at t = 1/λ");

    let support_measure = f.superlevel(&Scalar::zero())?.measure();
    let unit = IntervalSet::interval(rat(-1, 2), rat(1, 2))?;
    let interval_support_measure = convolve_indicators(&unit, &unit)?
        .superlevel(&Scalar::zero())?
        .measure();
    let support_ratio = &support_measure / &interval_support_measure;
    assert_eq!(support_ratio, int(l));

    Ok(CounterexampleReport {
        lambda,
        a_measure,
        b_measure,
        max_value,
        formula_ok,
        vanishes_ok,
        support_measure,
        interval_support_measure,
        support_ratio,
    })
}

/// One member of the gap probe family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapFamily {
    pub a: IntervalSet,
    pub b: IntervalSet,
    pub e: IntervalSet,
    pub f: IntervalSet,
}

/// Probe family for the stability question: `A` is a unit-measure set with
/// a centered gap of width `s` (hull `1 + s`), `B` is the unit centered
/// interval, and `E`, `F` are centered intervals with `|F| = 3|E|` inside
/// the measure window. At `s = 0` the quadruple is an exact extremizer;
/// the normalized deficit for `E` grows as `s/4 + s²/4`.
pub fn gap_family(s: &Scalar) -> Result<GapFamily> {
    if s.is_negative() || s >= &rat(1, 4) {
        return Err(Error::GapOutOfRange(fmt_scalar(s)));
    }
    let half = rat(1, 2);
    let half_s = s * &half;
    // Touching halves merge to the plain unit interval when s = 0.
    let a = IntervalSet::from_endpoints(vec![
        (-&half - &half_s, -half_s.clone()),
        (half_s.clone(), &half + &half_s),
    ])?;
    let b = IntervalSet::interval(rat(-1, 2), rat(1, 2))?;
    let e = IntervalSet::interval(rat(-1, 4), rat(1, 4))?;
    let f = IntervalSet::interval(rat(-3, 4), rat(3, 4))?;
    Ok(GapFamily { a, b, e, f })
}
