//! Integer sumsets, the small-sumset covering theorem, grid
//! discretization of interval sets, and the continuum small-doubling
//! check.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::intset::IntegerSet;
use crate::interval::IntervalSet;
use crate::scalar::{fmt_scalar, rat, Scalar};

/// Exact sumset `X + Y` of two nonempty integer sets.
pub fn int_sumset(x: &IntegerSet, y: &IntegerSet) -> Result<IntegerSet> {
    if x.is_empty() || y.is_empty() {
        return Err(Error::EmptySet("int_sumset"));
    }
    let mut sums = Vec::with_capacity(x.len() * y.len());
    for &p in x.elements() {
        for &q in y.elements() {
            let s = p
                .checked_add(q)
                .ok_or_else(|| Error::IndexOverflow(format!("{p} + {q}")))?;
            sums.push(s);
        }
    }
    Ok(IntegerSet::new(sums))
}

/// Slack in the lower bound `#(X+X) >= 2#X - 1`; always nonnegative.
pub fn cauchy_davenport_gap(x: &IntegerSet) -> Result<u64> {
    if x.is_empty() {
        return Err(Error::EmptySet("cauchy_davenport_gap"));
    }
    let doubled = int_sumset(x, x)?;
    let gap = doubled.len() as i64 - (2 * x.len() as i64 - 1);
    assert!(gap >= 0, "sumset cardinality fell below 2#X - 1");
    Ok(gap as u64)
}

/// Rank-one arithmetic progression
/// `{start, start + step, ..., start + (length-1)·step}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct APCover {
    pub start: i64,
    pub step: i64,
    pub length: u64,
}

impl APCover {
    pub fn contains(&self, x: i64) -> bool {
        let offset = x - self.start;
        offset >= 0
            && offset % self.step == 0
            && ((offset / self.step) as u64) < self.length
    }
}

impl std::fmt::Display for APCover {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} + {}*[0..{})", self.start, self.step, self.length)
    }
}

/// Small-sumset covering: when `#(X+X) < 3#X - 3`, the minimal rank-one
/// progression containing `X` (step = gcd of the differences from
/// `min X`) has cardinality at most `#(X+X) - #X + 1`. Returns `None`
/// when the premise fails, since the theorem then promises nothing.
pub fn freiman_cover(x: &IntegerSet) -> Result<Option<APCover>> {
    if x.len() < 3 {
        return Err(Error::TooFewElements { required: 3, got: x.len() });
    }
    let doubled = int_sumset(x, x)?;
    if doubled.len() >= 3 * x.len() - 3 {
        return Ok(None);
    }
    let min = x.min().expect("nonempty");
    let max = x.max().expect("nonempty");
    let mut step: i64 = 0;
    for &e in x.elements() {
        let diff = e
            .checked_sub(min)
            .ok_or_else(|| Error::IndexOverflow(format!("{e} - {min}")))?;
        step = step.gcd(&diff);
    }
    debug_assert!(step > 0, "at least two distinct elements");
    let length = ((max - min) / step) as u64 + 1;
    let bound = (doubled.len() - x.len() + 1) as u64;
    assert!(
        length <= bound,
        "small-sumset cover exceeded its cardinality bound"
    );
    Ok(Some(APCover { start: min, step, length }))
}

/// Grid discretization: the set of all `n` whose cell
/// `(eps·n - eps/2, eps·n + eps/2)` is covered by `A` up to a `delta`
/// fraction, i.e. `|A ∩ cell| >= (1 - delta)·eps`. Requires
/// `0 <= delta < 1/2` so that adjacent occupied cells force sums to land
/// inside `A + A`.
pub fn discretize(a: &IntervalSet, eps: &Scalar, delta: &Scalar) -> Result<IntegerSet> {
    if !eps.is_positive() {
        return Err(Error::NonpositiveArgument {
            op: "discretize",
            value: fmt_scalar(eps),
        });
    }
    if delta.is_negative() || delta >= &rat(1, 2) {
        return Err(Error::DeltaOutOfRange(fmt_scalar(delta)));
    }
    if a.is_empty() {
        return Ok(IntegerSet::empty());
    }
    let hull = a.hull()?;
    let half = rat(1, 2);
    // Cell n meets the hull iff lo/eps - 1/2 < n < hi/eps + 1/2.
    let n_min = scaled_bound(&(hull.lo() / eps - &half), true)?;
    let n_max = scaled_bound(&(hull.hi() / eps + &half), false)?;
    let threshold = (rat(1, 1) - delta) * eps;
    let mut hits = Vec::new();
    let mut n = n_min;
    while n <= n_max {
        let center = Scalar::from_integer(BigInt::from(n)) * eps;
        let cell = IntervalSet::interval(&center - eps * &half, &center + eps * &half)
            .expect("positive cell width");
        if a.intersect(&cell).measure() >= threshold {
            hits.push(n);
        }
        n += 1;
    }
    Ok(IntegerSet::new(hits))
}

/// Smallest integer strictly above, or largest integer strictly below,
/// the given rational.
fn scaled_bound(q: &Scalar, strict_above: bool) -> Result<i64> {
    let floor = q.floor().to_integer();
    let is_integer = q == &Scalar::from_integer(floor.clone());
    let candidate = if strict_above {
        floor + 1
    } else if is_integer {
        floor - 1
    } else {
        floor
    };
    candidate
        .to_i64()
        .ok_or_else(|| Error::IndexOverflow(candidate.to_string()))
}

/// Result of the continuum small-doubling check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmallDoublingReport {
    /// `|A + A| < 3|A|`.
    pub premise: bool,
    pub a_measure: Scalar,
    pub sumset_measure: Scalar,
    pub hull_length: Scalar,
    /// `|A + A| - |A|`; an upper bound for the hull length whenever the
    /// premise holds.
    pub bound: Scalar,
}

/// Exact check that small doubling traps `A` in a short interval:
/// `|A + A| < 3|A|` implies `hull(A) <= |A+A| - |A|`.
pub fn small_doubling_check(a: &IntervalSet) -> Result<SmallDoublingReport> {
    if a.is_empty() {
        return Err(Error::EmptySet("small_doubling_check"));
    }
    let a_measure = a.measure();
    let sumset_measure = a.minkowski_sum(a)?.measure();
    let hull_length = a.hull()?.length();
    let bound = &sumset_measure - &a_measure;
    let premise = sumset_measure < rat(3, 1) * &a_measure;
    if premise {
        assert!(
            hull_length <= bound,
            "small doubling must confine the set to a short interval"
        );
    }
    Ok(SmallDoublingReport {
        premise,
        a_measure,
        sumset_measure,
        hull_length,
        bound,
    })
}
