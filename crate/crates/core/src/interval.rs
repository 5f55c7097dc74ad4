//! Canonical finite unions of half-open rational intervals.
//!
//! Sets are kept in a canonical form: components sorted by left endpoint,
//! pairwise disjoint, separated by strictly positive gaps (touching
//! components are merged). All endpoints are exact rationals, so measures,
//! Boolean combinations, affine images, and Minkowski sumsets are computed
//! without any rounding. The half-open `[lo, hi)` convention is used
//! throughout; it is measure-equivalent to any other endpoint convention
//! and makes the algebra unambiguous.

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{fmt_scalar, parse_scalar, rat, Scalar};

/// Half-open interval `[lo, hi)` with `lo < hi`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Interval {
    lo: Scalar,
    hi: Scalar,
}

impl Interval {
    pub fn new(lo: Scalar, hi: Scalar) -> Result<Self> {
        if lo < hi {
            Ok(Interval { lo, hi })
        } else {
            Err(Error::MalformedInterval {
                lo: fmt_scalar(&lo),
                hi: fmt_scalar(&hi),
            })
        }
    }

    pub fn lo(&self) -> &Scalar {
        &self.lo
    }

    pub fn hi(&self) -> &Scalar {
        &self.hi
    }

    pub fn length(&self) -> Scalar {
        &self.hi - &self.lo
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{})", fmt_scalar(&self.lo), fmt_scalar(&self.hi))
    }
}

/// Boolean set operations on interval sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoolOp {
    Union,
    Intersect,
    Difference,
    SymmetricDifference,
}

/// Canonical finite disjoint union of half-open rational intervals.
///
/// The empty list denotes the empty set.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntervalSet {
    components: Vec<Interval>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet { components: Vec::new() }
    }

    /// Canonicalizes an arbitrary list of valid intervals: sorts, merges
    /// overlapping and touching components. The union and its measure are
    /// preserved exactly.
    pub fn new(mut raw: Vec<Interval>) -> Self {
        raw.sort();
        let mut components: Vec<Interval> = Vec::with_capacity(raw.len());
        for iv in raw {
            match components.last_mut() {
                Some(last) if iv.lo <= last.hi => {
                    if iv.hi > last.hi {
                        last.hi = iv.hi;
                    }
                }
                _ => components.push(iv),
            }
        }
        IntervalSet { components }
    }

    /// Builds a set from raw endpoint pairs, rejecting any pair with
    /// `lo >= hi`.
    pub fn from_endpoints(pairs: Vec<(Scalar, Scalar)>) -> Result<Self> {
        let raw = pairs
            .into_iter()
            .map(|(lo, hi)| Interval::new(lo, hi))
            .collect::<Result<Vec<_>>>()?;
        Ok(IntervalSet::new(raw))
    }

    /// Single-interval set `[lo, hi)`.
    pub fn interval(lo: Scalar, hi: Scalar) -> Result<Self> {
        Ok(IntervalSet { components: vec![Interval::new(lo, hi)?] })
    }

    pub fn components(&self) -> &[Interval] {
        &self.components
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Exact Lebesgue measure: the sum of component lengths.
    pub fn measure(&self) -> Scalar {
        self.components
            .iter()
            .fold(Scalar::zero(), |acc, iv| acc + iv.length())
    }

    /// Exact Boolean combination computed by a sweep over the merged
    /// endpoint list of both operands.
    pub fn boolean(&self, other: &IntervalSet, op: BoolOp) -> IntervalSet {
        let mut cuts: Vec<&Scalar> = Vec::with_capacity(2 * (self.components.len() + other.components.len()));
        for iv in self.components.iter().chain(other.components.iter()) {
            cuts.push(&iv.lo);
            cuts.push(&iv.hi);
        }
        cuts.sort();
        cuts.dedup();

        let keep = |in_a: bool, in_b: bool| match op {
            BoolOp::Union => in_a || in_b,
            BoolOp::Intersect => in_a && in_b,
            BoolOp::Difference => in_a && !in_b,
            BoolOp::SymmetricDifference => in_a != in_b,
        };

        // Walk the elementary segments between consecutive cuts; membership
        // of each operand is constant on every segment.
        let mut out: Vec<Interval> = Vec::new();
        let mut ia = self.components.iter().peekable();
        let mut ib = other.components.iter().peekable();
        for w in cuts.windows(2) {
            let (lo, hi) = (w[0], w[1]);
            while let Some(iv) = ia.peek() {
                if &iv.hi <= lo {
                    ia.next();
                } else {
                    break;
                }
            }
            while let Some(iv) = ib.peek() {
                if &iv.hi <= lo {
                    ib.next();
                } else {
                    break;
                }
            }
            let in_a = ia.peek().is_some_and(|iv| &iv.lo <= lo && lo < &iv.hi);
            let in_b = ib.peek().is_some_and(|iv| &iv.lo <= lo && lo < &iv.hi);
            if keep(in_a, in_b) {
                out.push(Interval { lo: lo.clone(), hi: hi.clone() });
            }
        }
        IntervalSet::new(out)
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        self.boolean(other, BoolOp::Union)
    }

    pub fn intersect(&self, other: &IntervalSet) -> IntervalSet {
        self.boolean(other, BoolOp::Intersect)
    }

    pub fn difference(&self, other: &IntervalSet) -> IntervalSet {
        self.boolean(other, BoolOp::Difference)
    }

    pub fn symmetric_difference(&self, other: &IntervalSet) -> IntervalSet {
        self.boolean(other, BoolOp::SymmetricDifference)
    }

    /// `other ⊆ self`, decided exactly on canonical representatives
    /// (equivalently, up to null sets).
    pub fn includes(&self, other: &IntervalSet) -> bool {
        other.difference(self).is_empty()
    }

    /// Exact point membership under the half-open convention.
    pub fn contains_point(&self, x: &Scalar) -> bool {
        let idx = self.components.partition_point(|iv| &iv.hi <= x);
        self.components
            .get(idx)
            .is_some_and(|iv| &iv.lo <= x && x < &iv.hi)
    }

    /// The image `scale · S + shift`. Rejects `scale = 0`; a negative scale
    /// reflects, with the image renormalized to half-open components.
    pub fn affine(&self, shift: &Scalar, scale: &Scalar) -> Result<IntervalSet> {
        if scale.is_zero() {
            return Err(Error::ZeroScale);
        }
        let mapped = self
            .components
            .iter()
            .map(|iv| {
                let a = scale * &iv.lo + shift;
                let b = scale * &iv.hi + shift;
                if scale.is_positive() {
                    Interval { lo: a, hi: b }
                } else {
                    Interval { lo: b, hi: a }
                }
            })
            .collect();
        Ok(IntervalSet::new(mapped))
    }

    pub fn translate(&self, shift: &Scalar) -> IntervalSet {
        self.affine(shift, &Scalar::from_integer(1.into()))
            .expect("unit scale is nonzero")
    }

    /// Reflection about the origin.
    pub fn reflect(&self) -> IntervalSet {
        self.affine(&Scalar::zero(), &-Scalar::from_integer(1.into()))
            .expect("negative unit scale is nonzero")
    }

    /// Symmetric rearrangement: the centered interval of the same measure.
    /// The empty set rearranges to itself.
    pub fn star(&self) -> IntervalSet {
        if self.is_empty() {
            return IntervalSet::empty();
        }
        let half = self.measure() * rat(1, 2);
        IntervalSet { components: vec![Interval { lo: -half.clone(), hi: half }] }
    }

    /// Exact Minkowski sumset `S + T`, the union of all pairwise component
    /// sums. Empty operands are rejected (the sumset would be empty).
    pub fn minkowski_sum(&self, other: &IntervalSet) -> Result<IntervalSet> {
        if self.is_empty() || other.is_empty() {
            return Err(Error::EmptySet("minkowski_sum"));
        }
        let mut pieces = Vec::with_capacity(self.components.len() * other.components.len());
        for a in &self.components {
            for b in &other.components {
                pieces.push(Interval { lo: &a.lo + &b.lo, hi: &a.hi + &b.hi });
            }
        }
        Ok(IntervalSet::new(pieces))
    }

    /// The iterated signed sumset `λS − μS`: a sum of λ copies of `S` and
    /// μ copies of `−S`. One of λ, μ may be zero (that side is dropped);
    /// λ = μ = 0 is rejected.
    pub fn iterated_sumset(&self, lambda: u32, mu: u32) -> Result<IntervalSet> {
        if lambda == 0 && mu == 0 {
            return Err(Error::EmptyIteratedSumset);
        }
        if self.is_empty() {
            return Err(Error::EmptySet("iterated_sumset"));
        }
        let reflected = self.reflect();
        let mut acc: Option<IntervalSet> = None;
        for _ in 0..lambda {
            acc = Some(match acc {
                None => self.clone(),
                Some(s) => s.minkowski_sum(self)?,
            });
        }
        for _ in 0..mu {
            acc = Some(match acc {
                None => reflected.clone(),
                Some(s) => s.minkowski_sum(&reflected)?,
            });
        }
        Ok(acc.expect("lambda + mu >= 1"))
    }

    /// Smallest interval containing the set.
    pub fn hull(&self) -> Result<Interval> {
        let first = self.components.first().ok_or(Error::EmptySet("hull"))?;
        let last = self.components.last().expect("nonempty");
        Ok(Interval { lo: first.lo.clone(), hi: last.hi.clone() })
    }
}

/// The centered interval of length `a`: `[-a/2, a/2)`.
pub fn centered_interval(a: &Scalar) -> Result<IntervalSet> {
    if !a.is_positive() {
        return Err(Error::NonpositiveArgument {
            op: "centered_interval",
            value: fmt_scalar(a),
        });
    }
    let half = a * rat(1, 2);
    IntervalSet::interval(-half.clone(), half)
}

impl fmt::Display for IntervalSet {
    /// Canonical literal: `{}` for the empty set, otherwise components
    /// joined by ` u `, e.g. `[0,1) u [3/2,2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "{{}}");
        }
        let parts: Vec<String> = self.components.iter().map(|iv| iv.to_string()).collect();
        write!(f, "{}", parts.join(" u "))
    }
}

impl FromStr for IntervalSet {
    type Err = Error;

    /// Parses the set literal grammar
    /// `IntervalSet := "{}" | "[" Q "," Q ")" ( "u" "[" Q "," Q ")" )*`.
    /// Input is canonicalized, so printing after parsing is a fixed point.
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        if trimmed == "{}" {
            return Ok(IntervalSet::empty());
        }
        if trimmed.is_empty() {
            return Err(Error::Parse("empty interval-set literal".into()));
        }
        let mut pieces = Vec::new();
        for part in trimmed.split(['u', 'U']) {
            let p = part.trim();
            let inner = p
                .strip_prefix('[')
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(|| {
                    Error::Parse(format!("expected `[lo,hi)` component, got `{p}`"))
                })?;
            let (lo_str, hi_str) = inner
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("missing `,` in `{p}`")))?;
            let lo = parse_scalar(lo_str)?;
            let hi = parse_scalar(hi_str)?;
            pieces.push(Interval::new(lo, hi)?);
        }
        Ok(IntervalSet::new(pieces))
    }
}
