//! Exact piecewise-linear functions and indicator convolutions.
//!
//! `1_A * 1_B` for interval-union sets `A`, `B` is continuous, compactly
//! supported, and piecewise linear with rational breakpoints. Each pair of
//! components contributes one trapezoid; the sum is assembled by
//! accumulating slope changes at rational points, so every value, integral,
//! and level-crossing below is exact.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::interval::IntervalSet;
use crate::scalar::{approx, fmt_scalar, rat, Scalar};

/// Compactly supported continuous piecewise-linear function.
///
/// Stored as breakpoints `(x_i, v_i)` with strictly increasing `x_i`,
/// `v_0 = v_n = 0`, affine interpolation in between, and zero outside
/// `[x_0, x_n]`. Breakpoints where the slope does not change are never
/// stored. The empty breakpoint list is the zero function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiecewiseLinear {
    points: Vec<(Scalar, Scalar)>,
}

impl PiecewiseLinear {
    pub fn zero() -> Self {
        PiecewiseLinear { points: Vec::new() }
    }

    /// Integrates a map of slope increments twice: `deltas[x]` is the jump
    /// of `f'` at `x`. Requires the increments to sum to zero and the
    /// resulting function to return to zero, which holds for any finite sum
    /// of trapezoids.
    fn from_slope_deltas(deltas: BTreeMap<Scalar, Scalar>) -> Self {
        let mut points: Vec<(Scalar, Scalar)> = Vec::with_capacity(deltas.len());
        let mut slope = Scalar::zero();
        let mut value = Scalar::zero();
        let mut prev_x: Option<Scalar> = None;
        for (x, delta) in deltas {
            if delta.is_zero() {
                continue;
            }
            if let Some(px) = &prev_x {
                value += &slope * (&x - px);
            }
            points.push((x.clone(), value.clone()));
            slope += delta;
            prev_x = Some(x);
        }
        debug_assert!(slope.is_zero(), "slope increments must sum to zero");
        debug_assert!(points.last().is_none_or(|(_, v)| v.is_zero()));
        PiecewiseLinear { points }
    }

    pub fn points(&self) -> &[(Scalar, Scalar)] {
        &self.points
    }

    pub fn is_zero(&self) -> bool {
        self.points.is_empty()
    }

    /// Exact value at `x`; zero outside the support.
    pub fn evaluate(&self, x: &Scalar) -> Scalar {
        let idx = self.points.partition_point(|(px, _)| px <= x);
        if idx == 0 || idx == self.points.len() {
            return Scalar::zero();
        }
        let (x1, v1) = &self.points[idx - 1];
        let (x2, v2) = &self.points[idx];
        v1 + (v2 - v1) * (x - x1) / (x2 - x1)
    }

    /// Maximum value, attained at a breakpoint.
    pub fn max_value(&self) -> Scalar {
        self.points
            .iter()
            .map(|(_, v)| v.clone())
            .fold(Scalar::zero(), |a, b| if b > a { b } else { a })
    }

    pub fn min_value(&self) -> Scalar {
        self.points
            .iter()
            .map(|(_, v)| v.clone())
            .fold(Scalar::zero(), |a, b| if b < a { b } else { a })
    }

    /// Exact total integral.
    pub fn integral(&self) -> Scalar {
        let mut acc = Scalar::zero();
        for w in self.points.windows(2) {
            let (x1, v1) = &w[0];
            let (x2, v2) = &w[1];
            acc += (x2 - x1) * (v1 + v2) * rat(1, 2);
        }
        acc
    }

    /// Exact integral of the function over an interval set, i.e. the
    /// pairing with the set's indicator.
    pub fn integrate_over(&self, set: &IntervalSet) -> Scalar {
        let mut acc = Scalar::zero();
        if self.points.is_empty() {
            return acc;
        }
        let support_lo = &self.points.first().expect("nonempty").0;
        let support_hi = &self.points.last().expect("nonempty").0;
        for comp in set.components() {
            let lo = if comp.lo() > support_lo { comp.lo() } else { support_lo };
            let hi = if comp.hi() < support_hi { comp.hi() } else { support_hi };
            if lo >= hi {
                continue;
            }
            // Refine by the breakpoints strictly inside (lo, hi).
            let mut cuts: Vec<Scalar> = vec![lo.clone()];
            for (x, _) in &self.points {
                if x > lo && x < hi {
                    cuts.push(x.clone());
                }
            }
            cuts.push(hi.clone());
            for w in cuts.windows(2) {
                let va = self.evaluate(&w[0]);
                let vb = self.evaluate(&w[1]);
                acc += (&w[1] - &w[0]) * (va + vb) * rat(1, 2);
            }
        }
        acc
    }

    /// Exact superlevel set `{x : f(x) > t}` for `t >= 0`, stored in the
    /// half-open convention (equal to the true open set up to null
    /// boundary points). Crossing points are solved exactly per segment;
    /// plateaus at height exactly `t` are excluded by the strict
    /// inequality.
    pub fn superlevel(&self, t: &Scalar) -> Result<IntervalSet> {
        if t.is_negative() {
            return Err(Error::NegativeLevel(fmt_scalar(t)));
        }
        let mut pieces = Vec::new();
        for w in self.points.windows(2) {
            let (x1, v1) = &w[0];
            let (x2, v2) = &w[1];
            let above1 = v1 > t;
            let above2 = v2 > t;
            let piece = if above1 && above2 {
                Some((x1.clone(), x2.clone()))
            } else if above1 {
                // Falling crossing: f(x*) = t with v1 > t >= v2.
                let x_star = x1 + (v1 - t) * (x2 - x1) / (v1 - v2);
                Some((x1.clone(), x_star))
            } else if above2 {
                let x_star = x1 + (t - v1) * (x2 - x1) / (v2 - v1);
                Some((x_star, x2.clone()))
            } else {
                None
            };
            if let Some((lo, hi)) = piece {
                if lo < hi {
                    pieces.push((lo, hi));
                }
            }
        }
        IntervalSet::from_endpoints(pieces)
    }

    /// Total length of the segments on which the function is identically
    /// equal to `h`.
    pub fn plateau_measure(&self, h: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for w in self.points.windows(2) {
            let (x1, v1) = &w[0];
            let (x2, v2) = &w[1];
            if v1 == h && v2 == h {
                acc += x2 - x1;
            }
        }
        acc
    }

    /// The distribution function `t -> |{f > t}|` on `[0, max f]`.
    ///
    /// Requires `f >= 0`. The result is nonincreasing and piecewise linear
    /// with jump discontinuities wherever `f` has a plateau of positive
    /// length; see [`Distribution`].
    pub fn distribution(&self) -> Result<Distribution> {
        if self.min_value().is_negative() {
            return Err(Error::NegativeFunction);
        }
        let mut heights: Vec<Scalar> = self.points.iter().map(|(_, v)| v.clone()).collect();
        heights.push(Scalar::zero());
        heights.sort();
        heights.dedup();
        let mut pieces = Vec::new();
        for w in heights.windows(2) {
            let (lo, hi) = (&w[0], &w[1]);
            let value_lo = self.superlevel(lo)?.measure();
            // Left limit at `hi`: the strict superlevel measure plus the
            // length of any plateau sitting exactly at that height.
            let value_hi = self.superlevel(hi)?.measure() + self.plateau_measure(hi);
            pieces.push(DistributionPiece {
                t_lo: lo.clone(),
                t_hi: hi.clone(),
                value_lo,
                value_hi,
            });
        }
        Ok(Distribution { pieces })
    }

    /// CSV rendering of the breakpoints: exact rationals next to decimal
    /// shadows (shadows are non-authoritative).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,value,x_approx,value_approx\n");
        for (x, v) in &self.points {
            out.push_str(&format!(
                "{},{},{},{}\n",
                fmt_scalar(x),
                fmt_scalar(v),
                approx(x),
                approx(v)
            ));
        }
        out
    }
}

impl fmt::Display for PiecewiseLinear {
    /// Ordered `(x,v)` pairs in the rational grammar, e.g.
    /// `(0,0) (1,1) (2,0)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.points.is_empty() {
            return write!(f, "(zero)");
        }
        let parts: Vec<String> = self
            .points
            .iter()
            .map(|(x, v)| format!("({},{})", fmt_scalar(x), fmt_scalar(v)))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// One affine piece of a distribution function on `[t_lo, t_hi)`.
///
/// `value_lo` is the value at `t_lo` (the strict superlevel measure there);
/// `value_hi` is the left limit at `t_hi`, which exceeds the value at
/// `t_hi` exactly when the underlying function has a plateau at that
/// height.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistributionPiece {
    pub t_lo: Scalar,
    pub t_hi: Scalar,
    pub value_lo: Scalar,
    pub value_hi: Scalar,
}

/// Nonincreasing piecewise-linear distribution function with possible
/// downward jumps at plateau heights. Values follow the strict superlevel
/// convention: `value(t) = |{f > t}|`, right-continuous in `t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Distribution {
    pieces: Vec<DistributionPiece>,
}

impl Distribution {
    pub fn pieces(&self) -> &[DistributionPiece] {
        &self.pieces
    }

    /// Largest height with a nonzero superlevel set (the max of `f`).
    pub fn max_height(&self) -> Scalar {
        self.pieces
            .last()
            .map(|p| p.t_hi.clone())
            .unwrap_or_else(Scalar::zero)
    }

    /// Exact value `|{f > t}|` for `t >= 0`.
    pub fn value(&self, t: &Scalar) -> Scalar {
        for p in &self.pieces {
            if &p.t_lo <= t && t < &p.t_hi {
                return &p.value_lo
                    + (&p.value_hi - &p.value_lo) * (t - &p.t_lo) / (&p.t_hi - &p.t_lo);
            }
        }
        Scalar::zero()
    }

    /// Exact integral over `[0, max f]`; jumps live on a null set of
    /// heights and do not contribute.
    pub fn integral(&self) -> Scalar {
        let mut acc = Scalar::zero();
        for p in &self.pieces {
            acc += (&p.t_hi - &p.t_lo) * (&p.value_lo + &p.value_hi) * rat(1, 2);
        }
        acc
    }
}

/// Exact convolution `1_A * 1_B` as a sum of per-component-pair trapezoids.
///
/// Total integral is `|A|·|B|`, the maximum is at most `min(|A|, |B|)`, and
/// the support is contained in `hull(A) + hull(B)`.
pub fn convolve_indicators(a: &IntervalSet, b: &IntervalSet) -> Result<PiecewiseLinear> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySet("convolve_indicators"));
    }
    let one = Scalar::from_integer(1.into());
    let mut deltas: BTreeMap<Scalar, Scalar> = BTreeMap::new();
    let mut bump = |x: Scalar, d: &Scalar| {
        let entry = deltas.entry(x).or_insert_with(Scalar::zero);
        *entry = &*entry + d;
    };
    for ca in a.components() {
        for cb in b.components() {
            let start = ca.lo() + cb.lo();
            let end = ca.hi() + cb.hi();
            let la = ca.length();
            let lb = cb.length();
            let rise = if la < lb { la } else { lb };
            // Trapezoid: slope +1 on [start, start+rise), 0 on the
            // plateau, -1 on [end-rise, end).
            bump(start.clone(), &one);
            bump(start + &rise, &-&one);
            bump(&end - &rise, &-&one);
            bump(end, &one);
        }
    }
    Ok(PiecewiseLinear::from_slope_deltas(deltas))
}

/// The trilinear pairing `<1_A * 1_B, 1_C>`, exact.
pub fn pairing(a: &IntervalSet, b: &IntervalSet, c: &IntervalSet) -> Result<Scalar> {
    if c.is_empty() {
        return Err(Error::EmptySet("pairing"));
    }
    Ok(convolve_indicators(a, b)?.integrate_over(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use proptest::prelude::*;

    fn set(s: &str) -> IntervalSet {
        s.parse().unwrap()
    }

    fn triangle() -> PiecewiseLinear {
        convolve_indicators(&set("[0,1)"), &set("[0,1)")).unwrap()
    }

    /// Independent quadrature oracle: the midpoint rule is exact for
    /// affine pieces, and uses only `evaluate`.
    fn midpoint_integral(f: &PiecewiseLinear, s: &IntervalSet) -> Scalar {
        let mut cuts: Vec<Scalar> = f.points().iter().map(|(x, _)| x.clone()).collect();
        for comp in s.components() {
            cuts.push(comp.lo().clone());
            cuts.push(comp.hi().clone());
        }
        cuts.sort();
        cuts.dedup();
        let mut acc = Scalar::zero();
        for w in cuts.windows(2) {
            let mid = (&w[0] + &w[1]) * rat(1, 2);
            if s.contains_point(&mid) {
                acc += f.evaluate(&mid) * (&w[1] - &w[0]);
            }
        }
        acc
    }

    #[test]
    fn unit_triangle_breakpoints() {
        let f = triangle();
        assert_eq!(
            f.points(),
            &[(int(0), int(0)), (int(1), int(1)), (int(2), int(0))]
        );
        assert_eq!(f.evaluate(&rat(1, 2)), rat(1, 2));
        assert_eq!(f.evaluate(&int(1)), int(1));
        assert_eq!(f.evaluate(&rat(3, 4)), rat(3, 4));
        assert_eq!(f.evaluate(&int(3)), int(0));
        assert_eq!(f.max_value(), int(1));
    }

    #[test]
    fn trapezoid_of_unequal_intervals() {
        let f = convolve_indicators(&set("[0,2)"), &set("[0,1)")).unwrap();
        assert_eq!(
            f.points(),
            &[
                (int(0), int(0)),
                (int(1), int(1)),
                (int(2), int(1)),
                (int(3), int(0))
            ]
        );
        assert_eq!(f.integral(), int(2));
        assert_eq!(f.plateau_measure(&int(1)), int(1));
    }

    #[test]
    fn integrate_over_examples() {
        let f = triangle();
        assert_eq!(f.integrate_over(&set("[0,2)")), int(1));
        // Oracle: the midpoint rule gives 1/2 for the left half.
        assert_eq!(midpoint_integral(&f, &set("[0,1)")), rat(1, 2));
        assert_eq!(f.integrate_over(&set("[0,1)")), rat(1, 2));
        assert_eq!(f.integrate_over(&IntervalSet::empty()), int(0));
    }

    #[test]
    fn pairing_examples() {
        let u = set("[0,1)");
        assert_eq!(pairing(&u, &u, &u).unwrap(), rat(1, 2));
        assert_eq!(pairing(&u, &u, &set("[0,2)")).unwrap(), int(1));
        assert!(pairing(&u, &u, &IntervalSet::empty()).is_err());
        assert!(pairing(&IntervalSet::empty(), &u, &u).is_err());
    }

    #[test]
    fn pairing_translation_covariance() {
        let a = set("[0,1) u [3/2,2)");
        let b = set("[-1,1)");
        let c = set("[0,3)");
        let u = rat(7, 3);
        let v = int(-2);
        let shifted = pairing(
            &a.translate(&u),
            &b.translate(&v),
            &c.translate(&(&u + &v)),
        )
        .unwrap();
        assert_eq!(shifted, pairing(&a, &b, &c).unwrap());
    }

    #[test]
    fn superlevel_examples() {
        let f = triangle();
        let s = f.superlevel(&rat(1, 2)).unwrap();
        assert_eq!(s, set("[1/2,3/2)"));
        assert_eq!(s.measure(), int(1));
        assert!(f.superlevel(&int(1)).unwrap().is_empty());
        assert!(f.superlevel(&int(2)).unwrap().is_empty());
        assert_eq!(f.superlevel(&int(0)).unwrap(), set("[0,2)"));
        assert!(f.superlevel(&rat(-1, 2)).is_err());
    }

    #[test]
    fn superlevel_excludes_exact_plateau() {
        let f = convolve_indicators(&set("[0,2)"), &set("[0,1)")).unwrap();
        // The plateau sits exactly at height 1 = min(|A|,|B|).
        assert!(f.superlevel(&int(1)).unwrap().is_empty());
        assert_eq!(f.superlevel(&rat(1, 2)).unwrap(), set("[1/2,5/2)"));
    }

    #[test]
    fn bumps_with_zero_gap_stay_separate() {
        let f = convolve_indicators(&set("[0,1) u [10,11)"), &set("[0,1)")).unwrap();
        assert_eq!(f.superlevel(&int(0)).unwrap(), set("[0,2) u [10,12)"));
        assert_eq!(f.integral(), int(2));
    }

    #[test]
    fn distribution_of_triangle() {
        let d = triangle().distribution().unwrap();
        assert_eq!(d.pieces().len(), 1);
        assert_eq!(d.value(&int(0)), int(2));
        assert_eq!(d.value(&rat(1, 4)), rat(3, 2));
        assert_eq!(d.value(&rat(1, 2)), int(1));
        assert_eq!(d.value(&int(1)), int(0));
        assert_eq!(d.max_height(), int(1));
        assert_eq!(d.integral(), int(1));
    }

    #[test]
    fn distribution_of_trapezoid_has_jump() {
        let f = convolve_indicators(&set("[0,2)"), &set("[0,1)")).unwrap();
        let d = f.distribution().unwrap();
        // |S_t| = |A|+|B|-2t = 3-2t on [0,1), then drops to 0 at t = 1.
        assert_eq!(d.value(&int(0)), int(3));
        assert_eq!(d.value(&rat(1, 2)), int(2));
        assert_eq!(d.value(&int(1)), int(0));
        let piece = &d.pieces()[0];
        assert_eq!(piece.value_lo, int(3));
        assert_eq!(piece.value_hi, int(1)); // left limit: the plateau survives
        assert_eq!(d.integral(), f.integral());
    }

    #[test]
    fn distribution_with_interior_shelf_plateau() {
        // Two unit components half a unit apart against a unit interval:
        // the two bumps overlap in a shelf at height 1/2 on [3/2, 2], so
        // the distribution jumps by the shelf length at that height.
        let f = convolve_indicators(&set("[0,1) u [3/2,5/2)"), &set("[0,1)")).unwrap();
        assert_eq!(f.evaluate(&rat(7, 4)), rat(1, 2));
        assert_eq!(f.plateau_measure(&rat(1, 2)), rat(1, 2));
        let d = f.distribution().unwrap();
        // Below the shelf: one component, measure 7/2 - 2t.
        assert_eq!(d.value(&rat(1, 4)), int(3));
        // At and above the shelf: two components, measure 4 - 4t.
        assert_eq!(d.value(&rat(1, 2)), int(2));
        assert_eq!(d.value(&rat(3, 4)), int(1));
        let shelf_piece = &d.pieces()[0];
        assert_eq!(shelf_piece.value_lo, rat(7, 2));
        assert_eq!(shelf_piece.value_hi, rat(5, 2)); // left limit keeps the shelf
        assert_eq!(
            f.superlevel(&rat(1, 2)).unwrap(),
            set("[1/2,3/2) u [2,3)")
        );
        assert_eq!(d.integral(), f.integral());
    }

    #[test]
    fn zero_function_behaviour() {
        let z = PiecewiseLinear::zero();
        assert!(z.is_zero());
        assert_eq!(z.evaluate(&int(3)), int(0));
        assert!(z.superlevel(&int(0)).unwrap().is_empty());
        assert_eq!(z.integral(), int(0));
        let d = z.distribution().unwrap();
        assert_eq!(d.value(&int(0)), int(0));
    }

    #[test]
    fn display_formats() {
        assert_eq!(triangle().to_string(), "(0,0) (1,1) (2,0)");
        let csv = triangle().to_csv();
        assert!(csv.starts_with("x,value,x_approx,value_approx\n"));
        assert!(csv.contains("1,1,1,1"));
    }

    fn arb_set() -> impl Strategy<Value = IntervalSet> {
        prop::collection::vec(((-30i64..30), (1i64..=6), (1i64..=20)), 1..4).prop_map(
            |triples| {
                IntervalSet::from_endpoints(
                    triples
                        .into_iter()
                        .map(|(num, den, len)| {
                            let lo = rat(num, den);
                            let hi = &lo + rat(len, den);
                            (lo, hi)
                        })
                        .collect(),
                )
                .unwrap()
            },
        )
    }

    proptest! {
        #[test]
        fn convolution_total_mass(a in arb_set(), b in arb_set()) {
            let f = convolve_indicators(&a, &b).unwrap();
            prop_assert_eq!(f.integral(), a.measure() * b.measure());
            prop_assert!(f.min_value() >= Scalar::zero());
            let min_measure = std::cmp::min(a.measure(), b.measure());
            prop_assert!(f.max_value() <= min_measure);
            // Support is contained in hull(A) + hull(B).
            let ha = a.hull().unwrap();
            let hb = b.hull().unwrap();
            if let (Some(first), Some(last)) = (f.points().first(), f.points().last()) {
                prop_assert!(first.0 >= (ha.lo() + hb.lo()));
                prop_assert!(last.0 <= (ha.hi() + hb.hi()));
            }
        }

        #[test]
        fn pairing_symmetric_in_first_two(a in arb_set(), b in arb_set(), c in arb_set()) {
            prop_assert_eq!(pairing(&a, &b, &c).unwrap(), pairing(&b, &a, &c).unwrap());
        }

        #[test]
        fn pairing_reflection_identity(a in arb_set(), b in arb_set(), c in arb_set()) {
            // <1_A*1_B, 1_C> = <1_{-A}*1_C, 1_B> by substituting in the
            // double integral.
            let lhs = pairing(&a, &b, &c).unwrap();
            let rhs = pairing(&a.reflect(), &c, &b).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn convolution_matches_sliding_intersection(a in arb_set(), b in arb_set()) {
            // f(x) = |(x - A) ∩ B| exactly, checked at breakpoints and
            // segment midpoints.
            let f = convolve_indicators(&a, &b).unwrap();
            let mut probes: Vec<Scalar> = f.points().iter().map(|(x, _)| x.clone()).collect();
            for w in f.points().windows(2) {
                probes.push((&w[0].0 + &w[1].0) * rat(1, 2));
            }
            let reflected = a.reflect();
            for x in probes {
                let window = reflected.translate(&x).intersect(&b);
                prop_assert_eq!(f.evaluate(&x), window.measure());
            }
        }

        #[test]
        fn pairing_dominated_by_rearranged_pairing(a in arb_set(), b in arb_set(), c in arb_set()) {
            let lhs = pairing(&a, &b, &c).unwrap();
            let rhs = pairing(&a.star(), &b.star(), &c.star()).unwrap();
            prop_assert!(lhs <= rhs);
        }

        #[test]
        fn superlevel_monotone(a in arb_set(), b in arb_set(), n1 in 0i64..8, n2 in 0i64..8) {
            let f = convolve_indicators(&a, &b).unwrap();
            let max = f.max_value();
            let s = &max * rat(n1.min(n2), 8);
            let t = &max * rat(n1.max(n2), 8);
            let s_set = f.superlevel(&s).unwrap();
            let t_set = f.superlevel(&t).unwrap();
            prop_assert!(s_set.includes(&t_set));
        }

        #[test]
        fn layer_cake(a in arb_set(), b in arb_set()) {
            let f = convolve_indicators(&a, &b).unwrap();
            prop_assert_eq!(f.distribution().unwrap().integral(), f.integral());
        }

        #[test]
        fn distribution_value_matches_superlevel(a in arb_set(), b in arb_set(), n in 0i64..10) {
            let f = convolve_indicators(&a, &b).unwrap();
            let t = f.max_value() * rat(n, 10);
            let d = f.distribution().unwrap();
            prop_assert_eq!(d.value(&t), f.superlevel(&t).unwrap().measure());
        }
    }
}
