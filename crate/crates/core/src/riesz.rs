//! The rearrangement functional on centered intervals, deficit reports,
//! and the stability checks built on superlevel sets.
//!
//! `theta(a, b, c)` is the trilinear pairing when all three sets are
//! centered intervals; by the rearrangement inequality it dominates the
//! pairing of any sets of the same measures, and the gap (the deficit) is
//! the central quantity probed here. Everything is exact: bounds involving
//! a square root of the normalized deficit are compared in squared form.

use std::cmp::{max, min};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::interval::{centered_interval, Interval, IntervalSet};
use crate::pl::{convolve_indicators, pairing};
use crate::scalar::{fmt_scalar, rat, Scalar};

/// Pairing of three centered intervals of measures `a`, `b`, `c`, computed
/// through the convolution path. Symmetric in all three arguments.
pub fn theta(a: &Scalar, b: &Scalar, c: &Scalar) -> Result<Scalar> {
    for (label, v) in [("a", a), ("b", b), ("c", c)] {
        if !v.is_positive() {
            return Err(Error::NonpositiveArgument {
                op: "theta",
                value: format!("{label} = {}", fmt_scalar(v)),
            });
        }
    }
    pairing(
        &centered_interval(a)?,
        &centered_interval(b)?,
        &centered_interval(c)?,
    )
}

/// Closed-form evaluation of the same functional, kept as an independent
/// reference route against the convolution path. With `m = min(a,b)` and
/// `M = max(a,b)`:
///
/// * `c <= M - m`: the window sits under the plateau, value `m·c`;
/// * `M - m <= c <= M + m`: `m(M-m) + (1/2)∫_{M-m}^{c}(M+m-t)dt`;
/// * `c >= M + m`: full mass `m·M`.
pub fn theta_closed_form(a: &Scalar, b: &Scalar, c: &Scalar) -> Result<Scalar> {
    for (label, v) in [("a", a), ("b", b), ("c", c)] {
        if !v.is_positive() {
            return Err(Error::NonpositiveArgument {
                op: "theta_closed_form",
                value: format!("{label} = {}", fmt_scalar(v)),
            });
        }
    }
    let m = min(a, b).clone();
    let big = max(a, b).clone();
    let lo = &big - &m;
    let hi = &big + &m;
    if c <= &lo {
        Ok(&m * c)
    } else if c >= &hi {
        Ok(&m * &big)
    } else {
        // (1/2) * [ (M+m)t - t^2/2 ] evaluated from M-m to c.
        let half = rat(1, 2);
        let integral = &half * (&hi * (c - &lo) - (c * c - &lo * &lo) * &half);
        Ok(&m * &lo + integral)
    }
}

/// Measure window in which equality forces all three sets to be intervals:
/// `max(a,b,c) <= min(a+b, b+c, a+c)`.
pub fn burchard_admissible(a: &Scalar, b: &Scalar, c: &Scalar) -> bool {
    let largest = max(max(a, b), c);
    let ab = a + b;
    let bc = b + c;
    let ac = a + c;
    let smallest_sum = min(min(&ab, &bc), &ac);
    largest <= smallest_sum
}

/// Outcome of one deficit computation for a triple of sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeficitReport {
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
    pub pairing_value: Scalar,
    pub theta_value: Scalar,
    /// `theta - pairing`, nonnegative by the rearrangement inequality.
    pub deficit: Scalar,
    /// Deficit normalized by `max(a, b)^2`.
    pub delta: Scalar,
    pub burchard_admissible: bool,
}

/// Exact deficit of the triple `(A, B, C)`.
pub fn rs_deficit(
    a_set: &IntervalSet,
    b_set: &IntervalSet,
    c_set: &IntervalSet,
) -> Result<DeficitReport> {
    if a_set.is_empty() || b_set.is_empty() || c_set.is_empty() {
        return Err(Error::EmptySet("rs_deficit"));
    }
    let a = a_set.measure();
    let b = b_set.measure();
    let c = c_set.measure();
    let pairing_value = pairing(a_set, b_set, c_set)?;
    let theta_value = theta(&a, &b, &c)?;
    let deficit = &theta_value - &pairing_value;
    let largest = max(&a, &b).clone();
    let delta = &deficit / (&largest * &largest);
    Ok(DeficitReport {
        burchard_admissible: burchard_admissible(&a, &b, &c),
        a,
        b,
        c,
        pairing_value,
        theta_value,
        deficit,
        delta,
    })
}

/// Interval minimizing the symmetric difference with `A`, together with
/// the minimum value.
///
/// Since `|A △ J| = |A| - (covered length - swallowed gap length)`, the
/// optimum spans a contiguous run of components and is found by a
/// maximum-weight scan (components weigh `+length`, gaps `-length`). Ties
/// are broken toward the leftmost left endpoint, then the shortest
/// interval, so the result is deterministic.
pub fn best_interval(a_set: &IntervalSet) -> Result<(Interval, Scalar)> {
    let comps = a_set.components();
    if comps.is_empty() {
        return Err(Error::EmptySet("best_interval"));
    }
    // best = (weight, start, end); run = weight of the best window ending
    // at the current component, started at `run_start`.
    let mut best_weight = comps[0].length();
    let mut best_range = (0usize, 0usize);
    let mut run_weight = comps[0].length();
    let mut run_start = 0usize;
    for j in 1..comps.len() {
        let gap = comps[j].lo() - comps[j - 1].hi();
        let extended = &run_weight - &gap + comps[j].length();
        let solo = comps[j].length();
        if extended >= solo {
            run_weight = extended;
        } else {
            run_weight = solo;
            run_start = j;
        }
        if run_weight > best_weight
            || (run_weight == best_weight && run_start < best_range.0)
        {
            best_weight = run_weight.clone();
            best_range = (run_start, j);
        }
    }
    let interval = Interval::new(
        comps[best_range.0].lo().clone(),
        comps[best_range.1].hi().clone(),
    )
    .expect("component endpoints are ordered");
    let symdiff = a_set.measure() - best_weight;
    Ok((interval, symdiff))
}

/// Gap measurements between a set `E` and the superlevel set matched to
/// its measure, with the deficit-driven bounds checked in squared form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperlevelGaps {
    /// Measure window `max - min < |E| < |A| + |B|`; when violated the
    /// detail is omitted and nothing is asserted.
    pub window_ok: bool,
    pub alpha: Scalar,
    pub delta: Scalar,
    pub deficit: Scalar,
    pub detail: Option<SuperlevelGapDetail>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperlevelGapDetail {
    pub e_minus_s: Scalar,
    pub s_minus_e: Scalar,
    pub symdiff: Scalar,
    pub s_alpha_measure: Scalar,
    pub s_union_e: Scalar,
    /// `|E ∩ S_alpha| >= max - min`, the regime in which the quadratic
    /// increment identity applies on the lower side.
    pub lower_middle_regime: bool,
    /// `|S_alpha ∪ E| <= |A| + |B|`, same on the upper side.
    pub upper_middle_regime: bool,
    /// `|E \ S_alpha|^2 <= 4·deficit` (the constant 2 before the square
    /// root, asserted whenever the lower regime applies).
    pub lower_bound_ok: bool,
    /// `(|S_alpha ∪ E| - |E|)^2 <= 4·deficit`, asserted in the upper
    /// regime.
    pub upper_bound_ok: bool,
}

/// Quantifies how well `E` matches `S_alpha` where `alpha` is defined by
/// `|E| = |A| + |B| - 2·alpha`. With zero deficit and the window
/// satisfied, the symmetric difference is exactly zero.
pub fn superlevel_gaps(
    a_set: &IntervalSet,
    b_set: &IntervalSet,
    e_set: &IntervalSet,
) -> Result<SuperlevelGaps> {
    if a_set.is_empty() || b_set.is_empty() || e_set.is_empty() {
        return Err(Error::EmptySet("superlevel_gaps"));
    }
    let a = a_set.measure();
    let b = b_set.measure();
    let e = e_set.measure();
    let spread = max(&a, &b) - min(&a, &b);
    let total = &a + &b;
    let window_ok = spread < e && e < total;
    let alpha = (&total - &e) * rat(1, 2);
    let report = rs_deficit(a_set, b_set, e_set)?;
    if !window_ok {
        return Ok(SuperlevelGaps {
            window_ok,
            alpha,
            delta: report.delta,
            deficit: report.deficit,
            detail: None,
        });
    }
    let f = convolve_indicators(a_set, b_set)?;
    let s_alpha = f.superlevel(&alpha)?;
    let e_minus_s = e_set.difference(&s_alpha).measure();
    let s_minus_e = s_alpha.difference(e_set).measure();
    let symdiff = &e_minus_s + &s_minus_e;
    let s_union_e = s_alpha.union(e_set).measure();
    let e_cap_s = &e - &e_minus_s;
    let lower_middle_regime = e_cap_s >= spread;
    let upper_middle_regime = s_union_e <= total;
    let four_deficit = rat(4, 1) * &report.deficit;
    let lower_bound_ok = &e_minus_s * &e_minus_s <= four_deficit;
    let upper_excess = &s_union_e - &e;
    let upper_bound_ok = &upper_excess * &upper_excess <= four_deficit;
    if lower_middle_regime {
        assert!(lower_bound_ok, "lower superlevel gap bound violated");
    }
    if upper_middle_regime {
        assert!(upper_bound_ok, "upper superlevel gap bound violated");
    }
    if report.deficit.is_zero() {
        assert!(symdiff.is_zero(), "zero deficit must give S_alpha = E");
    }
    Ok(SuperlevelGaps {
        window_ok,
        alpha,
        delta: report.delta,
        deficit: report.deficit,
        detail: Some(SuperlevelGapDetail {
            e_minus_s,
            s_minus_e,
            symdiff,
            s_alpha_measure: s_alpha.measure(),
            s_union_e,
            lower_middle_regime,
            upper_middle_regime,
            lower_bound_ok,
            upper_bound_ok,
        }),
    })
}

/// Near-equality transferred from `E` to the matched superlevel set: how
/// far `|S_alpha|` is from `|E|`, and the deficit of `(A, B, S_alpha)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperlevelTransfer {
    pub window_ok: bool,
    pub alpha: Scalar,
    pub delta: Scalar,
    pub s_alpha_measure: Option<Scalar>,
    /// `| |S_alpha| - |E| |`.
    pub measure_gap: Option<Scalar>,
    /// Deficit of `(A, B, S_alpha)`; absent when `S_alpha` is empty.
    pub induced_deficit: Option<Scalar>,
}

pub fn superlevel_transfer(
    a_set: &IntervalSet,
    b_set: &IntervalSet,
    e_set: &IntervalSet,
) -> Result<SuperlevelTransfer> {
    if a_set.is_empty() || b_set.is_empty() || e_set.is_empty() {
        return Err(Error::EmptySet("superlevel_transfer"));
    }
    let a = a_set.measure();
    let b = b_set.measure();
    let e = e_set.measure();
    let spread = max(&a, &b) - min(&a, &b);
    let total = &a + &b;
    let window_ok = spread < e && e < total;
    let alpha = (&total - &e) * rat(1, 2);
    let report = rs_deficit(a_set, b_set, e_set)?;
    if !window_ok {
        return Ok(SuperlevelTransfer {
            window_ok,
            alpha,
            delta: report.delta,
            s_alpha_measure: None,
            measure_gap: None,
            induced_deficit: None,
        });
    }
    let f = convolve_indicators(a_set, b_set)?;
    let s_alpha = f.superlevel(&alpha)?;
    let s_measure = s_alpha.measure();
    let measure_gap = (&s_measure - &e).abs();
    let induced_deficit = if s_alpha.is_empty() {
        None
    } else {
        Some(rs_deficit(a_set, b_set, &s_alpha)?.deficit)
    };
    if report.deficit.is_zero() {
        assert!(measure_gap.is_zero(), "zero deficit must match measures");
        assert!(
            induced_deficit.as_ref().is_some_and(Zero::is_zero),
            "zero deficit must transfer to S_alpha"
        );
    }
    Ok(SuperlevelTransfer {
        window_ok,
        alpha,
        delta: report.delta,
        s_alpha_measure: Some(s_measure),
        measure_gap: Some(measure_gap),
        induced_deficit,
    })
}

/// Result of the alternating-sumset inclusion check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlternatingInclusion {
    pub beta: Scalar,
    /// Alternating sum of the superlevel sets is contained in `S_beta`
    /// (decided exactly, up to null boundary points).
    pub included: bool,
    /// `|S_beta| >= sum of |S_{alpha_i}|`.
    pub measure_sum_ok: bool,
    pub alternating_sum_measure: Scalar,
    pub s_beta_measure: Scalar,
    pub superlevel_measures: Vec<Scalar>,
}

impl AlternatingInclusion {
    pub fn holds(&self) -> bool {
        self.included && self.measure_sum_ok
    }
}

/// Checks `S_{a_1} - S_{a_2} + S_{a_3} - ... + S_{a_{2k+1}} ⊆ S_beta`
/// where `beta - (|A|+|B|)/2 = Σ (alpha_i - (|A|+|B|)/2)`, together with
/// the superadditivity of the measures.
///
/// Requires an odd number of levels, each in `(0, min(|A|, |B|))`, and
/// `beta > 0`; violations are reported as inapplicable.
pub fn alternating_inclusion_check(
    a_set: &IntervalSet,
    b_set: &IntervalSet,
    alphas: &[Scalar],
) -> Result<AlternatingInclusion> {
    if a_set.is_empty() || b_set.is_empty() {
        return Err(Error::EmptySet("alternating_inclusion_check"));
    }
    if alphas.is_empty() || alphas.len().is_multiple_of(2) {
        return Err(Error::Inapplicable(format!(
            "need an odd number of levels, got {}",
            alphas.len()
        )));
    }
    let a = a_set.measure();
    let b = b_set.measure();
    let smaller = min(&a, &b).clone();
    for alpha in alphas {
        if !alpha.is_positive() || alpha >= &smaller {
            return Err(Error::Inapplicable(format!(
                "level {} outside (0, min(|A|,|B|))",
                fmt_scalar(alpha)
            )));
        }
    }
    let total = &a + &b;
    let k = Scalar::from_integer(((alphas.len() - 1) / 2).into());
    let beta = alphas.iter().fold(Scalar::zero(), |acc, x| acc + x) - &k * &total;
    if !beta.is_positive() {
        return Err(Error::Inapplicable(format!(
            "combined level {} is not positive",
            fmt_scalar(&beta)
        )));
    }
    let f = convolve_indicators(a_set, b_set)?;
    let levels: Vec<IntervalSet> = alphas
        .iter()
        .map(|alpha| f.superlevel(alpha))
        .collect::<Result<_>>()?;
    if alphas.len() > 1 && levels.iter().any(IntervalSet::is_empty) {
        return Err(Error::Inapplicable(
            "a superlevel set at one of the levels is empty".into(),
        ));
    }
    let mut alternating = levels[0].clone();
    for (i, level) in levels.iter().enumerate().skip(1) {
        let operand = if i % 2 == 1 { level.reflect() } else { level.clone() };
        alternating = alternating.minkowski_sum(&operand)?;
    }
    let s_beta = f.superlevel(&beta)?;
    let superlevel_measures: Vec<Scalar> = levels.iter().map(IntervalSet::measure).collect();
    let measure_total = superlevel_measures
        .iter()
        .fold(Scalar::zero(), |acc, m| acc + m);
    Ok(AlternatingInclusion {
        included: s_beta.includes(&alternating),
        measure_sum_ok: s_beta.measure() >= measure_total,
        alternating_sum_measure: alternating.measure(),
        s_beta_measure: s_beta.measure(),
        superlevel_measures,
        beta,
    })
}

/// Verdict of the short-interval containment check for a superlevel set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContainmentReport {
    /// False when a precondition (`k >= 1`, `eps >= 0`, `beta >= 0`,
    /// nonempty `S_alpha`, the margin constraint) or one of the two
    /// measure hypotheses fails; no conclusion is claimed then.
    pub applicable: bool,
    pub beta: Scalar,
    pub s_alpha_measure: Scalar,
    pub s_beta_measure: Option<Scalar>,
    pub hypothesis_beta_ok: bool,
    pub hypothesis_alpha_ok: bool,
    pub detail: Option<ContainmentDetail>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContainmentDetail {
    pub hull_length: Scalar,
    /// `hull < |S_alpha| + (4k+2)·eps·max`, the asserted bound.
    pub stated_hull_bound_ok: bool,
    /// `hull < |S_alpha| + (4k+1)·eps·max`, the sharper bound the
    /// argument actually yields; logged, not asserted.
    pub strong_hull_bound_ok: bool,
    pub s_alpha_upper_ok: bool,
    pub s_beta_lower_ok: bool,
}

/// When the superlevel measures at `alpha` and at
/// `beta = (2k+1)·alpha - k(|A|+|B|)` are within an `eps` margin of the
/// two-interval values, `S_alpha` must fit inside a short interval. All
/// hypotheses and conclusions are evaluated exactly.
pub fn containment_check(
    a_set: &IntervalSet,
    b_set: &IntervalSet,
    alpha: &Scalar,
    k: u32,
    eps: &Scalar,
) -> Result<ContainmentReport> {
    if a_set.is_empty() || b_set.is_empty() {
        return Err(Error::EmptySet("containment_check"));
    }
    let a = a_set.measure();
    let b = b_set.measure();
    let total = &a + &b;
    let largest = max(&a, &b).clone();
    let k_scalar = Scalar::from_integer(k.into());
    let two_k1 = rat(2, 1) * &k_scalar + rat(1, 1);
    let beta = &two_k1 * alpha - &k_scalar * &total;

    let inapplicable = |beta: Scalar, s_alpha: Scalar, s_beta: Option<Scalar>, h1, h2| {
        ContainmentReport {
            applicable: false,
            beta,
            s_alpha_measure: s_alpha,
            s_beta_measure: s_beta,
            hypothesis_beta_ok: h1,
            hypothesis_alpha_ok: h2,
            detail: None,
        }
    };

    if k == 0 || alpha.is_negative() || eps.is_negative() || beta.is_negative() {
        return Ok(inapplicable(beta, Scalar::zero(), None, false, false));
    }
    let f = convolve_indicators(a_set, b_set)?;
    let s_alpha = f.superlevel(alpha)?;
    let s_beta = f.superlevel(&beta)?;
    let s_alpha_measure = s_alpha.measure();
    let s_beta_measure = s_beta.measure();
    let eps_max = eps * &largest;
    let four_k1 = rat(4, 1) * &k_scalar + rat(1, 1);
    // Margin constraint (the check only has content when eps·max is small
    // next to |S_alpha|), plus a nonempty S_alpha so the hull exists.
    if s_alpha.is_empty() || &four_k1 * &eps_max > s_alpha_measure {
        return Ok(inapplicable(
            beta,
            s_alpha_measure,
            Some(s_beta_measure),
            false,
            false,
        ));
    }
    let hypothesis_beta_ok =
        s_beta_measure < &total - rat(2, 1) * &beta + &two_k1 * &eps_max;
    let hypothesis_alpha_ok = s_alpha_measure > &total - rat(2, 1) * alpha - &eps_max;
    if !(hypothesis_beta_ok && hypothesis_alpha_ok) {
        return Ok(inapplicable(
            beta,
            s_alpha_measure,
            Some(s_beta_measure),
            hypothesis_beta_ok,
            hypothesis_alpha_ok,
        ));
    }
    let hull_length = s_alpha.hull()?.length();
    let four_k2 = rat(4, 1) * &k_scalar + rat(2, 1);
    let stated_hull_bound_ok = hull_length < &s_alpha_measure + &four_k2 * &eps_max;
    let strong_hull_bound_ok = hull_length < &s_alpha_measure + &four_k1 * &eps_max;
    let s_alpha_upper_ok =
        s_alpha_measure < &total - rat(2, 1) * alpha + &four_k1 * &eps_max;
    let s_beta_lower_ok =
        s_beta_measure > &total - rat(2, 1) * &beta - &two_k1 * &eps_max;
    assert!(stated_hull_bound_ok, "containment hull bound violated");
    assert!(s_alpha_upper_ok, "upper bound on |S_alpha| violated");
    assert!(s_beta_lower_ok, "lower bound on |S_beta| violated");
    Ok(ContainmentReport {
        applicable: true,
        beta,
        s_alpha_measure,
        s_beta_measure: Some(s_beta_measure),
        hypothesis_beta_ok,
        hypothesis_alpha_ok,
        detail: Some(ContainmentDetail {
            hull_length,
            stated_hull_bound_ok,
            strong_hull_bound_ok,
            s_alpha_upper_ok,
            s_beta_lower_ok,
        }),
    })
}

/// One stability probe: normalized deficits for the coupled pair `(E, F)`
/// with `|F| = 3|E|`, and the distance from `A` to the nearest interval.
/// No relation between the deficits and `epsilon` is asserted; the report
/// itself is the datum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeReport {
    pub a_measure: Scalar,
    pub b_measure: Scalar,
    pub e_measure: Scalar,
    pub f_measure: Scalar,
    pub alpha: Scalar,
    pub beta: Scalar,
    pub delta1: Scalar,
    pub delta2: Scalar,
    /// `(1+eps')·(max-min) <= |E| <= (1-eps')(|A|+|B|)/3`.
    pub window_ok: bool,
    pub best_interval: Interval,
    /// `|A △ I| / |A|` for the best interval `I`.
    pub epsilon: Scalar,
    /// Superlevel measures at `alpha`, `beta`; absent if the level is
    /// negative (possible only when the window fails).
    pub s_alpha_measure: Option<Scalar>,
    pub s_beta_measure: Option<Scalar>,
}

pub fn stability_probe(
    a_set: &IntervalSet,
    b_set: &IntervalSet,
    e_set: &IntervalSet,
    f_set: &IntervalSet,
    eps_prime: &Scalar,
) -> Result<ProbeReport> {
    if a_set.is_empty() || b_set.is_empty() || e_set.is_empty() || f_set.is_empty() {
        return Err(Error::EmptySet("stability_probe"));
    }
    if eps_prime.is_negative() {
        return Err(Error::NonpositiveArgument {
            op: "stability_probe (eps_prime)",
            value: fmt_scalar(eps_prime),
        });
    }
    let a = a_set.measure();
    let b = b_set.measure();
    let e = e_set.measure();
    let f_measure = f_set.measure();
    if f_measure != rat(3, 1) * &e {
        return Err(Error::MeasureMismatch {
            e: fmt_scalar(&e),
            f: fmt_scalar(&f_measure),
        });
    }
    let total = &a + &b;
    let spread = max(&a, &b) - min(&a, &b);
    let one_plus = rat(1, 1) + eps_prime;
    let one_minus = rat(1, 1) - eps_prime;
    let window_ok =
        &one_plus * &spread <= e && e <= &one_minus * &total * rat(1, 3);
    let alpha = (&total - &e) * rat(1, 2);
    let beta = (&total - &f_measure) * rat(1, 2);
    let largest = max(&a, &b).clone();
    let max_sq = &largest * &largest;
    let delta1 = (theta(&a, &b, &e)? - pairing(a_set, b_set, e_set)?) / &max_sq;
    let delta2 = (theta(&a, &b, &f_measure)? - pairing(a_set, b_set, f_set)?) / &max_sq;
    let (best, symdiff) = best_interval(a_set)?;
    let epsilon = symdiff / &a;
    let conv = convolve_indicators(a_set, b_set)?;
    let s_alpha_measure = if alpha.is_negative() {
        None
    } else {
        Some(conv.superlevel(&alpha)?.measure())
    };
    let s_beta_measure = if beta.is_negative() {
        None
    } else {
        Some(conv.superlevel(&beta)?.measure())
    };
    Ok(ProbeReport {
        a_measure: a,
        b_measure: b,
        e_measure: e,
        f_measure,
        alpha,
        beta,
        delta1,
        delta2,
        window_ok,
        best_interval: best,
        epsilon,
        s_alpha_measure,
        s_beta_measure,
    })
}
