//! Acceptance suite: one test per criterion, each printing a PASS line
//! after its exact checks go through. Everything here is computed in exact
//! rational arithmetic; there are no tolerances anywhere.

use std::cmp::{max, min};

use num_traits::{Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use rieszlab::additive::{freiman_cover, int_sumset, small_doubling_check};
use rieszlab::gen::{counterexample_report, derive_seed, gap_family, gen_random_set, GenConfig};
use rieszlab::scalar::{int, rat};
use rieszlab::{
    alternating_inclusion_check, convolve_indicators, pairing, rs_deficit, stability_probe,
    superlevel_gaps, superlevel_transfer, theta, theta_closed_form, IntegerSet, IntervalSet,
    Scalar,
};

fn set(s: &str) -> IntervalSet {
    s.parse().unwrap()
}

/// Uniform positive rational with numerator in `1..=num_max` and
/// denominator in `1..=den_max`.
fn random_positive(rng: &mut ChaCha8Rng, num_max: i64, den_max: i64) -> Scalar {
    rat(rng.random_range(1..=num_max), rng.random_range(1..=den_max))
}

/// Interval of the given measure centered at `center`.
fn centered_at(center: &Scalar, measure: &Scalar) -> IntervalSet {
    let half = measure * rat(1, 2);
    IntervalSet::interval(center - &half, center + &half).unwrap()
}

#[test]
fn criterion_01_exact_pinned_values() {
    let u = set("[0,1)");
    assert_eq!(pairing(&u, &u, &u).unwrap(), rat(1, 2));
    assert_eq!(theta(&int(1), &int(1), &int(1)).unwrap(), rat(3, 4));
    assert_eq!(theta(&int(1), &int(1), &int(2)).unwrap(), int(1));
    assert_eq!(theta(&int(2), &int(1), &rat(1, 2)).unwrap(), rat(1, 2));
    assert_eq!(theta(&int(2), &int(1), &int(2)).unwrap(), rat(7, 4));
    println!("acceptance 01 exact pinned pairing and theta values: PASS");
}

#[test]
fn criterion_02_theta_oracle_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7131);
    for _ in 0..1000 {
        let a = random_positive(&mut rng, 100, 20);
        let b = random_positive(&mut rng, 100, 20);
        let c = random_positive(&mut rng, 100, 20);
        assert_eq!(
            theta(&a, &b, &c).unwrap(),
            theta_closed_form(&a, &b, &c).unwrap(),
            "routes disagree at ({a}, {b}, {c})"
        );
    }
    println!("acceptance 02 theta convolution route equals closed form on 1000 triples: PASS");
}

#[test]
fn criterion_03_deficit_nonnegative_on_random_triples() {
    let master = 0xD3F1C17u64;
    for trial in 0..10_000u64 {
        let mut sets = Vec::with_capacity(3);
        for slot in 0..3 {
            let seed = derive_seed(master, 3 * trial + slot);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let cfg = GenConfig::new(
                seed.wrapping_add(1),
                rng.random_range(1..=6),
                int(4),
                8,
            );
            sets.push(gen_random_set(&cfg).unwrap());
        }
        let report = rs_deficit(&sets[0], &sets[1], &sets[2]).unwrap();
        assert!(
            !report.deficit.is_negative(),
            "negative deficit at trial {trial}"
        );
        assert!(!report.delta.is_negative());
    }
    println!("acceptance 03 deficit nonnegative on 10000 random triples (up to 6 components): PASS");
}

#[test]
fn criterion_04_burchard_rigidity() {
    // 50 aligned-center interval triples in the admissibility window:
    // deficit exactly zero.
    let measures = [
        (int(1), int(1), int(1)),
        (int(1), int(1), int(2)),
        (int(2), int(1), int(2)),
        (rat(3, 2), int(1), rat(3, 2)),
        (int(2), rat(3, 2), int(2)),
        (int(1), rat(2, 3), rat(4, 3)),
        (rat(5, 2), int(2), int(3)),
        (int(3), int(2), rat(7, 2)),
        (rat(4, 3), rat(4, 3), rat(5, 3)),
        (int(2), int(2), int(1)),
    ];
    let centers = [
        (int(0), int(0)),
        (int(1), int(-2)),
        (rat(1, 3), rat(7, 5)),
        (rat(-5, 2), rat(3, 4)),
        (int(4), rat(-1, 7)),
    ];
    let mut equality_cases = 0;
    for (a_m, b_m, c_m) in &measures {
        for (u, v) in &centers {
            assert!(rieszlab::burchard_admissible(a_m, b_m, c_m));
            let a = centered_at(u, a_m);
            let b = centered_at(v, b_m);
            let c = centered_at(&(u + v), c_m);
            let report = rs_deficit(&a, &b, &c).unwrap();
            assert!(report.burchard_admissible);
            assert!(
                report.deficit.is_zero(),
                "aligned admissible intervals must have zero deficit"
            );
            equality_cases += 1;
        }
    }
    assert_eq!(equality_cases, 50);

    // The same 50 configurations with A split into two components
    // separated by a positive gap: deficit strictly positive.
    let gaps = [rat(1, 10), rat(1, 3), int(1), rat(1, 100), int(3)];
    let mut split_cases = 0;
    for (i, (a_m, b_m, c_m)) in measures.iter().enumerate() {
        for (j, (u, v)) in centers.iter().enumerate() {
            let gap = &gaps[(i + j) % gaps.len()];
            let half_measure = a_m * rat(1, 2);
            // Two halves of measure |A|/2 separated by a centered gap; the
            // total measure (hence admissibility) is unchanged.
            let a = IntervalSet::from_endpoints(vec![
                (u - &half_measure - gap * rat(1, 2), u - gap * rat(1, 2)),
                (u + gap * rat(1, 2), u + &half_measure + gap * rat(1, 2)),
            ])
            .unwrap();
            assert_eq!(&a.measure(), a_m);
            split_cases += 1;
            let b = centered_at(v, b_m);
            let c = centered_at(&(u + v), c_m);
            let report = rs_deficit(&a, &b, &c).unwrap();
            assert!(
                report.deficit.is_positive(),
                "split set in the admissibility window must have positive deficit"
            );
        }
    }
    assert_eq!(split_cases, 50);
    println!("acceptance 04 rigidity: 50 aligned triples exact equality, 50 split triples strict deficit: PASS");
}

#[test]
fn criterion_05_lattice_counterexample() {
    for lambda in 2..=20u64 {
        // The report asserts the distribution law internally; re-check the
        // headline numbers here.
        let report = counterexample_report(lambda).unwrap();
        assert!(report.formula_ok);
        assert!(report.vanishes_ok);
        assert_eq!(report.support_ratio, int(lambda as i64));
        assert_eq!(report.a_measure, int(1));
        assert_eq!(report.b_measure, int(1));
    }
    println!("acceptance 05 lattice counterexample distribution law for lambda in 2..=20: PASS");
}

#[test]
fn criterion_06_small_sumset_cover_exhaustive() {
    // Brute-force minimal-progression oracle.
    fn oracle(x: &IntegerSet) -> (i64, u64) {
        let lo = x.min().unwrap();
        let hi = x.max().unwrap();
        let mut best = (1i64, (hi - lo) as u64 + 1);
        for step in 1..=(hi - lo).max(1) {
            if x.elements().iter().all(|&e| (e - lo) % step == 0) {
                let length = ((hi - lo) / step) as u64 + 1;
                if length < best.1 {
                    best = (step, length);
                }
            }
        }
        best
    }

    let mut checked = 0u64;
    let mut covered = 0u64;
    for mask in 0u32..(1 << 14) {
        let mut elements = vec![0i64];
        for bit in 0..14 {
            if mask & (1 << bit) != 0 {
                elements.push(bit as i64 + 1);
            }
        }
        if elements.len() < 3 {
            continue;
        }
        let x = IntegerSet::new(elements);
        checked += 1;
        let doubled = int_sumset(&x, &x).unwrap();
        // The gap computation asserts #(X+X) >= 2#X - 1 internally.
        let gap = rieszlab::additive::cauchy_davenport_gap(&x).unwrap();
        assert_eq!(gap as usize, doubled.len() - (2 * x.len() - 1));
        match freiman_cover(&x).unwrap() {
            Some(cover) => {
                covered += 1;
                assert!(doubled.len() < 3 * x.len() - 3);
                assert!(
                    cover.length as usize <= doubled.len() - x.len() + 1,
                    "cover bound failed for {x}"
                );
                let (oracle_step, oracle_len) = oracle(&x);
                assert_eq!(cover.step, oracle_step, "non-minimal step for {x}");
                assert_eq!(cover.length, oracle_len, "non-minimal cover for {x}");
                assert!(x.elements().iter().all(|&e| cover.contains(e)));
            }
            None => assert!(doubled.len() >= 3 * x.len() - 3),
        }
    }
    assert!(checked > 16_000);
    assert!(covered > 0);
    println!(
        "acceptance 06 small-sumset covers on {checked} subsets of 0..=14 ({covered} with the premise), all matching the brute-force oracle: PASS"
    );
}

#[test]
fn criterion_07_small_doubling_on_random_sets() {
    let master = 0x5D0B11u64;
    let mut found = 0u64;
    let mut attempt = 0u64;
    while found < 1000 {
        assert!(attempt < 100_000, "premise yield too low");
        let seed = derive_seed(master, attempt);
        attempt += 1;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let cfg = GenConfig::new(seed.wrapping_add(1), rng.random_range(1..=3), int(3), 8);
        let a = gen_random_set(&cfg).unwrap();
        // The check asserts the hull bound internally whenever the
        // premise |A+A| < 3|A| holds.
        let report = small_doubling_check(&a).unwrap();
        if report.premise {
            assert!(report.hull_length <= report.bound);
            found += 1;
        }
    }
    println!(
        "acceptance 07 small doubling confines 1000 random premise-satisfying sets (from {attempt} candidates): PASS"
    );
}

#[test]
fn criterion_08_alternating_superlevel_inclusion() {
    let master = 0xA15B3u64;
    let mut found = 0u64;
    let mut attempt = 0u64;
    while found < 500 {
        assert!(attempt < 20_000, "admissible yield too low");
        let seed = derive_seed(master, attempt);
        attempt += 1;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = gen_random_set(&GenConfig::new(
            seed.wrapping_add(1),
            rng.random_range(1..=3),
            int(3),
            8,
        ))
        .unwrap();
        let b_raw = gen_random_set(&GenConfig::new(
            seed.wrapping_add(2),
            rng.random_range(1..=3),
            int(3),
            8,
        ))
        .unwrap();
        // Rescale B so that max < 2·min, the window in which admissible
        // level triples exist.
        let theta_frac = rat(rng.random_range(12..16), 16);
        let scale = a.measure() / b_raw.measure() * &theta_frac;
        let b = b_raw.affine(&int(0), &scale).unwrap();
        let a_m = a.measure();
        let b_m = b.measure();
        let total = &a_m + &b_m;
        let smaller = min(&a_m, &b_m).clone();
        let peak = convolve_indicators(&a, &b).unwrap().max_value();
        let hi = min(&smaller, &peak).clone();
        let lo = &total * rat(1, 3);
        if hi <= lo {
            continue;
        }
        let width = &hi - &lo;
        let alphas: Vec<Scalar> = (0..3)
            .map(|_| &lo + &width * rat(rng.random_range(1..16), 16))
            .collect();
        let check = alternating_inclusion_check(&a, &b, &alphas).unwrap();
        assert!(check.beta.is_positive());
        assert!(check.included, "inclusion failed at attempt {attempt}");
        assert!(check.measure_sum_ok, "measure bound failed at attempt {attempt}");
        found += 1;
    }
    println!(
        "acceptance 08 alternating sumset inclusion exact on 500 admissible random pairs (from {attempt} candidates): PASS"
    );
}

#[test]
fn criterion_09_equality_stability_and_increment_identity() {
    // 100 exact-extremizer triples: matched superlevel set coincides with
    // E and the near-equality transfers with zero gaps.
    let mut rng = ChaCha8Rng::seed_from_u64(0xE9);
    for _ in 0..100 {
        let a_m = random_positive(&mut rng, 12, 6);
        let b_m = random_positive(&mut rng, 12, 6);
        let spread = (&a_m - &b_m).abs();
        let width = &a_m + &b_m - &spread; // = 2·min
        let e_m = &spread + &width * rat(rng.random_range(1..32), 32);
        let u = rat(rng.random_range(-20..20), 7);
        let v = rat(rng.random_range(-20..20), 5);
        let a = centered_at(&u, &a_m);
        let b = centered_at(&v, &b_m);
        let e = centered_at(&(&u + &v), &e_m);

        let gaps = superlevel_gaps(&a, &b, &e).unwrap();
        assert!(gaps.window_ok);
        assert!(gaps.delta.is_zero());
        let detail = gaps.detail.unwrap();
        assert!(detail.symdiff.is_zero(), "S_alpha must equal E exactly");

        let transfer = superlevel_transfer(&a, &b, &e).unwrap();
        assert!(transfer.measure_gap.unwrap().is_zero());
        assert!(transfer.induced_deficit.unwrap().is_zero());
    }

    // The quadratic increment identity with constant exactly 1/4, on 1000
    // random quadruples inside the middle regime.
    let mut rng = ChaCha8Rng::seed_from_u64(0x1D);
    for _ in 0..1000 {
        let a = random_positive(&mut rng, 40, 8);
        let b = random_positive(&mut rng, 40, 8);
        let m = min(&a, &b).clone();
        let big = max(&a, &b).clone();
        let lo = &big - &m;
        let width = rat(2, 1) * &m;
        let e = &lo + &width * rat(rng.random_range(1..=64), 64);
        let e_prime = &lo + &width * rat(rng.random_range(1..=64), 64);
        let alpha = (&a + &b - &e) * rat(1, 2);
        let diff = &e - &e_prime;
        let expected = &alpha * &diff + rat(1, 4) * &diff * &diff;
        let actual = theta(&a, &b, &e).unwrap() - theta(&a, &b, &e_prime).unwrap();
        assert_eq!(actual, expected, "increment identity failed");
    }
    println!("acceptance 09 equality-case stability (100 triples) and quarter-constant increment identity (1000 quadruples): PASS");
}

#[test]
fn criterion_10_gap_family_stability_trend() {
    let eps_prime = rat(1, 10);
    let grid: Vec<Scalar> = (0..=8).map(|k| rat(k, 40)).collect();
    let probe_at = |s: &Scalar| {
        let fam = gap_family(s).unwrap();
        stability_probe(&fam.a, &fam.b, &fam.e, &fam.f, &eps_prime).unwrap()
    };
    let probes: Vec<_> = grid.iter().map(probe_at).collect();
    assert!(probes[0].delta1.is_zero());
    assert!(probes[0].epsilon.is_zero());
    for pair in probes.windows(2) {
        assert!(pair[1].delta1 > pair[0].delta1, "delta1 must increase strictly");
        assert!(pair[1].epsilon > pair[0].epsilon, "epsilon must increase strictly");
    }
    // Halving the gap never increases the interval distance.
    for s in grid.iter().skip(1) {
        let halved = probe_at(&(s * rat(1, 2)));
        assert!(halved.epsilon <= probe_at(s).epsilon);
    }
    println!("acceptance 10 gap-family deficits and interval distance increase strictly from zero: PASS");
}
