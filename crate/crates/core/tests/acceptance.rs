//! Acceptance criteria, one line each. Exits non-zero if any criterion fails.

use std::time::{Duration, Instant};

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sdist_core::field::rat;
use sdist_core::invariants::{self, threshold_n};
use sdist_core::suites::{self, SuiteReport};
use sdist_core::{catalog, geometry, DistanceSpectrum, Error, QuadExt};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut o = f();
    let took = start.elapsed();
    if took > limit {
        o.pass = false;
        o.detail.push_str(&format!("; took {:?}, limit {:?}", took, limit));
    } else {
        o.detail.push_str(&format!("; {:.3?}", took));
    }
    o
}

fn thresholds() -> Outcome {
    let mut bad = Vec::new();
    for d in 2..=10 {
        let t = threshold_n(d, 2);
        if 2 * t.n_new != 2 * d as u64 + 2 || 2 * t.n_legacy != 2 * d as u64 + 4 {
            bad.push(d);
        }
    }
    outcome(bad.is_empty(), format!("2N = 2d+2 and legacy 2d+4 for d = 2..10, mismatches at {:?}", bad))
}

fn counterexamples() -> Outcome {
    let mut entries = vec![catalog::regular_polygon(5).unwrap()];
    for q in [5, 13, 17, 29] {
        entries.push(catalog::paley_conference_embedding(q).unwrap());
    }
    let mut bad = Vec::new();
    for e in &entries {
        let r = invariants::analyze(&e.payload).unwrap();
        let ok = r.s == 2 && r.n_points == 2 * r.d + 1 && r.k_values.iter().all(|k| !k.is_integer());
        if !ok {
            bad.push(e.label());
        }
    }
    outcome(bad.is_empty(), format!("{} sets with |X| = 2d+1 and non-integral k, failures {:?}", entries.len(), bad))
}

fn theorem_harness() -> Outcome {
    let mut met = Vec::new();
    let mut bad = Vec::new();
    for e in suites::integrality_catalog().unwrap() {
        let r = invariants::analyze(&e.payload).unwrap();
        // one-distance sets have no invariants to check
        if !r.threshold_met_new || r.s < 2 {
            continue;
        }
        met.push(e.label());
        let cap = r.k_cap.unwrap();
        let within = r.k_values.iter().all(|k| k.to_integer().is_some_and(|z| z.magnitude().to_u64().is_some_and(|m| m <= cap)));
        if !within {
            bad.push(e.label());
        }
    }
    let johnson_met = (5..=8).all(|n| met.contains(&format!("johnson2(n={})", n)));
    outcome(
        johnson_met && bad.is_empty(),
        format!("{} sets meet |X| >= 2N: {}; violations {:?}", met.len(), met.join(" "), bad),
    )
}

fn independence() -> Outcome {
    let t3 = suites::theorem3_suite().unwrap();
    let bbs = suites::bbs_suite().unwrap();
    let t3_failed = t3.failures().count();
    let first = t3.failures().next().and_then(|c| c.certificate.as_ref()).map(|c| {
        format!(
            " (e.g. expected rank {}, achieved {}, F-block rank {:?})",
            c.expected_rank, c.achieved_rank, c.family_rank
        )
    });
    outcome(
        t3.pass && bbs.pass,
        format!(
            "theorem3 {}/{} pass{}; bbs {}/{} pass",
            t3.checks.len() - t3_failed,
            t3.checks.len(),
            first.unwrap_or_default(),
            bbs.checks.len() - bbs.failures().count(),
            bbs.checks.len()
        ),
    )
}

fn lemma_suites() -> Outcome {
    let runs: Vec<SuiteReport> =
        vec![suites::lemma4_suite(4, 4).unwrap(), suites::lemma5_suite(3, 3).unwrap(), suites::lemma6_suite(200, 0x5eed).unwrap()];
    let moment = runs[2].checks.iter().filter(|c| c.claim.contains("moment projection")).count();
    let detail = runs
        .iter()
        .map(|r| format!("{} {}/{}", r.suite, r.checks.len() - r.failures().count(), r.checks.len()))
        .collect::<Vec<_>>()
        .join(", ");
    outcome(runs.iter().all(|r| r.pass) && moment >= 100, format!("{}; {} moment-projection instances", detail, moment))
}

fn random_rational_spectrum(rng: &mut ChaCha8Rng, s: usize) -> DistanceSpectrum {
    loop {
        let vals: Vec<QuadExt> =
            (0..s).map(|_| QuadExt::from_rational(rat(rng.gen_range(1..=60), rng.gen_range(1..=12)))).collect();
        // repeated values collapse, so retry until all s are distinct
        if let Ok(spec) = DistanceSpectrum::from_values(vals) {
            if spec.s() == s {
                return spec;
            }
        }
    }
}

fn identities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut trials = 0;
    let mut bad = Vec::new();
    for s in 2..=4 {
        for _ in 0..100 {
            trials += 1;
            let spec = random_rational_spectrum(&mut rng, s);
            let k = invariants::k_invariants(&spec);
            let sum: QuadExt = k.iter().cloned().sum();
            let c = QuadExt::from_rational(rat(rng.gen_range(1..=50), rng.gen_range(1..=50)));
            let scaled = invariants::k_invariants(&spec.scaled(&c).unwrap());
            // ascending index i: (−1)^(i−1); counted from the largest distance: (−1)^(s−i)
            let ascending = k.iter().enumerate().all(|(i, x)| x.sign_of() == if i % 2 == 0 { 1 } else { -1 });
            let descending =
                k.iter().rev().enumerate().all(|(i, x)| x.sign_of() == if (s - (i + 1)) % 2 == 0 { 1 } else { -1 });
            if !sum.is_integer() || sum != QuadExt::one() || scaled != k || !ascending || !descending {
                bad.push(format!("{:?}", spec.values()));
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "{} spectra (s = 2, 3, 4): sum = 1, scale invariance, alternating signs (first = +, last = (-1)^(s-1)); failures {:?}",
            trials, bad
        ),
    )
}

/// Random integer spectrum whose invariants are all integers.
fn integral_spectrum(rng: &mut ChaCha8Rng, s: usize) -> (Vec<i64>, Vec<i64>) {
    loop {
        let v = suites::random_spectrum(rng, s, 24);
        let spec = DistanceSpectrum::from_i64(&v).unwrap();
        let k: Option<Vec<i64>> =
            invariants::k_invariants(&spec).iter().map(|x| x.to_integer().and_then(|z| z.to_i64())).collect();
        if let Some(k) = k {
            return (v, k);
        }
    }
}

fn recovery() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (mut ok, mut no_conv, mut wrong) = (0, 0, Vec::new());
    for t in 0..100 {
        let s = 2 + t % 3;
        let (v, k) = integral_spectrum(&mut rng, s);
        let top = *v.last().unwrap() as f64;
        match invariants::recover_distances(&k, 1e-9) {
            Ok(g) => {
                if g.iter().zip(&v).all(|(a, &b)| (a - b as f64 / top).abs() <= 1e-9) {
                    ok += 1;
                } else {
                    wrong.push(format!("{:?} -> {:?}", v, g));
                }
            }
            Err(Error::NoConvergence { .. }) => no_conv += 1,
            Err(e) => wrong.push(format!("{:?}: {}", v, e)),
        }
    }
    outcome(
        ok >= 99 && wrong.is_empty(),
        format!("{}/100 recovered within 1e-9, {} NoConvergence, wrong {:?}", ok, no_conv, wrong),
    )
}

fn cross_representation() -> Outcome {
    let mut checks = 0;
    let mut bad = Vec::new();
    for e in suites::exact_coordinate_catalog().unwrap() {
        let x = e.points().unwrap();
        let s = geometry::distance_spectrum(&geometry::sdm_from_points(x).unwrap()).unwrap().s();
        if s < 2 {
            continue;
        }
        for i in 0..s {
            checks += 1;
            if !suites::evaluation_consistency(x, i).unwrap() {
                bad.push(format!("{} i={}", e.label(), i + 1));
            }
        }
    }
    outcome(bad.is_empty(), format!("{} (set, i) pairs agree exactly, failures {:?}", checks, bad))
}

fn main() {
    let criteria: Vec<(&str, Duration, fn() -> Outcome)> = vec![
        ("1 threshold reproduction", Duration::from_millis(1), thresholds),
        ("2 counterexample sharpness", Duration::from_secs(5), counterexamples),
        ("3 integrality harness", Duration::from_secs(10), theorem_harness),
        ("4 independence certificates", Duration::from_secs(60), independence),
        ("5 lemma suites", Duration::from_secs(60), lemma_suites),
        ("6 algebraic identities", Duration::from_secs(60), identities),
        ("7 round-trip recovery", Duration::from_secs(10), recovery),
        ("8 cross-representation consistency", Duration::from_secs(60), cross_representation),
    ];
    let mut failed = 0;
    for (name, limit, f) in criteria {
        let o = timed(limit, f);
        if !o.pass {
            failed += 1;
        }
        println!("[{}] criterion {}: {}", if o.pass { "PASS" } else { "FAIL" }, name, o.detail);
    }
    println!("acceptance: {} of 8 criteria passed", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
