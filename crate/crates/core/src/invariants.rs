//! Integrality invariants of distance spectra and the cardinality thresholds
//! that force them to be integers.
//!
//! For a spectrum `α_1² < … < α_s²` the invariants are
//! `k_i = ∏_{j≠i} α_j² / (α_j² − α_i²)`, i.e. the Lagrange basis polynomials
//! on the nodes `α_j²` evaluated at zero. They sum to one, are invariant under
//! scaling, and alternate in sign.

use nalgebra::{DMatrix, DVector};
use num_integer::Roots;

use crate::error::{Error, Result};
use crate::field::{binomial, QuadExt};
use crate::geometry::{self, Configuration, DistanceSpectrum, Realizability};

/// Cardinality parameters for a configuration with `s` distances in ℝᵈ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Thresholds {
    /// `C(d+s−1, s−1)`; integrality is forced once `|X| ≥ 2·n_new`.
    pub n_new: u64,
    /// `n_new + C(d+s−2, s−2)`, the older requirement.
    pub n_legacy: u64,
}

pub fn threshold_n(d: usize, s: usize) -> Thresholds {
    let (d, s) = (d as i64, s as i64);
    let n_new = binomial(d + s - 1, s - 1);
    Thresholds { n_new, n_legacy: n_new + binomial(d + s - 2, s - 2) }
}

/// `2·C(d+s−1, s−1)`: above this size only finitely many s-distance sets exist in ℝᵈ.
pub fn finiteness_threshold(d: usize, s: usize) -> u64 {
    2 * threshold_n(d, s).n_new
}

/// Largest integer `K` with `K(K−1)(2N−2) ≤ N²`, i.e. `⌊1/2 + √(N²/(2N−2) + 1/4)⌋`.
pub fn k_cap(n: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::InvalidN(n));
    }
    let n = n as u128;
    let fits = |k: u128| k * k.saturating_sub(1) * (2 * n - 2) <= n * n;
    let mut k = (n * n / (2 * n - 2)).sqrt() + 1;
    while !fits(k) {
        k -= 1;
    }
    while fits(k + 1) {
        k += 1;
    }
    Ok(k as u64)
}

/// `k_i` for every distance; empty when `s = 1`.
pub fn k_invariants(spec: &DistanceSpectrum) -> Vec<QuadExt> {
    let vals = spec.values();
    if vals.len() < 2 {
        return Vec::new();
    }
    (0..vals.len())
        .map(|i| {
            vals.iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, aj)| aj / &(aj - &vals[i]))
                .product()
        })
        .collect()
}

/// Two-distance invariant `k = β²/(β² − α²)`, so that `α²/β² = (k−1)/k`.
pub fn lrs_k(spec: &DistanceSpectrum) -> Result<QuadExt> {
    if spec.s() != 2 {
        return Err(Error::WrongS { expected: "2".into(), got: spec.s() });
    }
    let (a, b) = (spec.get(0), spec.get(1));
    b.checked_div(&(b - a))
}

/// Everything the integrality theorems say about one configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantReport {
    pub spectrum: DistanceSpectrum,
    pub s: usize,
    /// Embedding dimension (affine rank), not the ambient coordinate count.
    pub d: usize,
    pub n_points: usize,
    pub k_values: Vec<QuadExt>,
    pub k_integral: Vec<bool>,
    pub n_new: u64,
    pub n_legacy: u64,
    pub threshold_met_new: bool,
    pub threshold_met_legacy: bool,
    /// `None` for one-distance sets, where `n_new = 1` and no cap is defined.
    pub k_cap: Option<u64>,
    pub cap_respected: Vec<bool>,
    pub finiteness_threshold: u64,
    pub lrs_k: Option<QuadExt>,
}

impl InvariantReport {
    pub fn all_integral(&self) -> bool {
        self.k_integral.iter().all(|&b| b)
    }

    /// False only when the threshold is met but some `k_i` is non-integral or
    /// exceeds the cap, which would contradict the integrality bound.
    pub fn consistent_with_theorem(&self) -> bool {
        !self.threshold_met_new || (self.all_integral() && self.cap_respected.iter().all(|&b| b))
    }
}

pub fn analyze(cfg: &Configuration) -> Result<InvariantReport> {
    let sdm = cfg.sdm()?;
    let d = match geometry::is_realizable(&sdm) {
        Realizability::Realizable { dim } => dim,
        Realizability::NotRealizable { inertia } => {
            return Err(Error::NotRealizable(inertia.n_pos, inertia.n_neg, inertia.n_zero))
        }
    };
    let spectrum = geometry::distance_spectrum(&sdm)?;
    let s = spectrum.s();
    let n = sdm.len();
    let k_values = k_invariants(&spectrum);
    let k_integral = k_values.iter().map(QuadExt::is_integer).collect();
    let th = threshold_n(d, s);
    let cap = k_cap(th.n_new).ok();
    let cap_respected = k_values
        .iter()
        .map(|k| cap.is_none_or(|c| k.abs() <= QuadExt::from_int(c as i64)))
        .collect();
    let lrs = (s == 2).then(|| lrs_k(&spectrum)).transpose()?;
    Ok(InvariantReport {
        s,
        d,
        n_points: n,
        k_values,
        k_integral,
        n_new: th.n_new,
        n_legacy: th.n_legacy,
        threshold_met_new: n as u64 >= 2 * th.n_new,
        threshold_met_legacy: n as u64 >= 2 * th.n_legacy,
        k_cap: cap,
        cap_respected,
        finiteness_threshold: finiteness_threshold(d, s),
        lrs_k: lrs,
        spectrum,
    })
}

pub const RECOVER_MAX_ITERATIONS: usize = 200;
const MAX_HALVINGS: usize = 60;

/// Floating-point `k_i` of a normalized spectrum.
pub fn k_invariants_f64(gamma: &[f64]) -> Vec<f64> {
    (0..gamma.len())
        .map(|i| {
            gamma
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &g)| g / (g - gamma[i]))
                .product()
        })
        .collect()
}

/// Recovers the squared distances `γ_1 < … < γ_s = 1` from integer invariants.
///
/// Damped Newton iteration on `log|k_i(γ)| − log|k_i|` for `i < s` (the last
/// invariant is implied by `Σ k_i = 1`), tried from several starting spectra
/// beginning with `γ_i = i/s`. A step is
/// halved until the spectrum stays strictly ordered in `(0, 1)` and the residual
/// norm decreases. Iteration runs to numerical stagnation; the answer is
/// accepted only if every `|k_i(γ) − k_i| ≤ tol`.
pub fn recover_distances(k: &[i64], tol: f64) -> Result<Vec<f64>> {
    let s = k.len();
    if s < 2 {
        return Err(Error::WrongS { expected: ">= 2".into(), got: s });
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::RangeError("tolerance must be positive".into()));
    }
    let sum: i128 = k.iter().map(|&x| x as i128).sum();
    if sum != 1 {
        return Err(Error::InconsistentK(format!("sum of k_i is {}, expected 1", sum)));
    }
    for (i, &ki) in k.iter().enumerate() {
        let want = if i % 2 == 0 { 1 } else { -1 };
        if ki.signum() != want {
            return Err(Error::InconsistentK(format!(
                "k_{} = {} breaks the alternating sign pattern of an ascending spectrum",
                i + 1,
                ki
            )));
        }
    }

    let free = s - 1;
    let target: Vec<f64> = k.iter().map(|&x| (x as f64).abs().ln()).collect();
    let spectrum_of = |g: &[f64]| g.iter().copied().chain(std::iter::once(1.0)).collect::<Vec<_>>();
    let residual = |g: &[f64]| -> DVector<f64> {
        let full = spectrum_of(g);
        DVector::from_iterator(
            free,
            (0..free).map(|i| log_abs_k(&full, i) - target[i]),
        )
    };
    let ordered = |g: &[f64]| {
        g.first().is_some_and(|&x| x > 0.0)
            && g.windows(2).all(|w| w[0] < w[1])
            && g.last().is_some_and(|&x| x < 1.0)
    };
    let abs_err = |g: &[f64]| {
        k_invariants_f64(&spectrum_of(g))
            .iter()
            .zip(k)
            .map(|(a, &b)| (a - b as f64).abs())
            .fold(0.0, f64::max)
    };

    let newton = |mut g: Vec<f64>| {
        let mut r = residual(&g);
        for _ in 0..RECOVER_MAX_ITERATIONS {
            if r.norm() == 0.0 {
                break;
            }
            let jac = log_k_jacobian(&spectrum_of(&g), free);
            let Some(step) = jac.lu().solve(&(-&r)) else {
                break;
            };
            let mut t = 1.0;
            let mut accepted = None;
            for _ in 0..MAX_HALVINGS {
                let cand: Vec<f64> = g.iter().zip(step.iter()).map(|(x, dx)| x + t * dx).collect();
                if ordered(&cand) {
                    let rc = residual(&cand);
                    if rc.norm() < r.norm() {
                        accepted = Some((cand, rc));
                        break;
                    }
                }
                t *= 0.5;
            }
            match accepted {
                Some((cand, rc)) => {
                    g = cand;
                    r = rc;
                }
                None => break,
            }
        }
        g
    };

    let mut best = f64::INFINITY;
    for g0 in recovery_starts(s) {
        let g = newton(g0);
        let err = abs_err(&g);
        if err <= tol {
            return Ok(spectrum_of(&g));
        }
        best = best.min(err);
    }
    Err(Error::NoConvergence { iterations: RECOVER_MAX_ITERATIONS, residual: best })
}

/// Initial spectra for the Newton iteration: evenly spaced, clustered below 1,
/// and geometric. Clustered spectra have large `|k_i|` and sit in basins the
/// evenly spaced start does not reach.
fn recovery_starts(s: usize) -> Vec<Vec<f64>> {
    let free = s - 1;
    let mut starts = vec![(1..s).map(|i| i as f64 / s as f64).collect::<Vec<_>>()];
    for c in [0.5, 0.8, 0.2, 0.9, 0.95] {
        starts.push((0..free).map(|i| c + (1.0 - c) * i as f64 / free as f64).collect());
    }
    for rho in [0.5, 0.8] {
        starts.push((0..free).map(|i| f64::powi(rho, (free - i) as i32)).collect());
    }
    starts
}

fn log_abs_k(gamma: &[f64], i: usize) -> f64 {
    gamma
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .map(|(_, &gj)| gj.ln() - (gj - gamma[i]).abs().ln())
        .sum()
}

/// Jacobian of `log|k_i|` (rows `i < free`) with respect to `γ_l` (columns `l < free`).
fn log_k_jacobian(gamma: &[f64], free: usize) -> DMatrix<f64> {
    DMatrix::from_fn(free, free, |i, l| {
        if i == l {
            gamma
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &gj)| 1.0 / (gj - gamma[i]))
                .sum()
        } else {
            1.0 / gamma[l] - 1.0 / (gamma[l] - gamma[i])
        }
    })
}
