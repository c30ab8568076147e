//! Generators for canonical s-distance sets.
//!
//! Each entry carries the invariants it is known to have, so the catalog can
//! check itself against [`crate::invariants::analyze`].

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::{binomial, rat, QuadExt};
use crate::geometry::{Configuration, PointSet, SquaredDistanceMatrix};

/// Invariants an entry is constructed to have.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Expected {
    pub s: usize,
    pub d: usize,
    pub n: usize,
    /// Whether every `k_i` is an integer (vacuously true when `s = 1`).
    pub k_integral: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub parameters: BTreeMap<String, i64>,
    pub payload: Configuration,
    pub expected: Option<Expected>,
}

impl CatalogEntry {
    fn new(name: &str, params: &[(&str, i64)], payload: Configuration, expected: Expected) -> Self {
        Self {
            name: name.to_string(),
            parameters: params.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
            payload,
            expected: Some(expected),
        }
    }

    pub fn points(&self) -> Option<&PointSet> {
        self.payload.points()
    }

    /// Short identifier such as `johnson2(n=5)`.
    pub fn label(&self) -> String {
        let params: Vec<String> = self.parameters.iter().map(|(k, v)| format!("{}={}", k, v)).collect();
        format!("{}({})", self.name, params.join(","))
    }
}

fn unit(n: usize, hot: &[usize]) -> Vec<i64> {
    (0..n).map(|k| i64::from(hot.contains(&k))).collect()
}

/// The standard basis `e_1 … e_n` of ℝⁿ: a regular simplex with one distance.
pub fn simplex(n: usize) -> Result<CatalogEntry> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("simplex needs n >= 2, got {}", n)));
    }
    let pts: Vec<Vec<i64>> = (0..n).map(|i| unit(n, &[i])).collect();
    let x = PointSet::from_i64(n, &pts)?;
    Ok(CatalogEntry::new(
        "simplex",
        &[("n", n as i64)],
        Configuration::Points(x),
        Expected { s: 1, d: n - 1, n, k_integral: true },
    ))
}

/// `{±e_i} ⊂ ℝᵈ`: squared distances 2 and 4, `k = (2, −1)`.
pub fn cross_polytope(d: usize) -> Result<CatalogEntry> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!("cross polytope needs d >= 2, got {}", d)));
    }
    let mut pts = Vec::with_capacity(2 * d);
    for i in 0..d {
        pts.push(unit(d, &[i]));
        pts.push(unit(d, &[i]).into_iter().map(|v| -v).collect());
    }
    let x = PointSet::from_i64(d, &pts)?;
    Ok(CatalogEntry::new(
        "cross_polytope",
        &[("d", d as i64)],
        Configuration::Points(x),
        Expected { s: 2, d, n: 2 * d, k_integral: true },
    ))
}

/// 0/1 vectors of length `n` with exactly `w` ones; squared distances `2, 4, …, 2·min(w, n−w)`.
pub fn johnson(n: usize, w: usize) -> Result<CatalogEntry> {
    if w == 0 || w >= n || n < 3 {
        return Err(Error::InvalidParameter(format!("johnson needs 0 < w < n, n >= 3, got n={}, w={}", n, w)));
    }
    let mut pts = Vec::new();
    let mut chosen = Vec::with_capacity(w);
    fn rec(n: usize, w: usize, start: usize, chosen: &mut Vec<usize>, out: &mut Vec<Vec<i64>>) {
        if chosen.len() == w {
            out.push(unit(n, chosen));
            return;
        }
        for k in start..n {
            chosen.push(k);
            rec(n, w, k + 1, chosen, out);
            chosen.pop();
        }
    }
    rec(n, w, 0, &mut chosen, &mut pts);
    let x = PointSet::from_i64(n, &pts)?;
    let s = w.min(n - w);
    Ok(CatalogEntry::new(
        "johnson",
        &[("n", n as i64), ("w", w as i64)],
        Configuration::Points(x),
        // spectrum 2·(1, 2, …, s) gives k_i = (−1)^{i−1} C(s, i)
        Expected { s, d: n - 1, n: binomial(n as i64, w as i64) as usize, k_integral: true },
    ))
}

/// `{e_i + e_j : i < j} ⊂ ℝⁿ`, the Johnson scheme J(n, 2).
pub fn johnson2(n: usize) -> Result<CatalogEntry> {
    if n < 4 {
        return Err(Error::InvalidParameter(format!("johnson2 needs n >= 4, got {}", n)));
    }
    let mut e = johnson(n, 2)?;
    e.name = "johnson2".into();
    e.parameters.remove("w");
    Ok(e)
}

/// `{0, 1}ᵈ`: squared distances `1, …, d`.
pub fn hypercube(d: usize) -> Result<CatalogEntry> {
    if d < 1 {
        return Err(Error::InvalidParameter("hypercube needs d >= 1".into()));
    }
    let pts: Vec<Vec<i64>> = (0..1usize << d).map(|b| (0..d).map(|k| ((b >> k) & 1) as i64).collect()).collect();
    let x = PointSet::from_i64(d, &pts)?;
    Ok(CatalogEntry::new(
        "hypercube",
        &[("d", d as i64)],
        Configuration::Points(x),
        Expected { s: d, d, n: 1 << d, k_integral: true },
    ))
}

/// Exact `cos(deg°)` for the angles that occur in the supported polygons.
fn cos_degrees(deg: u32) -> Option<QuadExt> {
    let deg = deg % 360;
    let deg = if deg > 180 { 360 - deg } else { deg };
    if deg > 90 {
        return cos_degrees(180 - deg).map(|c| -c);
    }
    let q = |a: (i64, i64), b: (i64, i64), m: u64| QuadExt::new(rat(a.0, a.1), rat(b.0, b.1), m);
    Some(match deg {
        0 => QuadExt::one(),
        30 => q((0, 1), (1, 2), 3),
        36 => q((1, 4), (1, 4), 5),
        45 => q((0, 1), (1, 2), 2),
        60 => QuadExt::from_frac(1, 2),
        72 => q((-1, 4), (1, 4), 5),
        90 => QuadExt::zero(),
        _ => return None,
    })
}

pub const SUPPORTED_POLYGONS: [usize; 7] = [3, 4, 5, 6, 8, 10, 12];

/// Regular `n`-gon with circumradius 1, as squared distances `2 − 2cos(2πk/n)`.
pub fn regular_polygon(n: usize) -> Result<CatalogEntry> {
    if !SUPPORTED_POLYGONS.contains(&n) {
        return Err(Error::UnsupportedN(n));
    }
    let two = QuadExt::from_int(2);
    let mut rows = vec![vec![QuadExt::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let step = (i + n - j) % n;
            let c = cos_degrees((360 * step / n) as u32).ok_or(Error::UnsupportedN(n))?;
            rows[i][j] = &two - &(&two * &c);
        }
    }
    let d = SquaredDistanceMatrix::new(rows)?;
    Ok(CatalogEntry::new(
        "polygon",
        &[("n", n as i64)],
        Configuration::Sdm(d),
        Expected { s: n / 2, d: 2, n, k_integral: n != 5 },
    ))
}

fn is_prime(q: u64) -> bool {
    q >= 2 && (2..).take_while(|p| p * p <= q).all(|p| !q.is_multiple_of(p))
}

pub fn quadratic_residues(q: u64) -> Vec<bool> {
    let mut qr = vec![false; q as usize];
    for x in 1..q {
        qr[((x * x) % q) as usize] = true;
    }
    qr
}

/// Spherical embedding of the Paley conference graph on `q` vertices.
///
/// The Gram matrix is the projection onto the `ρ = (−1+√q)/2` eigenspace,
/// `G = (A − σI − ((κ−σ)/q)·J)/(ρ−σ)` with `κ = (q−1)/2`, `σ = (−1−√q)/2`,
/// rescaled to unit diagonal; squared distances are `2 − 2·G[i][j]/G[0][0]`.
/// The result is a two-distance set of `2d + 1` points in ℝᵈ, `d = (q−1)/2`.
pub fn paley_conference_embedding(q: u64) -> Result<CatalogEntry> {
    if !is_prime(q) || q % 4 != 1 || q > 97 {
        return Err(Error::InvalidQ(q));
    }
    let n = q as usize;
    let qr = quadratic_residues(q);
    let sqrt_q = QuadExt::sqrt_of(q);
    let half = QuadExt::from_frac(1, 2);
    let kappa = QuadExt::from_int((q as i64 - 1) / 2);
    let sigma = &(QuadExt::from_int(-1) - &sqrt_q) * &half;
    let rho = &(QuadExt::from_int(-1) + &sqrt_q) * &half;
    let spread = &rho - &sigma;
    let shift = &(&kappa - &sigma) / &QuadExt::from_int(q as i64);
    let gram = |i: usize, j: usize| -> QuadExt {
        let adj = if i != j && qr[(i + n - j) % n] { QuadExt::one() } else { QuadExt::zero() };
        let delta = if i == j { sigma.clone() } else { QuadExt::zero() };
        &(&(&adj - &delta) - &shift) / &spread
    };
    let g00 = gram(0, 0);
    let two = QuadExt::from_int(2);
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { QuadExt::zero() } else { &two - &(&(&two * &gram(i, j)) / &g00) })
                .collect()
        })
        .collect();
    let d = SquaredDistanceMatrix::new(rows)?;
    Ok(CatalogEntry::new(
        "paley",
        &[("q", q as i64)],
        Configuration::Sdm(d),
        Expected { s: 2, d: (n - 1) / 2, n, k_integral: false },
    ))
}

/// Looks an entry up by CLI name (`simplex`, `cross-polytope`, `johnson2`,
/// `johnson`, `hypercube`, `polygon`, `paley`).
pub fn by_name(name: &str, params: &BTreeMap<String, i64>) -> Result<CatalogEntry> {
    let get = |key: &str| -> Result<usize> {
        let v = *params
            .get(key)
            .ok_or_else(|| Error::InvalidParameter(format!("`{}` needs parameter `{}`", name, key)))?;
        usize::try_from(v).map_err(|_| Error::InvalidParameter(format!("`{}` must be non-negative", key)))
    };
    match name {
        "simplex" => simplex(get("n")?),
        "cross-polytope" | "cross_polytope" => cross_polytope(get("d")?),
        "johnson2" => johnson2(get("n")?),
        "johnson" => johnson(get("n")?, get("w")?),
        "hypercube" => hypercube(get("d")?),
        "polygon" => regular_polygon(get("n")?),
        "paley" => paley_conference_embedding(get("q")? as u64),
        other => Err(Error::InvalidParameter(format!("unknown catalog entry `{}`", other))),
    }
}

pub const CATALOG_NAMES: [&str; 7] = ["simplex", "cross-polytope", "johnson2", "johnson", "hypercube", "polygon", "paley"];
