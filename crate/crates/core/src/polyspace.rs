//! Multivariate polynomials over [`QuadExt`] and the rank certificates built on them.
//!
//! Polynomials are stored sparsely in fully expanded form; `x_0 = x_1² + … + x_d²`
//! is always substituted, so ranks over the ordinary monomial basis are
//! dimensions of the corresponding function spaces.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{binomial, QuadExt};
use crate::geometry::{self, DistanceSpectrum, PointSet, SquaredDistanceMatrix};
use crate::invariants::{k_invariants, threshold_n};
use crate::linalg::ExactMatrix;

/// Exponent vector `(λ_1, …, λ_d)`, ordered graded-lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(d: usize) -> Self {
        Monomial(vec![0; d])
    }

    pub fn var(d: usize, i: usize) -> Self {
        let mut e = vec![0; d];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    fn mul(&self, other: &Self) -> Self {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn eval(&self, x: &[QuadExt]) -> QuadExt {
        self.0.iter().zip(x).map(|(&e, xi)| xi.pow(e)).product()
    }
}

impl Ord for Monomial {
    /// Degree first; ties broken so that larger leading exponents come first.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials in `d` variables of exactly the given degree, in graded lex order.
pub fn monomials_of_degree(d: usize, degree: u32) -> Vec<Monomial> {
    fn rec(d: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == d {
            prefix.push(left);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=left).rev() {
            prefix.push(e);
            rec(d, left - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if d == 0 {
        if degree == 0 {
            out.push(Monomial(Vec::new()));
        }
        return out;
    }
    rec(d, degree, &mut Vec::with_capacity(d), &mut out);
    out
}

/// All monomials of degree `≤ max_degree`; empty when `max_degree < 0`.
pub fn monomials_up_to(d: usize, max_degree: i64) -> Vec<Monomial> {
    (0..=max_degree).flat_map(|k| monomials_of_degree(d, k as u32)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Mul,
    Scale,
    PartialDerivative(usize),
}

/// Sparse polynomial in `d` variables; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    d: usize,
    terms: BTreeMap<Monomial, QuadExt>,
}

impl Polynomial {
    pub fn zero(d: usize) -> Self {
        Self { d, terms: BTreeMap::new() }
    }

    pub fn constant(d: usize, c: QuadExt) -> Self {
        Self::monomial(Monomial::one(d), c)
    }

    pub fn monomial(m: Monomial, c: QuadExt) -> Self {
        let d = m.dim();
        let mut p = Self::zero(d);
        p.add_term(m, c);
        p
    }

    pub fn var(d: usize, i: usize) -> Self {
        Self::monomial(Monomial::var(d, i), QuadExt::one())
    }

    /// `x_0 = x_1² + … + x_d²`.
    pub fn norm_squared(d: usize) -> Self {
        let mut p = Self::zero(d);
        for i in 0..d {
            let mut e = vec![0; d];
            e[i] = 2;
            p.add_term(Monomial(e), QuadExt::one());
        }
        p
    }

    /// `‖x − y‖²` as a polynomial in `x`.
    pub fn squared_distance_to(y: &[QuadExt]) -> Self {
        let d = y.len();
        let mut p = Self::norm_squared(d);
        for (i, yi) in y.iter().enumerate() {
            p.add_term(Monomial::var(d, i), -(yi * &QuadExt::from_int(2)));
        }
        p.add_term(Monomial::one(d), geometry::squared_distance(y, &vec![QuadExt::zero(); d]));
        p
    }

    fn add_term(&mut self, m: Monomial, c: QuadExt) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = &*v + &c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self, degree: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == degree)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &QuadExt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> QuadExt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.d != other.d {
            return Err(Error::DimensionMismatch(format!("polynomials in {} and {} variables", self.d, other.d)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&QuadExt::from_int(-1)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = Self::zero(self.d);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.checked_mul(cb)?);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &QuadExt) -> Self {
        let mut out = Self::zero(self.d);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Self::constant(self.d, QuadExt::one());
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// `∂/∂x_i`.
    pub fn partial_derivative(&self, i: usize) -> Result<Self> {
        if i >= self.d {
            return Err(Error::DimensionMismatch(format!("no variable x_{} in {} variables", i + 1, self.d)));
        }
        let mut out = Self::zero(self.d);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.0[i] -= 1;
            out.add_term(dm, c * &QuadExt::from_int(e as i64));
        }
        Ok(out)
    }

    pub fn eval(&self, x: &[QuadExt]) -> Result<QuadExt> {
        if x.len() != self.d {
            return Err(Error::DimensionMismatch(format!("point has {} coordinates, expected {}", x.len(), self.d)));
        }
        self.terms.iter().try_fold(QuadExt::zero(), |acc, (m, c)| acc.checked_add(&c.checked_mul(&m.eval(x))?))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let vars: Vec<String> = m
                    .0
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| if e == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, e) })
                    .collect();
                if vars.is_empty() {
                    format!("({})", c)
                } else {
                    format!("({})*{}", c, vars.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub fn poly_arith(p: &Polynomial, q: Option<&Polynomial>, c: Option<&QuadExt>, op: PolyOp) -> Result<Polynomial> {
    let need_q = || q.ok_or_else(|| Error::RangeError("operation needs a second polynomial".into()));
    match op {
        PolyOp::Add => p.add(need_q()?),
        PolyOp::Mul => p.mul(need_q()?),
        PolyOp::Scale => Ok(p.scale(c.ok_or_else(|| Error::RangeError("scale needs a scalar".into()))?)),
        PolyOp::PartialDerivative(i) => p.partial_derivative(i),
    }
}

fn check_index(spec: &DistanceSpectrum, i: usize) -> Result<()> {
    if i >= spec.s() {
        return Err(Error::IndexOutOfRange { index: i, s: spec.s() });
    }
    Ok(())
}

/// `F_y(x) = ∏_{j≠i} (α_j² − ‖x−y‖²)/(α_j² − α_i²)`; `i` is zero-based.
///
/// On the configuration: `F_y(y) = k_i`, `F_y(x) = 1` at squared distance
/// `α_i²`, and `0` at every other squared distance of the spectrum.
pub fn expand_f(y: &[QuadExt], spec: &DistanceSpectrum, i: usize) -> Result<Polynomial> {
    check_index(spec, i)?;
    let d = y.len();
    let dist = Polynomial::squared_distance_to(y);
    let ai = spec.get(i);
    let mut acc = Polynomial::constant(d, QuadExt::one());
    for (j, aj) in spec.values().iter().enumerate() {
        if j == i {
            continue;
        }
        let factor = Polynomial::constant(d, aj.clone()).sub(&dist)?.scale(&(aj - ai).recip()?);
        acc = acc.mul(&factor)?;
    }
    Ok(acc)
}

/// `G_y(x) = ∏_j (α_j² − ‖x−y‖²)/α_j²`, the annihilator of `X \ {y}` with `G_y(y) = 1`.
pub fn expand_g(y: &[QuadExt], spec: &DistanceSpectrum) -> Result<Polynomial> {
    let d = y.len();
    let dist = Polynomial::squared_distance_to(y);
    let mut acc = Polynomial::constant(d, QuadExt::one());
    for aj in spec.values() {
        let factor = Polynomial::constant(d, aj.clone()).sub(&dist)?.scale(&aj.recip()?);
        acc = acc.mul(&factor)?;
    }
    Ok(acc)
}

/// Rows are the polynomials' coefficients over `basis`.
pub fn coefficient_matrix(polys: &[Polynomial], basis: &[Monomial]) -> Result<ExactMatrix> {
    let index: BTreeMap<&Monomial, usize> = basis.iter().enumerate().map(|(k, m)| (m, k)).collect();
    let mut rows = Vec::with_capacity(polys.len());
    for p in polys {
        let mut row = vec![QuadExt::zero(); basis.len()];
        for (m, c) in p.terms() {
            let &k = index
                .get(m)
                .ok_or_else(|| Error::DimensionMismatch(format!("monomial {:?} outside the basis", m.0)))?;
            row[k] = c.clone();
        }
        rows.push(row);
    }
    ExactMatrix::from_rows(rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RankRelation {
    /// achieved rank must equal the expected rank
    Equal,
    /// achieved rank must not exceed the expected rank
    AtMost,
}

/// Outcome of an exact rank check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankCertificate {
    pub claim: String,
    pub matrix_shape: (usize, usize),
    pub expected_rank: usize,
    pub achieved_rank: usize,
    pub pass: bool,
    pub relation: RankRelation,
    /// Rank of the configuration-indexed family alone, for certificates that
    /// append a monomial block to it.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family_rank: Option<usize>,
}

impl RankCertificate {
    fn new(claim: String, shape: (usize, usize), expected: usize, achieved: usize, relation: RankRelation) -> Self {
        let pass = match relation {
            RankRelation::Equal => achieved == expected,
            RankRelation::AtMost => achieved <= expected,
        };
        Self { claim, matrix_shape: shape, expected_rank: expected, achieved_rank: achieved, pass, relation, family_rank: None }
    }

    /// True when appending the monomial block raised the rank by exactly its
    /// size, i.e. the two spans meet only in zero.
    pub fn spans_independent(&self, block: usize) -> Option<bool> {
        self.family_rank.map(|f| self.achieved_rank == f + block)
    }
}

/// Dimension of `W_ℓ(ℝᵈ)` computed exactly, against the bound `C(d+ℓ, ℓ) + C(d+ℓ−1, ℓ−1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DimW {
    pub achieved: usize,
    pub bound: usize,
}

pub fn dim_w(d: usize, l: usize) -> Result<DimW> {
    if d == 0 {
        return Err(Error::RangeError("d must be at least 1".into()));
    }
    let x0 = Polynomial::norm_squared(d);
    let mut spanning = Vec::new();
    for l0 in 0..=l {
        let head = x0.pow(l0 as u32)?;
        for m in monomials_up_to(d, (l - l0) as i64) {
            spanning.push(head.mul(&Polynomial::monomial(m, QuadExt::one()))?);
        }
    }
    let basis = monomials_up_to(d, 2 * l as i64);
    let achieved = coefficient_matrix(&spanning, &basis)?.rank();
    let (d, l) = (d as i64, l as i64);
    let bound = (binomial(d + l, l) + binomial(d + l - 1, l - 1)) as usize;
    Ok(DimW { achieved, bound })
}

/// Derivatives of order `2s' − ℓ + 2` of `(x_1² + … + x_d²)^{s'}` span exactly
/// the homogeneous polynomials of degree `ℓ − 2`.
pub fn lemma5_certificate(d: usize, s_prime: usize, l: usize) -> Result<RankCertificate> {
    if d == 0 || l < 2 || l > s_prime + 2 {
        return Err(Error::RangeError(format!("need d >= 1 and 2 <= l <= s'+2, got d={}, s'={}, l={}", d, s_prime, l)));
    }
    let order = (2 * s_prime + 2 - l) as u32;
    let target_degree = (l - 2) as u32;
    let base = Polynomial::norm_squared(d).pow(s_prime as u32)?;
    let mut derivs = Vec::new();
    let mut homogeneous = true;
    for b in monomials_of_degree(d, order) {
        let mut p = base.clone();
        for (var, &times) in b.0.iter().enumerate() {
            for _ in 0..times {
                p = p.partial_derivative(var)?;
            }
        }
        homogeneous &= p.is_homogeneous(target_degree);
        derivs.push(p);
    }
    let basis = monomials_of_degree(d, target_degree);
    let m = coefficient_matrix(&derivs, &basis)?;
    let expected = binomial(d as i64 + l as i64 - 3, l as i64 - 2) as usize;
    let mut cert = RankCertificate::new(
        format!("d={} s'={} l={}: order-{} derivatives of x0^{} span all degree-{} monomials", d, s_prime, l, order, s_prime, target_degree),
        m.shape(),
        expected,
        m.rank(),
        RankRelation::Equal,
    );
    cert.pass &= homogeneous && basis.len() == expected;
    Ok(cert)
}

pub fn lemma5_check(d: usize, s_prime: usize, l: usize) -> Result<bool> {
    Ok(lemma5_certificate(d, s_prime, l)?.pass)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Lemma6Outcome {
    /// `Σ m_i ‖x − y_i‖^{2(s−1)}` has degree at most `2s − ℓ − 1`.
    pub hypothesis_holds: bool,
    /// `Σ m_i y_i^λ = 0` for every `|λ| ≤ ℓ − 2`.
    pub conclusion_holds: bool,
}

impl Lemma6Outcome {
    pub fn implication_holds(&self) -> bool {
        !self.hypothesis_holds || self.conclusion_holds
    }
}

/// `Σ_i m_i ‖x − y_i‖^{2(s−1)}` expanded in `x`.
pub fn weighted_power_sum(m: &[QuadExt], y: &PointSet, s: usize) -> Result<Polynomial> {
    let mut acc = Polynomial::zero(y.dim());
    for (mi, yi) in m.iter().zip(y.points()) {
        if mi.is_zero() {
            continue;
        }
        let term = Polynomial::squared_distance_to(yi).pow((s - 1) as u32)?.scale(mi);
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

/// Rows `λ` (`|λ| ≤ max_degree`), columns points: entry `y_i^λ`.
pub fn moment_matrix(y: &PointSet, max_degree: i64) -> Result<ExactMatrix> {
    let rows = monomials_up_to(y.dim(), max_degree)
        .iter()
        .map(|lam| y.points().iter().map(|p| lam.eval(p)).collect())
        .collect::<Vec<Vec<QuadExt>>>();
    if rows.is_empty() {
        return Ok(ExactMatrix::zeros(0, y.len()));
    }
    ExactMatrix::from_rows(rows)
}

/// Rows: coefficients of `x`-monomials of degree `≥ min_degree` in `‖x − y_i‖^{2(s−1)}`;
/// columns: points. Its null space is exactly the set of weights satisfying the
/// degree hypothesis of [`lemma6_check`].
pub fn high_degree_matrix(y: &PointSet, s: usize, min_degree: u32) -> Result<ExactMatrix> {
    let top = 2 * (s as u32 - 1);
    let basis: Vec<Monomial> = (min_degree..=top).flat_map(|k| monomials_of_degree(y.dim(), k)).collect();
    let cols = y
        .points()
        .iter()
        .map(|p| Polynomial::squared_distance_to(p).pow(s as u32 - 1))
        .collect::<Result<Vec<_>>>()?;
    if basis.is_empty() {
        return Ok(ExactMatrix::zeros(0, y.len()));
    }
    let rows = basis.iter().map(|m| cols.iter().map(|p| p.coefficient(m)).collect()).collect();
    ExactMatrix::from_rows(rows)
}

pub fn lemma6_check(m: &[QuadExt], y: &PointSet, s: usize, l: usize) -> Result<Lemma6Outcome> {
    if s == 0 || l < 2 || l > s + 1 {
        return Err(Error::RangeError(format!("need 2 <= l <= s+1, got s={}, l={}", s, l)));
    }
    if m.len() != y.len() {
        return Err(Error::SizeMismatch(format!("{} weights for {} points", m.len(), y.len())));
    }
    let p = weighted_power_sum(m, y, s)?;
    let bound = 2 * s as i64 - l as i64 - 1;
    let hypothesis_holds = p.degree().is_none_or(|deg| deg as i64 <= bound);
    let moments = moment_matrix(y, l as i64 - 2)?;
    let conclusion_holds = (0..moments.rows()).all(|r| {
        moments.row(r).iter().zip(m).map(|(a, b)| a * b).sum::<QuadExt>().is_zero()
    });
    Ok(Lemma6Outcome { hypothesis_holds, conclusion_holds })
}

fn spectrum_of(x: &PointSet) -> Result<(SquaredDistanceMatrix, DistanceSpectrum)> {
    if x.len() < 2 {
        return Err(Error::NotDistanceSet(format!("{} point(s) realize no distance", x.len())));
    }
    let d = geometry::sdm_from_points(x)?;
    let spec = geometry::distance_spectrum(&d)?;
    Ok((d, spec))
}

/// `{F_y : y ∈ X}` together with the monomials of degree `≤ s − 2`, over the
/// monomials of degree `≤ 2(s−1)` in the ambient coordinates.
///
/// The certificate passes iff the stacked rank is `|X| + C(d+s−2, s−2)`, i.e.
/// the whole family is linearly independent. `family_rank` reports the rank of
/// the `F_y` alone, so callers can also read off whether the two spans meet
/// only in zero ([`RankCertificate::spans_independent`]).
pub fn independence_theorem3(x: &PointSet, i: usize) -> Result<RankCertificate> {
    let (_, spec) = spectrum_of(x)?;
    let s = spec.s();
    if s < 2 {
        return Err(Error::NotDistanceSet("the F_y family needs at least two distances".into()));
    }
    check_index(&spec, i)?;
    let d = x.dim();
    let family = x.points().iter().map(|y| expand_f(y, &spec, i)).collect::<Result<Vec<_>>>()?;
    let extra = monomials_up_to(d, s as i64 - 2);
    let basis = monomials_up_to(d, 2 * (s as i64 - 1));
    let family_rank = coefficient_matrix(&family, &basis)?.rank();
    let mut rows = family;
    rows.extend(extra.iter().map(|m| Polynomial::monomial(m.clone(), QuadExt::one())));
    let m = coefficient_matrix(&rows, &basis)?;
    let expected = x.len() + extra.len();
    let mut cert = RankCertificate::new(
        format!("{{F_y}} ∪ {{monomials of degree <= {}}} independent (i = {}, n = {}, d = {}, s = {})", s - 2, i + 1, x.len(), d, s),
        m.shape(),
        expected,
        m.rank(),
        RankRelation::Equal,
    );
    cert.family_rank = Some(family_rank);
    Ok(cert)
}

/// `{G_y : y ∈ X}` together with the monomials of degree `≤ s − 1` is linearly
/// independent, which caps `|X|` at `C(d+s, s)`.
pub fn bbs_check(x: &PointSet) -> Result<RankCertificate> {
    let (_, spec) = spectrum_of(x)?;
    let s = spec.s();
    let d = x.dim();
    let family = x.points().iter().map(|y| expand_g(y, &spec)).collect::<Result<Vec<_>>>()?;
    let extra = monomials_up_to(d, s as i64 - 1);
    let basis = monomials_up_to(d, 2 * s as i64);
    let family_rank = coefficient_matrix(&family, &basis)?.rank();
    let mut rows = family;
    rows.extend(extra.iter().map(|m| Polynomial::monomial(m.clone(), QuadExt::one())));
    let m = coefficient_matrix(&rows, &basis)?;
    let expected = x.len() + extra.len();
    let size_bound = binomial((d + s) as i64, s as i64) as usize;
    let mut cert = RankCertificate::new(
        format!("{{G_y}} ∪ {{monomials of degree <= {}}} independent and n = {} <= C(d+s, s) = {} (d = {}, s = {})", s - 1, x.len(), size_bound, d, s),
        m.shape(),
        expected,
        m.rank(),
        RankRelation::Equal,
    );
    cert.pass &= x.len() <= size_bound;
    cert.family_rank = Some(family_rank);
    Ok(cert)
}

/// `(F_y(x))_{x,y ∈ X} = k_i·I + A_i`, computed from squared distances alone.
pub fn evaluation_matrix(d: &SquaredDistanceMatrix, spec: &DistanceSpectrum, i: usize) -> Result<ExactMatrix> {
    let actual = geometry::distance_spectrum(d)?;
    if &actual != spec {
        return Err(Error::SpectrumMismatch("spectrum does not match the distance matrix".into()));
    }
    if spec.s() < 2 {
        return Err(Error::SpectrumMismatch("evaluation matrix needs s >= 2".into()));
    }
    check_index(spec, i)?;
    let k = k_invariants(spec).swap_remove(i);
    let ai = spec.get(i);
    let n = d.len();
    let rows = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    if r == c {
                        k.clone()
                    } else if d.get(r, c) == ai {
                        QuadExt::one()
                    } else {
                        QuadExt::zero()
                    }
                })
                .collect()
        })
        .collect();
    ExactMatrix::from_rows(rows)
}

/// Distance-only certificate: the evaluation matrix factors through
/// `span{F_y}`, so its rank may not exceed `N = C(d+s−1, s−1)` (`d` the
/// embedding dimension).
pub fn evaluation_certificate(d: &SquaredDistanceMatrix, i: usize) -> Result<RankCertificate> {
    let spec = geometry::distance_spectrum(d)?;
    let m = evaluation_matrix(d, &spec, i)?;
    let dim = geometry::embedding_dimension(d);
    let bound = threshold_n(dim, spec.s()).n_new as usize;
    Ok(RankCertificate::new(
        format!("rank(k_{} I + A_{}) <= N = C(d+s-1, s-1) = {} (n = {}, d = {}, s = {})", i + 1, i + 1, bound, d.len(), dim, spec.s()),
        m.shape(),
        bound,
        m.rank(),
        RankRelation::AtMost,
    ))
}
