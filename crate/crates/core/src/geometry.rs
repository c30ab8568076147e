//! Point configurations, squared-distance matrices and Gram matrices.
//!
//! The squared-distance matrix is the primary representation: several of the
//! interesting configurations have irrational coordinates but squared
//! distances in a single quadratic field.

use crate::error::{Error, Result};
use crate::field::QuadExt;
use crate::linalg::{ExactMatrix, Inertia};

/// A finite set of distinct points in ℝᵈ with exact coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    dim: usize,
    points: Vec<Vec<QuadExt>>,
    labels: Option<Vec<String>>,
}

impl PointSet {
    pub fn new(dim: usize, points: Vec<Vec<QuadExt>>) -> Result<Self> {
        let mut radicand = 0;
        for (i, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "point {} has {} coordinates, expected {}",
                    i,
                    p.len(),
                    dim
                )));
            }
            for x in p {
                match (radicand, x.radicand()) {
                    (_, 0) => {}
                    (0, r) => radicand = r,
                    (p, r) if p != r => return Err(Error::MixedRadicands(p, r)),
                    _ => {}
                }
            }
        }
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                if points[i] == points[j] {
                    return Err(Error::DuplicatePoints(i, j));
                }
            }
        }
        Ok(Self { dim, points, labels: None })
    }

    pub fn from_i64(dim: usize, points: &[Vec<i64>]) -> Result<Self> {
        Self::new(dim, points.iter().map(|p| p.iter().map(|&x| QuadExt::from_int(x)).collect()).collect())
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.points.len() {
            return Err(Error::SizeMismatch(format!(
                "{} labels for {} points",
                labels.len(),
                self.points.len()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<QuadExt>] {
        &self.points
    }

    pub fn point(&self, i: usize) -> &[QuadExt] {
        &self.points[i]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Reorders points: the result's `i`-th point is `self[order[i]]`.
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        Self::new(self.dim, order.iter().map(|&i| self.points[i].clone()).collect())
    }

    /// Embeds into ℝ^{d+extra} by appending zero coordinates.
    pub fn padded(&self, extra: usize) -> Self {
        let points = self
            .points
            .iter()
            .map(|p| p.iter().cloned().chain(std::iter::repeat_n(QuadExt::zero(), extra)).collect())
            .collect();
        Self { dim: self.dim + extra, points, labels: self.labels.clone() }
    }
}

/// Exact squared Euclidean distance between two coordinate vectors.
pub fn squared_distance(x: &[QuadExt], y: &[QuadExt]) -> QuadExt {
    x.iter()
        .zip(y)
        .map(|(a, b)| {
            let t = a - b;
            &t * &t
        })
        .sum()
}

/// Symmetric matrix of pairwise squared distances with zero diagonal and
/// strictly positive off-diagonal entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquaredDistanceMatrix {
    n: usize,
    entries: Vec<QuadExt>,
}

impl SquaredDistanceMatrix {
    pub fn new(rows: Vec<Vec<QuadExt>>) -> Result<Self> {
        let n = rows.len();
        // reuse the matrix constructor for shape and radicand checks
        let m = ExactMatrix::from_rows(rows)?;
        if m.cols() != n {
            return Err(Error::NotSquare(n, m.cols()));
        }
        for i in 0..n {
            if !m.get(i, i).is_zero() {
                return Err(Error::InvalidDistanceMatrix(format!("nonzero diagonal entry at {}", i)));
            }
            for j in i + 1..n {
                if m.get(i, j) != m.get(j, i) {
                    return Err(Error::InvalidDistanceMatrix(format!("asymmetric at ({}, {})", i, j)));
                }
                match m.get(i, j).sign_of() {
                    0 => return Err(Error::DuplicatePoints(i, j)),
                    -1 => {
                        return Err(Error::InvalidDistanceMatrix(format!(
                            "negative squared distance at ({}, {})",
                            i, j
                        )))
                    }
                    _ => {}
                }
            }
        }
        Ok(Self { n, entries: m.to_rows().into_iter().flatten().collect() })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, i: usize, j: usize) -> &QuadExt {
        &self.entries[i * self.n + j]
    }

    pub fn to_rows(&self) -> Vec<Vec<QuadExt>> {
        self.entries.chunks(self.n.max(1)).map(<[QuadExt]>::to_vec).take(self.n).collect()
    }

    /// Multiplies every squared distance by a positive constant.
    pub fn scaled(&self, c: &QuadExt) -> Result<Self> {
        if c.sign_of() <= 0 {
            return Err(Error::RangeError("scale factor must be positive".into()));
        }
        Self::new(
            self.to_rows()
                .into_iter()
                .map(|r| r.iter().map(|x| x.checked_mul(c)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?,
        )
    }

    /// Off-diagonal entries in row-major upper-triangle order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize, &QuadExt)> + '_ {
        (0..self.n).flat_map(move |i| (i + 1..self.n).map(move |j| (i, j, self.get(i, j))))
    }
}

/// Strictly ascending squared distances `α_1² < … < α_s²`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceSpectrum {
    sq_distances: Vec<QuadExt>,
}

impl DistanceSpectrum {
    /// Sorts and deduplicates; every value must be positive and share one field.
    pub fn from_values(values: Vec<QuadExt>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::NotDistanceSet("empty distance spectrum".into()));
        }
        let mut sorted: Vec<QuadExt> = Vec::with_capacity(values.len());
        for v in values {
            if v.sign_of() <= 0 {
                return Err(Error::RangeError(format!("squared distance {} is not positive", v)));
            }
            let mut slot = Some(sorted.len());
            for (k, existing) in sorted.iter().enumerate() {
                match v.cmp_exact(existing)? {
                    std::cmp::Ordering::Greater => continue,
                    std::cmp::Ordering::Equal => slot = None,
                    std::cmp::Ordering::Less => slot = Some(k),
                }
                break;
            }
            if let Some(at) = slot {
                sorted.insert(at, v);
            }
        }
        Ok(Self { sq_distances: sorted })
    }

    pub fn from_i64(values: &[i64]) -> Result<Self> {
        Self::from_values(values.iter().map(|&v| QuadExt::from_int(v)).collect())
    }

    pub fn s(&self) -> usize {
        self.sq_distances.len()
    }

    pub fn values(&self) -> &[QuadExt] {
        &self.sq_distances
    }

    pub fn get(&self, i: usize) -> &QuadExt {
        &self.sq_distances[i]
    }

    /// Zero-based position of an exact squared distance.
    pub fn index_of(&self, v: &QuadExt) -> Option<usize> {
        self.sq_distances.iter().position(|x| x == v)
    }

    pub fn scaled(&self, c: &QuadExt) -> Result<Self> {
        Self::from_values(self.sq_distances.iter().map(|x| x.checked_mul(c)).collect::<Result<_>>()?)
    }

    /// Rescales so the largest squared distance is 1.
    pub fn normalized(&self) -> Result<Self> {
        self.scaled(&self.sq_distances[self.s() - 1].recip()?)
    }
}

/// Input to the analysis: explicit coordinates or a bare squared-distance matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Configuration {
    Points(PointSet),
    Sdm(SquaredDistanceMatrix),
}

impl Configuration {
    pub fn sdm(&self) -> Result<SquaredDistanceMatrix> {
        match self {
            Configuration::Points(x) => sdm_from_points(x),
            Configuration::Sdm(d) => Ok(d.clone()),
        }
    }

    pub fn points(&self) -> Option<&PointSet> {
        match self {
            Configuration::Points(x) => Some(x),
            Configuration::Sdm(_) => None,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Configuration::Points(x) => x.len(),
            Configuration::Sdm(d) => d.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Outcome of the realizability test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Realizability {
    Realizable { dim: usize },
    NotRealizable { inertia: Inertia },
}

impl Realizability {
    pub fn is_realizable(&self) -> bool {
        matches!(self, Realizability::Realizable { .. })
    }
}

pub fn sdm_from_points(x: &PointSet) -> Result<SquaredDistanceMatrix> {
    let n = x.len();
    let mut rows = vec![vec![QuadExt::zero(); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let d = squared_distance(x.point(i), x.point(j));
            if d.is_zero() {
                return Err(Error::DuplicatePoints(i, j));
            }
            rows[i][j] = d.clone();
            rows[j][i] = d;
        }
    }
    SquaredDistanceMatrix::new(rows)
}

/// Gram matrix of the configuration translated so point 0 sits at the origin:
/// `G[i][j] = (D[0][i] + D[0][j] − D[i][j]) / 2` for `i, j ≥ 1`.
pub fn gram_from_sdm(d: &SquaredDistanceMatrix) -> ExactMatrix {
    let n = d.len();
    if n < 2 {
        return ExactMatrix::zeros(0, 0);
    }
    let half = QuadExt::from_frac(1, 2);
    let rows = (1..n)
        .map(|i| (1..n).map(|j| &(d.get(0, i) + d.get(0, j) - d.get(i, j)) * &half).collect())
        .collect();
    ExactMatrix::from_rows(rows).expect("entries come from one validated matrix")
}

/// Affine rank of the configuration (minimal embedding dimension when realizable).
pub fn embedding_dimension(d: &SquaredDistanceMatrix) -> usize {
    gram_from_sdm(d).rank()
}

/// Like [`embedding_dimension`], but rejects matrices that admit no Euclidean realization.
pub fn embedding_dimension_strict(d: &SquaredDistanceMatrix) -> Result<usize> {
    match is_realizable(d) {
        Realizability::Realizable { dim } => Ok(dim),
        Realizability::NotRealizable { inertia } => {
            Err(Error::NotRealizable(inertia.n_pos, inertia.n_neg, inertia.n_zero))
        }
    }
}

pub fn is_realizable(d: &SquaredDistanceMatrix) -> Realizability {
    let inertia = gram_from_sdm(d).ldlt_inertia().expect("Gram matrix is symmetric");
    if inertia.is_psd() {
        Realizability::Realizable { dim: inertia.n_pos }
    } else {
        Realizability::NotRealizable { inertia }
    }
}

pub fn distance_spectrum(d: &SquaredDistanceMatrix) -> Result<DistanceSpectrum> {
    if d.len() < 2 {
        return Err(Error::NotDistanceSet(format!("{} point(s) realize no distance", d.len())));
    }
    let mut distinct: Vec<QuadExt> = Vec::new();
    for (_, _, v) in d.pairs() {
        if !distinct.contains(v) {
            distinct.push(v.clone());
        }
    }
    DistanceSpectrum::from_values(distinct)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> PointSet {
        PointSet::from_i64(2, &[vec![0, 0], vec![1, 0], vec![1, 1], vec![0, 1]]).unwrap()
    }

    #[test]
    fn square_distances_and_gram() {
        let d = sdm_from_points(&square()).unwrap();
        let off: Vec<i64> = d.pairs().map(|(_, _, v)| v.to_integer().unwrap().try_into().unwrap()).collect();
        assert_eq!(off, vec![1, 2, 1, 1, 2, 1]);
        let g = gram_from_sdm(&d);
        assert_eq!(g.shape(), (3, 3));
        let diag: Vec<_> = (0..3).map(|i| g.get(i, i).clone()).collect();
        assert_eq!(diag, vec![QuadExt::from_int(1), QuadExt::from_int(2), QuadExt::from_int(1)]);
        assert_eq!(g.rank(), 2);
        assert_eq!(g.ldlt_inertia().unwrap(), Inertia { n_pos: 2, n_neg: 0, n_zero: 1 });
        let spec = distance_spectrum(&d).unwrap();
        assert_eq!(spec.values(), &[QuadExt::from_int(1), QuadExt::from_int(2)]);
    }

    #[test]
    fn segment_gram() {
        let d = SquaredDistanceMatrix::new(vec![
            vec![QuadExt::zero(), QuadExt::one()],
            vec![QuadExt::one(), QuadExt::zero()],
        ])
        .unwrap();
        assert_eq!(gram_from_sdm(&d), ExactMatrix::from_i64(&[vec![1]]));
    }

    #[test]
    fn simplex_is_one_distance() {
        let pts: Vec<Vec<i64>> = (0..4).map(|i| (0..4).map(|j| i64::from(i == j)).collect()).collect();
        let x = PointSet::from_i64(4, &pts).unwrap();
        let d = sdm_from_points(&x).unwrap();
        assert!(d.pairs().all(|(_, _, v)| *v == QuadExt::from_int(2)));
        assert_eq!(embedding_dimension(&d), 3);
        assert_eq!(distance_spectrum(&d).unwrap().s(), 1);
    }

    #[test]
    fn triangle_violation_is_not_realizable() {
        let e = |v: i64| QuadExt::from_int(v);
        let d = SquaredDistanceMatrix::new(vec![
            vec![e(0), e(1), e(1)],
            vec![e(1), e(0), e(9)],
            vec![e(1), e(9), e(0)],
        ])
        .unwrap();
        assert!(matches!(is_realizable(&d), Realizability::NotRealizable { .. }));
        assert!(matches!(embedding_dimension_strict(&d), Err(Error::NotRealizable(_, 1, _))));
    }

    #[test]
    fn duplicates_rejected() {
        assert_eq!(
            PointSet::from_i64(1, &[vec![0], vec![1], vec![0]]).unwrap_err(),
            Error::DuplicatePoints(0, 2)
        );
        let z = QuadExt::zero();
        let bad = SquaredDistanceMatrix::new(vec![vec![z.clone(), z.clone()], vec![z.clone(), z]]);
        assert_eq!(bad.unwrap_err(), Error::DuplicatePoints(0, 1));
    }

    #[test]
    fn malformed_matrices_rejected() {
        let e = |v: i64| QuadExt::from_int(v);
        assert!(SquaredDistanceMatrix::new(vec![vec![e(0), e(1)], vec![e(2), e(0)]]).is_err());
        assert!(SquaredDistanceMatrix::new(vec![vec![e(0), e(-1)], vec![e(-1), e(0)]]).is_err());
        assert!(SquaredDistanceMatrix::new(vec![vec![e(1)]]).is_err());
        assert!(distance_spectrum(&SquaredDistanceMatrix::new(vec![vec![e(0)]]).unwrap()).is_err());
    }

    #[test]
    fn spectrum_sorts_exactly() {
        let r5 = QuadExt::sqrt_of(5);
        let lo = &(QuadExt::from_int(5) - &r5) * &QuadExt::from_frac(1, 2);
        let hi = &(QuadExt::from_int(5) + &r5) * &QuadExt::from_frac(1, 2);
        let spec = DistanceSpectrum::from_values(vec![hi.clone(), lo.clone(), hi.clone()]).unwrap();
        assert_eq!(spec.values(), &[lo, hi]);
    }
}
