//! Dense exact linear algebra over [`QuadExt`].
//!
//! All matrices in a computation share one radicand. Pivoting is deterministic
//! (first usable pivot in index order) so identical inputs give identical
//! elimination traces.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::QuadExt;

#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<QuadExt>,
    radicand: u64,
}

/// Signature counts of a symmetric matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Inertia {
    pub n_pos: usize,
    pub n_neg: usize,
    pub n_zero: usize,
}

impl Inertia {
    pub fn is_psd(&self) -> bool {
        self.n_neg == 0
    }

    pub fn dim(&self) -> usize {
        self.n_pos + self.n_neg + self.n_zero
    }
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![QuadExt::zero(); rows * cols], radicand: 0 }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = QuadExt::one();
        }
        m
    }

    /// Builds a matrix from rows; fails on ragged rows or mixed radicands.
    pub fn from_rows(rows: Vec<Vec<QuadExt>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(nrows * ncols);
        let mut radicand = 0;
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != ncols {
                return Err(Error::DimensionMismatch(format!(
                    "row {} has {} entries, expected {}",
                    i,
                    row.len(),
                    ncols
                )));
            }
            for x in row {
                match (radicand, x.radicand()) {
                    (_, 0) => {}
                    (0, r) => radicand = r,
                    (p, r) if p != r => return Err(Error::MixedRadicands(p, r)),
                    _ => {}
                }
                entries.push(x);
            }
        }
        Ok(Self { rows: nrows, cols: ncols, entries, radicand })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| QuadExt::from_int(x)).collect()).collect())
            .expect("integer rows are rectangular")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    /// Common radicand of the entries (0 when all rational).
    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn get(&self, i: usize, j: usize) -> &QuadExt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: QuadExt) {
        let r = x.radicand();
        assert!(
            r == 0 || self.radicand == 0 || r == self.radicand,
            "mixed radicands in matrix: {} vs {}",
            self.radicand,
            r
        );
        if r != 0 {
            self.radicand = r;
        }
        self.entries[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[QuadExt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<QuadExt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        (0..self.rows).map(|i| self.row(i).iter().map(QuadExt::to_f64).collect()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.entries[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t.radicand = self.radicand;
        t
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}×{} times {}×{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut row = Vec::with_capacity(other.cols);
            for j in 0..other.cols {
                let mut acc = QuadExt::zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    acc = acc.checked_add(&a.checked_mul(other.get(k, j))?)?;
                }
                row.push(acc);
            }
            out.push(row);
        }
        Self::from_rows(out)
    }

    pub fn scale(&self, c: &QuadExt) -> Result<Self> {
        let rows = self
            .to_rows()
            .into_iter()
            .map(|r| r.iter().map(|x| x.checked_mul(c)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(rows)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    fn rref_in_place(&mut self) -> Result<Vec<usize>> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self.get(r, c).recip()?;
            for j in c..self.cols {
                let v = self.get(r, j);
                if !v.is_zero() {
                    let scaled = v.checked_mul(&inv)?;
                    self.entries[r * self.cols + j] = scaled;
                }
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let pv = self.get(r, j);
                    if pv.is_zero() {
                        continue;
                    }
                    let upd = self.get(i, j).checked_sub(&f.checked_mul(pv)?)?;
                    self.entries[i * self.cols + j] = upd;
                }
            }
            pivots.push(c);
            r += 1;
        }
        Ok(pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Exact rank by Gauss–Jordan elimination.
    pub fn rank(&self) -> usize {
        let mut work = self.clone();
        // entries share one field, so elimination cannot fail
        work.rref_in_place().expect("uniform radicand").len()
    }

    /// Basis of the right null space `{v : M v = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<QuadExt>> {
        let mut work = self.clone();
        let pivots = work.rref_in_place().expect("uniform radicand");
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![QuadExt::zero(); self.cols];
                v[f] = QuadExt::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -work.get(r, f).clone();
                }
                v
            })
            .collect()
    }

    /// Exact determinant by elimination with row swaps.
    pub fn determinant(&self) -> Result<QuadExt> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = QuadExt::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !a.get(i, c).is_zero()) else {
                return Ok(QuadExt::zero());
            };
            if p != c {
                a.swap_rows(p, c);
                det = -det;
            }
            let pivot = a.get(c, c).clone();
            det = det.checked_mul(&pivot)?;
            let inv = pivot.recip()?;
            for i in c + 1..n {
                let f = a.get(i, c).checked_mul(&inv)?;
                if f.is_zero() {
                    continue;
                }
                for j in c + 1..n {
                    let pv = a.get(c, j);
                    if pv.is_zero() {
                        continue;
                    }
                    let upd = a.get(i, j).checked_sub(&f.checked_mul(pv)?)?;
                    a.entries[i * n + j] = upd;
                }
            }
        }
        Ok(det)
    }

    /// Inertia of a symmetric matrix by symmetric elimination (Sylvester's law).
    ///
    /// Diagonal 1×1 pivots are taken first; when every remaining diagonal entry
    /// vanishes but an off-diagonal one does not, a 2×2 block `[[0, b], [b, 0]]`
    /// is eliminated, contributing one positive and one negative direction.
    pub fn ldlt_inertia(&self) -> Result<Inertia> {
        if !self.is_symmetric() {
            return Err(if self.is_square() { Error::NotSymmetric } else { Error::NotSquare(self.rows, self.cols) });
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut active: Vec<usize> = (0..n).collect();
        let mut inertia = Inertia { n_pos: 0, n_neg: 0, n_zero: 0 };
        while !active.is_empty() {
            if let Some(pos) = active.iter().position(|&p| !a.get(p, p).is_zero()) {
                let p = active.remove(pos);
                let d = a.get(p, p).clone();
                match d.sign_of() {
                    1 => inertia.n_pos += 1,
                    _ => inertia.n_neg += 1,
                }
                let inv = d.recip()?;
                let col: Vec<QuadExt> = active.iter().map(|&i| a.get(i, p).clone()).collect();
                for (ii, &i) in active.iter().enumerate() {
                    if col[ii].is_zero() {
                        continue;
                    }
                    let f = col[ii].checked_mul(&inv)?;
                    for (jj, &j) in active.iter().enumerate().skip(ii) {
                        if col[jj].is_zero() {
                            continue;
                        }
                        let upd = a.get(i, j).checked_sub(&f.checked_mul(&col[jj])?)?;
                        a.entries[i * n + j] = upd.clone();
                        a.entries[j * n + i] = upd;
                    }
                }
                continue;
            }
            let pair = active.iter().enumerate().find_map(|(ii, &i)| {
                active[ii + 1..].iter().find(|&&j| !a.get(i, j).is_zero()).map(|&j| (i, j))
            });
            let Some((p, q)) = pair else {
                inertia.n_zero += active.len();
                break;
            };
            active.retain(|&x| x != p && x != q);
            inertia.n_pos += 1;
            inertia.n_neg += 1;
            let inv_b = a.get(p, q).recip()?;
            let cp: Vec<QuadExt> = active.iter().map(|&i| a.get(i, p).clone()).collect();
            let cq: Vec<QuadExt> = active.iter().map(|&i| a.get(i, q).clone()).collect();
            for ii in 0..active.len() {
                for jj in ii..active.len() {
                    let cross = cp[ii].checked_mul(&cq[jj])?.checked_add(&cq[ii].checked_mul(&cp[jj])?)?;
                    if cross.is_zero() {
                        continue;
                    }
                    let (i, j) = (active[ii], active[jj]);
                    let upd = a.get(i, j).checked_sub(&cross.checked_mul(&inv_b)?)?;
                    a.entries[i * n + j] = upd.clone();
                    a.entries[j * n + i] = upd;
                }
            }
        }
        Ok(inertia)
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}×{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        assert_eq!(ExactMatrix::identity(3).rank(), 3);
        assert_eq!(ExactMatrix::from_i64(&[vec![1, 2], vec![2, 4]]).rank(), 1);
        assert_eq!(ExactMatrix::zeros(2, 3).rank(), 0);
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(ExactMatrix::identity(4).determinant().unwrap(), QuadExt::one());
        let swap = ExactMatrix::from_i64(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(swap.determinant().unwrap(), QuadExt::from_int(-1));
        assert_eq!(ExactMatrix::zeros(2, 3).determinant(), Err(Error::NotSquare(2, 3)));
        let m = ExactMatrix::from_i64(&[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]);
        assert_eq!(m.determinant().unwrap(), QuadExt::from_int(4));
    }

    #[test]
    fn inertia_examples() {
        let d = ExactMatrix::from_i64(&[vec![1, 0, 0], vec![0, -1, 0], vec![0, 0, 0]]);
        assert_eq!(d.ldlt_inertia().unwrap(), Inertia { n_pos: 1, n_neg: 1, n_zero: 1 });
        // zero diagonal forces the 2×2 step
        let h = ExactMatrix::from_i64(&[vec![0, 3, 0], vec![3, 0, 1], vec![0, 1, 0]]);
        let i = h.ldlt_inertia().unwrap();
        assert_eq!((i.n_pos, i.n_neg, i.n_zero), (1, 1, 1));
        let ns = ExactMatrix::from_i64(&[vec![0, 1], vec![2, 0]]);
        assert_eq!(ns.ldlt_inertia(), Err(Error::NotSymmetric));
    }

    #[test]
    fn quadratic_entries() {
        let phi = QuadExt::new(crate::field::rat(1, 2), crate::field::rat(1, 2), 5);
        let m = ExactMatrix::from_rows(vec![
            vec![phi.clone(), QuadExt::one()],
            vec![QuadExt::one(), phi.clone() - QuadExt::one()],
        ])
        .unwrap();
        // φ(φ−1) = 1
        assert_eq!(m.determinant().unwrap(), QuadExt::zero());
        assert_eq!(m.rank(), 1);
        assert_eq!(m.radicand(), 5);
        let mixed = ExactMatrix::from_rows(vec![vec![QuadExt::sqrt_of(2), QuadExt::sqrt_of(3)]]);
        assert!(matches!(mixed, Err(Error::MixedRadicands(2, 3))));
    }

    #[test]
    fn nullspace_is_annihilated() {
        let m = ExactMatrix::from_i64(&[vec![1, 2, 3, 4], vec![2, 4, 6, 8], vec![1, 0, 1, 0]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        for v in ns {
            let col = ExactMatrix::from_rows(v.into_iter().map(|x| vec![x]).collect()).unwrap();
            let prod = m.matmul(&col).unwrap();
            assert!((0..3).all(|i| prod.get(i, 0).is_zero()));
        }
    }
}
