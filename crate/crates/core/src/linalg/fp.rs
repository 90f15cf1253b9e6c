use std::fmt;

use super::{Prime, Subspace};
use crate::error::{guard, Error, Result};

/// A dense matrix over `F_p`, stored row-major.
///
/// Matrices act on column vectors: a map `k^n -> k^m` is an `m x n` matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    p: Prime,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Output of [`FpMatrix::solve`]: one particular solution together with the
/// kernel of the coefficient matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub particular: Vec<u32>,
    pub kernel: Subspace,
}

impl FpMatrix {
    pub fn zero(p: Prime, rows: usize, cols: usize) -> FpMatrix {
        FpMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: Prime, n: usize) -> FpMatrix {
        let mut m = FpMatrix::zero(p, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % p.get();
        }
        m
    }

    /// Builds a matrix from rows, reducing every entry mod `p`.
    pub fn from_rows(p: Prime, rows: usize, cols: usize, entries: &[Vec<u64>]) -> Result<FpMatrix> {
        if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!("expected {rows}x{cols} entries")));
        }
        let data = entries.iter().flat_map(|r| r.iter().map(|&x| p.reduce(x))).collect();
        Ok(FpMatrix { p, rows, cols, data })
    }

    /// Builds a matrix from a flat row-major list, reducing mod `p`.
    pub fn from_flat(p: Prime, rows: usize, cols: usize, entries: &[u64]) -> Result<FpMatrix> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(FpMatrix {
            p,
            rows,
            cols,
            data: entries.iter().map(|&x| p.reduce(x)).collect(),
        })
    }

    /// The matrix whose columns are the given vectors.
    pub fn from_columns(p: Prime, rows: usize, columns: &[Vec<u32>]) -> FpMatrix {
        let mut m = FpMatrix::zero(p, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, &x) in c.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn from_fn(p: Prime, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u64) -> FpMatrix {
        let mut m = FpMatrix::zero(p, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.data[i * cols + j] = p.reduce(f(i, j));
            }
        }
        m
    }

    #[inline]
    pub fn prime(&self) -> Prime {
        self.p
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: u32) {
        self.data[i * self.cols + j] = x % self.p.get();
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u32>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn entries(&self) -> &[u32] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> FpMatrix {
        FpMatrix::from_fn(self.p, self.cols, self.rows, |i, j| self.get(j, i) as u64)
    }

    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols, "vector length");
        let p = self.p.as_u64();
        (0..self.rows)
            .map(|i| {
                let acc = self
                    .row(i)
                    .iter()
                    .zip(v)
                    .fold(0u64, |acc, (&a, &b)| (acc + a as u64 * b as u64) % p);
                acc as u32
            })
            .collect()
    }

    pub fn mul(&self, other: &FpMatrix) -> Result<FpMatrix> {
        self.check_prime(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let p = self.p.as_u64();
        let mut out = FpMatrix::zero(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = ((out.data[idx] as u64 + a * other.get(k, j) as u64) % p) as u32;
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &FpMatrix) -> Result<FpMatrix> {
        self.check_prime(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch("matrix sum".into()));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| self.p.add(a, b))
            .collect();
        Ok(FpMatrix { data, ..*self })
    }

    pub fn scale(&self, c: u32) -> FpMatrix {
        FpMatrix {
            data: self.data.iter().map(|&a| self.p.mul(a, c)).collect(),
            ..*self
        }
    }

    fn check_prime(&self, other: &FpMatrix) -> Result<()> {
        if self.p != other.p {
            Err(Error::ModulusMismatch {
                left: self.p.as_u64(),
                right: other.p.as_u64(),
            })
        } else {
            Ok(())
        }
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (FpMatrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place(self.cols);
        (m, pivots)
    }

    /// Row-reduces in place, only pivoting on the first `pivot_cols` columns.
    pub(crate) fn rref_in_place(&mut self, pivot_cols: usize) -> Vec<usize> {
        let p = self.p;
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..pivot_cols.min(cols) {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    self.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = p.inv(self.get(r, c));
            for j in c..cols {
                let idx = r * cols + j;
                self.data[idx] = p.mul(self.data[idx], inv);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c);
                if f == 0 {
                    continue;
                }
                for j in c..cols {
                    let sub = p.mul(f, self.data[r * cols + j]);
                    let idx = i * cols + j;
                    self.data[idx] = p.sub(self.data[idx], sub);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn kernel(&self) -> Subspace {
        let (r, pivots) = self.rref();
        kernel_from_rref(&r, &pivots, self.cols)
    }

    pub fn column_space(&self) -> Subspace {
        Subspace::span(self.p, self.rows, &self.columns()).expect("columns have matching length")
    }

    /// Solves `A x = b`; `Ok(None)` when the system is inconsistent.
    ///
    /// The particular solution sets every free variable to zero, so it is a
    /// deterministic function of `A` and `b`.
    pub fn solve(&self, b: &[u32]) -> Result<Option<Solution>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let n = self.cols;
        let mut aug = FpMatrix::zero(self.p, self.rows, n + 1);
        for i in 0..self.rows {
            for j in 0..n {
                aug.data[i * (n + 1) + j] = self.get(i, j);
            }
            aug.data[i * (n + 1) + n] = b[i] % self.p.get();
        }
        let pivots = aug.rref_in_place(n + 1);
        if pivots.last() == Some(&n) {
            return Ok(None);
        }
        let mut x = vec![0u32; n];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.get(r, n);
        }
        let kernel = kernel_from_rref(&aug, &pivots, n);
        Ok(Some(Solution { particular: x, kernel }))
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(p: Prime, cols: usize, parts: &[&FpMatrix]) -> FpMatrix {
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for m in parts {
            assert_eq!(m.cols, cols, "vstack column count");
            data.extend_from_slice(&m.data);
        }
        FpMatrix { p, rows, cols, data }
    }

    /// Block-diagonal sum.
    pub fn block_diag(p: Prime, parts: &[&FpMatrix]) -> FpMatrix {
        let rows = parts.iter().map(|m| m.rows).sum();
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = FpMatrix::zero(p, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for m in parts {
            for i in 0..m.rows {
                for j in 0..m.cols {
                    out.data[(r0 + i) * cols + c0 + j] = m.get(i, j);
                }
            }
            r0 += m.rows;
            c0 += m.cols;
        }
        out
    }

    /// Inverse of a square matrix, if it is invertible.
    pub fn inverse(&self) -> Option<FpMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = FpMatrix::zero(self.p, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.data[i * 2 * n + j] = self.get(i, j);
            }
            aug.data[i * 2 * n + n + i] = 1 % self.p.get();
        }
        let pivots = aug.rref_in_place(n);
        if pivots.len() < n {
            return None;
        }
        Some(FpMatrix::from_fn(self.p, n, n, |i, j| aug.get(i, n + j) as u64))
    }
}

fn kernel_from_rref(r: &FpMatrix, pivots: &[usize], n: usize) -> Subspace {
    let p = r.p;
    let mut is_pivot = vec![false; n];
    for &c in pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for f in (0..n).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0u32; n];
        v[f] = 1;
        for (row, &c) in pivots.iter().enumerate() {
            v[c] = p.neg(r.get(row, f));
        }
        basis.push(v);
    }
    Subspace::span(p, n, &basis).expect("kernel vectors have ambient length")
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FpMatrix(p={}, {}x{}, [", self.p, self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
        }
        write!(f, "])")
    }
}

/// Every vector of `F_p^n`, in lexicographic order; refuses ambient sets
/// above the enumeration limit.
pub fn enumerate_vectors(p: Prime, n: usize) -> Result<impl Iterator<Item = Vec<u32>>> {
    let size = (p.as_u64() as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    guard(format_args!("F_{p}^{n}"), size)?;
    let q = p.get();
    Ok((0..size as u64).map(move |mut k| {
        let mut v = vec![0u32; n];
        for slot in v.iter_mut().rev() {
            *slot = (k % q as u64) as u32;
            k /= q as u64;
        }
        v
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn identity_solve() {
        let a = FpMatrix::identity(p(2), 2);
        let sol = a.solve(&[1, 0]).unwrap().unwrap();
        assert_eq!(sol.particular, vec![1, 0]);
        assert_eq!(sol.kernel.dim(), 0);
    }

    #[test]
    fn zero_map_misses_one() {
        let a = FpMatrix::zero(p(3), 1, 1);
        assert_eq!(a.solve(&[1]).unwrap(), None);
    }

    #[test]
    fn sum_functional_over_f2() {
        // Enumerating F_2^2: (0,0) and (1,1) solve x + y = 0.
        let a = FpMatrix::from_flat(p(2), 1, 2, &[1, 1]).unwrap();
        let sols: Vec<_> = enumerate_vectors(p(2), 2)
            .unwrap()
            .filter(|v| a.apply(v) == vec![0])
            .collect();
        assert_eq!(sols, vec![vec![0, 0], vec![1, 1]]);
        let sol = a.solve(&[0]).unwrap().unwrap();
        assert_eq!(sol.particular, vec![0, 0]);
        assert_eq!(sol.kernel.basis(), &[vec![1, 1]]);
    }

    #[test]
    fn solve_rejects_bad_shapes() {
        let a = FpMatrix::identity(p(5), 2);
        assert!(matches!(a.solve(&[1]), Err(Error::DimensionMismatch(_))));
        let b = FpMatrix::identity(p(3), 2);
        assert!(matches!(a.mul(&b), Err(Error::ModulusMismatch { .. })));
    }

    #[test]
    fn inverse_roundtrip() {
        let a = FpMatrix::from_flat(p(5), 2, 2, &[1, 2, 3, 4]).unwrap();
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), FpMatrix::identity(p(5), 2));
        let singular = FpMatrix::from_flat(p(5), 2, 2, &[1, 2, 2, 4]).unwrap();
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn enumeration_guard() {
        assert!(enumerate_vectors(p(2), 19).is_ok());
        assert!(matches!(enumerate_vectors(p(2), 21), Err(Error::SizeGuard { .. })));
    }
}
