// Copyright 2026 The Bellchain Developers
// SPDX-License-Identifier: Apache-2.0

//! Real symmetric eigensolvers.
//!
//! Two entry points share one implicit QL iteration:
//!
//! - [`tridiagonal_eigen`] diagonalizes a symmetric tridiagonal matrix while
//!   accumulating the eigenvector matrix on an arbitrary block of rows. Passing
//!   the identity gives full eigenvectors; passing a few rows of the identity
//!   gives just those components at `O(n)` cost per rotation.
//! - [`symmetric_eigen`] reduces a dense symmetric matrix with Householder
//!   reflections first.
//!
//! Eigenvalues are returned in ascending order with eigenvector columns
//! permuted to match.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;

const MAX_SWEEPS_PER_EIGENVALUE: usize = 60;

/// Dense row-major matrix with `rows × cols` entries.
#[derive(Debug, Clone, PartialEq)]
pub struct RowBlock {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<f64>,
}

impl RowBlock {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1.0;
        }
        m
    }

    /// Rows `which` of the `n × n` identity.
    pub fn identity_rows(n: usize, which: &[usize]) -> Self {
        let mut m = Self::zeros(which.len(), n);
        for (r, &i) in which.iter().enumerate() {
            m.data[r * n + i] = 1.0;
        }
        m
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn row(&self, r: usize) -> &[f64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }
}

/// Eigenvalues (ascending) and the accumulated eigenvector block.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigen {
    pub values: Vec<f64>,
    /// `vectors.get(r, k)` is component `r` of eigenvector `k`, where `r`
    /// ranges over whatever rows were tracked.
    pub vectors: RowBlock,
}

/// Diagonalizes the symmetric tridiagonal matrix with diagonal `diag` and
/// off-diagonal `off` (`off[i]` couples `i` and `i + 1`).
///
/// `z` holds the rows to transform; on return column `k` of `z` is the
/// corresponding rows of `Q·v_k` where `Q` was the initial content. Start from
/// identity rows to get plain eigenvector components.
pub fn tridiagonal_eigen(diag: &[f64], off: &[f64], mut z: RowBlock) -> Result<Eigen> {
    let n = diag.len();
    if off.len() + 1 != n.max(1) {
        return Err(Error::DimensionMismatch { expected: n.saturating_sub(1), got: off.len() });
    }
    if z.cols != n {
        return Err(Error::DimensionMismatch { expected: n, got: z.cols });
    }
    let mut d = diag.to_vec();
    let mut e = vec![0.0; n];
    e[..off.len()].copy_from_slice(off);
    ql_implicit(&mut d, &mut e, &mut z)?;
    Ok(sort_ascending(d, z))
}

/// Implicit QL with Wilkinson shifts on `d` (diagonal) and `e` (`e[i]` couples
/// `i`, `i+1`; `e[n-1]` is scratch). Rotations are applied to the columns of `z`.
fn ql_implicit(d: &mut [f64], e: &mut [f64], z: &mut RowBlock) -> Result<()> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    let anorm = (0..n)
        .map(|i| math::abs(d[i]) + math::abs(e[i]) + if i > 0 { math::abs(e[i - 1]) } else { 0.0 })
        .fold(0.0, f64::max);
    let tol = f64::EPSILON * anorm;
    let rows = z.rows;
    let cols = z.cols;

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = math::abs(d[m]) + math::abs(d[m + 1]);
                if math::abs(e[m]) <= f64::EPSILON * dd || math::abs(e[m]) <= tol {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_SWEEPS_PER_EIGENVALUE {
                return Err(Error::NoConvergence);
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = math::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + if g >= 0.0 { math::abs(r) } else { -math::abs(r) });
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = math::hypot(f, g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                for k in 0..rows {
                    let row = &mut z.data[k * cols..(k + 1) * cols];
                    let zi = row[i];
                    let zi1 = row[i + 1];
                    row[i + 1] = s * zi + c * zi1;
                    row[i] = c * zi - s * zi1;
                }
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

fn sort_ascending(d: Vec<f64>, z: RowBlock) -> Eigen {
    let n = d.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    let values = order.iter().map(|&k| d[k]).collect();
    let mut vectors = RowBlock::zeros(z.rows, n);
    for r in 0..z.rows {
        for (new, &old) in order.iter().enumerate() {
            vectors.data[r * n + new] = z.data[r * n + old];
        }
    }
    Eigen { values, vectors }
}

/// Full eigendecomposition of a dense symmetric `n × n` matrix (row-major).
///
/// Symmetry is checked to a relative tolerance of `1e-12`; only the lower
/// triangle is used afterwards.
pub fn symmetric_eigen(matrix: &[f64], n: usize) -> Result<Eigen> {
    if matrix.len() != n * n {
        return Err(Error::DimensionMismatch { expected: n * n, got: matrix.len() });
    }
    let scale = matrix.iter().fold(0.0f64, |m, v| m.max(math::abs(*v)));
    for i in 0..n {
        for j in 0..i {
            if math::abs(matrix[i * n + j] - matrix[j * n + i]) > 1e-12 * scale.max(1.0) {
                return Err(Error::NotSymmetric { row: i, col: j });
            }
        }
    }
    let (d, off, q) = householder_tridiagonal(matrix, n);
    tridiagonal_eigen(&d, &off, q)
}

/// Householder reduction `A = Q T Qᵀ`. Returns the diagonal and off-diagonal of
/// `T` and `Q` as a row block (`Q[i][k]`).
pub fn householder_tridiagonal(matrix: &[f64], n: usize) -> (Vec<f64>, Vec<f64>, RowBlock) {
    if n == 0 {
        return (Vec::new(), Vec::new(), RowBlock::zeros(0, 0));
    }
    let mut a = matrix.to_vec();
    let idx = |i: usize, j: usize| i * n + j;
    let mut d = vec![0.0; n];
    // e[i] couples i - 1 and i.
    let mut e = vec![0.0; n];

    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = 0.0;
        if l > 0 {
            let scale: f64 = (0..=l).map(|k| math::abs(a[idx(i, k)])).sum();
            if scale == 0.0 {
                e[i] = a[idx(i, l)];
            } else {
                for k in 0..=l {
                    a[idx(i, k)] /= scale;
                    h += a[idx(i, k)] * a[idx(i, k)];
                }
                let f = a[idx(i, l)];
                let g = if f >= 0.0 { -math::sqrt(h) } else { math::sqrt(h) };
                e[i] = scale * g;
                h -= f * g;
                a[idx(i, l)] = f - g;
                let mut f = 0.0;
                for j in 0..=l {
                    a[idx(j, i)] = a[idx(i, j)] / h;
                    let mut g = 0.0;
                    for k in 0..=j {
                        g += a[idx(j, k)] * a[idx(i, k)];
                    }
                    for k in j + 1..=l {
                        g += a[idx(k, j)] * a[idx(i, k)];
                    }
                    e[j] = g / h;
                    f += e[j] * a[idx(i, j)];
                }
                let hh = f / (h + h);
                for j in 0..=l {
                    let f = a[idx(i, j)];
                    let g = e[j] - hh * f;
                    e[j] = g;
                    for k in 0..=j {
                        a[idx(j, k)] -= f * e[k] + g * a[idx(i, k)];
                    }
                }
            }
        } else {
            e[i] = a[idx(i, l)];
        }
        d[i] = h;
    }
    d[0] = 0.0;
    e[0] = 0.0;
    for i in 0..n {
        if d[i] != 0.0 {
            for j in 0..i {
                let mut g = 0.0;
                for k in 0..i {
                    g += a[idx(i, k)] * a[idx(k, j)];
                }
                for k in 0..i {
                    a[idx(k, j)] -= g * a[idx(k, i)];
                }
            }
        }
        d[i] = a[idx(i, i)];
        a[idx(i, i)] = 1.0;
        for j in 0..i {
            a[idx(j, i)] = 0.0;
            a[idx(i, j)] = 0.0;
        }
    }
    let off = e[1..].to_vec();
    (d, off, RowBlock { rows: n, cols: n, data: a })
}
