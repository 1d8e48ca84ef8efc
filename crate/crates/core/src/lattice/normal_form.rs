//! Exact determinant, Hermite normal form and Smith normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::IntMatrix;
use crate::error::{Error, Result};

/// Signed determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &IntMatrix) -> Result<BigInt> {
    if !m.is_square() {
        return Err(Error::InvalidMatrix(format!(
            "determinant of a non-square {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    let mut a = m.to_rows();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negate { -det } else { det })
}

/// Row-style Hermite normal form of the row lattice of a matrix: upper
/// echelon, positive pivots, entries above each pivot reduced into
/// `[0, pivot)`. Zero rows are dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermiteForm {
    cols: usize,
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl HermiteForm {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn to_matrix(&self) -> Option<IntMatrix> {
        (!self.rows.is_empty()).then(|| IntMatrix::from_rows(&self.rows).expect("rectangular"))
    }

    /// Canonical representative of `x` modulo the row lattice. For a full-rank
    /// square lattice, `x` is in the lattice iff the result is zero.
    pub fn reduce(&self, x: &[BigInt]) -> Vec<BigInt> {
        let mut x = x.to_vec();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let q = x[c].div_floor(&row[c]);
            if !q.is_zero() {
                for (xi, r) in x.iter_mut().zip(row) {
                    *xi -= &q * r;
                }
            }
        }
        x
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        x.len() == self.cols && self.reduce(x).iter().all(Zero::is_zero)
    }
}

pub fn hermite_normal_form(m: &IntMatrix) -> HermiteForm {
    let cols = m.cols();
    let mut a = m.to_rows();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        loop {
            let best = (r..a.len())
                .filter(|&i| !a[i][c].is_zero())
                .min_by(|&i, &j| a[i][c].abs().cmp(&a[j][c].abs()));
            let Some(best) = best else { break };
            a.swap(r, best);
            let mut clean = true;
            for i in r + 1..a.len() {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = a[i][c].div_floor(&a[r][c]);
                let pivot_row = a[r].clone();
                for (x, p) in a[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * p;
                }
                clean &= a[i][c].is_zero();
            }
            if clean {
                break;
            }
        }
        if a[r][c].is_zero() {
            continue;
        }
        if a[r][c].is_negative() {
            for x in a[r].iter_mut() {
                *x = -std::mem::take(x);
            }
        }
        for i in 0..r {
            let q = a[i][c].div_floor(&a[r][c]);
            if !q.is_zero() {
                let pivot_row = a[r].clone();
                for (x, p) in a[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    HermiteForm {
        cols,
        rows: a,
        pivots,
    }
}

/// `U A V = D` with `U`, `V` unimodular and `D` diagonal, non-negative,
/// each diagonal entry dividing the next.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SnfDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SnfDecomposition {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SnfDecomposition {
    let (m, n) = (a.rows(), a.cols());
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m).expect("non-empty");
    let mut v = IntMatrix::identity(n).expect("non-empty");

    for k in 0..m.min(n) {
        loop {
            // smallest non-zero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in k..m {
                for j in k..n {
                    if !d[(i, j)].is_zero()
                        && best.map_or(true, |(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return SnfDecomposition { u, d, v };
            };
            d.swap_rows(k, pi);
            u.swap_rows(k, pi);
            d.swap_cols(k, pj);
            v.swap_cols(k, pj);

            let mut clean = true;
            for i in k + 1..m {
                if !d[(i, k)].is_zero() {
                    let q = -d[(i, k)].div_floor(&d[(k, k)]);
                    d.add_row_multiple(i, k, &q);
                    u.add_row_multiple(i, k, &q);
                    clean &= d[(i, k)].is_zero();
                }
            }
            for j in k + 1..n {
                if !d[(k, j)].is_zero() {
                    let q = -d[(k, j)].div_floor(&d[(k, k)]);
                    d.add_col_multiple(j, k, &q);
                    v.add_col_multiple(j, k, &q);
                    clean &= d[(k, j)].is_zero();
                }
            }
            if !clean {
                continue;
            }
            // divisibility: fold an offending row into the pivot row and retry
            let offending =
                (k + 1..m).find(|&i| (k + 1..n).any(|j| !(&d[(i, j)] % &d[(k, k)]).is_zero()));
            match offending {
                Some(i) => {
                    let one = BigInt::one();
                    d.add_row_multiple(k, i, &one);
                    u.add_row_multiple(k, i, &one);
                }
                None => break,
            }
        }
        if d[(k, k)].is_negative() {
            d.negate_row(k);
            u.negate_row(k);
        }
    }
    SnfDecomposition { u, d, v }
}
