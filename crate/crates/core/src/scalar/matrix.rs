//! Exact linear algebra over the rational-function field.
//!
//! Elimination uses a fixed pivot rule — the first row with a nonzero entry
//! in the leftmost unresolved column — so ranks, nullspaces and solutions
//! are reproducible. Magnitude-based pivoting is meaningless over a
//! symbolic field.

use std::sync::Arc;

use super::chart::Chart;
use super::expr::ScalarExpr;

#[derive(Debug, Clone, PartialEq)]
pub struct ExactMatrix {
    chart: Arc<Chart>,
    rows: usize,
    cols: usize,
    data: Vec<ScalarExpr>,
}

impl ExactMatrix {
    pub fn from_fn(
        chart: &Arc<Chart>,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> ScalarExpr,
    ) -> ExactMatrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ExactMatrix {
            chart: chart.clone(),
            rows,
            cols,
            data,
        }
    }

    pub fn from_rows(chart: &Arc<Chart>, rows: Vec<Vec<ScalarExpr>>) -> ExactMatrix {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        ExactMatrix {
            chart: chart.clone(),
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn zero(chart: &Arc<Chart>, rows: usize, cols: usize) -> ExactMatrix {
        ExactMatrix::from_fn(chart, rows, cols, |_, _| ScalarExpr::zero(chart))
    }

    pub fn identity(chart: &Arc<Chart>, n: usize) -> ExactMatrix {
        ExactMatrix::from_fn(chart, n, n, |i, j| {
            if i == j {
                ScalarExpr::one(chart)
            } else {
                ScalarExpr::zero(chart)
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn get(&self, i: usize, j: usize) -> &ScalarExpr {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: ScalarExpr) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[ScalarExpr] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> ExactMatrix {
        ExactMatrix::from_fn(&self.chart, self.cols, self.rows, |i, j| {
            self.get(j, i).clone()
        })
    }

    pub fn mul(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.rows);
        ExactMatrix::from_fn(&self.chart, self.rows, other.cols, |i, j| {
            let mut acc = ScalarExpr::zero(&self.chart);
            for k in 0..self.cols {
                acc = acc.add(&self.get(i, k).mul(other.get(k, j)));
            }
            acc
        })
    }

    pub fn mul_vector(&self, v: &[ScalarExpr]) -> Vec<ScalarExpr> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = ScalarExpr::zero(&self.chart);
                for k in 0..self.cols {
                    acc = acc.add(&self.get(i, k).mul(&v[k]));
                }
                acc
            })
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows)
                .all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pivot_row) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            if pivot_row != row {
                for j in 0..m.cols {
                    m.data.swap(pivot_row * m.cols + j, row * m.cols + j);
                }
            }
            let inv = m.get(row, col).recip().expect("pivot is nonzero");
            for j in 0..m.cols {
                let v = m.get(row, j).mul(&inv);
                m.set(row, j, v);
            }
            for r in 0..m.rows {
                if r != row && !m.get(r, col).is_zero() {
                    let factor = m.get(r, col).clone();
                    for j in 0..m.cols {
                        let v = m.get(r, j).sub(&factor.mul(m.get(row, j)));
                        m.set(r, j, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Rank and a deterministic basis of the right nullspace.
    pub fn rank_nullspace(&self) -> (usize, Vec<Vec<ScalarExpr>>) {
        let (r, pivots) = self.rref();
        let rank = pivots.len();
        let mut basis = Vec::with_capacity(self.cols - rank);
        for free in 0..self.cols {
            if pivots.contains(&free) {
                continue;
            }
            let mut v = vec![ScalarExpr::zero(&self.chart); self.cols];
            v[free] = ScalarExpr::one(&self.chart);
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = r.get(i, free).neg();
            }
            basis.push(v);
        }
        (rank, basis)
    }

    pub fn nullspace(&self) -> Vec<Vec<ScalarExpr>> {
        self.rank_nullspace().1
    }

    /// A particular solution of `self * x = rhs`, free variables set to
    /// zero; `None` when the system is inconsistent.
    pub fn solve(&self, rhs: &[ScalarExpr]) -> Option<Vec<ScalarExpr>> {
        assert_eq!(rhs.len(), self.rows);
        let aug = ExactMatrix::from_fn(&self.chart, self.rows, self.cols + 1, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                rhs[i].clone()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![ScalarExpr::zero(&self.chart); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r.get(i, self.cols).clone();
        }
        Some(x)
    }

    pub fn determinant(&self) -> ScalarExpr {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let mut m = self.clone();
        let mut det = ScalarExpr::one(&self.chart);
        for col in 0..m.cols {
            let Some(pivot_row) = (col..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                return ScalarExpr::zero(&self.chart);
            };
            if pivot_row != col {
                for j in 0..m.cols {
                    m.data.swap(pivot_row * m.cols + j, col * m.cols + j);
                }
                det = det.neg();
            }
            let pivot = m.get(col, col).clone();
            det = det.mul(&pivot);
            let inv = pivot.recip().expect("pivot is nonzero");
            for r in col + 1..m.rows {
                if m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).mul(&inv);
                for j in col..m.cols {
                    let v = m.get(r, j).sub(&factor.mul(m.get(col, j)));
                    m.set(r, j, v);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<ExactMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.cols;
        let aug = ExactMatrix::from_fn(&self.chart, n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                ScalarExpr::one(&self.chart)
            } else {
                ScalarExpr::zero(&self.chart)
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(ExactMatrix::from_fn(&self.chart, n, n, |i, j| {
            r.get(i, n + j).clone()
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::chart::Chart;
    use crate::scalar::parse::parse_expression;

    fn chart() -> Arc<Chart> {
        Arc::new(Chart::new(vec!["x", "y"], vec![]).unwrap())
    }

    fn m(chart: &Arc<Chart>, rows: &[&[&str]]) -> ExactMatrix {
        ExactMatrix::from_rows(
            chart,
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|s| parse_expression(chart, s).unwrap())
                        .collect()
                })
                .collect(),
        )
    }

    #[test]
    fn identity_has_full_rank_empty_nullspace() {
        let c = chart();
        let id = ExactMatrix::identity(&c, 3);
        let (rank, null) = id.rank_nullspace();
        assert_eq!(rank, 3);
        assert!(null.is_empty());
        assert_eq!(id.determinant(), ScalarExpr::one(&c));
    }

    #[test]
    fn zero_matrix_nullspace_is_standard_basis() {
        let c = chart();
        let z = ExactMatrix::zero(&c, 2, 2);
        let (rank, null) = z.rank_nullspace();
        assert_eq!(rank, 0);
        assert_eq!(null.len(), 2);
        assert_eq!(null[0][0], ScalarExpr::one(&c));
        assert!(null[0][1].is_zero());
        assert!(null[1][0].is_zero());
        assert_eq!(null[1][1], ScalarExpr::one(&c));
    }

    #[test]
    fn degenerate_symbolic_gram_matrix() {
        // The Gram matrix of a lightlike frame: rank 3, radical direction e2.
        let c = chart();
        let gram = m(
            &c,
            &[
                &["-1", "0", "0", "-y"],
                &["0", "0", "0", "0"],
                &["0", "0", "1", "-y"],
                &["-y", "0", "-y", "1"],
            ],
        );
        let (rank, null) = gram.rank_nullspace();
        assert_eq!(rank, 3);
        assert_eq!(null.len(), 1);
        assert!(null[0][0].is_zero());
        assert_eq!(null[0][1], ScalarExpr::one(&c));
        assert!(null[0][2].is_zero());
        assert!(null[0][3].is_zero());
    }

    #[test]
    fn solve_and_inverse() {
        let c = chart();
        let a = m(&c, &[&["x", "1"], &["0", "y"]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), ExactMatrix::identity(&c, 2));
        let x = parse_expression(&c, "x").unwrap();
        let y = parse_expression(&c, "y").unwrap();
        let sol = a.solve(&[x.mul(&y), y.clone()]).unwrap();
        // x*col0 + col1 solves [x*y, y]: x*s0 + s1 = x*y, y*s1 = y
        assert_eq!(a.mul_vector(&sol), vec![x.mul(&y), y]);
        // inconsistent system
        let b = m(&c, &[&["1", "1"], &["1", "1"]]);
        assert!(b
            .solve(&[ScalarExpr::one(&c), ScalarExpr::zero(&c)])
            .is_none());
    }

    #[test]
    fn determinant_tracks_swaps() {
        let c = chart();
        let a = m(&c, &[&["0", "1"], &["1", "0"]]);
        assert_eq!(a.determinant(), ScalarExpr::from_int(&c, -1));
        let b = m(&c, &[&["x", "y"], &["y", "x"]]);
        let expected = parse_expression(&c, "x^2 - y^2").unwrap();
        assert_eq!(b.determinant(), expected);
    }
}
