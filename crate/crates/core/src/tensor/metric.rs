//! Semi-Riemannian metrics on a chart: exact inverse, Levi-Civita
//! connection coefficients, and the signature index at a rational point.

use std::sync::{Arc, OnceLock};

use num::{BigRational, One, Signed, Zero};
use thiserror::Error;

use super::curvature::CurvatureTensor;
use super::fields::VectorField;
use crate::scalar::{Chart, ExactMatrix, ScalarExpr};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MetricError {
    #[error("metric matrix must be {0}x{0}")]
    WrongShape(usize),
    #[error("metric matrix is not symmetric")]
    NotSymmetric,
    #[error("metric is degenerate: determinant is the zero expression")]
    Degenerate,
    #[error("metric is degenerate at the base point")]
    DegenerateAtPoint,
    #[error("base point has wrong dimension")]
    BadPoint,
    #[error(
        "generator `{0}` takes an irrational value at the base point; \
         choose a base point where its base coordinate vanishes"
    )]
    GeneratorAtPoint(String),
}

/// A nondegenerate symmetric metric with lazily computed inverse,
/// connection coefficients and curvature. The caches are populated at most
/// once; concurrent readers observe a single computed value.
#[derive(Debug)]
pub struct MetricTensor {
    chart: Arc<Chart>,
    matrix: ExactMatrix,
    inverse: OnceLock<ExactMatrix>,
    christoffel: OnceLock<Vec<Vec<Vec<ScalarExpr>>>>,
    curvature: OnceLock<CurvatureTensor>,
}

impl MetricTensor {
    pub fn new(chart: Arc<Chart>, matrix: ExactMatrix) -> Result<MetricTensor, MetricError> {
        let m = chart.dim();
        if matrix.rows() != m || matrix.cols() != m {
            return Err(MetricError::WrongShape(m));
        }
        if !matrix.is_symmetric() {
            return Err(MetricError::NotSymmetric);
        }
        if matrix.determinant().is_zero() {
            return Err(MetricError::Degenerate);
        }
        Ok(MetricTensor {
            chart,
            matrix,
            inverse: OnceLock::new(),
            christoffel: OnceLock::new(),
            curvature: OnceLock::new(),
        })
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> &ScalarExpr {
        self.matrix.get(i, j)
    }

    pub fn inverse(&self) -> &ExactMatrix {
        self.inverse.get_or_init(|| {
            self.matrix
                .inverse()
                .expect("nondegenerate metric has an inverse")
        })
    }

    /// Inner product of two vector fields.
    pub fn inner(&self, x: &[ScalarExpr], y: &[ScalarExpr]) -> ScalarExpr {
        let mut acc = ScalarExpr::zero(&self.chart);
        for i in 0..self.dim() {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..self.dim() {
                if y[j].is_zero() {
                    continue;
                }
                acc = acc.add(&x[i].mul(&y[j]).mul(self.entry(i, j)));
            }
        }
        acc
    }

    /// The one-form g(X, .) of a vector field.
    pub fn lower(&self, x: &[ScalarExpr]) -> Vec<ScalarExpr> {
        self.matrix.mul_vector(x)
    }

    pub fn raise(&self, form: &[ScalarExpr]) -> Vec<ScalarExpr> {
        self.inverse().mul_vector(form)
    }

    /// Connection coefficients of the Levi-Civita connection,
    /// `coeff[k][i][j]` with lower pair symmetric.
    pub fn christoffel(&self) -> &Vec<Vec<Vec<ScalarExpr>>> {
        self.christoffel.get_or_init(|| {
            let m = self.dim();
            let inv = self.inverse();
            let half = ScalarExpr::constant(&self.chart, BigRational::new(1.into(), 2.into()));
            // d_i g_{jl}
            let mut dg = vec![vec![vec![ScalarExpr::zero(&self.chart); m]; m]; m];
            for i in 0..m {
                for j in 0..m {
                    for l in 0..m {
                        dg[i][j][l] = self.entry(j, l).derivative(i);
                    }
                }
            }
            let mut gamma = vec![vec![vec![ScalarExpr::zero(&self.chart); m]; m]; m];
            for k in 0..m {
                for i in 0..m {
                    for j in 0..=i {
                        let mut acc = ScalarExpr::zero(&self.chart);
                        for l in 0..m {
                            if inv.get(k, l).is_zero() {
                                continue;
                            }
                            let sum = dg[i][j][l].add(&dg[j][i][l]).sub(&dg[l][i][j]);
                            acc = acc.add(&inv.get(k, l).mul(&sum));
                        }
                        let v = half.mul(&acc);
                        gamma[k][i][j] = v.clone();
                        gamma[k][j][i] = v;
                    }
                }
            }
            gamma
        })
    }

    /// Covariant derivative of a vector field along another,
    /// (nabla_X Y)^k = X^i (d_i Y^k + Gamma^k_{il} Y^l).
    pub fn covariant_derivative(&self, x: &[ScalarExpr], y: &[ScalarExpr]) -> VectorField {
        let m = self.dim();
        let gamma = self.christoffel();
        (0..m)
            .map(|k| {
                let mut acc = ScalarExpr::zero(&self.chart);
                for i in 0..m {
                    if x[i].is_zero() {
                        continue;
                    }
                    let mut inner = y[k].derivative(i);
                    for l in 0..m {
                        if !y[l].is_zero() && !gamma[k][i][l].is_zero() {
                            inner = inner.add(&gamma[k][i][l].mul(&y[l]));
                        }
                    }
                    acc = acc.add(&x[i].mul(&inner));
                }
                acc
            })
            .collect()
    }

    pub fn curvature(&self) -> &CurvatureTensor {
        self.curvature
            .get_or_init(|| CurvatureTensor::from_metric(self))
    }

    /// Number of negative eigenvalues of the metric at a rational point,
    /// by congruence diagonalization (Sylvester's law with symmetric
    /// pivoting when a diagonal entry vanishes). Exponential generators
    /// must evaluate rationally, which pins their base coordinate to zero.
    pub fn index_at(&self, point: &[BigRational]) -> Result<usize, MetricError> {
        if point.len() != self.dim() {
            return Err(MetricError::BadPoint);
        }
        let mut values = point.to_vec();
        for gen in self.chart.generators() {
            if !point[gen.base].is_zero() {
                return Err(MetricError::GeneratorAtPoint(gen.name.clone()));
            }
            values.push(BigRational::one());
        }
        let m = self.dim();
        let mut a = vec![vec![BigRational::zero(); m]; m];
        for i in 0..m {
            for j in 0..m {
                a[i][j] = self
                    .entry(i, j)
                    .eval_exact(&values)
                    .map_err(|_| MetricError::DegenerateAtPoint)?;
            }
        }
        signature_negatives(a).ok_or(MetricError::DegenerateAtPoint)
    }
}

/// Diagonalizes a symmetric rational matrix by congruence and counts
/// negative diagonal entries; `None` when the form is degenerate.
fn signature_negatives(mut a: Vec<Vec<BigRational>>) -> Option<usize> {
    let n = a.len();
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut negatives = 0;
    while !remaining.is_empty() {
        let pivot = remaining.iter().copied().find(|&i| !a[i][i].is_zero());
        let k = match pivot {
            Some(k) => k,
            None => {
                // all remaining diagonal entries vanish; bring a nonzero
                // off-diagonal pair onto the diagonal by the congruence
                // row_i += row_j, col_i += col_j
                let mut found = None;
                'search: for (p, &i) in remaining.iter().enumerate() {
                    for &j in &remaining[p + 1..] {
                        if !a[i][j].is_zero() {
                            found = Some((i, j));
                            break 'search;
                        }
                    }
                }
                let (i, j) = found?; // fully zero block: degenerate
                for c in 0..n {
                    let v = &a[i][c] + &a[j][c];
                    a[i][c] = v;
                }
                for r in 0..n {
                    let v = &a[r][i] + &a[r][j];
                    a[r][i] = v;
                }
                i
            }
        };
        if a[k][k].is_negative() {
            negatives += 1;
        }
        let pivot_value = a[k][k].clone();
        let others: Vec<usize> = remaining.iter().copied().filter(|&i| i != k).collect();
        for i in others {
            if a[i][k].is_zero() {
                continue;
            }
            let factor = &a[i][k] / &pivot_value;
            for c in 0..n {
                let v = &a[i][c] - &factor * &a[k][c];
                a[i][c] = v;
            }
            for r in 0..n {
                let v = &a[r][i] - &factor * &a[r][k];
                a[r][i] = v;
            }
        }
        remaining.retain(|&i| i != k);
    }
    Some(negatives)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::parse_expression;

    pub(crate) fn metric_from_strs(chart: &Arc<Chart>, rows: &[&[&str]]) -> MetricTensor {
        let m = ExactMatrix::from_rows(
            chart,
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|s| parse_expression(chart, s).unwrap())
                        .collect()
                })
                .collect(),
        );
        MetricTensor::new(chart.clone(), m).unwrap()
    }

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn rejects_degenerate_and_asymmetric() {
        let c = Arc::new(Chart::new(vec!["x", "y"], vec![]).unwrap());
        let zero = ExactMatrix::zero(&c, 2, 2);
        assert_eq!(
            MetricTensor::new(c.clone(), zero).unwrap_err(),
            MetricError::Degenerate
        );
        let mut m = ExactMatrix::identity(&c, 2);
        m.set(0, 1, ScalarExpr::one(&c));
        assert_eq!(
            MetricTensor::new(c.clone(), m).unwrap_err(),
            MetricError::NotSymmetric
        );
    }

    #[test]
    fn constant_diagonal_metric_has_flat_connection() {
        let c = Arc::new(Chart::new(vec!["x", "y"], vec![]).unwrap());
        let g = metric_from_strs(&c, &[&["-1", "0"], &["0", "1"]]);
        let gamma = g.christoffel();
        for k in 0..2 {
            for i in 0..2 {
                for j in 0..2 {
                    assert!(gamma[k][i][j].is_zero());
                }
            }
        }
    }

    #[test]
    fn warped_plane_connection() {
        // g = e^{2z} dx^2 + dz^2: Gamma^x_{xz} = 1, Gamma^z_{xx} = -e^{2z}
        let c = Arc::new(Chart::new(vec!["x", "z"], vec![("e2z", "z", rat(2))]).unwrap());
        let g = metric_from_strs(&c, &[&["e2z", "0"], &["0", "1"]]);
        let gamma = g.christoffel();
        assert_eq!(gamma[0][0][1], ScalarExpr::one(&c));
        assert_eq!(gamma[0][1][0], ScalarExpr::one(&c));
        let e2z = parse_expression(&c, "e2z").unwrap();
        assert_eq!(gamma[1][0][0], e2z.neg());
        assert!(gamma[1][1][1].is_zero());
        assert!(gamma[0][0][0].is_zero());
    }

    #[test]
    fn metric_compatibility_and_torsion_freeness() {
        let c = Arc::new(Chart::new(vec!["x", "z"], vec![("e2z", "z", rat(2))]).unwrap());
        let g = metric_from_strs(&c, &[&["e2z", "x"], &["x", "1"]]);
        let gamma = g.christoffel();
        let m = 2;
        for k in 0..m {
            for i in 0..m {
                for j in 0..m {
                    assert_eq!(gamma[k][i][j], gamma[k][j][i]);
                }
            }
        }
        // d_k g_ij - Gamma^l_{ki} g_lj - Gamma^l_{kj} g_il = 0
        for k in 0..m {
            for i in 0..m {
                for j in 0..m {
                    let mut r = g.entry(i, j).derivative(k);
                    for l in 0..m {
                        r = r
                            .sub(&gamma[l][k][i].mul(g.entry(l, j)))
                            .sub(&gamma[l][k][j].mul(g.entry(i, l)));
                    }
                    assert!(r.is_zero(), "nonzero at {k}{i}{j}: {r}");
                }
            }
        }
    }

    #[test]
    fn signature_index_with_symmetric_pivot_fallback() {
        let c = Arc::new(Chart::new(vec!["x", "y"], vec![]).unwrap());
        let g = metric_from_strs(&c, &[&["0", "1"], &["1", "0"]]);
        // hyperbolic plane pairing: signature (+,-), index 1
        assert_eq!(g.index_at(&[rat(0), rat(0)]).unwrap(), 1);
        let g = metric_from_strs(&c, &[&["-1", "0"], &["0", "-1"]]);
        assert_eq!(g.index_at(&[rat(3), rat(5)]).unwrap(), 2);
    }

    #[test]
    fn index_requires_rational_generator_values() {
        let c = Arc::new(Chart::new(vec!["x", "z"], vec![("e2z", "z", rat(2))]).unwrap());
        let g = metric_from_strs(&c, &[&["e2z", "0"], &["0", "1"]]);
        assert_eq!(g.index_at(&[rat(1), rat(0)]).unwrap(), 0);
        assert_eq!(
            g.index_at(&[rat(0), rat(1)]).unwrap_err(),
            MetricError::GeneratorAtPoint("e2z".into())
        );
    }

    #[test]
    fn degenerate_point_detected() {
        let c = Arc::new(Chart::new(vec!["x", "y"], vec![]).unwrap());
        // determinant x^2 - ... nonzero as expression but zero at x=0
        let g = metric_from_strs(&c, &[&["x", "0"], &["0", "1"]]);
        assert_eq!(
            g.index_at(&[rat(0), rat(0)]).unwrap_err(),
            MetricError::DegenerateAtPoint
        );
        assert_eq!(g.index_at(&[rat(-1), rat(0)]).unwrap(), 1);
    }
}
