//! Riemann curvature and Ricci tensor of a metric, with the convention
//! R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_{[X,Y]} Z.

use super::fields::VectorField;
use super::metric::MetricTensor;
use crate::scalar::ScalarExpr;

/// Curvature components `riem[i][j][k][l]`: the l-th component of
/// R(d_i, d_j) d_k. Ricci is the trace over the first argument,
/// `ricci[j][k] = sum_l riem[l][j][k][l]`.
#[derive(Debug, Clone)]
pub struct CurvatureTensor {
    pub riem: Vec<Vec<Vec<Vec<ScalarExpr>>>>,
    pub ricci: Vec<Vec<ScalarExpr>>,
}

impl CurvatureTensor {
    pub fn from_metric(g: &MetricTensor) -> CurvatureTensor {
        let m = g.dim();
        let chart = g.chart();
        let gamma = g.christoffel();
        let zero = ScalarExpr::zero(chart);
        let mut riem = vec![vec![vec![vec![zero.clone(); m]; m]; m]; m];
        for i in 0..m {
            for j in 0..i {
                for k in 0..m {
                    for l in 0..m {
                        // d_i Gamma^l_{jk} - d_j Gamma^l_{ik}
                        //   + Gamma^m_{jk} Gamma^l_{im} - Gamma^m_{ik} Gamma^l_{jm}
                        let mut acc = gamma[l][j][k]
                            .derivative(i)
                            .sub(&gamma[l][i][k].derivative(j));
                        for n in 0..m {
                            if !gamma[n][j][k].is_zero() && !gamma[l][i][n].is_zero() {
                                acc = acc.add(&gamma[n][j][k].mul(&gamma[l][i][n]));
                            }
                            if !gamma[n][i][k].is_zero() && !gamma[l][j][n].is_zero() {
                                acc = acc.sub(&gamma[n][i][k].mul(&gamma[l][j][n]));
                            }
                        }
                        riem[j][i][k][l] = acc.neg();
                        riem[i][j][k][l] = acc;
                    }
                }
            }
        }
        let mut ricci = vec![vec![zero; m]; m];
        for j in 0..m {
            for k in 0..m {
                let mut acc = ScalarExpr::zero(chart);
                for l in 0..m {
                    acc = acc.add(&riem[l][j][k][l]);
                }
                ricci[j][k] = acc;
            }
        }
        CurvatureTensor { riem, ricci }
    }

    pub fn dim(&self) -> usize {
        self.riem.len()
    }

    /// R(X,Y)Z for arbitrary fields, by tensor contraction.
    pub fn apply(&self, x: &[ScalarExpr], y: &[ScalarExpr], z: &[ScalarExpr]) -> VectorField {
        let m = self.dim();
        let chart = x[0].chart();
        (0..m)
            .map(|l| {
                let mut acc = ScalarExpr::zero(chart);
                for i in 0..m {
                    if x[i].is_zero() {
                        continue;
                    }
                    for j in 0..m {
                        if y[j].is_zero() {
                            continue;
                        }
                        let xy = x[i].mul(&y[j]);
                        for k in 0..m {
                            if z[k].is_zero() || self.riem[i][j][k][l].is_zero() {
                                continue;
                            }
                            acc = acc.add(&xy.mul(&z[k]).mul(&self.riem[i][j][k][l]));
                        }
                    }
                }
                acc
            })
            .collect()
    }

    /// Ricci(Y,Z) for arbitrary fields.
    pub fn ricci_apply(&self, y: &[ScalarExpr], z: &[ScalarExpr]) -> ScalarExpr {
        let m = self.dim();
        let chart = y[0].chart();
        let mut acc = ScalarExpr::zero(chart);
        for j in 0..m {
            if y[j].is_zero() {
                continue;
            }
            for k in 0..m {
                if z[k].is_zero() || self.ricci[j][k].is_zero() {
                    continue;
                }
                acc = acc.add(&y[j].mul(&z[k]).mul(&self.ricci[j][k]));
            }
        }
        acc
    }

    /// Residuals of the antisymmetry R(X,Y)Z = -R(Y,X)Z on the frame.
    pub fn antisymmetry_residuals(&self) -> Vec<ScalarExpr> {
        let m = self.dim();
        let mut out = Vec::new();
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    for l in 0..m {
                        out.push(self.riem[i][j][k][l].add(&self.riem[j][i][k][l]));
                    }
                }
            }
        }
        out
    }

    /// Residuals of the first Bianchi identity
    /// R(X,Y)Z + R(Y,Z)X + R(Z,X)Y = 0 on the frame.
    pub fn first_bianchi_residuals(&self) -> Vec<ScalarExpr> {
        let m = self.dim();
        let mut out = Vec::new();
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    for l in 0..m {
                        out.push(
                            self.riem[i][j][k][l]
                                .add(&self.riem[j][k][i][l])
                                .add(&self.riem[k][i][j][l]),
                        );
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use num::BigRational;

    use super::*;
    use crate::scalar::{parse_expression, Chart, ExactMatrix};
    use crate::tensor::fields::basis_field;
    use crate::tensor::metric::MetricTensor;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn metric(chart: &Arc<Chart>, rows: &[&[&str]]) -> MetricTensor {
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

    fn hyperbolic_3d() -> (Arc<Chart>, MetricTensor) {
        let c = Arc::new(Chart::new(vec!["x", "y", "z"], vec![("e2z", "z", rat(2))]).unwrap());
        let g = metric(&c, &[&["e2z", "0", "0"], &["0", "-e2z", "0"], &["0", "0", "1"]]);
        (c, g)
    }

    #[test]
    fn flat_metric_has_zero_curvature() {
        let c = Arc::new(Chart::new(vec!["x", "y"], vec![]).unwrap());
        let g = metric(&c, &[&["-1", "0"], &["0", "1"]]);
        let r = g.curvature();
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        assert!(r.riem[i][j][k][l].is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn constant_negative_curvature_plane_section() {
        // R(dx,dz)dz = -dx on the warped product metric
        let (c, g) = hyperbolic_3d();
        let r = g.curvature();
        let dx = basis_field(&c, 3, 0);
        let dz = basis_field(&c, 3, 2);
        let v = r.apply(&dx, &dz, &dz);
        assert_eq!(v[0], ScalarExpr::from_int(&c, -1));
        assert!(v[1].is_zero());
        assert!(v[2].is_zero());
    }

    #[test]
    fn ricci_of_space_form() {
        // constant curvature -1 in dimension 3: Ricci = -2 g
        let (c, g) = hyperbolic_3d();
        let r = g.curvature();
        for j in 0..3 {
            for k in 0..3 {
                let expected = g.entry(j, k).scale(&rat(-2));
                assert_eq!(r.ricci[j][k], expected, "ricci {j}{k}");
            }
        }
        let xi = basis_field(&c, 3, 2);
        assert_eq!(r.ricci_apply(&xi, &xi), ScalarExpr::from_int(&c, -2));
    }

    #[test]
    fn symmetries_hold_symbolically() {
        let (_, g) = hyperbolic_3d();
        let r = g.curvature();
        assert!(r.antisymmetry_residuals().iter().all(ScalarExpr::is_zero));
        assert!(r.first_bianchi_residuals().iter().all(ScalarExpr::is_zero));
    }
}
