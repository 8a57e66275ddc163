//! Almost paracontact metric structures on a chart: axiom verification,
//! the para-Sasakian decision, and the curvature identities that follow
//! from it.

use std::sync::Arc;

use num::BigRational;
use thiserror::Error;

use crate::report::{residual_check, AxiomReport, CheckRecord, CheckStatus, WitnessSearcher};
use crate::scalar::{Chart, ExactMatrix, ScalarExpr};
use crate::tensor::fields::{
    basis_field, field_add, field_scale, field_sub, pair, VectorField,
};
use crate::tensor::metric::MetricTensor;

/// Causal character of the structure vector field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Epsilon {
    Spacelike,
    Timelike,
}

impl Epsilon {
    pub fn value(&self) -> i64 {
        match self {
            Epsilon::Spacelike => 1,
            Epsilon::Timelike => -1,
        }
    }

    pub fn from_value(v: i64) -> Option<Epsilon> {
        match v {
            1 => Some(Epsilon::Spacelike),
            -1 => Some(Epsilon::Timelike),
            _ => None,
        }
    }

    pub fn expr(&self, chart: &Arc<Chart>) -> ScalarExpr {
        ScalarExpr::from_int(chart, self.value())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StructureError {
    #[error("tensor component count does not match the chart dimension")]
    Shape,
}

/// An (epsilon)-almost paracontact metric candidate `(phi, xi, eta, g,
/// epsilon)`. Construction checks shapes only, so invalid structures can be
/// built deliberately and fed to the verifiers.
#[derive(Debug)]
pub struct AmbientStructure {
    chart: Arc<Chart>,
    metric: MetricTensor,
    /// Column `j` holds the components of `phi(d_j)`.
    phi: ExactMatrix,
    xi: VectorField,
    eta: Vec<ScalarExpr>,
    epsilon: Epsilon,
}

pub const AMBIENT_CHECKS: &[(&str, &str)] = &[
    ("phi-square", "eq-phi-eta-xi"),
    ("eta-xi-pairing", "eq-eta-xi"),
    ("phi-xi", "eq-phi-xi"),
    ("eta-phi", "eq-eta-phi"),
    ("metric-phi-compatibility", "eq-metric-1"),
    ("fundamental-form-symmetry", "eq-metric-2"),
    ("metric-xi-pairing", "eq-metric-3"),
    ("xi-norm", "eq-g(xi,xi)"),
    ("fundamental-form-xi", "para6"),
    ("metric-index", ""),
];

pub const PARA_SASAKIAN_CHECKS: &[(&str, &str)] = &[
    ("covariant-phi", "para2"),
    ("xi-covariant-derivative", "para3"),
    ("eta-covariant-derivative", "para4"),
];

pub const CURVATURE_CHECKS: &[(&str, &str)] = &[
    ("curvature-antisymmetry", ""),
    ("bianchi-first", ""),
    ("curvature-xi", "para7"),
    ("curvature-xi-pairing", "para8"),
    ("eta-curvature", "para9"),
    ("curvature-xi-argument", "para10"),
    ("ricci-xi", "para11"),
];

impl AmbientStructure {
    pub fn new(
        metric: MetricTensor,
        phi: ExactMatrix,
        xi: VectorField,
        eta: Vec<ScalarExpr>,
        epsilon: Epsilon,
    ) -> Result<AmbientStructure, StructureError> {
        let chart = metric.chart().clone();
        let m = chart.dim();
        if phi.rows() != m || phi.cols() != m || xi.len() != m || eta.len() != m {
            return Err(StructureError::Shape);
        }
        Ok(AmbientStructure {
            chart,
            metric,
            phi,
            xi,
            eta,
            epsilon,
        })
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn metric(&self) -> &MetricTensor {
        &self.metric
    }

    pub fn phi(&self) -> &ExactMatrix {
        &self.phi
    }

    pub fn xi(&self) -> &VectorField {
        &self.xi
    }

    pub fn eta(&self) -> &[ScalarExpr] {
        &self.eta
    }

    pub fn epsilon(&self) -> Epsilon {
        self.epsilon
    }

    pub fn phi_apply(&self, v: &[ScalarExpr]) -> VectorField {
        self.phi.mul_vector(v)
    }

    pub fn eta_apply(&self, v: &[ScalarExpr]) -> ScalarExpr {
        pair(&self.eta, v)
    }

    /// The fundamental 2-form `Phi(X,Y) = g(X, phi Y)`.
    pub fn fundamental_form(&self, x: &[ScalarExpr], y: &[ScalarExpr]) -> ScalarExpr {
        self.metric.inner(x, &self.phi_apply(y))
    }

    /// `(nabla_X phi) Y = nabla_X (phi Y) - phi (nabla_X Y)`.
    pub fn cov_phi(&self, x: &[ScalarExpr], y: &[ScalarExpr]) -> VectorField {
        let first = self.metric.covariant_derivative(x, &self.phi_apply(y));
        let second = self.phi_apply(&self.metric.covariant_derivative(x, y));
        field_sub(&first, &second)
    }

    /// `(nabla_X eta) Y = X(eta(Y)) - eta(nabla_X Y)`.
    pub fn cov_eta(&self, x: &[ScalarExpr], y: &[ScalarExpr]) -> ScalarExpr {
        let first = crate::tensor::fields::directional_derivative(x, &self.eta_apply(y));
        first.sub(&self.eta_apply(&self.metric.covariant_derivative(x, y)))
    }

    /// Checks the defining axioms of an (epsilon)-almost paracontact metric
    /// structure, plus the index computation at the base point.
    pub fn verify_almost_paracontact(
        &self,
        base_point: &[BigRational],
        ws: &WitnessSearcher,
    ) -> AxiomReport {
        let m = self.chart.dim();
        let chart = &self.chart;
        let eps = self.epsilon.expr(chart);
        let mut report = AxiomReport::default();

        // phi^2 = I - eta (x) xi, columnwise on the frame
        let phi2 = self.phi.mul(&self.phi);
        let mut residuals = Vec::new();
        for j in 0..m {
            for i in 0..m {
                let id = if i == j {
                    ScalarExpr::one(chart)
                } else {
                    ScalarExpr::zero(chart)
                };
                let expected = id.sub(&self.eta[j].mul(&self.xi[i]));
                residuals.push(phi2.get(i, j).sub(&expected));
            }
        }
        report.push(residual_check("phi-square", "eq-phi-eta-xi", &residuals, ws));

        let r = self.eta_apply(&self.xi).sub(&ScalarExpr::one(chart));
        report.push(residual_check("eta-xi-pairing", "eq-eta-xi", &[r], ws));

        report.push(residual_check(
            "phi-xi",
            "eq-phi-xi",
            &self.phi_apply(&self.xi),
            ws,
        ));

        let residuals: Vec<ScalarExpr> = (0..m)
            .map(|j| {
                let col: Vec<ScalarExpr> = (0..m).map(|i| self.phi.get(i, j).clone()).collect();
                pair(&self.eta, &col)
            })
            .collect();
        report.push(residual_check("eta-phi", "eq-eta-phi", &residuals, ws));

        // g(phi X, phi Y) = g(X,Y) - eps eta(X) eta(Y) on the frame
        let mut residuals = Vec::new();
        for i in 0..m {
            let phii = self.phi_apply(&basis_field(chart, m, i));
            for j in 0..m {
                let phij = self.phi_apply(&basis_field(chart, m, j));
                let lhs = self.metric.inner(&phii, &phij);
                let rhs = self
                    .metric
                    .entry(i, j)
                    .sub(&eps.mul(&self.eta[i]).mul(&self.eta[j]));
                residuals.push(lhs.sub(&rhs));
            }
        }
        report.push(residual_check(
            "metric-phi-compatibility",
            "eq-metric-1",
            &residuals,
            ws,
        ));

        // g(X, phi Y) = g(phi X, Y)
        let mut residuals = Vec::new();
        for i in 0..m {
            for j in 0..m {
                let ei = basis_field(chart, m, i);
                let ej = basis_field(chart, m, j);
                residuals.push(
                    self.fundamental_form(&ei, &ej)
                        .sub(&self.metric.inner(&self.phi_apply(&ei), &ej)),
                );
            }
        }
        report.push(residual_check(
            "fundamental-form-symmetry",
            "eq-metric-2",
            &residuals,
            ws,
        ));

        // g(X, xi) = eps eta(X)
        let lowered = self.metric.lower(&self.xi);
        let residuals: Vec<ScalarExpr> = (0..m)
            .map(|i| lowered[i].sub(&eps.mul(&self.eta[i])))
            .collect();
        report.push(residual_check(
            "metric-xi-pairing",
            "eq-metric-3",
            &residuals,
            ws,
        ));

        let r = self.metric.inner(&self.xi, &self.xi).sub(&eps);
        report.push(residual_check("xi-norm", "eq-g(xi,xi)", &[r], ws));

        // Phi(X, xi) = 0
        let residuals: Vec<ScalarExpr> = (0..m)
            .map(|i| self.fundamental_form(&basis_field(chart, m, i), &self.xi))
            .collect();
        report.push(residual_check("fundamental-form-xi", "para6", &residuals, ws));

        let start = std::time::Instant::now();
        let index = self.metric.index_at(base_point);
        report.push(CheckRecord {
            name: "metric-index".into(),
            tag: "".into(),
            status: if index.is_ok() {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
            residual: None,
            witness: None,
            millis: start.elapsed().as_millis() as u64,
        });

        report
    }

    /// Decides the para-Sasakian condition. With `hypothesis_ok == false`
    /// (the structure failed the almost paracontact axioms) every record is
    /// reported as hypothesis-not-satisfied without evaluation.
    pub fn verify_para_sasakian(&self, hypothesis_ok: bool, ws: &WitnessSearcher) -> AxiomReport {
        if !hypothesis_ok {
            return AxiomReport::hypothesis_not_satisfied(PARA_SASAKIAN_CHECKS);
        }
        let m = self.chart.dim();
        let chart = &self.chart;
        let eps = self.epsilon.expr(chart);
        let probe = ws.probe_polynomial(chart);
        let mut report = AxiomReport::default();

        // (nabla_X phi)Y = -g(phi X, phi Y) xi - eps eta(Y) phi^2 X
        let rhs = |x: &[ScalarExpr], y: &[ScalarExpr]| -> VectorField {
            let phix = self.phi_apply(x);
            let phiy = self.phi_apply(y);
            let c1 = self.metric.inner(&phix, &phiy).neg();
            let c2 = eps.mul(&self.eta_apply(y)).neg();
            field_add(
                &field_scale(&self.xi, &c1),
                &field_scale(&self.phi_apply(&phix), &c2),
            )
        };
        let residual = |x: &[ScalarExpr], y: &[ScalarExpr]| -> VectorField {
            field_sub(&self.cov_phi(x, y), &rhs(x, y))
        };
        let mut residuals = Vec::new();
        for i in 0..m {
            for j in 0..m {
                residuals.extend(residual(
                    &basis_field(chart, m, i),
                    &basis_field(chart, m, j),
                ));
            }
        }
        residuals.extend(probe_linearity2(&residual, chart, m, &probe));
        report.push(residual_check("covariant-phi", "para2", &residuals, ws));

        // nabla_X xi = eps phi X
        let residual = |x: &[ScalarExpr]| -> VectorField {
            field_sub(
                &self.metric.covariant_derivative(x, &self.xi),
                &field_scale(&self.phi_apply(x), &eps),
            )
        };
        let mut residuals = Vec::new();
        for i in 0..m {
            residuals.extend(residual(&basis_field(chart, m, i)));
        }
        residuals.extend(probe_linearity1(&residual, chart, m, &probe));
        report.push(residual_check(
            "xi-covariant-derivative",
            "para3",
            &residuals,
            ws,
        ));

        // (nabla_X eta)Y = g(phi X, Y)
        let residual = |x: &[ScalarExpr], y: &[ScalarExpr]| -> VectorField {
            vec![self
                .cov_eta(x, y)
                .sub(&self.metric.inner(&self.phi_apply(x), y))]
        };
        let mut residuals = Vec::new();
        for i in 0..m {
            for j in 0..m {
                residuals.extend(residual(
                    &basis_field(chart, m, i),
                    &basis_field(chart, m, j),
                ));
            }
        }
        residuals.extend(probe_linearity2(&residual, chart, m, &probe));
        report.push(residual_check(
            "eta-covariant-derivative",
            "para4",
            &residuals,
            ws,
        ));

        report
    }

    /// Verifies the curvature identities of a para-Sasakian structure; the
    /// Ricci identity uses the constant -(m-1) for an m-dimensional chart.
    pub fn verify_curvature_identities(
        &self,
        para_sasakian_ok: bool,
        ws: &WitnessSearcher,
    ) -> AxiomReport {
        if !para_sasakian_ok {
            return AxiomReport::hypothesis_not_satisfied(CURVATURE_CHECKS);
        }
        let m = self.chart.dim();
        let chart = &self.chart;
        let eps = self.epsilon.expr(chart);
        let probe = ws.probe_polynomial(chart);
        let curv = self.metric.curvature();
        let mut report = AxiomReport::default();

        report.push(residual_check(
            "curvature-antisymmetry",
            "",
            &curv.antisymmetry_residuals(),
            ws,
        ));
        report.push(residual_check(
            "bianchi-first",
            "",
            &curv.first_bianchi_residuals(),
            ws,
        ));

        // R(X,Y)xi = eta(X) Y - eta(Y) X
        let residual = |x: &[ScalarExpr], y: &[ScalarExpr]| -> VectorField {
            let lhs = curv.apply(x, y, &self.xi);
            let rhs = field_sub(
                &field_scale(y, &self.eta_apply(x)),
                &field_scale(x, &self.eta_apply(y)),
            );
            field_sub(&lhs, &rhs)
        };
        let mut residuals = Vec::new();
        for i in 0..m {
            for j in 0..m {
                residuals.extend(residual(
                    &basis_field(chart, m, i),
                    &basis_field(chart, m, j),
                ));
            }
        }
        residuals.extend(probe_linearity2(&residual, chart, m, &probe));
        report.push(residual_check("curvature-xi", "para7", &residuals, ws));

        // g(R(X,Y)Z, xi) = -eta(X) g(Y,Z) + eta(Y) g(X,Z)
        let mut residuals = Vec::new();
        for i in 0..m {
            let ei = basis_field(chart, m, i);
            for j in 0..m {
                let ej = basis_field(chart, m, j);
                for k in 0..m {
                    let ek = basis_field(chart, m, k);
                    let lhs = self.metric.inner(&curv.apply(&ei, &ej, &ek), &self.xi);
                    let rhs = self
                        .eta[j]
                        .mul(self.metric.entry(i, k))
                        .sub(&self.eta[i].mul(self.metric.entry(j, k)));
                    residuals.push(lhs.sub(&rhs));
                }
            }
        }
        report.push(residual_check(
            "curvature-xi-pairing",
            "para8",
            &residuals,
            ws,
        ));

        // eta(R(X,Y)Z) = -eps eta(X) g(Y,Z) + eps eta(Y) g(X,Z)
        let mut residuals = Vec::new();
        for i in 0..m {
            let ei = basis_field(chart, m, i);
            for j in 0..m {
                let ej = basis_field(chart, m, j);
                for k in 0..m {
                    let ek = basis_field(chart, m, k);
                    let lhs = self.eta_apply(&curv.apply(&ei, &ej, &ek));
                    let rhs = eps.mul(
                        &self.eta[j]
                            .mul(self.metric.entry(i, k))
                            .sub(&self.eta[i].mul(self.metric.entry(j, k))),
                    );
                    residuals.push(lhs.sub(&rhs));
                }
            }
        }
        report.push(residual_check("eta-curvature", "para9", &residuals, ws));

        // R(xi, X)Y = -eps g(X,Y) xi + eta(Y) X
        let residual = |x: &[ScalarExpr], y: &[ScalarExpr]| -> VectorField {
            let lhs = curv.apply(&self.xi, x, y);
            let rhs = field_add(
                &field_scale(&self.xi, &eps.mul(&self.metric.inner(x, y)).neg()),
                &field_scale(x, &self.eta_apply(y)),
            );
            field_sub(&lhs, &rhs)
        };
        let mut residuals = Vec::new();
        for i in 0..m {
            for j in 0..m {
                residuals.extend(residual(
                    &basis_field(chart, m, i),
                    &basis_field(chart, m, j),
                ));
            }
        }
        residuals.extend(probe_linearity2(&residual, chart, m, &probe));
        report.push(residual_check(
            "curvature-xi-argument",
            "para10",
            &residuals,
            ws,
        ));

        // S(Y, xi) = -(m-1) eta(Y)
        let constant = ScalarExpr::from_int(chart, -(m as i64 - 1));
        let residuals: Vec<ScalarExpr> = (0..m)
            .map(|j| {
                let ej = basis_field(chart, m, j);
                curv.ricci_apply(&ej, &self.xi)
                    .sub(&constant.mul(&self.eta[j]))
            })
            .collect();
        report.push(residual_check("ricci-xi", "para11", &residuals, ws));

        report
    }
}

/// Function-linearity probe for a one-argument residual: a tensorial
/// identity that vanishes on the frame also satisfies
/// residual(f X) = f residual(X).
pub(crate) fn probe_linearity1(
    residual: &dyn Fn(&[ScalarExpr]) -> VectorField,
    chart: &Arc<Chart>,
    len: usize,
    f: &ScalarExpr,
) -> Vec<ScalarExpr> {
    let e0 = basis_field(chart, len, 0);
    let base = residual(&e0);
    field_sub(&residual(&field_scale(&e0, f)), &field_scale(&base, f))
}

/// Function-linearity probe in both slots of a two-argument residual.
pub(crate) fn probe_linearity2(
    residual: &dyn Fn(&[ScalarExpr], &[ScalarExpr]) -> VectorField,
    chart: &Arc<Chart>,
    len: usize,
    f: &ScalarExpr,
) -> Vec<ScalarExpr> {
    let e0 = basis_field(chart, len, 0);
    let e1 = basis_field(chart, len, 1.min(len - 1));
    let base = residual(&e0, &e1);
    let mut out = field_sub(
        &residual(&field_scale(&e0, f), &e1),
        &field_scale(&base, f),
    );
    out.extend(field_sub(
        &residual(&e0, &field_scale(&e1, f)),
        &field_scale(&base, f),
    ));
    out
}

#[cfg(test)]
pub(crate) mod tests_support {
    use super::*;
    use crate::scalar::parse_expression;

    pub(crate) fn rat(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    pub(crate) fn matrix(chart: &Arc<Chart>, rows: &[&[&str]]) -> ExactMatrix {
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

    pub(crate) fn fields(chart: &Arc<Chart>, comps: &[&str]) -> Vec<ScalarExpr> {
        comps
            .iter()
            .map(|s| parse_expression(chart, s).unwrap())
            .collect()
    }

    /// Derived 3-dimensional para-Sasakian structure:
    /// g = e^{2z} dx^2 - e^{2z} dy^2 + dz^2, eta = dz, xi = d_z,
    /// phi = I - eta (x) xi.
    pub(crate) fn hyperbolic_structure() -> AmbientStructure {
        let chart =
            Arc::new(Chart::new(vec!["x", "y", "z"], vec![("e2z", "z", rat(2))]).unwrap());
        let g = MetricTensor::new(
            chart.clone(),
            matrix(&chart, &[&["e2z", "0", "0"], &["0", "-e2z", "0"], &["0", "0", "1"]]),
        )
        .unwrap();
        let phi = matrix(&chart, &[&["1", "0", "0"], &["0", "1", "0"], &["0", "0", "0"]]);
        AmbientStructure::new(
            g,
            phi,
            fields(&chart, &["0", "0", "1"]),
            fields(&chart, &["0", "0", "1"]),
            Epsilon::Spacelike,
        )
        .unwrap()
    }

    pub(crate) fn flat_structure() -> AmbientStructure {
        let chart = Arc::new(Chart::new(vec!["x", "y", "z"], vec![]).unwrap());
        let g = MetricTensor::new(chart.clone(), ExactMatrix::identity(&chart, 3)).unwrap();
        let phi = matrix(&chart, &[&["1", "0", "0"], &["0", "1", "0"], &["0", "0", "0"]]);
        AmbientStructure::new(
            g,
            phi,
            fields(&chart, &["0", "0", "1"]),
            fields(&chart, &["0", "0", "1"]),
            Epsilon::Spacelike,
        )
        .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::tests_support::*;
    use super::*;

    #[test]
    fn hyperbolic_structure_is_para_sasakian() {
        let s = hyperbolic_structure();
        let ws = WitnessSearcher::new(42);
        let origin = vec![rat(0), rat(0), rat(0)];
        let apc = s.verify_almost_paracontact(&origin, &ws);
        assert!(apc.all_passed(), "{:?}", apc.records);
        assert_eq!(s.metric().index_at(&origin).unwrap(), 1);
        let ps = s.verify_para_sasakian(true, &ws);
        assert!(ps.all_passed(), "{:?}", ps.records);
        let curv = s.verify_curvature_identities(true, &ws);
        assert!(curv.all_passed(), "{:?}", curv.records);
    }

    #[test]
    fn flat_structure_fails_para_sasakian() {
        let s = flat_structure();
        let ws = WitnessSearcher::new(42);
        let apc = s.verify_almost_paracontact(&[rat(0), rat(0), rat(0)], &ws);
        assert!(apc.all_passed(), "{:?}", apc.records);
        let ps = s.verify_para_sasakian(true, &ws);
        // nabla xi = 0 while eps phi != 0
        let rec = ps.record("xi-covariant-derivative").unwrap();
        assert_eq!(rec.status, CheckStatus::Fail);
        assert!(rec.witness.is_some());
        // identities gated on the failed hypothesis are not evaluated
        let curv = s.verify_curvature_identities(false, &ws);
        assert!(curv
            .records
            .iter()
            .all(|r| r.status == CheckStatus::HypothesisNotSatisfied));
    }

    #[test]
    fn ricci_identity_constant_matches_dimension() {
        let s = hyperbolic_structure();
        let curv = s.metric().curvature();
        // S(xi, xi) = -(3-1) = -2
        assert_eq!(
            curv.ricci_apply(s.xi(), s.xi()),
            ScalarExpr::from_int(s.chart(), -2)
        );
    }
}
