//! Gauss-Weingarten data of a lightlike hypersurface: second fundamental
//! form, shape operators, transversal 1-form, screen fundamental form and
//! the induced connection, with verification of the structural identities
//! that couple them.

use crate::report::{residual_check, AxiomReport, WitnessSearcher};
use crate::scalar::ScalarExpr;
use crate::tensor::fields::{
    basis_field, directional_derivative, field_add, field_scale, field_sub, VectorField,
};

use super::LightlikeSurface;

/// All induced objects, tabulated on the tangent frame. Applications to
/// arbitrary tangent fields contract these tables (every object is
/// tensorial in its arguments except the connection, which adds the
/// directional derivative term).
#[derive(Debug)]
pub struct InducedGeometry {
    /// B(T_i, T_j) = g(amb_nabla_{T_i} T_j, E).
    b_form: Vec<Vec<ScalarExpr>>,
    /// Induced connection nabla_{T_i} T_j, tangent coefficients.
    conn: Vec<Vec<Vec<ScalarExpr>>>,
    /// tau(T_i): transversal part of amb_nabla_{T_i} N.
    tau: Vec<ScalarExpr>,
    /// A_N T_i = -(tangent part of amb_nabla_{T_i} N).
    shape_n: Vec<Vec<ScalarExpr>>,
    /// A*_E T_i = -P(nabla_{T_i} E).
    shape_star: Vec<Vec<ScalarExpr>>,
    /// C(T_i, W_w) = theta(nabla_{T_i} W_w) over the screen frame.
    screen_form: Vec<Vec<ScalarExpr>>,
}

impl InducedGeometry {
    pub fn compute(surface: &LightlikeSurface) -> InducedGeometry {
        let n = surface.tangent_dim();
        let params = surface.params();
        let e_amb = surface.embedding().pushforward(&surface.frame().radical);

        let mut b_form = vec![vec![ScalarExpr::zero(params); n]; n];
        let mut conn = vec![vec![Vec::new(); n]; n];
        for i in 0..n {
            let ei = basis_field(params, n, i);
            for j in 0..n {
                let ej = basis_field(params, n, j);
                let d = surface.ambient_cov_tangent(&ei, &ej);
                b_form[i][j] = surface.ambient_inner(&d, &e_amb);
                let (tangent, _) = surface.decompose(&d);
                conn[i][j] = tangent;
            }
        }

        let mut tau = Vec::with_capacity(n);
        let mut shape_n = Vec::with_capacity(n);
        for i in 0..n {
            let ei = basis_field(params, n, i);
            let dn = surface.ambient_covariant_derivative(&ei, &surface.frame().transversal);
            let (tangent, coeff) = surface.decompose(&dn);
            shape_n.push(tangent.iter().map(ScalarExpr::neg).collect());
            tau.push(coeff);
        }

        let partial = InducedGeometry {
            b_form,
            conn,
            tau,
            shape_n,
            shape_star: Vec::new(),
            screen_form: Vec::new(),
        };

        let mut shape_star = Vec::with_capacity(n);
        for i in 0..n {
            let ei = basis_field(params, n, i);
            let de = partial.nabla(&ei, &surface.frame().radical);
            let projected = surface.screen_project(&de);
            shape_star.push(projected.iter().map(ScalarExpr::neg).collect());
        }

        let screen = &surface.frame().screen;
        let mut screen_form = vec![Vec::with_capacity(screen.len()); n];
        for i in 0..n {
            let ei = basis_field(params, n, i);
            for w in screen {
                let dw = partial.nabla(&ei, w);
                screen_form[i].push(surface.theta(&dw));
            }
        }

        InducedGeometry {
            shape_star,
            screen_form,
            ..partial
        }
    }

    /// Second fundamental form on arbitrary tangent fields.
    pub fn b(&self, x: &[ScalarExpr], y: &[ScalarExpr]) -> ScalarExpr {
        contract2(&self.b_form, x, y)
    }

    pub fn b_frame(&self, i: usize, j: usize) -> &ScalarExpr {
        &self.b_form[i][j]
    }

    /// Induced connection on arbitrary tangent fields.
    pub fn nabla(&self, x: &[ScalarExpr], y: &[ScalarExpr]) -> VectorField {
        let n = self.conn.len();
        let mut out: VectorField = (0..n)
            .map(|k| directional_derivative(x, &y[k]))
            .collect();
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                let c = x[i].mul(&y[j]);
                for k in 0..n {
                    if !self.conn[i][j][k].is_zero() {
                        out[k] = out[k].add(&c.mul(&self.conn[i][j][k]));
                    }
                }
            }
        }
        out
    }

    pub fn tau_apply(&self, x: &[ScalarExpr]) -> ScalarExpr {
        contract1(&self.tau, x)
    }

    pub fn tau_frame(&self, i: usize) -> &ScalarExpr {
        &self.tau[i]
    }

    pub fn shape_n_apply(&self, x: &[ScalarExpr]) -> VectorField {
        contract_columns(&self.shape_n, x)
    }

    pub fn shape_star_apply(&self, x: &[ScalarExpr]) -> VectorField {
        contract_columns(&self.shape_star, x)
    }

    pub fn screen_form_frame(&self, i: usize, w: usize) -> &ScalarExpr {
        &self.screen_form[i][w]
    }

    /// (nabla_X g)(Y, Z) for the induced (degenerate) metric.
    pub fn cov_metric(
        &self,
        surface: &LightlikeSurface,
        x: &[ScalarExpr],
        y: &[ScalarExpr],
        z: &[ScalarExpr],
    ) -> ScalarExpr {
        directional_derivative(x, &surface.induced_inner(y, z))
            .sub(&surface.induced_inner(&self.nabla(x, y), z))
            .sub(&surface.induced_inner(y, &self.nabla(x, z)))
    }
}

fn contract1(table: &[ScalarExpr], x: &[ScalarExpr]) -> ScalarExpr {
    let chart = x[0].chart();
    let mut acc = ScalarExpr::zero(chart);
    for (i, xi) in x.iter().enumerate() {
        if !xi.is_zero() && !table[i].is_zero() {
            acc = acc.add(&xi.mul(&table[i]));
        }
    }
    acc
}

fn contract2(table: &[Vec<ScalarExpr>], x: &[ScalarExpr], y: &[ScalarExpr]) -> ScalarExpr {
    let chart = x[0].chart();
    let mut acc = ScalarExpr::zero(chart);
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for (j, yj) in y.iter().enumerate() {
            if !yj.is_zero() && !table[i][j].is_zero() {
                acc = acc.add(&xi.mul(yj).mul(&table[i][j]));
            }
        }
    }
    acc
}

fn contract_columns(columns: &[Vec<ScalarExpr>], x: &[ScalarExpr]) -> VectorField {
    let chart = x[0].chart();
    let n = columns[0].len();
    let mut out = vec![ScalarExpr::zero(chart); n];
    for (i, xi) in x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        for k in 0..n {
            if !columns[i][k].is_zero() {
                out[k] = out[k].add(&xi.mul(&columns[i][k]));
            }
        }
    }
    out
}

pub const GW_CHECKS: &[(&str, &str)] = &[
    ("gauss-formula", "eq-null-7"),
    ("weingarten-formula", "eq-null-8"),
    ("induced-non-metricity", "eq-null-11"),
    ("radical-connection-form", "eq-null-13"),
    ("screen-shape-pairing", "eq-null-14"),
    ("screen-shape-transversal", "eq-null-14"),
    ("second-fundamental-radical", "eq-null-14"),
    ("shape-transversal", "eq-null-14"),
    ("radical-shape-vanishing", "eq-null-15"),
];

/// Verifies the Gauss-Weingarten identities of the induced geometry. The
/// non-metricity identity is the strongest cross-cutting check since it
/// couples the induced connection, B and theta.
pub fn verify_gw_identities(
    surface: &LightlikeSurface,
    geo: &InducedGeometry,
    ws: &WitnessSearcher,
) -> AxiomReport {
    let n = surface.tangent_dim();
    let params = surface.params();
    let probe = ws.probe_polynomial(params);
    let transversal = &surface.frame().transversal;
    let radical = &surface.frame().radical;
    let mut report = AxiomReport::default();

    // amb_nabla_X Y = nabla_X Y + B(X,Y) N
    let gauss = |x: &[ScalarExpr], y: &[ScalarExpr]| -> VectorField {
        let reassembled = field_add(
            &surface.embedding().pushforward(&geo.nabla(x, y)),
            &field_scale(transversal, &geo.b(x, y)),
        );
        field_sub(&reassembled, &surface.ambient_cov_tangent(x, y))
    };
    let mut residuals = Vec::new();
    for i in 0..n {
        for j in 0..n {
            residuals.extend(gauss(&basis_field(params, n, i), &basis_field(params, n, j)));
        }
    }
    residuals.extend(probe2_tangent(&gauss, params, n, &probe));
    report.push(residual_check("gauss-formula", "eq-null-7", &residuals, ws));

    // amb_nabla_X N = -A_N X + tau(X) N
    let weingarten = |x: &[ScalarExpr]| -> VectorField {
        let reassembled = field_sub(
            &field_scale(transversal, &geo.tau_apply(x)),
            &surface.embedding().pushforward(&geo.shape_n_apply(x)),
        );
        field_sub(
            &reassembled,
            &surface.ambient_covariant_derivative(x, transversal),
        )
    };
    let mut residuals = Vec::new();
    for i in 0..n {
        residuals.extend(weingarten(&basis_field(params, n, i)));
    }
    residuals.extend(probe1_tangent(&weingarten, params, n, &probe));
    report.push(residual_check(
        "weingarten-formula",
        "eq-null-8",
        &residuals,
        ws,
    ));

    // (nabla_X g)(Y,Z) = B(X,Y) theta(Z) + B(X,Z) theta(Y)
    let nonmetric = |x: &[ScalarExpr], y: &[ScalarExpr], z: &[ScalarExpr]| -> ScalarExpr {
        geo.cov_metric(surface, x, y, z)
            .sub(&geo.b(x, y).mul(&surface.theta(z)))
            .sub(&geo.b(x, z).mul(&surface.theta(y)))
    };
    let mut residuals = Vec::new();
    for i in 0..n {
        let ei = basis_field(params, n, i);
        for j in 0..n {
            let ej = basis_field(params, n, j);
            for k in 0..n {
                residuals.push(nonmetric(&ei, &ej, &basis_field(params, n, k)));
            }
        }
    }
    // function-linearity probes in the first two slots
    let e0 = basis_field(params, n, 0);
    let e1 = basis_field(params, n, 1.min(n - 1));
    let base = nonmetric(&e0, &e1, &e1);
    residuals.push(nonmetric(&field_scale(&e0, &probe), &e1, &e1).sub(&base.mul(&probe)));
    residuals.push(nonmetric(&e0, &field_scale(&e1, &probe), &e1).sub(&base.mul(&probe)));
    report.push(residual_check(
        "induced-non-metricity",
        "eq-null-11",
        &residuals,
        ws,
    ));

    // nabla_X E = -A*_E X - tau(X) E
    let radical_conn = |x: &[ScalarExpr]| -> VectorField {
        field_add(
            &field_add(&geo.nabla(x, radical), &geo.shape_star_apply(x)),
            &field_scale(radical, &geo.tau_apply(x)),
        )
    };
    let mut residuals = Vec::new();
    for i in 0..n {
        residuals.extend(radical_conn(&basis_field(params, n, i)));
    }
    residuals.extend(probe1_tangent(&radical_conn, params, n, &probe));
    report.push(residual_check(
        "radical-connection-form",
        "eq-null-13",
        &residuals,
        ws,
    ));

    // g(A*_E X, W) = B(X, W)
    let mut residuals = Vec::new();
    for i in 0..n {
        let ei = basis_field(params, n, i);
        for w in &surface.frame().screen {
            residuals.push(
                surface
                    .induced_inner(&geo.shape_star_apply(&ei), w)
                    .sub(&geo.b(&ei, w)),
            );
        }
    }
    report.push(residual_check(
        "screen-shape-pairing",
        "eq-null-14",
        &residuals,
        ws,
    ));

    // g(A*_E X, N) = 0
    let residuals: Vec<ScalarExpr> = (0..n)
        .map(|i| surface.theta(&geo.shape_star_apply(&basis_field(params, n, i))))
        .collect();
    report.push(residual_check(
        "screen-shape-transversal",
        "eq-null-14",
        &residuals,
        ws,
    ));

    // B(X, E) = 0
    let residuals: Vec<ScalarExpr> = (0..n)
        .map(|i| geo.b(&basis_field(params, n, i), radical))
        .collect();
    report.push(residual_check(
        "second-fundamental-radical",
        "eq-null-14",
        &residuals,
        ws,
    ));

    // g(A_N X, N) = 0
    let residuals: Vec<ScalarExpr> = (0..n)
        .map(|i| surface.theta(&geo.shape_n_apply(&basis_field(params, n, i))))
        .collect();
    report.push(residual_check(
        "shape-transversal",
        "eq-null-14",
        &residuals,
        ws,
    ));

    // A*_E E = 0
    report.push(residual_check(
        "radical-shape-vanishing",
        "eq-null-15",
        &geo.shape_star_apply(radical),
        ws,
    ));

    report
}

fn probe1_tangent(
    residual: &dyn Fn(&[ScalarExpr]) -> VectorField,
    params: &std::sync::Arc<crate::scalar::Chart>,
    n: usize,
    f: &ScalarExpr,
) -> Vec<ScalarExpr> {
    let e0 = basis_field(params, n, 0);
    let base = residual(&e0);
    field_sub(&residual(&field_scale(&e0, f)), &field_scale(&base, f))
}

fn probe2_tangent(
    residual: &dyn Fn(&[ScalarExpr], &[ScalarExpr]) -> VectorField,
    params: &std::sync::Arc<crate::scalar::Chart>,
    n: usize,
    f: &ScalarExpr,
) -> Vec<ScalarExpr> {
    let e0 = basis_field(params, n, 0);
    let e1 = basis_field(params, n, 1.min(n - 1));
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
