//! Lightlike hypersurfaces of a semi-Riemannian chart: embedding and
//! pullback plumbing, the radical/screen/transversal frame, and the induced
//! Gauss-Weingarten geometry.

pub mod embedding;
pub mod frame;
pub mod geometry;

use std::sync::Arc;

use thiserror::Error;

use crate::report::{residual_check, AxiomReport, WitnessSearcher};
use crate::scalar::chart::ChartError;
use crate::scalar::parse::ParseError;
use crate::scalar::{Chart, ExactMatrix, ScalarExpr};
use crate::tensor::fields::{field_sub, VectorField};
use crate::tensor::metric::MetricTensor;

pub use embedding::HypersurfaceEmbedding;
pub use frame::LightlikeFrame;
pub use geometry::InducedGeometry;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HypersurfaceError {
    #[error("parameter chart: {0}")]
    ParamChart(#[from] ChartError),
    #[error("embedding map: {0}")]
    Parse(#[from] ParseError),
    #[error("embedding map must supply {expected} ambient coordinates, got {got}")]
    WrongMapLength { expected: usize, got: usize },
    #[error("embedding component for `{coordinate}` is not a polynomial in the parameters")]
    NonPolynomialMap { coordinate: String },
    #[error(
        "generator `{generator}` cannot be pulled back: its base coordinate must \
         embed as a single parameter or as zero"
    )]
    GeneratorPullback { generator: String },
    #[error("embedding jacobian is rank-deficient")]
    RankDeficient,
    #[error("hypersurface is not lightlike: the induced metric is nondegenerate")]
    NotLightlike,
    #[error("radical distribution has rank {0}; the hypersurface case requires rank 1")]
    NotHypersurfaceCase(usize),
    #[error("screen frame has a degenerate induced metric")]
    DegenerateScreen,
    #[error("screen frame must have {expected} members of {len} coefficients")]
    ScreenShape { expected: usize, len: usize },
    #[error("no transversal section exists for the given screen")]
    NoTransversal,
    #[error("the structure vector field is not tangent to the hypersurface")]
    XiNotTangent,
    #[error("an ambient expression has a pole along the hypersurface")]
    PullbackPole,
}

/// An embedded lightlike hypersurface with every ambient object pulled back
/// to the parameter chart: the induced (degenerate) metric, the restricted
/// ambient metric and connection coefficients, and an adapted lightlike
/// frame. All computations downstream of construction are exact and happen
/// over the parameter chart.
#[derive(Debug)]
pub struct LightlikeSurface {
    emb: HypersurfaceEmbedding,
    /// Ambient metric composed with the embedding.
    metric_on_surface: ExactMatrix,
    /// Ambient connection coefficients composed with the embedding.
    gamma_on_surface: Vec<Vec<Vec<ScalarExpr>>>,
    /// Induced metric on the tangent frame.
    gram: ExactMatrix,
    frame: LightlikeFrame,
}

impl LightlikeSurface {
    /// Builds the full lightlike package for an embedding. `screen` supplies
    /// an explicit screen frame (tangent-frame coefficient vectors); when
    /// absent the default rule applies: greedily take tangent frame vectors
    /// in declared order, skipping any that degenerates the partial Gram
    /// matrix, starting with `preferred_first` when given (the tangent
    /// representative of the structure vector field).
    pub fn build(
        emb: HypersurfaceEmbedding,
        ambient_metric: &MetricTensor,
        screen: Option<Vec<Vec<ScalarExpr>>>,
        preferred_first: Option<Vec<ScalarExpr>>,
    ) -> Result<LightlikeSurface, HypersurfaceError> {
        let params = emb.params().clone();
        let m = emb.ambient().dim();
        let metric_on_surface = ExactMatrix::from_fn(&params, m, m, |i, j| {
            emb.pullback(ambient_metric.entry(i, j)).expect("metric entries have no pole on the surface")
        });
        let ambient_gamma = ambient_metric.christoffel();
        let mut gamma_on_surface = vec![vec![vec![ScalarExpr::zero(&params); m]; m]; m];
        for k in 0..m {
            for a in 0..m {
                for b in 0..m {
                    gamma_on_surface[k][a][b] = emb
                        .pullback(&ambient_gamma[k][a][b])
                        .map_err(|_| HypersurfaceError::PullbackPole)?;
                }
            }
        }
        let n = m - 1;
        let gram = ExactMatrix::from_fn(&params, n, n, |i, j| {
            let mut acc = ScalarExpr::zero(&params);
            for a in 0..m {
                for b in 0..m {
                    let ja = emb.jacobian().get(a, i);
                    let jb = emb.jacobian().get(b, j);
                    if ja.is_zero() || jb.is_zero() {
                        continue;
                    }
                    acc = acc.add(&ja.mul(jb).mul(metric_on_surface.get(a, b)));
                }
            }
            acc
        });
        let radical = frame::radical_frame(&gram)?;
        let mut partial = LightlikeSurface {
            emb,
            metric_on_surface,
            gamma_on_surface,
            gram,
            frame: LightlikeFrame {
                radical,
                screen: Vec::new(),
                transversal: Vec::new(),
            },
        };
        let screen = match screen {
            Some(s) => frame::validate_screen(&partial, s)?,
            None => frame::default_screen(&partial, preferred_first)?,
        };
        partial.frame.screen = screen;
        partial.frame.transversal = frame::transversal_section(&partial)?;
        Ok(partial)
    }

    pub fn embedding(&self) -> &HypersurfaceEmbedding {
        &self.emb
    }

    pub fn params(&self) -> &Arc<Chart> {
        self.emb.params()
    }

    pub fn ambient_dim(&self) -> usize {
        self.emb.ambient().dim()
    }

    pub fn tangent_dim(&self) -> usize {
        self.emb.ambient().dim() - 1
    }

    /// Induced metric on the tangent frame.
    pub fn gram(&self) -> &ExactMatrix {
        &self.gram
    }

    pub fn frame(&self) -> &LightlikeFrame {
        &self.frame
    }

    pub fn metric_on_surface(&self) -> &ExactMatrix {
        &self.metric_on_surface
    }

    /// Inner product of ambient vectors given by components over the
    /// parameter chart.
    pub fn ambient_inner(&self, x: &[ScalarExpr], y: &[ScalarExpr]) -> ScalarExpr {
        let m = self.ambient_dim();
        let mut acc = ScalarExpr::zero(self.params());
        for a in 0..m {
            if x[a].is_zero() {
                continue;
            }
            for b in 0..m {
                if y[b].is_zero() || self.metric_on_surface.get(a, b).is_zero() {
                    continue;
                }
                acc = acc.add(&x[a].mul(&y[b]).mul(self.metric_on_surface.get(a, b)));
            }
        }
        acc
    }

    /// Induced inner product of tangent fields (coefficient vectors).
    pub fn induced_inner(&self, x: &[ScalarExpr], y: &[ScalarExpr]) -> ScalarExpr {
        let n = self.tangent_dim();
        let mut acc = ScalarExpr::zero(self.params());
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() || self.gram.get(i, j).is_zero() {
                    continue;
                }
                acc = acc.add(&x[i].mul(&y[j]).mul(self.gram.get(i, j)));
            }
        }
        acc
    }

    /// Ambient covariant derivative along the hypersurface:
    /// X a tangent field (coefficients), W an ambient field restricted to
    /// the surface (components over the parameters).
    pub fn ambient_covariant_derivative(
        &self,
        x: &[ScalarExpr],
        w: &[ScalarExpr],
    ) -> VectorField {
        let m = self.ambient_dim();
        let n = self.tangent_dim();
        let x_amb = self.emb.pushforward(x);
        (0..m)
            .map(|c| {
                let mut acc = ScalarExpr::zero(self.params());
                for i in 0..n {
                    if !x[i].is_zero() {
                        acc = acc.add(&x[i].mul(&w[c].derivative(i)));
                    }
                }
                for a in 0..m {
                    if x_amb[a].is_zero() {
                        continue;
                    }
                    for b in 0..m {
                        if w[b].is_zero() || self.gamma_on_surface[c][a][b].is_zero() {
                            continue;
                        }
                        acc = acc.add(&x_amb[a].mul(&w[b]).mul(&self.gamma_on_surface[c][a][b]));
                    }
                }
                acc
            })
            .collect()
    }

    /// Ambient covariant derivative of a tangent field along a tangent
    /// field, both given by coefficients.
    pub fn ambient_cov_tangent(&self, x: &[ScalarExpr], y: &[ScalarExpr]) -> VectorField {
        self.ambient_covariant_derivative(x, &self.emb.pushforward(y))
    }

    /// Expresses an ambient vector (components over the parameters) in the
    /// tangent frame; `None` when it is not tangent.
    pub fn tangent_representative(&self, ambient: &[ScalarExpr]) -> Option<Vec<ScalarExpr>> {
        self.emb.jacobian().solve(ambient)
    }

    /// Splits an ambient vector into a tangent part and a transversal
    /// coefficient: `v = pushforward(tangent) + c * N`.
    pub fn decompose(&self, ambient: &[ScalarExpr]) -> (Vec<ScalarExpr>, ScalarExpr) {
        let m = self.ambient_dim();
        let n = self.tangent_dim();
        let basis = ExactMatrix::from_fn(self.params(), m, m, |a, col| {
            if col < n {
                self.emb.jacobian().get(a, col).clone()
            } else {
                self.frame.transversal[a].clone()
            }
        });
        let sol = basis
            .solve(ambient)
            .expect("tangent frame plus transversal spans the ambient space");
        let tangent = sol[..n].to_vec();
        let coeff = sol[n].clone();
        (tangent, coeff)
    }

    /// theta(X) = g(X, N) for a tangent field.
    pub fn theta(&self, x: &[ScalarExpr]) -> ScalarExpr {
        self.ambient_inner(&self.emb.pushforward(x), &self.frame.transversal)
    }

    /// Screen projection P(X) = X - theta(X) E.
    pub fn screen_project(&self, x: &[ScalarExpr]) -> Vec<ScalarExpr> {
        let theta = self.theta(x);
        field_sub(x, &crate::tensor::fields::field_scale(&self.frame.radical, &theta))
    }

    /// Structural checks of the assembled frame, reported as records.
    pub fn frame_report(&self, ws: &WitnessSearcher) -> AxiomReport {
        let mut report = AxiomReport::default();
        let n = self.tangent_dim();
        let e_amb = self.emb.pushforward(&self.frame.radical);

        let residuals: Vec<ScalarExpr> = (0..n)
            .map(|i| {
                let mut row = vec![ScalarExpr::zero(self.params()); n];
                row[i] = ScalarExpr::one(self.params());
                self.induced_inner(&self.frame.radical, &row)
            })
            .collect();
        report.push(residual_check(
            "radical-orthogonality",
            "eq-null-2",
            &residuals,
            ws,
        ));

        let screen_gram = frame::screen_gram(self, &self.frame.screen);
        let r = if screen_gram.determinant().is_zero() {
            ScalarExpr::one(self.params())
        } else {
            ScalarExpr::zero(self.params())
        };
        report.push(residual_check("screen-nondegeneracy", "eq-null-4", &[r], ws));

        let nn = self.ambient_inner(&self.frame.transversal, &self.frame.transversal);
        let en = self
            .ambient_inner(&e_amb, &self.frame.transversal)
            .sub(&ScalarExpr::one(self.params()));
        report.push(residual_check(
            "transversal-normalization",
            "eq-null-5",
            &[nn, en],
            ws,
        ));

        let residuals: Vec<ScalarExpr> = self
            .frame
            .screen
            .iter()
            .map(|w| self.ambient_inner(&self.emb.pushforward(w), &self.frame.transversal))
            .collect();
        report.push(residual_check(
            "transversal-screen-orthogonality",
            "eq-null-5",
            &residuals,
            ws,
        ));

        // X = PX + theta(X) E on the frame
        let mut residuals = Vec::new();
        for i in 0..n {
            let mut ei = vec![ScalarExpr::zero(self.params()); n];
            ei[i] = ScalarExpr::one(self.params());
            let p = self.screen_project(&ei);
            let theta = self.theta(&ei);
            let reassembled = crate::tensor::fields::field_add(
                &p,
                &crate::tensor::fields::field_scale(&self.frame.radical, &theta),
            );
            residuals.extend(field_sub(&reassembled, &ei));
        }
        report.push(residual_check(
            "tangent-decomposition",
            "eq-null-9",
            &residuals,
            ws,
        ));

        report
    }
}

pub const FRAME_CHECKS: &[(&str, &str)] = &[
    ("radical-orthogonality", "eq-null-2"),
    ("screen-nondegeneracy", "eq-null-4"),
    ("transversal-normalization", "eq-null-5"),
    ("transversal-screen-orthogonality", "eq-null-5"),
    ("tangent-decomposition", "eq-null-9"),
];
