//! Shared fixture constructions for the integration tests. Each fixture is
//! a concrete coordinate instance whose expected geometry was computed by
//! hand and cross-checked with an independent computer algebra system
//! before being frozen into the assertions.

use std::sync::Arc;

use num::BigRational;
use paralight_core::hypersurface::{HypersurfaceEmbedding, LightlikeSurface};
use paralight_core::paracontact::{AmbientStructure, Epsilon};
use paralight_core::scalar::{parse_expression, Chart, ExactMatrix, ScalarExpr};
use paralight_core::tensor::MetricTensor;

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

pub fn exprs(chart: &Arc<Chart>, texts: &[&str]) -> Vec<ScalarExpr> {
    texts
        .iter()
        .map(|t| parse_expression(chart, t).unwrap())
        .collect()
}

pub fn matrix(chart: &Arc<Chart>, rows: &[&[&str]]) -> ExactMatrix {
    ExactMatrix::from_rows(chart, rows.iter().map(|r| exprs(chart, r)).collect())
}

pub fn strings(texts: &[&str]) -> Vec<String> {
    texts.iter().map(|s| s.to_string()).collect()
}

pub struct Fixture {
    pub structure: AmbientStructure,
    pub base_point: Vec<BigRational>,
    pub surface: LightlikeSurface,
    /// Tangent representative of the structure vector field.
    pub xi_rep: Vec<ScalarExpr>,
}

fn assemble(
    structure: AmbientStructure,
    base_point: Vec<BigRational>,
    parameters: &[&str],
    map: &[&str],
    screen: Option<&[&[&str]]>,
) -> Fixture {
    let emb = HypersurfaceEmbedding::new(
        structure.chart().clone(),
        strings(parameters),
        &strings(map),
    )
    .unwrap();
    let xi_pulled = emb.pullback_field(structure.xi()).unwrap();
    let xi_rep = emb.jacobian().solve(&xi_pulled).expect("xi is tangent");
    let screen_vectors = screen.map(|rows| {
        rows.iter()
            .map(|r| exprs(emb.params(), r))
            .collect::<Vec<_>>()
    });
    let surface = LightlikeSurface::build(
        emb,
        structure.metric(),
        screen_vectors,
        Some(xi_rep.clone()),
    )
    .unwrap();
    Fixture {
        structure,
        base_point,
        surface,
        xi_rep,
    }
}

/// Five-dimensional spacelike structure carrying an invariant lightlike
/// hypersurface y = t. Metric index 3 at the origin.
pub fn invariant_r5() -> Fixture {
    let chart = Arc::new(Chart::new(vec!["x", "y", "z", "t", "s"], vec![]).unwrap());
    let g = MetricTensor::new(
        chart.clone(),
        matrix(
            &chart,
            &[
                &["-1", "0", "0", "0", "-y"],
                &["0", "-1", "0", "0", "0"],
                &["0", "0", "-1", "0", "-t"],
                &["0", "0", "0", "1", "0"],
                &["-y", "0", "-t", "0", "1"],
            ],
        ),
    )
    .unwrap();
    let phi = matrix(
        &chart,
        &[
            &["-1", "0", "0", "0", "0"],
            &["0", "-1", "0", "0", "0"],
            &["0", "0", "-1", "0", "0"],
            &["0", "0", "0", "-1", "0"],
            &["-y", "0", "-t", "0", "0"],
        ],
    );
    let xi = exprs(&chart, &["0", "0", "0", "0", "1"]);
    let eta = exprs(&chart, &["-y", "0", "-t", "0", "1"]);
    let structure = AmbientStructure::new(g, phi, xi, eta, Epsilon::Spacelike).unwrap();
    assemble(
        structure,
        vec![rat(0); 5],
        &["x", "y", "z", "s"],
        &["x", "y", "z", "y", "s"],
        Some(&[
            &["1", "0", "0", "0"],
            &["0", "0", "1", "0"],
            &["0", "0", "0", "1"],
        ]),
    )
}

/// Five-dimensional spacelike structure of index 2 carrying a screen
/// semi-invariant lightlike hypersurface t = z.
pub fn screen_semi_invariant_r5() -> Fixture {
    let chart = Arc::new(Chart::new(vec!["x", "y", "z", "t", "s"], vec![]).unwrap());
    let g = MetricTensor::new(
        chart.clone(),
        matrix(
            &chart,
            &[
                &["(z^2-1)/4", "z*t/4", "0", "0", "z/4"],
                &["z*t/4", "(t^2+1)/4", "0", "0", "t/4"],
                &["0", "0", "-1/4", "0", "0"],
                &["0", "0", "0", "1/4", "0"],
                &["z/4", "t/4", "0", "0", "1/4"],
            ],
        ),
    )
    .unwrap();
    let phi = matrix(
        &chart,
        &[
            &["0", "0", "-1", "0", "0"],
            &["0", "0", "0", "-1", "0"],
            &["-1", "0", "0", "0", "0"],
            &["0", "-1", "0", "0", "0"],
            &["0", "0", "z", "t", "0"],
        ],
    );
    let xi = exprs(&chart, &["0", "0", "0", "0", "2"]);
    let eta = exprs(&chart, &["z/2", "t/2", "0", "0", "1/2"]);
    let structure = AmbientStructure::new(g, phi, xi, eta, Epsilon::Spacelike).unwrap();
    assemble(
        structure,
        vec![rat(0); 5],
        &["x", "y", "z", "s"],
        &["x", "y", "z", "z", "s"],
        None,
    )
}

/// Three-dimensional para-Sasakian warped product
/// g = e^{2z} dx^2 - e^{2z} dy^2 + dz^2 with the lightlike hypersurface
/// x = y.
pub fn para_sasakian_r3() -> Fixture {
    let chart = Arc::new(Chart::new(vec!["x", "y", "z"], vec![("e2z", "z", rat(2))]).unwrap());
    let g = MetricTensor::new(
        chart.clone(),
        matrix(
            &chart,
            &[&["e2z", "0", "0"], &["0", "-e2z", "0"], &["0", "0", "1"]],
        ),
    )
    .unwrap();
    let phi = matrix(&chart, &[&["1", "0", "0"], &["0", "1", "0"], &["0", "0", "0"]]);
    let xi = exprs(&chart, &["0", "0", "1"]);
    let eta = exprs(&chart, &["0", "0", "1"]);
    let structure = AmbientStructure::new(g, phi, xi, eta, Epsilon::Spacelike).unwrap();
    assemble(structure, vec![rat(0); 3], &["x", "z"], &["x", "x", "z"], None)
}

/// Five-dimensional para-Sasakian warped product with the invariant
/// lightlike hypersurface x1 = y1.
pub fn para_sasakian_r5() -> Fixture {
    let chart = Arc::new(
        Chart::new(
            vec!["x1", "y1", "x2", "y2", "z"],
            vec![("e2z", "z", rat(2))],
        )
        .unwrap(),
    );
    let g = MetricTensor::new(
        chart.clone(),
        matrix(
            &chart,
            &[
                &["e2z", "0", "0", "0", "0"],
                &["0", "-e2z", "0", "0", "0"],
                &["0", "0", "e2z", "0", "0"],
                &["0", "0", "0", "-e2z", "0"],
                &["0", "0", "0", "0", "1"],
            ],
        ),
    )
    .unwrap();
    let phi = matrix(
        &chart,
        &[
            &["1", "0", "0", "0", "0"],
            &["0", "1", "0", "0", "0"],
            &["0", "0", "1", "0", "0"],
            &["0", "0", "0", "1", "0"],
            &["0", "0", "0", "0", "0"],
        ],
    );
    let xi = exprs(&chart, &["0", "0", "0", "0", "1"]);
    let eta = exprs(&chart, &["0", "0", "0", "0", "1"]);
    let structure = AmbientStructure::new(g, phi, xi, eta, Epsilon::Spacelike).unwrap();
    assemble(
        structure,
        vec![rat(0); 5],
        &["x1", "x2", "y2", "z"],
        &["x1", "x1", "x2", "y2", "z"],
        None,
    )
}

/// Flat Euclidean 3-space with the product structure; its hyperplane z = 0
/// is not lightlike and the structure is not para-Sasakian.
pub fn flat_r3_structure() -> AmbientStructure {
    let chart = Arc::new(Chart::new(vec!["x", "y", "z"], vec![]).unwrap());
    let g = MetricTensor::new(chart.clone(), ExactMatrix::identity(&chart, 3)).unwrap();
    let phi = matrix(&chart, &[&["1", "0", "0"], &["0", "1", "0"], &["0", "0", "0"]]);
    let xi = exprs(&chart, &["0", "0", "1"]);
    let eta = exprs(&chart, &["0", "0", "1"]);
    AmbientStructure::new(g, phi, xi, eta, Epsilon::Spacelike).unwrap()
}
