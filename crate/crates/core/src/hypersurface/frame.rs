//! Adapted frames along a lightlike hypersurface: the radical section, a
//! screen distribution, and the unique lightlike transversal section.

use num::BigRational;

use crate::scalar::{ExactMatrix, ScalarExpr};
use crate::tensor::fields::{field_add, field_scale};

use super::{HypersurfaceError, LightlikeSurface};

/// Radical section, screen frame and transversal section of a lightlike
/// hypersurface. The radical and screen members are tangent-frame
/// coefficient vectors; the transversal holds ambient components.
#[derive(Debug, Clone)]
pub struct LightlikeFrame {
    pub radical: Vec<ScalarExpr>,
    pub screen: Vec<Vec<ScalarExpr>>,
    pub transversal: Vec<ScalarExpr>,
}

/// Extracts the radical section from the induced Gram matrix: the nullity
/// must be exactly one. The section is normalized so its first nonzero
/// coefficient (in parameter order) is +1.
pub fn radical_frame(gram: &ExactMatrix) -> Result<Vec<ScalarExpr>, HypersurfaceError> {
    let (_, nullspace) = gram.rank_nullspace();
    match nullspace.len() {
        0 => Err(HypersurfaceError::NotLightlike),
        1 => {
            let mut e = nullspace.into_iter().next().unwrap();
            let lead = e
                .iter()
                .find(|c| !c.is_zero())
                .expect("nullspace vector is nonzero")
                .clone();
            let inv = lead.recip().expect("leading coefficient is nonzero");
            for c in &mut e {
                *c = c.mul(&inv);
            }
            Ok(e)
        }
        k => Err(HypersurfaceError::NotHypersurfaceCase(k)),
    }
}

/// Gram matrix of a set of tangent fields under the induced metric.
pub fn screen_gram(surface: &LightlikeSurface, members: &[Vec<ScalarExpr>]) -> ExactMatrix {
    ExactMatrix::from_fn(
        surface.params(),
        members.len(),
        members.len(),
        |i, j| surface.induced_inner(&members[i], &members[j]),
    )
}

pub(super) fn validate_screen(
    surface: &LightlikeSurface,
    screen: Vec<Vec<ScalarExpr>>,
) -> Result<Vec<Vec<ScalarExpr>>, HypersurfaceError> {
    let expected = surface.tangent_dim() - 1;
    if screen.len() != expected || screen.iter().any(|w| w.len() != surface.tangent_dim()) {
        return Err(HypersurfaceError::ScreenShape {
            expected,
            len: surface.tangent_dim(),
        });
    }
    if screen_gram(surface, &screen).determinant().is_zero() {
        return Err(HypersurfaceError::DegenerateScreen);
    }
    Ok(screen)
}

pub(super) fn default_screen(
    surface: &LightlikeSurface,
    preferred_first: Option<Vec<ScalarExpr>>,
) -> Result<Vec<Vec<ScalarExpr>>, HypersurfaceError> {
    let n = surface.tangent_dim();
    let wanted = n - 1;
    let mut candidates: Vec<Vec<ScalarExpr>> = Vec::new();
    if let Some(p) = preferred_first {
        candidates.push(p);
    }
    for i in 0..n {
        let mut e = vec![ScalarExpr::zero(surface.params()); n];
        e[i] = ScalarExpr::one(surface.params());
        candidates.push(e);
    }
    let mut selected: Vec<Vec<ScalarExpr>> = Vec::new();
    for c in candidates {
        if selected.len() == wanted {
            break;
        }
        selected.push(c);
        if screen_gram(surface, &selected).determinant().is_zero() {
            selected.pop();
        }
    }
    if selected.len() == wanted {
        Ok(selected)
    } else {
        Err(HypersurfaceError::DegenerateScreen)
    }
}

/// Solves for the unique transversal section: g(N, W_i) = 0, g(N, E) = 1
/// linearly, then shifts along the radical to impose g(N, N) = 0. The shift
/// is always solvable because the radical section is null.
pub(super) fn transversal_section(
    surface: &LightlikeSurface,
) -> Result<Vec<ScalarExpr>, HypersurfaceError> {
    let m = surface.ambient_dim();
    let params = surface.params();
    let e_amb = surface.embedding().pushforward(&surface.frame().radical);
    let mut rows: Vec<Vec<ScalarExpr>> = Vec::with_capacity(m - 1);
    let mut rhs: Vec<ScalarExpr> = Vec::with_capacity(m - 1);
    for w in &surface.frame().screen {
        let w_amb = surface.embedding().pushforward(w);
        rows.push(lowered_row(surface, &w_amb));
        rhs.push(ScalarExpr::zero(params));
    }
    rows.push(lowered_row(surface, &e_amb));
    rhs.push(ScalarExpr::one(params));
    let system = ExactMatrix::from_rows(params, rows);
    let particular = system
        .solve(&rhs)
        .ok_or(HypersurfaceError::NoTransversal)?;
    // g(N0 + c E, N0 + c E) = g(N0, N0) + 2 c  since g(N0, E) = 1
    let norm = surface.ambient_inner(&particular, &particular);
    let shift = norm.scale(&BigRational::new((-1).into(), 2.into()));
    Ok(field_add(&particular, &field_scale(&e_amb, &shift)))
}

/// Row of the pairing v -> g(v, w) over the ambient components.
fn lowered_row(surface: &LightlikeSurface, w_amb: &[ScalarExpr]) -> Vec<ScalarExpr> {
    let m = surface.ambient_dim();
    (0..m)
        .map(|a| {
            let mut acc = ScalarExpr::zero(surface.params());
            for b in 0..m {
                if !w_amb[b].is_zero() {
                    acc = acc.add(&surface.metric_on_surface().get(a, b).mul(&w_amb[b]));
                }
            }
            acc
        })
        .collect()
}
