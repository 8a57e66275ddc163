//! Polynomial embeddings of a parameter chart into an ambient chart, with
//! exact pullback of ambient expressions.

use std::sync::Arc;

use crate::scalar::{parse_expression, Chart, ExactMatrix, ExprError, ScalarExpr};

use super::HypersurfaceError;

/// A hypersurface given by parameter names and one polynomial expression per
/// ambient coordinate. Ambient exponential generators are carried over to
/// the parameter chart, which requires the base coordinate of each
/// generator to embed either as a single parameter or as zero.
#[derive(Debug)]
pub struct HypersurfaceEmbedding {
    ambient: Arc<Chart>,
    params: Arc<Chart>,
    /// Images of the ambient coordinates, expressions over the parameters.
    map: Vec<ScalarExpr>,
    /// Images of every ambient symbol (coordinates, then generators).
    symbol_images: Vec<ScalarExpr>,
    /// Column i holds the ambient components of the pushforward of d/du_i.
    jacobian: ExactMatrix,
}

impl HypersurfaceEmbedding {
    pub fn new(
        ambient: Arc<Chart>,
        parameters: Vec<String>,
        map_text: &[String],
    ) -> Result<HypersurfaceEmbedding, HypersurfaceError> {
        let m = ambient.dim();
        if map_text.len() != m {
            return Err(HypersurfaceError::WrongMapLength {
                expected: m,
                got: map_text.len(),
            });
        }
        // Parse over a plain parameter chart first to find the induced
        // generators, then rebuild with the generators attached.
        let plain = Arc::new(Chart::new(parameters.clone(), vec![])?);
        let mut plain_map = Vec::with_capacity(m);
        for (i, text) in map_text.iter().enumerate() {
            let e = parse_expression(&plain, text)?;
            if !e.denominator().is_constant() {
                return Err(HypersurfaceError::NonPolynomialMap {
                    coordinate: ambient.coordinates()[i].clone(),
                });
            }
            plain_map.push(e);
        }
        let mut generators = Vec::new();
        for gen in ambient.generators() {
            let image = &plain_map[gen.base];
            if image.is_zero() {
                continue; // pulls back to the constant 1
            }
            match single_parameter(image) {
                Some(param_idx) => generators.push((
                    gen.name.clone(),
                    parameters[param_idx].clone(),
                    gen.rate.clone(),
                )),
                None => {
                    return Err(HypersurfaceError::GeneratorPullback {
                        generator: gen.name.clone(),
                    })
                }
            }
        }
        let params = Arc::new(Chart::new(parameters, generators)?);
        let mut map = Vec::with_capacity(m);
        for text in map_text {
            map.push(parse_expression(&params, text)?);
        }
        let mut symbol_images = map.clone();
        for gen in ambient.generators() {
            if map[gen.base].is_zero() {
                symbol_images.push(ScalarExpr::one(&params));
            } else {
                let sym = params
                    .lookup(&gen.name)
                    .expect("induced generator was declared");
                symbol_images.push(ScalarExpr::symbol(&params, sym));
            }
        }
        let jacobian = ExactMatrix::from_fn(&params, m, params.dim(), |a, i| {
            map[a].derivative(i)
        });
        if jacobian.rank() != params.dim() {
            return Err(HypersurfaceError::RankDeficient);
        }
        Ok(HypersurfaceEmbedding {
            ambient,
            params,
            map,
            symbol_images,
            jacobian,
        })
    }

    pub fn ambient(&self) -> &Arc<Chart> {
        &self.ambient
    }

    pub fn params(&self) -> &Arc<Chart> {
        &self.params
    }

    pub fn map(&self) -> &[ScalarExpr] {
        &self.map
    }

    pub fn jacobian(&self) -> &ExactMatrix {
        &self.jacobian
    }

    /// Composes an ambient expression with the embedding.
    pub fn pullback(&self, e: &ScalarExpr) -> Result<ScalarExpr, ExprError> {
        e.substitute(&self.params, &self.symbol_images)
    }

    /// Pulls back every component of an ambient field.
    pub fn pullback_field(&self, field: &[ScalarExpr]) -> Result<Vec<ScalarExpr>, ExprError> {
        field.iter().map(|c| self.pullback(c)).collect()
    }

    /// Ambient components of a tangent field given by frame coefficients.
    pub fn pushforward(&self, tangent: &[ScalarExpr]) -> Vec<ScalarExpr> {
        self.jacobian.mul_vector(tangent)
    }
}

/// Recognizes an expression that is exactly one parameter symbol.
fn single_parameter(e: &ScalarExpr) -> Option<usize> {
    if !e.denominator().is_constant() {
        return None;
    }
    let terms = e.numerator().terms();
    if terms.len() != 1 {
        return None;
    }
    let (mono, coeff) = &terms[0];
    if !coeff.eq(&num::BigRational::from_integer(1.into())) {
        return None;
    }
    let mut nonzero = mono.iter().enumerate().filter(|(_, &e)| e > 0);
    match (nonzero.next(), nonzero.next()) {
        (Some((idx, &1)), None) => Some(idx),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigRational;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn warped_chart() -> Arc<Chart> {
        Arc::new(Chart::new(vec!["x", "y", "z"], vec![("e2z", "z", rat(2))]).unwrap())
    }

    fn strs(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn builds_jacobian_and_induced_generators() {
        let ambient = warped_chart();
        let emb = HypersurfaceEmbedding::new(
            ambient.clone(),
            vec!["x".into(), "z".into()],
            &strs(&["x", "x", "z"]),
        )
        .unwrap();
        assert_eq!(emb.params().dim(), 2);
        assert_eq!(emb.params().generators().len(), 1);
        assert_eq!(emb.params().generators()[0].base, 1);
        // pushforward of d/dx is d/dx + d/dy
        let one = ScalarExpr::one(emb.params());
        assert_eq!(emb.jacobian().get(0, 0), &one);
        assert_eq!(emb.jacobian().get(1, 0), &one);
        assert!(emb.jacobian().get(2, 0).is_zero());
        // pullback of e2z * (x - y) vanishes on x = y
        let e = parse_expression(&ambient, "e2z*(x - y)").unwrap();
        assert!(emb.pullback(&e).unwrap().is_zero());
        let e = parse_expression(&ambient, "e2z*x^2").unwrap();
        let expected = parse_expression(emb.params(), "e2z*x^2").unwrap();
        assert_eq!(emb.pullback(&e).unwrap(), expected);
    }

    #[test]
    fn generator_base_may_collapse_to_zero() {
        let ambient = warped_chart();
        let emb = HypersurfaceEmbedding::new(
            ambient.clone(),
            vec!["u".into(), "v".into()],
            &strs(&["u", "v", "0"]),
        )
        .unwrap();
        assert!(emb.params().generators().is_empty());
        let e = parse_expression(&ambient, "e2z + x").unwrap();
        let expected = parse_expression(emb.params(), "u + 1").unwrap();
        assert_eq!(emb.pullback(&e).unwrap(), expected);
    }

    #[test]
    fn rejects_bad_embeddings() {
        let ambient = warped_chart();
        assert!(matches!(
            HypersurfaceEmbedding::new(
                ambient.clone(),
                vec!["u".into(), "v".into()],
                &strs(&["u", "v", "u + v"]),
            )
            .unwrap_err(),
            HypersurfaceError::GeneratorPullback { .. }
        ));
        assert!(matches!(
            HypersurfaceEmbedding::new(
                ambient.clone(),
                vec!["u".into(), "v".into()],
                &strs(&["u", "u", "0"]),
            )
            .unwrap_err(),
            HypersurfaceError::RankDeficient
        ));
        assert!(matches!(
            HypersurfaceEmbedding::new(
                ambient.clone(),
                vec!["u".into(), "v".into()],
                &strs(&["u", "v"]),
            )
            .unwrap_err(),
            HypersurfaceError::WrongMapLength { .. }
        ));
        assert!(matches!(
            HypersurfaceEmbedding::new(
                ambient,
                vec!["u".into(), "v".into()],
                &strs(&["u", "1/v", "0"]),
            )
            .unwrap_err(),
            HypersurfaceError::NonPolynomialMap { .. }
        ));
    }
}
