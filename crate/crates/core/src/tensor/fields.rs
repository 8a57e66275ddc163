//! Component arithmetic for vector fields, one-forms and (1,1) tensors on a
//! coordinate chart. Components are exact scalar expressions; a field is a
//! plain vector of them in coordinate order.

use std::sync::Arc;

use crate::scalar::{Chart, ExactMatrix, ScalarExpr};

pub type VectorField = Vec<ScalarExpr>;
pub type OneForm = Vec<ScalarExpr>;

pub fn zero_field(chart: &Arc<Chart>, len: usize) -> VectorField {
    vec![ScalarExpr::zero(chart); len]
}

pub fn basis_field(chart: &Arc<Chart>, len: usize, idx: usize) -> VectorField {
    let mut v = zero_field(chart, len);
    v[idx] = ScalarExpr::one(chart);
    v
}

pub fn field_add(a: &[ScalarExpr], b: &[ScalarExpr]) -> VectorField {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
}

pub fn field_sub(a: &[ScalarExpr], b: &[ScalarExpr]) -> VectorField {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x.sub(y)).collect()
}

pub fn field_neg(a: &[ScalarExpr]) -> VectorField {
    a.iter().map(ScalarExpr::neg).collect()
}

pub fn field_scale(a: &[ScalarExpr], c: &ScalarExpr) -> VectorField {
    a.iter().map(|x| x.mul(c)).collect()
}

pub fn field_is_zero(a: &[ScalarExpr]) -> bool {
    a.iter().all(ScalarExpr::is_zero)
}

/// Pairing of a one-form with a vector field.
pub fn pair(form: &[ScalarExpr], field: &[ScalarExpr]) -> ScalarExpr {
    debug_assert_eq!(form.len(), field.len());
    let mut acc = ScalarExpr::zero(form[0].chart());
    for (w, v) in form.iter().zip(field) {
        acc = acc.add(&w.mul(v));
    }
    acc
}

/// Directional derivative of a scalar along a vector field.
pub fn directional_derivative(x: &[ScalarExpr], f: &ScalarExpr) -> ScalarExpr {
    let mut acc = ScalarExpr::zero(f.chart());
    for (coord, xi) in x.iter().enumerate() {
        if !xi.is_zero() {
            acc = acc.add(&xi.mul(&f.derivative(coord)));
        }
    }
    acc
}

/// Coordinate-chart Lie bracket: [X,Y]^k = X^i d_i Y^k - Y^i d_i X^k.
pub fn lie_bracket(x: &[ScalarExpr], y: &[ScalarExpr]) -> VectorField {
    debug_assert_eq!(x.len(), y.len());
    (0..x.len())
        .map(|k| directional_derivative(x, &y[k]).sub(&directional_derivative(y, &x[k])))
        .collect()
}

/// Applies a (1,1) tensor, stored as the matrix whose column `j` holds the
/// components of the image of the j-th coordinate field.
pub fn apply_tensor(t: &ExactMatrix, v: &[ScalarExpr]) -> VectorField {
    t.mul_vector(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::parse_expression;

    fn chart() -> Arc<Chart> {
        Arc::new(Chart::new(vec!["x", "y"], vec![]).unwrap())
    }

    #[test]
    fn coordinate_fields_commute() {
        let c = chart();
        let dx = basis_field(&c, 2, 0);
        let dy = basis_field(&c, 2, 1);
        assert!(field_is_zero(&lie_bracket(&dx, &dy)));
    }

    #[test]
    fn bracket_of_linear_field() {
        // [x d_y, d_x] = -d_y
        let c = chart();
        let x = parse_expression(&c, "x").unwrap();
        let xdy = vec![ScalarExpr::zero(&c), x];
        let dx = basis_field(&c, 2, 0);
        let bracket = lie_bracket(&xdy, &dx);
        assert!(bracket[0].is_zero());
        assert_eq!(bracket[1], ScalarExpr::from_int(&c, -1));
    }

    #[test]
    fn bracket_is_antisymmetric_and_leibniz() {
        let c = chart();
        let x = parse_expression(&c, "x*y").unwrap();
        let y = parse_expression(&c, "x + y^2").unwrap();
        let u = vec![x.clone(), y.clone()];
        let v = vec![y, x];
        let ab = lie_bracket(&u, &v);
        let ba = lie_bracket(&v, &u);
        assert!(field_is_zero(&field_add(&ab, &ba)));
        // [fX, Y] = f[X,Y] - Y(f) X
        let f = parse_expression(&c, "x^2 - y").unwrap();
        let lhs = lie_bracket(&field_scale(&u, &f), &v);
        let rhs = field_sub(
            &field_scale(&lie_bracket(&u, &v), &f),
            &field_scale(&u, &directional_derivative(&v, &f)),
        );
        assert_eq!(lhs, rhs);
    }
}
