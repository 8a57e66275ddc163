//! Rational functions in canonical form: the coefficient field of the engine.

use std::fmt;
use std::sync::Arc;

use num::{BigRational, One, Signed, Zero};
use thiserror::Error;

use super::chart::Chart;
use super::poly::{gcd, Poly};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("pole: denominator vanishes at the evaluation point")]
    Pole,
    #[error("missing value for symbol `{0}`")]
    MissingSymbol(String),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExprError {
    #[error("division by the zero expression")]
    ZeroDivision,
    #[error("denominator vanishes identically after substitution")]
    SubstitutionPole,
}

/// An exact element of the fraction field of the chart's polynomial ring.
///
/// Canonical form: numerator and denominator are divided by their
/// polynomial gcd and the denominator's grlex-leading coefficient is
/// scaled to +1, so structural equality decides mathematical equality
/// and an expression is zero iff its numerator is the zero polynomial.
#[derive(Debug, Clone)]
pub struct ScalarExpr {
    chart: Arc<Chart>,
    num: Poly,
    den: Poly,
}

impl PartialEq for ScalarExpr {
    fn eq(&self, other: &Self) -> bool {
        self.compatible(other) && self.num == other.num && self.den == other.den
    }
}
impl Eq for ScalarExpr {}

impl ScalarExpr {
    fn canonical(chart: Arc<Chart>, num: Poly, den: Poly) -> Result<ScalarExpr, ExprError> {
        if den.is_zero() {
            return Err(ExprError::ZeroDivision);
        }
        if num.is_zero() {
            let n = chart.num_symbols();
            return Ok(ScalarExpr {
                chart,
                num: Poly::zero(n),
                den: Poly::one(n),
            });
        }
        let g = gcd(&num, &den);
        let num = num.div_exact(&g).expect("gcd divides numerator");
        let den = den.div_exact(&g).expect("gcd divides denominator");
        let lc = den.leading_coeff().recip();
        Ok(ScalarExpr {
            chart,
            num: num.scale(&lc),
            den: den.scale(&lc),
        })
    }

    pub fn from_poly(chart: Arc<Chart>, num: Poly) -> ScalarExpr {
        let one = Poly::one(chart.num_symbols());
        ScalarExpr::canonical(chart, num, one).expect("unit denominator")
    }

    pub fn from_ratio(chart: Arc<Chart>, num: Poly, den: Poly) -> Result<ScalarExpr, ExprError> {
        ScalarExpr::canonical(chart, num, den)
    }

    pub fn zero(chart: &Arc<Chart>) -> ScalarExpr {
        ScalarExpr::from_poly(chart.clone(), Poly::zero(chart.num_symbols()))
    }

    pub fn one(chart: &Arc<Chart>) -> ScalarExpr {
        ScalarExpr::from_poly(chart.clone(), Poly::one(chart.num_symbols()))
    }

    pub fn constant(chart: &Arc<Chart>, c: BigRational) -> ScalarExpr {
        ScalarExpr::from_poly(chart.clone(), Poly::constant(chart.num_symbols(), c))
    }

    pub fn from_int(chart: &Arc<Chart>, n: i64) -> ScalarExpr {
        ScalarExpr::constant(chart, BigRational::from_integer(n.into()))
    }

    /// The expression for a declared symbol (coordinate or generator).
    pub fn symbol(chart: &Arc<Chart>, sym: usize) -> ScalarExpr {
        ScalarExpr::from_poly(chart.clone(), Poly::symbol(chart.num_symbols(), sym))
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    /// The constant value when the expression is a rational constant.
    pub fn as_constant(&self) -> Option<BigRational> {
        if self.num.is_constant() && self.den.is_constant() {
            Some(self.num.leading_coeff() / self.den.leading_coeff())
        } else {
            None
        }
    }

    fn compatible(&self, other: &ScalarExpr) -> bool {
        Arc::ptr_eq(&self.chart, &other.chart) || self.chart == other.chart
    }

    fn check_compatible(&self, other: &ScalarExpr) {
        assert!(
            self.compatible(other),
            "expressions from different charts cannot be combined"
        );
    }

    /// Normalizes an already-reduced fraction (coprime numerator and
    /// denominator) by scaling the denominator's leading coefficient to +1.
    fn reduced(chart: Arc<Chart>, num: Poly, den: Poly) -> ScalarExpr {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            let n = chart.num_symbols();
            return ScalarExpr {
                chart,
                num: Poly::zero(n),
                den: Poly::one(n),
            };
        }
        let lc = den.leading_coeff().recip();
        ScalarExpr {
            chart,
            num: num.scale(&lc),
            den: den.scale(&lc),
        }
    }

    pub fn add(&self, other: &ScalarExpr) -> ScalarExpr {
        self.check_compatible(other);
        // denominators often coincide or are coprime; reduce against their
        // gcd only, which keeps the expensive polynomial gcds small
        if self.den == other.den {
            let num = self.num.add(&other.num);
            let g = gcd(&num, &self.den);
            if g.is_constant() {
                return ScalarExpr::reduced(self.chart.clone(), num, self.den.clone());
            }
            return ScalarExpr::reduced(
                self.chart.clone(),
                num.div_exact(&g).expect("gcd divides"),
                self.den.div_exact(&g).expect("gcd divides"),
            );
        }
        let g = gcd(&self.den, &other.den);
        if g.is_constant() {
            let num = self
                .num
                .mul(&other.den)
                .add(&other.num.mul(&self.den));
            let den = self.den.mul(&other.den);
            return ScalarExpr::reduced(self.chart.clone(), num, den);
        }
        let self_cof = self.den.div_exact(&g).expect("gcd divides");
        let other_cof = other.den.div_exact(&g).expect("gcd divides");
        let num = self
            .num
            .mul(&other_cof)
            .add(&other.num.mul(&self_cof));
        let g2 = gcd(&num, &g);
        let (num, den) = if g2.is_constant() {
            (num, self.den.mul(&other_cof))
        } else {
            (
                num.div_exact(&g2).expect("gcd divides"),
                self.den
                    .div_exact(&g2)
                    .expect("gcd divides")
                    .mul(&other_cof),
            )
        };
        ScalarExpr::reduced(self.chart.clone(), num, den)
    }

    pub fn sub(&self, other: &ScalarExpr) -> ScalarExpr {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> ScalarExpr {
        ScalarExpr {
            chart: self.chart.clone(),
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &ScalarExpr) -> ScalarExpr {
        self.check_compatible(other);
        if self.is_zero() || other.is_zero() {
            return ScalarExpr::zero(&self.chart);
        }
        // cross-reduce before multiplying; the product is then coprime
        let g1 = gcd(&self.num, &other.den);
        let g2 = gcd(&other.num, &self.den);
        let (a, d) = if g1.is_constant() {
            (self.num.clone(), other.den.clone())
        } else {
            (
                self.num.div_exact(&g1).expect("gcd divides"),
                other.den.div_exact(&g1).expect("gcd divides"),
            )
        };
        let (c, b) = if g2.is_constant() {
            (other.num.clone(), self.den.clone())
        } else {
            (
                other.num.div_exact(&g2).expect("gcd divides"),
                self.den.div_exact(&g2).expect("gcd divides"),
            )
        };
        ScalarExpr::reduced(self.chart.clone(), a.mul(&c), b.mul(&d))
    }

    pub fn div(&self, other: &ScalarExpr) -> Result<ScalarExpr, ExprError> {
        self.check_compatible(other);
        Ok(self.mul(&other.recip()?))
    }

    pub fn recip(&self) -> Result<ScalarExpr, ExprError> {
        if self.is_zero() {
            return Err(ExprError::ZeroDivision);
        }
        Ok(ScalarExpr::reduced(
            self.chart.clone(),
            self.den.clone(),
            self.num.clone(),
        ))
    }

    pub fn pow(&self, n: i64) -> Result<ScalarExpr, ExprError> {
        if n >= 0 {
            // powers of a reduced fraction stay reduced
            Ok(ScalarExpr::reduced(
                self.chart.clone(),
                self.num.pow(n as u32),
                self.den.pow(n as u32),
            ))
        } else {
            self.recip()?.pow(-n)
        }
    }

    pub fn scale(&self, c: &BigRational) -> ScalarExpr {
        ScalarExpr::canonical(self.chart.clone(), self.num.scale(c), self.den.clone())
            .expect("nonzero denominator")
    }

    /// Exact partial derivative with respect to a coordinate (quotient rule).
    pub fn derivative(&self, coord: usize) -> ScalarExpr {
        let dn = self.num.derivative(&self.chart, coord);
        let dd = self.den.derivative(&self.chart, coord);
        let num = dn.mul(&self.den).sub(&self.num.mul(&dd));
        let den = self.den.mul(&self.den);
        ScalarExpr::canonical(self.chart.clone(), num, den).expect("nonzero denominator")
    }

    /// Exact evaluation with every symbol assigned (generators included,
    /// as independent rational values).
    pub fn eval_exact(&self, values: &[BigRational]) -> Result<BigRational, EvalError> {
        let d = self.den.eval(values);
        if d.is_zero() {
            return Err(EvalError::Pole);
        }
        Ok(self.num.eval(values) / d)
    }

    /// Floating-point evaluation at a coordinate point; generators evaluate
    /// to exp(rate * coordinate). `None` when the denominator is numerically
    /// too close to a pole.
    pub fn eval_f64(&self, point: &[f64]) -> Option<f64> {
        let d = self.den.eval_f64(&self.chart, point);
        if !d.is_finite() || d.abs() < 1e-9 {
            return None;
        }
        Some(self.num.eval_f64(&self.chart, point) / d)
    }

    /// Composes the expression with a symbol assignment into another chart.
    /// `values[sym]` is the image of symbol `sym` of this chart.
    pub fn substitute(
        &self,
        target: &Arc<Chart>,
        values: &[ScalarExpr],
    ) -> Result<ScalarExpr, ExprError> {
        assert_eq!(values.len(), self.chart.num_symbols());
        let num = substitute_poly(&self.num, target, values);
        let den = substitute_poly(&self.den, target, values);
        if den.is_zero() {
            return Err(ExprError::SubstitutionPole);
        }
        num.div(&den)
    }
}

fn substitute_poly(p: &Poly, target: &Arc<Chart>, values: &[ScalarExpr]) -> ScalarExpr {
    let mut total = ScalarExpr::zero(target);
    for (mono, coeff) in p.terms() {
        let mut term = ScalarExpr::constant(target, coeff.clone());
        for (sym, &e) in mono.iter().enumerate() {
            if e > 0 {
                term = term.mul(&values[sym].pow(e as i64).expect("nonnegative power"));
            }
        }
        total = total.add(&term);
    }
    total
}

// ---------------------------------------------------------------------------
// Printing. The output re-parses to the same canonical expression.
// ---------------------------------------------------------------------------

impl fmt::Display for ScalarExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            debug_assert!(self.den.leading_coeff().is_one());
            write_poly(f, &self.num, &self.chart)
        } else {
            write!(f, "(")?;
            write_poly(f, &self.num, &self.chart)?;
            write!(f, ")/(")?;
            write_poly(f, &self.den, &self.chart)?;
            write!(f, ")")
        }
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, r: &BigRational) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

fn write_poly(f: &mut fmt::Formatter<'_>, p: &Poly, chart: &Chart) -> fmt::Result {
    if p.is_zero() {
        return write!(f, "0");
    }
    for (i, (mono, coeff)) in p.terms().iter().enumerate() {
        let neg = coeff.is_negative();
        if i == 0 {
            if neg {
                write!(f, "-")?;
            }
        } else if neg {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        let abs = coeff.abs();
        let trivial_mono = mono.iter().all(|&e| e == 0);
        if trivial_mono {
            write_rational(f, &abs)?;
        } else {
            let mut lead = true;
            if !abs.is_one() {
                write_rational(f, &abs)?;
                lead = false;
            }
            for (sym, &e) in mono.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !lead {
                    write!(f, "*")?;
                }
                lead = false;
                write!(f, "{}", chart.symbol_name(sym))?;
                if e > 1 {
                    write!(f, "^{}", e)?;
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::FromPrimitive;

    fn rat(n: i64) -> BigRational {
        BigRational::from_i64(n).unwrap()
    }

    fn chart() -> Arc<Chart> {
        Arc::new(Chart::new(vec!["x", "y", "z"], vec![("e2z", "z", rat(2))]).unwrap())
    }

    #[test]
    fn canonical_form_reduces_fractions() {
        let c = chart();
        let x = ScalarExpr::symbol(&c, 0);
        let y = ScalarExpr::symbol(&c, 1);
        // (x^2 - y^2) / (x - y) == x + y
        let num = x.mul(&x).sub(&y.mul(&y));
        let den = x.sub(&y);
        let q = num.div(&den).unwrap();
        assert_eq!(q, x.add(&y));
        // denominator leading coefficient is +1 after normalization
        let e = ScalarExpr::one(&c)
            .div(&x.scale(&rat(-2)).add(&ScalarExpr::one(&c)))
            .unwrap();
        assert!(e.denominator().leading_coeff().is_one());
    }

    #[test]
    fn zero_test_is_structural() {
        let c = chart();
        let x = ScalarExpr::symbol(&c, 0);
        let y = ScalarExpr::symbol(&c, 1);
        let e = x.add(&y).mul(&x.sub(&y)).sub(&x.mul(&x)).add(&y.mul(&y));
        assert!(e.is_zero());
        assert_eq!(e, ScalarExpr::zero(&c));
    }

    #[test]
    fn division_by_zero_rejected() {
        let c = chart();
        let x = ScalarExpr::symbol(&c, 0);
        assert_eq!(
            x.div(&ScalarExpr::zero(&c)).unwrap_err(),
            ExprError::ZeroDivision
        );
    }

    #[test]
    fn quotient_rule() {
        let c = chart();
        let x = ScalarExpr::symbol(&c, 0);
        let y = ScalarExpr::symbol(&c, 1);
        // d/dx (x / y) = 1 / y
        let e = x.div(&y).unwrap();
        assert_eq!(e.derivative(0), ScalarExpr::one(&c).div(&y).unwrap());
        // d/dx (1 / x) = -1 / x^2
        let inv = x.recip().unwrap();
        let expected = ScalarExpr::from_int(&c, -1).div(&x.mul(&x)).unwrap();
        assert_eq!(inv.derivative(0), expected);
        // generator: d/dz (1/e2z) = -2/e2z
        let g = ScalarExpr::symbol(&c, 3);
        let e = g.recip().unwrap();
        assert_eq!(e.derivative(2), e.scale(&rat(-2)));
    }

    #[test]
    fn exact_evaluation_and_poles() {
        let c = chart();
        let x = ScalarExpr::symbol(&c, 0);
        let y = ScalarExpr::symbol(&c, 1);
        let z = ScalarExpr::symbol(&c, 2);
        // (x^2 - y)/z at x=2, y=1, z=3 -> 1
        let e = x.mul(&x).sub(&y).div(&z).unwrap();
        let vals = [rat(2), rat(1), rat(3), rat(1)];
        assert_eq!(e.eval_exact(&vals).unwrap(), rat(1));
        // 1/(x-1) at x=1 -> pole
        let p = ScalarExpr::one(&c)
            .div(&x.sub(&ScalarExpr::one(&c)))
            .unwrap();
        assert_eq!(
            p.eval_exact(&[rat(1), rat(0), rat(0), rat(1)]).unwrap_err(),
            EvalError::Pole
        );
    }

    #[test]
    fn display_round_trips_sign_and_fraction() {
        let c = chart();
        let x = ScalarExpr::symbol(&c, 0);
        let y = ScalarExpr::symbol(&c, 1);
        let e = y.neg().add(&x.mul(&x));
        assert_eq!(e.to_string(), "x^2 - y");
        let half = ScalarExpr::constant(&c, BigRational::new(1.into(), 2.into()));
        let e = half.mul(&x).neg();
        assert_eq!(e.to_string(), "-1/2*x");
        let q = x.div(&y.add(&ScalarExpr::one(&c))).unwrap();
        assert_eq!(q.to_string(), "(x)/(y + 1)");
    }

    #[test]
    fn substitution_composes() {
        let ambient = chart();
        let params = Arc::new(Chart::new(vec!["u", "v"], vec![("e2v", "v", rat(2))]).unwrap());
        let u = ScalarExpr::symbol(&params, 0);
        let v = ScalarExpr::symbol(&params, 1);
        let gen = ScalarExpr::symbol(&params, 2);
        // x -> u, y -> u, z -> v, e2z -> e2v
        let values = [u.clone(), u.clone(), v, gen.clone()];
        let x = ScalarExpr::symbol(&ambient, 0);
        let y = ScalarExpr::symbol(&ambient, 1);
        let g = ScalarExpr::symbol(&ambient, 3);
        let e = x.mul(&g).sub(&y.mul(&g));
        let pulled = e.substitute(&params, &values).unwrap();
        assert!(pulled.is_zero());
        let e = x.mul(&x).mul(&g);
        let pulled = e.substitute(&params, &values).unwrap();
        assert_eq!(pulled, u.mul(&u).mul(&gen));
    }
}
