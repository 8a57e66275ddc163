//! Multivariate polynomials with exact rational coefficients.
//!
//! Terms are kept sorted in descending graded-lexicographic order
//! (coordinates in declaration order, generators after them), with no zero
//! coefficients, so structural equality is mathematical equality.

use std::cmp::Ordering;

use num::bigint::BigInt;
use num::{BigRational, Integer, One, Signed, Zero};

use super::chart::Chart;

pub type Mono = Vec<u32>;

/// Graded-lexicographic order: total degree first, then lexicographic with
/// lower symbol indices more significant.
pub fn grlex(a: &Mono, b: &Mono) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    nsyms: usize,
    /// Sorted descending by `grlex`; coefficients nonzero.
    terms: Vec<(Mono, BigRational)>,
}

impl Poly {
    pub fn zero(nsyms: usize) -> Poly {
        Poly {
            nsyms,
            terms: Vec::new(),
        }
    }

    pub fn one(nsyms: usize) -> Poly {
        Poly::constant(nsyms, BigRational::one())
    }

    pub fn constant(nsyms: usize, c: BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero(nsyms);
        }
        Poly {
            nsyms,
            terms: vec![(vec![0; nsyms], c)],
        }
    }

    pub fn symbol(nsyms: usize, sym: usize) -> Poly {
        assert!(sym < nsyms);
        let mut mono = vec![0; nsyms];
        mono[sym] = 1;
        Poly {
            nsyms,
            terms: vec![(mono, BigRational::one())],
        }
    }

    /// Builds from possibly unsorted, possibly duplicated terms.
    pub fn from_terms(nsyms: usize, terms: Vec<(Mono, BigRational)>) -> Poly {
        let mut terms = terms;
        terms.sort_by(|a, b| grlex(&b.0, &a.0));
        let mut out: Vec<(Mono, BigRational)> = Vec::with_capacity(terms.len());
        for (mono, coeff) in terms {
            debug_assert_eq!(mono.len(), nsyms);
            match out.last_mut() {
                Some(last) if last.0 == mono => last.1 += coeff,
                _ => out.push((mono, coeff)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Poly { nsyms, terms: out }
    }

    pub fn nsyms(&self) -> usize {
        self.nsyms
    }

    pub fn terms(&self) -> &[(Mono, BigRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.iter().all(|(m, _)| m.iter().all(|&e| e == 0))
    }

    /// Leading (grlex-largest) coefficient; zero polynomial yields 0.
    pub fn leading_coeff(&self) -> BigRational {
        self.terms
            .first()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigRational::zero)
    }

    pub fn total_degree(&self) -> u64 {
        self.terms
            .iter()
            .map(|(m, _)| m.iter().map(|&e| e as u64).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, sym: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m[sym]).max().unwrap_or(0)
    }

    pub fn uses_symbol(&self, sym: usize) -> bool {
        self.terms.iter().any(|(m, _)| m[sym] > 0)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        debug_assert_eq!(self.nsyms, other.nsyms);
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match grlex(&self.terms[i].0, &other.terms[j].0) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &self.terms[i].1 + &other.terms[j].1;
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Poly {
            nsyms: self.nsyms,
            terms: out,
        }
    }

    pub fn neg(&self) -> Poly {
        Poly {
            nsyms: self.nsyms,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        debug_assert_eq!(self.nsyms, other.nsyms);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.nsyms);
        }
        let mut acc: Vec<(Mono, BigRational)> =
            Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let mono: Mono = ma.iter().zip(mb).map(|(&x, &y)| x + y).collect();
                acc.push((mono, ca * cb));
            }
        }
        Poly::from_terms(self.nsyms, acc)
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nsyms);
        }
        Poly {
            nsyms: self.nsyms,
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut result = Poly::one(self.nsyms);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Exact partial derivative with respect to a coordinate symbol,
    /// applying the generator rule d(exp(k*v))/dv = k*exp(k*v).
    pub fn derivative(&self, chart: &Chart, coord: usize) -> Poly {
        assert!(
            chart.is_coordinate(coord),
            "derivatives are taken with respect to coordinates only"
        );
        let mut acc = Vec::new();
        for (mono, coeff) in &self.terms {
            // power-rule part
            let e = mono[coord];
            if e > 0 {
                let mut m = mono.clone();
                m[coord] = e - 1;
                acc.push((m, coeff * BigRational::from(BigInt::from(e))));
            }
            // generator chain-rule parts
            for (gi, gen) in chart.generators().iter().enumerate() {
                let sym = chart.dim() + gi;
                let ge = mono[sym];
                if gen.base == coord && ge > 0 {
                    acc.push((
                        mono.clone(),
                        coeff * &gen.rate * BigRational::from(BigInt::from(ge)),
                    ));
                }
            }
        }
        Poly::from_terms(self.nsyms, acc)
    }

    /// Evaluates with every symbol (coordinates and generators) assigned.
    pub fn eval(&self, values: &[BigRational]) -> BigRational {
        assert_eq!(values.len(), self.nsyms);
        let mut total = BigRational::zero();
        for (mono, coeff) in &self.terms {
            let mut term = coeff.clone();
            for (sym, &e) in mono.iter().enumerate() {
                for _ in 0..e {
                    term *= &values[sym];
                }
            }
            total += term;
        }
        total
    }

    /// Floating-point evaluation at a coordinate point; generators evaluate
    /// to exp(rate * coordinate value).
    pub fn eval_f64(&self, chart: &Chart, point: &[f64]) -> f64 {
        assert_eq!(point.len(), chart.dim());
        let mut values = Vec::with_capacity(self.nsyms);
        values.extend_from_slice(point);
        for gen in chart.generators() {
            let rate = rational_to_f64(&gen.rate);
            values.push((rate * point[gen.base]).exp());
        }
        let mut total = 0.0;
        for (mono, coeff) in &self.terms {
            let mut term = rational_to_f64(coeff);
            for (sym, &e) in mono.iter().enumerate() {
                if e > 0 {
                    term *= values[sym].powi(e as i32);
                }
            }
            total += term;
        }
        total
    }

    /// Exact division; `None` when `other` does not divide `self`.
    pub fn div_exact(&self, other: &Poly) -> Option<Poly> {
        assert!(!other.is_zero(), "division by the zero polynomial");
        let mut rem = self.clone();
        let mut quot: Vec<(Mono, BigRational)> = Vec::new();
        let (lead_mono, lead_coeff) = &other.terms[0];
        while !rem.is_zero() {
            let (rm, rc) = &rem.terms[0];
            if !lead_mono.iter().zip(rm).all(|(&l, &r)| r >= l) {
                return None;
            }
            let mono: Mono = rm.iter().zip(lead_mono).map(|(&r, &l)| r - l).collect();
            let coeff = rc / lead_coeff;
            let t = Poly {
                nsyms: self.nsyms,
                terms: vec![(mono.clone(), coeff.clone())],
            };
            rem = rem.sub(&t.mul(other));
            quot.push((mono, coeff));
        }
        Some(Poly::from_terms(self.nsyms, quot))
    }

    /// Rescales to integer coefficients with content 1 and positive leading
    /// coefficient. Returns the primitive polynomial and the rational factor
    /// such that `self = factor * primitive`.
    pub fn primitive_integer(&self) -> (Poly, BigRational) {
        if self.is_zero() {
            return (self.clone(), BigRational::one());
        }
        let mut denom_lcm = BigInt::one();
        for (_, c) in &self.terms {
            denom_lcm = denom_lcm.lcm(c.denom());
        }
        let mut numer_gcd = BigInt::zero();
        for (_, c) in &self.terms {
            numer_gcd = numer_gcd.gcd(&(c.numer() * &denom_lcm / c.denom()));
        }
        let mut factor = BigRational::new(numer_gcd, denom_lcm);
        if self.terms[0].1.is_negative() {
            factor = -factor;
        }
        let inv = factor.recip();
        (self.scale(&inv), factor)
    }

    /// Coefficient of `v^k` viewed as a univariate polynomial in symbol `v`
    /// (the result does not involve `v`).
    fn coeff_in(&self, v: usize, k: u32) -> Poly {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m[v] == k)
            .map(|(m, c)| {
                let mut m = m.clone();
                m[v] = 0;
                (m, c.clone())
            })
            .collect();
        Poly::from_terms(self.nsyms, terms)
    }

    fn mono_pow(nsyms: usize, v: usize, k: u32) -> Poly {
        let mut m = vec![0; nsyms];
        m[v] = k;
        Poly {
            nsyms,
            terms: vec![(m, BigRational::one())],
        }
    }

    /// Content with respect to `v`: the gcd of the `v`-coefficients.
    fn content_in(&self, v: usize) -> Poly {
        let mut content = Poly::zero(self.nsyms);
        for k in 0..=self.degree_in(v) {
            let c = self.coeff_in(v, k);
            if !c.is_zero() {
                content = gcd(&content, &c);
                if content.is_constant() {
                    break;
                }
            }
        }
        content
    }

    /// Pseudo-remainder of `self` by `other` in the variable `v`.
    fn pseudo_rem(&self, other: &Poly, v: usize) -> Poly {
        let dg = other.degree_in(v);
        let lcg = other.coeff_in(v, dg);
        let mut rem = self.clone();
        while !rem.is_zero() && rem.degree_in(v) >= dg {
            let dr = rem.degree_in(v);
            let lr = rem.coeff_in(v, dr);
            let shift = Poly::mono_pow(self.nsyms, v, dr - dg);
            rem = lcg.mul(&rem).sub(&lr.mul(&shift).mul(other));
        }
        rem
    }
}

fn rational_to_f64(r: &BigRational) -> f64 {
    // Adequate for the small rationals this engine manipulates.
    let n: f64 = r.numer().to_string().parse().unwrap_or(f64::NAN);
    let d: f64 = r.denom().to_string().parse().unwrap_or(f64::NAN);
    n / d
}

impl Poly {
    /// Per-symbol minimum exponent over all terms.
    fn monomial_content(&self) -> Mono {
        let mut min = self.terms[0].0.clone();
        for (mono, _) in &self.terms[1..] {
            for (m, &e) in min.iter_mut().zip(mono) {
                *m = (*m).min(e);
            }
        }
        min
    }

    fn divide_monomial(&self, m: &Mono) -> Poly {
        Poly {
            nsyms: self.nsyms,
            terms: self
                .terms
                .iter()
                .map(|(mono, c)| {
                    (
                        mono.iter().zip(m).map(|(&e, &d)| e - d).collect(),
                        c.clone(),
                    )
                })
                .collect(),
        }
    }

    fn monomial_poly(nsyms: usize, m: Mono) -> Poly {
        Poly {
            nsyms,
            terms: vec![(m, BigRational::one())],
        }
    }
}

/// Polynomial gcd over the rationals, returned as a primitive
/// integer-coefficient polynomial with positive leading coefficient.
/// Nonzero constants are units, so the gcd of a constant with anything
/// nonzero is 1.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.primitive_integer().0;
    }
    if b.is_zero() {
        return a.primitive_integer().0;
    }
    let pa = a.primitive_integer().0;
    let pb = b.primitive_integer().0;
    if pa == pb {
        return pa;
    }
    if pa.is_constant() || pb.is_constant() {
        return Poly::one(a.nsyms);
    }
    // split off the common monomial factor first
    let ma = pa.monomial_content();
    let mb = pb.monomial_content();
    let common: Mono = ma.iter().zip(&mb).map(|(&x, &y)| x.min(y)).collect();
    let fa = pa.divide_monomial(&ma);
    let fb = pb.divide_monomial(&mb);
    let mono = Poly::monomial_poly(a.nsyms, common);
    if fa.is_constant() || fb.is_constant() {
        return mono;
    }
    if fa == fb {
        return mono.mul(&fa);
    }
    // cheap divisibility probes catch the exact-cofactor cases that
    // elimination produces constantly
    if fa.total_degree() <= fb.total_degree() && fb.div_exact(&fa).is_some() {
        return mono.mul(&fa);
    }
    if fb.total_degree() <= fa.total_degree() && fa.div_exact(&fb).is_some() {
        return mono.mul(&fb);
    }
    mono.mul(&gcd_primitive(fa, fb)).primitive_integer().0
}

fn gcd_primitive(a: Poly, b: Poly) -> Poly {
    let nsyms = a.nsyms;
    if a.is_constant() || b.is_constant() {
        return Poly::one(nsyms);
    }
    // main variable: a shared symbol with the smallest degree bound; with
    // no shared symbol the gcd is a unit
    let v = (0..nsyms)
        .filter(|&s| a.uses_symbol(s) && b.uses_symbol(s))
        .min_by_key(|&s| a.degree_in(s).max(b.degree_in(s)));
    let Some(v) = v else {
        return Poly::one(nsyms);
    };
    let ca = a.content_in(v);
    let cb = b.content_in(v);
    let cg = gcd(&ca, &cb);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");

    let (mut f, mut g) = if pa.degree_in(v) >= pb.degree_in(v) {
        (pa, pb)
    } else {
        (pb, pa)
    };
    loop {
        let r = f.pseudo_rem(&g, v);
        if r.is_zero() {
            break;
        }
        if r.degree_in(v) == 0 {
            g = Poly::one(nsyms);
            break;
        }
        f = g;
        let content = r.content_in(v);
        g = r.div_exact(&content).expect("content divides");
    }
    cg.mul(&g).primitive_integer().0
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::FromPrimitive;

    fn rat(n: i64) -> BigRational {
        BigRational::from_i64(n).unwrap()
    }

    fn chart3() -> Chart {
        Chart::new(vec!["x", "y", "z"], vec![("e2z", "z", rat(2))]).unwrap()
    }

    fn x() -> Poly {
        Poly::symbol(4, 0)
    }
    fn y() -> Poly {
        Poly::symbol(4, 1)
    }
    fn z() -> Poly {
        Poly::symbol(4, 2)
    }
    fn g() -> Poly {
        Poly::symbol(4, 3)
    }

    #[test]
    fn grlex_orders_by_degree_then_lex() {
        assert_eq!(grlex(&vec![2, 0], &vec![0, 2]), Ordering::Greater);
        assert_eq!(grlex(&vec![1, 0], &vec![0, 2]), Ordering::Less);
        assert_eq!(grlex(&vec![1, 1], &vec![1, 1]), Ordering::Equal);
    }

    #[test]
    fn arithmetic_and_cancellation() {
        let p = x().mul(&x()).sub(&y()); // x^2 - y
        let q = p.add(&y()); // x^2
        assert_eq!(q, x().pow(2));
        assert!(p.sub(&p).is_zero());
        let prod = p.mul(&p);
        assert_eq!(prod.total_degree(), 4);
    }

    #[test]
    fn derivative_rules() {
        let chart = chart3();
        // d/dx (x^2 z / 2) = x z
        let p = x().pow(2).mul(&z()).scale(&BigRational::new(1.into(), 2.into()));
        assert_eq!(p.derivative(&chart, 0), x().mul(&z()));
        // d/dy (-y) = -1
        assert_eq!(y().neg().derivative(&chart, 1), Poly::constant(4, rat(-1)));
        // generator rule: d/dz e2z = 2 e2z
        assert_eq!(g().derivative(&chart, 2), g().scale(&rat(2)));
        // product with generator: d/dz (z * e2z) = e2z + 2 z e2z
        let p = z().mul(&g());
        assert_eq!(p.derivative(&chart, 2), g().add(&p.scale(&rat(2))));
    }

    #[test]
    fn exact_division_and_gcd() {
        let p = x().add(&y()); // x + y
        let q = x().sub(&y()); // x - y
        let prod = p.mul(&q);
        assert_eq!(prod.div_exact(&p).unwrap(), q);
        assert!(p.mul(&p).div_exact(&q).is_none());

        let a = p.mul(&p).mul(&q);
        let b = p.mul(&q).mul(&q);
        let d = gcd(&a, &b);
        assert_eq!(d, p.mul(&q));

        // coprime
        assert_eq!(gcd(&p, &q), Poly::one(4));
        // gcd with constants is a unit
        assert_eq!(gcd(&Poly::constant(4, rat(6)), &p), Poly::one(4));
        // content handling with rational coefficients
        let a = p.scale(&BigRational::new(3.into(), 2.into()));
        assert_eq!(gcd(&a, &p), p);
    }

    #[test]
    fn primitive_integer_normalization() {
        let p = x().scale(&BigRational::new(3.into(), 4.into())).sub(&y().scale(&BigRational::new(9.into(), 2.into())));
        let (prim, factor) = p.primitive_integer();
        assert_eq!(prim.scale(&factor), p);
        assert_eq!(prim, x().sub(&y().scale(&rat(6))));
    }

    #[test]
    fn evaluation() {
        let p = x().pow(2).sub(&y()); // x^2 - y
        let v = p.eval(&[rat(2), rat(1), rat(0), rat(1)]);
        assert_eq!(v, rat(3));
        let chart = chart3();
        let f = g().eval_f64(&chart, &[0.0, 0.0, 0.5]);
        assert!((f - 1.0f64.exp()).abs() < 1e-12);
    }
}
