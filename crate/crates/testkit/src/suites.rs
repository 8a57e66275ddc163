//! Seed-fixed randomized property suites. Each suite returns `Ok(())` after
//! running its full case budget, or a description of the first failing case.

use std::sync::Arc;

use num::{BigRational, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use paralight_core::numeric::{verify_christoffel_fd, verify_curvature_fd};
use paralight_core::report::CheckStatus;
use paralight_core::scalar::poly::Poly;
use paralight_core::scalar::{Chart, ExactMatrix, ScalarExpr};
use paralight_core::tensor::MetricTensor;

use crate::fixtures;
use crate::oracle::minor_rank;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn test_chart() -> Arc<Chart> {
    Arc::new(Chart::new(vec!["x", "y", "z"], vec![("e2z", "z", rat(2))]).unwrap())
}

/// A random polynomial with up to `terms` terms, exponents at most 2 and
/// coefficients in [-3, 3].
fn random_poly(chart: &Arc<Chart>, rng: &mut ChaCha20Rng, terms: usize) -> ScalarExpr {
    let nsyms = chart.num_symbols();
    let mut acc = Poly::zero(nsyms);
    for _ in 0..terms {
        let coeff = rat(rng.gen_range(-3i64..=3));
        if coeff.is_zero() {
            continue;
        }
        let mono: Vec<u32> = (0..nsyms).map(|_| rng.gen_range(0u32..=2) % 2).collect();
        acc = acc.add(&Poly::from_terms(nsyms, vec![(mono, coeff)]));
    }
    ScalarExpr::from_poly(chart.clone(), acc)
}

/// Leibniz rule, commuting partials and evaluation homomorphism for the
/// exact scalar field.
pub fn exact_field_suite(cases: usize, seed: u64) -> Result<(), String> {
    let chart = test_chart();
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    for case in 0..cases {
        let f = random_poly(&chart, &mut rng, 4);
        let g = random_poly(&chart, &mut rng, 4);
        let v = rng.gen_range(0..chart.dim());
        // d(f g) = df g + f dg
        let lhs = f.mul(&g).derivative(v);
        let rhs = f.derivative(v).mul(&g).add(&f.mul(&g.derivative(v)));
        if lhs != rhs {
            return Err(format!("case {case}: Leibniz failed for ({f}) * ({g})"));
        }
        // partials commute
        let w = rng.gen_range(0..chart.dim());
        if f.derivative(v).derivative(w) != f.derivative(w).derivative(v) {
            return Err(format!("case {case}: partials do not commute on {f}"));
        }
        // evaluation is a ring homomorphism at non-pole points
        let point: Vec<BigRational> = (0..chart.num_symbols())
            .map(|_| BigRational::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=4).into()))
            .collect();
        let ef = f.eval_exact(&point).unwrap();
        let eg = g.eval_exact(&point).unwrap();
        if f.add(&g).eval_exact(&point).unwrap() != &ef + &eg {
            return Err(format!("case {case}: eval not additive"));
        }
        if f.mul(&g).eval_exact(&point).unwrap() != &ef * &eg {
            return Err(format!("case {case}: eval not multiplicative"));
        }
    }
    Ok(())
}

/// Nullspace and rank against the determinant-minor oracle on random
/// matrices up to 5x5 with small polynomial entries.
pub fn nullspace_oracle_suite(cases: usize, seed: u64) -> Result<(), String> {
    let chart = test_chart();
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    for case in 0..cases {
        let rows = rng.gen_range(1..=5);
        let cols = rng.gen_range(1..=5);
        let m = ExactMatrix::from_fn(&chart, rows, cols, |_, _| {
            if rng.gen_bool(0.45) {
                ScalarExpr::zero(&chart)
            } else {
                random_poly(&chart, &mut rng, 2)
            }
        });
        let (rank, basis) = m.rank_nullspace();
        let expected = minor_rank(&m);
        if rank != expected {
            return Err(format!("case {case}: rank {rank} but oracle says {expected}"));
        }
        if basis.len() != cols - rank {
            return Err(format!("case {case}: nullity mismatch"));
        }
        for v in &basis {
            if m.mul_vector(v).iter().any(|c| !c.is_zero()) {
                return Err(format!("case {case}: nullspace vector not annihilated"));
            }
        }
        if !basis.is_empty() {
            let b = ExactMatrix::from_fn(&chart, cols, basis.len(), |i, j| basis[j][i].clone());
            if minor_rank(&b) != basis.len() {
                return Err(format!("case {case}: nullspace basis is dependent"));
            }
        }
    }
    Ok(())
}

/// Metric compatibility and torsion-freeness of the connection for random
/// polynomial perturbations of the reference metrics that stay
/// nondegenerate.
pub fn connection_property_suite(cases: usize, seed: u64) -> Result<(), String> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let small = fixtures::para_sasakian_r3();
    let big = fixtures::invariant_r5();
    for case in 0..cases {
        // larger charts are exercised on a fraction of the budget
        let base = if case % 5 == 0 {
            big.structure.metric()
        } else {
            small.structure.metric()
        };
        let chart = base.chart().clone();
        let m = chart.dim();
        let mut matrix = base.matrix().clone();
        // perturb one or two entries symmetrically by small linear terms
        for _ in 0..rng.gen_range(1..=2) {
            let i = rng.gen_range(0..m);
            let j = rng.gen_range(0..m);
            let delta = random_linear(&chart, &mut rng);
            let vij = matrix.get(i, j).add(&delta);
            matrix.set(i, j, vij);
            if i != j {
                let vji = matrix.get(j, i).add(&delta);
                matrix.set(j, i, vji);
            }
        }
        let Ok(metric) = MetricTensor::new(chart.clone(), matrix) else {
            continue; // perturbation degenerated; skip the case
        };
        let gamma = metric.christoffel();
        for k in 0..m {
            for i in 0..m {
                for j in 0..m {
                    if gamma[k][i][j] != gamma[k][j][i] {
                        return Err(format!("case {case}: torsion at {k}{i}{j}"));
                    }
                }
            }
        }
        for k in 0..m {
            for i in 0..m {
                for j in 0..m {
                    let mut r = metric.entry(i, j).derivative(k);
                    for l in 0..m {
                        r = r
                            .sub(&gamma[l][k][i].mul(metric.entry(l, j)))
                            .sub(&gamma[l][k][j].mul(metric.entry(i, l)));
                    }
                    if !r.is_zero() {
                        return Err(format!(
                            "case {case}: metric compatibility violated at {k}{i}{j}"
                        ));
                    }
                }
            }
        }
    }
    Ok(())
}

fn random_linear(chart: &Arc<Chart>, rng: &mut ChaCha20Rng) -> ScalarExpr {
    let nsyms = chart.num_symbols();
    let mut acc = Poly::constant(nsyms, rat(rng.gen_range(-1i64..=1)));
    let coord = rng.gen_range(0..chart.dim());
    let coeff = rat(rng.gen_range(-1i64..=1));
    if !coeff.is_zero() {
        let mut mono = vec![0u32; nsyms];
        mono[coord] = 1;
        acc = acc.add(&Poly::from_terms(nsyms, vec![(mono, coeff)]));
    }
    ScalarExpr::from_poly(chart.clone(), acc)
}

/// Finite-difference agreement of the symbolic connection and curvature on
/// the reference metrics; the total point budget is split between the two.
pub fn fd_agreement_suite(points: usize, seed: u64) -> Result<(), String> {
    let r3 = fixtures::para_sasakian_r3();
    let r5 = fixtures::invariant_r5();
    let gamma_points = points * 3 / 4;
    let curv_points = points - gamma_points;
    for (name, metric, budget) in [
        ("warped r3 connection", r3.structure.metric(), gamma_points / 2),
        ("indefinite r5 connection", r5.structure.metric(), gamma_points - gamma_points / 2),
    ] {
        let rec = verify_christoffel_fd(metric, budget, seed);
        if rec.status != CheckStatus::Pass {
            return Err(format!("{name}: finite differences disagree"));
        }
    }
    for (name, metric, budget) in [
        ("warped r3 curvature", r3.structure.metric(), curv_points / 2),
        ("indefinite r5 curvature", r5.structure.metric(), curv_points - curv_points / 2),
    ] {
        let rec = verify_curvature_fd(metric, budget, seed);
        if rec.status != CheckStatus::Pass {
            return Err(format!("{name}: finite differences disagree"));
        }
    }
    Ok(())
}
