//! Check records shared by every verification stage, and the deterministic
//! witness-point search attached to failing checks.

use std::sync::Arc;
use std::time::Instant;

use num::{BigRational, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::scalar::{Chart, ScalarExpr};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    HypothesisNotSatisfied,
    Skipped,
}

impl CheckStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::HypothesisNotSatisfied => "hypothesis_not_satisfied",
            CheckStatus::Skipped => "skipped",
        }
    }
}

/// A rational assignment to every chart symbol on which a failing residual
/// evaluates to a nonzero rational.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub assignment: Vec<(String, BigRational)>,
    pub value: BigRational,
}

#[derive(Debug, Clone)]
pub struct CheckRecord {
    pub name: String,
    /// Stable identity tag of the verified equation; empty for
    /// engine-level consistency checks.
    pub tag: String,
    pub status: CheckStatus,
    pub residual: Option<String>,
    pub witness: Option<Witness>,
    pub millis: u64,
}

impl CheckRecord {
    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }
}

/// Ordered list of check outcomes produced by one verification stage.
#[derive(Debug, Clone, Default)]
pub struct AxiomReport {
    pub records: Vec<CheckRecord>,
}

impl AxiomReport {
    pub fn all_passed(&self) -> bool {
        self.records.iter().all(CheckRecord::passed)
    }

    pub fn record(&self, name: &str) -> Option<&CheckRecord> {
        self.records.iter().find(|r| r.name == name)
    }

    pub fn push(&mut self, record: CheckRecord) {
        self.records.push(record);
    }

    /// Marks every record of a stage whose mathematical hypothesis is not
    /// satisfied, without evaluating anything.
    pub fn hypothesis_not_satisfied(names_tags: &[(&str, &str)]) -> AxiomReport {
        AxiomReport {
            records: names_tags
                .iter()
                .map(|(name, tag)| CheckRecord {
                    name: name.to_string(),
                    tag: tag.to_string(),
                    status: CheckStatus::HypothesisNotSatisfied,
                    residual: None,
                    witness: None,
                    millis: 0,
                })
                .collect(),
        }
    }
}

/// Searches small rational points falsifying a residual: first the integer
/// grid {-2,-1,1,2}^n, then seeded random rationals. Generator symbols only
/// take positive values. A witness must avoid the residual's poles.
#[derive(Debug, Clone)]
pub struct WitnessSearcher {
    pub seed: u64,
}

impl WitnessSearcher {
    pub fn new(seed: u64) -> WitnessSearcher {
        WitnessSearcher { seed }
    }

    pub fn find(&self, residual: &ScalarExpr) -> Option<Witness> {
        let chart = residual.chart().clone();
        let n = chart.num_symbols();
        if n <= 8 {
            let coord_grid = [-2i64, -1, 1, 2];
            let gen_grid = [1i64, 2];
            let sizes: Vec<usize> = (0..n)
                .map(|s| {
                    if chart.is_coordinate(s) {
                        coord_grid.len()
                    } else {
                        gen_grid.len()
                    }
                })
                .collect();
            let total: usize = sizes.iter().product();
            let mut counters = vec![0usize; n];
            for _ in 0..total {
                let point: Vec<BigRational> = (0..n)
                    .map(|s| {
                        let v = if chart.is_coordinate(s) {
                            coord_grid[counters[s]]
                        } else {
                            gen_grid[counters[s]]
                        };
                        BigRational::from_integer(v.into())
                    })
                    .collect();
                if let Some(w) = try_point(residual, &chart, point) {
                    return Some(w);
                }
                for s in (0..n).rev() {
                    counters[s] += 1;
                    if counters[s] < sizes[s] {
                        break;
                    }
                    counters[s] = 0;
                }
            }
        }
        let mut rng = ChaCha20Rng::seed_from_u64(self.seed);
        for _ in 0..10_000 {
            let point: Vec<BigRational> = (0..n)
                .map(|s| {
                    let denom: i64 = rng.gen_range(1..6);
                    let numer: i64 = if chart.is_coordinate(s) {
                        rng.gen_range(-24..=24)
                    } else {
                        rng.gen_range(1..=24)
                    };
                    BigRational::new(numer.into(), denom.into())
                })
                .collect();
            if let Some(w) = try_point(residual, &chart, point) {
                return Some(w);
            }
        }
        None
    }

    /// A small nonzero polynomial used as a function-linearity probe when
    /// identities involving covariant derivatives are checked on the frame.
    pub fn probe_polynomial(&self, chart: &Arc<Chart>) -> ScalarExpr {
        let mut rng = ChaCha20Rng::seed_from_u64(self.seed.wrapping_add(0x70726f6265));
        let mut f = ScalarExpr::from_int(chart, 1);
        for coord in 0..chart.dim().min(3) {
            let c: i64 = rng.gen_range(1..4);
            let term = ScalarExpr::symbol(chart, coord).scale(&BigRational::from_integer(c.into()));
            f = f.add(&term);
        }
        f
    }
}

fn try_point(residual: &ScalarExpr, chart: &Chart, point: Vec<BigRational>) -> Option<Witness> {
    match residual.eval_exact(&point) {
        Ok(v) if !v.is_zero() => Some(Witness {
            assignment: point
                .iter()
                .enumerate()
                .map(|(s, v)| (chart.symbol_name(s).to_string(), v.clone()))
                .collect(),
            value: v,
        }),
        _ => None,
    }
}

/// Evaluates a named identity from its residual components: pass when every
/// component is identically zero, otherwise fail carrying the first nonzero
/// residual and a witness point.
pub fn residual_check(
    name: &str,
    tag: &str,
    residuals: &[ScalarExpr],
    searcher: &WitnessSearcher,
) -> CheckRecord {
    let start = Instant::now();
    let offender = residuals.iter().find(|r| !r.is_zero());
    let (status, residual, witness) = match offender {
        None => (CheckStatus::Pass, None, None),
        Some(r) => (CheckStatus::Fail, Some(r.to_string()), searcher.find(r)),
    };
    CheckRecord {
        name: name.to_string(),
        tag: tag.to_string(),
        status,
        residual,
        witness,
        millis: start.elapsed().as_millis() as u64,
    }
}

/// Formats a rational for reports, e.g. `-3/2` or `5`.
pub fn rational_string(r: &BigRational) -> String {
    if r.denom() == &num::BigInt::from(1) {
        r.numer().to_string()
    } else if r.is_negative() {
        format!("-{}/{}", r.numer().abs(), r.denom())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::parse_expression;
    use num::One;

    #[test]
    fn witness_found_on_grid() {
        let chart = Arc::new(Chart::new(vec!["x", "y"], vec![]).unwrap());
        let e = parse_expression(&chart, "x - y").unwrap();
        let w = WitnessSearcher::new(7).find(&e).unwrap();
        assert!(!w.value.is_zero());
        // first grid point with x != y
        assert_eq!(w.assignment[0].1, BigRational::from_integer((-2).into()));
        assert_eq!(w.assignment[1].1, BigRational::from_integer((-1).into()));
    }

    #[test]
    fn witness_avoids_poles_and_grid_zeros() {
        let chart = Arc::new(Chart::new(vec!["x"], vec![]).unwrap());
        // zero on the whole grid, pole at x = 3
        let e = parse_expression(&chart, "(x-2)*(x-1)*(x+1)*(x+2)/(x-3)").unwrap();
        let w = WitnessSearcher::new(7).find(&e).unwrap();
        assert!(!w.value.is_zero());
    }

    #[test]
    fn residual_check_pass_and_fail() {
        let chart = Arc::new(Chart::new(vec!["x"], vec![]).unwrap());
        let ws = WitnessSearcher::new(1);
        let zero = ScalarExpr::zero(&chart);
        let rec = residual_check("a", "t", &[zero.clone(), zero.clone()], &ws);
        assert_eq!(rec.status, CheckStatus::Pass);
        let one = ScalarExpr::one(&chart);
        let rec = residual_check("a", "t", &[zero, one], &ws);
        assert_eq!(rec.status, CheckStatus::Fail);
        assert_eq!(rec.residual.as_deref(), Some("1"));
        assert_eq!(rec.witness.unwrap().value, BigRational::one());
    }
}
