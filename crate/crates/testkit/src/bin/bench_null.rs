// temporary: per-case timing of the full nullspace suite path
use std::sync::Arc;
use std::time::Instant;
use num::{BigRational, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use paralight_core::scalar::poly::Poly;
use paralight_core::scalar::{Chart, ExactMatrix, ScalarExpr};
use paralight_testkit::oracle::minor_rank;

fn rat(n: i64) -> BigRational { BigRational::from_integer(n.into()) }
fn test_chart() -> Arc<Chart> {
    Arc::new(Chart::new(vec!["x", "y", "z"], vec![("e2z", "z", rat(2))]).unwrap())
}
fn random_poly(chart: &Arc<Chart>, rng: &mut ChaCha20Rng, terms: usize) -> ScalarExpr {
    let nsyms = chart.num_symbols();
    let mut acc = Poly::zero(nsyms);
    for _ in 0..terms {
        let coeff = rat(rng.gen_range(-3i64..=3));
        if coeff.is_zero() { continue; }
        let mono: Vec<u32> = (0..nsyms).map(|_| rng.gen_range(0u32..=2) % 2).collect();
        acc = acc.add(&Poly::from_terms(nsyms, vec![(mono, coeff)]));
    }
    ScalarExpr::from_poly(chart.clone(), acc)
}
fn main() {
    let chart = test_chart();
    let mut rng = ChaCha20Rng::seed_from_u64(0xbeef);
    for case in 0..80 {
        let rows = rng.gen_range(1..=5);
        let cols = rng.gen_range(1..=5);
        let m = ExactMatrix::from_fn(&chart, rows, cols, |_, _| {
            if rng.gen_bool(0.45) { ScalarExpr::zero(&chart) } else { random_poly(&chart, &mut rng, 2) }
        });
        if case == 78 {
            for i in 0..rows {
                let row: Vec<String> = (0..cols).map(|j| m.get(i, j).to_string()).collect();
                println!("  [{}]", row.join(" | "));
            }
        }
        let t = Instant::now();
        let (rank, basis) = m.rank_nullspace();
        let t_rref = t.elapsed();
        let t = Instant::now();
        let orank = minor_rank(&m);
        let t_rank = t.elapsed();
        assert_eq!(rank, orank);
        let t = Instant::now();
        for v in &basis {
            assert!(m.mul_vector(v).iter().all(|c| c.is_zero()));
        }
        let t_ann = t.elapsed();
        let t = Instant::now();
        if !basis.is_empty() {
            let b = ExactMatrix::from_fn(&chart, cols, basis.len(), |i, j| basis[j][i].clone());
            assert_eq!(minor_rank(&b), basis.len());
        }
        let t_ind = t.elapsed();
        let total = t_rref + t_rank + t_ann + t_ind;
        println!("case {case} ({rows}x{cols}) rank {rank} nullity {}: rref {t_rref:?} rank-oracle {t_rank:?} annihilate {t_ann:?} independence {t_ind:?} total {total:?}", basis.len());
    }
    println!("done");
}
