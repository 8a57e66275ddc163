//! Brute-force oracles, independent of the elimination-based code paths
//! they are used to check.

use paralight_core::scalar::{ExactMatrix, ScalarExpr};

/// Determinant by recursive cofactor expansion along the first row.
pub fn laplace_det(m: &ExactMatrix) -> ScalarExpr {
    assert_eq!(m.rows(), m.cols());
    let n = m.rows();
    let chart = m.chart();
    if n == 0 {
        return ScalarExpr::one(chart);
    }
    if n == 1 {
        return m.get(0, 0).clone();
    }
    let mut acc = ScalarExpr::zero(chart);
    for j in 0..n {
        if m.get(0, j).is_zero() {
            continue;
        }
        let minor = ExactMatrix::from_fn(chart, n - 1, n - 1, |r, c| {
            m.get(r + 1, if c < j { c } else { c + 1 }).clone()
        });
        let term = m.get(0, j).mul(&laplace_det(&minor));
        acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

/// Rank as the largest k admitting a k-by-k minor with nonzero determinant.
pub fn minor_rank(m: &ExactMatrix) -> usize {
    let max = m.rows().min(m.cols());
    for k in (1..=max).rev() {
        if minors_of_size(m, k) {
            return k;
        }
    }
    0
}

fn minors_of_size(m: &ExactMatrix, k: usize) -> bool {
    let rows = combinations(m.rows(), k);
    let cols = combinations(m.cols(), k);
    for r in &rows {
        for c in &cols {
            let sub = ExactMatrix::from_fn(m.chart(), k, k, |i, j| m.get(r[i], c[j]).clone());
            if !laplace_det(&sub).is_zero() {
                return true;
            }
        }
    }
    false
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(current.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            current[i] += 1;
            if current[i] <= n - (k - i) {
                for j in i + 1..k {
                    current[j] = current[j - 1] + 1;
                }
                break;
            }
        }
    }
}
