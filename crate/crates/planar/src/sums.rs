//! Deterministic pairwise reduction for lattice sums.
//!
//! Summing a few hundred thousand oscillatory terms left-to-right both loses
//! accuracy and ties the result to the iteration order. Pairwise tree
//! reduction fixes the rounding pattern (bit-stable for a fixed input order)
//! and keeps the error growth logarithmic in the term count.

use num_complex::Complex64;

pub fn tree_sum(values: &[Complex64]) -> Complex64 {
    match values.len() {
        0 => Complex64::new(0.0, 0.0),
        1 => values[0],
        2 => values[0] + values[1],
        n => {
            let mid = n / 2;
            tree_sum(&values[..mid]) + tree_sum(&values[mid..])
        }
    }
}

pub fn tree_sum_f64(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0],
        2 => values[0] + values[1],
        n => {
            let mid = n / 2;
            tree_sum_f64(&values[..mid]) + tree_sum_f64(&values[mid..])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_naive_sum_closely() {
        let vals: Vec<Complex64> = (0..1000)
            .map(|k| {
                let t = k as f64 * 0.37;
                Complex64::new(t.cos() / (1.0 + t), t.sin() / (1.0 + t * t))
            })
            .collect();
        let naive: Complex64 = vals.iter().sum();
        let tree = tree_sum(&vals);
        assert!((naive - tree).norm() < 1e-10);
    }

    #[test]
    fn empty_and_singleton() {
        assert_eq!(tree_sum(&[]), Complex64::new(0.0, 0.0));
        assert_eq!(tree_sum_f64(&[2.5]), 2.5);
    }
}
