//! Small numeric helpers shared across modules.

use crate::Scalar;

/// Neumaier-compensated summation. Keeps bulk sums deterministic and
/// accurate regardless of how callers order their terms.
#[derive(Clone, Copy, Debug)]
pub struct CompensatedSum<F> {
    sum: F,
    compensation: F,
}

impl<F: Scalar> Default for CompensatedSum<F> {
    fn default() -> Self {
        Self {
            sum: F::zero(),
            compensation: F::zero(),
        }
    }
}

impl<F: Scalar> CompensatedSum<F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, term: F) {
        let t = self.sum + term;
        if self.sum.abs() >= term.abs() {
            self.compensation = self.compensation + ((self.sum - t) + term);
        } else {
            self.compensation = self.compensation + ((term - t) + self.sum);
        }
        self.sum = t;
    }

    pub fn value(&self) -> F {
        self.sum + self.compensation
    }
}

pub fn compensated_sum<F: Scalar>(terms: impl IntoIterator<Item = F>) -> F {
    let mut acc = CompensatedSum::new();
    for t in terms {
        acc.add(t);
    }
    acc.value()
}

/// Lower median of a sample (the empirical 0.5 quantile below).
pub fn median(values: &[f64]) -> f64 {
    quantile(values, 0.5)
}

/// Empirical quantile with linear interpolation between order statistics.
pub fn quantile(values: &[f64], q: f64) -> f64 {
    assert!(!values.is_empty(), "quantile of empty sample");
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("NaN in sample"));
    let pos = q.clamp(0.0, 1.0) * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    if lo == hi {
        sorted[lo]
    } else {
        let w = pos - lo as f64;
        sorted[lo] * (1.0 - w) + sorted[hi] * w
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_sum_recovers_cancellation() {
        // 1 + eps-sized terms that a naive sum would lose
        let mut s = CompensatedSum::<f64>::new();
        s.add(1.0);
        for _ in 0..1000 {
            s.add(1e-17);
        }
        s.add(-1.0);
        assert!((s.value() - 1000.0 * 1e-17).abs() < 1e-18);
    }

    #[test]
    fn quantiles() {
        let v = [3.0, 1.0, 2.0, 4.0];
        assert_eq!(quantile(&v, 0.0), 1.0);
        assert_eq!(quantile(&v, 1.0), 4.0);
        assert_eq!(median(&v), 2.5);
    }
}
