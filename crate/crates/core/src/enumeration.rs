//! Exhaustive enumeration over the `2^N` outcomes of a product Bernoulli
//! measure.
//!
//! This is the brute-force route used to cross-check every closed-form
//! computation in [`measures`](crate::measures): total variation as half the
//! L1 distance over outcomes, the Hellinger integral as the sum of
//! `sqrt(P(x) Q(x))`, and the likelihood-ratio second moment as
//! `sum P(x)^2 / Q(x)`. Deliberately straightforward; the value of this
//! module is that it shares no code path with the product formulas it
//! verifies.

use crate::measures::ProbPair;
use crate::util::CompensatedSum;
use crate::{Error, Result, Scalar};

fn check_cap<F: Scalar>(pair: &ProbPair<F>, cap: usize) -> Result<()> {
    if pair.len() > cap || pair.len() >= usize::BITS as usize {
        return Err(Error::EnumerationTooLarge {
            n: pair.len(),
            cap,
        });
    }
    Ok(())
}

/// Visits every outcome `x` of `{0,1}^N` with its masses `(P(x), Q(x))`.
pub fn for_each_outcome<F: Scalar>(
    pair: &ProbPair<F>,
    cap: usize,
    mut visit: impl FnMut(u64, F, F),
) -> Result<()> {
    check_cap(pair, cap)?;
    let n = pair.len();
    let left: Vec<F> = pair.left().values().collect();
    let right: Vec<F> = pair.right().values().collect();
    let one = F::one();
    for mask in 0u64..(1u64 << n) {
        let mut p_mass = one;
        let mut q_mass = one;
        for i in 0..n {
            if (mask >> i) & 1 == 1 {
                p_mass = p_mass * left[i];
                q_mass = q_mass * right[i];
            } else {
                p_mass = p_mass * (one - left[i]);
                q_mass = q_mass * (one - right[i]);
            }
        }
        visit(mask, p_mass, q_mass);
    }
    Ok(())
}

/// Exact total variation: `1/2 sum_x |P(x) - Q(x)|`.
pub fn tv<F: Scalar>(pair: &ProbPair<F>, cap: usize) -> Result<F> {
    let mut acc = CompensatedSum::new();
    for_each_outcome(pair, cap, |_, p, q| acc.add((p - q).abs()))?;
    Ok(F::from(0.5).expect("0.5 representable") * acc.value())
}

/// Exact Hellinger integral: `sum_x sqrt(P(x) Q(x))`.
pub fn hellinger_integral<F: Scalar>(pair: &ProbPair<F>, cap: usize) -> Result<F> {
    let mut acc = CompensatedSum::new();
    for_each_outcome(pair, cap, |_, p, q| acc.add((p * q).sqrt()))?;
    Ok(acc.value())
}

/// Exact likelihood-ratio second moment: `sum_x P(x)^2 / Q(x)`, with
/// `0/0 = 0` and `x/0 = +inf` for `x > 0`.
pub fn second_moment<F: Scalar>(pair: &ProbPair<F>, cap: usize) -> Result<F> {
    let mut acc = CompensatedSum::new();
    let mut singular = false;
    for_each_outcome(pair, cap, |_, p, q| {
        if q == F::zero() {
            if p != F::zero() {
                singular = true;
            }
        } else {
            acc.add(p * p / q);
        }
    })?;
    Ok(if singular { F::infinity() } else { acc.value() })
}

/// Exact total variation as the supremum over all `2^(2^N)` events, by
/// scanning subsets of the outcome space. Only feasible for tiny `N`; this
/// is the definitional check that the L1 formula equals the event supremum.
pub fn tv_event_supremum<F: Scalar>(pair: &ProbPair<F>, cap: usize) -> Result<F> {
    check_cap(pair, cap.min(4))?;
    let mut masses = Vec::new();
    for_each_outcome(pair, cap, |_, p, q| masses.push((p, q)))?;
    let outcomes = masses.len();
    let mut best = F::zero();
    for event in 0u64..(1u64 << outcomes) {
        let mut diff = F::zero();
        for (i, &(p, q)) in masses.iter().enumerate() {
            if (event >> i) & 1 == 1 {
                diff = diff + (p - q);
            }
        }
        best = best.max(diff.abs());
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::{hellinger_product, second_moment_ratio, tv_exact_enumerate};

    #[test]
    fn masses_sum_to_one() {
        let pair = ProbPair::from_slices(&[0.1, 0.7, 0.4], &[0.2, 0.2, 0.9]).unwrap();
        let mut p_total = 0.0;
        let mut q_total = 0.0;
        for_each_outcome(&pair, 20, |_, p, q| {
            p_total += p;
            q_total += q;
        })
        .unwrap();
        assert!((p_total - 1.0).abs() < 1e-14);
        assert!((q_total - 1.0).abs() < 1e-14);
    }

    #[test]
    fn event_supremum_matches_l1_formula() {
        let pair = ProbPair::from_slices(&[0.15, 0.8], &[0.35, 0.55]).unwrap();
        let l1 = tv(&pair, 20).unwrap();
        let sup = tv_event_supremum(&pair, 4).unwrap();
        assert!((l1 - sup).abs() < 1e-14);
    }

    #[test]
    fn agrees_with_product_formulas_on_a_fixed_pair() {
        let pair =
            ProbPair::from_slices(&[0.05, 0.5, 0.93, 0.0], &[0.1, 0.45, 0.99, 0.02]).unwrap();
        let h = hellinger_integral(&pair, 20).unwrap();
        assert!((h - hellinger_product(&pair)).abs() < 1e-12);
        let m = second_moment(&pair, 20).unwrap();
        assert!((m - second_moment_ratio(&pair)).abs() < 1e-10 * m);
        let t = tv(&pair, 20).unwrap();
        assert_eq!(t, tv_exact_enumerate(&pair).unwrap());
    }

    #[test]
    fn second_moment_singular_detection() {
        let pair = ProbPair::from_slices(&[0.5, 0.5], &[0.5, 0.0]).unwrap();
        assert!(second_moment(&pair, 20).unwrap().is_infinite());
    }
}
