//! Statistical distances for Bernoulli distributions and their finite
//! products.
//!
//! The central quantity is the discrepancy
//!
//! ```text
//! rho(p, q) = (sqrt(p) - sqrt(q))^2 + (sqrt(1-p) - sqrt(1-q))^2,
//! ```
//!
//! twice the squared Hellinger distance between `Be(p)` and `Be(q)`. Sums of
//! `rho` over coordinates control the Hellinger integral of the product
//! measures through `H = prod_i (1 - rho_i / 2)`, and the Hellinger distance
//! in turn sandwiches total variation via `d_H^2 <= d_TV <= sqrt(2) d_H`.
//!
//! All functions here are pure; parallel callers need no synchronization.

use serde::{Deserialize, Serialize};

use crate::enumeration;
use crate::util::CompensatedSum;
use crate::{Error, Result, Scalar};

/// Default cap on the vector length for exhaustive `2^N` enumeration.
pub const DEFAULT_ENUMERATION_CAP: usize = 20;

/// A probability: a finite scalar in `[0, 1]`.
///
/// Construction rejects NaN and out-of-range values, so downstream code can
/// rely on the invariant unconditionally.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Prob<F = f64>(F);

impl<F: Scalar + Serialize> Serialize for Prob<F> {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl<'de, F: Scalar + Deserialize<'de>> Deserialize<'de> for Prob<F> {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let value = F::deserialize(deserializer)?;
        Prob::new(value).map_err(serde::de::Error::custom)
    }
}

impl<F: Scalar> Prob<F> {
    pub fn new(value: F) -> Result<Self> {
        if value.is_nan() || value < F::zero() || value > F::one() {
            return Err(Error::InvalidProbability(
                value.to_f64().unwrap_or(f64::NAN),
            ));
        }
        Ok(Self(value))
    }

    /// The underlying scalar.
    pub fn get(self) -> F {
        self.0
    }

    /// The complementary probability `1 - p`.
    pub fn complement(self) -> Self {
        Self(F::one() - self.0)
    }
}

impl<F: Scalar> TryFrom<F> for Prob<F> {
    type Error = Error;

    fn try_from(value: F) -> Result<Self> {
        Self::new(value)
    }
}

/// An ordered, nonempty, finite vector of probabilities.
///
/// Infinite sequences are always represented by explicit truncation; partial
/// sums over growing truncations are handled by
/// [`criteria::kakutani_partial_sums`](crate::criteria::kakutani_partial_sums).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
#[serde(bound(
    serialize = "F: Serialize + Scalar",
    deserialize = "F: Deserialize<'de> + Scalar"
))]
pub struct ProbVector<F = f64> {
    entries: Vec<Prob<F>>,
}

impl<F: Scalar> ProbVector<F> {
    pub fn new(entries: Vec<Prob<F>>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyVector);
        }
        Ok(Self { entries })
    }

    /// Builds a vector from raw scalars, validating every entry.
    pub fn from_slice(values: &[F]) -> Result<Self> {
        Self::new(values.iter().map(|&v| Prob::new(v)).collect::<Result<_>>()?)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn entries(&self) -> &[Prob<F>] {
        &self.entries
    }

    /// Iterator over the raw scalar entries.
    pub fn values(&self) -> impl Iterator<Item = F> + '_ {
        self.entries.iter().map(|p| p.get())
    }

    /// A constant vector, convenient for homogeneous models.
    pub fn constant(value: F, len: usize) -> Result<Self> {
        let p = Prob::new(value)?;
        Self::new(vec![p; len])
    }
}

/// Two probability vectors aligned index by index.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound(
    serialize = "F: Serialize + Scalar",
    deserialize = "F: Deserialize<'de> + Scalar"
))]
pub struct ProbPair<F = f64> {
    left: ProbVector<F>,
    right: ProbVector<F>,
}

impl<F: Scalar> ProbPair<F> {
    pub fn new(left: ProbVector<F>, right: ProbVector<F>) -> Result<Self> {
        if left.len() != right.len() {
            return Err(Error::LengthMismatch {
                left: left.len(),
                right: right.len(),
            });
        }
        Ok(Self { left, right })
    }

    /// Builds an aligned pair from raw scalars.
    pub fn from_slices(left: &[F], right: &[F]) -> Result<Self> {
        Self::new(ProbVector::from_slice(left)?, ProbVector::from_slice(right)?)
    }

    pub fn len(&self) -> usize {
        self.left.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn left(&self) -> &ProbVector<F> {
        &self.left
    }

    pub fn right(&self) -> &ProbVector<F> {
        &self.right
    }

    /// Iterator over aligned raw entries `(p_i, p'_i)`.
    pub fn values(&self) -> impl Iterator<Item = (F, F)> + '_ {
        self.left.values().zip(self.right.values())
    }

    /// Iterator over aligned `Prob` entries.
    pub fn entries(&self) -> impl Iterator<Item = (Prob<F>, Prob<F>)> + '_ {
        self.left
            .entries
            .iter()
            .copied()
            .zip(self.right.entries.iter().copied())
    }

    /// The pair with left and right swapped.
    pub fn swapped(&self) -> Self {
        Self {
            left: self.right.clone(),
            right: self.left.clone(),
        }
    }
}

/// The Bernoulli discrepancy `rho(p, q)`.
///
/// Symmetric, invariant under `(p, q) -> (1-p, 1-q)`, zero iff `p = q`, and
/// at most 2 (attained by mutually singular endpoints).
pub fn rho<F: Scalar>(p: Prob<F>, q: Prob<F>) -> F {
    let (p, q) = (p.get(), q.get());
    let a = p.sqrt() - q.sqrt();
    let b = (F::one() - p).sqrt() - (F::one() - q).sqrt();
    a * a + b * b
}

/// Alternative expressions for `rho`, each equivalent to it within constant
/// factors on its domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RhoForm {
    /// `(p-q)^2/(p+q) + (p-q)^2/(2-p-q)`
    RatioSum,
    /// `(p-q)^2 / ((p ∨ q) ∧ ((1-p) ∨ (1-q)))`
    MaxMin,
    /// `((p-q)^2 / (p ∧ (1-p))) ∧ |p-q|`
    Cap,
    /// `((p-q)^2 / p) ∧ |p-q|`, valid for `p <= 0.9`
    SmallP,
}

/// Ratio of a squared difference to a denominator, under the `0/0 = 0`
/// convention; a zero denominator against a nonzero numerator is infinite.
fn ratio0<F: Scalar>(num_sq: F, den: F) -> F {
    if num_sq == F::zero() {
        F::zero()
    } else if den == F::zero() {
        F::infinity()
    } else {
        num_sq / den
    }
}

/// Evaluates the chosen alternative discrepancy form.
///
/// `0/0` evaluates to 0 throughout. The `small_p` form is rejected when
/// `p > 0.9`, where the equivalence with `rho` breaks down.
pub fn rho_alt<F: Scalar>(p: Prob<F>, q: Prob<F>, form: RhoForm) -> Result<F> {
    let (pv, qv) = (p.get(), q.get());
    let one = F::one();
    let d = pv - qv;
    let d2 = d * d;
    let value = match form {
        RhoForm::RatioSum => ratio0(d2, pv + qv) + ratio0(d2, (one - pv) + (one - qv)),
        RhoForm::MaxMin => {
            let den = pv.max(qv).min((one - pv).max(one - qv));
            ratio0(d2, den)
        }
        RhoForm::Cap => {
            let den = pv.min(one - pv);
            ratio0(d2, den).min(d.abs())
        }
        RhoForm::SmallP => {
            let threshold = F::from(0.9).expect("0.9 representable");
            if pv > threshold {
                return Err(Error::SmallPOutOfRange(pv.to_f64().unwrap_or(f64::NAN)));
            }
            ratio0(d2, pv).min(d.abs())
        }
    };
    Ok(value)
}

/// Hellinger integral and distance of two Bernoulli distributions.
///
/// The integral is computed both as `sqrt(pq) + sqrt((1-p)(1-q))` and as
/// `1 - rho/2`; the two routes agree to floating-point accuracy and the
/// direct form is returned. The distance is `sqrt(rho/2)`.
pub fn hellinger_bernoulli<F: Scalar>(p: Prob<F>, q: Prob<F>) -> (F, F) {
    let (pv, qv) = (p.get(), q.get());
    let one = F::one();
    let half = F::from(0.5).expect("0.5 representable");
    let integral = (pv * qv).sqrt() + ((one - pv) * (one - qv)).sqrt();
    let r = rho(p, q);
    let via_rho = one - half * r;
    debug_assert!(
        (integral - via_rho).abs()
            <= F::from(1e-12).unwrap_or(F::epsilon()).max(F::epsilon() * F::from(8).unwrap()),
        "Hellinger routes disagree: {integral} vs {via_rho}"
    );
    let distance = (half * r).sqrt();
    (integral, distance)
}

/// Hellinger integral of two product Bernoulli measures: the product of the
/// per-coordinate integrals.
///
/// Accumulated in log space so that long products of factors near 1 do not
/// cancel catastrophically. A singular coordinate short-circuits to 0.
pub fn hellinger_product<F: Scalar>(pair: &ProbPair<F>) -> F {
    let mut log_sum = CompensatedSum::<F>::new();
    let mut rho_sum = CompensatedSum::<F>::new();
    let half = F::from(0.5).expect("0.5 representable");
    for (p, q) in pair.entries() {
        let (h, _) = hellinger_bernoulli(p, q);
        rho_sum.add(rho(p, q));
        if h == F::zero() {
            return F::zero();
        }
        log_sum.add(h.ln());
    }
    let product = log_sum.value().exp();
    // Sandwich from the product expansion: 1 - S/2 <= prod(1 - rho_i/2) <= exp(-S/2).
    let s = rho_sum.value();
    let slack = F::from(1e-9).expect("1e-9 representable");
    debug_assert!(product >= F::one() - half * s - slack);
    debug_assert!(product <= (-half * s).exp() + slack);
    product
}

/// Distances and bounds for a pair of product Bernoulli measures.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistanceReport<F = f64> {
    /// Sum of per-coordinate discrepancies `rho(p_i, p'_i)`.
    pub rho_sum: F,
    /// Hellinger integral `H` of the two product measures.
    pub hellinger_integral: F,
    /// Hellinger distance `sqrt(1 - H)`.
    pub hellinger_distance: F,
    /// Lower bound on total variation: `d_H^2`.
    pub tv_lower: F,
    /// Upper bound on total variation: `min(1, sqrt(2) d_H)`.
    pub tv_upper: F,
    /// Exact total variation when enumeration is feasible.
    pub tv_exact: Option<F>,
}

/// Fills a [`DistanceReport`] with the Hellinger quantities and the total
/// variation sandwich `d_H^2 <= d_TV <= sqrt(2) d_H`.
pub fn tv_bounds<F: Scalar>(pair: &ProbPair<F>) -> DistanceReport<F> {
    let mut rho_sum = CompensatedSum::<F>::new();
    for (p, q) in pair.entries() {
        rho_sum.add(rho(p, q));
    }
    let h = hellinger_product(pair);
    let one = F::one();
    let dh2 = (one - h).max(F::zero());
    let dh = dh2.sqrt();
    DistanceReport {
        rho_sum: rho_sum.value(),
        hellinger_integral: h,
        hellinger_distance: dh,
        tv_lower: dh2,
        tv_upper: (F::from(2).unwrap().sqrt() * dh).min(one),
        tv_exact: None,
    }
}

/// [`tv_bounds`] plus the exact total variation by enumeration when the
/// vector is short enough.
pub fn distance_report<F: Scalar>(pair: &ProbPair<F>, enumeration_cap: usize) -> DistanceReport<F> {
    let mut report = tv_bounds(pair);
    if pair.len() <= enumeration_cap {
        report.tv_exact = enumeration::tv(pair, enumeration_cap).ok();
    }
    report
}

/// Exact total variation between two product Bernoulli measures by
/// exhaustive enumeration of all `2^N` outcomes.
///
/// Rejects vectors longer than [`DEFAULT_ENUMERATION_CAP`]; use
/// [`tv_exact_enumerate_with_cap`] to raise the cap explicitly.
pub fn tv_exact_enumerate<F: Scalar>(pair: &ProbPair<F>) -> Result<F> {
    enumeration::tv(pair, DEFAULT_ENUMERATION_CAP)
}

/// As [`tv_exact_enumerate`] with a caller-chosen cap.
pub fn tv_exact_enumerate_with_cap<F: Scalar>(pair: &ProbPair<F>, cap: usize) -> Result<F> {
    enumeration::tv(pair, cap)
}

/// One factor of the second-moment product: `p^2/p' + (1-p)^2/(1-p')`.
///
/// Conventions: `x^2/0 = +inf` for `x > 0` and `0^2/0 = 0`, matching the
/// measure-theoretic meaning (a coordinate where `p` charges an outcome that
/// `p'` does not makes the likelihood ratio square-nonintegrable).
pub fn second_moment_factor<F: Scalar>(p: Prob<F>, q: Prob<F>) -> F {
    let term = |a: F, b: F| {
        if a == F::zero() {
            F::zero()
        } else if b == F::zero() {
            F::infinity()
        } else {
            a * a / b
        }
    };
    let one = F::one();
    term(p.get(), q.get()) + term(one - p.get(), one - q.get())
}

/// The same factor in centered form, `1 + (p-p')^2/p' + (p-p')^2/(1-p')`,
/// which makes the `>= 1` property explicit.
pub fn second_moment_factor_centered<F: Scalar>(p: Prob<F>, q: Prob<F>) -> F {
    let (pv, qv) = (p.get(), q.get());
    let one = F::one();
    let d = pv - qv;
    let d2 = d * d;
    let term = |den: F| {
        if d2 == F::zero() {
            F::zero()
        } else if den == F::zero() {
            F::infinity()
        } else {
            d2 / den
        }
    };
    one + term(qv) + term(one - qv)
}

/// Second moment of the likelihood ratio `dP/dQ` under `Q` for two product
/// Bernoulli measures: the product over coordinates of
/// [`second_moment_factor`].
///
/// Returns `+inf` when absolute continuity fails on some coordinate. The
/// result is always `>= 1`.
pub fn second_moment_ratio<F: Scalar>(pair: &ProbPair<F>) -> F {
    let mut log_sum = CompensatedSum::<F>::new();
    for (p, q) in pair.entries() {
        let factor = second_moment_factor(p, q);
        if factor.is_infinite() {
            return F::infinity();
        }
        log_sum.add(factor.ln());
    }
    log_sum.value().exp()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: f64) -> Prob {
        Prob::new(v).unwrap()
    }

    #[test]
    fn prob_rejects_invalid() {
        assert!(Prob::new(-0.1).is_err());
        assert!(Prob::new(1.1).is_err());
        assert!(Prob::new(f64::NAN).is_err());
        assert!(Prob::new(0.0).is_ok());
        assert!(Prob::new(1.0).is_ok());
    }

    #[test]
    fn pair_requires_alignment() {
        let a = ProbVector::from_slice(&[0.1, 0.2]).unwrap();
        let b = ProbVector::from_slice(&[0.3]).unwrap();
        assert!(matches!(
            ProbPair::new(a, b),
            Err(Error::LengthMismatch { left: 2, right: 1 })
        ));
        assert!(ProbVector::<f64>::new(vec![]).is_err());
    }

    #[test]
    fn rho_known_values() {
        assert_eq!(rho(p(0.3), p(0.3)), 0.0);
        assert_eq!(rho(p(0.0), p(1.0)), 2.0);
        // evaluated independently with high-precision arithmetic
        assert!((rho(p(0.1), p(0.2)) - 0.020101022).abs() < 1e-6);
    }

    #[test]
    fn rho_alt_known_values() {
        assert_eq!(rho_alt(p(0.5), p(0.5), RhoForm::RatioSum).unwrap(), 0.0);
        // (0.01/0.3 + 0.01/1.7)
        let v = rho_alt(p(0.1), p(0.2), RhoForm::RatioSum).unwrap();
        assert!((v - (0.01 / 0.3 + 0.01 / 1.7)).abs() < 1e-15);
        // min(0.0001/0.01, 0.01) = 0.01
        let v = rho_alt(p(0.01), p(0.02), RhoForm::SmallP).unwrap();
        assert!((v - 0.01).abs() < 1e-15);
        assert!(matches!(
            rho_alt(p(0.95), p(0.5), RhoForm::SmallP),
            Err(Error::SmallPOutOfRange(_))
        ));
    }

    #[test]
    fn rho_alt_zero_denominators() {
        // p = q = 0 and p = q = 1: every form is 0 by the 0/0 convention
        for form in [RhoForm::RatioSum, RhoForm::MaxMin, RhoForm::Cap] {
            assert_eq!(rho_alt(p(0.0), p(0.0), form).unwrap(), 0.0);
            assert_eq!(rho_alt(p(1.0), p(1.0), form).unwrap(), 0.0);
        }
        // cap form at p = 0, q > 0: (q^2 / 0) ∧ q = q
        assert_eq!(rho_alt(p(0.0), p(0.3), RhoForm::Cap).unwrap(), 0.3);
        assert_eq!(rho_alt(p(0.0), p(0.3), RhoForm::SmallP).unwrap(), 0.3);
    }

    #[test]
    fn hellinger_bernoulli_known_values() {
        let (h, d) = hellinger_bernoulli(p(0.5), p(0.5));
        assert_eq!((h, d), (1.0, 0.0));
        let (h, d) = hellinger_bernoulli(p(0.0), p(1.0));
        assert_eq!((h, d), (0.0, 1.0));
        let (h, d) = hellinger_bernoulli(p(0.1), p(0.2));
        assert!((h - 0.9899495).abs() < 1e-6);
        assert!((d - 0.1002522).abs() < 1e-6);
    }

    #[test]
    fn hellinger_product_matches_singleton_and_squares() {
        let single = ProbPair::from_slices(&[0.1], &[0.2]).unwrap();
        let (h1, _) = hellinger_bernoulli(p(0.1), p(0.2));
        assert!((hellinger_product(&single) - h1).abs() < 1e-14);

        let double = ProbPair::from_slices(&[0.1, 0.1], &[0.2, 0.2]).unwrap();
        assert!((hellinger_product(&double) - 0.98).abs() < 1e-6);
        assert!((hellinger_product(&double) - h1 * h1).abs() < 1e-13);

        let same = ProbPair::from_slices(&[0.3, 0.7], &[0.3, 0.7]).unwrap();
        assert_eq!(hellinger_product(&same), 1.0);
    }

    #[test]
    fn tv_bounds_report() {
        let identical = ProbPair::from_slices(&[0.4, 0.6], &[0.4, 0.6]).unwrap();
        let r = tv_bounds(&identical);
        assert_eq!(r.rho_sum, 0.0);
        assert_eq!((r.tv_lower, r.tv_upper), (0.0, 0.0));

        let pair = ProbPair::from_slices(&[0.1], &[0.2]).unwrap();
        let r = tv_bounds(&pair);
        assert!((r.tv_lower - 0.01005).abs() < 1e-5);
        assert!((r.tv_upper - 0.14178).abs() < 1e-5);
        assert!(r.tv_lower <= 0.1 && 0.1 <= r.tv_upper);
        assert!((r.hellinger_distance * r.hellinger_distance - (1.0 - r.hellinger_integral)).abs() < 1e-12);

        let singular = ProbPair::from_slices(&[0.0], &[1.0]).unwrap();
        let r = tv_bounds(&singular);
        assert_eq!((r.tv_lower, r.tv_upper), (1.0, 1.0));
    }

    #[test]
    fn tv_exact_enumerate_known_values() {
        let identical = ProbPair::from_slices(&[0.3, 0.8], &[0.3, 0.8]).unwrap();
        assert_eq!(tv_exact_enumerate(&identical).unwrap(), 0.0);

        // Q is a point mass where P puts 1/4
        let pair = ProbPair::from_slices(&[0.5, 0.5], &[1.0, 1.0]).unwrap();
        assert!((tv_exact_enumerate(&pair).unwrap() - 0.75).abs() < 1e-15);

        let single = ProbPair::from_slices(&[0.1], &[0.2]).unwrap();
        assert!((tv_exact_enumerate(&single).unwrap() - 0.1).abs() < 1e-15);

        let too_long = ProbPair::from_slices(&[0.5; 21], &[0.5; 21]).unwrap();
        assert!(matches!(
            tv_exact_enumerate(&too_long),
            Err(Error::EnumerationTooLarge { n: 21, cap: 20 })
        ));
        assert!(tv_exact_enumerate_with_cap(&too_long, 21).is_ok());
    }

    #[test]
    fn second_moment_known_values() {
        let identical = ProbPair::from_slices(&[0.2, 0.9], &[0.2, 0.9]).unwrap();
        assert!((second_moment_ratio(&identical) - 1.0).abs() < 1e-14);

        let pair = ProbPair::from_slices(&[0.1], &[0.2]).unwrap();
        assert!((second_moment_ratio(&pair) - 1.0625).abs() < 1e-14);

        let singular = ProbPair::from_slices(&[0.5], &[0.0]).unwrap();
        assert!(second_moment_ratio(&singular).is_infinite());

        // degenerate-but-agreeing coordinates contribute factor 1
        let degenerate = ProbPair::from_slices(&[0.0, 1.0, 0.1], &[0.0, 1.0, 0.2]).unwrap();
        assert!((second_moment_ratio(&degenerate) - 1.0625).abs() < 1e-14);
    }

    #[test]
    fn second_moment_factor_identity() {
        // p^2/p' + q^2/q' = 1 + (p-p')^2/p' + (p-p')^2/(1-p')
        for &(a, b) in &[(0.1, 0.2), (0.7, 0.3), (0.0, 0.5), (0.5, 0.5), (1.0, 0.25)] {
            let direct = second_moment_factor(p(a), p(b));
            let centered = second_moment_factor_centered(p(a), p(b));
            assert!(
                (direct - centered).abs() <= 1e-12 * direct.max(1.0),
                "{a} {b}: {direct} vs {centered}"
            );
        }
    }

    #[test]
    fn generic_f32_instantiation() {
        let p32 = Prob::<f32>::new(0.1).unwrap();
        let q32 = Prob::<f32>::new(0.2).unwrap();
        assert!((rho(p32, q32) - 0.020101_f32).abs() < 1e-5);
    }
}
