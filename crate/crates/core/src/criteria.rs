//! Finite-n diagnostics for the equivalence and contiguity conditions on
//! sequences of aligned Bernoulli probability pairs.
//!
//! For deterministic sequences the conditions read: the discrepancy sum
//! `S_n = sum_i rho(p_ni, p'_ni)` must vanish (equivalence) or stay bounded
//! together with a vanishing ratio-tail sum (contiguity). For random
//! sequences the same statements hold in probability and are diagnosed via
//! Monte Carlo medians and upper quantiles. Verdicts come from
//! [`trend`](crate::trend) and are three-valued; they are diagnostics, not
//! proofs.

use std::sync::Arc;

use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::measures::{rho, Prob, ProbPair};
use crate::seed;
use crate::trend::{bounded_verdict, fit_log_log, vanishing_verdict, TrendFit, Verdict, VerdictThresholds};
use crate::util::{median, quantile, CompensatedSum};
use crate::{Error, Result};

/// Conditions a verdict can refer to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConditionId {
    T1i,
    T1iia,
    T1iib,
    T2i,
    T2iia,
    T2iib,
    C1i,
    C1ii,
    C2i,
    C2ii,
}

impl ConditionId {
    pub fn name(self) -> &'static str {
        match self {
            ConditionId::T1i => "t1i",
            ConditionId::T1iia => "t1iia",
            ConditionId::T1iib => "t1iib",
            ConditionId::T2i => "t2i",
            ConditionId::T2iia => "t2iia",
            ConditionId::T2iib => "t2iib",
            ConditionId::C1i => "c1i",
            ConditionId::C1ii => "c1ii",
            ConditionId::C2i => "c2i",
            ConditionId::C2ii => "c2ii",
        }
    }
}

/// How a sequence statistic is evaluated per grid point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EvalMode {
    /// One exact evaluation per n (deterministic generators).
    Deterministic,
    /// `replicates` independent draws per n, summarized by median and the
    /// 95% quantile (random generators).
    MonteCarlo { replicates: u64 },
}

/// Generator of aligned probability pairs per n.
#[derive(Clone)]
pub enum PairGenerator {
    Deterministic(Arc<dyn Fn(u32) -> Result<ProbPair> + Send + Sync>),
    Random(Arc<dyn Fn(u32, &mut ChaCha8Rng) -> Result<ProbPair> + Send + Sync>),
}

/// A sequence of aligned probability pairs over an increasing n-grid.
///
/// Random generators are driven by per-(n, replicate) streams derived from
/// the master seed, so any evaluation schedule produces identical samples.
#[derive(Clone)]
pub struct SequencePair {
    label: String,
    n_grid: Vec<u32>,
    seed: u64,
    generator: PairGenerator,
}

impl SequencePair {
    pub fn deterministic(
        label: impl Into<String>,
        n_grid: Vec<u32>,
        generator: impl Fn(u32) -> Result<ProbPair> + Send + Sync + 'static,
    ) -> Result<Self> {
        Self::build(label, n_grid, 0, PairGenerator::Deterministic(Arc::new(generator)))
    }

    pub fn random(
        label: impl Into<String>,
        n_grid: Vec<u32>,
        seed: u64,
        generator: impl Fn(u32, &mut ChaCha8Rng) -> Result<ProbPair> + Send + Sync + 'static,
    ) -> Result<Self> {
        Self::build(label, n_grid, seed, PairGenerator::Random(Arc::new(generator)))
    }

    fn build(
        label: impl Into<String>,
        n_grid: Vec<u32>,
        seed: u64,
        generator: PairGenerator,
    ) -> Result<Self> {
        if n_grid.is_empty() || n_grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidDiagnostic(
                "n_grid must be nonempty and strictly increasing".into(),
            ));
        }
        Ok(Self {
            label: label.into(),
            n_grid,
            seed,
            generator,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn n_grid(&self) -> &[u32] {
        &self.n_grid
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn is_random(&self) -> bool {
        matches!(self.generator, PairGenerator::Random(_))
    }

    /// Realizes the pair at n. For random generators the draw depends only
    /// on `(master seed, n, replicate)`.
    pub fn realize(&self, n: u32, replicate: u64) -> Result<ProbPair> {
        let realize_inner = |gen: &PairGenerator| match gen {
            PairGenerator::Deterministic(f) => f(n),
            PairGenerator::Random(f) => {
                let mut rng = seed::rng(self.seed, &[u64::from(n), replicate]);
                f(n, &mut rng)
            }
        };
        realize_inner(&self.generator).map_err(|e| Error::Generator {
            n,
            source: Box::new(e),
        })
    }

    fn check_mode(&self, mode: EvalMode) -> Result<()> {
        match (self.is_random(), mode) {
            (false, EvalMode::Deterministic) | (true, EvalMode::MonteCarlo { .. }) => {}
            (true, EvalMode::Deterministic) => {
                return Err(Error::InvalidDiagnostic(
                    "random sequence requires monte_carlo mode".into(),
                ))
            }
            (false, EvalMode::MonteCarlo { .. }) => {
                return Err(Error::InvalidDiagnostic(
                    "deterministic sequence requires deterministic mode".into(),
                ))
            }
        }
        if let EvalMode::MonteCarlo { replicates } = mode {
            if replicates < 30 {
                return Err(Error::InvalidDiagnostic(
                    "monte_carlo mode needs at least 30 replicates".into(),
                ));
            }
        }
        Ok(())
    }
}

/// One diagnostic value per grid point; random sequences additionally carry
/// the upper (95%) replicate quantile.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StatSample {
    /// Grid coordinate (n, or C for tail reports).
    pub x: f64,
    pub value: f64,
    pub upper: Option<f64>,
}

/// Verdict for one condition, with the per-n evidence and thresholds echoed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriterionVerdict {
    pub condition: ConditionId,
    pub values: Vec<StatSample>,
    pub trend: Option<TrendFit>,
    pub verdict: Verdict,
    pub thresholds: VerdictThresholds,
}

fn combine(a: Verdict, b: Verdict) -> Verdict {
    use Verdict::*;
    match (a, b) {
        (Consistent, Consistent) => Consistent,
        (Inconsistent, _) | (_, Inconsistent) => Inconsistent,
        _ => Inconclusive,
    }
}

/// Evaluates a per-pair statistic across the grid, summarizing replicates
/// by median and 95% quantile in Monte Carlo mode.
fn evaluate_statistic(
    seq: &SequencePair,
    mode: EvalMode,
    stat: impl Fn(&ProbPair) -> f64,
) -> Result<Vec<StatSample>> {
    seq.check_mode(mode)?;
    let mut samples = Vec::with_capacity(seq.n_grid.len());
    for &n in &seq.n_grid {
        match mode {
            EvalMode::Deterministic => {
                let pair = seq.realize(n, 0)?;
                samples.push(StatSample {
                    x: f64::from(n),
                    value: stat(&pair),
                    upper: None,
                });
            }
            EvalMode::MonteCarlo { replicates } => {
                let mut values = Vec::with_capacity(replicates as usize);
                for rep in 0..replicates {
                    let pair = seq.realize(n, rep)?;
                    values.push(stat(&pair));
                }
                samples.push(StatSample {
                    x: f64::from(n),
                    value: median(&values),
                    upper: Some(quantile(&values, 0.95)),
                });
            }
        }
    }
    Ok(samples)
}

fn verdict_pair(
    samples: &[StatSample],
    vanishing_id: ConditionId,
    bounded_id: ConditionId,
    th: &VerdictThresholds,
) -> (CriterionVerdict, CriterionVerdict) {
    let central: Vec<(f64, f64)> = samples.iter().map(|s| (s.x, s.value)).collect();
    let upper: Option<Vec<(f64, f64)>> = samples
        .iter()
        .map(|s| s.upper.map(|u| (s.x, u)))
        .collect();

    // "-> 0 in probability": both the median and the upper quantile vanish.
    let (v_central, fit) = vanishing_verdict(&central, th);
    let vanish = match &upper {
        Some(u) => combine(v_central, vanishing_verdict(u, th).0),
        None => v_central,
    };
    let vanishing = CriterionVerdict {
        condition: vanishing_id,
        values: samples.to_vec(),
        trend: fit,
        verdict: vanish,
        thresholds: *th,
    };

    // "O(1) in probability": the upper quantile stays bounded.
    let bound_points = upper.unwrap_or_else(|| central.clone());
    let (v_bounded, fit_b) = bounded_verdict(&bound_points, th);
    let bounded = CriterionVerdict {
        condition: bounded_id,
        values: samples.to_vec(),
        trend: fit_b,
        verdict: v_bounded,
        thresholds: *th,
    };
    (vanishing, bounded)
}

/// Diagnostic for the discrepancy-sum conditions: the vanishing reading
/// (equivalence) and the bounded reading (half of contiguity).
#[derive(Clone, Debug, Serialize)]
pub struct RhoSumDiagnostic {
    pub samples: Vec<StatSample>,
    pub vanishing: CriterionVerdict,
    pub bounded: CriterionVerdict,
}

/// Sum of `rho` over an aligned pair.
pub fn rho_sum(pair: &ProbPair) -> f64 {
    let mut acc = CompensatedSum::new();
    for (p, q) in pair.entries() {
        acc.add(rho(p, q));
    }
    acc.value()
}

/// Evaluates `S_n = sum_i rho(p_ni, p'_ni)` across the grid and judges both
/// the vanishing condition (deterministic: equivalence criterion; random:
/// its in-probability form) and the bounded condition.
pub fn rho_sum_diagnostic(
    seq: &SequencePair,
    mode: EvalMode,
    th: &VerdictThresholds,
) -> Result<RhoSumDiagnostic> {
    if seq.n_grid.len() < 2 {
        return Err(Error::InvalidDiagnostic("n_grid needs at least 2 points".into()));
    }
    let samples = evaluate_statistic(seq, mode, rho_sum)?;
    let (vanishing_id, bounded_id) = if seq.is_random() {
        (ConditionId::T2i, ConditionId::T2iia)
    } else {
        (ConditionId::T1i, ConditionId::T1iia)
    };
    let (vanishing, bounded) = verdict_pair(&samples, vanishing_id, bounded_id, th);
    Ok(RhoSumDiagnostic {
        samples,
        vanishing,
        bounded,
    })
}

/// The ratio-tail sum `T_n(C)`: mass of left probabilities exceeding `C`
/// times their right partner, on both the success and failure side.
pub fn tail_sum(pair: &ProbPair, c: f64) -> f64 {
    let mut acc = CompensatedSum::new();
    for (p, q) in pair.values() {
        if p > c * q {
            acc.add(p);
        }
        let (pc, qc) = (1.0 - p, 1.0 - q);
        if pc > c * qc {
            acc.add(pc);
        }
    }
    acc.value()
}

/// Tail-condition evidence over an (n, C) grid.
#[derive(Clone, Debug, Serialize)]
pub struct TailReport {
    pub c_grid: Vec<f64>,
    /// One row per n; `values[k]` is `T_n(C_k)` (deterministic) or the
    /// replicate fraction with `T_n(C_k) > eps_tail` (random).
    pub rows: Vec<TailRow>,
    /// Per C: max over the top half of the n-grid, the finite-sample
    /// surrogate for `limsup_n`.
    pub limsup_estimates: Vec<f64>,
    pub verdict: CriterionVerdict,
}

#[derive(Clone, Debug, Serialize)]
pub struct TailRow {
    pub n: u32,
    pub values: Vec<f64>,
}

/// Diagnoses the ratio-tail condition: as `C` grows through the grid, the
/// limsup over n of `T_n(C)` (or of the probability that it exceeds
/// `eps_tail`, for random pairs) must fall to zero.
pub fn tail_condition(
    seq: &SequencePair,
    c_grid: &[f64],
    mode: EvalMode,
    th: &VerdictThresholds,
) -> Result<TailReport> {
    seq.check_mode(mode)?;
    if c_grid.len() < 3 || c_grid.windows(2).any(|w| w[0] >= w[1]) || c_grid[0] <= 0.0 {
        return Err(Error::InvalidDiagnostic(
            "C grid must be positive, strictly increasing, with at least 3 values".into(),
        ));
    }
    let mut rows = Vec::with_capacity(seq.n_grid.len());
    for &n in &seq.n_grid {
        let values = match mode {
            EvalMode::Deterministic => {
                let pair = seq.realize(n, 0)?;
                c_grid.iter().map(|&c| tail_sum(&pair, c)).collect::<Vec<_>>()
            }
            EvalMode::MonteCarlo { replicates } => {
                let mut exceed = vec![0u64; c_grid.len()];
                for rep in 0..replicates {
                    let pair = seq.realize(n, rep)?;
                    for (k, &c) in c_grid.iter().enumerate() {
                        if tail_sum(&pair, c) > th.eps_tail {
                            exceed[k] += 1;
                        }
                    }
                }
                exceed
                    .iter()
                    .map(|&e| e as f64 / replicates as f64)
                    .collect()
            }
        };
        rows.push(TailRow { n, values });
    }

    // limsup surrogate: max over the top half of the n-grid
    let top_start = seq.n_grid.len() / 2;
    let limsup_estimates: Vec<f64> = (0..c_grid.len())
        .map(|k| {
            rows[top_start..]
                .iter()
                .map(|r| r.values[k])
                .fold(0.0, f64::max)
        })
        .collect();

    let tol = match mode {
        EvalMode::Deterministic => th.eps_tail,
        EvalMode::MonteCarlo { .. } => th.exceedance_tol,
    };
    let verdict = if seq.n_grid.len() < th.min_grid {
        Verdict::Inconclusive
    } else if *limsup_estimates.last().expect("c_grid nonempty") <= tol {
        Verdict::Consistent
    } else {
        Verdict::Inconsistent
    };
    let condition = if seq.is_random() {
        ConditionId::T2iib
    } else {
        ConditionId::T1iib
    };
    let values = c_grid
        .iter()
        .zip(&limsup_estimates)
        .map(|(&c, &v)| StatSample {
            x: c,
            value: v,
            upper: None,
        })
        .collect();
    Ok(TailReport {
        c_grid: c_grid.to_vec(),
        rows,
        limsup_estimates: limsup_estimates.clone(),
        verdict: CriterionVerdict {
            condition,
            values,
            trend: None,
            verdict,
            thresholds: *th,
        },
    })
}

/// The normalized square-difference sum `sum (p - p')^2 / p` with the
/// `0/0 = 0` convention.
pub fn square_over_p_sum(pair: &ProbPair) -> f64 {
    let mut acc = CompensatedSum::new();
    for (p, q) in pair.values() {
        let d = p - q;
        if d == 0.0 {
            continue;
        }
        if p == 0.0 {
            return f64::INFINITY;
        }
        acc.add(d * d / p);
    }
    acc.value()
}

/// Diagnostic for the corollary conditions on edge-indexed pairs with small
/// left probabilities.
#[derive(Clone, Debug, Serialize)]
pub struct C1Diagnostic {
    pub samples: Vec<StatSample>,
    pub vanishing: CriterionVerdict,
    pub bounded: CriterionVerdict,
    /// Per n: largest left entry observed (over replicates, if random).
    pub max_left: Vec<StatSample>,
    /// True when some left entry exceeded the 0.9 hypothesis bound.
    pub hypothesis_violated: bool,
}

/// Evaluates `sum (p - p')^2 / p`; the vanishing reading is the equivalence
/// criterion, the bounded reading the contiguity one. Warns (via
/// `hypothesis_violated`) when left entries exceed 0.9.
pub fn c1_diagnostic(seq: &SequencePair, mode: EvalMode, th: &VerdictThresholds) -> Result<C1Diagnostic> {
    let samples = evaluate_statistic(seq, mode, square_over_p_sum)?;
    let max_left = evaluate_statistic(seq, mode, |pair| {
        pair.left().values().fold(0.0, f64::max)
    })?;
    let hypothesis_violated = max_left
        .iter()
        .any(|s| s.value > 0.9 || s.upper.is_some_and(|u| u > 0.9));
    let (vanishing, bounded) = verdict_pair(&samples, ConditionId::C1i, ConditionId::C1ii, th);
    Ok(C1Diagnostic {
        samples,
        vanishing,
        bounded,
        max_left,
        hypothesis_violated,
    })
}

/// Per-n side evidence for the cubic-sum corollary.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct C2SideRow {
    pub n: u32,
    /// max over entries of `|p' - p| / p^2` (0/0 counts as 0).
    pub k_max: f64,
    pub max_p: f64,
    pub max_p_prime: f64,
    /// min over entries of `p' / p` (entries with p = p' = 0 skipped).
    pub min_ratio: f64,
}

/// Diagnostic for the cubic-sum conditions with the `p' = p + O(p^2)`
/// hypothesis checked empirically.
#[derive(Clone, Debug, Serialize)]
pub struct C2Diagnostic {
    pub samples: Vec<StatSample>,
    pub vanishing: CriterionVerdict,
    /// Bounded cubic sums combined with the side conditions
    /// (`max p, max p' <= 0.9` and `p' >= c p` for some `c > 0`).
    pub bounded: CriterionVerdict,
    pub side: Vec<C2SideRow>,
    /// True when `K_n = max |p' - p|/p^2` grows along the grid, i.e. the
    /// `p' = p + O(p^2)` hypothesis looks violated.
    pub k_growth_flagged: bool,
    /// Best empirical constant with `p' >= c p` across the grid.
    pub best_c: f64,
}

/// Sum of cubes of left probabilities.
pub fn cube_sum(pair: &ProbPair) -> f64 {
    let mut acc = CompensatedSum::new();
    for p in pair.left().values() {
        acc.add(p * p * p);
    }
    acc.value()
}

fn c2_side_row(n: u32, pair: &ProbPair) -> C2SideRow {
    let mut k_max = 0.0f64;
    let mut max_p = 0.0f64;
    let mut max_pp = 0.0f64;
    let mut min_ratio = f64::INFINITY;
    for (p, q) in pair.values() {
        max_p = max_p.max(p);
        max_pp = max_pp.max(q);
        let d = (q - p).abs();
        if d > 0.0 {
            k_max = k_max.max(if p == 0.0 { f64::INFINITY } else { d / (p * p) });
        }
        if p > 0.0 {
            min_ratio = min_ratio.min(q / p);
        } else if q > 0.0 {
            min_ratio = min_ratio.min(0.0);
        }
    }
    if min_ratio == f64::INFINITY {
        // every entry had p = p' = 0
        min_ratio = 1.0;
    }
    C2SideRow {
        n,
        k_max,
        max_p,
        max_p_prime: max_pp,
        min_ratio,
    }
}

/// Evaluates `sum p^3` and the side conditions of the cubic-sum corollary.
pub fn c2_diagnostic(seq: &SequencePair, mode: EvalMode, th: &VerdictThresholds) -> Result<C2Diagnostic> {
    seq.check_mode(mode)?;
    let samples = evaluate_statistic(seq, mode, cube_sum)?;

    let mut side = Vec::with_capacity(seq.n_grid.len());
    for &n in seq.n_grid() {
        let row = match mode {
            EvalMode::Deterministic => c2_side_row(n, &seq.realize(n, 0)?),
            EvalMode::MonteCarlo { replicates } => {
                // worst case across replicates
                let mut agg = C2SideRow {
                    n,
                    k_max: 0.0,
                    max_p: 0.0,
                    max_p_prime: 0.0,
                    min_ratio: f64::INFINITY,
                };
                for rep in 0..replicates {
                    let row = c2_side_row(n, &seq.realize(n, rep)?);
                    agg.k_max = agg.k_max.max(row.k_max);
                    agg.max_p = agg.max_p.max(row.max_p);
                    agg.max_p_prime = agg.max_p_prime.max(row.max_p_prime);
                    agg.min_ratio = agg.min_ratio.min(row.min_ratio);
                }
                if agg.min_ratio == f64::INFINITY {
                    agg.min_ratio = 1.0;
                }
                agg
            }
        };
        side.push(row);
    }

    let k_points: Vec<(f64, f64)> = side.iter().map(|r| (f64::from(r.n), r.k_max)).collect();
    let k_growth_flagged = side.iter().any(|r| r.k_max.is_infinite())
        || fit_log_log(&k_points).is_some_and(|f| f.slope > th.slope_tol);
    let best_c = side.iter().map(|r| r.min_ratio).fold(f64::INFINITY, f64::min);

    let (vanishing, mut bounded) = verdict_pair(&samples, ConditionId::C2i, ConditionId::C2ii, th);
    let side_ok = side
        .iter()
        .all(|r| r.max_p <= 0.9 && r.max_p_prime <= 0.9 && r.min_ratio > 0.0);
    if bounded.verdict == Verdict::Consistent && !side_ok {
        bounded.verdict = Verdict::Inconsistent;
    }
    Ok(C2Diagnostic {
        samples,
        vanishing,
        bounded,
        side,
        k_growth_flagged,
        best_c,
    })
}

/// Options for the partial-sum dichotomy classifier.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct KakutaniOptions {
    /// Partial sums whose increase over the last decade of terms stays
    /// below this are classified as converging.
    pub plateau_increase_tol: f64,
    /// Sums exceeding this without flattening are classified as diverging.
    pub divergence_tol: f64,
}

impl Default for KakutaniOptions {
    fn default() -> Self {
        Self {
            plateau_increase_tol: 1e-4,
            divergence_tol: 0.5,
        }
    }
}

/// Classification of a fixed (n-independent) pair of infinite Bernoulli
/// products via the partial sums of `rho`: a finite sum means mutually
/// absolutely continuous distributions, a divergent sum mutually singular.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KakutaniClass {
    AbsolutelyContinuousConsistent,
    SingularConsistent,
    Inconclusive,
}

/// Partial sums of `rho` over a truncated infinite pair, with the plateau /
/// divergence classification.
#[derive(Clone, Debug, Serialize)]
pub struct KakutaniReport {
    pub checkpoints: Vec<u64>,
    pub partial_sums: Vec<f64>,
    /// Increase over the last decade of terms, when the checkpoint grid
    /// reaches back that far.
    pub plateau_increase: Option<f64>,
    pub class: KakutaniClass,
    pub options: KakutaniOptions,
}

/// Streams `rho` over the entries of a fixed infinite pair and records the
/// partial sums at the requested term counts (checkpoints).
///
/// The entry iterator must yield at least `checkpoints.last()` items; the
/// partial sums are nondecreasing by construction.
pub fn kakutani_partial_sums(
    entries: impl IntoIterator<Item = (Prob, Prob)>,
    checkpoints: &[u64],
    options: KakutaniOptions,
) -> Result<KakutaniReport> {
    if checkpoints.is_empty() || checkpoints.windows(2).any(|w| w[0] >= w[1]) || checkpoints[0] == 0
    {
        return Err(Error::InvalidDiagnostic(
            "checkpoints must be nonempty, positive and strictly increasing".into(),
        ));
    }
    let mut sums = Vec::with_capacity(checkpoints.len());
    let mut acc = CompensatedSum::new();
    let mut count = 0u64;
    let mut next = 0usize;
    for (p, q) in entries {
        acc.add(rho(p, q));
        count += 1;
        if count == checkpoints[next] {
            sums.push(acc.value());
            next += 1;
            if next == checkpoints.len() {
                break;
            }
        }
    }
    if next < checkpoints.len() {
        return Err(Error::InvalidDiagnostic(format!(
            "pair sequence ended после {count} terms, before checkpoint {}",
            checkpoints[next]
        )));
    }

    let last = *checkpoints.last().expect("nonempty");
    let total = *sums.last().expect("nonempty");
    let decade_start = checkpoints
        .iter()
        .rposition(|&k| k <= last / 10)
        .map(|idx| sums[idx]);
    let plateau_increase = decade_start.map(|s| total - s);
    let class = match plateau_increase {
        Some(inc) if inc < options.plateau_increase_tol => {
            KakutaniClass::AbsolutelyContinuousConsistent
        }
        _ if total > options.divergence_tol => KakutaniClass::SingularConsistent,
        Some(_) => KakutaniClass::Inconclusive,
        None => KakutaniClass::Inconclusive,
    };
    Ok(KakutaniReport {
        checkpoints: checkpoints.to_vec(),
        partial_sums: sums,
        plateau_increase,
        class,
        options,
    })
}
