//! Numerical certification of every claim the library is built on.
//!
//! Each check recomputes a claim from scratch, records the numbers it saw as
//! witnesses, and derives a pass/fail status mechanically from those
//! witnesses and a tolerance. Negative controls run the same predicates on
//! boundary parameters where they must fail, and are flagged as
//! expected-fail so a report is only clean when the failures are exactly the
//! planned ones. All checks are deterministic given the echoed configuration.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dist::{Atom, DeltaParams, FiniteJointDistribution};
use crate::error::{Error, Result};
use crate::hsic::{
    closed_form_objective, exact_hsic_centered_pm1, exact_hsic_subset, exact_hsic_weighted,
    proportionality_constant, HsicEvaluator, WeightVector,
};
use crate::kernel::{RadialXKernel, ResponseKernel};
use crate::select::{
    check_elimination_condition, pick_delta, select_continuous, select_subset,
    ContinuousSearchConfig, FeatureSubset, LqNorm,
};

/// Margin for strict inequalities whose scale is of order one.
pub const STRICT_MARGIN: f64 = 1e-6;
/// Margin for strict inequalities on doubly-exponential tail scales, where
/// true gaps on the default grids drop to the 1e-7..1e-10 range. Set three
/// orders above the accumulated roundoff of the expressions involved.
pub const ROUNDOFF_MARGIN: f64 = 1e-12;
/// Absolute tolerance for identities.
pub const IDENTITY_TOLERANCE: f64 = 1e-12;

// Claims covered by the suite. The coverage check fails if any of these has
// no outcome in the assembled report.
pub const ANCHOR_RADIAL_FAMILY: &str =
    "radial feature kernels: strictly decreasing exponential-mixture profiles, positive semidefinite";
pub const ANCHOR_RESPONSE_FAMILY: &str =
    "response kernels: product-form and distance-form admissibility gaps";
pub const ANCHOR_AXIOMS: &str =
    "dependence measure: nonnegative everywhere, zero under independence";
pub const ANCHOR_DISCRETE_COUNTEREXAMPLE: &str =
    "subset maximizer discards a feature the response still needs";
pub const ANCHOR_CONTINUOUS_COUNTEREXAMPLE: &str =
    "continuous-weight maximizer discards a feature the response still needs";
pub const ANCHOR_NONEMPTY_SELECTION: &str =
    "characteristic kernels: selection is nonempty and dependent unless fully independent";
pub const ANCHOR_COUNTEREXAMPLE_LAW: &str =
    "planted two-signal law: balanced response, conditional independence, product marginals";
pub const ANCHOR_CONDITIONAL_FORMS: &str =
    "closed-form conditional expectations of the planted law";
pub const ANCHOR_RELEVANCE_GAPS: &str =
    "both planted features carry signal: positive conditional-expectation gaps";
pub const ANCHOR_PROPORTIONALITY: &str =
    "weighted dependence equals a positive constant times the closed-form objective";
pub const ANCHOR_DISTANCE_CONSTANT: &str =
    "distance-form proportionality constant pinned by the measured ratio";
pub const ANCHOR_SIGN_SYMMETRY: &str = "objective depends on weights only through magnitudes";
pub const ANCHOR_DOMINANT_MONOTONICITY: &str =
    "objective strictly increases in the dominant weight";
pub const ANCHOR_PERMUTATION: &str =
    "weighting the dominant feature higher beats the swapped assignment";
pub const ANCHOR_REMOVAL: &str =
    "once the elimination condition holds, zeroing the weaker weight raises the objective";
pub const ANCHOR_CHEBYSHEV: &str =
    "profile-difference ratio is bounded by the normalized profile";
pub const ANCHOR_ELIMINATION_FEASIBILITY: &str =
    "admissible signal strengths satisfying the elimination condition always exist";
pub const ANCHOR_PADDING: &str = "zero-padded feature coordinates change nothing";
pub const ANCHOR_CENTERING: &str = "centered evaluation route agrees with the direct route";

const ANCHOR_REGISTRY: &[&str] = &[
    ANCHOR_RADIAL_FAMILY,
    ANCHOR_RESPONSE_FAMILY,
    ANCHOR_AXIOMS,
    ANCHOR_DISCRETE_COUNTEREXAMPLE,
    ANCHOR_CONTINUOUS_COUNTEREXAMPLE,
    ANCHOR_NONEMPTY_SELECTION,
    ANCHOR_COUNTEREXAMPLE_LAW,
    ANCHOR_CONDITIONAL_FORMS,
    ANCHOR_RELEVANCE_GAPS,
    ANCHOR_PROPORTIONALITY,
    ANCHOR_DISTANCE_CONSTANT,
    ANCHOR_SIGN_SYMMETRY,
    ANCHOR_DOMINANT_MONOTONICITY,
    ANCHOR_PERMUTATION,
    ANCHOR_REMOVAL,
    ANCHOR_CHEBYSHEV,
    ANCHOR_ELIMINATION_FEASIBILITY,
    ANCHOR_PADDING,
    ANCHOR_CENTERING,
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
}

/// One certified claim: the status derives mechanically from the recorded
/// witnesses and the tolerance.
#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub status: CheckStatus,
    pub witnesses: BTreeMap<String, f64>,
    pub tolerance: f64,
    pub paper_anchor: String,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub expected_fail: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckOutcome {
    /// A negative control is healthy when it fails; everything else when it
    /// passes.
    pub fn ok(&self) -> bool {
        if self.expected_fail {
            self.status == CheckStatus::Fail
        } else {
            self.status == CheckStatus::Pass
        }
    }
}

fn outcome(
    name: String,
    anchor: &str,
    tolerance: f64,
    pass: bool,
    witnesses: Vec<(&str, f64)>,
) -> CheckOutcome {
    CheckOutcome {
        name,
        status: if pass {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        },
        witnesses: witnesses
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect(),
        tolerance,
        paper_anchor: anchor.to_string(),
        expected_fail: false,
        note: None,
    }
}

/// Kernel grids, parameter grids, and seeds for a verification run.
/// A report echoes its config; re-running with the echo reproduces every
/// witness bitwise.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyConfig {
    pub kernels_x: Vec<RadialXKernel>,
    pub kernels_y: Vec<ResponseKernel>,
    /// Ordered signal-strength pairs, dominant first.
    pub delta_grid: Vec<(f64, f64)>,
    pub beta_axis: Vec<f64>,
    pub q: LqNorm,
    pub r: f64,
    pub grid_points_per_axis: usize,
    pub refine_iterations: usize,
    pub seeds: Vec<u64>,
    pub negative_controls: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        let values: Vec<f64> = (1..=9).map(|i| i as f64 / 10.0).collect();
        let mut delta_grid = Vec::new();
        for &d1 in &values {
            for &d2 in &values {
                if d1 > d2 {
                    delta_grid.push((d1, d2));
                }
            }
        }
        Self {
            kernels_x: vec![RadialXKernel::Gaussian, RadialXKernel::Laplace],
            kernels_y: vec![
                ResponseKernel::ProductIdentity,
                ResponseKernel::DistanceGaussian,
            ],
            delta_grid,
            beta_axis: (0..=8).map(|i| i as f64 * 0.25).collect(),
            q: LqNorm::Infinity,
            r: 1.0,
            grid_points_per_axis: 513,
            refine_iterations: 3,
            seeds: vec![42],
            negative_controls: true,
        }
    }
}

/// The full certification output: outcomes in registry order plus the
/// configuration that produced them.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub outcomes: Vec<CheckOutcome>,
    pub config: VerifyConfig,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn all_ok(&self) -> bool {
        self.outcomes.iter().all(CheckOutcome::ok)
    }
}

fn validate_grids(delta_grid: &[(f64, f64)], beta_axis: &[f64]) -> Result<()> {
    if delta_grid.is_empty() {
        return Err(Error::Domain("signal-strength grid is empty".into()));
    }
    for &(d1, d2) in delta_grid {
        if !(d1.is_finite() && d2.is_finite() && 0.0 < d2 && d2 <= d1 && d1 < 1.0) {
            return Err(Error::Domain(format!(
                "signal-strength pair ({d1}, {d2}) must satisfy 0 < d2 <= d1 < 1"
            )));
        }
    }
    if beta_axis.is_empty() {
        return Err(Error::Domain("weight axis is empty".into()));
    }
    for pair in beta_axis.windows(2) {
        if !(pair[0] < pair[1]) {
            return Err(Error::Domain(
                "weight axis must be strictly increasing".into(),
            ));
        }
    }
    if !beta_axis.iter().all(|b| b.is_finite() && *b >= 0.0) {
        return Err(Error::Domain(
            "weight axis must be finite and nonnegative".into(),
        ));
    }
    Ok(())
}

fn ordered_pairs(delta_grid: &[(f64, f64)]) -> Vec<(f64, f64)> {
    delta_grid.iter().copied().filter(|(a, b)| a > b).collect()
}

fn diagonal_values(delta_grid: &[(f64, f64)]) -> Vec<f64> {
    let mut set = BTreeSet::new();
    for &(d1, d2) in delta_grid {
        set.insert(d1.to_bits());
        set.insert(d2.to_bits());
    }
    set.into_iter().map(f64::from_bits).collect()
}

fn params(d1: f64, d2: f64) -> DeltaParams {
    DeltaParams::new(d1, d2, 2).expect("validated grid pair")
}

// ---------------------------------------------------------------------------
// counterexample end-to-end checks
// ---------------------------------------------------------------------------

fn theorem1_outcome(
    kx: &RadialXKernel,
    ky: &ResponseKernel,
    delta: &DeltaParams,
    name: String,
) -> Result<CheckOutcome> {
    let dist = FiniteJointDistribution::counterexample(delta);
    let selection = select_subset(&dist, kx, ky)?;
    let gap = dist.l2_gap(&selection.subset)?;
    let audit_values: Vec<f64> = selection.audit.iter().map(|e| e.value()).collect();
    let selected_dominant = selection.subset.indices() == [1];
    let pass = selected_dominant && gap > STRICT_MARGIN;
    Ok(outcome(
        name,
        ANCHOR_DISCRETE_COUNTEREXAMPLE,
        STRICT_MARGIN,
        pass,
        vec![
            ("delta1", delta.delta1),
            ("delta2", delta.delta2),
            ("hsic_empty", audit_values[0]),
            ("hsic_first", audit_values[1]),
            ("hsic_second", audit_values[2]),
            ("hsic_both", audit_values[3]),
            ("gap_selected", gap),
            ("selected_cardinality", selection.subset.len() as f64),
            ("selected_is_dominant", selected_dominant as u8 as f64),
        ],
    ))
}

/// Picks signal strengths for the kernel, runs the exhaustive subset search
/// on the planted law, and certifies that the maximizer is exactly the
/// dominant feature while the conditional-expectation gap stays positive.
pub fn check_theorem1(kx: &RadialXKernel, ky: &ResponseKernel) -> Result<CheckOutcome> {
    let delta = pick_delta(kx, 1.0)?;
    theorem1_outcome(kx, ky, &delta, format!("theorem1/{kx}/{ky}"))
}

/// Same certification with caller-forced signal strengths; used for boundary
/// parameters where the predicate is expected to fail.
pub fn check_theorem1_at(
    kx: &RadialXKernel,
    ky: &ResponseKernel,
    delta: &DeltaParams,
) -> Result<CheckOutcome> {
    theorem1_outcome(kx, ky, delta, format!("theorem1/{kx}/{ky}"))
}

/// Continuous-weight counterpart: solves for the dominant weight scale from
/// the ball geometry, picks admissible signal strengths, runs the grid plus
/// refinement search, and certifies that the support collapses onto the
/// dominant feature.
pub fn check_theorem2(
    kx: &RadialXKernel,
    ky: &ResponseKernel,
    q: LqNorm,
    r: f64,
) -> Result<CheckOutcome> {
    check_theorem2_with(kx, ky, q, r, 513, 3)
}

pub fn check_theorem2_with(
    kx: &RadialXKernel,
    ky: &ResponseKernel,
    q: LqNorm,
    r: f64,
    grid_points: usize,
    refine_iterations: usize,
) -> Result<CheckOutcome> {
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::Domain(format!(
            "ball radius must be positive, got {r}"
        )));
    }
    // the equal-weights scale: the largest b with ||(b, b)||_q <= r
    let b0 = r / q.norm(&[1.0, 1.0]);
    let delta = pick_delta(kx, b0)?;
    let dist = FiniteJointDistribution::counterexample(&delta);
    let cfg = ContinuousSearchConfig::new(q, r)?
        .with_grid_points(grid_points)?
        .with_refine_iterations(refine_iterations);
    let selection = select_continuous(&dist, kx, ky, &cfg)?;
    let weights = selection.weights.as_ref().expect("continuous mode");
    let beta = weights.as_slice();
    let norm = q.norm(beta);
    let gap = dist.l2_gap(&FeatureSubset::new(vec![1])?)?;
    let condition = check_elimination_condition(kx, b0, &delta)?;
    let support_dominant = selection.subset.indices() == [1];
    let pass = support_dominant && gap > STRICT_MARGIN && condition.holds;
    Ok(outcome(
        format!("theorem2/{kx}/{ky}/q={q}/r={r}"),
        ANCHOR_CONTINUOUS_COUNTEREXAMPLE,
        STRICT_MARGIN,
        pass,
        vec![
            ("b0", b0),
            ("delta1", delta.delta1),
            ("delta2", delta.delta2),
            ("beta_star_1", beta[0]),
            ("beta_star_2", beta[1]),
            ("norm_q", norm),
            ("condition_lhs", condition.lhs),
            ("condition_rhs", condition.rhs),
            ("gap_dominant", gap),
            ("attained", selection.attained.value),
            ("support_is_dominant", support_dominant as u8 as f64),
        ],
    ))
}

// ---------------------------------------------------------------------------
// objective-surface checks
// ---------------------------------------------------------------------------

fn relevance_gaps_outcome(delta_grid: &[(f64, f64)]) -> Result<CheckOutcome> {
    let pairs = ordered_pairs(delta_grid);
    let mut min_first = f64::MAX;
    let mut min_second = f64::MAX;
    let mut min_empty = f64::MAX;
    for &(d1, d2) in &pairs {
        let dist = FiniteJointDistribution::counterexample(&params(d1, d2));
        min_first = min_first.min(dist.l2_gap(&FeatureSubset::new(vec![1])?)?);
        min_second = min_second.min(dist.l2_gap(&FeatureSubset::new(vec![2])?)?);
        min_empty = min_empty.min(dist.l2_gap(&FeatureSubset::empty())?);
    }
    let pass = min_first > STRICT_MARGIN && min_second > STRICT_MARGIN && min_empty > STRICT_MARGIN;
    Ok(outcome(
        "relevance_gaps".into(),
        ANCHOR_RELEVANCE_GAPS,
        STRICT_MARGIN,
        pass,
        vec![
            ("min_gap_first", min_first),
            ("min_gap_second", min_second),
            ("min_gap_empty", min_empty),
            ("pairs", pairs.len() as f64),
        ],
    ))
}

fn relevance_gaps_boundary_outcome(delta_grid: &[(f64, f64)]) -> Result<CheckOutcome> {
    // with the weaker signal absent, the dominant feature alone suffices
    let mut max_gap = 0.0f64;
    for d1 in diagonal_values(delta_grid) {
        let dist = FiniteJointDistribution::counterexample(&DeltaParams::new(d1, 0.0, 2)?);
        max_gap = max_gap.max(dist.l2_gap(&FeatureSubset::new(vec![1])?)?);
    }
    Ok(outcome(
        "relevance_gaps_boundary".into(),
        ANCHOR_RELEVANCE_GAPS,
        IDENTITY_TOLERANCE,
        max_gap <= IDENTITY_TOLERANCE,
        vec![("max_gap_dominant_only", max_gap)],
    ))
}

fn proportionality_outcome(
    kx: &RadialXKernel,
    ky: &ResponseKernel,
    delta_grid: &[(f64, f64)],
    beta_axis: &[f64],
) -> Result<CheckOutcome> {
    let constant = proportionality_constant(ky)?;
    let mut max_residual = 0.0f64;
    let mut max_ratio_dev = 0.0f64;
    let mut ratio_cells = 0usize;
    for &(d1, d2) in delta_grid {
        let p = params(d1, d2);
        let dist = FiniteJointDistribution::counterexample(&p);
        let evaluator = HsicEvaluator::new(&dist, kx, ky);
        for &b1 in beta_axis {
            for &b2 in beta_axis {
                let exact = evaluator.evaluate(&[b1, b2]);
                let surrogate = closed_form_objective(&p, b1, b2, kx);
                max_residual = max_residual.max((exact - constant * surrogate).abs());
                if surrogate.abs() > 1e-9 {
                    ratio_cells += 1;
                    max_ratio_dev = max_ratio_dev.max((exact / surrogate - constant).abs());
                }
            }
        }
    }
    let pass = max_residual <= IDENTITY_TOLERANCE && max_ratio_dev <= IDENTITY_TOLERANCE;
    Ok(outcome(
        format!("proportionality/{kx}/{ky}"),
        ANCHOR_PROPORTIONALITY,
        IDENTITY_TOLERANCE,
        pass,
        vec![
            ("constant", constant),
            ("max_abs_residual", max_residual),
            ("max_ratio_deviation", max_ratio_dev),
            ("ratio_cells", ratio_cells as f64),
        ],
    ))
}

fn constant_validation_outcome(kx: &RadialXKernel, ky: &ResponseKernel) -> Result<CheckOutcome> {
    // measure the ratio at a well-conditioned reference cell
    let p = params(0.9, 0.1);
    let dist = FiniteJointDistribution::counterexample(&p);
    let exact = exact_hsic_weighted(&dist, kx, ky, &WeightVector::new(vec![1.0, 0.0])?)?.value;
    let measured = exact / closed_form_objective(&p, 1.0, 0.0, kx);
    let constant = proportionality_constant(ky)?;
    let deviation = (measured - constant).abs();
    let mut witnesses = vec![
        ("constant_implemented", constant),
        ("ratio_measured", measured),
        ("deviation", deviation),
    ];
    let mut note = None;
    if !ky.is_product_form() {
        // the naive distance-form constant reads phi(1) where the support
        // only ever produces phi(0) and phi(2)
        let naive = (ky.eval(0.0, 0.0) - ky.eval(1.0, 0.0)) / 8.0;
        witnesses.push(("constant_naive_phi1", naive));
        witnesses.push(("naive_deviation", (measured - naive).abs()));
        note = Some(format!(
            "measured ratio {measured:.17} matches (phi(0) - phi(2)) / 8; \
             the (phi(0) - phi(1)) / 8 variant is off by {:.3e}",
            (measured - naive).abs()
        ));
    }
    let mut out = outcome(
        format!("proportionality_constant_validation/{kx}/{ky}"),
        ANCHOR_DISTANCE_CONSTANT,
        IDENTITY_TOLERANCE,
        deviation <= IDENTITY_TOLERANCE,
        witnesses,
    );
    out.note = note;
    Ok(out)
}

fn sign_symmetry_outcome(
    kx: &RadialXKernel,
    ky: &ResponseKernel,
    delta_grid: &[(f64, f64)],
    beta_axis: &[f64],
) -> Result<CheckOutcome> {
    let mut max_objective_dev = 0.0f64;
    for &(d1, d2) in delta_grid {
        let p = params(d1, d2);
        for &b1 in beta_axis {
            for &b2 in beta_axis {
                let base = closed_form_objective(&p, b1, b2, kx);
                for (s1, s2) in [(-1.0, 1.0), (1.0, -1.0), (-1.0, -1.0)] {
                    let flipped = closed_form_objective(&p, s1 * b1, s2 * b2, kx);
                    max_objective_dev = max_objective_dev.max((flipped - base).abs());
                }
            }
        }
    }
    // the dependence value itself must also ignore weight signs
    let p = params(0.9, 0.4);
    let dist = FiniteJointDistribution::counterexample(&p);
    let evaluator = HsicEvaluator::new(&dist, kx, ky);
    let mut max_hsic_dev = 0.0f64;
    for &b1 in beta_axis {
        for &b2 in beta_axis {
            let base = evaluator.evaluate(&[b1, b2]);
            for flipped in [[-b1, b2], [b1, -b2], [-b1, -b2]] {
                max_hsic_dev = max_hsic_dev.max((evaluator.evaluate(&flipped) - base).abs());
            }
        }
    }
    let pass = max_objective_dev <= IDENTITY_TOLERANCE && max_hsic_dev <= IDENTITY_TOLERANCE;
    Ok(outcome(
        format!("sign_symmetry/{kx}/{ky}"),
        ANCHOR_SIGN_SYMMETRY,
        IDENTITY_TOLERANCE,
        pass,
        vec![
            ("max_abs_objective_deviation", max_objective_dev),
            ("max_abs_hsic_deviation", max_hsic_dev),
        ],
    ))
}

fn dominant_monotonicity_outcome(
    kx: &RadialXKernel,
    ky: &ResponseKernel,
    delta_grid: &[(f64, f64)],
    beta_axis: &[f64],
) -> Result<CheckOutcome> {
    let pairs = ordered_pairs(delta_grid);
    let mut min_increment = f64::MAX;
    let mut cells = 0usize;
    for &(d1, d2) in &pairs {
        let p = params(d1, d2);
        for &b2 in beta_axis {
            for step in beta_axis.windows(2) {
                let lo = closed_form_objective(&p, step[0], b2, kx);
                let hi = closed_form_objective(&p, step[1], b2, kx);
                min_increment = min_increment.min(hi - lo);
                cells += 1;
            }
        }
    }
    let mut out = outcome(
        format!("dominant_monotonicity/{kx}/{ky}"),
        ANCHOR_DOMINANT_MONOTONICITY,
        ROUNDOFF_MARGIN,
        min_increment >= ROUNDOFF_MARGIN,
        vec![
            ("min_increment", min_increment),
            ("cells", cells as f64),
        ],
    );
    out.note = Some(
        "strict increase certified above the 1e-12 roundoff floor; the smallest true \
         increments on the default grids sit near 1.4e-7 for the gaussian profile"
            .into(),
    );
    Ok(out)
}

fn permutation_outcome(
    kx: &RadialXKernel,
    ky: &ResponseKernel,
    delta_grid: &[(f64, f64)],
    beta_axis: &[f64],
) -> Result<CheckOutcome> {
    let pairs = ordered_pairs(delta_grid);
    let mut min_gap = f64::MAX;
    let mut cells = 0usize;
    for &(d1, d2) in &pairs {
        let p = params(d1, d2);
        for &b1 in beta_axis {
            for &b2 in beta_axis {
                if b1 > b2 {
                    let direct = closed_form_objective(&p, b1, b2, kx);
                    let swapped = closed_form_objective(&p, b2, b1, kx);
                    min_gap = min_gap.min(direct - swapped);
                    cells += 1;
                }
            }
        }
    }
    Ok(outcome(
        format!("permutation_preference/{kx}/{ky}"),
        ANCHOR_PERMUTATION,
        ROUNDOFF_MARGIN,
        min_gap >= ROUNDOFF_MARGIN,
        vec![("min_gap", min_gap), ("cells", cells as f64)],
    ))
}

fn removal_outcome(
    kx: &RadialXKernel,
    ky: &ResponseKernel,
    delta_grid: &[(f64, f64)],
    beta_axis: &[f64],
) -> Result<CheckOutcome> {
    let pairs = ordered_pairs(delta_grid);
    let mut min_gap = f64::MAX;
    let mut holds_cells = 0usize;
    let mut total_cells = 0usize;
    for &(d1, d2) in &pairs {
        let p = params(d1, d2);
        for &b1 in beta_axis {
            if b1 <= 0.0 {
                continue;
            }
            total_cells += 1;
            if !check_elimination_condition(kx, b1, &p)?.holds {
                continue;
            }
            holds_cells += 1;
            let without = closed_form_objective(&p, b1, 0.0, kx);
            for &b2 in beta_axis {
                if b2 > 0.0 {
                    min_gap = min_gap.min(without - closed_form_objective(&p, b1, b2, kx));
                }
            }
        }
    }
    let pass = holds_cells > 0 && min_gap >= STRICT_MARGIN;
    Ok(outcome(
        format!("weaker_signal_removal/{kx}/{ky}"),
        ANCHOR_REMOVAL,
        STRICT_MARGIN,
        pass,
        vec![
            ("min_gap", min_gap),
            ("cells_condition_holds", holds_cells as f64),
            ("cells_total", total_cells as f64),
        ],
    ))
}

fn removal_boundary_outcome(
    kx: &RadialXKernel,
    ky: &ResponseKernel,
    delta_grid: &[(f64, f64)],
    beta_axis: &[f64],
) -> Result<CheckOutcome> {
    // equal signals: the condition must never fire, and keeping the weaker
    // feature strictly helps
    let mut condition_fires = 0usize;
    let mut min_reverse_gap = f64::MAX;
    for d in diagonal_values(delta_grid) {
        let p = params(d, d);
        for &b1 in beta_axis {
            if b1 <= 0.0 {
                continue;
            }
            if check_elimination_condition(kx, b1, &p)?.holds {
                condition_fires += 1;
            }
            let without = closed_form_objective(&p, b1, 0.0, kx);
            for &b2 in beta_axis {
                if b2 > 0.0 {
                    let with = closed_form_objective(&p, b1, b2, kx);
                    min_reverse_gap = min_reverse_gap.min(with - without);
                }
            }
        }
    }
    let pass = condition_fires == 0 && min_reverse_gap >= ROUNDOFF_MARGIN;
    Ok(outcome(
        format!("weaker_signal_removal_boundary/{kx}/{ky}"),
        ANCHOR_REMOVAL,
        ROUNDOFF_MARGIN,
        pass,
        vec![
            ("condition_fires", condition_fires as f64),
            ("min_reverse_gap", min_reverse_gap),
        ],
    ))
}

fn chebyshev_outcome(
    kx: &RadialXKernel,
    ky: &ResponseKernel,
    beta_axis: &[f64],
) -> Result<CheckOutcome> {
    let mut min_slack = f64::MAX;
    let mut max_abs_slack = 0.0f64;
    let mut min_slack_positive = f64::MAX;
    for &b1 in beta_axis {
        let z1 = 4.0 * b1 * b1;
        let bound = kx.schoenberg_ratio(z1)?;
        for &b2 in beta_axis {
            if b2 <= 0.0 {
                continue; // zero denominator: both profile differences vanish
            }
            let z2 = 4.0 * b2 * b2;
            let lhs = (kx.profile(z1) - kx.profile(z1 + z2)) / (kx.at_zero() - kx.profile(z2));
            let slack = bound - lhs;
            min_slack = min_slack.min(slack);
            max_abs_slack = max_abs_slack.max(slack.abs());
            if b1 > 0.0 {
                min_slack_positive = min_slack_positive.min(slack);
            }
        }
    }
    let bound_holds = min_slack >= -IDENTITY_TOLERANCE;
    let pass = match kx {
        // single-atom mixing measure: equality throughout
        RadialXKernel::Gaussian => bound_holds && max_abs_slack <= IDENTITY_TOLERANCE,
        // spread-out mixing measure: strictly positive slack off the trivial axis
        RadialXKernel::Laplace => bound_holds && min_slack_positive >= STRICT_MARGIN,
        RadialXKernel::Mixture(_) => bound_holds,
    };
    Ok(outcome(
        format!("ratio_chebyshev_bound/{kx}/{ky}"),
        ANCHOR_CHEBYSHEV,
        IDENTITY_TOLERANCE,
        pass,
        vec![
            ("min_slack", min_slack),
            ("max_abs_slack", max_abs_slack),
            ("min_slack_positive_beta1", min_slack_positive),
        ],
    ))
}

fn centering_outcome(
    kx: &RadialXKernel,
    ky: &ResponseKernel,
    delta_grid: &[(f64, f64)],
    beta_axis: &[f64],
) -> Result<CheckOutcome> {
    let mut max_dev = 0.0f64;
    let mut cells = 0usize;
    for &(d1, d2) in delta_grid {
        let dist = FiniteJointDistribution::counterexample(&params(d1, d2));
        for &b1 in beta_axis {
            for &b2 in beta_axis {
                let weights = WeightVector::new(vec![b1, b2])?;
                let direct = exact_hsic_weighted(&dist, kx, ky, &weights)?.value;
                let centered = exact_hsic_centered_pm1(&dist, kx, ky, &weights)?;
                max_dev = max_dev.max((direct - centered).abs());
                cells += 1;
            }
        }
    }
    Ok(outcome(
        format!("centering_equivalence/{kx}/{ky}"),
        ANCHOR_CENTERING,
        IDENTITY_TOLERANCE,
        max_dev <= IDENTITY_TOLERANCE,
        vec![("max_abs_deviation", max_dev), ("cells", cells as f64)],
    ))
}

/// The objective-surface certifications for one kernel pair: relevance gaps,
/// proportionality and its constant, sign symmetry, the three ordering
/// inequalities with their equal-signals boundary control, the ratio bound,
/// and the centered-route equivalence.
pub fn check_lemma_suite(
    kx: &RadialXKernel,
    ky: &ResponseKernel,
    delta_grid: &[(f64, f64)],
    beta_axis: &[f64],
) -> Result<Vec<CheckOutcome>> {
    validate_grids(delta_grid, beta_axis)?;
    Ok(vec![
        relevance_gaps_outcome(delta_grid)?,
        proportionality_outcome(kx, ky, delta_grid, beta_axis)?,
        constant_validation_outcome(kx, ky)?,
        sign_symmetry_outcome(kx, ky, delta_grid, beta_axis)?,
        dominant_monotonicity_outcome(kx, ky, delta_grid, beta_axis)?,
        permutation_outcome(kx, ky, delta_grid, beta_axis)?,
        removal_outcome(kx, ky, delta_grid, beta_axis)?,
        removal_boundary_outcome(kx, ky, delta_grid, beta_axis)?,
        chebyshev_outcome(kx, ky, beta_axis)?,
        centering_outcome(kx, ky, delta_grid, beta_axis)?,
    ])
}

// ---------------------------------------------------------------------------
// kernel and distribution structure checks
// ---------------------------------------------------------------------------

fn profile_decrease_outcome(kx: &RadialXKernel, beta_axis: &[f64]) -> Result<CheckOutcome> {
    let zs: Vec<f64> = beta_axis.iter().map(|b| 4.0 * b * b).collect();
    let mut min_decrement = f64::MAX;
    for pair in zs.windows(2) {
        let hi = kx.schoenberg_ratio(pair[0])?;
        let lo = kx.schoenberg_ratio(pair[1])?;
        min_decrement = min_decrement.min(hi - lo);
    }
    let at_zero = kx.schoenberg_ratio(0.0)?;
    let pass = min_decrement >= ROUNDOFF_MARGIN && at_zero == 1.0 && kx.at_zero() > 0.0;
    Ok(outcome(
        format!("radial_profile_strict_decrease/{kx}"),
        ANCHOR_RADIAL_FAMILY,
        ROUNDOFF_MARGIN,
        pass,
        vec![
            ("min_decrement", min_decrement),
            ("ratio_at_zero", at_zero),
            ("profile_at_zero", kx.at_zero()),
        ],
    ))
}

fn psd_outcome(kernels_x: &[RadialXKernel], seed: u64) -> Result<CheckOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut min_normalized = f64::MAX;
    let trials = 100;
    for trial in 0..trials {
        let kx = if trial % 3 == 2 {
            let atoms = (0..rng.gen_range(1..4))
                .map(|_| (rng.gen_range(0.05..5.0), rng.gen_range(0.1..2.0)))
                .collect();
            RadialXKernel::mixture(atoms)?
        } else {
            kernels_x[trial % kernels_x.len()].clone()
        };
        let n = rng.gen_range(2..8);
        let dim = rng.gen_range(1..4);
        let points: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..dim).map(|_| rng.gen_range(-3.0..3.0)).collect())
            .collect();
        let coeffs: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let mut quad = 0.0;
        for i in 0..n {
            for j in 0..n {
                quad += coeffs[i] * coeffs[j] * kx.eval(&points[i], &points[j])?;
            }
        }
        let scale: f64 = coeffs.iter().map(|c| c.abs()).sum();
        min_normalized = min_normalized.min(quad / (scale * scale * kx.at_zero()));
    }
    Ok(outcome(
        "radial_kernel_psd_randomized".into(),
        ANCHOR_RADIAL_FAMILY,
        1e-10,
        min_normalized >= -1e-10,
        vec![
            ("min_normalized_quadratic_form", min_normalized),
            ("trials", trials as f64),
        ],
    ))
}

fn response_admissibility_outcome(ky: &ResponseKernel) -> CheckOutcome {
    let mut witnesses = Vec::new();
    let pass;
    if ky.is_product_form() {
        let gap = ky.eval(1.0, 1.0) - ky.eval(1.0, -1.0);
        pass = gap > STRICT_MARGIN;
        witnesses.push(("gap_product_pm1", gap));
    } else {
        let gap_unit = ky.eval(0.0, 0.0) - ky.eval(1.0, 0.0);
        let gap_pm1 = ky.eval(1.0, 1.0) - ky.eval(1.0, -1.0);
        pass = gap_unit > STRICT_MARGIN && gap_pm1 > STRICT_MARGIN;
        witnesses.push(("gap_distance_unit", gap_unit));
        witnesses.push(("gap_distance_pm1", gap_pm1));
    }
    outcome(
        format!("response_kernel_admissibility/{ky}"),
        ANCHOR_RESPONSE_FAMILY,
        STRICT_MARGIN,
        pass,
        witnesses,
    )
}

fn law_structure_outcome(delta_grid: &[(f64, f64)]) -> Result<CheckOutcome> {
    let mut max_balance_dev = 0.0f64;
    let mut max_marginal_dev = 0.0f64;
    let mut max_cond_indep_dev = 0.0f64;
    for &(d1, d2) in delta_grid {
        let dist = FiniteJointDistribution::counterexample(&params(d1, d2));
        let atoms = dist.atoms();
        let p_pos: f64 = atoms.iter().filter(|a| a.y == 1.0).map(|a| a.prob).sum();
        max_balance_dev = max_balance_dev.max((p_pos - 0.5).abs());
        for x1 in [1.0f64, -1.0] {
            for x2 in [1.0f64, -1.0] {
                let mass: f64 = atoms
                    .iter()
                    .filter(|a| a.x == [x1, x2])
                    .map(|a| a.prob)
                    .sum();
                let expected = (1.0 + d1 * d2 * x1 * x2) / 4.0;
                max_marginal_dev = max_marginal_dev.max((mass - expected).abs());
                for y in [1.0f64, -1.0] {
                    let p_y: f64 = atoms.iter().filter(|a| a.y == y).map(|a| a.prob).sum();
                    let joint: f64 = atoms
                        .iter()
                        .filter(|a| a.x == [x1, x2] && a.y == y)
                        .map(|a| a.prob)
                        .sum::<f64>()
                        / p_y;
                    let m1: f64 = atoms
                        .iter()
                        .filter(|a| a.x[0] == x1 && a.y == y)
                        .map(|a| a.prob)
                        .sum::<f64>()
                        / p_y;
                    let m2: f64 = atoms
                        .iter()
                        .filter(|a| a.x[1] == x2 && a.y == y)
                        .map(|a| a.prob)
                        .sum::<f64>()
                        / p_y;
                    max_cond_indep_dev = max_cond_indep_dev.max((joint - m1 * m2).abs());
                }
            }
        }
    }
    let pass = max_balance_dev <= IDENTITY_TOLERANCE
        && max_marginal_dev <= IDENTITY_TOLERANCE
        && max_cond_indep_dev <= IDENTITY_TOLERANCE;
    Ok(outcome(
        "counterexample_law_structure".into(),
        ANCHOR_COUNTEREXAMPLE_LAW,
        IDENTITY_TOLERANCE,
        pass,
        vec![
            ("max_balance_deviation", max_balance_dev),
            ("max_marginal_deviation", max_marginal_dev),
            ("max_cond_indep_deviation", max_cond_indep_dev),
        ],
    ))
}

fn conditional_forms_outcome(delta_grid: &[(f64, f64)]) -> Result<CheckOutcome> {
    let pairs = ordered_pairs(delta_grid);
    let mut max_dev_full = 0.0f64;
    let mut max_dev_first = 0.0f64;
    let mut max_dev_second = 0.0f64;
    let mut min_dev_second_alt = f64::MAX;
    let mut max_abs_mean = 0.0f64;
    for &(d1, d2) in &pairs {
        let dist = FiniteJointDistribution::counterexample(&params(d1, d2));
        for (x, e) in dist.conditional_expectation(&FeatureSubset::new(vec![1, 2])?)? {
            let expected = (d1 * x[0] + d2 * x[1]) / (1.0 + d1 * d2 * x[0] * x[1]);
            max_dev_full = max_dev_full.max((e - expected).abs());
        }
        for (x, e) in dist.conditional_expectation(&FeatureSubset::new(vec![1])?)? {
            max_dev_first = max_dev_first.max((e - d1 * x[0]).abs());
        }
        let mut alt_dev = 0.0f64;
        for (x, e) in dist.conditional_expectation(&FeatureSubset::new(vec![2])?)? {
            max_dev_second = max_dev_second.max((e - d2 * x[0]).abs());
            alt_dev = alt_dev.max((e - d1 * x[0]).abs());
        }
        min_dev_second_alt = min_dev_second_alt.min(alt_dev);
        let mean = dist.conditional_expectation(&FeatureSubset::empty())?[0].1;
        max_abs_mean = max_abs_mean.max(mean.abs());
    }
    let pass = max_dev_full <= IDENTITY_TOLERANCE
        && max_dev_first <= IDENTITY_TOLERANCE
        && max_dev_second <= IDENTITY_TOLERANCE
        && max_abs_mean <= IDENTITY_TOLERANCE;
    let mut out = outcome(
        "conditional_expectation_forms".into(),
        ANCHOR_CONDITIONAL_FORMS,
        IDENTITY_TOLERANCE,
        pass,
        vec![
            ("max_dev_full_form", max_dev_full),
            ("max_dev_first_form", max_dev_first),
            ("max_dev_second_form_delta2", max_dev_second),
            ("min_dev_second_form_delta1_variant", min_dev_second_alt),
            ("max_abs_mean", max_abs_mean),
        ],
    );
    out.note = Some(
        "the conditional expectation given the second feature matches delta2 * x2 \
         exactly; the delta1 * x2 variant does not match anywhere on the grid"
            .into(),
    );
    Ok(out)
}

fn padding_outcome(kx: &RadialXKernel, ky: &ResponseKernel) -> Result<CheckOutcome> {
    let low = FiniteJointDistribution::counterexample(&params(0.9, 0.1));
    let high = FiniteJointDistribution::counterexample(&DeltaParams::new(0.9, 0.1, 5)?);
    let mut bitwise = true;
    let mut max_dev = 0.0f64;
    for indices in [vec![1], vec![2], vec![1, 2]] {
        let subset = FeatureSubset::new(indices)?;
        let a = exact_hsic_subset(&low, kx, ky, &subset)?.value;
        let b = exact_hsic_subset(&high, kx, ky, &subset)?.value;
        bitwise &= a.to_bits() == b.to_bits();
        max_dev = max_dev.max((a - b).abs());
    }
    // arbitrary finite weights over the constant padded coordinates
    let a = exact_hsic_weighted(&low, kx, ky, &WeightVector::new(vec![1.0, 1.0])?)?.value;
    let b = exact_hsic_weighted(
        &high,
        kx,
        ky,
        &WeightVector::new(vec![1.0, 1.0, 0.7, -0.3, 2.5])?,
    )?
    .value;
    bitwise &= a.to_bits() == b.to_bits();
    max_dev = max_dev.max((a - b).abs());
    Ok(outcome(
        format!("padding_invariance/{kx}/{ky}"),
        ANCHOR_PADDING,
        0.0,
        bitwise,
        vec![
            ("bitwise_equal", bitwise as u8 as f64),
            ("max_abs_deviation", max_dev),
        ],
    ))
}

fn random_dist(rng: &mut ChaCha8Rng, max_atoms: usize) -> Result<FiniteJointDistribution> {
    let p = rng.gen_range(1..4);
    let m = rng.gen_range(2..=max_atoms.max(2));
    let mut weights = Vec::with_capacity(m);
    let mut atoms = Vec::with_capacity(m);
    for i in 0..m {
        let mut x: Vec<f64> = (0..p).map(|_| rng.gen_range(-8i32..=8) as f64 / 4.0).collect();
        x[0] = i as f64; // distinct support
        let y = rng.gen_range(-4i32..=4) as f64 / 2.0;
        weights.push(rng.gen_range(0.05..1.0));
        atoms.push(Atom { x, y, prob: 0.0 });
    }
    let total: f64 = weights.iter().sum();
    for (atom, w) in atoms.iter_mut().zip(&weights) {
        atom.prob = w / total;
    }
    FiniteJointDistribution::new(p, atoms)
}

fn random_product_dist(rng: &mut ChaCha8Rng) -> Result<FiniteJointDistribution> {
    let p = rng.gen_range(1..4);
    let nx = rng.gen_range(2..8);
    let ny = rng.gen_range(2..5);
    let mut x_masses: Vec<f64> = (0..nx).map(|_| rng.gen_range(0.05..1.0)).collect();
    let mut y_masses: Vec<f64> = (0..ny).map(|_| rng.gen_range(0.05..1.0)).collect();
    let xt: f64 = x_masses.iter().sum();
    let yt: f64 = y_masses.iter().sum();
    x_masses.iter_mut().for_each(|w| *w /= xt);
    y_masses.iter_mut().for_each(|w| *w /= yt);
    let xs: Vec<Vec<f64>> = (0..nx)
        .map(|i| {
            let mut x: Vec<f64> = (0..p).map(|_| rng.gen_range(-2.0..2.0)).collect();
            x[0] = i as f64;
            x
        })
        .collect();
    let ys: Vec<f64> = (0..ny).map(|i| i as f64 - 1.5).collect();
    let mut atoms = Vec::new();
    for (x, px) in xs.iter().zip(&x_masses) {
        for (y, py) in ys.iter().zip(&y_masses) {
            atoms.push(Atom {
                x: x.clone(),
                y: *y,
                prob: px * py,
            });
        }
    }
    FiniteJointDistribution::new(p, atoms)
}

fn random_kernel_pair(rng: &mut ChaCha8Rng) -> Result<(RadialXKernel, ResponseKernel)> {
    let kx = match rng.gen_range(0..3) {
        0 => RadialXKernel::Gaussian,
        1 => RadialXKernel::Laplace,
        _ => {
            let atoms = (0..rng.gen_range(1..4))
                .map(|_| (rng.gen_range(0.05..5.0), rng.gen_range(0.1..2.0)))
                .collect();
            RadialXKernel::mixture(atoms)?
        }
    };
    let ky = match rng.gen_range(0..4) {
        0 => ResponseKernel::ProductIdentity,
        1 => ResponseKernel::ProductExp,
        2 => ResponseKernel::DistanceGaussian,
        _ => ResponseKernel::DistanceLaplace,
    };
    Ok((kx, ky))
}

fn axioms_outcome(seed: u64) -> Result<CheckOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let trials = 100;
    let mut min_value = f64::MAX;
    for _ in 0..trials {
        let dist = random_dist(&mut rng, 64)?;
        let (kx, ky) = random_kernel_pair(&mut rng)?;
        let weights = WeightVector::new((0..dist.p()).map(|_| rng.gen_range(-1.5..1.5)).collect())?;
        min_value = min_value.min(exact_hsic_weighted(&dist, &kx, &ky, &weights)?.value);
    }
    let mut max_abs_product = 0.0f64;
    for _ in 0..trials {
        let dist = random_product_dist(&mut rng)?;
        let (kx, ky) = random_kernel_pair(&mut rng)?;
        let weights = WeightVector::new(vec![1.0; dist.p()])?;
        max_abs_product =
            max_abs_product.max(exact_hsic_weighted(&dist, &kx, &ky, &weights)?.value.abs());
    }
    let pass = min_value >= -IDENTITY_TOLERANCE && max_abs_product <= IDENTITY_TOLERANCE;
    Ok(outcome(
        "hsic_axioms_randomized".into(),
        ANCHOR_AXIOMS,
        IDENTITY_TOLERANCE,
        pass,
        vec![
            ("min_value_randomized", min_value),
            ("max_abs_value_product_laws", max_abs_product),
            ("trials_each", trials as f64),
        ],
    ))
}

fn nonempty_selection_outcome(delta_grid: &[(f64, f64)], seed: u64) -> Result<CheckOutcome> {
    // characteristic pair: gaussian feature kernel, gaussian distance
    // response kernel
    let kx = RadialXKernel::Gaussian;
    let ky = ResponseKernel::DistanceGaussian;
    let mut dependent_cases = 0usize;
    let mut min_attained = f64::MAX;
    let mut run = |dist: &FiniteJointDistribution| -> Result<bool> {
        let full = exact_hsic_subset(dist, &kx, &ky, &FeatureSubset::full(dist.p()))?.value;
        if full <= 1e-10 {
            return Ok(true); // not detectably dependent; no claim to certify
        }
        dependent_cases += 1;
        let selection = select_subset(dist, &kx, &ky)?;
        min_attained = min_attained.min(selection.attained.value);
        Ok(!selection.subset.is_empty() && selection.attained.value > 1e-10)
    };
    let mut all_nonempty = true;
    for &(d1, d2) in &ordered_pairs(delta_grid) {
        all_nonempty &= run(&FiniteJointDistribution::counterexample(&params(d1, d2)))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..10 {
        all_nonempty &= run(&random_dist(&mut rng, 12)?)?;
    }
    // independent control: the empty set must win with value exactly zero
    let control = random_product_dist(&mut rng)?;
    let control_selection = select_subset(&control, &kx, &ky)?;
    let control_ok =
        control_selection.subset.is_empty() && control_selection.attained.value == 0.0;
    let pass = all_nonempty && control_ok && dependent_cases > 0;
    Ok(outcome(
        "nonempty_selection_characteristic".into(),
        ANCHOR_NONEMPTY_SELECTION,
        1e-10,
        pass,
        vec![
            ("dependent_cases", dependent_cases as f64),
            ("min_attained_dependent", min_attained),
            ("control_attained", control_selection.attained.value),
            ("control_cardinality", control_selection.subset.len() as f64),
        ],
    ))
}

fn elimination_feasibility_outcome(kx: &RadialXKernel) -> Result<CheckOutcome> {
    let at_unit = pick_delta(kx, 1.0)?;
    let check_unit = check_elimination_condition(kx, 1.0, &at_unit)?;
    let at_small = pick_delta(kx, 0.05)?;
    let check_small = check_elimination_condition(kx, 0.05, &at_small)?;
    let pass = check_unit.holds
        && check_small.holds
        && at_unit.delta2 > 0.0
        && at_small.delta2 > 0.0
        && at_small.delta2 <= 0.1;
    Ok(outcome(
        format!("elimination_condition_feasibility/{kx}"),
        ANCHOR_ELIMINATION_FEASIBILITY,
        0.0,
        pass,
        vec![
            ("lhs_at_unit_weight", check_unit.lhs),
            ("rhs_at_unit_weight", check_unit.rhs),
            ("delta2_at_unit_weight", at_unit.delta2),
            ("lhs_at_small_weight", check_small.lhs),
            ("rhs_at_small_weight", check_small.rhs),
            ("delta2_at_small_weight", at_small.delta2),
        ],
    ))
}

fn coverage_outcome(outcomes: &[CheckOutcome]) -> CheckOutcome {
    let covered: BTreeSet<&str> = outcomes
        .iter()
        .map(|o| o.paper_anchor.as_str())
        .collect();
    let missing = ANCHOR_REGISTRY
        .iter()
        .filter(|anchor| !covered.contains(**anchor))
        .count();
    outcome(
        "anchor_coverage".into(),
        ANCHOR_AXIOMS,
        0.0,
        missing == 0,
        vec![
            ("anchors_expected", ANCHOR_REGISTRY.len() as f64),
            ("anchors_missing", missing as f64),
        ],
    )
}

/// Runs every check over the configured kernel grid and assembles the report.
/// Outcomes appear in a fixed registry order; negative controls carry the
/// expected-fail flag so [`VerificationReport::all_ok`] is only true when
/// exactly the planned failures fail.
pub fn run_all(config: &VerifyConfig) -> Result<VerificationReport> {
    if config.kernels_x.is_empty() {
        return Err(Error::Domain("no feature kernels configured".into()));
    }
    if config.kernels_y.is_empty() {
        return Err(Error::Domain("no response kernels configured".into()));
    }
    if config.seeds.is_empty() {
        return Err(Error::Domain("no seeds configured".into()));
    }
    if !(config.r.is_finite() && config.r > 0.0) {
        return Err(Error::Domain(format!(
            "ball radius must be positive, got {}",
            config.r
        )));
    }
    validate_grids(&config.delta_grid, &config.beta_axis)?;
    let seed = config.seeds[0];

    let mut outcomes = Vec::new();
    for kx in &config.kernels_x {
        outcomes.push(profile_decrease_outcome(kx, &config.beta_axis)?);
    }
    outcomes.push(psd_outcome(&config.kernels_x, seed)?);
    for ky in &config.kernels_y {
        outcomes.push(response_admissibility_outcome(ky));
    }
    outcomes.push(law_structure_outcome(&config.delta_grid)?);
    outcomes.push(conditional_forms_outcome(&config.delta_grid)?);
    outcomes.push(relevance_gaps_boundary_outcome(&config.delta_grid)?);

    for kx in &config.kernels_x {
        for ky in &config.kernels_y {
            outcomes.push(check_theorem1(kx, ky)?);
            if config.negative_controls {
                let mut control =
                    theorem1_outcome(kx, ky, &params(0.5, 0.5), format!(
                        "theorem1_negative_control/{kx}/{ky}"
                    ))?;
                control.expected_fail = true;
                control.note = Some(
                    "equal signal strengths: the maximizer keeps both features and the \
                     gap is zero, so this predicate must fail"
                        .into(),
                );
                outcomes.push(control);
            }
            outcomes.push(check_theorem2_with(
                kx,
                ky,
                config.q,
                config.r,
                config.grid_points_per_axis,
                config.refine_iterations,
            )?);
            outcomes.extend(check_lemma_suite(
                kx,
                ky,
                &config.delta_grid,
                &config.beta_axis,
            )?);
            outcomes.push(padding_outcome(kx, ky)?);
        }
    }

    outcomes.push(axioms_outcome(seed)?);
    outcomes.push(nonempty_selection_outcome(&config.delta_grid, seed)?);
    for kx in &config.kernels_x {
        outcomes.push(elimination_feasibility_outcome(kx)?);
    }
    outcomes.push(coverage_outcome(&outcomes));

    Ok(VerificationReport {
        outcomes,
        config: config.clone(),
        notes: vec![
            "the conditional expectation given the second feature matches delta2 * x2; \
             the delta1 * x2 variant does not match anywhere on the grid"
                .into(),
            "monotonicity and permutation scans certify strictness above a 1e-12 roundoff \
             floor because the true gaps fall to the 1e-7 range at the far corners of the \
             default grids under the gaussian profile; minima are recorded as witnesses"
                .into(),
            "the distance-form proportionality constant is (phi(0) - phi(2)) / 8, pinned \
             by the measured ratio; see proportionality_constant_validation witnesses"
                .into(),
            "the removal inequality is certified in the displayed decreasing-profile form; \
             profiles here are strictly decreasing, not increasing"
                .into(),
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_config() -> VerifyConfig {
        VerifyConfig {
            grid_points_per_axis: 65,
            refine_iterations: 2,
            ..VerifyConfig::default()
        }
    }

    #[test]
    fn theorem1_passes_for_every_default_kernel_pair() {
        for kx in [RadialXKernel::Gaussian, RadialXKernel::Laplace] {
            for ky in [
                ResponseKernel::ProductIdentity,
                ResponseKernel::DistanceGaussian,
            ] {
                let out = check_theorem1(&kx, &ky).unwrap();
                assert_eq!(out.status, CheckStatus::Pass, "{}", out.name);
                assert!((out.witnesses["gap_selected"] - 0.019077420649209285).abs() < 1e-12);
                assert_eq!(out.witnesses["selected_cardinality"], 1.0);
            }
        }
    }

    #[test]
    fn theorem1_fails_at_equal_signals() {
        let out = check_theorem1_at(
            &RadialXKernel::Gaussian,
            &ResponseKernel::ProductIdentity,
            &params(0.5, 0.5),
        )
        .unwrap();
        assert_eq!(out.status, CheckStatus::Fail);
        assert_eq!(out.witnesses["selected_cardinality"], 2.0);
        assert_eq!(out.witnesses["gap_selected"], 0.0);
    }

    #[test]
    fn theorem2_passes_on_small_grid() {
        let out = check_theorem2_with(
            &RadialXKernel::Gaussian,
            &ResponseKernel::ProductIdentity,
            LqNorm::Infinity,
            1.0,
            65,
            2,
        )
        .unwrap();
        assert_eq!(out.status, CheckStatus::Pass);
        assert_eq!(out.witnesses["beta_star_1"], 1.0);
        assert_eq!(out.witnesses["beta_star_2"], 0.0);
        assert!((out.witnesses["condition_lhs"] - 0.01831563888873418).abs() < 1e-12);
        assert!((out.witnesses["condition_rhs"] - 0.975609756097561).abs() < 1e-12);
    }

    #[test]
    fn theorem2_l1_ball_scales_the_equal_weights_point() {
        let out = check_theorem2_with(
            &RadialXKernel::Gaussian,
            &ResponseKernel::ProductIdentity,
            LqNorm::new(1.0).unwrap(),
            2.0,
            65,
            2,
        )
        .unwrap();
        assert_eq!(out.status, CheckStatus::Pass);
        assert_eq!(out.witnesses["b0"], 1.0);
        assert_eq!(out.witnesses["beta_star_1"], 2.0);
        assert_eq!(out.witnesses["beta_star_2"], 0.0);
    }

    #[test]
    fn theorem2_rejects_nonpositive_radius() {
        assert!(check_theorem2(
            &RadialXKernel::Gaussian,
            &ResponseKernel::ProductIdentity,
            LqNorm::Infinity,
            0.0,
        )
        .is_err());
    }

    #[test]
    fn lemma_suite_all_pass_on_default_grids() {
        let config = VerifyConfig::default();
        for kx in [RadialXKernel::Gaussian, RadialXKernel::Laplace] {
            let suite = check_lemma_suite(
                &kx,
                &ResponseKernel::ProductIdentity,
                &config.delta_grid,
                &config.beta_axis,
            )
            .unwrap();
            assert_eq!(suite.len(), 10);
            for out in &suite {
                assert_eq!(out.status, CheckStatus::Pass, "{}: {:?}", out.name, out.witnesses);
            }
        }
    }

    #[test]
    fn lemma_suite_records_the_known_minimum_margins() {
        let config = VerifyConfig::default();
        let suite = check_lemma_suite(
            &RadialXKernel::Gaussian,
            &ResponseKernel::ProductIdentity,
            &config.delta_grid,
            &config.beta_axis,
        )
        .unwrap();
        let by_name = |name: &str| {
            suite
                .iter()
                .find(|o| o.name.starts_with(name))
                .unwrap_or_else(|| panic!("missing {name}"))
        };
        let mono = by_name("dominant_monotonicity");
        assert!((mono.witnesses["min_increment"] - 1.4017749281475256e-7).abs() < 1e-13);
        let perm = by_name("permutation_preference");
        assert!((perm.witnesses["min_gap"] - 2.803549330465671e-7).abs() < 1e-13);
        let removal = by_name("weaker_signal_removal");
        assert!(removal.witnesses["min_gap"] >= STRICT_MARGIN);
        assert!((removal.witnesses["min_gap"] - 4.6892501841046264e-4).abs() < 1e-12);
        let cheb = by_name("ratio_chebyshev_bound");
        assert!(cheb.witnesses["max_abs_slack"] <= IDENTITY_TOLERANCE);
    }

    #[test]
    fn laplace_ratio_bound_has_strict_slack() {
        let config = VerifyConfig::default();
        let suite = check_lemma_suite(
            &RadialXKernel::Laplace,
            &ResponseKernel::ProductIdentity,
            &config.delta_grid,
            &config.beta_axis,
        )
        .unwrap();
        let cheb = suite
            .iter()
            .find(|o| o.name.starts_with("ratio_chebyshev_bound"))
            .unwrap();
        assert_eq!(cheb.status, CheckStatus::Pass);
        let slack = cheb.witnesses["min_slack_positive_beta1"];
        assert!(slack > STRICT_MARGIN);
        assert!((slack - 0.0032169470899676995).abs() < 1e-12);
    }

    #[test]
    fn lemma_suite_rejects_malformed_grids() {
        let beta: Vec<f64> = (0..=8).map(|i| i as f64 * 0.25).collect();
        let kx = RadialXKernel::Gaussian;
        let ky = ResponseKernel::ProductIdentity;
        assert!(check_lemma_suite(&kx, &ky, &[], &beta).is_err());
        assert!(check_lemma_suite(&kx, &ky, &[(1.2, 0.1)], &beta).is_err());
        assert!(check_lemma_suite(&kx, &ky, &[(0.9, 0.0)], &beta).is_err());
        assert!(check_lemma_suite(&kx, &ky, &[(0.9, 0.1)], &[]).is_err());
        assert!(check_lemma_suite(&kx, &ky, &[(0.9, 0.1)], &[0.5, 0.25]).is_err());
    }

    #[test]
    fn run_all_default_is_clean_and_covered() {
        let config = small_config();
        let report = run_all(&config).unwrap();
        assert!(report.outcomes.len() >= 10);
        for out in &report.outcomes {
            assert!(out.ok(), "{} not ok: {:?}", out.name, out.witnesses);
        }
        assert!(report.all_ok());
        let controls: Vec<_> = report
            .outcomes
            .iter()
            .filter(|o| o.expected_fail)
            .collect();
        assert!(!controls.is_empty());
        for control in controls {
            assert_eq!(control.status, CheckStatus::Fail, "{}", control.name);
        }
        let coverage = report.outcomes.last().unwrap();
        assert_eq!(coverage.name, "anchor_coverage");
        assert_eq!(coverage.witnesses["anchors_missing"], 0.0);
    }

    #[test]
    fn run_all_is_deterministic() {
        let config = small_config();
        let a = serde_json::to_string(&run_all(&config).unwrap()).unwrap();
        let b = serde_json::to_string(&run_all(&config).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn run_all_rejects_empty_kernel_lists() {
        let mut config = VerifyConfig::default();
        config.kernels_x.clear();
        assert!(run_all(&config).is_err());
        let mut config = VerifyConfig::default();
        config.kernels_y.clear();
        assert!(run_all(&config).is_err());
    }

    #[test]
    fn report_serializes_with_the_expected_fields() {
        let mut config = small_config();
        config.kernels_x = vec![RadialXKernel::Gaussian];
        config.kernels_y = vec![ResponseKernel::ProductIdentity];
        let report = run_all(&config).unwrap();
        let json: serde_json::Value =
            serde_json::from_str(&serde_json::to_string(&report).unwrap()).unwrap();
        let outcomes = json["outcomes"].as_array().unwrap();
        assert!(!outcomes.is_empty());
        for out in outcomes {
            assert!(out["name"].is_string());
            assert!(out["status"] == "pass" || out["status"] == "fail");
            assert!(out["witnesses"].is_object());
            assert!(out["paper_anchor"].is_string());
            assert!(out["tolerance"].is_number());
        }
        assert!(json["config"]["kernels_x"][0] == "gaussian");
    }
}
