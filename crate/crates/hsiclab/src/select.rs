//! Feature selection by dependence maximization, in its combinatorial and
//! continuous-weight forms, plus the weaker-feature elimination inequality
//! that drives the counterexample construction.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::dist::{DeltaParams, FiniteJointDistribution};
use crate::error::{Error, Result};
use crate::hsic::{exact_hsic_weighted, HsicEvaluator, HsicValue, WeightVector};
use crate::kernel::{RadialXKernel, ResponseKernel};

/// Exhaustive subset enumeration stops at 2^20 candidates.
pub const MAX_ENUMERATION_FEATURES: usize = 20;
/// Dense grid search stays at desk scale.
pub const MAX_GRID_FEATURES: usize = 4;
/// Candidates within this distance of the best value tie, and ties resolve
/// to the smallest cardinality, then lexicographic order.
pub const TIE_TOLERANCE: f64 = 1e-12;

const GOLDEN_SECTION_ITERS: usize = 80;

/// A sorted set of 1-based feature indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeatureSubset {
    indices: Vec<usize>,
}

impl FeatureSubset {
    pub fn new(mut indices: Vec<usize>) -> Result<Self> {
        if indices.iter().any(|&i| i == 0) {
            return Err(Error::Domain("feature indices are 1-based".into()));
        }
        indices.sort_unstable();
        indices.dedup();
        Ok(Self { indices })
    }

    pub fn empty() -> Self {
        Self { indices: vec![] }
    }

    pub fn full(p: usize) -> Self {
        Self {
            indices: (1..=p).collect(),
        }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.indices.binary_search(&index).is_ok()
    }
}

impl fmt::Display for FeatureSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, idx) in self.indices.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{idx}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for FeatureSubset {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.indices.serialize(serializer)
    }
}

/// An lq norm with `q` in `[1, inf]`, used as the continuous search ball.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LqNorm {
    Finite(f64),
    Infinity,
}

impl LqNorm {
    pub fn new(q: f64) -> Result<Self> {
        if !(q.is_finite() && q >= 1.0) {
            return Err(Error::Domain(format!(
                "norm order must satisfy q >= 1, got {q}"
            )));
        }
        Ok(Self::Finite(q))
    }

    pub fn norm(&self, v: &[f64]) -> f64 {
        match self {
            Self::Infinity => v.iter().fold(0.0, |acc, x| acc.max(x.abs())),
            Self::Finite(q) if *q == 1.0 => v.iter().map(|x| x.abs()).sum(),
            Self::Finite(q) if *q == 2.0 => v.iter().map(|x| x * x).sum::<f64>().sqrt(),
            Self::Finite(q) => v
                .iter()
                .map(|x| x.abs().powf(*q))
                .sum::<f64>()
                .powf(1.0 / q),
        }
    }

    /// Largest admissible value for coordinate `j` given the other
    /// coordinates of `v` and ball radius `r`.
    fn coordinate_cap(&self, v: &[f64], j: usize, r: f64) -> f64 {
        match self {
            Self::Infinity => r,
            Self::Finite(q) => {
                let others: f64 = v
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, x)| x.abs().powf(*q))
                    .sum();
                let remaining = r.powf(*q) - others;
                if remaining <= 0.0 {
                    0.0
                } else {
                    remaining.powf(1.0 / q)
                }
            }
        }
    }
}

impl fmt::Display for LqNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Infinity => write!(f, "inf"),
            Self::Finite(q) => write!(f, "{q}"),
        }
    }
}

impl FromStr for LqNorm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inf" | "infinity" => Ok(Self::Infinity),
            _ => {
                let q: f64 = s
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad norm order '{s}'")))?;
                Self::new(q)
            }
        }
    }
}

impl Serialize for LqNorm {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// Settings for the continuous-weight search over the lq ball.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContinuousSearchConfig {
    pub q: LqNorm,
    pub r: f64,
    pub grid_points_per_axis: usize,
    pub refine_iterations: usize,
    pub support_tolerance: f64,
}

impl ContinuousSearchConfig {
    /// Defaults: 513 grid points per axis, 3 refinement rounds, support
    /// tolerance 1e-9.
    pub fn new(q: LqNorm, r: f64) -> Result<Self> {
        let cfg = Self {
            q,
            r,
            grid_points_per_axis: 513,
            refine_iterations: 3,
            support_tolerance: 1e-9,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_grid_points(mut self, points: usize) -> Result<Self> {
        self.grid_points_per_axis = points;
        self.validate()?;
        Ok(self)
    }

    pub fn with_refine_iterations(mut self, rounds: usize) -> Self {
        self.refine_iterations = rounds;
        self
    }

    pub fn with_support_tolerance(mut self, tolerance: f64) -> Result<Self> {
        self.support_tolerance = tolerance;
        self.validate()?;
        Ok(self)
    }

    fn validate(&self) -> Result<()> {
        if !self.r.is_finite() || self.r < 0.0 {
            return Err(Error::Domain(format!(
                "ball radius must be finite and nonnegative, got {}",
                self.r
            )));
        }
        if self.grid_points_per_axis < 33 {
            return Err(Error::InvalidConfig(format!(
                "grid needs at least 33 points per axis, got {}",
                self.grid_points_per_axis
            )));
        }
        if !(self.support_tolerance > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "support tolerance must be positive, got {}",
                self.support_tolerance
            )));
        }
        Ok(())
    }
}

/// One candidate examined during a selection run.
#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum AuditEntry {
    Subset { subset: FeatureSubset, value: f64 },
    Weights { weights: Vec<f64>, value: f64 },
}

impl AuditEntry {
    pub fn value(&self) -> f64 {
        match self {
            Self::Subset { value, .. } | Self::Weights { value, .. } => *value,
        }
    }
}

/// Outcome of a selection run: the chosen subset, the weight vector when the
/// continuous procedure produced one, the attained dependence value, and the
/// trail of candidates examined.
#[derive(Debug, Clone, Serialize)]
pub struct SelectionResult {
    pub subset: FeatureSubset,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weights: Option<WeightVector>,
    pub attained: HsicValue,
    pub audit: Vec<AuditEntry>,
}

/// Exhaustive subset search: evaluates every subset of `{1..p}`, in order of
/// cardinality then lexicographic indices, and returns a maximizer. Values
/// within [`TIE_TOLERANCE`] of the maximum tie, and the earliest candidate in
/// that order wins, so an independent response selects the empty set.
pub fn select_subset(
    dist: &FiniteJointDistribution,
    kx: &RadialXKernel,
    ky: &ResponseKernel,
) -> Result<SelectionResult> {
    let p = dist.p();
    if p > MAX_ENUMERATION_FEATURES {
        return Err(Error::TooManyFeatures {
            p,
            max: MAX_ENUMERATION_FEATURES,
            mode: "exhaustive enumeration",
        });
    }
    let mut candidates: Vec<FeatureSubset> = (0u32..(1u32 << p))
        .map(|mask| {
            let indices = (0..p).filter(|i| mask & (1 << i) != 0).map(|i| i + 1);
            FeatureSubset {
                indices: indices.collect(),
            }
        })
        .collect();
    candidates.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.indices.cmp(&b.indices)));

    let evaluator = HsicEvaluator::new(dist, kx, ky);
    let audit: Vec<AuditEntry> = candidates
        .into_iter()
        .map(|subset| {
            let weights = WeightVector::indicator(&subset, p)?;
            let value = evaluator.evaluate(weights.as_slice());
            Ok(AuditEntry::Subset { subset, value })
        })
        .collect::<Result<_>>()?;

    let best = audit.iter().map(AuditEntry::value).fold(f64::MIN, f64::max);
    let winner = audit
        .iter()
        .find(|entry| entry.value() >= best - TIE_TOLERANCE)
        .expect("audit is nonempty");
    let (subset, value) = match winner {
        AuditEntry::Subset { subset, value } => (subset.clone(), *value),
        AuditEntry::Weights { .. } => unreachable!("subset search audits subsets"),
    };
    Ok(SelectionResult {
        subset,
        weights: None,
        attained: HsicValue {
            value,
            kernel_x: kx.clone(),
            kernel_y: *ky,
        },
        audit,
    })
}

/// Continuous-weight search: maximizes the weighted dependence value over the
/// nonnegative-orthant slice of the lq ball of radius `cfg.r` (sign flips
/// leave the objective unchanged, so nothing is lost), then reads the
/// selected features off the support of the maximizing weights.
///
/// Derivative-free by construction: a dense axis-aligned grid restricted to
/// the ball seeds the search, then golden-section refinement sweeps the
/// coordinates for `cfg.refine_iterations` rounds. Interval endpoints are
/// evaluated explicitly, so exact boundary optima (including exact zeros)
/// are returned exactly. Deterministic throughout.
pub fn select_continuous(
    dist: &FiniteJointDistribution,
    kx: &RadialXKernel,
    ky: &ResponseKernel,
    cfg: &ContinuousSearchConfig,
) -> Result<SelectionResult> {
    let p = dist.p();
    if p > MAX_GRID_FEATURES {
        return Err(Error::TooManyFeatures {
            p,
            max: MAX_GRID_FEATURES,
            mode: "dense grid search",
        });
    }
    cfg.validate()?;

    let finish = |weights: Vec<f64>, audit: Vec<AuditEntry>| -> Result<SelectionResult> {
        let weights = WeightVector::new(weights)?;
        let subset = weights.support(cfg.support_tolerance);
        let attained = exact_hsic_weighted(dist, kx, ky, &weights)?;
        Ok(SelectionResult {
            subset,
            weights: Some(weights),
            attained,
            audit,
        })
    };

    if cfg.r == 0.0 {
        let zeros = vec![0.0; p];
        let audit = vec![AuditEntry::Weights {
            weights: zeros.clone(),
            value: 0.0,
        }];
        return finish(zeros, audit);
    }

    let n = cfg.grid_points_per_axis;
    let axis: Vec<f64> = (0..n)
        .map(|i| cfg.r * (i as f64 / (n - 1) as f64))
        .collect();
    let ball_bound = cfg.r * (1.0 + 1e-12);
    let evaluator = HsicEvaluator::new(dist, kx, ky);

    // dense grid seed, row-major over the axes; first strict maximum wins
    let mut best = vec![0.0; p];
    let mut best_value = evaluator.evaluate(&best);
    let mut point = vec![0.0; p];
    let mut counter = vec![0usize; p];
    'grid: loop {
        for (slot, &idx) in point.iter_mut().zip(&counter) {
            *slot = axis[idx];
        }
        if cfg.q.norm(&point) <= ball_bound {
            let value = evaluator.evaluate(&point);
            if value > best_value {
                best_value = value;
                best.copy_from_slice(&point);
            }
        }
        let mut digit = p;
        loop {
            if digit == 0 {
                break 'grid;
            }
            digit -= 1;
            counter[digit] += 1;
            if counter[digit] < n {
                break;
            }
            counter[digit] = 0;
        }
    }

    let mut audit = vec![AuditEntry::Weights {
        weights: best.clone(),
        value: best_value,
    }];

    // coordinate-wise golden-section refinement around the grid winner
    let spacing = cfg.r / (n - 1) as f64;
    for _ in 0..cfg.refine_iterations {
        for j in 0..p {
            let cap = cfg.q.coordinate_cap(&best, j, cfg.r);
            let lo = (best[j] - spacing).max(0.0);
            let hi = (best[j] + spacing).min(cap).max(lo);
            if hi - lo < f64::EPSILON * cfg.r {
                continue;
            }
            let mut trial = best.clone();
            let (arg, value) = golden_section_max(
                |t| {
                    trial[j] = t;
                    evaluator.evaluate(&trial)
                },
                lo,
                hi,
            );
            if value > best_value {
                best_value = value;
                best[j] = arg;
            }
        }
        audit.push(AuditEntry::Weights {
            weights: best.clone(),
            value: best_value,
        });
    }

    finish(best, audit)
}

/// Golden-section scan for a maximum on `[lo, hi]`, returning the best point
/// actually evaluated, endpoints included.
fn golden_section_max(mut f: impl FnMut(f64) -> f64, lo: f64, hi: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut best = (lo, f(lo));
    let at_hi = f(hi);
    if at_hi > best.1 {
        best = (hi, at_hi);
    }
    let (mut a, mut b) = (lo, hi);
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..GOLDEN_SECTION_ITERS {
        if f1 > best.1 {
            best = (x1, f1);
        }
        if f2 > best.1 {
            best = (x2, f2);
        }
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        }
    }
    best
}

/// Both sides of the weaker-feature elimination inequality.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct EliminationCheck {
    pub holds: bool,
    pub lhs: f64,
    pub rhs: f64,
}

/// Evaluates the strict inequality
/// `phi(4*b1^2) / phi(0) < (d1^2 - d2^2) / (d1^2 + d2^2)`.
///
/// When it holds, zeroing the weaker feature's weight strictly increases the
/// closed-form objective for any positive weaker weight, which is what makes
/// the dependence maximizer discard a feature the response still needs.
pub fn check_elimination_condition(
    kx: &RadialXKernel,
    beta1: f64,
    params: &DeltaParams,
) -> Result<EliminationCheck> {
    if !(beta1.is_finite() && beta1 > 0.0) {
        return Err(Error::Domain(format!(
            "dominant weight must be positive, got {beta1}"
        )));
    }
    let (d1, d2) = (params.delta1, params.delta2);
    if d1 == 0.0 && d2 == 0.0 {
        return Err(Error::Domain(
            "signal strengths cannot both be zero (undefined right-hand side)".into(),
        ));
    }
    let lhs = kx.schoenberg_ratio(4.0 * beta1 * beta1)?;
    let rhs = (d1 * d1 - d2 * d2) / (d1 * d1 + d2 * d2);
    Ok(EliminationCheck {
        holds: lhs < rhs,
        lhs,
        rhs,
    })
}

/// Picks signal strengths `1 > d1 > d2 > 0` satisfying the elimination
/// condition at the given dominant weight: `d1` is anchored at 0.9 and `d2`
/// starts at 0.1 and halves until the strict inequality holds. Halving
/// drives the right-hand side toward 1 while the left-hand side stays fixed
/// strictly below 1, so the search terminates.
pub fn pick_delta(kx: &RadialXKernel, b0: f64) -> Result<DeltaParams> {
    if !(b0.is_finite() && b0 > 0.0) {
        return Err(Error::Domain(format!(
            "dominant weight must be positive, got {b0} (the profile ratio equals 1 at 0)"
        )));
    }
    let ratio = kx.schoenberg_ratio(4.0 * b0 * b0)?;
    if ratio >= 1.0 {
        return Err(Error::Domain(format!(
            "profile ratio at 4*{b0}^2 rounds to 1; the elimination condition cannot be met"
        )));
    }
    let delta1 = 0.9;
    let mut delta2 = 0.1;
    for _ in 0..2048 {
        let params = DeltaParams::new(delta1, delta2, 2)?;
        if check_elimination_condition(kx, b0, &params)?.holds {
            return Ok(params);
        }
        delta2 *= 0.5;
    }
    Err(Error::Domain(
        "no admissible weaker signal strength found".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hsic::closed_form_objective;

    fn pdelta(d1: f64, d2: f64) -> FiniteJointDistribution {
        FiniteJointDistribution::counterexample(&DeltaParams::new(d1, d2, 2).unwrap())
    }

    fn gaussian_identity() -> (RadialXKernel, ResponseKernel) {
        (RadialXKernel::Gaussian, ResponseKernel::ProductIdentity)
    }

    #[test]
    fn subset_construction_normalizes() {
        let s = FeatureSubset::new(vec![3, 1, 3]).unwrap();
        assert_eq!(s.indices(), &[1, 3]);
        assert!(FeatureSubset::new(vec![0]).is_err());
        assert_eq!(FeatureSubset::full(3).indices(), &[1, 2, 3]);
        assert_eq!(format!("{}", s), "{1,3}");
    }

    #[test]
    fn dominant_feature_wins_the_discrete_search() {
        let (kx, ky) = gaussian_identity();
        let result = select_subset(&pdelta(0.9, 0.1), &kx, &ky).unwrap();
        assert_eq!(result.subset.indices(), &[1]);
        assert!((result.attained.value - 0.3975821662500626).abs() < 1e-13);
        assert_eq!(result.audit.len(), 4);
        // audit is ordered by cardinality then lexicographic indices
        let values: Vec<f64> = result.audit.iter().map(AuditEntry::value).collect();
        assert_eq!(values[0], 0.0);
        assert!((values[1] - 0.3975821662500626).abs() < 1e-13);
        assert!((values[2] - 0.004908421805556329).abs() < 1e-13);
        assert!((values[3] - 0.20493123016127998).abs() < 1e-13);
        let max = values.iter().cloned().fold(f64::MIN, f64::max);
        assert!(result.attained.value >= max - TIE_TOLERANCE);
    }

    #[test]
    fn equal_signals_keep_both_features() {
        let (kx, ky) = gaussian_identity();
        let result = select_subset(&pdelta(0.5, 0.5), &kx, &ky).unwrap();
        assert_eq!(result.subset.indices(), &[1, 2]);
        assert!((result.attained.value - 0.12495806717151219).abs() < 1e-13);
    }

    #[test]
    fn independent_response_selects_the_empty_set() {
        let (kx, ky) = gaussian_identity();
        let result = select_subset(&pdelta(0.0, 0.0), &kx, &ky).unwrap();
        assert!(result.subset.is_empty());
        assert_eq!(result.attained.value, 0.0);
    }

    #[test]
    fn enumeration_bound_enforced() {
        let params = DeltaParams::new(0.9, 0.1, 21).unwrap();
        let dist = FiniteJointDistribution::counterexample(&params);
        let (kx, ky) = gaussian_identity();
        assert!(matches!(
            select_subset(&dist, &kx, &ky),
            Err(Error::TooManyFeatures { max: 20, .. })
        ));
    }

    #[test]
    fn continuous_search_lands_on_the_boundary_corner() {
        let (kx, ky) = gaussian_identity();
        let cfg = ContinuousSearchConfig::new(LqNorm::Infinity, 1.0).unwrap();
        let result = select_continuous(&pdelta(0.9, 0.1), &kx, &ky, &cfg).unwrap();
        let w = result.weights.as_ref().unwrap().as_slice();
        assert_eq!(w, &[1.0, 0.0]);
        assert_eq!(result.subset.indices(), &[1]);
        assert!((result.attained.value - 0.3975821662500626).abs() < 1e-13);
        assert_eq!(LqNorm::Infinity.norm(w), 1.0);
    }

    #[test]
    fn small_radius_still_eliminates_the_weaker_feature() {
        let (kx, ky) = gaussian_identity();
        let cfg = ContinuousSearchConfig::new(LqNorm::Infinity, 0.1).unwrap();
        let result = select_continuous(&pdelta(0.9, 0.1), &kx, &ky, &cfg).unwrap();
        let w = result.weights.as_ref().unwrap().as_slice();
        assert_eq!(w, &[0.1, 0.0]);
        assert_eq!(result.subset.indices(), &[1]);
    }

    #[test]
    fn l1_ball_pushes_all_mass_onto_the_dominant_feature() {
        let (kx, ky) = gaussian_identity();
        let cfg = ContinuousSearchConfig::new(LqNorm::new(1.0).unwrap(), 2.0).unwrap();
        let result = select_continuous(&pdelta(0.9, 0.1), &kx, &ky, &cfg).unwrap();
        let w = result.weights.as_ref().unwrap().as_slice();
        assert_eq!(w, &[2.0, 0.0]);
        assert_eq!(result.subset.indices(), &[1]);
    }

    #[test]
    fn zero_radius_returns_the_empty_support() {
        let (kx, ky) = gaussian_identity();
        let cfg = ContinuousSearchConfig::new(LqNorm::Infinity, 0.0).unwrap();
        let result = select_continuous(&pdelta(0.9, 0.1), &kx, &ky, &cfg).unwrap();
        assert!(result.subset.is_empty());
        assert_eq!(result.attained.value, 0.0);
        assert_eq!(result.weights.unwrap().as_slice(), &[0.0, 0.0]);
    }

    #[test]
    fn continuous_config_validation() {
        assert!(ContinuousSearchConfig::new(LqNorm::Infinity, -1.0).is_err());
        assert!(ContinuousSearchConfig::new(LqNorm::Infinity, f64::INFINITY).is_err());
        let cfg = ContinuousSearchConfig::new(LqNorm::Infinity, 1.0).unwrap();
        assert!(cfg.clone().with_grid_points(16).is_err());
        assert!(cfg.with_support_tolerance(0.0).is_err());
        assert!(LqNorm::new(0.5).is_err());
        assert!("0.5".parse::<LqNorm>().is_err());
        assert_eq!("inf".parse::<LqNorm>().unwrap(), LqNorm::Infinity);
    }

    #[test]
    fn grid_dimension_bound_enforced() {
        let params = DeltaParams::new(0.9, 0.1, 5).unwrap();
        let dist = FiniteJointDistribution::counterexample(&params);
        let (kx, ky) = gaussian_identity();
        let cfg = ContinuousSearchConfig::new(LqNorm::Infinity, 1.0).unwrap();
        assert!(matches!(
            select_continuous(&dist, &kx, &ky, &cfg),
            Err(Error::TooManyFeatures { max: 4, .. })
        ));
    }

    #[test]
    fn continuous_search_respects_the_ball_constraint() {
        // with equal signals nothing is eliminated and the optimum sits on
        // the boundary with both weights positive
        let (kx, ky) = gaussian_identity();
        for q in [LqNorm::new(1.0).unwrap(), LqNorm::new(2.0).unwrap(), LqNorm::Infinity] {
            let cfg = ContinuousSearchConfig::new(q, 1.0)
                .unwrap()
                .with_grid_points(65)
                .unwrap();
            let result = select_continuous(&pdelta(0.6, 0.4), &kx, &ky, &cfg).unwrap();
            let w = result.weights.as_ref().unwrap().as_slice();
            let norm = q.norm(w);
            assert!(norm <= 1.0 + 1e-9, "norm {norm} exceeds the ball");
            assert!(norm >= 1.0 - 1e-2, "optimum should sit on the boundary");
        }
    }

    #[test]
    fn elimination_condition_examples() {
        let params = DeltaParams::new(0.9, 0.1, 2).unwrap();
        let check =
            check_elimination_condition(&RadialXKernel::Gaussian, 1.0, &params).unwrap();
        assert!(check.holds);
        assert!((check.lhs - 0.01831563888873418).abs() < 1e-15);
        assert!((check.rhs - 0.975609756097561).abs() < 1e-15);

        let equal = DeltaParams::new(0.5, 0.5, 2).unwrap();
        let check = check_elimination_condition(&RadialXKernel::Gaussian, 1.0, &equal).unwrap();
        assert!(!check.holds);
        assert_eq!(check.rhs, 0.0);

        let close = DeltaParams::new(0.505, 0.5, 2).unwrap();
        let check = check_elimination_condition(&RadialXKernel::Gaussian, 1.0, &close).unwrap();
        assert!(!check.holds);
        assert!((check.rhs - 0.009950002475124996).abs() < 1e-15);

        assert!(check_elimination_condition(&RadialXKernel::Gaussian, 0.0, &params).is_err());
        let zero = DeltaParams::new(0.0, 0.0, 2).unwrap();
        assert!(check_elimination_condition(&RadialXKernel::Gaussian, 1.0, &zero).is_err());
    }

    #[test]
    fn elimination_condition_predicts_removal_on_the_surface() {
        let params = DeltaParams::new(0.9, 0.1, 2).unwrap();
        let kx = RadialXKernel::Laplace;
        let beta1 = 1.25;
        assert!(check_elimination_condition(&kx, beta1, &params).unwrap().holds);
        for beta2 in [0.25, 0.5, 1.0, 2.0] {
            let with = closed_form_objective(&params, beta1, beta2, &kx);
            let without = closed_form_objective(&params, beta1, 0.0, &kx);
            assert!(without > with);
        }
    }

    #[test]
    fn pick_delta_examples() {
        let picked = pick_delta(&RadialXKernel::Gaussian, 1.0).unwrap();
        assert_eq!((picked.delta1, picked.delta2), (0.9, 0.1));

        let tiny = pick_delta(&RadialXKernel::Gaussian, 0.05).unwrap();
        assert_eq!(tiny.delta1, 0.9);
        assert!(tiny.delta2 <= 0.1 && tiny.delta2 > 0.0);
        assert!(
            check_elimination_condition(&RadialXKernel::Gaussian, 0.05, &tiny)
                .unwrap()
                .holds
        );

        assert!(pick_delta(&RadialXKernel::Gaussian, 0.0).is_err());
        assert!(pick_delta(&RadialXKernel::Laplace, -1.0).is_err());
    }

    #[test]
    fn golden_section_finds_interior_and_boundary_maxima() {
        let (arg, val) = golden_section_max(|t| -(t - 0.3) * (t - 0.3), 0.0, 1.0);
        assert!((arg - 0.3).abs() < 1e-10);
        assert!(val <= 0.0 && val > -1e-18);
        // monotone increasing: the right endpoint must be returned exactly
        let (arg, _) = golden_section_max(|t| t, 0.0, 2.0);
        assert_eq!(arg, 2.0);
        // monotone decreasing: the left endpoint must be returned exactly
        let (arg, _) = golden_section_max(|t| -t, 0.5, 2.0);
        assert_eq!(arg, 0.5);
    }
}
