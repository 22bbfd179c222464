//! Exact and empirical dependence values.
//!
//! The dependence measure between a weighted feature vector and the response
//! is defined through three expectation terms over independent pairs,
//!
//! ```text
//! D = E[kx * ky] + E[kx] * E[ky] - 2 * E[ E[kx | x'] * E[ky | y'] ]
//! ```
//!
//! and every quantity here is evaluated by exact double summation over the
//! atoms of a finite distribution. The measure is nonnegative for positive
//! semidefinite kernels and zero whenever the two arguments are independent.
//!
//! Two independent routes are provided: the direct three-term sum above, and
//! a centered route valid for balanced responses on `{-1, +1}` that contracts
//! the response kernel to its odd part. Their agreement is used as a
//! cross-check throughout the test and verification suites.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::dist::{Atom, Dataset, DeltaParams, FiniteJointDistribution, OrdKey};
use crate::error::{Error, Result};
use crate::kernel::{squared_distance, RadialXKernel, ResponseKernel};
use crate::select::FeatureSubset;

/// Per-feature multiplicative weights applied to the feature vector before
/// the radial kernel sees it.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.iter().any(|w| !w.is_finite()) {
            return Err(Error::Domain("weights must be finite".into()));
        }
        Ok(Self(weights))
    }

    /// The 0/1 indicator weights of a feature subset in dimension `p`.
    pub fn indicator(subset: &FeatureSubset, p: usize) -> Result<Self> {
        if let Some(&max) = subset.indices().last() {
            if max > p {
                return Err(Error::IndexOutOfRange { index: max, p });
            }
        }
        let mut w = vec![0.0; p];
        for &i in subset.indices() {
            w[i - 1] = 1.0;
        }
        Ok(Self(w))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    /// Coordinates whose magnitude exceeds `tolerance`, as 1-based indices.
    pub fn support(&self, tolerance: f64) -> FeatureSubset {
        let indices = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, w)| w.abs() > tolerance)
            .map(|(i, _)| i + 1)
            .collect();
        FeatureSubset::new(indices).expect("support indices are valid by construction")
    }
}

/// A dependence value together with the kernels that produced it.
/// Nonnegative up to roundoff (`value >= -1e-12`) for admissible kernels.
#[derive(Debug, Clone, Serialize)]
pub struct HsicValue {
    pub value: f64,
    pub kernel_x: RadialXKernel,
    pub kernel_y: ResponseKernel,
}

/// Precomputed response-side tables for repeated evaluation of the weighted
/// dependence value on one fixed distribution. Only the feature-side kernel
/// work depends on the weights, so a search over many weight vectors reuses
/// everything else.
pub(crate) struct HsicEvaluator<'a> {
    atoms: &'a [Atom],
    kx: &'a RadialXKernel,
    p: usize,
    /// Row-major `ky(y_i, y_j)`.
    ky_matrix: Vec<f64>,
    /// `b_j = sum_i p_i * ky(y_i, y_j)`.
    ky_rows: Vec<f64>,
    /// `sum_j p_j * b_j`.
    ky_total: f64,
}

impl<'a> HsicEvaluator<'a> {
    pub(crate) fn new(
        dist: &'a FiniteJointDistribution,
        kx: &'a RadialXKernel,
        ky: &ResponseKernel,
    ) -> Self {
        let atoms = dist.atoms();
        let m = atoms.len();
        let mut ky_matrix = vec![0.0; m * m];
        let mut ky_rows = vec![0.0; m];
        let mut ky_total = 0.0;
        for j in 0..m {
            let mut row = 0.0;
            for i in 0..m {
                let v = ky.eval(atoms[i].y, atoms[j].y);
                ky_matrix[j * m + i] = v;
                row += atoms[i].prob * v;
            }
            ky_rows[j] = row;
            ky_total += atoms[j].prob * row;
        }
        Self {
            atoms,
            kx,
            p: dist.p(),
            ky_matrix,
            ky_rows,
            ky_total,
        }
    }

    /// The weighted dependence value. All-zero weights make the weighted
    /// feature a constant, which is independent of the response, so the
    /// exact value 0 is returned without touching the double sum.
    ///
    /// Summation order is fixed (inner index, then coordinate order inside
    /// each squared distance), which keeps results bitwise reproducible and
    /// makes zero-padding of the feature space a bitwise no-op.
    pub(crate) fn evaluate(&self, weights: &[f64]) -> f64 {
        debug_assert_eq!(weights.len(), self.p);
        if weights.iter().all(|&w| w == 0.0) {
            return 0.0;
        }
        let m = self.atoms.len();
        let mut weighted: Vec<f64> = Vec::with_capacity(m * self.p);
        for atom in self.atoms {
            for (coord, w) in atom.x.iter().zip(weights) {
                weighted.push(w * coord);
            }
        }
        let mut joint = 0.0;
        let mut kx_total = 0.0;
        let mut cross = 0.0;
        for j in 0..m {
            let xj = &weighted[j * self.p..(j + 1) * self.p];
            let p_j = self.atoms[j].prob;
            let mut kx_row = 0.0;
            let mut joint_row = 0.0;
            for i in 0..m {
                let xi = &weighted[i * self.p..(i + 1) * self.p];
                let kx_ij = self.kx.profile(squared_distance(xi, xj));
                let p_i = self.atoms[i].prob;
                kx_row += p_i * kx_ij;
                joint_row += p_i * kx_ij * self.ky_matrix[j * m + i];
            }
            joint += p_j * joint_row;
            kx_total += p_j * kx_row;
            cross += p_j * kx_row * self.ky_rows[j];
        }
        joint + kx_total * self.ky_total - 2.0 * cross
    }
}

/// Exact dependence between the weighted features and the response, by
/// double summation over atom pairs. O(m^2) kernel evaluations for m atoms.
pub fn exact_hsic_weighted(
    dist: &FiniteJointDistribution,
    kx: &RadialXKernel,
    ky: &ResponseKernel,
    weights: &WeightVector,
) -> Result<HsicValue> {
    if weights.len() != dist.p() {
        return Err(Error::DimensionMismatch {
            expected: dist.p(),
            got: weights.len(),
        });
    }
    let value = HsicEvaluator::new(dist, kx, ky).evaluate(weights.as_slice());
    Ok(HsicValue {
        value,
        kernel_x: kx.clone(),
        kernel_y: *ky,
    })
}

/// Exact dependence between a feature subset and the response.
///
/// Identical to [`exact_hsic_weighted`] with the subset's 0/1 indicator
/// weights: the radial kernel only sees distances, and retained coordinates
/// pass through unscaled while dropped ones contribute nothing. The empty
/// subset yields exactly zero.
pub fn exact_hsic_subset(
    dist: &FiniteJointDistribution,
    kx: &RadialXKernel,
    ky: &ResponseKernel,
    subset: &FeatureSubset,
) -> Result<HsicValue> {
    let weights = WeightVector::indicator(subset, dist.p())?;
    exact_hsic_weighted(dist, kx, ky, &weights)
}

/// Closed-form objective for the planted two-signal law: with
/// `s = d1^2 + d2^2` and `d = d1^2 - d2^2`,
///
/// ```text
/// (phi(0) - phi(4*b1^2 + 4*b2^2)) * s - (phi(4*b1^2) - phi(4*b2^2)) * d
/// ```
///
/// This surface equals the weighted dependence value up to the positive
/// constant of [`proportionality_constant`], and is the independent route
/// used to audit the double-sum engine.
pub fn closed_form_objective(
    params: &DeltaParams,
    beta1: f64,
    beta2: f64,
    kx: &RadialXKernel,
) -> f64 {
    let s = params.delta1 * params.delta1 + params.delta2 * params.delta2;
    let d = params.delta1 * params.delta1 - params.delta2 * params.delta2;
    let z1 = 4.0 * beta1 * beta1;
    let z2 = 4.0 * beta2 * beta2;
    (kx.at_zero() - kx.profile(z1 + z2)) * s - (kx.profile(z1) - kx.profile(z2)) * d
}

/// The positive constant relating the weighted dependence value to the
/// closed-form objective when the response is balanced on `{-1, +1}`.
///
/// Both kernel forms reduce to `(ky(1, 1) - ky(1, -1)) / 8`: the product form
/// gives `(phi(1) - phi(-1)) / 8`, and the distance form, whose argument on a
/// `{-1, +1}` response is only ever 0 or 2, gives `(phi(0) - phi(2)) / 8`.
pub fn proportionality_constant(ky: &ResponseKernel) -> Result<f64> {
    let c = (ky.eval(1.0, 1.0) - ky.eval(1.0, -1.0)) / 8.0;
    if !(c > 0.0) {
        return Err(Error::InadmissibleKernel(format!(
            "response kernel {ky} has a nonpositive proportionality constant {c}"
        )));
    }
    Ok(c)
}

/// Plug-in estimate: the exact dependence value of the empirical distribution
/// of the rows, each carrying mass 1/n.
///
/// Repeated rows are collapsed into single atoms first, which changes nothing
/// in the value (it depends on the empirical measure only) but turns the
/// O(n^2) double sum into O(m^2) over m distinct rows.
pub fn empirical_hsic(
    data: &Dataset,
    kx: &RadialXKernel,
    ky: &ResponseKernel,
    weights: &WeightVector,
) -> Result<f64> {
    if data.is_empty() {
        return Err(Error::InvalidDistribution("dataset has no rows".into()));
    }
    if weights.len() != data.p() {
        return Err(Error::DimensionMismatch {
            expected: data.p(),
            got: weights.len(),
        });
    }
    let n = data.len() as f64;
    let mut counts: BTreeMap<OrdKey, (usize, Vec<f64>, f64)> = BTreeMap::new();
    for (x, y) in data.rows() {
        let mut key = x.clone();
        key.push(*y);
        let entry = counts
            .entry(OrdKey::new(&key))
            .or_insert_with(|| (0, x.clone(), *y));
        entry.0 += 1;
    }
    let atoms = counts
        .into_values()
        .map(|(count, x, y)| Atom {
            x,
            y,
            prob: count as f64 / n,
        })
        .collect();
    let empirical = FiniteJointDistribution::new(data.p(), atoms)?;
    Ok(exact_hsic_weighted(&empirical, kx, ky, weights)?.value)
}

/// Independent evaluation route for a balanced `{-1, +1}` response.
///
/// Centering the response kernel by the constant `(ky(1,1) + ky(1,-1)) / 2`
/// kills two of the three defining terms; what remains is
/// `b * sum_ij p_i p_j kx(w*x_i, w*x_j) y_i y_j` with
/// `b = (ky(1,1) - ky(1,-1)) / 2`. Used as an oracle against the direct
/// route, never as the primary path.
pub fn exact_hsic_centered_pm1(
    dist: &FiniteJointDistribution,
    kx: &RadialXKernel,
    ky: &ResponseKernel,
    weights: &WeightVector,
) -> Result<f64> {
    if weights.len() != dist.p() {
        return Err(Error::DimensionMismatch {
            expected: dist.p(),
            got: weights.len(),
        });
    }
    let atoms = dist.atoms();
    if atoms.iter().any(|a| a.y.abs() != 1.0) {
        return Err(Error::Domain(
            "centered route needs response values in {-1, +1}".into(),
        ));
    }
    let positive_mass: f64 = atoms.iter().filter(|a| a.y == 1.0).map(|a| a.prob).sum();
    if (positive_mass - 0.5).abs() > 1e-12 {
        return Err(Error::Domain(format!(
            "centered route needs a balanced response, P(y = 1) = {positive_mass}"
        )));
    }
    let odd_part = (ky.eval(1.0, 1.0) - ky.eval(1.0, -1.0)) / 2.0;
    let w = weights.as_slice();
    let weighted: Vec<Vec<f64>> = atoms
        .iter()
        .map(|a| a.x.iter().zip(w).map(|(x, wk)| wk * x).collect())
        .collect();
    let mut total = 0.0;
    for j in 0..atoms.len() {
        let mut row = 0.0;
        for i in 0..atoms.len() {
            let kx_ij = kx.profile(squared_distance(&weighted[i], &weighted[j]));
            row += atoms[i].prob * kx_ij * atoms[i].y * atoms[j].y;
        }
        total += atoms[j].prob * row;
    }
    Ok(odd_part * total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn pdelta(d1: f64, d2: f64) -> FiniteJointDistribution {
        FiniteJointDistribution::counterexample(&DeltaParams::new(d1, d2, 2).unwrap())
    }

    fn w(values: &[f64]) -> WeightVector {
        WeightVector::new(values.to_vec()).unwrap()
    }

    /// Product law built from independent marginals on x and y.
    fn product_dist(xs: &[(Vec<f64>, f64)], ys: &[(f64, f64)]) -> FiniteJointDistribution {
        let p = xs[0].0.len();
        let mut atoms = Vec::new();
        for (x, px) in xs {
            for (y, py) in ys {
                atoms.push(Atom {
                    x: x.clone(),
                    y: *y,
                    prob: px * py,
                });
            }
        }
        FiniteJointDistribution::new(p, atoms).unwrap()
    }

    #[test]
    fn independent_variables_have_zero_dependence() {
        let dist = product_dist(
            &[
                (vec![1.0, 0.5], 0.3),
                (vec![-1.0, 2.0], 0.45),
                (vec![0.0, -1.5], 0.25),
            ],
            &[(1.0, 0.6), (-1.0, 0.4)],
        );
        for ky in [
            ResponseKernel::ProductIdentity,
            ResponseKernel::DistanceGaussian,
        ] {
            let v = exact_hsic_weighted(&dist, &RadialXKernel::Gaussian, &ky, &w(&[1.0, 1.0]))
                .unwrap()
                .value;
            assert!(v.abs() <= 1e-12, "got {v}");
        }
    }

    #[test]
    fn weighted_values_match_closed_form_route() {
        let dist = pdelta(0.9, 0.1);
        let kx = RadialXKernel::Gaussian;
        let ky = ResponseKernel::ProductIdentity;
        let both = exact_hsic_weighted(&dist, &kx, &ky, &w(&[1.0, 1.0])).unwrap();
        assert!((both.value - 0.20493123016127998).abs() < 1e-13);
        let first = exact_hsic_weighted(&dist, &kx, &ky, &w(&[1.0, 0.0])).unwrap();
        assert!((first.value - 0.3975821662500626).abs() < 1e-13);
    }

    #[test]
    fn subset_values_and_empty_subset() {
        let dist = pdelta(0.9, 0.1);
        let kx = RadialXKernel::Gaussian;
        let ky = ResponseKernel::ProductIdentity;
        let empty = exact_hsic_subset(&dist, &kx, &ky, &FeatureSubset::empty()).unwrap();
        assert_eq!(empty.value, 0.0);
        let second =
            exact_hsic_subset(&dist, &kx, &ky, &FeatureSubset::new(vec![2]).unwrap()).unwrap();
        assert!((second.value - 0.004908421805556329).abs() < 1e-14);
    }

    #[test]
    fn subset_equals_indicator_weights_bitwise() {
        let dist = pdelta(0.7, 0.3);
        let kx = RadialXKernel::Laplace;
        let ky = ResponseKernel::DistanceGaussian;
        for indices in [vec![], vec![1], vec![2], vec![1, 2]] {
            let subset = FeatureSubset::new(indices).unwrap();
            let via_subset = exact_hsic_subset(&dist, &kx, &ky, &subset).unwrap().value;
            let via_weights = exact_hsic_weighted(
                &dist,
                &kx,
                &ky,
                &WeightVector::indicator(&subset, dist.p()).unwrap(),
            )
            .unwrap()
            .value;
            assert_eq!(via_subset.to_bits(), via_weights.to_bits());
        }
    }

    #[test]
    fn padded_subset_matches_low_dimensional_value() {
        let base = pdelta(0.9, 0.1);
        let padded =
            FiniteJointDistribution::counterexample(&DeltaParams::new(0.9, 0.1, 5).unwrap());
        let kx = RadialXKernel::Gaussian;
        let ky = ResponseKernel::ProductIdentity;
        let low = exact_hsic_subset(&base, &kx, &ky, &FeatureSubset::new(vec![1]).unwrap())
            .unwrap()
            .value;
        let high = exact_hsic_subset(&padded, &kx, &ky, &FeatureSubset::new(vec![1]).unwrap())
            .unwrap()
            .value;
        assert_eq!(low.to_bits(), high.to_bits());
        assert!((low - 0.3975821662500626).abs() < 1e-13);
    }

    #[test]
    fn closed_form_examples() {
        let params = DeltaParams::new(0.9, 0.1, 2).unwrap();
        let kx = RadialXKernel::Gaussian;
        assert_eq!(closed_form_objective(&params, 0.0, 0.0, &kx), 0.0);
        let l10 = closed_form_objective(&params, 1.0, 0.0, &kx);
        assert!((l10 - 1.5903286650002504).abs() < 1e-15);
        let l11 = closed_form_objective(&params, 1.0, 1.0, &kx);
        assert!((l11 - 0.8197249206451199).abs() < 1e-15);
    }

    #[test]
    fn proportionality_constants() {
        assert_eq!(
            proportionality_constant(&ResponseKernel::ProductIdentity).unwrap(),
            0.25
        );
        let dist_gauss = proportionality_constant(&ResponseKernel::DistanceGaussian).unwrap();
        assert!((dist_gauss - 0.12271054513890822).abs() < 1e-16);
        let prod_exp = proportionality_constant(&ResponseKernel::ProductExp).unwrap();
        assert!((prod_exp - 0.29380029841095034).abs() < 1e-16);
    }

    #[test]
    fn proportionality_holds_on_a_grid() {
        let betas = [0.0, 0.25, 0.5, 1.0, 1.75];
        for (d1, d2) in [(0.9, 0.1), (0.5, 0.5), (0.7, 0.2)] {
            let params = DeltaParams::new(d1, d2, 2).unwrap();
            let dist = FiniteJointDistribution::counterexample(&params);
            for kx in [RadialXKernel::Gaussian, RadialXKernel::Laplace] {
                for ky in [
                    ResponseKernel::ProductIdentity,
                    ResponseKernel::ProductExp,
                    ResponseKernel::DistanceGaussian,
                    ResponseKernel::DistanceLaplace,
                ] {
                    let c = proportionality_constant(&ky).unwrap();
                    for &b1 in &betas {
                        for &b2 in &betas {
                            let exact = exact_hsic_weighted(&dist, &kx, &ky, &w(&[b1, b2]))
                                .unwrap()
                                .value;
                            let surrogate = c * closed_form_objective(&params, b1, b2, &kx);
                            assert!(
                                (exact - surrogate).abs() <= 1e-12,
                                "kx={kx} ky={ky} beta=({b1},{b2}): {exact} vs {surrogate}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn centered_route_agrees_with_direct_route() {
        let dist = pdelta(0.8, 0.3);
        for kx in [RadialXKernel::Gaussian, RadialXKernel::Laplace] {
            for ky in [
                ResponseKernel::ProductIdentity,
                ResponseKernel::DistanceLaplace,
            ] {
                for weights in [[1.0, 1.0], [0.6, 0.0], [1.25, 0.75]] {
                    let direct = exact_hsic_weighted(&dist, &kx, &ky, &w(&weights))
                        .unwrap()
                        .value;
                    let centered = exact_hsic_centered_pm1(&dist, &kx, &ky, &w(&weights)).unwrap();
                    assert!((direct - centered).abs() <= 1e-12);
                }
            }
        }
    }

    #[test]
    fn centered_route_rejects_unbalanced_or_non_pm1_responses() {
        let skewed = FiniteJointDistribution::new(
            1,
            vec![
                Atom {
                    x: vec![1.0],
                    y: 1.0,
                    prob: 0.75,
                },
                Atom {
                    x: vec![-1.0],
                    y: -1.0,
                    prob: 0.25,
                },
            ],
        )
        .unwrap();
        let res = exact_hsic_centered_pm1(
            &skewed,
            &RadialXKernel::Gaussian,
            &ResponseKernel::ProductIdentity,
            &w(&[1.0]),
        );
        assert!(res.is_err());

        let wide = FiniteJointDistribution::new(
            1,
            vec![
                Atom {
                    x: vec![1.0],
                    y: 2.0,
                    prob: 0.5,
                },
                Atom {
                    x: vec![-1.0],
                    y: -2.0,
                    prob: 0.5,
                },
            ],
        )
        .unwrap();
        let res = exact_hsic_centered_pm1(
            &wide,
            &RadialXKernel::Gaussian,
            &ResponseKernel::ProductIdentity,
            &w(&[1.0]),
        );
        assert!(res.is_err());
    }

    #[test]
    fn empirical_degenerate_cases() {
        let kx = RadialXKernel::Gaussian;
        let ky = ResponseKernel::ProductIdentity;
        let single = Dataset::new(vec![(vec![1.0, 2.0], 1.0)], 0).unwrap();
        assert_eq!(
            empirical_hsic(&single, &kx, &ky, &w(&[1.0, 1.0])).unwrap(),
            0.0
        );
        let repeated = Dataset::new(vec![(vec![0.5, -0.5], -1.0); 7], 0).unwrap();
        assert_eq!(
            empirical_hsic(&repeated, &kx, &ky, &w(&[1.0, 1.0])).unwrap(),
            0.0
        );
    }

    #[test]
    fn empirical_approaches_exact_value() {
        let dist = pdelta(0.9, 0.1);
        let kx = RadialXKernel::Gaussian;
        let ky = ResponseKernel::ProductIdentity;
        let data = dist.sample(100_000, 7).unwrap();
        let est = empirical_hsic(&data, &kx, &ky, &w(&[1.0, 1.0])).unwrap();
        assert!((est - 0.20493123016127998).abs() < 5e-3);
    }

    #[test]
    fn empirical_error_shrinks_at_the_parametric_rate() {
        let dist = pdelta(0.9, 0.1);
        let kx = RadialXKernel::Gaussian;
        let ky = ResponseKernel::ProductIdentity;
        let ww = w(&[1.0, 1.0]);
        let exact = exact_hsic_weighted(&dist, &kx, &ky, &ww).unwrap().value;

        // calibrate the rate constant as three empirical standard deviations
        // at n = 1000 over twenty seeds
        let n0 = 1000;
        let estimates: Vec<f64> = (0..20)
            .map(|seed| {
                let data = dist.sample(n0, 100 + seed).unwrap();
                empirical_hsic(&data, &kx, &ky, &ww).unwrap()
            })
            .collect();
        let mean = estimates.iter().sum::<f64>() / estimates.len() as f64;
        let var = estimates.iter().map(|e| (e - mean).powi(2)).sum::<f64>()
            / (estimates.len() - 1) as f64;
        let rate_constant = 3.0 * var.sqrt() * (n0 as f64).sqrt();

        for (n, seed) in [(1000, 900), (4000, 901), (16000, 902), (64000, 903)] {
            let data = dist.sample(n, seed).unwrap();
            let est = empirical_hsic(&data, &kx, &ky, &ww).unwrap();
            let bound = rate_constant / (n as f64).sqrt();
            assert!(
                (est - exact).abs() <= bound,
                "n={n}: |{est} - {exact}| > {bound}"
            );
        }
    }

    #[test]
    fn dimension_mismatches_are_rejected() {
        let dist = pdelta(0.9, 0.1);
        let kx = RadialXKernel::Gaussian;
        let ky = ResponseKernel::ProductIdentity;
        assert!(exact_hsic_weighted(&dist, &kx, &ky, &w(&[1.0])).is_err());
        let data = dist.sample(10, 1).unwrap();
        assert!(empirical_hsic(&data, &kx, &ky, &w(&[1.0, 1.0, 1.0])).is_err());
        assert!(WeightVector::new(vec![f64::NAN]).is_err());
    }

    fn random_product_dist(seed: u64) -> FiniteJointDistribution {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let nx = rng.gen_range(2..6);
        let ny = rng.gen_range(2..4);
        let p = rng.gen_range(1..4);
        let xs: Vec<(Vec<f64>, f64)> = (0..nx)
            .map(|i| {
                let mut x: Vec<f64> = (0..p).map(|_| rng.gen_range(-2.0..2.0)).collect();
                x[0] = i as f64;
                (x, rng.gen_range(0.1..1.0))
            })
            .collect();
        let ys: Vec<(f64, f64)> = (0..ny)
            .map(|i| (i as f64 - 1.0, rng.gen_range(0.1..1.0)))
            .collect();
        let x_total: f64 = xs.iter().map(|(_, m)| m).sum();
        let y_total: f64 = ys.iter().map(|(_, m)| m).sum();
        let xs: Vec<(Vec<f64>, f64)> = xs.into_iter().map(|(x, m)| (x, m / x_total)).collect();
        let ys: Vec<(f64, f64)> = ys.into_iter().map(|(y, m)| (y, m / y_total)).collect();
        product_dist(&xs, &ys)
    }

    proptest! {
        #[test]
        fn product_laws_have_zero_dependence(seed in 0u64..2000) {
            let dist = random_product_dist(seed);
            let v = exact_hsic_weighted(
                &dist,
                &RadialXKernel::Laplace,
                &ResponseKernel::DistanceGaussian,
                &WeightVector::new(vec![1.0; dist.p()]).unwrap(),
            )
            .unwrap()
            .value;
            prop_assert!(v.abs() <= 1e-12);
        }

        #[test]
        fn sign_flips_leave_the_value_bitwise_unchanged(
            b1 in -2.0f64..2.0,
            b2 in -2.0f64..2.0,
        ) {
            let dist = pdelta(0.8, 0.4);
            let kx = RadialXKernel::Laplace;
            let ky = ResponseKernel::DistanceLaplace;
            let base = exact_hsic_weighted(&dist, &kx, &ky, &w(&[b1, b2])).unwrap().value;
            for flipped in [[-b1, b2], [b1, -b2], [-b1, -b2]] {
                let v = exact_hsic_weighted(&dist, &kx, &ky, &w(&flipped)).unwrap().value;
                prop_assert_eq!(v.to_bits(), base.to_bits());
            }
        }
    }
}
