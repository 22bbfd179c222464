//! Finite joint distributions of a feature vector and a scalar response.
//!
//! Everything downstream (exact dependence values, conditional expectations,
//! selection audits) is a finite double sum over the atoms stored here, so
//! construction validates the usual probability axioms once and the rest of
//! the crate treats a distribution as trusted, immutable data.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::select::FeatureSubset;

/// Probabilities must sum to one within this absolute tolerance.
pub const PROB_SUM_TOLERANCE: f64 = 1e-12;

/// One support point: a feature vector, a response value, and its probability.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Atom {
    pub x: Vec<f64>,
    pub y: f64,
    pub prob: f64,
}

/// A finite list of `(x, y, prob)` atoms with positive probabilities summing
/// to one and pairwise-distinct `(x, y)` support points.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FiniteJointDistribution {
    p: usize,
    atoms: Vec<Atom>,
}

impl FiniteJointDistribution {
    pub fn new(p: usize, atoms: Vec<Atom>) -> Result<Self> {
        if p == 0 {
            return Err(Error::InvalidDistribution(
                "feature dimension must be positive".into(),
            ));
        }
        if atoms.is_empty() {
            return Err(Error::InvalidDistribution("no atoms".into()));
        }
        let mut total = 0.0;
        let mut seen = BTreeMap::new();
        for (idx, atom) in atoms.iter().enumerate() {
            if atom.x.len() != p {
                return Err(Error::InvalidDistribution(format!(
                    "atom {idx} has {} coordinates, expected {p}",
                    atom.x.len()
                )));
            }
            if atom.x.iter().any(|v| !v.is_finite()) || !atom.y.is_finite() {
                return Err(Error::InvalidDistribution(format!(
                    "atom {idx} has a non-finite coordinate or response"
                )));
            }
            if !(atom.prob.is_finite() && atom.prob > 0.0 && atom.prob <= 1.0) {
                return Err(Error::InvalidDistribution(format!(
                    "atom {idx} has probability {}, expected a value in (0, 1]",
                    atom.prob
                )));
            }
            let mut key: Vec<f64> = atom.x.clone();
            key.push(atom.y);
            if seen.insert(OrdKey::new(&key), idx).is_some() {
                return Err(Error::InvalidDistribution(format!(
                    "atom {idx} duplicates an earlier (x, y) support point"
                )));
            }
            total += atom.prob;
        }
        if (total - 1.0).abs() > PROB_SUM_TOLERANCE {
            return Err(Error::InvalidDistribution(format!(
                "probabilities sum to {total}, expected 1 within {PROB_SUM_TOLERANCE:e}"
            )));
        }
        Ok(Self { p, atoms })
    }

    /// The planted two-signal law used as the adversarial selection instance.
    ///
    /// Support is `{-1, +1}^2 x {-1, +1}` with
    /// `P(x1, x2, y) = (1 + d1*x1*y) * (1 + d2*x2*y) / 8`, padded with zero
    /// coordinates up to dimension `params.p`. The response is balanced, the
    /// two features are conditionally independent given the response, and
    /// `d1`, `d2` set how strongly each feature tracks the response. Atoms
    /// whose probability is exactly zero (a delta of 1) are dropped.
    pub fn counterexample(params: &DeltaParams) -> Self {
        let (d1, d2) = (params.delta1, params.delta2);
        let mut atoms = Vec::with_capacity(8);
        for x1 in [1.0, -1.0] {
            for x2 in [1.0, -1.0] {
                for y in [1.0, -1.0] {
                    let prob = (1.0 + d1 * x1 * y) * (1.0 + d2 * x2 * y) / 8.0;
                    if prob > 0.0 {
                        let mut x = vec![0.0; params.p];
                        x[0] = x1;
                        x[1] = x2;
                        atoms.push(Atom { x, y, prob });
                    }
                }
            }
        }
        Self { p: params.p, atoms }
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    fn check_subset(&self, subset: &FeatureSubset) -> Result<()> {
        if let Some(&max) = subset.indices().last() {
            if max > self.p {
                return Err(Error::IndexOutOfRange {
                    index: max,
                    p: self.p,
                });
            }
        }
        Ok(())
    }

    fn project(&self, atom: &Atom, subset: &FeatureSubset) -> Vec<f64> {
        subset.indices().iter().map(|&i| atom.x[i - 1]).collect()
    }

    /// Exact conditional expectation of the response given the selected
    /// coordinates, one entry per observed `x_S` value of positive marginal
    /// probability, sorted by the projected coordinates. The empty subset
    /// yields the single entry `E[Y]`.
    ///
    /// Grouping is by exact coordinate equality; support values are exact by
    /// construction so no tolerance is involved.
    pub fn conditional_expectation(&self, subset: &FeatureSubset) -> Result<Vec<(Vec<f64>, f64)>> {
        self.check_subset(subset)?;
        let mut groups: BTreeMap<OrdKey, (f64, f64)> = BTreeMap::new();
        for atom in &self.atoms {
            let key = self.project(atom, subset);
            let entry = groups.entry(OrdKey::new(&key)).or_insert((0.0, 0.0));
            entry.0 += atom.prob;
            entry.1 += atom.prob * atom.y;
        }
        Ok(groups
            .into_iter()
            .map(|(key, (mass, weighted))| (key.into_values(), weighted / mass))
            .collect())
    }

    /// The L2 distance between the full conditional expectation `E[Y | X]`
    /// and the restricted one `E[Y | X_S]`, computed by exact enumeration.
    /// Zero exactly when conditioning on the subset loses nothing.
    pub fn l2_gap(&self, subset: &FeatureSubset) -> Result<f64> {
        self.check_subset(subset)?;
        let full = FeatureSubset::full(self.p);
        let full_map: BTreeMap<OrdKey, f64> = self
            .conditional_expectation(&full)?
            .into_iter()
            .map(|(x, e)| (OrdKey::new(&x), e))
            .collect();
        let sub_map: BTreeMap<OrdKey, f64> = self
            .conditional_expectation(subset)?
            .into_iter()
            .map(|(x, e)| (OrdKey::new(&x), e))
            .collect();
        let mut gap_sq = 0.0;
        for atom in &self.atoms {
            let e_full = full_map[&OrdKey::new(&atom.x)];
            let e_sub = sub_map[&OrdKey::new(&self.project(atom, subset))];
            let diff = e_full - e_sub;
            gap_sq += atom.prob * diff * diff;
        }
        Ok(gap_sq.sqrt())
    }

    /// Draws `n` i.i.d. rows by inverse-CDF lookup over the atoms.
    /// Deterministic for a fixed `(self, n, seed)`.
    pub fn sample(&self, n: usize, seed: u64) -> Result<Dataset> {
        if n == 0 {
            return Err(Error::Domain("sample size must be at least 1".into()));
        }
        let mut cumulative = Vec::with_capacity(self.atoms.len());
        let mut running = 0.0;
        for atom in &self.atoms {
            running += atom.prob;
            cumulative.push(running);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let last = self.atoms.len() - 1;
        let rows = (0..n)
            .map(|_| {
                let u: f64 = rng.gen();
                let idx = cumulative.partition_point(|&c| c <= u).min(last);
                let atom = &self.atoms[idx];
                (atom.x.clone(), atom.y)
            })
            .collect();
        Dataset::new(rows, seed)
    }
}

impl<'de> Deserialize<'de> for FiniteJointDistribution {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            p: usize,
            atoms: Vec<Atom>,
        }
        let raw = Raw::deserialize(deserializer)?;
        Self::new(raw.p, raw.atoms).map_err(serde::de::Error::custom)
    }
}

/// Signal strengths of the two planted features plus the ambient dimension.
/// Canonical ordering puts the dominant feature first: `0 <= d2 <= d1 <= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeltaParams {
    pub delta1: f64,
    pub delta2: f64,
    pub p: usize,
}

impl DeltaParams {
    pub fn new(delta1: f64, delta2: f64, p: usize) -> Result<Self> {
        if !(delta1.is_finite() && delta2.is_finite()) {
            return Err(Error::Domain("signal strengths must be finite".into()));
        }
        if !(0.0 <= delta2 && delta2 <= delta1 && delta1 <= 1.0) {
            return Err(Error::Domain(format!(
                "signal strengths must satisfy 0 <= d2 <= d1 <= 1, got d1={delta1}, d2={delta2}"
            )));
        }
        if p < 2 {
            return Err(Error::Domain(format!(
                "ambient dimension must be at least 2, got {p}"
            )));
        }
        Ok(Self { delta1, delta2, p })
    }
}

/// Sampled rows plus the seed that generated them.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    p: usize,
    rows: Vec<(Vec<f64>, f64)>,
    seed: u64,
}

impl Dataset {
    pub fn new(rows: Vec<(Vec<f64>, f64)>, seed: u64) -> Result<Self> {
        let p = match rows.first() {
            Some((x, _)) => x.len(),
            None => return Err(Error::InvalidDistribution("dataset has no rows".into())),
        };
        for (idx, (x, y)) in rows.iter().enumerate() {
            if x.len() != p {
                return Err(Error::InvalidDistribution(format!(
                    "row {idx} has {} coordinates, expected {p}",
                    x.len()
                )));
            }
            if x.iter().any(|v| !v.is_finite()) || !y.is_finite() {
                return Err(Error::InvalidDistribution(format!(
                    "row {idx} has a non-finite value"
                )));
            }
        }
        Ok(Self { p, rows, seed })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[(Vec<f64>, f64)] {
        &self.rows
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

/// Total-order key over a coordinate tuple, for exact-equality grouping.
/// Negative zero is folded into positive zero so `-0.0` and `0.0` group
/// together; NaN never reaches here (construction rejects it).
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct OrdKey(Vec<u64>);

impl OrdKey {
    pub(crate) fn new(values: &[f64]) -> Self {
        OrdKey(values.iter().map(|&v| (v + 0.0).to_bits()).collect())
    }

    fn into_values(self) -> Vec<f64> {
        self.0.into_iter().map(f64::from_bits).collect()
    }
}

impl Ord for OrdKey {
    fn cmp(&self, other: &Self) -> Ordering {
        let a = self.0.iter().map(|&b| f64::from_bits(b));
        let b = other.0.iter().map(|&b| f64::from_bits(b));
        for (x, y) in a.zip(b) {
            match x.total_cmp(&y) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

impl PartialOrd for OrdKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
