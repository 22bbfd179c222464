//! Kernel families used on the feature side and on the response side.
//!
//! The feature kernel is radially symmetric, `k_X(x, x') = phi_X(||x - x'||^2)`,
//! with a profile that is a mixture of decaying exponentials. Such profiles
//! stay positive definite in every dimension, which matters here because the
//! same profile is applied to feature subvectors of varying length. The
//! response kernel is either a function of the product `y * y'` or of the
//! distance `|y - y'|`.

use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A finite list of `(rate, weight)` atoms defining the profile
/// `phi(z) = sum_i w_i * exp(-t_i * z)` with all rates and weights positive.
#[derive(Debug, Clone, PartialEq)]
pub struct ExponentialMixture {
    atoms: Vec<(f64, f64)>,
}

impl ExponentialMixture {
    /// Validates that the mixture is nonempty with strictly positive finite
    /// rates and weights. A rate of zero would make the profile constant in
    /// that component, which is excluded.
    pub fn new(atoms: Vec<(f64, f64)>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::InvalidKernel(
                "exponential mixture needs at least one atom".into(),
            ));
        }
        for &(rate, weight) in &atoms {
            if !(rate.is_finite() && rate > 0.0) {
                return Err(Error::InvalidKernel(format!(
                    "mixture rate must be finite and positive, got {rate}"
                )));
            }
            if !(weight.is_finite() && weight > 0.0) {
                return Err(Error::InvalidKernel(format!(
                    "mixture weight must be finite and positive, got {weight}"
                )));
            }
        }
        Ok(Self { atoms })
    }

    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.atoms
    }
}

/// Radially symmetric kernel on feature vectors: `k_X(x, x') = phi_X(||x - x'||^2)`.
///
/// All three variants have a strictly decreasing profile on `[0, inf)` with
/// `phi_X(0) > 0`, so the kernel is positive definite on vectors of any length,
/// including length zero (the empty feature set), where it is the constant
/// `phi_X(0)`.
#[derive(Debug, Clone, PartialEq)]
pub enum RadialXKernel {
    /// `phi_X(z) = exp(-z)`
    Gaussian,
    /// `phi_X(z) = exp(-sqrt(z))`
    Laplace,
    /// `phi_X(z) = sum_i w_i * exp(-t_i * z)`
    Mixture(ExponentialMixture),
}

impl RadialXKernel {
    pub fn mixture(atoms: Vec<(f64, f64)>) -> Result<Self> {
        Ok(Self::Mixture(ExponentialMixture::new(atoms)?))
    }

    /// The radial profile `phi_X` evaluated at a squared distance `z >= 0`.
    pub fn profile(&self, z: f64) -> f64 {
        debug_assert!(z >= 0.0, "profile expects a squared distance");
        match self {
            Self::Gaussian => (-z).exp(),
            Self::Laplace => (-z.sqrt()).exp(),
            Self::Mixture(mix) => mix
                .atoms
                .iter()
                .map(|&(rate, weight)| weight * (-rate * z).exp())
                .sum(),
        }
    }

    /// `phi_X(0)`, the kernel value at zero distance (total mixture mass).
    pub fn at_zero(&self) -> f64 {
        match self {
            Self::Gaussian | Self::Laplace => 1.0,
            Self::Mixture(mix) => mix.atoms.iter().map(|&(_, weight)| weight).sum(),
        }
    }

    /// Evaluates `k_X(x, x') = phi_X(||x - x'||^2)` on equal-length vectors.
    ///
    /// Zero-length vectors are legal and give the constant `phi_X(0)`,
    /// which is how the empty feature subset enters the selection search.
    pub fn eval(&self, x: &[f64], x_other: &[f64]) -> Result<f64> {
        if x.len() != x_other.len() {
            return Err(Error::DimensionMismatch {
                expected: x.len(),
                got: x_other.len(),
            });
        }
        Ok(self.profile(squared_distance(x, x_other)))
    }

    /// The normalized profile `phi_X(z) / phi_X(0)`, in `(0, 1]` and equal to
    /// one only at `z = 0`. This ratio drives the weaker-feature elimination
    /// inequality; computing it through the profile avoids ever representing
    /// the mixing measure explicitly.
    pub fn schoenberg_ratio(&self, z: f64) -> Result<f64> {
        if !(z >= 0.0) {
            return Err(Error::Domain(format!(
                "schoenberg ratio needs a nonnegative squared distance, got {z}"
            )));
        }
        Ok(self.profile(z) / self.at_zero())
    }
}

/// Squared Euclidean distance accumulated in coordinate order.
///
/// The fixed accumulation order is load-bearing: padding both vectors with
/// equal trailing coordinates appends exact `+0.0` terms and leaves the sum
/// bitwise unchanged.
pub(crate) fn squared_distance(x: &[f64], y: &[f64]) -> f64 {
    let mut total = 0.0;
    for (a, b) in x.iter().zip(y.iter()) {
        let d = a - b;
        total += d * d;
    }
    total
}

impl fmt::Display for RadialXKernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Gaussian => write!(f, "gaussian"),
            Self::Laplace => write!(f, "laplace"),
            Self::Mixture(mix) => {
                write!(f, "mix:")?;
                for (i, (rate, weight)) in mix.atoms.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{rate}:{weight}")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for RadialXKernel {
    type Err = Error;

    /// Accepts `gaussian`, `laplace`, or `mix:t1:w1,t2:w2,...`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gaussian" => Ok(Self::Gaussian),
            "laplace" => Ok(Self::Laplace),
            _ => {
                let body = s.strip_prefix("mix:").ok_or_else(|| {
                    Error::Parse(format!(
                        "unknown feature kernel '{s}' (expected gaussian, laplace, or mix:t1:w1,...)"
                    ))
                })?;
                let mut atoms = Vec::new();
                for piece in body.split(',') {
                    let (rate, weight) = piece.split_once(':').ok_or_else(|| {
                        Error::Parse(format!("mixture atom '{piece}' is not of the form t:w"))
                    })?;
                    let rate: f64 = rate
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad mixture rate '{rate}'")))?;
                    let weight: f64 = weight
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad mixture weight '{weight}'")))?;
                    atoms.push((rate, weight));
                }
                Self::mixture(atoms)
            }
        }
    }
}

impl Serialize for RadialXKernel {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for RadialXKernel {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(D::Error::custom)
    }
}

/// Kernel on the scalar response, either product form `phi_Y(y * y')` or
/// distance form `phi_Y(|y - y'|)`.
///
/// Admissibility asks for `phi_Y(1) > phi_Y(-1)` in product form and
/// `phi_Y(0) > phi_Y(1)` in distance form; every named profile satisfies its
/// condition strictly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResponseKernel {
    /// Product form with `phi_Y(t) = t`, i.e. the plain inner product.
    ProductIdentity,
    /// Product form with `phi_Y(t) = exp(t)`.
    ProductExp,
    /// Distance form with `phi_Y(d) = exp(-d^2)`.
    DistanceGaussian,
    /// Distance form with `phi_Y(d) = exp(-d)`.
    DistanceLaplace,
}

impl ResponseKernel {
    pub fn eval(&self, y: f64, y_other: f64) -> f64 {
        match self {
            Self::ProductIdentity => y * y_other,
            Self::ProductExp => (y * y_other).exp(),
            Self::DistanceGaussian => {
                let d = (y - y_other).abs();
                (-(d * d)).exp()
            }
            Self::DistanceLaplace => (-(y - y_other).abs()).exp(),
        }
    }

    pub fn is_product_form(&self) -> bool {
        matches!(self, Self::ProductIdentity | Self::ProductExp)
    }
}

impl fmt::Display for ResponseKernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Self::ProductIdentity => "product-identity",
            Self::ProductExp => "product-exp",
            Self::DistanceGaussian => "dist-gaussian",
            Self::DistanceLaplace => "dist-laplace",
        };
        write!(f, "{name}")
    }
}

impl FromStr for ResponseKernel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "product-identity" => Ok(Self::ProductIdentity),
            "product-exp" => Ok(Self::ProductExp),
            "dist-gaussian" => Ok(Self::DistanceGaussian),
            "dist-laplace" => Ok(Self::DistanceLaplace),
            _ => Err(Error::Parse(format!(
                "unknown response kernel '{s}' (expected product-identity, product-exp, dist-gaussian, or dist-laplace)"
            ))),
        }
    }
}

impl Serialize for ResponseKernel {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ResponseKernel {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn gaussian_at_zero_distance() {
        let k = RadialXKernel::Gaussian;
        assert_eq!(k.eval(&[1.0, 1.0], &[1.0, 1.0]).unwrap(), 1.0);
    }

    #[test]
    fn gaussian_at_unit_flip() {
        let k = RadialXKernel::Gaussian;
        let v = k.eval(&[1.0, 1.0], &[-1.0, 1.0]).unwrap();
        assert!((v - 0.01831563888873418).abs() < 1e-15);
    }

    #[test]
    fn laplace_at_double_flip() {
        let k = RadialXKernel::Laplace;
        let v = k.eval(&[1.0, 1.0], &[-1.0, -1.0]).unwrap();
        assert!((v - 0.059105746561956225).abs() < 1e-15);
    }

    #[test]
    fn empty_vectors_evaluate_to_profile_at_zero() {
        for k in [
            RadialXKernel::Gaussian,
            RadialXKernel::Laplace,
            RadialXKernel::mixture(vec![(0.5, 0.75), (2.0, 0.25)]).unwrap(),
        ] {
            assert_eq!(k.eval(&[], &[]).unwrap(), k.at_zero());
        }
    }

    #[test]
    fn mismatched_lengths_rejected() {
        let k = RadialXKernel::Gaussian;
        assert!(k.eval(&[1.0], &[1.0, 2.0]).is_err());
    }

    #[test]
    fn schoenberg_ratio_examples() {
        let g = RadialXKernel::Gaussian;
        assert_eq!(g.schoenberg_ratio(0.0).unwrap(), 1.0);
        assert!((g.schoenberg_ratio(4.0).unwrap() - 0.01831563888873418).abs() < 1e-15);
        let l = RadialXKernel::Laplace;
        assert!((l.schoenberg_ratio(4.0).unwrap() - 0.1353352832366127).abs() < 1e-15);
        assert!(g.schoenberg_ratio(-1.0).is_err());
    }

    #[test]
    fn mixture_validation() {
        assert!(ExponentialMixture::new(vec![]).is_err());
        assert!(ExponentialMixture::new(vec![(0.0, 1.0)]).is_err());
        assert!(ExponentialMixture::new(vec![(1.0, 0.0)]).is_err());
        assert!(ExponentialMixture::new(vec![(1.0, -2.0)]).is_err());
        assert!(ExponentialMixture::new(vec![(1.0, 1.0), (3.0, 0.5)]).is_ok());
    }

    #[test]
    fn padding_with_equal_coordinates_is_bitwise_invariant() {
        let k = RadialXKernel::Laplace;
        let base = k.eval(&[0.3, -1.2], &[0.9, 0.4]).unwrap();
        let padded = k
            .eval(&[0.3, -1.2, 7.5, -0.0], &[0.9, 0.4, 7.5, -0.0])
            .unwrap();
        assert_eq!(base.to_bits(), padded.to_bits());
    }

    #[test]
    fn response_kernel_examples() {
        assert_eq!(ResponseKernel::ProductIdentity.eval(1.0, -1.0), -1.0);
        assert_eq!(ResponseKernel::DistanceGaussian.eval(1.0, 1.0), 1.0);
        let v = ResponseKernel::DistanceGaussian.eval(1.0, -1.0);
        assert!((v - 0.01831563888873418).abs() < 1e-15);
    }

    #[test]
    fn kernel_spellings_round_trip() {
        for s in ["gaussian", "laplace", "mix:1:1", "mix:0.5:0.75,2:0.25"] {
            let k: RadialXKernel = s.parse().unwrap();
            assert_eq!(k.to_string(), s);
        }
        for s in [
            "product-identity",
            "product-exp",
            "dist-gaussian",
            "dist-laplace",
        ] {
            let k: ResponseKernel = s.parse().unwrap();
            assert_eq!(k.to_string(), s);
        }
        assert!("rbf".parse::<RadialXKernel>().is_err());
        assert!("mix:1".parse::<RadialXKernel>().is_err());
        assert!("mix:-1:1".parse::<RadialXKernel>().is_err());
        assert!("product".parse::<ResponseKernel>().is_err());
    }

    fn any_kernel() -> impl Strategy<Value = RadialXKernel> {
        prop_oneof![
            Just(RadialXKernel::Gaussian),
            Just(RadialXKernel::Laplace),
            proptest::collection::vec((0.05f64..5.0, 0.1f64..2.0), 1..4)
                .prop_map(|atoms| RadialXKernel::mixture(atoms).unwrap()),
        ]
    }

    proptest! {
        #[test]
        fn ratio_strictly_decreases(k in any_kernel(), z in 0.0f64..30.0, step in 0.01f64..10.0) {
            let lo = k.schoenberg_ratio(z).unwrap();
            let hi = k.schoenberg_ratio(z + step).unwrap();
            prop_assert!(hi < lo);
            prop_assert!(hi > 0.0 && lo <= 1.0);
        }

        #[test]
        fn mixture_kernel_is_positive_semidefinite(
            k in any_kernel(),
            points in proptest::collection::vec(
                proptest::collection::vec(-3.0f64..3.0, 2),
                1..8,
            ),
            coeffs in proptest::collection::vec(-2.0f64..2.0, 8),
        ) {
            let n = points.len();
            let mut quad = 0.0;
            for i in 0..n {
                for j in 0..n {
                    quad += coeffs[i] * coeffs[j] * k.eval(&points[i], &points[j]).unwrap();
                }
            }
            let scale: f64 = coeffs[..n].iter().map(|c| c.abs()).sum();
            prop_assert!(quad >= -1e-10 * scale * scale * k.at_zero());
        }
    }
}
