use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::VehicleSpec;

/// The constant adjoint magnitude that fixes interior turn angles and
/// junction line lengths. Always strictly greater than one.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct LambdaParam(f64);

impl LambdaParam {
    pub fn new(lambda: f64) -> Result<Self> {
        if lambda.is_finite() && lambda > 1.0 {
            Ok(Self(lambda))
        } else {
            Err(Error::Domain(format!("lambda must be > 1, got {lambda}")))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Turn angle of an arc that sits between two lines: `2π - 2·acos(1/λ)`, in `(π, 2π)`.
pub fn mid_turn_angle_from_lambda(p: LambdaParam) -> f64 {
    TAU - 2.0 * (1.0 / p.0).acos()
}

/// Inverse of [`mid_turn_angle_from_lambda`]: `λ = -1/cos(φ/2)`.
pub fn lambda_from_mid_turn_angle(phi: f64) -> Result<LambdaParam> {
    if !(phi > PI && phi < TAU) {
        return Err(Error::Domain(format!(
            "interior turn angle must lie in (π, 2π), got {phi}"
        )));
    }
    LambdaParam::new(-1.0 / (0.5 * phi).cos())
}

/// Length of the line joining opposite turns: `(mu_l + mu_r) / sqrt(λ² - 1)`.
pub fn junction_s_length(p: LambdaParam, spec: &VehicleSpec) -> f64 {
    spec.mu_sum() / (p.0 * p.0 - 1.0).sqrt()
}

/// Junction length written directly in terms of the interior angle,
/// `(mu_l + mu_r)·|cot(φ/2)|`. Stays finite at `φ = π` where λ is unbounded.
pub fn junction_length_for_angle(phi: f64, spec: &VehicleSpec) -> f64 {
    let (s, c) = (0.5 * phi).sin_cos();
    spec.mu_sum() * (c / s).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn mid_angle_examples() {
        let two = LambdaParam::new(2.0).unwrap();
        assert_abs_diff_eq!(mid_turn_angle_from_lambda(two), 4.0 * PI / 3.0, epsilon = 1e-14);
        let near_one = LambdaParam::new(1.0 + 1e-14).unwrap();
        assert_abs_diff_eq!(mid_turn_angle_from_lambda(near_one), TAU, epsilon = 1e-6);
        let reference = LambdaParam::new(1.85977).unwrap();
        assert_abs_diff_eq!((1.0 / 1.85977f64).acos().to_degrees(), 57.4727, epsilon = 1e-4);
        assert_abs_diff_eq!(mid_turn_angle_from_lambda(reference), 4.27701, epsilon = 1e-5);
        assert_abs_diff_eq!(
            mid_turn_angle_from_lambda(reference).to_degrees(),
            245.07,
            epsilon = 0.02
        );
        assert!(LambdaParam::new(1.0).is_err());
        assert!(LambdaParam::new(0.5).is_err());
        assert!(LambdaParam::new(f64::NAN).is_err());
    }

    #[test]
    fn inverse_examples() {
        let l = lambda_from_mid_turn_angle(4.0 * PI / 3.0).unwrap();
        assert_abs_diff_eq!(l.value(), 2.0, epsilon = 1e-12);
        let l = lambda_from_mid_turn_angle(245.07f64.to_radians()).unwrap();
        assert_abs_diff_eq!(l.value(), 1.85977, epsilon = 1e-3);
        assert!(lambda_from_mid_turn_angle(PI).is_err());
        assert!(lambda_from_mid_turn_angle(TAU).is_err());
        assert!(lambda_from_mid_turn_angle(1.0).is_err());
        let huge = lambda_from_mid_turn_angle(PI + 1e-9).unwrap();
        assert!(huge.value() > 1e8);
    }

    #[test]
    fn junction_examples() {
        let spec = VehicleSpec::new(1.0, 1.0, 0.5, 0.5).unwrap();
        let sqrt2 = LambdaParam::new(2f64.sqrt()).unwrap();
        assert_abs_diff_eq!(junction_s_length(sqrt2, &spec), 1.0, epsilon = 1e-12);

        let spec = VehicleSpec::new(1.0, 1.0, 1.0, 1.0).unwrap();
        let reference = LambdaParam::new(1.85977).unwrap();
        assert_abs_diff_eq!(junction_s_length(reference, &spec), 1.27548, epsilon = 1e-4);

        let zero = VehicleSpec::new(1.0, 1.0, 0.0, 0.0).unwrap();
        for l in [1.01, 2.0, 50.0] {
            assert_eq!(junction_s_length(LambdaParam::new(l).unwrap(), &zero), 0.0);
        }
        assert_abs_diff_eq!(junction_length_for_angle(PI, &spec), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn round_trip_over_range() {
        let spec = VehicleSpec::new(1.0, 2.0, 0.3, 1.7).unwrap();
        let mut l = 1.01;
        while l <= 100.0 {
            let p = LambdaParam::new(l).unwrap();
            let phi = mid_turn_angle_from_lambda(p);
            assert!(phi > PI && phi < TAU);
            let back = lambda_from_mid_turn_angle(phi).unwrap().value();
            assert!((back - l).abs() <= 1e-10, "{l} -> {back}");
            assert_abs_diff_eq!(
                junction_length_for_angle(phi, &spec),
                junction_s_length(p, &spec),
                epsilon = 1e-10
            );
            l *= 1.07;
        }
    }
}
