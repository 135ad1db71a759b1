//! Closed-form effective vacuum-energy density for a constant scalar field.
//!
//! With `m = 1 + φ` the three-dimensional density is
//! `V(φ) = -(1/4π²) m⁴ ln m - P(φ)` where `P` is the quartic Taylor
//! polynomial of the first term at `φ = 0`, so the first four derivatives
//! of `V` vanish at the origin. The one-dimensional analogue subtracts the
//! quadratic Taylor polynomial instead: `V₁(φ) = (1/2π)[m² ln m - φ - 3φ²/2]`.
//!
//! Near `φ = 0` the subtractions cancel almost completely, so for small
//! `|φ|` all densities are summed from their power series.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Below this `|φ|` the power series replace the closed forms.
const SERIES_RADIUS: f64 = 0.75;
const SERIES_TERMS: usize = 150;

/// A constant scalar field amplitude with `φ > -1`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct FieldValue(f64);

impl FieldValue {
    pub fn new(phi: f64) -> Result<Self> {
        if phi > -1.0 && phi.is_finite() {
            Ok(Self(phi))
        } else {
            Err(Error::FieldDomain(phi))
        }
    }

    pub const fn zero() -> Self {
        Self(0.0)
    }

    #[inline]
    pub fn get(self) -> f64 {
        self.0
    }

    /// Effective Dirac mass `1 + φ`.
    #[inline]
    pub fn mass(self) -> f64 {
        1.0 + self.0
    }
}

impl TryFrom<f64> for FieldValue {
    type Error = Error;

    fn try_from(phi: f64) -> Result<Self> {
        Self::new(phi)
    }
}

impl From<FieldValue> for f64 {
    fn from(v: FieldValue) -> f64 {
        v.0
    }
}

/// The three pieces of `V(φ)`; `v == log_term - p_counterterm`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialEval {
    pub v: f64,
    pub p_counterterm: f64,
    pub log_term: f64,
}

/// Taylor coefficient of `xⁿ` in `(1+x)^k ln(1+x)`, `n ≥ 1`.
fn log_power_coefficient(k: u32, n: usize) -> f64 {
    let mut binom = 1.0;
    let mut c = 0.0;
    for j in 0..=k as usize {
        if j > 0 {
            binom = binom * (k as usize + 1 - j) as f64 / j as f64;
        }
        if n > j {
            let sign = if (n - j) % 2 == 1 { 1.0 } else { -1.0 };
            c += binom * sign / (n - j) as f64;
        }
    }
    c
}

/// `d^deriv/dφ^deriv` of the tail `Σ_{n>start} cₙ φⁿ` of `(1+φ)^k ln(1+φ)`.
fn series_tail(k: u32, start: usize, deriv: usize, phi: f64) -> f64 {
    let mut sum = 0.0;
    for n in (start + 1)..(start + 1 + SERIES_TERMS) {
        let mut falling = 1.0;
        for i in 0..deriv {
            falling *= (n - i) as f64;
        }
        sum += log_power_coefficient(k, n) * falling * phi.powi((n - deriv) as i32);
    }
    sum
}

const INV_4PI2: f64 = 1.0 / (4.0 * PI * PI);

/// Quartic counterterm `P(φ) = -(1/4π²)(φ + 7φ²/2 + 13φ³/3 + 25φ⁴/12)`.
pub fn counterterm_p(phi: FieldValue) -> f64 {
    let x = phi.get();
    -INV_4PI2 * x * (1.0 + x * (3.5 + x * (13.0 / 3.0 + x * (25.0 / 12.0))))
}

/// Effective potential `V(φ)` with its decomposition.
pub fn effective_potential(phi: FieldValue) -> PotentialEval {
    let x = phi.get();
    let m = phi.mass();
    let log_term = -INV_4PI2 * m.powi(4) * m.ln();
    let p_counterterm = counterterm_p(phi);
    let v = if x.abs() < SERIES_RADIUS {
        -INV_4PI2 * series_tail(4, 4, 0, x)
    } else {
        log_term - p_counterterm
    };
    PotentialEval {
        v,
        p_counterterm,
        log_term,
    }
}

/// Shorthand for `effective_potential(phi).v`.
pub fn v(phi: FieldValue) -> f64 {
    effective_potential(phi).v
}

/// Exact first derivative `V'(φ)`.
pub fn d1v(phi: FieldValue) -> f64 {
    let x = phi.get();
    if x.abs() < SERIES_RADIUS {
        return -INV_4PI2 * series_tail(4, 4, 1, x);
    }
    let m = phi.mass();
    let dp = 1.0 + x * (7.0 + x * (13.0 + x * (25.0 / 3.0)));
    -INV_4PI2 * (m.powi(3) * (4.0 * m.ln() + 1.0) - dp)
}

/// Exact second derivative `V''(φ)`.
pub fn d2v(phi: FieldValue) -> f64 {
    let x = phi.get();
    if x.abs() < SERIES_RADIUS {
        return -INV_4PI2 * series_tail(4, 4, 2, x);
    }
    let m = phi.mass();
    let d2p = 7.0 + x * (26.0 + x * 25.0);
    -INV_4PI2 * (m * m * (12.0 * m.ln() + 7.0) - d2p)
}

/// One-dimensional analogue `V₁(φ) = (1/2π)[(1+φ)² ln(1+φ) - φ - 3φ²/2]`.
pub fn effective_potential_1d(phi: FieldValue) -> f64 {
    let x = phi.get();
    if x.abs() < SERIES_RADIUS {
        return series_tail(2, 2, 0, x) / (2.0 * PI);
    }
    let m = phi.mass();
    (m * m * m.ln() - x - 1.5 * x * x) / (2.0 * PI)
}

/// Semiclassical density of the given order: order 0 is `V`, order 1
/// vanishes identically. Higher orders have no closed form here.
pub fn semiclassical_density(phi: FieldValue, order: u32) -> Result<f64> {
    match order {
        0 => Ok(v(phi)),
        1 => Ok(0.0),
        n => Err(Error::InvalidInput(format!(
            "semiclassical order {n} is not available (only 0 and 1)"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn f(x: f64) -> FieldValue {
        FieldValue::new(x).unwrap()
    }

    #[test]
    fn domain_guard() {
        assert_eq!(FieldValue::new(-1.0), Err(Error::FieldDomain(-1.0)));
        assert!(FieldValue::new(-1.5).is_err());
        assert!(FieldValue::new(f64::NAN).is_err());
        assert!(FieldValue::new(-0.999_999).is_ok());
    }

    #[test]
    fn counterterm_values() {
        assert_eq!(counterterm_p(f(0.0)), 0.0);
        // 1 + 7/2 + 13/3 + 25/12 = 131/12
        assert_relative_eq!(counterterm_p(f(1.0)), -131.0 / (48.0 * PI * PI), max_relative = 1e-15);
    }

    #[test]
    fn counterterm_is_taylor_polynomial_of_log_term() {
        // coefficients of (1+x)^4 ln(1+x) through x^4
        let expected = [1.0, 3.5, 13.0 / 3.0, 25.0 / 12.0];
        for (n, want) in expected.iter().enumerate() {
            assert_relative_eq!(log_power_coefficient(4, n + 1), *want, max_relative = 1e-15);
        }
        // and numerically: -4π² P(x)/x for x -> 0 is 1
        let x = 1e-7;
        assert_relative_eq!(-counterterm_p(f(x)) / (INV_4PI2 * x), 1.0, max_relative = 1e-6);
    }

    #[test]
    fn potential_vanishes_at_origin() {
        let e = effective_potential(f(0.0));
        assert_eq!(e.v, 0.0);
        assert_eq!(e.log_term, 0.0);
        assert_eq!(d2v(f(0.0)), 0.0);
        assert_eq!(effective_potential_1d(f(0.0)), 0.0);
    }

    #[test]
    fn decomposition_identity_away_from_origin() {
        for x in [-0.9, -0.5, 0.3, 2.0] {
            let e = effective_potential(f(x));
            assert_relative_eq!(e.v, e.log_term - e.p_counterterm, max_relative = 1e-14);
        }
    }

    #[test]
    fn leading_small_field_behaviour() {
        let x = 1e-2;
        assert_relative_eq!(v(f(x)) / x.powi(5), -1.0 / (20.0 * PI * PI), max_relative = 5e-2);
        assert_relative_eq!(
            effective_potential_1d(f(x)) / x.powi(3),
            1.0 / (6.0 * PI),
            max_relative = 5e-2
        );
    }

    #[test]
    fn series_and_closed_form_agree_at_switch() {
        for x in [-SERIES_RADIUS, SERIES_RADIUS] {
            let m = 1.0 + x;
            let closed = -INV_4PI2 * m.powi(4) * m.ln() - counterterm_p(f(x));
            assert_relative_eq!(-INV_4PI2 * series_tail(4, 4, 0, x), closed, max_relative = 1e-12);
            let closed1 = (m * m * m.ln() - x - 1.5 * x * x) / (2.0 * PI);
            assert_relative_eq!(series_tail(2, 2, 0, x) / (2.0 * PI), closed1, max_relative = 1e-9);
            let d2 = -INV_4PI2 * (m * m * (12.0 * m.ln() + 7.0) - (7.0 + 26.0 * x + 25.0 * x * x));
            assert_relative_eq!(-INV_4PI2 * series_tail(4, 4, 2, x), d2, max_relative = 1e-9);
        }
    }

    #[test]
    fn second_derivative_matches_finite_differences() {
        for x in [-0.3, 0.5] {
            let h = 1e-4;
            let fd = (v(f(x + h)) - 2.0 * v(f(x)) + v(f(x - h))) / (h * h);
            assert_relative_eq!(d2v(f(x)), fd, max_relative = 1e-6);
        }
        // fourth-order stencil on the whole grid
        let h = 1e-3;
        for i in -9..=9 {
            let x = i as f64 / 10.0;
            let g = |k: f64| v(f(x + k * h));
            let fd = (-g(2.0) + 16.0 * g(1.0) - 30.0 * g(0.0) + 16.0 * g(-1.0) - g(-2.0)) / (12.0 * h * h);
            let exact = d2v(f(x));
            if exact == 0.0 {
                assert_abs_diff_eq!(fd, 0.0, epsilon = 1e-9);
            } else {
                assert_relative_eq!(exact, fd, max_relative = 1e-6);
            }
        }
    }

    #[test]
    fn first_derivative_matches_finite_differences() {
        let h = 1e-5;
        for x in [-0.95, -0.5, -0.05, 0.05, 0.7] {
            let fd = (v(f(x + h)) - v(f(x - h))) / (2.0 * h);
            assert_abs_diff_eq!(d1v(f(x)), fd, epsilon = 1e-9);
        }
    }

    #[test]
    fn sign_structure_on_positive_fields() {
        for i in 1..=100 {
            let x = 3.0 * i as f64 / 100.0;
            assert!(v(f(x)) < 0.0, "V({x}) should be negative");
            assert!(effective_potential_1d(f(x)) > 0.0, "V1({x}) should be positive");
        }
    }

    #[test]
    fn monotone_near_gap_closure() {
        let mut prev = v(f(-0.99));
        for i in 1..=50 {
            let x = -0.99 - 0.01 * i as f64 / 51.0;
            let cur = v(f(x));
            assert!(cur.abs() > prev.abs());
            prev = cur;
        }
    }

    #[test]
    fn semiclassical_orders() {
        assert_eq!(semiclassical_density(f(0.2), 1).unwrap(), 0.0);
        assert_eq!(semiclassical_density(f(0.2), 0).unwrap(), v(f(0.2)));
        assert!(semiclassical_density(f(0.2), 2).is_err());
    }
}
