//! Homogeneous matter: a Fermi ball of positive-energy states in a constant
//! scalar field, with the field energy and optionally the vacuum density.
//!
//! The occupied states carry degeneracy 4/(2π)³ per unit momentum volume.
//! Self-consistent fields are found at fixed Fermi momentum, where the
//! energy is convex in φ on (−1, 0]; the chemical potential follows from
//! `μ = √(k_F² + (1+φ)²)`.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::potential::{d1v, v, FieldValue};
use crate::quadrature::{find_root_bracketed, minimize_scalar};

/// Minimizers stay at least this far above φ = −1.
pub const DELTA_GUARD: f64 = 1e-6;
const SCAN_POINTS: usize = 4000;
/// Below this ratio k_F/m the Fermi integrals are summed from series.
const SERIES_RATIO: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MatterParams {
    pub g: f64,
    #[serde(rename = "M")]
    pub m_field: f64,
}

impl MatterParams {
    pub fn new(g: f64, m_field: f64) -> Result<Self> {
        if !(g > 0.0 && m_field > 0.0 && g.is_finite() && m_field.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "coupling and field mass must be positive, got g = {g}, M = {m_field}"
            )));
        }
        Ok(Self { g, m_field })
    }

    /// `M² / g²`, the curvature of the field energy.
    #[inline]
    pub fn stiffness(&self) -> f64 {
        (self.m_field / self.g).powi(2)
    }
}

impl Default for MatterParams {
    fn default() -> Self {
        Self { g: 10.0, m_field: 0.5 }
    }
}

/// Fermi momentum `√(max(0, μ² − m²))`.
pub fn fermi_momentum(mu: f64, phi: FieldValue) -> f64 {
    let m = phi.mass();
    (mu * mu - m * m).max(0.0).sqrt()
}

/// `∫₀^k p²√(p²+m²) dp`.
fn ball_energy_integral(k: f64, m: f64) -> f64 {
    if k == 0.0 {
        return 0.0;
    }
    if k < SERIES_RATIO * m {
        let r = (k / m).powi(2);
        return m * k.powi(3) * (1.0 / 3.0 + r * (1.0 / 10.0 + r * (-1.0 / 56.0 + r / 144.0)));
    }
    let e = k.hypot(m);
    (k * (2.0 * k * k + m * m) * e - m.powi(4) * (k / m).asinh()) / 8.0
}

/// `∫₀^k p² m/√(p²+m²) dp`.
fn ball_scalar_integral(k: f64, m: f64) -> f64 {
    if k == 0.0 || m == 0.0 {
        return 0.0;
    }
    if k < SERIES_RATIO * m {
        let r = (k / m).powi(2);
        return k.powi(3) * (1.0 / 3.0 + r * (-1.0 / 10.0 + r * (3.0 / 56.0 - r * 5.0 / 144.0)));
    }
    0.5 * m * (k * k.hypot(m) - m * m * (k / m).asinh())
}

const BALL: f64 = 2.0 / (PI * PI);

/// Particle density `2k_F³/(3π²)`.
pub fn number_density(k_f: f64) -> f64 {
    BALL * k_f.powi(3) / 3.0
}

/// Energy density of the occupied Fermi ball at chemical potential `mu`.
pub fn fermi_gas_energy_density(mu: f64, phi: FieldValue) -> f64 {
    fermi_gas_energy_at_kf(fermi_momentum(mu, phi), phi)
}

/// Energy density of a Fermi ball of radius `k_f`.
pub fn fermi_gas_energy_at_kf(k_f: f64, phi: FieldValue) -> f64 {
    BALL * ball_energy_integral(k_f, phi.mass())
}

/// Scalar density `(2/π²)∫₀^{k_F} p² m/E dp`, the φ-derivative of the ball energy at fixed `k_f`.
pub fn scalar_density(k_f: f64, phi: FieldValue) -> f64 {
    BALL * ball_scalar_integral(k_f, phi.mass())
}

fn field_energy(phi: f64, params: &MatterParams) -> f64 {
    0.5 * params.stiffness() * phi * phi
}

/// `M²φ²/2g² + ` Fermi-ball energy at `mu` `+ V(φ)` (the last term only if requested).
pub fn total_energy_density(mu: f64, phi: FieldValue, params: &MatterParams, include_vacuum: bool) -> f64 {
    let base = field_energy(phi.get(), params) + fermi_gas_energy_density(mu, phi);
    if include_vacuum {
        base + v(phi)
    } else {
        base
    }
}

/// Energy density at fixed Fermi momentum.
pub fn energy_at_kf(k_f: f64, phi: FieldValue, params: &MatterParams, include_vacuum: bool) -> f64 {
    let vac = if include_vacuum { v(phi) } else { 0.0 };
    field_energy(phi.get(), params) + fermi_gas_energy_at_kf(k_f, phi) + vac
}

/// Grand potential `E − μn` at fixed `mu`; its stationary points in φ are
/// the self-consistent fields.
pub fn grand_potential(mu: f64, phi: FieldValue, params: &MatterParams, include_vacuum: bool) -> f64 {
    let k = fermi_momentum(mu, phi);
    total_energy_density(mu, phi, params, include_vacuum) - mu * number_density(k)
}

/// A self-consistent field together with the collapse flag.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhiStar {
    pub phi: f64,
    /// The minimizer sits on the guard boundary `−1 + δ`: the gap closes.
    pub boundary_collapse: bool,
}

fn field(x: f64) -> FieldValue {
    FieldValue::new(x).expect("search interval lies inside the field domain")
}

/// Minimizer of the grand potential over `(−1 + δ, 0]` at chemical potential `mu`.
///
/// A uniform scan picks the lowest basin, which Brent's method then refines.
pub fn find_phi_star(mu: f64, params: &MatterParams, include_vacuum: bool) -> Result<PhiStar> {
    if !(mu >= 0.0 && mu.is_finite()) {
        return Err(Error::InvalidInput(format!("chemical potential must be >= 0, got {mu}")));
    }
    let lo = -1.0 + DELTA_GUARD;
    let omega = |x: f64| grand_potential(mu, field(x), params, include_vacuum);
    let step = (0.0 - lo) / SCAN_POINTS as f64;
    let mut best = (0, f64::INFINITY);
    for i in 0..=SCAN_POINTS {
        let x = if i == SCAN_POINTS { 0.0 } else { lo + step * i as f64 };
        let val = omega(x);
        if !val.is_finite() {
            return Err(Error::NonFinite(x));
        }
        if val < best.1 {
            best = (i, val);
        }
    }
    let a = lo + step * best.0.saturating_sub(1) as f64;
    let b = (lo + step * (best.0 + 1) as f64).min(0.0);
    let refined = minimize_scalar(omega, a, b, 1e-12)?;
    Ok(PhiStar {
        phi: refined.x,
        boundary_collapse: refined.x <= lo + 4e-12,
    })
}

/// Minimizer of the energy at fixed Fermi momentum over `(−1 + δ, 0]`.
///
/// The energy is convex there, so the minimizer is the unique zero of
/// `M²φ/g² + ρ_s + V′`, or the boundary when that has no sign change.
pub fn phi_star_at_kf(k_f: f64, params: &MatterParams, include_vacuum: bool) -> Result<PhiStar> {
    if !(k_f >= 0.0 && k_f.is_finite()) {
        return Err(Error::InvalidInput(format!("Fermi momentum must be >= 0, got {k_f}")));
    }
    if k_f == 0.0 {
        return Ok(PhiStar { phi: 0.0, boundary_collapse: false });
    }
    let lo = -1.0 + DELTA_GUARD;
    let slope = |x: f64| {
        let phi = field(x);
        let vac = if include_vacuum { d1v(phi) } else { 0.0 };
        params.stiffness() * x + scalar_density(k_f, phi) + vac
    };
    let at_lo = slope(lo);
    if at_lo >= 0.0 {
        return Ok(PhiStar { phi: lo, boundary_collapse: true });
    }
    let phi = find_root_bracketed(slope, lo, 0.0, 1e-15)?;
    Ok(PhiStar { phi, boundary_collapse: false })
}

/// One row of the self-consistent field curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MatterPoint {
    pub k_f: f64,
    pub mu_vac: f64,
    pub mu_0: f64,
    pub phi_vac: f64,
    pub phi_0: f64,
    pub energy_vac: f64,
    pub energy_0: f64,
    pub collapse_vac: bool,
    pub collapse_0: bool,
}

impl MatterPoint {
    /// Chemical potential of the vacuum-corrected branch.
    pub fn mu(&self) -> f64 {
        self.mu_vac
    }
}

/// Self-consistent fields with and without the vacuum term at a given Fermi momentum.
pub fn matter_point(k_f: f64, params: &MatterParams) -> Result<MatterPoint> {
    let with = phi_star_at_kf(k_f, params, true)?;
    let without = phi_star_at_kf(k_f, params, false)?;
    let (fv, f0) = (field(with.phi), field(without.phi));
    Ok(MatterPoint {
        k_f,
        mu_vac: k_f.hypot(fv.mass()),
        mu_0: k_f.hypot(f0.mass()),
        phi_vac: with.phi,
        phi_0: without.phi,
        energy_vac: energy_at_kf(k_f, fv, params, true),
        energy_0: energy_at_kf(k_f, f0, params, false),
        collapse_vac: with.boundary_collapse,
        collapse_0: without.boundary_collapse,
    })
}

/// `matter_point` over a grid; order of the output follows the grid.
pub fn matter_curve(k_f_grid: &[f64], params: &MatterParams) -> Vec<Result<MatterPoint>> {
    k_f_grid.par_iter().map(|&k| matter_point(k, params)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{integrate_finite, QuadratureSpec};
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn f(x: f64) -> FieldValue {
        FieldValue::new(x).unwrap()
    }

    #[test]
    fn empty_ball_below_gap() {
        assert_eq!(fermi_gas_energy_density(0.5, f(0.0)), 0.0);
        assert_eq!(fermi_gas_energy_density(1.0, f(0.0)), 0.0);
    }

    #[test]
    fn massless_limit() {
        let k = 1.3;
        let got = fermi_gas_energy_at_kf(k, f(-1.0 + 1e-12));
        assert_relative_eq!(got, k.powi(4) / (2.0 * PI * PI), max_relative = 1e-10);
    }

    #[test]
    fn ball_energy_matches_quadrature() {
        let (mu, phi) = (1.5, -0.2);
        let m: f64 = 0.8;
        let k = (mu * mu - m * m).sqrt();
        let spec = QuadratureSpec::default();
        let q = integrate_finite(|p| BALL * p * p * (p * p + m * m).sqrt(), 0.0, k, &spec).unwrap();
        assert_abs_diff_eq!(fermi_gas_energy_density(mu, f(phi)), q.value, epsilon = 1e-10);
    }

    #[test]
    fn series_branches_join_closed_forms() {
        let m: f64 = 0.7;
        let k = SERIES_RATIO * m;
        let e = k.hypot(m);
        let closed = (k * (2.0 * k * k + m * m) * e - m.powi(4) * (k / m).asinh()) / 8.0;
        assert_relative_eq!(ball_energy_integral(k * (1.0 - 1e-12), m), closed, max_relative = 1e-7);
        let closed_s = 0.5 * m * (k * e - m * m * (k / m).asinh());
        assert_relative_eq!(ball_scalar_integral(k * (1.0 - 1e-12), m), closed_s, max_relative = 1e-6);
    }

    #[test]
    fn scalar_density_is_mass_derivative() {
        let h = 1e-6;
        for (k, x) in [(0.3, -0.4), (1.5, -0.9), (0.01, -0.1)] {
            let fd = (fermi_gas_energy_at_kf(k, f(x + h)) - fermi_gas_energy_at_kf(k, f(x - h))) / (2.0 * h);
            assert_relative_eq!(scalar_density(k, f(x)), fd, max_relative = 1e-6);
        }
    }

    #[test]
    fn total_energy_decomposition() {
        let p = MatterParams::new(10.0, 0.5).unwrap();
        assert_eq!(total_energy_density(0.0, f(0.0), &p, true), 0.0);
        let (mu, x) = (1.2, -0.1);
        let with = total_energy_density(mu, f(x), &p, true);
        let without = total_energy_density(mu, f(x), &p, false);
        assert_relative_eq!(without + v(f(x)), with, max_relative = 1e-15);
        // term by term
        let m: f64 = 0.9;
        let k = (mu * mu - m * m).sqrt();
        let e = (k * k + m * m).sqrt();
        let ball = (2.0 / (PI * PI)) * (k * (2.0 * k * k + m * m) * e - m.powi(4) * (k / m).asinh()) / 8.0;
        let expected = 0.5 * (0.5f64 / 10.0).powi(2) * x * x + ball + v(f(x));
        assert_relative_eq!(with, expected, max_relative = 1e-13);
    }

    #[test]
    fn literal_fixed_mu_energy_is_minimal_at_zero_field() {
        // The Fermi-ball energy grows as the mass drops, so at fixed μ the
        // plain energy is lowest at φ = 0.
        let p = MatterParams::default();
        let e = |x: f64| total_energy_density(1.2, f(x), &p, true);
        let lo = -1.0 + DELTA_GUARD;
        let min = minimize_scalar(e, lo, 0.0, 1e-10).unwrap();
        let n = 1_000_000;
        let mut best = (0.0, f64::INFINITY);
        for i in 0..=n {
            let x = lo + (0.0 - lo) * i as f64 / n as f64;
            let val = e(x);
            if val < best.1 {
                best = (x, val);
            }
        }
        assert_abs_diff_eq!(min.x, best.0, epsilon = 1e-5);
    }

    #[test]
    fn below_gap_field_is_zero() {
        let p = MatterParams::default();
        for vac in [true, false] {
            assert_eq!(find_phi_star(0.5, &p, vac).unwrap().phi, 0.0);
        }
    }

    #[test]
    fn grand_canonical_and_canonical_agree() {
        let p = MatterParams::default();
        let k_target = 1.0;
        let canon = phi_star_at_kf(k_target, &p, true).unwrap();
        let mu = k_target.hypot(1.0 + canon.phi);
        let grand = find_phi_star(mu, &p, true).unwrap();
        assert!(!grand.boundary_collapse);
        assert!(grand.phi > -1.0 && grand.phi < 0.0);
        assert_abs_diff_eq!(grand.phi, canon.phi, epsilon = 1e-4);

        // grid scan of the grand potential at resolution 1e-5
        let mut best = (0.0, f64::INFINITY);
        let n = 100_000;
        for i in 0..n {
            let x = -1.0 + DELTA_GUARD + (1.0 - DELTA_GUARD) * i as f64 / n as f64;
            let val = grand_potential(mu, f(x), &p, true);
            if val < best.1 {
                best = (x, val);
            }
        }
        assert_abs_diff_eq!(grand.phi, best.0, epsilon = 1e-4);
    }

    #[test]
    fn minimizer_has_nonnegative_curvature() {
        let p = MatterParams::default();
        let h = 1e-4;
        for k in [0.2, 0.8, 1.4, 2.0] {
            for vac in [true, false] {
                let s = phi_star_at_kf(k, &p, vac).unwrap();
                let e = |x: f64| energy_at_kf(k, f(x), &p, vac);
                let x = s.phi.min(-h).max(-1.0 + 2.0 * h);
                let d2 = e(x + h) - 2.0 * e(x) + e(x - h);
                assert!(d2 >= 0.0, "k_F {k}, vacuum {vac}: curvature {d2}");
            }
        }
    }

    #[test]
    fn curve_shape() {
        let p = MatterParams::default();
        let grid: Vec<f64> = (0..=20).map(|i| 0.1 * i as f64).collect();
        let pts: Vec<MatterPoint> = matter_curve(&grid, &p).into_iter().map(|r| r.unwrap()).collect();
        assert_eq!(pts[0].phi_vac, 0.0);
        assert_eq!(pts[0].phi_0, 0.0);
        assert_eq!(pts[0].mu(), 1.0);
        for w in pts.windows(2) {
            assert!(w[1].phi_vac < w[0].phi_vac);
            assert!(w[1].phi_0 < w[0].phi_0);
        }
        for pt in &pts {
            assert!(pt.phi_vac > -1.0 + 1e-3);
            assert!(pt.phi_0 <= pt.phi_vac);
            assert!(!pt.collapse_vac);
            let k = (pt.mu_vac.powi(2) - (1.0 + pt.phi_vac).powi(2)).max(0.0).sqrt();
            assert_abs_diff_eq!(k, pt.k_f, epsilon = 1e-6);
        }
    }

    #[test]
    fn rejects_bad_params() {
        assert!(MatterParams::new(0.0, 0.5).is_err());
        assert!(MatterParams::new(10.0, -1.0).is_err());
        assert!(find_phi_star(-1.0, &MatterParams::default(), true).is_err());
    }
}
