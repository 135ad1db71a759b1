//! Response of the occupied positive-energy states.
//!
//! With `E = √(q² + m²)`, `E′ = √(|q−p|² + m²)` and spectral projectors
//! `P_s = (1 + s(α·q + βm)/E)/2`, the spinor trace is
//! `Tr[βP_s(q)βP_s′(q−p)] = 1 + ss′(m² − q·(q−p))/(EE′)`.
//! Collecting the residues inside a counter-clockwise contour around
//! `(0, μ]` and folding the `q − p` ball onto the `q` ball gives
//!
//! `T₊ = −2 ∫_{|q|≤k_F} d³q [τ₊/(E − E′) + τ₋/(E + E′)]`,
//!
//! the first term as a principal value. Its pole in `cos θ` is subtracted
//! analytically.

use std::cell::Cell;
use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matter::fermi_momentum;
use crate::potential::FieldValue;
use crate::quadrature::{
    integrate_finite, integrate_with_breakpoints, IntegrationResult, QuadratureSpec,
};

fn check_args(mu: f64, p: f64) -> Result<()> {
    if !(mu >= 0.0 && mu.is_finite()) {
        return Err(Error::InvalidInput(format!("chemical potential must be >= 0, got {mu}")));
    }
    if !p.is_finite() {
        return Err(Error::InvalidInput(format!("momentum must be finite, got {p}")));
    }
    Ok(())
}

/// `p → 0` limit: `8π[m²k_F/μ − ∫₀^{k_F} q⁴/E³ dq]`.
pub fn t_plus_static(mu: f64, phi: FieldValue, spec: &QuadratureSpec) -> Result<f64> {
    check_args(mu, 0.0)?;
    let k_f = fermi_momentum(mu, phi);
    if k_f == 0.0 {
        return Ok(0.0);
    }
    let m2 = phi.mass().powi(2);
    let tail = integrate_finite(|q| q.powi(4) / (q * q + m2).powf(1.5), 0.0, k_f, spec)?;
    Ok(8.0 * PI * (m2 * k_f / mu - tail.value))
}

/// Fermi-sea response `T₊(μ, p)` from the residue form, as a 2D adaptive
/// integral over `(|q|, cos θ)`. Even in `p`; `p = 0` is the static limit.
pub fn t_plus(mu: f64, p: f64, phi: FieldValue, spec: &QuadratureSpec) -> Result<f64> {
    check_args(mu, p)?;
    spec.validate()?;
    let p = p.abs();
    let k_f = fermi_momentum(mu, phi);
    if k_f == 0.0 {
        return Ok(0.0);
    }
    if p == 0.0 {
        return t_plus_static(mu, phi, spec);
    }
    let m2 = phi.mass().powi(2);
    let missed = Cell::new(false);
    let best = |res: Result<IntegrationResult>| match res {
        Ok(v) => v.value,
        Err(Error::QuadratureFailed { value, .. }) => {
            missed.set(true);
            value
        }
        Err(_) => f64::NAN,
    };
    let inner = QuadratureSpec { abs_tol: spec.abs_tol * 1e-2, ..*spec };

    let radial = |q: f64| {
        let e = (q * q + m2).sqrt();
        let e_prime = |c: f64| (q * q + p * p - 2.0 * q * p * c + m2).max(0.0).sqrt();
        let tau = |c: f64, ep: f64| (m2 - q * q + q * p * c) / (e * ep);
        let c0 = p / (2.0 * q);
        // τ₊/(E − E′) = g(c)/(c − c0) with g = τ₊(E + E′)/2qp. Using
        // E′ − E = −2qp(c − c0)/(E + E′), the quotient (g(c) − g(c0))/(c − c0)
        // has the closed form below, so the pole is removed exactly and the
        // subtracted piece is a logarithm, for c0 on either side of 1.
        let n0 = m2 - q * q + 0.5 * p * p;
        let g0 = (e * e + n0) / (e * q * p);
        let quotient = |c: f64| {
            let ep = e_prime(c);
            let s = e + ep;
            0.5 * (1.0 / ep + 1.0 / e - 2.0 / s + 2.0 * n0 / (s * e * ep))
        };
        let opposite = |c: f64| {
            let ep = e_prime(c);
            (1.0 - tau(c, ep)) / (e + ep)
        };
        let log = ((1.0 - c0).abs() / (1.0 + c0)).ln();
        let first = best(integrate_finite(quotient, -1.0, 1.0, &inner)) + g0 * log;
        let second = best(integrate_finite(opposite, -1.0, 1.0, &inner));
        q * q * (first + second)
    };

    let mut points = vec![0.0];
    if p / 2.0 < k_f {
        points.push(p / 2.0);
    }
    points.push(k_f);
    let total = integrate_with_breakpoints(radial, &points, spec)?.value;
    if missed.get() || !total.is_finite() {
        return Err(Error::QuadratureFailed {
            value: -4.0 * PI * total,
            error_estimate: f64::NAN,
            evaluations: 0,
        });
    }
    Ok(-4.0 * PI * total)
}

/// Contour parameters for [`t_plus_contour`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContourSpec {
    /// Left crossing of the real axis, just above zero.
    pub delta: f64,
    /// Trapezoid nodes on the full circle (even).
    pub nodes: usize,
    pub spec: QuadratureSpec,
}

impl Default for ContourSpec {
    fn default() -> Self {
        Self {
            delta: 1e-4,
            nodes: 10_000,
            spec: QuadratureSpec::new(1e-10, 1e-9, 4000).expect("valid constant"),
        }
    }
}

/// `∫_{u1}^{u2} N(u)/(u − ζ) du` for the quadratic `N(u) = a0 + u + a2u²`.
fn log_moment(a0: f64, a2: f64, zeta: Complex64, u1: f64, u2: f64) -> Complex64 {
    let n_zeta = a0 + zeta + a2 * zeta * zeta;
    let poly = a2 * (u2 * u2 - u1 * u1) / 2.0 + (1.0 + a2 * zeta) * (u2 - u1);
    poly + n_zeta * ((u2 - zeta).ln() - (u1 - zeta).ln())
}

/// `∫d³q Σ_{ss′} τ_{ss′}/((z + sE)(z + s′E′))` over `|q| ≤ q_max`.
///
/// The angular integral is done exactly in the variable `u = E′`.
fn contour_integrand(z: Complex64, p: f64, m2: f64, q_max: f64, points: &[f64], spec: &QuadratureSpec) -> Result<Complex64> {
    let kernel = |q: f64| -> Complex64 {
        let e = (q * q + m2).sqrt();
        let u1 = ((q - p) * (q - p) + m2).sqrt();
        let u2 = ((q + p) * (q + p) + m2).sqrt();
        let a = 3.0 * m2 - q * q + p * p;
        let mut sum = Complex64::new(0.0, 0.0);
        for s in [1.0, -1.0] {
            for s_prime in [1.0, -1.0] {
                let sigma = s * s_prime;
                let a0 = sigma * a / (2.0 * e);
                let a2 = -sigma / (2.0 * e);
                let zeta = -s_prime * z;
                sum += s_prime * log_moment(a0, a2, zeta, u1, u2) / (z + s * e);
            }
        }
        // d³q = 2π q² dq dc and dc = −u du/(qp)
        2.0 * PI * q * sum / p
    };
    let re = integrate_with_breakpoints(|q| kernel(q).re, points, spec)?;
    let im = integrate_with_breakpoints(|q| kernel(q).im, points, spec)?;
    debug_assert!(points.last().copied() == Some(q_max));
    Ok(Complex64::new(re.value, im.value))
}

/// Fermi-sea response from the contour definition itself: the circle
/// through `δ` and `μ`, trapezoid rule in the angle, and the momentum
/// integral done inside. Requires `p > 0`.
pub fn t_plus_contour(mu: f64, p: f64, phi: FieldValue, contour: &ContourSpec) -> Result<f64> {
    check_args(mu, p)?;
    let p = p.abs();
    if p == 0.0 {
        return Err(Error::InvalidInput("the contour form needs p > 0".into()));
    }
    if contour.nodes < 2 || contour.nodes % 2 == 1 {
        return Err(Error::InvalidInput(format!("contour nodes must be even and >= 2, got {}", contour.nodes)));
    }
    let k_f = fermi_momentum(mu, phi);
    if k_f == 0.0 {
        return Ok(0.0);
    }
    if !(contour.delta > 0.0 && contour.delta < phi.mass()) {
        return Err(Error::InvalidInput(format!(
            "contour start {} must lie in the gap (0, {})",
            contour.delta,
            phi.mass()
        )));
    }
    let m2 = phi.mass().powi(2);
    let q_max = k_f + p + 0.05;
    let mut points = vec![0.0];
    for bp in [(k_f - p).abs(), k_f, k_f + p, q_max] {
        if bp > *points.last().unwrap() + 1e-12 {
            points.push(bp);
        }
    }

    let center = 0.5 * (contour.delta + mu);
    let radius = 0.5 * (mu - contour.delta);
    let n = contour.nodes;
    let mut sum = 0.0;
    // Nodes come in conjugate pairs θ, 2π − θ with conjugate contributions.
    for k in 0..n / 2 {
        let theta = 2.0 * PI * (k as f64 + 0.5) / n as f64;
        let rot = Complex64::from_polar(1.0, theta);
        let z = center + radius * rot;
        let val = contour_integrand(z, p, m2, q_max, &points, &contour.spec)?;
        sum += (val * rot).re;
    }
    // T₊ = −(1/2πi)∮ I dz with dz = iR e^{iθ} dθ
    Ok(-2.0 * radius * sum / n as f64)
}
