//! Vacuum energy density of a constant field as a subtracted momentum
//! integral over the free Dirac dispersion `E_s(p) = √(p² + (1+s)²)`.
//!
//! Each momentum mode contributes the remainder of `E_s(p)` after its
//! Taylor polynomial in `s` of order `d + 1` has been removed; the
//! remainders decay fast enough that the momentum integrals converge.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::potential::FieldValue;
use crate::quadrature::{gauss_legendre, integrate_from, integrate_with_breakpoints, QuadratureSpec};

/// Above this momentum the remainder comes from its integral form, which
/// avoids subtracting nearly equal numbers.
const DIRECT_LIMIT: f64 = 2.0;
const REMAINDER_NODES: usize = 24;

/// Spatial dimension of the oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dim {
    One,
    Three,
}

impl Dim {
    /// Order of the Taylor subtraction, `d + 1`.
    pub fn counterterm_order(self) -> u32 {
        match self {
            Dim::One => 2,
            Dim::Three => 4,
        }
    }
}

impl TryFrom<u32> for Dim {
    type Error = Error;

    fn try_from(d: u32) -> Result<Self> {
        match d {
            1 => Ok(Dim::One),
            3 => Ok(Dim::Three),
            _ => Err(Error::InvalidInput(format!("dimension must be 1 or 3, got {d}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleSpec {
    pub dim: Dim,
    pub phi: FieldValue,
    pub spec: QuadratureSpec,
}

/// `j`-th derivative of `√(p² + m²)` with respect to `m`, for `j ≤ 5`.
pub fn dispersion_derivative(p: f64, m: f64, j: u32) -> f64 {
    let p2 = p * p;
    let m2 = m * m;
    let e2 = p2 + m2;
    let e = e2.sqrt();
    match j {
        0 => e,
        1 => m / e,
        2 => p2 / (e * e2),
        3 => -3.0 * p2 * m / (e * e2 * e2),
        4 => -3.0 * p2 * (p2 - 4.0 * m2) / (e * e2 * e2 * e2),
        5 => 15.0 * p2 * m * (3.0 * p2 - 4.0 * m2) / (e * e2 * e2 * e2 * e2),
        _ => panic!("dispersion derivative of order {j} is not tabulated"),
    }
}

/// Taylor polynomial of `E_s(p)` in `s` at `s = 0`, evaluated at `s = φ`.
fn taylor(p: f64, phi: f64, order: u32) -> f64 {
    let mut sum = 0.0;
    let mut coeff = 1.0;
    for j in 0..=order {
        if j > 0 {
            coeff *= phi / j as f64;
        }
        sum += coeff * dispersion_derivative(p, 1.0, j);
    }
    sum
}

/// `E_φ(p) − Σ_{j≤order} φʲ/j! ∂ₛʲE_s(p)|₀` for `order ∈ 0..=4`.
pub fn dispersion_remainder(p: f64, phi: FieldValue, order: u32) -> Result<f64> {
    if !(p >= 0.0 && p.is_finite()) {
        return Err(Error::InvalidInput(format!("momentum must be finite and >= 0, got {p}")));
    }
    if order > 4 {
        return Err(Error::InvalidInput(format!("remainder order {order} exceeds 4")));
    }
    let x = phi.get();
    if x == 0.0 {
        return Ok(0.0);
    }
    if p <= DIRECT_LIMIT {
        return Ok(dispersion_derivative(p, phi.mass(), 0) - taylor(p, x, order));
    }
    // rem = ∫_1^{1+φ} f^(order+1)(t) (1+φ−t)^order / order! dt
    let (nodes, weights) = gauss_legendre(REMAINDER_NODES);
    let (a, b) = (1.0, phi.mass());
    let half = 0.5 * (b - a);
    let center = 0.5 * (a + b);
    let fact: f64 = (1..=order).map(|k| k as f64).product();
    let mut sum = 0.0;
    for (t, w) in nodes.iter().zip(&weights) {
        let s = center + half * t;
        sum += w * dispersion_derivative(p, s, order + 1) * (b - s).powi(order as i32);
    }
    Ok(sum * half / fact)
}

/// Regularised vacuum energy per unit volume of a constant field, summed
/// over momenta.
pub fn vacuum_density_momentum(phi: FieldValue, dim: Dim, spec: &QuadratureSpec) -> Result<f64> {
    if phi.get() == 0.0 {
        return Ok(0.0);
    }
    let order = dim.counterterm_order();
    let (weight, prefactor): (fn(f64) -> f64, f64) = match dim {
        Dim::Three => (|p| p * p, -2.0 / (PI * PI)),
        Dim::One => (|_| 1.0, -1.0 / PI),
    };
    // Errors inside the closure are impossible for p >= 0 and order <= 4.
    let integrand = |p: f64| weight(p) * dispersion_remainder(p, phi, order).unwrap_or(f64::NAN);
    let near = integrate_with_breakpoints(integrand, &[0.0, 1.0, DIRECT_LIMIT], spec)?;
    let far = integrate_from(integrand, DIRECT_LIMIT, spec)?;
    let total = near.value + far.value;
    if !total.is_finite() {
        return Err(Error::NonFinite(phi.get()));
    }
    Ok(prefactor * total)
}

impl OracleSpec {
    pub fn evaluate(&self) -> Result<f64> {
        vacuum_density_momentum(self.phi, self.dim, &self.spec)
    }
}
