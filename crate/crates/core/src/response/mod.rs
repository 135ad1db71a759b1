//! Stability response `T(μ, p) = (M² + p²)/2g² + T₊(μ, p) + T_vac(p)` of a
//! homogeneous background against a field perturbation of momentum `p`.

mod fermi;
mod vacuum;

pub use fermi::{t_plus, t_plus_contour, t_plus_static, ContourSpec};
pub use vacuum::{
    brute_force_integrand, brute_force_t_vac, mass_trace, t_reg, t_reg_integrand, t_sing, t_vac, t_vac_bubble, t_vac_parts,
    theta_10, theta_11, theta_20, VacuumResponse, BRUTE_FORCE_CUTOFF,
};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matter::{phi_star_at_kf, MatterParams};
use crate::potential::FieldValue;
use crate::quadrature::QuadratureSpec;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResponseValue {
    pub tree: f64,
    pub t_plus: f64,
    pub t_vac: f64,
    pub t_vac0: f64,
    pub t_sing: f64,
    pub t_reg: f64,
    pub total: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerturbationContext {
    pub phi: FieldValue,
    pub mu: f64,
    pub p: f64,
    pub params: MatterParams,
}

impl PerturbationContext {
    pub fn new(phi: FieldValue, mu: f64, p: f64, params: MatterParams) -> Result<Self> {
        if !(phi.get() <= 0.0) {
            return Err(Error::InvalidInput(format!("background field must lie in (-1, 0], got {}", phi.get())));
        }
        if !(mu >= 0.0 && p.is_finite()) {
            return Err(Error::InvalidInput(format!("need mu >= 0 and finite p, got mu = {mu}, p = {p}")));
        }
        Ok(Self { phi, mu, p, params })
    }
}

/// Tree-level part `(M² + p²)/2g²`.
pub fn tree_level(p: f64, params: &MatterParams) -> f64 {
    (params.m_field.powi(2) + p * p) / (2.0 * params.g.powi(2))
}

/// Full response at the given background. Without the vacuum the
/// `T_vac` pieces are reported as zero.
pub fn total_response(ctx: &PerturbationContext, include_vacuum: bool, spec: &QuadratureSpec) -> Result<ResponseValue> {
    let tree = tree_level(ctx.p, &ctx.params);
    let t_plus = t_plus(ctx.mu, ctx.p, ctx.phi, spec)?;
    let vac = if include_vacuum {
        t_vac_parts(ctx.p.abs(), ctx.phi)?
    } else {
        VacuumResponse { t_vac0: 0.0, t_sing: 0.0, t_reg: 0.0 }
    };
    let t_vac = vac.total();
    Ok(ResponseValue {
        tree,
        t_plus,
        t_vac,
        t_vac0: vac.t_vac0,
        t_sing: vac.t_sing,
        t_reg: vac.t_reg,
        total: tree + t_plus + t_vac,
    })
}

/// One row of a response sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResponsePoint {
    pub k_f: f64,
    pub mu: f64,
    pub phi_background: f64,
    #[serde(flatten)]
    pub value: ResponseValue,
}

/// Response at the self-consistent background of Fermi momentum `k_f`:
/// `φ_vac` with the vacuum included, `φ_0` without.
pub fn response_point(k_f: f64, p: f64, params: &MatterParams, include_vacuum: bool, spec: &QuadratureSpec) -> Result<ResponsePoint> {
    let star = phi_star_at_kf(k_f, params, include_vacuum)?;
    let phi = FieldValue::new(star.phi)?;
    let mu = k_f.hypot(phi.mass());
    let ctx = PerturbationContext::new(phi, mu, p, *params)?;
    Ok(ResponsePoint {
        k_f,
        mu,
        phi_background: star.phi,
        value: total_response(&ctx, include_vacuum, spec)?,
    })
}

/// [`response_point`] over a grid, output in grid order.
pub fn response_curve(
    k_f_grid: &[f64],
    p: f64,
    params: &MatterParams,
    include_vacuum: bool,
    spec: &QuadratureSpec,
) -> Vec<Result<ResponsePoint>> {
    k_f_grid
        .par_iter()
        .map(|&k| response_point(k, p, params, include_vacuum, spec))
        .collect()
}

/// First grid index where the total response turns negative.
pub fn first_sign_change(curve: &[ResponsePoint]) -> Option<usize> {
    curve.iter().position(|r| r.value.total < 0.0)
}
