//! The oracle suite behind `vacpol verify`.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::lattice::{regularized_vacuum_energy_1d, LatticeConfig};
use crate::matter::{phi_star_at_kf, MatterParams};
use crate::oracle::{vacuum_density_momentum, Dim};
use crate::potential::{d2v, effective_potential_1d, v, FieldValue};
use crate::quadrature::QuadratureSpec;
use crate::response::{brute_force_t_vac, t_plus, t_plus_contour, t_vac, t_vac_bubble, ContourSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// A documented mismatch that does not fail the suite unless `--strict`.
    KnownDiscrepancy,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    /// Worst error over the check's sample points.
    pub error: f64,
    pub tolerance: f64,
    pub measure: &'static str,
    pub worst_at: String,
    pub status: Status,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
    pub failures: usize,
    pub known_discrepancies: usize,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

fn field(x: f64) -> FieldValue {
    FieldValue::new(x).expect("suite points lie in the domain")
}

/// Evaluate `(label, error)` pairs and keep the worst.
fn check<I>(name: &'static str, measure: &'static str, tolerance: f64, samples: I) -> Result<Check>
where
    I: IntoIterator<Item = Result<(String, f64)>>,
{
    let mut worst = (String::new(), 0.0f64);
    for s in samples {
        let (label, err) = s?;
        if !(err <= worst.1) {
            worst = (label, err);
        }
    }
    let status = if worst.1 <= tolerance { Status::Pass } else { Status::Fail };
    Ok(Check {
        name,
        error: worst.1,
        tolerance,
        measure,
        worst_at: worst.0,
        status,
    })
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

pub fn run_suite(fast: bool, strict: bool) -> Result<Report> {
    let grid: Vec<f64> = if fast {
        vec![-0.9, -0.5, -0.1, 0.3, 0.7, 0.9]
    } else {
        (-9..=9).map(|i| i as f64 / 10.0).collect()
    };
    let spec = QuadratureSpec::default();
    let mut checks = Vec::new();

    let oracle = |dim: Dim, closed: fn(FieldValue) -> f64| {
        grid.par_iter()
            .map(|&x| {
                let got = vacuum_density_momentum(field(x), dim, &spec)?;
                Ok((format!("phi={x}"), (got - closed(field(x))).abs()))
            })
            .collect::<Vec<_>>()
    };
    checks.push(check("potential-oracle-3d", "absolute", 1e-7, oracle(Dim::Three, v))?);
    checks.push(check("potential-oracle-1d", "absolute", 1e-8, oracle(Dim::One, effective_potential_1d))?);

    let h = 1e-3;
    let vv = |k: f64| v(field(k * h));
    let derivatives = [
        (vv(1.0) - vv(-1.0)) / (2.0 * h),
        (vv(1.0) - 2.0 * vv(0.0) + vv(-1.0)) / (h * h),
        (vv(2.0) - 2.0 * vv(1.0) + 2.0 * vv(-1.0) - vv(-2.0)) / (2.0 * h.powi(3)),
        (vv(2.0) - 4.0 * vv(1.0) + 6.0 * vv(0.0) - 4.0 * vv(-1.0) + vv(-2.0)) / h.powi(4),
    ];
    checks.push(check(
        "counterterm-derivatives-vanish",
        "absolute",
        1e-6,
        derivatives.iter().enumerate().map(|(k, d)| Ok((format!("order={}", k + 1), d.abs()))),
    )?);

    let curvature = [-0.2, -0.5, -0.8].map(|x| {
        let want = (2.0 * PI).powi(3) * d2v(field(x));
        t_vac(1e-8, field(x)).map(|got| (format!("phi={x}"), (got - want).abs()))
    });
    checks.push(check("t-vac-static-limit", "absolute", 1e-10, curvature)?);

    let params = MatterParams::default();
    let contour = ContourSpec {
        nodes: if fast { 4000 } else { ContourSpec::default().nodes },
        ..ContourSpec::default()
    };
    let fermi_points: &[(f64, f64)] = if fast { &[(0.8, 1.0)] } else { &[(0.4, 0.01), (0.8, 1.0), (1.5, 2.5)] };
    let fermi = fermi_points
        .par_iter()
        .map(|&(k_f, p)| {
            let phi = field(phi_star_at_kf(k_f, &params, true)?.phi);
            let mu = k_f.hypot(phi.mass());
            let residue = t_plus(mu, p, phi, &spec)?;
            let direct = t_plus_contour(mu, p, phi, &contour)?;
            Ok((format!("mu={mu};p={p};phi={}", phi.get()), rel(direct, residue)))
        })
        .collect::<Vec<_>>();
    checks.push(check("t-plus-residue-vs-contour", "relative", 1e-5, fermi)?);

    let brute_spec = QuadratureSpec::new(1e-10, 1e-6, 2000)?;
    let vac_points = [(1.0, -0.2), (0.5, -0.4)];
    let brute: Vec<Result<(f64, f64, f64)>> = vac_points
        .par_iter()
        .map(|&(p, x)| Ok((p, x, brute_force_t_vac(p, field(x), &brute_spec)?)))
        .collect();
    let brute: Vec<(f64, f64, f64)> = brute.into_iter().collect::<Result<_>>()?;
    checks.push(check(
        "t-vac-bubble-vs-brute-force",
        "relative",
        1e-4,
        brute.iter().map(|&(p, x, b)| Ok((format!("p={p};phi={x}"), rel(t_vac_bubble(p, field(x))?, b)))),
    )?);
    let mut closed = check(
        "t-vac-closed-form-vs-brute-force",
        "relative",
        1e-2,
        brute.iter().map(|&(p, x, b)| Ok((format!("p={p};phi={x}"), rel(t_vac(p, field(x))?, b)))),
    )?;
    if closed.status == Status::Fail && !strict {
        closed.status = Status::KnownDiscrepancy;
    }
    checks.push(closed);

    let (l, eps, x) = (8.0, 0.5, 0.3);
    let lattice = LatticeConfig::sampled(128, l, eps, |_| x)?;
    let e = regularized_vacuum_energy_1d(&lattice)?.e_vac;
    let want = l * effective_potential_1d(field(x)) / eps;
    checks.push(check(
        "lattice-constant-field",
        "relative",
        1e-4,
        [Ok((format!("phi={x};n=128;eps={eps}"), rel(e, want)))],
    )?);

    let failures = checks.iter().filter(|c| c.status == Status::Fail).count();
    let known_discrepancies = checks.iter().filter(|c| c.status == Status::KnownDiscrepancy).count();
    Ok(Report {
        checks,
        failures,
        known_discrepancies,
    })
}
