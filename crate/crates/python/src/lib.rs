//! Python bindings: `import vacpol`.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use vacpol_core::lattice::{self, LatticeConfig, ScanTemplate};
use vacpol_core::matter::{self, MatterParams};
use vacpol_core::nls::{self, NlsParams, SolitonSpec};
use vacpol_core::oracle::{self, Dim};
use vacpol_core::potential;
use vacpol_core::quadrature::QuadratureSpec;
use vacpol_core::response::{self, ContourSpec};
use vacpol_core::{Error, FieldValue};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::InvalidInput(_) | Error::FieldDomain(_) => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn field(phi: f64) -> PyResult<FieldValue> {
    FieldValue::new(phi).map_err(py_err)
}

/// Effective potential `V(φ)`.
#[pyfunction]
fn v(phi: f64) -> PyResult<f64> {
    Ok(potential::v(field(phi)?))
}

/// Counterterm polynomial `P(φ)`.
#[pyfunction]
fn counterterm_p(phi: f64) -> PyResult<f64> {
    Ok(potential::counterterm_p(field(phi)?))
}

/// `V″(φ)`.
#[pyfunction]
fn d2v(phi: f64) -> PyResult<f64> {
    Ok(potential::d2v(field(phi)?))
}

#[pyfunction]
fn effective_potential_1d(phi: f64) -> PyResult<f64> {
    Ok(potential::effective_potential_1d(field(phi)?))
}

/// Constant-field vacuum density summed over momenta, `dim` 1 or 3.
#[pyfunction]
#[pyo3(signature = (phi, dim = 3))]
fn vacuum_density_momentum(phi: f64, dim: u32) -> PyResult<f64> {
    let dim = Dim::try_from(dim).map_err(py_err)?;
    oracle::vacuum_density_momentum(field(phi)?, dim, &QuadratureSpec::default()).map_err(py_err)
}

#[pyclass(get_all, frozen)]
struct MatterPoint {
    k_f: f64,
    phi_vac: f64,
    phi_0: f64,
    mu_vac: f64,
    mu_0: f64,
    energy_vac: f64,
    energy_0: f64,
}

/// Self-consistent fields with and without the vacuum term.
#[pyfunction]
#[pyo3(signature = (k_f, g = 10.0, m_field = 0.5))]
fn matter_point(k_f: f64, g: f64, m_field: f64) -> PyResult<MatterPoint> {
    let params = MatterParams::new(g, m_field).map_err(py_err)?;
    let p = matter::matter_point(k_f, &params).map_err(py_err)?;
    Ok(MatterPoint {
        k_f: p.k_f,
        phi_vac: p.phi_vac,
        phi_0: p.phi_0,
        mu_vac: p.mu_vac,
        mu_0: p.mu_0,
        energy_vac: p.energy_vac,
        energy_0: p.energy_0,
    })
}

/// Fermi-sea response by residues.
#[pyfunction]
fn t_plus(mu: f64, p: f64, phi: f64) -> PyResult<f64> {
    response::t_plus(mu, p, field(phi)?, &QuadratureSpec::default()).map_err(py_err)
}

/// Fermi-sea response from the contour integral itself.
#[pyfunction]
#[pyo3(signature = (mu, p, phi, nodes = 10_000))]
fn t_plus_contour(mu: f64, p: f64, phi: f64, nodes: usize) -> PyResult<f64> {
    let contour = ContourSpec { nodes, ..ContourSpec::default() };
    response::t_plus_contour(mu, p, field(phi)?, &contour).map_err(py_err)
}

/// Vacuum response from the closed forms.
#[pyfunction]
fn t_vac(p: f64, phi: f64) -> PyResult<f64> {
    response::t_vac(p, field(phi)?).map_err(py_err)
}

/// Vacuum response from the Feynman-parameter form of the trace integral.
#[pyfunction]
fn t_vac_bubble(p: f64, phi: f64) -> PyResult<f64> {
    response::t_vac_bubble(p, field(phi)?).map_err(py_err)
}

/// Vacuum response by direct four-dimensional quadrature.
#[pyfunction]
#[pyo3(signature = (p, phi, rel_tol = 1e-6))]
fn brute_force_t_vac(p: f64, phi: f64, rel_tol: f64) -> PyResult<f64> {
    let spec = QuadratureSpec::new(1e-10, rel_tol, 2000).map_err(py_err)?;
    response::brute_force_t_vac(p, field(phi)?, &spec).map_err(py_err)
}

#[pyclass(get_all, frozen)]
struct GroundState {
    lambda_: f64,
    mu: f64,
    u0: f64,
    norm_squared: f64,
    residual: f64,
    r: Vec<f64>,
    psi: Vec<f64>,
}

/// Unit-norm ground state of the non-relativistic limit.
#[pyfunction]
#[pyo3(signature = (g0 = 10.0, m_field = 0.5, ode_rel_tol = 1e-11))]
fn ground_state(g0: f64, m_field: f64, ode_rel_tol: f64) -> PyResult<GroundState> {
    let params = NlsParams::new(g0, m_field).map_err(py_err)?;
    let spec = SolitonSpec { ode_rel_tol, ..SolitonSpec::default() };
    spec.validate().map_err(py_err)?;
    let s = nls::normalized_ground_state(&params, &spec).map_err(py_err)?;
    Ok(GroundState {
        lambda_: s.lambda,
        mu: s.mu,
        u0: s.u0,
        norm_squared: s.norm_squared(),
        residual: s.residual(),
        r: s.r_grid,
        psi: s.psi,
    })
}

/// Counterterm-subtracted vacuum energy of sampled `field` on a periodic box.
#[pyfunction]
fn lattice_energy(field: Vec<f64>, box_length: f64, epsilon: f64) -> PyResult<f64> {
    let n_sites = field.len();
    let mut config = LatticeConfig::sampled(n_sites, box_length, epsilon, |_| 0.0).map_err(py_err)?;
    config.field = field;
    config.validate().map_err(py_err)?;
    lattice::regularized_vacuum_energy_1d(&config).map(|r| r.e_vac).map_err(py_err)
}

/// `(reference, errors, exponent)` for a Gaussian bump.
#[pyfunction]
#[pyo3(signature = (amplitude, epsilons, box_length = 16.0))]
fn semiclassical_check(amplitude: f64, epsilons: Vec<f64>, box_length: f64) -> PyResult<(f64, Vec<f64>, Option<f64>)> {
    let template = ScanTemplate { box_length, ..ScanTemplate::default() };
    let r = lattice::semiclassical_check(|x| amplitude * (-0.5 * x * x).exp(), &epsilons, &template).map_err(py_err)?;
    Ok((r.reference, r.points.iter().map(|p| p.error).collect(), r.exponent))
}

#[pymodule]
fn vacpol(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<MatterPoint>()?;
    m.add_class::<GroundState>()?;
    m.add_function(wrap_pyfunction!(v, m)?)?;
    m.add_function(wrap_pyfunction!(counterterm_p, m)?)?;
    m.add_function(wrap_pyfunction!(d2v, m)?)?;
    m.add_function(wrap_pyfunction!(effective_potential_1d, m)?)?;
    m.add_function(wrap_pyfunction!(vacuum_density_momentum, m)?)?;
    m.add_function(wrap_pyfunction!(matter_point, m)?)?;
    m.add_function(wrap_pyfunction!(t_plus, m)?)?;
    m.add_function(wrap_pyfunction!(t_plus_contour, m)?)?;
    m.add_function(wrap_pyfunction!(t_vac, m)?)?;
    m.add_function(wrap_pyfunction!(t_vac_bubble, m)?)?;
    m.add_function(wrap_pyfunction!(brute_force_t_vac, m)?)?;
    m.add_function(wrap_pyfunction!(ground_state, m)?)?;
    m.add_function(wrap_pyfunction!(lattice_energy, m)?)?;
    m.add_function(wrap_pyfunction!(semiclassical_check, m)?)?;
    Ok(())
}
