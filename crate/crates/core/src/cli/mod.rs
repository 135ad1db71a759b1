//! The `vacpol` command line: argument layering, dispatch and exit codes.
//!
//! Exit codes: 0 success, 1 numerical or verification failure, 2 invalid
//! usage or parameters.

pub mod output;
pub mod params;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;
use serde::Serialize;
use serde_json::json;

use crate::error::Error;
use crate::lattice::{semiclassical_check, ScanTemplate};
use crate::matter::{matter_curve, MatterParams};
use crate::nls::{limiting_field, normalized_ground_state, NlsParams, SolitonSpec};
use crate::potential::{counterterm_p, d2v, v, FieldValue};
use crate::quadrature::QuadratureSpec;
use crate::response::response_curve;
use output::{Artifact, Cell};
use params::{parse_grid, read_config, Cli, Command, Common, Format, Layer, Variant};

pub const THREADS_ENV: &str = "VACPOL_THREADS";

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Numerical(String),
    /// Rendered report already on stdout.
    Verification,
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Numerical(_) | Failure::Verification => 1,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidInput(_) | Error::FieldDomain(_) => Failure::Usage(e.to_string()),
            _ => Failure::Numerical(e.to_string()),
        }
    }
}

/// Parse, run and report. Returns the process exit code.
pub fn main_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    if let Err(msg) = configure_threads() {
        return report(Failure::Usage(msg));
    }
    match run(cli) {
        Ok(()) => 0,
        Err(f) => report(f),
    }
}

fn report(f: Failure) -> i32 {
    let (kind, message) = match &f {
        Failure::Usage(m) => ("usage", m.as_str()),
        Failure::Numerical(m) => ("numerical", m.as_str()),
        Failure::Verification => return f.exit_code(),
    };
    eprintln!("{}", json!({ "status": "error", "kind": kind, "message": message }));
    f.exit_code()
}

fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("{THREADS_ENV} must be a positive integer, got {raw:?}"))?;
    // A pool that already exists (repeated calls in one process) is kept.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

/// Flags over config file over nothing; defaults are applied per command.
fn layered<T>(flags: T, common: Common, cli_config: Option<&std::path::Path>) -> Result<(T, Common), Failure>
where
    T: Layer + Default + for<'de> serde::Deserialize<'de>,
{
    match cli_config {
        Some(path) => {
            let (file_common, file_own) = read_config::<T>(path).map_err(Failure::Usage)?;
            Ok((flags.layer(file_own), common.layer(file_common)))
        }
        None => Ok((flags, common)),
    }
}

fn grid(text: &str, key: &str) -> Result<Vec<f64>, Failure> {
    parse_grid(text).map_err(|e| Failure::Usage(format!("{key}: {e}")))
}

fn to_json<T: Serialize>(t: &T) -> serde_json::Value {
    serde_json::to_value(t).expect("params serialize")
}

fn collect<T>(rows: Vec<crate::Result<T>>) -> Result<Vec<T>, Failure> {
    rows.into_iter().collect::<crate::Result<Vec<T>>>().map_err(Failure::from)
}

pub fn run(cli: Cli) -> Result<(), Failure> {
    let common = Common {
        format: cli.format,
        output: cli.output.clone(),
    };
    let config = cli.config.as_deref();
    let (artifact, common, verdict) = match cli.command {
        Command::Potential(a) => {
            let (a, c) = layered(a, common, config)?;
            (potential(a)?, c, None)
        }
        Command::MatterCurve(a) => {
            let (a, c) = layered(a, common, config)?;
            (matter(a)?, c, None)
        }
        Command::ResponseCurve(a) => {
            let (a, c) = layered(a, common, config)?;
            (response(a)?, c, None)
        }
        Command::Nls(a) => {
            let (a, c) = layered(a, common, config)?;
            (nls(a)?, c, None)
        }
        Command::LatticeCheck(a) => {
            let (a, c) = layered(a, common, config)?;
            (lattice(a)?, c, None)
        }
        Command::Verify(a) => {
            let (a, c) = layered(a, common, config)?;
            let (artifact, passed) = verify_command(a)?;
            (artifact, c, Some(passed))
        }
    };
    let default_format = if artifact.command == "lattice-check" || artifact.command == "verify" {
        Format::Json
    } else {
        Format::Csv
    };
    let text = artifact.render(common.format.unwrap_or(default_format));
    match &common.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?,
        None => {
            let mut out = std::io::stdout().lock();
            match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
                // a closed reader (`| head`) is not an error of ours
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    return Err(Failure::Numerical(format!("cannot write output: {e}")));
                }
                _ => {}
            }
        }
    }
    match verdict {
        Some(false) => Err(Failure::Verification),
        _ => Ok(()),
    }
}

fn potential(a: params::PotentialArgs) -> Result<Artifact, Failure> {
    let a = params::PotentialArgs {
        phi_grid: a.phi_grid.or(Some("-0.9:0.01:0.9".into())),
    };
    let phis = grid(a.phi_grid.as_deref().unwrap(), "phi-grid")?;
    let mut art = Artifact::new("potential", to_json(&a), vec!["phi", "V", "P", "V2"]);
    for x in phis {
        let phi = FieldValue::new(x)?;
        art.push(vec![x.into(), v(phi).into(), counterterm_p(phi).into(), d2v(phi).into()]);
    }
    Ok(art)
}

fn matter(a: params::MatterArgs) -> Result<Artifact, Failure> {
    let a = params::MatterArgs {
        g: a.g.or(Some(10.0)),
        m_field: a.m_field.or(Some(0.5)),
        kf_grid: a.kf_grid.or(Some("0:0.02:2".into())),
    };
    let params = MatterParams::new(a.g.unwrap(), a.m_field.unwrap())?;
    let kfs = grid(a.kf_grid.as_deref().unwrap(), "kf-grid")?;
    let points = collect(matter_curve(&kfs, &params))?;
    let mut art = Artifact::new(
        "matter-curve",
        to_json(&a),
        vec!["k_F", "phi_vac", "phi_0", "mu_vac", "mu_0", "energy_vac", "energy_0", "collapse_vac", "collapse_0"],
    );
    for p in points {
        art.push(vec![
            p.k_f.into(),
            p.phi_vac.into(),
            p.phi_0.into(),
            p.mu_vac.into(),
            p.mu_0.into(),
            p.energy_vac.into(),
            p.energy_0.into(),
            p.collapse_vac.into(),
            p.collapse_0.into(),
        ]);
    }
    Ok(art)
}

fn response(a: params::ResponseArgs) -> Result<Artifact, Failure> {
    let default_spec = QuadratureSpec::default();
    let a = params::ResponseArgs {
        g: a.g.or(Some(10.0)),
        m_field: a.m_field.or(Some(0.5)),
        p: a.p.or(Some("0.01,1".into())),
        kf_grid: a.kf_grid.or(Some("0:0.02:2".into())),
        variant: a.variant.or(Some(Variant::Both)),
        abs_tol: a.abs_tol.or(Some(default_spec.abs_tol)),
        rel_tol: a.rel_tol.or(Some(default_spec.rel_tol)),
    };
    let params = MatterParams::new(a.g.unwrap(), a.m_field.unwrap())?;
    let spec = QuadratureSpec::new(a.abs_tol.unwrap(), a.rel_tol.unwrap(), default_spec.max_subdivisions)?;
    let momenta = grid(a.p.as_deref().unwrap(), "p")?;
    let kfs = grid(a.kf_grid.as_deref().unwrap(), "kf-grid")?;
    let variants: &[bool] = match a.variant.unwrap() {
        Variant::Both => &[true, false],
        Variant::Vacuum => &[true],
        Variant::NoVacuum => &[false],
    };
    let mut art = Artifact::new(
        "response-curve",
        to_json(&a),
        vec![
            "p", "vacuum", "k_F", "mu", "phi_background", "tree", "t_plus", "t_vac0", "t_sing", "t_reg", "total",
        ],
    );
    for &p in &momenta {
        for &vacuum in variants {
            let curve = collect(response_curve(&kfs, p, &params, vacuum, &spec))?;
            let first_negative = curve.iter().find(|r| r.value.total < 0.0).map(|r| r.k_f);
            let label = if vacuum { "vacuum" } else { "no_vacuum" };
            art.note(
                if vacuum { "first_negative_k_F_vacuum" } else { "first_negative_k_F_no_vacuum" },
                Cell::S(format!("p={p}:{}", first_negative.map_or("none".into(), output::float))),
            );
            for r in curve {
                let v = r.value;
                art.push(vec![
                    p.into(),
                    label.into(),
                    r.k_f.into(),
                    r.mu.into(),
                    r.phi_background.into(),
                    v.tree.into(),
                    v.t_plus.into(),
                    v.t_vac0.into(),
                    v.t_sing.into(),
                    v.t_reg.into(),
                    v.total.into(),
                ]);
            }
        }
    }
    Ok(art)
}

fn nls(a: params::NlsArgs) -> Result<Artifact, Failure> {
    let d = SolitonSpec::default();
    let a = params::NlsArgs {
        g0: a.g0.or(Some(10.0)),
        m_field: a.m_field.or(Some(0.5)),
        bracket_tol: a.bracket_tol.or(Some(d.bracket_tol)),
        ode_rel_tol: a.ode_rel_tol.or(Some(d.ode_rel_tol)),
        grid_step: a.grid_step.or(Some(d.grid_step)),
    };
    let params = NlsParams::new(a.g0.unwrap(), a.m_field.unwrap())?;
    let spec = SolitonSpec {
        bracket_tol: a.bracket_tol.unwrap(),
        ode_rel_tol: a.ode_rel_tol.unwrap(),
        grid_step: a.grid_step.unwrap(),
        ..d
    };
    spec.validate()?;
    let state = normalized_ground_state(&params, &spec)?;
    let phi = limiting_field(&state, &params);
    let mut art = Artifact::new("nls", to_json(&a), vec!["r", "psi", "phi_lim"]);
    art.note("lambda", state.lambda);
    art.note("mu", state.mu);
    art.note("u0", state.u0);
    art.note("norm_squared", state.norm_squared());
    art.note("residual", state.residual());
    art.note("max_abs_phi_lim", phi.iter().fold(0.0f64, |m, x| m.max(x.abs())));
    for ((r, psi), f) in state.r_grid.iter().zip(&state.psi).zip(&phi) {
        art.push(vec![(*r).into(), (*psi).into(), (*f).into()]);
    }
    Ok(art)
}

fn lattice(a: params::LatticeArgs) -> Result<Artifact, Failure> {
    let t = ScanTemplate::default();
    let a = params::LatticeArgs {
        amplitude: a.amplitude.or(Some(0.4)),
        width: a.width.or(Some(1.0)),
        epsilons: a.epsilons.or(Some("0.2,0.1,0.05".into())),
        box_length: a.box_length.or(Some(t.box_length)),
        cutoff: a.cutoff.or(Some(t.cutoff)),
        max_sites: a.max_sites.or(Some(t.max_sites)),
        fd_step: a.fd_step.or(Some(t.fd_step)),
        counterterms: a.counterterms.or(Some(params::CountertermArg::Exact)),
        uv_tail: a.uv_tail.or(Some(t.uv_tail)),
    };
    let (amp, width) = (a.amplitude.unwrap(), a.width.unwrap());
    if !(width > 0.0 && width.is_finite()) {
        return Err(Failure::Usage(format!("width must be positive, got {width}")));
    }
    let epsilons = grid(a.epsilons.as_deref().unwrap(), "epsilons")?;
    let template = ScanTemplate {
        box_length: a.box_length.unwrap(),
        cutoff: a.cutoff.unwrap(),
        max_sites: a.max_sites.unwrap(),
        fd_step: a.fd_step.unwrap(),
        counterterms: a.counterterms.unwrap().into(),
        uv_tail: a.uv_tail.unwrap(),
    };
    let report = semiclassical_check(|x| amp * (-0.5 * (x / width).powi(2)).exp(), &epsilons, &template)?;
    let mut art = Artifact::new("lattice-check", to_json(&a), vec!["epsilon", "n_sites", "e_vac", "scaled", "error"]);
    art.note("reference", report.reference);
    art.note("exponent", report.exponent);
    art.note("strictly_decreasing", report.strictly_decreasing);
    for p in report.points {
        art.push(vec![p.epsilon.into(), p.n_sites.into(), p.e_vac.into(), p.scaled.into(), p.error.into()]);
    }
    Ok(art)
}

fn verify_command(a: params::VerifyArgs) -> Result<(Artifact, bool), Failure> {
    let a = params::VerifyArgs {
        fast: a.fast.or(Some(false)),
        strict: a.strict.or(Some(false)),
    };
    let report = verify::run_suite(a.fast.unwrap(), a.strict.unwrap())?;
    let mut art = Artifact::new(
        "verify",
        to_json(&a),
        vec!["check", "status", "error", "tolerance", "measure", "worst_at"],
    );
    art.note("passed", report.passed());
    art.note("failures", report.failures);
    art.note("known_discrepancies", report.known_discrepancies);
    for c in &report.checks {
        let status = serde_json::to_value(c.status).expect("status serializes");
        art.push(vec![
            c.name.into(),
            Cell::S(status.as_str().unwrap_or_default().to_owned()),
            c.error.into(),
            c.tolerance.into(),
            c.measure.into(),
            c.worst_at.clone().into(),
        ]);
    }
    Ok((art, report.passed()))
}
