//! Flag sets of each subcommand. Every field is optional so that a
//! config file and the command line can be layered before defaults apply.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::lattice::CountertermMethod;

#[derive(Debug, Parser)]
#[command(name = "vacpol", version, about = "Regularised Dirac vacuum energy: curves, oracles and checks")]
pub struct Cli {
    /// TOML file with the same keys as the flags; flags win.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the artifact here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// V, P and V'' on a field grid.
    Potential(PotentialArgs),
    /// Self-consistent field with and without the vacuum term against k_F.
    MatterCurve(MatterArgs),
    /// Stability response against k_F at fixed perturbation momenta.
    ResponseCurve(ResponseArgs),
    /// Normalized ground state of the non-relativistic limit.
    Nls(NlsArgs),
    /// Semiclassical limit of the 1D lattice vacuum energy.
    LatticeCheck(LatticeArgs),
    /// Run the oracle suite; exit 1 on any failure.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Keys shared by every subcommand.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct Common {
    pub format: Option<Format>,
    pub output: Option<PathBuf>,
}

/// Fill unset fields of `self` from `under`.
pub trait Layer: Sized {
    fn layer(self, under: Self) -> Self;
}

macro_rules! layered {
    ($ty:ty { $($field:ident),* $(,)? }) => {
        impl Layer for $ty {
            fn layer(self, under: Self) -> Self {
                Self { $($field: self.$field.or(under.$field)),* }
            }
        }
    };
}

layered!(Common { format, output });

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct PotentialArgs {
    /// `start:step:stop` or a comma list.
    #[arg(long, allow_hyphen_values = true)]
    pub phi_grid: Option<String>,
}
layered!(PotentialArgs { phi_grid });

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct MatterArgs {
    #[arg(long)]
    pub g: Option<f64>,
    #[arg(long = "M")]
    #[serde(rename = "M")]
    pub m_field: Option<f64>,
    #[arg(long)]
    pub kf_grid: Option<String>,
}
layered!(MatterArgs { g, m_field, kf_grid });

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    Both,
    Vacuum,
    NoVacuum,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct ResponseArgs {
    #[arg(long)]
    pub g: Option<f64>,
    #[arg(long = "M")]
    #[serde(rename = "M")]
    pub m_field: Option<f64>,
    /// Perturbation momenta, comma list or grid.
    #[arg(long)]
    pub p: Option<String>,
    #[arg(long)]
    pub kf_grid: Option<String>,
    #[arg(long, value_enum)]
    pub variant: Option<Variant>,
    #[arg(long)]
    pub abs_tol: Option<f64>,
    #[arg(long)]
    pub rel_tol: Option<f64>,
}
layered!(ResponseArgs { g, m_field, p, kf_grid, variant, abs_tol, rel_tol });

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct NlsArgs {
    #[arg(long)]
    pub g0: Option<f64>,
    #[arg(long = "M")]
    #[serde(rename = "M")]
    pub m_field: Option<f64>,
    #[arg(long)]
    pub bracket_tol: Option<f64>,
    #[arg(long)]
    pub ode_rel_tol: Option<f64>,
    #[arg(long)]
    pub grid_step: Option<f64>,
}
layered!(NlsArgs { g0, m_field, bracket_tol, ode_rel_tol, grid_step });

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct LatticeArgs {
    /// Peak of the Gaussian bump `a·exp(−x²/2w²)`.
    #[arg(long)]
    pub amplitude: Option<f64>,
    #[arg(long)]
    pub width: Option<f64>,
    #[arg(long)]
    pub epsilons: Option<String>,
    #[arg(long)]
    pub box_length: Option<f64>,
    /// Minimal momentum cutoff `επN/L`.
    #[arg(long)]
    pub cutoff: Option<f64>,
    #[arg(long)]
    pub max_sites: Option<usize>,
    #[arg(long)]
    pub fd_step: Option<f64>,
    #[arg(long, value_enum)]
    pub counterterms: Option<CountertermArg>,
    #[arg(long)]
    pub uv_tail: Option<bool>,
}
layered!(LatticeArgs { amplitude, width, epsilons, box_length, cutoff, max_sites, fd_step, counterterms, uv_tail });

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum CountertermArg {
    Exact,
    FiniteDifference,
}

impl From<CountertermArg> for CountertermMethod {
    fn from(c: CountertermArg) -> Self {
        match c {
            CountertermArg::Exact => CountertermMethod::Exact,
            CountertermArg::FiniteDifference => CountertermMethod::FiniteDifference,
        }
    }
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct VerifyArgs {
    /// Smaller grids and looser contour resolution.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub fast: Option<bool>,
    /// Count known discrepancies as failures.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub strict: Option<bool>,
}
layered!(VerifyArgs { fast, strict });

/// Read a config file and split it into the shared keys and the
/// command's own table.
pub fn read_config<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<(Common, T), String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let mut table: toml::Table = text.parse().map_err(|e| format!("{}: {e}", path.display()))?;
    let mut common = toml::Table::new();
    for key in ["format", "output"] {
        if let Some(v) = table.remove(key) {
            common.insert(key.into(), v);
        }
    }
    let common = Common::deserialize(common).map_err(|e| format!("{}: {e}", path.display()))?;
    let own = T::deserialize(table).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok((common, own))
}

/// `start:step:stop` (inclusive, step may be negative) or `a,b,c`.
pub fn parse_grid(text: &str) -> Result<Vec<f64>, String> {
    let num = |s: &str| -> Result<f64, String> {
        let x: f64 = s.trim().parse().map_err(|_| format!("not a number: {s:?}"))?;
        if x.is_finite() {
            Ok(x)
        } else {
            Err(format!("not finite: {s:?}"))
        }
    };
    let parts: Vec<&str> = text.split(':').collect();
    match parts.as_slice() {
        [start, step, stop] => {
            let (a, h, b) = (num(start)?, num(step)?, num(stop)?);
            if h == 0.0 || (b - a) * h < 0.0 {
                return Err(format!("step {h} does not lead from {a} to {b}"));
            }
            let span = (b - a) / h;
            let n = span.round();
            if (span - n).abs() > 1e-9 * n.max(1.0) {
                return Err(format!("{a}:{h}:{b} does not land on the end point"));
            }
            if n > 1e6 {
                return Err(format!("grid {text} has more than 1e6 points"));
            }
            let n = n as usize;
            // snap to the decimal resolution the grid was written in
            let snap = decimals(&parts).map_or(1.0, |d| 10f64.powi(d as i32));
            Ok((0..=n)
                .map(|i| match i {
                    0 => a,
                    _ if i == n => b,
                    _ => ((a + i as f64 * h) * snap).round() / snap,
                })
                .collect())
        }
        [_] => text.split(',').map(num).collect(),
        _ => Err(format!("cannot parse grid {text:?}")),
    }
}

/// Largest count of digits after the decimal point, if every part is a
/// plain decimal with at most 12 of them.
fn decimals(parts: &[&str]) -> Option<usize> {
    let mut most = 0;
    for p in parts {
        let p = p.trim();
        if p.contains(['e', 'E']) {
            return None;
        }
        let d = p.split_once('.').map_or(0, |(_, frac)| frac.len());
        if d > 12 {
            return None;
        }
        most = most.max(d);
    }
    Some(most)
}
