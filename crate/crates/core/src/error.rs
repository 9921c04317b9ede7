use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid array configuration: {0}")]
    InvalidConfig(String),

    #[error("operation requires {0}")]
    RequiresRegularArray(&'static str),

    #[error("atoms {first} and {second} have frequencies {gap:e} apart; cluster them with reduce_degenerate")]
    NearDegenerate {
        first: usize,
        second: usize,
        gap: f64,
    },

    #[error("probe detuning is on resonance with atom {site}")]
    OnAtomResonance { site: usize },

    #[error("grid must be strictly increasing (index {index})")]
    InvalidGrid { index: usize },

    #[error("poles {first} and {second} are closer than {tol:e}")]
    IllConditioned {
        first: num_complex::Complex64,
        second: num_complex::Complex64,
        tol: f64,
    },

    #[error("{n_atoms} atoms exceed the supported maximum of {max} for {what}")]
    DimensionTooLarge {
        n_atoms: usize,
        max: usize,
        what: &'static str,
    },

    #[error("steady state is not unique: Liouvillian null space has dimension {nullity}")]
    NonUniqueSteadyState { nullity: usize },

    #[error("steady-state residual {residual:e} exceeds tolerance {tol:e}")]
    SteadyStateResidual { residual: f64, tol: f64 },

    #[error("iterative solver did not converge after {iterations} iterations (residual {residual:e})")]
    NotConverged { iterations: usize, residual: f64 },

    #[error("drive amplitude is zero; input-output amplitudes are undefined")]
    ZeroDrive,

    #[error("slowest Liouvillian decay rate {slowest_rate:e} is below 1/tau_max = {inv_tau_max:e}")]
    SlowConvergence {
        slowest_rate: f64,
        inv_tau_max: f64,
    },

    #[error("density matrix is unphysical: {what} = {value:e}")]
    NotPhysical { what: &'static str, value: f64 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("linear algebra failure: {0}")]
    Linalg(#[from] ndarray_linalg::error::LinalgError),
}
