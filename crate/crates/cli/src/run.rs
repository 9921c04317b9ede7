//! One driver per mode. Every frequency going out is in the user's frame.

use serde_json::{json, Value};
use wqed_eit::array_model::{decompose, reduce_degenerate, ArrayConfig, DEGENERACY_TOL};
use wqed_eit::open_system::{
    basis_label, dark_state, drive_sweep, solve_drive, DriveConfig, SteadyStateMethod,
};
use wqed_eit::resonances::{analyze, ClassifyParams};
use wqed_eit::scattering::sweep;

use crate::config::{Mode, RunConfig};
use crate::report::{num, Cell, Report};
use crate::CliError;

/// Ladder spacing must be uniform to this tolerance for `darkstate`.
const LADDER_TOL: f64 = 1e-9;

pub fn run(rc: &RunConfig) -> Result<Report, CliError> {
    let (cfg, shift) = rc.array_config()?;
    match rc.mode {
        Mode::Spectrum => spectrum(rc, &cfg, shift),
        Mode::Modes => modes(rc, &cfg, shift),
        Mode::Poles => poles(rc, &cfg, shift),
        Mode::Lindblad => lindblad(rc, &cfg, shift),
        Mode::Darkstate => darkstate(rc, &cfg),
    }
}

fn library_grid(rc: &RunConfig, shift: f64) -> Vec<f64> {
    rc.grid.values().into_iter().map(|x| x - shift).collect()
}

fn spectrum(rc: &RunConfig, cfg: &ArrayConfig, shift: f64) -> Result<Report, CliError> {
    let sw = sweep(cfg, &library_grid(rc, shift))?;
    let mut rep = Report::new(rc, vec!["delta_k", "t_re", "t_im", "r_re", "r_im", "T", "R"]);
    for (user_dk, res) in rc.grid.values().into_iter().zip(&sw.results) {
        rep.rows.push(vec![
            user_dk.into(),
            res.t.re.into(),
            res.t.im.into(),
            res.r.re.into(),
            res.r.im.into(),
            res.transmittance.into(),
            res.reflectance.into(),
        ]);
    }
    Ok(rep)
}

fn modes(rc: &RunConfig, cfg: &ArrayConfig, shift: f64) -> Result<Report, CliError> {
    let red = reduce_degenerate(cfg, DEGENERACY_TOL)?;
    let total_decay: f64 = cfg.gamma().iter().sum();
    if red.groups.len() == cfg.n_atoms() {
        let dec = decompose(cfg)?;
        let mut rep = Report::new(rc, vec!["i", "Delta", "abs_g", "arg_g"]);
        rep.push_summary("superradiant_decay", num(dec.superradiant_decay));
        rep.push_summary("window_count", json!(red.window_count));
        for (i, (d, g)) in dec
            .effective_detunings
            .iter()
            .zip(&dec.effective_couplings)
            .enumerate()
        {
            rep.rows.push(vec![
                ((i + 1) as f64).into(),
                (d + shift).into(),
                g.norm().into(),
                g.arg().into(),
            ]);
        }
        return Ok(rep);
    }
    // Repeated frequencies: report the reduced array of distinct emitters.
    let mut rep = Report::new(rc, vec!["emitter", "detuning", "decay", "multiplicity"]);
    rep.push_summary("superradiant_decay", num(total_decay));
    rep.push_summary("window_count", json!(red.window_count));
    rep.push_summary("distinct_atoms", json!(red.distinct_count()));
    rep.push_summary("clusters", json!(red.cluster_count()));
    for (i, (e, g)) in red.effective_emitters.iter().zip(&red.groups).enumerate() {
        rep.rows.push(vec![
            ((i + 1) as f64).into(),
            (e.detuning + shift).into(),
            e.decay.into(),
            (g.multiplicity() as f64).into(),
        ]);
    }
    Ok(rep)
}

fn poles(rc: &RunConfig, cfg: &ArrayConfig, shift: f64) -> Result<Report, CliError> {
    let ps = analyze(cfg, &ClassifyParams::default())?;
    let mut rep = Report::new(rc, vec!["re_z", "im_z", "re_a", "im_a"]);
    let windows: Vec<Value> = ps
        .window_labels
        .iter()
        .map(|(c, label)| json!({ "centre": num(c + shift), "label": label.as_str() }))
        .collect();
    rep.push_summary("pole_count", json!(ps.poles.len()));
    rep.push_summary("windows", Value::Array(windows));
    for (z, a) in ps.poles.iter().zip(&ps.residues) {
        rep.rows.push(vec![
            (z.re + shift).into(),
            z.im.into(),
            a.re.into(),
            a.im.into(),
        ]);
    }
    Ok(rep)
}

fn drive_config(rc: &RunConfig, cfg: &ArrayConfig, delta_k: f64) -> Result<DriveConfig, CliError> {
    if rc.drive.alpha2 == 0.0 {
        return Err(CliError::Config(format!(
            "drive.alpha2: {} mode needs a nonzero drive",
            rc.mode.as_str()
        )));
    }
    Ok(DriveConfig::from_intensity(
        cfg.clone(),
        delta_k,
        rc.drive.alpha2,
        rc.drive.phase,
    )?)
}

fn lindblad(rc: &RunConfig, cfg: &ArrayConfig, shift: f64) -> Result<Report, CliError> {
    let alpha = drive_config(rc, cfg, 0.0)?.alpha;
    let results = drive_sweep(cfg, &library_grid(rc, shift), alpha, SteadyStateMethod::Auto)?;
    let mut rep = Report::new(rc, vec!["delta_k", "T", "R", "F_over_alpha2"]);
    rep.push_summary("alpha2", num(rc.drive.alpha2));
    for (user_dk, res) in rc.grid.values().into_iter().zip(&results) {
        rep.rows.push(vec![
            user_dk.into(),
            res.transmittance.into(),
            res.reflectance.into(),
            (res.inelastic_flux / rc.drive.alpha2).into(),
        ]);
    }
    Ok(rep)
}

/// Uniform spacing of a ladder with unit decay and π steps.
fn ladder_spacing(cfg: &ArrayConfig) -> Result<f64, CliError> {
    let dw = cfg.delta_omega();
    let bad = |why: &str| CliError::Config(format!("darkstate: {why}"));
    if !cfg.gamma().iter().all(|&g| (g - 1.0).abs() <= 1e-12) || cfg.spacing_multiple() != Some(1)
    {
        return Err(bad("needs unit decay rates and spacing_multiple = 1"));
    }
    if dw.len() < 2 {
        return Err(bad("needs at least two atoms"));
    }
    let step = dw[1] - dw[0];
    if dw.windows(2).any(|w| (w[1] - w[0] - step).abs() > LADDER_TOL) || !(step > 0.0) {
        return Err(bad("delta_omega must be an ascending, equally spaced ladder"));
    }
    Ok(step)
}

fn darkstate(rc: &RunConfig, cfg: &ArrayConfig) -> Result<Report, CliError> {
    let spacing = ladder_spacing(cfg)?;
    let n = cfg.n_atoms();
    // Δₖ = 0 in the ladder's own (centred) frame.
    let dc = drive_config(rc, cfg, 0.0)?;
    let omega = (0.5 * rc.drive.alpha2).sqrt();
    let ds = dark_state(n, spacing, omega)?;
    let res = solve_drive(&dc, SteadyStateMethod::Auto)?;
    let fidelity = res.rho.fidelity(&ds.amplitudes);

    let mut rep = Report::new(rc, vec!["basis", "amp_re", "amp_im"]);
    rep.push_summary("n_atoms", json!(n));
    rep.push_summary("spacing", num(spacing));
    rep.push_summary("rabi_frequency", num(omega));
    rep.push_summary("normalization", num(ds.normalization));
    rep.push_summary("hamiltonian_residual", num(ds.hamiltonian_residual));
    rep.push_summary("liouvillian_residual", num(ds.liouvillian_residual));
    rep.push_summary("fidelity", num(fidelity));
    rep.push_summary("transmittance", num(res.transmittance));
    rep.push_summary("inelastic_flux", num(res.inelastic_flux));
    for (i, a) in ds.amplitudes.iter().enumerate() {
        if a.norm() > 0.0 {
            rep.rows.push(vec![
                Cell::Text(basis_label(n, i)),
                a.re.into(),
                a.im.into(),
            ]);
        }
    }
    Ok(rep)
}
