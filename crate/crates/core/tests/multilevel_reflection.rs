//! The array seen through its collective modes: reflection of a single
//! excited level of width NΓ coupled to N−1 control-dressed lower levels.

use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use wqed_eit::array_model::{center_detunings, decompose, ArrayConfig};
use wqed_eit::open_system::{solve_drive, DriveConfig, SteadyStateMethod};
use wqed_eit::resonances::{analyze, ClassifyParams};
use wqed_eit::scattering::{closed_form, scatter, sweep};

/// `r = −i(NΓ/2) / (Δₖ + iNΓ/2 − Σ|gᵢ|²/(Δₖ − Δᵢ))`.
fn multilevel_r(cfg: &ArrayConfig, dk: f64) -> C64 {
    let dec = decompose(cfg).unwrap();
    let half = C64::new(0.0, dec.superradiant_decay / 2.0);
    let self_energy: f64 = dec
        .effective_detunings
        .iter()
        .zip(&dec.effective_couplings)
        .map(|(d, g)| g.norm_sqr() / (dk - d))
        .sum();
    -half / (dk + half - self_energy)
}

fn random_regular(rng: &mut impl Rng) -> ArrayConfig {
    let n = rng.random_range(2..=7usize);
    let mut dw: Vec<f64> = (0..n).map(|_| rng.random_range(-1.5..1.5)).collect();
    center_detunings(&mut dw);
    ArrayConfig::regular(dw, 1.0, rng.random_range(1..=2)).unwrap()
}

#[test]
fn scattering_agrees_with_multilevel_atom() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(5);
    for _ in 0..200 {
        let cfg = random_regular(&mut rng);
        let dk = rng.random_range(-3.0..3.0);
        let want = multilevel_r(&cfg, dk);
        let tm = scatter(&cfg, dk).unwrap();
        let cf = closed_form(&cfg, dk).unwrap();
        assert!((tm.r - want).norm() < 1e-9, "{:?} at {dk}", cfg.delta_omega());
        assert!((cf.r - want).norm() < 1e-9);
        assert!((cf.t - (1.0 + want)).norm() < 1e-9);
    }
}

#[test]
fn pole_expansion_agrees_with_multilevel_atom() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(9);
    for _ in 0..50 {
        let cfg = random_regular(&mut rng);
        let ps = analyze(&cfg, &ClassifyParams::default()).unwrap();
        assert_eq!(ps.window_centres.len(), cfg.n_atoms() - 1);
        for x in [-2.0, -0.3, 0.1, 1.7] {
            assert!((ps.reflection(x) - multilevel_r(&cfg, x)).norm() < 1e-8);
        }
        // The multilevel self-energy cancels the bright-state response at
        // each control detuning, so these are the transparency points.
        let dec = decompose(&cfg).unwrap();
        for (c, d) in ps.window_centres.iter().zip(&dec.effective_detunings) {
            assert!((c - d).abs() < 1e-8);
        }
    }
}

#[test]
fn weak_drive_reflectance_agrees_with_multilevel_atom() {
    let cfg = ArrayConfig::ladder(3, 0.5).unwrap();
    for dk in [-1.0, -0.4, 0.05, 0.6] {
        let dc = DriveConfig::from_intensity(cfg.clone(), dk, 1e-6, 0.0).unwrap();
        let res = solve_drive(&dc, SteadyStateMethod::Auto).unwrap();
        let r = multilevel_r(&cfg, dk);
        assert!((res.reflectance - r.norm_sqr()).abs() < 1e-4, "at {dk}");
    }
}

#[test]
fn degenerate_sweep_is_continuous_through_resonance() {
    let cfg = ArrayConfig::regular(vec![-0.5, -0.5, 0.5, 0.5], 1.0, 1).unwrap();
    let grid = [-0.5 - 1e-7, -0.5, -0.5 + 1e-7];
    let sw = sweep(&cfg, &grid).unwrap();
    let r: Vec<C64> = sw.results.iter().map(|x| x.r).collect();
    assert!((r[0] - r[1]).norm() < 1e-5 && (r[2] - r[1]).norm() < 1e-5);
}
