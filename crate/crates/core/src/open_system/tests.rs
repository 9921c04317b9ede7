use std::f64::consts::PI;

use ndarray::{linalg::kron, Array1, Array2};
use num_complex::Complex64 as C64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};

use super::*;
use crate::array_model::{center_detunings, ArrayConfig};
use crate::error::Error;
use crate::linalg::{dagger, max_abs_diff};
use crate::scattering::closed_form;

fn cz(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// `σᵢ⁻` as `I ⊗ … ⊗ |g⟩⟨e| ⊗ … ⊗ I`, atom 1 leftmost.
fn kron_lowering(n: usize, site: usize) -> Array2<C64> {
    let id = Array2::<C64>::eye(2);
    let mut s = Array2::<C64>::zeros((2, 2));
    s[[0, 1]] = cz(1.0);
    let mut out = Array2::<C64>::eye(1);
    for k in 0..n {
        out = kron(&out, if k == site { &s } else { &id });
    }
    out
}

/// Drive Hamiltonian and effective Hamiltonian assembled from dense
/// operators and the textbook coupling formulas.
fn oracle_hamiltonians(dc: &DriveConfig) -> (Array2<C64>, Array2<C64>, Array2<f64>) {
    let cfg = &dc.base;
    let n = cfg.n_atoms();
    let d = 1 << n;
    let (g, p, dw) = (cfg.gamma(), cfg.phase(), cfg.delta_omega());
    let sig: Vec<_> = (0..n).map(|i| kron_lowering(n, i)).collect();
    let sp: Vec<_> = sig.iter().map(dagger).collect();
    let mut h = Array2::<C64>::zeros((d, d));
    let mut rates = Array2::<f64>::zeros((n, n));
    for i in 0..n {
        h = h + sp[i].dot(&sig[i]) * cz(-(dc.delta_k - dw[i]));
        let om = (g[i] / 2.0).sqrt() * dc.alpha * C64::from_polar(1.0, p[i] - p[0]);
        h = h + &sp[i] * om + &sig[i] * om.conj();
        for j in 0..n {
            let dp = (p[i] - p[j]).abs();
            rates[[i, j]] = (g[i] * g[j]).sqrt() * dp.cos();
            if i != j {
                h = h + sp[i].dot(&sig[j]) * cz(0.5 * (g[i] * g[j]).sqrt() * dp.sin());
            }
        }
    }
    let mut heff = h.clone();
    for i in 0..n {
        for j in 0..n {
            heff = heff - sp[i].dot(&sig[j]) * C64::new(0.0, 0.5 * rates[[i, j]]);
        }
    }
    (h, heff, rates)
}

/// Master-equation right-hand side written term by term.
fn oracle_lindblad(dc: &DriveConfig, rho: &Array2<C64>) -> Array2<C64> {
    let n = dc.base.n_atoms();
    let (h, _, rates) = oracle_hamiltonians(dc);
    let sig: Vec<_> = (0..n).map(|i| kron_lowering(n, i)).collect();
    let sp: Vec<_> = sig.iter().map(dagger).collect();
    let mi = C64::new(0.0, -1.0);
    let mut out = (h.dot(rho) - rho.dot(&h)) * mi;
    for i in 0..n {
        for j in 0..n {
            let a = sp[i].dot(&sig[j]);
            let term = sig[i].dot(rho).dot(&sp[j]) - (a.dot(rho) + rho.dot(&a)) * cz(0.5);
            out = out + term * cz(rates[[i, j]]);
        }
    }
    out
}

fn general_drive(seed: u64, n: usize) -> DriveConfig {
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    let mut dw: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
    center_detunings(&mut dw);
    let gamma = (0..n).map(|_| rng.random_range(0.3..1.5)).collect();
    let mut acc = 0.0;
    let phase = (0..n)
        .map(|_| {
            let p = acc;
            acc += rng.random_range(0.1..3.0);
            p
        })
        .collect();
    let base = ArrayConfig::new(dw, gamma, phase, None).unwrap();
    let alpha = C64::from_polar(rng.random_range(0.05..0.5), rng.random_range(0.0..6.0));
    DriveConfig::new(base, rng.random_range(-1.0..1.0), alpha)
}

fn ladder_drive(dw: &[f64], delta_k: f64, alpha2: f64) -> DriveConfig {
    let base = ArrayConfig::regular(dw.to_vec(), 1.0, 1).unwrap();
    DriveConfig::from_intensity(base, delta_k, alpha2, 0.0).unwrap()
}

fn random_density(d: usize, rng: &mut impl Rng) -> Array2<C64> {
    let a = Array2::from_shape_fn((d, d), |_| {
        C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    });
    let mut rho = a.dot(&dagger(&a));
    let tr: C64 = rho.diag().sum();
    rho.mapv_inplace(|z| z / tr);
    rho
}

#[test]
fn basis_labels_round_trip() {
    assert_eq!(basis_label(2, 2), "eg");
    assert_eq!(basis_index("ge"), Some(1));
    for x in 0..16 {
        assert_eq!(basis_index(&basis_label(4, x)), Some(x));
    }
    assert_eq!(basis_index("gx"), None);
    for i in 0..3 {
        assert_eq!(lowering_operator(3, i), kron_lowering(3, i));
    }
}

#[test]
fn hamiltonian_matches_oracle() {
    for seed in 0..4 {
        let dc = general_drive(seed, 3);
        let h = build_drive_hamiltonian(&dc).unwrap();
        let (want, heff, _) = oracle_hamiltonians(&dc);
        assert!(max_abs_diff(&h, &want) < 1e-14);
        assert!(max_abs_diff(&h, &dagger(&h)) < 1e-15);
        let l = build_liouvillian(&dc).unwrap();
        assert!(max_abs_diff(&l.effective_hamiltonian(), &heff) < 1e-14);
    }
}

#[test]
fn single_undriven_atom() {
    let base = ArrayConfig::regular(vec![0.0], 1.0, 1).unwrap();
    let h = build_drive_hamiltonian(&DriveConfig::new(base, 0.7, cz(0.0))).unwrap();
    assert_eq!(h[[0, 0]], cz(0.0));
    assert_eq!(h[[1, 1]], cz(-0.7));
    assert_eq!(h[[0, 1]], cz(0.0));
}

#[test]
fn regular_spacing_has_no_exchange() {
    let dc = ladder_drive(&[-0.5, 0.0, 0.5], 0.0, 0.01);
    let (exchange, rates) = waveguide_couplings(&dc);
    assert!(exchange.iter().all(|&g| g == 0.0));
    let dc2 = ladder_drive(&[-0.25, 0.25], 0.0, 0.01);
    let (_, r2) = waveguide_couplings(&dc2);
    assert_eq!(r2[[0, 1]], -1.0);
    assert_eq!(rates[[0, 2]], 1.0);
}

#[test]
fn liouvillian_matches_oracle() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    for seed in 0..3 {
        let dc = general_drive(seed, 3);
        let l = build_liouvillian(&dc).unwrap();
        let dense = l.to_dense().unwrap();
        for _ in 0..3 {
            let rho = random_density(8, &mut rng);
            let got = l.apply(&rho);
            let want = oracle_lindblad(&dc, &rho);
            assert!(max_abs_diff(&got, &want) < 1e-13);
            let v = Array1::from_iter(rho.iter().copied());
            let lv = dense.dot(&v).into_shape_with_order((8, 8)).unwrap();
            assert!(max_abs_diff(&lv, &want) < 1e-13);
        }
    }
}

#[test]
fn liouvillian_preserves_trace() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(11);
    let dc = general_drive(3, 4);
    let l = build_liouvillian(&dc).unwrap();
    for _ in 0..100 {
        let a = Array2::from_shape_fn((16, 16), |_| {
            C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        });
        let rho = &a + &dagger(&a);
        let tr: C64 = l.apply(&rho).diag().sum();
        assert!(tr.norm() < 1e-12);
    }
}

#[test]
fn undriven_ground_state_is_stationary() {
    let dc = ladder_drive(&[-0.25, 0.25], 0.3, 0.0);
    let l = build_liouvillian(&dc).unwrap();
    let g = DensityOperator::ground(2);
    assert!(l.apply(g.matrix()).iter().all(|z| z.norm() == 0.0));
    let ss = steady_state(&l).unwrap();
    assert!((ss.matrix()[[0, 0]] - 1.0).norm() < 1e-12);
    assert!(matches!(
        io_amplitudes(&ss, &dc),
        Err(Error::ZeroDrive)
    ));
    assert!(inelastic_flux(&ss, &dc).abs() < 1e-14);
}

#[test]
fn identical_undriven_atoms_have_many_steady_states() {
    let dc = ladder_drive(&[0.0, 0.0], 0.0, 0.0);
    let l = build_liouvillian(&dc).unwrap();
    match steady_state(&l) {
        Err(Error::NonUniqueSteadyState { nullity }) => assert!(nullity >= 2),
        other => panic!("expected non-unique steady state, got {other:?}"),
    }
}

#[test]
fn solvers_agree() {
    for n in [2, 3, 4] {
        let dc = general_drive(20 + n as u64, n);
        let l = build_liouvillian(&dc).unwrap();
        let a = steady_state_with(&l, SteadyStateMethod::Dense).unwrap();
        let b = steady_state_with(&l, SteadyStateMethod::MatrixFree).unwrap();
        assert!(max_abs_diff(a.matrix(), b.matrix()) < 1e-10, "n = {n}");
    }
}

#[test]
fn weak_drive_reproduces_single_photon_amplitudes() {
    for dw in [vec![-0.5, 0.0, 0.5], vec![-0.25, 0.25]] {
        let n = dw.len();
        for dk in [-0.9, -0.21, 0.0, 0.33, 1.2] {
            let dc = ladder_drive(&dw, dk, 1e-6);
            let res = solve_drive(&dc, SteadyStateMethod::Auto).unwrap();
            let cf = closed_form(&dc.base, dk).unwrap();
            let through = if (n - 1) % 2 == 0 { 1.0 } else { -1.0 };
            assert!((res.t - cf.t * through).norm() < 1e-3, "t at {dk}");
            assert!((res.r - cf.r).norm() < 1e-3, "r at {dk}");
        }
    }
}

#[test]
fn far_detuned_probe_passes() {
    let dc = ladder_drive(&[-0.5, 0.0, 0.5], 100.0, 0.01);
    let res = solve_drive(&dc, SteadyStateMethod::Auto).unwrap();
    // R ~ (NΓ / 2Δk)² ~ 2e-4 this far out.
    assert!((res.transmittance - 1.0).abs() < 1e-3);
    assert!(res.reflectance < 1e-3);
    assert!((res.t - cz(1.0)).norm() < 2e-2);
}

#[test]
fn two_atom_dark_state() {
    let alpha2: f64 = 0.01;
    let omega = (0.5f64).sqrt() * alpha2.sqrt();
    let ds = dark_state(2, 0.5, omega).unwrap();
    let n2 = (8.0 * omega * omega + 0.25).sqrt();
    assert!((ds.normalization - n2).abs() < 1e-15);
    assert!((ds.amplitudes[0] - 0.5 / n2).norm() < 1e-15);
    assert!((ds.amplitudes[1] - 2.0 * omega / n2).norm() < 1e-15);
    assert!((ds.amplitudes[2] - 2.0 * omega / n2).norm() < 1e-15);
    assert!(ds.hamiltonian_residual < 1e-10);

    let dc = ladder_drive(&[-0.25, 0.25], 0.0, alpha2);
    let res = solve_drive(&dc, SteadyStateMethod::Auto).unwrap();
    assert!(res.rho.fidelity(&ds.amplitudes) > 0.999);

    let undriven = dark_state(2, 0.5, 0.0).unwrap();
    assert_eq!(undriven.amplitudes, ground_state(2));
}

#[test]
fn four_atom_dark_state() {
    let omega = 0.3;
    let ds = dark_state(4, 0.5, omega).unwrap();
    let norm: f64 = ds.amplitudes.iter().map(|z| z.norm_sqr()).sum();
    assert!((norm - 1.0).abs() < 1e-14);
    let sr = superradiant_state(4, 1);
    let overlap: C64 = sr.iter().zip(&ds.amplitudes).map(|(a, b)| a.conj() * b).sum();
    assert!(overlap.norm() < 1e-12);
    assert!(ds.liouvillian_residual < 1e-10);
}

#[test]
fn dark_state_needs_even_ladder() {
    assert!(matches!(dark_state(3, 0.5, 0.1), Err(Error::Unsupported(_))));
}

#[test]
fn even_arrays_are_dark_at_zero_detuning() {
    for n in [2usize, 4, 6] {
        let base = ArrayConfig::ladder(n, 0.5).unwrap();
        let dc = DriveConfig::from_intensity(base, 0.0, 0.01, 0.0).unwrap();
        let res = solve_drive(&dc, SteadyStateMethod::Auto).unwrap();
        assert!((res.transmittance - 1.0).abs() < 1e-6, "n = {n}");
        assert!(res.inelastic_flux.abs() < 1e-8, "n = {n}");
    }
}

#[test]
fn odd_array_transparency_is_imperfect() {
    let x = 3f64.sqrt() / 3.0 * 0.5;
    for dk in [-x, x] {
        let dc = ladder_drive(&[-0.5, 0.0, 0.5], dk, 0.01);
        let res = solve_drive(&dc, SteadyStateMethod::Auto).unwrap();
        assert!(res.inelastic_flux > 0.0);
        assert!(res.transmittance < 1.0);
    }
}

#[test]
fn size_limits() {
    let big = ArrayConfig::ladder(9, 0.1).unwrap();
    let dc = DriveConfig::new(big, 0.0, cz(0.1));
    assert!(matches!(
        build_liouvillian(&dc),
        Err(Error::DimensionTooLarge { max: 8, .. })
    ));
    let huge = ArrayConfig::ladder(13, 0.1).unwrap();
    assert!(matches!(
        build_drive_hamiltonian(&DriveConfig::new(huge, 0.0, cz(0.1))),
        Err(Error::DimensionTooLarge { max: 12, .. })
    ));
}

#[test]
fn density_operator_validation() {
    let mut rho = Array2::<C64>::zeros((2, 2));
    rho[[0, 0]] = cz(0.5);
    assert!(DensityOperator::new(rho.clone()).is_err());
    rho[[1, 1]] = cz(0.5);
    rho[[0, 1]] = cz(0.1);
    assert!(matches!(
        DensityOperator::new(rho.clone()),
        Err(Error::NotPhysical { .. })
    ));
    rho[[1, 0]] = cz(0.1);
    assert!(DensityOperator::new(rho.clone()).is_ok());
    rho[[0, 1]] = cz(0.9);
    rho[[1, 0]] = cz(0.9);
    assert!(DensityOperator::new(rho).is_err());
}

fn omega_grid() -> Vec<f64> {
    // Dense near the drive, sparse in the Lorentzian tails.
    let mut g: Vec<f64> = (-4000..=4000).map(|k| k as f64 * 1e-3).collect();
    let tail: Vec<f64> = (1..=2000).map(|k| 4.0 + k as f64 * 0.1).collect();
    g.extend(tail.iter().copied());
    g.extend(tail.iter().map(|w| -w));
    g.sort_by(f64::total_cmp);
    g
}

fn integrate(x: &[f64], y: &[f64]) -> f64 {
    x.windows(2)
        .zip(y.windows(2))
        .map(|(xs, ys)| 0.5 * (xs[1] - xs[0]) * (ys[0] + ys[1]))
        .sum()
}

#[test]
fn spectrum_integrates_to_flux() {
    let dc = ladder_drive(&[-0.25, 0.25], 0.25, 0.01);
    let res = solve_drive(&dc, SteadyStateMethod::Auto).unwrap();
    let grid = omega_grid();
    let spec = inelastic_spectrum(&dc, &grid).unwrap();
    let total = spec.total();
    let integral = integrate(&grid, &total);
    assert!(res.inelastic_flux > 1e-6);
    assert!(
        (integral - res.inelastic_flux).abs() < 0.02 * res.inelastic_flux,
        "{integral} vs {}",
        res.inelastic_flux
    );
    let peak = total.iter().copied().fold(0.0, f64::max);
    assert!(total.iter().all(|&s| s > -1e-6 * peak));
}

#[test]
fn dark_state_has_no_spectrum() {
    let dc = ladder_drive(&[-0.25, 0.25], 0.0, 0.01);
    let spec = inelastic_spectrum(&dc, &[-1.0, -0.1, 0.0, 0.05, 2.0]).unwrap();
    assert!(spec.total().iter().all(|s| s.abs() < 1e-8));
}

#[test]
fn weak_drive_spectrum_vanishes() {
    let grid = [-1.0, -0.2, 0.0, 0.2, 1.0];
    let strong = inelastic_spectrum(&ladder_drive(&[-0.25, 0.25], 0.4, 1e-2), &grid).unwrap();
    let weak = inelastic_spectrum(&ladder_drive(&[-0.25, 0.25], 0.4, 1e-6), &grid).unwrap();
    let max = |s: &InelasticSpectrum| s.total().iter().map(|v| v.abs()).fold(0.0, f64::max);
    assert!(max(&weak) < 1e-6 * max(&strong));
}

#[test]
fn short_horizon_is_rejected() {
    let dc = ladder_drive(&[-0.25, 0.25], 0.25, 0.01);
    let opts = SpectrumOptions { tau_max: Some(1.0) };
    assert!(matches!(
        inelastic_spectrum_with(&dc, &[0.0], &opts),
        Err(Error::SlowConvergence { .. })
    ));
}

#[test]
fn irregular_phases_use_exact_drive_phases() {
    let base = ArrayConfig::new(vec![-0.1, 0.1], vec![1.0, 1.0], vec![0.0, 0.5 * PI], None).unwrap();
    let dc = DriveConfig::new(base, 0.0, cz(0.2));
    let rabi = dc.rabi_frequencies();
    assert!((rabi[1] - C64::new(0.0, 0.2 * 0.5f64.sqrt())).norm() < 1e-15);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn photon_number_is_conserved(seed in 0u64..10_000, n in 1usize..=3) {
        let dc = general_drive(seed, n);
        let res = solve_drive(&dc, SteadyStateMethod::Auto).unwrap();
        let a2 = dc.alpha.norm_sqr();
        prop_assert!(res.inelastic_flux >= -1e-10);
        prop_assert!(
            (res.inelastic_flux / a2 - (1.0 - res.transmittance - res.reflectance)).abs() < 1e-6
        );
    }
}
