//! Reduction of arrays with repeated atomic frequencies to an effective array
//! of distinct emitters.

use ndarray::Array2;
use num_complex::Complex64 as C64;

use super::collective::{fourier_block, site_sign};
use super::{build_effective_hamiltonian, ArrayConfig};
use crate::error::Result;
use crate::linalg::dagger;

/// A cluster of atoms sharing one transition frequency.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyGroup {
    pub frequency: f64,
    /// Original (0-based) atom indices, ascending.
    pub atoms: Vec<usize>,
}

impl FrequencyGroup {
    pub fn multiplicity(&self) -> usize {
        self.atoms.len()
    }
}

/// A point scatterer seen by the waveguide: one bare atom or the bright mode
/// of a cluster of identical atoms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Emitter {
    pub detuning: f64,
    pub decay: f64,
}

#[derive(Debug, Clone)]
pub struct DegenerateReduction {
    /// Every frequency group, singletons included, sorted by frequency.
    pub groups: Vec<FrequencyGroup>,
    /// One emitter per group with decay `mᵢΓ`, sorted by detuning.
    pub effective_emitters: Vec<Emitter>,
    /// `m₀ + M − 1`.
    pub window_count: usize,
    /// Atom ordering used by `block_transform`: the `m₀` distinct atoms
    /// first, then each cluster in frequency order.
    pub atom_order: Vec<usize>,
    /// Block-diagonal unitary `U₀ ⊕ U₁ ⊕ … ⊕ U_M` acting on atoms in
    /// `atom_order`.
    pub block_transform: Array2<C64>,
}

impl DegenerateReduction {
    /// Number of atoms without a frequency partner, m₀.
    pub fn distinct_count(&self) -> usize {
        self.groups.iter().filter(|g| g.multiplicity() == 1).count()
    }

    /// Number of clusters with two or more atoms, M.
    pub fn cluster_count(&self) -> usize {
        self.groups.iter().filter(|g| g.multiplicity() > 1).count()
    }

    /// Block sizes of `block_transform` in order.
    pub fn block_sizes(&self) -> Vec<usize> {
        let m0 = self.distinct_count();
        let mut sizes = Vec::new();
        if m0 > 0 {
            sizes.push(m0);
        }
        sizes.extend(
            self.groups
                .iter()
                .filter(|g| g.multiplicity() > 1)
                .map(FrequencyGroup::multiplicity),
        );
        sizes
    }

    /// `U P H Pᵀ U†`: the effective Hamiltonian in the block-collective basis.
    pub fn transformed_hamiltonian(&self, cfg: &ArrayConfig) -> Array2<C64> {
        let h = build_effective_hamiltonian(cfg);
        let n = self.atom_order.len();
        let permuted =
            Array2::from_shape_fn((n, n), |(i, j)| h[[self.atom_order[i], self.atom_order[j]]]);
        self.block_transform
            .dot(&permuted)
            .dot(&dagger(&self.block_transform))
    }
}

/// Cluster atoms whose frequencies lie within `tol` of a neighbour and build
/// the block-collective transform.
pub fn reduce_degenerate(cfg: &ArrayConfig, tol: f64) -> Result<DegenerateReduction> {
    let (spacing, gamma) = cfg.require_eit_regular()?;
    let dw = cfg.delta_omega();
    let n = dw.len();

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| dw[a].total_cmp(&dw[b]).then(a.cmp(&b)));

    let mut groups: Vec<FrequencyGroup> = Vec::new();
    let mut last = f64::NEG_INFINITY;
    for &atom in &order {
        match groups.last_mut() {
            Some(g) if dw[atom] - last <= tol => g.atoms.push(atom),
            _ => groups.push(FrequencyGroup {
                frequency: 0.0,
                atoms: vec![atom],
            }),
        }
        last = dw[atom];
    }
    for g in &mut groups {
        g.atoms.sort_unstable();
        g.frequency = g.atoms.iter().map(|&a| dw[a]).sum::<f64>() / g.multiplicity() as f64;
    }

    let effective_emitters: Vec<Emitter> = groups
        .iter()
        .map(|g| Emitter {
            detuning: g.frequency,
            decay: g.multiplicity() as f64 * gamma,
        })
        .collect();

    let mut atom_order: Vec<usize> = groups
        .iter()
        .filter(|g| g.multiplicity() == 1)
        .map(|g| g.atoms[0])
        .collect();
    atom_order.sort_unstable();
    let mut blocks = Vec::new();
    if !atom_order.is_empty() {
        blocks.push(atom_order.clone());
    }
    for g in groups.iter().filter(|g| g.multiplicity() > 1) {
        atom_order.extend(&g.atoms);
        blocks.push(g.atoms.clone());
    }

    // Each block carries the waveguide sign of its actual atoms, so the
    // first row of every block is that subsystem's bright mode.
    let mut block_transform = Array2::zeros((n, n));
    let mut offset = 0;
    for atoms in &blocks {
        let m = atoms.len();
        let u = fourier_block(m, |q| site_sign(atoms[q], spacing));
        block_transform
            .slice_mut(ndarray::s![offset..offset + m, offset..offset + m])
            .assign(&u);
        offset += m;
    }

    Ok(DegenerateReduction {
        window_count: effective_emitters.len().saturating_sub(1),
        groups,
        effective_emitters,
        atom_order,
        block_transform,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs_diff;

    fn cfg(dw: Vec<f64>) -> ArrayConfig {
        ArrayConfig::regular(dw, 1.0, 1).unwrap()
    }

    #[test]
    fn three_fold_cluster() {
        let red = reduce_degenerate(&cfg(vec![-1.0, -1.0, -1.0, 1.0, 2.0]), 1e-9).unwrap();
        assert_eq!(red.cluster_count(), 1);
        assert_eq!(red.distinct_count(), 2);
        assert_eq!(red.effective_emitters.len(), 3);
        assert_eq!(red.window_count, 2);
        assert_eq!(red.effective_emitters[0], Emitter { detuning: -1.0, decay: 3.0 });
        let total: usize = red.groups.iter().map(FrequencyGroup::multiplicity).sum();
        assert_eq!(total, 5);
    }

    #[test]
    fn single_cluster_with_one_distinct_atom() {
        let red = reduce_degenerate(&cfg(vec![-0.75, 0.25, 0.25, 0.25]), 1e-9).unwrap();
        assert_eq!(red.effective_emitters.len(), 2);
        assert_eq!(red.window_count, 1);
        assert_eq!(red.block_sizes(), vec![1, 3]);
    }

    #[test]
    fn identical_atoms_form_one_mirror() {
        let red = reduce_degenerate(&cfg(vec![0.0; 4]), 1e-9).unwrap();
        assert_eq!(red.effective_emitters, vec![Emitter { detuning: 0.0, decay: 4.0 }]);
        assert_eq!(red.window_count, 0);
    }

    #[test]
    fn distinct_atoms_are_untouched() {
        let red = reduce_degenerate(&cfg(vec![-0.3, 0.1, 0.2]), 0.0).unwrap();
        assert_eq!(red.effective_emitters.len(), 3);
        assert_eq!(red.window_count, 2);
    }

    #[test]
    fn block_transform_is_unitary() {
        let red = reduce_degenerate(&cfg(vec![-1.0, 0.5, -1.0, 0.5, 1.0]), 1e-9).unwrap();
        let u = &red.block_transform;
        let id = Array2::from_diag_elem(5, C64::new(1.0, 0.0));
        assert!(max_abs_diff(&u.dot(&dagger(u)), &id) < 1e-14);
    }

    #[test]
    fn cluster_subradiant_modes_decouple() {
        // Clusters interleaved along the array so the waveguide signs of a
        // cluster's atoms do not simply alternate.
        let c = cfg(vec![-1.0, 0.5, -1.0, 0.5, 1.0, -1.0, 0.5, 0.5]);
        let red = reduce_degenerate(&c, 1e-9).unwrap();
        let h = red.transformed_hamiltonian(&c);
        let sizes = red.block_sizes();
        let m0 = red.distinct_count();
        let mut offset = 0;
        let mut bright = Vec::new();
        for (b, &m) in sizes.iter().enumerate() {
            bright.push(offset);
            let is_cluster = !(b == 0 && m0 > 0);
            if is_cluster {
                let freq = c.delta_omega()[red.atom_order[offset]];
                assert!((h[[offset, offset]] - C64::new(freq, -0.5 * m as f64)).norm() < 1e-12);
                for k in offset + 1..offset + m {
                    for l in 0..h.ncols() {
                        let expected = if l == k { C64::new(freq, 0.0) } else { C64::new(0.0, 0.0) };
                        assert!((h[[k, l]] - expected).norm() < 1e-12, "({k},{l})");
                        assert!((h[[l, k]] - expected).norm() < 1e-12, "({l},{k})");
                    }
                }
            }
            offset += m;
        }
        for (a, &p) in bright.iter().enumerate() {
            for &q in &bright[a + 1..] {
                let mp = sizes[bright.iter().position(|&x| x == p).unwrap()] as f64;
                let mq = sizes[bright.iter().position(|&x| x == q).unwrap()] as f64;
                assert!((h[[p, q]].norm() - 0.5 * (mp * mq).sqrt()).abs() < 1e-12);
            }
        }
    }
}
