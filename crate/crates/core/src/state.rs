// SPDX-License-Identifier: Apache-2.0

//! Labelled multi-qubit density matrices.
//!
//! A [`DensityMatrix`] carries the atom label of each tensor factor. The first
//! label is the most significant bit of the basis index, so in canonical
//! `A,B,C,D` order the basis index is `8a + 4b + 2c + d`. Every operation that
//! materializes a label set returns it in canonical order.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::linalg::{hermitian_eigenvalues, CMatrix};

pub const DEFAULT_TOL_HERM: f64 = 1e-12;
pub const DEFAULT_TOL_TRACE: f64 = 1e-12;
pub const DEFAULT_PSD_SLACK: f64 = 1e-9;

/// One of the four two-level atoms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    A,
    B,
    C,
    D,
}

impl Atom {
    pub const ALL: [Atom; 4] = [Atom::A, Atom::B, Atom::C, Atom::D];
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Atom::A => "A",
            Atom::B => "B",
            Atom::C => "C",
            Atom::D => "D",
        };
        f.write_str(s)
    }
}

fn check_distinct(labels: &[Atom]) -> Result<()> {
    for (i, a) in labels.iter().enumerate() {
        if labels[i + 1..].contains(a) {
            return Err(Error::LabelMismatch(format!("label {a} appears more than once")));
        }
    }
    Ok(())
}

/// Density matrix over a set of labelled qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: CMatrix,
    labels: Vec<Atom>,
}

impl DensityMatrix {
    /// Wraps a matrix; checks shape and labels but not physicality
    /// (see [`validate_density`]).
    pub fn new(matrix: CMatrix, labels: Vec<Atom>) -> Result<Self> {
        check_distinct(&labels)?;
        if labels.is_empty() {
            return Err(Error::LabelMismatch("a density matrix needs at least one qubit".into()));
        }
        let dim = 1usize << labels.len();
        if matrix.rows() != dim || matrix.cols() != dim {
            return Err(Error::LabelMismatch(format!(
                "{} labels need a {dim}x{dim} matrix, got {}x{}",
                labels.len(),
                matrix.rows(),
                matrix.cols()
            )));
        }
        Ok(DensityMatrix { matrix, labels })
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn labels(&self) -> &[Atom] {
        &self.labels
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    /// `Tr(rho^2)`.
    pub fn purity(&self) -> f64 {
        (&self.matrix * &self.matrix).trace().re
    }
}

/// Relabelling of qubit factors from one order to another.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QubitPermutation {
    from: Vec<Atom>,
    to: Vec<Atom>,
}

impl QubitPermutation {
    pub fn new(from: Vec<Atom>, to: Vec<Atom>) -> Result<Self> {
        check_distinct(&from)?;
        check_distinct(&to)?;
        if from.len() != to.len() || from.iter().any(|a| !to.contains(a)) {
            return Err(Error::LabelMismatch(format!(
                "permutation {from:?} -> {to:?} is not a bijection"
            )));
        }
        Ok(QubitPermutation { from, to })
    }

    /// Permutation from `from` to the canonical `A<B<C<D` order of the same set.
    pub fn to_canonical(from: &[Atom]) -> Result<Self> {
        let mut to = from.to_vec();
        to.sort();
        Self::new(from.to_vec(), to)
    }

    pub fn inverse(&self) -> Self {
        QubitPermutation { from: self.to.clone(), to: self.from.clone() }
    }

    pub fn from_labels(&self) -> &[Atom] {
        &self.from
    }

    pub fn to_labels(&self) -> &[Atom] {
        &self.to
    }

    /// `map[i]` is the target basis index of source basis index `i`.
    fn index_map(&self) -> Vec<usize> {
        let n = self.from.len();
        // Target bit position of each source factor.
        let target_pos: Vec<usize> = self
            .from
            .iter()
            .map(|a| self.to.iter().position(|b| b == a).expect("validated bijection"))
            .collect();
        (0..1usize << n)
            .map(|idx| {
                let mut out = 0;
                for (src, &dst) in target_pos.iter().enumerate() {
                    let bit = (idx >> (n - 1 - src)) & 1;
                    out |= bit << (n - 1 - dst);
                }
                out
            })
            .collect()
    }
}

/// Re-indexes `rho` so its factors appear in the permutation's target order.
pub fn permute_qubits(rho: &DensityMatrix, perm: &QubitPermutation) -> Result<DensityMatrix> {
    if rho.labels != perm.from {
        return Err(Error::LabelMismatch(format!(
            "state labels {:?} do not match permutation source {:?}",
            rho.labels, perm.from
        )));
    }
    let map = perm.index_map();
    let dim = rho.dim();
    let mut out = CMatrix::zeros(dim, dim);
    for r in 0..dim {
        for c in 0..dim {
            out[(map[r], map[c])] = rho.matrix[(r, c)];
        }
    }
    Ok(DensityMatrix { matrix: out, labels: perm.to.clone() })
}

/// Traces out every qubit not in `keep`. The result is labelled in canonical order.
pub fn partial_trace(rho: &DensityMatrix, keep: &[Atom]) -> Result<DensityMatrix> {
    if keep.is_empty() {
        return Err(Error::invalid("keep", "cannot keep an empty set of qubits"));
    }
    check_distinct(keep)?;
    let mut kept_labels = keep.to_vec();
    kept_labels.sort();
    let n = rho.labels.len();
    let kept_pos: Vec<usize> = kept_labels
        .iter()
        .map(|a| {
            rho.labels.iter().position(|b| b == a).ok_or_else(|| {
                Error::LabelMismatch(format!("qubit {a} is not part of {:?}", rho.labels))
            })
        })
        .collect::<Result<_>>()?;
    let traced_pos: Vec<usize> = (0..n).filter(|p| !kept_pos.contains(p)).collect();

    let scatter = |bits: usize, positions: &[usize]| -> usize {
        let k = positions.len();
        positions
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &p)| acc | (((bits >> (k - 1 - i)) & 1) << (n - 1 - p)))
    };

    let kept_dim = 1usize << kept_pos.len();
    let traced_dim = 1usize << traced_pos.len();
    let kept_idx: Vec<usize> = (0..kept_dim).map(|b| scatter(b, &kept_pos)).collect();
    let traced_idx: Vec<usize> = (0..traced_dim).map(|b| scatter(b, &traced_pos)).collect();

    let out = CMatrix::from_fn(kept_dim, kept_dim, |r, c| {
        traced_idx
            .iter()
            .map(|&t| rho.matrix[(kept_idx[r] | t, kept_idx[c] | t)])
            .sum()
    });
    Ok(DensityMatrix { matrix: out, labels: kept_labels })
}

/// Outcome of [`validate_density`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationReport {
    /// Largest `|rho_ij - conj(rho_ji)|`.
    pub hermiticity_deviation: f64,
    /// `|Tr rho - 1|`, including any imaginary part of the trace.
    pub trace_deviation: f64,
    /// Smallest eigenvalue of the Hermitized matrix.
    pub min_eigenvalue: f64,
    pub tol_herm: f64,
    pub tol_trace: f64,
    pub psd_slack: f64,
}

impl ValidationReport {
    pub fn hermitian_ok(&self) -> bool {
        self.hermiticity_deviation <= self.tol_herm
    }

    pub fn trace_ok(&self) -> bool {
        self.trace_deviation <= self.tol_trace
    }

    pub fn psd_ok(&self) -> bool {
        self.min_eigenvalue >= -self.psd_slack
    }

    pub fn passes(&self) -> bool {
        self.hermitian_ok() && self.trace_ok() && self.psd_ok()
    }
}

/// Reports how far `rho` is from being a physical state. Never fails.
pub fn validate_density(
    rho: &DensityMatrix,
    tol_herm: f64,
    tol_trace: f64,
    psd_slack: f64,
) -> ValidationReport {
    let m = rho.matrix();
    let min_eigenvalue = hermitian_eigenvalues(m).first().copied().unwrap_or(0.0);
    ValidationReport {
        hermiticity_deviation: m.hermiticity_deviation(),
        trace_deviation: (m.trace() - 1.0).norm(),
        min_eigenvalue,
        tol_herm,
        tol_trace,
        psd_slack,
    }
}

/// [`validate_density`] with the default tolerances.
pub fn validate_density_default(rho: &DensityMatrix) -> ValidationReport {
    validate_density(rho, DEFAULT_TOL_HERM, DEFAULT_TOL_TRACE, DEFAULT_PSD_SLACK)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::kron;
    use alloc::vec;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn mixed_qubit(p: f64, coh: Complex64) -> CMatrix {
        CMatrix::from_vec(2, 2, vec![c(p, 0.0), coh, coh.conj(), c(1.0 - p, 0.0)])
    }

    #[test]
    fn rejects_wrong_dimension() {
        let err = DensityMatrix::new(CMatrix::identity(3), vec![Atom::A, Atom::B]);
        assert!(matches!(err, Err(Error::LabelMismatch(_))));
    }

    #[test]
    fn identity_permutation_is_noop() {
        let m = kron(&mixed_qubit(0.3, c(0.1, 0.2)), &mixed_qubit(0.6, c(0.0, -0.1)));
        let rho = DensityMatrix::new(m, vec![Atom::A, Atom::B]).unwrap();
        let id = QubitPermutation::new(vec![Atom::A, Atom::B], vec![Atom::A, Atom::B]).unwrap();
        assert_eq!(permute_qubits(&rho, &id).unwrap(), rho);
    }

    #[test]
    fn swap_permutation_swaps_kron_factors() {
        let x = mixed_qubit(0.3, c(0.1, 0.2));
        let y = mixed_qubit(0.8, c(-0.2, 0.05));
        let rho = DensityMatrix::new(kron(&x, &y), vec![Atom::B, Atom::A]).unwrap();
        let swapped = permute_qubits(&rho, &QubitPermutation::to_canonical(rho.labels()).unwrap()).unwrap();
        assert_eq!(swapped.labels(), &[Atom::A, Atom::B]);
        assert!(swapped.matrix().max_abs_diff(&kron(&y, &x)) < 1e-15);
    }

    #[test]
    fn permutation_label_mismatch_is_error() {
        let rho = DensityMatrix::new(CMatrix::identity(4).scale(c(0.25, 0.0)), vec![Atom::A, Atom::B]).unwrap();
        let perm = QubitPermutation::new(vec![Atom::A, Atom::C], vec![Atom::C, Atom::A]).unwrap();
        assert!(matches!(permute_qubits(&rho, &perm), Err(Error::LabelMismatch(_))));
    }

    #[test]
    fn non_bijective_permutation_rejected() {
        assert!(QubitPermutation::new(vec![Atom::A, Atom::B], vec![Atom::A, Atom::C]).is_err());
        assert!(QubitPermutation::new(vec![Atom::A, Atom::A], vec![Atom::A, Atom::A]).is_err());
    }

    #[test]
    fn partial_trace_of_product_state() {
        let x = mixed_qubit(0.3, c(0.1, 0.2));
        let y = mixed_qubit(0.8, c(-0.2, 0.05));
        let rho = DensityMatrix::new(kron(&x, &y), vec![Atom::C, Atom::A]).unwrap();
        let keep_c = partial_trace(&rho, &[Atom::C]).unwrap();
        assert!(keep_c.matrix().max_abs_diff(&x) < 1e-15);
        let keep_a = partial_trace(&rho, &[Atom::A]).unwrap();
        assert!(keep_a.matrix().max_abs_diff(&y) < 1e-15);
    }

    #[test]
    fn keeping_everything_canonicalizes_only() {
        let x = mixed_qubit(0.3, c(0.1, 0.2));
        let y = mixed_qubit(0.8, c(-0.2, 0.05));
        let rho = DensityMatrix::new(kron(&x, &y), vec![Atom::A, Atom::B]).unwrap();
        assert_eq!(partial_trace(&rho, &[Atom::B, Atom::A]).unwrap(), rho);
    }

    #[test]
    fn empty_keep_is_error() {
        let rho = DensityMatrix::new(CMatrix::identity(2).scale(c(0.5, 0.0)), vec![Atom::A]).unwrap();
        assert!(matches!(partial_trace(&rho, &[]), Err(Error::InvalidArgument { .. })));
        assert!(matches!(partial_trace(&rho, &[Atom::B]), Err(Error::LabelMismatch(_))));
    }

    #[test]
    fn maximally_mixed_passes_validation() {
        let rho = DensityMatrix::new(CMatrix::identity(4).scale(c(0.25, 0.0)), vec![Atom::A, Atom::B]).unwrap();
        assert!(validate_density_default(&rho).passes());
    }

    #[test]
    fn short_trace_is_reported() {
        let rho = DensityMatrix::new(
            CMatrix::from_real_diagonal(&[0.5, 0.4]),
            vec![Atom::A],
        )
        .unwrap();
        let report = validate_density_default(&rho);
        assert!(!report.trace_ok());
        assert!(report.hermitian_ok() && report.psd_ok());
        assert!((report.trace_deviation - 0.1).abs() < 1e-15);
    }

    #[test]
    fn negative_eigenvalue_is_reported() {
        let rho = DensityMatrix::new(CMatrix::from_real_diagonal(&[1.1, -0.1]), vec![Atom::A]).unwrap();
        let report = validate_density_default(&rho);
        assert!(!report.psd_ok());
        assert!((report.min_eigenvalue + 0.1).abs() < 1e-14);
    }
}
