// SPDX-License-Identifier: Apache-2.0

//! Per-cavity decoherence maps `E(|ik><jl|)`.
//!
//! Tracing the cavity field out of `U (|ik><jl| ⊗ rho_F) U†` for a diagonal
//! field `rho_F = sum_m P_m |m><m|` yields a 4x4 operator on the two atoms.
//! Two routes compute it: [`pair_map`] sums the generic expansion with the
//! photon-matching condition, [`pair_map_explicit`] uses the ten transcribed
//! closed forms plus adjoint relations. They cross-check each other.

use num_complex::Complex64;

use super::coeff::coeff_unchecked;
use super::field::{FieldSpec, PhotonDistribution};
use super::{check_bit, check_tau};
use crate::error::Result;
use crate::linalg::CMatrix;

/// Net photons emitted when the pair `|ik>` flips by `(p, q)`:
/// `(-1)^i p + (-1)^k q`.
#[inline]
pub fn photon_shift(i: u8, k: u8, p: u8, q: u8) -> i64 {
    let sign = |b: u8| if b == 0 { 1 } else { -1 };
    sign(i) * p as i64 + sign(k) * q as i64
}

#[inline]
fn basis(x: u8, y: u8) -> usize {
    2 * x as usize + y as usize
}

fn check_indices(i: u8, k: u8, j: u8, l: u8, tau: f64) -> Result<()> {
    check_bit("i", i)?;
    check_bit("k", k)?;
    check_bit("j", j)?;
    check_bit("l", l)?;
    check_tau(tau)
}

/// `E(|ik><jl|)` from the generic expansion.
pub fn pair_map(i: u8, k: u8, j: u8, l: u8, field: &FieldSpec, tau: f64) -> Result<CMatrix> {
    check_indices(i, k, j, l, tau)?;
    Ok(pair_map_with(i, k, j, l, &field.resolve()?, tau))
}

/// [`pair_map`] for an already resolved field; indices are assumed valid.
pub fn pair_map_with(i: u8, k: u8, j: u8, l: u8, dist: &PhotonDistribution, tau: f64) -> CMatrix {
    let mut out = CMatrix::zeros(4, 4);
    let flips = [(0u8, 0u8), (0, 1), (1, 0), (1, 1)];
    for &(m, weight) in dist.weights() {
        let ket: [Complex64; 4] = flips.map(|(r, s)| coeff_unchecked(i, k, r, s, m, tau));
        let bra: [Complex64; 4] = flips.map(|(u, v)| coeff_unchecked(j, l, u, v, m, tau));
        for (a, &(r, s)) in flips.iter().enumerate() {
            let shift = photon_shift(i, k, r, s);
            if (m as i64) < shift {
                continue;
            }
            for (b, &(u, v)) in flips.iter().enumerate() {
                if photon_shift(j, l, u, v) != shift {
                    continue;
                }
                out[(basis(i ^ r, k ^ s), basis(j ^ u, l ^ v))] += ket[a] * bra[b].conj() * weight;
            }
        }
    }
    out
}

/// `E(|ik><jl|)` from the closed forms listed per index combination.
pub fn pair_map_explicit(i: u8, k: u8, j: u8, l: u8, field: &FieldSpec, tau: f64) -> Result<CMatrix> {
    check_indices(i, k, j, l, tau)?;
    let dist = field.resolve()?;
    // Only combinations with ket index >= bra index are listed; the rest
    // follow from E(|jl><ik|) = E(|ik><jl|)†.
    if basis(i, k) < basis(j, l) {
        return pair_map_explicit(j, l, i, k, field, tau).map(|m| m.adjoint());
    }
    let mut out = CMatrix::zeros(4, 4);
    for &(m, weight) in dist.weights() {
        let x = |a: u8, b: u8, p: u8, q: u8| coeff_unchecked(a, b, p, q, m, tau);
        let mut add = |ket: usize, bra: usize, v: Complex64| out[(ket, bra)] += v * weight;
        const S11: usize = 3;
        const S10: usize = 2;
        const S01: usize = 1;
        const S00: usize = 0;
        match (basis(i, k), basis(j, l)) {
            (S00, S00) => {
                add(S11, S11, x(0, 0, 1, 1).norm_sqr().into());
                add(S10, S10, x(0, 0, 1, 0).norm_sqr().into());
                add(S10, S01, x(0, 0, 1, 0) * x(0, 0, 0, 1).conj());
                add(S01, S10, x(0, 0, 0, 1) * x(0, 0, 1, 0).conj());
                add(S01, S01, x(0, 0, 0, 1).norm_sqr().into());
                add(S00, S00, x(0, 0, 0, 0).norm_sqr().into());
            }
            (S01, S00) => {
                let c = x(0, 1, 1, 0) * x(0, 0, 0, 1).conj();
                add(S11, S01, c);
                add(S11, S10, c);
                add(S10, S00, x(0, 1, 1, 1) * x(0, 0, 0, 0).conj());
                add(S01, S00, x(0, 1, 0, 0) * x(0, 0, 0, 0).conj());
            }
            (S10, S00) => {
                add(S11, S10, x(1, 0, 0, 1) * x(0, 0, 1, 0).conj());
                add(S11, S01, x(1, 0, 0, 1) * x(0, 0, 0, 1).conj());
                add(S10, S00, x(1, 0, 0, 0) * x(0, 0, 0, 0).conj());
                add(S01, S00, x(1, 0, 1, 1) * x(0, 0, 0, 0).conj());
            }
            (S11, S00) => {
                add(S11, S00, x(1, 1, 0, 0) * x(0, 0, 0, 0).conj());
            }
            (S01, S01) => {
                add(S11, S11, x(0, 1, 1, 0).norm_sqr().into());
                add(S10, S01, x(0, 1, 1, 1) * x(0, 1, 0, 0).conj());
                // Printed with bra <00|; the ket |10> carries the same photon
                // number as <10| only, so the diagonal entry is the right one.
                add(S10, S10, x(0, 1, 1, 1).norm_sqr().into());
                add(S01, S10, x(0, 1, 0, 0) * x(0, 1, 1, 1).conj());
                add(S01, S01, x(0, 1, 0, 0).norm_sqr().into());
                add(S00, S00, x(0, 1, 0, 1).norm_sqr().into());
            }
            (S10, S01) => {
                add(S11, S11, x(1, 0, 0, 1).norm_sqr().into());
                add(S10, S10, x(1, 0, 0, 0) * x(0, 1, 1, 1).conj());
                add(S10, S01, x(1, 0, 0, 0).norm_sqr().into());
                add(S01, S10, x(1, 0, 1, 1).norm_sqr().into());
                add(S01, S01, x(1, 0, 1, 1) * x(0, 1, 0, 0).conj());
                add(S00, S00, x(1, 0, 1, 0).norm_sqr().into());
            }
            (S11, S01) => {
                add(S11, S10, x(1, 1, 0, 0) * x(0, 1, 1, 1).conj());
                add(S11, S01, x(1, 1, 0, 0) * x(0, 1, 0, 0).conj());
                add(S10, S00, x(1, 1, 0, 1) * x(0, 1, 0, 1).conj());
                add(S01, S00, x(1, 1, 1, 0) * x(0, 1, 0, 1).conj());
            }
            (S10, S10) => {
                add(S11, S11, x(1, 0, 0, 1).norm_sqr().into());
                add(S10, S10, x(1, 0, 0, 0).norm_sqr().into());
                add(S10, S01, x(1, 0, 0, 0) * x(1, 0, 1, 1).conj());
                add(S01, S10, x(1, 0, 1, 1) * x(1, 0, 0, 0).conj());
                add(S01, S01, x(1, 0, 1, 1).norm_sqr().into());
                add(S00, S00, x(1, 0, 1, 0).norm_sqr().into());
            }
            (S11, S10) => {
                add(S11, S10, x(1, 1, 0, 0) * x(1, 0, 0, 0).conj());
                add(S11, S01, x(1, 1, 0, 0) * x(1, 0, 1, 1).conj());
                add(S10, S00, x(1, 1, 0, 1) * x(1, 0, 1, 0).conj());
                add(S01, S00, x(1, 1, 1, 0) * x(1, 0, 1, 0).conj());
            }
            (S11, S11) => {
                add(S11, S11, x(1, 1, 0, 0).norm_sqr().into());
                let c: Complex64 = x(1, 1, 0, 1).norm_sqr().into();
                for ket in [S10, S01] {
                    for bra in [S10, S01] {
                        add(ket, bra, c);
                    }
                }
                add(S00, S00, x(1, 1, 1, 1).norm_sqr().into());
            }
            _ => unreachable!("ket index >= bra index"),
        }
    }
    Ok(out)
}
