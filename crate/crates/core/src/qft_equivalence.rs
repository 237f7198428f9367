//! Site-basis relabeling that maps exciton states onto DFT columns.
//!
//! Relabel the site kets as `|l⟩` with `l = j - 1` and absorb the gauge factor
//! `exp(i l π (1 - 1/N))` into each of them. In the new basis the exciton with
//! quantum number `n`, multiplied by the global phase `exp(-2i n π / M)`, has
//! components `exp(2πi l k / M) / √M` with `k = n + N - 1`: exactly column `k`
//! of the `M`-point DFT.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::circuit_sim::{circuit_unitary, dft_matrix, qft_circuit};
use crate::error::{check_range, Error, Result};
use crate::exciton_ring::{exciton_state, RingModel};
use crate::format::sig15;
use crate::linalg::ComplexVector;

/// Fractional qubit count of an 18-site ring, `log2(18) = 1 + 2 log 3 / log 2`.
pub fn fractional_qubits(dimension: usize) -> f64 {
    (dimension as f64).log2()
}

/// Gauge factor `exp(i l π (1 - 1/N))` attached to relabeled site `l`.
pub fn relabel_phase(half_size: usize, l: i64) -> Result<Complex64> {
    if half_size == 0 {
        return Err(Error::InvalidModel("half size N must be at least 1".into()));
    }
    check_range("site label l", l, 0, 2 * half_size as i64 - 1)?;
    Ok(gauge(half_size, l as usize))
}

fn gauge(half_size: usize, l: usize) -> Complex64 {
    // Reduce l (N - 1) mod 2N before scaling by π/N to keep the argument small.
    let n = half_size;
    let turns = (l * (n - 1)) % (2 * n);
    Complex64::from_polar(1.0, turns as f64 * PI / n as f64)
}

/// `k = n + N - 1`.
pub fn k_from_n(half_size: usize, n: i64) -> Result<usize> {
    let big_n = half_size as i64;
    check_range("quantum number n", n, 1 - big_n, big_n)?;
    Ok((n + big_n - 1) as usize)
}

/// Inverse of [`k_from_n`].
pub fn n_from_k(half_size: usize, k: usize) -> Result<i64> {
    check_range("DFT index k", k as i64, 0, 2 * half_size as i64 - 1)?;
    Ok(k as i64 + 1 - half_size as i64)
}

/// Global phase `exp(-2i (k - M/2 + 1) π / M) = exp(-i n π / N)`.
pub fn global_phase(half_size: usize, n: i64) -> Complex64 {
    Complex64::from_polar(1.0, -(n as f64) * PI / half_size as f64)
}

/// The exciton state `n` written in the relabeled basis, times the global
/// phase. Component `l` is the site amplitude at `j = l + 1` times the gauge
/// factor of `l`.
pub fn mapped_exciton(model: &RingModel, n: i64) -> Result<ComplexVector> {
    let state = exciton_state(model, n)?;
    let phase = global_phase(model.half_size(), n);
    Ok(state
        .iter()
        .enumerate()
        .map(|(l, a)| a * gauge(model.half_size(), l) * phase)
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquivalenceRow {
    pub k: usize,
    pub n: i64,
    #[serde(serialize_with = "sig15")]
    pub fidelity: f64,
    #[serde(serialize_with = "sig15")]
    pub phase_error: f64,
    /// Largest componentwise deviation from the DFT column.
    #[serde(serialize_with = "sig15")]
    pub max_deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquivalenceReport {
    pub half_size: usize,
    pub ring_size: usize,
    pub per_k: Vec<EquivalenceRow>,
    #[serde(serialize_with = "sig15")]
    pub min_fidelity: f64,
    #[serde(serialize_with = "sig15")]
    pub max_phase_error: f64,
    #[serde(serialize_with = "sig15")]
    pub max_deviation: f64,
}

impl EquivalenceReport {
    pub fn holds(&self, tolerance: f64) -> bool {
        self.min_fidelity >= 1.0 - tolerance && self.max_phase_error <= tolerance
    }
}

/// Compares every mapped exciton with the matching DFT column.
pub fn verify_equivalence(model: &RingModel) -> EquivalenceReport {
    let m = model.ring_size();
    let dft = dft_matrix(m);
    let per_k: Vec<EquivalenceRow> = (0..m)
        .map(|k| {
            let n = n_from_k(model.half_size(), k).expect("k drawn from [0, M)");
            let mapped = mapped_exciton(model, n).expect("n drawn from the valid range");
            let column = dft.column(k);
            let overlap = column.inner(&mapped);
            EquivalenceRow {
                k,
                n,
                fidelity: overlap.norm(),
                phase_error: overlap.arg().abs(),
                max_deviation: mapped.max_abs_diff(&column),
            }
        })
        .collect();
    let min_fidelity = per_k
        .iter()
        .map(|r| r.fidelity)
        .fold(f64::INFINITY, f64::min);
    let max_phase_error = per_k.iter().map(|r| r.phase_error).fold(0.0, f64::max);
    let max_deviation = per_k.iter().map(|r| r.max_deviation).fold(0.0, f64::max);
    EquivalenceReport {
        half_size: model.half_size(),
        ring_size: m,
        per_k,
        min_fidelity,
        max_phase_error,
        max_deviation,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ApproxRow {
    pub k: usize,
    pub best_match_j: usize,
    #[serde(serialize_with = "sig15")]
    pub fidelity: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ApproxReport {
    pub target_dimension: usize,
    pub circuit_qubits: usize,
    /// `log2(target_dimension)`, the non-integer register size the ring would need.
    #[serde(serialize_with = "sig15")]
    pub fractional_qubits: f64,
    pub rows: Vec<ApproxRow>,
    #[serde(serialize_with = "sig15")]
    pub mean_fidelity: f64,
    #[serde(serialize_with = "sig15")]
    pub min_fidelity: f64,
}

/// Scores how well the `2^circuit_qubits`-dimensional QFT circuit reproduces
/// the `target_dimension`-point DFT. Circuit columns are zero-padded at the
/// highest indices; each target column `k` is matched with the circuit column
/// of largest overlap modulus (lowest `j` on ties).
pub fn approximation_report(
    target_dimension: usize,
    circuit_qubits: usize,
) -> Result<ApproxReport> {
    let circuit = qft_circuit(circuit_qubits)?;
    let unitary = circuit_unitary(&circuit)?;
    let dim = unitary.cols();
    if target_dimension < dim {
        return Err(Error::OutOfRange {
            name: "target dimension",
            value: target_dimension as i64,
            min: dim as i64,
            max: i64::MAX,
        });
    }
    let padded: Vec<ComplexVector> = (0..dim)
        .map(|j| {
            let mut col = unitary.column(j).into_inner();
            col.resize(target_dimension, Complex64::new(0.0, 0.0));
            ComplexVector::new(col)
        })
        .collect();

    let target = dft_matrix(target_dimension);
    let rows: Vec<ApproxRow> = (0..target_dimension)
        .map(|k| {
            let column = target.column(k);
            let (best_match_j, fidelity) = padded
                .iter()
                .map(|u| u.inner(&column).norm())
                .enumerate()
                .fold((0, f64::NEG_INFINITY), |best, (j, f)| {
                    if f > best.1 {
                        (j, f)
                    } else {
                        best
                    }
                });
            ApproxRow {
                k,
                best_match_j,
                fidelity,
            }
        })
        .collect();
    let mean_fidelity = rows.iter().map(|r| r.fidelity).sum::<f64>() / rows.len() as f64;
    let min_fidelity = rows
        .iter()
        .map(|r| r.fidelity)
        .fold(f64::INFINITY, f64::min);
    Ok(ApproxReport {
        target_dimension,
        circuit_qubits,
        fractional_qubits: fractional_qubits(target_dimension),
        rows,
        mean_fidelity,
        min_fidelity,
    })
}
