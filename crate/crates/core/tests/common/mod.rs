//! Reference constructions that share no code with the library routes they
//! check.

#![allow(dead_code)]

use std::f64::consts::PI;

use exciton_qft::{ComplexMatrix, ComplexVector};
use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

/// DFT straight from `y_k = M^{-1/2} Σ_j x_j exp(2πi jk/M)`, no index reduction.
pub fn dft_oracle(m: usize) -> Vec<Vec<Complex64>> {
    let s = 1.0 / (m as f64).sqrt();
    (0..m)
        .map(|k| {
            (0..m)
                .map(|j| Complex64::new(0.0, 2.0 * PI * (j * k) as f64 / m as f64).exp() * s)
                .collect()
        })
        .collect()
}

pub fn dft_oracle_column(m: usize, col: usize) -> Vec<Complex64> {
    dft_oracle(m).into_iter().map(|row| row[col]).collect()
}

/// Real circulant with `e0` on the diagonal and `v0` added for each ring
/// neighbour bond (a two-site ring has two bonds between the same pair).
pub fn circulant_oracle(sites: usize, e0: f64, v0: f64) -> DMatrix<f64> {
    let mut h = DMatrix::<f64>::zeros(sites, sites);
    for j in 0..sites {
        h[(j, j)] += e0;
        h[(j, (j + 1) % sites)] += v0;
        h[((j + 1) % sites, j)] += v0;
    }
    h
}

pub fn sorted_eigenvalues(h: DMatrix<f64>) -> Vec<f64> {
    let mut ev: Vec<f64> = SymmetricEigen::new(h).eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

pub fn max_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn as_vec(v: &ComplexVector) -> Vec<Complex64> {
    v.iter().copied().collect()
}

pub fn matrix_oracle_diff(m: &ComplexMatrix, oracle: &[Vec<Complex64>]) -> f64 {
    let mut worst: f64 = 0.0;
    for (r, row) in oracle.iter().enumerate() {
        for (c, z) in row.iter().enumerate() {
            worst = worst.max((m[(r, c)] - z).norm());
        }
    }
    worst
}

/// `bits` of `k` MSB first.
pub fn bits_of(k: usize, n: usize) -> Vec<u8> {
    (0..n).map(|i| ((k >> (n - 1 - i)) & 1) as u8).collect()
}

/// `0.b_0 b_1 …` as an exact sum of halves.
pub fn binary_fraction_oracle(bits: &[u8]) -> f64 {
    bits.iter()
        .enumerate()
        .map(|(i, &b)| b as f64 / 2f64.powi(i as i32 + 1))
        .sum()
}

/// Single-qubit factors, each `[amp0, amp1]`, combined into a state vector
/// with factor 0 as the most significant qubit.
pub fn kron_oracle(factors: &[[Complex64; 2]]) -> Vec<Complex64> {
    let mut state = vec![Complex64::new(1.0, 0.0)];
    for f in factors {
        state = state.iter().flat_map(|a| [a * f[0], a * f[1]]).collect();
    }
    state
}

pub fn fourier_factor(fraction: f64) -> [Complex64; 2] {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    [
        Complex64::new(h, 0.0),
        Complex64::new(0.0, 2.0 * PI * fraction).exp() * h,
    ]
}

pub fn bit_factor(bit: u8) -> [Complex64; 2] {
    if bit == 0 {
        [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]
    } else {
        [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]
    }
}

/// Expected register after the first `stage` blocks of the QFT circuit on
/// `|k⟩`: qubit `q < stage` holds phase `0.k_{q+1}…k_n`, the rest still hold
/// their input bits.
pub fn staged_oracle(k: usize, n: usize, stage: usize) -> Vec<Complex64> {
    let bits = bits_of(k, n);
    let factors: Vec<[Complex64; 2]> = (0..n)
        .map(|q| {
            if q < stage {
                fourier_factor(binary_fraction_oracle(&bits[q..]))
            } else {
                bit_factor(bits[q])
            }
        })
        .collect();
    kron_oracle(&factors)
}
