//! Hidden subgroup states over the cyclic group `Z_N`.
//!
//! For a subgroup of order `sub_order` the generator is `d = N / sub_order`.
//! The state
//!
//! ```text
//! ψ_f = d^{-1/2} Σ_{t=0}^{d-1} exp(2πi j0 t sub_order / N) |t sub_order⟩
//! ```
//!
//! is supported on multiples of `sub_order`; its Fourier transform is
//! supported on the coset `-j0 + dZ_N`, whose spacing reveals `d`. With
//! `sub_order = 1` the state is the DFT column `j0` itself.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::circuit_sim::dft_matrix;
use crate::error::{check_range, Error, Result};
use crate::linalg::ComplexVector;

/// Amplitudes at or below this modulus are treated as zero when reading the
/// support of a transformed state.
pub const SUPPORT_THRESHOLD: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HspInstance {
    group_order: usize,
    subgroup_order: usize,
    coset_offset: usize,
}

impl HspInstance {
    pub fn new(group_order: usize, subgroup_order: usize, coset_offset: usize) -> Result<Self> {
        if group_order == 0 {
            return Err(Error::InvalidModel("group order must be positive".into()));
        }
        if subgroup_order == 0 || !group_order.is_multiple_of(subgroup_order) {
            return Err(Error::Divisibility {
                group_order,
                sub_order: subgroup_order,
            });
        }
        check_range(
            "coset offset j0",
            coset_offset as i64,
            0,
            group_order as i64 - 1,
        )?;
        Ok(Self {
            group_order,
            subgroup_order,
            coset_offset,
        })
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    pub fn subgroup_order(&self) -> usize {
        self.subgroup_order
    }

    pub fn coset_offset(&self) -> usize {
        self.coset_offset
    }

    /// `d = N / sub_order`.
    pub fn generator(&self) -> usize {
        self.group_order / self.subgroup_order
    }
}

pub fn psi_f(inst: &HspInstance) -> ComplexVector {
    let n = inst.group_order;
    let m = inst.subgroup_order;
    let d = inst.generator();
    let amp = 1.0 / (d as f64).sqrt();
    let mut psi = ComplexVector::zeros(n);
    for t in 0..d {
        let turns = (inst.coset_offset * t * m) % n;
        psi[t * m] = Complex64::from_polar(amp, 2.0 * PI * turns as f64 / n as f64);
    }
    psi
}

/// Indices whose amplitude modulus exceeds [`SUPPORT_THRESHOLD`].
pub fn support(v: &ComplexVector) -> Vec<usize> {
    v.iter()
        .enumerate()
        .filter(|(_, a)| a.norm() > SUPPORT_THRESHOLD)
        .map(|(i, _)| i)
        .collect()
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Smallest `d` dividing `N` such that the support is invariant under
/// translation by `d`: the gcd of `N` with all offsets from the first support
/// element.
pub fn support_period(support: &[usize], group_order: usize) -> usize {
    let Some(&first) = support.first() else {
        return group_order;
    };
    support
        .iter()
        .map(|&s| (s + group_order - first) % group_order)
        .fold(group_order, gcd)
}

/// Fourier-transforms `ψ_f` with exact amplitudes and reads the generator off
/// the spacing of the resulting support.
pub fn recover_generator(inst: &HspInstance) -> usize {
    let transformed = dft_matrix(inst.group_order)
        .mul_vec(&psi_f(inst))
        .expect("ψ_f has the group order as its length");
    support_period(&support(&transformed), inst.group_order)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HspReport {
    pub group_order: usize,
    pub subgroup_order: usize,
    pub coset_offset: usize,
    pub generator: usize,
    pub recovered: usize,
    #[serde(rename = "match")]
    pub matches: bool,
}

pub fn hsp_report(inst: &HspInstance) -> HspReport {
    let recovered = recover_generator(inst);
    HspReport {
        group_order: inst.group_order,
        subgroup_order: inst.subgroup_order,
        coset_offset: inst.coset_offset,
        generator: inst.generator(),
        recovered,
        matches: recovered == inst.generator(),
    }
}
