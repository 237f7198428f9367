//! Nearest-neighbour exciton model of a circular aggregate of `2N` identical
//! chromophores.
//!
//! Site `j` (paper-style label `1..=2N`) is stored at zero-based index `j - 1`.
//! Every site couples to its two ring neighbours with strength `V0`, giving a
//! real symmetric circulant Hamiltonian whose eigenvectors are plane waves
//! around the ring:
//!
//! ```text
//! |n⟩ = (2N)^{-1/2} Σ_j exp(i j n π / N) |j⟩,   ε_n = E0 + 2 V0 cos(n π / N)
//! ```
//!
//! with quantum number `n ∈ [-N+1, N]`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{check_range, Error, Result};
use crate::linalg::{ComplexMatrix, ComplexVector};

/// Relative tolerance under which two energies count as degenerate.
pub const DEGENERACY_RTOL: f64 = 1e-9;

/// `|a - b| <= 1e-9 * max(1, |a|)`.
pub fn is_degenerate(a: f64, b: f64) -> bool {
    (a - b).abs() <= DEGENERACY_RTOL * a.abs().max(1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RingModel {
    half_size: usize,
    site_energy: f64,
    coupling: f64,
}

impl RingModel {
    pub fn new(half_size: usize, site_energy: f64, coupling: f64) -> Result<Self> {
        if half_size == 0 {
            return Err(Error::InvalidModel("half size N must be at least 1".into()));
        }
        if !site_energy.is_finite() || !coupling.is_finite() {
            return Err(Error::InvalidModel(
                "site energy and coupling must be finite".into(),
            ));
        }
        Ok(Self {
            half_size,
            site_energy,
            coupling,
        })
    }

    /// Ring of `2N` sites with `E0 = 0` and `V0 = 1`.
    pub fn with_half_size(half_size: usize) -> Result<Self> {
        Self::new(half_size, 0.0, 1.0)
    }

    /// The 16-site B850 ring (`N = 8`).
    pub fn molischianum() -> Self {
        Self::with_half_size(8).expect("N = 8 is valid")
    }

    /// The 18-site B850 ring (`N = 9`).
    pub fn acidophila() -> Self {
        Self::with_half_size(9).expect("N = 9 is valid")
    }

    pub fn half_size(&self) -> usize {
        self.half_size
    }

    /// Number of sites `M = 2N`.
    pub fn ring_size(&self) -> usize {
        2 * self.half_size
    }

    pub fn site_energy(&self) -> f64 {
        self.site_energy
    }

    pub fn coupling(&self) -> f64 {
        self.coupling
    }

    pub fn min_quantum_number(&self) -> i64 {
        1 - self.half_size as i64
    }

    pub fn max_quantum_number(&self) -> i64 {
        self.half_size as i64
    }

    /// All valid `n`, ascending.
    pub fn quantum_numbers(&self) -> impl Iterator<Item = i64> {
        self.min_quantum_number()..=self.max_quantum_number()
    }

    pub(crate) fn check_quantum_number(&self, n: i64) -> Result<()> {
        check_range(
            "quantum number n",
            n,
            self.min_quantum_number(),
            self.max_quantum_number(),
        )
    }
}

impl Default for RingModel {
    fn default() -> Self {
        Self::molischianum()
    }
}

/// Circulant Hamiltonian with `E0` on the diagonal and `V0` between ring
/// neighbours. For `N = 1` both hops of a site land on the same partner, so
/// the off-diagonal entry is `2 V0`.
pub fn build_hamiltonian(model: &RingModel) -> ComplexMatrix {
    let m = model.ring_size();
    let mut h = ComplexMatrix::zeros(m, m);
    for j in 0..m {
        h[(j, j)] += Complex64::new(model.site_energy, 0.0);
        h[(j, (j + 1) % m)] += Complex64::new(model.coupling, 0.0);
        h[(j, (j + m - 1) % m)] += Complex64::new(model.coupling, 0.0);
    }
    h
}

pub fn exciton_state(model: &RingModel, n: i64) -> Result<ComplexVector> {
    model.check_quantum_number(n)?;
    let m = model.ring_size();
    let norm = 1.0 / (m as f64).sqrt();
    let half = model.half_size as f64;
    Ok((1..=m)
        .map(|j| Complex64::from_polar(norm, (j as f64) * (n as f64) * PI / half))
        .collect())
}

pub fn exciton_energy(model: &RingModel, n: i64) -> Result<f64> {
    model.check_quantum_number(n)?;
    Ok(analytic_energy(model, n))
}

fn analytic_energy(model: &RingModel, n: i64) -> f64 {
    model.site_energy + 2.0 * model.coupling * (n as f64 * PI / model.half_size as f64).cos()
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumEntry {
    pub n: i64,
    pub energy: f64,
    pub state: ComplexVector,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExcitonSpectrum {
    model: RingModel,
    entries: Vec<SpectrumEntry>,
}

impl ExcitonSpectrum {
    pub fn model(&self) -> &RingModel {
        &self.model
    }

    /// Entries in ascending energy; degenerate energies are ordered by `n`.
    pub fn entries(&self) -> &[SpectrumEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, n: i64) -> Option<&SpectrumEntry> {
        self.entries.iter().find(|e| e.n == n)
    }

    /// The `n = N` entry, which sits at `E0 - 2 V0`.
    pub fn band_edge(&self) -> &SpectrumEntry {
        self.get(self.model.max_quantum_number())
            .expect("spectrum always contains n = N")
    }

    /// Entries attaining the minimum energy (more than one when degenerate).
    pub fn ground_entries(&self) -> Vec<&SpectrumEntry> {
        let Some(first) = self.entries.first() else {
            return Vec::new();
        };
        self.entries
            .iter()
            .take_while(|e| is_degenerate(first.energy, e.energy))
            .collect()
    }
}

pub fn full_spectrum(model: &RingModel) -> ExcitonSpectrum {
    let mut entries: Vec<SpectrumEntry> = model
        .quantum_numbers()
        .map(|n| SpectrumEntry {
            n,
            energy: analytic_energy(model, n),
            state: exciton_state(model, n).expect("n drawn from the valid range"),
        })
        .collect();

    entries.sort_by(|a, b| a.energy.total_cmp(&b.energy).then(a.n.cmp(&b.n)));
    // Re-order runs of numerically degenerate energies by n so that round-off
    // in cos never decides the order of a ±n pair.
    let mut start = 0;
    while start < entries.len() {
        let anchor = entries[start].energy;
        let mut end = start + 1;
        while end < entries.len() && is_degenerate(anchor, entries[end].energy) {
            end += 1;
        }
        entries[start..end].sort_by_key(|e| e.n);
        start = end;
    }

    ExcitonSpectrum {
        model: *model,
        entries,
    }
}

/// The degenerate `n = N-1` and `n = -N+1` states, in that order.
pub fn bright_pair(model: &RingModel) -> Result<(SpectrumEntry, SpectrumEntry)> {
    if model.half_size < 2 {
        return Err(Error::DegenerateGeometry(
            "the n = ±(N-1) pair collapses to a single n = 0 state for N = 1".into(),
        ));
    }
    let upper = model.max_quantum_number() - 1;
    let entry = |n| -> Result<SpectrumEntry> {
        Ok(SpectrumEntry {
            n,
            energy: exciton_energy(model, n)?,
            state: exciton_state(model, n)?,
        })
    };
    Ok((entry(upper)?, entry(-upper)?))
}
