//! State-vector simulation of circuits built from `H`, controlled `R_p` and
//! `SWAP` gates, and synthesis of the quantum Fourier transform circuit from
//! its product representation.
//!
//! Qubit 0 is the most significant bit of the amplitude index, so the basis
//! state `|k₁k₂…kₙ⟩` lives at index `k = k₁2^{n-1} + … + kₙ`. Gates act through
//! bit masks on the amplitude array; dense matrices only appear in
//! [`circuit_unitary`] and [`dft_matrix`].

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, ComplexVector};

/// Size bounds for state vectors and dense unitaries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_state_qubits: usize,
    pub max_unitary_qubits: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_state_qubits: 24,
            max_unitary_qubits: 12,
        }
    }
}

impl Limits {
    fn check_state(&self, n_qubits: usize) -> Result<()> {
        if n_qubits == 0 || n_qubits > self.max_state_qubits {
            return Err(Error::Capacity {
                what: "qubits",
                value: n_qubits,
                limit: self.max_state_qubits,
            });
        }
        Ok(())
    }

    fn check_unitary(&self, n_qubits: usize) -> Result<()> {
        if n_qubits > self.max_unitary_qubits {
            return Err(Error::Capacity {
                what: "qubits for a dense unitary",
                value: n_qubits,
                limit: self.max_unitary_qubits,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gate {
    H {
        target: usize,
    },
    /// `diag(1, exp(2πi / 2^p))` on `target`, conditioned on `control = 1`.
    CRp {
        control: usize,
        target: usize,
        p: u32,
    },
    Swap {
        a: usize,
        b: usize,
    },
}

impl Gate {
    pub fn name(&self) -> &'static str {
        match self {
            Gate::H { .. } => "H",
            Gate::CRp { .. } => "CRp",
            Gate::Swap { .. } => "SWAP",
        }
    }

    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::H { target } => vec![target],
            Gate::CRp {
                control, target, ..
            } => vec![control, target],
            Gate::Swap { a, b } => vec![a, b],
        }
    }

    pub fn validate(&self, n_qubits: usize) -> Result<()> {
        for index in self.qubits() {
            if index >= n_qubits {
                return Err(Error::InvalidQubit { index, n_qubits });
            }
        }
        match *self {
            Gate::CRp { control, target, p } => {
                if control == target {
                    return Err(Error::RepeatedQubit("CRp"));
                }
                if p < 2 {
                    return Err(Error::InvalidPhaseOrder(p));
                }
            }
            Gate::Swap { a, b } if a == b => return Err(Error::RepeatedQubit("SWAP")),
            _ => {}
        }
        Ok(())
    }
}

/// Phase `exp(2πi / 2^p)` applied by `R_p`.
pub fn rp_phase(p: u32) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI / 2f64.powi(p as i32))
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amplitudes: ComplexVector,
}

impl StateVector {
    /// Computational basis state `|k⟩`.
    pub fn basis(n_qubits: usize, k: usize) -> Result<Self> {
        Limits::default().check_state(n_qubits)?;
        check_basis_index(n_qubits, k)?;
        Ok(Self {
            n_qubits,
            amplitudes: ComplexVector::basis(1 << n_qubits, k),
        })
    }

    /// Wraps an amplitude vector whose length must be a power of two.
    pub fn from_amplitudes(amplitudes: ComplexVector) -> Result<Self> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::DimensionMismatch {
                expected: len.next_power_of_two().max(2),
                found: len,
            });
        }
        let n_qubits = len.trailing_zeros() as usize;
        Limits::default().check_state(n_qubits)?;
        Ok(Self {
            n_qubits,
            amplitudes,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &ComplexVector {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> ComplexVector {
        self.amplitudes
    }

    fn mask(&self, qubit: usize) -> usize {
        1 << (self.n_qubits - 1 - qubit)
    }

    pub fn apply(&mut self, gate: &Gate) -> Result<()> {
        gate.validate(self.n_qubits)?;
        let amps = self.amplitudes.as_mut_slice();
        match *gate {
            Gate::H { target } => {
                let m = 1 << (self.n_qubits - 1 - target);
                for block in amps.chunks_exact_mut(2 * m) {
                    let (lo, hi) = block.split_at_mut(m);
                    for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                        (*a, *b) = ((*a + *b) * FRAC_1_SQRT_2, (*a - *b) * FRAC_1_SQRT_2);
                    }
                }
            }
            Gate::CRp { control, target, p } => {
                let both =
                    (1 << (self.n_qubits - 1 - control)) | (1 << (self.n_qubits - 1 - target));
                let phase = rp_phase(p);
                for (i, a) in amps.iter_mut().enumerate() {
                    if i & both == both {
                        *a *= phase;
                    }
                }
            }
            Gate::Swap { a, b } => {
                let (ma, mb) = (1 << (self.n_qubits - 1 - a), 1 << (self.n_qubits - 1 - b));
                for i in 0..amps.len() {
                    if i & ma != 0 && i & mb == 0 {
                        amps.swap(i, i ^ ma ^ mb);
                    }
                }
            }
        }
        Ok(())
    }

    pub fn bit(&self, index: usize, qubit: usize) -> bool {
        index & self.mask(qubit) != 0
    }
}

fn check_basis_index(n_qubits: usize, k: usize) -> Result<()> {
    let dim = 1usize << n_qubits;
    if k >= dim {
        return Err(Error::OutOfRange {
            name: "basis index k",
            value: k as i64,
            min: 0,
            max: dim as i64 - 1,
        });
    }
    Ok(())
}

/// Value-semantics gate application: returns the transformed state.
pub fn apply_gate(state: &StateVector, gate: &Gate) -> Result<StateVector> {
    let mut out = state.clone();
    out.apply(gate)?;
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    n_qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(n_qubits: usize) -> Result<Self> {
        Limits::default().check_state(n_qubits)?;
        Ok(Self {
            n_qubits,
            gates: Vec::new(),
        })
    }

    pub fn from_gates(n_qubits: usize, gates: Vec<Gate>) -> Result<Self> {
        let mut circuit = Self::new(n_qubits)?;
        for gate in gates {
            circuit.push(gate)?;
        }
        Ok(circuit)
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.validate(self.n_qubits)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn count(&self, name: &str) -> usize {
        self.gates.iter().filter(|g| g.name() == name).count()
    }

    pub fn apply_to(&self, state: &mut StateVector) -> Result<()> {
        if state.n_qubits != self.n_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.n_qubits,
                found: state.n_qubits,
            });
        }
        self.gates.iter().try_for_each(|g| state.apply(g))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&CircuitRecord::from(self))
            .expect("circuit records always serialize")
    }

    pub fn from_json(text: &str) -> std::result::Result<Self, CircuitParseError> {
        let record: CircuitRecord = serde_json::from_str(text)?;
        Ok(Self::try_from(record)?)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CircuitParseError {
    #[error("malformed circuit JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid circuit: {0}")]
    Invalid(#[from] Error),
}

/// Wire form of a circuit: `{n_qubits, gates: [{kind, targets, p?}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircuitRecord {
    pub n_qubits: usize,
    pub gates: Vec<GateRecord>,
}

/// `targets` lists `[target]` for `H`, `[control, target]` for `CRp` and
/// `[a, b]` for `SWAP`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateRecord {
    pub kind: String,
    pub targets: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub p: Option<u32>,
}

impl From<&Gate> for GateRecord {
    fn from(g: &Gate) -> Self {
        Self {
            kind: g.name().to_string(),
            targets: g.qubits(),
            p: match *g {
                Gate::CRp { p, .. } => Some(p),
                _ => None,
            },
        }
    }
}

impl From<&Circuit> for CircuitRecord {
    fn from(c: &Circuit) -> Self {
        Self {
            n_qubits: c.n_qubits,
            gates: c.gates.iter().map(GateRecord::from).collect(),
        }
    }
}

impl TryFrom<&GateRecord> for Gate {
    type Error = Error;

    fn try_from(r: &GateRecord) -> Result<Gate> {
        let arity = |want: usize| {
            if r.targets.len() == want {
                Ok(())
            } else {
                Err(Error::DimensionMismatch {
                    expected: want,
                    found: r.targets.len(),
                })
            }
        };
        match r.kind.as_str() {
            "H" => {
                arity(1)?;
                Ok(Gate::H {
                    target: r.targets[0],
                })
            }
            "CRp" => {
                arity(2)?;
                Ok(Gate::CRp {
                    control: r.targets[0],
                    target: r.targets[1],
                    p: r.p.ok_or(Error::InvalidPhaseOrder(0))?,
                })
            }
            "SWAP" => {
                arity(2)?;
                Ok(Gate::Swap {
                    a: r.targets[0],
                    b: r.targets[1],
                })
            }
            other => Err(Error::InvalidModel(format!("unknown gate kind {other:?}"))),
        }
    }
}

impl TryFrom<CircuitRecord> for Circuit {
    type Error = Error;

    fn try_from(r: CircuitRecord) -> Result<Circuit> {
        let gates = r
            .gates
            .iter()
            .map(Gate::try_from)
            .collect::<Result<Vec<_>>>()?;
        Circuit::from_gates(r.n_qubits, gates)
    }
}

/// Gate blocks of the QFT circuit: block `q < n` is `H(q)` followed by
/// `R_2 … R_{n-q}` controlled by the lower qubits; the last block holds the
/// swaps that reverse qubit order.
pub fn qft_blocks(n: usize) -> Result<Vec<Vec<Gate>>> {
    Limits::default().check_state(n)?;
    let mut blocks: Vec<Vec<Gate>> = (0..n)
        .map(|q| {
            std::iter::once(Gate::H { target: q })
                .chain((1..n - q).map(|c| Gate::CRp {
                    control: q + c,
                    target: q,
                    p: c as u32 + 1,
                }))
                .collect()
        })
        .collect();
    blocks.push(
        (0..n / 2)
            .map(|q| Gate::Swap { a: q, b: n - 1 - q })
            .collect(),
    );
    Ok(blocks)
}

pub fn qft_circuit(n: usize) -> Result<Circuit> {
    let gates = qft_blocks(n)?.into_iter().flatten().collect();
    Circuit::from_gates(n, gates)
}

/// `n(n+1)/2` rotation gates plus `⌊n/2⌋` swaps.
pub fn qft_gate_count(n: usize) -> usize {
    n * (n + 1) / 2 + n / 2
}

pub fn circuit_unitary(circuit: &Circuit) -> Result<ComplexMatrix> {
    circuit_unitary_with(circuit, Limits::default())
}

pub fn circuit_unitary_with(circuit: &Circuit, limits: Limits) -> Result<ComplexMatrix> {
    limits.check_unitary(circuit.n_qubits)?;
    let dim = 1usize << circuit.n_qubits;
    let columns = (0..dim)
        .map(|k| {
            let mut state = StateVector::basis(circuit.n_qubits, k)?;
            circuit.apply_to(&mut state)?;
            Ok(state.into_amplitudes())
        })
        .collect::<Result<Vec<_>>>()?;
    ComplexMatrix::from_columns(&columns)
}

/// Unitary DFT with entries `exp(+2πi·j·k/M)/√M` at row `k`, column `j`.
pub fn dft_matrix(m: usize) -> ComplexMatrix {
    let scale = 1.0 / (m as f64).sqrt();
    ComplexMatrix::from_fn(m, m, |k, j| {
        let jk = (j * k) % m;
        Complex64::from_polar(scale, 2.0 * PI * jk as f64 / m as f64)
    })
}

/// Binary fraction `0.k_l k_{l+1} … k_n` of the `n`-bit integer `k`, with
/// `l` counted from 1 at the most significant bit.
pub fn binary_fraction(k: usize, n: usize, l: usize) -> f64 {
    debug_assert!((1..=n).contains(&l));
    let low_bits = n + 1 - l;
    (k & ((1 << low_bits) - 1)) as f64 / (1u64 << low_bits) as f64
}

/// Tensor product of single-qubit states `(|0⟩ + e^{iφ_q}|1⟩)/√2`, qubit 0
/// leftmost.
fn product_of_phases(phases: &[f64]) -> ComplexVector {
    let n = phases.len();
    let scale = 2f64.powf(-(n as f64) / 2.0);
    (0..1usize << n)
        .map(|x| {
            let angle: f64 = (0..n)
                .filter(|&q| x & (1 << (n - 1 - q)) != 0)
                .map(|q| phases[q])
                .sum();
            Complex64::from_polar(scale, angle)
        })
        .collect()
}

/// Product representation of `QFT|k⟩`: qubit `q` carries the phase
/// `2π·0.k_{n-q}…k_n`. Equals column `k` of `dft_matrix(2^n)`.
pub fn product_state(n: usize, k: usize) -> Result<StateVector> {
    Limits::default().check_state(n)?;
    check_basis_index(n, k)?;
    let phases: Vec<f64> = (0..n)
        .map(|q| 2.0 * PI * binary_fraction(k, n, n - q))
        .collect();
    StateVector::from_amplitudes(product_of_phases(&phases))
}

/// Runs the per-qubit blocks of the QFT circuit on `|k⟩` and returns the
/// state after each block. The last entry is the bit-reversed product state,
/// before the final swaps.
pub fn staged_apply(k: usize, n: usize) -> Result<Vec<StateVector>> {
    let blocks = qft_blocks(n)?;
    let mut state = StateVector::basis(n, k)?;
    let mut stages = Vec::with_capacity(n);
    for block in &blocks[..n] {
        for gate in block {
            state.apply(gate)?;
        }
        stages.push(state.clone());
    }
    Ok(stages)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn hadamard_on_zero() {
        let s = apply_gate(&StateVector::basis(1, 0).unwrap(), &Gate::H { target: 0 }).unwrap();
        let want = ComplexVector::new(vec![c(FRAC_1_SQRT_2, 0.0); 2]);
        assert!(s.amplitudes().max_abs_diff(&want) < 1e-15);
    }

    #[test]
    fn controlled_r2_on_one_one_is_quarter_phase() {
        let s = StateVector::basis(2, 3).unwrap();
        let gate = Gate::CRp {
            control: 0,
            target: 1,
            p: 2,
        };
        let out = apply_gate(&s, &gate).unwrap();
        assert!((out.amplitudes()[3] - c(0.0, 1.0)).norm() < 1e-15);
        // Other basis states are untouched.
        for k in 0..3 {
            let s = StateVector::basis(2, k).unwrap();
            assert_eq!(apply_gate(&s, &gate).unwrap(), s);
        }
    }

    #[test]
    fn swap_exchanges_qubits() {
        // |10⟩ -> |01⟩ with qubit 0 as the MSB.
        let s = StateVector::basis(2, 0b10).unwrap();
        let out = apply_gate(&s, &Gate::Swap { a: 0, b: 1 }).unwrap();
        assert_eq!(out, StateVector::basis(2, 0b01).unwrap());
    }

    #[test]
    fn gate_validation() {
        let s = StateVector::basis(2, 0).unwrap();
        assert_eq!(
            apply_gate(&s, &Gate::H { target: 2 }),
            Err(Error::InvalidQubit {
                index: 2,
                n_qubits: 2
            })
        );
        assert!(apply_gate(&s, &Gate::Swap { a: 1, b: 1 }).is_err());
        assert!(apply_gate(
            &s,
            &Gate::CRp {
                control: 0,
                target: 1,
                p: 1
            }
        )
        .is_err());
        assert!(apply_gate(
            &s,
            &Gate::CRp {
                control: 1,
                target: 1,
                p: 2
            }
        )
        .is_err());
    }

    #[test]
    fn small_qft_circuits() {
        assert_eq!(qft_circuit(1).unwrap().gates(), &[Gate::H { target: 0 }]);
        assert_eq!(
            qft_circuit(2).unwrap().gates(),
            &[
                Gate::H { target: 0 },
                Gate::CRp {
                    control: 1,
                    target: 0,
                    p: 2
                },
                Gate::H { target: 1 },
                Gate::Swap { a: 0, b: 1 },
            ]
        );
        assert!(qft_circuit(0).is_err());
        assert!(matches!(qft_circuit(25), Err(Error::Capacity { .. })));
    }

    #[test]
    fn four_qubit_layout() {
        let circuit = qft_circuit(4).unwrap();
        let labels: Vec<String> = circuit
            .gates()
            .iter()
            .map(|g| match *g {
                Gate::H { target } => format!("H{target}"),
                Gate::CRp { control, target, p } => format!("R{p}:{control}>{target}"),
                Gate::Swap { a, b } => format!("S{a}{b}"),
            })
            .collect();
        assert_eq!(
            labels.join(" "),
            "H0 R2:1>0 R3:2>0 R4:3>0 H1 R2:2>1 R3:3>1 H2 R2:3>2 H3 S03 S12"
        );
        assert_eq!(circuit.len(), qft_gate_count(4));
    }

    #[test]
    fn dense_unitary_edge_cases() {
        let empty = Circuit::new(2).unwrap();
        assert_eq!(circuit_unitary(&empty).unwrap(), ComplexMatrix::identity(4));
        let h = Circuit::from_gates(1, vec![Gate::H { target: 0 }]).unwrap();
        assert!(circuit_unitary(&h).unwrap().max_abs_diff(&dft_matrix(2)) < 1e-15);
        let big = Circuit::new(13).unwrap();
        assert!(matches!(circuit_unitary(&big), Err(Error::Capacity { .. })));
        let limits = Limits {
            max_state_qubits: 24,
            max_unitary_qubits: 2,
        };
        assert!(circuit_unitary_with(&Circuit::new(3).unwrap(), limits).is_err());
    }

    #[test]
    fn small_dft_matrices() {
        assert_eq!(dft_matrix(1), ComplexMatrix::identity(1));
        let col = dft_matrix(4).column(1);
        let want = ComplexVector::new(vec![c(0.5, 0.0), c(0.0, 0.5), c(-0.5, 0.0), c(0.0, -0.5)]);
        assert!(col.max_abs_diff(&want) < 1e-15);
        assert!(dft_matrix(18).is_unitary(1e-12));
    }

    #[test]
    fn single_qubit_product_states() {
        let plus = product_state(1, 0).unwrap();
        let minus = product_state(1, 1).unwrap();
        let h = FRAC_1_SQRT_2;
        assert!(
            plus.amplitudes()
                .max_abs_diff(&ComplexVector::new(vec![c(h, 0.0), c(h, 0.0)]))
                < 1e-15
        );
        assert!(
            minus
                .amplitudes()
                .max_abs_diff(&ComplexVector::new(vec![c(h, 0.0), c(-h, 0.0)]))
                < 1e-15
        );
        assert!(product_state(3, 8).is_err());
    }

    #[test]
    fn binary_fractions() {
        // k = 0b1011
        assert_eq!(binary_fraction(0b1011, 4, 1), 11.0 / 16.0);
        assert_eq!(binary_fraction(0b1011, 4, 2), 3.0 / 8.0);
        assert_eq!(binary_fraction(0b1011, 4, 4), 0.5);
        assert_eq!(binary_fraction(0b11, 2, 1), 0.75);
    }

    #[test]
    fn two_qubit_first_stage_for_k3() {
        // After H and R_2 on qubit 0, |11⟩ becomes (|0⟩ + e^{2πi·0.11}|1⟩)|1⟩/√2
        // and e^{2πi·3/4} = -i.
        let stages = staged_apply(3, 2).unwrap();
        let a = stages[0].amplitudes();
        let h = FRAC_1_SQRT_2;
        assert!((a[0b01] - c(h, 0.0)).norm() < 1e-15);
        assert!((a[0b11] - c(0.0, -h)).norm() < 1e-15);
        assert!(a[0b00].norm() < 1e-15 && a[0b10].norm() < 1e-15);
    }

    #[test]
    fn circuit_json_shape() {
        let json = qft_circuit(2).unwrap().to_json();
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value["n_qubits"], 2);
        assert_eq!(value["gates"][1]["kind"], "CRp");
        assert_eq!(value["gates"][1]["targets"], serde_json::json!([1, 0]));
        assert_eq!(value["gates"][1]["p"], 2);
        assert!(value["gates"][0].get("p").is_none());
        assert_eq!(Circuit::from_json(&json).unwrap(), qft_circuit(2).unwrap());
        assert!(
            Circuit::from_json(r#"{"n_qubits":1,"gates":[{"kind":"X","targets":[0]}]}"#).is_err()
        );
        assert!(
            Circuit::from_json(r#"{"n_qubits":1,"gates":[{"kind":"H","targets":[3]}]}"#).is_err()
        );
    }
}
