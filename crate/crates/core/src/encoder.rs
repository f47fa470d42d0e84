//! Spacer encoding pass.
//!
//! Each logical qubit `k` becomes a data site at `(k−1)·m + 1` followed by
//! `m − 1` spacer sites held in `|0⟩`. One-qubit gates move to the data site;
//! a neighbour two-qubit gate carries data qubit `k` across its spacers with
//! adjacent swaps, applies the gate on `(k·m, k·m + 1)`, and swaps back.

use serde::Serialize;

use crate::basis::BasisState;
use crate::circuit::{Encoding, LogicalCircuit, LogicalGate, PhysicalCircuit, PhysicalGate};
use crate::error::{Error, Result};
use crate::gates::Mat4;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EncodingParams {
    pub m: usize,
    pub dual_rail: bool,
}

impl EncodingParams {
    pub fn new(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::Domain("spacer multiplicity m must be at least 1".into()));
        }
        Ok(Self {
            m,
            dual_rail: false,
        })
    }

    /// Dual-rail pairs without spacers.
    pub fn dual_rail() -> Self {
        Self {
            m: 1,
            dual_rail: true,
        }
    }

    pub fn encoding(&self, logical_qubits: usize) -> Encoding {
        Encoding {
            logical_qubits,
            m: self.m,
            dual_rail: self.dual_rail,
        }
    }
}

/// Exact space and time accounting of a compiled circuit.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ResourceReport {
    pub logical_qubits: usize,
    pub logical_steps: usize,
    pub m: usize,
    /// `L′`
    pub physical_qubits: usize,
    /// `P′`
    pub physical_steps: usize,
    /// `(2m − 1)·P`
    pub physical_steps_bound: usize,
    /// `δ′/δ ≤ m⁻³`
    pub coupling_ratio_bound: f64,
}

impl ResourceReport {
    pub fn delta_prime_bound<T: Scalar>(&self, delta: T) -> T {
        delta / T::from_count(self.m).powi(3)
    }
}

fn check_m(m: usize) -> Result<()> {
    if m == 0 {
        Err(Error::Domain("spacer multiplicity m must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// Each logical bit followed by `m − 1` zeros.
pub fn encode_basis(bits: &BasisState, m: usize) -> Result<BasisState> {
    check_m(m)?;
    let mut out = Vec::with_capacity(bits.len() * m);
    for &b in bits.bits() {
        out.push(b);
        out.extend(std::iter::repeat_n(false, m - 1));
    }
    Ok(BasisState::new(out))
}

/// Read the logical bitstring back from the data sites.
pub fn decode_basis(bits: &BasisState, encoding: &Encoding) -> Result<BasisState> {
    expect_len(bits, encoding)?;
    let decoded = (1..=encoding.logical_qubits)
        .map(|k| bits.bits()[encoding.home_site(k) - 1])
        .collect();
    Ok(BasisState::new(decoded))
}

/// Physical site of logical qubit `k` (both 1-based): `(k−1)·m + 1`.
pub fn data_position(k: usize, m: usize, logical_qubits: usize) -> Result<usize> {
    check_m(m)?;
    if k == 0 || k > logical_qubits {
        return Err(Error::IndexOutOfRange {
            index: k,
            max: logical_qubits,
        });
    }
    Ok((k - 1) * m + 1)
}

/// Swaps carrying data qubit `k` from its home site to site `k·m`, in
/// application order.
pub fn swap_chain<T: Scalar>(k: usize, m: usize) -> Result<Vec<PhysicalGate<T>>> {
    check_m(m)?;
    if k == 0 {
        return Err(Error::IndexOutOfRange { index: 0, max: 0 });
    }
    let home = (k - 1) * m + 1;
    Ok((0..m - 1).map(|i| PhysicalGate::Swap { site: home + i }).collect())
}

/// Compile the logical gate `matrix` on `(first, second)` into `2m − 1`
/// physical gates. Only neighbours `second = first + 1` are accepted.
pub fn compile_two_qubit<T: Scalar>(
    first: usize,
    second: usize,
    matrix: &Mat4<T>,
    m: usize,
) -> Result<Vec<PhysicalGate<T>>> {
    if second != first + 1 {
        return Err(Error::UnsupportedGate(format!(
            "two-qubit gate on logical qubits ({first}, {second}) is not a neighbour pair (k, k+1)"
        )));
    }
    let chain = swap_chain::<T>(first, m)?;
    let mut out = Vec::with_capacity(2 * m - 1);
    out.extend(chain.iter().cloned());
    out.push(PhysicalGate::TwoQubitAdjacent {
        site: first * m,
        matrix: *matrix,
    });
    out.extend(chain.into_iter().rev());
    Ok(out)
}

/// Rewrite `circuit` onto the spacer-encoded register.
pub fn compile_circuit<T: Scalar>(
    circuit: &LogicalCircuit<T>,
    params: &EncodingParams,
) -> Result<(PhysicalCircuit<T>, ResourceReport)> {
    check_m(params.m)?;
    let l = circuit.qubits();
    let m = params.m;
    let encoding = params.encoding(l);

    let gates = if params.dual_rail {
        if m != 1 {
            return Err(Error::UnsupportedGate(
                "dual-rail encoding does not combine with spacers".into(),
            ));
        }
        circuit
            .gates()
            .iter()
            .map(|g| match g {
                LogicalGate::Wait { steps } => Ok(PhysicalGate::Wait { steps: *steps }),
                _ => Err(Error::UnsupportedGate(
                    "dual-rail encoding supports idle circuits only".into(),
                )),
            })
            .collect::<Result<Vec<_>>>()?
    } else {
        let mut gates = Vec::new();
        for g in circuit.gates() {
            match g {
                LogicalGate::OneQubit { target, matrix } => gates.push(PhysicalGate::OneQubit {
                    site: data_position(*target, m, l)?,
                    matrix: *matrix,
                }),
                LogicalGate::TwoQubitNeighbor { first, matrix } => {
                    gates.extend(compile_two_qubit(*first, *first + 1, matrix, m)?)
                }
                LogicalGate::Wait { steps } => gates.push(PhysicalGate::Wait { steps: *steps }),
            }
        }
        gates
    };

    let physical = PhysicalCircuit::new(encoding.physical_sites(), gates)?.with_encoding(encoding);
    let logical_steps = circuit.step_count();
    let report = ResourceReport {
        logical_qubits: l,
        logical_steps,
        m,
        physical_qubits: encoding.physical_sites(),
        physical_steps: physical.step_count(),
        physical_steps_bound: (2 * m - 1) * logical_steps,
        coupling_ratio_bound: 1.0 / (m as f64).powi(3),
    };
    Ok((physical, report))
}

/// `0 ↦ 01`, `1 ↦ 10` per logical qubit.
pub fn dual_rail_encode(bits: &BasisState) -> BasisState {
    BasisState::new(bits.bits().iter().flat_map(|&b| [b, !b]).collect())
}

/// `true` iff every spacer site of the encoded register holds 0.
pub fn check_spacer_sites(bits: &BasisState, encoding: &Encoding) -> Result<bool> {
    expect_len(bits, encoding)?;
    Ok(bits
        .bits()
        .iter()
        .enumerate()
        .all(|(i, &b)| i % encoding.m == 0 || !b))
}

fn expect_len(bits: &BasisState, encoding: &Encoding) -> Result<()> {
    let expected = encoding.m * encoding.logical_qubits;
    if bits.len() != expected {
        return Err(Error::SizeMismatch {
            expected,
            found: bits.len(),
        });
    }
    Ok(())
}
