//! Gate-sequence representations before and after spacer encoding.
//!
//! All qubit and site indices are 1-based.

use crate::error::{Error, Result};
use crate::gates::{Mat2, Mat4};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub enum LogicalGate<T> {
    OneQubit { target: usize, matrix: Mat2<T> },
    /// Acts on logical qubits `(first, first + 1)`.
    TwoQubitNeighbor { first: usize, matrix: Mat4<T> },
    Wait { steps: usize },
}

impl<T: Scalar> LogicalGate<T> {
    /// Number of basic steps the gate occupies in the logical schedule.
    pub fn steps(&self) -> usize {
        match self {
            Self::Wait { steps } => *steps,
            _ => 1,
        }
    }

    fn validate(&self, qubits: usize) -> Result<()> {
        match self {
            Self::OneQubit { target, matrix } => {
                check_index(*target, qubits)?;
                matrix.check_unitary()
            }
            Self::TwoQubitNeighbor { first, matrix } => {
                check_index(*first, qubits)?;
                check_index(*first + 1, qubits)?;
                matrix.check_unitary()
            }
            Self::Wait { .. } => Ok(()),
        }
    }
}

fn check_index(index: usize, max: usize) -> Result<()> {
    if index == 0 || index > max {
        Err(Error::IndexOutOfRange { index, max })
    } else {
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LogicalCircuit<T> {
    qubits: usize,
    gates: Vec<LogicalGate<T>>,
}

impl<T: Scalar> LogicalCircuit<T> {
    pub fn new(qubits: usize, gates: Vec<LogicalGate<T>>) -> Result<Self> {
        if qubits == 0 {
            return Err(Error::InvalidCircuit("circuit needs at least one qubit".into()));
        }
        for g in &gates {
            g.validate(qubits)?;
        }
        Ok(Self { qubits, gates })
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn gates(&self) -> &[LogicalGate<T>] {
        &self.gates
    }

    /// `P`: non-wait gates plus the total of all wait steps.
    pub fn step_count(&self) -> usize {
        self.gates.iter().map(LogicalGate::steps).sum()
    }

    /// The inverse circuit: gates reversed and adjointed.
    pub fn inverse(&self) -> Self {
        let gates = self
            .gates
            .iter()
            .rev()
            .map(|g| match g {
                LogicalGate::OneQubit { target, matrix } => LogicalGate::OneQubit {
                    target: *target,
                    matrix: matrix.adjoint(),
                },
                LogicalGate::TwoQubitNeighbor { first, matrix } => {
                    LogicalGate::TwoQubitNeighbor {
                        first: *first,
                        matrix: matrix.adjoint(),
                    }
                }
                LogicalGate::Wait { steps } => LogicalGate::Wait { steps: *steps },
            })
            .collect();
        Self {
            qubits: self.qubits,
            gates,
        }
    }

    /// The same circuit viewed as a physical circuit on `L` sites, without
    /// spacers.
    pub fn to_physical(&self) -> PhysicalCircuit<T> {
        let gates = self
            .gates
            .iter()
            .map(|g| match g {
                LogicalGate::OneQubit { target, matrix } => PhysicalGate::OneQubit {
                    site: *target,
                    matrix: *matrix,
                },
                LogicalGate::TwoQubitNeighbor { first, matrix } => {
                    PhysicalGate::TwoQubitAdjacent {
                        site: *first,
                        matrix: *matrix,
                    }
                }
                LogicalGate::Wait { steps } => PhysicalGate::Wait { steps: *steps },
            })
            .collect();
        PhysicalCircuit {
            sites: self.qubits,
            gates,
            encoding: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum PhysicalGate<T> {
    OneQubit { site: usize, matrix: Mat2<T> },
    /// Acts on adjacent sites `(site, site + 1)`.
    TwoQubitAdjacent { site: usize, matrix: Mat4<T> },
    /// Exchanges sites `(site, site + 1)`.
    Swap { site: usize },
    Wait { steps: usize },
}

impl<T: Scalar> PhysicalGate<T> {
    pub fn steps(&self) -> usize {
        match self {
            Self::Wait { steps } => *steps,
            _ => 1,
        }
    }

    fn validate(&self, sites: usize) -> Result<()> {
        match self {
            Self::OneQubit { site, matrix } => {
                check_index(*site, sites)?;
                matrix.check_unitary()
            }
            Self::TwoQubitAdjacent { site, matrix } => {
                check_index(*site, sites)?;
                check_index(*site + 1, sites)?;
                matrix.check_unitary()
            }
            Self::Swap { site } => {
                check_index(*site, sites)?;
                check_index(*site + 1, sites)
            }
            Self::Wait { .. } => Ok(()),
        }
    }
}

/// How a physical register encodes a logical one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Encoding {
    pub logical_qubits: usize,
    /// Sites per logical qubit: the data site and `m − 1` spacers.
    pub m: usize,
    pub dual_rail: bool,
}

impl Encoding {
    /// Home site of logical qubit `k`, `(k−1)·m + 1`.
    pub fn home_site(&self, k: usize) -> usize {
        (k - 1) * self.m + 1
    }

    pub fn physical_sites(&self) -> usize {
        if self.dual_rail {
            2 * self.logical_qubits
        } else {
            self.m * self.logical_qubits
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PhysicalCircuit<T> {
    sites: usize,
    gates: Vec<PhysicalGate<T>>,
    encoding: Option<Encoding>,
}

impl<T: Scalar> PhysicalCircuit<T> {
    pub fn new(sites: usize, gates: Vec<PhysicalGate<T>>) -> Result<Self> {
        if sites == 0 {
            return Err(Error::InvalidCircuit("circuit needs at least one site".into()));
        }
        for g in &gates {
            g.validate(sites)?;
        }
        Ok(Self {
            sites,
            gates,
            encoding: None,
        })
    }

    pub(crate) fn with_encoding(mut self, encoding: Encoding) -> Self {
        self.encoding = Some(encoding);
        self
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn gates(&self) -> &[PhysicalGate<T>] {
        &self.gates
    }

    pub fn encoding(&self) -> Option<&Encoding> {
        self.encoding.as_ref()
    }

    pub fn step_count(&self) -> usize {
        self.gates.iter().map(PhysicalGate::steps).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn step_count_includes_waits() {
        let c = LogicalCircuit::<f64>::new(
            2,
            vec![
                LogicalGate::OneQubit {
                    target: 1,
                    matrix: Mat2::hadamard(),
                },
                LogicalGate::Wait { steps: 7 },
                LogicalGate::TwoQubitNeighbor {
                    first: 1,
                    matrix: Mat4::cz(),
                },
            ],
        )
        .unwrap();
        assert_eq!(c.step_count(), 9);
        assert_eq!(c.to_physical().step_count(), 9);
    }

    #[test]
    fn rejects_out_of_range_indices() {
        let err = LogicalCircuit::<f64>::new(
            2,
            vec![LogicalGate::TwoQubitNeighbor {
                first: 2,
                matrix: Mat4::cz(),
            }],
        );
        assert!(matches!(err, Err(Error::IndexOutOfRange { index: 3, max: 2 })));
        let err = LogicalCircuit::<f64>::new(
            2,
            vec![LogicalGate::OneQubit {
                target: 0,
                matrix: Mat2::hadamard(),
            }],
        );
        assert!(err.is_err());
        assert!(PhysicalCircuit::<f64>::new(3, vec![PhysicalGate::Swap { site: 3 }]).is_err());
    }

    #[test]
    fn rejects_non_unitary() {
        let mut m = Mat2::<f64>::identity();
        m.0[0][0] *= 2.0;
        let err = LogicalCircuit::new(1, vec![LogicalGate::OneQubit { target: 1, matrix: m }]);
        assert!(matches!(err, Err(Error::NonUnitary { .. })));
    }

    #[test]
    fn inverse_reverses_and_adjoints() {
        let u = Mat2::<f64>::euler(0.3, 0.9, -0.4);
        let c = LogicalCircuit::new(
            2,
            vec![
                LogicalGate::OneQubit { target: 2, matrix: u },
                LogicalGate::TwoQubitNeighbor {
                    first: 1,
                    matrix: Mat4::cnot(),
                },
            ],
        )
        .unwrap();
        let inv = c.inverse();
        assert!(matches!(inv.gates()[0], LogicalGate::TwoQubitNeighbor { .. }));
        match &inv.gates()[1] {
            LogicalGate::OneQubit { matrix, .. } => {
                assert!((*matrix * u).approx_eq(&Mat2::identity(), 1e-14))
            }
            g => panic!("unexpected {g:?}"),
        }
    }
}
