//! JSON circuit documents.
//!
//! ```json
//! {"qubits": 3,
//!  "gates": [{"op": "1q", "target": 2, "name": "h"},
//!            {"op": "2q", "target": [1, 2], "name": "cz"},
//!            {"op": "wait", "steps": 10},
//!            {"op": "1q", "target": 1, "matrix": [[0,0],[1,0],[1,0],[0,0]]}]}
//! ```
//!
//! `matrix` lists row-major `[re, im]` entries and overrides `name`. Named
//! gates are `h`, `x`, `z` (one-qubit) and `cz`, `cnot`, `swap` (two-qubit,
//! `cnot` controlled by the first listed target). Indices are 1-based.
//! Physical circuits written by the compiler carry an extra `encoding`
//! object with `m` and `logical_qubits`.

use serde::{Deserialize, Serialize};

use crate::circuit::{Encoding, LogicalCircuit, LogicalGate, PhysicalCircuit, PhysicalGate};
use crate::error::{Error, Result};
use crate::gates::{named_one_qubit, named_two_qubit, Mat2, Mat4, Matrix};
use crate::scalar::{Complex, Scalar};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircuitDoc {
    pub qubits: usize,
    pub gates: Vec<GateDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub encoding: Option<EncodingDoc>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EncodingDoc {
    pub m: usize,
    pub logical_qubits: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Target {
    One(usize),
    Many(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GateDoc {
    pub op: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<Target>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub steps: Option<usize>,
}

pub fn parse_document(text: &str) -> Result<CircuitDoc> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

pub fn write_document(doc: &CircuitDoc) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("circuit document serialises");
    s.push('\n');
    s
}

fn gate_label(i: usize, g: &GateDoc) -> String {
    format!("gate {} ({:?})", i + 1, g.op)
}

fn matrix_from<T: Scalar, const N: usize>(entries: &[[f64; 2]]) -> Result<Matrix<T, N>> {
    let cs: Vec<Complex<T>> = entries
        .iter()
        .map(|[re, im]| Complex::new(T::lit(*re), T::lit(*im)))
        .collect();
    Matrix::from_entries(&cs)
}

fn matrix_to<T: Scalar, const N: usize>(m: &Matrix<T, N>) -> Vec<[f64; 2]> {
    m.entries().map(|c| [c.re.as_f64(), c.im.as_f64()]).collect()
}

fn one_target(i: usize, g: &GateDoc) -> Result<usize> {
    match &g.target {
        Some(Target::One(k)) => Ok(*k),
        Some(Target::Many(v)) if v.len() == 1 => Ok(v[0]),
        _ => Err(Error::InvalidCircuit(format!(
            "{} needs a single target",
            gate_label(i, g)
        ))),
    }
}

/// `(lower, exchanged)` for a two-site target, where `exchanged` means the
/// targets were listed as `[k+1, k]`.
fn pair_target(i: usize, g: &GateDoc) -> Result<(usize, bool)> {
    let Some(Target::Many(v)) = &g.target else {
        return Err(Error::InvalidCircuit(format!(
            "{} needs a target pair [k, k+1]",
            gate_label(i, g)
        )));
    };
    match v.as_slice() {
        [a, b] if *b == a + 1 => Ok((*a, false)),
        [a, b] if *a == b + 1 => Ok((*b, true)),
        [a, b] => Err(Error::UnsupportedGate(format!(
            "{} acts on non-neighbour pair ({a}, {b})",
            gate_label(i, g)
        ))),
        _ => Err(Error::InvalidCircuit(format!(
            "{} needs exactly two targets",
            gate_label(i, g)
        ))),
    }
}

fn one_matrix<T: Scalar>(i: usize, g: &GateDoc) -> Result<Mat2<T>> {
    if let Some(entries) = &g.matrix {
        return matrix_from(entries);
    }
    match &g.name {
        Some(name) => named_one_qubit(name).ok_or_else(|| {
            Error::UnsupportedGate(format!("{}: unknown one-qubit gate {name:?}", gate_label(i, g)))
        }),
        None => Err(Error::InvalidCircuit(format!(
            "{} needs a matrix or a name",
            gate_label(i, g)
        ))),
    }
}

fn two_matrix<T: Scalar>(i: usize, g: &GateDoc, exchanged: bool) -> Result<Mat4<T>> {
    let m = if let Some(entries) = &g.matrix {
        matrix_from(entries)?
    } else {
        match &g.name {
            Some(name) => named_two_qubit(name).ok_or_else(|| {
                Error::UnsupportedGate(format!(
                    "{}: unknown two-qubit gate {name:?}",
                    gate_label(i, g)
                ))
            })?,
            None => {
                return Err(Error::InvalidCircuit(format!(
                    "{} needs a matrix or a name",
                    gate_label(i, g)
                )))
            }
        }
    };
    Ok(if exchanged { m.with_sites_exchanged() } else { m })
}

fn wait_steps(i: usize, g: &GateDoc) -> Result<usize> {
    g.steps.ok_or_else(|| {
        Error::InvalidCircuit(format!("{} needs \"steps\"", gate_label(i, g)))
    })
}

fn unknown_op(i: usize, g: &GateDoc) -> Error {
    Error::UnsupportedGate(format!("{}: unknown op", gate_label(i, g)))
}

impl CircuitDoc {
    pub fn to_logical<T: Scalar>(&self) -> Result<LogicalCircuit<T>> {
        let gates = self
            .gates
            .iter()
            .enumerate()
            .map(|(i, g)| -> Result<LogicalGate<T>> {
                match g.op.as_str() {
                    "1q" => Ok(LogicalGate::OneQubit {
                        target: one_target(i, g)?,
                        matrix: one_matrix(i, g)?,
                    }),
                    "2q" => {
                        let (first, exchanged) = pair_target(i, g)?;
                        Ok(LogicalGate::TwoQubitNeighbor {
                            first,
                            matrix: two_matrix(i, g, exchanged)?,
                        })
                    }
                    "swap" => Ok(LogicalGate::TwoQubitNeighbor {
                        first: pair_target(i, g)?.0,
                        matrix: Mat4::swap(),
                    }),
                    "wait" => Ok(LogicalGate::Wait {
                        steps: wait_steps(i, g)?,
                    }),
                    _ => Err(unknown_op(i, g)),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        LogicalCircuit::new(self.qubits, gates)
    }

    pub fn to_physical<T: Scalar>(&self) -> Result<PhysicalCircuit<T>> {
        let gates = self
            .gates
            .iter()
            .enumerate()
            .map(|(i, g)| -> Result<PhysicalGate<T>> {
                match g.op.as_str() {
                    "1q" => Ok(PhysicalGate::OneQubit {
                        site: one_target(i, g)?,
                        matrix: one_matrix(i, g)?,
                    }),
                    "2q" => {
                        let (site, exchanged) = pair_target(i, g)?;
                        Ok(PhysicalGate::TwoQubitAdjacent {
                            site,
                            matrix: two_matrix(i, g, exchanged)?,
                        })
                    }
                    "swap" => Ok(PhysicalGate::Swap {
                        site: pair_target(i, g)?.0,
                    }),
                    "wait" => Ok(PhysicalGate::Wait {
                        steps: wait_steps(i, g)?,
                    }),
                    _ => Err(unknown_op(i, g)),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let circuit = PhysicalCircuit::new(self.qubits, gates)?;
        Ok(match self.encoding {
            Some(e) => {
                if e.m == 0 || e.m * e.logical_qubits != self.qubits {
                    return Err(Error::InvalidCircuit(format!(
                        "encoding m={} with {} logical qubits does not match {} sites",
                        e.m, e.logical_qubits, self.qubits
                    )));
                }
                circuit.with_encoding(Encoding {
                    logical_qubits: e.logical_qubits,
                    m: e.m,
                    dual_rail: false,
                })
            }
            None => circuit,
        })
    }

    pub fn from_logical<T: Scalar>(circuit: &LogicalCircuit<T>) -> Self {
        let gates = circuit
            .gates()
            .iter()
            .map(|g| match g {
                LogicalGate::OneQubit { target, matrix } => GateDoc {
                    op: "1q".into(),
                    target: Some(Target::One(*target)),
                    matrix: Some(matrix_to(matrix)),
                    name: None,
                    steps: None,
                },
                LogicalGate::TwoQubitNeighbor { first, matrix } => GateDoc {
                    op: "2q".into(),
                    target: Some(Target::Many(vec![*first, first + 1])),
                    matrix: Some(matrix_to(matrix)),
                    name: None,
                    steps: None,
                },
                LogicalGate::Wait { steps } => wait_doc(*steps),
            })
            .collect();
        Self {
            qubits: circuit.qubits(),
            gates,
            encoding: None,
        }
    }

    pub fn from_physical<T: Scalar>(circuit: &PhysicalCircuit<T>) -> Self {
        let gates = circuit
            .gates()
            .iter()
            .map(|g| match g {
                PhysicalGate::OneQubit { site, matrix } => GateDoc {
                    op: "1q".into(),
                    target: Some(Target::One(*site)),
                    matrix: Some(matrix_to(matrix)),
                    name: None,
                    steps: None,
                },
                PhysicalGate::TwoQubitAdjacent { site, matrix } => GateDoc {
                    op: "2q".into(),
                    target: Some(Target::Many(vec![*site, site + 1])),
                    matrix: Some(matrix_to(matrix)),
                    name: None,
                    steps: None,
                },
                PhysicalGate::Swap { site } => GateDoc {
                    op: "swap".into(),
                    target: Some(Target::Many(vec![*site, site + 1])),
                    matrix: None,
                    name: None,
                    steps: None,
                },
                PhysicalGate::Wait { steps } => wait_doc(*steps),
            })
            .collect();
        Self {
            qubits: circuit.sites(),
            gates,
            encoding: circuit
                .encoding()
                .filter(|e| !e.dual_rail)
                .map(|e| EncodingDoc {
                    m: e.m,
                    logical_qubits: e.logical_qubits,
                }),
        }
    }
}

fn wait_doc(steps: usize) -> GateDoc {
    GateDoc {
        op: "wait".into(),
        target: None,
        matrix: None,
        name: None,
        steps: Some(steps),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoder::{compile_circuit, EncodingParams};

    const SAMPLE: &str = r#"{"qubits": 3, "gates": [
        {"op": "1q", "target": 2, "name": "h"},
        {"op": "2q", "target": [1, 2], "name": "cz"},
        {"op": "wait", "steps": 10},
        {"op": "1q", "target": 1, "matrix": [[0,0],[1,0],[1,0],[0,0]], "name": "h"},
        {"op": "swap", "target": [3, 2]}
    ]}"#;

    #[test]
    fn parses_sample() {
        let c: LogicalCircuit<f64> = parse_document(SAMPLE).unwrap().to_logical().unwrap();
        assert_eq!(c.qubits(), 3);
        assert_eq!(c.step_count(), 14);
        match &c.gates()[3] {
            LogicalGate::OneQubit { matrix, .. } => assert_eq!(*matrix, Mat2::pauli_x()),
            g => panic!("{g:?}"),
        }
        match &c.gates()[4] {
            LogicalGate::TwoQubitNeighbor { first, matrix } => {
                assert_eq!(*first, 2);
                assert_eq!(*matrix, Mat4::swap());
            }
            g => panic!("{g:?}"),
        }
    }

    #[test]
    fn reversed_pair_exchanges_matrix() {
        let doc = r#"{"qubits": 2, "gates": [{"op": "2q", "target": [2, 1], "name": "cnot"}]}"#;
        let c: LogicalCircuit<f64> = parse_document(doc).unwrap().to_logical().unwrap();
        match &c.gates()[0] {
            LogicalGate::TwoQubitNeighbor { first, matrix } => {
                assert_eq!(*first, 1);
                assert_eq!(*matrix, Mat4::cnot().with_sites_exchanged());
            }
            g => panic!("{g:?}"),
        }
    }

    #[test]
    fn parse_errors_carry_position() {
        let err = parse_document("{\"qubits\": 2,\n \"gates\": [}").unwrap_err();
        match err {
            Error::Parse { line, column, .. } => {
                assert_eq!(line, 2);
                assert!(column > 0);
            }
            e => panic!("{e:?}"),
        }
        assert!(matches!(
            parse_document(r#"{"qubits": 2, "gates": [], "extra": 1}"#),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn unsupported_gates() {
        let far = r#"{"qubits": 3, "gates": [{"op": "2q", "target": [1, 3], "name": "cz"}]}"#;
        assert!(matches!(
            parse_document(far).unwrap().to_logical::<f64>(),
            Err(Error::UnsupportedGate(_))
        ));
        let unknown = r#"{"qubits": 1, "gates": [{"op": "1q", "target": 1, "name": "t"}]}"#;
        assert!(matches!(
            parse_document(unknown).unwrap().to_logical::<f64>(),
            Err(Error::UnsupportedGate(_))
        ));
        let op = r#"{"qubits": 1, "gates": [{"op": "measure", "target": 1}]}"#;
        assert!(matches!(
            parse_document(op).unwrap().to_logical::<f64>(),
            Err(Error::UnsupportedGate(_))
        ));
    }

    #[test]
    fn invalid_gates() {
        let bad = r#"{"qubits": 1, "gates": [{"op": "1q", "target": 1, "matrix": [[1,0],[1,0],[0,0],[1,0]]}]}"#;
        assert!(matches!(
            parse_document(bad).unwrap().to_logical::<f64>(),
            Err(Error::NonUnitary { .. })
        ));
        let range = r#"{"qubits": 1, "gates": [{"op": "1q", "target": 2, "name": "x"}]}"#;
        assert!(matches!(
            parse_document(range).unwrap().to_logical::<f64>(),
            Err(Error::IndexOutOfRange { .. })
        ));
        let nosteps = r#"{"qubits": 1, "gates": [{"op": "wait"}]}"#;
        assert!(parse_document(nosteps).unwrap().to_logical::<f64>().is_err());
    }

    #[test]
    fn compiled_document_round_trips() {
        let c: LogicalCircuit<f64> = parse_document(SAMPLE).unwrap().to_logical().unwrap();
        let (phys, _) = compile_circuit(&c, &EncodingParams::new(3).unwrap()).unwrap();
        let text = write_document(&CircuitDoc::from_physical(&phys));
        let back: PhysicalCircuit<f64> = parse_document(&text).unwrap().to_physical().unwrap();
        assert_eq!(back, phys);
    }

    #[test]
    fn logical_document_round_trips() {
        let c: LogicalCircuit<f64> = parse_document(SAMPLE).unwrap().to_logical().unwrap();
        let text = write_document(&CircuitDoc::from_logical(&c));
        let back: LogicalCircuit<f64> = parse_document(&text).unwrap().to_logical().unwrap();
        assert_eq!(back, c);
    }
}
