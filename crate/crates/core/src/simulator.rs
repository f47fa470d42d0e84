//! Exact evolution under gates interleaved with the always-on diagonal error.
//!
//! One error step multiplies the amplitude of every basis state `b` by
//! `exp(−i·φ(b))`, where `φ` is the [`error_phase`](crate::interaction::error_phase)
//! of `b`. All pair terms commute, so a step is applied exactly in one
//! multiplication and `s` idle steps in one multiplication by `exp(−i·s·φ)`.

use std::collections::HashMap;

use crate::basis::{site_mask, BasisState, MAX_QUBITS};
use crate::circuit::{Encoding, PhysicalCircuit, PhysicalGate};
use crate::error::{Error, Result};
use crate::gates::{Mat2, Mat4};
use crate::interaction::{CouplingLaw, RegisterLayout};
use crate::scalar::{Complex, Scalar};
use crate::state::StateVector;

/// Which steps of a circuit accumulate interaction error.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ErrorSchedule {
    /// One error step after every gate and one per idle step.
    #[default]
    EveryStep,
    /// Gates are ideal; only idle steps accumulate error.
    IdleOnly,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ErrorModel<T> {
    pub law: CouplingLaw<T>,
    pub layout: RegisterLayout<T>,
    /// Drop the phase of the pair under an active two-qubit gate for that
    /// step; that entanglement is known and folded into the gate.
    pub compensate_active_pair: bool,
    /// Drop the single-qubit phases data qubits pick up from spacer sites.
    /// Spacers hold `|0⟩`, so these phases are local and known in advance;
    /// dropping them amounts to a rotating readout frame. Needs encoding
    /// metadata on the circuit, otherwise it has no effect.
    pub compensate_spacer_phases: bool,
    pub schedule: ErrorSchedule,
}

impl<T: Scalar> ErrorModel<T> {
    /// Uncompensated model on a unit-spaced register.
    pub fn new(law: CouplingLaw<T>, n_sites: usize) -> Result<Self> {
        Ok(Self {
            law,
            layout: RegisterLayout::unit(n_sites)?,
            compensate_active_pair: false,
            compensate_spacer_phases: false,
            schedule: ErrorSchedule::EveryStep,
        })
    }

    pub fn with_schedule(mut self, schedule: ErrorSchedule) -> Self {
        self.schedule = schedule;
        self
    }

    pub fn with_active_pair_compensation(mut self, on: bool) -> Self {
        self.compensate_active_pair = on;
        self
    }

    pub fn with_spacer_compensation(mut self, on: bool) -> Self {
        self.compensate_spacer_phases = on;
        self
    }

    fn check_sites(&self, n: usize) -> Result<()> {
        if self.layout.n_sites != n {
            return Err(Error::SizeMismatch {
                expected: self.layout.n_sites,
                found: n,
            });
        }
        Ok(())
    }
}

/// Basis states counted as correct outcomes.
#[derive(Clone, Debug, PartialEq)]
pub struct SolutionSet {
    states: Vec<BasisState>,
}

impl SolutionSet {
    pub fn new(states: Vec<BasisState>) -> Result<Self> {
        let Some(first) = states.first() else {
            return Err(Error::EmptySolutionSet);
        };
        let n = first.len();
        if let Some(bad) = states.iter().find(|s| s.len() != n) {
            return Err(Error::SizeMismatch {
                expected: n,
                found: bad.len(),
            });
        }
        let mut states = states;
        states.sort();
        states.dedup();
        Ok(Self { states })
    }

    pub fn single(state: BasisState) -> Self {
        Self {
            states: vec![state],
        }
    }

    pub fn states(&self) -> &[BasisState] {
        &self.states
    }

    pub fn qubits(&self) -> usize {
        self.states[0].len()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunResult<T> {
    pub final_state: StateVector<T>,
    pub steps_executed: usize,
    /// One verdict per step: every spacer site reads 0 with probability 1
    /// (within the scalar's norm tolerance). Present for encoded circuits.
    pub spacer_check: Option<Vec<bool>>,
    /// Largest probability of reading 1 on any spacer site over the run.
    pub max_spacer_leak: Option<T>,
}

impl<T> RunResult<T> {
    pub fn spacers_clean(&self) -> Option<bool> {
        self.spacer_check.as_ref().map(|v| v.iter().all(|&ok| ok))
    }
}

/// Apply one gate without any error step. `Wait` is a no-op.
pub fn apply_gate<T: Scalar>(state: &mut StateVector<T>, gate: &PhysicalGate<T>) -> Result<()> {
    match gate {
        PhysicalGate::OneQubit { site, matrix } => {
            matrix.check_unitary()?;
            check_site(*site, state.qubits())?;
            state.apply_one(site - 1, matrix)
        }
        PhysicalGate::TwoQubitAdjacent { site, matrix } => {
            matrix.check_unitary()?;
            check_site(*site + 1, state.qubits())?;
            state.apply_two(site - 1, *site, matrix)
        }
        PhysicalGate::Swap { site } => {
            check_site(*site + 1, state.qubits())?;
            state.apply_swap(site - 1, *site)
        }
        PhysicalGate::Wait { .. } => Ok(()),
    }
}

fn check_site(site: usize, n: usize) -> Result<()> {
    if site == 0 || site > n {
        Err(Error::IndexOutOfRange { index: site, max: n })
    } else {
        Ok(())
    }
}

/// One uncompensated error step over the whole register.
pub fn apply_error_step<T: Scalar>(state: &mut StateVector<T>, model: &ErrorModel<T>) -> Result<()> {
    model.check_sites(state.qubits())?;
    let n = state.qubits();
    let weights = PairWeights::uniform(&model.layout, &model.law, n);
    let table = weights.phase_table();
    apply_phases(state, &table, T::one());
    Ok(())
}

fn apply_phases<T: Scalar>(state: &mut StateVector<T>, table: &[T], steps: T) {
    for (a, &phi) in state.amplitudes_mut().iter_mut().zip(table) {
        if !phi.is_zero() {
            *a = *a * Complex::from_polar(T::one(), -(steps * phi));
        }
    }
}

/// Symmetric pair-coupling matrix over `n` (0-based) sites plus a
/// single-site term; the phase of basis state `x` is
/// `Σ_{i<j} w_ij [x_i ≠ x_j] + Σ_i h_i x_i`.
struct PairWeights<T> {
    n: usize,
    w: Vec<T>,
    h: Vec<T>,
}

impl<T: Scalar> PairWeights<T> {
    fn zeros(n: usize) -> Self {
        Self {
            n,
            w: vec![T::zero(); n * n],
            h: vec![T::zero(); n],
        }
    }

    fn uniform(layout: &RegisterLayout<T>, law: &CouplingLaw<T>, n: usize) -> Self {
        let table = layout.coupling_table(law);
        let mut pw = Self::zeros(n);
        for i in 0..n {
            for j in (i + 1)..n {
                pw.set(i, j, table[j - i]);
            }
        }
        pw
    }

    fn set(&mut self, i: usize, j: usize, v: T) {
        self.w[i * self.n + j] = v;
        self.w[j * self.n + i] = v;
    }

    fn get(&self, i: usize, j: usize) -> T {
        self.w[i * self.n + j]
    }

    /// Phases of all `2ⁿ` basis states, built by adding one site at a time:
    /// setting bit `k` on top of `rest` adds `Σ_j w_kj (1 − 2 rest_j) + h_k`.
    fn phase_table(&self) -> Vec<T> {
        let n = self.n;
        let row_sum: Vec<T> = (0..n)
            .map(|k| (0..n).map(|j| self.get(k, j)).sum())
            .collect();
        let mut table = vec![T::zero(); 1 << n];
        for idx in 1usize..(1 << n) {
            let low = idx.trailing_zeros() as usize;
            let k = n - 1 - low;
            let rest = idx & (idx - 1);
            let mut overlap = T::zero();
            let mut bits = rest;
            while bits != 0 {
                let j = n - 1 - bits.trailing_zeros() as usize;
                overlap = overlap + self.get(k, j);
                bits &= bits - 1;
            }
            table[idx] = table[rest] + row_sum[k] - (overlap + overlap) + self.h[k];
        }
        table
    }
}

/// Evolve `initial` through `circuit`, interleaving error steps per the
/// model's schedule.
pub fn run<T: Scalar>(
    circuit: &PhysicalCircuit<T>,
    model: &ErrorModel<T>,
    initial: &StateVector<T>,
) -> Result<RunResult<T>> {
    let n = circuit.sites();
    if initial.qubits() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            found: initial.qubits(),
        });
    }
    model.check_sites(n)?;
    let base = PairWeights::uniform(&model.layout, &model.law, n);

    // occupant[site] = Some(logical label) for data/rail sites, None for spacers
    let mut occupant: Vec<Option<usize>> = match circuit.encoding() {
        Some(enc) if !enc.dual_rail => {
            let mut occ = vec![None; n];
            for k in 1..=enc.logical_qubits {
                occ[enc.home_site(k) - 1] = Some(k);
            }
            occ
        }
        _ => (0..n).map(|s| Some(s + 1)).collect(),
    };
    let track_spacers = circuit.encoding().is_some_and(|e| !e.dual_rail);
    let drop_spacer_terms = model.compensate_spacer_phases && track_spacers;

    let mut cache: HashMap<(usize, Option<usize>), Vec<T>> = HashMap::new();
    let mut state = initial.clone();
    let mut steps = 0usize;
    let mut checks = track_spacers.then(Vec::new);
    let mut max_leak = track_spacers.then(T::zero);

    for gate in circuit.gates() {
        apply_gate(&mut state, gate)?;
        if let PhysicalGate::Swap { site } = gate {
            occupant.swap(site - 1, *site);
        }
        let gate_steps = gate.steps();
        let error_steps = match (model.schedule, gate) {
            (_, PhysicalGate::Wait { steps }) => *steps,
            (ErrorSchedule::EveryStep, _) => 1,
            (ErrorSchedule::IdleOnly, _) => 0,
        };
        let active = match gate {
            PhysicalGate::TwoQubitAdjacent { site, .. } if model.compensate_active_pair => {
                Some(site - 1)
            }
            _ => None,
        };
        if error_steps > 0 && !model.law.delta1.is_zero() {
            let data_mask = occupant
                .iter()
                .enumerate()
                .filter(|(_, o)| o.is_some())
                .fold(0usize, |m, (i, _)| m | site_mask(n, i));
            let key = (if drop_spacer_terms { data_mask } else { 0 }, active);
            let table = cache.entry(key).or_insert_with(|| {
                let mut w = PairWeights {
                    n,
                    w: base.w.clone(),
                    h: base.h.clone(),
                };
                if drop_spacer_terms {
                    for i in 0..n {
                        for j in (i + 1)..n {
                            if occupant[i].is_none() != occupant[j].is_none() {
                                w.set(i, j, T::zero());
                            }
                        }
                    }
                }
                if let Some(a) = active {
                    w.set(a, a + 1, T::zero());
                }
                w.phase_table()
            });
            apply_phases(&mut state, table, T::from_count(error_steps));
        }
        steps += gate_steps;

        if let (Some(checks), Some(max_leak)) = (checks.as_mut(), max_leak.as_mut()) {
            let spacer_mask = occupant
                .iter()
                .enumerate()
                .filter(|(_, o)| o.is_none())
                .fold(0usize, |m, (i, _)| m | site_mask(n, i));
            let leak = state.probability_any(spacer_mask);
            *max_leak = max_leak.max(leak);
            checks.extend(std::iter::repeat_n(leak <= T::NORM_TOL, gate_steps));
        }
    }

    Ok(RunResult {
        final_state: state,
        steps_executed: steps,
        spacer_check: checks,
        max_spacer_leak: max_leak,
    })
}

/// Sites of the data qubits `1..=L` at the end of `circuit`, 0-based.
pub fn final_data_sites<T: Scalar>(circuit: &PhysicalCircuit<T>) -> Result<Vec<usize>> {
    let enc = encoding_of(circuit)?;
    let mut pos: Vec<usize> = (1..=enc.logical_qubits).map(|k| enc.home_site(k) - 1).collect();
    for gate in circuit.gates() {
        if let PhysicalGate::Swap { site } = gate {
            let (a, b) = (site - 1, *site);
            for p in pos.iter_mut() {
                if *p == a {
                    *p = b;
                } else if *p == b {
                    *p = a;
                }
            }
        }
    }
    Ok(pos)
}

fn encoding_of<T: Scalar>(circuit: &PhysicalCircuit<T>) -> Result<Encoding> {
    circuit
        .encoding()
        .copied()
        .ok_or_else(|| Error::InvalidCircuit("circuit carries no encoding metadata".into()))
}

/// Place a logical state on the data sites of an encoded register with all
/// spacers in `|0⟩`.
pub fn embed_logical<T: Scalar>(
    logical: &StateVector<T>,
    encoding: &Encoding,
) -> Result<StateVector<T>> {
    if encoding.dual_rail {
        return Err(Error::UnsupportedGate(
            "logical embedding of dual-rail registers".into(),
        ));
    }
    let sites: Vec<usize> = (1..=encoding.logical_qubits)
        .map(|k| encoding.home_site(k) - 1)
        .collect();
    logical.embed(encoding.physical_sites(), &sites)
}

/// Amplitudes of a full-register state on the given 0-based data sites with
/// every other site in `|0⟩`.
pub fn restrict_to_sites<T: Scalar>(
    state: &StateVector<T>,
    sites: &[usize],
) -> Result<StateVector<T>> {
    state.restrict(sites)
}

/// Data-qubit positions and the compensated pair, if any.
type TableKey = (Vec<usize>, Option<(usize, usize)>);

/// Evolve only the `2^L` logical amplitudes of an encoded circuit.
///
/// Spacers stay in `|0⟩` under gates that only swap them and under the
/// diagonal error, so the register factorises into the data qubits and a
/// fixed spacer product state. Swaps only move data qubits between sites.
/// Per error step the data qubits see pair phases at their current
/// separations plus a single-qubit phase from each spacer they differ
/// from; spacer–spacer pairs never differ and contribute nothing.
pub fn run_compressed<T: Scalar>(
    circuit: &PhysicalCircuit<T>,
    model: &ErrorModel<T>,
    encoding: &crate::encoder::EncodingParams,
    logical_initial: &StateVector<T>,
) -> Result<StateVector<T>> {
    if encoding.dual_rail {
        return Err(Error::UnsupportedGate(
            "compressed engine needs spacer encoding, not dual rail".into(),
        ));
    }
    let l = logical_initial.qubits();
    if l > MAX_QUBITS {
        return Err(Error::Capacity {
            requested: l,
            max: MAX_QUBITS,
        });
    }
    let n = encoding.m * l;
    if circuit.sites() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            found: circuit.sites(),
        });
    }
    if let Some(enc) = circuit.encoding() {
        if enc.m != encoding.m || enc.logical_qubits != l {
            return Err(Error::InvalidCircuit(
                "circuit encoding disagrees with the requested encoding".into(),
            ));
        }
    }
    model.check_sites(n)?;
    let coupling = model.layout.coupling_table(&model.law);

    let mut occupant: Vec<Option<usize>> = vec![None; n];
    let mut pos: Vec<usize> = (0..l).map(|k| k * encoding.m).collect();
    for (k, &p) in pos.iter().enumerate() {
        occupant[p] = Some(k);
    }

    let mut cache: HashMap<TableKey, Vec<T>> = HashMap::new();
    let mut state = logical_initial.clone();

    for gate in circuit.gates() {
        let mut active = None;
        match gate {
            PhysicalGate::OneQubit { site, matrix } => {
                matrix.check_unitary()?;
                check_site(*site, n)?;
                match occupant[site - 1] {
                    Some(k) => state.apply_one(k, matrix)?,
                    None if is_identity_2(matrix) => {}
                    None => {
                        return Err(Error::UnsupportedGate(format!(
                            "one-qubit gate on spacer site {site}"
                        )))
                    }
                }
            }
            PhysicalGate::TwoQubitAdjacent { site, matrix } => {
                matrix.check_unitary()?;
                check_site(*site + 1, n)?;
                match (occupant[site - 1], occupant[*site]) {
                    (Some(a), Some(b)) => {
                        state.apply_two(a, b, matrix)?;
                        if model.compensate_active_pair {
                            active = Some((a.min(b), a.max(b)));
                        }
                    }
                    _ if is_identity_4(matrix) => {}
                    _ => {
                        return Err(Error::UnsupportedGate(format!(
                            "two-qubit gate on sites ({site}, {}) touches a spacer",
                            site + 1
                        )))
                    }
                }
            }
            PhysicalGate::Swap { site } => {
                check_site(*site + 1, n)?;
                let (a, b) = (site - 1, *site);
                occupant.swap(a, b);
                for s in [a, b] {
                    if let Some(k) = occupant[s] {
                        pos[k] = s;
                    }
                }
            }
            PhysicalGate::Wait { .. } => {}
        }

        let error_steps = match (model.schedule, gate) {
            (_, PhysicalGate::Wait { steps }) => *steps,
            (ErrorSchedule::EveryStep, _) => 1,
            (ErrorSchedule::IdleOnly, _) => 0,
        };
        if error_steps == 0 || model.law.delta1.is_zero() {
            continue;
        }
        let table = cache.entry((pos.clone(), active)).or_insert_with(|| {
            let mut w = PairWeights::zeros(l);
            for a in 0..l {
                for b in (a + 1)..l {
                    if active != Some((a, b)) {
                        w.set(a, b, coupling[pos[a].abs_diff(pos[b])]);
                    }
                }
                if !model.compensate_spacer_phases {
                    w.h[a] = (0..n)
                        .filter(|&s| occupant[s].is_none())
                        .map(|s| coupling[pos[a].abs_diff(s)])
                        .sum();
                }
            }
            w.phase_table()
        });
        apply_phases(&mut state, table, T::from_count(error_steps));
    }
    Ok(state)
}

fn is_identity_2<T: Scalar>(m: &Mat2<T>) -> bool {
    m.approx_eq(&Mat2::identity(), T::UNITARY_TOL)
}

fn is_identity_4<T: Scalar>(m: &Mat4<T>) -> bool {
    m.approx_eq(&Mat4::identity(), T::UNITARY_TOL)
}

/// `Q = Σ_{s∈S} |⟨s|ψ⟩|²`, clamped to `[0, 1]` against rounding.
pub fn quality<T: Scalar>(state: &StateVector<T>, solutions: &SolutionSet) -> Result<T> {
    if solutions.qubits() != state.qubits() {
        return Err(Error::SizeMismatch {
            expected: state.qubits(),
            found: solutions.qubits(),
        });
    }
    let q: T = solutions
        .states()
        .iter()
        .map(|s| state.amplitudes()[s.index()].norm_sqr())
        .sum();
    Ok(q.max(T::zero()).min(T::one()))
}
