//! Library results checked against small reference computations written
//! independently of the library kernels.

use approx::assert_relative_eq;
use num_complex::Complex64 as C;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spacer_core::encoder::{compile_circuit, encode_basis};
use spacer_core::interaction::{coulomb_nonadditive, error_phase};
use spacer_core::simulator::{embed_logical, final_data_sites, restrict_to_sites, run, run_compressed};
use spacer_core::sweep::random_circuit;
use spacer_core::{
    BasisState, CouplingLaw, EncodingParams, ErrorModel, LogicalCircuit, LogicalGate, Mat2,
    PhysicalGate, RegisterLayout, StateVector,
};

/// Dense reference simulator: site `s` of `n` is bit `n − s` of the index.
struct Dense {
    n: usize,
    amps: Vec<C>,
}

impl Dense {
    fn from(state: &StateVector<f64>) -> Self {
        Self {
            n: state.qubits(),
            amps: state.amplitudes().to_vec(),
        }
    }

    fn bit(&self, s: usize) -> usize {
        1 << (self.n - s)
    }

    fn one(&mut self, s: usize, u: &[[C; 2]; 2]) {
        let b = self.bit(s);
        let old = self.amps.clone();
        for (i, a) in self.amps.iter_mut().enumerate() {
            let r = usize::from(i & b != 0);
            *a = u[r][0] * old[i & !b] + u[r][1] * old[i | b];
        }
    }

    fn two(&mut self, hi: usize, lo: usize, u: &[[C; 4]; 4]) {
        let (bh, bl) = (self.bit(hi), self.bit(lo));
        let old = self.amps.clone();
        for (i, a) in self.amps.iter_mut().enumerate() {
            let r = 2 * usize::from(i & bh != 0) + usize::from(i & bl != 0);
            let base = i & !bh & !bl;
            let cols = [base, base | bl, base | bh, base | bh | bl];
            *a = (0..4).map(|c| u[r][c] * old[cols[c]]).sum();
        }
    }

    fn phase(&mut self, law: &CouplingLaw<f64>) {
        let n = self.n;
        for (i, a) in self.amps.iter_mut().enumerate() {
            let mut phi = 0.0;
            for s in 1..=n {
                for t in s + 1..=n {
                    if (i >> (n - s)) & 1 != (i >> (n - t)) & 1 {
                        phi += law.delta1 / ((t - s) as f64).powi(law.exponent as i32);
                    }
                }
            }
            *a *= C::from_polar(1.0, -phi);
        }
    }
}

fn swap_matrix() -> [[C; 4]; 4] {
    let mut u = [[C::new(0.0, 0.0); 4]; 4];
    u[0][0] = C::new(1.0, 0.0);
    u[1][2] = C::new(1.0, 0.0);
    u[2][1] = C::new(1.0, 0.0);
    u[3][3] = C::new(1.0, 0.0);
    u
}

fn dense_run(circuit: &spacer_core::PhysicalCircuit<f64>, law: &CouplingLaw<f64>, init: &StateVector<f64>) -> Dense {
    let mut d = Dense::from(init);
    for g in circuit.gates() {
        let steps = match g {
            PhysicalGate::OneQubit { site, matrix } => {
                d.one(*site, &matrix.0);
                1
            }
            PhysicalGate::TwoQubitAdjacent { site, matrix } => {
                d.two(*site, *site + 1, &matrix.0);
                1
            }
            PhysicalGate::Swap { site } => {
                d.two(*site, *site + 1, &swap_matrix());
                1
            }
            PhysicalGate::Wait { steps } => *steps,
        };
        for _ in 0..steps {
            d.phase(law);
        }
    }
    d
}

fn max_diff(a: &[C], b: &[C]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

#[test]
fn full_register_run_matches_dense_reference() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let l = rng.gen_range(1..=3);
        let m = rng.gen_range(1..=3);
        let logical = random_circuit::<f64, _>(l, rng.gen_range(0..=6), &mut rng).unwrap();
        let mut gates = logical.gates().to_vec();
        gates.push(LogicalGate::Wait { steps: 2 });
        let logical = LogicalCircuit::new(l, gates).unwrap();
        let (physical, _) = compile_circuit(&logical, &EncodingParams::new(m).unwrap()).unwrap();
        let law = CouplingLaw::dipole(0.1).unwrap();
        let model = ErrorModel::new(law, physical.sites()).unwrap();
        let init = embed_logical(
            &StateVector::plus(l).unwrap(),
            physical.encoding().unwrap(),
        )
        .unwrap();
        let got = run(&physical, &model, &init).unwrap();
        let want = dense_run(&physical, &law, &init);
        assert!(max_diff(got.final_state.amplitudes(), &want.amps) < 1e-12);
    }
}

#[test]
fn compressed_engine_matches_dense_reference() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let l = rng.gen_range(1..=3);
        let m = rng.gen_range(1..=3);
        let logical = random_circuit::<f64, _>(l, rng.gen_range(0..=8), &mut rng).unwrap();
        let params = EncodingParams::new(m).unwrap();
        let (physical, _) = compile_circuit(&logical, &params).unwrap();
        let law = CouplingLaw::dipole(0.05).unwrap();
        let model = ErrorModel::new(law, physical.sites()).unwrap();
        let init = StateVector::plus(l).unwrap();
        let compressed = run_compressed(&physical, &model, &params, &init).unwrap();
        let full = dense_run(&physical, &law, &embed_logical(&init, physical.encoding().unwrap()).unwrap());
        let full = StateVector::from_amplitudes(physical.sites(), full.amps).unwrap();
        let data = restrict_to_sites(&full, &final_data_sites(&physical).unwrap()).unwrap();
        assert!(max_diff(compressed.amplitudes(), data.amplitudes()) < 1e-12);
    }
}

#[test]
fn error_phase_matches_pair_enumeration() {
    let law = CouplingLaw::new(0.3, 3).unwrap();
    let n = 7;
    let layout = RegisterLayout::unit(n).unwrap();
    for idx in 0..(1usize << n) {
        let bits = BasisState::from_index(idx, n);
        let mut want = 0.0;
        for s in 0..n {
            for t in s + 1..n {
                if bits.bits()[s] != bits.bits()[t] {
                    want += 0.3 / ((t - s) as f64).powi(3);
                }
            }
        }
        assert_relative_eq!(error_phase(&bits, &layout, &law).unwrap(), want, epsilon = 1e-14);
    }
}

/// Charge on the occupied rail; logical 0 sits on the second rail.
fn four_configuration(d: f64, r: f64, g: f64) -> f64 {
    let pos = |pair: f64, b: u8| pair + if b == 1 { 0.0 } else { r };
    let energy = |b1: u8, b2: u8| g / (pos(d, b2) - pos(0.0, b1)).abs();
    energy(0, 0) + energy(1, 1) - energy(0, 1) - energy(1, 0)
}

#[test]
fn coulomb_closed_form_matches_four_configuration_sum() {
    for &(d, r, g) in &[(10.0, 1.0, 1.0), (2.0, 1.0, 0.3), (37.5, 2.5, 4.0), (100.0, 1.0, 1.0), (1.5, 1.0, 1.0)] {
        let closed = coulomb_nonadditive(d, r, g).unwrap();
        assert_relative_eq!(closed, four_configuration(d, r, g), max_relative = 1e-12);
    }
    assert_relative_eq!(four_configuration(10.0, 1.0, 1.0), -2.0 / 990.0, max_relative = 1e-12);
}

/// Two dual-rail logical qubits on four sites under a `1/d` law: the pair
/// coupling read from the idle phases equals the nonadditive energy.
#[test]
fn dual_rail_idle_coupling_is_the_coulomb_nonadditive_term() {
    let g = 0.01;
    let law = CouplingLaw::new(g, 1).unwrap();
    let layout = RegisterLayout::unit(4).unwrap();
    let phase = |logical: &str| {
        let bits: BasisState = logical.parse().unwrap();
        let encoded = spacer_core::encoder::dual_rail_encode(&bits);
        error_phase(&encoded, &layout, &law).unwrap()
    };
    let coupling = (phase("01") + phase("10") - phase("00") - phase("11")) / 2.0;
    let energy = coulomb_nonadditive(2.0, 1.0, g).unwrap();
    assert_relative_eq!(coupling, energy, max_relative = 1e-12);
    assert_relative_eq!(coupling, -g / 3.0, max_relative = 1e-12);
}

#[test]
fn encoded_idle_register_keeps_spacers_clean() {
    let logical = LogicalCircuit::new(
        3,
        vec![
            LogicalGate::OneQubit { target: 1, matrix: Mat2::hadamard() },
            LogicalGate::Wait { steps: 3 },
        ],
    )
    .unwrap();
    let params = EncodingParams::new(3).unwrap();
    let (physical, _) = compile_circuit(&logical, &params).unwrap();
    let model = ErrorModel::new(CouplingLaw::dipole(0.2).unwrap(), physical.sites()).unwrap();
    let init = StateVector::basis(&encode_basis(&"011".parse().unwrap(), 3).unwrap()).unwrap();
    let result = run(&physical, &model, &init).unwrap();
    assert_eq!(result.spacers_clean(), Some(true));
    assert_eq!(result.spacer_check.as_ref().unwrap().len(), 4);
}
