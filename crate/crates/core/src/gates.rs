//! Dense gate matrices.
//!
//! Two-site matrices act on `|x y⟩` with the lower-numbered site `x` as the
//! more significant index, i.e. row/column `2x + y`.

use std::ops::Mul;

use crate::error::{Error, Result};
use crate::scalar::{Complex, Scalar};

/// Square complex matrix of order `N`, row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Matrix<T, const N: usize>(pub [[Complex<T>; N]; N]);

pub type Mat2<T> = Matrix<T, 2>;
pub type Mat4<T> = Matrix<T, 4>;

fn c<T: Scalar>(re: f64, im: f64) -> Complex<T> {
    Complex::new(T::lit(re), T::lit(im))
}

impl<T: Scalar, const N: usize> Matrix<T, N> {
    pub fn zeros() -> Self {
        Self([[Complex::new(T::zero(), T::zero()); N]; N])
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            m.0[i][i] = Complex::new(T::one(), T::zero());
        }
        m
    }

    /// Build from `N·N` row-major entries.
    pub fn from_entries(entries: &[Complex<T>]) -> Result<Self> {
        if entries.len() != N * N {
            return Err(Error::SizeMismatch {
                expected: N * N,
                found: entries.len(),
            });
        }
        let mut m = Self::zeros();
        for (k, e) in entries.iter().enumerate() {
            m.0[k / N][k % N] = *e;
        }
        Ok(m)
    }

    pub fn entries(&self) -> impl Iterator<Item = Complex<T>> + '_ {
        self.0.iter().flat_map(|row| row.iter().copied())
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] = self.0[j][i].conj();
            }
        }
        m
    }

    /// Largest entrywise magnitude of `U†U − I`.
    pub fn unitarity_deviation(&self) -> T {
        let p = self.adjoint() * *self;
        let id = Self::identity();
        let mut worst = T::zero();
        for i in 0..N {
            for j in 0..N {
                worst = worst.max((p.0[i][j] - id.0[i][j]).norm());
            }
        }
        worst
    }

    pub fn is_unitary(&self) -> bool {
        self.unitarity_deviation() <= T::UNITARY_TOL
    }

    pub fn check_unitary(&self) -> Result<()> {
        let dev = self.unitarity_deviation();
        if dev <= T::UNITARY_TOL {
            Ok(())
        } else {
            Err(Error::NonUnitary {
                deviation: dev.as_f64(),
            })
        }
    }

    pub fn approx_eq(&self, other: &Self, tol: T) -> bool {
        self.entries()
            .zip(other.entries())
            .all(|(a, b)| (a - b).norm() <= tol)
    }
}

impl<T: Scalar, const N: usize> Mul for Matrix<T, N> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                let mut acc = Complex::new(T::zero(), T::zero());
                for k in 0..N {
                    acc = acc + self.0[i][k] * rhs.0[k][j];
                }
                m.0[i][j] = acc;
            }
        }
        m
    }
}

impl<T: Scalar> Mat2<T> {
    pub fn hadamard() -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Self([[c(s, 0.0), c(s, 0.0)], [c(s, 0.0), c(-s, 0.0)]])
    }

    pub fn pauli_x() -> Self {
        Self([[c(0.0, 0.0), c(1.0, 0.0)], [c(1.0, 0.0), c(0.0, 0.0)]])
    }

    pub fn pauli_z() -> Self {
        Self([[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(-1.0, 0.0)]])
    }

    /// `Rz(θ)·Ry(φ)·Rz(λ)` up to global phase; every 2×2 unitary has this form
    /// times a phase.
    pub fn euler(theta: T, phi: T, lambda: T) -> Self {
        let half = T::lit(0.5);
        let (s, co) = (phi * half).sin_cos();
        let e = |a: T| Complex::from_polar(T::one(), a);
        Self([
            [e(-(theta + lambda) * half) * co, -e(-(theta - lambda) * half) * s],
            [e((theta - lambda) * half) * s, e((theta + lambda) * half) * co],
        ])
    }

    /// `self ⊗ other`, with `self` on the more significant site.
    pub fn kron(&self, other: &Self) -> Mat4<T> {
        let mut m = Mat4::zeros();
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        m.0[2 * i + k][2 * j + l] = self.0[i][j] * other.0[k][l];
                    }
                }
            }
        }
        m
    }
}

impl<T: Scalar> Mat4<T> {
    pub fn cz() -> Self {
        let mut m = Self::identity();
        m.0[3][3] = c(-1.0, 0.0);
        m
    }

    /// Control on the more significant site.
    pub fn cnot() -> Self {
        Self::permutation([0, 1, 3, 2])
    }

    pub fn swap() -> Self {
        Self::permutation([0, 2, 1, 3])
    }

    fn permutation(p: [usize; 4]) -> Self {
        let mut m = Self::zeros();
        for (col, &row) in p.iter().enumerate() {
            m.0[row][col] = c(1.0, 0.0);
        }
        m
    }

    /// The same operator with the roles of the two sites exchanged.
    pub fn with_sites_exchanged(&self) -> Self {
        let s = Self::swap();
        s * *self * s
    }

    /// Diagonal gate `diag(e^{-iφ₀}, …)`.
    pub fn diagonal_phases(phases: [T; 4]) -> Self {
        let mut m = Self::zeros();
        for (k, p) in phases.into_iter().enumerate() {
            m.0[k][k] = Complex::from_polar(T::one(), -p);
        }
        m
    }
}

/// Two-site matrix by name: `cz`, `cnot`, `swap`.
pub fn named_two_qubit<T: Scalar>(name: &str) -> Option<Mat4<T>> {
    match name.to_ascii_lowercase().as_str() {
        "cz" => Some(Mat4::cz()),
        "cnot" | "cx" => Some(Mat4::cnot()),
        "swap" => Some(Mat4::swap()),
        _ => None,
    }
}

/// One-site matrix by name: `h`, `x`, `z`.
pub fn named_one_qubit<T: Scalar>(name: &str) -> Option<Mat2<T>> {
    match name.to_ascii_lowercase().as_str() {
        "h" => Some(Mat2::hadamard()),
        "x" => Some(Mat2::pauli_x()),
        "z" => Some(Mat2::pauli_z()),
        _ => None,
    }
}
