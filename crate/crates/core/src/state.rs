//! Dense statevector storage and the elementary gate kernels.

use crate::basis::{site_mask, BasisState, MAX_QUBITS};
use crate::error::{Error, Result};
use crate::gates::{Mat2, Mat4};
use crate::scalar::{Complex, Scalar};

/// `2ⁿ` complex amplitudes, indexed as described in [`crate::basis`].
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector<T> {
    n: usize,
    amps: Vec<Complex<T>>,
}

fn check_capacity(n: usize) -> Result<()> {
    if n > MAX_QUBITS {
        Err(Error::Capacity {
            requested: n,
            max: MAX_QUBITS,
        })
    } else if n == 0 {
        Err(Error::Domain("state needs at least one qubit".into()))
    } else {
        Ok(())
    }
}

impl<T: Scalar> StateVector<T> {
    /// `|0…0⟩`
    pub fn zero(n: usize) -> Result<Self> {
        check_capacity(n)?;
        let mut amps = vec![Complex::new(T::zero(), T::zero()); 1 << n];
        amps[0] = Complex::new(T::one(), T::zero());
        Ok(Self { n, amps })
    }

    pub fn basis(bits: &BasisState) -> Result<Self> {
        let mut s = Self::zero(bits.len())?;
        s.amps[0] = Complex::new(T::zero(), T::zero());
        s.amps[bits.index()] = Complex::new(T::one(), T::zero());
        Ok(s)
    }

    /// `|+⟩^⊗n`
    pub fn plus(n: usize) -> Result<Self> {
        check_capacity(n)?;
        let a = T::one() / T::from_count(1 << n).sqrt();
        Ok(Self {
            n,
            amps: vec![Complex::new(a, T::zero()); 1 << n],
        })
    }

    /// Takes ownership of `amps`; the vector must have length `2ⁿ` and unit norm.
    pub fn from_amplitudes(n: usize, amps: Vec<Complex<T>>) -> Result<Self> {
        check_capacity(n)?;
        if amps.len() != 1 << n {
            return Err(Error::SizeMismatch {
                expected: 1 << n,
                found: amps.len(),
            });
        }
        let s = Self { n, amps };
        let norm = s.norm_sqr();
        if (norm - T::one()).abs() > T::NORM_TOL {
            return Err(Error::Domain(format!("state norm² is {norm}, expected 1")));
        }
        Ok(s)
    }

    pub fn qubits(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amps
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex<T>] {
        &mut self.amps
    }

    pub fn amplitude(&self, bits: &BasisState) -> Result<Complex<T>> {
        if bits.len() != self.n {
            return Err(Error::SizeMismatch {
                expected: self.n,
                found: bits.len(),
            });
        }
        Ok(self.amps[bits.index()])
    }

    /// `Σ|ψ_i|²`, summed in index order.
    pub fn norm_sqr(&self) -> T {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Probability that any of the 0-based sites in `mask` reads 1.
    pub(crate) fn probability_any(&self, mask: usize) -> T {
        self.amps
            .iter()
            .enumerate()
            .filter(|(i, _)| i & mask != 0)
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }

    fn check_site(&self, site: usize) -> Result<()> {
        if site >= self.n {
            Err(Error::IndexOutOfRange {
                index: site + 1,
                max: self.n,
            })
        } else {
            Ok(())
        }
    }

    /// Apply `u` to 0-based site `site`.
    pub(crate) fn apply_one(&mut self, site: usize, u: &Mat2<T>) -> Result<()> {
        self.check_site(site)?;
        let mask = site_mask(self.n, site);
        let u = &u.0;
        for i in 0..self.amps.len() {
            if i & mask == 0 {
                let j = i | mask;
                let (a0, a1) = (self.amps[i], self.amps[j]);
                self.amps[i] = u[0][0] * a0 + u[0][1] * a1;
                self.amps[j] = u[1][0] * a0 + u[1][1] * a1;
            }
        }
        Ok(())
    }

    /// Apply `u` to 0-based sites `(hi, lo)`, where `hi` plays the role of the
    /// more significant gate index. The sites need not be adjacent.
    pub(crate) fn apply_two(&mut self, hi: usize, lo: usize, u: &Mat4<T>) -> Result<()> {
        self.check_site(hi)?;
        self.check_site(lo)?;
        if hi == lo {
            return Err(Error::InvalidCircuit("two-qubit gate on a single site".into()));
        }
        let (mh, ml) = (site_mask(self.n, hi), site_mask(self.n, lo));
        let u = &u.0;
        for i in 0..self.amps.len() {
            if i & (mh | ml) == 0 {
                let idx = [i, i | ml, i | mh, i | mh | ml];
                let a = idx.map(|k| self.amps[k]);
                for (r, &k) in idx.iter().enumerate() {
                    self.amps[k] = u[r][0] * a[0] + u[r][1] * a[1] + u[r][2] * a[2] + u[r][3] * a[3];
                }
            }
        }
        Ok(())
    }

    /// Exchange the contents of 0-based sites `a` and `b`.
    pub(crate) fn apply_swap(&mut self, a: usize, b: usize) -> Result<()> {
        self.check_site(a)?;
        self.check_site(b)?;
        let (ma, mb) = (site_mask(self.n, a), site_mask(self.n, b));
        for i in 0..self.amps.len() {
            if i & ma != 0 && i & mb == 0 {
                self.amps.swap(i, (i & !ma) | mb);
            }
        }
        Ok(())
    }

    /// Index of the largest-magnitude amplitude (first on ties).
    pub fn dominant_index(&self) -> usize {
        let mut best = 0;
        let mut best_mag = T::neg_infinity();
        for (i, a) in self.amps.iter().enumerate() {
            let mag = a.norm_sqr();
            if mag > best_mag {
                best = i;
                best_mag = mag;
            }
        }
        best
    }

    /// Multiply by the conjugate phase of the amplitude at `index`.
    pub fn align_phase_at(&mut self, index: usize) {
        let a = self.amps[index];
        let mag = a.norm();
        if mag > T::zero() {
            let rot = a.conj() / mag;
            for x in &mut self.amps {
                *x = *x * rot;
            }
        }
    }

    /// Largest amplitude difference after aligning both states' global
    /// phase on the dominant amplitude of `self`.
    pub fn distance_up_to_phase(&self, other: &Self) -> Result<T> {
        if self.n != other.n {
            return Err(Error::SizeMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        let idx = self.dominant_index();
        let mut a = self.clone();
        let mut b = other.clone();
        a.align_phase_at(idx);
        b.align_phase_at(idx);
        Ok(a.amps
            .iter()
            .zip(&b.amps)
            .map(|(x, y)| (*x - *y).norm())
            .fold(T::zero(), T::max))
    }

    /// Partial trace-free restriction: amplitudes with the given 0-based
    /// sites read in order and every other site equal to 0. The sites in
    /// `order` become sites `0..order.len()` of the result, which is not
    /// renormalised.
    pub(crate) fn restrict(&self, order: &[usize]) -> Result<Self> {
        let k = order.len();
        check_capacity(k)?;
        let mut out = vec![Complex::new(T::zero(), T::zero()); 1 << k];
        for (x, slot) in out.iter_mut().enumerate() {
            let mut idx = 0;
            for (l, &site) in order.iter().enumerate() {
                if x & site_mask(k, l) != 0 {
                    idx |= site_mask(self.n, site);
                }
            }
            *slot = self.amps[idx];
        }
        Ok(Self { n: k, amps: out })
    }

    /// Inverse of [`restrict`](Self::restrict): place `self` on the 0-based
    /// sites `order` of an `n`-site register whose other sites are `|0⟩`.
    pub(crate) fn embed(&self, n: usize, order: &[usize]) -> Result<Self> {
        check_capacity(n)?;
        if order.len() != self.n {
            return Err(Error::SizeMismatch {
                expected: self.n,
                found: order.len(),
            });
        }
        let mut out = vec![Complex::new(T::zero(), T::zero()); 1 << n];
        for (x, a) in self.amps.iter().enumerate() {
            let mut idx = 0;
            for (l, &site) in order.iter().enumerate() {
                if x & site_mask(self.n, l) != 0 {
                    idx |= site_mask(n, site);
                }
            }
            out[idx] = *a;
        }
        Ok(Self { n, amps: out })
    }
}
