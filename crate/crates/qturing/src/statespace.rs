//! Product Hilbert space of the Turing head plus M memory cells.
//!
//! The network consists of M+1 two-level subsystems: the head S and memory
//! cells 1..=M. Basis states carry the single-index encoding in which S
//! occupies the least-significant bit and memory cell mu occupies bit mu, so
//! that |1> = |0...001> (head excited) and |2> = |0...010> (cell 1 excited).
//! All other modules share this bit convention.

use nalgebra::Matrix2;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Hard cap on the number of memory cells (dense amplitudes).
pub const MAX_CELLS: usize = 20;

/// Default numerical tolerance used throughout the crate.
pub const TOL: f64 = 1e-12;

/// Subsystem label: 0 is the head S, 1..=M are the memory cells.
pub type SubsystemId = usize;

/// One-subsystem expectation values (k1, k2, k3) of the SU(2) generators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub k1: f64,
    pub k2: f64,
    pub k3: f64,
}

impl BlochVector {
    pub fn length(&self) -> f64 {
        (self.k1 * self.k1 + self.k2 * self.k2 + self.k3 * self.k3).sqrt()
    }
}

/// Dense complex amplitude vector over the 2^(M+1)-dimensional product space.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    subsystems: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// The state |0> = |0...000> of a ring with `cells` memory cells.
    pub fn ground_state(cells: usize) -> Result<Self> {
        if cells < 1 {
            return Err(Error::InvalidDimension(cells));
        }
        if cells > MAX_CELLS {
            return Err(Error::SizeCap(cells, MAX_CELLS));
        }
        let n = cells + 1;
        let mut amps = vec![Complex64::ZERO; 1 << n];
        amps[0] = Complex64::ONE;
        Ok(Self {
            subsystems: n,
            amps,
        })
    }

    /// Build from raw amplitudes; the length must be a power of two >= 4.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let dim = amps.len();
        if dim < 4 || !dim.is_power_of_two() {
            return Err(Error::InvalidDimension(dim));
        }
        let n = dim.trailing_zeros() as usize;
        Ok(Self {
            subsystems: n,
            amps,
        })
    }

    /// A single basis state |s>.
    pub fn basis_state(cells: usize, index: usize) -> Result<Self> {
        let mut psi = Self::ground_state(cells)?;
        psi.amps[0] = Complex64::ZERO;
        if index >= psi.dim() {
            return Err(Error::DimensionMismatch(index, psi.dim()));
        }
        psi.amps[index] = Complex64::ONE;
        Ok(psi)
    }

    /// Number of subsystems M+1 (head included).
    pub fn num_subsystems(&self) -> usize {
        self.subsystems
    }

    /// Number of memory cells M.
    pub fn num_cells(&self) -> usize {
        self.subsystems - 1
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    pub fn amplitude(&self, s: usize) -> Complex64 {
        self.amps[s]
    }

    pub fn check_subsystem(&self, id: SubsystemId) -> Result<()> {
        if id >= self.subsystems {
            return Err(Error::InvalidSubsystem {
                id,
                max: self.subsystems - 1,
            });
        }
        Ok(())
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalize(&mut self) {
        let n = self.norm();
        if n > 0.0 {
            let inv = 1.0 / n;
            for a in &mut self.amps {
                *a *= inv;
            }
        }
    }

    pub fn scale(&mut self, c: Complex64) {
        for a in &mut self.amps {
            *a *= c;
        }
    }

    /// <self|other>, conjugate-linear in `self`.
    pub fn inner_product(&self, other: &Self) -> Result<Complex64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(self.dim(), other.dim()));
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Euclidean distance between amplitude vectors.
    pub fn distance(&self, other: &Self) -> Result<f64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(self.dim(), other.dim()));
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt())
    }

    /// Ray comparison: true iff |<a|b>| >= 1 - tol (both states normalized).
    pub fn equal_up_to_global_phase(&self, other: &Self, tol: f64) -> Result<bool> {
        Ok(self.inner_product(other)?.norm() >= 1.0 - tol)
    }

    /// Reduced 2x2 density matrix of one subsystem, by partial trace over the
    /// rest. Rows and columns are ordered (|0>, |1>).
    pub fn reduced_density(&self, id: SubsystemId) -> Result<Matrix2<Complex64>> {
        self.check_subsystem(id)?;
        let bit = 1usize << id;
        let mut r00 = Complex64::ZERO;
        let mut r01 = Complex64::ZERO;
        let mut r11 = Complex64::ZERO;
        for s in 0..self.dim() {
            if s & bit != 0 {
                continue;
            }
            let a0 = self.amps[s];
            let a1 = self.amps[s | bit];
            r00 += a0 * a0.conj();
            r01 += a0 * a1.conj();
            r11 += a1 * a1.conj();
        }
        Ok(Matrix2::new(r00, r01, r01.conj(), r11))
    }

    /// Bloch vector of one subsystem, computed directly from amplitudes
    /// (independent of `reduced_density`).
    ///
    /// Generator convention: lambda_3 = P11 - P00, so the local |0> state has
    /// k3 = -1; lambda_2 = i P01 - i P10.
    pub fn bloch_vector(&self, id: SubsystemId) -> Result<BlochVector> {
        self.check_subsystem(id)?;
        let bit = 1usize << id;
        let mut k1 = 0.0;
        let mut k2 = 0.0;
        let mut k3 = 0.0;
        for s in 0..self.dim() {
            if s & bit != 0 {
                k3 += self.amps[s].norm_sqr();
                continue;
            }
            let a0 = self.amps[s];
            let a1 = self.amps[s | bit];
            k3 -= a0.norm_sqr();
            let cross = a0.conj() * a1;
            // <lambda_1> = 2 Re(a0* a1); <lambda_2> with lambda_2 = iP01 - iP10
            // gives <lambda_2> = 2 Im(a0* a1) ... sign fixed by the convention:
            // lambda_2 |0> = -i |1>, so <psi|lambda_2|psi> = -2 Im(a0* a1).
            k1 += 2.0 * cross.re;
            k2 -= 2.0 * cross.im;
        }
        Ok(BlochVector { k1, k2, k3 })
    }
}

/// Single-index encoding: bit 0 is the head S, bit mu is memory cell mu.
/// `bits[0]` is the head occupation, `bits[mu]` the cell occupations.
pub fn encode_basis(bits: &[u8]) -> Result<usize> {
    let mut s = 0usize;
    for (pos, &b) in bits.iter().enumerate() {
        match b {
            0 => {}
            1 => s |= 1 << pos,
            other => return Err(Error::InvalidBit(other)),
        }
    }
    Ok(s)
}

/// Inverse of [`encode_basis`] for a system of `subsystems` spins.
pub fn decode_basis(index: usize, subsystems: usize) -> Vec<u8> {
    (0..subsystems)
        .map(|pos| ((index >> pos) & 1) as u8)
        .collect()
}
