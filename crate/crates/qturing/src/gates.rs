//! The two machine unitaries and projective collapse.
//!
//! `rotate_head` is the one-parameter local rotation of the head S;
//! `cnot` is the conditioned pi-pulse on (S, mu).
//!
//! Control convention (binding, and opposite to the textbook CNOT): the
//! memory cell flips when the head is in |0(S)> ("resonance"); nothing
//! happens for head |1(S)>.

use num_complex::Complex64;

use crate::clusterops::apply_generator;
use crate::error::{Error, Result};
use crate::statespace::{StateVector, SubsystemId};

/// Probability below which a measurement branch counts as impossible.
pub const BRANCH_EPS: f64 = 1e-14;

/// One machine operation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GateOp {
    /// Local head rotation by the phase angle alpha.
    HeadRotation(f64),
    /// Conditioned pi-pulse with the given memory cell as target.
    PairCnot(SubsystemId),
    /// Projective collapse of one subsystem onto an occupation outcome.
    Projection(SubsystemId, u8),
}

impl GateOp {
    /// Apply in place; projections return the branch probability.
    pub fn apply(&self, psi: &mut StateVector) -> Result<Option<f64>> {
        match *self {
            GateOp::HeadRotation(alpha) => {
                rotate_head(psi, alpha);
                Ok(None)
            }
            GateOp::PairCnot(mu) => {
                cnot(psi, mu)?;
                Ok(None)
            }
            GateOp::Projection(mu, outcome) => project(psi, mu, outcome).map(Some),
        }
    }
}

/// Head rotation: |0> -> cos(a/2)|0> - i sin(a/2)|1>,
/// |1> -> -i sin(a/2)|0> + cos(a/2)|1>. Inverse is the rotation by -alpha.
pub fn rotate_head(psi: &mut StateVector, alpha: f64) {
    let half = alpha / 2.0;
    let c = Complex64::new(half.cos(), 0.0);
    let mis = Complex64::new(0.0, -half.sin());
    let amps = psi.amplitudes_mut();
    let dim = amps.len();
    for s in 0..dim {
        if s & 1 == 0 {
            let a0 = amps[s];
            let a1 = amps[s | 1];
            amps[s] = c * a0 + mis * a1;
            amps[s | 1] = mis * a0 + c * a1;
        }
    }
}

/// Conditioned pi-pulse on (S, mu): flips bit mu on every component with the
/// head in |0>. Self-inverse.
pub fn cnot(psi: &mut StateVector, mu: SubsystemId) -> Result<()> {
    if mu == 0 || mu > psi.num_cells() {
        return Err(Error::InvalidMemoryCell(mu, psi.num_cells()));
    }
    let bit = 1usize << mu;
    let amps = psi.amplitudes_mut();
    let dim = amps.len();
    for s in 0..dim {
        // head |0> and target |0>: swap with the target-flipped partner
        if s & 1 == 0 && s & bit == 0 {
            amps.swap(s, s | bit);
        }
    }
    Ok(())
}

/// Projective measurement of one subsystem: keep the components with the
/// given occupation, renormalize, and return the pre-collapse probability.
pub fn project(psi: &mut StateVector, mu: SubsystemId, outcome: u8) -> Result<f64> {
    psi.check_subsystem(mu)?;
    if outcome > 1 {
        return Err(Error::InvalidBit(outcome));
    }
    let bit = 1usize << mu;
    let keep = if outcome == 1 { bit } else { 0 };
    let mut prob = 0.0;
    for (s, a) in psi.amplitudes().iter().enumerate() {
        if s & bit == keep {
            prob += a.norm_sqr();
        }
    }
    if prob < BRANCH_EPS {
        return Err(Error::ImpossibleOutcome(prob));
    }
    let scale = 1.0 / prob.sqrt();
    for (s, a) in psi.amplitudes_mut().iter_mut().enumerate() {
        if s & bit == keep {
            *a *= scale;
        } else {
            *a = Complex64::ZERO;
        }
    }
    Ok(prob)
}

/// Residual of the commutator identity
/// [U(S,mu), U_alpha(S)] psi = sin(alpha/2) (1(mu) - lambda_1(mu)) lambda_2(S) psi.
/// Contractually <= 1e-12 for every input.
pub fn commutator_residual(alpha: f64, mu: SubsystemId, psi: &StateVector) -> Result<f64> {
    if mu == 0 || mu > psi.num_cells() {
        return Err(Error::InvalidMemoryCell(mu, psi.num_cells()));
    }
    // left side: U(S,mu) U_a(S) psi - U_a(S) U(S,mu) psi
    let mut ab = psi.clone();
    rotate_head(&mut ab, alpha);
    cnot(&mut ab, mu)?;
    let mut ba = psi.clone();
    cnot(&mut ba, mu)?;
    rotate_head(&mut ba, alpha);

    // right side: sin(a/2) (1 - lambda_1(mu)) lambda_2(S) psi
    let mut l2 = psi.clone();
    apply_generator(&mut l2, 0, 2)?;
    let mut l1l2 = l2.clone();
    apply_generator(&mut l1l2, mu, 1)?;
    let s = (alpha / 2.0).sin();

    let mut residual = 0.0f64;
    for i in 0..psi.dim() {
        let lhs = ab.amplitude(i) - ba.amplitude(i);
        let rhs = (l2.amplitude(i) - l1l2.amplitude(i)) * s;
        residual += (lhs - rhs).norm_sqr();
    }
    Ok(residual.sqrt())
}
