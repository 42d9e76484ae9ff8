//! SU(2) generator and cluster-operator algebra.
//!
//! Generators per subsystem (in terms of local transition operators P_pq):
//! lambda_1 = P01 + P10, lambda_2 = i P01 - i P10, lambda_3 = P11 - P00,
//! lambda_0 = 1. Note the lambda_2 sign: it is the negative of one common
//! textbook convention, and it is binding for every phase in this crate.
//!
//! Cluster operators Q are tensor products of generators, one per subsystem,
//! identified by a digit index string with the head S first ("33000" puts a
//! lambda_3 on S and on memory cell 1). They are Hermitian, unitary and
//! mutually orthogonal under the trace, Tr{Q Q'} = 2^(M+1) delta.
//!
//! Cluster operators act on states by per-site bit traversal; dense matrices
//! appear only in the coefficient/transform paths and are capped at M <= 5.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, Matrix4};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::statespace::{StateVector, SubsystemId};

/// Largest M for which dense-matrix paths are allowed.
pub const DENSE_MAX_CELLS: usize = 5;

/// Generator label 0..=3 (0 = identity).
pub type GeneratorIndex = u8;

/// Index of a cluster operator: one generator label per subsystem, S first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClusterIndex(Vec<GeneratorIndex>);

impl ClusterIndex {
    pub fn new(entries: Vec<GeneratorIndex>) -> Result<Self> {
        for &e in &entries {
            if e > 3 {
                return Err(Error::InvalidGenerator(e));
            }
        }
        Ok(Self(entries))
    }

    /// The c = 0 index (identity operator) on `subsystems` spins.
    pub fn identity(subsystems: usize) -> Self {
        Self(vec![0; subsystems])
    }

    /// A single generator `gen` at `site`, identity elsewhere.
    pub fn single(subsystems: usize, site: SubsystemId, gen: GeneratorIndex) -> Result<Self> {
        let mut v = vec![0; subsystems];
        if site >= subsystems {
            return Err(Error::InvalidSubsystem {
                id: site,
                max: subsystems - 1,
            });
        }
        if gen > 3 {
            return Err(Error::InvalidGenerator(gen));
        }
        v[site] = gen;
        Ok(Self(v))
    }

    /// Two generators at two distinct sites, identity elsewhere.
    pub fn pair(
        subsystems: usize,
        site_a: SubsystemId,
        gen_a: GeneratorIndex,
        site_b: SubsystemId,
        gen_b: GeneratorIndex,
    ) -> Result<Self> {
        let mut idx = Self::single(subsystems, site_a, gen_a)?;
        if site_b >= subsystems {
            return Err(Error::InvalidSubsystem {
                id: site_b,
                max: subsystems - 1,
            });
        }
        if gen_b > 3 {
            return Err(Error::InvalidGenerator(gen_b));
        }
        idx.0[site_b] = gen_b;
        Ok(idx)
    }

    pub fn entries(&self) -> &[GeneratorIndex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Cluster order c: number of non-identity entries.
    pub fn order(&self) -> usize {
        self.0.iter().filter(|&&e| e != 0).count()
    }

    /// Bit mask of sites whose generator flips the local occupation (1 or 2).
    fn flip_mask(&self) -> usize {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e == 1 || e == 2)
            .fold(0, |m, (pos, _)| m | (1 << pos))
    }

    /// Phase factor c(t) in Q|t> = c(t)|t ^ flip_mask>.
    fn basis_phase(&self, t: usize) -> Complex64 {
        let mut c = Complex64::ONE;
        for (pos, &e) in self.0.iter().enumerate() {
            let bit = (t >> pos) & 1;
            match e {
                2 => {
                    c *= if bit == 0 {
                        Complex64::new(0.0, -1.0)
                    } else {
                        Complex64::new(0.0, 1.0)
                    }
                }
                3 => {
                    if bit == 0 {
                        c = -c;
                    }
                }
                _ => {}
            }
        }
        c
    }
}

impl fmt::Display for ClusterIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.0 {
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl FromStr for ClusterIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let entries = s
            .chars()
            .map(|ch| {
                ch.to_digit(10)
                    .map(|d| d as u8)
                    .ok_or(Error::InvalidGenerator(255))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(entries)
    }
}

impl serde::Serialize for ClusterIndex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for ClusterIndex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Apply one SU(2) generator to one subsystem, in place, by bit traversal.
pub fn apply_generator(
    psi: &mut StateVector,
    site: SubsystemId,
    gen: GeneratorIndex,
) -> Result<()> {
    psi.check_subsystem(site)?;
    let bit = 1usize << site;
    let dim = psi.dim();
    let amps = psi.amplitudes_mut();
    match gen {
        0 => {}
        1 => {
            for s in 0..dim {
                if s & bit == 0 {
                    amps.swap(s, s | bit);
                }
            }
        }
        2 => {
            let i = Complex64::new(0.0, 1.0);
            for s in 0..dim {
                if s & bit == 0 {
                    let lo = amps[s];
                    let hi = amps[s | bit];
                    // lambda_2 |0> = -i|1>, lambda_2 |1> = i|0>
                    amps[s] = i * hi;
                    amps[s | bit] = -i * lo;
                }
            }
        }
        3 => {
            for s in 0..dim {
                if s & bit == 0 {
                    amps[s] = -amps[s];
                }
            }
        }
        other => return Err(Error::InvalidGenerator(other)),
    }
    Ok(())
}

/// Apply a cluster operator in place (sequential generators on its support).
pub fn apply_cluster(psi: &mut StateVector, q: &ClusterIndex) -> Result<()> {
    if q.len() != psi.num_subsystems() {
        return Err(Error::ClusterLengthMismatch {
            got: q.len(),
            want: psi.num_subsystems(),
        });
    }
    for (site, &gen) in q.entries().iter().enumerate() {
        if gen != 0 {
            apply_generator(psi, site, gen)?;
        }
    }
    Ok(())
}

/// Expectation value K = <psi|Q|psi> of a cluster operator.
pub fn expect_k(psi: &StateVector, q: &ClusterIndex) -> Result<f64> {
    if q.len() != psi.num_subsystems() {
        return Err(Error::ClusterLengthMismatch {
            got: q.len(),
            want: psi.num_subsystems(),
        });
    }
    let flip = q.flip_mask();
    let amps = psi.amplitudes();
    let mut acc = Complex64::ZERO;
    for t in 0..psi.dim() {
        let a = amps[t];
        if a == Complex64::ZERO {
            continue;
        }
        // Q|t> = c(t)|t^flip>, so <psi|Q|psi> = sum_t conj(a_{t^flip}) c(t) a_t
        acc += amps[t ^ flip].conj() * q.basis_phase(t) * a;
    }
    Ok(acc.re)
}

/// Sparse coefficient map A_q = Tr{A Q_q} of an operator.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorCoefficients {
    subsystems: usize,
    map: BTreeMap<ClusterIndex, Complex64>,
}

impl OperatorCoefficients {
    pub fn new(subsystems: usize) -> Self {
        Self {
            subsystems,
            map: BTreeMap::new(),
        }
    }

    pub fn num_subsystems(&self) -> usize {
        self.subsystems
    }

    pub fn insert(&mut self, q: ClusterIndex, value: Complex64) {
        self.map.insert(q, value);
    }

    pub fn get(&self, q: &ClusterIndex) -> Complex64 {
        self.map.get(q).copied().unwrap_or(Complex64::ZERO)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ClusterIndex, &Complex64)> {
        self.map.iter()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Rebuild the dense operator via A = (1/2^(M+1)) sum A_q Q_q.
    pub fn reconstruct(&self) -> Result<DMatrix<Complex64>> {
        let n = self.subsystems;
        let dim = 1usize << n;
        let mut a = DMatrix::zeros(dim, dim);
        let norm = 1.0 / dim as f64;
        for (q, &coeff) in &self.map {
            let flip = q.flip_mask();
            for t in 0..dim {
                a[(t ^ flip, t)] += coeff * q.basis_phase(t) * norm;
            }
        }
        Ok(a)
    }
}

fn dense_subsystems(dim: usize) -> Result<usize> {
    if dim < 4 || !dim.is_power_of_two() {
        return Err(Error::InvalidDimension(dim));
    }
    let n = dim.trailing_zeros() as usize;
    if n > DENSE_MAX_CELLS + 1 {
        return Err(Error::DenseCap {
            got: n - 1,
            max: DENSE_MAX_CELLS,
        });
    }
    Ok(n)
}

/// All nonzero coefficients A_q = Tr{A Q_q} of a dense operator (M <= 5).
pub fn coefficients(a: &DMatrix<Complex64>) -> Result<OperatorCoefficients> {
    if a.nrows() != a.ncols() {
        return Err(Error::DimensionMismatch(a.nrows(), a.ncols()));
    }
    let n = dense_subsystems(a.nrows())?;
    let dim = a.nrows();
    let mut out = OperatorCoefficients::new(n);
    let mut entries = vec![0u8; n];
    loop {
        let q = ClusterIndex::new(entries.clone())?;
        let flip = q.flip_mask();
        // Q|t> = c(t)|t^flip>  =>  Q_{ut} = c(t) delta_{u, t^flip}, hence
        // Tr{A Q} = sum_t A_{t, t^flip} c(t)
        let mut trace = Complex64::ZERO;
        for t in 0..dim {
            trace += a[(t, t ^ flip)] * q.basis_phase(t);
        }
        if trace.norm() > 1e-9 {
            out.insert(q, trace);
        }
        // odometer over {0,1,2,3}^n
        let mut pos = 0;
        loop {
            if pos == n {
                return Ok(out);
            }
            if entries[pos] < 3 {
                entries[pos] += 1;
                break;
            }
            entries[pos] = 0;
            pos += 1;
        }
    }
}

/// Dense matrix of a cluster operator (M <= 5).
pub fn dense_cluster(q: &ClusterIndex) -> Result<DMatrix<Complex64>> {
    let n = q.len();
    if n > DENSE_MAX_CELLS + 1 {
        return Err(Error::DenseCap {
            got: n - 1,
            max: DENSE_MAX_CELLS,
        });
    }
    let dim = 1usize << n;
    let flip = q.flip_mask();
    let mut m = DMatrix::zeros(dim, dim);
    for t in 0..dim {
        m[(t ^ flip, t)] = q.basis_phase(t);
    }
    Ok(m)
}

/// Dense matrix of any map on states, column by column (test and dense-path
/// helper; M <= 5).
pub fn dense_from_gate<F>(subsystems: usize, mut f: F) -> Result<DMatrix<Complex64>>
where
    F: FnMut(&mut StateVector),
{
    if subsystems > DENSE_MAX_CELLS + 1 {
        return Err(Error::DenseCap {
            got: subsystems - 1,
            max: DENSE_MAX_CELLS,
        });
    }
    let dim = 1usize << subsystems;
    let mut m = DMatrix::zeros(dim, dim);
    for col in 0..dim {
        let mut psi = StateVector::basis_state(subsystems - 1, col)?;
        f(&mut psi);
        for row in 0..dim {
            m[(row, col)] = psi.amplitude(row);
        }
    }
    Ok(m)
}

fn check_unitary(u: &DMatrix<Complex64>) -> Result<()> {
    let id = DMatrix::identity(u.nrows(), u.ncols());
    let dev = (u.adjoint() * u - id).norm();
    if dev > 1e-10 {
        return Err(Error::NonUnitary(dev));
    }
    Ok(())
}

/// One entry X^{col}_{row} = (1/2^(M+1)) Tr{U+ Q_row U Q_col} of the unitary
/// transform in the cluster-operator basis. For U = 1 this is the unit matrix.
pub fn transform_entry(
    u: &DMatrix<Complex64>,
    row: &ClusterIndex,
    col: &ClusterIndex,
) -> Result<f64> {
    let n = dense_subsystems(u.nrows())?;
    if row.len() != n || col.len() != n {
        return Err(Error::ClusterLengthMismatch {
            got: row.len().max(col.len()),
            want: n,
        });
    }
    check_unitary(u)?;
    let qr = dense_cluster(row)?;
    let qc = dense_cluster(col)?;
    let prod = u.adjoint() * qr * u * qc;
    let tr: Complex64 = prod.diagonal().iter().sum();
    let x = tr / (u.nrows() as f64);
    if x.im.abs() >= 1e-10 {
        return Err(Error::NonRealTransform(x.im));
    }
    Ok(x.re)
}

/// Symmetrized correlation C_AB of two operators supported on one subsystem:
/// the normalized scalar product of their traceless coefficient vectors,
/// C = (1/2^(2(M+1))) sum_{j=1..3} A_j B_j. State-independent.
pub fn correlation_c(
    a: &OperatorCoefficients,
    b: &OperatorCoefficients,
    site: SubsystemId,
) -> Result<f64> {
    let n = a.num_subsystems();
    if b.num_subsystems() != n {
        return Err(Error::DimensionMismatch(n, b.num_subsystems()));
    }
    for ops in [a, b] {
        for (q, v) in ops.iter() {
            if v.norm() <= 1e-12 {
                continue;
            }
            for (pos, &e) in q.entries().iter().enumerate() {
                if e != 0 && pos != site {
                    return Err(Error::SupportOutsideSubsystem(site));
                }
            }
        }
    }
    let dim = 1usize << n;
    let norm = 1.0 / ((dim * dim) as f64);
    let mut c = 0.0;
    for j in 1..=3u8 {
        let q = ClusterIndex::single(n, site, j)?;
        c += (a.get(&q) * b.get(&q).conj()).re;
    }
    Ok(c * norm)
}

/// The 4x4 single-subsystem transform matrix of the head rotation by alpha:
/// X00 = X11 = 1, X22 = X33 = cos(alpha), X32 = -X23 = sin(alpha); a rotation
/// of the Bloch vector around the k = 1 axis.
pub fn local_x_matrix(alpha: f64) -> Matrix4<f64> {
    let (s, c) = alpha.sin_cos();
    let mut m = Matrix4::zeros();
    m[(0, 0)] = 1.0;
    m[(1, 1)] = 1.0;
    m[(2, 2)] = c;
    m[(3, 3)] = c;
    m[(3, 2)] = s;
    m[(2, 3)] = -s;
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statespace::TOL;

    fn c64(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// |psi^(1,2)> = cos(a/2)|2> - i sin(a/2)|1> for M = 4.
    fn psi_after_step2(alpha: f64) -> StateVector {
        let mut psi = StateVector::ground_state(4).unwrap();
        let amps = psi.amplitudes_mut();
        amps[0] = Complex64::ZERO;
        amps[2] = c64((alpha / 2.0).cos(), 0.0);
        amps[1] = c64(0.0, -(alpha / 2.0).sin());
        psi
    }

    #[test]
    fn generator_actions() {
        // lambda_1 flips the local bit
        let mut psi = StateVector::ground_state(4).unwrap();
        apply_generator(&mut psi, 1, 1).unwrap();
        assert!((psi.amplitude(2) - Complex64::ONE).norm() < TOL);

        // lambda_3 on the ground state: eigenvalue -1 on every site
        let mut psi = StateVector::ground_state(4).unwrap();
        apply_generator(&mut psi, 0, 3).unwrap();
        assert!((psi.amplitude(0) + Complex64::ONE).norm() < TOL);

        // lambda_2 squared is the identity
        let mut psi = psi_after_step2(0.83);
        let orig = psi.clone();
        apply_generator(&mut psi, 0, 2).unwrap();
        apply_generator(&mut psi, 0, 2).unwrap();
        assert!(psi.distance(&orig).unwrap() < TOL);

        // lambda_2 phase convention: lambda_2 |0> = -i |1>
        let mut psi = StateVector::ground_state(4).unwrap();
        apply_generator(&mut psi, 0, 2).unwrap();
        assert!((psi.amplitude(1) - c64(0.0, -1.0)).norm() < TOL);

        assert!(apply_generator(&mut psi, 9, 1).is_err());
        assert!(apply_generator(&mut psi, 0, 4).is_err());
    }

    #[test]
    fn cluster_identity_and_involution() {
        let mut psi = psi_after_step2(1.1);
        let orig = psi.clone();
        let id = ClusterIndex::identity(5);
        apply_cluster(&mut psi, &id).unwrap();
        assert!(psi.distance(&orig).unwrap() < TOL);

        let q: ClusterIndex = "31202".parse().unwrap();
        apply_cluster(&mut psi, &q).unwrap();
        apply_cluster(&mut psi, &q).unwrap();
        assert!(psi.distance(&orig).unwrap() < TOL);

        let short = ClusterIndex::identity(3);
        assert!(apply_cluster(&mut psi, &short).is_err());
    }

    #[test]
    fn step2_state_is_q33000_eigenstate() {
        let mut psi = psi_after_step2(0.7);
        let orig = psi.clone();
        let q: ClusterIndex = "33000".parse().unwrap();
        apply_cluster(&mut psi, &q).unwrap();
        let mut neg = orig.clone();
        neg.scale(c64(-1.0, 0.0));
        assert!(psi.distance(&neg).unwrap() < TOL);
        assert!((expect_k(&orig, &q).unwrap() + 1.0).abs() < TOL);
    }

    #[test]
    fn expectation_values() {
        let psi = psi_after_step2(0.7);
        assert!((expect_k(&psi, &ClusterIndex::identity(5)).unwrap() - 1.0).abs() < TOL);
        // K_30000^(1,2) = -cos(alpha_1)
        let q = ClusterIndex::single(5, 0, 3).unwrap();
        assert!((expect_k(&psi, &q).unwrap() + 0.7f64.cos()).abs() < TOL);
    }

    #[test]
    fn orthogonality_exhaustive_small() {
        // Tr{Q Q'} = 2^(M+1) delta, checked for all pairs at M <= 2
        for n in 2..=3usize {
            let dim = 1usize << n;
            let mut all = Vec::new();
            let mut entries = vec![0u8; n];
            'outer: loop {
                all.push(ClusterIndex::new(entries.clone()).unwrap());
                let mut pos = 0;
                loop {
                    if pos == n {
                        break 'outer;
                    }
                    if entries[pos] < 3 {
                        entries[pos] += 1;
                        break;
                    }
                    entries[pos] = 0;
                    pos += 1;
                }
            }
            for qa in &all {
                let ma = dense_cluster(qa).unwrap();
                for qb in &all {
                    let mb = dense_cluster(qb).unwrap();
                    let tr: Complex64 = (&ma * &mb).diagonal().iter().sum();
                    let expect = if qa == qb { dim as f64 } else { 0.0 };
                    assert!((tr - c64(expect, 0.0)).norm() < 1e-10, "{qa} {qb}");
                }
            }
        }
    }

    #[test]
    fn coefficients_of_identity() {
        let dim = 32;
        let a = DMatrix::identity(dim, dim);
        let coeffs = coefficients(&a).unwrap();
        assert_eq!(coeffs.len(), 1);
        let id = ClusterIndex::identity(5);
        assert!((coeffs.get(&id) - c64(32.0, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn coefficients_of_head_lambda3() {
        let q = ClusterIndex::single(5, 0, 3).unwrap();
        let a = dense_cluster(&q).unwrap();
        let coeffs = coefficients(&a).unwrap();
        assert_eq!(coeffs.len(), 1);
        assert!((coeffs.get(&q) - c64(32.0, 0.0)).norm() < 1e-9);
        // reconstruction round-trip
        let back = coeffs.reconstruct().unwrap();
        assert!((back - a).norm() < 1e-10);
    }

    #[test]
    fn coefficients_of_cnot() {
        // U(S,1) = (Q00000 + Q30000 + Q01000 - Q31000)/2
        let u = dense_from_gate(5, |psi| {
            crate::gates::cnot(psi, 1).unwrap();
        })
        .unwrap();
        let coeffs = coefficients(&u).unwrap();
        assert_eq!(coeffs.len(), 4);
        let cases = [
            ("00000", 16.0),
            ("30000", 16.0),
            ("01000", 16.0),
            ("31000", -16.0),
        ];
        for (s, v) in cases {
            let q: ClusterIndex = s.parse().unwrap();
            assert!((coeffs.get(&q) - c64(v, 0.0)).norm() < 1e-9, "{s}");
        }
    }

    #[test]
    fn transform_entries() {
        let dim = 32;
        let id = DMatrix::identity(dim, dim);
        let q2 = ClusterIndex::single(5, 0, 2).unwrap();
        let q3 = ClusterIndex::single(5, 0, 3).unwrap();
        assert!((transform_entry(&id, &q3, &q3).unwrap() - 1.0).abs() < 1e-10);
        assert!(transform_entry(&id, &q2, &q3).unwrap().abs() < 1e-10);

        let alpha = 0.9f64;
        let u = dense_from_gate(5, |psi| crate::gates::rotate_head(psi, alpha)).unwrap();
        // X23 = -sin(alpha), X32 = sin(alpha), X22 = X33 = cos(alpha)
        assert!((transform_entry(&u, &q2, &q3).unwrap() + alpha.sin()).abs() < 1e-10);
        assert!((transform_entry(&u, &q3, &q2).unwrap() - alpha.sin()).abs() < 1e-10);
        assert!((transform_entry(&u, &q3, &q3).unwrap() - alpha.cos()).abs() < 1e-10);

        let not_unitary = DMatrix::from_element(dim, dim, c64(0.5, 0.0));
        assert!(transform_entry(&not_unitary, &q2, &q3).is_err());
    }

    #[test]
    fn x_matrix_entries_and_composition() {
        let x0 = local_x_matrix(0.0);
        assert!((x0 - Matrix4::identity()).norm() < TOL);
        let xh = local_x_matrix(std::f64::consts::FRAC_PI_2);
        assert!(xh[(2, 2)].abs() < TOL && xh[(3, 3)].abs() < TOL);
        assert!((xh[(3, 2)] - 1.0).abs() < TOL && (xh[(2, 3)] + 1.0).abs() < TOL);
        let a = 0.4;
        let b = 1.3;
        assert!((local_x_matrix(a) * local_x_matrix(b) - local_x_matrix(a + b)).norm() < 1e-12);
    }

    #[test]
    fn correlation_of_rotated_lambda3() {
        let q3 = ClusterIndex::single(5, 0, 3).unwrap();
        let a = coefficients(&dense_cluster(&q3).unwrap()).unwrap();
        assert!((correlation_c(&a, &a, 0).unwrap() - 1.0).abs() < 1e-10);

        let q1 = ClusterIndex::single(5, 0, 1).unwrap();
        let b1 = coefficients(&dense_cluster(&q1).unwrap()).unwrap();
        assert!(correlation_c(&a, &b1, 0).unwrap().abs() < 1e-10);

        // B = U lambda_3 U+ for the head rotation: C_33 = cos(alpha)
        let alpha = 1.234f64;
        let u = dense_from_gate(5, |psi| crate::gates::rotate_head(psi, alpha)).unwrap();
        let rotated = &u * dense_cluster(&q3).unwrap() * u.adjoint();
        let b = coefficients(&rotated).unwrap();
        assert!((correlation_c(&a, &b, 0).unwrap() - alpha.cos()).abs() < 1e-10);

        // support outside the named subsystem is rejected
        let pair = ClusterIndex::pair(5, 0, 3, 1, 3).unwrap();
        let bad = coefficients(&dense_cluster(&pair).unwrap()).unwrap();
        assert!(correlation_c(&a, &bad, 0).is_err());
    }
}
