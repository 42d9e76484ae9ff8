//! Reduced descriptions: the decision-tree ensemble, tape readout and
//! measurement postponement.
//!
//! Replacing every pair pulse of cycle 1 by an actual projective measurement
//! of the head turns the machine into an ensemble of non-interacting
//! two-level systems, each alternately rotated and measured. The ensemble
//! average over the resulting 2^M trajectories reproduces the head's reduced
//! density matrix exactly ("quantum parallelism").
//!
//! Outcome convention: a branch outcome is the measured head eigenvalue of
//! lambda_3, so +1 means the head collapsed to |1(S)>. Because the pi-pulse
//! flips a memory cell exactly when the head is in |0>, tape bit 1
//! corresponds to head outcome -1 (strict anti-correlation). Branches are
//! enumerated exactly; zero-probability subtrees are dropped.

use std::collections::BTreeMap;

use nalgebra::Matrix2;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gates::{project, BRANCH_EPS};
use crate::machine::{run, step, MachineSpec};
use crate::statespace::MAX_CELLS;

/// One measurement trajectory of the decision tree.
#[derive(Debug, Clone, PartialEq)]
pub struct HistoryBranch {
    /// Head lambda_3 outcomes at times T_2, T_4, ..., T_2M.
    pub outcomes: Vec<i8>,
    pub probability: f64,
    /// Head state after the last measurement (a basis state of the head).
    pub final_head: [Complex64; 2],
}

impl HistoryBranch {
    /// Sign form, e.g. "++--".
    pub fn signs(&self) -> String {
        self.outcomes
            .iter()
            .map(|&o| if o > 0 { '+' } else { '-' })
            .collect()
    }

    /// Bit form with + mapped to 1, e.g. "1100".
    pub fn bits(&self) -> String {
        self.outcomes
            .iter()
            .map(|&o| if o > 0 { '1' } else { '0' })
            .collect()
    }

    /// The tape record this history writes: bit 1 where the head was |0>.
    pub fn tape_bits(&self) -> String {
        self.outcomes
            .iter()
            .map(|&o| if o > 0 { '0' } else { '1' })
            .collect()
    }
}

fn rotate_local(head: &mut [Complex64; 2], alpha: f64) {
    let half = alpha / 2.0;
    let c = Complex64::new(half.cos(), 0.0);
    let mis = Complex64::new(0.0, -half.sin());
    let a0 = head[0];
    let a1 = head[1];
    head[0] = c * a0 + mis * a1;
    head[1] = mis * a0 + c * a1;
}

/// Exact enumeration of the cycle-1 decision tree: one two-level system
/// starting at |0>, alternately rotated by alpha_nu and measured in the
/// lambda_3 basis. Branch probability is the product of Born factors.
pub fn enumerate_histories(spec: &MachineSpec) -> Result<Vec<HistoryBranch>> {
    let cells = spec.num_cells();
    if cells > MAX_CELLS {
        return Err(Error::SizeCap(cells, MAX_CELLS));
    }
    let angles: Vec<f64> = spec
        .angles_for_cycle(1)
        .iter()
        .map(|a| a.radians())
        .collect();
    let mut out = Vec::new();
    let init = [Complex64::ONE, Complex64::ZERO];
    let mut stack: Vec<(usize, f64, [Complex64; 2], Vec<i8>)> = vec![(0, 1.0, init, Vec::new())];
    while let Some((depth, prob, mut head, outcomes)) = stack.pop() {
        if depth == cells {
            out.push(HistoryBranch {
                outcomes,
                probability: prob,
                final_head: head,
            });
            continue;
        }
        rotate_local(&mut head, angles[depth]);
        let p1 = head[1].norm_sqr();
        let p0 = head[0].norm_sqr();
        if p1 > BRANCH_EPS {
            let mut o = outcomes.clone();
            o.push(1);
            stack.push((depth + 1, prob * p1, [Complex64::ZERO, Complex64::ONE], o));
        }
        if p0 > BRANCH_EPS {
            let mut o = outcomes;
            o.push(-1);
            stack.push((depth + 1, prob * p0, [Complex64::ONE, Complex64::ZERO], o));
        }
    }
    out.sort_by(|a, b| a.outcomes.cmp(&b.outcomes));
    Ok(out)
}

/// Ensemble average sum_b p_b |head_b><head_b| over a set of branches.
pub fn ensemble_density(branches: &[HistoryBranch]) -> Result<Matrix2<Complex64>> {
    let total: f64 = branches.iter().map(|b| b.probability).sum();
    if (total - 1.0).abs() > 1e-10 {
        return Err(Error::BranchNormalization(total));
    }
    let mut rho = Matrix2::zeros();
    for b in branches {
        let p = Complex64::new(b.probability, 0.0);
        for r in 0..2 {
            for c in 0..2 {
                rho[(r, c)] += p * b.final_head[r] * b.final_head[c].conj();
            }
        }
    }
    Ok(rho)
}

/// Trace distance of two 2x2 Hermitian matrices.
fn trace_distance(a: &Matrix2<Complex64>, b: &Matrix2<Complex64>) -> f64 {
    let d = a - b;
    let (p, q, r) = (d[(0, 0)].re, d[(1, 1)].re, d[(0, 1)]);
    let disc = ((p - q) * (p - q) + 4.0 * r.norm_sqr()).sqrt();
    let l1 = 0.5 * ((p + q) + disc);
    let l2 = 0.5 * ((p + q) - disc);
    0.5 * (l1.abs() + l2.abs())
}

/// Ensemble-equivalence check for cycle 1: the largest trace distance, over
/// the measurement times T_2nu, between the machine head's reduced density
/// matrix and the decision-tree ensemble average truncated at step nu.
/// Contractually <= 1e-12.
pub fn parallelism_residual(spec: &MachineSpec) -> Result<f64> {
    let cells = spec.num_cells();
    let angles: Vec<f64> = spec
        .angles_for_cycle(1)
        .iter()
        .map(|a| a.radians())
        .collect();

    // machine side: reduced density of S after each even step
    let mut reduced = Vec::with_capacity(cells);
    run(spec, 1, |label, psi| {
        if label.step % 2 == 0 {
            reduced.push(psi.reduced_density(0).expect("head density"));
        }
    })?;

    // ensemble side: branch front evolved measurement by measurement
    let mut front: Vec<(f64, [Complex64; 2])> = vec![(1.0, [Complex64::ONE, Complex64::ZERO])];
    let mut worst: f64 = 0.0;
    for (nu, &alpha) in angles.iter().enumerate() {
        let mut next = Vec::with_capacity(front.len() * 2);
        for (p, mut head) in front {
            rotate_local(&mut head, alpha);
            let p1 = head[1].norm_sqr();
            let p0 = head[0].norm_sqr();
            if p0 > BRANCH_EPS {
                next.push((p * p0, [Complex64::ONE, Complex64::ZERO]));
            }
            if p1 > BRANCH_EPS {
                next.push((p * p1, [Complex64::ZERO, Complex64::ONE]));
            }
        }
        front = next;
        let mut rho = Matrix2::zeros();
        for (p, head) in &front {
            let pc = Complex64::new(*p, 0.0);
            for r in 0..2 {
                for c in 0..2 {
                    rho[(r, c)] += pc * head[r] * head[c].conj();
                }
            }
        }
        worst = worst.max(trace_distance(&reduced[nu], &rho));
    }
    Ok(worst)
}

/// Complete tape measurement at the end of cycle 1: maps every tape outcome
/// of nonzero probability (bits of cells 1..=M, in visit order) to the unique
/// head history consistent with it. Beyond cycle 1 the identification is
/// lost, so only cycle 1 is supported.
pub fn tape_readout(spec: &MachineSpec) -> Result<BTreeMap<String, HistoryBranch>> {
    let cells = spec.num_cells();
    let psi = run(spec, 1, |_, _| {})?;
    let mut out = BTreeMap::new();
    for tape in 0..(1usize << cells) {
        // marginal probability and conditional head state for this outcome
        let base = tape << 1;
        let a0 = psi.amplitude(base);
        let a1 = psi.amplitude(base | 1);
        let prob = a0.norm_sqr() + a1.norm_sqr();
        if prob < BRANCH_EPS {
            continue;
        }
        let norm = 1.0 / prob.sqrt();
        let key: String = (0..cells)
            .map(|k| if tape >> k & 1 == 1 { '1' } else { '0' })
            .collect();
        // anti-correlation: tape bit 1 means the head was |0> at that step
        let outcomes: Vec<i8> = (0..cells)
            .map(|k| if tape >> k & 1 == 1 { -1 } else { 1 })
            .collect();
        out.insert(
            key,
            HistoryBranch {
                outcomes,
                probability: prob,
                final_head: [a0 * norm, a1 * norm],
            },
        );
    }
    Ok(out)
}

/// Norm difference between measuring cell mu right after its write step and
/// postponing the measurement to the end of the cycle (plus the deviation of
/// the two branch probabilities). Contractually <= 1e-12.
pub fn postponement_residual(spec: &MachineSpec, mu: usize, outcome: u8) -> Result<f64> {
    let cells = spec.num_cells();
    if mu < 1 || mu > cells {
        return Err(Error::InvalidMemoryCell(mu, cells));
    }
    // early measurement: project at step 2 mu, then finish the cycle
    let mut early = spec.initial_state()?;
    for j in 1..=(2 * mu) {
        step(&mut early, spec, 1, j)?;
    }
    let p_early = project(&mut early, mu, outcome)?;
    for j in (2 * mu + 1)..=(2 * cells) {
        step(&mut early, spec, 1, j)?;
    }
    // postponed measurement: finish the cycle, then project
    let mut late = spec.initial_state()?;
    for j in 1..=(2 * cells) {
        step(&mut late, spec, 1, j)?;
    }
    let p_late = project(&mut late, mu, outcome)?;

    Ok(early.distance(&late)?.max((p_early - p_late).abs()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machine::Angle;
    use crate::statespace::TOL;

    #[test]
    fn zero_angle_machine_has_one_branch() {
        let spec = MachineSpec::new(vec![Angle::ZERO; 4]).unwrap();
        let branches = enumerate_histories(&spec).unwrap();
        assert_eq!(branches.len(), 1);
        let b = &branches[0];
        assert_eq!(b.outcomes, vec![-1, -1, -1, -1]);
        assert!((b.probability - 1.0).abs() < TOL);
        assert_eq!(b.signs(), "----");
        assert_eq!(b.bits(), "0000");
        assert_eq!(b.tape_bits(), "1111");
    }

    #[test]
    fn cat_machine_has_two_equal_branches() {
        let spec = MachineSpec::cat(4).unwrap();
        let branches = enumerate_histories(&spec).unwrap();
        assert_eq!(branches.len(), 2);
        for b in &branches {
            assert!((b.probability - 0.5).abs() < TOL);
            assert!(b.outcomes.iter().all(|&o| o == b.outcomes[0]));
        }
    }

    #[test]
    fn coin_machine_is_sixteen_fair_tosses() {
        let spec = MachineSpec::coin(4).unwrap();
        let branches = enumerate_histories(&spec).unwrap();
        assert_eq!(branches.len(), 16);
        for b in &branches {
            assert!((b.probability - 1.0 / 16.0).abs() < TOL);
        }
        let total: f64 = branches.iter().map(|b| b.probability).sum();
        assert!((total - 1.0).abs() < TOL);
    }

    #[test]
    fn ensemble_density_cases() {
        let single = MachineSpec::new(vec![Angle::ZERO; 4]).unwrap();
        let rho = ensemble_density(&enumerate_histories(&single).unwrap()).unwrap();
        assert!((rho[(0, 0)].re - 1.0).abs() < TOL && rho[(1, 1)].norm() < TOL);

        let coin = MachineSpec::coin(4).unwrap();
        let rho = ensemble_density(&enumerate_histories(&coin).unwrap()).unwrap();
        assert!((rho[(0, 0)].re - 0.5).abs() < TOL);
        assert!((rho[(1, 1)].re - 0.5).abs() < TOL);
        assert!(rho[(0, 1)].norm() < TOL);

        // zeno at T_8: diagonal with k3 = -0.25, i.e. rho_00 = 0.625
        let zeno = MachineSpec::zeno(4).unwrap();
        let rho = ensemble_density(&enumerate_histories(&zeno).unwrap()).unwrap();
        assert!((rho[(0, 0)].re - 0.625).abs() < TOL);

        // unnormalized input is rejected
        let mut branches = enumerate_histories(&coin).unwrap();
        branches.pop();
        assert!(matches!(
            ensemble_density(&branches),
            Err(Error::BranchNormalization(_))
        ));
    }

    #[test]
    fn parallelism_for_sample_machines() {
        for spec in [
            MachineSpec::zeno(4).unwrap(),
            MachineSpec::coin(4).unwrap(),
            MachineSpec::cat(4).unwrap(),
            MachineSpec::new(vec![Angle::ZERO; 4]).unwrap(),
            MachineSpec::new(vec![
                Angle::Radians(0.31),
                Angle::Radians(2.1),
                Angle::Radians(1.4),
                Angle::Radians(0.9),
                Angle::Radians(2.8),
                Angle::Radians(0.1),
            ])
            .unwrap(),
        ] {
            assert!(parallelism_residual(&spec).unwrap() <= 1e-12);
        }
    }

    #[test]
    fn tape_readout_of_special_machines() {
        // cat: two tape outcomes, strictly anti-correlated with the head
        let cat = MachineSpec::cat(4).unwrap();
        let map = tape_readout(&cat).unwrap();
        assert_eq!(map.len(), 2);
        let all_ones = map.get("1111").unwrap();
        assert_eq!(all_ones.outcomes, vec![-1, -1, -1, -1]);
        assert!((all_ones.probability - 0.5).abs() < TOL);
        let all_zeros = map.get("0000").unwrap();
        assert_eq!(all_zeros.outcomes, vec![1, 1, 1, 1]);
        assert!((all_zeros.probability - 0.5).abs() < TOL);

        // zero angles: the head never leaves |0>, so every cell flips
        let zero = MachineSpec::new(vec![Angle::ZERO; 4]).unwrap();
        let map = tape_readout(&zero).unwrap();
        assert_eq!(map.len(), 1);
        let b = map.get("1111").unwrap();
        assert_eq!(b.outcomes, vec![-1, -1, -1, -1]);
        assert!((b.probability - 1.0).abs() < TOL);
    }

    #[test]
    fn tape_probabilities_match_decision_tree() {
        let spec = MachineSpec::zeno(4).unwrap();
        let map = tape_readout(&spec).unwrap();
        let branches = enumerate_histories(&spec).unwrap();
        assert_eq!(map.len(), 16);
        assert_eq!(branches.len(), 16);
        for b in &branches {
            let entry = map.get(&b.tape_bits()).unwrap();
            assert!((entry.probability - b.probability).abs() < TOL);
            assert_eq!(entry.outcomes, b.outcomes);
        }
    }

    #[test]
    fn postponement_special_cases() {
        let cat = MachineSpec::cat(4).unwrap();
        assert!(postponement_residual(&cat, 1, 1).unwrap() <= 1e-12);

        let zero = MachineSpec::new(vec![Angle::ZERO; 4]).unwrap();
        // the only possible outcome for cell 1 is the flipped bit
        assert!(postponement_residual(&zero, 1, 1).unwrap() < TOL);
        assert!(postponement_residual(&zero, 1, 0).is_err());
        assert!(postponement_residual(&zero, 0, 0).is_err());
    }

    #[test]
    fn memory_measurement_order_is_irrelevant() {
        // projecting the cells of psi^(1,2M) in any order gives the same
        // joint distribution
        let spec = MachineSpec::zeno(4).unwrap();
        let psi = run(&spec, 1, |_, _| {}).unwrap();
        let orders: [[usize; 4]; 3] = [[1, 2, 3, 4], [4, 3, 2, 1], [2, 4, 1, 3]];
        for tape in 0..16usize {
            let mut probs = Vec::new();
            for order in orders {
                let mut state = psi.clone();
                let mut joint = 1.0;
                let mut possible = true;
                for mu in order {
                    let want = ((tape >> (mu - 1)) & 1) as u8;
                    match project(&mut state, mu, want) {
                        Ok(p) => joint *= p,
                        Err(_) => {
                            possible = false;
                            break;
                        }
                    }
                }
                probs.push(if possible { joint } else { 0.0 });
            }
            for p in &probs {
                assert!((p - probs[0]).abs() < TOL, "tape {tape}");
            }
        }
    }
}
