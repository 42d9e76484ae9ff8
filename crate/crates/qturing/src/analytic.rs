//! Closed-form end-of-cycle predictions.
//!
//! These formulas give every standard end-of-cycle correlation in O(M)
//! arithmetic per entry, independent of the cycle number, and serve as the
//! differential-testing counterpart of the brute-force statevector path.
//! The product structure is uniform in M; the generalization beyond M = 4 is
//! pinned by the differential suite, not assumed.
//!
//! Empty angle products are 1, so the head/last-cell pair correctly reaches
//! its exact -1 endpoint at the end of cycle 1.

use crate::clusterops::ClusterIndex;
use crate::error::{Error, Result};
use crate::machine::MachineSpec;
use crate::records::{CorrelationRecord, Source};

fn prod_cos(angles: &[f64], factor: f64) -> f64 {
    angles.iter().map(|&a| (factor * a).cos()).product()
}

/// kappa: memory-pair (and head k3) building block.
/// kappa(m, list) = [prod cos(m a_i)]/2 + [1 if m even else prod cos(a_i)]/2.
pub fn kappa(m: u64, angles: &[f64]) -> Result<f64> {
    if angles.is_empty() {
        return Err(Error::EmptyAngles);
    }
    let mf = m as f64;
    let first = prod_cos(angles, mf);
    let second = if m % 2 == 0 {
        1.0
    } else {
        prod_cos(angles, 1.0)
    };
    Ok(0.5 * (first + second))
}

/// kappa_s: as kappa with cos(m a_1) -> sin(m a_1), cos(a_1) -> -sin(a_1)
/// and the even-branch constant 1 -> 0. The first listed angle is alpha_1.
pub fn kappa_s(m: u64, angles: &[f64]) -> Result<f64> {
    if angles.is_empty() {
        return Err(Error::EmptyAngles);
    }
    let mf = m as f64;
    let rest = &angles[1..];
    let first = (mf * angles[0]).sin() * prod_cos(rest, mf);
    let second = if m % 2 == 0 {
        0.0
    } else {
        -angles[0].sin() * prod_cos(rest, 1.0)
    };
    Ok(0.5 * (first + second))
}

/// phi_k: one-point prediction for memory cell k at the end of cycle m.
/// Even m: -prod_i cos(m a_i / 2), independent of k. Odd m:
/// prod_{i<=k} cos((m+1) a_i / 2) * prod_{i>k} cos((m-1) a_i / 2).
pub fn phi(m: u64, k: usize, angles: &[f64]) -> Result<f64> {
    let cells = angles.len();
    if k < 1 || k > cells {
        return Err(Error::InvalidMemoryCell(k, cells));
    }
    let mf = m as f64;
    if m % 2 == 0 {
        Ok(-prod_cos(angles, mf / 2.0))
    } else {
        let head = prod_cos(&angles[..k], (mf + 1.0) / 2.0);
        let tail = prod_cos(&angles[k..], (mf - 1.0) / 2.0);
        Ok(head * tail)
    }
}

/// chi_k: head-memory pair prediction; -phi_k with (m+1) and (m-1) swapped.
pub fn chi(m: u64, k: usize, angles: &[f64]) -> Result<f64> {
    let cells = angles.len();
    if k < 1 || k > cells {
        return Err(Error::InvalidMemoryCell(k, cells));
    }
    let mf = m as f64;
    if m % 2 == 0 {
        Ok(prod_cos(angles, mf / 2.0))
    } else {
        let head = prod_cos(&angles[..k], (mf - 1.0) / 2.0);
        let tail = prod_cos(&angles[k..], (mf + 1.0) / 2.0);
        Ok(-head * tail)
    }
}

/// Zeno closed form: head k3 after one cycle of the Zeno machine,
/// -cos^M(pi/M). Approaches -1 as M grows.
pub fn zeno(cells: usize) -> Result<f64> {
    if cells < 2 {
        return Err(Error::InvalidDimension(cells));
    }
    let c = (std::f64::consts::PI / cells as f64).cos();
    Ok(-c.powi(cells as i32))
}

/// The standard end-of-cycle predictions: head one-points, memory one-points,
/// memory pairs and head-memory pairs.
#[derive(Debug, Clone)]
pub struct PredictionSet {
    pub cycle: u64,
    pub entries: Vec<CorrelationRecord>,
}

/// The standard index set of an M-cell ring, in the serialization order used
/// for records: head (1,2,3), memory one-points, memory pairs, head-memory
/// pairs.
pub fn standard_indices(cells: usize) -> Vec<ClusterIndex> {
    let n = cells + 1;
    let mut out = Vec::new();
    for j in 1..=3u8 {
        out.push(ClusterIndex::single(n, 0, j).expect("head index"));
    }
    for k in 1..=cells {
        out.push(ClusterIndex::single(n, k, 3).expect("memory index"));
    }
    for k in 1..cells {
        for l in (k + 1)..=cells {
            out.push(ClusterIndex::pair(n, k, 3, l, 3).expect("pair index"));
        }
    }
    for k in 1..=cells {
        out.push(ClusterIndex::pair(n, 0, 3, k, 3).expect("head-memory index"));
    }
    out
}

/// Closed-form predictions for the end of cycle m (step 2M). O(M) per entry.
pub fn predict(m: u64, spec: &MachineSpec) -> Result<PredictionSet> {
    if spec.has_overrides() {
        return Err(Error::NonUniformAngles);
    }
    let cells = spec.num_cells();
    let n = cells + 1;
    let angles: Vec<f64> = spec.angles().iter().map(|a| a.radians()).collect();
    let step = 2 * cells;
    let mut entries = Vec::new();
    let mut push = |idx: ClusterIndex, value: f64| {
        entries.push(CorrelationRecord {
            cycle: m,
            step,
            index: idx,
            value,
            source: Source::Analytic,
        });
    };

    push(ClusterIndex::single(n, 0, 1)?, 0.0);
    push(ClusterIndex::single(n, 0, 2)?, kappa_s(m, &angles)?);
    push(ClusterIndex::single(n, 0, 3)?, -kappa(m, &angles)?);
    for k in 1..=cells {
        push(ClusterIndex::single(n, k, 3)?, phi(m, k, &angles)?);
    }
    // the pair (k, l) sees the rotations between its two write steps
    for k in 1..cells {
        for l in (k + 1)..=cells {
            push(ClusterIndex::pair(n, k, 3, l, 3)?, kappa(m, &angles[k..l])?);
        }
    }
    for k in 1..=cells {
        push(ClusterIndex::pair(n, 0, 3, k, 3)?, chi(m, k, &angles)?);
    }
    Ok(PredictionSet { cycle: m, entries })
}

/// Web-of-correlations identity: the product of the head-cell pair value and
/// that cell's one-point value is the same for every cell k, at every step of
/// every cycle. Returns the largest pairwise deviation among the products.
///
/// The records must all belong to one (m, j) and contain, for each cell k,
/// both the head-cell pair index and the cell one-point index.
pub fn web_residual(records: &[CorrelationRecord]) -> Result<f64> {
    let (m, j) = match records.first() {
        Some(r) => (r.cycle, r.step),
        None => return Err(Error::EmptyAngles),
    };
    let n = records.iter().map(|r| r.index.len()).max().unwrap_or(0);
    let cells = n - 1;
    let find = |idx: &ClusterIndex| -> Result<f64> {
        records
            .iter()
            .find(|r| r.cycle == m && r.step == j && &r.index == idx)
            .map(|r| r.value)
            .ok_or_else(|| Error::MissingRecord(idx.to_string(), m, j))
    };
    let mut products = Vec::with_capacity(cells);
    for k in 1..=cells {
        let pair = find(&ClusterIndex::pair(n, 0, 3, k, 3)?)?;
        let single = find(&ClusterIndex::single(n, k, 3)?)?;
        products.push(pair * single);
    }
    let mut worst: f64 = 0.0;
    for a in &products {
        for b in &products {
            worst = worst.max((a - b).abs());
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clusterops::expect_k;
    use crate::machine::{run_silent, Angle};
    use crate::statespace::TOL;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    #[test]
    fn kappa_values() {
        // m = 1 on a single angle: plain cosine (the memory-pair entry)
        assert!((kappa(1, &[0.37]).unwrap() - 0.37f64.cos()).abs() < TOL);
        // m = 2 at pi/2: cos(pi)/2 + 1/2 = 0
        assert!(kappa(2, &[FRAC_PI_2]).unwrap().abs() < TOL);
        // even cycles of a zero-angle list
        assert!((kappa(4, &[0.0, 0.0]).unwrap() - 1.0).abs() < TOL);
        assert!(kappa(1, &[]).is_err());
    }

    #[test]
    fn kappa_s_values() {
        assert!(kappa_s(1, &[0.0, 0.0, 0.0, 0.0]).unwrap().abs() < TOL);
        let coin = [FRAC_PI_2; 4];
        assert!(kappa_s(1, &coin).unwrap().abs() < TOL);
        let cat = [FRAC_PI_2, 0.0, 0.0, 0.0];
        assert!(kappa_s(1, &cat).unwrap().abs() < TOL);
    }

    #[test]
    fn phi_values() {
        let zeno = [FRAC_PI_4; 4];
        assert!((phi(1, 1, &zeno).unwrap() - FRAC_PI_4.cos()).abs() < TOL);
        assert!((phi(2, 3, &[0.0; 4]).unwrap() + 1.0).abs() < TOL);
        let coin = [FRAC_PI_2; 4];
        assert!(phi(1, 4, &coin).unwrap().abs() < TOL);
        assert!(phi(1, 0, &coin).is_err());
        assert!(phi(1, 5, &coin).is_err());
    }

    #[test]
    fn chi_values() {
        let zeno = [FRAC_PI_4; 4];
        let expect = -(FRAC_PI_4.cos().powi(3));
        assert!((chi(1, 1, &zeno).unwrap() - expect).abs() < 1e-12);
        // k = M at odd m: exact -1 for any angles
        assert!((chi(1, 4, &[0.3, 1.4, 0.9, 2.2]).unwrap() + 1.0).abs() < TOL);
        assert!((chi(2, 2, &[0.0; 4]).unwrap() - 1.0).abs() < TOL);
    }

    #[test]
    fn zeno_formula() {
        assert!(zeno(2).unwrap().abs() < TOL);
        assert!((zeno(4).unwrap() + 0.25).abs() < TOL);
        assert!(zeno(100).unwrap() <= -0.90);
        assert!(zeno(1).is_err());
    }

    #[test]
    fn coin_predictions_vanish() {
        let spec = MachineSpec::coin(4).unwrap();
        let set = predict(1, &spec).unwrap();
        // everything vanishes except the head/last-cell pair, which is the
        // exact -1 anti-correlation endpoint for any angle list at odd m
        let last: ClusterIndex = "30003".parse().unwrap();
        for r in &set.entries {
            if r.index == last {
                assert!((r.value + 1.0).abs() < TOL);
            } else {
                assert!(r.value.abs() < TOL, "{} = {}", r.index, r.value);
            }
        }
    }

    #[test]
    fn cat_memory_pairs_strictly_correlated() {
        let spec = MachineSpec::cat(4).unwrap();
        for m in [1u64, 3, 7] {
            let set = predict(m, &spec).unwrap();
            for r in &set.entries {
                let e = r.index.entries();
                if e[0] == 0 && r.index.order() == 2 {
                    assert!((r.value - 1.0).abs() < TOL, "{} at m={m}", r.index);
                }
            }
        }
    }

    #[test]
    fn zeno_prediction_matches_formula() {
        let spec = MachineSpec::zeno(4).unwrap();
        let set = predict(1, &spec).unwrap();
        let head3: ClusterIndex = "30000".parse().unwrap();
        let v = set.entries.iter().find(|r| r.index == head3).unwrap().value;
        assert!((v - zeno(4).unwrap()).abs() < TOL);
    }

    #[test]
    fn memory_pairs_decay_with_step_distance() {
        let spec = MachineSpec::zeno(4).unwrap();
        let a: Vec<f64> = spec.angles().iter().map(|x| x.radians()).collect();
        let k12 = kappa(1, &a[1..2]).unwrap();
        let k13 = kappa(1, &a[1..3]).unwrap();
        let k14 = kappa(1, &a[1..4]).unwrap();
        assert!(k12 >= k13 && k13 >= k14);
    }

    #[test]
    fn web_residual_on_machine_states() {
        // trivial: ground-state records
        let ground = MachineSpec::new(vec![Angle::ZERO; 4])
            .unwrap()
            .initial_state()
            .unwrap();
        let mut recs = Vec::new();
        for k in 1..=4usize {
            for idx in [
                ClusterIndex::pair(5, 0, 3, k, 3).unwrap(),
                ClusterIndex::single(5, k, 3).unwrap(),
            ] {
                recs.push(CorrelationRecord {
                    cycle: 1,
                    step: 0,
                    value: expect_k(&ground, &idx).unwrap(),
                    index: idx,
                    source: Source::BruteForce,
                });
            }
        }
        assert!(web_residual(&recs).unwrap() < TOL);

        // zeno machine at (1, 8)
        let spec = MachineSpec::zeno(4).unwrap();
        let psi = run_silent(&spec, 1).unwrap();
        let mut recs = Vec::new();
        for k in 1..=4usize {
            for idx in [
                ClusterIndex::pair(5, 0, 3, k, 3).unwrap(),
                ClusterIndex::single(5, k, 3).unwrap(),
            ] {
                recs.push(CorrelationRecord {
                    cycle: 1,
                    step: 8,
                    value: expect_k(&psi, &idx).unwrap(),
                    index: idx,
                    source: Source::BruteForce,
                });
            }
        }
        assert!(web_residual(&recs).unwrap() < 1e-10);

        // missing record is an error
        recs.pop();
        assert!(web_residual(&recs).is_err());
    }
}
