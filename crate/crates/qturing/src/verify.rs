//! Differential verification: closed forms against brute force, plus the
//! structural identities (web of correlations, ensemble equivalence,
//! measurement postponement, commutator closed form, period recurrence).
//!
//! Each family reports its worst residual; the run passes iff every family
//! stays within [`VERIFY_TOL`].

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analytic::{predict, web_residual};
use crate::clusterops::{expect_k, ClusterIndex};
use crate::error::Result;
use crate::gates::commutator_residual;
use crate::histories::{parallelism_residual, postponement_residual};
use crate::machine::{period, run, MachineSpec};
use crate::records::{CorrelationRecord, Source};

/// Acceptance tolerance for every residual family.
pub const VERIFY_TOL: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct FamilyResult {
    pub name: &'static str,
    pub max_residual: f64,
    pub worst: Option<String>,
    pub checks: usize,
}

impl FamilyResult {
    pub fn pass(&self) -> bool {
        self.max_residual <= VERIFY_TOL
    }
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub period: Option<u64>,
    pub cycles_checked: u64,
    pub families: Vec<FamilyResult>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.families.iter().all(|f| f.pass())
    }
}

struct FamilyTracker {
    result: FamilyResult,
}

impl FamilyTracker {
    fn new(name: &'static str) -> Self {
        Self {
            result: FamilyResult {
                name,
                max_residual: 0.0,
                worst: None,
                checks: 0,
            },
        }
    }

    fn record(&mut self, residual: f64, label: impl FnOnce() -> String) {
        self.result.checks += 1;
        if residual > self.result.max_residual {
            self.result.max_residual = residual;
            self.result.worst = Some(label());
        }
    }
}

/// Run the full differential suite on one machine.
///
/// Closed forms are compared at the end of every cycle m up to the verified
/// period (capped by `requested_cycles`, or using it outright when no period
/// exists); the web identity is checked at every step along the way.
/// `corrupt_analytic` is added to every closed-form value and exists so the
/// failure path can be exercised deliberately; pass 0.0 for a real run.
pub fn run_verify(
    spec: &MachineSpec,
    requested_cycles: u64,
    seed: u64,
    corrupt_analytic: f64,
) -> Result<VerifyReport> {
    let cells = spec.num_cells();
    let n = cells + 1;
    let p = period(spec);
    let cycles = match p {
        Some(p) => p.min(requested_cycles.max(1)),
        None => requested_cycles.max(1),
    };

    let mut closed = FamilyTracker::new("closed-form");
    let mut web = FamilyTracker::new("web-of-correlations");
    let mut parallelism = FamilyTracker::new("parallelism");
    let mut postponement = FamilyTracker::new("postponement");
    let mut commutator = FamilyTracker::new("commutator");
    let mut recurrence = FamilyTracker::new("period-recurrence");

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let uniform = !spec.has_overrides();

    // single pass over the evolution: web identity at every step,
    // closed forms at every cycle end
    let web_indices: Vec<(ClusterIndex, ClusterIndex)> = (1..=cells)
        .map(|k| {
            (
                ClusterIndex::pair(n, 0, 3, k, 3).expect("pair"),
                ClusterIndex::single(n, k, 3).expect("single"),
            )
        })
        .collect();
    let mut web_err: Option<crate::error::Error> = None;
    let mut commutator_samples: Vec<(u64, usize, f64)> = Vec::new();
    let samples = 8.min((cycles as usize) * 2 * cells);
    for _ in 0..samples {
        let m = rng.gen_range(1..=cycles);
        let j = rng.gen_range(1..=2 * cells);
        let alpha = rng.gen_range(0.0..std::f64::consts::TAU);
        commutator_samples.push((m, j, alpha));
    }

    let final_state = run(spec, cycles, |label, psi| {
        if web_err.is_some() {
            return;
        }
        let mut recs = Vec::with_capacity(2 * cells);
        for (pair, single) in &web_indices {
            for idx in [pair, single] {
                match expect_k(psi, idx) {
                    Ok(value) => recs.push(CorrelationRecord {
                        cycle: label.cycle,
                        step: label.step,
                        index: (*idx).clone(),
                        value,
                        source: Source::BruteForce,
                    }),
                    Err(e) => {
                        web_err = Some(e);
                        return;
                    }
                }
            }
        }
        match web_residual(&recs) {
            Ok(r) => web.record(r, || format!("(m={}, j={})", label.cycle, label.step)),
            Err(e) => web_err = Some(e),
        }

        for (m, j, alpha) in &commutator_samples {
            if *m == label.cycle && *j == label.step {
                let mu = 1 + ((*alpha * 1e6) as usize) % cells;
                match commutator_residual(*alpha, mu, psi) {
                    Ok(r) => commutator.record(r, || format!("(m={m}, j={j}, alpha={alpha:.3})")),
                    Err(e) => web_err = Some(e),
                }
            }
        }

        if uniform && label.step == 2 * cells {
            match predict(label.cycle, spec) {
                Ok(set) => {
                    for rec in &set.entries {
                        let brute = match expect_k(psi, &rec.index) {
                            Ok(v) => v,
                            Err(e) => {
                                web_err = Some(e);
                                return;
                            }
                        };
                        let diff = (rec.value + corrupt_analytic - brute).abs();
                        closed.record(diff, || {
                            format!("(m={}, j={}, index={})", label.cycle, label.step, rec.index)
                        });
                    }
                }
                Err(e) => web_err = Some(e),
            }
        }
    })?;
    if let Some(e) = web_err {
        return Err(e);
    }

    parallelism.record(parallelism_residual(spec)?, || "cycle 1".into());

    for mu in 1..=cells {
        for outcome in [0u8, 1u8] {
            match postponement_residual(spec, mu, outcome) {
                Ok(r) => postponement.record(r, || format!("(mu={mu}, outcome={outcome})")),
                Err(crate::error::Error::ImpossibleOutcome(_)) => {}
                Err(e) => return Err(e),
            }
        }
    }

    if let Some(p) = p {
        if p == cycles {
            let initial = spec.initial_state()?;
            let overlap = initial.inner_product(&final_state)?.norm();
            recurrence.record(1.0 - overlap, || format!("after p = {p} cycles"));
        }
    }

    Ok(VerifyReport {
        period: p,
        cycles_checked: cycles,
        families: vec![
            closed.result,
            web.result,
            parallelism.result,
            postponement.result,
            commutator.result,
            recurrence.result,
        ],
    })
}

/// Deterministic random rational-angle machine, angle denominators <= `max_den`.
pub fn random_rational_spec<R: Rng>(rng: &mut R, cells: usize, max_den: i64) -> MachineSpec {
    use crate::machine::Angle;
    let angles = (0..cells)
        .map(|_| {
            let den = rng.gen_range(1..=max_den);
            let num = rng.gen_range(0..den.max(1));
            Angle::turns(num, den)
        })
        .collect();
    MachineSpec::new(angles).expect("valid random spec")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeno_report_passes() {
        let spec = MachineSpec::zeno(4).unwrap();
        let report = run_verify(&spec, 64, 1, 0.0).unwrap();
        assert!(report.all_pass(), "{report:#?}");
        assert!(report.period.is_some());
    }

    #[test]
    fn cat_report_finds_period_eight() {
        let spec = MachineSpec::cat(4).unwrap();
        let report = run_verify(&spec, 64, 1, 0.0).unwrap();
        assert_eq!(report.period, Some(8));
        assert!(report.all_pass(), "{report:#?}");
    }

    #[test]
    fn corrupted_analytic_constant_fails_named_family() {
        let spec = MachineSpec::zeno(4).unwrap();
        let report = run_verify(&spec, 8, 1, 1e-3).unwrap();
        assert!(!report.all_pass());
        let bad: Vec<_> = report.families.iter().filter(|f| !f.pass()).collect();
        assert_eq!(bad.len(), 1);
        assert_eq!(bad[0].name, "closed-form");
    }

    #[test]
    fn random_rational_machines_pass() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..5 {
            let spec = random_rational_spec(&mut rng, 4, 8);
            let report = run_verify(&spec, 32, 5, 0.0).unwrap();
            assert!(report.all_pass(), "{:?}\n{report:#?}", spec.angles());
        }
    }
}
