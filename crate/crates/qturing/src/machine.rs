//! The cyclic Turing sequencer: ordered step application, schedule times,
//! and period detection for rational phase angles.
//!
//! One cycle is 2M steps: odd step 2mu-1 rotates the head by alpha_mu, even
//! step 2mu applies the conditioned pi-pulse on (S, mu).

use num_integer::Integer;
use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::gates::{cnot, rotate_head};
use crate::statespace::{StateVector, MAX_CELLS};

/// A phase angle, either an exact rational multiple of 2*pi or a raw float.
/// Exactness matters only for period detection; float angles opt out of it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Angle {
    /// Fraction of a full turn: `Turns(r)` means 2*pi*r radians.
    Turns(Rational64),
    Radians(f64),
}

impl Angle {
    pub const ZERO: Angle = Angle::Turns(Rational64::new_raw(0, 1));

    pub fn turns(num: i64, den: i64) -> Self {
        Angle::Turns(Rational64::new(num, den))
    }

    pub fn radians(&self) -> f64 {
        match self {
            Angle::Turns(r) => std::f64::consts::TAU * (*r.numer() as f64) / (*r.denom() as f64),
            Angle::Radians(x) => *x,
        }
    }

    pub fn as_turns(&self) -> Option<Rational64> {
        match self {
            Angle::Turns(r) => Some(*r),
            Angle::Radians(_) => None,
        }
    }
}

/// Cycle and step position: cycle m >= 1, step j in 0..=2M (0 = cycle start).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StepLabel {
    pub cycle: u64,
    pub step: usize,
}

/// Pulse-schedule times T_1..T_2M for one cycle. The pair pulse has zero
/// duration, so T_{2mu-1} = T_{2mu} = sum_{i<=mu} alpha_i / g.
#[derive(Debug, Clone, PartialEq)]
pub struct Schedule {
    pub times: Vec<f64>,
}

/// Machine definition: ring size, per-cell phase angles, coupling constant,
/// optional initial state and optional per-cycle angle overrides.
#[derive(Debug, Clone, PartialEq)]
pub struct MachineSpec {
    cells: usize,
    angles: Vec<Angle>,
    coupling: f64,
    initial: Option<StateVector>,
    cycle_overrides: Option<Vec<Vec<Angle>>>,
}

impl MachineSpec {
    pub fn new(angles: Vec<Angle>) -> Result<Self> {
        let cells = angles.len();
        if cells < 1 {
            return Err(Error::InvalidDimension(cells));
        }
        if cells > MAX_CELLS {
            return Err(Error::SizeCap(cells, MAX_CELLS));
        }
        Ok(Self {
            cells,
            angles,
            coupling: 1.0,
            initial: None,
            cycle_overrides: None,
        })
    }

    /// Zeno machine: alpha_mu = pi/M for every cell.
    pub fn zeno(cells: usize) -> Result<Self> {
        Self::new(vec![Angle::turns(1, 2 * cells as i64); cells])
    }

    /// Coin-tossing machine: alpha_mu = pi/2 for every cell.
    pub fn coin(cells: usize) -> Result<Self> {
        Self::new(vec![Angle::turns(1, 4); cells])
    }

    /// Cat machine: alpha_1 = pi/2, all other angles zero.
    pub fn cat(cells: usize) -> Result<Self> {
        let mut angles = vec![Angle::ZERO; cells];
        if cells >= 1 {
            angles[0] = Angle::turns(1, 4);
        }
        Self::new(angles)
    }

    pub fn with_coupling(mut self, g: f64) -> Self {
        self.coupling = g;
        self
    }

    pub fn with_initial(mut self, psi: StateVector) -> Self {
        self.initial = Some(psi);
        self
    }

    /// Per-cycle angle overrides; cycle m uses entry (m-1) mod len.
    pub fn with_cycle_overrides(mut self, overrides: Vec<Vec<Angle>>) -> Self {
        self.cycle_overrides = Some(overrides);
        self
    }

    pub fn num_cells(&self) -> usize {
        self.cells
    }

    pub fn num_steps(&self) -> usize {
        2 * self.cells
    }

    pub fn coupling(&self) -> f64 {
        self.coupling
    }

    pub fn angles(&self) -> &[Angle] {
        &self.angles
    }

    pub fn has_overrides(&self) -> bool {
        self.cycle_overrides.is_some()
    }

    pub fn angles_for_cycle(&self, cycle: u64) -> &[Angle] {
        match &self.cycle_overrides {
            Some(list) if !list.is_empty() => {
                let i = ((cycle - 1) as usize) % list.len();
                &list[i]
            }
            _ => &self.angles,
        }
    }

    pub fn initial_state(&self) -> Result<StateVector> {
        match &self.initial {
            Some(psi) => {
                if psi.num_cells() != self.cells {
                    return Err(Error::DimensionMismatch(psi.num_cells(), self.cells));
                }
                Ok(psi.clone())
            }
            None => StateVector::ground_state(self.cells),
        }
    }
}

/// Apply step j (1..=2M) of the given cycle in place.
pub fn step(psi: &mut StateVector, spec: &MachineSpec, cycle: u64, j: usize) -> Result<()> {
    if j < 1 || j > spec.num_steps() {
        return Err(Error::InvalidStep(j, spec.num_steps()));
    }
    let mu = j.div_ceil(2);
    if j % 2 == 1 {
        rotate_head(psi, spec.angles_for_cycle(cycle)[mu - 1].radians());
    } else {
        cnot(psi, mu)?;
    }
    Ok(())
}

/// Run `cycles` full cycles from the spec's initial state. The hook is called
/// synchronously after every step with the step label and the current state.
pub fn run<F>(spec: &MachineSpec, cycles: u64, mut hook: F) -> Result<StateVector>
where
    F: FnMut(StepLabel, &StateVector),
{
    let mut psi = spec.initial_state()?;
    for m in 1..=cycles {
        for j in 1..=spec.num_steps() {
            step(&mut psi, spec, m, j)?;
            hook(StepLabel { cycle: m, step: j }, &psi);
        }
    }
    Ok(psi)
}

/// Run without observation.
pub fn run_silent(spec: &MachineSpec, cycles: u64) -> Result<StateVector> {
    run(spec, cycles, |_, _| {})
}

/// Pulse-schedule times for one cycle.
pub fn schedule(spec: &MachineSpec) -> Result<Schedule> {
    let g = spec.coupling();
    if g <= 0.0 {
        return Err(Error::InvalidCoupling(g));
    }
    let mut times = Vec::with_capacity(spec.num_steps());
    let mut t = 0.0;
    for mu in 1..=spec.num_cells() {
        t += spec.angles()[mu - 1].radians() / g;
        times.push(t); // T_{2mu-1}
        times.push(t); // T_{2mu}: the pair pulse takes no time
    }
    Ok(Schedule { times })
}

/// Cap on the number of scan multiples when confirming a period empirically.
const PERIOD_SCAN_CAP: u64 = 64;
const PERIOD_TOL: f64 = 1e-9;

/// Exact cycle period of the state ray, for rational-angle machines.
///
/// The arithmetic rule (least even common multiple of the angle denominators,
/// zero angles counting as 1) only seeds the search: the rule disagrees with
/// the observed ray period for some machines (the cat machine recurs at 8,
/// not at the seeded 4), so multiples of the seed are checked by actually
/// running the machine. Float angles and machines with per-cycle overrides
/// return `None`.
pub fn period(spec: &MachineSpec) -> Option<u64> {
    if spec.has_overrides() {
        return None;
    }
    let mut seed: i64 = 1;
    for angle in spec.angles() {
        let turns = angle.as_turns()?;
        // cos(m * 2*pi*n/d) has period d/gcd(n,d) in m
        let d = *turns.reduced().denom();
        seed = seed.lcm(&d.max(1));
    }
    if seed % 2 != 0 {
        seed *= 2;
    }
    let base = seed as u64;

    let start = spec.initial_state().ok()?;
    let mut psi = start.clone();
    for k in 1..=PERIOD_SCAN_CAP {
        for m in ((k - 1) * base + 1)..=(k * base) {
            for j in 1..=spec.num_steps() {
                step(&mut psi, spec, m, j).ok()?;
            }
        }
        if psi.equal_up_to_global_phase(&start, PERIOD_TOL).ok()? {
            return Some(k * base);
        }
    }
    None
}
