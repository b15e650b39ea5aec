//! Time evolution under piecewise-linear drives.
//!
//! Each step is a symmetric splitting `D(dt/2) X(dt) D(dt/2)` with the drive
//! sampled at the step midpoint. `D` is the diagonal part and `X` the product
//! of single-atom rotations, both applied exactly, so the propagator is
//! unitary to rounding and second order accurate in `dt`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use num_complex::Complex64;

use super::hamiltonian::{Hamiltonian, RydbergParams};
use super::state::QuantumState;
use crate::compiler::CompiledGraph;
use crate::error::SimError;
use crate::graph::{AtomGraph, AtomId};
use crate::polynomial::Assignment;

pub const MIN_STEPS: usize = 100;
pub const NORM_TOLERANCE: f64 = 1e-6;

pub const DEFAULT_OMEGA_MAX: f64 = 1.0;
pub const DEFAULT_DELTA_FINAL: f64 = 3.0;
/// Fraction of the duration spent ramping the drive up (and again down).
pub const DEFAULT_RAMP_FRACTION: f64 = 0.1;

/// Piecewise-linear `omega(t)` and `delta(t)` on `[0, duration]`.
/// Values are held constant outside the first and last breakpoints.
#[derive(Clone, Debug, PartialEq)]
pub struct Schedule {
    pub duration: f64,
    pub omega: Vec<(f64, f64)>,
    pub delta: Vec<(f64, f64)>,
}

impl Schedule {
    pub fn new(duration: f64, omega: Vec<(f64, f64)>, delta: Vec<(f64, f64)>) -> Result<Self, SimError> {
        let s = Schedule { duration, omega, delta };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<(), SimError> {
        if !self.duration.is_finite() {
            return Err(SimError::NonFinite("duration"));
        }
        if self.duration <= 0.0 {
            return Err(SimError::InvalidSchedule("duration must be positive"));
        }
        for wave in [&self.omega, &self.delta] {
            if wave.is_empty() {
                return Err(SimError::InvalidSchedule("waveform has no breakpoints"));
            }
            if wave.iter().any(|&(t, v)| !t.is_finite() || !v.is_finite()) {
                return Err(SimError::NonFinite("breakpoint"));
            }
            if wave.windows(2).any(|w| w[1].0 <= w[0].0) {
                return Err(SimError::InvalidSchedule("breakpoints must be strictly increasing"));
            }
            if wave[0].0 < 0.0 || wave[wave.len() - 1].0 > self.duration {
                return Err(SimError::InvalidSchedule("breakpoint outside [0, T]"));
            }
        }
        Ok(())
    }

    /// Trapezoidal drive `0 -> omega_max -> 0` and a linear detuning `-delta_final -> delta_final`.
    pub fn standard(duration: f64, omega_max: f64, delta_final: f64, ramp_fraction: f64) -> Result<Self, SimError> {
        let r = ramp_fraction.clamp(0.0, 0.5) * duration;
        let omega = if r > 0.0 {
            alloc::vec![(0.0, 0.0), (r, omega_max), (duration - r, omega_max), (duration, 0.0)]
        } else {
            alloc::vec![(0.0, omega_max), (duration, omega_max)]
        };
        let omega = dedup_times(omega);
        Schedule::new(duration, omega, alloc::vec![(0.0, -delta_final), (duration, delta_final)])
    }

    /// [`Schedule::standard`] with the default amplitudes.
    pub fn default_sweep(duration: f64) -> Result<Self, SimError> {
        Self::standard(duration, DEFAULT_OMEGA_MAX, DEFAULT_DELTA_FINAL, DEFAULT_RAMP_FRACTION)
    }

    pub fn omega_at(&self, t: f64) -> f64 {
        interpolate(&self.omega, t)
    }

    pub fn delta_at(&self, t: f64) -> f64 {
        interpolate(&self.delta, t)
    }

    /// Same waveform shapes stretched to `duration`.
    pub fn scaled(&self, duration: f64) -> Result<Self, SimError> {
        let f = duration / self.duration;
        let stretch = |w: &[(f64, f64)]| w.iter().map(|&(t, v)| (t * f, v)).collect();
        Schedule::new(duration, stretch(&self.omega), stretch(&self.delta))
    }
}

fn dedup_times(mut wave: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    wave.dedup_by(|b, a| b.0 <= a.0);
    wave
}

fn interpolate(wave: &[(f64, f64)], t: f64) -> f64 {
    let i = wave.partition_point(|&(ti, _)| ti <= t);
    if i == 0 {
        return wave[0].1;
    }
    if i == wave.len() {
        return wave[i - 1].1;
    }
    let (t0, v0) = wave[i - 1];
    let (t1, v1) = wave[i];
    v0 + (v1 - v0) * (t - t0) / (t1 - t0)
}

/// Evolves `state` in place over the whole schedule; returns the final norm drift.
/// The rabi and detuning stored in `h` are ignored in favour of the schedule.
pub fn evolve(h: &Hamiltonian, schedule: &Schedule, steps: usize, state: &mut QuantumState) -> Result<f64, SimError> {
    schedule.validate()?;
    if steps < MIN_STEPS {
        return Err(SimError::TooFewSteps { steps, min: MIN_STEPS });
    }
    let n = h.atoms();
    assert_eq!(state.atoms(), n, "state and Hamiltonian disagree on the atom count");
    let dt = schedule.duration / steps as f64;
    let amps = state.amplitudes_mut();
    for k in 0..steps {
        let t = (k as f64 + 0.5) * dt;
        let omega = schedule.omega_at(t);
        let delta = schedule.delta_at(t);
        half_diagonal(h, delta, dt, amps);
        if omega != 0.0 {
            let (s, c) = libm::sincos(0.5 * omega * dt);
            let ms = Complex64::new(0.0, -s);
            for i in 0..n {
                let bit = 1usize << i;
                for lo in 0..amps.len() {
                    if lo & bit != 0 {
                        continue;
                    }
                    let a = amps[lo];
                    let b = amps[lo | bit];
                    amps[lo] = a * c + b * ms;
                    amps[lo | bit] = b * c + a * ms;
                }
            }
        }
        half_diagonal(h, delta, dt, amps);
    }
    let drift = (state.norm() - 1.0).abs();
    if drift > NORM_TOLERANCE {
        return Err(SimError::NormDrift {
            drift,
            suggested_steps: 2 * steps,
        });
    }
    Ok(drift)
}

fn half_diagonal(h: &Hamiltonian, delta: f64, dt: f64, amps: &mut [Complex64]) {
    for (s, a) in amps.iter_mut().enumerate() {
        let (sin, cos) = libm::sincos(-0.5 * dt * h.diagonal_at(s, delta));
        *a *= Complex64::new(cos, sin);
    }
}

#[derive(Clone, Debug)]
pub struct SweepResult {
    pub state: QuantumState,
    /// Marginal probabilities of the data-atom occupations.
    pub projections: BTreeMap<Assignment, f64>,
    pub success_probability: f64,
    pub norm_drift: f64,
    pub steps: usize,
}

/// Sweeps the compiled graph from the all-zero state and scores the data projections against `targets`.
pub fn adiabatic_sweep(
    cg: &CompiledGraph,
    params: &RydbergParams,
    schedule: &Schedule,
    steps: usize,
    targets: &BTreeSet<Assignment>,
) -> Result<SweepResult, SimError> {
    sweep_graph(&cg.graph, &cg.var_to_atom, params, schedule, steps, targets)
}

/// [`adiabatic_sweep`] on a bare graph with data atoms `data` (variable `i` at position `i`).
pub fn sweep_graph(
    graph: &AtomGraph,
    data: &[AtomId],
    params: &RydbergParams,
    schedule: &Schedule,
    steps: usize,
    targets: &BTreeSet<Assignment>,
) -> Result<SweepResult, SimError> {
    let h = Hamiltonian::new(graph, params)?;
    let mut state = QuantumState::zeros(h.atoms());
    let norm_drift = evolve(&h, schedule, steps, &mut state)?;
    let projections = state.projection_probabilities(data);
    let success_probability = projections
        .iter()
        .filter(|(a, _)| targets.contains(*a))
        .fold(0.0, |acc, (_, p)| acc + p);
    Ok(SweepResult {
        state,
        projections,
        success_probability,
        norm_drift,
        steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::AtomRole;

    #[test]
    fn interpolation_and_clamping() {
        let s = Schedule::default_sweep(10.0).unwrap();
        assert_eq!(s.omega_at(0.0), 0.0);
        assert!((s.omega_at(0.5) - 0.5).abs() < 1e-12);
        assert_eq!(s.omega_at(5.0), 1.0);
        assert_eq!(s.delta_at(-1.0), -3.0);
        assert_eq!(s.delta_at(5.0), 0.0);
        assert_eq!(s.delta_at(20.0), 3.0);
        assert_eq!(s.scaled(20.0).unwrap().omega_at(1.0), 0.5);
    }

    #[test]
    fn rejects_bad_schedules() {
        assert!(Schedule::new(1.0, alloc::vec![(0.0, 0.0), (0.0, 1.0)], alloc::vec![(0.0, 0.0)]).is_err());
        assert!(Schedule::new(0.0, alloc::vec![(0.0, 0.0)], alloc::vec![(0.0, 0.0)]).is_err());
        assert!(Schedule::new(1.0, alloc::vec![(0.0, f64::NAN)], alloc::vec![(0.0, 0.0)]).is_err());
        assert!(Schedule::new(1.0, alloc::vec![(0.0, 0.0), (2.0, 0.0)], alloc::vec![(0.0, 0.0)]).is_err());
    }

    #[test]
    fn too_few_steps() {
        let mut g = AtomGraph::new();
        g.add_atom(AtomRole::Wire { gadget: 0, ordinal: 0 }, 1);
        let h = Hamiltonian::new(&g, &RydbergParams::new(0.0, 0.0, 1.0)).unwrap();
        let mut st = QuantumState::zeros(1);
        let s = Schedule::default_sweep(1.0).unwrap();
        assert_eq!(
            evolve(&h, &s, 10, &mut st).unwrap_err(),
            SimError::TooFewSteps { steps: 10, min: 100 }
        );
    }

    #[test]
    fn rabi_oscillation() {
        let mut g = AtomGraph::new();
        g.add_atom(AtomRole::Wire { gadget: 0, ordinal: 0 }, 1);
        let h = Hamiltonian::new(&g, &RydbergParams::new(0.0, 0.0, 1.0)).unwrap();
        let omega = 2.0;
        for t in [0.3, 1.0, 2.5] {
            let s = Schedule::new(t, alloc::vec![(0.0, omega)], alloc::vec![(0.0, 0.0)]).unwrap();
            let mut st = QuantumState::zeros(1);
            evolve(&h, &s, 100, &mut st).unwrap();
            let expected = libm::sin(omega * t / 2.0).powi(2);
            assert!((st.probability(1) - expected).abs() < 1e-12);
        }
    }
}
