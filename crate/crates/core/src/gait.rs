//! Contact timing: per-leg stance/swing phase schedules.
//!
//! Leg order everywhere in the crate is `[FL, FR, RL, RR]`; the trot pairs
//! are `(FL, RR)` and `(FR, RL)`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const NUM_LEGS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PhaseKind {
    Stance,
    Swing,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Phase {
    pub kind: PhaseKind,
    pub duration: f64,
}

#[derive(Debug, Error, PartialEq)]
pub enum GaitError {
    #[error("leg {0}: phase durations sum to {1}, schedule total is {2}")]
    DurationMismatch(usize, f64, f64),
    #[error("leg {0}: non-positive phase duration")]
    NonPositiveDuration(usize),
    #[error("leg {0}: schedule must start and end in stance")]
    BoundaryNotStance(usize),
    #[error("total duration must be positive, got {0}")]
    NonPositiveTotal(f64),
    #[error("leg {0}: empty phase list")]
    Empty(usize),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GaitSchedule {
    pub legs: [Vec<Phase>; 4],
    pub total_duration: f64,
}

impl GaitSchedule {
    pub fn validate(&self) -> Result<(), GaitError> {
        if !(self.total_duration > 0.0) {
            return Err(GaitError::NonPositiveTotal(self.total_duration));
        }
        for (i, leg) in self.legs.iter().enumerate() {
            if leg.is_empty() {
                return Err(GaitError::Empty(i));
            }
            if leg.iter().any(|p| !(p.duration > 0.0)) {
                return Err(GaitError::NonPositiveDuration(i));
            }
            let sum: f64 = leg.iter().map(|p| p.duration).sum();
            if (sum - self.total_duration).abs() > 1e-9 {
                return Err(GaitError::DurationMismatch(i, sum, self.total_duration));
            }
            if leg.first().unwrap().kind != PhaseKind::Stance
                || leg.last().unwrap().kind != PhaseKind::Stance
            {
                return Err(GaitError::BoundaryNotStance(i));
            }
        }
        Ok(())
    }

    /// Whether a leg is in stance at time `t`. Phase boundaries belong to the
    /// later phase, except the final instant which stays in the last phase.
    pub fn in_stance(&self, leg: usize, t: f64) -> bool {
        let mut acc = 0.0;
        for p in &self.legs[leg] {
            acc += p.duration;
            if t < acc - 1e-12 {
                return p.kind == PhaseKind::Stance;
            }
        }
        self.legs[leg].last().map_or(true, |p| p.kind == PhaseKind::Stance)
    }

    /// Number of legs in stance at time `t`.
    pub fn stance_count(&self, t: f64) -> usize {
        (0..NUM_LEGS).filter(|&l| self.in_stance(l, t)).count()
    }

    /// Phase start/end boundaries of one leg, including 0 and the total.
    pub fn phase_times(&self, leg: usize) -> Vec<f64> {
        let mut ts = vec![0.0];
        let mut acc = 0.0;
        for p in &self.legs[leg] {
            acc += p.duration;
            ts.push(acc);
        }
        ts
    }

    /// All-stance schedule (standing).
    pub fn stand(duration: f64) -> Self {
        let leg = vec![Phase {
            kind: PhaseKind::Stance,
            duration,
        }];
        Self {
            legs: [leg.clone(), leg.clone(), leg.clone(), leg],
            total_duration: duration,
        }
    }

    /// Two-beat trot. Diagonal pair A (FL, RR) swings first; pair B (FR, RL)
    /// swings half a cycle later. The schedule begins with a `lead_in`
    /// all-stance interval and is padded with stance at the end so every leg
    /// finishes grounded.
    pub fn trot(total_duration: f64, cycle: f64, swing_fraction: f64, lead_in: f64) -> Self {
        let swing = cycle * swing_fraction;
        let make_leg = |offset: f64| -> Vec<Phase> {
            let mut phases = Vec::new();
            let mut t = 0.0;
            let mut k = 0usize;
            loop {
                let swing_start = lead_in + offset + k as f64 * cycle;
                let swing_end = swing_start + swing;
                // keep a stance margin before the schedule ends
                if swing_end > total_duration - 0.5 * (cycle - swing) {
                    break;
                }
                if swing_start > t {
                    phases.push(Phase {
                        kind: PhaseKind::Stance,
                        duration: swing_start - t,
                    });
                }
                phases.push(Phase {
                    kind: PhaseKind::Swing,
                    duration: swing,
                });
                t = swing_end;
                k += 1;
            }
            if t < total_duration {
                phases.push(Phase {
                    kind: PhaseKind::Stance,
                    duration: total_duration - t,
                });
            }
            phases
        };
        let a = make_leg(0.0);
        let b = make_leg(cycle / 2.0);
        Self {
            legs: [a.clone(), b.clone(), b, a],
            total_duration,
        }
    }
}
