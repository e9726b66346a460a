//! Parameterized terrain models with planar height queries.
//!
//! Heights are piecewise constant or piecewise linear and finite everywhere.
//! The JSON representation is tagged by `kind` with snake_case parameter
//! names, e.g. `{"kind": "stairs", "start_x": 1.0, "rise": 0.21,
//! "run": 0.28, "n_steps": 8}`.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TerrainModel {
    Flat,
    /// Single step up: height is `step_height` for `x >= step_x`.
    Step { step_x: f64, step_height: f64 },
    /// Staircase climbing in +x. The first tread spans
    /// `[start_x, start_x + run)` at height 0; each riser adds `rise`,
    /// capped at `n_steps * rise` on the upper landing.
    Stairs {
        start_x: f64,
        rise: f64,
        run: f64,
        n_steps: u32,
    },
    /// Ramp in +x: height `grade * (x - start_x)` past `start_x`, clamped
    /// below by 0.
    Slope { start_x: f64, grade: f64 },
    /// Axis-aligned box obstacle on flat ground.
    BoxObstacle {
        center: [f64; 2],
        half_extents: [f64; 2],
        height: f64,
    },
}

impl TerrainModel {
    pub fn height(&self, x: f64, y: f64) -> f64 {
        match *self {
            TerrainModel::Flat => 0.0,
            TerrainModel::Step { step_x, step_height } => {
                if x >= step_x {
                    step_height
                } else {
                    0.0
                }
            }
            TerrainModel::Stairs {
                start_x,
                rise,
                run,
                n_steps,
            } => {
                if x < start_x {
                    0.0
                } else {
                    let k = ((x - start_x) / run).floor();
                    rise * k.clamp(0.0, n_steps as f64)
                }
            }
            TerrainModel::Slope { start_x, grade } => {
                if x >= start_x {
                    grade * (x - start_x)
                } else {
                    0.0
                }
            }
            TerrainModel::BoxObstacle {
                center,
                half_extents,
                height,
            } => {
                if (x - center[0]).abs() <= half_extents[0]
                    && (y - center[1]).abs() <= half_extents[1]
                {
                    height
                } else {
                    0.0
                }
            }
        }
    }

    /// Planar gradient of the height field; zero almost everywhere except on
    /// slopes (discontinuities carry no gradient).
    pub fn gradient(&self, x: f64, _y: f64) -> [f64; 2] {
        match *self {
            TerrainModel::Slope { start_x, grade } if x > start_x => [grade, 0.0],
            _ => [0.0, 0.0],
        }
    }

    /// Largest height the terrain attains; used for swing apex initialization.
    pub fn max_height(&self) -> f64 {
        match *self {
            TerrainModel::Flat => 0.0,
            TerrainModel::Step { step_height, .. } => step_height.max(0.0),
            TerrainModel::Stairs { rise, n_steps, .. } => rise * n_steps as f64,
            TerrainModel::Slope { .. } => f64::INFINITY,
            TerrainModel::BoxObstacle { height, .. } => height.max(0.0),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn flat_is_zero_everywhere() {
        assert_eq!(TerrainModel::Flat.height(123.0, -7.0), 0.0);
    }

    #[test]
    fn stairs_height_past_first_edge() {
        let t = TerrainModel::Stairs {
            start_x: 0.0,
            rise: 0.21,
            run: 0.28,
            n_steps: 8,
        };
        assert_relative_eq!(t.height(0.3, 0.0), 0.21);
        assert_relative_eq!(t.height(0.1, 0.0), 0.0);
        // upper landing is capped
        assert_relative_eq!(t.height(100.0, 0.0), 8.0 * 0.21);
    }

    #[test]
    fn box_obstacle_footprint() {
        let t = TerrainModel::BoxObstacle {
            center: [1.0, 0.0],
            half_extents: [0.2, 0.5],
            height: 0.2,
        };
        assert_eq!(t.height(1.0, 0.0), 0.2);
        assert_eq!(t.height(1.3, 0.0), 0.0);
        assert_eq!(t.height(1.0, 0.6), 0.0);
    }

    #[test]
    fn slope_gradient() {
        let t = TerrainModel::Slope {
            start_x: 0.0,
            grade: 0.2,
        };
        assert_relative_eq!(t.height(2.0, 0.0), 0.4);
        assert_eq!(t.gradient(2.0, 0.0), [0.2, 0.0]);
        assert_eq!(t.gradient(-1.0, 0.0), [0.0, 0.0]);
    }

    #[test]
    fn json_roundtrip() {
        let t = TerrainModel::Step {
            step_x: 1.5,
            step_height: 0.1,
        };
        let s = serde_json::to_string(&t).unwrap();
        assert!(s.contains("\"kind\":\"step\""));
        let back: TerrainModel = serde_json::from_str(&s).unwrap();
        assert_eq!(t, back);
    }
}
