//! Per-feature normalization statistics for the training dataset.

use serde::{Deserialize, Serialize};

use super::pairs::{TrainingPair, INPUT_DIM, OUTPUT_DIM};
use super::LibraryError;

/// Standard deviations are floored here so constant features normalize to
/// zero instead of blowing up.
pub const STD_FLOOR: f64 = 1e-6;

/// Per-dimension mean and standard deviation of inputs and outputs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FeatureStats {
    pub input_mean: Vec<f64>,
    pub input_std: Vec<f64>,
    pub output_mean: Vec<f64>,
    pub output_std: Vec<f64>,
}

impl FeatureStats {
    pub fn normalize_input(&self, x: &[f64], out: &mut [f64]) {
        for i in 0..x.len() {
            out[i] = (x[i] - self.input_mean[i]) / self.input_std[i];
        }
    }

    pub fn normalize_output(&self, y: &[f64], out: &mut [f64]) {
        for i in 0..y.len() {
            out[i] = (y[i] - self.output_mean[i]) / self.output_std[i];
        }
    }

    pub fn denormalize_output(&self, y: &[f64], out: &mut [f64]) {
        for i in 0..y.len() {
            out[i] = y[i] * self.output_std[i] + self.output_mean[i];
        }
    }
}

/// Population mean and standard deviation over all pairs, computed with
/// Welford's algorithm.
pub fn compute_stats(pairs: &[TrainingPair]) -> Result<FeatureStats, LibraryError> {
    if pairs.is_empty() {
        return Err(LibraryError::EmptyDataset);
    }
    let mut in_mean = vec![0.0; INPUT_DIM];
    let mut in_m2 = vec![0.0; INPUT_DIM];
    let mut out_mean = vec![0.0; OUTPUT_DIM];
    let mut out_m2 = vec![0.0; OUTPUT_DIM];
    for (n, p) in pairs.iter().enumerate() {
        let count = (n + 1) as f64;
        for i in 0..INPUT_DIM {
            let d = p.input[i] - in_mean[i];
            in_mean[i] += d / count;
            in_m2[i] += d * (p.input[i] - in_mean[i]);
        }
        for i in 0..OUTPUT_DIM {
            let d = p.output[i] - out_mean[i];
            out_mean[i] += d / count;
            out_m2[i] += d * (p.output[i] - out_mean[i]);
        }
    }
    let n = pairs.len() as f64;
    let std_of = |m2: &[f64]| -> Vec<f64> {
        m2.iter().map(|&v| (v / n).sqrt().max(STD_FLOOR)).collect()
    };
    Ok(FeatureStats {
        input_std: std_of(&in_m2),
        output_std: std_of(&out_m2),
        input_mean: in_mean,
        output_mean: out_mean,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_pairs(n: usize, seed: u64) -> Vec<TrainingPair> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n)
            .map(|_| {
                let mut input = [0.0; INPUT_DIM];
                let mut output = [0.0; OUTPUT_DIM];
                for v in input.iter_mut() {
                    *v = rng.gen_range(-2.0..2.0);
                }
                for v in output.iter_mut() {
                    *v = rng.gen_range(-2.0..2.0);
                }
                TrainingPair { input, output }
            })
            .collect()
    }

    #[test]
    fn matches_two_pass_reference() {
        let pairs = random_pairs(200, 11);
        let stats = compute_stats(&pairs).unwrap();
        // independent two-pass computation
        for i in 0..INPUT_DIM {
            let mean: f64 = pairs.iter().map(|p| p.input[i]).sum::<f64>() / pairs.len() as f64;
            let var: f64 = pairs
                .iter()
                .map(|p| (p.input[i] - mean).powi(2))
                .sum::<f64>()
                / pairs.len() as f64;
            assert!((stats.input_mean[i] - mean).abs() < 1e-9);
            assert!((stats.input_std[i] - var.sqrt()).abs() < 1e-9);
        }
    }

    #[test]
    fn constant_feature_std_is_floored() {
        let mut pairs = random_pairs(50, 3);
        for p in &mut pairs {
            p.input[7] = 4.2;
        }
        let stats = compute_stats(&pairs).unwrap();
        assert_eq!(stats.input_std[7], STD_FLOOR);
        let mut norm = [0.0; INPUT_DIM];
        stats.normalize_input(&pairs[0].input, &mut norm);
        assert!(norm[7].abs() < 1e-6);
    }

    #[test]
    fn normalize_denormalize_roundtrip() {
        let pairs = random_pairs(80, 21);
        let stats = compute_stats(&pairs).unwrap();
        let mut norm = [0.0; OUTPUT_DIM];
        let mut back = [0.0; OUTPUT_DIM];
        stats.normalize_output(&pairs[5].output, &mut norm);
        stats.denormalize_output(&norm, &mut back);
        for (a, b) in pairs[5].output.iter().zip(back.iter()) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn empty_dataset_rejected() {
        assert!(matches!(compute_stats(&[]), Err(LibraryError::EmptyDataset)));
    }
}
