use std::f64::consts::PI;

/// Which squared term accompanies the valley term of the Rosenbrock function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RosenbrockForm {
    /// `(1 - p_i)^2`, minimum 0 at the all-ones point.
    #[default]
    Standard,
    /// `(1 + p_i)^2` as printed in the original benchmark table; no zero minimum.
    Literal,
}

pub fn sphere(p: &[f64]) -> f64 {
    p.iter().map(|x| x * x).sum()
}

/// Sums over `i = 0..n-1` pairs; a 1-d input has no interaction terms.
pub fn rosenbrock(p: &[f64], form: RosenbrockForm) -> f64 {
    p.windows(2)
        .map(|w| {
            let valley = w[1] - w[0] * w[0];
            let tail = match form {
                RosenbrockForm::Standard => 1.0 - w[0],
                RosenbrockForm::Literal => 1.0 + w[0],
            };
            100.0 * valley * valley + tail * tail
        })
        .sum()
}

pub fn rastrigin(p: &[f64]) -> f64 {
    10.0 * p.len() as f64 + p.iter().map(|x| x * x - 10.0 * (2.0 * PI * x).cos()).sum::<f64>()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_minima() {
        assert_eq!(sphere(&[0.0; 50]), 0.0);
        assert_eq!(rastrigin(&[0.0; 10]), 0.0);
        assert_eq!(rosenbrock(&[1.0; 10], RosenbrockForm::Standard), 0.0);
    }

    #[test]
    fn hand_values() {
        assert_eq!(sphere(&[1.0, -2.0]), 5.0);
        // 100 (1 - 0)^2 + (1 - 0)^2
        assert_eq!(rosenbrock(&[0.0, 1.0], RosenbrockForm::Standard), 101.0);
        assert_eq!(rosenbrock(&[0.0, 1.0], RosenbrockForm::Literal), 101.0);
        assert_eq!(rosenbrock(&[1.0, 1.0], RosenbrockForm::Literal), 4.0);
        assert!((rastrigin(&[0.5]) - 20.25).abs() < 1e-12);
    }
}
