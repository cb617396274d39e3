use rand::Rng;
use serde::Serialize;
use statrs::function::gamma::ln_gamma;

use crate::{Error, Result};

/// Zero-truncated Poisson law `TP(λ)`: `P(i) = λ^i / (i! (e^λ - 1))`, `i >= 1`.
///
/// The CDF is tabulated up to the point where the remaining mass drops
/// below `1e-15`; sampling inverts the table.
#[derive(Clone, Debug)]
pub struct TruncatedPoisson {
    lambda: f64,
    cdf: Vec<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TpMoments {
    /// `c_λ = λ e^λ / (e^λ - 1)`
    pub mean: f64,
    /// `σ_λ² = c_λ (1 + λ - c_λ)`
    pub variance: f64,
    /// `E|Y - c_λ|^3`
    pub third_abs_central: f64,
}

const TAIL: f64 = 1e-15;

impl TruncatedPoisson {
    pub fn new(lambda: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(Error::param(format!("truncated Poisson needs lambda > 0, got {lambda}")));
        }
        let mut tp = TruncatedPoisson { lambda, cdf: Vec::new() };
        let mut acc = 0.0;
        let mut i = 1u64;
        loop {
            let mass = tp.pmf(i);
            acc += mass;
            tp.cdf.push(acc);
            if i as f64 > lambda && mass < TAIL {
                break;
            }
            i += 1;
        }
        Ok(tp)
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn pmf(&self, i: u64) -> f64 {
        if i == 0 {
            return 0.0;
        }
        let l = self.lambda;
        (i as f64 * l.ln() - ln_gamma(i as f64 + 1.0) - l.exp_m1().ln()).exp()
    }

    /// Largest tabulated value; mass beyond it is below `1e-15`.
    pub fn support_cap(&self) -> u64 {
        self.cdf.len() as u64
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        let u: f64 = rng.random::<f64>() * self.cdf.last().copied().unwrap_or(1.0);
        (self.cdf.partition_point(|&c| c <= u) as u64 + 1).min(self.support_cap())
    }

    pub fn mean(&self) -> f64 {
        let l = self.lambda;
        l / -(-l).exp_m1()
    }

    pub fn variance(&self) -> f64 {
        let c = self.mean();
        c * (1.0 + self.lambda - c)
    }

    /// `E(Y - c)^k` by direct summation over the tabulated support.
    pub fn central_moment(&self, k: i32) -> f64 {
        let c = self.mean();
        (1..=self.support_cap()).map(|i| self.pmf(i) * (i as f64 - c).powi(k)).sum()
    }

    /// `E|Y - c_λ|^3`. When `c_λ <= 2` only the value 1 lies below the mean
    /// and the closed form applies; otherwise the moment is summed.
    pub fn third_abs_central_moment(&self) -> f64 {
        let l = self.lambda;
        if self.mean() > 2.0 {
            let c = self.mean();
            return (1..=self.support_cap()).map(|i| self.pmf(i) * (i as f64 - c).abs().powi(3)).sum();
        }
        let e = l.exp_m1();
        let (l2, l3, l4) = (l * l, l * l * l, l * l * l * l);
        l + (2.0 * l4 - 5.0 * l3 + 3.0 * l2 - l) / e
            + 3.0 * (2.0 * l4 - 3.0 * l3 + l2) / (e * e)
            + 2.0 * (3.0 * l4 - 2.0 * l3) / (e * e * e)
            + 2.0 * l4 / (e * e * e * e)
    }

    pub fn moments(&self) -> TpMoments {
        TpMoments {
            mean: self.mean(),
            variance: self.variance(),
            third_abs_central: self.third_abs_central_moment(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream_rng;

    #[test]
    fn pmf_and_mean_at_one() {
        let tp = TruncatedPoisson::new(1.0).unwrap();
        let e = std::f64::consts::E;
        assert!((tp.pmf(1) - 1.0 / (e - 1.0)).abs() < 1e-15);
        assert!((tp.pmf(1) - 0.58198).abs() < 1e-5);
        assert!((tp.mean() - e / (e - 1.0)).abs() < 1e-14);
        assert_eq!(tp.pmf(0), 0.0);
    }

    #[test]
    fn pmf_sums_to_one() {
        for l in [0.001, 0.02, 0.5, 1.0, 3.0, 25.0] {
            let tp = TruncatedPoisson::new(l).unwrap();
            let total: f64 = (1..=tp.support_cap()).map(|i| tp.pmf(i)).sum();
            assert!((total - 1.0).abs() < 1e-12, "lambda {l}: {total}");
        }
    }

    #[test]
    fn small_lambda_inequalities() {
        let tp = TruncatedPoisson::new(0.5).unwrap();
        let m = tp.moments();
        assert!(m.variance > 0.5 / 3.0);
        assert!(m.mean < 1.0 + 2.0 * 0.5 / 3.0);
        for l in [0.05, 0.3, 0.6, 0.9, 0.99] {
            let tp = TruncatedPoisson::new(l).unwrap();
            assert!(tp.third_abs_central_moment() <= 2.0 * l, "lambda {l}");
            assert!(tp.mean() > 1.0 && tp.mean() < 2.0);
        }
    }

    #[test]
    fn closed_form_third_moment_matches_summation() {
        for l in [0.02, 0.3, 0.5, 0.8, 0.99, 1.5] {
            let tp = TruncatedPoisson::new(l).unwrap();
            let c = tp.mean();
            let summed: f64 = (1..=tp.support_cap()).map(|i| tp.pmf(i) * (i as f64 - c).abs().powi(3)).sum();
            assert!((tp.third_abs_central_moment() - summed).abs() < 1e-12, "lambda {l}");
        }
        let tp = TruncatedPoisson::new(0.7).unwrap();
        assert!((tp.central_moment(2) - tp.variance()).abs() < 1e-13);
    }

    #[test]
    fn rejects_nonpositive_lambda() {
        assert!(TruncatedPoisson::new(0.0).is_err());
        assert!(TruncatedPoisson::new(-1.0).is_err());
        assert!(TruncatedPoisson::new(f64::NAN).is_err());
    }

    #[test]
    fn sample_mean_matches() {
        let tp = TruncatedPoisson::new(0.8).unwrap();
        let mut rng = stream_rng(17, 0);
        let n = 1_000_000;
        let total: u64 = (0..n).map(|_| tp.sample(&mut rng)).sum();
        let mean = total as f64 / n as f64;
        let sd = tp.variance().sqrt();
        assert!((mean - tp.mean()).abs() < 4.0 * sd / 1e3, "{mean} vs {}", tp.mean());
    }
}
