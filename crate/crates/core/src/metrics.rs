//! Distances between probability distributions.

use crate::error::{Error, Result};
use crate::qstate::{Distribution, ShotCounts};

/// Hellinger distance `h(P,Q) = (1/√2)·√Σ(√pᵢ − √qᵢ)²`, a metric in [0, 1].
///
/// The supports need not match; outcomes missing from one distribution count
/// as probability 0.
pub fn hellinger(p: &Distribution, q: &Distribution) -> f64 {
    let n = p.len().max(q.len());
    let mut sum = 0.0;
    for i in 0..n {
        let d = p.prob(i).max(0.0).sqrt() - q.prob(i).max(0.0).sqrt();
        sum += d * d;
    }
    (sum / 2.0).sqrt().min(1.0)
}

/// Total variation distance `(1/2)·Σ|pᵢ − qᵢ|`, kept as a cross-check.
pub fn total_variation(p: &Distribution, q: &Distribution) -> f64 {
    let n = p.len().max(q.len());
    let mut sum = 0.0;
    for i in 0..n {
        sum += (p.prob(i) - q.prob(i)).abs();
    }
    (sum / 2.0).min(1.0)
}

/// Normalize shot counts into a probability distribution.
pub fn counts_to_distribution(counts: &ShotCounts) -> Result<Distribution> {
    let total = counts.total_shots();
    if total == 0 {
        return Err(Error::ZeroShots);
    }
    Distribution::new(
        counts
            .counts()
            .iter()
            .map(|&c| c as f64 / total as f64)
            .collect(),
    )
}

/// Uniform distribution over `n` outcomes.
pub fn uniform_distribution(n_outcomes: usize) -> Result<Distribution> {
    Distribution::uniform(n_outcomes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_distributions_have_zero_distance() {
        let p = Distribution::new(vec![0.3, 0.7]).unwrap();
        assert_eq!(hellinger(&p, &p), 0.0);
        let u = uniform_distribution(2).unwrap();
        assert_eq!(hellinger(&u, &u), 0.0);
    }

    #[test]
    fn disjoint_supports_have_distance_one() {
        let p = Distribution::new(vec![1.0, 0.0]).unwrap();
        let q = Distribution::new(vec![0.0, 1.0]).unwrap();
        assert!((hellinger(&p, &q) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn point_mass_vs_uniform_two() {
        // (1/√2)·√((1−√0.5)² + 0.5), evaluated independently
        let p = Distribution::new(vec![1.0]).unwrap();
        let q = uniform_distribution(2).unwrap();
        let h = hellinger(&p, &q);
        assert!((h - 0.541196100146197).abs() < 1e-12);
        // mismatched supports are handled symmetrically
        assert_eq!(h, hellinger(&q, &p));
    }

    #[test]
    fn counts_normalization() {
        let c = ShotCounts::new(vec![100]);
        assert_eq!(counts_to_distribution(&c).unwrap().probs(), &[1.0]);
        let c = ShotCounts::new(vec![50, 50]);
        assert_eq!(counts_to_distribution(&c).unwrap().probs(), &[0.5, 0.5]);
        let c = ShotCounts::new(vec![1, 3]);
        assert_eq!(counts_to_distribution(&c).unwrap().probs(), &[0.25, 0.75]);
        assert!(counts_to_distribution(&ShotCounts::new(vec![0, 0])).is_err());
    }

    #[test]
    fn uniform_examples() {
        let u = uniform_distribution(4).unwrap();
        assert_eq!(u.probs(), &[0.25, 0.25, 0.25, 0.25]);
        let u = uniform_distribution(1).unwrap();
        assert_eq!(u.probs(), &[1.0]);
        assert!(uniform_distribution(0).is_err());
    }
}
