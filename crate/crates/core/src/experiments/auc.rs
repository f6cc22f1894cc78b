//! Rank-based AUC (Mann-Whitney), with exact tie handling.

use crate::{Error, Result};

/// Probability that a randomly drawn (anomalous, normal) pair is ordered
/// correctly by score, ties counted half. Oriented for normalcy scores: 1.0
/// means the normal class always scores higher. For anomaly scores swap the
/// arguments.
///
/// Scores are compared with their exact ordering, so the result is invariant
/// under any strictly monotone transformation of the scores.
pub fn auc<T: Ord>(anomalous: &[T], normal: &[T]) -> Result<f64> {
    if anomalous.is_empty() || normal.is_empty() {
        return Err(Error::Config("AUC needs both score lists nonempty".into()));
    }
    let mut sorted: Vec<&T> = normal.iter().collect();
    sorted.sort();
    let mut favourable = 0.0f64;
    for a in anomalous {
        let below = sorted.partition_point(|x| **x < *a);
        let not_above = sorted.partition_point(|x| **x <= *a);
        let ties = (not_above - below) as f64;
        let wins = (sorted.len() - not_above) as f64;
        favourable += wins + 0.5 * ties;
    }
    Ok(favourable / (anomalous.len() as f64 * normal.len() as f64))
}

#[cfg(test)]
mod tests {
    use super::auc;
    use crate::Rational;

    #[test]
    fn perfect_separation() {
        assert_eq!(auc(&[0, 1], &[2, 3]).unwrap(), 1.0);
        assert_eq!(auc(&[2, 3], &[0, 1]).unwrap(), 0.0);
    }

    #[test]
    fn identical_lists_give_chance_level() {
        assert_eq!(auc(&[1, 2, 3], &[1, 2, 3]).unwrap(), 0.5);
    }

    #[test]
    fn hand_counted_mixed_case() {
        // anomalous [1,3], normal [1,2]: pairs (1,1)=0.5, (1,2)=1, (3,1)=0, (3,2)=0.
        assert_eq!(auc(&[1, 3], &[1, 2]).unwrap(), 0.375);
    }

    #[test]
    fn monotone_transformation_invariance() {
        let anomalous: Vec<Rational> = [(1, 3), (1, 2), (2, 1)]
            .iter()
            .map(|&(n, d)| Rational::new(n, d).unwrap())
            .collect();
        let normal: Vec<Rational> = [(1, 2), (3, 1), (5, 1)]
            .iter()
            .map(|&(n, d)| Rational::new(n, d).unwrap())
            .collect();
        let base = auc(&anomalous, &normal).unwrap();
        // Cubing is strictly monotone and preserves the exact ordering.
        let t = |v: &[Rational]| -> Vec<Rational> { v.iter().map(|x| x.pow(3)).collect() };
        assert_eq!(auc(&t(&anomalous), &t(&normal)).unwrap(), base);
    }

    #[test]
    fn empty_inputs_rejected() {
        assert!(auc::<i32>(&[], &[1]).is_err());
        assert!(auc::<i32>(&[1], &[]).is_err());
    }
}
