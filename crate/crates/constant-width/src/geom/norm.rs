use serde::{Deserialize, Serialize};

/// The norm a point cloud lives under.
///
/// Only the two norms with worked-out maximal-set structure are supported:
/// the Euclidean norm and the maximum norm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Norm {
    Euclidean,
    LInfinity,
}

impl Norm {
    pub fn norm(&self, v: &[f64]) -> f64 {
        match self {
            Norm::Euclidean => v.iter().map(|x| x * x).sum::<f64>().sqrt(),
            Norm::LInfinity => v.iter().fold(0.0, |m, x| m.max(x.abs())),
        }
    }

    pub fn distance(&self, a: &[f64], b: &[f64]) -> f64 {
        debug_assert_eq!(a.len(), b.len());
        match self {
            Norm::Euclidean => a
                .iter()
                .zip(b)
                .map(|(x, y)| (x - y) * (x - y))
                .sum::<f64>()
                .sqrt(),
            Norm::LInfinity => a
                .iter()
                .zip(b)
                .fold(0.0, |m, (x, y)| m.max((x - y).abs())),
        }
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Lexicographic comparison of coordinate vectors, total order on non-NaN data.
pub(crate) fn lex_less(a: &[f64], b: &[f64]) -> bool {
    for (x, y) in a.iter().zip(b) {
        if x < y {
            return true;
        }
        if x > y {
            return false;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linf_is_max_coordinate_gap() {
        assert_eq!(Norm::LInfinity.distance(&[0.0, 0.0], &[1.0, 2.0]), 2.0);
        assert_eq!(Norm::LInfinity.norm(&[-3.0, 2.0]), 3.0);
    }

    #[test]
    fn euclidean_three_four_five() {
        assert!((Norm::Euclidean.distance(&[0.0, 0.0], &[3.0, 4.0]) - 5.0).abs() < 1e-15);
    }
}
