use crate::error::{Error, Result};
use crate::geom::norm::dot;

/// A unit vector in `R^n` (Euclidean length 1, `n >= 2`).
#[derive(Debug, Clone, PartialEq)]
pub struct Direction {
    coords: Vec<f64>,
}

impl Direction {
    /// Normalizes `coords` to unit Euclidean length.
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::Domain(format!(
                "directions need dimension >= 2, got {}",
                coords.len()
            )));
        }
        let len = coords.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !len.is_finite() || len < 1e-300 {
            return Err(Error::Domain("cannot normalize a zero direction".into()));
        }
        Ok(Self {
            coords: coords.into_iter().map(|x| x / len).collect(),
        })
    }

    /// Planar direction at angle `theta` from the positive x-axis.
    pub fn from_angle(theta: f64) -> Self {
        Self {
            coords: vec![theta.cos(), theta.sin()],
        }
    }

    /// Unit vector along coordinate axis `axis`.
    pub fn axis(dim: usize, axis: usize) -> Self {
        let mut coords = vec![0.0; dim];
        coords[axis] = 1.0;
        Self { coords }
    }

    pub(crate) fn from_unit_unchecked(coords: Vec<f64>) -> Self {
        Self { coords }
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// The antipode `-u`. Exact: IEEE negation does not round.
    pub fn negated(&self) -> Self {
        Self {
            coords: self.coords.iter().map(|x| -x).collect(),
        }
    }

    pub fn dot(&self, v: &[f64]) -> f64 {
        dot(&self.coords, v)
    }

    /// Angle to another direction, in `[0, pi]`.
    pub fn angle_to(&self, other: &Direction) -> f64 {
        self.dot(other.coords()).clamp(-1.0, 1.0).acos()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_on_construction() {
        let u = Direction::new(vec![3.0, 4.0]).unwrap();
        let len: f64 = u.coords().iter().map(|x| x * x).sum::<f64>().sqrt();
        assert!((len - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_zero_and_1d() {
        assert!(Direction::new(vec![0.0, 0.0]).is_err());
        assert!(Direction::new(vec![1.0]).is_err());
    }

    #[test]
    fn negation_is_exact() {
        let u = Direction::new(vec![0.3, -0.7, 0.1]).unwrap();
        let v = u.negated().negated();
        assert_eq!(u.coords(), v.coords());
    }
}
