//! Polar sample grids in the unit disk.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::function::AnalyticFunction;

pub const DEFAULT_ANGLES: usize = 512;

#[derive(Debug, Clone, PartialEq)]
pub struct SampleGrid {
    /// strictly increasing radii in `(0, 1)`
    pub radii: Vec<f64>,
    /// number of equally spaced angles, starting at 0
    pub angles: usize,
}

impl SampleGrid {
    pub fn new(radii: Vec<f64>, angles: usize) -> Result<Self> {
        if radii.is_empty() || angles == 0 {
            return Err(Error::InvalidParameter("sample grid needs at least one radius and one angle".into()));
        }
        if radii.iter().any(|&r| !(r > 0.0 && r < 1.0)) || radii.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParameter("grid radii must increase strictly inside (0, 1)".into()));
        }
        Ok(Self { radii, angles })
    }

    /// Radii 0.1..0.9, 0.95, 0.99 and, when exact evaluators exist, 0.995 and
    /// 0.999.
    pub fn standard(f: &AnalyticFunction) -> Self {
        Self::standard_to(f.max_radius(), DEFAULT_ANGLES)
    }

    /// The standard radii up to `r_max` (0.999 at most).
    pub fn standard_to(r_max: f64, angles: usize) -> Self {
        let mut radii: Vec<f64> = (1..=9).map(|k| k as f64 / 10.0).collect();
        radii.extend([0.95, 0.99, 0.995, 0.999]);
        radii.retain(|&r| r <= r_max + 1e-15);
        if radii.is_empty() {
            radii.push(r_max);
        }
        Self { radii, angles }
    }

    pub fn max_radius(&self) -> f64 {
        *self.radii.last().expect("non-empty grid")
    }

    pub fn theta(&self, k: usize) -> f64 {
        TAU * k as f64 / self.angles as f64
    }

    pub fn thetas(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.angles).map(|k| self.theta(k))
    }

    /// All grid points, radius-major.
    pub fn points(&self) -> Vec<Complex64> {
        self.radii
            .iter()
            .flat_map(|&r| self.thetas().map(move |t| Complex64::from_polar(r, t)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_radii_depend_on_exactness() {
        let g = SampleGrid::standard_to(0.95, 8);
        assert_eq!(g.max_radius(), 0.95);
        assert_eq!(g.radii.len(), 10);
        let g = SampleGrid::standard_to(1.0, 8);
        assert_eq!(g.max_radius(), 0.999);
        assert_eq!(g.points().len(), 13 * 8);
    }

    #[test]
    fn validation() {
        assert!(SampleGrid::new(vec![0.5, 0.4], 4).is_err());
        assert!(SampleGrid::new(vec![1.0], 4).is_err());
        assert!(SampleGrid::new(vec![0.5], 0).is_err());
        assert!(SampleGrid::new(vec![0.2, 0.5], 4).is_ok());
    }
}
