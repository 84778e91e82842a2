//! Uniform interpolation grids on `[0, 2π)`.
//!
//! A grid carries an odd node count `N = 2n + 1` and an [`Indicator`]: the
//! plain grid starts at `0`, the shifted grid starts half a step later at
//! `π/N`. Node indices in the public API are 1-based.

use std::f64::consts::{PI, TAU};

use crate::error::{check_finite, Error, Result};

/// Selects the plain (`0`) or half-step shifted (`1`) grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Indicator {
    Zero,
    One,
}

impl Indicator {
    pub fn new(value: u8) -> Result<Self> {
        match value {
            0 => Ok(Indicator::Zero),
            1 => Ok(Indicator::One),
            v => Err(Error::InvalidIndicator(v)),
        }
    }

    pub fn value(self) -> u8 {
        match self {
            Indicator::Zero => 0,
            Indicator::One => 1,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Indicator::Zero => Indicator::One,
            Indicator::One => Indicator::Zero,
        }
    }

    /// Parity of `self - other`, which is all that `(-1)^{m(I1 - I2)}` depends on.
    pub fn differs(self, other: Indicator) -> bool {
        self != other
    }
}

impl TryFrom<u8> for Indicator {
    type Error = Error;

    fn try_from(value: u8) -> Result<Self> {
        Indicator::new(value)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct UniformGrid {
    size: usize,
    indicator: Indicator,
    nodes: Vec<f64>,
}

impl UniformGrid {
    pub fn new(size: usize, indicator: Indicator) -> Result<Self> {
        if size < 3 {
            return Err(Error::TooSmall(size));
        }
        if size % 2 == 0 {
            return Err(Error::EvenN(size));
        }
        let offset = f64::from(indicator.value());
        // closed form per node; no cumulative stepping
        let nodes = (0..size)
            .map(|i| PI * (2.0 * i as f64 + offset) / size as f64)
            .collect();
        Ok(UniformGrid {
            size,
            indicator,
            nodes,
        })
    }

    /// Node count `N`.
    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Highest harmonic `n = (N - 1) / 2`.
    pub fn half(&self) -> usize {
        (self.size - 1) / 2
    }

    pub fn indicator(&self) -> Indicator {
        self.indicator
    }

    pub fn step(&self) -> f64 {
        TAU / self.size as f64
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Node `t_i` with 1-based `i`.
    pub fn node(&self, i: usize) -> Result<f64> {
        if i == 0 || i > self.size {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.size,
            });
        }
        Ok(self.nodes[i - 1])
    }

    /// The same node count on the other indicator.
    pub fn shifted(&self) -> UniformGrid {
        UniformGrid::new(self.size, self.indicator.flipped()).expect("size already validated")
    }

    /// 1-based index of the node within `tol` of `t` (mod 2π), if any.
    pub fn locate(&self, t: f64, tol: f64) -> Option<usize> {
        let t = wrap_to_period(t).ok()?;
        self.nodes.iter().position(|&x| {
            let d = (x - t).abs();
            d <= tol || (TAU - d) <= tol
        })
        .map(|i| i + 1)
    }
}

/// Reduces `t` into `[0, 2π)`.
pub fn wrap_to_period(t: f64) -> Result<f64> {
    check_finite(t)?;
    let w = t.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs
    Ok(if w >= TAU { 0.0 } else { w })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_node_grids() {
        let g0 = UniformGrid::new(3, Indicator::Zero).unwrap();
        let want = [0.0, 2.0 * PI / 3.0, 4.0 * PI / 3.0];
        for (a, b) in g0.nodes().iter().zip(want) {
            assert!((a - b).abs() < 1e-15);
        }
        let g1 = UniformGrid::new(3, Indicator::One).unwrap();
        let want = [PI / 3.0, PI, 5.0 * PI / 3.0];
        for (a, b) in g1.nodes().iter().zip(want) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn rejects_bad_sizes() {
        assert_eq!(UniformGrid::new(4, Indicator::Zero), Err(Error::EvenN(4)));
        assert_eq!(UniformGrid::new(1, Indicator::Zero), Err(Error::TooSmall(1)));
        assert_eq!(Indicator::new(2), Err(Error::InvalidIndicator(2)));
    }

    #[test]
    fn spacing_and_shift() {
        for size in [3usize, 5, 9, 17, 101] {
            for ind in [Indicator::Zero, Indicator::One] {
                let g = UniformGrid::new(size, ind).unwrap();
                for w in g.nodes().windows(2) {
                    assert!((w[1] - w[0] - g.step()).abs() < 1e-14);
                }
                assert!(*g.nodes().last().unwrap() < TAU);
            }
            let g0 = UniformGrid::new(size, Indicator::Zero).unwrap();
            let g1 = g0.shifted();
            for (a, b) in g0.nodes().iter().zip(g1.nodes()) {
                let moved = wrap_to_period(a + PI / size as f64).unwrap();
                assert!((moved - b).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn node_index_is_one_based() {
        let g = UniformGrid::new(5, Indicator::Zero).unwrap();
        assert_eq!(g.node(1).unwrap(), 0.0);
        assert!(g.node(0).is_err());
        assert!(g.node(6).is_err());
        assert_eq!(g.locate(TAU - 1e-12, 1e-9), Some(1));
        assert_eq!(g.locate(g.step() * 2.0, 1e-9), Some(3));
        assert_eq!(g.locate(0.3, 1e-9), None);
    }

    #[test]
    fn wraps_into_period() {
        assert_eq!(wrap_to_period(TAU).unwrap(), 0.0);
        assert!((wrap_to_period(-PI / 3.0).unwrap() - 5.0 * PI / 3.0).abs() < 1e-15);
        assert!((wrap_to_period(3.5 * PI).unwrap() - 1.5 * PI).abs() < 1e-15);
        assert!(wrap_to_period(-1e-300).unwrap() < TAU);
        assert!(matches!(wrap_to_period(f64::NAN), Err(Error::NonFinite(_))));
        assert!(wrap_to_period(f64::INFINITY).is_err());
    }
}
