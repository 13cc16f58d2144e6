//! Scaled-cosine reference curve and the corridor around it.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Cosine profile from `(x0, z0)` to `(xf, zf)`, in meters:
/// `z(x) = z0 + ½ z_d (1 + cos(π + π (x − x0) / |x_d|))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(bound = "")]
pub struct ReferenceCurve<T: Scalar> {
    pub x0: T,
    pub z0: T,
    pub xf: T,
    pub zf: T,
}

impl<T: Scalar> ReferenceCurve<T> {
    pub fn new(x0: T, z0: T, xf: T, zf: T) -> Result<Self> {
        if !(xf > x0) || !z0.is_finite() || !zf.is_finite() || !xf.is_finite() {
            return Err(Error::Domain(format!(
                "reference curve needs finite xf > x0, got x0 = {x0}, xf = {xf}"
            )));
        }
        Ok(Self { x0, z0, xf, zf })
    }

    pub fn x_d(&self) -> T {
        self.xf - self.x0
    }

    pub fn z_d(&self) -> T {
        self.zf - self.z0
    }

    /// Height of the curve at `x`; errors outside `[x0, xf]`.
    pub fn eval(&self, x: T) -> Result<T> {
        if !(x >= self.x0 && x <= self.xf) {
            return Err(Error::Domain(format!(
                "x = {x} outside [{}, {}]",
                self.x0, self.xf
            )));
        }
        Ok(self.eval_unchecked(x))
    }

    #[inline]
    pub(crate) fn eval_unchecked(&self, x: T) -> T {
        let half = T::lit(0.5);
        let zd = self.z_d();
        let arg = T::PI() + T::PI() * (x - self.x0) / self.x_d().abs();
        half * (zd + zd * arg.cos()) + self.z0
    }
}

/// Points of the XZ plane within `k_d` meters of a reference curve.
/// An infinite `k_d` disables corridor pruning.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Corridor<T: Scalar> {
    pub curve: ReferenceCurve<T>,
    pub k_d: T,
    /// Dense samples taken before the local refinement.
    pub samples: usize,
}

impl<T: Scalar> Corridor<T> {
    pub fn new(curve: ReferenceCurve<T>, k_d: T) -> Result<Self> {
        if !(k_d > T::zero()) {
            return Err(Error::config(format!(
                "corridor clearance k_d must be positive, got {k_d}"
            )));
        }
        Ok(Self {
            curve,
            k_d,
            samples: 1000,
        })
    }

    /// Minimum Euclidean distance from `(x, z)` to the curve.
    pub fn distance(&self, x: T, z: T) -> T {
        corridor_distance(self, x, z)
    }

    pub fn contains(&self, x: T, z: T) -> bool {
        self.k_d.is_infinite() || self.distance(x, z) <= self.k_d
    }
}

/// Dense sampling of the curve parameter followed by golden-section
/// refinement around the best sample.
pub fn corridor_distance<T: Scalar>(corridor: &Corridor<T>, x: T, z: T) -> T {
    let c = &corridor.curve;
    let n = corridor.samples.max(2);
    let span = c.x_d();
    let at = |i: usize| c.x0 + span * T::from_usize_lossy(i) / T::from_usize_lossy(n);
    let sq = |xs: T| {
        let dx = xs - x;
        let dz = c.eval_unchecked(xs) - z;
        dx * dx + dz * dz
    };
    let mut best_i = 0;
    let mut best = sq(c.x0);
    for i in 1..=n {
        let d = sq(at(i));
        if d < best {
            best = d;
            best_i = i;
        }
    }
    let mut lo = at(best_i.saturating_sub(1));
    let mut hi = at((best_i + 1).min(n));
    let inv_phi = T::lit(0.618_033_988_749_894_9);
    let mut a = hi - inv_phi * (hi - lo);
    let mut b = lo + inv_phi * (hi - lo);
    let (mut fa, mut fb) = (sq(a), sq(b));
    for _ in 0..60 {
        if fa < fb {
            hi = b;
            b = a;
            fb = fa;
            a = hi - inv_phi * (hi - lo);
            fa = sq(a);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + inv_phi * (hi - lo);
            fb = sq(b);
        }
    }
    best.min(fa).min(fb).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints_and_midpoint() {
        let c = ReferenceCurve::<f64>::new(0.0, 0.0, 250.0, 80.0).unwrap();
        assert_eq!(c.eval(0.0).unwrap(), 0.0);
        assert!((c.eval(250.0).unwrap() - 80.0).abs() < 1e-12);
        assert!((c.eval(125.0).unwrap() - 40.0).abs() < 1e-12);
        assert!(c.eval(-1.0).is_err());
        assert!(c.eval(251.0).is_err());
    }

    #[test]
    fn rejects_backward_curve() {
        assert!(ReferenceCurve::new(5.0, 0.0, 5.0, 1.0).is_err());
    }

    #[test]
    fn flat_curve_distance() {
        let c = Corridor::new(
            ReferenceCurve::<f64>::new(0.0, 1.0, 100.0, 1.0).unwrap(),
            10.0,
        )
        .unwrap();
        assert!((c.distance(40.0, 8.0) - 7.0).abs() < 1e-3);
        assert!(c.distance(40.0, 1.0) < 1e-3);
        // beyond the end: distance to the endpoint
        assert!((c.distance(103.0, 5.0) - 5.0).abs() < 1e-3);
    }

    #[test]
    fn point_on_curve_is_inside() {
        let c = Corridor::new(ReferenceCurve::new(0.0, 0.0, 220.0, -60.0).unwrap(), 1e-6).unwrap();
        let x = 77.0;
        let z = c.curve.eval(x).unwrap();
        assert!(c.distance(x, z) < 1e-3);
        assert!(Corridor::new(c.curve, 0.0).is_err());
    }
}
