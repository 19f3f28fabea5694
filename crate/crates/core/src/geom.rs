//! Vector math shared by all recognizers.
//!
//! World frame is right-handed with +Y up (the gravity-aligned vertical
//! axis); all lengths are meters.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Magnitudes below this are treated as degenerate (zero-length segment,
/// vertical direction).
pub const DEGENERACY_EPS: f64 = 1e-9;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeomError {
    /// The two segment endpoints coincide (within [`DEGENERACY_EPS`]).
    #[error("segment endpoints coincide")]
    DegenerateSegment,
    /// A direction has no usable horizontal component.
    #[error("direction is vertical; no horizontal projection")]
    VerticalDirection,
}

/// A point or direction in the world frame, meters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3 { x: 0.0, y: 0.0, z: 0.0 };

    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn dot(self, other: Vec3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn distance(self, other: Vec3) -> f64 {
        (self - other).norm()
    }

    pub fn scale(self, k: f64) -> Vec3 {
        Vec3::new(self.x * k, self.y * k, self.z * k)
    }

    pub fn midpoint(self, other: Vec3) -> Vec3 {
        (self + other).scale(0.5)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, rhs: Vec3) -> Vec3 {
        Vec3::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, k: f64) -> Vec3 {
        self.scale(k)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        self.scale(-1.0)
    }
}

/// Projects `p` onto the segment `p1..p2`.
///
/// Returns `(s, d)` where `s` in `[0, 1]` is the normalized position of the
/// nearest point along the segment and `d` is the distance from `p` to that
/// nearest point, meters.
pub fn project_to_segment(p: Vec3, p1: Vec3, p2: Vec3) -> Result<(f64, f64), GeomError> {
    let axis = p2 - p1;
    let len_sq = axis.dot(axis);
    if len_sq.sqrt() < DEGENERACY_EPS {
        return Err(GeomError::DegenerateSegment);
    }
    let s = ((p - p1).dot(axis) / len_sq).clamp(0.0, 1.0);
    let nearest = p1 + axis.scale(s);
    Ok((s, p.distance(nearest)))
}

/// Signed rotation about world +Y taking `ref_dir` to `cur_dir`, radians
/// in `(-pi, pi]`.
///
/// Both directions are projected onto the horizontal (XZ) plane first;
/// positive angles are counterclockwise when viewed from +Y looking down.
pub fn signed_yaw_delta(ref_dir: Vec3, cur_dir: Vec3) -> Result<f64, GeomError> {
    let a = yaw_of(ref_dir)?;
    let b = yaw_of(cur_dir)?;
    Ok(wrap_angle(b - a))
}

/// Azimuth of the horizontal projection of `v`: the angle `theta` for which
/// `Ry(theta)` applied to (1, 0, 0) points along the projection.
fn yaw_of(v: Vec3) -> Result<f64, GeomError> {
    let horiz = (v.x * v.x + v.z * v.z).sqrt();
    if horiz < DEGENERACY_EPS {
        return Err(GeomError::VerticalDirection);
    }
    // Ry(theta) * (1,0,0) = (cos theta, 0, -sin theta)
    Ok((-v.z).atan2(v.x))
}

/// Wraps an angle to `(-pi, pi]`.
pub fn wrap_angle(a: f64) -> f64 {
    use std::f64::consts::PI;
    let mut r = a % (2.0 * PI);
    if r <= -PI {
        r += 2.0 * PI;
    } else if r > PI {
        r -= 2.0 * PI;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    /// Rotation about +Y by `theta`, right-handed.
    fn rotate_y(v: Vec3, theta: f64) -> Vec3 {
        let (s, c) = theta.sin_cos();
        Vec3::new(c * v.x + s * v.z, v.y, -s * v.x + c * v.z)
    }

    #[test]
    fn project_endpoint_identity() {
        let p1 = Vec3::new(0.2, -0.1, 0.5);
        let p2 = Vec3::new(1.0, 0.3, -0.2);
        let (s, d) = project_to_segment(p1, p1, p2).unwrap();
        assert_eq!(s, 0.0);
        assert_eq!(d, 0.0);
    }

    #[test]
    fn project_clamps_beyond_far_end() {
        let (s, d) = project_to_segment(
            Vec3::new(2.0, 0.0, 0.0),
            Vec3::ZERO,
            Vec3::new(1.0, 0.0, 0.0),
        )
        .unwrap();
        assert_eq!(s, 1.0);
        assert!((d - 1.0).abs() < 1e-15);
    }

    #[test]
    fn project_interior_point_matches_dense_sweep() {
        let p1 = Vec3::ZERO;
        let p2 = Vec3::new(1.0, 0.0, 0.0);
        let p = Vec3::new(0.3, 0.04, 0.0);
        let (s, d) = project_to_segment(p, p1, p2).unwrap();
        assert!((s - 0.3).abs() < 1e-12);
        assert!((d - 0.04).abs() < 1e-12);

        // Brute force: dense sweep of 10^6 samples along the segment.
        let n = 1_000_000;
        let mut best = (0.0f64, f64::INFINITY);
        for i in 0..=n {
            let t = i as f64 / n as f64;
            let q = p1 + (p2 - p1).scale(t);
            let dist = p.distance(q);
            if dist < best.1 {
                best = (t, dist);
            }
        }
        assert!((s - best.0).abs() < 1e-6);
        assert!((d - best.1).abs() < 1e-6);
    }

    #[test]
    fn project_rejects_degenerate_segment() {
        let p = Vec3::new(1.0, 2.0, 3.0);
        let err = project_to_segment(p, p, p).unwrap_err();
        assert_eq!(err, GeomError::DegenerateSegment);
    }

    #[test]
    fn yaw_identity() {
        let d = Vec3::new(1.0, 0.0, 0.0);
        assert_eq!(signed_yaw_delta(d, d).unwrap(), 0.0);
    }

    #[test]
    fn yaw_quarter_turn_matches_rotation_matrix() {
        let r = Vec3::new(1.0, 0.0, 0.0);
        let cur = Vec3::new(0.0, 0.0, 1.0);
        // Oracle: Ry(-pi/2) applied to ref must reproduce cur.
        let rotated = rotate_y(r, -FRAC_PI_2);
        assert!(rotated.distance(cur) < 1e-15);
        assert!((signed_yaw_delta(r, cur).unwrap() - (-FRAC_PI_2)).abs() < 1e-12);
    }

    #[test]
    fn yaw_ignores_vertical_component() {
        let r = Vec3::new(1.0, 0.0, 0.0);
        let cur = Vec3::new(-1.0, 0.5, 0.0);
        let got = signed_yaw_delta(r, cur).unwrap();
        assert!((got - PI).abs() < 1e-12);
        // Oracle: Ry(pi) carries ref onto the horizontal projection of cur.
        let rotated = rotate_y(r, PI);
        assert!(rotated.distance(Vec3::new(cur.x, 0.0, cur.z)) < 1e-12);
    }

    #[test]
    fn yaw_rejects_vertical_direction() {
        let up = Vec3::new(0.0, 1.0, 0.0);
        let r = Vec3::new(1.0, 0.0, 0.0);
        assert_eq!(signed_yaw_delta(up, r).unwrap_err(), GeomError::VerticalDirection);
        assert_eq!(signed_yaw_delta(r, up).unwrap_err(), GeomError::VerticalDirection);
    }

    #[test]
    fn wrap_angle_range() {
        assert!((wrap_angle(3.0 * PI) - PI).abs() < 1e-12);
        assert!((wrap_angle(-PI) - PI).abs() < 1e-12);
        assert_eq!(wrap_angle(0.0), 0.0);
    }
}
