//! Points, eccentric rectangles and simple regions of the plane.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn dist(&self, other: &Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn norm(&self) -> f64 {
        self.x.hypot(self.y)
    }
}

/// A planar rectangle of eccentricity `N`: the long side has length `length`,
/// the short side `length / eccentricity`. `theta` is the direction of the
/// long axis, taken in `[0, π)`.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct RectangleSpec {
    pub center: Point,
    pub theta: f64,
    pub length: f64,
    pub eccentricity: f64,
}

impl RectangleSpec {
    pub fn new(center: Point, theta: f64, length: f64, eccentricity: f64) -> Self {
        RectangleSpec {
            center,
            theta,
            length,
            eccentricity,
        }
    }

    /// Axis-aligned rectangle `[x0, x1] × [y0, y1]`; the long side decides the
    /// orientation.
    pub fn axis_aligned(x0: f64, y0: f64, x1: f64, y1: f64) -> Self {
        let w = x1 - x0;
        let h = y1 - y0;
        let center = Point::new(0.5 * (x0 + x1), 0.5 * (y0 + y1));
        if w >= h {
            RectangleSpec::new(center, 0.0, w, w / h)
        } else {
            RectangleSpec::new(center, std::f64::consts::FRAC_PI_2, h, h / w)
        }
    }

    pub fn width(&self) -> f64 {
        self.length / self.eccentricity
    }

    pub fn area(&self) -> f64 {
        self.length * self.width()
    }

    /// Coordinates of `p` in the rectangle frame: `u` along the long axis,
    /// `v` along the short axis, both measured from the center.
    pub fn frame_coords(&self, p: &Point) -> (f64, f64) {
        let (sin, cos) = self.theta.sin_cos();
        let dx = p.x - self.center.x;
        let dy = p.y - self.center.y;
        (dx * cos + dy * sin, -dx * sin + dy * cos)
    }

    /// Membership test with a symmetric tolerance band around the boundary.
    pub fn contains(&self, p: &Point, tol: f64) -> bool {
        let (u, v) = self.frame_coords(p);
        u.abs() <= 0.5 * self.length + tol && v.abs() <= 0.5 * self.width() + tol
    }

    pub fn corners(&self) -> [Point; 4] {
        let (sin, cos) = self.theta.sin_cos();
        let hu = 0.5 * self.length;
        let hv = 0.5 * self.width();
        let corner = |su: f64, sv: f64| {
            Point::new(
                self.center.x + su * hu * cos - sv * hv * sin,
                self.center.y + su * hu * sin + sv * hv * cos,
            )
        };
        [
            corner(-1.0, -1.0),
            corner(-1.0, 1.0),
            corner(1.0, -1.0),
            corner(1.0, 1.0),
        ]
    }

    /// Smallest axis-aligned box containing the rectangle.
    pub fn bounding_box(&self) -> (Point, Point) {
        let cs = self.corners();
        let mut lo = cs[0];
        let mut hi = cs[0];
        for c in &cs[1..] {
            lo.x = lo.x.min(c.x);
            lo.y = lo.y.min(c.y);
            hi.x = hi.x.max(c.x);
            hi.y = hi.y.max(c.y);
        }
        (lo, hi)
    }

    /// Half-diagonal; every point of the rectangle is within this distance of
    /// the center.
    pub fn circumradius(&self) -> f64 {
        0.5 * self.length.hypot(self.width())
    }

    /// True if the whole axis-aligned square `[x0, x0+side] × [y0, y0+side]`
    /// lies inside the rectangle (corner containment; both sets are convex).
    pub fn contains_square(&self, x0: f64, y0: f64, side: f64) -> bool {
        let pts = [
            Point::new(x0, y0),
            Point::new(x0 + side, y0),
            Point::new(x0, y0 + side),
            Point::new(x0 + side, y0 + side),
        ];
        pts.iter().all(|p| self.contains(p, 0.0))
    }
}

/// Measurable subsets of the plane that the exponent analysis understands.
#[derive(Clone, Debug)]
pub enum Region {
    /// All of ℝ².
    Everything,
    /// Closed axis-aligned rectangle `[x0, x1] × [y0, y1]`.
    Rect { x0: f64, y0: f64, x1: f64, y1: f64 },
    /// Closed disk.
    Disk { center: Point, radius: f64 },
    /// Rotated rectangle.
    RotRect(RectangleSpec),
    /// Union of regions.
    Union(Vec<Region>),
}

impl Region {
    pub fn rect(x0: f64, y0: f64, x1: f64, y1: f64) -> Self {
        Region::Rect { x0, y0, x1, y1 }
    }

    pub fn contains(&self, p: &Point) -> bool {
        match self {
            Region::Everything => true,
            Region::Rect { x0, y0, x1, y1 } => {
                p.x >= *x0 && p.x <= *x1 && p.y >= *y0 && p.y <= *y1
            }
            Region::Disk { center, radius } => p.dist(center) <= *radius,
            Region::RotRect(r) => r.contains(p, 0.0),
            Region::Union(parts) => parts.iter().any(|r| r.contains(p)),
        }
    }

    /// Whether the region extends beyond the window `[wx0,wx1] × [wy0,wy1]`,
    /// in which case the declared tail value of an exponent participates in
    /// essential inf/sup computations.
    pub fn exits_window(&self, wx0: f64, wy0: f64, wx1: f64, wy1: f64) -> bool {
        match self {
            Region::Everything => true,
            Region::Rect { x0, y0, x1, y1 } => {
                *x0 < wx0 || *y0 < wy0 || *x1 > wx1 || *y1 > wy1
            }
            Region::Disk { center, radius } => {
                center.x - radius < wx0
                    || center.y - radius < wy0
                    || center.x + radius > wx1
                    || center.y + radius > wy1
            }
            Region::RotRect(r) => {
                let (lo, hi) = r.bounding_box();
                lo.x < wx0 || lo.y < wy0 || hi.x > wx1 || hi.y > wy1
            }
            Region::Union(parts) => parts.iter().any(|r| r.exits_window(wx0, wy0, wx1, wy1)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    #[test]
    fn rectangle_area_and_width() {
        let r = RectangleSpec::new(Point::new(0.0, 0.0), 0.0, 1.0, 8.0);
        assert_eq!(r.width(), 0.125);
        assert!((r.area() - 0.125).abs() < 1e-15);
        // width * N == length exactly
        assert_eq!(r.width() * r.eccentricity, r.length);
    }

    #[test]
    fn axis_aligned_picks_long_side() {
        let r = RectangleSpec::axis_aligned(0.0, 0.0, 0.1, 0.9);
        assert!((r.theta - FRAC_PI_2).abs() < 1e-15);
        assert!((r.length - 0.9).abs() < 1e-15);
        assert!((r.eccentricity - 9.0).abs() < 1e-12);
        assert!(r.contains(&Point::new(0.05, 0.45), 0.0));
        assert!(!r.contains(&Point::new(0.2, 0.45), 0.0));
    }

    #[test]
    fn rotated_containment() {
        let r = RectangleSpec::new(Point::new(0.0, 0.0), FRAC_PI_4, 2.0, 4.0);
        let along = Point::new(0.9 * FRAC_PI_4.cos(), 0.9 * FRAC_PI_4.sin());
        assert!(r.contains(&along, 0.0));
        let across = Point::new(-0.5, 0.5);
        assert!(!r.contains(&across, 0.0));
    }

    #[test]
    fn corners_are_inside_with_tolerance() {
        let r = RectangleSpec::new(Point::new(0.3, -0.2), 1.1, 0.7, 5.0);
        for c in r.corners() {
            assert!(r.contains(&c, 1e-12));
            assert!(c.dist(&r.center) <= r.circumradius() + 1e-12);
        }
    }

    #[test]
    fn square_containment_matches_corner_test() {
        let r = RectangleSpec::new(Point::new(0.5, 0.5), 0.0, 0.8, 4.0);
        // height = 0.2: square of side 0.15 centered inside fits
        assert!(r.contains_square(0.45, 0.425, 0.15));
        assert!(!r.contains_square(0.45, 0.425, 0.3));
    }

    #[test]
    fn region_union_and_window_exit() {
        let u = Region::Union(vec![
            Region::rect(0.0, 0.0, 0.5, 0.5),
            Region::rect(0.0, 0.4, 0.5, 0.9),
        ]);
        assert!(u.contains(&Point::new(0.1, 0.85)));
        assert!(!u.contains(&Point::new(0.6, 0.1)));
        assert!(!u.exits_window(0.0, 0.0, 1.0, 1.0));
        assert!(u.exits_window(0.0, 0.0, 1.0, 0.8));
        assert!(Region::Everything.exits_window(0.0, 0.0, 1.0, 1.0));
    }
}
