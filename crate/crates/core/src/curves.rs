//! Upper boundaries swept by the couple builders.
//!
//! Every covering object handled by the sweeps is an x-monotone upper
//! boundary over an x-interval, covering exactly the points beneath it:
//! the top edge of a square, the upper arc of a circle, or a line bounding a
//! lower half-plane (unbounded, so it is alive across the whole sweep).
//! Any two boundaries of one instance cross at most once, which is what the
//! Bentley–Ottmann style status maintenance relies on.

use std::cmp::Ordering;

use crate::geom::{covers_circle, Instance, Metric, PointP};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Shape {
    /// L∞ ball centered on the axis; its top edge is at height `r`.
    Square { cx: f64, r: f64 },
    /// Euclidean disk centered at `(cx, cy)`, `cy <= 0`; only the part
    /// above the axis is swept.
    Circle { cx: f64, cy: f64, r: f64 },
    /// Lower half-plane `a x + b y <= c` with `b > 0`.
    Line { a: f64, b: f64, c: f64 },
}

impl Shape {
    #[inline]
    pub fn covers(&self, x: f64, y: f64) -> bool {
        match *self {
            Shape::Square { cx, r } => (x - cx).abs().max(y.abs()) <= r,
            Shape::Circle { cx, cy, r } => covers_circle(cx, cy, r, x, y),
            Shape::Line { a, b, c } => a * x + b * y <= c,
        }
    }

    pub fn covers_point(&self, p: &PointP) -> bool {
        self.covers(p.x, p.y)
    }

    /// x-interval over which the boundary lies on or above the axis.
    /// `None` if the shape does not reach above the axis at all.
    pub fn extent(&self) -> Option<(f64, f64)> {
        match *self {
            Shape::Square { cx, r } => Some((cx - r, cx + r)),
            Shape::Circle { cx, cy, r } => {
                if cy == 0.0 {
                    Some((cx - r, cx + r))
                } else if r > -cy {
                    let half = (r * r - cy * cy).sqrt();
                    Some((cx - half, cx + half))
                } else {
                    None
                }
            }
            Shape::Line { .. } => Some((f64::NEG_INFINITY, f64::INFINITY)),
        }
    }

    /// Height of the boundary at `x`. Outside a circle's extent the value
    /// keeps decreasing, which only matters for tie-breaking probes.
    pub fn height(&self, x: f64) -> f64 {
        match *self {
            Shape::Square { r, .. } => r,
            Shape::Circle { cx, cy, r } => {
                let dx = x - cx;
                let s = r * r - dx * dx;
                if s >= 0.0 {
                    cy + s.sqrt()
                } else {
                    cy - (-s).sqrt()
                }
            }
            Shape::Line { a, b, c } => (c - a * x) / b,
        }
    }

    /// Reflection through the y-axis.
    pub fn mirrored(&self) -> Shape {
        match *self {
            Shape::Square { cx, r } => Shape::Square { cx: -cx, r },
            Shape::Circle { cx, cy, r } => Shape::Circle { cx: -cx, cy, r },
            Shape::Line { a, b, c } => Shape::Line { a: -a, b, c },
        }
    }

    /// The x-coordinate where the two boundaries cross strictly above the
    /// axis, if they do.
    ///
    /// # Panics
    /// If two circles cross twice above the axis; the sweeps cannot order
    /// such arcs and the instance is outside what they support.
    pub fn crossing(&self, other: &Shape) -> Option<f64> {
        match (*self, *other) {
            (Shape::Circle { cx: c1, cy: d1, r: r1 }, Shape::Circle { cx: c2, cy: d2, r: r2 }) => {
                if d1 == 0.0 && d2 == 0.0 {
                    axis_circles_crossing(c1, r1, c2, r2)
                } else {
                    circles_crossing((c1, d1, r1), (c2, d2, r2))
                }
            }
            (Shape::Line { a: a1, b: b1, c: c1 }, Shape::Line { a: a2, b: b2, c: c2 }) => {
                let det = a1 * b2 - a2 * b1;
                if det == 0.0 {
                    None
                } else {
                    Some((c1 * b2 - c2 * b1) / det)
                }
            }
            _ => None,
        }
    }
}

fn axis_circles_crossing(c1: f64, r1: f64, c2: f64, r2: f64) -> Option<f64> {
    if c1 == c2 {
        return None;
    }
    // radical axis of two circles centered on the x-axis
    let x = 0.5 * (c1 + c2) + (r1 * r1 - r2 * r2) / (2.0 * (c2 - c1));
    let (e1, e2) = (x - c1, x - c2);
    if r1 * r1 - e1 * e1 > 0.0 && r2 * r2 - e2 * e2 > 0.0 {
        Some(x)
    } else {
        None
    }
}

fn circles_crossing((c1, d1, r1): (f64, f64, f64), (c2, d2, r2): (f64, f64, f64)) -> Option<f64> {
    let (dx, dy) = (c2 - c1, d2 - d1);
    let dist2 = dx * dx + dy * dy;
    if dist2 == 0.0 {
        return None;
    }
    let dist = dist2.sqrt();
    let along = (r1 * r1 - r2 * r2 + dist2) / (2.0 * dist);
    let h2 = r1 * r1 - along * along;
    if h2 <= 0.0 {
        return None;
    }
    let h = h2.sqrt();
    let (ux, uy) = (dx / dist, dy / dist);
    let (bx, by) = (c1 + along * ux, d1 + along * uy);
    let above: Vec<f64> = [(bx - h * uy, by + h * ux), (bx + h * uy, by - h * ux)]
        .into_iter()
        .filter(|&(_, y)| y > 0.0)
        .map(|(x, _)| x)
        .collect();
    assert!(above.len() <= 1, "two circle boundaries cross twice above the separating line");
    above.first().copied()
}

/// Orders two boundaries by height at `x`, lowest first. Near-ties are
/// resolved by the heights just right of `x`, then by index.
pub fn cmp_at(a: &Shape, ia: usize, b: &Shape, ib: usize, x: f64) -> Ordering {
    if ia == ib {
        return Ordering::Equal;
    }
    let primary = match (*a, *b) {
        (Shape::Square { r: ra, .. }, Shape::Square { r: rb, .. }) => ra.total_cmp(&rb),
        (Shape::Circle { cx: ca, cy: 0.0, r: ra }, Shape::Circle { cx: cb, cy: 0.0, r: rb }) => {
            // squared heights; both arcs are on or above the axis here
            let (ea, eb) = (x - ca, x - cb);
            let (sa, sb) = (ra * ra - ea * ea, rb * rb - eb * eb);
            near_cmp(sa, sb)
        }
        _ => near_cmp(a.height(x), b.height(x)),
    };
    if primary != Ordering::Equal {
        return primary;
    }
    if !matches!(a, Shape::Square { .. }) {
        let probe = x + 1e-7 * (1.0 + x.abs());
        let p = a.height(probe).total_cmp(&b.height(probe));
        if p != Ordering::Equal {
            return p;
        }
    }
    ia.cmp(&ib)
}

fn near_cmp(a: f64, b: f64) -> Ordering {
    let tol = 1e-12 * (1.0 + a.abs().max(b.abs()));
    if (a - b).abs() <= tol {
        Ordering::Equal
    } else {
        a.total_cmp(&b)
    }
}

/// A swept boundary with its weight and the caller's id.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Curve {
    pub shape: Shape,
    pub w: f64,
    pub id: usize,
}

/// Points plus swept boundaries, with the per-curve windows precomputed.
///
/// Point indices are 1-based as in [`Instance`]; curve indices are
/// positions in `curves`.
#[derive(Debug, Clone)]
pub struct CurveInstance {
    pub points: Vec<PointP>,
    pub curves: Vec<Curve>,
    pub left_sentinel: f64,
    pub right_sentinel: f64,
    /// Event x of each curve's start and end, clamped to the sentinels.
    pub start: Vec<f64>,
    pub end: Vec<f64>,
    /// Last point strictly left of each curve's extent (0 = sentinel).
    pub p_l: Vec<usize>,
    /// First point strictly right of each curve's extent (n + 1 = sentinel).
    pub p_r: Vec<usize>,
}

impl CurveInstance {
    /// `points` must be sorted by `(x, id)`; every curve must reach above
    /// the axis.
    pub fn new(points: Vec<PointP>, curves: Vec<Curve>) -> Self {
        let extents: Vec<(f64, f64)> =
            curves.iter().map(|c| c.shape.extent().expect("curve does not reach above the axis")).collect();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for p in &points {
            lo = lo.min(p.x);
            hi = hi.max(p.x);
        }
        for &(l, r) in &extents {
            if l.is_finite() {
                lo = lo.min(l);
            }
            if r.is_finite() {
                hi = hi.max(r);
            }
        }
        if !lo.is_finite() {
            (lo, hi) = (0.0, 0.0);
        }
        let (left_sentinel, right_sentinel) = (lo - 1.0, hi + 1.0);
        let start = extents.iter().map(|e| e.0.max(left_sentinel)).collect();
        let end = extents.iter().map(|e| e.1.min(right_sentinel)).collect();
        let p_l = extents.iter().map(|e| points.partition_point(|p| p.x < e.0)).collect();
        let p_r = extents.iter().map(|e| points.partition_point(|p| p.x <= e.1) + 1).collect();
        CurveInstance { points, curves, left_sentinel, right_sentinel, start, end, p_l, p_r }
    }

    /// Squares for L∞, axis-centered circles for L2 and unit disks.
    pub fn from_instance(inst: &Instance) -> Self {
        let curves = inst
            .disks
            .iter()
            .map(|d| {
                let shape = match inst.metric {
                    Metric::Linf => Shape::Square { cx: d.cx, r: d.r },
                    Metric::L2 | Metric::Unit => Shape::Circle { cx: d.cx, cy: 0.0, r: d.r },
                    other => panic!("no swept boundary for metric {other}"),
                };
                Curve { shape, w: d.w, id: d.id }
            })
            .collect();
        Self::new(inst.points.clone(), curves)
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn m(&self) -> usize {
        self.curves.len()
    }

    pub fn point(&self, i: usize) -> &PointP {
        &self.points[i - 1]
    }

    pub fn covers(&self, k: usize, i: usize) -> bool {
        self.curves[k].shape.covers_point(self.point(i))
    }

    pub fn cmp_at(&self, a: usize, b: usize, x: f64) -> Ordering {
        cmp_at(&self.curves[a].shape, a, &self.curves[b].shape, b, x)
    }

    /// Crossing x of two curves, restricted to where both are alive.
    pub fn crossing(&self, a: usize, b: usize) -> Option<f64> {
        let x = self.curves[a].shape.crossing(&self.curves[b].shape)?;
        let inside = |k: usize| self.start[k] < x && x < self.end[k];
        (inside(a) && inside(b)).then_some(x)
    }

    /// Reflection through the y-axis. Point `i` becomes point `n + 1 - i`;
    /// curve positions are kept.
    pub fn mirrored(&self) -> CurveInstance {
        let points = self.points.iter().rev().map(|p| PointP { x: -p.x, ..*p }).collect();
        let curves = self.curves.iter().map(|c| Curve { shape: c.shape.mirrored(), ..*c }).collect();
        CurveInstance::new(points, curves)
    }
}
