//! Domain types shared by every solver: points, axis-centered disks,
//! metrics, and the normalized [`Instance`].

use crate::error::{Error, Result};

/// A point to be covered. `id` is the index in the caller's input.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointP {
    pub x: f64,
    pub y: f64,
    pub id: usize,
}

impl PointP {
    pub fn new(x: f64, y: f64, id: usize) -> Self {
        Self { x, y, id }
    }
}

/// A weighted disk centered at `(cx, 0)`. The metric decides its shape.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Disk {
    pub cx: f64,
    pub r: f64,
    pub w: f64,
    pub id: usize,
}

impl Disk {
    pub fn new(cx: f64, r: f64, w: f64, id: usize) -> Self {
        Self { cx, r, w, id }
    }

    /// Leftmost x-coordinate; the same for every metric.
    pub fn left(&self) -> f64 {
        self.cx - self.r
    }

    pub fn right(&self) -> f64 {
        self.cx + self.r
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Metric {
    OneD,
    Unit,
    L1,
    L2,
    Linf,
}

impl Metric {
    pub fn name(self) -> &'static str {
        match self {
            Metric::OneD => "1d",
            Metric::Unit => "unit",
            Metric::L1 => "l1",
            Metric::L2 => "l2",
            Metric::Linf => "linf",
        }
    }
}

impl std::fmt::Display for Metric {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Closed Euclidean disk containment with an arbitrary center, compared on
/// squared quantities.
#[inline]
pub fn covers_circle(cx: f64, cy: f64, r: f64, x: f64, y: f64) -> bool {
    let dx = x - cx;
    let dy = y - cy;
    dx * dx + dy * dy <= r * r
}

/// Closed containment of `p` in `d` under metric `m`.
#[inline]
pub fn covers(d: &Disk, p: &PointP, m: Metric) -> bool {
    let dx = p.x - d.cx;
    match m {
        Metric::OneD => dx.abs() <= d.r,
        Metric::Unit | Metric::L2 => covers_circle(d.cx, 0.0, d.r, p.x, p.y),
        Metric::L1 => dx.abs() + p.y.abs() <= d.r,
        Metric::Linf => dx.abs().max(p.y.abs()) <= d.r,
    }
}

/// A normalized coverage instance: points above or on the x-axis sorted by
/// `(x, id)`, disks sorted by `(cx, id)`.
///
/// Point indices used throughout the solvers are 1-based: `1..=n` are the
/// sorted points, `0` and `n + 1` are the sentinels.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub metric: Metric,
    pub points: Vec<PointP>,
    pub disks: Vec<Disk>,
    pub left_sentinel: f64,
    pub right_sentinel: f64,
}

impl Instance {
    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn m(&self) -> usize {
        self.disks.len()
    }

    /// x-coordinate of point index `i` in `0..=n+1`, sentinels included.
    pub fn x(&self, i: usize) -> f64 {
        if i == 0 {
            self.left_sentinel
        } else if i > self.n() {
            self.right_sentinel
        } else {
            self.points[i - 1].x
        }
    }

    /// Point by 1-based index.
    pub fn point(&self, i: usize) -> &PointP {
        &self.points[i - 1]
    }

    /// Whether disk `k` (sorted position) covers point `i` (1-based).
    pub fn covers(&self, k: usize, i: usize) -> bool {
        covers(&self.disks[k], self.point(i), self.metric)
    }

    pub fn total_weight(&self, disks: &[usize]) -> f64 {
        disks.iter().map(|&k| self.disks[k].w).sum()
    }

    /// Maps sorted disk positions to original input ids, sorted.
    pub fn original_ids(&self, positions: &[usize]) -> Vec<usize> {
        let mut ids: Vec<usize> = positions.iter().map(|&k| self.disks[k].id).collect();
        ids.sort_unstable();
        ids.dedup();
        ids
    }
}

fn check_finite(what: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::DegenerateInput(format!("{what} is not finite")))
    }
}

/// Reflects points to `y >= 0`, sorts points and disks, validates weights,
/// radii and feasibility, and places the sentinels.
///
/// Points sharing an x-coordinate are ordered by input id; that order is the
/// tie-break every solver and oracle uses.
pub fn normalize(points: Vec<PointP>, disks: Vec<Disk>, metric: Metric) -> Result<Instance> {
    if metric == Metric::OneD {
        return Err(Error::MetricMismatch { expected: "a disk metric".into(), found: metric.to_string() });
    }
    if disks.is_empty() {
        return Err(Error::DegenerateInput("empty disk set".into()));
    }
    let mut points = points;
    for p in &mut points {
        check_finite("point coordinate", p.x)?;
        check_finite("point coordinate", p.y)?;
        p.y = p.y.abs();
    }
    for d in &disks {
        check_finite("disk center", d.cx)?;
        check_finite("disk radius", d.r)?;
        check_finite("disk weight", d.w)?;
        if d.r <= 0.0 {
            return Err(Error::DegenerateInput(format!("disk {} has radius {}", d.id, d.r)));
        }
        if d.w <= 0.0 {
            return Err(Error::NonPositiveWeight { id: d.id, weight: d.w });
        }
    }
    if metric == Metric::Unit && disks.iter().any(|d| d.r != disks[0].r) {
        return Err(Error::MixedRadii);
    }
    let mut disks = disks;
    points.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.id.cmp(&b.id)));
    disks.sort_by(|a, b| a.cx.total_cmp(&b.cx).then(a.id.cmp(&b.id)));

    // a covering disk has its center within the largest radius of the point
    let rmax = disks.iter().map(|d| d.r).fold(0.0, f64::max);
    for p in &points {
        let from = disks.partition_point(|d| d.cx < p.x - rmax);
        let to = disks.partition_point(|d| d.cx <= p.x + rmax);
        if !disks[from..to].iter().any(|d| covers(d, p, metric)) {
            return Err(Error::InfeasibleInstance { point: p.id });
        }
    }

    let (lo, hi) = extent_bounds(&points, &disks);
    Ok(Instance { metric, points, disks, left_sentinel: lo - 1.0, right_sentinel: hi + 1.0 })
}

fn extent_bounds(points: &[PointP], disks: &[Disk]) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for p in points {
        lo = lo.min(p.x);
        hi = hi.max(p.x);
    }
    for d in disks {
        lo = lo.min(d.left());
        hi = hi.max(d.right());
    }
    (lo, hi)
}

/// Number of disk pairs that intersect. With `above_line_only`, only pairs
/// whose common region reaches the open upper half-plane are counted; for
/// axis-centered disks that means overlapping with positive area.
///
/// Every metric's disk meets the axis in `[cx - r, cx + r]` and is symmetric
/// about it, so two disks meet iff those intervals do. The count is all
/// pairs minus the disjoint ones, found by sorting the endpoints.
pub fn count_intersecting_pairs(disks: &[Disk], metric: Metric, above_line_only: bool) -> u64 {
    let _ = metric;
    let mut ends: Vec<f64> = disks.iter().map(|d| d.right()).collect();
    ends.sort_by(f64::total_cmp);
    let disjoint: u64 = disks
        .iter()
        .map(|d| {
            let start = d.left();
            let before = if above_line_only {
                ends.partition_point(|&e| e <= start)
            } else {
                ends.partition_point(|&e| e < start)
            };
            before as u64
        })
        .sum();
    let m = disks.len() as u64;
    m * m.saturating_sub(1) / 2 - disjoint
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(cx: f64, r: f64) -> Disk {
        Disk::new(cx, r, 1.0, 0)
    }

    #[test]
    fn covers_examples() {
        let disk = d(2.0, 1.2);
        assert!(covers(&disk, &PointP::new(2.0, 0.5, 0), Metric::L2));
        // |2-1| + 0.5 = 1.5 > 1.2
        assert!(!covers(&disk, &PointP::new(1.0, 0.5, 0), Metric::L1));
        // max(1, 0.5) = 1 < 1.2
        assert!(covers(&disk, &PointP::new(1.0, 0.5, 0), Metric::Linf));
    }

    #[test]
    fn boundary_counts_as_covered() {
        let disk = d(0.0, 1.0);
        assert!(covers(&disk, &PointP::new(1.0, 0.0, 0), Metric::L2));
        assert!(covers(&disk, &PointP::new(0.5, 0.5, 0), Metric::L1));
        assert!(covers(&disk, &PointP::new(1.0, 1.0, 0), Metric::Linf));
    }

    #[test]
    fn normalize_reflects_and_sorts() {
        let inst = normalize(
            vec![PointP::new(3.0, 1.0, 0), PointP::new(1.0, -0.5, 1)],
            vec![Disk::new(2.0, 3.0, 1.0, 0)],
            Metric::L2,
        )
        .unwrap();
        assert_eq!(inst.points[0], PointP::new(1.0, 0.5, 1));
        assert_eq!(inst.points[1], PointP::new(3.0, 1.0, 0));
        assert!(inst.left_sentinel < -1.0 && inst.right_sentinel > 5.0);
    }

    #[test]
    fn normalize_rejects_bad_input() {
        let err = normalize(vec![PointP::new(10.0, 10.0, 0)], vec![d(0.0, 1.0)], Metric::L2);
        assert_eq!(err, Err(Error::InfeasibleInstance { point: 0 }));
        let err = normalize(vec![], vec![Disk::new(0.0, 1.0, 0.0, 3)], Metric::L2);
        assert!(matches!(err, Err(Error::NonPositiveWeight { id: 3, .. })));
        let err = normalize(vec![], vec![d(0.0, 1.0), d(1.0, 2.0)], Metric::Unit);
        assert_eq!(err, Err(Error::MixedRadii));
        let err = normalize(vec![PointP::new(f64::NAN, 0.0, 0)], vec![d(0.0, 1.0)], Metric::L2);
        assert!(matches!(err, Err(Error::DegenerateInput(_))));
    }

    #[test]
    fn duplicate_x_ordered_by_id() {
        let inst =
            normalize(vec![PointP::new(1.0, 0.2, 5), PointP::new(1.0, 0.1, 2)], vec![d(1.0, 1.0)], Metric::L2).unwrap();
        assert_eq!(inst.points[0].id, 2);
        assert_eq!(inst.points[1].id, 5);
    }

    #[test]
    fn kappa_examples() {
        assert_eq!(count_intersecting_pairs(&[d(0.0, 1.0), d(5.0, 1.0)], Metric::L2, false), 0);
        assert_eq!(count_intersecting_pairs(&[d(0.0, 2.0), d(1.0, 2.0)], Metric::L2, false), 1);
        let same: Vec<Disk> = (0..6).map(|_| d(0.3, 1.0)).collect();
        assert_eq!(count_intersecting_pairs(&same, Metric::L2, false), 15);
        // tangent on the axis: intersecting, but not above it
        let tangent = [d(0.0, 1.0), d(2.0, 1.0)];
        assert_eq!(count_intersecting_pairs(&tangent, Metric::L2, false), 1);
        assert_eq!(count_intersecting_pairs(&tangent, Metric::L2, true), 0);
    }

    #[test]
    fn intersecting_pairs_match_pairwise_scan() {
        let mut state = 7u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 40) as f64 / (1u64 << 24) as f64
        };
        for _ in 0..50 {
            // quarter-unit grid so tangencies happen
            let disks: Vec<Disk> =
                (0..30).map(|_| d((next() * 40.0).round() / 4.0, 0.25 + (next() * 8.0).round() / 4.0)).collect();
            for strict in [false, true] {
                let mut slow = 0;
                for (i, a) in disks.iter().enumerate() {
                    for b in &disks[i + 1..] {
                        let (gap, reach) = ((a.cx - b.cx).abs(), a.r + b.r);
                        if gap < reach || (!strict && gap == reach) {
                            slow += 1;
                        }
                    }
                }
                assert_eq!(count_intersecting_pairs(&disks, Metric::L2, strict), slow);
            }
        }
    }
}
