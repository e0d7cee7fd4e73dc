//! Line-separable unit disks and half-plane coverage.
//!
//! Both run through the couple machinery with different boundaries: arcs of
//! equal-radius circles centered below the separating line, and the lines
//! bounding lower half-planes (a lower half-plane behaves like a disk of
//! infinite radius). General half-plane instances are either covered by at
//! most three half-planes that cover the whole plane, or split by a line
//! into a part covered only by lower half-planes and a part covered only by
//! upper ones; every such split is tried.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::couples::{solve_curves, Builder};
use crate::curves::{Curve, CurveInstance, Shape};
use crate::error::{Error, Result};
use crate::geom::{covers_circle, PointP};
use crate::solution::{Solution, Stats, SweepConfig};

/// `{(x, y) : a x + b y <= c}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfPlane {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub w: f64,
    pub id: usize,
}

impl HalfPlane {
    pub fn new(a: f64, b: f64, c: f64, w: f64, id: usize) -> Self {
        Self { a, b, c, w, id }
    }

    #[inline]
    pub fn covers(&self, x: f64, y: f64) -> bool {
        self.a * x + self.b * y <= self.c
    }

    pub fn is_lower(&self) -> bool {
        self.b > 0.0
    }

    pub fn is_upper(&self) -> bool {
        self.b < 0.0
    }

    /// Image under `(x, y) -> (x, -y)`.
    pub fn reflected(&self) -> HalfPlane {
        HalfPlane { b: -self.b, ..*self }
    }
}

/// Reflects points through the x-axis.
pub fn reflect_points(points: &[PointP]) -> Vec<PointP> {
    points.iter().map(|p| PointP { y: -p.y, ..*p }).collect()
}

/// A disk with an arbitrary center, for line-separable instances.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CenteredDisk {
    pub cx: f64,
    pub cy: f64,
    pub r: f64,
    pub w: f64,
    pub id: usize,
}

impl CenteredDisk {
    pub fn covers(&self, x: f64, y: f64) -> bool {
        covers_circle(self.cx, self.cy, self.r, x, y)
    }
}

/// Points above the horizontal line `y = separator_y`, equal-radius disks
/// centered below it.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparatedInstance {
    pub points: Vec<PointP>,
    pub disks: Vec<CenteredDisk>,
    pub separator_y: f64,
}

fn check_weight(id: usize, w: f64) -> Result<()> {
    if !w.is_finite() {
        return Err(Error::DegenerateInput(format!("weight of {id} is not finite")));
    }
    if w <= 0.0 {
        return Err(Error::NonPositiveWeight { id, weight: w });
    }
    Ok(())
}

fn check_points(points: &[PointP]) -> Result<()> {
    if points.iter().any(|p| !(p.x.is_finite() && p.y.is_finite())) {
        return Err(Error::DegenerateInput("point coordinate is not finite".into()));
    }
    Ok(())
}

fn sorted(points: &[PointP]) -> Vec<PointP> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.id.cmp(&b.id)));
    pts
}

/// Pairs of disks whose common part reaches above the separator.
pub fn count_pairs_above(disks: &[CenteredDisk], separator_y: f64) -> u64 {
    let mut sorted: Vec<&CenteredDisk> = disks.iter().collect();
    sorted.sort_by(|a, b| a.cx.total_cmp(&b.cx));
    let rmax = sorted.iter().map(|d| d.r).fold(0.0, f64::max);
    let mut count = 0;
    for (i, a) in sorted.iter().enumerate() {
        for b in &sorted[i + 1..] {
            if b.cx - a.cx > a.r + rmax {
                break;
            }
            if lens_top(a, b).is_some_and(|y| y > separator_y) {
                count += 1;
            }
        }
    }
    count
}

/// Highest y of the intersection of two disks, if they meet.
fn lens_top(a: &CenteredDisk, b: &CenteredDisk) -> Option<f64> {
    let mut best: Option<f64> = None;
    let mut consider = |y: f64| best = Some(best.map_or(y, |b: f64| b.max(y)));
    if b.covers(a.cx, a.cy + a.r) {
        consider(a.cy + a.r);
    }
    if a.covers(b.cx, b.cy + b.r) {
        consider(b.cy + b.r);
    }
    let (dx, dy) = (b.cx - a.cx, b.cy - a.cy);
    let d2 = dx * dx + dy * dy;
    if d2 > 0.0 {
        let d = d2.sqrt();
        let along = (a.r * a.r - b.r * b.r + d2) / (2.0 * d);
        let h2 = a.r * a.r - along * along;
        if h2 >= 0.0 {
            let h = h2.sqrt();
            let by = a.cy + along * dy / d;
            consider(by + h * dx / d);
            consider(by - h * dx / d);
        }
    }
    best
}

/// Optimal cover of a line-separable unit-disk instance.
pub fn solve_line_separable(inst: &SeparatedInstance) -> Result<Solution> {
    solve_line_separable_with(inst, Builder::Sweep, SweepConfig::from_env())
}

pub fn solve_line_separable_with(inst: &SeparatedInstance, builder: Builder, cfg: SweepConfig) -> Result<Solution> {
    let ci = separated_curves(inst)?;
    if ci.n() == 0 {
        return Ok(Solution { weight: 0.0, chosen: vec![], stats: Stats::default() });
    }
    let mut sol = solve_curves(&ci, builder, cfg)?;
    sol.stats.kappa = count_pairs_above(&inst.disks, inst.separator_y);
    Ok(sol)
}

/// Validates a separable instance and turns it into arcs over the x-axis,
/// the separator moved to `y = 0`. Disks that do not reach above the
/// separator are dropped.
pub fn separated_curves(inst: &SeparatedInstance) -> Result<CurveInstance> {
    check_points(&inst.points)?;
    let s = inst.separator_y;
    if !s.is_finite() {
        return Err(Error::DegenerateInput("separator is not finite".into()));
    }
    let Some(first) = inst.disks.first() else {
        return match inst.points.first() {
            None => Ok(CurveInstance::new(vec![], vec![])),
            Some(p) => Err(Error::InfeasibleInstance { point: p.id }),
        };
    };
    for d in &inst.disks {
        check_weight(d.id, d.w)?;
        if !(d.cx.is_finite() && d.cy.is_finite() && d.r.is_finite()) || d.r <= 0.0 {
            return Err(Error::DegenerateInput(format!("disk {} is degenerate", d.id)));
        }
        if d.r != first.r {
            return Err(Error::MixedRadii);
        }
        if d.cy >= s {
            return Err(Error::DegenerateInput(format!("disk {} is not centered below the separator", d.id)));
        }
    }
    if let Some(p) = inst.points.iter().find(|p| p.y <= s) {
        return Err(Error::DegenerateInput(format!("point {} is not above the separator", p.id)));
    }
    // Move the separator to the x-axis; disks that stay below it cover nothing.
    let points: Vec<PointP> = sorted(&inst.points).into_iter().map(|p| PointP { y: p.y - s, ..p }).collect();
    let curves: Vec<Curve> = inst
        .disks
        .iter()
        .map(|d| Curve { shape: Shape::Circle { cx: d.cx, cy: d.cy - s, r: d.r }, w: d.w, id: d.id })
        .filter(|c| c.shape.extent().is_some())
        .collect();
    let mut by_center: Vec<(f64, usize)> = inst.disks.iter().map(|d| d.cx).zip(0..).collect();
    by_center.sort_by(|a, b| a.0.total_cmp(&b.0));
    for p in &points {
        let from = by_center.partition_point(|c| c.0 < p.x - first.r);
        let to = by_center.partition_point(|c| c.0 <= p.x + first.r);
        let d = &inst.disks;
        if !by_center[from..to].iter().any(|&(_, k)| covers_circle(d[k].cx, d[k].cy - s, d[k].r, p.x, p.y)) {
            return Err(Error::InfeasibleInstance { point: p.id });
        }
    }
    Ok(CurveInstance::new(points, curves))
}

/// Optimal cover by lower half-planes.
pub fn solve_lower_only(points: &[PointP], planes: &[HalfPlane]) -> Result<Solution> {
    solve_lower_only_with(points, planes, Builder::Sweep, SweepConfig::from_env())
}

pub fn solve_lower_only_with(
    points: &[PointP],
    planes: &[HalfPlane],
    builder: Builder,
    cfg: SweepConfig,
) -> Result<Solution> {
    let ci = lower_curves(points, planes)?;
    if ci.n() == 0 {
        return Ok(Solution { weight: 0.0, chosen: vec![], stats: Stats::default() });
    }
    let mut sol = solve_curves(&ci, builder, cfg)?;
    sol.stats.kappa = count_crossing_lines(planes);
    Ok(sol)
}

/// Validates a lower-only instance and turns the half-planes into their
/// boundary lines.
pub fn lower_curves(points: &[PointP], planes: &[HalfPlane]) -> Result<CurveInstance> {
    check_points(points)?;
    for h in planes {
        check_weight(h.id, h.w)?;
        if !(h.a.is_finite() && h.b.is_finite() && h.c.is_finite()) {
            return Err(Error::DegenerateInput(format!("half-plane {} is not finite", h.id)));
        }
        if !h.is_lower() {
            return Err(Error::NotLower(h.id));
        }
    }
    if points.iter().any(|p| !planes.iter().any(|h| h.covers(p.x, p.y))) {
        return Err(Error::Infeasible);
    }
    let curves =
        planes.iter().map(|h| Curve { shape: Shape::Line { a: h.a, b: h.b, c: h.c }, w: h.w, id: h.id }).collect();
    Ok(CurveInstance::new(sorted(points), curves))
}

/// Non-parallel pairs of boundary lines; every such pair crosses once.
pub fn count_crossing_lines(planes: &[HalfPlane]) -> u64 {
    let mut count = 0;
    for (i, p) in planes.iter().enumerate() {
        for q in &planes[i + 1..] {
            if p.a * q.b - q.a * p.b != 0.0 {
                count += 1;
            }
        }
    }
    count
}

fn det(a: &HalfPlane, b: &HalfPlane) -> f64 {
    a.a * b.b - a.b * b.a
}

/// Whether the union of 1 to 3 half-planes is the whole plane, i.e. the
/// complementary strict system `a x + b y > c` has no solution. By the
/// transposition theorem that happens iff some nonnegative, nonzero
/// combination of the normals vanishes with a nonnegative combination of
/// the offsets; the extreme such combinations use two or three normals.
pub fn covers_plane(hs: &[HalfPlane]) -> bool {
    let pair = |p: &HalfPlane, q: &HalfPlane| {
        // p + mu q = 0 with mu > 0
        if det(p, q) != 0.0 {
            return false;
        }
        let dot = p.a * q.a + p.b * q.b;
        if dot >= 0.0 {
            return false;
        }
        let mu = -dot / (q.a * q.a + q.b * q.b);
        p.c + mu * q.c >= 0.0
    };
    match hs {
        [p, q] => pair(p, q),
        [p, q, r] => {
            if pair(p, q) || pair(q, r) || pair(p, r) {
                return true;
            }
            let lambda = [det(q, r), det(r, p), det(p, q)];
            let sign = if lambda.iter().all(|&l| l > 0.0) {
                1.0
            } else if lambda.iter().all(|&l| l < 0.0) {
                -1.0
            } else {
                return false;
            };
            sign * (lambda[0] * p.c + lambda[1] * q.c + lambda[2] * r.c) >= 0.0
        }
        _ => false,
    }
}

/// Every split of the points by a line, as `(one side, other side)` index
/// lists, both orientations, including the two trivial splits. Points on a
/// candidate line are cut at every position along it.
pub fn enumerate_bipartitions(points: &[PointP]) -> Vec<(Vec<usize>, Vec<usize>)> {
    let n = points.len();
    let words = n.div_ceil(64).max(1);
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut out = Vec::new();
    let mut emit = |side: &[bool]| {
        let mut key = vec![0u64; words];
        for (i, &s) in side.iter().enumerate() {
            if s {
                key[i / 64] |= 1 << (i % 64);
            }
        }
        if seen.insert(key) {
            let first = (0..n).filter(|&i| side[i]).collect();
            let second = (0..n).filter(|&i| !side[i]).collect();
            out.push((first, second));
        }
    };
    emit(&vec![true; n]);
    emit(&vec![false; n]);
    for i in 0..n {
        for j in 0..n {
            let (p, q) = (&points[i], &points[j]);
            let (dx, dy) = (q.x - p.x, q.y - p.y);
            if i == j || (dx == 0.0 && dy == 0.0) {
                continue;
            }
            let mut side = vec![false; n];
            let mut on_line: Vec<(f64, usize)> = Vec::new();
            for (k, r) in points.iter().enumerate() {
                let cross = dx * (r.y - p.y) - dy * (r.x - p.x);
                if cross > 0.0 {
                    side[k] = true;
                } else if cross == 0.0 {
                    on_line.push((dx * (r.x - p.x) + dy * (r.y - p.y), k));
                }
            }
            on_line.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            for cut in 0..=on_line.len() {
                let mut s = side.clone();
                for &(_, k) in &on_line[..cut] {
                    s[k] = true;
                }
                emit(&s);
            }
        }
    }
    out
}

/// Angles tried, in order, when some half-plane is vertical.
const ROTATIONS: [f64; 4] = [0.1234, 0.2718, 0.3821, 0.5772];

fn rotate(points: &[PointP], planes: &[HalfPlane], theta: f64) -> (Vec<PointP>, Vec<HalfPlane>) {
    let (s, c) = theta.sin_cos();
    let pts = points.iter().map(|p| PointP { x: c * p.x - s * p.y, y: s * p.x + c * p.y, ..*p }).collect();
    let hps = planes.iter().map(|h| HalfPlane { a: c * h.a - s * h.b, b: s * h.a + c * h.b, ..*h }).collect();
    (pts, hps)
}

#[derive(Debug, Clone)]
struct Candidate {
    weight: f64,
    chosen: Vec<usize>,
}

impl Candidate {
    fn new(planes: &[HalfPlane], mut positions: Vec<usize>) -> Self {
        positions.sort_unstable();
        let weight = positions.iter().map(|&k| planes[k].w).sum();
        let mut chosen: Vec<usize> = positions.iter().map(|&k| planes[k].id).collect();
        chosen.sort_unstable();
        Candidate { weight, chosen }
    }

    fn better(self, other: Candidate) -> Candidate {
        match self.weight.total_cmp(&other.weight).then_with(|| self.chosen.cmp(&other.chosen)) {
            std::cmp::Ordering::Greater => other,
            _ => self,
        }
    }
}

/// Optimal cover by arbitrary half-planes.
pub fn solve_halfplane_general(points: &[PointP], planes: &[HalfPlane]) -> Result<Solution> {
    solve_halfplane_general_with(points, planes, Builder::Sweep, SweepConfig::from_env())
}

pub fn solve_halfplane_general_with(
    points: &[PointP],
    planes: &[HalfPlane],
    builder: Builder,
    cfg: SweepConfig,
) -> Result<Solution> {
    check_points(points)?;
    for h in planes {
        check_weight(h.id, h.w)?;
        if !(h.a.is_finite() && h.b.is_finite() && h.c.is_finite()) || (h.a == 0.0 && h.b == 0.0) {
            return Err(Error::DegenerateInput(format!("half-plane {} is degenerate", h.id)));
        }
    }
    if planes.iter().any(|h| h.b == 0.0) {
        for theta in ROTATIONS {
            let (pts, hps) = rotate(points, planes, theta);
            if hps.iter().all(|h| h.b != 0.0) {
                return solve_non_vertical(&pts, &hps, builder, cfg);
            }
        }
        return Err(Error::DegenerateInput("could not rotate away vertical half-planes".into()));
    }
    solve_non_vertical(points, planes, builder, cfg)
}

fn solve_non_vertical(points: &[PointP], planes: &[HalfPlane], builder: Builder, cfg: SweepConfig) -> Result<Solution> {
    let m = planes.len();
    let mut best: Option<Candidate> = None;
    let mut offer = |c: Candidate| {
        best = Some(match best.take() {
            Some(b) => b.better(c),
            None => c,
        })
    };

    // at most three half-planes covering everything
    for i in 0..m {
        for j in i + 1..m {
            if covers_plane(&[planes[i], planes[j]]) {
                offer(Candidate::new(planes, vec![i, j]));
            }
            for k in j + 1..m {
                if covers_plane(&[planes[i], planes[j], planes[k]]) {
                    offer(Candidate::new(planes, vec![i, j, k]));
                }
            }
        }
    }

    // local positions let both halves map back to `planes`
    let lower: Vec<HalfPlane> =
        (0..m).filter(|&k| planes[k].is_lower()).map(|k| HalfPlane { id: k, ..planes[k] }).collect();
    let upper: Vec<HalfPlane> =
        (0..m).filter(|&k| planes[k].is_upper()).map(|k| HalfPlane { id: k, ..planes[k].reflected() }).collect();
    let splits = enumerate_bipartitions(points);
    let from_splits = splits
        .par_iter()
        .filter_map(|(below, above)| {
            let part = |idx: &[usize]| -> Vec<PointP> { idx.iter().map(|&i| points[i]).collect() };
            let low = solve_lower_only_with(&part(below), &lower, builder, cfg).ok()?;
            let up = solve_lower_only_with(&reflect_points(&part(above)), &upper, builder, cfg).ok()?;
            let positions = low.chosen.into_iter().chain(up.chosen).collect();
            Some(Candidate::new(planes, positions))
        })
        .reduce_with(Candidate::better);
    if let Some(c) = from_splits {
        offer(c);
    }
    let best = best.ok_or(Error::Infeasible)?;
    Ok(Solution {
        weight: best.weight,
        chosen: best.chosen,
        stats: Stats { kappa: count_crossing_lines(planes), ..Stats::default() },
    })
}
