//! Minimum-weight cover of points on a line by weighted closed segments.
//!
//! One left-to-right sweep. For point `i`, `W[i]` is the cheapest way to cover
//! points `1..=i`; a segment `j` costs `w_j + W[f(j)]` where `f(j)` counts the
//! points strictly left of it. The active segments sit in an aggregate set so
//! each point reads off the cheapest active cost.

use crate::aggregate::{Forest, Tree};
use crate::error::{Error, Result};
use crate::solution::{Solution, Stats};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightedSegment {
    pub l: f64,
    pub r: f64,
    pub w: f64,
    /// Disk (or other object) this segment was derived from.
    pub origin: Option<usize>,
}

impl WeightedSegment {
    pub fn new(l: f64, r: f64, w: f64) -> Self {
        Self { l, r, w, origin: None }
    }

    pub fn with_origin(l: f64, r: f64, w: f64, origin: usize) -> Self {
        Self { l, r, w, origin: Some(origin) }
    }

    pub fn covers(&self, x: f64) -> bool {
        self.l <= x && x <= self.r
    }
}

/// Full DP tables, kept for inspection and tests.
#[derive(Debug, Clone, PartialEq)]
pub struct DpState {
    /// `best[i]` for `i in 0..=n`; `best[0] = 0`.
    pub best: Vec<f64>,
    /// Per segment, in input order; `None` if it never became active.
    pub cost: Vec<Option<f64>>,
    /// Segment chosen at each point, indexed `1..=n` (slot 0 unused).
    pub choice: Vec<usize>,
    /// Per segment: number of points strictly left of it.
    pub pred: Vec<usize>,
    pub events: u64,
}

/// For every segment, the number of points with `x < l`, by one merged scan
/// over sorted points and sorted left endpoints.
pub fn compute_f(segments: &[WeightedSegment], points: &[f64]) -> Vec<usize> {
    let mut xs = points.to_vec();
    xs.sort_by(f64::total_cmp);
    let mut order: Vec<usize> = (0..segments.len()).collect();
    order.sort_by(|&a, &b| segments[a].l.total_cmp(&segments[b].l));
    let mut f = vec![0; segments.len()];
    let mut i = 0;
    for j in order {
        while i < xs.len() && xs[i] < segments[j].l {
            i += 1;
        }
        f[j] = i;
    }
    f
}

fn validate(segments: &[WeightedSegment], points: &[f64]) -> Result<()> {
    for (j, s) in segments.iter().enumerate() {
        if !(s.l.is_finite() && s.r.is_finite() && s.w.is_finite()) {
            return Err(Error::DegenerateInput(format!("segment {j} is not finite")));
        }
        if s.l > s.r {
            return Err(Error::DegenerateInput(format!("segment {j} has l > r")));
        }
        if s.w <= 0.0 {
            return Err(Error::NonPositiveWeight { id: j, weight: s.w });
        }
    }
    if points.iter().any(|x| !x.is_finite()) {
        return Err(Error::DegenerateInput("point coordinate is not finite".into()));
    }
    Ok(())
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Kind {
    Open,
    Point,
    Close,
}

/// Runs the sweep and returns the DP tables. Points need not be sorted.
pub fn dp_table(points: &[f64], segments: &[WeightedSegment]) -> Result<DpState> {
    validate(segments, points)?;
    let mut xs = points.to_vec();
    xs.sort_by(f64::total_cmp);
    let n = xs.len();
    let pred = compute_f(segments, &xs);

    let mut events: Vec<(f64, Kind, usize)> = Vec::with_capacity(n + 2 * segments.len());
    for (j, s) in segments.iter().enumerate() {
        events.push((s.l, Kind::Open, j));
        events.push((s.r, Kind::Close, j));
    }
    for (i, &x) in xs.iter().enumerate() {
        events.push((x, Kind::Point, i + 1));
    }
    events.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));

    let mut forest = Forest::with_capacity(segments.len());
    let mut active = Tree::EMPTY;
    let mut best = vec![0.0; n + 1];
    let mut cost = vec![None; segments.len()];
    let mut choice = vec![usize::MAX; n + 1];
    for &(_, kind, idx) in &events {
        match kind {
            Kind::Open => {
                let c = segments[idx].w + best[pred[idx]];
                cost[idx] = Some(c);
                active = forest.insert(active, idx, c, |_| false);
            }
            Kind::Point => {
                let (c, j) = forest.aggregate(active).ok_or(Error::Infeasible)?;
                best[idx] = c;
                choice[idx] = j;
            }
            Kind::Close => {
                active = forest.remove(idx);
            }
        }
    }
    Ok(DpState { best, cost, choice, pred, events: events.len() as u64 })
}

/// Optimal cover. `chosen` indexes into `segments`.
pub fn solve_1d(points: &[f64], segments: &[WeightedSegment]) -> Result<Solution> {
    let dp = dp_table(points, segments)?;
    let n = points.len();
    let mut chosen = Vec::new();
    let mut i = n;
    while i > 0 {
        let j = dp.choice[i];
        chosen.push(j);
        i = dp.pred[j];
    }
    chosen.sort_unstable();
    Ok(Solution { weight: dp.best[n], chosen, stats: Stats { events: dp.events, ..Stats::default() } })
}
