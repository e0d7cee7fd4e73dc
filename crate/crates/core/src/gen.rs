//! Seeded random instances.
//!
//! Weights are small integers, so sums are exact and solvers can be compared
//! with `==`. Every x-coordinate where a sweep changes state (extent ends,
//! centers, crossings) is kept a small margin away from every other one and
//! from every point, and points stay a margin away from every boundary.
//! Uncovered points are resampled until the instance is feasible.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::curves::Shape;
use crate::error::{Error, Result};
use crate::geom::{covers, Disk, Metric, PointP};
use crate::halfplane::{CenteredDisk, HalfPlane, SeparatedInstance};
use crate::problem::Problem;
use crate::solve1d::WeightedSegment;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    OneD,
    Unit,
    L1,
    L2,
    Linf,
    Separable,
    /// Half-planes of the form `a x + b y <= c` with `b > 0` only.
    LowerHalfPlanes,
    HalfPlanes,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::OneD,
        Family::Unit,
        Family::L1,
        Family::L2,
        Family::Linf,
        Family::Separable,
        Family::LowerHalfPlanes,
        Family::HalfPlanes,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::OneD => "1d",
            Family::Unit => "unit",
            Family::L1 => "l1",
            Family::L2 => "l2",
            Family::Linf => "linf",
            Family::Separable => "separable",
            Family::LowerHalfPlanes => "lower",
            Family::HalfPlanes => "halfplane",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.name().eq_ignore_ascii_case(s))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenParams {
    pub family: Family,
    pub n: usize,
    pub m: usize,
    pub seed: u64,
    /// Width of the x-range per generated object; radii stay in a fixed
    /// range, so small values give dense overlapping instances.
    pub spread: f64,
}

impl GenParams {
    pub const DEFAULT_SPREAD: f64 = 0.25;

    pub fn new(family: Family, n: usize, m: usize, seed: u64) -> Self {
        GenParams { family, n, m, seed, spread: Self::DEFAULT_SPREAD }
    }

    pub fn with_spread(self, spread: f64) -> Self {
        GenParams { spread, ..self }
    }

    fn width(&self) -> f64 {
        (self.spread * (self.n + self.m) as f64).max(1.0)
    }
}

const R_MIN: f64 = 0.5;
const R_MAX: f64 = 2.5;
const SEPARABLE_R: f64 = 2.0;
const MAX_TRIES: usize = 10_000;
const RELATIVE_MARGIN: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
struct Key(f64);

impl Eq for Key {}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// x-values that must stay apart.
struct Critical {
    set: BTreeSet<Key>,
    margin: f64,
}

impl Critical {
    fn new(margin: f64) -> Self {
        Critical { set: BTreeSet::new(), margin }
    }

    fn clear(&self, x: f64) -> bool {
        self.set.range(Key(x - self.margin)..=Key(x + self.margin)).next().is_none()
    }

    /// Whether all of `xs` are clear of the set and of each other.
    fn all_clear(&self, xs: &[f64]) -> bool {
        let mut s: Vec<f64> = xs.to_vec();
        s.sort_by(f64::total_cmp);
        s.iter().all(|&x| self.clear(x)) && s.windows(2).all(|w| w[1] - w[0] > self.margin)
    }

    fn add(&mut self, xs: &[f64]) {
        self.set.extend(xs.iter().map(|&x| Key(x)));
    }
}

fn weight(rng: &mut ChaCha8Rng) -> f64 {
    rng.gen_range(1..=100) as f64
}

/// Places `n` points; `propose` samples a candidate and `accept` checks
/// coverage and boundary margins. Points also keep distinct x-coordinates.
fn place_points(
    rng: &mut ChaCha8Rng,
    n: usize,
    crit: &Critical,
    mut propose: impl FnMut(&mut ChaCha8Rng) -> (f64, f64),
    accept: impl Fn(f64, f64) -> bool,
) -> Result<Vec<PointP>> {
    let mut taken = Critical::new(crit.margin);
    let mut points = Vec::with_capacity(n);
    for id in 0..n {
        let mut placed = false;
        for _ in 0..MAX_TRIES {
            let (x, y) = propose(rng);
            if crit.clear(x) && taken.clear(x) && accept(x, y) {
                taken.add(&[x]);
                points.push(PointP::new(x, y, id));
                placed = true;
                break;
            }
        }
        if !placed {
            return Err(Error::GenerationFailure(id));
        }
    }
    Ok(points)
}

pub fn generate(params: &GenParams) -> Result<Problem> {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    if params.m == 0 && params.n > 0 {
        return Err(Error::GenerationFailure(0));
    }
    match params.family {
        Family::OneD => segments(params, &mut rng),
        Family::Unit => disks(params, Metric::Unit, &mut rng),
        Family::L1 => disks(params, Metric::L1, &mut rng),
        Family::L2 => disks(params, Metric::L2, &mut rng),
        Family::Linf => disks(params, Metric::Linf, &mut rng),
        Family::Separable => separable(params, &mut rng),
        Family::LowerHalfPlanes => half_planes(params, true, &mut rng),
        Family::HalfPlanes => half_planes(params, false, &mut rng),
    }
}

fn margin_for(width: f64, reach: f64) -> f64 {
    RELATIVE_MARGIN * width.max(reach).max(1.0)
}

fn segments(params: &GenParams, rng: &mut ChaCha8Rng) -> Result<Problem> {
    let width = params.width();
    let mut crit = Critical::new(margin_for(width, R_MAX));
    let mut segs = Vec::with_capacity(params.m);
    for k in 0..params.m {
        let seg = (0..MAX_TRIES)
            .map(|_| {
                let l = rng.gen_range(0.0..width);
                let len = rng.gen_range(2.0 * R_MIN..2.0 * R_MAX) * 0.5;
                (l, l + len)
            })
            .find(|&(l, r)| crit.all_clear(&[l, r]))
            .ok_or(Error::GenerationFailure(k))?;
        crit.add(&[seg.0, seg.1]);
        segs.push(WeightedSegment::new(seg.0, seg.1, weight(rng)));
    }
    let propose = |rng: &mut ChaCha8Rng| {
        let s = &segs[rng.gen_range(0..segs.len())];
        (rng.gen_range(s.l..=s.r), 0.0)
    };
    let points = place_points(rng, params.n, &crit, propose, |x, _| segs.iter().any(|s| s.covers(x)))?;
    Ok(Problem::Segments { points: points.iter().map(|p| p.x).collect(), segments: segs })
}

/// Distance-like value whose comparison with `r` decides coverage.
fn reach(metric: Metric, dx: f64, y: f64) -> f64 {
    match metric {
        Metric::L1 => dx.abs() + y,
        Metric::Linf => dx.abs().max(y),
        _ => (dx * dx + y * y).sqrt(),
    }
}

fn disks(params: &GenParams, metric: Metric, rng: &mut ChaCha8Rng) -> Result<Problem> {
    let width = params.width();
    let margin = margin_for(width, R_MAX);
    let mut crit = Critical::new(margin);
    let unit_r = 1.0;
    let rmax = if metric == Metric::Unit { unit_r } else { R_MAX };
    let mut by_center: BTreeMap<Key, usize> = BTreeMap::new();
    let mut out: Vec<Disk> = Vec::with_capacity(params.m);
    let circles = matches!(metric, Metric::L2 | Metric::Unit);
    for k in 0..params.m {
        let mut placed = false;
        for _ in 0..MAX_TRIES {
            let cx = rng.gen_range(0.0..width);
            let r = if metric == Metric::Unit { unit_r } else { rng.gen_range(R_MIN..R_MAX) };
            let mut xs = vec![cx - r, cx, cx + r];
            let mut ok = true;
            if circles {
                let me = Shape::Circle { cx, cy: 0.0, r };
                for (_, &j) in by_center.range(Key(cx - r - rmax)..=Key(cx + r + rmax)) {
                    let o = &out[j];
                    let d = (cx - o.cx).abs();
                    if (d - (r + o.r)).abs() <= margin || (d - (r - o.r).abs()).abs() <= margin {
                        ok = false;
                        break;
                    }
                    if let Some(x) = me.crossing(&Shape::Circle { cx: o.cx, cy: 0.0, r: o.r }) {
                        xs.push(x);
                    }
                }
            }
            if ok && crit.all_clear(&xs) {
                crit.add(&xs);
                by_center.insert(Key(cx), k);
                out.push(Disk::new(cx, r, weight(rng), k));
                placed = true;
                break;
            }
        }
        if !placed {
            return Err(Error::GenerationFailure(k));
        }
    }
    let near = |x: f64| by_center.range(Key(x - rmax)..=Key(x + rmax)).map(|(_, &j)| &out[j]);
    let propose = |rng: &mut ChaCha8Rng| {
        let d = &out[rng.gen_range(0..out.len())];
        (rng.gen_range(d.cx - d.r..=d.cx + d.r), rng.gen_range(0.0..=d.r))
    };
    let accept = |x: f64, y: f64| {
        let p = PointP::new(x, y, 0);
        let mut covered = false;
        for d in near(x) {
            if (reach(metric, x - d.cx, y) - d.r).abs() <= margin {
                return false;
            }
            covered |= covers(d, &p, metric);
        }
        covered
    };
    let points = place_points(rng, params.n, &crit, propose, accept)?;
    Ok(Problem::Disks { metric, points, disks: out })
}

fn separable(params: &GenParams, rng: &mut ChaCha8Rng) -> Result<Problem> {
    let width = params.width();
    let r = SEPARABLE_R;
    let margin = margin_for(width, r);
    let mut crit = Critical::new(margin);
    let mut by_center: BTreeMap<Key, usize> = BTreeMap::new();
    let mut out: Vec<CenteredDisk> = Vec::with_capacity(params.m);
    for k in 0..params.m {
        let mut placed = false;
        for _ in 0..MAX_TRIES {
            let cx = rng.gen_range(0.0..width);
            let cy = -rng.gen_range(0.1 * r..0.9 * r);
            let half = (r * r - cy * cy).sqrt();
            let mut xs = vec![cx - half, cx, cx + half];
            let me = Shape::Circle { cx, cy, r };
            let mut ok = true;
            for (_, &j) in by_center.range(Key(cx - 2.0 * r)..=Key(cx + 2.0 * r)) {
                let o = &out[j];
                let d = (cx - o.cx).hypot(cy - o.cy);
                if (d - 2.0 * r).abs() <= margin || d <= margin {
                    ok = false;
                    break;
                }
                if let Some(x) = me.crossing(&Shape::Circle { cx: o.cx, cy: o.cy, r }) {
                    xs.push(x);
                }
            }
            if ok && crit.all_clear(&xs) {
                crit.add(&xs);
                by_center.insert(Key(cx), k);
                out.push(CenteredDisk { cx, cy, r, w: weight(rng), id: k });
                placed = true;
                break;
            }
        }
        if !placed {
            return Err(Error::GenerationFailure(k));
        }
    }
    let propose = |rng: &mut ChaCha8Rng| {
        let d = &out[rng.gen_range(0..out.len())];
        (rng.gen_range(d.cx - r..=d.cx + r), rng.gen_range(0.0..=d.cy + r))
    };
    let accept = |x: f64, y: f64| {
        if y <= margin {
            return false;
        }
        let mut covered = false;
        for (_, &j) in by_center.range(Key(x - r)..=Key(x + r)) {
            let d = &out[j];
            if ((x - d.cx).hypot(y - d.cy) - r).abs() <= margin {
                return false;
            }
            covered |= d.covers(x, y);
        }
        covered
    };
    let points = place_points(rng, params.n, &crit, propose, accept)?;
    Ok(Problem::Separated(SeparatedInstance { points, disks: out, separator_y: 0.0 }))
}

fn half_planes(params: &GenParams, lower_only: bool, rng: &mut ChaCha8Rng) -> Result<Problem> {
    let width = params.width();
    let margin = margin_for(width, width);
    let mut crit = Critical::new(margin);
    let mut out: Vec<HalfPlane> = Vec::with_capacity(params.m);
    for k in 0..params.m {
        let mut placed = false;
        for _ in 0..MAX_TRIES {
            let theta = if lower_only {
                rng.gen_range(0.1..0.9) * std::f64::consts::PI
            } else {
                rng.gen_range(0.0..std::f64::consts::TAU)
            };
            let (b, a) = theta.sin_cos();
            if b.abs() < 1e-3 {
                continue;
            }
            let (qx, qy) = (rng.gen_range(0.0..width), rng.gen_range(0.0..width));
            let c = a * qx + b * qy;
            let me = Shape::Line { a, b, c };
            let mut xs = Vec::new();
            let mut ok = true;
            for o in &out {
                if (a * o.b - b * o.a).abs() < 1e-3 {
                    ok = false;
                    break;
                }
                xs.extend(me.crossing(&Shape::Line { a: o.a, b: o.b, c: o.c }));
            }
            if ok && crit.all_clear(&xs) {
                crit.add(&xs);
                out.push(HalfPlane::new(a, b, c, weight(rng), k));
                placed = true;
                break;
            }
        }
        if !placed {
            return Err(Error::GenerationFailure(k));
        }
    }
    let propose = |rng: &mut ChaCha8Rng| (rng.gen_range(0.0..width), rng.gen_range(0.0..width));
    let accept = |x: f64, y: f64| {
        let far = out.iter().all(|h| (h.a * x + h.b * y - h.c).abs() > margin);
        far && out.iter().any(|h| h.covers(x, y))
    };
    let points = place_points(rng, params.n, &crit, propose, accept)?;
    Ok(Problem::HalfPlanes { points, planes: out })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_per_seed() {
        for f in Family::ALL {
            let p = GenParams::new(f, 12, 8, 7);
            assert_eq!(generate(&p).unwrap(), generate(&p).unwrap(), "{}", f.name());
            assert_ne!(generate(&p).unwrap(), generate(&GenParams { seed: 8, ..p }).unwrap());
        }
    }

    #[test]
    fn generated_instances_are_feasible() {
        for f in Family::ALL {
            for seed in 0..5 {
                let p = generate(&GenParams::new(f, 15, 10, seed)).unwrap();
                assert_eq!((p.n(), p.m()), (15, 10));
                let (cm, _) = p.coverage();
                assert!(cm.is_cover(&(0..cm.m()).collect::<Vec<_>>()), "{} seed {seed}", f.name());
            }
        }
    }

    #[test]
    fn lower_family_is_lower() {
        let Problem::HalfPlanes { planes, .. } = generate(&GenParams::new(Family::LowerHalfPlanes, 5, 6, 1)).unwrap()
        else {
            panic!("wrong family")
        };
        assert!(planes.iter().all(HalfPlane::is_lower));
    }

    #[test]
    fn family_names_round_trip() {
        for f in Family::ALL {
            assert_eq!(Family::parse(f.name()), Some(f));
        }
    }
}
