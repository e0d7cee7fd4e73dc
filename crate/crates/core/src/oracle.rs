//! Exhaustive reference answers for small inputs. Nothing here shares code
//! with the fast solvers beyond the coverage predicates.

use crate::couples::{CoupleKind, CoupleSet};
use crate::error::{Error, Result};
use crate::geom::{covers, Instance, PointP};
use crate::halfplane::{HalfPlane, SeparatedInstance};
use crate::reduce::AIndexTable;
use crate::solve1d::WeightedSegment;

/// Largest set count the exhaustive search accepts.
pub const MAX_SETS: usize = 24;

/// Which set covers which point, one bitset of points per set.
#[derive(Debug, Clone, PartialEq)]
pub struct CoverageMatrix {
    n: usize,
    sets: Vec<Vec<u64>>,
    weights: Vec<f64>,
}

impl CoverageMatrix {
    /// `covered(k, i)` tells whether set `k` covers point `i`.
    pub fn from_fn(n: usize, weights: Vec<f64>, covered: impl Fn(usize, usize) -> bool) -> Self {
        let words = n.div_ceil(64);
        let sets = (0..weights.len())
            .map(|k| {
                let mut bits = vec![0u64; words];
                for i in (0..n).filter(|&i| covered(k, i)) {
                    bits[i / 64] |= 1 << (i % 64);
                }
                bits
            })
            .collect();
        CoverageMatrix { n, sets, weights }
    }

    pub fn from_instance(inst: &Instance) -> Self {
        let w = inst.disks.iter().map(|d| d.w).collect();
        CoverageMatrix::from_fn(inst.n(), w, |k, i| covers(&inst.disks[k], &inst.points[i], inst.metric))
    }

    pub fn from_segments(points: &[f64], segments: &[WeightedSegment]) -> Self {
        let w = segments.iter().map(|s| s.w).collect();
        CoverageMatrix::from_fn(points.len(), w, |k, i| segments[k].covers(points[i]))
    }

    pub fn from_separated(inst: &SeparatedInstance) -> Self {
        let w = inst.disks.iter().map(|d| d.w).collect();
        CoverageMatrix::from_fn(inst.points.len(), w, |k, i| inst.disks[k].covers(inst.points[i].x, inst.points[i].y))
    }

    pub fn from_halfplanes(points: &[PointP], planes: &[HalfPlane]) -> Self {
        let w = planes.iter().map(|h| h.w).collect();
        CoverageMatrix::from_fn(points.len(), w, |k, i| planes[k].covers(points[i].x, points[i].y))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.sets.len()
    }

    pub fn covers(&self, k: usize, i: usize) -> bool {
        self.sets[k][i / 64] >> (i % 64) & 1 == 1
    }

    /// Whether the sets in `chosen` cover every point.
    pub fn is_cover(&self, chosen: &[usize]) -> bool {
        (0..self.n).all(|i| chosen.iter().any(|&k| self.covers(k, i)))
    }

    /// Sum of weights of `chosen`, added in ascending index order.
    pub fn weight_of(&self, chosen: &[usize]) -> f64 {
        let mut c = chosen.to_vec();
        c.sort_unstable();
        c.iter().map(|&k| self.weights[k]).sum()
    }
}

/// Minimum-weight cover by exhaustive search, `(weight, chosen set indices)`.
/// Ties go to the smallest subset bitmask.
pub fn brute_force_cover(cm: &CoverageMatrix) -> Result<(f64, Vec<usize>)> {
    let m = cm.m();
    if m > MAX_SETS {
        return Err(Error::TooLarge(m));
    }
    // last set able to cover each point, for pruning
    let mut last = vec![None; cm.n()];
    for (i, l) in last.iter_mut().enumerate() {
        *l = (0..m).rev().find(|&k| cm.covers(k, i));
        if l.is_none() {
            return Err(Error::Infeasible);
        }
    }
    struct Search<'a> {
        cm: &'a CoverageMatrix,
        last: Vec<Option<usize>>,
        best: Option<(f64, u32)>,
    }
    impl Search<'_> {
        fn go(&mut self, k: usize, mask: u32, weight: f64, covered: &mut Vec<u64>) {
            if let Some((bw, _)) = self.best {
                if weight > bw {
                    return;
                }
            }
            let uncovered = (0..self.cm.n()).find(|&i| covered[i / 64] >> (i % 64) & 1 == 0);
            let Some(i) = uncovered else {
                let better = match self.best {
                    None => true,
                    Some((bw, bm)) => weight < bw || (weight == bw && mask < bm),
                };
                if better {
                    self.best = Some((weight, mask));
                }
                return;
            };
            if k >= self.cm.m() || self.last[i].is_some_and(|l| l < k) {
                return;
            }
            let saved = covered.clone();
            for (c, s) in covered.iter_mut().zip(&self.cm.sets[k]) {
                *c |= s;
            }
            self.go(k + 1, mask | 1 << k, weight + self.cm.weights[k], covered);
            covered.copy_from_slice(&saved);
            self.go(k + 1, mask, weight, covered);
        }
    }
    let mut search = Search { cm, last, best: None };
    search.go(0, 0, 0.0, &mut vec![0; cm.n().div_ceil(64)]);
    let (w, mask) = search.best.ok_or(Error::Infeasible)?;
    Ok((w, (0..m).filter(|&k| mask >> k & 1 == 1).collect()))
}

/// Couples straight from the definition: for each disk, walk the point
/// indices from the last point before its extent to the first after it,
/// sentinels included, and pair consecutive points it does not cover.
pub fn oracle_couples(inst: &Instance) -> CoupleSet {
    let n = inst.n();
    let mut out = CoupleSet::new();
    for (k, d) in inst.disks.iter().enumerate() {
        let (lo, hi) = (d.cx - d.r, d.cx + d.r);
        let p_l = (0..=n + 1).filter(|&i| inst.x(i) < lo).max().unwrap_or(0);
        let p_r = (0..=n + 1).filter(|&i| inst.x(i) > hi).min().unwrap_or(n + 1);
        let missed: Vec<usize> =
            (p_l..=p_r).filter(|&i| i == p_l || i == p_r || !covers(d, &inst.points[i - 1], inst.metric)).collect();
        for w in missed.windows(2) {
            let (i, j) = (w[0], w[1]);
            let mut kind = CoupleKind::default();
            if i == p_l {
                kind = kind.union(CoupleKind::LEFT);
            }
            if j == p_r {
                kind = kind.union(CoupleKind::RIGHT);
            }
            if i != p_l && j != p_r {
                kind = CoupleKind::MIDDLE;
            }
            out.offer(i, j, kind, d.w, k);
        }
    }
    out
}

/// The a-indices by direct scan: `a_r` is the first point with `x >= cx`
/// the disk misses, `a_l` the last point with `x < cx` it misses.
pub fn oracle_a_indices(inst: &Instance) -> AIndexTable {
    let n = inst.n();
    let mut a_l = Vec::with_capacity(inst.m());
    let mut a_r = Vec::with_capacity(inst.m());
    for k in 0..inst.m() {
        let cx = inst.disks[k].cx;
        let missed = |i: usize| !inst.covers(k, i);
        a_r.push((1..=n).find(|&i| inst.x(i) >= cx && missed(i)).unwrap_or(n + 1));
        a_l.push((1..=n).rev().find(|&i| inst.x(i) < cx && missed(i)).unwrap_or(0));
    }
    AIndexTable { a_l, a_r }
}

/// A 1D instance whose optimum is `xs.len()` exactly when the values are
/// pairwise distinct: one unit-weight zero-length segment per value.
pub fn element_uniqueness_instance(xs: &[f64]) -> (Vec<f64>, Vec<WeightedSegment>) {
    let segments = xs.iter().enumerate().map(|(k, &x)| WeightedSegment::with_origin(x, x, 1.0, k)).collect();
    (xs.to_vec(), segments)
}
