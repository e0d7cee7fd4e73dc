//! Bounding couples for circular disks (and, through the same code, for any
//! family of x-monotone boundaries crossing pairwise at most once).
//!
//! Arcs change vertical order where they cross, so the sweep keeps one
//! status tree of all alive arcs and schedules crossings between neighbours
//! in it, Bentley–Ottmann style. The per-point sets are trees ordered the
//! same way; a second tree over the active points, keyed by the lowest arc
//! of each point's set, finds the sets a new point lies above without
//! touching the others.
//!
//! When the pieces taken from several sets are stacked into the new point's
//! set, a piece whose lowest arc sits below the top of what is already
//! stacked is an order violation; its arcs are moved one at a time. Each
//! violation involves a pair of intersecting disks, so the extra work is
//! bounded by the number of such pairs.

use std::cmp::Ordering;

use crate::aggregate::{Forest, Tree};
use crate::couples::{CoupleKind, CoupleSet};
use crate::curves::{CurveInstance, Shape};
use crate::geom::{Disk, Instance, Metric};
use crate::solution::{Stats, SweepConfig};
use crate::sweep::{left_right_couples, Event, EventQueue};

/// x-coordinate where the upper arcs of two axis-centered disks cross
/// above the axis, if they do.
pub fn arc_crossing(a: &Disk, b: &Disk) -> Option<f64> {
    let sa = Shape::Circle { cx: a.cx, cy: 0.0, r: a.r };
    let sb = Shape::Circle { cx: b.cx, cy: 0.0, r: b.r };
    let x = sa.crossing(&sb)?;
    (a.left() < x && x < a.right() && b.left() < x && x < b.right()).then_some(x)
}

struct State<'a> {
    ci: &'a CurveInstance,
    queue: EventQueue,
    /// Every alive arc, bottom to top.
    status_forest: Forest,
    status: Tree,
    /// Per-point sets; set 0 is the pool of arcs under no active point.
    forest: Forest,
    sets: Vec<Tree>,
    owner: Vec<usize>,
    /// Active points ordered by the lowest arc of their set.
    lowest_forest: Forest,
    lowest: Tree,
    active: Vec<bool>,
    alive: Vec<bool>,
    done: usize,
    out: CoupleSet,
    stats: Stats,
    audits: bool,
}

impl<'a> State<'a> {
    fn new(ci: &'a CurveInstance, cfg: SweepConfig) -> Self {
        State {
            ci,
            queue: EventQueue::new(ci),
            status_forest: Forest::with_capacity(ci.m()),
            status: Tree::EMPTY,
            forest: Forest::with_capacity(ci.m()),
            sets: vec![Tree::EMPTY; ci.n() + 1],
            owner: vec![0; ci.m()],
            lowest_forest: Forest::with_capacity(ci.n() + 1),
            lowest: Tree::EMPTY,
            active: vec![false; ci.n() + 1],
            alive: vec![false; ci.m()],
            done: 0,
            out: CoupleSet::new(),
            stats: Stats::default(),
            audits: cfg.audits,
        }
    }

    fn store(&mut self, set: usize, tree: Tree) {
        self.sets[set] = tree;
        if let Some(r) = self.forest.root_item(tree) {
            self.owner[r] = set;
        }
    }

    fn set_of(&self, k: usize) -> usize {
        let root = self.forest.tree_of(k);
        self.owner[self.forest.root_item(root).unwrap()]
    }

    fn insert_arc(&mut self, tree: Tree, k: usize, x: f64) -> Tree {
        let ci = self.ci;
        self.forest.insert(tree, k, ci.curves[k].w, |e| ci.cmp_at(k, e, x) == Ordering::Less)
    }

    fn insert_lowest(&mut self, set: usize, x: f64) {
        let ci = self.ci;
        let (forest, sets) = (&self.forest, &self.sets);
        let mine = forest.first(sets[set]).unwrap();
        self.lowest = self.lowest_forest.insert(self.lowest, set, 0.0, |e| {
            let theirs = forest.first(sets[e]).unwrap();
            ci.cmp_at(mine, theirs, x) == Ordering::Less
        });
    }

    fn fail(&mut self) {
        self.stats.audit_failures += 1;
    }

    fn start(&mut self, k: usize, x: f64) {
        let ci = self.ci;
        self.alive[k] = true;
        self.status = self.status_forest.insert(self.status, k, 0.0, |e| ci.cmp_at(k, e, x) == Ordering::Less);
        self.queue.watch_neighbours(ci, &self.status_forest, k);
        let pool = self.insert_arc(self.sets[0], k, x);
        self.store(0, pool);
    }

    fn cross(&mut self, a: usize, b: usize) {
        if !(self.alive[a] && self.alive[b]) {
            return;
        }
        let ci = self.ci;
        if self.audits {
            self.stats.audit_checks += 1;
        }
        if self.status_forest.swap_adjacent(a, b).is_err() {
            self.fail();
            return;
        }
        let (lo, hi) = if self.status_forest.succ(b) == Some(a) { (b, a) } else { (a, b) };
        if let Some(p) = self.status_forest.pred(lo) {
            self.queue.watch(ci, p, lo);
        }
        if let Some(s) = self.status_forest.succ(hi) {
            self.queue.watch(ci, hi, s);
        }

        let (sa, sb) = (self.set_of(a), self.set_of(b));
        if sa == sb {
            if self.forest.swap_adjacent(a, b).is_err() {
                self.fail();
            }
            self.store(sa, self.sets[sa]);
        } else if sa > 0
            && sb > 0
            && self.forest.first(self.sets[sa]) == Some(a)
            && self.forest.first(self.sets[sb]) == Some(b)
            && self.lowest_forest.swap_adjacent(sa, sb).is_err()
        {
            self.fail();
        }
    }

    fn point(&mut self, h: usize, x: f64) {
        let ci = self.ci;
        let p = *ci.point(h);
        let mut pieces: Vec<(usize, Tree)> = Vec::new();

        // Sets whose lowest arc is under p, lowest first. Each loses the
        // arcs under p; a set left empty makes its point inactive.
        while let Some(set) = self.lowest_forest.first(self.lowest) {
            let k = self.forest.first(self.sets[set]).unwrap();
            if ci.curves[k].shape.covers_point(&p) {
                break;
            }
            if pieces.iter().any(|&(s, _)| s == set) {
                // a set reported twice in one event means the lowest-arc
                // order is broken
                self.fail();
                break;
            }
            let (under, rest) = self.forest.split_at(self.sets[set], |k| !ci.curves[k].shape.covers_point(&p));
            let agg = self.forest.aggregate(under).unwrap();
            self.out.offer(set, h, CoupleKind::MIDDLE, agg.0, agg.1);
            self.stats.middle_reports += 1;
            self.lowest = self.lowest_forest.remove(set);
            self.store(set, rest);
            if rest.is_empty() {
                self.active[set] = false;
                self.stats.pl_removals += 1;
            } else {
                self.insert_lowest(set, x);
            }
            pieces.push((set, under));
        }

        // Stack the pieces from the rightmost point leftwards.
        pieces.sort_unstable_by_key(|p| std::cmp::Reverse(p.0));
        let mut built = Tree::EMPTY;
        for (_, mut piece) in pieces {
            while let Some(bottom) = self.forest.first(piece) {
                let Some(top) = self.forest.last(built) else {
                    built = piece;
                    break;
                };
                if ci.cmp_at(bottom, top, x) == Ordering::Greater {
                    built = self.forest.merge(built, piece);
                    break;
                }
                self.stats.order_violations += 1;
                piece = self.forest.remove(bottom);
                built = self.insert_arc(built, bottom, x);
            }
        }

        // Arcs from the pool that p lies above, lowest first.
        while let Some(k) = self.forest.first(self.sets[0]) {
            if ci.curves[k].shape.covers_point(&p) {
                break;
            }
            let pool = self.forest.remove(k);
            self.store(0, pool);
            built = self.insert_arc(built, k, x);
            self.stats.drained += 1;
        }

        if !built.is_empty() {
            self.store(h, built);
            self.active[h] = true;
            self.insert_lowest(h, x);
        }
        self.done = h;
    }

    fn end(&mut self, k: usize, x: f64) {
        let ci = self.ci;
        self.alive[k] = false;
        let (p, s) = (self.status_forest.pred(k), self.status_forest.succ(k));
        self.status = self.status_forest.remove(k);
        if let (Some(p), Some(s)) = (p, s) {
            self.queue.watch(ci, p, s);
        }

        let set = self.set_of(k);
        let was_lowest = self.forest.first(self.sets[set]) == Some(k);
        if set > 0 && was_lowest {
            self.lowest = self.lowest_forest.remove(set);
        }
        let rest = self.forest.remove(k);
        self.store(set, rest);
        if set > 0 {
            if rest.is_empty() {
                self.active[set] = false;
                self.stats.pl_removals += 1;
            } else if was_lowest {
                self.insert_lowest(set, x);
            }
        }
    }

    fn audit(&mut self, x: f64) {
        self.stats.audit_checks += 1;
        if !self.audit_ok(x) {
            self.fail();
        }
    }

    fn sorted_at(&self, items: &[usize], x: f64) -> bool {
        items.windows(2).all(|w| self.ci.cmp_at(w[0], w[1], x) != Ordering::Greater)
    }

    fn audit_ok(&self, x: f64) -> bool {
        let ci = self.ci;
        if !self.status_forest.check_invariants(self.status) {
            return false;
        }
        let all = self.status_forest.items(self.status);
        if !self.sorted_at(&all, x) || all.len() != self.alive.iter().filter(|&&a| a).count() {
            return false;
        }

        let mut seen = vec![false; ci.m()];
        for (set, &tree) in self.sets.iter().enumerate() {
            if set > 0 && self.active[set] == tree.is_empty() {
                return false;
            }
            if tree.is_empty() {
                continue;
            }
            if !self.forest.check_invariants(tree) || self.owner[self.forest.root_item(tree).unwrap()] != set {
                return false;
            }
            let items = self.forest.items(tree);
            if !self.sorted_at(&items, x) {
                return false;
            }
            for &k in &items {
                if seen[k] || !self.alive[k] {
                    return false;
                }
                seen[k] = true;
                if set > 0 && ci.covers(k, set) {
                    return false;
                }
                let from = if set > 0 { set + 1 } else { ci.p_l[k] + 1 };
                if (from..=self.done).any(|q| !ci.covers(k, q)) {
                    return false;
                }
            }
        }
        if (0..ci.m()).any(|k| self.alive[k] != seen[k]) {
            return false;
        }

        if !self.lowest_forest.check_invariants(self.lowest) {
            return false;
        }
        let order = self.lowest_forest.items(self.lowest);
        let expected = (1..self.active.len()).filter(|&i| self.active[i]).count();
        if order.len() != expected || order.iter().any(|&s| !self.active[s]) {
            return false;
        }
        let bottoms: Vec<usize> = order.iter().map(|&s| self.forest.first(self.sets[s]).unwrap()).collect();
        self.sorted_at(&bottoms, x)
    }
}

/// Middle couples of a curve instance whose boundaries cross pairwise at
/// most once.
pub fn middle_couples_curves(ci: &CurveInstance, cfg: SweepConfig) -> (CoupleSet, Stats) {
    let mut st = State::new(ci, cfg);
    while let Some((x, ev)) = st.queue.pop() {
        match ev {
            Event::Start(k) => st.start(k, x),
            Event::Cross(a, b) => st.cross(a, b),
            Event::Point(h) => st.point(h, x),
            Event::End(k) => st.end(k, x),
        }
        if st.audits {
            st.audit(x);
        }
    }
    st.stats.events += st.queue.processed;
    (st.out, st.stats)
}

fn expect_l2(inst: &Instance) {
    assert!(matches!(inst.metric, Metric::L2 | Metric::Unit), "L2 sweep on a {} instance", inst.metric);
}

/// Left and right couples of an L2 instance.
pub fn left_right_couples_l2(inst: &Instance) -> CoupleSet {
    expect_l2(inst);
    left_right_couples(&CurveInstance::from_instance(inst), SweepConfig::default()).0
}

/// Middle couples of an L2 instance, with the sweep counters.
pub fn middle_couples_l2(inst: &Instance) -> (CoupleSet, Stats) {
    expect_l2(inst);
    middle_couples_curves(&CurveInstance::from_instance(inst), SweepConfig::default())
}
