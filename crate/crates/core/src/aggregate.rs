//! Ordered sets with a minimum-weight aggregate, supporting split and merge.
//!
//! All sets live in one [`Forest`] arena so that an item can be located (and
//! its owning set found) without knowing which set it is in. Sets are treaps
//! ordered by a comparator the caller supplies at each call: the forest never
//! compares items itself, which lets sweeps order entries by a key that
//! changes as the sweep line moves.
//!
//! Items are dense `usize` ids (disk positions, point indices, ...). An item
//! may be in at most one set at a time.

use crate::error::{Error, Result};

const NIL: u32 = u32::MAX;

/// Handle to one set in a [`Forest`]. The empty set is [`Tree::EMPTY`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Tree(u32);

impl Tree {
    pub const EMPTY: Tree = Tree(NIL);

    pub fn is_empty(self) -> bool {
        self.0 == NIL
    }
}

impl Default for Tree {
    fn default() -> Self {
        Tree::EMPTY
    }
}

#[derive(Debug, Clone)]
struct Node {
    item: usize,
    weight: f64,
    prio: u64,
    left: u32,
    right: u32,
    parent: u32,
    size: u32,
    best: (f64, usize),
}

/// Lexicographic minimum on `(weight, item)`, so ties resolve to the smaller id.
fn better(a: (f64, usize), b: (f64, usize)) -> (f64, usize) {
    match a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)) {
        std::cmp::Ordering::Greater => b,
        _ => a,
    }
}

#[derive(Debug, Clone, Default)]
pub struct Forest {
    nodes: Vec<Node>,
    node_of: Vec<u32>,
    free: Vec<u32>,
    seed: u64,
}

impl Forest {
    pub fn new() -> Self {
        Self::with_capacity(0)
    }

    pub fn with_capacity(items: usize) -> Self {
        Forest {
            nodes: Vec::with_capacity(items),
            node_of: vec![NIL; items],
            free: Vec::new(),
            seed: 0x9e37_79b9_7f4a_7c15,
        }
    }

    // splitmix64; treap priorities only need to look random, and a fixed
    // seed keeps runs reproducible.
    fn next_prio(&mut self) -> u64 {
        self.seed = self.seed.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.seed;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    fn alloc(&mut self, item: usize, weight: f64) -> u32 {
        if item >= self.node_of.len() {
            self.node_of.resize(item + 1, NIL);
        }
        assert_eq!(self.node_of[item], NIL, "item {item} is already in a set");
        let prio = self.next_prio();
        let node = Node { item, weight, prio, left: NIL, right: NIL, parent: NIL, size: 1, best: (weight, item) };
        let idx = match self.free.pop() {
            Some(i) => {
                self.nodes[i as usize] = node;
                i
            }
            None => {
                self.nodes.push(node);
                (self.nodes.len() - 1) as u32
            }
        };
        self.node_of[item] = idx;
        idx
    }

    fn n(&self, i: u32) -> &Node {
        &self.nodes[i as usize]
    }

    fn nm(&mut self, i: u32) -> &mut Node {
        &mut self.nodes[i as usize]
    }

    fn size_of(&self, i: u32) -> u32 {
        if i == NIL {
            0
        } else {
            self.n(i).size
        }
    }

    fn pull(&mut self, i: u32) {
        let (l, r) = (self.n(i).left, self.n(i).right);
        let mut best = (self.n(i).weight, self.n(i).item);
        let mut size = 1;
        if l != NIL {
            best = better(self.n(l).best, best);
            size += self.n(l).size;
        }
        if r != NIL {
            best = better(best, self.n(r).best);
            size += self.n(r).size;
        }
        let node = self.nm(i);
        node.best = best;
        node.size = size;
    }

    fn set_parent(&mut self, child: u32, parent: u32) {
        if child != NIL {
            self.nm(child).parent = parent;
        }
    }

    fn merge_nodes(&mut self, a: u32, b: u32) -> u32 {
        if a == NIL {
            return b;
        }
        if b == NIL {
            return a;
        }
        if self.n(a).prio > self.n(b).prio {
            let r = self.merge_nodes(self.n(a).right, b);
            self.nm(a).right = r;
            self.set_parent(r, a);
            self.pull(a);
            a
        } else {
            let l = self.merge_nodes(a, self.n(b).left);
            self.nm(b).left = l;
            self.set_parent(l, b);
            self.pull(b);
            b
        }
    }

    fn split_nodes<F: FnMut(usize) -> bool>(&mut self, t: u32, in_left: &mut F) -> (u32, u32) {
        if t == NIL {
            return (NIL, NIL);
        }
        if in_left(self.n(t).item) {
            let (a, b) = self.split_nodes(self.n(t).right, in_left);
            self.nm(t).right = a;
            self.set_parent(a, t);
            self.pull(t);
            (t, b)
        } else {
            let (a, b) = self.split_nodes(self.n(t).left, in_left);
            self.nm(t).left = b;
            self.set_parent(b, t);
            self.pull(t);
            (a, t)
        }
    }

    fn detach(&mut self, root: u32) -> Tree {
        self.set_parent(root, NIL);
        Tree(root)
    }

    /// Concatenates two sets. Every item of `left` must order before every
    /// item of `right`; this is not checked (see [`Forest::try_merge`]).
    pub fn merge(&mut self, left: Tree, right: Tree) -> Tree {
        let root = self.merge_nodes(left.0, right.0);
        self.detach(root)
    }

    /// [`Forest::merge`] that first checks the boundary items with `before`.
    pub fn try_merge<F>(&mut self, left: Tree, right: Tree, mut before: F) -> Result<Tree>
    where
        F: FnMut(usize, usize) -> bool,
    {
        if let (Some(a), Some(b)) = (self.last(left), self.first(right)) {
            if before(b, a) {
                return Err(Error::KeyOverlap);
            }
        }
        Ok(self.merge(left, right))
    }

    /// Splits `tree` into the longest prefix whose items satisfy `in_left`
    /// and the rest. `in_left` must be monotone along the order (true, then
    /// false).
    pub fn split_at<F: FnMut(usize) -> bool>(&mut self, tree: Tree, mut in_left: F) -> (Tree, Tree) {
        let (a, b) = self.split_nodes(tree.0, &mut in_left);
        (self.detach(a), self.detach(b))
    }

    /// Inserts `item` in front of the first existing item for which
    /// `goes_before(existing)` holds (at the end if there is none).
    pub fn insert<F: FnMut(usize) -> bool>(
        &mut self,
        tree: Tree,
        item: usize,
        weight: f64,
        mut goes_before: F,
    ) -> Tree {
        let (l, r) = self.split_at(tree, |e| !goes_before(e));
        let single = Tree(self.alloc(item, weight));
        let lm = self.merge(l, single);
        self.merge(lm, r)
    }

    /// Removes `item` from whatever set holds it and returns that set's new
    /// handle (possibly empty).
    pub fn remove(&mut self, item: usize) -> Tree {
        let x = self.node_of[item];
        assert_ne!(x, NIL, "item {item} is not in any set");
        let (l, r, p) = (self.n(x).left, self.n(x).right, self.n(x).parent);
        self.set_parent(l, NIL);
        self.set_parent(r, NIL);
        let c = self.merge_nodes(l, r);
        self.set_parent(c, p);
        let root = if p == NIL {
            c
        } else {
            if self.n(p).left == x {
                self.nm(p).left = c;
            } else {
                self.nm(p).right = c;
            }
            let mut cur = p;
            loop {
                self.pull(cur);
                let up = self.n(cur).parent;
                if up == NIL {
                    break cur;
                }
                cur = up;
            }
        };
        self.node_of[item] = NIL;
        self.free.push(x);
        Tree(root)
    }

    pub fn contains(&self, item: usize) -> bool {
        self.node_of.get(item).is_some_and(|&x| x != NIL)
    }

    pub fn weight(&self, item: usize) -> f64 {
        self.n(self.node_of[item]).weight
    }

    /// The set currently holding `item`, found by walking to the root.
    pub fn tree_of(&self, item: usize) -> Tree {
        let mut x = self.node_of[item];
        assert_ne!(x, NIL, "item {item} is not in any set");
        while self.n(x).parent != NIL {
            x = self.n(x).parent;
        }
        Tree(x)
    }

    /// Item stored at the root; a stable name for the set until its next
    /// structural change.
    pub fn root_item(&self, tree: Tree) -> Option<usize> {
        (!tree.is_empty()).then(|| self.n(tree.0).item)
    }

    pub fn len(&self, tree: Tree) -> usize {
        self.size_of(tree.0) as usize
    }

    pub fn first(&self, tree: Tree) -> Option<usize> {
        let mut x = tree.0;
        if x == NIL {
            return None;
        }
        while self.n(x).left != NIL {
            x = self.n(x).left;
        }
        Some(self.n(x).item)
    }

    pub fn last(&self, tree: Tree) -> Option<usize> {
        let mut x = tree.0;
        if x == NIL {
            return None;
        }
        while self.n(x).right != NIL {
            x = self.n(x).right;
        }
        Some(self.n(x).item)
    }

    /// In-order successor of `item` within its set.
    pub fn succ(&self, item: usize) -> Option<usize> {
        let mut x = self.node_of[item];
        if self.n(x).right != NIL {
            x = self.n(x).right;
            while self.n(x).left != NIL {
                x = self.n(x).left;
            }
            return Some(self.n(x).item);
        }
        loop {
            let p = self.n(x).parent;
            if p == NIL {
                return None;
            }
            if self.n(p).left == x {
                return Some(self.n(p).item);
            }
            x = p;
        }
    }

    /// In-order predecessor of `item` within its set.
    pub fn pred(&self, item: usize) -> Option<usize> {
        let mut x = self.node_of[item];
        if self.n(x).left != NIL {
            x = self.n(x).left;
            while self.n(x).right != NIL {
                x = self.n(x).right;
            }
            return Some(self.n(x).item);
        }
        loop {
            let p = self.n(x).parent;
            if p == NIL {
                return None;
            }
            if self.n(p).right == x {
                return Some(self.n(p).item);
            }
            x = p;
        }
    }

    /// Minimum `(weight, item)` over the whole set.
    pub fn aggregate(&self, tree: Tree) -> Option<(f64, usize)> {
        (!tree.is_empty()).then(|| self.n(tree.0).best)
    }

    /// Minimum `(weight, item)` over the longest prefix satisfying the
    /// monotone predicate `in_prefix`.
    pub fn min_weight_below<F: FnMut(usize) -> bool>(&self, tree: Tree, mut in_prefix: F) -> Option<(f64, usize)> {
        let mut best: Option<(f64, usize)> = None;
        let mut x = tree.0;
        while x != NIL {
            let node = self.n(x);
            if in_prefix(node.item) {
                let mut cand = (node.weight, node.item);
                if node.left != NIL {
                    cand = better(self.n(node.left).best, cand);
                }
                best = Some(match best {
                    Some(b) => better(b, cand),
                    None => cand,
                });
                x = node.right;
            } else {
                x = node.left;
            }
        }
        best
    }

    /// Exchanges two items that are neighbours in the same set.
    pub fn swap_adjacent(&mut self, a: usize, b: usize) -> Result<()> {
        if !self.contains(a) || !self.contains(b) {
            return Err(Error::NotAdjacent(a, b));
        }
        if self.succ(a) != Some(b) && self.succ(b) != Some(a) {
            return Err(Error::NotAdjacent(a, b));
        }
        let (xa, xb) = (self.node_of[a], self.node_of[b]);
        let (wa, wb) = (self.n(xa).weight, self.n(xb).weight);
        self.nm(xa).item = b;
        self.nm(xa).weight = wb;
        self.nm(xb).item = a;
        self.nm(xb).weight = wa;
        self.node_of[a] = xb;
        self.node_of[b] = xa;
        for start in [xa, xb] {
            let mut cur = start;
            while cur != NIL {
                self.pull(cur);
                cur = self.n(cur).parent;
            }
        }
        Ok(())
    }

    /// Items of `tree` in order.
    pub fn items(&self, tree: Tree) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len(tree));
        let mut stack = Vec::new();
        let mut x = tree.0;
        while x != NIL || !stack.is_empty() {
            while x != NIL {
                stack.push(x);
                x = self.n(x).left;
            }
            let top = stack.pop().unwrap();
            out.push(self.n(top).item);
            x = self.n(top).right;
        }
        out
    }

    /// Recomputes sizes, aggregates, parent links, the heap order and the
    /// item map for `tree` from scratch. Returns false on any mismatch.
    pub fn check_invariants(&self, tree: Tree) -> bool {
        if tree.is_empty() {
            return true;
        }
        if self.n(tree.0).parent != NIL {
            return false;
        }
        self.check_node(tree.0).is_some()
    }

    fn check_node(&self, x: u32) -> Option<(u32, (f64, usize))> {
        let node = self.n(x);
        if self.node_of.get(node.item) != Some(&x) {
            return None;
        }
        let mut size = 1;
        let mut best = (node.weight, node.item);
        for child in [node.left, node.right] {
            if child == NIL {
                continue;
            }
            let c = self.n(child);
            if c.parent != x || c.prio > node.prio {
                return None;
            }
            let (s, b) = self.check_node(child)?;
            size += s;
            best = better(best, b);
        }
        if size != node.size || best.0.to_bits() != node.best.0.to_bits() || best.1 != node.best.1 {
            return None;
        }
        Some((size, best))
    }
}
