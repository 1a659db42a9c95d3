//! Online suffix tree of the reversed text.
//!
//! Appending a letter `c` to `T[1..j]` prepends `c` to `reverse(T[1..j])`, so
//! every round introduces exactly one new (and longest) suffix. The tree is
//! updated Weiner-style: walk up from the previous round's suffix node to the
//! lowest ancestor `α` carrying a W-link for `c`, split the edge above the
//! link target when the link is soft, hang the new leaf below the insertion
//! point and repair the W-links along the two affected paths.
//!
//! There is no terminating sentinel. A suffix that is a prefix of a longer
//! suffix ends at a node of its own (the node carries a suffix-end round), so
//! suffix-end nodes may have children and every edge interior is strictly
//! inside non-branching, non-terminal territory.
//!
//! Edge labels are never stored. A node keeps its string depth and a witness
//! round `w` whose suffix passes through it; the letter at path depth `d` is
//! then `T[w - d + 1]`. The witness is the node's timestamp: the minimum
//! suffix-end round in its subtree, which is also the earliest end position
//! of an occurrence of `reverse(label)` in `T`.
//!
//! Soft W-link repairs (the two path walks after the split) can be applied
//! immediately or queued and drained at a fixed budget per round. Queued
//! writes stay visible to readers through a pending index, so queries never
//! observe a stale link while the stored links catch up.

mod seq;
mod strategy;
mod verify;

use std::collections::{BTreeMap, VecDeque};

use smallvec::SmallVec;

use crate::Error;

pub use strategy::StrategyKind;
pub use verify::Violation;

use strategy::Strategy;

/// Input letters are raw bytes.
pub type Letter = u8;

/// Arena index of a tree node. Stable for the lifetime of the tree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(u32);

impl NodeId {
    pub const ROOT: NodeId = NodeId(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

type LinkList = SmallVec<[(Letter, NodeId); 2]>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    parent: NodeId,
    depth: u32,
    stamp: u32,
    suffix_end: u32,
    children: LinkList,
    wlinks: LinkList,
}

impl Node {
    fn new(parent: NodeId, depth: u32, stamp: u32) -> Self {
        Node {
            parent,
            depth,
            stamp,
            suffix_end: 0,
            children: SmallVec::new(),
            wlinks: SmallVec::new(),
        }
    }

    /// The root is its own parent.
    pub fn parent(&self) -> NodeId {
        self.parent
    }

    pub fn string_depth(&self) -> usize {
        self.depth as usize
    }

    /// Minimum suffix-end round below this node (0 only for the root of an
    /// empty tree). Doubles as the witness used to read edge letters.
    pub fn timestamp(&self) -> usize {
        self.stamp as usize
    }

    /// Round whose full suffix ends exactly here.
    pub fn suffix_end(&self) -> Option<usize> {
        (self.suffix_end != 0).then_some(self.suffix_end as usize)
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    pub fn children(&self) -> impl Iterator<Item = (Letter, NodeId)> + '_ {
        self.children.iter().copied()
    }

    pub fn child(&self, c: Letter) -> Option<NodeId> {
        lookup(&self.children, c)
    }

    /// W-links as currently stored (pending deferred writes not applied).
    pub fn stored_wlinks(&self) -> impl Iterator<Item = (Letter, NodeId)> + '_ {
        self.wlinks.iter().copied()
    }
}

fn lookup(list: &LinkList, c: Letter) -> Option<NodeId> {
    list.binary_search_by_key(&c, |&(l, _)| l).ok().map(|i| list[i].1)
}

fn upsert(list: &mut LinkList, c: Letter, target: NodeId) {
    match list.binary_search_by_key(&c, |&(l, _)| l) {
        Ok(i) => list[i].1 = target,
        Err(i) => list.insert(i, (c, target)),
    }
}

/// A point in the tree: `above` letters above `lower` on its parent edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Locus {
    pub lower: NodeId,
    pub above: u32,
}

impl Locus {
    pub const ROOT: Locus = Locus {
        lower: NodeId::ROOT,
        above: 0,
    };

    pub fn at(node: NodeId) -> Self {
        Locus { lower: node, above: 0 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Eager,
    /// Soft W-link writes are queued and at most `budget` queue entries are
    /// processed per round.
    Deamortized {
        budget: usize,
    },
}

/// Shortest suffix of the new prefix occurring exactly twice, given by its
/// length and the end position of its earlier occurrence.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ssuf {
    pub len: usize,
    pub prev_end: usize,
}

/// One node as captured by [`SuffixTree::snapshot`]: parent, string depth,
/// timestamp, suffix end, children and W-links.
pub type NodeSnapshot = (
    NodeId,
    usize,
    usize,
    Option<usize>,
    Vec<(Letter, NodeId)>,
    Vec<(Letter, NodeId)>,
);

/// Work performed by one round.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RoundWork {
    /// Nodes (walker) or balanced-tree steps (euler) spent locating `α`.
    pub visited: usize,
    /// Hard W-links written (one or two per round).
    pub hard_writes: usize,
    /// W-links copied onto a freshly split node.
    pub copied: usize,
    /// Soft W-link writes applied to the stored links this round.
    pub soft_writes: usize,
    /// Queued soft writes dropped because a newer write replaced them.
    pub discarded: usize,
    /// Soft writes generated this round (applied now or queued).
    pub soft_generated: usize,
    /// Deferred queue length at the end of the round.
    pub queue_len: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpdateReport {
    pub round: usize,
    /// Length of the longest suffix of `T[1..round]` occurring earlier.
    pub lrs: usize,
    /// Node at the insertion point after the update.
    pub insertion_node: NodeId,
    pub created_internal: Option<NodeId>,
    /// The node whose parent edge was split, when `created_internal` is set.
    pub split_child: Option<NodeId>,
    pub new_leaf: NodeId,
    pub insertion_point_timestamp: usize,
    pub ssuf: Option<Ssuf>,
    pub work: RoundWork,
}

#[derive(Clone, Debug)]
struct PendingWrite {
    node: NodeId,
    letter: Letter,
    seq: u64,
}

#[derive(Clone, Debug, Default)]
struct Deferred {
    queue: VecDeque<PendingWrite>,
    latest: BTreeMap<(NodeId, Letter), (NodeId, u64)>,
    next_seq: u64,
}

#[derive(Clone, Debug)]
pub struct SuffixTree {
    text: Vec<Letter>,
    nodes: Vec<Node>,
    last: NodeId,
    mode: Mode,
    deferred: Deferred,
    strategy: Strategy,
}

impl SuffixTree {
    pub fn new(mode: Mode, strategy: StrategyKind) -> Result<Self, Error> {
        if let Mode::Deamortized { budget } = mode {
            if budget < 2 {
                return Err(Error::Budget(budget));
            }
        }
        Ok(SuffixTree {
            text: Vec::new(),
            nodes: vec![Node::new(NodeId::ROOT, 0, 0)],
            last: NodeId::ROOT,
            mode,
            deferred: Deferred::default(),
            strategy: Strategy::new(strategy),
        })
    }

    /// Eager tree with the walker strategy.
    pub fn eager() -> Self {
        Self::new(Mode::Eager, StrategyKind::Walker).expect("eager mode has no budget")
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn strategy(&self) -> StrategyKind {
        self.strategy.kind()
    }

    pub fn text(&self) -> &[Letter] {
        &self.text
    }

    /// Number of letters processed so far.
    pub fn len(&self) -> usize {
        self.text.len()
    }

    pub fn is_empty(&self) -> bool {
        self.text.is_empty()
    }

    pub fn node(&self, id: NodeId) -> &Node {
        &self.nodes[id.index()]
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Suffix-end node of the latest round (the root before any input).
    pub fn last_leaf(&self) -> NodeId {
        self.last
    }

    pub fn pending_writes(&self) -> usize {
        self.deferred.queue.len()
    }

    /// Letter at path depth `d` (1-based) on the way to `v`.
    fn letter_at(&self, v: NodeId, d: u32) -> Letter {
        let w = self.nodes[v.index()].stamp;
        self.text[(w - d) as usize]
    }

    fn depth(&self, v: NodeId) -> u32 {
        self.nodes[v.index()].depth
    }

    fn parent(&self, v: NodeId) -> NodeId {
        self.nodes[v.index()].parent
    }

    /// Current W-link `W_c(v)`, including writes still waiting in the queue.
    pub fn wlink(&self, v: NodeId, c: Letter) -> Option<NodeId> {
        if !self.deferred.latest.is_empty() {
            if let Some(&(target, _)) = self.deferred.latest.get(&(v, c)) {
                return Some(target);
            }
        }
        lookup(&self.nodes[v.index()].wlinks, c)
    }

    /// All current W-links of `v` in letter order, pending writes included.
    pub fn wlinks(&self, v: NodeId) -> Vec<(Letter, NodeId)> {
        let mut out: Vec<(Letter, NodeId)> = self.nodes[v.index()].wlinks.to_vec();
        if !self.deferred.latest.is_empty() {
            let range = self.deferred.latest.range((v, 0)..=(v, Letter::MAX));
            for (&(_, c), &(target, _)) in range {
                match out.binary_search_by_key(&c, |&(l, _)| l) {
                    Ok(i) => out[i].1 = target,
                    Err(i) => out.insert(i, (c, target)),
                }
            }
        }
        out
    }

    /// A W-link is hard when its target is exactly the locus of `c·label(v)`.
    pub fn is_hard(&self, v: NodeId, target: NodeId) -> bool {
        self.depth(target) == self.depth(v) + 1
    }

    fn store_wlink(&mut self, v: NodeId, c: Letter, target: NodeId) {
        upsert(&mut self.nodes[v.index()].wlinks, c, target);
    }

    fn write_hard(&mut self, v: NodeId, c: Letter, target: NodeId) {
        if !self.deferred.latest.is_empty() {
            self.deferred.latest.remove(&(v, c));
        }
        self.store_wlink(v, c, target);
    }

    /// Deepest ancestor of `leaf` (inclusive) carrying a W-link for `c`, with
    /// its hardness. `None` means `c` has not occurred yet.
    pub fn lowest_wlink_ancestor(&self, leaf: NodeId, c: Letter) -> Option<(NodeId, bool)> {
        let (alpha, _) = self.find_alpha(leaf, c);
        alpha.map(|a| {
            let target = self.wlink(a, c).expect("located ancestor carries the link");
            (a, self.is_hard(a, target))
        })
    }

    fn find_alpha(&self, leaf: NodeId, c: Letter) -> (Option<NodeId>, usize) {
        match &self.strategy {
            Strategy::Walker => {
                let mut q = leaf;
                let mut visited = 0;
                loop {
                    visited += 1;
                    if self.wlink(q, c).is_some() {
                        return (Some(q), visited);
                    }
                    if q == NodeId::ROOT {
                        return (None, visited);
                    }
                    q = self.parent(q);
                }
            }
            Strategy::Euler(index) => index.lowest_marked_ancestor(self, leaf, c),
        }
    }

    /// Appends `c` to the text and updates the tree.
    pub fn push_letter(&mut self, c: Letter) -> UpdateReport {
        self.text.push(c);
        let round = self.text.len() as u32;
        let prev = self.last;
        let mut work = RoundWork::default();

        // Step 1: lowest ancestor with a W-link for c.
        let (alpha, visited) = self.find_alpha(prev, c);
        work.visited = visited;

        // Step 2: insertion point, splitting the edge above a soft target.
        let (ins, created, beta) = match alpha {
            None => (NodeId::ROOT, None, None),
            Some(a) => {
                let beta = self.wlink(a, c).expect("located ancestor carries the link");
                if self.is_hard(a, beta) {
                    (beta, None, Some(beta))
                } else {
                    let gamma = self.split(beta, self.depth(a) + 1, &mut work);
                    (gamma, Some(gamma), Some(beta))
                }
            }
        };

        // Nodes strictly between prev and α (up to the root when α is absent),
        // collected bottom-up after the split: γ lies on this path when prev
        // is below β.
        let mut lower_path = Vec::new();
        if prev != NodeId::ROOT {
            let mut q = self.parent(prev);
            loop {
                if Some(q) == alpha {
                    break;
                }
                lower_path.push(q);
                if q == NodeId::ROOT {
                    break;
                }
                q = self.parent(q);
            }
        }

        let ssuf = match beta {
            Some(b) if self.nodes[b.index()].children.is_empty() => Some(Ssuf {
                len: self.depth(self.parent(ins)) as usize + 1,
                prev_end: self.nodes[b.index()].suffix_end as usize,
            }),
            _ => None,
        };
        let insertion_point_timestamp = self.nodes[ins.index()].stamp as usize;

        // Step 3: the new leaf.
        let leaf = NodeId(self.nodes.len() as u32);
        let mut leaf_node = Node::new(ins, round, round);
        leaf_node.suffix_end = round;
        self.nodes.push(leaf_node);
        let branch = self.text[(round - self.depth(ins) - 1) as usize];
        let children = &mut self.nodes[ins.index()].children;
        let slot = children
            .binary_search_by_key(&branch, |&(l, _)| l)
            .expect_err("insertion point has no child for the new branch letter");
        let left_sibling = slot.checked_sub(1).map(|i| children[i].1);
        children.insert(slot, (branch, leaf));
        if round == 1 {
            self.nodes[0].stamp = 1;
        }

        let split = created.map(|g| {
            let up = self.parent(g);
            (g, self.depth(g), up, self.depth(up))
        });
        let ins_depth = self.depth(ins);
        if let Strategy::Euler(index) = &mut self.strategy {
            if let (Some((gamma, depth, up, up_depth)), Some(b)) = (split, beta) {
                index.on_split(gamma, b, depth, up, up_depth);
            }
            index.on_leaf(leaf, ins, left_sibling, round, ins_depth);
            index.mark(prev, c);
        }

        // Steps 4 and 5: hard links now, soft links eagerly or queued.
        self.write_hard(prev, c, leaf);
        work.hard_writes += 1;
        let mut upper_path = Vec::new();
        if let (Some(gamma), Some(a), Some(b)) = (created, alpha, beta) {
            self.write_hard(a, c, gamma);
            work.hard_writes += 1;
            let mut q = a;
            while q != NodeId::ROOT {
                q = self.parent(q);
                if self.wlink(q, c) != Some(b) {
                    break;
                }
                upper_path.push(q);
            }
        }
        let batch: Vec<(NodeId, NodeId)> = upper_path
            .iter()
            .rev()
            .map(|&q| (q, created.unwrap()))
            .chain(lower_path.iter().rev().map(|&q| (q, leaf)))
            .collect();
        work.soft_generated = batch.len();
        match self.mode {
            Mode::Eager => {
                for (q, target) in batch {
                    self.store_wlink(q, c, target);
                }
                work.soft_writes = work.soft_generated;
            }
            Mode::Deamortized { budget } => {
                for (q, target) in batch {
                    self.enqueue(q, c, target);
                }
                let (applied, discarded) = self.drain(budget);
                work.soft_writes = applied;
                work.discarded = discarded;
            }
        }
        work.queue_len = self.deferred.queue.len();

        self.last = leaf;
        UpdateReport {
            round: round as usize,
            lrs: self.depth(ins) as usize,
            insertion_node: ins,
            created_internal: created,
            split_child: created.and(beta),
            new_leaf: leaf,
            insertion_point_timestamp,
            ssuf,
            work,
        }
    }

    /// Creates a node at string depth `depth` on the parent edge of `beta`.
    fn split(&mut self, beta: NodeId, depth: u32, work: &mut RoundWork) -> NodeId {
        let up = self.parent(beta);
        let gamma = NodeId(self.nodes.len() as u32);
        let stamp = self.nodes[beta.index()].stamp;
        let mut node = Node::new(up, depth, stamp);
        node.children.push((self.letter_at(beta, depth + 1), beta));
        node.wlinks = self.wlinks(beta).into_iter().collect();
        work.copied = node.wlinks.len();
        self.nodes.push(node);

        let first = self.letter_at(beta, self.depth(up) + 1);
        upsert(&mut self.nodes[up.index()].children, first, gamma);
        self.nodes[beta.index()].parent = gamma;
        gamma
    }

    fn enqueue(&mut self, node: NodeId, letter: Letter, target: NodeId) {
        let seq = self.deferred.next_seq;
        self.deferred.next_seq += 1;
        self.deferred.latest.insert((node, letter), (target, seq));
        self.deferred.queue.push_back(PendingWrite { node, letter, seq });
    }

    /// Processes up to `budget` queued writes; returns (applied, discarded).
    fn drain(&mut self, budget: usize) -> (usize, usize) {
        let mut applied = 0;
        let mut discarded = 0;
        while applied + discarded < budget {
            let Some(w) = self.deferred.queue.pop_front() else {
                break;
            };
            let key = (w.node, w.letter);
            match self.deferred.latest.get(&key) {
                Some(&(target, seq)) if seq == w.seq => {
                    self.deferred.latest.remove(&key);
                    self.store_wlink(w.node, w.letter, target);
                    applied += 1;
                }
                _ => discarded += 1,
            }
        }
        (applied, discarded)
    }

    /// Applies up to `budget` pending soft W-link writes in queue order and
    /// returns how many were applied. Superseded entries are dropped and count
    /// against the budget.
    pub fn drain_deferred(&mut self, budget: usize) -> usize {
        self.drain(budget).0
    }

    /// Flushes the whole deferred queue.
    pub fn drain_all(&mut self) -> usize {
        let n = self.deferred.queue.len();
        self.drain(n).0
    }

    /// Locus of `label(locus)·c`, provided `reverse(label·c)` occurs within
    /// `T[1..min_end]`.
    pub fn descend(&self, locus: Locus, c: Letter, min_end: usize) -> Option<Locus> {
        let v = locus.lower;
        let len = self.depth(v) - locus.above;
        let next = if locus.above > 0 {
            if self.letter_at(v, len + 1) != c {
                return None;
            }
            Locus {
                lower: v,
                above: locus.above - 1,
            }
        } else {
            let child = self.nodes[v.index()].child(c)?;
            Locus {
                lower: child,
                above: self.depth(child) - len - 1,
            }
        };
        (self.nodes[next.lower.index()].stamp as usize <= min_end).then_some(next)
    }

    /// Earliest end position in `T` of an occurrence of `reverse(label)`.
    pub fn locus_timestamp(&self, locus: Locus) -> usize {
        self.nodes[locus.lower.index()].stamp as usize
    }

    /// String depth of a locus.
    pub fn locus_depth(&self, locus: Locus) -> usize {
        (self.depth(locus.lower) - locus.above) as usize
    }

    /// Re-expresses `locus` after the update described by `report`; only a
    /// locus on the edge that was split can change.
    pub fn renormalize(&self, locus: Locus, report: &UpdateReport) -> Locus {
        match (report.created_internal, report.split_child) {
            (Some(gamma), Some(beta)) if locus.lower == beta => {
                let len = self.depth(beta) - locus.above;
                let cut = self.depth(gamma);
                if len <= cut {
                    Locus {
                        lower: gamma,
                        above: cut - len,
                    }
                } else {
                    locus
                }
            }
            _ => locus,
        }
    }

    /// Number of edges on the longest root-to-leaf path.
    pub fn height(&self) -> usize {
        let mut best = 0;
        let mut stack = vec![(NodeId::ROOT, 0usize)];
        while let Some((v, h)) = stack.pop() {
            best = best.max(h);
            for (_, ch) in self.nodes[v.index()].children() {
                stack.push((ch, h + 1));
            }
        }
        best
    }

    /// Structural copy with W-links resolved through the pending queue, for
    /// comparing trees built under different modes or strategies.
    pub fn snapshot(&self) -> Vec<NodeSnapshot> {
        (0..self.nodes.len())
            .map(|i| {
                let id = NodeId(i as u32);
                let n = &self.nodes[i];
                (
                    n.parent,
                    n.string_depth(),
                    n.timestamp(),
                    n.suffix_end(),
                    n.children().collect(),
                    self.wlinks(id),
                )
            })
            .collect()
    }

    #[cfg(test)]
    pub(crate) fn set_stored_wlink(&mut self, v: NodeId, c: Letter, target: NodeId) {
        self.store_wlink(v, c, target);
    }
}
