//! Ways of locating the lowest ancestor with a W-link for a letter.
//!
//! `W_c(q)` is defined exactly when `q` is an ancestor-or-self of the suffix
//! node of some round `r` with `T[r + 1] = c` (round 0 being the root). The
//! walker climbs parent pointers and asks each node directly. The euler index
//! instead marks, for every round, the previous suffix node with the new
//! letter's colour, and answers the query as the deeper of the two lowest
//! common ancestors between the leaf and its preorder-adjacent marked nodes.
//! The Euler tour is kept in an AVL sequence of tokens: entering a node is
//! keyed by its string depth, leaving it by the string depth of the parent it
//! returns to. Every node visited between two enter tokens descends from
//! their LCA, so the LCA is the token of least string depth in that range.
//! String depths never change, but a split re-keys the exit token of the
//! node it displaced.

use std::cmp::Ordering;
use std::str::FromStr;

use super::seq::Seq;
use super::{Letter, NodeId, SuffixTree};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum StrategyKind {
    /// Parent-pointer walk. `O(height)` worst case, amortized constant.
    #[default]
    Walker,
    /// Balanced Euler-tour index. `O(log² n)` worst case per letter.
    EulerBalanced,
}

impl FromStr for StrategyKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "walker" => Ok(StrategyKind::Walker),
            "euler-balanced" | "euler" => Ok(StrategyKind::EulerBalanced),
            other => Err(format!("unknown strategy `{other}`")),
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) enum Strategy {
    Walker,
    Euler(Box<EulerIndex>),
}

impl Strategy {
    pub fn new(kind: StrategyKind) -> Self {
        match kind {
            StrategyKind::Walker => Strategy::Walker,
            StrategyKind::EulerBalanced => Strategy::Euler(Box::new(EulerIndex::new())),
        }
    }

    pub fn kind(&self) -> StrategyKind {
        match self {
            Strategy::Walker => StrategyKind::Walker,
            Strategy::Euler(_) => StrategyKind::EulerBalanced,
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct EulerIndex {
    tour: Seq,
    enter: Vec<u32>,
    exit: Vec<u32>,
    colours: Vec<Option<Seq>>,
}

const CLOSE: u32 = u32::MAX;

impl EulerIndex {
    fn new() -> Self {
        let mut tour = Seq::new();
        let open = tour.push_front(0, 0);
        let close = tour.insert_after(open, CLOSE, 0);
        EulerIndex {
            tour,
            enter: vec![open],
            exit: vec![close],
            colours: vec![None; 256],
        }
    }

    fn set_tokens(&mut self, node: NodeId, open: u32, close: u32) {
        let i = node.index();
        if self.enter.len() <= i {
            self.enter.resize(i + 1, u32::MAX);
            self.exit.resize(i + 1, u32::MAX);
        }
        self.enter[i] = open;
        self.exit[i] = close;
    }

    /// `gamma` (string depth `depth`) was inserted between `up` (string
    /// depth `up_depth`) and `beta`.
    pub fn on_split(&mut self, gamma: NodeId, beta: NodeId, depth: u32, up: NodeId, up_depth: u32) {
        let beta_exit = self.exit[beta.index()];
        let open = self.tour.insert_before(self.enter[beta.index()], depth, gamma.0);
        let close = self.tour.insert_after(beta_exit, up_depth, up.0);
        self.tour.set(beta_exit, depth, gamma.0);
        self.set_tokens(gamma, open, close);
    }

    /// `leaf` was attached below `parent`, right after `left_sibling`.
    pub fn on_leaf(
        &mut self,
        leaf: NodeId,
        parent: NodeId,
        left_sibling: Option<NodeId>,
        depth: u32,
        parent_depth: u32,
    ) {
        let anchor = match left_sibling {
            Some(s) => self.exit[s.index()],
            None => self.enter[parent.index()],
        };
        let open = self.tour.insert_after(anchor, depth, leaf.0);
        let close = self.tour.insert_after(open, parent_depth, parent.0);
        self.set_tokens(leaf, open, close);
    }

    /// Records that `node` is followed by letter `c` in the text.
    pub fn mark(&mut self, node: NodeId, c: Letter) {
        let EulerIndex {
            tour, enter, colours, ..
        } = self;
        let pos = tour.rank(enter[node.index()]);
        colours[c as usize]
            .get_or_insert_with(Seq::new)
            .insert_sorted(CLOSE, node.0, |p| pos.cmp(&tour.rank(enter[p as usize])));
    }

    fn lca(&self, a: usize, b: usize) -> NodeId {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let h = self.tour.argmin(lo, hi).expect("range holds at least one token");
        NodeId(self.tour.payload(h))
    }

    pub fn lowest_marked_ancestor(&self, tree: &SuffixTree, leaf: NodeId, c: Letter) -> (Option<NodeId>, usize) {
        let Some(marked) = &self.colours[c as usize] else {
            return (None, 1);
        };
        let pos = self.tour.rank(self.enter[leaf.index()]);
        let (pred, succ, steps) = marked.neighbours(|p| self.tour.rank(self.enter[p as usize]).cmp(&pos));
        let mut best: Option<NodeId> = None;
        for h in [pred, succ].into_iter().flatten() {
            let m = marked.payload(h) as usize;
            let other = self.tour.rank(self.enter[m]);
            let anc = self.lca(pos, other);
            let deeper = best.is_none_or(|b| tree.depth(anc).cmp(&tree.depth(b)) == Ordering::Greater);
            if deeper {
                best = Some(anc);
            }
        }
        (best, steps)
    }
}
