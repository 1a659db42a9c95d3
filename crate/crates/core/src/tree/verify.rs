//! Full-traversal consistency checks.
//!
//! Cost is `O(n · height)`; meant for tests and diagnostics, not hot paths.

use std::fmt;

use super::{Letter, Mode, NodeId, SuffixTree};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub node: NodeId,
    pub what: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "node {}: {}", self.node.index(), self.what)
    }
}

impl SuffixTree {
    /// 1-based text slice `T[from..=to]`.
    fn span(&self, from: u32, to: u32) -> &[Letter] {
        &self.text[(from - 1) as usize..to as usize]
    }

    /// Whether the first `len` letters of `label(v)` spell `label(u)` shifted
    /// by `shift` (0 compares plain prefixes, 1 compares `label(u)` against
    /// `label(v)` with its first letter dropped).
    fn labels_agree(&self, u: NodeId, v: NodeId, len: u32, shift: u32) -> bool {
        if len == 0 {
            return true;
        }
        let su = self.nodes[u.index()].stamp;
        let sv = self.nodes[v.index()].stamp - shift;
        self.span(su - len + 1, su) == self.span(sv - len + 1, sv)
    }

    /// Checks every structural invariant and returns the violations found.
    pub fn verify_structure(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut bad = |node: NodeId, what: String| out.push(Violation { node, what });
        let n = self.nodes.len();
        let j = self.text.len();

        let root = &self.nodes[0];
        if root.parent != NodeId::ROOT || root.depth != 0 || root.suffix_end != 0 {
            bad(NodeId::ROOT, "malformed root".into());
        }

        // Preorder traversal: parent/child agreement, depths, edge letters.
        let mut order = Vec::with_capacity(n);
        let mut tree_depth = vec![0usize; n];
        let mut stack = vec![NodeId::ROOT];
        let mut seen = vec![false; n];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            order.push(v);
            let node = &self.nodes[v.index()];
            let mut last: Option<Letter> = None;
            for (c, ch) in node.children() {
                if last.is_some_and(|l| l >= c) {
                    bad(v, "child letters not strictly increasing".into());
                }
                last = Some(c);
                if seen[ch.index()] {
                    bad(ch, "reachable twice".into());
                    continue;
                }
                seen[ch.index()] = true;
                tree_depth[ch.index()] = tree_depth[v.index()] + 1;
                let child = &self.nodes[ch.index()];
                if child.parent != v {
                    bad(
                        ch,
                        format!("parent pointer {} but hangs below {}", child.parent.index(), v.index()),
                    );
                }
                if child.depth <= node.depth {
                    bad(ch, "string depth not above parent's".into());
                    continue;
                }
                if child.stamp < child.depth {
                    bad(ch, "witness shorter than string depth".into());
                    continue;
                }
                if self.letter_at(ch, node.depth + 1) != c {
                    bad(ch, "edge letter disagrees with witness".into());
                }
                if !self.labels_agree(ch, v, node.depth, 0) {
                    bad(ch, "label does not extend parent's".into());
                }
                stack.push(ch);
            }
            if v != NodeId::ROOT && node.suffix_end == 0 && node.children.len() < 2 {
                bad(v, "unary node without suffix end".into());
            }
            if node.children.is_empty() && v != NodeId::ROOT && node.suffix_end == 0 {
                bad(v, "leaf without suffix end".into());
            }
        }
        if order.len() != n {
            bad(NodeId::ROOT, format!("{} of {} nodes unreachable", n - order.len(), n));
            return out;
        }

        // Suffix ends: one node per round, at the right depth.
        let mut end_node = vec![None; j + 1];
        for (i, node) in self.nodes.iter().enumerate() {
            let r = node.suffix_end as usize;
            if r == 0 {
                continue;
            }
            let id = NodeId(i as u32);
            if r > j {
                bad(id, format!("suffix end {r} beyond text length {j}"));
            } else if end_node[r].replace(id).is_some() {
                bad(id, format!("round {r} ends at two nodes"));
            } else if node.depth as usize != r || node.stamp as usize != r {
                bad(
                    id,
                    format!("suffix of round {r} has depth {} stamp {}", node.depth, node.stamp),
                );
            }
        }
        for (r, slot) in end_node.iter().enumerate().skip(1) {
            if slot.is_none() {
                bad(NodeId::ROOT, format!("round {r} has no suffix node"));
            }
        }
        if j > 0 && end_node[j] != Some(self.last) {
            bad(self.last, "last leaf is not the suffix node of the latest round".into());
        }

        // Timestamps: minimum suffix end over the subtree.
        let mut min_end = vec![u32::MAX; n];
        for &v in order.iter().rev() {
            let node = &self.nodes[v.index()];
            let mut m = if node.suffix_end != 0 {
                node.suffix_end
            } else {
                u32::MAX
            };
            for (_, ch) in node.children() {
                m = m.min(min_end[ch.index()]);
            }
            min_end[v.index()] = m;
            let expected = if m == u32::MAX { 0 } else { m };
            if node.stamp != expected {
                bad(
                    v,
                    format!("timestamp {} but subtree minimum is {}", node.stamp, expected),
                );
            }
        }

        // W-links, read through the pending queue.
        for (i, node) in self.nodes.iter().enumerate() {
            let q = NodeId(i as u32);
            for (c, t) in self.wlinks(q) {
                if !self.wlink_sound(q, c, t) {
                    bad(
                        q,
                        format!(
                            "W-link {:?} -> {} is not the closest node below {:?}·label",
                            c as char,
                            t.index(),
                            c as char
                        ),
                    );
                }
            }
            if i == 0 {
                continue;
            }
            // label(ζ) = c·X: X must be a node δ with W_c(δ) = ζ, and every
            // ancestor of δ must have some W_c.
            let c = self.letter_at(q, 1);
            let Some(delta) = self.node_for_tail(q, &end_node) else {
                bad(q, "label minus its first letter is not a node".into());
                continue;
            };
            if self.wlink(delta, c) != Some(q) {
                bad(delta, format!("missing hard W-link {:?} -> {}", c as char, i));
            }
            if !node.children.is_empty() && tree_depth[i] > tree_depth[delta.index()] + 1 {
                bad(
                    q,
                    format!(
                        "node depth {} exceeds W-link source depth {} plus one",
                        tree_depth[i],
                        tree_depth[delta.index()]
                    ),
                );
            }
            let mut a = delta;
            while a != NodeId::ROOT {
                a = self.parent(a);
                if self.wlink(a, c).is_none() {
                    bad(
                        a,
                        format!("missing W-link {:?} although a descendant has one", c as char),
                    );
                    break;
                }
            }
        }

        if self.mode == Mode::Eager && !self.deferred.queue.is_empty() {
            bad(NodeId::ROOT, "eager tree holds deferred writes".into());
        }
        out
    }

    fn wlink_sound(&self, q: NodeId, c: Letter, t: NodeId) -> bool {
        let want = self.depth(q) + 1;
        let target = &self.nodes[t.index()];
        let parent_depth = if t == NodeId::ROOT {
            0
        } else {
            self.depth(target.parent)
        };
        if t == NodeId::ROOT || target.depth < want || (parent_depth >= want) {
            return false;
        }
        self.letter_at(t, 1) == c && self.labels_agree(q, t, want - 1, 1)
    }

    /// Node whose label is `label(v)` without its first letter, if any.
    fn node_for_tail(&self, v: NodeId, end_node: &[Option<NodeId>]) -> Option<NodeId> {
        let node = &self.nodes[v.index()];
        let want = node.depth - 1;
        if want == 0 {
            return Some(NodeId::ROOT);
        }
        // The tail is a prefix of the suffix of round `stamp - 1`.
        let mut u = end_node[(node.stamp - 1) as usize]?;
        while self.depth(u) > want {
            u = self.parent(u);
        }
        (self.depth(u) == want).then_some(u)
    }
}
