//! Reversed LZ: each factor is the longest prefix of the rest of the text
//! whose reverse occurs earlier.
//!
//! The factor `T[p..i]` is matched as a path from the root of the tree of the
//! reversed text, so a locus of `T[p..i]` stands for an occurrence of
//! `reverse(T[p..i])` ending at the locus timestamp. Matching letter `i`
//! happens before the tree learns it, and descents are refused into subtrees
//! whose timestamp exceeds `p - 1`, which keeps the occurrence inside
//! `T[1..p-1]`.

use super::{Factor, PalindromicSuffixes};
use crate::tree::{Letter, Locus, Mode, StrategyKind, SuffixTree, UpdateReport};
use crate::Error;

/// Non-overlapping matcher driven alongside a shared tree: call
/// [`advance`](Self::advance) before pushing the letter into the tree and
/// [`observe`](Self::observe) with the resulting report.
#[derive(Clone, Debug)]
pub struct RevLzMatcher {
    start: usize,
    len: usize,
    first: Letter,
    literal: bool,
    active: Locus,
    count: usize,
    flushed: bool,
}

impl Default for RevLzMatcher {
    fn default() -> Self {
        RevLzMatcher {
            start: 0,
            len: 0,
            first: 0,
            literal: false,
            active: Locus::ROOT,
            count: 0,
            flushed: false,
        }
    }
}

impl RevLzMatcher {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn count(&self) -> usize {
        self.count
    }

    /// Locus of the factor in progress.
    pub fn active(&self) -> Locus {
        self.active
    }

    pub fn advance(&mut self, tree: &SuffixTree, c: Letter) -> Option<Factor> {
        debug_assert!(!self.flushed, "push after flush");
        if self.len > 0 && !self.literal {
            if let Some(next) = tree.descend(self.active, c, self.start - 1) {
                self.active = next;
                self.len += 1;
                return None;
            }
        }
        let done = self.finish(tree);
        let i = tree.len() + 1;
        self.start = i;
        self.len = 1;
        self.first = c;
        match tree.descend(Locus::ROOT, c, i - 1) {
            Some(locus) => {
                self.active = locus;
                self.literal = false;
            }
            None => {
                self.active = Locus::ROOT;
                self.literal = true;
            }
        }
        done
    }

    pub fn observe(&mut self, tree: &SuffixTree, report: &UpdateReport) {
        self.active = tree.renormalize(self.active, report);
    }

    fn finish(&mut self, tree: &SuffixTree) -> Option<Factor> {
        if self.len == 0 {
            return None;
        }
        self.count += 1;
        let f = if self.literal {
            Factor::literal(self.start, self.first)
        } else {
            let end = tree.locus_timestamp(self.active);
            Factor::copy(self.start, end + 1 - self.len, self.len, true)
        };
        self.len = 0;
        Some(f)
    }

    pub fn flush(&mut self, tree: &SuffixTree) -> Result<Option<Factor>, Error> {
        if self.flushed {
            return Err(Error::AlreadyFlushed);
        }
        self.flushed = true;
        Ok(self.finish(tree))
    }
}

/// Overlapping variant: every prefix `F` of the factor needs a reversed copy
/// inside `F_1 ⋯ F_{x-1} F`. A reversed copy either lies before the factor
/// (the non-overlapping match) or overlaps it, which happens exactly when the
/// longest palindromic suffix `L` at the current end satisfies
/// `len <= L <= 2·len - 1`.
#[derive(Clone, Debug)]
pub struct OvRevLzMatcher {
    plain: RevLzMatcher,
    pal: PalindromicSuffixes,
    /// Whether the non-overlapping match still covers the whole factor.
    alive: bool,
    pal_ref: usize,
}

impl Default for OvRevLzMatcher {
    fn default() -> Self {
        OvRevLzMatcher {
            plain: RevLzMatcher::new(),
            pal: PalindromicSuffixes::new(),
            alive: false,
            pal_ref: 0,
        }
    }
}

impl OvRevLzMatcher {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn count(&self) -> usize {
        self.plain.count
    }

    pub fn palindromes(&self) -> &PalindromicSuffixes {
        &self.pal
    }

    pub fn advance(&mut self, tree: &SuffixTree, c: Letter) -> Option<Factor> {
        let m = &mut self.plain;
        debug_assert!(!m.flushed, "push after flush");
        let i = tree.len() + 1;
        let longest = self.pal.push(c);
        if m.len > 0 && !m.literal {
            if self.alive {
                if let Some(next) = tree.descend(m.active, c, m.start - 1) {
                    m.active = next;
                    m.len += 1;
                    return None;
                }
            }
            let want = m.len + 1;
            if want <= longest && longest < 2 * want {
                m.len = want;
                self.alive = false;
                self.pal_ref = i + 1 - longest;
                return None;
            }
        }
        let done = self.finish(tree);
        let m = &mut self.plain;
        let fresh = m.advance(tree, c);
        debug_assert!(fresh.is_none());
        self.alive = !m.literal;
        done
    }

    pub fn observe(&mut self, tree: &SuffixTree, report: &UpdateReport) {
        if self.alive {
            self.plain.observe(tree, report);
        }
    }

    fn finish(&mut self, tree: &SuffixTree) -> Option<Factor> {
        if self.alive || self.plain.len == 0 || self.plain.literal {
            return self.plain.finish(tree);
        }
        let m = &mut self.plain;
        m.count += 1;
        let f = Factor::copy(m.start, self.pal_ref, m.len, true);
        m.len = 0;
        Some(f)
    }

    pub fn flush(&mut self, tree: &SuffixTree) -> Result<Option<Factor>, Error> {
        if self.plain.flushed {
            return Err(Error::AlreadyFlushed);
        }
        let f = self.finish(tree);
        self.plain.flushed = true;
        Ok(f)
    }
}

macro_rules! owner {
    ($name:ident, $matcher:ty) => {
        /// Matcher bundled with its own tree.
        #[derive(Clone, Debug)]
        pub struct $name {
            tree: SuffixTree,
            matcher: $matcher,
        }

        impl $name {
            pub fn new(mode: Mode, strategy: StrategyKind) -> Result<Self, Error> {
                Ok($name {
                    tree: SuffixTree::new(mode, strategy)?,
                    matcher: <$matcher>::new(),
                })
            }

            pub fn push(&mut self, c: Letter) -> Option<Factor> {
                let out = self.matcher.advance(&self.tree, c);
                let report = self.tree.push_letter(c);
                self.matcher.observe(&self.tree, &report);
                out
            }

            pub fn flush(&mut self) -> Result<Option<Factor>, Error> {
                self.matcher.flush(&self.tree)
            }

            pub fn tree(&self) -> &SuffixTree {
                &self.tree
            }

            pub fn run(text: &[Letter]) -> Vec<Factor> {
                let mut f = Self::new(Mode::Eager, StrategyKind::Walker).expect("eager");
                let mut out: Vec<Factor> = text.iter().filter_map(|&c| f.push(c)).collect();
                out.extend(f.flush().expect("first flush"));
                out
            }
        }
    };
}

owner!(RevLzFactorizer, RevLzMatcher);
owner!(OvRevLzFactorizer, OvRevLzMatcher);
