//! Minimal unique substrings of a growing text.
//!
//! A MUS occurs exactly once while both of its one-letter trims repeat. MUSs
//! cannot nest, so the set is a bijection between start and end positions
//! and is stored as two position arrays. Each letter changes the set by at
//! most one removal and three additions, read off the update report: the
//! repeating-suffix length and the shortest suffix that now occurs exactly
//! twice (whose earlier copy stops being unique).

use crate::tree::{Letter, UpdateReport};

/// Closed interval `[start..end]` of 1-based positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interval {
    pub start: usize,
    pub end: usize,
}

impl Interval {
    pub fn new(start: usize, end: usize) -> Self {
        Interval { start, end }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MusDelta {
    pub removed: Option<Interval>,
    pub added: Vec<Interval>,
}

#[derive(Clone, Debug, Default)]
pub struct MusSet {
    /// `end_of[s]` is the end of the MUS starting at `s`, or 0.
    end_of: Vec<usize>,
    /// `start_of[e]` is the start of the MUS ending at `e`, or 0.
    start_of: Vec<usize>,
    count: usize,
    prev_lrs: usize,
    round: usize,
    removal_misses: usize,
}

impl MusSet {
    pub fn new() -> Self {
        MusSet {
            end_of: vec![0],
            start_of: vec![0],
            ..Default::default()
        }
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    /// Times a reported removal was not present in the set (expected 0).
    pub fn removal_misses(&self) -> usize {
        self.removal_misses
    }

    pub fn end_of(&self, start: usize) -> Option<usize> {
        self.end_of.get(start).copied().filter(|&e| e != 0)
    }

    pub fn start_of(&self, end: usize) -> Option<usize> {
        self.start_of.get(end).copied().filter(|&s| s != 0)
    }

    pub fn intervals(&self) -> Vec<Interval> {
        self.end_of
            .iter()
            .enumerate()
            .filter(|&(_, &e)| e != 0)
            .map(|(s, &e)| Interval::new(s, e))
            .collect()
    }

    fn insert(&mut self, iv: Interval) -> bool {
        if self.end_of[iv.start] == iv.end {
            return false;
        }
        debug_assert!(self.end_of[iv.start] == 0 && self.start_of[iv.end] == 0);
        self.end_of[iv.start] = iv.end;
        self.start_of[iv.end] = iv.start;
        self.count += 1;
        true
    }

    fn remove(&mut self, iv: Interval) -> bool {
        if self.end_of.get(iv.start) != Some(&iv.end) {
            return false;
        }
        self.end_of[iv.start] = 0;
        self.start_of[iv.end] = 0;
        self.count -= 1;
        true
    }

    /// Applies the report of the round that appended one letter.
    pub fn update(&mut self, report: &UpdateReport) -> MusDelta {
        self.round += 1;
        let i = report.round;
        debug_assert_eq!(i, self.round);
        self.end_of.push(0);
        self.start_of.push(0);
        let lrs = report.lrs;
        let mut delta = MusDelta::default();
        let mut add = |set: &mut Self, iv: Interval| {
            if set.insert(iv) {
                delta.added.push(iv);
            }
        };

        if lrs <= self.prev_lrs {
            add(self, Interval::new(i - lrs, i));
        }
        if let Some(ssuf) = report.ssuf {
            let q = ssuf.prev_end;
            let s = q + 1 - ssuf.len;
            // Both lookups refer to the set before this round's removal.
            let ends_after = self.start_of(q + 1).is_some();
            let starts_before = q > lrs && self.end_of(q - lrs).is_some();
            let gone = Interval::new(s, q);
            if self.remove(gone) {
                delta.removed = Some(gone);
            } else {
                self.removal_misses += 1;
            }
            if !ends_after {
                add(self, Interval::new(s, q + 1));
            }
            if q > lrs && !starts_before {
                add(self, Interval::new(q - lrs, q));
            }
        }
        self.prev_lrs = lrs;
        delta
    }
}

/// [`MusSet`] bundled with its own tree.
#[derive(Clone, Debug)]
pub struct MusStream {
    tree: crate::tree::SuffixTree,
    set: MusSet,
}

impl MusStream {
    pub fn new(tree: crate::tree::SuffixTree) -> Self {
        MusStream {
            tree,
            set: MusSet::new(),
        }
    }

    pub fn push(&mut self, c: Letter) -> MusDelta {
        let report = self.tree.push_letter(c);
        self.set.update(&report)
    }

    pub fn set(&self) -> &MusSet {
        &self.set
    }

    pub fn tree(&self) -> &crate::tree::SuffixTree {
        &self.tree
    }
}
