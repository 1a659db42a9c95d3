//! Longest repeating suffix (LRS) and longest previous factor (LPF) arrays.
//!
//! `LRS[i]` is the length of the longest suffix of `T[1..i]` that also occurs
//! in `T[1..i-1]`; online it is the string depth of the insertion point.
//! `LPF[i]` is the length of the longest prefix of `T[i..n]` with an earlier
//! starting occurrence. The two are tied by a left-to-right rule: whenever
//! `LRS[i] <= LRS[i-1]` (with `LRS[0] = 0`) the positions
//! `j in [i - LRS[i-1] .. i - LRS[i]]` are final with `LPF[j] = i - j`, and at
//! the end `LPF[j] = n - j + 1` for `j in [n - LRS[n] + 1 .. n]`. Positions
//! therefore become final in increasing order, which is what lets
//! [`LpfQueue`] emit LPF online behind a bounded delay.
//!
//! All positions in this module are 1-based; arrays are stored 0-based
//! (`values[i - 1]` holds position `i`).
//!
//! Arrays grow by capacity doubling (`Vec`). A resizable array with `O(1)`
//! worst-case append would remove the occasional copy.

use std::collections::VecDeque;

use crate::tree::{Letter, Mode, StrategyKind, SuffixTree, UpdateReport};
use crate::Error;

/// Online LRS array over an owned tree.
#[derive(Clone, Debug)]
pub struct LrsStream {
    tree: SuffixTree,
    values: Vec<usize>,
}

impl LrsStream {
    pub fn new(tree: SuffixTree) -> Self {
        LrsStream {
            tree,
            values: Vec::new(),
        }
    }

    pub fn with(mode: Mode, strategy: StrategyKind) -> Result<Self, Error> {
        Ok(Self::new(SuffixTree::new(mode, strategy)?))
    }

    pub fn push(&mut self, c: Letter) -> usize {
        self.push_report(c).lrs
    }

    /// Like [`push`](Self::push) but hands back the whole update report.
    pub fn push_report(&mut self, c: Letter) -> UpdateReport {
        let report = self.tree.push_letter(c);
        self.values.push(report.lrs);
        report
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn tree(&self) -> &SuffixTree {
        &self.tree
    }

    pub fn into_tree(self) -> SuffixTree {
        self.tree
    }
}

/// A run of final LPF assignments `LPF[j] = anchor - j` for `j in first..=last`.
#[derive(Clone, Copy, Debug)]
struct Run {
    first: usize,
    last: usize,
    anchor: usize,
}

/// Converts a stream of LRS values into LPF values, emitting at most `budget`
/// positions per round.
#[derive(Clone, Debug)]
pub struct LpfQueue {
    budget: usize,
    round: usize,
    prev_lrs: usize,
    max_lrs: usize,
    runs: VecDeque<Run>,
    pending: usize,
    max_pending: usize,
    flushed: bool,
}

pub const DEFAULT_LPF_BUDGET: usize = 2;

impl Default for LpfQueue {
    fn default() -> Self {
        Self::new(DEFAULT_LPF_BUDGET)
    }
}

impl LpfQueue {
    pub fn new(budget: usize) -> Self {
        LpfQueue {
            budget: budget.max(1),
            round: 0,
            prev_lrs: 0,
            max_lrs: 0,
            runs: VecDeque::new(),
            pending: 0,
            max_pending: 0,
            flushed: false,
        }
    }

    /// Assignments known but not yet emitted.
    pub fn pending(&self) -> usize {
        self.pending
    }

    /// Largest queue length observed at the end of a round.
    pub fn max_pending(&self) -> usize {
        self.max_pending
    }

    pub fn max_lrs(&self) -> usize {
        self.max_lrs
    }

    fn enqueue(&mut self, first: usize, last: usize, anchor: usize) {
        if first <= last {
            self.runs.push_back(Run { first, last, anchor });
            self.pending += last - first + 1;
        }
    }

    fn dequeue(&mut self, limit: usize, out: &mut Vec<(usize, usize)>) {
        let mut left = limit;
        while left > 0 {
            let Some(run) = self.runs.front_mut() else {
                break;
            };
            out.push((run.first, run.anchor - run.first));
            run.first += 1;
            if run.first > run.last {
                self.runs.pop_front();
            }
            self.pending -= 1;
            left -= 1;
        }
    }

    /// Feeds `LRS[i]` for the next position and returns the `(position, LPF)`
    /// pairs emitted this round, in increasing position order.
    pub fn push_lrs(&mut self, lrs: usize) -> Vec<(usize, usize)> {
        debug_assert!(!self.flushed, "push after flush");
        self.round += 1;
        let i = self.round;
        if lrs <= self.prev_lrs {
            self.enqueue(i - self.prev_lrs, i - lrs, i);
        }
        self.prev_lrs = lrs;
        self.max_lrs = self.max_lrs.max(lrs);
        let mut out = Vec::with_capacity(self.budget);
        self.dequeue(self.budget, &mut out);
        self.max_pending = self.max_pending.max(self.pending);
        out
    }

    /// Ends the input: finalizes the trailing positions and drains the queue.
    pub fn flush(&mut self) -> Result<Vec<(usize, usize)>, Error> {
        if self.flushed {
            return Err(Error::AlreadyFlushed);
        }
        self.flushed = true;
        let n = self.round;
        self.enqueue(n + 1 - self.prev_lrs, n, n + 1);
        let mut out = Vec::with_capacity(self.pending);
        self.dequeue(self.pending, &mut out);
        Ok(out)
    }
}

/// Online LPF over an owned tree.
#[derive(Clone, Debug)]
pub struct LpfStream {
    lrs: LrsStream,
    queue: LpfQueue,
}

impl LpfStream {
    pub fn new(tree: SuffixTree, budget: usize) -> Self {
        LpfStream {
            lrs: LrsStream::new(tree),
            queue: LpfQueue::new(budget),
        }
    }

    pub fn push(&mut self, c: Letter) -> Vec<(usize, usize)> {
        let v = self.lrs.push(c);
        self.queue.push_lrs(v)
    }

    pub fn flush(&mut self) -> Result<Vec<(usize, usize)>, Error> {
        self.queue.flush()
    }

    pub fn queue(&self) -> &LpfQueue {
        &self.queue
    }

    pub fn lrs(&self) -> &LrsStream {
        &self.lrs
    }
}

fn invalid(kind: &'static str, pos: usize, reason: &'static str) -> Error {
    Error::InvalidArray { kind, pos, reason }
}

/// Checks `LRS[1] = 0` and `LRS[i] <= LRS[i-1] + 1`.
pub fn validate_lrs(lrs: &[usize]) -> Result<(), Error> {
    let mut prev = 0;
    for (k, &v) in lrs.iter().enumerate() {
        if k == 0 && v != 0 {
            return Err(invalid("LRS", 1, "first value must be 0"));
        }
        if v > prev + 1 {
            return Err(invalid("LRS", k + 1, "grows by more than one"));
        }
        prev = v;
    }
    Ok(())
}

/// Checks `LPF[1] = 0`, `LPF[i] >= LPF[i-1] - 1` and `LPF[i] <= n - i + 1`.
pub fn validate_lpf(lpf: &[usize]) -> Result<(), Error> {
    let n = lpf.len();
    let mut prev = 0;
    for (k, &v) in lpf.iter().enumerate() {
        let pos = k + 1;
        if pos == 1 && v != 0 {
            return Err(invalid("LPF", 1, "first value must be 0"));
        }
        if v + 1 < prev {
            return Err(invalid("LPF", pos, "drops by more than one"));
        }
        if v > n - pos + 1 {
            return Err(invalid("LPF", pos, "runs past the end of the text"));
        }
        prev = v;
    }
    Ok(())
}

/// Offline LRS → LPF in one left-to-right pass.
pub fn lrs_to_lpf(lrs: &[usize]) -> Result<Vec<usize>, Error> {
    validate_lrs(lrs)?;
    let n = lrs.len();
    let mut lpf = vec![0; n];
    let mut prev = 0;
    for i in 1..=n {
        let cur = lrs[i - 1];
        if cur <= prev {
            for j in i - prev..=i - cur {
                lpf[j - 1] = i - j;
            }
        }
        prev = cur;
    }
    for j in n + 1 - prev..=n {
        lpf[j - 1] = n - j + 1;
    }
    Ok(lpf)
}

/// Offline LPF → LRS: `LRS[i] = i - min(X_i) + 1` where `X_i` holds the
/// positions whose previous factor covers `i`. The leftmost covering start
/// only moves right, so one sweep pointer suffices.
pub fn lpf_to_lrs(lpf: &[usize]) -> Result<Vec<usize>, Error> {
    validate_lpf(lpf)?;
    let n = lpf.len();
    let mut lrs = vec![0; n];
    let mut cur = 1;
    for i in 1..=n {
        while cur <= i && cur + lpf[cur - 1] <= i {
            cur += 1;
        }
        if cur <= i {
            lrs[i - 1] = i - cur + 1;
        }
    }
    Ok(lrs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArrayKind {
    Lpf,
    Lrs,
}

impl ArrayKind {
    fn name(self) -> &'static str {
        match self {
            ArrayKind::Lpf => "irreducible LPF",
            ArrayKind::Lrs => "irreducible LRS",
        }
    }

    /// Value forced at a position by its predecessor, if any.
    fn law(self, prev: usize) -> Option<usize> {
        match self {
            ArrayKind::Lpf => prev.checked_sub(1),
            ArrayKind::Lrs => Some(prev + 1),
        }
    }
}

/// The positions of an LPF or LRS array that its reducibility law does not
/// predict (LPF: `prev - 1`, LRS: `prev + 1`), plus the array length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrreducibleList {
    pub kind: ArrayKind,
    pub entries: Vec<(usize, usize)>,
    pub n: usize,
}

impl IrreducibleList {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Checks positions and irreducibility without expanding; returns the
    /// value implied at position `n`.
    fn check(&self, kind: ArrayKind) -> Result<usize, Error> {
        let name = kind.name();
        if self.kind != kind {
            return Err(invalid(name, 0, "wrong array kind"));
        }
        if self.n == 0 {
            return if self.entries.is_empty() {
                Ok(0)
            } else {
                Err(invalid(name, 0, "entries for an empty array"))
            };
        }
        if self.entries.first().map(|e| e.0) != Some(1) {
            return Err(invalid(name, 1, "must start at position 1"));
        }
        let mut last = (0usize, 0usize);
        for &(pos, v) in &self.entries {
            if pos <= last.0 || pos > self.n {
                return Err(invalid(name, pos, "positions must increase within 1..=n"));
            }
            if pos == 1 && v != 0 {
                return Err(invalid(name, 1, "first value must be 0"));
            }
            if pos > 1 {
                let prev = implied(kind, last, pos - 1)
                    .ok_or_else(|| invalid(name, pos - 1, "law drives the value below 0"))?;
                let bad = match kind {
                    ArrayKind::Lpf => v < prev || v > self.n - pos + 1,
                    ArrayKind::Lrs => v > prev,
                };
                if bad {
                    return Err(invalid(name, pos, "value is not irreducible or out of range"));
                }
            }
            last = (pos, v);
        }
        implied(kind, last, self.n).ok_or_else(|| invalid(name, self.n, "law drives the value below 0"))
    }
}

/// Value at `pos` regenerated from the last irreducible entry at or before it.
fn implied(kind: ArrayKind, (at, v): (usize, usize), pos: usize) -> Option<usize> {
    let gap = pos - at;
    match kind {
        ArrayKind::Lpf => v.checked_sub(gap),
        ArrayKind::Lrs => Some(v + gap),
    }
}

pub fn compress(values: &[usize], kind: ArrayKind) -> Result<IrreducibleList, Error> {
    match kind {
        ArrayKind::Lpf => validate_lpf(values)?,
        ArrayKind::Lrs => validate_lrs(values)?,
    }
    let mut entries = Vec::new();
    for (k, &v) in values.iter().enumerate() {
        let forced = if k == 0 { None } else { kind.law(values[k - 1]) };
        if forced != Some(v) {
            entries.push((k + 1, v));
        }
    }
    Ok(IrreducibleList {
        kind,
        entries,
        n: values.len(),
    })
}

pub fn expand(list: &IrreducibleList) -> Result<Vec<usize>, Error> {
    list.check(list.kind)?;
    let mut out = Vec::with_capacity(list.n);
    let mut next = 0;
    for pos in 1..=list.n {
        if next < list.entries.len() && list.entries[next].0 == pos {
            out.push(list.entries[next].1);
            next += 1;
        } else {
            let prev = *out.last().expect("position 1 is always irreducible");
            out.push(list.kind.law(prev).expect("checked above"));
        }
    }
    match list.kind {
        ArrayKind::Lpf => validate_lpf(&out)?,
        ArrayKind::Lrs => validate_lrs(&out)?,
    }
    Ok(out)
}

/// Irreducible LRS → irreducible LPF. Every trigger position is an
/// irreducible LRS entry and contributes exactly one irreducible LPF entry:
/// the first assignment of its run. Returns the list and the number of
/// entries touched.
pub fn irr_lrs_to_irr_lpf_counted(list: &IrreducibleList) -> Result<(IrreducibleList, usize), Error> {
    let last_value = list.check(ArrayKind::Lrs)?;
    let mut entries = Vec::with_capacity(list.entries.len() + 1);
    let mut touched = 0;
    let mut last = (0usize, 0usize);
    for &(i, v) in &list.entries {
        touched += 1;
        let before = if i == 1 {
            0
        } else {
            implied(ArrayKind::Lrs, last, i - 1).unwrap()
        };
        entries.push((i - before, before));
        last = (i, v);
    }
    if list.n > 0 && last_value > 0 {
        entries.push((list.n - last_value + 1, last_value));
    }
    Ok((
        IrreducibleList {
            kind: ArrayKind::Lpf,
            entries,
            n: list.n,
        },
        touched + 1,
    ))
}

pub fn irr_lrs_to_irr_lpf(list: &IrreducibleList) -> Result<IrreducibleList, Error> {
    irr_lrs_to_irr_lpf_counted(list).map(|(l, _)| l)
}

/// Irreducible LPF → irreducible LRS by sweeping interval endpoints only.
/// Irreducible intervals `[j .. j + LPF[j] - 1]` have strictly increasing
/// ends, so the leftmost interval covering a position is the first one
/// (in start order) that has not ended yet.
pub fn irr_lpf_to_irr_lrs_counted(list: &IrreducibleList) -> Result<(IrreducibleList, usize), Error> {
    list.check(ArrayKind::Lpf)?;
    let n = list.n;
    let intervals: Vec<(usize, usize)> = list
        .entries
        .iter()
        .filter(|&&(_, v)| v > 0)
        .map(|&(j, v)| (j, j + v - 1))
        .collect();
    let mut entries = Vec::new();
    let mut touched = 0;
    let mut k = 0;
    let mut i = 1;
    let mut prev = 0;
    while i <= n {
        touched += 1;
        while k < intervals.len() && intervals[k].1 < i {
            k += 1;
            touched += 1;
        }
        match intervals.get(k) {
            Some(&(start, end)) if start <= i => {
                let v = i - start + 1;
                if i == 1 || v != prev + 1 {
                    entries.push((i, v));
                }
                prev = end - start + 1;
                i = end + 1;
            }
            next => {
                let stop = next.map_or(n, |&(start, _)| start - 1);
                for p in i..=stop {
                    entries.push((p, 0));
                    touched += 1;
                }
                prev = 0;
                i = stop + 1;
            }
        }
    }
    Ok((
        IrreducibleList {
            kind: ArrayKind::Lrs,
            entries,
            n,
        },
        touched,
    ))
}

pub fn irr_lpf_to_irr_lrs(list: &IrreducibleList) -> Result<IrreducibleList, Error> {
    irr_lpf_to_irr_lrs_counted(list).map(|(l, _)| l)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lrs_of(text: &[u8]) -> Vec<usize> {
        let mut s = LrsStream::new(SuffixTree::eager());
        text.iter().map(|&c| s.push(c)).collect()
    }

    fn lpf_online(text: &[u8], budget: usize) -> Vec<(usize, usize)> {
        let mut s = LpfStream::new(SuffixTree::eager(), budget);
        let mut out: Vec<(usize, usize)> = text.iter().flat_map(|&c| s.push(c)).collect();
        out.extend(s.flush().unwrap());
        out
    }

    #[test]
    fn lrs_worked_values() {
        assert_eq!(lrs_of(b"abaabab"), vec![0, 0, 1, 1, 2, 3, 2]);
        assert_eq!(lrs_of(b"aaaa"), vec![0, 1, 2, 3]);
        assert_eq!(lrs_of(b"q"), vec![0]);
    }

    #[test]
    fn lpf_trigger_at_seven_queues_two_assignments() {
        let mut q = LpfQueue::new(0);
        for v in [0, 0, 1, 1, 2, 3] {
            q.push_lrs(v);
        }
        let before = q.pending();
        q.push_lrs(2);
        // budget is clamped to 1, so one of LPF[4], LPF[5] left the queue
        assert_eq!(q.pending(), before + 2 - 1);
    }

    #[test]
    fn lpf_online_values() {
        let got = lpf_online(b"abaabab", 2);
        assert_eq!(got, vec![(1, 0), (2, 0), (3, 1), (4, 3), (5, 2), (6, 2), (7, 1)]);
        assert_eq!(lpf_online(b"a", 2), vec![(1, 0)]);
        assert_eq!(lpf_online(b"aaaa", 2), vec![(1, 0), (2, 3), (3, 2), (4, 1)]);
    }

    #[test]
    fn lpf_single_letter_emits_immediately() {
        let mut s = LpfStream::new(SuffixTree::eager(), 2);
        assert_eq!(s.push(b'x'), vec![(1, 0)]);
        assert_eq!(s.flush().unwrap(), vec![]);
    }

    #[test]
    fn lpf_run_emits_nothing_before_flush() {
        let mut s = LpfStream::new(SuffixTree::eager(), 2);
        assert_eq!(s.push(b'a'), vec![(1, 0)]);
        for _ in 0..3 {
            assert!(s.push(b'a').is_empty());
        }
        assert_eq!(s.flush().unwrap(), vec![(2, 3), (3, 2), (4, 1)]);
    }

    #[test]
    fn double_flush_rejected() {
        let mut s = LpfStream::new(SuffixTree::eager(), 2);
        s.push(b'a');
        s.flush().unwrap();
        assert_eq!(s.flush(), Err(Error::AlreadyFlushed));
    }

    #[test]
    fn offline_conversions() {
        assert_eq!(lrs_to_lpf(&[0, 0, 1, 1, 2, 3, 2]).unwrap(), vec![0, 0, 1, 3, 2, 2, 1]);
        assert_eq!(lrs_to_lpf(&[0]).unwrap(), vec![0]);
        assert_eq!(lrs_to_lpf(&[0, 1, 2, 3]).unwrap(), vec![0, 3, 2, 1]);
        assert_eq!(lrs_to_lpf(&[]).unwrap(), Vec::<usize>::new());
        assert_eq!(lpf_to_lrs(&[0, 0, 1, 3, 2, 2, 1]).unwrap(), vec![0, 0, 1, 1, 2, 3, 2]);
        assert_eq!(lpf_to_lrs(&[0, 0, 0]).unwrap(), vec![0, 0, 0]);
        assert_eq!(lpf_to_lrs(&[0, 3, 2, 1]).unwrap(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn converters_reject_malformed_input() {
        assert!(lrs_to_lpf(&[1]).is_err());
        assert!(lrs_to_lpf(&[0, 2]).is_err());
        assert!(lpf_to_lrs(&[2, 0]).is_err());
        assert!(lpf_to_lrs(&[0, 3, 0, 0]).is_err());
        assert!(lpf_to_lrs(&[0, 5]).is_err());
    }

    #[test]
    fn compress_worked_values() {
        let lpf = compress(&[0, 0, 1, 3, 2, 2, 1], ArrayKind::Lpf).unwrap();
        assert_eq!(lpf.entries, vec![(1, 0), (2, 0), (3, 1), (4, 3), (6, 2)]);
        let lrs = compress(&[0, 0, 1, 1, 2, 3, 2], ArrayKind::Lrs).unwrap();
        assert_eq!(lrs.entries, vec![(1, 0), (2, 0), (4, 1), (7, 2)]);
        assert_eq!(expand(&lpf).unwrap(), vec![0, 0, 1, 3, 2, 2, 1]);
        assert_eq!(expand(&lrs).unwrap(), vec![0, 0, 1, 1, 2, 3, 2]);
    }

    #[test]
    fn irreducible_converters_on_worked_example() {
        let lrs = compress(&[0, 0, 1, 1, 2, 3, 2], ArrayKind::Lrs).unwrap();
        let lpf = compress(&[0, 0, 1, 3, 2, 2, 1], ArrayKind::Lpf).unwrap();
        assert_eq!(irr_lrs_to_irr_lpf(&lrs).unwrap(), lpf);
        assert_eq!(irr_lpf_to_irr_lrs(&lpf).unwrap(), lrs);
        let single = IrreducibleList {
            kind: ArrayKind::Lrs,
            entries: vec![(1, 0)],
            n: 1,
        };
        let out = irr_lrs_to_irr_lpf(&single).unwrap();
        assert_eq!(out.entries, vec![(1, 0)]);
        assert_eq!(irr_lpf_to_irr_lrs(&out).unwrap(), single);
    }

    #[test]
    fn expand_rejects_bad_lists() {
        let negative = IrreducibleList {
            kind: ArrayKind::Lpf,
            entries: vec![(1, 0), (2, 1)],
            n: 4,
        };
        assert!(expand(&negative).is_err());
        let unordered = IrreducibleList {
            kind: ArrayKind::Lrs,
            entries: vec![(1, 0), (3, 0), (2, 0)],
            n: 3,
        };
        assert!(expand(&unordered).is_err());
        let reducible = IrreducibleList {
            kind: ArrayKind::Lrs,
            entries: vec![(1, 0), (2, 1)],
            n: 2,
        };
        assert!(expand(&reducible).is_err());
        let wrong_kind = IrreducibleList {
            kind: ArrayKind::Lpf,
            entries: vec![(1, 0)],
            n: 1,
        };
        assert!(irr_lrs_to_irr_lpf(&wrong_kind).is_err());
    }
}
