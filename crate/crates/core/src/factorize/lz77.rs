use super::Factor;
use crate::tree::{Letter, Mode, StrategyKind, SuffixTree, UpdateReport};
use crate::Error;

/// Greedy LZ77 over a stream of update reports.
///
/// Position `i` extends the current factor `F_x` (starting at `s_x`) when the
/// repeating suffix ending at `i` reaches back to `s_x`. The reference of a
/// finished factor comes from the insertion-point timestamp of its last
/// round: the earliest end of an earlier occurrence of that round's repeating
/// suffix, of which the factor is itself a suffix.
#[derive(Clone, Debug, Default)]
pub struct Lz77Stream {
    start: usize,
    len: usize,
    first: Letter,
    literal: bool,
    last_stamp: usize,
    count: usize,
    flushed: bool,
}

impl Lz77Stream {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of factors emitted so far.
    pub fn count(&self) -> usize {
        self.count
    }

    /// Start of the factor in progress (0 before any input).
    pub fn factor_start(&self) -> usize {
        self.start
    }

    /// Feeds the letter of round `report.round` and its report.
    pub fn push(&mut self, c: Letter, report: &UpdateReport) -> Option<Factor> {
        debug_assert!(!self.flushed, "push after flush");
        let i = report.round;
        if self.len > 0 && i < self.start + report.lrs {
            self.len += 1;
            self.last_stamp = report.insertion_point_timestamp;
            return None;
        }
        let done = self.finish();
        self.start = i;
        self.len = 1;
        self.first = c;
        self.literal = report.lrs == 0;
        self.last_stamp = report.insertion_point_timestamp;
        done
    }

    fn finish(&mut self) -> Option<Factor> {
        if self.len == 0 {
            return None;
        }
        self.count += 1;
        let f = if self.literal {
            Factor::literal(self.start, self.first)
        } else {
            Factor::copy(self.start, self.last_stamp + 1 - self.len, self.len, false)
        };
        self.len = 0;
        Some(f)
    }

    pub fn flush(&mut self) -> Result<Option<Factor>, Error> {
        if self.flushed {
            return Err(Error::AlreadyFlushed);
        }
        self.flushed = true;
        Ok(self.finish())
    }
}

/// [`Lz77Stream`] bundled with its own tree.
#[derive(Clone, Debug)]
pub struct Lz77Factorizer {
    tree: SuffixTree,
    stream: Lz77Stream,
}

impl Lz77Factorizer {
    pub fn new(mode: Mode, strategy: StrategyKind) -> Result<Self, Error> {
        Ok(Lz77Factorizer {
            tree: SuffixTree::new(mode, strategy)?,
            stream: Lz77Stream::new(),
        })
    }

    pub fn push(&mut self, c: Letter) -> Option<Factor> {
        let report = self.tree.push_letter(c);
        self.stream.push(c, &report)
    }

    pub fn flush(&mut self) -> Result<Option<Factor>, Error> {
        self.stream.flush()
    }

    pub fn tree(&self) -> &SuffixTree {
        &self.tree
    }

    /// Factorizes a whole text.
    pub fn run(text: &[Letter]) -> Vec<Factor> {
        let mut f = Self::new(Mode::Eager, StrategyKind::Walker).expect("eager");
        let mut out: Vec<Factor> = text.iter().filter_map(|&c| f.push(c)).collect();
        out.extend(f.flush().expect("first flush"));
        out
    }
}
