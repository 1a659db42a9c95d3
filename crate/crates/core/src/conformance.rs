//! Differential harness: runs every stream over one shared tree, mirrors the
//! tree under other modes and strategies, and compares prefixes against the
//! oracles. Cloning a [`Harness`] forks the whole state, so prefix-closed
//! enumerations check each prefix once.

use std::fmt;

use crate::arrays::{self, ArrayKind, LpfQueue};
use crate::factorize::{decode, Factor, FactorKind, Lz77Stream, OvRevLzMatcher, RevLzMatcher};
use crate::mus::{MusDelta, MusSet};
use crate::oracle;
use crate::tree::{Letter, Mode, RoundWork, StrategyKind, SuffixTree};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub check: &'static str,
    /// 1-based position where the outputs first differ, when known.
    pub position: Option<usize>,
    pub detail: String,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.check)?;
        if let Some(p) = self.position {
            write!(f, " at position {p}")?;
        }
        write!(f, ": {}", self.detail)
    }
}

fn fail<T>(check: &'static str, position: Option<usize>, detail: impl Into<String>) -> Result<T, Mismatch> {
    Err(Mismatch {
        check,
        position,
        detail: detail.into(),
    })
}

/// First index (1-based) where two sequences differ, if any.
pub fn first_divergence<T: PartialEq>(a: &[T], b: &[T]) -> Option<usize> {
    let common = a.iter().zip(b).take_while(|(x, y)| x == y).count();
    (common < a.len().max(b.len())).then_some(common + 1)
}

fn compare<T: PartialEq + fmt::Debug>(check: &'static str, got: &[T], want: &[T]) -> Result<(), Mismatch> {
    match first_divergence(got, want) {
        None => Ok(()),
        Some(p) => fail(
            check,
            Some(p),
            format!("got {:?}, oracle {:?}", got.get(p - 1), want.get(p - 1)),
        ),
    }
}

/// Which per-round structural checks to run.
#[derive(Clone, Copy, Debug)]
pub struct Checks {
    /// Full `verify_structure` after every round (`O(n · height)`).
    pub verify_each_round: bool,
    /// Mirror trees (deamortized walker, eager euler) compared by snapshot.
    pub mirrors: bool,
    /// Height growth per round (`O(n)` per round).
    pub height_each_round: bool,
}

impl Default for Checks {
    fn default() -> Self {
        Checks {
            verify_each_round: true,
            mirrors: true,
            height_each_round: true,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Harness {
    checks: Checks,
    tree: SuffixTree,
    mirrors: Vec<SuffixTree>,
    lrs: Vec<usize>,
    lpf: LpfQueue,
    lpf_out: Vec<(usize, usize)>,
    lz77: Lz77Stream,
    lz77_out: Vec<Factor>,
    revlz: RevLzMatcher,
    revlz_out: Vec<Factor>,
    ovrevlz: OvRevLzMatcher,
    ovrevlz_out: Vec<Factor>,
    mus: MusSet,
    height: usize,
}

impl Default for Harness {
    fn default() -> Self {
        Self::new(Checks::default())
    }
}

impl Harness {
    pub fn new(checks: Checks) -> Self {
        Self::with_tree(SuffixTree::eager(), checks)
    }

    /// Harness driving `tree` (any mode or strategy) as the primary tree.
    pub fn with_tree(tree: SuffixTree, checks: Checks) -> Self {
        let mirrors = if checks.mirrors {
            vec![
                SuffixTree::new(Mode::Deamortized { budget: 2 }, StrategyKind::Walker).expect("budget 2"),
                SuffixTree::new(Mode::Eager, StrategyKind::EulerBalanced).expect("eager"),
            ]
        } else {
            Vec::new()
        };
        Harness {
            checks,
            tree,
            mirrors,
            lrs: Vec::new(),
            lpf: LpfQueue::default(),
            lpf_out: Vec::new(),
            lz77: Lz77Stream::new(),
            lz77_out: Vec::new(),
            revlz: RevLzMatcher::new(),
            revlz_out: Vec::new(),
            ovrevlz: OvRevLzMatcher::new(),
            ovrevlz_out: Vec::new(),
            mus: MusSet::new(),
            height: 0,
        }
    }

    pub fn text(&self) -> &[Letter] {
        self.tree.text()
    }

    pub fn tree(&self) -> &SuffixTree {
        &self.tree
    }

    pub fn lrs(&self) -> &[usize] {
        &self.lrs
    }

    /// Advances every stream by one letter and checks the per-round
    /// invariants that need no oracle. Returns the primary tree's work.
    pub fn push(&mut self, c: Letter) -> Result<RoundWork, Mismatch> {
        let nodes_before = self.tree.node_count();
        self.revlz_out.extend(self.revlz.advance(&self.tree, c));
        self.ovrevlz_out.extend(self.ovrevlz.advance(&self.tree, c));
        let report = self.tree.push_letter(c);
        let i = report.round;
        self.revlz.observe(&self.tree, &report);
        self.ovrevlz.observe(&self.tree, &report);

        self.lrs.push(report.lrs);
        let emitted = self.lpf.push_lrs(report.lrs);
        self.lpf_out.extend(emitted);
        if self.lpf.pending() > self.lpf.max_lrs() {
            return fail(
                "lpf delay bound",
                Some(i),
                format!("{} pending, max LRS {}", self.lpf.pending(), self.lpf.max_lrs()),
            );
        }
        self.lz77_out.extend(self.lz77.push(c, &report));

        let misses = self.mus.removal_misses();
        let MusDelta { removed, added } = self.mus.update(&report);
        if added.len() > 3 {
            return fail("mus delta size", Some(i), format!("{} additions", added.len()));
        }
        if self.mus.removal_misses() != misses {
            return fail(
                "mus removal",
                Some(i),
                format!("reported removal not in the set ({removed:?})"),
            );
        }

        let created = self.tree.node_count() - nodes_before;
        let want = 1 + usize::from(report.created_internal.is_some());
        if created != want {
            return fail("node creation", Some(i), format!("{created} nodes for {want} expected"));
        }
        if self.checks.height_each_round {
            let height = self.tree.height();
            if height > self.height + 1 {
                return fail("height growth", Some(i), format!("{} -> {}", self.height, height));
            }
            self.height = height;
        }
        if self.checks.verify_each_round {
            if let Some(v) = self.tree.verify_structure().first() {
                return fail("tree structure", Some(i), v.to_string());
            }
        }

        if let Mode::Deamortized { budget } = self.tree.mode() {
            if report.work.soft_writes + report.work.discarded > budget {
                return fail("drain budget", Some(i), format!("{} writes", report.work.soft_writes));
            }
        }
        for m in &mut self.mirrors {
            let r = m.push_letter(c);
            let key = |r: &crate::tree::UpdateReport| {
                (
                    r.lrs,
                    r.insertion_node,
                    r.created_internal,
                    r.new_leaf,
                    r.ssuf,
                    r.insertion_point_timestamp,
                )
            };
            if key(&r) != key(&report) {
                return fail(
                    "mode/strategy report",
                    Some(i),
                    format!("{:?} vs {:?}", m.mode(), m.strategy()),
                );
            }
            if let Mode::Deamortized { budget } = m.mode() {
                if r.work.soft_writes + r.work.discarded > budget {
                    return fail("drain budget", Some(i), format!("{} writes", r.work.soft_writes));
                }
            }
        }
        Ok(report.work)
    }

    /// Flushed outputs of the current prefix without disturbing the state.
    pub fn outputs(&self) -> Outputs {
        let mut lpf_q = self.lpf.clone();
        let mut lpf = self.lpf_out.clone();
        lpf.extend(lpf_q.flush().expect("clone is unflushed"));
        let finish = |mut out: Vec<Factor>, last: Option<Factor>| {
            out.extend(last);
            out
        };
        Outputs {
            lrs: self.lrs.clone(),
            lpf,
            lz77: finish(self.lz77_out.clone(), self.lz77.clone().flush().expect("unflushed")),
            revlz: finish(
                self.revlz_out.clone(),
                self.revlz.clone().flush(&self.tree).expect("unflushed"),
            ),
            ovrevlz: finish(
                self.ovrevlz_out.clone(),
                self.ovrevlz.clone().flush(&self.tree).expect("unflushed"),
            ),
            mus: self.mus.intervals(),
        }
    }

    /// Compares the current prefix against every oracle.
    pub fn check_prefix(&self) -> Result<(), Mismatch> {
        let text = self.text();
        let out = self.outputs();
        check_arrays(text, &out.lrs, &out.lpf, true)?;
        check_lz77(text, &out.lz77)?;
        check_revlz(text, &out.revlz, false)?;
        check_revlz(text, &out.ovrevlz, true)?;
        let want = oracle::naive_mus(text).map_err(cap)?;
        compare("mus", &out.mus, &want)?;
        if self.checks.mirrors {
            let snap = self.tree.snapshot();
            for m in &self.mirrors {
                if m.snapshot() != snap {
                    return fail(
                        "mode/strategy topology",
                        Some(text.len()),
                        format!("{:?} {:?}", m.mode(), m.strategy()),
                    );
                }
            }
        }
        Ok(())
    }
}

fn cap(e: crate::Error) -> Mismatch {
    Mismatch {
        check: "oracle",
        position: None,
        detail: e.to_string(),
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outputs {
    pub lrs: Vec<usize>,
    pub lpf: Vec<(usize, usize)>,
    pub lz77: Vec<Factor>,
    pub revlz: Vec<Factor>,
    pub ovrevlz: Vec<Factor>,
    pub mus: Vec<crate::mus::Interval>,
}

/// LRS and emitted LPF against the oracles, plus the offline and
/// irreducible converters. `naive` selects the definition-literal oracles;
/// otherwise the suffix-array ones are used.
pub fn check_arrays(text: &[Letter], lrs: &[usize], lpf: &[(usize, usize)], naive: bool) -> Result<(), Mismatch> {
    let (want_lrs, want_lpf) = if naive {
        (
            oracle::naive_lrs(text).map_err(cap)?,
            oracle::naive_lpf(text).map_err(cap)?,
        )
    } else {
        (oracle::sa_lrs(text).map_err(cap)?, oracle::sa_lpf(text).map_err(cap)?)
    };
    compare("lrs", lrs, &want_lrs)?;
    let positions: Vec<usize> = lpf.iter().map(|p| p.0).collect();
    let expected: Vec<usize> = (1..=text.len()).collect();
    compare("lpf emission order", &positions, &expected)?;
    let values: Vec<usize> = lpf.iter().map(|p| p.1).collect();
    compare("lpf", &values, &want_lpf)?;
    check_converters(&want_lrs, &want_lpf)
}

/// Offline converters, compress/expand and the irreducible converters.
pub fn check_converters(lrs: &[usize], lpf: &[usize]) -> Result<(), Mismatch> {
    let conv = |e: crate::Error| Mismatch {
        check: "converter error",
        position: None,
        detail: e.to_string(),
    };
    compare("lrs_to_lpf", &arrays::lrs_to_lpf(lrs).map_err(conv)?, lpf)?;
    compare("lpf_to_lrs", &arrays::lpf_to_lrs(lpf).map_err(conv)?, lrs)?;
    let irr_lrs = arrays::compress(lrs, ArrayKind::Lrs).map_err(conv)?;
    let irr_lpf = arrays::compress(lpf, ArrayKind::Lpf).map_err(conv)?;
    compare("expand lrs", &arrays::expand(&irr_lrs).map_err(conv)?, lrs)?;
    compare("expand lpf", &arrays::expand(&irr_lpf).map_err(conv)?, lpf)?;
    let (got_lpf, touched_a) = arrays::irr_lrs_to_irr_lpf_counted(&irr_lrs).map_err(conv)?;
    compare("irr lrs->lpf", &got_lpf.entries, &irr_lpf.entries)?;
    let (got_lrs, touched_b) = arrays::irr_lpf_to_irr_lrs_counted(&irr_lpf).map_err(conv)?;
    compare("irr lpf->lrs", &got_lrs.entries, &irr_lrs.entries)?;
    let r = irr_lrs.len() + irr_lpf.len();
    if touched_a > 2 * r + 2 || touched_b > 3 * r + 2 {
        return fail(
            "irreducible work",
            None,
            format!("touched {touched_a}/{touched_b} for r = {r}"),
        );
    }
    Ok(())
}

fn boundaries(fs: &[Factor]) -> Vec<(usize, usize, bool)> {
    fs.iter().map(|f| (f.start, f.len(), f.is_literal())).collect()
}

/// LZ77 boundaries against the greedy oracle and the decode round trip.
pub fn check_lz77(text: &[Letter], got: &[Factor]) -> Result<(), Mismatch> {
    let want = oracle::naive_lz77(text).map_err(cap)?;
    compare("lz77", &boundaries(got), &boundaries(&want))?;
    round_trip("lz77 decode", text, got)
}

fn round_trip(check: &'static str, text: &[Letter], fs: &[Factor]) -> Result<(), Mismatch> {
    match decode(fs) {
        Ok(t) if t == text => Ok(()),
        Ok(t) => fail(check, first_divergence(&t, text), "decoded text differs"),
        Err(e) => fail(check, None, e.to_string()),
    }
}

/// Reversed-LZ boundaries against the oracle; references checked directly
/// (the reversed copy must end before the factor, or for the overlapping
/// variant before the factor's end).
pub fn check_revlz(text: &[Letter], got: &[Factor], overlapping: bool) -> Result<(), Mismatch> {
    let name = if overlapping { "ovrevlz" } else { "revlz" };
    let want = oracle::naive_revlz(text, overlapping).map_err(cap)?;
    compare(name, &boundaries(got), &boundaries(&want))?;
    for f in got {
        if let FactorKind::Copy { ref_pos, len, .. } = f.kind {
            let limit = if overlapping { f.end() } else { f.start - 1 };
            let ok = ref_pos >= 1
                && ref_pos + len - 1 <= limit
                && text[ref_pos - 1..ref_pos - 1 + len]
                    .iter()
                    .eq(text[f.start - 1..f.end()].iter().rev());
            if !ok {
                return fail(name, Some(f.start), format!("bad reference {f}"));
            }
        }
    }
    if overlapping {
        Ok(())
    } else {
        round_trip("revlz decode", text, got)
    }
}
