use std::io;

use nrt_core::arrays::LpfQueue;
use nrt_core::factorize::{Factor, Lz77Stream, OvRevLzMatcher, RevLzMatcher};
use nrt_core::mus::{MusDelta, MusSet};
use nrt_core::tree::RoundWork;
use nrt_core::{Letter, SuffixTree};

use crate::emit::{Emitter, Record};
use crate::Command;

#[derive(Clone, Copy, Debug, Default)]
pub struct Streams {
    pub lrs: bool,
    pub lpf: bool,
    pub lz77: bool,
    pub revlz: bool,
    pub ovrevlz: bool,
    pub mus: bool,
}

impl Streams {
    pub fn for_command(cmd: Command) -> Self {
        let mut s = Streams::default();
        match cmd {
            Command::Lrs => s.lrs = true,
            Command::Lpf => s.lpf = true,
            Command::Lz77 => s.lz77 = true,
            Command::Revlz => s.revlz = true,
            Command::Ovrevlz => s.ovrevlz = true,
            Command::Mus => s.mus = true,
            Command::All => {
                s = Streams {
                    lrs: true,
                    lpf: true,
                    lz77: true,
                    revlz: true,
                    ovrevlz: true,
                    mus: true,
                }
            }
        }
        s
    }
}

/// Everything emitted, kept for `--verify`.
#[derive(Debug, Default)]
pub struct Recorded {
    pub lrs: Vec<usize>,
    pub lpf: Vec<(usize, usize)>,
    pub lz77: Vec<Factor>,
    pub revlz: Vec<Factor>,
    pub ovrevlz: Vec<Factor>,
    pub mus: Vec<MusDelta>,
}

/// All requested streams over one shared tree.
pub struct Engine {
    tree: SuffixTree,
    lrs: bool,
    lpf: Option<LpfQueue>,
    lz77: Option<Lz77Stream>,
    revlz: Option<RevLzMatcher>,
    ovrevlz: Option<OvRevLzMatcher>,
    mus: Option<MusSet>,
    record: Option<Recorded>,
}

impl Engine {
    pub fn new(tree: SuffixTree, s: Streams, keep: bool) -> Self {
        Engine {
            tree,
            lrs: s.lrs,
            lpf: s.lpf.then(LpfQueue::default),
            lz77: s.lz77.then(Lz77Stream::new),
            revlz: s.revlz.then(RevLzMatcher::new),
            ovrevlz: s.ovrevlz.then(OvRevLzMatcher::new),
            mus: s.mus.then(MusSet::new),
            record: keep.then(Recorded::default),
        }
    }

    pub fn text(&self) -> &[Letter] {
        self.tree.text()
    }

    pub fn recorded(&self) -> &Recorded {
        self.record.as_ref().expect("recording enabled")
    }

    fn emit<W: io::Write>(&mut self, out: &mut Emitter<W>, r: Record) -> io::Result<()> {
        out.write(&r)?;
        if let Some(rec) = self.record.as_mut() {
            match r {
                Record::Lrs { value, .. } => rec.lrs.push(value),
                Record::Lpf { pos, value } => rec.lpf.push((pos, value)),
                Record::Lz77(f) => rec.lz77.push(f),
                Record::Revlz(f) => rec.revlz.push(f),
                Record::Ovrevlz(f) => rec.ovrevlz.push(f),
                Record::Mus { delta, .. } => rec.mus.push(delta),
            }
        }
        Ok(())
    }

    pub fn push<W: io::Write>(&mut self, c: Letter, out: &mut Emitter<W>) -> io::Result<RoundWork> {
        let rev = self.revlz.as_mut().and_then(|m| m.advance(&self.tree, c));
        let ov = self.ovrevlz.as_mut().and_then(|m| m.advance(&self.tree, c));
        let report = self.tree.push_letter(c);
        let i = report.round;
        if let Some(m) = self.revlz.as_mut() {
            m.observe(&self.tree, &report);
        }
        if let Some(m) = self.ovrevlz.as_mut() {
            m.observe(&self.tree, &report);
        }

        if self.lrs {
            self.emit(
                out,
                Record::Lrs {
                    pos: i,
                    value: report.lrs,
                },
            )?;
        }
        if let Some(q) = self.lpf.as_mut() {
            for (pos, value) in q.push_lrs(report.lrs) {
                self.emit(out, Record::Lpf { pos, value })?;
            }
        }
        if let Some(f) = self.lz77.as_mut().and_then(|s| s.push(c, &report)) {
            self.emit(out, Record::Lz77(f))?;
        }
        if let Some(f) = rev {
            self.emit(out, Record::Revlz(f))?;
        }
        if let Some(f) = ov {
            self.emit(out, Record::Ovrevlz(f))?;
        }
        if let Some(m) = self.mus.as_mut() {
            let delta = m.update(&report);
            self.emit(out, Record::Mus { pos: i, delta })?;
        }
        Ok(report.work)
    }

    pub fn finish<W: io::Write>(&mut self, out: &mut Emitter<W>) -> io::Result<()> {
        const ONCE: &str = "engine finishes once";
        if let Some(q) = self.lpf.as_mut() {
            for (pos, value) in q.flush().expect(ONCE) {
                self.emit(out, Record::Lpf { pos, value })?;
            }
        }
        if let Some(f) = self.lz77.as_mut().and_then(|s| s.flush().expect(ONCE)) {
            self.emit(out, Record::Lz77(f))?;
        }
        if let Some(f) = self.revlz.as_mut().and_then(|m| m.flush(&self.tree).expect(ONCE)) {
            self.emit(out, Record::Revlz(f))?;
        }
        if let Some(f) = self.ovrevlz.as_mut().and_then(|m| m.flush(&self.tree).expect(ONCE)) {
            self.emit(out, Record::Ovrevlz(f))?;
        }
        Ok(())
    }
}
