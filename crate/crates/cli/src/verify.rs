use nrt_core::conformance::{check_arrays, check_lz77, check_revlz, first_divergence};
use nrt_core::mus::Interval;
use nrt_core::oracle;

use crate::engine::Engine;
use crate::Command;

pub enum Error {
    TooLong(String),
    Mismatch(String),
}

fn limit(cmd: Command) -> usize {
    match cmd {
        Command::Lrs | Command::Lpf => oracle::QUADRATIC_CAP,
        _ => oracle::CUBIC_CAP,
    }
}

pub fn check(cmd: Command, engine: &Engine) -> Result<(), Error> {
    let text = engine.text();
    if text.len() > limit(cmd) {
        return Err(Error::TooLong(format!(
            "--verify accepts at most {} letters for this command, input has {}",
            limit(cmd),
            text.len()
        )));
    }
    let rec = engine.recorded();
    let mismatch = |m: nrt_core::conformance::Mismatch| Error::Mismatch(m.to_string());
    let all = cmd == Command::All;
    if cmd == Command::Lrs || all {
        let want = oracle::naive_lrs(text).expect("length checked");
        if let Some(p) = first_divergence(&rec.lrs, &want) {
            return Err(Error::Mismatch(format!("lrs at position {p}")));
        }
    }
    if cmd == Command::Lpf || all {
        let lrs = oracle::naive_lrs(text).expect("length checked");
        check_arrays(text, &lrs, &rec.lpf, true).map_err(mismatch)?;
    }
    if cmd == Command::Lz77 || all {
        check_lz77(text, &rec.lz77).map_err(mismatch)?;
    }
    if cmd == Command::Revlz || all {
        check_revlz(text, &rec.revlz, false).map_err(mismatch)?;
    }
    if cmd == Command::Ovrevlz || all {
        check_revlz(text, &rec.ovrevlz, true).map_err(mismatch)?;
    }
    if cmd == Command::Mus || all {
        let mut set: Vec<Interval> = Vec::new();
        for d in &rec.mus {
            set.retain(|iv| Some(*iv) != d.removed);
            set.extend(&d.added);
        }
        set.sort();
        let want = oracle::naive_mus(text).expect("length checked");
        if let Some(k) = first_divergence(&set, &want) {
            let at = set.get(k - 1).or(want.get(k - 1)).map_or(0, |iv| iv.start);
            return Err(Error::Mismatch(format!("mus at position {at}")));
        }
    }
    Ok(())
}
