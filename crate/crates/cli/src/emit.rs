use std::io::{self, Write};

use clap::ValueEnum;
use nrt_core::factorize::{Factor, FactorKind};
use nrt_core::mus::MusDelta;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    JsonLines,
}

#[derive(Clone, Debug)]
pub enum Record {
    Lrs { pos: usize, value: usize },
    Lpf { pos: usize, value: usize },
    Lz77(Factor),
    Revlz(Factor),
    Ovrevlz(Factor),
    Mus { pos: usize, delta: MusDelta },
}

impl Record {
    fn stream(&self) -> &'static str {
        match self {
            Record::Lrs { .. } => "lrs",
            Record::Lpf { .. } => "lpf",
            Record::Lz77(_) => "lz77",
            Record::Revlz(_) => "revlz",
            Record::Ovrevlz(_) => "ovrevlz",
            Record::Mus { .. } => "mus",
        }
    }

    fn text(&self) -> String {
        match self {
            Record::Lrs { value, .. } => value.to_string(),
            Record::Lpf { pos, value } => format!("{pos}:{value}"),
            Record::Lz77(f) | Record::Revlz(f) | Record::Ovrevlz(f) => f.to_string(),
            Record::Mus { delta, .. } => {
                let added = delta.added.iter().map(|iv| format!("+{},{}", iv.start, iv.end));
                let removed = delta.removed.iter().map(|iv| format!("-{},{}", iv.start, iv.end));
                added.chain(removed).collect::<Vec<_>>().join(" ")
            }
        }
    }

    fn json(&self) -> Value {
        match self {
            Record::Lrs { pos, value } => json!({ "i": pos, "lrs": value }),
            Record::Lpf { pos, value } => json!({ "j": pos, "lpf": value }),
            Record::Lz77(f) | Record::Revlz(f) | Record::Ovrevlz(f) => factor_json(f),
            Record::Mus { pos, delta } => json!({
                "i": pos,
                "added": delta.added.iter().map(|iv| [iv.start, iv.end]).collect::<Vec<_>>(),
                "removed": delta.removed.iter().map(|iv| [iv.start, iv.end]).collect::<Vec<_>>(),
            }),
        }
    }
}

fn factor_json(f: &Factor) -> Value {
    match f.kind {
        FactorKind::Literal(c) => json!({ "type": "literal", "letter": c }),
        FactorKind::Copy {
            ref_pos,
            len,
            reversed: false,
        } => json!({ "type": "copy", "ref": ref_pos, "len": len }),
        FactorKind::Copy {
            ref_pos,
            len,
            reversed: true,
        } => {
            json!({ "type": "copy", "ref": ref_pos, "len": len, "reversed": true })
        }
    }
}

/// Writes one line per record; in `all` mode each line names its stream.
pub struct Emitter<W: Write> {
    out: W,
    format: Format,
    tagged: bool,
}

impl<W: Write> Emitter<W> {
    pub fn new(out: W, format: Format, tagged: bool) -> Self {
        Emitter { out, format, tagged }
    }

    pub fn write(&mut self, r: &Record) -> io::Result<()> {
        match self.format {
            Format::Text if self.tagged => writeln!(self.out, "{} {}", r.stream(), r.text()),
            Format::Text => writeln!(self.out, "{}", r.text()),
            Format::JsonLines => {
                let mut v = r.json();
                if self.tagged {
                    let mut tagged = serde_json::Map::new();
                    tagged.insert("stream".into(), r.stream().into());
                    tagged.extend(v.as_object_mut().expect("records are objects").clone());
                    v = Value::Object(tagged);
                }
                writeln!(self.out, "{v}")
            }
        }
    }

    pub fn flush(&mut self) -> io::Result<()> {
        self.out.flush()
    }
}
