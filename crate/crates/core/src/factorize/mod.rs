//! LZ77 and reversed-LZ factorizations, streamed one letter at a time.
//!
//! Factors are macro-scheme elements: a literal letter or a reference to an
//! earlier position with a length. Reversed references point at an
//! occurrence of the factor read backwards.

mod lz77;
mod palindrome;
mod revlz;

use std::fmt;
use std::str::FromStr;

pub use lz77::{Lz77Factorizer, Lz77Stream};
pub use palindrome::PalindromicSuffixes;
pub use revlz::{OvRevLzFactorizer, OvRevLzMatcher, RevLzFactorizer, RevLzMatcher};

use crate::tree::Letter;
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FactorKind {
    Literal(Letter),
    Copy { ref_pos: usize, len: usize, reversed: bool },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Factor {
    /// 1-based position of the factor's first letter.
    pub start: usize,
    pub kind: FactorKind,
}

impl Factor {
    pub fn literal(start: usize, c: Letter) -> Self {
        Factor {
            start,
            kind: FactorKind::Literal(c),
        }
    }

    pub fn copy(start: usize, ref_pos: usize, len: usize, reversed: bool) -> Self {
        Factor {
            start,
            kind: FactorKind::Copy { ref_pos, len, reversed },
        }
    }

    pub fn len(&self) -> usize {
        match self.kind {
            FactorKind::Literal(_) => 1,
            FactorKind::Copy { len, .. } => len,
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_literal(&self) -> bool {
        matches!(self.kind, FactorKind::Literal(_))
    }

    /// Last position covered by the factor.
    pub fn end(&self) -> usize {
        self.start + self.len() - 1
    }
}

/// `L:<byte>` or `C:<ref>:<len>[:R]`.
impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FactorKind::Literal(c) => write!(f, "L:{c}"),
            FactorKind::Copy { ref_pos, len, reversed } => {
                write!(f, "C:{ref_pos}:{len}")?;
                if reversed {
                    f.write_str(":R")?;
                }
                Ok(())
            }
        }
    }
}

/// A factor parsed from its text form, before its start is known.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParsedFactor(pub FactorKind);

impl FromStr for ParsedFactor {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let num = |p: &str| p.parse::<usize>().map_err(|e| format!("`{s}`: {e}"));
        match parts.as_slice() {
            ["L", b] => b
                .parse::<u8>()
                .map(|c| ParsedFactor(FactorKind::Literal(c)))
                .map_err(|e| format!("`{s}`: {e}")),
            ["C", r, l] | ["C", r, l, "R"] => Ok(ParsedFactor(FactorKind::Copy {
                ref_pos: num(r)?,
                len: num(l)?,
                reversed: parts.len() == 4,
            })),
            _ => Err(format!("`{s}` is not a factor")),
        }
    }
}

/// Assigns consecutive start positions to parsed factors.
pub fn with_starts(kinds: impl IntoIterator<Item = FactorKind>) -> Vec<Factor> {
    let mut start = 1;
    kinds
        .into_iter()
        .map(|kind| {
            let f = Factor { start, kind };
            start += f.len();
            f
        })
        .collect()
}

/// Rebuilds the text from LZ77 or non-overlapping reversed-LZ factors.
/// Forward copies run letter by letter, so they may overlap themselves;
/// reversed copies must lie entirely before the factor.
pub fn decode(factors: &[Factor]) -> Result<Vec<Letter>, Error> {
    let mut out: Vec<Letter> = Vec::new();
    for (index, f) in factors.iter().enumerate() {
        let fail = |reason: String| Error::Decode { index, reason };
        if f.start != out.len() + 1 {
            return Err(fail(format!(
                "starts at {} but {} letters precede it",
                f.start,
                out.len()
            )));
        }
        match f.kind {
            FactorKind::Literal(c) => out.push(c),
            FactorKind::Copy { ref_pos, len, reversed } => {
                if ref_pos == 0 || len == 0 {
                    return Err(fail("reference position and length must be positive".into()));
                }
                let here = out.len();
                if reversed {
                    if ref_pos + len - 1 > here {
                        return Err(fail(format!(
                            "reversed source {ref_pos}..{} ends past {here}",
                            ref_pos + len - 1
                        )));
                    }
                    for k in (0..len).rev() {
                        out.push(out[ref_pos - 1 + k]);
                    }
                } else {
                    if ref_pos > here {
                        return Err(fail(format!(
                            "source {ref_pos} is not before the factor start {}",
                            here + 1
                        )));
                    }
                    for k in 0..len {
                        out.push(out[ref_pos - 1 + k]);
                    }
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_form_round_trips() {
        let fs = [
            Factor::literal(1, b'a'),
            Factor::copy(2, 1, 3, false),
            Factor::copy(5, 2, 2, true),
        ];
        let text: Vec<String> = fs.iter().map(|f| f.to_string()).collect();
        assert_eq!(text, ["L:97", "C:1:3", "C:2:2:R"]);
        let parsed = with_starts(text.iter().map(|t| t.parse::<ParsedFactor>().unwrap().0));
        assert_eq!(parsed, fs);
        assert!("C:1".parse::<ParsedFactor>().is_err());
        assert!("L:300".parse::<ParsedFactor>().is_err());
    }

    #[test]
    fn decode_literal_and_errors() {
        assert_eq!(decode(&[Factor::literal(1, b'x')]).unwrap(), b"x");
        let bad = [Factor::literal(1, b'a'), Factor::copy(2, 2, 1, false)];
        assert!(matches!(decode(&bad), Err(Error::Decode { index: 1, .. })));
        let bad_rev = [Factor::literal(1, b'a'), Factor::copy(2, 1, 2, true)];
        assert!(matches!(decode(&bad_rev), Err(Error::Decode { index: 1, .. })));
        let gap = [Factor::literal(2, b'a')];
        assert!(matches!(decode(&gap), Err(Error::Decode { index: 0, .. })));
    }

    #[test]
    fn decode_self_overlapping_copy() {
        let fs = [Factor::literal(1, b'a'), Factor::copy(2, 1, 3, false)];
        assert_eq!(decode(&fs).unwrap(), b"aaaa");
    }
}
