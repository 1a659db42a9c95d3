//! Brute-force reference implementations, written from the definitions and
//! sharing no code with the streaming modules.
//!
//! Inputs are capped: [`CUBIC_CAP`] for the factorization, MUS and palindrome
//! oracles, [`QUADRATIC_CAP`] for the array oracles. The suffix-array oracles
//! ([`sa_lrs`], [`sa_lpf`]) are a second, faster reference for long inputs.

use std::collections::HashMap;

use crate::factorize::Factor;
use crate::mus::Interval;
use crate::Error;

pub const CUBIC_CAP: usize = 4096;
pub const QUADRATIC_CAP: usize = 1 << 15;
pub const SA_CAP: usize = 1 << 22;

fn cap(text: &[u8], limit: usize) -> Result<(), Error> {
    if text.len() > limit {
        Err(Error::OracleCap {
            len: text.len(),
            cap: limit,
        })
    } else {
        Ok(())
    }
}

/// `LRS[i]`: longest suffix of `T[1..i]` also ending at some `e < i`.
/// Row `e` of the common-suffix table is rebuilt from row `e - 1`.
pub fn naive_lrs(text: &[u8]) -> Result<Vec<usize>, Error> {
    cap(text, QUADRATIC_CAP)?;
    let n = text.len();
    let mut out = vec![0; n];
    // common[e] = longest common suffix of T[..=e] and T[..=i] (0-based)
    let mut common = vec![0usize; n];
    for i in 0..n {
        for e in (0..i).rev() {
            common[e] = if text[e] == text[i] {
                if e == 0 {
                    1
                } else {
                    common[e - 1] + 1
                }
            } else {
                0
            };
            out[i] = out[i].max(common[e]);
        }
    }
    Ok(out)
}

/// `LPF[i]`: longest prefix of `T[i..n]` also starting at some `j < i`.
pub fn naive_lpf(text: &[u8]) -> Result<Vec<usize>, Error> {
    cap(text, QUADRATIC_CAP)?;
    let n = text.len();
    let mut out = vec![0; n];
    // common[j] = longest common prefix of T[j..] and T[i..] (0-based)
    let mut common = vec![0usize; n + 1];
    for i in (0..n).rev() {
        for j in 0..i {
            common[j] = if text[j] == text[i] { common[j + 1] + 1 } else { 0 };
            out[i] = out[i].max(common[j]);
        }
    }
    Ok(out)
}

/// Suffix array by prefix doubling.
pub fn suffix_array(text: &[u8]) -> Vec<usize> {
    let n = text.len();
    let mut sa: Vec<usize> = (0..n).collect();
    let mut rank: Vec<usize> = text.iter().map(|&c| c as usize + 1).collect();
    let mut tmp = vec![0; n];
    let mut k = 1;
    if n <= 1 {
        return sa;
    }
    loop {
        let key = |i: usize, rank: &[usize]| (rank[i], if i + k < n { rank[i + k] } else { 0 });
        sa.sort_unstable_by_key(|&i| key(i, &rank));
        tmp[sa[0]] = 1;
        for w in 1..n {
            tmp[sa[w]] = tmp[sa[w - 1]] + usize::from(key(sa[w], &rank) != key(sa[w - 1], &rank));
        }
        std::mem::swap(&mut rank, &mut tmp);
        if rank[sa[n - 1]] == n {
            break;
        }
        k *= 2;
    }
    sa
}

/// `lcp[r]` = longest common prefix of the suffixes at ranks `r - 1` and `r`.
pub fn lcp_array(text: &[u8], sa: &[usize]) -> Vec<usize> {
    let n = text.len();
    let mut rank = vec![0; n];
    for (r, &i) in sa.iter().enumerate() {
        rank[i] = r;
    }
    let mut lcp = vec![0; n];
    let mut h = 0usize;
    for i in 0..n {
        if rank[i] > 0 {
            let j = sa[rank[i] - 1];
            while i + h < n && j + h < n && text[i + h] == text[j + h] {
                h += 1;
            }
            lcp[rank[i]] = h;
            h = h.saturating_sub(1);
        } else {
            h = 0;
        }
    }
    lcp
}

/// For every suffix, the longest common prefix with any suffix on the chosen
/// side (`earlier`: starting before it, otherwise after it). Only the nearest
/// rank neighbours on that side can win.
fn nearest_side(text: &[u8], earlier: bool) -> Vec<usize> {
    let n = text.len();
    let sa = suffix_array(text);
    let lcp = lcp_array(text, &sa);
    let wins = |p: usize, me: usize| if earlier { p < me } else { p > me };
    let mut best = vec![0; n];
    // left to right over ranks
    let mut stack: Vec<(usize, usize)> = Vec::new();
    for r in 0..n {
        let mut carry = if r > 0 { lcp[r] } else { 0 };
        while let Some(&(p, l)) = stack.last() {
            if wins(p, sa[r]) {
                break;
            }
            carry = carry.min(l);
            stack.pop();
        }
        if !stack.is_empty() {
            best[sa[r]] = carry;
        }
        stack.push((sa[r], carry));
    }
    // right to left
    stack.clear();
    for r in (0..n).rev() {
        let mut carry = if r + 1 < n { lcp[r + 1] } else { 0 };
        while let Some(&(p, l)) = stack.last() {
            if wins(p, sa[r]) {
                break;
            }
            carry = carry.min(l);
            stack.pop();
        }
        if !stack.is_empty() {
            best[sa[r]] = best[sa[r]].max(carry);
        }
        stack.push((sa[r], carry));
    }
    best
}

/// LPF from the suffix array of `T`.
pub fn sa_lpf(text: &[u8]) -> Result<Vec<usize>, Error> {
    cap(text, SA_CAP)?;
    Ok(nearest_side(text, true))
}

/// LRS from the suffix array of `reverse(T)`: a suffix of `T[1..i]` ending
/// earlier is a prefix of the reversed text starting later.
pub fn sa_lrs(text: &[u8]) -> Result<Vec<usize>, Error> {
    cap(text, SA_CAP)?;
    let rev: Vec<u8> = text.iter().rev().copied().collect();
    let mut next = nearest_side(&rev, false);
    next.reverse();
    Ok(next)
}

fn occurs_in(hay: &[u8], needle: &[u8]) -> Option<usize> {
    if needle.is_empty() {
        return Some(0);
    }
    hay.windows(needle.len()).position(|w| w == needle)
}

/// Greedy LZ77: each factor is the longest prefix of the rest starting at
/// an earlier position (self-overlap allowed), or a literal.
pub fn naive_lz77(text: &[u8]) -> Result<Vec<Factor>, Error> {
    cap(text, CUBIC_CAP)?;
    let n = text.len();
    let mut out = Vec::new();
    let mut p = 0;
    while p < n {
        let mut best = (0, 0);
        for j in 0..p {
            let l = (0..n - p).take_while(|&k| text[j + k] == text[p + k]).count();
            if l > best.0 {
                best = (l, j);
            }
        }
        if best.0 == 0 {
            out.push(Factor::literal(p + 1, text[p]));
            p += 1;
        } else {
            out.push(Factor::copy(p + 1, best.1 + 1, best.0, false));
            p += best.0;
        }
    }
    Ok(out)
}

/// Greedy reversed LZ. A letter seen for the first time is a literal.
/// Otherwise, non-overlapping: the reverse of the factor occurs in
/// `T[1..p-1]`; overlapping: each prefix `F` of the factor has its reverse
/// inside the text up to the end of `F`.
pub fn naive_revlz(text: &[u8], overlapping: bool) -> Result<Vec<Factor>, Error> {
    cap(text, CUBIC_CAP)?;
    let n = text.len();
    let mut out = Vec::new();
    let mut p = 0;
    while p < n {
        let mut len = 0;
        let mut src = 0;
        let fresh = !text[..p].contains(&text[p]);
        while !fresh && p + len < n {
            let rev: Vec<u8> = text[p..=p + len].iter().rev().copied().collect();
            let window = if overlapping { &text[..=p + len] } else { &text[..p] };
            match occurs_in(window, &rev) {
                Some(at) => {
                    len += 1;
                    src = at;
                }
                None => break,
            }
        }
        if len == 0 {
            out.push(Factor::literal(p + 1, text[p]));
            p += 1;
        } else {
            out.push(Factor::copy(p + 1, src + 1, len, true));
            p += len;
        }
    }
    Ok(out)
}

/// Longest palindromic suffix of every prefix.
pub fn naive_lps(text: &[u8]) -> Result<Vec<usize>, Error> {
    cap(text, CUBIC_CAP)?;
    let is_pal = |s: &[u8]| s.iter().eq(s.iter().rev());
    Ok((1..=text.len())
        .map(|i| (1..=i).rev().find(|&l| is_pal(&text[i - l..i])).unwrap_or(0))
        .collect())
}

/// Minimal unique substrings: occur once, both one-letter trims repeat.
/// Lengths stop one past the longest repeating substring.
pub fn naive_mus(text: &[u8]) -> Result<Vec<Interval>, Error> {
    cap(text, CUBIC_CAP)?;
    let n = text.len();
    let mut out = Vec::new();
    // Empty trims always repeat (every text has at least two empty occurrences
    // counting positions 1..=n+1).
    let mut repeats_prev = vec![true; n + 1];
    for len in 1..=n {
        let mut counts: HashMap<&[u8], usize> = HashMap::new();
        for s in 0..=n - len {
            *counts.entry(&text[s..s + len]).or_default() += 1;
        }
        let repeats: Vec<bool> = (0..=n - len).map(|s| counts[&text[s..s + len]] >= 2).collect();
        for s in 0..=n - len {
            if !repeats[s] && repeats_prev[s] && repeats_prev[s + 1] {
                out.push(Interval::new(s + 1, s + len));
            }
        }
        if !repeats.iter().any(|&r| r) {
            break;
        }
        repeats_prev = repeats;
    }
    out.sort();
    Ok(out)
}
