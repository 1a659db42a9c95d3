use smallvec::SmallVec;

use crate::tree::Letter;

#[derive(Clone, Debug)]
struct PalNode {
    len: i64,
    link: u32,
    next: SmallVec<[(Letter, u32); 2]>,
}

impl PalNode {
    fn edge(&self, c: Letter) -> Option<u32> {
        self.next.iter().find(|e| e.0 == c).map(|e| e.1)
    }
}

/// Longest palindromic suffix of a growing text (palindromic tree).
/// Node 0 is the imaginary root of length -1, node 1 the empty palindrome.
#[derive(Clone, Debug)]
pub struct PalindromicSuffixes {
    text: Vec<Letter>,
    nodes: Vec<PalNode>,
    last: u32,
    last_work: usize,
}

impl Default for PalindromicSuffixes {
    fn default() -> Self {
        Self::new()
    }
}

impl PalindromicSuffixes {
    pub fn new() -> Self {
        let root = |len| PalNode {
            len,
            link: 0,
            next: SmallVec::new(),
        };
        PalindromicSuffixes {
            text: Vec::new(),
            nodes: vec![root(-1), root(0)],
            last: 1,
            last_work: 0,
        }
    }

    /// Suffix-link steps taken by the latest push.
    pub fn last_work(&self) -> usize {
        self.last_work
    }

    /// Length of the current longest palindromic suffix.
    pub fn longest(&self) -> usize {
        self.nodes[self.last as usize].len.max(0) as usize
    }

    /// Follows suffix links from `v` to the first palindrome `X` with `c·X·c`
    /// a suffix of the text.
    fn extendable(&mut self, mut v: u32, c: Letter) -> u32 {
        let i = self.text.len() as i64 - 1;
        loop {
            let before = i - self.nodes[v as usize].len - 1;
            if before >= 0 && self.text[before as usize] == c {
                return v;
            }
            v = self.nodes[v as usize].link;
            self.last_work += 1;
        }
    }

    pub fn push(&mut self, c: Letter) -> usize {
        self.text.push(c);
        self.last_work = 0;
        let cur = self.extendable(self.last, c);
        if let Some(existing) = self.nodes[cur as usize].edge(c) {
            self.last = existing;
            return self.longest();
        }
        let len = self.nodes[cur as usize].len + 2;
        let link = if len == 1 {
            1
        } else {
            let from = self.nodes[cur as usize].link;
            let w = self.extendable(from, c);
            self.nodes[w as usize]
                .edge(c)
                .expect("proper palindromic suffix exists")
        };
        let id = self.nodes.len() as u32;
        self.nodes.push(PalNode {
            len,
            link,
            next: SmallVec::new(),
        });
        self.nodes[cur as usize].next.push((c, id));
        self.last = id;
        self.longest()
    }
}
