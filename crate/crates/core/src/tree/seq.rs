//! Arena-backed AVL sequence with parent pointers.
//!
//! Elements are addressed by stable handles, so their position (rank) can be
//! recovered in `O(log n)` after arbitrary insertions elsewhere. Each element
//! carries a `u32` key and a `u32` payload; every subtree caches its size and
//! the minimum key it contains, which gives range-argmin queries by rank.

use std::cmp::Ordering;

pub(crate) const NIL: u32 = u32::MAX;

#[derive(Clone, Debug)]
struct Slot {
    left: u32,
    right: u32,
    parent: u32,
    height: u8,
    size: u32,
    key: u32,
    min: u32,
    payload: u32,
}

#[derive(Clone, Debug, Default)]
pub(crate) struct Seq {
    slots: Vec<Slot>,
    root: u32,
}

impl Seq {
    pub fn new() -> Self {
        Seq {
            slots: Vec::new(),
            root: NIL,
        }
    }

    pub fn len(&self) -> usize {
        self.size(self.root) as usize
    }

    pub fn payload(&self, h: u32) -> u32 {
        self.slots[h as usize].payload
    }

    /// Replaces the key and payload of `h`.
    pub fn set(&mut self, h: u32, key: u32, payload: u32) {
        let slot = &mut self.slots[h as usize];
        slot.key = key;
        slot.payload = payload;
        let mut cur = h;
        while cur != NIL {
            self.refresh(cur);
            cur = self.slots[cur as usize].parent;
        }
    }

    fn size(&self, h: u32) -> u32 {
        if h == NIL {
            0
        } else {
            self.slots[h as usize].size
        }
    }

    fn height(&self, h: u32) -> i32 {
        if h == NIL {
            0
        } else {
            self.slots[h as usize].height as i32
        }
    }

    fn min(&self, h: u32) -> u32 {
        if h == NIL {
            u32::MAX
        } else {
            self.slots[h as usize].min
        }
    }

    fn alloc(&mut self, key: u32, payload: u32) -> u32 {
        let h = self.slots.len() as u32;
        self.slots.push(Slot {
            left: NIL,
            right: NIL,
            parent: NIL,
            height: 1,
            size: 1,
            key,
            min: key,
            payload,
        });
        h
    }

    fn refresh(&mut self, h: u32) {
        let (l, r) = {
            let s = &self.slots[h as usize];
            (s.left, s.right)
        };
        let height = 1 + self.height(l).max(self.height(r));
        let size = 1 + self.size(l) + self.size(r);
        let min = self.slots[h as usize].key.min(self.min(l)).min(self.min(r));
        let s = &mut self.slots[h as usize];
        s.height = height as u8;
        s.size = size;
        s.min = min;
    }

    fn replace_child(&mut self, parent: u32, old: u32, new: u32) {
        if parent == NIL {
            self.root = new;
        } else if self.slots[parent as usize].left == old {
            self.slots[parent as usize].left = new;
        } else {
            self.slots[parent as usize].right = new;
        }
    }

    fn rotate_left(&mut self, x: u32) -> u32 {
        let y = self.slots[x as usize].right;
        let inner = self.slots[y as usize].left;
        let up = self.slots[x as usize].parent;
        self.slots[x as usize].right = inner;
        if inner != NIL {
            self.slots[inner as usize].parent = x;
        }
        self.slots[y as usize].parent = up;
        self.replace_child(up, x, y);
        self.slots[y as usize].left = x;
        self.slots[x as usize].parent = y;
        self.refresh(x);
        self.refresh(y);
        y
    }

    fn rotate_right(&mut self, x: u32) -> u32 {
        let y = self.slots[x as usize].left;
        let inner = self.slots[y as usize].right;
        let up = self.slots[x as usize].parent;
        self.slots[x as usize].left = inner;
        if inner != NIL {
            self.slots[inner as usize].parent = x;
        }
        self.slots[y as usize].parent = up;
        self.replace_child(up, x, y);
        self.slots[y as usize].right = x;
        self.slots[x as usize].parent = y;
        self.refresh(x);
        self.refresh(y);
        y
    }

    /// Walks from `h` to the root, restoring heights, aggregates and balance.
    fn fix_upwards(&mut self, mut h: u32) {
        while h != NIL {
            self.refresh(h);
            let (l, r) = {
                let s = &self.slots[h as usize];
                (s.left, s.right)
            };
            let balance = self.height(l) - self.height(r);
            if balance > 1 {
                let (ll, lr) = {
                    let s = &self.slots[l as usize];
                    (s.left, s.right)
                };
                if self.height(ll) < self.height(lr) {
                    self.rotate_left(l);
                }
                h = self.rotate_right(h);
            } else if balance < -1 {
                let (rl, rr) = {
                    let s = &self.slots[r as usize];
                    (s.left, s.right)
                };
                if self.height(rr) < self.height(rl) {
                    self.rotate_right(r);
                }
                h = self.rotate_left(h);
            }
            h = self.slots[h as usize].parent;
        }
    }

    fn attach(&mut self, parent: u32, left: bool, h: u32) {
        self.slots[h as usize].parent = parent;
        if parent == NIL {
            self.root = h;
        } else if left {
            self.slots[parent as usize].left = h;
        } else {
            self.slots[parent as usize].right = h;
        }
        self.fix_upwards(parent);
    }

    /// Inserts a new element as the first of the sequence.
    pub fn push_front(&mut self, key: u32, payload: u32) -> u32 {
        let h = self.alloc(key, payload);
        let mut cur = self.root;
        if cur == NIL {
            self.attach(NIL, true, h);
            return h;
        }
        while self.slots[cur as usize].left != NIL {
            cur = self.slots[cur as usize].left;
        }
        self.attach(cur, true, h);
        h
    }

    pub fn insert_after(&mut self, at: u32, key: u32, payload: u32) -> u32 {
        let h = self.alloc(key, payload);
        let right = self.slots[at as usize].right;
        if right == NIL {
            self.attach(at, false, h);
        } else {
            let mut cur = right;
            while self.slots[cur as usize].left != NIL {
                cur = self.slots[cur as usize].left;
            }
            self.attach(cur, true, h);
        }
        h
    }

    pub fn insert_before(&mut self, at: u32, key: u32, payload: u32) -> u32 {
        let h = self.alloc(key, payload);
        let left = self.slots[at as usize].left;
        if left == NIL {
            self.attach(at, true, h);
        } else {
            let mut cur = left;
            while self.slots[cur as usize].right != NIL {
                cur = self.slots[cur as usize].right;
            }
            self.attach(cur, false, h);
        }
        h
    }

    /// Inserts into a sequence kept sorted under `cmp`, where `cmp(p)` orders
    /// the new element against the element carrying payload `p`.
    pub fn insert_sorted<F>(&mut self, key: u32, payload: u32, mut cmp: F) -> u32
    where
        F: FnMut(u32) -> Ordering,
    {
        let h = self.alloc(key, payload);
        let mut cur = self.root;
        if cur == NIL {
            self.attach(NIL, true, h);
            return h;
        }
        loop {
            let go_left = cmp(self.slots[cur as usize].payload) == Ordering::Less;
            let next = if go_left {
                self.slots[cur as usize].left
            } else {
                self.slots[cur as usize].right
            };
            if next == NIL {
                self.attach(cur, go_left, h);
                return h;
            }
            cur = next;
        }
    }

    /// Last element whose payload compares `Less` or `Equal` to the probe,
    /// together with the first element comparing `Greater`. `cmp(p)` orders
    /// the element carrying payload `p` against the probe.
    pub fn neighbours<F>(&self, mut cmp: F) -> (Option<u32>, Option<u32>, usize)
    where
        F: FnMut(u32) -> Ordering,
    {
        let mut pred = None;
        let mut succ = None;
        let mut steps = 0;
        let mut cur = self.root;
        while cur != NIL {
            steps += 1;
            if cmp(self.slots[cur as usize].payload) == Ordering::Greater {
                succ = Some(cur);
                cur = self.slots[cur as usize].left;
            } else {
                pred = Some(cur);
                cur = self.slots[cur as usize].right;
            }
        }
        (pred, succ, steps)
    }

    /// Zero-based position of `h`.
    pub fn rank(&self, h: u32) -> usize {
        let mut r = self.size(self.slots[h as usize].left);
        let mut cur = h;
        let mut up = self.slots[h as usize].parent;
        while up != NIL {
            if self.slots[up as usize].right == cur {
                r += self.size(self.slots[up as usize].left) + 1;
            }
            cur = up;
            up = self.slots[up as usize].parent;
        }
        r as usize
    }

    /// Handle of the element with the smallest key among ranks `lo..=hi`.
    /// Ties resolve to the leftmost element.
    pub fn argmin(&self, lo: usize, hi: usize) -> Option<u32> {
        if lo > hi || hi >= self.len() {
            return None;
        }
        let mut best: Option<(u32, u32, bool)> = None;
        self.collect_min(self.root, 0, lo as u32, hi as u32, &mut best);
        let (_, h, whole) = best?;
        if !whole {
            return Some(h);
        }
        // `h` is a subtree fully inside the range: locate its leftmost minimum.
        let target = self.slots[h as usize].min;
        let mut cur = h;
        loop {
            let s = &self.slots[cur as usize];
            if self.min(s.left) == target {
                cur = s.left;
            } else if s.key == target {
                return Some(cur);
            } else {
                cur = s.right;
            }
        }
    }

    fn collect_min(&self, h: u32, offset: u32, lo: u32, hi: u32, best: &mut Option<(u32, u32, bool)>) {
        if h == NIL {
            return;
        }
        let s = &self.slots[h as usize];
        let end = offset + s.size - 1;
        if hi < offset || lo > end {
            return;
        }
        if lo <= offset && end <= hi {
            keep_min(best, s.min, h, true);
            return;
        }
        let here = offset + self.size(s.left);
        self.collect_min(s.left, offset, lo, hi, best);
        if lo <= here && here <= hi {
            keep_min(best, s.key, h, false);
        }
        self.collect_min(s.right, here + 1, lo, hi, best);
    }

    /// Payloads in sequence order.
    #[cfg(test)]
    pub fn payloads(&self) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.len());
        let mut stack = Vec::new();
        let mut cur = self.root;
        while cur != NIL || !stack.is_empty() {
            while cur != NIL {
                stack.push(cur);
                cur = self.slots[cur as usize].left;
            }
            let h = stack.pop().unwrap();
            out.push(self.slots[h as usize].payload);
            cur = self.slots[h as usize].right;
        }
        out
    }

    #[cfg(test)]
    fn check_balance(&self, h: u32) -> i32 {
        if h == NIL {
            return 0;
        }
        let s = &self.slots[h as usize];
        let l = self.check_balance(s.left);
        let r = self.check_balance(s.right);
        assert!((l - r).abs() <= 1, "unbalanced at {h}");
        assert_eq!(s.height as i32, 1 + l.max(r));
        if s.left != NIL {
            assert_eq!(self.slots[s.left as usize].parent, h);
        }
        if s.right != NIL {
            assert_eq!(self.slots[s.right as usize].parent, h);
        }
        1 + l.max(r)
    }
}

fn keep_min(best: &mut Option<(u32, u32, bool)>, value: u32, handle: u32, whole: bool) {
    if best.is_none_or(|(v, _, _)| value < v) {
        *best = Some((value, handle, whole));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn positional_inserts_match_vec_model() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut seq = Seq::new();
        let mut model: Vec<(u32, u32)> = Vec::new(); // (handle, key)
        for i in 0..2000u32 {
            let key = rng.gen_range(0..500);
            let h = if model.is_empty() || rng.gen_bool(0.1) {
                let h = seq.push_front(key, i);
                model.insert(0, (h, key));
                h
            } else {
                let at = rng.gen_range(0..model.len());
                if rng.gen_bool(0.5) {
                    let h = seq.insert_after(model[at].0, key, i);
                    model.insert(at + 1, (h, key));
                    h
                } else {
                    let h = seq.insert_before(model[at].0, key, i);
                    model.insert(at, (h, key));
                    h
                }
            };
            assert_eq!(seq.payload(h), i);
        }
        seq.check_balance(seq.root);
        assert_eq!(seq.len(), model.len());
        for (pos, &(h, _)) in model.iter().enumerate() {
            assert_eq!(seq.rank(h), pos);
        }
        for _ in 0..500 {
            let a = rng.gen_range(0..model.len());
            let b = rng.gen_range(a..model.len());
            let expected = (a..=b).min_by_key(|&p| (model[p].1, p)).unwrap();
            assert_eq!(seq.argmin(a, b), Some(model[expected].0));
        }
        assert_eq!(seq.argmin(3, 2), None);
    }

    #[test]
    fn sorted_inserts_and_neighbours() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut seq = Seq::new();
        let mut values = Vec::new();
        for _ in 0..1000 {
            let v: u32 = rng.gen_range(0..10_000);
            seq.insert_sorted(0, v, |p| v.cmp(&p));
            values.push(v);
        }
        values.sort();
        assert_eq!(seq.payloads(), values);
        seq.check_balance(seq.root);
        for probe in [0u32, 17, 5000, 9999, 10_001] {
            let (pred, succ, _) = seq.neighbours(|p| p.cmp(&probe));
            let want_pred = values.iter().rev().find(|&&v| v <= probe).copied();
            let want_succ = values.iter().find(|&&v| v > probe).copied();
            assert_eq!(pred.map(|h| seq.payload(h)), want_pred);
            assert_eq!(succ.map(|h| seq.payload(h)), want_succ);
        }
    }
}
