//! Disjoint sets with an optional parity label on each element.
//!
//! The parity of an element is relative to the root of its class. Merging two
//! elements with a required relative parity either succeeds or reports a
//! conflict, which is how co-orientation propagation over a carried surface
//! detects one-sidedness.

use alloc::vec::Vec;

#[derive(Clone, Debug)]
pub(crate) struct ParityUnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
    // parity of the element relative to its parent
    parity: Vec<bool>,
    // set on a root when some merge inside its class contradicted parities
    conflict: Vec<bool>,
}

impl ParityUnionFind {
    pub(crate) fn new(len: usize) -> Self {
        ParityUnionFind {
            parent: (0..len).collect(),
            rank: alloc::vec![0; len],
            parity: alloc::vec![false; len],
            conflict: alloc::vec![false; len],
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.parent.len()
    }

    /// Root of `x` and the parity of `x` relative to that root.
    pub(crate) fn find(&mut self, x: usize) -> (usize, bool) {
        let mut path = Vec::new();
        let mut cur = x;
        while self.parent[cur] != cur {
            path.push(cur);
            cur = self.parent[cur];
        }
        let root = cur;
        // Compress from the node closest to the root outwards.
        let mut acc = false;
        for &node in path.iter().rev() {
            acc ^= self.parity[node];
            self.parity[node] = acc;
            self.parent[node] = root;
        }
        (root, if path.is_empty() { false } else { self.parity[x] })
    }

    /// Merge the classes of `a` and `b`, requiring `parity(a) ^ parity(b) == odd`.
    pub(crate) fn union(&mut self, a: usize, b: usize, odd: bool) {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            if pa ^ pb != odd {
                self.conflict[ra] = true;
            }
            return;
        }
        let (big, small) = if self.rank[ra] >= self.rank[rb] { (ra, rb) } else { (rb, ra) };
        self.parent[small] = big;
        self.parity[small] = pa ^ pb ^ odd;
        self.conflict[big] |= self.conflict[small];
        if self.rank[big] == self.rank[small] {
            self.rank[big] += 1;
        }
    }

    pub(crate) fn has_conflict(&mut self, x: usize) -> bool {
        let (r, _) = self.find(x);
        self.conflict[r]
    }

    /// Dense class labels `0..k` in order of first appearance.
    pub(crate) fn labels(&mut self) -> (Vec<usize>, usize) {
        let n = self.len();
        let mut label_of_root = alloc::vec![usize::MAX; n];
        let mut labels = Vec::with_capacity(n);
        let mut next = 0;
        for x in 0..n {
            let (r, _) = self.find(x);
            if label_of_root[r] == usize::MAX {
                label_of_root[r] = next;
                next += 1;
            }
            labels.push(label_of_root[r]);
        }
        (labels, next)
    }
}
