//! Canonical keys for small colorings: equal keys exactly when two colorings
//! are isomorphic under vertex permutation (optionally composed with a color
//! permutation). Branch-and-bound over vertex orderings, minimizing the
//! emitted attribute/edge-color string, with twin-class pruning so highly
//! symmetric inputs stay cheap.

use crate::coloring::{EdgeColoring, CANONICAL_MAX_VERTICES};
use std::cmp::Ordering;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CanonicalError {
    #[error("canonical form supports at most {CANONICAL_MAX_VERTICES} vertices (got {0})")]
    TooLarge(usize),
    #[error("attribute vector length {0} does not match vertex count {1}")]
    AttrLength(usize, usize),
}

/// Opaque isomorphism key. Two keys compare equal iff the colorings are
/// isomorphic under the options the key was built with.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey {
    n: usize,
    k: usize,
    color_perm: bool,
    bytes: Vec<u8>,
}

impl CanonicalKey {
    pub fn bytes(&self) -> &[u8] {
        &self.bytes
    }
}

/// Canonical key under vertex permutation; `color_perm` additionally
/// quotients by relabeling of the colors.
pub fn canonical_key(g: &EdgeColoring, color_perm: bool) -> Result<CanonicalKey, CanonicalError> {
    canonical_key_with_attrs(g, None, color_perm)
}

/// Canonical key where each vertex carries an attribute that permutations
/// must preserve (used for part-labeled configurations).
pub fn canonical_key_with_attrs(
    g: &EdgeColoring,
    attrs: Option<&[u8]>,
    color_perm: bool,
) -> Result<CanonicalKey, CanonicalError> {
    let n = g.n();
    if n > CANONICAL_MAX_VERTICES {
        return Err(CanonicalError::TooLarge(n));
    }
    if let Some(a) = attrs {
        if a.len() != n {
            return Err(CanonicalError::AttrLength(a.len(), n));
        }
    }
    let mut search = Search {
        g,
        attrs,
        color_perm,
        n,
        twin_class: twin_classes(g, attrs),
        perm: Vec::with_capacity(n),
        used: vec![false; n],
        cur: Vec::with_capacity(n * (n + 1) / 2),
        cmap: vec![u8::MAX; g.k().max(1)],
        cnext: 0,
        best: None,
    };
    search.place(true);
    Ok(CanonicalKey {
        n,
        k: g.k(),
        color_perm,
        bytes: search.best.unwrap_or_default(),
    })
}

/// Partition vertices into "twin" classes: `u` and `v` are twins when
/// `color(u, x) = color(v, x)` for every other vertex `x` (and attributes
/// match). Swapping two twins is an automorphism, so the search only needs
/// the least unused member of each class at every position.
fn twin_classes(g: &EdgeColoring, attrs: Option<&[u8]>) -> Vec<usize> {
    let n = g.n();
    let mut class = (0..n).collect::<Vec<_>>();
    for v in 0..n {
        'cand: for u in 0..v {
            if class[u] != u {
                continue;
            }
            if let Some(a) = attrs {
                if a[u] != a[v] {
                    continue;
                }
            }
            for x in 0..n {
                if x != u && x != v && g.color(u, x) != g.color(v, x) {
                    continue 'cand;
                }
            }
            class[v] = u;
            break;
        }
    }
    class
}

struct Search<'a> {
    g: &'a EdgeColoring,
    attrs: Option<&'a [u8]>,
    color_perm: bool,
    n: usize,
    twin_class: Vec<usize>,
    perm: Vec<usize>,
    used: Vec<bool>,
    cur: Vec<u8>,
    /// original color -> canonical color (u8::MAX = unassigned)
    cmap: Vec<u8>,
    cnext: u8,
    best: Option<Vec<u8>>,
}

impl Search<'_> {
    /// Extends the vertex ordering by one position, keeping `cur` the emitted
    /// string. `tight` means `cur` equals `best` on the shared prefix; an
    /// untight path is strictly smaller and its first leaf replaces `best`.
    /// Returns whether `best` was replaced anywhere below.
    fn place(&mut self, tight_in: bool) -> bool {
        let p = self.perm.len();
        if p == self.n {
            if self.best.is_none() || !tight_in {
                self.best = Some(self.cur.clone());
                return true;
            }
            return false;
        }
        let mut tight = tight_in;
        let mut improved_any = false;
        for v in 0..self.n {
            if self.used[v] {
                continue;
            }
            // Twin pruning: only the least *unused* member of each class.
            let rep = self.twin_class[v];
            if (0..v).any(|u| !self.used[u] && self.twin_class[u] == rep) {
                continue;
            }

            let mark = self.cur.len();
            let cmark = self.cnext;
            let mut assigned: Vec<usize> = Vec::new();
            let compare = tight && self.best.is_some();
            let mut seg_cmp = Ordering::Equal;
            let mut pruned = false;

            if let Some(a) = self.attrs {
                seg_cmp = self.push_byte(a[v], compare, seg_cmp);
                pruned = seg_cmp == Ordering::Greater;
            }
            if !pruned {
                for q in 0..p {
                    let raw = self.g.color(self.perm[q], v);
                    let byte = if self.color_perm {
                        if self.cmap[raw] == u8::MAX {
                            self.cmap[raw] = self.cnext;
                            assigned.push(raw);
                            self.cnext += 1;
                        }
                        self.cmap[raw]
                    } else {
                        raw as u8
                    };
                    seg_cmp = self.push_byte(byte, compare, seg_cmp);
                    if seg_cmp == Ordering::Greater {
                        pruned = true;
                        break;
                    }
                }
            }

            if !pruned {
                self.perm.push(v);
                self.used[v] = true;
                let child_tight = compare && seg_cmp == Ordering::Equal;
                if self.place(child_tight) {
                    improved_any = true;
                    // The new best passes through our current prefix, so
                    // remaining candidates compare tightly against it.
                    tight = true;
                }
                self.used[v] = false;
                self.perm.pop();
            }

            self.cur.truncate(mark);
            for raw in assigned {
                self.cmap[raw] = u8::MAX;
            }
            self.cnext = cmark;
        }
        improved_any
    }

    #[inline]
    fn push_byte(&mut self, byte: u8, compare: bool, seg_cmp: Ordering) -> Ordering {
        let pos = self.cur.len();
        self.cur.push(byte);
        if !compare || seg_cmp != Ordering::Equal {
            return seg_cmp;
        }
        byte.cmp(&self.best.as_ref().unwrap()[pos])
    }
}
