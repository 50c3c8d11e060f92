//! Constructive Gallai partitions: minimal module closures, partition
//! extraction by iterated module contraction, exact minimum-q search for
//! small orders, and partition statistics.

use crate::bitset::VertexSet;
use crate::certificate::{verify_certificate, PartitionCertificate};
use crate::clique::find_rainbow_triangle;
use crate::coloring::{ColoringBuilder, EdgeColoring};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Exhaustive minimum-q search is restricted to this many vertices.
pub const MIN_Q_MAX_VERTICES: usize = 12;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PartitionError {
    #[error("coloring contains a rainbow triangle at {0:?}")]
    NotGallai((usize, usize, usize)),
    #[error("need at least two vertices (got {0})")]
    TooSmall(usize),
    #[error("order {0} exceeds the exhaustive-search limit {1}")]
    OverLimit(usize, usize),
    #[error("no nontrivial partition found (unexpected for a Gallai coloring)")]
    NotFound,
    #[error("certificate does not verify against the coloring")]
    InvalidCertificate,
    #[error("reduced coloring uses color {0}, not one of the declared red/blue pair")]
    UnexpectedReducedColor(usize),
}

/// Smallest module containing `{u, v}`: closes under "any outside vertex
/// seeing two colors into the set joins the set".
pub fn minimal_module(g: &EdgeColoring, u: usize, v: usize) -> VertexSet {
    let n = g.n();
    assert!(u != v && u < n && v < n);
    let mut set = VertexSet::empty(n);
    set.insert(u);
    set.insert(v);
    // color each outside vertex shows toward the set so far
    let ref_color: Vec<usize> = (0..n)
        .map(|w| if w == u { 0 } else { g.color(w, u) })
        .collect();
    let mut pending: Vec<usize> = (0..n)
        .filter(|&w| w != u && w != v && g.color(w, v) != ref_color[w])
        .collect();
    while let Some(x) = pending.pop() {
        if set.contains(x) {
            continue;
        }
        set.insert(x);
        for w in 0..n {
            if !set.contains(w) && g.color(w, x) != ref_color[w] {
                pending.push(w);
            }
        }
    }
    set
}

/// Extracts a valid Gallai partition from a rainbow-triangle-free coloring
/// by contracting minimal pair modules until the quotient is prime (pairs
/// scanned lexicographically, so closures through vertex 0 come first). The
/// prime quotient of a Gallai coloring uses at most two colors; singletons
/// remain the output floor for colorings without nontrivial modules.
pub fn find_partition(g: &EdgeColoring) -> Result<PartitionCertificate, PartitionError> {
    if g.n() < 2 {
        return Err(PartitionError::TooSmall(g.n()));
    }
    if let Some(t) = find_rainbow_triangle(g) {
        return Err(PartitionError::NotGallai(t));
    }

    let n = g.n();
    let mut parts: Vec<VertexSet> = (0..n).map(|v| VertexSet::singleton(n, v)).collect();
    let mut quotient = g.clone();

    loop {
        let q = quotient.n();
        if q < 3 {
            break;
        }
        let mut module = None;
        'pairs: for i in 0..q {
            for j in (i + 1)..q {
                let m = minimal_module(&quotient, i, j);
                if m.len() < q {
                    module = Some(m);
                    break 'pairs;
                }
            }
        }
        match module {
            Some(m) => {
                let (next_parts, next_quotient) = contract(&parts, &quotient, &m);
                parts = next_parts;
                quotient = next_quotient;
            }
            None => break,
        }
    }

    if quotient.used_colors().len() > 2 {
        return Err(PartitionError::NotFound);
    }
    let cert = PartitionCertificate {
        colors_between: quotient.used_colors(),
        reduced: quotient,
        parts,
    };
    debug_assert!(verify_certificate(g, &cert));
    Ok(cert)
}

/// Merges the quotient vertices in `module` into a single part (placed at
/// the least involved index) and rebuilds the quotient coloring.
fn contract(
    parts: &[VertexSet],
    quotient: &EdgeColoring,
    module: &VertexSet,
) -> (Vec<VertexSet>, EdgeColoring) {
    let q = quotient.n();
    let rep = module.first().expect("module is nonempty");
    let keep: Vec<usize> = (0..q)
        .filter(|&i| i == rep || !module.contains(i))
        .collect();

    let mut next_parts = Vec::with_capacity(keep.len());
    for &i in &keep {
        if i == rep {
            let mut merged = parts[rep].clone();
            for j in module.iter() {
                merged.union_with(&parts[j]);
            }
            next_parts.push(merged);
        } else {
            next_parts.push(parts[i].clone());
        }
    }

    let m = keep.len();
    let next_quotient = if m == 1 {
        EdgeColoring::single_vertex(quotient.k())
    } else {
        let mut b = ColoringBuilder::raw(m, quotient.k());
        for a in 0..m {
            for c in (a + 1)..m {
                b.set_color(a, c, quotient.color(keep[a], keep[c]))
                    .expect("colors preserved");
            }
        }
        b.build()
    };
    (next_parts, next_quotient)
}

/// Exhaustive minimum-q Gallai partition for `n <= limit` (hard cap 12).
///
/// Ties among minimum-q partitions break toward the lexicographically least
/// part containing vertex 0, then recursively on the remainder (equivalently:
/// least sequence of parts ordered by their minima).
pub fn find_min_q_partition(
    g: &EdgeColoring,
    limit: usize,
) -> Result<PartitionCertificate, PartitionError> {
    let n = g.n();
    if n < 2 {
        return Err(PartitionError::TooSmall(n));
    }
    let limit = limit.min(MIN_Q_MAX_VERTICES);
    if n > limit {
        return Err(PartitionError::OverLimit(n, limit));
    }
    if let Some(t) = find_rainbow_triangle(g) {
        return Err(PartitionError::NotGallai(t));
    }

    let mut search = MinQSearch::new(g);
    search.run(0, 0);
    let best = search.best.ok_or(PartitionError::NotFound)?;
    let cert = parts_to_certificate(g, &best);
    debug_assert!(verify_certificate(g, &cert));
    Ok(cert)
}

/// Minimum part count over all valid Gallai partitions; `None` when the
/// input has none (only possible on non-Gallai input).
pub fn min_q_value(g: &EdgeColoring) -> Option<usize> {
    let mut search = MinQSearch::new(g);
    search.run(0, 0);
    search.best.map(|p| p.len())
}

/// DFS over restricted-growth assignments with incremental validity: cross
/// part pairs stay monochromatic and at most two cross colors appear.
struct MinQSearch<'a> {
    g: &'a EdgeColoring,
    n: usize,
    assign: Vec<usize>,
    /// established color between part pairs (usize::MAX = none yet)
    pair_color: Vec<usize>,
    /// how many pair slots currently use each color
    color_refs: Vec<usize>,
    distinct_cross: usize,
    best: Option<Vec<Vec<usize>>>,
}

impl<'a> MinQSearch<'a> {
    fn new(g: &'a EdgeColoring) -> Self {
        let n = g.n();
        MinQSearch {
            g,
            n,
            assign: vec![usize::MAX; n],
            pair_color: vec![usize::MAX; n * n],
            color_refs: vec![0; g.k()],
            distinct_cross: 0,
            best: None,
        }
    }

    fn run(&mut self, v: usize, used: usize) {
        if let Some(best) = &self.best {
            if used > best.len() {
                return;
            }
        }
        if v == self.n {
            if used < 2 {
                return;
            }
            let parts = self.current_parts(used);
            if self
                .best
                .as_ref()
                .is_none_or(|b| used < b.len() || (used == b.len() && parts < *b))
            {
                self.best = Some(parts);
            }
            return;
        }
        for p in 0..=used {
            if p > v {
                break;
            }
            if let Some(undo) = self.try_assign(v, p) {
                self.assign[v] = p;
                self.run(v + 1, used.max(p + 1));
                self.assign[v] = usize::MAX;
                self.undo(undo);
            }
        }
    }

    /// Checks edges from `v` to settled vertices; records pair-color slots it
    /// establishes so they can be rolled back.
    fn try_assign(&mut self, v: usize, p: usize) -> Option<Vec<usize>> {
        let mut writes = Vec::new();
        for u in 0..v {
            let pu = self.assign[u];
            if pu == p {
                continue;
            }
            let c = self.g.color(u, v);
            let slot = pu.min(p) * self.n + pu.max(p);
            if self.pair_color[slot] == usize::MAX {
                self.pair_color[slot] = c;
                writes.push(slot);
                if self.color_refs[c] == 0 {
                    self.distinct_cross += 1;
                }
                self.color_refs[c] += 1;
                if self.distinct_cross > 2 {
                    self.undo(writes);
                    return None;
                }
            } else if self.pair_color[slot] != c {
                self.undo(writes);
                return None;
            }
        }
        Some(writes)
    }

    fn undo(&mut self, writes: Vec<usize>) {
        for slot in writes {
            let c = self.pair_color[slot];
            self.pair_color[slot] = usize::MAX;
            self.color_refs[c] -= 1;
            if self.color_refs[c] == 0 {
                self.distinct_cross -= 1;
            }
        }
    }

    fn current_parts(&self, used: usize) -> Vec<Vec<usize>> {
        let mut parts = vec![Vec::new(); used];
        for (v, &p) in self.assign.iter().enumerate() {
            parts[p].push(v);
        }
        parts
    }
}

fn parts_to_certificate(g: &EdgeColoring, parts: &[Vec<usize>]) -> PartitionCertificate {
    let n = g.n();
    let q = parts.len();
    let sets: Vec<VertexSet> = parts
        .iter()
        .map(|p| VertexSet::from_iter(n, p.iter().copied()))
        .collect();
    let mut b = ColoringBuilder::raw(q, g.k());
    for i in 0..q {
        for j in (i + 1)..q {
            b.set_color(i, j, g.color(parts[i][0], parts[j][0])).unwrap();
        }
    }
    let reduced = b.build();
    let mut colors_between: Vec<usize> = (0..q)
        .flat_map(|i| ((i + 1)..q).map(move |j| (i, j)))
        .map(|(i, j)| reduced.color(i, j))
        .collect();
    colors_between.sort_unstable();
    colors_between.dedup();
    PartitionCertificate {
        parts: sets,
        reduced,
        colors_between,
    }
}

/// Part-level statistics of a verified certificate with respect to a
/// red/blue pair of reduced colors.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PartitionStats {
    pub q: usize,
    /// parts with neither red nor blue internal edges
    pub p0: usize,
    /// parts with exactly one of red/blue inside
    pub p1: usize,
    /// parts with both red and blue inside
    pub p2: usize,
    /// indices of parts with at least one red internal edge
    pub v_r: Vec<usize>,
    pub v_b: Vec<usize>,
    /// red/blue degrees of each part in the reduced coloring
    pub d_r: Vec<usize>,
    pub d_b: Vec<usize>,
}

pub fn stats(
    g: &EdgeColoring,
    cert: &PartitionCertificate,
    red: usize,
    blue: usize,
) -> Result<PartitionStats, PartitionError> {
    if !verify_certificate(g, cert) {
        return Err(PartitionError::InvalidCertificate);
    }
    let q = cert.q();
    for i in 0..q {
        for j in (i + 1)..q {
            let c = cert.reduced.color(i, j);
            if c != red && c != blue {
                return Err(PartitionError::UnexpectedReducedColor(c));
            }
        }
    }

    let has_internal = |part: &VertexSet, color: usize| -> bool {
        let vs = part.to_vec();
        vs.iter()
            .enumerate()
            .any(|(a, &u)| vs[a + 1..].iter().any(|&v| g.color(u, v) == color))
    };

    let mut v_r = Vec::new();
    let mut v_b = Vec::new();
    for (i, part) in cert.parts.iter().enumerate() {
        if has_internal(part, red) {
            v_r.push(i);
        }
        if has_internal(part, blue) {
            v_b.push(i);
        }
    }
    let p2 = v_r.iter().filter(|i| v_b.contains(i)).count();
    let p1 = v_r.len() + v_b.len() - 2 * p2;
    let p0 = q - p1 - p2;
    let d_r = (0..q)
        .map(|i| {
            (0..q)
                .filter(|&j| j != i && cert.reduced.color(i, j) == red)
                .count()
        })
        .collect();
    let d_b = (0..q)
        .map(|i| {
            (0..q)
                .filter(|&j| j != i && cert.reduced.color(i, j) == blue)
                .count()
        })
        .collect();
    Ok(PartitionStats {
        q,
        p0,
        p1,
        p2,
        v_r,
        v_b,
        d_r,
        d_b,
    })
}
