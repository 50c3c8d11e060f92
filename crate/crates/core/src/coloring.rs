//! Storage and serialization of edge colorings of complete graphs.
//!
//! An [`EdgeColoring`] assigns exactly one of `k` colors to every edge of the
//! complete graph on `n` vertices and keeps one neighborhood bitset per color
//! per vertex. Colorings are immutable once built; construction and mutation
//! go through [`ColoringBuilder`].

use crate::bitset::VertexSet;
use thiserror::Error;

/// Hard cap on vertex counts. Blow-up constructions top out well below this.
pub const MAX_VERTICES: usize = 4096;

/// Largest `n` accepted by [`canonical_key`](crate::canonical::canonical_key).
pub const CANONICAL_MAX_VERTICES: usize = 16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ColoringError {
    #[error("vertex count must be at least 1 (got {0})")]
    ZeroVertices(usize),
    #[error("vertex count {0} exceeds the supported maximum {MAX_VERTICES}")]
    TooManyVertices(usize),
    #[error("color count must be at least 1 (got {0})")]
    ZeroColors(usize),
    #[error("color {color} out of range for {k} colors")]
    ColorOutOfRange { color: usize, k: usize },
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("cannot restrict to an empty vertex set")]
    EmptyRestriction,
    #[error("restriction set contains vertex {vertex} but the coloring has {n} vertices")]
    RestrictionOutOfRange { vertex: usize, n: usize },
}

/// Parse failure for the `.gec` text format, with a 1-based line number.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("gec parse error at line {line}: {message}")]
pub struct GecParseError {
    pub line: usize,
    pub message: String,
}

#[inline]
fn edge_index(n: usize, u: usize, v: usize) -> usize {
    debug_assert!(u < v && v < n);
    u * (2 * n - u - 1) / 2 + (v - u - 1)
}

/// A `k`-edge-coloring of the complete graph `K_n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EdgeColoring {
    n: usize,
    k: usize,
    /// Upper-triangle row-major: row `u` holds colors of `(u, u+1) .. (u, n-1)`.
    colors: Vec<u8>,
    /// `neighbors[c][v]` is the set of `u` with `color(u, v) = c`.
    neighbors: Vec<Vec<VertexSet>>,
}

impl EdgeColoring {
    /// All edges colored `fill`.
    pub fn new_complete(n: usize, k: usize, fill: usize) -> Result<Self, ColoringError> {
        ColoringBuilder::new(n, k, fill).map(ColoringBuilder::build)
    }

    /// A single vertex with a palette of `k` colors; `k = 0` is allowed here
    /// because there are no edges to color.
    pub fn single_vertex(k: usize) -> Self {
        EdgeColoring {
            n: 1,
            k,
            colors: Vec::new(),
            neighbors: vec![vec![VertexSet::empty(1)]; k],
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.n * (self.n - 1) / 2
    }

    /// Color of the edge `{u, v}`. Panics on `u == v` or out-of-range vertices.
    #[inline]
    pub fn color(&self, u: usize, v: usize) -> usize {
        assert!(u != v, "no self-edge {u}");
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        self.colors[edge_index(self.n, a, b)] as usize
    }

    /// Neighborhood of `v` in color class `c`.
    #[inline]
    pub fn neighbors(&self, c: usize, v: usize) -> &VertexSet {
        &self.neighbors[c][v]
    }

    /// Number of edges in each color class.
    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0usize; self.k];
        for &c in &self.colors {
            sizes[c as usize] += 1;
        }
        sizes
    }

    /// Colors that actually appear on at least one edge.
    pub fn used_colors(&self) -> Vec<usize> {
        let sizes = self.class_sizes();
        (0..self.k).filter(|&c| sizes[c] > 0).collect()
    }

    /// Induced coloring on `s`, vertices relabeled to `0..s.len()` preserving order.
    pub fn restrict(&self, s: &VertexSet) -> Result<EdgeColoring, ColoringError> {
        if s.is_empty() {
            return Err(ColoringError::EmptyRestriction);
        }
        let verts = s.to_vec();
        if let Some(&v) = verts.iter().find(|&&v| v >= self.n) {
            return Err(ColoringError::RestrictionOutOfRange { vertex: v, n: self.n });
        }
        let m = verts.len();
        let mut b = ColoringBuilder::raw(m, self.k.max(1));
        for i in 0..m {
            for j in (i + 1)..m {
                b.set_color(i, j, self.color(verts[i], verts[j]))?;
            }
        }
        Ok(b.build())
    }

    pub fn to_builder(&self) -> ColoringBuilder {
        ColoringBuilder {
            n: self.n,
            k: self.k,
            colors: self.colors.clone(),
        }
    }

    /// Functional single-edge recoloring: returns a new coloring.
    pub fn recolored(&self, u: usize, v: usize, c: usize) -> Result<EdgeColoring, ColoringError> {
        let mut b = self.to_builder();
        b.set_color(u, v, c)?;
        Ok(b.build())
    }

    /// Checks the structural invariants; used by tests and the gec loader.
    pub fn check_invariants(&self) -> bool {
        if self.n >= 2 && self.k == 0 {
            return false;
        }
        let mut total = 0usize;
        for c in 0..self.k {
            for v in 0..self.n {
                let nb = &self.neighbors[c][v];
                if nb.contains(v) {
                    return false;
                }
                for u in nb.iter() {
                    if self.color(u, v) != c {
                        return false;
                    }
                }
                total += nb.len();
            }
        }
        // Every vertex pair appears exactly once per endpoint across classes.
        total == self.n * (self.n - 1) * if self.k == 0 { 0 } else { 1 }
            || (self.n == 1 && total == 0)
    }

    /// Serializes to the `.gec` text format (bit-exact, LF line endings).
    pub fn to_gec(&self) -> String {
        let mut out = String::new();
        out.push_str("GEC 1\n");
        out.push_str(&format!("n={} k={}\n", self.n, self.k));
        for u in 0..self.n.saturating_sub(1) {
            let row: Vec<String> = ((u + 1)..self.n)
                .map(|v| self.color(u, v).to_string())
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parses the `.gec` text format.
    pub fn from_gec(text: &str) -> Result<EdgeColoring, GecParseError> {
        let err = |line: usize, message: &str| GecParseError {
            line,
            message: message.to_string(),
        };
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| err(1, "empty input"))?;
        if header != "GEC 1" {
            return Err(err(1, "expected header `GEC 1`"));
        }
        let meta = lines.next().ok_or_else(|| err(2, "missing `n=<n> k=<k>` line"))?;
        let mut n = None;
        let mut k = None;
        for field in meta.split_whitespace() {
            if let Some(val) = field.strip_prefix("n=") {
                n = val.parse::<usize>().ok();
            } else if let Some(val) = field.strip_prefix("k=") {
                k = val.parse::<usize>().ok();
            }
        }
        let (n, k) = match (n, k) {
            (Some(n), Some(k)) => (n, k),
            _ => return Err(err(2, "expected `n=<n> k=<k>`")),
        };
        if n == 0 || n > MAX_VERTICES {
            return Err(err(2, "vertex count out of range"));
        }
        if n >= 2 && k == 0 {
            return Err(err(2, "k=0 is only valid for a single vertex"));
        }
        if n == 1 {
            return Ok(EdgeColoring::single_vertex(k));
        }
        let mut b = ColoringBuilder::raw(n, k);
        for u in 0..(n - 1) {
            let lineno = 3 + u;
            let row = lines
                .next()
                .ok_or_else(|| err(lineno, "unexpected end of file"))?;
            let mut count = 0;
            for (j, tok) in row.split_whitespace().enumerate() {
                let v = u + 1 + j;
                if v >= n {
                    return Err(err(lineno, "too many entries in row"));
                }
                let c: usize = tok
                    .parse()
                    .map_err(|_| err(lineno, &format!("invalid color `{tok}`")))?;
                if c >= k {
                    return Err(err(lineno, &format!("color {c} out of range (k={k})")));
                }
                b.set_color(u, v, c).unwrap();
                count += 1;
            }
            if count != n - 1 - u {
                return Err(err(lineno, "wrong number of entries in row"));
            }
        }
        Ok(b.build())
    }
}

impl std::fmt::Debug for EdgeColoring {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "EdgeColoring(n={}, k={})", self.n, self.k)
    }
}

/// Single-owner mutable stage for building an [`EdgeColoring`].
#[derive(Clone)]
pub struct ColoringBuilder {
    n: usize,
    k: usize,
    colors: Vec<u8>,
}

impl ColoringBuilder {
    pub fn new(n: usize, k: usize, fill: usize) -> Result<Self, ColoringError> {
        if n == 0 {
            return Err(ColoringError::ZeroVertices(n));
        }
        if n > MAX_VERTICES {
            return Err(ColoringError::TooManyVertices(n));
        }
        if k == 0 {
            return Err(ColoringError::ZeroColors(k));
        }
        if k > 255 {
            return Err(ColoringError::ColorOutOfRange { color: k, k: 256 });
        }
        if fill >= k {
            return Err(ColoringError::ColorOutOfRange { color: fill, k });
        }
        Ok(ColoringBuilder {
            n,
            k,
            colors: vec![fill as u8; n * (n - 1) / 2],
        })
    }

    /// Like `new` but without the public-API checks; fill color 0.
    pub(crate) fn raw(n: usize, k: usize) -> Self {
        ColoringBuilder {
            n,
            k,
            colors: vec![0; n * (n - 1) / 2],
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn set_color(&mut self, u: usize, v: usize, c: usize) -> Result<&mut Self, ColoringError> {
        if u == v {
            return Err(ColoringError::SelfLoop(u));
        }
        if u >= self.n {
            return Err(ColoringError::VertexOutOfRange { vertex: u, n: self.n });
        }
        if v >= self.n {
            return Err(ColoringError::VertexOutOfRange { vertex: v, n: self.n });
        }
        if c >= self.k {
            return Err(ColoringError::ColorOutOfRange { color: c, k: self.k });
        }
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        self.colors[edge_index(self.n, a, b)] = c as u8;
        Ok(self)
    }

    #[inline]
    pub fn color(&self, u: usize, v: usize) -> usize {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        self.colors[edge_index(self.n, a, b)] as usize
    }

    pub fn build(self) -> EdgeColoring {
        let ColoringBuilder { n, k, colors } = self;
        let mut neighbors = vec![vec![VertexSet::empty(n); n]; k];
        for u in 0..n {
            for v in (u + 1)..n {
                let c = colors[edge_index(n, u, v)] as usize;
                neighbors[c][u].insert(v);
                neighbors[c][v].insert(u);
            }
        }
        EdgeColoring {
            n,
            k,
            colors,
            neighbors,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn new_complete_basics() {
        let g = EdgeColoring::new_complete(1, 1, 0).unwrap();
        assert_eq!(g.edge_count(), 0);

        let g = EdgeColoring::new_complete(4, 2, 0).unwrap();
        assert_eq!(g.class_sizes(), vec![6, 0]);

        let g = EdgeColoring::new_complete(6, 3, 2).unwrap();
        assert_eq!(g.edge_count(), 15);
        assert_eq!(g.class_sizes(), vec![0, 0, 15]);
        assert!(g.check_invariants());
    }

    #[test]
    fn new_complete_errors() {
        assert!(matches!(
            EdgeColoring::new_complete(0, 1, 0),
            Err(ColoringError::ZeroVertices(0))
        ));
        assert!(matches!(
            EdgeColoring::new_complete(3, 0, 0),
            Err(ColoringError::ZeroColors(0))
        ));
        assert!(matches!(
            EdgeColoring::new_complete(3, 2, 2),
            Err(ColoringError::ColorOutOfRange { .. })
        ));
        assert!(EdgeColoring::new_complete(MAX_VERTICES + 1, 1, 0).is_err());
    }

    #[test]
    fn set_color_read_back_and_symmetry() {
        let mut b = ColoringBuilder::new(3, 2, 0).unwrap();
        b.set_color(0, 1, 1).unwrap();
        let g = b.build();
        assert_eq!(g.color(0, 1), 1);
        assert_eq!(g.color(1, 0), 1);
        assert_eq!(g.class_sizes(), vec![2, 1]);

        // (1,0) and (0,1) writes are the same edge.
        let mut b2 = ColoringBuilder::new(3, 2, 0).unwrap();
        b2.set_color(1, 0, 1).unwrap();
        assert_eq!(b2.build(), g);

        let mut b3 = ColoringBuilder::new(3, 2, 0).unwrap();
        assert!(matches!(
            b3.set_color(1, 1, 0),
            Err(ColoringError::SelfLoop(1))
        ));
        assert!(b3.set_color(0, 3, 0).is_err());
    }

    #[test]
    fn restrict_single_vertex_and_hereditary() {
        let g = EdgeColoring::new_complete(5, 2, 0).unwrap();
        let one = g.restrict(&VertexSet::singleton(5, 2)).unwrap();
        assert_eq!(one.n(), 1);

        let sub = g.restrict(&VertexSet::from_iter(5, [1, 3, 4])).unwrap();
        assert_eq!(sub.n(), 3);
        assert_eq!(sub.class_sizes(), vec![3, 0]);

        assert!(matches!(
            g.restrict(&VertexSet::empty(5)),
            Err(ColoringError::EmptyRestriction)
        ));
    }

    #[test]
    fn restrict_composes_with_intersection() {
        // restrict(restrict(G, A), index-of B in A) == restrict(G, A ∩ B)
        let mut b = ColoringBuilder::new(6, 3, 0).unwrap();
        for u in 0..6 {
            for v in (u + 1)..6 {
                b.set_color(u, v, (u * v + u + v) % 3).unwrap();
            }
        }
        let g = b.build();
        let a = VertexSet::from_iter(6, [0, 2, 3, 5]);
        let bset = VertexSet::from_iter(6, [2, 3, 4, 5]);

        let ga = g.restrict(&a).unwrap();
        // positions of A∩B inside A: A = [0,2,3,5] so 2,3,5 are slots 1,2,3
        let inner = ga.restrict(&VertexSet::from_iter(4, [1, 2, 3])).unwrap();
        let direct = g.restrict(&a.intersection(&bset)).unwrap();
        assert_eq!(inner, direct);
    }

    #[test]
    fn gec_round_trip_pentagon_exact() {
        let g = crate::catalog::circulant(5, &[1, 4]).unwrap();
        let text = g.to_gec();
        assert_eq!(text, "GEC 1\nn=5 k=2\n0 1 1 0\n0 1 1\n0 1\n0\n");
        let back = EdgeColoring::from_gec(&text).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn gec_single_vertex() {
        let g = EdgeColoring::single_vertex(0);
        let text = g.to_gec();
        assert_eq!(text, "GEC 1\nn=1 k=0\n");
        assert_eq!(EdgeColoring::from_gec(&text).unwrap(), g);
    }

    #[test]
    fn gec_truncated_reports_line() {
        let text = "GEC 1\nn=5 k=2\n0 1 1 0\n0 1 1\n";
        let e = EdgeColoring::from_gec(text).unwrap_err();
        assert_eq!(e.line, 5);

        let e = EdgeColoring::from_gec("GEC 1\nn=3 k=2\n0 7\n0\n").unwrap_err();
        assert_eq!(e.line, 3);

        let e = EdgeColoring::from_gec("GEX 1\n").unwrap_err();
        assert_eq!(e.line, 1);
    }
}
