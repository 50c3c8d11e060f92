//! Rainbow-triangle detection, monochromatic clique search, and verification
//! of a coloring against a forbidden-clique profile.

use crate::bitset::VertexSet;
use crate::coloring::EdgeColoring;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CliqueError {
    #[error("profile has {profile} thresholds but the coloring has {k} colors")]
    ProfileMismatch { profile: usize, k: usize },
    #[error("threshold {0} outside the supported range 3..=5")]
    BadThreshold(usize),
    #[error("color {color} out of range for {k} colors")]
    ColorOutOfRange { color: usize, k: usize },
}

/// Per-color clique thresholds: a coloring *violates* the profile if some
/// color class contains a clique of its threshold size.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Profile {
    thresholds: Vec<usize>,
}

impl Profile {
    /// The canonical profile: the first `r` colors demand `K_5`, the next `s`
    /// demand `K_4`, the last `t` demand `K_3`.
    pub fn from_counts(r: usize, s: usize, t: usize) -> Profile {
        let mut thresholds = Vec::with_capacity(r + s + t);
        thresholds.extend(std::iter::repeat_n(5, r));
        thresholds.extend(std::iter::repeat_n(4, s));
        thresholds.extend(std::iter::repeat_n(3, t));
        Profile { thresholds }
    }

    /// Explicit per-color thresholds, each in `{3, 4, 5}`.
    pub fn custom(thresholds: Vec<usize>) -> Result<Profile, CliqueError> {
        if let Some(&bad) = thresholds.iter().find(|&&x| !(3..=5).contains(&x)) {
            return Err(CliqueError::BadThreshold(bad));
        }
        Ok(Profile { thresholds })
    }

    pub fn len(&self) -> usize {
        self.thresholds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.thresholds.is_empty()
    }

    pub fn threshold(&self, c: usize) -> usize {
        self.thresholds[c]
    }

    pub fn thresholds(&self) -> &[usize] {
        &self.thresholds
    }
}

/// A monochromatic clique found in a specific color class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueWitness {
    pub color: usize,
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProfileReport {
    /// True iff the coloring contains no rainbow triangle.
    pub gallai: bool,
    pub rainbow: Option<(usize, usize, usize)>,
    /// One witness per color whose class reaches its threshold.
    pub violations: Vec<CliqueWitness>,
}

impl ProfileReport {
    pub fn passes(&self) -> bool {
        self.gallai && self.violations.is_empty()
    }
}

/// Lexicographically least triangle `(u, v, w)` with three distinct edge
/// colors, or `None` if the coloring is a Gallai coloring.
pub fn find_rainbow_triangle(g: &EdgeColoring) -> Option<(usize, usize, usize)> {
    let n = g.n();
    if n < 3 || g.k() < 3 {
        return None;
    }
    let mut allowed = VertexSet::empty(n);
    let mut same = VertexSet::empty(n);
    let mut tail = VertexSet::full(n);
    for a in 0..n {
        tail.remove(a);
        for b in (a + 1)..n {
            let c = g.color(a, b);
            // Candidates w > b whose edges to a and b both avoid color c ...
            allowed.clone_from(&tail);
            for x in (a + 1)..=b {
                allowed.remove(x);
            }
            allowed.difference_with(g.neighbors(c, a));
            allowed.difference_with(g.neighbors(c, b));
            if allowed.is_empty() {
                continue;
            }
            // ... and differ from each other: drop w seeing a and b alike.
            for x in 0..g.k() {
                if x == c {
                    continue;
                }
                same.clone_from(g.neighbors(x, a));
                same.intersect_with(g.neighbors(x, b));
                allowed.difference_with(&same);
                if allowed.is_empty() {
                    break;
                }
            }
            if let Some(w) = allowed.first() {
                return Some((a, b, w));
            }
        }
    }
    None
}

/// Exhaustive O(n^3) triangle scan; the independent reference for
/// [`find_rainbow_triangle`].
pub fn rainbow_triangle_scan(g: &EdgeColoring) -> Option<(usize, usize, usize)> {
    let n = g.n();
    for a in 0..n {
        for b in (a + 1)..n {
            for w in (b + 1)..n {
                let (x, y, z) = (g.color(a, b), g.color(a, w), g.color(b, w));
                if x != y && y != z && x != z {
                    return Some((a, b, w));
                }
            }
        }
    }
    None
}

/// Exact maximum clique size in color class `c`.
pub fn mono_clique_number(g: &EdgeColoring, c: usize) -> Result<usize, CliqueError> {
    if c >= g.k() {
        return Err(CliqueError::ColorOutOfRange { color: c, k: g.k() });
    }
    let adj: Vec<&VertexSet> = (0..g.n()).map(|v| g.neighbors(c, v)).collect();
    Ok(max_clique(&adj, g.n(), None).0)
}

/// Decision mode: a clique of size at least `size` in color class `c`, if any.
pub fn find_mono_clique(
    g: &EdgeColoring,
    c: usize,
    size: usize,
) -> Result<Option<Vec<usize>>, CliqueError> {
    if c >= g.k() {
        return Err(CliqueError::ColorOutOfRange { color: c, k: g.k() });
    }
    if size == 0 {
        return Ok(Some(Vec::new()));
    }
    let adj: Vec<&VertexSet> = (0..g.n()).map(|v| g.neighbors(c, v)).collect();
    let (best, witness) = max_clique(&adj, g.n(), Some(size));
    Ok(if best >= size {
        Some(witness.into_iter().take(size).collect())
    } else {
        None
    })
}

/// Checks `g` against `p`: Gallai flag plus one clique witness per violated
/// color. Empty violations with `gallai = true` certifies a witness coloring.
pub fn verify_profile(g: &EdgeColoring, p: &Profile) -> Result<ProfileReport, CliqueError> {
    if p.len() != g.k() {
        return Err(CliqueError::ProfileMismatch {
            profile: p.len(),
            k: g.k(),
        });
    }
    let rainbow = find_rainbow_triangle(g);
    let mut violations: Vec<CliqueWitness> = (0..g.k())
        .into_par_iter()
        .filter_map(|c| {
            find_mono_clique(g, c, p.threshold(c))
                .expect("color in range")
                .map(|vertices| CliqueWitness { color: c, vertices })
        })
        .collect();
    violations.sort_by_key(|w| w.color);
    Ok(ProfileReport {
        gallai: rainbow.is_none(),
        rainbow,
        violations,
    })
}

/// Tomita-style branch and bound: candidate sets as bitsets, greedy-coloring
/// upper bound, optional early exit once `stop_at` is reached.
pub(crate) fn max_clique(
    adj: &[&VertexSet],
    n: usize,
    stop_at: Option<usize>,
) -> (usize, Vec<usize>) {
    let mut best = 0usize;
    let mut best_set = Vec::new();
    let mut current = Vec::new();
    let p = VertexSet::full(n);
    expand(adj, &p, &mut current, &mut best, &mut best_set, stop_at);
    (best, best_set)
}

fn expand(
    adj: &[&VertexSet],
    p: &VertexSet,
    current: &mut Vec<usize>,
    best: &mut usize,
    best_set: &mut Vec<usize>,
    stop_at: Option<usize>,
) {
    if let Some(target) = stop_at {
        if *best >= target {
            return;
        }
    }
    if p.is_empty() {
        if current.len() > *best {
            *best = current.len();
            *best_set = current.clone();
        }
        return;
    }

    // Greedy coloring of the candidates; class index + 1 bounds the largest
    // clique through each vertex inside p.
    let mut classes: Vec<VertexSet> = Vec::new();
    let mut order: Vec<(usize, usize)> = Vec::new(); // (bound, vertex)
    for v in p.iter() {
        let mut placed = false;
        for (ci, class) in classes.iter_mut().enumerate() {
            if !class.intersects(adj[v]) {
                class.insert(v);
                order.push((ci + 1, v));
                placed = true;
                break;
            }
        }
        if !placed {
            let mut class = VertexSet::empty(p.capacity());
            class.insert(v);
            classes.push(class);
            order.push((classes.len(), v));
        }
    }
    order.sort_unstable();

    let mut remaining = p.clone();
    for &(bound, v) in order.iter().rev() {
        if current.len() + bound <= *best {
            return;
        }
        current.push(v);
        let next = remaining.intersection(adj[v]);
        expand(adj, &next, current, best, best_set, stop_at);
        current.pop();
        if let Some(target) = stop_at {
            if *best >= target {
                return;
            }
        }
        remaining.remove(v);
    }
}

/// Counts cliques of exactly `size` vertices in the graph given by `adj`.
/// Used as the local-search objective and as a small-scale oracle.
pub(crate) fn count_cliques_of_size(adj: &[&VertexSet], n: usize, size: usize) -> u64 {
    if size == 0 {
        return 1;
    }
    if size == 1 {
        return n as u64;
    }
    let mut count = 0u64;
    let mut cand = VertexSet::empty(n);
    for v in 0..n {
        cand.clone_from(adj[v]);
        // only count each clique once: restrict to higher-numbered vertices
        for u in 0..=v {
            cand.remove(u);
        }
        count += count_rec(adj, &cand, size - 1);
    }
    count
}

fn count_rec(adj: &[&VertexSet], cand: &VertexSet, left: usize) -> u64 {
    if left == 0 {
        return 1;
    }
    if cand.len() < left {
        return 0;
    }
    if left == 1 {
        return cand.len() as u64;
    }
    let mut count = 0u64;
    let mut next = cand.clone();
    for v in cand.iter() {
        next.remove(v);
        let mut sub = next.clone();
        sub.intersect_with(adj[v]);
        count += count_rec(adj, &sub, left - 1);
    }
    count
}

/// Convenience wrapper counting monochromatic cliques of a given size.
pub fn count_mono_cliques(g: &EdgeColoring, c: usize, size: usize) -> Result<u64, CliqueError> {
    if c >= g.k() {
        return Err(CliqueError::ColorOutOfRange { color: c, k: g.k() });
    }
    let adj: Vec<&VertexSet> = (0..g.n()).map(|v| g.neighbors(c, v)).collect();
    Ok(count_cliques_of_size(&adj, g.n(), size))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::circulant;
    use crate::coloring::ColoringBuilder;
    use rand::prelude::*;

    /// Naive maximum clique by full subset recursion, no bounds. Oracle only.
    fn brute_clique_number(g: &EdgeColoring, c: usize) -> usize {
        fn rec(g: &EdgeColoring, c: usize, chosen: &mut Vec<usize>, from: usize, best: &mut usize) {
            *best = (*best).max(chosen.len());
            for v in from..g.n() {
                if chosen.iter().all(|&u| g.color(u, v) == c) {
                    chosen.push(v);
                    rec(g, c, chosen, v + 1, best);
                    chosen.pop();
                }
            }
        }
        let mut best = 0;
        rec(g, c, &mut Vec::new(), 0, &mut best);
        best
    }

    #[test]
    fn rainbow_on_k3_and_two_colored() {
        let mut b = ColoringBuilder::new(3, 3, 0).unwrap();
        b.set_color(0, 1, 0).unwrap();
        b.set_color(0, 2, 1).unwrap();
        b.set_color(1, 2, 2).unwrap();
        let g = b.build();
        assert_eq!(find_rainbow_triangle(&g), Some((0, 1, 2)));
        assert_eq!(rainbow_triangle_scan(&g), Some((0, 1, 2)));

        let two = circulant(8, &[1, 4, 7]).unwrap();
        assert_eq!(find_rainbow_triangle(&two), None);
    }

    #[test]
    fn rainbow_matches_scan_on_random_colorings() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let n = rng.gen_range(3..10);
            let k = rng.gen_range(1..5);
            let mut b = ColoringBuilder::new(n, k, 0).unwrap();
            for u in 0..n {
                for v in (u + 1)..n {
                    b.set_color(u, v, rng.gen_range(0..k)).unwrap();
                }
            }
            let g = b.build();
            assert_eq!(find_rainbow_triangle(&g), rainbow_triangle_scan(&g));
        }
    }

    #[test]
    fn clique_number_basics() {
        let g = EdgeColoring::new_complete(6, 2, 0).unwrap();
        assert_eq!(mono_clique_number(&g, 0).unwrap(), 6);
        assert_eq!(mono_clique_number(&g, 1).unwrap(), 1);

        let pentagon = circulant(5, &[1, 4]).unwrap();
        assert_eq!(mono_clique_number(&pentagon, 0).unwrap(), 2);
        assert_eq!(mono_clique_number(&pentagon, 1).unwrap(), 2);

        assert!(mono_clique_number(&pentagon, 2).is_err());
    }

    #[test]
    fn paley17_has_no_mono_k4() {
        let g = circulant(17, &[1, 2, 4, 8, 9, 13, 15, 16]).unwrap();
        assert_eq!(mono_clique_number(&g, 0).unwrap(), 3);
        assert_eq!(mono_clique_number(&g, 1).unwrap(), 3);
        // independent confirmation by unbounded subset recursion
        assert_eq!(brute_clique_number(&g, 0), 3);
    }

    #[test]
    fn clique_number_matches_brute_force_on_random() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..500 {
            let n = rng.gen_range(2..=12);
            let k = rng.gen_range(1..4);
            let mut b = ColoringBuilder::new(n, k, 0).unwrap();
            for u in 0..n {
                for v in (u + 1)..n {
                    b.set_color(u, v, rng.gen_range(0..k)).unwrap();
                }
            }
            let g = b.build();
            for c in 0..k {
                assert_eq!(
                    mono_clique_number(&g, c).unwrap(),
                    brute_clique_number(&g, c),
                    "n={n} k={k} c={c}"
                );
            }
        }
    }

    #[test]
    fn decision_mode_returns_witness() {
        let g = EdgeColoring::new_complete(5, 2, 0).unwrap();
        let w = find_mono_clique(&g, 0, 5).unwrap().unwrap();
        assert_eq!(w.len(), 5);
        for i in 0..w.len() {
            for j in (i + 1)..w.len() {
                assert_eq!(g.color(w[i], w[j]), 0);
            }
        }
        assert!(find_mono_clique(&g, 1, 2).unwrap().is_none());
    }

    #[test]
    fn verify_profile_reports() {
        // all-red K5 against a K5 threshold
        let g = EdgeColoring::new_complete(5, 1, 0).unwrap();
        let p = Profile::custom(vec![5]).unwrap();
        let rep = verify_profile(&g, &p).unwrap();
        assert!(rep.gallai);
        assert_eq!(rep.violations.len(), 1);
        assert_eq!(rep.violations[0].vertices.len(), 5);

        // pentagon against (t = 2) thresholds
        let pentagon = circulant(5, &[1, 4]).unwrap();
        let rep = verify_profile(&pentagon, &Profile::from_counts(0, 0, 2)).unwrap();
        assert!(rep.passes());

        assert!(verify_profile(&pentagon, &Profile::from_counts(0, 0, 3)).is_err());
    }

    #[test]
    fn verify_profile_invariant_under_relabeling() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let g = circulant(13, &[1, 5, 8, 12]).unwrap();
        let p = Profile::from_counts(0, 1, 1);
        let base = verify_profile(&g, &p).unwrap();
        for _ in 0..10 {
            let mut perm: Vec<usize> = (0..13).collect();
            perm.shuffle(&mut rng);
            let mut b = ColoringBuilder::new(13, 2, 0).unwrap();
            for u in 0..13 {
                for v in (u + 1)..13 {
                    b.set_color(perm[u], perm[v], g.color(u, v)).unwrap();
                }
            }
            let rep = verify_profile(&b.build(), &p).unwrap();
            assert_eq!(rep.passes(), base.passes());
            assert_eq!(rep.gallai, base.gallai);
        }
    }

    #[test]
    fn clique_counts() {
        let g = EdgeColoring::new_complete(5, 1, 0).unwrap();
        assert_eq!(count_mono_cliques(&g, 0, 3).unwrap(), 10);
        assert_eq!(count_mono_cliques(&g, 0, 5).unwrap(), 1);
        let pentagon = circulant(5, &[1, 4]).unwrap();
        assert_eq!(count_mono_cliques(&pentagon, 0, 2).unwrap(), 5);
        assert_eq!(count_mono_cliques(&pentagon, 0, 3).unwrap(), 0);
    }
}
