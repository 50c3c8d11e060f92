//! Desk-scale exhaustive machinery: brute-force witnesses for triangle
//! profiles on tiny complete graphs, and enumeration of all Gallai colorings
//! of small orders up to isomorphism.

use crate::canonical::{canonical_key, CanonicalKey};
use crate::clique::{count_mono_cliques, find_rainbow_triangle};
use crate::coloring::{ColoringBuilder, EdgeColoring};
use std::collections::HashSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExhaustiveError {
    #[error("search space too large: only k=2 with n<=6 or k=3 with n<=5 are exhaustible")]
    SpaceTooLarge,
    #[error("only triangle targets are supported (got K_{0})")]
    UnsupportedTarget(usize),
}

#[derive(Clone, Debug)]
pub struct ExhaustiveReport {
    pub n: usize,
    pub k: usize,
    /// a Gallai coloring with no monochromatic triangle, if one exists
    pub witness: Option<EdgeColoring>,
    /// total colorings examined (the whole space: this is a proof by
    /// exhaustion when no witness exists)
    pub examined: u64,
}

/// Scans every `k`-coloring of `K_n` for one with no rainbow triangle and no
/// monochromatic triangle. Enforced domain keeps the space below 2^30.
pub fn gr_exhaustive(k: usize, target: usize, n: usize) -> Result<ExhaustiveReport, ExhaustiveError> {
    if target != 3 {
        return Err(ExhaustiveError::UnsupportedTarget(target));
    }
    let ok = (k == 2 && n <= 6) || (k == 3 && n <= 5);
    if !ok {
        return Err(ExhaustiveError::SpaceTooLarge);
    }
    let edges = n * (n - 1) / 2;
    let space = (k as u64).pow(edges as u32);
    let mut witness = None;
    let mut examined = 0u64;
    let mut assignment = vec![0usize; edges];
    for code in 0..space {
        let mut rest = code;
        for slot in assignment.iter_mut() {
            *slot = (rest % k as u64) as usize;
            rest /= k as u64;
        }
        examined += 1;
        let mut b = ColoringBuilder::raw(n, k);
        let mut e = 0;
        for u in 0..n {
            for v in (u + 1)..n {
                b.set_color(u, v, assignment[e]).unwrap();
                e += 1;
            }
        }
        let g = b.build();
        if find_rainbow_triangle(&g).is_some() {
            continue;
        }
        if (0..k).all(|c| count_mono_cliques(&g, c, 3).unwrap() == 0) {
            witness = Some(g);
            break;
        }
    }
    Ok(ExhaustiveReport {
        n,
        k,
        witness,
        examined,
    })
}

/// All Gallai colorings of `K_1 .. K_{n_max}` up to vertex and color
/// permutation, grown one vertex at a time with rainbow pruning inside the
/// new star.
pub fn enumerate_gallai(n_max: usize) -> Vec<Vec<EdgeColoring>> {
    assert!((1..=7).contains(&n_max), "enumeration is sized for n <= 7");
    let mut levels: Vec<Vec<EdgeColoring>> = Vec::with_capacity(n_max);
    levels.push(vec![EdgeColoring::single_vertex(1)]);
    for n in 2..=n_max {
        let mut seen: HashSet<CanonicalKey> = HashSet::new();
        let mut reps = Vec::new();
        for parent in &levels[n - 2] {
            extend_gallai(parent, &mut seen, &mut reps);
        }
        levels.push(reps);
    }
    levels
}

/// Extends a parent coloring by one vertex: every color vector for the new
/// star (existing colors plus fresh ones in first-use order), pruning any
/// partial assignment that completes a rainbow triangle.
fn extend_gallai(
    parent: &EdgeColoring,
    seen: &mut HashSet<CanonicalKey>,
    reps: &mut Vec<EdgeColoring>,
) {
    let m = parent.n();
    let base_k = if m == 1 { 0 } else { parent.k() };
    let mut star = vec![0usize; m];

    fn rec(
        parent: &EdgeColoring,
        star: &mut Vec<usize>,
        pos: usize,
        next_color: usize,
        seen: &mut HashSet<CanonicalKey>,
        reps: &mut Vec<EdgeColoring>,
    ) {
        let m = parent.n();
        if pos == m {
            let k = next_color.max(1);
            let mut b = ColoringBuilder::raw(m + 1, k);
            for u in 0..m {
                for v in (u + 1)..m {
                    b.set_color(u, v, parent.color(u, v)).unwrap();
                }
                b.set_color(u, m, star[u]).unwrap();
            }
            let child = b.build();
            debug_assert!(find_rainbow_triangle(&child).is_none());
            let key = canonical_key(&child, true).expect("n <= 7");
            if seen.insert(key) {
                reps.push(child);
            }
            return;
        }
        // colors 0..next_color are in use; next_color introduces a fresh one
        for c in 0..=next_color {
            star[pos] = c;
            // triangles (u, pos, new vertex) for u < pos
            let ok = (0..pos).all(|u| {
                let a = parent.color(u, pos);
                let (b, d) = (star[u], c);
                a == b || a == d || b == d
            });
            if ok {
                let bump = usize::from(c == next_color);
                rec(parent, star, pos + 1, next_color + bump, seen, reps);
            }
        }
    }
    rec(parent, &mut star, 0, base_k, seen, reps);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clique::mono_clique_number;

    #[test]
    fn pentagon_witness_found_and_k6_exhausted() {
        let five = gr_exhaustive(2, 3, 5).unwrap();
        let w = five.witness.expect("pentagon exists");
        assert!((0..2).all(|c| mono_clique_number(&w, c).unwrap() <= 2));

        let six = gr_exhaustive(2, 3, 6).unwrap();
        assert!(six.witness.is_none());
        assert_eq!(six.examined, 1 << 15);
    }

    #[test]
    fn three_colors_on_five_vertices_has_witness() {
        let rep = gr_exhaustive(3, 3, 5).unwrap();
        let w = rep.witness.expect("pentagon plus unused color");
        assert!(find_rainbow_triangle(&w).is_none());
        assert!((0..3).all(|c| mono_clique_number(&w, c).unwrap() <= 2));
    }

    #[test]
    fn domain_enforced() {
        assert!(matches!(
            gr_exhaustive(2, 3, 7),
            Err(ExhaustiveError::SpaceTooLarge)
        ));
        assert!(matches!(
            gr_exhaustive(3, 3, 6),
            Err(ExhaustiveError::SpaceTooLarge)
        ));
        assert!(matches!(
            gr_exhaustive(2, 4, 5),
            Err(ExhaustiveError::UnsupportedTarget(4))
        ));
    }

    #[test]
    fn gallai_enumeration_small_counts() {
        let levels = enumerate_gallai(4);
        assert_eq!(levels[0].len(), 1);
        // K2: one edge, one color class
        assert_eq!(levels[1].len(), 1);
        // K3: monochromatic or two-one (rainbow excluded)
        assert_eq!(levels[2].len(), 2);
        for reps in &levels {
            for g in reps {
                assert!(find_rainbow_triangle(g).is_none());
            }
        }
    }

    #[test]
    fn gallai_enumeration_matches_brute_force_on_k4() {
        // brute force: all colorings of K4 with colors bounded by edge count,
        // keyed canonically with color permutation
        let mut brute: HashSet<CanonicalKey> = HashSet::new();
        let n = 4;
        let edges = 6;
        for code in 0u64..6u64.pow(edges) {
            let mut rest = code;
            let mut colors = [0usize; 6];
            // enforce first-occurrence color numbering to bound the scan
            let mut max_used = 0usize;
            let mut ok = true;
            for slot in colors.iter_mut() {
                let c = (rest % 6) as usize;
                rest /= 6;
                if c > max_used {
                    ok = false;
                    break;
                }
                if c == max_used {
                    max_used += 1;
                }
                *slot = c;
            }
            if !ok {
                continue;
            }
            let mut b = ColoringBuilder::raw(n, max_used.max(1));
            let mut e = 0;
            for u in 0..n {
                for v in (u + 1)..n {
                    b.set_color(u, v, colors[e]).unwrap();
                    e += 1;
                }
            }
            let g = b.build();
            if find_rainbow_triangle(&g).is_none() {
                brute.insert(canonical_key(&g, true).unwrap());
            }
        }
        let enumerated: HashSet<CanonicalKey> = enumerate_gallai(4)[3]
            .iter()
            .map(|g| canonical_key(g, true).unwrap())
            .collect();
        assert_eq!(brute, enumerated);
    }
}
