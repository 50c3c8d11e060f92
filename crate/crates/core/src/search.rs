//! Seeded tabu search for two-colored clique-avoidance witnesses: minimize
//! the number of red `K_s` plus blue `K_t` by recoloring one edge at a time.

use crate::bitset::VertexSet;
use crate::catalog::{verify_witness, BLUE, RED};
use crate::coloring::{ColoringBuilder, EdgeColoring};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const TABU_TENURE: u64 = 12;
const RESTART_AFTER_STAGNANT: u64 = 200_000;

/// Mutable 2-coloring with incrementally maintained violation count.
pub(crate) struct SearchState {
    n: usize,
    s: usize,
    t: usize,
    /// adjacency per color
    adj: [Vec<VertexSet>; 2],
    violations: u64,
}

impl SearchState {
    fn random(n: usize, s: usize, t: usize, rng: &mut ChaCha8Rng) -> SearchState {
        let mut adj = [vec![VertexSet::empty(n); n], vec![VertexSet::empty(n); n]];
        for u in 0..n {
            for v in (u + 1)..n {
                let c = usize::from(rng.gen::<bool>());
                adj[c][u].insert(v);
                adj[c][v].insert(u);
            }
        }
        let mut st = SearchState {
            n,
            s,
            t,
            adj,
            violations: 0,
        };
        st.violations = st.count_violations_scratch();
        st
    }

    fn color_of(&self, u: usize, v: usize) -> usize {
        usize::from(self.adj[BLUE][u].contains(v))
    }

    /// From-scratch count of red `K_s` plus blue `K_t`; the reference the
    /// incremental count is tested against.
    pub(crate) fn count_violations_scratch(&self) -> u64 {
        let red: Vec<&VertexSet> = self.adj[RED].iter().collect();
        let blue: Vec<&VertexSet> = self.adj[BLUE].iter().collect();
        crate::clique::count_cliques_of_size(&red, self.n, self.s)
            + crate::clique::count_cliques_of_size(&blue, self.n, self.t)
    }

    /// Number of cliques of `size` in color `c` that contain the edge `{u,v}`
    /// (assuming the edge currently has color `c`).
    fn cliques_through_edge(&self, c: usize, u: usize, v: usize, size: usize) -> u64 {
        let mut common = self.adj[c][u].clone();
        common.intersect_with(&self.adj[c][v]);
        match size {
            2 => 1,
            3 => common.len() as u64,
            4 => self.edges_within(c, &common),
            5 => self.triangles_within(c, &common),
            _ => unreachable!("clique sizes are 3..=5"),
        }
    }

    fn edges_within(&self, c: usize, set: &VertexSet) -> u64 {
        let mut count = 0u64;
        for w in set.iter() {
            let mut nb = self.adj[c][w].clone();
            nb.intersect_with(set);
            count += nb.iter().filter(|&x| x > w).count() as u64;
        }
        count
    }

    fn triangles_within(&self, c: usize, set: &VertexSet) -> u64 {
        let mut count = 0u64;
        for w in set.iter() {
            let mut nb = self.adj[c][w].clone();
            nb.intersect_with(set);
            for x in nb.iter().filter(|&x| x > w) {
                let mut third = self.adj[c][x].clone();
                third.intersect_with(&nb);
                count += third.iter().filter(|&y| y > x).count() as u64;
            }
        }
        count
    }

    /// Violation delta if the edge `{u,v}` were flipped to the other color.
    fn flip_delta(&self, u: usize, v: usize) -> i64 {
        let c = self.color_of(u, v);
        let o = 1 - c;
        let lose = self.cliques_through_edge(c, u, v, if c == RED { self.s } else { self.t });
        // count gains as if the edge were already recolored: the common
        // neighborhood in color o is unaffected by this edge itself
        let gain = self.cliques_through_edge(o, u, v, if o == RED { self.s } else { self.t });
        gain as i64 - lose as i64
    }

    pub(crate) fn flip(&mut self, u: usize, v: usize) {
        let delta = self.flip_delta(u, v);
        let c = self.color_of(u, v);
        let o = 1 - c;
        self.adj[c][u].remove(v);
        self.adj[c][v].remove(u);
        self.adj[o][u].insert(v);
        self.adj[o][v].insert(u);
        self.violations = (self.violations as i64 + delta) as u64;
    }

    pub(crate) fn violations(&self) -> u64 {
        self.violations
    }

    fn to_coloring(&self) -> EdgeColoring {
        let mut b = ColoringBuilder::new(self.n, 2, RED).unwrap();
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                b.set_color(u, v, self.color_of(u, v)).unwrap();
            }
        }
        b.build()
    }
}

/// Tabu local search for a 2-coloring of `K_n` with no red `K_s` and no blue
/// `K_t`. Deterministic given the seed; returns `None` once the step budget
/// is exhausted. Any returned coloring passes [`verify_witness`].
pub fn search_witness(
    n: usize,
    s: usize,
    t: usize,
    seed: u64,
    budget: u64,
) -> Option<EdgeColoring> {
    assert!(n >= 2, "search needs at least two vertices");
    assert!((3..=5).contains(&s) && (3..=5).contains(&t));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut state = SearchState::random(n, s, t, &mut rng);
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .collect();
    let mut tabu_until = vec![0u64; edges.len()];
    let mut best = state.violations();
    let mut last_improvement = 0u64;

    for step in 0..budget {
        if state.violations() == 0 {
            let g = state.to_coloring();
            debug_assert!(verify_witness(&g, s, t).unwrap());
            return verify_witness(&g, s, t).unwrap().then_some(g);
        }
        if step - last_improvement >= RESTART_AFTER_STAGNANT {
            state = SearchState::random(n, s, t, &mut rng);
            tabu_until.iter_mut().for_each(|x| *x = 0);
            best = best.min(state.violations());
            last_improvement = step;
            continue;
        }

        let mut chosen: Option<(usize, i64)> = None;
        for (idx, &(u, v)) in edges.iter().enumerate() {
            let delta = state.flip_delta(u, v);
            let after = (state.violations() as i64 + delta) as u64;
            let tabu = tabu_until[idx] > step;
            // aspiration: a move beating the best ignores its tabu status
            if tabu && after >= best {
                continue;
            }
            match chosen {
                Some((_, d)) if delta >= d => {}
                _ => chosen = Some((idx, delta)),
            }
        }
        let (idx, _) = match chosen {
            Some(c) => c,
            // everything tabu and nothing aspirates: pick a random edge
            None => (rng.gen_range(0..edges.len()), 0),
        };
        let (u, v) = edges[idx];
        state.flip(u, v);
        tabu_until[idx] = step + 1 + TABU_TENURE;
        if state.violations() < best {
            best = state.violations();
            last_improvement = step;
        }
    }
    if state.violations() == 0 {
        let g = state.to_coloring();
        if verify_witness(&g, s, t).unwrap() {
            return Some(g);
        }
    }
    None
}
