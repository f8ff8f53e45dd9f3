//! Vertex colorings and the exact chromatic number solver.
//!
//! The solver is DSATUR-ordered branch and bound. A greedy clique is
//! precolored `1..q` (it must receive distinct colors in every proper
//! coloring) and gives the lower bound; a DSATUR greedy pass gives the
//! initial upper bound. Ties are always broken toward the lowest vertex
//! index and the lowest color, so results are deterministic.
//!
//! Graphs whose chromatic number exceeds their clique number by a margin
//! (compatibility graphs of Hom posets are often triangle-free) defeat the
//! clique bound, and the tree search stalls proving that no smaller coloring
//! exists. When the tree search exceeds [`TREE_SEARCH_NODES`] nodes, the
//! remaining gap is closed by asking a CDCL solver whether `k` colors
//! suffice, for `k` from the incumbent downward.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::sat;

pub const DEFAULT_COLORING_NODE_CAP: u64 = 10_000_000;

/// Node budget of the tree search before the SAT stage takes over.
pub const TREE_SEARCH_NODES: u64 = 200_000;

/// Assignment of colors `1..=color_count` to vertices. Always normalized:
/// the used colors are exactly `1..=color_count`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coloring {
    assignment: Vec<usize>,
    color_count: usize,
}

impl Coloring {
    /// Normalizes arbitrary color labels to contiguous `1..=C`, keeping the
    /// relative order of the labels.
    pub fn new(raw: Vec<usize>) -> Self {
        let mut used = raw.clone();
        used.sort_unstable();
        used.dedup();
        let assignment = raw
            .iter()
            .map(|c| used.binary_search(c).expect("label present") + 1)
            .collect();
        Coloring { assignment, color_count: used.len() }
    }

    pub fn color_count(&self) -> usize {
        self.color_count
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    #[inline]
    pub fn color(&self, v: usize) -> usize {
        self.assignment[v]
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    /// Edges whose endpoints share a color (loops always conflict).
    pub fn conflicts(&self, g: &Graph) -> Vec<(usize, usize)> {
        g.edges()
            .iter()
            .copied()
            .filter(|&(u, v)| self.assignment[u] == self.assignment[v])
            .collect()
    }

    pub fn is_proper(&self, g: &Graph) -> bool {
        self.assignment.len() == g.vertex_count() && self.conflicts(g).is_empty()
    }
}

/// Exact chromatic number with a witness coloring using exactly that many
/// colors.
pub fn chromatic_number(g: &Graph) -> Result<(usize, Coloring)> {
    chromatic_number_capped(g, DEFAULT_COLORING_NODE_CAP)
}

pub fn chromatic_number_capped(g: &Graph, max_nodes: u64) -> Result<(usize, Coloring)> {
    if g.has_loops() {
        return Err(Error::Uncolorable { loops: g.loop_vertices() });
    }
    let n = g.vertex_count();
    if n == 0 {
        return Ok((0, Coloring::new(Vec::new())));
    }
    let clique = g.greedy_clique();
    let (ub, greedy) = dsatur_greedy(g);
    if ub == clique.len() {
        let c = Coloring::new(greedy);
        return Ok((c.color_count(), c));
    }
    let mut search = Search::new(g, clique.len(), ub, greedy, max_nodes.min(TREE_SEARCH_NODES));
    for (i, &v) in clique.iter().enumerate() {
        search.assign(v, i + 1);
    }
    let mut best = match search.run(clique.len(), clique.len()) {
        Ok(()) => search.best_colors,
        Err(_) if max_nodes > TREE_SEARCH_NODES => {
            let budget = max_nodes - search.nodes.min(max_nodes);
            close_gap_with_sat(g, &clique, search.best, search.best_colors, budget)?
        }
        Err(e) => return Err(e),
    };
    let c = Coloring::new(std::mem::take(&mut best));
    debug_assert!(c.is_proper(g));
    Ok((c.color_count(), c))
}

/// Tries `k = incumbent - 1, incumbent - 2, ..` colors until unsatisfiable;
/// the clique is precolored to break color symmetry. `budget` bounds the
/// total number of conflicts.
fn close_gap_with_sat(
    g: &Graph,
    clique: &[usize],
    mut best: usize,
    mut best_colors: Vec<usize>,
    budget: u64,
) -> Result<Vec<usize>> {
    let mut spent = 0u64;
    while best > clique.len() {
        match k_coloring(g, best - 1, clique, budget - spent, &mut spent) {
            sat::Outcome::Sat(colors) => {
                let colors: Vec<usize> = colors_from_model(&colors, g.vertex_count(), best - 1);
                best = colors.iter().copied().max().unwrap_or(0);
                best_colors = colors;
            }
            sat::Outcome::Unsat => break,
            sat::Outcome::Unknown => {
                return Err(Error::InstanceTooLarge { what: "coloring search nodes", cap: budget })
            }
        }
    }
    Ok(best_colors)
}

fn colors_from_model(model: &[bool], n: usize, k: usize) -> Vec<usize> {
    (0..n).map(|v| (0..k).find(|&c| model[v * k + c]).expect("at-least-one clause") + 1).collect()
}

/// Is there a proper coloring with colors `1..=k` extending the clique
/// precoloring? Variable `v * k + c` says vertex `v` gets color `c + 1`.
fn k_coloring(g: &Graph, k: usize, clique: &[usize], budget: u64, spent: &mut u64) -> sat::Outcome {
    let n = g.vertex_count();
    let x = |v: usize, c: usize| v * k + c;
    let mut solver = sat::Solver::new(n * k);
    for v in 0..n {
        let clause: Vec<sat::Lit> = (0..k).map(|c| sat::pos(x(v, c))).collect();
        solver.add_clause(&clause);
    }
    for &(u, v) in g.edges() {
        for c in 0..k {
            solver.add_clause(&[sat::neg(x(u, c)), sat::neg(x(v, c))]);
        }
    }
    for (i, &v) in clique.iter().enumerate() {
        solver.add_clause(&[sat::pos(x(v, i))]);
    }
    let outcome = solver.solve(budget);
    *spent += solver.conflicts;
    outcome
}

/// DSATUR greedy coloring; returns (colors used, assignment).
pub fn dsatur_greedy(g: &Graph) -> (usize, Vec<usize>) {
    let n = g.vertex_count();
    let mut colors = vec![0usize; n];
    let mut neighbor_colors: Vec<Vec<bool>> = vec![vec![false; n + 2]; n];
    let mut sat = vec![0usize; n];
    let mut used = 0;
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| colors[v] == 0)
            .max_by_key(|&v| (sat[v], g.degree(v), std::cmp::Reverse(v)))
            .expect("uncolored vertex remains");
        let c = (1..).find(|&c| !neighbor_colors[v][c]).expect("free color exists");
        colors[v] = c;
        used = used.max(c);
        for &w in g.neighbors(v) {
            if !neighbor_colors[w][c] {
                neighbor_colors[w][c] = true;
                sat[w] += 1;
            }
        }
    }
    (used, colors)
}

struct Search<'g> {
    g: &'g Graph,
    colors: Vec<usize>,
    // counts[v][c]: colored neighbours of v holding color c
    counts: Vec<Vec<u32>>,
    sat: Vec<usize>,
    lower: usize,
    best: usize,
    best_colors: Vec<usize>,
    nodes: u64,
    max_nodes: u64,
}

impl<'g> Search<'g> {
    fn new(g: &'g Graph, lower: usize, best: usize, best_colors: Vec<usize>, max_nodes: u64) -> Self {
        let n = g.vertex_count();
        Search {
            g,
            colors: vec![0; n],
            counts: vec![vec![0; best + 2]; n],
            sat: vec![0; n],
            lower,
            best,
            best_colors,
            nodes: 0,
            max_nodes,
        }
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.colors[v] = c;
        for &w in self.g.neighbors(v) {
            if self.counts[w][c] == 0 {
                self.sat[w] += 1;
            }
            self.counts[w][c] += 1;
        }
    }

    fn unassign(&mut self, v: usize) {
        let c = self.colors[v];
        self.colors[v] = 0;
        for &w in self.g.neighbors(v) {
            self.counts[w][c] -= 1;
            if self.counts[w][c] == 0 {
                self.sat[w] -= 1;
            }
        }
    }

    fn run(&mut self, colored: usize, used: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(Error::InstanceTooLarge { what: "coloring search nodes", cap: self.max_nodes });
        }
        let n = self.colors.len();
        if colored == n {
            if used < self.best {
                self.best = used;
                self.best_colors = self.colors.clone();
            }
            return Ok(());
        }
        if used >= self.best {
            return Ok(());
        }
        let v = (0..n)
            .filter(|&v| self.colors[v] == 0)
            .max_by_key(|&v| (self.sat[v], self.g.degree(v), std::cmp::Reverse(v)))
            .expect("uncolored vertex remains");
        // a vertex seeing every color below the bound cannot be colored here
        if self.sat[v] >= self.best - 1 {
            return Ok(());
        }
        let limit = (used + 1).min(self.best - 1);
        for c in 1..=limit {
            if self.counts[v][c] != 0 {
                continue;
            }
            self.assign(v, c);
            let r = self.run(colored + 1, used.max(c));
            self.unassign(v);
            r?;
            if self.best == self.lower {
                break;
            }
        }
        Ok(())
    }
}
