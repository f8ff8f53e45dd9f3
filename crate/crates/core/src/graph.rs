//! Finite simple graphs (loops representable), standard generators and
//! homomorphism checks.

use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// Finite undirected graph on dense vertex indices `0..n`.
///
/// Edges are stored normalized as `(u, v)` with `u <= v`, sorted and
/// duplicate-free. A loop is the pair `(v, v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    has_loops: bool,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges (in either
    /// orientation) are merged.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut norm = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidArgument(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            norm.push(if u <= v { (u, v) } else { (v, u) });
        }
        norm.sort_unstable();
        norm.dedup();
        let mut adj = vec![Vec::new(); n];
        let mut has_loops = false;
        for &(u, v) in &norm {
            if u == v {
                has_loops = true;
                adj[u].push(u);
            } else {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { n, edges: norm, adj, has_loops, labels: None })
    }

    pub fn empty(n: usize) -> Self {
        Graph { n, edges: Vec::new(), adj: vec![Vec::new(); n], has_loops: false, labels: None }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::InvalidArgument(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.n
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn has_loops(&self) -> bool {
        self.has_loops
    }

    pub fn loop_vertices(&self) -> Vec<usize> {
        self.edges.iter().filter(|(u, v)| u == v).map(|&(u, _)| u).collect()
    }

    /// Adjacency rows as bit sets.
    pub fn adjacency_bits(&self) -> Vec<BitSet> {
        self.adj
            .iter()
            .map(|list| {
                let mut row = BitSet::new(self.n);
                for &w in list {
                    row.insert(w);
                }
                row
            })
            .collect()
    }

    /// Greedy clique bound: the largest clique found by growing from every
    /// vertex, always adding the lowest-index candidate of maximum degree.
    pub fn greedy_clique(&self) -> Vec<usize> {
        let bits = self.adjacency_bits();
        let mut best: Vec<usize> = Vec::new();
        for start in 0..self.n {
            if bits[start].contains(start) {
                continue;
            }
            let mut clique = vec![start];
            let mut cand = bits[start].clone();
            while !cand.is_empty() {
                let next = cand
                    .iter()
                    .max_by_key(|&w| (cand.intersection_count(&bits[w]), std::cmp::Reverse(w)))
                    .expect("non-empty candidate set");
                clique.push(next);
                cand.intersect_with(&bits[next]);
                cand.remove(next);
            }
            if clique.len() > best.len() {
                clique.sort_unstable();
                best = clique;
            }
        }
        best
    }

    /// Returns a copy with vertices renamed by `perm` (vertex `v` becomes
    /// `perm[v]`).
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::InvalidArgument("permutation length mismatch".into()));
        }
        Graph::from_edges(self.n, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))
    }
}

/// The complete graph on `r` vertices.
pub fn complete_graph(r: usize) -> Result<Graph> {
    if r == 0 {
        return Err(Error::InvalidArgument("complete graph needs r >= 1".into()));
    }
    Graph::from_edges(r, (0..r).flat_map(|i| (i + 1..r).map(move |j| (i, j))))
}

/// The cycle on `m` vertices with edges `(i, i + 1 mod m)`.
pub fn cycle_graph(m: usize) -> Result<Graph> {
    if m < 3 {
        return Err(Error::InvalidArgument("cycle graph needs m >= 3".into()));
    }
    Graph::from_edges(m, (0..m).map(|i| (i, (i + 1) % m)))
}

/// The Kneser graph KG(n, k): `k`-subsets of `{1..n}` (in lexicographic
/// order), adjacent when disjoint. Vertices are labelled like `{1,2}`.
pub fn kneser_graph(n: usize, k: usize) -> Result<Graph> {
    if k == 0 || n < 2 * k {
        return Err(Error::InvalidArgument(format!("kneser graph needs n >= 2k >= 2, got n={n}, k={k}")));
    }
    if n > 64 {
        return Err(Error::InvalidArgument("kneser graph ground set limited to 64".into()));
    }
    let mut subsets: Vec<u64> = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        subsets.push(cur.iter().fold(0u64, |m, &i| m | 1 << i));
        // next k-combination in lexicographic order
        let mut i = k;
        while i > 0 && cur[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        cur[i - 1] += 1;
        for j in i..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
    let mut edges = Vec::new();
    for a in 0..subsets.len() {
        for b in a + 1..subsets.len() {
            if subsets[a] & subsets[b] == 0 {
                edges.push((a, b));
            }
        }
    }
    let labels = subsets
        .iter()
        .map(|&m| {
            let items: Vec<String> = crate::bitset::mask_bits(m).map(|i| (i + 1).to_string()).collect();
            format!("{{{}}}", items.join(","))
        })
        .collect();
    Graph::from_edges(subsets.len(), edges)?.with_labels(labels)
}

pub fn petersen_graph() -> Graph {
    kneser_graph(5, 2).expect("KG(5,2) parameters are valid")
}

/// Resolves the built-in instance names `K<r>`, `C<m>`, `petersen` and
/// `kneser:<n>:<k>`.
pub fn named_graph(name: &str) -> Result<Graph> {
    let bad = || Error::InvalidArgument(format!("unknown built-in graph '{name}'"));
    if name.eq_ignore_ascii_case("petersen") {
        return Ok(petersen_graph());
    }
    if let Some(rest) = name.strip_prefix("kneser:") {
        let mut parts = rest.split(':');
        let n = parts.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
        let k = parts.next().and_then(|s| s.parse().ok()).ok_or_else(bad)?;
        if parts.next().is_some() {
            return Err(bad());
        }
        return kneser_graph(n, k);
    }
    let (head, tail) = name.split_at(name.chars().next().map_or(0, |c| c.len_utf8()));
    let size: usize = tail.parse().map_err(|_| bad())?;
    match head {
        "K" | "k" => complete_graph(size),
        "C" | "c" => cycle_graph(size),
        _ => Err(bad()),
    }
}

/// A total vertex map between two graphs.
#[derive(Clone, Debug)]
pub struct VertexMap<'a> {
    source: &'a Graph,
    target: &'a Graph,
    assignment: Vec<usize>,
}

impl<'a> VertexMap<'a> {
    pub fn new(source: &'a Graph, target: &'a Graph, assignment: Vec<usize>) -> Result<Self> {
        if assignment.len() != source.vertex_count() {
            return Err(Error::InvalidArgument(format!(
                "vertex map covers {} of {} source vertices",
                assignment.len(),
                source.vertex_count()
            )));
        }
        if let Some(&bad) = assignment.iter().find(|&&t| t >= target.vertex_count()) {
            return Err(Error::InvalidArgument(format!("image vertex {bad} not in target")));
        }
        Ok(VertexMap { source, target, assignment })
    }

    pub fn identity(g: &'a Graph) -> Self {
        VertexMap { source: g, target: g, assignment: (0..g.vertex_count()).collect() }
    }

    pub fn source(&self) -> &'a Graph {
        self.source
    }

    pub fn target(&self) -> &'a Graph {
        self.target
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    /// Source edges whose image is not an edge of the target.
    pub fn broken_edges(&self) -> Vec<(usize, usize)> {
        self.source
            .edges()
            .iter()
            .copied()
            .filter(|&(u, v)| !self.target.has_edge(self.assignment[u], self.assignment[v]))
            .collect()
    }

    pub fn is_homomorphism(&self) -> bool {
        self.broken_edges().is_empty()
    }
}
