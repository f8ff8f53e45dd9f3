//! Independent oracles shared by the integration tests. They use only the
//! public graph/group/poset constructors and recompute everything else from
//! definitions.
#![allow(dead_code)]

use hombound::{make_gposet, FiniteGroup, GPoset, Graph};
use rand::Rng;

/// All tuples of non-empty vertex subsets of `h`, one per vertex of `f`,
/// whose cross pairs along every edge of `f` are edges of `h`. Full product
/// enumeration, then filter; sorted.
pub fn brute_hom_tuples(f: &Graph, h: &Graph) -> Vec<Vec<u64>> {
    let n = f.vertex_count();
    let m = h.vertex_count();
    assert!(m < 16, "oracle is exponential");
    let subsets = (1u64 << m) - 1;
    let total = subsets.pow(n as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut rest = code;
        let cells: Vec<u64> = (0..n)
            .map(|_| {
                let c = rest % subsets + 1;
                rest /= subsets;
                c
            })
            .collect();
        let ok = f.edges().iter().all(|&(u, v)| {
            (0..m).all(|a| {
                cells[u] >> a & 1 == 0 || (0..m).all(|b| cells[v] >> b & 1 == 0 || h.has_edge(a, b))
            })
        });
        if ok {
            out.push(cells);
        }
    }
    out.sort();
    out
}

/// Chromatic number by subset dynamic programming over independent sets.
pub fn brute_chi(g: &Graph) -> usize {
    let n = g.vertex_count();
    assert!(n <= 16);
    if n == 0 {
        return 0;
    }
    let full = (1usize << n) - 1;
    let independent: Vec<bool> = (0..=full)
        .map(|s| g.edges().iter().all(|&(u, v)| s >> u & 1 == 0 || s >> v & 1 == 0))
        .collect();
    let mut best = vec![usize::MAX; full + 1];
    best[0] = 0;
    for s in 1..=full {
        // the lowest vertex of s goes into some independent subset of s
        let low = s & s.wrapping_neg();
        let mut t = s;
        while t > 0 {
            if t & low != 0 && independent[t] && best[s ^ t] != usize::MAX {
                best[s] = best[s].min(best[s ^ t] + 1);
            }
            t = (t - 1) & s;
        }
    }
    best[full]
}

pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let edges: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| rng.random_bool(p)).collect();
    Graph::from_edges(n, edges).unwrap()
}

/// S_3 as permutations of {0,1,2}, composed right to left.
pub fn symmetric_group_3() -> FiniteGroup {
    let perms: [[usize; 3]; 6] = [[0, 1, 2], [1, 0, 2], [2, 1, 0], [0, 2, 1], [1, 2, 0], [2, 0, 1]];
    let table = perms
        .iter()
        .map(|a| {
            perms
                .iter()
                .map(|b| {
                    let c = [a[b[0]], a[b[1]], a[b[2]]];
                    perms.iter().position(|p| *p == c).unwrap()
                })
                .collect()
        })
        .collect();
    FiniteGroup::from_table(table).unwrap()
}

/// Random free G-poset on `G x Q` with `|Q| = m`: random covering relations
/// `(e, q) < (h, q')` for `q < q'` in a random order on `Q`, closed under the
/// action `g . (h, q) = (gh, q)` and transitively. Element `(h, q)` has index
/// `q * |G| + h`.
pub fn random_free_gposet(rng: &mut impl Rng, group: &FiniteGroup, m: usize, density: f64) -> GPoset {
    let order = group.order();
    let n = order * m;
    let mut rel = vec![vec![false; n]; n];
    for q in 0..m {
        for q2 in q + 1..m {
            for h in 0..order {
                if rng.random_bool(density) {
                    for g in 0..order {
                        rel[q * order + g][q2 * order + group.mul(g, h)] = true;
                    }
                }
            }
        }
    }
    for k in 0..n {
        let via = rel[k].clone();
        for row in rel.iter_mut() {
            if row[k] {
                for (j, &reach) in via.iter().enumerate() {
                    row[j] |= reach;
                }
            }
        }
    }
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| rel[i][j]).collect();
    let action = (0..order)
        .map(|g| (0..n).map(|x| (x / order) * order + group.mul(g, x % order)).collect())
        .collect();
    make_gposet(n, &pairs, group.clone(), action).unwrap()
}

/// Elements `x` with `x` comparable to `g . x` for some non-identity `g`.
pub fn loops_by_definition(p: &GPoset) -> Vec<usize> {
    let group = p.group();
    (0..p.len())
        .filter(|&x| {
            group.non_identity().any(|g| {
                let y = p.act(g, x);
                p.poset().leq(x, y) || p.poset().leq(y, x)
            })
        })
        .collect()
}
