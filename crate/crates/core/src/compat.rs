//! Compatibility graphs of G-posets.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::poset::GPoset;

/// The compatibility graph `C_P`: `x ~ y` (possibly `x = y`) iff some
/// `g != e` makes `x` and `g . y` comparable.
///
/// For each `x` the neighbours are `g^-1 . z` over every `z` comparable to
/// `x` and every `g != e`, so the cost is the number of comparable pairs
/// times `|G|`.
pub fn build_compat_graph(p: &GPoset) -> Result<Graph> {
    let group = p.group();
    if group.is_trivial() {
        return Err(Error::DegenerateGroup(
            "compatibility graph needs a non-trivial group".into(),
        ));
    }
    let poset = p.poset();
    let n = p.len();
    let inverses: Vec<usize> = group.non_identity().map(|g| group.inv(g)).collect();
    let mut nbrs: Vec<Vec<usize>> = Vec::with_capacity(n);
    for x in 0..n {
        let comparable = std::iter::once(x as u32)
            .chain(poset.strict_up(x).iter().copied())
            .chain(poset.strict_down(x).iter().copied());
        let mut row: Vec<usize> = comparable
            .flat_map(|z| inverses.iter().map(move |&gi| p.act(gi, z as usize)))
            .collect();
        row.sort_unstable();
        row.dedup();
        nbrs.push(row);
    }
    for (x, row) in nbrs.iter().enumerate() {
        if let Some(&y) = row.iter().find(|&&y| nbrs[y].binary_search(&x).is_err()) {
            return Err(Error::Internal(format!("compatibility relation not symmetric at ({x}, {y})")));
        }
    }
    Graph::from_edges(
        n,
        nbrs.iter()
            .enumerate()
            .flat_map(|(x, row)| row.iter().filter(move |&&y| y >= x).map(move |&y| (x, y))),
    )
}

/// Loop vertices of a compatibility graph. Empty whenever the source
/// action is free.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LoopReport {
    pub loops: Vec<usize>,
}

impl LoopReport {
    pub fn is_loop_free(&self) -> bool {
        self.loops.is_empty()
    }
}

pub fn check_loops(c: &Graph) -> LoopReport {
    LoopReport { loops: c.loop_vertices() }
}
