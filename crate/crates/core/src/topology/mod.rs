//! Order complexes, homology over prime fields, homological connectivity,
//! the `G x {1..n+1}` model spaces and index intervals.

pub mod complex;
pub mod homology;

use serde::Serialize;

pub use complex::SimplicialComplex;
pub use homology::{homology_ranks, homology_ranks_up_to, BettiVector, DEFAULT_PRIMES};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::poset::{GPoset, Poset};

pub const DEFAULT_DIM_CAP: usize = 4;

pub fn order_complex(p: &Poset, dim_cap: usize, caps: &Caps) -> Result<SimplicialComplex> {
    SimplicialComplex::order_complex(p, dim_cap, caps.max_chains)
}

/// Homological connectivity: the largest `k` with vanishing reduced
/// homology in all degrees `<= k` over every tested prime.
///
/// This is a surrogate for topological connectivity and agrees with it on
/// simply connected spaces; fundamental groups are not examined.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Connectivity {
    pub conn: i64,
    pub qualifier: &'static str,
    pub primes: Vec<u64>,
    pub betti: Vec<BettiVector>,
    /// The true value may be higher than `conn` (truncation or acyclicity).
    pub capped: bool,
    pub truncated: bool,
    /// No reduced homology in any degree.
    pub acyclic: bool,
    /// The complex is a cone (its poset has a maximum or minimum).
    pub contractible_detected: bool,
    /// The tested primes gave different Betti numbers.
    pub torsion_warning: bool,
    pub empty: bool,
}

pub fn homological_connectivity(k: &SimplicialComplex) -> Result<Connectivity> {
    homological_connectivity_with(k, &DEFAULT_PRIMES)
}

/// Conventions: the empty complex has connectivity -2, a disconnected one
/// -1. Acyclic and truncated-but-vanishing complexes report `dim_cap - 2`
/// with `capped` set.
pub fn homological_connectivity_with(k: &SimplicialComplex, primes: &[u64]) -> Result<Connectivity> {
    if primes.is_empty() {
        return Err(Error::InvalidArgument("at least one prime is required".into()));
    }
    let betti = primes.iter().map(|&p| homology_ranks(k, p)).collect::<Result<Vec<_>>>()?;
    let torsion_warning = betti.windows(2).any(|w| w[0].reduced_betti != w[1].reduced_betti);
    let mut out = Connectivity {
        conn: -2,
        qualifier: "homological",
        primes: primes.to_vec(),
        betti,
        capped: false,
        truncated: k.is_truncated(),
        acyclic: false,
        contractible_detected: k.cone_point().is_some(),
        torsion_warning,
        empty: k.is_empty(),
    };
    if k.is_empty() {
        return Ok(out);
    }
    let top = out.betti[0].computed_up_to.max(0) as usize;
    let first_nonzero = (0..=top).find(|&d| out.betti.iter().any(|b| b.get(d) != 0));
    let cap = k.dim_cap() as i64 - 2;
    match first_nonzero {
        Some(d) => out.conn = d as i64 - 1,
        None => {
            out.acyclic = !k.is_truncated();
            out.capped = true;
            out.conn = cap;
        }
    }
    if k.is_truncated() && out.conn > cap {
        out.conn = cap;
        out.capped = true;
    }
    Ok(out)
}

/// The free G-poset `G x {1..n+1}` with `h . (g, i) = (hg, i)` and
/// `(h, x) < (g, y)` iff `x < y`. Element `(g, i)` has index
/// `(i - 1) * |G| + g`.
pub fn build_eng(group: &FiniteGroup, n: usize) -> Result<GPoset> {
    if group.is_trivial() {
        return Err(Error::DegenerateGroup("model space needs a non-trivial group".into()));
    }
    let order = group.order();
    let size = order * (n + 1);
    let poset = Poset::from_leq_fn(size, |a, b| a == b || a / order < b / order)?;
    let action = group
        .elements()
        .map(|h| (0..size).map(|a| (a / order) * order + group.mul(h, a % order)).collect())
        .collect();
    GPoset::new(poset, group.clone(), action)
}

/// Index of `(g, level)` in [`build_eng`], with `level` starting at 1.
pub fn eng_index(group_order: usize, g: usize, level: usize) -> usize {
    (level - 1) * group_order + g
}

/// The bracket `conn_H + 1 <= ind_G <= dim` for a free G-poset's order
/// complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndexInterval {
    pub lower: i64,
    pub upper: i64,
    pub group_order: usize,
    pub connectivity: Connectivity,
}

pub fn index_interval(p: &GPoset, dim_cap: usize, caps: &Caps) -> Result<IndexInterval> {
    if let Some((g, x)) = p.fixed_point() {
        return Err(Error::NotFree(format!("group element {g} fixes element {x}")));
    }
    let k = order_complex(p.poset(), dim_cap, caps)?;
    let connectivity = homological_connectivity(&k)?;
    let upper = p.poset().height() as i64 - 1;
    let lower = connectivity.conn + 1;
    if lower > upper {
        return Err(Error::TheoremViolation(format!(
            "index bracket is empty: conn + 1 = {lower} exceeds dimension {upper}"
        )));
    }
    Ok(IndexInterval { lower, upper, group_order: p.group().order(), connectivity })
}

/// Whether every group element maps stored simplices to stored simplices.
pub fn action_is_simplicial(p: &GPoset, k: &SimplicialComplex) -> bool {
    let Some(top) = k.dimension() else { return true };
    p.group().elements().all(|g| {
        (0..=top).all(|d| {
            k.simplices(d).all(|s| {
                let mut image: Vec<u32> = s.iter().map(|&v| p.act(g, v as usize) as u32).collect();
                image.sort_unstable();
                k.contains(&image)
            })
        })
    })
}
