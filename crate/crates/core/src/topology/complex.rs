use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::poset::Poset;

/// Abstract simplicial complex stored as all simplices of dimension at most
/// `dim_cap`, each a strictly increasing vertex tuple.
///
/// Simplices of dimension `d` live in one flat buffer with stride `d + 1`,
/// sorted lexicographically, so face lookup is a binary search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_count: usize,
    faces: Vec<Vec<u32>>,
    dim_cap: usize,
    truncated: bool,
    cone_point: Option<usize>,
}

impl SimplicialComplex {
    fn from_lists(vertex_count: usize, mut lists: Vec<Vec<Vec<u32>>>, dim_cap: usize, truncated: bool) -> Self {
        while lists.last().is_some_and(Vec::is_empty) {
            lists.pop();
        }
        let faces = lists
            .into_iter()
            .map(|mut l| {
                l.sort_unstable();
                l.dedup();
                l.into_iter().flatten().collect()
            })
            .collect();
        SimplicialComplex { vertex_count, faces, dim_cap, truncated, cone_point: None }
    }

    /// All chains of `poset` with at most `dim_cap + 1` elements.
    pub fn order_complex(poset: &Poset, dim_cap: usize, max_chains: u64) -> Result<Self> {
        let mut lists: Vec<Vec<Vec<u32>>> = vec![Vec::new(); dim_cap + 1];
        let mut truncated = false;
        let mut count = 0u64;
        let mut chain: Vec<u32> = Vec::with_capacity(dim_cap + 1);
        for x in 0..poset.len() {
            chain.push(x as u32);
            extend_chains(poset, &mut chain, dim_cap, &mut lists, &mut truncated, &mut count, max_chains)?;
            chain.pop();
        }
        let mut k = Self::from_lists(poset.len(), lists, dim_cap, truncated);
        k.cone_point = poset.maximum().or_else(|| {
            (0..poset.len()).find(|&x| poset.strict_up(x).len() + 1 == poset.len() && poset.strict_down(x).is_empty())
        });
        Ok(k)
    }

    /// The complex generated by `facets`, truncated at `dim_cap`.
    pub fn from_facets(vertex_count: usize, facets: &[Vec<usize>], dim_cap: usize, max_chains: u64) -> Result<Self> {
        let mut sets: Vec<BTreeSet<Vec<u32>>> = vec![BTreeSet::new(); dim_cap + 1];
        let mut truncated = false;
        let mut total = 0u64;
        for facet in facets {
            let mut f: Vec<u32> = facet.iter().map(|&v| v as u32).collect();
            f.sort_unstable();
            f.dedup();
            if f.is_empty() {
                continue;
            }
            if let Some(&bad) = f.iter().find(|&&v| v as usize >= vertex_count) {
                return Err(Error::InvalidArgument(format!("facet vertex {bad} >= vertex count {vertex_count}")));
            }
            if f.len() > dim_cap + 1 {
                truncated = true;
            }
            if f.len() > 40 {
                return Err(Error::InstanceTooLarge { what: "facet size", cap: 40 });
            }
            // every non-empty subset of size <= dim_cap + 1
            let mut stack: Vec<(usize, Vec<u32>)> = vec![(0, Vec::new())];
            while let Some((start, face)) = stack.pop() {
                for (i, &v) in f.iter().enumerate().skip(start) {
                    let mut next = face.clone();
                    next.push(v);
                    let d = next.len() - 1;
                    if sets[d].insert(next.clone()) {
                        total += 1;
                        if total > max_chains {
                            return Err(Error::InstanceTooLarge { what: "simplices", cap: max_chains });
                        }
                    }
                    if next.len() <= dim_cap {
                        stack.push((i + 1, next));
                    }
                }
            }
        }
        // isolated vertices are implied by vertex_count
        for v in 0..vertex_count {
            sets[0].insert(vec![v as u32]);
        }
        let lists = sets.into_iter().map(|s| s.into_iter().collect()).collect();
        Ok(Self::from_lists(vertex_count, lists, dim_cap, truncated))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn dim_cap(&self) -> usize {
        self.dim_cap
    }

    /// Whether simplices above `dim_cap` exist and were dropped.
    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// Largest stored dimension, `None` for the empty complex.
    pub fn dimension(&self) -> Option<usize> {
        self.faces.len().checked_sub(1)
    }

    /// An element comparable to every other, when the complex is an order
    /// complex with one. Such a complex is a cone, hence contractible.
    pub fn cone_point(&self) -> Option<usize> {
        self.cone_point
    }

    /// Number of `d`-simplices.
    pub fn count(&self, d: usize) -> usize {
        self.faces.get(d).map_or(0, |f| f.len() / (d + 1))
    }

    pub fn f_vector(&self) -> Vec<usize> {
        (0..self.faces.len()).map(|d| self.count(d)).collect()
    }

    pub fn simplex(&self, d: usize, i: usize) -> &[u32] {
        &self.faces[d][i * (d + 1)..(i + 1) * (d + 1)]
    }

    pub fn simplices(&self, d: usize) -> impl Iterator<Item = &[u32]> {
        self.faces.get(d).map(|f| f.chunks_exact(d + 1)).into_iter().flatten()
    }

    /// Index of a sorted `d`-simplex.
    pub fn index_of(&self, s: &[u32]) -> Option<usize> {
        let d = s.len().checked_sub(1)?;
        let n = self.count(d);
        let (mut lo, mut hi) = (0, n);
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.simplex(d, mid).cmp(s) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    pub fn contains(&self, s: &[u32]) -> bool {
        self.index_of(s).is_some()
    }

    /// Reduced Euler characteristic `-1 + f_0 - f_1 + ...` of the stored
    /// skeleton.
    pub fn reduced_euler_characteristic(&self) -> i64 {
        let mut chi = -1i64;
        for d in 0..self.faces.len() {
            let sign = if d % 2 == 0 { 1 } else { -1 };
            chi += sign * self.count(d) as i64;
        }
        chi
    }

    /// Maximal stored simplices, by dimension then lexicographically.
    pub fn facets(&self) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        for d in 0..self.faces.len() {
            let mut covered = vec![false; self.count(d)];
            for s in self.simplices(d + 1) {
                for skip in 0..s.len() {
                    let face: Vec<u32> = s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                    if let Some(i) = self.index_of(&face) {
                        covered[i] = true;
                    }
                }
            }
            out.extend((0..self.count(d)).filter(|&i| !covered[i]).map(|i| self.simplex(d, i).to_vec()));
        }
        out
    }
}

fn extend_chains(
    poset: &Poset,
    chain: &mut Vec<u32>,
    dim_cap: usize,
    lists: &mut [Vec<Vec<u32>>],
    truncated: &mut bool,
    count: &mut u64,
    max_chains: u64,
) -> Result<()> {
    *count += 1;
    if *count > max_chains {
        return Err(Error::InstanceTooLarge { what: "order complex chains", cap: max_chains });
    }
    let mut sorted = chain.clone();
    sorted.sort_unstable();
    lists[chain.len() - 1].push(sorted);
    let top = *chain.last().expect("chain is non-empty") as usize;
    let above = poset.strict_up(top);
    if chain.len() == dim_cap + 1 {
        if !above.is_empty() {
            *truncated = true;
        }
        return Ok(());
    }
    for &y in above {
        chain.push(y);
        extend_chains(poset, chain, dim_cap, lists, truncated, count, max_chains)?;
        chain.pop();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn antichain_has_no_edges() {
        let p = Poset::from_relation(2, []).unwrap();
        let k = SimplicialComplex::order_complex(&p, 4, 1000).unwrap();
        assert_eq!(k.f_vector(), vec![2]);
        assert!(!k.is_truncated());
    }

    #[test]
    fn chain_is_a_full_simplex() {
        let p = Poset::from_leq_fn(4, |x, y| x <= y).unwrap();
        let k = SimplicialComplex::order_complex(&p, 4, 1000).unwrap();
        assert_eq!(k.f_vector(), vec![4, 6, 4, 1]);
        assert_eq!(k.cone_point(), Some(3));
        assert_eq!(k.facets(), vec![vec![0, 1, 2, 3]]);
    }

    #[test]
    fn truncation_flag() {
        let p = Poset::from_leq_fn(4, |x, y| x <= y).unwrap();
        let k = SimplicialComplex::order_complex(&p, 2, 1000).unwrap();
        assert!(k.is_truncated());
        assert_eq!(k.f_vector(), vec![4, 6, 4]);
        let k = SimplicialComplex::order_complex(&p, 3, 1000).unwrap();
        assert!(!k.is_truncated());
    }

    #[test]
    fn chain_cap_fires() {
        let p = Poset::from_leq_fn(6, |x, y| x <= y).unwrap();
        assert!(matches!(
            SimplicialComplex::order_complex(&p, 5, 10),
            Err(Error::InstanceTooLarge { .. })
        ));
    }

    #[test]
    fn facets_round_trip() {
        let facets = vec![vec![0, 1, 2], vec![2, 3], vec![4]];
        let k = SimplicialComplex::from_facets(5, &facets, 4, 1000).unwrap();
        assert_eq!(k.f_vector(), vec![5, 4, 1]);
        let again: Vec<Vec<usize>> = k.facets().iter().map(|f| f.iter().map(|&v| v as usize).collect()).collect();
        assert_eq!(SimplicialComplex::from_facets(5, &again, 4, 1000).unwrap(), k);
        assert!(k.contains(&[1, 2]) && !k.contains(&[1, 3]));
    }

    #[test]
    fn empty_complex() {
        let k = SimplicialComplex::from_facets(0, &[], 4, 10).unwrap();
        assert!(k.is_empty());
        assert_eq!(k.dimension(), None);
        assert_eq!(k.reduced_euler_characteristic(), -1);
    }
}
