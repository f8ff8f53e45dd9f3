//! Finite posets and posets with a group action.

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// Posets up to this size keep a materialized comparability matrix;
/// larger ones answer `leq` by binary search in sorted up-sets.
pub const DENSE_LIMIT: usize = 4096;

/// A validated finite partial order on `0..n`.
#[derive(Clone, Debug)]
pub struct Poset {
    n: usize,
    // strict up- and down-sets, sorted
    up: Vec<Vec<u32>>,
    down: Vec<Vec<u32>>,
    dense: Option<Vec<BitSet>>,
}

impl Poset {
    /// Builds a poset from pairs `x <= y`. Reflexive pairs are implied;
    /// the relation must already be transitive and antisymmetric.
    pub fn from_relation<I>(n: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut up = vec![Vec::new(); n];
        for (x, y) in pairs {
            if x >= n || y >= n {
                return Err(Error::OrderAxiom(format!("pair ({x}, {y}) out of range for {n} elements")));
            }
            if x != y {
                up[x].push(y as u32);
            }
        }
        for list in &mut up {
            list.sort_unstable();
            list.dedup();
        }
        Self::from_up_sets(up)
    }

    /// Builds a poset by querying `leq(x, y)` on every ordered pair.
    pub fn from_leq_fn(n: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let up = (0..n)
            .map(|x| (0..n).filter(|&y| y != x && leq(x, y)).map(|y| y as u32).collect())
            .collect();
        Self::from_up_sets(up)
    }

    fn from_up_sets(up: Vec<Vec<u32>>) -> Result<Self> {
        let n = up.len();
        let mut down = vec![Vec::new(); n];
        for (x, list) in up.iter().enumerate() {
            for &y in list {
                down[y as usize].push(x as u32);
            }
        }
        let dense = (n <= DENSE_LIMIT).then(|| {
            up.iter()
                .enumerate()
                .map(|(x, list)| {
                    let mut row = BitSet::new(n);
                    row.insert(x);
                    for &y in list {
                        row.insert(y as usize);
                    }
                    row
                })
                .collect::<Vec<_>>()
        });
        let poset = Poset { n, up, down, dense };
        poset.validate()?;
        Ok(poset)
    }

    fn validate(&self) -> Result<()> {
        for x in 0..self.n {
            for &y in &self.up[x] {
                let y = y as usize;
                if self.lt(y, x) {
                    return Err(Error::OrderAxiom(format!(
                        "antisymmetry fails: {x} <= {y} and {y} <= {x}"
                    )));
                }
                let transitive = match &self.dense {
                    Some(rows) => rows[y].is_subset(&rows[x]),
                    None => self.up[y].iter().all(|&z| self.up[x].binary_search(&z).is_ok()),
                };
                if !transitive {
                    let z = self.up[y].iter().find(|&&z| !self.leq(x, z as usize)).unwrap();
                    return Err(Error::OrderAxiom(format!(
                        "transitivity fails: {x} <= {y} <= {z} but not {x} <= {z}"
                    )));
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        match &self.dense {
            Some(rows) => rows[x].contains(y),
            None => x == y || self.up[x].binary_search(&(y as u32)).is_ok(),
        }
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    #[inline]
    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    /// Elements strictly above `x`, sorted.
    pub fn strict_up(&self, x: usize) -> &[u32] {
        &self.up[x]
    }

    /// Elements strictly below `x`, sorted.
    pub fn strict_down(&self, x: usize) -> &[u32] {
        &self.down[x]
    }

    /// All strict pairs `x < y`, ordered by `x` then `y`.
    pub fn strict_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.up
            .iter()
            .enumerate()
            .flat_map(|(x, list)| list.iter().map(move |&y| (x, y as usize)))
    }

    pub fn is_dense(&self) -> bool {
        self.dense.is_some()
    }

    /// Number of elements in a longest chain (0 for the empty poset).
    pub fn height(&self) -> usize {
        // increasing down-set size is a linear extension
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&x| self.down[x].len());
        let mut longest = vec![1usize; self.n];
        for &x in &order {
            for &y in &self.up[x] {
                let y = y as usize;
                longest[y] = longest[y].max(longest[x] + 1);
            }
        }
        longest.into_iter().max().unwrap_or(0)
    }

    /// The greatest element, when one exists.
    pub fn maximum(&self) -> Option<usize> {
        (0..self.n).find(|&x| self.down[x].len() + 1 == self.n && self.up[x].is_empty())
    }
}

/// A poset with a validated order-preserving group action.
#[derive(Clone, Debug)]
pub struct GPoset {
    poset: Poset,
    group: FiniteGroup,
    // action[g * n + x] = g . x
    action: Vec<usize>,
}

impl GPoset {
    /// Validates the action axioms and order preservation.
    pub fn new(poset: Poset, group: FiniteGroup, action: Vec<Vec<usize>>) -> Result<Self> {
        let n = poset.len();
        if action.len() != group.order() {
            return Err(Error::ActionAxiom(format!(
                "{} action rows for a group of order {}",
                action.len(),
                group.order()
            )));
        }
        for (g, row) in action.iter().enumerate() {
            if row.len() != n {
                return Err(Error::ActionAxiom(format!("row {g} has {} entries, expected {n}", row.len())));
            }
            if let Some(x) = row.iter().position(|&y| y >= n) {
                return Err(Error::ActionAxiom(format!("{g} . {x} out of range")));
            }
        }
        let e = group.identity();
        if let Some(x) = (0..n).find(|&x| action[e][x] != x) {
            return Err(Error::ActionAxiom(format!("identity moves element {x}")));
        }
        for g in group.elements() {
            for h in group.elements() {
                let gh = group.mul(g, h);
                if let Some(x) = (0..n).find(|&x| action[gh][x] != action[g][action[h][x]]) {
                    return Err(Error::ActionAxiom(format!(
                        "(g h) . x != g . (h . x) for g={g}, h={h}, x={x}"
                    )));
                }
            }
        }
        for g in group.elements() {
            for (x, y) in poset.strict_pairs() {
                if !poset.lt(action[g][x], action[g][y]) {
                    return Err(Error::Equivariance(format!(
                        "{x} < {y} but not {g}.{x} < {g}.{y}"
                    )));
                }
            }
        }
        Ok(GPoset { poset, group, action: action.into_iter().flatten().collect() })
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    /// `g . x`
    #[inline]
    pub fn act(&self, g: usize, x: usize) -> usize {
        self.action[g * self.poset.len() + x]
    }

    pub fn action_table(&self) -> Vec<Vec<usize>> {
        let n = self.poset.len();
        if n == 0 {
            return vec![Vec::new(); self.group.order()];
        }
        self.action.chunks(n).map(<[usize]>::to_vec).collect()
    }

    /// First `(g, x)` with `g != e` and `g . x = x`, if any.
    pub fn fixed_point(&self) -> Option<(usize, usize)> {
        self.group
            .non_identity()
            .flat_map(|g| (0..self.len()).map(move |x| (g, x)))
            .find(|&(g, x)| self.act(g, x) == x)
    }

    pub fn is_free_action(&self) -> bool {
        self.fixed_point().is_none()
    }

    /// `{ g . x : g in G }`, sorted.
    pub fn orbit(&self, x: usize) -> Vec<usize> {
        let mut o: Vec<usize> = self.group.elements().map(|g| self.act(g, x)).collect();
        o.sort_unstable();
        o.dedup();
        o
    }

    /// Orbits ordered by their smallest element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for x in 0..self.len() {
            if !seen[x] {
                let o = self.orbit(x);
                for &y in &o {
                    seen[y] = true;
                }
                out.push(o);
            }
        }
        out
    }
}

/// Validates raw relation and action tables into a [`GPoset`].
pub fn make_gposet(
    n: usize,
    leq: &[(usize, usize)],
    group: FiniteGroup,
    action: Vec<Vec<usize>>,
) -> Result<GPoset> {
    GPoset::new(Poset::from_relation(n, leq.iter().copied())?, group, action)
}
