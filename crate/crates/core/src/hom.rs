//! Hom posets `Hom_p(F, H)` and the two group actions on them: cyclic
//! shift of the cells for `F = K_r`, and reversal of the cells for
//! `F = C_2r`.

use crate::bitset::mask_bits;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graph::{cycle_graph, Graph, VertexMap};
use crate::group::cyclic_group;
use crate::poset::{GPoset, Poset};

/// Largest target graph supported; cells are single-word bitsets.
pub const MAX_TARGET_VERTICES: usize = 64;

/// A tuple `(A_1, ..., A_n)` of non-empty vertex sets of `H`, one per vertex
/// of `F`, stored as bitmasks over `V(H)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HomElement {
    cells: Vec<u64>,
}

impl HomElement {
    pub fn new(cells: Vec<u64>) -> Self {
        HomElement { cells }
    }

    pub fn cells(&self) -> &[u64] {
        &self.cells
    }

    /// Vertices of cell `i`, increasing.
    pub fn cell_vertices(&self, i: usize) -> Vec<usize> {
        mask_bits(self.cells[i]).collect()
    }

    /// Coordinatewise containment.
    pub fn leq(&self, other: &HomElement) -> bool {
        self.cells.iter().zip(&other.cells).all(|(a, b)| a & !b == 0)
    }

    /// Checks the defining condition pair by pair against `H`'s edge set.
    pub fn satisfies(&self, f: &Graph, h: &Graph) -> bool {
        let in_range = |v: usize| v < h.vertex_count();
        self.cells.len() == f.vertex_count()
            && self.cells.iter().all(|&c| c != 0 && mask_bits(c).all(in_range))
            && f.edges().iter().all(|&(i, j)| {
                mask_bits(self.cells[i]).all(|a| mask_bits(self.cells[j]).all(|b| h.has_edge(a, b)))
            })
    }
}

/// The poset `Hom_p(F, H)` with elements in lexicographic order of their
/// cell masks.
#[derive(Clone, Debug)]
pub struct HomPoset {
    f: Graph,
    h: Graph,
    elements: Vec<HomElement>,
    poset: Poset,
}

impl HomPoset {
    pub fn source(&self) -> &Graph {
        &self.f
    }

    pub fn target(&self) -> &Graph {
        &self.h
    }

    pub fn elements(&self) -> &[HomElement] {
        &self.elements
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, e: &HomElement) -> Option<usize> {
        self.elements.binary_search(e).ok()
    }
}

/// Enumerates `Hom_p(F, H)` by backtracking over the vertices of `F` in
/// order. Each cell is restricted to the common neighbourhood of the
/// already-chosen cells on adjacent `F` vertices.
pub fn build_hom_poset(f: &Graph, h: &Graph, caps: &Caps) -> Result<HomPoset> {
    if f.has_loops() || h.has_loops() {
        return Err(Error::InvalidArgument("Hom poset needs loop-free F and H".into()));
    }
    if f.vertex_count() == 0 {
        return Err(Error::InvalidArgument("F must have at least one vertex".into()));
    }
    if h.vertex_count() > MAX_TARGET_VERTICES {
        return Err(Error::InvalidArgument(format!(
            "target graph has {} vertices, at most {MAX_TARGET_VERTICES} supported",
            h.vertex_count()
        )));
    }
    let nh = h.vertex_count();
    let full: u64 = if nh == 64 { u64::MAX } else { (1u64 << nh) - 1 };
    let nbr: Vec<u64> = (0..nh)
        .map(|v| h.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
        .collect();
    let earlier: Vec<Vec<usize>> = (0..f.vertex_count())
        .map(|i| f.neighbors(i).iter().copied().filter(|&j| j < i).collect())
        .collect();

    let mut en = Enumerator {
        nbr: &nbr,
        earlier: &earlier,
        full,
        cells: vec![0; f.vertex_count()],
        common: vec![0; f.vertex_count()],
        out: Vec::new(),
        nodes: 0,
        caps,
    };
    en.extend(0)?;
    let mut elements = en.out;
    elements.sort_unstable();

    if let Some(bad) = elements.iter().find(|e| !e.satisfies(f, h)) {
        return Err(Error::Internal(format!("enumerated invalid Hom element {:?}", bad.cells)));
    }
    let poset = Poset::from_leq_fn(elements.len(), |x, y| elements[x].leq(&elements[y]))?;
    Ok(HomPoset { f: f.clone(), h: h.clone(), elements, poset })
}

struct Enumerator<'a> {
    nbr: &'a [u64],
    earlier: &'a [Vec<usize>],
    full: u64,
    cells: Vec<u64>,
    // common[i]: vertices adjacent to every vertex of cells[i]
    common: Vec<u64>,
    out: Vec<HomElement>,
    nodes: u64,
    caps: &'a Caps,
}

impl Enumerator<'_> {
    fn extend(&mut self, i: usize) -> Result<()> {
        if i == self.cells.len() {
            if self.out.len() as u64 >= self.caps.max_elements {
                return Err(Error::InstanceTooLarge { what: "Hom poset elements", cap: self.caps.max_elements });
            }
            self.out.push(HomElement::new(self.cells.clone()));
            return Ok(());
        }
        let allowed = self.earlier[i].iter().fold(self.full, |m, &j| m & self.common[j]);
        let mut sub = allowed;
        while sub != 0 {
            self.nodes += 1;
            if self.nodes > self.caps.max_nodes {
                return Err(Error::InstanceTooLarge { what: "Hom enumeration nodes", cap: self.caps.max_nodes });
            }
            self.cells[i] = sub;
            self.common[i] = mask_bits(sub).fold(self.full, |m, v| m & self.nbr[v]);
            self.extend(i + 1)?;
            sub = (sub - 1) & allowed;
        }
        Ok(())
    }
}

/// Which of the two built-in actions a [`ActedHomPoset`] carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HomAction {
    CyclicShift,
    Reflection,
}

/// A Hom poset together with its group action.
#[derive(Clone, Debug)]
pub struct ActedHomPoset {
    hom: HomPoset,
    gposet: GPoset,
    action: HomAction,
    free: bool,
}

impl ActedHomPoset {
    pub fn hom(&self) -> &HomPoset {
        &self.hom
    }

    pub fn gposet(&self) -> &GPoset {
        &self.gposet
    }

    pub fn action(&self) -> HomAction {
        self.action
    }

    pub fn is_free(&self) -> bool {
        self.free
    }
}

fn attach(hom: HomPoset, action: HomAction, order: usize, permute: impl Fn(usize, usize) -> usize) -> Result<ActedHomPoset> {
    let group = cyclic_group(order)?;
    let n = hom.f.vertex_count();
    let mut table = Vec::with_capacity(order);
    for g in 0..order {
        let mut row = Vec::with_capacity(hom.len());
        for e in &hom.elements {
            let image = HomElement::new((0..n).map(|j| e.cells[permute(g, j)]).collect());
            let idx = hom.index_of(&image).ok_or_else(|| {
                Error::Internal(format!("action image {:?} is not a Hom element", image.cells))
            })?;
            row.push(idx);
        }
        table.push(row);
    }
    let gposet = GPoset::new(hom.poset.clone(), group, table)?;
    let free = gposet.is_free_action();
    Ok(ActedHomPoset { hom, gposet, action, free })
}

/// Z_r acting on `Hom_p(K_r, H)`: `w^i . (A_1..A_r) = (A_{1+i}, .., A_{r+i})`
/// with indices mod r.
pub fn attach_cyclic_action(hom: HomPoset) -> Result<ActedHomPoset> {
    let r = hom.f.vertex_count();
    if r < 2 || hom.f.edge_count() != r * (r - 1) / 2 || hom.f.has_loops() {
        return Err(Error::WrongShape(format!(
            "cyclic action needs F = K_r with r >= 2; F has {} vertices and {} edges",
            r,
            hom.f.edge_count()
        )));
    }
    attach(hom, HomAction::CyclicShift, r, move |g, j| (j + g) % r)
}

/// Z_2 acting on `Hom_p(C_2r, H)` by reversing the cell order.
pub fn attach_reflection_action(hom: HomPoset) -> Result<ActedHomPoset> {
    let m = hom.f.vertex_count();
    let is_even_cycle = m >= 4 && m.is_multiple_of(2) && cycle_graph(m).is_ok_and(|c| c.edges() == hom.f.edges());
    if !is_even_cycle {
        return Err(Error::WrongShape(
            "reflection action needs F to be an even cycle with edges (i, i+1 mod 2r)".into(),
        ));
    }
    attach(hom, HomAction::Reflection, 2, move |g, j| if g == 0 { j } else { m - 1 - j })
}

/// Maps every element to the smallest vertex of its first cell. This is a
/// graph homomorphism from the compatibility graph to `H`; the check runs
/// on every call.
pub fn projection_hom<'a>(acted: &'a ActedHomPoset, compat: &'a Graph) -> Result<VertexMap<'a>> {
    if compat.vertex_count() != acted.hom.len() {
        return Err(Error::InvalidArgument(format!(
            "compatibility graph has {} vertices, Hom poset has {} elements",
            compat.vertex_count(),
            acted.hom.len()
        )));
    }
    let assignment = acted
        .hom
        .elements
        .iter()
        .map(|e| e.cells[0].trailing_zeros() as usize)
        .collect();
    let map = VertexMap::new(compat, &acted.hom.h, assignment)?;
    let broken = map.broken_edges();
    if let Some(&(u, v)) = broken.first() {
        return Err(Error::TheoremViolation(format!(
            "projection to H is not a homomorphism: compatibility edge ({u}, {v}) maps to a non-edge"
        )));
    }
    Ok(map)
}
