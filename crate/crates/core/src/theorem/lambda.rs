//! The equivariant simplicial map induced by a proper coloring of a
//! compatibility graph.
//!
//! Given a free G-poset `P` and a proper coloring `c` of `C_P` with `C`
//! colors, every `x` is sent to `(g_x^-1, c(g_x . x))`, where `g_x . x` is
//! the unique orbit element of smallest color. The target is the model
//! poset `G x {1..C-|G|+1}`.

use serde::Serialize;

use crate::coloring::Coloring;
use crate::compat::build_compat_graph;
use crate::error::{Error, Result};
use crate::poset::GPoset;
use crate::topology::build_eng;

/// Value of the map at one element: (group element, level).
pub type LambdaValue = (usize, usize);

#[derive(Clone, Debug)]
pub struct LambdaMap<'a> {
    source: &'a GPoset,
    coloring: Coloring,
    assignment: Vec<LambdaValue>,
    levels: usize,
}

impl<'a> LambdaMap<'a> {
    /// Wraps an arbitrary table without checks, e.g. one read from a file
    /// for [`verify_lambda`].
    pub fn from_parts(source: &'a GPoset, coloring: Coloring, assignment: Vec<LambdaValue>) -> Result<Self> {
        if assignment.len() != source.len() {
            return Err(Error::InvalidArgument(format!(
                "map table has {} entries for {} elements",
                assignment.len(),
                source.len()
            )));
        }
        let levels = (coloring.color_count() + 1).saturating_sub(source.group().order());
        Ok(LambdaMap { source, coloring, assignment, levels })
    }

    pub fn source(&self) -> &'a GPoset {
        self.source
    }

    pub fn coloring(&self) -> &Coloring {
        &self.coloring
    }

    pub fn assignment(&self) -> &[LambdaValue] {
        &self.assignment
    }

    #[inline]
    pub fn value(&self, x: usize) -> LambdaValue {
        self.assignment[x]
    }

    /// Number of levels `C - |G| + 1` of the target model poset.
    pub fn levels(&self) -> usize {
        self.levels
    }

    /// The target G-poset `G x {1..levels}`; its order complex has
    /// dimension `C - |G|`.
    pub fn target(&self) -> Result<GPoset> {
        let n = self.levels.checked_sub(1).ok_or_else(|| {
            Error::InvalidArgument("map has no target levels (fewer colors than |G|)".into())
        })?;
        build_eng(self.source.group(), n)
    }
}

/// Builds the map from a proper coloring of the compatibility graph.
pub fn construct_lambda<'a>(p: &'a GPoset, c: &Coloring) -> Result<LambdaMap<'a>> {
    if let Some((g, x)) = p.fixed_point() {
        return Err(Error::NotFree(format!("group element {g} fixes element {x}")));
    }
    let compat = build_compat_graph(p)?;
    if c.len() != p.len() {
        return Err(Error::ImproperColoring(format!("{} colors for {} elements", c.len(), p.len())));
    }
    if let Some(&(u, v)) = c.conflicts(&compat).first() {
        return Err(Error::ImproperColoring(format!(
            "adjacent elements {u} and {v} share color {}",
            c.color(u)
        )));
    }
    let map = build(p, c, true)?;
    let bound = map.levels;
    if let Some(x) = map.assignment.iter().position(|&(_, level)| level > bound) {
        return Err(Error::Internal(format!(
            "element {x} maps to level {} above C - |G| + 1 = {bound}",
            map.assignment[x].1
        )));
    }
    Ok(map)
}

/// Same construction with no properness check; orbit ties go to the
/// lowest group element. Used to exhibit what breaks when the coloring is
/// not proper.
pub fn construct_lambda_unchecked<'a>(p: &'a GPoset, c: &Coloring) -> Result<LambdaMap<'a>> {
    if c.len() != p.len() {
        return Err(Error::ImproperColoring(format!("{} colors for {} elements", c.len(), p.len())));
    }
    build(p, c, false)
}

fn build<'a>(p: &'a GPoset, c: &Coloring, strict: bool) -> Result<LambdaMap<'a>> {
    let group = p.group();
    let mut assignment = Vec::with_capacity(p.len());
    for x in 0..p.len() {
        let mut best: Option<(usize, usize)> = None; // (color, g)
        let mut tie = false;
        for g in group.elements() {
            let color = c.color(p.act(g, x));
            match best {
                Some((bc, _)) if color > bc => {}
                Some((bc, _)) if color == bc => tie = true,
                _ => {
                    best = Some((color, g));
                    tie = false;
                }
            }
        }
        let (color, gx) = best.expect("group is non-empty");
        if tie && strict {
            return Err(Error::Internal(format!(
                "orbit of element {x} has two members of minimum color {color}"
            )));
        }
        assignment.push((group.inv(gx), color));
    }
    LambdaMap::from_parts(p, c.clone(), assignment)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivarianceViolation {
    pub g: usize,
    pub x: usize,
    /// `lambda(g . x)`
    pub found: LambdaValue,
    /// `g . lambda(x)`
    pub expected: LambdaValue,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplicialityViolation {
    /// `x < y` in the source poset.
    pub x: usize,
    pub y: usize,
    pub level: usize,
    pub groups: (usize, usize),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LambdaReport {
    pub checked_actions: usize,
    pub checked_comparable_pairs: usize,
    pub equivariance: Vec<EquivarianceViolation>,
    pub simpliciality: Vec<SimplicialityViolation>,
    /// Elements mapped to a level outside `1..=C-|G|+1`.
    pub out_of_range: Vec<usize>,
}

impl LambdaReport {
    pub fn is_ok(&self) -> bool {
        self.equivariance.is_empty() && self.simpliciality.is_empty() && self.out_of_range.is_empty()
    }

    pub fn violation_count(&self) -> usize {
        self.equivariance.len() + self.simpliciality.len() + self.out_of_range.len()
    }
}

/// Checks `lambda(g . x) = g . lambda(x)` for every `(g, x)`, and that
/// comparable elements at the same level carry the same group element (so
/// chains map to chains).
pub fn verify_lambda(m: &LambdaMap<'_>) -> LambdaReport {
    let p = m.source;
    let group = p.group();
    let mut report = LambdaReport::default();
    for x in 0..p.len() {
        let (h, level) = m.value(x);
        if level == 0 || level > m.levels {
            report.out_of_range.push(x);
        }
        for g in group.elements() {
            report.checked_actions += 1;
            let found = m.value(p.act(g, x));
            let expected = (group.mul(g, h), level);
            if found != expected {
                report.equivariance.push(EquivarianceViolation { g, x, found, expected });
            }
        }
    }
    for (x, y) in p.poset().strict_pairs() {
        report.checked_comparable_pairs += 1;
        let (gx, lx) = m.value(x);
        let (gy, ly) = m.value(y);
        if lx == ly && gx != gy {
            report.simpliciality.push(SimplicialityViolation { x, y, level: lx, groups: (gx, gy) });
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::caps::Caps;
    use crate::graph::complete_graph;
    use crate::group::cyclic_group;
    use crate::hom::{attach_cyclic_action, build_hom_poset};

    // Z_2 x {1,2}: index = 2 * (level - 1) + g, g in {e=0, w=1}
    fn two_level() -> GPoset {
        build_eng(&cyclic_group(2).unwrap(), 1).unwrap()
    }

    #[test]
    fn hand_computed_two_level_map() {
        let p = two_level();
        let c = Coloring::new(vec![1, 2, 3, 4]);
        let m = construct_lambda(&p, &c).unwrap();
        assert_eq!(m.assignment(), &[(0, 1), (1, 1), (0, 3), (1, 3)]);
        assert_eq!(m.levels(), 3);
        assert!(verify_lambda(&m).is_ok());
        assert_eq!(m.target().unwrap().len(), 6);
    }

    #[test]
    fn hom_k2_k2_map() {
        let k2 = complete_graph(2).unwrap();
        let acted = attach_cyclic_action(build_hom_poset(&k2, &k2, &Caps::default()).unwrap()).unwrap();
        let c = Coloring::new(vec![1, 2]);
        let m = construct_lambda(acted.gposet(), &c).unwrap();
        assert_eq!(m.assignment(), &[(0, 1), (1, 1)]);
        assert!(verify_lambda(&m).is_ok());
    }

    #[test]
    fn repeated_orbit_color_is_improper() {
        let p = two_level();
        let c = Coloring::new(vec![1, 1, 2, 3]);
        assert!(matches!(construct_lambda(&p, &c), Err(Error::ImproperColoring(_))));
    }

    #[test]
    fn corrupted_entry_breaks_equivariance() {
        let p = two_level();
        let c = Coloring::new(vec![1, 2, 3, 4]);
        let m = construct_lambda(&p, &c).unwrap();
        let mut table = m.assignment().to_vec();
        table[2].0 = 1;
        let bad = LambdaMap::from_parts(&p, c, table).unwrap();
        let report = verify_lambda(&bad);
        assert!(!report.is_ok());
        assert!(report.equivariance.iter().any(|v| v.x == 2 || p.act(v.g, v.x) == 2));
    }

    #[test]
    fn improper_coloring_breaks_simpliciality() {
        // (e,1) < (w,2) are adjacent in C_P; giving them one color while
        // orbits stay rainbow makes a comparable pair collide in level
        let p = two_level();
        let c = Coloring::new(vec![1, 2, 2, 1]);
        assert!(construct_lambda(&p, &c).is_err());
        let m = construct_lambda_unchecked(&p, &c).unwrap();
        let report = verify_lambda(&m);
        assert!(!report.simpliciality.is_empty());
        assert!(report.equivariance.is_empty());
    }

    #[test]
    fn extra_colors_stay_in_range() {
        let p = two_level();
        let c = Coloring::new(vec![5, 2, 9, 7]);
        let m = construct_lambda(&p, &c).unwrap();
        assert!(verify_lambda(&m).is_ok());
        assert!(m.assignment().iter().all(|&(_, l)| l <= m.levels()));
    }
}
