//! End-to-end bound certificates: `conn_H + 1 + |G| <= chi(C_P) <= chi(H)`.

use std::fmt;

use serde::Serialize;

use super::lambda::{construct_lambda, verify_lambda, LambdaReport, LambdaValue};
use crate::caps::Caps;
use crate::coloring::{chromatic_number_capped, Coloring};
use crate::compat::{build_compat_graph, check_loops, LoopReport};
use crate::error::{Error, Result};
use crate::graph::{cycle_graph, Graph};
use crate::hom::{attach_cyclic_action, attach_reflection_action, build_hom_poset, projection_hom, ActedHomPoset, HomAction};
use crate::poset::GPoset;
use crate::topology::{homological_connectivity_with, order_complex, Connectivity, DEFAULT_DIM_CAP, DEFAULT_PRIMES};

/// Knobs shared by every pipeline stage.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PipelineOptions {
    pub caps: Caps,
    pub dim_cap: usize,
    pub primes: Vec<u64>,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions { caps: Caps::default(), dim_cap: DEFAULT_DIM_CAP, primes: DEFAULT_PRIMES.to_vec() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Instance {
    pub kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source_graph: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target_graph: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub action: Option<HomAction>,
    pub group_order: usize,
    pub elements: usize,
}

/// One inequality of the certified chain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainLink {
    pub relation: &'static str,
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
    /// The inequality has no content here (empty poset).
    pub vacuous: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessColoring {
    pub chi: usize,
    pub colors: Vec<usize>,
}

impl From<&Coloring> for WitnessColoring {
    fn from(c: &Coloring) -> Self {
        WitnessColoring { chi: c.color_count(), colors: c.assignment().to_vec() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundCertificate {
    pub instance: Instance,
    pub connectivity: Connectivity,
    pub conn_h: i64,
    pub group_order: usize,
    pub complex_dimension: i64,
    pub f_vector: Vec<usize>,
    /// `conn_H + 1 + |G|`
    pub lower_bound: i64,
    pub compat_edges: usize,
    pub loops: LoopReport,
    pub chi_cp: usize,
    pub cp_coloring: WitnessColoring,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi_h: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h_coloring: Option<WitnessColoring>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub projection: Option<Vec<usize>>,
    pub lambda_levels: usize,
    pub lambda: Vec<LambdaValue>,
    pub lambda_report: LambdaReport,
    pub chain: Vec<ChainLink>,
    pub vacuous: bool,
    pub verdict: &'static str,
}

impl BoundCertificate {
    pub fn link(&self, relation: &str) -> Option<&ChainLink> {
        self.chain.iter().find(|l| l.relation == relation)
    }
}

impl fmt::Display for BoundCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match (&self.instance.source_graph, &self.instance.target_graph) {
            (Some(t), Some(h)) => format!("Hom({t}, {h})"),
            _ => format!("{} ({} elements)", self.instance.kind, self.instance.elements),
        };
        writeln!(f, "{name}: |P| = {}, |G| = {}", self.instance.elements, self.group_order)?;
        writeln!(
            f,
            "  conn_H = {} ({}, primes {:?}{}{})",
            self.conn_h,
            self.connectivity.qualifier,
            self.connectivity.primes,
            if self.connectivity.capped { ", capped" } else { "" },
            if self.connectivity.torsion_warning { ", torsion warning" } else { "" },
        )?;
        let mut chain = format!("  {} <= chi(C_P) = {}", self.lower_bound, self.chi_cp);
        if let Some(chi_h) = self.chi_h {
            chain.push_str(&format!(" <= chi(H) = {chi_h}"));
        }
        writeln!(f, "{chain}")?;
        for link in &self.chain {
            let status = if link.vacuous { "vacuous" } else if link.holds { "ok" } else { "FAIL" };
            writeln!(f, "  [{status}] {}: {} <= {}", link.relation, link.lhs, link.rhs)?;
        }
        write!(f, "  verdict: {}", self.verdict)
    }
}

pub const LINK_INDEX_BRACKET: &str = "conn_H + 1 <= dim";
pub const LINK_THEOREM: &str = "conn_H + 1 + |G| <= chi(C_P)";
pub const LINK_PROJECTION: &str = "chi(C_P) <= chi(H)";

/// Certificate for an arbitrary free G-poset, optionally against a graph
/// `H` (only χ(H) is computed; no homomorphism to it is known).
pub fn bound_certificate(p: &GPoset, h: Option<&Graph>, opts: &PipelineOptions) -> Result<BoundCertificate> {
    let instance = Instance {
        kind: "poset",
        source_graph: None,
        target_graph: None,
        action: None,
        group_order: p.group().order(),
        elements: p.len(),
    };
    certify(p, None, h, instance, opts)
}

/// Certificate for a Hom poset with its action; includes the projection
/// homomorphism `C_P -> H` and χ(H).
pub fn hom_bound_certificate(acted: &ActedHomPoset, names: (&str, &str), opts: &PipelineOptions) -> Result<BoundCertificate> {
    let instance = Instance {
        kind: "hom",
        source_graph: Some(names.0.to_string()),
        target_graph: Some(names.1.to_string()),
        action: Some(acted.action()),
        group_order: acted.gposet().group().order(),
        elements: acted.hom().len(),
    };
    certify(acted.gposet(), Some(acted), Some(acted.hom().target()), instance, opts)
}

fn certify(
    p: &GPoset,
    acted: Option<&ActedHomPoset>,
    h: Option<&Graph>,
    instance: Instance,
    opts: &PipelineOptions,
) -> Result<BoundCertificate> {
    if let Some((g, x)) = p.fixed_point() {
        return Err(Error::NotFree(format!("group element {g} fixes element {x}")));
    }
    let group_order = p.group().order();
    let compat = build_compat_graph(p)?;
    let loops = check_loops(&compat);
    if !loops.is_loop_free() {
        return Err(Error::TheoremViolation(format!(
            "free action but the compatibility graph has loops at {:?}",
            loops.loops
        )));
    }
    let (chi_cp, coloring) = chromatic_number_capped(&compat, opts.caps.max_nodes)?;

    let lambda = construct_lambda(p, &coloring).map_err(|e| match e {
        Error::ImproperColoring(m) => Error::Internal(format!("solver returned an improper coloring: {m}")),
        other => other,
    })?;
    let lambda_report = verify_lambda(&lambda);
    if !lambda_report.is_ok() {
        return Err(Error::TheoremViolation(format!(
            "induced map has {} violations (equivariance {}, simpliciality {}, range {})",
            lambda_report.violation_count(),
            lambda_report.equivariance.len(),
            lambda_report.simpliciality.len(),
            lambda_report.out_of_range.len()
        )));
    }

    let complex = order_complex(p.poset(), opts.dim_cap, &opts.caps)?;
    let connectivity = homological_connectivity_with(&complex, &opts.primes)?;
    let conn_h = connectivity.conn;
    let dimension = p.poset().height() as i64 - 1;
    let lower_bound = conn_h + 1 + group_order as i64;
    let vacuous = p.is_empty();

    let mut chain = vec![
        ChainLink { relation: LINK_INDEX_BRACKET, lhs: conn_h + 1, rhs: dimension, holds: conn_h < dimension, vacuous },
        ChainLink { relation: LINK_THEOREM, lhs: lower_bound, rhs: chi_cp as i64, holds: lower_bound <= chi_cp as i64, vacuous },
    ];

    let mut projection = None;
    if let Some(acted) = acted {
        let map = projection_hom(acted, &compat)?;
        projection = Some(map.assignment().to_vec());
    }
    let (chi_h, h_coloring) = match h {
        Some(h) => {
            let (chi, col) = chromatic_number_capped(h, opts.caps.max_nodes)?;
            if acted.is_some() {
                chain.push(ChainLink {
                    relation: LINK_PROJECTION,
                    lhs: chi_cp as i64,
                    rhs: chi as i64,
                    holds: chi_cp <= chi,
                    vacuous: false,
                });
            }
            (Some(chi), Some(WitnessColoring::from(&col)))
        }
        None => (None, None),
    };

    if let Some(bad) = chain.iter().find(|l| !l.holds && !l.vacuous) {
        return Err(Error::TheoremViolation(format!(
            "{} fails: {} > {}",
            bad.relation, bad.lhs, bad.rhs
        )));
    }

    Ok(BoundCertificate {
        instance,
        conn_h,
        group_order,
        complex_dimension: dimension,
        f_vector: complex.f_vector(),
        connectivity,
        lower_bound,
        compat_edges: compat.edge_count(),
        loops,
        chi_cp,
        cp_coloring: WitnessColoring::from(&coloring),
        chi_h,
        h_coloring,
        projection,
        lambda_levels: lambda.levels(),
        lambda: lambda.assignment().to_vec(),
        lambda_report,
        chain,
        vacuous,
        verdict: if vacuous { "vacuous" } else { "certified" },
    })
}

/// Which test graph family `T` belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TestGraphKind {
    Complete,
    EvenCycle,
}

/// Recognizes `K_r` (r >= 2) or the even cycle with edges `(i, i+1 mod 2r)`.
pub fn classify_test_graph(t: &Graph) -> Result<(TestGraphKind, usize)> {
    let n = t.vertex_count();
    if n >= 2 && !t.has_loops() && t.edge_count() == n * (n - 1) / 2 {
        return Ok((TestGraphKind::Complete, n));
    }
    if n >= 4 && n.is_multiple_of(2) && cycle_graph(n)?.edges() == t.edges() {
        return Ok((TestGraphKind::EvenCycle, 2));
    }
    Err(Error::WrongShape("test graph must be K_r (r >= 2) or an even cycle in standard order".into()))
}

/// Builds the acted Hom poset for a test graph `T`.
pub fn acted_hom(t: &Graph, h: &Graph, caps: &Caps) -> Result<ActedHomPoset> {
    let (kind, _) = classify_test_graph(t)?;
    let hom = build_hom_poset(t, h, caps)?;
    match kind {
        TestGraphKind::Complete => attach_cyclic_action(hom),
        TestGraphKind::EvenCycle => attach_reflection_action(hom),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TestGraphReport {
    pub kind: TestGraphKind,
    pub chi_t: usize,
    /// Homological connectivity of `Hom(T, H)`.
    pub k: i64,
    pub chi_h: usize,
    /// `k + 1 + chi(T)`
    pub required: i64,
    pub holds: bool,
    pub slack: i64,
    pub vacuous: bool,
    pub certificate: BoundCertificate,
}

/// Checks `chi(H) >= k + 1 + chi(T)` with `k` the homological connectivity
/// of `Hom(T, H)`, through the full certificate pipeline.
pub fn test_graph_check(t: &Graph, h: &Graph, names: (&str, &str), opts: &PipelineOptions) -> Result<TestGraphReport> {
    let (kind, chi_t) = classify_test_graph(t)?;
    let acted = acted_hom(t, h, &opts.caps)?;
    let certificate = hom_bound_certificate(&acted, names, opts)?;
    let k = certificate.conn_h;
    let chi_h = certificate.chi_h.expect("hom certificates compute chi(H)");
    let required = k + 1 + chi_t as i64;
    let holds = chi_h as i64 >= required;
    // (-1)-connected means non-empty; below that the statement says nothing
    let vacuous = k < -1;
    if !holds && !vacuous {
        return Err(Error::TheoremViolation(format!(
            "test-graph inequality fails: chi(H) = {chi_h} < {required} = k + 1 + chi(T)"
        )));
    }
    Ok(TestGraphReport { kind, chi_t, k, chi_h, required, holds, slack: chi_h as i64 - required, vacuous, certificate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, petersen_graph};
    use crate::group::cyclic_group;
    use crate::topology::build_eng;

    fn hom_cert(t: &Graph, h: &Graph) -> BoundCertificate {
        let opts = PipelineOptions::default();
        let acted = acted_hom(t, h, &opts.caps).unwrap();
        hom_bound_certificate(&acted, ("T", "H"), &opts).unwrap()
    }

    #[test]
    fn k2_k3_chain_is_tight() {
        let c = hom_cert(&complete_graph(2).unwrap(), &complete_graph(3).unwrap());
        assert_eq!((c.conn_h, c.lower_bound, c.chi_cp, c.chi_h), (0, 3, 3, Some(3)));
        assert_eq!(c.verdict, "certified");
        assert!(c.chain.iter().all(|l| l.holds));
    }

    #[test]
    fn k2_petersen() {
        let c = hom_cert(&complete_graph(2).unwrap(), &petersen_graph());
        assert_eq!(c.lower_bound, 3);
        assert_eq!(c.chi_h, Some(3));
    }

    #[test]
    fn two_level_poset() {
        let p = build_eng(&cyclic_group(2).unwrap(), 1).unwrap();
        let c = bound_certificate(&p, None, &PipelineOptions::default()).unwrap();
        assert_eq!(c.lower_bound, 3);
        assert_eq!(c.chi_cp, 4);
        assert!(c.link(LINK_PROJECTION).is_none());
    }

    #[test]
    fn empty_poset_is_vacuous() {
        let c = hom_cert(&complete_graph(3).unwrap(), &complete_graph(2).unwrap());
        assert!(c.vacuous);
        assert_eq!(c.conn_h, -2);
        assert_eq!(c.lower_bound, 2);
        assert_eq!(c.verdict, "vacuous");
    }

    #[test]
    fn non_free_rejected() {
        let z2 = cyclic_group(2).unwrap();
        let p = crate::poset::make_gposet(1, &[], z2, vec![vec![0], vec![0]]).unwrap();
        assert!(matches!(
            bound_certificate(&p, None, &PipelineOptions::default()),
            Err(Error::NotFree(_))
        ));
    }

    #[test]
    fn classify() {
        assert_eq!(classify_test_graph(&complete_graph(3).unwrap()).unwrap(), (TestGraphKind::Complete, 3));
        assert_eq!(classify_test_graph(&cycle_graph(6).unwrap()).unwrap(), (TestGraphKind::EvenCycle, 2));
        assert!(classify_test_graph(&cycle_graph(5).unwrap()).is_err());
        assert!(classify_test_graph(&complete_graph(1).unwrap()).is_err());
    }

    #[test]
    fn test_graph_k2_k4() {
        let r = test_graph_check(
            &complete_graph(2).unwrap(),
            &complete_graph(4).unwrap(),
            ("K2", "K4"),
            &PipelineOptions::default(),
        )
        .unwrap();
        assert_eq!((r.k, r.chi_h, r.required, r.slack), (1, 4, 4, 0));
        assert!(r.holds);
    }
}
