//! Acceptance suite: one PASS/FAIL line per criterion, each with its time
//! limit. Exits non-zero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use hombound::compat::{build_compat_graph, check_loops};
use hombound::theorem::{acted_hom, construct_lambda, hom_bound_certificate, test_graph_check, verify_lambda};
use hombound::topology::{build_eng, homological_connectivity, homology_ranks, index_interval, order_complex};
use hombound::{
    bound_certificate, build_hom_poset, chromatic_number, complete_graph, cycle_graph, cyclic_group, named_graph,
    petersen_graph, projection_hom, Caps, Graph, PipelineOptions,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{brute_chi, brute_hom_tuples, loops_by_definition, random_free_gposet, random_graph, symmetric_group_3};

type Outcome = Result<String, String>;

/// (id, name, time limit in seconds, check)
type Criterion = (u32, &'static str, u64, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn k(r: usize) -> Graph {
    complete_graph(r).unwrap()
}

fn opts() -> PipelineOptions {
    PipelineOptions::default()
}

/// Hom instances of the suite: K_r with r in {2, 3} against the five target
/// graphs, and C_4 against K_3 and K_4.
fn hom_suite() -> Vec<(String, String)> {
    let mut out = Vec::new();
    for t in ["K2", "K3"] {
        for h in ["K3", "K4", "K5", "C5", "petersen"] {
            out.push((t.to_string(), h.to_string()));
        }
    }
    out.push(("C4".into(), "K3".into()));
    out.push(("C4".into(), "K4".into()));
    out
}

fn criterion_1() -> Outcome {
    let cases = [(2, 2, 2), (2, 3, 12), (2, 4, 50), (3, 4, 60), (3, 2, 0)];
    for (r, n, expected) in cases {
        let (f, h) = (k(r), k(n));
        let oracle = brute_hom_tuples(&f, &h);
        ensure(oracle.len() == expected, || format!("oracle gives {} for Hom(K{r},K{n})", oracle.len()))?;
        let hp = build_hom_poset(&f, &h, &Caps::default()).map_err(|e| e.to_string())?;
        let built: Vec<Vec<u64>> = hp.elements().iter().map(|e| e.cells().to_vec()).collect();
        ensure(built == oracle, || format!("Hom(K{r},K{n}): built {} elements, oracle {}", built.len(), oracle.len()))?;
    }
    Ok("2, 12, 50, 60, 0 match product enumeration".into())
}

fn criterion_2() -> Outcome {
    for n in 2..=4 {
        let hp = build_hom_poset(&k(2), &k(n), &Caps::default()).map_err(|e| e.to_string())?;
        let cx = order_complex(hp.poset(), 4, &Caps::default()).map_err(|e| e.to_string())?;
        let mut sphere = vec![0; n - 1];
        sphere[n - 2] = 1;
        for p in [2, 32003] {
            let b = homology_ranks(&cx, p).map_err(|e| e.to_string())?;
            ensure(b.reduced_betti == sphere, || format!("Hom(K2,K{n}) over GF({p}): {:?}", b.reduced_betti))?;
        }
    }
    Ok("reduced Betti of S^0, S^1, S^2 over GF(2), GF(32003)".into())
}

fn criterion_3() -> Outcome {
    let mut checked = 0;
    let mut vacuous = 0;
    for (t, h) in hom_suite() {
        let (tg, hg) = (named_graph(&t).unwrap(), named_graph(&h).unwrap());
        let acted = acted_hom(&tg, &hg, &Caps::default()).map_err(|e| format!("{t}/{h}: {e}"))?;
        let cert = hom_bound_certificate(&acted, (&t, &h), &opts()).map_err(|e| format!("{t}/{h}: {e}"))?;
        // rebuild the map from the witness coloring and audit it again
        let coloring = hombound::Coloring::new(cert.cp_coloring.colors.clone());
        let map = construct_lambda(acted.gposet(), &coloring).map_err(|e| format!("{t}/{h}: {e}"))?;
        let report = verify_lambda(&map);
        ensure(report.is_ok(), || format!("{t}/{h}: {} map violations", report.violation_count()))?;
        if cert.vacuous {
            vacuous += 1;
        } else {
            ensure(cert.lower_bound <= cert.chi_cp as i64, || {
                format!("{t}/{h}: bound {} > chi(C_P) {}", cert.lower_bound, cert.chi_cp)
            })?;
        }
        checked += 1;
    }
    let z2 = cyclic_group(2).unwrap();
    let z3 = cyclic_group(3).unwrap();
    for (group, max_n) in [(&z2, 3), (&z3, 2)] {
        for n in 0..=max_n {
            let p = build_eng(group, n).map_err(|e| e.to_string())?;
            let cert = bound_certificate(&p, None, &opts()).map_err(|e| format!("E_{n}Z_{}: {e}", group.order()))?;
            ensure(cert.lambda_report.is_ok(), || format!("E_{n}Z_{}: map violations", group.order()))?;
            ensure(cert.lower_bound <= cert.chi_cp as i64, || format!("E_{n}Z_{}: bound fails", group.order()))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} instances, zero map violations ({vacuous} with empty poset, inequality vacuous)"))
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1e77a7);
    let groups = [cyclic_group(2).unwrap(), cyclic_group(3).unwrap(), cyclic_group(4).unwrap(), symmetric_group_3()];
    for trial in 0..100 {
        let group = &groups[trial % groups.len()];
        let m = rng.random_range(1..=8);
        let density = rng.random_range(0.1..0.6);
        let p = random_free_gposet(&mut rng, group, m, density);
        ensure(p.is_free_action(), || format!("trial {trial}: generator produced a non-free action"))?;
        let c = build_compat_graph(&p).map_err(|e| e.to_string())?;
        let report = check_loops(&c);
        ensure(report.is_loop_free(), || format!("trial {trial}: loops at {:?}", report.loops))?;
        ensure(loops_by_definition(&p).is_empty(), || format!("trial {trial}: oracle finds a loop"))?;
    }
    // a < c > b with Z_2 swapping a and b and fixing c
    let z2 = cyclic_group(2).unwrap();
    let p = hombound::make_gposet(3, &[(0, 2), (1, 2)], z2, vec![vec![0, 1, 2], vec![1, 0, 2]])
        .map_err(|e| e.to_string())?;
    let report = check_loops(&build_compat_graph(&p).map_err(|e| e.to_string())?);
    ensure(report.loops == vec![2], || format!("non-free poset: loops {:?}, expected [2]", report.loops))?;
    ensure(loops_by_definition(&p) == vec![2], || "oracle disagrees on the non-free poset".into())?;
    Ok("100 random free G-posets loop-free; fixed point detected as a loop".into())
}

fn criterion_5() -> Outcome {
    let mut seen = Vec::new();
    for (r, n) in [(2, 3), (2, 4), (3, 4), (3, 5)] {
        let acted = acted_hom(&k(r), &k(n), &Caps::default()).map_err(|e| e.to_string())?;
        let name = (format!("K{r}"), format!("K{n}"));
        let cert = hom_bound_certificate(&acted, (&name.0, &name.1), &opts()).map_err(|e| e.to_string())?;
        let chi_h = cert.chi_h.unwrap_or(0);
        ensure(chi_h == n, || format!("chi(K{n}) computed as {chi_h}"))?;
        ensure(cert.lower_bound == n as i64, || {
            format!("(K{r},K{n}): bound {} = r + conn + 1 with conn {}, expected {n}", cert.lower_bound, cert.conn_h)
        })?;
        seen.push(format!("(K{r},K{n})={}", cert.lower_bound));
    }
    Ok(format!("bound equals chi(H): {}", seen.join(" ")))
}

fn criterion_6() -> Outcome {
    let h = petersen_graph();
    let acted = acted_hom(&k(2), &h, &Caps::default()).map_err(|e| e.to_string())?;
    let cert = hom_bound_certificate(&acted, ("K2", "petersen"), &opts()).map_err(|e| e.to_string())?;
    let (chi, _) = chromatic_number(&h).map_err(|e| e.to_string())?;
    ensure(cert.lower_bound == 3, || format!("bound {}", cert.lower_bound))?;
    ensure(chi == 3 && cert.chi_h == Some(3), || format!("chi(Petersen) = {chi}"))?;
    Ok(format!("bound 3 = chi(Petersen), |P| = {}, chi(C_P) = {}", cert.instance.elements, cert.chi_cp))
}

fn criterion_7() -> Outcome {
    let c4 = cycle_graph(4).unwrap();
    let mut seen = Vec::new();
    for n in [3, 4] {
        let report = test_graph_check(&c4, &k(n), ("C4", &format!("K{n}")), &opts()).map_err(|e| e.to_string())?;
        ensure(report.holds && !report.vacuous, || {
            format!("(C4,K{n}): k = {}, required {} vs chi {}", report.k, report.required, report.chi_h)
        })?;
        ensure(report.chi_t == 2, || "chi(C4) should be 2".into())?;
        seen.push(format!("(C4,K{n}): {} >= {}+1+2", report.chi_h, report.k));
    }
    Ok(seen.join(", "))
}

fn criterion_8() -> Outcome {
    let z2 = cyclic_group(2).unwrap();
    let z3 = cyclic_group(3).unwrap();
    let mut count = 0;
    for (group, max_n) in [(&z2, 3usize), (&z3, 2)] {
        for n in 0..=max_n {
            let tag = format!("E_{n}Z_{}", group.order());
            let p = build_eng(group, n).map_err(|e| e.to_string())?;
            ensure(p.is_free_action(), || format!("{tag} not free"))?;
            let cx = order_complex(p.poset(), 4, &Caps::default()).map_err(|e| e.to_string())?;
            ensure(cx.dimension() == Some(n), || format!("{tag}: dimension {:?}", cx.dimension()))?;
            let conn = homological_connectivity(&cx).map_err(|e| e.to_string())?;
            ensure(conn.conn == n as i64 - 1 && !conn.capped, || format!("{tag}: conn {}", conn.conn))?;
            let ii = index_interval(&p, 4, &Caps::default()).map_err(|e| e.to_string())?;
            ensure((ii.lower, ii.upper) == (n as i64, n as i64), || {
                format!("{tag}: interval [{}, {}]", ii.lower, ii.upper)
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} model posets free with dim n, conn n-1, index [n, n]"))
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for i in 0..50 {
        let n = rng.random_range(1..=8);
        let p = rng.random_range(0.1..0.9);
        let g = random_graph(&mut rng, n, p);
        let (chi, col) = chromatic_number(&g).map_err(|e| e.to_string())?;
        let oracle = brute_chi(&g);
        ensure(chi == oracle, || format!("graph {i} ({n} vertices): solver {chi}, oracle {oracle}"))?;
        ensure(col.is_proper(&g) && col.color_count() == chi, || format!("graph {i}: bad witness"))?;
    }
    for m in 3..=9 {
        let g = cycle_graph(m).unwrap();
        let (chi, _) = chromatic_number(&g).map_err(|e| e.to_string())?;
        let oracle = brute_chi(&g);
        ensure(chi == oracle && chi == 2 + m % 2, || format!("C{m}: solver {chi}, oracle {oracle}"))?;
    }
    Ok("50 random graphs and C3..C9 agree with subset DP".into())
}

fn criterion_10() -> Outcome {
    let mut count = 0;
    for (t, h) in hom_suite() {
        let (tg, hg) = (named_graph(&t).unwrap(), named_graph(&h).unwrap());
        let acted = acted_hom(&tg, &hg, &Caps::default()).map_err(|e| e.to_string())?;
        let compat = build_compat_graph(acted.gposet()).map_err(|e| e.to_string())?;
        let map = projection_hom(&acted, &compat).map_err(|e| format!("{t}/{h}: {e}"))?;
        ensure(map.is_homomorphism(), || format!("{t}/{h}: broken edges {:?}", map.broken_edges()))?;
        let (chi_cp, _) = chromatic_number(&compat).map_err(|e| e.to_string())?;
        let (chi_h, _) = chromatic_number(&hg).map_err(|e| e.to_string())?;
        ensure(chi_cp <= chi_h, || format!("{t}/{h}: chi(C_P) = {chi_cp} > chi(H) = {chi_h}"))?;
        count += 1;
    }
    Ok(format!("{count} Hom instances: projection is a homomorphism, chi(C_P) <= chi(H)"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (1, "Hom poset cardinalities", 10, criterion_1),
        (2, "sphere homology of Hom(K2,Kn)", 60, criterion_2),
        (3, "equivariant map and bound on the suite", 300, criterion_3),
        (4, "free actions give loop-free C_P", 30, criterion_4),
        (5, "tightness for complete graphs", 300, criterion_5),
        (6, "Kneser instance (K2, Petersen)", 120, criterion_6),
        (7, "even cycle test graph", 300, criterion_7),
        (8, "model posets G x {1..n+1}", 60, criterion_8),
        (9, "chromatic solver vs brute force", 60, criterion_9),
        (10, "projection homomorphism", 60, criterion_10),
    ];
    let mut failed = 0;
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let over = elapsed > Duration::from_secs(limit);
        let (status, detail) = match (&outcome, over) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("over time limit; {d}")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "criterion {id:>2} {status} [{:.2}s / {limit}s] {name}: {detail}",
            elapsed.as_secs_f64()
        );
    }
    if failed == 0 {
        println!("acceptance: all 10 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria failed");
        ExitCode::FAILURE
    }
}
