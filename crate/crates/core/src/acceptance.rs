//! The acceptance suite: one check per criterion, each timed against its
//! limit.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{build_polyhedron, cell_census, check_link_condition, vertex_links};
use crate::develop::{ball_census, develop_ball, interior_link_check};
use crate::error::{Error, Result};
use crate::grouppres::{abelianization, relation_matrix, smith_normal_form, to_group_presentation};
use crate::incidence::{build_doily, is_generalized_m_gon, Extent};
use crate::presentation::{
    builtin, reconstruct_link_graph, validate_presentation, validate_with_gonality, CyclicTuple, Letter,
    PolygonalPresentation,
};
use crate::search::{arc_digraph_from, dedupe_up_to_equivalence, enumerate_triangle_presentations, SearchOptions};
use crate::symmetry::{
    enumerate_automorphisms, find_isomorphism, is_group, link_symmetries, presentations_equivalent,
    verify_isomorphism,
};

pub const CRITERIA: usize = 11;
const SEED: u64 = 0x5eed;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Criterion {
    pub id: usize,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u128,
    pub limit_ms: u128,
}

impl Criterion {
    pub fn line(&self) -> String {
        format!(
            "[{}] {:>2}. {} ({} ms / {} ms): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed_ms,
            self.limit_ms,
            self.detail
        )
    }
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Unsupported(msg.into()))
    }
}

fn t1() -> PolygonalPresentation {
    builtin("T1").expect("embedded")
}

fn t2() -> PolygonalPresentation {
    builtin("T2").expect("embedded")
}

fn doily_structure() -> Result<String> {
    let d = build_doily();
    let g = &d.graph;
    let degrees = g.degree_sequence();
    let r = is_generalized_m_gon(g, 4);
    ensure(d.points.len() == 15 && d.lines.len() == 15, "point or line count")?;
    ensure(g.order() == 30 && g.size() == 45, "order or size")?;
    ensure(degrees.iter().all(|&x| x == 3), "not 3-regular")?;
    ensure(r.is_bipartite && r.girth == Extent::Finite(8) && r.diameter == Extent::Finite(4), "girth or diameter")?;
    ensure(r.verdict, "generalized 4-gon verdict")?;
    Ok("15 points, 15 lines, 45 edges, 3-regular, girth 8, diameter 4".into())
}

fn presentations_valid() -> Result<String> {
    for (name, p) in [("T1", t1()), ("T2", t2())] {
        let r = validate_presentation(&p);
        ensure(r.passed, format!("{name} fails validation"))?;
        ensure(r.closed_tuples == 45, format!("{name} closes to {} tuples", r.closed_tuples))?;
        let closed = p.closed_tuples();
        let mut pairs: Vec<_> = closed.iter().map(|t| t.leading_pair()).collect();
        pairs.sort();
        pairs.dedup();
        ensure(pairs.len() == 45, format!("{name} repeats a leading pair"))?;
    }
    Ok("T1, T2: 45 closed tuples, 45 distinct leading pairs, conditions 1-3 hold".into())
}

fn link_soundness() -> Result<String> {
    let doily = build_doily().graph;
    for (name, p) in [("T1", t1()), ("T2", t2())] {
        let poly = build_polyhedron(&p)?;
        let links = vertex_links(&poly)?;
        ensure(links.len() == 1, format!("{name} has {} vertices", links.len()))?;
        let corner = &links[0];
        let rebuilt = reconstruct_link_graph(&p)?;
        let f = find_isomorphism(corner, &rebuilt, true)?.ok_or_else(|| Error::Unsupported(format!("{name}: links differ")))?;
        ensure(verify_isomorphism(corner, &rebuilt, &f, true), format!("{name}: witness fails"))?;
        let h = find_isomorphism(&rebuilt, &doily, true)?.ok_or_else(|| Error::Unsupported(format!("{name}: not the doily")))?;
        ensure(verify_isomorphism(&rebuilt, &doily, &h, true), format!("{name}: doily witness fails"))?;
    }
    Ok("corner link = reconstructed link = doily, witnesses verified edge by edge".into())
}

fn census() -> Result<String> {
    for (name, p) in [("T1", t1()), ("T2", t2())] {
        let c = cell_census(&build_polyhedron(&p)?)?;
        ensure(
            (c.vertices, c.edges, c.faces, c.euler_characteristic) == (1, 15, 15, 1),
            format!("{name}: V,E,F,chi = {},{},{},{}", c.vertices, c.edges, c.faces, c.euler_characteristic),
        )?;
        ensure(c.links.len() == 1 && c.links[0].s == 30 && c.links[0].t == 45, format!("{name}: link size"))?;
    }
    Ok("V=1 E=15 F=15 chi=1, link s=30 t=45".into())
}

fn curvature() -> Result<String> {
    let poly = build_polyhedron(&t1())?;
    let hyp = check_link_condition(&poly, 3, 4)?;
    ensure(hyp.link_condition && hyp.required_girth == 8, "girth 8 >= 2m fails")?;
    ensure(hyp.hyperbolic && hyp.angle_product == 12 && hyp.angle_bound == 11, "4*3 > 2*4+3 fails")?;
    let flat = check_link_condition(&poly, 3, 3)?;
    ensure(!flat.hyperbolic && flat.euclidean_boundary, "m=3 should sit on the boundary")?;
    Ok("p=3,m=4: girth 8 >= 8 and 12 > 11; p=3,m=3: 9 = 9 not strict".into())
}

fn automorphisms() -> Result<String> {
    let g = build_doily().graph;
    let colored = enumerate_automorphisms(&g, true)?;
    let full = enumerate_automorphisms(&g, false)?;
    ensure(colored.order == 720, format!("colored order {}", colored.order))?;
    ensure(full.order == 1440, format!("full order {}", full.order))?;
    ensure(is_group(&colored.elements) && is_group(&full.elements), "not closed under composition and inverse")?;
    Ok("color-preserving 720, full 1440, both closed".into())
}

fn inequivalence() -> Result<String> {
    let (a, b) = (t1(), t2());
    let r = presentations_equivalent(&a, &b)?;
    ensure(r.links_isomorphic, "T1 and T2 links should be isomorphic")?;
    ensure(!r.orientation_preserving.equivalent, "T1 and T2 found equivalent")?;
    let perms = link_symmetries(&a)?;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let sample: Vec<&Vec<u32>> = perms.choose_multiple(&mut rng, 20).collect();
    let found = sample
        .par_iter()
        .map(|perm| -> Result<bool> { Ok(presentations_equivalent(&a, &a.relabeled(perm))?.orientation_preserving.equivalent) })
        .collect::<Result<Vec<bool>>>()?;
    ensure(found.iter().all(|&x| x), "a relabeled T1 was not recognised")?;
    Ok(format!(
        "T1 vs T2 inequivalent after {} isomorphisms; 20/20 relabelings of T1 matched",
        r.orientation_preserving.isomorphisms_examined
    ))
}

fn group_presentation() -> Result<String> {
    let p = t1();
    let gp = to_group_presentation(&p);
    ensure(gp.generators.len() == 15 && gp.relators.len() == 15, "generator or relator count")?;
    ensure(gp.relators.iter().all(|r| r.len() == 3), "relator length")?;
    let m = relation_matrix(&gp);
    ensure(m.column_sums().iter().all(|s| *s == 3.into()), "column sums")?;
    let snf = smith_normal_form(&m);
    ensure(snf.verify(&m), "Smith certificates do not multiply back")?;
    let base = abelianization(&p);
    let perms = link_symmetries(&p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    for perm in perms.choose_multiple(&mut rng, 10) {
        ensure(abelianization(&p.relabeled(perm)) == base, "abelianization moved under relabeling")?;
    }
    Ok(format!("15 generators, 15 relators of length 3, H1 = {base}"))
}

fn development() -> Result<String> {
    let mut summary = Vec::new();
    let mut censuses = Vec::new();
    for p in [t1(), t2()] {
        let mut per = Vec::new();
        for r in 1..=2 {
            let d = develop_ball(&p, r)?;
            let c = ball_census(&d);
            if r == 2 {
                let verdicts = interior_link_check(&d);
                ensure(verdicts.len() == 31, format!("{} interior vertices", verdicts.len()))?;
                for v in &verdicts {
                    let link = d.link_at(v.vertex)?;
                    ensure(v.passed && is_generalized_m_gon(&link, 4).verdict, format!("link at {} fails", v.vertex))?;
                }
            }
            per.push((c.vertices, c.edges, c.faces));
        }
        censuses.push(per);
    }
    ensure(censuses[0][0] == (31, 75, 45), format!("radius 1 census {:?}", censuses[0][0]))?;
    ensure(censuses[0] == censuses[1], "T1 and T2 censuses differ")?;
    for (r, c) in censuses[0].iter().enumerate() {
        summary.push(format!("r={} {:?}", r + 1, c));
    }
    Ok(format!("{}; all 31 interior links at r=2 are generalized 4-gons", summary.join(" ")))
}

fn search_closure() -> Result<String> {
    let doily = build_doily();
    let (a, b) = (t1(), t2());
    let budget = Some(50_000_000);
    let seeded = enumerate_triangle_presentations(
        &arc_digraph_from(&a, &doily)?,
        &SearchOptions { prefix: a.tuples[..3].to_vec(), node_budget: budget, ..Default::default() },
    )?;
    ensure(seeded.presentations.iter().any(|s| s.closed_tuples() == a.closed_tuples()), "seeded prefix does not complete to T1")?;
    let opts = SearchOptions { node_budget: budget, parallel: true, ..Default::default() };
    let run1 = enumerate_triangle_presentations(&arc_digraph_from(&a, &doily)?, &opts)?;
    let run2 = enumerate_triangle_presentations(&arc_digraph_from(&b, &doily)?, &opts)?;
    for run in [&run1, &run2] {
        ensure(run.stats.exhausted && run.stats.invalid == 0, "search not exhausted or emitted invalid output")?;
    }
    let all: Vec<&PolygonalPresentation> = run1.presentations.iter().chain(&run2.presentations).collect();
    let catalog = dedupe_up_to_equivalence(all)?;
    let c1 = catalog.class_of(&a)?.ok_or_else(|| Error::Unsupported("T1 not rediscovered".into()))?;
    let c2 = catalog.class_of(&b)?.ok_or_else(|| Error::Unsupported("T2 not rediscovered".into()))?;
    ensure(c1 != c2, "T1 and T2 share a class")?;
    Ok(format!(
        "T1 lambda: {} solutions, T2 lambda: {} solutions, {} classes, T1 and T2 distinct",
        run1.presentations.len(),
        run2.presentations.len(),
        catalog.class_count()
    ))
}

/// Every presentation obtained from T1 by changing one letter of one listed
/// tuple to another letter.
pub fn single_letter_mutations(p: &PolygonalPresentation) -> Vec<PolygonalPresentation> {
    let mut out = Vec::new();
    for (i, t) in p.tuples.iter().enumerate() {
        for pos in 0..t.arity() {
            for l in 1..=p.q as u32 {
                if l == t.0[pos].0 {
                    continue;
                }
                let mut m = p.clone();
                let mut letters = t.0.clone();
                letters[pos] = Letter(l);
                m.tuples[i] = CyclicTuple(letters);
                out.push(m);
            }
        }
    }
    out
}

fn mutation_sensitivity() -> Result<String> {
    let muts = single_letter_mutations(&t1());
    ensure(muts.len() == 630, format!("{} mutations", muts.len()))?;
    let survivors = muts.par_iter().filter(|m| validate_with_gonality(m, 4).passed).count();
    ensure(survivors == 0, format!("{survivors} mutations survive"))?;
    Ok("630/630 single-letter mutations rejected".into())
}

type Check = fn() -> Result<String>;

const CHECKS: [(&str, Check, u64); CRITERIA] = [
    ("doily structure", doily_structure, 1),
    ("T1 and T2 are polygonal presentations", presentations_valid, 1),
    ("link soundness", link_soundness, 1),
    ("cell census", census, 1),
    ("curvature arithmetic", curvature, 1),
    ("automorphism groups", automorphisms, 30),
    ("inequivalence", inequivalence, 30),
    ("group presentation", group_presentation, 5),
    ("development", development, 60),
    ("search closure", search_closure, 600),
    ("mutation sensitivity", mutation_sensitivity, 60),
];

/// Runs criterion `id` (1-based). Exceeding the time limit is a failure.
pub fn run_criterion(id: usize) -> Criterion {
    let (name, check, secs) = CHECKS[id - 1];
    let limit = Duration::from_secs(secs);
    let start = Instant::now();
    let outcome = check();
    let elapsed = start.elapsed();
    let (mut passed, mut detail) = match outcome {
        Ok(d) => (true, d),
        Err(e) => (false, e.to_string()),
    };
    if passed && elapsed > limit {
        passed = false;
        detail = format!("over time limit: {detail}");
    }
    Criterion {
        id,
        name: name.into(),
        passed,
        detail,
        elapsed_ms: elapsed.as_millis(),
        limit_ms: limit.as_millis(),
    }
}

pub fn run_all() -> Vec<Criterion> {
    (1..=CRITERIA).map(run_criterion).collect()
}
