//! Triangle presentations over a fixed basic bijection, as exact covers of
//! the incidence arcs by directed 3-cycles.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::incidence::Doily;
use crate::presentation::{
    derive_basic_bijection, validate_presentation, BasicBijection, CyclicTuple, PolygonalPresentation,
};
use crate::symmetry::{canonical_form, link_symmetries};

/// Arc `a -> b` whenever point `b` lies on line `lambda(a)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcDigraph {
    pub q: usize,
    /// Sorted, 1-based.
    pub arcs: Vec<(u32, u32)>,
}

impl ArcDigraph {
    pub fn from_arcs(q: usize, arcs: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let set: BTreeSet<(u32, u32)> = arcs.into_iter().collect();
        ArcDigraph { q, arcs: set.into_iter().collect() }
    }

    pub fn out_degree(&self, a: u32) -> usize {
        self.arcs.iter().filter(|&&(x, _)| x == a).count()
    }

    pub fn in_degree(&self, b: u32) -> usize {
        self.arcs.iter().filter(|&&(_, y)| y == b).count()
    }

    pub fn has_arc(&self, a: u32, b: u32) -> bool {
        self.arcs.binary_search(&(a, b)).is_ok()
    }

    fn arc_index(&self, a: u32, b: u32) -> Option<usize> {
        self.arcs.binary_search(&(a, b)).ok()
    }

    /// Directed 3-cycles on three distinct arcs, as least rotations.
    pub fn triangles(&self) -> Vec<CyclicTuple> {
        let mut out = BTreeSet::new();
        for &(a, b) in &self.arcs {
            for &(b2, c) in &self.arcs {
                if b2 != b || !self.has_arc(c, a) {
                    continue;
                }
                let t = CyclicTuple::from_indices(&[a, b, c]);
                let ids = [(a, b), (b, c), (c, a)];
                if ids[0] != ids[1] && ids[1] != ids[2] && ids[0] != ids[2] {
                    out.insert(t.least_rotation());
                }
            }
        }
        out.into_iter().collect()
    }
}

pub fn build_arc_digraph(doily: &Doily, lambda: &BasicBijection) -> ArcDigraph {
    let q = lambda.lines.len();
    let arcs = (1..=q).flat_map(|a| doily.line_points[lambda.line_of(a)].iter().map(move |&b| (a as u32, b as u32)));
    ArcDigraph::from_arcs(q, arcs)
}

/// Arc digraph read from the leading pairs of `p`, after checking that they
/// come from a basic bijection onto the doily.
pub fn arc_digraph_from(p: &PolygonalPresentation, doily: &Doily) -> Result<ArcDigraph> {
    let lambda = derive_basic_bijection(p, doily)
        .ok_or_else(|| Error::InvalidPresentation("no basic bijection onto the doily".into()))?;
    Ok(build_arc_digraph(doily, &lambda))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOptions {
    pub limit: Option<usize>,
    pub node_budget: Option<u64>,
    /// Triangles forced into every solution before branching.
    pub prefix: Vec<CyclicTuple>,
    pub parallel: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub solutions: usize,
    pub blocks: usize,
    pub exhausted: bool,
    pub budget_exceeded: bool,
    /// Emitted presentations that failed re-validation.
    pub invalid: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub presentations: Vec<PolygonalPresentation>,
    pub stats: SearchStats,
}

struct Problem {
    q: usize,
    blocks: Vec<(CyclicTuple, [usize; 3])>,
    /// `by_arc[arc]` lists blocks covering the arc, in block order.
    by_arc: Vec<Vec<usize>>,
}

struct State<'a> {
    pb: &'a Problem,
    covered: Vec<bool>,
    chosen: Vec<usize>,
    nodes: u64,
    budget: Option<u64>,
    limit: Option<usize>,
    found: Vec<Vec<usize>>,
    budget_exceeded: bool,
}

impl State<'_> {
    fn fits(&self, b: usize) -> bool {
        self.pb.blocks[b].1.iter().all(|&a| !self.covered[a])
    }

    fn set(&mut self, b: usize, on: bool) {
        for &a in &self.pb.blocks[b].1 {
            self.covered[a] = on;
        }
    }

    fn stop(&self) -> bool {
        self.budget_exceeded || self.limit.is_some_and(|l| self.found.len() >= l)
    }

    /// Uncovered arc with fewest fitting blocks, lowest index on ties.
    fn pick(&self) -> Option<(usize, Vec<usize>)> {
        let mut best: Option<(usize, Vec<usize>)> = None;
        for a in 0..self.covered.len() {
            if self.covered[a] {
                continue;
            }
            let opts: Vec<usize> = self.pb.by_arc[a].iter().copied().filter(|&b| self.fits(b)).collect();
            if best.as_ref().is_none_or(|(_, o)| opts.len() < o.len()) {
                let done = opts.len() <= 1;
                best = Some((a, opts));
                if done {
                    break;
                }
            }
        }
        best
    }

    fn run(&mut self) {
        if self.stop() {
            return;
        }
        self.nodes += 1;
        if self.budget.is_some_and(|b| self.nodes > b) {
            self.budget_exceeded = true;
            return;
        }
        let Some((_, opts)) = self.pick() else {
            let mut sol = self.chosen.clone();
            sol.sort_unstable();
            self.found.push(sol);
            return;
        };
        for b in opts {
            self.set(b, true);
            self.chosen.push(b);
            self.run();
            self.chosen.pop();
            self.set(b, false);
            if self.stop() {
                return;
            }
        }
    }
}

fn problem(d: &ArcDigraph) -> Problem {
    let blocks: Vec<(CyclicTuple, [usize; 3])> = d
        .triangles()
        .into_iter()
        .map(|t| {
            let l = |i: usize| t.0[i].0;
            let ids = [
                d.arc_index(l(0), l(1)).unwrap(),
                d.arc_index(l(1), l(2)).unwrap(),
                d.arc_index(l(2), l(0)).unwrap(),
            ];
            (t, ids)
        })
        .collect();
    let mut by_arc = vec![Vec::new(); d.arcs.len()];
    for (i, (_, ids)) in blocks.iter().enumerate() {
        for &a in ids {
            by_arc[a].push(i);
        }
    }
    Problem { q: d.q, blocks, by_arc }
}

fn to_presentation(pb: &Problem, sol: &[usize]) -> PolygonalPresentation {
    let tuples = sol.iter().map(|&b| pb.blocks[b].0.clone()).collect();
    PolygonalPresentation::new(pb.q, 3, 1, tuples).expect("triangles use letters 1..q")
}

/// Every partition of the arcs into directed 3-cycles, in a fixed order.
///
/// Each result lists its cycles as least rotations, sorted. With `parallel`
/// the branches below the first choice run on the rayon pool and are merged
/// back in branch order, so the output is the same either way.
pub fn enumerate_triangle_presentations(d: &ArcDigraph, opts: &SearchOptions) -> Result<SearchOutcome> {
    let pb = problem(d);
    let mut root = State {
        pb: &pb,
        covered: vec![false; d.arcs.len()],
        chosen: Vec::new(),
        nodes: 0,
        budget: opts.node_budget,
        limit: opts.limit,
        found: Vec::new(),
        budget_exceeded: false,
    };
    let mut stats = SearchStats { blocks: pb.blocks.len(), ..SearchStats::default() };
    for t in &opts.prefix {
        let rep = t.least_rotation();
        let b = pb
            .blocks
            .iter()
            .position(|(bt, _)| *bt == rep)
            .ok_or_else(|| Error::InvalidPresentation(format!("prefix cycle {t} is not a triangle of the arc digraph")))?;
        if !root.fits(b) {
            return Ok(SearchOutcome { presentations: Vec::new(), stats: SearchStats { exhausted: true, ..stats } });
        }
        root.set(b, true);
        root.chosen.push(b);
    }

    let found = if opts.parallel && opts.limit.is_none() {
        match root.pick() {
            None => vec![{
                let mut s = root.chosen.clone();
                s.sort_unstable();
                s
            }],
            Some((_, branches)) => {
                root.nodes = 1;
                let results: Vec<(Vec<Vec<usize>>, u64, bool)> = branches
                    .par_iter()
                    .map(|&b| {
                        let mut st = State {
                            pb: &pb,
                            covered: root.covered.clone(),
                            chosen: root.chosen.clone(),
                            nodes: 0,
                            budget: opts.node_budget,
                            limit: None,
                            found: Vec::new(),
                            budget_exceeded: false,
                        };
                        st.set(b, true);
                        st.chosen.push(b);
                        st.run();
                        (st.found, st.nodes, st.budget_exceeded)
                    })
                    .collect();
                let mut all = Vec::new();
                for (f, n, over) in results {
                    all.extend(f);
                    root.nodes += n;
                    root.budget_exceeded |= over;
                }
                if opts.node_budget.is_some_and(|b| root.nodes > b) {
                    root.budget_exceeded = true;
                }
                all
            }
        }
    } else {
        root.run();
        std::mem::take(&mut root.found)
    };
    stats.nodes = root.nodes;
    stats.budget_exceeded = root.budget_exceeded;
    stats.solutions = found.len();
    stats.exhausted = !root.budget_exceeded && opts.limit.is_none_or(|l| found.len() < l);
    let presentations = found.iter().map(|s| to_presentation(&pb, s)).collect::<Vec<_>>();
    stats.invalid = presentations.par_iter().filter(|p| !validate_presentation(p).passed).count();
    Ok(SearchOutcome { presentations, stats })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogClass {
    pub canonical: String,
    pub representative: PolygonalPresentation,
    /// How many stream members fell in this class.
    pub count: usize,
    /// Distinct relabelings under the link symmetries.
    pub orbit_size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Catalog {
    pub total: usize,
    pub classes: Vec<CatalogClass>,
}

impl Catalog {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Index of the class containing `p`, if any.
    pub fn class_of(&self, p: &PolygonalPresentation) -> Result<Option<usize>> {
        let key = String::from_utf8(canonical_form(p)?).expect("ascii encoding");
        Ok(self.classes.iter().position(|c| c.canonical == key))
    }
}

/// Groups presentations by canonical form; classes come out sorted by form.
pub fn dedupe_up_to_equivalence<'a>(stream: impl IntoIterator<Item = &'a PolygonalPresentation>) -> Result<Catalog> {
    let mut classes: BTreeMap<String, CatalogClass> = BTreeMap::new();
    let mut total = 0;
    for p in stream {
        total += 1;
        let key = String::from_utf8(canonical_form(p)?).expect("ascii encoding");
        if let Some(c) = classes.get_mut(&key) {
            c.count += 1;
            continue;
        }
        let closed = p.cyclic_closure();
        let orbit: BTreeSet<Vec<CyclicTuple>> =
            link_symmetries(&closed)?.iter().map(|perm| closed.relabeled(perm).tuples).collect();
        classes.insert(
            key.clone(),
            CatalogClass { canonical: key, representative: p.clone(), count: 1, orbit_size: orbit.len() },
        );
    }
    Ok(Catalog { total, classes: classes.into_values().collect() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::incidence::build_doily;
    use crate::presentation::builtin;

    fn same_closure(a: &PolygonalPresentation, b: &PolygonalPresentation) -> bool {
        a.closed_tuples() == b.closed_tuples()
    }

    #[test]
    fn arc_digraph_is_three_regular() {
        let doily = build_doily();
        for name in ["T1", "T2"] {
            let d = arc_digraph_from(&builtin(name).unwrap(), &doily).unwrap();
            assert_eq!(d.arcs.len(), 45);
            for a in 1..=15 {
                assert_eq!((d.out_degree(a), d.in_degree(a)), (3, 3));
                let on_own_line = doily.line_points[derive_basic_bijection(&builtin(name).unwrap(), &doily)
                    .unwrap()
                    .line_of(a as usize)]
                .contains(&(a as usize));
                assert_eq!(d.has_arc(a, a), on_own_line);
            }
        }
    }

    #[test]
    fn search_rediscovers_the_builtins() {
        let doily = build_doily();
        for name in ["T1", "T2"] {
            let p = builtin(name).unwrap();
            let d = arc_digraph_from(&p, &doily).unwrap();
            let out = enumerate_triangle_presentations(&d, &SearchOptions::default()).unwrap();
            assert!(out.stats.exhausted);
            assert_eq!(out.stats.invalid, 0);
            assert!(out.presentations.iter().any(|s| same_closure(s, &p)), "{name}");
        }
    }

    #[test]
    fn parallel_and_serial_agree() {
        let doily = build_doily();
        let d = arc_digraph_from(&builtin("T2").unwrap(), &doily).unwrap();
        let a = enumerate_triangle_presentations(&d, &SearchOptions::default()).unwrap();
        let b = enumerate_triangle_presentations(&d, &SearchOptions { parallel: true, ..Default::default() }).unwrap();
        assert_eq!(a.presentations, b.presentations);
    }

    #[test]
    fn seeded_prefix_completes_to_t1() {
        let doily = build_doily();
        let t1 = builtin("T1").unwrap();
        let d = arc_digraph_from(&t1, &doily).unwrap();
        let opts = SearchOptions { prefix: t1.tuples[..3].to_vec(), node_budget: Some(10_000), ..Default::default() };
        let out = enumerate_triangle_presentations(&d, &opts).unwrap();
        assert!(out.presentations.iter().any(|s| same_closure(s, &t1)));
        assert!(!out.stats.budget_exceeded);
    }

    #[test]
    fn uncoverable_arc_gives_nothing() {
        let d = ArcDigraph::from_arcs(3, [(1, 2), (2, 3), (3, 1), (1, 3)]);
        let out = enumerate_triangle_presentations(&d, &SearchOptions::default()).unwrap();
        assert!(out.presentations.is_empty());
        assert!(out.stats.exhausted);
    }

    #[test]
    fn limit_and_budget_are_respected() {
        let d = ArcDigraph::from_arcs(3, [(1, 2), (2, 3), (3, 1)]);
        let out = enumerate_triangle_presentations(&d, &SearchOptions { limit: Some(1), ..Default::default() }).unwrap();
        assert_eq!(out.presentations.len(), 1);
        assert_eq!(out.stats.invalid, 1);
        let doily = build_doily();
        let d = arc_digraph_from(&builtin("T1").unwrap(), &doily).unwrap();
        let out =
            enumerate_triangle_presentations(&d, &SearchOptions { node_budget: Some(2), ..Default::default() }).unwrap();
        assert!(out.stats.budget_exceeded);
        assert!(!out.stats.exhausted);
    }

    #[test]
    fn dedupe_classes() {
        let t1 = builtin("T1").unwrap();
        let t2 = builtin("T2").unwrap();
        let perms = link_symmetries(&t1).unwrap();
        let moved = t1.relabeled(&perms[perms.len() / 2]);
        let cat = dedupe_up_to_equivalence([&t1, &moved]).unwrap();
        assert_eq!((cat.total, cat.class_count()), (2, 1));
        assert_eq!(cat.classes[0].count, 2);
        assert_eq!(cat.classes[0].orbit_size, 720);
        let cat = dedupe_up_to_equivalence([&t1, &t2]).unwrap();
        assert_eq!(cat.class_count(), 2);
        assert_ne!(cat.class_of(&t1).unwrap(), cat.class_of(&t2).unwrap());
    }
}
