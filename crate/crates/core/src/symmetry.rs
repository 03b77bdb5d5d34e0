//! Exact isomorphism and automorphism search for small graphs, and the
//! equivalence test for polygonal presentations built on it.
//!
//! The search maps vertices of `g` in breadth-first order. A candidate image
//! must share the source vertex's invariant signature (color, degree,
//! distance profile) and preserve the distance to every vertex already
//! mapped. Distance preservation implies adjacency preservation, so every
//! complete assignment is an isomorphism; it is still re-verified edge by
//! edge before being reported.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::ops::ControlFlow;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::incidence::metrics::distance_matrix;
use crate::incidence::{Color, LabeledGraph};
use crate::presentation::{reconstruct_link_graph, PolygonalPresentation};

/// Vertex cap for exact search.
pub const MAX_SEARCH_VERTICES: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GraphMap {
    /// `map[v]` is the image of vertex `v`.
    pub map: Vec<usize>,
    pub color_preserving: bool,
}

impl GraphMap {
    pub fn identity(n: usize, color_preserving: bool) -> Self {
        GraphMap { map: (0..n).collect(), color_preserving }
    }

    /// `self` after `other`: `v -> self(other(v))`.
    pub fn compose(&self, other: &GraphMap) -> GraphMap {
        GraphMap {
            map: other.map.iter().map(|&v| self.map[v]).collect(),
            color_preserving: self.color_preserving && other.color_preserving,
        }
    }

    pub fn inverse(&self) -> GraphMap {
        let mut inv = vec![0; self.map.len()];
        for (v, &w) in self.map.iter().enumerate() {
            inv[w] = v;
        }
        GraphMap { map: inv, color_preserving: self.color_preserving }
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(v, &w)| v == w)
    }
}

/// Edge-exact check that `f` is an isomorphism `g -> h`.
pub fn verify_isomorphism(g: &LabeledGraph, h: &LabeledGraph, f: &GraphMap, respect_colors: bool) -> bool {
    if g.order() != h.order() || g.size() != h.size() || f.map.len() != g.order() {
        return false;
    }
    let mut hit = vec![false; h.order()];
    for &w in &f.map {
        if w >= h.order() || std::mem::replace(&mut hit[w], true) {
            return false;
        }
    }
    if respect_colors && (0..g.order()).any(|v| g.color(v) != h.color(f.map[v])) {
        return false;
    }
    g.edges().iter().all(|&(a, b)| h.has_edge(f.map[a], f.map[b]))
}

struct Prepared {
    order: Vec<usize>,
    sig_g: Vec<usize>,
    sig_h: Vec<usize>,
    dist_g: Vec<Vec<usize>>,
    dist_h: Vec<Vec<usize>>,
    n: usize,
}

type Signature = (Option<Color>, usize, Vec<usize>, Vec<usize>);

fn signatures(g: &LabeledGraph, dist: &[Vec<usize>], respect_colors: bool) -> Vec<Signature> {
    (0..g.order())
        .map(|v| {
            let mut profile = vec![0usize; g.order() + 1];
            for &d in &dist[v] {
                profile[if d == usize::MAX { g.order() } else { d }] += 1;
            }
            let mut nbr_deg: Vec<usize> = g.neighbors(v).iter().map(|&w| g.degree(w)).collect();
            nbr_deg.sort_unstable();
            let color = if respect_colors { g.color(v) } else { None };
            (color, g.degree(v), profile, nbr_deg)
        })
        .collect()
}

fn check_cap(g: &LabeledGraph) -> Result<()> {
    if g.order() > MAX_SEARCH_VERTICES {
        return Err(Error::CapExceeded { what: "isomorphism search order", limit: MAX_SEARCH_VERTICES, got: g.order() });
    }
    Ok(())
}

fn prepare(g: &LabeledGraph, h: &LabeledGraph, respect_colors: bool) -> Result<Option<Prepared>> {
    check_cap(g)?;
    check_cap(h)?;
    if g.order() != h.order() || g.size() != h.size() || g.degree_sequence() != h.degree_sequence() {
        return Ok(None);
    }
    let n = g.order();
    let dist_g = distance_matrix(g);
    let dist_h = distance_matrix(h);
    let raw_g = signatures(g, &dist_g, respect_colors);
    let raw_h = signatures(h, &dist_h, respect_colors);

    // Intern signatures so classes compare as integers.
    let mut ids: BTreeMap<&Signature, usize> = BTreeMap::new();
    for s in raw_g.iter().chain(raw_h.iter()) {
        let next = ids.len();
        ids.entry(s).or_insert(next);
    }
    let sig_g: Vec<usize> = raw_g.iter().map(|s| ids[s]).collect();
    let sig_h: Vec<usize> = raw_h.iter().map(|s| ids[s]).collect();
    let mut count_g = vec![0usize; ids.len()];
    let mut count_h = vec![0usize; ids.len()];
    sig_g.iter().for_each(|&s| count_g[s] += 1);
    sig_h.iter().for_each(|&s| count_h[s] += 1);
    if count_g != count_h {
        return Ok(None);
    }

    // Breadth-first order, each component rooted at its rarest-signature vertex.
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    while order.len() < n {
        let root = (0..n).filter(|&v| !placed[v]).min_by_key(|&v| (count_g[sig_g[v]], v)).unwrap();
        placed[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in g.neighbors(v) {
                if !placed[w] {
                    placed[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    Ok(Some(Prepared { order, sig_g, sig_h, dist_g, dist_h, n }))
}

fn candidates(p: &Prepared, depth: usize, map: &[usize], used: &[bool]) -> Vec<usize> {
    let u = p.order[depth];
    (0..p.n)
        .filter(|&w| !used[w] && p.sig_h[w] == p.sig_g[u])
        .filter(|&w| p.order[..depth].iter().all(|&v| p.dist_g[u][v] == p.dist_h[w][map[v]]))
        .collect()
}

fn extend<F>(p: &Prepared, depth: usize, map: &mut Vec<usize>, used: &mut Vec<bool>, visit: &mut F) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    if depth == p.n {
        return visit(map);
    }
    let u = p.order[depth];
    for w in candidates(p, depth, map, used) {
        map[u] = w;
        used[w] = true;
        let flow = extend(p, depth + 1, map, used, visit);
        used[w] = false;
        map[u] = usize::MAX;
        flow?;
    }
    ControlFlow::Continue(())
}

/// A witness isomorphism `g -> h`, or `None` if none exists.
pub fn find_isomorphism(g: &LabeledGraph, h: &LabeledGraph, respect_colors: bool) -> Result<Option<GraphMap>> {
    let Some(p) = prepare(g, h, respect_colors)? else {
        return Ok(None);
    };
    let mut found = None;
    let mut map = vec![usize::MAX; p.n];
    let mut used = vec![false; p.n];
    let _ = extend(&p, 0, &mut map, &mut used, &mut |m| {
        found = Some(m.to_vec());
        ControlFlow::Break(())
    });
    Ok(found.map(|map| {
        let f = GraphMap { map, color_preserving: respect_colors };
        assert!(verify_isomorphism(g, h, &f, respect_colors), "search produced a non-isomorphism");
        f
    }))
}

/// Every isomorphism `g -> h`, sorted by image vector.
///
/// The first search level fans out across threads; branches are merged back
/// in a fixed order.
pub fn enumerate_isomorphisms(g: &LabeledGraph, h: &LabeledGraph, respect_colors: bool) -> Result<Vec<GraphMap>> {
    let Some(p) = prepare(g, h, respect_colors)? else {
        return Ok(Vec::new());
    };
    if p.n == 0 {
        return Ok(vec![GraphMap::identity(0, respect_colors)]);
    }
    let first = p.order[0];
    let roots = candidates(&p, 0, &vec![usize::MAX; p.n], &vec![false; p.n]);
    let branches: Vec<Vec<Vec<usize>>> = roots
        .par_iter()
        .map(|&w| {
            let mut map = vec![usize::MAX; p.n];
            let mut used = vec![false; p.n];
            map[first] = w;
            used[w] = true;
            let mut out = Vec::new();
            let _ = extend(&p, 1, &mut map, &mut used, &mut |m| {
                out.push(m.to_vec());
                ControlFlow::Continue(())
            });
            out
        })
        .collect();
    let mut maps: Vec<GraphMap> = branches
        .into_iter()
        .flatten()
        .map(|map| GraphMap { map, color_preserving: respect_colors })
        .collect();
    maps.sort();
    for f in &maps {
        assert!(verify_isomorphism(g, h, f, respect_colors), "search produced a non-isomorphism");
    }
    Ok(maps)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AutomorphismGroup {
    pub elements: Vec<GraphMap>,
    pub generators: Vec<GraphMap>,
    pub order: usize,
}

pub fn enumerate_automorphisms(g: &LabeledGraph, respect_colors: bool) -> Result<AutomorphismGroup> {
    let elements = enumerate_isomorphisms(g, g, respect_colors)?;
    let generators = generating_set(&elements);
    Ok(AutomorphismGroup { order: elements.len(), elements, generators })
}

/// Greedy generating set: scan the elements and keep any not already in the
/// subgroup generated so far.
fn generating_set(elements: &[GraphMap]) -> Vec<GraphMap> {
    let Some(first) = elements.first() else { return Vec::new() };
    let n = first.map.len();
    let mut generators: Vec<GraphMap> = Vec::new();
    let mut closure: HashSet<Vec<usize>> = HashSet::from([(0..n).collect()]);
    for e in elements {
        if closure.contains(&e.map) {
            continue;
        }
        generators.push(e.clone());
        let mut frontier: Vec<Vec<usize>> = closure.iter().cloned().collect();
        while let Some(x) = frontier.pop() {
            for gen in &generators {
                let y: Vec<usize> = x.iter().map(|&v| gen.map[v]).collect();
                if closure.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
    }
    generators
}

/// True when the maps are closed under composition and inverses and contain
/// the identity.
pub fn is_group(elements: &[GraphMap]) -> bool {
    let set: HashSet<&Vec<usize>> = elements.iter().map(|e| &e.map).collect();
    let Some(first) = elements.first() else { return false };
    if !set.contains(&(0..first.map.len()).collect::<Vec<_>>()) {
        return false;
    }
    elements.iter().all(|a| {
        set.contains(&a.inverse().map) && elements.iter().all(|b| set.contains(&a.compose(b).map))
    })
}

/// Letter permutation from a color-preserving map between link graphs laid
/// out as black `0..q`, white `q..2q`; `None` unless it respects the pairing
/// `x_i <-> y_i`. Index 0 of the result is unused.
pub fn letter_permutation(f: &GraphMap, q: usize) -> Option<Vec<u32>> {
    let mut perm = vec![0u32; q + 1];
    for a in 0..q {
        let image = f.map[a];
        if image >= q || f.map[q + a] != q + image {
            return None;
        }
        perm[a + 1] = image as u32 + 1;
    }
    Some(perm)
}

/// Letter permutation induced on black vertices alone.
fn black_permutation(f: &GraphMap, q: usize) -> Vec<u32> {
    let mut perm = vec![0u32; q + 1];
    for a in 0..q {
        perm[a + 1] = f.map[a] as u32 + 1;
    }
    perm
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceVerdict {
    pub equivalent: bool,
    /// `witness[i]` is the image of letter `i` (index 0 unused).
    pub witness: Option<Vec<u32>>,
    pub isomorphisms_examined: usize,
    pub pairing_compatible: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub links_isomorphic: bool,
    pub orientation_preserving: EquivalenceVerdict,
    pub with_reversal: EquivalenceVerdict,
    pub link_automorphisms: (usize, usize),
    pub note: Option<String>,
}

fn closed_set(p: &PolygonalPresentation) -> Vec<crate::presentation::CyclicTuple> {
    p.closed_tuples()
}

fn search_witness(p1: &PolygonalPresentation, p2: &PolygonalPresentation) -> Result<EquivalenceVerdict> {
    let g1 = reconstruct_link_graph(p1)?;
    let g2 = reconstruct_link_graph(p2)?;
    let target = closed_set(p2);
    let source = p1.cyclic_closure();
    let isos = enumerate_isomorphisms(&g1, &g2, true)?;
    let mut verdict =
        EquivalenceVerdict { equivalent: false, witness: None, isomorphisms_examined: isos.len(), pairing_compatible: 0 };
    for f in &isos {
        let Some(perm) = letter_permutation(f, p1.q) else { continue };
        verdict.pairing_compatible += 1;
        if verdict.witness.is_none() && source.relabeled(&perm).tuples == target {
            verdict.witness = Some(perm);
            verdict.equivalent = true;
        }
    }
    Ok(verdict)
}

/// Decides whether some letter permutation induced by a pairing-compatible
/// isomorphism of the link graphs carries the closed tuple set of `p1` onto
/// that of `p2`. The reversal verdict does the same against `p2` with every
/// tuple read backwards.
pub fn presentations_equivalent(p1: &PolygonalPresentation, p2: &PolygonalPresentation) -> Result<EquivalenceReport> {
    let empty = EquivalenceVerdict { equivalent: false, witness: None, isomorphisms_examined: 0, pairing_compatible: 0 };
    if (p1.q, p1.k, p1.n) != (p2.q, p2.k, p2.n) {
        return Ok(EquivalenceReport {
            links_isomorphic: false,
            orientation_preserving: empty.clone(),
            with_reversal: empty,
            link_automorphisms: (0, 0),
            note: Some("alphabet size, arity or graph count differ".into()),
        });
    }
    let g1 = reconstruct_link_graph(p1)?;
    let g2 = reconstruct_link_graph(p2)?;
    let aut1 = enumerate_isomorphisms(&g1, &g1, true)?.len();
    let aut2 = enumerate_isomorphisms(&g2, &g2, true)?.len();
    let links_isomorphic = find_isomorphism(&g1, &g2, true)?.is_some();
    let orientation_preserving = if links_isomorphic { search_witness(p1, p2)? } else { empty.clone() };
    let with_reversal = search_witness(p1, &p2.reversed())?;
    Ok(EquivalenceReport {
        links_isomorphic,
        orientation_preserving,
        with_reversal,
        link_automorphisms: (aut1, aut2),
        note: (!links_isomorphic).then(|| "link graphs are not isomorphic".into()),
    })
}

fn encode(p: &PolygonalPresentation) -> Vec<u8> {
    let mut s = format!("k={};q={}", p.k, p.q);
    for t in &p.tuples {
        s.push(';');
        s.push_str(&t.to_string());
    }
    s.into_bytes()
}

/// Letter permutations induced on black vertices by the color-preserving
/// automorphisms of the link of `p`, deduplicated and sorted.
pub fn link_symmetries(p: &PolygonalPresentation) -> Result<Vec<Vec<u32>>> {
    let g = reconstruct_link_graph(p)?;
    let perms: BTreeSet<Vec<u32>> =
        enumerate_isomorphisms(&g, &g, true)?.iter().map(|f| black_permutation(f, p.q)).collect();
    Ok(perms.into_iter().collect())
}

/// Least encoding of the sorted closed tuple set over the action of the link
/// graph's color-preserving automorphisms on letters.
///
/// Two presentations whose links share the same labeled point-line structure
/// get equal forms exactly when they are equivalent.
pub fn canonical_form(p: &PolygonalPresentation) -> Result<Vec<u8>> {
    let closed = p.cyclic_closure();
    let perms = link_symmetries(&closed)?;
    Ok(perms.iter().map(|perm| encode(&closed.relabeled(perm))).min().unwrap_or_else(|| encode(&closed)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::incidence::build_doily;
    use crate::presentation::builtin;

    #[test]
    fn doily_maps_to_itself() {
        let d = build_doily().graph;
        let f = find_isomorphism(&d, &d, true).unwrap().unwrap();
        assert!(verify_isomorphism(&d, &d, &f, true));
        assert!(enumerate_isomorphisms(&d, &d, true).unwrap().contains(&GraphMap::identity(30, true)));
    }

    #[test]
    fn doily_and_30_cycle_differ() {
        assert!(find_isomorphism(&build_doily().graph, &LabeledGraph::cycle(30), false).unwrap().is_none());
    }

    #[test]
    fn eight_cycle_has_dihedral_group() {
        let g = enumerate_automorphisms(&LabeledGraph::cycle(8), false).unwrap();
        assert_eq!(g.order, 16);
        assert!(is_group(&g.elements));
        assert!(g.generators.len() <= 2);
    }

    #[test]
    fn cap_is_enforced() {
        let big = LabeledGraph::cycle(65);
        assert!(matches!(find_isomorphism(&big, &big, false), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn doily_group_orders() {
        let d = build_doily().graph;
        let colored = enumerate_automorphisms(&d, true).unwrap();
        assert_eq!(colored.order, 720);
        let full = enumerate_automorphisms(&d, false).unwrap();
        assert_eq!(full.order, 1440);
        assert!(is_group(&colored.elements));
    }

    #[test]
    fn t1_is_equivalent_to_itself() {
        let t1 = builtin("T1").unwrap();
        let r = presentations_equivalent(&t1, &t1).unwrap();
        assert!(r.orientation_preserving.equivalent);
        let w = r.orientation_preserving.witness.unwrap();
        assert_eq!(w, (0..=15).collect::<Vec<u32>>());
    }

    #[test]
    fn t1_and_t2_are_inequivalent() {
        let r = presentations_equivalent(&builtin("T1").unwrap(), &builtin("T2").unwrap()).unwrap();
        assert!(r.links_isomorphic);
        assert!(!r.orientation_preserving.equivalent);
        assert!(!r.with_reversal.equivalent);
        assert_eq!(r.orientation_preserving.isomorphisms_examined, 720);
        assert_eq!(r.link_automorphisms, (720, 720));
        assert_ne!(canonical_form(&builtin("T1").unwrap()).unwrap(), canonical_form(&builtin("T2").unwrap()).unwrap());
    }

    #[test]
    fn canonical_form_is_orbit_invariant_and_idempotent() {
        let t1 = builtin("T1").unwrap();
        let perms = link_symmetries(&t1).unwrap();
        assert_eq!(perms.len(), 720);
        let c = canonical_form(&t1).unwrap();
        for perm in perms.iter().step_by(97) {
            assert_eq!(canonical_form(&t1.relabeled(perm)).unwrap(), c);
        }
        let rep = String::from_utf8(c.clone()).unwrap();
        let reparsed = crate::presentation::parse_presentation(&rep.split(';').skip(2).collect::<Vec<_>>().join("\n")).unwrap();
        assert_eq!(canonical_form(&reparsed).unwrap(), c);
    }
}
