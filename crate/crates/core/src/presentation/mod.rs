//! Polygonal presentations: sets of cyclic k-tuples over an alphabet
//! `x_1..x_q`, closed under rotation, whose leading pairs encode a bipartite
//! link graph through the formal pairing `x_i <-> y_i`.

mod builtin;
mod parse;
mod validate;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use builtin::{builtin, T1_TEXT, T2_TEXT};
pub use parse::parse_presentation;
pub use validate::{
    derive_basic_bijection, reconstruct_link_graph, validate_against_model, validate_presentation,
    validate_with_gonality, validate_with_graph, BasicBijection, ConditionVerdict, LinkStats, ValidationReport,
};

/// A letter `x_i`, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Letter(pub u32);

impl Letter {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}", self.0)
    }
}

/// An ordered tuple read cyclically. Repeated letters are allowed.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CyclicTuple(pub Vec<Letter>);

impl CyclicTuple {
    pub fn from_indices(ix: &[u32]) -> Self {
        CyclicTuple(ix.iter().map(|&i| Letter(i)).collect())
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn rotated(&self, by: usize) -> Self {
        let mut v = self.0.clone();
        let n = v.len().max(1);
        v.rotate_left(by % n);
        CyclicTuple(v)
    }

    /// All distinct rotations, in rotation order starting from `self`.
    pub fn rotations(&self) -> Vec<Self> {
        let mut out: Vec<Self> = Vec::with_capacity(self.arity());
        for r in 0..self.arity() {
            let t = self.rotated(r);
            if !out.contains(&t) {
                out.push(t);
            }
        }
        out
    }

    /// Lexicographically least rotation; the orbit representative.
    pub fn least_rotation(&self) -> Self {
        (0..self.arity()).map(|r| self.rotated(r)).min().unwrap_or_else(|| self.clone())
    }

    pub fn reversed(&self) -> Self {
        let mut v = self.0.clone();
        v.reverse();
        CyclicTuple(v)
    }

    /// Applies a letter permutation given as `perm[i] = image of letter i`
    /// (index 0 unused).
    pub fn relabeled(&self, perm: &[u32]) -> Self {
        CyclicTuple(self.0.iter().map(|l| Letter(perm[l.index()])).collect())
    }

    pub fn leading_pair(&self) -> (Letter, Letter) {
        (self.0[0], self.0[1])
    }
}

impl fmt::Display for CyclicTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", l.0)?;
        }
        f.write_str(")")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolygonalPresentation {
    /// Alphabet size.
    pub q: usize,
    /// Arity of every tuple.
    pub k: usize,
    /// Number of link graphs.
    pub n: usize,
    /// Listed representatives, or the full rotation-closed set once `closed`.
    pub tuples: Vec<CyclicTuple>,
    pub closed: bool,
}

impl PolygonalPresentation {
    pub fn new(q: usize, k: usize, n: usize, tuples: Vec<CyclicTuple>) -> Result<Self> {
        if k < 3 {
            return Err(Error::InvalidPresentation(format!("arity {k} is below 3")));
        }
        for t in &tuples {
            if t.arity() != k {
                return Err(Error::InvalidPresentation(format!("tuple {t} has arity {} not {k}", t.arity())));
            }
            if let Some(l) = t.0.iter().find(|l| l.0 == 0 || l.index() > q) {
                return Err(Error::InvalidPresentation(format!("letter {} outside 1..={q}", l.0)));
            }
        }
        Ok(PolygonalPresentation { q, k, n, tuples, closed: false })
    }

    /// Builds a `k`-ary presentation with `n = 1` and `q` the largest letter.
    pub fn from_lists(k: usize, lists: &[&[u32]]) -> Result<Self> {
        let tuples: Vec<CyclicTuple> = lists.iter().map(|l| CyclicTuple::from_indices(l)).collect();
        let q = tuples.iter().flat_map(|t| t.0.iter()).map(|l| l.index()).max().unwrap_or(0);
        Self::new(q, k, 1, tuples)
    }

    /// The rotation-closed tuple set, sorted and without repeats.
    pub fn cyclic_closure(&self) -> Self {
        let set: BTreeSet<CyclicTuple> = self.tuples.iter().flat_map(|t| t.rotations()).collect();
        PolygonalPresentation { tuples: set.into_iter().collect(), closed: true, ..self.clone() }
    }

    pub fn closed_tuples(&self) -> Vec<CyclicTuple> {
        if self.closed {
            self.tuples.clone()
        } else {
            self.cyclic_closure().tuples
        }
    }

    /// One least-rotation representative per rotation orbit, sorted.
    pub fn orbits(&self) -> Vec<CyclicTuple> {
        let set: BTreeSet<CyclicTuple> = self.tuples.iter().map(|t| t.least_rotation()).collect();
        set.into_iter().collect()
    }

    /// Applies a letter permutation (`perm[i]` is the image of letter `i`,
    /// index 0 unused). Closure status is preserved.
    pub fn relabeled(&self, perm: &[u32]) -> Self {
        let mut tuples: Vec<CyclicTuple> = self.tuples.iter().map(|t| t.relabeled(perm)).collect();
        if self.closed {
            tuples.sort();
        }
        PolygonalPresentation { tuples, ..self.clone() }
    }

    /// Every tuple read backwards (orientation flip).
    pub fn reversed(&self) -> Self {
        let mut tuples: Vec<CyclicTuple> = self.tuples.iter().map(|t| t.reversed()).collect();
        if self.closed {
            tuples.sort();
        }
        PolygonalPresentation { tuples, ..self.clone() }
    }

    /// Text in the presentation file format.
    pub fn to_text(&self) -> String {
        let mut out = format!("k={}\nq={}\n", self.k, self.q);
        if self.n != 1 {
            out.push_str(&format!("n={}\n", self.n));
        }
        for t in &self.tuples {
            out.push_str(&t.to_string());
            out.push('\n');
        }
        out
    }
}

/// Cyclic closure as a free function.
pub fn cyclic_closure(p: &PolygonalPresentation) -> PolygonalPresentation {
    p.cyclic_closure()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn closure_of_one_triple() {
        let p = PolygonalPresentation::from_lists(3, &[&[1, 2, 7]]).unwrap().cyclic_closure();
        let got: Vec<String> = p.tuples.iter().map(|t| t.to_string()).collect();
        assert_eq!(got, vec!["(1,2,7)", "(2,7,1)", "(7,1,2)"]);
    }

    #[test]
    fn rotation_invariant_tuple_closes_to_itself() {
        let p = PolygonalPresentation::from_lists(3, &[&[4, 4, 4]]).unwrap().cyclic_closure();
        assert_eq!(p.tuples.len(), 1);
    }

    #[test]
    fn builtin_closures_have_45_tuples() {
        for name in ["T1", "T2"] {
            let p = builtin(name).unwrap();
            assert_eq!(p.tuples.len(), 15);
            assert_eq!(p.cyclic_closure().tuples.len(), 45, "{name}");
            assert_eq!(p.orbits().len(), 15);
        }
    }

    #[test]
    fn least_rotation_and_reversal() {
        let t = CyclicTuple::from_indices(&[12, 4, 2]);
        assert_eq!(t.least_rotation(), CyclicTuple::from_indices(&[2, 12, 4]));
        assert_eq!(t.reversed(), CyclicTuple::from_indices(&[2, 4, 12]));
        assert_eq!(CyclicTuple::from_indices(&[1, 10, 1]).least_rotation(), CyclicTuple::from_indices(&[1, 1, 10]));
    }

    #[test]
    fn construction_rejects_bad_letters() {
        assert!(PolygonalPresentation::new(3, 3, 1, vec![CyclicTuple::from_indices(&[1, 2, 4])]).is_err());
        assert!(PolygonalPresentation::new(3, 3, 1, vec![CyclicTuple::from_indices(&[0, 1, 2])]).is_err());
        assert!(PolygonalPresentation::new(3, 2, 1, vec![]).is_err());
    }

    fn perm_strategy(q: usize) -> impl Strategy<Value = Vec<u32>> {
        Just((1..=q as u32).collect::<Vec<_>>()).prop_shuffle().prop_map(|v| {
            let mut p = vec![0];
            p.extend(v);
            p
        })
    }

    proptest! {
        #[test]
        fn closure_is_idempotent(lists in prop::collection::vec(prop::collection::vec(1u32..8, 3), 0..6)) {
            let refs: Vec<&[u32]> = lists.iter().map(|v| v.as_slice()).collect();
            let p = PolygonalPresentation::new(8, 3, 1, refs.iter().map(|l| CyclicTuple::from_indices(l)).collect()).unwrap();
            let once = p.cyclic_closure();
            prop_assert_eq!(once.cyclic_closure(), once.clone());
            prop_assert!(once.tuples.len() <= 3 * p.tuples.len());
        }

        #[test]
        fn closure_commutes_with_relabeling(perm in perm_strategy(15)) {
            let t1 = builtin("T1").unwrap();
            let a = t1.cyclic_closure().relabeled(&perm);
            let b = t1.relabeled(&perm).cyclic_closure();
            prop_assert_eq!(a, b);
        }
    }
}
