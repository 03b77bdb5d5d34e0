//! Fundamental group presentation of the polyhedron and its abelianization.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::presentation::PolygonalPresentation;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    /// Relator words over signed 1-based generator indices; `-i` is the
    /// inverse of generator `i`.
    pub relators: Vec<Vec<i64>>,
}

/// One generator per letter, one relator per face (orbit representative =
/// least rotation, in sorted order).
pub fn to_group_presentation(p: &PolygonalPresentation) -> GroupPresentation {
    GroupPresentation {
        generators: (1..=p.q).map(|i| format!("g{i}")).collect(),
        relators: p.orbits().iter().map(|f| f.0.iter().map(|l| l.0 as i64).collect()).collect(),
    }
}

impl GroupPresentation {
    /// GAP input defining the free group, the relator list and the quotient.
    pub fn to_gap(&self) -> String {
        let words: Vec<String> = self
            .relators
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&g| if g > 0 { format!("f.{g}") } else { format!("f.{}^-1", -g) })
                    .collect::<Vec<_>>()
                    .join("*")
            })
            .collect();
        format!(
            "F := FreeGroup({});\nf := F;\nrels := [ {} ];\nG := F / rels;\n",
            self.generators.len(),
            words.join(", ")
        )
    }
}

/// Exponent-sum matrix: rows are relators, columns generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<BigInt>>,
}

impl RelationMatrix {
    pub fn from_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> Self {
        RelationMatrix { rows: rows.len(), cols, entries: rows }
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(), cols)
    }

    pub fn identity(n: usize) -> Self {
        Self::from_rows(
            (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect(),
            n,
        )
    }

    pub fn mul(&self, other: &RelationMatrix) -> RelationMatrix {
        assert_eq!(self.cols, other.rows);
        let entries = (0..self.rows)
            .map(|i| {
                (0..other.cols)
                    .map(|j| (0..self.cols).map(|t| &self.entries[i][t] * &other.entries[t][j]).sum())
                    .collect()
            })
            .collect();
        Self::from_rows(entries, other.cols)
    }

    pub fn column_sums(&self) -> Vec<BigInt> {
        (0..self.cols).map(|j| self.entries.iter().map(|r| r[j].clone()).sum()).collect()
    }

    /// Determinant by fraction-free (Bareiss) elimination. Square only.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.entries.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        if n == 0 {
            BigInt::one()
        } else {
            sign * &a[n - 1][n - 1]
        }
    }
}

pub fn relation_matrix(gp: &GroupPresentation) -> RelationMatrix {
    let cols = gp.generators.len();
    let rows = gp
        .relators
        .iter()
        .map(|r| {
            let mut row = vec![BigInt::zero(); cols];
            for &g in r {
                let idx = g.unsigned_abs() as usize - 1;
                row[idx] += if g > 0 { 1 } else { -1 };
            }
            row
        })
        .collect();
    RelationMatrix::from_rows(rows, cols)
}

/// Smith form `left * input * right = diagonal`, with `left` and `right`
/// unimodular and each invariant factor dividing the next.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub invariant_factors: Vec<BigInt>,
    pub diagonal: RelationMatrix,
    pub left: RelationMatrix,
    pub right: RelationMatrix,
}

impl SmithForm {
    /// Re-multiplies the certificates and checks unimodularity.
    pub fn verify(&self, input: &RelationMatrix) -> bool {
        let product = self.left.mul(input).mul(&self.right);
        product == self.diagonal
            && self.left.determinant().abs().is_one()
            && self.right.determinant().abs().is_one()
    }
}

fn swap_cols(m: &mut [Vec<BigInt>], a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// row[dst] -= factor * row[src]
fn row_sub(m: &mut [Vec<BigInt>], dst: usize, src: usize, factor: &BigInt) {
    let src_row = m[src].clone();
    for (x, s) in m[dst].iter_mut().zip(src_row.iter()) {
        *x -= factor * s;
    }
}

fn col_sub(m: &mut [Vec<BigInt>], dst: usize, src: usize, factor: &BigInt) {
    for row in m.iter_mut() {
        let s = row[src].clone();
        row[dst] -= factor * s;
    }
}

pub fn smith_normal_form(input: &RelationMatrix) -> SmithForm {
    let (rows, cols) = (input.rows, input.cols);
    let mut a = input.entries.clone();
    let mut left = RelationMatrix::identity(rows).entries;
    let mut right = RelationMatrix::identity(cols).entries;

    for t in 0..rows.min(cols) {
        // smallest nonzero entry of the remaining block becomes the pivot
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !a[i][j].is_zero())
            .min_by(|&(i, j), &(k, l)| a[i][j].abs().cmp(&a[k][l].abs()));
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        left.swap(t, pi);
        swap_cols(&mut a, t, pj);
        swap_cols(&mut right, t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let f = a[i][t].div_floor(&a[t][t]);
                row_sub(&mut a, i, t, &f);
                row_sub(&mut left, i, t, &f);
                if !a[i][t].is_zero() {
                    // remainder is smaller than the pivot: promote it
                    a.swap(t, i);
                    left.swap(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let f = a[t][j].div_floor(&a[t][t]);
                col_sub(&mut a, j, t, &f);
                col_sub(&mut right, j, t, &f);
                if !a[t][j].is_zero() {
                    swap_cols(&mut a, t, j);
                    swap_cols(&mut right, t, j);
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // divisibility: fold an offending row into the pivot row
            let offending = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&a[i][j] % &a[t][t]).is_zero()));
            match offending {
                Some(i) => {
                    let minus_one = BigInt::from(-1);
                    row_sub(&mut a, t, i, &minus_one);
                    row_sub(&mut left, t, i, &minus_one);
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -x.clone();
            }
            for x in left[t].iter_mut() {
                *x = -x.clone();
            }
        }
    }

    let invariant_factors = (0..rows.min(cols)).map(|i| a[i][i].clone()).collect();
    SmithForm {
        invariant_factors,
        diagonal: RelationMatrix::from_rows(a, cols),
        left: RelationMatrix::from_rows(left, rows),
        right: RelationMatrix::from_rows(right, cols),
    }
}

/// A finitely generated abelian group `Z^free_rank ⊕ ⊕ Z/t_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub free_rank: usize,
    /// Invariant factors greater than one, in divisibility order.
    pub torsion: Vec<String>,
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 { "Z".into() } else { format!("Z^{}", self.free_rank) });
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

pub fn abelianization_of_matrix(m: &RelationMatrix) -> AbelianGroup {
    let snf = smith_normal_form(m);
    let nonzero = snf.invariant_factors.iter().filter(|d| !d.is_zero()).count();
    AbelianGroup {
        free_rank: m.cols - nonzero,
        torsion: snf.invariant_factors.iter().filter(|d| *d > &BigInt::one()).map(|d| d.to_string()).collect(),
    }
}

pub fn abelianization(p: &PolygonalPresentation) -> AbelianGroup {
    abelianization_of_matrix(&relation_matrix(&to_group_presentation(p)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::builtin;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn t1_presentation_shape() {
        let gp = to_group_presentation(&builtin("T1").unwrap());
        assert_eq!(gp.generators.len(), 15);
        assert_eq!(gp.relators.len(), 15);
        assert!(gp.relators.iter().all(|r| r.len() == 3));
        assert_eq!(gp.relators[0], vec![1, 2, 7]);
        assert!(gp.to_gap().starts_with("F := FreeGroup(15);\nf := F;\nrels := [ f.1*f.2*f.7, "));
    }

    #[test]
    fn t2_has_square_relators() {
        let gp = to_group_presentation(&builtin("T2").unwrap());
        assert!(gp.relators.contains(&vec![1, 1, 10]));
        let m = relation_matrix(&gp);
        let row = gp.relators.iter().position(|r| r == &vec![1, 1, 10]).unwrap();
        assert_eq!(m.entries[row][0], BigInt::from(2));
        assert_eq!(m.entries[row][9], BigInt::from(1));
    }

    #[test]
    fn single_relator_rows() {
        let p = PolygonalPresentation::from_lists(3, &[&[1, 2, 3]]).unwrap();
        let m = relation_matrix(&to_group_presentation(&p));
        assert_eq!(m.entries, vec![ints(&[1, 1, 1])]);
        let ab = abelianization(&p);
        assert_eq!((ab.free_rank, ab.torsion.len()), (2, 0));
        assert_eq!(ab.to_string(), "Z^2");
    }

    #[test]
    fn relation_matrix_of_t1() {
        let m = relation_matrix(&to_group_presentation(&builtin("T1").unwrap()));
        assert_eq!((m.rows, m.cols), (15, 15));
        assert!(m.column_sums().iter().all(|s| *s == BigInt::from(3)));
        for row in &m.entries {
            assert_eq!(row.iter().sum::<BigInt>(), BigInt::from(3));
            assert!(row.iter().all(|x| *x >= BigInt::zero() && *x <= BigInt::from(3)));
        }
    }

    #[test]
    fn small_smith_forms() {
        let id = RelationMatrix::identity(3);
        assert_eq!(smith_normal_form(&id).invariant_factors, ints(&[1, 1, 1]));
        let d = RelationMatrix::from_i64(&[vec![2, 0], vec![0, 4]]);
        let s = smith_normal_form(&d);
        assert_eq!(s.invariant_factors, ints(&[2, 4]));
        assert!(s.verify(&d));
        // diag(4, 6) -> (2, 12)
        let m = RelationMatrix::from_i64(&[vec![4, 0], vec![0, 6]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.invariant_factors, ints(&[2, 12]));
        assert!(s.verify(&m));
    }

    #[test]
    fn rectangular_and_signed_input() {
        let m = RelationMatrix::from_i64(&[vec![2, -4, 6], vec![-1, 3, 0]]);
        let s = smith_normal_form(&m);
        assert!(s.verify(&m));
        assert_eq!(s.invariant_factors, ints(&[1, 2]));
        let ab = abelianization_of_matrix(&m);
        assert_eq!(ab.free_rank, 1);
        assert_eq!(ab.torsion, vec!["2".to_string()]);
    }

    #[test]
    fn determinant_by_bareiss() {
        assert_eq!(RelationMatrix::from_i64(&[vec![0, 1], vec![1, 0]]).determinant(), BigInt::from(-1));
        assert_eq!(RelationMatrix::from_i64(&[vec![2, 3], vec![4, 6]]).determinant(), BigInt::zero());
        assert_eq!(RelationMatrix::identity(0).determinant(), BigInt::one());
    }
}
