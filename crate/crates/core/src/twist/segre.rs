//! Recognising the ideal of 2×2 minors of a 2×3 matrix of variables.

use serde::{Deserialize, Serialize};

use crate::exact::{dense_to_sparse, sparse_rank, Rational};
use crate::poly::Polynomial;
use crate::susy::SupertranslationAlgebra;

/// A 2×3 matrix whose entries are signed variables `sign * l_{var+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Placement {
    pub entries: [[(usize, i64); 3]; 2],
}

impl Placement {
    fn entry(&self, r: usize, c: usize) -> Polynomial {
        let (v, s) = self.entries[r][c];
        Polynomial::var(v).scale(&Rational::from(s))
    }

    pub fn minors(&self) -> Vec<Polynomial> {
        [(0, 1), (0, 2), (1, 2)]
            .iter()
            .map(|&(a, b)| self.entry(0, a).mul(&self.entry(1, b)).sub(&self.entry(0, b).mul(&self.entry(1, a))))
            .collect()
    }
}

fn quadric_coords(p: &Polynomial, k: usize) -> Vec<Rational> {
    let mut v = vec![Rational::ZERO; k * k];
    for (m, c) in p.terms() {
        let vars: Vec<usize> = (0..k).flat_map(|i| std::iter::repeat_n(i, m.exp(i) as usize)).collect();
        v[vars[0] * k + vars[1]] = c.clone();
    }
    v
}

fn same_span(a: &[Polynomial], b: &[Polynomial], k: usize) -> bool {
    let rows = |ps: &[Polynomial]| ps.iter().map(|p| dense_to_sparse(&quadric_coords(p, k))).collect::<Vec<_>>();
    let ra = sparse_rank(&rows(a), k * k);
    let mut both = rows(a);
    both.extend(rows(b));
    ra == sparse_rank(&rows(b), k * k) && ra == sparse_rank(&both, k * k)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// A placement of the six odd variables in a 2×3 matrix whose minors span
/// the same space of quadrics as the ideal of `alg`, if one exists.
pub fn determinantal_placement(alg: &SupertranslationAlgebra) -> Option<Placement> {
    if alg.k != 6 {
        return None;
    }
    let ideal = alg.ideal();
    for perm in permutations(6) {
        // the sign of the first entry can always be absorbed
        for signs in 0u32..32 {
            let sign = |i: usize| if i > 0 && signs >> (i - 1) & 1 == 1 { -1 } else { 1 };
            let e = |i: usize| (perm[i], sign(i));
            let p = Placement { entries: [[e(0), e(1), e(2)], [e(3), e(4), e(5)]] };
            if same_span(&ideal, &p.minors(), 6) {
                return Some(p);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generic_matrix_is_recognised() {
        let p = Placement { entries: [[(0, 1), (1, 1), (2, 1)], [(3, 1), (4, 1), (5, 1)]] };
        let alg = SupertranslationAlgebra::from_quadrics("segre", 6, &p.minors()).unwrap();
        assert!(determinantal_placement(&alg).is_some());
    }

    #[test]
    fn other_quadrics_are_not() {
        let x = Polynomial::var;
        let qs = vec![x(0).mul(&x(1)), x(2).mul(&x(3)), x(4).mul(&x(5))];
        let alg = SupertranslationAlgebra::from_quadrics("ci", 6, &qs).unwrap();
        assert!(determinantal_placement(&alg).is_none());
    }
}
