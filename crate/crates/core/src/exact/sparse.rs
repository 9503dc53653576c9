//! Sparse elimination over Q.
//!
//! Rows are sorted `(column, value)` lists. [`SparseEchelon`] keeps an
//! echelon basis of the span of the rows inserted so far, which is enough for
//! ranks, membership tests, normal forms modulo a subspace and kernels.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::Rational;

pub type SparseVec = Vec<(usize, Rational)>;

/// Adds `factor * src` into `dst`, keeping `dst` sorted and free of zeros.
pub fn axpy(dst: &SparseVec, factor: &Rational, src: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(dst.len() + src.len());
    let (mut i, mut j) = (0, 0);
    while i < dst.len() || j < src.len() {
        if j == src.len() || (i < dst.len() && dst[i].0 < src[j].0) {
            out.push(dst[i].clone());
            i += 1;
        } else if i == dst.len() || src[j].0 < dst[i].0 {
            out.push((src[j].0, factor * &src[j].1));
            j += 1;
        } else {
            let v = &dst[i].1 + &(factor * &src[j].1);
            if !v.is_zero() {
                out.push((dst[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn dense_to_sparse(v: &[Rational]) -> SparseVec {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

pub fn sparse_to_dense(v: &SparseVec, n: usize) -> Vec<Rational> {
    let mut d = vec![Rational::ZERO; n];
    for (i, x) in v {
        d[*i] = x.clone();
    }
    d
}

/// Scratch accumulator used to reduce one vector at a time.
struct Accumulator {
    vals: Vec<Rational>,
    live: Vec<bool>,
    heap: BinaryHeap<Reverse<usize>>,
}

impl Accumulator {
    fn new(n: usize) -> Self {
        Accumulator { vals: vec![Rational::ZERO; n], live: vec![false; n], heap: BinaryHeap::new() }
    }

    fn grow(&mut self, n: usize) {
        if self.vals.len() < n {
            self.vals.resize(n, Rational::ZERO);
            self.live.resize(n, false);
        }
    }

    fn load(&mut self, v: &SparseVec) {
        self.load_slice(v)
    }

    fn load_slice(&mut self, v: &[(usize, Rational)]) {
        for (c, x) in v {
            self.vals[*c] = x.clone();
            if !self.live[*c] {
                self.live[*c] = true;
                self.heap.push(Reverse(*c));
            }
        }
    }

    fn add_scaled(&mut self, factor: &Rational, src: &[(usize, Rational)]) {
        for (c, x) in src {
            let p = factor * x;
            self.vals[*c] += &p;
            if !self.live[*c] {
                self.live[*c] = true;
                self.heap.push(Reverse(*c));
            }
        }
    }

    /// Next live column with a nonzero value, removing it from the heap.
    fn pop(&mut self) -> Option<usize> {
        while let Some(Reverse(c)) = self.heap.pop() {
            self.live[c] = false;
            if !self.vals[c].is_zero() {
                return Some(c);
            }
        }
        None
    }

    fn take(&mut self, c: usize) -> Rational {
        std::mem::take(&mut self.vals[c])
    }
}

/// Echelon basis of a growing subspace of Q^n.
///
/// Every stored row has leading coefficient 1 at its pivot and is reduced
/// with respect to the pivots that existed when it was inserted.
pub struct SparseEchelon {
    ncols: usize,
    rows: Vec<SparseVec>,
    pivot_row: Vec<Option<usize>>,
    acc: Accumulator,
}

impl SparseEchelon {
    pub fn new(ncols: usize) -> Self {
        SparseEchelon { ncols, rows: Vec::new(), pivot_row: vec![None; ncols], acc: Accumulator::new(ncols) }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn is_pivot(&self, c: usize) -> bool {
        self.pivot_row[c].is_some()
    }

    pub fn pivots(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&c| self.pivot_row[c].is_some()).collect()
    }

    /// Reduces `v` completely: the result has no entry in a pivot column.
    pub fn reduce(&mut self, v: &SparseVec) -> SparseVec {
        self.acc.grow(self.ncols);
        self.acc.load(v);
        let mut out = Vec::new();
        while let Some(c) = self.acc.pop() {
            let x = self.acc.take(c);
            match self.pivot_row[c] {
                Some(r) => {
                    let row = &self.rows[r];
                    // row[0] is the pivot itself, with coefficient 1
                    for (cc, y) in &row[1..] {
                        let p = &x * y;
                        self.acc.vals[*cc] -= &p;
                        if !self.acc.live[*cc] {
                            self.acc.live[*cc] = true;
                            self.acc.heap.push(Reverse(*cc));
                        }
                    }
                }
                None => out.push((c, x)),
            }
        }
        out
    }

    /// Inserts a vector; returns its new pivot column, or `None` if it was
    /// already in the span.
    pub fn insert(&mut self, v: &SparseVec) -> Option<usize> {
        let red = self.reduce(v);
        let (c, lead) = red.first()?.clone();
        let inv = lead.recip();
        let row: SparseVec = red.into_iter().map(|(cc, x)| (cc, &x * &inv)).collect();
        self.pivot_row[c] = Some(self.rows.len());
        self.rows.push(row);
        Some(c)
    }

    pub fn contains(&mut self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Brings the stored rows into fully reduced form.
    pub fn back_substitute(&mut self) {
        let mut order: Vec<(usize, usize)> = (0..self.ncols).filter_map(|c| self.pivot_row[c].map(|r| (c, r))).collect();
        order.reverse();
        for &(_, r) in &order {
            let row = std::mem::take(&mut self.rows[r]);
            let (head, tail) = row.split_first().expect("nonempty row");
            let mut acc = Accumulator::new(0);
            std::mem::swap(&mut acc, &mut self.acc);
            acc.grow(self.ncols);
            acc.load_slice(tail);
            let mut out = vec![head.clone()];
            while let Some(c) = acc.pop() {
                let x = acc.take(c);
                match self.pivot_row[c] {
                    Some(rr) if rr != r => acc.add_scaled(&-x, &self.rows[rr][1..]),
                    _ => out.push((c, x)),
                }
            }
            std::mem::swap(&mut acc, &mut self.acc);
            self.rows[r] = out;
        }
    }

    /// Null space of the linear map whose rows were inserted, one basis vector
    /// per free column.
    pub fn kernel(mut self) -> Vec<SparseVec> {
        self.back_substitute();
        let mut kern: Vec<SparseVec> = Vec::new();
        let mut index = vec![usize::MAX; self.ncols];
        for c in 0..self.ncols {
            if self.pivot_row[c].is_none() {
                index[c] = kern.len();
                kern.push(vec![(c, Rational::ONE)]);
            }
        }
        for row in &self.rows {
            let p = row[0].0;
            for (c, x) in &row[1..] {
                kern[index[*c]].push((p, -x));
            }
        }
        for v in &mut kern {
            v.sort_by_key(|e| e.0);
        }
        kern
    }
}

/// Rank of the span of `rows` in Q^ncols.
pub fn sparse_rank(rows: &[SparseVec], ncols: usize) -> usize {
    let mut e = SparseEchelon::new(ncols);
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Null space of the matrix with the given sparse rows.
pub fn sparse_kernel(rows: &[SparseVec], ncols: usize) -> Vec<SparseVec> {
    let mut e = SparseEchelon::new(ncols);
    for r in rows {
        e.insert(r);
    }
    e.kernel()
}

/// Transpose of a sparse matrix given by rows.
pub fn sparse_transpose(rows: &[SparseVec], ncols: usize) -> Vec<SparseVec> {
    let mut out: Vec<SparseVec> = vec![Vec::new(); ncols];
    for (i, r) in rows.iter().enumerate() {
        for (c, x) in r {
            out[*c].push((i, x.clone()));
        }
    }
    out
}

/// Combinations of `rows` that vanish: the null space of the transpose.
pub fn sparse_left_kernel(rows: &[SparseVec], ncols: usize) -> Vec<SparseVec> {
    sparse_kernel(&sparse_transpose(rows, ncols), rows.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::RationalMatrix;
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn kernel_matches_dense() {
        let rows = vec![vec![(0, q(1)), (1, q(1))], vec![(1, q(1)), (2, q(1))]];
        let k = sparse_kernel(&rows, 3);
        assert_eq!(k, vec![vec![(0, q(1)), (1, q(-1)), (2, q(1))]]);
    }

    #[test]
    fn reduce_is_normal_form() {
        let mut e = SparseEchelon::new(3);
        e.insert(&vec![(0, q(2)), (2, q(2))]);
        assert_eq!(e.reduce(&vec![(0, q(1)), (1, q(5))]), vec![(1, q(5)), (2, q(-1))]);
        assert!(e.contains(&vec![(0, q(-3)), (2, q(-3))]));
    }

    proptest! {
        #[test]
        fn agrees_with_dense(v in proptest::collection::vec(-2i64..3, 20)) {
            let m = RationalMatrix::with_cols(4, 5, v.iter().map(|&x| q(x)).collect());
            let rows: Vec<SparseVec> = m.rows_vec().iter().map(|r| dense_to_sparse(r)).collect();
            prop_assert_eq!(sparse_rank(&rows, 5), m.rank());
            let k = sparse_kernel(&rows, 5);
            prop_assert_eq!(k.len(), 5 - m.rank());
            for vec in &k {
                let d = sparse_to_dense(vec, 5);
                prop_assert!(m.mul_vec(&d).iter().all(|x| x.is_zero()));
            }
        }
    }
}
