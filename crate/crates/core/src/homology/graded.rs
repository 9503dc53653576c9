//! Degreewise linear algebra for graded quotients F/U of free modules.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::exact::{Rational, SparseEchelon, SparseVec};
use crate::poly::{GradedRing, ModuleElement, Monomial};

/// One graded piece of F/U: a monomial basis of F_d, an echelon basis of U_d,
/// and the free columns, which index a basis of the quotient.
pub struct Piece {
    pub basis: Vec<(Monomial, usize)>,
    index: HashMap<(Monomial, usize), usize>,
    ech: SparseEchelon,
    /// quotient position of each column, `usize::MAX` for pivot columns
    qpos: Vec<usize>,
    qcols: Vec<usize>,
}

impl Piece {
    pub fn dim(&self) -> usize {
        self.qcols.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.len()
    }

    pub fn relation_rank(&self) -> usize {
        self.ech.rank()
    }

    pub fn column(&self, m: &Monomial, comp: usize) -> Option<usize> {
        self.index.get(&(*m, comp)).copied()
    }

    /// Monomial basis elements whose classes form a basis of the quotient.
    pub fn quotient_basis(&self) -> Vec<(Monomial, usize)> {
        self.qcols.iter().map(|&c| self.basis[c]).collect()
    }

    /// Ambient coordinates of a homogeneous element of degree d.
    pub fn ambient(&self, v: &ModuleElement) -> SparseVec {
        let mut out: SparseVec = Vec::new();
        for (c, p) in v.comps.iter().enumerate() {
            for (m, x) in p.terms() {
                out.push((self.index[&(*m, c)], x.clone()));
            }
        }
        out.sort_by_key(|e| e.0);
        out
    }

    /// Adds an element of F_d to U_d; false if it was already there. The
    /// quotient basis is not updated, so use this only on scratch pieces.
    pub fn absorb(&mut self, v: &SparseVec) -> bool {
        self.ech.insert(v).is_some()
    }

    /// Quotient coordinates of an element of F_d given in ambient columns.
    pub fn coords(&mut self, v: &SparseVec) -> SparseVec {
        let r = self.ech.reduce(v);
        r.into_iter().map(|(c, x)| (self.qpos[c], x)).collect()
    }
}

type Relation = Vec<(Monomial, usize, Rational)>;

/// Lazily built graded pieces of F/U.
pub struct GradedQuotient {
    pub ring: GradedRing,
    pub shifts: Vec<i64>,
    rels: BTreeMap<i64, Vec<Relation>>,
    pieces: BTreeMap<i64, Piece>,
    low: i64,
}

impl GradedQuotient {
    pub fn new(ring: &GradedRing, shifts: &[i64], relations: &[ModuleElement]) -> Result<Self> {
        let mut rels: BTreeMap<i64, Vec<_>> = BTreeMap::new();
        for r in relations {
            if r.rank() != shifts.len() {
                return Err(Error::Invalid("relation rank differs from the number of generators".into()));
            }
            if r.is_zero() {
                continue;
            }
            let d = r.homogeneous_degree(ring, shifts).ok_or_else(|| Error::Invalid("relation is not homogeneous".into()))?;
            let mut terms = Vec::new();
            for (c, p) in r.comps.iter().enumerate() {
                for (m, x) in p.terms() {
                    terms.push((*m, c, x.clone()));
                }
            }
            rels.entry(d).or_default().push(terms);
        }
        let low = shifts.iter().copied().min().unwrap_or(0);
        Ok(GradedQuotient { ring: ring.clone(), shifts: shifts.to_vec(), rels, pieces: BTreeMap::new(), low })
    }

    /// The quotient ring R/(gens).
    pub fn ring_quotient(ring: &GradedRing, gens: &[crate::poly::Polynomial]) -> Result<Self> {
        let rels: Vec<ModuleElement> = gens.iter().map(|g| ModuleElement::from_comps(vec![g.clone()])).collect();
        Self::new(ring, &[0], &rels)
    }

    pub fn piece(&mut self, d: i64) -> &mut Piece {
        if !self.pieces.contains_key(&d) {
            let start = self.pieces.keys().next_back().map_or(self.low, |&k| k + 1).max(self.low);
            for e in start..=d {
                if !self.pieces.contains_key(&e) {
                    let p = self.build(e);
                    self.pieces.insert(e, p);
                }
            }
            if d < self.low {
                let p = self.build(d);
                self.pieces.insert(d, p);
            }
        }
        self.pieces.get_mut(&d).expect("piece built")
    }

    pub fn dim(&mut self, d: i64) -> usize {
        self.piece(d).dim()
    }

    fn build(&self, d: i64) -> Piece {
        let mut basis = Vec::new();
        for (c, &s) in self.shifts.iter().enumerate() {
            if d - s >= 0 {
                for m in self.ring.monomials_of_degree((d - s) as u32) {
                    basis.push((m, c));
                }
            }
        }
        let index: HashMap<(Monomial, usize), usize> = basis.iter().enumerate().map(|(i, b)| (*b, i)).collect();
        let mut ech = SparseEchelon::new(basis.len());
        if !basis.is_empty() {
            for (v, &w) in self.ring.weights.iter().enumerate() {
                let prev = d - w as i64;
                let Some(pp) = self.pieces.get(&prev) else { continue };
                let xv = Monomial::var(v);
                for row in pp.ech.rows() {
                    let mut img: SparseVec = row
                        .iter()
                        .map(|(col, x)| {
                            let (m, c) = pp.basis[*col];
                            (index[&(m.mul(&xv), c)], x.clone())
                        })
                        .collect();
                    img.sort_by_key(|e| e.0);
                    ech.insert(&img);
                }
            }
            if let Some(rs) = self.rels.get(&d) {
                for r in rs {
                    let mut v: SparseVec = r.iter().map(|(m, c, x)| (index[&(*m, *c)], x.clone())).collect();
                    v.sort_by_key(|e| e.0);
                    ech.insert(&v);
                }
            }
        }
        let mut qpos = vec![usize::MAX; basis.len()];
        let mut qcols = Vec::new();
        for (c, q) in qpos.iter_mut().enumerate() {
            if !ech.is_pivot(c) {
                *q = qcols.len();
                qcols.push(c);
            }
        }
        Piece { basis, index, ech, qpos, qcols }
    }

    /// Matrix of multiplication by the variable `v` from degree `d`, as one
    /// sparse row (target quotient coordinates) per quotient basis element.
    pub fn multiplication(&mut self, v: usize, d: i64) -> Vec<SparseVec> {
        let w = self.ring.weights[v] as i64;
        let src = self.piece(d).quotient_basis();
        self.piece(d + w);
        let tgt = self.pieces.get_mut(&(d + w)).unwrap();
        let xv = Monomial::var(v);
        src.iter()
            .map(|(m, c)| {
                let col = tgt.column(&m.mul(&xv), *c).expect("column exists");
                tgt.coords(&vec![(col, Rational::ONE)])
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Polynomial;

    #[test]
    fn dims_of_quotient_by_square_of_maximal_ideal() {
        let r = GradedRing::standard(2, "l");
        let x = Polynomial::var;
        let gens = vec![x(0).mul(&x(0)), x(0).mul(&x(1)), x(1).mul(&x(1))];
        let mut q = GradedQuotient::ring_quotient(&r, &gens).unwrap();
        assert_eq!((q.dim(0), q.dim(1), q.dim(2), q.dim(3)), (1, 2, 0, 0));
        assert_eq!(q.dim(-1), 0);
    }
}
