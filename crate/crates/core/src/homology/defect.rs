//! The syzygetic defect of an ideal and the syzygy part of its first Koszul
//! homology, degree by degree.

use std::collections::HashMap;

use super::graded::GradedQuotient;
use super::koszul::GradedDims;
use crate::error::{Error, Result};
use crate::exact::{sparse_left_kernel, SparseEchelon, SparseVec};
use crate::poly::{GradedRing, Monomial, Polynomial};

struct Setup {
    degs: Vec<i64>,
    free: GradedQuotient,
}

impl Setup {
    fn new(ring: &GradedRing, gens: &[Polynomial]) -> Result<Self> {
        let mut degs = Vec::new();
        for g in gens {
            let d = g.homogeneous_degree(ring).ok_or_else(|| Error::Invalid("ideal generators must be nonzero and homogeneous".into()))?;
            degs.push(d as i64);
        }
        Ok(Setup { degs, free: GradedQuotient::new(ring, &[0], &[])? })
    }

    /// Basis (monomial, generator) of F_t, F free on the generators.
    fn f_basis(&mut self, t: i64) -> Vec<(Monomial, usize)> {
        let mut out = Vec::new();
        for (mu, &d) in self.degs.clone().iter().enumerate() {
            if t - d >= 0 {
                for (m, _) in self.free.piece(t - d).basis.clone() {
                    out.push((m, mu));
                }
            }
        }
        out
    }

    fn poly_coords(&mut self, t: i64, p: &Polynomial, m: &Monomial) -> SparseVec {
        let piece = self.free.piece(t);
        let mut v: SparseVec = p.terms().iter().map(|(n, c)| (piece.column(&n.mul(m), 0).expect("column"), c.clone())).collect();
        v.sort_by_key(|e| e.0);
        v
    }

    /// Kernel of F_t -> R_t, in coordinates of `f_basis(t)`.
    fn syzygies(&mut self, t: i64, gens: &[Polynomial]) -> (Vec<(Monomial, usize)>, Vec<SparseVec>) {
        let basis = self.f_basis(t);
        let ncols = if t >= 0 { self.free.piece(t).ambient_dim() } else { 0 };
        let rows: Vec<SparseVec> = basis.iter().map(|(m, mu)| self.poly_coords(t, &gens[*mu], m)).collect();
        let kern = sparse_left_kernel(&rows, ncols);
        (basis, kern)
    }
}

fn rank(rows: &[SparseVec], ncols: usize) -> usize {
    let mut e = SparseEchelon::new(ncols);
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// dim of ker(Sym^2 I -> I^2) in each total degree of the window, with the
/// generator `e_mu` in the degree of the corresponding generator.
pub fn syzygetic_defect(ring: &GradedRing, gens: &[Polynomial], lo: i64, hi: i64) -> Result<GradedDims> {
    let mut s = Setup::new(ring, gens)?;
    let r = gens.len();
    let mut out = GradedDims::default();
    for j in lo..=hi {
        // Sym^2 F in degree j
        let mut basis: Vec<(Monomial, usize, usize)> = Vec::new();
        for mu in 0..r {
            for nu in mu..r {
                let t = j - s.degs[mu] - s.degs[nu];
                if t >= 0 {
                    for (m, _) in s.free.piece(t).basis.clone() {
                        basis.push((m, mu, nu));
                    }
                }
            }
        }
        if basis.is_empty() {
            continue;
        }
        let index: HashMap<(Monomial, usize, usize), usize> = basis.iter().enumerate().map(|(i, b)| (*b, i)).collect();
        let rj = s.free.piece(j).ambient_dim();
        let rows: Vec<SparseVec> = basis
            .iter()
            .map(|(m, mu, nu)| {
                let p = gens[*mu].mul(&gens[*nu]);
                s.poly_coords(j, &p, m)
            })
            .collect();
        let kdim = basis.len() - rank(&rows, rj);
        // relations z * e_nu for syzygies z
        let mut rels: Vec<SparseVec> = Vec::new();
        for nu in 0..r {
            let t = j - s.degs[nu];
            let (fb, kern) = s.syzygies(t, gens);
            for z in kern {
                let mut v: SparseVec = z
                    .iter()
                    .map(|(c, x)| {
                        let (m, mu) = fb[*c];
                        (index[&(m, mu.min(nu), mu.max(nu))], x.clone())
                    })
                    .collect();
                v.sort_by_key(|e| e.0);
                rels.push(v);
            }
        }
        out.set(j, (kdim - rank(&rels, basis.len())) as u64);
    }
    Ok(out)
}

/// Dimension of Z/(Z ∩ IF) per degree: the image of the first Koszul
/// homology in F/IF.
pub fn syzygy_part(ring: &GradedRing, gens: &[Polynomial], lo: i64, hi: i64) -> Result<GradedDims> {
    let mut s = Setup::new(ring, gens)?;
    let r = gens.len();
    let mut out = GradedDims::default();
    for j in lo..=hi {
        let (fb, kern) = s.syzygies(j, gens);
        if kern.is_empty() {
            continue;
        }
        let index: HashMap<(Monomial, usize), usize> = fb.iter().enumerate().map(|(i, b)| (*b, i)).collect();
        let mut ifrows: Vec<SparseVec> = Vec::new();
        for mu in 0..r {
            for rho in 0..r {
                let t = j - s.degs[mu] - s.degs[rho];
                if t < 0 {
                    continue;
                }
                for (m, _) in s.free.piece(t).basis.clone() {
                    let mut v: SparseVec = gens[rho].terms().iter().map(|(n, c)| (index[&(n.mul(&m), mu)], c.clone())).collect();
                    v.sort_by_key(|e| e.0);
                    ifrows.push(v);
                }
            }
        }
        let n = fb.len();
        let zdim = kern.len();
        let ifdim = rank(&ifrows, n);
        let mut both = kern.clone();
        both.extend(ifrows);
        let sum = rank(&both, n);
        let inter = zdim + ifdim - sum;
        out.set(j, (zdim - inter) as u64);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::koszul::koszul_homology;

    fn x(i: usize) -> Polynomial {
        Polynomial::var(i)
    }

    #[test]
    fn principal_and_complete_intersection_are_syzygetic() {
        let r = GradedRing::standard(2, "l");
        assert!(syzygetic_defect(&r, &[x(0).mul(&x(1))], 0, 8).unwrap().is_zero());
        assert!(syzygetic_defect(&r, &[x(0).mul(&x(0)), x(1).mul(&x(1))], 0, 8).unwrap().is_zero());
    }

    #[test]
    fn defect_and_syzygy_part_add_up_to_first_homology() {
        let r = GradedRing::standard(2, "l");
        let gens = [x(0).mul(&x(0)), x(0).mul(&x(1)), x(1).mul(&x(1))];
        let d = syzygetic_defect(&r, &gens, 0, 8).unwrap();
        let z = syzygy_part(&r, &gens, 0, 8).unwrap();
        let h = koszul_homology(&r, &gens, 1, 0, 8).unwrap();
        for j in 0..=8 {
            assert_eq!(d.get(j) + z.get(j), h.get(j), "degree {j}");
        }
    }
}
