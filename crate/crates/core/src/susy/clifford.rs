//! Gamma matrices on the Fock space Λ•C^5 and the spinor pairings used for
//! the ten- and eleven-dimensional algebras.
//!
//! Basis vectors of Λ•C^5 are subsets S ⊂ {0..4}, stored as bitmasks. The
//! creation operator c_i sends e_S to (-1)^{#{j in S : j < i}} e_{S+i} and the
//! contraction a_i removes i with the same sign, so {c_i, a_j} = δ_ij.

use crate::error::{Error, Result};
use crate::exact::{sparse_kernel, Rational, SparseEchelon, SparseVec};

pub const FOCK_DIM: usize = 32;

/// A matrix with at most one nonzero entry per column: `col -> (row, sign)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedPermutation {
    pub image: Vec<Option<(usize, i64)>>,
}

impl SignedPermutation {
    fn entry(&self, row: usize, col: usize) -> i64 {
        match self.image[col] {
            Some((r, s)) if r == row => s,
            _ => 0,
        }
    }

    /// `self * other`.
    pub fn compose(&self, other: &SignedPermutation) -> SignedPermutation {
        let image = other.image.iter().map(|e| e.and_then(|(r, s)| self.image[r].map(|(r2, s2)| (r2, s * s2)))).collect();
        SignedPermutation { image }
    }
}

fn sign_before(s: usize, i: usize) -> i64 {
    if (s & ((1 << i) - 1)).count_ones().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn creation(i: usize) -> SignedPermutation {
    let image = (0..FOCK_DIM).map(|s| if s & (1 << i) == 0 { Some((s | (1 << i), sign_before(s, i))) } else { None }).collect();
    SignedPermutation { image }
}

pub fn contraction(i: usize) -> SignedPermutation {
    let image = (0..FOCK_DIM).map(|s| if s & (1 << i) != 0 { Some((s & !(1 << i), sign_before(s, i))) } else { None }).collect();
    SignedPermutation { image }
}

pub fn parity() -> SignedPermutation {
    let image = (0..FOCK_DIM).map(|s| Some((s, if s.count_ones() % 2 == 0 { 1 } else { -1 }))).collect();
    SignedPermutation { image }
}

/// Γ_0..Γ_4 = c_i, Γ_5..Γ_9 = a_i, and Γ_10 = (-1)^deg when `odd` is set.
pub fn gamma_matrices(odd: bool) -> Vec<SignedPermutation> {
    let mut g: Vec<SignedPermutation> = (0..5).map(creation).chain((0..5).map(contraction)).collect();
    if odd {
        g.push(parity());
    }
    g
}

/// Solves for bilinear forms B on the Fock space with Mᵀ B + B M = 0 for all
/// rotation generators M = Γ_μ Γ_ν - Γ_ν Γ_μ.
fn invariant_pairings(gammas: &[SignedPermutation]) -> Vec<SparseVec> {
    let n = FOCK_DIM;
    let col = |x: usize, y: usize| x * n + y;
    let mut ech = SparseEchelon::new(n * n);
    for mu in 0..gammas.len() {
        for nu in mu + 1..gammas.len() {
            let p = gammas[mu].compose(&gammas[nu]);
            let q = gammas[nu].compose(&gammas[mu]);
            let m = |r: usize, c: usize| p.entry(r, c) - q.entry(r, c);
            // (MᵀB + BM)_{xy} = sum_z M_zx B_zy + sum_z B_xz M_zy
            for x in 0..n {
                for y in 0..n {
                    let mut row: Vec<(usize, i64)> = Vec::new();
                    for z in 0..n {
                        let a = m(z, x);
                        if a != 0 {
                            row.push((col(z, y), a));
                        }
                        let b = m(z, y);
                        if b != 0 {
                            row.push((col(x, z), b));
                        }
                    }
                    row.sort();
                    let mut merged: SparseVec = Vec::new();
                    for (c, v) in row {
                        match merged.last_mut() {
                            Some((lc, lv)) if *lc == c => *lv += &Rational::from(v),
                            _ => merged.push((c, Rational::from(v))),
                        }
                    }
                    merged.retain(|e| !e.1.is_zero());
                    if !merged.is_empty() {
                        ech.insert(&merged);
                    }
                }
            }
        }
    }
    ech.kernel()
}

/// Symmetric pairings γ^μ_{ab} = (B Γ_μ)_{ab} on the spinors indexed by
/// `spinors`, for an invariant B chosen so that every slice is symmetric and
/// not all vanish. Returned as `gamma[mu][a][b]` with integer entries.
pub fn spinor_bracket(odd: bool, spinors: &[usize]) -> Result<Vec<Vec<Vec<Rational>>>> {
    let gammas = gamma_matrices(odd);
    let forms = invariant_pairings(&gammas);
    let n = FOCK_DIM;
    let k = spinors.len();
    // T_i^μ_{ab} for every invariant form B_i
    let tensor = |b: &SparseVec| -> Vec<Vec<Vec<Rational>>> {
        let mut dense = vec![Rational::ZERO; n * n];
        for (c, v) in b {
            dense[*c] = v.clone();
        }
        gammas
            .iter()
            .map(|g| {
                spinors
                    .iter()
                    .map(|&x| {
                        spinors
                            .iter()
                            .map(|&y| match g.image[y] {
                                Some((z, s)) => &dense[x * n + z] * &Rational::from(s),
                                None => Rational::ZERO,
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect()
    };
    let tensors: Vec<_> = forms.iter().map(tensor).collect();
    // combinations whose slices are all symmetric
    let mut rows: Vec<SparseVec> = Vec::new();
    for mu in 0..gammas.len() {
        for a in 0..k {
            for b in a + 1..k {
                let row: SparseVec =
                    tensors.iter().enumerate().map(|(i, t)| (i, &t[mu][a][b] - &t[mu][b][a])).filter(|e| !e.1.is_zero()).collect();
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
    }
    for c in sparse_kernel(&rows, forms.len()) {
        let mut out = vec![vec![vec![Rational::ZERO; k]; k]; gammas.len()];
        for (i, x) in &c {
            for mu in 0..gammas.len() {
                for a in 0..k {
                    for b in 0..k {
                        let v = &tensors[*i][mu][a][b] * x;
                        out[mu][a][b] += &v;
                    }
                }
            }
        }
        let first = out.iter().flatten().flatten().find(|x| !x.is_zero()).cloned();
        if let Some(f) = first {
            let s = f.abs().recip();
            for v in out.iter_mut().flatten().flatten() {
                *v = &*v * &s;
            }
            return Ok(out);
        }
    }
    Err(Error::Invalid("no symmetric invariant spinor pairing exists".into()))
}

/// Even subsets of {0..4}: the chiral half of the Fock space.
pub fn even_spinors() -> Vec<usize> {
    (0..FOCK_DIM).filter(|s| s.count_ones() % 2 == 0).collect()
}
