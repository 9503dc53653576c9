//! Degree-zero derivations 𝔤₀ of a supertranslation algebra and the
//! conformal-type test on their image in gl(V).

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::SupertranslationAlgebra;
use crate::error::{Error, Result};
use crate::exact::{sparse_kernel, sparse_rank, Rational, RationalMatrix, SparseEchelon, SparseVec};

/// A pair (A on Σ, B on V) with B γ(s,t) = γ(As,t) + γ(s,At).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Derivation {
    pub a: RationalMatrix,
    pub b: RationalMatrix,
}

impl Derivation {
    fn from_vector(v: &[Rational], k: usize, d: usize) -> Self {
        Derivation { a: RationalMatrix::with_cols(k, k, v[..k * k].to_vec()), b: RationalMatrix::with_cols(d, d, v[k * k..].to_vec()) }
    }

    fn to_vector(&self) -> Vec<Rational> {
        let mut v = self.a.rows_vec().concat();
        v.extend(self.b.rows_vec().concat());
        v
    }

    pub fn commutator(&self, other: &Derivation) -> Derivation {
        Derivation { a: commutator(&self.a, &other.a), b: commutator(&self.b, &other.b) }
    }
}

fn sparse_mul(x: &RationalMatrix, y: &RationalMatrix) -> RationalMatrix {
    let n = x.nrows();
    let mut out = RationalMatrix::zeros(n, y.ncols());
    for i in 0..n {
        for (l, xv) in x.row(i).iter().enumerate() {
            if xv.is_zero() {
                continue;
            }
            for (j, yv) in y.row(l).iter().enumerate() {
                if !yv.is_zero() {
                    let p = xv * yv;
                    out[(i, j)] += &p;
                }
            }
        }
    }
    out
}

fn commutator(x: &RationalMatrix, y: &RationalMatrix) -> RationalMatrix {
    let xy = sparse_mul(x, y);
    let yx = sparse_mul(y, x);
    let rows = (0..xy.nrows()).map(|i| xy.row(i).iter().zip(yx.row(i)).map(|(p, q)| p - q).collect()).collect();
    RationalMatrix::from_rows(rows)
}

/// The Lie algebra 𝔤₀ with an echelon basis: basis element `i` has a 1 in
/// unknown `free[i]` and 0 in every other free unknown.
#[derive(Debug)]
pub struct AutomorphismAlgebra {
    pub k: usize,
    pub d: usize,
    pub basis: Vec<Derivation>,
    equations: Vec<SparseVec>,
    free: Vec<usize>,
    structure: OnceLock<Vec<Vec<Vec<Rational>>>>,
}

fn equations(alg: &SupertranslationAlgebra) -> Vec<SparseVec> {
    let (k, d) = (alg.k, alg.d);
    let acol = |c: usize, a: usize| c * k + a;
    let bcol = |mu: usize, nu: usize| k * k + mu * d + nu;
    let mut rows = Vec::new();
    for a in 0..k {
        for b in a..k {
            for mu in 0..d {
                let mut row: BTreeMap<usize, Rational> = BTreeMap::new();
                let mut add = |c: usize, v: Rational| {
                    let e = row.entry(c).or_insert(Rational::ZERO);
                    *e += &v;
                };
                for nu in 0..d {
                    let g = alg.gamma(a, b, nu);
                    if !g.is_zero() {
                        add(bcol(mu, nu), g.clone());
                    }
                }
                for c in 0..k {
                    let g = alg.gamma(c, b, mu);
                    if !g.is_zero() {
                        add(acol(c, a), -g.clone());
                    }
                    let g = alg.gamma(a, c, mu);
                    if !g.is_zero() {
                        add(acol(c, b), -g.clone());
                    }
                }
                let row: SparseVec = row.into_iter().filter(|e| !e.1.is_zero()).collect();
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
    }
    rows
}

fn residual_is_zero(eqs: &[SparseVec], v: &[Rational]) -> bool {
    eqs.iter().all(|r| {
        let mut acc = Rational::ZERO;
        for (c, x) in r {
            if !v[*c].is_zero() {
                acc += &(x * &v[*c]);
            }
        }
        acc.is_zero()
    })
}

/// Solves for all degree-zero derivations and checks closure of the result.
pub fn derivations_deg0(alg: &SupertranslationAlgebra) -> Result<AutomorphismAlgebra> {
    let (k, d) = (alg.k, alg.d);
    let n = k * k + d * d;
    let eqs = equations(alg);
    let mut ech = SparseEchelon::new(n);
    for r in &eqs {
        ech.insert(r);
    }
    let free: Vec<usize> = (0..n).filter(|&c| !ech.is_pivot(c)).collect();
    let kern = ech.kernel();
    let basis = kern
        .iter()
        .map(|v| {
            let mut dense = vec![Rational::ZERO; n];
            for (c, x) in v {
                dense[*c] = x.clone();
            }
            Derivation::from_vector(&dense, k, d)
        })
        .collect();
    let g0 = AutomorphismAlgebra { k, d, basis, equations: eqs, free, structure: OnceLock::new() };
    if !g0.verify_closure() {
        return Err(Error::Invalid("derivations are not closed under the commutator".into()));
    }
    Ok(g0)
}

impl AutomorphismAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Whether a pair (A, B) is a derivation.
    pub fn is_derivation(&self, x: &Derivation) -> bool {
        residual_is_zero(&self.equations, &x.to_vector())
    }

    /// Coordinates of a derivation in the basis.
    pub fn coordinates(&self, x: &Derivation) -> Vec<Rational> {
        let v = x.to_vector();
        self.free.iter().map(|&c| v[c].clone()).collect()
    }

    pub fn contains(&self, x: &Derivation) -> bool {
        if !self.is_derivation(x) {
            return false;
        }
        // an element of the span is determined by its free coordinates
        let c = self.coordinates(x);
        let mut acc = vec![Rational::ZERO; x.to_vector().len()];
        for (i, ci) in c.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            for (j, v) in self.basis[i].to_vector().iter().enumerate() {
                acc[j] += &(ci * v);
            }
        }
        acc == x.to_vector()
    }

    pub fn verify_closure(&self) -> bool {
        self.basis.iter().all(|x| self.is_derivation(x))
            && (0..self.dim()).all(|i| (i + 1..self.dim()).all(|j| self.is_derivation(&self.basis[i].commutator(&self.basis[j]))))
    }

    /// `c[i][j][l]` with `[x_i, x_j] = sum_l c[i][j][l] x_l`, computed on first use.
    pub fn structure_constants(&self) -> &Vec<Vec<Vec<Rational>>> {
        self.structure.get_or_init(|| {
            let n = self.dim();
            let mut c = vec![vec![vec![Rational::ZERO; n]; n]; n];
            for i in 0..n {
                for j in i + 1..n {
                    let coords = self.coordinates(&self.basis[i].commutator(&self.basis[j]));
                    c[j][i] = coords.iter().map(|x| -x.clone()).collect();
                    c[i][j] = coords;
                }
            }
            c
        })
    }

    /// dim ρ₂(𝔤₀) ⊂ gl(V).
    pub fn rho2_image_dim(&self) -> usize {
        let rows: Vec<SparseVec> = self.basis.iter().map(|x| crate::exact::dense_to_sparse(&x.b.rows_vec().concat())).collect();
        sparse_rank(&rows, self.d * self.d)
    }

    /// dim ker ρ₂, the R-symmetry part.
    pub fn ker_rho2_dim(&self) -> usize {
        self.dim() - self.rho2_image_dim()
    }

    /// The vectors ρ₁(x_i) q.
    pub fn rho1_orbit(&self, q: &[Rational]) -> Vec<Vec<Rational>> {
        self.basis.iter().map(|x| sparse_mul_vec(&x.a, q)).collect()
    }

    /// The grading derivation (identity on Σ, twice the identity on V).
    pub fn grading_element(k: usize, d: usize) -> Derivation {
        let mut b = RationalMatrix::identity(d);
        for i in 0..d {
            b[(i, i)] = Rational::from(2);
        }
        Derivation { a: RationalMatrix::identity(k), b }
    }
}

fn sparse_mul_vec(m: &RationalMatrix, v: &[Rational]) -> Vec<Rational> {
    (0..m.nrows())
        .map(|i| {
            let mut acc = Rational::ZERO;
            for (x, y) in m.row(i).iter().zip(v) {
                if !x.is_zero() && !y.is_zero() {
                    acc += &(x * y);
                }
            }
            acc
        })
        .collect()
}

/// Outcome of the conformal-type test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConformalReport {
    pub gamma_rank: usize,
    pub gamma_surjective: bool,
    pub image_dim: usize,
    pub expected_image_dim: usize,
    /// A symmetric nondegenerate h on V with Bᵀh + hB ∈ Q·h for the whole image.
    pub invariant_form: Option<RationalMatrix>,
    pub conformal_type: bool,
}

/// Symmetric forms h with Bᵀh + hB = (2 tr B / d) h for every B in the image.
fn conformal_forms(g0: &AutomorphismAlgebra) -> Vec<RationalMatrix> {
    let d = g0.d;
    let mut index = vec![vec![0usize; d]; d];
    let mut n = 0;
    for r in 0..d {
        for s in r..d {
            index[r][s] = n;
            index[s][r] = n;
            n += 1;
        }
    }
    let mut rows = Vec::new();
    let dq = Rational::from(d);
    for x in &g0.basis {
        let b = &x.b;
        let tr = (0..d).fold(Rational::ZERO, |acc, i| acc + &b[(i, i)]);
        let t = &(&Rational::from(2) * &tr) / &dq;
        for r in 0..d {
            for s in r..d {
                let mut row: BTreeMap<usize, Rational> = BTreeMap::new();
                let mut add = |c: usize, v: Rational| *row.entry(c).or_insert(Rational::ZERO) += &v;
                for u in 0..d {
                    // (Bᵀh)_{rs} = sum_u B_{ur} h_{us},  (hB)_{rs} = sum_u h_{ru} B_{us}
                    if !b[(u, r)].is_zero() {
                        add(index[u][s], b[(u, r)].clone());
                    }
                    if !b[(u, s)].is_zero() {
                        add(index[r][u], b[(u, s)].clone());
                    }
                }
                if !t.is_zero() {
                    add(index[r][s], -t.clone());
                }
                let row: SparseVec = row.into_iter().filter(|e| !e.1.is_zero()).collect();
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
    }
    sparse_kernel(&rows, n)
        .into_iter()
        .map(|v| {
            let mut h = RationalMatrix::zeros(d, d);
            for (c, x) in v {
                for r in 0..d {
                    for s in 0..d {
                        if index[r][s] == c {
                            h[(r, s)] = x.clone();
                        }
                    }
                }
            }
            h
        })
        .collect()
}

fn nondegenerate_combination(forms: &[RationalMatrix], d: usize) -> Option<RationalMatrix> {
    if forms.is_empty() {
        return None;
    }
    let mut candidates: Vec<Vec<i64>> = (0..forms.len()).map(|i| (0..forms.len()).map(|j| (i == j) as i64).collect()).collect();
    for shift in 1..=8i64 {
        candidates.push((0..forms.len() as i64).map(|j| 1 + (j * shift) % 7).collect());
    }
    for c in candidates {
        let mut h = RationalMatrix::zeros(d, d);
        for (f, &w) in forms.iter().zip(&c) {
            if w == 0 {
                continue;
            }
            for r in 0..d {
                for s in 0..d {
                    let v = &f[(r, s)] * &Rational::from(w);
                    h[(r, s)] += &v;
                }
            }
        }
        if h.rank() == d {
            return Some(h);
        }
    }
    None
}

pub fn check_conformal_type(alg: &SupertranslationAlgebra) -> Result<ConformalReport> {
    let g0 = derivations_deg0(alg)?;
    Ok(conformal_report(alg, &g0))
}

/// Same as [`check_conformal_type`] for an already computed 𝔤₀.
pub fn conformal_report(alg: &SupertranslationAlgebra, g0: &AutomorphismAlgebra) -> ConformalReport {
    let d = alg.d;
    let gamma_rank = alg.gamma_rank();
    let image_dim = g0.rho2_image_dim();
    let expected_image_dim = d * d.saturating_sub(1) / 2 + 1;
    let invariant_form = if d == 0 { None } else { nondegenerate_combination(&conformal_forms(g0), d) };
    let gamma_surjective = gamma_rank == d;
    ConformalReport {
        gamma_rank,
        gamma_surjective,
        image_dim,
        expected_image_dim,
        conformal_type: gamma_surjective && invariant_form.is_some() && image_dim == expected_image_dim,
        invariant_form,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::susy::{build_standard, SusyKey};

    #[test]
    fn abelian_derivations_are_everything() {
        let g0 = derivations_deg0(&SupertranslationAlgebra::abelian(2, 3)).unwrap();
        assert_eq!(g0.dim(), 4 + 9);
    }

    #[test]
    fn three_dimensional_minimal() {
        let alg = build_standard(3, SusyKey::N(1)).unwrap();
        let g0 = derivations_deg0(&alg).unwrap();
        assert_eq!(g0.dim(), 4);
        assert_eq!(g0.ker_rho2_dim(), 0);
        assert!(g0.contains(&AutomorphismAlgebra::grading_element(2, 3)));
        let rep = conformal_report(&alg, &g0);
        assert!(rep.gamma_surjective && rep.conformal_type);
        assert_eq!(rep.image_dim, 4);
    }

    #[test]
    fn four_dimensional_minimal() {
        let g0 = derivations_deg0(&build_standard(4, SusyKey::N(1)).unwrap()).unwrap();
        assert_eq!(g0.dim(), 8);
        assert_eq!(g0.rho2_image_dim(), 7);
        assert_eq!(g0.ker_rho2_dim(), 1);
    }

    #[test]
    fn r_symmetry_dimensions() {
        let g0 = derivations_deg0(&build_standard(6, SusyKey::Pair(1, 0)).unwrap()).unwrap();
        assert_eq!(g0.ker_rho2_dim(), 3);
        let g0 = derivations_deg0(&build_standard(6, SusyKey::Pair(2, 0)).unwrap()).unwrap();
        assert_eq!(g0.ker_rho2_dim(), 10);
        assert!(conformal_report(&build_standard(6, SusyKey::Pair(2, 0)).unwrap(), &g0).conformal_type);
    }

    #[test]
    fn eleven_dimensional_algebra_is_conformal() {
        let alg = build_standard(11, SusyKey::N(1)).unwrap();
        let g0 = derivations_deg0(&alg).unwrap();
        assert_eq!(g0.ker_rho2_dim(), 0);
        assert!(conformal_report(&alg, &g0).conformal_type);
        let alg = build_standard(10, SusyKey::Pair(1, 0)).unwrap();
        let g0 = derivations_deg0(&alg).unwrap();
        assert_eq!(g0.dim(), 46);
        assert!(conformal_report(&alg, &g0).conformal_type);
    }

    #[test]
    fn structure_constants_are_antisymmetric() {
        let g0 = derivations_deg0(&build_standard(3, SusyKey::N(1)).unwrap()).unwrap();
        let c = g0.structure_constants();
        for i in 0..g0.dim() {
            for j in 0..g0.dim() {
                let s: Vec<Rational> = c[j][i].iter().map(|x| -x.clone()).collect();
                assert_eq!(c[i][j], s);
            }
        }
    }

    #[test]
    fn zero_bracket_is_not_conformal() {
        let rep = check_conformal_type(&SupertranslationAlgebra::abelian(2, 2)).unwrap();
        assert!(!rep.gamma_surjective && !rep.conformal_type);
    }
}
