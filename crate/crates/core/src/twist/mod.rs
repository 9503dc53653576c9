//! Twisting by a square-zero odd element q: the algebra
//! ker γ(q,-) / ρ₁(𝔤₀)q  ⊕  V / γ(q,Σ) with the induced bracket.

mod catalog;
mod segre;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{dense_to_sparse, sparse_to_dense, Rational, RationalMatrix, SparseEchelon};
use crate::multiplets::{component_fields, conf_module, hdim, MultipletTable};
use crate::susy::{derivations_deg0, AutomorphismAlgebra, SupertranslationAlgebra};

pub use catalog::{catalog_twists, named_twist, TwistPreset};
pub use segre::{determinantal_placement, Placement};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistResult {
    pub source: String,
    pub q: Vec<Rational>,
    pub twisted: SupertranslationAlgebra,
    /// Basis of ker γ(q,-) in Σ.
    pub kernel: Vec<Vec<Rational>>,
    /// Echelon basis of ρ₁(𝔤₀)q.
    pub orbit: Vec<Vec<Rational>>,
    /// Echelon basis of γ(q,Σ) in V.
    pub image: Vec<Vec<Rational>>,
    /// Vectors of Σ representing the odd basis of the twisted algebra.
    pub odd_representatives: Vec<Vec<Rational>>,
    /// Basis vectors of V representing the even basis of the twisted algebra.
    pub even_representatives: Vec<usize>,
}

/// Projection V -> V / W written in the coordinates that are not pivots of W.
struct Quotient {
    echelon: SparseEchelon,
    kept: Vec<usize>,
}

impl Quotient {
    fn new(n: usize, spanning: &[Vec<Rational>]) -> Self {
        let mut echelon = SparseEchelon::new(n);
        for v in spanning {
            echelon.insert(&dense_to_sparse(v));
        }
        echelon.back_substitute();
        let kept = (0..n).filter(|&c| !echelon.is_pivot(c)).collect();
        Quotient { echelon, kept }
    }

    fn project(&mut self, v: &[Rational]) -> Vec<Rational> {
        let red = sparse_to_dense(&self.echelon.reduce(&dense_to_sparse(v)), v.len());
        self.kept.iter().map(|&c| red[c].clone()).collect()
    }

    fn basis(&self) -> Vec<Vec<Rational>> {
        let n = self.echelon.ncols();
        self.echelon.rows().iter().map(|r| sparse_to_dense(r, n)).collect()
    }
}

/// The twist of `alg` by `q`, using the supplied degree-zero derivations.
pub fn twist(alg: &SupertranslationAlgebra, g0: &AutomorphismAlgebra, q: &[Rational]) -> Result<TwistResult> {
    if !alg.is_square_zero(q)? {
        return Err(Error::Invalid("q is not square-zero: γ(q,q) ≠ 0".into()));
    }
    let (k, d) = (alg.k, alg.d);
    // M[mu][b] = γ^mu(q, e_b)
    let columns: Vec<Vec<Rational>> = (0..k)
        .map(|b| {
            let mut e = vec![Rational::ZERO; k];
            e[b] = Rational::ONE;
            alg.bracket(q, &e)
        })
        .collect();
    let m = RationalMatrix::from_rows((0..d).map(|mu| columns.iter().map(|c| c[mu].clone()).collect()).collect());
    let kernel = if d == 0 { identity_rows(k) } else { m.kernel_basis() };

    let mut image = Quotient::new(d, &columns);
    let orbit_space = Quotient::new(k, &g0.rho1_orbit(q));
    let orbit = orbit_space.basis();

    for o in &orbit {
        for s in &kernel {
            if !image.project(&alg.bracket(o, s)).iter().all(Rational::is_zero) {
                return Err(Error::Invalid("internal inconsistency: the induced bracket is not well defined".into()));
            }
        }
    }

    let mut odd = SparseEchelon::new(k);
    for o in &orbit {
        odd.insert(&dense_to_sparse(o));
    }
    let mut odd_representatives = Vec::new();
    for s in &kernel {
        if odd.insert(&dense_to_sparse(s)).is_some() {
            odd_representatives.push(sparse_to_dense(odd.rows().last().expect("just inserted"), k));
        }
    }

    let kq = odd_representatives.len();
    let dq = image.kept.len();
    let mut gamma = vec![vec![vec![Rational::ZERO; dq]; kq]; kq];
    for i in 0..kq {
        for j in i..kq {
            let v = image.project(&alg.bracket(&odd_representatives[i], &odd_representatives[j]));
            gamma[i][j] = v.clone();
            gamma[j][i] = v;
        }
    }
    let name = format!("{} twisted", alg.name);
    let twisted = SupertranslationAlgebra::new(name, kq, dq, gamma)?;
    Ok(TwistResult {
        source: alg.name.clone(),
        q: q.to_vec(),
        twisted,
        kernel,
        orbit,
        image: image.basis(),
        odd_representatives,
        even_representatives: image.kept.clone(),
    })
}

fn identity_rows(k: usize) -> Vec<Vec<Rational>> {
    (0..k)
        .map(|i| {
            let mut e = vec![Rational::ZERO; k];
            e[i] = Rational::ONE;
            e
        })
        .collect()
}

/// Analyses that can be run on a twisted algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TwistAnalysis {
    Conf,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistReport {
    pub result: TwistResult,
    pub source_hdim: i64,
    pub twisted_hdim: i64,
    pub hdim_preserved: bool,
    pub conf: Option<MultipletTable>,
}

/// Twists with a freshly computed 𝔤₀, then checks hdim invariance and runs
/// the requested analyses on the twisted algebra.
pub fn twist_pipeline(
    alg: &SupertranslationAlgebra,
    q: &[Rational],
    analyses: &[TwistAnalysis],
    budget: Option<u64>,
) -> Result<TwistReport> {
    let g0 = derivations_deg0(alg)?;
    let result = twist(alg, &g0, q)?;
    let source_hdim = hdim(alg, budget)?;
    let twisted_hdim = hdim(&result.twisted, budget)?;
    let conf =
        if analyses.contains(&TwistAnalysis::Conf) { Some(component_fields(&conf_module(&result.twisted)?.betti(budget)?)?) } else { None };
    Ok(TwistReport { result, source_hdim, twisted_hdim, hdim_preserved: source_hdim == twisted_hdim, conf })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::susy::{build_standard, SusyKey};

    fn dims(r: &TwistResult) -> (usize, usize) {
        (r.twisted.k, r.twisted.d)
    }

    #[test]
    fn zero_twist_is_identity() {
        let a = build_standard(4, SusyKey::N(1)).unwrap();
        let g0 = derivations_deg0(&a).unwrap();
        let r = twist(&a, &g0, &vec![Rational::ZERO; 4]).unwrap();
        assert_eq!(dims(&r), (4, 4));
        assert_eq!(r.twisted.quadrics(), a.quadrics());
    }

    #[test]
    fn non_square_zero_is_rejected() {
        let a = build_standard(3, SusyKey::N(1)).unwrap();
        let g0 = derivations_deg0(&a).unwrap();
        assert!(twist(&a, &g0, &[Rational::ONE, Rational::ZERO]).is_err());
    }

    #[test]
    fn four_dimensional_minimal_holomorphic() {
        let a = build_standard(4, SusyKey::N(1)).unwrap();
        let q = named_twist(4, SusyKey::N(1), "holomorphic").unwrap();
        let r = twist(&a, &derivations_deg0(&a).unwrap(), &q).unwrap();
        assert_eq!(dims(&r), (0, 2));
        // ker γ(q,-) is the chiral half, all of it in the orbit
        assert_eq!(r.kernel.len(), 2);
        assert_eq!(r.orbit.len(), 2);
        assert_eq!(r.image.len(), 2);
    }

    #[test]
    fn three_dimensional_extended_holomorphic() {
        let a = build_standard(3, SusyKey::N(2)).unwrap();
        let q = named_twist(3, SusyKey::N(2), "holomorphic").unwrap();
        let rep = twist_pipeline(&a, &q, &[], None).unwrap();
        assert_eq!(dims(&rep.result), (0, 1));
        assert!(rep.hdim_preserved);
    }

    #[test]
    fn six_dimensional_holomorphic_is_determinantal() {
        let a = build_standard(6, SusyKey::Pair(2, 0)).unwrap();
        let q = named_twist(6, SusyKey::Pair(2, 0), "holomorphic").unwrap();
        let rep = twist_pipeline(&a, &q, &[TwistAnalysis::Conf], None).unwrap();
        assert_eq!(dims(&rep.result), (6, 3));
        assert!(determinantal_placement(&rep.result.twisted).is_some());
        let conf = rep.conf.unwrap();
        assert_eq!(conf.row(0), vec![3, 6, 3]);
        assert!(rep.hdim_preserved);
    }
}
