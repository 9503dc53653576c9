//! Supertranslation algebras Σ(-1) ⊕ V(-2) with a symmetric bracket γ.

pub mod catalog;
pub mod clifford;
pub mod derivations;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::poly::{GradedRing, Monomial, Polynomial, MAX_VARS};

pub use catalog::{build_standard, catalog_keys, SusyKey};
pub use derivations::{check_conformal_type, conformal_report, derivations_deg0, AutomorphismAlgebra, ConformalReport, Derivation};

/// Odd space of dimension `k`, even space of dimension `d`, and a bracket
/// stored as `gamma[(a * k + b) * d + mu]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupertranslationAlgebra {
    pub name: String,
    pub k: usize,
    pub d: usize,
    gamma: Vec<Rational>,
}

/// The Jacobian `phi[mu][b] = sum_a 2 gamma^mu_{ab} l^a` and its transpose.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobianPair {
    pub phi: Vec<Vec<Polynomial>>,
    pub phi_t: Vec<Vec<Polynomial>>,
}

impl SupertranslationAlgebra {
    /// Builds an algebra from a dense tensor `gamma[a][b][mu]`.
    pub fn new(name: impl Into<String>, k: usize, d: usize, gamma: Vec<Vec<Vec<Rational>>>) -> Result<Self> {
        if gamma.len() != k || gamma.iter().any(|row| row.len() != k || row.iter().any(|v| v.len() != d)) {
            return Err(Error::Invalid(format!("gamma must have shape {k} x {k} x {d}")));
        }
        let mut flat = Vec::with_capacity(k * k * d);
        for a in 0..k {
            for b in 0..k {
                if gamma[a][b] != gamma[b][a] {
                    return Err(Error::Invalid(format!("gamma is not symmetric at ({}, {})", a + 1, b + 1)));
                }
                flat.extend(gamma[a][b].iter().cloned());
            }
        }
        Self::from_flat(name, k, d, flat)
    }

    fn from_flat(name: impl Into<String>, k: usize, d: usize, gamma: Vec<Rational>) -> Result<Self> {
        if k > MAX_VARS {
            return Err(Error::Invalid(format!("odd dimension {k} exceeds the supported maximum {MAX_VARS}")));
        }
        Ok(SupertranslationAlgebra { name: name.into(), k, d, gamma })
    }

    /// The algebra with zero bracket.
    pub fn abelian(k: usize, d: usize) -> Self {
        SupertranslationAlgebra { name: format!("abelian({k}|{d})"), k, d, gamma: vec![Rational::ZERO; k * k * d] }
    }

    /// Recovers γ from `d` quadratic forms in `k` variables, so that
    /// `q_mu = sum_{a,b} gamma^mu_{ab} l^a l^b`.
    pub fn from_quadrics(name: impl Into<String>, k: usize, quadrics: &[Polynomial]) -> Result<Self> {
        let d = quadrics.len();
        let mut gamma = vec![Rational::ZERO; k * k * d];
        let half = Rational::new(1, 2);
        for (mu, q) in quadrics.iter().enumerate() {
            for (m, c) in q.terms() {
                if m.degree() != 2 || (k < MAX_VARS && (k..MAX_VARS).any(|i| m.exp(i) > 0)) {
                    return Err(Error::Invalid(format!("quadric {} is not a quadratic form in {k} variables", mu + 1)));
                }
                let vars: Vec<usize> = (0..k).flat_map(|i| std::iter::repeat_n(i, m.exp(i) as usize)).collect();
                let (a, b) = (vars[0], vars[1]);
                if a == b {
                    gamma[(a * k + a) * d + mu] = c.clone();
                } else {
                    let h = c * &half;
                    gamma[(a * k + b) * d + mu] = h.clone();
                    gamma[(b * k + a) * d + mu] = h;
                }
            }
        }
        Self::from_flat(name, k, d, gamma)
    }

    #[inline]
    pub fn gamma(&self, a: usize, b: usize, mu: usize) -> &Rational {
        &self.gamma[(a * self.k + b) * self.d + mu]
    }

    /// γ(e_a, e_b) as a vector in V.
    pub fn bracket_basis(&self, a: usize, b: usize) -> &[Rational] {
        let s = (a * self.k + b) * self.d;
        &self.gamma[s..s + self.d]
    }

    /// γ(s, t) for arbitrary vectors.
    pub fn bracket(&self, s: &[Rational], t: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::ZERO; self.d];
        for a in 0..self.k {
            if s[a].is_zero() {
                continue;
            }
            for b in 0..self.k {
                if t[b].is_zero() {
                    continue;
                }
                let st = &s[a] * &t[b];
                for (mu, o) in out.iter_mut().enumerate() {
                    let g = self.gamma(a, b, mu);
                    if !g.is_zero() {
                        *o += &(&st * g);
                    }
                }
            }
        }
        out
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// The ring of functions on Σ, with variables l1..lk of weight one.
    pub fn ring(&self) -> GradedRing {
        GradedRing::standard(self.k, "l")
    }

    /// The quadrics `q_mu = sum_{a,b} gamma^mu_{ab} l^a l^b`, one per basis
    /// vector of V (zero quadrics included).
    pub fn quadrics(&self) -> Vec<Polynomial> {
        (0..self.d)
            .map(|mu| {
                let mut terms = Vec::new();
                for a in 0..self.k {
                    for b in 0..self.k {
                        let g = self.gamma(a, b, mu);
                        if !g.is_zero() {
                            terms.push((Monomial::var(a).mul(&Monomial::var(b)), g.clone()));
                        }
                    }
                }
                Polynomial::from_terms(terms)
            })
            .collect()
    }

    /// Nonzero quadrics, the generators of the ideal I.
    pub fn ideal(&self) -> Vec<Polynomial> {
        self.quadrics().into_iter().filter(|q| !q.is_zero()).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.k).all(|a| (0..self.k).all(|b| self.bracket_basis(a, b) == self.bracket_basis(b, a)))
    }

    pub fn jacobian(&self) -> JacobianPair {
        let two = Rational::from(2);
        let phi: Vec<Vec<Polynomial>> = (0..self.d)
            .map(|mu| {
                (0..self.k)
                    .map(|b| {
                        let terms =
                            (0..self.k).map(|a| (Monomial::var(a), &two * self.gamma(a, b, mu))).filter(|t| !t.1.is_zero()).collect();
                        Polynomial::from_terms(terms)
                    })
                    .collect()
            })
            .collect();
        let phi_t = (0..self.k).map(|b| (0..self.d).map(|mu| phi[mu][b].clone()).collect()).collect();
        JacobianPair { phi, phi_t }
    }

    /// Whether γ(q, q) = 0.
    pub fn is_square_zero(&self, q: &[Rational]) -> Result<bool> {
        if q.len() != self.k {
            return Err(Error::Invalid(format!("vector has length {} but the odd dimension is {}", q.len(), self.k)));
        }
        Ok(self.bracket(q, q).iter().all(|x| x.is_zero()))
    }

    /// Rank of γ viewed as a map Sym^2 Σ -> V.
    pub fn gamma_rank(&self) -> usize {
        let mut rows = Vec::new();
        for a in 0..self.k {
            for b in a..self.k {
                rows.push(crate::exact::dense_to_sparse(self.bracket_basis(a, b)));
            }
        }
        crate::exact::sparse_rank(&rows, self.d)
    }

    /// `d - k + dim Y`, with `dim Y` supplied by the caller.
    pub fn hdim_from_dim_y(&self, dim_y: i64) -> i64 {
        self.d as i64 - self.k as i64 + dim_y
    }
}
