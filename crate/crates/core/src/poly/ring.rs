use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::monomial::{Monomial, MAX_VARS};
use crate::error::{Error, Result};

/// Polynomial ring Q[x_1..x_n] with positive integer variable weights.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GradedRing {
    pub weights: Vec<u32>,
    pub names: Vec<String>,
}

impl GradedRing {
    pub fn new(names: Vec<String>, weights: Vec<u32>) -> Result<Self> {
        if names.len() != weights.len() {
            return Err(Error::Invalid("ring names and weights differ in length".into()));
        }
        if names.len() > MAX_VARS {
            return Err(Error::Invalid(format!("at most {MAX_VARS} variables are supported, got {}", names.len())));
        }
        if weights.contains(&0) {
            return Err(Error::Invalid("variable weights must be positive".into()));
        }
        Ok(GradedRing { weights, names })
    }

    /// Standard graded ring with variables named `prefix1..prefixN`.
    pub fn standard(n: usize, prefix: &str) -> Self {
        assert!(n <= MAX_VARS, "at most {MAX_VARS} variables are supported");
        GradedRing { weights: vec![1; n], names: (1..=n).map(|i| format!("{prefix}{i}")).collect() }
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    pub fn is_standard(&self) -> bool {
        self.weights.iter().all(|&w| w == 1)
    }

    pub fn degree(&self, m: &Monomial) -> u32 {
        if self.is_standard() {
            m.degree()
        } else {
            m.weighted_degree(&self.weights)
        }
    }

    /// Monomials of weighted degree `d`, in a fixed deterministic order.
    pub fn monomials_of_degree(&self, d: u32) -> Vec<Monomial> {
        if self.is_standard() {
            return Monomial::all_of_degree(self.nvars(), d);
        }
        let n = self.nvars();
        let mut out = Vec::new();
        let mut e = vec![0u32; n];
        fn rec(ring: &GradedRing, i: usize, left: u32, e: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if i == e.len() {
                if left == 0 {
                    out.push(Monomial::from_exponents(e));
                }
                return;
            }
            let w = ring.weights[i];
            for x in (0..=left / w).rev() {
                e[i] = x;
                rec(ring, i + 1, left - x * w, e, out);
            }
            e[i] = 0;
        }
        rec(self, 0, d, &mut e, &mut out);
        out
    }
}

/// Term order on monomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonomialOrder {
    Grevlex,
    Lex,
    WeightedGrevlex(Vec<u32>),
}

impl MonomialOrder {
    /// Degree-compatible default for a ring: grevlex, weighted if needed.
    pub fn for_ring(ring: &GradedRing) -> Self {
        if ring.is_standard() {
            MonomialOrder::Grevlex
        } else {
            MonomialOrder::WeightedGrevlex(ring.weights.clone())
        }
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Grevlex => a.cmp_grevlex(b),
            MonomialOrder::Lex => a.cmp_lex(b),
            MonomialOrder::WeightedGrevlex(w) => a.cmp_weighted_grevlex(b, w),
        }
    }

    pub fn name(&self) -> String {
        match self {
            MonomialOrder::Grevlex => "grevlex".into(),
            MonomialOrder::Lex => "lex".into(),
            MonomialOrder::WeightedGrevlex(w) => {
                format!("wgrevlex{:?}", w)
            }
        }
    }
}

/// How module terms `m e_i` are compared.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ModuleOrderKind {
    /// Degree (including the shift of `e_i`), then monomial, then position.
    TermOverPosition,
    /// Position first, then monomial.
    PositionOverTerm,
    /// Compares `m * lead_i` in an ambient order, ties broken by position.
    Schreyer(Vec<(Monomial, usize)>, Box<ModuleOrder>),
}

/// Order on the terms of a graded free module with generator degrees `shifts`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModuleOrder {
    pub mono: MonomialOrder,
    pub weights: Vec<u32>,
    pub shifts: Vec<i64>,
    pub kind: ModuleOrderKind,
}

impl ModuleOrder {
    pub fn top(ring: &GradedRing, shifts: Vec<i64>) -> Self {
        ModuleOrder { mono: MonomialOrder::for_ring(ring), weights: ring.weights.clone(), shifts, kind: ModuleOrderKind::TermOverPosition }
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    #[inline]
    pub fn term_degree(&self, m: &Monomial, comp: usize) -> i64 {
        let d = match &self.mono {
            MonomialOrder::WeightedGrevlex(w) => m.weighted_degree(w),
            _ => {
                if self.weights.iter().all(|&w| w == 1) {
                    m.degree()
                } else {
                    m.weighted_degree(&self.weights)
                }
            }
        };
        d as i64 + self.shifts[comp]
    }

    #[inline]
    pub fn cmp(&self, a: (&Monomial, usize), b: (&Monomial, usize)) -> Ordering {
        match &self.kind {
            ModuleOrderKind::TermOverPosition => {
                let da = self.term_degree(a.0, a.1);
                let db = self.term_degree(b.0, b.1);
                da.cmp(&db).then_with(|| self.mono.cmp(a.0, b.0)).then_with(|| b.1.cmp(&a.1))
            }
            ModuleOrderKind::PositionOverTerm => b.1.cmp(&a.1).then_with(|| self.mono.cmp(a.0, b.0)),
            ModuleOrderKind::Schreyer(leads, prev) => {
                let (ma, ca) = &leads[a.1];
                let (mb, cb) = &leads[b.1];
                let ta = a.0.mul(ma);
                let tb = b.0.mul(mb);
                prev.cmp((&ta, *ca), (&tb, *cb)).then_with(|| a.1.cmp(&b.1))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weighted_monomials() {
        let r = GradedRing::new(vec!["a".into(), "b".into()], vec![1, 2]).unwrap();
        let ms = r.monomials_of_degree(4);
        assert_eq!(ms.len(), 3);
        assert!(ms.iter().all(|m| r.degree(m) == 4));
    }

    #[test]
    fn top_order_respects_shifts() {
        let r = GradedRing::standard(2, "x");
        let o = ModuleOrder::top(&r, vec![0, 1]);
        let x = Monomial::var(0);
        // x e_0 has degree 1, 1 e_1 has degree 1; tie broken by monomial
        assert_eq!(o.cmp((&x, 0), (&Monomial::ONE, 1)), Ordering::Greater);
        let xx = x.mul(&x);
        assert_eq!(o.cmp((&xx, 0), (&x, 1)), Ordering::Greater);
    }
}
