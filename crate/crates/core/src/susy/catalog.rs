//! Standard supertranslation algebras.
//!
//! Odd variables are numbered as follows.
//!
//! * 1d N: λ_i, i < N. One quadric Σ λ_i².
//! * 2d (NL, NR): left movers first. Quadrics Σ λ_L², Σ λ_R².
//! * 3d N: λ_{α,i} at index α N + i with α ∈ {0,1}. With g the split form
//!   Σ_{p<m} (u_p v_{p+m} + u_{p+m} v_p), plus u_{2m} v_{2m} when N = 2m+1, the
//!   quadrics are g(λ_0,λ_0), g(λ_0,λ_1), g(λ_1,λ_1).
//! * 4d N: λ_{α,i} at α N + i, then μ_{β,i} at 2N + β N + i. Quadric
//!   number 2α + β is Σ_i λ_{α,i} μ_{β,i}.
//! * 6d (N,0): λ_{i,p} at 2N i + p with i < 4 and p < 2N, p and p+N paired
//!   by the symplectic form. Quadrics, for i < j in lexicographic order, are
//!   Σ_{r<N} (λ_{i,r} λ_{j,r+N} - λ_{i,r+N} λ_{j,r}).
//! * 10d (1,0): even subsets of {0..4} in increasing bitmask order.
//! * 10d (2,0): two copies of the above; quadric μ is 2 γ^μ(λ, λ').
//! * 11d N=1: all 32 subsets.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::clifford::{even_spinors, spinor_bracket, FOCK_DIM};
use super::SupertranslationAlgebra;
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::poly::{Polynomial, MAX_VARS};

/// Amount of supersymmetry: a single count or a chiral pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SusyKey {
    N(u32),
    Pair(u32, u32),
}

impl fmt::Display for SusyKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SusyKey::N(n) => write!(f, "N={n}"),
            SusyKey::Pair(a, b) => write!(f, "N=({a},{b})"),
        }
    }
}

impl FromStr for SusyKey {
    type Err = Error;

    /// Accepts `N=2`, `2`, `N=(1,0)` and `(1,0)`.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let t = t.strip_prefix("N=").or_else(|| t.strip_prefix("n=")).unwrap_or(&t);
        let bad = || Error::Invalid(format!("cannot parse supersymmetry '{s}'"));
        if let Some(inner) = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            let (a, b) = inner.split_once(',').ok_or_else(bad)?;
            Ok(SusyKey::Pair(a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?))
        } else {
            Ok(SusyKey::N(t.parse().map_err(|_| bad())?))
        }
    }
}

/// Representative keys of every family in the catalog.
pub fn catalog_keys() -> Vec<(u32, SusyKey)> {
    use SusyKey::*;
    vec![
        (1, N(1)),
        (1, N(2)),
        (1, N(3)),
        (2, Pair(1, 1)),
        (2, Pair(2, 2)),
        (3, N(1)),
        (3, N(2)),
        (4, N(1)),
        (4, N(2)),
        (6, Pair(1, 0)),
        (6, Pair(2, 0)),
        (10, Pair(1, 0)),
        (10, Pair(2, 0)),
        (11, N(1)),
    ]
}

fn unsupported(dim: u32, key: SusyKey) -> Error {
    Error::Invalid(format!("no standard algebra for {dim}d {key}"))
}

fn check_k(dim: u32, key: SusyKey, k: usize) -> Result<()> {
    if k == 0 || k > MAX_VARS {
        return Err(Error::Invalid(format!("{dim}d {key} needs {k} odd variables; between 1 and {MAX_VARS} are supported")));
    }
    Ok(())
}

fn x(i: usize) -> Polynomial {
    Polynomial::var(i)
}

fn sum(ps: impl IntoIterator<Item = Polynomial>) -> Polynomial {
    ps.into_iter().fold(Polynomial::zero(), |a, p| a.add(&p))
}

/// Split form on C^n evaluated on two vectors of variables.
fn split_form(u: &[usize], v: &[usize]) -> Polynomial {
    let n = u.len();
    let m = n / 2;
    let mut out = sum((0..m).map(|p| x(u[p]).mul(&x(v[p + m])).add(&x(u[p + m]).mul(&x(v[p])))));
    if n % 2 == 1 {
        out = out.add(&x(u[n - 1]).mul(&x(v[n - 1])));
    }
    out
}

pub fn build_standard(dim: u32, key: SusyKey) -> Result<SupertranslationAlgebra> {
    let name = format!("{dim}d {key}");
    match (dim, key) {
        (1, SusyKey::N(n)) => {
            let n = n as usize;
            check_k(dim, key, n)?;
            let q = sum((0..n).map(|i| x(i).mul(&x(i))));
            SupertranslationAlgebra::from_quadrics(name, n, &[q])
        }
        (2, SusyKey::Pair(l, r)) => {
            let (l, r) = (l as usize, r as usize);
            check_k(dim, key, l + r)?;
            let ql = sum((0..l).map(|i| x(i).mul(&x(i))));
            let qr = sum((l..l + r).map(|i| x(i).mul(&x(i))));
            SupertranslationAlgebra::from_quadrics(name, l + r, &[ql, qr])
        }
        (3, SusyKey::N(n)) => {
            let n = n as usize;
            check_k(dim, key, 2 * n)?;
            let l0: Vec<usize> = (0..n).collect();
            let l1: Vec<usize> = (n..2 * n).collect();
            let qs = [split_form(&l0, &l0), split_form(&l0, &l1), split_form(&l1, &l1)];
            SupertranslationAlgebra::from_quadrics(name, 2 * n, &qs)
        }
        (4, SusyKey::N(n)) => {
            let n = n as usize;
            check_k(dim, key, 4 * n)?;
            let lam = |a: usize, i: usize| a * n + i;
            let mu = |b: usize, i: usize| 2 * n + b * n + i;
            let qs: Vec<Polynomial> = (0..2)
                .flat_map(|a| (0..2).map(move |b| (a, b)))
                .map(|(a, b)| sum((0..n).map(|i| x(lam(a, i)).mul(&x(mu(b, i))))))
                .collect();
            SupertranslationAlgebra::from_quadrics(name, 4 * n, &qs)
        }
        (6, SusyKey::Pair(n, 0)) if n > 0 => {
            let n = n as usize;
            check_k(dim, key, 8 * n)?;
            let v = |i: usize, p: usize| 2 * n * i + p;
            let mut qs = Vec::new();
            for i in 0..4 {
                for j in i + 1..4 {
                    qs.push(sum((0..n).map(|r| x(v(i, r)).mul(&x(v(j, r + n))).sub(&x(v(i, r + n)).mul(&x(v(j, r)))))));
                }
            }
            SupertranslationAlgebra::from_quadrics(name, 8 * n, &qs)
        }
        (10, SusyKey::Pair(1, 0)) => ten_dimensional(name),
        (10, SusyKey::Pair(2, 0)) => {
            let base = ten_dimensional(String::new())?;
            let k = base.k;
            let two = Rational::from(2);
            let qs: Vec<Polynomial> = (0..base.d)
                .map(|m| {
                    let mut terms = Vec::new();
                    for a in 0..k {
                        for b in 0..k {
                            let g = base.gamma(a, b, m);
                            if !g.is_zero() {
                                terms.push((x(a).mul(&x(k + b)), &two * g));
                            }
                        }
                    }
                    sum(terms.into_iter().map(|(p, c)| p.scale(&c)))
                })
                .collect();
            SupertranslationAlgebra::from_quadrics(name, 2 * k, &qs)
        }
        (11, SusyKey::N(1)) => {
            let all: Vec<usize> = (0..FOCK_DIM).collect();
            from_slices(name, &spinor_bracket(true, &all)?)
        }
        _ => Err(unsupported(dim, key)),
    }
}

fn ten_dimensional(name: String) -> Result<SupertranslationAlgebra> {
    from_slices(name, &spinor_bracket(false, &even_spinors())?)
}

fn from_slices(name: String, slices: &[Vec<Vec<Rational>>]) -> Result<SupertranslationAlgebra> {
    let d = slices.len();
    let k = slices[0].len();
    let gamma = (0..k).map(|a| (0..k).map(|b| (0..d).map(|m| slices[m][a][b].clone()).collect()).collect()).collect();
    SupertranslationAlgebra::new(name, k, d, gamma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{buchberger, krull_dim};

    fn alg(dim: u32, key: &str) -> SupertranslationAlgebra {
        build_standard(dim, key.parse().unwrap()).unwrap()
    }

    #[test]
    fn parses_keys() {
        assert_eq!("N=2".parse::<SusyKey>().unwrap(), SusyKey::N(2));
        assert_eq!("(1, 0)".parse::<SusyKey>().unwrap(), SusyKey::Pair(1, 0));
        assert_eq!("N=(2,0)".parse::<SusyKey>().unwrap(), SusyKey::Pair(2, 0));
        assert!("N=x".parse::<SusyKey>().is_err());
        assert_eq!(SusyKey::Pair(2, 0).to_string(), "N=(2,0)");
    }

    #[test]
    fn one_dimensional_quadric() {
        let a = alg(1, "N=3");
        let q = sum((0..3).map(|i| x(i).mul(&x(i))));
        assert_eq!(a.quadrics(), vec![q]);
    }

    #[test]
    fn three_dimensional_minimal() {
        let a = alg(3, "N=1");
        assert_eq!(a.quadrics(), vec![x(0).mul(&x(0)), x(0).mul(&x(1)), x(1).mul(&x(1))]);
    }

    #[test]
    fn three_dimensional_quadrics_are_g_of_spinors() {
        // N = 3: g(u,v) = u0 v1 + u1 v0 + u2 v2
        let a = alg(3, "N=3");
        let q = a.quadrics();
        let g = |u: [usize; 3], v: [usize; 3]| x(u[0]).mul(&x(v[1])).add(&x(u[1]).mul(&x(v[0]))).add(&x(u[2]).mul(&x(v[2])));
        assert_eq!(q[0], g([0, 1, 2], [0, 1, 2]));
        assert_eq!(q[1], g([0, 1, 2], [3, 4, 5]));
        assert_eq!(q[2], g([3, 4, 5], [3, 4, 5]));
    }

    #[test]
    fn four_dimensional_minimal_is_chiral_times_antichiral() {
        let a = alg(4, "N=1");
        let q = a.quadrics();
        assert_eq!(q.len(), 4);
        for p in &q {
            assert_eq!(p.terms().len(), 1);
            let m = p.terms()[0].0;
            assert!((0..2).any(|i| m.exp(i) == 1) && (2..4).any(|i| m.exp(i) == 1));
        }
        let gb = buchberger(&a.ring(), &q, None).unwrap();
        assert_eq!(krull_dim(&gb), 2);
    }

    #[test]
    fn catalog_is_symmetric_with_d_quadrics() {
        for (dim, key) in catalog_keys() {
            if dim >= 10 {
                continue;
            }
            let a = build_standard(dim, key).unwrap();
            assert!(a.is_symmetric(), "{}", a.name);
            assert_eq!(a.quadrics().len(), a.d, "{}", a.name);
        }
    }

    #[test]
    fn unsupported_keys_are_rejected() {
        assert!(build_standard(5, SusyKey::N(1)).is_err());
        assert!(build_standard(6, SusyKey::Pair(1, 1)).is_err());
        assert!(build_standard(4, SusyKey::N(9)).is_err());
    }

    #[test]
    fn ten_dimensional_pure_spinors() {
        let a = alg(10, "(1,0)");
        assert_eq!((a.k, a.d), (16, 10));
        assert!(a.is_symmetric());
        assert_eq!(a.gamma_rank(), 10);
        assert!(a.quadrics().iter().all(|q| !q.is_zero()));
        let gb = buchberger(&a.ring(), &a.ideal(), None).unwrap();
        assert_eq!(krull_dim(&gb), 11);
    }

    #[test]
    fn eleven_dimensional_shape() {
        let a = alg(11, "N=1");
        assert_eq!((a.k, a.d), (32, 11));
        assert!(a.is_symmetric());
        assert_eq!(a.gamma_rank(), 11);
    }
}
