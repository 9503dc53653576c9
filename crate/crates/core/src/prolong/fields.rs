//! Polynomial supervector fields on R^{d|k} preserving the odd distribution
//! spanned by D_a = ∂/∂θ^a + γ^μ_{ab} θ^b ∂/∂x^μ, counted by weight
//! (x has weight 2, θ weight 1).

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{sparse_rank, Rational, SparseVec};
use crate::susy::SupertranslationAlgebra;

const MAX_UNKNOWNS: usize = 200_000;

type Mono = (Vec<u32>, u32);
type SuperPoly = BTreeMap<Mono, Rational>;

fn add_term(p: &mut SuperPoly, m: Mono, c: Rational) {
    if c.is_zero() {
        return;
    }
    let vanished = {
        let e = p.entry(m.clone()).or_insert(Rational::ZERO);
        *e += &c;
        e.is_zero()
    };
    if vanished {
        p.remove(&m);
    }
}

fn below(s: u32, b: usize) -> u32 {
    (s & ((1u32 << b) - 1)).count_ones()
}

fn odd_sign(n: u32) -> Rational {
    if n.is_multiple_of(2) {
        Rational::ONE
    } else {
        -Rational::ONE
    }
}

/// Left derivative ∂/∂θ^a.
fn d_theta(a: usize, h: &SuperPoly) -> SuperPoly {
    let mut out = SuperPoly::new();
    for ((x, s), c) in h {
        if s >> a & 1 == 1 {
            add_term(&mut out, (x.clone(), s & !(1 << a)), &odd_sign(below(*s, a)) * c);
        }
    }
    out
}

fn d_x(mu: usize, h: &SuperPoly) -> SuperPoly {
    let mut out = SuperPoly::new();
    for ((x, s), c) in h {
        if x[mu] > 0 {
            let mut y = x.clone();
            y[mu] -= 1;
            add_term(&mut out, (y, *s), c * &Rational::from(x[mu] as i64));
        }
    }
    out
}

/// θ^b h.
fn theta_left(b: usize, h: &SuperPoly) -> SuperPoly {
    let mut out = SuperPoly::new();
    for ((x, s), c) in h {
        if s >> b & 1 == 0 {
            add_term(&mut out, (x.clone(), s | 1 << b), &odd_sign(below(*s, b)) * c);
        }
    }
    out
}

/// h θ^b.
fn theta_right(b: usize, h: &SuperPoly) -> SuperPoly {
    let mut out = SuperPoly::new();
    for ((x, s), c) in h {
        if s >> b & 1 == 0 {
            let above = (s >> (b + 1)).count_ones();
            add_term(&mut out, (x.clone(), s | 1 << b), &odd_sign(above) * c);
        }
    }
    out
}

fn add_into(acc: &mut SuperPoly, c: &Rational, h: &SuperPoly) {
    for (m, v) in h {
        add_term(acc, m.clone(), c * v);
    }
}

fn d_op(alg: &SupertranslationAlgebra, a: usize, h: &SuperPoly) -> SuperPoly {
    let mut out = d_theta(a, h);
    for mu in 0..alg.d {
        let dh = d_x(mu, h);
        if dh.is_empty() {
            continue;
        }
        for b in 0..alg.k {
            let g = alg.gamma(a, b, mu);
            if !g.is_zero() {
                add_into(&mut out, g, &theta_left(b, &dh));
            }
        }
    }
    out
}

fn exponent_vectors(n: usize, total: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in (0..=total).rev() {
        for rest in exponent_vectors(n - 1, total - first) {
            let mut v = vec![first];
            v.extend(rest);
            out.push(v);
        }
    }
    out
}

/// Monomials x^α θ^S of the given weight.
fn monomials(d: usize, k: usize, weight: i64) -> Vec<Mono> {
    let mut out = Vec::new();
    if weight < 0 {
        return out;
    }
    for s in 0u32..(1u32 << k) {
        let t = s.count_ones() as i64;
        if t > weight || (weight - t) % 2 != 0 {
            continue;
        }
        for x in exponent_vectors(d, ((weight - t) / 2) as u32) {
            out.push((x, s));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDims {
    pub cutoff: u32,
    pub by_weight: BTreeMap<i64, usize>,
    pub even: usize,
    pub odd: usize,
}

/// Dimensions, by weight, of the distribution-preserving polynomial vector
/// fields whose coefficients have x-degree at most `cutoff`. Every weight
/// from -2 to 2·cutoff - 2 is complete at this cutoff and is reported.
pub fn derivation_complex_h0(alg: &SupertranslationAlgebra, cutoff: u32) -> Result<FieldDims> {
    if cutoff < 2 {
        return Err(Error::Invalid("the coefficient cutoff must be at least 2".into()));
    }
    if alg.k > 16 {
        return Err(Error::Budget(format!("{} odd coordinates is too many for the explicit field computation", alg.k)));
    }
    let (k, d) = (alg.k, alg.d);
    let mut by_weight = BTreeMap::new();
    let (mut even, mut odd) = (0, 0);
    for m in -2..=(2 * cutoff as i64 - 2) {
        let f_monos = monomials(d, k, m + 2);
        let g_monos = monomials(d, k, m + 1);
        let n = d * f_monos.len() + k * g_monos.len();
        if n > MAX_UNKNOWNS {
            return Err(Error::Budget(format!("{n} unknown coefficients at weight {m}")));
        }
        let s = odd_sign(m.rem_euclid(2) as u32);
        let mut index: HashMap<(usize, usize, Mono), usize> = HashMap::new();
        let mut columns: Vec<SparseVec> = Vec::with_capacity(n);
        for col in 0..n {
            // the unknown is a single monomial in one component of X
            let mut f = vec![SuperPoly::new(); d];
            let mut g = vec![SuperPoly::new(); k];
            if col < d * f_monos.len() {
                f[col / f_monos.len()].insert(f_monos[col % f_monos.len()].clone(), Rational::ONE);
            } else {
                let c = col - d * f_monos.len();
                g[c / g_monos.len()].insert(g_monos[c % g_monos.len()].clone(), Rational::ONE);
            }
            let mut entries: BTreeMap<usize, Rational> = BTreeMap::new();
            for a in 0..k {
                // components of [X, D_a] along ∂θ^c and ∂x^μ
                let w: Vec<SuperPoly> = (0..k)
                    .map(|c| {
                        let mut t = SuperPoly::new();
                        add_into(&mut t, &-s.clone(), &d_op(alg, a, &g[c]));
                        t
                    })
                    .collect();
                for mu in 0..d {
                    let mut v = SuperPoly::new();
                    for b in 0..k {
                        let gm = alg.gamma(a, b, mu);
                        if !gm.is_zero() {
                            add_into(&mut v, gm, &g[b]);
                        }
                    }
                    add_into(&mut v, &-s.clone(), &d_op(alg, a, &f[mu]));
                    // rewrite ∂θ^c = D_c - γ^μ_{cb} θ^b ∂x^μ
                    for c in 0..k {
                        if w[c].is_empty() {
                            continue;
                        }
                        for b in 0..k {
                            let gm = alg.gamma(c, b, mu);
                            if !gm.is_zero() {
                                add_into(&mut v, &-gm.clone(), &theta_right(b, &w[c]));
                            }
                        }
                    }
                    for (mono, coeff) in v {
                        let next = index.len();
                        let row = *index.entry((a, mu, mono)).or_insert(next);
                        let e = entries.entry(row).or_insert(Rational::ZERO);
                        *e += &coeff;
                    }
                }
            }
            columns.push(entries.into_iter().filter(|(_, x)| !x.is_zero()).collect());
        }
        let dim = n - sparse_rank(&columns, index.len());
        by_weight.insert(m, dim);
        if m.rem_euclid(2) == 0 {
            even += dim;
        } else {
            odd += dim;
        }
    }
    Ok(FieldDims { cutoff, by_weight, even, odd })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::susy::{build_standard, SusyKey};

    #[test]
    fn three_dimensional_minimal_matches_prolongation_total() {
        let f = derivation_complex_h0(&build_standard(3, SusyKey::N(1)).unwrap(), 2).unwrap();
        assert_eq!((f.even, f.odd), (10, 4));
    }

    #[test]
    fn ordinary_vector_fields_on_a_line() {
        // x^{j+1} d/dx has weight 2j
        let f = derivation_complex_h0(&SupertranslationAlgebra::abelian(0, 1), 3).unwrap();
        let dims: Vec<usize> = f.by_weight.values().copied().collect();
        assert_eq!(dims, vec![1, 0, 1, 0, 1, 0, 1]);
    }

    #[test]
    fn contact_fields_in_one_dimension() {
        // K(1|1) has one generating function per weight
        let f = derivation_complex_h0(&build_standard(1, SusyKey::N(1)).unwrap(), 2).unwrap();
        assert!(f.by_weight.values().all(|&n| n == 1), "{f:?}");
    }

    #[test]
    fn cutoff_below_two_is_rejected() {
        assert!(derivation_complex_h0(&SupertranslationAlgebra::abelian(0, 1), 1).is_err());
    }
}
