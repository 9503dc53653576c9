//! Maximal transitive prolongation of Σ(-1) ⊕ V(-2), solved degree by degree.

mod fields;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{sparse_transpose, Rational, SparseEchelon, SparseVec};
use crate::susy::{AutomorphismAlgebra, SupertranslationAlgebra};

pub use fields::{derivation_complex_h0, FieldDims};

pub const DEFAULT_CAP: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Terminated,
    Capped,
}

/// Basis element of the negative part: odd e_a or even f_mu.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Neg {
    Odd(usize),
    Even(usize),
}

impl Neg {
    fn degree(self) -> i64 {
        match self {
            Neg::Odd(_) => -1,
            Neg::Even(_) => -2,
        }
    }
}

fn parity(deg: i64) -> i64 {
    deg.rem_euclid(2)
}

fn sign(p: i64) -> Rational {
    if p % 2 == 0 {
        Rational::ONE
    } else {
        -Rational::ONE
    }
}

fn add_scaled(acc: &mut [Rational], c: &Rational, v: &[Rational]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += &(c * x);
        }
    }
}

/// A degree-m layer, m ≥ 0. Each basis element is stored by its values on
/// the negative part: first φ(e_a) ∈ g_{m-1} for every a, then φ(f_mu) ∈
/// g_{m-2} for every mu.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct Layer {
    basis: Vec<Vec<Rational>>,
    free: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProlongationResult {
    pub algebra: String,
    pub k: usize,
    pub d: usize,
    pub cap: usize,
    pub status: Status,
    gamma: Vec<Vec<Vec<Rational>>>,
    layers: Vec<Layer>,
}

impl ProlongationResult {
    /// Highest computed degree.
    pub fn top(&self) -> i64 {
        self.layers.len() as i64 - 1
    }

    pub fn dim(&self, deg: i64) -> usize {
        match deg {
            -2 => self.d,
            -1 => self.k,
            m if m >= 0 && (m as usize) < self.layers.len() => self.layers[m as usize].basis.len(),
            _ => 0,
        }
    }

    /// Dimensions in degrees -2 up to the highest computed degree.
    pub fn dims(&self) -> BTreeMap<i64, usize> {
        (-2..=self.top()).map(|m| (m, self.dim(m))).collect()
    }

    /// True when the degree is odd.
    pub fn is_odd(&self, deg: i64) -> bool {
        parity(deg) == 1
    }

    /// (even, odd) totals over the computed degrees.
    pub fn totals(&self) -> (usize, usize) {
        let mut t = (0, 0);
        for (m, n) in self.dims() {
            if self.is_odd(m) {
                t.1 += n;
            } else {
                t.0 += n;
            }
        }
        t
    }

    /// Values of the degree-m element `u` on the negative basis element `x`.
    fn eval(&self, m: i64, u: &[Rational], x: Neg) -> Vec<Rational> {
        let target = m + x.degree();
        let n = self.dim(target);
        if target < -2 {
            return Vec::new();
        }
        let layer = &self.layers[m as usize];
        let (off, len) = self.block(m, x);
        let mut out = vec![Rational::ZERO; n];
        for (beta, c) in u.iter().enumerate() {
            add_scaled(&mut out, c, &layer.basis[beta][off..off + len]);
        }
        out
    }

    fn block(&self, m: i64, x: Neg) -> (usize, usize) {
        let a_len = self.dim(m - 1);
        let f_len = if m - 2 >= -2 { self.dim(m - 2) } else { 0 };
        match x {
            Neg::Odd(a) => (a * a_len, a_len),
            Neg::Even(mu) => (self.k * a_len + mu * f_len, f_len),
        }
    }

    fn negatives(&self) -> Vec<Neg> {
        (0..self.k).map(Neg::Odd).chain((0..self.d).map(Neg::Even)).collect()
    }

    fn unit(&self, x: Neg) -> (i64, Vec<Rational>) {
        let (deg, n, i) = match x {
            Neg::Odd(a) => (-1, self.k, a),
            Neg::Even(mu) => (-2, self.d, mu),
        };
        let mut v = vec![Rational::ZERO; n];
        v[i] = Rational::ONE;
        (deg, v)
    }

    /// The bracket of homogeneous elements given by coordinates in degrees
    /// `i` and `j`. The result lives in degree `i + j`; it is empty below -2.
    pub fn bracket(&self, i: i64, u: &[Rational], j: i64, v: &[Rational]) -> Result<Vec<Rational>> {
        let m = i + j;
        if m < -2 {
            return Ok(Vec::new());
        }
        if m > self.top() {
            return Err(Error::Invalid(format!("degree {m} lies beyond the computed range")));
        }
        if i < 0 && j < 0 {
            let mut out = vec![Rational::ZERO; self.dim(m)];
            if i == -1 && j == -1 {
                for a in 0..self.k {
                    for b in 0..self.k {
                        let c = &u[a] * &v[b];
                        if !c.is_zero() {
                            add_scaled(&mut out, &c, &self.gamma[a][b]);
                        }
                    }
                }
            }
            return Ok(out);
        }
        if i < 0 {
            let s = -sign(parity(i) * parity(j));
            return Ok(self.bracket(j, v, i, u)?.iter().map(|x| &s * x).collect());
        }
        if j < 0 {
            let mut out = vec![Rational::ZERO; self.dim(m)];
            for (idx, c) in v.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let x = if j == -1 { Neg::Odd(idx) } else { Neg::Even(idx) };
                add_scaled(&mut out, c, &self.eval(i, u, x));
            }
            return Ok(out);
        }
        // [[u,v],x] = [u,[v,x]] - (-1)^{|u||v|} [v,[u,x]]
        let s = sign(parity(i) * parity(j));
        let mut values = Vec::new();
        for x in self.negatives() {
            let (dx, ex) = self.unit(x);
            let vx = self.bracket(j, v, dx, &ex)?;
            let ux = self.bracket(i, u, dx, &ex)?;
            let mut w = self.bracket(i, u, j + dx, &vx)?;
            let t = self.bracket(j, v, i + dx, &ux)?;
            add_scaled(&mut w, &-s.clone(), &t);
            values.extend(w);
        }
        self.coordinates(m, &values)
    }

    fn coordinates(&self, m: i64, values: &[Rational]) -> Result<Vec<Rational>> {
        let layer = &self.layers[m as usize];
        let coords: Vec<Rational> = layer.free.iter().map(|&c| values[c].clone()).collect();
        let mut back = vec![Rational::ZERO; values.len()];
        for (c, b) in coords.iter().zip(&layer.basis) {
            add_scaled(&mut back, c, b);
        }
        if back != values {
            return Err(Error::Invalid(format!("bracket does not lie in the computed degree-{m} layer")));
        }
        Ok(coords)
    }

    /// Super Jacobi identity on all basis triples whose degrees stay in the
    /// computed range.
    pub fn check_jacobi(&self) -> Result<bool> {
        let top = self.top();
        let basis = |deg: i64| -> Vec<Vec<Rational>> {
            let n = self.dim(deg);
            (0..n)
                .map(|i| {
                    let mut e = vec![Rational::ZERO; n];
                    e[i] = Rational::ONE;
                    e
                })
                .collect()
        };
        for i in -2..=top {
            for j in i..=top {
                for l in j..=top {
                    if i + j + l > top || i + j + l < -2 {
                        continue;
                    }
                    for u in basis(i) {
                        for v in basis(j) {
                            for w in basis(l) {
                                // [u,[v,w]] = [[u,v],w] + (-1)^{|u||v|} [v,[u,w]]
                                let lhs = self.bracket(i, &u, j + l, &self.bracket(j, &v, l, &w)?)?;
                                let mut rhs = self.bracket(i + j, &self.bracket(i, &u, j, &v)?, l, &w)?;
                                let t = self.bracket(j, &v, i + l, &self.bracket(i, &u, l, &w)?)?;
                                add_scaled(&mut rhs, &sign(parity(i) * parity(j)), &t);
                                if lhs != rhs {
                                    return Ok(false);
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(true)
    }
}

/// Solves for degree `m` given all lower layers.
fn solve_layer(p: &ProlongationResult, m: i64) -> Result<Layer> {
    let (k, d) = (p.k, p.d);
    let a_len = p.dim(m - 1);
    let f_len = if m - 2 >= -2 { p.dim(m - 2) } else { 0 };
    let n = k * a_len + d * f_len;
    let sm = sign(parity(m));

    let value = |phi: &[Rational], x: Neg| -> Vec<Rational> {
        match x {
            Neg::Odd(a) => phi[a * a_len..(a + 1) * a_len].to_vec(),
            Neg::Even(mu) => phi[k * a_len + mu * f_len..k * a_len + (mu + 1) * f_len].to_vec(),
        }
    };
    let residual = |phi: &[Rational]| -> Result<Vec<Rational>> {
        let mut out = Vec::new();
        let e = |i: usize, n: usize| {
            let mut v = vec![Rational::ZERO; n];
            v[i] = Rational::ONE;
            v
        };
        // odd-odd: φ(γ(e_a,e_b)) = [φ e_a, e_b] + (-1)^{|φ|} [e_a, φ e_b]
        for a in 0..k {
            for b in a..k {
                let mut r = vec![Rational::ZERO; f_len];
                for mu in 0..d {
                    let g = &p.gamma[a][b][mu];
                    if !g.is_zero() {
                        add_scaled(&mut r, g, &value(phi, Neg::Even(mu)));
                    }
                }
                let t1 = p.bracket(m - 1, &value(phi, Neg::Odd(a)), -1, &e(b, k))?;
                let t2 = p.bracket(-1, &e(a, k), m - 1, &value(phi, Neg::Odd(b)))?;
                add_scaled(&mut r, &-Rational::ONE, &t1);
                add_scaled(&mut r, &-sm.clone(), &t2);
                out.extend(r);
            }
        }
        // odd-even: 0 = [φ e_a, f_mu] + (-1)^{|φ|} [e_a, φ f_mu]
        if m - 3 >= -2 {
            for a in 0..k {
                for mu in 0..d {
                    let mut r = p.bracket(m - 1, &value(phi, Neg::Odd(a)), -2, &e(mu, d))?;
                    let t = p.bracket(-1, &e(a, k), m - 2, &value(phi, Neg::Even(mu)))?;
                    add_scaled(&mut r, &sm, &t);
                    out.extend(r);
                }
            }
        }
        // even-even: 0 = [φ f_mu, f_nu] + [f_mu, φ f_nu]
        if m - 4 >= -2 {
            for mu in 0..d {
                for nu in mu..d {
                    let mut r = p.bracket(m - 2, &value(phi, Neg::Even(mu)), -2, &e(nu, d))?;
                    let t = p.bracket(-2, &e(mu, d), m - 2, &value(phi, Neg::Even(nu)))?;
                    add_scaled(&mut r, &Rational::ONE, &t);
                    out.extend(r);
                }
            }
        }
        Ok(out)
    };

    let mut columns: Vec<SparseVec> = Vec::with_capacity(n);
    let mut neq = 0;
    for c in 0..n {
        let mut phi = vec![Rational::ZERO; n];
        phi[c] = Rational::ONE;
        let r = residual(&phi)?;
        neq = r.len();
        columns.push(r.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect());
    }
    let rows = sparse_transpose(&columns, neq);
    let mut ech = SparseEchelon::new(n);
    for r in &rows {
        ech.insert(r);
    }
    let free: Vec<usize> = (0..n).filter(|&c| !ech.is_pivot(c)).collect();
    let basis = ech
        .kernel()
        .into_iter()
        .map(|v| {
            let mut dense = vec![Rational::ZERO; n];
            for (c, x) in v {
                dense[c] = x;
            }
            dense
        })
        .collect();
    Ok(Layer { basis, free })
}

/// Tanaka prolongation up to degree `cap`, stopping early once two
/// consecutive positive degrees vanish.
pub fn tanaka_prolongation(alg: &SupertranslationAlgebra, g0: &AutomorphismAlgebra, cap: usize) -> Result<ProlongationResult> {
    if cap < 1 {
        return Err(Error::Invalid("the prolongation cap must be at least 1".into()));
    }
    let gamma = (0..alg.k).map(|a| (0..alg.k).map(|b| alg.bracket_basis(a, b).to_vec()).collect()).collect();
    let mut p =
        ProlongationResult { algebra: alg.name.clone(), k: alg.k, d: alg.d, cap, status: Status::Capped, gamma, layers: Vec::new() };
    for m in 0..=cap as i64 {
        let layer = solve_layer(&p, m)?;
        p.layers.push(layer);
        if m == 0 && p.dim(0) != g0.dim() {
            return Err(Error::Invalid(format!(
                "internal inconsistency: degree-zero layer has dimension {} but 𝔤₀ has {}",
                p.dim(0),
                g0.dim()
            )));
        }
        if m >= 2 && p.dim(m) == 0 && p.dim(m - 1) == 0 {
            p.status = Status::Terminated;
            break;
        }
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::susy::{build_standard, derivations_deg0, SusyKey};

    fn prolong(alg: &SupertranslationAlgebra, cap: usize) -> ProlongationResult {
        tanaka_prolongation(alg, &derivations_deg0(alg).unwrap(), cap).unwrap()
    }

    #[test]
    fn three_dimensional_minimal() {
        let p = prolong(&build_standard(3, SusyKey::N(1)).unwrap(), 6);
        assert_eq!(p.status, Status::Terminated);
        let dims: Vec<usize> = (-2..=2).map(|m| p.dim(m)).collect();
        assert_eq!(dims, vec![3, 2, 4, 2, 3]);
        assert_eq!(p.dim(3), 0);
        assert_eq!(p.totals(), (10, 4));
        assert!(p.check_jacobi().unwrap());
    }

    #[test]
    fn one_dimensional_never_terminates() {
        let a = build_standard(1, SusyKey::N(1)).unwrap();
        for cap in 1..=6 {
            let p = prolong(&a, cap);
            assert_eq!(p.status, Status::Capped);
            assert!((1..=cap as i64).all(|m| p.dim(m) == 1));
        }
    }

    #[test]
    fn purely_even_line() {
        let a = SupertranslationAlgebra::abelian(0, 1);
        let p = prolong(&a, 3);
        assert_eq!(p.status, Status::Capped);
        assert_eq!((0..=3).map(|m| p.dim(m)).collect::<Vec<_>>(), vec![1, 0, 1, 0]);
    }

    #[test]
    fn four_dimensional_minimal() {
        let a = build_standard(4, SusyKey::N(1)).unwrap();
        let p = prolong(&a, 4);
        assert_eq!(p.status, Status::Terminated);
        assert_eq!(p.totals(), (16, 8));
        assert!(p.check_jacobi().unwrap());
        let f = derivation_complex_h0(&a, 2).unwrap();
        let by_degree: BTreeMap<i64, usize> = (-2..=2).map(|m| (m, p.dim(m))).collect();
        assert_eq!(f.by_weight, by_degree);
    }

    #[test]
    fn eleven_dimensional_is_generic() {
        let a = build_standard(11, SusyKey::N(1)).unwrap();
        let p = prolong(&a, 2);
        assert_eq!(p.status, Status::Terminated);
        assert_eq!(p.dim(1), 0);
        assert_eq!(p.totals(), (67, 32));
    }

    #[test]
    fn cap_must_be_positive() {
        let a = build_standard(3, SusyKey::N(1)).unwrap();
        assert!(tanaka_prolongation(&a, &derivations_deg0(&a).unwrap(), 0).is_err());
    }
}
