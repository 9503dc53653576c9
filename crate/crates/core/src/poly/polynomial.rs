use std::cmp::Ordering;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::monomial::Monomial;
use super::ring::GradedRing;
use crate::exact::Rational;

/// Sparse polynomial with terms kept in decreasing grevlex order, so equal
/// polynomials have identical representations.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: Vec<(Monomial, Rational)>,
}

fn merge_add(a: &[(Monomial, Rational)], b: &[(Monomial, Rational)], sign: &Rational) -> Vec<(Monomial, Rational)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ord = if i == a.len() {
            Ordering::Less
        } else if j == b.len() {
            Ordering::Greater
        } else {
            a[i].0.cmp_grevlex(&b[j].0)
        };
        match ord {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((b[j].0, sign * &b[j].1));
                j += 1;
            }
            Ordering::Equal => {
                let c = &a[i].1 + &(sign * &b[j].1);
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, Monomial::ONE)
    }

    pub fn monomial(c: Rational, m: Monomial) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial { terms: vec![(m, c)] }
    }

    pub fn var(i: usize) -> Self {
        Self::monomial(Rational::ONE, Monomial::var(i))
    }

    /// Collects arbitrary terms, combining duplicates and dropping zeros.
    pub fn from_terms(mut terms: Vec<(Monomial, Rational)>) -> Self {
        terms.sort_by(|a, b| b.0.cmp_grevlex(&a.0));
        let mut out: Vec<(Monomial, Rational)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 += &c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|t| !t.1.is_zero());
        Polynomial { terms: out }
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Rational)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.iter().find(|t| t.0 == *m).map_or(Rational::ZERO, |t| t.1.clone())
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        Polynomial { terms: merge_add(&self.terms, &other.terms, &Rational::ONE) }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        Polynomial { terms: merge_add(&self.terms, &other.terms, &-Rational::ONE) }
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(&-Rational::ONE)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect() }
    }

    /// Multiplication by `c * m`; preserves the term order.
    pub fn mul_term(&self, c: &Rational, m: &Monomial) -> Polynomial {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(n, x)| (n.mul(m), x * c)).collect() }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut acc = Polynomial::zero();
        for (m, c) in &other.terms {
            acc = acc.add(&self.mul_term(c, m));
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::constant(Rational::ONE);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exp(var) > 0)
            .map(|(m, c)| (m.div(&Monomial::var(var)), c * &Rational::from(m.exp(var) as i64)))
            .collect();
        Polynomial::from_terms(terms)
    }

    /// Weighted degree if homogeneous, `None` for zero or mixed polynomials.
    pub fn homogeneous_degree(&self, ring: &GradedRing) -> Option<u32> {
        let d = ring.degree(&self.terms.first()?.0);
        self.terms.iter().all(|(m, _)| ring.degree(m) == d).then_some(d)
    }

    pub fn is_homogeneous(&self, ring: &GradedRing) -> bool {
        self.is_zero() || self.homogeneous_degree(ring).is_some()
    }

    pub fn max_degree(&self, ring: &GradedRing) -> Option<u32> {
        self.terms.iter().map(|(m, _)| ring.degree(m)).max()
    }

    /// Evaluation at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Rational {
        let mut s = Rational::ZERO;
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, x) in point.iter().enumerate() {
                for _ in 0..m.exp(i) {
                    v = &v * x;
                }
            }
            s += &v;
        }
        s
    }

    /// Substitutes the linear forms `images[i]` for the variables.
    pub fn substitute(&self, images: &[Polynomial]) -> Polynomial {
        let mut acc = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(c.clone());
            for (i, img) in images.iter().enumerate() {
                for _ in 0..m.exp(i) {
                    t = t.mul(img);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    pub fn render(&self, ring: &GradedRing) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.signum() < 0;
            let a = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = render_monomial(m, ring);
            if mono.is_empty() {
                let _ = write!(s, "{a}");
            } else if a.is_one() {
                s.push_str(&mono);
            } else {
                let _ = write!(s, "{a}*{mono}");
            }
        }
        s
    }
}

pub fn render_monomial(m: &Monomial, ring: &GradedRing) -> String {
    let mut parts = Vec::new();
    for (i, name) in ring.names.iter().enumerate() {
        match m.exp(i) {
            0 => {}
            1 => parts.push(name.clone()),
            e => parts.push(format!("{name}^{e}")),
        }
    }
    parts.join("*")
}

impl std::fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let ring = GradedRing::standard(super::MAX_VARS, "x");
        write!(f, "{}", self.render(&ring))
    }
}

/// Serialized as a list of `[exponents, coefficient]` pairs.
impl Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let n = self.terms.iter().map(|(m, _)| (0..super::MAX_VARS).rev().find(|&i| m.exp(i) > 0).map_or(0, |i| i + 1)).max().unwrap_or(0);
        let v: Vec<(Vec<u32>, &Rational)> = self.terms.iter().map(|(m, c)| (m.exponents(n), c)).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v: Vec<(Vec<u32>, Rational)> = Vec::deserialize(d)?;
        Ok(Polynomial::from_terms(v.into_iter().map(|(e, c)| (Monomial::from_exponents(&e), c)).collect()))
    }
}

/// Element of a free module R^n, stored densely by component.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct ModuleElement {
    pub comps: Vec<Polynomial>,
}

impl ModuleElement {
    pub fn zero(rank: usize) -> Self {
        ModuleElement { comps: vec![Polynomial::zero(); rank] }
    }

    pub fn basis(i: usize, rank: usize) -> Self {
        let mut v = Self::zero(rank);
        v.comps[i] = Polynomial::constant(Rational::ONE);
        v
    }

    pub fn from_comps(comps: Vec<Polynomial>) -> Self {
        ModuleElement { comps }
    }

    pub fn rank(&self) -> usize {
        self.comps.len()
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|p| p.is_zero())
    }

    pub fn add(&self, other: &ModuleElement) -> ModuleElement {
        assert_eq!(self.rank(), other.rank());
        ModuleElement { comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, other: &ModuleElement) -> ModuleElement {
        assert_eq!(self.rank(), other.rank());
        ModuleElement { comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale_poly(&self, p: &Polynomial) -> ModuleElement {
        ModuleElement { comps: self.comps.iter().map(|a| a.mul(p)).collect() }
    }

    pub fn mul_term(&self, c: &Rational, m: &Monomial) -> ModuleElement {
        ModuleElement { comps: self.comps.iter().map(|a| a.mul_term(c, m)).collect() }
    }

    /// Degree in a free module whose basis vectors carry degrees `shifts`.
    pub fn homogeneous_degree(&self, ring: &GradedRing, shifts: &[i64]) -> Option<i64> {
        let mut deg = None;
        for (p, s) in self.comps.iter().zip(shifts) {
            for (m, _) in p.terms() {
                let d = ring.degree(m) as i64 + s;
                match deg {
                    None => deg = Some(d),
                    Some(e) if e != d => return None,
                    _ => {}
                }
            }
        }
        deg
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> Polynomial {
        Polynomial::var(i)
    }

    #[test]
    fn arithmetic_and_rendering() {
        let r = GradedRing::standard(2, "l");
        let p = x(0).add(&x(1)).pow(2);
        assert_eq!(p.render(&r), "l1^2 + 2*l1*l2 + l2^2");
        assert_eq!(p.sub(&p), Polynomial::zero());
        assert_eq!(p.derivative(0).render(&r), "2*l1 + 2*l2");
        assert_eq!(p.homogeneous_degree(&r), Some(2));
    }
}
