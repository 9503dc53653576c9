//! Hilbert series of monomial quotients, and through leading terms, of any
//! graded module presented by a Groebner basis.

use serde::{Deserialize, Serialize};

use super::groebner::GroebnerBasis;
use super::monomial::Monomial;

/// `t^min_degree * sum_i coeffs[i] t^i / prod_j (1 - t^{weights[j]})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertSeries {
    pub min_degree: i64,
    pub coeffs: Vec<i128>,
    pub weights: Vec<u32>,
}

fn poly_add_shifted(acc: &mut Vec<i128>, p: &[i128], shift: usize, sign: i128) {
    if acc.len() < p.len() + shift {
        acc.resize(p.len() + shift, 0);
    }
    for (i, c) in p.iter().enumerate() {
        acc[i + shift] += sign * c;
    }
}

fn trim(mut p: Vec<i128>) -> Vec<i128> {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

fn wdeg(m: &Monomial, w: &[u32]) -> usize {
    m.weighted_degree(w) as usize
}

/// Numerator of the Hilbert series of R/J over `prod (1 - t^{w_i})`.
pub fn monomial_numerator(gens: &[Monomial], weights: &[u32]) -> Vec<i128> {
    trim(numerator_rec(minimalize(gens.to_vec()), weights))
}

fn numerator_rec(gens: Vec<Monomial>, w: &[u32]) -> Vec<i128> {
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|g| g.is_one()) {
        return vec![];
    }
    // pure powers of distinct variables: product of (1 - t^deg)
    if gens.iter().all(|g| g.mask().count_ones() == 1) {
        let mut acc = vec![1i128];
        for g in &gens {
            let d = wdeg(g, w);
            let mut next = acc.clone();
            poly_add_shifted(&mut next, &acc, d, -1);
            acc = next;
        }
        return acc;
    }
    // split off generators sharing no variable with the rest
    if gens.len() > 1 {
        let first = gens[0].mask();
        if gens[1..].iter().all(|g| g.mask() & first == 0) {
            let a = numerator_rec(vec![gens[0]], w);
            let b = numerator_rec(gens[1..].to_vec(), w);
            return mul(&a, &b);
        }
    }
    // Bigatti pivot: the variable occurring in most non-pure generators
    let n = w.len();
    let mut count = vec![0usize; n];
    for g in gens.iter().filter(|g| g.mask().count_ones() > 1) {
        for (v, c) in count.iter_mut().enumerate() {
            if g.exp(v) > 0 {
                *c += 1;
            }
        }
    }
    let v = (0..n).max_by_key(|&v| (count[v], std::cmp::Reverse(v))).unwrap();
    let mut exps: Vec<u32> = gens.iter().filter(|g| g.mask().count_ones() > 1 && g.exp(v) > 0).map(|g| g.exp(v)).collect();
    exps.sort();
    let e = exps[exps.len() / 2].max(1);
    let mut pe = vec![0u32; n];
    pe[v] = e;
    let pivot = Monomial::from_exponents(&pe);
    // N(J) = N(J + p) + t^deg(p) N(J : p)
    let mut with_p = gens.clone();
    with_p.push(pivot);
    let a = numerator_rec(minimalize(with_p), w);
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|g| {
            let mut ex = g.exponents(n);
            ex[v] = ex[v].saturating_sub(e);
            Monomial::from_exponents(&ex)
        })
        .collect();
    let b = numerator_rec(minimalize(colon), w);
    let mut out = a;
    poly_add_shifted(&mut out, &b, wdeg(&pivot, w), 1);
    trim(out)
}

fn mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

impl HilbertSeries {
    /// Series of F/U where `gb` is a Groebner basis of U in the free module F.
    pub fn of_quotient(gb: &GroebnerBasis) -> Self {
        let leads = gb.leading_monomials();
        let w = &gb.ring.weights;
        let shifts = &gb.order.shifts;
        let min = shifts.iter().copied().min().unwrap_or(0);
        let mut acc: Vec<i128> = Vec::new();
        for (c, ls) in leads.iter().enumerate() {
            let num = monomial_numerator(ls, w);
            poly_add_shifted(&mut acc, &num, (shifts[c] - min) as usize, 1);
        }
        HilbertSeries { min_degree: min, coeffs: trim(acc), weights: w.clone() }.normalized()
    }

    fn normalized(mut self) -> Self {
        let lead_zeros = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if lead_zeros == self.coeffs.len() {
            return HilbertSeries { min_degree: 0, coeffs: vec![], weights: self.weights };
        }
        self.coeffs.drain(..lead_zeros);
        self.min_degree += lead_zeros as i64;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Dimension of the degree-`d` component.
    pub fn value(&self, d: i64) -> i128 {
        // expand 1 / prod (1 - t^w) up to the needed degree
        let top = d - self.min_degree;
        if top < 0 || self.coeffs.is_empty() {
            return 0;
        }
        let top = top as usize;
        let mut series = vec![0i128; top + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if i <= top {
                series[i] = *c;
            }
        }
        for &w in &self.weights {
            let w = w as usize;
            for i in w..=top {
                series[i] += series[i - w];
            }
        }
        series[top]
    }

    /// Krull dimension of the module; -1 for the zero module.
    pub fn krull_dim(&self) -> i64 {
        if self.coeffs.is_empty() {
            return -1;
        }
        let n = self.weights.len() as i64;
        let mut p = self.coeffs.clone();
        let mut order = 0;
        loop {
            let s: i128 = p.iter().sum();
            if s != 0 {
                break;
            }
            // divide by (1 - t): q_i = sum_{j <= i} p_j
            let mut q = Vec::with_capacity(p.len());
            let mut run = 0;
            for c in &p[..p.len() - 1] {
                run += c;
                q.push(run);
            }
            p = q;
            order += 1;
        }
        n - order
    }

    /// Numerator as a dense coefficient list starting at `t^0`, for
    /// nonnegative `min_degree`.
    pub fn numerator_from_zero(&self) -> Vec<i128> {
        let mut v = vec![0i128; self.min_degree.max(0) as usize];
        v.extend(self.coeffs.iter().copied());
        v
    }
}

/// Krull dimension of the quotient presented by a Groebner basis.
pub fn krull_dim(gb: &GroebnerBasis) -> i64 {
    HilbertSeries::of_quotient(gb).krull_dim()
}

/// Krull dimension of R/J for a monomial ideal J via maximal independent sets
/// of variables. Exponential; used as a cross-check on small rings.
pub fn krull_dim_independent_sets(leads: &[Monomial], nvars: usize) -> i64 {
    if leads.iter().any(|m| m.is_one()) {
        return -1;
    }
    let masks: Vec<u32> = leads.iter().map(|m| m.mask()).collect();
    let mut best = 0;
    for s in 0u64..(1u64 << nvars) {
        let s = s as u32;
        if masks.iter().all(|&m| m & !s != 0) {
            best = best.max(s.count_ones() as i64);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{buchberger, GradedRing, Polynomial};

    #[test]
    fn square_of_maximal_ideal() {
        // R/m^2 in three variables has series 1 + 3t
        let m2: Vec<Monomial> = Monomial::all_of_degree(3, 2);
        assert_eq!(monomial_numerator(&m2, &[1, 1, 1]), vec![1, 0, -6, 8, -3]);
    }

    #[test]
    fn dims_of_simple_ideals() {
        let r = GradedRing::standard(4, "x");
        let x = Polynomial::var;
        // (x1 x3, x1 x4, x2 x3, x2 x4): union of two planes
        let gens = vec![x(0).mul(&x(2)), x(0).mul(&x(3)), x(1).mul(&x(2)), x(1).mul(&x(3))];
        let gb = buchberger(&r, &gens, None).unwrap();
        assert_eq!(krull_dim(&gb), 2);
        let hs = HilbertSeries::of_quotient(&gb);
        assert_eq!(hs.value(0), 1);
        assert_eq!(hs.value(1), 4);
        assert_eq!(hs.value(2), 6);
        let unit = buchberger(&r, &[Polynomial::constant(1.into())], None).unwrap();
        assert_eq!(krull_dim(&unit), -1);
    }

    proptest::proptest! {
        #[test]
        fn krull_dim_matches_independent_sets(
            raw in proptest::collection::vec(proptest::collection::vec(0u32..3, 5), 1..6)
        ) {
            let gens: Vec<Monomial> = raw.iter().map(|e| Monomial::from_exponents(e)).collect();
            let num = monomial_numerator(&gens, &[1; 5]);
            let hs = HilbertSeries { min_degree: 0, coeffs: num, weights: vec![1; 5] };
            proptest::prop_assert_eq!(hs.krull_dim(), krull_dim_independent_sets(&gens, 5));
        }
    }
}
