use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

/// Largest number of variables a [`Monomial`] can carry.
pub const MAX_VARS: usize = 32;

/// Exponent vector stored inline, with cached total degree and support mask.
#[derive(Clone, Copy)]
pub struct Monomial {
    exps: [u8; MAX_VARS],
    deg: u16,
    mask: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { exps: [0; MAX_VARS], deg: 0, mask: 0 };

    pub fn from_exponents(e: &[u32]) -> Self {
        assert!(e.len() <= MAX_VARS, "at most {MAX_VARS} variables are supported");
        let mut m = Monomial::ONE;
        for (i, &x) in e.iter().enumerate() {
            assert!(x <= u8::MAX as u32, "exponent overflow");
            m.exps[i] = x as u8;
            m.deg += x as u16;
            if x > 0 {
                m.mask |= 1 << i;
            }
        }
        m
    }

    pub fn var(i: usize) -> Self {
        let mut m = Monomial::ONE;
        m.exps[i] = 1;
        m.deg = 1;
        m.mask = 1 << i;
        m
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn exponents(&self, n: usize) -> Vec<u32> {
        self.exps[..n].iter().map(|&x| x as u32).collect()
    }

    /// Standard (unweighted) total degree.
    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg as u32
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u32 {
        if self.mask == 0 {
            return 0;
        }
        weights.iter().enumerate().map(|(i, w)| w * self.exps[i] as u32).sum()
    }

    #[inline]
    pub fn mask(&self) -> u32 {
        self.mask
    }

    pub fn is_one(&self) -> bool {
        self.mask == 0
    }

    /// Does `self` divide `other`?
    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        if self.mask & !other.mask != 0 || self.deg > other.deg {
            return false;
        }
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        for i in 0..MAX_VARS {
            let s = self.exps[i] as u16 + other.exps[i] as u16;
            assert!(s <= u8::MAX as u16, "exponent overflow");
            m.exps[i] = s as u8;
        }
        m.deg = self.deg + other.deg;
        m.mask = self.mask | other.mask;
        m
    }

    /// `self / other`, assuming divisibility.
    #[inline]
    pub fn div(&self, other: &Monomial) -> Monomial {
        debug_assert!(other.divides(self));
        let mut m = *self;
        let mut mask = 0;
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i] - other.exps[i];
            if m.exps[i] > 0 {
                mask |= 1 << i;
            }
        }
        m.deg = self.deg - other.deg;
        m.mask = mask;
        m
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        let mut deg = 0;
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i].max(other.exps[i]);
            deg += m.exps[i] as u16;
        }
        m.deg = deg;
        m.mask = self.mask | other.mask;
        m
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut m = *self;
        let mut deg = 0;
        let mut mask = 0;
        for i in 0..MAX_VARS {
            m.exps[i] = self.exps[i].min(other.exps[i]);
            deg += m.exps[i] as u16;
            if m.exps[i] > 0 {
                mask |= 1 << i;
            }
        }
        m.deg = deg;
        m.mask = mask;
        m
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.mask & other.mask == 0
    }

    /// Graded reverse lexicographic comparison.
    #[inline]
    pub fn cmp_grevlex(&self, other: &Monomial) -> Ordering {
        match self.deg.cmp(&other.deg) {
            Ordering::Equal => {}
            o => return o,
        }
        for i in (0..MAX_VARS).rev() {
            match self.exps[i].cmp(&other.exps[i]) {
                Ordering::Equal => continue,
                o => return o.reverse(),
            }
        }
        Ordering::Equal
    }

    pub fn cmp_lex(&self, other: &Monomial) -> Ordering {
        self.exps.cmp(&other.exps)
    }

    pub fn cmp_weighted_grevlex(&self, other: &Monomial, weights: &[u32]) -> Ordering {
        match self.weighted_degree(weights).cmp(&other.weighted_degree(weights)) {
            Ordering::Equal => {}
            o => return o,
        }
        for i in (0..MAX_VARS).rev() {
            match self.exps[i].cmp(&other.exps[i]) {
                Ordering::Equal => continue,
                o => return o.reverse(),
            }
        }
        Ordering::Equal
    }

    /// Iterator over monomials of standard degree `d` in `n` variables, in
    /// lexicographically decreasing order of exponent vectors.
    pub fn all_of_degree(n: usize, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut e = vec![0u32; n];
        fn rec(i: usize, left: u32, e: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            let n = e.len();
            if n == 0 {
                if left == 0 {
                    out.push(Monomial::ONE);
                }
                return;
            }
            if i == n - 1 {
                e[i] = left;
                out.push(Monomial::from_exponents(e));
                return;
            }
            for x in (0..=left).rev() {
                e[i] = x;
                rec(i + 1, left - x, e, out);
            }
            e[i] = 0;
        }
        rec(0, d, &mut e, &mut out);
        out
    }
}

impl PartialEq for Monomial {
    fn eq(&self, other: &Self) -> bool {
        self.mask == other.mask && self.exps == other.exps
    }
}

impl Eq for Monomial {}

impl Hash for Monomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.exps.hash(state);
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = (0..MAX_VARS).rev().find(|&i| self.exps[i] > 0).map_or(0, |i| i + 1);
        write!(f, "x{:?}", &self.exps[..n])
    }
}

impl serde::Serialize for Monomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let n = (0..MAX_VARS).rev().find(|&i| self.exps[i] > 0).map_or(0, |i| i + 1);
        self.exponents(n).serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for Monomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let e: Vec<u32> = Vec::deserialize(d)?;
        if e.len() > MAX_VARS || e.iter().any(|&x| x > u8::MAX as u32) {
            return Err(serde::de::Error::custom("monomial out of range"));
        }
        Ok(Monomial::from_exponents(&e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisibility_and_lcm() {
        let a = Monomial::from_exponents(&[2, 0, 1]);
        let b = Monomial::from_exponents(&[1, 1, 1]);
        assert!(!a.divides(&b));
        let l = a.lcm(&b);
        assert_eq!(l, Monomial::from_exponents(&[2, 1, 1]));
        assert!(a.divides(&l) && b.divides(&l));
        assert_eq!(l.div(&a), Monomial::from_exponents(&[0, 1, 0]));
        assert_eq!(a.gcd(&b), Monomial::from_exponents(&[1, 0, 1]));
    }

    #[test]
    fn grevlex_ties_break_on_last_variable() {
        // x0*x2 < x1^2 in grevlex
        let a = Monomial::from_exponents(&[1, 0, 1]);
        let b = Monomial::from_exponents(&[0, 2, 0]);
        assert_eq!(a.cmp_grevlex(&b), Ordering::Less);
        assert_eq!(a.cmp_lex(&b), Ordering::Greater);
    }

    #[test]
    fn counts_monomials() {
        assert_eq!(Monomial::all_of_degree(3, 2).len(), 6);
        assert_eq!(Monomial::all_of_degree(0, 0).len(), 1);
        assert_eq!(Monomial::all_of_degree(0, 1).len(), 0);
    }
}
