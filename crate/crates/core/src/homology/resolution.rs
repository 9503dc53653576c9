use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::graded::GradedQuotient;
use super::module::PresentedModule;
use crate::error::{Error, Result};
use crate::poly::{buchberger, krull_dim, minimal_generators_and_syzygies, GradedRing, HilbertSeries, ModuleElement, Polynomial};

/// Graded Betti numbers beta_{i,j}, keyed by (homological index, internal degree).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    pub entries: BTreeMap<(usize, i64), u64>,
    /// False when the computation stopped before the resolution ended.
    pub complete: bool,
}

impl BettiTable {
    pub fn from_entries(entries: &[(usize, i64, u64)], complete: bool) -> Self {
        let mut t = BettiTable { entries: BTreeMap::new(), complete };
        for &(i, j, b) in entries {
            t.add(i, j, b);
        }
        t
    }

    pub fn add(&mut self, i: usize, j: i64, b: u64) {
        if b > 0 {
            *self.entries.entry((i, j)).or_insert(0) += b;
        }
    }

    pub fn get(&self, i: usize, j: i64) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Sorted `[i, j, beta]` triples.
    pub fn triples(&self) -> Vec<(usize, i64, u64)> {
        self.entries.iter().map(|(&(i, j), &b)| (i, j, b)).collect()
    }

    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    /// Length of the resolution, or `None` for the zero module.
    pub fn projective_dimension(&self) -> Option<usize> {
        self.entries.keys().map(|k| k.0).max()
    }

    pub fn row_sum(&self, i: usize) -> u64 {
        self.entries.iter().filter(|(k, _)| k.0 == i).map(|(_, b)| b).sum()
    }

    /// `sum_i (-1)^i beta_{i,j} t^j`, as degree -> coefficient.
    pub fn euler_polynomial(&self) -> BTreeMap<i64, i128> {
        let mut out: BTreeMap<i64, i128> = BTreeMap::new();
        for (&(i, j), &b) in &self.entries {
            let s = if i % 2 == 0 { 1 } else { -1 };
            *out.entry(j).or_insert(0) += s * b as i128;
        }
        out.retain(|_, v| *v != 0);
        out
    }

    /// Entries whose internal degree lies in `lo..=hi`.
    pub fn restricted(&self, lo: i64, hi: i64) -> BettiTable {
        let entries = self.entries.iter().filter(|(k, _)| k.1 >= lo && k.1 <= hi).map(|(k, v)| (*k, *v)).collect();
        BettiTable { entries, complete: self.complete }
    }
}

/// Numerator of a Hilbert series as degree -> coefficient.
pub fn numerator_map(hs: &HilbertSeries) -> BTreeMap<i64, i128> {
    hs.coeffs.iter().enumerate().filter(|(_, c)| **c != 0).map(|(i, c)| (hs.min_degree + i as i64, *c)).collect()
}

/// A minimal graded free resolution F_0 <- F_1 <- ... of a module.
#[derive(Clone, Debug)]
pub struct Resolution {
    /// Generator degrees of each F_i.
    pub degrees: Vec<Vec<i64>>,
    /// `maps[i]` lists the images in F_i of the basis of F_{i+1}.
    pub maps: Vec<Vec<ModuleElement>>,
    pub betti: BettiTable,
}

impl Resolution {
    /// Checks that consecutive maps compose to zero and that no entry is a
    /// nonzero constant.
    pub fn is_minimal_complex(&self) -> bool {
        for (i, map) in self.maps.iter().enumerate() {
            for col in map {
                if col.comps.iter().any(|p| p.terms().iter().any(|(m, _)| m.is_one())) {
                    return false;
                }
            }
            if let Some(next) = self.maps.get(i + 1) {
                for col in next {
                    let mut acc = ModuleElement::zero(self.degrees[i].len());
                    for (k, c) in col.comps.iter().enumerate() {
                        acc = acc.add(&map[k].scale_poly(c));
                    }
                    if !acc.is_zero() {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// A minimal generating subset of homogeneous `gens`, chosen degree by
/// degree with linear algebra so that no Groebner basis is needed.
pub fn prune_generators(ring: &GradedRing, shifts: &[i64], gens: &[ModuleElement]) -> Result<Vec<ModuleElement>> {
    let mut tagged: Vec<(i64, &ModuleElement)> = Vec::new();
    for g in gens.iter().filter(|g| !g.is_zero()) {
        let d = g.homogeneous_degree(ring, shifts).ok_or_else(|| Error::Invalid("inhomogeneous generator".into()))?;
        tagged.push((d, g));
    }
    tagged.sort_by_key(|t| t.0);
    let mut chosen: Vec<ModuleElement> = Vec::new();
    let mut i = 0;
    while i < tagged.len() {
        let t = tagged[i].0;
        let mut q = GradedQuotient::new(ring, shifts, &chosen)?;
        let piece = q.piece(t);
        while i < tagged.len() && tagged[i].0 == t {
            let v = piece.ambient(tagged[i].1);
            if piece.absorb(&v) {
                chosen.push(tagged[i].1.clone());
            }
            i += 1;
        }
    }
    Ok(chosen)
}

/// Minimal free resolution by iterated minimal syzygies, stopping after
/// `max_steps` maps.
pub fn minimal_free_resolution(m: &PresentedModule, max_steps: usize, budget: Option<u64>) -> Result<Resolution> {
    let mm = m.minimize();
    let ring = &mm.ring;
    let mut betti = BettiTable::default();
    for &d in &mm.gen_degrees {
        betti.add(0, d, 1);
    }
    let mut degrees = vec![mm.gen_degrees.clone()];
    let mut maps = Vec::new();
    let mut gens = mm.relations.clone();
    let mut shifts = mm.gen_degrees.clone();
    let mut step = 1;
    let mut complete = true;
    while !gens.is_empty() {
        if step > max_steps {
            complete = false;
            break;
        }
        let ms = minimal_generators_and_syzygies(ring, &shifts, &gens, budget)?;
        let chosen: Vec<ModuleElement> = ms.minimal.iter().map(|&k| gens[k].clone()).collect();
        let degs: Vec<i64> = chosen.iter().map(|g| g.homogeneous_degree(ring, &shifts).expect("homogeneous")).collect();
        for &d in &degs {
            betti.add(step, d, 1);
        }
        maps.push(chosen);
        degrees.push(degs.clone());
        gens = prune_generators(ring, &degs, &ms.syzygies)?;
        shifts = degs;
        step += 1;
    }
    betti.complete = complete;
    Ok(Resolution { degrees, maps, betti })
}

/// Cohen-Macaulay and Gorenstein flags of R/I.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GorensteinReport {
    pub cohen_macaulay: bool,
    pub gorenstein: bool,
    pub projective_dimension: usize,
    pub codimension: usize,
}

pub fn is_gorenstein(ring: &GradedRing, ideal: &[Polynomial], budget: Option<u64>) -> Result<GorensteinReport> {
    let gb = buchberger(ring, ideal, budget)?;
    if gb.is_unit() {
        return Err(Error::Invalid("the unit ideal has no Gorenstein flag".into()));
    }
    let codim = ring.nvars() - krull_dim(&gb) as usize;
    let m = PresentedModule::quotient_ring(ring.clone(), ideal)?;
    let betti = super::reduce::betti_table(&m, budget)?;
    let pd = betti.projective_dimension().unwrap_or(0);
    let cm = pd == codim;
    Ok(GorensteinReport { cohen_macaulay: cm, gorenstein: cm && betti.row_sum(pd) == 1, projective_dimension: pd, codimension: codim })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> Polynomial {
        Polynomial::var(i)
    }

    #[test]
    fn square_of_maximal_ideal_in_two_variables() {
        let r = GradedRing::standard(2, "l");
        let m = PresentedModule::quotient_ring(r, &[x(0).mul(&x(0)), x(0).mul(&x(1)), x(1).mul(&x(1))]).unwrap();
        let res = minimal_free_resolution(&m, 5, None).unwrap();
        assert_eq!(res.betti, BettiTable::from_entries(&[(0, 0, 1), (1, 2, 3), (2, 3, 2)], true));
        assert!(res.is_minimal_complex());
    }

    #[test]
    fn free_module_has_trivial_resolution() {
        let r = GradedRing::standard(2, "l");
        let res = minimal_free_resolution(&PresentedModule::free(r, vec![0]), 5, None).unwrap();
        assert_eq!(res.betti.triples(), vec![(0, 0, 1)]);
        assert!(res.betti.complete);
    }

    #[test]
    fn gorenstein_flags() {
        let r = GradedRing::standard(2, "l");
        let ci = is_gorenstein(&r, &[x(0).mul(&x(0)), x(1).mul(&x(1))], None).unwrap();
        assert!(ci.cohen_macaulay && ci.gorenstein);
        let m2 = is_gorenstein(&r, &[x(0).mul(&x(0)), x(0).mul(&x(1)), x(1).mul(&x(1))], None).unwrap();
        assert!(m2.cohen_macaulay && !m2.gorenstein);
    }

    #[test]
    fn truncated_resolution_is_flagged() {
        let r = GradedRing::standard(3, "x");
        let res = minimal_free_resolution(&PresentedModule::residue_field(r), 1, None).unwrap();
        assert!(!res.betti.complete);
        assert_eq!(res.betti.get(1, 1), 3);
    }
}
