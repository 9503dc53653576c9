use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{
    buchberger_module, minimal_generators_and_syzygies, syzygy_module, GradedRing, HilbertSeries, ModuleElement, Polynomial,
};

/// A graded module F/U over a polynomial ring, given by generator degrees and
/// homogeneous relations (elements of F).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentedModule {
    pub ring: GradedRing,
    pub gen_degrees: Vec<i64>,
    pub relations: Vec<ModuleElement>,
}

impl PresentedModule {
    pub fn new(ring: GradedRing, gen_degrees: Vec<i64>, relations: Vec<ModuleElement>) -> Result<Self> {
        for r in &relations {
            if r.rank() != gen_degrees.len() {
                return Err(Error::Invalid(format!(
                    "relation has {} components but the module has {} generators",
                    r.rank(),
                    gen_degrees.len()
                )));
            }
            if !r.is_zero() && r.homogeneous_degree(&ring, &gen_degrees).is_none() {
                return Err(Error::Invalid("relation is not homogeneous".into()));
            }
        }
        let relations = relations.into_iter().filter(|r| !r.is_zero()).collect();
        Ok(PresentedModule { ring, gen_degrees, relations })
    }

    pub fn free(ring: GradedRing, gen_degrees: Vec<i64>) -> Self {
        PresentedModule { ring, gen_degrees, relations: Vec::new() }
    }

    /// R/(gens) as a cyclic module.
    pub fn quotient_ring(ring: GradedRing, gens: &[Polynomial]) -> Result<Self> {
        let rels = gens.iter().map(|g| ModuleElement::from_comps(vec![g.clone()])).collect();
        Self::new(ring, vec![0], rels)
    }

    /// The residue field R/m.
    pub fn residue_field(ring: GradedRing) -> Self {
        let n = ring.nvars();
        let gens: Vec<Polynomial> = (0..n).map(Polynomial::var).collect();
        Self::quotient_ring(ring, &gens).expect("variables are homogeneous")
    }

    pub fn rank(&self) -> usize {
        self.gen_degrees.len()
    }

    /// Appends `g * e_i` for every ideal generator `g` and every generator
    /// `e_i`, turning an R/I-module presentation into one over R.
    pub fn with_ideal(mut self, ideal: &[Polynomial]) -> Self {
        let n = self.rank();
        for i in 0..n {
            for g in ideal {
                if g.is_zero() {
                    continue;
                }
                let mut e = ModuleElement::zero(n);
                e.comps[i] = g.clone();
                self.relations.push(e);
            }
        }
        self
    }

    pub fn relation_degree(&self, r: &ModuleElement) -> i64 {
        r.homogeneous_degree(&self.ring, &self.gen_degrees).expect("homogeneous relation")
    }

    pub fn hilbert_series(&self, budget: Option<u64>) -> Result<HilbertSeries> {
        let gb = buchberger_module(&self.ring, &self.gen_degrees, &self.relations, budget)?;
        Ok(HilbertSeries::of_quotient(&gb))
    }

    /// Equivalent presentation in which no relation has a unit entry, so that
    /// the generators are minimal.
    pub fn minimize(&self) -> PresentedModule {
        let mut degs = self.gen_degrees.clone();
        let mut rels: Vec<ModuleElement> = self.relations.clone();
        loop {
            let mut hit = None;
            'search: for (k, r) in rels.iter().enumerate() {
                for (p, comp) in r.comps.iter().enumerate() {
                    if let [(m, c)] = comp.terms() {
                        if m.is_one() && !c.is_zero() {
                            hit = Some((k, p, c.clone()));
                            break 'search;
                        }
                    }
                }
            }
            let Some((k, p, c)) = hit else { break };
            let r = rels.swap_remove(k);
            let inv = c.recip();
            for s in rels.iter_mut() {
                let sp = s.comps[p].clone();
                if sp.is_zero() {
                    continue;
                }
                let factor = sp.scale(&(-&inv));
                *s = s.add(&r.scale_poly(&factor));
                debug_assert!(s.comps[p].is_zero());
            }
            for s in rels.iter_mut() {
                s.comps.remove(p);
            }
            degs.remove(p);
            rels.retain(|s| !s.is_zero());
        }
        PresentedModule { ring: self.ring.clone(), gen_degrees: degs, relations: rels }
    }
}

/// Generators of `{v in R^n : sum_i v_i images[i] lies in span(modulo)}`,
/// where `images` and `modulo` live in a free module with basis degrees
/// `target_shifts`.
pub fn preimage(
    ring: &GradedRing,
    target_shifts: &[i64],
    images: &[ModuleElement],
    modulo: &[ModuleElement],
    budget: Option<u64>,
) -> Result<Vec<ModuleElement>> {
    let n = images.len();
    let live: Vec<usize> = (0..n).filter(|&i| !images[i].is_zero()).collect();
    let mut out: Vec<ModuleElement> = (0..n).filter(|i| images[*i].is_zero()).map(|i| ModuleElement::basis(i, n)).collect();
    if live.is_empty() {
        return Ok(out);
    }
    let mut gens: Vec<ModuleElement> = live.iter().map(|&i| images[i].clone()).collect();
    gens.extend(modulo.iter().filter(|m| !m.is_zero()).cloned());
    for s in syzygy_module(ring, target_shifts, &gens, budget)? {
        let mut v = ModuleElement::zero(n);
        for (k, &i) in live.iter().enumerate() {
            v.comps[i] = s.comps[k].clone();
        }
        if !v.is_zero() {
            out.push(v);
        }
    }
    Ok(out)
}

impl PresentedModule {
    /// The subquotient N/L of a free module with basis degrees `shifts`, where
    /// N is spanned by `sub` and L ⊂ N by `quot`.
    pub fn subquotient(
        ring: &GradedRing,
        shifts: &[i64],
        sub: &[ModuleElement],
        quot: &[ModuleElement],
        budget: Option<u64>,
    ) -> Result<PresentedModule> {
        let sub: Vec<ModuleElement> = sub.iter().filter(|v| !v.is_zero()).cloned().collect();
        if sub.is_empty() {
            return Ok(PresentedModule::free(ring.clone(), Vec::new()));
        }
        let ms = minimal_generators_and_syzygies(ring, shifts, &sub, budget)?;
        let gens: Vec<ModuleElement> = ms.minimal.iter().map(|&i| sub[i].clone()).collect();
        let mut degs = Vec::with_capacity(gens.len());
        for g in &gens {
            degs.push(g.homogeneous_degree(ring, shifts).ok_or_else(|| Error::Invalid("inhomogeneous generator".into()))?);
        }
        let rels = preimage(ring, shifts, &gens, quot, budget)?;
        Ok(PresentedModule::new(ring.clone(), degs, rels)?.minimize())
    }
}

/// The presentation matrix over R: one column per relation.
pub fn relation_matrix(m: &PresentedModule) -> Vec<Vec<Polynomial>> {
    (0..m.rank()).map(|i| m.relations.iter().map(|r| r.comps[i].clone()).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Rational;

    fn unit() -> Polynomial {
        Polynomial::constant(Rational::ONE)
    }

    #[test]
    fn minimize_drops_unit_relations() {
        let r = GradedRing::standard(2, "x");
        let x = Polynomial::var;
        // <e0, e1 | e0 - e1, x0 e0>  ~  R/(x0)
        let rels = vec![ModuleElement::from_comps(vec![unit(), unit().neg()]), ModuleElement::from_comps(vec![x(0), Polynomial::zero()])];
        let m = PresentedModule::new(r, vec![0, 0], rels).unwrap().minimize();
        assert_eq!(m.gen_degrees, vec![0]);
        assert_eq!(m.relations.len(), 1);
    }
}
