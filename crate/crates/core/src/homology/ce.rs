//! Chevalley–Eilenberg groups H^(-k) of a supertranslation algebra, computed
//! as Koszul homology of the quadrics with each `e_mu` in degree two.

use super::koszul::{bits, koszul_homology_with_degrees, subsets_of_size, GradedDims};
use super::module::{preimage, PresentedModule};
use crate::error::{Error, Result};
use crate::poly::{GradedRing, ModuleElement, Polynomial};
use crate::susy::SupertranslationAlgebra;

/// Degreewise dimensions of H^(-k)(𝔫) in `lo..=hi`.
pub fn ce_cohomology(alg: &SupertranslationAlgebra, k: usize, lo: i64, hi: i64) -> Result<GradedDims> {
    if k > alg.d {
        return Err(Error::Invalid(format!("exterior degree {k} exceeds dim V = {}", alg.d)));
    }
    let q = alg.quadrics();
    koszul_homology_with_degrees(&alg.ring(), &q, &vec![2; q.len()], k, lo, hi)
}

/// The Koszul differential K_k -> K_{k-1} on the basis of K_k, with bases
/// ordered as in `subsets_of_size`.
fn koszul_images(gens: &[Polynomial], k: usize) -> Vec<ModuleElement> {
    let r = gens.len();
    let target: Vec<u32> = if k == 0 { Vec::new() } else { subsets_of_size(r, k - 1) };
    let index = |s: u32| target.iter().position(|&t| t == s).expect("subset present");
    subsets_of_size(r, k)
        .into_iter()
        .map(|s| {
            let mut v = ModuleElement::zero(target.len());
            for (t, mu) in bits(s).enumerate() {
                let g = if t % 2 == 0 { gens[mu].clone() } else { gens[mu].neg() };
                let i = index(s & !(1 << mu));
                v.comps[i] = v.comps[i].add(&g);
            }
            v
        })
        .collect()
}

fn koszul_shifts(degs: &[i64], k: usize) -> Vec<i64> {
    subsets_of_size(degs.len(), k).into_iter().map(|s| bits(s).map(|i| degs[i]).sum()).collect()
}

/// H_k of the Koszul complex on `gens` as a presented R-module.
pub fn koszul_homology_module(
    ring: &GradedRing,
    gens: &[Polynomial],
    degs: &[i64],
    k: usize,
    budget: Option<u64>,
) -> Result<PresentedModule> {
    let r = gens.len();
    if k > r {
        return Err(Error::Invalid(format!("exterior degree {k} exceeds the number of generators {r}")));
    }
    let shifts = koszul_shifts(degs, k);
    let cycles = if k == 0 {
        (0..1).map(|i| ModuleElement::basis(i, 1)).collect()
    } else {
        preimage(ring, &koszul_shifts(degs, k - 1), &koszul_images(gens, k), &[], budget)?
    };
    let boundaries = if k < r { koszul_images(gens, k + 1) } else { Vec::new() };
    PresentedModule::subquotient(ring, &shifts, &cycles, &boundaries, budget)
}

/// H^(-k)(𝔫) as a presented module over the ring of the algebra.
pub fn ce_module(alg: &SupertranslationAlgebra, k: usize, budget: Option<u64>) -> Result<PresentedModule> {
    let q = alg.quadrics();
    koszul_homology_module(&alg.ring(), &q, &vec![2; q.len()], k, budget)
}

/// Largest k with H^(-k)(𝔫) nonzero somewhere in degrees `0..=hi`.
pub fn ce_top_degree(alg: &SupertranslationAlgebra, hi: i64) -> Result<Option<usize>> {
    for k in (0..=alg.d).rev() {
        if !ce_cohomology(alg, k, 0, hi)?.is_zero() {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::GradedQuotient;
    use crate::susy::{build_standard, SusyKey};

    fn dims(m: &PresentedModule, lo: i64, hi: i64) -> GradedDims {
        let mut q = GradedQuotient::new(&m.ring, &m.gen_degrees, &m.relations).unwrap();
        let mut out = GradedDims::default();
        for j in lo..=hi {
            out.set(j, q.dim(j) as u64);
        }
        out
    }

    #[test]
    fn three_dimensional_minimal_has_only_first_homology() {
        let alg = build_standard(3, SusyKey::N(1)).unwrap();
        assert!(!ce_cohomology(&alg, 1, 0, 12).unwrap().is_zero());
        assert!(ce_cohomology(&alg, 2, 0, 12).unwrap().is_zero());
        assert!(ce_cohomology(&alg, 3, 0, 12).unwrap().is_zero());
        assert_eq!(ce_top_degree(&alg, 12).unwrap(), Some(1));
    }

    #[test]
    fn zeroth_group_is_the_coordinate_ring() {
        let alg = build_standard(3, SusyKey::N(1)).unwrap();
        let h0 = ce_cohomology(&alg, 0, 0, 5).unwrap();
        assert_eq!(h0.0.into_iter().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn module_presentation_matches_degreewise_homology() {
        for (dim, key) in [(3, SusyKey::N(1)), (4, SusyKey::N(1)), (1, SusyKey::N(2))] {
            let alg = build_standard(dim, key).unwrap();
            for k in 0..=alg.d {
                let m = ce_module(&alg, k, None).unwrap();
                assert_eq!(dims(&m, 0, 9), ce_cohomology(&alg, k, 0, 9).unwrap(), "{} k={k}", alg.name);
            }
        }
    }

    #[test]
    fn abelian_algebra_has_free_forms() {
        let alg = SupertranslationAlgebra::abelian(1, 2);
        let h1 = ce_cohomology(&alg, 1, 0, 4).unwrap();
        // Λ^1 V^∨ ⊗ C[l] with V^∨ in degree 2
        assert_eq!(h1.0.into_iter().collect::<Vec<_>>(), vec![(2, 2), (3, 2), (4, 2)]);
    }
}
