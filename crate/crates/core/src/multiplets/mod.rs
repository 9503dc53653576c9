//! Multiplets as modules over the ring of functions on Σ: the superconformal
//! multiplet coker φ, Kähler differentials ker φᵗ, the canonical multiplet
//! R/I and the form multiplets H^(-k), together with their component fields.

mod table;

use serde::{Deserialize, Serialize};

pub use table::{component_fields, universal_checks, CheckLine, FieldRecord, MultipletTable, UniversalReport};

use crate::error::Result;
use crate::homology::{
    betti_table, ce_module, ce_top_degree, koszul_homology_with_degrees, minimal_free_resolution, preimage, syzygetic_defect, syzygy_part,
    BettiTable, GradedDims, GradedQuotient, PresentedModule, Resolution,
};
use crate::poly::{buchberger, buchberger_module, krull_dim, ModuleElement};
use crate::susy::SupertranslationAlgebra;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MultipletKind {
    Conf,
    Kaehler,
    Canonical,
    Form(usize),
    Custom,
}

impl std::fmt::Display for MultipletKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MultipletKind::Conf => write!(f, "conf"),
            MultipletKind::Kaehler => write!(f, "kaehler"),
            MultipletKind::Canonical => write!(f, "canonical"),
            MultipletKind::Form(k) => write!(f, "form:{k}"),
            MultipletKind::Custom => write!(f, "custom"),
        }
    }
}

impl std::str::FromStr for MultipletKind {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "conf" => Ok(MultipletKind::Conf),
            "kaehler" | "kahler" => Ok(MultipletKind::Kaehler),
            "canonical" => Ok(MultipletKind::Canonical),
            _ => match s.strip_prefix("form:").map(str::parse) {
                Some(Ok(k)) => Ok(MultipletKind::Form(k)),
                _ => Err(crate::Error::Invalid(format!("unknown multiplet '{s}' (expected conf, kaehler, canonical or form:K)"))),
            },
        }
    }
}

/// A module over R together with what it was built from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultipletModule {
    pub kind: MultipletKind,
    pub algebra: String,
    pub module: PresentedModule,
}

impl MultipletModule {
    /// Dimensions of the graded pieces in `lo..=hi`.
    pub fn graded_dims(&self, lo: i64, hi: i64) -> Result<GradedDims> {
        let m = &self.module;
        let mut q = GradedQuotient::new(&m.ring, &m.gen_degrees, &m.relations)?;
        let mut out = GradedDims::default();
        for j in lo..=hi {
            out.set(j, q.dim(j) as u64);
        }
        Ok(out)
    }

    /// Whether every generator of the ideal kills every generator of the module.
    pub fn is_annihilated_by(&self, alg: &SupertranslationAlgebra, budget: Option<u64>) -> Result<bool> {
        let m = &self.module;
        let gb = buchberger_module(&m.ring, &m.gen_degrees, &m.relations, budget)?;
        for i in 0..m.rank() {
            for q in alg.ideal() {
                let mut v = ModuleElement::zero(m.rank());
                v.comps[i] = q;
                if !gb.contains(&v) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn resolution(&self, budget: Option<u64>) -> Result<Resolution> {
        minimal_free_resolution(&self.module, self.module.ring.nvars() + 1, budget)
    }

    pub fn betti(&self, budget: Option<u64>) -> Result<BettiTable> {
        betti_table(&self.module, budget)
    }
}

fn ideal_times_basis(alg: &SupertranslationAlgebra, rank: usize) -> Vec<ModuleElement> {
    let ideal = alg.ideal();
    let mut out = Vec::new();
    for i in 0..rank {
        for q in &ideal {
            let mut v = ModuleElement::zero(rank);
            v.comps[i] = q.clone();
            out.push(v);
        }
    }
    out
}

/// coker(φ: Σ ⊗ R/I -> V ⊗ R/I), with V in degree 0.
pub fn conf_module(alg: &SupertranslationAlgebra) -> Result<MultipletModule> {
    let j = alg.jacobian();
    let cols: Vec<ModuleElement> =
        (0..alg.k).map(|b| ModuleElement::from_comps((0..alg.d).map(|mu| j.phi[mu][b].clone()).collect())).collect();
    let module = PresentedModule::new(alg.ring(), vec![0; alg.d], cols)?.with_ideal(&alg.ideal());
    Ok(MultipletModule { kind: MultipletKind::Conf, algebra: alg.name.clone(), module })
}

/// ker(φᵗ: V^∨ ⊗ R/I -> Σ^∨ ⊗ R/I), with V^∨ in degree 0.
pub fn kaehler_module(alg: &SupertranslationAlgebra, budget: Option<u64>) -> Result<MultipletModule> {
    let ring = alg.ring();
    let j = alg.jacobian();
    let images: Vec<ModuleElement> = (0..alg.d).map(|mu| ModuleElement::from_comps(j.phi[mu].clone())).collect();
    let kernel = preimage(&ring, &vec![-1; alg.k], &images, &ideal_times_basis(alg, alg.k), budget)?;
    let module = PresentedModule::subquotient(&ring, &vec![0; alg.d], &kernel, &ideal_times_basis(alg, alg.d), budget)?;
    Ok(MultipletModule { kind: MultipletKind::Kaehler, algebra: alg.name.clone(), module })
}

/// R/I.
pub fn canonical_module(alg: &SupertranslationAlgebra) -> Result<MultipletModule> {
    let module = PresentedModule::quotient_ring(alg.ring(), &alg.ideal())?;
    Ok(MultipletModule { kind: MultipletKind::Canonical, algebra: alg.name.clone(), module })
}

/// H^(-k)(𝔫), with V^∨ in degree 2.
pub fn form_module(alg: &SupertranslationAlgebra, k: usize, budget: Option<u64>) -> Result<MultipletModule> {
    let module = ce_module(alg, k, budget)?;
    Ok(MultipletModule { kind: MultipletKind::Form(k), algebra: alg.name.clone(), module })
}

pub fn multiplet(alg: &SupertranslationAlgebra, kind: &MultipletKind, budget: Option<u64>) -> Result<MultipletModule> {
    match kind {
        MultipletKind::Conf => conf_module(alg),
        MultipletKind::Kaehler => kaehler_module(alg, budget),
        MultipletKind::Canonical => canonical_module(alg),
        MultipletKind::Form(k) => form_module(alg, *k, budget),
        MultipletKind::Custom => Err(crate::Error::Invalid("custom multiplets are built directly from a module".into())),
    }
}

/// dim Y of the nilpotence variety.
pub fn nilpotence_dim(alg: &SupertranslationAlgebra, budget: Option<u64>) -> Result<i64> {
    let ideal = alg.ideal();
    if ideal.is_empty() {
        return Ok(alg.k as i64);
    }
    Ok(krull_dim(&buchberger(&alg.ring(), &ideal, budget)?))
}

/// d - k + dim Y.
pub fn hdim(alg: &SupertranslationAlgebra, budget: Option<u64>) -> Result<i64> {
    Ok(alg.hdim_from_dim_y(nilpotence_dim(alg, budget)?))
}

/// The largest k with H^(-k)(𝔫) nonzero, searched in degrees up to `2d + k + 2`.
pub fn hdim_koszul(alg: &SupertranslationAlgebra) -> Result<Option<i64>> {
    let hi = 2 * alg.d as i64 + alg.k as i64 + 2;
    Ok(ce_top_degree(alg, hi)?.map(|k| k as i64))
}

/// Per-degree comparison of one-forms: δ(I), the syzygy part of H^(-1),
/// the literal ker φᵗ (shifted so that V^∨ sits in degree 2) and H^(-1).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OneFormsRow {
    pub degree: i64,
    pub defect: u64,
    pub syzygy_part: u64,
    pub kernel: u64,
    pub h1: u64,
}

impl OneFormsRow {
    /// δ + syzygy part = H^(-1).
    pub fn syzygy_identity(&self) -> bool {
        self.defect + self.syzygy_part == self.h1
    }

    /// δ + dim ker φᵗ = H^(-1).
    pub fn kernel_identity(&self) -> bool {
        self.defect + self.kernel == self.h1
    }
}

pub fn one_forms_comparison(alg: &SupertranslationAlgebra, lo: i64, hi: i64, budget: Option<u64>) -> Result<Vec<OneFormsRow>> {
    let ring = alg.ring();
    let ideal = alg.ideal();
    let q = alg.quadrics();
    let h1 = koszul_homology_with_degrees(&ring, &q, &vec![2; q.len()], 1, lo, hi)?;
    let (defect, syz) = if ideal.len() == q.len() {
        (syzygetic_defect(&ring, &q, lo, hi)?, syzygy_part(&ring, &q, lo, hi)?)
    } else {
        // a zero quadric contributes r e_mu for every r, modulo I e_mu
        let d = syzygetic_defect(&ring, &ideal, lo, hi)?;
        let mut z = syzygy_part(&ring, &ideal, lo, hi)?;
        let nzero = (q.len() - ideal.len()) as u64;
        let mut quot = GradedQuotient::ring_quotient(&ring, &ideal)?;
        for j in lo..=hi {
            if j >= 2 {
                z.set(j, z.get(j) + nzero * quot.dim(j - 2) as u64);
            }
        }
        (d, z)
    };
    let kern = kaehler_module(alg, budget)?.graded_dims(lo - 2, hi - 2)?;
    Ok((lo..=hi)
        .map(|j| OneFormsRow { degree: j, defect: defect.get(j), syzygy_part: syz.get(j), kernel: kern.get(j - 2), h1: h1.get(j) })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::susy::{build_standard, SusyKey};

    fn alg(dim: u32, key: SusyKey) -> SupertranslationAlgebra {
        build_standard(dim, key).unwrap()
    }

    #[test]
    fn one_dimensional_conf_is_the_residue_field() {
        let m = conf_module(&alg(1, SusyKey::N(2))).unwrap();
        let dims = m.graded_dims(0, 4).unwrap();
        assert_eq!(dims.0.into_iter().collect::<Vec<_>>(), vec![(0, 1)]);
    }

    #[test]
    fn three_dimensional_conf_dims_and_betti() {
        let a = alg(3, SusyKey::N(1));
        let m = conf_module(&a).unwrap();
        assert_eq!(m.graded_dims(0, 5).unwrap().0.into_iter().collect::<Vec<_>>(), vec![(0, 3), (1, 4)]);
        assert_eq!(m.betti(None).unwrap(), BettiTable::from_entries(&[(0, 0, 3), (1, 1, 2), (1, 2, 5), (2, 3, 4)], true));
        assert!(m.is_annihilated_by(&a, None).unwrap());
    }

    #[test]
    fn abelian_conf_and_kaehler_are_free() {
        let a = SupertranslationAlgebra::abelian(2, 2);
        let c = conf_module(&a).unwrap();
        assert_eq!(c.betti(None).unwrap().triples(), vec![(0, 0, 2)]);
        let k = kaehler_module(&a, None).unwrap();
        assert_eq!(k.betti(None).unwrap().triples(), vec![(0, 0, 2)]);
        assert_eq!(hdim(&a, None).unwrap(), 2);
    }

    #[test]
    fn canonical_betti_three_dimensional() {
        let m = canonical_module(&alg(3, SusyKey::N(1))).unwrap();
        assert_eq!(m.betti(None).unwrap().triples(), vec![(0, 0, 1), (1, 2, 3), (2, 3, 2)]);
    }

    #[test]
    fn hdim_small_catalog() {
        assert_eq!(hdim(&alg(3, SusyKey::N(1)), None).unwrap(), 1);
        assert_eq!(hdim(&alg(4, SusyKey::N(1)), None).unwrap(), 2);
        assert_eq!(hdim_koszul(&alg(3, SusyKey::N(1))).unwrap(), Some(1));
        assert_eq!(hdim_koszul(&alg(4, SusyKey::N(1))).unwrap(), Some(2));
    }

    #[test]
    fn complete_intersection_kaehler_contains_koszul_syzygy() {
        // q = (l1^2, l2^2): the Koszul syzygy q2 e1 - q1 e2 has φᵗ-image in I
        let a = alg(2, SusyKey::Pair(1, 1));
        let k = kaehler_module(&a, None).unwrap();
        assert!(k.module.rank() >= 1);
        assert!(k.is_annihilated_by(&a, None).unwrap());
    }

    #[test]
    fn one_forms_identities() {
        let rows = one_forms_comparison(&alg(3, SusyKey::N(1)), 0, 8, None).unwrap();
        assert!(rows.iter().all(|r| r.syzygy_identity()));
        // the literal kernel is larger in degree 3
        let r3 = rows.iter().find(|r| r.degree == 3).unwrap();
        assert_eq!((r3.h1, r3.kernel), (2, 6));
        assert!(!r3.kernel_identity());
    }
}
