//! Cutting a module by regular linear forms, which leaves graded Betti
//! numbers unchanged and shrinks the ring the resolution runs over.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::graded::GradedQuotient;
use super::koszul::koszul_tor;
use super::module::PresentedModule;
use super::resolution::{minimal_free_resolution, BettiTable};
use crate::error::Result;
use crate::exact::Rational;
use crate::poly::{GradedRing, HilbertSeries, ModuleElement, Monomial, Polynomial};

const SPARSE_ATTEMPTS: usize = 4;

/// Linear forms to substitute for the last variable, sparse ones first since
/// they keep the Groebner bases small; the final dense one is generic.
fn candidates(n: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<i64>> {
    let mut out = vec![vec![0; n]];
    for j in (0..n).rev() {
        let mut c = vec![0; n];
        c[j] = 1;
        out.push(c);
    }
    for _ in 0..SPARSE_ATTEMPTS {
        let mut c = vec![0; n];
        for _ in 0..3.min(n) {
            c[rng.gen_range(0..n)] = rng.gen_range(1i64..=4);
        }
        out.push(c);
    }
    out.push((0..n).map(|_| rng.gen_range(-4i64..=4)).collect());
    out.dedup();
    out
}

/// The module `M / l M` over `R / l` after substituting
/// `x_last = sum_i c_i x_i`.
fn cut(m: &PresentedModule, coeffs: &[i64]) -> PresentedModule {
    let n = m.ring.nvars();
    let mut images: Vec<Polynomial> = (0..n - 1).map(Polynomial::var).collect();
    let form = Polynomial::from_terms(
        coeffs.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (Monomial::var(i), Rational::from(c))).collect(),
    );
    images.push(form);
    let ring = GradedRing::new(m.ring.names[..n - 1].to_vec(), m.ring.weights[..n - 1].to_vec()).expect("subring of a valid ring");
    let relations: Vec<ModuleElement> = m
        .relations
        .iter()
        .map(|r| ModuleElement::from_comps(r.comps.iter().map(|p| p.substitute(&images)).collect()))
        .filter(|r: &ModuleElement| !r.is_zero())
        .collect();
    PresentedModule { ring, gen_degrees: m.gen_degrees.clone(), relations }
}

/// Cheap necessary condition for regularity: the Hilbert function of the cut
/// module is the first difference of the old one in low degrees.
fn low_degrees_agree(next: &PresentedModule, hs: &HilbertSeries, top: i64) -> Result<bool> {
    let mut q = GradedQuotient::new(&next.ring, &next.gen_degrees, &next.relations)?;
    let lo = next.gen_degrees.iter().copied().min().unwrap_or(0);
    for j in lo..=top {
        if q.dim(j) as i128 != hs.value(j) - hs.value(j - 1) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn same_numerator(a: &HilbertSeries, b: &HilbertSeries) -> bool {
    a.min_degree == b.min_degree && a.coeffs == b.coeffs
}

#[derive(Clone, Debug)]
pub struct Reduction {
    pub module: PresentedModule,
    pub cuts: usize,
    pub hilbert: HilbertSeries,
}

/// Repeatedly quotients by a linear form that is verified to be regular on
/// the module, stopping when no candidate succeeds. Only standard graded
/// rings are reduced.
pub fn artinian_reduction(m: &PresentedModule, budget: Option<u64>) -> Result<Reduction> {
    let mut cur = m.minimize();
    if !cur.ring.is_standard() {
        let hilbert = cur.hilbert_series(budget)?;
        return Ok(Reduction { module: cur, cuts: 0, hilbert });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut cuts = 0;
    let mut hs = cur.hilbert_series(budget)?;
    let prefilter_top = cur.relations.iter().map(|r| cur.relation_degree(r)).chain(cur.gen_degrees.iter().copied()).max().unwrap_or(0) + 1;
    'outer: while cur.ring.nvars() > 0 && !hs.is_zero() {
        let n = cur.ring.nvars();
        for coeffs in candidates(n - 1, &mut rng) {
            let next = cut(&cur, &coeffs);
            if !low_degrees_agree(&next, &hs, prefilter_top)? {
                continue;
            }
            let next_hs = next.hilbert_series(budget)?;
            if same_numerator(&hs, &next_hs) {
                cur = next.minimize();
                hs = next_hs;
                cuts += 1;
                continue 'outer;
            }
        }
        break;
    }
    Ok(Reduction { module: cur, cuts, hilbert: hs })
}

/// Graded Betti numbers over the original ring. When the reduction reaches
/// finite length they come from the Koszul complex, whose window is bounded
/// by the top degree of the module; otherwise from a minimal resolution of
/// the reduced module.
pub fn betti_table(m: &PresentedModule, budget: Option<u64>) -> Result<BettiTable> {
    let steps = m.ring.nvars() + 1;
    let red = artinian_reduction(m, budget)?;
    if red.hilbert.is_zero() {
        return Ok(BettiTable { complete: true, ..Default::default() });
    }
    if red.hilbert.krull_dim() == 0 {
        let n = red.module.ring.nvars() as i64;
        let lo = red.module.gen_degrees.iter().copied().min().unwrap_or(0);
        let top = red.hilbert.min_degree + red.hilbert.coeffs.len() as i64 - 1;
        return koszul_tor(&red.module, lo, top + n);
    }
    Ok(minimal_free_resolution(&red.module, steps, budget)?.betti)
}

/// Betti numbers in internal degrees up to `hi`, from the Koszul complex of
/// the reduced module. The table is complete only when the window reaches
/// past the top degree of a finite-length reduction.
pub fn betti_window(m: &PresentedModule, hi: i64, budget: Option<u64>) -> Result<BettiTable> {
    let red = artinian_reduction(m, budget)?;
    if red.hilbert.is_zero() {
        return Ok(BettiTable { complete: true, ..Default::default() });
    }
    let n = red.module.ring.nvars() as i64;
    let lo = red.module.gen_degrees.iter().copied().min().unwrap_or(0);
    let mut table = koszul_tor(&red.module, lo, hi)?;
    let top = red.hilbert.min_degree + red.hilbert.coeffs.len() as i64 - 1;
    table.complete = red.hilbert.krull_dim() == 0 && hi >= top + n;
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> Polynomial {
        Polynomial::var(i)
    }

    #[test]
    fn window_truncates_and_flags() {
        let r = GradedRing::standard(3, "l");
        let m = PresentedModule::quotient_ring(r, &[x(0).mul(&x(1)), x(1).mul(&x(2))]).unwrap();
        let full = betti_table(&m, None).unwrap();
        let low = betti_window(&m, 2, None).unwrap();
        assert!(!low.complete);
        let mut expect = full.restricted(i64::MIN, 2);
        expect.complete = false;
        assert_eq!(low, expect);
        // positive-dimensional after reduction, so no window is known to be enough
        let wide = betti_window(&m, 10, None).unwrap();
        assert_eq!(wide.entries, full.entries);
        assert!(!wide.complete);
        let ci = PresentedModule::quotient_ring(GradedRing::standard(2, "l"), &[x(0).mul(&x(0)), x(1).mul(&x(1))]).unwrap();
        assert_eq!(betti_window(&ci, 6, None).unwrap(), betti_table(&ci, None).unwrap());
    }

    #[test]
    fn complete_intersection_cuts_to_a_point() {
        let r = GradedRing::standard(3, "l");
        // (l1 l2) has depth 2 on R/(l1 l2) in three variables
        let m = PresentedModule::quotient_ring(r, &[x(0).mul(&x(1))]).unwrap();
        let red = artinian_reduction(&m, None).unwrap();
        assert_eq!(red.cuts, 2);
        assert_eq!(red.module.ring.nvars(), 1);
        let direct = minimal_free_resolution(&m, 4, None).unwrap().betti;
        assert_eq!(betti_table(&m, None).unwrap(), direct);
    }

    #[test]
    fn residue_field_has_depth_zero() {
        let m = PresentedModule::residue_field(GradedRing::standard(3, "l"));
        assert_eq!(artinian_reduction(&m, None).unwrap().cuts, 0);
        let b = betti_table(&m, None).unwrap();
        assert_eq!(b.triples(), vec![(0, 0, 1), (1, 1, 3), (2, 2, 3), (3, 3, 1)]);
    }

    #[test]
    fn non_cohen_macaulay_ideal_keeps_its_betti_numbers() {
        // two skew lines in P^3
        let r = GradedRing::standard(4, "l");
        let gens = [x(0).mul(&x(2)), x(0).mul(&x(3)), x(1).mul(&x(2)), x(1).mul(&x(3))];
        let m = PresentedModule::quotient_ring(r, &gens).unwrap();
        let direct = minimal_free_resolution(&m, 5, None).unwrap().betti;
        assert_eq!(artinian_reduction(&m, None).unwrap().cuts, 1);
        assert_eq!(betti_table(&m, None).unwrap(), direct);
    }
}
