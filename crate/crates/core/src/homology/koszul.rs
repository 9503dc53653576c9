//! Koszul complexes evaluated degree by degree with exact linear algebra.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::graded::GradedQuotient;
use super::module::PresentedModule;
use super::resolution::BettiTable;
use crate::error::{Error, Result};
use crate::exact::{Rational, SparseEchelon, SparseVec};
use crate::poly::{GradedRing, Polynomial};

/// Dimensions of a graded vector space, by internal degree (zeros omitted).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedDims(pub BTreeMap<i64, u64>);

impl GradedDims {
    pub fn get(&self, d: i64) -> u64 {
        self.0.get(&d).copied().unwrap_or(0)
    }

    pub fn set(&mut self, d: i64, v: u64) {
        if v > 0 {
            self.0.insert(d, v);
        } else {
            self.0.remove(&d);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.0.values().sum()
    }
}

pub(crate) fn subsets_of_size(n: usize, k: usize) -> Vec<u32> {
    let mut out = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: u32, out: &mut Vec<u32>) {
        if k == 0 {
            out.push(cur);
            return;
        }
        for i in start..n {
            if n - i < k {
                break;
            }
            rec(i + 1, n, k - 1, cur | (1 << i), out);
        }
    }
    rec(0, n, k, 0, &mut out);
    out
}

pub(crate) fn bits(s: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |i| s & (1 << i) != 0)
}

fn rank_of(rows: &[SparseVec], ncols: usize) -> usize {
    let mut e = SparseEchelon::new(ncols);
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Layout of a direct sum of graded pieces indexed by subsets.
struct Blocks {
    offsets: HashMap<u32, usize>,
    dim: usize,
}

struct TorEngine<'a> {
    ring: &'a GradedRing,
    q: GradedQuotient,
    mult: HashMap<(usize, i64), Vec<SparseVec>>,
    low: i64,
}

impl<'a> TorEngine<'a> {
    fn new(m: &'a PresentedModule) -> Result<Self> {
        Ok(TorEngine {
            ring: &m.ring,
            q: GradedQuotient::new(&m.ring, &m.gen_degrees, &m.relations)?,
            mult: HashMap::new(),
            low: m.gen_degrees.iter().copied().min().unwrap_or(0),
        })
    }

    /// beta_{i,j} for all i at one internal degree j.
    fn degree(&mut self, j: i64, table: &mut BettiTable) {
        let n = self.ring.nvars();
        let w = &self.ring.weights;
        let wsum = |s: u32| bits(s).map(|i| w[i] as i64).sum::<i64>();
        let (q, mult, low) = (&mut self.q, &mut self.mult, self.low);
        // blocks of C_{i,j} for every i
        let mut layout: Vec<Blocks> = Vec::new();
        for i in 0..=n {
            let mut offsets = HashMap::new();
            let mut dim = 0;
            for s in subsets_of_size(n, i) {
                let d = j - wsum(s);
                if d < low {
                    continue;
                }
                let k = q.dim(d);
                if k > 0 {
                    offsets.insert(s, dim);
                    dim += k;
                }
            }
            layout.push(Blocks { offsets, dim });
        }
        // rank of d_i : C_{i,j} -> C_{i-1,j}
        let mut ranks = vec![0usize; n + 2];
        for i in 1..=n {
            if layout[i].dim == 0 || layout[i - 1].dim == 0 {
                continue;
            }
            let mut rows: Vec<SparseVec> = Vec::with_capacity(layout[i].dim);
            let mut entries: Vec<(&u32, &usize)> = layout[i].offsets.iter().collect();
            entries.sort();
            for (&s, _) in entries {
                let d = j - wsum(s);
                let nb = q.dim(d);
                let members: Vec<usize> = bits(s).collect();
                let mut block_rows: Vec<SparseVec> = vec![Vec::new(); nb];
                for (t, &v) in members.iter().enumerate() {
                    let target = s & !(1 << v);
                    let Some(&off) = layout[i - 1].offsets.get(&target) else { continue };
                    let sign = if t % 2 == 0 { Rational::ONE } else { -Rational::ONE };
                    let mv = mult.entry((v, d)).or_insert_with(|| q.multiplication(v, d));
                    for (b, row) in mv.iter().enumerate() {
                        let shifted: SparseVec = row.iter().map(|(c, x)| (c + off, &sign * x)).collect();
                        block_rows[b] = crate::exact::axpy(&block_rows[b], &Rational::ONE, &sorted(shifted));
                    }
                }
                rows.extend(block_rows);
            }
            ranks[i] = rank_of(&rows, layout[i - 1].dim);
        }
        for i in 0..=n {
            let b = layout[i].dim - ranks[i] - ranks[i + 1];
            table.add(i, j, b as u64);
        }
    }
}

/// Betti numbers via Tor(M, k): homology of M tensored with the Koszul complex
/// on the variables, in internal degrees `lo..=hi`.
pub fn koszul_tor(m: &PresentedModule, lo: i64, hi: i64) -> Result<BettiTable> {
    let mut eng = TorEngine::new(m)?;
    let mut table = BettiTable { complete: true, ..Default::default() };
    for j in lo..=hi {
        eng.degree(j, &mut table);
    }
    Ok(table)
}

/// [`koszul_tor`] on a window chosen automatically: from the lowest generator
/// degree up to at least one past the highest relation degree, then onwards
/// until two consecutive degrees are empty in every homological index.
pub fn koszul_tor_auto(m: &PresentedModule, max_degree: i64) -> Result<BettiTable> {
    let lo = m.gen_degrees.iter().copied().min().unwrap_or(0);
    let floor = m.relations.iter().map(|r| m.relation_degree(r)).chain(m.gen_degrees.iter().copied()).max().unwrap_or(lo) + 1;
    let mut eng = TorEngine::new(m)?;
    let mut table = BettiTable { complete: true, ..Default::default() };
    let mut empty_run = 0;
    let mut j = lo;
    while j <= max_degree {
        let before = table.entries.len();
        eng.degree(j, &mut table);
        if table.entries.len() == before {
            empty_run += 1;
        } else {
            empty_run = 0;
        }
        if j >= floor && empty_run >= 2 {
            return Ok(table);
        }
        j += 1;
    }
    table.complete = false;
    Ok(table)
}

fn sorted(mut v: SparseVec) -> SparseVec {
    v.sort_by_key(|e| e.0);
    v
}

/// Koszul homology H_k of the sequence `gens` over R, in total degrees
/// `lo..=hi`, where `e_S` carries the sum of the degrees of its generators.
pub fn koszul_homology(ring: &GradedRing, gens: &[Polynomial], k: usize, lo: i64, hi: i64) -> Result<GradedDims> {
    let mut degs = Vec::with_capacity(gens.len());
    for g in gens {
        match g.homogeneous_degree(ring) {
            Some(d) => degs.push(d as i64),
            None => return Err(Error::Invalid("Koszul generators must be nonzero and homogeneous".into())),
        }
    }
    koszul_homology_with_degrees(ring, gens, &degs, k, lo, hi)
}

/// As [`koszul_homology`], with the degree of each `e_mu` given explicitly so
/// that zero entries of the sequence are allowed.
pub fn koszul_homology_with_degrees(
    ring: &GradedRing,
    gens: &[Polynomial],
    degs: &[i64],
    k: usize,
    lo: i64,
    hi: i64,
) -> Result<GradedDims> {
    let r = gens.len();
    if k > r {
        return Err(Error::Invalid(format!("exterior degree {k} exceeds the number of generators {r}")));
    }
    if r > 32 {
        return Err(Error::Invalid("at most 32 generators are supported".into()));
    }
    if degs.len() != r {
        return Err(Error::Invalid("one degree per generator is required".into()));
    }
    for (g, &d) in gens.iter().zip(degs) {
        if !g.is_zero() && g.homogeneous_degree(ring).map(|x| x as i64) != Some(d) {
            return Err(Error::Invalid("Koszul generator does not have its stated degree".into()));
        }
    }
    let mut free = GradedQuotient::new(ring, &[0], &[])?;
    let dsum = |s: u32| bits(s).map(|i| degs[i]).sum::<i64>();
    let mut out = GradedDims::default();

    // size of K_{p,j} and rank of d_p : K_{p,j} -> K_{p-1,j}
    let layout = |p: usize, j: i64, free: &mut GradedQuotient| -> Blocks {
        let mut offsets = HashMap::new();
        let mut dim = 0;
        for s in subsets_of_size(r, p) {
            let d = j - dsum(s);
            if d < 0 {
                continue;
            }
            let nb = free.dim(d);
            if nb > 0 {
                offsets.insert(s, dim);
                dim += nb;
            }
        }
        Blocks { offsets, dim }
    };

    let rank = |p: usize, j: i64, src: &Blocks, tgt: &Blocks, free: &mut GradedQuotient| -> usize {
        if p == 0 || src.dim == 0 || tgt.dim == 0 {
            return 0;
        }
        let mut rows = Vec::with_capacity(src.dim);
        let mut entries: Vec<(&u32, &usize)> = src.offsets.iter().collect();
        entries.sort();
        for (&s, _) in entries {
            let d = j - dsum(s);
            let basis = free.piece(d).quotient_basis();
            for (mono, _) in basis {
                let mut row: SparseVec = Vec::new();
                for (t, v) in bits(s).enumerate() {
                    let target = s & !(1 << v);
                    let Some(&off) = tgt.offsets.get(&target) else { continue };
                    let dt = d + degs[v];
                    let piece = free.piece(dt);
                    let sign = if t % 2 == 0 { Rational::ONE } else { -Rational::ONE };
                    let mut part: SparseVec = Vec::new();
                    for (mq, c) in gens[v].terms() {
                        let col = piece.column(&mono.mul(mq), 0).expect("column exists");
                        part.push((col + off, &sign * c));
                    }
                    row = crate::exact::axpy(&row, &Rational::ONE, &sorted(part));
                }
                rows.push(row);
            }
        }
        rank_of(&rows, tgt.dim)
    };

    for j in lo..=hi {
        let here = layout(k, j, &mut free);
        if here.dim == 0 {
            continue;
        }
        let below = if k > 0 { layout(k - 1, j, &mut free) } else { Blocks { offsets: HashMap::new(), dim: 0 } };
        let above = if k < r { layout(k + 1, j, &mut free) } else { Blocks { offsets: HashMap::new(), dim: 0 } };
        let r_out = rank(k, j, &here, &below, &mut free);
        let r_in = rank(k + 1, j, &above, &here, &mut free);
        out.set(j, (here.dim - r_out - r_in) as u64);
    }
    Ok(out)
}

/// Largest `k` with nonzero Koszul homology H_k(gens) inside the window, or
/// `None` if all of it vanishes there.
pub fn koszul_top_degree(ring: &GradedRing, gens: &[Polynomial], lo: i64, hi: i64) -> Result<Option<usize>> {
    for k in (0..=gens.len()).rev() {
        if !koszul_homology(ring, gens, k, lo, hi)?.is_zero() {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> Polynomial {
        Polynomial::var(i)
    }

    #[test]
    fn residue_field_is_its_own_koszul_complex() {
        let r = GradedRing::standard(3, "x");
        let t = koszul_tor(&PresentedModule::residue_field(r), 0, 4).unwrap();
        assert_eq!(t.triples(), vec![(0, 0, 1), (1, 1, 3), (2, 2, 3), (3, 3, 1)]);
    }

    #[test]
    fn tor_of_square_of_maximal_ideal() {
        let r = GradedRing::standard(2, "l");
        let m = PresentedModule::quotient_ring(r, &[x(0).mul(&x(0)), x(0).mul(&x(1)), x(1).mul(&x(1))]).unwrap();
        let t = koszul_tor(&m, 0, 6).unwrap();
        assert_eq!(t.triples(), vec![(0, 0, 1), (1, 2, 3), (2, 3, 2)]);
    }

    #[test]
    fn regular_sequence_has_no_higher_homology() {
        let r = GradedRing::standard(2, "l");
        let gens = [x(0).mul(&x(0)), x(1).mul(&x(1))];
        for k in 1..=2 {
            assert!(koszul_homology(&r, &gens, k, 0, 10).unwrap().is_zero());
        }
        let h0 = koszul_homology(&r, &gens, 0, 0, 10).unwrap();
        assert_eq!(h0.0.iter().map(|(d, v)| (*d, *v)).collect::<Vec<_>>(), vec![(0, 1), (1, 2), (2, 1)]);
    }

    #[test]
    fn square_of_maximal_ideal_has_first_homology_only() {
        let r = GradedRing::standard(2, "l");
        let gens = [x(0).mul(&x(0)), x(0).mul(&x(1)), x(1).mul(&x(1))];
        assert_eq!(koszul_top_degree(&r, &gens, 0, 10).unwrap(), Some(1));
        assert_eq!(koszul_homology(&r, &gens, 1, 0, 10).unwrap().get(3), 2);
    }
}
