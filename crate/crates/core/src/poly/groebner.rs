//! Buchberger's algorithm for submodules of graded free modules.
//!
//! Homogeneous input is processed degree by degree, which lets the same run
//! report which input generators are minimal. With tracking enabled every
//! basis element remembers its expression in the inputs, and every S-pair
//! that reduces to zero yields a syzygy; by Schreyer's theorem these syzygies
//! generate the full syzygy module of the inputs.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use super::monomial::Monomial;
use super::polynomial::{ModuleElement, Polynomial};
use super::ring::{GradedRing, ModuleOrder};
use crate::error::{Error, Result};
use crate::exact::Rational;

/// `(monomial, component, coefficient)`.
pub type Term = (Monomial, u32, Rational);

/// Order used for tracking vectors: component, then decreasing grevlex.
#[inline]
fn track_cmp(a: &(Monomial, u32), b: &(Monomial, u32)) -> Ordering {
    a.1.cmp(&b.1).then_with(|| b.0.cmp_grevlex(&a.0))
}

/// `a + c * m * b` for term lists sorted increasingly by `cmp`.
fn axpy_terms<F>(a: &[Term], c: &Rational, m: &Monomial, b: &[Term], cmp: F) -> Vec<Term>
where
    F: Fn(&(Monomial, u32), &(Monomial, u32)) -> Ordering,
{
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut bj: Option<(Monomial, u32)> = b.first().map(|t| (t.0.mul(m), t.1));
    while i < a.len() || j < b.len() {
        let ord = match (&bj, a.get(i)) {
            (None, _) => Ordering::Less,
            (Some(_), None) => Ordering::Greater,
            (Some(k), Some(t)) => cmp(&(t.0, t.1), k),
        };
        match ord {
            Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                let (mm, cc) = bj.unwrap();
                out.push((mm, cc, c * &b[j].2));
                j += 1;
                bj = b.get(j).map(|t| (t.0.mul(m), t.1));
            }
            Ordering::Equal => {
                let v = &a[i].2 + &(c * &b[j].2);
                if !v.is_zero() {
                    out.push((a[i].0, a[i].1, v));
                }
                i += 1;
                j += 1;
                bj = b.get(j).map(|t| (t.0.mul(m), t.1));
            }
        }
    }
    out
}

fn scale_terms(a: &[Term], c: &Rational, m: &Monomial) -> Vec<Term> {
    a.iter().map(|t| (t.0.mul(m), t.1, c * &t.2)).collect()
}

pub(crate) fn track_axpy(a: &[Term], c: &Rational, m: &Monomial, b: &[Term]) -> Vec<Term> {
    axpy_terms(a, c, m, b, track_cmp)
}

/// Dense module element to a term list sorted for `order` (largest first).
pub fn to_terms(v: &ModuleElement, order: &ModuleOrder) -> Vec<Term> {
    let mut t: Vec<Term> = Vec::new();
    for (c, p) in v.comps.iter().enumerate() {
        for (m, x) in p.terms() {
            t.push((*m, c as u32, x.clone()));
        }
    }
    t.sort_by(|a, b| order.cmp((&b.0, b.1 as usize), (&a.0, a.1 as usize)));
    t
}

pub fn from_terms(t: &[Term], rank: usize) -> ModuleElement {
    let mut comps: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); rank];
    for (m, c, x) in t {
        comps[*c as usize].push((*m, x.clone()));
    }
    ModuleElement { comps: comps.into_iter().map(Polynomial::from_terms).collect() }
}

#[derive(Clone, Debug, Default)]
pub struct GbOptions {
    /// Record expressions in the inputs and the syzygies among them.
    pub track: bool,
    /// Drop syzygies that involve non-minimal inputs; the rest generate the
    /// syzygies of the minimal inputs.
    pub minimal_syzygies_only: bool,
    /// Maximum number of reduction steps before giving up.
    pub budget: Option<u64>,
}

#[derive(Clone, Debug)]
pub struct GbElem {
    pub terms: Vec<Term>,
    pub deg: i64,
    pub track: Vec<Term>,
}

impl GbElem {
    pub fn lead(&self) -> (&Monomial, u32) {
        (&self.terms[0].0, self.terms[0].1)
    }
}

#[derive(Clone, Copy, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    alive: bool,
}

/// Raw output of a Buchberger run.
#[derive(Clone, Debug)]
pub struct GbRun {
    pub order: ModuleOrder,
    pub rank: usize,
    pub elems: Vec<GbElem>,
    pub input_minimal: Vec<bool>,
    /// Syzygies among the inputs, as term lists in the tracking order.
    pub syzygies: Vec<Vec<Term>>,
    pub steps: u64,
}

struct Engine<'a> {
    order: &'a ModuleOrder,
    rank: usize,
    opts: &'a GbOptions,
    elems: Vec<GbElem>,
    by_comp: Vec<Vec<usize>>,
    pairs: Vec<Pair>,
    queue: BinaryHeap<Reverse<(i64, usize)>>,
    syzygies: Vec<Vec<Term>>,
    steps: u64,
}

impl<'a> Engine<'a> {
    fn desc(&self) -> impl Fn(&(Monomial, u32), &(Monomial, u32)) -> Ordering + '_ {
        move |a, b| self.order.cmp((&b.0, b.1 as usize), (&a.0, a.1 as usize))
    }

    fn find_reducer(&self, m: &Monomial, comp: u32) -> Option<usize> {
        let mask = m.mask();
        self.by_comp[comp as usize].iter().copied().find(|&g| {
            let lm = &self.elems[g].terms[0].0;
            lm.mask() & !mask == 0 && lm.divides(m)
        })
    }

    fn charge(&mut self) -> Result<()> {
        self.steps += 1;
        if let Some(b) = self.opts.budget {
            if self.steps > b {
                return Err(Error::Budget(format!("Groebner basis exceeded {b} reduction steps")));
            }
        }
        Ok(())
    }

    /// Full reduction of `f` (and its tracking vector) by the current basis.
    fn reduce(&mut self, f: Vec<Term>, mut track: Vec<Term>) -> Result<(Vec<Term>, Vec<Term>)> {
        let mut p = f;
        let mut start = 0;
        let mut rem: Vec<Term> = Vec::new();
        while start < p.len() {
            let (m, comp) = (p[start].0, p[start].1);
            match self.find_reducer(&m, comp) {
                Some(g) => {
                    self.charge()?;
                    let c = -p[start].2.clone();
                    let g_lead = self.elems[g].terms[0].0;
                    let q = m.div(&g_lead);
                    let cmp = self.desc();
                    let np = axpy_terms(&p[start..], &c, &q, &self.elems[g].terms, &cmp);
                    drop(cmp);
                    p = np;
                    start = 0;
                    if self.opts.track {
                        track = track_axpy(&track, &c, &q, &self.elems[g].track);
                    }
                }
                None => {
                    rem.push(p[start].clone());
                    start += 1;
                }
            }
        }
        Ok((rem, track))
    }

    fn add_element(&mut self, mut terms: Vec<Term>, mut track: Vec<Term>) {
        let inv = terms[0].2.recip();
        if !inv.is_one() {
            for t in &mut terms {
                t.2 = &t.2 * &inv;
            }
            for t in &mut track {
                t.2 = &t.2 * &inv;
            }
        }
        let (lm, comp) = (terms[0].0, terms[0].1);
        let deg = self.order.term_degree(&lm, comp as usize);
        let n = self.elems.len();

        // Gebauer-Moeller: drop queued pairs whose lcm the new lead divides
        // strictly.
        for p in self.pairs.iter_mut().filter(|p| p.alive) {
            if self.elems[p.i].terms[0].1 != comp || !lm.divides(&p.lcm) {
                continue;
            }
            let li = self.elems[p.i].terms[0].0.lcm(&lm);
            let lj = self.elems[p.j].terms[0].0.lcm(&lm);
            if li != p.lcm && lj != p.lcm {
                p.alive = false;
            }
        }

        let cands: Vec<(usize, Monomial)> = self.by_comp[comp as usize].iter().map(|&i| (i, self.elems[i].terms[0].0.lcm(&lm))).collect();
        let mut keep = vec![true; cands.len()];
        for (a, (_, la)) in cands.iter().enumerate() {
            if cands.iter().any(|(_, lb)| lb != la && lb.divides(la)) {
                keep[a] = false;
            }
        }
        let ideal = self.rank == 1;
        let mut seen: Vec<Monomial> = Vec::new();
        let mut new_pairs = Vec::new();
        for (a, &(i, l)) in cands.iter().enumerate() {
            if !keep[a] || seen.contains(&l) {
                continue;
            }
            seen.push(l);
            let group: Vec<usize> = cands.iter().filter(|c| c.1 == l).map(|c| c.0).collect();
            if ideal {
                if let Some(&cop) = group.iter().find(|&&g| self.elems[g].terms[0].0.is_coprime(&lm)) {
                    if self.opts.track {
                        let syz = self.koszul_syzygy(cop, &terms, &track);
                        self.syzygies.push(syz);
                    }
                    continue;
                }
            }
            new_pairs.push((i, l));
        }

        self.elems.push(GbElem { terms, deg, track });
        self.by_comp[comp as usize].push(n);
        for (i, l) in new_pairs {
            let d = self.order.term_degree(&l, comp as usize);
            self.pairs.push(Pair { i, j: n, lcm: l, alive: true });
            self.queue.push(Reverse((d, self.pairs.len() - 1)));
        }
    }

    /// `g_new * T_i - g_i * T_new` for coprime leading monomials (rank one).
    fn koszul_syzygy(&self, i: usize, new_terms: &[Term], new_track: &[Term]) -> Vec<Term> {
        let mut acc: Vec<Term> = Vec::new();
        for t in new_terms {
            acc = track_axpy(&acc, &t.2, &t.0, &self.elems[i].track);
        }
        for t in &self.elems[i].terms {
            acc = track_axpy(&acc, &-t.2.clone(), &t.0, new_track);
        }
        acc
    }

    fn s_pair(&self, p: &Pair) -> (Vec<Term>, Vec<Term>) {
        let gi = &self.elems[p.i];
        let gj = &self.elems[p.j];
        let mi = p.lcm.div(&gi.terms[0].0);
        let mj = p.lcm.div(&gj.terms[0].0);
        let a = scale_terms(&gi.terms[1..], &Rational::ONE, &mi);
        let cmp = self.desc();
        let s = axpy_terms(&a, &-Rational::ONE, &mj, &gj.terms[1..], &cmp);
        let track = if self.opts.track {
            let ti = scale_terms(&gi.track, &Rational::ONE, &mi);
            track_axpy(&ti, &-Rational::ONE, &mj, &gj.track)
        } else {
            Vec::new()
        };
        (s, track)
    }
}

/// Runs Buchberger on `inputs` (term lists sorted for `order`).
pub fn run(order: &ModuleOrder, inputs: Vec<Vec<Term>>, opts: &GbOptions) -> Result<GbRun> {
    let rank = order.rank();
    let mut eng = Engine {
        order,
        rank,
        opts,
        elems: Vec::new(),
        by_comp: vec![Vec::new(); rank],
        pairs: Vec::new(),
        queue: BinaryHeap::new(),
        syzygies: Vec::new(),
        steps: 0,
    };
    let homogeneous = inputs.iter().all(|f| {
        f.first().is_none_or(|t0| {
            let d = order.term_degree(&t0.0, t0.1 as usize);
            f.iter().all(|t| order.term_degree(&t.0, t.1 as usize) == d)
        })
    });
    let mut input_minimal = vec![false; inputs.len()];
    let mut pending: Vec<(i64, usize)> = Vec::new();
    for (k, f) in inputs.iter().enumerate() {
        match f.first() {
            None => {
                if opts.track && !opts.minimal_syzygies_only {
                    eng.syzygies.push(vec![(Monomial::ONE, k as u32, Rational::ONE)]);
                }
            }
            Some(t) => {
                let d = if homogeneous { order.term_degree(&t.0, t.1 as usize) } else { i64::MIN };
                pending.push((d, k));
            }
        }
    }
    pending.sort();
    let mut next_input = 0;
    loop {
        let next_pair_deg = loop {
            match eng.queue.peek() {
                Some(Reverse((d, idx))) if !eng.pairs[*idx].alive => {
                    let _ = (d, idx);
                    eng.queue.pop();
                }
                Some(Reverse((d, _))) => break Some(*d),
                None => break None,
            }
        };
        let next_in_deg = pending.get(next_input).map(|p| p.0);
        let take_pair = match (next_pair_deg, next_in_deg) {
            (None, None) => break,
            (Some(_), None) => true,
            (None, Some(_)) => false,
            (Some(a), Some(b)) => a <= b,
        };
        if take_pair {
            let Reverse((_, idx)) = eng.queue.pop().unwrap();
            let p = eng.pairs[idx];
            eng.pairs[idx].alive = false;
            let (s, track) = eng.s_pair(&p);
            let (r, track) = eng.reduce(s, track)?;
            if r.is_empty() {
                if opts.track {
                    eng.syzygies.push(track);
                }
            } else {
                eng.add_element(r, track);
            }
        } else {
            let (_, k) = pending[next_input];
            next_input += 1;
            let track = if opts.track { vec![(Monomial::ONE, k as u32, Rational::ONE)] } else { Vec::new() };
            let (r, track) = eng.reduce(inputs[k].clone(), track)?;
            if r.is_empty() {
                if opts.track && !opts.minimal_syzygies_only {
                    eng.syzygies.push(track);
                }
            } else {
                input_minimal[k] = true;
                eng.add_element(r, track);
            }
        }
    }
    Ok(GbRun { order: order.clone(), rank, elems: eng.elems, input_minimal, syzygies: eng.syzygies, steps: eng.steps })
}

/// Reduced Groebner basis of a submodule of a graded free module.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    pub ring: GradedRing,
    pub order: ModuleOrder,
    pub rank: usize,
    elems: Vec<Vec<Term>>,
    pub reduced: bool,
}

impl GroebnerBasis {
    /// Minimalizes and interreduces the basis found by a run.
    pub fn from_run(ring: &GradedRing, run: &GbRun) -> Self {
        let mut elems: Vec<Vec<Term>> = Vec::new();
        let leads: Vec<(Monomial, u32)> = run.elems.iter().map(|e| (e.terms[0].0, e.terms[0].1)).collect();
        for (k, e) in run.elems.iter().enumerate() {
            let (m, c) = leads[k];
            let redundant = leads.iter().enumerate().any(|(l, (n, d))| l != k && *d == c && n.divides(&m) && (*n != m || l < k));
            if !redundant {
                elems.push(e.terms.clone());
            }
        }
        elems.sort_by(|a, b| run.order.cmp((&a[0].0, a[0].1 as usize), (&b[0].0, b[0].1 as usize)));
        let mut gb = GroebnerBasis { ring: ring.clone(), order: run.order.clone(), rank: run.rank, elems, reduced: false };
        let n = gb.elems.len();
        for k in 0..n {
            let f = gb.elems[k].clone();
            let head = f[0].clone();
            let tail = gb.reduce_terms(&f[1..], Some(k));
            let mut g = vec![head];
            g.extend(tail);
            gb.elems[k] = g;
        }
        gb.reduced = true;
        gb
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elements(&self) -> Vec<ModuleElement> {
        self.elems.iter().map(|t| from_terms(t, self.rank)).collect()
    }

    pub fn polynomials(&self) -> Vec<Polynomial> {
        assert_eq!(self.rank, 1);
        self.elements().into_iter().map(|mut e| e.comps.remove(0)).collect()
    }

    /// Leading monomials grouped by component.
    pub fn leading_monomials(&self) -> Vec<Vec<Monomial>> {
        let mut out = vec![Vec::new(); self.rank];
        for e in &self.elems {
            out[e[0].1 as usize].push(e[0].0);
        }
        out
    }

    pub fn is_unit(&self) -> bool {
        self.elems.iter().any(|e| e[0].0.is_one())
    }

    fn reduce_terms(&self, f: &[Term], skip: Option<usize>) -> Vec<Term> {
        let order = &self.order;
        let desc = |a: &(Monomial, u32), b: &(Monomial, u32)| order.cmp((&b.0, b.1 as usize), (&a.0, a.1 as usize));
        let mut p = f.to_vec();
        let mut start = 0;
        let mut rem = Vec::new();
        while start < p.len() {
            let (m, comp) = (p[start].0, p[start].1);
            let red = self.elems.iter().enumerate().find(|(k, g)| Some(*k) != skip && g[0].1 == comp && g[0].0.divides(&m));
            match red {
                Some((_, g)) => {
                    let c = &-p[start].2.clone() * &g[0].2.recip();
                    let q = m.div(&g[0].0);
                    p = axpy_terms(&p[start..], &c, &q, g, desc);
                    start = 0;
                }
                None => {
                    rem.push(p[start].clone());
                    start += 1;
                }
            }
        }
        rem
    }

    pub fn normal_form(&self, v: &ModuleElement) -> ModuleElement {
        let t = to_terms(v, &self.order);
        from_terms(&self.reduce_terms(&t, None), self.rank)
    }

    pub fn normal_form_poly(&self, p: &Polynomial) -> Polynomial {
        let mut e = self.normal_form(&ModuleElement { comps: vec![p.clone()] });
        e.comps.remove(0)
    }

    pub fn contains(&self, v: &ModuleElement) -> bool {
        self.normal_form(v).is_zero()
    }
}

/// Groebner basis of the submodule of R^rank (basis degrees `shifts`)
/// generated by `gens`, in the degree-compatible term-over-position order.
pub fn buchberger_module(ring: &GradedRing, shifts: &[i64], gens: &[ModuleElement], budget: Option<u64>) -> Result<GroebnerBasis> {
    let order = ModuleOrder::top(ring, shifts.to_vec());
    let inputs = gens.iter().map(|g| to_terms(g, &order)).collect();
    let opts = GbOptions { track: false, minimal_syzygies_only: false, budget };
    let run = run(&order, inputs, &opts)?;
    Ok(GroebnerBasis::from_run(ring, &run))
}

/// Reduced Groebner basis of a polynomial ideal.
pub fn buchberger(ring: &GradedRing, gens: &[Polynomial], budget: Option<u64>) -> Result<GroebnerBasis> {
    let gens: Vec<ModuleElement> = gens.iter().map(|p| ModuleElement { comps: vec![p.clone()] }).collect();
    buchberger_module(ring, &[0], &gens, budget)
}

/// Generators of the syzygy module of `gens`, as elements of the free module
/// with one basis vector per input (of the input's degree).
pub fn syzygy_module(ring: &GradedRing, shifts: &[i64], gens: &[ModuleElement], budget: Option<u64>) -> Result<Vec<ModuleElement>> {
    let order = ModuleOrder::top(ring, shifts.to_vec());
    let inputs = gens.iter().map(|g| to_terms(g, &order)).collect();
    let opts = GbOptions { track: true, minimal_syzygies_only: false, budget };
    let run = run(&order, inputs, &opts)?;
    Ok(run.syzygies.iter().map(|s| from_terms(s, gens.len())).collect())
}

/// Minimal generators of the submodule spanned by homogeneous `gens` and the
/// syzygies among those minimal generators (indexed within the minimal set).
pub struct MinimalSyzygies {
    pub minimal: Vec<usize>,
    pub syzygies: Vec<ModuleElement>,
    pub run: GbRun,
}

pub fn minimal_generators_and_syzygies(
    ring: &GradedRing,
    shifts: &[i64],
    gens: &[ModuleElement],
    budget: Option<u64>,
) -> Result<MinimalSyzygies> {
    let order = ModuleOrder::top(ring, shifts.to_vec());
    let inputs = gens.iter().map(|g| to_terms(g, &order)).collect();
    let opts = GbOptions { track: true, minimal_syzygies_only: true, budget };
    let run = run(&order, inputs, &opts)?;
    let minimal: Vec<usize> = (0..gens.len()).filter(|&k| run.input_minimal[k]).collect();
    let mut index = vec![usize::MAX; gens.len()];
    for (new, &old) in minimal.iter().enumerate() {
        index[old] = new;
    }
    let syzygies = run
        .syzygies
        .iter()
        .map(|s| {
            let t: Vec<Term> = s.iter().map(|(m, c, x)| (*m, index[*c as usize] as u32, x.clone())).collect();
            debug_assert!(s.iter().all(|(_, c, _)| index[*c as usize] != usize::MAX));
            from_terms(&t, minimal.len())
        })
        .collect();
    Ok(MinimalSyzygies { minimal, syzygies, run })
}

/// Expresses each target as a combination of the inputs of a tracked run.
/// Returns `None` for a target outside the submodule.
pub fn lift(run: &GbRun, ninputs: usize, targets: &[ModuleElement], budget: Option<u64>) -> Result<Vec<Option<ModuleElement>>> {
    let opts = GbOptions { track: true, minimal_syzygies_only: true, budget };
    let mut eng = Engine {
        order: &run.order,
        rank: run.rank,
        opts: &opts,
        elems: run.elems.clone(),
        by_comp: vec![Vec::new(); run.rank],
        pairs: Vec::new(),
        queue: BinaryHeap::new(),
        syzygies: Vec::new(),
        steps: 0,
    };
    for (k, e) in eng.elems.iter().enumerate() {
        eng.by_comp[e.terms[0].1 as usize].push(k);
    }
    let mut out = Vec::new();
    for t in targets {
        let terms = to_terms(t, &run.order);
        let (r, track) = eng.reduce(terms, Vec::new())?;
        if r.is_empty() {
            // track = -(combination), since we started from zero
            let neg: Vec<Term> = track.into_iter().map(|(m, c, x)| (m, c, -x)).collect();
            out.push(Some(from_terms(&neg, ninputs)));
        } else {
            out.push(None);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(n: usize) -> GradedRing {
        GradedRing::standard(n, "x")
    }

    fn x(i: usize) -> Polynomial {
        Polynomial::var(i)
    }

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn twisted_cubic() {
        // 2x2 minors of [[x0,x1,x2],[x1,x2,x3]]
        let r = ring(4);
        let gens =
            vec![x(0).mul(&x(2)).sub(&x(1).mul(&x(1))), x(0).mul(&x(3)).sub(&x(1).mul(&x(2))), x(1).mul(&x(3)).sub(&x(2).mul(&x(2)))];
        let gb = buchberger(&r, &gens, None).unwrap();
        assert_eq!(gb.len(), 3);
        for g in &gens {
            assert!(gb.normal_form_poly(g).is_zero());
        }
        assert!(!gb.normal_form_poly(&x(0).mul(&x(0))).is_zero());
    }

    #[test]
    fn unit_ideal() {
        let r = ring(2);
        let gb = buchberger(&r, &[x(0).add(&Polynomial::constant(q(1))), x(0)], None).unwrap();
        assert!(gb.is_unit());
    }

    #[test]
    fn syzygies_of_monomials() {
        let r = ring(3);
        let gens: Vec<ModuleElement> =
            [x(0).mul(&x(1)), x(1).mul(&x(2)), x(0).mul(&x(2))].iter().map(|p| ModuleElement::from_comps(vec![p.clone()])).collect();
        let syz = syzygy_module(&r, &[0], &gens, None).unwrap();
        for s in &syz {
            let mut acc = Polynomial::zero();
            for (k, g) in gens.iter().enumerate() {
                acc = acc.add(&s.comps[k].mul(&g.comps[0]));
            }
            assert!(acc.is_zero());
        }
        // the syzygy module of three such monomials is generated in degree 3
        assert!(syz.len() >= 2);
    }

    #[test]
    fn budget_is_enforced() {
        let r = ring(4);
        let gens =
            vec![x(0).mul(&x(2)).sub(&x(1).mul(&x(1))), x(0).mul(&x(3)).sub(&x(1).mul(&x(2))), x(1).mul(&x(3)).sub(&x(2).mul(&x(2)))];
        assert!(matches!(buchberger(&r, &gens, Some(1)), Err(Error::Budget(_))));
    }

    #[test]
    fn lift_recovers_combination() {
        let r = ring(2);
        let gens: Vec<ModuleElement> =
            [x(0).mul(&x(0)), x(0).mul(&x(1))].iter().map(|p| ModuleElement::from_comps(vec![p.clone()])).collect();
        let order = ModuleOrder::top(&r, vec![0]);
        let inputs = gens.iter().map(|g| to_terms(g, &order)).collect();
        let opts = GbOptions { track: true, ..Default::default() };
        let run = run(&order, inputs, &opts).unwrap();
        let target = ModuleElement::from_comps(vec![x(0).mul(&x(0)).mul(&x(1)).add(&x(0).mul(&x(1)).mul(&x(1)))]);
        let c = lift(&run, 2, std::slice::from_ref(&target), None).unwrap()[0].clone().unwrap();
        let back = c.comps[0].mul(&gens[0].comps[0]).add(&c.comps[1].mul(&gens[1].comps[0]));
        assert_eq!(back, target.comps[0]);
    }
}
