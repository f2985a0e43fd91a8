//! Buchberger's algorithm with optional cofactor tracking.
//!
//! Pairs are selected by sugar degree. A pair is skipped when its leading
//! monomials are coprime, or when the chain criterion finds a third element
//! whose leading monomial divides the lcm and whose pairs with both ends
//! have already been treated.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use super::terms::{self, Terms};
use super::Limits;
use crate::error::{Error, Result};
use crate::poly::{Monomial, MonomialOrder, Rational};

pub(crate) struct Element {
    pub poly: Terms,
    /// `poly = Σ cof[j] · inputs[j]`; empty when tracking is off.
    pub cof: Vec<Terms>,
    sugar: u32,
}

impl Element {
    fn lm(&self) -> &Monomial {
        &self.poly[0].0
    }
}

pub(crate) struct EngineOutput {
    pub basis: Vec<Terms>,
    pub reps: Option<Vec<Vec<Terms>>>,
}

struct Pair {
    i: usize,
    j: usize,
    sugar: u32,
    lcm: Monomial,
}

pub(crate) struct Engine<'a> {
    pub order: &'a MonomialOrder,
    pub limits: &'a Limits,
    pub track: bool,
    pub ninputs: usize,
    pub nvars: usize,
}

impl Engine<'_> {
    /// Computes the reduced Gröbner basis of the given (sorted) inputs.
    pub fn run(&self, inputs: &[Terms]) -> Result<EngineOutput> {
        let mut elems: Vec<Element> = Vec::new();
        for (k, p) in inputs.iter().enumerate() {
            if p.is_empty() {
                continue;
            }
            let mut cof = Vec::new();
            if self.track {
                cof = vec![Vec::new(); self.ninputs];
                cof[k] = vec![(Monomial::one(self.nvars), Rational::one())];
            }
            let sugar = p.iter().map(|(m, _)| m.degree()).max().unwrap_or(0);
            let e = self.make_monic(Element {
                poly: p.clone(),
                cof,
                sugar,
            });
            if e.lm().is_one() {
                return Ok(self.finish(vec![e]));
            }
            elems.push(e);
        }
        if elems.is_empty() {
            return Ok(EngineOutput {
                basis: Vec::new(),
                reps: self.track.then(Vec::new),
            });
        }

        let mut pending: Vec<Pair> = Vec::new();
        let mut open: BTreeSet<(usize, usize)> = BTreeSet::new();
        for j in 1..elems.len() {
            for i in 0..j {
                self.push_pair(&elems, &mut pending, &mut open, i, j);
            }
        }

        let mut processed = 0usize;
        while !pending.is_empty() {
            let best = (0..pending.len())
                .min_by(|&a, &b| {
                    let (pa, pb) = (&pending[a], &pending[b]);
                    pa.sugar
                        .cmp(&pb.sugar)
                        .then_with(|| self.order.cmp(&pa.lcm, &pb.lcm))
                        .then_with(|| (pa.i, pa.j).cmp(&(pb.i, pb.j)))
                })
                .unwrap();
            let pair = pending.swap_remove(best);
            let (i, j) = (pair.i, pair.j);

            let coprime = elems[i].lm().is_coprime(elems[j].lm());
            if !coprime && !self.chain_criterion(&elems, &open, i, j, &pair.lcm) {
                processed += 1;
                if processed > self.limits.max_pairs {
                    open.remove(&(i, j));
                    return Err(Error::Limit(format!(
                        "more than {} S-pairs processed",
                        self.limits.max_pairs
                    )));
                }
                let s = self.s_polynomial(&elems, i, j, &pair.lcm, pair.sugar);
                let reduced = self.reduce(s, &elems, None);
                if !reduced.poly.is_empty() {
                    self.check_bits(&reduced)?;
                    let e = self.make_monic(reduced);
                    if e.lm().is_one() {
                        return Ok(self.finish(vec![e]));
                    }
                    elems.push(e);
                    let k = elems.len() - 1;
                    for other in 0..k {
                        self.push_pair(&elems, &mut pending, &mut open, other, k);
                    }
                }
            }
            open.remove(&(i, j));
        }
        Ok(self.finish(self.interreduce(elems)))
    }

    fn push_pair(
        &self,
        elems: &[Element],
        pending: &mut Vec<Pair>,
        open: &mut BTreeSet<(usize, usize)>,
        i: usize,
        j: usize,
    ) {
        let (a, b) = (&elems[i], &elems[j]);
        let lcm = a.lm().lcm(b.lm());
        let sa = a.sugar + lcm.degree() - a.lm().degree();
        let sb = b.sugar + lcm.degree() - b.lm().degree();
        pending.push(Pair {
            i,
            j,
            sugar: sa.max(sb),
            lcm,
        });
        open.insert((i, j));
    }

    fn chain_criterion(
        &self,
        elems: &[Element],
        open: &BTreeSet<(usize, usize)>,
        i: usize,
        j: usize,
        lcm: &Monomial,
    ) -> bool {
        let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
        (0..elems.len()).any(|k| {
            k != i
                && k != j
                && !open.contains(&key(i, k))
                && !open.contains(&key(j, k))
                && elems[k].lm().divides(lcm)
        })
    }

    fn s_polynomial(&self, elems: &[Element], i: usize, j: usize, lcm: &Monomial, sugar: u32) -> Element {
        let (a, b) = (&elems[i], &elems[j]);
        let ma = lcm.checked_div(a.lm()).unwrap();
        let mb = lcm.checked_div(b.lm()).unwrap();
        let one = Rational::one();
        let minus_one = -Rational::one();
        // ma·a − mb·b, both monic
        let poly = terms::sub_scaled(
            &terms::sub_scaled(&[], &minus_one, &ma, &a.poly, self.order),
            &one,
            &mb,
            &b.poly,
            self.order,
        );
        let cof = if self.track {
            (0..self.ninputs)
                .map(|k| {
                    terms::sub_scaled(
                        &terms::sub_scaled(&[], &minus_one, &ma, &a.cof[k], self.order),
                        &one,
                        &mb,
                        &b.cof[k],
                        self.order,
                    )
                })
                .collect()
        } else {
            Vec::new()
        };
        Element { poly, cof, sugar }
    }

    /// Full reduction of `e` against the elements (excluding index `skip`).
    fn reduce(&self, mut e: Element, elems: &[Element], skip: Option<usize>) -> Element {
        let mut rem: Terms = Vec::new();
        let mut pos = 0usize;
        while pos < e.poly.len() {
            let (lt_m, lt_c) = (&e.poly[pos].0, &e.poly[pos].1);
            let divisor = elems
                .iter()
                .enumerate()
                .filter(|(k, _)| Some(*k) != skip)
                .find_map(|(k, g)| lt_m.checked_div(g.lm()).map(|q| (k, q)));
            match divisor {
                Some((k, q)) => {
                    let c = lt_c.clone();
                    let g = &elems[k];
                    e.poly = terms::sub_scaled(&e.poly[pos..], &c, &q, &g.poly, self.order);
                    pos = 0;
                    if self.track {
                        for (mine, theirs) in e.cof.iter_mut().zip(&g.cof) {
                            *mine = terms::sub_scaled(mine, &c, &q, theirs, self.order);
                        }
                    }
                }
                None => {
                    rem.push(e.poly[pos].clone());
                    pos += 1;
                }
            }
        }
        e.poly = rem;
        e
    }

    fn make_monic(&self, mut e: Element) -> Element {
        let lc = e.poly[0].1.clone();
        if !lc.is_one() {
            let inv = lc.recip();
            e.poly = terms::scale(&e.poly, &inv);
            for c in e.cof.iter_mut() {
                *c = terms::scale(c, &inv);
            }
        }
        e
    }

    fn check_bits(&self, e: &Element) -> Result<()> {
        let bits = terms::max_bits(&e.poly).max(e.cof.iter().map(|c| terms::max_bits(c)).max().unwrap_or(0));
        if bits > self.limits.max_bits {
            return Err(Error::Limit(format!(
                "coefficient size {bits} bits exceeds the cap of {} bits",
                self.limits.max_bits
            )));
        }
        Ok(())
    }

    fn interreduce(&self, elems: Vec<Element>) -> Vec<Element> {
        // drop elements whose leading monomial is divisible by another's
        let mut keep: Vec<Element> = Vec::new();
        for (k, e) in elems.iter().enumerate() {
            let redundant = elems.iter().enumerate().any(|(l, g)| {
                l != k && g.lm().divides(e.lm()) && (g.lm() != e.lm() || l < k)
            });
            if !redundant {
                keep.push(Element {
                    poly: e.poly.clone(),
                    cof: e.cof.clone(),
                    sugar: e.sugar,
                });
            }
        }
        for k in 0..keep.len() {
            let e = std::mem::replace(
                &mut keep[k],
                Element {
                    poly: Vec::new(),
                    cof: Vec::new(),
                    sugar: 0,
                },
            );
            let reduced = self.reduce(e, &keep, Some(k));
            keep[k] = self.make_monic(reduced);
        }
        keep.sort_by(|a, b| self.order.cmp(b.lm(), a.lm()));
        keep
    }

    fn finish(&self, elems: Vec<Element>) -> EngineOutput {
        let reps = self.track.then(|| elems.iter().map(|e| e.cof.clone()).collect());
        EngineOutput {
            basis: elems.into_iter().map(|e| e.poly).collect(),
            reps,
        }
    }
}

/// Reduces `f` by a reduced basis, returning the quotients per basis element
/// and the remainder.
pub(crate) fn reduce_with_quotients(
    f: &Terms,
    basis: &[Terms],
    order: &MonomialOrder,
) -> (Vec<Terms>, Terms) {
    let mut quotients: Vec<Terms> = vec![Vec::new(); basis.len()];
    let mut rem: Terms = Vec::new();
    let mut p = f.clone();
    let mut pos = 0usize;
    while pos < p.len() {
        let (lt_m, lt_c) = (&p[pos].0, &p[pos].1);
        let found = basis.iter().enumerate().find_map(|(k, g)| {
            lt_m.checked_div(&g[0].0).map(|q| (k, q))
        });
        match found {
            Some((k, q)) => {
                let c = lt_c / &basis[k][0].1;
                quotients[k] = terms::sub_scaled(&quotients[k], &-c.clone(), &q, &[(Monomial::one(q.nvars()), Rational::one())], order);
                p = terms::sub_scaled(&p[pos..], &c, &q, &basis[k], order);
                pos = 0;
            }
            None => {
                rem.push(p[pos].clone());
                pos += 1;
            }
        }
    }
    debug_assert!(rem.iter().all(|(_, c)| !c.is_zero()));
    (quotients, rem)
}
