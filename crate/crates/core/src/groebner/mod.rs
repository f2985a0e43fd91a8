//! Gröbner bases with cofactor tracking, ideal membership with witnesses,
//! elimination, saturation and radical membership.

mod engine;
mod terms;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{Degree, Monomial, MonomialOrder, Poly, RatMatrix, Ring};
use engine::{reduce_with_quotients, Engine};
use terms::Terms;

/// Caps on Gröbner computations. Exceeding either yields [`Error::Limit`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_pairs: usize,
    pub max_bits: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_pairs: 50_000,
            max_bits: 1_000_000,
        }
    }
}

/// A reduced Gröbner basis together with, for every basis element, its
/// expression as a combination of the ideal's generators.
#[derive(Debug, Clone)]
pub struct TrackedBasis {
    pub order: MonomialOrder,
    pub inputs: Vec<Poly>,
    pub basis: Vec<Poly>,
    /// `basis[k] = Σ_j representation[k][j] · inputs[j]`.
    pub representation: Vec<Vec<Poly>>,
    ring: Arc<Ring>,
    basis_terms: Vec<Terms>,
}

impl TrackedBasis {
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn is_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].is_one()
    }

    /// Re-expands every tracked representation and compares it with the
    /// basis element.
    pub fn verify_representation(&self) -> bool {
        self.basis.iter().zip(&self.representation).all(|(b, rep)| {
            let sum = rep
                .iter()
                .zip(&self.inputs)
                .fold(Poly::zero(&self.ring), |acc, (c, g)| &acc + &(c * g));
            sum == *b
        })
    }

    /// Quotients `q` and remainder `r` with `f = Σ q_k basis[k] + r`.
    fn divide(&self, f: &Poly) -> (Vec<Poly>, Poly) {
        let (q, r) = reduce_with_quotients(&terms::from_poly(f, &self.order), &self.basis_terms, &self.order);
        (
            q.iter().map(|t| terms::to_poly(&self.ring, t)).collect(),
            terms::to_poly(&self.ring, &r),
        )
    }
}

type BasisCache = HashMap<(MonomialOrder, bool), Arc<TrackedBasis>>;

/// An ideal given by generators, with per-order cached Gröbner bases.
#[derive(Clone)]
pub struct Ideal {
    ring: Arc<Ring>,
    generators: Vec<Poly>,
    limits: Limits,
    cache: Arc<Mutex<BasisCache>>,
}

impl std::fmt::Debug for Ideal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        write!(f, "Ideal<{}>", gens.join(", "))
    }
}

impl Ideal {
    /// Zero generators are dropped.
    pub fn new(ring: &Arc<Ring>, generators: Vec<Poly>) -> Result<Ideal> {
        for g in &generators {
            if **g.ring() != **ring {
                return Err(Error::input("ideal generator lives in a different ring"));
            }
        }
        Ok(Ideal {
            ring: ring.clone(),
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
            limits: Limits::default(),
            cache: Arc::default(),
        })
    }

    pub fn with_limits(mut self, limits: Limits) -> Ideal {
        self.limits = limits;
        self.cache = Arc::default();
        self
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    /// A new ideal in the same ring (and with the same limits).
    pub fn derived(&self, generators: Vec<Poly>) -> Result<Ideal> {
        Ok(Ideal::new(&self.ring, generators)?.with_limits(self.limits))
    }

    /// `self + ⟨extra⟩`, with the extra generators listed first.
    pub fn with_leading(&self, extra: &[Poly]) -> Result<Ideal> {
        let gens = extra.iter().cloned().chain(self.generators.iter().cloned()).collect();
        self.derived(gens)
    }

    /// Moves the ideal into a ring containing all its variables by name.
    pub fn embed(&self, ring: &Arc<Ring>) -> Result<Ideal> {
        let gens = self
            .generators
            .iter()
            .map(|g| g.embed(ring))
            .collect::<Result<Vec<_>>>()?;
        Ok(Ideal::new(ring, gens)?.with_limits(self.limits))
    }

    pub fn linear_change(&self, l: &RatMatrix) -> Result<Ideal> {
        let gens = self
            .generators
            .iter()
            .map(|g| g.linear_change(l))
            .collect::<Result<Vec<_>>>()?;
        self.derived(gens)
    }

    fn compute(&self, order: &MonomialOrder, track: bool) -> Result<Arc<TrackedBasis>> {
        if let Some(b) = self.cache.lock().unwrap().get(&(order.clone(), track)) {
            return Ok(b.clone());
        }
        if !track {
            if let Some(b) = self.cache.lock().unwrap().get(&(order.clone(), true)) {
                return Ok(b.clone());
            }
        }
        let inputs: Vec<Terms> = self.generators.iter().map(|g| terms::from_poly(g, order)).collect();
        let engine = Engine {
            order,
            limits: &self.limits,
            track,
            ninputs: inputs.len(),
            nvars: self.ring.nvars(),
        };
        let out = engine.run(&inputs)?;
        let basis: Vec<Poly> = out.basis.iter().map(|t| terms::to_poly(&self.ring, t)).collect();
        let representation = match out.reps {
            Some(reps) => reps
                .iter()
                .map(|row| row.iter().map(|t| terms::to_poly(&self.ring, t)).collect())
                .collect(),
            None => Vec::new(),
        };
        let tb = Arc::new(TrackedBasis {
            order: order.clone(),
            inputs: self.generators.clone(),
            basis,
            representation,
            ring: self.ring.clone(),
            basis_terms: out.basis,
        });
        if track && !tb.verify_representation() {
            return Err(Error::Internal("tracked representation does not re-expand".into()));
        }
        self.cache
            .lock()
            .unwrap()
            .insert((order.clone(), track), tb.clone());
        Ok(tb)
    }

    /// Reduced Gröbner basis without cofactor tracking.
    pub fn reduced_basis(&self, order: &MonomialOrder) -> Result<Vec<Poly>> {
        Ok(self.compute(order, false)?.basis.clone())
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.compute(&MonomialOrder::GRevLex, false)?.is_unit())
    }

    /// Normal form with respect to the graded reverse lex basis.
    pub fn normal_form(&self, f: &Poly) -> Result<Poly> {
        let b = self.compute(&MonomialOrder::GRevLex, false)?;
        Ok(normal_form(f, &b))
    }

    pub fn contains(&self, f: &Poly) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }
}

/// Multivariate division: `f = Σ q_i d_i + r` where no term of `r` is
/// divisible by a leading term of a nonzero divisor.
pub fn divide(f: &Poly, divisors: &[Poly], order: &MonomialOrder) -> Result<(Vec<Poly>, Poly)> {
    for d in divisors {
        if **d.ring() != **f.ring() {
            return Err(Error::input("divisor lives in a different ring"));
        }
    }
    let ring = f.ring();
    let nonzero: Vec<usize> = (0..divisors.len()).filter(|&i| !divisors[i].is_zero()).collect();
    let dterms: Vec<Terms> = nonzero.iter().map(|&i| terms::from_poly(&divisors[i], order)).collect();
    let (q, r) = reduce_with_quotients(&terms::from_poly(f, order), &dterms, order);
    let mut quotients = vec![Poly::zero(ring); divisors.len()];
    for (k, &i) in nonzero.iter().enumerate() {
        quotients[i] = terms::to_poly(ring, &q[k]);
    }
    Ok((quotients, terms::to_poly(ring, &r)))
}

/// Reduced Gröbner basis of `ideal` with tracked cofactors.
pub fn buchberger(ideal: &Ideal, order: &MonomialOrder) -> Result<Arc<TrackedBasis>> {
    ideal.compute(order, true)
}

pub fn normal_form(f: &Poly, basis: &TrackedBasis) -> Poly {
    basis.divide(f).1
}

/// Outcome of an ideal membership test.
#[derive(Debug, Clone)]
pub struct Membership {
    pub is_member: bool,
    /// When a member: `f = Σ cofactors[j] · generators[j]`.
    pub cofactors: Option<Vec<Poly>>,
}

pub fn member(f: &Poly, ideal: &Ideal) -> Result<Membership> {
    let b = buchberger(ideal, &MonomialOrder::GRevLex)?;
    Ok(member_in(f, &b))
}

fn member_in(f: &Poly, b: &TrackedBasis) -> Membership {
    let (q, r) = b.divide(f);
    if !r.is_zero() {
        return Membership {
            is_member: false,
            cofactors: None,
        };
    }
    let ring = b.ring();
    let mut cof = vec![Poly::zero(ring); b.inputs.len()];
    for (qk, rep) in q.iter().zip(&b.representation) {
        if qk.is_zero() {
            continue;
        }
        for (c, r) in cof.iter_mut().zip(rep) {
            *c = &*c + &(qk * r);
        }
    }
    Membership {
        is_member: true,
        cofactors: Some(cof),
    }
}

/// Generators of `I ∩ ℚ[keep]`, returned in the same ambient ring.
pub fn eliminate(ideal: &Ideal, keep: &[usize]) -> Result<Ideal> {
    let n = ideal.ring().nvars();
    let elim: Vec<usize> = (0..n).filter(|i| !keep.contains(i)).collect();
    if elim.is_empty() {
        let gb = ideal.reduced_basis(&MonomialOrder::GRevLex)?;
        return ideal.derived(gb);
    }
    let order = MonomialOrder::eliminating(n, &elim);
    let gb = ideal.reduced_basis(&order)?;
    let kept = gb
        .into_iter()
        .filter(|g| g.support_vars().iter().all(|v| keep.contains(v)))
        .collect();
    ideal.derived(kept)
}

/// `I : s^∞`, via elimination of an auxiliary variable `u` from
/// `I + ⟨1 − u·s⟩`.
pub fn saturate(ideal: &Ideal, s: &Poly) -> Result<Ideal> {
    if s.is_zero() {
        return Err(Error::input("cannot saturate by the zero polynomial"));
    }
    if s.as_constant().is_some() {
        let gb = ideal.reduced_basis(&MonomialOrder::GRevLex)?;
        return ideal.derived(gb);
    }
    let ring = ideal.ring();
    let u_name = ring.fresh_name("u");
    let ext = ring.extended(&[u_name])?;
    let u = Poly::var(&ext, ring.nvars());
    let rab = &Poly::one(&ext) - &(&u * &s.embed(&ext)?);
    let big = ideal.embed(&ext)?.with_leading(&[rab])?;
    let keep: Vec<usize> = (0..ring.nvars()).collect();
    let eliminated = eliminate(&big, &keep)?;
    let gens = eliminated
        .generators()
        .iter()
        .map(|g| g.embed(ring))
        .collect::<Result<Vec<_>>>()?;
    ideal.derived(gens)
}

/// Outcome of a radical membership test.
#[derive(Debug, Clone)]
pub struct RadicalMembership {
    pub is_member: bool,
    /// Smallest exponent found with `f^n ∈ I`.
    pub n: Option<u32>,
    /// `f^n = Σ cofactors[j] · generators[j]`.
    pub cofactors: Option<Vec<Poly>>,
}

/// Radical membership by the Rabinowitsch trick: `f ∈ √I` iff
/// `1 ∈ I + ⟨1 − y·f⟩`. The y-degree of that certificate bounds the exponent,
/// which is then minimised by direct membership tests.
pub fn radical_member(f: &Poly, ideal: &Ideal) -> Result<RadicalMembership> {
    let ring = ideal.ring();
    let y_name = ring.fresh_name("y_rab");
    let ext = ring.extended(&[y_name])?;
    let y = Poly::var(&ext, ring.nvars());
    let fe = f.embed(&ext)?;
    let rab = &Poly::one(&ext) - &(&y * &fe);
    let big = ideal.embed(&ext)?.with_leading(&[rab])?;
    let witness = member(&Poly::one(&ext), &big)?;
    let Some(cof) = witness.cofactors else {
        return Ok(RadicalMembership {
            is_member: false,
            n: None,
            cofactors: None,
        });
    };
    let ydeg = cof[1..]
        .iter()
        .map(|c| c.degree_in(ring.nvars()).finite().unwrap_or(0))
        .max()
        .unwrap_or(0)
        .max(1);
    let basis = buchberger(ideal, &MonomialOrder::GRevLex)?;
    let mut power = f.clone();
    for k in 1..=ydeg {
        let m = member_in(&power, &basis);
        if m.is_member {
            return Ok(RadicalMembership {
                is_member: true,
                n: Some(k),
                cofactors: m.cofactors,
            });
        }
        power = &power * f;
    }
    Err(Error::Internal(format!(
        "Rabinowitsch certificate of y-degree {ydeg} but f^{ydeg} is not in the ideal"
    )))
}

/// Equality of ideals via their reduced graded reverse lex bases.
pub fn ideal_equal(a: &Ideal, b: &Ideal) -> Result<bool> {
    if **a.ring() != **b.ring() {
        return Err(Error::input("ideals live in different rings"));
    }
    let ga = a.reduced_basis(&MonomialOrder::GRevLex)?;
    let gb = b.reduced_basis(&MonomialOrder::GRevLex)?;
    Ok(ga == gb)
}

/// Leading monomials of the reduced graded reverse lex basis.
pub fn leading_monomials(ideal: &Ideal) -> Result<Vec<Monomial>> {
    let gb = ideal.reduced_basis(&MonomialOrder::GRevLex)?;
    Ok(gb
        .iter()
        .map(|g| g.leading_term(&MonomialOrder::GRevLex).unwrap().0.clone())
        .collect())
}

pub(crate) fn is_monic_in(p: &Poly, var: usize) -> bool {
    match p.degree_in(var) {
        Degree::Finite(d) if d > 0 => p
            .coeff_of_power(var, d)
            .as_constant()
            .is_some_and(|c| !c.is_zero()),
        _ => false,
    }
}

#[cfg(test)]
mod tests;
