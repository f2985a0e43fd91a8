use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::RatMatrix;
use super::monomial::{Monomial, MonomialOrder};
use super::rational::{self, Rational};
use crate::error::{Error, Result};

/// An ordered list of distinct variable names.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    vars: Vec<String>,
}

impl Ring {
    pub fn new<S: Into<String>>(vars: impl IntoIterator<Item = S>) -> Result<Arc<Ring>> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        for (i, v) in vars.iter().enumerate() {
            if !is_identifier(v) {
                return Err(Error::input(format!("`{v}` is not a valid variable name")));
            }
            if vars[..i].contains(v) {
                return Err(Error::input(format!("duplicate variable `{v}`")));
            }
        }
        Ok(Arc::new(Ring { vars }))
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// A name starting with `base` that is not yet a variable of this ring.
    pub fn fresh_name(&self, base: &str) -> String {
        let mut name = base.to_string();
        while self.index_of(&name).is_some() {
            name.push('_');
        }
        name
    }

    /// This ring followed by `extra` new variables.
    pub fn extended<S: AsRef<str>>(&self, extra: &[S]) -> Result<Arc<Ring>> {
        Ring::new(
            self.vars
                .iter()
                .cloned()
                .chain(extra.iter().map(|s| s.as_ref().to_string())),
        )
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Degree of a polynomial; the zero polynomial has degree `NegInfinity`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::Finite(d) => Some(d),
            Degree::NegInfinity => None,
        }
    }
}

/// Sparse multivariate polynomial over the rationals.
#[derive(Clone)]
pub struct Poly {
    ring: Arc<Ring>,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring)
            && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self)
    }
}

impl Poly {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Poly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn constant(ring: &Arc<Ring>, c: Rational) -> Self {
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn from_int(ring: &Arc<Ring>, c: i64) -> Self {
        Self::constant(ring, rational::int(c))
    }

    pub fn var(ring: &Arc<Ring>, index: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars(), index, 1), Rational::one())
    }

    /// The variable called `name`.
    pub fn var_named(ring: &Arc<Ring>, name: &str) -> Result<Self> {
        let i = ring
            .index_of(name)
            .ok_or_else(|| Error::input(format!("unknown variable `{name}`")))?;
        Ok(Self::var(ring, i))
    }

    pub fn monomial(ring: &Arc<Ring>, m: Monomial, c: Rational) -> Self {
        debug_assert_eq!(m.nvars(), ring.nvars());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn from_terms(ring: &Arc<Ring>, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Poly::zero(ring);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The constant value, if this polynomial is constant (zero included).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// Terms in descending order under `order`.
    pub fn sorted_terms(&self, order: &MonomialOrder) -> Vec<(&Monomial, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.cmp(b.0, a.0));
        v
    }

    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn total_degree(&self) -> Degree {
        self.terms
            .keys()
            .map(|m| m.degree())
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    pub fn degree_in(&self, var: usize) -> Degree {
        self.terms
            .keys()
            .map(|m| m.exp(var))
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    /// Coefficient of `var^k`, as a polynomial in the remaining variables.
    pub fn coeff_of_power(&self, var: usize, k: u32) -> Poly {
        let terms = self.terms.iter().filter(|(m, _)| m.exp(var) == k).map(|(m, c)| {
            let mut m = m.clone();
            m.set_exp(var, 0);
            (m, c.clone())
        });
        Poly::from_terms(&self.ring, terms)
    }

    /// Variables that occur in some term.
    pub fn support_vars(&self) -> Vec<usize> {
        let mut used = vec![false; self.ring.nvars()];
        for m in self.terms.keys() {
            for i in m.support() {
                used[i] = true;
            }
        }
        (0..used.len()).filter(|&i| used[i]).collect()
    }

    /// Largest bit size over the coefficients.
    pub fn max_coeff_bits(&self) -> u64 {
        self.terms.values().map(rational::bit_size).max().unwrap_or(0)
    }

    fn check_ring(&self, other: &Poly) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::input(format!(
                "ring mismatch: ({}) vs ({})",
                self.ring.vars().join(", "),
                other.ring.vars().join(", ")
            )))
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        let mut out = Poly::zero(&self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.ring);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn partial_derivative(&self, var: usize) -> Poly {
        let terms = self.terms.iter().filter(|(m, _)| m.exp(var) > 0).map(|(m, c)| {
            let e = m.exp(var);
            let mut m = m.clone();
            m.set_exp(var, e - 1);
            (m, c * rational::int(e as i64))
        });
        Poly::from_terms(&self.ring, terms)
    }

    /// Composes with the given images. Variables without an image map to the
    /// equally named variable of `target`.
    pub fn substitute(&self, target: &Arc<Ring>, images: &BTreeMap<usize, Poly>) -> Result<Poly> {
        let n = self.ring.nvars();
        let mut base: Vec<Poly> = Vec::with_capacity(n);
        for i in 0..n {
            match images.get(&i) {
                Some(p) => {
                    if !(Arc::ptr_eq(p.ring(), target) || **p.ring() == **target) {
                        return Err(Error::input("substitution image lives in a different ring"));
                    }
                    base.push(p.clone());
                }
                None => {
                    let name = &self.ring.vars()[i];
                    match target.index_of(name) {
                        Some(j) => base.push(Poly::var(target, j)),
                        None if self.degree_in(i) == Degree::NegInfinity
                            || self.degree_in(i) == Degree::Finite(0) =>
                        {
                            base.push(Poly::zero(target))
                        }
                        None => {
                            return Err(Error::input(format!(
                                "variable `{name}` has no image in the target ring"
                            )))
                        }
                    }
                }
            }
        }
        let mut powers: Vec<Vec<Poly>> = base.iter().map(|b| vec![Poly::one(target), b.clone()]).collect();
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &base[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Moves the polynomial into `target`, mapping variables by name.
    pub fn embed(&self, target: &Arc<Ring>) -> Result<Poly> {
        if Arc::ptr_eq(&self.ring, target) {
            return Ok(self.clone());
        }
        let mut index = Vec::with_capacity(self.ring.nvars());
        for (i, name) in self.ring.vars().iter().enumerate() {
            match target.index_of(name) {
                Some(j) => index.push(Some(j)),
                None if self.degree_in(i).finite().unwrap_or(0) == 0 => index.push(None),
                None => {
                    return Err(Error::input(format!(
                        "variable `{name}` does not exist in ({})",
                        target.vars().join(", ")
                    )))
                }
            }
        }
        let terms = self.terms.iter().map(|(m, c)| {
            let mut out = Monomial::one(target.nvars());
            for (i, &e) in m.exponents().iter().enumerate() {
                if let Some(j) = index[i] {
                    out.set_exp(j, e);
                }
            }
            (out, c.clone())
        });
        Ok(Poly::from_terms(target, terms))
    }

    /// Composition with the linear substitution z ↦ Lz.
    pub fn linear_change(&self, l: &RatMatrix) -> Result<Poly> {
        let n = self.ring.nvars();
        if l.size() != n {
            return Err(Error::input(format!(
                "coordinate change of size {} applied in {} variables",
                l.size(),
                n
            )));
        }
        if l.determinant().is_zero() {
            return Err(Error::input("singular coordinate change"));
        }
        let images: BTreeMap<usize, Poly> = (0..n)
            .map(|i| {
                let row = (0..n).map(|j| {
                    (Monomial::var(n, j, 1), l.get(i, j).clone())
                });
                (i, Poly::from_terms(&self.ring, row))
            })
            .collect();
        self.substitute(&self.ring, &images)
    }

    /// Integer coefficients with content 1 and a positive graded reverse lex
    /// leading coefficient, together with the unit `u` such that
    /// `output = u · input`.
    pub fn content_normalize_with_unit(&self) -> Result<(Poly, Rational)> {
        if self.is_zero() {
            return Err(Error::input("cannot normalise the zero polynomial"));
        }
        let mut den_lcm = BigInt::one();
        let mut num_gcd = BigInt::zero();
        for c in self.terms.values() {
            den_lcm = den_lcm.lcm(c.denom());
            num_gcd = num_gcd.gcd(c.numer());
        }
        let mut unit = Rational::new(den_lcm, num_gcd);
        let (_, lc) = self.leading_term(&MonomialOrder::GRevLex).unwrap();
        if lc.is_negative() {
            unit = -unit;
        }
        Ok((self.scale(&unit), unit))
    }

    pub fn content_normalize(&self) -> Result<Poly> {
        self.content_normalize_with_unit().map(|(p, _)| p)
    }

    /// Scales so that the leading coefficient under `order` is one.
    pub fn monic(&self, order: &MonomialOrder) -> Poly {
        match self.leading_term(order) {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    pub fn eval_rational(&self, point: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t *= num_traits::pow(point[i].clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_complex(&self, point: &[Complex64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(m, c)| term_value(m, c, point))
            .sum()
    }

    /// Sum of the absolute values of the terms at `point`; the natural scale
    /// against which a residual `|p(point)|` is judged.
    pub fn magnitude_at(&self, point: &[Complex64]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| term_value(m, c, point).norm())
            .sum()
    }

    /// Univariate coefficients (constant term first) in variable `var` after
    /// fixing every other variable to the given exact values.
    pub fn univariate_at(&self, var: usize, values: &[Option<Rational>]) -> Vec<Rational> {
        let deg = self.degree_in(var).finite().unwrap_or(0) as usize;
        let mut out = vec![Rational::zero(); deg + 1];
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if i == var || e == 0 {
                    continue;
                }
                let v = values[i].as_ref().expect("missing value for fixed variable");
                t *= num_traits::pow(v.clone(), e as usize);
            }
            out[m.exp(var) as usize] += t;
        }
        out
    }
}

fn term_value(m: &Monomial, c: &Rational, point: &[Complex64]) -> Complex64 {
    let mut t = Complex64::new(rational::to_f64(c), 0.0);
    for (i, &e) in m.exponents().iter().enumerate() {
        if e > 0 {
            t *= point[i].powu(e);
        }
    }
    t
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &'a Poly) -> Poly {
        self.checked_add(rhs).expect("ring mismatch in +")
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'a Poly) -> Poly {
        self.checked_sub(rhs).expect("ring mismatch in -")
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        self.checked_mul(rhs).expect("ring mismatch in *")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Rational::one())
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}
