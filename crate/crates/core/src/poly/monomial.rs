use std::cmp::Ordering;

use smallvec::SmallVec;

/// Exponent vector of a monomial. Its length is the variable count of the
/// ambient ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(SmallVec<[u32; 8]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn var(nvars: usize, index: usize, exp: u32) -> Self {
        let mut m = Self::one(nvars);
        m.0[index] = exp;
        m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exp(&self, index: usize) -> u32 {
        self.0[index]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `self / other`, or `None` if `other` does not divide `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = SmallVec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            out.push(a.checked_sub(*b)?);
        }
        Some(Monomial(out))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Indices of variables with a positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    pub(crate) fn set_exp(&mut self, index: usize, exp: u32) {
        self.0[index] = exp;
    }
}

/// Monomial orders. Variables are ranked by their position in the ring,
/// the first variable being the largest.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    GrLex,
    GRevLex,
    /// Elimination order: monomials are compared by graded reverse lex on the
    /// variables flagged `true` first, then by graded reverse lex on the rest.
    Block(Vec<bool>),
}

impl MonomialOrder {
    /// Block order eliminating the given variable indices.
    pub fn eliminating(nvars: usize, elim: &[usize]) -> Self {
        let mut mask = vec![false; nvars];
        for &i in elim {
            mask[i] = true;
        }
        MonomialOrder::Block(mask)
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => lex(a.exponents(), b.exponents()),
            MonomialOrder::GrLex => a
                .degree()
                .cmp(&b.degree())
                .then_with(|| lex(a.exponents(), b.exponents())),
            MonomialOrder::GRevLex => grevlex_masked(a.exponents(), b.exponents(), None, true),
            MonomialOrder::Block(mask) => {
                grevlex_masked(a.exponents(), b.exponents(), Some(mask), true).then_with(|| {
                    grevlex_masked(a.exponents(), b.exponents(), Some(mask), false)
                })
            }
        }
    }
}

fn lex(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

/// Graded reverse lex restricted to the variables whose mask entry equals
/// `select` (all variables when `mask` is `None`).
fn grevlex_masked(a: &[u32], b: &[u32], mask: Option<&[bool]>, select: bool) -> Ordering {
    let keep = |i: usize| mask.is_none_or(|m| m[i] == select);
    let da: u32 = (0..a.len()).filter(|&i| keep(i)).map(|i| a[i]).sum();
    let db: u32 = (0..b.len()).filter(|&i| keep(i)).map(|i| b[i]).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (0..a.len()).rev() {
        if !keep(i) {
            continue;
        }
        match a[i].cmp(&b[i]) {
            Ordering::Equal => continue,
            // a smaller exponent in the last differing variable wins
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}
