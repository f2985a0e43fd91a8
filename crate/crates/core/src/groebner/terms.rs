//! Term vectors sorted in descending order, the working representation of
//! the Gröbner engine.

use std::cmp::Ordering;
use std::sync::Arc;

use num_traits::Zero;

use crate::poly::{Monomial, MonomialOrder, Poly, Rational, Ring};

pub(crate) type Terms = Vec<(Monomial, Rational)>;

pub(crate) fn from_poly(p: &Poly, order: &MonomialOrder) -> Terms {
    p.sorted_terms(order)
        .into_iter()
        .map(|(m, c)| (m.clone(), c.clone()))
        .collect()
}

pub(crate) fn to_poly(ring: &Arc<Ring>, t: &[(Monomial, Rational)]) -> Poly {
    Poly::from_terms(ring, t.iter().cloned())
}

/// `a - c·m·b`, both inputs sorted descending under `order`.
pub(crate) fn sub_scaled(
    a: &[(Monomial, Rational)],
    c: &Rational,
    m: &Monomial,
    b: &[(Monomial, Rational)],
    order: &MonomialOrder,
) -> Terms {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut pending: Option<(Monomial, Rational)> = None;
    while i < a.len() || j < b.len() {
        if pending.is_none() && j < b.len() {
            pending = Some((b[j].0.mul(m), -(c * &b[j].1)));
        }
        match (a.get(i), pending.as_ref()) {
            (Some(x), Some(y)) => match order.cmp(&x.0, &y.0) {
                Ordering::Greater => {
                    out.push(x.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(pending.take().unwrap());
                    j += 1;
                }
                Ordering::Equal => {
                    let (mono, v) = pending.take().unwrap();
                    let s = &x.1 + v;
                    if !s.is_zero() {
                        out.push((mono, s));
                    }
                    i += 1;
                    j += 1;
                }
            },
            (Some(x), None) => {
                out.push(x.clone());
                i += 1;
            }
            (None, Some(_)) => {
                out.push(pending.take().unwrap());
                j += 1;
            }
            (None, None) => break,
        }
    }
    out
}

pub(crate) fn scale(a: &[(Monomial, Rational)], c: &Rational) -> Terms {
    a.iter().map(|(m, v)| (m.clone(), v * c)).collect()
}

pub(crate) fn max_bits(a: &[(Monomial, Rational)]) -> u64 {
    a.iter()
        .map(|(_, c)| crate::poly::rational::bit_size(c))
        .max()
        .unwrap_or(0)
}
