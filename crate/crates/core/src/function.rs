//! Rational presentations `r/s` of c-algebraic functions on a variety.

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::poly::Poly;
use crate::variety::VarietyModel;

#[derive(Debug, Clone, PartialEq)]
pub struct CAlgFunction {
    pub name: String,
    /// Name of the variety the function lives on.
    pub variety: String,
    pub numerator: Poly,
    pub denominator: Poly,
    /// User assertion that the function is continuous on `A`; never checked.
    pub continuity_asserted: bool,
    /// Coordinates `p_0..p_r` over `1, h_1..h_r` (index 0 is the implicit
    /// constant generator), verified on construction.
    pub module_coords: Option<Vec<Poly>>,
}

impl CAlgFunction {
    /// `r/s` on `A`; rejects `s ∈ I(A)`.
    pub fn new(variety: &VarietyModel, name: impl Into<String>, numerator: Poly, denominator: Poly) -> Result<Self> {
        let name = name.into();
        for p in [&numerator, &denominator] {
            if **p.ring() != **variety.ring() {
                return Err(Error::input(format!(
                    "function `{name}` is not written in the variables of `{}`",
                    variety.name()
                )));
            }
        }
        if variety.vanishes(&denominator)? {
            return Err(Error::input(format!(
                "function `{name}`: denominator {denominator} vanishes on `{}`",
                variety.name()
            )));
        }
        Ok(CAlgFunction {
            name: name.clone(),
            variety: variety.name().to_string(),
            numerator,
            denominator,
            continuity_asserted: false,
            module_coords: None,
        })
    }

    pub fn polynomial(variety: &VarietyModel, name: impl Into<String>, p: Poly) -> Result<Self> {
        let one = Poly::one(p.ring());
        Self::new(variety, name, p, one)
    }

    pub fn with_continuity_asserted(mut self) -> Self {
        self.continuity_asserted = true;
        self
    }

    pub fn is_polynomial(&self) -> bool {
        self.denominator.as_constant().is_some()
    }

    /// Attaches `p_0 + Σ p_i h_i`, checking `r/s ≡` that sum on `A` after
    /// clearing denominators.
    pub fn with_module_coords(mut self, variety: &VarietyModel, gens: &[CAlgFunction], coords: Vec<Poly>) -> Result<Self> {
        if coords.len() != gens.len() + 1 {
            return Err(Error::input(format!(
                "function `{}`: {} module coordinates for {} generators (expected one more, for the constant)",
                self.name,
                coords.len(),
                gens.len()
            )));
        }
        let ring = variety.ring();
        // r·Πs_i − s·(p_0·Πs_i + Σ p_i r_i Π_{j≠i} s_j)
        let all: Poly = gens.iter().fold(Poly::one(ring), |acc, h| &acc * &h.denominator);
        let mut sum = &coords[0] * &all;
        for (i, (p, h)) in coords[1..].iter().zip(gens).enumerate() {
            let others = gens
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(Poly::one(ring), |acc, (_, g)| &acc * &g.denominator);
            sum = &sum + &(&(p * &h.numerator) * &others);
        }
        let diff = &(&self.numerator * &all) - &(&self.denominator * &sum);
        let residual = variety.ideal().normal_form(&diff)?;
        if !residual.is_zero() {
            return Err(Error::Verification(format!(
                "module coordinates of `{}` leave residual {residual}",
                self.name
            )));
        }
        self.module_coords = Some(coords);
        Ok(self)
    }

    /// Whether `self` and `other` agree on `A` (cross-multiplied, exact).
    pub fn congruent(&self, other: &CAlgFunction, ideal: &Ideal) -> Result<bool> {
        let diff = &(&self.numerator * &other.denominator) - &(&other.numerator * &self.denominator);
        ideal.contains(&diff)
    }
}

impl std::fmt::Display for CAlgFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.denominator.is_one() {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "({}) / ({})", self.numerator, self.denominator)
        }
    }
}
