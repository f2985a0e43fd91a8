//! Canonical a-normalisations as graph ideals of a generator list, with
//! extension of functions to ambient polynomials and push-down back to `A`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{CertificateStage, Error, Result};
use crate::function::CAlgFunction;
use crate::groebner::{eliminate, ideal_equal, member, saturate, Ideal};
use crate::poly::{Monomial, Poly, Ring};
use crate::variety::VarietyModel;

/// `Â ⊂ ℂ^m × ℂ^r`: the closure of the graph of `(h_1..h_r)` over `A`, with
/// projection onto the first `m` coordinates.
#[derive(Debug, Clone)]
pub struct ANormalisation {
    pub base: Arc<VarietyModel>,
    pub generators: Vec<CAlgFunction>,
    pub w_vars: Vec<String>,
    /// `Â` itself; the base when there are no generators.
    pub graph: Arc<VarietyModel>,
}

impl ANormalisation {
    pub fn graph_ideal(&self) -> &Ideal {
        self.graph.ideal()
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.graph.ring()
    }

    pub fn base_dim(&self) -> usize {
        self.base.ambient_dim()
    }

    /// Index of `w_i` in the graph ring.
    pub fn w_index(&self, i: usize) -> usize {
        self.base_dim() + i
    }

    /// The identity normalisation `Â = A`.
    pub fn identity(base: &Arc<VarietyModel>) -> Self {
        ANormalisation {
            base: base.clone(),
            generators: Vec::new(),
            w_vars: Vec::new(),
            graph: base.clone(),
        }
    }
}

fn w_names(ring: &Ring, r: usize) -> Vec<String> {
    let mut names: Vec<String> = Vec::with_capacity(r);
    for i in 0..r {
        let mut name = if r == 1 { "w".to_string() } else { format!("w{}", i + 1) };
        while ring.index_of(&name).is_some() || names.contains(&name) {
            name.push('_');
        }
        names.push(name);
    }
    names
}

fn check_on(f: &CAlgFunction, variety: &VarietyModel) -> Result<()> {
    if f.variety != variety.name() || **f.numerator.ring() != **variety.ring() {
        return Err(Error::input(format!(
            "function `{}` lives on `{}`, not on `{}`",
            f.name,
            f.variety,
            variety.name()
        )));
    }
    Ok(())
}

/// `saturate(I(A) + ⟨s_i w_i − r_i⟩, Π s_i)`, checked to eliminate back to
/// `I(A)`.
pub fn graph_ideal(base: &Arc<VarietyModel>, gens: &[CAlgFunction]) -> Result<ANormalisation> {
    if gens.is_empty() {
        return Ok(ANormalisation::identity(base));
    }
    for h in gens {
        check_on(h, base)?;
    }
    let ring = base.ring();
    let m = ring.nvars();
    let names = w_names(ring, gens.len());
    let ext = ring.extended(&names)?;
    let mut polys = Vec::with_capacity(gens.len());
    let mut product = Poly::one(&ext);
    for (i, h) in gens.iter().enumerate() {
        let s = h.denominator.embed(&ext)?;
        let w = Poly::var(&ext, m + i);
        polys.push(&(&s * &w) - &h.numerator.embed(&ext)?);
        product = &product * &s;
    }
    let j = base.ideal().embed(&ext)?.with_leading(&polys)?;
    let sat = saturate(&j, &product)?;

    let keep: Vec<usize> = (0..m).collect();
    let back = eliminate(&sat, &keep)?;
    let back = base.ideal().derived(
        back.generators()
            .iter()
            .map(|g| g.embed(ring))
            .collect::<Result<Vec<_>>>()?,
    )?;
    if !ideal_equal(&back, base.ideal())? {
        return Err(Error::Verification(format!(
            "the graph of the generators does not project onto `{}`; they are not well-defined on it",
            base.name()
        )));
    }
    let graph = VarietyModel::new(format!("{}_hat", base.name()), sat, base.dim())?
        .with_residual_tol(base.residual_tol());
    Ok(ANormalisation {
        base: base.clone(),
        generators: gens.to_vec(),
        w_vars: names,
        graph: Arc::new(graph),
    })
}

/// `T` with `s·T ≡ r` modulo `I(variety)`, reduced to normal form, or `None`
/// when `r ∉ ⟨s⟩ + I(variety)`.
pub fn extend_on(variety: &VarietyModel, numerator: &Poly, denominator: &Poly) -> Result<Option<Poly>> {
    if let Some(c) = denominator.as_constant() {
        return Ok(Some(numerator.scale(&c.recip())));
    }
    let ideal = variety.ideal().with_leading(std::slice::from_ref(denominator))?;
    let Some(cof) = member(numerator, &ideal)?.cofactors else {
        return Ok(None);
    };
    let t = variety.ideal().normal_form(&cof[0])?;
    let residual = variety.ideal().normal_form(&(&(&t * denominator) - numerator))?;
    if !residual.is_zero() {
        return Err(Error::Internal(format!("extension leaves residual {residual}")));
    }
    Ok(Some(t))
}

/// A polynomial on the ambient space of `Â` restricting to `f∘π`.
pub fn pullback_extend(f: &CAlgFunction, n: &ANormalisation) -> Result<Poly> {
    check_on(f, &n.base)?;
    let ring = n.ring();
    let r = f.numerator.embed(ring)?;
    let s = f.denominator.embed(ring)?;
    if let Some(coords) = &f.module_coords {
        if coords.len() == n.generators.len() + 1 {
            let mut t = coords[0].embed(ring)?;
            for (i, p) in coords[1..].iter().enumerate() {
                t = &t + &(&p.embed(ring)? * &Poly::var(ring, n.w_index(i)));
            }
            if !n.graph_ideal().contains(&(&(&s * &t) - &r))? {
                return Err(Error::Verification(format!(
                    "module coordinates of `{}` do not extend it on `{}`",
                    f.name,
                    n.graph.name()
                )));
            }
            return Ok(t);
        }
    }
    extend_on(&n.graph, &r, &s)?.ok_or_else(|| Error::NoCertificate {
        stage: CertificateStage::Extension,
        detail: format!(
            "`{}` does not extend to a polynomial on `{}`; the generator list is insufficient",
            f.name,
            n.graph.name()
        ),
    })
}

/// `T(z, w)` with `w_i ↦ r_i/s_i`, as a rational function on `A`.
pub fn pushdown(t: &Poly, n: &ANormalisation, name: &str) -> Result<CAlgFunction> {
    let base_ring = n.base.ring();
    let m = n.base_dim();
    let r = n.generators.len();
    if **t.ring() != **n.ring() {
        return Err(Error::input("polynomial is not in the variables of the normalisation"));
    }
    let exps: Vec<u32> = (0..r)
        .map(|i| t.degree_in(m + i).finite().unwrap_or(0))
        .collect();
    let mut powers: BTreeMap<(usize, bool, u32), Poly> = BTreeMap::new();
    let mut power = |i: usize, num: bool, e: u32| -> Poly {
        powers
            .entry((i, num, e))
            .or_insert_with(|| {
                let h = &n.generators[i];
                if num { h.numerator.pow(e) } else { h.denominator.pow(e) }
            })
            .clone()
    };
    let mut num = Poly::zero(base_ring);
    for (mono, c) in t.terms() {
        let z: Vec<u32> = (0..m).map(|j| mono.exp(j)).collect();
        let mut term = Poly::monomial(base_ring, Monomial::from_exponents(&z), c.clone());
        for i in 0..r {
            let b = mono.exp(m + i);
            term = &(&term * &power(i, true, b)) * &power(i, false, exps[i] - b);
        }
        num = &num + &term;
    }
    let mut den = (0..r).fold(Poly::one(base_ring), |acc, i| &acc * &power(i, false, exps[i]));
    if let Some(c) = den.as_constant() {
        num = num.scale(&c.recip());
        den = Poly::one(base_ring);
    }
    let check = &(&den.embed(n.ring())? * t) - &num.embed(n.ring())?;
    if !n.graph_ideal().contains(&check)? {
        return Err(Error::Internal(format!("push-down of {t} is not congruent on the graph")));
    }
    CAlgFunction::new(&n.base, name, num, den)
}

/// Per-function outcome of an a-normality instance check.
#[derive(Debug, Clone)]
pub struct ExtensionCheck {
    pub function: String,
    pub extension: Option<Poly>,
}

/// For each corpus function on `Â`, whether it is the restriction of a
/// polynomial. Only these instances are checked, never a-normality itself.
pub fn verify_anormal_instance(n: &ANormalisation, corpus: &[CAlgFunction]) -> Result<Vec<ExtensionCheck>> {
    corpus
        .iter()
        .map(|f| {
            check_on(f, &n.graph)?;
            Ok(ExtensionCheck {
                function: f.name.clone(),
                extension: extend_on(&n.graph, &f.numerator, &f.denominator)?,
            })
        })
        .collect()
}

/// Polynomials on the ambient space of `Y₁ = Â₁` restricting to the
/// coordinates of `π₂⁻¹∘π₁`: the `z` coordinates, then an extension of each
/// generator of `N₂` through `N₁`.
pub fn transition_map(n1: &ANormalisation, n2: &ANormalisation) -> Result<Vec<Poly>> {
    if n1.base.name() != n2.base.name() || !ideal_equal(n1.base.ideal(), n2.base.ideal())? {
        return Err(Error::input("normalisations of different varieties"));
    }
    let ring = n1.ring();
    let mut coords: Vec<Poly> = (0..n1.base_dim()).map(|i| Poly::var(ring, i)).collect();
    for h in &n2.generators {
        coords.push(pullback_extend(h, n1)?);
    }
    Ok(coords)
}
