//! Abstract Hecke-algebra elements and the spherical map on them.
//!
//! Elements live in the free commutative polynomial ring on the generator
//! alphabet of their genus — `{T, P}` for genus 1, `{T, T1, P}` for genus
//! 2 — or in the tensor square of such a ring, with coefficients that are
//! exact Laurent polynomials in the single variable `p`.  The spherical
//! map sends each generator to its image in the spherical variables, and
//! [`satake`] inverts that map on invariant functions.

pub mod appendix;
pub mod derive;
pub mod satake;
pub mod series_poly;

use std::collections::BTreeMap;
use std::collections::HashMap;
use std::fmt;

use num_traits::One;
use serde_json::json;

use crate::poly::{ArithError, MultiPoly, Rat};
use crate::ratfn::RationalFn;
use crate::spherical::{SphericalContext, SphericalError};
use crate::vars::{Monomial, VarTable};

pub use satake::{inverse_satake, inverse_satake_tensor};
pub use series_poly::{functional_equation_check, newton_polygon, HeckeSeriesPoly, NewtonPolygon};

/// Errors from Hecke-element arithmetic and the spherical map.
#[derive(Debug, Clone, PartialEq)]
pub enum HeckeError {
    /// Two elements (or an element and a context) with different alphabets.
    AlphabetMismatch,
    /// Input to the inverse spherical map is not Weyl-invariant.
    NotInvariant,
    /// Input is not homogeneous of the stated weight(s) in the group's
    /// `z0`-type variables, or is not a Laurent polynomial at all.
    NotHomogeneous,
    /// The inverse solve is inconsistent: the function is invariant and
    /// homogeneous but not an image point.  This signals a genuine
    /// mathematical failure, not a usage error.
    NotInImage,
    /// Underlying arithmetic failure.
    Arith(ArithError),
}

impl fmt::Display for HeckeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HeckeError::AlphabetMismatch => write!(f, "generator alphabets do not match"),
            HeckeError::NotInvariant => write!(f, "function is not Weyl-invariant"),
            HeckeError::NotHomogeneous => {
                write!(f, "function is not homogeneous of the stated weight")
            }
            HeckeError::NotInImage => {
                write!(f, "function is not in the image of the spherical map")
            }
            HeckeError::Arith(e) => write!(f, "arithmetic error: {}", e),
        }
    }
}

impl std::error::Error for HeckeError {}

impl From<ArithError> for HeckeError {
    fn from(e: ArithError) -> Self {
        HeckeError::Arith(e)
    }
}

impl From<SphericalError> for HeckeError {
    fn from(_: SphericalError) -> Self {
        HeckeError::AlphabetMismatch
    }
}

/// Generator alphabet of a Hecke ring or a tensor square of two such.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Alphabet {
    Genus1,
    Genus2,
    Genus1Tensor,
    Genus2Tensor,
}

impl Alphabet {
    /// Generator names, in canonical order.  Tensor alphabets list the
    /// left factor's generators first.
    pub fn symbols(&self) -> &'static [&'static str] {
        match self {
            Alphabet::Genus1 => &["T", "P"],
            Alphabet::Genus2 => &["T", "T1", "P"],
            Alphabet::Genus1Tensor => &["T⊗1", "P⊗1", "1⊗T", "1⊗P"],
            Alphabet::Genus2Tensor => &["T⊗1", "T1⊗1", "P⊗1", "1⊗T", "1⊗T1", "1⊗P"],
        }
    }

    /// `z0`-weights of the generators, aligned with [`Self::symbols`].
    pub fn weights(&self) -> &'static [u32] {
        match self {
            Alphabet::Genus1 => &[1, 2],
            Alphabet::Genus2 => &[1, 2, 2],
            Alphabet::Genus1Tensor => &[1, 2, 1, 2],
            Alphabet::Genus2Tensor => &[1, 2, 2, 1, 2, 2],
        }
    }

    pub fn arity(&self) -> usize {
        self.symbols().len()
    }

    pub fn is_tensor(&self) -> bool {
        matches!(self, Alphabet::Genus1Tensor | Alphabet::Genus2Tensor)
    }

    /// Genus of the ring (of each factor, for tensor alphabets).
    pub fn genus(&self) -> usize {
        match self {
            Alphabet::Genus1 | Alphabet::Genus1Tensor => 1,
            Alphabet::Genus2 | Alphabet::Genus2Tensor => 2,
        }
    }

    /// Number of generators on one side of a tensor alphabet (also the
    /// index where the right factor's exponents start).
    pub fn split(&self) -> usize {
        match self {
            Alphabet::Genus1 | Alphabet::Genus1Tensor => 2,
            Alphabet::Genus2 | Alphabet::Genus2Tensor => 3,
        }
    }

    /// The single-ring alphabet of genus `g`.
    pub fn single(g: usize) -> Option<Alphabet> {
        match g {
            1 => Some(Alphabet::Genus1),
            2 => Some(Alphabet::Genus2),
            _ => None,
        }
    }

    /// The tensor-square alphabet of genus `g`.
    pub fn tensor(g: usize) -> Option<Alphabet> {
        match g {
            1 => Some(Alphabet::Genus1Tensor),
            2 => Some(Alphabet::Genus2Tensor),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Alphabet::Genus1 => "genus1",
            Alphabet::Genus2 => "genus2",
            Alphabet::Genus1Tensor => "genus1-tensor",
            Alphabet::Genus2Tensor => "genus2-tensor",
        }
    }
}

/// An element of the (tensor square of the) Hecke ring: a polynomial in
/// the alphabet's generators with coefficients that are exact Laurent
/// polynomials in `p`.  Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct HeckeElement {
    alphabet: Alphabet,
    terms: BTreeMap<Vec<u8>, MultiPoly>,
}

impl HeckeElement {
    /// The coefficient variable table: just `p`.
    pub fn coefficient_table() -> VarTable {
        VarTable::prime_only()
    }

    pub fn zero(alphabet: Alphabet) -> Self {
        HeckeElement {
            alphabet,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(alphabet: Alphabet) -> Self {
        Self::monomial(
            alphabet,
            &vec![0u8; alphabet.arity()],
            MultiPoly::one(&Self::coefficient_table()),
        )
    }

    /// The `idx`-th generator as an element.
    pub fn generator(alphabet: Alphabet, idx: usize) -> Self {
        assert!(idx < alphabet.arity(), "generator index out of range");
        let mut exps = vec![0u8; alphabet.arity()];
        exps[idx] = 1;
        Self::monomial(alphabet, &exps, MultiPoly::one(&Self::coefficient_table()))
    }

    /// Single generator monomial with the given coefficient (a polynomial
    /// over [`Self::coefficient_table`]).
    pub fn monomial(alphabet: Alphabet, exps: &[u8], coef: MultiPoly) -> Self {
        assert_eq!(exps.len(), alphabet.arity(), "exponent vector length");
        let mut terms = BTreeMap::new();
        if !coef.is_zero() {
            terms.insert(exps.to_vec(), coef);
        }
        HeckeElement { alphabet, terms }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u8>, &MultiPoly)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of a generator-exponent vector (zero if absent).
    pub fn coefficient(&self, exps: &[u8]) -> MultiPoly {
        self.terms
            .get(exps)
            .cloned()
            .unwrap_or_else(|| MultiPoly::zero(&Self::coefficient_table()))
    }

    fn merge(&self, other: &HeckeElement, negate_other: bool) -> Result<HeckeElement, HeckeError> {
        if self.alphabet != other.alphabet {
            return Err(HeckeError::AlphabetMismatch);
        }
        let mut terms = self.terms.clone();
        for (exps, coef) in &other.terms {
            let c = if negate_other { coef.neg() } else { coef.clone() };
            match terms.get_mut(exps) {
                Some(existing) => {
                    let sum = existing.add(&c);
                    if sum.is_zero() {
                        terms.remove(exps);
                    } else {
                        *existing = sum;
                    }
                }
                None => {
                    terms.insert(exps.clone(), c);
                }
            }
        }
        Ok(HeckeElement {
            alphabet: self.alphabet,
            terms,
        })
    }

    pub fn add(&self, other: &HeckeElement) -> Result<HeckeElement, HeckeError> {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &HeckeElement) -> Result<HeckeElement, HeckeError> {
        self.merge(other, true)
    }

    pub fn neg(&self) -> HeckeElement {
        HeckeElement {
            alphabet: self.alphabet,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &HeckeElement) -> Result<HeckeElement, HeckeError> {
        if self.alphabet != other.alphabet {
            return Err(HeckeError::AlphabetMismatch);
        }
        let mut terms: BTreeMap<Vec<u8>, MultiPoly> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Vec<u8> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                let c = ca.mul(cb);
                match terms.get_mut(&exps) {
                    Some(existing) => *existing = existing.add(&c),
                    None => {
                        terms.insert(exps, c);
                    }
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(HeckeElement {
            alphabet: self.alphabet,
            terms,
        })
    }

    /// Multiply by a coefficient polynomial in `p`.
    pub fn scale(&self, c: &MultiPoly) -> HeckeElement {
        if c.is_zero() {
            return HeckeElement::zero(self.alphabet);
        }
        HeckeElement {
            alphabet: self.alphabet,
            terms: self
                .terms
                .iter()
                .map(|(e, k)| (e.clone(), k.mul(c)))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Result<HeckeElement, HeckeError> {
        let mut acc = HeckeElement::one(self.alphabet);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Tensor two single-ring elements of the same genus into an element
    /// of the tensor-square alphabet.
    pub fn tensor(lhs: &HeckeElement, rhs: &HeckeElement) -> Result<HeckeElement, HeckeError> {
        if lhs.alphabet != rhs.alphabet || lhs.alphabet.is_tensor() {
            return Err(HeckeError::AlphabetMismatch);
        }
        let alphabet =
            Alphabet::tensor(lhs.alphabet.genus()).ok_or(HeckeError::AlphabetMismatch)?;
        let mut terms: BTreeMap<Vec<u8>, MultiPoly> = BTreeMap::new();
        for (ea, ca) in &lhs.terms {
            for (eb, cb) in &rhs.terms {
                let mut exps = ea.clone();
                exps.extend_from_slice(eb);
                let c = ca.mul(cb);
                match terms.get_mut(&exps) {
                    Some(existing) => *existing = existing.add(&c),
                    None => {
                        terms.insert(exps, c);
                    }
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(HeckeElement { alphabet, terms })
    }

    /// Weight of a homogeneous element: the weighted generator degree,
    /// as a pair (left, right) — equal components for single alphabets.
    /// `None` for zero or inhomogeneous elements.
    pub fn weight(&self) -> Option<(u32, u32)> {
        let weights = self.alphabet.weights();
        let split = self.alphabet.split();
        let mut result: Option<(u32, u32)> = None;
        for exps in self.terms.keys() {
            let mut left = 0u32;
            let mut right = 0u32;
            for (i, e) in exps.iter().enumerate() {
                let w = weights[i] * u32::from(*e);
                if self.alphabet.is_tensor() && i >= split {
                    right += w;
                } else {
                    left += w;
                }
            }
            if !self.alphabet.is_tensor() {
                right = left;
            }
            match result {
                None => result = Some((left, right)),
                Some(r) if r == (left, right) => {}
                Some(_) => return None,
            }
        }
        result
    }

    /// Apply the spherical map through a single context.  The element
    /// must be a single-ring element of the context's genus.
    pub fn omega_apply(&self, ctx: &SphericalContext) -> Result<RationalFn, HeckeError> {
        if self.alphabet.is_tensor() || self.alphabet.genus() != ctx.genus() {
            return Err(HeckeError::AlphabetMismatch);
        }
        let images = generator_images(ctx)?;
        Ok(RationalFn::from_poly(self.image_poly(&[&images])?))
    }

    /// Apply the spherical maps of an (x, y) context pair to a tensor
    /// element; the left factor maps through `cx`, the right through `cy`.
    pub fn omega_apply_tensor(
        &self,
        cx: &SphericalContext,
        cy: &SphericalContext,
    ) -> Result<RationalFn, HeckeError> {
        if !self.alphabet.is_tensor()
            || self.alphabet.genus() != cx.genus()
            || self.alphabet.genus() != cy.genus()
            || cx.group() == cy.group()
        {
            return Err(HeckeError::AlphabetMismatch);
        }
        let ix = generator_images(cx)?;
        let iy = generator_images(cy)?;
        Ok(RationalFn::from_poly(self.image_poly(&[&ix, &iy])?))
    }

    /// Shared Ω-application core: `images` holds one generator-image list
    /// per tensor factor (a single list for plain elements).
    fn image_poly(&self, images: &[&Vec<MultiPoly>]) -> Result<MultiPoly, HeckeError> {
        let table = images[0][0].table().clone();
        let split = self.alphabet.split();
        let mut cache: HashMap<(usize, u8), MultiPoly> = HashMap::new();
        let mut acc = MultiPoly::zero(&table);
        for (exps, coef) in &self.terms {
            let mut term = lift_prime_poly(coef, &table);
            for (i, e) in exps.iter().enumerate() {
                if *e == 0 {
                    continue;
                }
                let img = &images[if i >= split { 1 } else { 0 }][i % split];
                let pw = cache
                    .entry((i, *e))
                    .or_insert_with(|| img.pow(i32::from(*e)).expect("positive power"));
                term = term.mul(pw);
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// Canonical JSON form.
    pub fn to_json(&self) -> serde_json::Value {
        let symbols = self.alphabet.symbols();
        let mut terms = Vec::new();
        let mut keys: Vec<&Vec<u8>> = self.terms.keys().collect();
        keys.sort_by_key(|e| {
            (
                e.iter().map(|x| u32::from(*x)).sum::<u32>(),
                (*e).clone(),
            )
        });
        for exps in keys {
            let coef = &self.terms[exps];
            let mut gens = serde_json::Map::new();
            for (i, e) in exps.iter().enumerate() {
                if *e > 0 {
                    gens.insert(symbols[i].to_string(), json!(e));
                }
            }
            terms.push(json!({"gens": gens, "coef": coef.to_json()}));
        }
        json!({"alphabet": self.alphabet.name(), "terms": terms})
    }

    /// Human-readable form, e.g. `p^2*(2*p - 1)·(P ⊗ P) - (T1 ⊗ T1)`.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let symbols = self.alphabet.symbols();
        let split = self.alphabet.split();
        let mut keys: Vec<&Vec<u8>> = self.terms.keys().collect();
        keys.sort_by_key(|e| {
            (
                e.iter().map(|x| u32::from(*x)).sum::<u32>(),
                (*e).clone(),
            )
        });
        let mut parts = Vec::new();
        for exps in keys {
            let coef = &self.terms[exps];
            let gens = if self.alphabet.is_tensor() {
                let side = |range: std::ops::Range<usize>| {
                    let mut s = String::new();
                    for i in range {
                        if exps[i] == 0 {
                            continue;
                        }
                        if !s.is_empty() {
                            s.push('*');
                        }
                        // Strip the ⊗-decoration for side-local rendering.
                        let base: &str = symbols[i].split('⊗').find(|p| *p != "1").unwrap_or("1");
                        s.push_str(base);
                        if exps[i] > 1 {
                            s.push_str(&format!("^{}", exps[i]));
                        }
                    }
                    if s.is_empty() {
                        "1".to_string()
                    } else {
                        s
                    }
                };
                let l = side(0..split);
                let r = side(split..exps.len());
                if l == "1" && r == "1" {
                    String::new()
                } else {
                    format!("({} ⊗ {})", l, r)
                }
            } else {
                let mut s = String::new();
                for (i, e) in exps.iter().enumerate() {
                    if *e == 0 {
                        continue;
                    }
                    if !s.is_empty() {
                        s.push('*');
                    }
                    s.push_str(symbols[i]);
                    if *e > 1 {
                        s.push_str(&format!("^{}", e));
                    }
                }
                s
            };
            let coef_str = if coef.is_one() && !gens.is_empty() {
                String::new()
            } else if coef.num_terms() > 1 {
                format!("({})", coef.render())
            } else {
                coef.render()
            };
            let part = match (coef_str.is_empty(), gens.is_empty()) {
                (true, false) => gens,
                (false, true) => coef_str,
                (false, false) => format!("{}·{}", coef_str, gens),
                (true, true) => "1".to_string(),
            };
            parts.push(part);
        }
        parts.join(" + ")
    }
}

/// Generator images of a context, ordered to match the single alphabet
/// of its genus (`[T, P]` or `[T, T1, P]`).
pub(crate) fn generator_images(ctx: &SphericalContext) -> Result<Vec<MultiPoly>, HeckeError> {
    let images = ctx.omega_generator_images()?;
    Ok(match ctx.genus() {
        1 => vec![images.t, images.p_op],
        _ => vec![images.t, images.t1.expect("genus-2 has T1"), images.p_op],
    })
}

/// Rebuild a polynomial in `p` over a larger table.  Both tables must
/// hold `p` at slot 0, which [`VarTable::master`] and
/// [`VarTable::prime_only`] do.
pub(crate) fn lift_prime_poly(c: &MultiPoly, target: &VarTable) -> MultiPoly {
    debug_assert_eq!(c.table().name(0), "p");
    debug_assert_eq!(target.name(0), "p");
    MultiPoly::from_terms(
        target,
        c.terms().iter().map(|(m, r)| (*m, r.clone())).collect(),
    )
}

/// Convenience: `p^k` over the coefficient table.
pub fn p_power(k: i32) -> MultiPoly {
    MultiPoly::from_monomial(
        &VarTable::prime_only(),
        Monomial::var(0).pow(k),
        Rat::one(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_poly, parse_rf};
    use crate::spherical::VarGroup;

    fn pc(s: &str) -> MultiPoly {
        parse_poly(&VarTable::prime_only(), s).unwrap()
    }

    #[test]
    fn monomial_product() {
        let a = Alphabet::Genus2;
        let t = HeckeElement::generator(a, 0);
        let p = HeckeElement::generator(a, 2);
        let tp = t.mul(&p).unwrap();
        assert_eq!(tp.num_terms(), 1);
        assert_eq!(tp.coefficient(&[1, 0, 1]), pc("1"));
    }

    #[test]
    fn tensor_of_generators() {
        let a = Alphabet::Genus2;
        let t = HeckeElement::generator(a, 0);
        let one = HeckeElement::one(a);
        let t_left = HeckeElement::tensor(&t, &one).unwrap();
        let t_right = HeckeElement::tensor(&one, &t).unwrap();
        let tt = t_left.mul(&t_right).unwrap();
        assert_eq!(tt, HeckeElement::tensor(&t, &t).unwrap());
        assert_eq!(tt.coefficient(&[1, 0, 0, 1, 0, 0]), pc("1"));
    }

    #[test]
    fn cancellation_drops_terms() {
        let a = Alphabet::Genus1;
        let t = HeckeElement::generator(a, 0);
        let z = t.sub(&t).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn alphabet_mismatch_is_an_error() {
        let t1 = HeckeElement::generator(Alphabet::Genus1, 0);
        let t2 = HeckeElement::generator(Alphabet::Genus2, 0);
        assert_eq!(t1.add(&t2).unwrap_err(), HeckeError::AlphabetMismatch);
        assert_eq!(t1.mul(&t2).unwrap_err(), HeckeError::AlphabetMismatch);
    }

    #[test]
    fn weight_grading() {
        let a = Alphabet::Genus2;
        let t = HeckeElement::generator(a, 0);
        let t1 = HeckeElement::generator(a, 1);
        let p = HeckeElement::generator(a, 2);
        let m = t.mul(&t1).unwrap().mul(&p).unwrap();
        assert_eq!(m.weight(), Some((5, 5)));
        let mixed = t.add(&p).unwrap();
        assert_eq!(mixed.weight(), None);
        let tt = HeckeElement::tensor(&t, &p).unwrap();
        assert_eq!(tt.weight(), Some((1, 2)));
    }

    #[test]
    fn omega_of_generators_matches_context() {
        let ctx = SphericalContext::new(2, VarGroup::X).unwrap();
        let t = HeckeElement::generator(Alphabet::Genus2, 0);
        let img = t.omega_apply(&ctx).unwrap();
        let expect = parse_rf(ctx.table(), "x0*(1+x1)*(1+x2)").unwrap();
        assert!(img.eq_rf(&expect));
    }

    #[test]
    fn omega_is_a_ring_homomorphism() {
        let ctx = SphericalContext::new(2, VarGroup::X).unwrap();
        let a = HeckeElement::generator(Alphabet::Genus2, 0)
            .add(&HeckeElement::generator(Alphabet::Genus2, 2).scale(&pc("p^2-1")))
            .unwrap();
        let b = HeckeElement::generator(Alphabet::Genus2, 1);
        let lhs = a.mul(&b).unwrap().omega_apply(&ctx).unwrap();
        let rhs = a
            .omega_apply(&ctx)
            .unwrap()
            .mul(&b.omega_apply(&ctx).unwrap());
        assert!(lhs.eq_rf(&rhs));
        let lhs_add = a.add(&b).unwrap().omega_apply(&ctx).unwrap();
        let rhs_add = a
            .omega_apply(&ctx)
            .unwrap()
            .add(&b.omega_apply(&ctx).unwrap());
        assert!(lhs_add.eq_rf(&rhs_add));
    }

    #[test]
    fn omega_tensor_of_p_pair() {
        let cx = SphericalContext::new(2, VarGroup::X).unwrap();
        let cy = SphericalContext::new(2, VarGroup::Y).unwrap();
        let p = HeckeElement::generator(Alphabet::Genus2, 2);
        let pp = HeckeElement::tensor(&p, &p).unwrap();
        let img = pp.omega_apply_tensor(&cx, &cy).unwrap();
        let expect = parse_rf(
            cx.table(),
            "(x0^2*x1*x2/p^3)*(y0^2*y1*y2/p^3)",
        )
        .unwrap();
        assert!(img.eq_rf(&expect));
    }

    #[test]
    fn omega_rejects_wrong_context() {
        let cx = SphericalContext::new(1, VarGroup::X).unwrap();
        let t = HeckeElement::generator(Alphabet::Genus2, 0);
        assert_eq!(t.omega_apply(&cx).unwrap_err(), HeckeError::AlphabetMismatch);
        let cx2 = SphericalContext::new(2, VarGroup::X).unwrap();
        let tt = HeckeElement::tensor(&t, &t).unwrap();
        assert_eq!(
            tt.omega_apply_tensor(&cx2, &cx2).unwrap_err(),
            HeckeError::AlphabetMismatch
        );
    }

    #[test]
    fn json_shape() {
        let a = Alphabet::Genus2Tensor;
        let t = HeckeElement::generator(Alphabet::Genus2, 0);
        let tt = HeckeElement::tensor(&t, &t).unwrap().scale(&pc("p^2"));
        let v = tt.to_json();
        assert_eq!(v["alphabet"], "genus2-tensor");
        assert_eq!(v["terms"][0]["gens"]["T⊗1"], 1);
        assert_eq!(v["terms"][0]["gens"]["1⊗T"], 1);
        assert_eq!(a.symbols().len(), 6);
    }

    #[test]
    fn render_is_stable() {
        let t = HeckeElement::generator(Alphabet::Genus2, 0);
        let p = HeckeElement::generator(Alphabet::Genus2, 2);
        let e = t.scale(&pc("p")).add(&p.scale(&pc("p^3+p"))).unwrap();
        let s = e.render();
        assert!(s.contains("T"), "{}", s);
        assert!(s.contains("P"), "{}", s);
    }
}
