//! Polynomials in the series variable `X` with Hecke-element
//! coefficients, their spherical images, Newton polygons, and the
//! central functional-equation check.

use num_traits::One;
use serde_json::json;

use crate::poly::{MultiPoly, Rat};
use crate::spherical::SphericalContext;
use crate::vars::Monomial;

use super::{p_power, Alphabet, HeckeElement, HeckeError};

/// A polynomial `c_0 + c_1 X + … + c_d X^d` whose coefficients are
/// Hecke elements of a common alphabet.  Trailing zero coefficients are
/// trimmed, so `degree` is exact.
#[derive(Debug, Clone, PartialEq)]
pub struct HeckeSeriesPoly {
    alphabet: Alphabet,
    coeffs: Vec<HeckeElement>,
}

impl HeckeSeriesPoly {
    pub fn new(alphabet: Alphabet, mut coeffs: Vec<HeckeElement>) -> Result<Self, HeckeError> {
        for c in &coeffs {
            if c.alphabet() != alphabet {
                return Err(HeckeError::AlphabetMismatch);
            }
        }
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Ok(HeckeSeriesPoly { alphabet, coeffs })
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Coefficient of `X^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> HeckeElement {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| HeckeElement::zero(self.alphabet))
    }

    pub fn coeffs(&self) -> &[HeckeElement] {
        &self.coeffs
    }

    /// Replace one coefficient (used by perturbation checks in tests).
    pub fn with_coeff(&self, i: usize, c: HeckeElement) -> Result<Self, HeckeError> {
        if c.alphabet() != self.alphabet {
            return Err(HeckeError::AlphabetMismatch);
        }
        let mut coeffs = self.coeffs.clone();
        if coeffs.len() <= i {
            coeffs.resize(i + 1, HeckeElement::zero(self.alphabet));
        }
        coeffs[i] = c;
        HeckeSeriesPoly::new(self.alphabet, coeffs)
    }

    /// Apply the spherical map coefficientwise and assemble the result
    /// as a polynomial in the series variable of `ctx`.
    pub fn image(&self, ctx: &SphericalContext) -> Result<MultiPoly, HeckeError> {
        let table = ctx.table();
        let xvar = ctx.series_var();
        let mut acc = MultiPoly::zero(table);
        for (i, c) in self.coeffs.iter().enumerate() {
            let img = c.omega_apply(ctx)?;
            let poly = img.as_poly().expect("generator images are polynomial");
            acc = acc.add(&poly.mul_monomial(&Monomial::var_pow(xvar, i as i16), &Rat::one()));
        }
        Ok(acc)
    }

    /// Tensor analogue of [`Self::image`]: left factors map through
    /// `cx`, right factors through `cy`.
    pub fn image_tensor(
        &self,
        cx: &SphericalContext,
        cy: &SphericalContext,
    ) -> Result<MultiPoly, HeckeError> {
        let table = cx.table();
        let xvar = cx.series_var();
        let mut acc = MultiPoly::zero(table);
        for (i, c) in self.coeffs.iter().enumerate() {
            let img = c.omega_apply_tensor(cx, cy)?;
            let poly = img.as_poly().expect("generator images are polynomial");
            acc = acc.add(&poly.mul_monomial(&Monomial::var_pow(xvar, i as i16), &Rat::one()));
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "alphabet": self.alphabet.name(),
            "coeffs": self.coeffs.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
        })
    }
}

/// The lower Newton polygon of a series polynomial with respect to the
/// `p`-valuation of its coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct NewtonPolygon {
    /// Hull vertices, left to right; collinear interior points are
    /// dropped, so vertices mark genuine slope changes.
    pub vertices: Vec<(i64, i64)>,
    /// Slope of each hull segment, exact.
    pub slopes: Vec<Rat>,
}

impl NewtonPolygon {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "vertices": self.vertices.iter().map(|(x, y)| json!([x, y])).collect::<Vec<_>>(),
            "slopes": self
                .slopes
                .iter()
                .map(|s| json!({"n": s.numer().to_string(), "d": s.denom().to_string()}))
                .collect::<Vec<_>>(),
        })
    }

    /// True when every segment slope is an integer.
    pub fn slopes_are_integral(&self) -> bool {
        self.slopes.iter().all(|s| s.denom().is_one())
    }
}

/// Lower convex hull of the points `(i, v_i)`, skipping absent values.
pub fn lower_hull(points: &[Option<i64>]) -> NewtonPolygon {
    let pts: Vec<(i64, i64)> = points
        .iter()
        .enumerate()
        .filter_map(|(i, v)| v.map(|v| (i as i64, v)))
        .collect();
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for p in pts {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            // Pop `b` when it lies on or above the segment a→p.
            let cross = (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let slopes = hull
        .windows(2)
        .map(|w| Rat::new((w[1].1 - w[0].1).into(), (w[1].0 - w[0].0).into()))
        .collect();
    NewtonPolygon {
        vertices: hull,
        slopes,
    }
}

/// `p`-valuation of a Hecke element: the least exponent of `p` across
/// all its coefficients.  `None` for the zero element.
pub fn element_valuation(e: &HeckeElement) -> Option<i64> {
    let mut best: Option<i64> = None;
    for (_, c) in e.terms() {
        if let Some(v) = c.min_exp_in(0) {
            let v = i64::from(v);
            best = Some(best.map_or(v, |b| b.min(v)));
        }
    }
    best
}

/// Newton polygon of a series polynomial with respect to `p`-valuations
/// of its Hecke coefficients.
pub fn newton_polygon(s: &HeckeSeriesPoly) -> NewtonPolygon {
    let degree = s.degree().map_or(0, |d| d + 1);
    let vals: Vec<Option<i64>> = (0..degree)
        .map(|i| element_valuation(&s.coeff(i)))
        .collect();
    lower_hull(&vals)
}

/// Check the palindromic functional equation of a degree-16 tensor
/// series polynomial: for `i = 0..=8` the coefficient of `X^(16-i)`
/// must equal `(p^6 P⊗P)^(8-i)` times the coefficient of `X^i`.
/// Returns one `(i, holds)` pair per index.
pub fn functional_equation_check(
    s: &HeckeSeriesPoly,
) -> Result<Vec<(usize, bool)>, HeckeError> {
    if s.alphabet() != Alphabet::Genus2Tensor {
        return Err(HeckeError::AlphabetMismatch);
    }
    let pp = HeckeElement::monomial(
        Alphabet::Genus2Tensor,
        &[0, 0, 1, 0, 0, 1],
        p_power(6),
    );
    let mut out = Vec::with_capacity(9);
    for i in 0..=8usize {
        let lhs = s.coeff(16 - i);
        let rhs = s.coeff(i).mul(&pp.pow((8 - i) as u32)?)?;
        out.push((i, lhs == rhs));
    }
    Ok(out)
}

/// Convenience wrapper: does the functional equation hold at every index?
pub fn functional_equation_holds(s: &HeckeSeriesPoly) -> Result<bool, HeckeError> {
    Ok(functional_equation_check(s)?.iter().all(|(_, ok)| *ok))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_rf;
    use crate::ratfn::RationalFn;
    use crate::spherical::VarGroup;
    use crate::vars::VarTable;

    #[test]
    fn trailing_zeros_are_trimmed() {
        let a = Alphabet::Genus2;
        let s = HeckeSeriesPoly::new(
            a,
            vec![
                HeckeElement::one(a),
                HeckeElement::generator(a, 0),
                HeckeElement::zero(a),
                HeckeElement::zero(a),
            ],
        )
        .unwrap();
        assert_eq!(s.degree(), Some(1));
        assert!(s.coeff(5).is_zero());
    }

    #[test]
    fn image_assembles_in_series_variable() {
        let ctx = SphericalContext::new(1, VarGroup::X).unwrap();
        let a = Alphabet::Genus1;
        let s = HeckeSeriesPoly::new(
            a,
            vec![HeckeElement::one(a), HeckeElement::generator(a, 0).neg()],
        )
        .unwrap();
        let img = s.image(&ctx).unwrap();
        let expect = parse_rf(ctx.table(), "1 - x0*(1+x1)*X").unwrap();
        assert!(RationalFn::from_poly(img).eq_rf(&expect));
    }

    #[test]
    fn hull_of_fabricated_valuations() {
        let np = lower_hull(&[Some(0), Some(5), Some(1), Some(3)]);
        assert_eq!(np.vertices, vec![(0, 0), (2, 1), (3, 3)]);
        assert_eq!(np.slopes.len(), 2);
        assert_eq!(np.slopes[0], Rat::new(1.into(), 2.into()));
        assert_eq!(np.slopes[1], Rat::new(2.into(), 1.into()));
        assert!(!np.slopes_are_integral());
    }

    #[test]
    fn hull_drops_collinear_points() {
        let np = lower_hull(&[Some(0), Some(2), Some(4), Some(6)]);
        assert_eq!(np.vertices, vec![(0, 0), (3, 6)]);
        assert_eq!(np.slopes, vec![Rat::new(2.into(), 1.into())]);
        assert!(np.slopes_are_integral());
    }

    #[test]
    fn hull_skips_missing_points() {
        let np = lower_hull(&[Some(0), None, Some(1), None, Some(6)]);
        assert_eq!(np.vertices, vec![(0, 0), (2, 1), (4, 6)]);
    }

    #[test]
    fn element_valuation_reads_min_p_exponent() {
        let a = Alphabet::Genus2;
        let prime = VarTable::prime_only();
        let c = crate::parse::parse_poly(&prime, "p^3 + p^-2").unwrap();
        let e = HeckeElement::monomial(a, &[1, 0, 0], c);
        assert_eq!(element_valuation(&e), Some(-2));
        assert_eq!(element_valuation(&HeckeElement::zero(a)), None);
    }

    #[test]
    fn functional_equation_detects_perturbation() {
        // Build a palindromic series from scratch: s_i arbitrary for
        // i <= 8, the rest generated by the equation.
        let a = Alphabet::Genus2Tensor;
        let pp = HeckeElement::monomial(a, &[0, 0, 1, 0, 0, 1], p_power(6));
        let mut low: Vec<HeckeElement> = Vec::new();
        for i in 0..=8usize {
            let mut e = HeckeElement::one(a).scale(&p_power(i as i32));
            if i % 2 == 1 {
                e = e
                    .add(&HeckeElement::monomial(
                        a,
                        &[1, 0, 0, 1, 0, 0],
                        p_power(0),
                    ))
                    .unwrap();
            }
            low.push(e);
        }
        let mut coeffs = low.clone();
        for i in (0..8usize).rev() {
            coeffs.push(low[i].mul(&pp.pow((8 - i) as u32).unwrap()).unwrap());
        }
        let s = HeckeSeriesPoly::new(a, coeffs).unwrap();
        assert!(functional_equation_holds(&s).unwrap());
        // Perturb the X^3 coefficient by T⊗T.
        let perturbed = s
            .with_coeff(
                3,
                s.coeff(3)
                    .add(&HeckeElement::monomial(
                        a,
                        &[1, 0, 0, 1, 0, 0],
                        p_power(0),
                    ))
                    .unwrap(),
            )
            .unwrap();
        let checks = functional_equation_check(&perturbed).unwrap();
        for (i, ok) in checks {
            assert_eq!(ok, i != 3, "index {}", i);
        }
    }
}
