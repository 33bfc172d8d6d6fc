//! Shared orchestration of every verification in the crate.
//!
//! The expensive ingredient — the resummed genus-2 convolution closed
//! form — is computed at most once per [`Engine`] and shared by every
//! check that needs it, as are the derived numerator tables and the
//! individual reports.  Getters may be called in any order and from
//! multiple threads; each result is computed exactly once.
//!
//! The engine runs in one of two prime modes.  [`PrimeMode::Symbolic`]
//! keeps the prime variable symbolic everywhere and is the
//! authoritative mode.  [`PrimeMode::Numeric`] evaluates the prime
//! variable at a concrete prime inside the genus-2 convolution checks,
//! which is the only place the substitution buys real time; every
//! other check runs identical arithmetic in both modes.  A report must
//! come out with the same pass/fail statuses either way.

use once_cell::sync::OnceCell;
use serde_json::json;

use crate::hecke::derive::{
    derive_rs, diff_against_transcription, shimura_identity_genus1, shimura_identity_genus2,
    verify_derived_identity, DerivedRS, DiffReport,
};
use crate::hecke::{
    functional_equation_check, newton_polygon, p_power, Alphabet, HeckeElement, HeckeError,
    NewtonPolygon,
};
use crate::lfactor::{
    self, Aff, ConjectureDenominatorReport, EisensteinMergeReport, HodgeTensorReport,
    IkedaFactorReport, LfactorError,
};
use crate::poly::{ArithError, MultiPoly, Rat};
use crate::rankin::{
    convolution_closed_form, verify_genus1_convolution, verify_genus2_convolution_at_prime,
    verify_genus2_convolution_with, verify_power_series, ConvolutionReport,
    Genus1ConvolutionReport, PowerSeriesReport, RankinError,
};
use crate::ratfn::RationalFn;
use crate::spherical::{SphericalContext, SphericalError, VarGroup};
use crate::transcribe;

use num_traits::One;

/// How the engine treats the prime variable in the expensive genus-2
/// convolution checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrimeMode {
    /// Keep the prime symbolic everywhere.  Authoritative.
    Symbolic,
    /// Evaluate the prime variable at the given prime inside the
    /// genus-2 convolution checks only.  Much faster, same statuses.
    Numeric(u32),
}

/// Any failure surfaced by an engine getter.
#[derive(Debug, Clone, PartialEq)]
pub enum EngineError {
    Arith(ArithError),
    Spherical(SphericalError),
    Hecke(HeckeError),
    Rankin(RankinError),
    Lfactor(LfactorError),
}

impl std::fmt::Display for EngineError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EngineError::Arith(e) => write!(f, "arithmetic failure: {}", e),
            EngineError::Spherical(e) => write!(f, "spherical-map failure: {}", e),
            EngineError::Hecke(e) => write!(f, "algebra failure: {}", e),
            EngineError::Rankin(e) => write!(f, "convolution failure: {}", e),
            EngineError::Lfactor(e) => write!(f, "local-factor failure: {}", e),
        }
    }
}

impl std::error::Error for EngineError {}

impl From<ArithError> for EngineError {
    fn from(e: ArithError) -> Self {
        EngineError::Arith(e)
    }
}

impl From<SphericalError> for EngineError {
    fn from(e: SphericalError) -> Self {
        EngineError::Spherical(e)
    }
}

impl From<HeckeError> for EngineError {
    fn from(e: HeckeError) -> Self {
        EngineError::Hecke(e)
    }
}

impl From<RankinError> for EngineError {
    fn from(e: RankinError) -> Self {
        EngineError::Rankin(e)
    }
}

impl From<LfactorError> for EngineError {
    fn from(e: LfactorError) -> Self {
        EngineError::Lfactor(e)
    }
}

/// The genus-2 series identity: the reciprocal spinor polynomial maps
/// to the displayed closed form, and the four-term coefficient family
/// resums back to the same function.
#[derive(Debug, Clone, Copy)]
pub struct Eq3Report {
    /// The generator-level identity behind the display holds.
    pub hecke_identity_holds: bool,
    /// The coefficient family resums to the closed form.
    pub delta_form_resums_to_closed: bool,
    /// The closed form is invariant under the Weyl group action.
    pub closed_form_weyl_invariant: bool,
}

impl Eq3Report {
    pub fn passed(&self) -> bool {
        self.hecke_identity_holds
            && self.delta_form_resums_to_closed
            && self.closed_form_weyl_invariant
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "hecke_identity_holds": self.hecke_identity_holds,
            "delta_form_resums_to_closed": self.delta_form_resums_to_closed,
            "closed_form_weyl_invariant": self.closed_form_weyl_invariant,
        })
    }
}

/// The displayed coefficient formula: both printed shapes agree with
/// each other and with the derived coefficient family, the renamed
/// second-group copy is the exact image of the first, and the family
/// reproduces the series coefficients termwise.
#[derive(Debug, Clone, Copy)]
pub struct Formula1Report {
    pub forms_agree_with_each_other: bool,
    pub first_form_matches_derived: bool,
    pub y_copy_matches: bool,
    pub series_checked_to: u32,
    pub series_coefficients_match: bool,
}

impl Formula1Report {
    pub fn passed(&self) -> bool {
        self.forms_agree_with_each_other
            && self.first_form_matches_derived
            && self.y_copy_matches
            && self.series_coefficients_match
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "forms_agree_with_each_other": self.forms_agree_with_each_other,
            "first_form_matches_derived": self.first_form_matches_derived,
            "y_copy_matches": self.y_copy_matches,
            "series_checked_to": self.series_checked_to,
            "series_coefficients_match": self.series_coefficients_match,
        })
    }
}

/// Facts about the derived numerator tables: the companion identity
/// with the closed form holds, the functional equation is satisfied,
/// the distinguished corner entries have their known values, and the
/// transcription diff flags exactly the three suspect rows.
#[derive(Debug, Clone)]
pub struct Theorem31Report {
    pub identity_holds: bool,
    pub functional_equation_all_hold: bool,
    /// `s_1` is minus the product of the two degree-one generators.
    pub s1_is_minus_t_tensor_t: bool,
    pub r1_is_zero: bool,
    pub r11_is_zero: bool,
    /// `r_12 = p^34 (P ⊗ P)^6`.
    pub r12_matches: bool,
    /// `s_16 = p^48 (P ⊗ P)^8`.
    pub s16_matches: bool,
    /// Every transcription row not flagged as suspect matches.
    pub clean_rows_match: bool,
    /// The mismatching rows are exactly the flagged suspects.
    pub mismatches_are_exactly_suspects: bool,
    /// The mismatching rows, as (table, index) pairs.
    pub mismatches: Vec<(&'static str, usize)>,
}

impl Theorem31Report {
    pub fn passed(&self) -> bool {
        self.identity_holds
            && self.functional_equation_all_hold
            && self.s1_is_minus_t_tensor_t
            && self.r1_is_zero
            && self.r11_is_zero
            && self.r12_matches
            && self.s16_matches
            && self.clean_rows_match
            && self.mismatches_are_exactly_suspects
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "identity_holds": self.identity_holds,
            "functional_equation_all_hold": self.functional_equation_all_hold,
            "s1_is_minus_t_tensor_t": self.s1_is_minus_t_tensor_t,
            "r1_is_zero": self.r1_is_zero,
            "r11_is_zero": self.r11_is_zero,
            "r12_matches": self.r12_matches,
            "s16_matches": self.s16_matches,
            "clean_rows_match": self.clean_rows_match,
            "mismatches_are_exactly_suspects": self.mismatches_are_exactly_suspects,
            "mismatches": self
                .mismatches
                .iter()
                .map(|(side, i)| json!([side, i]))
                .collect::<Vec<_>>(),
        })
    }
}

/// Newton polygons of the two derived tables under `p`-valuation.
#[derive(Debug, Clone)]
pub struct NewtonReport {
    pub r: NewtonPolygon,
    pub s: NewtonPolygon,
    /// The terminal vertex of the first table's hull is `(12, 34)`.
    pub r_terminal_matches: bool,
    /// The terminal vertex of the second table's hull is `(16, 48)`.
    pub s_terminal_matches: bool,
    /// Every segment slope on both hulls is an integer.
    pub slopes_integral: bool,
}

impl NewtonReport {
    pub fn passed(&self) -> bool {
        self.r_terminal_matches && self.s_terminal_matches && self.slopes_integral
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "r": self.r.to_json(),
            "s": self.s.to_json(),
            "r_terminal_matches": self.r_terminal_matches,
            "s_terminal_matches": self.s_terminal_matches,
            "slopes_integral": self.slopes_integral,
        })
    }
}

type Cache<T> = OnceCell<Result<T, EngineError>>;

fn cached<T>(cell: &Cache<T>, init: impl FnOnce() -> Result<T, EngineError>) -> Result<&T, EngineError> {
    cell.get_or_init(init).as_ref().map_err(Clone::clone)
}

/// Cached verification engine over the four standard contexts.
pub struct Engine {
    mode: PrimeMode,
    prefix_order: u32,
    cx2: SphericalContext,
    cy2: SphericalContext,
    cx1: SphericalContext,
    cy1: SphericalContext,
    closed2: Cache<RationalFn>,
    convolution2: Cache<ConvolutionReport>,
    genus1: Cache<Genus1ConvolutionReport>,
    power2: Cache<PowerSeriesReport>,
    power3: Cache<PowerSeriesReport>,
    rs: Cache<DerivedRS>,
    eq3: Cache<Eq3Report>,
    formula1: Cache<Formula1Report>,
    theorem31: Cache<Theorem31Report>,
    funceq: Cache<Vec<(usize, bool)>>,
    diff: Cache<DiffReport>,
    newton: Cache<NewtonReport>,
}

impl Engine {
    pub fn new(mode: PrimeMode) -> Result<Engine, EngineError> {
        Ok(Engine {
            mode,
            prefix_order: 12,
            cx2: SphericalContext::new(2, VarGroup::X)?,
            cy2: SphericalContext::new(2, VarGroup::Y)?,
            cx1: SphericalContext::new(1, VarGroup::X)?,
            cy1: SphericalContext::new(1, VarGroup::Y)?,
            closed2: OnceCell::new(),
            convolution2: OnceCell::new(),
            genus1: OnceCell::new(),
            power2: OnceCell::new(),
            power3: OnceCell::new(),
            rs: OnceCell::new(),
            eq3: OnceCell::new(),
            formula1: OnceCell::new(),
            theorem31: OnceCell::new(),
            funceq: OnceCell::new(),
            diff: OnceCell::new(),
            newton: OnceCell::new(),
        })
    }

    /// Set the order through which convolution series prefixes are
    /// compared (clamped up to 12 by the underlying checks).
    pub fn with_prefix_order(mut self, order: u32) -> Engine {
        self.prefix_order = order;
        self
    }

    pub fn mode(&self) -> PrimeMode {
        self.mode
    }

    pub fn prefix_order(&self) -> u32 {
        self.prefix_order
    }

    pub fn genus2_x(&self) -> &SphericalContext {
        &self.cx2
    }

    pub fn genus2_y(&self) -> &SphericalContext {
        &self.cy2
    }

    pub fn genus1_x(&self) -> &SphericalContext {
        &self.cx1
    }

    pub fn genus1_y(&self) -> &SphericalContext {
        &self.cy1
    }

    /// The resummed genus-2 convolution closed form, always symbolic.
    /// This is the shared heavyweight ingredient.
    pub fn closed_form_genus2(&self) -> Result<&RationalFn, EngineError> {
        cached(&self.closed2, || {
            convolution_closed_form(&self.cx2, &self.cy2).map_err(Into::into)
        })
    }

    /// The full genus-2 convolution report, in the engine's prime mode.
    pub fn convolution_report(&self) -> Result<&ConvolutionReport, EngineError> {
        cached(&self.convolution2, || match self.mode {
            PrimeMode::Symbolic => {
                let closed = self.closed_form_genus2()?;
                verify_genus2_convolution_with(&self.cx2, &self.cy2, closed, self.prefix_order)
                    .map_err(Into::into)
            }
            PrimeMode::Numeric(p) => {
                verify_genus2_convolution_at_prime(&self.cx2, &self.cy2, p, self.prefix_order)
                    .map_err(Into::into)
            }
        })
    }

    pub fn genus1_report(&self) -> Result<&Genus1ConvolutionReport, EngineError> {
        cached(&self.genus1, || {
            verify_genus1_convolution(&self.cx1, &self.cy1).map_err(Into::into)
        })
    }

    /// Power-reindexing report for exponent `m` in `{2, 3}`.
    pub fn power_report(&self, m: u32) -> Result<&PowerSeriesReport, EngineError> {
        let cell = match m {
            2 => &self.power2,
            3 => &self.power3,
            _ => return Err(RankinError::UnsupportedPower(m).into()),
        };
        cached(cell, || {
            verify_power_series(&self.cx2, m).map_err(Into::into)
        })
    }

    /// The derived numerator tables, solved from the symbolic closed form.
    pub fn derived_tables(&self) -> Result<&DerivedRS, EngineError> {
        cached(&self.rs, || {
            let closed = self.closed_form_genus2()?;
            derive_rs(&self.cx2, &self.cy2, closed).map_err(Into::into)
        })
    }

    pub fn eq3_report(&self) -> Result<&Eq3Report, EngineError> {
        cached(&self.eq3, || {
            let ctx = &self.cx2;
            let closed = ctx.andrianov_series_genus2()?;
            let resummed = ctx
                .genus2_delta_form()?
                .resum_with_hints(ctx.series_var(), &ctx.coefficient_denominator_factors());
            Ok(Eq3Report {
                hecke_identity_holds: shimura_identity_genus2(ctx)?,
                delta_form_resums_to_closed: resummed.eq_rf(&closed),
                closed_form_weyl_invariant: ctx.is_weyl_invariant(&closed),
            })
        })
    }

    pub fn formula1_report(&self) -> Result<&Formula1Report, EngineError> {
        cached(&self.formula1, || self.compute_formula1())
    }

    fn compute_formula1(&self) -> Result<Formula1Report, EngineError> {
        let ctx = &self.cx2;
        let derived = ctx.genus2_delta_form()?;
        let first = transcribe::coefficient_formula_first_form();
        let second = transcribe::coefficient_formula_second_form();

        let mut forms_agree_with_each_other = first.len() == second.len();
        for (b, c) in first.terms() {
            forms_agree_with_each_other &= match second.coefficient(b) {
                Some(c2) => c.eq_rf(c2),
                None => false,
            };
        }

        let mut first_form_matches_derived = first.len() == derived.len();
        for (b, c) in derived.terms() {
            first_form_matches_derived &= match first.coefficient(b) {
                Some(ct) => c.eq_rf(ct),
                None => false,
            };
        }

        let y_copy_matches = y_copy_is_renamed_x()?;

        let order = 20u32;
        let closed = ctx.andrianov_series_genus2()?;
        let coeffs = closed.series_expand(ctx.series_var(), order as usize)?;
        let hints = ctx.coefficient_denominator_factors();
        let mut series_coefficients_match = true;
        for (delta, c) in coeffs.iter().enumerate() {
            let from_family = derived.eval_reduced(delta as u32, &hints);
            series_coefficients_match &= from_family.eq_rf(&RationalFn::from_poly(c.clone()));
        }

        Ok(Formula1Report {
            forms_agree_with_each_other,
            first_form_matches_derived,
            y_copy_matches,
            series_checked_to: order,
            series_coefficients_match,
        })
    }

    pub fn theorem31_report(&self) -> Result<&Theorem31Report, EngineError> {
        cached(&self.theorem31, || {
            let closed = self.closed_form_genus2()?;
            let rs = self.derived_tables()?;
            let identity_holds = verify_derived_identity(&self.cx2, &self.cy2, closed, rs)?;
            let funceq = self.functional_equation()?;
            let diff = self.diff_report()?;
            let a = Alphabet::Genus2Tensor;
            let minus_tt = HeckeElement::monomial(a, &[1, 0, 0, 1, 0, 0], p_power(0).neg());
            let r12_expected = HeckeElement::monomial(a, &[0, 0, 6, 0, 0, 6], p_power(34));
            let s16_expected = HeckeElement::monomial(a, &[0, 0, 8, 0, 0, 8], p_power(48));
            let mismatches = diff.mismatches();
            let expected: Vec<(&'static str, usize)> = vec![("s", 6), ("s", 8), ("s", 10)];
            Ok(Theorem31Report {
                identity_holds,
                functional_equation_all_hold: funceq.iter().all(|(_, ok)| *ok),
                s1_is_minus_t_tensor_t: rs.s.coeff(1) == minus_tt,
                r1_is_zero: rs.r.coeff(1).is_zero(),
                r11_is_zero: rs.r.coeff(11).is_zero(),
                r12_matches: rs.r.coeff(12) == r12_expected,
                s16_matches: rs.s.coeff(16) == s16_expected,
                clean_rows_match: diff.clean_rows_all_match(),
                mismatches_are_exactly_suspects: mismatches == expected,
                mismatches,
            })
        })
    }

    /// Per-index results of the palindromic functional equation on the
    /// second derived table.
    pub fn functional_equation(&self) -> Result<&Vec<(usize, bool)>, EngineError> {
        cached(&self.funceq, || {
            let rs = self.derived_tables()?;
            functional_equation_check(&rs.s).map_err(Into::into)
        })
    }

    /// Row-by-row diff of the derived tables against the transcription.
    pub fn diff_report(&self) -> Result<&DiffReport, EngineError> {
        cached(&self.diff, || {
            let rs = self.derived_tables()?;
            Ok(diff_against_transcription(rs))
        })
    }

    pub fn newton_report(&self) -> Result<&NewtonReport, EngineError> {
        cached(&self.newton, || {
            let rs = self.derived_tables()?;
            let r = newton_polygon(&rs.r);
            let s = newton_polygon(&rs.s);
            let r_terminal_matches = r.vertices.last() == Some(&(12, 34));
            let s_terminal_matches = s.vertices.last() == Some(&(16, 48));
            let slopes_integral = r.slopes_are_integral() && s.slopes_are_integral();
            Ok(NewtonReport {
                r,
                s,
                r_terminal_matches,
                s_terminal_matches,
                slopes_integral,
            })
        })
    }

    /// The displayed genus-1 series identity at the generator level.
    pub fn shimura_genus1(&self) -> Result<bool, EngineError> {
        shimura_identity_genus1(&self.cx1).map_err(Into::into)
    }

    /// The displayed genus-2 series identity at the generator level.
    pub fn shimura_genus2(&self) -> Result<bool, EngineError> {
        shimura_identity_genus2(&self.cx2).map_err(Into::into)
    }

    /// Denominator of the degree-4 lifting conjecture, checked against
    /// the convolution pole product under the standard substitution.
    pub fn conjecture_denominator(&self) -> ConjectureDenominatorReport {
        lfactor::verify_conjecture_denominator()
    }

    /// Parameter-merge report for the Siegel Eisenstein series of genus `2m`.
    pub fn eisenstein_merge(&self, m: usize) -> Result<EisensteinMergeReport, EngineError> {
        lfactor::verify_eisenstein_merge(m).map_err(Into::into)
    }

    /// Factorization report for the standard factor of a degree-`2m` lift,
    /// with the weight kept symbolic.
    pub fn ikeda_standard(&self, m: usize) -> Result<IkedaFactorReport, EngineError> {
        lfactor::verify_ikeda_standard_factor(&Aff::k(), m).map_err(Into::into)
    }

    /// Tensor-product Hodge type against the displayed sixteen pairs.
    pub fn hodge_tensor(&self) -> HodgeTensorReport {
        lfactor::verify_hodge_tensor()
    }
}

/// The renamed second-group copy of the coefficient formula is the
/// exact image of the first-group form under the variable renaming.
fn y_copy_is_renamed_x() -> Result<bool, EngineError> {
    let x = transcribe::coefficient_formula_first_form();
    let y = transcribe::coefficient_formula_first_form_y();
    let t = x.table().clone();
    let bindings: Vec<(usize, MultiPoly)> = [("x0", "y0"), ("x1", "y1"), ("x2", "y2")]
        .iter()
        .map(|(a, b)| (t.var(a), MultiPoly::from_monomial(&t, t.mono(b), Rat::one())))
        .collect();
    if x.len() != y.len() {
        return Ok(false);
    }
    for (b, c) in x.terms() {
        let renamed = MultiPoly::from_monomial(&t, *b, Rat::one()).substitute(&bindings)?;
        let renamed_base = match renamed.as_monomial() {
            Some((m, coef)) if coef.is_one() => m,
            _ => return Ok(false),
        };
        match y.coefficient(&renamed_base) {
            Some(cy) => {
                if !c.substitute(&bindings)?.eq_rf(cy) {
                    return Ok(false);
                }
            }
            None => return Ok(false),
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cheap_reports_pass() {
        let engine = Engine::new(PrimeMode::Symbolic).unwrap();
        let eq3 = engine.eq3_report().unwrap();
        assert!(eq3.passed(), "{:?}", eq3);
        let f1 = engine.formula1_report().unwrap();
        assert!(f1.passed(), "{:?}", f1);
        assert_eq!(f1.series_checked_to, 20);
        assert!(engine.shimura_genus1().unwrap());
        assert!(engine.shimura_genus2().unwrap());
        let g1 = engine.genus1_report().unwrap();
        assert!(g1.passed(), "{:?}", g1);
    }

    #[test]
    fn lfactor_reports_pass() {
        let engine = Engine::new(PrimeMode::Symbolic).unwrap();
        assert!(engine.conjecture_denominator().passed());
        for m in 1..=3 {
            assert!(engine.eisenstein_merge(m).unwrap().passed());
        }
        for m in 1..=2 {
            assert!(engine.ikeda_standard(m).unwrap().passed());
        }
        assert!(engine.hodge_tensor().passed());
    }

    #[test]
    fn power_report_rejects_bad_exponent() {
        let engine = Engine::new(PrimeMode::Symbolic).unwrap();
        assert!(matches!(
            engine.power_report(4),
            Err(EngineError::Rankin(RankinError::UnsupportedPower(4)))
        ));
    }

    #[test]
    fn derived_table_reports_pass() {
        let engine = Engine::new(PrimeMode::Symbolic).unwrap();
        let t31 = engine.theorem31_report().unwrap();
        assert!(t31.passed(), "{:?}", t31);
        assert_eq!(t31.mismatches, vec![("s", 6), ("s", 8), ("s", 10)]);
        let newton = engine.newton_report().unwrap();
        assert!(newton.passed(), "{:?}", newton);
        assert_eq!(newton.r.vertices.first(), Some(&(0, 0)));
        assert_eq!(newton.s.vertices.last(), Some(&(16, 48)));
    }
}
