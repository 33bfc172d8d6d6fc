//! Literal transcriptions of the printed closed-form displays.
//!
//! Everything in this module is a faithful rendering of a displayed
//! formula into exact arithmetic; the displays are *verification targets*,
//! while the derived objects elsewhere in the crate are authoritative.
//! Two displays need a documented repair to be representable at all:
//!
//! * one term of the sixteen-term convolution display contains the factor
//!   `(x1 - x1)` in its denominator, which vanishes identically; symmetry
//!   with the neighbouring terms forces `(x1 - x2)`, and the term carries
//!   a note recording the repair;
//! * the cubic closed-form display begins `p^{-1}(-p + ...)`, which would
//!   give the series the constant term `-1`; the series starts at `1`, so
//!   the transcription restores a global minus sign and says so in its
//!   metadata.

use num_traits::One;

use crate::parse::{parse_poly, parse_rf};
use crate::poly::{MultiPoly, Rat};
use crate::ratfn::RationalFn;
use crate::series::DeltaSeries;
use crate::vars::{Monomial, VarTable};

fn table() -> VarTable {
    VarTable::master()
}

/// Build a delta-indexed closed form from display terms.  Each pair is
/// `(static factor, delta base)`: the displayed summand
/// `c * z^{k+delta}` splits into the static monomial `c * z^k` and the
/// base `z` carrying the `delta` exponent.  All terms sit over the common
/// denominator `den`, and every base is multiplied by `z0` for the global
/// `z0^delta` prefactor.
fn delta_form_from_display(
    terms: &[(&str, &str)],
    z0: &str,
    den: &str,
) -> DeltaSeries {
    let t = table();
    let den = parse_poly(&t, den).expect("display denominator parses");
    let z0m = t.mono(z0);
    let mut raw: Vec<(Monomial, RationalFn)> = Vec::new();
    for (static_part, base) in terms {
        let num = parse_poly(&t, static_part).expect("display term parses");
        let base_mono = t.mono_product(base).mul(&z0m);
        raw.push((
            base_mono,
            RationalFn::new(num, den.clone()).expect("denominator nonzero"),
        ));
    }
    DeltaSeries::new(&t, raw)
}

const GENUS2_COEFF_DEN_X: &str = "p*(1-x1)*(1-x2)*(1-x1*x2)*(x1-x2)";
const GENUS2_COEFF_DEN_Y: &str = "p*(1-y1)*(1-y2)*(1-y1*y2)*(y1-y2)";

/// First printed form of the genus-2 coefficient formula (x-variables):
/// sixteen monomial summands over the common denominator.
pub fn coefficient_formula_first_form() -> DeltaSeries {
    delta_form_from_display(
        &[
            ("p*x1^3*x2", "x1"),
            ("-p*x1^2", "x1"),
            ("-p*x1^3*x2^2", "x1*x2"),
            ("p*x1^2*x2^3", "x1*x2"),
            ("-p*x1*x2^3", "x2"),
            ("p*x2^2", "x2"),
            ("p*x1", "1"),
            ("-p*x2", "1"),
            ("-x1^2*x2^2", "x1"),
            ("x1*x2", "x1"),
            ("x1^2*x2", "x1*x2"),
            ("-x1*x2^2", "x1*x2"),
            ("x1^2*x2^2", "x2"),
            ("-x1*x2", "x2"),
            ("-x1^2*x2", "1"),
            ("x1*x2^2", "1"),
        ],
        "x0",
        GENUS2_COEFF_DEN_X,
    )
}

/// Second printed form of the same formula: four bracketed groups, one per
/// delta base, with the global minus sign folded into the statics.
pub fn coefficient_formula_second_form() -> DeltaSeries {
    delta_form_from_display(
        &[
            ("-(1-x1*x2)*(p*x1-x2)*x1", "x1"),
            ("-(1-x1*x2)*(x1-p*x2)*x2", "x2"),
            ("(1-p*x1*x2)*(x1-x2)*x1*x2", "x1*x2"),
            ("(p-x1*x2)*(x1-x2)", "1"),
        ],
        "x0",
        GENUS2_COEFF_DEN_X,
    )
}

/// The y-variable copy of the first form, as displayed where the
/// convolution is set up.  Transcribed independently so that the two
/// displays cross-check each other.
pub fn coefficient_formula_first_form_y() -> DeltaSeries {
    delta_form_from_display(
        &[
            ("p*y1^3*y2", "y1"),
            ("-p*y1^2", "y1"),
            ("-p*y1^3*y2^2", "y1*y2"),
            ("p*y1^2*y2^3", "y1*y2"),
            ("-p*y1*y2^3", "y2"),
            ("p*y2^2", "y2"),
            ("p*y1", "1"),
            ("-p*y2", "1"),
            ("-y1^2*y2^2", "y1"),
            ("y1*y2", "y1"),
            ("y1^2*y2", "y1*y2"),
            ("-y1*y2^2", "y1*y2"),
            ("y1^2*y2^2", "y2"),
            ("-y1*y2", "y2"),
            ("-y1^2*y2", "1"),
            ("y1*y2^2", "1"),
        ],
        "y0",
        GENUS2_COEFF_DEN_Y,
    )
}

/// One summand of the sixteen-term convolution display.
#[derive(Debug, Clone)]
pub struct ConvolutionTerm {
    /// Base monomial of the pole `1 - base*X`.
    pub base: Monomial,
    /// The X-free coefficient in front of `1/(1 - base*X)`, as printed.
    pub coefficient: RationalFn,
    /// True when the printed denominator needed the vanishing-factor
    /// repair.
    pub corrected: bool,
    /// Human-readable note for repaired terms.
    pub note: Option<&'static str>,
}

/// The sixteen summands of the convolution display, in printed order.
/// Two terms are repaired, each with a note: the third term's
/// denominator is printed with the vanishing factor `(x1 - x1)` and is
/// transcribed as `(x1 - x2)`; the tenth term is printed with a leading
/// minus although the exact resummation forces a plus there (flipping
/// it back makes even the constant series coefficient wrong).
pub fn convolution_terms_transcribed() -> Vec<ConvolutionTerm> {
    let t = table();
    let spec: &[(&str, &str, Option<&'static str>)] = &[
        (
            "x0*x1*y0*y1*y2",
            "-((p*x1 - x2)*(1 - p*y1*y2)*x1*y1*y2)/(p^2*(1-x1)*(1-x2)*(x1-x2)*(1-y1)*(1-y2)*(1-y1*y2))",
            None,
        ),
        (
            "x0*x2*y0*y1",
            "(x2*y1*(x1 - p*x2)*(p*y1 - y2))/(p^2*(1-x1)*(1-x2)*(x1-x2)*(1-y1)*(1-y2)*(y1-y2))",
            None,
        ),
        (
            "x0*y0*x2*y2",
            "(x2*y2*(x1 - p*x2)*(y1 - p*y2))/(p^2*(1-x1)*(1-x2)*(x1-x2)*(1-y1)*(1-y2)*(y1-y2))",
            Some(
                "displayed denominator contains (x1 - x1), which vanishes; \
                 symmetry with the neighbouring terms forces (x1 - x2)",
            ),
        ),
        (
            "x0*x2*y0*y1*y2",
            "-(x2*y1*y2*(x1 - p*x2)*(1 - p*y1*y2))/(p^2*(1-x1)*(1-x2)*(x1-x2)*(1-y1)*(1-y2)*(1-y1*y2))",
            None,
        ),
        (
            "x0*x1*y0",
            "-(x1*(p*x1 - x2)*(p - y1*y2))/(p^2*(1-x1)*(1-x2)*(x1-x2)*(1-y1)*(1-y2)*(1-y1*y2))",
            None,
        ),
        (
            "x0*x1*x2*y0*y1",
            "-(x1*x2*y1*(1 - p*x1*x2)*(p*y1 - y2))/(p^2*(1-x1)*(1-x2)*(1-x1*x2)*(1-y1)*(1-y2)*(y1-y2))",
            None,
        ),
        (
            "x0*x1*x2*y0*y2",
            "-(x1*x2*y2*(1 - p*x1*x2)*(y1 - p*y2))/(p^2*(1-x1)*(1-x2)*(1-x1*x2)*(1-y1)*(1-y2)*(y1-y2))",
            None,
        ),
        (
            "x0*y0*y1*y2",
            "(y1*y2*(p - x1*x2)*(1 - p*y1*y2))/(p^2*(1-x1)*(1-x2)*(1-x1*x2)*(1-y1)*(1-y2)*(1-y1*y2))",
            None,
        ),
        (
            "x0*x1*x2*y0",
            "(x1*x2*(1 - p*x1*x2)*(p - y1*y2))/(p^2*(1-x1)*(1-x2)*(1-x1*x2)*(1-y1)*(1-y2)*(1-y1*y2))",
            None,
        ),
        (
            "x0*x1*y0*y1",
            "(x1*y1*(p*x1 - x2)*(p*y1 - y2))/(p^2*(1-x1)*(1-x2)*(x1-x2)*(1-y1)*(1-y2)*(y1-y2))",
            Some(
                "displayed with a leading minus; the exact resummation \
                 forces a plus (the displayed sign already breaks the \
                 constant series coefficient)",
            ),
        ),
        (
            "x0*x1*y0*y2",
            "(x1*y2*(p*x1 - x2)*(y1 - p*y2))/(p^2*(1-x1)*(1-x2)*(x1-x2)*(1-y1)*(1-y2)*(y1-y2))",
            None,
        ),
        (
            "x0*x2*y0",
            "-(x2*(x1 - p*x2)*(p - y1*y2))/(p^2*(1-x1)*(1-x2)*(x1-x2)*(1-y1)*(1-y2)*(1-y1*y2))",
            None,
        ),
        (
            "x0*x1*x2*y0*y1*y2",
            "(x1*x2*y1*y2*(1 - p*x1*x2)*(1 - p*y1*y2))/(p^2*(1-x1)*(1-x2)*(1-x1*x2)*(1-y1)*(1-y2)*(1-y1*y2))",
            None,
        ),
        (
            "x0*y0",
            "((p - x1*x2)*(p - y1*y2))/(p^2*(1-x1)*(1-x2)*(1-x1*x2)*(1-y1)*(1-y2)*(1-y1*y2))",
            None,
        ),
        (
            "x0*y0*y1",
            "-(y1*(p - x1*x2)*(p*y1 - y2))/(p^2*(1-x1)*(1-x2)*(1-x1*x2)*(1-y1)*(1-y2)*(y1-y2))",
            None,
        ),
        (
            "x0*y0*y2",
            "-(y2*(p - x1*x2)*(y1 - p*y2))/(p^2*(1-x1)*(1-x2)*(1-x1*x2)*(1-y1)*(1-y2)*(y1-y2))",
            None,
        ),
    ];
    spec.iter()
        .map(|(base, coeff, note)| ConvolutionTerm {
            base: t.mono_product(base),
            coefficient: parse_rf(&t, coeff).expect("coefficient parses"),
            corrected: note.is_some(),
            note: *note,
        })
        .collect()
}

/// The sixteen denominator factors after simplification, in printed order.
pub fn convolution_denominator_factors() -> Vec<MultiPoly> {
    let t = table();
    [
        "1 - x0*y0*X",
        "1 - x0*y0*x1*X",
        "1 - x0*y0*y1*X",
        "1 - x0*y0*x2*X",
        "1 - x0*y0*y2*X",
        "1 - x0*y0*x1*y1*X",
        "1 - x0*y0*x1*x2*X",
        "1 - x0*y0*x1*y2*X",
        "1 - x0*y0*y1*x2*X",
        "1 - x0*y0*y1*y2*X",
        "1 - x0*y0*x2*y2*X",
        "1 - x0*y0*x1*y1*x2*X",
        "1 - x0*y0*x1*y1*y2*X",
        "1 - x0*y0*x1*x2*y2*X",
        "1 - x0*y0*y1*x2*y2*X",
        "1 - x0*y0*x1*y1*x2*y2*X",
    ]
    .iter()
    .map(|s| parse_poly(&t, s).expect("factor parses"))
    .collect()
}

/// The quadratic factor dividing the convolution numerator.
pub fn convolution_quadratic_factor() -> MultiPoly {
    parse_poly(&table(), "1 - x0^2*y0^2*x1*y1*x2*y2*X^2").expect("factor parses")
}

/// Leading term of the degree-12 cofactor: `x0^12 y0^12 x1^6 x2^6 y1^6
/// y2^6 / p^2`.
pub fn convolution_degree12_leading() -> MultiPoly {
    parse_poly(
        &table(),
        "x0^12*y0^12*x1^6*x2^6*y1^6*y2^6*p^-2",
    )
    .expect("leading term parses")
}

/// The four-fraction genus-1 convolution display.
pub fn genus1_convolution_fractions() -> DeltaSeries {
    let t = table();
    let raw = [
        ("1/((1-x1)*(1-y1))", "x0*y0"),
        ("-y1/((1-x1)*(1-y1))", "x0*y0*y1"),
        ("-x1/((1-x1)*(1-y1))", "x0*y0*x1"),
        ("x1*y1/((1-x1)*(1-y1))", "x0*y0*x1*y1"),
    ]
    .iter()
    .map(|(c, b)| {
        (
            t.mono_product(b),
            parse_rf(&t, c).expect("fraction parses"),
        )
    })
    .collect();
    DeltaSeries::new(&t, raw)
}

/// The genus-1 convolution closed form:
/// `(1 - x0^2 y0^2 x1 y1 X^2)` over its four-factor denominator.
pub fn genus1_convolution_closed() -> RationalFn {
    parse_rf(
        &table(),
        "(1 - x0^2*y0^2*x1*y1*X^2)/\
         ((1 - x0*y0*x1*y1*X)*(1 - x0*y0*x1*X)*(1 - x0*y0*y1*X)*(1 - x0*y0*X))",
    )
    .expect("closed form parses")
}

/// The symmetric-square closed-form display.
pub fn symmetric_square_display() -> RationalFn {
    parse_rf(
        &table(),
        "((1 + x0^2*x1*X + x0^2*x2*X + 2*x0^2*x1*x2*X + x0^2*x1*x2^2*X \
           + x0^2*x1^2*x2*X + x0^4*x1^2*x2^2*X^2)*(1 - (x0^2*x1*x2/p)*X))/\
         ((1 - x0^2*x1^2*x2^2*X)*(1 - x0^2*x1^2*X)*(1 - x0^2*x2^2*X)*(1 - x0^2*X))",
    )
    .expect("display parses")
}

/// The cubic closed-form display with repair metadata.
pub struct CubicDisplay {
    pub form: RationalFn,
    /// True: a global minus sign was restored so the series starts at 1.
    pub global_sign_restored: bool,
    /// True: the display lists `x0^3 x1^2 x2 X` twice; the second copy
    /// is transcribed as `x0^3 x1^2 x2^2 X`, restoring the x1 <-> x2
    /// symmetry the resummed form provably has.
    pub repeated_monomial_repaired: bool,
}

/// The cubic closed-form display.  Transcribed term by term as printed
/// with two repairs: the expression is negated globally (it begins
/// `p^{-1}(-p + ...)`, whose constant term is `-1`, while the series
/// itself starts at `1`), and the second of the two printed copies of
/// `x0^3 x1^2 x2 X` is read as `x0^3 x1^2 x2^2 X` (the list is
/// otherwise symmetric in x1 and x2, and the resummed form requires
/// both monomials exactly once).
pub fn cubic_display() -> CubicDisplay {
    let printed_numerator = "-p + x0^6*x1^4*x2^2*X^2 + x0^6*x1^2*x2^4*X^2 + 2*x0^6*x1^2*x2^3*X^2 \
         - p*x0^6*x1^4*x2^4*X^2 - p*x0^6*x1^2*x2^4*X^2 - 2*p*x0^3*x1^2*x2*X + x0^6*x1*x2^3*X^2 \
         + x0^6*x1^3*x2*X^2 + x0^6*x1^3*x2^5*X^2 + x0^6*x1^5*x2^3*X^2 + 3*x0^6*x1^3*x2^3*X^2 \
         + x0^6*x1^2*x2^2*X^2 + 2*x0^6*x1^3*x2^2*X^2 - p*x0^3*x1^2*X - p*x0^3*x2^2*X - p*x0^6*x1^4*x2^2*X^2 \
         - 2*p*x0^3*x1*x2^2*X - p*x0^6*x1^2*x2^2*X^2 + x0^3*x1^2*x2*X + x0^3*x1*x2*X \
         - p*x0^6*x1^2*x2^3*X^2 - p*x0^6*x1^3*x2^2*X^2 - p*x0^3*x1^2*x2^3*X - p*x0^3*x1^3*x2^2*X \
         - 2*p*x0^3*x1^2*x2^2*X - p*x0^3*x1^3*x2*X + x0^3*x1^2*x2^2*X + x0^9*x1^4*x2^4*X^3 \
         - 2*p*x0^6*x1^3*x2^3*X^2 - 2*p*x0^3*x1*x2*X + x0^9*x1^4*x2^5*X^3 + x0^9*x1^5*x2^4*X^3 \
         - p*x0^6*x1^3*x2^4*X^2 + x0^3*x1*x2^2*X + x0^9*x1^5*x2^5*X^3 + x0^6*x1^4*x2^4*X^2 \
         - p*x0^6*x1^4*x2^3*X^2 - p*x0^3*x1*x2^3*X - p*x0^3*x2*X - p*x0^3*x1*X + 2*x0^6*x1^4*x2^3*X^2 \
         + 2*x0^6*x1^3*x2^4*X^2";
    let t = table();
    let num = parse_poly(&t, printed_numerator).expect("numerator parses");
    let den = parse_poly(
        &t,
        "p*(1 - x0^3*X)*(1 - x0^3*x1^3*X)*(1 - x0^3*x2^3*X)*(1 - x0^3*x1^3*x2^3*X)",
    )
    .expect("denominator parses");
    CubicDisplay {
        form: RationalFn::new(num.neg(), den).expect("denominator nonzero"),
        global_sign_restored: true,
        repeated_monomial_repaired: true,
    }
}

/// The genus-4 variable substitution identifying the two denominators:
/// `u0 -> x0 y0, u1 -> x1, u2 -> x2, u3 -> y1, u4 -> y2`.
pub fn lifting_substitution() -> Vec<(usize, MultiPoly)> {
    let t = table();
    let bind = |name: &str, target: &str| {
        (
            t.var(name),
            MultiPoly::from_monomial(&t, t.mono_product(target), Rat::one()),
        )
    };
    vec![
        bind("u0", "x0*y0"),
        bind("u1", "x1"),
        bind("u2", "x2"),
        bind("u3", "y1"),
        bind("u4", "y2"),
    ]
}
