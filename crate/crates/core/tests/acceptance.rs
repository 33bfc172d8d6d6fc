//! End-to-end acceptance checks, one per stated criterion, in order.
//!
//! Everything runs against a single shared symbolic engine so the
//! expensive ingredients (the resummed convolution closed form, the
//! derived numerator tables) are computed once.  Each criterion prints
//! one `pass`/`FAIL` line with its elapsed time; run with
//! `cargo test --test acceptance -- --nocapture` to see the lines as
//! they appear.

use std::time::Instant;

use hecke_core::engine::{Engine, EngineError, PrimeMode};

type Check = fn(&Engine) -> Result<bool, EngineError>;

fn genus2_series_identity(e: &Engine) -> Result<bool, EngineError> {
    Ok(e.eq3_report()?.passed())
}

fn coefficient_formula_forms(e: &Engine) -> Result<bool, EngineError> {
    let r = e.formula1_report()?;
    Ok(r.passed() && r.series_checked_to >= 20)
}

fn convolution_identity(e: &Engine) -> Result<bool, EngineError> {
    let r = e.convolution_report()?;
    Ok(r.identity_holds
        && r.pole_comparisons.len() == 16
        && r.pole_comparisons.iter().all(|c| c.matches)
        && r.series_prefix_checked_to >= 12
        && r.series_prefix_agrees)
}

fn convolution_denominator(e: &Engine) -> Result<bool, EngineError> {
    Ok(e.convolution_report()?.denominator_is_16_product)
}

fn quadratic_and_cofactor(e: &Engine) -> Result<bool, EngineError> {
    let r = e.convolution_report()?;
    Ok(r.quadratic_factor_divides && r.degree12_properties.all())
}

fn power_substituted_series(e: &Engine) -> Result<bool, EngineError> {
    Ok(e.power_report(2)?.passed() && e.power_report(3)?.passed())
}

fn derived_tables_and_diff(e: &Engine) -> Result<bool, EngineError> {
    let r = e.theorem31_report()?;
    Ok(r.passed() && r.mismatches == vec![("s", 6), ("s", 8), ("s", 10)])
}

fn newton_polygons(e: &Engine) -> Result<bool, EngineError> {
    let r = e.newton_report()?;
    Ok(r.passed()
        && r.r.vertices.last() == Some(&(12, 34))
        && r.s.vertices.last() == Some(&(16, 48)))
}

fn genus1_convolution(e: &Engine) -> Result<bool, EngineError> {
    Ok(e.genus1_report()?.passed())
}

fn genus4_denominator(e: &Engine) -> Result<bool, EngineError> {
    Ok(e.conjecture_denominator().passed())
}

fn eisenstein_merges(e: &Engine) -> Result<bool, EngineError> {
    let mut ok = true;
    for m in 1..=3 {
        ok &= e.eisenstein_merge(m)?.passed();
    }
    Ok(ok)
}

fn hodge_tensor_pairs(e: &Engine) -> Result<bool, EngineError> {
    let r = e.hodge_tensor();
    Ok(r.passed() && r.pair_count == 16)
}

fn lift_standard_factor(e: &Engine) -> Result<bool, EngineError> {
    let mut ok = true;
    for m in 1..=2 {
        ok &= e.ikeda_standard(m)?.passed();
    }
    Ok(ok)
}

const CRITERIA: [(&str, Check); 13] = [
    ("genus-2 spherical series identity", genus2_series_identity),
    ("coefficient formula in both displayed forms", coefficient_formula_forms),
    ("convolution closed form matches termwise products", convolution_identity),
    ("convolution denominator is the sixteen-factor product", convolution_denominator),
    ("quadratic factor and degree-12 cofactor", quadratic_and_cofactor),
    ("power-substituted series for squares and cubes", power_substituted_series),
    ("derived numerator tables and transcription diff", derived_tables_and_diff),
    ("Newton polygons of the derived tables", newton_polygons),
    ("genus-1 convolution identities", genus1_convolution),
    ("genus-4 denominator under the standard substitution", genus4_denominator),
    ("Eisenstein parameter merges", eisenstein_merges),
    ("tensor-product Hodge pairs", hodge_tensor_pairs),
    ("standard factor of the even-degree lift", lift_standard_factor),
];

#[test]
fn acceptance_criteria() {
    let engine = Engine::new(PrimeMode::Symbolic).expect("engine construction");
    let mut failures = Vec::new();
    for (number, (name, check)) in CRITERIA.iter().enumerate() {
        let number = number + 1;
        let start = Instant::now();
        let outcome = check(&engine);
        let elapsed = start.elapsed().as_secs_f64();
        match outcome {
            Ok(true) => println!("criterion {:02} pass ({:7.3}s)  {}", number, elapsed, name),
            Ok(false) => {
                println!("criterion {:02} FAIL ({:7.3}s)  {}", number, elapsed, name);
                failures.push(format!("{:02} {}", number, name));
            }
            Err(e) => {
                println!("criterion {:02} FAIL ({:7.3}s)  {}: {}", number, elapsed, name, e);
                failures.push(format!("{:02} {}: {}", number, name, e));
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {:?}", failures);
}
