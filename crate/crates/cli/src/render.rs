//! LaTeX rendering for polynomials and rational functions.
//!
//! Built from the term structure (not by rewriting the plain-text
//! form), so the output order matches the canonical term order and the
//! escaping rules stay in one place.

use hecke_core::poly::{MultiPoly, Rat};
use hecke_core::ratfn::RationalFn;
use hecke_core::vars::VarTable;
use num_traits::{One, Signed};

/// A variable name like `x0` becomes `x_{0}`; names without a trailing
/// digit pass through unchanged.
fn latex_var(name: &str) -> String {
    let split = name
        .char_indices()
        .find(|(_, c)| c.is_ascii_digit())
        .map(|(i, _)| i);
    match split {
        Some(i) if i > 0 => format!("{}_{{{}}}", &name[..i], &name[i..]),
        _ => name.to_string(),
    }
}

fn latex_rat(c: &Rat) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("\\tfrac{{{}}}{{{}}}", c.numer(), c.denom())
    }
}

/// Render one polynomial in descending canonical order, matching the
/// plain-text renderer.
pub fn latex_poly(table: &VarTable, p: &MultiPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().iter().rev().enumerate() {
        let mut pieces = Vec::new();
        for idx in 0..table.len() {
            let e = m.exp(idx);
            if e == 0 {
                continue;
            }
            let mut piece = latex_var(table.name(idx));
            if e != 1 {
                piece.push_str(&format!("^{{{}}}", e));
            }
            pieces.push(piece);
        }
        let vars = pieces.join(" ");
        let abs = c.abs();
        let coef = if abs.is_one() && !vars.is_empty() {
            String::new()
        } else {
            latex_rat(&abs)
        };
        if i == 0 {
            if c.is_negative() {
                out.push('-');
            }
        } else if c.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        out.push_str(&coef);
        if !coef.is_empty() && !vars.is_empty() {
            out.push(' ');
        }
        out.push_str(&vars);
    }
    out
}

/// Render a rational function as `\frac{num}{den}` (or the bare
/// numerator when the denominator is one).
pub fn latex_rf(table: &VarTable, r: &RationalFn) -> String {
    if r.den().is_one() {
        latex_poly(table, r.num())
    } else {
        format!(
            "\\frac{{{}}}{{{}}}",
            latex_poly(table, r.num()),
            latex_poly(table, r.den())
        )
    }
}
