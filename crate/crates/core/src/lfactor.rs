//! Satake parameters, local Euler factors, and Hodge-type bookkeeping.
//!
//! A genus-`n` weight-`k` eigenform has Satake parameters
//! `(α_0, α_1, .., α_n)` subject to `α_0^2 α_1 ⋯ α_n = p^{kn - n(n+1)/2}`.
//! This module models such parameter tuples exactly — entries are rational
//! multiples of formal symbols times a power of `p`, with half-integral
//! `p`-exponents carried by a formal square root `q` (`q^2 = p`) and
//! symbolic weights entering the exponents as affine expressions
//! [`Aff`] — and builds the local spinor and standard factors on top of
//! them.  The parameter-level content of the genus-doubling lift is
//! verified here: the merged Eisenstein parameter multisets, the standard
//! factor of the degree-doubling lift as a product of shifted quadratic
//! Hecke factors, the rank-16 Hodge table of a tensor product of two
//! genus-2 spinor motives, and the identification of the genus-4 series
//! denominator with the convolution denominator under the variable
//! substitution `u0 -> x0 y0, u1 -> x1, u2 -> x2, u3 -> y1, u4 -> y2`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::poly::{rat_int, MultiPoly, Rat};
use crate::spherical::{SphericalContext, VarGroup};
use crate::transcribe;
use crate::vars::Monomial;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LfactorError {
    /// A constraint check needed a pure power of `p` but formal symbols
    /// survived in the product.
    UnsupportedSymbolicForm,
    /// A parameter with zero coefficient cannot be inverted.
    NonInvertibleParameter,
    /// The two parameter sets do not have the (equal, even) genus the
    /// merge requires.
    GenusMismatch,
    /// The second weight is not the first weight minus the genus.
    WeightMismatch,
}

impl fmt::Display for LfactorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LfactorError::UnsupportedSymbolicForm => {
                write!(f, "formal symbols do not cancel; the check needs a pure power of p")
            }
            LfactorError::NonInvertibleParameter => {
                write!(f, "parameter with zero coefficient is not invertible")
            }
            LfactorError::GenusMismatch => {
                write!(f, "parameter sets must share the same even genus")
            }
            LfactorError::WeightMismatch => {
                write!(f, "second weight must equal the first weight minus the genus")
            }
        }
    }
}

impl std::error::Error for LfactorError {}

/// Affine integer expression `c0 + ck*k + cl*l` in the two symbolic
/// weights `k` and `l`.  Exponents of `p` and `q`, Hodge degrees, and
/// weights are all values of this type, so every identity holds for all
/// integer weights at once.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Aff {
    pub c0: i64,
    pub ck: i64,
    pub cl: i64,
}

impl Aff {
    pub const ZERO: Aff = Aff { c0: 0, ck: 0, cl: 0 };

    pub fn int(c0: i64) -> Aff {
        Aff { c0, ck: 0, cl: 0 }
    }

    /// The symbolic weight `k`.
    pub fn k() -> Aff {
        Aff { c0: 0, ck: 1, cl: 0 }
    }

    /// The symbolic weight `l`.
    pub fn l() -> Aff {
        Aff { c0: 0, ck: 0, cl: 1 }
    }

    pub fn add(&self, other: &Aff) -> Aff {
        Aff {
            c0: self.c0 + other.c0,
            ck: self.ck + other.ck,
            cl: self.cl + other.cl,
        }
    }

    pub fn sub(&self, other: &Aff) -> Aff {
        Aff {
            c0: self.c0 - other.c0,
            ck: self.ck - other.ck,
            cl: self.cl - other.cl,
        }
    }

    pub fn scale(&self, s: i64) -> Aff {
        Aff {
            c0: self.c0 * s,
            ck: self.ck * s,
            cl: self.cl * s,
        }
    }

    pub fn neg(&self) -> Aff {
        self.scale(-1)
    }

    pub fn is_zero(&self) -> bool {
        *self == Aff::ZERO
    }

    /// The constant value, when no symbolic weight occurs.
    pub fn as_int(&self) -> Option<i64> {
        if self.ck == 0 && self.cl == 0 {
            Some(self.c0)
        } else {
            None
        }
    }

    /// Order key: graded by the symbolic parts first, so that for large
    /// weights `k, l` the order agrees with the numeric order.
    fn key(&self) -> (i64, i64, i64) {
        (self.ck, self.cl, self.c0)
    }
}

impl PartialOrd for Aff {
    fn partial_cmp(&self, other: &Aff) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Aff {
    fn cmp(&self, other: &Aff) -> std::cmp::Ordering {
        self.key().cmp(&other.key())
    }
}

impl fmt::Display for Aff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        let push_term = |s: &mut String, coef: i64, sym: &str| {
            if coef == 0 {
                return;
            }
            if s.is_empty() {
                if coef < 0 {
                    s.push('-');
                }
            } else {
                s.push(if coef < 0 { '-' } else { '+' });
            }
            if coef.abs() != 1 {
                s.push_str(&coef.abs().to_string());
            }
            s.push_str(sym);
        };
        // Prefer `1-k` over `-k+1` when the constant is positive and the
        // symbolic part is entirely negative.
        if self.c0 > 0 && self.ck <= 0 && self.cl <= 0 && (self.ck < 0 || self.cl < 0) {
            s.push_str(&self.c0.to_string());
            push_term(&mut s, self.ck, "k");
            push_term(&mut s, self.cl, "l");
        } else {
            push_term(&mut s, self.ck, "k");
            push_term(&mut s, self.cl, "l");
            if self.c0 != 0 || s.is_empty() {
                if s.is_empty() {
                    s.push_str(&self.c0.to_string());
                } else {
                    s.push(if self.c0 < 0 { '-' } else { '+' });
                    s.push_str(&self.c0.abs().to_string());
                }
            }
        }
        f.write_str(&s)
    }
}

/// Bookkeeping sign attached to a diagonal Hodge pair that arises from a
/// mirror pair of off-diagonal sources.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// One exact parameter value `coef * (prod of formal symbols) * q^e`,
/// where `q^2 = p` and the `q`-exponent `e` is affine in the symbolic
/// weights.  Pure rationals, monomials in `p` and `α`, and formal
/// symbols are all instances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamMono {
    coef: Rat,
    /// Exponent of the formal square root `q`; `p^e` is `q^{2e}`.
    q_exp: Aff,
    /// Formal-symbol exponents, keyed by symbol name.
    syms: BTreeMap<String, i64>,
}

impl ParamMono {
    pub fn zero() -> ParamMono {
        ParamMono {
            coef: Rat::zero(),
            q_exp: Aff::ZERO,
            syms: BTreeMap::new(),
        }
    }

    pub fn one() -> ParamMono {
        ParamMono::int(1)
    }

    pub fn int(n: i64) -> ParamMono {
        ParamMono {
            coef: rat_int(n),
            q_exp: Aff::ZERO,
            syms: BTreeMap::new(),
        }
    }

    /// `p^e` for an affine exponent `e`.
    pub fn p_pow(e: Aff) -> ParamMono {
        ParamMono::q_pow(e.scale(2))
    }

    /// `q^e` for an affine exponent `e` counted in half-units of `p`.
    pub fn q_pow(e: Aff) -> ParamMono {
        ParamMono {
            coef: Rat::one(),
            q_exp: e,
            syms: BTreeMap::new(),
        }
    }

    /// A formal symbol.
    pub fn sym(name: &str) -> ParamMono {
        ParamMono::sym_pow(name, 1)
    }

    pub fn sym_pow(name: &str, e: i64) -> ParamMono {
        let mut syms = BTreeMap::new();
        if e != 0 {
            syms.insert(name.to_string(), e);
        }
        ParamMono {
            coef: Rat::one(),
            q_exp: Aff::ZERO,
            syms,
        }
    }

    /// Rebuild a value from its parts; a zero coefficient collapses
    /// everything else, and zero symbol exponents are dropped.
    pub fn from_parts(coef: Rat, q_exp: Aff, syms: BTreeMap<String, i64>) -> ParamMono {
        if coef.is_zero() {
            return ParamMono::zero();
        }
        let syms = syms.into_iter().filter(|(_, e)| *e != 0).collect();
        ParamMono { coef, q_exp, syms }
    }

    pub fn coef(&self) -> &Rat {
        &self.coef
    }

    /// Exponent of the formal square root `q` (so `p^e` reads `2e`).
    pub fn q_exp(&self) -> Aff {
        self.q_exp
    }

    pub fn syms(&self) -> &BTreeMap<String, i64> {
        &self.syms
    }

    pub fn is_zero(&self) -> bool {
        self.coef.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.coef.is_one() && self.q_exp.is_zero() && self.syms.is_empty()
    }

    /// True when the value is a rational times a power of `q` only.
    pub fn is_symbol_free(&self) -> bool {
        self.syms.is_empty()
    }

    pub fn mul(&self, other: &ParamMono) -> ParamMono {
        if self.is_zero() || other.is_zero() {
            return ParamMono::zero();
        }
        let mut syms = self.syms.clone();
        for (name, e) in &other.syms {
            let entry = syms.entry(name.clone()).or_insert(0);
            *entry += e;
            if *entry == 0 {
                syms.remove(name);
            }
        }
        ParamMono {
            coef: self.coef.clone() * other.coef.clone(),
            q_exp: self.q_exp.add(&other.q_exp),
            syms,
        }
    }

    pub fn inv(&self) -> Result<ParamMono, LfactorError> {
        if self.is_zero() {
            return Err(LfactorError::NonInvertibleParameter);
        }
        Ok(ParamMono {
            coef: self.coef.recip(),
            q_exp: self.q_exp.neg(),
            syms: self.syms.iter().map(|(n, e)| (n.clone(), -e)).collect(),
        })
    }

    pub fn neg(&self) -> ParamMono {
        ParamMono {
            coef: -self.coef.clone(),
            q_exp: self.q_exp,
            syms: self.syms.clone(),
        }
    }

    /// Replace the named symbol by its inverse.
    pub fn invert_sym(&self, name: &str) -> ParamMono {
        let mut out = self.clone();
        if let Some(e) = out.syms.get_mut(name) {
            *e = -*e;
        }
        out
    }

    /// Order key used for canonical sorting: symbols, then `q`-exponent.
    fn sort_key(&self) -> (Vec<(String, i64)>, (i64, i64, i64)) {
        (
            self.syms.iter().map(|(n, e)| (n.clone(), *e)).collect(),
            self.q_exp.key(),
        )
    }

    /// Interpret the value as a monomial of the shared variable table:
    /// each formal symbol is sent to the variable it is bound to, and an
    /// even `q`-exponent becomes the corresponding power of `p`.
    pub fn to_multipoly(
        &self,
        ctx: &SphericalContext,
        bindings: &BTreeMap<String, usize>,
    ) -> Result<MultiPoly, LfactorError> {
        let e = self
            .q_exp
            .as_int()
            .ok_or(LfactorError::UnsupportedSymbolicForm)?;
        if e % 2 != 0 {
            return Err(LfactorError::UnsupportedSymbolicForm);
        }
        let mut m = Monomial::one();
        if e != 0 {
            m = m.mul(&Monomial::var_pow(ctx.prime_var(), (e / 2) as i16));
        }
        for (name, e) in &self.syms {
            let slot = bindings
                .get(name)
                .copied()
                .ok_or(LfactorError::UnsupportedSymbolicForm)?;
            m = m.mul(&Monomial::var_pow(slot, *e as i16));
        }
        Ok(MultiPoly::from_monomial(ctx.table(), m, self.coef.clone()))
    }
}

impl fmt::Display for ParamMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut s = String::new();
        let mut tail = String::new();
        for (name, e) in &self.syms {
            tail.push_str(name);
            if *e != 1 {
                tail.push_str(&format!("^{{{}}}", e));
            }
        }
        if let Some(p_part) = render_p_power(&self.q_exp) {
            tail.push_str(&p_part);
        }
        if self.coef.is_one() {
            if tail.is_empty() {
                tail.push('1');
            }
        } else if self.coef == -Rat::one() {
            if tail.is_empty() {
                tail.push('1');
            }
            s.push('-');
        } else {
            s.push_str(&self.coef.to_string());
        }
        s.push_str(&tail);
        f.write_str(&s)
    }
}

/// Render `p^{e/2}` for a `q`-exponent `e`, or `None` when `e = 0`.
fn render_p_power(q_exp: &Aff) -> Option<String> {
    if q_exp.is_zero() {
        return None;
    }
    if q_exp.c0 % 2 == 0 && q_exp.ck % 2 == 0 && q_exp.cl % 2 == 0 {
        let half = Aff {
            c0: q_exp.c0 / 2,
            ck: q_exp.ck / 2,
            cl: q_exp.cl / 2,
        };
        if half.as_int() == Some(1) {
            return Some("p".to_string());
        }
        return Some(format!("p^{{{}}}", half));
    }
    if q_exp.ck % 2 == 0 && q_exp.cl % 2 == 0 {
        // Odd constant part: integer symbolic part plus a trailing
        // half-integral constant, e.g. `p^{k-1/2}` or `p^{3/2}`.
        let sym_part = Aff {
            c0: 0,
            ck: q_exp.ck / 2,
            cl: q_exp.cl / 2,
        };
        if sym_part.is_zero() {
            return Some(format!("p^{{{}/2}}", q_exp.c0));
        }
        let sign = if q_exp.c0 < 0 { '-' } else { '+' };
        return Some(format!("p^{{{}{}{}/2}}", sym_part, sign, q_exp.c0.abs()));
    }
    Some(format!("p^{{({})/2}}", q_exp))
}

/// Canonical sum of [`ParamMono`] values: sorted by symbol content and
/// `q`-exponent, like terms merged, zeros dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamPoly {
    terms: Vec<ParamMono>,
}

impl ParamPoly {
    pub fn zero() -> ParamPoly {
        ParamPoly { terms: Vec::new() }
    }

    pub fn one() -> ParamPoly {
        ParamPoly::from_mono(ParamMono::one())
    }

    pub fn from_mono(m: ParamMono) -> ParamPoly {
        ParamPoly::canon(vec![m])
    }

    fn canon(mut terms: Vec<ParamMono>) -> ParamPoly {
        terms.retain(|t| !t.is_zero());
        terms.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        let mut out: Vec<ParamMono> = Vec::with_capacity(terms.len());
        for t in terms {
            if let Some(last) = out.last_mut() {
                if last.sort_key() == t.sort_key() {
                    last.coef += t.coef;
                    continue;
                }
            }
            out.push(t);
        }
        out.retain(|t| !t.is_zero());
        ParamPoly { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[ParamMono] {
        &self.terms
    }

    pub fn add(&self, other: &ParamPoly) -> ParamPoly {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        ParamPoly::canon(terms)
    }

    pub fn neg(&self) -> ParamPoly {
        ParamPoly {
            terms: self.terms.iter().map(|t| t.neg()).collect(),
        }
    }

    pub fn sub(&self, other: &ParamPoly) -> ParamPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &ParamPoly) -> ParamPoly {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                terms.push(a.mul(b));
            }
        }
        ParamPoly::canon(terms)
    }

    pub fn invert_sym(&self, name: &str) -> ParamPoly {
        ParamPoly::canon(self.terms.iter().map(|t| t.invert_sym(name)).collect())
    }
}

impl fmt::Display for ParamPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut s = String::new();
        for (i, t) in self.terms.iter().enumerate() {
            let r = t.to_string();
            if i == 0 {
                s.push_str(&r);
            } else if let Some(rest) = r.strip_prefix('-') {
                s.push_str(" - ");
                s.push_str(rest);
            } else {
                s.push_str(" + ");
                s.push_str(&r);
            }
        }
        f.write_str(&s)
    }
}

/// Polynomial in the series variable `X` with [`ParamPoly`] coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XPoly {
    /// `coeffs[d]` is the coefficient of `X^d`; no trailing zeros.
    coeffs: Vec<ParamPoly>,
}

impl XPoly {
    pub fn one() -> XPoly {
        XPoly {
            coeffs: vec![ParamPoly::one()],
        }
    }

    fn trim(mut coeffs: Vec<ParamPoly>) -> XPoly {
        while coeffs.len() > 1 && coeffs.last().map(|c| c.is_zero()) == Some(true) {
            coeffs.pop();
        }
        XPoly { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<ParamPoly>) -> XPoly {
        XPoly::trim(coeffs)
    }

    /// `prod (1 - mu X)` over the listed roots.
    pub fn from_linear_factors(roots: &[ParamMono]) -> XPoly {
        let mut out = XPoly::one();
        for mu in roots {
            let factor = XPoly {
                coeffs: vec![ParamPoly::one(), ParamPoly::from_mono(mu.neg())],
            };
            out = out.mul(&factor);
        }
        out
    }

    pub fn mul(&self, other: &XPoly) -> XPoly {
        let mut coeffs = vec![ParamPoly::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        XPoly::trim(coeffs)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, d: usize) -> ParamPoly {
        self.coeffs.get(d).cloned().unwrap_or_else(ParamPoly::zero)
    }

    pub fn invert_sym(&self, name: &str) -> XPoly {
        XPoly::trim(self.coeffs.iter().map(|c| c.invert_sym(name)).collect())
    }
}

/// A product of linear factors `1 - mu X`, kept factored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredXPoly {
    factors: Vec<ParamMono>,
}

impl FactoredXPoly {
    pub fn factors(&self) -> &[ParamMono] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn expand(&self) -> XPoly {
        XPoly::from_linear_factors(&self.factors)
    }

    /// Factor lists compared as multisets.
    pub fn same_factors(&self, other: &FactoredXPoly) -> bool {
        if self.factors.len() != other.factors.len() {
            return false;
        }
        let key = |m: &ParamMono| (m.sort_key(), m.coef.clone());
        let mut a: Vec<_> = self.factors.iter().map(key).collect();
        let mut b: Vec<_> = other.factors.iter().map(key).collect();
        a.sort();
        b.sort();
        a == b
    }

    /// The factors as polynomials of the shared variable table, for
    /// comparison with the spherical-side series denominators.
    pub fn to_multipolys(
        &self,
        ctx: &SphericalContext,
        bindings: &BTreeMap<String, usize>,
    ) -> Result<Vec<MultiPoly>, LfactorError> {
        let xv = ctx.series_var();
        self.factors
            .iter()
            .map(|mu| {
                let root = mu.to_multipoly(ctx, bindings)?;
                let x = MultiPoly::from_monomial(ctx.table(), Monomial::var(xv), Rat::one());
                Ok(MultiPoly::one(ctx.table()).sub(&root.mul(&x)))
            })
            .collect()
    }

    pub fn render(&self) -> String {
        self.factors
            .iter()
            .map(|mu| {
                if mu.is_one() {
                    "(1 - X)".to_string()
                } else if mu.coef.is_negative() {
                    format!("(1 + {}X)", mu.neg())
                } else {
                    format!("(1 - {}X)", mu)
                }
            })
            .collect::<Vec<_>>()
            .join("")
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.factors
                .iter()
                .map(|mu| serde_json::Value::String(format!("1 - ({})X", mu)))
                .collect(),
        )
    }
}

/// Satake parameters `(α_0, .., α_n)` of a genus-`n`, weight-`k`
/// eigenform.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatakeParams {
    genus: usize,
    weight: Aff,
    alphas: Vec<ParamMono>,
}

impl SatakeParams {
    /// A parameter tuple; `alphas` lists `α_0` through `α_n` for genus
    /// `n`, so its length must be `genus + 1`.
    pub fn new(genus: usize, weight: Aff, alphas: Vec<ParamMono>) -> SatakeParams {
        assert!(genus >= 1, "genus must be positive");
        assert_eq!(alphas.len(), genus + 1, "need genus + 1 parameters");
        SatakeParams {
            genus,
            weight,
            alphas,
        }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn weight(&self) -> Aff {
        self.weight
    }

    pub fn alphas(&self) -> &[ParamMono] {
        &self.alphas
    }

    pub fn alpha(&self, i: usize) -> &ParamMono {
        &self.alphas[i]
    }

    /// Parameter lists compared as multisets over `α_1..α_n`, with
    /// `α_0` compared directly.
    pub fn same_params(&self, other: &SatakeParams) -> bool {
        if self.genus != other.genus || self.alphas[0] != other.alphas[0] {
            return false;
        }
        let key = |m: &ParamMono| (m.sort_key(), m.coef.clone());
        let mut a: Vec<_> = self.alphas[1..].iter().map(key).collect();
        let mut b: Vec<_> = other.alphas[1..].iter().map(key).collect();
        a.sort();
        b.sort();
        a == b
    }

    pub fn to_json(&self) -> serde_json::Value {
        use serde_json::{Map, Value};
        let mut obj = Map::new();
        obj.insert(
            "genus".to_string(),
            Value::Number(serde_json::Number::from(self.genus as i64)),
        );
        obj.insert("weight".to_string(), Value::String(self.weight.to_string()));
        obj.insert(
            "alphas".to_string(),
            Value::Array(
                self.alphas
                    .iter()
                    .map(|a| Value::String(a.to_string()))
                    .collect(),
            ),
        );
        Value::Object(obj)
    }
}

/// Check `α_0^2 α_1 ⋯ α_n = p^{kn - n(n+1)/2}`.
///
/// The product must be symbol-free (formal symbols are required to
/// cancel); otherwise the check is not decidable at this level and an
/// error is returned.
pub fn check_satake_constraint(s: &SatakeParams) -> Result<bool, LfactorError> {
    let n = s.genus as i64;
    let mut product = s.alphas[0].mul(&s.alphas[0]);
    for a in &s.alphas[1..] {
        product = product.mul(a);
    }
    if product.is_zero() {
        return Ok(false);
    }
    if !product.is_symbol_free() {
        return Err(LfactorError::UnsupportedSymbolicForm);
    }
    // kn - n(n+1)/2 in p-units, doubled for q-units.
    let target = s.weight.scale(2 * n).add(&Aff::int(-n * (n + 1)));
    Ok(product.coef.is_one() && product.q_exp == target)
}

/// Subsets of `{1..n}` ordered by size, then lexicographically.
fn subsets_in_size_order(n: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            cur.push(i);
            rec(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::with_capacity(1 << n);
    for r in 0..=n {
        rec(1, n, r, &mut Vec::with_capacity(r), &mut out);
    }
    out
}

/// The local spinor factor
/// `(1 - α_0 X) prod_{r=1}^{n} prod_{i_1<..<i_r} (1 - α_0 α_{i_1} ⋯ α_{i_r} X)`,
/// with its `2^n` linear factors listed by subset size then
/// lexicographic order.
pub fn spin_polynomial(s: &SatakeParams) -> FactoredXPoly {
    let factors = subsets_in_size_order(s.genus)
        .into_iter()
        .map(|subset| {
            let mut mu = s.alphas[0].clone();
            for i in subset {
                mu = mu.mul(&s.alphas[i]);
            }
            mu
        })
        .collect();
    FactoredXPoly { factors }
}

/// The local standard factor
/// `(1 - X) prod_{i=1}^{n} (1 - α_i^{-1} X)(1 - α_i X)`, with its
/// `2n + 1` linear factors.
pub fn standard_polynomial(s: &SatakeParams) -> Result<FactoredXPoly, LfactorError> {
    let mut factors = vec![ParamMono::one()];
    for i in 1..=s.genus {
        factors.push(s.alphas[i].inv()?);
        factors.push(s.alphas[i].clone());
    }
    Ok(FactoredXPoly { factors })
}

/// One Hodge pair `(p, q)` with an optional bookkeeping sign on
/// diagonal pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HodgePair {
    pub p: Aff,
    pub q: Aff,
    pub tag: Option<Sign>,
}

impl HodgePair {
    pub fn new(p: Aff, q: Aff) -> HodgePair {
        HodgePair { p, q, tag: None }
    }

    pub fn tagged(p: Aff, q: Aff, sign: Sign) -> HodgePair {
        HodgePair {
            p,
            q,
            tag: Some(sign),
        }
    }

    fn key(&self) -> ((i64, i64, i64), (i64, i64, i64), Option<Sign>) {
        (self.p.key(), self.q.key(), self.tag)
    }

    pub fn render(&self) -> String {
        match self.tag {
            Some(sign) => format!("({},{})[{}]", self.p, self.q, sign),
            None => format!("({},{})", self.p, self.q),
        }
    }
}

/// A Hodge type: a multiset of pairs `(p, q)`, kept in construction
/// order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HodgeType {
    pairs: Vec<HodgePair>,
}

impl HodgeType {
    pub fn new(pairs: Vec<HodgePair>) -> HodgeType {
        HodgeType { pairs }
    }

    pub fn pairs(&self) -> &[HodgePair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Multiset equality, tags included.
    pub fn same_type(&self, other: &HodgeType) -> bool {
        if self.pairs.len() != other.pairs.len() {
            return false;
        }
        let mut a: Vec<_> = self.pairs.iter().map(|p| p.key()).collect();
        let mut b: Vec<_> = other.pairs.iter().map(|p| p.key()).collect();
        a.sort();
        b.sort();
        a == b
    }

    /// True when every pair sums to the given weight.
    pub fn is_pure_of_weight(&self, w: &Aff) -> bool {
        self.pairs.iter().all(|pair| pair.p.add(&pair.q) == *w)
    }

    pub fn to_json(&self) -> serde_json::Value {
        use serde_json::Value;
        Value::Array(
            self.pairs
                .iter()
                .map(|pair| {
                    let mut row = vec![
                        Value::String(pair.p.to_string()),
                        Value::String(pair.q.to_string()),
                    ];
                    if let Some(sign) = pair.tag {
                        row.push(Value::String(sign.to_string()));
                    }
                    Value::Array(row)
                })
                .collect(),
        )
    }
}

/// The Hodge type of a genus-`n`, weight-`k` spinor motive: one pair per
/// splitting of `{1..n}` into an `i`-set and its complementary `j`-set,
///
/// `p = sum (k - i_t)`  over the `i`-set,
/// `q = sum (k - j_t)`  over the `j`-set,
///
/// listed in increasing order of `p`.  Every pair sums to
/// `kn - n(n+1)/2`.
pub fn hodge_spinor(n: usize, k: &Aff) -> HodgeType {
    let mut pairs = Vec::with_capacity(1 << n);
    for mask in 0u32..(1 << n) {
        let mut p = Aff::ZERO;
        let mut q = Aff::ZERO;
        for t in 1..=n {
            let contribution = k.sub(&Aff::int(t as i64));
            if mask & (1 << (t - 1)) != 0 {
                p = p.add(&contribution);
            } else {
                q = q.add(&contribution);
            }
        }
        pairs.push(HodgePair::new(p, q));
    }
    pairs.sort_by(|a, b| a.key().cmp(&b.key()));
    HodgeType { pairs }
}

/// Warn when a numeric weight sits outside the motivic range `k > n`.
pub fn motivic_range_warning(n: usize, k: &Aff) -> Option<String> {
    match k.as_int() {
        Some(v) if v <= n as i64 => Some(format!(
            "weight {} is outside the motivic range (need weight > {})",
            v, n
        )),
        _ => None,
    }
}

/// Tensor product of Hodge types: all pairwise sums
/// `(p_a + p_b, q_a + q_b)` in row-major order.  A diagonal output pair
/// produced by off-diagonal sources is tagged: `+` when the first
/// source has `p < q`, `-` when it has `p > q` (the two mirror sources
/// produce one of each).  A diagonal pair from diagonal sources
/// inherits the product of any source tags.
pub fn hodge_tensor(a: &HodgeType, b: &HodgeType) -> HodgeType {
    let mut pairs = Vec::with_capacity(a.len() * b.len());
    for pa in a.pairs() {
        for pb in b.pairs() {
            let p = pa.p.add(&pb.p);
            let q = pa.q.add(&pb.q);
            let tag = if p == q {
                if pa.p != pa.q {
                    Some(if pa.p < pa.q { Sign::Plus } else { Sign::Minus })
                } else {
                    match (pa.tag, pb.tag) {
                        (None, None) => None,
                        (Some(s), None) | (None, Some(s)) => Some(s),
                        (Some(s1), Some(s2)) => {
                            Some(if s1 == s2 { Sign::Plus } else { Sign::Minus })
                        }
                    }
                }
            } else {
                None
            };
            pairs.push(HodgePair { p, q, tag });
        }
    }
    HodgeType { pairs }
}

/// Outcome of merging two parameter sets, with a warning when the
/// weight precondition was overridden.
#[derive(Debug, Clone)]
pub struct MergedParams {
    pub params: SatakeParams,
    pub warning: Option<String>,
}

/// Merge two genus-`2m` parameter sets of weights `k` and `k - 2m` into
/// a genus-`4m` set of weight `k`:
///
/// `γ_0 = α_0 β_0`, `γ_1..γ_{2m} = α_1..α_{2m}`,
/// `γ_{2m+1}..γ_{4m} = β_1..β_{2m}`.
///
/// `allow_weight_mismatch` permits exploratory merges of other weight
/// pairs; the outcome then carries a warning instead of failing.
pub fn lift_merge_params(
    f: &SatakeParams,
    g: &SatakeParams,
    allow_weight_mismatch: bool,
) -> Result<MergedParams, LfactorError> {
    if f.genus != g.genus || f.genus % 2 != 0 {
        return Err(LfactorError::GenusMismatch);
    }
    let expected = f.weight.add(&Aff::int(-(f.genus as i64)));
    let warning = if g.weight == expected {
        None
    } else if allow_weight_mismatch {
        Some(format!(
            "weights ({}, {}) do not satisfy l = k - {}; merged set is exploratory",
            f.weight, g.weight, f.genus
        ))
    } else {
        return Err(LfactorError::WeightMismatch);
    };
    let mut alphas = Vec::with_capacity(2 * f.genus + 1);
    alphas.push(f.alphas[0].mul(&g.alphas[0]));
    alphas.extend(f.alphas[1..].iter().cloned());
    alphas.extend(g.alphas[1..].iter().cloned());
    Ok(MergedParams {
        params: SatakeParams::new(2 * f.genus, f.weight, alphas),
        warning,
    })
}

/// Satake parameters of the genus-`2m` Siegel-Eisenstein series of
/// weight `k`: `α_0 = 1`, `α_i = p^{k - 2m + i - 1}` for `i = 1..2m`.
pub fn eisenstein_params(k: &Aff, genus: usize) -> SatakeParams {
    assert!(genus >= 2 && genus % 2 == 0, "Eisenstein genus must be even");
    let mut alphas = vec![ParamMono::one()];
    for i in 1..=genus {
        alphas.push(ParamMono::p_pow(k.add(&Aff::int(i as i64 - 1 - genus as i64))));
    }
    SatakeParams::new(genus, *k, alphas)
}

/// Satake parameters of the genus-`2m` degree-doubling lift of an
/// elliptic eigenform of weight `2k` (the lifted form has weight
/// `k + m`):
///
/// `β_0 = p^{mk - m(m+1)/2}`, `β_i = α p^{i - 1/2}`,
/// `β_{m+i} = α^{-1} p^{i - 1/2}` for `i = 1..m`,
///
/// with `α` the normalized eigenform parameter and half-integral
/// `p`-powers carried by the formal square root `q`.
pub fn ikeda_params(k: &Aff, m: usize) -> SatakeParams {
    assert!(m >= 1, "lift genus must be positive");
    let mi = m as i64;
    let mut alphas = Vec::with_capacity(2 * m + 1);
    alphas.push(ParamMono::p_pow(
        k.scale(mi).add(&Aff::int(-mi * (mi + 1) / 2)),
    ));
    for i in 1..=m {
        alphas.push(ParamMono::sym("α").mul(&ParamMono::q_pow(Aff::int(2 * i as i64 - 1))));
    }
    for i in 1..=m {
        alphas.push(
            ParamMono::sym_pow("α", -1).mul(&ParamMono::q_pow(Aff::int(2 * i as i64 - 1))),
        );
    }
    SatakeParams::new(2 * m, k.add(&Aff::int(mi)), alphas)
}

/// The quadratic Hecke factor of the weight-`2k` eigenform,
/// `1 - a(p) p^c X + p^{2k - 1 + 2c} X^2` with
/// `a(p) = (α + α^{-1}) p^{k - 1/2}`, shifted by `c`.
fn shifted_hecke_quadratic(k: &Aff, c: &Aff) -> XPoly {
    let e1 = k.scale(2).add(&Aff::int(-1)).add(&c.scale(2));
    let a_term = ParamPoly::from_mono(ParamMono::sym("α").mul(&ParamMono::q_pow(e1)))
        .add(&ParamPoly::from_mono(
            ParamMono::sym_pow("α", -1).mul(&ParamMono::q_pow(e1)),
        ));
    let e2 = k.scale(4).add(&Aff::int(-2)).add(&c.scale(4));
    XPoly::from_coeffs(vec![
        ParamPoly::one(),
        a_term.neg(),
        ParamPoly::from_mono(ParamMono::q_pow(e2)),
    ])
}

/// Result of checking that the standard factor of the degree-doubling
/// lift is a product of shifted quadratic Hecke factors.
#[derive(Debug, Clone)]
pub struct IkedaFactorReport {
    pub genus: usize,
    pub degree: usize,
    pub expected_degree: usize,
    /// The expanded standard factor equals `(1 - X)` times the `2m`
    /// shifted quadratics.
    pub factorization_holds: bool,
    /// The expanded standard factor is fixed by `α -> α^{-1}`.
    pub alpha_inversion_invariant: bool,
    /// The quadratic shifts, one per factor: `j - m - k` for
    /// `j = 1..2m`.
    pub shifts: Vec<Aff>,
    /// Assumptions the parameter-level check cannot discharge.
    pub assumptions: Vec<&'static str>,
}

impl IkedaFactorReport {
    pub fn passed(&self) -> bool {
        self.factorization_holds
            && self.alpha_inversion_invariant
            && self.degree == self.expected_degree
    }

    pub fn to_json(&self) -> serde_json::Value {
        use serde_json::{Map, Value};
        let mut obj = Map::new();
        obj.insert(
            "genus".to_string(),
            Value::Number(serde_json::Number::from(self.genus as i64)),
        );
        obj.insert(
            "degree".to_string(),
            Value::Number(serde_json::Number::from(self.degree as i64)),
        );
        obj.insert(
            "expected_degree".to_string(),
            Value::Number(serde_json::Number::from(self.expected_degree as i64)),
        );
        obj.insert(
            "factorization_holds".to_string(),
            Value::Bool(self.factorization_holds),
        );
        obj.insert(
            "alpha_inversion_invariant".to_string(),
            Value::Bool(self.alpha_inversion_invariant),
        );
        obj.insert(
            "shifts".to_string(),
            Value::Array(
                self.shifts
                    .iter()
                    .map(|c| Value::String(c.to_string()))
                    .collect(),
            ),
        );
        obj.insert(
            "assumptions".to_string(),
            Value::Array(
                self.assumptions
                    .iter()
                    .map(|a| Value::String((*a).to_string()))
                    .collect(),
            ),
        );
        Value::Object(obj)
    }
}

/// Verify, as an identity of polynomials in `X` over `α` and `q`, that
/// the standard factor of the genus-`2m` lift of a weight-`2k` elliptic
/// eigenform equals `(1 - X)` times the `2m` quadratic Hecke factors
/// shifted by `c_j = j - m - k`, `j = 1..2m` — the local form of the
/// statement that the standard L-function of the lift is a product of
/// `2m` shifted elliptic L-functions.
pub fn verify_ikeda_standard_factor(k: &Aff, m: usize) -> Result<IkedaFactorReport, LfactorError> {
    let params = ikeda_params(k, m);
    let lhs = standard_polynomial(&params)?.expand();

    let shifts: Vec<Aff> = (1..=2 * m as i64)
        .map(|j| Aff::int(j - m as i64).sub(k))
        .collect();
    let mut rhs = XPoly::from_linear_factors(&[ParamMono::one()]);
    for c in &shifts {
        rhs = rhs.mul(&shifted_hecke_quadratic(k, c));
    }

    Ok(IkedaFactorReport {
        genus: 2 * m,
        degree: lhs.degree(),
        expected_degree: 4 * m + 1,
        factorization_holds: lhs == rhs,
        alpha_inversion_invariant: lhs == lhs.invert_sym("α"),
        shifts,
        assumptions: vec![
            "the non-vanishing of the defining integral pairing is assumed; it is not visible at parameter level",
        ],
    })
}

/// Result of comparing the merged Eisenstein parameters with the
/// genus-`4m` Eisenstein parameters directly.
#[derive(Debug, Clone)]
pub struct EisensteinMergeReport {
    pub genus: usize,
    pub gamma_zero_is_one: bool,
    /// `γ_1..γ_{4m}` equal `p^{k-4m}, .., p^{k-1}` as a multiset.
    pub gamma_multiset_matches: bool,
    /// The merged set satisfies the genus-`4m` parameter constraint
    /// `γ_0^2 γ_1 ⋯ γ_{4m} = p^{4mk - 2m(4m+1)}`.
    pub constraint_holds: bool,
}

impl EisensteinMergeReport {
    pub fn passed(&self) -> bool {
        self.gamma_zero_is_one && self.gamma_multiset_matches && self.constraint_holds
    }

    pub fn to_json(&self) -> serde_json::Value {
        use serde_json::{Map, Value};
        let mut obj = Map::new();
        obj.insert(
            "genus".to_string(),
            Value::Number(serde_json::Number::from(self.genus as i64)),
        );
        obj.insert("gamma_zero_is_one".to_string(), Value::Bool(self.gamma_zero_is_one));
        obj.insert(
            "gamma_multiset_matches".to_string(),
            Value::Bool(self.gamma_multiset_matches),
        );
        obj.insert("constraint_holds".to_string(), Value::Bool(self.constraint_holds));
        Value::Object(obj)
    }
}

/// Merge the genus-`2m` Eisenstein parameters of weights `k` and
/// `k - 2m` and compare the outcome with the genus-`4m` Eisenstein
/// parameters of weight `k`.
pub fn verify_eisenstein_merge(m: usize) -> Result<EisensteinMergeReport, LfactorError> {
    let k = Aff::k();
    let f = eisenstein_params(&k, 2 * m);
    let g = eisenstein_params(&k.add(&Aff::int(-2 * m as i64)), 2 * m);
    let merged = lift_merge_params(&f, &g, false)?;
    let expected = eisenstein_params(&k, 4 * m);
    Ok(EisensteinMergeReport {
        genus: 4 * m,
        gamma_zero_is_one: merged.params.alpha(0).is_one(),
        gamma_multiset_matches: merged.params.same_params(&expected),
        constraint_holds: check_satake_constraint(&merged.params)?,
    })
}

/// Result of comparing the genus-4 series denominator, in the
/// `u`-variables, with the genus-2 convolution denominator under a
/// variable substitution.
#[derive(Debug, Clone)]
pub struct ConjectureDenominatorReport {
    pub left_factor_count: usize,
    pub right_factor_count: usize,
    pub multiset_equal: bool,
}

impl ConjectureDenominatorReport {
    pub fn passed(&self) -> bool {
        self.left_factor_count == 16 && self.right_factor_count == 16 && self.multiset_equal
    }

    pub fn to_json(&self) -> serde_json::Value {
        use serde_json::{Map, Value};
        let mut obj = Map::new();
        obj.insert(
            "left_factor_count".to_string(),
            Value::Number(serde_json::Number::from(self.left_factor_count as i64)),
        );
        obj.insert(
            "right_factor_count".to_string(),
            Value::Number(serde_json::Number::from(self.right_factor_count as i64)),
        );
        obj.insert("multiset_equal".to_string(), Value::Bool(self.multiset_equal));
        Value::Object(obj)
    }
}

fn multiset_eq(a: &[MultiPoly], b: &[MultiPoly]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut unused: Vec<&MultiPoly> = b.iter().collect();
    for f in a {
        match unused.iter().position(|g| *g == f) {
            Some(i) => {
                unused.swap_remove(i);
            }
            None => return false,
        }
    }
    true
}

/// Compare the 16-factor genus-4 series denominator under the given
/// substitution with the 16-factor convolution denominator.
pub fn conjecture_denominator_with_substitution(
    substitution: &[(usize, MultiPoly)],
) -> ConjectureDenominatorReport {
    let ctx_u = SphericalContext::new(4, VarGroup::U).expect("u-family supports genus 4");
    let left: Vec<MultiPoly> = ctx_u
        .spinor_denominator()
        .iter()
        .map(|f| {
            f.substitute(substitution)
                .expect("monomial substitution of a polynomial factor")
        })
        .collect();
    let right = transcribe::convolution_denominator_factors();
    ConjectureDenominatorReport {
        left_factor_count: left.len(),
        right_factor_count: right.len(),
        multiset_equal: multiset_eq(&left, &right),
    }
}

/// Compare the genus-4 series denominator under
/// `u0 -> x0 y0, u1 -> x1, u2 -> x2, u3 -> y1, u4 -> y2` with the
/// convolution denominator: the two 16-factor products coincide.
pub fn verify_conjecture_denominator() -> ConjectureDenominatorReport {
    conjecture_denominator_with_substitution(&transcribe::lifting_substitution())
}

/// Result of rebuilding the rank-16 Hodge table of the tensor product
/// of two genus-2 spinor types.
#[derive(Debug, Clone)]
pub struct HodgeTensorReport {
    pub pair_count: usize,
    /// The sixteen pairs agree, in row-major display order, with the
    /// displayed table, tags included.
    pub matches_displayed_table: bool,
    pub plus_tag_count: usize,
    pub minus_tag_count: usize,
    /// Every pair sums to `2k + 2l - 6`.
    pub pure_of_joint_weight: bool,
}

impl HodgeTensorReport {
    pub fn passed(&self) -> bool {
        self.pair_count == 16
            && self.matches_displayed_table
            && self.plus_tag_count == 1
            && self.minus_tag_count == 1
            && self.pure_of_joint_weight
    }

    pub fn to_json(&self) -> serde_json::Value {
        use serde_json::{Map, Value};
        let mut obj = Map::new();
        obj.insert(
            "pair_count".to_string(),
            Value::Number(serde_json::Number::from(self.pair_count as i64)),
        );
        obj.insert(
            "matches_displayed_table".to_string(),
            Value::Bool(self.matches_displayed_table),
        );
        obj.insert(
            "plus_tag_count".to_string(),
            Value::Number(serde_json::Number::from(self.plus_tag_count as i64)),
        );
        obj.insert(
            "minus_tag_count".to_string(),
            Value::Number(serde_json::Number::from(self.minus_tag_count as i64)),
        );
        obj.insert(
            "pure_of_joint_weight".to_string(),
            Value::Bool(self.pure_of_joint_weight),
        );
        Value::Object(obj)
    }
}

/// The displayed sixteen Hodge pairs of the rank-16 tensor type, in
/// row-major order.
pub fn displayed_rank16_hodge_pairs() -> HodgeType {
    let k = Aff::k();
    let l = Aff::l();
    let pair = |kc: i64, lc: i64, c: i64, kq: i64, lq: i64, cq: i64| {
        HodgePair::new(
            k.scale(kc).add(&l.scale(lc)).add(&Aff::int(c)),
            k.scale(kq).add(&l.scale(lq)).add(&Aff::int(cq)),
        )
    };
    let tagged = |sign: Sign| {
        HodgePair::tagged(
            k.add(&l).add(&Aff::int(-3)),
            k.add(&l).add(&Aff::int(-3)),
            sign,
        )
    };
    HodgeType::new(vec![
        pair(0, 0, 0, 2, 2, -6),
        pair(0, 1, -2, 2, 1, -4),
        pair(0, 1, -1, 2, 1, -5),
        pair(0, 2, -3, 2, 0, -3),
        pair(1, 0, -2, 1, 2, -4),
        pair(1, 1, -4, 1, 1, -2),
        tagged(Sign::Plus),
        pair(1, 2, -5, 1, 0, -1),
        pair(1, 0, -1, 1, 2, -5),
        tagged(Sign::Minus),
        pair(1, 1, -2, 1, 1, -4),
        pair(1, 2, -4, 1, 0, -2),
        pair(2, 0, -3, 0, 2, -3),
        pair(2, 1, -5, 0, 1, -1),
        pair(2, 1, -4, 0, 1, -2),
        pair(2, 2, -6, 0, 0, 0),
    ])
}

/// Tensor the genus-2 spinor Hodge types of weights `k` and `l` and
/// compare the sixteen resulting pairs with the displayed table.
pub fn verify_hodge_tensor() -> HodgeTensorReport {
    let product = hodge_tensor(&hodge_spinor(2, &Aff::k()), &hodge_spinor(2, &Aff::l()));
    let displayed = displayed_rank16_hodge_pairs();
    let joint_weight = Aff {
        c0: -6,
        ck: 2,
        cl: 2,
    };
    HodgeTensorReport {
        pair_count: product.len(),
        matches_displayed_table: product.pairs() == displayed.pairs(),
        plus_tag_count: product
            .pairs()
            .iter()
            .filter(|p| p.tag == Some(Sign::Plus))
            .count(),
        minus_tag_count: product
            .pairs()
            .iter()
            .filter(|p| p.tag == Some(Sign::Minus))
            .count(),
        pure_of_joint_weight: product.is_pure_of_weight(&joint_weight),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn generic_params(genus: usize, names: &[&str]) -> SatakeParams {
        SatakeParams::new(
            genus,
            Aff::k(),
            names.iter().map(|n| ParamMono::sym(n)).collect(),
        )
    }

    #[test]
    fn eisenstein_constraint_holds() {
        let s = eisenstein_params(&Aff::k(), 2);
        assert_eq!(s.weight(), Aff::k());
        assert_eq!(s.alpha(0).to_string(), "1");
        assert_eq!(s.alpha(1).to_string(), "p^{k-2}");
        assert_eq!(s.alpha(2).to_string(), "p^{k-1}");
        assert_eq!(check_satake_constraint(&s), Ok(true));
    }

    #[test]
    fn elliptic_sigma_pair_reduces_to_a_prime_power() {
        // (α_0, α_1) = (σ p^{(k-1)/2}, σ^{-2}): the σ's cancel in
        // α_0^2 α_1 and the product is p^{k-1}.
        let alpha0 = ParamMono::sym("σ").mul(&ParamMono::q_pow(Aff {
            c0: -1,
            ck: 1,
            cl: 0,
        }));
        let s = SatakeParams::new(1, Aff::k(), vec![alpha0, ParamMono::sym_pow("σ", -2)]);
        assert_eq!(check_satake_constraint(&s), Ok(true));
    }

    #[test]
    fn scaled_leading_parameter_fails_the_constraint() {
        let s = eisenstein_params(&Aff::k(), 2);
        let mut alphas = s.alphas().to_vec();
        alphas[0] = alphas[0].mul(&ParamMono::p_pow(Aff::int(1)));
        let scaled = SatakeParams::new(2, Aff::k(), alphas);
        assert_eq!(check_satake_constraint(&scaled), Ok(false));
    }

    #[test]
    fn uncancelled_symbol_is_unsupported() {
        let s = SatakeParams::new(
            1,
            Aff::k(),
            vec![ParamMono::sym("σ"), ParamMono::one()],
        );
        assert_eq!(
            check_satake_constraint(&s),
            Err(LfactorError::UnsupportedSymbolicForm)
        );
    }

    #[test]
    fn spin_factors_enumerate_subsets() {
        let s1 = generic_params(1, &["α_0", "α_1"]);
        let q1 = spin_polynomial(&s1);
        assert_eq!(q1.len(), 2);
        assert_eq!(q1.render(), "(1 - α_0X)(1 - α_0α_1X)");

        let s2 = generic_params(2, &["α_0", "α_1", "α_2"]);
        let q2 = spin_polynomial(&s2);
        assert_eq!(q2.len(), 4);
        assert_eq!(
            q2.render(),
            "(1 - α_0X)(1 - α_0α_1X)(1 - α_0α_2X)(1 - α_0α_1α_2X)"
        );

        let s3 = generic_params(3, &["α_0", "α_1", "α_2", "α_3"]);
        assert_eq!(spin_polynomial(&s3).len(), 8);
    }

    #[test]
    fn spin_matches_the_spherical_denominator() {
        let ctx = SphericalContext::new(2, VarGroup::X).unwrap();
        let s = generic_params(2, &["α_0", "α_1", "α_2"]);
        let mut bindings = BTreeMap::new();
        bindings.insert("α_0".to_string(), ctx.z(0));
        bindings.insert("α_1".to_string(), ctx.z(1));
        bindings.insert("α_2".to_string(), ctx.z(2));
        let factors = spin_polynomial(&s)
            .to_multipolys(&ctx, &bindings)
            .unwrap();
        assert_eq!(factors, ctx.spinor_denominator());
    }

    #[test]
    fn spin_factors_are_permutation_stable() {
        let s = generic_params(2, &["α_0", "α_1", "α_2"]);
        let swapped = SatakeParams::new(
            2,
            Aff::k(),
            vec![
                ParamMono::sym("α_0"),
                ParamMono::sym("α_2"),
                ParamMono::sym("α_1"),
            ],
        );
        assert!(spin_polynomial(&s).same_factors(&spin_polynomial(&swapped)));
        assert!(standard_polynomial(&s)
            .unwrap()
            .same_factors(&standard_polynomial(&swapped).unwrap()));
    }

    #[test]
    fn standard_factor_count_and_inversion_invariance() {
        let names = ["α_0", "α_1", "α_2", "α_3", "α_4"];
        for n in 1..=4 {
            let s = generic_params(n, &names[..=n]);
            let r = standard_polynomial(&s).unwrap();
            assert_eq!(r.len(), 2 * n + 1);
            let expanded = r.expand();
            assert_eq!(expanded.degree(), 2 * n + 1);
            for i in 1..=n {
                assert_eq!(expanded, expanded.invert_sym(names[i]));
            }
        }
        let s1 = generic_params(1, &["α_0", "α_1"]);
        assert_eq!(
            standard_polynomial(&s1).unwrap().render(),
            "(1 - X)(1 - α_1^{-1}X)(1 - α_1X)"
        );
    }

    #[test]
    fn zero_parameter_is_not_invertible() {
        let s = SatakeParams::new(
            1,
            Aff::k(),
            vec![ParamMono::sym("α_0"), ParamMono::zero()],
        );
        assert_eq!(
            standard_polynomial(&s).unwrap_err(),
            LfactorError::NonInvertibleParameter
        );
    }

    #[test]
    fn spinor_hodge_types() {
        let h2 = hodge_spinor(2, &Aff::k());
        let rendered: Vec<String> = h2.pairs().iter().map(|p| p.render()).collect();
        assert_eq!(rendered, vec!["(0,2k-3)", "(k-2,k-1)", "(k-1,k-2)", "(2k-3,0)"]);

        let h1 = hodge_spinor(1, &Aff::k());
        let rendered1: Vec<String> = h1.pairs().iter().map(|p| p.render()).collect();
        assert_eq!(rendered1, vec!["(0,k-1)", "(k-1,0)"]);

        for n in 1..=6 {
            let h = hodge_spinor(n, &Aff::k());
            assert_eq!(h.len(), 1 << n);
            let w = Aff::k()
                .scale(n as i64)
                .add(&Aff::int(-(n as i64) * (n as i64 + 1) / 2));
            assert!(h.is_pure_of_weight(&w));
        }

        assert!(motivic_range_warning(2, &Aff::int(2)).is_some());
        assert!(motivic_range_warning(2, &Aff::int(3)).is_none());
        assert!(motivic_range_warning(2, &Aff::k()).is_none());
    }

    #[test]
    fn rank16_tensor_matches_the_displayed_table() {
        let report = verify_hodge_tensor();
        assert!(report.passed(), "report: {:?}", report);
    }

    #[test]
    fn tensor_with_the_unit_type_is_the_identity() {
        let unit = HodgeType::new(vec![HodgePair::new(Aff::ZERO, Aff::ZERO)]);
        let h = hodge_spinor(2, &Aff::k());
        assert_eq!(hodge_tensor(&h, &unit), h);
        assert_eq!(hodge_tensor(&unit, &h), h);
        let big = hodge_tensor(&h, &hodge_spinor(2, &Aff::l()));
        assert_eq!(big.len(), h.len() * 4);
    }

    #[test]
    fn generic_merge_lists_the_five_parameters() {
        let f = generic_params(2, &["α_0", "α_1", "α_2"]);
        let g = SatakeParams::new(
            2,
            Aff::k().add(&Aff::int(-2)),
            vec![
                ParamMono::sym("β_0"),
                ParamMono::sym("β_1"),
                ParamMono::sym("β_2"),
            ],
        );
        let merged = lift_merge_params(&f, &g, false).unwrap();
        assert!(merged.warning.is_none());
        assert_eq!(merged.params.genus(), 4);
        assert_eq!(merged.params.weight(), Aff::k());
        let rendered: Vec<String> = merged
            .params
            .alphas()
            .iter()
            .map(|a| a.to_string())
            .collect();
        assert_eq!(rendered, vec!["α_0β_0", "α_1", "α_2", "β_1", "β_2"]);
    }

    #[test]
    fn merge_preconditions_are_enforced() {
        let f = generic_params(2, &["α_0", "α_1", "α_2"]);
        let g1 = generic_params(1, &["β_0", "β_1"]);
        assert_eq!(
            lift_merge_params(&f, &g1, false).unwrap_err(),
            LfactorError::GenusMismatch
        );

        let g_wrong_weight = generic_params(2, &["β_0", "β_1", "β_2"]);
        assert_eq!(
            lift_merge_params(&f, &g_wrong_weight, false).unwrap_err(),
            LfactorError::WeightMismatch
        );
        let overridden = lift_merge_params(&f, &g_wrong_weight, true).unwrap();
        assert!(overridden.warning.is_some());

        let odd = generic_params(1, &["α_0", "α_1"]);
        assert_eq!(
            lift_merge_params(&odd, &odd, false).unwrap_err(),
            LfactorError::GenusMismatch
        );
    }

    #[test]
    fn merged_eisenstein_parameters_match_for_small_lifts() {
        for m in 1..=3 {
            let report = verify_eisenstein_merge(m).unwrap();
            assert!(report.passed(), "m = {}: {:?}", m, report);
        }
    }

    #[test]
    fn lift_parameters_and_their_defining_quadratic() {
        let s = ikeda_params(&Aff::k(), 1);
        assert_eq!(s.genus(), 2);
        assert_eq!(s.weight(), Aff::k().add(&Aff::int(1)));
        let rendered: Vec<String> = s.alphas().iter().map(|a| a.to_string()).collect();
        assert_eq!(rendered, vec!["p^{k-1}", "αp^{1/2}", "α^{-1}p^{1/2}"]);

        // (1 - α p^{k-1/2} X)(1 - α^{-1} p^{k-1/2} X)
        //   = 1 - a(p) X + p^{2k-1} X^2.
        let e = Aff { c0: -1, ck: 2, cl: 0 };
        let lhs = XPoly::from_linear_factors(&[
            ParamMono::sym("α").mul(&ParamMono::q_pow(e)),
            ParamMono::sym_pow("α", -1).mul(&ParamMono::q_pow(e)),
        ]);
        let rhs = shifted_hecke_quadratic(&Aff::k(), &Aff::ZERO);
        assert_eq!(lhs, rhs);

        // The constraint reduces to a pure power of p (the α's cancel).
        assert_eq!(check_satake_constraint(&s), Ok(true));

        // The parameter multiset is fixed by α -> α^{-1}.
        for m in 1..=3 {
            let s = ikeda_params(&Aff::k(), m);
            let swapped = SatakeParams::new(
                s.genus(),
                s.weight(),
                s.alphas().iter().map(|a| a.invert_sym("α")).collect(),
            );
            assert!(s.same_params(&swapped));
        }
    }

    #[test]
    fn lift_standard_factor_is_a_product_of_shifted_quadratics() {
        for m in 1..=2 {
            let report = verify_ikeda_standard_factor(&Aff::k(), m).unwrap();
            assert!(report.passed(), "m = {}: {:?}", m, report);
            assert_eq!(report.degree, 4 * m + 1);
        }
        let r1 = verify_ikeda_standard_factor(&Aff::k(), 1).unwrap();
        let rendered: Vec<String> = r1.shifts.iter().map(|c| c.to_string()).collect();
        assert_eq!(rendered, vec!["-k", "1-k"]);
    }

    #[test]
    fn genus4_denominator_matches_the_convolution_denominator() {
        let report = verify_conjecture_denominator();
        assert!(report.passed(), "report: {:?}", report);

        // Sending u3 to x1 instead of y1 breaks the identification.
        let mut wrong = transcribe::lifting_substitution();
        let table = crate::vars::VarTable::master();
        wrong[3] = (
            table.var("u3"),
            MultiPoly::from_monomial(&table, table.mono("x1"), Rat::one()),
        );
        let control = conjecture_denominator_with_substitution(&wrong);
        assert!(!control.multiset_equal);
        assert!(!control.passed());
    }

    #[test]
    fn json_shapes_are_stable() {
        let s = eisenstein_params(&Aff::k(), 2);
        assert_eq!(
            serde_json::to_string(&s.to_json()).unwrap(),
            r#"{"genus":2,"weight":"k","alphas":["1","p^{k-2}","p^{k-1}"]}"#
        );
        let h = hodge_spinor(2, &Aff::k());
        assert_eq!(
            serde_json::to_string(&h.to_json()).unwrap(),
            r#"[["0","2k-3"],["k-2","k-1"],["k-1","k-2"],["2k-3","0"]]"#
        );
    }
}
