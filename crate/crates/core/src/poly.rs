//! Sparse multivariate Laurent polynomials with exact rational coefficients.
//!
//! A [`MultiPoly`] is a canonical-form term list over a [`VarTable`]: terms
//! are kept sorted in ascending graded-lex order, zero coefficients are
//! dropped, and coefficients are always reduced fractions (the scalar type
//! normalizes itself).  Because the form is canonical, structural equality is
//! mathematical equality.
//!
//! Division is supported only as *exact* division: `a.exact_div(&b)` either
//! returns the exact quotient or reports that `b` does not divide `a`.
//! Negative exponents are handled by pre-multiplying both operands with a
//! monomial clearing them, dividing in the polynomial ring, and shifting
//! back.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::vars::{Monomial, VarTable, MAX_VARS};

/// Exact scalar used everywhere: arbitrary-precision reduced fractions.
pub type Rat = BigRational;

/// Integer-valued scalar helper.
pub fn rat_int(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// Fraction helper for tests and builders.
pub fn rat_frac(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Errors from the exact-arithmetic layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ArithError {
    /// Operands were built over different variable tables.
    MismatchedVarTable,
    /// Exact division failed: the divisor does not divide the dividend.
    NotDivisible,
    /// Division by the zero polynomial, or a zero denominator.
    ZeroDivisor,
    /// A variable occurring with a negative exponent was bound to a
    /// non-monomial value in a substitution.
    NonUnitBindingForInvertedVariable,
    /// Raising a non-monomial to a negative power.
    NegativePowerOfNonUnit,
    /// Series expansion requires the denominator's constant term in the
    /// series variable to divide every step exactly.
    DenominatorNotUnitAtOrigin,
}

impl fmt::Display for ArithError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArithError::MismatchedVarTable => write!(f, "operands use different variable tables"),
            ArithError::NotDivisible => write!(f, "exact division failed: not divisible"),
            ArithError::ZeroDivisor => write!(f, "division by zero polynomial"),
            ArithError::NonUnitBindingForInvertedVariable => {
                write!(f, "variable with negative exponent bound to a non-monomial value")
            }
            ArithError::NegativePowerOfNonUnit => {
                write!(f, "negative power of a non-monomial polynomial")
            }
            ArithError::DenominatorNotUnitAtOrigin => {
                write!(f, "denominator constant term does not divide the series step")
            }
        }
    }
}

impl std::error::Error for ArithError {}

/// Sparse Laurent polynomial in canonical form.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    table: VarTable,
    /// Ascending graded-lex, no zero coefficients.
    terms: Vec<(Monomial, Rat)>,
}

impl MultiPoly {
    pub fn zero(table: &VarTable) -> Self {
        MultiPoly {
            table: table.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(table: &VarTable) -> Self {
        MultiPoly::constant(table, Rat::one())
    }

    pub fn constant(table: &VarTable, c: Rat) -> Self {
        let mut terms = Vec::new();
        if !c.is_zero() {
            terms.push((Monomial::one(), c));
        }
        MultiPoly {
            table: table.clone(),
            terms,
        }
    }

    pub fn int(table: &VarTable, n: i64) -> Self {
        MultiPoly::constant(table, rat_int(n))
    }

    /// Single variable to the first power.
    pub fn var(table: &VarTable, name: &str) -> Self {
        MultiPoly::from_monomial(table, table.mono(name), Rat::one())
    }

    pub fn from_monomial(table: &VarTable, m: Monomial, c: Rat) -> Self {
        let mut terms = Vec::new();
        if !c.is_zero() {
            terms.push((m, c));
        }
        MultiPoly {
            table: table.clone(),
            terms,
        }
    }

    /// Build from an arbitrary term list: merges duplicates, drops zeros.
    pub fn from_terms(table: &VarTable, raw: Vec<(Monomial, Rat)>) -> Self {
        let mut map: BTreeMap<Monomial, Rat> = BTreeMap::new();
        for (m, c) in raw {
            if c.is_zero() {
                continue;
            }
            match map.entry(m) {
                std::collections::btree_map::Entry::Vacant(v) => {
                    v.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(mut o) => {
                    *o.get_mut() += c;
                    if o.get().is_zero() {
                        o.remove();
                    }
                }
            }
        }
        MultiPoly {
            table: table.clone(),
            terms: map.into_iter().collect(),
        }
    }

    fn from_map(table: &VarTable, map: HashMap<Monomial, Rat>) -> Self {
        let mut terms: Vec<(Monomial, Rat)> =
            map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        MultiPoly {
            table: table.clone(),
            terms,
        }
    }

    pub fn table(&self) -> &VarTable {
        &self.table
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> &[(Monomial, Rat)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Leading (graded-lex greatest) term; `None` for the zero polynomial.
    pub fn leading(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.last().map(|(m, c)| (m, c))
    }

    /// Coefficient of the empty monomial.
    pub fn constant_term(&self) -> Rat {
        self.coeff(&Monomial::one())
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        match self.terms.binary_search_by(|(tm, _)| tm.cmp(m)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Rat::zero(),
        }
    }

    /// If the polynomial is a single term, return it (a "unit" when used as
    /// a divisor: units are invertible in the Laurent ring).
    pub fn as_monomial(&self) -> Option<(&Monomial, &Rat)> {
        if self.terms.len() == 1 {
            Some((&self.terms[0].0, &self.terms[0].1))
        } else {
            None
        }
    }

    fn check_table(&self, other: &MultiPoly) -> Result<(), ArithError> {
        if self.table == other.table {
            Ok(())
        } else {
            Err(ArithError::MismatchedVarTable)
        }
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            table: self.table.clone(),
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        self.check_table(other).expect("poly_add: table mismatch");
        // Linear merge of two sorted term lists.
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match self.terms[i].0.cmp(&other.terms[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = &self.terms[i].1 + &other.terms[j].1;
                    if !c.is_zero() {
                        out.push((self.terms[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend(other.terms[j..].iter().cloned());
        MultiPoly {
            table: self.table.clone(),
            terms: out,
        }
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    /// Add `c * m * other` into an accumulator map; the workhorse behind
    /// multiplication and division.
    fn accumulate(map: &mut HashMap<Monomial, Rat>, other: &MultiPoly, m: &Monomial, c: &Rat) {
        for (om, oc) in &other.terms {
            let key = om.mul(m);
            let add = oc * c;
            match map.entry(key) {
                std::collections::hash_map::Entry::Vacant(v) => {
                    v.insert(add);
                }
                std::collections::hash_map::Entry::Occupied(mut o) => {
                    *o.get_mut() += add;
                    if o.get().is_zero() {
                        o.remove();
                    }
                }
            }
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        self.check_table(other).expect("poly_mul: table mismatch");
        if self.is_zero() || other.is_zero() {
            return MultiPoly::zero(&self.table);
        }
        // Iterate over the smaller operand.
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut map: HashMap<Monomial, Rat> =
            HashMap::with_capacity(large.terms.len() * 2);
        for (m, c) in &small.terms {
            Self::accumulate(&mut map, large, m, c);
        }
        MultiPoly::from_map(&self.table, map)
    }

    pub fn mul_scalar(&self, c: &Rat) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.table);
        }
        MultiPoly {
            table: self.table.clone(),
            terms: self.terms.iter().map(|(m, tc)| (*m, tc * c)).collect(),
        }
    }

    /// Multiply by a single term (order-preserving shift).
    pub fn mul_monomial(&self, m: &Monomial, c: &Rat) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.table);
        }
        let mut terms: Vec<(Monomial, Rat)> = self
            .terms
            .iter()
            .map(|(tm, tc)| (tm.mul(m), tc * c))
            .collect();
        // A monomial shift preserves graded-lex order.
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        MultiPoly {
            table: self.table.clone(),
            terms,
        }
    }

    /// Non-negative integer power by repeated squaring.  Negative powers are
    /// only defined for single-term polynomials.
    pub fn pow(&self, k: i32) -> Result<MultiPoly, ArithError> {
        if k < 0 {
            let (m, c) = self.as_monomial().ok_or(ArithError::NegativePowerOfNonUnit)?;
            if c.is_zero() {
                return Err(ArithError::ZeroDivisor);
            }
            let inv_c = Rat::one() / c;
            let base = MultiPoly::from_monomial(&self.table, m.inv(), inv_c);
            return base.pow(-k);
        }
        let mut result = MultiPoly::one(&self.table);
        let mut base = self.clone();
        let mut e = k as u32;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(result)
    }

    /// Componentwise minimum exponent over all terms, per variable: the
    /// largest monomial (allowing negative exponents) dividing every term.
    /// Returns the empty monomial for the zero polynomial.
    pub fn monomial_content(&self) -> Monomial {
        if self.terms.is_empty() {
            return Monomial::one();
        }
        let mut e = self.terms[0].0 .0;
        for (m, _) in &self.terms[1..] {
            for i in 0..MAX_VARS {
                e[i] = e[i].min(m.0[i]);
            }
        }
        Monomial(e)
    }

    /// Exact division, Laurent-aware.
    pub fn exact_div(&self, divisor: &MultiPoly) -> Result<MultiPoly, ArithError> {
        self.check_table(divisor)?;
        if divisor.is_zero() {
            return Err(ArithError::ZeroDivisor);
        }
        if self.is_zero() {
            return Ok(MultiPoly::zero(&self.table));
        }
        // Fast path: dividing by a single term always succeeds.
        if let Some((m, c)) = divisor.as_monomial() {
            return Ok(self.mul_monomial(&m.inv(), &(Rat::one() / c)));
        }
        // Clear negative exponents from both operands, divide in the
        // polynomial ring, then shift the quotient back.
        let shift_a = negative_part(&self.monomial_content());
        let shift_b = negative_part(&divisor.monomial_content());
        let a = self.mul_monomial(&shift_a.inv(), &Rat::one());
        let b = divisor.mul_monomial(&shift_b.inv(), &Rat::one());
        let q = poly_div_exact(&a, &b)?;
        // a = self * shift_a^-1, b = divisor * shift_b^-1  =>
        // self/divisor = q * shift_a * shift_b^-1.
        Ok(q.mul_monomial(&shift_a.mul(&shift_b.inv()), &Rat::one()))
    }

    /// Whether `divisor` divides `self` exactly.
    pub fn divisible_by(&self, divisor: &MultiPoly) -> bool {
        self.exact_div(divisor).is_ok()
    }

    /// Substitute variables by polynomial values.  `bindings` maps variable
    /// indices to replacement values over the same table.  A variable that
    /// occurs with a negative exponent may only be bound to a single-term
    /// value (a unit of the Laurent ring).  Unbound variables pass through.
    pub fn substitute(&self, bindings: &[(usize, MultiPoly)]) -> Result<MultiPoly, ArithError> {
        for (_, v) in bindings {
            self.check_table(v)?;
        }
        let bound: HashMap<usize, &MultiPoly> =
            bindings.iter().map(|(i, v)| (*i, v)).collect();
        // Cache powers of each binding as they are needed.
        let mut pow_cache: HashMap<(usize, i16), MultiPoly> = HashMap::new();
        let mut map: HashMap<Monomial, Rat> = HashMap::new();
        for (m, c) in &self.terms {
            let mut residue = [0i16; MAX_VARS];
            let mut factor = MultiPoly::constant(&self.table, c.clone());
            for i in 0..self.table.len() {
                let e = m.exp(i);
                if e == 0 {
                    continue;
                }
                match bound.get(&i) {
                    None => residue[i] = e,
                    Some(v) => {
                        if e < 0 && v.as_monomial().is_none() {
                            return Err(ArithError::NonUnitBindingForInvertedVariable);
                        }
                        let key = (i, e);
                        if !pow_cache.contains_key(&key) {
                            let p = v.pow(e as i32)?;
                            pow_cache.insert(key, p);
                        }
                        factor = factor.mul(&pow_cache[&key]);
                    }
                }
            }
            Self::accumulate(
                &mut map,
                &factor,
                &Monomial(residue),
                &Rat::one(),
            );
        }
        Ok(MultiPoly::from_map(&self.table, map))
    }

    /// Decompose along powers of one variable: returns `(k, coefficient)`
    /// pairs sorted by `k`, with the variable stripped from each coefficient.
    pub fn coeffs_in_var(&self, var: usize) -> Vec<(i32, MultiPoly)> {
        let mut split: BTreeMap<i32, Vec<(Monomial, Rat)>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let k = m.exp(var) as i32;
            let mut stripped = *m;
            stripped.0[var] = 0;
            split.entry(k).or_default().push((stripped, c.clone()));
        }
        split
            .into_iter()
            .map(|(k, terms)| (k, MultiPoly::from_terms(&self.table, terms)))
            .collect()
    }

    /// Coefficient of `var^k` with the variable stripped.
    pub fn coeff_of_power(&self, var: usize, k: i32) -> MultiPoly {
        let terms: Vec<(Monomial, Rat)> = self
            .terms
            .iter()
            .filter(|(m, _)| m.exp(var) as i32 == k)
            .map(|(m, c)| {
                let mut stripped = *m;
                stripped.0[var] = 0;
                (stripped, c.clone())
            })
            .collect();
        MultiPoly::from_terms(&self.table, terms)
    }

    /// Highest power of `var` appearing (0 for polynomials free of it;
    /// `None` for the zero polynomial).
    pub fn degree_in(&self, var: usize) -> Option<i32> {
        self.terms.iter().map(|(m, _)| m.exp(var) as i32).max()
    }

    /// Lowest power of `var` appearing.
    pub fn min_exp_in(&self, var: usize) -> Option<i32> {
        self.terms.iter().map(|(m, _)| m.exp(var) as i32).min()
    }

    /// Whether a variable occurs at all.
    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exp(var) != 0)
    }

    /// Render in descending canonical order, e.g. `x0^2*x1 - 2*x1 + 1/3`.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else if neg {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let coeff_str = render_rat(&abs);
            if m.is_one() {
                out.push_str(&coeff_str);
            } else if abs.is_one() {
                out.push_str(&m.render(&self.table));
            } else {
                out.push_str(&format!("{}*{}", coeff_str, m.render(&self.table)));
            }
        }
        out
    }

    /// Canonical JSON value: variable list plus terms in descending
    /// graded-lex order, coefficients as decimal strings.
    pub fn to_json(&self) -> serde_json::Value {
        use serde_json::{Map, Value};
        let vars: Vec<Value> = self
            .table
            .names()
            .iter()
            .map(|n| Value::String(n.clone()))
            .collect();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in self.terms.iter().rev() {
            let mut mono = Map::new();
            for i in 0..self.table.len() {
                let e = m.exp(i);
                if e != 0 {
                    mono.insert(
                        self.table.name(i).to_string(),
                        Value::Number(serde_json::Number::from(e as i64)),
                    );
                }
            }
            let mut term = Map::new();
            term.insert("m".to_string(), Value::Object(mono));
            term.insert("n".to_string(), Value::String(c.numer().to_string()));
            term.insert("d".to_string(), Value::String(c.denom().to_string()));
            terms.push(Value::Object(term));
        }
        let mut obj = Map::new();
        obj.insert("vars".to_string(), Value::Array(vars));
        obj.insert("terms".to_string(), Value::Array(terms));
        Value::Object(obj)
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({})", self.render())
    }
}

fn render_rat(c: &Rat) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Monomial holding only the negative components of `m` (identity slots
/// elsewhere); `m / negative_part(m)` has all exponents non-negative.
fn negative_part(m: &Monomial) -> Monomial {
    let mut e = [0i16; MAX_VARS];
    for i in 0..MAX_VARS {
        if m.0[i] < 0 {
            e[i] = m.0[i];
        }
    }
    Monomial(e)
}

/// Exact division in the polynomial ring (all exponents non-negative).
fn poly_div_exact(a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly, ArithError> {
    let (lb_m, lb_c) = b.leading().expect("divisor is nonzero");
    let mut rem: BTreeMap<Monomial, Rat> = a.terms.iter().cloned().collect();
    // Quotient terms come out in strictly descending order.
    let mut q_desc: Vec<(Monomial, Rat)> = Vec::new();
    while let Some((&lr_m, lr_c)) = rem.iter().next_back() {
        if !lb_m.divides(&lr_m) {
            return Err(ArithError::NotDivisible);
        }
        let qm = lb_m.div_into(&lr_m);
        let qc = lr_c / lb_c;
        // Subtract qc*qm*b from the remainder; the leading term cancels.
        for (bm, bc) in b.terms() {
            let key = bm.mul(&qm);
            let sub = bc * &qc;
            match rem.entry(key) {
                std::collections::btree_map::Entry::Vacant(v) => {
                    v.insert(-sub);
                }
                std::collections::btree_map::Entry::Occupied(mut o) => {
                    *o.get_mut() -= sub;
                    if o.get().is_zero() {
                        o.remove();
                    }
                }
            }
        }
        q_desc.push((qm, qc));
    }
    q_desc.reverse();
    Ok(MultiPoly {
        table: a.table().clone(),
        terms: q_desc,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> VarTable {
        VarTable::master()
    }

    fn var(name: &str) -> MultiPoly {
        MultiPoly::var(&t(), name)
    }

    fn int(n: i64) -> MultiPoly {
        MultiPoly::int(&t(), n)
    }

    #[test]
    fn add_merges_and_cancels() {
        let x = var("x1");
        let sum = x.add(&x).sub(&x.mul_scalar(&rat_int(2)));
        assert!(sum.is_zero());
    }

    #[test]
    fn mul_binomials() {
        // (1 + x1)(1 + x2) = 1 + x1 + x2 + x1*x2
        let a = int(1).add(&var("x1"));
        let b = int(1).add(&var("x2"));
        let p = a.mul(&b);
        assert_eq!(p.num_terms(), 4);
        assert_eq!(p.coeff(&t().mono("x1").mul(&t().mono("x2"))), rat_int(1));
        assert_eq!(p.constant_term(), rat_int(1));
    }

    #[test]
    fn pow_binomial() {
        let a = int(1).add(&var("x1"));
        let p = a.pow(5).unwrap();
        // Binomial coefficients of (1+x)^5.
        assert_eq!(p.coeff(&t().mono("x1").pow(2)), rat_int(10));
        assert_eq!(p.coeff(&t().mono("x1").pow(5)), rat_int(1));
    }

    #[test]
    fn exact_div_roundtrip() {
        let a = int(1).add(&var("x1")).mul(&int(1).sub(&var("x2").mul(&var("p"))));
        let b = int(1).add(&var("x1"));
        let q = a.exact_div(&b).unwrap();
        assert_eq!(q, int(1).sub(&var("x2").mul(&var("p"))));
        assert_eq!(q.mul(&b), a);
    }

    #[test]
    fn exact_div_rejects_non_factor() {
        let a = int(1).add(&var("x1"));
        let b = int(1).add(&var("x2"));
        assert_eq!(a.exact_div(&b), Err(ArithError::NotDivisible));
    }

    #[test]
    fn laurent_division_by_monomial() {
        // (x1 + x1^2) / (p*x1) = p^-1 + p^-1*x1
        let a = var("x1").add(&var("x1").pow(2).unwrap());
        let b = var("p").mul(&var("x1"));
        let q = a.exact_div(&b).unwrap();
        let p_inv = MultiPoly::from_monomial(&t(), t().mono("p").inv(), rat_int(1));
        assert_eq!(q, p_inv.add(&p_inv.mul(&var("x1"))));
        assert_eq!(q.mul(&b), a);
    }

    #[test]
    fn laurent_division_general() {
        // a = (1 - x1/p)*(1 + x2), divide back out the Laurent factor.
        let f = int(1).sub(&MultiPoly::from_monomial(
            &t(),
            t().mono("x1").mul(&t().mono("p").inv()),
            rat_int(1),
        ));
        let g = int(1).add(&var("x2"));
        let a = f.mul(&g);
        assert_eq!(a.exact_div(&f).unwrap(), g);
        assert_eq!(a.exact_div(&g).unwrap(), f);
    }

    #[test]
    fn substitute_polynomial_binding() {
        // x1 -> 1 + x2 inside x1^2.
        let a = var("x1").pow(2).unwrap();
        let b = a
            .substitute(&[(t().var("x1"), int(1).add(&var("x2")))])
            .unwrap();
        assert_eq!(b, int(1).add(&var("x2")).pow(2).unwrap());
    }

    #[test]
    fn substitute_inverted_needs_unit() {
        let x1_inv = MultiPoly::from_monomial(&t(), t().mono("x1").inv(), rat_int(1));
        // Unit binding works: x1 -> p*x2 gives (p*x2)^-1.
        let ok = x1_inv
            .substitute(&[(t().var("x1"), var("p").mul(&var("x2")))])
            .unwrap();
        assert_eq!(
            ok,
            MultiPoly::from_monomial(
                &t(),
                t().mono("p").inv().mul(&t().mono("x2").inv()),
                rat_int(1)
            )
        );
        // Non-unit binding must be rejected.
        let err = x1_inv.substitute(&[(t().var("x1"), int(1).add(&var("x2")))]);
        assert_eq!(err, Err(ArithError::NonUnitBindingForInvertedVariable));
    }

    #[test]
    fn substitute_keeps_unbound() {
        let a = var("x1").mul(&var("x2"));
        let b = a.substitute(&[(t().var("x1"), var("p"))]).unwrap();
        assert_eq!(b, var("p").mul(&var("x2")));
    }

    #[test]
    fn content_and_coeff_split() {
        // p^2*x1 + p^3*x1*x2 has content p^2*x1.
        let a = var("p")
            .pow(2)
            .unwrap()
            .mul(&var("x1"))
            .add(&var("p").pow(3).unwrap().mul(&var("x1")).mul(&var("x2")));
        let content = a.monomial_content();
        assert_eq!(content.exp(t().var("p")), 2);
        assert_eq!(content.exp(t().var("x1")), 1);
        let x_var = t().var("X");
        let series = int(1).add(&var("X").mul(&var("x1"))).add(
            &var("X").pow(2).unwrap().mul(&var("x2")),
        );
        let coeffs = series.coeffs_in_var(x_var);
        assert_eq!(coeffs.len(), 3);
        assert_eq!(coeffs[1], (1, var("x1")));
        assert_eq!(coeffs[2], (2, var("x2")));
    }

    #[test]
    fn json_shape_and_determinism() {
        let a = var("x1").mul_scalar(&rat_frac(-1, 3)).add(&int(2));
        let j1 = serde_json::to_string(&a.to_json()).unwrap();
        let j2 = serde_json::to_string(&a.to_json()).unwrap();
        assert_eq!(j1, j2);
        assert_eq!(
            j1,
            r#"{"vars":["p","x0","x1","x2","y0","y1","y2","X","u0","u1","u2","u3","u4"],"terms":[{"m":{"x1":1},"n":"-1","d":"3"},{"m":{},"n":"2","d":"1"}]}"#
        );
    }

    #[test]
    fn render_readable() {
        let a = var("x1").sub(&var("x2"));
        assert_eq!(a.render(), "x1 - x2");
        assert_eq!(int(0).render(), "0");
    }
}
