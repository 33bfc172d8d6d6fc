//! Closed forms for sequences indexed by an integer parameter.
//!
//! A [`DeltaSeries`] stores finitely many pairs `(coefficient, base)` and
//! denotes the sequence `delta -> sum_j coef_j * base_j^delta`, with each
//! base a monomial.  Such sequences are exactly what comes out of a
//! partial-fraction decomposition with simple poles `1 - base_j*X`, and the
//! two views convert losslessly:
//!
//! * [`DeltaSeries::partial_fractions`] turns a rational function with a
//!   known product denominator into this form;
//! * [`DeltaSeries::resum`] turns it back into the generating rational
//!   function `sum_j coef_j / (1 - base_j*X)`.
//!
//! Products of sequences and power reindexings (`delta -> m*delta`) act
//! termwise on the pairs, which is what makes symmetric-power style
//! manipulations cheap.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use crate::poly::{ArithError, MultiPoly, Rat};
use crate::ratfn::RationalFn;
use crate::vars::{Monomial, VarTable};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeriesError {
    /// Two partial-fraction factors share the same base monomial.
    RepeatedBase,
    /// The rational function is not of the form
    /// `num / prod(1 - base_j*var)` with `deg(num) <` number of factors.
    NotLinearFactorForm,
    Arith(ArithError),
}

impl fmt::Display for SeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesError::RepeatedBase => write!(f, "repeated base in factor list"),
            SeriesError::NotLinearFactorForm => {
                write!(f, "denominator is not the given product of linear factors")
            }
            SeriesError::Arith(e) => write!(f, "arithmetic error: {}", e),
        }
    }
}

impl std::error::Error for SeriesError {}

impl From<ArithError> for SeriesError {
    fn from(e: ArithError) -> Self {
        SeriesError::Arith(e)
    }
}

/// Finite sum `delta -> sum_j coef_j * base_j^delta` in canonical order.
#[derive(Clone, PartialEq)]
pub struct DeltaSeries {
    table: VarTable,
    /// Sorted ascending by base monomial; no zero coefficients, no
    /// duplicate bases.
    terms: Vec<(Monomial, RationalFn)>,
}

impl DeltaSeries {
    pub fn new(table: &VarTable, raw: Vec<(Monomial, RationalFn)>) -> Self {
        let mut map: BTreeMap<Monomial, RationalFn> = BTreeMap::new();
        for (b, c) in raw {
            match map.entry(b) {
                std::collections::btree_map::Entry::Vacant(v) => {
                    v.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(mut o) => {
                    let merged = o.get().add(&c);
                    *o.get_mut() = merged;
                }
            }
        }
        DeltaSeries {
            table: table.clone(),
            terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn table(&self) -> &VarTable {
        &self.table
    }

    /// Terms (base, coefficient) sorted ascending by base.
    pub fn terms(&self) -> &[(Monomial, RationalFn)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, base: &Monomial) -> Option<&RationalFn> {
        self.terms
            .binary_search_by(|(b, _)| b.cmp(base))
            .ok()
            .map(|i| &self.terms[i].1)
    }

    /// Partial-fraction decomposition of `f = num / prod_j (1 - base_j*var)`
    /// with pairwise-distinct bases and `deg_var(num) <` number of factors.
    ///
    /// The coefficient at base `b_i` is `num(var -> 1/b_i)` divided by
    /// `prod_{j != i} (1 - b_j/b_i)`, which is the residue formula for
    /// simple poles; everything stays exact because substituting an inverted
    /// monomial keeps Laurent polynomials.
    pub fn partial_fractions(
        f: &RationalFn,
        var: usize,
        factors: &[Monomial],
    ) -> Result<DeltaSeries, SeriesError> {
        let table = f.table().clone();
        for (i, m) in factors.iter().enumerate() {
            if factors[..i].contains(m) {
                return Err(SeriesError::RepeatedBase);
            }
        }
        // Expanded product of the declared factors, compared against the
        // stored denominator up to the constructor's sign normalization.
        let mut prod = MultiPoly::one(&table);
        for m in factors {
            let lin = MultiPoly::one(&table).sub(&MultiPoly::from_monomial(
                &table,
                m.mul(&Monomial::var(var)),
                Rat::one(),
            ));
            prod = prod.mul(&lin);
        }
        let num = if f.den() == &prod {
            f.num().clone()
        } else if f.den() == &prod.neg() {
            f.num().neg()
        } else {
            return Err(SeriesError::NotLinearFactorForm);
        };
        if num.degree_in(var).unwrap_or(0) >= factors.len() as i32 {
            return Err(SeriesError::NotLinearFactorForm);
        }
        let mut terms = Vec::with_capacity(factors.len());
        for (i, b) in factors.iter().enumerate() {
            let inv_binding = MultiPoly::from_monomial(&table, b.inv(), Rat::one());
            let num_at = num.substitute(&[(var, inv_binding)])?;
            let mut den_i = MultiPoly::one(&table);
            for (j, bj) in factors.iter().enumerate() {
                if j == i {
                    continue;
                }
                let ratio = MultiPoly::from_monomial(&table, bj.mul(&b.inv()), Rat::one());
                den_i = den_i.mul(&MultiPoly::one(&table).sub(&ratio));
            }
            let coef = RationalFn::new(num_at, den_i)?;
            if !coef.is_zero() {
                terms.push((*b, coef));
            }
        }
        Ok(DeltaSeries::new(&table, terms))
    }

    /// Reassemble the generating function `sum_j coef_j / (1 - base_j*var)`
    /// by pairwise fraction addition.  Fine for a handful of terms; large
    /// sums with structured denominators should use [`resum_with_hints`].
    ///
    /// [`resum_with_hints`]: DeltaSeries::resum_with_hints
    pub fn resum(&self, var: usize) -> RationalFn {
        let mut acc = RationalFn::zero(&self.table);
        for (b, c) in &self.terms {
            let pole = MultiPoly::one(&self.table).sub(&MultiPoly::from_monomial(
                &self.table,
                b.mul(&Monomial::var(var)),
                Rat::one(),
            ));
            let term = c
                .mul(&RationalFn::new(MultiPoly::one(&self.table), pole).expect("pole nonzero"));
            acc = acc.add(&term);
        }
        acc
    }

    /// Resummation over the structured common denominator.
    ///
    /// Every coefficient denominator must factor (by repeated exact
    /// division) into the supplied hint factors; the common denominator is
    /// then the per-hint maximum multiplicity, and the assembled numerator
    /// is divided back down by whatever cancels.  Falls back to pairwise
    /// addition when a denominator refuses to factor.
    pub fn resum_with_hints(&self, var: usize, hints: &[MultiPoly]) -> RationalFn {
        let table = &self.table;
        let n = self.terms.len();
        if n <= 2 || hints.is_empty() {
            return self.resum(var);
        }
        // Factor every coefficient denominator over the hints.
        let mut mults: Vec<Vec<u32>> = Vec::with_capacity(n);
        for (_, c) in &self.terms {
            let mut rem = c.den().clone();
            let mut m = vec![0u32; hints.len()];
            for (h, hint) in hints.iter().enumerate() {
                if hint.as_monomial().is_some() {
                    continue;
                }
                while let Ok(q) = rem.exact_div(hint) {
                    rem = q;
                    m[h] += 1;
                }
            }
            if rem.as_monomial().is_none() {
                // Not covered by the hints: give up on the structured path.
                return self.resum(var);
            }
            // A leftover unit is impossible after normalization unless it
            // is exactly 1, but fold it in defensively.
            if !rem.is_one() {
                return self.resum(var);
            }
            mults.push(m);
        }
        let common: Vec<u32> = (0..hints.len())
            .map(|h| mults.iter().map(|m| m[h]).max().unwrap_or(0))
            .collect();
        // Expanded product of all poles, and per-term complements.
        let poles: Vec<MultiPoly> = self
            .terms
            .iter()
            .map(|(b, _)| {
                MultiPoly::one(table).sub(&MultiPoly::from_monomial(
                    table,
                    b.mul(&Monomial::var(var)),
                    Rat::one(),
                ))
            })
            .collect();
        let mut all_poles = MultiPoly::one(table);
        for p in &poles {
            all_poles = all_poles.mul(p);
        }
        let mut num = MultiPoly::zero(table);
        for (i, (_, c)) in self.terms.iter().enumerate() {
            let q_i = all_poles
                .exact_div(&poles[i])
                .expect("pole divides the full product");
            let mut part = c.num().mul(&q_i);
            for (h, hint) in hints.iter().enumerate() {
                for _ in mults[i][h]..common[h] {
                    part = part.mul(hint);
                }
            }
            num = num.add(&part);
        }
        // Cancel what can be cancelled and keep the rest in the denominator.
        let mut den = all_poles;
        for (h, hint) in hints.iter().enumerate() {
            for _ in 0..common[h] {
                match num.exact_div(hint) {
                    Ok(q) => num = q,
                    Err(_) => den = den.mul(hint),
                }
            }
        }
        RationalFn::new(num, den).expect("nonzero denominator")
    }

    /// Termwise product: `(sum c b^d) * (sum c' b'^d) = sum c c' (b b')^d`,
    /// merging colliding product bases.
    pub fn product(&self, other: &DeltaSeries) -> DeltaSeries {
        let mut raw = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (b1, c1) in &self.terms {
            for (b2, c2) in &other.terms {
                raw.push((b1.mul(b2), c1.mul(c2)));
            }
        }
        DeltaSeries::new(&self.table, raw)
    }

    /// Reindex `delta -> m*delta`: every base is raised to the `m`-th power.
    pub fn power_substitute(&self, m: u32) -> DeltaSeries {
        let raw = self
            .terms
            .iter()
            .map(|(b, c)| (b.pow(m as i32), c.clone()))
            .collect();
        DeltaSeries::new(&self.table, raw)
    }

    /// Evaluate at a concrete index by pairwise addition.
    pub fn eval(&self, delta: u32) -> RationalFn {
        let mut acc = RationalFn::zero(&self.table);
        for (b, c) in &self.terms {
            let powed = MultiPoly::from_monomial(&self.table, b.pow(delta as i32), Rat::one());
            acc = acc.add(&c.mul_poly(&powed));
        }
        acc
    }

    /// Evaluate at a concrete index, reducing against candidate factors
    /// after every addition so intermediate denominators stay small.
    pub fn eval_reduced(&self, delta: u32, candidates: &[MultiPoly]) -> RationalFn {
        let mut acc = RationalFn::zero(&self.table);
        for (b, c) in &self.terms {
            let powed = MultiPoly::from_monomial(&self.table, b.pow(delta as i32), Rat::one());
            acc = acc.add(&c.mul_poly(&powed));
            acc = acc.reduce_known_factors(candidates);
        }
        acc
    }

    pub fn to_json(&self) -> serde_json::Value {
        use serde_json::{Map, Value};
        let mut terms = Vec::with_capacity(self.terms.len());
        for (b, c) in &self.terms {
            let mut mono = Map::new();
            for i in 0..self.table.len() {
                let e = b.exp(i);
                if e != 0 {
                    mono.insert(
                        self.table.name(i).to_string(),
                        Value::Number(serde_json::Number::from(e as i64)),
                    );
                }
            }
            let mut term = Map::new();
            term.insert("coef".to_string(), c.to_json());
            term.insert("base".to_string(), Value::Object(mono));
            terms.push(Value::Object(term));
        }
        let mut obj = Map::new();
        obj.insert("terms".to_string(), Value::Array(terms));
        Value::Object(obj)
    }
}

impl fmt::Debug for DeltaSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DeltaSeries[")?;
        for (b, c) in &self.terms {
            writeln!(f, "  {} : {}", b.render(&self.table), c.render())?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_poly, parse_rf};

    fn t() -> VarTable {
        VarTable::master()
    }

    fn two_pole() -> (RationalFn, Vec<Monomial>) {
        let f = parse_rf(&t(), "1/((1 - x1*X)*(1 - x2*X))").unwrap();
        (f, vec![t().mono("x1"), t().mono("x2")])
    }

    #[test]
    fn partial_fractions_two_poles() {
        let (f, factors) = two_pole();
        let d = DeltaSeries::partial_fractions(&f, t().var("X"), &factors).unwrap();
        assert_eq!(d.len(), 2);
        // Residue at x1: x1/(x1 - x2).
        let expect = parse_rf(&t(), "x1/(x1 - x2)").unwrap();
        assert!(d.coefficient(&t().mono("x1")).unwrap().eq_rf(&expect));
    }

    #[test]
    fn resum_roundtrip() {
        let (f, factors) = two_pole();
        let d = DeltaSeries::partial_fractions(&f, t().var("X"), &factors).unwrap();
        assert!(d.resum(t().var("X")).eq_rf(&f));
    }

    #[test]
    fn eval_matches_series_expansion() {
        // The delta-evaluations must agree with the Taylor coefficients of
        // the generating function.
        let (f, factors) = two_pole();
        let x = t().var("X");
        let d = DeltaSeries::partial_fractions(&f, x, &factors).unwrap();
        let coeffs = f.series_expand(x, 8).unwrap();
        for (k, c) in coeffs.iter().enumerate() {
            assert!(
                d.eval(k as u32).eq_rf(&RationalFn::from_poly(c.clone())),
                "mismatch at delta = {}",
                k
            );
        }
    }

    #[test]
    fn repeated_base_rejected() {
        let (f, _) = two_pole();
        let err = DeltaSeries::partial_fractions(
            &f,
            t().var("X"),
            &[t().mono("x1"), t().mono("x1")],
        );
        assert_eq!(err.unwrap_err(), SeriesError::RepeatedBase);
    }

    #[test]
    fn wrong_denominator_rejected() {
        let f = parse_rf(&t(), "1/((1 - x1*X)*(1 - p*x2*X))").unwrap();
        let err =
            DeltaSeries::partial_fractions(&f, t().var("X"), &[t().mono("x1"), t().mono("x2")]);
        assert_eq!(err.unwrap_err(), SeriesError::NotLinearFactorForm);
    }

    #[test]
    fn numerator_degree_rejected() {
        let f = parse_rf(&t(), "X^2/((1 - x1*X)*(1 - x2*X))").unwrap();
        let err =
            DeltaSeries::partial_fractions(&f, t().var("X"), &[t().mono("x1"), t().mono("x2")]);
        assert_eq!(err.unwrap_err(), SeriesError::NotLinearFactorForm);
    }

    #[test]
    fn product_merges_collisions() {
        // (1/(1-x1 X) + 1/(1-x2 X)) squared: the cross terms share base
        // x1*x2 and must merge with coefficient 2.
        let one = RationalFn::one(&t());
        let d = DeltaSeries::new(
            &t(),
            vec![(t().mono("x1"), one.clone()), (t().mono("x2"), one)],
        );
        let sq = d.product(&d);
        assert_eq!(sq.len(), 3);
        let cross = sq
            .coefficient(&t().mono("x1").mul(&t().mono("x2")))
            .unwrap();
        assert!(cross.eq_rf(&parse_rf(&t(), "2").unwrap()));
    }

    #[test]
    fn power_substitute_reindexes() {
        let (f, factors) = two_pole();
        let x = t().var("X");
        let d = DeltaSeries::partial_fractions(&f, x, &factors).unwrap();
        let d3 = d.power_substitute(3);
        for delta in 0..4 {
            assert!(
                d3.eval(delta).eq_rf(&d.eval(3 * delta)),
                "reindex mismatch at delta = {}",
                delta
            );
        }
    }

    #[test]
    fn resum_with_hints_matches_pairwise() {
        let (f, factors) = two_pole();
        let x = t().var("X");
        let d = DeltaSeries::partial_fractions(&f, x, &factors).unwrap();
        // Force the structured path by padding with a third term whose
        // denominator uses the hint factor.
        let extra = parse_rf(&t(), "1/(1 - x1)").unwrap();
        let d3 = DeltaSeries::new(
            &t(),
            d.terms()
                .iter()
                .cloned()
                .chain(std::iter::once((t().mono("p"), extra))).collect(),
        );
        let hints = vec![
            parse_poly(&t(), "x1 - x2").unwrap(),
            parse_poly(&t(), "1 - x1").unwrap(),
        ];
        let structured = d3.resum_with_hints(x, &hints);
        let pairwise = d3.resum(x);
        assert!(structured.eq_rf(&pairwise));
    }
}
