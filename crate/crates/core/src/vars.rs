//! Variable tables and Laurent monomials.
//!
//! All polynomial values in this crate are built over a fixed, ordered list of
//! variable names (a [`VarTable`]).  A [`Monomial`] stores one signed exponent
//! per table slot, so negative powers (Laurent monomials) are first-class.
//! Monomials compare in graded-lexicographic order: total degree first, then
//! position by position with the earlier variable dominating.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

/// Hard cap on the number of variables a table may declare.
///
/// Exponent vectors are fixed-size arrays so monomials stay `Copy` and hash
/// quickly; every table used by the library fits comfortably.
pub const MAX_VARS: usize = 16;

/// An ordered list of variable names shared by all values of a computation.
///
/// Cloning is cheap (the name list is reference-counted).  Two tables are
/// interchangeable exactly when their name lists are identical.
#[derive(Clone)]
pub struct VarTable {
    names: Arc<Vec<String>>,
}

impl VarTable {
    /// Build a table from an ordered name list.
    ///
    /// Panics if the list is empty, longer than [`MAX_VARS`], or contains a
    /// duplicate name; tables are fixed at construction time and this is a
    /// programming error rather than a data error.
    pub fn new(names: &[&str]) -> Self {
        assert!(!names.is_empty(), "variable table must not be empty");
        assert!(
            names.len() <= MAX_VARS,
            "variable table limited to {} variables",
            MAX_VARS
        );
        for (i, n) in names.iter().enumerate() {
            assert!(
                !names[..i].contains(n),
                "duplicate variable name `{}` in table",
                n
            );
        }
        VarTable {
            names: Arc::new(names.iter().map(|s| s.to_string()).collect()),
        }
    }

    /// The master table used by the spherical-map and convolution layers:
    /// a prime symbol, two genus-2 Satake groups, the series variable, and a
    /// genus-4 group for lifted parameters.
    pub fn master() -> Self {
        VarTable::new(&[
            "p", "x0", "x1", "x2", "y0", "y1", "y2", "X", "u0", "u1", "u2", "u3", "u4",
        ])
    }

    /// Single-variable table for polynomial coefficients in the prime symbol.
    pub fn prime_only() -> Self {
        VarTable::new(&["p"])
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, idx: usize) -> &str {
        &self.names[idx]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Index lookup that panics with a clear message; for internal wiring
    /// where the variable is known to exist.
    pub fn var(&self, name: &str) -> usize {
        self.index_of(name)
            .unwrap_or_else(|| panic!("variable `{}` not in table", name))
    }

    /// Monomial consisting of a single variable to the first power.
    pub fn mono(&self, name: &str) -> Monomial {
        Monomial::var(self.var(name))
    }

    /// Parse a `*`-separated product of variable names into a monomial;
    /// `"1"` gives the empty monomial.
    pub fn mono_product(&self, expr: &str) -> Monomial {
        let mut m = Monomial::one();
        for part in expr.split('*') {
            let part = part.trim();
            if part != "1" {
                m = m.mul(&self.mono(part));
            }
        }
        m
    }
}

impl PartialEq for VarTable {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.names, &other.names) || self.names == other.names
    }
}

impl Eq for VarTable {}

impl fmt::Debug for VarTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VarTable{:?}", self.names)
    }
}

/// Exponent vector over a [`VarTable`]; supports negative (Laurent) powers.
///
/// The monomial does not carry its table: operations that combine monomials
/// from different polynomials go through the owning polynomial, which checks
/// table agreement first.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial(pub [i16; MAX_VARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; MAX_VARS])
    }

    pub fn var(idx: usize) -> Self {
        let mut e = [0i16; MAX_VARS];
        e[idx] = 1;
        Monomial(e)
    }

    pub fn var_pow(idx: usize, exp: i16) -> Self {
        let mut e = [0i16; MAX_VARS];
        e[idx] = exp;
        Monomial(e)
    }

    pub fn exp(&self, idx: usize) -> i16 {
        self.0[idx]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Sum of all exponents (may be negative for Laurent monomials).
    pub fn total_degree(&self) -> i32 {
        self.0.iter().map(|&e| e as i32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = [0i16; MAX_VARS];
        for i in 0..MAX_VARS {
            e[i] = self.0[i]
                .checked_add(other.0[i])
                .expect("monomial exponent overflow");
        }
        Monomial(e)
    }

    pub fn inv(&self) -> Monomial {
        let mut e = [0i16; MAX_VARS];
        for i in 0..MAX_VARS {
            e[i] = -self.0[i];
        }
        Monomial(e)
    }

    pub fn pow(&self, k: i32) -> Monomial {
        let mut e = [0i16; MAX_VARS];
        for i in 0..MAX_VARS {
            let v = (self.0[i] as i32) * k;
            assert!(
                v >= i16::MIN as i32 && v <= i16::MAX as i32,
                "monomial exponent overflow"
            );
            e[i] = v as i16;
        }
        Monomial(e)
    }

    /// Whether every exponent is non-negative (a true polynomial monomial).
    pub fn is_polynomial(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }

    /// Componentwise divisibility for polynomial monomials.
    pub fn divides(&self, other: &Monomial) -> bool {
        (0..MAX_VARS).all(|i| self.0[i] <= other.0[i])
    }

    /// Quotient `other / self` as exponent subtraction.
    pub fn div_into(&self, other: &Monomial) -> Monomial {
        let mut e = [0i16; MAX_VARS];
        for i in 0..MAX_VARS {
            e[i] = other.0[i] - self.0[i];
        }
        Monomial(e)
    }

    /// Render against a table, e.g. `x0^2*x1` or `1` for the empty monomial.
    pub fn render(&self, table: &VarTable) -> String {
        let mut parts = Vec::new();
        for i in 0..table.len() {
            match self.0[i] {
                0 => {}
                1 => parts.push(table.name(i).to_string()),
                e => parts.push(format!("{}^{}", table.name(i), e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for Monomial {
    /// Graded-lexicographic: higher total degree first; on ties the first
    /// differing position decides, larger exponent winning.  `cmp` returns
    /// `Greater` for the later monomial under "ascending" iteration, so the
    /// maximum element is the graded-lex leading monomial.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for i in 0..MAX_VARS {
            match self.0[i].cmp(&other.0[i]) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Print only the nonzero slots.
        let nz: Vec<(usize, i16)> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(i, &e)| (i, e))
            .collect();
        write!(f, "Mono{:?}", nz)
    }
}
