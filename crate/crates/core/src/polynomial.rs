//! Multilinear pseudo-Boolean polynomials with exact integer coefficients.
//!
//! Every monomial is a strictly increasing list of variable indices, so the
//! idempotence rule `x * x = x` is applied at construction time. Variable
//! indices are dense and follow first-appearance order.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::error::HuboError;

/// Default enumeration bound for [`Polynomial::brute_force_minima`].
pub const DEFAULT_ENUMERATION_LIMIT: usize = 24;

/// Dense index of a binary variable inside one polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(pub u32);

impl Var {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A single weighted product of distinct variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomial {
    pub vars: Vec<Var>,
    pub coefficient: i64,
}

impl Monomial {
    pub fn order(&self) -> usize {
        self.vars.len()
    }
}

/// Assignment of 0/1 values to every variable of a polynomial, indexed by [`Var`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Assignment(pub Vec<bool>);

impl Assignment {
    pub fn zeros(len: usize) -> Self {
        Assignment(alloc::vec![false; len])
    }

    /// Bit `i` of `mask` becomes the value of variable `i`.
    pub fn from_mask(mask: u64, len: usize) -> Self {
        Assignment((0..len).map(|i| mask >> i & 1 == 1).collect())
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        Assignment(bits.iter().map(|&b| b != 0).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, var: Var) -> bool {
        self.0[var.index()]
    }

    /// Inverse of [`Assignment::from_mask`]. Panics beyond 64 variables.
    pub fn to_mask(&self) -> u64 {
        assert!(self.0.len() <= 64, "assignment wider than 64 bits");
        self.0
            .iter()
            .enumerate()
            .fold(0u64, |m, (i, &b)| if b { m | 1 << i } else { m })
    }

    pub fn bits(&self) -> Vec<u8> {
        self.0.iter().map(|&b| b as u8).collect()
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Minimum value of a polynomial and its complete argmin set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Minima {
    pub value: i64,
    pub argmin: BTreeSet<Assignment>,
}

/// A canonical multilinear polynomial `constant + sum(c_S * prod_{j in S} x_j)`.
///
/// Invariants: at most one term per variable set, no zero coefficients, every
/// term has order at least one, variable sets are strictly increasing.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Polynomial {
    names: Vec<String>,
    terms: BTreeMap<Vec<Var>, i64>,
    constant: i64,
}

impl Polynomial {
    /// Empty polynomial over the given variable names.
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self, HuboError> {
        let mut builder = PolynomialBuilder::new();
        for name in names {
            builder.var(name.as_ref())?;
        }
        Ok(builder.build())
    }

    pub fn num_vars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, var: Var) -> &str {
        &self.names[var.index()]
    }

    pub fn var_by_name(&self, name: &str) -> Option<Var> {
        self.names.iter().position(|n| n == name).map(|i| Var(i as u32))
    }

    pub fn constant(&self) -> i64 {
        self.constant
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest monomial order, 0 for a constant polynomial.
    pub fn max_order(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn coefficient(&self, vars: &[Var]) -> i64 {
        let key = normalize(vars);
        self.terms.get(&key).copied().unwrap_or(0)
    }

    /// Coefficient looked up by variable names; unknown names yield 0.
    pub fn coefficient_of(&self, names: &[&str]) -> i64 {
        let vars: Option<Vec<Var>> = names.iter().map(|n| self.var_by_name(n)).collect();
        vars.map_or(0, |v| self.coefficient(&v))
    }

    /// Terms in canonical order: by order, then lexicographically by variable index.
    pub fn terms(&self) -> impl Iterator<Item = Monomial> + '_ {
        let mut keys: Vec<&Vec<Var>> = self.terms.keys().collect();
        keys.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        keys.into_iter().map(move |k| Monomial {
            vars: k.clone(),
            coefficient: self.terms[k],
        })
    }

    pub(crate) fn term_map(&self) -> &BTreeMap<Vec<Var>, i64> {
        &self.terms
    }

    pub fn with_constant(mut self, constant: i64) -> Self {
        self.constant = constant;
        self
    }

    /// Rebuilds through the builder. Idempotent on canonical input.
    pub fn canonicalize(&self) -> Self {
        let mut builder = PolynomialBuilder::new();
        for name in &self.names {
            builder.var(name).expect("names are unique");
        }
        for (vars, &c) in &self.terms {
            let named: Vec<&str> = vars.iter().map(|v| self.name(*v)).collect();
            builder.add_term(c, &named).expect("names are unique");
        }
        builder.add_constant(self.constant);
        builder.build()
    }

    /// Value of the polynomial, constant included.
    pub fn evaluate(&self, x: &Assignment) -> Result<i64, HuboError> {
        if x.len() != self.num_vars() {
            return Err(HuboError::LengthMismatch {
                expected: self.num_vars(),
                found: x.len(),
            });
        }
        Ok(self.constant
            + self
                .terms
                .iter()
                .filter(|(vars, _)| vars.iter().all(|&v| x.get(v)))
                .map(|(_, &c)| c)
                .sum::<i64>())
    }

    /// Exhaustive minimization with the default variable bound.
    pub fn brute_force_minima(&self) -> Result<Minima, HuboError> {
        self.brute_force_minima_bounded(DEFAULT_ENUMERATION_LIMIT)
    }

    /// Scans all `2^N` assignments and returns the minimum with every minimizer.
    pub fn brute_force_minima_bounded(&self, limit: usize) -> Result<Minima, HuboError> {
        let n = self.num_vars();
        if n > limit || n > 63 {
            return Err(HuboError::EnumerationBound {
                vars: n,
                limit: limit.min(63),
            });
        }
        let masks: Vec<(u64, i64)> = self
            .terms
            .iter()
            .map(|(vars, &c)| (vars.iter().fold(0u64, |m, v| m | 1 << v.0), c))
            .collect();
        let mut best = i64::MAX;
        let mut argmin = Vec::new();
        for x in 0..(1u64 << n) {
            let value: i64 = masks.iter().filter(|(m, _)| x & m == *m).map(|(_, c)| c).sum();
            if value < best {
                best = value;
                argmin.clear();
            }
            if value == best {
                argmin.push(x);
            }
        }
        Ok(Minima {
            value: best + self.constant,
            argmin: argmin.into_iter().map(|m| Assignment::from_mask(m, n)).collect(),
        })
    }

    /// Adds `other` term-wise; variables are matched by name and new names are appended.
    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut builder = PolynomialBuilder::from_polynomial(self);
        for name in &other.names {
            builder.var(name).expect("names are unique");
        }
        for m in other.terms() {
            let named: Vec<&str> = m.vars.iter().map(|v| other.name(*v)).collect();
            builder.add_term(m.coefficient, &named).expect("names are unique");
        }
        builder.add_constant(other.constant);
        builder.build()
    }
}

pub(crate) fn normalize(vars: &[Var]) -> Vec<Var> {
    let mut key = vars.to_vec();
    key.sort_unstable();
    key.dedup();
    key
}

/// Incremental construction of a [`Polynomial`] by variable name.
#[derive(Clone, Debug, Default)]
pub struct PolynomialBuilder {
    names: Vec<String>,
    index: BTreeMap<String, Var>,
    terms: BTreeMap<Vec<Var>, i64>,
    constant: i64,
}

impl PolynomialBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_polynomial(p: &Polynomial) -> Self {
        let mut builder = Self::new();
        for name in &p.names {
            builder.var(name).expect("names are unique");
        }
        builder.terms = p.terms.clone();
        builder.constant = p.constant;
        builder
    }

    /// Registers `name` (if new) and returns its index.
    pub fn var(&mut self, name: &str) -> Result<Var, HuboError> {
        if let Some(&v) = self.index.get(name) {
            return Ok(v);
        }
        if name.is_empty() || !is_identifier(name) {
            return Err(HuboError::InvalidName(name.to_string()));
        }
        let v = Var(self.names.len() as u32);
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), v);
        Ok(v)
    }

    /// Adds `coefficient * prod(names)`; an empty name list adds to the constant.
    pub fn add_term(&mut self, coefficient: i64, names: &[&str]) -> Result<&mut Self, HuboError> {
        let mut vars = Vec::with_capacity(names.len());
        for name in names {
            vars.push(self.var(name)?);
        }
        self.add_vars(coefficient, &vars);
        Ok(self)
    }

    pub(crate) fn add_vars(&mut self, coefficient: i64, vars: &[Var]) {
        if vars.is_empty() {
            self.constant += coefficient;
            return;
        }
        let key = normalize(vars);
        let entry = self.terms.entry(key).or_insert(0);
        *entry += coefficient;
    }

    pub fn add_constant(&mut self, c: i64) -> &mut Self {
        self.constant += c;
        self
    }

    pub fn build(mut self) -> Polynomial {
        self.terms.retain(|_, c| *c != 0);
        Polynomial {
            names: self.names,
            terms: self.terms,
            constant: self.constant,
        }
    }
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_alphanumeric() || matches!(c, '_' | '.' | '[' | ']' | '\''))
}
