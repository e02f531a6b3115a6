//! Real numbers of the form `q0 + q1*s1 + ... + qk*sk`.
//!
//! The symbols `s1..sk` are declared in a [`SymbolTable`] and are assumed to be
//! rationally independent irrationals together with `1`. Under that contract every
//! value is a vector over `Q` in the basis `{1, s1, ..., sk}`, so ranks, relations
//! and membership questions become exact linear algebra.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Declared irrational symbols with their numeric approximations.
///
/// Declaration order fixes the coordinate order of every value built on the table.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SymbolTable {
    entries: Vec<(String, f64)>,
}

fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl SymbolTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a table from `(name, approximation)` pairs in declaration order.
    pub fn from_entries<I, S>(entries: I) -> Result<Arc<Self>>
    where
        I: IntoIterator<Item = (S, f64)>,
        S: Into<String>,
    {
        let mut table = Self::new();
        for (name, approx) in entries {
            table.declare(name, approx)?;
        }
        Ok(Arc::new(table))
    }

    pub fn declare(&mut self, name: impl Into<String>, approx: f64) -> Result<usize> {
        let name = name.into();
        if name == "1" || !is_identifier(&name) {
            return Err(Error::InvalidSymbolName(name));
        }
        if !approx.is_finite() || approx == 0.0 {
            return Err(Error::InvalidApproximation(name));
        }
        if self.index_of(&name).is_some() {
            return Err(Error::DuplicateSymbol(name));
        }
        self.entries.push((name, approx));
        Ok(self.entries.len() - 1)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.entries.iter().position(|(n, _)| n == name)
    }

    pub fn name(&self, index: usize) -> &str {
        &self.entries[index].0
    }

    pub fn approx(&self, index: usize) -> f64 {
        self.entries[index].1
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.entries.iter().map(|(n, a)| (n.as_str(), *a))
    }
}

/// Returns true when both handles describe the same coordinate system.
pub(crate) fn same_table(a: &Arc<SymbolTable>, b: &Arc<SymbolTable>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// An exact element of `Q + Q*s1 + ... + Q*sk`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactReal {
    table: Arc<SymbolTable>,
    rat: BigRational,
    // symbol index -> nonzero coefficient
    coeffs: BTreeMap<usize, BigRational>,
}

impl ExactReal {
    pub fn zero(table: &Arc<SymbolTable>) -> Self {
        Self::from_rational(table, BigRational::zero())
    }

    pub fn from_rational(table: &Arc<SymbolTable>, rat: BigRational) -> Self {
        ExactReal {
            table: Arc::clone(table),
            rat,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_integer(table: &Arc<SymbolTable>, value: i64) -> Self {
        Self::from_rational(table, BigRational::from_integer(value.into()))
    }

    /// The symbol `name` with coefficient one.
    pub fn symbol(table: &Arc<SymbolTable>, name: &str) -> Result<Self> {
        let index = table
            .index_of(name)
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))?;
        let mut coeffs = BTreeMap::new();
        coeffs.insert(index, BigRational::one());
        Ok(ExactReal {
            table: Arc::clone(table),
            rat: BigRational::zero(),
            coeffs,
        })
    }

    /// Builds a value from its coordinates `(rat, c_1, ..., c_k)` in table order.
    pub fn from_coordinates(table: &Arc<SymbolTable>, coords: &[BigRational]) -> Result<Self> {
        if coords.len() != table.len() + 1 {
            return Err(Error::DimensionMismatch(format!(
                "expected {} coordinates, got {}",
                table.len() + 1,
                coords.len()
            )));
        }
        let coeffs = coords[1..]
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.clone()))
            .collect();
        Ok(ExactReal {
            table: Arc::clone(table),
            rat: coords[0].clone(),
            coeffs,
        })
    }

    /// Parses `term (('+'|'-') term)*` where a term is `p/q`, `p/q*sym`, or `sym`.
    pub fn parse(text: &str, table: &Arc<SymbolTable>) -> Result<Self> {
        Parser::new(text, table).parse()
    }

    pub fn table(&self) -> &Arc<SymbolTable> {
        &self.table
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rat
    }

    /// Nonzero symbol coefficients as `(symbol index, coefficient)` in table order.
    pub fn symbol_coefficients(&self) -> impl Iterator<Item = (usize, &BigRational)> {
        self.coeffs.iter().map(|(i, c)| (*i, c))
    }

    pub fn coefficient(&self, name: &str) -> BigRational {
        self.table
            .index_of(name)
            .and_then(|i| self.coeffs.get(&i).cloned())
            .unwrap_or_else(BigRational::zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty() && self.rat.is_zero()
    }

    /// Coordinates over `{1, s1, ..., sk}`, zeros included.
    pub fn coordinates(&self) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); self.table.len() + 1];
        out[0] = self.rat.clone();
        for (i, c) in &self.coeffs {
            out[i + 1] = c.clone();
        }
        out
    }

    /// Coordinates over the symbols only.
    pub fn irrational_coordinates(&self) -> Vec<BigRational> {
        let mut coords = self.coordinates();
        coords.remove(0);
        coords
    }

    fn check_table(&self, other: &Self) -> Result<()> {
        if same_table(&self.table, &other.table) {
            Ok(())
        } else {
            Err(Error::MixedSymbolTables)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_table(other)?;
        let mut out = self.clone();
        out.rat += &other.rat;
        for (i, c) in &other.coeffs {
            let entry = out.coeffs.entry(*i).or_insert_with(BigRational::zero);
            *entry += c;
            if entry.is_zero() {
                out.coeffs.remove(i);
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        ExactReal {
            table: Arc::clone(&self.table),
            rat: -&self.rat,
            coeffs: self.coeffs.iter().map(|(i, c)| (*i, -c)).collect(),
        }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero(&self.table);
        }
        ExactReal {
            table: Arc::clone(&self.table),
            rat: &self.rat * q,
            coeffs: self.coeffs.iter().map(|(i, c)| (*i, c * q)).collect(),
        }
    }

    pub fn scale_int(&self, k: &BigInt) -> Self {
        self.scale(&BigRational::from_integer(k.clone()))
    }

    /// `x ≡ y (mod Z)`: identical symbol parts and an integral rational difference.
    pub fn eq_mod_z(&self, other: &Self) -> bool {
        same_table(&self.table, &other.table)
            && self.coeffs == other.coeffs
            && (&self.rat - &other.rat).is_integer()
    }

    /// Reduces the rational part into `[0, 1)`; symbol coefficients are untouched.
    pub fn canonical_mod_z(&self) -> Self {
        let mut out = self.clone();
        out.rat = &self.rat - self.rat.floor();
        out
    }

    pub fn is_canonical(&self) -> bool {
        !self.rat.is_negative() && self.rat < BigRational::one()
    }

    /// Double-precision value under the table's symbol approximations.
    pub fn approx(&self) -> f64 {
        let mut acc = rational_to_f64(&self.rat);
        for (i, c) in &self.coeffs {
            acc += rational_to_f64(c) * self.table.approx(*i);
        }
        acc
    }

    /// Integer combination `Σ k_i x_i` of values sharing a table.
    pub fn integer_combination(coeffs: &[BigInt], values: &[ExactReal]) -> Result<Self> {
        let first = values.first().ok_or(Error::Empty("integer combination"))?;
        if coeffs.len() != values.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for {} values",
                coeffs.len(),
                values.len()
            )));
        }
        let mut acc = Self::zero(&first.table);
        for (k, x) in coeffs.iter().zip(values) {
            if !k.is_zero() {
                acc = acc.add(&x.scale_int(k))?;
            }
        }
        Ok(acc)
    }
}

pub(crate) fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // falls back to a quotient of truncated floats for huge components
        let n = q.numer().to_f64().unwrap_or(f64::NAN);
        let d = q.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

fn write_rational(f: &mut fmt::Formatter<'_>, q: &BigRational) -> fmt::Result {
    if q.denom().is_one() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for ExactReal {
    /// Renders in the grammar accepted by [`ExactReal::parse`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        if !self.rat.is_zero() {
            write_rational(f, &self.rat)?;
            first = false;
        }
        for (i, c) in &self.coeffs {
            let name = self.table.name(*i);
            let magnitude = c.abs();
            match (first, c.is_negative()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            if magnitude.is_one() {
                f.write_str(name)?;
            } else {
                write_rational(f, &magnitude)?;
                write!(f, "*{name}")?;
            }
            first = false;
        }
        Ok(())
    }
}

struct Parser<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
    table: &'a Arc<SymbolTable>,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, table: &'a Arc<SymbolTable>) -> Self {
        Parser {
            text,
            bytes: text.as_bytes(),
            pos: 0,
            table,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn syntax(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            position: self.pos,
            message: message.into(),
        }
    }

    fn parse(mut self) -> Result<ExactReal> {
        let mut acc = ExactReal::zero(self.table);
        let mut sign = BigRational::one();
        if self.peek() == Some(b'-') {
            self.pos += 1;
            sign = -sign;
        }
        loop {
            let term = self.term()?;
            acc = acc.add(&term.scale(&sign))?;
            match self.peek() {
                None => break,
                Some(b'+') => sign = BigRational::one(),
                Some(b'-') => sign = -BigRational::one(),
                Some(_) => return Err(self.syntax("expected `+` or `-`")),
            }
            self.pos += 1;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<ExactReal> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let q = self.rational()?;
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                    self.skip_ws();
                    let sym = self.identifier()?;
                    Ok(sym.scale(&q))
                } else {
                    Ok(ExactReal::from_rational(self.table, q))
                }
            }
            Some(c) if c.is_ascii_alphabetic() => self.identifier(),
            Some(_) => Err(self.syntax("expected a rational or a symbol")),
            None => Err(self.syntax("unexpected end of expression")),
        }
    }

    fn digits(&mut self) -> &'a str {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        &self.text[start..self.pos]
    }

    fn rational(&mut self) -> Result<BigRational> {
        let start = self.pos;
        let numer = self.digits();
        let numer: BigInt = numer
            .parse()
            .map_err(|_| Error::MalformedRational(numer.to_string()))?;
        let after_numer = self.pos;
        if self.peek() != Some(b'/') {
            self.pos = after_numer;
            if self.bytes.get(self.pos).is_some_and(|c| c.is_ascii_alphabetic() || *c == b'.') {
                return Err(Error::MalformedRational(self.lexeme_from(start)));
            }
            return Ok(BigRational::from_integer(numer));
        }
        self.pos += 1;
        self.skip_ws();
        let denom = self.digits();
        if denom.is_empty() || self.bytes.get(self.pos).is_some_and(|c| c.is_ascii_alphabetic() || *c == b'.') {
            return Err(Error::MalformedRational(self.lexeme_from(start)));
        }
        let denom: BigInt = denom
            .parse()
            .map_err(|_| Error::MalformedRational(self.text[start..self.pos].to_string()))?;
        if denom.is_zero() {
            return Err(Error::ZeroDenominator(self.text[start..self.pos].to_string()));
        }
        Ok(BigRational::new(numer, denom))
    }

    fn lexeme_from(&self, start: usize) -> String {
        let end = self.text[start..]
            .find(|c: char| c.is_whitespace() || c == '+' || c == '-' || c == '*')
            .map_or(self.text.len(), |e| start + e);
        self.text[start..end].to_string()
    }

    fn identifier(&mut self) -> Result<ExactReal> {
        let start = self.pos;
        if !self.bytes.get(self.pos).is_some_and(|c| c.is_ascii_alphabetic()) {
            return Err(self.syntax("expected a symbol"));
        }
        while self.pos < self.bytes.len()
            && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
        {
            self.pos += 1;
        }
        ExactReal::symbol(self.table, &self.text[start..self.pos])
    }
}

/// `lcm` of the denominators of `values`, at least one.
pub(crate) fn common_denominator<'a>(values: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}
