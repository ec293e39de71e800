use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{CoinvError, Scalar};

/// Exponent vector of a monomial.
pub type Monomial = Vec<u32>;

/// Sparse polynomial in `nvars` commuting variables.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<R> {
    nvars: usize,
    terms: BTreeMap<Monomial, R>,
}

impl<R: Scalar> Polynomial<R> {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: R) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, R::one())
    }

    pub fn monomial(nvars: usize, exps: Monomial, c: R) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut p = Self::zero(nvars);
        p.add_term(exps, c);
        p
    }

    /// The variable with index `i` (0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, e, R::one())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, R> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exps: Monomial, c: R) {
        if c.is_zero() {
            return;
        }
        let v = self.terms.remove(&exps).unwrap_or_else(R::zero) + c;
        if !v.is_zero() {
            self.terms.insert(exps, v);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Polynomial { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &R) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.clone() * k.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(self.nvars);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let e = a.iter().zip(b).map(|(i, j)| i + j).collect();
                out.add_term(e, x.clone() * y.clone());
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.nvars), |acc, _| acc.mul(self))
    }

    /// Total degree of the highest term; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Substitutes variable `i` by variable `perm[i]`.
    pub fn permute_variables(&self, perm: &[usize]) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0; self.nvars];
            for (i, &k) in m.iter().enumerate() {
                e[perm[i]] += k;
            }
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Polynomial<BigInt> {
    /// Elementary symmetric polynomial `σ_k` in `n` variables.
    pub fn elementary_symmetric(n: usize, k: usize) -> Self {
        let mut out = Self::zero(n);
        let mut subset: Vec<usize> = (0..k).collect();
        if k > n {
            return out;
        }
        loop {
            let mut e = vec![0; n];
            for &i in &subset {
                e[i] = 1;
            }
            out.add_term(e, BigInt::one());
            let Some(i) = (0..k).rev().find(|&i| subset[i] < n - k + i) else { break };
            subset[i] += 1;
            for j in i + 1..k {
                subset[j] = subset[j - 1] + 1;
            }
        }
        out
    }
}

impl Polynomial<BigRational> {
    /// Coefficients mapped into another ring; fails on a coefficient outside it.
    pub fn to_ring<R: Scalar>(&self) -> Result<Polynomial<R>, CoinvError> {
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let v = R::from_rational(c).ok_or_else(|| CoinvError::CoefficientNotInRing {
                coefficient: c.to_string(),
                ring: R::RING.to_string(),
            })?;
            out.add_term(m.clone(), v);
        }
        Ok(out)
    }
}

/// `x1, x2, …`, switching to `y1, y2, …` from index `split` on.
pub(crate) fn variable_name(split: Option<usize>, i: usize) -> String {
    match split {
        Some(n) if i >= n => format!("y{}", i - n + 1),
        _ => format!("x{}", i + 1),
    }
}

pub(crate) fn format_monomial(m: &[u32], split: Option<usize>) -> String {
    let parts: Vec<String> = m
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            let v = variable_name(split, i);
            if e == 1 {
                v
            } else {
                format!("{v}^{e}")
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

pub(crate) fn format_terms<'a, R: Scalar + 'a>(
    terms: impl Iterator<Item = (String, &'a R)>,
) -> String {
    let mut out = String::new();
    for (mono, c) in terms {
        let cs = c.to_string();
        let (neg, abs) = match cs.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, cs),
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        match (abs == "1", mono == "1") {
            (true, _) => out.push_str(&mono),
            (false, true) => out.push_str(&abs),
            (false, false) => out.push_str(&format!("{abs}*{mono}")),
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

impl<R: Scalar> fmt::Display for Polynomial<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms.iter().rev().map(|(m, c)| (format_monomial(m, None), c));
        write!(f, "{}", format_terms(terms))
    }
}

/// Parses `x1..xn`, `y1..yn`, integer or rational literals, `+ - * ^`, parentheses and `⊗` (read as a product).
///
/// The result has `2n` variables: `x1..xn` at indices `0..n`, then `y1..yn`.
pub fn parse_polynomial(text: &str, n: usize) -> Result<Polynomial<BigRational>, CoinvError> {
    let mut p = Parser { chars: text.chars().collect(), pos: 0, n };
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(poly)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    n: usize,
}

impl Parser {
    fn error(&self, msg: &str) -> CoinvError {
        CoinvError::Parse { position: self.pos, message: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Polynomial<BigRational>, CoinvError> {
        let nv = 2 * self.n;
        let mut acc = Polynomial::zero(nv);
        let mut sign = match self.peek() {
            Some('-') => {
                self.pos += 1;
                -1
            }
            Some('+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            acc = if sign < 0 { acc.sub(&t) } else { acc.add(&t) };
            match self.peek() {
                Some('+') => sign = 1,
                Some('-') => sign = -1,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Polynomial<BigRational>, CoinvError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') | Some('⊗') | Some('·') => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Some(c) if c == '(' || c == 'x' || c == 'y' || c.is_ascii_digit() => {
                    acc = acc.mul(&self.factor()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial<BigRational>, CoinvError> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let k = self.integer()?;
            let k = u32::try_from(&k).map_err(|_| self.error("exponent out of range"))?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt, CoinvError> {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("digits parse"))
    }

    fn atom(&mut self) -> Result<Polynomial<BigRational>, CoinvError> {
        let nv = 2 * self.n;
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c @ ('x' | 'y')) => {
                self.pos += 1;
                let k = self.integer()?;
                let k = usize::try_from(&k).unwrap_or(0);
                if k == 0 || k > self.n {
                    return Err(self.error(&format!("variable index must be in 1..={}", self.n)));
                }
                let idx = if c == 'x' { k - 1 } else { self.n + k - 1 };
                Ok(Polynomial::var(nv, idx))
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let mut value = BigRational::from_integer(num);
                if self.peek() == Some('/') {
                    self.pos += 1;
                    self.skip_ws();
                    let den = self.integer()?;
                    if den.is_zero() {
                        return Err(self.error("division by zero"));
                    }
                    value /= BigRational::from_integer(den);
                }
                Ok(Polynomial::constant(nv, value))
            }
            _ => Err(self.error("expected a variable, number or '('")),
        }
    }
}
