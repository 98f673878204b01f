//! Sparse multivariate polynomials with exact coefficients.
//!
//! A polynomial lives in a fixed [`Universe`] of variables; exponent vectors
//! have one slot per variable of the universe.

pub mod schubert;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};


use crate::error::{Error, Result};
use crate::scalar::Ring;

/// Exponent vector, one entry per variable of the universe.
pub type Exponents = Vec<u16>;

/// The variable sets used across the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Universe {
    /// `x1..xn, y1..yn, beta` at indices `0..n`, `n..2n`, `2n`.
    Xyb { n: usize },
    /// Matrix entries `z[i,j]` at index `(i-1)n + (j-1)`.
    Z { n: usize },
    /// `z[i,j]` followed by one extra variable `t` at index `n*n`.
    Zt { n: usize },
    /// A single variable `t`.
    T,
}

impl Universe {
    pub fn nvars(self) -> usize {
        match self {
            Universe::Xyb { n } => 2 * n + 1,
            Universe::Z { n } => n * n,
            Universe::Zt { n } => n * n + 1,
            Universe::T => 1,
        }
    }

    pub fn name(self, v: usize) -> String {
        match self {
            Universe::Xyb { n } => {
                if v < n {
                    format!("x{}", v + 1)
                } else if v < 2 * n {
                    format!("y{}", v - n + 1)
                } else {
                    "beta".into()
                }
            }
            Universe::Z { n } | Universe::Zt { n } => {
                if v < n * n {
                    format!("z[{},{}]", v / n + 1, v % n + 1)
                } else {
                    "t".into()
                }
            }
            Universe::T => "t".into(),
        }
    }

    /// Index of a variable given by name, as printed by [`Universe::name`].
    pub fn index_of(self, name: &str) -> Option<usize> {
        (0..self.nvars()).find(|&v| self.name(v) == name)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<R> {
    universe: Universe,
    terms: BTreeMap<Exponents, R>,
}

impl<R: Ring> Poly<R> {
    pub fn zero(universe: Universe) -> Self {
        Poly {
            universe,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(universe: Universe, c: R) -> Self {
        Self::monomial(universe, vec![0; universe.nvars()], c)
    }

    pub fn one(universe: Universe) -> Self {
        Self::constant(universe, R::one())
    }

    pub fn var(universe: Universe, v: usize) -> Self {
        let mut e = vec![0; universe.nvars()];
        e[v] = 1;
        Self::monomial(universe, e, R::one())
    }

    pub fn monomial(universe: Universe, exps: Exponents, c: R) -> Self {
        assert_eq!(exps.len(), universe.nvars(), "exponent length");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Poly { universe, terms }
    }

    pub fn from_terms(universe: Universe, terms: impl IntoIterator<Item = (Exponents, R)>) -> Self {
        let mut p = Self::zero(universe);
        for (e, c) in terms {
            assert_eq!(e.len(), universe.nvars(), "exponent length");
            p.add_term(e, c);
        }
        p
    }

    pub fn universe(&self) -> Universe {
        self.universe
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending lexicographic order of exponent vectors.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &R)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u16]) -> R {
        self.terms.get(exps).cloned().unwrap_or_else(R::zero)
    }

    fn add_term(&mut self, e: Exponents, c: R) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.universe, other.universe, "polynomials from different universes");
    }

    pub fn scale(&self, c: &R) -> Self {
        if c.is_zero() {
            return Self::zero(self.universe);
        }
        Poly {
            universe: self.universe,
            terms: self
                .terms
                .iter()
                .map(|(e, a)| (e.clone(), a.clone() * c))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.universe);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as u32).sum())
            .max()
    }

    pub fn degree_in(&self, v: usize) -> u16 {
        self.terms.keys().map(|e| e[v]).max().unwrap_or(0)
    }

    /// Terms of total degree `d`, where variable `v` has weight `weights[v]`.
    pub fn weighted_part(&self, weights: &[u32], d: u32) -> Self {
        Poly {
            universe: self.universe,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| weighted_degree(e, weights) == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// The nonzero homogeneous component of least total degree.
    pub fn lowest_degree_part(&self) -> Self {
        let ones = vec![1; self.universe.nvars()];
        match self.terms.keys().map(|e| weighted_degree(e, &ones)).min() {
            Some(d) => self.weighted_part(&ones, d),
            None => self.clone(),
        }
    }

    /// Exchanges variables `a` and `b`.
    pub fn swap_vars(&self, a: usize, b: usize) -> Self {
        Poly {
            universe: self.universe,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e.swap(a, b);
                    (e, c.clone())
                })
                .collect(),
        }
    }

    /// Substitutes `v -> -v` for every variable selected by `pick`.
    pub fn negate_vars(&self, pick: impl Fn(usize) -> bool) -> Self {
        Poly {
            universe: self.universe,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let odd = e
                        .iter()
                        .enumerate()
                        .filter(|&(v, _)| pick(v))
                        .map(|(_, &x)| x as u32)
                        .sum::<u32>()
                        % 2
                        == 1;
                    (e.clone(), if odd { -c.clone() } else { c.clone() })
                })
                .collect(),
        }
    }

    /// Replaces variable `v` by the polynomial `g` (same universe).
    pub fn substitute(&self, v: usize, g: &Self) -> Self {
        self.check(g);
        let maxdeg = self.degree_in(v) as usize;
        let mut powers = vec![Self::one(self.universe)];
        for k in 1..=maxdeg {
            powers.push(&powers[k - 1] * g);
        }
        let mut out = Self::zero(self.universe);
        for (e, c) in &self.terms {
            let k = e[v] as usize;
            let mut rest = e.clone();
            rest[v] = 0;
            let m = Self::monomial(self.universe, rest, c.clone());
            out = out + &(&m * &powers[k]);
        }
        out
    }

    /// Sets the listed variables to constants.
    pub fn specialize(&self, assignments: &BTreeMap<usize, R>) -> Self {
        let mut out = Self::zero(self.universe);
        for (e, c) in &self.terms {
            let mut c = c.clone();
            let mut e = e.clone();
            for (&v, val) in assignments {
                for _ in 0..e[v] {
                    c = c * val;
                }
                e[v] = 0;
            }
            out.add_term(e, c);
        }
        out
    }

    /// Value with every variable set to 1.
    pub fn principal_specialization(&self) -> R {
        self.terms.values().fold(R::zero(), |acc, c| acc + c)
    }

    /// Reinterprets the exponent vectors in another universe via `map`.
    pub fn map_universe(&self, target: Universe, map: impl Fn(&[u16]) -> Exponents) -> Self {
        Self::from_terms(
            target,
            self.terms.iter().map(|(e, c)| (map(e), c.clone())),
        )
    }

    /// Exact division by `(x_a - x_b)`, treating `f` as univariate in `x_a`.
    pub fn div_by_difference(&self, a: usize, b: usize) -> Result<Self> {
        let u = self.universe;
        // g[k] = coefficient of x_a^k
        let m = self.degree_in(a) as usize;
        let mut g = vec![Self::zero(u); m + 1];
        for (e, c) in &self.terms {
            let mut rest = e.clone();
            let k = rest[a] as usize;
            rest[a] = 0;
            g[k].add_term(rest, c.clone());
        }
        if self.is_zero() {
            return Ok(Self::zero(u));
        }
        if m == 0 {
            return Err(Error::Invariant("division by a linear form is not exact".into()));
        }
        let xb = Self::var(u, b);
        let mut q = vec![Self::zero(u); m];
        q[m - 1] = g[m].clone();
        for k in (1..m).rev() {
            q[k - 1] = &g[k] + &(&xb * &q[k]);
        }
        if g[0] != -(&xb * &q[0]) {
            return Err(Error::Invariant("division by a linear form is not exact".into()));
        }
        let xa = Self::var(u, a);
        let mut out = Self::zero(u);
        for (k, qk) in q.iter().enumerate() {
            out = out + &(qk * &xa.pow(k as u32));
        }
        Ok(out)
    }

    /// Deterministic display order: total degree descending, then exponent
    /// vectors lexicographically descending.
    fn display_order(&self) -> Vec<(&Exponents, &R)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().map(|&x| x as u32).sum();
            let db: u32 = b.iter().map(|&x| x as u32).sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        v
    }

    /// JSON-friendly export: `(monomial string, coefficient string)` pairs.
    pub fn to_term_map(&self) -> Vec<(String, String)> {
        self.display_order()
            .into_iter()
            .map(|(e, c)| (self.monomial_string(e), c.to_string()))
            .collect()
    }

    fn monomial_string(&self, e: &[u16]) -> String {
        let parts: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|&(_, &x)| x > 0)
            .map(|(v, &x)| {
                let name = self.universe.name(v);
                if x == 1 {
                    name
                } else {
                    format!("{name}^{x}")
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    /// Parses sums of products of numbers and variables, with `^`, unary
    /// minus and parentheses.
    pub fn parse(universe: Universe, text: &str) -> Result<Self> {
        let mut p = Parser {
            universe,
            src: text.as_bytes(),
            pos: 0,
        };
        let out = p.sum()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(out)
    }
}

fn weighted_degree(e: &[u16], w: &[u32]) -> u32 {
    e.iter().zip(w).map(|(&x, &wt)| x as u32 * wt).sum()
}

struct Parser<'a> {
    universe: Universe,
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        let before = &self.src[..self.pos.min(self.src.len())];
        let line = before.iter().filter(|&&c| c == b'\n').count() + 1;
        let column = self.pos - before.iter().rposition(|&c| c == b'\n').map_or(0, |p| p + 1) + 1;
        Error::Parse {
            line,
            column,
            message: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn sum<R: Ring>(&mut self) -> Result<Poly<R>> {
        let mut acc = Poly::zero(self.universe);
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1
            }
            Some(b'+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.product()?;
            acc = if sign < 0 { acc - &t } else { acc + &t };
            match self.peek() {
                Some(b'+') => sign = 1,
                Some(b'-') => sign = -1,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn product<R: Ring>(&mut self) -> Result<Poly<R>> {
        let mut acc = self.power()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = &acc * &self.power()?;
        }
        Ok(acc)
    }

    fn power<R: Ring>(&mut self) -> Result<Poly<R>> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let k: u32 = std::str::from_utf8(&self.src[start..self.pos])
                .ok()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| self.error("expected an exponent"))?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn atom<R: Ring>(&mut self) -> Result<Poly<R>> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.power()?)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_digit() || self.src[self.pos] == b'/')
                {
                    self.pos += 1;
                }
                let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                let c = R::from_str_radix(s, 10).map_err(|_| {
                    self.pos = start;
                    self.error("malformed number")
                })?;
                Ok(Poly::constant(self.universe, c))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric()
                        || matches!(self.src[self.pos], b'[' | b']' | b',' | b'_'))
                {
                    // a ',' only belongs to the name inside brackets
                    if self.src[self.pos] == b','
                        && !self.src[start..self.pos].contains(&b'[')
                    {
                        break;
                    }
                    let closing = self.src[self.pos] == b']';
                    self.pos += 1;
                    if closing {
                        break;
                    }
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                let v = self.universe.index_of(name).ok_or_else(|| {
                    self.pos = start;
                    self.error(&format!("unknown variable {name:?}"))
                })?;
                Ok(Poly::var(self.universe, v))
            }
            _ => Err(self.error("expected a number, variable or '('")),
        }
    }
}

impl<R: Ring> fmt::Display for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.display_order().into_iter().enumerate() {
            let neg = *c < R::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let is_const = e.iter().all(|&x| x == 0);
            if is_const {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&self.monomial_string(e))?;
            } else {
                write!(f, "{mag}*{}", self.monomial_string(e))?;
            }
        }
        Ok(())
    }
}

impl<R: Ring> fmt::Debug for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl<R: Ring> Add<&Poly<R>> for Poly<R> {
    type Output = Poly<R>;
    fn add(mut self, rhs: &Poly<R>) -> Poly<R> {
        self.check(rhs);
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), c.clone());
        }
        self
    }
}

impl<R: Ring> Add<&Poly<R>> for &Poly<R> {
    type Output = Poly<R>;
    fn add(self, rhs: &Poly<R>) -> Poly<R> {
        self.clone() + rhs
    }
}

impl<R: Ring> Add for Poly<R> {
    type Output = Poly<R>;
    fn add(self, rhs: Poly<R>) -> Poly<R> {
        self + &rhs
    }
}

impl<R: Ring> Sub<&Poly<R>> for Poly<R> {
    type Output = Poly<R>;
    fn sub(mut self, rhs: &Poly<R>) -> Poly<R> {
        self.check(rhs);
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), -c.clone());
        }
        self
    }
}

impl<R: Ring> Sub<&Poly<R>> for &Poly<R> {
    type Output = Poly<R>;
    fn sub(self, rhs: &Poly<R>) -> Poly<R> {
        self.clone() - rhs
    }
}

impl<R: Ring> Sub for Poly<R> {
    type Output = Poly<R>;
    fn sub(self, rhs: Poly<R>) -> Poly<R> {
        self - &rhs
    }
}

impl<R: Ring> Mul<&Poly<R>> for &Poly<R> {
    type Output = Poly<R>;
    fn mul(self, rhs: &Poly<R>) -> Poly<R> {
        self.check(rhs);
        let mut out = Poly::zero(self.universe);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1.clone() * c2);
            }
        }
        out
    }
}

impl<R: Ring> Mul for Poly<R> {
    type Output = Poly<R>;
    fn mul(self, rhs: Poly<R>) -> Poly<R> {
        &self * &rhs
    }
}

impl<R: Ring> Neg for Poly<R> {
    type Output = Poly<R>;
    fn neg(self) -> Poly<R> {
        Poly {
            universe: self.universe,
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl<R: Ring> Neg for &Poly<R> {
    type Output = Poly<R>;
    fn neg(self) -> Poly<R> {
        -self.clone()
    }
}
