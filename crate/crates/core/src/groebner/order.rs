use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::perm::Cell;

/// A monomial order on the variables of some [`crate::poly::Universe`],
/// referring to variables by index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TermOrder {
    /// Lexicographic with the listed variables first, in order; unlisted
    /// variables follow in index order.
    Lex(Vec<usize>),
    /// Graded reverse lexicographic with `x_0 > x_1 > ...`.
    DegRevLex,
    /// Compare total degree in `block` first, then `inner`.
    Elimination {
        block: BTreeSet<usize>,
        inner: Box<TermOrder>,
    },
}

fn zvar(n: usize, c: Cell) -> usize {
    (c.row - 1) * n + (c.col - 1)
}

fn check_cell(n: usize, c: Cell) -> Result<()> {
    if c.row == 0 || c.col == 0 || c.row > n || c.col > n {
        return Err(Error::OutOfRange(format!("{c} is outside the {n}x{n} grid")));
    }
    Ok(())
}

impl TermOrder {
    /// Lex in left-to-right reading order: `z11 > z12 > ... > z1n > z21 > ...`.
    pub fn diagonal_lex(n: usize) -> Self {
        TermOrder::Lex((0..n * n).collect())
    }

    /// Lex in right-to-left reading order: `z1n > ... > z11 > z2n > ...`.
    pub fn antidiagonal_lex(n: usize) -> Self {
        TermOrder::Lex(antidiagonal_reading(n).collect())
    }

    /// Lex with `y` greatest, then right-to-left reading order.
    pub fn tau(n: usize, y: Cell) -> Result<Self> {
        check_cell(n, y)?;
        let yv = zvar(n, y);
        let mut order = vec![yv];
        order.extend(antidiagonal_reading(n).filter(|&v| v != yv));
        Ok(TermOrder::Lex(order))
    }

    /// Lex in column reading order: `z11 > z21 > ... > zn1 > z12 > ...`.
    pub fn column_lex(n: usize) -> Self {
        TermOrder::Lex((0..n).flat_map(|c| (0..n).map(move |r| r * n + c)).collect())
    }

    /// Compares the degree in `y` first, then `base`.
    pub fn y_refined(n: usize, base: TermOrder, y: Cell) -> Result<Self> {
        check_cell(n, y)?;
        Ok(TermOrder::Elimination {
            block: [zvar(n, y)].into_iter().collect(),
            inner: Box::new(base),
        })
    }

    pub fn elimination(block: BTreeSet<usize>, inner: TermOrder) -> Self {
        TermOrder::Elimination {
            block,
            inner: Box::new(inner),
        }
    }

    /// Parses the CLI order syntax: `diag`, `antidiag`, `col-lex`, `tau:a,b`,
    /// `yref:a,b:<base>`.
    pub fn parse(n: usize, spec: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Parse {
            line: 1,
            column: 1,
            message: format!("order {spec:?}: {msg}"),
        };
        let cell = |s: &str| -> Result<Cell> {
            let (a, b) = s.split_once(',').ok_or_else(|| bad("expected a,b"))?;
            let a = a.trim().parse().map_err(|_| bad("bad row"))?;
            let b = b.trim().parse().map_err(|_| bad("bad column"))?;
            Ok(Cell::new(a, b))
        };
        match spec.trim() {
            "diag" => Ok(Self::diagonal_lex(n)),
            "antidiag" => Ok(Self::antidiagonal_lex(n)),
            "col-lex" => Ok(Self::column_lex(n)),
            "degrevlex" => Ok(TermOrder::DegRevLex),
            s if s.starts_with("tau:") => Self::tau(n, cell(&s[4..])?),
            s if s.starts_with("yref:") => {
                let rest = &s[5..];
                let (c, base) = rest.split_once(':').ok_or_else(|| bad("expected yref:a,b:base"))?;
                Self::y_refined(n, Self::parse(n, base)?, cell(c)?)
            }
            _ => Err(bad("unknown order")),
        }
    }

    /// Weight rows followed by the lex precedence that breaks remaining ties.
    pub(crate) fn compile(&self, nvars: usize) -> Compiled {
        let mut weights = Vec::new();
        let lex = self.push_rows(nvars, &mut weights);
        Compiled { nvars, weights, lex }
    }

    fn push_rows(&self, nvars: usize, weights: &mut Vec<Vec<u16>>) -> Vec<usize> {
        match self {
            TermOrder::Lex(prec) => {
                let listed: BTreeSet<usize> = prec.iter().copied().collect();
                let mut p: Vec<usize> = prec.iter().copied().filter(|&v| v < nvars).collect();
                p.extend((0..nvars).filter(|v| !listed.contains(v)));
                p
            }
            TermOrder::DegRevLex => {
                // Same total degree: larger is the one with the larger prefix
                // sums, read from the longest prefix down.
                weights.push(vec![1; nvars]);
                for k in (1..nvars).rev() {
                    weights.push((0..nvars).map(|v| u16::from(v < k)).collect());
                }
                (0..nvars).collect()
            }
            TermOrder::Elimination { block, inner } => {
                weights.push((0..nvars).map(|v| u16::from(block.contains(&v))).collect());
                inner.push_rows(nvars, weights)
            }
        }
    }
}

fn antidiagonal_reading(n: usize) -> impl Iterator<Item = usize> {
    (0..n).flat_map(move |r| (0..n).rev().map(move |c| r * n + c))
}

impl fmt::Display for TermOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TermOrder::Lex(p) => {
                let s: Vec<String> = p.iter().map(ToString::to_string).collect();
                write!(f, "lex[{}]", s.join(","))
            }
            TermOrder::DegRevLex => write!(f, "degrevlex"),
            TermOrder::Elimination { block, inner } => {
                let s: Vec<String> = block.iter().map(ToString::to_string).collect();
                write!(f, "elim[{}]({inner})", s.join(","))
            }
        }
    }
}

/// An order flattened into a weight matrix plus lex tie-break.
#[derive(Clone, Debug)]
pub(crate) struct Compiled {
    pub nvars: usize,
    pub weights: Vec<Vec<u16>>,
    pub lex: Vec<usize>,
}

impl Compiled {
    pub fn slots(&self) -> usize {
        self.weights.len() + self.nvars
    }

    /// Sort key: weight values followed by exponents in precedence order.
    pub fn key(&self, exps: &[u16]) -> Box<[u16]> {
        let mut out = Vec::with_capacity(self.slots());
        for w in &self.weights {
            out.push(w.iter().zip(exps).map(|(a, b)| a * b).sum());
        }
        out.extend(self.lex.iter().map(|&v| exps[v]));
        out.into_boxed_slice()
    }

    /// Inverse of [`Compiled::key`].
    pub fn exponents(&self, key: &[u16]) -> Vec<u16> {
        let mut e = vec![0; self.nvars];
        let off = self.weights.len();
        for (k, &v) in self.lex.iter().enumerate() {
            e[v] = key[off + k];
        }
        e
    }
}
