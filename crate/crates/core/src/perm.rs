//! Permutations in one-line notation, rank functions, Rothe diagrams and
//! Bruhat order.
//!
//! All indices are 1-based: `w.get(i)` is `w(i)` for `1 <= i <= n`, and the
//! cell `(i, j)` refers to row `i`, column `j` of an `n x n` grid.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A cell `(row, col)` of the `n x n` grid, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub const fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }

    /// `other` lies weakly south and weakly east of `self`.
    pub fn weakly_southeast_of(self, other: Cell) -> bool {
        self.row >= other.row && self.col >= other.col
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// A finite set of cells.
pub type Diagram = BTreeSet<Cell>;

/// A permutation of `[n]` in one-line notation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Permutation {
    word: Vec<u8>,
}

impl Permutation {
    /// Builds a permutation from its one-line word (values `1..=n`).
    pub fn new(word: Vec<usize>) -> Result<Self> {
        let n = word.len();
        if n > u8::MAX as usize {
            return Err(Error::InvalidPermutation(format!("n = {n} is too large")));
        }
        let mut seen = vec![false; n + 1];
        for &v in &word {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidPermutation(format!(
                    "{word:?} is not a bijection on [{n}]"
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation {
            word: word.into_iter().map(|v| v as u8).collect(),
        })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            word: (1..=n as u8).collect(),
        }
    }

    /// The longest element `n n-1 ... 1`.
    pub fn longest(n: usize) -> Self {
        Permutation {
            word: (1..=n as u8).rev().collect(),
        }
    }

    /// The simple transposition `s_i = (i i+1)` in `S_n`.
    pub fn simple(n: usize, i: usize) -> Result<Self> {
        Self::identity(n).apply_transposition(i, i + 1)
    }

    pub fn n(&self) -> usize {
        self.word.len()
    }

    /// `w(i)` for `1 <= i <= n`.
    pub fn get(&self, i: usize) -> usize {
        self.word[i - 1] as usize
    }

    pub fn word(&self) -> Vec<usize> {
        self.word.iter().map(|&v| v as usize).collect()
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.n()];
        for (i, &v) in self.word.iter().enumerate() {
            inv[v as usize - 1] = (i + 1) as u8;
        }
        Permutation { word: inv }
    }

    /// Composition `(self * other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Self> {
        self.check_same_n(other)?;
        Ok(Permutation {
            word: other.word.iter().map(|&j| self.word[j as usize - 1]).collect(),
        })
    }

    pub fn is_identity(&self) -> bool {
        self.word.iter().enumerate().all(|(i, &v)| v as usize == i + 1)
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.word;
        let mut count = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// `rk_w(a, b) = #{ i <= a : w(i) <= b }`; zero when `a = 0` or `b = 0`.
    pub fn rank(&self, a: usize, b: usize) -> Result<usize> {
        let n = self.n();
        if a > n || b > n {
            return Err(Error::OutOfRange(format!(
                "rank index ({a},{b}) outside [0,{n}]"
            )));
        }
        Ok(self.word[..a].iter().filter(|&&v| (v as usize) <= b).count())
    }

    /// The full `(n+1) x (n+1)` rank table, row/column 0 included.
    pub fn rank_table(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut rk = vec![vec![0usize; n + 1]; n + 1];
        for a in 1..=n {
            let wa = self.get(a);
            for b in 1..=n {
                rk[a][b] = rk[a - 1][b] + usize::from(wa <= b);
            }
        }
        rk
    }

    /// `D(w) = {(i, j) : w(i) > j and w^{-1}(j) > i}`.
    pub fn rothe_diagram(&self) -> Diagram {
        let inv = self.inverse();
        let n = self.n();
        let mut d = Diagram::new();
        for i in 1..=n {
            for j in 1..=n {
                if self.get(i) > j && inv.get(j) > i {
                    d.insert(Cell::new(i, j));
                }
            }
        }
        d
    }

    /// Cells of `D(w)` with neither `(i+1, j)` nor `(i, j+1)` in `D(w)`.
    pub fn essential_set(&self) -> Diagram {
        let d = self.rothe_diagram();
        d.iter()
            .filter(|c| {
                !d.contains(&Cell::new(c.row + 1, c.col)) && !d.contains(&Cell::new(c.row, c.col + 1))
            })
            .copied()
            .collect()
    }

    /// Maximally southeast cells of `D(w)`.
    pub fn lower_outside_corners(&self) -> Diagram {
        maximal_southeast(&self.rothe_diagram())
    }

    pub fn is_lower_outside_corner(&self, cell: Cell) -> bool {
        self.lower_outside_corners().contains(&cell)
    }

    /// Bruhat order via rank comparison: `u <= w` iff `rk_u >= rk_w` entrywise.
    pub fn bruhat_leq(&self, other: &Permutation) -> Result<bool> {
        self.check_same_n(other)?;
        let ru = self.rank_table();
        let rw = other.rank_table();
        Ok(ru
            .iter()
            .zip(&rw)
            .all(|(a, b)| a.iter().zip(b).all(|(x, y)| x >= y)))
    }

    /// Right multiplication by the transposition `t_{i,j}`: swaps positions
    /// `i` and `j` of the word.
    pub fn apply_transposition(&self, i: usize, j: usize) -> Result<Self> {
        let n = self.n();
        if i == 0 || j == 0 || i > n || j > n || i == j {
            return Err(Error::OutOfRange(format!(
                "transposition ({i},{j}) invalid in S_{n}"
            )));
        }
        let mut word = self.word.clone();
        word.swap(i - 1, j - 1);
        Ok(Permutation { word })
    }

    /// All `w t_{i,j}` with `l(w t_{i,j}) = l(w) + 1`.
    pub fn bruhat_covers(&self) -> BTreeSet<Permutation> {
        let n = self.n();
        let len = self.length();
        let mut out = BTreeSet::new();
        for i in 1..=n {
            for j in i + 1..=n {
                let v = self.apply_transposition(i, j).expect("indices in range");
                if v.length() == len + 1 {
                    out.insert(v);
                }
            }
        }
        out
    }

    /// Lexicographic stream of `S_n`.
    pub fn all(n: usize) -> SymmetricGroupIter {
        SymmetricGroupIter {
            next: Some((1..=n as u8).collect()),
        }
    }

    fn check_same_n(&self, other: &Permutation) -> Result<()> {
        if self.n() != other.n() {
            return Err(Error::DimensionMismatch(self.n(), other.n()));
        }
        Ok(())
    }
}

/// Maximally southeast elements of a set of cells: those with no other
/// element weakly south and weakly east.
pub fn maximal_southeast(cells: &Diagram) -> Diagram {
    cells
        .iter()
        .filter(|c| {
            !cells
                .iter()
                .any(|d| d != *c && d.weakly_southeast_of(**c))
        })
        .copied()
        .collect()
}

/// The bigrassmannian permutation with unique essential cell `(a, b)` and
/// `rk(a, b) = r`, built from the four-block identity layout.
pub fn bigrassmannian(n: usize, a: usize, b: usize, r: usize) -> Result<Permutation> {
    if a == 0 || b == 0 || r >= a.min(b) || a + b - r > n {
        return Err(Error::InvalidParameters(format!(
            "bigrassmannian needs 0 <= r < min(a,b) and a+b-r <= n (n={n}, a={a}, b={b}, r={r})"
        )));
    }
    let mut word = Vec::with_capacity(n);
    word.extend(1..=r);
    word.extend(b + 1..=b + a - r);
    word.extend(r + 1..=b);
    word.extend(a + b - r + 1..=n);
    Permutation::new(word)
}

/// Streaming lexicographic enumeration of `S_n`.
pub struct SymmetricGroupIter {
    next: Option<Vec<u8>>,
}

impl Iterator for SymmetricGroupIter {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        let k = succ.windows(2).rposition(|w| w[0] < w[1]);
        if let Some(k) = k {
            let l = succ.iter().rposition(|&v| v > succ[k]).expect("pivot exists");
            succ.swap(k, l);
            succ[k + 1..].reverse();
            self.next = Some(succ);
        }
        Some(Permutation { word: cur })
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n() <= 9 {
            for v in &self.word {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.word.iter().map(|v| v.to_string()).collect();
            f.write_str(&parts.join(","))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Digit string for `n <= 9` ("4721653"), comma-separated otherwise.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse {
                line: 1,
                column: 1,
                message: "empty permutation".into(),
            });
        }
        let word: Vec<usize> = if s.contains(',') {
            let mut out = Vec::new();
            let mut col = 1;
            for part in s.split(',') {
                let v = part.trim().parse::<usize>().map_err(|_| Error::Parse {
                    line: 1,
                    column: col,
                    message: format!("expected an integer, found {part:?}"),
                })?;
                out.push(v);
                col += part.len() + 1;
            }
            out
        } else {
            let mut out = Vec::new();
            for (idx, ch) in s.chars().enumerate() {
                let d = ch.to_digit(10).ok_or_else(|| Error::Parse {
                    line: 1,
                    column: idx + 1,
                    message: format!("expected a digit, found {ch:?}"),
                })?;
                out.push(d as usize);
            }
            out
        };
        Permutation::new(word)
    }
}

impl TryFrom<String> for Permutation {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Permutation> for String {
    fn from(p: Permutation) -> String {
        p.to_string()
    }
}
