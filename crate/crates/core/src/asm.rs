//! Alternating sign matrices, corner sums and the ASM lattice.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{bigrassmannian, Cell, Permutation};

/// An `n x n` alternating sign matrix. Entries are stored row-major and
/// addressed 1-based through [`Asm::get`].
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i8>>", into = "Vec<Vec<i8>>")]
pub struct Asm {
    n: usize,
    entries: Vec<i8>,
}

/// The `(n+1) x (n+1)` corner-sum grid `rk_A(i, j) = sum_{k<=i, l<=j} A_{kl}`,
/// with row and column 0 identically zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CornerSums {
    n: usize,
    values: Vec<Vec<usize>>,
}

impl CornerSums {
    /// Validates monotonicity (unit steps) and `rk(n, n) = n`.
    pub fn new(values: Vec<Vec<usize>>) -> Result<Self> {
        let size = values.len();
        if size == 0 || values.iter().any(|r| r.len() != size) {
            return Err(Error::InvalidCornerSums("grid must be square and nonempty".into()));
        }
        let n = size - 1;
        for k in 0..=n {
            if values[0][k] != 0 || values[k][0] != 0 {
                return Err(Error::InvalidCornerSums("row and column 0 must vanish".into()));
            }
        }
        for i in 1..=n {
            for j in 1..=n {
                let v = values[i][j];
                let up = v.checked_sub(values[i - 1][j]);
                let left = v.checked_sub(values[i][j - 1]);
                if !matches!(up, Some(0 | 1)) || !matches!(left, Some(0 | 1)) {
                    return Err(Error::InvalidCornerSums(format!(
                        "non-unit step at ({i},{j})"
                    )));
                }
            }
        }
        if values[n][n] != n {
            return Err(Error::InvalidCornerSums(format!("rk(n,n) = {} != {n}", values[n][n])));
        }
        Ok(CornerSums { n, values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `rk(i, j)` for `0 <= i, j <= n`.
    pub fn get(&self, i: usize, j: usize) -> usize {
        self.values[i][j]
    }

    pub fn values(&self) -> &[Vec<usize>] {
        &self.values
    }

    /// Recovers the matrix by second differences and checks the ASM axioms.
    pub fn to_asm(&self) -> Result<Asm> {
        let n = self.n;
        let v = &self.values;
        let mut rows = Vec::with_capacity(n);
        for i in 1..=n {
            let row: Vec<i8> = (1..=n)
                .map(|j| {
                    (v[i][j] as i64 - v[i - 1][j] as i64 - v[i][j - 1] as i64
                        + v[i - 1][j - 1] as i64) as i8
                })
                .collect();
            rows.push(row);
        }
        Asm::new(rows)
    }

    fn combine(&self, other: &CornerSums, f: fn(usize, usize) -> usize) -> Result<CornerSums> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.iter().zip(b).map(|(&x, &y)| f(x, y)).collect())
            .collect();
        Ok(CornerSums { n: self.n, values })
    }
}

impl Asm {
    pub fn new(rows: Vec<Vec<i8>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidAsm("matrix must be square".into()));
        }
        let asm = Asm {
            n,
            entries: rows.into_iter().flatten().collect(),
        };
        asm.validate()?;
        Ok(asm)
    }

    fn validate(&self) -> Result<()> {
        let n = self.n;
        if self.entries.iter().any(|&e| !(-1..=1).contains(&e)) {
            return Err(Error::InvalidAsm("entries must lie in {-1,0,1}".into()));
        }
        // Partial sums in {0,1} with total 1 is equivalent to sum 1 plus
        // sign alternation starting and ending with +1.
        for i in 1..=n {
            let mut s = 0i32;
            for j in 1..=n {
                s += self.get(i, j) as i32;
                if !(0..=1).contains(&s) {
                    return Err(Error::InvalidAsm(format!("row {i} does not alternate")));
                }
            }
            if s != 1 {
                return Err(Error::InvalidAsm(format!("row {i} does not sum to 1")));
            }
        }
        for j in 1..=n {
            let mut s = 0i32;
            for i in 1..=n {
                s += self.get(i, j) as i32;
                if !(0..=1).contains(&s) {
                    return Err(Error::InvalidAsm(format!("column {j} does not alternate")));
                }
            }
            if s != 1 {
                return Err(Error::InvalidAsm(format!("column {j} does not sum to 1")));
            }
        }
        Ok(())
    }

    pub fn from_permutation(w: &Permutation) -> Self {
        let n = w.n();
        let mut entries = vec![0i8; n * n];
        for i in 1..=n {
            entries[(i - 1) * n + w.get(i) - 1] = 1;
        }
        Asm { n, entries }
    }

    /// The permutation with this matrix, if there are no `-1` entries.
    pub fn to_permutation(&self) -> Option<Permutation> {
        if self.entries.iter().any(|&e| e < 0) {
            return None;
        }
        let word = (1..=self.n)
            .map(|i| (1..=self.n).find(|&j| self.get(i, j) == 1).expect("row sum 1"))
            .collect();
        Permutation::new(word).ok()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry `A_{ij}`, 1-based.
    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.entries[(i - 1) * self.n + (j - 1)]
    }

    pub fn rows(&self) -> Vec<Vec<i8>> {
        self.entries.chunks(self.n.max(1)).map(|r| r.to_vec()).collect()
    }

    pub fn corner_sums(&self) -> CornerSums {
        let n = self.n;
        let mut values = vec![vec![0usize; n + 1]; n + 1];
        for i in 1..=n {
            for j in 1..=n {
                values[i][j] = (values[i - 1][j] as i64 + values[i][j - 1] as i64
                    - values[i - 1][j - 1] as i64
                    + self.get(i, j) as i64) as usize;
            }
        }
        CornerSums { n, values }
    }

    /// Lattice order: `self <= other` iff `rk_self >= rk_other` entrywise.
    pub fn leq(&self, other: &Asm) -> Result<bool> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        let a = self.corner_sums();
        let b = other.corner_sums();
        Ok(a
            .values
            .iter()
            .zip(&b.values)
            .all(|(x, y)| x.iter().zip(y).all(|(p, q)| p >= q)))
    }

    /// Least upper bound: entrywise minimum of corner sums.
    pub fn join<'a>(items: impl IntoIterator<Item = &'a Asm>) -> Result<Asm> {
        Self::fold(items, usize::min, "join")
    }

    /// Greatest lower bound: entrywise maximum of corner sums.
    pub fn meet<'a>(items: impl IntoIterator<Item = &'a Asm>) -> Result<Asm> {
        Self::fold(items, usize::max, "meet")
    }

    fn fold<'a>(
        items: impl IntoIterator<Item = &'a Asm>,
        f: fn(usize, usize) -> usize,
        what: &str,
    ) -> Result<Asm> {
        let mut it = items.into_iter();
        let first = it
            .next()
            .ok_or_else(|| Error::EmptyInput(format!("{what} of an empty set")))?;
        let mut acc = first.corner_sums();
        for a in it {
            acc = acc.combine(&a.corner_sums(), f)?;
        }
        acc.to_asm()
    }

    /// Join of permutation matrices.
    pub fn join_perms<'a>(perms: impl IntoIterator<Item = &'a Permutation>) -> Result<Asm> {
        let asms: Vec<Asm> = perms.into_iter().map(Asm::from_permutation).collect();
        Asm::join(&asms)
    }

    /// `Perm(A)`: the Bruhat-minimal permutations `w` with `w >= A`.
    pub fn perm_set(&self) -> BTreeSet<Permutation> {
        let rk = self.corner_sums();
        let above: Vec<(Permutation, Vec<Vec<usize>>)> = Permutation::all(self.n)
            .filter_map(|w| {
                let rw = w.rank_table();
                let ok = rw
                    .iter()
                    .zip(&rk.values)
                    .all(|(x, y)| x.iter().zip(y).all(|(p, q)| p <= q));
                ok.then_some((w, rw))
            })
            .collect();
        above
            .iter()
            .filter(|(w, rw)| {
                !above.iter().any(|(u, ru)| {
                    u != w
                        && ru
                            .iter()
                            .zip(rw)
                            .all(|(x, y)| x.iter().zip(y).all(|(p, q)| p >= q))
                })
            })
            .map(|(w, _)| w.clone())
            .collect()
    }

    /// `deg(A)`: the minimum Coxeter length over `Perm(A)`.
    pub fn degree(&self) -> usize {
        self.perm_set()
            .iter()
            .map(Permutation::length)
            .min()
            .expect("Perm(A) is nonempty")
    }

    pub fn is_equidimensional(&self) -> bool {
        let lens: BTreeSet<usize> = self.perm_set().iter().map(Permutation::length).collect();
        lens.len() == 1
    }

    /// Canonical non-redundant rank conditions `rk(i,j) <= r` cutting out `A`.
    ///
    /// A cell is kept when its condition is non-vacuous (`r < min(i,j)`) and
    /// not implied by a neighbouring condition: `(i+1,j)` or `(i,j+1)` with
    /// the same rank, or `(i-1,j)` or `(i,j-1)` with rank `r-1`. For a
    /// permutation matrix this is exactly the essential set.
    pub fn essential_conditions(&self) -> Vec<(Cell, usize)> {
        let n = self.n;
        let rk = self.corner_sums();
        let r = |i: usize, j: usize| rk.values[i][j];
        let mut out = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                let v = r(i, j);
                if v >= i.min(j) {
                    continue;
                }
                let implied = (i < n && r(i + 1, j) == v)
                    || (j < n && r(i, j + 1) == v)
                    || (i > 1 && v >= 1 && r(i - 1, j) == v - 1)
                    || (j > 1 && v >= 1 && r(i, j - 1) == v - 1);
                if !implied {
                    out.push((Cell::new(i, j), v));
                }
            }
        }
        out
    }

    /// Bigrassmannians, one per canonical essential condition, whose join is `A`.
    pub fn bigrassmannian_join_decomposition(&self) -> BTreeSet<Permutation> {
        self.essential_conditions()
            .into_iter()
            .map(|(c, r)| {
                bigrassmannian(self.n, c.row, c.col, r).expect("non-vacuous condition")
            })
            .collect()
    }

    /// Every `n x n` ASM, generated row by row with partial-sum pruning.
    pub fn enumerate(n: usize) -> Vec<Asm> {
        fn rows(n: usize, col: &[i8], out: &mut Vec<Vec<i8>>, cur: &mut Vec<i8>, s: i8) {
            let j = cur.len();
            if j == n {
                if s == 1 {
                    out.push(cur.clone());
                }
                return;
            }
            for e in [-1i8, 0, 1] {
                let ns = s + e;
                let nc = col[j] + e;
                if (0..=1).contains(&ns) && (0..=1).contains(&nc) {
                    cur.push(e);
                    rows(n, col, out, cur, ns);
                    cur.pop();
                }
            }
        }
        fn go(n: usize, col: &mut Vec<i8>, acc: &mut Vec<i8>, out: &mut Vec<Asm>) {
            if acc.len() == n * n {
                if col.iter().all(|&c| c == 1) {
                    out.push(Asm {
                        n,
                        entries: acc.clone(),
                    });
                }
                return;
            }
            let mut cands = Vec::new();
            rows(n, col, &mut cands, &mut Vec::new(), 0);
            for r in cands {
                for (c, e) in col.iter_mut().zip(&r) {
                    *c += e;
                }
                acc.extend_from_slice(&r);
                go(n, col, acc, out);
                acc.truncate(acc.len() - n);
                for (c, e) in col.iter_mut().zip(&r) {
                    *c -= e;
                }
            }
        }
        let mut out = Vec::new();
        go(n, &mut vec![0; n], &mut Vec::new(), &mut out);
        out
    }

    /// Parses rows separated by newlines or `;`, entries by whitespace.
    pub fn parse(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (li, line) in text.split(['\n', ';']).enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let mut row = Vec::new();
            let mut col = 1;
            for tok in line.split_whitespace() {
                let offset = line[col - 1..].find(tok).map_or(col, |o| col + o);
                let v = tok.parse::<i8>().map_err(|_| Error::Parse {
                    line: li + 1,
                    column: offset,
                    message: format!("expected -1, 0 or 1, found {tok:?}"),
                })?;
                row.push(v);
                col = offset + tok.len();
            }
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(Error::Parse {
                line: 1,
                column: 1,
                message: "empty matrix".into(),
            });
        }
        Asm::new(rows)
    }
}

impl FromStr for Asm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Asm::parse(s)
    }
}

impl TryFrom<Vec<Vec<i8>>> for Asm {
    type Error = Error;
    fn try_from(rows: Vec<Vec<i8>>) -> Result<Self> {
        Asm::new(rows)
    }
}

impl From<Asm> for Vec<Vec<i8>> {
    fn from(a: Asm) -> Self {
        a.rows()
    }
}

impl fmt::Display for Asm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, row) in self.rows().iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            let parts: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            f.write_str(&parts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Asm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Asm{:?}", self.rows())
    }
}
