//! Transition data at a lower outside corner.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{bigrassmannian, Cell, Diagram, Permutation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransitionData {
    pub w: Permutation,
    pub corner: Cell,
    /// `w t_{a, w^{-1}(b)}`.
    pub v: Permutation,
    /// Rows `i < a` with `l(v t_{i,a}) = l(v) + 1`.
    pub phi: BTreeSet<usize>,
    /// `{ v t_{i,a} : i in phi }`.
    #[serde(rename = "Phi")]
    pub big_phi: BTreeSet<Permutation>,
    /// `rk_w(a, b)`.
    pub rank: usize,
}

impl TransitionData {
    pub fn new(w: &Permutation, corner: Cell) -> Result<Self> {
        if !w.is_lower_outside_corner(corner) {
            return Err(Error::NotACorner(corner));
        }
        let (a, b) = (corner.row, corner.col);
        let c = w.inverse().get(b);
        let v = w.apply_transposition(a, c)?;
        let lv = v.length();
        let mut phi = BTreeSet::new();
        let mut big_phi = BTreeSet::new();
        for i in 1..a {
            let u = v.apply_transposition(i, a)?;
            if u.length() == lv + 1 {
                phi.insert(i);
                big_phi.insert(u);
            }
        }
        Ok(TransitionData {
            w: w.clone(),
            corner,
            v,
            phi,
            big_phi,
            rank: w.rank(a, b)?,
        })
    }

    /// `w_U = v (a i_k ... i_1)` for `U = {i_1 < ... < i_k}`; `w_{} = v`.
    pub fn w_u(&self, u: &BTreeSet<usize>) -> Result<Permutation> {
        if !u.is_subset(&self.phi) {
            return Err(Error::InvalidParameters(format!("{u:?} is not a subset of phi")));
        }
        let a = self.corner.row;
        let mut word = self.v.word();
        let idx: Vec<usize> = u.iter().copied().collect();
        if let (Some(&first), Some(&last)) = (idx.first(), idx.last()) {
            word[a - 1] = self.v.get(last);
            for k in (1..idx.len()).rev() {
                word[idx[k] - 1] = self.v.get(idx[k - 1]);
            }
            word[first - 1] = self.v.get(a);
        }
        Permutation::new(word)
    }

    /// Every nonempty `U` subset of `phi`, in a fixed order.
    pub fn nonempty_subsets(&self) -> Vec<BTreeSet<usize>> {
        let items: Vec<usize> = self.phi.iter().copied().collect();
        (1u32..(1 << items.len()))
            .map(|mask| {
                items
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| mask >> k & 1 == 1)
                    .map(|(_, &i)| i)
                    .collect()
            })
            .collect()
    }

    pub fn is_accessible(&self) -> bool {
        self.rank >= 1
    }

    /// The bigrassmannian with essential cell `(a-1, b-1)` and rank
    /// `rk_w(a,b) - 1`; defined when the corner is accessible.
    pub fn pi(&self) -> Option<Permutation> {
        if !self.is_accessible() {
            return None;
        }
        let (a, b) = (self.corner.row, self.corner.col);
        bigrassmannian(self.w.n(), a - 1, b - 1, self.rank - 1).ok()
    }
}

/// Lower outside corners of `D(w)` of rank at least one.
pub fn accessible_cells(w: &Permutation) -> Diagram {
    w.lower_outside_corners()
        .into_iter()
        .filter(|c| w.rank(c.row, c.col).expect("cell in range") >= 1)
        .collect()
}

/// Among the accessible cells of all `ws`, the one in the largest row,
/// ties broken by the largest column.
pub fn maximal_accessible_cell<'a>(ws: impl IntoIterator<Item = &'a Permutation>) -> Option<Cell> {
    ws.into_iter()
        .flat_map(accessible_cells)
        .max_by_key(|c| (c.row, c.col))
}
