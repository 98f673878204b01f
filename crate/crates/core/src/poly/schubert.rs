//! Double Schubert and beta-double Grothendieck polynomials.
//!
//! Polynomials live in [`Universe::Xyb`]: `x1..xn`, `y1..yn`, `beta`.

use std::collections::HashMap;

use num_traits::Zero;
use serde::Serialize;

use super::{Poly, Universe};
use crate::bpd::Bpd;
use crate::error::Result;
use crate::gvd::TransitionData;
use crate::perm::{Cell, Permutation};
use crate::scalar::Integer;
use crate::IntPoly;

fn u(n: usize) -> Universe {
    Universe::Xyb { n }
}

pub fn x(n: usize, i: usize) -> IntPoly {
    Poly::var(u(n), i - 1)
}

pub fn y(n: usize, j: usize) -> IntPoly {
    Poly::var(u(n), n + j - 1)
}

pub fn beta(n: usize) -> IntPoly {
    Poly::var(u(n), 2 * n)
}

/// `x_i (+) y_j = x_i + y_j + beta x_i y_j`.
pub fn oplus(n: usize, i: usize, j: usize) -> IntPoly {
    let (xi, yj) = (x(n, i), y(n, j));
    let prod = &(&xi * &yj) * &beta(n);
    xi + &yj + &prod
}

/// `sum_{B in BPD(w)} prod_{(i,j) in D(B)} (x_i - y_j)`.
pub fn double_schubert_bpd(w: &Permutation) -> IntPoly {
    let n = w.n();
    let mut total = Poly::zero(u(n));
    for b in Bpd::enumerate(w) {
        let mut wt = Poly::one(u(n));
        for c in b.diagram() {
            wt = &wt * &(&x(n, c.row) - &y(n, c.col));
        }
        total = total + &wt;
    }
    total
}

/// [`double_schubert_bpd`] with every `y_j = 0`.
pub fn single_schubert_bpd(w: &Permutation) -> IntPoly {
    set_y_zero(&double_schubert_bpd(w))
}

pub fn set_y_zero(f: &IntPoly) -> IntPoly {
    let n = n_of(f);
    let zeros = (n..2 * n).map(|v| (v, Integer::zero())).collect();
    f.specialize(&zeros)
}

fn n_of(f: &IntPoly) -> usize {
    match f.universe() {
        Universe::Xyb { n } => n,
        other => panic!("expected x/y/beta polynomial, found {other:?}"),
    }
}

/// The isobaric operator
/// `pi_i f = ((1 + beta x_{i+1}) f - (1 + beta x_i) s_i f) / (x_i - x_{i+1})`.
pub fn pi_operator(f: &IntPoly, i: usize) -> Result<IntPoly> {
    let n = n_of(f);
    let one = Poly::one(u(n));
    let b = beta(n);
    let left = &(&one + &(&b * &x(n, i + 1))) * f;
    let right = &(&one + &(&b * &x(n, i))) * &f.swap_vars(i - 1, i);
    (left - &right).div_by_difference(i - 1, i)
}

/// The divided difference `d_i f = (f - s_i f) / (x_i - x_{i+1})`.
pub fn ddiff_operator(f: &IntPoly, i: usize) -> Result<IntPoly> {
    (f - &f.swap_vars(i - 1, i)).div_by_difference(i - 1, i)
}

/// Which ascent to follow when climbing from `w` to the longest element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Path {
    SmallestAscent,
    LargestAscent,
}

/// Steps `i_1, ..., i_k` with `w s_{i_1} ... s_{i_k} = w0`, each raising length.
fn climb(w: &Permutation, path: Path) -> Vec<usize> {
    let n = w.n();
    let mut cur = w.clone();
    let mut steps = Vec::new();
    loop {
        let ascents = (1..n).filter(|&i| cur.get(i) < cur.get(i + 1));
        let next = match path {
            Path::SmallestAscent => ascents.min(),
            Path::LargestAscent => ascents.max(),
        };
        let Some(i) = next else { break };
        cur = cur.apply_transposition(i, i + 1).expect("adjacent");
        steps.push(i);
    }
    steps
}

/// `G_{w0} = prod_{i+j <= n} (x_i (+) y_j)`.
pub fn grothendieck_top(n: usize) -> IntPoly {
    let mut g = Poly::one(u(n));
    for i in 1..=n {
        for j in 1..=n - i {
            g = &g * &oplus(n, i, j);
        }
    }
    g
}

/// `S_{w0} = prod_{i+j <= n} (x_i - y_j)`.
pub fn schubert_top(n: usize) -> IntPoly {
    let mut g = Poly::one(u(n));
    for i in 1..=n {
        for j in 1..=n - i {
            g = &g * &(&x(n, i) - &y(n, j));
        }
    }
    g
}

pub fn grothendieck_divdiff_along(w: &Permutation, path: Path) -> Result<IntPoly> {
    let mut g = grothendieck_top(w.n());
    for &i in climb(w, path).iter().rev() {
        g = pi_operator(&g, i)?;
    }
    Ok(g)
}

pub fn schubert_divdiff_along(w: &Permutation, path: Path) -> Result<IntPoly> {
    let mut g = schubert_top(w.n());
    for &i in climb(w, path).iter().rev() {
        g = ddiff_operator(&g, i)?;
    }
    Ok(g)
}

/// The beta-double Grothendieck polynomial by isobaric descent from `w0`.
pub fn grothendieck_divdiff(w: &Permutation) -> Result<IntPoly> {
    grothendieck_divdiff_along(w, Path::SmallestAscent)
}

/// The double Schubert polynomial by divided differences from
/// `prod_{i+j<=n} (x_i - y_j)`.
pub fn schubert_divdiff(w: &Permutation) -> Result<IntPoly> {
    schubert_divdiff_along(w, Path::SmallestAscent)
}

/// `beta -> 0` followed by `y -> -y`.
pub fn grothendieck_to_schubert(g: &IntPoly) -> IntPoly {
    let n = n_of(g);
    let zero = [(2 * n, Integer::zero())].into_iter().collect();
    g.specialize(&zero).negate_vars(|v| v >= n && v < 2 * n)
}

/// Memoised family of double Schubert or Grothendieck polynomials of `S_n`.
pub struct Family {
    kind: Kind,
    memo: HashMap<Permutation, IntPoly>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Schubert,
    Grothendieck,
}

impl Family {
    pub fn new(kind: Kind) -> Self {
        Family {
            kind,
            memo: HashMap::new(),
        }
    }

    pub fn get(&mut self, w: &Permutation) -> Result<IntPoly> {
        if let Some(p) = self.memo.get(w) {
            return Ok(p.clone());
        }
        let n = w.n();
        let ascent = (1..n).find(|&i| w.get(i) < w.get(i + 1));
        let p = match ascent {
            None => match self.kind {
                Kind::Schubert => schubert_top(n),
                Kind::Grothendieck => grothendieck_top(n),
            },
            Some(i) => {
                let up = self.get(&w.apply_transposition(i, i + 1)?)?;
                match self.kind {
                    Kind::Schubert => ddiff_operator(&up, i)?,
                    Kind::Grothendieck => pi_operator(&up, i)?,
                }
            }
        };
        self.memo.insert(w.clone(), p.clone());
        Ok(p)
    }
}

/// Both sides of a transition identity and their difference.
#[derive(Clone, Debug, Serialize)]
pub struct TransitionReport {
    pub w: Permutation,
    pub corner: Cell,
    #[serde(serialize_with = "as_string")]
    pub lhs: IntPoly,
    #[serde(serialize_with = "as_string")]
    pub rhs: IntPoly,
    #[serde(serialize_with = "as_string")]
    pub difference: IntPoly,
}

fn as_string<S: serde::Serializer>(p: &IntPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

impl TransitionReport {
    pub fn holds(&self) -> bool {
        self.difference.is_zero()
    }
}

/// `S_w = (x_a - y_b) S_v + sum_{u in Phi} S_u`.
pub fn transition_schubert(w: &Permutation, corner: Cell) -> Result<TransitionReport> {
    transition_schubert_in(&mut Family::new(Kind::Schubert), w, corner)
}

pub fn transition_schubert_in(
    fam: &mut Family,
    w: &Permutation,
    corner: Cell,
) -> Result<TransitionReport> {
    let td = TransitionData::new(w, corner)?;
    let n = w.n();
    let lhs = fam.get(w)?;
    let mut rhs = &(&x(n, corner.row) - &y(n, corner.col)) * &fam.get(&td.v)?;
    for u in &td.big_phi {
        rhs = rhs + &fam.get(u)?;
    }
    let difference = &lhs - &rhs;
    Ok(TransitionReport {
        w: w.clone(),
        corner,
        lhs,
        rhs,
        difference,
    })
}

/// `G_w = (x_a (+) y_b) G_v + (1 + beta (x_a (+) y_b)) sum_{U} beta^{#U-1} G_{w_U}`.
pub fn transition_grothendieck(w: &Permutation, corner: Cell) -> Result<TransitionReport> {
    transition_grothendieck_in(&mut Family::new(Kind::Grothendieck), w, corner)
}

pub fn transition_grothendieck_in(
    fam: &mut Family,
    w: &Permutation,
    corner: Cell,
) -> Result<TransitionReport> {
    let td = TransitionData::new(w, corner)?;
    let n = w.n();
    let o = oplus(n, corner.row, corner.col);
    let lhs = fam.get(w)?;
    let mut sum = Poly::zero(u(n));
    for set in td.nonempty_subsets() {
        let g = fam.get(&td.w_u(&set)?)?;
        sum = sum + &(&beta(n).pow(set.len() as u32 - 1) * &g);
    }
    let factor = Poly::one(u(n)) + &(&beta(n) * &o);
    let rhs = &o * &fam.get(&td.v)? + &(&factor * &sum);
    let difference = &lhs - &rhs;
    Ok(TransitionReport {
        w: w.clone(),
        corner,
        lhs,
        rhs,
        difference,
    })
}

/// Number of BPDs through the polynomial side: `S_w(1, ..., 1)` with `y = 0`.
pub fn principal_specialization(f: &IntPoly) -> Integer {
    set_y_zero(f).principal_specialization()
}
