//! Exact Groebner bases over a field for ideals in the entries of a generic
//! matrix, with determinantal generators and the splitting used by geometric
//! vertex decomposition.

mod engine;
mod order;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

pub use engine::GbStats;
pub use order::TermOrder;

use engine::IPoly;
use order::Compiled;

use crate::asm::Asm;
use crate::error::{Error, Result};
use crate::monomial::MonomialIdeal;
use crate::perm::{Cell, Permutation};
use crate::poly::{Poly, Universe};
use crate::scalar::Field;

/// A reduced Groebner basis.
pub struct GroebnerBasis<F> {
    universe: Universe,
    order: TermOrder,
    compiled: Compiled,
    polys: Vec<IPoly<F>>,
    stats: GbStats,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn universe(&self) -> Universe {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn stats(&self) -> &GbStats {
        &self.stats
    }

    /// Elements sorted by descending lead monomial.
    pub fn polys(&self) -> Vec<Poly<F>> {
        self.polys
            .iter()
            .map(|p| p.to_poly(&self.compiled, self.universe))
            .collect()
    }

    pub fn lead_exponents(&self) -> Vec<Vec<u16>> {
        self.polys
            .iter()
            .map(|p| self.compiled.exponents(p.lead()))
            .collect()
    }

    /// Total degrees of the elements, ascending.
    pub fn degree_profile(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self
            .polys()
            .iter()
            .map(|p| p.total_degree().unwrap_or(0))
            .collect();
        d.sort_unstable();
        d
    }

    pub fn initial_ideal(&self) -> MonomialIdeal {
        MonomialIdeal::new(self.universe, self.lead_exponents())
    }

    /// Remainder of `f` on division by the basis.
    pub fn reduce(&self, f: &Poly<F>) -> Poly<F> {
        let ring = engine::Ring::new(&self.compiled);
        let basis: Vec<(&IPoly<F>, u64)> = self.polys.iter().map(|p| (p, ring.mask(p.lead()))).collect();
        ring.reduce(IPoly::from_poly(f, &self.compiled), &basis)
            .to_poly(&self.compiled, self.universe)
    }

    pub fn is_unit(&self) -> bool {
        self.polys.len() == 1 && self.polys[0].terms.len() == 1 && self.polys[0].lead().iter().all(|&e| e == 0)
    }
}

impl<F: Field> fmt::Display for GroebnerBasis<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in self.polys() {
            writeln!(f, "{p}")?;
        }
        Ok(())
    }
}

/// An ideal given by generators, caching its reduced Groebner bases.
pub struct Ideal<F> {
    universe: Universe,
    gens: Vec<Poly<F>>,
    cache: Mutex<HashMap<TermOrder, Arc<GroebnerBasis<F>>>>,
}

impl<F: Field> Clone for Ideal<F> {
    fn clone(&self) -> Self {
        Ideal {
            universe: self.universe,
            gens: self.gens.clone(),
            cache: Mutex::new(self.cache.lock().expect("cache lock").clone()),
        }
    }
}

impl<F: Field> fmt::Debug for Ideal<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = self.gens.iter().map(ToString::to_string).collect();
        write!(f, "Ideal({})", g.join(", "))
    }
}

impl<F: Field> Ideal<F> {
    pub fn new(universe: Universe, gens: impl IntoIterator<Item = Poly<F>>) -> Result<Self> {
        let mut out = Vec::new();
        for g in gens {
            if g.universe() != universe {
                return Err(Error::InvalidParameters(format!(
                    "generator {g} lives in {:?}, expected {universe:?}",
                    g.universe()
                )));
            }
            if !g.is_zero() && !out.contains(&g) {
                out.push(g);
            }
        }
        Ok(Ideal {
            universe,
            gens: out,
            cache: Mutex::new(HashMap::new()),
        })
    }

    /// The unit ideal.
    pub fn unit(universe: Universe) -> Self {
        Ideal::new(universe, [Poly::one(universe)]).expect("same universe")
    }

    pub fn zero(universe: Universe) -> Self {
        Ideal::new(universe, []).expect("no generators")
    }

    /// Schubert determinantal ideal of `w` from its Fulton generators.
    pub fn schubert(w: &Permutation) -> Self {
        Ideal::new(Universe::Z { n: w.n() }, fulton_generators(w)).expect("z universe")
    }

    /// ASM ideal of `a` from its essential rank conditions.
    pub fn asm(a: &Asm) -> Self {
        Ideal::new(Universe::Z { n: a.n() }, asm_ideal_generators(a)).expect("z universe")
    }

    pub fn from_monomial(m: &MonomialIdeal) -> Self {
        let u = m.universe();
        Ideal::new(u, m.gens().iter().map(|g| Poly::monomial(u, g.clone(), F::one())))
            .expect("same universe")
    }

    pub fn universe(&self) -> Universe {
        self.universe
    }

    pub fn gens(&self) -> &[Poly<F>] {
        &self.gens
    }

    /// Seeds the cache, e.g. from a stored basis. Checked: `polys` is a reduced
    /// Groebner basis under `order` and every generator reduces to zero by it.
    /// Not checked: that each of `polys` lies in the ideal; the caller vouches
    /// for that inclusion (a stored basis of `(1)` would pass).
    pub fn insert_basis(&self, order: &TermOrder, polys: &[Poly<F>]) -> Result<()> {
        let fresh = Ideal::new(self.universe, polys.iter().cloned())?;
        let gb = fresh.compute(order);
        let same = gb.polys() == polys && self.gens.iter().all(|g| gb.reduce(g).is_zero());
        if !same {
            return Err(Error::Invariant("stored basis does not match the ideal".into()));
        }
        self.cache.lock().expect("cache lock").insert(order.clone(), Arc::new(gb));
        Ok(())
    }

    fn compute(&self, order: &TermOrder) -> GroebnerBasis<F> {
        let compiled = order.compile(self.universe.nvars());
        let (polys, stats) = engine::buchberger(&self.gens, &compiled);
        GroebnerBasis {
            universe: self.universe,
            order: order.clone(),
            compiled,
            polys,
            stats,
        }
    }

    pub fn groebner_basis(&self, order: &TermOrder) -> Arc<GroebnerBasis<F>> {
        if let Some(gb) = self.cache.lock().expect("cache lock").get(order) {
            return Arc::clone(gb);
        }
        let gb = Arc::new(self.compute(order));
        self.cache
            .lock()
            .expect("cache lock")
            .entry(order.clone())
            .or_insert(gb)
            .clone()
    }

    /// Whether the given generators already form a Groebner basis.
    pub fn generators_are_groebner(&self, order: &TermOrder) -> bool {
        engine::is_groebner(&self.gens, &order.compile(self.universe.nvars()))
    }

    pub fn initial_ideal(&self, order: &TermOrder) -> MonomialIdeal {
        self.groebner_basis(order).initial_ideal()
    }

    pub fn reduce(&self, f: &Poly<F>, order: &TermOrder) -> Poly<F> {
        self.groebner_basis(order).reduce(f)
    }

    pub fn contains(&self, f: &Poly<F>) -> bool {
        self.reduce(f, &TermOrder::DegRevLex).is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.groebner_basis(&TermOrder::DegRevLex).is_unit()
    }

    /// Equality via reduced Groebner bases under `order`.
    pub fn ideal_equal(&self, other: &Ideal<F>, order: &TermOrder) -> bool {
        self.universe == other.universe
            && self.groebner_basis(order).polys() == other.groebner_basis(order).polys()
    }

    pub fn contains_ideal(&self, other: &Ideal<F>) -> bool {
        let gb = self.groebner_basis(&TermOrder::DegRevLex);
        other.gens.iter().all(|g| gb.reduce(g).is_zero())
    }

    pub fn sum(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        if self.universe != other.universe {
            return Err(Error::InvalidParameters("ideals in different rings".into()));
        }
        Ideal::new(self.universe, self.gens.iter().chain(&other.gens).cloned())
    }

    /// `I ∩ J` as the `t`-free part of `tI + (1 - t)J`.
    pub fn intersect(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        let n = match (self.universe, other.universe) {
            (Universe::Z { n }, Universe::Z { n: m }) if n == m => n,
            (a, b) => {
                return Err(Error::InvalidParameters(format!(
                    "cannot intersect ideals of {a:?} and {b:?}"
                )))
            }
        };
        if self.gens.is_empty() || other.gens.is_empty() {
            return Ok(Ideal::zero(self.universe));
        }
        let zt = Universe::Zt { n };
        let t_index = n * n;
        let lift = |p: &Poly<F>| {
            p.map_universe(zt, |e| {
                let mut v = e.to_vec();
                v.push(0);
                v
            })
        };
        let t = Poly::var(zt, t_index);
        let one_minus_t = Poly::one(zt) - &t;
        let gens = self
            .gens
            .iter()
            .map(|g| &t * &lift(g))
            .chain(other.gens.iter().map(|g| &one_minus_t * &lift(g)));
        let big = Ideal::new(zt, gens)?;
        let order = TermOrder::elimination([t_index].into_iter().collect(), TermOrder::DegRevLex);
        let gb = big.groebner_basis(&order);
        let kept = gb
            .polys()
            .into_iter()
            .filter(|p| p.degree_in(t_index) == 0)
            .map(|p| p.map_universe(self.universe, |e| e[..n * n].to_vec()));
        Ideal::new(self.universe, kept)
    }

    /// Intersection of a nonempty family, folded left to right.
    pub fn intersect_all<'a>(ideals: impl IntoIterator<Item = &'a Ideal<F>>) -> Result<Ideal<F>> {
        let mut it = ideals.into_iter();
        let first = it.next().ok_or_else(|| Error::EmptyInput("intersection of no ideals".into()))?.clone();
        it.try_fold(first, |acc, i| acc.intersect(i))
    }

    /// No element of the reduced basis under `order` has degree 2 or more
    /// in `y`.
    pub fn is_linear_in(&self, y: usize, order: &TermOrder) -> bool {
        self.groebner_basis(order)
            .polys()
            .iter()
            .all(|p| p.degree_in(y) <= 1)
    }

    /// The pair `(C, N)` read off the reduced basis under a `y`-compatible
    /// `order`: each element `y q + r` contributes `q` to `C`, each `y`-free
    /// element `h` goes to both.
    pub fn gvd_split(&self, y: usize, order: &TermOrder) -> Result<(Ideal<F>, Ideal<F>)> {
        let gb = self.groebner_basis(order);
        let mut c = Vec::new();
        let mut nn = Vec::new();
        for p in gb.polys() {
            match p.degree_in(y) {
                0 => {
                    c.push(p.clone());
                    nn.push(p);
                }
                1 => c.push(y_cofactor(&p, y)),
                d => {
                    return Err(Error::NotLinear(format!(
                        "basis element {p} has degree {d} in {}",
                        self.universe.name(y)
                    )))
                }
            }
        }
        Ok((Ideal::new(self.universe, c)?, Ideal::new(self.universe, nn)?))
    }
}

/// Coefficient of `y^1` in `p`.
fn y_cofactor<F: Field>(p: &Poly<F>, y: usize) -> Poly<F> {
    Poly::from_terms(
        p.universe(),
        p.terms().filter(|(e, _)| e[y] == 1).map(|(e, c)| {
            let mut e = e.clone();
            e[y] = 0;
            (e, c.clone())
        }),
    )
}

/// Index of `z[row,col]` in [`Universe::Z`].
pub fn zvar(n: usize, c: Cell) -> usize {
    (c.row - 1) * n + (c.col - 1)
}

/// Determinant of the submatrix of the generic `n x n` matrix on the given
/// (1-based) rows and columns.
pub fn minor<F: Field>(n: usize, rows: &[usize], cols: &[usize]) -> Result<Poly<F>> {
    if rows.len() != cols.len() {
        return Err(Error::DimensionMismatch(rows.len(), cols.len()));
    }
    if rows.iter().chain(cols).any(|&k| k == 0 || k > n) {
        return Err(Error::OutOfRange(format!("minor indices must lie in 1..={n}")));
    }
    let mut memo = HashMap::new();
    Ok(Minors::new(n).det(rows, cols, &mut memo))
}

struct Minors {
    n: usize,
}

impl Minors {
    fn new(n: usize) -> Self {
        Minors { n }
    }

    /// Laplace expansion along the first row, memoised on the column set.
    fn det<F: Field>(
        &self,
        rows: &[usize],
        cols: &[usize],
        memo: &mut HashMap<(Vec<usize>, Vec<usize>), Poly<F>>,
    ) -> Poly<F> {
        let u = Universe::Z { n: self.n };
        if rows.is_empty() {
            return Poly::one(u);
        }
        let key = (rows.to_vec(), cols.to_vec());
        if let Some(p) = memo.get(&key) {
            return p.clone();
        }
        let mut acc = Poly::zero(u);
        for (k, &c) in cols.iter().enumerate() {
            let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let sub = self.det(&rows[1..], &sub_cols, memo);
            let term = &Poly::var(u, zvar(self.n, Cell::new(rows[0], c))) * &sub;
            acc = if k % 2 == 0 { acc + &term } else { acc - &term };
        }
        memo.insert(key, acc.clone());
        acc
    }

    /// All `k`-minors of the northwest `i x j` submatrix.
    fn all<F: Field>(&self, i: usize, j: usize, k: usize, memo: &mut HashMap<(Vec<usize>, Vec<usize>), Poly<F>>) -> Vec<Poly<F>> {
        let mut out = Vec::new();
        for rows in subsets(i, k) {
            for cols in subsets(j, k) {
                out.push(self.det(&rows, &cols, memo));
            }
        }
        out
    }
}

fn subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..=m {
            if m - x + 1 < k - cur.len() {
                break;
            }
            cur.push(x);
            go(x + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, m, k, &mut Vec::new(), &mut out);
    out
}

fn rank_generators<F: Field>(n: usize, conditions: impl IntoIterator<Item = (Cell, usize)>) -> Vec<Poly<F>> {
    let m = Minors::new(n);
    let mut memo = HashMap::new();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (c, r) in conditions {
        for p in m.all(c.row, c.col, r + 1, &mut memo) {
            if seen.insert(p.to_string()) {
                out.push(p);
            }
        }
    }
    out
}

/// The `(rk_w(i,j)+1)`-minors of `Z_{[i],[j]}` over the essential set of `w`.
pub fn fulton_generators<F: Field>(w: &Permutation) -> Vec<Poly<F>> {
    let conds: Vec<(Cell, usize)> = w
        .essential_set()
        .into_iter()
        .map(|c| (c, w.rank(c.row, c.col).expect("cell in range")))
        .collect();
    rank_generators(w.n(), conds)
}

/// Minors for the essential rank conditions of an ASM.
pub fn asm_ideal_generators<F: Field>(a: &Asm) -> Vec<Poly<F>> {
    rank_generators(a.n(), a.essential_conditions())
}
