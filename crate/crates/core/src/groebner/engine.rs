//! Buchberger's algorithm on an internal representation where a monomial is
//! its order key (weights, then exponents in precedence order), so that
//! comparison is a slice comparison and multiplication is slot-wise addition.

use std::cmp::Ordering;

use super::order::Compiled;
use crate::poly::{Poly, Universe};
use crate::scalar::Field;

pub(crate) type Key = Box<[u16]>;

/// Terms in strictly descending order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct IPoly<F> {
    pub terms: Vec<(Key, F)>,
}

impl<F: Field> IPoly<F> {
    pub fn from_poly(p: &Poly<F>, c: &Compiled) -> Self {
        let mut terms: Vec<(Key, F)> = p.terms().map(|(e, k)| (c.key(e), k.clone())).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        IPoly { terms }
    }

    pub fn to_poly(&self, c: &Compiled, universe: Universe) -> Poly<F> {
        Poly::from_terms(
            universe,
            self.terms.iter().map(|(k, v)| (c.exponents(k), v.clone())),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> &Key {
        &self.terms[0].0
    }

    fn make_monic(&mut self) {
        if let Some((_, lc)) = self.terms.first() {
            if !lc.is_one() {
                let inv = F::one() / lc.clone();
                for (_, v) in &mut self.terms {
                    *v = v.clone() * &inv;
                }
            }
        }
    }
}

/// Monomial arithmetic on keys for one compiled order.
pub(crate) struct Ring {
    off: usize,
    /// Weight rows re-indexed by precedence position.
    wperm: Vec<Vec<u16>>,
}

impl Ring {
    pub fn new(c: &Compiled) -> Self {
        let wperm = c
            .weights
            .iter()
            .map(|w| c.lex.iter().map(|&v| w[v]).collect())
            .collect();
        Ring {
            off: c.weights.len(),
            wperm,
        }
    }

    fn exps<'k>(&self, k: &'k [u16]) -> &'k [u16] {
        &k[self.off..]
    }

    pub fn divides(&self, a: &[u16], b: &[u16]) -> bool {
        self.exps(a).iter().zip(self.exps(b)).all(|(x, y)| x <= y)
    }

    pub fn mask(&self, k: &[u16]) -> u64 {
        self.exps(k)
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0, |m, (i, _)| m | 1 << (i % 64))
    }

    fn mul(&self, a: &[u16], b: &[u16]) -> Key {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    /// `b / a`, assuming `a | b`.
    fn quo(&self, b: &[u16], a: &[u16]) -> Key {
        b.iter().zip(a).map(|(x, y)| x - y).collect()
    }

    pub fn lcm(&self, a: &[u16], b: &[u16]) -> Key {
        let e: Vec<u16> = self
            .exps(a)
            .iter()
            .zip(self.exps(b))
            .map(|(x, y)| *x.max(y))
            .collect();
        let mut out: Vec<u16> = self
            .wperm
            .iter()
            .map(|w| w.iter().zip(&e).map(|(p, q)| p * q).sum())
            .collect();
        out.extend(e);
        out.into_boxed_slice()
    }

    pub fn coprime(&self, a: &[u16], b: &[u16]) -> bool {
        self.exps(a)
            .iter()
            .zip(self.exps(b))
            .all(|(x, y)| *x == 0 || *y == 0)
    }

    pub fn degree(&self, k: &[u16]) -> u32 {
        self.exps(k).iter().map(|&e| u32::from(e)).sum()
    }

    /// `f - coef * m * g` where `g` is monic and `m * lead(g) = lead(f)`.
    fn sub_mul<F: Field>(&self, f: &[(Key, F)], m: &[u16], g: &IPoly<F>) -> Vec<(Key, F)> {
        let coef = f[0].1.clone();
        let mut out = Vec::with_capacity(f.len() + g.terms.len());
        let (mut i, mut j) = (1, 1);
        while i < f.len() || j < g.terms.len() {
            if j == g.terms.len() {
                out.extend_from_slice(&f[i..]);
                break;
            }
            let gk = self.mul(&g.terms[j].0, m);
            let ord = if i < f.len() { f[i].0.cmp(&gk) } else { Ordering::Less };
            match ord {
                Ordering::Greater => {
                    out.push(f[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((gk, -(coef.clone() * &g.terms[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let v = f[i].1.clone() - coef.clone() * &g.terms[j].1;
                    if !v.is_zero() {
                        out.push((gk, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }

    /// Full reduction of `f` by the monic polynomials `basis`.
    pub fn reduce<F: Field>(&self, f: IPoly<F>, basis: &[(&IPoly<F>, u64)]) -> IPoly<F> {
        let mut rest = f.terms;
        let mut done: Vec<(Key, F)> = Vec::new();
        while !rest.is_empty() {
            let lead = &rest[0].0;
            let lm = self.mask(lead);
            let reducer = basis
                .iter()
                .find(|(g, gm)| gm & !lm == 0 && self.divides(g.lead(), lead));
            match reducer {
                Some((g, _)) => {
                    let m = self.quo(lead, g.lead());
                    rest = self.sub_mul(&rest, &m, g);
                }
                None => {
                    // Move the irreducible head out in one go.
                    let mut k = 1;
                    while k < rest.len() {
                        let t = &rest[k].0;
                        let tm = self.mask(t);
                        if basis.iter().any(|(g, gm)| gm & !tm == 0 && self.divides(g.lead(), t)) {
                            break;
                        }
                        k += 1;
                    }
                    let tail = rest.split_off(k);
                    done.extend(rest);
                    rest = tail;
                }
            }
        }
        IPoly { terms: done }
    }

    pub fn spoly<F: Field>(&self, f: &IPoly<F>, g: &IPoly<F>) -> IPoly<F> {
        let l = self.lcm(f.lead(), g.lead());
        let mf = self.quo(&l, f.lead());
        let mg = self.quo(&l, g.lead());
        let sf: Vec<(Key, F)> = f.terms.iter().map(|(k, v)| (self.mul(k, &mf), v.clone())).collect();
        IPoly {
            terms: self.sub_mul(&sf, &mg, g),
        }
    }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Key,
    sugar: u32,
}

/// Statistics from one Buchberger run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GbStats {
    pub pairs_reduced: usize,
    pub zero_reductions: usize,
}

/// Reduced Groebner basis (monic, sorted by descending lead term).
pub(crate) fn buchberger<F: Field>(gens: &[Poly<F>], c: &Compiled) -> (Vec<IPoly<F>>, GbStats) {
    let ring = Ring::new(c);
    let mut stats = GbStats::default();
    let mut arena: Vec<IPoly<F>> = Vec::new();
    let mut masks: Vec<u64> = Vec::new();
    let mut sugar: Vec<u32> = Vec::new();
    let mut g: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let mut inputs: Vec<IPoly<F>> = gens
        .iter()
        .map(|p| IPoly::from_poly(p, c))
        .filter(|p| !p.is_zero())
        .collect();
    inputs.sort_by(|a, b| {
        let (da, db) = (ring.degree(a.lead()), ring.degree(b.lead()));
        da.cmp(&db).then_with(|| a.lead().cmp(b.lead()))
    });

    let insert = |h: IPoly<F>,
                  s: u32,
                  arena: &mut Vec<IPoly<F>>,
                  masks: &mut Vec<u64>,
                  sugar: &mut Vec<u32>,
                  g: &mut Vec<usize>,
                  pairs: &mut Vec<Pair>| {
        let hi = arena.len();
        masks.push(ring.mask(h.lead()));
        sugar.push(s);
        arena.push(h);
        let hl = arena[hi].lead().clone();
        // Gebauer–Möller update.
        let cands: Vec<(usize, Key)> = g.iter().map(|&k| (k, ring.lcm(arena[k].lead(), &hl))).collect();
        let mut keep: Vec<bool> = vec![true; cands.len()];
        for a in 0..cands.len() {
            if ring.coprime(arena[cands[a].0].lead(), &hl) {
                continue;
            }
            let dominated = cands.iter().enumerate().any(|(b, (_, lb))| {
                b != a
                    && keep[b]
                    && ring.divides(lb, &cands[a].1)
                    && (lb != &cands[a].1 || b < a)
            });
            if dominated {
                keep[a] = false;
            }
        }
        // Among equal lcms with a coprime member, the coprime one survives and
        // is then dropped by the product criterion, killing the group.
        let mut fresh = Vec::new();
        for (a, (k, l)) in cands.iter().enumerate() {
            if !keep[a] {
                continue;
            }
            let coprime_twin = cands.iter().any(|(k2, l2)| l2 == l && ring.coprime(arena[*k2].lead(), &hl));
            if ring.coprime(arena[*k].lead(), &hl) || coprime_twin {
                continue;
            }
            let s1 = sugar[*k] + ring.degree(l) - ring.degree(arena[*k].lead());
            let s2 = s + ring.degree(l) - ring.degree(&hl);
            fresh.push(Pair {
                i: *k,
                j: hi,
                lcm: l.clone(),
                sugar: s1.max(s2),
            });
        }
        pairs.retain(|p| {
            !ring.divides(&hl, &p.lcm)
                || ring.lcm(arena[p.i].lead(), &hl) == p.lcm
                || ring.lcm(arena[p.j].lead(), &hl) == p.lcm
        });
        pairs.extend(fresh);
        g.retain(|&k| !ring.divides(&hl, arena[k].lead()));
        g.push(hi);
    };

    for f in inputs {
        let basis: Vec<(&IPoly<F>, u64)> = g.iter().map(|&k| (&arena[k], masks[k])).collect();
        let s = f.terms.iter().map(|(k, _)| ring.degree(k)).max().unwrap_or(0);
        let mut h = ring.reduce(f, &basis);
        if h.is_zero() {
            continue;
        }
        h.make_monic();
        insert(h, s, &mut arena, &mut masks, &mut sugar, &mut g, &mut pairs);
    }

    while !pairs.is_empty() {
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                pairs[a]
                    .sugar
                    .cmp(&pairs[b].sugar)
                    .then_with(|| pairs[a].lcm.cmp(&pairs[b].lcm))
            })
            .expect("nonempty");
        let p = pairs.swap_remove(best);
        stats.pairs_reduced += 1;
        let sp = ring.spoly(&arena[p.i], &arena[p.j]);
        let basis: Vec<(&IPoly<F>, u64)> = g.iter().map(|&k| (&arena[k], masks[k])).collect();
        let mut h = ring.reduce(sp, &basis);
        if h.is_zero() {
            stats.zero_reductions += 1;
            continue;
        }
        h.make_monic();
        insert(h, p.sugar, &mut arena, &mut masks, &mut sugar, &mut g, &mut pairs);
    }

    // Interreduce.
    let mut out: Vec<IPoly<F>> = Vec::with_capacity(g.len());
    for (pos, &k) in g.iter().enumerate() {
        let others: Vec<(&IPoly<F>, u64)> = g
            .iter()
            .enumerate()
            .filter(|&(q, _)| q != pos)
            .map(|(_, &k2)| (&arena[k2], masks[k2]))
            .collect();
        let mut r = ring.reduce(arena[k].clone(), &others);
        r.make_monic();
        out.push(r);
    }
    out.sort_by(|a, b| b.lead().cmp(a.lead()));
    (out, stats)
}

/// Buchberger's criterion: every S-pair of `gens` reduces to zero by `gens`.
pub(crate) fn is_groebner<F: Field>(gens: &[Poly<F>], c: &Compiled) -> bool {
    let ring = Ring::new(c);
    let polys: Vec<IPoly<F>> = gens
        .iter()
        .map(|p| {
            let mut q = IPoly::from_poly(p, c);
            q.make_monic();
            q
        })
        .filter(|p| !p.is_zero())
        .collect();
    let basis: Vec<(&IPoly<F>, u64)> = polys.iter().map(|p| (p, ring.mask(p.lead()))).collect();
    for a in 0..polys.len() {
        for b in a + 1..polys.len() {
            if ring.coprime(polys[a].lead(), polys[b].lead()) {
                continue;
            }
            if !ring.reduce(ring.spoly(&polys[a], &polys[b]), &basis).is_zero() {
                return false;
            }
        }
    }
    true
}
