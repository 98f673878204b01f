use std::collections::BTreeSet;

use schubert_core::asm::Asm;
use schubert_core::groebner::{minor, TermOrder};
use schubert_core::gvd::verify;
use schubert_core::gvd::{accessible_cells, maximal_accessible_cell};
use schubert_core::monomial::Grading;
use schubert_core::poly::Universe;
use schubert_core::perm::maximal_southeast;
use schubert_core::{Diagram, Error, Permutation, QIdeal, QPoly};

fn p(s: &str) -> Permutation {
    s.parse().unwrap()
}

fn set(words: &[&str]) -> BTreeSet<Permutation> {
    words.iter().map(|w| p(w)).collect()
}

fn same_length_pairs(n: usize) -> Vec<BTreeSet<Permutation>> {
    let all: Vec<Permutation> = Permutation::all(n).collect();
    let mut out = Vec::new();
    for (i, a) in all.iter().enumerate() {
        for b in &all[i + 1..] {
            if a.length() == b.length() && !a.is_identity() {
                out.push([a.clone(), b.clone()].into_iter().collect());
            }
        }
    }
    out
}

fn subsets(k: usize, from: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    (k..=from)
        .flat_map(|last| {
            subsets(k - 1, last - 1).into_iter().map(move |mut s| {
                s.push(last);
                s
            })
        })
        .collect()
}

/// Maximally southeast cells of the union of the Rothe diagrams.
fn southeast_cells(ws: &BTreeSet<Permutation>) -> Diagram {
    let union: Diagram = ws.iter().flat_map(|w| w.rothe_diagram()).collect();
    maximal_southeast(&union)
}

/// Every `(r+1)`-minor of every northwest `i x j` block with `r = rk_A(i, j) < min(i, j)`.
fn natural_generators(a: &Asm) -> Vec<QPoly> {
    let n = a.n();
    let rk = a.corner_sums();
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            let r = rk.get(i, j);
            if r >= i.min(j) {
                continue;
            }
            for rows in subsets(r + 1, i) {
                for cols in subsets(r + 1, j) {
                    out.push(minor(n, &rows, &cols).unwrap());
                }
            }
        }
    }
    out
}

#[test]
fn union_is_linear_at_southeast_cells() {
    let pairs = same_length_pairs(4);
    assert_eq!(pairs.len(), 41);
    for ws in pairs {
        for y in southeast_cells(&ws) {
            let r = verify::verify_linear(&ws, y).unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }
}

#[test]
fn n_of_union_is_intersection_of_ns_at_southeast_cells() {
    let pairs = same_length_pairs(4);
    assert_eq!(pairs.len(), 41);
    for ws in pairs {
        for y in southeast_cells(&ws) {
            let r = verify::verify_intersect_ns(&ws, y).unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }
}

#[test]
fn essential_generators_match_all_rank_conditions() {
    for a in Asm::enumerate(4) {
        let natural = QIdeal::new(Universe::Z { n: 4 }, natural_generators(&a)).unwrap();
        assert!(QIdeal::asm(&a).ideal_equal(&natural, &TermOrder::DegRevLex), "{a:?}");
    }
}

#[test]
fn degenerations_share_the_k_polynomial() {
    for w in Permutation::all(4) {
        let i = QIdeal::schubert(&w);
        let diag = i.initial_ideal(&TermOrder::diagonal_lex(4));
        let anti = i.initial_ideal(&TermOrder::antidiagonal_lex(4));
        assert_eq!(diag.k_polynomial(Grading::Z2n), anti.k_polynomial(Grading::Z2n), "{w}");
    }
}

#[test]
fn maximal_accessible_cell_has_nothing_strictly_southeast() {
    for w in Permutation::all(5) {
        let cells = accessible_cells(&w);
        match maximal_accessible_cell([&w]) {
            None => assert!(cells.is_empty()),
            Some(c) => {
                assert!(cells.contains(&c));
                assert!(cells.iter().all(|d| *d == c || !d.weakly_southeast_of(c)), "{w}");
            }
        }
    }
}

// Negative controls: the harness has to reject wrong inputs.

#[test]
fn antidiagonal_order_breaks_the_bpd_correspondence() {
    let r = verify::verify_main_theorem(&set(&["132"]), &TermOrder::antidiagonal_lex(3)).unwrap();
    assert!(!r.passed());
    let r = verify::verify_main_theorem(&set(&["132"]), &TermOrder::diagonal_lex(3)).unwrap();
    assert!(r.passed());
}

#[test]
fn union_of_mixed_lengths_is_rejected() {
    let err = verify::verify_main_theorem(&set(&["31245", "31254"]), &TermOrder::diagonal_lex(5));
    assert!(matches!(err, Err(Error::InvalidParameters(_))));
}

#[test]
fn distinct_schubert_ideals_are_distinguished() {
    let a = QIdeal::schubert(&p("2143"));
    let b = QIdeal::schubert(&p("1432"));
    assert!(!a.ideal_equal(&b, &TermOrder::DegRevLex));
    assert!(QIdeal::schubert(&p("2143")).contains_ideal(&QIdeal::schubert(&p("2134"))));
    assert!(!QIdeal::schubert(&p("2134")).contains_ideal(&a));
}
