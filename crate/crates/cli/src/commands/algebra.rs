use std::fmt::Write;

use schubert_core::asm::Asm;
use schubert_core::groebner::{asm_ideal_generators, fulton_generators, TermOrder};
use schubert_core::monomial::{Grading, MonomialIdeal, MonomialPrime};
use schubert_core::{Permutation, QIdeal, QPoly, Rational};
use serde_json::{json, Value};

use super::Ctx;
use crate::output::Output;

fn lines(polys: &[QPoly]) -> (String, Vec<String>) {
    let strings: Vec<String> = polys.iter().map(ToString::to_string).collect();
    (strings.join("\n"), strings)
}

pub fn fulton(w: &Permutation) -> Output {
    let (text, gens) = lines(&fulton_generators::<Rational>(w));
    Output::new("ideal fulton", text, json!({"permutation": w, "generators": gens}))
}

pub fn asm(a: &Asm) -> Output {
    let (text, gens) = lines(&asm_ideal_generators::<Rational>(a));
    Output::new("ideal asm", text, json!({"matrix": a, "generators": gens}))
}

pub fn gb(ctx: &Ctx, ideal: &QIdeal, spec: &str, order: &TermOrder) -> Output {
    let basis = ctx.groebner_basis(ideal, order);
    let (text, polys) = lines(&basis.polys());
    Output::new(
        "ideal gb",
        text,
        json!({
            "order": spec,
            "resolved_order": order.to_string(),
            "basis": polys,
            "degree_profile": basis.degree_profile(),
        }),
    )
}

pub fn init(ctx: &Ctx, ideal: &QIdeal, spec: &str, order: &TermOrder) -> Output {
    let m = ctx.groebner_basis(ideal, order).initial_ideal();
    let gens: Vec<String> = m.gens().iter().map(|g| m.monomial_string(g)).collect();
    Output::new(
        "ideal init",
        m.to_string(),
        json!({"order": spec, "resolved_order": order.to_string(), "initial_ideal": m.to_string(), "generators": gens}),
    )
}

fn prime_json(m: &MonomialIdeal, p: &MonomialPrime) -> Value {
    json!({"prime": p.display(m.universe()), "height": p.height()})
}

pub fn decompose(m: &MonomialIdeal) -> Output {
    let u = m.universe();
    let mut text = String::from("minimal primes (multiplicity):");
    let mut primes = Vec::new();
    for (p, mult) in m.primes_with_multiplicity() {
        let _ = write!(text, "\n  {} {mult}", p.display(u));
        let mut j = prime_json(m, &p);
        j["multiplicity"] = json!(mult);
        primes.push(j);
    }
    text.push_str("\nirreducible components:");
    let mut comps = Vec::new();
    for c in m.irreducible_components() {
        let parts: Vec<String> = c
            .iter()
            .map(|(&v, &e)| if e == 1 { u.name(v) } else { format!("{}^{e}", u.name(v)) })
            .collect();
        let s = format!("({})", parts.join(", "));
        let _ = write!(text, "\n  {s}");
        comps.push(s);
    }
    let degree = m.degree();
    let _ = write!(text, "\ndegree {degree}");
    Output::new(
        "mono decompose",
        text,
        json!({
            "ideal": m.to_string(),
            "minimal_primes": primes,
            "irreducible_components": comps,
            "degree": degree.to_string(),
        }),
    )
}

pub fn ass(m: &MonomialIdeal) -> Output {
    let minimal = m.minimal_primes();
    let mut text = String::new();
    let mut out = Vec::new();
    for p in m.associated_primes() {
        let embedded = !minimal.contains(&p);
        let _ = writeln!(
            text,
            "{} height {}{}",
            p.display(m.universe()),
            p.height(),
            if embedded { " embedded" } else { "" }
        );
        let mut j = prime_json(m, &p);
        j["embedded"] = json!(embedded);
        out.push(j);
    }
    let _ = write!(text, "{} associated primes", out.len());
    Output::new("mono ass", text, json!({"ideal": m.to_string(), "associated_primes": out}))
}

pub fn grading_name(g: Grading) -> &'static str {
    match g {
        Grading::Standard => "standard",
        Grading::Zn => "zn",
        Grading::Z2n => "z2n",
    }
}

pub fn kpoly(m: &MonomialIdeal, g: Grading) -> Output {
    let k = m.k_polynomial(g);
    Output::new(
        "mono kpoly",
        k.to_string(),
        json!({"ideal": m.to_string(), "grading": grading_name(g), "k_polynomial": k.to_string()}),
    )
}

pub fn multidegree(m: &MonomialIdeal, g: Grading) -> Output {
    let d = m.multidegree(g);
    Output::new(
        "mono multidegree",
        d.to_string(),
        json!({"ideal": m.to_string(), "grading": grading_name(g), "multidegree": d.to_string()}),
    )
}
