use std::collections::BTreeMap;
use std::fmt::Write;

use schubert_core::asm::Asm;
use schubert_core::bpd::Bpd;
use schubert_core::poly::schubert::{
    double_schubert_bpd, grothendieck_divdiff, principal_specialization, single_schubert_bpd,
};
use schubert_core::{Integer, Permutation};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::output::Output;

fn cells(d: impl IntoIterator<Item = schubert_core::Cell>) -> Value {
    d.into_iter().map(|c| json!([c.row, c.col])).collect()
}

pub fn bpd_enum(w: &Permutation) -> Output {
    let all = Bpd::enumerate(w);
    let mut text = String::new();
    for b in &all {
        text.push_str(&b.to_ascii());
        text.push('\n');
    }
    let _ = write!(text, "{} bumpless pipe dreams of {w}", all.len());
    let items: Vec<Value> = all
        .iter()
        .map(|b| json!({"ascii": b.to_ascii(), "tiles": b, "diagram": cells(b.diagram())}))
        .collect();
    Output::new(
        "bpd enum",
        text,
        json!({"permutation": w, "count": all.len(), "bpds": items}),
    )
}

pub fn bpd_count(w: &Permutation) -> Output {
    let k = Bpd::count(w);
    Output::new("bpd count", k.to_string(), json!({"permutation": w, "count": k}))
}

pub enum PolyKind {
    Schubert,
    DoubleSchubert,
    Grothendieck { beta: bool },
}

pub fn poly(kind: PolyKind, w: &Permutation) -> Result<Output, CliError> {
    let n = w.n();
    let (name, p) = match kind {
        PolyKind::Schubert => ("schubert", single_schubert_bpd(w)),
        PolyKind::DoubleSchubert => ("dschubert", double_schubert_bpd(w)),
        PolyKind::Grothendieck { beta } => {
            let g = grothendieck_divdiff(w)?;
            if beta {
                ("groth", g)
            } else {
                let minus_one = BTreeMap::from([(2 * n, Integer::from(-1))]);
                ("groth", g.specialize(&minus_one))
            }
        }
    };
    let at_one = principal_specialization(&p);
    Ok(Output::new(
        &format!("poly {name}"),
        p.to_string(),
        json!({"permutation": w, "polynomial": p.to_string(), "at_one": at_one.to_string()}),
    ))
}

fn asm_json(a: &Asm) -> Value {
    let perms: Vec<String> = a.perm_set().iter().map(ToString::to_string).collect();
    json!({"matrix": a, "perm": perms, "degree": a.degree()})
}

pub fn join(items: &[Asm]) -> Result<Output, CliError> {
    let a = Asm::join(items)?;
    Ok(Output::new("lattice join", a.to_string(), asm_json(&a)))
}

pub fn meet(items: &[Asm]) -> Result<Output, CliError> {
    let a = Asm::meet(items)?;
    Ok(Output::new("lattice meet", a.to_string(), asm_json(&a)))
}

pub fn perm(a: &Asm) -> Output {
    let perms: Vec<String> = a.perm_set().iter().map(ToString::to_string).collect();
    let mut text = perms.join("\n");
    let _ = write!(
        text,
        "\ndegree {}, {}",
        a.degree(),
        if a.is_equidimensional() { "equidimensional" } else { "not equidimensional" }
    );
    Output::new(
        "lattice perm",
        text,
        json!({"matrix": a, "perm": perms, "degree": a.degree(), "equidimensional": a.is_equidimensional()}),
    )
}

pub fn decompose(a: &Asm) -> Output {
    let parts: Vec<String> = a.bigrassmannian_join_decomposition().iter().map(ToString::to_string).collect();
    let ess = a.essential_conditions();
    let mut text = format!("bigrassmannians: {}\nessential conditions:", parts.join(" "));
    for (c, r) in &ess {
        let _ = write!(text, "\n  rk{c} <= {r}");
    }
    let ess_json: Vec<Value> = ess
        .iter()
        .map(|(c, r)| json!({"cell": [c.row, c.col], "rank": r}))
        .collect();
    Output::new(
        "lattice decompose",
        text,
        json!({"matrix": a, "bigrassmannians": parts, "essential": ess_json}),
    )
}
