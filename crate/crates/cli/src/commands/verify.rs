use std::collections::BTreeSet;
use std::fmt::Write;

use rayon::prelude::*;
use schubert_core::asm::Asm;
use schubert_core::groebner::TermOrder;
use schubert_core::gvd::maximal_accessible_cell;
use schubert_core::gvd::verify::{self, Report};
use schubert_core::{Cell, Permutation, Result as CoreResult};
use serde_json::json;

use super::Ctx;
use crate::error::CliError;
use crate::input;
use crate::output::Output;

/// Largest `--all-sn` accepted without `--extended`.
pub const DEFAULT_MAX_N: usize = 5;

pub struct Args {
    pub inputs: Vec<String>,
    pub all_sn: Option<usize>,
    pub order: Option<String>,
    pub corner: Option<String>,
}

impl Args {
    fn all_sn(&self, ctx: &Ctx) -> Result<Option<usize>, CliError> {
        match self.all_sn {
            Some(n) if n > DEFAULT_MAX_N && !ctx.extended => Err(CliError::Usage(format!(
                "--all-sn {n} exceeds {DEFAULT_MAX_N}; pass --extended to run it"
            ))),
            Some(_) if !self.inputs.is_empty() => {
                Err(CliError::Usage("give either inputs or --all-sn, not both".into()))
            }
            Some(0) => Err(CliError::Usage("--all-sn needs n >= 1".into())),
            other => Ok(other),
        }
    }

    fn perms(&self, ctx: &Ctx) -> Result<Vec<Permutation>, CliError> {
        match self.all_sn(ctx)? {
            Some(n) => Ok(Permutation::all(n).collect()),
            None => Ok(input::permutations(&self.inputs)?.into_iter().collect()),
        }
    }

    fn order(&self, n: usize) -> Result<TermOrder, CliError> {
        input::order(n, self.order.as_deref().unwrap_or("diag"))
    }

    fn corner(&self) -> Result<Option<Cell>, CliError> {
        self.corner.as_deref().map(input::cell).transpose()
    }

    /// `(w, corner)` pairs: the given corner, or every lower outside corner
    /// (of rank at least one if `accessible`).
    fn corner_cases(&self, ctx: &Ctx, accessible: bool) -> Result<Vec<(Permutation, Cell)>, CliError> {
        let fixed = self.corner()?;
        let mut out = Vec::new();
        for w in self.perms(ctx)? {
            match fixed {
                Some(c) => out.push((w, c)),
                None => {
                    for c in w.lower_outside_corners() {
                        if !accessible || w.rank(c.row, c.col)? >= 1 {
                            out.push((w.clone(), c));
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Cases for statements about a union: all singletons of `S_n`, or the
    /// inputs as one set.
    fn unions(&self, ctx: &Ctx) -> Result<Vec<BTreeSet<Permutation>>, CliError> {
        match self.all_sn(ctx)? {
            Some(n) => Ok(Permutation::all(n).map(|w| BTreeSet::from([w])).collect()),
            None => Ok(vec![input::permutations(&self.inputs)?]),
        }
    }
}

fn batch(command: &str, reports: Vec<Report>) -> Output {
    let passed = reports.iter().filter(|r| r.passed()).count();
    let mut text = String::new();
    for r in &reports {
        if r.passed() {
            let _ = writeln!(text, "PASS  {}", r.case);
        } else {
            let _ = writeln!(text, "FAIL  {}\n      witness: {}", r.case, r.witness);
        }
    }
    let statement = reports.first().map(|r| r.statement.clone()).unwrap_or_default();
    let _ = write!(text, "{statement}: {passed} of {} cases passed", reports.len());
    Output::new(
        &format!("verify {command}"),
        text,
        json!({
            "statement": statement,
            "cases": reports.len(),
            "passed": passed,
            "failed": reports.len() - passed,
            "reports": reports,
        }),
    )
    .with_status(passed == reports.len())
}

fn run<T: Sync>(cases: &[T], f: impl Fn(&T) -> CoreResult<Report> + Sync) -> Result<Vec<Report>, CliError> {
    Ok(cases.par_iter().map(&f).collect::<CoreResult<Vec<_>>>()?)
}

pub fn main_theorem(ctx: &Ctx, args: &Args) -> Result<Output, CliError> {
    let cases = args.unions(ctx)?;
    let n = cases[0].iter().next().map(Permutation::n).unwrap_or(1);
    let order = args.order(n)?;
    let reports = run(&cases, |ws| {
        let j = verify::union_ideal(ws)?;
        ctx.groebner_basis(&j, &order);
        verify::verify_main_theorem_for(ws, &j, &order)
    })?;
    Ok(batch("main", reports))
}

pub fn transition(ctx: &Ctx, args: &Args, grothendieck: bool) -> Result<Output, CliError> {
    let cases = args.corner_cases(ctx, false)?;
    let reports: CoreResult<Vec<Report>> = if grothendieck {
        cases
            .par_iter()
            .map_init(verify::grothendieck_family, |fam, (w, c)| {
                verify::verify_grothendieck_transition(fam, w, *c)
            })
            .collect()
    } else {
        cases
            .par_iter()
            .map_init(verify::schubert_family, |fam, (w, c)| {
                verify::verify_schubert_transition(fam, w, *c)
            })
            .collect()
    };
    Ok(batch(if grothendieck { "groth-transition" } else { "transition" }, reports?))
}

pub fn hilbert(ctx: &Ctx, args: &Args) -> Result<Output, CliError> {
    let cases = args.corner_cases(ctx, false)?;
    Ok(batch("hilbert", run(&cases, |(w, c)| verify::verify_hilbert_transition(w, *c))?))
}

pub fn link_decomposition(ctx: &Ctx, args: &Args) -> Result<Output, CliError> {
    let cases = args.corner_cases(ctx, true)?;
    Ok(batch("linkdecomp", run(&cases, |(w, c)| verify::verify_link_decomposition(w, *c))?))
}

pub fn theorem_b(ctx: &Ctx, args: &Args) -> Result<Output, CliError> {
    let ws = args.perms(ctx)?;
    Ok(batch("theoremB", run(&ws, |w| verify::verify_theorem_b(w, true))?))
}

pub fn asm(ctx: &Ctx, args: &Args) -> Result<Output, CliError> {
    let asms = match args.all_sn(ctx)? {
        Some(n) => Asm::enumerate(n),
        None => input::asms(&args.inputs)?,
    };
    Ok(batch("asm", run(&asms, verify::verify_asm_initial)?))
}

pub fn ycompat(ctx: &Ctx, args: &Args) -> Result<Output, CliError> {
    let fixed = args.corner()?;
    let mut cases = Vec::new();
    for ws in args.unions(ctx)? {
        match fixed.or_else(|| maximal_accessible_cell(&ws)) {
            Some(c) => cases.push((ws, c)),
            None if args.all_sn.is_some() => {}
            None => return Err(CliError::Usage("no accessible cell; pass --corner".into())),
        }
    }
    let n = cases.first().and_then(|(ws, _)| ws.iter().next()).map(Permutation::n).unwrap_or(1);
    let order = args.order(n)?;
    Ok(batch("ycompat", run(&cases, |(ws, c)| verify::verify_ycompat(ws, *c, &order))?))
}
