//! Turning command-line strings into core objects. An argument starting with
//! `@` is read from the named file.

use std::collections::BTreeSet;
use std::path::PathBuf;

use schubert_core::asm::Asm;
use schubert_core::groebner::TermOrder;
use schubert_core::monomial::MonomialIdeal;
use schubert_core::poly::Universe;
use schubert_core::{Cell, Error, Permutation, QIdeal};

use crate::error::CliError;

pub fn read_arg(arg: &str) -> Result<String, CliError> {
    match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|source| CliError::Read {
            path: PathBuf::from(path),
            source,
        }),
        None => Ok(arg.to_string()),
    }
}

/// Attaches the offending source line to core parse errors so they can be
/// shown with a caret. Matrices count `;` as a line break.
fn located<T>(what: &'static str, text: &str, r: schubert_core::Result<T>) -> Result<T, CliError> {
    r.map_err(|e| match e {
        Error::Parse { line, column, message } => {
            let source_line = if what == MATRIX {
                text.split(['\n', ';']).nth(line.saturating_sub(1))
            } else {
                text.lines().nth(line.saturating_sub(1))
            };
            CliError::Parse {
                what,
                source_line: source_line.map(str::to_string),
                line,
                column,
                message,
            }
        }
        other => CliError::Core(other),
    })
}

const MATRIX: &str = "alternating sign matrix";

pub fn permutation(arg: &str) -> Result<Permutation, CliError> {
    let text = read_arg(arg)?;
    located("permutation", &text, text.trim().parse())
}

pub fn permutations(args: &[String]) -> Result<BTreeSet<Permutation>, CliError> {
    let ws = args.iter().map(|a| permutation(a)).collect::<Result<BTreeSet<_>, _>>()?;
    same_n(ws.iter().map(Permutation::n))?;
    Ok(ws)
}

fn is_matrix(text: &str) -> bool {
    !text.contains(',') && (text.contains(';') || text.trim().contains(char::is_whitespace))
}

/// An ASM given as rows (`"0 1 0; 1 -1 1; 0 1 0"`) or a permutation.
pub fn asm(arg: &str) -> Result<Asm, CliError> {
    let text = read_arg(arg)?;
    if is_matrix(&text) {
        located(MATRIX, &text, Asm::parse(&text))
    } else {
        let w = located("permutation", &text, text.trim().parse())?;
        Ok(Asm::from_permutation(&w))
    }
}

pub fn asms(args: &[String]) -> Result<Vec<Asm>, CliError> {
    let out = args.iter().map(|a| asm(a)).collect::<Result<Vec<_>, _>>()?;
    same_n(out.iter().map(Asm::n))?;
    Ok(out)
}

/// `I_w` for a permutation, `I_A` for a matrix; several inputs are intersected.
pub fn ideal(args: &[String]) -> Result<(usize, QIdeal), CliError> {
    let mut ideals = Vec::new();
    let mut ns = Vec::new();
    for arg in args {
        let text = read_arg(arg)?;
        if is_matrix(&text) {
            let a = located(MATRIX, &text, Asm::parse(&text))?;
            ns.push(a.n());
            ideals.push(QIdeal::asm(&a));
        } else {
            let w: Permutation = located("permutation", &text, text.trim().parse())?;
            ns.push(w.n());
            ideals.push(QIdeal::schubert(&w));
        }
    }
    let n = same_n(ns)?;
    let j = if ideals.len() == 1 {
        ideals.pop().expect("one ideal")
    } else {
        QIdeal::intersect_all(&ideals)?
    };
    Ok((n, j))
}

fn same_n(ns: impl IntoIterator<Item = usize>) -> Result<usize, CliError> {
    let mut it = ns.into_iter();
    let n = it.next().ok_or_else(|| CliError::Usage("no input given".into()))?;
    match it.find(|&m| m != n) {
        Some(m) => Err(CliError::Core(Error::DimensionMismatch(n, m))),
        None => Ok(n),
    }
}

pub fn order(n: usize, spec: &str) -> Result<TermOrder, CliError> {
    located("term order", spec, TermOrder::parse(n, spec))
}

pub fn cell(spec: &str) -> Result<Cell, CliError> {
    let bad = |column: usize, message: &str| CliError::Parse {
        what: "cell",
        source_line: Some(spec.to_string()),
        line: 1,
        column,
        message: message.into(),
    };
    let (a, b) = spec.split_once(',').ok_or_else(|| bad(1, "expected row,column"))?;
    let row = a.trim().parse().map_err(|_| bad(1, "expected a row index"))?;
    let col = b.trim().parse().map_err(|_| bad(a.len() + 2, "expected a column index"))?;
    Ok(Cell::new(row, col))
}

/// A monomial ideal in the `z[i,j]`, with or without surrounding parentheses.
/// Without `n`, the matrix size is the largest index that occurs.
pub fn monomial_ideal(arg: &str, n: Option<usize>) -> Result<MonomialIdeal, CliError> {
    let text = read_arg(arg)?;
    let trimmed = text.trim();
    let lead = text.len() - text.trim_start().len();
    let (body, offset) = match trimmed.strip_prefix('(').and_then(|s| s.strip_suffix(')')) {
        Some(inner) => (inner, lead + 1),
        None => (trimmed, lead),
    };
    let n = match n {
        Some(n) => n,
        None => largest_index(body)
            .ok_or_else(|| CliError::Usage("cannot infer the matrix size; pass --n".into()))?,
    };
    let parsed = MonomialIdeal::parse(Universe::Z { n }, body).map_err(|e| match e {
        Error::Parse { line: 1, column, message } => Error::Parse {
            line: 1,
            column: column + offset,
            message,
        },
        other => other,
    });
    located("monomial ideal", &text, parsed)
}

fn largest_index(text: &str) -> Option<usize> {
    text.split("z[")
        .skip(1)
        .filter_map(|rest| rest.split(']').next())
        .flat_map(|inside| inside.split(','))
        .filter_map(|k| k.trim().parse::<usize>().ok())
        .max()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_errors_point_at_the_column() {
        let err = asm("0 1 0; 1 x 1; 0 1 0").unwrap_err();
        let CliError::Parse { line, column, .. } = &err else { panic!("{err:?}") };
        assert_eq!((*line, *column), (2, 4));
        let msg = err.to_string();
        assert!(msg.ends_with("\n  |  1 x 1\n  |    ^"), "{msg}");
    }

    #[test]
    fn monomial_ideal_infers_size_and_strips_parentheses() {
        let m = monomial_ideal("(z[1,1]^2*z[2,2], z[1,3])", None).unwrap();
        assert_eq!(m.universe(), Universe::Z { n: 3 });
        assert_eq!(m.to_string(), "(z[1,3], z[1,1]^2*z[2,2])");
    }

    #[test]
    fn matrices_and_permutations_are_told_apart() {
        assert_eq!(asm("231").unwrap(), Asm::from_permutation(&"231".parse().unwrap()));
        assert_eq!(asm("0 1 0;0 0 1;1 0 0").unwrap(), asm("231").unwrap());
        assert!(is_matrix("0 1\n1 0"));
        assert!(!is_matrix("1, 2"));
    }
}
