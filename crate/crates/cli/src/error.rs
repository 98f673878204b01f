use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// A malformed input, rendered with the offending line and a caret.
    #[error("{}", render_parse(.what, .source_line.as_deref(), *.line, *.column, .message))]
    Parse {
        what: &'static str,
        source_line: Option<String>,
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Core(#[from] schubert_core::Error),
    #[error("cannot read {}: {source}", path.display())]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot use cache directory {}: {source}", path.display())]
    CacheDir {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// 1 for internal invariant failures, 2 for everything caused by input.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(schubert_core::Error::Invariant(_)) => 1,
            _ => 2,
        }
    }
}

fn render_parse(what: &str, src: Option<&str>, line: usize, column: usize, message: &str) -> String {
    let mut out = format!("cannot parse {what} at line {line}, column {column}: {message}");
    if let Some(src) = src {
        let pad: String = src
            .chars()
            .take(column.saturating_sub(1))
            .map(|c| if c == '\t' { '\t' } else { ' ' })
            .collect();
        out.push_str(&format!("\n  | {src}\n  | {pad}^"));
    }
    out
}
