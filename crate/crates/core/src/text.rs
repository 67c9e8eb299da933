//! Shared lexing for the line-based text formats.
//!
//! Every format is UTF-8, one directive per line, whitespace separated.
//! A `#` starts a comment that runs to the end of the line.

use crate::error::{parse_err, Result};

/// Yields `(line number, tokens)` for every non-empty line, 1-based.
pub(crate) fn lines(input: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    input.lines().enumerate().filter_map(|(i, raw)| {
        let body = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let tokens: Vec<&str> = body.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

pub(crate) fn expect_len(line: usize, tokens: &[&str], n: usize) -> Result<()> {
    if tokens.len() != n {
        return Err(parse_err(
            line,
            format!(
                "`{}` takes {} argument(s), found {}",
                tokens[0],
                n - 1,
                tokens.len() - 1
            ),
        ));
    }
    Ok(())
}

pub(crate) fn parse_nat(line: usize, tok: &str) -> Result<u32> {
    tok.parse::<u32>()
        .map_err(|_| parse_err(line, format!("expected a natural number, found `{tok}`")))
}

/// Identifiers are tokens free of `#` and `,` (commas separate priority
/// vectors).
pub(crate) fn is_ident(tok: &str) -> bool {
    !tok.is_empty() && !tok.contains(['#', ','])
}

pub(crate) fn check_ident(line: usize, tok: &str) -> Result<()> {
    if is_ident(tok) {
        Ok(())
    } else {
        Err(parse_err(line, format!("`{tok}` is not a valid identifier")))
    }
}
