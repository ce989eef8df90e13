//! Parser for move scripts: statements separated by `;`, each a move kind
//! followed by `key=value` tokens.
//!
//! ```text
//! B  k=<int> sign=<±1>
//! A1 k=<int> sign=<±1> color=<unicolored|bicolored> [eps=<±1>]
//! A2 i=<int> j=<int> sign=<±1> color=<unicolored|bicolored> [eps=<±1>] [mixed=<true|false>]
//! C  sign=<±1> color=<unicolored|bicolored>
//! ```
//!
//! `eps` is required exactly when the color is bicolored.

use std::fmt;

use thiserror::Error;

use crate::diagram::CrossingColor;
use crate::moves::MoveSpec;
use crate::sign::Sign;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScriptErrorKind {
    Grammar,
    Semantic,
}

impl fmt::Display for ScriptErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScriptErrorKind::Grammar => write!(f, "grammar error"),
            ScriptErrorKind::Semantic => write!(f, "semantic error"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("{kind} at offset {offset}: {message}")]
pub struct ScriptError {
    pub kind: ScriptErrorKind,
    /// Byte offset into the script text.
    pub offset: usize,
    pub message: String,
}

fn grammar(offset: usize, message: impl Into<String>) -> ScriptError {
    ScriptError {
        kind: ScriptErrorKind::Grammar,
        offset,
        message: message.into(),
    }
}

fn semantic(offset: usize, message: impl Into<String>) -> ScriptError {
    ScriptError {
        kind: ScriptErrorKind::Semantic,
        offset,
        message: message.into(),
    }
}

/// Whitespace-separated tokens with their byte offsets.
fn tokenize(stmt: &str, base: usize) -> Vec<(usize, &str)> {
    let mut tokens = Vec::new();
    let mut start = None;
    for (i, ch) in stmt.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                tokens.push((base + s, &stmt[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        tokens.push((base + s, &stmt[s..]));
    }
    tokens
}

struct Args<'s> {
    move_kind: &'s str,
    kind_offset: usize,
    pairs: Vec<(usize, &'s str, &'s str)>,
}

impl<'s> Args<'s> {
    fn take(&mut self, key: &str) -> Option<(usize, &'s str)> {
        let at = self.pairs.iter().position(|(_, k, _)| *k == key)?;
        let (offset, _, value) = self.pairs.remove(at);
        Some((offset, value))
    }

    fn require(&mut self, key: &str) -> Result<(usize, &'s str), ScriptError> {
        self.take(key).ok_or_else(|| {
            grammar(
                self.kind_offset,
                format!("move {} needs {key}=...", self.move_kind),
            )
        })
    }

    fn finish(self) -> Result<(), ScriptError> {
        if let Some((offset, key, _)) = self.pairs.first() {
            return Err(grammar(
                *offset,
                format!("unknown key {key} for move {}", self.move_kind),
            ));
        }
        Ok(())
    }
}

fn parse_index(offset: usize, value: &str) -> Result<usize, ScriptError> {
    let parsed: usize = value
        .parse()
        .map_err(|_| grammar(offset, format!("expected a positive integer, got {value}")))?;
    if parsed == 0 {
        return Err(semantic(offset, "pair indices start at 1"));
    }
    Ok(parsed)
}

fn parse_sign(offset: usize, value: &str) -> Result<Sign, ScriptError> {
    match value {
        "+1" | "1" => Ok(Sign::Plus),
        "-1" => Ok(Sign::Minus),
        _ => Err(grammar(offset, format!("expected +1 or -1, got {value}"))),
    }
}

fn parse_bicolored(offset: usize, value: &str) -> Result<bool, ScriptError> {
    match value {
        "unicolored" => Ok(false),
        "bicolored" => Ok(true),
        _ => Err(grammar(
            offset,
            format!("expected unicolored or bicolored, got {value}"),
        )),
    }
}

fn parse_color(args: &mut Args<'_>) -> Result<CrossingColor, ScriptError> {
    let (color_offset, color_value) = args.require("color")?;
    let bicolored = parse_bicolored(color_offset, color_value)?;
    let eps = args.take("eps");
    match (bicolored, eps) {
        (false, None) => Ok(CrossingColor::Unicolored),
        (true, Some((offset, value))) => Ok(CrossingColor::Bicolored {
            epsilon: parse_sign(offset, value)?,
        }),
        (true, None) => Err(semantic(
            color_offset,
            "eps is required for bicolored targets",
        )),
        (false, Some((offset, _))) => Err(semantic(
            offset,
            "eps is only allowed for bicolored targets",
        )),
    }
}

fn parse_statement(tokens: Vec<(usize, &str)>) -> Result<MoveSpec, ScriptError> {
    let (kind_offset, move_kind) = tokens[0];
    let mut pairs = Vec::with_capacity(tokens.len() - 1);
    for (offset, token) in &tokens[1..] {
        let Some((key, value)) = token.split_once('=') else {
            return Err(grammar(*offset, format!("expected key=value, got {token}")));
        };
        if pairs.iter().any(|(_, k, _)| *k == key) {
            return Err(grammar(*offset, format!("duplicate key {key}")));
        }
        pairs.push((*offset, key, value));
    }
    let mut args = Args {
        move_kind,
        kind_offset,
        pairs,
    };
    let spec = match move_kind {
        "B" => {
            let (ko, kv) = args.require("k")?;
            let (so, sv) = args.require("sign")?;
            MoveSpec::TypeB {
                pair: parse_index(ko, kv)?,
                sign: parse_sign(so, sv)?,
            }
        }
        "A1" => {
            let (ko, kv) = args.require("k")?;
            let (so, sv) = args.require("sign")?;
            let pair = parse_index(ko, kv)?;
            let sign = parse_sign(so, sv)?;
            let color = parse_color(&mut args)?;
            MoveSpec::TypeA1 { pair, sign, color }
        }
        "A2" => {
            let (io, iv) = args.require("i")?;
            let (jo, jv) = args.require("j")?;
            let (so, sv) = args.require("sign")?;
            let pair_i = parse_index(io, iv)?;
            let pair_j = parse_index(jo, jv)?;
            let sign = parse_sign(so, sv)?;
            let color = parse_color(&mut args)?;
            let mixed = match args.take("mixed") {
                None => false,
                Some((_, "true")) => true,
                Some((_, "false")) => false,
                Some((offset, other)) => {
                    return Err(grammar(
                        offset,
                        format!("expected true or false, got {other}"),
                    ))
                }
            };
            if pair_i == pair_j {
                return Err(semantic(io, "i and j must be distinct"));
            }
            MoveSpec::TypeA2 {
                pair_i,
                pair_j,
                sign,
                color,
                mixed,
            }
        }
        "C" => {
            let (so, sv) = args.require("sign")?;
            let sign = parse_sign(so, sv)?;
            let (co, cv) = args.require("color")?;
            let bicolored = parse_bicolored(co, cv)?;
            MoveSpec::TypeC { sign, bicolored }
        }
        other => {
            return Err(grammar(
                kind_offset,
                format!("unknown move kind {other}; expected B, A1, A2, or C"),
            ))
        }
    };
    args.finish()?;
    Ok(spec)
}

/// Parses a whole script into the move sequence it denotes. Empty
/// statements (including a trailing `;`) are allowed and skipped.
pub fn move_script_parse(text: &str) -> Result<Vec<MoveSpec>, ScriptError> {
    let mut moves = Vec::new();
    let mut base = 0usize;
    for stmt in text.split(';') {
        let tokens = tokenize(stmt, base);
        if !tokens.is_empty() {
            moves.push(parse_statement(tokens)?);
        }
        base += stmt.len() + 1;
    }
    Ok(moves)
}
