//! Parenthesized expressions and their trees.
//!
//! Grammar (whitespace is insignificant except as a separator):
//!
//! ```text
//! expr    := seq
//! seq     := operand (('*')? operand)*
//! operand := VAR | '(' seq ')'
//! VAR     := letter (letter | digit | '_')*
//! ```
//!
//! A run of `P` operands is read left-associatively, so `P` must be 1 or a
//! valid operand count for the arity (`P >= m`, `P = 1 mod (m-1)`). A
//! parenthesized group with a single operand is rejected. Variable names only
//! fix positions; printed output always renames leaves to `x1..xN`.

use crate::error::{Error, Result};
use crate::params::Params;
use crate::tree::Tree;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Token {
    Var,
    Open,
    Close,
    Star,
}

#[derive(Debug, Clone, Copy)]
struct Spanned {
    token: Token,
    offset: usize,
}

fn tokenize(text: &str) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let token = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '(' => Token::Open,
            ')' => Token::Close,
            '*' => Token::Star,
            c if c.is_alphabetic() => {
                let start = i;
                while i + 1 < chars.len() && (chars[i + 1].is_alphanumeric() || chars[i + 1] == '_')
                {
                    i += 1;
                }
                tokens.push(Spanned {
                    token: Token::Var,
                    offset: start,
                });
                i += 1;
                continue;
            }
            other => {
                return Err(Error::Parse {
                    message: format!("unexpected character {other:?}"),
                    offset: i,
                })
            }
        };
        tokens.push(Spanned { token, offset: i });
        i += 1;
    }
    Ok(tokens)
}

struct Parser<'p> {
    tokens: Vec<Spanned>,
    pos: usize,
    end: usize,
    params: &'p Params,
}

impl Parser<'_> {
    fn peek(&self) -> Option<Spanned> {
        self.tokens.get(self.pos).copied()
    }

    fn here(&self) -> usize {
        self.peek().map_or(self.end, |t| t.offset)
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            message: message.into(),
            offset: self.here(),
        }
    }

    fn seq(&mut self) -> Result<Vec<Tree>> {
        let mut operands = vec![self.operand()?];
        loop {
            match self.peek().map(|t| t.token) {
                Some(Token::Star) => {
                    self.pos += 1;
                    operands.push(self.operand()?);
                }
                Some(Token::Var) | Some(Token::Open) => operands.push(self.operand()?),
                _ => return Ok(operands),
            }
        }
    }

    fn operand(&mut self) -> Result<Tree> {
        let Some(tok) = self.peek() else {
            return Err(self.error("expected an operand, found end of input"));
        };
        match tok.token {
            Token::Var => {
                self.pos += 1;
                Ok(Tree::leaf())
            }
            Token::Open => {
                self.pos += 1;
                let operands = self.seq()?;
                match self.peek() {
                    Some(Spanned {
                        token: Token::Close,
                        ..
                    }) => self.pos += 1,
                    _ => return Err(self.error("expected ')'")),
                }
                if operands.len() == 1 {
                    return Err(Error::arity_at(
                        "parenthesized group with a single operand",
                        tok.offset,
                    ));
                }
                fold(self.params, operands, tok.offset)
            }
            Token::Close => Err(self.error("unexpected ')'")),
            Token::Star => Err(self.error("unexpected '*'")),
        }
    }
}

fn fold(params: &Params, operands: Vec<Tree>, offset: usize) -> Result<Tree> {
    let count = operands.len();
    Tree::left_assoc_meet(params, operands).map_err(|_| {
        Error::arity_at(
            format!(
                "group of {count} operands cannot be read by a {}-ary operation",
                params.arity()
            ),
            offset,
        )
    })
}

/// Parses an expression into its tree. Offsets in errors are 0-based
/// character positions.
pub fn parse(text: &str, params: &Params) -> Result<Tree> {
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        end: text.chars().count(),
        params,
    };
    let operands = parser.seq()?;
    if parser.peek().is_some() {
        return Err(parser.error("trailing input"));
    }
    let start = parser.tokens.first().map_or(0, |t| t.offset);
    fold(params, operands, start)
}

/// Output styles for [`print`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Style {
    /// Omits every pair of parentheses that left-associative reading
    /// restores: first-child chains are written flat.
    Minimal,
    /// Parenthesizes every internal node except the root.
    Grouped,
    /// Parenthesizes every internal node, the root included.
    Full,
}

/// Renders `t` with leaves named `x1..xN` from left to right.
pub fn print(t: &Tree, style: Style) -> String {
    let mut out = String::new();
    let mut next = 1;
    match style {
        Style::Minimal => write_flat(t, &mut out, &mut next),
        Style::Grouped => write_grouped(t, &mut out, &mut next),
        Style::Full => write_operand(t, &mut out, &mut next, write_grouped),
    }
    out
}

type Writer = fn(&Tree, &mut String, &mut usize);

fn write_leaf(out: &mut String, next: &mut usize) {
    out.push('x');
    out.push_str(&next.to_string());
    *next += 1;
}

/// A leaf, or `(` body `)` for an internal node.
fn write_operand(t: &Tree, out: &mut String, next: &mut usize, body: Writer) {
    if t.is_leaf() {
        write_leaf(out, next);
    } else {
        out.push('(');
        body(t, out, next);
        out.push(')');
    }
}

fn write_flat(t: &Tree, out: &mut String, next: &mut usize) {
    let children = t.children();
    let Some((first, rest)) = children.split_first() else {
        write_leaf(out, next);
        return;
    };
    write_flat(first, out, next);
    for c in rest {
        out.push('*');
        write_operand(c, out, next, write_flat);
    }
}

fn write_grouped(t: &Tree, out: &mut String, next: &mut usize) {
    let children = t.children();
    if children.is_empty() {
        write_leaf(out, next);
        return;
    }
    for (i, c) in children.iter().enumerate() {
        if i > 0 {
            out.push('*');
        }
        write_operand(c, out, next, write_grouped);
    }
}
