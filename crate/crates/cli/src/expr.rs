//! Manifold expression language.
//!
//! Grammar:
//!
//! ```text
//! expr := term ('#' term)*
//! term := atom ('x' atom)*
//! atom := NAME INT? | '(' expr ')'
//! ```
//!
//! `x` (product) binds tighter than `#` (connected sum), so
//! `HP1 x S2 # T6` is `(HP1 x S2) # T6`. Whitespace is insignificant;
//! family names fuse with their index (`S3`, `HP2`) and fused products
//! without spaces (`S1xS3`) are accepted when every segment resolves to a
//! known atom. Names are case-sensitive: the built-in catalog plus anything
//! registered through the user catalog.

use cobord::manifold::{connected_sum, product, split_fused_atom, Catalog, ManifoldDescriptor};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown manifold name '{name}' at position {pos}")]
    UnknownAtom { name: String, pos: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ManifoldExpr {
    Atom { name: String, param: Option<i64> },
    Sum(Box<ManifoldExpr>, Box<ManifoldExpr>),
    Product(Box<ManifoldExpr>, Box<ManifoldExpr>),
}

impl ManifoldExpr {
    /// Canonical printing; `parse(print(e))` reproduces `e` structurally.
    pub fn print(&self) -> String {
        match self {
            ManifoldExpr::Atom { name, param } => match param {
                Some(p) => format!("{name}{p}"),
                None => name.clone(),
            },
            ManifoldExpr::Sum(l, r) => {
                let lhs = l.print();
                let rhs = match **r {
                    // a right-nested sum needs parentheses to survive
                    // left-associative reparsing
                    ManifoldExpr::Sum(..) => format!("({})", r.print()),
                    _ => r.print(),
                };
                format!("{lhs} # {rhs}")
            }
            ManifoldExpr::Product(l, r) => {
                let lhs = match **l {
                    ManifoldExpr::Sum(..) => format!("({})", l.print()),
                    _ => l.print(),
                };
                let rhs = match **r {
                    ManifoldExpr::Sum(..) | ManifoldExpr::Product(..) => {
                        format!("({})", r.print())
                    }
                    _ => r.print(),
                };
                format!("{lhs} x {rhs}")
            }
        }
    }

    /// Evaluates the expression to a manifold descriptor.
    pub fn eval(&self, catalog: &Catalog) -> Result<ManifoldDescriptor, cobord::manifold::ManifoldError> {
        match self {
            ManifoldExpr::Atom { name, param } => catalog.resolve(name, *param),
            ManifoldExpr::Sum(l, r) => connected_sum(&l.eval(catalog)?, &r.eval(catalog)?),
            ManifoldExpr::Product(l, r) => Ok(product(&l.eval(catalog)?, &r.eval(catalog)?)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Hash,
    LParen,
    RParen,
    Word(String),
    Int(i64),
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    pos: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '#' => {
                out.push(Spanned { tok: Tok::Hash, pos: i });
                i += 1;
            }
            '(' => {
                out.push(Spanned { tok: Tok::LParen, pos: i });
                i += 1;
            }
            ')' => {
                out.push(Spanned { tok: Tok::RParen, pos: i });
                i += 1;
            }
            _ if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let lexeme: String = chars[start..i].iter().collect();
                let value = lexeme.parse().map_err(|_| ParseError::Syntax {
                    pos: start,
                    msg: format!("integer '{lexeme}' out of range"),
                })?;
                out.push(Spanned {
                    tok: Tok::Int(value),
                    pos: start,
                });
            }
            _ if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len()
                    && (chars[i].is_ascii_alphanumeric() || chars[i] == '_')
                {
                    i += 1;
                }
                out.push(Spanned {
                    tok: Tok::Word(chars[start..i].iter().collect()),
                    pos: start,
                });
            }
            other => {
                return Err(ParseError::Syntax {
                    pos: i,
                    msg: format!("unexpected character '{other}'"),
                });
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    cursor: usize,
    end: usize,
    catalog: &'a Catalog,
}

pub fn parse(text: &str, catalog: &Catalog) -> Result<ManifoldExpr, ParseError> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(ParseError::Syntax {
            pos: 0,
            msg: "empty expression".into(),
        });
    }
    let end = text.chars().count();
    let mut p = Parser {
        toks,
        cursor: 0,
        end,
        catalog,
    };
    let expr = p.expr()?;
    if let Some(s) = p.peek() {
        return Err(ParseError::Syntax {
            pos: s.pos,
            msg: format!("unexpected trailing input starting with {}", describe(&s.tok)),
        });
    }
    Ok(expr)
}

fn describe(tok: &Tok) -> String {
    match tok {
        Tok::Hash => "'#'".into(),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
        Tok::Word(w) => format!("'{w}'"),
        Tok::Int(v) => format!("'{v}'"),
    }
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Spanned> {
        self.toks.get(self.cursor)
    }

    fn bump(&mut self) -> Option<Spanned> {
        let t = self.toks.get(self.cursor).cloned();
        self.cursor += 1;
        t
    }

    fn expr(&mut self) -> Result<ManifoldExpr, ParseError> {
        let mut lhs = self.term()?;
        while matches!(self.peek().map(|s| &s.tok), Some(Tok::Hash)) {
            self.bump();
            let rhs = self.term()?;
            lhs = ManifoldExpr::Sum(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<ManifoldExpr, ParseError> {
        let mut lhs = self.atom()?;
        while matches!(self.peek().map(|s| &s.tok), Some(Tok::Word(w)) if w == "x") {
            self.bump();
            let rhs = self.atom()?;
            lhs = ManifoldExpr::Product(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn atom(&mut self) -> Result<ManifoldExpr, ParseError> {
        let Some(s) = self.bump() else {
            return Err(ParseError::Syntax {
                pos: self.end,
                msg: "expected a manifold name or '(', found end of input".into(),
            });
        };
        match s.tok {
            Tok::LParen => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Spanned {
                        tok: Tok::RParen, ..
                    }) => Ok(inner),
                    Some(other) => Err(ParseError::Syntax {
                        pos: other.pos,
                        msg: format!("expected ')', found {}", describe(&other.tok)),
                    }),
                    None => Err(ParseError::Syntax {
                        pos: self.end,
                        msg: "unclosed '('".into(),
                    }),
                }
            }
            Tok::Word(w) if w != "x" => self.resolve_word(w, s.pos),
            other => Err(ParseError::Syntax {
                pos: s.pos,
                msg: format!("expected a manifold name or '(', found {}", describe(&other)),
            }),
        }
    }

    fn resolve_word(&mut self, word: String, pos: usize) -> Result<ManifoldExpr, ParseError> {
        // NAME INT with the index as a separate token, e.g. "S 3"
        if let Some(Spanned { tok: Tok::Int(v), .. }) = self.peek().map(Clone::clone) {
            if word.chars().all(|c| c.is_ascii_alphabetic()) {
                let v = match self.bump().unwrap().tok {
                    Tok::Int(v) => v,
                    _ => unreachable!(),
                };
                return self.known_atom(word, Some(v), pos);
            }
            return Err(ParseError::Syntax {
                pos,
                msg: format!("'{word}' already carries an index; unexpected '{v}'"),
            });
        }
        // exact user name or parameterless builtin
        if self.catalog.user_names().any(|n| n == word) || word == "K3" || word == "point" {
            return Ok(ManifoldExpr::Atom {
                name: word,
                param: None,
            });
        }
        // fused family + index, e.g. "S3"
        if let Some((name, param)) = split_fused_atom(&word) {
            return Ok(ManifoldExpr::Atom {
                name: name.to_string(),
                param: Some(param),
            });
        }
        // fused product without spaces, e.g. "S1xS3": split on 'x' segments
        if word.contains('x') {
            if let Some(expr) = self.split_fused_product(&word) {
                return Ok(expr);
            }
        }
        Err(ParseError::UnknownAtom { name: word, pos })
    }

    fn known_atom(
        &self,
        name: String,
        param: Option<i64>,
        pos: usize,
    ) -> Result<ManifoldExpr, ParseError> {
        let known = ["S", "T", "CP", "HP", "RP"].contains(&name.as_str())
            || self.catalog.user_names().any(|n| n == name);
        if known {
            Ok(ManifoldExpr::Atom { name, param })
        } else {
            Err(ParseError::UnknownAtom { name, pos })
        }
    }

    fn split_fused_product(&self, word: &str) -> Option<ManifoldExpr> {
        let parts: Vec<&str> = word.split('x').collect();
        if parts.len() < 2 || parts.iter().any(|p| p.is_empty()) {
            return None;
        }
        let mut atoms = Vec::new();
        for part in parts {
            if !self.catalog.is_known_atom_token(part) {
                return None;
            }
            let atom = if let Some((name, param)) = split_fused_atom(part) {
                ManifoldExpr::Atom {
                    name: name.to_string(),
                    param: Some(param),
                }
            } else {
                ManifoldExpr::Atom {
                    name: part.to_string(),
                    param: None,
                }
            };
            atoms.push(atom);
        }
        let mut iter = atoms.into_iter();
        let first = iter.next()?;
        Some(iter.fold(first, |acc, a| {
            ManifoldExpr::Product(Box::new(acc), Box::new(a))
        }))
    }
}
