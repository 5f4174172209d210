//! A small s-expression reader with source positions.
//!
//! `'x`, `` `x`` and `,x` read as `(quote x)`, `(quasiquote x)` and
//! `(unquote x)`. `;` starts a line comment.

use std::fmt;

use super::ParseError;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Datum {
    Symbol(String),
    Bool(bool),
    Int(i64),
    /// Elements plus an optional dotted tail.
    List(Vec<SExpr>, Option<Box<SExpr>>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SExpr {
    pub datum: Datum,
    pub pos: Pos,
}

impl SExpr {
    pub fn as_symbol(&self) -> Option<&str> {
        match &self.datum {
            Datum::Symbol(s) => Some(s),
            _ => None,
        }
    }

    /// The elements of a proper list.
    pub fn as_list(&self) -> Option<&[SExpr]> {
        match &self.datum {
            Datum::List(items, None) => Some(items),
            _ => None,
        }
    }

    /// If this is `(name x)`, returns `x`.
    pub fn as_prefixed(&self, name: &str) -> Option<&SExpr> {
        match self.as_list() {
            Some([head, x]) if head.as_symbol() == Some(name) => Some(x),
            _ => None,
        }
    }
}

impl fmt::Display for SExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.datum {
            Datum::Symbol(s) => f.write_str(s),
            Datum::Bool(true) => f.write_str("#t"),
            Datum::Bool(false) => f.write_str("#f"),
            Datum::Int(n) => write!(f, "{n}"),
            Datum::List(items, tail) => {
                f.write_str("(")?;
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{item}")?;
                }
                if let Some(t) = tail {
                    write!(f, " . {t}")?;
                }
                f.write_str(")")
            }
        }
    }
}

struct Reader<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    pos: Pos,
}

fn is_delimiter(c: char) -> bool {
    c.is_whitespace() || matches!(c, '(' | ')' | '[' | ']' | '\'' | '`' | ',' | ';' | '"')
}

impl<'a> Reader<'a> {
    fn new(text: &'a str) -> Reader<'a> {
        Reader {
            chars: text.chars().peekable(),
            pos: Pos { line: 1, col: 1 },
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.pos.line += 1;
            self.pos.col = 1;
        } else {
            self.pos.col += 1;
        }
        Some(c)
    }

    fn skip_trivia(&mut self) {
        while let Some(&c) = self.chars.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == ';' {
                while let Some(c) = self.bump() {
                    if c == '\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn error(&self, pos: Pos, message: impl Into<String>) -> ParseError {
        ParseError::new(pos, message)
    }

    fn read(&mut self) -> Result<Option<SExpr>, ParseError> {
        self.skip_trivia();
        let pos = self.pos;
        let Some(&c) = self.chars.peek() else {
            return Ok(None);
        };
        match c {
            '(' | '[' => {
                self.bump();
                self.read_list(pos, if c == '(' { ')' } else { ']' })
                    .map(Some)
            }
            ')' | ']' => Err(self.error(pos, format!("unexpected `{c}`"))),
            '\'' | '`' | ',' => {
                self.bump();
                let name = match c {
                    '\'' => "quote",
                    '`' => "quasiquote",
                    _ => "unquote",
                };
                let inner = self
                    .read()?
                    .ok_or_else(|| self.error(pos, format!("`{c}` must be followed by a datum")))?;
                let head = SExpr {
                    datum: Datum::Symbol(name.to_string()),
                    pos,
                };
                Ok(Some(SExpr {
                    datum: Datum::List(vec![head, inner], None),
                    pos,
                }))
            }
            '"' => Err(self.error(pos, "strings are not supported")),
            _ => self.read_atom(pos).map(Some),
        }
    }

    fn read_list(&mut self, open: Pos, close: char) -> Result<SExpr, ParseError> {
        let mut items = Vec::new();
        let mut tail = None;
        loop {
            self.skip_trivia();
            let pos = self.pos;
            match self.chars.peek().copied() {
                None => return Err(self.error(open, "unbalanced parentheses: missing `)`")),
                Some(c) if c == close => {
                    self.bump();
                    return Ok(SExpr {
                        datum: Datum::List(items, tail),
                        pos: open,
                    });
                }
                Some(')') | Some(']') => {
                    return Err(self.error(pos, "mismatched closing bracket"));
                }
                Some(_) if tail.is_some() => {
                    return Err(self.error(pos, "expected `)` after dotted tail"));
                }
                Some(_) => {
                    let item = self.read()?.expect("peeked a character");
                    if item.as_symbol() == Some(".") {
                        if items.is_empty() {
                            return Err(self.error(pos, "`.` needs an element before it"));
                        }
                        self.skip_trivia();
                        match self.read()? {
                            Some(t) if t.as_symbol() != Some(".") => tail = Some(Box::new(t)),
                            _ => return Err(self.error(pos, "`.` must be followed by one datum")),
                        }
                    } else {
                        items.push(item);
                    }
                }
            }
        }
    }

    fn read_atom(&mut self, pos: Pos) -> Result<SExpr, ParseError> {
        let mut tok = String::new();
        while let Some(&c) = self.chars.peek() {
            if is_delimiter(c) {
                break;
            }
            tok.push(c);
            self.bump();
        }
        let datum = match tok.as_str() {
            "#t" | "#true" => Datum::Bool(true),
            "#f" | "#false" => Datum::Bool(false),
            _ if tok.starts_with('#') => {
                return Err(self.error(pos, format!("unknown literal `{tok}`")));
            }
            _ => match tok.parse::<i64>() {
                Ok(n) => Datum::Int(n),
                Err(_) if looks_numeric(&tok) => {
                    return Err(self.error(pos, format!("unsupported number `{tok}`")));
                }
                Err(_) => Datum::Symbol(tok),
            },
        };
        Ok(SExpr { datum, pos })
    }
}

fn looks_numeric(tok: &str) -> bool {
    let t = tok.strip_prefix(['-', '+']).unwrap_or(tok);
    t.starts_with(|c: char| c.is_ascii_digit())
}

/// Reads every datum in `text`.
pub fn read_all(text: &str) -> Result<Vec<SExpr>, ParseError> {
    let mut r = Reader::new(text);
    let mut out = Vec::new();
    while let Some(e) = r.read()? {
        out.push(e);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one(text: &str) -> SExpr {
        let mut v = read_all(text).unwrap();
        assert_eq!(v.len(), 1);
        v.pop().unwrap()
    }

    #[test]
    fn reads_nested_lists_and_dots() {
        assert_eq!(one("(a (b c) . d)").to_string(), "(a (b c) . d)");
        assert_eq!(one("(== 'a x)").to_string(), "(== (quote a) x)");
        assert_eq!(
            one("`(,h . ,t)").to_string(),
            "(quasiquote ((unquote h) . (unquote t)))"
        );
        assert_eq!(one("#t").datum, Datum::Bool(true));
        assert_eq!(one("-12").datum, Datum::Int(-12));
        assert_eq!(one("=/=").datum, Datum::Symbol("=/=".into()));
    }

    #[test]
    fn comments_and_positions() {
        let v = read_all("; header\n  (run 1 (q)\n   x)").unwrap();
        assert_eq!(v[0].pos, Pos { line: 2, col: 3 });
        let items = v[0].as_list().unwrap();
        assert_eq!(items[3].pos, Pos { line: 3, col: 4 });
    }

    #[test]
    fn reports_unbalanced_parentheses() {
        let err = read_all("(a (b c)").unwrap_err();
        assert!(err.message.contains("unbalanced"), "{err}");
        assert_eq!(err.pos, Pos { line: 1, col: 1 });
        let err = read_all("(a))").unwrap_err();
        assert!(err.message.contains("unexpected"), "{err}");
        assert_eq!(err.pos, Pos { line: 1, col: 4 });
    }

    #[test]
    fn rejects_bad_dots() {
        assert!(read_all("(. a)").is_err());
        assert!(read_all("(a . b c)").is_err());
        assert!(read_all("(a .)").is_err());
    }

    #[test]
    fn rejects_strings_and_floats() {
        assert!(read_all("\"hi\"").is_err());
        assert!(read_all("1.5").is_err());
    }
}
