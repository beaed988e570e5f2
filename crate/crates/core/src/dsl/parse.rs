use std::fmt;

use thiserror::Error;

/// Line and column of a form, both 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone)]
pub enum FormKind {
    List(Vec<Form>),
    Vector(Vec<Form>),
    Symbol(String),
    /// Stored without the leading `:`.
    Keyword(String),
    Str(String),
}

/// A parsed form. Equality ignores source positions.
#[derive(Debug, Clone)]
pub struct Form {
    pub kind: FormKind,
    pub pos: Pos,
}

impl PartialEq for Form {
    fn eq(&self, other: &Self) -> bool {
        match (&self.kind, &other.kind) {
            (FormKind::List(a), FormKind::List(b)) | (FormKind::Vector(a), FormKind::Vector(b)) => {
                a == b
            }
            (FormKind::Symbol(a), FormKind::Symbol(b))
            | (FormKind::Keyword(a), FormKind::Keyword(b))
            | (FormKind::Str(a), FormKind::Str(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Form {}

impl Form {
    pub fn as_symbol(&self) -> Option<&str> {
        match &self.kind {
            FormKind::Symbol(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_keyword(&self) -> Option<&str> {
        match &self.kind {
            FormKind::Keyword(s) => Some(s),
            _ => None,
        }
    }

    pub fn describe(&self) -> &'static str {
        match self.kind {
            FormKind::List(_) => "list",
            FormKind::Vector(_) => "vector",
            FormKind::Symbol(_) => "symbol",
            FormKind::Keyword(_) => "keyword",
            FormKind::Str(_) => "string",
        }
    }
}

/// Canonical printing: single spaces, no comments, escaped strings.
impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn seq(f: &mut fmt::Formatter<'_>, open: char, close: char, items: &[Form]) -> fmt::Result {
            write!(f, "{open}")?;
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{item}")?;
            }
            write!(f, "{close}")
        }
        match &self.kind {
            FormKind::List(items) => seq(f, '(', ')', items),
            FormKind::Vector(items) => seq(f, '[', ']', items),
            FormKind::Symbol(s) => f.write_str(s),
            FormKind::Keyword(k) => write!(f, ":{k}"),
            FormKind::Str(s) => {
                write!(f, "\"")?;
                for c in s.chars() {
                    match c {
                        '"' => write!(f, "\\\"")?,
                        '\\' => write!(f, "\\\\")?,
                        '\t' => write!(f, "\\t")?,
                        _ => write!(f, "{c}")?,
                    }
                }
                write!(f, "\"")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnbalancedDelimiter,
    UnterminatedString,
    IllegalToken,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{pos}: {kind:?}: {message}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub pos: Pos,
    pub message: String,
}

fn is_symbol_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || "-_?!*+<>=/.:".contains(c)
}

struct Parser<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    pos: Pos,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
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
            if c.is_whitespace() || c == ',' {
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

    fn error(&self, kind: ParseErrorKind, pos: Pos, message: impl Into<String>) -> ParseError {
        ParseError {
            kind,
            pos,
            message: message.into(),
        }
    }

    /// Parses forms until end of input or a closing delimiter.
    fn forms(&mut self, closing: Option<(char, Pos)>) -> Result<Vec<Form>, ParseError> {
        let mut out = Vec::new();
        loop {
            self.skip_trivia();
            let start = self.pos;
            let Some(&c) = self.chars.peek() else {
                return match closing {
                    Some((close, open_pos)) => Err(self.error(
                        ParseErrorKind::UnbalancedDelimiter,
                        open_pos,
                        format!("expected `{close}` to close this form before end of input"),
                    )),
                    None => Ok(out),
                };
            };
            match c {
                ')' | ']' => {
                    self.bump();
                    return match closing {
                        Some((close, _)) if close == c => Ok(out),
                        Some((close, _)) => Err(self.error(
                            ParseErrorKind::UnbalancedDelimiter,
                            start,
                            format!("expected `{close}`, found `{c}`"),
                        )),
                        None => Err(self.error(
                            ParseErrorKind::UnbalancedDelimiter,
                            start,
                            format!("unexpected `{c}` with no open form"),
                        )),
                    };
                }
                '(' => {
                    self.bump();
                    let items = self.forms(Some((')', start)))?;
                    if let Some(head) = items.first() {
                        if let FormKind::Keyword(k) = &head.kind {
                            return Err(self.error(
                                ParseErrorKind::IllegalToken,
                                head.pos,
                                format!("keyword `:{k}` cannot appear in head position"),
                            ));
                        }
                    }
                    out.push(Form {
                        kind: FormKind::List(items),
                        pos: start,
                    });
                }
                '[' => {
                    self.bump();
                    let items = self.forms(Some((']', start)))?;
                    out.push(Form {
                        kind: FormKind::Vector(items),
                        pos: start,
                    });
                }
                '"' => {
                    self.bump();
                    let s = self.string(start)?;
                    out.push(Form {
                        kind: FormKind::Str(s),
                        pos: start,
                    });
                }
                ':' => {
                    self.bump();
                    let name = self.word();
                    if name.is_empty() {
                        return Err(self.error(
                            ParseErrorKind::IllegalToken,
                            start,
                            "expected a keyword name after `:`",
                        ));
                    }
                    out.push(Form {
                        kind: FormKind::Keyword(name),
                        pos: start,
                    });
                }
                c if is_symbol_char(c) => {
                    let name = self.word();
                    out.push(Form {
                        kind: FormKind::Symbol(name),
                        pos: start,
                    });
                }
                other => {
                    return Err(self.error(
                        ParseErrorKind::IllegalToken,
                        start,
                        format!("unexpected character `{other}`; expected a symbol, keyword, string, `(` or `[`"),
                    ))
                }
            }
        }
    }

    fn word(&mut self) -> String {
        let mut s = String::new();
        while let Some(&c) = self.chars.peek() {
            if !is_symbol_char(c) {
                break;
            }
            s.push(c);
            self.bump();
        }
        s
    }

    fn string(&mut self, start: Pos) -> Result<String, ParseError> {
        let mut s = String::new();
        loop {
            match self.bump() {
                None => {
                    return Err(self.error(
                        ParseErrorKind::UnterminatedString,
                        start,
                        "string is never closed; expected `\"`",
                    ))
                }
                Some('"') => return Ok(s),
                Some('\\') => {
                    let esc_pos = self.pos;
                    match self.bump() {
                        Some('"') => s.push('"'),
                        Some('\\') => s.push('\\'),
                        Some('n') => s.push('\n'),
                        Some('t') => s.push('\t'),
                        Some(other) => {
                            return Err(self.error(
                                ParseErrorKind::IllegalToken,
                                esc_pos,
                                format!("unknown escape `\\{other}`"),
                            ))
                        }
                        None => {
                            return Err(self.error(
                                ParseErrorKind::UnterminatedString,
                                start,
                                "string is never closed; expected `\"`",
                            ))
                        }
                    }
                }
                Some(c) => s.push(c),
            }
        }
    }
}

/// Parses a whole source file into its top-level forms.
pub fn parse(text: &str) -> Result<Vec<Form>, ParseError> {
    Parser::new(text).forms(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(s: &str) -> Form {
        Form {
            kind: FormKind::Symbol(s.into()),
            pos: Pos::default(),
        }
    }

    fn kw(s: &str) -> Form {
        Form {
            kind: FormKind::Keyword(s.into()),
            pos: Pos::default(),
        }
    }

    #[test]
    fn parses_defclass() {
        let forms = parse("(defclass A :super B)").unwrap();
        assert_eq!(forms.len(), 1);
        assert_eq!(
            forms[0],
            Form {
                kind: FormKind::List(vec![sym("defclass"), sym("A"), kw("super"), sym("B")]),
                pos: Pos::default(),
            }
        );
        assert_eq!(forms[0].pos, Pos { line: 1, col: 1 });
    }

    #[test]
    fn empty_and_comment_only_input() {
        assert!(parse("").unwrap().is_empty());
        assert!(parse("  ; nothing here\n\n").unwrap().is_empty());
    }

    #[test]
    fn unbalanced() {
        let err = parse("(defclass A").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnbalancedDelimiter);
        assert_eq!(err.pos.line, 1);
        let err = parse("(a]").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnbalancedDelimiter);
        let err = parse("a)").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnbalancedDelimiter);
    }

    #[test]
    fn unterminated_string_reports_opening_quote() {
        let err = parse("(defgem A\n  :comment \"oops)").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnterminatedString);
        assert_eq!(err.pos, Pos { line: 2, col: 12 });
    }

    #[test]
    fn illegal_tokens() {
        assert_eq!(parse("'a").unwrap_err().kind, ParseErrorKind::IllegalToken);
        assert_eq!(
            parse("(:super A)").unwrap_err().kind,
            ParseErrorKind::IllegalToken
        );
        assert_eq!(parse("{").unwrap_err().kind, ParseErrorKind::IllegalToken);
    }

    #[test]
    fn multiline_string_is_verbatim() {
        let forms = parse("\"An amino acid with a single\nmethyl group\"").unwrap();
        assert!(
            matches!(&forms[0].kind, FormKind::Str(s) if s == "An amino acid with a single\nmethyl group")
        );
    }

    #[test]
    fn positions_track_lines() {
        let forms = parse("(a)\n  (b\n c)").unwrap();
        assert_eq!(forms[1].pos, Pos { line: 2, col: 3 });
        let FormKind::List(items) = &forms[1].kind else {
            panic!()
        };
        assert_eq!(items[1].pos, Pos { line: 3, col: 2 });
    }

    #[test]
    fn canonical_print() {
        let forms = parse("(deftier Charge\n  [Positive Neutral] ; values\n  :suffix true :comment \"a \\\"b\\\"\")").unwrap();
        assert_eq!(
            forms[0].to_string(),
            "(deftier Charge [Positive Neutral] :suffix true :comment \"a \\\"b\\\"\")"
        );
    }
}
