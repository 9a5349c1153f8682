//! Tokenizer shared by the source (`.lfr`) and target (`.lfi`) syntaxes.

use std::fmt;

use crate::diag::{Pos, Span};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Nat(u32),
    Colon,
    DColon,
    LtLt,
    LtColon,
    Dot,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Arrow,
    BackArrow,
    Caret,
    Hash,
    Type,
    Sort,
    Infix,
    /// `%check`
    Query,
    // target syntax only
    IrrArrow,
    Star,
    Lt,
    Gt,
    Comma,
    Proj1,
    Proj2,
    LIrr,
    RIrr,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Ident(s) => return write!(f, "identifier `{s}`"),
            Tok::Nat(n) => return write!(f, "number `{n}`"),
            Tok::Colon => "`:`",
            Tok::DColon => "`::`",
            Tok::LtLt => "`<<`",
            Tok::LtColon => "`<:`",
            Tok::Dot => "`.`",
            Tok::LBrace => "`{`",
            Tok::RBrace => "`}`",
            Tok::LBracket => "`[`",
            Tok::RBracket => "`]`",
            Tok::LParen => "`(`",
            Tok::RParen => "`)`",
            Tok::Arrow => "`->`",
            Tok::BackArrow => "`<-`",
            Tok::Caret => "`^`",
            Tok::Hash => "`#`",
            Tok::Type => "`type`",
            Tok::Sort => "`sort`",
            Tok::Infix => "`%infix`",
            Tok::Query => "`%check`",
            Tok::IrrArrow => "`-:>`",
            Tok::Star => "`*`",
            Tok::Lt => "`<`",
            Tok::Gt => "`>`",
            Tok::Comma => "`,`",
            Tok::Proj1 => "`.1`",
            Tok::Proj2 => "`.2`",
            Tok::LIrr => "`[[`",
            Tok::RIrr => "`]]`",
            Tok::Eof => "end of input",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Source,
    Target,
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LexError {
    pub span: Span,
    pub message: String,
}

const SYMBOL_START: &str = "=+!$&|~@?";
const SYMBOL_CONT: &str = "=+!$&|~@?<>";

fn ident_char(c: char, mode: Mode) -> bool {
    c.is_ascii_alphanumeric() || "_'/*-".contains(c) || (mode == Mode::Target && c == '^')
}

struct Lexer<'a> {
    chars: Vec<char>,
    i: usize,
    line: u32,
    col: u32,
    mode: Mode,
    _src: &'a str,
}

impl<'a> Lexer<'a> {
    fn peek(&self, k: usize) -> Option<char> {
        self.chars.get(self.i + k).copied()
    }

    fn pos(&self) -> Pos {
        Pos { line: self.line, col: self.col }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek(0)?;
        self.i += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn starts_with(&self, s: &str) -> bool {
        s.chars().enumerate().all(|(k, c)| self.peek(k) == Some(c))
    }

    fn skip_trivia(&mut self) -> Result<(), LexError> {
        loop {
            match self.peek(0) {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some('%') if self.starts_with("%{") => {
                    let start = self.pos();
                    self.bump();
                    self.bump();
                    loop {
                        if self.starts_with("}%") {
                            self.bump();
                            self.bump();
                            break;
                        }
                        if self.bump().is_none() {
                            return Err(LexError {
                                span: Span::new(start, self.pos()),
                                message: "unterminated block comment".into(),
                            });
                        }
                    }
                }
                Some('%') if self.starts_with("%infix") && !self.peek(6).is_some_and(|c| ident_char(c, self.mode)) => {
                    return Ok(());
                }
                Some('%') if self.starts_with("%check") && !self.peek(6).is_some_and(|c| ident_char(c, self.mode)) => {
                    return Ok(());
                }
                Some('%') => {
                    while let Some(c) = self.peek(0) {
                        if c == '\n' {
                            break;
                        }
                        self.bump();
                    }
                }
                _ => return Ok(()),
            }
        }
    }

    fn ident(&mut self) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek(0) {
            if !ident_char(c, self.mode) {
                break;
            }
            if c == '-' && (self.starts_with("->") || self.starts_with("-:>")) {
                break;
            }
            s.push(c);
            self.bump();
        }
        s
    }

    fn next(&mut self) -> Result<Token, LexError> {
        self.skip_trivia()?;
        let start = self.pos();
        let Some(c) = self.peek(0) else {
            return Ok(Token { tok: Tok::Eof, span: Span::new(start, start) });
        };
        let fixed: &[(&str, Tok)] = match self.mode {
            Mode::Source => &[
                ("%infix", Tok::Infix),
                ("%check", Tok::Query),
                ("::", Tok::DColon),
                ("<<", Tok::LtLt),
                ("<:", Tok::LtColon),
                ("<-", Tok::BackArrow),
                ("->", Tok::Arrow),
                (":", Tok::Colon),
                (".", Tok::Dot),
                ("{", Tok::LBrace),
                ("}", Tok::RBrace),
                ("[", Tok::LBracket),
                ("]", Tok::RBracket),
                ("(", Tok::LParen),
                (")", Tok::RParen),
                ("^", Tok::Caret),
                ("#", Tok::Hash),
            ],
            Mode::Target => &[
                ("::", Tok::DColon),
                ("-:>", Tok::IrrArrow),
                ("->", Tok::Arrow),
                ("[[", Tok::LIrr),
                ("]]", Tok::RIrr),
                (".1", Tok::Proj1),
                (".2", Tok::Proj2),
                (":", Tok::Colon),
                (".", Tok::Dot),
                ("{", Tok::LBrace),
                ("}", Tok::RBrace),
                ("[", Tok::LBracket),
                ("]", Tok::RBracket),
                ("(", Tok::LParen),
                (")", Tok::RParen),
                ("*", Tok::Star),
                ("<", Tok::Lt),
                (">", Tok::Gt),
                (",", Tok::Comma),
            ],
        };
        for (text, tok) in fixed {
            if self.starts_with(text) {
                for _ in 0..text.chars().count() {
                    self.bump();
                }
                return Ok(Token { tok: tok.clone(), span: Span::new(start, self.pos()) });
            }
        }
        if c.is_ascii_digit() {
            let mut n: u32 = 0;
            while let Some(d) = self.peek(0).and_then(|c| c.to_digit(10)) {
                n = n.saturating_mul(10).saturating_add(d);
                self.bump();
            }
            return Ok(Token { tok: Tok::Nat(n), span: Span::new(start, self.pos()) });
        }
        if c.is_ascii_alphabetic() {
            let s = self.ident();
            let tok = match s.as_str() {
                "type" => Tok::Type,
                "sort" if self.mode == Mode::Source => Tok::Sort,
                _ => Tok::Ident(s),
            };
            return Ok(Token { tok, span: Span::new(start, self.pos()) });
        }
        if SYMBOL_START.contains(c) {
            let mut s = String::new();
            while let Some(c) = self.peek(0) {
                if !SYMBOL_CONT.contains(c) {
                    break;
                }
                s.push(c);
                self.bump();
            }
            return Ok(Token { tok: Tok::Ident(s), span: Span::new(start, self.pos()) });
        }
        self.bump();
        Err(LexError { span: Span::new(start, self.pos()), message: format!("unexpected character `{c}`") })
    }
}

pub fn tokenize(src: &str, mode: Mode) -> Result<Vec<Token>, LexError> {
    let mut lx = Lexer { chars: src.chars().collect(), i: 0, line: 1, col: 1, mode, _src: src };
    let mut out = Vec::new();
    loop {
        let t = lx.next()?;
        let eof = t.tok == Tok::Eof;
        out.push(t);
        if eof {
            return Ok(out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str, mode: Mode) -> Vec<Tok> {
        tokenize(s, mode).unwrap().into_iter().map(|t| t.tok).collect()
    }

    fn id(s: &str) -> Tok {
        Tok::Ident(s.into())
    }

    #[test]
    fn source_tokens() {
        assert_eq!(
            toks("s :: even -> odd ^ odd->even.", Mode::Source),
            vec![id("s"), Tok::DColon, id("even"), Tok::Arrow, id("odd"), Tok::Caret, id("odd"), Tok::Arrow, id("even"), Tok::Dot, Tok::Eof]
        );
        assert_eq!(
            toks("double* << double. dbl/s ev-app E1' <- =>", Mode::Source),
            vec![id("double*"), Tok::LtLt, id("double"), Tok::Dot, id("dbl/s"), id("ev-app"), id("E1'"), Tok::BackArrow, id("=>"), Tok::Eof]
        );
    }

    #[test]
    fn comments_and_pragmas() {
        assert_eq!(
            toks("% a comment\n%{ block\n }% %infix right 10 => .", Mode::Source),
            vec![Tok::Infix, id("right"), Tok::Nat(10), id("=>"), Tok::Dot, Tok::Eof]
        );
        assert!(tokenize("%{ open", Mode::Source).is_err());
    }

    #[test]
    fn target_tokens() {
        assert_eq!(
            toks("s^.1 z [[ even^/i ]] <a, b> <> (A) * (B) -:> 1", Mode::Target),
            vec![
                id("s^"),
                Tok::Proj1,
                id("z"),
                Tok::LIrr,
                id("even^/i"),
                Tok::RIrr,
                Tok::Lt,
                id("a"),
                Tok::Comma,
                id("b"),
                Tok::Gt,
                Tok::Lt,
                Tok::Gt,
                Tok::LParen,
                id("A"),
                Tok::RParen,
                Tok::Star,
                Tok::LParen,
                id("B"),
                Tok::RParen,
                Tok::IrrArrow,
                Tok::Nat(1),
                Tok::Eof
            ]
        );
    }

    #[test]
    fn spans_are_one_based() {
        let t = tokenize("a\n  bc", Mode::Source).unwrap();
        assert_eq!(t[1].span.start, Pos { line: 2, col: 3 });
        assert_eq!(t[1].span.end, Pos { line: 2, col: 5 });
    }
}
