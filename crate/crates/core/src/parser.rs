//! Parser for the source syntax.
//!
//! Declarations are first parsed into a generic expression tree, then
//! resolved into terms, types, kinds and unannotated sorts once the
//! signature so far is known.

use std::collections::HashMap;

use crate::diag::{Diagnostic, Span};
use crate::lexer::{tokenize, Mode, Tok, Token};
use crate::signature::{Assoc, Signature};
use crate::syntax::{AtomSort, AtomType, Atomic, Head, Hint, Kind, Name, Normal, Syntax, Type};

#[derive(Clone, Debug, PartialEq)]
pub enum ExprKind {
    Id(String),
    Type,
    Sort,
    Top,
    App(Box<Expr>, Box<Expr>),
    /// `{x:A} B` (`sort == false`) or `{x::S} T` (`sort == true`).
    Pi { name: String, sort: bool, dom: Box<Expr>, body: Box<Expr> },
    Lam(String, Box<Expr>),
    Arrow(Box<Expr>, Box<Expr>),
    Inter(Box<Expr>, Box<Expr>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

impl Expr {
    fn new(kind: ExprKind, span: Span) -> Expr {
        Expr { kind, span }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum RawDeclKind {
    /// `c : E.` where `E` is a kind or a type.
    Typed(String, Expr),
    /// `s << a [:: L].`
    Refine(String, String, Option<Expr>),
    /// `c :: S.`
    Sorted(String, Expr),
    /// `s1 <: s2.`
    Sub(String, String),
    /// `%infix right p op.`
    Infix(String, u32),
    /// `%check M :: S.`
    Query(Expr, Expr),
}

#[derive(Clone, Debug, PartialEq)]
pub struct RawDecl {
    pub kind: RawDeclKind,
    pub span: Span,
}

/// A sort whose Π domains still lack their type annotation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RawSort {
    Atom(AtomSort),
    Pi(Hint, Box<RawSort>, Box<RawSort>),
    Top,
    Inter(Box<RawSort>, Box<RawSort>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RawClass {
    Sort,
    Pi(Hint, Box<RawSort>, Box<RawClass>),
    Top,
    Inter(Box<RawClass>, Box<RawClass>),
}

impl Syntax for RawSort {
    fn try_map_terms<E, F>(&self, depth: u32, f: &mut F) -> Result<Self, E>
    where
        F: FnMut(&Normal, u32) -> Result<Normal, E>,
    {
        Ok(match self {
            RawSort::Atom(q) => RawSort::Atom(q.try_map_terms(depth, f)?),
            RawSort::Pi(h, s, t) => {
                RawSort::Pi(h.clone(), Box::new(s.try_map_terms(depth, f)?), Box::new(t.try_map_terms(depth + 1, f)?))
            }
            RawSort::Top => RawSort::Top,
            RawSort::Inter(s1, s2) => {
                RawSort::Inter(Box::new(s1.try_map_terms(depth, f)?), Box::new(s2.try_map_terms(depth, f)?))
            }
        })
    }

    fn visit_terms<F: FnMut(&Normal, u32)>(&self, depth: u32, f: &mut F) {
        match self {
            RawSort::Atom(q) => q.visit_terms(depth, f),
            RawSort::Pi(_, s, t) => {
                s.visit_terms(depth, f);
                t.visit_terms(depth + 1, f);
            }
            RawSort::Top => {}
            RawSort::Inter(s1, s2) => {
                s1.visit_terms(depth, f);
                s2.visit_terms(depth, f);
            }
        }
    }
}

impl Syntax for RawClass {
    fn try_map_terms<E, F>(&self, depth: u32, f: &mut F) -> Result<Self, E>
    where
        F: FnMut(&Normal, u32) -> Result<Normal, E>,
    {
        Ok(match self {
            RawClass::Sort => RawClass::Sort,
            RawClass::Pi(h, s, l) => {
                RawClass::Pi(h.clone(), Box::new(s.try_map_terms(depth, f)?), Box::new(l.try_map_terms(depth + 1, f)?))
            }
            RawClass::Top => RawClass::Top,
            RawClass::Inter(l1, l2) => {
                RawClass::Inter(Box::new(l1.try_map_terms(depth, f)?), Box::new(l2.try_map_terms(depth, f)?))
            }
        })
    }

    fn visit_terms<F: FnMut(&Normal, u32)>(&self, depth: u32, f: &mut F) {
        match self {
            RawClass::Sort | RawClass::Top => {}
            RawClass::Pi(_, s, l) => {
                s.visit_terms(depth, f);
                l.visit_terms(depth + 1, f);
            }
            RawClass::Inter(l1, l2) => {
                l1.visit_terms(depth, f);
                l2.visit_terms(depth, f);
            }
        }
    }
}

struct Parser {
    toks: Vec<Token>,
    i: usize,
    infix: HashMap<String, u32>,
}

type PResult<T> = Result<T, Diagnostic>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.i].tok
    }


    fn span(&self) -> Span {
        self.toks[self.i].span
    }

    fn prev_span(&self) -> Span {
        self.toks[self.i.saturating_sub(1)].span
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.i].clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> PResult<Span> {
        if *self.peek() == tok {
            Ok(self.bump().span)
        } else {
            Err(Diagnostic::parse(self.span(), format!("expected {what}, found {}", self.peek())))
        }
    }

    fn ident(&mut self, what: &str) -> PResult<(String, Span)> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                let sp = self.bump().span;
                Ok((s, sp))
            }
            t => Err(Diagnostic::parse(self.span(), format!("expected {what}, found {t}"))),
        }
    }

    fn is_infix(&self, t: &Tok) -> Option<u32> {
        match t {
            Tok::Ident(s) => self.infix.get(s).copied(),
            _ => None,
        }
    }

    fn decl(&mut self) -> PResult<RawDecl> {
        let start = self.span();
        if *self.peek() == Tok::Infix {
            self.bump();
            let (assoc, asp) = self.ident("associativity")?;
            if assoc != "right" {
                return Err(Diagnostic::parse(asp, format!("only right-associative infix operators are supported, found `{assoc}`")));
            }
            let prec = match self.peek().clone() {
                Tok::Nat(n) => {
                    self.bump();
                    n
                }
                t => return Err(Diagnostic::parse(self.span(), format!("expected precedence, found {t}"))),
            };
            let (op, _) = self.ident("operator name")?;
            self.end_decl()?;
            self.infix.insert(op.clone(), prec);
            return Ok(RawDecl { kind: RawDeclKind::Infix(op, prec), span: start.to(self.prev_span()) });
        }
        if *self.peek() == Tok::Query {
            self.bump();
            let m = self.expr()?;
            if *self.peek() != Tok::DColon {
                return Err(Diagnostic::parse(self.span(), format!("expected `::` in `%check`, found {}", self.peek())));
            }
            self.bump();
            let s = self.expr()?;
            self.end_decl()?;
            return Ok(RawDecl { kind: RawDeclKind::Query(m, s), span: start.to(self.prev_span()) });
        }
        let (name, _) = self.ident("declaration")?;
        let kind = match self.peek() {
            Tok::Colon => {
                self.bump();
                RawDeclKind::Typed(name, self.expr()?)
            }
            Tok::DColon => {
                self.bump();
                RawDeclKind::Sorted(name, self.expr()?)
            }
            Tok::LtLt => {
                self.bump();
                let (a, _) = self.ident("refined type family")?;
                let class = if *self.peek() == Tok::DColon {
                    self.bump();
                    Some(self.expr()?)
                } else {
                    None
                };
                RawDeclKind::Refine(name, a, class)
            }
            Tok::LtColon => {
                self.bump();
                let (s2, _) = self.ident("sort family")?;
                RawDeclKind::Sub(name, s2)
            }
            t => {
                return Err(Diagnostic::parse(self.span(), format!("expected `:`, `::`, `<<` or `<:` after declared name, found {t}")))
            }
        };
        self.end_decl()?;
        Ok(RawDecl { kind, span: start.to(self.prev_span()) })
    }

    fn end_decl(&mut self) -> PResult<()> {
        if *self.peek() == Tok::Dot {
            self.bump();
            Ok(())
        } else {
            Err(Diagnostic::parse(self.span(), format!("expected `.` at end of declaration, found {}", self.peek())))
        }
    }

    /// Loosest level: `^`, left-associative.
    fn expr(&mut self) -> PResult<Expr> {
        let mut lhs = self.arrow()?;
        while *self.peek() == Tok::Caret {
            self.bump();
            let rhs = self.arrow()?;
            let sp = lhs.span.to(rhs.span);
            lhs = Expr::new(ExprKind::Inter(Box::new(lhs), Box::new(rhs)), sp);
        }
        Ok(lhs)
    }

    fn binder(&mut self) -> PResult<Expr> {
        let start = self.span();
        match self.peek() {
            Tok::LBrace => {
                self.bump();
                let (name, _) = self.ident("bound variable")?;
                let sort = match self.peek() {
                    Tok::Colon => false,
                    Tok::DColon => true,
                    t => return Err(Diagnostic::parse(self.span(), format!("expected `:` or `::` in binder, found {t}"))),
                };
                self.bump();
                let dom = self.expr()?;
                self.expect(Tok::RBrace, "`}`")?;
                let body = self.expr()?;
                let sp = start.to(body.span);
                Ok(Expr::new(ExprKind::Pi { name, sort, dom: Box::new(dom), body: Box::new(body) }, sp))
            }
            _ => {
                self.expect(Tok::LBracket, "`[`")?;
                let (name, _) = self.ident("bound variable")?;
                self.expect(Tok::RBracket, "`]`")?;
                let body = self.expr()?;
                let sp = start.to(body.span);
                Ok(Expr::new(ExprKind::Lam(name, Box::new(body)), sp))
            }
        }
    }

    /// `->` (right) and `<-` (left); the two may not be mixed unparenthesized.
    fn arrow(&mut self) -> PResult<Expr> {
        if matches!(self.peek(), Tok::LBrace | Tok::LBracket) {
            return self.binder();
        }
        let lhs = self.infix_expr(0)?;
        match self.peek() {
            Tok::Arrow => {
                self.bump();
                let rhs = self.arrow()?;
                let sp = lhs.span.to(rhs.span);
                Ok(Expr::new(ExprKind::Arrow(Box::new(lhs), Box::new(rhs)), sp))
            }
            Tok::BackArrow => {
                let mut acc = lhs;
                while *self.peek() == Tok::BackArrow {
                    self.bump();
                    let rhs = if matches!(self.peek(), Tok::LBrace | Tok::LBracket) { self.binder()? } else { self.infix_expr(0)? };
                    let sp = acc.span.to(rhs.span);
                    acc = Expr::new(ExprKind::Arrow(Box::new(rhs), Box::new(acc)), sp);
                }
                if *self.peek() == Tok::Arrow {
                    return Err(Diagnostic::parse(self.span(), "cannot mix `->` and `<-` without parentheses"));
                }
                Ok(acc)
            }
            _ => Ok(lhs),
        }
    }

    /// User infix operators by precedence climbing; all are right-associative.
    fn infix_expr(&mut self, min_prec: u32) -> PResult<Expr> {
        let mut lhs = self.app()?;
        while let Some(prec) = self.is_infix(self.peek()) {
            if prec < min_prec {
                break;
            }
            let op_tok = self.bump();
            let Tok::Ident(op) = op_tok.tok else { unreachable!() };
            let rhs = self.infix_expr(prec)?;
            let sp = lhs.span.to(rhs.span);
            let f = Expr::new(ExprKind::Id(op), op_tok.span);
            let partial = Expr::new(ExprKind::App(Box::new(f), Box::new(lhs)), sp);
            lhs = Expr::new(ExprKind::App(Box::new(partial), Box::new(rhs)), sp);
        }
        Ok(lhs)
    }

    fn app(&mut self) -> PResult<Expr> {
        let mut head = self.atom()?;
        loop {
            match self.peek() {
                Tok::LBrace | Tok::LBracket => {
                    let arg = self.binder()?;
                    let sp = head.span.to(arg.span);
                    return Ok(Expr::new(ExprKind::App(Box::new(head), Box::new(arg)), sp));
                }
                Tok::Ident(_) | Tok::LParen | Tok::Hash | Tok::Type | Tok::Sort if self.is_infix(self.peek()).is_none() => {
                    let arg = self.atom()?;
                    let sp = head.span.to(arg.span);
                    head = Expr::new(ExprKind::App(Box::new(head), Box::new(arg)), sp);
                }
                _ => return Ok(head),
            }
        }
    }

    fn atom(&mut self) -> PResult<Expr> {
        let sp = self.span();
        match self.peek().clone() {
            Tok::Ident(s) => {
                if self.infix.contains_key(&s) {
                    return Err(Diagnostic::parse(sp, format!("infix operator `{s}` used without a left operand")));
                }
                self.bump();
                Ok(Expr::new(ExprKind::Id(s), sp))
            }
            Tok::Type => {
                self.bump();
                Ok(Expr::new(ExprKind::Type, sp))
            }
            Tok::Sort => {
                self.bump();
                Ok(Expr::new(ExprKind::Sort, sp))
            }
            Tok::Hash => {
                self.bump();
                Ok(Expr::new(ExprKind::Top, sp))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                let end = self.expect(Tok::RParen, "`)`")?;
                Ok(Expr { kind: e.kind, span: sp.to(end) })
            }
            t => Err(Diagnostic::parse(sp, format!("expected an expression, found {t}"))),
        }
    }
}

fn lex(text: &str) -> PResult<Vec<Token>> {
    tokenize(text, Mode::Source).map_err(|e| Diagnostic::parse(e.span, e.message))
}

/// Parses a whole signature into raw declarations.
pub fn parse_signature(text: &str) -> PResult<Vec<RawDecl>> {
    let mut p = Parser { toks: lex(text)?, i: 0, infix: HashMap::new() };
    let mut out = Vec::new();
    while *p.peek() != Tok::Eof {
        out.push(p.decl()?);
    }
    Ok(out)
}

/// Parses a standalone expression, using the fixities recorded in `sig`.
pub fn parse_expr(text: &str, sig: &Signature) -> PResult<Expr> {
    let infix = sig.fixities().iter().map(|(k, (_, p))| (k.to_string(), *p)).collect();
    let mut p = Parser { toks: lex(text)?, i: 0, infix };
    let e = p.expr()?;
    if *p.peek() != Tok::Eof {
        return Err(Diagnostic::parse(p.span(), format!("unexpected {} after expression", p.peek())));
    }
    Ok(e)
}

pub fn record_fixity(sig: &mut Signature, op: &str, prec: u32) {
    sig.set_fixity(Name::new(op), Assoc::Right, prec);
}

/// Name resolution against a signature, a set of free variables, and a
/// stack of bound names. Arrow binders push `""`, which never resolves.
pub struct Resolver<'s> {
    pub sig: &'s Signature,
    pub free: Vec<Name>,
    bound: Vec<String>,
}

fn looks_implicit(s: &str) -> bool {
    s.chars().next().is_some_and(|c| c.is_ascii_uppercase())
}

impl<'s> Resolver<'s> {
    pub fn new(sig: &'s Signature, free: Vec<Name>) -> Resolver<'s> {
        Resolver { sig, free, bound: Vec::new() }
    }

    fn unbound(&self, s: &str, span: Span, what: &str) -> Diagnostic {
        if looks_implicit(s) {
            Diagnostic::check(
                span,
                format!("`{s}` is not bound; implicit quantification is not supported, bind it explicitly with `{{{s}:...}}` or `{{{s}::...}}`"),
            )
        } else {
            Diagnostic::check(span, format!("unknown {what} `{s}`"))
        }
    }

    fn with<T>(&mut self, name: &str, f: impl FnOnce(&mut Self) -> PResult<T>) -> PResult<T> {
        self.bound.push(name.to_string());
        let r = f(self);
        self.bound.pop();
        r
    }

    fn spine<'e>(&self, e: &'e Expr) -> (&'e Expr, Vec<&'e Expr>) {
        let mut args = Vec::new();
        let mut cur = e;
        while let ExprKind::App(f, a) = &cur.kind {
            args.push(&**a);
            cur = f;
        }
        args.reverse();
        (cur, args)
    }

    pub fn term(&mut self, e: &Expr) -> PResult<Normal> {
        match &e.kind {
            ExprKind::Lam(x, body) => {
                let b = self.with(x, |r| r.term(body))?;
                Ok(Normal::Lam(Hint::new(x), Box::new(b)))
            }
            ExprKind::Id(_) | ExprKind::App(..) => {
                let (head, args) = self.spine(e);
                let ExprKind::Id(s) = &head.kind else {
                    return Err(Diagnostic::check(head.span, "application head must be a constant or variable; β-redexes are not canonical"));
                };
                let h = self.term_head(s, head.span)?;
                let spine = args.into_iter().map(|a| self.term(a)).collect::<PResult<Vec<_>>>()?;
                Ok(Normal::Atom(Atomic { head: h, spine }))
            }
            _ => Err(Diagnostic::check(e.span, "expected a term")),
        }
    }

    fn term_head(&self, s: &str, span: Span) -> PResult<Head> {
        if let Some(i) = self.bound.iter().rev().position(|b| b == s) {
            return Ok(Head::Bound(i as u32));
        }
        let n = Name::new(s);
        if self.free.contains(&n) {
            return Ok(Head::Var(n));
        }
        if self.sig.const_type(&n).is_some() {
            return Ok(Head::Const(n));
        }
        Err(self.unbound(s, span, "constant"))
    }

    fn family_app(&mut self, e: &Expr, sorts: bool) -> PResult<(Name, Vec<Normal>)> {
        let (head, args) = self.spine(e);
        let ExprKind::Id(s) = &head.kind else {
            return Err(Diagnostic::check(head.span, if sorts { "expected a sort" } else { "expected a type" }));
        };
        let n = Name::new(s);
        let known = if sorts { self.sig.sort_fam(&n).is_some() } else { self.sig.fam_kind(&n).is_some() };
        if !known {
            if self.bound.iter().any(|b| b == s) || self.free.contains(&n) {
                return Err(Diagnostic::check(head.span, format!("variable `{s}` used where a {} family is expected", if sorts { "sort" } else { "type" })));
            }
            return Err(self.unbound(s, head.span, if sorts { "sort family" } else { "type family" }));
        }
        let spine = args.into_iter().map(|a| self.term(a)).collect::<PResult<Vec<_>>>()?;
        Ok((n, spine))
    }

    pub fn ty(&mut self, e: &Expr) -> PResult<Type> {
        match &e.kind {
            ExprKind::Pi { name, sort: false, dom, body } => {
                let a = self.ty(dom)?;
                let b = self.with(name, |r| r.ty(body))?;
                Ok(Type::Pi(Hint::new(name), Box::new(a), Box::new(b)))
            }
            ExprKind::Arrow(dom, cod) => {
                let a = self.ty(dom)?;
                let b = self.with("", |r| r.ty(cod))?;
                Ok(Type::Pi(Hint::anon(), Box::new(a), Box::new(b)))
            }
            ExprKind::Id(_) | ExprKind::App(..) => {
                let (fam, spine) = self.family_app(e, false)?;
                Ok(Type::Atom(AtomType { fam, spine }))
            }
            ExprKind::Pi { sort: true, .. } => Err(Diagnostic::check(e.span, "sort binder `{x::S}` used inside a type; write `{x:A}`")),
            _ => Err(Diagnostic::check(e.span, "expected a type")),
        }
    }

    pub fn kind(&mut self, e: &Expr) -> PResult<Kind> {
        match &e.kind {
            ExprKind::Type => Ok(Kind::Type),
            ExprKind::Pi { name, sort: false, dom, body } => {
                let a = self.ty(dom)?;
                let k = self.with(name, |r| r.kind(body))?;
                Ok(Kind::Pi(Hint::new(name), Box::new(a), Box::new(k)))
            }
            ExprKind::Arrow(dom, cod) => {
                let a = self.ty(dom)?;
                let k = self.with("", |r| r.kind(cod))?;
                Ok(Kind::Pi(Hint::anon(), Box::new(a), Box::new(k)))
            }
            _ => Err(Diagnostic::check(e.span, "expected a kind")),
        }
    }

    pub fn sort(&mut self, e: &Expr) -> PResult<RawSort> {
        match &e.kind {
            ExprKind::Top => Ok(RawSort::Top),
            ExprKind::Inter(a, b) => Ok(RawSort::Inter(Box::new(self.sort(a)?), Box::new(self.sort(b)?))),
            ExprKind::Pi { name, sort: true, dom, body } => {
                let s = self.sort(dom)?;
                let t = self.with(name, |r| r.sort(body))?;
                Ok(RawSort::Pi(Hint::new(name), Box::new(s), Box::new(t)))
            }
            ExprKind::Arrow(dom, cod) => {
                let s = self.sort(dom)?;
                let t = self.with("", |r| r.sort(cod))?;
                Ok(RawSort::Pi(Hint::anon(), Box::new(s), Box::new(t)))
            }
            ExprKind::Id(_) | ExprKind::App(..) => {
                let (fam, spine) = self.family_app(e, true)?;
                Ok(RawSort::Atom(AtomSort { fam, spine }))
            }
            ExprKind::Pi { sort: false, .. } => Err(Diagnostic::check(e.span, "type binder `{x:A}` used inside a sort; write `{x::S}`")),
            _ => Err(Diagnostic::check(e.span, "expected a sort")),
        }
    }

    pub fn class(&mut self, e: &Expr) -> PResult<RawClass> {
        match &e.kind {
            ExprKind::Sort => Ok(RawClass::Sort),
            ExprKind::Top => Ok(RawClass::Top),
            ExprKind::Inter(a, b) => Ok(RawClass::Inter(Box::new(self.class(a)?), Box::new(self.class(b)?))),
            ExprKind::Pi { name, sort: true, dom, body } => {
                let s = self.sort(dom)?;
                let l = self.with(name, |r| r.class(body))?;
                Ok(RawClass::Pi(Hint::new(name), Box::new(s), Box::new(l)))
            }
            ExprKind::Arrow(dom, cod) => {
                let s = self.sort(dom)?;
                let l = self.with("", |r| r.class(cod))?;
                Ok(RawClass::Pi(Hint::anon(), Box::new(s), Box::new(l)))
            }
            _ => Err(Diagnostic::check(e.span, "expected a class")),
        }
    }
}

/// True when the expression's final codomain is `type`.
pub fn is_kind_expr(e: &Expr) -> bool {
    match &e.kind {
        ExprKind::Type => true,
        ExprKind::Pi { body, .. } => is_kind_expr(body),
        ExprKind::Arrow(_, cod) => is_kind_expr(cod),
        _ => false,
    }
}
