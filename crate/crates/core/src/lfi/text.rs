//! Concrete syntax for target signatures (`.lfi`).
//!
//! ```text
//! decl  ::= id : tk .
//! tk    ::= {x:ty} tk | {x::ty} tk | type | prod [(-> | -:>) tk]
//! prod  ::= tatom [* prod]
//! tatom ::= 1 | (ty) | id {arg}
//! term  ::= [x] term | post {arg}
//! post  ::= prim {.1 | .2}
//! prim  ::= id | (term) | <> | <term, term>
//! arg   ::= post | [[ term ]]
//! ```
//!
//! An identifier in term position is a bound variable, a context
//! variable, or else a constant.

use std::collections::BTreeSet;

use crate::diag::{Diagnostic, Span};
use crate::lexer::{tokenize, Mode, Tok, Token};
use crate::syntax::{fresh_name, Hint, Name};

use super::{
    constants, free_vars, mentions_bound, Arg, Elim, FamHead, LAtom, LAtomType, LCtx, LDecl, LHead, LKind, LSig,
    LTerm, LType,
};

// ---------------------------------------------------------------------------
// Printing

pub struct Names {
    stack: Vec<Name>,
    taken: BTreeSet<Name>,
}

impl Names {
    fn bind(&mut self, hint: &Name) -> Name {
        let hint = if hint.as_str().contains('%') { Name::new("x") } else { hint.clone() };
        let (stack, taken) = (&self.stack, &self.taken);
        let n = fresh_name(&hint, |n| stack.contains(n) || taken.contains(n));
        self.stack.push(n.clone());
        n
    }

    fn unbind(&mut self) {
        self.stack.pop();
    }

    fn lookup(&self, i: u32) -> String {
        let len = self.stack.len();
        if (i as usize) < len {
            self.stack[len - 1 - i as usize].to_string()
        } else {
            format!("#{i}")
        }
    }
}

/// Target trees the printer can render.
pub trait LShow {
    fn collect_names(&self, out: &mut BTreeSet<Name>);
    fn render(&self, names: &mut Names) -> String;
}

/// Renders `t` with `outer` in scope as named variables.
pub fn show_in<T: LShow>(outer: &[Name], t: &T) -> String {
    let mut taken: BTreeSet<Name> = outer.iter().cloned().collect();
    t.collect_names(&mut taken);
    t.render(&mut Names { stack: Vec::new(), taken })
}

pub fn show<T: LShow>(t: &T) -> String {
    show_in(&[], t)
}

fn head(h: &LHead, names: &Names) -> String {
    match h {
        LHead::Const(c) | LHead::Var(c) => c.to_string(),
        LHead::Bound(i) => names.lookup(*i),
    }
}

/// `arg`: whether the term sits in argument position.
fn term(n: &LTerm, names: &mut Names, arg: bool) -> String {
    match n {
        LTerm::Lam(h, body) => {
            let x = names.bind(h.name());
            let s = format!("[{x}] {}", term(body, names, false));
            names.unbind();
            if arg {
                format!("({s})")
            } else {
                s
            }
        }
        LTerm::Pair(a, b) => format!("<{}, {}>", term(a, names, false), term(b, names, false)),
        LTerm::Unit => "<>".into(),
        LTerm::Atom(r) => {
            let (s, spaced) = atom(r, names);
            if arg && spaced {
                format!("({s})")
            } else {
                s
            }
        }
    }
}

/// The rendering, and whether it ends in an application.
fn atom(r: &LAtom, names: &mut Names) -> (String, bool) {
    let mut s = head(&r.head, names);
    let mut spaced = false;
    for e in &r.spine {
        match e {
            Elim::App(m) => {
                s = format!("{s} {}", term(m, names, true));
                spaced = true;
            }
            Elim::Irr(m) => {
                s = format!("{s} [[ {} ]]", term(m, names, false));
                spaced = true;
            }
            Elim::Fst | Elim::Snd => {
                if spaced {
                    s = format!("({s})");
                    spaced = false;
                }
                s.push_str(if *e == Elim::Fst { ".1" } else { ".2" });
            }
        }
    }
    (s, spaced)
}

fn atom_type(p: &LAtomType, names: &mut Names) -> String {
    let mut s = match &p.fam {
        FamHead::Const(c) | FamHead::Hole(c) => c.to_string(),
    };
    for a in &p.args {
        match a {
            Arg::Rel(m) => s = format!("{s} {}", term(m, names, true)),
            Arg::Irr(m) => s = format!("{s} [[ {} ]]", term(m, names, false)),
        }
    }
    s
}

/// `{x:A} rest`, `A -> rest`, `{x::A} rest` or `A -:> rest`.
fn binder(h: &Hint, dom: &LType, irr: bool, dep: bool, names: &mut Names, rest: impl FnOnce(&mut Names) -> String) -> String {
    let d = ty(dom, names, !dep);
    let x = if dep {
        names.bind(h.name())
    } else {
        names.stack.push(Name::new("_"));
        Name::new("_")
    };
    let r = rest(names);
    names.unbind();
    match (dep, irr) {
        (true, false) => format!("{{{x}:{d}}} {r}"),
        (true, true) => format!("{{{x}::{d}}} {r}"),
        (false, false) => format!("{d} -> {r}"),
        (false, true) => format!("{d} -:> {r}"),
    }
}

/// `dom`: whether the type is an arrow domain.
fn ty(a: &LType, names: &mut Names, dom: bool) -> String {
    let s = match a {
        LType::Atom(p) => return atom_type(p, names),
        LType::Unit => return "1".into(),
        LType::Prod(a, b) => return format!("({}) * ({})", ty(a, names, false), ty(b, names, false)),
        LType::Pi(h, a, b) => binder(h, a, false, mentions_bound(&**b, 0), names, |n| ty(b, n, false)),
        LType::IrrPi(h, a, b) => binder(h, a, true, mentions_bound(&**b, 0), names, |n| ty(b, n, false)),
    };
    if dom {
        format!("({s})")
    } else {
        s
    }
}

fn kind(k: &LKind, names: &mut Names) -> String {
    match k {
        LKind::Type => "type".into(),
        LKind::Pi(h, a, k) => binder(h, a, false, mentions_bound(&**k, 0), names, |n| kind(k, n)),
        LKind::IrrPi(h, a, k) => binder(h, a, true, mentions_bound(&**k, 0), names, |n| kind(k, n)),
    }
}

impl LShow for LTerm {
    fn collect_names(&self, out: &mut BTreeSet<Name>) {
        out.extend(constants(self));
        out.extend(free_vars(self));
    }
    fn render(&self, names: &mut Names) -> String {
        term(self, names, false)
    }
}

impl LShow for LAtom {
    fn collect_names(&self, out: &mut BTreeSet<Name>) {
        LTerm::Atom(self.clone()).collect_names(out)
    }
    fn render(&self, names: &mut Names) -> String {
        atom(self, names).0
    }
}

impl LShow for LType {
    fn collect_names(&self, out: &mut BTreeSet<Name>) {
        out.extend(constants(self));
        out.extend(free_vars(self));
    }
    fn render(&self, names: &mut Names) -> String {
        ty(self, names, false)
    }
}

impl LShow for LAtomType {
    fn collect_names(&self, out: &mut BTreeSet<Name>) {
        LType::Atom(self.clone()).collect_names(out)
    }
    fn render(&self, names: &mut Names) -> String {
        atom_type(self, names)
    }
}

impl LShow for LKind {
    fn collect_names(&self, out: &mut BTreeSet<Name>) {
        out.extend(constants(self));
        out.extend(free_vars(self));
    }
    fn render(&self, names: &mut Names) -> String {
        kind(self, names)
    }
}

impl LShow for LDecl {
    fn collect_names(&self, out: &mut BTreeSet<Name>) {
        match self {
            LDecl::Fam(_, k) => k.collect_names(out),
            LDecl::Const(_, a) => a.collect_names(out),
        }
    }
    fn render(&self, names: &mut Names) -> String {
        match self {
            LDecl::Fam(c, k) => format!("{c} : {}.", kind(k, names)),
            LDecl::Const(c, a) => format!("{c} : {}.", ty(a, names, false)),
        }
    }
}

pub fn print_lsig(sig: &LSig) -> String {
    let mut out = String::new();
    for d in sig.decls() {
        out.push_str(&show(d));
        out.push('\n');
    }
    out
}

// ---------------------------------------------------------------------------
// Parsing

type PResult<T> = Result<T, Diagnostic>;

enum Tk {
    Type(LType),
    Kind(LKind),
}

struct Parser<'c> {
    toks: Vec<Token>,
    i: usize,
    ctx: &'c LCtx,
    bound: Vec<String>,
}

impl<'c> Parser<'c> {
    fn new(text: &str, ctx: &'c LCtx) -> PResult<Parser<'c>> {
        let toks = tokenize(text, Mode::Target).map_err(|e| Diagnostic::parse(e.span, e.message))?;
        Ok(Parser { toks, i: 0, ctx, bound: Vec::new() })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.i].tok
    }

    fn span(&self) -> Span {
        self.toks[self.i].span
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
            Err(self.unexpected(what))
        }
    }

    fn unexpected(&self, what: &str) -> Diagnostic {
        Diagnostic::parse(self.span(), format!("expected {what}, found {}", self.peek()))
    }

    fn ident(&mut self, what: &str) -> PResult<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => Err(self.unexpected(what)),
        }
    }

    fn head(&self, x: &str) -> LHead {
        if let Some(i) = self.bound.iter().rev().position(|b| b == x) {
            return LHead::Bound(i as u32);
        }
        let n = Name::new(x);
        if self.ctx.contains(&n) {
            LHead::Var(n)
        } else {
            LHead::Const(n)
        }
    }

    fn under<T>(&mut self, x: &str, f: impl FnOnce(&mut Self) -> PResult<T>) -> PResult<T> {
        self.bound.push(x.to_string());
        let r = f(self);
        self.bound.pop();
        r
    }

    fn starts_arg(&self) -> bool {
        matches!(self.peek(), Tok::Ident(_) | Tok::LParen | Tok::Lt | Tok::LIrr)
    }

    fn term(&mut self) -> PResult<LTerm> {
        if *self.peek() == Tok::LBracket {
            self.bump();
            let x = self.ident("a bound variable")?;
            self.expect(Tok::RBracket, "`]`")?;
            let body = self.under(&x, |p| p.term())?;
            return Ok(LTerm::Lam(Hint::new(&x), Box::new(body)));
        }
        let start = self.span();
        let mut t = self.post()?;
        while self.starts_arg() {
            let e = if *self.peek() == Tok::LIrr {
                self.bump();
                let m = self.term()?;
                self.expect(Tok::RIrr, "`]]`")?;
                Elim::Irr(m)
            } else {
                Elim::App(self.post()?)
            };
            t = match t {
                LTerm::Atom(r) => LTerm::Atom(r.push(e)),
                _ => return Err(Diagnostic::parse(start, "only atomic terms can be applied")),
            };
        }
        Ok(t)
    }

    fn post(&mut self) -> PResult<LTerm> {
        let start = self.span();
        let mut t = self.prim()?;
        while matches!(self.peek(), Tok::Proj1 | Tok::Proj2) {
            let e = if self.bump().tok == Tok::Proj1 { Elim::Fst } else { Elim::Snd };
            t = match t {
                LTerm::Atom(r) => LTerm::Atom(r.push(e)),
                _ => return Err(Diagnostic::parse(start, "only atomic terms can be projected")),
            };
        }
        Ok(t)
    }

    fn prim(&mut self) -> PResult<LTerm> {
        match self.peek().clone() {
            Tok::Ident(x) => {
                self.bump();
                Ok(LTerm::Atom(LAtom::new(self.head(&x))))
            }
            Tok::LParen => {
                self.bump();
                let t = self.term()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(t)
            }
            Tok::Lt => {
                self.bump();
                if *self.peek() == Tok::Gt {
                    self.bump();
                    return Ok(LTerm::Unit);
                }
                let a = self.term()?;
                self.expect(Tok::Comma, "`,`")?;
                let b = self.term()?;
                self.expect(Tok::Gt, "`>`")?;
                Ok(LTerm::pair(a, b))
            }
            _ => Err(self.unexpected("a term")),
        }
    }

    fn tk(&mut self) -> PResult<Tk> {
        match self.peek() {
            Tok::Type => {
                self.bump();
                return Ok(Tk::Kind(LKind::Type));
            }
            Tok::LBrace => {
                self.bump();
                let x = self.ident("a bound variable")?;
                let irr = match self.bump().tok {
                    Tok::Colon => false,
                    Tok::DColon => true,
                    _ => {
                        self.i -= 1;
                        return Err(self.unexpected("`:` or `::`"));
                    }
                };
                let dom = self.ty()?;
                self.expect(Tok::RBrace, "`}`")?;
                let rest = self.under(&x, |p| p.tk())?;
                return Ok(pi(Hint::new(&x), dom, irr, rest));
            }
            _ => {}
        }
        let dom = self.prod()?;
        let irr = match self.peek() {
            Tok::Arrow => false,
            Tok::IrrArrow => true,
            _ => return Ok(Tk::Type(dom)),
        };
        self.bump();
        let rest = self.under("", |p| p.tk())?;
        Ok(pi(Hint::anon(), dom, irr, rest))
    }

    fn ty(&mut self) -> PResult<LType> {
        let start = self.span();
        match self.tk()? {
            Tk::Type(a) => Ok(a),
            Tk::Kind(_) => Err(Diagnostic::parse(start, "expected a type, found a kind")),
        }
    }

    fn prod(&mut self) -> PResult<LType> {
        let a = self.tatom()?;
        if *self.peek() == Tok::Star {
            self.bump();
            return Ok(LType::prod(a, self.prod()?));
        }
        Ok(a)
    }

    fn tatom(&mut self) -> PResult<LType> {
        match self.peek().clone() {
            Tok::Nat(1) => {
                self.bump();
                Ok(LType::Unit)
            }
            Tok::LParen => {
                self.bump();
                let a = self.ty()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(a)
            }
            Tok::Ident(f) => {
                self.bump();
                let mut p = LAtomType::constant(&Name::new(&f));
                while self.starts_arg() {
                    if *self.peek() == Tok::LIrr {
                        self.bump();
                        let m = self.term()?;
                        self.expect(Tok::RIrr, "`]]`")?;
                        p = p.irr(m);
                    } else {
                        p = p.rel(self.post()?);
                    }
                }
                Ok(LType::Atom(p))
            }
            _ => Err(self.unexpected("a type")),
        }
    }

    fn end(&mut self) -> PResult<()> {
        self.expect(Tok::Eof, "end of input").map(|_| ())
    }
}

fn pi(h: Hint, dom: LType, irr: bool, rest: Tk) -> Tk {
    let (d, h) = (Box::new(dom), h);
    match (rest, irr) {
        (Tk::Type(b), false) => Tk::Type(LType::Pi(h, d, Box::new(b))),
        (Tk::Type(b), true) => Tk::Type(LType::IrrPi(h, d, Box::new(b))),
        (Tk::Kind(k), false) => Tk::Kind(LKind::Pi(h, d, Box::new(k))),
        (Tk::Kind(k), true) => Tk::Kind(LKind::IrrPi(h, d, Box::new(k))),
    }
}

/// Parses a target signature. Declarations are not checked.
pub fn parse_lsig(text: &str) -> PResult<LSig> {
    let ctx = LCtx::new();
    let mut p = Parser::new(text, &ctx)?;
    let mut sig = LSig::new();
    while *p.peek() != Tok::Eof {
        let span = p.span();
        let c = Name::new(&p.ident("a declaration")?);
        p.expect(Tok::Colon, "`:`")?;
        let d = match p.tk()? {
            Tk::Type(a) => LDecl::Const(c, a),
            Tk::Kind(k) => LDecl::Fam(c, k),
        };
        p.expect(Tok::Dot, "`.`")?;
        sig.push(d).map_err(|n| Diagnostic::parse(span, format!("`{n}` declared twice")))?;
    }
    Ok(sig)
}

pub fn parse_lterm(ctx: &LCtx, text: &str) -> PResult<LTerm> {
    let mut p = Parser::new(text, ctx)?;
    let t = p.term()?;
    p.end()?;
    Ok(t)
}

pub fn parse_ltype(ctx: &LCtx, text: &str) -> PResult<LType> {
    let mut p = Parser::new(text, ctx)?;
    let t = p.ty()?;
    p.end()?;
    Ok(t)
}

pub fn parse_lkind(ctx: &LCtx, text: &str) -> PResult<LKind> {
    let mut p = Parser::new(text, ctx)?;
    let start = p.span();
    let k = match p.tk()? {
        Tk::Kind(k) => k,
        Tk::Type(_) => return Err(Diagnostic::parse(start, "expected a kind, found a type")),
    };
    p.end()?;
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lfi::Relevance;

    const SIG: &str = "nat : type.
z : nat.
s : nat -> nat.
even : nat -> type.
even^ : {x:nat} even x -> type.
pr : (nat) * ((even z) * (1)).
g : {f:nat -> nat} {p::even (f z)} even (f p) -:> nat.
";

    #[test]
    fn signature_round_trip() {
        let sig = parse_lsig(SIG).unwrap();
        assert_eq!(sig.decls().len(), 7);
        assert!(matches!(sig.decls()[4], LDecl::Fam(..)));
        let printed = print_lsig(&sig);
        assert_eq!(printed, SIG);
        assert!(parse_lsig(&printed).unwrap().alpha_eq(&sig));
    }

    #[test]
    fn terms_round_trip() {
        let ctx = LCtx::new().push(Name::new("p"), LType::Unit, Relevance::Relevant);
        for src in [
            "[x] [y] f x (g y) [[ h x ]]",
            "<p.1, <>>",
            "(f x).2.1",
            "c [[ [x] x ]] ([y] y)",
            "<[x] x, p>",
        ] {
            let t = parse_lterm(&ctx, src).unwrap();
            assert_eq!(show_in(&[Name::new("p")], &t), src);
            assert_eq!(parse_lterm(&ctx, &show_in(&[Name::new("p")], &t)).unwrap(), t);
        }
        let t = parse_lterm(&ctx, "[x] p x").unwrap();
        assert_eq!(t, LTerm::lam("x", LAtom::var(&Name::new("p")).app(LAtom::new(LHead::Bound(0)).into()).into()));
    }

    #[test]
    fn binders_avoid_capture() {
        // [x] x applied under an outer free `x`
        let x = Name::new("x");
        let t = LTerm::lam("x", LAtom::var(&x).app(LAtom::new(LHead::Bound(0)).into()).into());
        assert_eq!(show_in(&[x], &t), "[x1] x x1");
    }

    #[test]
    fn kinds_and_errors() {
        let ctx = LCtx::new();
        assert!(parse_lkind(&ctx, "{x::nat} even x -> type").is_ok());
        assert!(parse_ltype(&ctx, "nat -> type").is_err());
        assert!(parse_lkind(&ctx, "nat").is_err());
        assert!(parse_lterm(&ctx, "([x] x) y").is_err());
        assert!(parse_lterm(&ctx, "<a, b>.1").is_err());
        let e = parse_lsig("a : type. a : type.").unwrap_err();
        assert!(e.message.contains("twice"));
    }
}
