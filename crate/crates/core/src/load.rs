//! Source text to checked signature, one declaration at a time.

use crate::check::{default_class, Checker, TraceEvent};
use crate::diag::{Diagnostic, Span};
use crate::lf::lf_synth_term;
use crate::parser::{is_kind_expr, Expr, parse_expr, parse_signature, RawDecl, RawDeclKind, Resolver};
use crate::signature::{Assoc, Context, Decl, Signature};
use crate::subst::{Subst, DEFAULT_FUEL};
use crate::syntax::{Name, Normal, Sort, Type};

#[derive(Clone, Debug)]
pub struct Options {
    /// Reject a second `c :: S` for the same constant.
    pub strict: bool,
    pub fuel: u64,
    pub trace: bool,
}

impl Default for Options {
    fn default() -> Options {
        Options { strict: false, fuel: DEFAULT_FUEL, trace: false }
    }
}

#[derive(Debug)]
pub struct Loaded {
    pub sig: Signature,
    /// Source span of each entry of `sig.decls()`.
    pub spans: Vec<Span>,
    pub trace: Vec<(usize, TraceEvent)>,
    /// Accepted `%check` directives, in source order.
    pub queries: Vec<Query>,
}

/// `%check M :: S.`, judged against the declarations before it.
#[derive(Clone, Debug)]
pub struct Query {
    pub span: Span,
    pub term: Normal,
    pub sort: Sort,
    pub ty: Type,
}

fn decl_name(raw: &RawDecl) -> &str {
    match &raw.kind {
        RawDeclKind::Typed(n, _) | RawDeclKind::Sorted(n, _) | RawDeclKind::Refine(n, _, _) | RawDeclKind::Sub(n, _) => n,
        RawDeclKind::Infix(n, _) => n,
        RawDeclKind::Query(..) => "%check",
    }
}

/// Resolves and elaborates one raw declaration against `sig`.
pub fn elaborate_decl(ch: &Checker<'_>, raw: &RawDecl) -> Result<Option<Decl>, Diagnostic> {
    let sig = ch.sig;
    let at = |e: crate::check::SortError| Diagnostic::check(raw.span, e.message);
    let mut res = Resolver::new(sig, Vec::new());
    let ctx = Context::new();
    Ok(Some(match &raw.kind {
        RawDeclKind::Infix(..) | RawDeclKind::Query(..) => return Ok(None),
        RawDeclKind::Typed(name, e) if is_kind_expr(e) => Decl::TypeFam(Name::new(name), res.kind(e)?),
        RawDeclKind::Typed(name, e) => Decl::TermConst(Name::new(name), res.ty(e)?),
        RawDeclKind::Refine(s, a, class) => {
            let a = Name::new(a);
            let k = sig
                .fam_kind(&a)
                .ok_or_else(|| Diagnostic::check(raw.span, format!("`{s}` refines undeclared type family `{a}`")))?;
            let l = match class {
                None => default_class(k),
                Some(e) => {
                    let raw_l = res.class(e)?;
                    ch.elaborate_class(&ctx, &raw_l, k).map_err(at)?
                }
            };
            Decl::SortFam(Name::new(s), a, l)
        }
        RawDeclKind::Sorted(c, e) => {
            let c = Name::new(c);
            let a = sig
                .const_type(&c)
                .ok_or_else(|| Diagnostic::check(raw.span, format!("sort declaration for undeclared constant `{c}`")))?;
            let raw_s = res.sort(e)?;
            Decl::ConstRef(c, ch.elaborate_sort(&ctx, &raw_s, a).map_err(at)?)
        }
        RawDeclKind::Sub(s1, s2) => Decl::SubDecl(Name::new(s1), Name::new(s2)),
    }))
}

fn check_query(sig: &Signature, opts: &Options, span: Span, m: &Expr, s: &Expr) -> Result<Query, Diagnostic> {
    let at = |msg: String| Diagnostic::check(span, format!("in `%check`: {msg}"));
    let mut res = Resolver::new(sig, Vec::new());
    let term = res.term(m)?;
    let Normal::Atom(r) = &term else {
        return Err(at("the term must be atomic".into()));
    };
    let ty = lf_synth_term(sig, &Vec::new(), r).map_err(|e| at(e.message))?;
    let ch = Checker::with_subst(sig, Subst::new(opts.fuel));
    let ctx = Context::new();
    let raw_s = res.sort(s)?;
    let sort = ch.elaborate_sort(&ctx, &raw_s, &ty).map_err(|e| at(e.message))?;
    ch.acheck(&ctx, &term, &sort)
        .map_err(|e| at(format!("`{}` does not have sort `{}`: {}", ch.show(&ctx, &term), ch.show(&ctx, &sort), e.message)))?;
    Ok(Query { span, term, sort, ty })
}

pub fn load_raw(raws: &[RawDecl], opts: &Options) -> Result<Loaded, Diagnostic> {
    let mut sig = Signature::new();
    let mut spans = Vec::new();
    let mut trace = Vec::new();
    let mut queries = Vec::new();
    for raw in raws {
        if let RawDeclKind::Query(m, s) = &raw.kind {
            queries.push(check_query(&sig, opts, raw.span, m, s)?);
            continue;
        }
        if let RawDeclKind::Infix(op, prec) = &raw.kind {
            sig.set_fixity(Name::new(op), Assoc::Right, *prec);
            continue;
        }
        let decl = {
            let ch = Checker::with_subst(&sig, Subst::new(opts.fuel));
            if opts.trace {
                ch.enable_trace();
            }
            let name = decl_name(raw);
            let wrap = |d: Diagnostic| Diagnostic { message: format!("in `{name}`: {}", d.message), ..d };
            let Some(decl) = elaborate_decl(&ch, raw).map_err(wrap)? else { continue };
            ch.check_decl(&decl, opts.strict).map_err(|e| wrap(Diagnostic::check(raw.span, e.message)))?;
            let idx = sig.decls().len();
            trace.extend(ch.take_trace().into_iter().map(|t| (idx, t)));
            decl
        };
        sig.push(decl);
        spans.push(raw.span);
    }
    Ok(Loaded { sig, spans, trace, queries })
}

pub fn load_str(text: &str, opts: &Options) -> Result<Loaded, Diagnostic> {
    load_raw(&parse_signature(text)?, opts)
}

fn names(ctx: &Context) -> Vec<Name> {
    ctx.entries.iter().map(|e| e.name.clone()).collect()
}

/// Parses a term whose free variables come from `ctx`.
pub fn term(sig: &Signature, ctx: &Context, text: &str) -> Result<Normal, Diagnostic> {
    Resolver::new(sig, names(ctx)).term(&parse_expr(text, sig)?)
}

pub fn ty(sig: &Signature, ctx: &Context, text: &str) -> Result<Type, Diagnostic> {
    Resolver::new(sig, names(ctx)).ty(&parse_expr(text, sig)?)
}

/// Parses and elaborates a sort refining `a`.
pub fn sort(sig: &Signature, ctx: &Context, text: &str, a: &Type) -> Result<Sort, Diagnostic> {
    let raw = Resolver::new(sig, names(ctx)).sort(&parse_expr(text, sig)?)?;
    let span = Span::default();
    Checker::new(sig).elaborate_sort(ctx, &raw, a).map_err(|e| Diagnostic::check(span, e.message))
}

/// Extends `ctx` with `x :: S ⊏ A`, both given as text.
pub fn bind(sig: &Signature, ctx: &Context, x: &str, s: &str, a: &str) -> Result<Context, Diagnostic> {
    let a = ty(sig, ctx, a)?;
    let s = sort(sig, ctx, s, &a)?;
    Ok(ctx.push(Name::new(x), s, a))
}
