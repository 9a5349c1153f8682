//! Canonical-forms LF: bidirectional checking of terms, types and kinds.

use thiserror::Error;

use crate::print::Printer;
use crate::signature::{Decl, LfCtx, Signature};
use crate::subst::{erase_type, Subst, SubstFailure};
use crate::syntax::{fresh_name, open, Atomic, AtomType, Head, Kind, Name, Normal, Type};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LfErrorKind {
    TypeMismatch,
    Unbound,
    NotEtaLong,
    IllFormedKind,
    Duplicate,
    Subst,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{message}")]
pub struct LfError {
    pub kind: LfErrorKind,
    pub message: String,
}

fn err(kind: LfErrorKind, message: impl Into<String>) -> LfError {
    LfError { kind, message: message.into() }
}

impl From<SubstFailure> for LfError {
    fn from(f: SubstFailure) -> LfError {
        err(LfErrorKind::Subst, f.to_string())
    }
}

pub struct Lf<'s> {
    pub sig: &'s Signature,
    pub subst: Subst,
}

fn fresh_in(ctx: &LfCtx, hint: &Name) -> Name {
    fresh_name(hint, |n| ctx.iter().any(|(x, _)| x == n))
}

fn extend(ctx: &LfCtx, x: Name, a: Type) -> LfCtx {
    let mut out = ctx.clone();
    out.push((x, a));
    out
}

impl<'s> Lf<'s> {
    pub fn new(sig: &'s Signature) -> Lf<'s> {
        Lf { sig, subst: Subst::default() }
    }

    fn show<T: crate::print::Show>(&self, t: &T) -> String {
        Printer::new(self.sig).show(t)
    }

    pub fn check_term(&self, ctx: &LfCtx, n: &Normal, a: &Type) -> Result<(), LfError> {
        match (n, a) {
            (Normal::Lam(h, body), Type::Pi(_, dom, cod)) => {
                let x = fresh_in(ctx, h.name());
                self.check_term(&extend(ctx, x.clone(), (**dom).clone()), &open(&**body, &x), &open(&**cod, &x))
            }
            (Normal::Lam(..), Type::Atom(_)) => Err(err(
                LfErrorKind::TypeMismatch,
                format!("λ-abstraction `{}` checked against atomic type `{}`", self.show(n), self.show(a)),
            )),
            (Normal::Atom(r), Type::Atom(p)) => {
                let got = self.synth_term(ctx, r)?;
                if got == *a {
                    Ok(())
                } else {
                    Err(err(
                        LfErrorKind::TypeMismatch,
                        format!("`{}` has type `{}` but `{}` was expected", self.show(n), self.show(&got), self.show(&Type::Atom(p.clone()))),
                    ))
                }
            }
            (Normal::Atom(_), Type::Pi(..)) => Err(err(
                LfErrorKind::NotEtaLong,
                format!("atomic term `{}` checked at function type `{}`; terms must be η-long", self.show(n), self.show(a)),
            )),
        }
    }

    pub fn synth_term(&self, ctx: &LfCtx, r: &Atomic) -> Result<Type, LfError> {
        let mut ty = match &r.head {
            Head::Const(c) => self
                .sig
                .const_type(c)
                .cloned()
                .ok_or_else(|| err(LfErrorKind::Unbound, format!("unknown constant `{c}`")))?,
            Head::Var(x) => ctx
                .iter()
                .rev()
                .find(|(y, _)| y == x)
                .map(|(_, a)| a.clone())
                .ok_or_else(|| err(LfErrorKind::Unbound, format!("unbound variable `{x}`")))?,
            Head::Bound(i) => return Err(err(LfErrorKind::Unbound, format!("escaping bound index {i}"))),
        };
        for (i, arg) in r.spine.iter().enumerate() {
            match ty {
                Type::Pi(_, dom, cod) => {
                    self.check_term(ctx, arg, &dom)?;
                    ty = self.subst.instantiate_at(&*cod, arg, &dom)?;
                }
                Type::Atom(_) => {
                    return Err(err(
                        LfErrorKind::TypeMismatch,
                        format!("`{}` is applied to {} arguments but its type has only {i} arrows", self.show(&Normal::Atom(Atomic { head: r.head.clone(), spine: vec![] })), r.spine.len()),
                    ))
                }
            }
        }
        Ok(ty)
    }

    pub fn synth_atom_type(&self, ctx: &LfCtx, p: &AtomType) -> Result<Kind, LfError> {
        let mut k = self
            .sig
            .fam_kind(&p.fam)
            .cloned()
            .ok_or_else(|| err(LfErrorKind::Unbound, format!("unknown type family `{}`", p.fam)))?;
        for arg in &p.spine {
            match k {
                Kind::Pi(_, dom, rest) => {
                    self.check_term(ctx, arg, &dom)?;
                    k = self.subst.instantiate_at(&*rest, arg, &dom)?;
                }
                Kind::Type => {
                    return Err(err(LfErrorKind::IllFormedKind, format!("type family `{}` applied to too many arguments", p.fam)))
                }
            }
        }
        Ok(k)
    }

    pub fn check_type(&self, ctx: &LfCtx, a: &Type) -> Result<(), LfError> {
        match a {
            Type::Atom(p) => match self.synth_atom_type(ctx, p)? {
                Kind::Type => Ok(()),
                Kind::Pi(..) => Err(err(
                    LfErrorKind::IllFormedKind,
                    format!("type family `{}` is under-applied in `{}`", p.fam, self.show(a)),
                )),
            },
            Type::Pi(h, dom, cod) => {
                self.check_type(ctx, dom)?;
                let x = fresh_in(ctx, h.name());
                self.check_type(&extend(ctx, x.clone(), (**dom).clone()), &open(&**cod, &x))
            }
        }
    }

    pub fn check_kind(&self, ctx: &LfCtx, k: &Kind) -> Result<(), LfError> {
        match k {
            Kind::Type => Ok(()),
            Kind::Pi(h, dom, rest) => {
                self.check_type(ctx, dom)?;
                let x = fresh_in(ctx, h.name());
                self.check_kind(&extend(ctx, x.clone(), (**dom).clone()), &open(&**rest, &x))
            }
        }
    }

    pub fn check_decl(&self, d: &Decl) -> Result<(), LfError> {
        match d {
            Decl::TypeFam(a, k) => {
                if self.sig.fam_kind(a).is_some() {
                    return Err(err(LfErrorKind::Duplicate, format!("type family `{a}` declared twice")));
                }
                self.check_kind(&vec![], k)
            }
            Decl::TermConst(c, t) => {
                if self.sig.const_type(c).is_some() {
                    return Err(err(LfErrorKind::Duplicate, format!("constant `{c}` declared twice")));
                }
                self.check_type(&vec![], t)
            }
            _ => Ok(()),
        }
    }
}

/// Checks the LF part of `sig` declaration by declaration.
pub fn lf_check_sig(sig: &Signature) -> Result<(), LfError> {
    let mut acc = Signature::new();
    for d in sig.erase().decls() {
        Lf::new(&acc).check_decl(d)?;
        acc.push(d.clone());
    }
    Ok(())
}

pub fn lf_check_term(sig: &Signature, ctx: &LfCtx, n: &Normal, a: &Type) -> Result<(), LfError> {
    Lf::new(sig).check_term(ctx, n, a)
}

pub fn lf_synth_term(sig: &Signature, ctx: &LfCtx, r: &Atomic) -> Result<Type, LfError> {
    Lf::new(sig).synth_term(ctx, r)
}

pub fn lf_check_type(sig: &Signature, ctx: &LfCtx, a: &Type) -> Result<(), LfError> {
    Lf::new(sig).check_type(ctx, a)
}

pub fn lf_check_kind(sig: &Signature, ctx: &LfCtx, k: &Kind) -> Result<(), LfError> {
    Lf::new(sig).check_kind(ctx, k)
}

/// The simple type of a constant, when declared.
pub fn const_simple_type(sig: &Signature, c: &Name) -> Option<crate::syntax::SimpleType> {
    sig.const_type(c).map(erase_type)
}
