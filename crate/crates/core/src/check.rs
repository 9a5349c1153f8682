//! The refinement layer: sort and class formation, elaboration of Π
//! annotations, and the algorithmic bidirectional sort checker.
//!
//! Intersections on the synthesis side are eliminated eagerly by `split`,
//! so synthesis returns a list Δ of intersection-free sorts instead of
//! searching through ∧-E choices.

use std::cell::RefCell;

use thiserror::Error;

use crate::lf::{Lf, LfError, LfErrorKind};
use crate::parser::{RawClass, RawSort};
use crate::print::{Printer, Show};
use crate::signature::{Context, Decl, Signature};
use crate::subst::{Subst, SubstFailure};
use crate::syntax::{close, open, split, split_class, AtomSort, AtomType, Atomic, Class, Delta, Head, Kind, Name, Normal, Sort, Type};

/// Rule names as they appear in traces.
pub const RULE_NAMES: &[&str] =
    &["Q-F", "Π-F", "⊤-F", "∧-F", "const", "var", "Π-E", "∧-E₁", "∧-E₂", "switch", "Π-I", "⊤-I", "∧-I", "refl", "climb"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SortErrorKind {
    NoRefinement,
    SubsortFailure,
    AnnotationMismatch,
    EmptySynthesis,
    RefinementMismatch,
    ClassMismatch,
    Unbound,
    Duplicate,
    NotEtaLong,
    Lf(LfErrorKind),
    Subst,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{message}")]
pub struct SortError {
    pub kind: SortErrorKind,
    pub message: String,
}

pub fn sort_err(kind: SortErrorKind, message: impl Into<String>) -> SortError {
    SortError { kind, message: message.into() }
}

impl From<LfError> for SortError {
    fn from(e: LfError) -> SortError {
        sort_err(SortErrorKind::Lf(e.kind), e.message)
    }
}

impl From<SubstFailure> for SortError {
    fn from(f: SubstFailure) -> SortError {
        sort_err(SortErrorKind::Subst, f.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceEvent {
    pub rule: &'static str,
    pub detail: String,
}

pub struct Checker<'s> {
    pub sig: &'s Signature,
    pub subst: Subst,
    trace: RefCell<Option<Vec<TraceEvent>>>,
}

type SResult<T> = Result<T, SortError>;

impl<'s> Checker<'s> {
    pub fn new(sig: &'s Signature) -> Checker<'s> {
        Checker { sig, subst: Subst::default(), trace: RefCell::new(None) }
    }

    pub fn with_subst(sig: &'s Signature, subst: Subst) -> Checker<'s> {
        Checker { sig, subst, trace: RefCell::new(None) }
    }

    pub fn enable_trace(&self) {
        *self.trace.borrow_mut() = Some(Vec::new());
    }

    pub fn take_trace(&self) -> Vec<TraceEvent> {
        self.trace.borrow_mut().as_mut().map(std::mem::take).unwrap_or_default()
    }

    pub fn rule(&self, rule: &'static str, detail: impl FnOnce() -> String) {
        if let Some(t) = self.trace.borrow_mut().as_mut() {
            t.push(TraceEvent { rule, detail: detail() });
        }
    }

    pub fn lf(&self) -> Lf<'s> {
        Lf { sig: self.sig, subst: self.subst }
    }

    pub fn show<T: Show>(&self, ctx: &Context, t: &T) -> String {
        let outer: Vec<Name> = ctx.entries.iter().map(|e| e.name.clone()).collect();
        Printer::new(self.sig).show_in(&outer, t)
    }

    /// Splits a synthesized sort, recording the ∧-E steps taken.
    fn split_traced(&self, ctx: &Context, s: &Sort) -> Delta {
        if let Sort::Inter(a, b) = s {
            self.rule("∧-E₁", || self.show(ctx, &**a));
            self.rule("∧-E₂", || self.show(ctx, &**b));
        }
        split(s)
    }

    // ---- terms -------------------------------------------------------------

    /// `Γ ⊢ N ⇐ S`, assuming `⌊Γ⌋ ⊢ N ⇐ A` for the `A` that `S` refines.
    pub fn acheck(&self, ctx: &Context, n: &Normal, s: &Sort) -> SResult<()> {
        match (s, n) {
            (Sort::Top, _) => {
                self.rule("⊤-I", || self.show(ctx, n));
                Ok(())
            }
            (Sort::Inter(s1, s2), _) => {
                self.rule("∧-I", || format!("{} ⇐ {}", self.show(ctx, n), self.show(ctx, s)));
                self.acheck(ctx, n, s1)?;
                self.acheck(ctx, n, s2)
            }
            (Sort::Pi(_, dom, a, cod), Normal::Lam(h, body)) => {
                self.rule("Π-I", || format!("{} ⇐ {}", self.show(ctx, n), self.show(ctx, s)));
                let x = ctx.fresh(h.name());
                let ctx2 = ctx.push(x.clone(), (**dom).clone(), (**a).clone());
                self.acheck(&ctx2, &open(&**body, &x), &open(&**cod, &x))
            }
            (Sort::Pi(..), Normal::Atom(_)) => Err(sort_err(
                SortErrorKind::NotEtaLong,
                format!("atomic term `{}` checked at function sort `{}`; terms must be η-long", self.show(ctx, n), self.show(ctx, s)),
            )),
            (Sort::Atom(_), Normal::Lam(..)) => Err(sort_err(
                SortErrorKind::RefinementMismatch,
                format!("λ-abstraction `{}` checked at atomic sort `{}`", self.show(ctx, n), self.show(ctx, s)),
            )),
            (Sort::Atom(q), Normal::Atom(r)) => {
                let delta = self.asynth(ctx, r)?;
                let hit = delta.iter().find_map(|d| match d {
                    Sort::Atom(q2) if self.sig.subsort_q(q2, q) => Some(q2),
                    _ => None,
                });
                match hit {
                    Some(q2) => {
                        self.rule("switch", || format!("{} ≤ {}", self.show(ctx, q2), self.show(ctx, q)));
                        Ok(())
                    }
                    None if delta.is_empty() => Err(sort_err(
                        SortErrorKind::EmptySynthesis,
                        format!("no sort can be synthesized for `{}`, so it does not check at `{}`", self.show(ctx, n), self.show(ctx, q)),
                    )),
                    None => {
                        let have: Vec<String> = delta.iter().map(|d| self.show(ctx, d)).collect();
                        Err(sort_err(
                            SortErrorKind::SubsortFailure,
                            format!(
                                "`{}` has sorts {{{}}}, none of which is a subsort of `{}`",
                                self.show(ctx, n),
                                have.join(", "),
                                self.show(ctx, q)
                            ),
                        ))
                    }
                }
            }
        }
    }

    /// Minimal synthesis `Γ ⊢ R ⇒ Δ`.
    pub fn asynth(&self, ctx: &Context, r: &Atomic) -> SResult<Delta> {
        let mut delta = match &r.head {
            Head::Const(c) => {
                let sorts = self.sig.const_sorts(c);
                if sorts.is_empty() {
                    return Err(sort_err(SortErrorKind::NoRefinement, format!("constant `{c}` has no sort declaration")));
                }
                self.rule("const", || c.to_string());
                sorts.iter().flat_map(|s| self.split_traced(ctx, s)).collect()
            }
            Head::Var(x) => {
                let e = ctx.lookup(x).ok_or_else(|| sort_err(SortErrorKind::Unbound, format!("unbound variable `{x}`")))?;
                self.rule("var", || x.to_string());
                self.split_traced(ctx, &e.sort)
            }
            Head::Bound(i) => return Err(sort_err(SortErrorKind::Unbound, format!("escaping bound index {i}"))),
        };
        for n in &r.spine {
            delta = self.apply_delta(ctx, &delta, n);
        }
        Ok(delta)
    }

    /// `Γ ⊢ Δ @ N = Δ'`: keeps the codomains of the Π entries whose domain
    /// accepts `n`. Always defined.
    pub fn apply_delta(&self, ctx: &Context, delta: &[Sort], n: &Normal) -> Delta {
        let mut out = Vec::new();
        for s in delta {
            if let Sort::Pi(_, dom, a, cod) = s {
                if self.acheck(ctx, n, dom).is_err() {
                    continue;
                }
                if let Ok(c) = self.subst.instantiate_at(&**cod, n, a) {
                    self.rule("Π-E", || format!("{} applied to {}", self.show(ctx, s), self.show(ctx, n)));
                    out.extend(self.split_traced(ctx, &c));
                }
            }
        }
        out
    }

    // ---- sorts and classes -------------------------------------------------

    /// Every intersection-free class `Q` can be assigned, together with the
    /// atomic type it refines.
    pub fn class_candidates(&self, ctx: &Context, q: &AtomSort) -> SResult<(AtomType, Vec<Class>)> {
        let fam = self
            .sig
            .sort_fam(&q.fam)
            .ok_or_else(|| sort_err(SortErrorKind::Unbound, format!("unknown sort family `{}`", q.fam)))?;
        let mut cands = split_class(&fam.class);
        let lctx = ctx.erase();
        for (i, n) in q.spine.iter().enumerate() {
            let mut next = Vec::new();
            let mut first_err: Option<SortError> = None;
            let mut any_pi = false;
            for l in &cands {
                let Class::Pi(_, s, a, rest) = l else { continue };
                any_pi = true;
                self.lf().check_term(&lctx, n, a).map_err(|e| {
                    sort_err(SortErrorKind::Lf(e.kind), format!("argument {} of `{}`: {}", i + 1, self.show(ctx, q), e.message))
                })?;
                match self.acheck(ctx, n, s) {
                    Ok(()) => {
                        let l2 = self.subst.instantiate_at(&**rest, n, a)?;
                        next.extend(split_class(&l2));
                    }
                    Err(e) => {
                        first_err.get_or_insert(e);
                    }
                }
            }
            if next.is_empty() {
                if let Some(e) = first_err {
                    return Err(sort_err(e.kind, format!("argument {} of `{}`: {}", i + 1, self.show(ctx, q), e.message)));
                }
                if !any_pi && !cands.is_empty() {
                    return Err(sort_err(SortErrorKind::ClassMismatch, format!("sort family `{}` applied to too many arguments", q.fam)));
                }
            }
            cands = next;
        }
        Ok((AtomType { fam: fam.refines.clone(), spine: q.spine.clone() }, cands))
    }

    /// `Γ ⊢ Q ⇒ P :: L`, preferring the residual class `sort`.
    pub fn synth_class(&self, ctx: &Context, q: &AtomSort) -> SResult<(AtomType, Class)> {
        let (p, cands) = self.class_candidates(ctx, q)?;
        let pick = cands.iter().find(|l| **l == Class::Sort).or(cands.first()).cloned().ok_or_else(|| {
            sort_err(SortErrorKind::ClassMismatch, format!("`{}` has no class; its family's class has no matching component", self.show(ctx, q)))
        })?;
        Ok((p, pick))
    }

    /// `Γ ⊢ S ⊏ A`.
    pub fn check_sort(&self, ctx: &Context, s: &Sort, a: &Type) -> SResult<()> {
        match (s, a) {
            (Sort::Top, _) => {
                self.rule("⊤-F", || self.show(ctx, a));
                Ok(())
            }
            (Sort::Inter(s1, s2), _) => {
                self.rule("∧-F", || self.show(ctx, s));
                self.check_sort(ctx, s1, a)?;
                self.check_sort(ctx, s2, a)
            }
            (Sort::Atom(q), Type::Atom(p)) => {
                let (p2, cands) = self.class_candidates(ctx, q)?;
                if !cands.contains(&Class::Sort) {
                    return Err(sort_err(
                        SortErrorKind::ClassMismatch,
                        format!("`{}` is not a sort; its family is under-applied or has no `sort` component", self.show(ctx, q)),
                    ));
                }
                if p2 != *p {
                    return Err(sort_err(
                        SortErrorKind::RefinementMismatch,
                        format!("`{}` refines `{}`, not `{}`", self.show(ctx, q), self.show(ctx, &p2), self.show(ctx, p)),
                    ));
                }
                self.rule("Q-F", || format!("{} ⊏ {}", self.show(ctx, q), self.show(ctx, p)));
                Ok(())
            }
            (Sort::Pi(h, dom, ann, cod), Type::Pi(_, a1, a2)) => {
                if ann != a1 {
                    return Err(sort_err(
                        SortErrorKind::AnnotationMismatch,
                        format!("domain annotation `{}` does not match `{}`", self.show(ctx, &**ann), self.show(ctx, &**a1)),
                    ));
                }
                self.rule("Π-F", || format!("{} ⊏ {}", self.show(ctx, s), self.show(ctx, a)));
                self.check_sort(ctx, dom, a1)?;
                let x = ctx.fresh(h.name());
                let ctx2 = ctx.push(x.clone(), (**dom).clone(), (**a1).clone());
                self.check_sort(&ctx2, &open(&**cod, &x), &open(&**a2, &x))
            }
            _ => Err(sort_err(
                SortErrorKind::RefinementMismatch,
                format!("sort `{}` cannot refine type `{}`", self.show(ctx, s), self.show(ctx, a)),
            )),
        }
    }

    /// `Γ ⊢ L ⊏ K`.
    pub fn check_class(&self, ctx: &Context, l: &Class, k: &Kind) -> SResult<()> {
        match (l, k) {
            (Class::Sort, Kind::Type) | (Class::Top, _) => Ok(()),
            (Class::Inter(l1, l2), _) => {
                self.check_class(ctx, l1, k)?;
                self.check_class(ctx, l2, k)
            }
            (Class::Pi(h, s, ann, rest), Kind::Pi(_, a, k2)) => {
                if ann != a {
                    return Err(sort_err(
                        SortErrorKind::AnnotationMismatch,
                        format!("domain annotation `{}` does not match `{}`", self.show(ctx, &**ann), self.show(ctx, &**a)),
                    ));
                }
                self.check_sort(ctx, s, a)?;
                let x = ctx.fresh(h.name());
                let ctx2 = ctx.push(x.clone(), (**s).clone(), (**a).clone());
                self.check_class(&ctx2, &open(&**rest, &x), &open(&**k2, &x))
            }
            _ => Err(sort_err(
                SortErrorKind::ClassMismatch,
                format!("class `{}` does not match kind `{}`", self.show(ctx, l), self.show(ctx, k)),
            )),
        }
    }

    /// Fills in the Π annotations of `raw` from `a` and checks `S ⊏ A`.
    pub fn elaborate_sort(&self, ctx: &Context, raw: &RawSort, a: &Type) -> SResult<Sort> {
        let s = self.annotate_sort(ctx, raw, a)?;
        self.check_sort(ctx, &s, a)?;
        Ok(s)
    }

    fn annotate_sort(&self, ctx: &Context, raw: &RawSort, a: &Type) -> SResult<Sort> {
        match (raw, a) {
            (RawSort::Top, _) => Ok(Sort::Top),
            (RawSort::Inter(r1, r2), _) => {
                Ok(Sort::Inter(Box::new(self.annotate_sort(ctx, r1, a)?), Box::new(self.annotate_sort(ctx, r2, a)?)))
            }
            (RawSort::Atom(q), Type::Atom(_)) => Ok(Sort::Atom(q.clone())),
            (RawSort::Pi(h, rdom, rcod), Type::Pi(_, a1, a2)) => {
                let dom = self.annotate_sort(ctx, rdom, a1)?;
                let x = ctx.fresh(h.name());
                let ctx2 = ctx.push(x.clone(), dom.clone(), (**a1).clone());
                let cod = self.annotate_sort(&ctx2, &open(&**rcod, &x), &open(&**a2, &x))?;
                Ok(Sort::Pi(h.clone(), Box::new(dom), a1.clone(), Box::new(close(&cod, &x))))
            }
            (RawSort::Atom(q), Type::Pi(..)) => Err(sort_err(
                SortErrorKind::RefinementMismatch,
                format!("atomic sort `{}` cannot refine function type `{}`", self.show(ctx, q), self.show(ctx, a)),
            )),
            (RawSort::Pi(..), Type::Atom(p)) => Err(sort_err(
                SortErrorKind::RefinementMismatch,
                format!("function sort cannot refine atomic type `{}`", self.show(ctx, p)),
            )),
        }
    }

    pub fn elaborate_class(&self, ctx: &Context, raw: &RawClass, k: &Kind) -> SResult<Class> {
        let l = self.annotate_class(ctx, raw, k)?;
        self.check_class(ctx, &l, k)?;
        Ok(l)
    }

    fn annotate_class(&self, ctx: &Context, raw: &RawClass, k: &Kind) -> SResult<Class> {
        match (raw, k) {
            (RawClass::Sort, _) => Ok(Class::Sort),
            (RawClass::Top, _) => Ok(Class::Top),
            (RawClass::Inter(l1, l2), _) => {
                Ok(Class::Inter(Box::new(self.annotate_class(ctx, l1, k)?), Box::new(self.annotate_class(ctx, l2, k)?)))
            }
            (RawClass::Pi(h, rs, rl), Kind::Pi(_, a, k2)) => {
                let s = self.elaborate_sort(ctx, rs, a)?;
                let x = ctx.fresh(h.name());
                let ctx2 = ctx.push(x.clone(), s.clone(), (**a).clone());
                let l = self.annotate_class(&ctx2, &open(&**rl, &x), &open(&**k2, &x))?;
                Ok(Class::Pi(h.clone(), Box::new(s), a.clone(), Box::new(close(&l, &x))))
            }
            (RawClass::Pi(..), Kind::Type) => {
                Err(sort_err(SortErrorKind::ClassMismatch, "class has more arguments than the kind of the refined family"))
            }
        }
    }

    /// Checks every entry's sort against its type in the preceding context.
    pub fn check_context(&self, ctx: &Context) -> SResult<()> {
        let mut prefix = Context::new();
        for e in &ctx.entries {
            if prefix.contains(&e.name) {
                return Err(sort_err(SortErrorKind::Duplicate, format!("variable `{}` declared twice", e.name)));
            }
            self.lf().check_type(&prefix.erase(), &e.ty)?;
            self.check_sort(&prefix, &e.sort, &e.ty)?;
            prefix = prefix.push(e.name.clone(), e.sort.clone(), e.ty.clone());
        }
        Ok(())
    }

    /// Checks a declaration against the signature built so far.
    pub fn check_decl(&self, d: &Decl, strict: bool) -> SResult<()> {
        let ctx = Context::new();
        match d {
            Decl::TypeFam(..) | Decl::TermConst(..) => Ok(self.lf().check_decl(d)?),
            Decl::SortFam(s, a, l) => {
                if self.sig.sort_fam(s).is_some() {
                    return Err(sort_err(SortErrorKind::Duplicate, format!("sort family `{s}` declared twice")));
                }
                let k = self
                    .sig
                    .fam_kind(a)
                    .ok_or_else(|| sort_err(SortErrorKind::Unbound, format!("`{s}` refines undeclared type family `{a}`")))?;
                self.check_class(&ctx, l, k)
            }
            Decl::SubDecl(s1, s2) => {
                let f1 = self.sig.sort_fam(s1).ok_or_else(|| sort_err(SortErrorKind::Unbound, format!("unknown sort family `{s1}`")))?;
                let f2 = self.sig.sort_fam(s2).ok_or_else(|| sort_err(SortErrorKind::Unbound, format!("unknown sort family `{s2}`")))?;
                if f1.refines != f2.refines {
                    return Err(sort_err(
                        SortErrorKind::RefinementMismatch,
                        format!("`{s1}` refines `{}` but `{s2}` refines `{}`", f1.refines, f2.refines),
                    ));
                }
                if f1.class != f2.class {
                    return Err(sort_err(SortErrorKind::ClassMismatch, format!("`{s1}` and `{s2}` have different classes")));
                }
                Ok(())
            }
            Decl::ConstRef(c, s) => {
                let a = self.sig.const_type(c).ok_or_else(|| {
                    sort_err(SortErrorKind::Unbound, format!("sort declaration for undeclared constant `{c}`"))
                })?;
                if strict && !self.sig.const_sorts(c).is_empty() {
                    return Err(sort_err(SortErrorKind::Duplicate, format!("constant `{c}` already has a sort declaration (strict mode)")));
                }
                self.check_sort(&ctx, s, a)
            }
        }
    }
}

/// The largest class refining `k`: ⊤ at every argument, `sort` at the end.
pub fn default_class(k: &Kind) -> Class {
    match k {
        Kind::Type => Class::Sort,
        Kind::Pi(h, a, rest) => Class::Pi(h.clone(), Box::new(Sort::Top), a.clone(), Box::new(default_class(rest))),
    }
}

/// Re-checks an entire signature from scratch, in order.
pub fn check_signature(sig: &Signature, strict: bool) -> Result<(), (usize, SortError)> {
    let mut acc = Signature::new();
    for (k, v) in sig.fixities() {
        acc.set_fixity(k.clone(), v.0, v.1);
    }
    for (i, d) in sig.decls().iter().enumerate() {
        Checker::new(&acc).check_decl(d, strict).map_err(|e| (i, e))?;
        acc.push(d.clone());
    }
    Ok(())
}
