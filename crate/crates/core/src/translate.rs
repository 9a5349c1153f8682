//! Subset interpretation: checked LFR signatures to LFI signatures, and
//! sorting derivations to proof terms.
//!
//! Every judgment follows the algorithmic checker: synthesis returns the
//! same Δ as `asynth`, each entry paired with its proof atom, and the
//! switch rule picks the first entry the checker would pick.

use std::cell::RefCell;
use std::collections::{HashMap, HashSet};

use thiserror::Error;

use crate::check::{Checker, SortError, TraceEvent};
use crate::lfi::check::{check_sig, LChecker, LfiError};
use crate::lfi::meta::{at, hole_name, hole_term, HoleKind, Meta, MetaError};
use crate::lfi::{
    close, eta_expand, eta_var, erase, from_kind, from_normal, from_type, lift, Arg, FamHead, LAtom, LAtomType, LCtx,
    LDecl, LHead, LKind, LSig, LTerm, LType, Relevance,
};
use crate::signature::{Context, Decl, Signature};
use crate::subst::{Subst, SubstFailure};
use crate::syntax::{open, AtomSort, AtomType, Atomic, Class, Head, Hint, Kind, Name, Normal, Sort, Type};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{message}")]
pub struct TransError {
    pub message: String,
}

fn terr<T>(message: impl Into<String>) -> Result<T, TransError> {
    Err(TransError { message: message.into() })
}

impl From<SortError> for TransError {
    fn from(e: SortError) -> TransError {
        TransError { message: e.message }
    }
}

impl From<SubstFailure> for TransError {
    fn from(e: SubstFailure) -> TransError {
        TransError { message: e.to_string() }
    }
}

impl From<MetaError> for TransError {
    fn from(e: MetaError) -> TransError {
        TransError { message: e.to_string() }
    }
}

type TResult<T> = Result<T, TransError>;

// ---------------------------------------------------------------------------
// Names

/// Target names for everything the translation introduces.
///
/// Source type families and constants keep their names; derived names are
/// allocated in declaration order, falling back to a suffixed form on a
/// clash.
#[derive(Clone, Debug, Default)]
pub struct Mangler {
    taken: HashSet<Name>,
    pred: HashMap<Name, Name>,
    form: HashMap<Name, Name>,
    intro: HashMap<Name, Name>,
    proofs: HashMap<Name, Vec<Name>>,
    coercions: HashMap<(Name, Name), Name>,
    /// Target names per source declaration, in emission order.
    emitted: Vec<Vec<Name>>,
}

impl Mangler {
    pub fn for_signature(sig: &Signature) -> Mangler {
        let mut m = Mangler::default();
        for d in sig.decls() {
            if let Decl::TypeFam(n, _) | Decl::TermConst(n, _) = d {
                m.taken.insert(n.clone());
            }
        }
        for d in sig.decls() {
            let names = match d {
                Decl::TypeFam(n, _) | Decl::TermConst(n, _) => vec![n.clone()],
                Decl::SortFam(s, _, _) => {
                    let f = m.alloc(format!("{s}^"), Some(format!("{s}^f")));
                    let i = m.alloc(format!("{s}^/i"), None);
                    let p = m.alloc(s.to_string(), Some(format!("{s}^p")));
                    m.form.insert(s.clone(), f.clone());
                    m.intro.insert(s.clone(), i.clone());
                    m.pred.insert(s.clone(), p.clone());
                    vec![f, i, p]
                }
                Decl::ConstRef(c, _) => {
                    let h = m.alloc(format!("{c}^"), None);
                    m.proofs.entry(c.clone()).or_default().push(h.clone());
                    vec![h]
                }
                Decl::SubDecl(s1, s2) => {
                    let e = m.alloc(format!("{s1}-{s2}"), Some(format!("{s1}-{s2}^")));
                    m.coercions.entry((s1.clone(), s2.clone())).or_insert_with(|| e.clone());
                    vec![e]
                }
            };
            m.emitted.push(names);
        }
        m
    }

    /// `pref`, else `fallback`, else numbered variants of the fallback.
    fn alloc(&mut self, pref: String, fallback: Option<String>) -> Name {
        let base = fallback.unwrap_or_else(|| pref.clone());
        let cands = std::iter::once(pref).chain(std::iter::once(base.clone())).chain((2u32..).map(|i| format!("{base}{i}")));
        for c in cands {
            let n = Name::from(c);
            if self.taken.insert(n.clone()) {
                return n;
            }
        }
        unreachable!("unbounded supply")
    }

    fn get<'a>(map: &'a HashMap<Name, Name>, s: &Name, what: &str) -> TResult<&'a Name> {
        map.get(s).ok_or_else(|| TransError { message: format!("no {what} for `{s}`") })
    }

    pub fn pred(&self, s: &Name) -> TResult<&Name> {
        Mangler::get(&self.pred, s, "predicate family")
    }

    pub fn form(&self, s: &Name) -> TResult<&Name> {
        Mangler::get(&self.form, s, "formation family")
    }

    pub fn intro(&self, s: &Name) -> TResult<&Name> {
        Mangler::get(&self.intro, s, "formation constructor")
    }

    /// Proof constant of the `i`-th sort declaration for `c`.
    pub fn proof(&self, c: &Name, i: usize) -> TResult<&Name> {
        self.proofs
            .get(c)
            .and_then(|v| v.get(i))
            .ok_or_else(|| TransError { message: format!("no proof constant for declaration {} of `{c}`", i + 1) })
    }

    pub fn coercion(&self, s1: &Name, s2: &Name) -> TResult<&Name> {
        self.coercions
            .get(&(s1.clone(), s2.clone()))
            .ok_or_else(|| TransError { message: format!("no coercion for `{s1} <: {s2}`") })
    }

    /// Every formation family name.
    pub fn formation_families(&self) -> HashSet<Name> {
        self.form.values().cloned().collect()
    }

    pub fn emitted(&self, decl: usize) -> &[Name] {
        &self.emitted[decl]
    }
}

/// `x̂`; source identifiers never contain `^`.
pub fn hat(x: &Name) -> Name {
    Name::from(format!("{x}^"))
}

// ---------------------------------------------------------------------------
// Translator

/// Deliberate miscompilations for testing the verifier.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// Exchanges the two projections out of every intersection proof.
    SwapProjections,
}

pub struct Translator<'s> {
    pub ch: Checker<'s>,
    pub names: &'s Mangler,
    pub fault: Option<Fault>,
    trace: RefCell<Option<Vec<TraceEvent>>>,
}

/// A Δ entry with its proof.
pub type Proved = (Sort, LAtom);

fn lam(x: &Name, body: &LTerm) -> LTerm {
    LTerm::Lam(Hint(x.clone()), Box::new(close(body, x)))
}

/// `Πx:A. Πx̂:D. body` over named `x` and `x̂`.
fn pi2(x: &Name, a: LType, xh: &Name, d: LType, body: LType) -> LType {
    let inner = LType::Pi(Hint(xh.clone()), Box::new(d), Box::new(close(&body, xh)));
    LType::Pi(Hint(x.clone()), Box::new(a), Box::new(close(&inner, x)))
}

/// `ctx` with `x` reserved, so that binders built under it avoid `x`.
fn guard(ctx: &Context, x: &Name, a: &Type) -> Context {
    ctx.push(x.clone(), Sort::Top, a.clone())
}

fn const_atom(c: &Name) -> LAtom {
    LAtom::new(LHead::Const(c.clone()))
}

impl<'s> Translator<'s> {
    pub fn new(sig: &'s Signature, names: &'s Mangler) -> Translator<'s> {
        Translator { ch: Checker::new(sig), names, fault: None, trace: RefCell::new(None) }
    }

    pub fn with_subst(sig: &'s Signature, names: &'s Mangler, subst: Subst) -> Translator<'s> {
        Translator { ch: Checker::with_subst(sig, subst), names, fault: None, trace: RefCell::new(None) }
    }

    pub fn enable_trace(&self) {
        *self.trace.borrow_mut() = Some(Vec::new());
    }

    pub fn take_trace(&self) -> Vec<TraceEvent> {
        self.trace.borrow_mut().as_mut().map(std::mem::take).unwrap_or_default()
    }

    fn rule(&self, rule: &'static str, detail: impl FnOnce() -> String) {
        if let Some(t) = self.trace.borrow_mut().as_mut() {
            t.push(TraceEvent { rule, detail: detail() });
        }
    }

    fn sig(&self) -> &'s Signature {
        self.ch.sig
    }

    /// Splits `s`, pairing each component with its projection from `proof`.
    pub fn split_proved(&self, s: &Sort, proof: LAtom) -> Vec<Proved> {
        let mut out = Vec::new();
        self.split_into(s, proof, &mut out);
        out
    }

    fn split_into(&self, s: &Sort, proof: LAtom, out: &mut Vec<Proved>) {
        match s {
            Sort::Top => {}
            Sort::Inter(a, b) => {
                let (l, r) = match self.fault {
                    Some(Fault::SwapProjections) => (proof.clone().snd(), proof.fst()),
                    None => (proof.clone().fst(), proof.snd()),
                };
                self.rule("∧-E₁", String::new);
                self.split_into(a, l, out);
                self.rule("∧-E₂", String::new);
                self.split_into(b, r, out);
            }
            other => out.push((other.clone(), proof)),
        }
    }

    fn split_class_proved(&self, l: &Class, proof: LAtom, out: &mut Vec<(Class, LAtom)>) {
        match l {
            Class::Top => {}
            Class::Inter(a, b) => {
                let (x, y) = match self.fault {
                    Some(Fault::SwapProjections) => (proof.clone().snd(), proof.fst()),
                    None => (proof.clone().fst(), proof.snd()),
                };
                self.split_class_proved(a, x, out);
                self.split_class_proved(b, y, out);
            }
            other => out.push((other.clone(), proof)),
        }
    }

    // ---- sorts -----------------------------------------------------------

    /// `Ŝ(N)`: the predicate for `S ⊏ A` applied to `n`. `n` may be a
    /// term hole, in which case `N @ x` stays symbolic.
    pub fn sort_pred(&self, ctx: &Context, s: &Sort, a: &Type, n: &LTerm) -> TResult<LType> {
        match (s, a) {
            (Sort::Top, _) => {
                self.rule("⊤-F", String::new);
                Ok(LType::Unit)
            }
            (Sort::Inter(s1, s2), _) => {
                self.rule("∧-F", String::new);
                Ok(LType::prod(self.sort_pred(ctx, s1, a, n)?, self.sort_pred(ctx, s2, a, n)?))
            }
            (Sort::Atom(q), Type::Atom(p)) => {
                self.rule("Q-F", || q.fam.to_string());
                let (p2, qh) = self.formation(ctx, q)?;
                if p2 != *p {
                    return terr(format!("`{}` refines `{}`, not `{}`", q.fam, p2.fam, p.fam));
                }
                let mut args: Vec<Arg> = q.spine.iter().map(|m| Arg::Rel(from_normal(m))).collect();
                args.push(Arg::Irr(qh.into()));
                args.push(Arg::Rel(n.clone()));
                Ok(LType::Atom(LAtomType { fam: FamHead::Const(self.names.pred(&q.fam)?.clone()), args }))
            }
            (Sort::Pi(h, dom, _, cod), Type::Pi(_, a1, a2)) => {
                self.rule("Π-F", String::new);
                let x = ctx.fresh(h.name());
                let xh = hat(&x);
                let la1 = from_type(a1);
                let d = self.sort_pred(&guard(ctx, &x, a1), dom, a1, &eta_var(&la1, &x))?;
                let ctx2 = ctx.push(x.clone(), (**dom).clone(), (**a1).clone());
                let c = self.sort_pred(&ctx2, &open(&**cod, &x), &open(&**a2, &x), &at(n, &LAtom::var(&x))?)?;
                Ok(pi2(&x, la1, &xh, d, c))
            }
            _ => terr("sort does not refine its type"),
        }
    }

    /// `λ̄N. Ŝ(N)`
    pub fn sort_meta(&self, ctx: &Context, s: &Sort, a: &Type) -> TResult<Meta<LType>> {
        let h = hole_name("N");
        let body = self.sort_pred(ctx, s, a, &hole_term(&h))?;
        Ok(Meta { params: vec![(h, HoleKind::Term)], body })
    }

    /// Every class `q` can be assigned, each with its formation proof.
    pub fn class_proofs(&self, ctx: &Context, q: &AtomSort) -> TResult<(AtomType, Vec<(Class, LAtom)>)> {
        let (p, _) = self.ch.class_candidates(ctx, q)?;
        let fam = self.sig().sort_fam(&q.fam).ok_or_else(|| TransError { message: format!("unknown sort family `{}`", q.fam) })?;
        let mut cands = Vec::new();
        self.split_class_proved(&fam.class, const_atom(self.names.intro(&q.fam)?), &mut cands);
        for n in &q.spine {
            let mut next = Vec::new();
            for (l, proof) in &cands {
                let Class::Pi(_, s, a, rest) = l else { continue };
                if self.ch.acheck(ctx, n, s).is_err() {
                    continue;
                }
                let nh = self.check(ctx, n, s)?;
                let l2 = self.ch.subst.instantiate_at(&**rest, n, a)?;
                self.split_class_proved(&l2, proof.clone().app(from_normal(n)).app(nh), &mut next);
            }
            cands = next;
        }
        Ok((p, cands))
    }

    /// `Γ ⊢ Q ⇒ P :: sort ⇝ Q̂`, taking the first `sort` candidate.
    pub fn formation(&self, ctx: &Context, q: &AtomSort) -> TResult<(AtomType, LAtom)> {
        let (p, cands) = self.class_proofs(ctx, q)?;
        match cands.into_iter().find(|(l, _)| *l == Class::Sort) {
            Some((_, proof)) => Ok((p, proof)),
            None => terr(format!("`{}` is not a well-formed sort", self.ch.show(ctx, q))),
        }
    }

    /// `L̂f(Qf)`
    pub fn class_form(&self, ctx: &Context, l: &Class, k: &Kind, qf: &LAtomType) -> TResult<LType> {
        match (l, k) {
            (Class::Sort, Kind::Type) => Ok(LType::Atom(qf.clone())),
            (Class::Top, _) => Ok(LType::Unit),
            (Class::Inter(l1, l2), _) => Ok(LType::prod(self.class_form(ctx, l1, k, qf)?, self.class_form(ctx, l2, k, qf)?)),
            (Class::Pi(h, s, _, rest), Kind::Pi(_, a, k2)) => {
                let x = ctx.fresh(h.name());
                let xh = hat(&x);
                let la = from_type(a);
                let ex = eta_var(&la, &x);
                let d = self.sort_pred(&guard(ctx, &x, a), s, a, &ex)?;
                let ctx2 = ctx.push(x.clone(), (**s).clone(), (**a).clone());
                let body = self.class_form(&ctx2, &open(&**rest, &x), &open(&**k2, &x), &qf.clone().rel(ex))?;
                Ok(pi2(&x, la, &xh, d, body))
            }
            _ => terr("class does not refine its kind"),
        }
    }

    pub fn class_meta(&self, ctx: &Context, l: &Class, k: &Kind) -> TResult<Meta<LType>> {
        let h = hole_name("Qf");
        let body = self.class_form(ctx, l, k, &LAtomType::hole(&h))?;
        Ok(Meta { params: vec![(h, HoleKind::Family)], body })
    }

    // ---- terms -----------------------------------------------------------

    /// `Γ ⊢ N ⇐ S ⇝ N̂`
    pub fn check(&self, ctx: &Context, n: &Normal, s: &Sort) -> TResult<LTerm> {
        match (s, n) {
            (Sort::Top, _) => {
                self.rule("⊤-I", String::new);
                Ok(LTerm::Unit)
            }
            (Sort::Inter(s1, s2), _) => {
                self.rule("∧-I", String::new);
                Ok(LTerm::pair(self.check(ctx, n, s1)?, self.check(ctx, n, s2)?))
            }
            (Sort::Pi(_, dom, a, cod), Normal::Lam(h, body)) => {
                self.rule("Π-I", String::new);
                let x = ctx.fresh(h.name());
                let xh = hat(&x);
                let ctx2 = ctx.push(x.clone(), (**dom).clone(), (**a).clone());
                let b = self.check(&ctx2, &open(&**body, &x), &open(&**cod, &x))?;
                Ok(lam(&x, &lam(&xh, &b)))
            }
            (Sort::Atom(q), Normal::Atom(r)) => {
                let delta = self.synth(ctx, r)?;
                let hit = delta.into_iter().find_map(|(d, proof)| match d {
                    Sort::Atom(q2) if self.sig().subsort_q(&q2, q) => Some((q2, proof)),
                    _ => None,
                });
                let Some((q2, proof)) = hit else {
                    return terr(format!("`{}` does not check at `{}`", self.ch.show(ctx, n), self.ch.show(ctx, q)));
                };
                self.rule("switch", || format!("{} ≤ {}", q2.fam, q.fam));
                Ok(self.coerce(ctx, &q2, q, &crate::lfi::from_atomic(r), proof)?.into())
            }
            _ => terr(format!("`{}` does not check at `{}`", self.ch.show(ctx, n), self.ch.show(ctx, s))),
        }
    }

    /// `Γ ⊢ R ⇒ Δ ⇝ R̂`, one proof per entry.
    pub fn synth(&self, ctx: &Context, r: &Atomic) -> TResult<Vec<Proved>> {
        let mut delta = match &r.head {
            Head::Const(c) => {
                let sorts = self.sig().const_sorts(c);
                if sorts.is_empty() {
                    return terr(format!("constant `{c}` has no sort declaration"));
                }
                self.rule("const", || c.to_string());
                let mut out = Vec::new();
                for (i, s) in sorts.iter().enumerate() {
                    out.extend(self.split_proved(s, const_atom(self.names.proof(c, i)?)));
                }
                out
            }
            Head::Var(x) => {
                let e = ctx.lookup(x).ok_or_else(|| TransError { message: format!("unbound variable `{x}`") })?;
                self.rule("var", || x.to_string());
                self.split_proved(&e.sort, LAtom::var(&hat(x)))
            }
            Head::Bound(i) => return terr(format!("escaping bound index {i}")),
        };
        for n in &r.spine {
            delta = self.apply(ctx, &delta, n)?;
        }
        Ok(delta)
    }

    /// Mirrors `apply_delta`: `R̂ N N̂` for each Π entry accepting `n`.
    pub fn apply(&self, ctx: &Context, delta: &[Proved], n: &Normal) -> TResult<Vec<Proved>> {
        let mut out = Vec::new();
        for (s, proof) in delta {
            let Sort::Pi(_, dom, a, cod) = s else { continue };
            if self.ch.acheck(ctx, n, dom).is_err() {
                continue;
            }
            let Ok(c) = self.ch.subst.instantiate_at(&**cod, n, a) else { continue };
            self.rule("Π-E", String::new);
            let nh = self.check(ctx, n, dom)?;
            out.extend(self.split_proved(&c, proof.clone().app(from_normal(n)).app(nh)));
        }
        Ok(out)
    }

    // ---- subsorting --------------------------------------------------------

    /// `Q₁ ≤ Q₂ ⇝ Q̂Q`: one declared edge, applied to the spine.
    pub fn subsort_step(&self, q1: &AtomSort, s2: &Name) -> TResult<(AtomSort, LAtom)> {
        if !self.sig().edges().iter().any(|(a, b)| *a == q1.fam && b == s2) {
            return terr(format!("no declared subsort `{} <: {s2}`", q1.fam));
        }
        let mut e = const_atom(self.names.coercion(&q1.fam, s2)?);
        for m in &q1.spine {
            e = e.app(from_normal(m));
        }
        Ok((AtomSort { fam: s2.clone(), spine: q1.spine.clone() }, e))
    }

    /// `F(R, R₁)` for `Q₁ ≤ Q₂`, climbing along the shortest edge path.
    pub fn coerce(&self, ctx: &Context, q1: &AtomSort, q2: &AtomSort, r: &LAtom, r1: LAtom) -> TResult<LAtom> {
        let path = self
            .sig()
            .climb_path(&q1.fam, &q2.fam)
            .ok_or_else(|| TransError { message: format!("`{}` is not below `{}`", q1.fam, q2.fam) })?;
        let mut cur = q1.clone();
        let mut proof = r1;
        for (_, b) in &path {
            self.rule("climb", || format!("{} <: {b}", cur.fam));
            let (next, e) = self.subsort_step(&cur, b)?;
            let (_, f1) = self.formation(ctx, &cur)?;
            let (_, f2) = self.formation(ctx, &next)?;
            proof = e.app(f1.into()).app(f2.into()).app(r.clone().into()).app(proof.into());
            cur = next;
        }
        self.rule("refl", || cur.fam.to_string());
        Ok(proof)
    }

    /// `λ̄(R, R₁). F(R, R₁)`
    pub fn coercion_meta(&self, ctx: &Context, q1: &AtomSort, q2: &AtomSort) -> TResult<Meta<LTerm>> {
        let (r, r1) = (hole_name("R"), hole_name("R1"));
        let body = self.coerce(ctx, q1, q2, &LAtom::var(&r), LAtom::var(&r1))?.into();
        Ok(Meta { params: vec![(r, HoleKind::Term), (r1, HoleKind::Term)], body })
    }

    // ---- contexts ------------------------------------------------------------

    /// `x:A, x̂:Ŝ(η x)` for every entry.
    pub fn context(&self, ctx: &Context) -> TResult<LCtx> {
        let mut out = LCtx::new();
        let mut prefix = Context::new();
        for e in &ctx.entries {
            let la = from_type(&e.ty);
            let p = self.sort_pred(&prefix, &e.sort, &e.ty, &eta_var(&la, &e.name))?;
            out = out.push(e.name.clone(), la, Relevance::Relevant).push(hat(&e.name), p, Relevance::Relevant);
            prefix = prefix.push(e.name.clone(), e.sort.clone(), e.ty.clone());
        }
        Ok(out)
    }
}

// ---------------------------------------------------------------------------
// Kinds

fn bound0(a: &LType) -> LTerm {
    eta_expand(&erase(a), &LAtom::new(LHead::Bound(0)))
}

/// `K̂p(Qf, P)`: the kind of a predicate family.
pub fn kind_pred(k: &Kind, qf: &LAtomType, p: &LAtomType) -> LKind {
    match k {
        Kind::Type => LKind::IrrPi(
            Hint::new("f"),
            Box::new(LType::Atom(qf.clone())),
            Box::new(LKind::Pi(Hint::anon(), Box::new(LType::Atom(lift(p, 1))), Box::new(LKind::Type))),
        ),
        Kind::Pi(h, a, k2) => {
            let la = from_type(a);
            let x = bound0(&la);
            let rest = kind_pred(k2, &lift(qf, 1).rel(x.clone()), &lift(p, 1).rel(x));
            LKind::Pi(h.clone(), Box::new(la), Box::new(rest))
        }
    }
}

pub fn kind_pred_meta(k: &Kind) -> Meta<LKind> {
    let (qf, p) = (hole_name("Qf"), hole_name("P"));
    let body = kind_pred(k, &LAtomType::hole(&qf), &LAtomType::hole(&p));
    Meta { params: vec![(qf, HoleKind::Family), (p, HoleKind::Family)], body }
}

/// `K̂s(P, Q₁f, Q₁, Q₂f, Q₂)`: the type of coercions.
pub fn kind_sub(k: &Kind, p: &LAtomType, q1f: &LAtomType, q1: &LAtomType, q2f: &LAtomType, q2: &LAtomType) -> LType {
    match k {
        Kind::Type => {
            let x = || LTerm::from(LAtom::new(LHead::Bound(0)));
            let b = |i| LTerm::from(LAtom::new(LHead::Bound(i)));
            let from = LType::Atom(lift(q1, 3).irr(b(2)).rel(x()));
            let to = LType::Atom(lift(q2, 3).irr(b(1)).rel(x()));
            let body = LType::Pi(Hint::new("x"), Box::new(LType::Atom(lift(p, 2))), Box::new(LType::arrow(from, to)));
            let body = LType::Pi(Hint::new("f2"), Box::new(LType::Atom(lift(q2f, 1))), Box::new(body));
            LType::Pi(Hint::new("f1"), Box::new(LType::Atom(q1f.clone())), Box::new(body))
        }
        Kind::Pi(h, a, k2) => {
            let la = from_type(a);
            let x = bound0(&la);
            let ext = |f: &LAtomType| lift(f, 1).rel(x.clone());
            let rest = kind_sub(k2, &ext(p), &ext(q1f), &ext(q1), &ext(q2f), &ext(q2));
            LType::Pi(h.clone(), Box::new(la), Box::new(rest))
        }
    }
}

pub fn kind_sub_meta(k: &Kind) -> Meta<LType> {
    let hs: Vec<Name> = ["P", "Q1f", "Q1", "Q2f", "Q2"].iter().map(|s| hole_name(s)).collect();
    let f: Vec<LAtomType> = hs.iter().map(LAtomType::hole).collect();
    let body = kind_sub(k, &f[0], &f[1], &f[2], &f[3], &f[4]);
    Meta { params: hs.into_iter().map(|h| (h, HoleKind::Family)).collect(), body }
}

// ---------------------------------------------------------------------------
// Signatures

#[derive(Clone, Debug)]
pub struct TransResult {
    pub sig: LSig,
    pub names: Mangler,
    /// Index of the source declaration behind each target declaration.
    pub provenance: Vec<usize>,
}

#[derive(Clone, Debug, Default)]
pub struct TransOptions {
    pub fault: Option<Fault>,
    pub fuel: Option<u64>,
    pub trace: bool,
}

fn const_eta(a: &Type, c: &Name) -> LTerm {
    eta_expand(&erase(&from_type(a)), &const_atom(c))
}

fn translator<'s>(sig: &'s Signature, names: &'s Mangler, opts: &TransOptions) -> Translator<'s> {
    let mut t = match opts.fuel {
        Some(f) => Translator::with_subst(sig, names, Subst::new(f)),
        None => Translator::new(sig, names),
    };
    t.fault = opts.fault;
    if opts.trace {
        t.enable_trace();
    }
    t
}

/// Translates one declaration against the source prefix `prefix`.
fn trans_decl(t: &Translator<'_>, d: &Decl, out: &[Name]) -> TResult<Vec<LDecl>> {
    let ctx = Context::new();
    let sig = t.sig();
    Ok(match d {
        Decl::TypeFam(a, k) => vec![LDecl::Fam(a.clone(), from_kind(k))],
        Decl::TermConst(c, a) => vec![LDecl::Const(c.clone(), from_type(a))],
        Decl::SortFam(s, a, l) => {
            let k = sig.fam_kind(a).ok_or_else(|| TransError { message: format!("`{s}` refines undeclared `{a}`") })?;
            let form = LAtomType::constant(&out[0]);
            vec![
                LDecl::Fam(out[0].clone(), from_kind(k)),
                LDecl::Const(out[1].clone(), t.class_form(&ctx, l, k, &form)?),
                LDecl::Fam(out[2].clone(), kind_pred(k, &form, &LAtomType::constant(a))),
            ]
        }
        Decl::ConstRef(c, s) => {
            let a = sig.const_type(c).ok_or_else(|| TransError { message: format!("undeclared constant `{c}`") })?;
            vec![LDecl::Const(out[0].clone(), t.sort_pred(&ctx, s, a, &const_eta(a, c))?)]
        }
        Decl::SubDecl(s1, s2) => {
            let f1 = sig.sort_fam(s1).ok_or_else(|| TransError { message: format!("unknown sort family `{s1}`") })?;
            let k = sig.fam_kind(&f1.refines).ok_or_else(|| TransError { message: format!("undeclared `{}`", f1.refines) })?;
            let n = t.names;
            let fam = |x: &Name| LAtomType::constant(x);
            vec![LDecl::Const(
                out[0].clone(),
                kind_sub(k, &fam(&f1.refines), &fam(n.form(s1)?), &fam(n.pred(s1)?), &fam(n.form(s2)?), &fam(n.pred(s2)?)),
            )]
        }
    })
}

/// Trace events tagged with the index of their source declaration.
pub type Trace = Vec<(usize, TraceEvent)>;

/// Translates a checked signature, declaration by declaration.
pub fn trans_sig(sig: &Signature, opts: &TransOptions) -> Result<(TransResult, Trace), (usize, TransError)> {
    let names = Mangler::for_signature(sig);
    let mut prefix = Signature::new();
    let mut out = LSig::new();
    let mut provenance = Vec::new();
    let mut trace = Vec::new();
    for (i, d) in sig.decls().iter().enumerate() {
        let t = translator(&prefix, &names, opts);
        let decls = trans_decl(&t, d, names.emitted(i)).map_err(|e| (i, e))?;
        trace.extend(t.take_trace().into_iter().map(|e| (i, e)));
        for ld in decls {
            out.push(ld).map_err(|n| (i, TransError { message: format!("target name `{n}` declared twice") }))?;
            provenance.push(i);
        }
        prefix.push(d.clone());
    }
    Ok((TransResult { sig: out, names, provenance }, trace))
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("translation failed at declaration {0}: {1}")]
    Translate(usize, TransError),
    #[error("translated declaration `{name}` is ill-formed: {err}")]
    Decl { index: usize, name: Name, err: LfiError },
    #[error("proof of `{name}` does not check: {err}")]
    Proof { index: usize, name: Name, err: LfiError },
    #[error("proof of query {} does not check: {err}", .index + 1)]
    Query { index: usize, err: TransError },
}

impl VerifyError {
    /// The source declaration at fault.
    pub fn source_index(&self, tr: Option<&TransResult>) -> usize {
        match (self, tr) {
            (VerifyError::Translate(i, _), _) | (VerifyError::Proof { index: i, .. }, _) => *i,
            (VerifyError::Decl { index, .. }, Some(tr)) => tr.provenance[*index],
            (VerifyError::Decl { index, .. }, None) | (VerifyError::Query { index, .. }, _) => *index,
        }
    }
}

/// Checks the translated signature, then, for every `c :: S`, translates the
/// derivation of `η(c) ⇐ S` and checks the proof at `Ŝ(η c)`. Returns the
/// number of proofs checked.
pub fn verify(sig: &Signature, tr: &TransResult, opts: &TransOptions) -> Result<usize, VerifyError> {
    check_sig(&tr.sig, Default::default())
        .map_err(|(i, err)| VerifyError::Decl { index: i, name: tr.sig.decls()[i].name().clone(), err })?;
    let t = translator(sig, &tr.names, opts);
    let lch = LChecker::new(&tr.sig);
    let ctx = Context::new();
    let mut proofs = 0;
    for (i, d) in sig.decls().iter().enumerate() {
        let Decl::ConstRef(c, s) = d else { continue };
        let a = sig.const_type(c).ok_or_else(|| VerifyError::Translate(i, TransError { message: format!("undeclared `{c}`") }))?;
        let eta = crate::subst::eta_expand(&crate::subst::erase_type(a), &Atomic { head: Head::Const(c.clone()), spine: vec![] });
        let proof = t.check(&ctx, &eta, s).map_err(|e| VerifyError::Translate(i, e))?;
        let goal = t.sort_pred(&ctx, s, a, &const_eta(a, c)).map_err(|e| VerifyError::Translate(i, e))?;
        lch.check(&LCtx::new(), &proof, &goal).map_err(|err| VerifyError::Proof { index: i, name: c.clone(), err })?;
        proofs += 1;
    }
    Ok(proofs)
}

/// Translates and checks the proof of each closed judgment `N ⇐ S ⊏ A`.
pub fn verify_queries(
    sig: &Signature,
    tr: &TransResult,
    opts: &TransOptions,
    queries: &[(Normal, Sort, Type)],
) -> Result<(), VerifyError> {
    let t = translator(sig, &tr.names, opts);
    for (index, (n, s, a)) in queries.iter().enumerate() {
        proved(&t, tr, &Context::new(), n, s, a).map_err(|err| VerifyError::Query { index, err })?;
    }
    Ok(())
}

fn proved(t: &Translator<'_>, tr: &TransResult, ctx: &Context, n: &Normal, s: &Sort, a: &Type) -> TResult<LTerm> {
    let proof = t.check(ctx, n, s)?;
    let goal = t.sort_pred(ctx, s, a, &from_normal(n))?;
    let lctx = t.context(ctx)?;
    LChecker::new(&tr.sig).check(&lctx, &proof, &goal).map_err(|e| TransError { message: e.message })?;
    Ok(proof)
}

/// `Γ̂ ⊢ N̂ ⇐ Ŝ(N)` for a source judgment `Γ ⊢ N ⇐ S ⊏ A`; returns `N̂`.
pub fn check_translated(sig: &Signature, tr: &TransResult, ctx: &Context, n: &Normal, s: &Sort, a: &Type) -> TResult<LTerm> {
    proved(&Translator::new(sig, &tr.names), tr, ctx, n, s, a)
}
