//! Hereditary substitution, simple-type erasure and η-expansion.
//!
//! Substitution is indexed by the simple type of the variable being
//! replaced. When the replacement lands in head position, the redex it
//! would create is contracted on the spot by substituting into the body of
//! the λ at a strictly smaller simple type.

use std::cell::Cell;
use std::fmt;

use thiserror::Error;

use crate::syntax::{lift, Atomic, Head, Hint, Name, Normal, SimpleType, Syntax, Type};

pub const DEFAULT_FUEL: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FailReason {
    /// A substituted head produced a non-atomic term or a non-base type where
    /// an atomic term is required.
    HeadMismatch,
    /// A spine argument met a term that is not a λ at arrow type.
    NotAFunction,
    /// The fuel counter ran out; indicates a bug in the metric.
    MetricExhausted,
}

impl fmt::Display for FailReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FailReason::HeadMismatch => "head-type mismatch",
            FailReason::NotAFunction => "non-function applied",
            FailReason::MetricExhausted => "metric exhausted",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("substitution undefined: {reason} ({location})")]
pub struct SubstFailure {
    pub reason: FailReason,
    pub location: String,
}

fn fail(reason: FailReason, location: impl Into<String>) -> SubstFailure {
    SubstFailure { reason, location: location.into() }
}

pub fn erase_type(a: &Type) -> SimpleType {
    match a {
        Type::Atom(p) => SimpleType::Base(p.fam.clone()),
        Type::Pi(_, a, b) => SimpleType::arrow(erase_type(a), erase_type(b)),
    }
}

/// η-expands `r` at simple type `alpha`.
pub fn eta_expand(alpha: &SimpleType, r: &Atomic) -> Normal {
    match alpha {
        SimpleType::Base(_) => Normal::Atom(r.clone()),
        SimpleType::Arrow(a, b) => {
            let lifted = match lift(&Normal::Atom(r.clone()), 1) {
                Normal::Atom(r) => r,
                Normal::Lam(..) => unreachable!(),
            };
            let arg = eta_expand(a, &Atomic::bound(0));
            Normal::Lam(Hint::new("x"), Box::new(eta_expand(b, &lifted.app(arg))))
        }
    }
}

pub fn eta_var(a: &Type, x: &Name) -> Normal {
    eta_expand(&erase_type(a), &Atomic::var(x))
}

/// Predicts the simple type returned by `rn` substitution into `r`.
pub fn treduce(x0: &Name, alpha0: &SimpleType, r: &Atomic) -> Option<SimpleType> {
    if r.head != Head::Var(x0.clone()) {
        return None;
    }
    let mut ty = alpha0;
    for _ in &r.spine {
        match ty {
            SimpleType::Arrow(_, b) => ty = b,
            SimpleType::Base(_) => return None,
        }
    }
    Some(ty.clone())
}

#[derive(Clone, Copy)]
enum Target<'a> {
    Free(&'a Name),
    /// The outermost escaping index of the tree being substituted into.
    Bound,
}

struct Run<'a> {
    n0: &'a Normal,
    alpha0: &'a SimpleType,
    target: Target<'a>,
    fuel: &'a Cell<u64>,
}

impl<'a> Run<'a> {
    fn tick(&self) -> Result<(), SubstFailure> {
        let f = self.fuel.get();
        if f == 0 {
            return Err(fail(FailReason::MetricExhausted, "fuel"));
        }
        self.fuel.set(f - 1);
        Ok(())
    }

    fn is_target(&self, h: &Head, depth: u32) -> bool {
        match (self.target, h) {
            (Target::Free(x), Head::Var(y)) => x == y,
            (Target::Bound, Head::Bound(i)) => *i == depth,
            _ => false,
        }
    }

    fn other_head(&self, h: &Head, depth: u32) -> Head {
        match (self.target, h) {
            (Target::Bound, Head::Bound(i)) if *i > depth => Head::Bound(i - 1),
            _ => h.clone(),
        }
    }

    fn n(&self, t: &Normal, depth: u32) -> Result<Normal, SubstFailure> {
        self.tick()?;
        match t {
            Normal::Lam(h, body) => Ok(Normal::Lam(h.clone(), Box::new(self.n(body, depth + 1)?))),
            Normal::Atom(r) if self.is_target(&r.head, depth) => match self.rn(r, depth)? {
                (Normal::Atom(r2), SimpleType::Base(_)) => Ok(Normal::Atom(r2)),
                _ => Err(fail(FailReason::HeadMismatch, "substituted head is not atomic at base type")),
            },
            Normal::Atom(r) => Ok(Normal::Atom(self.rr(r, depth)?)),
        }
    }

    fn rr(&self, r: &Atomic, depth: u32) -> Result<Atomic, SubstFailure> {
        self.tick()?;
        let spine = r.spine.iter().map(|m| self.n(m, depth)).collect::<Result<_, _>>()?;
        Ok(Atomic { head: self.other_head(&r.head, depth), spine })
    }

    fn rn(&self, r: &Atomic, depth: u32) -> Result<(Normal, SimpleType), SubstFailure> {
        self.tick()?;
        let mut cur = lift(self.n0, depth);
        let mut ty = self.alpha0.clone();
        for (i, arg) in r.spine.iter().enumerate() {
            let arg = self.n(arg, depth)?;
            match (cur, ty) {
                (Normal::Lam(_, body), SimpleType::Arrow(a, b)) => {
                    debug_assert!(a.size() < self.alpha0.size());
                    let inner = Run { n0: &arg, alpha0: &a, target: Target::Bound, fuel: self.fuel };
                    cur = inner.n(&body, 0)?;
                    ty = *b;
                }
                (Normal::Atom(_), _) => {
                    return Err(fail(FailReason::NotAFunction, format!("spine argument {}", i + 1)));
                }
                (Normal::Lam(..), SimpleType::Base(_)) => {
                    return Err(fail(FailReason::NotAFunction, format!("spine argument {} at base type", i + 1)));
                }
            }
        }
        Ok((cur, ty))
    }
}

/// Hereditary substitution with a fuel budget shared by all nested calls of
/// one top-level invocation.
#[derive(Clone, Copy, Debug)]
pub struct Subst {
    pub fuel: u64,
}

impl Default for Subst {
    fn default() -> Subst {
        Subst { fuel: DEFAULT_FUEL }
    }
}

impl Subst {
    pub fn new(fuel: u64) -> Subst {
        Subst { fuel }
    }

    fn run<R>(
        &self,
        n0: &Normal,
        alpha0: &SimpleType,
        target: Target<'_>,
        f: impl FnOnce(&Run<'_>) -> Result<R, SubstFailure>,
    ) -> Result<R, SubstFailure> {
        let fuel = Cell::new(self.fuel);
        let run = Run { n0, alpha0, target, fuel: &fuel };
        f(&run)
    }

    /// `[n0/x0]ᴺ_α0 n`
    pub fn hsubst_n(&self, n0: &Normal, x0: &Name, alpha0: &SimpleType, n: &Normal) -> Result<Normal, SubstFailure> {
        self.run(n0, alpha0, Target::Free(x0), |r| r.n(n, 0))
    }

    /// `[n0/x0]ʳʳ_α0 r`; requires `head(r) ≠ x0`.
    pub fn hsubst_rr(&self, n0: &Normal, x0: &Name, alpha0: &SimpleType, r: &Atomic) -> Result<Atomic, SubstFailure> {
        if r.head == Head::Var(x0.clone()) {
            return Err(fail(FailReason::HeadMismatch, "rr applied at the substituted head"));
        }
        self.run(n0, alpha0, Target::Free(x0), |run| run.rr(r, 0))
    }

    /// `[n0/x0]ʳⁿ_α0 r`; requires `head(r) = x0`.
    pub fn hsubst_rn(
        &self,
        n0: &Normal,
        x0: &Name,
        alpha0: &SimpleType,
        r: &Atomic,
    ) -> Result<(Normal, SimpleType), SubstFailure> {
        if r.head != Head::Var(x0.clone()) {
            return Err(fail(FailReason::HeadMismatch, "rn applied away from the substituted head"));
        }
        self.run(n0, alpha0, Target::Free(x0), |run| run.rn(r, 0))
    }

    /// Substitutes for a free variable in any syntactic category.
    pub fn hsubst<T: Syntax>(&self, n0: &Normal, x0: &Name, alpha0: &SimpleType, t: &T) -> Result<T, SubstFailure> {
        self.run(n0, alpha0, Target::Free(x0), |run| t.try_map_terms(0, &mut |n, d| run.n(n, d)))
    }

    /// Instantiates the outermost escaping index of `body` with `arg`.
    pub fn instantiate<T: Syntax>(&self, body: &T, arg: &Normal, alpha: &SimpleType) -> Result<T, SubstFailure> {
        self.run(arg, alpha, Target::Bound, |run| body.try_map_terms(0, &mut |n, d| run.n(n, d)))
    }

    /// Instantiates by a type; the index is the erasure of `a`.
    pub fn instantiate_at<T: Syntax>(&self, body: &T, arg: &Normal, a: &Type) -> Result<T, SubstFailure> {
        self.instantiate(body, arg, &erase_type(a))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{AtomSort, Sort};

    fn nat() -> SimpleType {
        SimpleType::Base(Name::new("nat"))
    }

    fn c(s: &str) -> Normal {
        Atomic::constant(s).into()
    }

    fn v(s: &str) -> Atomic {
        Atomic::var(&Name::new(s))
    }

    #[test]
    fn erase_drops_dependency() {
        let nat_t = Type::atom("nat", vec![]);
        assert_eq!(erase_type(&nat_t), nat());
        let dep = Type::pi("x", nat_t.clone(), Type::atom("vec", vec![Atomic::bound(0).into()]));
        assert_eq!(erase_type(&dep), SimpleType::arrow(nat(), SimpleType::Base(Name::new("vec"))));
        let a = Type::pi("x", nat_t.clone(), Type::pi("y", nat_t.clone(), Type::atom("double", vec![])));
        assert_eq!(erase_type(&a), SimpleType::arrow(nat(), SimpleType::arrow(nat(), SimpleType::Base(Name::new("double")))));
    }

    #[test]
    fn eta_examples() {
        assert_eq!(eta_expand(&nat(), &v("x")), v("x").into());
        let nn = SimpleType::arrow(nat(), nat());
        assert_eq!(eta_expand(&nn, &Atomic::constant("s")), Normal::lam("y", Atomic::constant("s").app(Atomic::bound(0).into()).into()));
        let f = eta_expand(&SimpleType::arrow(nn.clone(), nat()), &v("f"));
        let inner = Normal::lam("y", Atomic::bound(1).app(Atomic::bound(0).into()).into());
        assert_eq!(f, Normal::lam("g", v("f").app(inner).into()));
    }

    #[test]
    fn hsubst_n_examples() {
        let s = Subst::default();
        let x = Name::new("x");
        let f = Name::new("f");
        assert_eq!(s.hsubst_n(&c("z"), &x, &nat(), &Atomic::constant("s").app(v("x").into()).into()), Ok(Atomic::constant("s").app(c("z")).into()));
        let id = Normal::lam("y", Atomic::bound(0).into());
        let nn = SimpleType::arrow(nat(), nat());
        assert_eq!(s.hsubst_n(&id, &f, &nn, &v("f").app(c("z")).into()), Ok(c("z")));
        assert_eq!(s.hsubst_n(&c("z"), &x, &nat(), &c("c")), Ok(c("c")));
        let bad = s.hsubst_n(&c("z"), &x, &nat(), &v("x").app(c("z")).into());
        assert_eq!(bad.unwrap_err().reason, FailReason::NotAFunction);
    }

    #[test]
    fn hsubst_rn_rr_examples() {
        let s = Subst::default();
        let x = Name::new("x");
        assert_eq!(s.hsubst_rn(&c("z"), &x, &nat(), &v("x")), Ok((c("z"), nat())));
        let succ = Normal::lam("y", Atomic::constant("s").app(Atomic::bound(0).into()).into());
        let nn = SimpleType::arrow(nat(), nat());
        assert_eq!(
            s.hsubst_rn(&succ, &Name::new("f"), &nn, &v("f").app(c("z"))),
            Ok((Atomic::constant("s").app(c("z")).into(), nat()))
        );
        let ssy = Atomic::constant("s").app(Atomic::constant("s").app(v("y").into()).into());
        assert_eq!(s.hsubst_rr(&c("z"), &x, &nat(), &ssy), Ok(ssy.clone()));
        assert!(s.hsubst_rr(&c("z"), &x, &nat(), &v("x")).is_err());
    }

    #[test]
    fn hsubst_into_sorts() {
        let s = Subst::default();
        let x = Name::new("x");
        let q = Sort::Atom(AtomSort {
            fam: Name::new("double*"),
            spine: vec![v("x").into(), Atomic::constant("s").app(v("x").into()).into()],
        });
        let out = s.hsubst(&c("z"), &x, &nat(), &q).unwrap();
        assert_eq!(out, Sort::atom("double*", vec![c("z"), Atomic::constant("s").app(c("z")).into()]));
    }

    #[test]
    fn no_capture_under_binders() {
        // [y/x] (Πy::⊤⊏nat. p x y): the outer y must stay distinct from the bound one.
        let s = Subst::default();
        let nat_t = Type::atom("nat", vec![]);
        let body = Sort::atom("p", vec![v("x").into(), Atomic::bound(0).into()]);
        let pi = Sort::Pi(Hint::new("y"), Box::new(Sort::Top), Box::new(nat_t), Box::new(body));
        let out = s.hsubst(&v("y").into(), &Name::new("x"), &nat(), &pi).unwrap();
        match out {
            Sort::Pi(_, _, _, b) => assert_eq!(*b, Sort::atom("p", vec![v("y").into(), Atomic::bound(0).into()])),
            _ => panic!(),
        }
    }

    #[test]
    fn treduce_examples() {
        let nn = SimpleType::arrow(nat(), nat());
        assert_eq!(treduce(&Name::new("x"), &nat(), &v("x")), Some(nat()));
        assert_eq!(treduce(&Name::new("f"), &nn, &v("f").app(c("z"))), Some(nat()));
        assert_eq!(treduce(&Name::new("f"), &nat(), &v("f").app(c("z"))), None);
    }

    #[test]
    fn fuel_exhaustion_is_reported() {
        let s = Subst::new(1);
        let r = s.hsubst_n(&c("z"), &Name::new("x"), &nat(), &Atomic::constant("s").app(v("x").into()).into());
        assert_eq!(r.unwrap_err().reason, FailReason::MetricExhausted);
    }
}
