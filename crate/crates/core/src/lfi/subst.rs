//! Hereditary substitution for the target calculus.
//!
//! Beyond the source rules: a substituted pair meeting a projection
//! reduces to its component, and irrelevant arguments are substituted like
//! relevant ones.

use std::cell::Cell;

use crate::subst::{FailReason, SubstFailure};
use crate::syntax::Name;

use super::{lift, Elim, LAtom, LHead, LSimple, LSyntax, LTerm, LType};

fn fail(reason: FailReason, location: impl Into<String>) -> SubstFailure {
    SubstFailure { reason, location: location.into() }
}

#[derive(Clone, Copy)]
enum Target<'a> {
    Free(&'a Name),
    Bound,
}

struct Run<'a> {
    n0: &'a LTerm,
    alpha0: &'a LSimple,
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

    fn is_target(&self, h: &LHead, depth: u32) -> bool {
        match (self.target, h) {
            (Target::Free(x), LHead::Var(y)) => x == y,
            (Target::Bound, LHead::Bound(i)) => *i == depth,
            _ => false,
        }
    }

    fn other_head(&self, h: &LHead, depth: u32) -> LHead {
        match (self.target, h) {
            (Target::Bound, LHead::Bound(i)) if *i > depth => LHead::Bound(i - 1),
            _ => h.clone(),
        }
    }

    fn n(&self, t: &LTerm, depth: u32) -> Result<LTerm, SubstFailure> {
        self.tick()?;
        match t {
            LTerm::Lam(h, body) => Ok(LTerm::Lam(h.clone(), Box::new(self.n(body, depth + 1)?))),
            LTerm::Pair(a, b) => Ok(LTerm::Pair(Box::new(self.n(a, depth)?), Box::new(self.n(b, depth)?))),
            LTerm::Unit => Ok(LTerm::Unit),
            LTerm::Atom(r) if self.is_target(&r.head, depth) => match self.rn(r, depth)? {
                (LTerm::Atom(r2), LSimple::Base(_)) => Ok(LTerm::Atom(r2)),
                _ => Err(fail(FailReason::HeadMismatch, "substituted head is not atomic at base type")),
            },
            LTerm::Atom(r) => Ok(LTerm::Atom(self.rr(r, depth)?)),
        }
    }

    fn rr(&self, r: &LAtom, depth: u32) -> Result<LAtom, SubstFailure> {
        self.tick()?;
        let spine = r
            .spine
            .iter()
            .map(|e| {
                Ok(match e {
                    Elim::App(m) => Elim::App(self.n(m, depth)?),
                    Elim::Irr(m) => Elim::Irr(self.n(m, depth)?),
                    Elim::Fst => Elim::Fst,
                    Elim::Snd => Elim::Snd,
                })
            })
            .collect::<Result<_, SubstFailure>>()?;
        Ok(LAtom { head: self.other_head(&r.head, depth), spine })
    }

    fn rn(&self, r: &LAtom, depth: u32) -> Result<(LTerm, LSimple), SubstFailure> {
        self.tick()?;
        let mut cur = lift(self.n0, depth);
        let mut ty = self.alpha0.clone();
        for (i, e) in r.spine.iter().enumerate() {
            let at = || format!("spine element {}", i + 1);
            match e {
                Elim::App(arg) | Elim::Irr(arg) => {
                    let arg = self.n(arg, depth)?;
                    let (a, b) = match (e, ty) {
                        (Elim::App(_), LSimple::Arrow(a, b)) | (Elim::Irr(_), LSimple::IrrArrow(a, b)) => (a, b),
                        _ => return Err(fail(FailReason::NotAFunction, at())),
                    };
                    let LTerm::Lam(_, body) = cur else {
                        return Err(fail(FailReason::NotAFunction, at()));
                    };
                    debug_assert!(a.size() < self.alpha0.size());
                    let inner = Run { n0: &arg, alpha0: &a, target: Target::Bound, fuel: self.fuel };
                    cur = inner.n(&body, 0)?;
                    ty = *b;
                }
                Elim::Fst | Elim::Snd => {
                    let (LTerm::Pair(l, rt), LSimple::Prod(a, b)) = (cur, ty) else {
                        return Err(fail(FailReason::NotAFunction, format!("{}: projection from a non-pair", at())));
                    };
                    (cur, ty) = if *e == Elim::Fst { (*l, *a) } else { (*rt, *b) };
                }
            }
        }
        Ok((cur, ty))
    }
}

#[derive(Clone, Copy, Debug)]
pub struct LSubst {
    pub fuel: u64,
}

impl Default for LSubst {
    fn default() -> LSubst {
        LSubst { fuel: crate::subst::DEFAULT_FUEL }
    }
}

impl LSubst {
    pub fn new(fuel: u64) -> LSubst {
        LSubst { fuel }
    }

    fn run<R>(
        &self,
        n0: &LTerm,
        alpha0: &LSimple,
        target: Target<'_>,
        f: impl FnOnce(&Run<'_>) -> Result<R, SubstFailure>,
    ) -> Result<R, SubstFailure> {
        let fuel = Cell::new(self.fuel);
        f(&Run { n0, alpha0, target, fuel: &fuel })
    }

    /// `[n0/x0]_α0 t`
    pub fn hsubst<T: LSyntax>(&self, n0: &LTerm, x0: &Name, alpha0: &LSimple, t: &T) -> Result<T, SubstFailure> {
        self.run(n0, alpha0, Target::Free(x0), |run| t.try_map_terms(0, &mut |n, d| run.n(n, d)))
    }

    /// Substitutes into an atom whose head is `x0`, returning the result and
    /// its simple type.
    pub fn hsubst_rn(&self, n0: &LTerm, x0: &Name, alpha0: &LSimple, r: &LAtom) -> Result<(LTerm, LSimple), SubstFailure> {
        if r.head != LHead::Var(x0.clone()) {
            return Err(fail(FailReason::HeadMismatch, "rn applied away from the substituted head"));
        }
        self.run(n0, alpha0, Target::Free(x0), |run| run.rn(r, 0))
    }

    /// Instantiates the outermost escaping index of `body` with `arg`.
    pub fn instantiate<T: LSyntax>(&self, body: &T, arg: &LTerm, alpha: &LSimple) -> Result<T, SubstFailure> {
        self.run(arg, alpha, Target::Bound, |run| body.try_map_terms(0, &mut |n, d| run.n(n, d)))
    }

    pub fn instantiate_at<T: LSyntax>(&self, body: &T, arg: &LTerm, a: &LType) -> Result<T, SubstFailure> {
        self.instantiate(body, arg, &super::erase(a))
    }
}
