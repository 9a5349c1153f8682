//! Bidirectional checking for canonical target terms.
//!
//! Irrelevant hypotheses `x ÷ A` have no variable rule; they become
//! usable only under promotion, which happens when checking the argument
//! of an irrelevant application.

use thiserror::Error;

use crate::subst::SubstFailure;
use crate::syntax::{Hint, Name};

use super::subst::LSubst;
use super::{
    lfi_equal_with, open, promote, Arg, Elim, Equality, FamHead, LAtom, LAtomType, LCtx, LDecl, LHead, LKind, LSig,
    LTerm, LType, Relevance,
};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{message}")]
pub struct LfiError {
    pub message: String,
}

fn err<T>(message: impl Into<String>) -> Result<T, LfiError> {
    Err(LfiError { message: message.into() })
}

impl From<SubstFailure> for LfiError {
    fn from(e: SubstFailure) -> LfiError {
        LfiError { message: e.to_string() }
    }
}

type LResult<T> = Result<T, LfiError>;

pub struct LChecker<'s> {
    pub sig: &'s LSig,
    pub subst: LSubst,
    pub mode: Equality,
}

impl<'s> LChecker<'s> {
    pub fn new(sig: &'s LSig) -> LChecker<'s> {
        LChecker { sig, subst: LSubst::default(), mode: Equality::Irrelevant }
    }

    pub fn with_mode(sig: &'s LSig, mode: Equality) -> LChecker<'s> {
        LChecker { sig, subst: LSubst::default(), mode }
    }

    fn show<T: super::text::LShow>(&self, ctx: &LCtx, t: &T) -> String {
        let names: Vec<Name> = ctx.entries.iter().map(|e| e.0.clone()).collect();
        super::text::show_in(&names, t)
    }

    fn bind(&self, ctx: &LCtx, h: &Hint, a: &LType, r: Relevance) -> (Name, LCtx) {
        let x = ctx.fresh(h.name());
        let ctx2 = ctx.push(x.clone(), a.clone(), r);
        (x, ctx2)
    }

    /// `Γ ⊢ N ⇐ A`
    pub fn check(&self, ctx: &LCtx, n: &LTerm, a: &LType) -> LResult<()> {
        match (n, a) {
            (LTerm::Lam(_, body), LType::Pi(h, a1, a2)) => {
                let (x, ctx2) = self.bind(ctx, h, a1, Relevance::Relevant);
                self.check(&ctx2, &open(&**body, &x), &open(&**a2, &x))
            }
            (LTerm::Lam(_, body), LType::IrrPi(h, a1, a2)) => {
                let (x, ctx2) = self.bind(ctx, h, a1, Relevance::Irrelevant);
                self.check(&ctx2, &open(&**body, &x), &open(&**a2, &x))
            }
            (LTerm::Pair(m1, m2), LType::Prod(a1, a2)) => {
                self.check(ctx, m1, a1)?;
                self.check(ctx, m2, a2)
            }
            (LTerm::Unit, LType::Unit) => Ok(()),
            (LTerm::Atom(r), LType::Atom(p)) => {
                let got = self.synth(ctx, r)?;
                match &got {
                    LType::Atom(p2) if lfi_equal_with(p, p2, self.mode) => Ok(()),
                    _ => err(format!(
                        "`{}` has type `{}` but `{}` was expected",
                        self.show(ctx, n),
                        self.show(ctx, &got),
                        self.show(ctx, a)
                    )),
                }
            }
            _ => err(format!("`{}` cannot have type `{}`", self.show(ctx, n), self.show(ctx, a))),
        }
    }

    /// `Γ ⊢ R ⇒ A`
    pub fn synth(&self, ctx: &LCtx, r: &LAtom) -> LResult<LType> {
        let mut ty = match &r.head {
            LHead::Const(c) => match self.sig.const_type(c) {
                Some(a) => a.clone(),
                None => return err(format!("undeclared constant `{c}`")),
            },
            LHead::Var(x) => match ctx.lookup(x) {
                Some((a, Relevance::Relevant)) => a.clone(),
                Some((_, Relevance::Irrelevant)) => return err(format!("irrelevant variable `{x}` used relevantly")),
                None => return err(format!("unbound variable `{x}`")),
            },
            LHead::Bound(i) => return err(format!("dangling bound index {i}")),
        };
        for e in &r.spine {
            ty = match (e, ty) {
                (Elim::App(m), LType::Pi(_, a1, a2)) => {
                    self.check(ctx, m, &a1)?;
                    self.subst.instantiate_at(&*a2, m, &a1)?
                }
                (Elim::Irr(m), LType::IrrPi(_, a1, a2)) => {
                    self.check(&promote(ctx), m, &a1)?;
                    self.subst.instantiate_at(&*a2, m, &a1)?
                }
                (Elim::Fst, LType::Prod(a1, _)) => *a1,
                (Elim::Snd, LType::Prod(_, a2)) => *a2,
                (e, ty) => {
                    let what = match e {
                        Elim::App(_) => "applied to an argument",
                        Elim::Irr(_) => "applied to an irrelevant argument",
                        Elim::Fst | Elim::Snd => "projected",
                    };
                    return err(format!("a term of type `{}` cannot be {what}", self.show(ctx, &ty)));
                }
            };
        }
        Ok(ty)
    }

    /// Kind of an atomic type.
    pub fn synth_fam(&self, ctx: &LCtx, p: &LAtomType) -> LResult<LKind> {
        let FamHead::Const(a) = &p.fam else {
            return err("unplugged hole in a type");
        };
        let Some(k) = self.sig.fam_kind(a) else {
            return err(format!("undeclared type family `{a}`"));
        };
        let mut k = k.clone();
        for (i, arg) in p.args.iter().enumerate() {
            k = match (arg, k) {
                (Arg::Rel(m), LKind::Pi(_, a1, k2)) => {
                    self.check(ctx, m, &a1)?;
                    self.subst.instantiate_at(&*k2, m, &a1)?
                }
                (Arg::Irr(m), LKind::IrrPi(_, a1, k2)) => {
                    self.check(&promote(ctx), m, &a1)?;
                    self.subst.instantiate_at(&*k2, m, &a1)?
                }
                (_, k) => {
                    return err(format!(
                        "argument {} of `{a}` does not match its kind `{}`",
                        i + 1,
                        self.show(ctx, &k)
                    ))
                }
            };
        }
        Ok(k)
    }

    pub fn check_type(&self, ctx: &LCtx, a: &LType) -> LResult<()> {
        match a {
            LType::Atom(p) => match self.synth_fam(ctx, p)? {
                LKind::Type => Ok(()),
                k => err(format!("`{}` is not fully applied; its kind is `{}`", self.show(ctx, a), self.show(ctx, &k))),
            },
            LType::Pi(h, a1, a2) => {
                self.check_type(ctx, a1)?;
                let (x, ctx2) = self.bind(ctx, h, a1, Relevance::Relevant);
                self.check_type(&ctx2, &open(&**a2, &x))
            }
            LType::IrrPi(h, a1, a2) => {
                self.check_type(ctx, a1)?;
                let (x, ctx2) = self.bind(ctx, h, a1, Relevance::Irrelevant);
                self.check_type(&ctx2, &open(&**a2, &x))
            }
            LType::Prod(a1, a2) => {
                self.check_type(ctx, a1)?;
                self.check_type(ctx, a2)
            }
            LType::Unit => Ok(()),
        }
    }

    pub fn check_kind(&self, ctx: &LCtx, k: &LKind) -> LResult<()> {
        match k {
            LKind::Type => Ok(()),
            LKind::Pi(h, a, k2) => {
                self.check_type(ctx, a)?;
                let (x, ctx2) = self.bind(ctx, h, a, Relevance::Relevant);
                self.check_kind(&ctx2, &open(&**k2, &x))
            }
            LKind::IrrPi(h, a, k2) => {
                self.check_type(ctx, a)?;
                let (x, ctx2) = self.bind(ctx, h, a, Relevance::Irrelevant);
                self.check_kind(&ctx2, &open(&**k2, &x))
            }
        }
    }

    pub fn check_ctx(&self, ctx: &LCtx) -> LResult<()> {
        let mut prefix = LCtx::new();
        for (x, a, r) in &ctx.entries {
            if prefix.contains(x) {
                return err(format!("variable `{x}` declared twice"));
            }
            self.check_type(&prefix, a)?;
            prefix = prefix.push(x.clone(), a.clone(), *r);
        }
        Ok(())
    }
}

/// Checks each declaration against the ones before it; reports the index of
/// the first failure.
pub fn check_sig(sig: &LSig, mode: Equality) -> Result<(), (usize, LfiError)> {
    let mut prefix = LSig::new();
    for (i, d) in sig.decls().iter().enumerate() {
        let ch = LChecker::with_mode(&prefix, mode);
        let r = match d {
            LDecl::Fam(_, k) => ch.check_kind(&LCtx::new(), k),
            LDecl::Const(_, a) => ch.check_type(&LCtx::new(), a),
        };
        r.map_err(|e| (i, LfiError { message: format!("in `{}`: {}", d.name(), e.message) }))?;
        prefix.push(d.clone()).map_err(|n| (i, LfiError { message: format!("`{n}` declared twice") }))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lfi::text::{parse_lsig, parse_lterm, parse_ltype};

    const PRIME: &str = "nat : type. z : nat. s : nat -> nat.
        prime : nat -> type.
        primenum : type.
        primenum/i : {n:nat} prime n -:> primenum.
        p2 : prime (s (s z)).
        p2' : prime (s (s z)).";

    fn sig() -> LSig {
        parse_lsig(PRIME).unwrap()
    }

    fn ok(sig: &LSig, ctx: &LCtx, n: &str, a: &str) -> LResult<()> {
        let n = parse_lterm(ctx, n).unwrap();
        let a = parse_ltype(ctx, a).unwrap();
        LChecker::new(sig).check(ctx, &n, &a)
    }

    #[test]
    fn signature_checks() {
        assert!(check_sig(&sig(), Equality::Irrelevant).is_ok());
        let bad = parse_lsig("a : type. c : a. d : b.").unwrap();
        assert_eq!(check_sig(&bad, Equality::Irrelevant).unwrap_err().0, 2);
    }

    #[test]
    fn irrelevant_application() {
        let sig = sig();
        let ctx = LCtx::new();
        assert!(ok(&sig, &ctx, "primenum/i (s (s z)) [[ p2 ]]", "primenum").is_ok());
        let a = parse_lterm(&ctx, "primenum/i (s (s z)) [[ p2 ]]").unwrap();
        let b = parse_lterm(&ctx, "primenum/i (s (s z)) [[ p2' ]]").unwrap();
        assert!(crate::lfi::lfi_equal(&a, &b));
    }

    #[test]
    fn irrelevant_variable_not_usable() {
        let sig = parse_lsig("a : type. b : type. f : a -> b.").unwrap();
        let ctx = LCtx::new();
        let e = ok(&sig, &ctx, "[x] f x", "a -:> b").unwrap_err();
        assert!(e.message.contains("irrelevant variable"), "{}", e.message);
        let sig = parse_lsig("a : type. b : type. g : a -:> b.").unwrap();
        assert!(ok(&sig, &ctx, "[x] g [[ x ]]", "a -:> b").is_ok());
    }

    #[test]
    fn unit_and_pairs() {
        let sig = sig();
        let ctx = LCtx::new();
        assert!(ok(&sig, &ctx, "<>", "1").is_ok());
        assert!(ok(&sig, &ctx, "<z, <>>", "(nat) * (1)").is_ok());
        assert!(ok(&sig, &ctx, "<>", "nat").is_err());
    }

    #[test]
    fn projections_synthesize() {
        let sig = parse_lsig("a : type. b : type. p : (a) * (b).").unwrap();
        let ctx = LCtx::new();
        assert!(ok(&sig, &ctx, "p.1", "a").is_ok());
        assert!(ok(&sig, &ctx, "p.2", "b").is_ok());
        assert!(ok(&sig, &ctx, "p.2", "a").is_err());
    }
}
