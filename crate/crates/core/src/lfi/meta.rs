//! Metafunctions: target types or kinds with named holes.
//!
//! A term hole stands for a canonical term `N`; inside a body it may be
//! applied to atoms, written `N @ R`, which is eliminated on plugging by
//! `(λx.M) @ R = [R/x]M` (ordinary substitution). A family hole stands for
//! a partially applied type family and absorbs the arguments it meets.

use thiserror::Error;

use crate::syntax::Name;

use super::{lift, lift_atom, Arg, Elim, FamHead, LAtom, LAtomType, LHead, LKind, LSyntax, LTerm, LType};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MetaError {
    #[error("metafunction expects {expected} arguments, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("argument for hole `{0}` has the wrong category")]
    Category(Name),
    #[error("cannot apply `{0}` to an atom: not a λ")]
    NotALambda(String),
    #[error("hole `{0}` meets an elimination other than application")]
    BadElim(Name),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HoleKind {
    Term,
    Family,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MetaArg {
    Term(LTerm),
    Family(LAtomType),
}

/// `λ̄(h₁,…,hₙ). body`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Meta<T> {
    pub params: Vec<(Name, HoleKind)>,
    pub body: T,
}

/// Hole names start with `%`, which no identifier contains.
pub fn hole_name(s: &str) -> Name {
    Name::new(&format!("%{s}"))
}

pub fn is_hole(x: &Name) -> bool {
    x.as_str().starts_with('%')
}

/// The term hole itself, as a term.
pub fn hole_term(h: &Name) -> LTerm {
    LTerm::Atom(LAtom::var(h))
}

/// `(λx.M) @ R = [R/x]M`
pub fn revapp(n: &LTerm, r: &LAtom) -> Result<LTerm, MetaError> {
    match n {
        LTerm::Lam(_, body) => Ok(subst_top(body, r, 0)),
        other => Err(MetaError::NotALambda(super::text::show_in(&[], other))),
    }
}

/// `N @ R`, kept symbolic when `N` is a hole.
pub fn at(n: &LTerm, r: &LAtom) -> Result<LTerm, MetaError> {
    match n {
        LTerm::Atom(h) if matches!(&h.head, LHead::Var(x) if is_hole(x)) => {
            Ok(LTerm::Atom(h.clone().app(LTerm::Atom(r.clone()))))
        }
        _ => revapp(n, r),
    }
}

/// Replaces index `depth` of `t` by the atom `r`, appending spines;
/// non-hereditary.
fn subst_top(t: &LTerm, r: &LAtom, depth: u32) -> LTerm {
    match t {
        LTerm::Lam(h, b) => LTerm::Lam(h.clone(), Box::new(subst_top(b, r, depth + 1))),
        LTerm::Pair(a, b) => LTerm::pair(subst_top(a, r, depth), subst_top(b, r, depth)),
        LTerm::Unit => LTerm::Unit,
        LTerm::Atom(a) => {
            let spine: Vec<Elim> = a
                .spine
                .iter()
                .map(|e| match e {
                    Elim::App(m) => Elim::App(subst_top(m, r, depth)),
                    Elim::Irr(m) => Elim::Irr(subst_top(m, r, depth)),
                    Elim::Fst => Elim::Fst,
                    Elim::Snd => Elim::Snd,
                })
                .collect();
            match &a.head {
                LHead::Bound(i) if *i == depth => {
                    let mut out = lift_atom(r, depth);
                    out.spine.extend(spine);
                    LTerm::Atom(out)
                }
                LHead::Bound(i) if *i > depth => LTerm::Atom(LAtom { head: LHead::Bound(i - 1), spine }),
                h => LTerm::Atom(LAtom { head: h.clone(), spine }),
            }
        }
    }
}

fn plug_term_in(t: &LTerm, hole: &Name, n: &LTerm, depth: u32) -> Result<LTerm, MetaError> {
    Ok(match t {
        LTerm::Lam(h, b) => LTerm::Lam(h.clone(), Box::new(plug_term_in(b, hole, n, depth + 1)?)),
        LTerm::Pair(a, b) => LTerm::pair(plug_term_in(a, hole, n, depth)?, plug_term_in(b, hole, n, depth)?),
        LTerm::Unit => LTerm::Unit,
        LTerm::Atom(a) => {
            let mut spine = Vec::with_capacity(a.spine.len());
            for e in &a.spine {
                spine.push(match e {
                    Elim::App(m) => Elim::App(plug_term_in(m, hole, n, depth)?),
                    Elim::Irr(m) => Elim::Irr(plug_term_in(m, hole, n, depth)?),
                    Elim::Fst => Elim::Fst,
                    Elim::Snd => Elim::Snd,
                });
            }
            if a.head != LHead::Var(hole.clone()) {
                return Ok(LTerm::Atom(LAtom { head: a.head.clone(), spine }));
            }
            let mut cur = lift(n, depth);
            for e in spine {
                match e {
                    Elim::App(LTerm::Atom(r)) => cur = revapp(&cur, &r)?,
                    _ => return Err(MetaError::BadElim(hole.clone())),
                }
            }
            cur
        }
    })
}

/// Trees into which holes can be plugged.
pub trait Pluggable: LSyntax + Clone {
    fn plug_family(&self, hole: &Name, f: &LAtomType, depth: u32) -> Self;

    fn plug_term(&self, hole: &Name, n: &LTerm) -> Result<Self, MetaError> {
        self.try_map_terms(0, &mut |t, d| plug_term_in(t, hole, n, d))
    }
}

fn plug_atom_type(p: &LAtomType, hole: &Name, f: &LAtomType, depth: u32) -> LAtomType {
    match &p.fam {
        FamHead::Hole(h) if h == hole => {
            let mut args: Vec<Arg> = lift(f, depth).args;
            args.extend(p.args.iter().cloned());
            LAtomType { fam: f.fam.clone(), args }
        }
        _ => p.clone(),
    }
}

impl Pluggable for LTerm {
    fn plug_family(&self, _: &Name, _: &LAtomType, _: u32) -> Self {
        self.clone()
    }
}

impl Pluggable for LType {
    fn plug_family(&self, hole: &Name, f: &LAtomType, depth: u32) -> Self {
        match self {
            LType::Atom(p) => LType::Atom(plug_atom_type(p, hole, f, depth)),
            LType::Pi(h, a, b) => {
                LType::Pi(h.clone(), Box::new(a.plug_family(hole, f, depth)), Box::new(b.plug_family(hole, f, depth + 1)))
            }
            LType::IrrPi(h, a, b) => LType::IrrPi(
                h.clone(),
                Box::new(a.plug_family(hole, f, depth)),
                Box::new(b.plug_family(hole, f, depth + 1)),
            ),
            LType::Prod(a, b) => {
                LType::Prod(Box::new(a.plug_family(hole, f, depth)), Box::new(b.plug_family(hole, f, depth)))
            }
            LType::Unit => LType::Unit,
        }
    }
}

impl Pluggable for LKind {
    fn plug_family(&self, hole: &Name, f: &LAtomType, depth: u32) -> Self {
        match self {
            LKind::Type => LKind::Type,
            LKind::Pi(h, a, k) => {
                LKind::Pi(h.clone(), Box::new(a.plug_family(hole, f, depth)), Box::new(k.plug_family(hole, f, depth + 1)))
            }
            LKind::IrrPi(h, a, k) => LKind::IrrPi(
                h.clone(),
                Box::new(a.plug_family(hole, f, depth)),
                Box::new(k.plug_family(hole, f, depth + 1)),
            ),
        }
    }
}

/// `f(args)`: plugs every hole, eliminating each `N @ R` on the way.
pub fn meta_apply<T: Pluggable>(f: &Meta<T>, args: &[MetaArg]) -> Result<T, MetaError> {
    if f.params.len() != args.len() {
        return Err(MetaError::Arity { expected: f.params.len(), got: args.len() });
    }
    let mut body = f.body.clone();
    for ((h, kind), arg) in f.params.iter().zip(args) {
        body = match (kind, arg) {
            (HoleKind::Term, MetaArg::Term(n)) => body.plug_term(h, n)?,
            (HoleKind::Family, MetaArg::Family(p)) => body.plug_family(h, p, 0),
            _ => return Err(MetaError::Category(h.clone())),
        };
    }
    Ok(body)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::Hint;

    fn c(s: &str) -> LTerm {
        LAtom::constant(s).into()
    }

    fn fam(s: &str) -> LAtomType {
        LAtomType::constant(&Name::new(s))
    }

    #[test]
    fn revapp_examples() {
        let id = LTerm::lam("x", LAtom::new(LHead::Bound(0)).into());
        assert_eq!(revapp(&id, &LAtom::constant("z")).unwrap(), c("z"));
        let succ = LTerm::lam("x", LAtom::constant("s").app(LAtom::new(LHead::Bound(0)).into()).into());
        let y = Name::new("y");
        assert_eq!(revapp(&succ, &LAtom::var(&y)).unwrap(), LAtom::constant("s").app(LAtom::var(&y).into()).into());
        assert!(revapp(&c("a"), &LAtom::constant("z")).is_err());
    }

    #[test]
    fn apply_even() {
        let n = hole_name("N");
        let f = Meta { params: vec![(n.clone(), HoleKind::Term)], body: LType::atom(fam("even").rel(hole_term(&n))) };
        assert_eq!(meta_apply(&f, &[MetaArg::Term(c("z"))]).unwrap(), LType::atom(fam("even").rel(c("z"))));
    }

    #[test]
    fn apply_arrow_predicate() {
        // λ̄N. Πx:nat. even x -> odd (N @ x)
        let n = hole_name("N");
        let x = LAtom::new(LHead::Bound(0));
        let nat = LType::atom(fam("nat"));
        let body = LType::Pi(
            Hint::new("x"),
            Box::new(nat.clone()),
            Box::new(LType::arrow(
                LType::atom(fam("even").rel(x.clone().into())),
                LType::atom(fam("odd").rel(at(&hole_term(&n), &x).unwrap())),
            )),
        );
        let f = Meta { params: vec![(n, HoleKind::Term)], body };
        let succ = LTerm::lam("y", LAtom::constant("s").app(LAtom::new(LHead::Bound(0)).into()).into());
        let want = LType::Pi(
            Hint::new("x"),
            Box::new(nat),
            Box::new(LType::arrow(
                LType::atom(fam("even").rel(x.clone().into())),
                LType::atom(fam("odd").rel(LAtom::constant("s").app(x.into()).into())),
            )),
        );
        assert_eq!(meta_apply(&f, &[MetaArg::Term(succ)]).unwrap(), want);
    }

    #[test]
    fn apply_top_and_families() {
        let n = hole_name("N");
        let f = Meta { params: vec![(n, HoleKind::Term)], body: LType::Unit };
        assert_eq!(meta_apply(&f, &[MetaArg::Term(c("anything"))]).unwrap(), LType::Unit);
        let q = hole_name("Qf");
        let f = Meta { params: vec![(q.clone(), HoleKind::Family)], body: LType::atom(LAtomType::hole(&q).rel(c("z"))) };
        let got = meta_apply(&f, &[MetaArg::Family(fam("double^").rel(c("m")))]).unwrap();
        assert_eq!(got, LType::atom(fam("double^").rel(c("m")).rel(c("z"))));
        assert!(meta_apply(&f, &[]).is_err());
        assert!(meta_apply(&f, &[MetaArg::Term(c("z"))]).is_err());
    }
}
