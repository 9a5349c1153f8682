//! Abbreviated signatures: trivial formation evidence removed and
//! product-typed constants split into numbered components.
//!
//! A formation family, given by the caller, is trivial when its kind is
//! `type` and its only constructor takes no arguments. Binders over trivial
//! families or over `1` are dropped, as are arguments that are a trivial
//! constructor, `<>`, or a dropped variable. A constant `c` of type `(A) * (B)` becomes `c1 : A`
//! and `c2 : B`, and projections out of `c` are rewritten accordingly.

use std::collections::{HashMap, HashSet};

use crate::syntax::Name;

use super::{Arg, Elim, FamHead, LAtom, LAtomType, LDecl, LHead, LKind, LSig, LTerm, LType};

#[derive(Default)]
struct Abbrev {
    trivial: HashSet<Name>,
    intros: HashSet<Name>,
    /// Projection path and new name of each component of a split constant.
    split: HashMap<Name, Vec<(Vec<Elim>, Name)>>,
}

/// Index of old bound `i` after dropping binders; `None` if its binder was dropped.
fn reindex(env: &[bool], i: u32) -> Option<u32> {
    let pos = env.len().checked_sub(1 + i as usize)?;
    if !env[pos] {
        return None;
    }
    Some(env[pos + 1..].iter().filter(|k| **k).count() as u32)
}

fn leaves(a: &LType, path: &mut Vec<Elim>, out: &mut Vec<(Vec<Elim>, LType)>) {
    match a {
        LType::Prod(l, r) => {
            path.push(Elim::Fst);
            leaves(l, path, out);
            path.pop();
            path.push(Elim::Snd);
            leaves(r, path, out);
            path.pop();
        }
        other => out.push((path.clone(), other.clone())),
    }
}

impl Abbrev {
    fn droppable(&self, t: &LTerm, env: &[bool]) -> bool {
        match t {
            LTerm::Unit => true,
            LTerm::Atom(a) if a.spine.is_empty() => match &a.head {
                LHead::Const(c) => self.intros.contains(c),
                LHead::Bound(i) => reindex(env, *i).is_none(),
                LHead::Var(_) => false,
            },
            _ => false,
        }
    }

    fn is_trivial(&self, a: &LType) -> bool {
        match a {
            LType::Unit => true,
            LType::Atom(p) => p.args.is_empty() && matches!(&p.fam, FamHead::Const(f) if self.trivial.contains(f)),
            _ => false,
        }
    }

    fn term(&self, t: &LTerm, env: &mut Vec<bool>) -> LTerm {
        match t {
            LTerm::Lam(h, b) => {
                env.push(true);
                let b = self.term(b, env);
                env.pop();
                LTerm::Lam(h.clone(), Box::new(b))
            }
            LTerm::Pair(a, b) => LTerm::pair(self.term(a, env), self.term(b, env)),
            LTerm::Unit => LTerm::Unit,
            LTerm::Atom(a) => LTerm::Atom(self.atom(a, env)),
        }
    }

    fn atom(&self, a: &LAtom, env: &mut Vec<bool>) -> LAtom {
        let mut rest: &[Elim] = &a.spine;
        let head = match &a.head {
            LHead::Const(c) => match self.split.get(c).and_then(|ps| ps.iter().find(|(p, _)| rest.starts_with(p))) {
                Some((p, n)) => {
                    rest = &rest[p.len()..];
                    LHead::Const(n.clone())
                }
                None => LHead::Const(c.clone()),
            },
            LHead::Bound(i) => LHead::Bound(reindex(env, *i).unwrap_or(*i)),
            LHead::Var(x) => LHead::Var(x.clone()),
        };
        let mut spine = Vec::with_capacity(rest.len());
        for e in rest {
            spine.push(match e {
                Elim::App(t) | Elim::Irr(t) if self.droppable(t, env) => continue,
                Elim::App(t) => Elim::App(self.term(t, env)),
                Elim::Irr(t) => Elim::Irr(self.term(t, env)),
                Elim::Fst => Elim::Fst,
                Elim::Snd => Elim::Snd,
            });
        }
        LAtom { head, spine }
    }

    fn atom_type(&self, p: &LAtomType, env: &mut Vec<bool>) -> LAtomType {
        let mut args = Vec::with_capacity(p.args.len());
        for a in &p.args {
            args.push(match a {
                Arg::Rel(t) | Arg::Irr(t) if self.droppable(t, env) => continue,
                Arg::Rel(t) => Arg::Rel(self.term(t, env)),
                Arg::Irr(t) => Arg::Irr(self.term(t, env)),
            });
        }
        LAtomType { fam: p.fam.clone(), args }
    }

    fn ty(&self, a: &LType, env: &mut Vec<bool>) -> LType {
        match a {
            LType::Atom(p) => LType::Atom(self.atom_type(p, env)),
            LType::Pi(h, d, b) | LType::IrrPi(h, d, b) => {
                let keep = !self.is_trivial(d);
                let d2 = self.ty(d, env);
                env.push(keep);
                let b2 = self.ty(b, env);
                env.pop();
                match (keep, a) {
                    (false, _) => b2,
                    (true, LType::Pi(..)) => LType::Pi(h.clone(), Box::new(d2), Box::new(b2)),
                    (true, _) => LType::IrrPi(h.clone(), Box::new(d2), Box::new(b2)),
                }
            }
            LType::Prod(l, r) => LType::prod(self.ty(l, env), self.ty(r, env)),
            LType::Unit => LType::Unit,
        }
    }

    fn kind(&self, k: &LKind, env: &mut Vec<bool>) -> LKind {
        match k {
            LKind::Type => LKind::Type,
            LKind::Pi(h, d, b) | LKind::IrrPi(h, d, b) => {
                let keep = !self.is_trivial(d);
                let d2 = self.ty(d, env);
                env.push(keep);
                let b2 = self.kind(b, env);
                env.pop();
                match (keep, k) {
                    (false, _) => b2,
                    (true, LKind::Pi(..)) => LKind::Pi(h.clone(), Box::new(d2), Box::new(b2)),
                    (true, _) => LKind::IrrPi(h.clone(), Box::new(d2), Box::new(b2)),
                }
            }
        }
    }
}

fn target(a: &LType) -> Option<&FamHead> {
    match a {
        LType::Atom(p) => Some(&p.fam),
        LType::Pi(_, _, b) | LType::IrrPi(_, _, b) => target(b),
        LType::Prod(..) | LType::Unit => None,
    }
}

pub fn abbreviate(sig: &LSig, formation: &HashSet<Name>) -> LSig {
    let mut ab = Abbrev::default();
    for d in sig.decls() {
        if let LDecl::Const(c, LType::Atom(p)) = d {
            if let FamHead::Const(f) = &p.fam {
                if formation.contains(f) && p.args.is_empty() && matches!(sig.fam_kind(f), Some(LKind::Type)) {
                    let sole = sig.decls().iter().filter(|e| matches!(e, LDecl::Const(_, a) if target(a) == Some(&p.fam))).count() == 1;
                    if sole {
                        ab.trivial.insert(f.clone());
                        ab.intros.insert(c.clone());
                    }
                }
            }
        }
    }
    let mut out = LSig::new();
    let push = |out: &mut LSig, d: LDecl| {
        let _ = out.push(d);
    };
    for d in sig.decls() {
        match d {
            LDecl::Fam(a, _) if ab.trivial.contains(a) => {}
            LDecl::Const(c, _) if ab.intros.contains(c) => {}
            LDecl::Fam(a, k) => push(&mut out, LDecl::Fam(a.clone(), ab.kind(k, &mut Vec::new()))),
            LDecl::Const(c, a) => {
                let a = ab.ty(a, &mut Vec::new());
                if !matches!(a, LType::Prod(..)) {
                    push(&mut out, LDecl::Const(c.clone(), a));
                    continue;
                }
                let mut parts = Vec::new();
                leaves(&a, &mut Vec::new(), &mut parts);
                let mut names = Vec::new();
                for (i, (path, leaf)) in parts.into_iter().enumerate() {
                    let n = Name::from(format!("{c}{}", i + 1));
                    push(&mut out, LDecl::Const(n.clone(), leaf));
                    names.push((path, n));
                }
                ab.split.insert(c.clone(), names);
            }
        }
    }
    out
}
