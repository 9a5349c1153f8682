//! LF with proof irrelevance, extended with products and a unit type.
//!
//! Same locally nameless conventions as the source syntax: binders carry
//! only a printing hint, so derived equality is α-equivalence.
//! [`lfi_equal`] additionally ignores irrelevant arguments.

pub mod abbrev;
pub mod check;
pub mod meta;
pub mod subst;
pub mod text;

use std::collections::{BTreeSet, HashMap};
use std::convert::Infallible;

use crate::syntax::{Atomic, Head, Hint, Kind, Name, Normal, Type};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LHead {
    Const(Name),
    Var(Name),
    Bound(u32),
}

/// One elimination in an atomic spine.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Elim {
    App(LTerm),
    /// `R [[N]]`
    Irr(LTerm),
    Fst,
    Snd,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LAtom {
    pub head: LHead,
    pub spine: Vec<Elim>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LTerm {
    Atom(LAtom),
    Lam(Hint, Box<LTerm>),
    Pair(Box<LTerm>, Box<LTerm>),
    Unit,
}

/// Head of an atomic type. Holes only occur inside metafunction bodies.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FamHead {
    Const(Name),
    Hole(Name),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Arg {
    Rel(LTerm),
    Irr(LTerm),
}

impl Arg {
    pub fn term(&self) -> &LTerm {
        match self {
            Arg::Rel(n) | Arg::Irr(n) => n,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LAtomType {
    pub fam: FamHead,
    pub args: Vec<Arg>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LType {
    Atom(LAtomType),
    Pi(Hint, Box<LType>, Box<LType>),
    /// `{x :: A} B`, or `A -:> B` when `x` does not occur.
    IrrPi(Hint, Box<LType>, Box<LType>),
    Prod(Box<LType>, Box<LType>),
    Unit,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LKind {
    Type,
    Pi(Hint, Box<LType>, Box<LKind>),
    IrrPi(Hint, Box<LType>, Box<LKind>),
}

/// Simple types index hereditary substitution.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LSimple {
    Base(Name),
    Arrow(Box<LSimple>, Box<LSimple>),
    IrrArrow(Box<LSimple>, Box<LSimple>),
    Prod(Box<LSimple>, Box<LSimple>),
    Unit,
}

impl LSimple {
    pub fn size(&self) -> usize {
        match self {
            LSimple::Base(_) | LSimple::Unit => 1,
            LSimple::Arrow(a, b) | LSimple::IrrArrow(a, b) | LSimple::Prod(a, b) => 1 + a.size() + b.size(),
        }
    }
}

impl LAtom {
    pub fn new(head: LHead) -> LAtom {
        LAtom { head, spine: Vec::new() }
    }

    pub fn constant(c: &str) -> LAtom {
        LAtom::new(LHead::Const(Name::new(c)))
    }

    pub fn var(x: &Name) -> LAtom {
        LAtom::new(LHead::Var(x.clone()))
    }

    pub fn push(mut self, e: Elim) -> LAtom {
        self.spine.push(e);
        self
    }

    pub fn app(self, n: LTerm) -> LAtom {
        self.push(Elim::App(n))
    }

    pub fn irr(self, n: LTerm) -> LAtom {
        self.push(Elim::Irr(n))
    }

    pub fn fst(self) -> LAtom {
        self.push(Elim::Fst)
    }

    pub fn snd(self) -> LAtom {
        self.push(Elim::Snd)
    }
}

impl From<LAtom> for LTerm {
    fn from(r: LAtom) -> LTerm {
        LTerm::Atom(r)
    }
}

impl LTerm {
    pub fn lam(hint: &str, body: LTerm) -> LTerm {
        LTerm::Lam(Hint::new(hint), Box::new(body))
    }

    pub fn pair(a: LTerm, b: LTerm) -> LTerm {
        LTerm::Pair(Box::new(a), Box::new(b))
    }
}

impl LAtomType {
    pub fn constant(fam: &Name) -> LAtomType {
        LAtomType { fam: FamHead::Const(fam.clone()), args: Vec::new() }
    }

    pub fn hole(h: &Name) -> LAtomType {
        LAtomType { fam: FamHead::Hole(h.clone()), args: Vec::new() }
    }

    pub fn rel(mut self, n: LTerm) -> LAtomType {
        self.args.push(Arg::Rel(n));
        self
    }

    pub fn irr(mut self, n: LTerm) -> LAtomType {
        self.args.push(Arg::Irr(n));
        self
    }
}

impl LType {
    pub fn atom(p: LAtomType) -> LType {
        LType::Atom(p)
    }

    pub fn prod(a: LType, b: LType) -> LType {
        LType::Prod(Box::new(a), Box::new(b))
    }

    /// Non-dependent function type; lifts the codomain under the binder.
    pub fn arrow(a: LType, b: LType) -> LType {
        LType::Pi(Hint::anon(), Box::new(a), Box::new(lift(&b, 1)))
    }

    pub fn irr_arrow(a: LType, b: LType) -> LType {
        LType::IrrPi(Hint::anon(), Box::new(a), Box::new(lift(&b, 1)))
    }
}

// ---------------------------------------------------------------------------
// Traversal

pub trait LSyntax: Sized {
    /// Rebuilds the tree, replacing each maximal embedded term found under
    /// `depth` + k binders with `f(n, depth + k)`.
    fn try_map_terms<E, F>(&self, depth: u32, f: &mut F) -> Result<Self, E>
    where
        F: FnMut(&LTerm, u32) -> Result<LTerm, E>;

    fn visit_terms<F>(&self, depth: u32, f: &mut F)
    where
        F: FnMut(&LTerm, u32);

    fn map_terms<F>(&self, depth: u32, f: &mut F) -> Self
    where
        F: FnMut(&LTerm, u32) -> LTerm,
    {
        let r: Result<Self, Infallible> = self.try_map_terms(depth, &mut |n, d| Ok(f(n, d)));
        match r {
            Ok(t) => t,
            Err(e) => match e {},
        }
    }
}

impl LSyntax for LTerm {
    fn try_map_terms<E, F>(&self, depth: u32, f: &mut F) -> Result<Self, E>
    where
        F: FnMut(&LTerm, u32) -> Result<LTerm, E>,
    {
        f(self, depth)
    }

    fn visit_terms<F: FnMut(&LTerm, u32)>(&self, depth: u32, f: &mut F) {
        f(self, depth)
    }
}

impl LSyntax for LAtomType {
    fn try_map_terms<E, F>(&self, depth: u32, f: &mut F) -> Result<Self, E>
    where
        F: FnMut(&LTerm, u32) -> Result<LTerm, E>,
    {
        let args = self
            .args
            .iter()
            .map(|a| {
                Ok(match a {
                    Arg::Rel(n) => Arg::Rel(f(n, depth)?),
                    Arg::Irr(n) => Arg::Irr(f(n, depth)?),
                })
            })
            .collect::<Result<_, E>>()?;
        Ok(LAtomType { fam: self.fam.clone(), args })
    }

    fn visit_terms<F: FnMut(&LTerm, u32)>(&self, depth: u32, f: &mut F) {
        self.args.iter().for_each(|a| f(a.term(), depth))
    }
}

impl LSyntax for LType {
    fn try_map_terms<E, F>(&self, depth: u32, f: &mut F) -> Result<Self, E>
    where
        F: FnMut(&LTerm, u32) -> Result<LTerm, E>,
    {
        Ok(match self {
            LType::Atom(p) => LType::Atom(p.try_map_terms(depth, f)?),
            LType::Pi(h, a, b) => {
                LType::Pi(h.clone(), Box::new(a.try_map_terms(depth, f)?), Box::new(b.try_map_terms(depth + 1, f)?))
            }
            LType::IrrPi(h, a, b) => {
                LType::IrrPi(h.clone(), Box::new(a.try_map_terms(depth, f)?), Box::new(b.try_map_terms(depth + 1, f)?))
            }
            LType::Prod(a, b) => {
                LType::Prod(Box::new(a.try_map_terms(depth, f)?), Box::new(b.try_map_terms(depth, f)?))
            }
            LType::Unit => LType::Unit,
        })
    }

    fn visit_terms<F: FnMut(&LTerm, u32)>(&self, depth: u32, f: &mut F) {
        match self {
            LType::Atom(p) => p.visit_terms(depth, f),
            LType::Pi(_, a, b) | LType::IrrPi(_, a, b) => {
                a.visit_terms(depth, f);
                b.visit_terms(depth + 1, f);
            }
            LType::Prod(a, b) => {
                a.visit_terms(depth, f);
                b.visit_terms(depth, f);
            }
            LType::Unit => {}
        }
    }
}

impl LSyntax for LKind {
    fn try_map_terms<E, F>(&self, depth: u32, f: &mut F) -> Result<Self, E>
    where
        F: FnMut(&LTerm, u32) -> Result<LTerm, E>,
    {
        Ok(match self {
            LKind::Type => LKind::Type,
            LKind::Pi(h, a, k) => {
                LKind::Pi(h.clone(), Box::new(a.try_map_terms(depth, f)?), Box::new(k.try_map_terms(depth + 1, f)?))
            }
            LKind::IrrPi(h, a, k) => {
                LKind::IrrPi(h.clone(), Box::new(a.try_map_terms(depth, f)?), Box::new(k.try_map_terms(depth + 1, f)?))
            }
        })
    }

    fn visit_terms<F: FnMut(&LTerm, u32)>(&self, depth: u32, f: &mut F) {
        match self {
            LKind::Type => {}
            LKind::Pi(_, a, k) | LKind::IrrPi(_, a, k) => {
                a.visit_terms(depth, f);
                k.visit_terms(depth + 1, f);
            }
        }
    }
}

/// Rewrites every head of `n`; `g` sees the binder depth.
pub fn map_lheads<G>(n: &LTerm, depth: u32, g: &mut G) -> LTerm
where
    G: FnMut(&LHead, u32) -> LHead,
{
    match n {
        LTerm::Lam(h, body) => LTerm::Lam(h.clone(), Box::new(map_lheads(body, depth + 1, g))),
        LTerm::Pair(a, b) => LTerm::Pair(Box::new(map_lheads(a, depth, g)), Box::new(map_lheads(b, depth, g))),
        LTerm::Unit => LTerm::Unit,
        LTerm::Atom(r) => LTerm::Atom(map_atom_heads(r, depth, g)),
    }
}

fn map_atom_heads<G>(r: &LAtom, depth: u32, g: &mut G) -> LAtom
where
    G: FnMut(&LHead, u32) -> LHead,
{
    LAtom {
        head: g(&r.head, depth),
        spine: r
            .spine
            .iter()
            .map(|e| match e {
                Elim::App(m) => Elim::App(map_lheads(m, depth, g)),
                Elim::Irr(m) => Elim::Irr(map_lheads(m, depth, g)),
                Elim::Fst => Elim::Fst,
                Elim::Snd => Elim::Snd,
            })
            .collect(),
    }
}

pub fn visit_lheads<G>(n: &LTerm, depth: u32, g: &mut G)
where
    G: FnMut(&LHead, u32),
{
    match n {
        LTerm::Lam(_, body) => visit_lheads(body, depth + 1, g),
        LTerm::Pair(a, b) => {
            visit_lheads(a, depth, g);
            visit_lheads(b, depth, g);
        }
        LTerm::Unit => {}
        LTerm::Atom(r) => {
            g(&r.head, depth);
            for e in &r.spine {
                if let Elim::App(m) | Elim::Irr(m) = e {
                    visit_lheads(m, depth, g);
                }
            }
        }
    }
}

fn rewrite<T: LSyntax, G>(t: &T, g: &mut G) -> T
where
    G: FnMut(&LHead, u32) -> LHead,
{
    t.map_terms(0, &mut |n, d| map_lheads(n, d, g))
}

pub fn lift<T: LSyntax>(t: &T, by: u32) -> T {
    rewrite(t, &mut |h, d| match h {
        LHead::Bound(i) if *i >= d => LHead::Bound(i + by),
        other => other.clone(),
    })
}

pub fn lift_atom(r: &LAtom, by: u32) -> LAtom {
    map_atom_heads(r, 0, &mut |h, d| match h {
        LHead::Bound(i) if *i >= d => LHead::Bound(i + by),
        other => other.clone(),
    })
}

pub fn open<T: LSyntax>(t: &T, x: &Name) -> T {
    rewrite(t, &mut |h, d| match h {
        LHead::Bound(i) if *i == d => LHead::Var(x.clone()),
        LHead::Bound(i) if *i > d => LHead::Bound(i - 1),
        other => other.clone(),
    })
}

pub fn close<T: LSyntax>(t: &T, x: &Name) -> T {
    rewrite(t, &mut |h, d| match h {
        LHead::Var(y) if y == x => LHead::Bound(d),
        LHead::Bound(i) if *i >= d => LHead::Bound(i + 1),
        other => other.clone(),
    })
}

pub fn free_vars<T: LSyntax>(t: &T) -> BTreeSet<Name> {
    let mut out = BTreeSet::new();
    t.visit_terms(0, &mut |n, d| {
        visit_lheads(n, d, &mut |h, _| {
            if let LHead::Var(x) = h {
                out.insert(x.clone());
            }
        })
    });
    out
}

/// Constants in term positions and family constants in type positions.
pub fn constants<T: LSyntax + Families>(t: &T) -> BTreeSet<Name> {
    let mut out = BTreeSet::new();
    t.visit_terms(0, &mut |n, d| {
        visit_lheads(n, d, &mut |h, _| {
            if let LHead::Const(c) = h {
                out.insert(c.clone());
            }
        })
    });
    t.families(&mut out);
    out
}

/// Collects the family constants heading atomic types.
pub trait Families {
    fn families(&self, out: &mut BTreeSet<Name>);
}

impl Families for LTerm {
    fn families(&self, _: &mut BTreeSet<Name>) {}
}

impl Families for LType {
    fn families(&self, out: &mut BTreeSet<Name>) {
        match self {
            LType::Atom(p) => {
                if let FamHead::Const(c) = &p.fam {
                    out.insert(c.clone());
                }
            }
            LType::Pi(_, a, b) | LType::IrrPi(_, a, b) | LType::Prod(a, b) => {
                a.families(out);
                b.families(out);
            }
            LType::Unit => {}
        }
    }
}

impl Families for LKind {
    fn families(&self, out: &mut BTreeSet<Name>) {
        match self {
            LKind::Type => {}
            LKind::Pi(_, a, k) | LKind::IrrPi(_, a, k) => {
                a.families(out);
                k.families(out);
            }
        }
    }
}

/// True when the index `k` (counted from the root of `t`) occurs.
pub fn mentions_bound<T: LSyntax>(t: &T, k: u32) -> bool {
    let mut found = false;
    t.visit_terms(0, &mut |n, d| {
        visit_lheads(n, d, &mut |h, d| {
            if *h == LHead::Bound(k + d) {
                found = true;
            }
        })
    });
    found
}

pub fn has_loose_bound<T: LSyntax>(t: &T) -> bool {
    let mut loose = false;
    t.visit_terms(0, &mut |n, d| {
        visit_lheads(n, d, &mut |h, d| {
            if let LHead::Bound(i) = h {
                if *i >= d {
                    loose = true;
                }
            }
        })
    });
    loose
}

pub fn term_size(n: &LTerm) -> usize {
    match n {
        LTerm::Lam(_, b) => 1 + term_size(b),
        LTerm::Pair(a, b) => 1 + term_size(a) + term_size(b),
        LTerm::Unit => 1,
        LTerm::Atom(r) => {
            1 + r
                .spine
                .iter()
                .map(|e| match e {
                    Elim::App(m) | Elim::Irr(m) => term_size(m),
                    Elim::Fst | Elim::Snd => 1,
                })
                .sum::<usize>()
        }
    }
}

// ---------------------------------------------------------------------------
// Equality

/// Whether equality looks inside irrelevant arguments.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Equality {
    /// `R [[N]] = R' [[N']]` whenever `R = R'`.
    #[default]
    Irrelevant,
    /// Compares irrelevant arguments like relevant ones.
    Strict,
}

pub trait LEq {
    fn eq_with(&self, other: &Self, mode: Equality) -> bool;
}

pub fn lfi_equal<T: LEq>(a: &T, b: &T) -> bool {
    a.eq_with(b, Equality::Irrelevant)
}

pub fn lfi_equal_with<T: LEq>(a: &T, b: &T, mode: Equality) -> bool {
    a.eq_with(b, mode)
}

impl LEq for LTerm {
    fn eq_with(&self, other: &Self, mode: Equality) -> bool {
        match (self, other) {
            (LTerm::Atom(r1), LTerm::Atom(r2)) => r1.eq_with(r2, mode),
            (LTerm::Lam(_, b1), LTerm::Lam(_, b2)) => b1.eq_with(b2, mode),
            (LTerm::Pair(a1, b1), LTerm::Pair(a2, b2)) => a1.eq_with(a2, mode) && b1.eq_with(b2, mode),
            (LTerm::Unit, LTerm::Unit) => true,
            _ => false,
        }
    }
}

impl LEq for LAtom {
    fn eq_with(&self, other: &Self, mode: Equality) -> bool {
        self.head == other.head
            && self.spine.len() == other.spine.len()
            && self.spine.iter().zip(&other.spine).all(|(e1, e2)| match (e1, e2) {
                (Elim::App(m1), Elim::App(m2)) => m1.eq_with(m2, mode),
                (Elim::Irr(m1), Elim::Irr(m2)) => mode == Equality::Irrelevant || m1.eq_with(m2, mode),
                (Elim::Fst, Elim::Fst) | (Elim::Snd, Elim::Snd) => true,
                _ => false,
            })
    }
}

impl LEq for LAtomType {
    fn eq_with(&self, other: &Self, mode: Equality) -> bool {
        self.fam == other.fam
            && self.args.len() == other.args.len()
            && self.args.iter().zip(&other.args).all(|(a1, a2)| match (a1, a2) {
                (Arg::Rel(m1), Arg::Rel(m2)) => m1.eq_with(m2, mode),
                (Arg::Irr(m1), Arg::Irr(m2)) => mode == Equality::Irrelevant || m1.eq_with(m2, mode),
                _ => false,
            })
    }
}

impl LEq for LType {
    fn eq_with(&self, other: &Self, mode: Equality) -> bool {
        match (self, other) {
            (LType::Atom(p1), LType::Atom(p2)) => p1.eq_with(p2, mode),
            (LType::Pi(_, a1, b1), LType::Pi(_, a2, b2))
            | (LType::IrrPi(_, a1, b1), LType::IrrPi(_, a2, b2))
            | (LType::Prod(a1, b1), LType::Prod(a2, b2)) => a1.eq_with(a2, mode) && b1.eq_with(b2, mode),
            (LType::Unit, LType::Unit) => true,
            _ => false,
        }
    }
}

impl LEq for LKind {
    fn eq_with(&self, other: &Self, mode: Equality) -> bool {
        match (self, other) {
            (LKind::Type, LKind::Type) => true,
            (LKind::Pi(_, a1, k1), LKind::Pi(_, a2, k2)) | (LKind::IrrPi(_, a1, k1), LKind::IrrPi(_, a2, k2)) => {
                a1.eq_with(a2, mode) && k1.eq_with(k2, mode)
            }
            _ => false,
        }
    }
}

// ---------------------------------------------------------------------------
// Embedding of LF and η-expansion

fn head_from(h: &Head) -> LHead {
    match h {
        Head::Const(c) => LHead::Const(c.clone()),
        Head::Var(x) => LHead::Var(x.clone()),
        Head::Bound(i) => LHead::Bound(*i),
    }
}

pub fn from_atomic(r: &Atomic) -> LAtom {
    LAtom { head: head_from(&r.head), spine: r.spine.iter().map(|n| Elim::App(from_normal(n))).collect() }
}

pub fn from_normal(n: &Normal) -> LTerm {
    match n {
        Normal::Lam(h, body) => LTerm::Lam(h.clone(), Box::new(from_normal(body))),
        Normal::Atom(r) => LTerm::Atom(from_atomic(r)),
    }
}

pub fn from_type(a: &Type) -> LType {
    match a {
        Type::Atom(p) => LType::Atom(LAtomType {
            fam: FamHead::Const(p.fam.clone()),
            args: p.spine.iter().map(|n| Arg::Rel(from_normal(n))).collect(),
        }),
        Type::Pi(h, a, b) => LType::Pi(h.clone(), Box::new(from_type(a)), Box::new(from_type(b))),
    }
}

pub fn from_kind(k: &Kind) -> LKind {
    match k {
        Kind::Type => LKind::Type,
        Kind::Pi(h, a, k) => LKind::Pi(h.clone(), Box::new(from_type(a)), Box::new(from_kind(k))),
    }
}

pub fn erase(a: &LType) -> LSimple {
    match a {
        LType::Atom(p) => LSimple::Base(match &p.fam {
            FamHead::Const(c) | FamHead::Hole(c) => c.clone(),
        }),
        LType::Pi(_, a, b) => LSimple::Arrow(Box::new(erase(a)), Box::new(erase(b))),
        LType::IrrPi(_, a, b) => LSimple::IrrArrow(Box::new(erase(a)), Box::new(erase(b))),
        LType::Prod(a, b) => LSimple::Prod(Box::new(erase(a)), Box::new(erase(b))),
        LType::Unit => LSimple::Unit,
    }
}

pub fn eta_expand(alpha: &LSimple, r: &LAtom) -> LTerm {
    match alpha {
        LSimple::Base(_) => LTerm::Atom(r.clone()),
        LSimple::Arrow(a, b) => {
            let arg = eta_expand(a, &LAtom::new(LHead::Bound(0)));
            LTerm::Lam(Hint::new("x"), Box::new(eta_expand(b, &lift_atom(r, 1).app(arg))))
        }
        LSimple::IrrArrow(a, b) => {
            let arg = eta_expand(a, &LAtom::new(LHead::Bound(0)));
            LTerm::Lam(Hint::new("x"), Box::new(eta_expand(b, &lift_atom(r, 1).irr(arg))))
        }
        LSimple::Prod(a, b) => LTerm::pair(eta_expand(a, &r.clone().fst()), eta_expand(b, &r.clone().snd())),
        LSimple::Unit => LTerm::Unit,
    }
}

pub fn eta_var(a: &LType, x: &Name) -> LTerm {
    eta_expand(&erase(a), &LAtom::var(x))
}

// ---------------------------------------------------------------------------
// Signatures and contexts

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LDecl {
    Fam(Name, LKind),
    Const(Name, LType),
}

impl LDecl {
    pub fn name(&self) -> &Name {
        match self {
            LDecl::Fam(n, _) | LDecl::Const(n, _) => n,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct LSig {
    decls: Vec<LDecl>,
    index: HashMap<Name, usize>,
}

impl LSig {
    pub fn new() -> LSig {
        LSig::default()
    }

    pub fn decls(&self) -> &[LDecl] {
        &self.decls
    }

    pub fn contains(&self, n: &Name) -> bool {
        self.index.contains_key(n)
    }

    /// Appends `d`; a name may be declared once.
    pub fn push(&mut self, d: LDecl) -> Result<(), Name> {
        let n = d.name().clone();
        if self.index.contains_key(&n) {
            return Err(n);
        }
        self.index.insert(n, self.decls.len());
        self.decls.push(d);
        Ok(())
    }

    pub fn fam_kind(&self, a: &Name) -> Option<&LKind> {
        match self.index.get(a).map(|&i| &self.decls[i]) {
            Some(LDecl::Fam(_, k)) => Some(k),
            _ => None,
        }
    }

    pub fn const_type(&self, c: &Name) -> Option<&LType> {
        match self.index.get(c).map(|&i| &self.decls[i]) {
            Some(LDecl::Const(_, a)) => Some(a),
            _ => None,
        }
    }

    /// The prefix of declarations before position `i`.
    pub fn prefix(&self, i: usize) -> LSig {
        let mut out = LSig::new();
        for d in &self.decls[..i] {
            let _ = out.push(d.clone());
        }
        out
    }

    pub fn alpha_eq(&self, other: &LSig) -> bool {
        self.decls == other.decls
    }

    pub fn equal_with(&self, other: &LSig, mode: Equality) -> bool {
        self.decls.len() == other.decls.len()
            && self.decls.iter().zip(&other.decls).all(|(a, b)| match (a, b) {
                (LDecl::Fam(n1, k1), LDecl::Fam(n2, k2)) => n1 == n2 && k1.eq_with(k2, mode),
                (LDecl::Const(n1, a1), LDecl::Const(n2, a2)) => n1 == n2 && a1.eq_with(a2, mode),
                _ => false,
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relevance {
    Relevant,
    /// `x ÷ A`: usable only inside irrelevant arguments.
    Irrelevant,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LCtx {
    pub entries: Vec<(Name, LType, Relevance)>,
}

impl LCtx {
    pub fn new() -> LCtx {
        LCtx::default()
    }

    pub fn push(&self, x: Name, a: LType, r: Relevance) -> LCtx {
        let mut out = self.clone();
        out.entries.push((x, a, r));
        out
    }

    pub fn lookup(&self, x: &Name) -> Option<(&LType, Relevance)> {
        self.entries.iter().rev().find(|e| &e.0 == x).map(|e| (&e.1, e.2))
    }

    pub fn contains(&self, x: &Name) -> bool {
        self.entries.iter().any(|e| &e.0 == x)
    }

    pub fn fresh(&self, hint: &Name) -> Name {
        let base = if hint.as_str().contains('%') { Name::new("x") } else { hint.clone() };
        crate::syntax::fresh_name(&base, |n| self.contains(n))
    }
}

/// `Γ⊕`: every irrelevant hypothesis becomes relevant.
pub fn promote(ctx: &LCtx) -> LCtx {
    LCtx { entries: ctx.entries.iter().map(|(x, a, _)| (x.clone(), a.clone(), Relevance::Relevant)).collect() }
}
