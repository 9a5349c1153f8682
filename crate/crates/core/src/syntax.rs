//! Canonical LFR syntax.
//!
//! Bound variables are de Bruijn indices that carry a [`Hint`] for printing.
//! Free variables and constants are [`Name`]s. Hints never take part in
//! equality, so the derived `PartialEq` on every tree is α-equivalence.
//!
//! The atomic/normal split makes β-redexes unrepresentable: an [`Atomic`]
//! is a head applied to a spine, and a head is never a λ.

use std::collections::BTreeSet;
use std::convert::Infallible;
use std::fmt;
use std::sync::Arc;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Name(Arc<str>);

impl Name {
    pub fn new(s: &str) -> Name {
        Name(Arc::from(s))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn is_anonymous(&self) -> bool {
        self.0.is_empty() || &*self.0 == "_"
    }
}

impl From<&str> for Name {
    fn from(s: &str) -> Name {
        Name::new(s)
    }
}

impl From<String> for Name {
    fn from(s: String) -> Name {
        Name(Arc::from(s))
    }
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Printing name of a binder. All hints compare equal.
#[derive(Clone)]
pub struct Hint(pub Name);

impl Hint {
    pub fn new(s: &str) -> Hint {
        Hint(Name::new(s))
    }

    pub fn anon() -> Hint {
        Hint(Name::new("_"))
    }

    pub fn name(&self) -> &Name {
        &self.0
    }
}

impl PartialEq for Hint {
    fn eq(&self, _: &Hint) -> bool {
        true
    }
}

impl Eq for Hint {}

impl std::hash::Hash for Hint {
    fn hash<H: std::hash::Hasher>(&self, _: &mut H) {}
}

impl fmt::Debug for Hint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Head {
    Const(Name),
    Var(Name),
    Bound(u32),
}

/// `R ::= c | x | R N`, stored as a head and its spine.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Atomic {
    pub head: Head,
    pub spine: Vec<Normal>,
}

/// `N ::= R | λx.N`
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Normal {
    Atom(Atomic),
    Lam(Hint, Box<Normal>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AtomType {
    pub fam: Name,
    pub spine: Vec<Normal>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Type {
    Atom(AtomType),
    Pi(Hint, Box<Type>, Box<Type>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Type,
    Pi(Hint, Box<Type>, Box<Kind>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AtomSort {
    pub fam: Name,
    pub spine: Vec<Normal>,
}

/// Sorts. `Pi` carries the domain sort and the domain type it refines.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Sort {
    Atom(AtomSort),
    Pi(Hint, Box<Sort>, Box<Type>, Box<Sort>),
    Top,
    Inter(Box<Sort>, Box<Sort>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Class {
    Sort,
    Pi(Hint, Box<Sort>, Box<Type>, Box<Class>),
    Top,
    Inter(Box<Class>, Box<Class>),
}

/// Intersection-free list of sorts; every entry is `Atom` or `Pi`.
pub type Delta = Vec<Sort>;

/// Simple types index hereditary substitution.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SimpleType {
    Base(Name),
    Arrow(Box<SimpleType>, Box<SimpleType>),
}

impl SimpleType {
    pub fn arrow(a: SimpleType, b: SimpleType) -> SimpleType {
        SimpleType::Arrow(Box::new(a), Box::new(b))
    }

    pub fn size(&self) -> usize {
        match self {
            SimpleType::Base(_) => 1,
            SimpleType::Arrow(a, b) => 1 + a.size() + b.size(),
        }
    }
}

impl Atomic {
    pub fn new(head: Head) -> Atomic {
        Atomic { head, spine: Vec::new() }
    }

    pub fn constant(c: &str) -> Atomic {
        Atomic::new(Head::Const(Name::new(c)))
    }

    pub fn var(x: &Name) -> Atomic {
        Atomic::new(Head::Var(x.clone()))
    }

    pub fn bound(i: u32) -> Atomic {
        Atomic::new(Head::Bound(i))
    }

    pub fn app(mut self, n: Normal) -> Atomic {
        self.spine.push(n);
        self
    }
}

impl Normal {
    pub fn lam(hint: &str, body: Normal) -> Normal {
        Normal::Lam(Hint::new(hint), Box::new(body))
    }

    pub fn as_atomic(&self) -> Option<&Atomic> {
        match self {
            Normal::Atom(r) => Some(r),
            Normal::Lam(..) => None,
        }
    }
}

impl From<Atomic> for Normal {
    fn from(r: Atomic) -> Normal {
        Normal::Atom(r)
    }
}

impl Type {
    pub fn atom(fam: &str, spine: Vec<Normal>) -> Type {
        Type::Atom(AtomType { fam: Name::new(fam), spine })
    }

    pub fn pi(hint: &str, dom: Type, cod: Type) -> Type {
        Type::Pi(Hint::new(hint), Box::new(dom), Box::new(cod))
    }

    /// Non-dependent arrow. `cod` is given outside the binder and is lifted.
    pub fn arrow(dom: Type, cod: Type) -> Type {
        Type::Pi(Hint::anon(), Box::new(dom), Box::new(lift(&cod, 1)))
    }
}

impl Sort {
    pub fn atom(fam: &str, spine: Vec<Normal>) -> Sort {
        Sort::Atom(AtomSort { fam: Name::new(fam), spine })
    }

    pub fn inter(a: Sort, b: Sort) -> Sort {
        Sort::Inter(Box::new(a), Box::new(b))
    }

    /// Non-dependent sort arrow over `dom_ty`; `cod` is lifted under the binder.
    pub fn arrow(dom: Sort, dom_ty: Type, cod: Sort) -> Sort {
        Sort::Pi(Hint::anon(), Box::new(dom), Box::new(dom_ty), Box::new(lift(&cod, 1)))
    }
}

pub fn head(r: &Atomic) -> &Head {
    &r.head
}

pub fn alpha_eq<T: PartialEq>(x: &T, y: &T) -> bool {
    x == y
}

/// Breaks a sort into its intersection-free components.
pub fn split(s: &Sort) -> Delta {
    let mut out = Vec::new();
    split_into(s, &mut out);
    out
}

fn split_into(s: &Sort, out: &mut Delta) {
    match s {
        Sort::Top => {}
        Sort::Inter(a, b) => {
            split_into(a, out);
            split_into(b, out);
        }
        other => out.push(other.clone()),
    }
}

pub fn split_class(l: &Class) -> Vec<Class> {
    fn go(l: &Class, out: &mut Vec<Class>) {
        match l {
            Class::Top => {}
            Class::Inter(a, b) => {
                go(a, out);
                go(b, out);
            }
            other => out.push(other.clone()),
        }
    }
    let mut out = Vec::new();
    go(l, &mut out);
    out
}

/// Syntax trees that embed normal terms, possibly under binders.
pub trait Syntax: Sized {
    /// Rebuilds the tree, replacing every maximal embedded term `n` found
    /// under `depth` + k binders with `f(n, depth + k)`.
    fn try_map_terms<E, F>(&self, depth: u32, f: &mut F) -> Result<Self, E>
    where
        F: FnMut(&Normal, u32) -> Result<Normal, E>;

    fn map_terms<F>(&self, depth: u32, f: &mut F) -> Self
    where
        F: FnMut(&Normal, u32) -> Normal,
    {
        let r: Result<Self, Infallible> = self.try_map_terms(depth, &mut |n, d| Ok(f(n, d)));
        match r {
            Ok(t) => t,
            Err(e) => match e {},
        }
    }

    fn visit_terms<F>(&self, depth: u32, f: &mut F)
    where
        F: FnMut(&Normal, u32);
}

fn map_spine<E, F>(spine: &[Normal], depth: u32, f: &mut F) -> Result<Vec<Normal>, E>
where
    F: FnMut(&Normal, u32) -> Result<Normal, E>,
{
    spine.iter().map(|n| f(n, depth)).collect()
}

impl Syntax for Normal {
    fn try_map_terms<E, F>(&self, depth: u32, f: &mut F) -> Result<Self, E>
    where
        F: FnMut(&Normal, u32) -> Result<Normal, E>,
    {
        f(self, depth)
    }

    fn visit_terms<F: FnMut(&Normal, u32)>(&self, depth: u32, f: &mut F) {
        f(self, depth)
    }
}

impl Syntax for AtomType {
    fn try_map_terms<E, F>(&self, depth: u32, f: &mut F) -> Result<Self, E>
    where
        F: FnMut(&Normal, u32) -> Result<Normal, E>,
    {
        Ok(AtomType { fam: self.fam.clone(), spine: map_spine(&self.spine, depth, f)? })
    }

    fn visit_terms<F: FnMut(&Normal, u32)>(&self, depth: u32, f: &mut F) {
        self.spine.iter().for_each(|n| f(n, depth))
    }
}

impl Syntax for AtomSort {
    fn try_map_terms<E, F>(&self, depth: u32, f: &mut F) -> Result<Self, E>
    where
        F: FnMut(&Normal, u32) -> Result<Normal, E>,
    {
        Ok(AtomSort { fam: self.fam.clone(), spine: map_spine(&self.spine, depth, f)? })
    }

    fn visit_terms<F: FnMut(&Normal, u32)>(&self, depth: u32, f: &mut F) {
        self.spine.iter().for_each(|n| f(n, depth))
    }
}

impl Syntax for Type {
    fn try_map_terms<E, F>(&self, depth: u32, f: &mut F) -> Result<Self, E>
    where
        F: FnMut(&Normal, u32) -> Result<Normal, E>,
    {
        Ok(match self {
            Type::Atom(p) => Type::Atom(p.try_map_terms(depth, f)?),
            Type::Pi(h, a, b) => Type::Pi(
                h.clone(),
                Box::new(a.try_map_terms(depth, f)?),
                Box::new(b.try_map_terms(depth + 1, f)?),
            ),
        })
    }

    fn visit_terms<F: FnMut(&Normal, u32)>(&self, depth: u32, f: &mut F) {
        match self {
            Type::Atom(p) => p.visit_terms(depth, f),
            Type::Pi(_, a, b) => {
                a.visit_terms(depth, f);
                b.visit_terms(depth + 1, f);
            }
        }
    }
}

impl Syntax for Kind {
    fn try_map_terms<E, F>(&self, depth: u32, f: &mut F) -> Result<Self, E>
    where
        F: FnMut(&Normal, u32) -> Result<Normal, E>,
    {
        Ok(match self {
            Kind::Type => Kind::Type,
            Kind::Pi(h, a, k) => Kind::Pi(
                h.clone(),
                Box::new(a.try_map_terms(depth, f)?),
                Box::new(k.try_map_terms(depth + 1, f)?),
            ),
        })
    }

    fn visit_terms<F: FnMut(&Normal, u32)>(&self, depth: u32, f: &mut F) {
        if let Kind::Pi(_, a, k) = self {
            a.visit_terms(depth, f);
            k.visit_terms(depth + 1, f);
        }
    }
}

impl Syntax for Sort {
    fn try_map_terms<E, F>(&self, depth: u32, f: &mut F) -> Result<Self, E>
    where
        F: FnMut(&Normal, u32) -> Result<Normal, E>,
    {
        Ok(match self {
            Sort::Atom(q) => Sort::Atom(q.try_map_terms(depth, f)?),
            Sort::Pi(h, s, a, t) => Sort::Pi(
                h.clone(),
                Box::new(s.try_map_terms(depth, f)?),
                Box::new(a.try_map_terms(depth, f)?),
                Box::new(t.try_map_terms(depth + 1, f)?),
            ),
            Sort::Top => Sort::Top,
            Sort::Inter(s1, s2) => Sort::Inter(
                Box::new(s1.try_map_terms(depth, f)?),
                Box::new(s2.try_map_terms(depth, f)?),
            ),
        })
    }

    fn visit_terms<F: FnMut(&Normal, u32)>(&self, depth: u32, f: &mut F) {
        match self {
            Sort::Atom(q) => q.visit_terms(depth, f),
            Sort::Pi(_, s, a, t) => {
                s.visit_terms(depth, f);
                a.visit_terms(depth, f);
                t.visit_terms(depth + 1, f);
            }
            Sort::Top => {}
            Sort::Inter(s1, s2) => {
                s1.visit_terms(depth, f);
                s2.visit_terms(depth, f);
            }
        }
    }
}

impl Syntax for Class {
    fn try_map_terms<E, F>(&self, depth: u32, f: &mut F) -> Result<Self, E>
    where
        F: FnMut(&Normal, u32) -> Result<Normal, E>,
    {
        Ok(match self {
            Class::Sort => Class::Sort,
            Class::Pi(h, s, a, l) => Class::Pi(
                h.clone(),
                Box::new(s.try_map_terms(depth, f)?),
                Box::new(a.try_map_terms(depth, f)?),
                Box::new(l.try_map_terms(depth + 1, f)?),
            ),
            Class::Top => Class::Top,
            Class::Inter(l1, l2) => Class::Inter(
                Box::new(l1.try_map_terms(depth, f)?),
                Box::new(l2.try_map_terms(depth, f)?),
            ),
        })
    }

    fn visit_terms<F: FnMut(&Normal, u32)>(&self, depth: u32, f: &mut F) {
        match self {
            Class::Sort | Class::Top => {}
            Class::Pi(_, s, a, l) => {
                s.visit_terms(depth, f);
                a.visit_terms(depth, f);
                l.visit_terms(depth + 1, f);
            }
            Class::Inter(l1, l2) => {
                l1.visit_terms(depth, f);
                l2.visit_terms(depth, f);
            }
        }
    }
}

/// Rewrites every head of `n`; `g` sees the number of λs crossed inside `n`
/// added to `depth`.
pub fn map_heads<G>(n: &Normal, depth: u32, g: &mut G) -> Normal
where
    G: FnMut(&Head, u32) -> Head,
{
    match n {
        Normal::Lam(h, body) => Normal::Lam(h.clone(), Box::new(map_heads(body, depth + 1, g))),
        Normal::Atom(r) => Normal::Atom(Atomic {
            head: g(&r.head, depth),
            spine: r.spine.iter().map(|m| map_heads(m, depth, g)).collect(),
        }),
    }
}

pub fn visit_heads<G>(n: &Normal, depth: u32, g: &mut G)
where
    G: FnMut(&Head, u32),
{
    match n {
        Normal::Lam(_, body) => visit_heads(body, depth + 1, g),
        Normal::Atom(r) => {
            g(&r.head, depth);
            r.spine.iter().for_each(|m| visit_heads(m, depth, g));
        }
    }
}

fn rewrite_heads<T: Syntax, G>(t: &T, g: &mut G) -> T
where
    G: FnMut(&Head, u32) -> Head,
{
    t.map_terms(0, &mut |n, d| map_heads(n, d, g))
}

/// Adds `by` to every index that escapes `t`.
pub fn lift<T: Syntax>(t: &T, by: u32) -> T {
    if by == 0 {
        return rewrite_heads(t, &mut |h, _| h.clone());
    }
    rewrite_heads(t, &mut |h, d| match h {
        Head::Bound(i) if *i >= d => Head::Bound(i + by),
        other => other.clone(),
    })
}

/// Instantiates the outermost escaping index with the free variable `x`.
/// Variables never create redexes, so no hereditary step is needed.
pub fn open<T: Syntax>(t: &T, x: &Name) -> T {
    rewrite_heads(t, &mut |h, d| match h {
        Head::Bound(i) if *i == d => Head::Var(x.clone()),
        Head::Bound(i) if *i > d => Head::Bound(i - 1),
        other => other.clone(),
    })
}

/// Abstracts the free variable `x`, the inverse of [`open`].
pub fn close<T: Syntax>(t: &T, x: &Name) -> T {
    rewrite_heads(t, &mut |h, d| match h {
        Head::Var(y) if y == x => Head::Bound(d),
        Head::Bound(i) if *i >= d => Head::Bound(i + 1),
        other => other.clone(),
    })
}

/// Replaces free variable `x` by free variable `y`.
pub fn rename<T: Syntax>(t: &T, x: &Name, y: &Name) -> T {
    rewrite_heads(t, &mut |h, _| match h {
        Head::Var(v) if v == x => Head::Var(y.clone()),
        other => other.clone(),
    })
}

pub fn free_vars<T: Syntax>(t: &T) -> BTreeSet<Name> {
    let mut out = BTreeSet::new();
    t.visit_terms(0, &mut |n, d| {
        visit_heads(n, d, &mut |h, _| {
            if let Head::Var(x) = h {
                out.insert(x.clone());
            }
        })
    });
    out
}

pub fn constants<T: Syntax>(t: &T) -> BTreeSet<Name> {
    let mut out = BTreeSet::new();
    t.visit_terms(0, &mut |n, d| {
        visit_heads(n, d, &mut |h, _| {
            if let Head::Const(c) = h {
                out.insert(c.clone());
            }
        })
    });
    out
}

/// True when some index escapes `t` (the tree is not locally closed).
pub fn has_loose_bound<T: Syntax>(t: &T) -> bool {
    let mut loose = false;
    t.visit_terms(0, &mut |n, d| {
        visit_heads(n, d, &mut |h, d| {
            if let Head::Bound(i) = h {
                if *i >= d {
                    loose = true;
                }
            }
        })
    });
    loose
}

/// True when the index `k` (counted from the root of `t`) occurs.
pub fn mentions_bound<T: Syntax>(t: &T, k: u32) -> bool {
    let mut found = false;
    t.visit_terms(0, &mut |n, d| {
        visit_heads(n, d, &mut |h, d| {
            if *h == Head::Bound(k + d) {
                found = true;
            }
        })
    });
    found
}

pub fn term_size(n: &Normal) -> usize {
    match n {
        Normal::Lam(_, b) => 1 + term_size(b),
        Normal::Atom(r) => 1 + r.spine.iter().map(term_size).sum::<usize>(),
    }
}

pub fn sort_size(s: &Sort) -> usize {
    match s {
        Sort::Atom(q) => 1 + q.spine.iter().map(term_size).sum::<usize>(),
        Sort::Pi(_, s1, _, s2) => 1 + sort_size(s1) + sort_size(s2),
        Sort::Top => 1,
        Sort::Inter(a, b) => 1 + sort_size(a) + sort_size(b),
    }
}

/// Picks `hint`, or `hint` with a numeric suffix, avoiding `taken`.
pub fn fresh_name(hint: &Name, taken: impl Fn(&Name) -> bool) -> Name {
    let base = if hint.is_anonymous() { "x" } else { hint.as_str() };
    let first = Name::new(base);
    if !taken(&first) {
        return first;
    }
    (1u32..)
        .map(|i| Name::from(format!("{base}{i}")))
        .find(|n| !taken(n))
        .expect("unbounded supply")
}
