//! Concrete syntax printer for source-language trees.
//!
//! Output re-parses to an α-equivalent tree. Binder names are chosen to
//! avoid every constant and free variable in sight, so a printed bound
//! variable never shadows anything it should not.

use std::collections::BTreeSet;

use crate::signature::{Context, Decl, Signature};
use crate::syntax::{
    constants, free_vars, fresh_name, mentions_bound, AtomSort, AtomType, Atomic, Class, Head, Kind, Name, Normal, Sort,
    Type,
};

pub struct Printer<'s> {
    sig: Option<&'s Signature>,
}

pub struct Names {
    stack: Vec<Name>,
    taken: BTreeSet<Name>,
}

impl Names {
    fn bind(&mut self, hint: &Name) -> Name {
        let stack = &self.stack;
        let taken = &self.taken;
        let n = fresh_name(hint, |n| stack.contains(n) || taken.contains(n));
        self.stack.push(n.clone());
        n
    }

    fn unbind(&mut self) {
        self.stack.pop();
    }

    fn lookup(&self, i: u32) -> String {
        let len = self.stack.len();
        if (i as usize) < len {
            self.stack[len - 1 - i as usize].to_string()
        } else {
            format!("#{i}")
        }
    }
}

/// Trees the printer can render.
pub trait Show {
    fn collect_names(&self, out: &mut BTreeSet<Name>);
    fn render(&self, p: &Printer<'_>, names: &mut Names) -> String;
}

impl<'s> Printer<'s> {
    pub fn new(sig: &'s Signature) -> Printer<'s> {
        Printer { sig: Some(sig) }
    }

    pub fn plain() -> Printer<'static> {
        Printer { sig: None }
    }

    pub fn show<T: Show>(&self, t: &T) -> String {
        self.show_in(&[], t)
    }

    /// Renders `t` with `outer` already in scope as named variables.
    pub fn show_in<T: Show>(&self, outer: &[Name], t: &T) -> String {
        let mut taken = BTreeSet::new();
        t.collect_names(&mut taken);
        taken.extend(outer.iter().cloned());
        let mut names = Names { stack: Vec::new(), taken };
        t.render(self, &mut names)
    }

    fn infix(&self, c: &Name) -> Option<u32> {
        self.sig.and_then(|s| s.fixity(c)).map(|(_, p)| p)
    }

    fn head(&self, h: &Head, names: &Names) -> String {
        match h {
            Head::Const(c) | Head::Var(c) => c.to_string(),
            Head::Bound(i) => names.lookup(*i),
        }
    }

    fn infix_of(&self, n: &Normal) -> Option<u32> {
        match n {
            Normal::Atom(Atomic { head: Head::Const(c), spine }) if spine.len() == 2 => self.infix(c),
            _ => None,
        }
    }

    /// `arg`: whether the term sits in argument position.
    fn term(&self, n: &Normal, names: &mut Names, arg: bool) -> String {
        match n {
            Normal::Lam(h, body) => {
                let x = names.bind(h.name());
                let s = format!("[{x}] {}", self.term(body, names, false));
                names.unbind();
                if arg {
                    format!("({s})")
                } else {
                    s
                }
            }
            Normal::Atom(r) => {
                if let (Head::Const(c), Some(prec)) = (&r.head, self.infix_of(n)) {
                    let lhs = &r.spine[0];
                    let rhs = &r.spine[1];
                    let l = match (lhs, self.infix_of(lhs)) {
                        (Normal::Lam(..), _) | (_, Some(_)) => format!("({})", self.term(lhs, names, false)),
                        _ => self.term(lhs, names, false),
                    };
                    let r_ = match (rhs, self.infix_of(rhs)) {
                        (Normal::Lam(..), _) => format!("({})", self.term(rhs, names, false)),
                        (_, Some(p2)) if p2 < prec => format!("({})", self.term(rhs, names, false)),
                        _ => self.term(rhs, names, false),
                    };
                    let s = format!("{l} {c} {r_}");
                    return if arg { format!("({s})") } else { s };
                }
                let mut s = self.head(&r.head, names);
                for m in &r.spine {
                    s.push(' ');
                    s.push_str(&self.term(m, names, true));
                }
                if arg && !r.spine.is_empty() {
                    format!("({s})")
                } else {
                    s
                }
            }
        }
    }

    fn spine(&self, head: &Name, spine: &[Normal], names: &mut Names) -> String {
        let mut s = head.to_string();
        for m in spine {
            s.push(' ');
            s.push_str(&self.term(m, names, true));
        }
        s
    }

    /// `level`: 0 top, 1 arrow domain, 2 argument.
    fn ty(&self, a: &Type, names: &mut Names, level: u8) -> String {
        match a {
            Type::Atom(p) => {
                let s = self.spine(&p.fam, &p.spine, names);
                if level >= 2 && !p.spine.is_empty() {
                    format!("({s})")
                } else {
                    s
                }
            }
            Type::Pi(h, dom, cod) => {
                let dep = mentions_bound(&**cod, 0);
                let d = self.ty(dom, names, if dep { 0 } else { 1 });
                let x = names.bind(&if dep { h.name().clone() } else { Name::new("_") });
                let c = self.ty(cod, names, 0);
                names.unbind();
                let s = if dep { format!("{{{x}:{d}}} {c}") } else { format!("{d} -> {c}") };
                if level >= 1 {
                    format!("({s})")
                } else {
                    s
                }
            }
        }
    }

    fn kind(&self, k: &Kind, names: &mut Names) -> String {
        match k {
            Kind::Type => "type".into(),
            Kind::Pi(h, dom, rest) => {
                let dep = mentions_bound(&**rest, 0);
                let d = self.ty(dom, names, if dep { 0 } else { 1 });
                let x = names.bind(&if dep { h.name().clone() } else { Name::new("_") });
                let r = self.kind(rest, names);
                names.unbind();
                if dep {
                    format!("{{{x}:{d}}} {r}")
                } else {
                    format!("{d} -> {r}")
                }
            }
        }
    }

    /// `level`: 0 top, 1 arrow codomain or right of `^`, 2 arrow domain.
    fn sort(&self, s: &Sort, names: &mut Names, level: u8) -> String {
        match s {
            Sort::Top => "#".into(),
            Sort::Atom(q) => {
                let t = self.spine(&q.fam, &q.spine, names);
                if level >= 3 && !q.spine.is_empty() {
                    format!("({t})")
                } else {
                    t
                }
            }
            Sort::Inter(a, b) => {
                let l = match **a {
                    Sort::Pi(_, _, _, ref t) if mentions_bound(&**t, 0) => format!("({})", self.sort(a, names, 0)),
                    _ => self.sort(a, names, 0),
                };
                let r = self.sort(b, names, 1);
                let t = format!("{l} ^ {r}");
                if level >= 1 {
                    format!("({t})")
                } else {
                    t
                }
            }
            Sort::Pi(h, dom, _, cod) => {
                let dep = mentions_bound(&**cod, 0);
                let d = self.sort(dom, names, if dep { 0 } else { 2 });
                let x = names.bind(&if dep { h.name().clone() } else { Name::new("_") });
                let c = self.sort(cod, names, if dep { 0 } else { 1 });
                names.unbind();
                let t = if dep { format!("{{{x}::{d}}} {c}") } else { format!("{d} -> {c}") };
                if level >= 2 {
                    format!("({t})")
                } else {
                    t
                }
            }
        }
    }

    fn class(&self, l: &Class, names: &mut Names, level: u8) -> String {
        match l {
            Class::Sort => "sort".into(),
            Class::Top => "#".into(),
            Class::Inter(a, b) => {
                let la = match **a {
                    Class::Pi(_, _, _, ref t) if mentions_bound(&**t, 0) => format!("({})", self.class(a, names, 0)),
                    _ => self.class(a, names, 0),
                };
                let t = format!("{la} ^ {}", self.class(b, names, 1));
                if level >= 1 {
                    format!("({t})")
                } else {
                    t
                }
            }
            Class::Pi(h, dom, _, cod) => {
                let dep = mentions_bound(&**cod, 0);
                let d = self.sort(dom, names, if dep { 0 } else { 2 });
                let x = names.bind(&if dep { h.name().clone() } else { Name::new("_") });
                let c = self.class(cod, names, if dep { 0 } else { 1 });
                names.unbind();
                let t = if dep { format!("{{{x}::{d}}} {c}") } else { format!("{d} -> {c}") };
                if level >= 2 {
                    format!("({t})")
                } else {
                    t
                }
            }
        }
    }

    pub fn decl(&self, d: &Decl) -> String {
        let mut taken = BTreeSet::new();
        d.collect_names(&mut taken);
        let mut names = Names { stack: Vec::new(), taken };
        d.render(self, &mut names)
    }

    pub fn signature(&self, sig: &Signature) -> String {
        let mut out = String::new();
        let mut ops: Vec<_> = sig.fixities().iter().collect();
        ops.sort_by(|a, b| a.0.cmp(b.0));
        for (op, (_, prec)) in ops {
            out.push_str(&format!("%infix right {prec} {op}.\n"));
        }
        for d in sig.decls() {
            out.push_str(&self.decl(d));
            out.push('\n');
        }
        out
    }

    pub fn context(&self, ctx: &Context) -> String {
        let mut parts = Vec::new();
        let mut outer: Vec<Name> = Vec::new();
        for e in &ctx.entries {
            parts.push(format!("{} :: {}", e.name, self.show_in(&outer, &e.sort)));
            outer.push(e.name.clone());
        }
        parts.join(", ")
    }
}

fn names_of<T: crate::syntax::Syntax>(t: &T, out: &mut BTreeSet<Name>) {
    out.extend(constants(t));
    out.extend(free_vars(t));
}

impl Show for Normal {
    fn collect_names(&self, out: &mut BTreeSet<Name>) {
        names_of(self, out)
    }
    fn render(&self, p: &Printer<'_>, names: &mut Names) -> String {
        p.term(self, names, false)
    }
}

impl Show for Atomic {
    fn collect_names(&self, out: &mut BTreeSet<Name>) {
        names_of(&Normal::Atom(self.clone()), out)
    }
    fn render(&self, p: &Printer<'_>, names: &mut Names) -> String {
        p.term(&Normal::Atom(self.clone()), names, false)
    }
}

impl Show for Type {
    fn collect_names(&self, out: &mut BTreeSet<Name>) {
        names_of(self, out)
    }
    fn render(&self, p: &Printer<'_>, names: &mut Names) -> String {
        p.ty(self, names, 0)
    }
}

impl Show for AtomType {
    fn collect_names(&self, out: &mut BTreeSet<Name>) {
        names_of(self, out)
    }
    fn render(&self, p: &Printer<'_>, names: &mut Names) -> String {
        p.spine(&self.fam, &self.spine, names)
    }
}

impl Show for Kind {
    fn collect_names(&self, out: &mut BTreeSet<Name>) {
        names_of(self, out)
    }
    fn render(&self, p: &Printer<'_>, names: &mut Names) -> String {
        p.kind(self, names)
    }
}

impl Show for Sort {
    fn collect_names(&self, out: &mut BTreeSet<Name>) {
        names_of(self, out)
    }
    fn render(&self, p: &Printer<'_>, names: &mut Names) -> String {
        p.sort(self, names, 0)
    }
}

impl Show for AtomSort {
    fn collect_names(&self, out: &mut BTreeSet<Name>) {
        names_of(self, out)
    }
    fn render(&self, p: &Printer<'_>, names: &mut Names) -> String {
        p.spine(&self.fam, &self.spine, names)
    }
}

impl Show for Class {
    fn collect_names(&self, out: &mut BTreeSet<Name>) {
        names_of(self, out)
    }
    fn render(&self, p: &Printer<'_>, names: &mut Names) -> String {
        p.class(self, names, 0)
    }
}

impl Show for Decl {
    fn collect_names(&self, out: &mut BTreeSet<Name>) {
        match self {
            Decl::TypeFam(_, k) => names_of(k, out),
            Decl::TermConst(_, a) => names_of(a, out),
            Decl::SortFam(_, _, l) => names_of(l, out),
            Decl::SubDecl(..) => {}
            Decl::ConstRef(_, s) => names_of(s, out),
        }
    }
    fn render(&self, p: &Printer<'_>, names: &mut Names) -> String {
        match self {
            Decl::TypeFam(a, k) => format!("{a} : {}.", p.kind(k, names)),
            Decl::TermConst(c, t) => format!("{c} : {}.", p.ty(t, names, 0)),
            Decl::SortFam(s, a, l) => format!("{s} << {a} :: {}.", p.class(l, names, 0)),
            Decl::SubDecl(s1, s2) => format!("{s1} <: {s2}."),
            Decl::ConstRef(c, s) => format!("{c} :: {}.", p.sort(s, names, 0)),
        }
    }
}
