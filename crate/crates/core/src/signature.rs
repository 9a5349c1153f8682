//! Signatures and sorting contexts.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::subst::{Subst, SubstFailure};
use crate::syntax::{fresh_name, AtomSort, Class, Kind, Name, Normal, SimpleType, Sort, Type};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decl {
    TypeFam(Name, Kind),
    TermConst(Name, Type),
    SortFam(Name, Name, Class),
    SubDecl(Name, Name),
    ConstRef(Name, Sort),
}

impl Decl {
    pub fn name(&self) -> &Name {
        match self {
            Decl::TypeFam(n, _) | Decl::TermConst(n, _) | Decl::SortFam(n, _, _) | Decl::SubDecl(n, _) | Decl::ConstRef(n, _) => n,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SortFam {
    pub refines: Name,
    pub class: Class,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Assoc {
    Right,
}

#[derive(Clone, Debug, Default)]
pub struct Signature {
    decls: Vec<Decl>,
    fams: HashMap<Name, Kind>,
    consts: HashMap<Name, Type>,
    sorts: HashMap<Name, SortFam>,
    refs: HashMap<Name, Vec<Sort>>,
    edges: Vec<(Name, Name)>,
    closure: HashMap<Name, BTreeSet<Name>>,
    fixity: HashMap<Name, (Assoc, u32)>,
}

impl Signature {
    pub fn new() -> Signature {
        Signature::default()
    }

    pub fn decls(&self) -> &[Decl] {
        &self.decls
    }

    pub fn fam_kind(&self, a: &Name) -> Option<&Kind> {
        self.fams.get(a)
    }

    pub fn const_type(&self, c: &Name) -> Option<&Type> {
        self.consts.get(c)
    }

    pub fn sort_fam(&self, s: &Name) -> Option<&SortFam> {
        self.sorts.get(s)
    }

    /// Every sort declared for `c`, in declaration order.
    pub fn const_sorts(&self, c: &Name) -> &[Sort] {
        self.refs.get(c).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn edges(&self) -> &[(Name, Name)] {
        &self.edges
    }

    pub fn fixity(&self, op: &Name) -> Option<(Assoc, u32)> {
        self.fixity.get(op).copied()
    }

    pub fn set_fixity(&mut self, op: Name, assoc: Assoc, prec: u32) {
        self.fixity.insert(op, (assoc, prec));
    }

    pub fn fixities(&self) -> &HashMap<Name, (Assoc, u32)> {
        &self.fixity
    }

    pub fn sort_fams(&self) -> impl Iterator<Item = (&Name, &SortFam)> {
        self.decls.iter().filter_map(|d| match d {
            Decl::SortFam(s, _, _) => Some((s, &self.sorts[s])),
            _ => None,
        })
    }

    /// Adds an already checked declaration.
    pub fn push(&mut self, d: Decl) {
        match &d {
            Decl::TypeFam(a, k) => {
                self.fams.insert(a.clone(), k.clone());
            }
            Decl::TermConst(c, t) => {
                self.consts.insert(c.clone(), t.clone());
            }
            Decl::SortFam(s, a, l) => {
                self.sorts.insert(s.clone(), SortFam { refines: a.clone(), class: l.clone() });
                self.closure.insert(s.clone(), [s.clone()].into_iter().collect());
            }
            Decl::SubDecl(s1, s2) => {
                self.edges.push((s1.clone(), s2.clone()));
                self.build_closure();
            }
            Decl::ConstRef(c, s) => {
                self.refs.entry(c.clone()).or_default().push(s.clone());
            }
        }
        self.decls.push(d);
    }

    /// Recomputes the reflexive-transitive closure of the declared edges.
    pub fn build_closure(&mut self) {
        let mut closure: HashMap<Name, BTreeSet<Name>> =
            self.sorts.keys().map(|s| (s.clone(), [s.clone()].into_iter().collect())).collect();
        for (a, b) in &self.edges {
            closure.entry(a.clone()).or_default().insert(b.clone());
        }
        loop {
            let mut changed = false;
            let keys: Vec<Name> = closure.keys().cloned().collect();
            for k in &keys {
                let above: Vec<Name> = closure[k].iter().cloned().collect();
                for m in above {
                    let next: Vec<Name> = closure.get(&m).map(|s| s.iter().cloned().collect()).unwrap_or_default();
                    let set = closure.get_mut(k).unwrap();
                    for n in next {
                        changed |= set.insert(n);
                    }
                }
            }
            if !changed {
                break;
            }
        }
        self.closure = closure;
    }

    pub fn closure(&self) -> &HashMap<Name, BTreeSet<Name>> {
        &self.closure
    }

    pub fn heads_leq(&self, s1: &Name, s2: &Name) -> bool {
        s1 == s2 || self.closure.get(s1).is_some_and(|set| set.contains(s2))
    }

    pub fn subsort_q(&self, q1: &AtomSort, q2: &AtomSort) -> bool {
        self.heads_leq(&q1.fam, &q2.fam) && q1.spine == q2.spine
    }

    /// Shortest chain of declared edges from `from` to `to`; ties go to the
    /// edge declared first.
    pub fn climb_path(&self, from: &Name, to: &Name) -> Option<Vec<(Name, Name)>> {
        let mut parent: HashMap<Name, (Name, Name)> = HashMap::new();
        let mut seen: BTreeSet<Name> = [from.clone()].into_iter().collect();
        let mut queue = VecDeque::from([from.clone()]);
        while let Some(cur) = queue.pop_front() {
            if &cur == to {
                let mut path = Vec::new();
                let mut at = cur;
                while let Some(e) = parent.get(&at) {
                    path.push(e.clone());
                    at = e.0.clone();
                }
                path.reverse();
                return Some(path);
            }
            for (a, b) in &self.edges {
                if a == &cur && seen.insert(b.clone()) {
                    parent.insert(b.clone(), (a.clone(), b.clone()));
                    queue.push_back(b.clone());
                }
            }
        }
        None
    }

    /// Keeps only the plain LF declarations.
    pub fn erase(&self) -> Signature {
        let mut out = Signature::new();
        out.fixity = self.fixity.clone();
        for d in &self.decls {
            if matches!(d, Decl::TypeFam(..) | Decl::TermConst(..)) {
                out.push(d.clone());
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CtxEntry {
    pub name: Name,
    pub sort: Sort,
    pub ty: Type,
}

/// Sorting context `Γ`; each variable carries a sort and the type it refines.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Context {
    pub entries: Vec<CtxEntry>,
}

pub type LfCtx = Vec<(Name, Type)>;

impl Context {
    pub fn new() -> Context {
        Context::default()
    }

    pub fn lookup(&self, x: &Name) -> Option<&CtxEntry> {
        self.entries.iter().rev().find(|e| &e.name == x)
    }

    pub fn push(&self, x: Name, sort: Sort, ty: Type) -> Context {
        let mut out = self.clone();
        out.entries.push(CtxEntry { name: x, sort, ty });
        out
    }

    pub fn contains(&self, x: &Name) -> bool {
        self.entries.iter().any(|e| &e.name == x)
    }

    pub fn fresh(&self, hint: &Name) -> Name {
        fresh_name(hint, |n| self.contains(n))
    }

    pub fn erase(&self) -> LfCtx {
        self.entries.iter().map(|e| (e.name.clone(), e.ty.clone())).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `[n0/x0]Γ`, applied entry-wise.
    pub fn hsubst(&self, subst: &Subst, n0: &Normal, x0: &Name, alpha0: &SimpleType) -> Result<Context, SubstFailure> {
        let entries = self
            .entries
            .iter()
            .map(|e| {
                Ok(CtxEntry {
                    name: e.name.clone(),
                    sort: subst.hsubst(n0, x0, alpha0, &e.sort)?,
                    ty: subst.hsubst(n0, x0, alpha0, &e.ty)?,
                })
            })
            .collect::<Result<_, SubstFailure>>()?;
        Ok(Context { entries })
    }
}
