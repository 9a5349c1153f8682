//! Bounded proof search in the declarative systems.
//!
//! Both searches are sound but incomplete beyond their depth bound; they
//! exist to cross-check the algorithmic judgments, not to replace them.

use std::collections::HashMap;

use crate::check::Checker;
use crate::signature::Context;
use crate::subsort::binter;
use crate::subst::erase_type;
use crate::syntax::{has_loose_bound, open, split, Atomic, Head, Name, Normal, Sort, Type};

/// Default derivation-height bound for subsorting queries.
pub const SUBSORT_DEPTH: u32 = 6;
/// Default derivation-height bound for typing queries.
pub const TYPING_DEPTH: u32 = 64;

/// Declarative subsorting: refl, trans, S-Π, ⊤-R, ∧-R, ∧-L₁, ∧-L₂,
/// ⊤/Π-dist, ∧/Π-dist and the atomic closure rule, with S-∧, ∧-assoc
/// and ∧/Π-dist′ as shortcuts. Middle sorts for trans come from a finite
/// pool built from the goal.
pub struct SubsortOracle<'c, 's> {
    ch: &'c Checker<'s>,
    /// Best known outcome per goal: proved at some height, or refuted up
    /// to some height.
    memo: HashMap<(Sort, Sort, Type), Outcome>,
    refines: HashMap<(Sort, Type), bool>,
    pool_cap: usize,
}

#[derive(Clone, Copy)]
enum Outcome {
    Proved,
    FailedUpTo(u32),
}

impl<'c, 's> SubsortOracle<'c, 's> {
    pub fn new(ch: &'c Checker<'s>) -> Self {
        SubsortOracle { ch, memo: HashMap::new(), refines: HashMap::new(), pool_cap: 24 }
    }

    /// `Γ ⊢ S ≤ T ⊏ A` with a derivation of height at most `depth`.
    pub fn prove(&mut self, ctx: &Context, s: &Sort, t: &Sort, a: &Type, depth: u32) -> bool {
        if depth == 0 {
            return false;
        }
        let key = (s.clone(), t.clone(), a.clone());
        match self.memo.get(&key) {
            Some(Outcome::Proved) => return true,
            Some(Outcome::FailedUpTo(d)) if *d >= depth => return false,
            _ => {}
        }
        // Guards against cycles through trans while the goal is open.
        self.memo.insert(key.clone(), Outcome::FailedUpTo(depth));
        let ok = self.search(ctx, s, t, a, depth);
        self.memo.insert(key, if ok { Outcome::Proved } else { Outcome::FailedUpTo(depth) });
        ok
    }

    fn search(&mut self, ctx: &Context, s: &Sort, t: &Sort, a: &Type, depth: u32) -> bool {
        let d = depth - 1;
        // refl, ⊤-R
        if s == t || *t == Sort::Top {
            return true;
        }
        // atomic closure
        if let (Sort::Atom(q1), Sort::Atom(q2)) = (s, t) {
            if self.ch.sig.subsort_q(q1, q2) {
                return true;
            }
        }
        // ⊤/Π-dist
        if let (Sort::Top, Sort::Pi(_, _, _, cod)) = (s, t) {
            if **cod == Sort::Top {
                return true;
            }
        }
        // ∧/Π-dist
        if let (Sort::Inter(l, r), Sort::Pi(_, dom, _, cod)) = (s, t) {
            if let (Sort::Pi(_, d1, _, t1), Sort::Pi(_, d2, _, t2), Sort::Inter(c1, c2)) = (&**l, &**r, &**cod) {
                if d1 == dom && d2 == dom && t1 == c1 && t2 == c2 {
                    return true;
                }
            }
        }
        // ∧-assoc
        if let (Sort::Inter(s1, s23), Sort::Inter(s12, s3)) = (s, t) {
            if let (Sort::Inter(s2, s3b), Sort::Inter(s1b, s2b)) = (&**s23, &**s12) {
                if s1 == s1b && s2 == s2b && s3 == s3b {
                    return true;
                }
            }
        }
        // ∧-R
        if let Sort::Inter(t1, t2) = t {
            if self.prove(ctx, s, t1, a, d) && self.prove(ctx, s, t2, a, d) {
                return true;
            }
        }
        // ∧-L₁, ∧-L₂, S-∧
        if let Sort::Inter(s1, s2) = s {
            if self.prove(ctx, s1, t, a, d) || self.prove(ctx, s2, t, a, d) {
                return true;
            }
            if let Sort::Inter(t1, t2) = t {
                if self.prove(ctx, s1, t1, a, d) && self.prove(ctx, s2, t2, a, d) {
                    return true;
                }
            }
        }
        // S-Π
        if let (Sort::Pi(h, s1, a1, t1), Sort::Pi(_, s2, _, t2), Type::Pi(_, _, a2)) = (s, t, a) {
            if self.prove(ctx, s2, s1, a1, d) {
                let x = ctx.fresh(&Name::new(&format!("%{}", h.name())));
                let ctx2 = ctx.push(x.clone(), (**s2).clone(), (**a1).clone());
                if self.prove(&ctx2, &open(&**t1, &x), &open(&**t2, &x), &open(&**a2, &x), d) {
                    return true;
                }
            }
        }
        // ∧/Π-dist′
        if let (Sort::Inter(s0, r), Sort::Pi(h, t1, a1, cod)) = (s, t) {
            if let (Sort::Pi(_, s1, _, s2), Sort::Inter(t2, s2b)) = (&**r, &**cod) {
                if s2 == s2b {
                    let mid = Sort::Pi(h.clone(), t1.clone(), a1.clone(), t2.clone());
                    if self.prove(ctx, s0, &mid, a, d) && self.prove(ctx, t1, s1, a1, d) {
                        return true;
                    }
                }
            }
        }
        // trans
        if d >= 2 {
            for m in self.pool(ctx, s, t, a) {
                if m == *s || m == *t {
                    continue;
                }
                if self.prove(ctx, s, &m, a, d) && self.prove(ctx, &m, t, a, d) {
                    return true;
                }
            }
        }
        false
    }

    /// Candidate middle sorts: locally closed subterms of both sides, the
    /// ⋀-fold of their splits, and each Π subterm with its codomain
    /// ⋀-folded or replaced by ⊤; kept only if they refine `a`.
    fn pool(&mut self, ctx: &Context, s: &Sort, t: &Sort, a: &Type) -> Vec<Sort> {
        let mut raw = Vec::new();
        for x in [s, t] {
            subterms(x, &mut raw);
            raw.push(binter(&split(x)));
        }
        let mut extra = Vec::new();
        for x in &raw {
            if let Sort::Pi(h, dom, ty, cod) = x {
                extra.push(Sort::Pi(h.clone(), dom.clone(), ty.clone(), Box::new(binter(&split(cod)))));
                extra.push(Sort::Pi(h.clone(), dom.clone(), ty.clone(), Box::new(Sort::Top)));
            }
        }
        raw.extend(extra);
        let mut out: Vec<Sort> = Vec::new();
        for m in raw {
            if out.len() >= self.pool_cap {
                break;
            }
            if has_loose_bound(&m) || out.contains(&m) {
                continue;
            }
            let key = (m.clone(), a.clone());
            let ok = match self.refines.get(&key) {
                Some(b) => *b,
                None => {
                    let b = self.ch.check_sort(ctx, &m, a).is_ok();
                    self.refines.insert(key, b);
                    b
                }
            };
            if ok {
                out.push(m);
            }
        }
        out
    }
}

fn subterms(s: &Sort, out: &mut Vec<Sort>) {
    out.push(s.clone());
    match s {
        Sort::Inter(a, b) => {
            subterms(a, out);
            subterms(b, out);
        }
        Sort::Pi(_, dom, _, cod) => {
            subterms(dom, out);
            subterms(cod, out);
        }
        Sort::Atom(_) | Sort::Top => {}
    }
}

/// One-shot declarative subsorting query.
pub fn declarative_subsort(ch: &Checker<'_>, ctx: &Context, s: &Sort, t: &Sort, a: &Type, depth: u32) -> bool {
    SubsortOracle::new(ch).prove(ctx, s, t, a, depth)
}

/// Declarative sort checking: ⊤-I, ∧-I, Π-I and switch against an
/// atomic sort, with synthesis by const, var, Π-E and ∧-E.
pub fn declarative_check(ch: &Checker<'_>, ctx: &Context, n: &Normal, s: &Sort, depth: u32) -> bool {
    if depth == 0 {
        return false;
    }
    let d = depth - 1;
    match (n, s) {
        (_, Sort::Top) => true,
        (_, Sort::Inter(s1, s2)) => declarative_check(ch, ctx, n, s1, d) && declarative_check(ch, ctx, n, s2, d),
        (Normal::Lam(_, body), Sort::Pi(h, s1, a1, s2)) => {
            let x = ctx.fresh(h.name());
            let ctx2 = ctx.push(x.clone(), (**s1).clone(), (**a1).clone());
            declarative_check(ch, &ctx2, &open(&**body, &x), &open(&**s2, &x), d)
        }
        (Normal::Atom(r), Sort::Atom(q)) => declarative_synth(ch, ctx, r, d)
            .iter()
            .any(|s2| matches!(s2, Sort::Atom(q2) if ch.sig.subsort_q(q2, q))),
        _ => false,
    }
}

/// Every sort derivable for `r` within the bound, closed under ∧-E.
pub fn declarative_synth(ch: &Checker<'_>, ctx: &Context, r: &Atomic, depth: u32) -> Vec<Sort> {
    if depth == 0 {
        return Vec::new();
    }
    let d = depth - 1;
    let start = match &r.head {
        Head::Const(c) => {
            let sorts = ch.sig.const_sorts(c);
            match sorts.split_first() {
                None => return Vec::new(),
                Some((first, rest)) => rest.iter().fold(first.clone(), |acc, s| Sort::inter(acc, s.clone())),
            }
        }
        Head::Var(x) => match ctx.lookup(x) {
            Some(e) => e.sort.clone(),
            None => return Vec::new(),
        },
        Head::Bound(_) => return Vec::new(),
    };
    let mut cur = elim_closure(&start);
    for arg in &r.spine {
        let mut next = Vec::new();
        for s in &cur {
            if let Sort::Pi(_, dom, a1, cod) = s {
                if !declarative_check(ch, ctx, arg, dom, d) {
                    continue;
                }
                if let Ok(c) = ch.subst.instantiate(&**cod, arg, &erase_type(a1)) {
                    for e in elim_closure(&c) {
                        if !next.contains(&e) {
                            next.push(e);
                        }
                    }
                }
            }
        }
        cur = next;
    }
    cur
}

fn elim_closure(s: &Sort) -> Vec<Sort> {
    let mut out = vec![s.clone()];
    if let Sort::Inter(a, b) = s {
        for e in elim_closure(a).into_iter().chain(elim_closure(b)) {
            if !out.contains(&e) {
                out.push(e);
            }
        }
    }
    out
}
