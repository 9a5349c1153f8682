//! A naive β-normalizer over untyped de Bruijn λ-terms: substitution with
//! shifting, then normal-order reduction under a step budget.

use lfr::{Atomic, Head, Hint, Name, Normal};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Term {
    Bound(u32),
    Free(Name),
    Const(Name),
    App(Box<Term>, Box<Term>),
    Lam(Box<Term>),
}

pub fn from_normal(n: &Normal) -> Term {
    match n {
        Normal::Lam(_, b) => Term::Lam(Box::new(from_normal(b))),
        Normal::Atom(r) => {
            let mut t = match &r.head {
                Head::Bound(i) => Term::Bound(*i),
                Head::Var(x) => Term::Free(x.clone()),
                Head::Const(c) => Term::Const(c.clone()),
            };
            for a in &r.spine {
                t = Term::App(Box::new(t), Box::new(from_normal(a)));
            }
            t
        }
    }
}

fn shift(t: &Term, by: i64, cutoff: u32) -> Term {
    match t {
        Term::Bound(i) if *i >= cutoff => Term::Bound((*i as i64 + by) as u32),
        Term::Bound(_) | Term::Free(_) | Term::Const(_) => t.clone(),
        Term::App(f, a) => Term::App(Box::new(shift(f, by, cutoff)), Box::new(shift(a, by, cutoff))),
        Term::Lam(b) => Term::Lam(Box::new(shift(b, by, cutoff + 1))),
    }
}

/// `[s/j]t`, with `s` valid at the depth of `t`.
fn subst_bound(t: &Term, j: u32, s: &Term) -> Term {
    match t {
        Term::Bound(i) if *i == j => s.clone(),
        Term::Bound(_) | Term::Free(_) | Term::Const(_) => t.clone(),
        Term::App(f, a) => Term::App(Box::new(subst_bound(f, j, s)), Box::new(subst_bound(a, j, s))),
        Term::Lam(b) => Term::Lam(Box::new(subst_bound(b, j + 1, &shift(s, 1, 0)))),
    }
}

/// `(λ.body) arg` contracted.
fn beta(body: &Term, arg: &Term) -> Term {
    shift(&subst_bound(body, 0, &shift(arg, 1, 0)), -1, 0)
}

/// Replaces the free variable `x` by the closed-over-nothing term `s`.
pub fn subst_free(t: &Term, x: &Name, s: &Term) -> Term {
    match t {
        Term::Free(y) if y == x => s.clone(),
        Term::Bound(_) | Term::Free(_) | Term::Const(_) => t.clone(),
        Term::App(f, a) => Term::App(Box::new(subst_free(f, x, s)), Box::new(subst_free(a, x, s))),
        Term::Lam(b) => Term::Lam(Box::new(subst_free(b, x, &shift(s, 1, 0)))),
    }
}

fn step(t: &Term) -> Option<Term> {
    match t {
        Term::App(f, a) => {
            if let Term::Lam(b) = &**f {
                return Some(beta(b, a));
            }
            if let Some(f2) = step(f) {
                return Some(Term::App(Box::new(f2), a.clone()));
            }
            step(a).map(|a2| Term::App(f.clone(), Box::new(a2)))
        }
        Term::Lam(b) => step(b).map(|b2| Term::Lam(Box::new(b2))),
        _ => None,
    }
}

/// Normal-order normalization; `None` when `steps` run out.
pub fn normalize(t: &Term, mut steps: u32) -> Option<Term> {
    let mut cur = t.clone();
    loop {
        match step(&cur) {
            None => return Some(cur),
            Some(next) => {
                if steps == 0 {
                    return None;
                }
                steps -= 1;
                cur = next;
            }
        }
    }
}

/// Back to canonical syntax; `None` if `t` has a redex.
pub fn to_normal(t: &Term) -> Option<Normal> {
    match t {
        Term::Lam(b) => Some(Normal::Lam(Hint::anon(), Box::new(to_normal(b)?))),
        _ => {
            let mut args = Vec::new();
            let mut cur = t;
            while let Term::App(f, a) = cur {
                args.push(to_normal(a)?);
                cur = f;
            }
            let head = match cur {
                Term::Bound(i) => Head::Bound(*i),
                Term::Free(x) => Head::Var(x.clone()),
                Term::Const(c) => Head::Const(c.clone()),
                _ => return None,
            };
            args.reverse();
            Some(Normal::Atom(Atomic { head, spine: args }))
        }
    }
}

/// `[n0/x]n` by substitution followed by β-normalization.
pub fn oracle_subst(n0: &Normal, x: &Name, n: &Normal, steps: u32) -> Option<Normal> {
    let t = subst_free(&from_normal(n), x, &from_normal(n0));
    to_normal(&normalize(&t, steps)?)
}
