//! Subsorting at higher sorts.
//!
//! `S` is a subsort of `T` (both refining `A`) when the η-expansion of a
//! variable of sort `S` checks against `T`. The algorithmic judgment
//! `Δ ≤ T` decides this without building the expansion.

use crate::check::Checker;
use crate::signature::Context;
use crate::subst::{eta_var, erase_type};
use crate::syntax::{open, split, Name, Sort, Type};

/// Fresh variables for subsorting queries start with `%`, which no source
/// identifier can contain.
pub fn reserved_fresh(ctx: &Context) -> Name {
    ctx.fresh(&Name::new("%x"))
}

/// `Γ, x::S⊏A ⊢ η_A(x) ⇐ T`
pub fn intrinsic_subsort(ch: &Checker<'_>, ctx: &Context, s: &Sort, t: &Sort, a: &Type) -> bool {
    let x = reserved_fresh(ctx);
    let ctx2 = ctx.push(x.clone(), s.clone(), a.clone());
    ch.acheck(&ctx2, &eta_var(a, &x), t).is_ok()
}

/// `Γ ⊢ Δ ≤ S`
pub fn algo_subsort(ch: &Checker<'_>, ctx: &Context, d: &[Sort], s: &Sort) -> bool {
    match s {
        Sort::Top => true,
        Sort::Inter(s1, s2) => algo_subsort(ch, ctx, d, s1) && algo_subsort(ch, ctx, d, s2),
        Sort::Atom(q) => d.iter().any(|e| matches!(e, Sort::Atom(q2) if ch.sig.subsort_q(q2, q))),
        Sort::Pi(h, s1, a1, s2) => {
            let x = ctx.fresh(&Name::new(&format!("%{}", h.name())));
            let ctx2 = ctx.push(x.clone(), (**s1).clone(), (**a1).clone());
            let d2 = algo_apply(ch, &ctx2, d, &x, &split(s1), a1);
            algo_subsort(ch, &ctx2, &d2, &open(&**s2, &x))
        }
    }
}

/// `Γ ⊢ Δ @ x::Δ₁⊏A₁ = Δ₂`: the codomains of the entries whose domain
/// admits every sort in `d1`, instantiated at `η_{A₁}(x)`.
pub fn algo_apply(ch: &Checker<'_>, ctx: &Context, d: &[Sort], x: &Name, d1: &[Sort], a1: &Type) -> Vec<Sort> {
    let arg = eta_var(a1, x);
    let alpha = erase_type(a1);
    let mut out = Vec::new();
    for e in d {
        if let Sort::Pi(_, dom, _, cod) = e {
            if !algo_subsort(ch, ctx, d1, dom) {
                continue;
            }
            if let Ok(c) = ch.subst.instantiate(&**cod, &arg, &alpha) {
                out.extend(split(&c));
            }
        }
    }
    out
}

/// `⋀Δ`, folding from the left starting at ⊤.
pub fn binter(d: &[Sort]) -> Sort {
    d.iter().fold(Sort::Top, |acc, s| Sort::inter(acc, s.clone()))
}
