//! Generators driven by a stream of choices, so that proptest shrinks them
//! toward small outputs: an exhausted stream always picks the first option.

use lfr::{close, Atomic, Head, Hint, Name, Normal, SimpleType, Sort, Type};
use proptest::prelude::*;

pub struct Choices<'a> {
    stream: &'a [u32],
    pos: usize,
}

impl<'a> Choices<'a> {
    pub fn new(stream: &'a [u32]) -> Choices<'a> {
        Choices { stream, pos: 0 }
    }

    /// A number below `n`, which must be positive.
    pub fn pick(&mut self, n: usize) -> usize {
        let c = self.stream.get(self.pos).copied().unwrap_or(0);
        self.pos += 1;
        c as usize % n
    }

    pub fn coin(&mut self) -> bool {
        self.pick(2) == 1
    }
}

pub fn stream(len: usize) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(any::<u32>(), len)
}

pub fn base(s: &str) -> SimpleType {
    SimpleType::Base(Name::new(s))
}

pub fn arrow(a: SimpleType, b: SimpleType) -> SimpleType {
    SimpleType::arrow(a, b)
}

/// Argument types and target of `alpha`.
pub fn unroll(alpha: &SimpleType) -> (Vec<SimpleType>, Name) {
    let mut args = Vec::new();
    let mut cur = alpha;
    loop {
        match cur {
            SimpleType::Base(a) => return (args, a.clone()),
            SimpleType::Arrow(a, b) => {
                args.push((**a).clone());
                cur = b;
            }
        }
    }
}

/// A simple type over bases `a` and `b` with at most `depth` nested arrows.
pub fn simple_type(ch: &mut Choices<'_>, depth: u32) -> SimpleType {
    if depth == 0 || ch.pick(3) == 0 {
        return if ch.coin() { base("b") } else { base("a") };
    }
    arrow(simple_type(ch, depth - 1), simple_type(ch, depth - 1))
}

/// Constants available to generated terms.
pub fn constants() -> Vec<(Name, SimpleType)> {
    let (a, b) = (base("a"), base("b"));
    vec![
        (Name::new("ca"), a.clone()),
        (Name::new("cb"), b.clone()),
        (Name::new("f"), arrow(a.clone(), a.clone())),
        (Name::new("g"), arrow(a.clone(), arrow(b.clone(), b.clone()))),
        (Name::new("h"), arrow(arrow(a.clone(), b.clone()), a.clone())),
        (Name::new("k"), arrow(arrow(arrow(a.clone(), a.clone()), a.clone()), b.clone())),
    ]
}

pub type Scope = Vec<(Name, SimpleType)>;

/// A canonical term of type `alpha` over `scope` and the constants, of
/// size roughly bounded by `budget`.
pub fn normal(ch: &mut Choices<'_>, scope: &Scope, alpha: &SimpleType, budget: u32) -> Normal {
    match alpha {
        SimpleType::Arrow(a, b) => {
            let y = Name::from(format!("y{}", scope.len()));
            let mut inner = scope.clone();
            inner.push((y.clone(), (**a).clone()));
            let body = normal(ch, &inner, b, budget.saturating_sub(1));
            Normal::Lam(Hint::new("y"), Box::new(close(&body, &y)))
        }
        SimpleType::Base(target) => {
            let mut heads: Vec<(Head, SimpleType)> = Vec::new();
            for (x, t) in scope.iter() {
                if unroll(t).1 == *target {
                    heads.push((Head::Var(x.clone()), t.clone()));
                }
            }
            for (c, t) in constants() {
                if unroll(&t).1 == *target {
                    heads.push((Head::Const(c), t));
                }
            }
            // Nullary heads first so that a small budget terminates.
            heads.sort_by_key(|(_, t)| unroll(t).0.len());
            let nullary = heads.iter().filter(|(_, t)| unroll(t).0.is_empty()).count();
            // Variables are preferred so that substitutions have work to do.
            let vars: Vec<usize> = (0..heads.len()).filter(|i| matches!(heads[*i].0, Head::Var(_))).collect();
            let pick = if budget > 0 && !vars.is_empty() && ch.pick(3) > 0 {
                vars[ch.pick(vars.len())]
            } else if budget == 0 {
                ch.pick(nullary)
            } else {
                ch.pick(heads.len())
            };
            let (head, t) = heads[pick].clone();
            let (args, _) = unroll(&t);
            let share = budget.saturating_sub(1) / (args.len().max(1) as u32);
            let mut r = Atomic::new(head);
            for a in &args {
                r = r.app(normal(ch, scope, a, share));
            }
            Normal::Atom(r)
        }
    }
}

/// A sort refining `a` over the nat signature (`even`, `odd`, `pos`), with
/// at most `depth` levels of structure.
pub fn nat_sort(ch: &mut Choices<'_>, a: &Type, depth: u32) -> Sort {
    let leaf = |ch: &mut Choices<'_>, a: &Type| -> Sort {
        match a {
            Type::Atom(_) => match ch.pick(4) {
                0 => Sort::atom("even", vec![]),
                1 => Sort::atom("odd", vec![]),
                2 => Sort::atom("pos", vec![]),
                _ => Sort::Top,
            },
            Type::Pi(..) => Sort::Top,
        }
    };
    if depth == 0 {
        return leaf(ch, a);
    }
    match ch.pick(3) {
        0 => leaf(ch, a),
        1 => Sort::inter(nat_sort(ch, a, depth - 1), nat_sort(ch, a, depth - 1)),
        _ => match a {
            Type::Pi(_, dom, cod) => {
                let s = nat_sort(ch, dom, depth - 1);
                let t = nat_sort(ch, cod, depth - 1);
                Sort::arrow(s, (**dom).clone(), t)
            }
            Type::Atom(_) => leaf(ch, a),
        },
    }
}

/// The types sorts are drawn over: `nat`, `nat -> nat`, `(nat -> nat) -> nat`.
pub fn nat_types() -> Vec<Type> {
    let nat = Type::atom("nat", vec![]);
    let nn = Type::arrow(nat.clone(), nat.clone());
    vec![nat.clone(), nn.clone(), Type::arrow(nn, nat)]
}

/// Numeral `s^k z`.
pub fn numeral(k: usize) -> Normal {
    let mut n: Normal = Atomic::constant("z").into();
    for _ in 0..k {
        n = Atomic::constant("s").app(n).into();
    }
    n
}
