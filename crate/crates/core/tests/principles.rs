mod support;

use lfr::{load, Checker, Context, Name, Type};

use support::criteria;
use support::load_golden;

#[test]
fn identity_at_every_golden_sort() {
    assert!(criteria::identity().unwrap() > 20);
}

#[test]
fn twenty_substitution_instances() {
    let done = criteria::substitution(20).unwrap();
    assert_eq!(done.len(), 20);
    assert!(done.iter().any(|s| s.contains("->")));
}

#[test]
fn function_sorted_substitution() {
    // x :: even -> odd ⊢ s (x z) ⇐ even, and [y] s y ⇐ even -> odd.
    let l = load_golden("nat.lfr");
    let ch = Checker::new(&l.sig);
    let nat = Type::atom("nat", vec![]);
    let ctx = load::bind(&l.sig, &Context::new(), "x", "even -> odd", "nat -> nat").unwrap();
    let n = load::term(&l.sig, &ctx, "s (x z)").unwrap();
    let even = load::sort(&l.sig, &ctx, "even", &nat).unwrap();
    ch.acheck(&ctx, &n, &even).unwrap();
    let m = load::term(&l.sig, &Context::new(), "[y] s y").unwrap();
    let alpha = lfr::erase_type(&Type::arrow(nat.clone(), nat.clone()));
    let n2 = ch.subst.hsubst(&m, &Name::new("x"), &alpha, &n).unwrap();
    assert_eq!(n2, load::term(&l.sig, &Context::new(), "s (s z)").unwrap());
    ch.acheck(&Context::new(), &n2, &even).unwrap();
}
