mod support;

use support::criteria;
use support::enumerate::Enumerator;

#[test]
fn golden_signatures_check() {
    criteria::golden_checks_in_process().unwrap();
}

#[test]
fn worked_derivations() {
    criteria::derivations().unwrap();
}

#[test]
fn query_with_an_odd_index_is_rejected() {
    let m = criteria::static_sort_error().unwrap();
    assert!(m.contains("argument 2"), "{m}");
}

#[test]
fn failing_check_directive_names_the_sorts() {
    let text = support::golden_text("nat.lfr") + "\n%check z :: odd.\n";
    let d = lfr::load_str(&text, &lfr::Options::default()).unwrap_err();
    assert_eq!(d.stage, lfr::Stage::Check);
    assert!(d.message.contains("`z` does not have sort `odd`"), "{}", d.message);
}

#[test]
fn small_enumeration_is_complete() {
    criteria::completeness(4).unwrap();
}

#[test]
fn enumeration_counts() {
    // One head: size 1 gives the head and `<>`; size 2 adds `.1`, `.2` and a λ
    // over each size-1 term under one binder.
    let mut e = Enumerator::new(vec![lfr::Name::new("c")]);
    assert_eq!(e.terms(0, 1).len(), 2);
    assert_eq!(e.terms(0, 2).len(), 2 + 3);
}
