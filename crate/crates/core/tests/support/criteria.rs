//! One function per acceptance criterion. Each returns a one-line summary on
//! success and the first failure otherwise.

use std::cell::RefCell;
use std::time::{Duration, Instant};

use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use lfr::lfi::abbrev::abbreviate;
use lfr::lfi::check::LChecker;
use lfr::lfi::text::{parse_lsig, parse_lterm, parse_ltype, print_lsig, show};
use lfr::lfi::{lfi_equal_with, Equality, LAtomType, LCtx, LDecl, LSig, LTerm, LType};
use lfr::load::{self, Loaded};
use lfr::oracle::{declarative_subsort, SUBSORT_DEPTH};
use lfr::subst::{eta_expand, FailReason};
use lfr::subsort::{algo_subsort, intrinsic_subsort};
use lfr::translate::{check_translated, trans_sig, verify, verify_queries, TransOptions, TransResult, Translator};
use lfr::{
    has_loose_bound, split, Atomic, AtomSort, Checker, Context, Decl, Name, Normal, Signature, SimpleType,
    Sort, Subst, Type,
};

use super::beta::oracle_subst;
use super::enumerate::Enumerator;
use super::gen::{self, Choices, Scope};
use super::{golden_sources, load_golden};

pub type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// A choice stream drawn from a fixed-seed runner.
pub struct Streams {
    runner: TestRunner,
}

impl Streams {
    pub fn new() -> Streams {
        Streams { runner: TestRunner::deterministic() }
    }

    pub fn next(&mut self, len: usize) -> Vec<u32> {
        gen::stream(len).new_tree(&mut self.runner).expect("stream").current()
    }
}

impl Default for Streams {
    fn default() -> Streams {
        Streams::new()
    }
}

pub fn translate(loaded: &Loaded) -> Result<TransResult, String> {
    trans_sig(&loaded.sig, &TransOptions::default()).map(|(tr, _)| tr).map_err(|(i, e)| format!("declaration {i}: {e}"))
}

fn nat() -> Type {
    Type::atom("nat", vec![])
}

// ---------------------------------------------------------------------------
// 1. Golden signatures check quickly

/// `run(file)` checks one golden file and reports success.
pub fn golden_checks(run: impl Fn(&str) -> bool) -> Outcome {
    let mut times = Vec::new();
    for f in ["nat.lfr", "double.lfr", "double_star.lfr", "cbv.lfr"] {
        let start = Instant::now();
        ensure(run(f), || format!("{f} does not check"))?;
        let t = start.elapsed();
        ensure(t < Duration::from_secs(1), || format!("{f} took {t:?}"))?;
        times.push(format!("{f} {:.0}ms", t.as_secs_f64() * 1e3));
    }
    Ok(times.join(", "))
}

pub fn golden_checks_in_process() -> Outcome {
    golden_checks(|f| lfr::load_str(&super::golden_text(f), &lfr::Options::default()).is_ok())
}

// ---------------------------------------------------------------------------
// 2. Worked derivations

pub fn derivations() -> Outcome {
    let l = load_golden("nat.lfr");
    let ch = Checker::new(&l.sig);
    let ctx = Context::new();
    let judge = |n: &str, s: &str| -> Result<bool, String> {
        let n = load::term(&l.sig, &ctx, n).map_err(|d| d.message)?;
        let s = load::sort(&l.sig, &ctx, s, &nat()).map_err(|d| d.message)?;
        Ok(ch.acheck(&ctx, &n, &s).is_ok())
    };
    ensure(judge("s (s z)", "even")?, || "s (s z) <= even rejected".into())?;
    ensure(judge("s z", "odd ^ pos")?, || "s z <= odd ^ pos rejected".into())?;
    ensure(!judge("z", "odd")?, || "z <= odd accepted".into())?;
    Ok("s (s z) <= even, s z <= odd ^ pos accepted; z <= odd rejected".into())
}

// ---------------------------------------------------------------------------
// 3. Static sort error on a query

pub fn static_sort_error() -> Outcome {
    let l = load_golden("double_star.lfr");
    let ctx = load::bind(&l.sig, &Context::new(), "X", "#", "nat").map_err(|d| d.message)?;
    let a = load::ty(&l.sig, &ctx, "double X (s (s (s z)))").map_err(|d| d.message)?;
    match load::sort(&l.sig, &ctx, "double* X (s (s (s z)))", &a) {
        Ok(_) => Err("double* X (s (s (s z))) was accepted".into()),
        Err(d) => {
            let m = d.message;
            ensure(m.contains("argument 2"), || format!("diagnostic does not name argument 2: {m}"))?;
            ensure(m.contains("even"), || format!("diagnostic does not mention `even`: {m}"))?;
            Ok(format!("rejected: {m}"))
        }
    }
}

// ---------------------------------------------------------------------------
// 4. Hereditary substitution properties

pub struct HsubstCase {
    pub alpha: SimpleType,
    pub beta: SimpleType,
    pub gamma: SimpleType,
    /// `n0 : alpha`, closed apart from `w`.
    pub n0: Normal,
    /// `n1 : beta`, may mention `x`.
    pub n1: Normal,
    /// `n : gamma`, may mention `x` and `y`.
    pub n: Normal,
}

pub fn hsubst_case(stream: &[u32]) -> HsubstCase {
    let mut ch = Choices::new(stream);
    let alpha = gen::simple_type(&mut ch, 2);
    let beta = gen::simple_type(&mut ch, 2);
    let gamma = gen::simple_type(&mut ch, 2);
    let w: Scope = vec![(Name::new("w"), gen::base("a"))];
    let mut wx = w.clone();
    wx.push((Name::new("x"), alpha.clone()));
    let mut wxy = wx.clone();
    wxy.push((Name::new("y"), beta.clone()));
    let n0 = gen::normal(&mut ch, &w, &alpha, 6);
    let n1 = gen::normal(&mut ch, &wx, &beta, 6);
    let n = gen::normal(&mut ch, &wxy, &gamma, 8);
    HsubstCase { alpha, beta, gamma, n0, n1, n }
}

/// Every hereditary substitution property on one case.
pub fn hsubst_properties(c: &HsubstCase) -> Result<(), String> {
    let sub = Subst::default();
    let (x, y) = (Name::new("x"), Name::new("y"));
    let run = |n0: &Normal, v: &Name, a: &SimpleType, n: &Normal| -> Result<Normal, String> {
        sub.hsubst_n(n0, v, a, n).map_err(|f| {
            if f.reason == FailReason::MetricExhausted {
                format!("fuel exhausted: {f}")
            } else {
                format!("undefined on well-typed input: {f}")
            }
        })
    };
    let r1 = run(&c.n0, &x, &c.alpha, &c.n1)?;
    ensure(r1 == run(&c.n0, &x, &c.alpha, &c.n1)?, || "not deterministic".into())?;

    let v = Name::new("v");
    ensure(run(&c.n0, &v, &c.alpha, &c.n)? == c.n, || "substitution for an absent variable changed the term".into())?;

    // [n0/x]([n1/y]n) = [[n0/x]n1/y]([n0/x]n)
    let lhs = run(&c.n0, &x, &c.alpha, &run(&c.n1, &y, &c.beta, &c.n)?)?;
    let rhs = run(&r1, &y, &c.beta, &run(&c.n0, &x, &c.alpha, &c.n)?)?;
    ensure(lhs == rhs, || "composition fails".into())?;

    let ex = eta_expand(&c.alpha, &Atomic::var(&x));
    ensure(run(&c.n0, &x, &c.alpha, &ex)? == c.n0, || "[n0/x] eta(x) differs from n0".into())?;
    ensure(run(&ex, &x, &c.alpha, &c.n1)? == c.n1, || "[eta(x)/x] n1 differs from n1".into())?;

    let oracle = oracle_subst(&c.n0, &x, &c.n1, 100_000).ok_or("beta oracle did not normalize")?;
    ensure(oracle == r1, || "differs from substitute-then-normalize".into())?;
    let oracle = oracle_subst(&c.n1, &y, &c.n, 100_000).ok_or("beta oracle did not normalize")?;
    ensure(oracle == run(&c.n1, &y, &c.beta, &c.n)?, || "differs from substitute-then-normalize".into())?;
    Ok(())
}

pub fn hsubst_suite(cases: u32) -> Outcome {
    let start = Instant::now();
    let mut runner = TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() });
    let count = RefCell::new(0u32);
    runner
        .run(&gen::stream(48), |s| {
            *count.borrow_mut() += 1;
            hsubst_properties(&hsubst_case(&s)).map_err(TestCaseError::fail)
        })
        .map_err(|e| format!("{e}"))?;
    let t = start.elapsed();
    ensure(t < Duration::from_secs(30), || format!("took {t:?}"))?;
    Ok(format!("{} cases in {:.2}s", count.into_inner(), t.as_secs_f64()))
}

// ---------------------------------------------------------------------------
// 5. Identity and substitution principles

/// Closed sorts mentioned at the top of every sort declaration.
pub fn golden_sorts(sig: &Signature) -> Vec<(Sort, Type)> {
    let mut out: Vec<(Sort, Type)> = Vec::new();
    let mut add = |s: &Sort, a: &Type| {
        if !has_loose_bound(s) && !has_loose_bound(a) && !out.iter().any(|(t, b)| t == s && b == a) {
            out.push((s.clone(), a.clone()));
        }
    };
    for d in sig.decls() {
        let Decl::ConstRef(c, s) = d else { continue };
        let Some(a) = sig.const_type(c) else { continue };
        add(s, a);
        for part in split(s) {
            add(&part, a);
            if let (Sort::Pi(_, dom, da, _), Type::Pi(..)) = (&part, a) {
                add(dom, da);
            }
        }
    }
    out
}

pub fn identity() -> Result<usize, String> {
    let mut total = 0;
    for f in golden_sources() {
        let l = load_golden(&f);
        let ch = Checker::new(&l.sig);
        for (s, a) in golden_sorts(&l.sig) {
            ensure(intrinsic_subsort(&ch, &Context::new(), &s, &s, &a), || {
                format!("{f}: eta-expanded variable fails at {}", ch.show(&Context::new(), &s))
            })?;
            total += 1;
        }
    }
    Ok(total)
}

struct SubstInstance {
    x_sort: &'static str,
    x_ty: Type,
    m: &'static str,
    n: Normal,
    t: &'static str,
}

fn subst_instance(ch: &mut Choices<'_>) -> SubstInstance {
    let nn = Type::arrow(nat(), nat());
    let xs: [(&str, &Type, &[&str]); 5] = [
        ("even", &nat(), &["z", "s (s z)", "s (s (s (s z)))"]),
        ("odd", &nat(), &["s z", "s (s (s z))"]),
        ("pos", &nat(), &["s z", "s (s (s z))"]),
        ("even -> odd", &nn, &["[y] s y", "[y] s (s (s y))"]),
        ("even -> odd ^ odd -> even", &nn, &["[y] s y", "[y] s (s (s y))"]),
    ];
    let (x_sort, x_ty, ms) = xs[ch.pick(xs.len())];
    let m = ms[ch.pick(ms.len())];
    let x = Name::new("x");
    let mut n: Normal = match x_ty {
        Type::Atom(_) => Atomic::var(&x).into(),
        Type::Pi(..) => Atomic::var(&x).app(gen::numeral(ch.pick(3))).into(),
    };
    for _ in 0..ch.pick(4) {
        n = Atomic::constant("s").app(n).into();
    }
    if matches!(x_ty, Type::Pi(..)) && ch.coin() {
        n = Atomic::var(&x).app(n).into();
    }
    let ts = ["even", "odd", "pos", "even ^ pos", "odd ^ pos"];
    SubstInstance { x_sort, x_ty: x_ty.clone(), m, n, t: ts[ch.pick(ts.len())] }
}

/// Draws instances until `want` satisfy the premises, then re-checks each
/// after substitution. Returns the instances as text.
pub fn substitution(want: usize) -> Result<Vec<String>, String> {
    let l = load_golden("nat.lfr");
    let ch = Checker::new(&l.sig);
    let empty = Context::new();
    let x = Name::new("x");
    let mut streams = Streams::new();
    let mut done = Vec::new();
    let mut tries = 0;
    while done.len() < want {
        tries += 1;
        ensure(tries < 10_000, || format!("only {} instances met the premises", done.len()))?;
        let inst = subst_instance(&mut Choices::new(&streams.next(12)));
        let s = load::sort(&l.sig, &empty, inst.x_sort, &inst.x_ty).map_err(|d| d.message)?;
        let t = load::sort(&l.sig, &empty, inst.t, &nat()).map_err(|d| d.message)?;
        let m = load::term(&l.sig, &empty, inst.m).map_err(|d| d.message)?;
        let ctx = empty.push(x.clone(), s.clone(), inst.x_ty.clone());
        if ch.acheck(&ctx, &inst.n, &t).is_err() || ch.acheck(&empty, &m, &s).is_err() {
            continue;
        }
        let text = format!("x::{} |- {} <= {} with x := {}", inst.x_sort, ch.show(&ctx, &inst.n), inst.t, inst.m);
        let alpha = lfr::erase_type(&inst.x_ty);
        let n2 = ch.subst.hsubst(&m, &x, &alpha, &inst.n).map_err(|e| format!("{text}: {e}"))?;
        let t2 = ch.subst.hsubst(&m, &x, &alpha, &t).map_err(|e| format!("{text}: {e}"))?;
        ch.acheck(&empty, &n2, &t2).map_err(|e| format!("{text}: substituted instance fails: {}", e.message))?;
        done.push(text);
    }
    Ok(done)
}

pub fn principles() -> Outcome {
    let ids = identity()?;
    let subs = substitution(20)?;
    ensure(subs.iter().any(|s| s.contains("->")), || "no function-sorted instance was drawn".into())?;
    Ok(format!("identity at {ids} sorts, {} substitution instances", subs.len()))
}

// ---------------------------------------------------------------------------
// 6. Subsorting triangle

/// Intrinsic and algorithmic subsorting agree, and the declarative oracle
/// never proves what they reject.
pub fn triangle_pair(ch: &Checker<'_>, s: &Sort, t: &Sort, a: &Type, depth: u32) -> Result<bool, String> {
    let ctx = Context::new();
    let intrinsic = intrinsic_subsort(ch, &ctx, s, t, a);
    let algo = algo_subsort(ch, &ctx, &split(s), t);
    let show = || format!("{} <= {}", ch.show(&ctx, s), ch.show(&ctx, t));
    ensure(intrinsic == algo, || format!("{}: intrinsic {intrinsic}, algorithmic {algo}", show()))?;
    if declarative_subsort(ch, &ctx, s, t, a, depth) {
        ensure(intrinsic, || format!("{}: declarative proves it, checkers reject", show()))?;
    }
    Ok(intrinsic)
}

pub fn distributivity(ch: &Checker<'_>) -> Result<(), String> {
    let ctx = Context::new();
    let even = Sort::atom("even", vec![]);
    let odd = Sort::atom("odd", vec![]);
    let pos = Sort::atom("pos", vec![]);
    let nn = Type::arrow(nat(), nat());
    let cases = [
        (Sort::Top, Sort::arrow(even.clone(), nat(), Sort::Top)),
        (
            Sort::inter(Sort::arrow(even.clone(), nat(), odd.clone()), Sort::arrow(even.clone(), nat(), pos.clone())),
            Sort::arrow(even.clone(), nat(), Sort::inter(odd.clone(), pos.clone())),
        ),
    ];
    for (s, t) in &cases {
        let show = || format!("{} <= {}", ch.show(&ctx, s), ch.show(&ctx, t));
        ensure(triangle_pair(ch, s, t, &nn, SUBSORT_DEPTH)?, || format!("{} rejected", show()))?;
        ensure(declarative_subsort(ch, &ctx, s, t, &nn, SUBSORT_DEPTH), || format!("{}: not declarative", show()))?;
    }
    Ok(())
}

pub fn triangle(generated: usize) -> Outcome {
    let mut golden = 0;
    for f in golden_sources() {
        let l = load_golden(&f);
        let ch = Checker::new(&l.sig);
        let sorts = golden_sorts(&l.sig);
        for (s, a) in &sorts {
            for (t, b) in &sorts {
                if a == b {
                    triangle_pair(&ch, s, t, a, 3).map_err(|e| format!("{f}: {e}"))?;
                    golden += 1;
                }
            }
        }
    }
    let l = load_golden("nat.lfr");
    let ch = Checker::new(&l.sig);
    distributivity(&ch)?;
    let types = gen::nat_types();
    let mut streams = Streams::new();
    let mut holds = 0;
    for _ in 0..generated {
        let stream = streams.next(40);
        let mut c = Choices::new(&stream);
        let a = &types[c.pick(types.len())];
        let s = gen::nat_sort(&mut c, a, 3);
        let t = gen::nat_sort(&mut c, a, 3);
        if triangle_pair(&ch, &s, &t, a, 3)? {
            holds += 1;
        }
    }
    Ok(format!("{golden} golden pairs, {generated} generated pairs ({holds} related), distributivity holds"))
}

// ---------------------------------------------------------------------------
// 7. Translation soundness

pub fn verify_golden(f: &str) -> Result<usize, String> {
    let l = load_golden(f);
    let tr = translate(&l)?;
    let opts = TransOptions::default();
    let proofs = verify(&l.sig, &tr, &opts).map_err(|e| format!("{f}: {e}"))?;
    let qs: Vec<_> = l.queries.iter().map(|q| (q.term.clone(), q.sort.clone(), q.ty.clone())).collect();
    verify_queries(&l.sig, &tr, &opts, &qs).map_err(|e| format!("{f}: {e}"))?;
    Ok(proofs + qs.len())
}

fn lterm(text: &str) -> Result<LTerm, String> {
    parse_lterm(&LCtx::new(), text).map_err(|d| d.message)
}

pub fn soundness() -> Outcome {
    let mut proofs = 0;
    let files = golden_sources();
    for f in &files {
        proofs += verify_golden(f)?;
    }

    let l = load_golden("evenodd.lfr");
    let tr = translate(&l)?;
    let ctx = Context::new();
    let n = load::term(&l.sig, &ctx, "s (s z)").map_err(|d| d.message)?;
    let even = load::sort(&l.sig, &ctx, "even", &nat()).map_err(|d| d.message)?;
    let proof = check_translated(&l.sig, &tr, &ctx, &n, &even, &nat()).map_err(|e| e.message)?;
    let want = lterm("s^.2 (s z) (s^.1 z z^)")?;
    ensure(proof == want, || format!("proof of s (s z) <= even is {}", show(&proof)))?;
    let goal = parse_ltype(&LCtx::new(), "even [[ even^/i ]] (s (s z))").map_err(|d| d.message)?;
    LChecker::new(&tr.sig).check(&LCtx::new(), &proof, &goal).map_err(|e| e.message)?;

    let t = Translator::new(&l.sig, &tr.names);
    let sz = Atomic::constant("s").app(Atomic::constant("z").into());
    let synth = t.synth(&ctx, &sz).map_err(|e| e.message)?;
    let first = synth.first().ok_or("no sorts synthesized for s z")?;
    ensure(first.0 == Sort::atom("odd", vec![]), || "first synthesized sort of s z is not odd".into())?;
    ensure(LTerm::Atom(first.1.clone()) == lterm("s^.1 z z^")?, || format!("s z proof is {}", show(&first.1)))?;

    let l = load_golden("zero.lfr");
    let tr = translate(&l)?;
    let nn = Type::arrow(nat(), nat());
    let id = load::term(&l.sig, &ctx, "[x] x").map_err(|d| d.message)?;
    let ze = load::sort(&l.sig, &ctx, "zero -> even", &nn).map_err(|d| d.message)?;
    let proof = check_translated(&l.sig, &tr, &ctx, &id, &ze, &nn).map_err(|e| e.message)?;
    let want = lterm("[x] [x^] zero-even zero^/i even^/i x x^")?;
    ensure(proof == want, || format!("proof of [x] x <= zero -> even is {}", show(&proof)))?;

    Ok(format!("{} golden files verify ({proofs} proofs); worked proofs match", files.len()))
}

// ---------------------------------------------------------------------------
// 8. Listings

/// Reference listings, with hats spelled `^` and subscripts appended.
pub const EVENODD_LISTING: &str = "
    even : nat -> type.
    odd : nat -> type.
    z^ : even z.
    s^1 : {x:nat} even x -> odd (s x).
    s^2 : {x:nat} odd x -> even (s x).";

pub const DOUBLE_STAR_LISTING: &str = "
    double*^ : nat -> nat -> type.
    double*^/i : {x:nat} {y:nat} even y -> double*^ x y.
    double* : {x:nat} {y:nat} double*^ x y -:> double x y -> type.
    dbl/z^ : double* z z
                [[ double*^/i z z z^ ]]
                dbl/z.
    dbl/s^ : {N:nat} {N2:nat} {N2^:even N2} {D:double N N2}
             double* N N2 [[ double*^/i N N2 N2^ ]] D
         -> double* (s N) (s (s N2))
                [[ double*^/i (s N) (s (s N2)) (s^2 (s N2) (s^1 N2 N2^)) ]]
                (dbl/s N N2 D).";

pub const ZERO_LISTING: &str = "
    zero : nat -> type.
    z^1 : even z.
    z^2 : zero z.
    zero-even : {x:nat} zero x -> even x.";

pub const COHERENCE_LISTING: &str = "
    zero : nat -> type.
    z^1 : even z.
    z^2 : zero z.
    double*^/i1 : {x:nat} {y:nat} even y -> double*^ x y.
    double*^/i2 : {x:nat} zero x -> {y:nat} zero y -> double*^ x y.
    dbl/z^ : double* z z [[ double*^/i1 z z z^1 ]] dbl/z.";

/// Every declaration of `listing` occurs in `sig` up to α-equivalence.
pub fn listing_in(sig: &LSig, listing: &str) -> Result<usize, String> {
    let want = parse_lsig(listing).map_err(|d| d.render("listing"))?;
    for d in want.decls() {
        let got = sig.decls().iter().find(|e| e.name() == d.name());
        let ok = match (d, got) {
            (LDecl::Fam(_, k), Some(LDecl::Fam(_, k2))) => k == k2,
            (LDecl::Const(_, a), Some(LDecl::Const(_, a2))) => lfi_equal_with(a, a2, Equality::Strict),
            _ => false,
        };
        ensure(ok, || format!("`{}` differs from the listing in\n{}", d.name(), print_lsig(sig)))?;
    }
    Ok(want.decls().len())
}

pub fn listings() -> Outcome {
    let mut golden = 0;
    for f in golden_sources() {
        let path = super::golden_path(&f).with_extension("lfi");
        let Ok(text) = std::fs::read_to_string(&path) else { continue };
        let want = parse_lsig(&text).map_err(|d| d.render(&path.display().to_string()))?;
        let tr = translate(&load_golden(&f))?;
        ensure(tr.sig.alpha_eq(&want), || format!("{f}: translation differs from {}", path.display()))?;
        golden += 1;
    }
    ensure(golden >= 3, || format!("only {golden} golden listings found"))?;
    let mut decls = 0;
    for (f, listing) in [
        ("evenodd.lfr", EVENODD_LISTING),
        ("double_star.lfr", DOUBLE_STAR_LISTING),
        ("zero.lfr", ZERO_LISTING),
        ("coherence.lfr", COHERENCE_LISTING),
    ] {
        let tr = translate(&load_golden(f))?;
        let short = abbreviate(&tr.sig, &tr.names.formation_families());
        decls += listing_in(&short, listing).map_err(|e| format!("{f}: {e}"))?;
    }
    Ok(format!("{golden} golden .lfi files alpha-equal; {decls} listing declarations reproduced after abbreviation"))
}

// ---------------------------------------------------------------------------
// 9. Coherence

pub fn coherence() -> Outcome {
    let l = load_golden("coherence.lfr");
    let tr = translate(&l)?;
    let t = Translator::new(&l.sig, &tr.names);
    let ctx = Context::new();
    let zz = AtomSort {
        fam: Name::new("double*"),
        spine: vec![Atomic::constant("z").into(), Atomic::constant("z").into()],
    };
    let (_, cands) = t.class_proofs(&ctx, &zz).map_err(|e| e.message)?;
    let proofs: Vec<LTerm> =
        cands.into_iter().filter(|(k, _)| *k == lfr::Class::Sort).map(|(_, p)| LTerm::Atom(p)).collect();
    ensure(proofs.len() == 2, || format!("expected two formation proofs, found {}", proofs.len()))?;
    let ty = |p: &LTerm| {
        let z = || LTerm::from(lfr::lfi::LAtom::constant("z"));
        LType::atom(
            LAtomType::constant(&Name::new("double*"))
                .rel(z())
                .rel(z())
                .irr(p.clone())
                .rel(lfr::lfi::LAtom::constant("dbl/z").into()),
        )
    };
    let (a1, a2) = (ty(&proofs[0]), ty(&proofs[1]));
    ensure(lfi_equal_with(&a1, &a2, Equality::Irrelevant), || "types differ with irrelevance".into())?;
    ensure(!lfi_equal_with(&a1, &a2, Equality::Strict), || "types coincide without irrelevance".into())?;
    let c = LTerm::from(lfr::lfi::LAtom::constant("dbl/z^"));
    for a in [&a1, &a2] {
        LChecker::new(&tr.sig).check(&LCtx::new(), &c, a).map_err(|e| e.message)?;
    }
    let strict = LChecker::with_mode(&tr.sig, Equality::Strict);
    let at = |a: &LType| strict.check(&LCtx::new(), &c, a).is_ok();
    ensure(at(&a1) != at(&a2), || "strict checking does not separate the two types".into())?;
    Ok(format!("{} and {} equal only up to irrelevance", show(&proofs[0]), show(&proofs[1])))
}

// ---------------------------------------------------------------------------
// 10. Completeness

pub fn completeness_pool(sig: &Signature) -> Result<Vec<(Normal, Sort, Type)>, String> {
    let ctx = Context::new();
    let nn = Type::arrow(nat(), nat());
    let mut out = Vec::new();
    for n in ["z", "s z", "s (s z)", "s (s (s z))"] {
        for s in ["even", "odd", "even ^ odd", "odd ^ even", "even ^ even"] {
            out.push((n, s, nat()));
        }
    }
    for n in ["[x] x", "[x] s x", "[x] s (s x)", "[x] z"] {
        for s in ["even -> odd", "odd -> even", "even -> even", "odd -> odd", "even -> odd ^ odd -> even"] {
            out.push((n, s, nn.clone()));
        }
    }
    out.into_iter()
        .map(|(n, s, a)| {
            let n = load::term(sig, &ctx, n).map_err(|d| d.message)?;
            let s = load::sort(sig, &ctx, s, &a).map_err(|d| d.message)?;
            Ok((n, s, a))
        })
        .collect()
}

pub fn completeness(max_size: usize) -> Outcome {
    let start = Instant::now();
    let l = load_golden("evenodd.lfr");
    let tr = translate(&l)?;
    let ch = Checker::new(&l.sig);
    let t = Translator::new(&l.sig, &tr.names);
    let lch = LChecker::new(&tr.sig);
    let ctx = Context::new();
    let heads: Vec<Name> =
        tr.sig.decls().iter().filter_map(|d| if let LDecl::Const(c, _) = d { Some(c.clone()) } else { None }).collect();
    let terms = Enumerator::new(heads).closed_up_to(max_size);
    let mut found = 0;
    let mut rejected = 0;
    for (n, s, a) in completeness_pool(&l.sig)? {
        let goal = t.sort_pred(&ctx, &s, &a, &lfr::lfi::from_normal(&n)).map_err(|e| e.message)?;
        let accepted = ch.acheck(&ctx, &n, &s).is_ok();
        if !accepted {
            rejected += 1;
        }
        for m in &terms {
            if lch.check(&LCtx::new(), m, &goal).is_ok() {
                ensure(accepted, || {
                    format!("{} proves {} <= {}, which is rejected", show(m), ch.show(&ctx, &n), ch.show(&ctx, &s))
                })?;
                found += 1;
            }
        }
    }
    ensure(found > 0, || "the enumeration found no proofs at all".into())?;
    let time = start.elapsed();
    ensure(time < Duration::from_secs(60), || format!("took {time:?}"))?;
    Ok(format!(
        "{} terms of size <= {max_size}, {rejected} rejected judgments unprovable, {found} proofs of accepted ones, {:.2}s",
        terms.len(),
        time.as_secs_f64()
    ))
}

