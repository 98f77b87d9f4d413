use nomsem::filter::{
    downset, filter_check, forall_membership_check, grow_filter, grow_ideal, point_sketch,
    points_amgis, prime_check, sketch_pairs, upset, FilterError, PredSet, Provenance, Side,
};
use nomsem::gen::{atoms, demo_signature, rng, SyntaxGen};
use nomsem::sequent::ProverBudget;
use nomsem::syntax::parse_formula;
use nomsem::{subst_formula, Atom, Formula, Term};

fn f(text: &str) -> Formula {
    parse_formula(text, &demo_signature()).unwrap()
}

fn b() -> ProverBudget {
    ProverBudget {
        max_depth: 3,
        max_nodes: 1500,
        ..ProverBudget::default()
    }
}

fn universe(seed: u64, n: usize) -> Vec<Formula> {
    let gen = SyntaxGen::new(&demo_signature(), atoms(2));
    let mut r = rng(seed);
    (0..n).map(|_| gen.formula(&mut r, 1)).collect()
}

#[test]
fn upsets_of_consistent_formulas_are_filters() {
    for (i, seed) in [
        "P(a0)",
        "P(a0) /\\ Q(c)",
        "forall a1. R(a1, a0)",
        "~Q(f(c))",
    ]
    .iter()
    .enumerate()
    {
        let p = upset(&f(seed), &b());
        let mut u = universe(i as u64, 6);
        u.push(f(seed));
        let report = filter_check(&p, &u, &b());
        assert!(report.passed(), "{seed}\n{report}");
        assert!(!p.member(&Formula::Bot));
        assert!(p.member(&Formula::top()));
    }
}

#[test]
fn listed_sets_are_not_closed() {
    let p = PredSet::listed("two", vec![f("P(a0)"), f("Q(a0)")]);
    assert_eq!(p.provenance(), Provenance::Listed);
    let report = filter_check(&p, &[f("P(a0)"), f("Q(a0)")], &b());
    assert!(!report.passed());
    assert!(
        report.violations.iter().any(|v| v.condition == 3),
        "{report}"
    );
}

#[test]
fn growing_keeps_old_members() {
    let p = upset(&f("P(a0)"), &b());
    let q = grow_filter(&p, &f("Q(a0)"), &b()).unwrap();
    for phi in ["P(a0)", "Q(a0)", "P(a0) /\\ Q(a0)", "Q(a0) \\/ R(a0, a0)"] {
        assert!(q.member(&f(phi)), "{phi}");
    }
    assert!(!q.member(&f("R(a0, a0)")));
    assert_eq!(q.provenance(), Provenance::Grown);

    let z = downset(&f("P(a0)"), &b());
    let z2 = grow_ideal(&z, &[f("Q(a0)"), f("R(c, c)")], &b()).unwrap();
    for phi in ["P(a0)", "Q(a0)", "Q(a0) /\\ P(c)", "bottom"] {
        assert!(z2.member(&f(phi)), "{phi}");
    }
    assert!(!z2.member(&f("P(a0) \\/ Q(a0) \\/ R(c, c) \\/ P(c)")));
}

#[test]
fn growing_the_wrong_kind_is_an_error() {
    let z = downset(&f("P(a0)"), &b());
    assert!(matches!(
        grow_filter(&z, &f("Q(a0)"), &b()),
        Err(FilterError::NotAFilterFront(_))
    ));
    let p = upset(&f("P(a0)"), &b());
    assert!(matches!(
        grow_ideal(&p, &[f("Q(a0)")], &b()),
        Err(FilterError::NotAnIdealFront(_))
    ));
}

#[test]
fn amgis_image_is_substitution_preimage() {
    let gen = SyntaxGen::new(&demo_signature(), atoms(3));
    let mut r = rng(5);
    for _ in 0..100 {
        let p = upset(&gen.formula(&mut r, 2), &b());
        let (u, a, phi) = (gen.term(&mut r), gen.atom(&mut r), gen.formula(&mut r, 2));
        let q = points_amgis(&p, &u, a);
        assert_eq!(q.member(&phi), p.member(&subst_formula(&phi, a, &u)));
    }
}

#[test]
fn universal_members_have_their_instances() {
    let p = upset(&f("forall a1. P(f(a1))"), &b());
    let candidates = [
        Term::constant("c"),
        Term::var(Atom(0)),
        Term::app("g", vec![Term::constant("c"), Term::var(Atom(2))]),
    ];
    let report = forall_membership_check(&p, Atom(1), &f("P(f(a1))"), &candidates);
    assert!(report.forall_member);
    assert_eq!(report.checked, candidates.len() + 3);
    assert!(report.violations.is_empty(), "{:?}", report.violations);
}

#[test]
fn primality_and_dichotomy_agree() {
    let samples = [(f("Q(c)"), f("~Q(c)")), (f("P(c)"), f("R(c, c)"))];
    let p = upset(&f("P(c)"), &b());
    let report = prime_check(&p, &samples);
    assert_eq!(report.disjunctions, 2);
    assert!(!report.prime());
    assert!(!report.ultra());
    assert!(report.agree());
}

#[test]
fn sketches_stay_disjoint() {
    let gen = SyntaxGen::new(&demo_signature(), atoms(3));
    for seed in 0..6 {
        let start = gen.formula(&mut rng(seed), 1);
        let pairs = sketch_pairs(&demo_signature(), seed, 4);
        let Ok(s) = point_sketch(&start, &pairs, &b()) else {
            continue;
        };
        assert!(s.disjointness_violation().is_none(), "{}", s.transcript());
        assert_eq!(s.transcript().lines().count(), s.steps.len());
        let ideal = s.ideal();
        for step in &s.steps {
            if step.side == Side::Ideal {
                assert!(!s
                    .filter()
                    .member(&Formula::all(step.atom, step.formula.clone())));
            }
        }
        assert!(ideal.member(&Formula::Bot));
    }
}

#[test]
fn inconsistent_seeds_are_refused() {
    let pairs = sketch_pairs(&demo_signature(), 1, 2);
    let out = point_sketch(&f("P(c) /\\ ~P(c)"), &pairs, &b());
    assert!(matches!(out, Err(FilterError::InconsistentSeed(_))));
}
