//! Finite countermodels for unprovable sequents, and bounded
//! interprovability of formula pairs.

use nomsem::gen::demo_signature;
use nomsem::sequent::{find_countermodel, herbrand_equiv, Herbrand, HerbrandBudget, Sequent};
use nomsem::syntax::{parse_formula, AtomNames, SigMode};

fn main() {
    let sig = demo_signature();
    for text in [
        "P(a) |- P(b)",
        "forall a. R(a, c) |- R(c, f(c))",
        "|- f(a) = a",
        "P(a) |- P(a)",
    ] {
        let mut names = AtomNames::default();
        let s = Sequent::parse(text, SigMode::Fixed(&sig), &mut names).unwrap();
        match find_countermodel(&s, 2, 50_000) {
            Ok((m, v)) => println!("{text}\n{m}# valuation {v:?}\n"),
            Err(e) => println!("{text}\n  none: {e:?}\n"),
        }
    }

    let b = HerbrandBudget::default();
    for (l, r) in [
        ("~~P(a0)", "P(a0)"),
        (
            "forall a1. P(a1) /\\ Q(a1)",
            "(forall a1. P(a1)) /\\ (forall a2. Q(a2))",
        ),
        ("P(a0)", "Q(a0)"),
    ] {
        let (phi, psi) = (
            parse_formula(l, &sig).unwrap(),
            parse_formula(r, &sig).unwrap(),
        );
        let verdict = match herbrand_equiv(&phi, &psi, &b) {
            Herbrand::Equivalent(_) => "interprovable".to_string(),
            Herbrand::Distinct(m, _) => format!("separated in a {}-element model", m.k),
            Herbrand::Unknown => "unknown".to_string(),
        };
        println!("{l}  vs  {r}: {verdict}");
    }
}
