//! Capture-avoiding and simultaneous substitution, and a run of the
//! σ-axiom suite on the term and formula algebras.

use nomsem::gen::{atoms, demo_signature, rng, SyntaxGen};
use nomsem::sigma::{sigma_axiom_suite, sim_subst, FormulaAlgebra, FormulaSampler};
use nomsem::suites::sigma_terms;
use nomsem::syntax::{parse_formula, parse_term};
use nomsem::{subst_formula, Atom};

fn main() {
    let sig = demo_signature();
    let phi = parse_formula("forall a1. R(a0, a1)", &sig).unwrap();
    let u = parse_term("f(a1)", &sig).unwrap();
    println!("{phi} [a0 <- {u}] = {}", subst_formula(&phi, Atom(0), &u));

    let swapped = sim_subst(
        &FormulaAlgebra::default(),
        &parse_formula("R(a0, a1)", &sig).unwrap(),
        &[
            (Atom(0), parse_term("a1", &sig).unwrap()),
            (Atom(1), parse_term("a0", &sig).unwrap()),
        ],
    )
    .unwrap();
    println!("simultaneous swap of a0, a1: {swapped}");

    println!("-- terms");
    print!("{}", sigma_terms(200, 1));
    let mut s = FormulaSampler {
        gen: SyntaxGen::new(&sig, atoms(4)),
        rng: rng(2),
        depth: 3,
    };
    println!("-- formulas");
    print!(
        "{}",
        sigma_axiom_suite(&FormulaAlgebra::default(), &mut s, 200)
    );
}
