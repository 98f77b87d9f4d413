//! Permutations acting on syntax, exact support, and the fresh-swap test.

use nomsem::nominal::{swap_test, AtomSubset};
use nomsem::syntax::parse_formula;
use nomsem::{alpha_eq, compose, fresh, swap, Atom, Nominal, Signature};

fn main() {
    let sig = Signature::new()
        .with_predicate("R", 2)
        .with_function("f", 1);
    let phi = parse_formula("forall a1. R(a1, f(a0)) /\\ R(a2, a2)", &sig).unwrap();
    println!("phi          = {phi}");
    println!("support(phi) = {:?}", phi.support());

    let pi = compose(&swap(Atom(0), Atom(5)), &swap(Atom(2), Atom(0)));
    println!("pi . phi     = {}", phi.act(&pi));

    for a in 0..4 {
        let a = Atom(a);
        println!(
            "  {a} in support? {}  (swap test agrees: {})",
            phi.support().contains(&a),
            swap_test(&phi, a, alpha_eq)
        );
    }

    let b = fresh(&phi.support());
    println!("first fresh atom: {b}");

    let cofinite = AtomSubset::Cofinite([Atom(1)].into());
    println!(
        "complement of {{a1}}, {b}-fresh part: {:?}",
        cofinite.fresh_part(b)
    );
}
