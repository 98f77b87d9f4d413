//! Interpreting formulas as finite-dependency truth tables over a small
//! model, and comparing with ordinary evaluation.

use nomsem::gen::{atoms, demo_signature, rng, SyntaxGen};
use nomsem::syntax::parse_formula;
use nomsem::tarski::{agreement_check, lift_interpretation, OrdinaryModel};

const MODEL: &str = "\
domain 2
fun c : 1
fun f : 1 0
fun g : 0 1 1 0
pred P : 0 1
pred Q : 1 1
pred R : 1 0 0 1
";

fn main() {
    let sig = demo_signature();
    let m = OrdinaryModel::parse(MODEL, Some(&sig)).unwrap();
    let interp = lift_interpretation(&m);
    for text in [
        "P(a0)",
        "R(a0, a1)",
        "forall a0. R(a0, a0)",
        "a0 = f(a1)",
        "forall a1. P(g(a0, a1))",
    ] {
        let phi = parse_formula(text, &sig).unwrap();
        let t = interp.interpret(&phi).unwrap();
        println!("{text:28} deps {:?} table {:?}", t.deps(), t.table());
    }

    let gen = SyntaxGen::new(&sig, atoms(3));
    let mut r = rng(4);
    let agreed = (0..200)
        .filter(|_| agreement_check(&gen.formula(&mut r, 3), &m).is_ok())
        .count();
    println!("lifted and ordinary semantics agree on {agreed}/200 random formulas");
}
