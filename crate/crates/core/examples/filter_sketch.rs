//! Prover-backed filters and ideals, their closure checks, and a few steps
//! of the point sketch.

use nomsem::filter::{filter_check, grow_filter, point_sketch, prime_check, sketch_pairs, upset};
use nomsem::gen::demo_signature;
use nomsem::sequent::ProverBudget;
use nomsem::syntax::parse_formula;

fn main() {
    let sig = demo_signature();
    let f = |t: &str| parse_formula(t, &sig).unwrap();
    let b = ProverBudget::with_depth(3);

    let p = upset(&f("P(a0)"), &b);
    let p = grow_filter(&p, &f("forall a1. Q(a1)"), &b).unwrap();
    let universe = [
        f("P(a0)"),
        f("Q(c)"),
        f("P(a0) /\\ Q(a0)"),
        f("R(a0, a0)"),
        f("bottom"),
    ];
    print!("{}", filter_check(&p, &universe, &b));

    let report = prime_check(&p, &[(f("R(c, c)"), f("~R(c, c)"))]);
    println!("prime: {}  ultra: {}", report.prime(), report.ultra());

    let sketch = point_sketch(&f("P(c)"), &sketch_pairs(&sig, 3, 5), &b).unwrap();
    print!("{}", sketch.transcript());
    println!("disjoint: {}", sketch.disjointness_violation().is_none());
}
