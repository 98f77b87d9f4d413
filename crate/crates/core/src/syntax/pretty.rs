use super::{AtomNames, Formula, Term};

// Binding strength, loosest first.
const QUANT: u8 = 0;
const IFF: u8 = 1;
const IMP: u8 = 2;
const OR: u8 = 3;
const AND: u8 = 4;
const NEG: u8 = 5;
const ATOMIC: u8 = 6;

pub fn pretty_term(t: &Term, names: &AtomNames) -> String {
    let mut out = String::new();
    write_term(t, names, &mut out);
    out
}

fn write_term(t: &Term, names: &AtomNames, out: &mut String) {
    match t {
        Term::Var(a) => out.push_str(&names.name_of(*a)),
        Term::App(f, args) => {
            out.push_str(f);
            if !args.is_empty() {
                out.push('(');
                for (i, x) in args.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    write_term(x, names, out);
                }
                out.push(')');
            }
        }
    }
}

/// Prints in the ASCII input grammar. Sugar patterns (`top`, `\/`, `->`,
/// `<->`) are recognised so output reads naturally and parses back to the
/// same tree.
pub fn pretty_formula(phi: &Formula, names: &AtomNames) -> String {
    render(phi, names, QUANT)
}

enum View<'a> {
    Top,
    Or(&'a Formula, &'a Formula),
    Imp(&'a Formula, &'a Formula),
    Iff(&'a Formula, &'a Formula),
    Plain,
}

fn view(phi: &Formula) -> View<'_> {
    match phi {
        Formula::Neg(x) => match x.as_ref() {
            Formula::Bot => View::Top,
            Formula::And(l, r) => match (l.as_ref(), r.as_ref()) {
                (Formula::Neg(ll), Formula::Neg(rr)) => match ll.as_ref() {
                    Formula::Neg(lll) => View::Imp(lll, rr),
                    _ => View::Or(ll, rr),
                },
                _ => View::Plain,
            },
            _ => View::Plain,
        },
        Formula::And(l, r) => match (view(l), view(r)) {
            (View::Imp(a, b), View::Imp(c, d)) if a == d && b == c => View::Iff(a, b),
            _ => View::Plain,
        },
        _ => View::Plain,
    }
}

fn wrap(s: String, level: u8, min: u8) -> String {
    if level < min {
        format!("({s})")
    } else {
        s
    }
}

fn render(phi: &Formula, names: &AtomNames, min: u8) -> String {
    match view(phi) {
        View::Top => return "top".to_string(),
        View::Or(l, r) => {
            let s = format!("{} \\/ {}", render(l, names, OR), render(r, names, AND));
            return wrap(s, OR, min);
        }
        View::Imp(l, r) => {
            let s = format!("{} -> {}", render(l, names, OR), render(r, names, IMP));
            return wrap(s, IMP, min);
        }
        View::Iff(l, r) => {
            let s = format!("{} <-> {}", render(l, names, IMP), render(r, names, IFF));
            return wrap(s, IFF, min);
        }
        View::Plain => {}
    }
    match phi {
        Formula::Bot => "bottom".to_string(),
        Formula::Eq(l, r) => {
            let s = format!("{} = {}", pretty_term(l, names), pretty_term(r, names));
            wrap(s, ATOMIC, min)
        }
        Formula::Pred(p, args) => {
            let mut s = p.to_string();
            if !args.is_empty() {
                s.push('(');
                for (i, x) in args.iter().enumerate() {
                    if i > 0 {
                        s.push_str(", ");
                    }
                    write_term(x, names, &mut s);
                }
                s.push(')');
            }
            s
        }
        Formula::And(l, r) => {
            let s = format!("{} /\\ {}", render(l, names, AND), render(r, names, NEG));
            wrap(s, AND, min)
        }
        Formula::Neg(x) => wrap(format!("~{}", render(x, names, NEG)), NEG, min),
        Formula::All(a, x) => {
            let s = format!("forall {}. {}", names.name_of(*a), render(x, names, QUANT));
            wrap(s, QUANT, min)
        }
    }
}
