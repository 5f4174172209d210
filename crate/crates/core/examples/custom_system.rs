// Defining a new constraint language from relations and violation
// predicates.
//
// `colour` holds a variable to one of red, green or blue, and `differ`
// keeps two terms apart.

use mukanren::framework::{ConstraintSystem, StoreView};
use mukanren::{call_fresh, call_initial_state, conj_all, Substitution, Term};

const COLOURS: [&str; 3] = ["red", "green", "blue"];

fn not_a_colour(view: &StoreView<'_>, s: &Substitution) -> bool {
    view.tuples("colour").any(|t| match s.walk(t) {
        Term::Var(_) => false,
        Term::Sym(c) => !COLOURS.contains(&&*c),
        _ => true,
    })
}

fn differ_equal(view: &StoreView<'_>, s: &Substitution) -> bool {
    view.pairs("differ")
        .any(|(u, v)| s.unify(u, v).is_some_and(|s2| s2.len() == s.len()))
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let sys = ConstraintSystem::builder()
        .relation("colour", 1)
        .relation("differ", 2)
        .violation("not-a-colour", not_a_colour)
        .violation("differ-equal", differ_equal)
        .build()?;

    // Three mutually different colours, with the first two fixed.
    let s = sys.clone();
    let g = call_fresh(move |x| {
        let s = s.clone();
        call_fresh(move |y| {
            let s = s.clone();
            let x = x.clone();
            call_fresh(move |z| {
                let c = |t: &Term| s.goal("colour", vec![t.clone()]).unwrap();
                let d = |u: &Term, v: &Term| s.goal("differ", vec![u.clone(), v.clone()]).unwrap();
                let options =
                    mukanren::disj_all(COLOURS.iter().map(|n| s.eq(z.clone(), Term::sym(n))));
                conj_all([
                    c(&x),
                    c(&y),
                    c(&z),
                    d(&x, &y),
                    d(&y, &z),
                    d(&x, &z),
                    s.eq(x.clone(), Term::sym("red")),
                    s.eq(y.clone(), Term::sym("green")),
                    options,
                ])
            })
        })
    });
    let answers = call_initial_state(None, &g, &sys);
    for st in &answers {
        let v: Vec<String> = (0..3)
            .map(|i| st.resolve(&Term::var(i)).to_string())
            .collect();
        println!("{}", v.join(" "));
    }
    if answers.len() != 1 {
        return Err(format!("expected exactly one colouring, got {}", answers.len()).into());
    }

    // A non-colour is rejected as soon as it is bound.
    let s = sys.clone();
    let bad = call_fresh(move |x| {
        conj_all([
            s.goal("colour", vec![x.clone()]).unwrap(),
            s.eq(x, Term::sym("mauve")),
        ])
    });
    println!(
        "mauve is a colour: {}",
        !call_initial_state(None, &bad, &sys).is_empty()
    );
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
