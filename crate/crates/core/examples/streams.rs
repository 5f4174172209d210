// Goals, lazy streams and fair interleaving of infinite relations.

use mukanren::engine::{call_initial_state, defrel, disj, ifte, once, succeed, Relation};
use mukanren::{call_fresh, ConstraintSystem, Goal, Term};

fn repeater(name: &'static str, value: &'static str) -> Relation {
    let sys = ConstraintSystem::equality_only();
    // The recursive call is wrapped in a delay by `defrel`, which is what
    // lets `disj` switch between the two branches.
    fn build(sys: ConstraintSystem, name: &'static str, value: &'static str) -> Relation {
        defrel(name, 1, move |args| {
            let x = args[0].clone();
            let again = build(sys.clone(), name, value)
                .apply(vec![x.clone()])
                .unwrap();
            disj(sys.eq(x, Term::sym(value)), again)
        })
    }
    build(sys, name, value)
}

fn readback(g: &Goal, n: usize) -> Vec<String> {
    call_initial_state(Some(n), g, &ConstraintSystem::equality_only())
        .iter()
        .map(|st| st.resolve(&Term::var(0)).to_string())
        .collect()
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let fives = repeater("fives", "five");
    let sixes = repeater("sixes", "six");
    let both = call_fresh(move |q| {
        disj(
            fives.apply(vec![q.clone()]).unwrap(),
            sixes.apply(vec![q]).unwrap(),
        )
    });
    let got = readback(&both, 4);
    println!("fives or sixes: {got:?}");
    if got != ["five", "six", "five", "six"] {
        return Err("search was not fair".into());
    }

    let sys = ConstraintSystem::equality_only();
    let s2 = sys.clone();
    let pick = call_fresh(move |q| {
        let s3 = s2.clone();
        ifte(
            disj(
                s2.eq(q.clone(), Term::sym("a")),
                s2.eq(q.clone(), Term::sym("b")),
            ),
            succeed(),
            s3.eq(q, Term::sym("none")),
        )
    });
    println!("ifte keeps every answer: {:?}", readback(&pick, 10));
    println!("once keeps the first: {:?}", readback(&once(pick), 10));
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
