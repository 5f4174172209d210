// The standard constraint language and the store it accumulates.

use mukanren::frontend::print_store;
use mukanren::{call_initial_state, conj_all, Standard, Term};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let k = Standard::new();
    let x = Term::var(0);
    let a = |s: &str| Term::sym(s);

    // Each constraint lands in its own field of the store.
    let g = conj_all([
        k.eq(a("a"), x.clone()),
        k.neq(x.clone(), a("b")),
        k.absento(a("b"), Term::list([x.clone()])),
        k.not_pairo(x.clone()),
        k.symbolo(x.clone()),
        k.neq(a("c"), x.clone()),
    ]);
    // Introduce variable 0 by hand so it is the one the goal refers to.
    let g = mukanren::call_fresh(move |_| g.clone());
    let states = call_initial_state(Some(1), &g, k.system());
    let st = states.first().ok_or("expected one answer")?;
    println!("{}", print_store(st));

    // Contradictions are caught even though no variable is ground.
    let y = Term::var(0);
    let contra = mukanren::call_fresh({
        let k = k.clone();
        move |_| {
            conj_all([
                k.neq(Term::Bool(false), y.clone()),
                k.neq(Term::Bool(true), y.clone()),
                k.booleano(y.clone()),
            ])
        }
    });
    let n = call_initial_state(None, &contra, k.system()).len();
    println!("booleano that is neither #t nor #f: {n} answers");
    if n != 0 {
        return Err("contradiction went unnoticed".into());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
