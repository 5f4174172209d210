// Terms, triangular substitutions and unification.

use mukanren::{Substitution, Term};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let (x, y, z) = (Term::var(0), Term::var(1), Term::var(2));

    // (x . b) against (a . y) binds both sides.
    let s = Substitution::empty()
        .unify(
            &Term::cons(x.clone(), Term::sym("b")),
            &Term::cons(Term::sym("a"), y.clone()),
        )
        .ok_or("expected (x . b) and (a . y) to unify")?;
    println!("x = {}, y = {}", s.walk_star(&x), s.walk_star(&y));

    // Chains stay triangular; walk_star resolves through them.
    let s = s
        .unify(&z, &Term::list([x.clone(), y.clone()]))
        .ok_or("z should unify with (x y)")?;
    println!("z = {} ({} bindings)", s.walk_star(&z), s.len());

    // The occurs check refuses cyclic bindings.
    let cyclic = Substitution::empty().unify(&x, &Term::list([x.clone()]));
    println!("x = (x) unifies: {}", cyclic.is_some());
    if cyclic.is_some() {
        return Err("occurs check did not fire".into());
    }

    // Clashing atoms fail.
    let clash = Substitution::empty().unify(&Term::sym("a"), &Term::Bool(true));
    println!("a = #t unifies: {}", clash.is_some());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
